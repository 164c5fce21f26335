//! The set family `S_0 .. S_{m-1}` over the universe `[0, u)`.
//!
//! Text format (`.sets`):
//!
//! ```text
//! # optional comment lines before the header
//! m u
//! <elements of S_0, strictly increasing, space separated>
//! ...
//! <elements of S_{m-1}>
//! ```
//!
//! An empty line is an empty set. Exactly `m` set lines must follow the header.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::index::IntersectResult;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    universe: usize,
    sets: Vec<Vec<usize>>,
    total: usize,
}

impl SetFamily {
    /// Validates and wraps `sets`. Every set must be strictly increasing with
    /// all elements below `universe`.
    pub fn new(universe: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        for (k, set) in sets.iter().enumerate() {
            if let Some(&e) = set.iter().find(|&&e| e >= universe) {
                return Err(Error::InvalidArgument(format!(
                    "set {k}: element {e} out of universe [0, {universe})"
                )));
            }
            if set.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidArgument(format!(
                    "set {k}: elements not strictly increasing"
                )));
            }
        }
        let total = sets.iter().map(Vec::len).sum();
        Ok(Self {
            universe,
            sets,
            total,
        })
    }

    /// Number of sets, `m`.
    pub fn num_sets(&self) -> usize {
        self.sets.len()
    }

    /// Universe size, `u`.
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Total input size, `n = sum |S_i|`.
    pub fn total_size(&self) -> usize {
        self.total
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> Result<&[usize]> {
        self.sets
            .get(i)
            .map(Vec::as_slice)
            .ok_or(Error::SetIndex {
                index: i,
                m: self.sets.len(),
            })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));

        let (header_line, header) = loop {
            match lines.next() {
                Some((_, l)) if l.starts_with('#') => continue,
                Some(found) => break found,
                None => {
                    return Err(Error::Parse {
                        line: 1,
                        msg: "missing header".into(),
                    })
                }
            }
        };
        let fields: Vec<&str> = header.split_ascii_whitespace().collect();
        let [m, u] = fields[..] else {
            return Err(Error::Parse {
                line: header_line,
                msg: format!("header must be \"m u\", got {header:?}"),
            });
        };
        let parse_count = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: header_line,
                msg: format!("bad header field {s:?}"),
            })
        };
        let (m, universe) = (parse_count(m)?, parse_count(u)?);

        let mut sets = Vec::with_capacity(m);
        let mut total = 0;
        for (line, l) in lines {
            if sets.len() == m {
                return Err(Error::Parse {
                    line,
                    msg: format!("more than {m} set lines"),
                });
            }
            let mut set: Vec<usize> = Vec::new();
            for tok in l.split_ascii_whitespace() {
                let e: usize = tok.parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("bad element {tok:?}"),
                })?;
                if e >= universe {
                    return Err(Error::Parse {
                        line,
                        msg: format!("element {e} out of universe [0, {universe})"),
                    });
                }
                match set.last() {
                    Some(&prev) if prev == e => {
                        return Err(Error::Parse {
                            line,
                            msg: format!("duplicate element {e}"),
                        })
                    }
                    Some(&prev) if prev > e => {
                        return Err(Error::Parse {
                            line,
                            msg: format!("element {e} after {prev}: not increasing"),
                        })
                    }
                    _ => set.push(e),
                }
            }
            total += set.len();
            sets.push(set);
        }
        if sets.len() != m {
            return Err(Error::Parse {
                line: header_line,
                msg: format!("expected {m} set lines, found {}", sets.len()),
            });
        }
        Ok(Self {
            universe,
            sets,
            total,
        })
    }

    /// Inverse of [`SetFamily::parse`].
    pub fn render(&self) -> String {
        let mut out = format!("{} {}\n", self.sets.len(), self.universe);
        for set in &self.sets {
            for (k, e) in set.iter().enumerate() {
                if k > 0 {
                    out.push(' ');
                }
                write!(out, "{e}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Each (set, element) membership is drawn independently with probability
    /// `density`.
    pub fn random(m: usize, universe: usize, density: f64, seed: u64) -> Result<Self> {
        if m == 0 || universe == 0 {
            return Err(Error::InvalidArgument(
                "random family needs m >= 1 and u >= 1".into(),
            ));
        }
        if !(0.0..=1.0).contains(&density) {
            return Err(Error::InvalidArgument(format!(
                "density {density} outside [0, 1]"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sets: Vec<Vec<usize>> = (0..m)
            .map(|_| (0..universe).filter(|_| rng.random_bool(density)).collect())
            .collect();
        let total = sets.iter().map(Vec::len).sum();
        Ok(Self {
            universe,
            sets,
            total,
        })
    }

    /// Reference answer by merge-scan of the two sorted lists. The witness is
    /// the minimum common element. No membership probes are made.
    pub fn brute_force_intersect(&self, i: usize, j: usize) -> Result<IntersectResult> {
        let (a, b) = (self.set(i)?, self.set(j)?);
        let (mut x, mut y) = (0, 0);
        while x < a.len() && y < b.len() {
            match a[x].cmp(&b[y]) {
                std::cmp::Ordering::Less => x += 1,
                std::cmp::Ordering::Greater => y += 1,
                std::cmp::Ordering::Equal => return Ok(IntersectResult::found(a[x], 0)),
            }
        }
        Ok(IntersectResult::empty(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn sample() -> SetFamily {
        SetFamily::parse("3 4\n0 1\n1 2\n3\n").unwrap()
    }

    #[test]
    fn parses_basic_family() {
        let f = sample();
        assert_eq!(f.num_sets(), 3);
        assert_eq!(f.universe(), 4);
        assert_eq!(f.sets(), &[vec![0, 1], vec![1, 2], vec![3]]);
        assert_eq!(f.total_size(), 5);
    }

    #[test]
    fn parses_empty_set_line() {
        let f = SetFamily::parse("1 5\n\n").unwrap();
        assert_eq!(f.sets(), &[Vec::<usize>::new()]);
        assert_eq!(f.total_size(), 0);
    }

    #[test]
    fn skips_leading_comments() {
        let f = SetFamily::parse("# a comment\n#another\n2 2\n0\n1\n").unwrap();
        assert_eq!(f.sets(), &[vec![0], vec![1]]);
    }

    #[test]
    fn rejects_bad_input() {
        let cases = [
            ("2 3\n0 7\n1\n", "out of universe"),
            ("2 3\n0 0\n1\n", "duplicate"),
            ("2 3\n1 0\n1\n", "not increasing"),
            ("2 3\n0\n", "expected 2"),
            ("1 3\n0\n1\n", "more than 1"),
            ("2\n0\n1\n", "header"),
            ("x 3\n", "bad header"),
            ("", "missing header"),
            ("1 3\nz\n", "bad element"),
        ];
        for (text, needle) in cases {
            let err = SetFamily::parse(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{text:?}: {err}");
        }
    }

    #[test]
    fn render_round_trips() {
        let f = SetFamily::new(6, vec![vec![], vec![0, 5], vec![2]]).unwrap();
        assert_eq!(f.render(), "3 6\n\n0 5\n2\n");
        assert_eq!(SetFamily::parse(&f.render()).unwrap(), f);
    }

    #[test]
    fn brute_force_examples() {
        let f = sample();
        let r = f.brute_force_intersect(0, 1).unwrap();
        assert!(r.intersects);
        assert_eq!(r.witness, Some(1));
        let r = f.brute_force_intersect(0, 2).unwrap();
        assert!(!r.intersects);
        assert_eq!(r.witness, None);
        assert!(f.brute_force_intersect(0, 3).is_err());

        let e = SetFamily::new(3, vec![vec![], vec![1]]).unwrap();
        assert!(!e.brute_force_intersect(0, 0).unwrap().intersects);
        assert_eq!(e.brute_force_intersect(1, 1).unwrap().witness, Some(1));
    }

    #[test]
    fn random_family_degenerate_densities() {
        let f = SetFamily::random(3, 4, 0.0, 7).unwrap();
        assert_eq!(f.sets(), &[vec![], vec![], vec![]] as &[Vec<usize>]);
        assert_eq!(f.total_size(), 0);

        let f = SetFamily::random(2, 3, 1.0, 1).unwrap();
        assert_eq!(f.sets(), &[vec![0, 1, 2], vec![0, 1, 2]]);
        assert_eq!(f.total_size(), 6);

        assert!(SetFamily::random(0, 3, 0.5, 1).is_err());
        assert!(SetFamily::random(1, 0, 0.5, 1).is_err());
        assert!(SetFamily::random(1, 3, 1.5, 1).is_err());
    }

    #[test]
    fn random_family_snapshot() {
        let f = SetFamily::random(5, 10, 0.3, 42).unwrap();
        assert_eq!(f, SetFamily::random(5, 10, 0.3, 42).unwrap());
        assert_eq!(f.render(), RANDOM_5_10_SNAPSHOT);
    }

    const RANDOM_5_10_SNAPSHOT: &str = "5 10\n4 5 9\n5 7 9\n0 3 4 5\n1 2 3 7\n2\n";

    #[test]
    fn new_validates() {
        assert!(SetFamily::new(3, vec![vec![3]]).is_err());
        assert!(SetFamily::new(3, vec![vec![1, 1]]).is_err());
        assert!(SetFamily::new(3, vec![vec![0, 2]]).is_ok());
    }

    proptest::proptest! {
        #[test]
        fn parse_render_round_trip(
            u in 1usize..40,
            raw in proptest::collection::vec(proptest::collection::btree_set(0usize..40, 0..10), 0..8),
        ) {
            let sets: Vec<Vec<usize>> = raw
                .into_iter()
                .map(|s| s.into_iter().filter(|&e| e < u).collect())
                .collect();
            let f = SetFamily::new(u, sets).unwrap();
            proptest::prop_assert_eq!(SetFamily::parse(&f.render()).unwrap(), f);
        }

        #[test]
        fn brute_force_matches_naive_and_is_symmetric(
            m in 1usize..8, u in 1usize..20, density in 0.0f64..=1.0, seed: u64,
        ) {
            let f = SetFamily::random(m, u, density, seed).unwrap();
            for i in 0..m {
                for j in 0..m {
                    let r = f.brute_force_intersect(i, j).unwrap();
                    let a: HashSet<_> = f.sets()[i].iter().collect();
                    let naive_min = f.sets()[j].iter().filter(|e| a.contains(e)).min().copied();
                    proptest::prop_assert_eq!(r.intersects, naive_min.is_some());
                    proptest::prop_assert_eq!(r.witness, naive_min);
                    proptest::prop_assert_eq!(
                        r.intersects,
                        f.brute_force_intersect(j, i).unwrap().intersects
                    );
                }
            }
        }
    }
}
