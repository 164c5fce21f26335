//! Threshold-tunable set-intersection index.
//!
//! A set is *large* when it has more than `t` elements. There are fewer than
//! `n / t` large sets, so a full bit matrix of their pairwise answers costs at
//! most `(n / t)²` bits. Any query touching a non-large set scans that set
//! (at most `t` elements) against a hash table of the other one.

mod bitmatrix;
mod membership;

pub use bitmatrix::SymmetricBitMatrix;
pub use membership::StaticHashSet;

use crate::{Result, SetFamily};

/// Default seed for the membership hash functions.
pub const DEFAULT_SEED: u64 = 0x5e75_1d3c;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntersectResult {
    pub intersects: bool,
    /// A common element, when one was located by scanning. Matrix hits carry
    /// none.
    pub witness: Option<usize>,
    /// Membership tests performed.
    pub probes: usize,
}

impl IntersectResult {
    pub(crate) fn found(witness: usize, probes: usize) -> Self {
        Self {
            intersects: true,
            witness: Some(witness),
            probes,
        }
    }

    pub(crate) fn empty(probes: usize) -> Self {
        Self {
            intersects: false,
            witness: None,
            probes,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaceReport {
    pub num_large: usize,
    pub matrix_bits: usize,
    pub membership_entries: usize,
}

/// `ceil(sqrt(n))`, or 1 for `n = 0`.
pub fn default_threshold(n: usize) -> usize {
    let mut r = n.isqrt();
    if r * r < n {
        r += 1;
    }
    r.max(1)
}

#[derive(Debug, Clone)]
pub struct IntersectionIndex<'a> {
    family: &'a SetFamily,
    threshold: usize,
    large_ids: Vec<usize>,
    /// `large_rank[i]` is the position of set `i` in `large_ids`.
    large_rank: Vec<Option<usize>>,
    matrix: SymmetricBitMatrix,
    membership: Vec<StaticHashSet>,
}

impl<'a> IntersectionIndex<'a> {
    /// Builds the index with threshold `t`, defaulting to `ceil(sqrt(n))`.
    pub fn build(family: &'a SetFamily, t: Option<usize>) -> Result<Self> {
        Self::build_with_seed(family, t, DEFAULT_SEED)
    }

    pub fn build_with_seed(family: &'a SetFamily, t: Option<usize>, seed: u64) -> Result<Self> {
        let threshold = match t {
            Some(0) => {
                return Err(crate::Error::InvalidArgument(
                    "threshold must be at least 1".into(),
                ))
            }
            Some(t) => t,
            None => default_threshold(family.total_size()),
        };
        let sets = family.sets();

        let large_ids: Vec<usize> = (0..sets.len())
            .filter(|&i| sets[i].len() > threshold)
            .collect();
        let mut large_rank = vec![None; sets.len()];
        for (rank, &i) in large_ids.iter().enumerate() {
            large_rank[i] = Some(rank);
        }

        let mut matrix = SymmetricBitMatrix::new(large_ids.len());
        for (a, &i) in large_ids.iter().enumerate() {
            for (b, &j) in large_ids.iter().enumerate().skip(a) {
                if sorted_intersect(&sets[i], &sets[j]) {
                    matrix.set(a, b);
                }
            }
        }

        let membership = sets
            .iter()
            .enumerate()
            .map(|(i, s)| StaticHashSet::build(s, seed.wrapping_add(i as u64)))
            .collect();

        Ok(Self {
            family,
            threshold,
            large_ids,
            large_rank,
            matrix,
            membership,
        })
    }

    pub fn family(&self) -> &'a SetFamily {
        self.family
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn large_ids(&self) -> &[usize] {
        &self.large_ids
    }

    pub fn is_large(&self, i: usize) -> bool {
        self.large_rank.get(i).is_some_and(Option::is_some)
    }

    pub fn matrix(&self) -> &SymmetricBitMatrix {
        &self.matrix
    }

    pub fn query(&self, i: usize, j: usize) -> Result<IntersectResult> {
        let (si, sj) = (self.family.set(i)?, self.family.set(j)?);

        if i == j {
            return Ok(match si.first() {
                Some(&e) => IntersectResult::found(e, 0),
                None => IntersectResult::empty(0),
            });
        }

        if let (Some(a), Some(b)) = (self.large_rank[i], self.large_rank[j]) {
            return Ok(IntersectResult {
                intersects: self.matrix.get(a, b),
                witness: None,
                probes: 0,
            });
        }

        // Scan the smaller set; on equal sizes, the one with the smaller index.
        let (scan, other) = if (si.len(), i) <= (sj.len(), j) {
            (si, j)
        } else {
            (sj, i)
        };
        let table = &self.membership[other];
        for (k, &e) in scan.iter().enumerate() {
            if table.contains(e) {
                return Ok(IntersectResult::found(e, k + 1));
            }
        }
        Ok(IntersectResult::empty(scan.len()))
    }

    pub fn space_report(&self) -> SpaceReport {
        SpaceReport {
            num_large: self.large_ids.len(),
            matrix_bits: self.matrix.num_bits(),
            membership_entries: self.membership.iter().map(StaticHashSet::len).sum(),
        }
    }
}

fn sorted_intersect(a: &[usize], b: &[usize]) -> bool {
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}
