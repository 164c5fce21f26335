//! Threshold sweeps over the intersection index, and the constructive
//! counterexample showing that stretch 2 is already too weak for the
//! reduction.

use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracles::{DistanceOracle, MockMode, MockOracle};
use crate::reduction::decide_intersection;
use crate::{Error, IntersectionIndex, OracleParams, ReductionGraph, Result, SetFamily};

#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffRow {
    pub t: usize,
    pub num_large: usize,
    pub matrix_bits: usize,
    pub max_probes: usize,
    pub mean_probes: f64,
    /// Wall-clock build time. Informational only.
    pub build_ms: f64,
    /// Mean wall-clock time per query. Informational only.
    pub query_ns: f64,
}

pub const TSV_HEADER: &str = "t\tnum_large\tmatrix_bits\tmax_probes\tmean_probes\tbuild_ms\tquery_ns";

impl TradeoffRow {
    /// One TSV line (no trailing newline). With `timings = false` the two
    /// wall-clock columns are printed as `-`.
    pub fn to_tsv(&self, timings: bool) -> String {
        let mut line = format!(
            "{}\t{}\t{}\t{}\t{:.4}",
            self.t, self.num_large, self.matrix_bits, self.max_probes, self.mean_probes
        );
        if timings {
            write!(line, "\t{:.3}\t{:.1}", self.build_ms, self.query_ns).unwrap();
        } else {
            line.push_str("\t-\t-");
        }
        line
    }
}

/// Builds an index for every `t` and runs `query_sample` uniformly drawn
/// `(i, j)` queries against it. The query pairs depend only on `seed`, so all
/// rows see the same workload.
pub fn sweep_threshold(
    family: &SetFamily,
    t_values: &[usize],
    query_sample: usize,
    seed: u64,
) -> Result<Vec<TradeoffRow>> {
    if t_values.is_empty() || t_values.contains(&0) {
        return Err(Error::InvalidArgument(
            "sweep needs a non-empty list of thresholds >= 1".into(),
        ));
    }
    let m = family.num_sets();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(usize, usize)> = if m == 0 {
        Vec::new()
    } else {
        (0..query_sample)
            .map(|_| (rng.random_range(0..m), rng.random_range(0..m)))
            .collect()
    };

    t_values
        .iter()
        .map(|&t| {
            let started = Instant::now();
            let index = IntersectionIndex::build_with_seed(family, Some(t), seed)?;
            let build_ms = started.elapsed().as_secs_f64() * 1e3;

            let started = Instant::now();
            let (mut max_probes, mut total_probes) = (0, 0);
            for &(i, j) in &pairs {
                let probes = index.query(i, j)?.probes;
                max_probes = max_probes.max(probes);
                total_probes += probes;
            }
            let elapsed = started.elapsed().as_secs_f64();

            let report = index.space_report();
            let count = pairs.len().max(1) as f64;
            Ok(TradeoffRow {
                t,
                num_large: report.num_large,
                matrix_bits: report.matrix_bits,
                max_probes,
                mean_probes: total_probes as f64 / count,
                build_ms,
                query_ns: elapsed * 1e9 / count,
            })
        })
        .collect()
}

/// Checks every row against the large-set count bound, the `(n/t)²` matrix
/// bound and the `t` probe bound.
pub fn verify_tradeoff(rows: &[TradeoffRow], n: usize) -> bool {
    rows.iter().all(|row| {
        let t = row.t as u128;
        let large_ok = row.num_large == 0 || (row.num_large as u128) * t < n as u128;
        // matrix_bits ≤ (n/t)², kept in integers.
        let matrix_ok = (row.matrix_bits as u128) * t * t <= (n as u128) * (n as u128);
        let probes_ok = row.max_probes <= row.t;
        t >= 1 && large_ok && matrix_ok && probes_ok
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FailureDemo {
    pub found: bool,
    /// First pair `(i, j)`, `i < j`, whose decision disagrees with the truth.
    pub pair: Option<(usize, usize)>,
    pub estimate: f64,
    /// Whether the pair really intersects.
    pub truth: bool,
}

/// Runs the `estimate < 4L` decision for `params` against an always-max oracle
/// of stretch `mult` (additive error `params.c`) and reports the first
/// misclassified pair. Once `mult ≥ 2`, an intersecting pair's estimate
/// `mult·2L + c` reaches `4L`, so any intersecting pair is misclassified.
pub fn adversarial_failure_demo(
    family: &SetFamily,
    mult: f64,
    params: &OracleParams,
) -> Result<FailureDemo> {
    if mult < 1.0 {
        return Err(Error::InvalidArgument(format!("mult {mult} must be >= 1")));
    }
    let graph = ReductionGraph::subdivided(family, params);
    let oracle = MockOracle::new(&graph, mult, f64::from(params.c), MockMode::AlwaysMax, 0);
    let m = family.num_sets();
    for i in 0..m {
        for j in i + 1..m {
            let decided = decide_intersection(&graph, &oracle, params, i, j)?;
            let truth = family.brute_force_intersect(i, j)?.intersects;
            if decided != truth {
                return Ok(FailureDemo {
                    found: true,
                    pair: Some((i, j)),
                    estimate: oracle.estimate(graph.set_vertex(i), graph.set_vertex(j)),
                    truth,
                });
            }
        }
    }
    Ok(FailureDemo {
        found: false,
        pair: None,
        estimate: f64::NAN,
        truth: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SetFamily {
        SetFamily::parse("3 4\n0 1\n1 2\n3\n").unwrap()
    }

    fn row(t: usize, num_large: usize, matrix_bits: usize, max_probes: usize) -> TradeoffRow {
        TradeoffRow {
            t,
            num_large,
            matrix_bits,
            max_probes,
            mean_probes: 0.0,
            build_ms: 0.0,
            query_ns: 0.0,
        }
    }

    #[test]
    fn sweep_small_family() {
        let f = sample();
        let rows = sweep_threshold(&f, &[1, 2, 3, 6], 200, 1).unwrap();
        let shape: Vec<_> = rows.iter().map(|r| (r.t, r.num_large, r.matrix_bits)).collect();
        assert_eq!(shape, vec![(1, 2, 4), (2, 0, 0), (3, 0, 0), (6, 0, 0)]);
        // Nothing is large at t = 6; the scanned set never exceeds 2 elements.
        assert!(rows[3].max_probes <= 2);
        assert!(verify_tradeoff(&rows, 5));
    }

    #[test]
    fn sweep_is_deterministic_apart_from_timings() {
        let f = SetFamily::random(30, 60, 0.2, 3).unwrap();
        let a = sweep_threshold(&f, &[1, 3, 8], 500, 9).unwrap();
        let b = sweep_threshold(&f, &[1, 3, 8], 500, 9).unwrap();
        let strip = |rows: &[TradeoffRow]| rows.iter().map(|r| r.to_tsv(false)).collect::<Vec<_>>();
        assert_eq!(strip(&a), strip(&b));
    }

    #[test]
    fn sweep_rejects_bad_thresholds() {
        let f = sample();
        assert!(sweep_threshold(&f, &[], 10, 0).is_err());
        assert!(sweep_threshold(&f, &[1, 0], 10, 0).is_err());
    }

    #[test]
    fn verify_rejects_forged_rows() {
        assert!(!verify_tradeoff(&[row(2, 3, 9, 0)], 5));
        assert!(!verify_tradeoff(&[row(1, 2, 4, 2)], 5));
        assert!(!verify_tradeoff(&[row(2, 2, 9, 0)], 5));
        assert!(verify_tradeoff(&[row(1, 2, 4, 1)], 5));
    }

    #[test]
    fn verify_empty_family() {
        let f = SetFamily::new(4, vec![vec![], vec![], vec![]]).unwrap();
        let rows = sweep_threshold(&f, &[1, 2], 50, 0).unwrap();
        assert!(rows.iter().all(|r| r.num_large == 0 && r.max_probes == 0));
        assert!(verify_tradeoff(&rows, 0));
    }

    #[test]
    fn tsv_layout() {
        let r = TradeoffRow {
            t: 3,
            num_large: 1,
            matrix_bits: 1,
            max_probes: 2,
            mean_probes: 0.5,
            build_ms: 1.25,
            query_ns: 80.0,
        };
        assert_eq!(r.to_tsv(false), "3\t1\t1\t2\t0.5000\t-\t-");
        assert_eq!(r.to_tsv(true), "3\t1\t1\t2\t0.5000\t1.250\t80.0");
        assert_eq!(TSV_HEADER.split('\t').count(), 7);
    }

    #[test]
    fn failure_demo_examples() {
        let f = sample();
        let d = adversarial_failure_demo(&f, 2.0, &OracleParams::new(crate::Eps::ONE, 0)).unwrap();
        assert_eq!(d, FailureDemo { found: true, pair: Some((0, 1)), estimate: 4.0, truth: true });

        let p = OracleParams::new("1/2".parse().unwrap(), 2);
        let d = adversarial_failure_demo(&f, 3.0, &p).unwrap();
        assert_eq!((d.found, d.pair, d.estimate), (true, Some((0, 1)), 26.0));

        let disjoint = SetFamily::new(4, vec![vec![0], vec![1, 2], vec![3]]).unwrap();
        let d = adversarial_failure_demo(&disjoint, 3.0, &p).unwrap();
        assert!(!d.found && d.pair.is_none());
    }

    #[test]
    fn compliant_stretch_is_not_defeated() {
        let f = SetFamily::random(12, 20, 0.2, 8).unwrap();
        for (eps, c) in [("1", 0), ("1/2", 2), ("1/4", 3)] {
            let p = OracleParams::new(eps.parse().unwrap(), c);
            assert!(!adversarial_failure_demo(&f, p.mult(), &p).unwrap().found);
        }
    }
}
