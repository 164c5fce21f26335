//! Cross-module properties: the index and the reduction against brute force.

use proptest::prelude::*;

use setisect::bench::adversarial_failure_demo;
use setisect::oracles::{bfs_distances, MockMode, MockOracle, TzOracle, UNREACHABLE};
use setisect::reduction::decide_intersection;
use setisect::{DistanceOracle, Eps, IntersectionIndex, OracleParams, ReductionGraph, SetFamily};

fn params_strategy() -> impl Strategy<Value = OracleParams> {
    (1u32..=8, 0u32..=4).prop_flat_map(|(den, c)| {
        (1..=den).prop_map(move |num| OracleParams::new(Eps::new(num, den).unwrap(), c))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn index_queries_are_symmetric(
        m in 1usize..30, u in 1usize..60, density in 0.0f64..0.5, seed: u64, t in 1usize..12,
    ) {
        let f = SetFamily::random(m, u, density, seed).unwrap();
        let index = IntersectionIndex::build(&f, Some(t)).unwrap();
        for i in 0..m {
            for j in 0..m {
                prop_assert_eq!(
                    index.query(i, j).unwrap().intersects,
                    index.query(j, i).unwrap().intersects
                );
            }
        }
    }

    #[test]
    fn probes_bounded_by_default_threshold(
        m in 1usize..40, u in 1usize..80, density in 0.0f64..0.6, seed: u64,
    ) {
        let f = SetFamily::random(m, u, density, seed).unwrap();
        let index = IntersectionIndex::build(&f, None).unwrap();
        for i in 0..m {
            for j in 0..m {
                prop_assert!(index.query(i, j).unwrap().probes <= index.threshold());
            }
        }
    }

    #[test]
    fn random_mocks_never_flip_decisions(
        m in 2usize..15, u in 1usize..25, density in 0.0f64..0.4, seed: u64,
        params in params_strategy(), mock_seed: u64,
    ) {
        let f = SetFamily::random(m, u, density, seed).unwrap();
        let g = ReductionGraph::subdivided(&f, &params);
        let mock = MockOracle::new(&g, params.mult(), f64::from(params.c), MockMode::Random, mock_seed);
        for i in 0..m {
            for j in (0..m).filter(|&j| j != i) {
                prop_assert_eq!(
                    decide_intersection(&g, &mock, &params, i, j).unwrap(),
                    f.brute_force_intersect(i, j).unwrap().intersects
                );
            }
        }
    }

    #[test]
    fn overshooting_oracles_never_report_false_positives(
        m in 2usize..12, u in 1usize..20, density in 0.0f64..0.4, seed: u64,
        params in params_strategy(), mult in 1.0f64..6.0, add in 0.0f64..10.0,
    ) {
        let f = SetFamily::random(m, u, density, seed).unwrap();
        let g = ReductionGraph::subdivided(&f, &params);
        let mock = MockOracle::new(&g, mult, add, MockMode::Random, seed);
        for i in 0..m {
            for j in (0..m).filter(|&j| j != i) {
                if decide_intersection(&g, &mock, &params, i, j).unwrap() {
                    prop_assert!(f.brute_force_intersect(i, j).unwrap().intersects);
                }
            }
        }
    }

    #[test]
    fn stretch_two_always_defeats_an_intersecting_pair(
        m in 2usize..12, u in 1usize..10, density in 0.2f64..0.8, seed: u64,
        params in params_strategy(), extra in 0.0f64..1.5,
    ) {
        let f = SetFamily::random(m, u, density, seed).unwrap();
        let has_pair = (0..m).any(|i| (i + 1..m).any(|j| f.brute_force_intersect(i, j).unwrap().intersects));
        let demo = adversarial_failure_demo(&f, 2.0 + extra, &params).unwrap();
        prop_assert_eq!(demo.found, has_pair);
    }

    #[test]
    fn tz_estimates_within_stretch(
        m in 1usize..10, u in 1usize..20, density in 0.0f64..0.4, seed: u64, k in 1usize..=4, length in 1usize..=3,
    ) {
        let f = SetFamily::random(m, u, density, seed).unwrap();
        let g = ReductionGraph::with_subdivision(&f, length);
        let oracle = TzOracle::build(&g, k, seed).unwrap();
        let stretch = (2 * k - 1) as f64;
        for a in 0..g.num_vertices() {
            let dist = bfs_distances(&g, a);
            for b in 0..g.num_vertices() {
                let e = oracle.estimate(a, b);
                if dist[b] == UNREACHABLE {
                    prop_assert_eq!(e, f64::INFINITY);
                } else {
                    let d = f64::from(dist[b]);
                    prop_assert!(d <= e && e <= stretch * d, "d={} e={}", d, e);
                }
            }
        }
    }
}
