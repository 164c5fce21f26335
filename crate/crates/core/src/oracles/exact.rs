use std::sync::OnceLock;

use super::{as_estimate, bfs_distances, DistanceOracle, Guarantee, UNREACHABLE};
use crate::ReductionGraph;

/// Answers with true hop distances. A BFS is run on first use of each source
/// vertex and kept; the smaller endpoint of a query is used as the source.
#[derive(Debug)]
pub struct ExactOracle<'g> {
    graph: &'g ReductionGraph,
    cache: Vec<OnceLock<Vec<u32>>>,
}

impl<'g> ExactOracle<'g> {
    pub fn new(graph: &'g ReductionGraph) -> Self {
        Self {
            graph,
            cache: (0..graph.num_vertices()).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn graph(&self) -> &'g ReductionGraph {
        self.graph
    }

    /// Hop distances from `source` to every vertex.
    pub fn distances_from(&self, source: usize) -> &[u32] {
        self.cache[source].get_or_init(|| bfs_distances(self.graph, source))
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<u32> {
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        match self.distances_from(a)[b] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }
}

impl DistanceOracle for ExactOracle<'_> {
    fn estimate(&self, u: usize, v: usize) -> f64 {
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        as_estimate(self.distances_from(a)[b])
    }

    fn guarantee(&self) -> Guarantee {
        Guarantee::EXACT
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::bfs_distance;
    use crate::SetFamily;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matches_bfs_on_random_pairs() {
        for seed in 0..5 {
            let f = SetFamily::random(12, 20, 0.15, seed).unwrap();
            let g = ReductionGraph::with_subdivision(&f, 1 + seed as usize % 3);
            let oracle = ExactOracle::new(&g);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..100 {
                let u = rng.random_range(0..g.num_vertices());
                let v = rng.random_range(0..g.num_vertices());
                let truth = bfs_distance(&g, u, v).unwrap();
                assert_eq!(oracle.distance(u, v), truth);
                assert_eq!(oracle.estimate(u, v), truth.map_or(f64::INFINITY, f64::from));
            }
            assert_eq!(oracle.estimate(3, 3), 0.0);
        }
    }

    #[test]
    fn advertises_exact_guarantee() {
        let f = SetFamily::new(1, vec![vec![0]]).unwrap();
        let g = ReductionGraph::bipartite(&f);
        assert_eq!(ExactOracle::new(&g).guarantee(), Guarantee { mult: 1.0, add: 0.0 });
    }

    #[test]
    fn concurrent_queries_agree() {
        let f = SetFamily::random(20, 30, 0.2, 11).unwrap();
        let g = ReductionGraph::bipartite(&f);
        let oracle = ExactOracle::new(&g);
        let expected: Vec<f64> = (0..20).map(|v| as_estimate(bfs_distances(&g, 0)[v])).collect();
        std::thread::scope(|s| {
            for _ in 0..4 {
                s.spawn(|| {
                    for v in 0..20 {
                        assert_eq!(oracle.estimate(v, 0), expected[v]);
                    }
                });
            }
        });
    }
}
