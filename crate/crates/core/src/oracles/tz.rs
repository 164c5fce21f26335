use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DistanceOracle, Guarantee, UNREACHABLE};
use crate::{Error, ReductionGraph, Result};

/// Resampling attempts for a level that came out empty before falling back to
/// a single uniformly chosen vertex of the level below.
const MAX_RESAMPLES: usize = 64;

/// Thorup-Zwick landmark oracle with stretch `2k - 1`, for unweighted graphs.
///
/// Levels `A_0 = V ⊇ A_1 ⊇ ... ⊇ A_{k-1}` are sampled with keep probability
/// `|V|^{-1/k}`; `A_k` is empty. For every vertex `v` and level `i` we keep
/// its nearest landmark `p_i(v)` in `A_i`, and the bunch
/// `B(v) = { w ∈ A_i \ A_{i+1} : d(w, v) < d(A_{i+1}, v) }` with exact
/// distances. Expected size is `O(k·n^{1+1/k})`.
#[derive(Debug, Clone)]
pub struct TzOracle {
    k: usize,
    /// Highest level each vertex was sampled into.
    top_level: Vec<usize>,
    /// `nearest[i][v]` is `(p_i(v), d(A_i, v))`, or `None` if no vertex of
    /// `A_i` is reachable from `v`.
    nearest: Vec<Vec<Option<(usize, u32)>>>,
    bunches: Vec<HashMap<usize, u32>>,
    seed: u64,
}

impl TzOracle {
    pub fn build(graph: &ReductionGraph, k: usize, seed: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("TZ level count k must be >= 1".into()));
        }
        let n = graph.num_vertices();
        let top_level = sample_levels(n, k, seed);

        let nearest: Vec<_> = (0..k)
            .map(|i| nearest_landmarks(graph, (0..n).filter(|&v| top_level[v] >= i)))
            .collect();

        let mut bunches = vec![HashMap::new(); n];
        let mut dist = vec![UNREACHABLE; n];
        let mut touched = Vec::new();
        let mut queue = VecDeque::new();
        for w in 0..n {
            let level = top_level[w];
            // Cluster of w: vertices strictly closer to w than to A_{level+1}.
            let radius = |x: usize| match nearest.get(level + 1) {
                Some(row) => row[x].map_or(UNREACHABLE, |(_, d)| d),
                None => UNREACHABLE,
            };
            dist[w] = 0;
            touched.push(w);
            queue.push_back(w);
            while let Some(x) = queue.pop_front() {
                bunches[x].insert(w, dist[x]);
                let next = dist[x] + 1;
                for &y in graph.neighbors(x) {
                    if dist[y] == UNREACHABLE && next < radius(y) {
                        dist[y] = next;
                        touched.push(y);
                        queue.push_back(y);
                    }
                }
            }
            for x in touched.drain(..) {
                dist[x] = UNREACHABLE;
            }
        }

        Ok(Self {
            k,
            top_level,
            nearest,
            bunches,
            seed,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of sampled vertices at each level `0..k`.
    pub fn level_sizes(&self) -> Vec<usize> {
        (0..self.k)
            .map(|i| self.top_level.iter().filter(|&&l| l >= i).count())
            .collect()
    }

    pub fn in_level(&self, i: usize, v: usize) -> bool {
        self.top_level[v] >= i
    }

    /// `(p_i(v), d(A_i, v))`.
    pub fn nearest(&self, i: usize, v: usize) -> Option<(usize, u32)> {
        self.nearest[i][v]
    }

    pub fn bunch(&self, v: usize) -> &HashMap<usize, u32> {
        &self.bunches[v]
    }

    /// Total stored bunch entries.
    pub fn size(&self) -> usize {
        self.bunches.iter().map(HashMap::len).sum()
    }

    /// One pass of the bunch walk, starting from `u`'s side.
    fn walk(&self, mut u: usize, mut v: usize) -> f64 {
        let mut w = u;
        let mut to_u = 0;
        let mut level = 0;
        loop {
            if let Some(&to_v) = self.bunches[v].get(&w) {
                return f64::from(to_u) + f64::from(to_v);
            }
            level += 1;
            if level == self.k {
                return f64::INFINITY;
            }
            std::mem::swap(&mut u, &mut v);
            // A missing landmark means no vertex of A_level is reachable from
            // u, which only happens across components.
            let Some((p, d)) = self.nearest[level][u] else {
                return f64::INFINITY;
            };
            w = p;
            to_u = d;
        }
    }
}

impl DistanceOracle for TzOracle {
    /// Minimum of the bunch walks started from either endpoint, which keeps the
    /// estimate symmetric without loosening the stretch bound.
    fn estimate(&self, u: usize, v: usize) -> f64 {
        self.walk(u, v).min(self.walk(v, u))
    }

    fn guarantee(&self) -> Guarantee {
        Guarantee {
            mult: (2 * self.k - 1) as f64,
            add: 0.0,
        }
    }
}

fn sample_levels(n: usize, k: usize, seed: u64) -> Vec<usize> {
    let mut top_level = vec![0; n];
    if n == 0 {
        return top_level;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let keep = (n as f64).powf(-1.0 / k as f64);
    for i in 1..k {
        let below: Vec<usize> = (0..n).filter(|&v| top_level[v] == i - 1).collect();
        let mut chosen = Vec::new();
        for _ in 0..MAX_RESAMPLES {
            chosen = below.iter().copied().filter(|_| rng.random_bool(keep)).collect();
            if !chosen.is_empty() {
                break;
            }
        }
        if chosen.is_empty() {
            chosen.push(below[rng.random_range(0..below.len())]);
        }
        for v in chosen {
            top_level[v] = i;
        }
    }
    top_level
}

/// Multi-source BFS: nearest source and its distance for every vertex. Sources
/// are seeded in ascending order, so ties go to the smallest source id.
fn nearest_landmarks(
    graph: &ReductionGraph,
    sources: impl Iterator<Item = usize>,
) -> Vec<Option<(usize, u32)>> {
    let mut nearest = vec![None; graph.num_vertices()];
    let mut queue = VecDeque::new();
    for s in sources {
        nearest[s] = Some((s, 0));
        queue.push_back(s);
    }
    while let Some(x) = queue.pop_front() {
        let (p, d) = nearest[x].unwrap();
        for &y in graph.neighbors(x) {
            if nearest[y].is_none() {
                nearest[y] = Some((p, d + 1));
                queue.push_back(y);
            }
        }
    }
    nearest
}
