//! Distance oracles over [`ReductionGraph`]s.
//!
//! Every oracle declares a [`Guarantee`] `(mult, add)`: for connected `u, v`,
//! `d(u, v) ≤ estimate(u, v) ≤ mult·d(u, v) + add`, and the estimate is
//! infinite exactly when `u` and `v` are disconnected.

mod exact;
mod mock;
mod tz;

use std::collections::VecDeque;
use std::str::FromStr;

pub use exact::ExactOracle;
pub use mock::{MockMode, MockOracle};
pub use tz::TzOracle;

use crate::{Error, ReductionGraph, Result};

/// Marker for "no path" in BFS distance vectors.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Guarantee {
    pub mult: f64,
    pub add: f64,
}

impl Guarantee {
    pub const EXACT: Guarantee = Guarantee { mult: 1.0, add: 0.0 };

    /// Whether `estimate` is allowed for true distance `truth` (`None` when
    /// disconnected).
    pub fn admits(&self, truth: Option<u32>, estimate: f64) -> bool {
        match truth {
            None => estimate == f64::INFINITY,
            Some(d) => {
                let d = f64::from(d);
                d <= estimate && estimate <= self.mult * d + self.add
            }
        }
    }
}

pub trait DistanceOracle: Sync {
    /// Distance estimate between two vertices; `f64::INFINITY` when they are
    /// disconnected. Panics on out-of-range vertices.
    fn estimate(&self, u: usize, v: usize) -> f64;

    fn guarantee(&self) -> Guarantee;
}

/// Oracle selector: `exact`, `tz:<k>` or `mock:<mode>:<mult>:<add>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleSpec {
    Exact,
    Tz { k: usize },
    Mock { mode: MockMode, mult: f64, add: f64 },
}

impl OracleSpec {
    pub fn build<'g>(
        &self,
        graph: &'g ReductionGraph,
        seed: u64,
    ) -> Result<Box<dyn DistanceOracle + 'g>> {
        Ok(match *self {
            OracleSpec::Exact => Box::new(ExactOracle::new(graph)),
            OracleSpec::Tz { k } => Box::new(TzOracle::build(graph, k, seed)?),
            OracleSpec::Mock { mode, mult, add } => {
                Box::new(MockOracle::new(graph, mult, add, mode, seed))
            }
        })
    }
}

impl FromStr for OracleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidArgument(format!("oracle {s:?}: {why}"));
        let parts: Vec<&str> = s.split(':').collect();
        match parts[..] {
            ["exact"] => Ok(OracleSpec::Exact),
            ["tz", k] => match k.parse() {
                Ok(k) if k >= 1 => Ok(OracleSpec::Tz { k }),
                _ => Err(bad("k must be an integer >= 1")),
            },
            ["mock", mode, mult, add] => {
                let mode = mode.parse()?;
                let mult: f64 = mult.parse().map_err(|_| bad("bad mult"))?;
                let add: f64 = add.parse().map_err(|_| bad("bad add"))?;
                if !(mult >= 1.0 && mult.is_finite()) || !(add >= 0.0 && add.is_finite()) {
                    return Err(bad("need mult >= 1 and add >= 0"));
                }
                Ok(OracleSpec::Mock { mode, mult, add })
            }
            _ => Err(bad("expected exact, tz:<k> or mock:<mode>:<mult>:<add>")),
        }
    }
}

/// Hop distances from `source` to every vertex.
pub fn bfs_distances(graph: &ReductionGraph, source: usize) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; graph.num_vertices()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let next = dist[v] + 1;
        for &w in graph.neighbors(v) {
            if dist[w] == UNREACHABLE {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Exact hop distance between `u` and `v`, `None` if disconnected.
pub fn bfs_distance(graph: &ReductionGraph, u: usize, v: usize) -> Result<Option<u32>> {
    graph.check_vertex(u)?;
    graph.check_vertex(v)?;
    if u == v {
        return Ok(Some(0));
    }
    let mut dist = vec![UNREACHABLE; graph.num_vertices()];
    let mut queue = VecDeque::from([u]);
    dist[u] = 0;
    while let Some(x) = queue.pop_front() {
        for &y in graph.neighbors(x) {
            if dist[y] == UNREACHABLE {
                dist[y] = dist[x] + 1;
                if y == v {
                    return Ok(Some(dist[y]));
                }
                queue.push_back(y);
            }
        }
    }
    Ok(None)
}

pub(crate) fn as_estimate(d: u32) -> f64 {
    if d == UNREACHABLE {
        f64::INFINITY
    } else {
        f64::from(d)
    }
}
