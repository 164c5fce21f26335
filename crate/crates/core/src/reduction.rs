//! Set intersection through a distance oracle.
//!
//! Every set becomes a vertex (V1), every universe element becomes a vertex
//! (V2), and `e ∈ S_i` becomes an edge, optionally stretched into a path of
//! `L` edges. Two distinct sets intersect iff their vertices are at distance
//! exactly `2L`; otherwise they are at least `4L` apart (or disconnected).
//!
//! For a `(2 - eps, c)` oracle, i.e. `d ≤ est ≤ (2 - eps)·d + c`, choosing
//! `L > c / (2·eps)` makes an intersecting pair estimate at most
//! `(2 - eps)·2L + c < 4L`, while a disjoint pair never estimates below `4L`.
//! So `est < 4L` decides intersection for every oracle meeting the contract.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::oracles::DistanceOracle;
use crate::{Error, Result, SetFamily};

/// Exact positive rational `num/den` in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Eps {
    num: u32,
    den: u32,
}

impl Eps {
    pub fn new(num: u32, den: u32) -> Result<Self> {
        if num == 0 || den == 0 || num > den {
            return Err(Error::InvalidArgument(format!(
                "eps = {num}/{den} must lie in (0, 1]"
            )));
        }
        Ok(Self { num, den })
    }

    pub const ONE: Eps = Eps { num: 1, den: 1 };

    pub fn num(self) -> u32 {
        self.num
    }

    pub fn den(self) -> u32 {
        self.den
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.num) / f64::from(self.den)
    }
}

impl FromStr for Eps {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("eps must be \"p/q\" or \"p\", got {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((p, q)) => (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?),
            None => (s.trim().parse().map_err(|_| bad())?, 1),
        };
        Eps::new(num, den)
    }
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Guarantee of a `(2 - eps, c)`-approximate oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleParams {
    pub eps: Eps,
    pub c: u32,
}

impl OracleParams {
    pub fn new(eps: Eps, c: u32) -> Self {
        Self { eps, c }
    }

    /// Multiplicative error `2 - eps`.
    pub fn mult(&self) -> f64 {
        2.0 - self.eps.as_f64()
    }

    /// Path length (in edges) each membership edge is stretched into:
    /// `max(ceil(2(c-1)/eps), floor(c/(2 eps)) + 1, 1)`.
    pub fn subdivision_length(&self) -> usize {
        let (p, q, c) = (
            i64::from(self.eps.num),
            i64::from(self.eps.den),
            i64::from(self.c),
        );
        let path_formula = div_ceil_signed(2 * (c - 1) * q, p);
        let separation = (c * q).div_euclid(2 * p) + 1;
        path_formula.max(separation).max(1) as usize
    }

    /// Estimates strictly below this value mean "intersecting".
    pub fn threshold(&self) -> f64 {
        4.0 * self.subdivision_length() as f64
    }
}

fn div_ceil_signed(a: i64, b: i64) -> i64 {
    -(-a).div_euclid(b)
}

/// Undirected, unweighted graph built from a [`SetFamily`].
///
/// Vertex ids: sets `0..m`, then elements `m..m+u`, then subdivision vertices
/// in construction order (sets ascending, elements ascending within a set,
/// path from the set side towards the element side).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionGraph {
    adjacency: Vec<Vec<usize>>,
    num_sets: usize,
    universe: usize,
    subdivision: usize,
    num_edges: usize,
}

impl ReductionGraph {
    /// Plain bipartite membership graph (`L = 1`).
    pub fn bipartite(family: &SetFamily) -> Self {
        Self::with_subdivision(family, 1)
    }

    /// Graph for `params`, with `L = params.subdivision_length()`.
    pub fn subdivided(family: &SetFamily, params: &OracleParams) -> Self {
        Self::with_subdivision(family, params.subdivision_length())
    }

    /// Replaces every membership edge with a fresh path of `length` edges.
    pub fn with_subdivision(family: &SetFamily, length: usize) -> Self {
        assert!(length >= 1, "subdivision length must be at least 1");
        let (m, u, n) = (family.num_sets(), family.universe(), family.total_size());
        let num_vertices = m + u + n * (length - 1);
        let mut adjacency = vec![Vec::new(); num_vertices];
        let mut next = m + u;
        let mut num_edges = 0;

        let mut link = |adj: &mut Vec<Vec<usize>>, a: usize, b: usize| {
            adj[a].push(b);
            adj[b].push(a);
            num_edges += 1;
        };

        for (i, set) in family.sets().iter().enumerate() {
            for &e in set {
                let mut prev = i;
                for _ in 1..length {
                    link(&mut adjacency, prev, next);
                    prev = next;
                    next += 1;
                }
                link(&mut adjacency, prev, m + e);
            }
        }
        debug_assert_eq!(next, num_vertices);
        for list in &mut adjacency {
            list.sort_unstable();
        }

        Self {
            adjacency,
            num_sets: m,
            universe: u,
            subdivision: length,
            num_edges,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn num_sets(&self) -> usize {
        self.num_sets
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// `L`, the number of edges per membership path.
    pub fn subdivision(&self) -> usize {
        self.subdivision
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Vertex of set `i` in V1. Panics if `i >= m`.
    pub fn set_vertex(&self, i: usize) -> usize {
        assert!(i < self.num_sets, "set {i} out of range");
        i
    }

    /// Vertex of element `e` in V2. Panics if `e >= u`.
    pub fn element_vertex(&self, e: usize) -> usize {
        assert!(e < self.universe, "element {e} out of range");
        self.num_sets + e
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.num_vertices() {
            Ok(())
        } else {
            Err(Error::Vertex {
                vertex: v,
                num_vertices: self.num_vertices(),
            })
        }
    }

    /// Undirected edges `(a, b)` with `a < b`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    pub fn export(&self, format: ExportFormat) -> String {
        let mut out = String::new();
        match format {
            ExportFormat::EdgeList => {
                writeln!(out, "{} {}", self.num_vertices(), self.num_edges).unwrap();
                for (a, b) in self.edges() {
                    writeln!(out, "{a} {b}").unwrap();
                }
            }
            ExportFormat::Dimacs => {
                writeln!(out, "p edge {} {}", self.num_vertices(), self.num_edges).unwrap();
                for (a, b) in self.edges() {
                    writeln!(out, "e {} {}", a + 1, b + 1).unwrap();
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    EdgeList,
    Dimacs,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" => Ok(Self::EdgeList),
            "dimacs" => Ok(Self::Dimacs),
            _ => Err(Error::InvalidArgument(format!(
                "unknown export format {s:?} (expected edge-list or dimacs)"
            ))),
        }
    }
}

/// Decides whether sets `i` and `j` intersect from the oracle's estimate
/// between their vertices: `estimate < 4L`. Infinite estimates count as
/// disjoint.
pub fn decide_intersection<O: DistanceOracle + ?Sized>(
    graph: &ReductionGraph,
    oracle: &O,
    params: &OracleParams,
    i: usize,
    j: usize,
) -> Result<bool> {
    let length = params.subdivision_length();
    if graph.subdivision() != length {
        return Err(Error::SubdivisionMismatch {
            graph: graph.subdivision(),
            params: length,
        });
    }
    for k in [i, j] {
        if k >= graph.num_sets() {
            return Err(Error::SetIndex {
                index: k,
                m: graph.num_sets(),
            });
        }
    }
    if i == j {
        return Err(Error::SelfPair);
    }
    let estimate = oracle.estimate(graph.set_vertex(i), graph.set_vertex(j));
    Ok(estimate < params.threshold())
}
