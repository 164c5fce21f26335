use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DistanceOracle, ExactOracle, Guarantee};
use crate::{Error, ReductionGraph, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MockMode {
    /// The true distance.
    Exact,
    /// The upper end of the contract, `mult·d + add`.
    AlwaysMax,
    /// Uniform in `[d, mult·d + add]`, fixed per (seed, unordered pair).
    Random,
}

impl FromStr for MockMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Self::Exact),
            "always-max" => Ok(Self::AlwaysMax),
            "random" => Ok(Self::Random),
            _ => Err(Error::InvalidArgument(format!(
                "unknown mock mode {s:?} (expected exact, always-max or random)"
            ))),
        }
    }
}

/// Adversarial oracle: emits any estimate its declared `(mult, add)` contract
/// permits, according to `mode`.
#[derive(Debug, Clone)]
pub struct MockOracle<'g> {
    truth: Arc<ExactOracle<'g>>,
    guarantee: Guarantee,
    mode: MockMode,
    seed: u64,
}

impl<'g> MockOracle<'g> {
    pub fn new(graph: &'g ReductionGraph, mult: f64, add: f64, mode: MockMode, seed: u64) -> Self {
        Self::with_truth(Arc::new(ExactOracle::new(graph)), mult, add, mode, seed)
    }

    /// Shares the distance cache of an existing exact oracle.
    pub fn with_truth(
        truth: Arc<ExactOracle<'g>>,
        mult: f64,
        add: f64,
        mode: MockMode,
        seed: u64,
    ) -> Self {
        assert!(mult >= 1.0 && add >= 0.0, "mock contract needs mult >= 1, add >= 0");
        Self {
            truth,
            guarantee: Guarantee { mult, add },
            mode,
            seed,
        }
    }

    pub fn mode(&self) -> MockMode {
        self.mode
    }
}

impl DistanceOracle for MockOracle<'_> {
    fn estimate(&self, u: usize, v: usize) -> f64 {
        let Some(d) = self.truth.distance(u, v) else {
            return f64::INFINITY;
        };
        let d = f64::from(d);
        let Guarantee { mult, add } = self.guarantee;
        let hi = mult * d + add;
        match self.mode {
            MockMode::Exact => d,
            MockMode::AlwaysMax => hi,
            MockMode::Random => {
                let (a, b) = if u <= v { (u, v) } else { (v, u) };
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                rng.set_stream(((a as u64) << 32) ^ b as u64);
                (d + (hi - d) * rng.random::<f64>()).min(hi)
            }
        }
    }

    fn guarantee(&self) -> Guarantee {
        self.guarantee
    }
}
