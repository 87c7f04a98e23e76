use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::number::{rat, Rational};

/// Resolution and budget knobs shared by every search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Minimum certified separation.
    #[serde(with = "crate::serde_util")]
    pub sep_eps: Rational,
    /// Sampling resolution; witness sequences shrink below it.
    #[serde(with = "crate::serde_util")]
    pub grid_delta: Rational,
    pub budget: usize,
    /// Max refinement rounds for a single comparison.
    pub precision_cap: u32,
    pub seed: u64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            sep_eps: rat(1, 1000),
            grid_delta: rat(1, 1024),
            budget: 500,
            precision_cap: 6,
            seed: 0,
        }
    }
}

impl ToleranceConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn validate(&self) -> Result<()> {
        use num_traits::Signed;
        if !self.sep_eps.is_positive() {
            return Err(Error::InvalidParameter("sep_eps must be positive".into()));
        }
        if !self.grid_delta.is_positive() {
            return Err(Error::InvalidParameter("grid_delta must be positive".into()));
        }
        if self.budget == 0 {
            return Err(Error::InvalidParameter("budget must be at least 1".into()));
        }
        Ok(())
    }

    /// ceil(log2(1 / grid_delta)).
    pub fn resolution_bits(&self) -> usize {
        let mut n = 0;
        let mut t = Rational::from_integer(1.into());
        while t > self.grid_delta {
            t /= Rational::from_integer(2.into());
            n += 1;
        }
        n.max(1)
    }

    /// Length of witness sequences; step `j` targets distance `2^-(1 + 3j)`, the last one
    /// at or below `grid_delta`.
    pub fn witness_steps(&self) -> usize {
        (self.resolution_bits() - 1).div_ceil(3) + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let cfg = ToleranceConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.resolution_bits(), 10);
        assert_eq!(cfg.witness_steps(), 4);
        assert!(ToleranceConfig::default().with_budget(0).validate().is_err());
    }
}
