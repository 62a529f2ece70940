use crate::error::{Error, Result};

/// Hard ceiling for any configured level; 2^20 coefficients is far past desk scale.
pub const LEVEL_CEILING: u32 = 20;

/// Seed used by every sampler unless overridden.
pub const DEFAULT_SEED: u64 = 0x0C7A11;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest Cayley-Dickson level accepted from user input.
    pub max_level: u32,
    /// Largest level whose module action and gram matrices are materialized.
    pub materialize_level: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_level: 12, materialize_level: 8 }
    }
}

impl Limits {
    pub fn new(max_level: u32, materialize_level: u32) -> Result<Self> {
        if max_level > LEVEL_CEILING {
            return Err(Error::LevelOutOfRange { level: max_level, min: 0, max: LEVEL_CEILING });
        }
        if materialize_level > max_level {
            return Err(Error::Precondition(format!(
                "materialize level {materialize_level} exceeds max level {max_level}"
            )));
        }
        Ok(Limits { max_level, materialize_level })
    }

    pub fn check_level(&self, level: u32) -> Result<()> {
        if level > self.max_level {
            Err(Error::LevelOutOfRange { level, min: 0, max: self.max_level })
        } else {
            Ok(())
        }
    }
}
