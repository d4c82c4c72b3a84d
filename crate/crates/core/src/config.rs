//! Resource limits, with defaults overridable through the environment.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEGREE: usize = 256;
pub const DEFAULT_MAX_PRIME: u64 = 10_000;

pub const MAX_DEGREE_VAR: &str = "QRANK_MAX_DEGREE";
pub const MAX_PRIME_VAR: &str = "QRANK_MAX_PRIME";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest total degree of any P(x^n) the algorithms may form.
    pub max_degree: usize,
    /// Largest prime bound the Capelli search may use.
    pub max_prime: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_degree: DEFAULT_MAX_DEGREE, max_prime: DEFAULT_MAX_PRIME }
    }
}

fn parse_var<T: std::str::FromStr>(name: &str, default: T) -> Result<T> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{name} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(default),
    }
}

impl Budget {
    /// Reads `QRANK_MAX_DEGREE` and `QRANK_MAX_PRIME`, falling back to defaults.
    pub fn from_env() -> Result<Self> {
        let b = Budget {
            max_degree: parse_var(MAX_DEGREE_VAR, DEFAULT_MAX_DEGREE)?,
            max_prime: parse_var(MAX_PRIME_VAR, DEFAULT_MAX_PRIME)?,
        };
        if b.max_degree == 0 || b.max_prime == 0 {
            return Err(Error::Parse("budget values must be positive".into()));
        }
        Ok(b)
    }

    pub fn with_max_degree(self, max_degree: usize) -> Self {
        Budget { max_degree, ..self }
    }

    pub fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.max_degree {
            return Err(Error::BudgetExceeded(format!(
                "degree {degree} exceeds the cap {}",
                self.max_degree
            )));
        }
        Ok(())
    }
}
