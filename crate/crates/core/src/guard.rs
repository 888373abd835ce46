//! Resource guards for computations whose term counts grow exponentially.

use crate::error::{Error, Result};

pub const MAX_TERMS_ENV: &str = "NCIS_MAX_TERMS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Guard {
    /// Upper bound on terms (or term pairs) in a single intermediate result.
    pub max_terms: usize,
    /// Largest `N + M` accepted for `{hᴺ, hᴹ}`.
    pub max_involution_degree: u32,
    /// Largest `k` accepted for `Tr Lᵏ`.
    pub max_trace_power: u32,
}

impl Default for Guard {
    fn default() -> Self {
        Guard {
            max_terms: 50_000_000,
            max_involution_degree: 10,
            max_trace_power: 6,
        }
    }
}

impl Guard {
    /// Defaults, unless `NCIS_MAX_TERMS` is set: then only the term bound applies.
    pub fn from_env() -> Self {
        match std::env::var(MAX_TERMS_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            Some(n) => Guard::terms_only(n),
            None => Guard::default(),
        }
    }

    pub fn terms_only(max_terms: usize) -> Self {
        Guard {
            max_terms,
            max_involution_degree: u32::MAX,
            max_trace_power: u32::MAX,
        }
    }

    pub fn check_terms(&self, what: &str, n: usize) -> Result<()> {
        if n > self.max_terms {
            return Err(Error::Guard(format!(
                "{what} needs {n} terms, limit is {} (set {MAX_TERMS_ENV} to raise)",
                self.max_terms
            )));
        }
        Ok(())
    }

    pub fn check_involution(&self, n: u32, m: u32) -> Result<()> {
        if n + m > self.max_involution_degree {
            return Err(Error::Guard(format!(
                "involution degree N+M = {} exceeds {} (set {MAX_TERMS_ENV} to use a term bound instead)",
                n + m,
                self.max_involution_degree
            )));
        }
        Ok(())
    }

    pub fn check_trace_power(&self, k: u32) -> Result<()> {
        if k > self.max_trace_power {
            return Err(Error::Guard(format!(
                "trace power {k} exceeds {} (set {MAX_TERMS_ENV} to use a term bound instead)",
                self.max_trace_power
            )));
        }
        Ok(())
    }
}
