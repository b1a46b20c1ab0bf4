//! Size limits for the brute-force oracles.

/// Environment variable that overrides every brute-force bound.
pub const MAX_N_VAR: &str = "ORBITOPE_MAX_N";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest ground set for vertex and chamber enumeration.
    pub geometry: usize,
    /// Largest weight for the ordered-set-partition sum behind `chi_bruteforce`.
    pub chi: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { geometry: 8, chi: 7 }
    }
}

impl Bounds {
    /// Defaults, with both limits replaced by `ORBITOPE_MAX_N` when it is set
    /// to a nonnegative integer.
    pub fn from_env() -> Self {
        match std::env::var(MAX_N_VAR).ok().and_then(|v| v.trim().parse().ok()) {
            Some(n) => Bounds { geometry: n, chi: n },
            None => Bounds::default(),
        }
    }
}
