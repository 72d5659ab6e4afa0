//! Run-wide defaults. Everything tunable lives here so a run is fully
//! determined by its flags.

/// Sieve size used when a caller does not supply one.
pub const SIEVE_LIMIT: u64 = 10_000_000;

/// Largest field order that will be built and enumerated element by element.
pub const ENUMERATION_BOUND: u64 = 1 << 20;

/// Tolerance for identities whose both sides are closed-form or accelerated.
pub const CLOSED_FORM_TOL: f64 = 1e-10;

/// Tolerance for the functional equation at general `s`.
pub const FUNCTIONAL_EQUATION_TOL: f64 = 1e-8;

/// Tolerance for the extrapolated binomial-series leg of the period chain.
pub const SERIES_LEG_TOL: f64 = 1e-6;

/// Terms fed to the Euler transform of the alternating series.
pub const ACCELERATED_TERMS: usize = 64;

/// Prime bound for the twisted Euler product in the verification suite.
pub const EULER_PRODUCT_PRIME_BOUND: u64 = 10_000_000;

/// Calibrated floor for |prod_{p <= 10^7} (1 + a_p/p)^-1 - pi/2|.
///
/// Measured error at P = 10^7 is 2.8e-5 and the curve still oscillates by a
/// few 1e-5 between bounds (8.3e-5 at P = 2*10^6); see
/// `crates/core/tests/fixtures/euler_product_convergence.json`.
pub const EULER_PRODUCT_TOL: f64 = 1e-4;

/// Base cutoff for the extrapolated binomial series (levels N, 4N, 16N).
pub const SERIES_S_BASE_TERMS: u64 = 1_000_000;

/// Largest q (and p) covered by the counting verification suite.
pub const COUNTING_SUITE_BOUND: u64 = 4096;

/// Index ranges are reduced in chunks of this many items regardless of the
/// worker count, which keeps floating-point results independent of it.
pub const CHUNK: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq)]
pub struct Limits {
    pub sieve_limit: u64,
    pub enumeration_bound: u64,
    pub workers: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            sieve_limit: SIEVE_LIMIT,
            enumeration_bound: ENUMERATION_BOUND,
            workers: 1,
        }
    }
}
