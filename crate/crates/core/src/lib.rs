//! Desk-scale numerics for ordinary Dirichlet series `f(s) = sum a_n n^-s`.
//!
//! The crate estimates the three classical convergence abscissas of a series
//! from a finite truncation of its coefficient sequence:
//!
//! * `sigma_c` — ordinary convergence, read off the partial sums `sum_{n<=x} a_n`;
//! * `sigma_b` — boundedness in half-planes, read off polytorus sup-norms of
//!   the Bohr lift of the truncation;
//! * `sigma_a` — absolute convergence, read off `sum_{n<=x} |a_n|`.
//!
//! All three use the same limsup statistic: sample a growth quantity on a
//! geometric grid of scales, divide its logarithm by `log x`, and take the
//! worst ratio over the upper half of the grid ([`abscissa`]).  The module
//! map follows the pipeline:
//!
//! * [`coeffs`] — coefficient sequences, sieves, Dirichlet convolution,
//!   multiplicativity checks;
//! * [`constructions`] — concrete families: zeta, quadratic character mod 3,
//!   a lacunary Euler factor supported on powers of 3, their product, and a
//!   random-sign Euler product;
//! * [`bohrlift`] — the Bohr lift to polynomials on the infinite polytorus,
//!   multistart sup-norm optimization, and the one-variable majorant bounds;
//! * [`abscissa`] — sample grids, the limsup fit, and the three estimators;
//! * [`report`] / [`seqio`] — deterministic JSON reports and `n,re,im` CSV;
//! * [`experiments`] — the subcommand implementations behind the `abscissa`
//!   binary.
//!
//! Everything is deterministic: randomized pieces take explicit seeds and
//! derive per-unit streams, so reruns reproduce results bit for bit.

pub mod abscissa;
pub mod bohrlift;
pub mod coeffs;
pub mod constructions;
pub mod experiments;
pub mod report;
pub mod seqio;

use thiserror::Error;

/// Error type shared by the whole crate.
///
/// Variants carry enough context to state *which* precondition failed;
/// messages name the offending prime, power, scale, or parameter rather
/// than echoing a generic complaint.
#[derive(Debug, Error)]
pub enum Error {
    /// Two sequences that must share a truncation length do not.
    #[error("length mismatch: left sequence has {left} terms, right has {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A sample grid asks for a scale beyond the available truncation.
    #[error("grid scale {scale} exceeds the {len}-term truncation")]
    ScaleOutOfRange { scale: usize, len: usize },

    /// A set of local rules fails to cover a prime power within range.
    /// `power == 1` means the prime has no rule at all.
    #[error("no local value for prime {prime} power {power} (p^{power} <= {limit} is in range)")]
    MissingLocalValue {
        prime: u64,
        power: u32,
        limit: usize,
    },

    /// A lifted polynomial's basis does not contain a needed prime.
    #[error("prime basis does not cover prime {prime} (required by n = {n})")]
    BasisCoverage { prime: u64, n: usize },

    /// Fewer samples than the fit needs.
    #[error("need at least {needed} samples, got {got}")]
    InsufficientData { needed: usize, got: usize },

    /// Input is identically zero or otherwise carries no signal.
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    /// A numeric parameter is outside its admissible range.
    #[error("{what} = {value} is outside {expected}")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// An operation that requires multiplicative structure was handed a
    /// sequence whose data fails the check.
    #[error("structure error: {0}")]
    Structure(String),

    /// A construction produced output that fails its own postcondition.
    #[error("construction failed: {0}")]
    Construction(String),

    /// Malformed input that is not a numeric range problem.
    #[error("invalid {what}: {detail}")]
    Invalid { what: &'static str, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// CSV or flag parsing failure, with position.
    #[error("parse error at {place}: {detail}")]
    Parse { place: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

/// SplitMix64 finalizer: a cheap bijective mixer on `u64`.
///
/// Used wherever a reproducible stream must be indexed by structure rather
/// than by draw order — the sign of a prime in the random Euler product is
/// `mix64(seed ^ mix64(p))`, an optimizer restart seeds its generator from
/// `mix64(seed ^ mix64(restart))` — so growing the truncation or adding
/// restarts never reshuffles values already drawn.
pub(crate) fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
