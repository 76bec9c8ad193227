//! Concrete coefficient families used throughout the experiments.
//!
//! Alongside the classical rows — the all-ones sequence, the quadratic
//! character mod 3, Möbius — this module builds two parametric families:
//!
//! * [`lacunary3_coeffs`]: the single Euler factor
//!   `(1 - 3^{1-alpha} 3^{-s})^{-1}`, i.e. `a_{3^k} = 3^{(1-alpha)k}` with
//!   every other coefficient zero.  Single-signed and lacunary, so simple and
//!   absolute convergence coincide, both at `1 - alpha`.
//! * [`gap_family_coeffs`]: the Dirichlet product of that factor with the
//!   character L-series.  The character vanishes exactly on the residue
//!   class where the lacunary factor lives, which makes the product
//!   completely multiplicative; its simple abscissa stays at `1 - alpha`
//!   (cancellation from the character) while the absolute abscissa is pushed
//!   up to `1`, so the family realizes an abscissa gap of exactly `alpha`.
//!
//! The third construction, [`wintner_coeffs`], is the random Euler product
//! `prod_p (1 + eps_p p^{-s})` with independent Rademacher signs `eps_p`:
//! a random model of the Möbius series whose simple abscissa is `1/2`
//! almost surely.  Forcing every sign to `-1` collapses the model onto
//! Möbius exactly, which [`wintner_minus_coeffs`] exposes as a wiring check.
//!
//! Everything here is pure and deterministic; the random model hashes
//! `(seed, p)` per prime instead of consuming a sequential stream, so a
//! longer truncation never reshuffles signs already drawn.

use num_complex::Complex64;

use crate::coeffs::{
    character_mod3, character_seq, dirichlet_convolve, multiplicative_expand, sieve_primes,
    CoefficientSeq, PrimeLocalRule, Structure,
};
use crate::{mix64, Error, Result};

/// All-ones coefficients, `a_n = 1`.  Partial sums are exactly `x`, which
/// makes this the sharpest anchor for the estimators: the growth statistic
/// is `log x / log x = 1` bit for bit on every grid.
pub fn zeta_coeffs(n: usize) -> CoefficientSeq {
    assert!(n >= 1, "zeta_coeffs requires n >= 1");
    CoefficientSeq::new(
        vec![Complex64::new(1.0, 0.0); n],
        Structure::CompletelyMultiplicative,
    )
    .expect("length checked above")
}

/// Coefficients of the L-series of the quadratic character mod 3: the
/// repeating block `1, -1, 0`.  Bounded partial sums, so the simple
/// abscissa sits at 0 while the absolute one sits at 1 — the widest gap a
/// single classical series exhibits.
pub fn l_chi3_coeffs(n: usize) -> CoefficientSeq {
    assert!(n >= 1, "l_chi3_coeffs requires n >= 1");
    character_seq(&character_mod3(), n).expect("length checked above")
}

/// Guard for the lacunary exponent: the open interval only.  The endpoints
/// are not errors of the mathematics — they are served by [`zeta_coeffs`]
/// (`alpha = 0`) and [`l_chi3_coeffs`] (`alpha = 1`) — so the message points
/// there.
fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "alpha",
            value: alpha,
            expected: "(0, 1); endpoints are the all-ones and character families",
        })
    }
}

/// The local value at `3^k`, namely `3^{(1-alpha) k}`.
///
/// This is the one place the formula is evaluated: the direct construction,
/// the product family, and the per-prime rules all call it, so the two
/// construction paths of the product family agree bit for bit rather than
/// merely to rounding.
fn lacunary3_local(alpha: f64, k: u32) -> f64 {
    3f64.powf((1.0 - alpha) * f64::from(k))
}

/// Lacunary Euler factor supported on powers of 3: `a_{3^k} = 3^{(1-alpha)k}`,
/// all other coefficients zero.
///
/// The sequence is completely multiplicative (as data: every product `m * n`
/// lands on a power of 3 only when both factors do), and single-signed, so
/// its partial sums and absolute partial sums agree: both abscissas are
/// `1 - alpha`.
///
/// Errors with a domain error unless `0 < alpha < 1`.
pub fn lacunary3_coeffs(alpha: f64, n: usize) -> Result<CoefficientSeq> {
    check_alpha(alpha)?;
    assert!(n >= 1, "lacunary3_coeffs requires n >= 1");
    let mut values = vec![Complex64::new(0.0, 0.0); n];
    values[0] = Complex64::new(1.0, 0.0);
    let mut pow = 3usize;
    let mut k = 1u32;
    while pow <= n {
        values[pow - 1] = Complex64::new(lacunary3_local(alpha, k), 0.0);
        if pow > n / 3 {
            break;
        }
        pow *= 3;
        k += 1;
    }
    CoefficientSeq::new(values, Structure::CompletelyMultiplicative)
}

/// The prescribed-gap family: the Dirichlet product of [`lacunary3_coeffs`]
/// and [`l_chi3_coeffs`].
///
/// Because the character kills multiples of 3 and the lacunary factor lives
/// only on powers of 3, each `n = 3^k m` (with `3 ∤ m`) receives the single
/// contribution `a_n = 3^{(1-alpha)k} chi(m)`; the result is completely
/// multiplicative.  The character's cancellation keeps the simple abscissa
/// at `1 - alpha` while absolute values push the absolute abscissa to `1`,
/// so the gap between the two is `alpha`.
///
/// The complete-multiplicativity postcondition is re-verified on the data
/// before returning; a failure signals an implementation bug and surfaces
/// as a construction error rather than a silent bad tag.
pub fn gap_family_coeffs(alpha: f64, n: usize) -> Result<CoefficientSeq> {
    let lacunary = lacunary3_coeffs(alpha, n)?;
    let character = l_chi3_coeffs(n);
    let product = dirichlet_convolve(&lacunary, &character)?;
    let tagged = CoefficientSeq::new(
        product.values().to_vec(),
        Structure::CompletelyMultiplicative,
    )?;
    if !tagged.is_completely_multiplicative() {
        return Err(Error::Construction(format!(
            "gap family at alpha = {alpha}, N = {n} failed its \
             complete-multiplicativity postcondition"
        )));
    }
    Ok(tagged)
}

/// Per-prime local values of the prescribed-gap family, independent of the
/// convolution path: at `p = 3` the lacunary values `3^{(1-alpha)k}`, at
/// every other prime the exact character powers `chi(p)^k`.
///
/// Expanding these rules with [`multiplicative_expand`] reconstructs
/// [`gap_family_coeffs`]; the two routes share no indexing code, so their
/// agreement is a real cross-check and is asserted in the tests.
pub fn gap_family_local_rules(alpha: f64, n: usize) -> Result<Vec<PrimeLocalRule>> {
    check_alpha(alpha)?;
    assert!(n >= 1, "gap_family_local_rules requires n >= 1");
    let mut rules = Vec::new();
    for p in sieve_primes(n as u64) {
        let mut locals = Vec::new();
        let mut pk = p;
        let mut k = 1u32;
        while pk <= n as u64 {
            let value = if p == 3 {
                lacunary3_local(alpha, k)
            } else if p % 3 == 1 {
                1.0
            } else {
                // chi(p) = -1; its k-th power is an exact sign.
                if k.is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                }
            };
            locals.push(Complex64::new(value, 0.0));
            if pk > n as u64 / p {
                break;
            }
            pk *= p;
            k += 1;
        }
        rules.push(PrimeLocalRule::new(p, locals)?);
    }
    Ok(rules)
}

/// Expand the per-prime rules of the prescribed-gap family into a coefficient
/// sequence.  This is the independent second construction path used by the
/// cross-check tests and the acceptance suite.
pub fn gap_family_expanded(alpha: f64, n: usize) -> Result<CoefficientSeq> {
    let rules = gap_family_local_rules(alpha, n)?;
    multiplicative_expand(&rules, n)
}

/// Parameters of the random Euler product: the sign stream seed and the
/// truncation length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomModelConfig {
    pub seed: u64,
    pub n: usize,
}

impl RandomModelConfig {
    /// A config with the given seed and truncation.  Lengths below 2 are
    /// rejected at build time by [`wintner_coeffs`], not here, so the type
    /// stays a plain data carrier.
    pub fn new(seed: u64, n: usize) -> Self {
        RandomModelConfig { seed, n }
    }
}

fn check_model_length(n: usize) -> Result<()> {
    if n >= 2 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "truncation length",
            value: n as f64,
            expected: "N >= 2 (below that the model has no random content)",
        })
    }
}

/// Random Euler product `prod_p (1 + eps_p p^{-s})` truncated at `cfg.n`:
/// squarefree support with `a_n = prod_{p | n} eps_p`, signs `eps_p`
/// independent and uniform on `{+1, -1}`.
///
/// The sign of `p` is bit 0 of `mix64(seed ^ mix64(p))` — a pure function
/// of `(seed, p)`.  Consequences worth relying on:
///
/// * reruns with equal config are bitwise identical;
/// * growing `n` extends the sequence without changing earlier entries;
/// * distinct seeds give independent-looking sign patterns.
pub fn wintner_coeffs(cfg: &RandomModelConfig) -> Result<CoefficientSeq> {
    check_model_length(cfg.n)?;
    let seed = cfg.seed;
    Ok(wintner_with_signs(cfg.n, |p| {
        if mix64(seed ^ mix64(p)) & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }))
}

/// The all-minus forcing of the random product: every `eps_p = -1`, which
/// is the Möbius sequence exactly.  A separate entry point (rather than a
/// special seed) so the full pipeline — sieve, squarefree zeroing, CSV
/// export — can be checked bit for bit against [`crate::coeffs::mobius_seq`].
pub fn wintner_minus_coeffs(n: usize) -> Result<CoefficientSeq> {
    check_model_length(n)?;
    Ok(wintner_with_signs(n, |_| -1.0))
}

fn wintner_with_signs(n: usize, sign: impl Fn(u64) -> f64) -> CoefficientSeq {
    let mut values = vec![Complex64::new(1.0, 0.0); n];
    for p in sieve_primes(n as u64) {
        let s = sign(p);
        let p = p as usize;
        let mut j = p;
        while j <= n {
            values[j - 1] *= s;
            j += p;
        }
        if p <= n / p {
            let p2 = p * p;
            let mut j = p2;
            while j <= n {
                values[j - 1] = Complex64::new(0.0, 0.0);
                j += p2;
            }
        }
    }
    CoefficientSeq::new(values, Structure::Multiplicative).expect("length checked by callers")
}

// --------------------------------------------------------------------------
