//! The Bohr lift and polytorus sup-norms.
//!
//! Writing `n = prod_j p_j^{alpha_j}` over the primes `p_1 < p_2 < ...`
//! identifies a Dirichlet polynomial `sum_{n<=N} a_n n^{-s}` with the
//! ordinary polynomial `sum a_n z^{alpha(n)}` in one variable per prime up
//! to `N`.  Because the logarithms of the primes are linearly independent
//! over the rationals, the supremum of the Dirichlet polynomial along any
//! vertical line equals the supremum of the lifted polynomial over the
//! polytorus `|z_j| = 1` — which is what this module computes.
//!
//! The sup-norm itself is found by multistart cyclic coordinate ascent:
//! freezing all variables but one leaves a univariate trigonometric
//! polynomial whose coefficients can be gathered cheaply from cached term
//! values, and a scan plus golden-section refinement maximizes it.  Every
//! accepted step increases `|F|`, so the returned value is always a
//! certified *lower* bound of the true sup; the trivial upper bound
//! `sum |a_n|` is reported alongside it.  Restarts draw their starting
//! angles from per-restart streams keyed on `(seed, restart)`, which makes
//! results independent of thread count and monotone in the number of
//! restarts.
//!
//! The second half of the module serves the Euler-product side: per-prime
//! factor polynomials and their circle sups, the piecewise majorant
//! constant `C(r)`, the coefficient-majorant inequality
//! `sum |b_m| r^m <= C(r) sup |F|` for one-variable polynomials, and the
//! chain bound `sum |a_n| n^{-eps} <= (prod_{p^eps<3} (1-p^{-2eps})^{-1/2})
//! prod_p ||f_p||` for multiplicative sequences, evaluated in log space so
//! thousands of factors cannot overflow.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coeffs::{
    factorize, is_prime, sieve_primes, smallest_prime_factors, CoefficientSeq, PrimeLocalRule,
};
use crate::{mix64, Error, Result};

/// A polynomial on the polytorus, stored sparsely: one complex coefficient
/// per term and, per term, the list of `(variable, power)` pairs with
/// `power >= 1`.  Variables are indexed into `prime_basis`, which is held
/// in increasing order.
#[derive(Debug, Clone)]
pub struct LiftedPolynomial {
    prime_basis: Vec<u64>,
    coeffs: Vec<Complex64>,
    exp_offsets: Vec<u32>,
    exps: Vec<(u32, u32)>,
    source_length: usize,
}

/// A point of the polytorus, one angle per basis prime; coordinate `j`
/// stands for `z_j = exp(i * angles[j])`.  Angles are interpreted mod `2π`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusPoint {
    pub angles: Vec<f64>,
}

impl TorusPoint {
    /// The all-zero-angles point `(1, 1, ..., 1)`.
    pub fn zero(dimension: usize) -> TorusPoint {
        TorusPoint {
            angles: vec![0.0; dimension],
        }
    }
}

/// Knobs for the multistart ascent.  Defaults: 32 restarts, at most 200
/// sweeps per start, angles refined to `1e-10`, a sweep that improves the
/// value by less than `1e-12 * (1 + value)` ends the start, seed 0.
#[derive(Debug, Clone, Copy)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub coordinate_sweeps: usize,
    pub angle_tolerance: f64,
    pub value_tolerance: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            restarts: 32,
            coordinate_sweeps: 200,
            angle_tolerance: 1e-10,
            value_tolerance: 1e-12,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Domain {
                what: "restarts",
                value: 0.0,
                expected: "a positive count",
            });
        }
        if self.coordinate_sweeps == 0 {
            return Err(Error::Domain {
                what: "coordinate_sweeps",
                value: 0.0,
                expected: "a positive count",
            });
        }
        if self.angle_tolerance <= 0.0 || self.angle_tolerance.is_nan() {
            return Err(Error::Domain {
                what: "angle_tolerance",
                value: self.angle_tolerance,
                expected: "a positive real",
            });
        }
        if self.value_tolerance <= 0.0 || self.value_tolerance.is_nan() {
            return Err(Error::Domain {
                what: "value_tolerance",
                value: self.value_tolerance,
                expected: "a positive real",
            });
        }
        Ok(())
    }
}

/// Outcome of a sup-norm search: the best value found (a certified lower
/// bound of the true sup, since it is an actual evaluation), the point
/// attaining it, and the trivial upper bound `sum |coeffs|`.
#[derive(Debug, Clone)]
pub struct SupNormResult {
    pub value: f64,
    pub maximizer: TorusPoint,
    pub upper_bound: f64,
}

/// The exponent vector of `n` over `prime_basis`: `n = prod p_j^{result[j]}`.
///
/// Errors if a prime factor of `n` is missing from the basis, naming the
/// offending prime and `n`.
///
/// `alpha_index(1, basis)` is the all-zeros vector for any basis.
pub fn alpha_index(n: usize, prime_basis: &[u64]) -> Result<Vec<u32>> {
    assert!(n >= 1, "alpha_index requires n >= 1");
    let mut out = vec![0u32; prime_basis.len()];
    for (p, k) in factorize(n as u64) {
        match prime_basis.binary_search(&p) {
            Ok(j) => out[j] = k,
            Err(_) => return Err(Error::BasisCoverage { prime: p, n }),
        }
    }
    Ok(out)
}

impl LiftedPolynomial {
    /// Assemble a polynomial directly from dense multi-indices.  The basis
    /// must be strictly increasing primes; every multi-index must have one
    /// entry per basis element and appear at most once.  Zero coefficients
    /// are dropped; a polynomial with no surviving term is degenerate.
    ///
    /// Polynomials built this way have `source_length == 0`, meaning "not
    /// cut from any coefficient sequence".
    pub fn from_terms(prime_basis: &[u64], terms: &[(Vec<u32>, Complex64)]) -> Result<Self> {
        for (i, &p) in prime_basis.iter().enumerate() {
            if !is_prime(p) {
                return Err(Error::Invalid {
                    what: "prime basis",
                    detail: format!("{p} is not prime"),
                });
            }
            if i > 0 && prime_basis[i - 1] >= p {
                return Err(Error::Invalid {
                    what: "prime basis",
                    detail: format!(
                        "entries must be strictly increasing, got {} before {p}",
                        prime_basis[i - 1]
                    ),
                });
            }
        }
        let mut seen = std::collections::HashSet::new();
        let mut coeffs = Vec::new();
        let mut exp_offsets = vec![0u32];
        let mut exps: Vec<(u32, u32)> = Vec::new();
        for (index, coeff) in terms {
            if index.len() != prime_basis.len() {
                return Err(Error::Invalid {
                    what: "term multi-index",
                    detail: format!(
                        "index has {} entries, basis has {}",
                        index.len(),
                        prime_basis.len()
                    ),
                });
            }
            if !seen.insert(index.clone()) {
                return Err(Error::Invalid {
                    what: "term multi-index",
                    detail: format!("{index:?} appears twice"),
                });
            }
            if *coeff == Complex64::new(0.0, 0.0) {
                continue;
            }
            coeffs.push(*coeff);
            for (j, &k) in index.iter().enumerate() {
                if k > 0 {
                    exps.push((j as u32, k));
                }
            }
            exp_offsets.push(exps.len() as u32);
        }
        if coeffs.is_empty() {
            return Err(Error::Degenerate(
                "no nonzero terms: the zero polynomial has no meaningful sup",
            ));
        }
        Ok(LiftedPolynomial {
            prime_basis: prime_basis.to_vec(),
            coeffs,
            exp_offsets,
            exps,
            source_length: 0,
        })
    }

    /// Number of variables (basis primes).
    pub fn dimension(&self) -> usize {
        self.prime_basis.len()
    }

    /// Number of (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// The basis primes, increasing.
    pub fn prime_basis(&self) -> &[u64] {
        &self.prime_basis
    }

    /// Length of the coefficient sequence this polynomial was lifted from;
    /// `0` when it was assembled directly from terms.
    pub fn source_length(&self) -> usize {
        self.source_length
    }

    /// Term `t` as a dense `(multi-index, coefficient)` pair.
    pub fn term(&self, t: usize) -> (Vec<u32>, Complex64) {
        let mut index = vec![0u32; self.prime_basis.len()];
        for &(v, k) in self.term_exps(t) {
            index[v as usize] = k;
        }
        (index, self.coeffs[t])
    }

    /// `sum |coeffs|`, the trivial sup-norm upper bound.
    pub fn coeff_abs_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    fn term_exps(&self, t: usize) -> &[(u32, u32)] {
        &self.exps[self.exp_offsets[t] as usize..self.exp_offsets[t + 1] as usize]
    }

    fn term_phase(&self, t: usize, angles: &[f64]) -> f64 {
        self.term_exps(t)
            .iter()
            .map(|&(v, k)| f64::from(k) * angles[v as usize])
            .sum()
    }

    fn eval_angles(&self, angles: &[f64]) -> Complex64 {
        (0..self.coeffs.len())
            .map(|t| self.coeffs[t] * Complex64::cis(self.term_phase(t, angles)))
            .sum()
    }

    /// Evaluate at a torus point.  Errors if the point's dimension does not
    /// match the polynomial's.
    pub fn eval(&self, point: &TorusPoint) -> Result<Complex64> {
        if point.angles.len() != self.prime_basis.len() {
            return Err(Error::LengthMismatch {
                left: point.angles.len(),
                right: self.prime_basis.len(),
            });
        }
        Ok(self.eval_angles(&point.angles))
    }
}

/// Lift a coefficient sequence to the polytorus: one term `a_n z^{alpha(n)}`
/// per nonzero `a_n`, over the basis of *all* primes up to the truncation
/// length (variables for primes outside the support simply never occur in a
/// term).  Errors on the identically-zero sequence.
pub fn lift(a: &CoefficientSeq) -> Result<LiftedPolynomial> {
    let n = a.len();
    let prime_basis = sieve_primes(n as u64);
    let mut var_of = vec![u32::MAX; n + 1];
    for (j, &p) in prime_basis.iter().enumerate() {
        var_of[p as usize] = j as u32;
    }
    let spf = smallest_prime_factors(n);

    let mut coeffs = Vec::new();
    let mut exp_offsets = vec![0u32];
    let mut exps: Vec<(u32, u32)> = Vec::new();
    for idx in 1..=n {
        let c = a.get(idx);
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        coeffs.push(c);
        let mut m = idx;
        while m > 1 {
            let p = spf[m] as usize;
            let mut k = 0u32;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            exps.push((var_of[p], k));
        }
        // factors came out smallest-prime-first already
        exp_offsets.push(exps.len() as u32);
    }
    if coeffs.is_empty() {
        return Err(Error::Degenerate(
            "coefficient sequence is identically zero",
        ));
    }
    Ok(LiftedPolynomial {
        prime_basis,
        coeffs,
        exp_offsets,
        exps,
        source_length: n,
    })
}

// ---------------------------------------------------------------------------
// the multistart ascent

/// Per-variable view of the term list: which terms contain variable `j`,
/// at which power, and the largest power present.
struct CoordStructure {
    terms_by_var: Vec<Vec<(u32, u32)>>,
    max_power: Vec<u32>,
}

fn coord_structure(f: &LiftedPolynomial) -> CoordStructure {
    let d = f.prime_basis.len();
    let mut terms_by_var = vec![Vec::new(); d];
    let mut max_power = vec![0u32; d];
    for t in 0..f.coeffs.len() {
        for &(v, k) in f.term_exps(t) {
            terms_by_var[v as usize].push((t as u32, k));
            max_power[v as usize] = max_power[v as usize].max(k);
        }
    }
    CoordStructure {
        terms_by_var,
        max_power,
    }
}

/// `sum_k c[k] e^{i k phi}` by Horner's rule.
fn circle_eval(c: &[Complex64], phi: f64) -> Complex64 {
    let z = Complex64::cis(phi);
    let mut acc = *c.last().expect("nonempty coefficient list");
    for k in (0..c.len() - 1).rev() {
        acc = acc * z + c[k];
    }
    acc
}

/// `|sum_k c[k] e^{i k phi}|^2` by Horner's rule.
fn circle_abs_sq(c: &[Complex64], phi: f64) -> f64 {
    circle_eval(c, phi).norm_sqr()
}

/// Golden-section maximization on `[a, b]`; returns `(argmax, max)`.
/// The function is only assumed unimodal-ish on the bracket — callers seed
/// the bracket from a scan fine enough that the global max is inside.
fn golden_max(mut a: f64, mut b: f64, tol: f64, mut f: impl FnMut(f64) -> f64) -> (f64, f64) {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    const INVPHI2: f64 = 0.381_966_011_250_105_1;
    let mut h = b - a;
    let mut c = a + INVPHI2 * h;
    let mut d = a + INVPHI * h;
    let mut fc = f(c);
    let mut fd = f(d);
    while h > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            h = b - a;
            c = a + INVPHI2 * h;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            h = b - a;
            d = a + INVPHI * h;
            fd = f(d);
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// One start of cyclic coordinate ascent.  Returns the final value (an
/// honest re-evaluation at the final angles, not the incrementally tracked
/// figure) and the angles themselves.
fn ascend(
    f: &LiftedPolynomial,
    coord: &CoordStructure,
    opt: &OptimizerConfig,
    mut angles: Vec<f64>,
) -> (f64, Vec<f64>) {
    let d = f.prime_basis.len();
    let mut term_vals: Vec<Complex64> = (0..f.coeffs.len())
        .map(|t| f.coeffs[t] * Complex64::cis(f.term_phase(t, &angles)))
        .collect();
    let mut total: Complex64 = term_vals.iter().sum();
    let mut best = total.norm();

    let mut cbuf: Vec<Complex64> = Vec::new();
    let mut pow_buf: Vec<Complex64> = Vec::new();

    for _ in 0..opt.coordinate_sweeps {
        let before = best;
        // `j` strides three parallel tables and writes `angles[j]` in
        // place, so the indexed form is the honest one.
        #[allow(clippy::needless_range_loop)]
        for j in 0..d {
            let entries = &coord.terms_by_var[j];
            if entries.is_empty() {
                continue;
            }
            let kmax = coord.max_power[j] as usize;

            // Restrict F to coordinate j: gather the univariate coefficients
            // c_k = sum over terms with power k of (term value) * conj(w)^k,
            // where w is the current value of z_j, and c_0 collects the rest.
            pow_buf.clear();
            pow_buf.push(Complex64::new(1.0, 0.0));
            let w_conj = Complex64::cis(-angles[j]);
            for k in 1..=kmax {
                let prev = pow_buf[k - 1];
                pow_buf.push(prev * w_conj);
            }
            cbuf.clear();
            cbuf.resize(kmax + 1, Complex64::new(0.0, 0.0));
            let mut with_var = Complex64::new(0.0, 0.0);
            for &(t, k) in entries {
                let tv = term_vals[t as usize];
                cbuf[k as usize] += tv * pow_buf[k as usize];
                with_var += tv;
            }
            cbuf[0] = total - with_var;

            // Scan finely enough to bracket the global max of a degree-kmax
            // circle polynomial, then polish with golden section.
            let cur_sq = total.norm_sqr();
            let scan = (4 * kmax + 8).max(16);
            let mut best_phi = angles[j];
            let mut best_sq = cur_sq;
            for s in 0..scan {
                let phi = TAU * (s as f64) / (scan as f64);
                let v = circle_abs_sq(&cbuf, phi);
                if v > best_sq {
                    best_sq = v;
                    best_phi = phi;
                }
            }
            let h = TAU / scan as f64;
            let (phi, sq) = golden_max(best_phi - h, best_phi + h, opt.angle_tolerance, |p| {
                circle_abs_sq(&cbuf, p)
            });
            if sq > best_sq {
                best_sq = sq;
                best_phi = phi;
            }

            if best_sq > cur_sq {
                // Accept: rotate the affected term values and refresh the sum.
                let delta = best_phi - angles[j];
                angles[j] = best_phi.rem_euclid(TAU);
                let rot = Complex64::cis(delta);
                pow_buf.clear();
                pow_buf.push(Complex64::new(1.0, 0.0));
                for k in 1..=kmax {
                    let prev = pow_buf[k - 1];
                    pow_buf.push(prev * rot);
                }
                for &(t, k) in entries {
                    term_vals[t as usize] *= pow_buf[k as usize];
                }
                // The restriction gives the new total in O(kmax); the exact
                // sum is refreshed once per sweep to keep drift bounded.
                total = circle_eval(&cbuf, best_phi);
            }
        }
        total = term_vals.iter().sum();
        best = total.norm();
        if best - before <= opt.value_tolerance * (1.0 + best) {
            break;
        }
    }

    (f.eval_angles(&angles).norm(), angles)
}

/// Best value of `|F|` over the polytorus found by multistart coordinate
/// ascent: the all-ones point, `opt.restarts` random starts, and any warm
/// starts, each ascended to convergence, best result kept.
///
/// Deterministic for fixed `(F, opt, warm)` regardless of thread count:
/// restart `r` draws its angles from a stream keyed on `(opt.seed, r)`, and
/// the reduction over starts is performed in start order.  Increasing
/// `restarts` with the same seed can only improve the result.
pub fn sup_norm_torus(f: &LiftedPolynomial, opt: &OptimizerConfig) -> Result<SupNormResult> {
    sup_norm_torus_warm(f, opt, &[])
}

/// [`sup_norm_torus`] with extra starting points, typically maximizers
/// carried over from a smaller truncation of the same series.
pub fn sup_norm_torus_warm(
    f: &LiftedPolynomial,
    opt: &OptimizerConfig,
    warm: &[TorusPoint],
) -> Result<SupNormResult> {
    opt.validate()?;
    let d = f.prime_basis.len();
    for point in warm {
        if point.angles.len() != d {
            return Err(Error::LengthMismatch {
                left: point.angles.len(),
                right: d,
            });
        }
    }
    let coord = coord_structure(f);

    // Starts: index 0 is the all-zero point, 1..=restarts are seeded random
    // draws, then the warm points.  Seeding by restart index (not by a
    // shared sequential stream) keeps the first R starts identical whenever
    // the seed matches, which is what makes "more restarts never hurts" a
    // testable property.
    let starts: Vec<Vec<f64>> = std::iter::once(vec![0.0; d])
        .chain((1..=opt.restarts).map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(mix64(opt.seed ^ mix64(r as u64)));
            (0..d).map(|_| rng.gen_range(0.0..TAU)).collect()
        }))
        .chain(warm.iter().map(|p| p.angles.clone()))
        .collect();

    let outcomes: Vec<(f64, Vec<f64>)> = starts
        .into_par_iter()
        .map(|start| ascend(f, &coord, opt, start))
        .collect();

    let mut best = 0usize;
    for (i, outcome) in outcomes.iter().enumerate() {
        if outcome.0 > outcomes[best].0 {
            best = i;
        }
    }
    let (value, angles) = outcomes.into_iter().nth(best).expect("at least one start");
    let upper_bound = f.coeff_abs_sum();
    assert!(
        value <= upper_bound * (1.0 + 1e-9),
        "sup-norm search exceeded the triangle-inequality bound: {value} > {upper_bound}"
    );
    Ok(SupNormResult {
        value,
        maximizer: TorusPoint { angles },
        upper_bound,
    })
}

// ---------------------------------------------------------------------------
// one-variable tools: circle sups, the majorant constant, the chain bound

/// Sup of `|sum_k c[k] z^k|` over the unit circle by dense scan plus
/// golden-section polish around the best grid angle.  This is deliberately
/// a different algorithm from the multistart ascent so the two can serve as
/// oracles for each other in one dimension.
pub fn circle_sup_dense(coeffs: &[Complex64], grid_points: usize, angle_tolerance: f64) -> f64 {
    assert!(!coeffs.is_empty(), "circle_sup_dense needs coefficients");
    assert!(grid_points >= 4, "grid too coarse to bracket a maximum");
    if coeffs.len() == 1 {
        return coeffs[0].norm();
    }
    let mut best_sq = 0.0f64;
    let mut best_phi = 0.0f64;
    for s in 0..grid_points {
        let phi = TAU * (s as f64) / (grid_points as f64);
        let v = circle_abs_sq(coeffs, phi);
        if v > best_sq {
            best_sq = v;
            best_phi = phi;
        }
    }
    let h = TAU / grid_points as f64;
    let (_, sq) = golden_max(best_phi - h, best_phi + h, angle_tolerance, |p| {
        circle_abs_sq(coeffs, p)
    });
    best_sq.max(sq).sqrt()
}

/// Split a multiplicative sequence into its per-prime local data: for every
/// prime `p <= N`, the values `a_p, a_{p^2}, ...` for the powers within the
/// truncation.  The multiplicative structure is verified on the data first;
/// sequences that fail get a structure error, because local data of a
/// non-multiplicative sequence would not determine it.
pub fn per_prime_factors(a: &CoefficientSeq) -> Result<Vec<PrimeLocalRule>> {
    if !a.is_multiplicative() {
        return Err(Error::Structure(format!(
            "sequence of length {} fails the multiplicativity check; \
             per-prime factors are only meaningful for multiplicative data",
            a.len()
        )));
    }
    let n = a.len();
    sieve_primes(n as u64)
        .into_iter()
        .map(|p| {
            let mut locals = Vec::new();
            let mut pk = p as usize;
            while pk <= n {
                locals.push(a.get(pk));
                if pk > n / p as usize {
                    break;
                }
                pk *= p as usize;
            }
            PrimeLocalRule::new(p, locals)
        })
        .collect()
}

/// Sup of the Euler factor `1 + sum_k a_{p^k} z^k` over the unit circle
/// (dense 4096-point grid, golden polish to `opt.angle_tolerance`).
pub fn factor_sup_norm(rule: &PrimeLocalRule, opt: &OptimizerConfig) -> f64 {
    let mut coeffs = Vec::with_capacity(rule.local_values().len() + 1);
    coeffs.push(Complex64::new(1.0, 0.0));
    coeffs.extend_from_slice(rule.local_values());
    circle_sup_dense(&coeffs, 4096, opt.angle_tolerance)
}

/// The majorant constant
/// `C(r) = 1` for `0 <= r <= 1/3`, `1/sqrt(1-r^2)` for `1/3 < r < 1`:
/// the sharp factor in `sum |b_m| r^m <= C(r) sup_{|z|=1} |F(z)|`.
pub fn bohr_constant(r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain {
            what: "radius r",
            value: r,
            expected: "[0, 1)",
        });
    }
    if r <= 1.0 / 3.0 {
        Ok(1.0)
    } else {
        Ok(1.0 / (1.0 - r * r).sqrt())
    }
}

/// Outcome of one majorant comparison: `lhs = sum |b_m| r^m` against
/// `rhs = C(r) * sup`, with the sup found by dense grid (`2^14` points).
#[derive(Debug, Clone)]
pub struct MajorantCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub sup: f64,
    pub constant: f64,
    pub pass: bool,
}

/// Check `sum |b_m| r^m <= C(r) sup_{|z|=1} |F(z)|` for a one-variable
/// polynomial with coefficients `b_0..b_m`.  The grid sup is a lower bound
/// of the true sup, so the comparison carries a relative slack of `1e-3`;
/// a failure therefore indicates a bug, not a borderline rounding.
pub fn bohr_majorant_check(
    coeffs: &[Complex64],
    r: f64,
    opt: &OptimizerConfig,
) -> Result<MajorantCheck> {
    let constant = bohr_constant(r)?;
    if coeffs.iter().all(|c| *c == Complex64::new(0.0, 0.0)) {
        return Err(Error::Degenerate("all majorant coefficients are zero"));
    }
    let mut lhs = 0.0f64;
    let mut rk = 1.0f64;
    for c in coeffs {
        lhs += c.norm() * rk;
        rk *= r;
    }
    let sup = circle_sup_dense(coeffs, 1 << 14, opt.angle_tolerance);
    let rhs = constant * sup;
    Ok(MajorantCheck {
        lhs,
        rhs,
        sup,
        constant,
        pass: lhs <= rhs * (1.0 + 1e-3),
    })
}

/// Report of the Euler-factor chain bound at one exponent `eps`:
///
/// `sum_{n<=N} |a_n| n^{-eps}`  (lhs, truncated)
/// `<= prod_p (1 + sum_k |a_{p^k}| p^{-k eps})`  (middle, complete over p <= N)
/// `<= (prod_{p^eps<3} (1-p^{-2eps})^{-1/2}) * prod_p ||f_p||`  (rhs).
///
/// Products run over thousands of primes and are reported in log space;
/// `pass` compares lhs against the rhs with relative slack `1e-3`.
/// `range_warning` is set when even the largest sieved prime still has
/// `p^eps < 3`, i.e. the corrected set is cut off by the truncation.
#[derive(Debug, Clone)]
pub struct ChainCheck {
    pub epsilon: f64,
    pub lhs: f64,
    pub middle_log: f64,
    pub factor_sup_log: f64,
    pub correction_log: f64,
    pub corrected_primes: usize,
    pub range_warning: bool,
    pub pass: bool,
}

impl ChainCheck {
    /// `prod_p ||f_p||` as a plain number; `+inf` when it overflows `f64`
    /// (the log-space field stays finite and is the one used for `pass`).
    pub fn factor_product(&self) -> f64 {
        self.factor_sup_log.exp()
    }

    /// `prod_{p^eps<3} (1-p^{-2eps})^{-1/2}` as a plain number.
    pub fn correction_product(&self) -> f64 {
        self.correction_log.exp()
    }

    /// Log of the full right-hand side.
    pub fn rhs_log(&self) -> f64 {
        self.correction_log + self.factor_sup_log
    }
}

/// Verify the chain bound above for a multiplicative sequence at one
/// exponent.  The left side is truncated at `N` (it is monotone in `N`, so
/// the truncated check is a necessary condition of the full inequality);
/// the middle and right sides are complete over all primes `p <= N`.
pub fn euler_chain_check(
    a: &CoefficientSeq,
    epsilon: f64,
    opt: &OptimizerConfig,
) -> Result<ChainCheck> {
    if epsilon <= 0.0 || epsilon.is_nan() {
        return Err(Error::Domain {
            what: "epsilon",
            value: epsilon,
            expected: "a positive real",
        });
    }
    let rules = per_prime_factors(a)?;
    let n = a.len();

    let lhs: f64 = (1..=n)
        .map(|i| a.get(i).norm() * (i as f64).powf(-epsilon))
        .sum();

    // middle terms and factor sups, one prime at a time, in log space
    let per_prime: Vec<(f64, f64)> = rules
        .par_iter()
        .map(|rule| {
            let p = rule.prime() as f64;
            let mut local_sum = 1.0f64;
            for (k, v) in rule.local_values().iter().enumerate() {
                local_sum += v.norm() * p.powf(-epsilon * (k as f64 + 1.0));
            }
            (local_sum.ln(), factor_sup_norm(rule, opt).ln())
        })
        .collect();
    let middle_log: f64 = per_prime.iter().map(|x| x.0).sum();
    let factor_sup_log: f64 = per_prime.iter().map(|x| x.1).sum();

    let mut correction_log = 0.0f64;
    let mut corrected_primes = 0usize;
    for rule in &rules {
        let p = rule.prime() as f64;
        if p.powf(epsilon) < 3.0 {
            corrected_primes += 1;
            correction_log += -0.5 * (1.0 - p.powf(-2.0 * epsilon)).ln();
        }
    }
    let range_warning = (n as f64).powf(epsilon) < 3.0;

    let pass = lhs.ln() <= correction_log + factor_sup_log + 1.001f64.ln();
    Ok(ChainCheck {
        epsilon,
        lhs,
        middle_log,
        factor_sup_log,
        correction_log,
        corrected_primes,
        range_warning,
        pass,
    })
}

// ---------------------------------------------------------------------------
