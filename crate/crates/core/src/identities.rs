//! End-to-end checks of the summation formulas obtained from the rational
//! Newton expansion. Each `verify_*` returns a [`VerificationReport`].
//!
//! Finite identities are checked at seeded random rational points (with
//! rejection of points that hit a pole) or fully symbolically; infinite
//! ones as truncated power series in `q`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::divdiff::apply_chain;
use crate::error::{Error, Result};
use crate::families::{FamilySpec, InterpolationContext};
use crate::interp::{
    bibasic_coefficient, carlitz_coefficient, expansion_term, interpolation_var, liu_expansion_coefficient,
    newton_coefficient, rational_newton_coeffs,
};
use crate::poly::{poly_pow_signed, rat, Polynomial, Rational};
use crate::qseries::{pochhammer, pochhammer_inf, pochhammer_signed, q_binomial, HypergeometricSpec};
use crate::ratfun::RatFun;
use crate::series::TruncatedSeries;
use crate::symfun::{elementary, schur_multi, Alphabet};
use crate::var::{Family, Var};

/// Default number of random points per finite identity.
pub const DEFAULT_SAMPLES: usize = 10;
/// Default seed when none is given.
pub const DEFAULT_SEED: u64 = 20_240_601;
/// Rejected draws allowed per sample before giving up.
pub const RETRY_CAP: usize = 100;

/// Names accepted by [`verify_by_name`], sorted.
pub const IDENTITY_NAMES: [&str; 10] = [
    "andrews",
    "gasper",
    "gosper",
    "jackson",
    "lemma_main",
    "liu",
    "proposition",
    "q_vandermonde",
    "sears",
    "sylvester",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    SymbolicQ,
    RationalPoint,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::SymbolicQ => "symbolic_q",
            Mode::RationalPoint => "rational_point",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Failed,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Failed => "failed",
        })
    }
}

/// Outcome of one identity check. A failed report always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity_name: String,
    pub mode: Mode,
    pub parameters: BTreeMap<String, String>,
    pub order_or_n: i64,
    pub status: Status,
    pub witness: Option<String>,
}

impl VerificationReport {
    fn new(name: &str, mode: Mode, parameters: Params, order_or_n: usize, witness: Option<String>) -> Self {
        VerificationReport {
            identity_name: name.to_string(),
            mode,
            parameters: parameters.0,
            order_or_n: order_or_n as i64,
            status: if witness.is_some() { Status::Failed } else { Status::Verified },
            witness,
        }
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({}, n/order {})", self.identity_name, self.status, self.mode, self.order_or_n)?;
        for (k, v) in &self.parameters {
            write!(f, " {k}={v}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n  witness: {w}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Params(BTreeMap<String, String>);

impl Params {
    fn with(mut self, k: &str, v: impl ToString) -> Self {
        self.0.insert(k.to_string(), v.to_string());
        self
    }

    fn rational_or_symbolic(self, k: &str, v: Option<&Rational>) -> Self {
        match v {
            Some(r) => self.with(k, r),
            None => self.with(k, "symbolic"),
        }
    }
}

/// Seeded source of random nonzero rationals away from `±1`.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rational(&mut self) -> Rational {
        loop {
            let n: i64 = self.rng.gen_range(-12..=12);
            let d: i64 = self.rng.gen_range(1..=13);
            let r = rat(n, d);
            if !r.is_zero() && r.abs() != Rational::one() {
                return r;
            }
        }
    }

    pub fn tuple(&mut self, k: usize) -> Vec<Rational> {
        (0..k).map(|_| self.rational()).collect()
    }
}

fn is_pole(e: &Error) -> bool {
    matches!(e, Error::PoleHit { .. } | Error::DivisionByZeroSymbol { .. })
}

/// Runs `check` at `samples` seeded points with `names.len()` coordinates,
/// redrawing points that hit a pole. Returns the first witness.
fn check_points(
    seed: u64,
    samples: usize,
    names: &[&str],
    mut check: impl FnMut(&[Rational]) -> Result<Option<String>>,
) -> Result<Option<String>> {
    let mut sampler = Sampler::new(seed);
    for _ in 0..samples {
        let mut done = false;
        for _ in 0..RETRY_CAP {
            let point = sampler.tuple(names.len());
            match check(&point) {
                Ok(None) => {
                    done = true;
                    break;
                }
                Ok(Some(w)) => {
                    let at: Vec<String> = names.iter().zip(&point).map(|(n, v)| format!("{n}={v}")).collect();
                    return Ok(Some(format!("at {}: {w}", at.join(", "))));
                }
                Err(e) if is_pole(&e) => continue,
                Err(e) => return Err(e),
            }
        }
        if !done {
            return Err(Error::SamplingExhausted {
                retries: RETRY_CAP,
                reason: format!("every draw of ({}) hit a pole", names.join(", ")),
            });
        }
    }
    Ok(None)
}

fn compare(what: impl fmt::Display, lhs: &RatFun, rhs: &RatFun) -> Option<String> {
    if lhs == rhs {
        None
    } else {
        Some(format!("{what}: {lhs} != {rhs}"))
    }
}

fn cp(r: &Rational) -> Polynomial {
    Polynomial::constant(r.clone())
}

fn sp(name: &str) -> Polynomial {
    Polynomial::scalar(name)
}

fn inv_poly(p: &Polynomial) -> Result<Polynomial> {
    poly_pow_signed(p, -1).ok_or_else(|| Error::PoleHit { factor: p.to_string() })
}

fn phi(upper: Vec<Polynomial>, lower: Vec<Polynomial>, q: &Polynomial, z: Polynomial, terms: u32) -> Result<RatFun> {
    HypergeometricSpec::new(upper, lower, q.clone(), z).partial_sum(terms)
}

fn poch_ratio(num: &Polynomial, den: &Polynomial) -> Result<RatFun> {
    if den.is_zero() {
        return Err(Error::PoleHit { factor: "0".into() });
    }
    RatFun::new(num.clone(), den)
}

// ---------------------------------------------------------------------------
// q-Vandermonde

/// The two Vandermonde forms for length `n`, as (lhs, rhs) pairs:
/// `(a/c;q)_n/(a;q)_n = 2φ1[q^-n, c; a; q, aq^n/c]` and
/// `(a/c;q)_n/(a;q)_n c^n = 2φ1[q^-n, c; a; q, q]`.
pub fn vandermonde_sides(a: &Polynomial, c: &Polynomial, q: &Polynomial, n: u32) -> Result<[(RatFun, RatFun); 2]> {
    let c_inv = inv_poly(c)?;
    let q_inv_n = poly_pow_signed(q, -(n as i32)).ok_or_else(|| Error::PoleHit { factor: q.to_string() })?;
    let lhs = poch_ratio(&pochhammer(&(a * &c_inv), q, n), &pochhammer(a, q, n))?;
    let first = phi(vec![q_inv_n.clone(), c.clone()], vec![a.clone()], q, &(a * &q.pow(n)) * &c_inv, n)?;
    let second = phi(vec![q_inv_n, c.clone()], vec![a.clone()], q, q.clone(), n)?;
    let lhs2 = &lhs * &RatFun::from(c.pow(n));
    Ok([(lhs, first), (lhs2, second)])
}

/// Newton coefficients of `(x;q)_n` on the nodes `aq, aq^2, ...` against
/// `(-1)^k q^{k(k-1)/2} [n k] (aq^{k+1};q)_{n-k}`.
fn vandermonde_pipeline(n: u32) -> Result<Option<String>> {
    let (a, q) = (sp("a"), sp("q"));
    let ctx = InterpolationContext::new(
        FamilySpec::geometric(RatFun::from(&a * &q), RatFun::from(q.clone())),
        FamilySpec::zero(),
    );
    let f = RatFun::from(pochhammer(&Polynomial::var(interpolation_var()), &q, n));
    let coeffs = rational_newton_coeffs(&f, &ctx, n as usize + 1)?;
    for c in coeffs {
        let k = c.n as u32;
        let expected = if k > n {
            Polynomial::zero()
        } else {
            let sign = if k % 2 == 1 { -1 } else { 1 };
            let base = &a * &q.pow(k + 1);
            &(&Polynomial::int(sign) * &q.pow(k * k.saturating_sub(1) / 2)) * &(&q_binomial(n, k, &q)? * &pochhammer(&base, &q, n - k))
        };
        if let Some(w) = compare(format_args!("n={n}, A_{k}"), &c.value, &RatFun::from(expected)) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub fn verify_q_vandermonde(n: usize, samples: usize, seed: u64, mode: Mode) -> Result<VerificationReport> {
    let params = Params::default().with("samples", samples).with("seed", seed);
    let mut witness = None;
    for m in 0..=n as u32 {
        witness = match mode {
            Mode::SymbolicQ => {
                let sides = vandermonde_sides(&sp("a"), &sp("c"), &sp("q"), m)?;
                sides.iter().enumerate().find_map(|(i, (l, r))| compare(format_args!("n={m}, form {}", i + 1), l, r))
            }
            Mode::RationalPoint => check_points(seed ^ m as u64, samples, &["a", "c", "q"], |p| {
                let sides = vandermonde_sides(&cp(&p[0]), &cp(&p[1]), &cp(&p[2]), m)?;
                Ok(sides.iter().enumerate().find_map(|(i, (l, r))| compare(format_args!("n={m}, form {}", i + 1), l, r)))
            })?,
        };
        if witness.is_none() && m <= 4 {
            witness = vandermonde_pipeline(m)?;
        }
        if witness.is_some() {
            break;
        }
    }
    Ok(VerificationReport::new("q_vandermonde", mode, params, n, witness))
}

// ---------------------------------------------------------------------------
// Jackson, Sylvester

fn q_var() -> Var {
    Var::scalar("q")
}

fn series_witness(lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> Option<String> {
    lhs.first_difference(rhs)
        .map(|k| format!("coefficient of q^{k}: {} != {}", lhs.coeff(k), rhs.coeff(k)))
}

fn series_of(p: &Polynomial, order: usize) -> Result<TruncatedSeries> {
    TruncatedSeries::from_polynomial(p, &q_var(), order)
}

/// Both sides of Jackson's formula as series in `q` to `order`, with
/// rational `a`, `x` and rational or symbolic `beta`.
///
/// For symbolic `beta` the constant term `1 - a beta x` is not a unit, so
/// both sides are multiplied by `(a beta x; q)_∞` first.
pub fn jackson_sides(
    order: usize,
    a: &Rational,
    x: &Rational,
    beta: Option<&Rational>,
) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let q = sp("q");
    let qv = q_var();
    let b = beta.map(cp).unwrap_or_else(|| sp("beta"));
    let abx = &b * &cp(&(a * x));
    let ax = a * x;
    if ax.is_zero() {
        return Err(Error::PoleHit { factor: "a x".into() });
    }
    let q_over_ax = &q * &cp(&ax.recip());
    let symbolic = beta.is_none();
    let lhs = if symbolic {
        pochhammer_inf(&b, &qv, order)?
    } else {
        &pochhammer_inf(&b, &qv, order)? * &pochhammer_inf(&abx, &qv, order)?.inverse()?
    };
    let mut rhs = TruncatedSeries::zero(qv.clone(), order);
    let mut n = 0usize;
    while n * n.saturating_sub(1) <= order {
        let nn = n as u32;
        let mut num = &(Polynomial::one() - &b * &q.pow(2 * nn)) * &pochhammer(&q_over_ax, &q, nn);
        num = &num * &pochhammer(&b, &q, nn);
        num = &num * &(&abx.pow(nn) * &q.pow(nn * nn.saturating_sub(1)));
        let mut term = series_of(&num, order)?;
        term = &term * &series_of(&pochhammer(&q, &q, nn), order)?.inverse()?;
        if symbolic {
            let tail = pochhammer_inf(&(&abx * &q.pow(nn)), &qv, order)?;
            term = &term * &tail;
        } else {
            term = &term * &series_of(&pochhammer(&abx, &q, nn), order)?.inverse()?;
        }
        rhs = &rhs + &term;
        n += 1;
    }
    Ok((lhs, rhs))
}

pub fn verify_jackson(order: usize, a: &Rational, x: &Rational, beta: Option<&Rational>) -> Result<VerificationReport> {
    let (lhs, rhs) = jackson_sides(order, a, x, beta)?;
    let params = Params::default().with("a", a).with("x", x).rational_or_symbolic("beta", beta);
    Ok(VerificationReport::new("jackson", Mode::SymbolicQ, params, order, series_witness(&lhs, &rhs)))
}

/// Left side of Sylvester's formula as a series in `q` to `order`.
pub fn sylvester_sum(order: usize, beta: Option<&Rational>) -> Result<TruncatedSeries> {
    let q = sp("q");
    let qv = q_var();
    let b = beta.map(cp).unwrap_or_else(|| sp("beta"));
    let mut acc = TruncatedSeries::zero(qv.clone(), order);
    let mut n = 0u32;
    while (n * (3 * n + 1) / 2) as usize <= order {
        let sign = if n % 2 == 1 { -1 } else { 1 };
        let mut num = &(&Polynomial::int(sign) * &b.pow(n)) * &q.pow(n * (3 * n + 1) / 2);
        num = &num * &(Polynomial::one() - &b * &q.pow(2 * n + 1));
        let mut term = series_of(&num, order)?;
        term = &term * &series_of(&pochhammer(&q, &q, n), order)?.inverse()?;
        term = &term * &pochhammer_inf(&(&b * &q.pow(n + 1)), &qv, order)?.inverse()?;
        acc = &acc + &term;
        n += 1;
    }
    Ok(acc)
}

pub fn verify_sylvester(order: usize, beta: Option<&Rational>) -> Result<VerificationReport> {
    let lhs = sylvester_sum(order, beta)?;
    let one = TruncatedSeries::one(q_var(), order);
    let params = Params::default().rational_or_symbolic("beta", beta);
    Ok(VerificationReport::new("sylvester", Mode::SymbolicQ, params, order, series_witness(&lhs, &one)))
}

// ---------------------------------------------------------------------------
// Andrews

/// `(-βq;q)_{2N}` and
/// `sum_n (-βq;q)_{n-1} (1+βq^{2n}) β^n q^{n(3n-1)/2} [N n] (-βq^{n+N+1};q)_{N-n}`.
pub fn andrews_sides(beta: &Polynomial, q: &Polynomial, big_n: u32) -> Result<(RatFun, RatFun)> {
    let mb = -beta;
    let lhs = RatFun::from(pochhammer(&(&mb * q), q, 2 * big_n));
    let mut rhs = RatFun::zero();
    for n in 0..=big_n {
        let head = pochhammer_signed(&(&mb * q), q, n as i64 - 1)?;
        let mut p = &(Polynomial::one() + beta * &q.pow(2 * n)) * &beta.pow(n);
        p = &p * &q.pow(n * (3 * n).saturating_sub(1) / 2);
        p = &p * &q_binomial(big_n, n, q)?;
        p = &p * &pochhammer(&(&mb * &q.pow(n + big_n + 1)), q, big_n - n);
        rhs = &rhs + &(&head * &RatFun::from(p));
    }
    Ok((lhs, rhs))
}

pub fn verify_andrews(big_n: usize, mode: Mode, samples: usize, seed: u64) -> Result<VerificationReport> {
    let mut params = Params::default();
    let mut witness = None;
    for m in 0..=big_n as u32 {
        witness = match mode {
            Mode::SymbolicQ => {
                let (l, r) = andrews_sides(&sp("beta"), &sp("q"), m)?;
                compare(format_args!("N={m}"), &l, &r)
            }
            Mode::RationalPoint => check_points(seed ^ m as u64, samples, &["beta", "q"], |p| {
                let (l, r) = andrews_sides(&cp(&p[0]), &cp(&p[1]), m)?;
                Ok(compare(format_args!("N={m}"), &l, &r))
            })?,
        };
        if witness.is_some() {
            break;
        }
    }
    if mode == Mode::RationalPoint {
        params = params.with("samples", samples).with("seed", seed);
    }
    Ok(VerificationReport::new("andrews", mode, params, big_n, witness))
}

// ---------------------------------------------------------------------------
// Sears

/// `3φ2[q^-n, a, b; d, e; q, deq^n/ab]` and
/// `(e/a;q)_n/(e;q)_n 3φ2[q^-n, a, d/b; d, aq^{1-n}/e; q, q]` at a point.
pub fn sears_sides(a: &Rational, b: &Rational, d: &Rational, e: &Rational, q: &Rational, n: u32) -> Result<(RatFun, RatFun)> {
    let qp = cp(q);
    let q_inv_n = cp(&crate::poly::rat_pow(q, -(n as i32)));
    let z = cp(&(d * e * crate::poly::rat_pow(q, n as i32) / (a * b)));
    let lhs = phi(vec![q_inv_n.clone(), cp(a), cp(b)], vec![cp(d), cp(e)], &qp, z, n)?;
    let pre = poch_ratio(&pochhammer(&cp(&(e / a)), &qp, n), &pochhammer(&cp(e), &qp, n))?;
    let lower2 = cp(&(a * crate::poly::rat_pow(q, 1 - n as i32) / e));
    let rhs = &pre * &phi(vec![q_inv_n, cp(a), cp(&(d / b))], vec![cp(d), lower2], &qp, qp.clone(), n)?;
    Ok((lhs, rhs))
}

pub fn verify_sears(n: usize, samples: usize, seed: u64) -> Result<VerificationReport> {
    let mut witness = None;
    for m in 0..=n as u32 {
        witness = check_points(seed ^ m as u64, samples, &["a", "b", "d", "e", "q"], |p| {
            let (l, r) = sears_sides(&p[0], &p[1], &p[2], &p[3], &p[4], m)?;
            Ok(compare(format_args!("n={m}"), &l, &r))
        })?;
        if witness.is_some() {
            break;
        }
    }
    let params = Params::default().with("samples", samples).with("seed", seed);
    Ok(VerificationReport::new("sears", Mode::RationalPoint, params, n, witness))
}

// ---------------------------------------------------------------------------
// Lemma and proposition for (1 - ux)/(1 - vx)

fn uv() -> (RatFun, RatFun) {
    (RatFun::scalar("u"), RatFun::scalar("v"))
}

/// `(1-ux_1)/(1-vx_1) (x_1,C)_{k-1} ∂_1 ... ∂_k` computed by the
/// divided-difference engine.
pub fn lemma_main_lhs(k: usize) -> Result<RatFun> {
    let (u, v) = uv();
    let one = RatFun::one();
    let x1 = RatFun::var(Var::x(1));
    let ctx = InterpolationContext::symbolic();
    let f = (&one - &(&u * &x1)).try_div(&(&one - &(&v * &x1)))?;
    let g = &f * &ctx.pole_product(&x1, k.saturating_sub(1))?;
    apply_chain(&g, 1, k as u32, Family::X)
}

/// `(v-u) Y_{k-1}(v, C) / (v, X)_{k+1}`.
pub fn lemma_main_rhs(k: usize) -> Result<RatFun> {
    let (u, v) = uv();
    let one = RatFun::one();
    let num = (1..k as u32).fold(&v - &u, |acc, i| &acc * &(&v - &RatFun::var(Var::c(i))));
    let den = (1..=k as u32 + 1).fold(RatFun::one(), |acc, i| &acc * &(&one - &(&v * &RatFun::var(Var::x(i)))));
    num.try_div(&den)
}

/// Cross-check of the lemma through symmetric functions:
/// `(1-ux_1)(x_1,C)_{k-1} prod_{j=2}^{k+1}(1-vx_j)` expands as
/// `sum_{i,j} (-1)^i (-v)^j e_i(u,c_1..c_{k-1}) e_j(x_2..x_{k+1}) x_1^i`;
/// each `e_j(x_2..) x_1^i ∂_1...∂_k` equals `S_{1^j, i-k}(X, ..., X)`,
/// which is `(-1)^j` when `i + j = k` and 0 otherwise; the sum is
/// `(v-u) Y_{k-1}(v, C)`.
pub fn lemma_main_symfun(k: usize) -> Result<Option<String>> {
    let u = sp("u");
    let v = sp("v");
    let x = |i: u32| Polynomial::var(Var::x(i));
    let c = |i: u32| Polynomial::var(Var::c(i));
    let ku = k as u32;
    let mut letters = vec![u.clone()];
    letters.extend((1..ku).map(c));
    let uc = Alphabet::new(letters);
    let tail = Alphabet::range(Family::X, 2, ku + 1);
    let full = Alphabet::range(Family::X, 1, ku + 1);

    let mut product = Polynomial::one() - &u * &x(1);
    for i in 1..ku {
        product = &product * &(Polynomial::one() - &x(1) * &c(i));
    }
    for j in 2..=ku + 1 {
        product = &product * &(Polynomial::one() - &v * &x(j));
    }
    let mut expansion = Polynomial::zero();
    let mut reduced = Polynomial::zero();
    for i in 0..=k as i64 {
        for j in 0..=k as i64 {
            let sign = if (i + j) % 2 == 1 { -1 } else { 1 };
            let coeff = &(&Polynomial::int(sign) * &v.pow(j as u32)) * &elementary(i, &uc);
            let monomial_part = &elementary(j, &tail) * &x(1).pow(i as u32);
            expansion = &expansion + &(&coeff * &monomial_part);
            let engine = apply_chain(&RatFun::from(monomial_part), 1, ku, Family::X)?;
            let mut parts = vec![1i64; j as usize];
            parts.push(i - k as i64);
            let schur = schur_multi(&parts, &vec![full.clone(); j as usize + 1])?;
            if let Some(w) = compare(format_args!("k={k}, e_{j}(x_2..) x_1^{i} chain"), &engine, &RatFun::from(schur.clone())) {
                return Ok(Some(w));
            }
            reduced = &reduced + &(&coeff * &schur);
        }
    }
    if let Some(w) = compare(format_args!("k={k}, expansion"), &RatFun::from(product.clone()), &RatFun::from(expansion)) {
        return Ok(Some(w));
    }
    let closed = (1..ku).fold(&v - &u, |acc, i| &acc * &(&v - &c(i)));
    if let Some(w) = compare(format_args!("k={k}, reduced sum"), &RatFun::from(reduced), &RatFun::from(closed.clone())) {
        return Ok(Some(w));
    }
    let engine = apply_chain(&RatFun::from(product), 1, ku, Family::X)?;
    Ok(compare(format_args!("k={k}, chain of product"), &engine, &RatFun::from(closed)))
}

pub fn verify_lemma_main(k: usize) -> Result<VerificationReport> {
    let mut witness = None;
    for j in 1..=k {
        witness = compare(format_args!("k={j}"), &lemma_main_lhs(j)?, &lemma_main_rhs(j)?);
        if witness.is_none() && j <= 4 {
            witness = lemma_main_symfun(j)?;
        }
        if witness.is_some() {
            break;
        }
    }
    let params = Params::default().with("u", "symbolic").with("v", "symbolic");
    Ok(VerificationReport::new("lemma_main", Mode::SymbolicQ, params, k, witness))
}

pub fn verify_proposition(k: usize) -> Result<VerificationReport> {
    let (u, v) = uv();
    let one = RatFun::one();
    let x = RatFun::var(interpolation_var());
    let f = (&one - &(&u * &x)).try_div(&(&one - &(&v * &x)))?;
    let ctx = InterpolationContext::symbolic();
    let mut witness = None;
    for c in rational_newton_coeffs(&f, &ctx, k)? {
        witness = compare(format_args!("A_{}", c.n), &c.value, &bibasic_coefficient(c.n, &u, &v, &ctx)?);
        if witness.is_some() {
            break;
        }
    }
    let params = Params::default().with("u", "symbolic").with("v", "symbolic");
    Ok(VerificationReport::new("proposition", Mode::SymbolicQ, params, k, witness))
}

// ---------------------------------------------------------------------------
// Gasper, Gosper

fn rpoch(a: &Rational, q: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    let mut aq = a.clone();
    for _ in 0..n {
        acc *= Rational::one() - &aq;
        aq *= q;
    }
    acc
}

/// `(z/c; p)_k c^k = prod_j (c - z p^j)`, defined at `c = 0` too.
fn cleared_poch(c: &Rational, z: &Rational, p: &Rational, k: u32) -> Rational {
    (0..k as i32).map(|j| c - z * p.pow(j)).product()
}

fn rdiv(num: Rational, den: Rational) -> Result<Rational> {
    if den.is_zero() {
        Err(Error::PoleHit { factor: "0".into() })
    } else {
        Ok(num / den)
    }
}

/// The `k`-th term
/// `(1-ap^kq^k)/(1-a) (a;p)_k (1/b;q)_k b^k / ((q;q)_k (abp;p)_k)`
/// with symbolic `a, b, p, q`.
pub fn gasper_term(k: u32) -> Result<RatFun> {
    let (a, b, p, q) = (sp("a"), sp("b"), sp("p"), sp("q"));
    let b_inv = inv_poly(&b)?;
    let mut num = Polynomial::one() - &(&a * &p.pow(k)) * &q.pow(k);
    num = &num * &pochhammer(&a, &p, k);
    num = &num * &(&pochhammer(&b_inv, &q, k) * &b.pow(k));
    let abp = &(&a * &b) * &p;
    let mut den = vec![Polynomial::one() - a];
    for j in 0..k {
        den.push(Polynomial::one() - &q * &q.pow(j));
        den.push(Polynomial::one() - &abp * &p.pow(j));
    }
    RatFun::from_parts(num, den.into_iter().map(|d| (d, 1)))
}

/// The `k`-th term of `(1 - v x_1)/(1 - v x)` expanded on nodes
/// `X = {q^{i-1}}`, poles `C = {a p^i}`, taken at `v = 1`, `x = b`.
pub fn gasper_expansion_term(k: usize) -> Result<RatFun> {
    let ctx = InterpolationContext::gasper();
    let v = RatFun::scalar("v");
    let one = RatFun::one();
    let coeff = &bibasic_coefficient(k, &RatFun::zero(), &v, &ctx)? * &(&one - &(&v * &ctx.x(1)?));
    let mut at_v = BTreeMap::new();
    at_v.insert(Var::scalar("v"), one);
    let mut at_x = BTreeMap::new();
    at_x.insert(interpolation_var(), RatFun::scalar("b"));
    Ok(&coeff.substitute(&at_v)? * &expansion_term(k, &ctx)?.substitute(&at_x)?)
}

/// Exact partial sums `S_0, ..., S_kmax` of Gasper's series.
pub fn gasper_partial_sums(p: &Rational, q: &Rational, a: &Rational, b: &Rational, k_max: u32) -> Result<Vec<Rational>> {
    let one = Rational::one();
    let mut acc = Rational::zero();
    let mut out = Vec::new();
    for k in 0..=k_max {
        let num = (&one - a * p.pow(k as i32) * q.pow(k as i32)) * rpoch(a, p, k) * rpoch(&b.recip(), q, k) * b.pow(k as i32);
        let den = (&one - a) * rpoch(q, q, k) * rpoch(&(a * b * p), p, k);
        acc += rdiv(num, den)?;
        out.push(acc.clone());
    }
    Ok(out)
}

/// Structural per-term check for `k <= k_max`, then `|S_k|` strictly
/// decreasing for `k >= 1` and `|S_kmax| < |S_ceil(kmax/2)|`.
pub fn verify_gasper(k_max: usize, p: &Rational, q: &Rational, a: &Rational, b: &Rational) -> Result<VerificationReport> {
    let mut witness = None;
    for k in 0..=k_max {
        witness = compare(format_args!("term {k}"), &gasper_expansion_term(k)?, &gasper_term(k as u32)?);
        if witness.is_some() {
            break;
        }
    }
    let sums = gasper_partial_sums(p, q, a, b, k_max as u32)?;
    if witness.is_none() {
        let abs: Vec<Rational> = sums.iter().map(|s| s.abs()).collect();
        if let Some(k) = (2..abs.len()).find(|&k| abs[k] >= abs[k - 1]) {
            witness = Some(format!("|S_{k}| = {} is not below |S_{}| = {}", abs[k], k - 1, abs[k - 1]));
        } else if k_max >= 1 && abs[k_max] >= abs[k_max.div_ceil(2)] {
            witness = Some(format!("|S_{k_max}| = {} is not below |S_{}|", abs[k_max], k_max.div_ceil(2)));
        }
    }
    let last = sums.last().cloned().unwrap_or_default();
    let params = Params::default()
        .with("p", p)
        .with("q", q)
        .with("a", a)
        .with("b", b)
        .with("last_partial_sum", last)
        .with("evidence", "per-term match with the bibasic expansion; partial sums shrinking in magnitude");
    Ok(VerificationReport::new("gasper", Mode::SymbolicQ, params, k_max, witness))
}

/// `(1-ap^kq^k)/(1-a) (a;p)_k (c;q)_k c^{-k} / ((q;q)_k (ap/c;p)_k)` summed
/// over `k <= n`, and its closed form.
pub fn gosper_first_form(p: &Rational, q: &Rational, a: &Rational, c: &Rational, n: u32) -> Result<(Rational, Rational)> {
    let one = Rational::one();
    let apc = a * p / c;
    let mut lhs = Rational::zero();
    for k in 0..=n {
        let num = (&one - a * p.pow(k as i32) * q.pow(k as i32)) * rpoch(a, p, k) * rpoch(c, q, k) * c.pow(-(k as i32));
        lhs += rdiv(num, (&one - a) * rpoch(q, q, k) * rpoch(&apc, p, k))?;
    }
    let rhs = rdiv(rpoch(&(a * p), p, n) * rpoch(&(c * q), q, n) * c.pow(-(n as i32)), rpoch(q, q, n) * rpoch(&apc, p, n))?;
    Ok((lhs, rhs))
}

/// The terms of the second form, each
/// `(1-ap^{n-k}q^{n-k}) (q^{n-k+1};q)_k (ap^{n-k+1}/c;p)_k c^k / ((cq^{n-k};q)_{k+1} (ap^{n-k};p)_{k+1})`.
pub fn gosper_second_terms(p: &Rational, q: &Rational, a: &Rational, c: &Rational, n: u32) -> Result<Vec<Rational>> {
    let one = Rational::one();
    (0..=n)
        .map(|k| {
            let m = (n - k) as i32;
            let num = (&one - a * p.pow(m) * q.pow(m))
                * rpoch(&q.pow(m + 1), q, k)
                * cleared_poch(c, &(a * p.pow(m + 1)), p, k);
            rdiv(num, rpoch(&(c * q.pow(m)), q, k + 1) * rpoch(&(a * p.pow(m)), p, k + 1))
        })
        .collect()
}

/// Terms `0..=n+1` of the expansion of `(1-ux)/(1-vx)` with nodes
/// `p^{i-1-n}/a`, poles `q^{i-n}`, `u = q^{-n}`, `v = 1`, at `x = 1/c`.
pub fn gosper_expansion_terms(p: &Rational, q: &Rational, a: &Rational, c: &Rational, n: u32) -> Result<Vec<Rational>> {
    let ni = n as i32;
    let ctx = InterpolationContext::new(
        FamilySpec::geometric(RatFun::constant(p.pow(-ni) / a), RatFun::constant(p.clone())),
        FamilySpec::geometric(RatFun::constant(q.pow(1 - ni)), RatFun::constant(q.clone())),
    );
    let u = RatFun::constant(q.pow(-ni));
    let v = RatFun::one();
    let mut at = BTreeMap::new();
    at.insert(interpolation_var(), RatFun::constant(c.recip()));
    (0..=n as usize + 1)
        .map(|k| {
            let term = &bibasic_coefficient(k, &u, &v, &ctx)? * &expansion_term(k, &ctx)?.substitute(&at)?;
            term.as_constant().ok_or_else(|| Error::InvalidArgument(format!("non-constant term {term}")))
        })
        .collect()
}

fn gosper_point(p: &Rational, q: &Rational, a: &Rational, c: &Rational, n: u32) -> Result<Option<String>> {
    let one = Rational::one();
    let target = rdiv(one.clone(), &one - c)?;
    let (l1, r1) = gosper_first_form(p, q, a, c, n)?;
    if l1 != r1 {
        return Ok(Some(format!("n={n}, first form: {l1} != {r1}")));
    }
    let second = gosper_second_terms(p, q, a, c, n)?;
    let l2: Rational = second.iter().sum();
    if l2 != target {
        return Ok(Some(format!("n={n}, second form: {l2} != {target}")));
    }
    // Term k of the expansion equals term k of the second form times
    // (1-c) f(1/c), f = (1 - q^{-n}/c)/(1 - 1/c); terms past n vanish.
    let u = q.pow(-(n as i32));
    let f = rdiv(&one - &u / c, &one - c.recip())?;
    let expansion = gosper_expansion_terms(p, q, a, c, n)?;
    for (k, t) in expansion.iter().enumerate() {
        let expected = if k as u32 <= n {
            &second[k] * (&one - c) * &f
        } else {
            Rational::zero()
        };
        if *t != expected {
            return Ok(Some(format!("n={n}, expansion term {k}: {t} != {expected}")));
        }
    }
    Ok(None)
}

pub fn verify_gosper(n: usize, samples: usize, seed: u64) -> Result<VerificationReport> {
    let mut witness = None;
    for m in 0..=n as u32 {
        witness = check_points(seed ^ m as u64, samples, &["p", "q", "a", "c"], |pt| {
            gosper_point(&pt[0], &pt[1], &pt[2], &pt[3], m)
        })?;
        if witness.is_some() {
            break;
        }
    }
    let params = Params::default().with("samples", samples).with("seed", seed);
    Ok(VerificationReport::new("gosper", Mode::RationalPoint, params, n, witness))
}

// ---------------------------------------------------------------------------
// Liu, Carlitz

/// The test functions `1, x, x^2, 1/(1-bx)`.
pub fn liu_test_functions(b: &Rational) -> Vec<RatFun> {
    let one = RatFun::one();
    let x = RatFun::var(interpolation_var());
    let bx = &RatFun::constant(b.clone()) * &x;
    vec![one.clone(), x.clone(), &x * &x, &one / &(&one - &bx)]
}

pub fn verify_liu(n_max: usize, b: &Rational) -> Result<VerificationReport> {
    let ctx = InterpolationContext::liu();
    let mut a0 = BTreeMap::new();
    a0.insert(Var::scalar("a"), RatFun::zero());
    let mut witness = None;
    'outer: for f in liu_test_functions(b) {
        for n in 0..=n_max {
            let theorem = newton_coefficient(&f, &ctx, n)?;
            witness = compare(format_args!("f={f}, n={n}"), &theorem, &liu_expansion_coefficient(n, &f)?);
            if witness.is_none() {
                let limit = theorem.substitute(&a0)?;
                witness = compare(format_args!("f={f}, n={n}, a=0"), &limit, &carlitz_coefficient(n, &f)?);
            }
            if witness.is_some() {
                break 'outer;
            }
        }
    }
    let params = Params::default().with("b", b);
    Ok(VerificationReport::new("liu", Mode::SymbolicQ, params, n_max, witness))
}

// ---------------------------------------------------------------------------
// Dispatch

/// Options for [`verify_by_name`]; `None` selects the identity's default.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub n: Option<usize>,
    pub order: Option<usize>,
    pub beta: Option<Rational>,
    pub samples: usize,
    pub seed: u64,
    pub mode: Option<Mode>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { n: None, order: None, beta: None, samples: DEFAULT_SAMPLES, seed: DEFAULT_SEED, mode: None }
    }
}

pub fn verify_by_name(name: &str, opts: &VerifyOptions) -> Result<VerificationReport> {
    let n = |d: usize| opts.n.unwrap_or(d);
    let order = |d: usize| opts.order.or(opts.n).unwrap_or(d);
    let symbolic_beta = opts.mode == Some(Mode::SymbolicQ);
    match name {
        "q_vandermonde" => verify_q_vandermonde(n(8), opts.samples, opts.seed, opts.mode.unwrap_or(Mode::RationalPoint)),
        "jackson" => {
            let beta = if symbolic_beta { None } else { Some(opts.beta.clone().unwrap_or(rat(1, 5))) };
            verify_jackson(order(12), &rat(1, 2), &rat(1, 3), beta.as_ref())
        }
        "sylvester" => verify_sylvester(order(15), opts.beta.as_ref()),
        "andrews" => verify_andrews(n(3), opts.mode.unwrap_or(Mode::SymbolicQ), opts.samples, opts.seed),
        "sears" => verify_sears(n(5), opts.samples, opts.seed),
        "lemma_main" => verify_lemma_main(n(5)),
        "proposition" => verify_proposition(n(5)),
        "gasper" => verify_gasper(n(6), &rat(1, 3), &rat(1, 2), &rat(1, 5), &rat(1, 7)),
        "gosper" => verify_gosper(n(6), opts.samples, opts.seed),
        "liu" => verify_liu(n(3), opts.beta.as_ref().unwrap_or(&rat(1, 3))),
        other => Err(Error::InvalidArgument(format!(
            "unknown identity {other}; expected one of {}",
            IDENTITY_NAMES.join(", ")
        ))),
    }
}

/// Every identity with default parameters, sorted by name.
pub fn verify_all(samples: usize, seed: u64) -> Result<Vec<VerificationReport>> {
    let opts = VerifyOptions { samples, seed, ..VerifyOptions::default() };
    let mut out: Vec<VerificationReport> =
        IDENTITY_NAMES.iter().map(|n| verify_by_name(n, &opts)).collect::<Result<_>>()?;
    out.sort_by(|a, b| a.identity_name.cmp(&b.identity_name));
    Ok(out)
}
