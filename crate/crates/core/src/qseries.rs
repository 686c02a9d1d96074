//! q-Pochhammer symbols, Gaussian binomials, truncated infinite products
//! and terminating basic hypergeometric sums.

use crate::error::{Error, Result};
use crate::poly::{poly_pow_signed, Polynomial};
use crate::ratfun::RatFun;
use crate::series::TruncatedSeries;
use crate::var::{Monomial, Var};

/// `(a; q)_n = prod_{j=0}^{n-1} (1 - a q^j)`.
pub fn pochhammer(a: &Polynomial, q: &Polynomial, n: u32) -> Polynomial {
    let mut acc = Polynomial::one();
    let mut aqj = a.clone();
    for j in 0..n {
        acc = &acc * &(Polynomial::one() - aqj.clone());
        if j + 1 < n {
            aqj = &aqj * q;
        }
    }
    acc
}

/// `(a; q)_n` for any integer `n`, with `(a; q)_{-m} = 1 / (a q^{-m}; q)_m`.
/// Negative lengths need `q` to be a single invertible term.
pub fn pochhammer_signed(a: &Polynomial, q: &Polynomial, n: i64) -> Result<RatFun> {
    if n >= 0 {
        return Ok(RatFun::from(pochhammer(a, q, n as u32)));
    }
    let m = (-n) as u32;
    let q_inv_m = poly_pow_signed(q, -(m as i32)).ok_or_else(|| {
        Error::InvalidArgument(format!("(a;q)_{n} needs an invertible q, got {q}"))
    })?;
    let den = pochhammer(&(a * &q_inv_m), q, m);
    RatFun::new(Polynomial::one(), &den)
}

/// `(a_1, ..., a_m; q)_n`.
pub fn multi_pochhammer(params: &[Polynomial], q: &Polynomial, n: u32) -> Polynomial {
    params
        .iter()
        .fold(Polynomial::one(), |acc, a| &acc * &pochhammer(a, q, n))
}

/// `(a; q)_∞` truncated at `q^order`. The base must not contain negative
/// powers of `q`; factor `j` then only affects orders `>= j`, so factors
/// `j > order` are omitted.
pub fn pochhammer_inf(a: &Polynomial, q: &Var, order: usize) -> Result<TruncatedSeries> {
    if let Some((lo, _)) = a.degree_range(q) {
        if lo < 0 {
            return Err(Error::TruncationUnreachable { base: a.to_string(), order });
        }
    }
    let base = TruncatedSeries::from_polynomial(a, q, order)?;
    let one = TruncatedSeries::one(q.clone(), order);
    let mut acc = one.clone();
    for j in 0..=order {
        let factor = &one - &base.shift(j);
        acc = &acc * &factor;
    }
    Ok(acc)
}

/// Gaussian binomial `[n k]_q` by the q-Pascal rule
/// `[n k] = [n-1 k-1] + q^k [n-1 k]`.
pub fn q_binomial(n: u32, k: u32, q: &Polynomial) -> Result<Polynomial> {
    if k > n {
        return Err(Error::IndexOutOfRange { index: k as usize, len: n as usize });
    }
    let mut row = vec![Polynomial::one()];
    for m in 1..=n {
        let mut next = vec![Polynomial::one(); m as usize + 1];
        for j in 1..m as usize {
            next[j] = &row[j - 1] + &(&q.pow(j as u32) * &row[j]);
        }
        row = next;
    }
    Ok(row[k as usize].clone())
}

/// Parameters of `_r φ_s [a_1..a_r; b_1..b_s; q, z]`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergeometricSpec {
    pub upper: Vec<Polynomial>,
    pub lower: Vec<Polynomial>,
    pub q: Polynomial,
    pub z: Polynomial,
}

impl HypergeometricSpec {
    pub fn new(upper: Vec<Polynomial>, lower: Vec<Polynomial>, q: Polynomial, z: Polynomial) -> Self {
        HypergeometricSpec { upper, lower, q, z }
    }

    /// The `n`-th term
    /// `(a;q)_n / (q, b; q)_n * [(-1)^n q^{n(n-1)/2}]^{1+s-r} * z^n`.
    pub fn term(&self, n: u32) -> Result<RatFun> {
        let r = self.upper.len() as i64;
        let s = self.lower.len() as i64;
        let mut num = multi_pochhammer(&self.upper, &self.q, n);
        num = &num * &self.z.pow(n);
        let excess = 1 + s - r;
        let mut tail = RatFun::one();
        if excess != 0 {
            let half = (n as i64) * (n as i64 - 1) / 2;
            let sign = if n % 2 == 1 { -1 } else { 1 };
            let factor = Polynomial::int(sign) * self.q.pow(half as u32);
            let powered = if excess > 0 {
                RatFun::from(factor.pow(excess as u32))
            } else {
                RatFun::from(factor).pow(excess as i32)?
            };
            tail = powered;
        }
        let mut factors: Vec<(Polynomial, u32)> = Vec::new();
        let mut lower = vec![self.q.clone()];
        lower.extend(self.lower.iter().cloned());
        for b in &lower {
            let mut bqj = b.clone();
            for _ in 0..n {
                let f = Polynomial::one() - bqj.clone();
                if f.is_zero() {
                    return Err(Error::PoleHit { factor: format!("1 - ({bqj})") });
                }
                factors.push((f, 1));
                bqj = &bqj * &self.q;
            }
        }
        Ok(&RatFun::from_parts(num, factors)? * &tail)
    }

    /// Exact sum of the terms `0..=last`.
    pub fn partial_sum(&self, last: u32) -> Result<RatFun> {
        let mut acc = RatFun::zero();
        for n in 0..=last {
            acc = &acc + &self.term(n)?;
        }
        Ok(acc)
    }
}

/// Sum of the first `terms + 1` terms of `_r φ_s`.
pub fn basic_hypergeometric(spec: &HypergeometricSpec, terms: u32) -> Result<RatFun> {
    spec.partial_sum(terms)
}

/// `q^k` as a polynomial, for possibly negative `k`.
pub fn q_power(q: &Var, k: i32) -> Polynomial {
    Polynomial::term(Monomial::var_pow(q.clone(), k), num_traits::One::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn q() -> Polynomial {
        Polynomial::scalar("q")
    }

    fn a() -> Polynomial {
        Polynomial::scalar("a")
    }

    #[test]
    fn pochhammer_basics() {
        assert!(pochhammer(&a(), &q(), 0).is_one());
        assert_eq!(pochhammer(&a(), &q(), 2), (Polynomial::one() - a()) * (Polynomial::one() - a() * q()));
        let qinv = q_power(&Var::scalar("q"), -1);
        assert_eq!(pochhammer(&qinv, &q(), 1), Polynomial::one() - qinv.clone());
    }

    #[test]
    fn negative_length() {
        // (a;q)_{-1} = 1/(1 - a/q)
        let r = pochhammer_signed(&a(), &q(), -1).unwrap();
        let qinv = q_power(&Var::scalar("q"), -1);
        assert_eq!(r, RatFun::one() / RatFun::from(Polynomial::one() - a() * qinv));
        // (a;q)_{-1} (a/q;q)_1 = 1
        let back = &r * &RatFun::from(pochhammer(&(a() * q_power(&Var::scalar("q"), -1)), &q(), 1));
        assert!(back.is_one());
    }

    #[test]
    fn infinite_product_truncation() {
        let qv = Var::scalar("q");
        let beta = Polynomial::scalar("beta");
        let s = pochhammer_inf(&(&beta * &q()), &qv, 2).unwrap();
        // (1 - βq)(1 - βq²) = 1 - βq - βq² + O(q³)
        assert!(s.coeff(0).is_one());
        assert_eq!(s.coeff(1), &(-&beta));
        assert_eq!(s.coeff(2), &(-&beta));
        assert_eq!(pochhammer_inf(&Polynomial::zero(), &qv, 5).unwrap(), TruncatedSeries::one(qv.clone(), 5));
    }

    #[test]
    fn infinite_product_round_trip() {
        let qv = Var::scalar("q");
        let b = Polynomial::constant(rat(2, 7));
        let s = pochhammer_inf(&b, &qv, 8).unwrap();
        let prod = &s * &s.inverse().unwrap();
        assert_eq!(prod, TruncatedSeries::one(qv, 8));
    }

    #[test]
    fn negative_q_power_base_rejected() {
        let qv = Var::scalar("q");
        assert!(matches!(
            pochhammer_inf(&q_power(&qv, -1), &qv, 3),
            Err(Error::TruncationUnreachable { .. })
        ));
    }

    #[test]
    fn q_binomial_small() {
        assert!(q_binomial(5, 0, &q()).unwrap().is_one());
        assert_eq!(q_binomial(2, 1, &q()).unwrap(), Polynomial::one() + q());
        let expected = Polynomial::one() + q() + Polynomial::int(2) * q().pow(2) + q().pow(3) + q().pow(4);
        assert_eq!(q_binomial(4, 2, &q()).unwrap(), expected);
        assert!(q_binomial(2, 3, &q()).is_err());
    }

    #[test]
    fn first_term_is_one() {
        let spec = HypergeometricSpec::new(vec![a()], vec![Polynomial::scalar("b")], q(), Polynomial::scalar("z"));
        assert!(basic_hypergeometric(&spec, 0).unwrap().is_one());
    }

    #[test]
    fn vandermonde_two_terms() {
        // 2φ1[q^-1, c; a; q, aq/c] = (a/c;q)_1/(a;q)_1 at a=1/3, c=1/5, q=1/2
        let (av, cv, qv) = (rat(1, 3), rat(1, 5), rat(1, 2));
        let c = |r: &crate::poly::Rational| Polynomial::constant(r.clone());
        let spec = HypergeometricSpec::new(
            vec![c(&qv.recip()), c(&cv)],
            vec![c(&av)],
            c(&qv),
            c(&(&av * &qv / &cv)),
        );
        let lhs = basic_hypergeometric(&spec, 1).unwrap().as_constant().unwrap();
        let one = crate::poly::int(1);
        // brute force
        let t1 = (&one - qv.recip()) * (&one - &cv) / ((&one - &qv) * (&one - &av)) * (&av * &qv / &cv);
        assert_eq!(lhs, &one + &t1);
        assert_eq!(lhs, (&one - &av / &cv) / (&one - &av));
    }

    #[test]
    fn lower_pole_detected() {
        let spec = HypergeometricSpec::new(vec![a()], vec![Polynomial::one()], q(), q());
        assert!(matches!(basic_hypergeometric(&spec, 1), Err(Error::PoleHit { .. })));
    }
}
