//! Sparse Laurent polynomials over exact rationals.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::var::{Monomial, Var};

pub type Rational = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact power with a possibly negative exponent. Panics on `0^(-k)`.
pub fn rat_pow(r: &Rational, e: i32) -> Rational {
    num_traits::pow::Pow::pow(r, e)
}

/// A Laurent polynomial: a finite map from monomials to nonzero rationals.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Polynomial {
        Polynomial::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Polynomial {
        Polynomial::constant(int(n))
    }

    pub fn var(v: Var) -> Polynomial {
        Polynomial::term(Monomial::var(v), Rational::one())
    }

    pub fn scalar(name: &str) -> Polynomial {
        Polynomial::var(Var::scalar(name))
    }

    pub fn term(m: Monomial, c: Rational) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, Rational)>) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// The value if this polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn as_single_term(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_scaled(&mut self, other: &Polynomial, factor: &Rational, shift: &Monomial) {
        for (m, c) in &other.terms {
            self.add_term(m.mul(shift), c * factor);
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.exponents().iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        self.terms.keys().any(|m| m.contains(v))
    }

    /// `(min, max)` exponent of `v` over all terms; `None` for zero.
    pub fn degree_range(&self, v: &Var) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m.exponent(v));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Total-degree range over all terms.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// The monomial content: exponentwise minimum over all terms.
    pub fn monomial_content(&self) -> Monomial {
        if self.terms.is_empty() {
            return Monomial::one();
        }
        Monomial::from_pairs(self.vars().into_iter().filter_map(|v| {
            let lo = self.terms.keys().map(|m| m.exponent(&v)).min().unwrap();
            (lo != 0).then_some((v, lo))
        }))
    }

    /// Splits `self = m * p'` where `p'` has no monomial content.
    pub fn strip_content(&self) -> (Monomial, Polynomial) {
        let m = self.monomial_content();
        if m.is_one() {
            return (m, self.clone());
        }
        let inv = m.inv();
        (m, self.mul_monomial(&inv))
    }

    /// Exact quotient `self / d` in the Laurent polynomial ring.
    pub fn div_exact(&self, d: &Polynomial) -> Result<Polynomial> {
        self.try_div_exact(d).ok_or_else(|| Error::NonExactDivision {
            dividend: self.to_string(),
            divisor: d.to_string(),
        })
    }

    /// Like [`Polynomial::div_exact`] but returns `None` on a nonzero remainder.
    pub fn try_div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        if let Some((m, c)) = d.as_single_term() {
            let c_inv = c.recip();
            return Some(self.mul_monomial(&m.inv()).scale(&c_inv));
        }
        let (md, d0) = d.strip_content();
        let (mp, p0) = self.strip_content();
        // Cheap rejection: every variable of the divisor must occur in the
        // dividend with at least the divisor's degree.
        for v in d0.vars() {
            let (_, dh) = d0.degree_range(&v).unwrap();
            match p0.degree_range(&v) {
                Some((_, ph)) if ph >= dh => {}
                _ => return None,
            }
        }
        let (dl_m, dl_c) = d0.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let dl_c_inv = dl_c.recip();
        let mut rem = p0;
        let mut quot = Polynomial::zero();
        while let Some((lm, lc)) = rem.leading_term() {
            let tm = lm.div(&dl_m);
            if !tm.is_polynomial() && !tm.is_one() {
                return None;
            }
            let tc = lc * &dl_c_inv;
            let neg = -tc.clone();
            rem.add_scaled(&d0, &neg, &tm);
            quot.add_term(tm, tc);
        }
        Some(quot.mul_monomial(&mp.div(&md)))
    }

    /// Renames variables; `f` must be injective on the variables present.
    pub fn rename(&self, f: impl Fn(&Var) -> Var) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.rename(&f), c.clone())))
    }

    /// Substitutes rational values for some variables.
    pub fn subst_values(&self, values: &BTreeMap<Var, Rational>) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = Vec::new();
            for (v, e) in m.exponents() {
                match values.get(v) {
                    Some(val) => {
                        if val.is_zero() {
                            if *e < 0 {
                                return Err(Error::DivisionByZeroSymbol { var: v.to_string() });
                            }
                            coef = Rational::zero();
                        } else {
                            coef *= rat_pow(val, *e);
                        }
                    }
                    None => rest.push((v.clone(), *e)),
                }
            }
            out.add_term(Monomial::from_pairs(rest), coef);
        }
        Ok(out)
    }

    /// Exact evaluation; every variable must be bound.
    pub fn eval(&self, values: &BTreeMap<Var, Rational>) -> Result<Rational> {
        let reduced = self.subst_values(values)?;
        if let Some(c) = reduced.as_constant() {
            return Ok(c);
        }
        let missing = reduced.vars().into_iter().next().unwrap();
        Err(Error::MissingBinding { var: missing.to_string() })
    }

    /// Substitutes polynomial values for variables. A variable occurring with
    /// a negative exponent must be bound to a single nonzero term.
    pub fn subst_polys(&self, binding: &BTreeMap<Var, Polynomial>) -> Result<Polynomial> {
        let mut cache: BTreeMap<(Var, i32), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut rest = Vec::new();
            let mut acc = Polynomial::one();
            for (v, e) in m.exponents() {
                let Some(val) = binding.get(v) else {
                    rest.push((v.clone(), *e));
                    continue;
                };
                let key = (v.clone(), *e);
                if !cache.contains_key(&key) {
                    let pw = poly_pow_signed(val, *e).ok_or_else(|| {
                        if val.is_zero() {
                            Error::DivisionByZeroSymbol { var: v.to_string() }
                        } else {
                            Error::InvalidArgument(format!(
                                "cannot invert {val} for negative power of {v}"
                            ))
                        }
                    })?;
                    cache.insert(key.clone(), pw);
                }
                acc = &acc * &cache[&key];
            }
            let shift = Monomial::from_pairs(rest);
            for (m2, c2) in acc.terms {
                out.add_term(m2.mul(&shift), c2 * c);
            }
        }
        Ok(out)
    }

    /// Coefficients of the powers of `v`: `self = sum_k coeff_k * v^k`.
    pub fn coefficients_in(&self, v: &Var) -> BTreeMap<i32, Polynomial> {
        let mut out: BTreeMap<i32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }
}

/// `p^e` for signed `e`; `None` if `e < 0` and `p` is not a single nonzero term.
pub fn poly_pow_signed(p: &Polynomial, e: i32) -> Option<Polynomial> {
    if e >= 0 {
        return Some(p.pow(e as u32));
    }
    let (m, c) = p.as_single_term()?;
    let inv = Polynomial::term(m.inv(), c.recip());
    Some(inv.pow((-e) as u32))
}

impl From<Var> for Polynomial {
    fn from(v: Var) -> Self {
        Polynomial::var(v)
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<i64> for Polynomial {
    fn from(n: i64) -> Self {
        Polynomial::int(n)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> Polynomial {
        Polynomial::var(Var::x(i))
    }

    fn b(i: u32) -> Polynomial {
        Polynomial::var(Var::b(i))
    }

    #[test]
    fn add_inverse_is_zero() {
        assert!((x(1) + (-x(1))).is_zero());
    }

    #[test]
    fn product_of_linear_factors() {
        let xx = Polynomial::scalar("x");
        let y2 = (&xx - &x(1)) * (&xx - &x(2));
        let expected = &(&xx * &xx - &xx * &(x(1) + x(2))) + &(x(1) * x(2));
        assert_eq!(y2, expected);
    }

    #[test]
    fn difference_of_squares_divides() {
        let p = b(1).pow(2) - b(2).pow(2);
        assert_eq!(p.div_exact(&(b(1) - b(2))).unwrap(), b(1) + b(2));
    }

    #[test]
    fn newton_factor_removal() {
        let xx = Polynomial::scalar("x");
        let y3 = (&xx - &x(1)) * (&xx - &x(2)) * (&xx - &x(3));
        let q = y3.div_exact(&(&xx - &x(2))).unwrap();
        assert_eq!(q, (&xx - &x(1)) * (&xx - &x(3)));
    }

    #[test]
    fn non_exact_division_errors() {
        let p = b(1).pow(2) + b(2);
        assert!(matches!(
            p.div_exact(&(b(1) - b(2))),
            Err(Error::NonExactDivision { .. })
        ));
    }

    #[test]
    fn laurent_division() {
        let q = Polynomial::scalar("q");
        let qi = poly_pow_signed(&q, -1).unwrap();
        // (q^-1 - q) / (1 - q) = q^-1 (1 + q)
        let p = &qi - &q;
        let d = Polynomial::one() - q.clone();
        assert_eq!(p.div_exact(&d).unwrap(), &qi * &(Polynomial::one() + q));
    }

    #[test]
    fn content_strip() {
        let q = Var::scalar("q");
        let p = Polynomial::from_terms([
            (Monomial::from_pairs([(q.clone(), 2), (Var::x(1), 1)]), int(1)),
            (Monomial::from_pairs([(q.clone(), -1)]), int(3)),
        ]);
        let (m, rest) = p.strip_content();
        assert_eq!(m, Monomial::var_pow(q.clone(), -1));
        assert_eq!(rest.degree_range(&q), Some((0, 3)));
    }

    #[test]
    fn eval_and_subst() {
        let mut vals = BTreeMap::new();
        vals.insert(Var::x(1), rat(1, 2));
        let p = x(1) * x(1) + x(2);
        let r = p.subst_values(&vals).unwrap();
        assert_eq!(r, Polynomial::constant(rat(1, 4)) + x(2));
        assert!(matches!(p.eval(&vals), Err(Error::MissingBinding { .. })));
    }

    #[test]
    fn negative_power_at_zero_errors() {
        let q = Var::scalar("q");
        let p = Polynomial::term(Monomial::var_pow(q.clone(), -1), int(1));
        let mut vals = BTreeMap::new();
        vals.insert(q, Rational::zero());
        assert!(matches!(p.eval(&vals), Err(Error::DivisionByZeroSymbol { .. })));
    }
}
