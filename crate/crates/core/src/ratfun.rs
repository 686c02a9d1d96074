//! Rational functions with a factored denominator.
//!
//! A [`RatFun`] is a numerator polynomial over a multiset of normalized
//! denominator factors. Factors are never expanded or GCD-reduced; the only
//! simplification is trial exact division of the numerator by a factor.
//! A normalized factor has at least two terms, no monomial content and
//! leading coefficient 1, so equal factors compare equal structurally.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational};
use crate::var::{Monomial, Var};

#[derive(Clone, Default)]
pub struct RatFun {
    num: Polynomial,
    den: BTreeMap<Polynomial, u32>,
}

/// Splits a nonzero polynomial into `unit * factor`, where `unit` is a
/// single invertible term and `factor` is normalized (or `None` when the
/// polynomial is itself a single term).
fn normalize_factor(d: &Polynomial) -> Result<(Polynomial, Option<Polynomial>)> {
    if d.is_zero() {
        return Err(Error::PoleHit { factor: "0".into() });
    }
    if d.as_single_term().is_some() {
        return Ok((d.clone(), None));
    }
    let (m, stripped) = d.strip_content();
    let lc = stripped.leading_term().map(|(_, c)| c.clone()).unwrap();
    let factor = stripped.scale(&lc.recip());
    Ok((Polynomial::term(m, lc), Some(factor)))
}

fn unit_inverse(u: &Polynomial) -> Polynomial {
    let (m, c) = u.as_single_term().expect("unit is a single term");
    Polynomial::term(m.inv(), c.recip())
}

impl RatFun {
    pub fn zero() -> RatFun {
        RatFun::default()
    }

    pub fn one() -> RatFun {
        RatFun::from(Polynomial::one())
    }

    pub fn constant(c: Rational) -> RatFun {
        RatFun::from(Polynomial::constant(c))
    }

    pub fn int(n: i64) -> RatFun {
        RatFun::from(Polynomial::int(n))
    }

    pub fn var(v: Var) -> RatFun {
        RatFun::from(Polynomial::var(v))
    }

    pub fn scalar(name: &str) -> RatFun {
        RatFun::var(Var::scalar(name))
    }

    /// `num / den`, with `den` treated as a single denominator factor.
    pub fn new(num: Polynomial, den: &Polynomial) -> Result<RatFun> {
        let mut r = RatFun::from(num);
        r.push_factor(den, 1)?;
        r.cancel_factors(std::slice::from_ref(den));
        Ok(r)
    }

    /// `num / prod(factors)`; each factor is normalized, none expanded.
    pub fn from_parts(
        num: Polynomial,
        factors: impl IntoIterator<Item = (Polynomial, u32)>,
    ) -> Result<RatFun> {
        let mut r = RatFun::from(num);
        for (f, k) in factors {
            r.push_factor(&f, k)?;
        }
        r.cancel_all();
        Ok(r)
    }

    /// `1 / prod(factors)`.
    pub fn reciprocal_of_product<'a>(
        factors: impl IntoIterator<Item = &'a Polynomial>,
    ) -> Result<RatFun> {
        RatFun::from_parts(Polynomial::one(), factors.into_iter().map(|f| (f.clone(), 1)))
    }

    fn push_factor(&mut self, d: &Polynomial, k: u32) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        let (unit, factor) = normalize_factor(d).map_err(|_| Error::PoleHit {
            factor: d.to_string(),
        })?;
        let inv = unit_inverse(&unit).pow(k);
        self.num = &self.num * &inv;
        if let Some(f) = factor {
            *self.den.entry(f).or_insert(0) += k;
        }
        Ok(())
    }

    /// Trial-divides the numerator by each listed factor (given in any
    /// normalization) as many times as the multiplicity allows.
    fn cancel_factors(&mut self, candidates: &[Polynomial]) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for c in candidates {
            let Ok((_, Some(f))) = normalize_factor(c) else {
                continue;
            };
            self.cancel_one(&f);
        }
    }

    fn cancel_one(&mut self, f: &Polynomial) {
        let Some(mult) = self.den.get(f).copied() else {
            return;
        };
        let mut left = mult;
        while left > 0 {
            match self.num.try_div_exact(f) {
                Some(q) => {
                    self.num = q;
                    left -= 1;
                }
                None => break,
            }
        }
        if left == 0 {
            self.den.remove(f);
        } else {
            self.den.insert(f.clone(), left);
        }
    }

    fn cancel_all(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let keys: Vec<Polynomial> = self.den.keys().cloned().collect();
        for f in keys {
            self.cancel_one(&f);
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    /// Normalized denominator factors with multiplicities.
    pub fn denominator_factors(&self) -> impl Iterator<Item = (&Polynomial, u32)> {
        self.den.iter().map(|(f, k)| (f, *k))
    }

    /// The expanded denominator.
    pub fn denominator(&self) -> Polynomial {
        self.den
            .iter()
            .fold(Polynomial::one(), |acc, (f, k)| &acc * &f.pow(*k))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.as_polynomial().and_then(|p| p.as_constant())
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut vs = self.num.vars();
        for f in self.den.keys() {
            vs.extend(f.vars());
        }
        vs
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        self.num.contains_var(v) || self.den.keys().any(|f| f.contains_var(v))
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, k: i32) -> Result<RatFun> {
        if k >= 0 {
            let mut acc = RatFun::one();
            for _ in 0..k {
                acc = &acc * self;
            }
            Ok(acc)
        } else {
            self.inv()?.pow(-k)
        }
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.num.is_zero() {
            return Err(Error::PoleHit { factor: "0".into() });
        }
        let num = self.denominator();
        RatFun::new(num, &self.num)
    }

    pub fn try_div(&self, other: &RatFun) -> Result<RatFun> {
        Ok(self * &other.inv()?)
    }

    /// Brings both operands over their least common factor multiset.
    /// Returns the two scaled numerators, the common factors, and the
    /// factors present on both sides (the only ones that can cancel).
    fn over_common(&self, other: &RatFun) -> (Polynomial, Polynomial, BTreeMap<Polynomial, u32>, Vec<Polynomial>) {
        let mut lcm = self.den.clone();
        let mut shared = Vec::new();
        for (f, k) in &other.den {
            let e = lcm.entry(f.clone()).or_insert(0);
            if self.den.contains_key(f) {
                shared.push(f.clone());
            }
            *e = (*e).max(*k);
        }
        let cofactor = |den: &BTreeMap<Polynomial, u32>| {
            lcm.iter().fold(Polynomial::one(), |acc, (f, k)| {
                let have = den.get(f).copied().unwrap_or(0);
                if *k > have {
                    &acc * &f.pow(k - have)
                } else {
                    acc
                }
            })
        };
        let left = &self.num * &cofactor(&self.den);
        let right = &other.num * &cofactor(&other.den);
        (left, right, lcm, shared)
    }

    fn combine(&self, other: &RatFun, negate: bool) -> RatFun {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let (left, right, lcm, shared) = self.over_common(other);
        let num = if negate { left - right } else { left + right };
        let mut r = RatFun { num, den: lcm };
        if r.num.is_zero() {
            r.den.clear();
            return r;
        }
        for f in shared {
            r.cancel_one(&f);
        }
        r
    }

    /// `(self - other) / d`, where `d` must divide the numerator of the
    /// difference exactly.
    pub fn sub_exact_div(&self, other: &RatFun, d: &Polynomial) -> Result<RatFun> {
        let (left, right, lcm, shared) = self.over_common(other);
        let diff = left - right;
        if diff.is_zero() {
            return Ok(RatFun::zero());
        }
        let mut r = RatFun { num: diff.div_exact(d)?, den: lcm };
        for f in shared {
            r.cancel_one(&f);
        }
        Ok(r)
    }

    fn difference_numerator(&self, other: &RatFun) -> Polynomial {
        let (left, right, _, _) = self.over_common(other);
        left - right
    }

    /// Renames variables (injectively) and renormalizes the factors.
    pub fn rename(&self, f: impl Fn(&Var) -> Var) -> RatFun {
        let num = self.num.rename(&f);
        let factors: Vec<(Polynomial, u32)> =
            self.den.iter().map(|(d, k)| (d.rename(&f), *k)).collect();
        let mut r = RatFun::from(num);
        for (d, k) in factors {
            r.push_factor(&d, k).expect("renaming keeps factors nonzero");
        }
        r
    }

    /// Simultaneous substitution of rational functions for variables.
    /// Unbound variables pass through.
    pub fn substitute(&self, binding: &BTreeMap<Var, RatFun>) -> Result<RatFun> {
        let mut out = subst_polynomial(&self.num, binding)?;
        for (f, k) in &self.den {
            let image = subst_polynomial(f, binding)?;
            if image.is_zero() {
                return Err(Error::PoleHit { factor: f.to_string() });
            }
            let inv = image.inv()?.pow(*k as i32)?;
            out = &out * &inv;
        }
        Ok(out)
    }

    /// Substitutes exact rationals for some variables.
    pub fn subst_values(&self, values: &BTreeMap<Var, Rational>) -> Result<RatFun> {
        let mut r = RatFun::from(self.num.subst_values(values)?);
        for (f, k) in &self.den {
            let image = f.subst_values(values)?;
            if image.is_zero() {
                return Err(Error::PoleHit { factor: f.to_string() });
            }
            r.push_factor(&image, *k)?;
        }
        r.cancel_all();
        Ok(r)
    }

    /// Exact evaluation at a point covering every variable.
    pub fn eval(&self, values: &BTreeMap<Var, Rational>) -> Result<Rational> {
        let mut acc = self.num.eval(values)?;
        for (f, k) in &self.den {
            let v = f.eval(values)?;
            if v.is_zero() {
                return Err(Error::PoleHit { factor: f.to_string() });
            }
            acc /= num_traits::pow::Pow::pow(&v, *k);
        }
        Ok(acc)
    }
}

/// Substitutes into a polynomial, producing a rational function.
///
/// For a bound variable `v -> N/D` with exponent range `[lo, hi]` (clamped
/// to include 0), each term is multiplied through by `D^hi * N^(-lo)` so
/// that only nonnegative powers of `N` and `D` appear in the numerator.
pub(crate) fn subst_polynomial(p: &Polynomial, binding: &BTreeMap<Var, RatFun>) -> Result<RatFun> {
    let bound: Vec<&Var> = p.vars().into_iter().filter_map(|v| binding.get_key_value(&v).map(|(k, _)| k)).collect();
    if bound.is_empty() {
        return Ok(RatFun::from(p.clone()));
    }
    // Fast path: every value is a polynomial, and negative powers only hit
    // single-term values.
    let simple = bound.iter().all(|v| {
        let val = &binding[*v];
        val.is_polynomial()
            && (val.num.as_single_term().is_some()
                || p.degree_range(v).is_some_and(|(lo, _)| lo >= 0))
    });
    if simple {
        let pb: BTreeMap<Var, Polynomial> = bound
            .iter()
            .map(|v| ((*v).clone(), binding[*v].num.clone()))
            .collect();
        return Ok(RatFun::from(p.subst_polys(&pb)?));
    }

    struct Plan {
        lo: i32,
        hi: i32,
        num: Polynomial,
        den: Polynomial,
    }
    let mut plans: BTreeMap<Var, Plan> = BTreeMap::new();
    let mut denominators: Vec<(Polynomial, u32)> = Vec::new();
    for v in &bound {
        let (lo, hi) = p.degree_range(v).unwrap();
        let (lo, hi) = (lo.min(0), hi.max(0));
        let val = &binding[*v];
        if lo < 0 && val.is_zero() {
            return Err(Error::DivisionByZeroSymbol { var: v.to_string() });
        }
        for (f, k) in &val.den {
            denominators.push((f.clone(), k * hi as u32));
        }
        if lo < 0 {
            denominators.push((val.num.clone(), (-lo) as u32));
        }
        plans.insert(
            (*v).clone(),
            Plan { lo, hi, num: val.num.clone(), den: val.denominator() },
        );
    }
    let mut cache: BTreeMap<(Var, i32), Polynomial> = BTreeMap::new();
    let mut num = Polynomial::zero();
    for (m, c) in p.terms() {
        let mut rest = Vec::new();
        let mut acc = Polynomial::one();
        for (v, e) in m.exponents() {
            match plans.get(v) {
                None => rest.push((v.clone(), *e)),
                Some(_) => {
                    let key = (v.clone(), *e);
                    if !cache.contains_key(&key) {
                        let plan = &plans[v];
                        let pw = &plan.num.pow((e - plan.lo) as u32) * &plan.den.pow((plan.hi - e) as u32);
                        cache.insert(key.clone(), pw);
                    }
                    acc = &acc * &cache[&key];
                }
            }
        }
        // Variables absent from this monomial still need the full shift.
        for (v, plan) in &plans {
            if !m.contains(v) {
                let key = (v.clone(), 0);
                if !cache.contains_key(&key) {
                    let pw = &plan.num.pow((-plan.lo) as u32) * &plan.den.pow(plan.hi as u32);
                    cache.insert(key.clone(), pw);
                }
                acc = &acc * &cache[&key];
            }
        }
        let shift = Monomial::from_pairs(rest);
        num = &num + &acc.mul_monomial(&shift).scale(c);
    }
    RatFun::from_parts(num, denominators)
}

impl From<Polynomial> for RatFun {
    fn from(num: Polynomial) -> Self {
        RatFun { num, den: BTreeMap::new() }
    }
}

impl From<Var> for RatFun {
    fn from(v: Var) -> Self {
        RatFun::var(v)
    }
}

impl From<Rational> for RatFun {
    fn from(c: Rational) -> Self {
        RatFun::constant(c)
    }
}

impl From<i64> for RatFun {
    fn from(n: i64) -> Self {
        RatFun::int(n)
    }
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.difference_numerator(other).is_zero()
    }
}

impl Eq for RatFun {}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        self.combine(rhs, false)
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self.combine(rhs, true)
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        // Cancel each side's numerator against the other side's factors
        // before multiplying.
        let mut left = RatFun { num: self.num.clone(), den: rhs.den.clone() };
        left.cancel_all();
        let mut right = RatFun { num: rhs.num.clone(), den: self.den.clone() };
        right.cancel_all();
        let mut den = left.den;
        for (f, k) in right.den {
            *den.entry(f).or_insert(0) += k;
        }
        RatFun { num: &left.num * &right.num, den }
    }
}

impl<'a> Div<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    /// Panics on division by zero; use [`RatFun::try_div`] to handle it.
    fn div(self, rhs: &RatFun) -> RatFun {
        self.try_div(rhs).expect("division by the zero rational function")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: &RatFun) -> RatFun {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<RatFun> for &'a RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::iter::Sum for RatFun {
    fn sum<I: Iterator<Item = RatFun>>(iter: I) -> RatFun {
        iter.fold(RatFun::zero(), |acc, x| &acc + &x)
    }
}

impl std::iter::Product for RatFun {
    fn product<I: Iterator<Item = RatFun>>(iter: I) -> RatFun {
        iter.fold(RatFun::one(), |acc, x| &acc * &x)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        f.write_str("/(")?;
        for (i, (d, k)) in self.den.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *k == 1 {
                write!(f, "({d})")?;
            } else {
                write!(f, "({d})^{k}")?;
            }
        }
        f.write_str(")")
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

impl RatFun {
    /// True if this equals the constant 1.
    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }
}
