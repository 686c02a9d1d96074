//! Truncated formal power series in one distinguished variable.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::{poly_pow_signed, Polynomial};
use crate::ratfun::RatFun;
use crate::var::{Monomial, Var};

/// `sum_{k=0}^{order} coeffs[k] * var^k  + O(var^(order+1))`, with
/// coefficients polynomial in the remaining variables.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    var: Var,
    order: usize,
    coeffs: Vec<Polynomial>,
}

impl TruncatedSeries {
    pub fn zero(var: Var, order: usize) -> TruncatedSeries {
        TruncatedSeries { var, order, coeffs: vec![Polynomial::zero(); order + 1] }
    }

    pub fn one(var: Var, order: usize) -> TruncatedSeries {
        TruncatedSeries::constant(Polynomial::one(), var, order)
    }

    pub fn constant(c: Polynomial, var: Var, order: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(var, order);
        s.coeffs[0] = c;
        s
    }

    /// `var^k` (zero if `k` exceeds the order).
    pub fn monomial(var: Var, k: usize, order: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(var, order);
        if k <= order {
            s.coeffs[k] = Polynomial::one();
        }
        s
    }

    /// Expands a polynomial in powers of `var`. Negative powers of `var`
    /// are rejected.
    pub fn from_polynomial(p: &Polynomial, var: &Var, order: usize) -> Result<TruncatedSeries> {
        let mut s = TruncatedSeries::zero(var.clone(), order);
        for (e, c) in p.coefficients_in(var) {
            if e < 0 {
                return Err(Error::NegativeSeriesPower { what: p.to_string(), var: var.to_string() });
            }
            if (e as usize) <= order {
                s.coeffs[e as usize] = c;
            }
        }
        Ok(s)
    }

    /// Expands a rational function factor by factor; each denominator
    /// factor must have an invertible (single-term) constant coefficient.
    pub fn from_ratfun(f: &RatFun, var: &Var, order: usize) -> Result<TruncatedSeries> {
        let mut s = TruncatedSeries::from_polynomial(f.numerator(), var, order)?;
        for (d, k) in f.denominator_factors() {
            let ds = TruncatedSeries::from_polynomial(d, var, order)?;
            let inv = ds.inverse().map_err(|_| Error::NonInvertibleConstantTerm {
                factor: d.to_string(),
            })?;
            for _ in 0..k {
                s = &s * &inv;
            }
        }
        Ok(s)
    }

    pub fn var(&self) -> &Var {
        &self.var
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &Polynomial {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> TruncatedSeries {
        let order = order.min(self.order);
        TruncatedSeries {
            var: self.var.clone(),
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(self.var.clone(), self.order);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k <= self.order {
                s.coeffs[i + k] = c.clone();
            }
        }
        s
    }

    pub fn scale(&self, c: &Polynomial) -> TruncatedSeries {
        TruncatedSeries {
            var: self.var.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().map(|k| k * c).collect(),
        }
    }

    /// Multiplicative inverse. Requires a single-term constant coefficient.
    pub fn inverse(&self) -> Result<TruncatedSeries> {
        let c0 = &self.coeffs[0];
        let c0_inv = match c0.as_single_term() {
            Some(_) => poly_pow_signed(c0, -1).unwrap(),
            None => {
                return Err(Error::NonInvertibleConstantTerm { factor: c0.to_string() });
            }
        };
        let n = self.order;
        let mut out = TruncatedSeries::zero(self.var.clone(), n);
        out.coeffs[0] = c0_inv.clone();
        for k in 1..=n {
            let mut acc = Polynomial::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() && !out.coeffs[k - j].is_zero() {
                    acc = &acc + &(&self.coeffs[j] * &out.coeffs[k - j]);
                }
            }
            out.coeffs[k] = -(&acc * &c0_inv);
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> TruncatedSeries {
        let mut acc = TruncatedSeries::one(self.var.clone(), self.order);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// First index where the two series differ, up to the smaller order.
    pub fn first_difference(&self, other: &TruncatedSeries) -> Option<usize> {
        let n = self.order.min(other.order);
        (0..=n).find(|&k| self.coeffs[k] != other.coeffs[k])
    }

    /// Partial substitution of rational values into the coefficients.
    pub fn subst_values(
        &self,
        values: &std::collections::BTreeMap<Var, crate::poly::Rational>,
    ) -> Result<TruncatedSeries> {
        Ok(TruncatedSeries {
            var: self.var.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.subst_values(values)).collect::<Result<_>>()?,
        })
    }

    /// The truncated sum as a polynomial in `var`.
    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            let m = Monomial::var_pow(self.var.clone(), k as i32);
            p = &p + &c.mul_monomial(&m);
        }
        p
    }

    fn check_compatible(&self, other: &TruncatedSeries) -> usize {
        assert_eq!(self.var, other.var, "series in different variables");
        self.order.min(other.order)
    }
}

impl<'a> Add<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.check_compatible(rhs);
        TruncatedSeries {
            var: self.var.clone(),
            order: n,
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl<'a> Sub<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.check_compatible(rhs);
        TruncatedSeries {
            var: self.var.clone(),
            order: n,
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl<'a> Mul<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.check_compatible(rhs);
        let mut out = TruncatedSeries::zero(self.var.clone(), n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] = &out.coeffs[i + j] + &(&self.coeffs[i] * &rhs.coeffs[j]);
            }
        }
        out
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            var: self.var.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let body = if c.len() > 1 { format!("({c})") } else { c.to_string() };
            match k {
                0 => write!(f, "{body}")?,
                1 => write!(f, "{body}*{}", self.var)?,
                _ => write!(f, "{body}*{}^{k}", self.var)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries({self})")
    }
}
