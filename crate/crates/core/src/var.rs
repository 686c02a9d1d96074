//! Variables and Laurent monomials.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Indexed variable families. The declaration order is the canonical
/// variable order: `X < C < B < Scalar`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    X,
    C,
    B,
}

impl Family {
    pub fn prefix(self) -> &'static str {
        match self {
            Family::X => "x",
            Family::C => "c",
            Family::B => "b",
        }
    }
}

/// A variable: either a member of an indexed family (`x_i`, `c_i`, `b_i`,
/// indices starting at 1) or a named scalar such as `q`, `a` or `beta`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X(u32),
    C(u32),
    B(u32),
    Scalar(Arc<str>),
}

impl Var {
    pub fn x(i: u32) -> Var {
        Var::X(i)
    }

    pub fn c(i: u32) -> Var {
        Var::C(i)
    }

    pub fn b(i: u32) -> Var {
        Var::B(i)
    }

    pub fn scalar(name: &str) -> Var {
        Var::Scalar(Arc::from(name))
    }

    pub fn indexed(family: Family, i: u32) -> Var {
        match family {
            Family::X => Var::X(i),
            Family::C => Var::C(i),
            Family::B => Var::B(i),
        }
    }

    /// Family and index for indexed variables.
    pub fn family_index(&self) -> Option<(Family, u32)> {
        match self {
            Var::X(i) => Some((Family::X, *i)),
            Var::C(i) => Some((Family::C, *i)),
            Var::B(i) => Some((Family::B, *i)),
            Var::Scalar(_) => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x_{i}"),
            Var::C(i) => write!(f, "c_{i}"),
            Var::B(i) => write!(f, "b_{i}"),
            Var::Scalar(name) => f.write_str(name),
        }
    }
}

/// A Laurent monomial: variables with nonzero integer exponents, sorted by
/// variable. The empty monomial is 1.
///
/// Monomials are ordered lexicographically with `x_1` the most significant
/// variable. The order is total and compatible with multiplication, so it
/// serves as the term order for exact division.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    pub fn var_pow(v: Var, e: i32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs, merging repeats.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, i32)>) -> Monomial {
        let mut v: Vec<(Var, i32)> = pairs.into_iter().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Var, i32)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some((last, le)) if *last == var => *le += e,
                _ => out.push((var, e)),
            }
        }
        out.retain(|(_, e)| *e != 0);
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn exponent(&self, v: &Var) -> i32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|(_, e)| *e as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|(v, e)| (v.clone(), -e)).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(v, e)| (v.clone(), e * k)).collect())
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|(_, e)| *e > 0)
    }

    pub fn contains(&self, v: &Var) -> bool {
        self.exponent(v) != 0
    }

    /// Splits off the power of `v`: returns `(exponent, rest)`.
    pub fn split_var(&self, v: &Var) -> (i32, Monomial) {
        let mut rest = Vec::with_capacity(self.0.len());
        let mut e = 0;
        for (w, k) in &self.0 {
            if w == v {
                e = *k;
            } else {
                rest.push((w.clone(), *k));
            }
        }
        (e, Monomial(rest))
    }

    /// Applies a variable renaming (which must be injective on this monomial).
    pub fn rename(&self, f: impl Fn(&Var) -> Var) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|(v, e)| (f(v), *e)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            let (ea, eb) = match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(x), None) => {
                    i += 1;
                    (x.1, 0)
                }
                (None, Some(y)) => {
                    j += 1;
                    (0, y.1)
                }
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Less => {
                        i += 1;
                        (x.1, 0)
                    }
                    Ordering::Greater => {
                        j += 1;
                        (0, y.1)
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (x.1, y.1)
                    }
                },
            };
            if ea != eb {
                return ea.cmp(&eb);
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else if *e < 0 {
                write!(f, "{v}^({e})")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_variable_order() {
        assert!(Var::x(5) < Var::c(1));
        assert!(Var::c(9) < Var::b(1));
        assert!(Var::b(9) < Var::scalar("a"));
        assert!(Var::scalar("a") < Var::scalar("q"));
    }

    #[test]
    fn lex_order_is_multiplicative() {
        let a = Monomial::from_pairs([(Var::x(1), 1)]);
        let b = Monomial::from_pairs([(Var::x(2), 3), (Var::scalar("q"), -2)]);
        let m = Monomial::from_pairs([(Var::scalar("q"), 4), (Var::x(2), -1)]);
        assert!(a > b);
        assert!(a.mul(&m) > b.mul(&m));
    }

    #[test]
    fn mul_cancels_exponents() {
        let q = Var::scalar("q");
        let m = Monomial::var_pow(q.clone(), 3).mul(&Monomial::var_pow(q, -3));
        assert!(m.is_one());
    }
}
