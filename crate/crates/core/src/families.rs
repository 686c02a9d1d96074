//! Closed-form rules for the node family `x_1, x_2, ...` and the pole
//! family `c_1, c_2, ...` of the rational Newton expansion.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ratfun::RatFun;
use crate::var::{Family, Var};

/// Rule producing the `i`-th member (1-based) of an infinite family.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    /// The indexed variables themselves.
    Symbolic(Family),
    /// `scale * ratio^(i-1)`.
    Geometric { scale: RatFun, ratio: RatFun },
    Constant(RatFun),
    Explicit(Vec<RatFun>),
}

impl FamilySpec {
    pub fn geometric(scale: impl Into<RatFun>, ratio: impl Into<RatFun>) -> FamilySpec {
        FamilySpec::Geometric { scale: scale.into(), ratio: ratio.into() }
    }

    pub fn constant(value: impl Into<RatFun>) -> FamilySpec {
        FamilySpec::Constant(value.into())
    }

    pub fn zero() -> FamilySpec {
        FamilySpec::Constant(RatFun::zero())
    }

    /// The `i`-th member, `i >= 1`.
    pub fn term(&self, i: usize) -> Result<RatFun> {
        if i == 0 {
            return Err(Error::IndexOutOfRange { index: 0, len: 0 });
        }
        match self {
            FamilySpec::Symbolic(fam) => Ok(RatFun::var(Var::indexed(*fam, i as u32))),
            FamilySpec::Geometric { scale, ratio } => Ok(scale * &ratio.pow(i as i32 - 1)?),
            FamilySpec::Constant(v) => Ok(v.clone()),
            FamilySpec::Explicit(vals) => vals
                .get(i - 1)
                .cloned()
                .ok_or(Error::IndexOutOfRange { index: i, len: vals.len() }),
        }
    }

    /// Whether this family is identically zero.
    pub fn is_zero(&self) -> bool {
        match self {
            FamilySpec::Constant(v) => v.is_zero(),
            FamilySpec::Geometric { scale, .. } => scale.is_zero(),
            FamilySpec::Explicit(v) => v.iter().all(RatFun::is_zero),
            FamilySpec::Symbolic(_) => false,
        }
    }
}

/// The pair of families driving one expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct InterpolationContext {
    pub x_family: FamilySpec,
    pub c_family: FamilySpec,
}

impl InterpolationContext {
    pub fn new(x_family: FamilySpec, c_family: FamilySpec) -> InterpolationContext {
        InterpolationContext { x_family, c_family }
    }

    /// Fully symbolic nodes and poles.
    pub fn symbolic() -> InterpolationContext {
        InterpolationContext::new(FamilySpec::Symbolic(Family::X), FamilySpec::Symbolic(Family::C))
    }

    /// Symbolic nodes, all poles at 0: classical Newton interpolation.
    pub fn newton() -> InterpolationContext {
        InterpolationContext::new(FamilySpec::Symbolic(Family::X), FamilySpec::zero())
    }

    /// Nodes `a q^i`, poles `q^(i-1)`.
    pub fn liu() -> InterpolationContext {
        let q = RatFun::scalar("q");
        InterpolationContext::new(
            FamilySpec::geometric(&RatFun::scalar("a") * &q, q.clone()),
            FamilySpec::geometric(RatFun::one(), q),
        )
    }

    /// Nodes `q^(i-1)`, poles `a p^i`.
    pub fn gasper() -> InterpolationContext {
        let p = RatFun::scalar("p");
        InterpolationContext::new(
            FamilySpec::geometric(RatFun::one(), RatFun::scalar("q")),
            FamilySpec::geometric(&RatFun::scalar("a") * &p, p),
        )
    }

    pub fn x(&self, i: usize) -> Result<RatFun> {
        self.x_family.term(i)
    }

    pub fn c(&self, i: usize) -> Result<RatFun> {
        self.c_family.term(i)
    }

    /// Binding `x_1..x_{k+1}`, `c_1..c_k` for a depth-`k` computation.
    pub fn bind(&self, depth: usize) -> Result<BTreeMap<Var, RatFun>> {
        let mut out = BTreeMap::new();
        for i in 1..=depth + 1 {
            out.insert(Var::x(i as u32), self.x(i)?);
        }
        for i in 1..=depth {
            out.insert(Var::c(i as u32), self.c(i)?);
        }
        Ok(out)
    }

    /// Binding of the `x_i` only (for `i <= n`).
    pub fn bind_x(&self, n: usize) -> Result<BTreeMap<Var, RatFun>> {
        (1..=n).map(|i| Ok((Var::x(i as u32), self.x(i)?))).collect()
    }

    /// `(y; C)_n = prod_{i=1}^{n} (1 - y c_i)` with context-specialized `c_i`.
    pub fn pole_product(&self, y: &RatFun, n: usize) -> Result<RatFun> {
        let mut acc = RatFun::one();
        for i in 1..=n {
            acc = &acc * &(&RatFun::one() - &(y * &self.c(i)?));
        }
        Ok(acc)
    }

    /// `Y_n(y, X) = prod_{i=1}^{n} (y - x_i)` with context-specialized `x_i`.
    pub fn node_product(&self, y: &RatFun, n: usize) -> Result<RatFun> {
        let mut acc = RatFun::one();
        for i in 1..=n {
            acc = &acc * &(y - &self.x(i)?);
        }
        Ok(acc)
    }
}

impl From<Polynomial> for FamilySpec {
    fn from(p: Polynomial) -> Self {
        FamilySpec::Constant(RatFun::from(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: &str) -> RatFun {
        RatFun::scalar(n)
    }

    #[test]
    fn geometric_term() {
        let spec = FamilySpec::geometric(&s("a") * &s("q"), s("q"));
        let t3 = spec.term(3).unwrap();
        assert_eq!(t3, &s("a") * &s("q").pow(3).unwrap());
    }

    #[test]
    fn constant_and_symbolic_terms() {
        assert!(FamilySpec::zero().term(7).unwrap().is_zero());
        assert_eq!(FamilySpec::Symbolic(Family::X).term(2).unwrap(), RatFun::var(Var::x(2)));
    }

    #[test]
    fn explicit_overrun() {
        let spec = FamilySpec::Explicit(vec![RatFun::one()]);
        assert!(spec.term(1).is_ok());
        assert!(matches!(spec.term(2), Err(Error::IndexOutOfRange { index: 2, len: 1 })));
    }

    #[test]
    fn newton_binding() {
        let b = InterpolationContext::newton().bind(2).unwrap();
        assert_eq!(b.len(), 5);
        assert!(b[&Var::c(1)].is_zero() && b[&Var::c(2)].is_zero());
        assert_eq!(b[&Var::x(3)], RatFun::var(Var::x(3)));
    }

    #[test]
    fn liu_binding() {
        let b = InterpolationContext::liu().bind(1).unwrap();
        assert_eq!(b[&Var::x(1)], &s("a") * &s("q"));
        assert_eq!(b[&Var::x(2)], &s("a") * &s("q").pow(2).unwrap());
        assert_eq!(b[&Var::c(1)], RatFun::one());
    }

    #[test]
    fn gasper_binding() {
        let b = InterpolationContext::gasper().bind(1).unwrap();
        assert_eq!(b[&Var::x(1)], RatFun::one());
        assert_eq!(b[&Var::x(2)], s("q"));
        assert_eq!(b[&Var::c(1)], &s("a") * &s("p"));
    }

    #[test]
    fn geometric_ratio_recurrence() {
        let spec = FamilySpec::geometric(&s("a") * &s("q"), s("q"));
        for i in 1..=10 {
            assert_eq!(spec.term(i + 1).unwrap(), &s("q") * &spec.term(i).unwrap());
        }
    }

    #[test]
    fn symbolic_then_substitute_matches_geometric() {
        let geo = InterpolationContext::liu();
        let sym = InterpolationContext::symbolic();
        for depth in 1..=6 {
            let binding = geo.bind(depth).unwrap();
            for i in 1..=depth + 1 {
                let direct = geo.x(i).unwrap();
                let via = sym.x(i).unwrap().substitute(&binding).unwrap();
                assert_eq!(direct, via);
            }
        }
    }
}
