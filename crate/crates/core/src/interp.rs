//! Rational Newton interpolation.
//!
//! A function `f(x)` expands as
//!
//! ```text
//! f(x) = sum_{n>=0} A_n * Y_n(x, X) / (x, C)_n
//! Y_n(x, X) = (x - x_1) ... (x - x_n)
//! (x, C)_n  = (1 - x c_1) ... (1 - x c_n)
//! A_0 = f(x_1)
//! A_n = f(x_1) (x_1, C)_{n-1} ∂_1 ... ∂_n * (1 - x_{n+1} c_n)
//! ```
//!
//! with the divided differences acting on the symbolic nodes before the
//! context's specialization of `x_i` and `c_i` is applied. With all
//! `c_i = 0` this is classical Newton interpolation.

use std::collections::BTreeMap;

use crate::divdiff::{apply_chain, specialize_b_to_x};
use crate::error::{Error, Result};
use crate::families::InterpolationContext;
use crate::poly::Polynomial;
use crate::qseries::{pochhammer, pochhammer_signed};
use crate::ratfun::RatFun;
use crate::var::{Family, Var};

/// The interpolation variable `x`.
pub fn interpolation_var() -> Var {
    Var::scalar("x")
}

fn x() -> RatFun {
    RatFun::var(interpolation_var())
}

/// `Y_n(x, X)` and `(x, C)_n` for one context.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionTermBasis {
    pub n: usize,
    pub numerator: RatFun,
    pub denominator: RatFun,
}

impl ExpansionTermBasis {
    pub fn new(n: usize, ctx: &InterpolationContext) -> Result<ExpansionTermBasis> {
        Ok(ExpansionTermBasis {
            n,
            numerator: ctx.node_product(&x(), n)?,
            denominator: ctx.pole_product(&x(), n)?,
        })
    }

    pub fn value(&self) -> Result<RatFun> {
        self.numerator.try_div(&self.denominator)
    }
}

/// `A_n`, free of `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionCoefficient {
    pub n: usize,
    pub value: RatFun,
}

/// `Y_n(x, X) / (x, C)_n` with the context's nodes and poles.
pub fn expansion_term(n: usize, ctx: &InterpolationContext) -> Result<RatFun> {
    ExpansionTermBasis::new(n, ctx)?.value()
}

fn at_first_node(f: &RatFun) -> Result<RatFun> {
    if f.vars().iter().any(|v| matches!(v, Var::X(_))) {
        return Err(Error::InvalidArgument(format!(
            "function {f} must be written in x, not in the node variables"
        )));
    }
    let mut b = BTreeMap::new();
    b.insert(interpolation_var(), RatFun::var(Var::x(1)));
    f.substitute(&b)
}

/// `A_n` for a single `n`.
pub fn newton_coefficient(f: &RatFun, ctx: &InterpolationContext, n: usize) -> Result<RatFun> {
    let f1 = at_first_node(f)?;
    if n == 0 {
        return f1.substitute(&ctx.bind_x(1)?);
    }
    let x1 = RatFun::var(Var::x(1));
    let g = &f1 * &ctx.pole_product(&x1, n - 1)?;
    let reduced = apply_chain(&g, 1, n as u32, Family::X)?;
    let specialized = reduced.substitute(&ctx.bind_x(n + 1)?)?;
    let closing = &RatFun::one() - &(&ctx.x(n + 1)? * &ctx.c(n)?);
    Ok(&specialized * &closing)
}

/// `A_0, ..., A_order` of `f` under `ctx`.
pub fn rational_newton_coeffs(
    f: &RatFun,
    ctx: &InterpolationContext,
    order: usize,
) -> Result<Vec<ExpansionCoefficient>> {
    (0..=order)
        .map(|n| Ok(ExpansionCoefficient { n, value: newton_coefficient(f, ctx, n)? }))
        .collect()
}

/// `sum_{n=0}^{k} A_n Y_n(x, X) / (x, C)_n`.
pub fn reconstruct_partial(f: &RatFun, ctx: &InterpolationContext, k: usize) -> Result<RatFun> {
    let coeffs = rational_newton_coeffs(f, ctx, k)?;
    let mut acc = RatFun::zero();
    for c in coeffs {
        acc = &acc + &(&c.value * &expansion_term(c.n, ctx)?);
    }
    Ok(acc)
}

/// The partial sum through `k` evaluated at `x = point`, substituting
/// term by term.
pub fn reconstruct_partial_at(
    f: &RatFun,
    ctx: &InterpolationContext,
    k: usize,
    point: &RatFun,
) -> Result<RatFun> {
    let mut b = BTreeMap::new();
    b.insert(interpolation_var(), point.clone());
    let mut acc = RatFun::zero();
    for n in 0..=k {
        let term = expansion_term(n, ctx)?.substitute(&b)?;
        if term.is_zero() {
            continue;
        }
        acc = &acc + &(&newton_coefficient(f, ctx, n)? * &term);
    }
    Ok(acc)
}

/// `D_q g(x) = (g(x) - g(xq)) / x`.
pub fn q_derivative(g: &RatFun) -> Result<RatFun> {
    let xv = interpolation_var();
    let mut b = BTreeMap::new();
    b.insert(xv.clone(), &x() * &RatFun::scalar("q"));
    let shifted = g.substitute(&b)?;
    g.sub_exact_div(&shifted, &Polynomial::var(xv))
}

/// `D_q^n [ f(x) (x; q)_{n-1} ]`, before specialization.
fn liu_bracket(n: usize, f: &RatFun) -> Result<RatFun> {
    let q = Polynomial::scalar("q");
    let xp = Polynomial::var(interpolation_var());
    let mut h = f * &pochhammer_signed(&xp, &q, n as i64 - 1)?;
    for _ in 0..n {
        h = q_derivative(&h)?;
    }
    Ok(h)
}

fn at_x(f: &RatFun, value: RatFun) -> Result<RatFun> {
    let mut b = BTreeMap::new();
    b.insert(interpolation_var(), value);
    f.substitute(&b)
}

/// The bracketed part of the q-derivative expansion with nodes `a q^i`:
/// `[ D_q^n f(x) (x; q)_{n-1} ]_{x = aq}`.
pub fn liu_coefficient(n: usize, f: &RatFun) -> Result<RatFun> {
    at_x(&liu_bracket(n, f)?, &RatFun::scalar("a") * &RatFun::scalar("q"))
}

/// The full `n`-th coefficient
/// `(1 - a q^{2n}) / (q; q)_n * [ D_q^n f(x) (x; q)_{n-1} ]_{x = aq}`,
/// which multiplies `x^n (aq/x; q)_n / (x; q)_n`.
pub fn liu_expansion_coefficient(n: usize, f: &RatFun) -> Result<RatFun> {
    let q = Polynomial::scalar("q");
    let a = Polynomial::scalar("a");
    let pre = RatFun::new(Polynomial::one() - &a * &q.pow(2 * n as u32), &pochhammer(&q, &q, n as u32))?;
    Ok(&pre * &liu_coefficient(n, f)?)
}

/// `[ D_q^n f(x) (x; q)_{n-1} ]_{x = 0} / (q; q)_n`, the coefficient of
/// `x^n / (q, x; q)_n` times `(q;q)_n` removed.
pub fn carlitz_coefficient(n: usize, f: &RatFun) -> Result<RatFun> {
    let q = Polynomial::scalar("q");
    let bracket = at_x(&liu_bracket(n, f)?, RatFun::zero())?;
    bracket.try_div(&RatFun::from(pochhammer(&q, &q, n as u32)))
}

/// Closed form of the `k`-th coefficient of `(1 - u x)/(1 - v x)`:
/// `(v - u) Y_{k-1}(v, C) (1 - x_{k+1} c_k) / (v, X)_{k+1}` for `k >= 1`,
/// and `(1 - u x_1)/(1 - v x_1)` for `k = 0`.
pub fn bibasic_coefficient(k: usize, u: &RatFun, v: &RatFun, ctx: &InterpolationContext) -> Result<RatFun> {
    let one = RatFun::one();
    let x1 = ctx.x(1)?;
    if k == 0 {
        return (&one - &(u * &x1)).try_div(&(&one - &(v * &x1)));
    }
    let mut num = v - u;
    for i in 1..k {
        num = &num * &(v - &ctx.c(i)?);
    }
    num = &num * &(&one - &(&ctx.x(k + 1)? * &ctx.c(k)?));
    // One factor at a time, so each (1 - v x_i) stays a separate factor.
    for i in 1..=k + 1 {
        num = num.try_div(&(&one - &(v * &ctx.x(i)?)))?;
    }
    Ok(num)
}

/// The extraction value
/// `[Y_n(b_1,X)/(b_1,C)_n] (b_1,C)_{k-1} ∂_1 ... ∂_k |_{B=X}` (symbolic),
/// with the divided differences acting on the `b` family. Equals
/// `1/(1 - x_{n+1} c_n)` for `k = n` and 0 otherwise.
pub fn extraction_value(n: usize, k: usize) -> Result<RatFun> {
    if k == 0 {
        return Err(Error::InvalidArgument("extraction needs k >= 1".into()));
    }
    let b1 = Polynomial::var(Var::b(1));
    let y = (1..=n).fold(Polynomial::one(), |acc, i| &acc * &(&b1 - &Polynomial::var(Var::x(i as u32))));
    let pole = |i: usize| Polynomial::one() - &b1 * &Polynomial::var(Var::c(i as u32));
    // (b_1,C)_{k-1} / (b_1,C)_n, cancelled factor by factor.
    let mut num = y;
    for i in n + 1..k {
        num = &num * &pole(i);
    }
    let den: Vec<Polynomial> = (k.max(1)..=n).map(pole).collect();
    let g = RatFun::from_parts(num, den.into_iter().map(|d| (d, 1)))?;
    let reduced = apply_chain(&g, 1, k as u32, Family::B)?;
    specialize_b_to_x(&reduced, k + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;

    fn s(n: &str) -> RatFun {
        RatFun::scalar(n)
    }

    fn xi(i: u32) -> RatFun {
        RatFun::var(Var::x(i))
    }

    #[test]
    fn constant_function() {
        let coeffs = rational_newton_coeffs(&RatFun::one(), &InterpolationContext::symbolic(), 3).unwrap();
        assert!(coeffs[0].value.is_one());
        assert!(coeffs[1..].iter().all(|c| c.value.is_zero()));
    }

    #[test]
    fn basis_function_extracts_single_coefficient() {
        let r = |n, d| RatFun::constant(crate::poly::rat(n, d));
        let ctx = InterpolationContext::new(
            FamilySpec::geometric(r(1, 2), r(1, 3)),
            FamilySpec::geometric(r(1, 5), r(2, 7)),
        );
        let f = expansion_term(2, &ctx).unwrap();
        let coeffs = rational_newton_coeffs(&f, &ctx, 4).unwrap();
        for c in coeffs {
            if c.n == 2 {
                assert!(c.value.is_one(), "A_2 = {}", c.value);
            } else {
                assert!(c.value.is_zero(), "A_{} = {}", c.n, c.value);
            }
        }
    }

    #[test]
    fn newton_square() {
        let f = &x() * &x();
        let coeffs = rational_newton_coeffs(&f, &InterpolationContext::newton(), 3).unwrap();
        assert_eq!(coeffs[0].value, &xi(1) * &xi(1));
        assert_eq!(coeffs[1].value, &xi(1) + &xi(2));
        assert!(coeffs[2].value.is_one());
        assert!(coeffs[3].value.is_zero());
    }

    #[test]
    fn expansion_terms() {
        assert!(expansion_term(0, &InterpolationContext::liu()).unwrap().is_one());
        let one = RatFun::one();
        let liu1 = expansion_term(1, &InterpolationContext::liu()).unwrap();
        assert_eq!(liu1, (&x() - &(&s("a") * &s("q"))) / (&one - &x()));
        let newton2 = expansion_term(2, &InterpolationContext::newton()).unwrap();
        assert_eq!(newton2, &(&x() - &xi(1)) * &(&x() - &xi(2)));
    }

    #[test]
    fn explicit_family_overrun() {
        let ctx = InterpolationContext::new(FamilySpec::Explicit(vec![RatFun::one()]), FamilySpec::zero());
        assert!(matches!(expansion_term(2, &ctx), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn first_partial_sum_is_constant() {
        let one = RatFun::one();
        let f = (&one - &(&s("u") * &x())) / (&one - &(&s("v") * &x()));
        let r = reconstruct_partial(&f, &InterpolationContext::symbolic(), 0).unwrap();
        assert_eq!(r, (&one - &(&s("u") * &xi(1))) / (&one - &(&s("v") * &xi(1))));
    }

    #[test]
    fn newton_exactness_for_quadratic() {
        let f = &(&x() * &x()) * &RatFun::int(3) - &x() + RatFun::int(2);
        let r = reconstruct_partial(&f, &InterpolationContext::newton(), 2).unwrap();
        assert_eq!(r, f);
    }

    #[test]
    fn liu_coefficient_examples() {
        let one = RatFun::one();
        // n = 0, f = 1: (x;q)_{-1} at x = aq is 1/(1 - a)
        assert_eq!(liu_coefficient(0, &one).unwrap(), &one / &(&one - &s("a")));
        assert!(liu_expansion_coefficient(0, &one).unwrap().is_one());
        assert_eq!(liu_coefficient(1, &x()).unwrap(), &one - &s("q"));
    }

    #[test]
    fn bibasic_examples() {
        let ctx = InterpolationContext::symbolic();
        let u = s("u");
        for k in 1..4 {
            assert!(bibasic_coefficient(k, &u, &u, &ctx).unwrap().is_zero());
        }
        let one = RatFun::one();
        let v = s("v");
        let expected = &(&(&v - &u) * &(&one - &(&xi(2) * &RatFun::var(Var::c(1)))))
            / &(&(&one - &(&v * &xi(1))) * &(&one - &(&v * &xi(2))));
        assert_eq!(bibasic_coefficient(1, &u, &v, &ctx).unwrap(), expected);
    }

    #[test]
    fn extraction_small() {
        let one = RatFun::one();
        let expected = &one / &(&one - &(&xi(2) * &RatFun::var(Var::c(1))));
        assert_eq!(extraction_value(1, 1).unwrap(), expected);
        assert!(extraction_value(2, 1).unwrap().is_zero());
        assert!(extraction_value(1, 2).unwrap().is_zero());
    }

    #[test]
    fn extraction_grid() {
        let one = RatFun::one();
        for k in 1..=4 {
            for n in 0..=4 {
                let v = extraction_value(n, k).unwrap();
                if n == k {
                    let expected = &one / &(&one - &(&xi(n as u32 + 1) * &RatFun::var(Var::c(n as u32))));
                    assert_eq!(v, expected, "n={n} k={k}");
                } else {
                    assert!(v.is_zero(), "n={n} k={k}: {v}");
                }
            }
        }
    }

    #[test]
    fn carlitz_is_liu_at_a_zero() {
        let one = RatFun::one();
        let f = &one / &(&one - &(&s("z") * &x()));
        for n in 0..=3 {
            let full = liu_expansion_coefficient(n, &f).unwrap();
            let mut b = BTreeMap::new();
            b.insert(Var::scalar("a"), RatFun::zero());
            assert_eq!(full.substitute(&b).unwrap(), carlitz_coefficient(n, &f).unwrap(), "n={n}");
        }
    }

    #[test]
    fn q_derivative_of_power() {
        // D_q x^3 = (1 - q^3) x^2
        let q = s("q");
        let d = q_derivative(&x().pow(3).unwrap()).unwrap();
        assert_eq!(d, &(&RatFun::one() - &q.pow(3).unwrap()) * &x().pow(2).unwrap());
    }

    #[test]
    fn liu_context_matches_liu_coefficients() {
        let one = RatFun::one();
        let fs = [one.clone(), x(), &x() * &x(), &one / &(&one - &x())];
        let ctx = InterpolationContext::liu();
        for f in &fs {
            for n in 0..=3 {
                let theorem = newton_coefficient(f, &ctx, n).unwrap();
                assert_eq!(theorem, liu_expansion_coefficient(n, f).unwrap(), "f={f} n={n}");
            }
        }
    }

    #[test]
    fn interpolation_property_symbolic() {
        let one = RatFun::one();
        let f = (&one - &(&s("u") * &x())) / (&one - &(&s("v") * &x()));
        let ctx = InterpolationContext::symbolic();
        for k in 0..=3 {
            for j in 1..=k as u32 + 1 {
                let mut b = BTreeMap::new();
                b.insert(interpolation_var(), xi(j));
                let fj = f.substitute(&b).unwrap();
                assert_eq!(reconstruct_partial_at(&f, &ctx, k, &xi(j)).unwrap(), fj, "k={k} j={j}");
            }
        }
    }
}
