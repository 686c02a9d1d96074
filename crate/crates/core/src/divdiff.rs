//! Divided differences `f ∂_i = (f - f^{s_i}) / (v_i - v_{i+1})`, where
//! `s_i` exchanges `v_i` and `v_{i+1}` of one indexed family.
//!
//! Operators act on the left, so a chain `f ∂_1 ∂_2 ... ∂_k` applies `∂_1`
//! first.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational};
use crate::ratfun::RatFun;
use crate::var::{Family, Var};

/// Largest `n`, `i` accepted by [`lemma1_check`].
pub const DEFAULT_DEPTH_BOUND: usize = 8;

/// One divided-difference operator `∂_index` on a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DivDiffOperator {
    pub index: u32,
    pub family: Family,
}

impl DivDiffOperator {
    pub fn new(index: u32, family: Family) -> DivDiffOperator {
        assert!(index >= 1, "divided differences are indexed from 1");
        DivDiffOperator { index, family }
    }

    pub fn apply(&self, f: &RatFun) -> Result<RatFun> {
        apply_divdiff(f, self.index, self.family)
    }
}

/// `f ↦ f^{s_i}`: exchange `v_i` and `v_{i+1}` of `family`.
pub fn swap(f: &RatFun, i: u32, family: Family) -> RatFun {
    let (a, b) = (Var::indexed(family, i), Var::indexed(family, i + 1));
    f.rename(|v| {
        if *v == a {
            b.clone()
        } else if *v == b {
            a.clone()
        } else {
            v.clone()
        }
    })
}

/// `f ∂_i` on the given family.
pub fn apply_divdiff(f: &RatFun, i: u32, family: Family) -> Result<RatFun> {
    let (a, b) = (Var::indexed(family, i), Var::indexed(family, i + 1));
    if !f.contains_var(&a) && !f.contains_var(&b) {
        return Ok(RatFun::zero());
    }
    let swapped = swap(f, i, family);
    let delta = Polynomial::var(a) - Polynomial::var(b);
    f.sub_exact_div(&swapped, &delta)
}

/// `f ∂_from ∂_{from+1} ... ∂_to`.
pub fn apply_chain(f: &RatFun, from: u32, to: u32, family: Family) -> Result<RatFun> {
    let mut acc = f.clone();
    for i in from..=to {
        if acc.is_zero() {
            break;
        }
        acc = apply_divdiff(&acc, i, family)?;
    }
    Ok(acc)
}

/// `Y_n(b, X) = (b - x_1) ... (b - x_n)` as a polynomial.
pub fn newton_basis(y: &Polynomial, n: usize) -> Polynomial {
    (1..=n).fold(Polynomial::one(), |acc, k| &acc * &(y - &Polynomial::var(Var::x(k as u32))))
}

/// `Y_n(b_1, X) ∂_1 ... ∂_i` on the `b` family, then `b_j -> x_j`.
/// The result is 1 when `i == n` and 0 otherwise.
pub fn lemma1_check(n: usize, i: usize) -> Result<Rational> {
    if n > DEFAULT_DEPTH_BOUND || i > DEFAULT_DEPTH_BOUND {
        return Err(Error::InvalidArgument(format!(
            "n={n}, i={i} exceed the depth bound {DEFAULT_DEPTH_BOUND}"
        )));
    }
    let y = RatFun::from(newton_basis(&Polynomial::var(Var::b(1)), n));
    let reduced = if i == 0 { y } else { apply_chain(&y, 1, i as u32, Family::B)? };
    let value = specialize_b_to_x(&reduced, (i + 1).max(1))?;
    value.as_constant().ok_or_else(|| {
        Error::InvalidArgument(format!("specialization left a non-constant value {value}"))
    })
}

/// The specialization `b_j -> x_j` for `j = 1..=upto`.
pub fn specialize_b_to_x(f: &RatFun, upto: usize) -> Result<RatFun> {
    let binding: BTreeMap<Var, RatFun> = (1..=upto as u32)
        .map(|j| (Var::b(j), RatFun::var(Var::x(j))))
        .collect();
    f.substitute(&binding)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn b(i: u32) -> RatFun {
        RatFun::var(Var::b(i))
    }

    #[test]
    fn linear() {
        assert_eq!(apply_divdiff(&b(1), 1, Family::B).unwrap(), RatFun::one());
    }

    #[test]
    fn square() {
        let f = &b(1) * &b(1);
        assert_eq!(apply_divdiff(&f, 1, Family::B).unwrap(), &b(1) + &b(2));
    }

    #[test]
    fn geometric_kernel_at_random_points() {
        let v = RatFun::scalar("v");
        let f = RatFun::one() / (&RatFun::one() - &(&v * &b(1)));
        let got = apply_divdiff(&f, 1, Family::B).unwrap();
        let closed = &v / &(&(&RatFun::one() - &(&v * &b(1))) * &(&RatFun::one() - &(&v * &b(2))));
        assert_eq!(got, closed);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 20 {
            let pt = |rng: &mut ChaCha8Rng| rat(rng.gen_range(-9..=9), rng.gen_range(1..=7));
            let (vv, b1, b2) = (pt(&mut rng), pt(&mut rng), pt(&mut rng));
            let one = Rational::one();
            if b1 == b2 || &vv * &b1 == one || &vv * &b2 == one {
                continue;
            }
            let fv = |x: &Rational| (&one - &vv * x).recip();
            let oracle = (fv(&b1) - fv(&b2)) / (&b1 - &b2);
            let mut vals = BTreeMap::new();
            vals.insert(Var::scalar("v"), vv);
            vals.insert(Var::b(1), b1);
            vals.insert(Var::b(2), b2);
            assert_eq!(got.eval(&vals).unwrap(), oracle);
            checked += 1;
        }
    }

    #[test]
    fn constants_are_annihilated() {
        for k in 1..4 {
            assert!(apply_chain(&RatFun::int(5), 1, k, Family::X).unwrap().is_zero());
        }
    }

    #[test]
    fn newton_basis_chain_then_specialize() {
        let y2 = RatFun::from(newton_basis(&Polynomial::var(Var::b(1)), 2));
        let r = apply_chain(&y2, 1, 2, Family::B).unwrap();
        assert_eq!(specialize_b_to_x(&r, 3).unwrap(), RatFun::one());
    }

    #[test]
    fn lemma1_examples() {
        assert_eq!(lemma1_check(2, 1).unwrap(), int(0));
        assert_eq!(lemma1_check(2, 2).unwrap(), int(1));
        assert_eq!(lemma1_check(0, 0).unwrap(), int(1));
    }

    #[test]
    fn lemma1_depth_bound() {
        assert!(lemma1_check(9, 1).is_err());
    }

    #[test]
    fn same_operator_twice_is_zero() {
        let f = &(&b(1) * &b(1)) * &b(2) + b(3);
        let once = apply_divdiff(&f, 1, Family::B).unwrap();
        assert!(apply_divdiff(&once, 1, Family::B).unwrap().is_zero());
    }
}
