use std::collections::BTreeMap;

use num_traits::One;
use proptest::prelude::*;
use ratinterp::divdiff::apply_divdiff;
use ratinterp::qseries::{pochhammer, pochhammer_signed, q_binomial};
use ratinterp::symfun::{check_flag_identity, complete, Alphabet};
use ratinterp::{int, Family, Monomial, Polynomial, RatFun, Rational, TruncatedSeries, Var};

fn vars() -> Vec<Var> {
    vec![Var::x(1), Var::x(2), Var::scalar("q")]
}

/// Small polynomials in `x_1`, `x_2`, `q` with exponents 0..=2.
fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-4i64..=4, 0i32..=2, 0i32..=2, 0i32..=2), 0..5).prop_map(|terms| {
        let vs = vars();
        Polynomial::from_terms(terms.into_iter().map(|(c, a, b, e)| {
            let m = Monomial::from_pairs(vec![(vs[0].clone(), a), (vs[1].clone(), b), (vs[2].clone(), e)]);
            (m, int(c))
        }))
    })
}

fn nonzero_poly() -> impl Strategy<Value = Polynomial> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

/// Polynomials in `x_1` alone.
fn univariate(v: Var) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-3i64..=3, 1..5).prop_map(move |cs| {
        cs.iter().enumerate().fold(Polynomial::zero(), |acc, (i, c)| {
            &acc + &Polynomial::term(Monomial::var_pow(v.clone(), i as i32), int(*c))
        })
    })
}

fn rename_x1(p: &Polynomial, to: Var) -> Polynomial {
    p.rename(|v| if *v == Var::x(1) { to.clone() } else { v.clone() })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(), a.clone());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(), b in nonzero_poly()) {
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn ratfun_equivalence(a in poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let f = RatFun::new(a.clone(), &b).unwrap();
        let g = RatFun::new(&a * &c, &(&b * &c)).unwrap();
        prop_assert_eq!(&f, &g);
        prop_assert!((&f - &g).is_zero());
        if !a.is_zero() {
            prop_assert!((&f * &f.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn series_of_product(a in poly(), b in poly()) {
        let q = Var::scalar("q");
        let sa = TruncatedSeries::from_polynomial(&a, &q, 4).unwrap();
        let sb = TruncatedSeries::from_polynomial(&b, &q, 4).unwrap();
        let sab = TruncatedSeries::from_polynomial(&(&a * &b), &q, 4).unwrap();
        prop_assert_eq!(&sa * &sb, sab);
    }

    #[test]
    fn leibniz_rule(f in univariate(Var::x(1)), g in univariate(Var::x(1))) {
        // (f(x_1) g(x_1)) ∂_1 = f(x_1) (g ∂_1) + (f ∂_1) g(x_2)
        let ff = RatFun::from(f.clone());
        let gg = RatFun::from(g.clone());
        let lhs = apply_divdiff(&(&ff * &gg), 1, Family::X).unwrap();
        let g2 = RatFun::from(rename_x1(&g, Var::x(2)));
        let rhs = &(&ff * &apply_divdiff(&gg, 1, Family::X).unwrap()) + &(&apply_divdiff(&ff, 1, Family::X).unwrap() * &g2);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn divided_difference_lowers_degree(cs in prop::collection::vec(-3i64..=3, 1..5), d in 1i32..5) {
        // A homogeneous polynomial of degree d in x_1, x_2 maps to degree d - 1 or to 0.
        let p = cs.iter().enumerate().fold(Polynomial::zero(), |acc, (i, c)| {
            let a = (i as i32).min(d);
            let m = Monomial::from_pairs(vec![(Var::x(1), a), (Var::x(2), d - a)]);
            &acc + &Polynomial::term(m, int(*c))
        });
        let r = apply_divdiff(&RatFun::from(p), 1, Family::X).unwrap();
        let poly = r.as_polynomial().unwrap();
        prop_assert!(poly.is_zero() || poly.total_degree() == Some(d as i64 - 1));
    }

    #[test]
    fn power_to_complete(m in 0i64..=8, k in 1u32..=4) {
        let b1 = RatFun::var(Var::b(1));
        let got = ratinterp::divdiff::apply_chain(&b1.pow(m as i32).unwrap(), 1, k, Family::B).unwrap();
        let expected = complete(m - k as i64, &Alphabet::range(Family::B, 1, k + 1));
        prop_assert_eq!(got, RatFun::from(expected));
    }

    #[test]
    fn flag_identity(parts in prop::collection::vec(0i64..=2, 0..3), r in 0i64..=3, m in 1u32..=3) {
        let mut parts = parts;
        parts.sort_by(|a, b| b.cmp(a));
        prop_assert!(check_flag_identity(&parts, r, m).unwrap());
    }

    #[test]
    fn pochhammer_splitting(m in -3i64..=4, n in -3i64..=4) {
        let a = Polynomial::scalar("a");
        let q = Polynomial::scalar("q");
        let qm = Polynomial::term(Monomial::var_pow(Var::scalar("q"), m as i32), Rational::one());
        let whole = pochhammer_signed(&a, &q, m + n).unwrap();
        let split = &pochhammer_signed(&a, &q, m).unwrap() * &pochhammer_signed(&(&a * &qm), &q, n).unwrap();
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn gaussian_binomials(n in 1u32..=7, k in 0u32..=7) {
        prop_assume!(k <= n);
        let q = Polynomial::scalar("q");
        let b = q_binomial(n, k, &q).unwrap();
        prop_assert_eq!(&b, &q_binomial(n, n - k, &q).unwrap());
        // The mirrored Pascal rule [n k] = q^{n-k} [n-1 k-1] + [n-1 k].
        if k >= 1 && k < n {
            let other = &(&q.pow(n - k) * &q_binomial(n - 1, k - 1, &q).unwrap()) + &q_binomial(n - 1, k, &q).unwrap();
            prop_assert_eq!(&b, &other);
        }
        // [n k] (q;q)_k (q;q)_{n-k} = (q;q)_n
        let lhs = &(&b * &pochhammer(&q, &q, k)) * &pochhammer(&q, &q, n - k);
        prop_assert_eq!(lhs, pochhammer(&q, &q, n));
        // q = 1 gives the ordinary binomial coefficient.
        let mut at1 = BTreeMap::new();
        at1.insert(Var::scalar("q"), Rational::one());
        let ordinary = (0..k).fold(Rational::one(), |acc, i| acc * int((n - i) as i64) / int((i + 1) as i64));
        prop_assert_eq!(b.eval(&at1).unwrap(), ordinary);
    }
}
