//! Elementary and complete symmetric functions, and Schur functions with
//! one alphabet per column.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::series::TruncatedSeries;
use crate::var::{Family, Var};

/// Auxiliary generating-function variable; never appears in results.
fn aux_var() -> Var {
    Var::scalar("__t")
}

/// A finite alphabet of polynomial letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet(pub Vec<Polynomial>);

impl Alphabet {
    pub fn new(letters: Vec<Polynomial>) -> Alphabet {
        Alphabet(letters)
    }

    /// `{v_from, ..., v_to}` from one indexed family.
    pub fn range(family: Family, from: u32, to: u32) -> Alphabet {
        Alphabet((from..=to).map(|i| Polynomial::var(Var::indexed(family, i))).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Polynomial] {
        &self.0
    }

    /// `prod (1 + a t)` truncated at `t^order`.
    fn elementary_series(&self, order: usize) -> TruncatedSeries {
        let t = aux_var();
        let mut acc = TruncatedSeries::one(t.clone(), order);
        for a in &self.0 {
            let mut factor = TruncatedSeries::one(t.clone(), order);
            if order >= 1 {
                factor = &factor + &TruncatedSeries::monomial(t.clone(), 1, order).scale(a);
            }
            acc = &acc * &factor;
        }
        acc
    }

    /// `S_0, ..., S_order` of this alphabet, by inverting `sum (-1)^i e_i t^i`.
    pub fn complete_upto(&self, order: usize) -> Vec<Polynomial> {
        let e = self.elementary_series(order);
        let signed = TruncatedSeries::from_polynomial(
            &e.coeffs()
                .iter()
                .enumerate()
                .fold(Polynomial::zero(), |acc, (i, c)| {
                    let m = crate::var::Monomial::var_pow(aux_var(), i as i32);
                    let c = if i % 2 == 1 { -c } else { c.clone() };
                    &acc + &c.mul_monomial(&m)
                }),
            &aux_var(),
            order,
        )
        .expect("nonnegative powers only");
        signed
            .inverse()
            .expect("constant term is 1")
            .coeffs()
            .to_vec()
    }
}

/// `e_i(A)`: coefficient of `t^i` in `prod (1 + a t)`.
pub fn elementary(i: i64, alphabet: &Alphabet) -> Polynomial {
    if i < 0 || i as usize > alphabet.len() {
        return Polynomial::zero();
    }
    alphabet.elementary_series(i as usize).coeff(i as usize).clone()
}

/// `S_i(A)`: coefficient of `t^i` in `prod 1/(1 - a t)`.
pub fn complete(i: i64, alphabet: &Alphabet) -> Polynomial {
    if i < 0 {
        return Polynomial::zero();
    }
    alphabet.complete_upto(i as usize).pop().unwrap()
}

/// `S_λ(A_1, ..., A_n) = det [ S_{λ_j + j - i}(A_j) ]_{i,j=1..n}`.
///
/// Parts may be negative; complete functions of negative degree vanish.
pub fn schur_multi(parts: &[i64], alphabets: &[Alphabet]) -> Result<Polynomial> {
    let n = parts.len();
    if alphabets.len() != n {
        return Err(Error::InvalidArgument(format!(
            "{} parts but {} alphabets",
            n,
            alphabets.len()
        )));
    }
    // Column j needs degrees up to λ_j + j - 1 (0-based j: λ_j + j).
    let columns: Vec<Vec<Polynomial>> = (0..n)
        .map(|j| {
            let top = parts[j] + j as i64;
            if top < 0 {
                Vec::new()
            } else {
                alphabets[j].complete_upto(top as usize)
            }
        })
        .collect();
    let entry = |i: usize, j: usize| -> Option<&Polynomial> {
        let k = parts[j] + j as i64 - i as i64;
        if k < 0 {
            None
        } else {
            columns[j].get(k as usize).filter(|p| !p.is_zero())
        }
    };
    Ok(determinant(n, entry))
}

/// Laplace expansion by rows with memoization over used-column sets.
fn determinant<'a>(n: usize, entry: impl Fn(usize, usize) -> Option<&'a Polynomial>) -> Polynomial {
    if n == 0 {
        return Polynomial::one();
    }
    let size = 1usize << n;
    let mut dp: Vec<Option<Polynomial>> = vec![None; size];
    dp[0] = Some(Polynomial::one());
    for mask in 0..size {
        let Some(acc) = dp[mask].take() else { continue };
        let row = mask.count_ones() as usize;
        if row == n {
            dp[mask] = Some(acc);
            continue;
        }
        for col in 0..n {
            if mask & (1 << col) != 0 {
                continue;
            }
            let Some(e) = entry(row, col) else { continue };
            // Inversions added: used columns to the right of `col`.
            let higher = (mask >> (col + 1)).count_ones();
            let mut term = &acc * e;
            if higher % 2 == 1 {
                term = -term;
            }
            let next = mask | (1 << col);
            dp[next] = Some(match dp[next].take() {
                Some(p) => &p + &term,
                None => term,
            });
        }
    }
    dp[size - 1].take().unwrap_or_default()
}

/// Checks `S_λ(x_2, ..., x_{m+1}) x_1^r = S_{λ,r}(X, ..., X, x_1)` with
/// `X = {x_1, ..., x_{m+1}}`.
pub fn check_flag_identity(parts: &[i64], r: i64, m: u32) -> Result<bool> {
    let shifted = Alphabet::range(Family::X, 2, m + 1);
    let full = Alphabet::range(Family::X, 1, m + 1);
    let x1 = Polynomial::var(Var::x(1));
    let n = parts.len();
    let lhs = &schur_multi(parts, &vec![shifted; n])? * &x1.pow(r.max(0) as u32);
    let mut rparts = parts.to_vec();
    rparts.push(r);
    let mut alphabets = vec![full; n];
    alphabets.push(Alphabet(vec![x1]));
    let rhs = schur_multi(&rparts, &alphabets)?;
    Ok(lhs == rhs)
}
