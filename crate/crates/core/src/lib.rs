//! Exact rational Newton interpolation with divided differences, and exact
//! verification of the basic hypergeometric identities it produces.
//!
//! The algebra layer ([`poly`], [`ratfun`], [`series`]) works over exact
//! rationals only. [`divdiff`] implements the divided-difference operators,
//! [`interp`] the rational Newton expansion built on them, and
//! [`identities`] the end-to-end identity checks.

pub mod divdiff;
pub mod error;
pub mod families;
pub mod identities;
pub mod interp;
pub mod poly;
pub mod qseries;
pub mod ratfun;
pub mod series;
pub mod symfun;
pub mod var;

pub use error::{Error, Result};
pub use families::{FamilySpec, InterpolationContext};
pub use poly::{int, rat, Polynomial, Rational};
pub use ratfun::RatFun;
pub use series::TruncatedSeries;
pub use var::{Family, Monomial, Var};
