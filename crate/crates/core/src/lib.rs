//! Exact symbolic engine for linear boundary problems: exponential
//! polynomials, an integro-differential operator algebra with substitutions,
//! boundary-problem calculus, and a closed-form solver for Cauchy problems of
//! completely reducible constant-coefficient PDEs.

pub mod boundary;
pub mod cauchy;
pub mod cli;
pub mod error;
pub mod exppoly;
pub mod matrix;
pub mod operator;
pub mod oracle;
pub mod poly;
pub mod random;
pub mod scalar;
pub mod syntax;

pub use error::{Error, ParseError, Result};
pub use exppoly::{ExpPoly, Frequency, Series, VarIndex};
pub use matrix::{LinearSubst, Matrix};
pub use operator::{Generator, OperatorExpr};
pub use poly::{Monomial, Poly};
pub use scalar::ExactComplex;
pub use syntax::{parse_exppoly, parse_operator};
