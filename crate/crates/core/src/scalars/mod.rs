//! Exact scalar arithmetic: Gaussian rationals, multivariate Laurent polynomials,
//! reduced fractions, and Grassmann-valued scalars with conjugations and limits.

pub mod gaussian;
pub mod grassmann;
pub mod parse;
pub mod poly;
pub mod ratfun;

pub use gaussian::GRat;
pub use grassmann::{ConjSpec, GScalar};
pub use parse::{parse_ratfun, parse_scalar};
pub use poly::Poly;
pub use ratfun::RatFun;

use std::sync::Arc;

use thiserror::Error;

/// Declares the commuting (even, invertible) and anticommuting (odd, nilpotent)
/// parameters a family of scalars may mention. Every scalar value carries a
/// shared handle to its signature; mixed-signature arithmetic is a bug.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ParamSig {
    pub even: Vec<String>,
    pub odd: Vec<String>,
}

impl ParamSig {
    pub fn new(even: &[&str], odd: &[&str]) -> Arc<Self> {
        let sig = ParamSig {
            even: even.iter().map(|s| s.to_string()).collect(),
            odd: odd.iter().map(|s| s.to_string()).collect(),
        };
        let mut names: Vec<&String> = sig.even.iter().chain(sig.odd.iter()).collect();
        names.sort();
        names.dedup();
        assert_eq!(
            names.len(),
            sig.even.len() + sig.odd.len(),
            "duplicate parameter name in signature"
        );
        assert!(sig.odd.len() <= 64, "at most 64 odd parameters");
        Arc::new(sig)
    }

    pub fn even_index(&self, name: &str) -> Option<usize> {
        self.even.iter().position(|n| n == name)
    }

    pub fn odd_index(&self, name: &str) -> Option<usize> {
        self.odd.iter().position(|n| n == name)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("scalar has no invertible body: {0}")]
    NotInvertible(String),
    #[error("pole at the requested limit point: {0}")]
    PoleAtLimit(String),
    #[error("substituted value for an inverted variable is zero: {0}")]
    ZeroSubstitution(String),
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("signature mismatch")]
    SignatureMismatch,
}
