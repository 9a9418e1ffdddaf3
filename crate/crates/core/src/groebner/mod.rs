//! Sparse multivariate polynomials under grevlex, Buchberger's algorithm
//! and the ideal operations built on it.

mod buchberger;
mod ideal;
mod monomial;
mod poly;
mod text;

use thiserror::Error;

use crate::fields::FieldError;

pub use buchberger::{
    buchberger, buchberger_with, is_groebner_basis, normal_form, reduce_basis, s_polynomial, BuchbergerOptions,
    BuchbergerStats,
};
pub use ideal::{
    colon, ideal_equal, ideal_member, intersect, quotient_dimension, read_ideal_file, write_ideal_file,
    write_polynomials, Ideal,
};
pub use monomial::{grevlex_cmp, Monomial};
pub use poly::{PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("exponent vectors of lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("not a Groebner basis: an S-polynomial reduces to {0:?}")]
    NotAGroebnerBasis(Box<Polynomial>),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("division is not exact")]
    InexactDivision,
    #[error("the ideal is the whole ring")]
    UnitIdeal,
    #[error("invalid variable name {0:?}")]
    InvalidVariable(String),
    #[error("duplicate variable {0:?}")]
    DuplicateVariable(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error(transparent)]
    Field(#[from] FieldError),
}
