//! Exact structured linear algebra over word-size prime fields.
//!
//! The crate computes leading principal submatrices of the Hermite normal
//! form (HNF) of univariate polynomial matrices that are given compactly by
//! displacement generators. The main entry points are:
//!
//! * [`hnfcore::hermite_submatrix`] — the submatrix computation itself, a
//!   Las Vegas procedure built on modular structured system solving
//!   ([`modsolve`]) and relation bases ([`polymat`]);
//! * [`bivar::change_order`] — the application to zero-dimensional bivariate
//!   ideals: from a minimal degree-reverse-lexicographic Gröbner basis to the
//!   reduced lexicographic one, through a block-Toeplitz matrix of small
//!   displacement rank.
//!
//! Everything is exact arithmetic in Z/pZ for an odd word-size prime p.
//! Randomized routines never return a wrong result: they report `Fail` or
//! `Singular` flags instead, and all randomness flows through an explicit
//! seeded [`field::Rng`].

#![allow(clippy::needless_range_loop)]
#![allow(clippy::too_many_arguments)]

pub mod bivar;
pub mod field;
pub mod hnfcore;
pub mod modsolve;
pub mod poly;
pub mod polymat;
pub mod structured;

use thiserror::Error;

/// Errors for contract violations and unusable inputs.
///
/// Las Vegas outcomes (`Fail`, `Singular`) are not errors; they are carried
/// by the outcome enums of [`modsolve`] and [`hnfcore`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be an odd prime of at most 63 bits, got {0}")]
    NotPrime(u64),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("requested {requested} distinct points but the sample set has only {available}")]
    TooFewPoints { requested: u64, available: u64 },
    #[error("field with {p} elements is too small: need at least {needed} elements")]
    FieldTooSmall { p: u64, needed: u128 },
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("interpolation points must be pairwise distinct")]
    DuplicatePoints,
    #[error("polynomials are not coprime")]
    NotCoprime,
    #[error("rational reconstruction has no solution within the degree bounds")]
    NoSolution,
    #[error("operation requires nonzero polynomials")]
    ZeroInput,
    #[error("matrix shapes do not match: {0}")]
    ShapeMismatch(&'static str),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not in shifted reduced form")]
    NotReduced,
    #[error("leading row entries are not coprime with the modulus")]
    GcdNotOne,
    #[error("relation basis does not have the expected generic-row shape")]
    NotHrowShape,
    #[error("index tuple must be strictly increasing within bounds")]
    BadIndexTuple,
    #[error("index tuple for the Hermite submatrix must start at 0 and be nonempty")]
    BadSubmatrixIndices,
    #[error("input is not a minimal DRL basis sorted by leading y-degree: {0}")]
    NotMinimalBasis(&'static str),
    #[error("the zero polynomial has no leading monomial")]
    ZeroPolynomial,
    #[error("y-degree {ydeg} exceeds the block bound {bound}")]
    DegreeTooHigh { ydeg: usize, bound: usize },
    #[error("lexicographic basis is still incomplete at the maximal submatrix size")]
    LexIncomplete,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
