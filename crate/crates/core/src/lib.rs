//! Exact computations in the degenerate affine walled Brauer category and its
//! level-two cyclotomic quotients.
//!
//! - [`arith`]: rationals, polynomials, truncated series, linear algebra.
//! - [`diagram`]: objects, walled Brauer diagrams, dotted monomials.
//! - [`affine`]: multiplication and reduction to regular monomials.
//! - [`cyclotomic`]: the level-two quotient, its basis and centre.
//! - [`glrep`]: the action on a module tensored with copies of `V` and `V*`.
//! - [`young4`]: 4-Young diagrams and predicted eigenvalues.
//!
//! The [`guide`] module holds the chapters of the book in `book/`.

pub mod affine;
pub mod arith;
pub mod diagram;
pub mod error;
pub mod glrep;
pub mod cyclotomic;
pub mod relations;
pub mod young4;

pub use error::{Error, Result};

/// Chapters of the guide in `book/src`, included so their examples run as doctests.
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/diagrams.md")]
    pub mod diagrams {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    pub mod polynomials {}
    #[doc = include_str!("../../../book/src/affine.md")]
    pub mod affine {}
    #[doc = include_str!("../../../book/src/cyclotomic.md")]
    pub mod cyclotomic {}
    #[doc = include_str!("../../../book/src/representation.md")]
    pub mod representation {}
    #[doc = include_str!("../../../book/src/young.md")]
    pub mod young {}
}
