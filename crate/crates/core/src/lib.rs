//! Exact-arithmetic analysis of convolutional codes over small finite fields.
//!
//! The crate builds up from table-driven GF(p^m) arithmetic ([`gf`]) and
//! polynomial linear algebra ([`poly`], [`fmat`], [`pmat`]) to codes as
//! row modules of basic encoders ([`code`]), controller-canonical-form
//! realizations ([`realization`]), weight enumerators ([`wenum`]), weight
//! adjacency matrices ([`wam`]), the family of distance parameters
//! ([`distances`]) and decision procedures for monomial and isometric
//! equivalence ([`equivalence`]).
//!
//! Everything is exact: field elements are table lookups, weight enumerator
//! coefficients are arbitrary-precision integers, and every search is a
//! finite enumeration with an explicit [`Budget`].

pub mod budget;
pub mod code;
pub mod distances;
pub mod equivalence;
pub mod error;
pub mod fmat;
pub mod gf;
pub mod io;
pub mod pmat;
pub mod poly;
pub mod realization;
pub mod sampling;
pub mod wam;
pub mod wenum;

pub use budget::Budget;
pub use code::ConvCode;
pub use equivalence::{MonomialMatrix, ZMonomialMatrix};
pub use error::{Error, Result};
pub use gf::{Field, FieldElement};
pub use poly::{InfInt, Poly};
pub use realization::Realization;
pub use wam::Wam;
pub use wenum::{WPoly, WSeries};
