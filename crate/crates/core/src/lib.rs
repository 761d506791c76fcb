//! Exact computation in Lie algebras of polynomial vector fields on affine
//! spaces of dimension at most 3 and on the cyclic quotient surfaces `X_{d,e}`.
//!
//! Arithmetic is exact throughout: rationals, or cyclotomic fields when a root
//! of unity is needed.

pub mod borel1;
pub mod error;
pub mod generate;
pub mod lattice;
pub mod liealg;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod vecfield;

pub use error::{Error, Result};
pub use generate::BracketWord;
pub use lattice::{LatticeParams, LatticePath, LatticePoint};
pub use liealg::{NamedAlgebra, SpanBasis, Tag};
pub use parse::{parse_poly, parse_vecfield, parse_word, ParseError};
pub use poly::{Monomial, Poly};
pub use scalar::{Field, Scalar};
pub use vecfield::{Bidegree, Generator, PolyAutomorphism, VecField};
