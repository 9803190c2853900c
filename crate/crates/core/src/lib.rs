//! Free algebra on two compatible associative products, realized on labeled
//! planar rooted trees, with exact rational arithmetic throughout.
//!
//! The crate provides:
//!
//! - labeled planar rooted trees with canonical text forms and exhaustive
//!   enumeration ([`tree`]);
//! - grafting primitives and the branch-splitting coproduct ([`products`]),
//!   with the full product structure, bilinear/unital extensions, pencil
//!   products, evaluation and exact inversion in ([`algebra`]);
//! - expression syntax over the two products, the rewriting system to
//!   normal form and the monomial bases ([`expr`], [`rewrite`], [`basis`]);
//! - rank-based freeness checks and the fueled generation recursion
//!   ([`bridge`]);
//! - Catalan/Narayana combinatorics, truncated series and q-character
//!   identity checkers ([`combinat`], [`series`], [`checks`]);
//! - the full verification suite behind the CLI ([`verify`]).

pub mod algebra;
pub mod basis;
pub mod bridge;
pub mod checks;
pub mod combinat;
pub mod error;
pub mod expr;
pub mod lincomb;
pub mod matrix;
pub mod products;
pub mod rational;
pub mod report;
pub mod rewrite;
pub mod series;
pub mod text;
pub mod tree;
pub mod verify;

pub use algebra::{GeneratorAssignment, TreeAlgebra};
pub use error::{Error, Result};
pub use lincomb::{bilinear, parse_lincomb, Key, LinComb};
pub use matrix::{FactoredSystem, SparseMatrix};
pub use rational::Rational;
pub use tree::{enumerate_trees, visit_trees, Alphabet, Label, PlanarTree, TreePair, VertexAddr};
