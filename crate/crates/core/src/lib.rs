//! Efficient closed domination (ECD) in digraphs and in the four standard
//! digraph products.
//!
//! A set `S` of vertices is an ECD set when the closed out-neighborhoods
//! `N+[v]`, `v ∈ S`, partition the vertex set. This crate provides an exact
//! ECD solver, the product constructions, recognizers and constructors for
//! the digraph families that characterize ECD Cartesian products with
//! cycles and stars, fast deciders for ECD products, and a harness that
//! cross-checks every decider against exhaustive search.

pub mod bitset;
pub mod digraph;
pub mod edgelist;
pub mod error;
pub mod families;
pub mod generators;
pub mod harness;
pub mod products;
pub mod solver;
pub mod theorems;

pub use bitset::VertexSet;
pub use digraph::{Digraph, VertexClass};
pub use error::{Error, Result};
pub use products::{product, ProductKind};
pub use solver::{find_ecd_set, is_ecd_set, EcdCertificate, SearchBounds};
