//! Exact tools for the facets of Steiner cut dominants.
//!
//! The crate certifies facet inequalities by root bases, builds laminar root
//! bases by uncrossing, applies the facet-preserving graph operations,
//! classifies facets for at most five terminals via Steiner trees and cacti,
//! and cross-checks everything against a brute-force vertex enumeration of
//! the blocking polyhedron. All arithmetic is exact.

pub mod cli;
pub mod cuts;
pub mod error;
pub mod exactla;
pub mod facets;
pub mod graph;
pub mod json;
pub mod laminar;
pub mod oracle;
pub mod rational;
pub mod search;
pub mod transforms;
pub mod treecactus;

pub use error::{Error, Result};
pub use graph::{CutSet, EdgeVector, Graph, NodeSet, SteinerGraph, WeightedSteinerGraph};
pub use rational::Rational;
