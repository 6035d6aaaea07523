//! Disjointness graphs of x-monotone curves.
//!
//! The crate has three layers:
//!
//! * combinatorics: ordered graphs with one to three total orders, the
//!   semi-comparability / magical / double-magical predicates, the magical
//!   closure, and the four induced partial orders ([`graph`]);
//! * geometry: exact rational polylines, intersection predicates,
//!   disjointness graphs, curve realizations of magical and double-magical
//!   graphs, and an SVG renderer ([`geom`], [`realize`], [`svg`]);
//! * search: constructive colorings with certified palette bounds
//!   ([`coloring`]), randomized extremal constructions with exhaustive
//!   claim verifiers ([`construct`]), and brute-force ground-truth oracles
//!   ([`oracle`]).
//!
//! Text formats for graphs, curve families and colorings live in
//! [`mod@format`]; seeded corpus generators used by the test suites live in
//! [`corpus`].

// bitset word loops index several parallel arrays; iterators obscure them
#![allow(clippy::needless_range_loop)]

pub mod coloring;
pub mod construct;
pub mod corpus;
pub mod error;
pub mod format;
pub mod geom;
pub mod graph;
pub mod oracle;
pub mod realize;
pub mod svg;

pub use error::Error;
pub use graph::{OrderedGraph, TotalOrder, VertexId};
