//! A model-management engine built on finite directed multigraphs.
//!
//! Metamodels are sketches: a graph together with diagram-predicate
//! constraints. Models are graphs typed over a metamodel graph. On top of
//! that base the crate provides:
//!
//! - limits and colimits of graphs ([`graph`]), used for everything else;
//! - constraint checking and retyping along metamodel morphisms ([`sketch`]);
//! - path queries, view definitions and view execution ([`query`]);
//! - correspondence-based model matching and colimit merge ([`merge`]);
//! - update spans, realignment, symmetric delta lenses and a randomized
//!   law-checking harness ([`lens`]).
//!
//! All values are immutable after construction; no operation mutates its
//! inputs, so everything can be shared freely across threads. The law
//! harness runs independent cases in parallel when the `parallel` feature
//! (default) is enabled; results are identical either way.

pub mod graph;
pub mod lens;
pub mod merge;
pub mod par;
pub mod query;
pub mod sketch;
