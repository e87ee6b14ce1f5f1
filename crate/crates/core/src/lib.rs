//! Exact 2-colourability workbench for non-uniform hypergraphs.
//!
//! The crate is split by concern:
//!
//! * [`hypergraph`] and [`dyadic`] hold the data model: hypergraphs with
//!   canonical edge order, exact `q(H) = Σ 2^{-|e|}` values and big binomials.
//! * [`colouring`] decides and enumerates proper red/blue colourings.
//! * [`constructions`] builds the named small instances (triangle, Fano,
//!   Seymour–Toft, the GF(4) affine plane and its derived 8-uniform part).
//! * [`alteration`] runs the random-sampling-plus-repair construction of a
//!   non-2-colourable hypergraph with two edge sizes.
//! * [`analysis`] checks t-designs, edge-criticality and the full set of facts
//!   about the 16-vertex example.
//! * [`io`] and [`report`] provide the text document format and run reports
//!   used by the `propb` binary.

pub mod alteration;
pub mod analysis;
pub mod colouring;
pub mod constructions;
pub mod dyadic;
pub mod error;
pub mod hypergraph;
pub mod io;
pub mod report;

pub use colouring::{Colouring, EnumerationReport};
pub use dyadic::{binomial, BigCount, DyadicValue};
pub use error::{Error, Result};
pub use hypergraph::{Edge, Hypergraph, VertexId};
