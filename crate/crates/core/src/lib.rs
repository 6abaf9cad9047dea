//! Exact verification toolkit for cycle-plus-triangles graphs.
//!
//! * [`parity`]: odd number of Eulerian transversals in partitioned graphs,
//!   cross-checked by counting special sequences.
//! * [`geometry`]: inscribed polygons, chord crossings and the odd number of
//!   even-crossing edge selections.
//! * [`laurent`]: the constant term of Φ by sparse expansion and by a
//!   weighted sum over a 3-point-per-vertex grid.
//! * [`coloring`]: proper 3-colourings, their orbit count, the connected
//!   red-blue colouring and explicit list colourings.
//!
//! All arithmetic is exact (`BigInt` / `BigRational`).

pub mod coloring;
pub mod error;
pub mod geometry;
pub mod io;
pub mod laurent;
pub mod model;
pub mod parity;
pub mod rng;

pub use error::{Error, FormatError, Result};
pub use io::{read_instance, write_instance, Instance};
pub use model::{ChordSystem, CycleTrianglesInstance, PartitionedGraph, Transversal};
pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
pub use rng::SeededRng;
