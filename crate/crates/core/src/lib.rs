//! Exact computations in the derived category of bounded chain complexes
//! over the rationals, organised around simplicial objects: a normalized
//! simple functor, simplicial cylinders and cones, roofs modulo homotopy,
//! cofiber triangles, cogroup structures on suspensions, and spectral
//! sequences of filtered cochain complexes.

pub mod chain;
pub mod cogroup;
pub mod error;
pub mod exactla;
pub mod filtered;
pub mod homotopy;
pub mod random;
pub mod simpobj;
pub mod simpsets;
pub mod triangles;

pub use chain::{ChainComplex, ChainMap, GradedMap};
pub use error::{Error, Result};
pub use exactla::{Matrix, Scalar, Subspace};
