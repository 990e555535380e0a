//! Exact models of almost toric base diagrams, tropical curves inside them,
//! and the surfaces (tropical and visible Lagrangians) those curves describe.
//!
//! Everything is integer or rational arithmetic. The crate is `no_std` and only
//! needs `alloc`; parsing, rendering and the command-line front end live in
//! `troplag-cli`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod constructions;
pub mod diagram;
pub mod error;
pub mod homology;
pub mod lattice;
#[cfg(feature = "sampling")]
pub mod sampling;
pub mod topology;
pub mod tropical;

pub use diagram::{BaseDiagram, BoundaryEdge, DiagramKind, HomologyModel, Location, Node};
pub use error::{Error, Result};
pub use homology::{mod2_class, pontryagin_square, Mod2Class};
pub use lattice::{
    frac, int, primitive_of, rot90, wedge, IntVec, RatPoint, Rational, UnimodularAffineMap,
};
pub use topology::{
    analyze, classify, euler_characteristic, EndKind, SurfaceAnalysis, SurfaceClass,
};
pub use tropical::{CurveEnd, EndSource, InternalEdge, Terminal, TropicalCurve, TropicalVertex};
