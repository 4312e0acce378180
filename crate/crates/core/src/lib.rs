//! Bridgeland stability conditions on derived categories of Dynkin and small
//! acyclic quivers.
//!
//! The crate evaluates the global dimension function `gldim` on stability
//! conditions, constructs the Gepner point `τ(σ) = (−2/h)·σ` of a Dynkin
//! quiver, models the totally stable locus of type `A_n` by convex polygons,
//! and checks closed-form charts for `A_2` and the Kronecker quiver as well as
//! q-deformed central charges at the level of Grothendieck groups.
//!
//! Everything here is pure computation over `alloc`; file formats, figures and
//! the command line live in the `stabgld` companion crate.
#![no_std]
#![forbid(unsafe_code)]
// `!(x < y)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod derived;
mod error;
pub mod gepner;
pub mod linalg;
pub mod optim;
pub mod polygon;
pub mod qstab;
pub mod quiver;
pub mod sampling;
pub mod stability;
pub mod tame;

pub use derived::{DerivedCategory, IndecModule, IndecObject, RootId};
pub use error::{Error, Result};
pub use quiver::{DimVector, DynkinType, EulerData, Quiver, QuiverKind};
pub use stability::{CentralCharge, ChartEntry, HeartCharge, SlicingChart, StabRep};

/// Absolute tolerance used for phase comparisons and tie detection.
pub const PHASE_TOL: f64 = 1e-12;
