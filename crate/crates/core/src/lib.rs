//! Minimum excess-work protocols for finite-time separation of a binary
//! ideal gas with two semipermeable membranes.
//!
//! The gas sits in a container split into three compartments by a membrane
//! permeable only to species alpha (left) and one permeable only to
//! species beta (right). Moving the membranes from the mixed state
//! `(x_l, x_r) = (0, 0)` to complete separation costs the reversible work
//! plus an excess that, for slow operation, is the squared thermodynamic
//! length of the control path divided by the operation time.
//!
//! - [`model`]: parameters, states, reversible work.
//! - [`geometry`]: the excess-work metric, Christoffel symbols, path length.
//! - [`analytic`]: closed forms along the symmetric path and limit regimes.
//! - [`geodesic`]: shooting for length-minimizing protocols.
//! - [`simulate`]: full finite-time dynamics and excess work.

pub mod analytic;
pub mod cli;
pub mod config;
pub mod csvio;
pub mod error;
pub mod geodesic;
pub mod geometry;
pub mod interp;
pub mod model;
pub mod ode;
pub mod roots;
pub mod simulate;
pub mod verify;

pub use error::{Error, Result};
pub use model::{ConfigPoint, GasState, SystemParams};
