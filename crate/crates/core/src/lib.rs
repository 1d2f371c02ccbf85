//! Photon-number link budget of a coherent microwave transmission line: a
//! room-temperature rectangular waveguide between cryogenic nodes, terminated
//! by a loop-antenna / LC detector.
//!
//! The crate covers the closed-form chain (TE10 mode physics -> photon
//! transport -> antenna detection), parameter sweeps and inverse design on
//! top of it, and an independent stochastic verification of the transport
//! law by Langevin trajectory ensembles.
//!
//! All operations are pure functions of their inputs; values are immutable
//! after construction and safe to share between threads. Parallel paths
//! (sweeps, trajectory ensembles) are deterministic for a fixed seed
//! regardless of thread count.

// Validation guards are written as negated comparisons (`!(x > 0.0)`) so
// that NaN fails them too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod design;
pub mod error;
pub mod langevin;
pub mod link;
pub mod receiver;
pub mod scenario;
pub mod waveguide;

pub use error::{Error, Result};
pub use scenario::{LinkBudget, Scenario};
