//! Averaging operators for compact groups acting orthogonally on real vector
//! spaces, and the closed-form generalisation-gap predictions they control in
//! invariant/equivariant least-squares regression.
//!
//! The crate is organised around the pipeline used by the experiments:
//!
//! * [`group`] — finite groups (cyclic, symmetric, dihedral, products) with
//!   exact enumeration, plus SO(2) discretised by equispaced quadrature, and
//!   orthogonal representations of them.
//! * [`symmetrize`] — the vector averager `Φ_G`, the intertwiner projector
//!   `Ψ_G` (a dense d×k×d×k operator), characters, the `J_G` matrix and
//!   Monte Carlo averaging of arbitrary functions over a group.
//! * [`theory`] — the exact expected generalisation gap of the minimum-norm
//!   least-squares fit against its symmetrised version, in all three sample
//!   regimes, plus the VC-style width bound for weight-tied networks.
//! * [`regress`] — seeded Monte Carlo harness measuring empirical gaps and the
//!   supporting pseudo-inverse/projection-moment oracles and the Rademacher
//!   complexity experiment.
//! * [`nn`] — small ReLU networks with layer-wise intertwiner projection:
//!   projected gradient descent, the equivariance penalty and the
//!   single-layer equivariance-error bound.
//! * [`catalog`] — the built-in (group, representation) pairs used by the
//!   verification suites and the CLI.

pub mod catalog;
pub mod error;
pub mod group;
pub mod nn;
pub mod regress;
pub mod stats;
pub mod symmetrize;
pub mod theory;

pub use error::{CoreError, Result};
pub use group::{Element, Group, GroupOrder, Representation, VerificationReport};
pub use stats::MeanStderr;
pub use symmetrize::{IntertwinerProjector, VectorAverager};
pub use theory::{GapPrediction, GapValue, Regime, RegimeValue};
