//! # kirkwood
//!
//! Kirkwood quasiprobability distributions, conditional Kirkwood
//! distributions and weak values on finite-dimensional Hilbert spaces, plus
//! an audit that decides whether a complex-valued distribution can rank
//! plausibility.
//!
//! - [`hilbert`]: states, density matrices, bases, observables.
//! - [`quasiprob`]: `K(a,b)`, `K(m|a,b)`, weak values, marginals,
//!   reconstruction of ρ, and the classical Bayes update for contrast.
//! - [`coxaudit`]: curves of complex values, self-intersection and closure
//!   tests, the order-preserving unwinding and rankings.
//! - [`scenarios`]: the angular-momentum circle, the wavefunction as a
//!   conditional Kirkwood distribution, and Kirkwood/conjugate pairs.
//! - [`weaksim`]: a qubit-meter weak-measurement simulator that infers a weak
//!   value from ordinary outcome statistics.
//!
//! Numerical thresholds are collected in [`Tolerances`].

#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coxaudit;
pub mod error;
pub mod hilbert;
pub mod quasiprob;
pub mod scenarios;
pub mod tolerance;
pub mod weaksim;

pub use error::{Error, Result};
pub use nalgebra;
pub use num_complex::Complex64;
pub use tolerance::Tolerances;
