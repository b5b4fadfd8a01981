//! Rotatable-antenna uniform linear arrays: element and array gain
//! models, max-min multi-beam optimization, and an experiment harness.
//!
//! | module | what it holds |
//! |---|---|
//! | [`array_model`] | 3GPP element pattern, steering vectors, array gain |
//! | [`convex`] | barrier-method solver for the weight subproblem |
//! | [`sca`] | successive convex approximation over the weights |
//! | [`pso`] | particle swarm over element rotations |
//! | [`ao`] | alternating optimization, baselines, closed-form single beam |
//! | [`experiment`] | scenario files, batch runs, sweeps, pattern CSVs |
//!
//! Each capability has a runnable program under `examples/`.

// `!(x > 0.0)` is used on purpose throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ao;
pub mod array_model;
pub mod convex;
pub mod error;
pub mod experiment;
pub mod pso;
pub mod sca;
pub mod units;
