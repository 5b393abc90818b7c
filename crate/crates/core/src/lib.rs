//! Hyperbolic quantization of one-dimensional quantum mechanics.
//!
//! Time is eliminated by parameterizing one classical solution `u` by a
//! second solution `v` of the same energy. Quantizing the resulting
//! constraint gives the wave-type equation
//!
//! ```text
//! [ -(ħ²/2m) ∂²/∂u² + (ħ²/2m) ∂²/∂v² + V(u) - V(v) ] Ψ(u, v) = 0
//! ```
//!
//! whose packets travel along the classical paths of the `(u, v)` plane
//! without dispersing. This crate builds those packets for the free
//! particle ([`freepacket`]) and for the particle in a box ([`boxpacket`]),
//! and provides the numerical machinery ([`numerics`], [`fields`]) and the
//! checks ([`validate`], [`classical`], [`report`]) that certify them.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boxpacket;
pub mod classical;
pub mod error;
pub mod fields;
pub mod freepacket;
pub mod numerics;
pub mod report;
pub mod validate;

pub use error::{Error, Result};
pub use fields::{Axis, Field2D, Grid2D, PhysicalConstants};
pub use numerics::{ComplexValue, QuadratureSpec};

pub use boxpacket::{BoxPacketParams, ModeCoefficient, Parity};
pub use classical::{BoxReflectedPath, Heading, LinePath, OscillatorOrbit};
pub use freepacket::{FreePacketParams, LimitSample, SpectralDensity};

pub use validate::{CurrentField, Exclusion, MomentReport, PolarField, PotentialSpec};
