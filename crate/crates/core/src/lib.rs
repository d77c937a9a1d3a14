//! Simulation of a hybrid polarization/spatial-mode photonic qudit gate set.
//!
//! The crate models linear-optical circuits over a polarization ⊗ path
//! Hilbert space: ideal generalized Pauli gates, optical-component netlists
//! compiled to unitaries, interferometric state reconstruction, seeded
//! Monte Carlo photon counting under calibrated component noise, and
//! closed-form resource estimates.
//!
//! The `parallel` feature (on by default) runs independent basis-input and
//! seed sweeps on a rayon pool; disabling it yields a fully sequential build
//! with identical outputs.

pub mod error;
pub mod circuits;
pub mod components;
pub mod gates;
pub mod hilbert;
pub mod montecarlo;
pub mod resources;
pub mod tolerances;
pub mod tomography;

pub use error::{Error, Result};

/// Re-export of the linear-algebra backend for downstream matrix access.
pub use nalgebra;

/// Complex scalar used throughout.
pub type C64 = nalgebra::Complex<f64>;

/// Shorthand constructor for [`C64`].
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
