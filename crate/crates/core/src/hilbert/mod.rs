//! Complex linear-algebra substrate: bases, states, operators, density
//! matrices, and equivalence up to global phase.

mod basis;
mod density;
pub mod eigen;
mod operator;
mod state;

pub use basis::{tensor_basis, ModeBasis};
pub use density::{uhlmann_fidelity, uhlmann_fidelity_general, DensityMatrix};
pub use operator::{equal_up_to_global_phase, Operator};
pub use state::StateVector;
