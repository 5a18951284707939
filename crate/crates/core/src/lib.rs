//! Envelope-theory solver for one-dimensional two-body Hamiltonians
//! H = T(p) + V(x), together with everything needed to judge its output:
//! closed-form comparison spectra, a Fourier Grid Hamiltonian reference
//! eigensolver, oscillator-trial variational bounds, and a table-emitting
//! CLI. The bundled models center on the soft-Coulomb exciton well
//! -1/sqrt(x² + D²) and the exactly solvable half-line Hulthen family.
//!
//! Start with [`model::model_from_label`] or the `make_*` constructors,
//! [`envelope::solve_level`] for the method itself, [`fgh::fgh_solve`] for
//! reference eigenpairs, and the `examples/` directory for end-to-end runs.

pub mod bounds;
pub mod cli;
pub mod envelope;
pub mod error;
pub mod fgh;
pub mod model;
pub mod output;
mod roots;
pub mod variational;
pub mod wavefunction;

pub use error::{Error, Result};
