//! Numerics for the one-dimensional thermal Hamiltonian in its shifted form
//! T = -BxB: special functions, explicit resolvent kernels, relative
//! perturbation bounds, domain regularity checks, and time-dependent
//! scattering, together with a verification suite that certifies the
//! underlying inequalities and closed-form integrals numerically.

pub mod domainlab;
pub mod dynamics;
pub mod error;
pub mod grid;
pub mod operators;
pub mod perturbation;
pub mod quad;
pub mod report;
pub mod specfun;
pub mod tolerances;

pub use error::{Error, Result};
