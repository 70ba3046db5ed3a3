//! Floating point evaluation of quasi-Hamiltonian two-forms and moment
//! maps on U(n) and SU(n), with residual checks of the defining identities,
//! and sampling of flat connections on punctured surfaces.

pub mod adfunc;
pub mod error;
pub mod linalg;
pub mod models;
pub mod moduli;
pub mod verify;

pub use error::{NumError, Result};
pub use models::{ModelKind, QHamModel};
pub use verify::{RunConfig, VerificationReport};
