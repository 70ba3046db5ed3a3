//! Exact root-system, alcove and implosion-stratum combinatorics for compact
//! simply connected simple Lie groups.
//!
//! Roots are stored as rational functionals with the `2πi` factor removed,
//! so "`α(ξ) ∈ 2πiZ`" becomes integrality of `(α, ξ)`.

pub mod alcove;
pub mod dynkin;
pub mod error;
pub mod exact;
pub mod implosion;
pub mod lattice;
pub mod rootsys;

pub use alcove::{Alcove, AlcoveFace, FaceRootData, GammaShift, ToricData};
pub use dynkin::{CartanType, TypeLabel};
pub use error::{Error, Result};
pub use implosion::{Implosion, StratumRecord};
pub use rootsys::RootDatum;
