//! Closed-form stationary solutions of the elastically coupled extensible
//! double beam
//!
//! ```text
//! A²u + C_u Au + k(u − v) = 0,    C_u = β + ϱ‖A^{1/2}u‖²
//! A²v + C_v Av − k(u − v) = 0,    C_v = β + ϱ‖A^{1/2}v‖²
//! ```
//!
//! expanded in the eigenbasis of `A`, together with a tag-blind residual
//! verifier and a brute-force Galerkin oracle.

pub mod error;
pub mod mode_sets;
pub mod solution;
pub mod spectrum;
pub mod unimodal;
pub mod ee;
pub mod bimodal;
pub mod convert;
pub mod inventory;
pub mod oracle;
pub mod single_beam;

pub use error::{Error, Result};
pub use solution::{ModalSolution, Params, Tag};
pub use spectrum::{Generator, Spectrum};
