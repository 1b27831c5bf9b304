//! Exact branching laws of generalized Verma modules for symmetric pairs.
//!
//! Layers, bottom-up: [`exactla`] (exact linear algebra), [`liealg`]
//! (classical realizations, roots, Weyl groups, characters), [`pairs`]
//! (symmetric pair catalog), [`parabolic`] (closedness, GK dimensions,
//! censuses) and [`branching`] (character engine and closed-form laws).

pub mod branching;
pub mod error;
pub mod exactla;
pub mod exec;
pub mod liealg;
pub mod pairs;
pub mod parabolic;

pub use error::{Error, Result};
pub use exec::Exec;

/// Bumped whenever engine output for a fixed input may change.
pub const ENGINE_VERSION: &str = concat!("vbranch-core/", env!("CARGO_PKG_VERSION"));
