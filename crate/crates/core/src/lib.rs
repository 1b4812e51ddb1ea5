//! Exact computations in the modified quantum group of `sl2`: canonical and
//! PBW bases, their transition matrices, the bilinear form computed three
//! ways, and the fusion product realized through limits of tensor-module
//! actions on `ωL(p) ⊗ L(p+m)` as `p → ∞`.

pub mod bases;
pub mod cli;
mod error;
pub mod fusion;
pub mod qarith;
pub mod repmod;
pub mod udot1;

pub use error::{Error, Result};
