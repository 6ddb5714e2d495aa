//! Free products `G = G_1 * ... * G_n`, the Bass-Serre tree of the base
//! splitting, and the factorization of pure symmetric automorphisms into
//! Whitehead automorphisms, a factor automorphism and an inner automorphism
//! by volume reduction.
//!
//! The crate is `no_std` and needs only `alloc`. Factor indices are 0-based
//! in the API and 1-based in every rendered form.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod autos;
mod error;
mod explorer;
mod factor;
mod labelling;
mod reduction;
pub mod sample;
mod tree;
mod word;

pub use autos::{Factorization, PureSymmetricAuto, WhiteheadAuto};
pub use error::{Error, Result};
pub use explorer::{BallFailure, BallReport, SnBall};
pub use factor::{
    CayleyTable, FactorAutoPart, FactorElement, FactorGroup, FactorMap, FactorSystem, Payload,
    SystemId, Violation,
};
pub use labelling::{ALabel, AlphaLabel, SpokeGraph};
pub use reduction::{FoldWitness, MoveRecord, Reduction};
pub use tree::{Ball, TreeVertex};
pub use word::{DoubleCosetSplit, Word};
