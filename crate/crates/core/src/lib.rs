//! Finite loops given by Cayley tables: validation, identity checking,
//! multiplication groups, nuclei and quotients, isotopes, and the
//! Buchsteiner loops of order 1024 and 64 built from an explicit cocycle.

pub mod autotopism;
pub mod calculus;
pub mod construction;
pub mod error;
pub mod group;
pub mod identity;
pub mod isotopy;
pub mod perm;
pub mod report;
pub mod samples;
pub mod subloop;
pub mod suite;
pub mod table;
pub mod theorems;
pub mod verify;

pub use error::{LoopError, Result};
pub use perm::Perm;
pub use table::{CayleyTable, Elem};
