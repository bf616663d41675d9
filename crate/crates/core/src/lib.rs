//! Finite Krasner (m,n)-hyperrings and (m,n)-hypermodules.
//!
//! Structures are small dense tables over carriers of at most 128 elements.
//! The crate validates the axiom stack, enumerates hyperideal and
//! subhypermodule lattices, decides the multiplication property, builds
//! quotients and direct sums, checks the theorems of the theory on concrete
//! instances and searches small structures for counterexamples.

pub mod carrier;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod harness;
pub mod limits;
pub mod module;
pub mod multiplication;
pub mod ops;
pub mod report;
pub mod ring;
pub mod search;
pub mod set;
pub mod substructures;

pub use carrier::Carrier;
pub use error::{Error, Result};
pub use limits::Limits;
pub use module::{Hypermodule, ScalarAction};
pub use ops::{HyperOperation, Operation};
pub use ring::KrasnerHyperring;
pub use set::ElementSet;
