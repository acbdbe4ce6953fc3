//! Finite commutative Moufang loops: Cayley tables, multiplication groups,
//! central series, subloop lattices and executable checks of their structure
//! theory.

pub mod constructions;
pub mod error;
pub mod loops;
pub mod mult_group;
pub mod perm;
pub mod report;
pub mod structure;
pub mod text;
pub mod verify;

pub use constructions::{build, build_cml, ConstructionSpec};
pub use error::{Error, Result};
pub use loops::{Cml, Element, FiniteLoop, Subloop};
pub use perm::{Permutation, PermutationGroup};
pub use report::{CheckConfig, CheckReport, Mode, Status, Witness};
