//! Cyclohedra, cyclic bracketings, and the cobar construction for cyclic
//! operads and their modules.

pub mod bracketings;
pub mod chains;
pub mod cobar;
pub mod combinatorics;
pub mod error;
pub mod linalg;
pub mod operads;
pub mod polytopes;
pub mod poset;
pub mod traces;

pub use error::{Error, Result};
