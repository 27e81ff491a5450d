//! Finite groupoids with symmetric monoidal, AC and 2-ring structure, checked
//! axiom by axiom against explicit tables.

pub mod ac;
pub mod check;
pub mod cli;
pub mod error;
pub mod family;
pub mod fixtures;
pub mod groupoid;
pub mod homs;
pub mod monoidal;
pub mod tensor;
pub mod tworing;

pub use check::{AxiomOutcome, AxiomReport, CheckConfig, Coverage, Status, Witness};
pub use error::{Error, Result};
pub use groupoid::{FinGroupoid, GFunctor, GroupoidBuilder, MorId, ObjId};
