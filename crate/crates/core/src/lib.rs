pub mod cli;
pub mod error;
pub mod fixtures;
pub mod gf;
pub mod group;
pub mod invariants;
pub mod linalg;
pub mod mpoly;
pub mod report;
pub mod theorem;

pub use error::{Error, Result};
pub use gf::{FieldSpec, Scalar};
pub use group::{Group, GroupSpec, Hyperplane};
pub use linalg::Matrix;
pub use mpoly::MultiPoly;
