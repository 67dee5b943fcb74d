pub mod error;
pub mod field;

pub use error::{Error, Result};
pub mod lattice;
pub mod ehrhart;
pub mod algebra;
pub mod integration;
pub mod lefschetz;
pub mod corpus;
