pub mod catalog;
pub mod cocycle;
pub mod cohomology;
pub mod commands;
pub mod corpus;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod report;
pub mod ring;
pub mod spec_lang;
pub mod verify;

pub use error::{Error, Result};
