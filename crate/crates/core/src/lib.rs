pub mod claims;
pub mod config;
pub mod congruences;
pub mod error;
pub mod float;
pub mod hurwitz;
pub mod lvalues;
pub mod modforms;
pub mod numerics;
pub mod qseries;
pub mod report;
pub mod sequences;

pub use error::{Error, Result};
