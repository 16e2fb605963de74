pub mod algebra;
pub mod aut;
pub mod census;
pub mod curve;
pub mod eo;
pub mod error;
pub mod igusa;
pub mod strata;

pub use error::{Error, Result};
