pub mod classify;
pub mod count;
pub mod curve;
pub mod doc;
pub mod error;
pub mod gf;
pub mod poly;
pub mod quartic;

pub use error::{Error, Result};
pub use gf::{Field, FieldSpec, Fq};
