pub mod error;
pub mod linalg;
pub mod rootdata;
pub mod tate;
pub mod charring;
pub mod brauer;
pub mod dualhom;
pub mod grcombi;
pub mod suite;

pub use error::{Error, Result};
