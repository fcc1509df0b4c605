pub mod error;
pub mod field;
pub mod finorbits;
pub mod gf;
pub mod linalg;
pub mod localquat;
pub mod chevalley;
pub mod poly;
pub mod instability;
pub mod rootdata;

pub use error::{Error, ErrorClass, Result};
