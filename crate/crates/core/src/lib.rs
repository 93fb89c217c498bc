pub mod cartier;
pub mod error;
pub mod ff;
pub mod howe;
pub mod legendre;
pub mod mpoly;
pub mod upoly;

pub use error::{Error, Result};
pub use ff::{Elem, Field};
pub use upoly::UniPoly;
