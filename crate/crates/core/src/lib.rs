pub mod codes;
pub mod error;
pub mod forms;
pub mod frame;
pub mod gftower;
pub mod harness;
pub mod hermitian;
pub mod linalg;
pub mod poly;
pub mod projgeom;
pub mod rrspace;

pub use error::{Error, Result};
pub use gftower::{FElem, FieldTower, PrimePower};
