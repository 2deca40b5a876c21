pub mod arith;
pub mod chasles;
pub mod classify;
pub mod error;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod numeric;
pub mod polynomial;
pub mod ratfunc;
pub mod resultant;
pub mod upoly;
pub mod verify;

pub use error::{Error, Result};
