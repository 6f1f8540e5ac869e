//! Flat limits of colliding point ideals, colengths and Hilbert-Samuel
//! multiplicities of their powers, and the singularity descriptors of the
//! limiting pluricomplex Green function.

pub mod analysis;
pub mod descriptor;
pub mod error;
pub mod family;
pub mod groebner;
pub mod ideal;
pub mod multiplicity;
pub mod par;
pub mod poly;
pub mod staircase;

pub use error::{Error, Result};
