//! Exact invariants of Legendrian links presented by plat front diagrams:
//! graded normal rulings and ruling polynomials, the Chekanov-Eliashberg
//! differential graded algebra over Z[t, t^-1], augmentations to finite
//! fields, and Morse complex sequences connecting the two counts.

pub mod algebra;
pub mod aug;
pub mod dga;
pub mod error;
pub mod front;
pub mod maslov;
pub mod mcs;
pub mod report;
pub mod rulings;

pub use error::{Error, Result};
