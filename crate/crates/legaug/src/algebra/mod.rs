pub mod fq;
pub mod laurent;
pub mod rhs;

pub use fq::{prime_power, Fq, FqElem};
pub use laurent::LaurentPoly;
pub use rhs::{q_power, rhs_exact};
