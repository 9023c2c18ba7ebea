//! Numerical toolkit for symplectic spectra of real positive definite
//! matrices: Williamson decompositions, the symplectic analogues of the
//! matrix diagonal, majorisation predicates, and constructive inverse
//! problems (build a matrix with prescribed symplectic spectrum and
//! prescribed geometric- or arithmetic-mean diagonal).

pub mod error;
pub mod horn;
pub mod linalg;
pub mod sampling;
pub mod schurhorn;
pub mod vecmaj;
pub mod williamson;

pub use error::{Error, Result};
pub use linalg::{Matrix, PositiveDefiniteMatrix, SymmetricMatrix, SymplecticMatrix};
pub use vecmaj::{MajorisationVerdict, PositiveVector};
