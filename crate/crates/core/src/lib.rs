//! Exact computer algebra for quasi-Hopf algebras, their module categories
//! and anti-Yetter-Drinfeld modules in two equivalent presentations.

pub mod algebra;
pub mod ayd;
pub mod checks;
pub mod error;
pub mod io;
pub mod matrix;
pub mod repcat;
pub mod report;
pub mod scalar;
pub mod solve;
pub mod sweedler;
pub mod tensor;
pub mod zoo;

pub use algebra::{Bracketing, Elem, QuasiHopfAlgebra, QuasiHopfParts};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use repcat::{Module, ModuleMap};
pub use report::{CheckItem, CheckReport, Witness};
pub use scalar::{Field, Scalar};
pub use tensor::Tensor;
