//! Exact computations with Jacobian rings of Fermat-type hypersurfaces:
//! graded pieces, Hodge numbers, Fermat characters, the infinitesimal
//! invariant of the cubic sixfold triple, and the structure of the kernel of
//! the multiplication map `R^3 ⊗ R^3 → R^6`.

pub mod cli;
pub mod error;
pub mod fermat;
pub mod hodge;
pub mod jacobian;
pub mod kermu;
pub mod nl;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar, Symbol};
