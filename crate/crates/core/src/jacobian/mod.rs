//! Monomials, homogeneous polynomials, Jacobian rings and exact linear algebra.

pub mod elimination;
mod linear_map;
pub mod modp;
mod monomial;
mod poly;
mod ring;

pub use linear_map::{mult_map, pairing_matrix, BasisLabel, KernelBasis, LinearMap, RankKernel, RankMode};
pub use monomial::{binomial, Monomial};
pub use poly::HomogeneousPolynomial;
pub use ring::{fermat_hilbert_series, fermat_polynomial, GradedBasis, HypersurfaceRing};
