//! Graded pieces of a Jacobian ring, generic and Fermat.

use grifcalc::jacobian::{HomogeneousPolynomial, HypersurfaceRing};

fn main() -> grifcalc::Result<()> {
    let fermat = HypersurfaceRing::fermat(3, 6);
    println!("Fermat cubic in 6 variables: dims {:?}", fermat.dims(6));
    println!("R^3 basis: {:?}", fermat.quotient_basis(3).monomials().iter().map(|m| m.to_string()).collect::<Vec<_>>());

    let f = HomogeneousPolynomial::parse("x0^3 + x1^3 + x2^3 + x3^3 + x0*x1*x2", 4)?;
    let ring = HypersurfaceRing::new(f)?;
    println!("perturbed cubic surface: dims {:?}, socle {}", ring.dims(4), ring.socle_monomial()?);

    let p = HomogeneousPolynomial::parse("x0^2*x1 + x2^3", 4)?;
    println!("normal form of {p}: {}", ring.normal_form(&p)?);
    Ok(())
}
