//! Rank-one generators of ker(R^3 ⊗ R^3 → R^6) for Fermat cubics, checked by
//! span rank and by standardization.

use grifcalc::jacobian::{HomogeneousPolynomial, HypersurfaceRing};
use grifcalc::kermu::{rank_one_generators, span_equals_kernel, standardize, SpanMode};
use grifcalc::tensor::TensorSum;

fn main() -> grifcalc::Result<()> {
    let gens = rank_one_generators(6)?;
    println!("n=6: {} rank-one generators, e.g. {} and {}", gens.len(), gens[0], gens[gens.len() - 1]);

    for n in 5..=7 {
        let r = span_equals_kernel(n, SpanMode::span_exact())?;
        println!("n={n}: dim ker {} span rank {:?} verdict {}", r.dim_ker, r.span_rank, r.verdict);
    }
    let r = span_equals_kernel(7, SpanMode::Standardize)?;
    println!("n=7 standardize: {} certificate moves, verdict {}", r.certificate_moves.unwrap_or(0), r.verdict);

    let ring = HypersurfaceRing::fermat(3, 6);
    let p = |s: &str| HomogeneousPolynomial::parse(s, 6);
    let w = TensorSum::rank_one(p("x0*x1*x2")?, p("x3*x4*x5")?);
    let s = standardize(&ring, &w)?;
    for (t, c) in &s.standard {
        println!("standard part: {c} · {} ⊗ {}", t.left(6), t.right(6));
    }
    println!("certificate: {} moves", s.certificate.len());
    Ok(())
}
