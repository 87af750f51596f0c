//! The pairing matrix of P·e on R^1 × R^1 and its determinant.

use grifcalc::nl::{corner_entry, iso_det, symbolic_triple, triple, EConvention};
use grifcalc::Scalar;

fn main() -> grifcalc::Result<()> {
    let r = iso_det(&symbolic_triple())?;
    for row in r.matrix.to_dense() {
        println!("{}", row.iter().map(|x| format!("{:>12}", x.to_string())).collect::<String>());
    }
    println!("det = {}", r.det.render_factored());

    // a = 0 kills the first block.
    let degenerate = iso_det(&triple(Scalar::zero(), Scalar::one()))?;
    println!("det at a=0, b=1: {}", degenerate.det);

    println!("corner entry with h/B: {}", corner_entry(EConvention::OverB)?);
    println!("corner entry with h/D: {}", corner_entry(EConvention::OverD)?);
    Ok(())
}
