//! ρ injectivity and the infinitesimal invariant of Q⊗R.

use grifcalc::nl::{delta_nu, q_tensor_r, rho_check, symbolic_triple, triple};
use grifcalc::Scalar;

fn main() -> grifcalc::Result<()> {
    let t = symbolic_triple();
    let rho = rho_check(&t, 1)?;
    println!("rho injective: {} (rank {}, {})", rho.injective, rho.rank, rho.method);

    let w = q_tensor_r();
    println!("delta nu(Q⊗R) = {}", delta_nu(&t, &w)?);
    println!("delta nu(R⊗Q) = {}", delta_nu(&t, &w.swapped())?);

    for (a, b) in [(1, 1), (2, 3), (5, -1)] {
        let t = triple(Scalar::from_int(a), Scalar::from_int(b));
        println!("a={a}, b={b}: {}", delta_nu(&t, &w)?);
    }
    Ok(())
}
