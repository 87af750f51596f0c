//! Characters of the Fermat cubic sixfold and the rational classes of their
//! Galois orbits.

use grifcalc::fermat::{alpha, beta, enumerate_type, rational_class};

fn main() -> grifcalc::Result<()> {
    let census = enumerate_type(3, 8, (3, 3))?;
    println!("type (3,3): {} characters in {} orbits", census.characters.len(), census.orbits.len());
    for c in [alpha(), beta()] {
        let class = rational_class(&c.orbit())?;
        println!("{} -> {}", c.digits(), class.to_polynomial());
    }
    Ok(())
}
