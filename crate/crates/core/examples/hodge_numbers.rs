//! Primitive Hodge numbers, Euler characteristics and a vanishing test.

use grifcalc::hodge::{chi_y, ci_prim_hodge, euler_characteristic, hypersurface_prim_hodge, jacobian_vanishing_check, CIData};

fn main() -> grifcalc::Result<()> {
    let sevenfold = hypersurface_prim_hodge(3, 7);
    println!("cubic sevenfold: {:?}", sevenfold.values);
    println!("cubic sixfold:   {:?}", hypersurface_prim_hodge(3, 6).values);

    let ci = CIData::new(vec![3, 5, 5], 5)?;
    println!("(3,5,5) fivefold: prim {:?}, euler {}", ci_prim_hodge(&ci).values, euler_characteristic(&ci));
    println!("chi_y coefficients of the quintic threefold: {:?}", chi_y(&CIData::new(vec![5], 3)?));

    let two_cubics = CIData::new(vec![3, 3], 3)?;
    println!("H^3 of (3,3) threefold vanishes: {}", jacobian_vanishing_check(&two_cubics, 2)?);
    Ok(())
}
