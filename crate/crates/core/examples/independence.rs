//! ℚ-linear (in)dependence of the values ab/(a+bh).

use grifcalc::nl::independence_rank;

fn main() -> grifcalc::Result<()> {
    let pairs: Vec<(i64, i64)> = (1..=8).map(|a| (a, 1)).collect();
    println!("{pairs:?}: rank {}", independence_rank(&pairs)?.rank);

    let with_repeat = [(1, 1), (2, 1), (2, 2), (4, 2)];
    let r = independence_rank(&with_repeat)?;
    println!("{with_repeat:?}: rank {}, relations {:?}", r.rank, r.relations);
    Ok(())
}
