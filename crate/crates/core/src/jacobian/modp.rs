//! Sparse elimination over the prime field GF(p).

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Default prime 2³¹ − 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

pub fn check_prime(p: u64) -> Result<()> {
    if !(2..(1u64 << 32)).contains(&p) {
        return Err(Error::OutOfRange(format!("prime {p} must lie in [2, 2^32)")));
    }
    let mut q = 2u64;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return Err(Error::OutOfRange(format!("{p} is not prime")));
        }
        q += 1;
    }
    Ok(())
}

pub(crate) fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

/// Image of a rational number in GF(p).
pub fn reduce_rational(x: &Rational, p: u64) -> Result<u64> {
    let pb = num_bigint::BigInt::from(p);
    let n = (x.numer() % &pb + &pb) % &pb;
    let d = (x.denom() % &pb + &pb) % &pb;
    if d.is_zero() {
        return Err(Error::BadReduction(p));
    }
    debug_assert!(!n.is_negative());
    let n = n.to_u64().unwrap();
    let d = d.to_u64().unwrap();
    Ok(mul(n, inv(d, p), p))
}

pub type ModRow = Vec<(usize, u64)>;

fn axpy(a: &[(usize, u64)], s: u64, b: &[(usize, u64)], p: u64) -> ModRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, mul(s, b[j].1, p)));
            j += 1;
        } else {
            let v = (a[i].1 + mul(s, b[j].1, p)) % p;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental echelon form over GF(p); same pivot rule as the exact version.
#[derive(Debug, Clone)]
pub struct ModPEchelon {
    p: u64,
    rows: Vec<ModRow>,
    pivot_row: Vec<Option<usize>>,
}

impl ModPEchelon {
    pub fn new(ncols: usize, p: u64) -> Self {
        ModPEchelon {
            p,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_from(&self, mut row: ModRow, start: usize) -> ModRow {
        let mut idx = start;
        while idx < row.len() {
            let (c, v) = row[idx];
            match self.pivot_row[c] {
                Some(r) => row = axpy(&row, self.p - v, &self.rows[r], self.p),
                None => idx += 1,
            }
        }
        row
    }

    pub fn insert(&mut self, row: ModRow) -> bool {
        let row = self.reduce_from(row, 0);
        let Some(&(c, lead)) = row.first() else {
            return false;
        };
        let li = inv(lead, self.p);
        let row: ModRow = row.into_iter().map(|(j, v)| (j, mul(v, li, self.p))).collect();
        self.pivot_row[c] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    /// Nullspace basis after back-substitution, one vector per free column.
    pub fn kernel(mut self) -> Vec<ModRow> {
        let ncols = self.pivot_row.len();
        let mut order: Vec<(usize, usize)> =
            self.rows.iter().enumerate().map(|(r, row)| (row[0].0, r)).collect();
        order.sort_unstable_by_key(|r| std::cmp::Reverse(r.0));
        for &(_, r) in &order {
            let row = std::mem::take(&mut self.rows[r]);
            self.rows[r] = self.reduce_from(row, 1);
        }
        let mut slot = vec![usize::MAX; ncols];
        let mut out: Vec<ModRow> = Vec::new();
        for c in 0..ncols {
            if self.pivot_row[c].is_none() {
                slot[c] = out.len();
                out.push(vec![(c, 1)]);
            }
        }
        for row in &self.rows {
            let p = row[0].0;
            for &(c, v) in row.iter().skip(1) {
                out[slot[c]].push((p, (self.p - v) % self.p));
            }
        }
        for v in out.iter_mut() {
            v.sort_unstable_by_key(|(i, _)| *i);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn primes() {
        assert!(check_prime(DEFAULT_PRIME).is_ok());
        assert!(check_prime(2).is_ok());
        assert!(check_prime(91).is_err());
        assert!(check_prime(1).is_err());
    }

    #[test]
    fn rational_images() {
        let p = 7;
        assert_eq!(reduce_rational(&rat(1, 2), p).unwrap(), 4);
        assert_eq!(reduce_rational(&rat(-1, 1), p).unwrap(), 6);
        assert_eq!(reduce_rational(&rat(3, 14), p), Err(Error::BadReduction(7)));
    }

    #[test]
    fn rank_drops_mod_small_prime() {
        // det [[1,1],[1,3]] = 2 vanishes mod 2 only.
        let rows = [vec![(0, 1), (1, 1)], vec![(0, 1), (1, 3)]];
        let mut e2 = ModPEchelon::new(2, 2);
        let mut e7 = ModPEchelon::new(2, 7);
        for r in &rows {
            e2.insert(r.iter().map(|&(c, v)| (c, v % 2)).filter(|x| x.1 != 0).collect());
            e7.insert(r.clone());
        }
        assert_eq!(e2.rank(), 1);
        assert_eq!(e7.rank(), 2);
        assert_eq!(e2.kernel(), vec![vec![(0, 1), (1, 1)]]);
    }
}
