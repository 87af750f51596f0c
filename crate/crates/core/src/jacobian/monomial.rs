use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Monomial in the projective variables `x0, …, xn`.
///
/// Ordered graded-lexicographically with the leading monomial first: lower
/// degree sorts first, and within a degree a larger exponent of `x0` (then
/// `x1`, …) sorts earlier. So `x0 < x1 < … < x7` and `x0*x1*x2 < x0*x1*x3`,
/// which is the order every basis in this crate is listed in.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    /// Product of the listed variables (with repetition).
    pub fn from_indices(nvars: usize, idx: &[usize]) -> Self {
        let mut exps = vec![0; nvars];
        for &i in idx {
            exps[i] += 1;
        }
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn max_exponent(&self) -> u32 {
        self.exps.iter().copied().max().unwrap_or(0)
    }

    pub fn is_square_free(&self) -> bool {
        self.max_exponent() <= 1
    }

    /// Variable indices in increasing order, repeated by exponent.
    pub fn indices(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        })
    }

    /// All monomials of degree `k` in `nvars` variables, sorted.
    pub fn all_of_degree(nvars: usize, k: u32) -> Vec<Monomial> {
        Self::bounded_of_degree(nvars, k, k)
    }

    /// Monomials of degree `k` with every exponent at most `bound`, sorted.
    pub fn bounded_of_degree(nvars: usize, k: u32, bound: u32) -> Vec<Monomial> {
        fn rec(i: usize, left: u32, bound: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if i == n - 1 {
                if left <= bound {
                    cur[i] = left;
                    out.push(Monomial { exps: cur.clone() });
                    cur[i] = 0;
                }
                return;
            }
            // Larger exponent of x_i first gives the sorted order directly.
            for e in (0..=left.min(bound)).rev() {
                cur[i] = e;
                rec(i + 1, left - e, bound, cur, out);
            }
            cur[i] = 0;
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if k == 0 {
                out.push(Monomial { exps: vec![] });
            }
            return out;
        }
        let mut cur = vec![0; nvars];
        rec(0, k, bound, &mut cur, &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps) {
                match b.cmp(a) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            self.exps.len().cmp(&other.exps.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Binomial coefficient as `u64`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_is_sorted_and_counted() {
        for n in 1..5 {
            for k in 0..5 {
                let v = Monomial::all_of_degree(n, k);
                assert_eq!(v.len() as u64, binomial((n as u64) + k as u64 - 1, k as u64));
                assert!(v.windows(2).all(|w| w[0] < w[1]));
            }
        }
        let sq = Monomial::bounded_of_degree(8, 4, 1);
        assert_eq!(sq.len(), 70);
        assert_eq!(sq[0].to_string(), "x0*x1*x2*x3");
    }

    #[test]
    fn variable_order() {
        let v: Vec<Monomial> = (0..3).map(|i| Monomial::var(3, i)).collect();
        assert!(v[0] < v[1] && v[1] < v[2]);
        assert!(Monomial::new(vec![2, 0, 0]) < Monomial::new(vec![1, 1, 0]));
    }
}
