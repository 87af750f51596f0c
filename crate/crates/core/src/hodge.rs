//! Primitive Hodge numbers of hypersurfaces (residue grading) and of
//! complete intersections (χ_y genus from truncated Chern/Todd series).

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobian::elimination::Field;
use crate::jacobian::fermat_hilbert_series;
use crate::scalar::{Rational, Scalar, Symbol};

/// Primitive middle Hodge numbers `(h^{m,0}, h^{m-1,1}, …, h^{0,m})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeVector {
    pub m: usize,
    pub values: Vec<u64>,
}

impl HodgeVector {
    /// `h^{p,q}` with `p + q = m`.
    pub fn h(&self, p: usize, q: usize) -> u64 {
        assert_eq!(p + q, self.m);
        self.values[q]
    }

    pub fn is_symmetric(&self) -> bool {
        self.values.iter().eq(self.values.iter().rev())
    }

    /// Primitive middle Betti number.
    pub fn betti(&self) -> u64 {
        self.values.iter().sum()
    }

    /// Full-diamond Euler characteristic: primitive middle part plus one
    /// hyperplane class `h^{p,p} = 1` for each `0 ≤ p ≤ m`.
    pub fn euler_with_hyperplane_classes(&self) -> i64 {
        let sign = if self.m.is_multiple_of(2) { 1 } else { -1 };
        sign * self.betti() as i64 + self.m as i64 + 1
    }
}

/// Degrees of a complete intersection of dimension `m` in `P^N`, `N = m + r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CIData {
    pub degrees: Vec<u32>,
    pub m: usize,
}

impl CIData {
    pub fn new(degrees: Vec<u32>, m: usize) -> Result<Self> {
        if degrees.is_empty() || degrees.contains(&0) {
            return Err(Error::OutOfRange(format!(
                "complete-intersection degrees must be a non-empty list of positive integers, got {degrees:?}"
            )));
        }
        Ok(CIData { degrees, m })
    }

    pub fn ambient_dim(&self) -> usize {
        self.m + self.degrees.len()
    }

    fn degree_product(&self) -> BigInt {
        self.degrees.iter().map(|&d| BigInt::from(d)).product()
    }
}

/// `h^{m-q,q}_prim = dim R^{(q+1)d - (m+2)}` of the Fermat Jacobian ring in `m + 2` variables.
pub fn hypersurface_prim_hodge(d: u32, m: usize) -> HodgeVector {
    let series = fermat_hilbert_series(d, m + 2);
    let values = (0..=m)
        .map(|q| {
            let k = (q as i64 + 1) * d as i64 - (m as i64 + 2);
            if k < 0 {
                0
            } else {
                series.get(k as usize).copied().unwrap_or(0)
            }
        })
        .collect();
    HodgeVector { m, values }
}

// --- truncated power series in H over a field ---

fn series_mul<F: Field>(a: &[F], b: &[F], n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

fn series_inv<F: Field>(a: &[F], n: usize) -> Vec<F> {
    let c0 = a[0].inv();
    let mut out = vec![F::zero(); n];
    out[0] = c0.clone();
    for k in 1..n {
        let mut s = F::zero();
        for j in 1..=k.min(a.len() - 1) {
            s = s.add(&a[j].mul(&out[k - j]));
        }
        out[k] = s.mul(&c0).neg();
    }
    out
}

fn series_pow<F: Field>(a: &[F], e: usize, n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    out[0] = F::one();
    for _ in 0..e {
        out = series_mul(&out, a, n);
    }
    out
}

/// Coefficients of `e^{cH}` up to `H^{n-1}`.
fn exp_series(c: i64, n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n);
    let mut term = <Rational as One>::one();
    for k in 0..n {
        out.push(term.clone());
        term = term * Rational::from_integer(c.into()) / Rational::from_integer(((k + 1) as i64).into());
    }
    out
}

/// `x / (1 - e^{-x})` with `x = cH`.
fn todd_factor(c: i64, n: usize) -> Vec<Rational> {
    // (1 - e^{-x}) / x = Σ_k (-1)^k x^k / (k+1)!
    let e = exp_series(-c, n + 1);
    let q: Vec<Rational> = (0..n).map(|k| -e[k + 1].clone() / Rational::from_integer(c.into())).collect();
    series_inv(&q, n)
}

fn lift(v: &[Rational]) -> Vec<Scalar> {
    v.iter().map(Scalar::from_rational).collect()
}

/// `χ_y = Σ_p χ(Ω^p) y^p` as a vector `[χ_0, …, χ_m]`.
pub fn chi_y(ci: &CIData) -> Vec<BigInt> {
    let n = ci.m + 1;
    let big_n = ci.ambient_dim() as i64;
    let y = Scalar::symbol(Symbol::new("y"));
    let one_plus_y_e = |c: i64| -> Vec<Scalar> {
        let mut s: Vec<Scalar> = exp_series(-c, n).iter().map(|r| &y * &Scalar::from_rational(r)).collect();
        s[0] = &s[0] + &Scalar::one();
        s
    };
    // Λ_y of the virtual tangent bundle (N+1)·O(1) − O − Σ O(d_i).
    let mut lam = series_pow(&one_plus_y_e(1), (big_n + 1) as usize, n);
    let mut denom = vec![Scalar::zero(); n];
    denom[0] = &Scalar::one() + &y;
    for &d in &ci.degrees {
        denom = series_mul(&denom, &one_plus_y_e(d as i64), n);
    }
    lam = series_mul(&lam, &series_inv(&denom, n), n);
    // Todd class of the same virtual bundle.
    let mut td = series_pow(&todd_factor(1, n), (big_n + 1) as usize, n);
    for &d in &ci.degrees {
        td = series_mul(&td, &series_inv(&todd_factor(d as i64, n), n), n);
    }
    let integrand = series_mul(&lam, &lift(&td), n);
    let top = &integrand[ci.m] * &Scalar::from_bigint(ci.degree_product());
    assert!(top.den().is_constant(), "χ_y is a polynomial in y");
    let den = top.den().as_constant().expect("constant");
    let ysym = Symbol::new("y");
    let coeffs = top.num().to_univariate(&ysym);
    (0..=ci.m)
        .map(|p| {
            let c = coeffs
                .get(p)
                .map(|c| c.as_constant().expect("coefficients are rational") / &den)
                .unwrap_or_else(<Rational as Zero>::zero);
            assert!(c.is_integer(), "χ(Ω^p) is an integer");
            c.to_integer()
        })
        .collect()
}

/// Primitive middle Hodge numbers of a complete intersection via χ_y.
pub fn ci_prim_hodge(ci: &CIData) -> HodgeVector {
    let chi = chi_y(ci);
    let m = ci.m;
    let mut values = vec![0u64; m + 1];
    for p in 0..=m {
        let q = m - p;
        let sign_p: i64 = if p % 2 == 0 { 1 } else { -1 };
        let sign_q: i64 = if q.is_multiple_of(2) { 1 } else { -1 };
        let mut h = &chi[p] - BigInt::from(if 2 * p != m { sign_p } else { 0 });
        h *= sign_q;
        if 2 * p == m {
            h -= 1;
        }
        assert!(!h.is_negative(), "negative Hodge number {h} at p = {p}");
        values[q] = h.to_u64().expect("fits in u64");
    }
    HodgeVector { m, values }
}

/// `∫ c_m(T)` via `Π d_i · [H^m] (1+H)^{N+1} / Π (1 + d_i H)`.
pub fn euler_characteristic(ci: &CIData) -> BigInt {
    let n = ci.m + 1;
    let one_plus = |c: i64| -> Vec<Rational> {
        let mut v = vec![<Rational as Zero>::zero(); n];
        v[0] = <Rational as One>::one();
        if n > 1 {
            v[1] = Rational::from_integer(c.into());
        }
        v
    };
    let mut s = series_pow(&one_plus(1), ci.ambient_dim() + 1, n);
    for &d in &ci.degrees {
        s = series_mul(&s, &series_inv(&one_plus(d as i64), n), n);
    }
    let v = &s[ci.m] * Rational::from_integer(ci.degree_product());
    assert!(v.is_integer());
    v.to_integer()
}

/// Whether `H^{2k-1}` of the complete intersection vanishes: by weak
/// Lefschetz only the middle degree can carry odd cohomology.
pub fn jacobian_vanishing_check(ci: &CIData, k: usize) -> Result<bool> {
    if k == 0 || 2 * k - 1 > 2 * ci.m {
        return Err(Error::OutOfRange(format!(
            "H^(2k-1) with k = {k} on a complete intersection of dimension {}",
            ci.m
        )));
    }
    Ok(2 * k - 1 != ci.m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ci(d: &[u32], m: usize) -> CIData {
        CIData::new(d.to_vec(), m).unwrap()
    }

    #[test]
    fn hypersurface_values() {
        assert_eq!(hypersurface_prim_hodge(3, 7).values, vec![0, 0, 1, 84, 84, 1, 0, 0]);
        assert_eq!(hypersurface_prim_hodge(3, 6).values, vec![0, 0, 8, 70, 8, 0, 0]);
        assert_eq!(hypersurface_prim_hodge(4, 2).values, vec![1, 19, 1]);
    }

    #[test]
    fn ci_small_cases() {
        assert_eq!(ci_prim_hodge(&ci(&[3], 7)), hypersurface_prim_hodge(3, 7));
        assert_eq!(ci_prim_hodge(&ci(&[2, 2], 1)).values, vec![1, 1]);
        assert_eq!(ci_prim_hodge(&ci(&[3, 3], 3)).values, vec![1, 73, 73, 1]);
        assert_eq!(ci_prim_hodge(&ci(&[1], 2)).values, vec![0, 0, 0]);
    }

    #[test]
    fn euler_values() {
        assert_eq!(euler_characteristic(&ci(&[3], 6)), BigInt::from(93));
        assert_eq!(euler_characteristic(&ci(&[5], 3)), BigInt::from(-200));
        assert_eq!(euler_characteristic(&ci(&[1], 2)), BigInt::from(3));
    }

    #[test]
    fn vanishing() {
        for e in 2..=6 {
            assert!(jacobian_vanishing_check(&ci(&[3, e, e], 5), 4).unwrap());
        }
        assert!(!jacobian_vanishing_check(&ci(&[3], 7), 4).unwrap());
        assert!(jacobian_vanishing_check(&ci(&[3], 3), 1).unwrap());
        assert!(jacobian_vanishing_check(&ci(&[3], 3), 4).is_err());
    }
}
