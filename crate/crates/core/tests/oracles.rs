//! Checks against computations that share no code path with the library's
//! solvers: cofactor expansion, Cramer's rule, closed-form Euler
//! characteristics and direct monomial counting.

use grifcalc::hodge::{euler_characteristic, hypersurface_prim_hodge, CIData};
use grifcalc::jacobian::{HomogeneousPolynomial, Monomial};
use grifcalc::kermu::{mu_map, span_equals_kernel, SpanMode};
use grifcalc::nl::{delta_nu, iso_det, printed_determinant, printed_matrix, q_factor, q_tensor_r, r_factor, sixfold_ring, symbolic_triple};
use grifcalc::Scalar;
use num_bigint::BigInt;

fn s(x: &str) -> Scalar {
    x.parse().unwrap()
}

/// Cofactor expansion along the first row, skipping zero entries.
fn laplace(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    if n == 0 {
        return Scalar::one();
    }
    let mut total = Scalar::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Scalar>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * &laplace(&minor);
        total = if j % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

fn cramer(m: &[Vec<Scalar>], y: &[Scalar]) -> Vec<Scalar> {
    let det = laplace(m);
    (0..m.len())
        .map(|k| {
            let mk: Vec<Vec<Scalar>> = m
                .iter()
                .zip(y)
                .map(|(row, yi)| {
                    let mut row = row.clone();
                    row[k] = yi.clone();
                    row
                })
                .collect();
            laplace(&mk).checked_div(&det).unwrap()
        })
        .collect()
}

fn g(i: usize) -> Monomial {
    Monomial::new((0..8).map(|k| u32::from(k != i)).collect())
}

#[test]
fn determinant_by_cofactor_expansion() {
    let printed = printed_matrix().to_dense();
    assert_eq!(laplace(&printed), printed_determinant());
    let computed = iso_det(&symbolic_triple()).unwrap();
    assert_eq!(laplace(&computed.matrix.to_dense()), computed.det);
    assert_eq!(computed.det, printed_determinant());
}

#[test]
fn products_land_on_single_basis_elements() {
    let ring = sixfold_ring();
    let t = symbolic_triple();
    // P·R = b·g6 and P·Q = a·g7 in R^7.
    let pr = ring.normal_form(&t.p.mul(&r_factor()).unwrap()).unwrap();
    assert_eq!(pr, HomogeneousPolynomial::monomial(g(6), s("b")));
    let pq = ring.normal_form(&t.p.mul(&q_factor()).unwrap()).unwrap();
    assert_eq!(pq, HomogeneousPolynomial::monomial(g(7), s("a")));
    // And x_i·g_i is the socle monomial with coefficient 1.
    for i in 0..8 {
        let xi = HomogeneousPolynomial::monomial(unit(i), Scalar::one());
        let prod = xi.mul(&HomogeneousPolynomial::monomial(g(i), Scalar::one())).unwrap();
        assert_eq!(ring.socle_coefficient(&prod).unwrap(), Scalar::one());
    }
}

#[test]
fn invariant_by_cramers_rule() {
    let ring = sixfold_ring();
    let t = symbolic_triple();
    let m = iso_det(&t).unwrap().matrix.to_dense();
    // Rows of the pairing matrix index f_i, columns g_j; the multiplication
    // map in these bases is its transpose (and the matrix is symmetric).
    let mt: Vec<Vec<Scalar>> = (0..8).map(|i| (0..8).map(|j| m[j][i].clone()).collect()).collect();
    let mut y = vec![Scalar::zero(); 8];
    y[6] = s("b");
    let v = cramer(&mt, &y);
    for (k, vk) in v.iter().enumerate() {
        if k == 7 {
            assert_eq!(vk, &s("b/(a+b*h)"));
        } else {
            assert!(vk.is_zero(), "component {k}");
        }
    }
    let f_inv = HomogeneousPolynomial::monomial(unit(7), v[7].clone());
    let pq = t.p.mul(&q_factor()).unwrap();
    let value = ring.socle_coefficient(&pq.mul(&f_inv).unwrap()).unwrap();
    assert_eq!(value, s("a*b/(a+b*h)"));
    assert_eq!(delta_nu(&t, &q_tensor_r()).unwrap(), value);
}

/// χ of a smooth degree-d hypersurface of dimension m.
fn hypersurface_euler(d: i64, m: u32) -> BigInt {
    (BigInt::from(1 - d).pow(m + 2) - 1) / d + BigInt::from(m + 2)
}

#[test]
fn euler_characteristic_closed_form() {
    for d in 1..=7u32 {
        for m in 1..=9usize {
            let ci = CIData::new(vec![d], m).unwrap();
            assert_eq!(euler_characteristic(&ci), hypersurface_euler(d.into(), m as u32), "d={d} m={m}");
        }
    }
}

/// h^{p,m-p}_prim of a degree-d hypersurface of dimension m counts monomials
/// of degree (p+1)d - (m+2) with all exponents ≤ d-2 in m+2 variables.
fn counted_prim(d: u32, m: usize, p: usize) -> u64 {
    let n = m + 2;
    let target = (p as i64 + 1) * d as i64 - n as i64;
    if target < 0 || d < 2 {
        return 0;
    }
    fn count(vars: usize, left: i64, cap: i64) -> u64 {
        if vars == 0 {
            return u64::from(left == 0);
        }
        (0..=cap.min(left)).map(|e| count(vars - 1, left - e, cap)).sum()
    }
    count(n, target, d as i64 - 2)
}

#[test]
fn primitive_hodge_numbers_by_counting() {
    for d in 2..=6u32 {
        for m in 1..=7usize {
            let h = hypersurface_prim_hodge(d, m);
            for p in 0..=m {
                assert_eq!(h.h(p, m - p), counted_prim(d, m, p), "d={d} m={m} p={p}");
            }
        }
    }
    assert_eq!(hypersurface_prim_hodge(3, 7).values, vec![0, 0, 1, 84, 84, 1, 0, 0]);
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn kernel_dimension_from_square_free_counts() {
    // On the Fermat cubic, R^k has the square-free monomials as a basis and
    // μ: R^3 ⊗ R^3 → R^6 is onto.
    for n in 4..=7 {
        let map = mu_map(n).unwrap();
        assert_eq!(map.cols(), binom(n, 3).pow(2));
        assert_eq!(map.rows(), binom(n, 6));
        let report = span_equals_kernel(n, SpanMode::span_exact()).unwrap();
        assert_eq!(report.rank_mu, binom(n, 6));
        assert_eq!(report.dim_ker, binom(n, 3).pow(2) - binom(n, 6));
        assert!(report.verdict);
    }
}

fn unit(i: usize) -> Monomial {
    Monomial::new((0..8).map(|k| u32::from(k == i)).collect())
}
