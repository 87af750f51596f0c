//! The sixfold triple `(P_{a,b}, e)`, the isomorphism criterion for
//! multiplication by `P·e: R^1 → R^7`, the infinitesimal invariant, and
//! ℚ-linear independence of the values `ab/(a+bh)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fermat::{alpha, beta, rational_class};
use crate::jacobian::elimination::{determinant, solve, Echelon};
use crate::jacobian::{mult_map, pairing_matrix, HomogeneousPolynomial, HypersurfaceRing, LinearMap, Monomial, RankMode};
use crate::scalar::{Assignment, Rational, Scalar, Symbol};
use crate::kermu::mu_apply;
use crate::tensor::TensorSum;

pub const NVARS: usize = 8;

/// Denominator of the `x3*x5` term of `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EConvention {
    /// `h/B`: reproduces the tabulated pairing matrix and determinant.
    #[default]
    OverB,
    /// `h/D`, as the formula for `e` is usually printed.
    OverD,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TripleData {
    pub a: Scalar,
    pub b: Scalar,
    pub p: HomogeneousPolynomial,
    pub e: HomogeneousPolynomial,
    pub convention: EConvention,
}

/// The Fermat cubic sixfold ring `R(Σ)` in 8 variables.
pub fn sixfold_ring() -> HypersurfaceRing {
    HypersurfaceRing::fermat(3, NVARS)
}

pub fn sixfold_e(convention: EConvention) -> HomogeneousPolynomial {
    let h_term = match convention {
        EConvention::OverB => "h/B*x3*x5",
        EConvention::OverD => "h/D*x3*x5",
    };
    HomogeneousPolynomial::parse(
        &format!("x0*x1 + 1/C*x2*x3 + 1/A*x4*x5 + x6*x7 + {h_term}"),
        NVARS,
    )
    .expect("well-formed")
}

/// `P_{a,b} = a(P_α + P_{2α}) + b(P_β + P_{2β})` and `e`.
pub fn triple(a: Scalar, b: Scalar) -> TripleData {
    triple_with(a, b, EConvention::default())
}

pub fn triple_with(a: Scalar, b: Scalar, convention: EConvention) -> TripleData {
    let pa = rational_class(&alpha().orbit()).expect("d = 3").to_polynomial();
    let pb = rational_class(&beta().orbit()).expect("d = 3").to_polynomial();
    let p = pa.scale(&a).add(&pb.scale(&b)).expect("same degree");
    TripleData {
        a,
        b,
        p,
        e: sixfold_e(convention),
        convention,
    }
}

/// Symbolic `a`, `b`.
pub fn symbolic_triple() -> TripleData {
    triple(Scalar::sym("a"), Scalar::sym("b"))
}

/// `Q = (1/A)·x4x5x6`.
pub fn q_factor() -> HomogeneousPolynomial {
    HomogeneousPolynomial::parse("1/A*x4*x5*x6", NVARS).expect("well-formed")
}

/// `R = (1/B)·x3x5x7`.
pub fn r_factor() -> HomogeneousPolynomial {
    HomogeneousPolynomial::parse("1/B*x3*x5*x7", NVARS).expect("well-formed")
}

pub fn q_tensor_r() -> TensorSum {
    TensorSum::rank_one(q_factor(), r_factor())
}

/// The 8×8 matrix as tabulated, rows `f_i = x_i`, columns `g_j = Π_{k≠j} x_k`.
pub fn printed_matrix() -> LinearMap {
    let s = |x: &str| -> Scalar { x.parse().expect("well-formed") };
    let mut m = LinearMap::zeros(8, 8);
    let entries = [
        (0, 1, "a"),
        (2, 3, "a*C"),
        (2, 4, "b*D"),
        (3, 5, "b*B"),
        (4, 5, "a*A"),
        (6, 7, "a+b*h"),
    ];
    for (i, j, v) in entries {
        m.set(i, j, s(v));
        m.set(j, i, s(v));
    }
    m
}

/// `a^2*(a+b*h)^2*(a^2*A*C-b^2*B*D)^2`.
pub fn printed_determinant() -> Scalar {
    "a^2*(a+b*h)^2*(a^2*A*C-b^2*B*D)^2".parse().expect("well-formed")
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsoDet {
    pub matrix: LinearMap,
    pub det: Scalar,
}

/// Pairing matrix of `P·e` on `R^1 × R^1` and its determinant.
pub fn iso_det(t: &TripleData) -> Result<IsoDet> {
    let ring = sixfold_ring();
    iso_det_in(&ring, t)
}

fn iso_det_in(ring: &HypersurfaceRing, t: &TripleData) -> Result<IsoDet> {
    let pe = t.p.mul(&t.e)?;
    let matrix = pairing_matrix(ring, &pe, 1, 1)?;
    let det = determinant(&matrix.to_dense());
    Ok(IsoDet { matrix, det })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhoCheck {
    pub injective: bool,
    pub rank: usize,
    /// `"specialization"` or `"symbolic"`.
    pub method: String,
    /// Parameter values used, rendered as rationals.
    pub specialization: std::collections::BTreeMap<String, String>,
}

fn random_assignment(symbols: &[&str], rng: &mut ChaCha8Rng) -> Assignment {
    symbols
        .iter()
        .map(|s| {
            let mut n: i64 = 0;
            while n == 0 {
                n = rng.gen_range(-97..=97);
            }
            let d: i64 = rng.gen_range(1..=13);
            (Symbol::new(s), Rational::new(n.into(), d.into()))
        })
        .collect()
}

/// Whether `ρ = ·e: R^1 → R^3` is injective (rank 8). A full-rank random
/// specialization certifies full symbolic rank; otherwise the exact symbolic
/// rank decides.
pub fn rho_check(t: &TripleData, seed: u64) -> Result<RhoCheck> {
    let ring = sixfold_ring();
    let m = mult_map(&ring, &t.e, 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let symbols: Vec<Symbol> = {
        let mut s = std::collections::BTreeSet::new();
        for (_, _, v) in m.entries() {
            s.extend(v.parameters());
        }
        s.into_iter().collect()
    };
    let names: Vec<&str> = symbols.iter().map(Symbol::name).collect();
    for _ in 0..8 {
        let asg = random_assignment(&names, &mut rng);
        let Ok(specialized) = m.substitute(&asg) else {
            continue;
        };
        let rank = specialized.rank(&RankMode::Exact)?;
        if rank == m.cols() {
            return Ok(RhoCheck {
                injective: true,
                rank,
                method: "specialization".into(),
                specialization: asg.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            });
        }
        break;
    }
    let rank = m.rank(&RankMode::Exact)?;
    Ok(RhoCheck {
        injective: rank == m.cols(),
        rank,
        method: "symbolic".into(),
        specialization: Default::default(),
    })
}

/// Infinitesimal invariant `Σ_i c_i · P·P_i·f^{-1}(P·R_i)` as the coefficient
/// of the socle monomial `x0⋯x7`, where `f = ·(P·e): R^1 → R^7`.
pub fn delta_nu(t: &TripleData, w: &TensorSum) -> Result<Scalar> {
    let ring = sixfold_ring();
    for (_, l, r) in &w.summands {
        if l.degree() != 3 || r.degree() != 3 || l.nvars() != NVARS || r.nvars() != NVARS {
            return Err(Error::DegreeMismatch("summands must lie in R^3 ⊗ R^3".into()));
        }
    }
    if !mu_apply(&ring, w)?.is_zero() {
        return Err(Error::NotInKernel);
    }
    let IsoDet { matrix, det } = iso_det_in(&ring, t)?;
    if det.is_zero() {
        return Err(Error::NotIsomorphism);
    }
    let mt = matrix.transpose().to_dense();
    let r1 = ring.quotient_basis(1);
    let mut total = Scalar::zero();
    for (c, pi, ri) in &w.summands {
        // y_j = <P·R_i, x_j>; solve Mᵀ v = y so that (P·e)·v ≡ P·R_i in R^7.
        let pr = t.p.mul(ri)?;
        let y: Vec<Scalar> = r1
            .monomials()
            .iter()
            .map(|xj| ring.socle_coefficient(&pr.mul_monomial(xj)))
            .collect::<Result<_>>()?;
        let v = solve(&mt, &y).ok_or(Error::NotIsomorphism)?;
        let vpoly = HomogeneousPolynomial::from_terms(NVARS, 1, r1.monomials().iter().cloned().zip(v))?;
        let term = ring.socle_coefficient(&t.p.mul(pi)?.mul(&vpoly)?)?;
        total = &total + &(c * &term);
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Independence {
    pub rank: usize,
    /// Basis of the relations `Σ c_i v_i = 0`, as primitive integer vectors
    /// with positive first nonzero entry.
    pub relations: Vec<Vec<BigInt>>,
}

/// Rank over ℚ of `v_i = a_i b_i / (a_i + b_i h)` in `ℚ(h)`, with `h` transcendental.
pub fn independence_rank(pairs: &[(i64, i64)]) -> Result<Independence> {
    let n = pairs.len();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        if a == 0 && b == 0 {
            return Err(Error::DegenerateDenominator(i));
        }
    }
    // Σ c_i a_i b_i Π_{j≠i} (a_j + b_j h) = 0: one equation per power of h.
    let columns: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut poly = vec![BigInt::from(pairs[i].0 * pairs[i].1)];
            for (j, &(a, b)) in pairs.iter().enumerate() {
                if j == i {
                    continue;
                }
                let mut next = vec![BigInt::zero(); poly.len() + 1];
                for (k, c) in poly.iter().enumerate() {
                    next[k] += c * a;
                    next[k + 1] += c * b;
                }
                poly = next;
            }
            poly
        })
        .collect();
    let mut ech: Echelon<Rational> = Echelon::new(n);
    for k in 0..n.max(1) {
        let row: Vec<(usize, Rational)> = (0..n)
            .filter_map(|i| {
                let c = columns[i].get(k).cloned().unwrap_or_default();
                (!c.is_zero()).then(|| (i, Rational::from_integer(c)))
            })
            .collect();
        ech.insert(row);
    }
    let rank = ech.rank();
    let relations = ech
        .into_rref()
        .kernel()
        .into_iter()
        .map(|v| primitive_integer_vector(&v, n))
        .collect();
    Ok(Independence { rank, relations })
}

fn primitive_integer_vector(v: &[(usize, Rational)], n: usize) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::from(1), |acc, (_, x)| acc.lcm(x.denom()));
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in v {
        out[*i] = (x * Rational::from_integer(l.clone())).to_integer();
    }
    let g = out.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let first_neg = out.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in out.iter_mut() {
        *x = &*x / &g;
        if first_neg {
            *x = -&*x;
        }
    }
    out
}

/// The `(f_6, f_7)` pairing entry under a given convention for `e`.
pub fn corner_entry(convention: EConvention) -> Result<Scalar> {
    let t = triple_with(Scalar::sym("a"), Scalar::sym("b"), convention);
    Ok(iso_det(&t)?.matrix.get(6, 7))
}

/// `x0*x1*…*x7`.
pub fn socle_monomial() -> Monomial {
    Monomial::new(vec![1; NVARS])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn triple_polynomials() {
        let t = triple(Scalar::from_int(1), Scalar::zero());
        assert_eq!(t.p.to_string(), "A*x0*x1*x2*x3 + C*x4*x5*x6*x7");
        let z = triple(Scalar::zero(), Scalar::zero());
        assert!(z.p.is_zero());
        assert_eq!(iso_det(&z).unwrap().det, Scalar::zero());
    }

    #[test]
    fn matrix_and_determinant() {
        let r = iso_det(&symbolic_triple()).unwrap();
        assert_eq!(r.matrix.to_dense(), printed_matrix().to_dense());
        assert_eq!(r.matrix.nnz(), 12);
        assert!(r.matrix.is_symmetric());
        assert_eq!(r.det, printed_determinant());
        assert_eq!(r.det.render_factored(), "a^2*(a+b*h)^2*(a^2*A*C-b^2*B*D)^2");
        assert_eq!(r.matrix.get(6, 7), s("a+b*h"));
        let r10 = iso_det(&triple(Scalar::from_int(1), Scalar::zero())).unwrap();
        assert_eq!(r10.det, s("A^2*C^2"));
    }

    #[test]
    fn over_d_convention_changes_corner() {
        assert_eq!(corner_entry(EConvention::OverD).unwrap(), s("(a*D+b*h*B)/D"));
        assert_eq!(corner_entry(EConvention::OverB).unwrap(), s("a+b*h"));
    }

    #[test]
    fn invariant_value() {
        let t = symbolic_triple();
        let ring = sixfold_ring();
        assert!(ring.normal_form(&q_factor().mul(&r_factor()).unwrap()).unwrap().is_zero());
        assert_eq!(delta_nu(&t, &q_tensor_r()).unwrap(), s("a*b/(a+b*h)"));
        assert_eq!(delta_nu(&t, &q_tensor_r().swapped()).unwrap(), s("a*b/(a+b*h)"));
        let t0 = triple(Scalar::sym("a"), Scalar::zero());
        assert_eq!(delta_nu(&t0, &q_tensor_r()).unwrap(), Scalar::zero());
        let bad = TensorSum::rank_one(
            HomogeneousPolynomial::parse("x0*x1*x2", 8).unwrap(),
            HomogeneousPolynomial::parse("x3*x4*x5", 8).unwrap(),
        );
        assert_eq!(delta_nu(&t, &bad), Err(Error::NotInKernel));
        let z = triple(Scalar::zero(), Scalar::zero());
        assert_eq!(delta_nu(&z, &q_tensor_r()), Err(Error::NotIsomorphism));
    }

    #[test]
    fn rho() {
        let t = symbolic_triple();
        let r = rho_check(&t, 7).unwrap();
        assert!(r.injective);
        assert_eq!(r.rank, 8);
        let mut t0 = t.clone();
        t0.e = HomogeneousPolynomial::zero(8, 2);
        assert!(!rho_check(&t0, 7).unwrap().injective);
        t0.e = HomogeneousPolynomial::parse("x0*x1", 8).unwrap();
        assert!(!rho_check(&t0, 7).unwrap().injective);
    }

    #[test]
    fn independence() {
        let r = independence_rank(&[(1, 1), (2, 1), (3, 1)]).unwrap();
        assert_eq!((r.rank, r.relations.len()), (3, 0));
        let r = independence_rank(&[(1, 1), (1, 1)]).unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.relations, vec![vec![BigInt::from(1), BigInt::from(-1)]]);
        let r = independence_rank(&[(2, 0), (0, 5)]).unwrap();
        assert_eq!(r.rank, 0);
        assert_eq!(independence_rank(&[(1, 1), (0, 0)]), Err(Error::DegenerateDenominator(1)));
    }
}
