use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::elimination::{eliminate, Echelon, SparseRow};
use super::modp::{self, ModPEchelon, ModRow};
use super::monomial::Monomial;
use super::poly::HomogeneousPolynomial;
use super::ring::HypersurfaceRing;
use crate::error::{Error, Result};
use crate::scalar::{Assignment, Rational, Scalar};

/// Label of a basis vector of a domain or codomain.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisLabel {
    Monomial(Monomial),
    Tensor(Monomial, Monomial),
    Index(usize),
}

/// Exact sparse matrix of a map `domain → codomain`: entry `(i, j)` is the
/// `i`-th codomain coordinate of the image of the `j`-th domain vector.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    domain: Vec<BasisLabel>,
    codomain: Vec<BasisLabel>,
    entries: BTreeMap<(usize, usize), Scalar>,
}

/// How [`LinearMap::rank_kernel`] computes.
#[derive(Debug, Clone, PartialEq)]
pub enum RankMode {
    Exact,
    /// Over `GF(prime)`; symbolic entries need a `specialization`.
    ModP {
        prime: u64,
        specialization: Option<Assignment>,
    },
}

impl RankMode {
    pub fn mod_p_default() -> Self {
        RankMode::ModP {
            prime: modp::DEFAULT_PRIME,
            specialization: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum KernelBasis {
    Exact(Vec<SparseRow<Scalar>>),
    ModP { prime: u64, vectors: Vec<ModRow> },
}

impl KernelBasis {
    pub fn len(&self) -> usize {
        match self {
            KernelBasis::Exact(v) => v.len(),
            KernelBasis::ModP { vectors, .. } => vectors.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankKernel {
    pub rank: usize,
    pub kernel: KernelBasis,
}

impl LinearMap {
    pub fn new(domain: Vec<BasisLabel>, codomain: Vec<BasisLabel>) -> Self {
        LinearMap {
            domain,
            codomain,
            entries: BTreeMap::new(),
        }
    }

    /// Map between index-labelled spaces of the given sizes.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(
            (0..cols).map(BasisLabel::Index).collect(),
            (0..rows).map(BasisLabel::Index).collect(),
        )
    }

    pub fn identity(labels: Vec<BasisLabel>) -> Self {
        let n = labels.len();
        let mut m = Self::new(labels.clone(), labels);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.codomain.len()
    }

    pub fn cols(&self) -> usize {
        self.domain.len()
    }

    pub fn domain(&self) -> &[BasisLabel] {
        &self.domain
    }

    pub fn codomain(&self) -> &[BasisLabel] {
        &self.codomain
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Set entry `(i, j)`; storing zero removes it.
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows() && j < self.cols(), "index ({i}, {j}) out of bounds");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.cols()]; self.rows()];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        LinearMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            entries: self.entries.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows() == self.cols()
            && self.entries.iter().all(|(&(i, j), v)| self.entries.get(&(j, i)) == Some(v))
    }

    pub fn is_parameter_free(&self) -> bool {
        self.entries.values().all(Scalar::is_parameter_free)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.rows()];
        for (i, j, a) in self.entries() {
            if !v[j].is_zero() {
                out[i] = &out[i] + &(a * &v[j]);
            }
        }
        out
    }

    /// Substitute (some of) the parameters in every entry.
    pub fn substitute(&self, asg: &Assignment) -> Result<Self> {
        let mut out = Self::new(self.domain.clone(), self.codomain.clone());
        for (i, j, v) in self.entries() {
            out.set(i, j, v.substitute(asg)?);
        }
        Ok(out)
    }

    fn sparse_rows<F, G>(&self, conv: G) -> Result<Vec<Vec<(usize, F)>>>
    where
        G: Fn(&Scalar) -> Result<Option<F>>,
    {
        let mut rows: Vec<Vec<(usize, F)>> = (0..self.rows()).map(|_| Vec::new()).collect();
        for (i, j, v) in self.entries() {
            if let Some(x) = conv(v)? {
                rows[i].push((j, x));
            }
        }
        Ok(rows)
    }

    /// Rank and a kernel basis (vectors in the domain).
    ///
    /// Exact mode is the true rank over the coefficient field. Mod-p mode is
    /// the rank of the reduction, a lower bound for the rank of an integral
    /// matrix.
    pub fn rank_kernel(&self, mode: &RankMode) -> Result<RankKernel> {
        match mode {
            RankMode::Exact => {
                if self.is_parameter_free() {
                    let rows = self.sparse_rows(|v| Ok(v.as_rational()))?;
                    let (rank, kernel) = exact_rank_kernel::<Rational>(&rows, self.cols());
                    let kernel = kernel
                        .into_iter()
                        .map(|v| v.into_iter().map(|(j, x)| (j, Scalar::from(x))).collect())
                        .collect();
                    Ok(RankKernel {
                        rank,
                        kernel: KernelBasis::Exact(kernel),
                    })
                } else {
                    let rows = self.sparse_rows(|v| Ok(Some(v.clone())))?;
                    let (rank, kernel) = exact_rank_kernel::<Scalar>(&rows, self.cols());
                    Ok(RankKernel {
                        rank,
                        kernel: KernelBasis::Exact(kernel),
                    })
                }
            }
            RankMode::ModP {
                prime,
                specialization,
            } => {
                modp::check_prime(*prime)?;
                let p = *prime;
                let rows = self.sparse_rows(|v| {
                    let q = match (v.as_rational(), specialization) {
                        (Some(q), _) => q,
                        (None, Some(asg)) => v.specialize(asg)?,
                        (None, None) => return Err(Error::ParameterInModP(v.to_string())),
                    };
                    let r = modp::reduce_rational(&q, p)?;
                    Ok((r != 0).then_some(r))
                })?;
                let mut ech = ModPEchelon::new(self.cols(), p);
                let mut order: Vec<usize> = (0..rows.len()).collect();
                order.sort_by_key(|&r| (rows[r].len(), r));
                for r in order {
                    ech.insert(rows[r].clone());
                }
                Ok(RankKernel {
                    rank: ech.rank(),
                    kernel: KernelBasis::ModP {
                        prime: p,
                        vectors: ech.kernel(),
                    },
                })
            }
        }
    }

    pub fn rank(&self, mode: &RankMode) -> Result<usize> {
        Ok(self.rank_kernel(mode)?.rank)
    }
}

/// Rank and nullspace via the Markowitz-ordered elimination; kernel vectors
/// are returned in the original column coordinates, sorted by index.
fn exact_rank_kernel<F: super::elimination::Field>(
    rows: &[SparseRow<F>],
    ncols: usize,
) -> (usize, Vec<SparseRow<F>>) {
    let (ech, perm): (Echelon<F>, Vec<usize>) = eliminate(rows, ncols);
    let rank = ech.rank();
    let kernel = ech
        .into_rref()
        .kernel()
        .into_iter()
        .map(|v| {
            let mut w: SparseRow<F> = v.into_iter().map(|(c, x)| (perm[c], x)).collect();
            w.sort_unstable_by_key(|(c, _)| *c);
            w
        })
        .collect();
    (rank, kernel)
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Scalar)>,
}

impl Serialize for LinearMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows(),
            cols: self.cols(),
            entries: self.entries().map(|(i, j, v)| (i, j, v.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        let mut m = LinearMap::zeros(j.rows, j.cols);
        for (r, c, v) in j.entries {
            if r >= j.rows || c >= j.cols {
                return Err(serde::de::Error::custom(format!("entry ({r}, {c}) out of bounds")));
            }
            m.set(r, c, v);
        }
        Ok(m)
    }
}

fn monomial_labels(ms: &[Monomial]) -> Vec<BasisLabel> {
    ms.iter().cloned().map(BasisLabel::Monomial).collect()
}

/// Matrix of `R^j → R^{j + deg P}`, `v ↦ normal_form(P·v)`.
pub fn mult_map(ring: &HypersurfaceRing, p: &HomogeneousPolynomial, j: u32) -> Result<LinearMap> {
    if p.nvars() != ring.nvars() {
        return Err(Error::DegreeMismatch(format!(
            "multiplier in {} variables, ring in {}",
            p.nvars(),
            ring.nvars()
        )));
    }
    let dom = ring.quotient_basis(j);
    let cod = ring.quotient_basis(j + p.degree());
    let mut m = LinearMap::new(monomial_labels(dom.monomials()), monomial_labels(cod.monomials()));
    for (col, b) in dom.monomials().iter().enumerate() {
        let coords = ring.coordinates(&p.mul_monomial(b))?;
        for (row, v) in coords.into_iter().enumerate() {
            m.set(row, col, v);
        }
    }
    Ok(m)
}

/// Socle pairing: entry `(i, l)` is the socle coefficient of `P·b_i·b'_l`
/// with `b_i ∈ basis(R^j)` and `b'_l ∈ basis(R^k)`.
pub fn pairing_matrix(
    ring: &HypersurfaceRing,
    p: &HomogeneousPolynomial,
    j: u32,
    k: u32,
) -> Result<LinearMap> {
    let s = ring.socle_degree();
    if (j + k + p.degree()) as i64 != s {
        return Err(Error::DegreeMismatch(format!(
            "{j} + {k} + deg P = {} differs from the socle degree {s}",
            j + k + p.degree()
        )));
    }
    ring.socle_check()?;
    let left = ring.quotient_basis(j);
    let right = ring.quotient_basis(k);
    let mut m = LinearMap::new(monomial_labels(right.monomials()), monomial_labels(left.monomials()));
    for (i, bi) in left.monomials().iter().enumerate() {
        let pb = p.mul_monomial(bi);
        for (l, bl) in right.monomials().iter().enumerate() {
            m.set(i, l, ring.socle_coefficient(&pb.mul_monomial(bl))?);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn identity_rank() {
        let id = LinearMap::identity((0..8).map(BasisLabel::Index).collect());
        let rk = id.rank_kernel(&RankMode::Exact).unwrap();
        assert_eq!(rk.rank, 8);
        assert!(rk.kernel.is_empty());
        assert_eq!(id.rank(&RankMode::mod_p_default()).unwrap(), 8);
    }

    #[test]
    fn unit_multiplication_is_identity() {
        let ring = HypersurfaceRing::fermat(3, 5);
        for j in 0..4 {
            let m = mult_map(&ring, &HomogeneousPolynomial::one(5), j).unwrap();
            assert_eq!(m, LinearMap::identity(m.domain().to_vec()));
        }
    }

    #[test]
    fn rank_one_multiplication() {
        let ring = HypersurfaceRing::fermat(3, 6);
        let p = HomogeneousPolynomial::parse("x0*x1*x2", 6).unwrap();
        let m = mult_map(&ring, &p, 3).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 20));
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.rank(&RankMode::Exact).unwrap(), 1);
        let col = m.entries().next().unwrap().1;
        assert_eq!(m.domain()[col], BasisLabel::Monomial(Monomial::from_indices(6, &[3, 4, 5])));
    }

    #[test]
    fn pairing_small_cases() {
        let ring = HypersurfaceRing::fermat(3, 6);
        let one = pairing_matrix(&ring, &HomogeneousPolynomial::one(6), 0, 6).unwrap();
        assert_eq!(one.to_dense(), vec![vec![Scalar::one()]]);
        let m = pairing_matrix(&ring, &HomogeneousPolynomial::one(6), 3, 3).unwrap();
        assert_eq!((m.rows(), m.cols(), m.nnz()), (20, 20, 20));
        assert!(m.is_symmetric());
        for i in 0..20 {
            assert_eq!(m.entries().filter(|(r, _, _)| *r == i).count(), 1);
        }
        assert!(pairing_matrix(&ring, &HomogeneousPolynomial::one(6), 1, 1).is_err());
    }

    #[test]
    fn modp_needs_specialization() {
        let m = LinearMap::from_dense(&[vec![Scalar::sym("a"), Scalar::one()]]);
        assert!(matches!(
            m.rank(&RankMode::mod_p_default()),
            Err(Error::ParameterInModP(_))
        ));
        let asg = crate::scalar::assignment([("a", rat(3, 1))]);
        let mode = RankMode::ModP {
            prime: 7,
            specialization: Some(asg),
        };
        assert_eq!(m.rank(&mode).unwrap(), 1);
        assert_eq!(m.rank(&RankMode::Exact).unwrap(), 1);
    }

    #[test]
    fn kernel_in_original_coordinates() {
        // columns chosen so the Markowitz order permutes them
        let m = LinearMap::from_dense(&[
            vec![Scalar::from_int(1), Scalar::from_int(1), Scalar::from_int(1)],
            vec![Scalar::from_int(0), Scalar::from_int(2), Scalar::from_int(0)],
        ]);
        let rk = m.rank_kernel(&RankMode::Exact).unwrap();
        assert_eq!(rk.rank, 2);
        let KernelBasis::Exact(k) = rk.kernel else { panic!() };
        assert_eq!(k.len(), 1);
        let mut dense = vec![Scalar::zero(); 3];
        for (j, v) in &k[0] {
            dense[*j] = v.clone();
        }
        assert!(m.apply(&dense).iter().all(Scalar::is_zero));
    }

    #[test]
    fn json_shape() {
        let m = LinearMap::from_dense(&[vec![Scalar::zero(), Scalar::sym("a")]]);
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"{"rows":1,"cols":2,"entries":[[0,1,"a"]]}"#);
    }
}
