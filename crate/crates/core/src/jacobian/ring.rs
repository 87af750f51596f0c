use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::elimination::{Echelon, Rref, SparseRow};
use super::monomial::{binomial, Monomial};
use super::poly::HomogeneousPolynomial;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Jacobian ring `R = S / (∂F/∂x_0, …, ∂F/∂x_n)` of a hypersurface `F = 0`.
pub struct HypersurfaceRing {
    f: HomogeneousPolynomial,
    partials: Vec<HomogeneousPolynomial>,
    fermat: bool,
    cache: Mutex<HashMap<u32, Arc<GradedBasis>>>,
}

/// How a degree-k slice reduces modulo the Jacobian ideal.
#[derive(Debug, Clone)]
enum Reduction {
    /// The ideal is monomial `(x_i^{d-1})`: a monomial survives iff all exponents are `≤ d-2`.
    Fermat { bound: i64 },
    /// Reduced row echelon form of `J^k` over all degree-k monomials (sorted).
    Rref {
        columns: Vec<Monomial>,
        col_index: HashMap<Monomial, usize>,
        rref: Rref<Scalar>,
        pivot_slot: Vec<Option<usize>>,
    },
}

/// Monomial basis of `R^k` with the data needed to reduce into it.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    degree: u32,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    jacobian_rank: usize,
    reduction: Reduction,
}

impl GradedBasis {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Position of `m` in the basis, if it is a basis monomial.
    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// `dim J^k`.
    pub fn jacobian_rank(&self) -> usize {
        self.jacobian_rank
    }

    /// Coordinates of the class of `c·m` in this basis, as sparse pairs.
    fn reduce_monomial(&self, m: &Monomial, c: &Scalar, out: &mut Vec<(usize, Scalar)>) {
        match &self.reduction {
            Reduction::Fermat { bound } => {
                if m.exps().iter().all(|&e| (e as i64) <= *bound) {
                    out.push((self.index[m], c.clone()));
                }
            }
            Reduction::Rref {
                col_index,
                rref,
                pivot_slot,
                columns,
            } => {
                let col = col_index[m];
                match pivot_slot[col] {
                    None => out.push((self.index[m], c.clone())),
                    Some(slot) => {
                        // m + Σ r_j m_j ∈ J, so m ≡ -Σ r_j m_j with m_j free columns.
                        for (j, r) in rref.pivots[slot].1.iter().skip(1) {
                            out.push((self.index[&columns[*j]], -(c * r)));
                        }
                    }
                }
            }
        }
    }
}

impl HypersurfaceRing {
    /// Ring of `F`; the Fermat fast path is used when `F = Σ x_i^d` exactly.
    pub fn new(f: HomogeneousPolynomial) -> Result<Self> {
        let fermat = is_fermat(&f);
        Self::build(f, fermat)
    }

    /// Ring of `F` always using row reduction, even for a Fermat polynomial.
    pub fn new_generic(f: HomogeneousPolynomial) -> Result<Self> {
        Self::build(f, false)
    }

    /// The Fermat hypersurface `Σ x_i^d` in `nvars` variables.
    pub fn fermat(d: u32, nvars: usize) -> Self {
        Self::build(fermat_polynomial(d, nvars), true).expect("Fermat polynomial is nonzero")
    }

    fn build(f: HomogeneousPolynomial, fermat: bool) -> Result<Self> {
        if f.is_zero() || f.degree() == 0 {
            return Err(Error::DegreeMismatch("F must be nonzero of positive degree".into()));
        }
        let partials = (0..f.nvars()).map(|i| f.derivative(i)).collect();
        Ok(HypersurfaceRing {
            f,
            partials,
            fermat,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn polynomial(&self) -> &HomogeneousPolynomial {
        &self.f
    }

    pub fn d(&self) -> u32 {
        self.f.degree()
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    pub fn is_fermat(&self) -> bool {
        self.fermat
    }

    /// `(n+1)(d-2)`; negative for linear `F`.
    pub fn socle_degree(&self) -> i64 {
        self.nvars() as i64 * (self.d() as i64 - 2)
    }

    /// Basis of `R^k`, computed once and cached.
    pub fn quotient_basis(&self, k: u32) -> Arc<GradedBasis> {
        if let Some(b) = self.cache.lock().expect("cache lock").get(&k) {
            return b.clone();
        }
        let b = Arc::new(if self.fermat {
            self.fermat_basis(k)
        } else {
            self.generic_basis(k)
        });
        let n = self.nvars() as u64;
        debug_assert_eq!(
            (b.dim() + b.jacobian_rank) as u64,
            binomial(n + k as u64 - 1, k as u64)
        );
        self.cache.lock().expect("cache lock").insert(k, b.clone());
        b
    }

    fn fermat_basis(&self, k: u32) -> GradedBasis {
        let bound = self.d() as i64 - 2;
        let basis = if bound < 0 {
            Vec::new()
        } else {
            Monomial::bounded_of_degree(self.nvars(), k, bound as u32)
        };
        let n = self.nvars() as u64;
        let total = binomial(n + k as u64 - 1, k as u64) as usize;
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        GradedBasis {
            degree: k,
            jacobian_rank: total - basis.len(),
            basis,
            index,
            reduction: Reduction::Fermat { bound },
        }
    }

    fn generic_basis(&self, k: u32) -> GradedBasis {
        let n = self.nvars();
        let columns = Monomial::all_of_degree(n, k);
        let col_index: HashMap<Monomial, usize> =
            columns.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut ech: Echelon<Scalar> = Echelon::new(columns.len());
        let dd = self.d() - 1;
        if k >= dd {
            let multipliers = Monomial::all_of_degree(n, k - dd);
            for p in &self.partials {
                for e in &multipliers {
                    let mut row: SparseRow<Scalar> = p
                        .terms()
                        .map(|(m, c)| (col_index[&m.mul(e)], c.clone()))
                        .collect();
                    row.sort_unstable_by_key(|(c, _)| *c);
                    ech.insert(row);
                }
            }
        }
        let rank = ech.rank();
        let rref = ech.into_rref();
        let mut pivot_slot = vec![None; columns.len()];
        for (slot, (c, _)) in rref.pivots.iter().enumerate() {
            pivot_slot[*c] = Some(slot);
        }
        let basis: Vec<Monomial> = columns
            .iter()
            .enumerate()
            .filter(|(i, _)| pivot_slot[*i].is_none())
            .map(|(_, m)| m.clone())
            .collect();
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        GradedBasis {
            degree: k,
            basis,
            index,
            jacobian_rank: rank,
            reduction: Reduction::Rref {
                columns,
                col_index,
                rref,
                pivot_slot,
            },
        }
    }

    /// Coordinates of the class of `p` in the basis of `R^{deg p}`.
    pub fn coordinates(&self, p: &HomogeneousPolynomial) -> Result<Vec<Scalar>> {
        self.check_vars(p)?;
        let b = self.quotient_basis(p.degree());
        let mut out = vec![Scalar::zero(); b.dim()];
        let mut buf = Vec::new();
        for (m, c) in p.terms() {
            buf.clear();
            b.reduce_monomial(m, c, &mut buf);
            for (i, v) in buf.drain(..) {
                out[i] = &out[i] + &v;
            }
        }
        Ok(out)
    }

    /// The reduced representative of `p`, supported on `quotient_basis(deg p)`.
    pub fn normal_form(&self, p: &HomogeneousPolynomial) -> Result<HomogeneousPolynomial> {
        let coords = self.coordinates(p)?;
        let b = self.quotient_basis(p.degree());
        HomogeneousPolynomial::from_terms(
            self.nvars(),
            p.degree(),
            b.monomials().iter().cloned().zip(coords),
        )
    }

    fn check_vars(&self, p: &HomogeneousPolynomial) -> Result<()> {
        if p.nvars() != self.nvars() {
            return Err(Error::DegreeMismatch(format!(
                "polynomial in {} variables, ring in {}",
                p.nvars(),
                self.nvars()
            )));
        }
        Ok(())
    }

    /// Coefficient of the socle generator in the normal form of `p`.
    pub fn socle_coefficient(&self, p: &HomogeneousPolynomial) -> Result<Scalar> {
        let s = self.socle_degree();
        if p.degree() as i64 != s {
            return Err(Error::DegreeMismatch(format!(
                "degree {} is not the socle degree {s}",
                p.degree()
            )));
        }
        self.socle_check()?;
        Ok(self.coordinates(p)?.into_iter().next().unwrap_or_default())
    }

    /// The socle monomial (the single basis element in the socle degree).
    pub fn socle_monomial(&self) -> Result<Monomial> {
        self.socle_check()?;
        Ok(self.quotient_basis(self.socle_degree() as u32).monomials()[0].clone())
    }

    /// `dim R^s = 1` and `dim R^{s+1} = 0`.
    pub fn socle_check(&self) -> Result<()> {
        let s = self.socle_degree();
        if s < 0 {
            return Err(Error::Socle(format!("negative socle degree {s}")));
        }
        let top = self.quotient_basis(s as u32).dim();
        let above = self.quotient_basis(s as u32 + 1).dim();
        if top != 1 || above != 0 {
            return Err(Error::Socle(format!(
                "dim R^{s} = {top}, dim R^{} = {above}",
                s + 1
            )));
        }
        Ok(())
    }

    /// `dim R^k` for `k = 0..=max_k`.
    pub fn dims(&self, max_k: u32) -> Vec<usize> {
        (0..=max_k).map(|k| self.quotient_basis(k).dim()).collect()
    }
}

fn is_fermat(f: &HomogeneousPolynomial) -> bool {
    let d = f.degree();
    f.num_terms() == f.nvars()
        && (0..f.nvars()).all(|i| {
            let mut e = vec![0; f.nvars()];
            e[i] = d;
            f.coeff(&Monomial::new(e)).is_one()
        })
}

pub fn fermat_polynomial(d: u32, nvars: usize) -> HomogeneousPolynomial {
    HomogeneousPolynomial::from_terms(
        nvars,
        d,
        (0..nvars).map(|i| {
            let mut e = vec![0; nvars];
            e[i] = d;
            (Monomial::new(e), Scalar::one())
        }),
    )
    .expect("homogeneous by construction")
}

/// Coefficients of `(1 + t + … + t^{d-2})^{nvars}`, the Hilbert series of the
/// Fermat Jacobian ring; entry `k` is `dim R^k`.
pub fn fermat_hilbert_series(d: u32, nvars: usize) -> Vec<u64> {
    if d < 2 {
        return Vec::new();
    }
    let w = (d - 1) as usize;
    let mut s = vec![1u64];
    for _ in 0..nvars {
        let mut next = vec![0u64; s.len() + w - 1];
        for (i, &v) in s.iter().enumerate() {
            for j in 0..w {
                next[i + j] += v;
            }
        }
        s = next;
    }
    s
}
