use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::jacobian::{HomogeneousPolynomial, HypersurfaceRing, Monomial};
use crate::scalar::Scalar;

/// `Σ c_i · left_i ⊗ right_i`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TensorSum {
    pub summands: Vec<(Scalar, HomogeneousPolynomial, HomogeneousPolynomial)>,
}

/// Monomial expansion: `(left, right) ↦ coefficient`, zeros dropped.
pub type ExpandedTensor = BTreeMap<(Monomial, Monomial), Scalar>;

impl TensorSum {
    pub fn new() -> Self {
        TensorSum::default()
    }

    pub fn rank_one(left: HomogeneousPolynomial, right: HomogeneousPolynomial) -> Self {
        TensorSum {
            summands: vec![(Scalar::one(), left, right)],
        }
    }

    pub fn monomial(c: Scalar, left: Monomial, right: Monomial) -> Self {
        TensorSum {
            summands: vec![(
                Scalar::one(),
                HomogeneousPolynomial::monomial(left, c),
                HomogeneousPolynomial::monomial(right, Scalar::one()),
            )],
        }
    }

    pub fn push(&mut self, c: Scalar, left: HomogeneousPolynomial, right: HomogeneousPolynomial) {
        self.summands.push((c, left, right));
    }

    pub fn extend(&mut self, other: TensorSum) {
        self.summands.extend(other.summands);
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// The swapped tensor `Σ c_i · right_i ⊗ left_i`.
    pub fn swapped(&self) -> TensorSum {
        TensorSum {
            summands: self.summands.iter().map(|(c, l, r)| (c.clone(), r.clone(), l.clone())).collect(),
        }
    }

    pub fn scaled(&self, s: &Scalar) -> TensorSum {
        TensorSum {
            summands: self.summands.iter().map(|(c, l, r)| (c * s, l.clone(), r.clone())).collect(),
        }
    }

    /// Exact expansion in the monomial tensor basis of `S ⊗ S` (no reduction).
    pub fn expand(&self) -> ExpandedTensor {
        let mut out = ExpandedTensor::new();
        for (c, l, r) in &self.summands {
            for (ml, cl) in l.terms() {
                let cl = c * cl;
                for (mr, cr) in r.terms() {
                    add_into(&mut out, (ml.clone(), mr.clone()), &cl * cr);
                }
            }
        }
        out
    }

    /// Expansion after reducing both factors to normal form in `ring`.
    pub fn expand_reduced(&self, ring: &HypersurfaceRing) -> Result<ExpandedTensor> {
        let mut out = ExpandedTensor::new();
        for (c, l, r) in &self.summands {
            let l = ring.normal_form(l)?;
            let r = ring.normal_form(r)?;
            for (ml, cl) in l.terms() {
                let cl = c * cl;
                for (mr, cr) in r.terms() {
                    add_into(&mut out, (ml.clone(), mr.clone()), &cl * cr);
                }
            }
        }
        Ok(out)
    }
}

pub(crate) fn add_into(map: &mut ExpandedTensor, key: (Monomial, Monomial), v: Scalar) {
    if v.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(v);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + &v;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

impl fmt::Display for TensorSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        for (k, (c, l, r)) in self.summands.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "({l}) ⊗ ({r})")?;
            } else {
                write!(f, "({c})·({l}) ⊗ ({r})")?;
            }
        }
        Ok(())
    }
}
