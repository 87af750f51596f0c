//! Sparse row echelon forms over an exact field.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::scalar::{Rational, Scalar};

pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; callers guarantee `self != 0`.
    fn inv(&self) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        Scalar::inv(self).expect("pivot is nonzero")
    }
}

/// Sparse vector: `(index, value)` pairs sorted by index, no stored zeros.
pub type SparseRow<F> = Vec<(usize, F)>;

/// `a + s * b` for sorted sparse rows.
pub fn axpy<F: Field>(a: &[(usize, F)], s: &F, b: &[(usize, F)]) -> SparseRow<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = s.mul(&b[j].1);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.add(&s.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row echelon form. Every stored row has a leading entry equal
/// to one in its pivot column and only later columns otherwise.
#[derive(Debug, Clone)]
pub struct Echelon<F> {
    ncols: usize,
    rows: Vec<SparseRow<F>>,
    pivot_row: Vec<Option<usize>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Reduce `row` against the stored pivots, starting at entry `start`.
    fn reduce_from(&self, mut row: SparseRow<F>, start: usize) -> SparseRow<F> {
        let mut idx = start;
        while idx < row.len() {
            let (c, v) = (row[idx].0, row[idx].1.clone());
            match self.pivot_row[c] {
                Some(r) => row = axpy(&row, &v.neg(), &self.rows[r]),
                None => idx += 1,
            }
        }
        row
    }

    pub fn reduce(&self, row: SparseRow<F>) -> SparseRow<F> {
        self.reduce_from(row, 0)
    }

    /// Reduce and, if something is left, add it as a new pivot row.
    pub fn insert(&mut self, row: SparseRow<F>) -> bool {
        let row = self.reduce(row);
        let Some((c, lead)) = row.first().cloned() else {
            return false;
        };
        let inv = lead.inv();
        let row: SparseRow<F> = row.into_iter().map(|(j, v)| (j, v.mul(&inv))).collect();
        self.pivot_row[c] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    /// Back-substitute so every pivot column is zero outside its own row.
    pub fn into_rref(mut self) -> Rref<F> {
        let mut order: Vec<(usize, usize)> = self
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| (row[0].0, r))
            .collect();
        order.sort_unstable_by_key(|r| std::cmp::Reverse(r.0));
        for &(_, r) in &order {
            let row = std::mem::take(&mut self.rows[r]);
            let reduced = self.reduce_from(row, 1);
            self.rows[r] = reduced;
        }
        let mut pivots: Vec<(usize, SparseRow<F>)> =
            self.rows.into_iter().map(|row| (row[0].0, row)).collect();
        pivots.sort_unstable_by_key(|(c, _)| *c);
        Rref {
            ncols: self.ncols,
            pivots,
        }
    }
}

/// Reduced row echelon form: pivot rows sorted by pivot column.
#[derive(Debug, Clone)]
pub struct Rref<F> {
    pub ncols: usize,
    pub pivots: Vec<(usize, SparseRow<F>)>,
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|(c, _)| *c).collect()
    }

    /// Nullspace basis, one vector per free column, each sorted by index.
    pub fn kernel(&self) -> Vec<SparseRow<F>> {
        let mut is_pivot = vec![false; self.ncols];
        for (c, _) in &self.pivots {
            is_pivot[*c] = true;
        }
        let mut slot = vec![usize::MAX; self.ncols];
        let mut out: Vec<SparseRow<F>> = Vec::new();
        for c in 0..self.ncols {
            if !is_pivot[c] {
                slot[c] = out.len();
                out.push(vec![(c, F::one())]);
            }
        }
        for (p, row) in &self.pivots {
            for (c, v) in row.iter().skip(1) {
                out[slot[*c]].push((*p, v.neg()));
            }
        }
        for v in out.iter_mut() {
            v.sort_unstable_by_key(|(i, _)| *i);
        }
        out
    }
}

/// Static Markowitz-style column order: columns by ascending nonzero count,
/// ties by index. Returns `perm` with `perm[new] = old`.
pub fn markowitz_column_order<F>(rows: &[SparseRow<F>], ncols: usize) -> Vec<usize> {
    let mut counts = vec![0usize; ncols];
    for row in rows {
        for (c, _) in row {
            counts[*c] += 1;
        }
    }
    let mut perm: Vec<usize> = (0..ncols).collect();
    perm.sort_by_key(|&c| (counts[c], c));
    perm
}

/// Row echelon of `rows` under the Markowitz column order, rows fed shortest first.
/// Returns the echelon (in permuted coordinates) and the permutation.
pub fn eliminate<F: Field>(rows: &[SparseRow<F>], ncols: usize) -> (Echelon<F>, Vec<usize>) {
    let perm = markowitz_column_order(rows, ncols);
    let mut inv = vec![0usize; ncols];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&r| (rows[r].len(), r));
    let mut ech = Echelon::new(ncols);
    for r in order {
        let mut row: SparseRow<F> = rows[r].iter().map(|(c, v)| (inv[*c], v.clone())).collect();
        row.sort_unstable_by_key(|(c, _)| *c);
        ech.insert(row);
    }
    (ech, perm)
}

/// Determinant of a square dense matrix by Gaussian elimination.
pub fn determinant<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut det = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return F::zero();
        };
        if p != col {
            a.swap(p, col);
            det = det.neg();
        }
        let pivot = a[col][col].clone();
        det = det.mul(&pivot);
        let inv = pivot.inv();
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].mul(&inv);
            for c in col..n {
                if a[col][c].is_zero() {
                    continue;
                }
                let t = f.mul(&a[col][c]);
                a[r][c] = a[r][c].sub(&t);
            }
        }
    }
    det
}

/// Solve `m x = b` for square nonsingular `m`; `None` when singular.
pub fn solve<F: Field>(m: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        let inv = a[col][col].inv();
        for c in col..=n {
            a[col][c] = a[col][c].mul(&inv);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..=n {
                if a[col][c].is_zero() {
                    continue;
                }
                let t = f.mul(&a[col][c]);
                a[r][c] = a[r][c].sub(&t);
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn row(v: &[(usize, i64)]) -> SparseRow<Rational> {
        v.iter().map(|(c, x)| (*c, rat(*x, 1))).collect()
    }

    #[test]
    fn rank_and_kernel() {
        // x0 + x1 = 0, x1 + x2 = 0, x0 - x2 = 0 (dependent)
        let rows = vec![row(&[(0, 1), (1, 1)]), row(&[(1, 1), (2, 1)]), row(&[(0, 1), (2, -1)])];
        let mut e = Echelon::new(3);
        for r in rows.clone() {
            e.insert(r);
        }
        assert_eq!(e.rank(), 2);
        let k = e.into_rref().kernel();
        assert_eq!(k.len(), 1);
        for r in &rows {
            let dot: Rational = r
                .iter()
                .map(|(c, v)| k[0].iter().find(|(i, _)| i == c).map(|(_, w)| v * w).unwrap_or_default())
                .sum();
            assert!(Zero::is_zero(&dot));
        }
    }

    #[test]
    fn determinant_and_solve() {
        let m = vec![
            vec![rat(2, 1), rat(1, 1), rat(0, 1)],
            vec![rat(1, 1), rat(3, 1), rat(1, 1)],
            vec![rat(0, 1), rat(1, 1), rat(4, 1)],
        ];
        assert_eq!(determinant(&m), rat(18, 1));
        let x = solve(&m, &[rat(3, 1), rat(5, 1), rat(5, 1)]).unwrap();
        assert_eq!(x, vec![rat(1, 1), rat(1, 1), rat(1, 1)]);
        let sing = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]];
        assert_eq!(determinant(&sing), rat(0, 1));
        assert!(solve(&sing, &[rat(1, 1), rat(0, 1)]).is_none());
    }
}
