//! Exact row reduction, subspaces and kernels over GF(p^f).
//!
//! Reduced echelon form uses the leftmost available pivot and takes the
//! lowest-index row carrying it, so every subspace has one canonical basis
//! and equality of subspaces is equality of bases.

use crate::field::{FieldCtx, FieldElem};

/// Reduces `rows` in place to reduced row echelon form, drops zero rows and
/// returns the pivot column of each remaining row.
pub fn rref(field: &FieldCtx, rows: &mut Vec<Vec<FieldElem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        let Some(found) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(top, found);
        let inv = field.inv(rows[top][col]).expect("pivot is nonzero");
        if inv != field.one() {
            for v in rows[top][col..].iter_mut() {
                *v = field.mul(*v, inv);
            }
        }
        let pivot_row = std::mem::take(&mut rows[top]);
        for (r, row) in rows.iter_mut().enumerate() {
            if r == top || row[col].is_zero() {
                continue;
            }
            let c = row[col];
            for (v, &pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !pv.is_zero() {
                    *v = field.sub(*v, field.mul(c, pv));
                }
            }
        }
        rows[top] = pivot_row;
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    pivots
}

pub fn rank(field: &FieldCtx, rows: &[Vec<FieldElem>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// A linear subspace of `F^ambient`, stored by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Span of the given vectors, each of length `ambient`.
    pub fn span<I>(field: &FieldCtx, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<FieldElem>>,
    {
        let mut rows: Vec<Vec<FieldElem>> = vectors.into_iter().collect();
        assert!(rows.iter().all(|r| r.len() == ambient), "vector length mismatch");
        let pivots = rref(field, &mut rows);
        Subspace { ambient, rows, pivots }
    }

    pub fn full(field: &FieldCtx, ambient: usize) -> Self {
        Self::span(
            field,
            ambient,
            (0..ambient).map(|i| {
                let mut v = vec![FieldElem::ZERO; ambient];
                v[i] = field.one();
                v
            }),
        )
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<FieldElem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after eliminating every pivot coordinate.
    fn reduce(&self, field: &FieldCtx, v: &[FieldElem]) -> Vec<FieldElem> {
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = w[pc];
            if c.is_zero() {
                continue;
            }
            for (x, &r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = field.sub(*x, field.mul(c, r));
                }
            }
        }
        w
    }

    pub fn contains(&self, field: &FieldCtx, v: &[FieldElem]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        self.reduce(field, v).iter().all(|x| x.is_zero())
    }

    pub fn is_subspace_of(&self, field: &FieldCtx, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.contains(field, r))
    }

    /// Coordinates of a member with respect to the echelon basis.
    pub fn coordinates(&self, field: &FieldCtx, v: &[FieldElem]) -> Option<Vec<FieldElem>> {
        if !self.contains(field, v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    pub fn sum(&self, field: &FieldCtx, other: &Subspace) -> Subspace {
        Subspace::span(field, self.ambient, self.rows.iter().chain(&other.rows).cloned())
    }

    /// Intersection via the kernel of `(x, y) ↦ x - y` on `self ⊕ other`.
    pub fn intersection(&self, field: &FieldCtx, other: &Subspace) -> Subspace {
        let images: Vec<Vec<FieldElem>> = self
            .rows
            .iter()
            .cloned()
            .chain(other.rows.iter().map(|r| r.iter().map(|&x| field.neg(x)).collect()))
            .collect();
        let ker = kernel_of(field, self.ambient, &images);
        let d = self.dim();
        Subspace::span(
            field,
            self.ambient,
            ker.basis().iter().map(|c| combine(field, &self.rows, &c[..d])),
        )
    }
}

/// `Σ c_i rows_i`.
pub fn combine(field: &FieldCtx, rows: &[Vec<FieldElem>], coeffs: &[FieldElem]) -> Vec<FieldElem> {
    let len = rows.first().map_or(0, Vec::len);
    let mut out = vec![FieldElem::ZERO; len];
    for (row, &c) in rows.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (x, &r) in out.iter_mut().zip(row) {
            if !r.is_zero() {
                *x = field.add(*x, field.mul(c, r));
            }
        }
    }
    out
}

/// Kernel of the linear map sending the i-th domain basis vector to
/// `images[i]` (each of length `codim`). The result lives in domain
/// coordinates, so its ambient dimension is `images.len()`.
pub fn kernel_of(field: &FieldCtx, codim: usize, images: &[Vec<FieldElem>]) -> Subspace {
    let n = images.len();
    // Rows of the matrix are output coordinates, columns are domain vectors.
    let mut m: Vec<Vec<FieldElem>> = (0..codim).map(|r| images.iter().map(|img| img[r]).collect()).collect();
    let pivots = rref(field, &mut m);
    let mut is_pivot = vec![false; n];
    for &pc in &pivots {
        is_pivot[pc] = true;
    }
    let basis = (0..n).filter(|&c| !is_pivot[c]).map(|free| {
        let mut v = vec![FieldElem::ZERO; n];
        v[free] = field.one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = field.neg(row[free]);
        }
        v
    });
    Subspace::span(field, n, basis)
}

/// Solves `Σ x_i cols_i = rhs`, returning one solution if any exists.
pub fn solve(field: &FieldCtx, cols: &[Vec<FieldElem>], rhs: &[FieldElem]) -> Option<Vec<FieldElem>> {
    let n = cols.len();
    let mut m: Vec<Vec<FieldElem>> = (0..rhs.len())
        .map(|r| {
            let mut row: Vec<FieldElem> = cols.iter().map(|c| c[r]).collect();
            row.push(rhs[r]);
            row
        })
        .collect();
    let pivots = rref(field, &mut m);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![FieldElem::ZERO; n];
    for (row, &pc) in m.iter().zip(&pivots) {
        x[pc] = row[n];
    }
    Some(x)
}
