//! The group algebra FG as dense coefficient arrays.
//!
//! Coefficients are indexed by the group index of [`Group`]; since `b^j`
//! has index `j`, the subalgebra FB is the prefix `0..q` and is also
//! available as its own algebra through [`GroupAlgebra::fb`].
//!
//! Γ(A) is handled in the coordinates of the basis `{(a - 1) b^j : a ≠ e}`,
//! numbered by `group index - q`. This is the same set as the basis
//! `{b^j (a - 1)}` because `b^j (a - 1) = (σ^{-j}(a) - 1) b^j`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::field::{FieldCtx, FieldElem};
use crate::group::{Group, GroupElem, OrbitTable};
use crate::linalg::{self, Subspace};

/// Dense routines over all of Γ(A) refuse dimensions above this.
pub const DENSE_GAMMA_LIMIT: usize = 1500;

/// Groups up to this order get a precomputed multiplication table.
const MUL_TABLE_LIMIT: usize = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("operands belong to different group algebras")]
    ContextMismatch,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("element is not supported on FB")]
    NotInFB,
    #[error("element is not in the ideal Γ(A)")]
    NotInGamma,
    #[error("expected {expected} coefficients, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("dense computation over dimension {0} is too large")]
    TooLarge(usize),
}

/// FG for a fixed field and group.
pub struct GroupAlgebra {
    field: FieldCtx,
    group: Group,
    orbits: OrbitTable,
    fb: Option<Arc<GroupAlgebra>>,
    mul_table: Option<Vec<u32>>,
    inv_table: Vec<u32>,
}

impl fmt::Debug for GroupAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupAlgebra")
            .field("p", &self.field.p())
            .field("f", &self.field.degree())
            .field("q", &self.group.q())
            .field("A", &self.group.abelian().factors)
            .finish()
    }
}

impl GroupAlgebra {
    pub fn new(field: FieldCtx, group: Group) -> Arc<Self> {
        let fb = (group.a_order() > 1).then(|| Self::cyclic(field.clone(), group.q() as u64));
        Arc::new(Self::build(field, group, fb))
    }

    /// FC_q on its own.
    pub fn cyclic(field: FieldCtx, q: u64) -> Arc<Self> {
        let group = Group::cyclic(field.p(), q);
        Arc::new(Self::build(field, group, None))
    }

    fn build(field: FieldCtx, group: Group, fb: Option<Arc<GroupAlgebra>>) -> Self {
        let n = group.order();
        let mul_table = (n <= MUL_TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    t.push(group.mul_idx(i, j) as u32);
                }
            }
            t
        });
        let inv_table = (0..n)
            .map(|i| group.index(group.inverse(group.elem(i))) as u32)
            .collect();
        let orbits = OrbitTable::new(&group);
        GroupAlgebra {
            field,
            group,
            orbits,
            fb,
            mul_table,
            inv_table,
        }
    }

    /// The subalgebra FB as a standalone algebra.
    pub fn fb(self: &Arc<Self>) -> Arc<Self> {
        match &self.fb {
            Some(fb) => fb.clone(),
            None => self.clone(),
        }
    }

    pub fn is_cyclic(&self) -> bool {
        self.fb.is_none()
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn orbits(&self) -> &OrbitTable {
        &self.orbits
    }

    pub fn q(&self) -> usize {
        self.group.q() as usize
    }

    /// `|G|`, the dimension of FG.
    pub fn dim(&self) -> usize {
        self.group.order()
    }

    /// `dim Γ(A) = |G| - q`.
    pub fn gamma_dim(&self) -> usize {
        self.dim() - self.q()
    }

    #[inline]
    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        match &self.mul_table {
            Some(t) => t[i * self.dim() + j] as usize,
            None => self.group.mul_idx(i, j),
        }
    }

    pub fn inv_idx(&self, i: usize) -> usize {
        self.inv_table[i] as usize
    }

    pub fn same(&self, other: &GroupAlgebra) -> bool {
        std::ptr::eq(self, other) || (self.field == other.field && self.group == other.group)
    }
}

/// An element `Σ α_g g` of FG.
#[derive(Clone)]
pub struct AlgElem {
    alg: Arc<GroupAlgebra>,
    coeffs: Vec<FieldElem>,
}

impl PartialEq for AlgElem {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same(&other.alg) && self.coeffs == other.coeffs
    }
}

impl Eq for AlgElem {}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgElem({self})")
    }
}

impl AlgElem {
    pub fn zero(alg: &Arc<GroupAlgebra>) -> Self {
        AlgElem {
            alg: alg.clone(),
            coeffs: vec![FieldElem::ZERO; alg.dim()],
        }
    }

    pub fn scalar(alg: &Arc<GroupAlgebra>, c: FieldElem) -> Self {
        let mut x = Self::zero(alg);
        x.coeffs[0] = c;
        x
    }

    pub fn one(alg: &Arc<GroupAlgebra>) -> Self {
        Self::scalar(alg, FieldElem::ONE)
    }

    pub fn group_elem(alg: &Arc<GroupAlgebra>, g: GroupElem) -> Self {
        let mut x = Self::zero(alg);
        x.coeffs[alg.group.index(g)] = FieldElem::ONE;
        x
    }

    /// `b^j`.
    pub fn b_pow(alg: &Arc<GroupAlgebra>, j: i64) -> Self {
        let q = alg.q() as i64;
        Self::group_elem(
            alg,
            GroupElem {
                a: 0,
                j: j.rem_euclid(q) as u32,
            },
        )
    }

    pub fn from_coeffs(alg: &Arc<GroupAlgebra>, coeffs: Vec<FieldElem>) -> Result<Self, AlgebraError> {
        if coeffs.len() != alg.dim() {
            return Err(AlgebraError::LengthMismatch {
                expected: alg.dim(),
                got: coeffs.len(),
            });
        }
        Ok(AlgElem {
            alg: alg.clone(),
            coeffs,
        })
    }

    pub fn alg(&self) -> &Arc<GroupAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> &FieldCtx {
        &self.alg.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElem> {
        self.coeffs
    }

    pub fn coeff(&self, g: GroupElem) -> FieldElem {
        self.coeffs[self.alg.group.index(g)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == FieldElem::ONE && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Nonzero `(index, coefficient)` pairs.
    pub fn support(&self) -> Vec<(usize, FieldElem)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (i, c))
            .collect()
    }

    /// True when every nonzero coefficient sits on a power of b.
    pub fn is_in_fb(&self) -> bool {
        self.coeffs[self.alg.q()..].iter().all(|c| c.is_zero())
    }

    fn check(&self, other: &AlgElem) -> Result<(), AlgebraError> {
        if self.alg.same(&other.alg) {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch)
        }
    }

    fn zip_with(&self, other: &AlgElem, op: impl Fn(FieldElem, FieldElem) -> FieldElem) -> AlgElem {
        AlgElem {
            alg: self.alg.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    pub fn try_add(&self, other: &AlgElem) -> Result<AlgElem, AlgebraError> {
        self.check(other)?;
        let f = self.field();
        Ok(self.zip_with(other, |a, b| f.add(a, b)))
    }

    pub fn try_sub(&self, other: &AlgElem) -> Result<AlgElem, AlgebraError> {
        self.check(other)?;
        let f = self.field();
        Ok(self.zip_with(other, |a, b| f.sub(a, b)))
    }

    /// Convolution product through the group law.
    pub fn try_mul(&self, other: &AlgElem) -> Result<AlgElem, AlgebraError> {
        self.check(other)?;
        let f = self.field();
        let alg = &self.alg;
        let xs = self.support();
        let ys = other.support();
        let mut out = vec![FieldElem::ZERO; alg.dim()];
        for &(i, c) in &xs {
            for &(j, d) in &ys {
                let k = alg.mul_idx(i, j);
                out[k] = f.add(out[k], f.mul(c, d));
            }
        }
        Ok(AlgElem {
            alg: alg.clone(),
            coeffs: out,
        })
    }

    pub fn scale(&self, c: FieldElem) -> AlgElem {
        let f = self.field();
        AlgElem {
            alg: self.alg.clone(),
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn pow(&self, mut k: u64) -> AlgElem {
        let mut base = self.clone();
        let mut acc = AlgElem::one(&self.alg);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The involution `Σ α_g g ↦ Σ α_g g^{-1}`.
    pub fn star(&self) -> AlgElem {
        let mut out = vec![FieldElem::ZERO; self.coeffs.len()];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[self.alg.inv_idx(i)] = c;
        }
        AlgElem {
            alg: self.alg.clone(),
            coeffs: out,
        }
    }

    /// Sum of all coefficients.
    pub fn augmentation(&self) -> FieldElem {
        let f = self.field();
        self.coeffs.iter().fold(FieldElem::ZERO, |acc, &c| f.add(acc, c))
    }

    /// The projection ρ: FG → FB induced by `a ↦ e`, `b ↦ b`.
    pub fn rho(&self) -> AlgElem {
        let fb = self.alg.fb();
        let q = self.alg.q();
        let f = self.field();
        let mut out = vec![FieldElem::ZERO; q];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i % q] = f.add(out[i % q], c);
        }
        AlgElem { alg: fb, coeffs: out }
    }

    /// Embeds an element of FB (given over `alg.fb()`) into FG.
    pub fn embed(alg: &Arc<GroupAlgebra>, u: &AlgElem) -> Result<AlgElem, AlgebraError> {
        if !u.alg.same(&alg.fb()) {
            return Err(AlgebraError::ContextMismatch);
        }
        let mut x = AlgElem::zero(alg);
        x.coeffs[..u.coeffs.len()].copy_from_slice(&u.coeffs);
        Ok(x)
    }

    /// Restricts an element supported on FB to the algebra FB.
    pub fn to_fb(&self) -> Result<AlgElem, AlgebraError> {
        if !self.is_in_fb() {
            return Err(AlgebraError::NotInFB);
        }
        Ok(AlgElem {
            alg: self.alg.fb(),
            coeffs: self.coeffs[..self.alg.q()].to_vec(),
        })
    }

    /// Multiplicative inverse.
    ///
    /// FB elements are inverted through their q×q regular representation.
    /// A general x factors as `x = y·w` with `w = ρ(x)` and `y ∈ 1 + Γ(A)`;
    /// y is inverted by the geometric series, which terminates because Γ(A)
    /// is nilpotent.
    pub fn invert(&self) -> Result<AlgElem, AlgebraError> {
        if self.is_in_fb() {
            let fb_inv = invert_in_fb(&self.to_fb()?)?;
            return AlgElem::embed(&self.alg, &fb_inv);
        }
        let w_inv = invert_in_fb(&self.rho())?;
        let w_inv = AlgElem::embed(&self.alg, &w_inv)?;
        let y = self * &w_inv;
        let y_inv = invert_unipotent(&y)?;
        Ok(&w_inv * &y_inv)
    }

    /// `((x + x*)/2, (x - x*)/2)`.
    pub fn sym_skew_split(&self) -> (AlgElem, AlgElem) {
        let f = self.field();
        let half = f.inv(f.from_int(2)).expect("characteristic is odd");
        let st = self.star();
        ((self + &st).scale(half), (self - &st).scale(half))
    }

    pub fn is_symmetric(&self) -> bool {
        self.star() == *self
    }

    pub fn is_skew(&self) -> bool {
        self.star() == -self
    }

    /// Coordinates in the Γ(A) basis, or `None` when `ρ(x) ≠ 0`.
    pub fn gamma_coords(&self) -> Option<Vec<FieldElem>> {
        if !self.rho().is_zero() {
            return None;
        }
        Some(self.coeffs[self.alg.q()..].to_vec())
    }

    pub fn from_gamma_coords(alg: &Arc<GroupAlgebra>, coords: &[FieldElem]) -> Result<AlgElem, AlgebraError> {
        let q = alg.q();
        if coords.len() != alg.gamma_dim() {
            return Err(AlgebraError::LengthMismatch {
                expected: alg.gamma_dim(),
                got: coords.len(),
            });
        }
        let f = alg.field();
        let mut coeffs = vec![FieldElem::ZERO; alg.dim()];
        coeffs[q..].copy_from_slice(coords);
        for (k, &c) in coords.iter().enumerate() {
            let j = (k + q) % q;
            coeffs[j] = f.sub(coeffs[j], c);
        }
        Ok(AlgElem {
            alg: alg.clone(),
            coeffs,
        })
    }

    /// The Γ(A) basis element `(a - 1) b^j` with Γ-coordinate `k`.
    pub fn gamma_basis_elem(alg: &Arc<GroupAlgebra>, k: usize) -> AlgElem {
        let q = alg.q();
        let mut x = AlgElem::zero(alg);
        x.coeffs[k + q] = FieldElem::ONE;
        x.coeffs[(k + q) % q] = alg.field().neg(FieldElem::ONE);
        x
    }
}

/// Inverse in FB by solving `x·y = 1` in the regular representation.
fn invert_in_fb(x: &AlgElem) -> Result<AlgElem, AlgebraError> {
    let alg = x.alg();
    let q = alg.q();
    let f = alg.field();
    let cols: Vec<Vec<FieldElem>> = (0..q).map(|k| (x * &AlgElem::b_pow(alg, k as i64)).coeffs).collect();
    if linalg::rank(f, &cols) < q {
        return Err(AlgebraError::NotAUnit);
    }
    let mut rhs = vec![FieldElem::ZERO; q];
    rhs[0] = FieldElem::ONE;
    let y = linalg::solve(f, &cols, &rhs).ok_or(AlgebraError::NotAUnit)?;
    AlgElem::from_coeffs(alg, y)
}

/// Inverse of `1 + γ` with γ nilpotent: `Σ_k (-γ)^k`.
fn invert_unipotent(y: &AlgElem) -> Result<AlgElem, AlgebraError> {
    let alg = y.alg();
    let minus_gamma = &AlgElem::one(alg) - y;
    let mut term = AlgElem::one(alg);
    let mut acc = AlgElem::one(alg);
    // The nilpotency index is at most dim Γ(A) + 1.
    for _ in 0..=alg.gamma_dim() + 1 {
        term = &term * &minus_gamma;
        if term.is_zero() {
            return Ok(acc);
        }
        acc = &acc + &term;
    }
    Err(AlgebraError::NotAUnit)
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&AlgElem> for &AlgElem {
            type Output = AlgElem;
            /// Panics when the operands live in different algebras.
            fn $m(self, rhs: &AlgElem) -> AlgElem {
                self.$try(rhs).expect("operands from different group algebras")
            }
        }
        impl $tr<AlgElem> for AlgElem {
            type Output = AlgElem;
            fn $m(self, rhs: AlgElem) -> AlgElem {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        let f = self.field();
        AlgElem {
            alg: self.alg.clone(),
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }
}

impl Neg for AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        -&self
    }
}

impl fmt::Display for AlgElem {
    /// Writes the element in the expression grammar accepted by the CLI,
    /// e.g. `2*b + 3*a1^2*b^4`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.alg.group();
        let field = self.field();
        let mut terms = Vec::new();
        for (idx, c) in self.support() {
            let e = g.elem(idx);
            let mut factors = Vec::new();
            for (i, &d) in g.a_digits(e.a).iter().enumerate() {
                match d {
                    0 => {}
                    1 => factors.push(format!("a{}", i + 1)),
                    _ => factors.push(format!("a{}^{}", i + 1, d)),
                }
            }
            match e.j {
                0 => {}
                1 => factors.push("b".to_string()),
                j => factors.push(format!("b^{j}")),
            }
            let coeff = field.display(c).to_string();
            terms.push(match (factors.is_empty(), c == FieldElem::ONE) {
                (true, _) => coeff,
                (false, true) => factors.join("*"),
                (false, false) => format!("{}*{}", coeff, factors.join("*")),
            });
        }
        if terms.is_empty() {
            return write!(out, "0");
        }
        write!(out, "{}", terms.join(" + "))
    }
}

/// The spanning set `{b^j (a - 1) : a ≠ e, 0 ≤ j < q}` of Γ(A).
pub struct GammaBasis {
    alg: Arc<GroupAlgebra>,
    /// Sparse form of each element, computed by multiplying in FG.
    elements: Vec<Vec<(usize, FieldElem)>>,
}

impl GammaBasis {
    pub fn new(alg: &Arc<GroupAlgebra>) -> Self {
        let g = alg.group();
        let q = alg.q();
        let f = alg.field();
        let mut elements = Vec::with_capacity(alg.gamma_dim());
        for j in 0..q {
            for a in 1..g.a_order() as u32 {
                // b^j (a - 1) = b^j a - b^j
                let left = alg.mul_idx(j, g.index(GroupElem { a, j: 0 }));
                elements.push(vec![(left, FieldElem::ONE), (j, f.neg(FieldElem::ONE))]);
            }
        }
        GammaBasis {
            alg: alg.clone(),
            elements,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, k: usize) -> AlgElem {
        let mut x = AlgElem::zero(&self.alg);
        for &(i, c) in &self.elements[k] {
            x.coeffs[i] = c;
        }
        x
    }

    /// Each element has exactly one coordinate outside FB and these
    /// coordinates are pairwise distinct, so the set is independent.
    pub fn is_independent(&self) -> bool {
        let q = self.alg.q();
        let mut seen = vec![false; self.alg.dim()];
        for el in &self.elements {
            let outside: Vec<usize> = el.iter().map(|&(i, _)| i).filter(|&i| i >= q).collect();
            if outside.len() != 1 || std::mem::replace(&mut seen[outside[0]], true) {
                return false;
            }
        }
        true
    }

    /// Dimension of Γ(A) from the independent spanning set.
    pub fn dim(&self) -> usize {
        self.len()
    }

    /// Row-reduced span inside FG (group coordinates).
    pub fn to_subspace(&self) -> Result<Subspace, AlgebraError> {
        let n = self.alg.dim();
        if n > DENSE_GAMMA_LIMIT {
            return Err(AlgebraError::TooLarge(n));
        }
        Ok(Subspace::span(
            self.alg.field(),
            n,
            (0..self.len()).map(|k| self.element(k).coeffs),
        ))
    }
}

/// Nilpotency index of Γ(A) and the resulting exponent of `1 + Γ(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaExponent {
    /// Smallest N with Γ(A)^N = 0.
    pub nilpotency_index: u32,
    /// k with p^k the smallest power of p that is at least N.
    pub k: u32,
    pub exponent: u64,
    /// `dim Γ(A)^i` for `i = 1..N`.
    pub power_dims: Vec<usize>,
}

/// Computes Γ(A)^i by iterated products until it vanishes.
///
/// Γ(A)^i is the span of `v (a_r - 1) b^j` over a basis `v` of Γ(A)^{i-1},
/// generators `a_r` of A and `0 ≤ j < q`: Γ(A) = Aug(FA)·FG, FA is
/// commutative and Γ(A)^{i-1}·FA ⊆ Γ(A)^{i-1}.
/// Since `(1 + γ)^{p^k} = 1 + γ^{p^k}` in characteristic p, the exponent of
/// `1 + Γ(A)` is at most the smallest `p^k ≥ N`.
pub fn one_plus_gamma_exponent(alg: &Arc<GroupAlgebra>) -> Result<GammaExponent, AlgebraError> {
    let n = alg.gamma_dim();
    if n > DENSE_GAMMA_LIMIT {
        return Err(AlgebraError::TooLarge(n));
    }
    let field = alg.field();
    let g = alg.group();
    let q = alg.q();
    let mut multipliers = Vec::new();
    for r in 0..g.rank() {
        let a = GroupElem {
            a: g.a_generator(r),
            j: 0,
        };
        let am1 = &AlgElem::group_elem(alg, a) - &AlgElem::one(alg);
        for j in 0..q {
            multipliers.push(&am1 * &AlgElem::b_pow(alg, j as i64));
        }
    }
    let mut current = GammaBasis::new(alg).to_subspace()?;
    let mut power_dims = vec![current.dim()];
    while current.dim() > 0 {
        let products: Vec<Vec<FieldElem>> = current
            .basis()
            .iter()
            .flat_map(|row| {
                let v = AlgElem::from_coeffs(alg, row.clone()).expect("row length is |G|");
                multipliers.iter().map(move |m| (&v * m).coeffs).collect::<Vec<_>>()
            })
            .collect();
        current = Subspace::span(field, alg.dim(), products);
        power_dims.push(current.dim());
    }
    power_dims.pop();
    let nilpotency_index = power_dims.len() as u32 + 1;
    let p = field.p();
    let (mut k, mut pk) = (0u32, 1u64);
    while pk < nilpotency_index as u64 {
        pk *= p;
        k += 1;
    }
    Ok(GammaExponent {
        nilpotency_index,
        k,
        exponent: pk,
        power_dims,
    })
}

/// Dense ±1-eigenspaces of the involution on Γ(A), in Γ-coordinates.
/// Returns `(S₁, S₂)` = (symmetric, skew-symmetric) elements of Γ(A).
pub fn star_eigenspaces(alg: &Arc<GroupAlgebra>) -> Result<(Subspace, Subspace), AlgebraError> {
    let n = alg.gamma_dim();
    if n > DENSE_GAMMA_LIMIT {
        return Err(AlgebraError::TooLarge(n));
    }
    let field = alg.field();
    let images = |sign: i64| -> Vec<Vec<FieldElem>> {
        (0..n)
            .map(|k| {
                let e = AlgElem::gamma_basis_elem(alg, k);
                let img = &e.star() - &e.scale(field.from_int(sign));
                img.gamma_coords().expect("Γ(A) is closed under the involution")
            })
            .collect()
    };
    Ok((
        linalg::kernel_of(field, n, &images(1)),
        linalg::kernel_of(field, n, &images(-1)),
    ))
}
