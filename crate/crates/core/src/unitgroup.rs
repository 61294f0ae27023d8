//! Centralizers, class lengths and the Cayley correspondence inside
//! V(FG) = (1 + Γ(A)) ⋊ V(FB).
//!
//! For x ∈ FB, left and right multiplication by x and the involution all
//! preserve the span of `{(a - 1) b^j : a ∈ O ∪ O^{-1}}` for every pair of
//! mutually inverse ⟨b⟩-orbits O, O^{-1} on A \ {e}. Centralizers of FB
//! elements are therefore computed one `2q²`-dimensional block at a time.
//! Arbitrary elements fall back to a dense kernel over all of Γ(A).

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgElem, AlgebraError, GroupAlgebra, DENSE_GAMMA_LIMIT};
use crate::cqstruct::{CqContext, ProjVec, Which};
use crate::field::FieldElem;
use crate::linalg::{self, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UnitGroupError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("element is not supported on FB")]
    NotInFB,
    #[error("element is not unitary")]
    NotUnitary,
    #[error("element is not skew-symmetric")]
    NotSkew,
    #[error("element is not in Γ(A)")]
    NotInGamma,
    #[error("element is not in 1 + Γ(A)")]
    NotInOnePlusGamma,
    #[error("element does not lie in the centralizer of b in 1 + Γ(A)")]
    BadCentralizerElement,
    #[error("dense computation over dimension {0} is too large")]
    TooLarge(usize),
}

/// `C_{Γ(A)}(x)` with its slices in the symmetric and skew parts.
#[derive(Clone, Debug)]
pub struct CentralizerReport {
    pub target: AlgElem,
    /// Kernel in Γ-coordinates.
    pub kernel: Subspace,
    pub dim: usize,
    pub sym_dim: usize,
    pub skew_dim: usize,
}

impl CentralizerReport {
    /// Kernel basis as elements of FG.
    pub fn basis_elements(&self) -> Vec<AlgElem> {
        let alg = self.target.alg();
        self.kernel
            .basis()
            .iter()
            .map(|c| AlgElem::from_gamma_coords(alg, c).expect("Γ-coordinates"))
            .collect()
    }
}

/// A class length `p^exponent`, optionally with its unitary counterpart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassLength {
    pub p: u64,
    /// `f·(dim Γ(A) - dim C)`.
    pub exponent: u64,
    /// `f·(dim S₂ - dim C ∩ S₂)` for unitary x.
    pub starred_exponent: Option<u64>,
}

/// Γ-coordinate of `(a - 1) b^j`.
#[inline]
fn coord(q: usize, a: u32, j: usize) -> usize {
    a as usize * q + j - q
}

/// Pairs of mutually inverse non-trivial orbits, each listed once.
fn orbit_pairs(alg: &GroupAlgebra) -> Vec<(usize, usize)> {
    let g = alg.group();
    let table = alg.orbits();
    (1..table.orbits.len())
        .filter_map(|id| {
            let inv = table.inverse_orbit(g, id);
            (id < inv).then_some((id, inv))
        })
        .collect()
}

/// Members of an orbit pair with their local offsets.
struct Block {
    members: Vec<u32>,
    local: std::collections::HashMap<u32, usize>,
}

impl Block {
    fn new(alg: &GroupAlgebra, (o1, o2): (usize, usize)) -> Self {
        let table = alg.orbits();
        let members: Vec<u32> = table.orbits[o1]
            .members
            .iter()
            .chain(&table.orbits[o2].members)
            .copied()
            .collect();
        let local = members.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        Block { members, local }
    }

    fn dim(&self, q: usize) -> usize {
        self.members.len() * q
    }

    fn idx(&self, q: usize, a: u32, j: usize) -> usize {
        self.local[&a] * q + j
    }
}

/// `xγ - γx` and `γ*` on one block, for `x = Σ x_k b^k`.
fn block_images(alg: &GroupAlgebra, block: &Block, x: &[FieldElem]) -> (Vec<Vec<FieldElem>>, Vec<Vec<FieldElem>>) {
    let f = alg.field();
    let g = alg.group();
    let q = alg.q();
    let d = block.dim(q);
    let mut ad = Vec::with_capacity(d);
    let mut star = Vec::with_capacity(d);
    for &a in &block.members {
        for j in 0..q {
            let mut img = vec![FieldElem::ZERO; d];
            for (k, &xk) in x.iter().enumerate() {
                if xk.is_zero() {
                    continue;
                }
                let jk = (j + k) % q;
                // b^k (a - 1) b^j = (σ^{-k}(a) - 1) b^{j+k}
                let left = block.idx(q, g.sigma_pow(-(k as i64), a), jk);
                img[left] = f.add(img[left], xk);
                let right = block.idx(q, a, jk);
                img[right] = f.sub(img[right], xk);
            }
            ad.push(img);
            // ((a - 1) b^j)* = (σ^j(a^{-1}) - 1) b^{-j}
            let mut s = vec![FieldElem::ZERO; d];
            s[block.idx(q, g.sigma_pow(j as i64, g.a_neg(a)), (q - j) % q)] = FieldElem::ONE;
            star.push(s);
        }
    }
    (ad, star)
}

/// Stacks `op(v)` with `star(v) - sign·v` for each domain vector.
fn stacked(
    field: &crate::field::FieldCtx,
    op: &[Vec<FieldElem>],
    star: &[Vec<FieldElem>],
    sign: i64,
) -> Vec<Vec<FieldElem>> {
    let s = field.from_int(sign);
    op.iter()
        .zip(star)
        .enumerate()
        .map(|(i, (o, st))| {
            let mut v = o.clone();
            let mut t = st.clone();
            t[i] = field.sub(t[i], s);
            v.extend(t);
            v
        })
        .collect()
}

/// Dimensions of `C_{Γ(A)}(x)` and of its symmetric and skew slices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerDims {
    pub dim: usize,
    pub sym_dim: usize,
    pub skew_dim: usize,
}

fn blocked(x: &AlgElem, with_kernel: bool) -> Result<(CentralizerDims, Option<Subspace>), UnitGroupError> {
    let alg = x.alg();
    if !x.is_in_fb() {
        return Err(UnitGroupError::NotInFB);
    }
    x.invert().map_err(|_| UnitGroupError::NotAUnit)?;
    let field = alg.field();
    let q = alg.q();
    let xs = &x.coeffs()[..q];
    let n = alg.gamma_dim();
    let mut dims = CentralizerDims {
        dim: 0,
        sym_dim: 0,
        skew_dim: 0,
    };
    let mut rows = Vec::new();
    for pair in orbit_pairs(alg) {
        let block = Block::new(alg, pair);
        let d = block.dim(q);
        let (ad, star) = block_images(alg, &block, xs);
        let ker = linalg::kernel_of(field, d, &ad);
        dims.dim += ker.dim();
        dims.sym_dim += linalg::kernel_of(field, 2 * d, &stacked(field, &ad, &star, 1)).dim();
        dims.skew_dim += linalg::kernel_of(field, 2 * d, &stacked(field, &ad, &star, -1)).dim();
        if !with_kernel {
            continue;
        }
        for v in ker.basis() {
            let mut full = vec![FieldElem::ZERO; n];
            for (&a, off) in block.members.iter().zip((0..).step_by(q)) {
                for j in 0..q {
                    full[coord(q, a, j)] = v[off + j];
                }
            }
            rows.push(full);
        }
    }
    let kernel = with_kernel.then(|| Subspace::span(field, n, rows));
    Ok((dims, kernel))
}

/// Centralizer of an FB unit in Γ(A), computed block by block.
pub fn centralizer_in_gamma(x: &AlgElem) -> Result<CentralizerReport, UnitGroupError> {
    let (d, kernel) = blocked(x, true)?;
    Ok(CentralizerReport {
        target: x.clone(),
        kernel: kernel.expect("requested"),
        dim: d.dim,
        sym_dim: d.sym_dim,
        skew_dim: d.skew_dim,
    })
}

/// Like [`centralizer_in_gamma`] without materializing the kernel.
pub fn centralizer_dims(x: &AlgElem) -> Result<CentralizerDims, UnitGroupError> {
    Ok(blocked(x, false)?.0)
}

/// Centralizer of an arbitrary element in Γ(A) by a dense kernel.
pub fn centralizer_in_gamma_dense(x: &AlgElem) -> Result<CentralizerReport, UnitGroupError> {
    let alg = x.alg();
    let n = alg.gamma_dim();
    if n > DENSE_GAMMA_LIMIT {
        return Err(UnitGroupError::TooLarge(n));
    }
    let field = alg.field();
    let mut ad = Vec::with_capacity(n);
    let mut star = Vec::with_capacity(n);
    for k in 0..n {
        let e = AlgElem::gamma_basis_elem(alg, k);
        let img = &(x * &e) - &(&e * x);
        ad.push(img.gamma_coords().expect("Γ(A) is an ideal"));
        star.push(e.star().gamma_coords().expect("Γ(A) is star-closed"));
    }
    let kernel = linalg::kernel_of(field, n, &ad);
    let sym_dim = linalg::kernel_of(field, 2 * n, &stacked(field, &ad, &star, 1)).dim();
    let skew_dim = linalg::kernel_of(field, 2 * n, &stacked(field, &ad, &star, -1)).dim();
    Ok(CentralizerReport {
        target: x.clone(),
        dim: kernel.dim(),
        kernel,
        sym_dim,
        skew_dim,
    })
}

/// `(dim S₁, dim S₂)` for Γ(A), block by block.
pub fn star_slice_dims(alg: &Arc<GroupAlgebra>) -> (usize, usize) {
    let d = centralizer_dims(&AlgElem::one(alg)).expect("1 is a unit of FB");
    (d.sym_dim, d.skew_dim)
}

/// The span of `{b^j (Ô - |O|)}` over non-trivial orbits O.
pub fn centralizer_of_b_orbit_form(alg: &Arc<GroupAlgebra>) -> Subspace {
    let g = alg.group();
    let field = alg.field();
    let mut rows = Vec::new();
    for orbit in alg.orbits().orbits.iter().skip(1) {
        let mut hat = AlgElem::zero(alg);
        let mut coeffs = hat.coeffs().to_vec();
        for idx in orbit.sum_support(g) {
            coeffs[idx] = field.add(coeffs[idx], FieldElem::ONE);
        }
        coeffs[0] = field.sub(coeffs[0], field.from_int(orbit.members.len() as i64));
        hat = AlgElem::from_coeffs(alg, coeffs).expect("length |G|");
        for j in 0..alg.q() {
            let el = &AlgElem::b_pow(alg, j as i64) * &hat;
            rows.push(el.gamma_coords().expect("orbit sums lie in Γ(A)"));
        }
    }
    Subspace::span(field, alg.gamma_dim(), rows)
}

/// Orbit-form span, the kernel for b, and whether they agree by double inclusion.
pub struct OrbitFormCheck {
    pub orbit_span: Subspace,
    pub kernel: CentralizerReport,
    pub equal: bool,
}

pub fn check_centralizer_of_b(alg: &Arc<GroupAlgebra>) -> OrbitFormCheck {
    let field = alg.field();
    let orbit_span = centralizer_of_b_orbit_form(alg);
    let kernel = centralizer_in_gamma(&AlgElem::b_pow(alg, 1)).expect("b is a unit of FB");
    let equal = orbit_span.is_subspace_of(field, &kernel.kernel) && kernel.kernel.is_subspace_of(field, &orbit_span);
    OrbitFormCheck {
        orbit_span,
        kernel,
        equal,
    }
}

fn unitary(x: &AlgElem) -> bool {
    (x * &x.star()).is_one()
}

/// Class length of `x ∈ V(FB)` under conjugation by `1 + Γ(A)`.
pub fn class_length(x: &AlgElem, starred: bool) -> Result<ClassLength, UnitGroupError> {
    if starred && !unitary(x) {
        return Err(UnitGroupError::NotUnitary);
    }
    let rep = centralizer_dims(x)?;
    let alg = x.alg();
    let f = alg.field().degree() as u64;
    let (_, s2) = star_slice_dims(alg);
    Ok(ClassLength {
        p: alg.field().p(),
        exponent: f * (alg.gamma_dim() - rep.dim) as u64,
        starred_exponent: starred.then(|| f * (s2 - rep.skew_dim) as u64),
    })
}

/// True iff `dim C_{Γ(A)}(x) = 2·dim(C ∩ S₂)` for a unitary FB unit x.
pub fn sqrt_relation_check(x: &AlgElem) -> Result<bool, UnitGroupError> {
    if !unitary(x) {
        return Err(UnitGroupError::NotUnitary);
    }
    let rep = centralizer_dims(x)?;
    Ok(rep.dim == 2 * rep.skew_dim)
}

/// `u = (1 - l)(1 + l)^{-1}` for skew l in Γ(A).
pub fn cayley(l: &AlgElem) -> Result<AlgElem, UnitGroupError> {
    if !l.rho().is_zero() {
        return Err(UnitGroupError::NotInGamma);
    }
    if !l.is_skew() {
        return Err(UnitGroupError::NotSkew);
    }
    Ok(cayley_formula(l)?)
}

/// `l = (1 - u)(1 + u)^{-1}` for unitary u in 1 + Γ(A).
pub fn cayley_inv(u: &AlgElem) -> Result<AlgElem, UnitGroupError> {
    if !u.rho().is_one() {
        return Err(UnitGroupError::NotInOnePlusGamma);
    }
    if !unitary(u) {
        return Err(UnitGroupError::NotUnitary);
    }
    Ok(cayley_formula(u)?)
}

fn cayley_formula(x: &AlgElem) -> Result<AlgElem, AlgebraError> {
    let one = AlgElem::one(x.alg());
    Ok(&(&one - x) * &(&one + x).invert()?)
}

/// Factors a unit as `(1 + γ)·w` with `w = ρ(v)` in FB.
pub fn semidirect_split(v: &AlgElem) -> Result<(AlgElem, AlgElem), UnitGroupError> {
    let alg = v.alg();
    let w = AlgElem::embed(alg, &v.rho())?;
    let w_inv = w.invert().map_err(|_| UnitGroupError::NotAUnit)?;
    Ok((v * &w_inv, w))
}

/// Seeded samplers for elements of Γ(A) and the unit groups.
pub struct Sampler<'a> {
    alg: &'a Arc<GroupAlgebra>,
    cq: &'a CqContext,
}

impl<'a> Sampler<'a> {
    pub fn new(alg: &'a Arc<GroupAlgebra>, cq: &'a CqContext) -> Self {
        Sampler { alg, cq }
    }

    fn random_field<R: Rng>(&self, rng: &mut R) -> FieldElem {
        let f = self.alg.field();
        f.elements().nth(rng.gen_range(0..f.size() as usize)).expect("in range")
    }

    pub fn gamma<R: Rng>(&self, rng: &mut R) -> AlgElem {
        let c: Vec<FieldElem> = (0..self.alg.gamma_dim()).map(|_| self.random_field(rng)).collect();
        AlgElem::from_gamma_coords(self.alg, &c).expect("length dim Γ(A)")
    }

    pub fn skew_gamma<R: Rng>(&self, rng: &mut R) -> AlgElem {
        self.gamma(rng).sym_skew_split().1
    }

    /// Uniform element of the given subgroup of V(FB), embedded in FG.
    pub fn fb_unit<R: Rng>(&self, which: Which, rng: &mut R) -> AlgElem {
        let q = self.cq.q();
        let k = if which == Which::V { q - 1 } else { (q - 1) / 2 };
        let x: Vec<u64> = (0..k).map(|_| rng.gen_range(0..self.cq.n())).collect();
        self.from_proj(&self.cq.logs_to_proj(which, &x))
    }

    pub fn from_proj(&self, v: &ProjVec) -> AlgElem {
        let u = self.cq.from_projections(v).expect("length q");
        AlgElem::embed(self.alg, &u).expect("same FB")
    }

    /// `(1 + γ)·w` with γ uniform in Γ(A) and w uniform in V(FB).
    pub fn v_fg<R: Rng>(&self, rng: &mut R) -> AlgElem {
        let one = AlgElem::one(self.alg);
        &(&one + &self.gamma(rng)) * &self.fb_unit(Which::V, rng)
    }

    /// `cayley(l)·w` with l skew in Γ(A) and w in V_*(FB).
    pub fn vstar_fg<R: Rng>(&self, rng: &mut R) -> AlgElem {
        let u = cayley(&self.skew_gamma(rng)).expect("skew element of Γ(A)");
        &u * &self.fb_unit(Which::VStar, rng)
    }

    /// A unitary element of `C_{1+Γ(A)}(b)`, the Cayley image of the skew
    /// part of a random element of the orbit-sum span.
    pub fn unitary_centralizer_of_b<R: Rng>(&self, orbit_span: &Subspace, rng: &mut R) -> AlgElem {
        let c: Vec<FieldElem> = (0..orbit_span.dim()).map(|_| self.random_field(rng)).collect();
        let coords = linalg::combine(self.alg.field(), orbit_span.basis(), &c);
        let gamma = AlgElem::from_gamma_coords(self.alg, &coords).expect("Γ-coordinates");
        cayley(&gamma.sym_skew_split().1).expect("skew element of Γ(A)")
    }

    /// `1 + γ` for γ random in the orbit-sum span.
    pub fn centralizer_of_b<R: Rng>(&self, orbit_span: &Subspace, rng: &mut R) -> AlgElem {
        let c: Vec<FieldElem> = (0..orbit_span.dim()).map(|_| self.random_field(rng)).collect();
        let coords = linalg::combine(self.alg.field(), orbit_span.basis(), &c);
        &AlgElem::one(self.alg) + &AlgElem::from_gamma_coords(self.alg, &coords).expect("Γ-coordinates")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisjointReport {
    pub seed: u64,
    pub trials: u64,
    pub starred: bool,
    /// Trials where `v^{-1}(w z₁)v = w z₂`.
    pub hits: u64,
    pub first_hit: Option<u64>,
    pub dim_c_w: usize,
    pub dim_c_wz1: usize,
    /// `dim C(w z₁) ≤ dim C(w)`, i.e. `|Cl_{w z₁}| ≥ |Cl_w|`.
    pub lower_bound_holds: bool,
}

fn in_centralizer_of_b(z: &AlgElem) -> bool {
    let b = AlgElem::b_pow(z.alg(), 1);
    z.rho().is_one() && &b * z == z * &b
}

/// Samples conjugates of `w z₁` looking for `w z₂`. Trial 0 uses `v = 1`.
#[allow(clippy::too_many_arguments)]
pub fn sample_disjoint_classes<R: Rng>(
    sampler: &Sampler<'_>,
    w: &AlgElem,
    z1: &AlgElem,
    z2: &AlgElem,
    trials: u64,
    starred: bool,
    seed: u64,
    rng: &mut R,
) -> Result<DisjointReport, UnitGroupError> {
    if !in_centralizer_of_b(z1) || !in_centralizer_of_b(z2) {
        return Err(UnitGroupError::BadCentralizerElement);
    }
    if starred && !(unitary(z1) && unitary(z2)) {
        return Err(UnitGroupError::BadCentralizerElement);
    }
    let wc = centralizer_dims(w)?;
    let x = w * z1;
    let y = w * z2;
    let mut hits = 0;
    let mut first_hit = None;
    for t in 0..trials {
        let v = match (t, starred) {
            (0, _) => AlgElem::one(sampler.alg),
            (_, false) => sampler.v_fg(rng),
            (_, true) => sampler.vstar_fg(rng),
        };
        // v^{-1} x v = y  ⟺  x v = v y
        if &x * &v == &v * &y {
            hits += 1;
            first_hit.get_or_insert(t);
        }
    }
    let wz = centralizer_in_gamma_dense(&x)?;
    Ok(DisjointReport {
        seed,
        trials,
        starred,
        hits,
        first_hit,
        dim_c_w: wc.dim,
        dim_c_wz1: wz.dim,
        lower_bound_holds: wz.dim <= wc.dim,
    })
}
