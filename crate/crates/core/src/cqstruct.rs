//! The commutative semisimple layer FB = FC_q.
//!
//! With ω of order q, the primitive idempotents are
//! `e_j = (1/q) Σ_k ω^{-jk} b^k`, so `b e_j = ω^j e_j` and every `u ∈ FB` is
//! `Σ u_i e_i` with projections `u_i = Σ_k u_k ω^{ik}`.
//!
//! Subgroup questions about V(FB) are answered in logarithmic coordinates:
//! a normalized unit is the tuple `(x_1, ..., x_{q-1})` with `u_i = ζ^{x_i}`,
//! so V(FB) ≅ Z_N^{q-1} for `N = p^f - 1`. Unitary units satisfy
//! `x_{q-i} = -x_i` and are coordinatized by `(x_1, ..., x_r)`, `r = (q-1)/2`.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgElem, AlgebraError, GroupAlgebra};
use crate::arith::gcd;
use crate::field::{FieldCtx, FieldElem, FieldError, QDecomp};
use crate::linalg;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CqError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("element is not supported on FB")]
    NotInFB,
    #[error("projection vector has length {got}, expected {expected}")]
    BadLength { expected: usize, got: usize },
    #[error("projections are not distinct: dim F[u] = {dim} < q")]
    RepeatedProjections { dim: usize },
    #[error("enumeration of {needed} elements exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("hypothesis fails: {0}")]
    HypothesisFail(String),
    #[error("input must be a normalized unitary unit of order q")]
    NotUnitaryOfOrderQ,
}

/// Which subgroup of V(FB) to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Which {
    /// All normalized units.
    V,
    /// Symmetric normalized units.
    VPlus,
    /// Unitary normalized units.
    VStar,
}

/// `(u_0, ..., u_{q-1})` with `u = Σ u_i e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ProjVec(pub Vec<FieldElem>);

impl ProjVec {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn has_distinct_entries(&self) -> bool {
        let set: HashSet<_> = self.0.iter().collect();
        set.len() == self.0.len()
    }

    pub fn distinct_count(&self) -> usize {
        self.0.iter().collect::<HashSet<_>>().len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitClass {
    pub is_unit: bool,
    pub is_normalized: bool,
    pub is_symmetric: bool,
    pub is_unitary: bool,
    pub has_distinct_projections: bool,
    /// Multiplicative order, when a unit.
    pub order: Option<u64>,
}

/// FC_q together with its idempotents and a discrete-log table for F^×.
pub struct CqContext {
    alg: Arc<GroupAlgebra>,
    decomp: QDecomp,
    idempotents: Vec<AlgElem>,
    /// ω^k for k in 0..q.
    omega_pows: Vec<FieldElem>,
    inv_q: FieldElem,
    /// `log[raw(x)]` with `x = ζ^log`; unused at index 0.
    log: Vec<u32>,
    /// ζ^k for k in 0..N.
    exp: Vec<FieldElem>,
}

impl CqContext {
    pub fn new(field: FieldCtx, q: u64) -> Result<Self, CqError> {
        let decomp = field.q_decompose(q)?;
        let alg = GroupAlgebra::cyclic(field, q);
        Ok(Self::build(alg, decomp))
    }

    /// The FB layer of a larger group algebra.
    pub fn for_algebra(alg: &Arc<GroupAlgebra>) -> Result<Self, CqError> {
        let decomp = alg.field().q_decompose(alg.q() as u64)?;
        Ok(Self::build(alg.fb(), decomp))
    }

    fn build(alg: Arc<GroupAlgebra>, decomp: QDecomp) -> Self {
        let field = alg.field().clone();
        let q = alg.q();
        let omega_pows: Vec<FieldElem> = (0..q as u64).map(|k| field.pow(decomp.omega, k)).collect();
        let inv_q = field.inv(field.from_int(q as i64)).expect("q is prime to p");
        let n = field.order() as usize;
        let mut log = vec![0u32; field.size() as usize];
        let mut exp = Vec::with_capacity(n);
        let mut x = field.one();
        for k in 0..n {
            log[x.raw() as usize] = k as u32;
            exp.push(x);
            x = field.mul(x, field.zeta());
        }
        let idempotents = (0..q)
            .map(|j| {
                let coeffs = (0..q)
                    .map(|k| field.mul(inv_q, omega_pows[(q - (j * k) % q) % q]))
                    .collect();
                AlgElem::from_coeffs(&alg, coeffs).expect("length q")
            })
            .collect();
        CqContext {
            alg,
            decomp,
            idempotents,
            omega_pows,
            inv_q,
            log,
            exp,
        }
    }

    pub fn alg(&self) -> &Arc<GroupAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> &FieldCtx {
        self.alg.field()
    }

    pub fn q(&self) -> usize {
        self.alg.q()
    }

    pub fn decomp(&self) -> &QDecomp {
        &self.decomp
    }

    /// `N = p^f - 1`.
    pub fn n(&self) -> u64 {
        self.field().order()
    }

    pub fn idempotents(&self) -> &[AlgElem] {
        &self.idempotents
    }

    pub fn b(&self) -> AlgElem {
        AlgElem::b_pow(&self.alg, 1)
    }

    /// Accepts elements of FB or of an FG whose FB is this algebra.
    fn as_fb(&self, u: &AlgElem) -> Result<AlgElem, CqError> {
        let v = if u.alg().same(&self.alg) {
            u.clone()
        } else {
            u.to_fb().map_err(|_| CqError::NotInFB)?
        };
        if !v.alg().same(&self.alg) {
            return Err(CqError::Algebra(AlgebraError::ContextMismatch));
        }
        Ok(v)
    }

    pub fn projections(&self, u: &AlgElem) -> Result<ProjVec, CqError> {
        let u = self.as_fb(u)?;
        let f = self.field();
        let q = self.q();
        let c = u.coeffs();
        Ok(ProjVec(
            (0..q)
                .map(|i| {
                    (0..q).fold(FieldElem::ZERO, |acc, k| {
                        f.add(acc, f.mul(c[k], self.omega_pows[(i * k) % q]))
                    })
                })
                .collect(),
        ))
    }

    pub fn from_projections(&self, v: &ProjVec) -> Result<AlgElem, CqError> {
        let q = self.q();
        if v.len() != q {
            return Err(CqError::BadLength {
                expected: q,
                got: v.len(),
            });
        }
        let f = self.field();
        let coeffs = (0..q)
            .map(|k| {
                let s = (0..q).fold(FieldElem::ZERO, |acc, i| {
                    f.add(acc, f.mul(v.0[i], self.omega_pows[(q - (i * k) % q) % q]))
                });
                f.mul(s, self.inv_q)
            })
            .collect();
        Ok(AlgElem::from_coeffs(&self.alg, coeffs)?)
    }

    pub fn classify_unit(&self, u: &AlgElem) -> Result<UnitClass, CqError> {
        let u = self.as_fb(u)?;
        let pv = self.projections(&u)?;
        let f = self.field();
        let q = self.q();
        let x = &pv.0;
        let is_unit = x.iter().all(|c| !c.is_zero());
        let is_symmetric = (1..q).all(|i| x[i] == x[q - i]);
        let is_unitary = is_unit && (0..q).all(|i| f.mul(x[i], x[(q - i) % q]) == f.one());
        let order = is_unit.then(|| {
            let one = AlgElem::one(&self.alg);
            let mut acc = u.clone();
            let mut k = 1u64;
            while acc != one {
                acc = &acc * &u;
                k += 1;
            }
            k
        });
        Ok(UnitClass {
            is_unit,
            is_normalized: is_unit && x[0] == f.one(),
            is_symmetric,
            is_unitary,
            has_distinct_projections: pv.has_distinct_entries(),
            order,
        })
    }

    /// `dim_F F[u]`, the rank of `{1, u, ..., u^{q-1}}`.
    pub fn span_dim(&self, u: &AlgElem) -> Result<usize, CqError> {
        let u = self.as_fb(u)?;
        Ok(linalg::rank(self.field(), &self.powers(&u)))
    }

    fn powers(&self, u: &AlgElem) -> Vec<Vec<FieldElem>> {
        let mut out = Vec::with_capacity(self.q());
        let mut acc = AlgElem::one(&self.alg);
        for _ in 0..self.q() {
            out.push(acc.coeffs().to_vec());
            acc = &acc * u;
        }
        out
    }

    /// Coefficients `c_0, ..., c_{q-1}` with `b = Σ c_k u^k`.
    pub fn b_polynomial(&self, u: &AlgElem) -> Result<Vec<FieldElem>, CqError> {
        let u = self.as_fb(u)?;
        let cols = self.powers(&u);
        let dim = linalg::rank(self.field(), &cols);
        if dim < self.q() {
            return Err(CqError::RepeatedProjections { dim });
        }
        let c = linalg::solve(self.field(), &cols, self.b().coeffs()).ok_or(CqError::RepeatedProjections { dim })?;
        debug_assert_eq!(eval_poly(&c, &u), self.b());
        Ok(c)
    }

    /// `ζ^x`.
    pub fn exp(&self, x: u64) -> FieldElem {
        self.exp[(x % self.n()) as usize]
    }

    /// Discrete log base ζ of a nonzero element.
    pub fn log(&self, a: FieldElem) -> u64 {
        assert!(!a.is_zero(), "log of zero");
        self.log[a.raw() as usize] as u64
    }

    /// Number of elements of the chosen subgroup of V(FB).
    pub fn subgroup_order(&self, which: Which) -> u128 {
        let n = self.n() as u128;
        let q = self.q() as u32;
        match which {
            Which::V => n.pow(q - 1),
            Which::VPlus | Which::VStar => n.pow((q - 1) / 2),
        }
    }

    /// Free log coordinates of the chosen subgroup: `q - 1` for V, `r` otherwise.
    fn free_coords(&self, which: Which) -> usize {
        match which {
            Which::V => self.q() - 1,
            _ => (self.q() - 1) / 2,
        }
    }

    /// Log coordinates of every element, in lexicographic order.
    pub fn enumerate_logs(&self, which: Which, budget: u64) -> Result<Vec<Vec<u64>>, CqError> {
        let needed = self.subgroup_order(which);
        if needed > budget as u128 {
            return Err(CqError::BudgetExceeded { needed, budget });
        }
        let k = self.free_coords(which);
        let n = self.n();
        let mut out = Vec::with_capacity(needed as usize);
        let mut cur = vec![0u64; k];
        loop {
            out.push(cur.clone());
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < n {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// Projection vector of the element with the given free log coordinates.
    pub fn logs_to_proj(&self, which: Which, x: &[u64]) -> ProjVec {
        let q = self.q();
        let n = self.n();
        let mut v = vec![self.field().one(); q];
        match which {
            Which::V => {
                for i in 1..q {
                    v[i] = self.exp(x[i - 1]);
                }
            }
            Which::VPlus | Which::VStar => {
                for i in 1..=(q - 1) / 2 {
                    v[i] = self.exp(x[i - 1]);
                    let mirrored = if which == Which::VPlus {
                        x[i - 1]
                    } else {
                        (n - x[i - 1]) % n
                    };
                    v[q - i] = self.exp(mirrored);
                }
            }
        }
        ProjVec(v)
    }

    pub fn enumerate(&self, which: Which, budget: u64) -> Result<Vec<ProjVec>, CqError> {
        Ok(self
            .enumerate_logs(which, budget)?
            .iter()
            .map(|x| self.logs_to_proj(which, x))
            .collect())
    }

    /// Order of a log tuple in Z_N^k.
    pub fn log_order(&self, x: &[u64]) -> u64 {
        let n = self.n();
        x.iter().fold(1, |acc, &xi| {
            let o = n / gcd(xi % n, n);
            acc / gcd(acc, o) * o
        })
    }

    /// Hall 2′-parts of V₊ and V_*, their intersection, and their product.
    pub fn hall_2prime(&self, budget: u64) -> Result<HallReport, CqError> {
        let q = self.q();
        let odd = |x: &[u64]| self.log_order(x) % 2 == 1;
        // Embed V₊ and V_* into V's coordinates.
        let embed = |which: Which, x: &[u64]| -> Vec<u64> {
            let n = self.n();
            let mut full = vec![0u64; q - 1];
            for i in 1..=(q - 1) / 2 {
                full[i - 1] = x[i - 1];
                full[q - i - 1] = if which == Which::VPlus {
                    x[i - 1]
                } else {
                    (n - x[i - 1]) % n
                };
            }
            full
        };
        let plus: Vec<Vec<u64>> = self
            .enumerate_logs(Which::VPlus, budget)?
            .into_iter()
            .filter(|x| odd(x))
            .map(|x| embed(Which::VPlus, &x))
            .collect();
        let star: Vec<Vec<u64>> = self
            .enumerate_logs(Which::VStar, budget)?
            .into_iter()
            .filter(|x| odd(x))
            .map(|x| embed(Which::VStar, &x))
            .collect();
        let needed = plus.len() as u128 * star.len() as u128;
        if needed > budget as u128 {
            return Err(CqError::BudgetExceeded { needed, budget });
        }
        let plus_set: HashSet<&Vec<u64>> = plus.iter().collect();
        let intersection = star.iter().filter(|x| plus_set.contains(x)).count();
        let n = self.n();
        let product: HashSet<Vec<u64>> = plus
            .iter()
            .flat_map(|x| {
                star.iter()
                    .map(move |y| x.iter().zip(y).map(|(a, b)| (a + b) % n).collect())
            })
            .collect();
        let mut n_odd = n;
        while n_odd.is_multiple_of(2) {
            n_odd /= 2;
        }
        Ok(HallReport {
            v_hall_order: (n_odd as u128).pow(q as u32 - 1),
            plus_hall_order: plus.len() as u128,
            star_hall_order: star.len() as u128,
            intersection_order: intersection as u128,
            product_order: product.len() as u128,
        })
    }

    /// Log coordinates of b inside V_*: `(N/q)·(1, 2, ..., r)`.
    pub fn b_logs(&self) -> Vec<u64> {
        let step = self.n() / self.q() as u64;
        (1..=(self.q() as u64 - 1) / 2).map(|i| (step * i) % self.n()).collect()
    }

    /// Every complement of B = ⟨b⟩ in V_*(FB).
    ///
    /// A complement has index q, and the index-q subgroups of
    /// V_* ≅ Z_N^r are exactly the kernels of `x ↦ Σ c_i x_i mod q` for
    /// `c ≠ 0` up to scalars. Such a kernel is a complement iff it misses b.
    pub fn complement_search(&self, budget: u64) -> Result<ComplementSearch, CqError> {
        let q = self.q() as u64;
        let r = (self.q() - 1) / 2;
        let elements = self.enumerate_logs(Which::VStar, budget)?;
        let b = self.b_logs();
        let phi = |c: &[u64], x: &[u64]| c.iter().zip(x).map(|(ci, xi)| ci * (xi % q)).sum::<u64>() % q;
        let mut complements = Vec::new();
        let mut hyperplanes = 0usize;
        for c in normalized_vectors(q, r) {
            hyperplanes += 1;
            if phi(&c, &b) == 0 {
                continue;
            }
            let members: Vec<Vec<u64>> = elements.iter().filter(|x| phi(&c, x) == 0).cloned().collect();
            let witness = members
                .iter()
                .find(|x| self.logs_to_proj(Which::VStar, x).has_distinct_entries())
                .map(|x| self.logs_to_proj(Which::VStar, x));
            complements.push(Complement {
                functional: c,
                order: members.len() as u64,
                distinct_projection_witness: witness,
                members,
            });
        }
        Ok(ComplementSearch {
            group_order: elements.len() as u64,
            index_q_subgroups: hyperplanes,
            complements,
        })
    }

    /// Checks that every order-q element of V_* lies in a cyclic subgroup of
    /// order q^m.
    pub fn structural_scan(&self, budget: u64) -> Result<StructuralScan, CqError> {
        let q = self.q() as u64;
        let qm = q.pow(self.decomp.m);
        let n = self.n();
        let elements = self.enumerate_logs(Which::VStar, budget)?;
        let order_q: Vec<&Vec<u64>> = elements.iter().filter(|x| self.log_order(x) == q).collect();
        let mut covered: HashSet<Vec<u64>> = HashSet::new();
        let mut cyclic_generators = 0usize;
        for g in elements.iter().filter(|x| self.log_order(x) == qm) {
            cyclic_generators += 1;
            // g^{q^{m-1}} generates the order-q subgroup of ⟨g⟩.
            let h: Vec<u64> = g.iter().map(|&xi| (xi * (qm / q)) % n).collect();
            for k in 1..q {
                covered.insert(h.iter().map(|&xi| (xi * k) % n).collect());
            }
        }
        let uncovered = order_q.iter().filter(|x| !covered.contains(**x)).count();
        Ok(StructuralScan {
            q_power: qm,
            order_q_elements: order_q.len(),
            order_q_power_elements: cyclic_generators,
            uncovered,
        })
    }

    /// Builds a normalized unitary unit with q distinct projections from an
    /// order-q unitary unit n, by multiplying n with v whose remaining
    /// projection pairs are `(η^e, η^{-e})` for distinct admissible e.
    pub fn distinct_projection_unit(&self, n: &ProjVec) -> Result<ProjVec, CqError> {
        let q = self.q();
        let d = &self.decomp;
        let f = self.field();
        if n.len() != q {
            return Err(CqError::BadLength {
                expected: q,
                got: n.len(),
            });
        }
        if d.m != 1 {
            return Err(CqError::HypothesisFail(format!("m = {} is not 1", d.m)));
        }
        if d.s + 1 < q as u64 {
            return Err(CqError::HypothesisFail(format!(
                "s + 1 = {} < q = {q}, so only s - 2 < q - 3 powers of η are available",
                d.s + 1
            )));
        }
        let x = &n.0;
        let unitary = x[0] == f.one() && (1..q).all(|i| !x[i].is_zero() && f.mul(x[i], x[q - i]) == f.one());
        let order_q = (1..q).all(|i| f.pow(x[i], q as u64) == f.one());
        let t = (1..q).find(|&i| x[i] != f.one());
        let Some(t) = t.filter(|_| unitary && order_q) else {
            return Err(CqError::NotUnitaryOfOrderQ);
        };
        let s = d.s;
        let mut v = vec![f.one(); q];
        let mut used = vec![false; s as usize];
        used[0] = true;
        if s.is_multiple_of(2) {
            used[(s / 2) as usize] = true;
        }
        let mut e = 1u64;
        for i in 1..=(q - 1) / 2 {
            if i == t || i == q - t {
                continue;
            }
            while (e as usize) < used.len() && used[e as usize] {
                e += 1;
            }
            if e >= s {
                return Err(CqError::HypothesisFail("ran out of powers of η".to_string()));
            }
            used[e as usize] = true;
            used[(s - e) as usize] = true;
            v[i] = f.pow(d.eta, e);
            v[q - i] = f.pow(d.eta, s - e);
        }
        let w = ProjVec(v.iter().zip(x).map(|(&a, &b)| f.mul(a, b)).collect());
        debug_assert!(w.has_distinct_entries());
        Ok(w)
    }
}

/// `Σ c_k u^k` by Horner's rule.
pub fn eval_poly(c: &[FieldElem], u: &AlgElem) -> AlgElem {
    let alg = u.alg();
    c.iter()
        .rev()
        .fold(AlgElem::zero(alg), |acc, &ck| &(&acc * u) + &AlgElem::scalar(alg, ck))
}

/// Nonzero vectors in Z_q^r whose first nonzero entry is 1.
fn normalized_vectors(q: u64, r: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let total = q.pow(r as u32);
    for code in 1..total {
        let mut c = vec![0u64; r];
        let mut v = code;
        for slot in c.iter_mut().rev() {
            *slot = v % q;
            v /= q;
        }
        if c.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(c);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HallReport {
    pub v_hall_order: u128,
    pub plus_hall_order: u128,
    pub star_hall_order: u128,
    pub intersection_order: u128,
    pub product_order: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Complement {
    /// Coefficients of the defining functional `x ↦ Σ c_i x_i mod q`.
    pub functional: Vec<u64>,
    pub order: u64,
    pub distinct_projection_witness: Option<ProjVec>,
    #[serde(skip)]
    pub members: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplementSearch {
    pub group_order: u64,
    pub index_q_subgroups: usize,
    pub complements: Vec<Complement>,
}

impl ComplementSearch {
    pub fn has_complement(&self) -> bool {
        !self.complements.is_empty()
    }

    pub fn every_complement_has_witness(&self) -> bool {
        self.complements.iter().all(|c| c.distinct_projection_witness.is_some())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralScan {
    pub q_power: u64,
    pub order_q_elements: usize,
    pub order_q_power_elements: usize,
    pub uncovered: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, q: u64) -> CqContext {
        CqContext::new(FieldCtx::prime(p).unwrap(), q).unwrap()
    }

    fn fb(c: &CqContext, xs: &[i64]) -> AlgElem {
        let f = c.field();
        AlgElem::from_coeffs(c.alg(), xs.iter().map(|&x| f.from_int(x)).collect()).unwrap()
    }

    #[test]
    fn f7_idempotents() {
        let c = ctx(7, 3);
        let e = c.idempotents();
        assert_eq!(e[0], fb(&c, &[5, 5, 5]));
        assert_eq!(e[1], fb(&c, &[5, 6, 3]));
        assert_eq!(e[2], fb(&c, &[5, 3, 6]));
        assert!((&e[0] * &e[1]).is_zero());
        assert_eq!(&c.b() * &e[1], e[1].scale(c.field().from_int(2)));
    }

    #[test]
    fn projections_of_b_and_one() {
        let c = ctx(11, 5);
        let w = c.decomp().omega;
        let f = c.field();
        let pb = c.projections(&c.b()).unwrap();
        assert_eq!(pb.0, (0..5).map(|k| f.pow(w, k)).collect::<Vec<_>>());
        assert_eq!(c.from_projections(&pb).unwrap(), c.b());
        let ones = ProjVec(vec![f.one(); 5]);
        assert!(c.from_projections(&ones).unwrap().is_one());
        let mut zero_first = ones.clone();
        zero_first.0[0] = f.zero();
        let x = c.from_projections(&zero_first).unwrap();
        assert!((&x * &c.idempotents()[0]).is_zero());
        assert!(!c.classify_unit(&x).unwrap().is_unit);
    }

    #[test]
    fn exhaustive_round_trip_f7() {
        let c = ctx(7, 3);
        let f = c.field();
        for a in f.elements() {
            for b in f.elements() {
                for d in f.elements() {
                    let v = ProjVec(vec![a, b, d]);
                    let u = c.from_projections(&v).unwrap();
                    assert_eq!(c.projections(&u).unwrap(), v);
                }
            }
        }
    }

    #[test]
    fn classify_b() {
        let c = ctx(7, 3);
        let k = c.classify_unit(&c.b()).unwrap();
        assert!(k.is_unitary && !k.is_symmetric && k.has_distinct_projections);
        assert_eq!(k.order, Some(3));
        let f = c.field();
        let z = f.zeta();
        let sym = c.from_projections(&ProjVec(vec![f.one(), z, z])).unwrap();
        let k = c.classify_unit(&sym).unwrap();
        assert!(k.is_symmetric && !k.is_unitary);
    }

    #[test]
    fn b_polynomial_trivial_cases() {
        let c = ctx(7, 3);
        let p = c.b_polynomial(&c.b()).unwrap();
        assert_eq!(p, vec![FieldElem::ZERO, FieldElem::ONE, FieldElem::ZERO]);
        assert_eq!(
            c.b_polynomial(&AlgElem::one(c.alg())),
            Err(CqError::RepeatedProjections { dim: 1 })
        );
    }

    #[test]
    fn enumeration_orders() {
        let c = ctx(7, 3);
        assert_eq!(c.enumerate(Which::V, DEFAULT_BUDGET).unwrap().len(), 36);
        assert_eq!(c.enumerate(Which::VPlus, DEFAULT_BUDGET).unwrap().len(), 6);
        assert_eq!(c.enumerate(Which::VStar, DEFAULT_BUDGET).unwrap().len(), 6);
        assert!(matches!(
            c.enumerate(Which::V, 10),
            Err(CqError::BudgetExceeded { needed: 36, budget: 10 })
        ));
        let h = c.hall_2prime(DEFAULT_BUDGET).unwrap();
        assert_eq!((h.plus_hall_order, h.star_hall_order, h.intersection_order), (3, 3, 1));
        assert_eq!((h.product_order, h.v_hall_order), (9, 9));
    }

    #[test]
    fn distinct_projection_unit_f31() {
        let c = ctx(31, 5);
        let f = c.field();
        let w = c.decomp().omega;
        let winv = f.inv(w).unwrap();
        let n = ProjVec(vec![f.one(), w, f.one(), f.one(), winv]);
        let out = c.distinct_projection_unit(&n).unwrap();
        let expect: Vec<FieldElem> = [1, 0, 26, 6, 0].iter().map(|&x| f.from_int(x)).collect();
        assert_eq!(out.0[2..4], expect[2..4]);
        assert_eq!((out.0[1], out.0[4]), (w, winv));
        assert!(out.has_distinct_entries());
        let c11 = ctx(11, 5);
        let f = c11.field();
        let w = c11.decomp().omega;
        let n = ProjVec(vec![f.one(), w, f.one(), f.one(), f.inv(w).unwrap()]);
        assert!(matches!(
            c11.distinct_projection_unit(&n),
            Err(CqError::HypothesisFail(_))
        ));
        let c7 = ctx(7, 3);
        let pb = c7.projections(&c7.b()).unwrap();
        assert_eq!(c7.distinct_projection_unit(&pb).unwrap(), pb);
    }

    #[test]
    fn complements() {
        let c19 = ctx(19, 3);
        let s = c19.complement_search(DEFAULT_BUDGET).unwrap();
        assert!(!s.has_complement());
        let scan = c19.structural_scan(DEFAULT_BUDGET).unwrap();
        assert_eq!((scan.q_power, scan.order_q_elements, scan.uncovered), (9, 2, 0));
        let c7 = ctx(7, 3);
        let s = c7.complement_search(DEFAULT_BUDGET).unwrap();
        assert_eq!(s.complements.len(), 1);
        assert_eq!(s.complements[0].order, 2);
    }
}
