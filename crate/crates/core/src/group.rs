//! The semidirect product G = A ⋊ C_q with A a finite abelian p-group.
//!
//! Elements are pairs `(a, j)` standing for `a·b^j`. The action is
//! `σ(a) = b^{-1} a b`, so `b a = σ^{-1}(a) b` and
//! `(a b^i)(c b^j) = (a + σ^{-i}(c)) b^{i+j}` with A written additively.
//! Elements of A are indexed in mixed-radix order of their exponent tuples
//! (first factor most significant); the group index of `a·b^j` is
//! `index(a)·q + j`, so the subgroup `B = ⟨b⟩` occupies indices `0..q`.

use serde::Serialize;
use thiserror::Error;

use crate::arith::{is_prime, log_exact};
use crate::field::FieldCtx;

/// Refuse groups with more elements in A than this.
pub const MAX_ABELIAN_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("q = {0} must be an odd prime")]
    NotOddPrime(u64),
    #[error("q must differ from the characteristic p = {0}")]
    QEqualsP(u64),
    #[error("invariant factor {factor} is not a positive power of p = {p}")]
    NotPPower { factor: u64, p: u64 },
    #[error("A must be non-trivial")]
    TrivialA,
    #[error("action matrix must be {expected}x{expected}")]
    DimensionMismatch { expected: usize },
    #[error("action matrix does not define an automorphism of A")]
    NotAutomorphism,
    #[error("action has order {0}, expected q")]
    ActionOrderWrong(String),
    #[error("action fixes the non-identity element with exponents {0:?}")]
    NotFixedPointFree(Vec<u64>),
    #[error("|A| = {0} exceeds the supported size")]
    TooLarge(u128),
}

/// A finite abelian p-group given by invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub p: u64,
    pub factors: Vec<u64>,
    /// `|A| = p^n`.
    pub n: u32,
}

impl AbelianGroup {
    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }
}

/// Integer matrix with `σ(a_j) = Π_i a_i^{M[i][j]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionMatrix {
    pub matrix: Vec<Vec<u64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    /// Index of the A-component.
    pub a: u32,
    /// Exponent of b, in `0..q`.
    pub j: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    abelian: AbelianGroup,
    q: u32,
    action: ActionMatrix,
    /// `sigma_pow[k][a] = σ^k(a)` for `k in 0..q`.
    sigma_pow: Vec<Vec<u32>>,
    neg: Vec<u32>,
    /// Place value of each factor in the mixed-radix index.
    places: Vec<u64>,
}

impl Group {
    /// Validates and builds `A ⋊ C_q` for the characteristic of `field`.
    pub fn new(field: &FieldCtx, q: u64, factors: &[u64], action: &[Vec<i64>]) -> Result<Self, GroupError> {
        let p = field.p();
        if q == 2 || !is_prime(q) {
            return Err(GroupError::NotOddPrime(q));
        }
        if q == p {
            return Err(GroupError::QEqualsP(p));
        }
        if factors.is_empty() {
            return Err(GroupError::TrivialA);
        }
        let mut n = 0;
        for &factor in factors {
            match log_exact(factor, p) {
                Some(k) if k > 0 => n += k,
                _ => return Err(GroupError::NotPPower { factor, p }),
            }
        }
        let order: u128 = factors.iter().map(|&x| x as u128).product();
        if order > MAX_ABELIAN_ORDER as u128 {
            return Err(GroupError::TooLarge(order));
        }
        let r = factors.len();
        if action.len() != r || action.iter().any(|row| row.len() != r) {
            return Err(GroupError::DimensionMismatch { expected: r });
        }
        let matrix: Vec<Vec<u64>> = action
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().map(|&v| v.rem_euclid(factors[i] as i64) as u64).collect())
            .collect();
        // σ(a_j) must have order dividing ord(a_j) for the map to be well defined.
        for (i, row) in matrix.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !(factors[j] as u128 * v as u128).is_multiple_of(factors[i] as u128) {
                    return Err(GroupError::NotAutomorphism);
                }
            }
        }
        let abelian = AbelianGroup {
            p,
            factors: factors.to_vec(),
            n,
        };
        let mut g = Self::assemble(abelian, q as u32, ActionMatrix { matrix });
        let size = g.a_order();
        let sigma = g.sigma_pow[1].clone();
        let mut seen = vec![false; size];
        for &x in &sigma {
            if std::mem::replace(&mut seen[x as usize], true) {
                return Err(GroupError::NotAutomorphism);
            }
        }
        if sigma.iter().enumerate().all(|(a, &x)| a as u32 == x) {
            return Err(GroupError::ActionOrderWrong("1".into()));
        }
        let back: Vec<u32> = (0..size as u32)
            .map(|a| g.sigma(g.sigma_pow[q as usize - 1][a as usize]))
            .collect();
        if back.iter().enumerate().any(|(a, &x)| a as u32 != x) {
            return Err(GroupError::ActionOrderWrong(format!("not dividing {q}")));
        }
        if let Some(a) = (1..size as u32).find(|&a| sigma[a as usize] == a) {
            return Err(GroupError::NotFixedPointFree(g.a_digits(a)));
        }
        g.neg = (0..size as u32).map(|a| g.a_neg_slow(a)).collect();
        Ok(g)
    }

    /// The cyclic group `C_q` itself, i.e. trivial A. Used for FB.
    pub fn cyclic(p: u64, q: u64) -> Self {
        let abelian = AbelianGroup {
            p,
            factors: Vec::new(),
            n: 0,
        };
        let mut g = Self::assemble(abelian, q as u32, ActionMatrix { matrix: Vec::new() });
        g.neg = vec![0];
        g
    }

    fn assemble(abelian: AbelianGroup, q: u32, action: ActionMatrix) -> Self {
        let r = abelian.factors.len();
        let mut places = vec![1u64; r];
        for i in (0..r.saturating_sub(1)).rev() {
            places[i] = places[i + 1] * abelian.factors[i + 1];
        }
        let mut g = Group {
            abelian,
            q,
            action,
            sigma_pow: Vec::new(),
            neg: Vec::new(),
            places,
        };
        let size = g.a_order() as u32;
        let sigma: Vec<u32> = (0..size).map(|a| g.apply_matrix(a)).collect();
        let mut pows = vec![(0..size).collect::<Vec<u32>>()];
        for k in 1..q as usize {
            let prev = &pows[k - 1];
            pows.push(prev.iter().map(|&x| sigma[x as usize]).collect());
        }
        g.sigma_pow = pows;
        g
    }

    fn apply_matrix(&self, a: u32) -> u32 {
        let x = self.a_digits(a);
        let f = &self.abelian.factors;
        let y: Vec<u64> = (0..f.len())
            .map(|i| {
                let s: u128 = (0..f.len())
                    .map(|j| self.action.matrix[i][j] as u128 * x[j] as u128)
                    .sum();
                (s % f[i] as u128) as u64
            })
            .collect();
        self.a_from_digits(&y)
    }

    fn a_neg_slow(&self, a: u32) -> u32 {
        let x = self.a_digits(a);
        let y: Vec<u64> = x
            .iter()
            .zip(&self.abelian.factors)
            .map(|(&d, &n)| (n - d) % n)
            .collect();
        self.a_from_digits(&y)
    }

    pub fn abelian(&self) -> &AbelianGroup {
        &self.abelian
    }

    pub fn action(&self) -> &ActionMatrix {
        &self.action
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `|A|`.
    pub fn a_order(&self) -> usize {
        self.abelian.order() as usize
    }

    /// `|G| = q |A|`.
    pub fn order(&self) -> usize {
        self.a_order() * self.q as usize
    }

    pub fn rank(&self) -> usize {
        self.abelian.factors.len()
    }

    pub fn a_digits(&self, a: u32) -> Vec<u64> {
        let a = a as u64;
        self.places
            .iter()
            .zip(&self.abelian.factors)
            .map(|(&pl, &n)| a / pl % n)
            .collect()
    }

    /// Index of the element with the given exponents (reduced mod each factor).
    pub fn a_from_digits(&self, digits: &[u64]) -> u32 {
        digits
            .iter()
            .zip(&self.places)
            .zip(&self.abelian.factors)
            .map(|((&d, &pl), &n)| (d % n) * pl)
            .sum::<u64>() as u32
    }

    /// The i-th generator of A (0-based), i.e. the unit exponent vector.
    pub fn a_generator(&self, i: usize) -> u32 {
        self.places[i] as u32
    }

    pub fn a_add(&self, x: u32, y: u32) -> u32 {
        let (x, y) = (x as u64, y as u64);
        let mut out = 0u64;
        for (&pl, &n) in self.places.iter().zip(&self.abelian.factors) {
            out += ((x / pl % n + y / pl % n) % n) * pl;
        }
        out as u32
    }

    pub fn a_neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn sigma(&self, a: u32) -> u32 {
        self.sigma_pow[1 % self.q as usize][a as usize]
    }

    /// `σ^k(a)` for any integer k.
    pub fn sigma_pow(&self, k: i64, a: u32) -> u32 {
        self.sigma_pow[k.rem_euclid(self.q as i64) as usize][a as usize]
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem { a: 0, j: 0 }
    }

    pub fn b(&self) -> GroupElem {
        GroupElem { a: 0, j: 1 % self.q }
    }

    pub fn index(&self, x: GroupElem) -> usize {
        x.a as usize * self.q as usize + x.j as usize
    }

    pub fn elem(&self, idx: usize) -> GroupElem {
        GroupElem {
            a: (idx / self.q as usize) as u32,
            j: (idx % self.q as usize) as u32,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElem> + '_ {
        (0..self.order()).map(|i| self.elem(i))
    }

    pub fn mul(&self, x: GroupElem, y: GroupElem) -> GroupElem {
        GroupElem {
            a: self.a_add(x.a, self.sigma_pow(-(x.j as i64), y.a)),
            j: (x.j + y.j) % self.q,
        }
    }

    /// Product on group indices.
    pub fn mul_idx(&self, x: usize, y: usize) -> usize {
        self.index(self.mul(self.elem(x), self.elem(y)))
    }

    pub fn inverse(&self, x: GroupElem) -> GroupElem {
        GroupElem {
            a: self.sigma_pow(x.j as i64, self.a_neg(x.a)),
            j: (self.q - x.j) % self.q,
        }
    }

    pub fn pow(&self, x: GroupElem, k: u64) -> GroupElem {
        (0..k).fold(self.identity(), |acc, _| self.mul(acc, x))
    }
}

/// One ⟨b⟩-orbit on A.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Smallest A-index in the orbit.
    pub rep: u32,
    /// `rep, σ(rep), σ²(rep), ...`; a single element for the trivial orbit.
    pub members: Vec<u32>,
}

impl Orbit {
    /// Group indices of the members, i.e. the support of the orbit sum Ô.
    pub fn sum_support(&self, g: &Group) -> Vec<usize> {
        self.members.iter().map(|&a| g.index(GroupElem { a, j: 0 })).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitTable {
    /// Trivial orbit `{e}` first, then by increasing representative.
    pub orbits: Vec<Orbit>,
    orbit_of: Vec<u32>,
}

impl OrbitTable {
    pub fn new(g: &Group) -> Self {
        let size = g.a_order();
        let mut orbit_of = vec![u32::MAX; size];
        let mut orbits = Vec::new();
        for a in 0..size as u32 {
            if orbit_of[a as usize] != u32::MAX {
                continue;
            }
            let id = orbits.len() as u32;
            let mut members = vec![a];
            orbit_of[a as usize] = id;
            let mut x = g.sigma(a);
            while x != a {
                orbit_of[x as usize] = id;
                members.push(x);
                x = g.sigma(x);
            }
            orbits.push(Orbit { rep: a, members });
        }
        OrbitTable { orbits, orbit_of }
    }

    pub fn orbit_of(&self, a: u32) -> usize {
        self.orbit_of[a as usize] as usize
    }

    /// Number of non-trivial orbits.
    pub fn nontrivial_count(&self) -> usize {
        self.orbits.len() - 1
    }

    /// The orbit consisting of the inverses of the given orbit's members.
    pub fn inverse_orbit(&self, g: &Group, id: usize) -> usize {
        self.orbit_of(g.a_neg(self.orbits[id].rep))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c7c3() -> Group {
        let f = FieldCtx::prime(7).unwrap();
        Group::new(&f, 3, &[7], &[vec![2]]).unwrap()
    }

    #[test]
    fn c7_by_c3_is_a_group() {
        let g = c7c3();
        assert_eq!(g.order(), 21);
        let elems: Vec<_> = g.elements().collect();
        for &x in &elems {
            assert_eq!(g.mul(g.identity(), x), x);
            assert_eq!(g.mul(x, g.inverse(x)), g.identity());
            assert_eq!(g.mul(g.inverse(x), x), g.identity());
            for &y in &elems {
                for &z in &elems {
                    assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
                }
            }
        }
    }

    #[test]
    fn conjugation_relations() {
        let g = c7c3();
        let a = GroupElem { a: 1, j: 0 };
        let b = g.b();
        // b^{-1} a b = σ(a) = a^2
        let conj = g.mul(g.mul(g.inverse(b), a), b);
        assert_eq!(conj, GroupElem { a: 2, j: 0 });
        // b a b^{-1} = a^4
        let conj = g.mul(g.mul(b, a), g.inverse(b));
        assert_eq!(conj, GroupElem { a: 4, j: 0 });
        assert_eq!(g.mul(b, a), GroupElem { a: 4, j: 1 });
    }

    #[test]
    fn invalid_actions() {
        let f = FieldCtx::prime(7).unwrap();
        assert!(matches!(
            Group::new(&f, 3, &[7], &[vec![1]]),
            Err(GroupError::ActionOrderWrong(_))
        ));
        // 3 has order 6 mod 7.
        assert!(matches!(
            Group::new(&f, 3, &[7], &[vec![3]]),
            Err(GroupError::ActionOrderWrong(_))
        ));
        assert_eq!(Group::new(&f, 3, &[7], &[vec![0]]), Err(GroupError::NotAutomorphism));
        assert_eq!(
            Group::new(&f, 3, &[6], &[vec![2]]),
            Err(GroupError::NotPPower { factor: 6, p: 7 })
        );
        assert_eq!(Group::new(&f, 7, &[7], &[vec![2]]), Err(GroupError::QEqualsP(7)));
        assert_eq!(
            Group::new(&f, 3, &[7, 7], &[vec![2]]),
            Err(GroupError::DimensionMismatch { expected: 2 })
        );
        // diag(2, 1) has order 3 but fixes the second generator.
        assert_eq!(
            Group::new(&f, 3, &[7, 7], &[vec![2, 0], vec![0, 1]]),
            Err(GroupError::NotFixedPointFree(vec![0, 1]))
        );
        // entries are reduced modulo the factor orders
        assert!(Group::new(&f, 3, &[7], &[vec![9]]).is_ok());
        assert!(Group::new(&f, 3, &[7], &[vec![-5]]).is_ok());
    }

    #[test]
    fn mixed_factor_well_definedness() {
        let f = FieldCtx::prime(7).unwrap();
        // The order-7 generator cannot map onto an element of order 49.
        assert_eq!(
            Group::new(&f, 3, &[49, 7], &[vec![1, 1], vec![0, 2]]),
            Err(GroupError::NotAutomorphism)
        );
        // 18 has order 3 mod 49, and 2 has order 3 mod 7.
        let g = Group::new(&f, 3, &[49, 7], &[vec![18, 0], vec![0, 2]]).unwrap();
        assert_eq!(g.order(), 3 * 343);
    }

    #[test]
    fn orbits_of_c7() {
        let g = c7c3();
        let t = OrbitTable::new(&g);
        let sets: Vec<Vec<u32>> = t.orbits.iter().map(|o| o.members.clone()).collect();
        assert_eq!(sets, vec![vec![0], vec![1, 2, 4], vec![3, 6, 5]]);
        assert_eq!(t.nontrivial_count(), 2);
        assert_eq!(t.inverse_orbit(&g, 1), 2);
    }

    #[test]
    fn orbits_of_c31_squared() {
        let f = FieldCtx::prime(31).unwrap();
        let g = Group::new(&f, 5, &[31, 31], &[vec![2, 0], vec![0, 4]]).unwrap();
        let t = OrbitTable::new(&g);
        assert_eq!(t.nontrivial_count(), 192);
        assert!(t.orbits[1..].iter().all(|o| o.members.len() == 5));
        for o in &t.orbits {
            let mut img: Vec<u32> = o.members.iter().map(|&a| g.sigma(a)).collect();
            let mut m = o.members.clone();
            img.sort();
            m.sort();
            assert_eq!(img, m);
        }
    }
}
