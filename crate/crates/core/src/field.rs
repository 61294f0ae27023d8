//! Exact arithmetic in GF(p^f).
//!
//! Elements are stored in the polynomial basis of a monic irreducible
//! modulus and packed into a single integer `c_0 + c_1 p + ... + c_{f-1} p^{f-1}`.
//! The packing order doubles as the enumeration order used to pick the
//! primitive element deterministically.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{is_prime, prime_factors};

/// Largest supported field size. Packed elements and products must fit in `u64`.
pub const MAX_FIELD_SIZE: u64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("field degree must be at least 1 (got {0})")]
    BadDegree(u32),
    #[error("modulus must be monic of degree {degree} (got {len} coefficients)")]
    BadModulus { degree: u32, len: usize },
    #[error("modulus is reducible over Z/{0}")]
    ReducibleModulus(u64),
    #[error("field of order {0} is too large")]
    TooLarge(u128),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("element {0} does not belong to this field")]
    ForeignElement(u32),
    #[error("q = {0} must be an odd prime")]
    NotOddPrime(u64),
    #[error("q = {q} does not divide p^f - 1 = {order}")]
    QDoesNotDivide { q: u64, order: u64 },
    #[error("coefficient list of length {len} exceeds field degree {degree}")]
    TooManyCoefficients { len: usize, degree: u32 },
}

/// A packed element of GF(p^f). Only meaningful together with its [`FieldCtx`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn raw(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Parameters of GF(p^f) with a fixed modulus and primitive element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCtx {
    p: u32,
    f: u32,
    /// Monic modulus, low degree first; length f + 1.
    modulus: Vec<u32>,
    zeta: FieldElem,
    size: u64,
    order_factors: Vec<u64>,
}

/// Result of splitting `p^f - 1 = s * q^m` with `gcd(s, q) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QDecomp {
    pub q: u64,
    pub s: u64,
    pub m: u32,
    /// `zeta^((p^f - 1)/q)`, an element of order q.
    pub omega: FieldElem,
    /// `zeta^(q^m)`, an element of order s.
    pub eta: FieldElem,
}

/// Operation selector for [`FieldCtx::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow(u64),
    Order,
}

/// Output of [`FieldCtx::apply`]: an element, or an integer for `Order`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldValue {
    Elem(FieldElem),
    Int(u64),
}

impl FieldCtx {
    /// Builds GF(p^f). Without an explicit modulus the smallest monic
    /// irreducible polynomial (in packed-coefficient order) is used.
    pub fn new(p: u64, f: u32, modulus: Option<&[i64]>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p == 2 {
            return Err(FieldError::EvenCharacteristic);
        }
        if f < 1 {
            return Err(FieldError::BadDegree(f));
        }
        let size = (p as u128).pow(f);
        if size > MAX_FIELD_SIZE as u128 {
            return Err(FieldError::TooLarge(size));
        }
        let size = size as u64;
        let modulus = match modulus {
            Some(coeffs) => {
                if coeffs.len() != f as usize + 1 || coeffs[f as usize].rem_euclid(p as i64) != 1 {
                    return Err(FieldError::BadModulus {
                        degree: f,
                        len: coeffs.len(),
                    });
                }
                let m: Vec<u64> = coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
                if !poly::is_irreducible(&m, p) {
                    return Err(FieldError::ReducibleModulus(p));
                }
                m
            }
            None => poly::smallest_irreducible(f, p),
        };
        let mut ctx = FieldCtx {
            p: p as u32,
            f,
            modulus: modulus.into_iter().map(|c| c as u32).collect(),
            zeta: FieldElem::ONE,
            size,
            order_factors: prime_factors(size - 1),
        };
        let order = size - 1;
        ctx.zeta = (1..size as u32)
            .map(FieldElem)
            .find(|&z| ctx.order_unchecked(z) == order)
            .expect("finite fields have cyclic unit groups");
        Ok(ctx)
    }

    /// GF(p) with the placeholder modulus `x`.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 1, None)
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zeta(&self) -> FieldElem {
        self.zeta
    }

    /// Number of elements, p^f.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Order of the multiplicative group, p^f - 1.
    pub fn order(&self) -> u64 {
        self.size - 1
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    pub fn contains(&self, a: FieldElem) -> bool {
        (a.0 as u64) < self.size
    }

    /// Image of an integer under Z -> GF(p^f).
    pub fn from_int(&self, v: i64) -> FieldElem {
        FieldElem(v.rem_euclid(self.p as i64) as u32)
    }

    /// Element with the given polynomial-basis coefficients (low degree first).
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FieldElem, FieldError> {
        if coeffs.len() > self.f as usize {
            return Err(FieldError::TooManyCoefficients {
                len: coeffs.len(),
                degree: self.f,
            });
        }
        let mut packed = 0u64;
        for &c in coeffs.iter().rev() {
            packed = packed * self.p as u64 + c.rem_euclid(self.p as i64) as u64;
        }
        Ok(FieldElem(packed as u32))
    }

    /// Polynomial-basis coefficients, length f.
    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.f as usize);
        let mut v = a.0;
        for _ in 0..self.f {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.size as u32).map(FieldElem)
    }

    /// Nonzero elements in enumeration order.
    pub fn units(&self) -> impl Iterator<Item = FieldElem> {
        (1..self.size as u32).map(FieldElem)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.f == 1 {
            let s = a.0 + b.0;
            return FieldElem(if s >= self.p { s - self.p } else { s });
        }
        let (mut x, mut y, mut place, mut out) = (a.0, b.0, 1u32, 0u32);
        for _ in 0..self.f {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place = place.wrapping_mul(self.p);
        }
        FieldElem(out)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.f == 1 {
            return FieldElem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let (mut x, mut place, mut out) = (a.0, 1u32, 0u32);
        for _ in 0..self.f {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place = place.wrapping_mul(self.p);
        }
        FieldElem(out)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.f == 1 {
            return FieldElem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let p = self.p as u64;
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let f = self.f as usize;
        let mut prod = vec![0u64; 2 * f - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi as u64 * yj as u64) % p;
            }
        }
        for d in (f..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for (k, &mk) in self.modulus[..f].iter().enumerate() {
                let t = c * mk as u64 % p;
                prod[d - f + k] = (prod[d - f + k] + p - t) % p;
            }
            prod[d] = 0;
        }
        let mut packed = 0u64;
        for &c in prod[..f].iter().rev() {
            packed = packed * p + c;
        }
        FieldElem(packed as u32)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let p = self.p as u64;
        if self.f == 1 {
            let (g, x, _) = crate::arith::ext_gcd(a.0 as i64, p as i64);
            debug_assert_eq!(g, 1);
            return Ok(FieldElem(x.rem_euclid(p as i64) as u32));
        }
        let av: Vec<u64> = self.coeffs(a).into_iter().map(u64::from).collect();
        let mv: Vec<u64> = self.modulus.iter().map(|&c| c as u64).collect();
        let s = poly::inverse_mod(&av, &mv, p).expect("modulus is irreducible");
        let mut packed = 0u64;
        for i in (0..self.f as usize).rev() {
            packed = packed * p + s.get(i).copied().unwrap_or(0);
        }
        Ok(FieldElem(packed as u32))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, mut k: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Signed exponent: negative powers go through the inverse.
    pub fn pow_signed(&self, a: FieldElem, k: i64) -> Result<FieldElem, FieldError> {
        if k >= 0 {
            Ok(self.pow(a, k as u64))
        } else {
            Ok(self.pow(self.inv(a)?, k.unsigned_abs()))
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FieldElem) -> Result<u64, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.order_unchecked(a))
    }

    fn order_unchecked(&self, a: FieldElem) -> u64 {
        let mut order = self.size - 1;
        for &r in &self.order_factors {
            while order.is_multiple_of(r) && self.pow(a, order / r) == FieldElem::ONE {
                order /= r;
            }
        }
        order
    }

    /// Checked entry point covering every basic operation.
    pub fn apply(&self, op: FieldOp, a: FieldElem, b: Option<FieldElem>) -> Result<FieldValue, FieldError> {
        for x in std::iter::once(a).chain(b) {
            if !self.contains(x) {
                return Err(FieldError::ForeignElement(x.0));
            }
        }
        let rhs = || b.unwrap_or(FieldElem::ZERO);
        Ok(match op {
            FieldOp::Add => FieldValue::Elem(self.add(a, rhs())),
            FieldOp::Sub => FieldValue::Elem(self.sub(a, rhs())),
            FieldOp::Mul => FieldValue::Elem(self.mul(a, rhs())),
            FieldOp::Inv => FieldValue::Elem(self.inv(a)?),
            FieldOp::Pow(k) => FieldValue::Elem(self.pow(a, k)),
            FieldOp::Order => FieldValue::Int(self.mult_order(a)?),
        })
    }

    /// Splits `p^f - 1 = s q^m` and derives omega and eta from zeta.
    pub fn q_decompose(&self, q: u64) -> Result<QDecomp, FieldError> {
        if q == 2 || !is_prime(q) {
            return Err(FieldError::NotOddPrime(q));
        }
        let order = self.order();
        if !order.is_multiple_of(q) {
            return Err(FieldError::QDoesNotDivide { q, order });
        }
        let (mut s, mut m, mut qm) = (order, 0u32, 1u64);
        while s % q == 0 {
            s /= q;
            m += 1;
            qm *= q;
        }
        Ok(QDecomp {
            q,
            s,
            m,
            omega: self.pow(self.zeta, order / q),
            eta: self.pow(self.zeta, qm),
        })
    }

    /// Displays an element as an integer (f = 1) or a bracketed coefficient list.
    pub fn display(&self, a: FieldElem) -> FieldDisplay<'_> {
        FieldDisplay { ctx: self, elem: a }
    }
}

pub struct FieldDisplay<'a> {
    ctx: &'a FieldCtx,
    elem: FieldElem,
}

impl fmt::Display for FieldDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.f == 1 {
            return write!(f, "{}", self.elem.0);
        }
        let parts: Vec<String> = self.ctx.coeffs(self.elem).iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Dense polynomials over Z/p, low degree first. Used for modulus
/// selection, irreducibility and inversion in extension fields.
mod poly {
    fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv_mod_p(a: u64, p: u64) -> u64 {
        let (_, x, _) = crate::arith::ext_gcd(a as i64, p as i64);
        x.rem_euclid(p as i64) as u64
    }

    pub(super) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out: Vec<u64> = (0..a.len().max(b.len()))
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub(super) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub(super) fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = inv_mod_p(b[db], p);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![0u64; r.len() - db];
        while r.len() > db && !r.is_empty() {
            let shift = r.len() - 1 - db;
            let c = r[r.len() - 1] * lead_inv % p;
            q[shift] = c;
            for (k, &bk) in b.iter().enumerate() {
                r[shift + k] = (r[shift + k] + p - c * bk % p) % p;
            }
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub(super) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let (_, r) = divrem(&x, &y, p);
            x = std::mem::replace(&mut y, r);
        }
        x
    }

    fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = divrem(base, m, p).1;
        while e > 0 {
            if e & 1 == 1 {
                acc = divrem(&mul(&acc, &b, p), m, p).1;
            }
            b = divrem(&mul(&b, &b, p), m, p).1;
            e >>= 1;
        }
        acc
    }

    /// Ben-Or: a monic `g` of degree f is irreducible iff
    /// `gcd(g, x^(p^i) - x) = 1` for all `1 <= i <= f/2`. For f <= 3 this
    /// is the root test.
    pub(super) fn is_irreducible(g: &[u64], p: u64) -> bool {
        let f = g.len() - 1;
        if f == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        let mut h = x.clone();
        for _ in 1..=f / 2 {
            h = powmod(&h, p, g, p);
            let d = gcd(g, &sub(&h, &x, p), p);
            if d.len() > 1 {
                return false;
            }
        }
        true
    }

    /// Smallest monic irreducible of degree f, ordering candidates by the
    /// packed value of their lower coefficients.
    pub(super) fn smallest_irreducible(f: u32, p: u64) -> Vec<u64> {
        let f = f as usize;
        if f == 1 {
            return vec![0, 1];
        }
        let total = p.pow(f as u32);
        for k in 0..total {
            let mut g = Vec::with_capacity(f + 1);
            let mut v = k;
            for _ in 0..f {
                g.push(v % p);
                v /= p;
            }
            g.push(1);
            if is_irreducible(&g, p) {
                return g;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// Inverse of `a` modulo `m` when they are coprime.
    pub(super) fn inverse_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
        let (mut r0, mut r1) = (m.to_vec(), divrem(a, m, p).1);
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s2 = sub(&s0, &mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = inv_mod_p(r0[0], p);
        Some(s0.iter().map(|&x| x * c % p).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(ctx: &FieldCtx, a: FieldElem) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != ctx.one() {
            x = ctx.mul(x, a);
            k += 1;
        }
        k
    }

    #[test]
    fn primitive_roots_of_small_primes() {
        let f7 = FieldCtx::prime(7).unwrap();
        assert_eq!(f7.zeta(), FieldElem(3));
        assert_eq!(brute_order(&f7, f7.zeta()), 6);
        assert_eq!(f7.order(), 6);
        let f11 = FieldCtx::prime(11).unwrap();
        assert_eq!(f11.zeta(), FieldElem(2));
        assert_eq!(brute_order(&f11, FieldElem(2)), 10);
        // 2 is not primitive mod 7 (order 3), so 3 is the least one.
        assert_eq!(brute_order(&f7, FieldElem(2)), 3);
    }

    #[test]
    fn basic_ops() {
        let f7 = FieldCtx::prime(7).unwrap();
        assert_eq!(f7.inv(FieldElem(3)).unwrap(), FieldElem(5));
        assert_eq!(f7.pow(FieldElem(3), 6), f7.one());
        let f11 = FieldCtx::prime(11).unwrap();
        assert_eq!(f11.mult_order(FieldElem(2)).unwrap(), 10);
        assert_eq!(f11.inv(FieldElem(0)), Err(FieldError::ZeroInverse));
        assert_eq!(
            f11.apply(FieldOp::Order, FieldElem(2), None).unwrap(),
            FieldValue::Int(10)
        );
        assert_eq!(
            f11.apply(FieldOp::Add, FieldElem(2), Some(FieldElem(11))),
            Err(FieldError::ForeignElement(11))
        );
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldCtx::prime(9), Err(FieldError::NotPrime(9)));
        assert_eq!(FieldCtx::prime(2), Err(FieldError::EvenCharacteristic));
        assert_eq!(FieldCtx::new(7, 0, None), Err(FieldError::BadDegree(0)));
        // x^2 - 1 has the root 1 mod 7.
        assert_eq!(
            FieldCtx::new(7, 2, Some(&[-1, 0, 1])),
            Err(FieldError::ReducibleModulus(7))
        );
        assert!(matches!(
            FieldCtx::new(7, 2, Some(&[1, 1, 2])),
            Err(FieldError::BadModulus { .. })
        ));
        // x^2 + 1 is irreducible mod 7 since -1 is not a square.
        assert!(FieldCtx::new(7, 2, Some(&[1, 0, 1])).is_ok());
    }

    #[test]
    fn quartic_irreducibility_is_full() {
        // (x^2 + 1)^2 has no roots mod 3 but is reducible.
        assert!(!poly::is_irreducible(&[1, 0, 2, 0, 1], 3));
        assert_eq!(
            FieldCtx::new(3, 4, Some(&[1, 0, 2, 0, 1])),
            Err(FieldError::ReducibleModulus(3))
        );
        // x^4 + x + 2 is irreducible over F_3.
        assert!(poly::is_irreducible(&[2, 1, 0, 0, 1], 3));
    }

    #[test]
    fn q_decompositions() {
        let f7 = FieldCtx::prime(7).unwrap();
        let d = f7.q_decompose(3).unwrap();
        assert_eq!((d.s, d.m, d.omega), (2, 1, FieldElem(2)));
        let f19 = FieldCtx::prime(19).unwrap();
        let d = f19.q_decompose(3).unwrap();
        assert_eq!((d.s, d.m), (2, 2));
        let f31 = FieldCtx::prime(31).unwrap();
        let d = f31.q_decompose(5).unwrap();
        assert_eq!((d.s, d.m, d.eta), (6, 1, FieldElem(26)));
        assert_eq!(f31.mult_order(d.eta).unwrap(), 6);
        assert_eq!(f7.q_decompose(5), Err(FieldError::QDoesNotDivide { q: 5, order: 6 }));
        assert_eq!(f7.q_decompose(2), Err(FieldError::NotOddPrime(2)));
    }

    #[test]
    fn extension_field_axioms() {
        let f = FieldCtx::new(3, 3, None).unwrap();
        assert_eq!(f.size(), 27);
        assert_eq!(f.mult_order(f.zeta()).unwrap(), 26);
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.sub(f.add(a, b), b), a);
            }
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
        }
        assert_eq!(f.from_coeffs(&[1, 2]).unwrap(), FieldElem(1 + 2 * 3));
        assert_eq!(f.coeffs(FieldElem(7)), vec![1, 2, 0]);
        assert_eq!(format!("{}", f.display(FieldElem(7))), "[1,2,0]");
    }
}
