//! Algebraic invariants checked on random inputs.

use std::sync::{Arc, OnceLock};

use ncomp_core::algebra::{one_plus_gamma_exponent, AlgElem, GroupAlgebra};
use ncomp_core::cqstruct::{eval_poly, CqContext, ProjVec, Which, DEFAULT_BUDGET};
use ncomp_core::field::{FieldCtx, FieldElem};
use ncomp_core::linalg::{combine, kernel_of, rank};
use ncomp_core::unitgroup::{cayley, cayley_inv, semidirect_split, Sampler};
use ncomp_core::verifier::Instance;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fields() -> &'static [FieldCtx] {
    static F: OnceLock<Vec<FieldCtx>> = OnceLock::new();
    F.get_or_init(|| {
        [(7, 1), (11, 1), (31, 1), (5, 2), (3, 4)]
            .iter()
            .map(|&(p, f)| FieldCtx::new(p, f, None).unwrap())
            .collect()
    })
}

/// C7 x| C3 over F7, C11² x| C5 over F11, C5² x| C3 over F25.
fn instances() -> &'static [Instance] {
    static I: OnceLock<Vec<Instance>> = OnceLock::new();
    I.get_or_init(|| {
        vec![
            Instance::new(7, 1, None, 3, &[7], &[vec![2]]).unwrap(),
            Instance::new(11, 1, None, 5, &[11, 11], &[vec![3, 0], vec![0, 9]]).unwrap(),
            Instance::new(5, 2, None, 3, &[5, 5], &[vec![0, 4], vec![1, 4]]).unwrap(),
        ]
    })
}

fn contexts() -> &'static [CqContext] {
    static C: OnceLock<Vec<CqContext>> = OnceLock::new();
    C.get_or_init(|| instances().iter().map(|i| i.cq().unwrap()).collect())
}

fn elem(field: &FieldCtx, k: u64) -> FieldElem {
    field.elements().nth((k % field.size()) as usize).unwrap()
}

fn random_elem(alg: &Arc<GroupAlgebra>, seeds: &[u64]) -> AlgElem {
    let f = alg.field();
    let coeffs = (0..alg.dim())
        .map(|i| elem(f, seeds[i % seeds.len()].wrapping_mul(i as u64 + 1) >> 3))
        .collect();
    AlgElem::from_coeffs(alg, coeffs).unwrap()
}

fn seeds() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(any::<u64>(), 1..16)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(which in 0usize..5, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = &fields()[which];
        let (a, b, c) = (elem(f, a), elem(f, b), elem(f, c));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
        prop_assert_eq!(f.mul(a, f.one()), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            prop_assert_eq!(f.pow(a, f.order()), f.one());
        } else {
            prop_assert!(f.inv(a).is_err());
        }
    }

    #[test]
    fn star_is_an_anti_automorphism(which in 0usize..3, x in seeds(), y in seeds()) {
        let alg = &instances()[which].alg;
        let (x, y) = (random_elem(alg, &x), random_elem(alg, &y));
        prop_assert_eq!((&x * &y).star(), &y.star() * &x.star());
        prop_assert_eq!((&x + &y).star(), &x.star() + &y.star());
        prop_assert_eq!(x.star().star(), x.clone());
        let (s, k) = x.sym_skew_split();
        prop_assert!(s.is_symmetric() && k.is_skew());
        prop_assert_eq!(&s + &k, x);
    }

    #[test]
    fn rho_and_augmentation_are_homomorphisms(which in 0usize..3, x in seeds(), y in seeds()) {
        let alg = &instances()[which].alg;
        let f = alg.field();
        let (x, y) = (random_elem(alg, &x), random_elem(alg, &y));
        prop_assert_eq!((&x * &y).rho(), &x.rho() * &y.rho());
        prop_assert_eq!((&x + &y).rho(), &x.rho() + &y.rho());
        prop_assert_eq!((&x * &y).augmentation(), f.mul(x.augmentation(), y.augmentation()));
        prop_assert_eq!(x.rho().augmentation(), x.augmentation());
    }

    #[test]
    fn inverses(which in 0usize..3, x in seeds()) {
        let alg = &instances()[which].alg;
        let x = random_elem(alg, &x);
        match x.invert() {
            Ok(y) => {
                prop_assert!((&x * &y).is_one());
                prop_assert!((&y * &x).is_one());
            }
            // Non-units are exactly the elements whose image in FB is singular.
            Err(_) => prop_assert!(x.rho().invert().is_err()),
        }
    }

    #[test]
    fn projections_round_trip(which in 0usize..3, x in seeds(), y in seeds()) {
        let cq = &contexts()[which];
        let fb = cq.alg();
        let f = cq.field();
        let (x, y) = (random_elem(fb, &x), random_elem(fb, &y));
        let (px, py) = (cq.projections(&x).unwrap(), cq.projections(&y).unwrap());
        prop_assert_eq!(cq.from_projections(&px).unwrap(), x.clone());
        let pxy = cq.projections(&(&x * &y)).unwrap();
        let pointwise: Vec<FieldElem> = px.0.iter().zip(&py.0).map(|(&a, &b)| f.mul(a, b)).collect();
        prop_assert_eq!(pxy, ProjVec(pointwise));
        // The involution reverses the projection vector.
        let pstar = cq.projections(&x.star()).unwrap();
        let q = cq.q();
        prop_assert!((0..q).all(|i| pstar.0[i] == px.0[(q - i) % q]));
    }

    #[test]
    fn distinct_projections_give_b_polynomials(which in 0usize..3, x in seeds()) {
        let cq = &contexts()[which];
        let u = random_elem(cq.alg(), &x);
        let pv = cq.projections(&u).unwrap();
        match cq.b_polynomial(&u) {
            Ok(c) => {
                prop_assert!(pv.has_distinct_entries());
                prop_assert_eq!(eval_poly(&c, &u), cq.b());
            }
            Err(_) => prop_assert!(!pv.has_distinct_entries()),
        }
        prop_assert_eq!(cq.span_dim(&u).unwrap(), pv.distinct_count());
    }

    #[test]
    fn cayley_round_trips(which in 0usize..3, seed in any::<u64>()) {
        let inst = &instances()[which];
        let cq = &contexts()[which];
        let s = Sampler::new(&inst.alg, cq);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = s.skew_gamma(&mut rng);
        let u = cayley(&l).unwrap();
        prop_assert!((&u * &u.star()).is_one());
        prop_assert!(u.rho().is_one());
        prop_assert_eq!(cayley_inv(&u).unwrap(), l);
    }

    #[test]
    fn rank_nullity(which in 0usize..5, rows in 1usize..9, cols in 1usize..9, x in seeds()) {
        let f = &fields()[which];
        let images: Vec<Vec<FieldElem>> = (0..cols)
            .map(|i| (0..rows).map(|r| elem(f, x[(i * rows + r) % x.len()] >> (i + r))).collect())
            .collect();
        let k = kernel_of(f, rows, &images);
        prop_assert_eq!(k.dim() + rank(f, &images), cols);
        for v in k.basis() {
            let img = combine(f, &images, v);
            prop_assert!(img.iter().all(|c| c.is_zero()));
        }
    }
}

#[test]
fn semidirect_split_of_random_units() {
    for (inst, cq) in instances().iter().zip(contexts()) {
        let s = Sampler::new(&inst.alg, cq);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 / instances().len() + 1 {
            let v = s.v_fg(&mut rng);
            let (y, w) = semidirect_split(&v).unwrap();
            assert!(y.rho().is_one(), "first factor lies in 1 + Γ(A)");
            assert!(w.is_in_fb());
            assert_eq!(&y * &w, v);
        }
    }
}

#[test]
fn symmetric_and_unitary_meet_in_exponent_two() {
    for cq in contexts() {
        let plus = cq.enumerate(Which::VPlus, DEFAULT_BUDGET).unwrap();
        let star = cq.enumerate(Which::VStar, DEFAULT_BUDGET).unwrap();
        let f = cq.field();
        let common: Vec<&ProjVec> = plus.iter().filter(|x| star.contains(x)).collect();
        assert!(!common.is_empty());
        for x in common {
            assert!(x.0.iter().all(|&c| f.mul(c, c) == f.one()));
        }
    }
}

/// Every `1 + γ` satisfies `(1 + γ)^{p^k} = 1`, and some sample already
/// fails at `p^{k-1}`, so the exponent is exact.
#[test]
fn one_plus_gamma_exponent_is_sharp() {
    for (inst, cq) in instances().iter().zip(contexts()) {
        let alg = &inst.alg;
        let e = one_plus_gamma_exponent(alg).unwrap();
        let p = alg.field().p();
        let s = Sampler::new(alg, cq);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let one = AlgElem::one(alg);
        let mut witness = false;
        for _ in 0..500 {
            let u = &one + &s.gamma(&mut rng);
            assert!(u.pow(e.exponent).is_one());
            if e.k > 0 && !u.pow(e.exponent / p).is_one() {
                witness = true;
            }
        }
        assert!(witness || e.k == 0, "exponent {} is not sharp", e.exponent);
    }
}
