//! Printed elements parse back to themselves.

use std::sync::{Arc, OnceLock};

use ncomp_cli::expr::parse_element;
use ncomp_core::algebra::{AlgElem, GroupAlgebra};
use ncomp_core::field::FieldCtx;
use ncomp_core::group::Group;
use proptest::prelude::*;

fn algebras() -> &'static [Arc<GroupAlgebra>] {
    static ALGS: OnceLock<Vec<Arc<GroupAlgebra>>> = OnceLock::new();
    ALGS.get_or_init(build_all)
}

fn build_all() -> Vec<Arc<GroupAlgebra>> {
    let build = |p: u64, f: u32, q: u64, factors: &[u64], action: &[Vec<i64>]| {
        let field = FieldCtx::new(p, f, None).unwrap();
        let g = Group::new(&field, q, factors, action).unwrap();
        GroupAlgebra::new(field, g)
    };
    vec![
        build(7, 1, 3, &[7], &[vec![2]]),
        build(11, 1, 5, &[11, 11], &[vec![3, 0], vec![0, 9]]),
        build(5, 2, 3, &[5, 5], &[vec![0, 4], vec![1, 4]]),
        build(7, 1, 3, &[49], &[vec![18]]),
    ]
}

/// Random sparse element: (group index, coefficient index) pairs.
fn element(alg: &Arc<GroupAlgebra>, terms: &[(usize, usize)]) -> AlgElem {
    let field = alg.field();
    let elems: Vec<_> = field.elements().collect();
    let mut coeffs = vec![field.zero(); alg.dim()];
    for &(g, c) in terms {
        let g = g % alg.dim();
        coeffs[g] = field.add(coeffs[g], elems[c % elems.len()]);
    }
    AlgElem::from_coeffs(alg, coeffs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn parse_print_parse(which in 0usize..4, terms in prop::collection::vec((0usize..10_000, 0usize..1000), 0..12)) {
        let alg = &algebras()[which];
        let x = element(alg, &terms);
        let printed = x.to_string();
        let parsed = parse_element(&printed, alg).unwrap();
        prop_assert_eq!(&parsed, &x);
        prop_assert_eq!(parsed.to_string(), printed);
    }

    #[test]
    fn exponents_reduce_mod_order(k in -50i64..50, j in -50i64..50) {
        let alg = &algebras()[3];
        let lhs = parse_element(&format!("a1^{k}*b^{j}"), alg).unwrap();
        let rhs = parse_element(&format!("a1^{}*b^{}", k.rem_euclid(49), j.rem_euclid(3)), alg).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn negative_literals_reduce_mod_p(c in -1000i64..1000) {
        let alg = &algebras()[0];
        let lhs = parse_element(&format!("[{c}]*b"), alg).unwrap();
        let rhs = parse_element(&format!("{}*b", c.rem_euclid(7)), alg).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        let neg = parse_element(&format!("-{}*b", c.unsigned_abs()), alg).unwrap();
        let expected = parse_element(&format!("{}*b", (-(c.abs())).rem_euclid(7)), alg).unwrap();
        prop_assert_eq!(neg, expected);
    }
}
