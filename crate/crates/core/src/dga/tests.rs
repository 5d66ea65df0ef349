use std::collections::BTreeMap;
use std::sync::Arc;

use super::models::{sphere, sphere_with_acyclic_pair, truncated_polynomial, wedge};
use super::*;
use crate::exactlin::{Field, Matrix};
use crate::graded::GradedDims;

const Q: Field = Field::Rational;

fn dims(pairs: &[(i32, usize)]) -> GradedDims {
    pairs.iter().copied().collect()
}

fn koszul_basis(m: &DgModule) -> BTreeMap<i32, Matrix> {
    m.space()
        .degrees()
        .map(|d| (d, Matrix::identity(Q, m.space().dim(d)).scale(&Q.sign(d))))
        .collect()
}

fn cycle_pair(r: &Arc<FinDga>, shift: i32) -> DgModule {
    let k = DgModule::simple(r.clone(), Side::Left).suspend(shift);
    mapping_cone(&ChainMap::identity(&k)).cone().clone()
}

#[test]
fn sphere_models_are_valid() {
    for d in 2..=6 {
        assert!(validate_dga(&sphere(Q, d).unwrap()).is_valid(), "d = {d}");
    }
    let r = sphere(Q, 1).unwrap();
    let rep = validate_dga(&r);
    assert!(rep.violates(Axiom::DegreeOne));
    assert!(rep.to_string().contains("R^1 = 0 fails"));
}

#[test]
fn other_models_are_valid() {
    assert!(validate_dga(&wedge(Q).unwrap()).is_valid());
    assert!(validate_dga(&truncated_polynomial(Q, 2, 2).unwrap()).is_valid());
    assert!(validate_dga(&sphere_with_acyclic_pair(Q, 3, 4).unwrap()).is_valid());
}

#[test]
fn broken_differential_is_flagged() {
    // ∂(x·x) = z but ∂x = 0
    let r = DgaBuilder::new(Q)
        .basis(0, "1")
        .unit("1")
        .basis(2, "x")
        .basis(4, "y")
        .basis(5, "z")
        .product_i64("x", "x", "y", 1)
        .differential_i64("y", "z", 1)
        .build()
        .unwrap();
    assert!(validate_dga(&r).violates(Axiom::Leibniz));

    // ∂∂s = s·s ≠ 0
    let r = DgaBuilder::new(Q)
        .basis(0, "1")
        .unit("1")
        .basis(2, "s")
        .basis(3, "t")
        .basis(4, "u")
        .product_i64("s", "s", "u", 1)
        .differential_i64("s", "t", 1)
        .differential_i64("t", "u", 1)
        .build()
        .unwrap();
    let rep = validate_dga(&r);
    assert!(rep.violates(Axiom::DifferentialSquare));
    assert!(!rep.violates(Axiom::Leibniz));
}

#[test]
fn negative_degrees_and_units() {
    let r = DgaBuilder::new(Q)
        .basis(-2, "w")
        .basis(0, "1")
        .unit("1")
        .build()
        .unwrap();
    assert!(validate_dga(&r).violates(Axiom::CochainPositivity));
    let r = DgaBuilder::new(Q)
        .basis(0, "1")
        .unit("1")
        .basis(2, "x")
        .explicit_unit_products()
        .product_i64("1", "1", "1", 1)
        .build()
        .unwrap();
    assert!(validate_dga(&r).violates(Axiom::UnitLaw));
}

#[test]
fn nonassociative_product_is_flagged() {
    let r = DgaBuilder::new(Q)
        .basis(0, "1")
        .unit("1")
        .basis(2, "x")
        .basis(4, "y")
        .basis(6, "z")
        .product_i64("x", "x", "y", 1)
        .product_i64("x", "y", "z", 1)
        .build()
        .unwrap();
    assert!(validate_dga(&r).violates(Axiom::Associativity));
}

#[test]
fn regular_and_simple_modules_are_valid() {
    let r = Arc::new(sphere_with_acyclic_pair(Q, 2, 3).unwrap());
    for side in [Side::Left, Side::Right] {
        assert!(validate_module(&DgModule::regular(r.clone(), side)).is_valid());
        assert!(validate_module(&DgModule::simple(r.clone(), side)).is_valid());
        assert!(validate_module(&DgModule::zero(r.clone(), side)).is_valid());
    }
}

#[test]
fn dropped_odd_signs_break_leibniz() {
    let r = Arc::new(sphere_with_acyclic_pair(Q, 2, 3).unwrap());
    let m = DgModule::regular(r.clone(), Side::Left);
    let action = (0..r.basis().len())
        .map(|i| m.action(i).signed_by(Q, |_| r.degree_of(i)))
        .collect();
    let bad = DgModule::new(
        r.clone(),
        Side::Left,
        m.space().clone(),
        action,
        m.differential().clone(),
    );
    assert!(validate_module(&bad).violates(Axiom::Leibniz));
}

#[test]
fn cohomology_of_sphere() {
    for d in 2..=5 {
        let r = Arc::new(sphere(Q, d).unwrap());
        let m = DgModule::regular(r, Side::Left);
        assert_eq!(m.cohomology_dims(), dims(&[(0, 1), (d, 1)]));
    }
    let r = Arc::new(sphere_with_acyclic_pair(Q, 3, 4).unwrap());
    assert_eq!(algebra_cohomology(&r).dims(), dims(&[(0, 1), (3, 1)]));
}

#[test]
fn suspension() {
    let r = Arc::new(sphere_with_acyclic_pair(Q, 3, 4).unwrap());
    for side in [Side::Left, Side::Right] {
        let m = DgModule::regular(r.clone(), side);
        assert_eq!(m.suspend(0), m);
        for n in -3..=3 {
            let s = m.suspend(n);
            assert!(validate_module(&s).is_valid(), "side {side:?} n {n}");
            for (d, k) in m.cohomology_dims() {
                assert_eq!(s.cohomology().dim(d - n), k);
            }
            assert_eq!(s.suspend(2), m.suspend(n + 2));
        }
    }
    let r = Arc::new(sphere(Q, 4).unwrap());
    let m = DgModule::regular(r, Side::Left).suspend(3);
    assert_eq!(m.dims(), dims(&[(-3, 1), (1, 1)]));
}

#[test]
fn duality() {
    let r = Arc::new(sphere_with_acyclic_pair(Q, 3, 4).unwrap());
    for side in [Side::Left, Side::Right] {
        let m = DgModule::regular(r.clone(), side).suspend(1);
        let dm = m.dualize();
        assert_eq!(dm.side(), side.opposite());
        assert!(validate_module(&dm).is_valid(), "{side:?}");
        for (d, k) in m.cohomology_dims() {
            assert_eq!(dm.cohomology().dim(-d), k);
        }
        let ddm = dm.dualize().change_basis(&koszul_basis(&m)).unwrap();
        let ddm = ddm.relabeled(|l| l.trim_end_matches("**").to_string());
        assert_eq!(ddm, m, "{side:?}");
    }
    let r = Arc::new(sphere(Q, 3).unwrap());
    let dr = DgModule::regular(r.clone(), Side::Left).dualize();
    assert_eq!(dr.dims(), dims(&[(-3, 1), (0, 1)]));
    assert_eq!(
        dr.cohomology_dims(),
        DgModule::regular(r.clone(), Side::Right)
            .suspend(3)
            .cohomology_dims()
    );
    assert!(DgModule::zero(r, Side::Left).dualize().is_zero());
}

#[test]
fn cones() {
    let r = Arc::new(sphere_with_acyclic_pair(Q, 2, 3).unwrap());
    for side in [Side::Left, Side::Right] {
        let m = DgModule::regular(r.clone(), side);
        let t = mapping_cone(&ChainMap::identity(&m));
        assert!(validate_module(t.cone()).is_valid());
        assert!(t.cone().cohomology().is_zero());
        assert!(t.is_exact());

        let n = DgModule::simple(r.clone(), side).suspend(-1);
        let t = mapping_cone(&ChainMap::zero(&m, &n).unwrap());
        assert!(validate_module(t.cone()).is_valid());
        let mut expected = m.suspend(1).cohomology_dims();
        for (d, k) in n.cohomology_dims() {
            *expected.entry(d).or_default() += k;
        }
        assert_eq!(t.cone().cohomology_dims(), expected);
        assert!(t.is_exact());
    }
}

#[test]
fn augmentation_cone() {
    let r = Arc::new(sphere(Q, 3).unwrap());
    let m = DgModule::regular(r.clone(), Side::Left);
    let k = DgModule::simple(r.clone(), Side::Left);
    let mut map = crate::graded::GradedMap::zero(0);
    map.set_block(0, Matrix::identity(Q, 1));
    let aug = ChainMap::new(m, k, map).unwrap();
    let t = aug.mapping_cone();
    assert!(validate_module(t.cone()).is_valid());
    assert_eq!(t.cone().cohomology_dims(), dims(&[(2, 1)]));
    assert!(t.is_exact());
}

#[test]
fn non_chain_maps_are_rejected() {
    let r = Arc::new(sphere(Q, 2).unwrap());
    let m = DgModule::regular(r.clone(), Side::Left);
    let mut map = crate::graded::GradedMap::zero(0);
    map.set_block(2, Matrix::identity(Q, 1));
    // kills s but not 1, so s = s·1 is not respected
    assert!(ChainMap::new(m.clone(), m, map).is_err());
}

#[test]
fn truncation_below_removes_acyclic_cells() {
    let r = Arc::new(sphere(Q, 3).unwrap());
    let reg = DgModule::regular(r.clone(), Side::Left);
    let t = truncate_below(&reg, Some(0)).unwrap();
    assert_eq!(t.module, reg);

    for shift in [1, 3] {
        let m = reg.direct_sum(&cycle_pair(&r, shift)).unwrap();
        let t = truncate_below(&m, None).unwrap();
        assert_eq!(t.bound, 0);
        assert!(validate_module(&t.module).is_valid());
        assert_eq!(t.module.space().min_degree(), Some(0));
        assert_eq!(t.module.cohomology_dims(), m.cohomology_dims());
        assert!(t.comparison.is_injective());
        assert!(t.comparison.is_quasi_isomorphism());
    }
    assert!(matches!(
        truncate_below(&reg, Some(1)),
        Err(DgaError::BoundMismatch { .. })
    ));
    let acyclic = cycle_pair(&r, 0);
    assert!(matches!(truncate_below(&acyclic, None), Err(DgaError::Acyclic)));
}

#[test]
fn truncation_above_removes_acyclic_cells() {
    let r = Arc::new(sphere(Q, 3).unwrap());
    let reg = DgModule::regular(r.clone(), Side::Left);
    let t = truncate_above(&reg, Some(3)).unwrap();
    assert_eq!(t.module, reg);

    for shift in [-3, -8] {
        let m = reg.direct_sum(&cycle_pair(&r, shift)).unwrap();
        let t = truncate_above(&m, None).unwrap();
        assert_eq!(t.bound, 3);
        assert!(validate_module(&t.module).is_valid());
        assert_eq!(t.module.space().max_degree(), Some(3));
        assert_eq!(t.module.cohomology_dims(), m.cohomology_dims());
        assert!(t.comparison.is_surjective());
        assert!(t.comparison.is_quasi_isomorphism());
    }
}

#[test]
fn induced_ring_action() {
    let r = Arc::new(truncated_polynomial(Q, 2, 2).unwrap());
    let h = cohomology(&DgModule::regular(r.clone(), Side::Left));
    assert_eq!(h.generator_count(), 1);
    let w = Arc::new(wedge(Q).unwrap());
    let h = cohomology(&DgModule::regular(w, Side::Left));
    assert_eq!(h.generator_count(), 1);
    let k = cohomology(
        &DgModule::simple(r.clone(), Side::Left)
            .direct_sum(&DgModule::simple(r, Side::Left).suspend(-2))
            .unwrap(),
    );
    assert_eq!(k.generator_count(), 2);
}

mod properties {
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn algebra(choice: u8) -> Arc<FinDga> {
        Arc::new(match choice % 6 {
            0..=2 => sphere(Q, 2 + (choice % 6) as i32).unwrap(),
            3 => sphere_with_acyclic_pair(Q, 3, 4).unwrap(),
            4 => truncated_polynomial(Q, 2, 2).unwrap(),
            _ => wedge(Q).unwrap(),
        })
    }

    fn scramble(m: &DgModule, rng: &mut ChaCha8Rng) -> DgModule {
        let basis = m
            .space()
            .degrees()
            .map(|d| {
                let n = m.space().dim(d);
                let mut l = Matrix::identity(Q, n);
                let mut u = Matrix::identity(Q, n);
                for r in 0..n {
                    for c in 0..n {
                        match r.cmp(&c) {
                            std::cmp::Ordering::Greater => l.set(r, c, Q.from_i64(rng.random_range(-2..=2))),
                            std::cmp::Ordering::Less => u.set(r, c, Q.from_i64(rng.random_range(-2..=2))),
                            std::cmp::Ordering::Equal => u.set(r, c, Q.from_i64(rng.random_range(1..=3))),
                        }
                    }
                }
                (d, l.mul(&u))
            })
            .collect();
        m.change_basis(&basis).unwrap()
    }

    fn module(choice: u8, side_left: bool, seed: u64) -> DgModule {
        let r = algebra(choice);
        let side = if side_left { Side::Left } else { Side::Right };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut acc = DgModule::zero(r.clone(), side);
        for _ in 0..rng.random_range(1..=3) {
            let shift = rng.random_range(-3..=3);
            let piece = match rng.random_range(0..3) {
                0 => DgModule::regular(r.clone(), side).suspend(shift),
                1 => DgModule::simple(r.clone(), side).suspend(shift),
                _ => {
                    let k = DgModule::simple(r.clone(), side).suspend(shift);
                    mapping_cone(&ChainMap::identity(&k)).cone().clone()
                }
            };
            acc = acc.direct_sum(&piece).unwrap();
        }
        scramble(&acc, &mut rng)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn suspension_and_duality_laws(choice in any::<u8>(), left in any::<bool>(), seed in any::<u64>(), n in -4i32..=4) {
            let m = module(choice, left, seed);
            prop_assert!(validate_module(&m).is_valid());
            let h = m.cohomology_dims();
            let s = m.suspend(n);
            prop_assert!(validate_module(&s).is_valid());
            let shifted: GradedDims = h.iter().map(|(&i, &k)| (i - n, k)).collect();
            prop_assert_eq!(s.cohomology_dims(), shifted);
            let dm = m.dualize();
            prop_assert!(validate_module(&dm).is_valid());
            let negated: GradedDims = h.iter().map(|(&i, &k)| (-i, k)).collect();
            prop_assert_eq!(dm.cohomology_dims(), negated);
        }

        #[test]
        fn cones_are_valid_and_exact(choice in any::<u8>(), left in any::<bool>(), seed in any::<u64>(), other in any::<u64>()) {
            let m = module(choice, left, seed);
            let n = module(choice, left, other);
            for t in [mapping_cone(&ChainMap::identity(&m)), mapping_cone(&ChainMap::zero(&m, &n).unwrap())] {
                prop_assert!(validate_module(t.cone()).is_valid());
                prop_assert!(t.is_exact());
            }
            if !m.cohomology().is_zero() {
                let below = truncate_below(&m, None).unwrap();
                let t = mapping_cone(&below.comparison);
                prop_assert!(validate_module(t.cone()).is_valid());
                prop_assert!(t.is_exact());
                prop_assert!(t.cone().cohomology().is_zero());
            }
        }

        #[test]
        fn truncations_are_quasi_isomorphisms(choice in any::<u8>(), left in any::<bool>(), seed in any::<u64>()) {
            let m = module(choice, left, seed);
            let h = m.cohomology();
            prop_assume!(!h.is_zero());
            let below = truncate_below(&m, None).unwrap();
            let above = truncate_above(&m, None).unwrap();
            for t in [&below, &above] {
                prop_assert!(validate_module(&t.module).is_valid());
                prop_assert!(t.comparison.is_quasi_isomorphism());
                prop_assert_eq!(t.module.cohomology_dims(), m.cohomology_dims());
            }
            prop_assert_eq!(below.module.space().min_degree(), h.min_degree());
            prop_assert_eq!(above.module.space().max_degree(), h.max_degree());
        }
    }
}
