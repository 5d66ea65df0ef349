use std::collections::BTreeMap;
use std::sync::Arc;

use super::*;
use crate::dga::models::{sphere, sphere_with_acyclic_pair, truncated_polynomial, wedge};
use crate::dga::{cohomology, validate_module, DgModule, FinDga, Side};
use crate::exactlin::Field;
use crate::graded::GradedDims;

const Q: Field = Field::Rational;

fn left(r: &Arc<FinDga>) -> DgModule {
    DgModule::regular(r.clone(), Side::Left)
}

fn k(r: &Arc<FinDga>) -> DgModule {
    DgModule::simple(r.clone(), Side::Left)
}

fn ladder(d: i32, top: i32, shift: i32) -> BTreeMap<i32, usize> {
    (0..)
        .map(|n| n * (d - 1))
        .take_while(|&x| x <= top)
        .map(|x| (x + shift, 1))
        .collect()
}

fn dims(pairs: &[(i32, usize)]) -> GradedDims {
    pairs.iter().copied().collect()
}

#[test]
fn free_module_resolves_itself() {
    let r = Arc::new(sphere(Q, 3).unwrap());
    let res = minimal_resolution(&left(&r), 8).unwrap();
    assert_eq!(res.generator_degrees(), BTreeMap::from([(0, 1)]));
    assert_eq!(res.module().dims(), left(&r).dims());
    assert!(res.is_minimal());
    assert!(res.is_quasi_isomorphism_in_window().unwrap());
}

#[test]
fn simple_module_over_sphere_gives_ladder() {
    for d in 2..=5 {
        let r = Arc::new(sphere(Q, d).unwrap());
        let w = 4 * (d - 1) as u32;
        let res = minimal_resolution(&k(&r), w).unwrap();
        assert_eq!(res.generator_degrees(), ladder(d, w as i32, 0), "d = {d}");
        assert!(res.is_minimal());
        assert!(res.is_quasi_isomorphism_in_window().unwrap());
        assert!(validate_module(&res.module()).is_valid());
        assert!(res
            .generators()
            .iter()
            .skip(1)
            .all(|g| g.kind == GeneratorKind::Delta));
        assert_eq!(res.generators()[0].kind, GeneratorKind::Gamma);
    }
}

#[test]
fn suspension_shifts_generators() {
    let r = Arc::new(sphere(Q, 3).unwrap());
    let res = minimal_resolution(&k(&r).suspend(3), 8).unwrap();
    assert_eq!(res.u(), -3);
    assert_eq!(res.generator_degrees(), ladder(3, 8, -3));
}

#[test]
fn resolutions_over_other_models() {
    let models = [
        sphere_with_acyclic_pair(Q, 3, 2).unwrap(),
        sphere_with_acyclic_pair(Q, 2, 4).unwrap(),
        truncated_polynomial(Q, 2, 2).unwrap(),
        wedge(Q).unwrap(),
    ];
    for r in models {
        let r = Arc::new(r);
        for m in [k(&r), left(&r), k(&r).direct_sum(&left(&r).suspend(2)).unwrap()] {
            let res = minimal_resolution(&m, 7).unwrap();
            assert!(res.is_minimal());
            assert!(validate_module(&res.module()).is_valid());
            assert!(res.is_quasi_isomorphism_in_window().unwrap());
        }
    }
}

#[test]
fn stages_nest() {
    let r = Arc::new(sphere(Q, 2).unwrap());
    let res = minimal_resolution(&k(&r), 5).unwrap();
    for m in 0..=5 {
        let f = res.stage(m);
        let l = res.l_stage(m);
        assert_eq!(f.generators().len(), m as usize + 1);
        assert!(l.generators().len() <= f.generators().len());
        assert!(validate_module(&f.module()).is_valid());
    }
}

#[test]
fn right_modules_and_acyclic_inputs_are_rejected() {
    let r = Arc::new(sphere(Q, 2).unwrap());
    let right = DgModule::regular(r.clone(), Side::Right);
    assert_eq!(
        minimal_resolution(&right, 2).unwrap_err(),
        ResolutionError::NotLeft
    );
    assert_eq!(
        minimal_resolution(&DgModule::zero(r, Side::Left), 2).unwrap_err(),
        ResolutionError::Acyclic
    );
}

#[test]
fn rhom_basics() {
    for d in 2..=5 {
        let r = Arc::new(sphere(Q, d).unwrap());
        let rr = rhom_cohomology(&left(&r), &left(&r), 0).unwrap();
        assert_eq!(rr.dims, dims(&[(0, 1), (d, 1)]));
        let w = 3 * (d - 1) as u32;
        let kr = rhom_cohomology(&k(&r), &left(&r), w).unwrap();
        assert!(kr.valid.contains(d));
        assert_eq!(kr.dims, dims(&[(d, 1)]));
    }
}

#[test]
fn rhom_sup_law_on_examples() {
    let r = Arc::new(sphere(Q, 3).unwrap());
    let ms = [
        k(&r),
        left(&r).suspend(2),
        k(&r).direct_sum(&left(&r).suspend(-1)).unwrap(),
    ];
    let ns = [
        k(&r).suspend(-4),
        left(&r),
        k(&r).direct_sum(&k(&r).suspend(1)).unwrap(),
    ];
    for m in &ms {
        for n in &ns {
            let h = rhom_cohomology(m, n, 4).unwrap();
            let u = m.cohomology().min_degree().unwrap();
            let v = n.cohomology().max_degree().unwrap();
            assert_eq!(h.dims.keys().next_back().copied(), Some(v - u));
        }
    }
}

#[test]
fn truncation_of_target_matters_not() {
    // N with an acyclic tail above its top class
    let r = Arc::new(sphere(Q, 2).unwrap());
    let kk = k(&r).suspend(-5);
    let tail = crate::dga::mapping_cone(&crate::dga::ChainMap::identity(&kk));
    let n = left(&r).direct_sum(tail.cone()).unwrap();
    let a = rhom_cohomology(&k(&r), &n, 6).unwrap();
    let b = rhom_cohomology(&k(&r), &left(&r), 6).unwrap();
    assert_eq!(a, b);
}

#[test]
fn tensor_with_dual_of_free_module() {
    for d in 2..=4 {
        let r = Arc::new(sphere(Q, d).unwrap());
        let t = derived_tensor_with_dual(&left(&r), 2).unwrap();
        assert!(validate_module(&t.module).is_valid());
        let dr = DgModule::regular(r.clone(), Side::Right).dualize();
        assert_eq!(t.module.cohomology_dims(), dr.cohomology_dims());
        let tau = ar_translate(&left(&r), 2).unwrap();
        assert_eq!(tau.module.cohomology_dims(), dims(&[(1 - d, 1), (1, 1)]));
    }
}

#[test]
fn tensor_matches_dual_of_hom_oracle() {
    // H^i(DR ⊗ F) = D H^{-i} Hom(F, R) for finite semi-free F
    let models = [
        sphere(Q, 2).unwrap(),
        sphere_with_acyclic_pair(Q, 3, 2).unwrap(),
        wedge(Q).unwrap(),
    ];
    for r in models {
        let r = Arc::new(r);
        for p in [k(&r), left(&r).suspend(1).direct_sum(&k(&r)).unwrap()] {
            let t = derived_tensor_with_dual(&p, 6).unwrap();
            assert!(validate_module(&t.module).is_valid());
            let free = t.resolution.free();
            let (lo, hi) = free.degree_range().unwrap();
            let top = r.top_degree();
            let hom = hom_complex_dims(free, &left(&r), -hi - 1, top - lo + 1);
            let flipped: GradedDims = hom.iter().map(|(&i, &n)| (-i, n)).collect();
            assert_eq!(t.module.cohomology_dims(), flipped);
        }
    }
}

#[test]
fn translate_of_simple_module() {
    for d in 2..=5 {
        let r = Arc::new(sphere(Q, d).unwrap());
        let tau = ar_translate(&k(&r), 3 * (d - 1) as u32).unwrap();
        let got: GradedDims = tau
            .module
            .cohomology_dims()
            .into_iter()
            .filter(|&(i, _)| tau.valid.contains(i))
            .collect();
        assert_eq!(got, dims(&[(1 - d, 1)]));
    }
}

#[test]
fn wedge_translate_is_not_a_shift_of_r() {
    let r = Arc::new(wedge(Q).unwrap());
    let tau = ar_translate(&left(&r), 0).unwrap();
    assert_eq!(tau.module.cohomology_dims(), dims(&[(-3, 1), (-1, 1), (1, 1)]));
    assert_eq!(cohomology(&left(&r)).generator_count(), 1);
    assert_eq!(cohomology(&tau.module).generator_count(), 2);
}

#[test]
fn stage_approximation() {
    let r = Arc::new(sphere(Q, 3).unwrap());
    let a = finite_stage_approximation(&k(&r), -2, 4).unwrap();
    assert_eq!(a.stage, 0);
    assert!(a.tail_inf.unwrap() >= 1);
    let a = finite_stage_approximation(&k(&r), 4, 6).unwrap();
    assert_eq!(a.generator_degrees, BTreeMap::from([(0, 1), (2, 1), (4, 1)]));
    assert!(a.tail_inf.unwrap() >= 4);
    assert!(finite_stage_approximation(&k(&r), 9, 6).is_err());

    let n = k(&r).suspend(-3);
    for v in 3..=8 {
        let a = finite_stage_approximation(&n, v, 8).unwrap();
        assert!(a.tail_inf.is_none_or(|t| t >= v));
        for row in a.triangle.long_exact_ranks() {
            if row.degree <= v {
                assert_eq!(row.rank_map, row.dim_target, "degree {}", row.degree);
                assert_eq!(row.dim_source, row.dim_target);
            }
        }
    }
}

mod properties {
    use proptest::prelude::*;

    use super::*;

    /// A direct sum of suspended copies of `k` and `R` over the sphere model.
    fn sum(r: &Arc<FinDga>, pieces: &[(bool, i32)]) -> DgModule {
        pieces
            .iter()
            .fold(DgModule::zero(r.clone(), Side::Left), |acc, &(free, n)| {
                let p = if free { left(r) } else { k(r) };
                acc.direct_sum(&p.suspend(n)).unwrap()
            })
    }

    fn pieces() -> impl Strategy<Value = Vec<(bool, i32)>> {
        proptest::collection::vec((any::<bool>(), -4i32..=4), 1..=3)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn suspension_shifts_generator_multiset(d in 2i32..=4, ps in pieces(), n in -5i32..=5) {
            let r = Arc::new(sphere(Q, d).unwrap());
            let m = sum(&r, &ps);
            let w = 3 * (d - 1) as u32;
            let a = minimal_resolution(&m, w).unwrap();
            let b = minimal_resolution(&m.suspend(n), w).unwrap();
            let shifted: BTreeMap<i32, usize> = a.generator_degrees().into_iter().map(|(i, c)| (i - n, c)).collect();
            prop_assert_eq!(b.generator_degrees(), shifted);
            prop_assert!(a.is_minimal() && b.is_minimal());
            prop_assert!(a.is_quasi_isomorphism_in_window().unwrap());
        }

        #[test]
        fn hom_sup_law_and_finiteness(d in 2i32..=4, ms in pieces(), ns in pieces()) {
            let r = Arc::new(sphere(Q, d).unwrap());
            let (m, n) = (sum(&r, &ms), sum(&r, &ns));
            let u = m.cohomology().min_degree().unwrap();
            let v = n.cohomology().max_degree().unwrap();
            let w = (v - u + 9).max(2 * (d - 1)) as u32;
            let h = rhom_cohomology(&m, &n, w).unwrap();
            prop_assert!(h.valid.contains(v - u));
            prop_assert!(h.dims.keys().all(|&i| i <= v - u));
            prop_assert_eq!(h.dims.keys().next_back().copied(), Some(v - u));
            if h.valid.contains(0) {
                let wider = rhom_cohomology(&m, &n, w + 2 * (d - 1) as u32).unwrap();
                prop_assert_eq!(wider.dims.get(&0), h.dims.get(&0));
            }
        }

        #[test]
        fn translate_is_a_shift_over_spheres(d in 2i32..=4, ps in pieces()) {
            let r = Arc::new(sphere(Q, d).unwrap());
            prop_assert!(crate::poincare::ar_exists(&r));
            let p = sum(&r, &ps);
            let t = ar_translate(&p, 3 * (d - 1) as u32 + 8).unwrap();
            let expected = p.suspend(d - 1).cohomology_dims();
            let got = t.module.cohomology_dims();
            let lo = expected.keys().next().copied().unwrap();
            prop_assert!(t.valid.contains(lo));
            for i in lo - 2..=expected.keys().next_back().copied().unwrap() + 2 {
                if t.valid.contains(i) {
                    prop_assert_eq!(got.get(&i), expected.get(&i), "degree {}", i);
                }
            }
        }
    }
}
