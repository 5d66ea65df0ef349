//! The acceptance suite as library functions, shared by the `acceptance`
//! test target and the `selftest` command.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dga::models::{sphere, truncated_polynomial, wedge};
use crate::dga::{mapping_cone, ChainMap, DgModule, FinDga, Side};
use crate::exactlin::{Field, Matrix};
use crate::graded::GradedDims;
use crate::loop_sphere::{
    decompose, endo_dga_cohomology, indec_cohomology, make_cyclic, rhom_over_kt, sphere_ar_triangle,
    verify_ar_triangle, Block, BlockMultiset, GradedKTModule, SphereIndecLabel,
};
use crate::poincare::poincare_check;
use crate::quiver::{build_quiver, check_stable_translation, check_za_infinity, components};
use crate::resolution::{ar_translate, hom_complex_dims, minimal_resolution, rhom_cohomology};

const Q: Field = Field::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub number: u8,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionResult {
    /// `criterion N: PASS|FAIL  title (detail)`.
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2}: {}  {} ({}; {:.2?})",
            self.number,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.elapsed
        )
    }
}

fn timed(number: u8, title: &str, f: impl FnOnce() -> Result<String, String>) -> CriterionResult {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult {
        number,
        title: title.to_string(),
        passed,
        detail,
        elapsed,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:.2?}, limit {limit:.0?}"))
}

fn dims(pairs: &[(i32, usize)]) -> GradedDims {
    pairs.iter().copied().collect()
}

fn left(r: &Arc<FinDga>) -> DgModule {
    DgModule::regular(r.clone(), Side::Left)
}

fn k(r: &Arc<FinDga>) -> DgModule {
    DgModule::simple(r.clone(), Side::Left)
}

pub fn criterion_1() -> CriterionResult {
    timed(1, "Poincaré duality decides AR existence", || {
        let mut cases: Vec<(String, FinDga, bool)> = (2..=6)
            .map(|d| (format!("S^{d}"), sphere(Q, d).expect("model"), true))
            .collect();
        cases.push((
            "k[x]/x^3, |x| = 2".into(),
            truncated_polynomial(Q, 2, 2).expect("model"),
            true,
        ));
        cases.push(("S^2 ∨ S^4".into(), wedge(Q).expect("model"), false));
        for (name, r, expected) in &cases {
            let start = Instant::now();
            let d = r.top_degree().max(1);
            let p = poincare_check(r, Some(3 * (d - 1) as u32)).map_err(|e| format!("{name}: {e}"))?;
            within(Duration::from_secs(1), start, name)?;
            ensure(p.ar_exists() == *expected, || {
                format!("{name}: verdict {}", p.ar_exists())
            })?;
            let ext = p.ext_window_check.expect("requested");
            ensure(ext.passed == *expected, || {
                format!("{name}: Ext(k, R) check gives {:?}", ext.dims)
            })?;
        }
        Ok(format!("{} models", cases.len()))
    })
}

pub fn criterion_2() -> CriterionResult {
    timed(2, "resolution of k is the k[T] ladder", || {
        let w = 6;
        for d in 2..=5 {
            let r = Arc::new(sphere(Q, d).expect("model"));
            let res = minimal_resolution(&k(&r), (w * (d - 1)) as u32).map_err(|e| e.to_string())?;
            let expected: BTreeMap<i32, usize> = (0..=w).map(|n| (n * (d - 1), 1)).collect();
            ensure(res.generator_degrees() == expected, || {
                format!("d = {d}: generators {:?}", res.generator_degrees())
            })?;
            ensure(res.is_minimal(), || format!("d = {d}: not minimal"))?;
        }
        Ok("d = 2..5, w = 6".into())
    })
}

pub fn criterion_3() -> CriterionResult {
    timed(3, "τ = Σ^{d−1} on R, Σ³R and k", || {
        let mut checked = 0;
        for d in 2..=6 {
            let r = Arc::new(sphere(Q, d).expect("model"));
            let window = (4 * (d - 1)) as u32;
            for (name, p) in [("R", left(&r)), ("Σ³R", left(&r).suspend(3)), ("k", k(&r))] {
                let t = ar_translate(&p, window).map_err(|e| e.to_string())?;
                let expected = p.suspend(d - 1).cohomology_dims();
                let inside = |m: &GradedDims| -> GradedDims {
                    m.iter()
                        .filter(|(i, _)| t.valid.contains(**i))
                        .map(|(&i, &n)| (i, n))
                        .collect()
                };
                ensure(expected.keys().all(|&i| t.valid.contains(i)), || {
                    format!("d = {d}, {name}: window does not reach the expected support")
                })?;
                let got = inside(&t.module.cohomology_dims());
                ensure(got == inside(&expected), || {
                    format!("d = {d}, {name}: H(τP) = {got:?}, expected {expected:?}")
                })?;
                checked += 1;
            }
        }
        Ok(format!("{checked} objects"))
    })
}

/// Random invertible matrix as a product of unit lower and upper
/// triangular factors with small entries.
fn random_invertible(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut l = Matrix::identity(Q, n);
    let mut u = Matrix::identity(Q, n);
    for r in 0..n {
        for c in 0..n {
            if r > c {
                l.set(r, c, Q.from_i64(rng.random_range(-2..=2)));
            } else if r < c {
                u.set(r, c, Q.from_i64(rng.random_range(-2..=2)));
            } else {
                let x = rng.random_range(1..=3) * if rng.random_bool(0.5) { 1 } else { -1 };
                u.set(r, c, Q.from_i64(x));
            }
        }
    }
    l.mul(&u)
}

/// A sum of one to three suspended copies of `k`, `R` and acyclic cones,
/// in a scrambled basis.
fn random_module(rng: &mut impl Rng, r: &Arc<FinDga>) -> DgModule {
    let mut acc: Option<DgModule> = None;
    let mut pieces = 0;
    let target = rng.random_range(1..=3);
    while pieces < target || acc.as_ref().is_none_or(|m| m.cohomology().is_zero()) {
        let shift = rng.random_range(-4..=4);
        let piece = match rng.random_range(0..3) {
            0 => k(r),
            1 => left(r),
            _ => mapping_cone(&ChainMap::identity(&k(r))).cone().clone(),
        };
        let piece = piece.suspend(shift);
        acc = Some(match acc {
            None => piece,
            Some(m) => m.direct_sum(&piece).expect("same algebra"),
        });
        pieces += 1;
    }
    let m = acc.expect("nonempty");
    let basis = m
        .space()
        .degrees()
        .map(|i| (i, random_invertible(rng, m.space().dim(i))))
        .collect();
    m.change_basis(&basis).expect("invertible")
}

fn sup_law_case(seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rng.random_range(2..=4);
    let r = Arc::new(sphere(Q, d).expect("model"));
    let m = random_module(&mut rng, &r);
    let n = random_module(&mut rng, &r);
    let u = m.cohomology().min_degree().expect("nonzero");
    let v = n.cohomology().max_degree().expect("nonzero");
    let top_n = n.space().max_degree().expect("nonzero");
    let window = (top_n - v + 2).max(2 * (d - 1)) as u32;
    let windowed = rhom_cohomology(&m, &n, window).map_err(|e| format!("seed {seed}: {e}"))?;
    ensure(windowed.valid.contains(v - u), || {
        format!("seed {seed}: −u + v not certified")
    })?;
    ensure(windowed.dims.keys().next_back() == Some(&(v - u)), || {
        format!(
            "seed {seed}: sup {:?} ≠ −u + v = {}",
            windowed.dims.keys().next_back(),
            v - u
        )
    })?;
    let res = minimal_resolution(&m, window).map_err(|e| format!("seed {seed}: {e}"))?;
    let direct = hom_complex_dims(res.free(), &n, v - u - 1, top_n - u + 1);
    ensure(direct.keys().next_back() == Some(&(v - u)), || {
        format!(
            "seed {seed}: untruncated Hom has cohomology {direct:?} above −u + v = {}",
            v - u
        )
    })
}

pub fn criterion_4() -> CriterionResult {
    timed(4, "sup H RHom(M, N) = −inf H M + sup H N", || {
        let start = Instant::now();
        let failures: Vec<String> = (0..200u64)
            .into_par_iter()
            .filter_map(|s| sup_law_case(0x5eed_0000 + s).err())
            .collect();
        if let Some(f) = failures.first() {
            return Err(format!("{} of 200 pairs fail, first: {f}", failures.len()));
        }
        within(Duration::from_secs(30), start, "200 pairs")?;
        Ok("200 random pairs".into())
    })
}

fn random_kt(rng: &mut impl Rng) -> (i32, BlockMultiset, GradedKTModule) {
    let d = rng.random_range(2..=6);
    let count = rng.random_range(1..=8);
    let blocks: BlockMultiset = (0..count)
        .map(|_| Block {
            j: rng.random_range(-8..=8),
            m: rng.random_range(0..=6),
        })
        .collect();
    let plain = blocks.module(d).expect("valid blocks");
    let basis = plain
        .space()
        .degrees()
        .map(|i| (i, random_invertible(rng, plain.space().dim(i))))
        .collect();
    (d, blocks, plain.change_basis(&basis).expect("invertible"))
}

fn decomposition_case(seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (d, blocks, m) = random_kt(&mut rng);
    let found = decompose(&m).map_err(|e| format!("seed {seed}: {e}"))?;
    ensure(found == blocks, || {
        format!("seed {seed}: found {found:?}, built {blocks:?}")
    })?;
    ensure(found.dims(d) == m.dims(), || {
        format!("seed {seed}: dimensions differ")
    })?;
    for g in m.space().degrees() {
        for p in 0..=7u32 {
            ensure(found.rank(d, g, p) == m.t_rank(g, p as usize), || {
                format!("seed {seed}: rank of T^{p} on degree {g} differs")
            })?;
        }
    }
    Ok(())
}

pub fn criterion_5() -> CriterionResult {
    timed(5, "k[T]-module decomposition recovers its blocks", || {
        let start = Instant::now();
        let failures: Vec<String> = (0..500u64)
            .into_par_iter()
            .filter_map(|s| decomposition_case(0xb10c_0000 + s).err())
            .collect();
        if let Some(f) = failures.first() {
            return Err(format!("{} of 500 modules fail, first: {f}", failures.len()));
        }
        within(Duration::from_secs(60), start, "500 modules")?;
        Ok("500 random modules".into())
    })
}

pub fn criterion_6() -> CriterionResult {
    timed(6, "H of Σʲ N_m from RHom over k[T]", || {
        let mut checked = 0;
        for d in 2..=5 {
            let range = -6 * (d - 1) - 8..=d + 8;
            for m in 0..=6u32 {
                for j in -5..=5 {
                    let c = make_cyclic(d, j, m).map_err(|e| e.to_string())?;
                    let got = rhom_over_kt(d, &c, range.clone()).map_err(|e| e.to_string())?;
                    let expected = dims(&[(-(m as i32) * (d - 1) - j, 1), (d - j, 1)]);
                    ensure(got == expected, || format!("d = {d}, j = {j}, m = {m}: {got:?}"))?;
                    let closed = indec_cohomology(&SphereIndecLabel::new(d, j, m));
                    ensure(closed == expected, || {
                        format!("closed form for d = {d}, j = {j}, m = {m}")
                    })?;
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} labels"))
    })
}

pub fn criterion_7() -> CriterionResult {
    timed(7, "endomorphism DGA has cohomology k ⊕ Σ^{−d}k", || {
        for d in 2..=5 {
            let got = endo_dga_cohomology(d, -3 * (d - 1)..=d + 2).map_err(|e| e.to_string())?;
            ensure(got == dims(&[(0, 1), (d, 1)]), || format!("d = {d}: {got:?}"))?;
        }
        Ok("d = 2..5".into())
    })
}

pub fn criterion_8() -> CriterionResult {
    timed(8, "AR triangles over spheres", || {
        let mut checked = 0;
        for d in 2..=5 {
            for m in 0..=6u32 {
                for j in -5..=5 {
                    let tri =
                        sphere_ar_triangle(&SphereIndecLabel::new(d, j, m)).map_err(|e| e.to_string())?;
                    let report = verify_ar_triangle(&tri).map_err(|e| e.to_string())?;
                    if let Some(f) = report.failure {
                        return Err(format!("{tri}: {f}"));
                    }
                    if m >= 1 {
                        let n = m as i32;
                        let support: BTreeSet<i32> = [-(n + 1) * (d - 1), -n * (d - 1), 1, d]
                            .into_iter()
                            .map(|i| i - j)
                            .collect();
                        let got: BTreeSet<i32> = report.computed.keys().copied().collect();
                        ensure(
                            got == support && report.computed.values().all(|&c| c == 1),
                            || format!("{tri}: middle support {got:?}"),
                        )?;
                    }
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} triangles"))
    })
}

/// Component counts of the quivers for `d = 2..=6`.
fn quiver_counts() -> Result<Vec<(i32, usize)>, String> {
    (2..=6)
        .map(|d| {
            let q = build_quiver(d, -3 * (d - 1), 3 * (d - 1), 6).map_err(|e| e.to_string())?;
            let comps = components(&q);
            let interior = q.interior();
            ensure(
                comps.par_iter().all(|c| check_za_infinity(&q, c, &interior)),
                || format!("d = {d}: a component is not ZA∞"),
            )?;
            ensure(check_stable_translation(&q, &interior), || {
                format!("d = {d}: not a stable translation quiver")
            })?;
            Ok((d, comps.len()))
        })
        .collect()
}

pub fn criterion_9() -> CriterionResult {
    timed(9, "AR quiver has d − 1 components of shape ZA∞", || {
        let start = Instant::now();
        let counts = quiver_counts()?;
        for &(d, c) in &counts {
            ensure(c as i32 == d - 1, || format!("d = {d}: {c} components"))?;
        }
        within(Duration::from_secs(10), start, "quivers")?;
        Ok("d = 2..6".into())
    })
}

pub fn criterion_10() -> CriterionResult {
    timed(10, "quivers tell spheres apart", || {
        let counts = quiver_counts()?;
        let distinct: BTreeSet<usize> = counts.iter().map(|&(_, c)| c).collect();
        ensure(distinct.len() == counts.len(), || format!("counts {counts:?}"))?;
        let text: Vec<String> = counts.iter().map(|(d, c)| format!("S^{d}: {c}")).collect();
        Ok(text.join(", "))
    })
}

/// All criteria in order.
pub fn run_all() -> Vec<CriterionResult> {
    let all: [fn() -> CriterionResult; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    all.iter().map(|f| f()).collect()
}
