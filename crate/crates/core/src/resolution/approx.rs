use std::collections::BTreeMap;

use crate::dga::{mapping_cone, ChainMap, DgModule, Triangle};

use super::{minimal_resolution, ResolutionError};

/// A filtration stage `F(m) → N` and its cone `Q`.
#[derive(Clone, Debug)]
pub struct StageApproximation {
    pub stage: u32,
    pub generator_degrees: BTreeMap<i32, usize>,
    pub comparison: ChainMap,
    pub triangle: Triangle,
    /// `inf { i | H^i Q ≠ 0 }`, `None` when `Q` is acyclic.
    pub tail_inf: Option<i32>,
}

impl StageApproximation {
    pub fn module(&self) -> &DgModule {
        self.comparison.source()
    }
}

/// The stage `F(m)`, `m = max(v − u, 0)`, of the minimal resolution of `n`,
/// with `inf { i | H^i Q ≠ 0 }` for the cone `Q` of `F(m) → n`.
pub fn finite_stage_approximation(
    n: &DgModule,
    v: i32,
    window: u32,
) -> Result<StageApproximation, ResolutionError> {
    let res = minimal_resolution(n, window)?;
    if v > res.top_degree() {
        return Err(ResolutionError::WindowTooSmall {
            requested: v,
            top: res.top_degree(),
        });
    }
    let stage = (v - res.u()).max(0) as u32;
    let free = res.stage(stage);
    let mut generator_degrees = BTreeMap::new();
    for g in free.generators() {
        *generator_degrees.entry(g.degree).or_default() += 1;
    }
    let comparison = ChainMap::new(free.module(), n.clone(), free.comparison(n))?;
    let triangle = mapping_cone(&comparison);
    let tail_inf = triangle.cone().cohomology().min_degree();
    Ok(StageApproximation {
        stage,
        generator_degrees,
        comparison,
        triangle,
        tail_inf,
    })
}
