//! Windowed minimal semi-free resolutions and the derived functors built
//! from them.

mod approx;
mod hom;
mod semifree;
mod tensor;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dga::{mapping_cone, ChainMap, DgModule, DgaError, Side};
use crate::exactlin::{Matrix, Scalar};
use crate::graded::GradedDims;

pub use approx::{finite_stage_approximation, StageApproximation};
pub use hom::{hom_complex_dims, rhom_cohomology};
pub use semifree::{Generator, GeneratorKind, SemiFree};
pub use tensor::{ar_translate, derived_tensor_with_dual, dual_tensor, TensorResult};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResolutionError {
    #[error("acyclic input: cohomology is zero")]
    Acyclic,
    #[error("only left modules can be resolved")]
    NotLeft,
    #[error("window ends at degree {top}, degree {requested} is out of reach")]
    WindowTooSmall { requested: i32, top: i32 },
    #[error(transparent)]
    Dga(#[from] DgaError),
}

/// Degrees `i` for which a windowed result is exact. `None` ends are
/// unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidRange {
    pub lo: Option<i32>,
    pub hi: Option<i32>,
}

impl ValidRange {
    pub fn contains(&self, i: i32) -> bool {
        self.lo.is_none_or(|l| l <= i) && self.hi.is_none_or(|h| i <= h)
    }

    pub fn is_empty(&self) -> bool {
        matches!((self.lo, self.hi), (Some(l), Some(h)) if l > h)
    }

    pub fn shifted(&self, by: i32) -> ValidRange {
        ValidRange {
            lo: self.lo.map(|l| l + by),
            hi: self.hi.map(|h| h + by),
        }
    }
}

/// Graded dimensions of a windowed computation and the degrees where
/// they are exact. Degrees outside `valid` are not reported.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowedCohomology {
    pub dims: GradedDims,
    pub valid: ValidRange,
}

/// Filtration indices of stage `m`: generators `..delta_end` span `L(m)`,
/// generators `..gamma_end` span `F(m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageMarker {
    pub stage: u32,
    pub delta_end: usize,
    pub gamma_end: usize,
}

/// A minimal semi-free resolution `F → M`, built through degree `u + window`.
#[derive(Clone, Debug)]
pub struct Resolution {
    target: DgModule,
    window: u32,
    u: i32,
    free: SemiFree,
    markers: Vec<StageMarker>,
    complete: bool,
}

impl Resolution {
    /// Whether `F → M` is already a quasi-isomorphism in every degree, so
    /// that no generator beyond the window would ever be added.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn target(&self) -> &DgModule {
        &self.target
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    /// `inf { i | H^i M ≠ 0 }`.
    pub fn u(&self) -> i32 {
        self.u
    }

    /// Largest degree in which generators were computed.
    pub fn top_degree(&self) -> i32 {
        self.u + self.window as i32
    }

    pub fn free(&self) -> &SemiFree {
        &self.free
    }

    pub fn generators(&self) -> &[Generator] {
        self.free.generators()
    }

    /// Number of generators per degree (the `β` data).
    pub fn generator_degrees(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for g in self.generators() {
            *out.entry(g.degree).or_default() += 1;
        }
        out
    }

    pub fn stage_markers(&self) -> &[StageMarker] {
        &self.markers
    }

    pub fn module(&self) -> DgModule {
        self.free.module()
    }

    pub fn comparison(&self) -> Result<ChainMap, DgaError> {
        let f = self.free.module();
        let map = self.free.comparison(&self.target);
        ChainMap::new(f, self.target.clone(), map)
    }

    /// The filtration stage `F(m)`: generators of degree `≤ u + m`.
    pub fn stage(&self, m: u32) -> SemiFree {
        let end = self
            .markers
            .iter()
            .find(|s| s.stage == m)
            .map_or(self.generators().len(), |s| s.gamma_end);
        self.free.prefix(end)
    }

    /// The intermediate stage `L(m)`, `F(m−1)` plus the kernel-killing
    /// generators of degree `u + m`.
    pub fn l_stage(&self, m: u32) -> SemiFree {
        let end = self
            .markers
            .iter()
            .find(|s| s.stage == m)
            .map_or(self.generators().len(), |s| s.delta_end);
        self.free.prefix(end)
    }

    /// Whether `H^i F → H^i M` is bijective for every `i ≤ u + window`.
    pub fn is_quasi_isomorphism_in_window(&self) -> Result<bool, DgaError> {
        let phi = self.comparison()?;
        let hf = phi.source().cohomology();
        let hm = phi.target().cohomology();
        let h = phi.induced(&hf, &hm);
        let (sf, sm) = (hf.space(), hm.space());
        let field = self.target.field();
        let top = self.top_degree();
        let degrees = hf.degrees().chain(hm.degrees()).filter(|&i| i <= top);
        let ok = degrees
            .collect::<Vec<_>>()
            .into_iter()
            .all(|i| hf.dim(i) == hm.dim(i) && h.block(field, i, &sf, &sm).rank() == hm.dim(i));
        Ok(ok)
    }

    /// No generator's differential has a unit coefficient, i.e. `∂F ⊆ R^{≥1}F`.
    pub fn is_minimal(&self) -> bool {
        let r = self.free.algebra();
        let unit = r.unit_index();
        self.generators().iter().all(|g| {
            g.boundary.iter().all(|(k, c)| {
                let deg = g.degree + 1 - self.generators()[*k].degree;
                deg != 0
                    || r.indices_in_degree(0)
                        .zip(c)
                        .all(|(t, x)| t != unit || x.is_zero())
            })
        })
    }
}

/// Builds the minimal semi-free resolution of a left module through
/// generator degree `u + window`.
///
/// In each degree `n` the cone `C` of the current comparison map is formed
/// and one generator of degree `n` is added per basis class of `H^n C`,
/// preferring images of cohomology classes of `M` and otherwise following
/// rref pivot order.
pub fn minimal_resolution(m: &DgModule, window: u32) -> Result<Resolution, ResolutionError> {
    if m.side() != Side::Left {
        return Err(ResolutionError::NotLeft);
    }
    let h = m.cohomology();
    let u = h.min_degree().ok_or(ResolutionError::Acyclic)?;
    let field = m.field();
    let mut free = SemiFree::new(m.algebra().clone(), Vec::new());
    let mut markers = Vec::new();
    for n in u..=u + window as i32 {
        let (f_n, f_n1, f_n2) = (free.dim(n), free.dim(n + 1), free.dim(n + 2));
        let (m_n1, m_n, m_n_1) = (m.space().dim(n - 1), m.space().dim(n), m.space().dim(n + 1));

        let mut d_prev = Matrix::zeros(field, f_n1 + m_n, f_n + m_n1);
        d_prev.paste(0, 0, &free.differential_block(n).scale(&field.from_i64(-1)));
        d_prev.paste(f_n1, 0, &free.comparison_block(m, n));
        d_prev.paste(f_n1, f_n, &m.differential_block(n - 1));

        let mut d_cur = Matrix::zeros(field, f_n2 + m_n_1, f_n1 + m_n);
        d_cur.paste(0, 0, &free.differential_block(n + 1).scale(&field.from_i64(-1)));
        d_cur.paste(f_n2, 0, &free.comparison_block(m, n + 1));
        d_cur.paste(f_n2, f_n1, &m.differential_block(n));

        let boundaries = d_prev.image_basis();
        let cycles = d_cur.kernel_basis();
        let gamma = match h.representatives(n) {
            Some(reps) => Matrix::zeros(field, f_n1, reps.cols()).vstack(reps),
            None => Matrix::zeros(field, f_n1 + m_n, 0),
        };
        let n_gamma = gamma.cols();
        let keep = boundaries.extend_basis(&gamma.hstack(&cycles));

        let layout = free.layout(n + 1);
        let mut deltas = Vec::new();
        let mut gammas = Vec::new();
        for &c in &keep {
            let col = if c < n_gamma {
                gamma.column(c)
            } else {
                cycles.column(c - n_gamma)
            };
            let boundary = layout
                .iter()
                .filter_map(|s| {
                    let coeffs: Vec<Scalar> = col[s.offset..s.offset + s.len].iter().map(|x| -x).collect();
                    coeffs
                        .iter()
                        .any(|x| !x.is_zero())
                        .then_some((s.generator, coeffs))
                })
                .collect();
            let generator = Generator {
                degree: n,
                kind: if c < n_gamma {
                    GeneratorKind::Gamma
                } else {
                    GeneratorKind::Delta
                },
                boundary,
                image: col[f_n1..].to_vec(),
            };
            if c < n_gamma {
                gammas.push(generator);
            } else {
                deltas.push(generator);
            }
        }
        for g in deltas {
            free.push(g);
        }
        let delta_end = free.generators().len();
        for g in gammas {
            free.push(g);
        }
        markers.push(StageMarker {
            stage: (n - u) as u32,
            delta_end,
            gamma_end: free.generators().len(),
        });
    }
    let phi = ChainMap::new(free.module(), m.clone(), free.comparison(m))?;
    let complete = mapping_cone(&phi).cone().cohomology().is_zero();
    Ok(Resolution {
        target: m.clone(),
        window,
        u,
        free,
        markers,
        complete,
    })
}

#[cfg(test)]
mod tests;
