use crate::dga::{DgModule, Side};
use crate::exactlin::Matrix;
use crate::graded::{GradedMap, GradedVectorSpace};

use super::{minimal_resolution, Resolution, ResolutionError, SemiFree, ValidRange};

/// A windowed derived tensor product with the certified degree range.
#[derive(Clone, Debug)]
pub struct TensorResult {
    pub module: DgModule,
    pub valid: ValidRange,
    pub resolution: Resolution,
}

/// `DR ⊗_R F` for a semi-free `F = ⊕ R·e`: degreewise `⊕ DR ⊗ e` with
/// `∂(f⊗e) = ∂f⊗e + (−1)^{|f|} Σ (f·c_k)⊗e_k` and left action on `DR`.
pub fn dual_tensor(free: &SemiFree) -> DgModule {
    let r = free.algebra();
    let field = r.field();
    // DR as a right module (from the left regular module) and as a left
    // module (from the right regular module); the spaces coincide
    let dr_right = DgModule::regular(r.clone(), Side::Left).dualize();
    let dr_left = DgModule::regular(r.clone(), Side::Right).dualize();
    let ds = dr_left.space();
    let gens = free.generators();
    let top = r.top_degree();
    let Some((lo, hi)) = gens
        .iter()
        .map(|g| g.degree)
        .min()
        .zip(gens.iter().map(|g| g.degree).max())
    else {
        return DgModule::zero(r.clone(), Side::Left);
    };
    let (lo, hi) = (lo - top, hi);

    let offsets = |i: i32| {
        let mut acc = 0;
        gens.iter()
            .map(|g| {
                let o = acc;
                acc += ds.dim(i - g.degree);
                o
            })
            .collect::<Vec<_>>()
    };
    let dim = |i: i32| -> usize { gens.iter().map(|g| ds.dim(i - g.degree)).sum() };

    let mut space = GradedVectorSpace::new();
    for i in lo..=hi {
        for (k, g) in gens.iter().enumerate() {
            for l in ds.labels(i - g.degree) {
                space.push(i, format!("{l}⊗e{k}"));
            }
        }
    }
    let coeff_ops: Vec<Vec<GradedMap>> = gens
        .iter()
        .map(|g| {
            g.boundary
                .iter()
                .map(|(k, c)| dr_right.element_action(g.degree + 1 - gens[*k].degree, c))
                .collect()
        })
        .collect();
    let mut differential = GradedMap::zero(1);
    let mut action: Vec<GradedMap> = r.basis().iter().map(|b| GradedMap::zero(b.degree)).collect();
    for i in lo..=hi {
        let (src, tgt) = (offsets(i), offsets(i + 1));
        let mut m = Matrix::zeros(field, dim(i + 1), dim(i));
        for (gi, g) in gens.iter().enumerate() {
            let f = i - g.degree;
            m.paste(tgt[gi], src[gi], &dr_left.differential_block(f));
            for ((k, _), op) in g.boundary.iter().zip(&coeff_ops[gi]) {
                let b = op.block(field, f, ds, ds).scale(&field.sign(f));
                m.paste(tgt[*k], src[gi], &b);
            }
        }
        differential.set_block(i, m);
        for (t, a) in action.iter_mut().enumerate() {
            let deg = r.degree_of(t);
            let tg = offsets(i + deg);
            let mut m = Matrix::zeros(field, dim(i + deg), dim(i));
            for (gi, g) in gens.iter().enumerate() {
                m.paste(tg[gi], src[gi], &dr_left.action_block(t, i - g.degree));
            }
            a.set_block(i, m);
        }
    }
    DgModule::new(r.clone(), Side::Left, space, action, differential)
}

/// `DR ⊗^L_R P` computed on the windowed minimal resolution of `P`; exact
/// in degrees `≤ t − top(R)` where `t` is the top generator degree, or
/// everywhere if the resolution is complete.
pub fn derived_tensor_with_dual(p: &DgModule, window: u32) -> Result<TensorResult, ResolutionError> {
    let resolution = minimal_resolution(p, window)?;
    let module = dual_tensor(resolution.free());
    let hi = (!resolution.is_complete()).then(|| resolution.top_degree() - p.algebra().top_degree());
    Ok(TensorResult {
        module,
        valid: ValidRange { lo: None, hi },
        resolution,
    })
}

/// The AR translate `τP = Σ^{−1}(DR ⊗^L_R P)`.
pub fn ar_translate(p: &DgModule, window: u32) -> Result<TensorResult, ResolutionError> {
    let t = derived_tensor_with_dual(p, window)?;
    Ok(TensorResult {
        module: t.module.suspend(-1),
        valid: t.valid.shifted(1),
        resolution: t.resolution,
    })
}
