use std::collections::BTreeMap;

use crate::dga::{truncate_above, DgModule, DgaError, Side};
use crate::exactlin::Matrix;
use crate::graded::{GradedDims, GradedMap};

use super::{minimal_resolution, ResolutionError, SemiFree, ValidRange, WindowedCohomology};

/// Differential of `Hom_R(F, N)` out of degree `i`:
/// `(∂f)(e) = ∂f(e) − (−1)^i f(∂e)` with `f(r·e) = (−1)^{i|r|} r·f(e)`.
fn hom_differential(free: &SemiFree, n: &DgModule, coeff_ops: &[Vec<GradedMap>], i: i32) -> Matrix {
    let field = n.field();
    let gens = free.generators();
    let offsets = |deg: i32| {
        let mut acc = 0;
        gens.iter()
            .map(|g| {
                let o = acc;
                acc += n.space().dim(g.degree + deg);
                o
            })
            .collect::<Vec<_>>()
    };
    let (src, tgt) = (offsets(i), offsets(i + 1));
    let dim = |deg: i32| gens.iter().map(|g| n.space().dim(g.degree + deg)).sum();
    let mut m = Matrix::zeros(field, dim(i + 1), dim(i));
    for (gi, g) in gens.iter().enumerate() {
        m.paste(tgt[gi], src[gi], &n.differential_block(g.degree + i));
        for ((k, _), op) in g.boundary.iter().zip(&coeff_ops[gi]) {
            let ck = g.degree + 1 - gens[*k].degree;
            let sign = -field.sign(i + i * ck);
            let b = op.block(field, gens[*k].degree + i, n.space(), n.space());
            m.paste(tgt[gi], src[*k], &b.scale(&sign));
        }
    }
    m
}

/// Dimensions of `H^i Hom_R(F, N)` for `i` in `lo..=hi`, zeros omitted.
pub fn hom_complex_dims(free: &SemiFree, n: &DgModule, lo: i32, hi: i32) -> GradedDims {
    let gens = free.generators();
    let coeff_ops: Vec<Vec<GradedMap>> = gens
        .iter()
        .map(|g| {
            g.boundary
                .iter()
                .map(|(k, c)| n.element_action(g.degree + 1 - gens[*k].degree, c))
                .collect()
        })
        .collect();
    let mut out = BTreeMap::new();
    if lo > hi {
        return out;
    }
    let mut prev_rank = hom_differential(free, n, &coeff_ops, lo - 1).rank();
    for i in lo..=hi {
        let d = hom_differential(free, n, &coeff_ops, i);
        let rank = d.rank();
        let h = d.cols() - rank - prev_rank;
        if h > 0 {
            out.insert(i, h);
        }
        prev_rank = rank;
    }
    out
}

/// Cohomology of `RHom_R(M, N)` as `H Hom_R(F, N')`, with `F` the windowed
/// minimal resolution of `M` and `N'` the truncation of `N` above.
///
/// Exact for `i ≥ v − t` (`v = sup H N`, `t` the top generator degree), or
/// everywhere if the resolution is complete, and zero for `i > v − u`.
pub fn rhom_cohomology(
    m: &DgModule,
    n: &DgModule,
    window: u32,
) -> Result<WindowedCohomology, ResolutionError> {
    if n.side() != Side::Left {
        return Err(ResolutionError::NotLeft);
    }
    let unbounded = ValidRange { lo: None, hi: None };
    if m.cohomology().is_zero() || n.cohomology().is_zero() {
        return Ok(WindowedCohomology {
            dims: GradedDims::new(),
            valid: unbounded,
        });
    }
    let res = minimal_resolution(m, window)?;
    let t = match truncate_above(n, None) {
        Ok(t) => t,
        Err(DgaError::Acyclic) => unreachable!("checked above"),
        Err(e) => return Err(e.into()),
    };
    let v = t.bound;
    let hi = v - res.u();
    let (lo, valid_lo) = if res.is_complete() {
        let bottom = t.module.space().min_degree().unwrap_or(v);
        let top_gen = res.generators().iter().map(|g| g.degree).max().unwrap_or(res.u());
        (bottom - top_gen, None)
    } else {
        let lo = v - res.top_degree();
        (lo, Some(lo))
    };
    Ok(WindowedCohomology {
        dims: hom_complex_dims(res.free(), &t.module, lo, hi),
        valid: ValidRange {
            lo: valid_lo,
            hi: None,
        },
    })
}
