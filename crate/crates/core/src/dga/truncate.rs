use crate::exactlin::Matrix;
use crate::graded::{GradedMap, GradedVectorSpace};

use super::{ChainMap, DgModule, DgaError};

/// A truncated module together with its comparison quasi-isomorphism:
/// `U → M` for [`truncate_below`], `N → V` for [`truncate_above`].
#[derive(Clone, Debug)]
pub struct Truncation {
    pub module: DgModule,
    pub comparison: ChainMap,
    /// The degree truncated at (`inf` or `sup` of the cohomology).
    pub bound: i32,
}

fn check_bound(found: i32, expected: Option<i32>) -> Result<i32, DgaError> {
    match expected {
        Some(e) if e != found => Err(DgaError::BoundMismatch { expected: e, found }),
        _ => Ok(found),
    }
}

/// Rebuilds a module on `space` whose operator blocks are `conj(op, source_degree)`.
fn rebuild(
    m: &DgModule,
    space: GradedVectorSpace,
    conj: impl Fn(&GradedMap, i32) -> Option<Matrix>,
) -> DgModule {
    let degrees: Vec<i32> = space.degrees().collect();
    let apply = |g: &GradedMap| {
        let mut out = GradedMap::zero(g.degree);
        for &d in &degrees {
            if space.dim(d + g.degree) == 0 {
                continue;
            }
            if let Some(b) = conj(g, d) {
                out.set_block(d, b);
            }
        }
        out
    };
    let action = m.actions().iter().map(apply).collect();
    let differential = apply(m.differential());
    DgModule::new(m.algebra().clone(), m.side(), space, action, differential)
}

/// Sub-module `U ⊆ M` with `U^j = 0` below `u = inf{i | H^i M ≠ 0}` and
/// `U^j = M^j` above it; `U^u` is spanned by coordinate vectors
/// complementing the boundaries.
pub fn truncate_below(m: &DgModule, expected: Option<i32>) -> Result<Truncation, DgaError> {
    let field = m.field();
    let h = m.cohomology();
    let u = check_bound(h.min_degree().ok_or(DgaError::Acyclic)?, expected)?;
    if m.space().min_degree() == Some(u) && m.differential_block(u - 1).is_zero() {
        return Ok(Truncation {
            module: m.clone(),
            comparison: ChainMap::identity(m),
            bound: u,
        });
    }
    let n = m.space().dim(u);
    let boundaries = m.differential_block(u - 1).image_basis();
    let keep = boundaries.extend_basis(&Matrix::identity(field, n));
    let mut space = GradedVectorSpace::new();
    for &i in &keep {
        space.push(u, m.space().labels(u)[i].clone());
    }
    for d in m.space().degrees().filter(|&d| d > u) {
        for l in m.space().labels(d) {
            space.push(d, l.clone());
        }
    }
    let all = |d: i32| -> Vec<usize> { (0..m.space().dim(d)).collect() };
    let pick = |d: i32| if d == u { keep.clone() } else { all(d) };
    let module = rebuild(m, space, |g, d| {
        let full = g.block(field, d, m.space(), m.space());
        Some(full.submatrix(&pick(d + g.degree), &pick(d)))
    });
    let mut incl = GradedMap::zero(0);
    for d in module.space().degrees() {
        let id = Matrix::identity(field, m.space().dim(d));
        incl.set_block(d, id.select_columns(&pick(d)));
    }
    let comparison = ChainMap::new(module.clone(), m.clone(), incl)?;
    Ok(Truncation {
        module,
        comparison,
        bound: u,
    })
}

/// Quotient `N → V` with `V^j = 0` above `v = sup{i | H^i N ≠ 0}`,
/// `V^j = N^j` below it and `V^v` identified with the cycles `Z^v`.
pub fn truncate_above(n: &DgModule, expected: Option<i32>) -> Result<Truncation, DgaError> {
    let field = n.field();
    let h = n.cohomology();
    let v = check_bound(h.max_degree().ok_or(DgaError::Acyclic)?, expected)?;
    if n.space().max_degree() == Some(v) && n.differential_block(v).is_zero() {
        return Ok(Truncation {
            module: n.clone(),
            comparison: ChainMap::identity(n),
            bound: v,
        });
    }
    let dim_v = n.space().dim(v);
    let cycles = n.differential_block(v).kernel_basis();
    let complement = cycles.extend_basis(&Matrix::identity(field, dim_v));
    let frame = cycles.hstack(&Matrix::identity(field, dim_v).select_columns(&complement));
    let inv = frame.inverse().expect("cycles plus complement form a basis");
    let z = cycles.cols();
    let rows: Vec<usize> = (0..z).collect();
    let cols: Vec<usize> = (0..dim_v).collect();
    let project = inv.submatrix(&rows, &cols);

    let mut space = GradedVectorSpace::new();
    for d in n.space().degrees().filter(|&d| d < v) {
        for l in n.space().labels(d) {
            space.push(d, l.clone());
        }
    }
    for i in 0..z {
        space.push(v, format!("z{v}_{i}"));
    }
    let module = rebuild(n, space, |g, d| {
        let t = d + g.degree;
        let mut b = g.block(field, d, n.space(), n.space());
        if t == v {
            b = project.mul(&b);
        }
        if d == v {
            b = b.mul(&cycles);
        }
        Some(b)
    });
    let mut proj = GradedMap::zero(0);
    for d in n.space().degrees().filter(|&d| d <= v) {
        let b = if d == v {
            project.clone()
        } else {
            Matrix::identity(field, n.space().dim(d))
        };
        proj.set_block(d, b);
    }
    let comparison = ChainMap::new(n.clone(), module.clone(), proj)?;
    Ok(Truncation {
        module,
        comparison,
        bound: v,
    })
}
