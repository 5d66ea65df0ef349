//! Poincaré duality of `H R`, which decides whether the compact derived
//! category of `R` has Auslander-Reiten triangles.

use serde::{Deserialize, Serialize};

use crate::dga::{algebra_cohomology, ring_product, Cohomology, DgModule, FinDga, Side};
use crate::exactlin::Matrix;
use crate::graded::GradedDims;
use crate::resolution::{rhom_cohomology, ResolutionError, ValidRange};

/// The pairing `H^i × H^{d−i} → H^d` in the chosen bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub degree: i32,
    /// Rows index `H^i`, columns `H^{d−i}`.
    pub matrix: Matrix,
    pub rank: usize,
}

/// Windowed check that `Ext_R(k, R)` is one copy of `k` in degree `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtCheck {
    pub window: u32,
    pub dims: GradedDims,
    pub valid: ValidRange,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct PoincareReport {
    pub d: i32,
    pub dims: GradedDims,
    pub left_perfect: bool,
    pub right_perfect: bool,
    pub witness: Vec<Pairing>,
    pub ext_window_check: Option<ExtCheck>,
}

impl PoincareReport {
    /// AR triangles exist in `D^c(R)` and `D^c(R^op)`.
    pub fn ar_exists(&self) -> bool {
        self.left_perfect && self.right_perfect
    }
}

/// `sup { i | H^i R ≠ 0 }`.
pub fn top_degree(r: &FinDga) -> i32 {
    algebra_cohomology(r).max_degree().unwrap_or(0)
}

fn pairing(r: &FinDga, h: &Cohomology, d: i32, i: i32) -> Matrix {
    let field = r.field();
    let (a, b) = (h.dim(i), h.dim(d - i));
    let mut m = Matrix::zeros(field, a, b);
    let unit = |n: usize, k: usize| {
        let mut v = vec![field.zero(); n];
        v[k] = field.one();
        v
    };
    for x in 0..a {
        for y in 0..b {
            let p = ring_product(r, h, (i, &unit(a, x)), (d - i, &unit(b, y)));
            m.set(x, y, p[0].clone());
        }
    }
    m
}

/// Decides Poincaré duality of `H R` by the ranks of the multiplication
/// pairings into `H^d`, optionally cross-checked by `Ext_R(k, R)` computed
/// on a resolution window.
pub fn poincare_check(r: &FinDga, ext_window: Option<u32>) -> Result<PoincareReport, ResolutionError> {
    let h = algebra_cohomology(r);
    let d = h.max_degree().unwrap_or(0);
    let dims = h.dims();
    let mut left = h.dim(0) == 1 && h.dim(d) == 1;
    let mut right = left;
    let mut witness = Vec::new();
    if left {
        for i in 0..=d {
            let (a, b) = (h.dim(i), h.dim(d - i));
            if a == 0 && b == 0 {
                continue;
            }
            let matrix = pairing(r, &h, d, i);
            let rank = matrix.rank();
            left &= a == b && rank == a;
            right &= a == b && rank == b;
            witness.push(Pairing {
                degree: i,
                matrix,
                rank,
            });
        }
    }
    let ext_window_check = match ext_window {
        None => None,
        Some(w) => {
            let algebra = std::sync::Arc::new(r.clone());
            let k = DgModule::simple(algebra.clone(), Side::Left);
            let rr = DgModule::regular(algebra, Side::Left);
            let ext = rhom_cohomology(&k, &rr, w)?;
            let expected: GradedDims = [(d, 1)].into_iter().collect();
            let passed = ext.valid.contains(d) && ext.dims == expected;
            Some(ExtCheck {
                window: w,
                dims: ext.dims,
                valid: ext.valid,
                passed,
            })
        }
    };
    Ok(PoincareReport {
        d,
        dims,
        left_perfect: left,
        right_perfect: right,
        witness,
        ext_window_check,
    })
}

/// Whether `D^c(R)` has Auslander-Reiten triangles.
pub fn ar_exists(r: &FinDga) -> bool {
    poincare_check(r, None).is_ok_and(|p| p.ar_exists())
}
