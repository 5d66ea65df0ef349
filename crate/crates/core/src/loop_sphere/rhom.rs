use std::ops::RangeInclusive;

use crate::dga::Cohomology;
use crate::exactlin::{Field, Matrix};
use crate::graded::{GradedDims, GradedMap, GradedVectorSpace};

use super::{check_d, GradedKTModule, KtError};

/// A DG right `k[T]`-module given degreewise, possibly unbounded below,
/// with every graded piece finite-dimensional.
pub trait KtComplex {
    fn field(&self) -> Field;
    fn d(&self) -> i32;
    fn dim(&self, i: i32) -> usize;
    /// `∂ : X^i → X^{i+1}`.
    fn differential(&self, i: i32) -> Matrix;
    /// `T : X^i → X^{i−(d−1)}`.
    fn t_block(&self, i: i32) -> Matrix;
}

impl KtComplex for GradedKTModule {
    fn field(&self) -> Field {
        self.field
    }

    fn d(&self) -> i32 {
        self.d
    }

    fn dim(&self, i: i32) -> usize {
        self.space.dim(i)
    }

    fn differential(&self, i: i32) -> Matrix {
        self.differential_block(i)
    }

    fn t_block(&self, i: i32) -> Matrix {
        GradedKTModule::t_block(self, i)
    }
}

/// The resolution `F = cone(Σ^{d−1}k[T] → k[T], 1 ↦ T)` of `k`, free on
/// `a` in degree 0 and `b` in degree `−d` with `∂b = aT`.
///
/// The basis of `F^i` lists `aT^k` before `bT^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConeResolution {
    d: i32,
}

impl ConeResolution {
    pub fn new(d: i32) -> Result<Self, KtError> {
        check_d(d)?;
        Ok(ConeResolution { d })
    }

    fn power(&self, start: i32, i: i32) -> Option<i32> {
        let delta = self.d - 1;
        let steps = start - i;
        (steps >= 0 && steps % delta == 0).then_some(steps / delta)
    }

    /// Exponents `k` of `aT^k` and `bT^k` in degree `i`.
    fn parts(&self, i: i32) -> (Option<i32>, Option<i32>) {
        (self.power(0, i), self.power(-self.d, i))
    }

    fn labels(&self, i: i32) -> Vec<String> {
        let (a, b) = self.parts(i);
        let name = |g: &str, k: i32| match k {
            0 => g.to_string(),
            1 => format!("{g}T"),
            _ => format!("{g}T^{k}"),
        };
        a.map(|k| name("a", k))
            .into_iter()
            .chain(b.map(|k| name("b", k)))
            .collect()
    }
}

impl KtComplex for ConeResolution {
    fn field(&self) -> Field {
        Field::Rational
    }

    fn d(&self) -> i32 {
        self.d
    }

    fn dim(&self, i: i32) -> usize {
        let (a, b) = self.parts(i);
        a.is_some() as usize + b.is_some() as usize
    }

    fn differential(&self, i: i32) -> Matrix {
        let mut m = Matrix::zeros(Field::Rational, self.dim(i + 1), self.dim(i));
        let (a, b) = self.parts(i);
        if b.is_some() {
            m.set(0, a.is_some() as usize, Field::Rational.one());
        }
        m
    }

    fn t_block(&self, i: i32) -> Matrix {
        let t = i - (self.d - 1);
        let mut m = Matrix::zeros(Field::Rational, self.dim(t), self.dim(i));
        let (a, b) = self.parts(i);
        let (ta, _) = self.parts(t);
        if a.is_some() {
            m.set(0, 0, Field::Rational.one());
        }
        if b.is_some() {
            m.set(ta.is_some() as usize, a.is_some() as usize, Field::Rational.one());
        }
        m
    }
}

/// `F` restricted to degrees in `window`, with the bottom degree replaced by
/// its quotient by boundaries so that the result is a DG module with the
/// same cohomology `k` in degree 0.
pub fn make_sphere_resolution(d: i32, window: RangeInclusive<i32>) -> Result<GradedKTModule, KtError> {
    let f = ConeResolution::new(d)?;
    let (lo, hi) = (*window.start(), *window.end());
    if lo > 0 || hi < 0 {
        return Err(KtError::Window { lo, hi });
    }
    let field = Field::Rational;
    let n = f.dim(lo);
    let boundaries = f.differential(lo - 1).image_basis();
    let keep = boundaries.extend_basis(&Matrix::identity(field, n));
    let frame = boundaries.hstack(&Matrix::identity(field, n).select_columns(&keep));
    let inv = frame.inverse().expect("boundaries plus complement form a basis");
    let rows: Vec<usize> = (boundaries.cols()..n).collect();
    let all: Vec<usize> = (0..n).collect();
    let project = inv.submatrix(&rows, &all);

    let mut space = GradedVectorSpace::new();
    for i in lo..=0 {
        let labels = f.labels(i);
        let pick: Vec<usize> = if i == lo {
            keep.clone()
        } else {
            (0..labels.len()).collect()
        };
        for k in pick {
            space.push(i, labels[k].clone());
        }
    }
    let include = Matrix::identity(field, n).select_columns(&keep);
    let mut t = GradedMap::zero(1 - d);
    let mut differential = GradedMap::zero(1);
    for i in lo..=0 {
        let source = if i == lo {
            include.clone()
        } else {
            Matrix::identity(field, f.dim(i))
        };
        if i - (d - 1) >= lo {
            let mut b = f.t_block(i).mul(&source);
            if i - (d - 1) == lo {
                b = project.mul(&b);
            }
            t.set_block(i, b);
        }
        if i < 0 {
            differential.set_block(i, f.differential(i).mul(&source));
        }
    }
    GradedKTModule::new(field, d, space, t, Some(differential))
}

/// `H` of a DG module with the induced `T`-action.
pub fn kt_cohomology(m: &GradedKTModule) -> Result<GradedKTModule, KtError> {
    let Some(differential) = m.differential() else {
        return Ok(m.clone());
    };
    let h = Cohomology::of_complex(m.field(), m.space(), differential);
    let t = h.induced(m.t_action(), m.space(), m.space(), &h);
    GradedKTModule::new(m.field(), m.d(), h.space(), t, None)
}

/// `Hom^i_{k[T]}(F, N) = N^i ⊕ N^{i−d}` by `f ↦ (f(a), f(b))`, with
/// `∂(x, y) = (∂x, ∂y − (−1)^i xT)`.
fn hom_dim<N: KtComplex + ?Sized>(n: &N, i: i32) -> usize {
    n.dim(i) + n.dim(i - n.d())
}

fn hom_differential<N: KtComplex + ?Sized>(n: &N, i: i32) -> Matrix {
    let d = n.d();
    let field = n.field();
    let (x0, y0) = (n.dim(i), n.dim(i - d));
    let (x1, y1) = (n.dim(i + 1), n.dim(i + 1 - d));
    let mut m = Matrix::zeros(field, x1 + y1, x0 + y0);
    m.paste(0, 0, &n.differential(i));
    m.paste(x1, 0, &n.t_block(i).scale(&-field.sign(i)));
    m.paste(x1, x0, &n.differential(i - d));
    m
}

/// `dim H^i Hom_{k[T]}(F, N)` for `i` in `range`, which is the cohomology
/// of the object of `D^c(Sᵈ)` corresponding to `N`. Exact in every degree.
pub fn rhom_over_kt<N: KtComplex + ?Sized>(
    d: i32,
    n: &N,
    range: RangeInclusive<i32>,
) -> Result<GradedDims, KtError> {
    check_d(d)?;
    if n.d() != d {
        return Err(KtError::Inconsistent(format!(
            "module lives over k[T] for d = {}",
            n.d()
        )));
    }
    let mut out = GradedDims::new();
    for i in range {
        let rank_in = hom_differential(n, i - 1).rank();
        let rank_out = hom_differential(n, i).rank();
        let h = hom_dim(n, i) - rank_out - rank_in;
        if h > 0 {
            out.insert(i, h);
        }
    }
    Ok(out)
}

/// `dim H^i Hom_{k[T]}(F, F)`, the cohomology of the endomorphism DGA of
/// the resolution of `k`.
pub fn endo_dga_cohomology(d: i32, range: RangeInclusive<i32>) -> Result<GradedDims, KtError> {
    rhom_over_kt(d, &ConeResolution::new(d)?, range)
}
