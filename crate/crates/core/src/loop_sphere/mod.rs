//! Graded and DG modules over the loop algebra `k[T]`, `|T| = −(d−1)`,
//! and the transport of their homological algebra to the sphere `Sᵈ`.
//!
//! Modules are right modules given by a `T`-action of degree `−(d−1)` and
//! an optional differential with `∂(xT) = ∂(x)T`. Every finite-dimensional
//! graded module is a sum of blocks `Σʲ C_m`, `C_m = k[T]/(T^{m+1})`, and
//! such a block corresponds to the indecomposable `Σʲ N_m` over `Sᵈ`.

mod ar;
mod decompose;
mod rhom;

use std::collections::BTreeMap;

use crate::exactlin::{Field, Matrix};
use crate::graded::{GradedDims, GradedMap, GradedVectorSpace};

pub use ar::{
    indec_cohomology, sphere_ar_triangle, verify_ar_triangle, ARTriangleLabel, SphereIndecLabel,
    VerificationReport,
};
pub use decompose::{decompose, jordan_basis, Block, BlockMultiset, JordanString};
pub use rhom::{
    endo_dga_cohomology, kt_cohomology, make_sphere_resolution, rhom_over_kt, ConeResolution, KtComplex,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KtError {
    #[error("sphere dimension must be at least 2, got {0}")]
    Dimension(i32),
    #[error("k[T]-modules need characteristic zero, got characteristic {0}")]
    Characteristic(u64),
    #[error("inconsistent module data: {0}")]
    Inconsistent(String),
    #[error("window {lo}..={hi} must contain degree 0")]
    Window { lo: i32, hi: i32 },
}

pub(crate) fn check_d(d: i32) -> Result<(), KtError> {
    if d < 2 {
        return Err(KtError::Dimension(d));
    }
    Ok(())
}

fn check_field(field: Field) -> Result<(), KtError> {
    match field.characteristic() {
        0 => Ok(()),
        p => Err(KtError::Characteristic(p)),
    }
}

/// A finite-dimensional graded (or DG) right module over `k[T]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedKTModule {
    field: Field,
    d: i32,
    space: GradedVectorSpace,
    t_action: GradedMap,
    differential: Option<GradedMap>,
}

impl GradedKTModule {
    /// Checks block shapes, nilpotency of `T` and, if a differential is
    /// given, `∂² = 0` and `∂T = T∂`.
    pub fn new(
        field: Field,
        d: i32,
        space: GradedVectorSpace,
        t_action: GradedMap,
        differential: Option<GradedMap>,
    ) -> Result<Self, KtError> {
        check_d(d)?;
        check_field(field)?;
        if t_action.degree != 1 - d {
            return Err(KtError::Inconsistent(format!(
                "T-action has degree {}, expected {}",
                t_action.degree,
                1 - d
            )));
        }
        let shaped = |g: &GradedMap, what: &str| -> Result<(), KtError> {
            for (i, b) in g.blocks() {
                let (rows, cols) = (space.dim(i + g.degree), space.dim(i));
                if b.rows() != rows || b.cols() != cols {
                    return Err(KtError::Inconsistent(format!(
                        "{what} block on degree {i} is {}x{}, expected {rows}x{cols}",
                        b.rows(),
                        b.cols()
                    )));
                }
            }
            Ok(())
        };
        shaped(&t_action, "T-action")?;
        let differential = match differential {
            Some(g) if g.degree != 1 => {
                return Err(KtError::Inconsistent(format!(
                    "differential has degree {}",
                    g.degree
                )))
            }
            Some(g) if g.is_zero() => None,
            other => other,
        };
        if let Some(g) = &differential {
            shaped(g, "differential")?;
        }
        let m = GradedKTModule {
            field,
            d,
            space,
            t_action,
            differential,
        };
        for i in m.space.degrees() {
            if !m.t_power(i, m.space.degrees().count()).is_zero() {
                return Err(KtError::Inconsistent(format!("T is not nilpotent on degree {i}")));
            }
            if m.differential.is_some() {
                if !m
                    .differential_block(i + 1)
                    .mul(&m.differential_block(i))
                    .is_zero()
                {
                    return Err(KtError::Inconsistent(format!("∂² ≠ 0 on degree {i}")));
                }
                let dt = m.differential_block(i - m.delta()).mul(&m.t_block(i));
                let td = m.t_block(i + 1).mul(&m.differential_block(i));
                if dt != td {
                    return Err(KtError::Inconsistent(format!(
                        "∂ does not commute with T on degree {i}"
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn zero(field: Field, d: i32) -> Result<Self, KtError> {
        Self::new(field, d, GradedVectorSpace::new(), GradedMap::zero(1 - d), None)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn d(&self) -> i32 {
        self.d
    }

    /// `d − 1 = −|T|`.
    pub fn delta(&self) -> i32 {
        self.d - 1
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn dims(&self) -> GradedDims {
        self.space.dims()
    }

    pub fn t_action(&self) -> &GradedMap {
        &self.t_action
    }

    pub fn differential(&self) -> Option<&GradedMap> {
        self.differential.as_ref()
    }

    pub fn t_block(&self, i: i32) -> Matrix {
        self.t_action.block(self.field, i, &self.space, &self.space)
    }

    pub fn differential_block(&self, i: i32) -> Matrix {
        match &self.differential {
            Some(g) => g.block(self.field, i, &self.space, &self.space),
            None => Matrix::zeros(self.field, self.space.dim(i + 1), self.space.dim(i)),
        }
    }

    /// `T^p` out of degree `i`.
    pub fn t_power(&self, i: i32, p: usize) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.space.dim(i));
        let mut deg = i;
        for _ in 0..p {
            acc = self.t_block(deg).mul(&acc);
            deg -= self.delta();
        }
        acc
    }

    /// `rank(T^p : M^g → M^{g − p(d−1)})`.
    pub fn t_rank(&self, g: i32, p: usize) -> usize {
        self.t_power(g, p).rank()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, KtError> {
        if self.d != other.d || self.field != other.field {
            return Err(KtError::Inconsistent("summands over different k[T]".into()));
        }
        let space = self.space.direct_sum(&other.space);
        let sum = |a: &GradedMap, b: &GradedMap, whole: &GradedVectorSpace| {
            let mut g = GradedMap::zero(a.degree);
            for i in whole.degrees() {
                let x = a.block(self.field, i, &self.space, &self.space);
                let y = b.block(self.field, i, &other.space, &other.space);
                g.set_block(i, x.direct_sum(&y));
            }
            g
        };
        let t = sum(&self.t_action, &other.t_action, &space);
        let differential = match (&self.differential, &other.differential) {
            (None, None) => None,
            _ => {
                let z = GradedMap::zero(1);
                Some(sum(
                    self.differential.as_ref().unwrap_or(&z),
                    other.differential.as_ref().unwrap_or(&z),
                    &space,
                ))
            }
        };
        Self::new(self.field, self.d, space, t, differential)
    }

    /// The same module in a new basis; `basis[i]` holds the new basis
    /// vectors of degree `i` as columns. Missing degrees keep their basis.
    pub fn change_basis(&self, basis: &BTreeMap<i32, Matrix>) -> Result<Self, KtError> {
        let field = self.field;
        let mut fwd = BTreeMap::new();
        let mut inv = BTreeMap::new();
        for i in self.space.degrees() {
            let n = self.space.dim(i);
            let p = basis
                .get(&i)
                .cloned()
                .unwrap_or_else(|| Matrix::identity(field, n));
            if p.rows() != n || p.cols() != n {
                return Err(KtError::Inconsistent(format!(
                    "basis change on degree {i} is not {n}x{n}"
                )));
            }
            let q = p
                .inverse()
                .ok_or_else(|| KtError::Inconsistent(format!("singular basis change on degree {i}")))?;
            fwd.insert(i, p);
            inv.insert(i, q);
        }
        let conj = |g: &GradedMap| {
            let mut out = GradedMap::zero(g.degree);
            for (i, b) in g.blocks() {
                if let (Some(q), Some(p)) = (inv.get(&(i + g.degree)), fwd.get(&i)) {
                    out.set_block(i, q.mul(b).mul(p));
                }
            }
            out
        };
        Self::new(
            field,
            self.d,
            self.space.clone(),
            conj(&self.t_action),
            self.differential.as_ref().map(conj),
        )
    }
}

/// `Σʲ C_m`: one basis vector `T^k` in each degree `−j − k(d−1)`,
/// `k = 0..=m`, with `T` moving along the chain.
pub fn make_cyclic(d: i32, j: i32, m: u32) -> Result<GradedKTModule, KtError> {
    check_d(d)?;
    let field = Field::Rational;
    let delta = d - 1;
    let mut space = GradedVectorSpace::new();
    let mut t = GradedMap::zero(-delta);
    for k in 0..=m as i32 {
        let label = match k {
            0 => "1".to_string(),
            1 => "T".to_string(),
            _ => format!("T^{k}"),
        };
        space.push(-j - k * delta, label);
    }
    for k in 0..m as i32 {
        t.set_block(-j - k * delta, Matrix::identity(field, 1));
    }
    GradedKTModule::new(field, d, space, t, None)
}
