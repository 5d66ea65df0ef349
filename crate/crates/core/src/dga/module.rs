use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exactlin::{Field, Matrix, Scalar};
use crate::graded::{GradedDims, GradedMap, GradedVectorSpace};

use super::{cohomology::Cohomology, DgaError, FinDga};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A DG module over a [`FinDga`].
///
/// `action[r]` is the operator of degree `|r|` by which the algebra basis
/// element `r` acts (`m ↦ r·m` on the left, `m ↦ m·r` on the right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgModule {
    algebra: Arc<FinDga>,
    side: Side,
    space: GradedVectorSpace,
    action: Vec<GradedMap>,
    differential: GradedMap,
}

impl DgModule {
    /// Assembles a module from raw operators; see [`super::validate_module`].
    pub fn new(
        algebra: Arc<FinDga>,
        side: Side,
        space: GradedVectorSpace,
        action: Vec<GradedMap>,
        differential: GradedMap,
    ) -> Self {
        assert_eq!(action.len(), algebra.basis().len());
        DgModule {
            algebra,
            side,
            space,
            action,
            differential,
        }
    }

    pub fn zero(algebra: Arc<FinDga>, side: Side) -> Self {
        let action = algebra
            .basis()
            .iter()
            .map(|b| GradedMap::zero(b.degree))
            .collect();
        DgModule::new(
            algebra,
            side,
            GradedVectorSpace::new(),
            action,
            GradedMap::zero(1),
        )
    }

    /// The algebra as a module over itself.
    pub fn regular(algebra: Arc<FinDga>, side: Side) -> Self {
        let n = algebra.basis().len();
        let action = (0..n)
            .map(|r| match side {
                Side::Left => algebra.left_mult(r).clone(),
                Side::Right => algebra.right_mult(r).clone(),
            })
            .collect();
        let space = algebra.space().clone();
        let differential = algebra.differential().clone();
        DgModule::new(algebra, side, space, action, differential)
    }

    /// The simple module `k = R/R^{≥1}` in degree 0.
    pub fn simple(algebra: Arc<FinDga>, side: Side) -> Self {
        let field = algebra.field();
        let mut space = GradedVectorSpace::new();
        space.push(0, "k");
        let unit = algebra.unit_index();
        let action = algebra
            .basis()
            .iter()
            .enumerate()
            .map(|(r, b)| {
                let mut g = GradedMap::zero(b.degree);
                if r == unit {
                    g.set_block(0, Matrix::identity(field, 1));
                }
                g
            })
            .collect();
        DgModule::new(algebra, side, space, action, GradedMap::zero(1))
    }

    pub fn algebra(&self) -> &Arc<FinDga> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn dims(&self) -> GradedDims {
        self.space.dims()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn action(&self, r: usize) -> &GradedMap {
        &self.action[r]
    }

    pub fn actions(&self) -> &[GradedMap] {
        &self.action
    }

    pub fn differential(&self) -> &GradedMap {
        &self.differential
    }

    pub fn differential_block(&self, degree: i32) -> Matrix {
        self.differential
            .block(self.field(), degree, &self.space, &self.space)
    }

    /// Matrix of the action of basis element `r` out of `degree`.
    pub fn action_block(&self, r: usize, degree: i32) -> Matrix {
        self.action[r].block(self.field(), degree, &self.space, &self.space)
    }

    /// Operator of an algebra element given by coordinates in `degree`.
    pub fn element_action(&self, degree: i32, coords: &[Scalar]) -> GradedMap {
        self.algebra.combine(&self.action, degree, coords)
    }

    pub fn cohomology(&self) -> Cohomology {
        Cohomology::of_complex(self.field(), &self.space, &self.differential)
    }

    pub fn cohomology_dims(&self) -> GradedDims {
        self.cohomology().dims()
    }

    /// `Σⁿ M`: `(ΣⁿM)^i = M^{i+n}`, `∂` scaled by `(−1)ⁿ`, left actions
    /// twisted by `(−1)^{n|r|}`.
    pub fn suspend(&self, n: i32) -> DgModule {
        let field = self.field();
        let space = self.space.suspended(n);
        let differential = self.differential.scaled(&field.sign(n)).suspended(n);
        let action = self
            .action
            .iter()
            .map(|a| {
                let a = a.suspended(n);
                match self.side {
                    Side::Left => a.scaled(&field.sign(n * a.degree)),
                    Side::Right => a,
                }
            })
            .collect();
        DgModule::new(self.algebra.clone(), self.side, space, action, differential)
    }

    /// `DM = Hom_k(M, k)` with `(DM)^i = (M^{−i})*`, on the opposite side.
    ///
    /// The dual basis of `f ∈ (M^{−i})*` is the coordinate functional basis.
    pub fn dualize(&self) -> DgModule {
        let field = self.field();
        let mut space = GradedVectorSpace::new();
        for d in self.space.degrees().collect::<Vec<_>>().into_iter().rev() {
            for l in self.space.labels(d) {
                space.push(-d, format!("{l}*"));
            }
        }
        let mut differential = GradedMap::zero(1);
        for d in self.space.degrees() {
            // ∂_M out of M^{d-1} dualizes to the block out of (DM)^{-d}
            let b = self.differential_block(d - 1);
            let i = -d;
            differential.set_block(i, b.transpose().scale(&-field.sign(i)));
        }
        let action = self
            .action
            .iter()
            .map(|a| {
                let deg = a.degree;
                let mut g = GradedMap::zero(deg);
                for d in self.space.degrees() {
                    // block out of (DM)^i with i = -(d + deg) reads A^{d}: M^d → M^{d+deg}
                    let src = d + deg;
                    if self.space.dim(src) == 0 {
                        continue;
                    }
                    let m = a.block(field, d, &self.space, &self.space).transpose();
                    let m = match self.side {
                        Side::Left => m,
                        Side::Right => m.scale(&field.sign(deg)),
                    };
                    g.set_block(-src, m);
                }
                g
            })
            .collect();
        DgModule::new(
            self.algebra.clone(),
            self.side.opposite(),
            space,
            action,
            differential,
        )
    }

    /// Direct sum; the basis of `self` precedes that of `other` in each degree.
    pub fn direct_sum(&self, other: &DgModule) -> Result<DgModule, DgaError> {
        self.check_compatible(other)?;
        let field = self.field();
        let space = self.space.direct_sum(&other.space);
        let sum = |a: &GradedMap, b: &GradedMap| {
            let mut g = GradedMap::zero(a.degree);
            for d in space.degrees() {
                let x = a.block(field, d, &self.space, &self.space);
                let y = b.block(field, d, &other.space, &other.space);
                g.set_block(d, x.direct_sum(&y));
            }
            g
        };
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| sum(a, b))
            .collect();
        let differential = sum(&self.differential, &other.differential);
        Ok(DgModule::new(
            self.algebra.clone(),
            self.side,
            space,
            action,
            differential,
        ))
    }

    pub(crate) fn check_compatible(&self, other: &DgModule) -> Result<(), DgaError> {
        if self.side != other.side {
            return Err(DgaError::SideMismatch);
        }
        if self.algebra != other.algebra {
            return Err(DgaError::AlgebraMismatch);
        }
        Ok(())
    }

    /// Conjugates every operator by the degreewise basis change whose
    /// columns are the new basis vectors in old coordinates.
    pub fn change_basis(&self, basis: &BTreeMap<i32, Matrix>) -> Result<DgModule, DgaError> {
        let field = self.field();
        let mut inverses = BTreeMap::new();
        let mut forward = BTreeMap::new();
        for d in self.space.degrees() {
            let n = self.space.dim(d);
            let p = basis
                .get(&d)
                .cloned()
                .unwrap_or_else(|| Matrix::identity(field, n));
            if p.rows() != n || p.cols() != n {
                return Err(DgaError::DegreeMismatch(format!(
                    "basis change in degree {d} is not {n}x{n}"
                )));
            }
            let inv = p.inverse().ok_or(DgaError::Singular(d))?;
            forward.insert(d, p);
            inverses.insert(d, inv);
        }
        let conj = |g: &GradedMap| {
            let mut out = GradedMap::zero(g.degree);
            for (d, m) in g.blocks() {
                let t = d + g.degree;
                out.set_block(d, inverses[&t].mul(m).mul(&forward[&d]));
            }
            out
        };
        let action = self.action.iter().map(conj).collect();
        let differential = conj(&self.differential);
        Ok(DgModule::new(
            self.algebra.clone(),
            self.side,
            self.space.clone(),
            action,
            differential,
        ))
    }

    /// Same module with every basis label passed through `f`.
    pub fn relabeled(&self, f: impl Fn(&str) -> String) -> DgModule {
        let mut m = self.clone();
        m.space = self.space.map_labels(f);
        m
    }
}
