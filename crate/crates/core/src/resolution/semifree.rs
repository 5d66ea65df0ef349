use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dga::{DgModule, FinDga, Side};
use crate::exactlin::{Matrix, Scalar};
use crate::graded::{GradedMap, GradedVectorSpace};

/// How a generator entered the resolution: `Gamma` generators hit new
/// cohomology classes of the target, `Delta` generators kill cycles of the
/// previous stage that map to zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Gamma,
    Delta,
}

/// A free generator `e` of a semi-free left module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub degree: i32,
    pub kind: GeneratorKind,
    /// `∂e = Σ c_k e_k` as pairs `(k, c_k)`, with `c_k` in coordinates of
    /// `R^{|e| + 1 − |e_k|}`.
    pub boundary: Vec<(usize, Vec<Scalar>)>,
    /// Image of `e` in the target module, in coordinates of its degree.
    pub image: Vec<Scalar>,
}

/// Layout entry of one degree of `F`: generator index, offset, length of
/// the block `R^{i−|e|}·e`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Slot {
    pub generator: usize,
    pub offset: usize,
    pub len: usize,
}

/// The semi-free module `⊕ R·e` on a list of generators, with blocks
/// computed on demand.
#[derive(Clone, Debug)]
pub struct SemiFree {
    algebra: Arc<FinDga>,
    generators: Vec<Generator>,
}

impl SemiFree {
    pub fn new(algebra: Arc<FinDga>, generators: Vec<Generator>) -> Self {
        SemiFree { algebra, generators }
    }

    pub fn algebra(&self) -> &Arc<FinDga> {
        &self.algebra
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub(crate) fn push(&mut self, g: Generator) {
        self.generators.push(g);
    }

    pub(crate) fn layout(&self, degree: i32) -> Vec<Slot> {
        let mut out = Vec::new();
        let mut offset = 0;
        for (k, g) in self.generators.iter().enumerate() {
            let len = self.algebra.dim(degree - g.degree);
            if len > 0 {
                out.push(Slot {
                    generator: k,
                    offset,
                    len,
                });
                offset += len;
            }
        }
        out
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.layout(degree).iter().map(|s| s.len).sum()
    }

    fn slot_of(layout: &[Slot], generator: usize) -> Option<Slot> {
        layout.iter().copied().find(|s| s.generator == generator)
    }

    /// `∂(r·e) = ∂r·e + (−1)^{|r|} Σ (r·c_k)·e_k` out of degree `i`.
    pub fn differential_block(&self, i: i32) -> Matrix {
        let r = &self.algebra;
        let field = r.field();
        let src = self.layout(i);
        let tgt = self.layout(i + 1);
        let mut m = Matrix::zeros(field, self.dim(i + 1), self.dim(i));
        for s in &src {
            let g = &self.generators[s.generator];
            let a = i - g.degree;
            if let Some(t) = Self::slot_of(&tgt, s.generator) {
                m.paste(t.offset, s.offset, &r.differential_block(a));
            }
            let sign = field.sign(a);
            for (k, c) in &g.boundary {
                let ck_deg = g.degree + 1 - self.generators[*k].degree;
                let Some(t) = Self::slot_of(&tgt, *k) else {
                    continue;
                };
                let rho = r.combine_right(ck_deg, c);
                let b = rho.block(field, a, r.space(), r.space()).scale(&sign);
                m.paste(t.offset, s.offset, &b);
            }
        }
        m
    }

    /// Left action of algebra basis element `t` out of degree `i`.
    pub fn action_block(&self, t: usize, i: i32) -> Matrix {
        let r = &self.algebra;
        let field = r.field();
        let deg = r.degree_of(t);
        let src = self.layout(i);
        let tgt = self.layout(i + deg);
        let mut m = Matrix::zeros(field, self.dim(i + deg), self.dim(i));
        for s in &src {
            let a = i - self.generators[s.generator].degree;
            if let Some(tt) = Self::slot_of(&tgt, s.generator) {
                m.paste(
                    tt.offset,
                    s.offset,
                    &r.left_mult(t).block(field, a, r.space(), r.space()),
                );
            }
        }
        m
    }

    /// `φ(r·e) = r·φ(e)` into `target`, out of degree `i`.
    pub fn comparison_block(&self, target: &DgModule, i: i32) -> Matrix {
        let r = &self.algebra;
        let field = r.field();
        let mut m = Matrix::zeros(field, target.space().dim(i), self.dim(i));
        for s in self.layout(i) {
            let g = &self.generators[s.generator];
            let a = i - g.degree;
            for (col, t) in r.indices_in_degree(a).enumerate() {
                let v = target.action_block(t, g.degree).mul_vec(&g.image);
                for (row, x) in v.into_iter().enumerate() {
                    m.set(row, s.offset + col, x);
                }
            }
        }
        m
    }

    /// Degrees where `F` is nonzero.
    pub fn degree_range(&self) -> Option<(i32, i32)> {
        let lo = self.generators.iter().map(|g| g.degree).min()?;
        let hi = self.generators.iter().map(|g| g.degree).max()? + self.algebra.top_degree();
        Some((lo, hi))
    }

    /// Materializes `F` as a [`DgModule`]. Basis labels are `r·e{k}`.
    pub fn module(&self) -> DgModule {
        let r = &self.algebra;
        let mut space = GradedVectorSpace::new();
        let mut action: Vec<GradedMap> = r.basis().iter().map(|b| GradedMap::zero(b.degree)).collect();
        let mut differential = GradedMap::zero(1);
        if let Some((lo, hi)) = self.degree_range() {
            for i in lo..=hi {
                for s in self.layout(i) {
                    let d = i - self.generators[s.generator].degree;
                    for t in r.indices_in_degree(d) {
                        let label = if t == r.unit_index() {
                            format!("e{}", s.generator)
                        } else {
                            format!("{}·e{}", r.label_of(t), s.generator)
                        };
                        space.push(i, label);
                    }
                }
            }
            for i in lo..=hi {
                differential.set_block(i, self.differential_block(i));
                for (t, a) in action.iter_mut().enumerate() {
                    a.set_block(i, self.action_block(t, i));
                }
            }
        }
        DgModule::new(r.clone(), Side::Left, space, action, differential)
    }

    /// The comparison map as a graded map from [`Self::module`] to `target`.
    pub fn comparison(&self, target: &DgModule) -> GradedMap {
        let mut g = GradedMap::zero(0);
        if let Some((lo, hi)) = self.degree_range() {
            for i in lo..=hi {
                g.set_block(i, self.comparison_block(target, i));
            }
        }
        g
    }

    /// Sub-semi-free module on the first `count` generators.
    pub fn prefix(&self, count: usize) -> SemiFree {
        SemiFree::new(self.algebra.clone(), self.generators[..count].to_vec())
    }
}
