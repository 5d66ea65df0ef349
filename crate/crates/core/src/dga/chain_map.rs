use serde::{Deserialize, Serialize};

use crate::exactlin::Matrix;
use crate::graded::{GradedMap, GradedVectorSpace};

use super::{Cohomology, DgModule, DgaError};

/// A degree-0 morphism of DG modules, checked on construction.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: DgModule,
    target: DgModule,
    map: GradedMap,
}

impl ChainMap {
    /// Fails unless `map` has degree 0, commutes with the differentials and
    /// is linear over the algebra.
    pub fn new(source: DgModule, target: DgModule, map: GradedMap) -> Result<Self, DgaError> {
        source.check_compatible(&target)?;
        if map.degree != 0 {
            return Err(DgaError::NotChainMap(format!("map has degree {}", map.degree)));
        }
        let f = ChainMap { source, target, map };
        f.check()?;
        Ok(f)
    }

    pub fn identity(m: &DgModule) -> Self {
        ChainMap {
            source: m.clone(),
            target: m.clone(),
            map: GradedMap::identity(m.field(), m.space()),
        }
    }

    pub fn zero(source: &DgModule, target: &DgModule) -> Result<Self, DgaError> {
        ChainMap::new(source.clone(), target.clone(), GradedMap::zero(0))
    }

    fn check(&self) -> Result<(), DgaError> {
        let (s, t) = (&self.source, &self.target);
        for d in s.space().degrees() {
            let f0 = self.block(d);
            let f1 = self.block(d + 1);
            if t.differential_block(d).mul(&f0) != f1.mul(&s.differential_block(d)) {
                return Err(DgaError::NotChainMap(format!(
                    "does not commute with ∂ on degree {d}"
                )));
            }
            for (r, b) in s.algebra().basis().iter().enumerate() {
                let fr = self.block(d + b.degree);
                let lhs = fr.mul(&s.action_block(r, d));
                let rhs = t.action_block(r, d).mul(&f0);
                if lhs != rhs {
                    return Err(DgaError::NotChainMap(format!(
                        "not linear for {} on degree {d}",
                        s.algebra().label_of(r)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &DgModule {
        &self.source
    }

    pub fn target(&self) -> &DgModule {
        &self.target
    }

    pub fn map(&self) -> &GradedMap {
        &self.map
    }

    pub fn block(&self, degree: i32) -> Matrix {
        self.map.block(
            self.source.field(),
            degree,
            self.source.space(),
            self.target.space(),
        )
    }

    /// Matrices of the induced map `H M → H N` in the chosen representatives.
    pub fn induced(&self, hs: &Cohomology, ht: &Cohomology) -> GradedMap {
        hs.induced(&self.map, self.source.space(), self.target.space(), ht)
    }

    /// Whether the induced map on cohomology is bijective in every degree.
    pub fn is_quasi_isomorphism(&self) -> bool {
        let hs = self.source.cohomology();
        let ht = self.target.cohomology();
        if hs.dims() != ht.dims() {
            return false;
        }
        let h = self.induced(&hs, &ht);
        let space = hs.space();
        let tspace = ht.space();
        let field = self.source.field();
        let ok = hs
            .degrees()
            .all(|d| h.block(field, d, &space, &tspace).rank() == hs.dim(d));
        ok
    }

    /// Whether every block is injective.
    pub fn is_injective(&self) -> bool {
        self.source
            .space()
            .degrees()
            .all(|d| self.block(d).rank() == self.source.space().dim(d))
    }

    /// Whether every block is surjective.
    pub fn is_surjective(&self) -> bool {
        self.target
            .space()
            .degrees()
            .all(|d| self.block(d).rank() == self.target.space().dim(d))
    }

    pub fn compose(&self, after: &ChainMap) -> Result<ChainMap, DgaError> {
        let mut map = GradedMap::zero(0);
        for d in self.source.space().degrees() {
            map.set_block(d, after.block(d).mul(&self.block(d)));
        }
        ChainMap::new(self.source.clone(), after.target.clone(), map)
    }

    pub fn mapping_cone(&self) -> Triangle {
        mapping_cone(self)
    }
}

/// One row of the long exact cohomology sequence of a cone triangle
/// `M → N → C → ΣM`, at degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesRow {
    pub degree: i32,
    pub dim_source: usize,
    pub dim_target: usize,
    pub dim_cone: usize,
    pub rank_map: usize,
    pub rank_inclusion: usize,
    pub rank_projection: usize,
}

/// The cone triangle `M → N → C(f) → ΣM` of `f`, with maps `f`, `ι`, `π`.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub map: ChainMap,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

impl Triangle {
    pub fn source(&self) -> &DgModule {
        self.map.source()
    }

    pub fn target(&self) -> &DgModule {
        self.map.target()
    }

    pub fn cone(&self) -> &DgModule {
        self.inclusion.target()
    }

    /// Ranks of the three induced maps in each degree where some vertex has
    /// cohomology.
    pub fn long_exact_ranks(&self) -> Vec<LesRow> {
        let hm = self.source().cohomology();
        let hn = self.target().cohomology();
        let hc = self.cone().cohomology();
        let hsm = self.projection.target().cohomology();
        let field = self.source().field();
        let f = self.map.induced(&hm, &hn);
        let i = self.inclusion.induced(&hn, &hc);
        let p = self.projection.induced(&hc, &hsm);
        let (sm, sn, sc, ss) = (hm.space(), hn.space(), hc.space(), hsm.space());
        let mut degrees: Vec<i32> = hm
            .degrees()
            .chain(hn.degrees())
            .chain(hc.degrees())
            .chain(hm.degrees().map(|d| d - 1))
            .collect();
        degrees.sort_unstable();
        degrees.dedup();
        degrees
            .into_iter()
            .map(|d| LesRow {
                degree: d,
                dim_source: hm.dim(d),
                dim_target: hn.dim(d),
                dim_cone: hc.dim(d),
                rank_map: f.block(field, d, &sm, &sn).rank(),
                rank_inclusion: i.block(field, d, &sn, &sc).rank(),
                rank_projection: p.block(field, d, &sc, &ss).rank(),
            })
            .collect()
    }

    /// Exactness of `H^i M → H^i N → H^i C → H^{i+1} M → H^{i+1} N` at every
    /// degree, by rank counting.
    pub fn is_exact(&self) -> bool {
        let rows = self.long_exact_ranks();
        let rank_map = |d: i32| rows.iter().find(|r| r.degree == d).map_or(0, |r| r.rank_map);
        rows.iter().all(|r| {
            // at H^i N: ker ι = im f
            r.dim_target - r.rank_inclusion == r.rank_map
            // at H^i C: ker π = im ι
                && r.dim_cone - r.rank_projection == r.rank_inclusion
            // at H^{i+1} M: ker f = im π
                && r.rank_projection + rank_map(r.degree + 1)
                    == rows
                        .iter()
                        .find(|s| s.degree == r.degree + 1)
                        .map_or(0, |s| s.dim_source)
        })
    }
}

/// The mapping cone `C^i = M^{i+1} ⊕ N^i`, `∂(m, n) = (−∂m, f(m) + ∂n)`,
/// with the triangle maps to and from it.
pub fn mapping_cone(f: &ChainMap) -> Triangle {
    let (m, n) = (f.source(), f.target());
    let field = m.field();
    let shifted = m.suspend(1);
    let space: GradedVectorSpace = shifted
        .space()
        .map_labels(|l| format!("c({l})"))
        .direct_sum(n.space());
    let mut differential = GradedMap::zero(1);
    let degrees: Vec<i32> = space.degrees().collect();
    for &d in &degrees {
        let (a0, a1) = (shifted.space().dim(d), shifted.space().dim(d + 1));
        let (b0, b1) = (n.space().dim(d), n.space().dim(d + 1));
        let mut blk = Matrix::zeros(field, a1 + b1, a0 + b0);
        blk.paste(0, 0, &shifted.differential_block(d));
        blk.paste(a1, 0, &f.block(d + 1));
        blk.paste(a1, a0, &n.differential_block(d));
        differential.set_block(d, blk);
    }
    let action = (0..m.algebra().basis().len())
        .map(|r| {
            let deg = m.algebra().degree_of(r);
            let mut g = GradedMap::zero(deg);
            for &d in &degrees {
                let x = shifted.action_block(r, d);
                let y = n.action_block(r, d);
                g.set_block(d, x.direct_sum(&y));
            }
            g
        })
        .collect();
    let cone = DgModule::new(m.algebra().clone(), m.side(), space, action, differential);

    let mut incl = GradedMap::zero(0);
    let mut proj = GradedMap::zero(0);
    for &d in &degrees {
        let a = shifted.space().dim(d);
        let b = n.space().dim(d);
        let mut i = Matrix::zeros(field, a + b, b);
        i.paste(a, 0, &Matrix::identity(field, b));
        incl.set_block(d, i);
        let mut p = Matrix::zeros(field, a, a + b);
        p.paste(0, 0, &Matrix::identity(field, a));
        proj.set_block(d, p);
    }
    let inclusion = ChainMap {
        source: n.clone(),
        target: cone.clone(),
        map: incl,
    };
    let projection = ChainMap {
        source: cone,
        target: shifted,
        map: proj,
    };
    Triangle {
        map: f.clone(),
        inclusion,
        projection,
    }
}
