use std::collections::BTreeMap;
use std::sync::Arc;

use crate::exactlin::{Field, Matrix, Scalar};
use crate::graded::{BasisRef, GradedDims, GradedMap, GradedVectorSpace};

use super::{DgModule, FinDga};

/// Cohomology of one degree: representative cycles plus a reader for
/// class coordinates.
#[derive(Clone, Debug)]
struct Piece {
    representatives: Matrix,
    boundaries: usize,
    reader: Matrix,
}

/// Cohomology of a finite cochain complex with chosen representatives.
///
/// Representatives extend a basis of the boundaries by kernel vectors in
/// rref pivot order, so they are deterministic in the input basis.
#[derive(Clone, Debug)]
pub struct Cohomology {
    field: Field,
    pieces: BTreeMap<i32, Piece>,
}

impl Cohomology {
    pub fn of_complex(field: Field, space: &GradedVectorSpace, differential: &GradedMap) -> Self {
        let mut pieces = BTreeMap::new();
        for d in space.degrees() {
            let out = differential.block(field, d, space, space);
            let inc = differential.block(field, d - 1, space, space);
            let cycles = out.kernel_basis();
            if cycles.cols() == 0 {
                continue;
            }
            let boundaries = inc.image_basis();
            let keep = boundaries.extend_basis(&cycles);
            if keep.is_empty() {
                continue;
            }
            let representatives = cycles.select_columns(&keep);
            let reader = boundaries
                .hstack(&representatives)
                .left_inverse()
                .expect("independent columns");
            pieces.insert(
                d,
                Piece {
                    representatives,
                    boundaries: boundaries.cols(),
                    reader,
                },
            );
        }
        Cohomology { field, pieces }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> GradedDims {
        self.pieces
            .iter()
            .map(|(&d, p)| (d, p.representatives.cols()))
            .collect()
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.pieces.get(&degree).map_or(0, |p| p.representatives.cols())
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.values().map(|p| p.representatives.cols()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Nonzero degrees in increasing order.
    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.pieces.keys().copied()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.pieces.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.pieces.keys().next_back().copied()
    }

    /// Representative cycles of `H^degree` as columns.
    pub fn representatives(&self, degree: i32) -> Option<&Matrix> {
        self.pieces.get(&degree).map(|p| &p.representatives)
    }

    /// Coordinates of the class of a cycle in `degree`.
    pub fn class_of(&self, degree: i32, cycle: &[Scalar]) -> Vec<Scalar> {
        match self.pieces.get(&degree) {
            None => Vec::new(),
            Some(p) => p.reader.mul_vec(cycle)[p.boundaries..].to_vec(),
        }
    }

    /// Matrix of the map induced on cohomology by a chain map `map` of any
    /// degree from the complex of `self` to that of `target`.
    pub fn induced(
        &self,
        map: &GradedMap,
        source: &GradedVectorSpace,
        target_space: &GradedVectorSpace,
        target: &Cohomology,
    ) -> GradedMap {
        let mut out = GradedMap::zero(map.degree);
        for (&d, p) in &self.pieces {
            let t = d + map.degree;
            let b = map.block(self.field, d, source, target_space);
            let images = b.mul(&p.representatives);
            let cols: Vec<Vec<Scalar>> = images.columns().iter().map(|c| target.class_of(t, c)).collect();
            out.set_block(d, Matrix::from_columns(self.field, target.dim(t), &cols));
        }
        out
    }

    /// Cohomology as a graded space with labels `[h{degree}_{i}]`.
    pub fn space(&self) -> GradedVectorSpace {
        GradedVectorSpace::from_dims(&self.dims()).map_labels(|l| format!("[{}]", l.replacen('x', "h", 1)))
    }
}

/// Cohomology of a module with the induced action of the cohomology of
/// its algebra.
#[derive(Clone, Debug)]
pub struct ModuleCohomology {
    pub cohomology: Cohomology,
    pub ring: Cohomology,
    /// Basis of `H R` by degree then position; indexes `action`.
    pub ring_basis: Vec<BasisRef>,
    /// `action[c]` is the operator of the ring class `c` on `H M`.
    pub action: Vec<GradedMap>,
}

impl ModuleCohomology {
    pub fn dims(&self) -> GradedDims {
        self.cohomology.dims()
    }

    /// Minimal number of generators of `H M` as a graded `H R`-module:
    /// the dimension of `H M / H^{≥1}R · H M`.
    pub fn generator_count(&self) -> usize {
        let field = self.cohomology.field();
        let space = self.cohomology.space();
        let mut count = 0;
        for d in self.cohomology.degrees() {
            let mut image = Matrix::zeros(field, self.cohomology.dim(d), 0);
            for (c, b) in self.ring_basis.iter().enumerate() {
                if b.degree == 0 {
                    continue;
                }
                let block = self.action[c].block(field, d - b.degree, &space, &space);
                image = image.hstack(&block);
            }
            count += self.cohomology.dim(d) - image.rank();
        }
        count
    }
}

/// Cohomology of `R` with chosen representatives.
pub fn algebra_cohomology(r: &FinDga) -> Cohomology {
    Cohomology::of_complex(r.field(), r.space(), r.differential())
}

/// Product of two cohomology classes of `R`, given by coordinates.
pub fn ring_product(
    r: &FinDga,
    h: &Cohomology,
    (da, a): (i32, &[Scalar]),
    (db, b): (i32, &[Scalar]),
) -> Vec<Scalar> {
    let field = r.field();
    let (Some(ra), Some(rb)) = (h.representatives(da), h.representatives(db)) else {
        return vec![field.zero(); h.dim(da + db)];
    };
    let xa = ra.mul_vec(a);
    let xb = rb.mul_vec(b);
    let lambda = r.left_mult_element(da, &xa);
    let prod = lambda.block(field, db, r.space(), r.space()).mul_vec(&xb);
    h.class_of(da + db, &prod)
}

/// Cohomology of `M` together with the induced `H R`-action.
pub fn cohomology(m: &DgModule) -> ModuleCohomology {
    let algebra: &Arc<FinDga> = m.algebra();
    let ring = algebra_cohomology(algebra);
    let h = m.cohomology();
    let mut ring_basis = Vec::new();
    let mut action = Vec::new();
    for d in ring.degrees() {
        let reps = ring.representatives(d).expect("nonzero degree");
        for index in 0..reps.cols() {
            ring_basis.push(BasisRef { degree: d, index });
            let op = m.element_action(d, &reps.column(index));
            action.push(h.induced(&op, m.space(), m.space(), &h));
        }
    }
    ModuleCohomology {
        cohomology: h,
        ring,
        ring_basis,
        action,
    }
}
