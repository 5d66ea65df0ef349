//! Degree-indexed vector spaces and homogeneous linear maps between them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactlin::{Field, Matrix, Scalar};

/// Graded dimensions, degree → dimension, zero entries omitted.
pub type GradedDims = BTreeMap<i32, usize>;

/// Finite-dimensional graded vector space with a named basis in each degree.
///
/// Only degrees with at least one basis vector are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedVectorSpace {
    pieces: BTreeMap<i32, Vec<String>>,
}

/// Position of a basis vector: its degree and index within that degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisRef {
    pub degree: i32,
    pub index: usize,
}

impl GradedVectorSpace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Space with the given dimensions and generated labels `x{degree}_{i}`.
    pub fn from_dims(dims: &GradedDims) -> Self {
        let mut s = Self::new();
        for (&deg, &n) in dims {
            for i in 0..n {
                s.push(deg, format!("x{deg}_{i}"));
            }
        }
        s
    }

    pub fn push(&mut self, degree: i32, label: impl Into<String>) -> BasisRef {
        let v = self.pieces.entry(degree).or_default();
        v.push(label.into());
        BasisRef {
            degree,
            index: v.len() - 1,
        }
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.pieces.get(&degree).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.values().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn labels(&self, degree: i32) -> &[String] {
        self.pieces.get(&degree).map_or(&[], Vec::as_slice)
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

    pub fn dims(&self) -> GradedDims {
        self.pieces.iter().map(|(&d, v)| (d, v.len())).collect()
    }

    pub fn find(&self, label: &str) -> Option<BasisRef> {
        self.pieces.iter().find_map(|(&degree, v)| {
            v.iter()
                .position(|l| l == label)
                .map(|index| BasisRef { degree, index })
        })
    }

    pub fn label(&self, b: BasisRef) -> &str {
        &self.pieces[&b.degree][b.index]
    }

    /// All basis vectors ordered by degree, then by position.
    pub fn basis(&self) -> Vec<BasisRef> {
        self.pieces
            .iter()
            .flat_map(|(&degree, v)| (0..v.len()).map(move |index| BasisRef { degree, index }))
            .collect()
    }

    /// Copy with every degree moved by `-shift`: `(Σ^shift V)^i = V^{i+shift}`.
    pub fn suspended(&self, shift: i32) -> Self {
        GradedVectorSpace {
            pieces: self.pieces.iter().map(|(&d, v)| (d - shift, v.clone())).collect(),
        }
    }

    /// Labels of `other` that already occur get primes appended.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut s = self.clone();
        let mut taken: std::collections::HashSet<String> = self.pieces.values().flatten().cloned().collect();
        for (&d, v) in &other.pieces {
            for l in v {
                let mut label = l.clone();
                while taken.contains(&label) {
                    label.push('\'');
                }
                taken.insert(label.clone());
                s.pieces.entry(d).or_default().push(label);
            }
        }
        s
    }

    /// Relabels every basis vector through `f`.
    pub fn map_labels(&self, f: impl Fn(&str) -> String) -> Self {
        GradedVectorSpace {
            pieces: self
                .pieces
                .iter()
                .map(|(&d, v)| (d, v.iter().map(|l| f(l)).collect()))
                .collect(),
        }
    }
}

/// Homogeneous linear map of a fixed degree between graded spaces.
///
/// `blocks[i]` is the matrix from the source piece in degree `i` to the
/// target piece in degree `i + degree`. Missing blocks are zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMap {
    pub degree: i32,
    blocks: BTreeMap<i32, Matrix>,
}

impl GradedMap {
    pub fn zero(degree: i32) -> Self {
        GradedMap {
            degree,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(field: Field, space: &GradedVectorSpace) -> Self {
        let mut m = Self::zero(0);
        for d in space.degrees() {
            m.set_block(d, Matrix::identity(field, space.dim(d)));
        }
        m
    }

    /// Stores a block, dropping it if it is identically zero.
    pub fn set_block(&mut self, source_degree: i32, block: Matrix) {
        if block.is_zero() {
            self.blocks.remove(&source_degree);
        } else {
            self.blocks.insert(source_degree, block);
        }
    }

    pub fn stored_block(&self, source_degree: i32) -> Option<&Matrix> {
        self.blocks.get(&source_degree)
    }

    /// The block out of `source_degree`, shaped against the given spaces.
    pub fn block(
        &self,
        field: Field,
        source_degree: i32,
        source: &GradedVectorSpace,
        target: &GradedVectorSpace,
    ) -> Matrix {
        let rows = target.dim(source_degree + self.degree);
        let cols = source.dim(source_degree);
        match self.blocks.get(&source_degree) {
            Some(m) if m.rows() == rows && m.cols() == cols => m.clone(),
            Some(m) => panic!(
                "block at degree {source_degree} is {}x{}, expected {rows}x{cols}",
                m.rows(),
                m.cols()
            ),
            None => Matrix::zeros(field, rows, cols),
        }
    }

    /// Stored blocks as `(source_degree, matrix)` pairs.
    pub fn blocks(&self) -> impl Iterator<Item = (i32, &Matrix)> {
        self.blocks.iter().map(|(&d, m)| (d, m))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.degree);
        for (&d, m) in &self.blocks {
            out.set_block(d, m.scale(c));
        }
        out
    }

    /// Applies a sign depending on the source degree to every block.
    pub fn signed_by(&self, field: Field, sign: impl Fn(i32) -> i32) -> Self {
        let mut out = Self::zero(self.degree);
        for (&d, m) in &self.blocks {
            out.set_block(d, m.scale(&field.sign(sign(d))));
        }
        out
    }

    /// Reindexes source degrees after both spaces were suspended by `shift`.
    pub fn suspended(&self, shift: i32) -> Self {
        GradedMap {
            degree: self.degree,
            blocks: self.blocks.iter().map(|(&d, m)| (d - shift, m.clone())).collect(),
        }
    }

    /// Accumulates `c · other` into `self`; both must share a degree and shapes.
    pub fn add_scaled(&mut self, other: &GradedMap, c: &Scalar) {
        assert_eq!(self.degree, other.degree);
        for (&d, m) in &other.blocks {
            let add = m.scale(c);
            let new = match self.blocks.get(&d) {
                Some(old) => old.add(&add),
                None => add,
            };
            self.set_block(d, new);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suspension_moves_degrees_down() {
        let mut v = GradedVectorSpace::new();
        v.push(0, "1");
        v.push(3, "s");
        let s = v.suspended(2);
        assert_eq!(s.dims(), GradedDims::from([(-2, 1), (1, 1)]));
        assert_eq!(s.suspended(-2), v);
    }

    #[test]
    fn basis_order_is_degree_then_position() {
        let mut v = GradedVectorSpace::new();
        v.push(2, "b");
        v.push(0, "a");
        v.push(2, "c");
        let labels: Vec<&str> = v.basis().into_iter().map(|b| v.label(b)).collect();
        assert_eq!(labels, ["a", "b", "c"]);
        assert_eq!(v.find("c"), Some(BasisRef { degree: 2, index: 1 }));
    }

    #[test]
    fn zero_blocks_are_not_stored() {
        let mut m = GradedMap::zero(1);
        m.set_block(0, Matrix::zeros(Field::Rational, 2, 2));
        assert!(m.is_zero());
    }
}
