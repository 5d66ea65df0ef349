use std::collections::HashMap;

use crate::exactlin::{Field, Matrix, Scalar};
use crate::graded::{BasisRef, GradedMap, GradedVectorSpace};

use super::DgaError;

/// A finite-dimensional DGA given by structure constants.
///
/// Multiplication is stored as one left-multiplication operator per basis
/// element (`left_mult[a]` sends `x` to `a·x`); right multiplication is
/// derived from it. Basis elements are addressed by their position in
/// [`GradedVectorSpace::basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinDga {
    field: Field,
    space: GradedVectorSpace,
    basis: Vec<BasisRef>,
    unit: BasisRef,
    left_mult: Vec<GradedMap>,
    right_mult: Vec<GradedMap>,
    differential: GradedMap,
}

impl FinDga {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn unit(&self) -> BasisRef {
        self.unit
    }

    pub fn unit_index(&self) -> usize {
        self.index_of(self.unit)
    }

    /// Basis in canonical order; positions index [`Self::left_mult`].
    pub fn basis(&self) -> &[BasisRef] {
        &self.basis
    }

    pub fn index_of(&self, b: BasisRef) -> usize {
        self.basis
            .iter()
            .position(|&x| x == b)
            .expect("basis element of this algebra")
    }

    pub fn degree_of(&self, index: usize) -> i32 {
        self.basis[index].degree
    }

    pub fn label_of(&self, index: usize) -> &str {
        self.space.label(self.basis[index])
    }

    /// Index of the first basis element in `degree`, if any.
    pub fn offset(&self, degree: i32) -> Option<usize> {
        self.basis.iter().position(|b| b.degree == degree)
    }

    pub fn left_mult(&self, index: usize) -> &GradedMap {
        &self.left_mult[index]
    }

    pub fn right_mult(&self, index: usize) -> &GradedMap {
        &self.right_mult[index]
    }

    pub fn differential(&self) -> &GradedMap {
        &self.differential
    }

    pub fn differential_block(&self, degree: i32) -> Matrix {
        self.differential
            .block(self.field, degree, &self.space, &self.space)
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.space.dim(degree)
    }

    pub fn top_degree(&self) -> i32 {
        self.space.max_degree().unwrap_or(0)
    }

    /// Indices of the basis elements in `degree`.
    pub fn indices_in_degree(&self, degree: i32) -> std::ops::Range<usize> {
        match self.offset(degree) {
            Some(o) => o..o + self.space.dim(degree),
            None => 0..0,
        }
    }

    /// The product `a·b` of two basis elements, as coordinates in degree `|a|+|b|`.
    pub fn product(&self, a: usize, b: usize) -> Vec<Scalar> {
        let db = self.degree_of(b);
        let m = self.left_mult[a].block(self.field, db, &self.space, &self.space);
        m.column(self.basis[b].index)
    }

    /// Linear combination `Σ c_t · op_t` of per-basis operators for an
    /// element given by coordinates in `degree`.
    pub fn combine(&self, ops: &[GradedMap], degree: i32, coords: &[Scalar]) -> GradedMap {
        let mut out = GradedMap::zero(degree);
        for (t, c) in self.indices_in_degree(degree).zip(coords) {
            if !c.is_zero() {
                out.add_scaled(&ops[t], c);
            }
        }
        out
    }

    /// Left multiplication by an element given by coordinates in `degree`.
    pub fn left_mult_element(&self, degree: i32, coords: &[Scalar]) -> GradedMap {
        self.combine(&self.left_mult, degree, coords)
    }

    /// Right multiplication by an element given by coordinates in `degree`.
    pub fn combine_right(&self, degree: i32, coords: &[Scalar]) -> GradedMap {
        self.combine(&self.right_mult, degree, coords)
    }

    /// The differential of a basis element as coordinates in degree `|a|+1`.
    pub fn differential_of(&self, a: usize) -> Vec<Scalar> {
        let b = self.basis[a];
        self.differential_block(b.degree).column(b.index)
    }
}

/// Incremental construction of a [`FinDga`] from labelled structure constants.
#[derive(Clone, Debug)]
pub struct DgaBuilder {
    field: Field,
    space: GradedVectorSpace,
    unit: Option<String>,
    implicit_unit: bool,
    products: Vec<(String, String, String, Scalar)>,
    differential: Vec<(String, String, Scalar)>,
}

impl DgaBuilder {
    pub fn new(field: Field) -> Self {
        DgaBuilder {
            field,
            space: GradedVectorSpace::new(),
            unit: None,
            implicit_unit: true,
            products: Vec::new(),
            differential: Vec::new(),
        }
    }

    pub fn basis(mut self, degree: i32, label: &str) -> Self {
        self.space.push(degree, label);
        self
    }

    pub fn unit(mut self, label: &str) -> Self {
        self.unit = Some(label.to_string());
        self
    }

    /// Do not fill in `1·x = x = x·1`; products with the unit must then be
    /// given explicitly.
    pub fn explicit_unit_products(mut self) -> Self {
        self.implicit_unit = false;
        self
    }

    /// Adds `coeff · target` to the product `left · right`.
    pub fn product(mut self, left: &str, right: &str, target: &str, coeff: Scalar) -> Self {
        self.products
            .push((left.into(), right.into(), target.into(), coeff));
        self
    }

    pub fn product_i64(self, left: &str, right: &str, target: &str, coeff: i64) -> Self {
        let c = self.field.from_i64(coeff);
        self.product(left, right, target, c)
    }

    /// Adds `coeff · target` to `∂(source)`.
    pub fn differential(mut self, source: &str, target: &str, coeff: Scalar) -> Self {
        self.differential.push((source.into(), target.into(), coeff));
        self
    }

    pub fn differential_i64(self, source: &str, target: &str, coeff: i64) -> Self {
        let c = self.field.from_i64(coeff);
        self.differential(source, target, c)
    }

    pub fn build(self) -> Result<FinDga, DgaError> {
        let field = self.field;
        let space = self.space;
        let basis = space.basis();
        let index: HashMap<&str, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, &b)| (space.label(b), i))
            .collect();
        if index.len() != basis.len() {
            return Err(DgaError::DuplicateBasis);
        }
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| DgaError::UnknownBasis(l.to_string()))
        };
        let unit_label = self.unit.ok_or(DgaError::MissingUnit)?;
        let unit_idx = lookup(&unit_label)?;
        let unit = basis[unit_idx];
        if unit.degree != 0 {
            return Err(DgaError::DegreeMismatch(format!(
                "unit {unit_label} has degree {}",
                unit.degree
            )));
        }

        let mut blocks: Vec<HashMap<i32, Matrix>> = vec![HashMap::new(); basis.len()];
        let mut add_product = |a: usize, b: usize, t: usize, c: &Scalar| {
            let (ba, bb, bt) = (basis[a], basis[b], basis[t]);
            let m = blocks[a].entry(bb.degree).or_insert_with(|| {
                Matrix::zeros(field, space.dim(bb.degree + ba.degree), space.dim(bb.degree))
            });
            m.add_to(bt.index, bb.index, c);
        };
        if self.implicit_unit {
            for x in 0..basis.len() {
                add_product(unit_idx, x, x, &field.one());
                if x != unit_idx {
                    add_product(x, unit_idx, x, &field.one());
                }
            }
        }
        for (l, r, t, c) in &self.products {
            let (a, b, tt) = (lookup(l)?, lookup(r)?, lookup(t)?);
            if basis[a].degree + basis[b].degree != basis[tt].degree {
                return Err(DgaError::DegreeMismatch(format!(
                    "product {l}·{r} cannot land on {t}"
                )));
            }
            if self.implicit_unit && (a == unit_idx || b == unit_idx) {
                return Err(DgaError::DegreeMismatch(format!(
                    "product {l}·{r} involves the unit, which is implicit"
                )));
            }
            add_product(a, b, tt, c);
        }
        let left_mult: Vec<GradedMap> = blocks
            .into_iter()
            .enumerate()
            .map(|(a, bl)| {
                let mut g = GradedMap::zero(basis[a].degree);
                for (d, m) in bl {
                    g.set_block(d, m);
                }
                g
            })
            .collect();

        let mut diff: HashMap<i32, Matrix> = HashMap::new();
        for (s, t, c) in &self.differential {
            let (a, b) = (lookup(s)?, lookup(t)?);
            let (ba, bb) = (basis[a], basis[b]);
            if bb.degree != ba.degree + 1 {
                return Err(DgaError::DegreeMismatch(format!(
                    "differential {s} -> {t} is not of degree +1"
                )));
            }
            diff.entry(ba.degree)
                .or_insert_with(|| Matrix::zeros(field, space.dim(bb.degree), space.dim(ba.degree)))
                .add_to(bb.index, ba.index, c);
        }
        let mut differential = GradedMap::zero(1);
        for (d, m) in diff {
            differential.set_block(d, m);
        }

        Ok(FinDga::from_parts(field, space, unit, left_mult, differential))
    }
}

impl FinDga {
    /// Assembles an algebra from left-multiplication operators. No axioms
    /// are checked; see [`super::validate_dga`].
    pub fn from_parts(
        field: Field,
        space: GradedVectorSpace,
        unit: BasisRef,
        left_mult: Vec<GradedMap>,
        differential: GradedMap,
    ) -> FinDga {
        let basis = space.basis();
        assert_eq!(basis.len(), left_mult.len());
        // right multiplication by b: x ↦ x·b, read off column b of λ_x
        let mut right_mult = Vec::with_capacity(basis.len());
        for &bb in &basis {
            let mut g = GradedMap::zero(bb.degree);
            for d in space.degrees() {
                let target = d + bb.degree;
                let mut m = Matrix::zeros(field, space.dim(target), space.dim(d));
                for (x, &bx) in basis.iter().enumerate().filter(|(_, b)| b.degree == d) {
                    let lx = left_mult[x].block(field, bb.degree, &space, &space);
                    for row in 0..m.rows() {
                        m.set(row, bx.index, lx.get(row, bb.index).clone());
                    }
                }
                g.set_block(d, m);
            }
            right_mult.push(g);
        }
        FinDga {
            field,
            space,
            basis,
            unit,
            left_mult,
            right_mult,
            differential,
        }
    }

    /// The same algebra in a new basis; `basis[d]` holds the new basis
    /// vectors of degree `d` as columns. The unit is kept, so any change
    /// in degree 0 must fix it.
    pub fn change_basis(&self, basis: &std::collections::BTreeMap<i32, Matrix>) -> Result<FinDga, DgaError> {
        let field = self.field;
        let mut fwd = std::collections::BTreeMap::new();
        let mut inv = std::collections::BTreeMap::new();
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
            inv.insert(d, p.inverse().ok_or(DgaError::Singular(d))?);
            fwd.insert(d, p);
        }
        if fwd[&self.unit.degree].column(self.unit.index)
            != Matrix::identity(field, self.dim(0)).column(self.unit.index)
        {
            return Err(DgaError::DegreeMismatch("basis change moves the unit".into()));
        }
        let conj = |g: &GradedMap| {
            let mut out = GradedMap::zero(g.degree);
            for (d, m) in g.blocks() {
                out.set_block(d, inv[&(d + g.degree)].mul(m).mul(&fwd[&d]));
            }
            out
        };
        let left_mult = self
            .basis
            .iter()
            .map(|b| {
                let coords = fwd[&b.degree].column(b.index);
                conj(&self.left_mult_element(b.degree, &coords))
            })
            .collect();
        Ok(FinDga::from_parts(
            field,
            self.space.clone(),
            self.unit,
            left_mult,
            conj(&self.differential),
        ))
    }

    /// Same space and unit with replacement operators.
    pub fn with_operators(&self, left_mult: Vec<GradedMap>, differential: GradedMap) -> FinDga {
        FinDga::from_parts(self.field, self.space.clone(), self.unit, left_mult, differential)
    }
}
