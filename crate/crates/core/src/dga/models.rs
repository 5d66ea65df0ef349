//! Small cochain DGA models used as fixtures and in tests.

use crate::exactlin::Field;

use super::{DgaBuilder, DgaError, FinDga};

/// `H*(Sᵈ) = k·1 ⊕ k·s` with `|s| = d`, `s² = 0` and zero differential.
pub fn sphere(field: Field, d: i32) -> Result<FinDga, DgaError> {
    DgaBuilder::new(field)
        .basis(0, "1")
        .unit("1")
        .basis(d, "s")
        .build()
}

/// `k ⊕ kx ⊕ ky` with `|x| = 2`, `|y| = 4` and all positive products zero,
/// the cohomology of `S² ∨ S⁴`.
pub fn wedge(field: Field) -> Result<FinDga, DgaError> {
    DgaBuilder::new(field)
        .basis(0, "1")
        .unit("1")
        .basis(2, "x")
        .basis(4, "y")
        .build()
}

/// `k[x]/(x^{height+1})` with `|x| = degree`.
pub fn truncated_polynomial(field: Field, degree: i32, height: u32) -> Result<FinDga, DgaError> {
    let name = |p: u32| match p {
        0 => "1".to_string(),
        1 => "x".to_string(),
        p => format!("x{p}"),
    };
    let mut b = DgaBuilder::new(field).basis(0, "1").unit("1");
    for p in 1..=height {
        b = b.basis(degree * p as i32, &name(p));
    }
    for p in 1..=height {
        for q in 1..=height - p {
            b = b.product_i64(&name(p), &name(q), &name(p + q), 1);
        }
    }
    b.build()
}

/// The sphere model with an extra acyclic pair `a`, `∂a = b` in degrees
/// `e`, `e + 1`; quasi-isomorphic to [`sphere`] but with nonzero differential.
pub fn sphere_with_acyclic_pair(field: Field, d: i32, e: i32) -> Result<FinDga, DgaError> {
    DgaBuilder::new(field)
        .basis(0, "1")
        .unit("1")
        .basis(d, "s")
        .basis(e, "a")
        .basis(e + 1, "b")
        .differential_i64("a", "b", 1)
        .build()
}
