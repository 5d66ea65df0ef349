use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactlin::Matrix;

use super::{DgModule, FinDga, Side};

/// The axioms checked by [`validate_dga`] and [`validate_module`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    CochainPositivity,
    DegreeZero,
    DegreeOne,
    DifferentialSquare,
    DifferentialUnit,
    Leibniz,
    Associativity,
    UnitLaw,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::CochainPositivity => "R^i = 0 for i < 0 fails",
            Axiom::DegreeZero => "R^0 = k fails",
            Axiom::DegreeOne => "R^1 = 0 fails",
            Axiom::DifferentialSquare => "∂² = 0 fails",
            Axiom::DifferentialUnit => "∂(1) = 0 fails",
            Axiom::Leibniz => "Leibniz rule fails",
            Axiom::Associativity => "associativity fails",
            Axiom::UnitLaw => "unit law fails",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.axiom, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    fn push(&mut self, axiom: Axiom, detail: String) {
        self.violations.push(Violation { axiom, detail });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks the standing hypotheses on a cochain DGA and its DGA axioms.
pub fn validate_dga(r: &FinDga) -> ValidationReport {
    let mut report = ValidationReport::default();
    let field = r.field();
    let space = r.space();
    if let Some(lo) = space.min_degree().filter(|&d| d < 0) {
        report.push(
            Axiom::CochainPositivity,
            format!("R^{lo} has dimension {}", space.dim(lo)),
        );
    }
    if space.dim(0) != 1 {
        report.push(Axiom::DegreeZero, format!("R^0 has dimension {}", space.dim(0)));
    }
    if space.dim(1) != 0 {
        report.push(Axiom::DegreeOne, format!("R^1 has dimension {}", space.dim(1)));
    }
    for d in space.degrees() {
        let sq = r.differential_block(d + 1).mul(&r.differential_block(d));
        if !sq.is_zero() {
            report.push(Axiom::DifferentialSquare, format!("on R^{d}"));
        }
    }
    let unit = r.unit_index();
    if r.differential_of(unit).iter().any(|c| !c.is_zero()) {
        report.push(Axiom::DifferentialUnit, format!("∂({}) ≠ 0", r.label_of(unit)));
    }
    let n = r.basis().len();
    let ident = |d: i32| Matrix::identity(field, space.dim(d));
    for d in space.degrees() {
        let l = r.left_mult(unit).block(field, d, space, space);
        let rr = r.right_mult(unit).block(field, d, space, space);
        if l != ident(d) || rr != ident(d) {
            report.push(Axiom::UnitLaw, format!("on R^{d}"));
        }
    }
    for a in 0..n {
        let da = r.degree_of(a);
        let da_d = r.differential_of(a);
        for b in 0..n {
            let db = r.degree_of(b);
            let ab = r.product(a, b);
            let lhs = r.differential_block(da + db).mul_vec(&ab);
            let t1 = r.right_mult(b).block(field, da + 1, space, space).mul_vec(&da_d);
            let t2 = r
                .left_mult(a)
                .block(field, db + 1, space, space)
                .mul_vec(&r.differential_of(b));
            let s = field.sign(da);
            let ok = lhs
                .iter()
                .zip(t1.iter().zip(&t2))
                .all(|(x, (y, z))| (x - &(y + &(&s * z))).is_zero());
            if !ok {
                report.push(
                    Axiom::Leibniz,
                    format!("on ({}, {})", r.label_of(a), r.label_of(b)),
                );
            }
            for c in 0..n {
                let left = r.right_mult(c).block(field, da + db, space, space).mul_vec(&ab);
                let bc = r.product(b, c);
                let right = r
                    .left_mult(a)
                    .block(field, db + r.degree_of(c), space, space)
                    .mul_vec(&bc);
                if left != right {
                    report.push(
                        Axiom::Associativity,
                        format!("on ({}, {}, {})", r.label_of(a), r.label_of(b), r.label_of(c)),
                    );
                }
            }
        }
    }
    report
}

/// Checks the DG-module axioms: `∂² = 0`, unit action, associativity of
/// the action and the signed Leibniz rule.
pub fn validate_module(m: &DgModule) -> ValidationReport {
    let mut report = ValidationReport::default();
    let r = m.algebra();
    let field = m.field();
    let space = m.space();
    for d in space.degrees() {
        if !m
            .differential_block(d + 1)
            .mul(&m.differential_block(d))
            .is_zero()
        {
            report.push(Axiom::DifferentialSquare, format!("on M^{d}"));
        }
        if m.action_block(r.unit_index(), d) != Matrix::identity(field, space.dim(d)) {
            report.push(Axiom::UnitLaw, format!("on M^{d}"));
        }
    }
    let n = r.basis().len();
    for a in 0..n {
        let da = r.degree_of(a);
        let dr = m.element_action(da + 1, &r.differential_of(a));
        for d in space.degrees() {
            let lhs = m.differential_block(d + da).mul(&m.action_block(a, d));
            let act_dr = dr.block(field, d, space, space);
            let act_then = m.action_block(a, d + 1).mul(&m.differential_block(d));
            let rhs = match m.side() {
                Side::Left => act_dr.add(&act_then.scale(&field.sign(da))),
                Side::Right => act_then.add(&act_dr.scale(&field.sign(d))),
            };
            if lhs != rhs {
                report.push(Axiom::Leibniz, format!("for {} on M^{d}", r.label_of(a)));
            }
        }
        for b in 0..n {
            let db = r.degree_of(b);
            let prod = m.element_action(da + db, &r.product(a, b));
            for d in space.degrees() {
                let composite = match m.side() {
                    Side::Left => m.action_block(a, d + db).mul(&m.action_block(b, d)),
                    Side::Right => m.action_block(b, d + da).mul(&m.action_block(a, d)),
                };
                if composite != prod.block(field, d, space, space) {
                    report.push(
                        Axiom::Associativity,
                        format!("for ({}, {}) on M^{d}", r.label_of(a), r.label_of(b)),
                    );
                }
            }
        }
    }
    report
}
