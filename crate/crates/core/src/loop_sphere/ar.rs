use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graded::GradedDims;

use super::{check_d, make_cyclic, rhom_over_kt, GradedKTModule, KtError};

/// `Σʲ N_m` in `D^c(Sᵈ)`, the image of `Σʲ C_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SphereIndecLabel {
    pub d: i32,
    pub j: i32,
    pub m: u32,
}

impl SphereIndecLabel {
    pub fn new(d: i32, j: i32, m: u32) -> Self {
        SphereIndecLabel { d, j, m }
    }

    /// The graded `k[T]`-module `Σʲ C_m`.
    pub fn kt_module(&self) -> Result<GradedKTModule, KtError> {
        make_cyclic(self.d, self.j, self.m)
    }

    /// The AR translate `τ = Σ^{d−1}`.
    pub fn translate(&self) -> Self {
        SphereIndecLabel::new(self.d, self.j + self.d - 1, self.m)
    }
}

impl fmt::Display for SphereIndecLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Σ^{} N_{}", self.j, self.m)
    }
}

/// `left → ⊕ middle → right →`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ARTriangleLabel {
    pub left: SphereIndecLabel,
    pub middle: Vec<SphereIndecLabel>,
    pub right: SphereIndecLabel,
}

impl fmt::Display for ARTriangleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let middle: Vec<String> = self.middle.iter().map(|l| l.to_string()).collect();
        write!(f, "{} → {} → {} →", self.left, middle.join(" ⊕ "), self.right)
    }
}

/// `dim H^i` of `Σʲ N_m`: one at `i = −m(d−1) − j` and at `i = d − j`.
pub fn indec_cohomology(label: &SphereIndecLabel) -> GradedDims {
    let SphereIndecLabel { d, j, m } = *label;
    [(-(m as i32) * (d - 1) - j, 1), (d - j, 1)].into_iter().collect()
}

/// The AR triangle ending in `Σʲ N_m`.
pub fn sphere_ar_triangle(right: &SphereIndecLabel) -> Result<ARTriangleLabel, KtError> {
    let SphereIndecLabel { d, j, m } = *right;
    check_d(d)?;
    let middle = if m == 0 {
        vec![SphereIndecLabel::new(d, j, 1)]
    } else {
        vec![
            SphereIndecLabel::new(d, j + d - 1, m - 1),
            SphereIndecLabel::new(d, j, m + 1),
        ]
    };
    Ok(ARTriangleLabel {
        left: right.translate(),
        middle,
        right: *right,
    })
}

/// Middle-term cohomology of an AR triangle obtained three ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub triangle: ARTriangleLabel,
    /// Sum of the closed forms over the middle labels.
    pub from_middle: GradedDims,
    /// Left plus right, minus the classes cancelled by the connecting map.
    pub from_sequence: GradedDims,
    /// `RHom_{k[T]}(F, −)` of the middle `k[T]`-modules.
    pub computed: GradedDims,
    pub failure: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn add(acc: &mut GradedDims, other: &GradedDims) {
    for (&i, &n) in other {
        *acc.entry(i).or_default() += n;
    }
}

fn first_difference(a: &GradedDims, b: &GradedDims) -> Option<i32> {
    let degrees: BTreeSet<i32> = a.keys().chain(b.keys()).copied().collect();
    degrees
        .into_iter()
        .find(|i| a.get(i).copied().unwrap_or(0) != b.get(i).copied().unwrap_or(0))
}

pub fn verify_ar_triangle(tri: &ARTriangleLabel) -> Result<VerificationReport, KtError> {
    let SphereIndecLabel { d, j, m } = tri.right;
    check_d(d)?;
    let mut from_middle = GradedDims::new();
    for l in &tri.middle {
        add(&mut from_middle, &indec_cohomology(l));
    }
    let mut from_sequence = indec_cohomology(&tri.left);
    add(&mut from_sequence, &indec_cohomology(&tri.right));
    if m == 0 {
        for i in [-j, 1 - j] {
            match from_sequence.get_mut(&i) {
                Some(n) if *n > 0 => *n -= 1,
                _ => {}
            }
        }
        from_sequence.retain(|_, n| *n > 0);
    }
    let lo = from_sequence
        .keys()
        .chain(from_middle.keys())
        .min()
        .copied()
        .unwrap_or(0)
        - 1;
    let hi = from_sequence
        .keys()
        .chain(from_middle.keys())
        .max()
        .copied()
        .unwrap_or(0)
        + 1;
    let mut computed = GradedDims::new();
    for l in &tri.middle {
        if l.d != d {
            break;
        }
        add(&mut computed, &rhom_over_kt(d, &l.kt_module()?, lo..=hi)?);
    }
    let failure = if tri.left != tri.right.translate() {
        Some(format!("left term {} is not τ({})", tri.left, tri.right))
    } else if tri.middle.iter().any(|l| l.d != d) {
        Some("middle terms live over different spheres".to_string())
    } else if let Some(i) = first_difference(&from_middle, &from_sequence) {
        Some(format!(
            "middle cohomology disagrees with the long exact sequence in degree {i}"
        ))
    } else {
        first_difference(&from_middle, &computed)
            .map(|i| format!("closed form disagrees with RHom in degree {i}"))
    };
    Ok(VerificationReport {
        triangle: tri.clone(),
        from_middle,
        from_sequence,
        computed,
        failure,
    })
}
