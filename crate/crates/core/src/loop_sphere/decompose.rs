use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactlin::{Field, Matrix, Scalar};
use crate::graded::GradedDims;

use super::{make_cyclic, GradedKTModule, KtError};

/// The block `Σʲ C_m`, whose top basis vector sits in degree `−j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Block {
    pub j: i32,
    pub m: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct BlockCount {
    j: i32,
    m: u32,
    count: usize,
}

/// Blocks `Σʲ C_m` with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<BlockCount>", into = "Vec<BlockCount>")]
pub struct BlockMultiset {
    entries: BTreeMap<Block, usize>,
}

impl From<Vec<BlockCount>> for BlockMultiset {
    fn from(v: Vec<BlockCount>) -> Self {
        let mut out = BlockMultiset::default();
        for b in v {
            out.add(Block { j: b.j, m: b.m }, b.count);
        }
        out
    }
}

impl From<BlockMultiset> for Vec<BlockCount> {
    fn from(b: BlockMultiset) -> Self {
        b.entries
            .into_iter()
            .map(|(k, count)| BlockCount {
                j: k.j,
                m: k.m,
                count,
            })
            .collect()
    }
}

impl FromIterator<Block> for BlockMultiset {
    fn from_iter<I: IntoIterator<Item = Block>>(iter: I) -> Self {
        let mut out = BlockMultiset::default();
        for b in iter {
            out.add(b, 1);
        }
        out
    }
}

impl BlockMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, block: Block, count: usize) {
        if count > 0 {
            *self.entries.entry(block).or_default() += count;
        }
    }

    pub fn count(&self, block: Block) -> usize {
        self.entries.get(&block).copied().unwrap_or(0)
    }

    /// Distinct blocks in `(j, m)` order with their multiplicities.
    pub fn iter(&self) -> impl Iterator<Item = (Block, usize)> + '_ {
        self.entries.iter().map(|(&b, &c)| (b, c))
    }

    pub fn len(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Graded dimensions of the sum of the blocks.
    pub fn dims(&self, d: i32) -> GradedDims {
        let mut out = GradedDims::new();
        for (b, c) in self.iter() {
            for k in 0..=b.m as i32 {
                *out.entry(-b.j - k * (d - 1)).or_default() += c;
            }
        }
        out
    }

    /// `rank(T^p)` out of degree `g` on the sum of the blocks.
    pub fn rank(&self, d: i32, g: i32, p: u32) -> usize {
        let delta = d - 1;
        self.iter()
            .filter(|(b, _)| {
                let steps = -b.j - g;
                steps >= 0 && steps % delta == 0 && (steps / delta) as u32 + p <= b.m
            })
            .map(|(_, c)| c)
            .sum()
    }

    /// The direct sum of the blocks as a module, in `(j, m)` order.
    pub fn module(&self, d: i32) -> Result<GradedKTModule, KtError> {
        let mut acc = GradedKTModule::zero(Field::Rational, d)?;
        for (b, c) in self.iter() {
            let block = make_cyclic(d, b.j, b.m)?;
            for _ in 0..c {
                acc = acc.direct_sum(&block)?;
            }
        }
        Ok(acc)
    }
}

/// A Jordan string `x, xT, …, xT^m` spanning one block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanString {
    pub block: Block,
    /// `vectors[k]` is `xT^k` in coordinates of degree `−j − k(d−1)`.
    pub vectors: Vec<Vec<Scalar>>,
}

fn kernel(m: &GradedKTModule, g: i32, p: usize) -> Matrix {
    if p == 0 {
        return Matrix::zeros(m.field(), m.space().dim(g), 0);
    }
    m.t_power(g, p).kernel_basis()
}

/// A basis of a plain graded module made of Jordan strings.
///
/// Strings of length `m + 1` with top in degree `g` are started on a
/// complement of `ker T^m + (ker T^{m+2})T` inside `ker T^{m+1}`.
pub fn jordan_basis(m: &GradedKTModule) -> Result<Vec<JordanString>, KtError> {
    if m.differential().is_some() {
        return Err(KtError::Inconsistent(
            "module has a differential, take kt_cohomology first".into(),
        ));
    }
    let field = m.field();
    let delta = m.delta();
    let longest = m.space().degrees().count();
    let mut out = Vec::new();
    let mut collected: BTreeMap<i32, Vec<Vec<Scalar>>> = BTreeMap::new();
    for g in m.space().degrees().collect::<Vec<_>>().into_iter().rev() {
        let n = m.space().dim(g);
        for len in 0..longest {
            let lower = kernel(m, g, len);
            let from_above = m.t_block(g + delta).mul(&kernel(m, g + delta, len + 2));
            let span = lower.hstack(&from_above).image_basis();
            let candidates = kernel(m, g, len + 1);
            for c in span.extend_basis(&candidates) {
                let mut v = candidates.column(c);
                let mut vectors = Vec::with_capacity(len + 1);
                let mut deg = g;
                for _ in 0..=len {
                    collected.entry(deg).or_default().push(v.clone());
                    vectors.push(v.clone());
                    v = m.t_block(deg).mul_vec(&v);
                    deg -= delta;
                }
                out.push(JordanString {
                    block: Block { j: -g, m: len as u32 },
                    vectors,
                });
            }
            if candidates.cols() == n {
                break;
            }
        }
    }
    for i in m.space().degrees() {
        let cols = collected.remove(&i).unwrap_or_default();
        let frame = Matrix::from_columns(field, m.space().dim(i), &cols);
        if cols.len() != m.space().dim(i) || frame.rank() != cols.len() {
            return Err(KtError::Inconsistent(format!(
                "Jordan strings do not span degree {i}"
            )));
        }
    }
    Ok(out)
}

/// The blocks of a plain graded module.
pub fn decompose(m: &GradedKTModule) -> Result<BlockMultiset, KtError> {
    Ok(jordan_basis(m)?.into_iter().map(|s| s.block).collect())
}
