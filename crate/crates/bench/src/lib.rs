//! Inputs shared by the benchmarks.

use dgar::loop_sphere::{Block, BlockMultiset, GradedKTModule};
use dgar::{Field, Matrix};

/// A dense `n × n` rational matrix with small entries and rank `n − 1`.
pub fn dense_matrix(n: usize) -> Matrix {
    let q = Field::Rational;
    let mut m = Matrix::zeros(q, n, n);
    for r in 0..n {
        for c in 0..n {
            let x = ((r * 7 + c * 13 + r * c) % 11) as i64 - 5;
            m.set(r, c, q.from_i64(x));
        }
    }
    for c in 0..n {
        let sum = m.get(0, c) + m.get(1, c);
        m.set(n - 1, c, sum);
    }
    m
}

/// The sum of `Σʲ C_m` over `|j| ≤ jmax`, `m ≤ mmax`, in a basis where
/// `T` is dense.
pub fn kt_module(d: i32, jmax: i32, mmax: u32) -> GradedKTModule {
    let blocks: BlockMultiset = (-jmax..=jmax)
        .flat_map(|j| (0..=mmax).map(move |m| Block { j, m }))
        .collect();
    let plain = blocks.module(d).expect("blocks");
    let q = Field::Rational;
    let basis = plain
        .space()
        .degrees()
        .map(|i| {
            let n = plain.space().dim(i);
            let mut b = Matrix::identity(q, n);
            for r in 0..n {
                for c in r + 1..n {
                    b.set(r, c, q.from_i64(((r + 2 * c) % 3) as i64 - 1));
                }
            }
            (i, b)
        })
        .collect();
    plain.change_basis(&basis).expect("invertible")
}
