use std::fmt;

use super::{Field, LinalgError, Scalar};

/// Dense matrix over an exact field, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from integer rows. All rows must have the same length.
    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(x));
            }
        }
        m
    }

    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &Scalar) {
        self.data[i * self.cols + j] += x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "product of {}x{} and {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        self.with_data(data)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        self.with_data(data)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        self.with_data(data)
    }

    fn with_data(&self, data: Vec<Scalar>) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// `self` above `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, other);
        m
    }

    /// Copies `block` into `self` with its top-left corner at `(r, c)`.
    pub fn paste(&mut self, r: usize, c: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &cols)
    }

    /// Reduced row-echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inverse().expect("nonzero pivot");
            for j in c..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let t = m.get(r, j);
                    if !t.is_zero() {
                        let x = &f * t;
                        m.data[i * m.cols + j] -= &x;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            rank: pivots.len(),
            reduced: m,
            pivot_columns: pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().rank
    }

    /// Columns spanning the null space, one per free column of the rref.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref {
            reduced,
            pivot_columns,
            ..
        } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_columns.contains(c)).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (b, &f) in free.iter().enumerate() {
            k.set(f, b, self.field.one());
            for (row, &p) in pivot_columns.iter().enumerate() {
                k.set(p, b, -reduced.get(row, f));
            }
        }
        k
    }

    /// Basis of the column space, chosen among the columns of `self`.
    pub fn image_basis(&self) -> Matrix {
        let piv = self.rref().pivot_columns;
        self.select_columns(&piv)
    }

    /// Some `x` with `self · x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let col = Matrix::from_columns(self.field, self.rows, &[b.to_vec()]);
        let aug = self.hstack(&col).rref();
        if aug.pivot_columns.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &p) in aug.pivot_columns.iter().enumerate() {
            x[p] = aug.reduced.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, if it is invertible.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n)).rref();
        if aug.rank < n || aug.pivot_columns[..n] != (0..n).collect::<Vec<_>>()[..] {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(aug.reduced.submatrix(&rows, &cols))
    }

    /// For a matrix of full column rank, some `L` with `L · (self · x) = x`
    /// for all `x`; `None` if the columns are dependent.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let rows = self.transpose().rref().pivot_columns;
        if rows.len() != self.cols {
            return None;
        }
        let square = self.select_rows(&rows).inverse()?;
        let mut l = Matrix::zeros(self.field, self.cols, self.rows);
        for (k, &r) in rows.iter().enumerate() {
            for i in 0..self.cols {
                l.set(i, r, square.get(i, k).clone());
            }
        }
        Some(l)
    }

    /// Extends the columns of `self` (assumed independent) by columns of
    /// `candidates`, returning the indices of the candidates that were kept.
    pub fn extend_basis(&self, candidates: &Matrix) -> Vec<usize> {
        let combined = self.hstack(candidates);
        combined
            .rref()
            .pivot_columns
            .into_iter()
            .filter(|&c| c >= self.cols)
            .map(|c| c - self.cols)
            .collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn proportional_rows_have_rank_one() {
        let m = Matrix::from_i64(Q, &[vec![1, 2], vec![2, 4]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_columns, vec![0]);
    }

    #[test]
    fn identity_has_full_rank_and_empty_kernel() {
        let m = Matrix::identity(Q, 4);
        assert_eq!(m.rank(), 4);
        assert_eq!(m.kernel_basis().cols(), 0);
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let k = Matrix::zeros(Q, 2, 3).kernel_basis();
        assert_eq!(k.cols(), 3);
        assert_eq!(k.rank(), 3);
    }

    #[test]
    fn kernel_of_proportional_rows() {
        let m = Matrix::from_i64(Q, &[vec![1, 2], vec![2, 4]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
        // proportional to (2, -1)
        let c = k.column(0);
        assert_eq!(&c[0] + &(&c[1] * &Q.from_i64(2)), Q.zero());
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let b = vec![Q.from_i64(3), Q.from_i64(-5)];
        let x = Matrix::identity(Q, 2).solve(&b).unwrap().unwrap();
        assert_eq!(x, b);
        let m = Matrix::from_i64(Q, &[vec![1, 2], vec![2, 4]]);
        let b = vec![Q.from_i64(1), Q.from_i64(3)];
        assert_eq!(m.solve(&b).unwrap(), None);
        assert!(m.solve(&b[..1]).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64(Q, &[vec![2, 1], vec![7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(Q, 2));
        assert!(Matrix::from_i64(Q, &[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn prime_field_rank_differs_from_rational() {
        // det = 5, singular mod 5
        let rows = [vec![1, 2], vec![-1, 3]];
        assert_eq!(Matrix::from_i64(Q, &rows).rank(), 2);
        assert_eq!(Matrix::from_i64(Field::prime(5).unwrap(), &rows).rank(), 1);
    }

    fn det(m: &[Vec<i64>], rows: &[usize], cols: &[usize]) -> i64 {
        if rows.is_empty() {
            return 1;
        }
        let (r, rest) = (rows[0], &rows[1..]);
        let mut acc = 0;
        for (k, &c) in cols.iter().enumerate() {
            let others: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let sign = if k % 2 == 0 { 1 } else { -1 };
            acc += sign * m[r][c] * det(m, rest, &others);
        }
        acc
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0..1u32 << n)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
            .collect()
    }

    /// Largest `k` with a `k × k` minor that is nonzero mod `p` (`p = 0` for Q).
    fn minor_rank(m: &[Vec<i64>], cols: usize, p: i64) -> usize {
        let rows = m.len();
        (1..=rows.min(cols))
            .rev()
            .find(|&k| {
                subsets(rows, k).iter().any(|rs| {
                    subsets(cols, k).iter().any(|cs| {
                        let d = det(m, rs, cs);
                        if p == 0 {
                            d != 0
                        } else {
                            d.rem_euclid(p) != 0
                        }
                    })
                })
            })
            .unwrap_or(0)
    }

    fn small_matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            (
                Just(c),
                proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r),
            )
        })
    }

    fn fields() -> impl Strategy<Value = Field> {
        prop_oneof![
            Just(Q),
            Just(Field::prime(2).unwrap()),
            Just(Field::prime(3).unwrap()),
            Just(Field::prime(7).unwrap())
        ]
    }

    proptest! {
        #[test]
        fn rank_matches_minors((cols, rows) in small_matrix(), f in fields()) {
            let m = Matrix::from_i64(f, &rows);
            prop_assert_eq!(m.rank(), minor_rank(&rows, cols, f.characteristic() as i64));
        }

        #[test]
        fn rank_of_transpose((_c, rows) in small_matrix(), f in fields()) {
            let m = Matrix::from_i64(f, &rows);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rref_is_idempotent((_c, rows) in small_matrix(), f in fields()) {
            let r = Matrix::from_i64(f, &rows).rref();
            let again = r.reduced.rref();
            prop_assert_eq!(&again.reduced, &r.reduced);
            prop_assert_eq!(again.pivot_columns, r.pivot_columns);
        }

        #[test]
        fn rank_plus_nullity((cols, rows) in small_matrix(), f in fields()) {
            let m = Matrix::from_i64(f, &rows);
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.cols(), cols);
            prop_assert!(m.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn solve_finds_preimages((cols, rows) in small_matrix(), x in proptest::collection::vec(-3i64..=3, 4)) {
            let m = Matrix::from_i64(Q, &rows);
            let x: Vec<Scalar> = x[..cols].iter().map(|&v| Q.from_i64(v)).collect();
            let b = m.mul_vec(&x);
            let y = m.solve(&b).unwrap().expect("consistent");
            prop_assert_eq!(m.mul_vec(&y), b);
        }
    }
}
