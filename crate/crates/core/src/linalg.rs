//! Dense matrices over a prime field, plus the membership predicates for the
//! subgroups the rest of the crate works with.
//!
//! Vectors are column vectors and matrices act on the left, so the columns
//! of an invertible `g` are the images `g(e_1), ..., g(e_m)`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, PrimeField};

/// A dense `rows x cols` matrix over `F_p`, stored row-major as residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
    field: PrimeField,
}

/// Result of [`Matrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    /// Strictly increasing pivot columns.
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
            field,
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod `p`.
    pub fn from_rows<R: AsRef<[i64]>>(field: PrimeField, rows: &[R]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            data.extend(row.iter().map(|&v| field.elem_signed(v).value()));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
            field,
        })
    }

    /// Builds a matrix from row-major residues, which must lie in `[0, p)`.
    pub fn from_residues(
        field: PrimeField,
        rows: usize,
        cols: usize,
        data: Vec<u32>,
    ) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&v) = data.iter().find(|&&v| v >= field.modulus()) {
            return Err(Error::InvalidParameters(format!(
                "entry {v} is not a residue mod {}",
                field.modulus()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            data,
            field,
        })
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns<C: AsRef<[u32]>>(
        field: PrimeField,
        rows: usize,
        columns: &[C],
    ) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column of length {} in a matrix with {rows} rows",
                    c.len()
                )));
            }
            for (i, &v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v % field.modulus();
            }
        }
        Ok(m)
    }

    /// Permutation matrix sending `e_j` to `e_{images[j]}` (0-based).
    pub fn permutation(field: PrimeField, images: &[usize]) -> Result<Matrix> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &i in images {
            if i >= m || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidParameters(format!(
                    "{images:?} is not a permutation"
                )));
            }
        }
        let mut out = Matrix::zeros(field, m, m);
        for (j, &i) in images.iter().enumerate() {
            out.data[i * m + j] = 1;
        }
        Ok(out)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.field.elem(self.residue(i, j) as u64)
    }

    #[inline]
    pub fn residue(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.modulus();
    }

    /// Row-major residues.
    pub fn residues(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.residue(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Rows as nested vectors, the shape used by the JSON format.
    pub fn to_nested(&self) -> Vec<Vec<u32>> {
        self.row_vectors().map(<[u32]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.residue(i, j);
            }
        }
        t
    }

    /// The `height x width` block whose top-left corner is `(row, col)`.
    pub fn block(&self, row: usize, col: usize, height: usize, width: usize) -> Result<Matrix> {
        if row + height > self.rows || col + width > self.cols {
            return Err(Error::DimensionMismatch(format!(
                "block {height}x{width} at ({row},{col}) outside a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut b = Matrix::zeros(self.field, height, width);
        for i in 0..height {
            let src = &self.row(row + i)[col..col + width];
            b.data[i * width..(i + 1) * width].copy_from_slice(src);
        }
        Ok(b)
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} columns on {}",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
            field: self.field,
        })
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.residue(i, t);
                if a == 0 {
                    continue;
                }
                let orow = other.row(t);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = f.add(*d, f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = self.field;
        Ok(self
            .row_vectors()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    /// Reduced row echelon form. The pivot in each column is the first
    /// nonzero entry at or below the current pivot row.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(found) = (prow..m.rows).find(|&i| m.residue(i, col) != 0) else {
                continue;
            };
            m.swap_rows(prow, found);
            let inv = f.inv(m.residue(prow, col)).expect("pivot is nonzero");
            m.scale_row(prow, inv);
            for i in 0..m.rows {
                if i != prow {
                    let factor = m.residue(i, col);
                    if factor != 0 {
                        m.add_row_multiple(i, prow, f.neg(factor));
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, i: usize, c: u32) {
        let f = self.field;
        for v in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *v = f.mul(*v, c);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: u32) {
        let f = self.field;
        let cols = self.cols;
        for j in 0..cols {
            let s = self.data[src * cols + j];
            if s != 0 {
                let d = &mut self.data[dst * cols + j];
                *d = f.add(*d, f.mul(c, s));
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "inverse of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            aug.data[i * 2 * n..i * 2 * n + n].copy_from_slice(self.row(i));
            aug.data[i * 2 * n + n + i] = 1;
        }
        let r = aug.rref();
        if r.pivots.len() < n || r.pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        r.matrix.block(0, n, n, n)
    }

    /// Basis of the right null space `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let r = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &r.pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![0; self.cols];
                x[free] = 1;
                for (i, &pc) in r.pivots.iter().enumerate() {
                    x[pc] = f.neg(r.matrix.residue(i, free));
                }
                x
            })
            .collect()
    }

    /// Some solution `x` of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        let w = self.cols + 1;
        for (i, &bi) in b.iter().enumerate() {
            aug.data[i * w..i * w + self.cols].copy_from_slice(self.row(i));
            aug.data[i * w + self.cols] = bi % self.field.modulus();
        }
        let r = aug.rref();
        if r.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (i, &pc) in r.pivots.iter().enumerate() {
            x[pc] = r.matrix.residue(i, self.cols);
        }
        Ok(Some(x))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_permutation_matrix(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                let row = self.row(i);
                row.iter().filter(|&&v| v == 1).count() == 1 && row.iter().all(|&v| v <= 1)
            })
            && (0..self.cols)
                .all(|j| (0..self.rows).filter(|&i| self.residue(i, j) == 1).count() == 1)
    }

    /// Canonical byte encoding: modulus, dimensions, then row-major residues,
    /// all little-endian.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(12 + 2 * self.data.len());
        out.extend_from_slice(&self.field.modulus().to_le_bytes());
        out.extend_from_slice(&(self.rows as u32).to_le_bytes());
        out.extend_from_slice(&(self.cols as u32).to_le_bytes());
        for &v in &self.data {
            out.extend_from_slice(&(v as u16).to_le_bytes());
        }
        out
    }

    pub fn random<R: Rng + ?Sized>(
        field: PrimeField,
        rows: usize,
        cols: usize,
        rng: &mut R,
    ) -> Matrix {
        let data = (0..rows * cols)
            .map(|_| rng.gen_range(0..field.modulus()))
            .collect();
        Matrix {
            rows,
            cols,
            data,
            field,
        }
    }

    /// Uniformly random element of `GL_m(F_p)` by rejection.
    pub fn random_invertible<R: Rng + ?Sized>(field: PrimeField, m: usize, rng: &mut R) -> Matrix {
        loop {
            let g = Matrix::random(field, m, m, rng);
            if g.is_invertible() {
                return g;
            }
        }
    }

    /// Random element `[[h, x], [0, h]]` of the Shalika subgroup of `GL_{2n}`.
    pub fn random_shalika<R: Rng + ?Sized>(field: PrimeField, n: usize, rng: &mut R) -> Matrix {
        let h = Matrix::random_invertible(field, n, rng);
        let x = Matrix::random(field, n, n, rng);
        let mut s = Matrix::zeros(field, 2 * n, 2 * n);
        s.paste(0, 0, &h);
        s.paste(0, n, &x);
        s.paste(n, n, &h);
        s
    }

    /// Random element of the block upper triangular parabolic `P_{r, m-r}`.
    pub fn random_parabolic<R: Rng + ?Sized>(
        field: PrimeField,
        m: usize,
        r: usize,
        rng: &mut R,
    ) -> Matrix {
        let g1 = Matrix::random_invertible(field, r, rng);
        let g2 = Matrix::random_invertible(field, m - r, rng);
        let x = Matrix::random(field, r, m - r, rng);
        let mut p = Matrix::zeros(field, m, m);
        p.paste(0, 0, &g1);
        p.paste(0, r, &x);
        p.paste(r, r, &g2);
        p
    }

    /// Copies `block` into `self` with its top-left corner at `(row, col)`.
    pub(crate) fn paste(&mut self, row: usize, col: usize, block: &Matrix) {
        for i in 0..block.rows {
            let dst = (row + i) * self.cols + col;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(i));
        }
    }
}

impl fmt::Display for Matrix {
    /// Aligned residues, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.field.modulus().saturating_sub(1).to_string().len();
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

/// `true` iff `g` is invertible with zero lower-left `(m-r) x r` block,
/// i.e. `g` lies in the maximal parabolic `P_{r, m-r}`.
pub fn is_in_parabolic(g: &Matrix, r: usize) -> Result<bool> {
    if !g.is_square() {
        return Err(Error::DimensionMismatch(
            "parabolic membership needs a square matrix".into(),
        ));
    }
    let m = g.rows();
    if r == 0 || r >= m {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= r < {m}, got r = {r}"
        )));
    }
    let lower_left_zero = (r..m).all(|i| g.row(i)[..r].iter().all(|&v| v == 0));
    Ok(lower_left_zero && g.is_invertible())
}

/// `true` iff `g = [[h, x], [0, h]]` with `h` invertible.
pub fn is_in_shalika(g: &Matrix, n: usize) -> Result<bool> {
    if g.rows() != 2 * n || g.cols() != 2 * n {
        return Err(Error::DimensionMismatch(format!(
            "Shalika membership needs a {0}x{0} matrix, got {1}x{2}",
            2 * n,
            g.rows(),
            g.cols()
        )));
    }
    for i in 0..n {
        if g.row(n + i)[..n].iter().any(|&v| v != 0) {
            return Ok(false);
        }
        if g.row(i)[..n] != g.row(n + i)[n..] {
            return Ok(false);
        }
    }
    Ok(g.is_invertible())
}

/// Wire format: `{"p": int, "rows": int, "cols": int, "entries": [[int,...],...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u64>>,
}

impl From<Matrix> for MatrixJson {
    fn from(m: Matrix) -> Self {
        MatrixJson {
            p: m.field.modulus() as u64,
            rows: m.rows,
            cols: m.cols,
            entries: m
                .row_vectors()
                .map(|r| r.iter().map(|&v| v as u64).collect())
                .collect(),
        }
    }
}

impl TryFrom<MatrixJson> for Matrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Matrix> {
        let field = PrimeField::new(j.p)?;
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(Error::DimensionMismatch(format!(
                "entries do not form a {}x{} array",
                j.rows, j.cols
            )));
        }
        let mut data = Vec::with_capacity(j.rows * j.cols);
        for &v in j.entries.iter().flatten() {
            if v >= j.p {
                return Err(Error::InvalidParameters(format!(
                    "entry {v} is not a residue mod {}",
                    j.p
                )));
            }
            data.push(v as u32);
        }
        Matrix::from_residues(field, j.rows, j.cols, data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn m(p: u64, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(f(p), rows).unwrap()
    }

    #[test]
    fn products() {
        let a = m(7, &[&[1, 2], &[3, 4]]);
        assert_eq!(Matrix::identity(f(7), 2).mul(&a).unwrap(), a);
        let u = m(2, &[&[1, 1], &[0, 1]]);
        assert_eq!(u.mul(&u).unwrap(), Matrix::identity(f(2), 2));
        assert_eq!(m(3, &[&[2]]).mul(&m(3, &[&[2]])).unwrap(), m(3, &[&[1]]));
        assert!(matches!(
            a.mul(&Matrix::zeros(f(7), 3, 1)),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            a.mul(&Matrix::identity(f(5), 2)),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn rref_examples() {
        let z = Matrix::zeros(f(5), 2, 3);
        let r = z.rref();
        assert_eq!((r.matrix, r.pivots, r.rank), (z, vec![], 0));

        let i4 = Matrix::identity(f(3), 4);
        let r = i4.rref();
        assert_eq!((r.matrix, r.pivots, r.rank), (i4, vec![0, 1, 2, 3], 4));

        let r = m(2, &[&[1, 1], &[1, 1]]).rref();
        assert_eq!(r.matrix, m(2, &[&[1, 1], &[0, 0]]));
        assert_eq!((r.pivots, r.rank), (vec![0], 1));

        let r = m(5, &[&[0, 2, 4], &[3, 1, 0]]).rref();
        assert_eq!(r.matrix, m(5, &[&[1, 0, 1], &[0, 1, 2]]));
    }

    #[test]
    fn inverse_examples() {
        let i3 = Matrix::identity(f(7), 3);
        assert_eq!(i3.inverse().unwrap(), i3);
        let d = m(5, &[&[2, 0], &[0, 3]]);
        assert_eq!(d.inverse().unwrap(), m(5, &[&[3, 0], &[0, 2]]));
        assert_eq!(m(5, &[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
        assert!(matches!(
            Matrix::zeros(f(5), 2, 3).inverse(),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn kernel_and_solve() {
        let a = m(5, &[&[1, 2, 3], &[2, 4, 2]]);
        let ker = a.kernel();
        assert_eq!(ker.len(), 1);
        assert_eq!(a.mul_vec(&ker[0]).unwrap(), vec![0, 0]);

        let x = a.solve(&[1, 2]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![1, 2]);
        assert_eq!(m(5, &[&[1, 1], &[1, 1]]).solve(&[0, 1]).unwrap(), None);
    }

    #[test]
    fn parabolic_membership() {
        let field = f(2);
        assert!(is_in_parabolic(&Matrix::identity(field, 4), 2).unwrap());
        let swap14 = Matrix::permutation(field, &[3, 1, 2, 0]).unwrap();
        assert!(!is_in_parabolic(&swap14, 2).unwrap());
        let upper = m(
            3,
            &[&[1, 2, 0, 1], &[0, 2, 1, 1], &[0, 0, 1, 2], &[0, 0, 0, 2]],
        );
        for r in 1..4 {
            assert!(is_in_parabolic(&upper, r).unwrap());
        }
        assert!(!is_in_parabolic(&Matrix::zeros(field, 4, 4), 2).unwrap());
        assert!(is_in_parabolic(&upper, 0).is_err());
        assert!(is_in_parabolic(&upper, 4).is_err());
    }

    #[test]
    fn shalika_membership() {
        let field = f(5);
        assert!(is_in_shalika(&Matrix::identity(field, 4), 2).unwrap());
        let h = m(5, &[&[1, 2], &[3, 4]]);
        let mut dh = Matrix::zeros(field, 4, 4);
        dh.paste(0, 0, &h);
        dh.paste(2, 2, &h);
        assert!(is_in_shalika(&dh, 2).unwrap());
        let mut d12 = Matrix::zeros(field, 4, 4);
        d12.paste(0, 0, &h);
        d12.paste(2, 2, &Matrix::identity(field, 2));
        assert!(!is_in_shalika(&d12, 2).unwrap());
        assert!(is_in_shalika(&Matrix::identity(field, 3), 1).is_err());
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let a = m(7, &[&[1, 2, 6], &[0, 3, 4]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(
            s,
            r#"{"p":7,"rows":2,"cols":3,"entries":[[1,2,6],[0,3,4]]}"#
        );
        assert_eq!(serde_json::from_str::<Matrix>(&s).unwrap(), a);
        for bad in [
            r#"{"p":7,"rows":1,"cols":1,"entries":[[7]]}"#,
            r#"{"p":8,"rows":1,"cols":1,"entries":[[1]]}"#,
            r#"{"p":7,"rows":2,"cols":1,"entries":[[1]]}"#,
        ] {
            assert!(serde_json::from_str::<Matrix>(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn canonical_bytes_distinguish_shapes() {
        let a = Matrix::zeros(f(2), 1, 4);
        let b = Matrix::zeros(f(2), 2, 2);
        assert_ne!(a.canonical_bytes(), b.canonical_bytes());
        assert_eq!(a.canonical_bytes(), a.clone().canonical_bytes());
    }

    fn field_strategy() -> impl Strategy<Value = PrimeField> {
        prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(f)
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(field in field_strategy(), rows in 1usize..6, cols in 1usize..6, seed: u64) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = Matrix::random(field, rows, cols, &mut rng);
            let r = a.rref();
            prop_assert_eq!(r.matrix.rref(), r.clone());
            prop_assert!(r.pivots.windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn rank_of_product_is_bounded(field in field_strategy(), k in 1usize..6, seed: u64) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = Matrix::random(field, 4, k, &mut rng);
            let b = Matrix::random(field, k, 5, &mut rng);
            let ab = a.mul(&b).unwrap();
            prop_assert!(ab.rank() <= a.rank().min(b.rank()));
        }

        #[test]
        fn inverse_is_two_sided(field in field_strategy(), n in 1usize..6, seed: u64) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = Matrix::random_invertible(field, n, &mut rng);
            let gi = g.inverse().unwrap();
            prop_assert_eq!(g.mul(&gi).unwrap(), Matrix::identity(field, n));
            prop_assert_eq!(gi.mul(&g).unwrap(), Matrix::identity(field, n));
        }

        #[test]
        fn shalika_is_closed(field in field_strategy(), n in 1usize..4, seed: u64) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = Matrix::random_shalika(field, n, &mut rng);
            let b = Matrix::random_shalika(field, n, &mut rng);
            prop_assert!(is_in_shalika(&a, n).unwrap());
            prop_assert!(is_in_shalika(&a.mul(&b).unwrap(), n).unwrap());
            prop_assert!(is_in_shalika(&a.inverse().unwrap(), n).unwrap());
        }

        #[test]
        fn parabolic_is_closed(field in field_strategy(), m in 2usize..7, seed: u64) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = 1 + (seed as usize) % (m - 1);
            let a = Matrix::random_parabolic(field, m, r, &mut rng);
            let b = Matrix::random_parabolic(field, m, r, &mut rng);
            prop_assert!(is_in_parabolic(&a, r).unwrap());
            prop_assert!(is_in_parabolic(&a.mul(&b).unwrap(), r).unwrap());
            prop_assert!(is_in_parabolic(&a.inverse().unwrap(), r).unwrap());
        }
    }
}
