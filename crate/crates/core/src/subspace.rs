//! Subspaces of `F_p^m` in canonical form.
//!
//! A [`Subspace`] stores the nonzero rows of the reduced row echelon form of
//! any spanning set. RREF is unique per row space, so two subspaces are equal
//! exactly when their stored bases are equal, and derived `Eq`/`Hash` are
//! the mathematical ones.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::PrimeField;
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SubspaceJson", into = "SubspaceJson")]
pub struct Subspace {
    ambient: usize,
    /// RREF rows, no zero rows.
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// The span of the rows of `m`.
    pub fn row_span(m: &Matrix) -> Subspace {
        let r = m.rref();
        let basis = r
            .matrix
            .block(0, 0, r.rank, m.cols())
            .expect("rank never exceeds the row count");
        Subspace {
            ambient: m.cols(),
            basis,
            pivots: r.pivots,
        }
    }

    /// The span of the columns of `m`.
    pub fn column_span(m: &Matrix) -> Subspace {
        Subspace::row_span(&m.transpose())
    }

    /// The span of a list of vectors of length `ambient`.
    pub fn span<V: AsRef<[u32]>>(
        field: PrimeField,
        ambient: usize,
        vectors: &[V],
    ) -> Result<Subspace> {
        let mut data = Vec::with_capacity(vectors.len() * ambient);
        for v in vectors {
            let v = v.as_ref();
            if v.len() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} in F^{ambient}",
                    v.len()
                )));
            }
            data.extend(v.iter().map(|&x| x % field.modulus()));
        }
        let m = Matrix::from_residues(field, vectors.len(), ambient, data)?;
        Ok(Subspace::row_span(&m))
    }

    /// Span of the standard basis vectors with the given (0-based) indices.
    pub fn coordinate(field: PrimeField, ambient: usize, indices: &[usize]) -> Result<Subspace> {
        let vectors: Vec<Vec<u32>> = indices
            .iter()
            .map(|&i| {
                if i >= ambient {
                    return Err(Error::DimensionMismatch(format!(
                        "e_{} in F^{ambient}",
                        i + 1
                    )));
                }
                Ok(unit(ambient, i))
            })
            .try_collect()?;
        Subspace::span(field, ambient, &vectors)
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        self.basis.to_nested()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch {
                left: self.field().modulus(),
                right: other.field().modulus(),
            });
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F^{} and F^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    fn check_vector(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in F^{}",
                v.len(),
                self.ambient
            )));
        }
        Ok(())
    }

    /// `v` minus the combination of basis rows that clears its pivot entries.
    pub fn reduce(&self, v: &[u32]) -> Result<Vec<u32>> {
        self.check_vector(v)?;
        let f = self.field();
        let mut out: Vec<u32> = v.iter().map(|&x| x % f.modulus()).collect();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c != 0 {
                for (o, &b) in out.iter_mut().zip(self.basis.row(i)) {
                    *o = f.sub(*o, f.mul(c, b));
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|&x| x == 0))
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not
    /// in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Result<Option<Vec<u32>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&pc| v[pc]).collect()))
    }

    /// Indices of the standard basis vectors that complement the subspace,
    /// namely the non-pivot columns.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Coordinates of `v + U` in `F^m / U`, using the complement spanned by
    /// the non-pivot standard basis vectors.
    pub fn quotient_coordinates(&self, v: &[u32]) -> Result<Vec<u32>> {
        let red = self.reduce(v)?;
        Ok(self
            .complement_indices()
            .into_iter()
            .map(|c| red[c])
            .collect())
    }

    /// The vector in the standard complement with the given quotient
    /// coordinates; inverse of [`Subspace::quotient_coordinates`] on it.
    pub fn quotient_lift(&self, coords: &[u32]) -> Result<Vec<u32>> {
        let idx = self.complement_indices();
        if coords.len() != idx.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} quotient coordinates for a quotient of dimension {}",
                coords.len(),
                idx.len()
            )));
        }
        let mut v = vec![0; self.ambient];
        for (&c, &x) in idx.iter().zip(coords) {
            v[c] = x % self.field().modulus();
        }
        Ok(v)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        for v in self.basis.row_vectors() {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Subspace::row_span(&self.basis.vstack(&other.basis)?))
    }

    /// `U ∩ V` by the kernel method: every `(x, y)` with `x A + y B = 0`
    /// yields the common vector `x A`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let a = self.dim();
        if a == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.field(), self.ambient));
        }
        let stacked = self.basis.vstack(&other.basis)?;
        let common: Vec<Vec<u32>> = stacked
            .transpose()
            .kernel()
            .iter()
            .map(|z| self.basis.transpose().mul_vec(&z[..a]))
            .try_collect()?;
        Subspace::span(self.field(), self.ambient, &common)
    }

    /// The image `g(U)`.
    pub fn apply(&self, g: &Matrix) -> Result<Subspace> {
        if g.rows() != self.ambient || g.cols() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix acting on F^{}",
                g.rows(),
                g.cols(),
                self.ambient
            )));
        }
        if !g.is_invertible() {
            return Err(Error::Singular);
        }
        // Rows of B g^T are the images g(b_i).
        Ok(Subspace::row_span(&self.basis.mul(&g.transpose())?))
    }

    /// Projection onto the last `n` coordinates, as a subspace of `F^n`.
    pub fn project_last(&self, n: usize) -> Result<Subspace> {
        if n > self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "last {n} coordinates of F^{}",
                self.ambient
            )));
        }
        let tail = self.basis.block(0, self.ambient - n, self.dim(), n)?;
        Ok(Subspace::row_span(&tail))
    }

    /// Vectors that complete the independent set `partial` (contained in
    /// `self`) to a basis of `self`.
    ///
    /// The additions are the canonical basis rows of `self`, scanned in
    /// order, keeping each one that raises the rank.
    pub fn extend_basis<V: AsRef<[u32]>>(&self, partial: &[V]) -> Result<Vec<Vec<u32>>> {
        let f = self.field();
        let mut current: Vec<Vec<u32>> = Vec::with_capacity(self.dim());
        for v in partial {
            let v = v.as_ref();
            if !self.contains(v)? {
                return Err(Error::NotContained);
            }
            current.push(v.iter().map(|&x| x % f.modulus()).collect());
        }
        let mut rank = Subspace::span(f, self.ambient, &current)?.dim();
        if rank != current.len() {
            return Err(Error::Dependent);
        }
        let mut added = Vec::new();
        for row in self.basis.row_vectors() {
            if rank == self.dim() {
                break;
            }
            current.push(row.to_vec());
            let next = Subspace::span(f, self.ambient, &current)?.dim();
            if next > rank {
                rank = next;
                added.push(row.to_vec());
            } else {
                current.pop();
            }
        }
        Ok(added)
    }

    /// Every `r`-dimensional subspace of `F_p^m`, by enumerating RREF
    /// matrices: choose pivot columns, then fill every free slot.
    pub fn grassmannian(
        field: PrimeField,
        ambient: usize,
        r: usize,
    ) -> impl Iterator<Item = Subspace> {
        let p = field.modulus();
        (0..ambient).combinations(r).flat_map(move |pivots| {
            let mut free = Vec::new();
            for (i, &pc) in pivots.iter().enumerate() {
                for c in pc + 1..ambient {
                    if !pivots.contains(&c) {
                        free.push((i, c));
                    }
                }
            }
            let total = (p as u64).pow(free.len() as u32);
            (0..total).map(move |mut code| {
                let mut m = Matrix::zeros(field, r, ambient);
                for (i, &pc) in pivots.iter().enumerate() {
                    m.set(i, pc, 1);
                }
                for &(i, c) in &free {
                    m.set(i, c, (code % p as u64) as u32);
                    code /= p as u64;
                }
                Subspace {
                    ambient,
                    basis: m,
                    pivots: pivots.clone(),
                }
            })
        })
    }
}

/// The standard basis vector `e_{i+1}` of `F^m`.
pub fn unit(ambient: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; ambient];
    v[i] = 1;
    v
}

/// Wire format: `{"p": int, "ambient": int, "basis": [[int,...],...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub p: u64,
    pub ambient: usize,
    pub basis: Vec<Vec<u64>>,
}

impl From<Subspace> for SubspaceJson {
    fn from(s: Subspace) -> Self {
        SubspaceJson {
            p: s.field().modulus() as u64,
            ambient: s.ambient,
            basis: s
                .basis
                .row_vectors()
                .map(|r| r.iter().map(|&v| v as u64).collect())
                .collect(),
        }
    }
}

impl TryFrom<SubspaceJson> for Subspace {
    type Error = Error;

    fn try_from(j: SubspaceJson) -> Result<Subspace> {
        let field = PrimeField::new(j.p)?;
        let mut vectors = Vec::with_capacity(j.basis.len());
        for row in &j.basis {
            if row.iter().any(|&v| v >= j.p) {
                return Err(Error::InvalidParameters(format!(
                    "basis entries must be residues mod {}",
                    j.p
                )));
            }
            vectors.push(row.iter().map(|&v| v as u32).collect::<Vec<_>>());
        }
        let s = Subspace::span(field, j.ambient, &vectors)?;
        if s.dim() != vectors.len() || s.basis_vectors() != vectors {
            return Err(Error::InvalidParameters(
                "subspace basis is not in reduced row echelon form".into(),
            ));
        }
        Ok(s)
    }
}
