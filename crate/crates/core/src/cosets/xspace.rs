//! Points `(W, j)` with `W` an `n`-dimensional subspace of `F^{2n}` and
//! `j : W -> F^{2n}/W` an isomorphism, and the transitive action
//! `g · (W, j) = (g(W), ḡ ∘ j ∘ g^{-1})`.
//!
//! Coordinates: `W` is described by its canonical basis `b_1..b_n`, and
//! `F^{2n}/W` by the standard basis vectors at the non-pivot columns of that
//! basis. Column `i` of the stored matrix holds the quotient coordinates of
//! `j(b_i)`. For `W0 = span(e_1..e_n)` the complement is `e_{n+1}..e_{2n}`,
//! so the base point `(W0, j0)` has matrix `I_n` and its stabilizer is the
//! Shalika subgroup.

use crate::error::{Error, Result};
use crate::gf::PrimeField;
use crate::linalg::Matrix;
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct XPoint {
    subspace: Subspace,
    j: Matrix,
}

impl XPoint {
    pub fn new(subspace: Subspace, j: Matrix) -> Result<XPoint> {
        let m = subspace.ambient_dim();
        if m % 2 != 0 || subspace.dim() != m / 2 {
            return Err(Error::InvalidParameters(format!(
                "need an n-dimensional subspace of F^(2n), got dimension {} in F^{m}",
                subspace.dim()
            )));
        }
        let n = m / 2;
        if j.field() != subspace.field() {
            return Err(Error::FieldMismatch {
                left: subspace.field().modulus(),
                right: j.field().modulus(),
            });
        }
        if j.rows() != n || j.cols() != n {
            return Err(Error::DimensionMismatch(format!("j must be {n}x{n}")));
        }
        if !j.is_invertible() {
            return Err(Error::InvalidParameters("j must be an isomorphism".into()));
        }
        Ok(XPoint { subspace, j })
    }

    /// `(W0, j0)` with `j0(e_i) = e_{n+i} + W0`.
    pub fn base(field: PrimeField, n: usize) -> XPoint {
        let w0 = Subspace::coordinate(field, 2 * n, &(0..n).collect::<Vec<_>>())
            .expect("indices are in range");
        XPoint {
            subspace: w0,
            j: Matrix::identity(field, n),
        }
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn j_matrix(&self) -> &Matrix {
        &self.j
    }

    pub fn n(&self) -> usize {
        self.j.rows()
    }

    /// A representative in `F^{2n}` of `j(v)` for `v ∈ W`.
    pub fn apply_j(&self, v: &[u32]) -> Result<Vec<u32>> {
        let coords = self.subspace.coordinates(v)?.ok_or(Error::NotContained)?;
        self.subspace.quotient_lift(&self.j.mul_vec(&coords)?)
    }

    /// `g · (W, j)`.
    pub fn act(&self, g: &Matrix) -> Result<XPoint> {
        let image = self.subspace.apply(g)?;
        let g_inv = g.inverse()?;
        let columns = image
            .basis()
            .row_vectors()
            .map(|b| {
                let pulled = g_inv.mul_vec(b)?;
                let pushed = g.mul_vec(&self.apply_j(&pulled)?)?;
                image.quotient_coordinates(&pushed)
            })
            .collect::<Result<Vec<_>>>()?;
        let j = Matrix::from_columns(g.field(), self.n(), &columns)?;
        Ok(XPoint { subspace: image, j })
    }

    /// The basis `v_1..v_{2n}` with `v_i = b_i` and `v_{n+i}` the standard
    /// lift of `j(b_i)`.
    fn frame(&self) -> Result<Matrix> {
        let mut columns = self.subspace.basis_vectors();
        for i in 0..self.n() {
            columns.push(self.subspace.quotient_lift(&self.j.column(i))?);
        }
        Matrix::from_columns(self.j.field(), 2 * self.n(), &columns)
    }
}

/// Some `g` with `g · from = to`, built by matching the frames of the two
/// points.
pub fn transport_x(from: &XPoint, to: &XPoint) -> Result<Matrix> {
    if from.n() != to.n() {
        return Err(Error::DimensionMismatch(format!(
            "points of X for n = {} and n = {}",
            from.n(),
            to.n()
        )));
    }
    if from.j.field() != to.j.field() {
        return Err(Error::FieldMismatch {
            left: from.j.field().modulus(),
            right: to.j.field().modulus(),
        });
    }
    to.frame()?.mul(&from.frame()?.inverse()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_in_shalika;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_point(field: PrimeField, n: usize, rng: &mut ChaCha8Rng) -> XPoint {
        loop {
            let w = Subspace::row_span(&Matrix::random(field, n, 2 * n, rng));
            if w.dim() == n {
                return XPoint::new(w, Matrix::random_invertible(field, n, rng)).unwrap();
            }
        }
    }

    #[test]
    fn base_point_transport_lies_in_shalika() {
        let field = PrimeField::new(3).unwrap();
        for n in 1..=4 {
            let base = XPoint::base(field, n);
            let g = transport_x(&base, &base).unwrap();
            assert!(is_in_shalika(&g, n).unwrap());
            assert_eq!(base.act(&g).unwrap(), base);
        }
    }

    #[test]
    fn shalika_stabilizes_base_point_and_nothing_else_does() {
        let field = PrimeField::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 2;
        let base = XPoint::base(field, n);
        for _ in 0..200 {
            let s = Matrix::random_shalika(field, n, &mut rng);
            assert_eq!(base.act(&s).unwrap(), base);
            let g = Matrix::random_invertible(field, 2 * n, &mut rng);
            assert_eq!(base.act(&g).unwrap() == base, is_in_shalika(&g, n).unwrap());
        }
    }

    #[test]
    fn action_is_a_group_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for (p, n) in [(2, 2), (3, 2), (5, 3)] {
            let field = PrimeField::new(p).unwrap();
            for _ in 0..30 {
                let x = random_point(field, n, &mut rng);
                let g = Matrix::random_invertible(field, 2 * n, &mut rng);
                let h = Matrix::random_invertible(field, 2 * n, &mut rng);
                assert_eq!(x.act(&Matrix::identity(field, 2 * n)).unwrap(), x);
                assert_eq!(
                    x.act(&h).unwrap().act(&g).unwrap(),
                    x.act(&g.mul(&h).unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn transport_reaches_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for (p, n) in [(2, 1), (2, 3), (3, 2), (7, 2)] {
            let field = PrimeField::new(p).unwrap();
            let base = XPoint::base(field, n);
            for _ in 0..30 {
                let a = random_point(field, n, &mut rng);
                let b = random_point(field, n, &mut rng);
                let g = transport_x(&base, &b).unwrap();
                assert_eq!(base.act(&g).unwrap(), b);
                let ab = transport_x(&a, &b).unwrap();
                assert_eq!(a.act(&ab).unwrap(), b);
                let ba = transport_x(&b, &a).unwrap();
                assert_eq!(a.act(&ba.mul(&ab).unwrap()).unwrap(), a);
            }
        }
    }

    #[test]
    fn rejects_points_outside_x() {
        let field = PrimeField::new(5).unwrap();
        let w = Subspace::coordinate(field, 4, &[0]).unwrap();
        assert!(XPoint::new(w, Matrix::identity(field, 1)).is_err());
        let w = Subspace::coordinate(field, 4, &[0, 1]).unwrap();
        assert!(XPoint::new(w.clone(), Matrix::zeros(field, 2, 2)).is_err());
        assert!(XPoint::new(w, Matrix::identity(field, 3)).is_err());
    }
}
