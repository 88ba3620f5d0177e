//! Invariant-based classification and the explicit factorization
//! `g = s * w_{k,l} * p`.
//!
//! Throughout, `W0 = span(e_1..e_n)` and the quotient `F^{2n} / W0` is
//! identified with `F^n` through the last `n` coordinates. The isomorphism
//! `j0 : W0 -> F^{2n}/W0`, `e_i -> e_{n+i} + W0`, then just moves the first
//! block of coordinates to the second.

use serde::Serialize;

use super::{representative, CosetLabel};
use crate::error::{Error, Result};
use crate::gf::PrimeField;
use crate::linalg::{is_in_parabolic, is_in_shalika, Matrix};
use crate::subspace::Subspace;

fn check_group_element(g: &Matrix, n: usize) -> Result<()> {
    if g.rows() != 2 * n || g.cols() != 2 * n {
        return Err(Error::DimensionMismatch(format!(
            "expected a {0}x{0} matrix, got {1}x{2}",
            2 * n,
            g.rows(),
            g.cols()
        )));
    }
    if !g.is_invertible() {
        return Err(Error::Singular);
    }
    Ok(())
}

fn w0(field: PrimeField, n: usize) -> Subspace {
    Subspace::coordinate(field, 2 * n, &(0..n).collect::<Vec<_>>()).expect("indices are in range")
}

/// `j0(U)` for `U ⊆ W0`, as a subspace of `F^n`.
fn j0_image(u: &Subspace, n: usize) -> Subspace {
    let head = u.basis().block(0, 0, u.dim(), n).expect("ambient is 2n");
    Subspace::row_span(&head)
}

/// `j0^{-1}`: the vector of `W0` whose first block is `u`.
fn j0_inverse(u: &[u32]) -> Vec<u32> {
    let mut v = u.to_vec();
    v.resize(2 * u.len(), 0);
    v
}

/// A lift of `v + W0` in the complement `span(e_{n+1}..e_{2n})`: the vector
/// `(0, u)`.
fn quotient_lift(u: &[u32]) -> Vec<u32> {
    let mut v = vec![0; u.len()];
    v.extend_from_slice(u);
    v
}

/// Span of the first `r` columns of `g`, i.e. `g(span(e_1..e_r))`.
fn first_columns(g: &Matrix, r: usize) -> Subspace {
    Subspace::column_span(&g.block(0, 0, g.rows(), r).expect("r <= 2n"))
}

/// The label of the orbit of `((W0, j0), w)`:
/// `k = dim(w ∩ W0)` and `l = dim(j0(w ∩ W0) ∩ (w + W0)/W0)`.
pub fn subspace_label(w: &Subspace, n: usize) -> Result<CosetLabel> {
    if w.ambient_dim() != 2 * n {
        return Err(Error::DimensionMismatch(format!(
            "subspace of F^{} for n = {n}",
            w.ambient_dim()
        )));
    }
    let meet = w.intersect(&w0(w.field(), n))?;
    let l = j0_image(&meet, n).intersect(&w.project_last(n)?)?.dim();
    CosetLabel::new(n, w.dim(), meet.dim(), l)
}

/// The label of the double coset `S g P_{r,2n-r}`.
pub fn classify(g: &Matrix, n: usize, r: usize) -> Result<CosetLabel> {
    super::check_params(n, r)?;
    check_group_element(g, n)?;
    subspace_label(&first_columns(g, r), n)
}

/// The label `k` of the coarser double coset `P g P_{r,2n-r}`, `P = P_{n,n}`.
pub fn classify_p(g: &Matrix, n: usize, r: usize) -> Result<usize> {
    super::check_params(n, r)?;
    check_group_element(g, n)?;
    Ok(first_columns(g, r).intersect(&w0(g.field(), n))?.dim())
}

/// A basis `v_1..v_{2n}` of `F^{2n}` adapted to `W0`, `j0` and a subspace `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub label: CosetLabel,
    /// `v_1, ..., v_{2n}` as column vectors.
    pub vectors: Vec<Vec<u32>>,
}

impl AdaptedBasis {
    /// The matrix with columns `v_1..v_{2n}`. It lies in `S` and maps the
    /// model subspace of its label onto `W`.
    pub fn matrix(&self, field: PrimeField) -> Matrix {
        let m = self.vectors.len();
        Matrix::from_columns(field, m, &self.vectors).expect("vectors have length 2n")
    }
}

/// Constructs a basis `v_1..v_{2n}` with
///
/// * (a) `v_1..v_n` a basis of `W0`, and the last-`n` parts of
///   `v_{n+1}..v_{2n}` a basis of `F^n`;
/// * (b) `{v_1..v_k} ∪ {v_{n+1}..v_{n+l}} ∪ {v_{n+k+1}..v_{n+r-l}}` a basis of `W`;
/// * (c) `j0(v_i) = v_{n+i} + W0` for `i <= n`.
///
/// The construction: pick `v_{n+1}..v_{n+l}` in `W` whose images in the
/// quotient span `j0(W ∩ W0) ∩ (W + W0)/W0`, extend those images to a basis
/// of `(W + W0)/W0` with further vectors of `W`, pull the images back through
/// `j0` to get `v_1..v_l` and `v_{k+1}..v_{r-l}`, extend `v_1..v_l` inside
/// `W ∩ W0`, complete to a basis of `W0`, and finally choose lifts
/// `v_{n+i} = (0, first block of v_i)` for the indices not yet covered.
pub fn adapted_basis(w: &Subspace, n: usize) -> Result<AdaptedBasis> {
    let label = subspace_label(w, n)?;
    let (r, k, l) = (label.r(), label.k(), label.l());
    let field = w.field();
    let w0 = w0(field, n);

    let meet = w.intersect(&w0)?;
    let projection = w.project_last(n)?;
    let common = j0_image(&meet, n).intersect(&projection)?;
    debug_assert_eq!(common.dim(), l);

    // Lifting u ∈ (W + W0)/W0 to W: solve B_last^T c = u, then take c^T B.
    let basis_t = w.basis().transpose();
    let tail_t = w.basis().block(0, n, r, n)?.transpose();
    let lift_into_w = |u: &[u32]| -> Result<Vec<u32>> {
        let c = tail_t
            .solve(u)?
            .ok_or_else(|| Error::Verification("quotient vector has no preimage in W".into()))?;
        basis_t.mul_vec(&c)
    };

    let common_images = common.basis_vectors();
    let rest_images = projection.extend_basis(&common_images)?;
    debug_assert_eq!(rest_images.len(), r - k - l);

    let mut v: Vec<Option<Vec<u32>>> = vec![None; 2 * n];
    for (i, u) in common_images.iter().enumerate() {
        v[n + i] = Some(lift_into_w(u)?);
        v[i] = Some(j0_inverse(u));
    }
    for (i, u) in rest_images.iter().enumerate() {
        v[n + k + i] = Some(lift_into_w(u)?);
        v[k + i] = Some(j0_inverse(u));
    }

    let head: Vec<Vec<u32>> = v[..l].iter().flatten().cloned().collect();
    for (i, x) in meet.extend_basis(&head)?.into_iter().enumerate() {
        v[l + i] = Some(x);
    }

    let head: Vec<Vec<u32>> = v[..r - l]
        .iter()
        .map(|x| x.clone().expect("filled above"))
        .collect();
    for (i, x) in w0.extend_basis(&head)?.into_iter().enumerate() {
        v[r - l + i] = Some(x);
    }

    for i in (l..k).chain(r - l..n) {
        let first = v[i].as_ref().expect("v_1..v_n filled")[..n].to_vec();
        v[n + i] = Some(quotient_lift(&first));
    }

    let vectors = v
        .into_iter()
        .map(|x| x.ok_or_else(|| Error::Verification("adapted basis left a slot empty".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(AdaptedBasis { label, vectors })
}

/// `g = s * w * p` with `s ∈ S`, `w` the representative of `label`, and
/// `p ∈ P_{r,2n-r}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub s: Matrix,
    pub w: Matrix,
    pub p: Matrix,
    pub label: CosetLabel,
}

/// Factors `g` through its double coset representative.
///
/// `s` is the adapted basis of `g(span(e_1..e_r))`; it lies in `S` and
/// carries the model subspace of the label onto that subspace, so
/// `p = w^{-1} s^{-1} g` fixes `span(e_1..e_r)`. Every property is checked
/// before returning; a failure is reported as [`Error::Verification`].
pub fn decompose(g: &Matrix, n: usize, r: usize) -> Result<Decomposition> {
    let label = classify(g, n, r)?;
    let field = g.field();
    let basis = adapted_basis(&first_columns(g, r), n)?;
    if basis.label != label {
        return Err(Error::Verification(format!(
            "adapted basis label {} differs from {}",
            basis.label, label
        )));
    }
    let s = basis.matrix(field);
    let w = representative(field, &label);
    let s_inv = s
        .inverse()
        .map_err(|_| Error::Verification("adapted basis is not a basis".into()))?;
    let p = w.transpose().mul(&s_inv)?.mul(g)?;

    if !is_in_shalika(&s, n)? {
        return Err(Error::Verification(
            "s is not in the Shalika subgroup".into(),
        ));
    }
    if !is_in_parabolic(&p, r)? {
        return Err(Error::Verification(
            "p is not in the parabolic subgroup".into(),
        ));
    }
    if s.mul(&w)?.mul(&p)? != *g {
        return Err(Error::Verification("s * w * p does not reproduce g".into()));
    }
    Ok(Decomposition { s, w, p, label })
}
