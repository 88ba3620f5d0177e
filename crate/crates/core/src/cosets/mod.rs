//! Double cosets `S \ GL_{2n}(F_p) / P_{r,2n-r}` of the Shalika subgroup
//! `S` and a maximal parabolic subgroup.
//!
//! Each double coset carries a label `(k, l)` with
//!
//! * `max(0, r-n) <= k <= min(r, n)`,
//! * `max(0, r-n) <= l <= min(k, r-k)`,
//!
//! and contains exactly one of the permutation matrices built by
//! [`representative`]. The label of an arbitrary `g` is computed from two
//! subspace dimensions by [`classify`], and [`decompose`] writes
//! `g = s * w * p` explicitly.

mod classify;
mod xspace;

pub use classify::{
    adapted_basis, classify, classify_p, decompose, subspace_label, AdaptedBasis, Decomposition,
};
pub use xspace::{transport_x, XPoint};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::PrimeField;
use crate::linalg::{is_in_parabolic, Matrix};

/// Validates `n >= 1` and `1 <= r < 2n`.
pub fn check_params(n: usize, r: usize) -> Result<()> {
    if n == 0 || r == 0 || r >= 2 * n {
        return Err(Error::InvalidParameters(format!(
            "need n >= 1 and 1 <= r < 2n, got n = {n}, r = {r}"
        )));
    }
    Ok(())
}

/// `max(0, r - n)`: the smallest admissible `k` and `l`.
pub fn alpha(n: usize, r: usize) -> usize {
    r.saturating_sub(n)
}

/// `floor(r / 2)`.
pub fn beta(r: usize) -> usize {
    r / 2
}

/// `min(r, n)`: the largest admissible `k`.
pub fn gamma(n: usize, r: usize) -> usize {
    r.min(n)
}

/// Label `(k, l)` of one `(S, P_{r,2n-r})` double coset in `GL_{2n}`.
///
/// Ordering is lexicographic in `(n, r, k, l)`, so labels for one `(n, r)`
/// sort by `(k, l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CosetLabel {
    n: usize,
    r: usize,
    k: usize,
    l: usize,
}

impl CosetLabel {
    pub fn new(n: usize, r: usize, k: usize, l: usize) -> Result<CosetLabel> {
        check_params(n, r)?;
        let a = alpha(n, r);
        if k < a || k > gamma(n, r) {
            return Err(Error::InvalidLabel(format!(
                "k = {k} outside [{a}, {}] for n = {n}, r = {r}",
                gamma(n, r)
            )));
        }
        if l < a || l > k.min(r - k) {
            return Err(Error::InvalidLabel(format!(
                "l = {l} outside [{a}, {}] for n = {n}, r = {r}, k = {k}",
                k.min(r - k)
            )));
        }
        Ok(CosetLabel { n, r, k, l })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn alpha(&self) -> usize {
        alpha(self.n, self.r)
    }
}

impl std::fmt::Display for CosetLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(k={}, l={})", self.k, self.l)
    }
}

/// All admissible labels for `(n, r)`, sorted by `(k, l)`.
pub fn kl_bounds(n: usize, r: usize) -> Result<Vec<CosetLabel>> {
    check_params(n, r)?;
    let a = alpha(n, r);
    let mut out = Vec::new();
    for k in a..=gamma(n, r) {
        for l in a..=k.min(r - k) {
            out.push(CosetLabel { n, r, k, l });
        }
    }
    Ok(out)
}

/// Closed-form number of double cosets:
/// `((β-α+1)(β-α+2) + (γ-β)(γ-β+1)) / 2`.
pub fn count(n: usize, r: usize) -> Result<u64> {
    check_params(n, r)?;
    let (a, b, g) = (alpha(n, r) as u64, beta(r) as u64, gamma(n, r) as u64);
    Ok(((b - a + 1) * (b - a + 2) + (g - b) * (g - b + 1)) / 2)
}

/// Builds the permutation (as 0-based images `col -> row`) of a block matrix
/// whose nonzero blocks are identities. `placement[i]` is the column block
/// holding the identity in row block `i`. Zero-size blocks simply vanish.
fn assemble_blocks(row_heights: &[usize], col_widths: &[usize], placement: &[usize]) -> Vec<usize> {
    debug_assert_eq!(row_heights.len(), placement.len());
    let offsets = |sizes: &[usize]| -> Vec<usize> {
        sizes
            .iter()
            .scan(0, |acc, &s| {
                let start = *acc;
                *acc += s;
                Some(start)
            })
            .collect()
    };
    let row_start = offsets(row_heights);
    let col_start = offsets(col_widths);
    let m: usize = col_widths.iter().sum();
    let mut images = vec![usize::MAX; m];
    for (rb, &cb) in placement.iter().enumerate() {
        debug_assert_eq!(row_heights[rb], col_widths[cb]);
        for t in 0..row_heights[rb] {
            images[col_start[cb] + t] = row_start[rb] + t;
        }
    }
    images
}

/// Column-to-row images of the permutation matrix `w_{k,l}`.
///
/// Block rows have heights `(k, n-k, l, k-l, r-k-l, n-r+l)`, block columns
/// widths `(k, l, r-k-l, n-k, k-l, n-r+l)`.
pub fn representative_images(label: &CosetLabel) -> Vec<usize> {
    let CosetLabel { n, r, k, l } = *label;
    assemble_blocks(
        &[k, n - k, l, k - l, r - k - l, n + l - r],
        &[k, l, r - k - l, n - k, k - l, n + l - r],
        &[0, 3, 1, 4, 2, 5],
    )
}

/// The representative `w_{k,l}` of the double coset labelled `label`.
pub fn representative(field: PrimeField, label: &CosetLabel) -> Matrix {
    Matrix::permutation(field, &representative_images(label))
        .expect("block layout is a permutation")
}

/// Column-to-row images of `σ_{k,l} = diag(I_n, τ)`, the permutation with
/// `σ_{k,l} · w_{k,α} = w_{k,l}`.
///
/// Block rows: `(k, n-k, α, l-α, k-l, r-k-l, l-α, n-r+α)`; block columns:
/// `(k, n-k, α, k-l, l-α, l-α, r-k-l, n-r+α)`.
pub fn sigma_images(label: &CosetLabel) -> Vec<usize> {
    let CosetLabel { n, r, k, l } = *label;
    let a = label.alpha();
    assemble_blocks(
        &[k, n - k, a, l - a, k - l, r - k - l, l - a, n + a - r],
        &[k, n - k, a, k - l, l - a, l - a, r - k - l, n + a - r],
        &[0, 1, 2, 5, 3, 6, 4, 7],
    )
}

pub fn sigma(field: PrimeField, label: &CosetLabel) -> Matrix {
    Matrix::permutation(field, &sigma_images(label)).expect("block layout is a permutation")
}

/// Labels `(k, α)`; their representatives form a transversal of
/// `P \ GL_{2n} / P_{r,2n-r}` with `P = P_{n,n}`.
pub fn p_coset_labels(n: usize, r: usize) -> Result<Vec<CosetLabel>> {
    check_params(n, r)?;
    let a = alpha(n, r);
    (a..=gamma(n, r))
        .map(|k| CosetLabel::new(n, r, k, a))
        .collect()
}

/// Membership in `J_{k,α} = w_{k,α} P_{r,2n-r} w_{k,α}^{-1} ∩ P_{n,n}`.
pub fn is_in_j_k_alpha(g: &Matrix, n: usize, r: usize, k: usize) -> Result<bool> {
    let label = CosetLabel::new(n, r, k, alpha(n, r))?;
    if g.rows() != 2 * n || g.cols() != 2 * n {
        return Err(Error::DimensionMismatch(format!(
            "expected a {0}x{0} matrix, got {1}x{2}",
            2 * n,
            g.rows(),
            g.cols()
        )));
    }
    if !is_in_parabolic(g, n)? {
        return Ok(false);
    }
    let w = representative(g.field(), &label);
    let conj = w.transpose().mul(g)?.mul(&w)?;
    is_in_parabolic(&conj, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize, r: usize) -> Vec<(usize, usize)> {
        kl_bounds(n, r)
            .unwrap()
            .iter()
            .map(|l| (l.k(), l.l()))
            .collect()
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(labels(2, 2), vec![(0, 0), (1, 0), (1, 1), (2, 0)]);
        assert_eq!(labels(2, 3), vec![(1, 1), (2, 1)]);
        assert_eq!(labels(1, 1), vec![(0, 0), (1, 0)]);
        assert!(kl_bounds(2, 4).is_err());
        assert!(kl_bounds(2, 0).is_err());
        assert!(kl_bounds(0, 1).is_err());
    }

    #[test]
    fn count_examples() {
        assert_eq!(count(2, 2).unwrap(), 4);
        assert_eq!(count(2, 1).unwrap(), 2);
        assert_eq!(count(2, 3).unwrap(), 2);
        assert!(count(3, 6).is_err());
    }

    /// Brute-force count straight from the two inequality chains, written
    /// without reference to `kl_bounds`.
    fn count_by_enumeration(n: usize, r: usize) -> u64 {
        let mut c = 0;
        for k in 0..=2 * n {
            for l in 0..=2 * n {
                let lo = r.saturating_sub(n);
                let k_ok = lo <= k && k <= r.min(n);
                let l_ok = k_ok && lo <= l && l <= k.min(r - k);
                c += l_ok as u64;
            }
        }
        c
    }

    #[test]
    fn count_matches_enumeration() {
        for n in 1..=30 {
            for r in 1..2 * n {
                assert_eq!(
                    count(n, r).unwrap(),
                    count_by_enumeration(n, r),
                    "n={n} r={r}"
                );
                assert_eq!(kl_bounds(n, r).unwrap().len() as u64, count(n, r).unwrap());
            }
        }
    }

    #[test]
    fn label_validation() {
        assert!(CosetLabel::new(2, 3, 0, 0).is_err());
        assert!(CosetLabel::new(2, 2, 2, 1).is_err());
        assert!(CosetLabel::new(2, 2, 3, 0).is_err());
        assert!(CosetLabel::new(2, 2, 1, 1).is_ok());
    }

    #[test]
    fn representative_examples() {
        let field = PrimeField::new(5).unwrap();
        let w = representative(field, &CosetLabel::new(1, 1, 1, 0).unwrap());
        assert_eq!(w, Matrix::identity(field, 2));
        let w = representative(field, &CosetLabel::new(1, 1, 0, 0).unwrap());
        assert_eq!(w, Matrix::from_rows(field, &[[0, 1], [1, 0]]).unwrap());
        for n in 1..=6 {
            for r in 1..2 * n {
                for label in kl_bounds(n, r).unwrap() {
                    assert!(
                        representative(field, &label).is_permutation_matrix(),
                        "{label:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn representative_sends_first_columns_to_model_subspace() {
        // w_{k,l}(e_1..e_r) = {e_1..e_k, e_{n+1}..e_{n+l}, e_{n+k+1}..e_{n+k+r-k-l}}.
        for n in 1..=6 {
            for r in 1..2 * n {
                for label in kl_bounds(n, r).unwrap() {
                    let (k, l) = (label.k(), label.l());
                    let mut image: Vec<usize> = representative_images(&label)[..r].to_vec();
                    image.sort_unstable();
                    let expected: Vec<usize> = (0..k)
                        .chain(n..n + l)
                        .chain(n + k..n + k + (r - k - l))
                        .collect();
                    assert_eq!(image, expected, "{label:?}");
                }
            }
        }
    }

    #[test]
    fn sigma_examples() {
        let field = PrimeField::new(3).unwrap();
        for n in 1..=6 {
            for r in 1..2 * n {
                for label in kl_bounds(n, r).unwrap() {
                    let s = sigma(field, &label);
                    if label.l() == label.alpha() {
                        assert_eq!(s, Matrix::identity(field, 2 * n));
                    }
                    // Block diagonal with two n x n blocks, the first being I_n.
                    assert!(s.block(0, n, n, n).unwrap().is_zero());
                    assert!(s.block(n, 0, n, n).unwrap().is_zero());
                    assert_eq!(s.block(0, 0, n, n).unwrap(), Matrix::identity(field, n));
                    let base = CosetLabel::new(n, r, label.k(), label.alpha()).unwrap();
                    assert_eq!(
                        s.mul(&representative(field, &base)).unwrap(),
                        representative(field, &label)
                    );
                }
            }
        }
    }

    #[test]
    fn j_k_alpha_membership() {
        use rand::SeedableRng;
        let field = PrimeField::new(3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..=3 {
            for r in 1..2 * n {
                for base in p_coset_labels(n, r).unwrap() {
                    let k = base.k();
                    assert!(is_in_j_k_alpha(&Matrix::identity(field, 2 * n), n, r, k).unwrap());
                    let w = representative(field, &base);
                    for _ in 0..20 {
                        // Conjugates of P_{r,2n-r} lie in J exactly when they lie in P.
                        let p = Matrix::random_parabolic(field, 2 * n, r, &mut rng);
                        let c = w.mul(&p).unwrap().mul(&w.transpose()).unwrap();
                        assert_eq!(
                            is_in_j_k_alpha(&c, n, r, k).unwrap(),
                            is_in_parabolic(&c, n).unwrap()
                        );
                        // Anything outside P is rejected.
                        let g = Matrix::random_invertible(field, 2 * n, &mut rng);
                        if !is_in_parabolic(&g, n).unwrap() {
                            assert!(!is_in_j_k_alpha(&g, n, r, k).unwrap());
                        }
                    }
                }
            }
        }
        let i4 = Matrix::identity(field, 4);
        assert!(is_in_j_k_alpha(&i4, 2, 3, 0).is_err());
    }

    #[test]
    fn j_k_alpha_block_pattern() {
        // J_{k,α} in the coordinates (k, n-k | α, k-α, r-k-α, n-r+α) has
        // zero blocks exactly where the starred pattern has zeros. Check
        // every elementary matrix I + E_ij against that pattern.
        let field = PrimeField::new(2).unwrap();
        for n in 1..=4 {
            for r in 1..2 * n {
                for base in p_coset_labels(n, r).unwrap() {
                    let (k, a) = (base.k(), base.alpha());
                    // Column class of each index in the second half:
                    // "wide" columns (α and r-k-α blocks) are zero in rows
                    // of the n-k, k-α and n-r+α blocks.
                    let second_class = |t: usize| -> bool {
                        // true for indices in the α or r-k-α column blocks
                        t < a || (k..k + (r - k - a)).contains(&t)
                    };
                    let row_allowed = |i: usize, j: usize| -> bool {
                        if i == j {
                            return true;
                        }
                        match (i < n, j < n) {
                            (_, true) if i >= n => false,
                            (true, true) => !(i >= k && j < k),
                            (true, false) => !(i >= k && second_class(j - n)),
                            (false, false) => {
                                let (ti, tj) = (i - n, j - n);
                                !(second_class(tj) && !second_class(ti))
                            }
                            _ => unreachable!(),
                        }
                    };
                    for i in 0..2 * n {
                        for j in 0..2 * n {
                            let mut g = Matrix::identity(field, 2 * n);
                            g.set(i, j, 1);
                            if i == j {
                                continue;
                            }
                            assert_eq!(
                                is_in_j_k_alpha(&g, n, r, k).unwrap(),
                                row_allowed(i, j),
                                "n={n} r={r} k={k} entry ({i},{j})"
                            );
                        }
                    }
                }
            }
        }
    }
}
