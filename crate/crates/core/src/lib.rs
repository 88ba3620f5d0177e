//! Double cosets of the Shalika subgroup and maximal parabolic subgroups in
//! `GL_{2n}` over prime fields.
//!
//! For `1 <= r < 2n`, the double cosets `S \ GL_{2n}(F) / P_{r,2n-r}` are
//! labelled by pairs `(k, l)`; [`cosets`] gives the labels, their count,
//! explicit permutation-matrix representatives, and an algorithm that
//! factors any `g` as `s w p`. [`symgrp`] does the same for the symmetric
//! group, and [`oracle`] checks it all by brute force on small groups.
//!
//! ```
//! use shalika::cosets::{classify, count, decompose};
//! use shalika::{Matrix, PrimeField};
//!
//! let f = PrimeField::new(5)?;
//! let g = Matrix::from_rows(f, &[[1, 2, 0, 1], [0, 1, 3, 0], [4, 0, 1, 1], [0, 0, 2, 1]])?;
//! let d = decompose(&g, 2, 2)?;
//! assert_eq!(d.s.mul(&d.w)?.mul(&d.p)?, g);
//! assert_eq!(d.label, classify(&g, 2, 2)?);
//! assert_eq!(count(2, 2)?, 4);
//! # Ok::<(), shalika::Error>(())
//! ```

pub mod cosets;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod oracle;
pub mod subspace;
pub mod symgrp;

pub use cosets::CosetLabel;
pub use error::{Error, Result};
pub use gf::{FieldElement, PrimeField};
pub use linalg::Matrix;
pub use subspace::Subspace;
pub use symgrp::Permutation;

/// The guide's code listings, compiled and run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields-and-matrices.md")]
    mod fields_and_matrices {}
    #[doc = include_str!("../../../book/src/subspaces.md")]
    mod subspaces {}
    #[doc = include_str!("../../../book/src/double-cosets.md")]
    mod double_cosets {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/coarser-cosets.md")]
    mod coarser_cosets {}
    #[doc = include_str!("../../../book/src/symmetric-group.md")]
    mod symmetric_group {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
