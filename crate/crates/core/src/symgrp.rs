//! The symmetric-group shadow of the double coset problem:
//! `ΔS_n \ S_{2n} / (S_r × S_{2n-r})`.
//!
//! `ΔS_n` is the group of permutations of `{1..2n}` that preserve `{1..n}`
//! and satisfy `σ(n+j) = n + σ(j)`; `S_r × S_{2n-r}` permutes `{1..r}` and
//! `{r+1..2n}` separately. Double cosets correspond to `ΔS_n`-orbits on
//! `r`-subsets of `{1..2n}` via `σ ↦ σ({1..r})`.

use std::collections::{HashMap, VecDeque};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::cosets::{check_params, kl_bounds, CosetLabel};
use crate::error::{Error, Result};
use crate::gf::PrimeField;
use crate::linalg::Matrix;

/// Largest `n` for which [`brute_force_sym_cosets`] runs (`|S_8| = 40320`).
pub const MAX_BRUTE_N: usize = 4;

/// A permutation of `{1..m}`, stored as one-line notation:
/// `images[i] = σ(i + 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let m = images.len();
        let mut seen = vec![false; m + 1];
        for &x in &images {
            if x == 0 || x > m || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidParameters(format!(
                    "{images:?} is not a permutation of 1..{m}"
                )));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(m: usize) -> Permutation {
        Permutation {
            images: (1..=m).collect(),
        }
    }

    /// The transposition `(a b)` in `S_m`.
    pub fn transposition(m: usize, a: usize, b: usize) -> Permutation {
        let mut images: Vec<usize> = (1..=m).collect();
        images.swap(a - 1, b - 1);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `σ(i)` for `1 <= i <= m`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            other.degree(),
            "degree mismatch in composition"
        );
        Permutation {
            images: other.images.iter().map(|&x| self.images[x - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x - 1] = i + 1;
        }
        Permutation { images }
    }

    /// The permutation matrix with `e_j ↦ e_{σ(j)}`.
    pub fn to_matrix(&self, field: PrimeField) -> Matrix {
        let zero_based: Vec<usize> = self.images.iter().map(|&x| x - 1).collect();
        Matrix::permutation(field, &zero_based).expect("valid permutation")
    }

    /// The image `σ(A)`.
    pub fn apply_subset(&self, a: &Subset) -> Subset {
        assert_eq!(self.degree(), a.degree, "degree mismatch");
        let mut mask = 0;
        for i in a.elements() {
            mask |= 1 << (self.apply(i) - 1);
        }
        Subset {
            mask,
            degree: a.degree,
        }
    }

    fn code(&self) -> u64 {
        self.images
            .iter()
            .fold(0u64, |acc, &x| (acc << 4) | x as u64)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Permutation> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.images
    }
}

/// A subset of `{1..degree}` as a bitmask (bit `i-1` for element `i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    mask: u64,
    degree: usize,
}

impl Subset {
    pub fn from_elements<I: IntoIterator<Item = usize>>(
        degree: usize,
        elements: I,
    ) -> Result<Subset> {
        if degree > 64 {
            return Err(Error::SizeLimit(format!("subsets of 1..{degree}")));
        }
        let mut mask = 0;
        for x in elements {
            if x == 0 || x > degree {
                return Err(Error::InvalidParameters(format!(
                    "{x} is not in 1..{degree}"
                )));
            }
            mask |= 1u64 << (x - 1);
        }
        Ok(Subset { mask, degree })
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, x: usize) -> bool {
        (1..=self.degree).contains(&x) && self.mask >> (x - 1) & 1 == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.degree).filter(|&x| self.contains(x))
    }

    /// All `r`-subsets of `{1..degree}`.
    pub fn all_of_size(degree: usize, r: usize) -> impl Iterator<Item = Subset> {
        (1..=degree)
            .combinations(r)
            .map(move |c| Subset::from_elements(degree, c).expect("in range"))
    }
}

/// Orbit invariants of an `r`-subset `A`: `k = |A ∩ {1..n}|` and
/// `l = |η(A ∩ {1..n}) ∩ A|` with `η(j) = n + j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubsetLabel {
    pub k: usize,
    pub l: usize,
}

/// Membership in `ΔS_n`.
pub fn is_in_delta_sn(sigma: &Permutation, n: usize) -> Result<bool> {
    if sigma.degree() != 2 * n {
        return Err(Error::DimensionMismatch(format!(
            "permutation of degree {} tested against ΔS_{n}",
            sigma.degree()
        )));
    }
    Ok((1..=n).all(|j| sigma.apply(j) <= n && sigma.apply(n + j) == n + sigma.apply(j)))
}

pub fn subset_label(a: &Subset, n: usize) -> Result<SubsetLabel> {
    if a.degree() != 2 * n {
        return Err(Error::DimensionMismatch(format!(
            "subset of 1..{} for n = {n}",
            a.degree()
        )));
    }
    let low = a.mask & ((1u64 << n) - 1);
    let shifted = low << n;
    Ok(SubsetLabel {
        k: low.count_ones() as usize,
        l: (shifted & a.mask).count_ones() as usize,
    })
}

/// The permutation `w'_{k,l}` whose matrix is `w_{k,l}`:
///
/// * `j ↦ j` for `1 <= j <= k` and `n+r-l+1 <= j <= 2n`,
/// * `k+j ↦ n+j` for `1 <= j <= l`,
/// * `k+l+j ↦ n+k+j` for `1 <= j <= r-k-l`,
/// * `r+j ↦ k+j` for `1 <= j <= n-k`,
/// * `n+r-k+j ↦ n+l+j` for `1 <= j <= k-l`.
pub fn w_prime(label: &CosetLabel) -> Permutation {
    let (n, r, k, l) = (label.n(), label.r(), label.k(), label.l());
    let mut images = vec![0; 2 * n];
    let mut map = |from: usize, to: usize| images[from - 1] = to;
    for j in 1..=k {
        map(j, j);
    }
    for j in n + r - l + 1..=2 * n {
        map(j, j);
    }
    for j in 1..=l {
        map(k + j, n + j);
    }
    for j in 1..=r - k - l {
        map(k + l + j, n + k + j);
    }
    for j in 1..=n - k {
        map(r + j, k + j);
    }
    for j in 1..=k - l {
        map(n + r - k + j, n + l + j);
    }
    Permutation::new(images).expect("the clauses partition 1..2n")
}

/// `(label, w'_{k,l})` for every admissible label, in `(k, l)` order.
pub fn delta_orbit_transversal(n: usize, r: usize) -> Result<Vec<(SubsetLabel, Permutation)>> {
    Ok(kl_bounds(n, r)?
        .iter()
        .map(|lab| {
            (
                SubsetLabel {
                    k: lab.k(),
                    l: lab.l(),
                },
                w_prime(lab),
            )
        })
        .collect())
}

/// Generators `(i i+1)(n+i n+i+1)` of `ΔS_n`.
pub fn delta_sn_generators(n: usize) -> Vec<Permutation> {
    (1..n)
        .map(|i| {
            Permutation::transposition(2 * n, i, i + 1).compose(&Permutation::transposition(
                2 * n,
                n + i,
                n + i + 1,
            ))
        })
        .collect()
}

/// Adjacent transpositions generating `S_r × S_{2n-r}`, the latter acting on
/// `{r+1..2n}`.
pub fn young_generators(n: usize, r: usize) -> Vec<Permutation> {
    (1..r)
        .chain(r + 1..2 * n)
        .map(|i| Permutation::transposition(2 * n, i, i + 1))
        .collect()
}

/// A partition of `S_{2n}` into `(ΔS_n, S_r × S_{2n-r})` double cosets.
#[derive(Debug, Clone)]
pub struct SymPartition {
    pub n: usize,
    pub r: usize,
    /// Classes in order of discovery; each lists its elements in the order
    /// the closure reached them.
    pub classes: Vec<Vec<Permutation>>,
}

impl SymPartition {
    pub fn class_of(&self, sigma: &Permutation) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(sigma))
    }
}

/// Partitions `S_{2n}` by closing each unvisited permutation under left
/// multiplication by `ΔS_n` generators and right multiplication by
/// `S_r × S_{2n-r}` generators. Only for `n <= 4`.
pub fn brute_force_sym_cosets(n: usize, r: usize) -> Result<SymPartition> {
    check_params(n, r)?;
    if n > MAX_BRUTE_N {
        return Err(Error::SizeLimit(format!(
            "brute force over S_{} needs n <= {MAX_BRUTE_N}",
            2 * n
        )));
    }
    let all: Vec<Permutation> = (1..=2 * n)
        .permutations(2 * n)
        .map(|images| Permutation { images })
        .collect();
    let index: HashMap<u64, usize> = all.iter().enumerate().map(|(i, p)| (p.code(), i)).collect();
    let left = delta_sn_generators(n);
    let right = young_generators(n, r);

    let mut visited = vec![false; all.len()];
    let mut classes = Vec::new();
    for seed in 0..all.len() {
        if visited[seed] {
            continue;
        }
        visited[seed] = true;
        let mut class = Vec::new();
        let mut queue = VecDeque::from([seed]);
        while let Some(i) = queue.pop_front() {
            let x = &all[i];
            let neighbours = left
                .iter()
                .map(|h| h.compose(x))
                .chain(right.iter().map(|k| x.compose(k)));
            for y in neighbours {
                let j = index[&y.code()];
                if !visited[j] {
                    visited[j] = true;
                    queue.push_back(j);
                }
            }
            class.push(x.clone());
        }
        classes.push(class);
    }
    Ok(SymPartition { n, r, classes })
}

/// `ΔS_n`-orbits on `r`-subsets of `{1..2n}`, by closure under the
/// generators of `ΔS_n`.
pub fn delta_subset_orbits(n: usize, r: usize) -> Result<Vec<Vec<Subset>>> {
    check_params(n, r)?;
    if 2 * n > 20 {
        return Err(Error::SizeLimit(format!("subsets of 1..{}", 2 * n)));
    }
    let gens = delta_sn_generators(n);
    let mut seen = HashMap::new();
    let mut orbits: Vec<Vec<Subset>> = Vec::new();
    for a in Subset::all_of_size(2 * n, r) {
        if seen.contains_key(&a.mask) {
            continue;
        }
        let id = orbits.len();
        seen.insert(a.mask, id);
        let mut orbit = vec![a];
        let mut cursor = 0;
        while cursor < orbit.len() {
            let x = orbit[cursor];
            cursor += 1;
            for g in &gens {
                let y = g.apply_subset(&x);
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(y.mask) {
                    e.insert(id);
                    orbit.push(y);
                }
            }
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}
