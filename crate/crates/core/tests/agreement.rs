//! Cross-checks between the closed-form classification, the brute-force
//! partition, and the symmetric-group side.

use std::collections::{BTreeMap, BTreeSet};

use shalika::cosets::{alpha, classify, classify_p, kl_bounds, representative, CosetLabel};
use shalika::oracle::{double_coset_partition, enumerate_group, Generators};
use shalika::symgrp::{subset_label, w_prime, Subset, SubsetLabel};
use shalika::{Matrix, PrimeField, Subspace};

#[test]
fn classify_partition_matches_oracle_on_gl4_f2() {
    for r in 1..4 {
        let part = double_coset_partition(2, 2, r, Generators::Standard).unwrap();
        let mut label_of_class: BTreeMap<usize, CosetLabel> = BTreeMap::new();
        for (c, g) in part.elements() {
            let label = classify(&g, 2, r).unwrap();
            assert_eq!(*label_of_class.entry(c).or_insert(label), label);
        }
        let distinct: BTreeSet<_> = label_of_class.values().collect();
        assert_eq!(distinct.len(), part.class_count());
    }
}

#[test]
fn fibers_over_the_coarser_cosets() {
    let elements: Vec<Matrix> = enumerate_group(4, 2).unwrap().collect();
    assert_eq!(elements.len(), 20160);
    let n = 2;
    for r in 1..4 {
        let a = alpha(n, r);
        let mut fibers: BTreeMap<usize, BTreeSet<(usize, usize)>> = BTreeMap::new();
        for g in &elements {
            let label = classify(g, n, r).unwrap();
            let k = classify_p(g, n, r).unwrap();
            assert_eq!(k, label.k());
            fibers.entry(k).or_default().insert((label.k(), label.l()));
        }
        for (k, labels) in fibers {
            let expected: BTreeSet<_> = (a..=k.min(r - k)).map(|l| (k, l)).collect();
            assert_eq!(labels, expected, "r={r}, k={k}");
        }
    }
}

#[test]
fn representatives_classify_to_their_labels() {
    for p in [2, 3, 5] {
        let f = PrimeField::new(p).unwrap();
        for n in 1..=8 {
            for r in 1..2 * n {
                for label in kl_bounds(n, r).unwrap() {
                    assert_eq!(classify(&representative(f, &label), n, r).unwrap(), label);
                }
            }
        }
    }
}

#[test]
fn generator_choice_does_not_change_the_partition() {
    for r in 1..4 {
        let a = double_coset_partition(2, 2, r, Generators::Standard).unwrap();
        let b = double_coset_partition(2, 2, r, Generators::Alternate).unwrap();
        assert!(a.same_partition(&b));
    }
    let a = double_coset_partition(1, 11, 1, Generators::Standard).unwrap();
    let b = double_coset_partition(1, 11, 1, Generators::Alternate).unwrap();
    assert!(a.same_partition(&b));
}

#[test]
fn subset_labels_match_subspace_labels() {
    // The coordinate subspace spanned by e_i, i ∈ A, has the same label as A.
    let f = PrimeField::new(3).unwrap();
    for n in 1..=4 {
        for r in 1..2 * n {
            for a in Subset::all_of_size(2 * n, r) {
                let idx: Vec<usize> = a.elements().map(|x| x - 1).collect();
                let w = Subspace::coordinate(f, 2 * n, &idx).unwrap();
                let lab = shalika::cosets::subspace_label(&w, n).unwrap();
                assert_eq!(
                    subset_label(&a, n).unwrap(),
                    SubsetLabel {
                        k: lab.k(),
                        l: lab.l()
                    }
                );
            }
        }
    }
}

#[test]
fn w_prime_moves_the_first_block_to_the_model_subset() {
    for n in 1..=6 {
        for r in 1..2 * n {
            let first = Subset::from_elements(2 * n, 1..=r).unwrap();
            for label in kl_bounds(n, r).unwrap() {
                let image = w_prime(&label).apply_subset(&first);
                assert_eq!(
                    subset_label(&image, n).unwrap(),
                    SubsetLabel {
                        k: label.k(),
                        l: label.l()
                    }
                );
            }
        }
    }
}

#[test]
fn json_round_trips() {
    let f = PrimeField::new(7).unwrap();
    let g = representative(f, &CosetLabel::new(3, 2, 1, 1).unwrap());
    let text = serde_json::to_string(&g).unwrap();
    assert_eq!(serde_json::from_str::<Matrix>(&text).unwrap(), g);

    let w = Subspace::column_span(&g.block(0, 0, 6, 2).unwrap());
    let text = serde_json::to_string(&w).unwrap();
    assert_eq!(serde_json::from_str::<Subspace>(&text).unwrap(), w);

    let sigma = w_prime(&CosetLabel::new(3, 2, 1, 1).unwrap());
    let text = serde_json::to_string(&sigma).unwrap();
    assert_eq!(
        serde_json::from_str::<shalika::Permutation>(&text).unwrap(),
        sigma
    );
}
