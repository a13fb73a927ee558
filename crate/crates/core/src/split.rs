//! Seeded stratified splitting of labelled index sets.
//!
//! Both the pipeline's train/val/test partition and cross-validation reuse
//! the same scheme: shuffle each class separately with a seeded RNG, carve
//! off the tail parts by `floor(fraction × class size)`, and give the
//! remainder to the head part, so the head (train) absorbs rounding.  Within
//! each part the indices are re-sorted ascending to keep downstream
//! iteration order independent of the shuffle.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Splits `labels` into `1 + tail_fractions.len()` stratified parts.
///
/// Part 0 receives every index not claimed by a tail part; tail part `t`
/// receives `floor(tail_fractions[t] × n_c)` indices of each class `c`.
pub fn stratified_split(labels: &[u8], tail_fractions: &[f64], seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let classes: Vec<u8> = {
        let mut cs: Vec<u8> = labels.to_vec();
        cs.sort_unstable();
        cs.dedup();
        cs
    };

    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); 1 + tail_fractions.len()];
    for class in classes {
        let mut indices: Vec<usize> = labels
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == class)
            .map(|(i, _)| i)
            .collect();
        indices.shuffle(&mut rng);
        let n_c = indices.len();
        let mut cursor = 0;
        for (t, fraction) in tail_fractions.iter().enumerate() {
            let take = (fraction * n_c as f64).floor() as usize;
            parts[1 + t].extend(&indices[cursor..cursor + take]);
            cursor += take;
        }
        parts[0].extend(&indices[cursor..]);
    }
    for part in &mut parts {
        part.sort_unstable();
    }
    parts
}

/// Two-way stratified holdout: `(head, holdout)` with
/// `floor(holdout_fraction × n_c)` samples of each class held out.
pub fn stratified_holdout(
    labels: &[u8],
    holdout_fraction: f64,
    seed: u64,
) -> (Vec<usize>, Vec<usize>) {
    let mut parts = stratified_split(labels, &[holdout_fraction], seed);
    let holdout = parts.pop().expect("two parts");
    let head = parts.pop().expect("one part");
    (head, holdout)
}

/// Stratified `k`-fold partition: each class is shuffled once and dealt
/// round-robin, so fold sizes differ by at most one per class.
pub fn stratified_k_folds(labels: &[u8], k: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let classes: Vec<u8> = {
        let mut cs: Vec<u8> = labels.to_vec();
        cs.sort_unstable();
        cs.dedup();
        cs
    };
    let mut folds: Vec<Vec<usize>> = vec![Vec::new(); k];
    for class in classes {
        let mut indices: Vec<usize> = labels
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == class)
            .map(|(i, _)| i)
            .collect();
        indices.shuffle(&mut rng);
        for (pos, idx) in indices.into_iter().enumerate() {
            folds[pos % k].push(idx);
        }
    }
    for fold in &mut folds {
        fold.sort_unstable();
    }
    folds
}
