//! Seeded random boxes with exact rational entries.

use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::Rng;

use crate::boxes::{self, CorrBox};
use crate::rat::Rat;

/// A random mixture of up to `max_terms` of the 24 non-signalling vertices,
/// with integer weights in `1..=max_weight` normalized to sum to 1.
pub fn random_ns_box<R: Rng>(rng: &mut R, max_terms: usize, max_weight: u32) -> CorrBox {
    let mut vertices = boxes::local_vertices();
    vertices.extend(boxes::nonlocal_vertices());
    let terms = rng.gen_range(1..=max_terms.max(1));
    let picked: Vec<CorrBox> = (0..terms)
        .map(|_| vertices[rng.gen_range(0..vertices.len())].clone())
        .collect();
    let raw: Vec<u32> = (0..terms).map(|_| rng.gen_range(1..=max_weight.max(1))).collect();
    let total: u32 = raw.iter().sum();
    let weights: Vec<Rat> = raw
        .iter()
        .map(|&w| Rat::new(BigInt::from(w), BigInt::from(total)))
        .collect();
    boxes::mix(&picked, &weights).expect("vertex mixtures are valid")
}

/// Defaults used by the locality agreement checks: up to 4 vertices, weights up to 12.
pub fn random_box<R: Rng>(rng: &mut R) -> CorrBox {
    random_ns_box(rng, 4, 12)
}
