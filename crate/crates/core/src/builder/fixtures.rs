//! Hand-checked embedding sets shipped as data.

use crate::circuits::EmbeddingSet;
use crate::format::parse_set;

fn load(text: &str) -> EmbeddingSet {
    parse_set(text).expect("bundled fixture parses")
}

/// The planar quadrangulation of `L_4`: every `T_i` a triangle.
pub fn planar_k4() -> EmbeddingSet {
    load(include_str!("../../fixtures/planar_k4.txt"))
}

/// A strong embedding set of `K_6^3` (genus 3).
pub fn strong_k6() -> EmbeddingSet {
    load(include_str!("../../fixtures/strong_k6.txt"))
}

/// A non-orientable embedding set of `K_6^3` (crosscap number 6).
///
/// The commonly quoted listing of this set has two transposed entries in
/// each of `T_2` and `T_4` and fails compatibility on the pairs (2,6) and
/// (4,5); see [`nonorientable_k6_as_printed`]. This is the unique repair
/// changing two entries per circuit.
pub fn nonorientable_k6() -> EmbeddingSet {
    load(include_str!("../../fixtures/nonorientable_k6.txt"))
}

/// The non-orientable `K_6^3` listing exactly as published.
pub fn nonorientable_k6_as_printed() -> EmbeddingSet {
    load(include_str!("../../fixtures/nonorientable_k6_printed.txt"))
}

/// A non-orientable embedding set of `2K_4^3` on the Klein bottle.
pub fn klein_2k4() -> EmbeddingSet {
    load(include_str!("../../fixtures/klein_2k4.txt"))
}
