//! Counting and telling apart embedding sets: canonical forms, relabelling
//! isomorphism, seeded enumeration of distinct constructions, and the exact
//! counting bounds.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::builder::{build_even, Choices, TransitionChoice};
use crate::circuits::{is_compatible, Circuit, EmbeddingSet};
use crate::error::{Error, Result};
use crate::levi::{genus_formula, HypergraphSpec, Vertex};
use crate::scheme::{set_to_scheme, trace_faces};

/// Least rotation of `seq`.
fn least_rotation(seq: &[Vertex]) -> Vec<Vertex> {
    let len = seq.len();
    (0..len)
        .map(|k| (0..len).map(|p| seq[(p + k) % len]).collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Least rotation of the circuit or of its reverse.
pub fn canonical_circuit(seq: &[Vertex]) -> Vec<Vertex> {
    let rev: Vec<Vertex> = seq.iter().rev().copied().collect();
    least_rotation(seq).min(least_rotation(&rev))
}

/// Normal form of an embedding set up to rotating and reversing circuits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalSet {
    pub n: u32,
    pub m: u32,
    pub circuits: Vec<Vec<Vertex>>,
}

impl CanonicalSet {
    /// SHA-256 of the text form, hex encoded.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("n={} m={}\n", self.n, self.m));
        for c in &self.circuits {
            let line: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            h.update(line.join(" "));
            h.update("\n");
        }
        hex::encode(h.finalize())
    }
}

pub fn canonicalize(s: &EmbeddingSet) -> CanonicalSet {
    CanonicalSet {
        n: s.n(),
        m: s.m(),
        circuits: s.circuits().iter().map(|c| canonical_circuit(c.seq())).collect(),
    }
}

/// Every circuit started at its least rotation, direction kept. Unlike the
/// canonical form this preserves strong compatibility.
pub fn normalize_rotations(s: &EmbeddingSet) -> EmbeddingSet {
    let seqs = s.circuits().iter().map(|c| least_rotation(c.seq())).collect();
    EmbeddingSet::from_sequences(s.n(), s.m(), seqs, s.strong())
}

/// `T_{σ(i)}` of the result is `σ(T_i)`; `sigma[v - 1]` is the image of `v`.
pub fn relabel(s: &EmbeddingSet, sigma: &[Vertex]) -> EmbeddingSet {
    let mut seqs = vec![Vec::new(); s.circuits().len()];
    for (idx, c) in s.circuits().iter().enumerate() {
        seqs[sigma[idx] as usize - 1] = c.seq().iter().map(|&v| sigma[v as usize - 1]).collect();
    }
    EmbeddingSet::from_sequences(s.n(), s.m(), seqs, s.strong())
}

pub const DEFAULT_ISOMORPHISM_BOUND: u32 = 10;

/// A permutation `σ` of `1..=n` with `relabel(a, σ)` equivalent to `b`.
///
/// `σ` is pinned down by where `T_1` goes and how it lines up there, so only
/// `2 n |T_1|` candidates are tried.
pub fn sets_isomorphic(a: &EmbeddingSet, b: &EmbeddingSet, bound: u32) -> Result<Option<Vec<Vertex>>> {
    if a.n() != b.n() || a.m() != b.m() {
        return Err(Error::MismatchedAmbient);
    }
    let n = a.n();
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    let target = canonicalize(b);
    let t1 = a.circuit(1).seq();
    for k in 1..=n {
        let tk = b.circuit(k);
        if tk.len() != t1.len() {
            continue;
        }
        for dir in [tk.clone(), tk.reversed()] {
            for r in 0..t1.len() {
                let image = dir.rotated(r);
                let Some(sigma) = align(n, t1, image.seq(), k) else {
                    continue;
                };
                if canonicalize(&relabel(a, &sigma)) == target {
                    return Ok(Some(sigma));
                }
            }
        }
    }
    Ok(None)
}

fn align(n: u32, from: &[Vertex], to: &[Vertex], one_to: Vertex) -> Option<Vec<Vertex>> {
    let mut sigma = vec![0; n as usize];
    let mut used = vec![false; n as usize + 1];
    sigma[0] = one_to;
    used[one_to as usize] = true;
    for (&u, &v) in from.iter().zip(to) {
        let slot = &mut sigma[u as usize - 1];
        if *slot == 0 {
            if used[v as usize] {
                return None;
            }
            *slot = v;
            used[v as usize] = true;
        } else if *slot != v {
            return None;
        }
    }
    sigma.iter().all(|&v| v != 0).then_some(sigma)
}

/// Outcome of a sampling run.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub sets: Vec<EmbeddingSet>,
    pub attempts: usize,
    /// The sampling budget ran out before `count` classes were found.
    pub exhausted: bool,
}

pub const BUDGET_FACTOR: usize = 50;
const BATCH: usize = 64;

fn random_choices(n: u32, orientable: bool, rng: &mut ChaCha8Rng) -> Choices {
    let base = if orientable { 4 } else { 6 };
    let steps = (base..n)
        .step_by(2)
        .map(|k| TransitionChoice {
            transitions: Vec::new(),
            pairing: None,
            swaps: (0..k / 2).map(|_| rng.random_bool(0.5)).collect(),
            swap_apex: rng.random_bool(0.5),
        })
        .collect();
    Choices {
        seed: Some(rng.next_u64()),
        steps,
    }
}

fn attempt(n: u32, orientable: bool, seed: u64, index: u64) -> Result<(CanonicalSet, EmbeddingSet)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let set = build_even(n, orientable, &random_choices(n, orientable, &mut rng))?;
    let report = trace_faces(&set_to_scheme(&set)?)?;
    let spec = HypergraphSpec::complete(n)?;
    let expected = genus_formula(spec, orientable)? as i64 * if orientable { 2 } else { 1 };
    if !report.is_quadrilateral() || report.euler_genus != expected || report.orientable != orientable {
        return Err(Error::NotAnEmbeddingSet(format!(
            "attempt {index} traced to Euler genus {}",
            report.euler_genus
        )));
    }
    Ok((canonicalize(&set), normalize_rotations(&set)))
}

/// Up to `count` pairwise inequivalent embedding sets of `K_n^3` from seeded
/// runs of the construction, each checked to trace to the minimum genus.
///
/// Attempts run in parallel batches and are merged in attempt order, so the
/// result depends only on the arguments.
pub fn enumerate_variants(n: u32, orientable: bool, count: usize, seed: u64) -> Result<Enumeration> {
    let budget = BUDGET_FACTOR * count.max(1);
    let mut seen = HashSet::new();
    let mut sets = Vec::new();
    let mut attempts = 0;
    while sets.len() < count && attempts < budget {
        let end = (attempts + BATCH).min(budget);
        let batch: Vec<_> = (attempts..end)
            .into_par_iter()
            .map(|k| attempt(n, orientable, seed, k as u64))
            .collect();
        for r in batch {
            attempts += 1;
            let (canon, set) = r?;
            if seen.insert(canon) {
                sets.push(set);
                if sets.len() == count {
                    break;
                }
            }
        }
    }
    Ok(Enumeration {
        exhausted: sets.len() < count,
        sets,
        attempts,
    })
}

fn check_even(n: u32) -> Result<()> {
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    if n < 4 {
        return Err(Error::InvalidSpec { n, m: 1 });
    }
    Ok(())
}

pub fn double_factorial(k: u32) -> BigUint {
    let mut out = BigUint::one();
    let mut j = k;
    while j > 1 {
        out *= j;
        j -= 2;
    }
    out
}

/// `R_n ≥ ½ ((n-4)/2)^{(n-2)/2} (n-3)!! 2^{(n-2)/2} R_{n-2}`, `R_4 = 1`.
pub fn count_lower_bound(n: u32) -> Result<BigUint> {
    check_even(n)?;
    let mut r = BigUint::one();
    for k in (6..=n).step_by(2) {
        let half = (k - 2) / 2;
        let factor = BigUint::from((k - 4) / 2).pow(half) * double_factorial(k - 3) * BigUint::from(2u32).pow(half);
        r = factor * r / 2u32;
    }
    Ok(r)
}

/// The same bound as a product, `∏_{k=2}^{(n-2)/2} (k-1)^k (2k-1)!! 2^{k-1}`.
pub fn count_lower_bound_product(n: u32) -> Result<BigUint> {
    check_even(n)?;
    let mut r = BigUint::one();
    for k in 2..=(n - 2) / 2 {
        r *= BigUint::from(k - 1).pow(k) * double_factorial(2 * k - 1) * BigUint::from(2u32).pow(k - 1);
    }
    Ok(r)
}

/// `((n-3)!!)^{n(n-1)/2}`.
pub fn count_upper_bound(n: u32) -> Result<BigUint> {
    check_even(n)?;
    Ok(double_factorial(n - 3).pow(n * (n - 1) / 2))
}

/// All Eulerian circuits of `K_n - i`, one per rotation/reversal class, in
/// canonical form.
pub fn eulerian_circuits(n: u32, i: Vertex) -> Vec<Vec<Vertex>> {
    let verts: Vec<Vertex> = (1..=n).filter(|&v| v != i).collect();
    let k = verts.len();
    let mut used = vec![vec![false; n as usize + 1]; n as usize + 1];
    let total = k * (k - 1) / 2;
    let mut path = vec![verts[0]];
    let mut out = HashSet::new();
    fn go(
        path: &mut Vec<Vertex>,
        used: &mut Vec<Vec<bool>>,
        verts: &[Vertex],
        total: usize,
        out: &mut HashSet<Vec<Vertex>>,
    ) {
        let u = *path.last().unwrap();
        if path.len() == total + 1 {
            if u == path[0] {
                out.insert(canonical_circuit(&path[..total]));
            }
            return;
        }
        for &w in verts {
            if w != u && !used[u as usize][w as usize] {
                used[u as usize][w as usize] = true;
                used[w as usize][u as usize] = true;
                path.push(w);
                go(path, used, verts, total, out);
                path.pop();
                used[u as usize][w as usize] = false;
                used[w as usize][u as usize] = false;
            }
        }
    }
    go(&mut path, &mut used, &verts, total, &mut out);
    let mut v: Vec<_> = out.into_iter().collect();
    v.sort();
    v
}

/// Number of equivalence classes of embedding sets of `K_n^3`, by brute
/// force over all choices of circuits. Only small `n` are feasible.
pub fn exhaustive_classes(n: u32, bound: u32) -> Result<usize> {
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    check_even(n)?;
    let options: Vec<Vec<Circuit>> = (1..=n)
        .map(|i| {
            eulerian_circuits(n, i)
                .into_iter()
                .map(|seq| Circuit::new(i, n, 1, seq))
                .collect()
        })
        .collect();
    fn go(options: &[Vec<Circuit>], chosen: &mut Vec<Circuit>) -> usize {
        if chosen.len() == options.len() {
            return 1;
        }
        let mut total = 0;
        for c in &options[chosen.len()] {
            if chosen.iter().all(|d| is_compatible(d, c).unwrap_or(false)) {
                chosen.push(c.clone());
                total += go(options, chosen);
                chosen.pop();
            }
        }
        total
    }
    Ok(go(&options, &mut Vec::new()))
}

/// Census file body for `sets`, each preceded by its canonical digest.
pub fn census_text(sets: &[EmbeddingSet]) -> String {
    let digests: Vec<String> = sets.iter().map(|s| canonicalize(s).digest()).collect();
    crate::format::write_census(digests.iter().map(String::as_str).zip(sets))
}
