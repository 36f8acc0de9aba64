//! Inductive constructions of embedding sets for `mK_n^3`, `n` even.
//!
//! One step adds two apex vertices `x = n+1`, `y = n+2`: for each odd `i`
//! a transition `(a_i, i+1, b_i)` of `T_i` is broken and `E_i` spliced in
//! after `i+1`, the partner circuit `T_{i+1}` gets `E_{i+1}` after `i` at
//! `(b_i, i, a_i)`, and the two apex circuits are appended. Multiplicity is
//! raised by splicing a whole `T_i` of a simple set into `T_i^m` at a
//! transition they share.

pub mod fixtures;
mod trails;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use trails::{build_apex_circuits, build_insertion, build_sigma};

use crate::circuits::{is_embedding_set, EmbeddingSet, Transition};
use crate::error::{Error, Result};
use crate::levi::{HypergraphSpec, Vertex};
use crate::levi::Block;
use crate::scheme::{find_gluing, Gluing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseKind {
    /// Planar `K_4^3`, strong.
    Orientable4,
    /// Non-orientable `K_6^3`.
    Nonorientable6,
    /// Non-orientable `2K_4^3` on the Klein bottle.
    MultiNonorientable4,
}

pub fn base_set(kind: BaseKind) -> EmbeddingSet {
    match kind {
        BaseKind::Orientable4 => fixtures::planar_k4(),
        BaseKind::Nonorientable6 => fixtures::nonorientable_k6(),
        BaseKind::MultiNonorientable4 => fixtures::klein_2k4(),
    }
}

/// Free parameters of one step `n -> n+2`.
///
/// `pairing` lists `n/2` disjoint pairs `(u, v)` covering `1..=n`; the step
/// treats `u` as an odd vertex and `v` as its even partner (reversed where
/// `swaps[k]` is set). Without a pairing the pairs are `(1,2), (3,4), …`.
/// `transitions[k]` fixes `(a, b)` of the broken transition `(a, i+1, b)`
/// for `i = 2k+1`, in the relabelled coordinates; `None` defers to the
/// default (or seeded) pick.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionChoice {
    pub transitions: Vec<Option<(Vertex, Vertex)>>,
    pub pairing: Option<Vec<(Vertex, Vertex)>>,
    pub swaps: Vec<bool>,
    /// Exchange the two new apex labels after the step.
    pub swap_apex: bool,
}

/// How the arbitrary choices of a construction are made: explicit entries
/// win, then the seeded ChaCha stream, then the first candidate in scan order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Choices {
    pub seed: Option<u64>,
    /// One entry per step `n -> n+2`, starting from the base set.
    pub steps: Vec<TransitionChoice>,
}

impl Choices {
    pub fn first() -> Self {
        Choices::default()
    }

    pub fn seeded(seed: u64) -> Self {
        Choices { seed: Some(seed), steps: Vec::new() }
    }

    pub fn explicit(steps: Vec<TransitionChoice>) -> Self {
        Choices { seed: None, steps }
    }

    fn rng(&self) -> Option<ChaCha8Rng> {
        self.seed.map(ChaCha8Rng::seed_from_u64)
    }

    fn step(&self, k: usize) -> TransitionChoice {
        self.steps.get(k).cloned().unwrap_or_default()
    }
}

fn pick(count: usize, rng: &mut Option<ChaCha8Rng>) -> usize {
    match rng {
        Some(r) if count > 1 => r.random_range(0..count),
        _ => 0,
    }
}

fn at(seq: &[Vertex], p: isize) -> Vertex {
    seq[p.rem_euclid(seq.len() as isize) as usize]
}

fn positions_of(seq: &[Vertex], t: Transition) -> Vec<usize> {
    (0..seq.len())
        .filter(|&p| seq[p] == t.mid && at(seq, p as isize - 1) == t.a && at(seq, p as isize + 1) == t.b)
        .collect()
}

/// `seq` with `trail` inserted right after position `p`.
fn insert_after(seq: &[Vertex], p: usize, trail: &[Vertex]) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(seq.len() + trail.len());
    out.extend_from_slice(&seq[..=p]);
    out.extend_from_slice(trail);
    out.extend_from_slice(&seq[p + 1..]);
    out
}

/// Locate `t` in `seq`, reversing `seq` first if only the reverse occurs
/// and `allow_reverse` is set.
fn locate(seq: &[Vertex], t: Transition, allow_reverse: bool) -> Option<(Vec<Vertex>, usize, bool)> {
    if let Some(&p) = positions_of(seq, t).first() {
        return Some((seq.to_vec(), p, false));
    }
    if allow_reverse {
        let rev: Vec<Vertex> = seq.iter().rev().copied().collect();
        if let Some(&p) = positions_of(&rev, t).first() {
            return Some((rev, p, true));
        }
    }
    None
}

/// `rho[v]` is the new label of `v` (index 0 unused).
fn relabel_set(s: &EmbeddingSet, rho: &[Vertex], strong: bool) -> EmbeddingSet {
    let mut seqs = vec![Vec::new(); s.circuits().len()];
    for (idx, c) in s.circuits().iter().enumerate() {
        seqs[rho[idx + 1] as usize - 1] = c.seq().iter().map(|&v| rho[v as usize]).collect();
    }
    EmbeddingSet::from_sequences(s.n(), s.m(), seqs, strong)
}

fn pairing_map(n: u32, choice: &TransitionChoice) -> Result<Option<Vec<Vertex>>> {
    let Some(pairs) = &choice.pairing else {
        if choice.swaps.iter().all(|&f| !f) {
            return Ok(None);
        }
        let pairs: Vec<(Vertex, Vertex)> = (1..=n / 2).map(|k| (2 * k - 1, 2 * k)).collect();
        return pairing_map(n, &TransitionChoice { pairing: Some(pairs), ..choice.clone() });
    };
    let mut rho = vec![0; n as usize + 1];
    if pairs.len() != n as usize / 2 {
        return Err(Error::UnsupportedCase(format!("a pairing of 1..={n} needs {} pairs", n / 2)));
    }
    for (k, &(u, v)) in pairs.iter().enumerate() {
        let (u, v) = if choice.swaps.get(k).copied().unwrap_or(false) { (v, u) } else { (u, v) };
        let k = k as Vertex + 1;
        for (w, label) in [(u, 2 * k - 1), (v, 2 * k)] {
            if w < 1 || w > n || rho[w as usize] != 0 {
                return Err(Error::UnsupportedCase(format!("pairing is not a perfect matching of 1..={n}")));
            }
            rho[w as usize] = label;
        }
    }
    Ok(Some(rho))
}

/// One induction step `n -> n+2` of a simple embedding set.
///
/// When the input is not strong, `T_{i+1}` may carry the broken transition
/// as `(a_i, i, b_i)` only; it is then reversed before splicing.
pub fn extend_by_two(
    s: &EmbeddingSet,
    choice: &TransitionChoice,
    rng: &mut Option<ChaCha8Rng>,
) -> Result<EmbeddingSet> {
    let n = s.n();
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    if s.m() != 1 {
        return Err(Error::UnsupportedCase("the vertex step needs a simple set".into()));
    }
    let rho = pairing_map(n, choice)?;
    let work = match &rho {
        Some(r) => relabel_set(s, r, s.strong()),
        None => s.clone(),
    };
    let allow_reverse = !s.strong();
    let mut seqs: Vec<Vec<Vertex>> = Vec::with_capacity(n as usize + 2);
    for i in (1..n).step_by(2) {
        let c = work.circuit(i).seq();
        let k = (i as usize - 1) / 2;
        let p = match choice.transitions.get(k).copied().flatten() {
            Some((a, b)) => *positions_of(c, Transition::new(a, i + 1, b))
                .first()
                .ok_or(Error::NoCommonTransition { excluded: i, through: i + 1 })?,
            None => {
                let occ: Vec<usize> = (0..c.len()).filter(|&p| c[p] == i + 1).collect();
                occ[pick(occ.len(), rng)]
            }
        };
        let (a, b) = (at(c, p as isize - 1), at(c, p as isize + 1));
        seqs.push(insert_after(c, p, &build_insertion(i, n)?));

        let (d, q, _) = locate(work.circuit(i + 1).seq(), Transition::new(b, i, a), allow_reverse)
            .ok_or(Error::NoCommonTransition { excluded: i + 1, through: i })?;
        seqs.push(insert_after(&d, q, &build_insertion(i + 1, n)?));
    }
    let (tx, ty) = build_apex_circuits(n)?;
    seqs.push(tx.seq().to_vec());
    seqs.push(ty.seq().to_vec());
    let out = EmbeddingSet::from_sequences(n + 2, 1, seqs, s.strong());
    if rho.is_none() && !choice.swap_apex {
        return Ok(out);
    }
    let mut inv: Vec<Vertex> = (0..=n + 2).collect();
    if let Some(r) = rho {
        for v in 1..=n {
            inv[r[v as usize] as usize] = v;
        }
    }
    if choice.swap_apex {
        inv.swap(n as usize + 1, n as usize + 2);
    }
    Ok(relabel_set(&out, &inv, s.strong()))
}

fn verified(s: EmbeddingSet) -> Result<EmbeddingSet> {
    match is_embedding_set(&s, s.strong()).first() {
        Some(d) => Err(Error::NotAnEmbeddingSet(d.to_string())),
        None => Ok(s),
    }
}

fn build_even_with(n: u32, orientable: bool, choices: &Choices, rng: &mut Option<ChaCha8Rng>) -> Result<EmbeddingSet> {
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    if n < 4 {
        return Err(Error::InvalidSpec { n, m: 1 });
    }
    if !orientable && n == 4 {
        return Err(Error::UnsupportedCase("K_4^3 has no non-orientable quadrilateral embedding".into()));
    }
    let mut set = base_set(if orientable { BaseKind::Orientable4 } else { BaseKind::Nonorientable6 });
    let mut step = 0;
    while set.n() < n {
        set = extend_by_two(&set, &choices.step(step), rng)?;
        step += 1;
    }
    verified(set)
}

/// An embedding set of `K_n^3` for even `n`: strong when `orientable`.
pub fn build_even(n: u32, orientable: bool, choices: &Choices) -> Result<EmbeddingSet> {
    build_even_with(n, orientable, choices, &mut choices.rng())
}

/// Raise the multiplicity of `base` by one, splicing each circuit of the
/// simple set `layer` into the matching circuit of `base`.
///
/// For odd `i` the shared transition `(a_i, i+1, b_i)` is picked in `T_i`;
/// in `T_{i+1}` the splice goes at the corner that faces the same two
/// blocks of `base`, so the result is again a quadrangulation.
pub fn splice_layer(base: &EmbeddingSet, layer: &EmbeddingSet, rng: &mut Option<ChaCha8Rng>) -> Result<EmbeddingSet> {
    let base_glue = find_gluing(base)?;
    let layer_glue = find_gluing(layer)?;
    Ok(splice_glued(base, &base_glue, layer, &layer_glue, rng)?.0)
}

fn at_label(labels: &[Block], p: isize) -> Block {
    labels[p.rem_euclid(labels.len() as isize) as usize]
}

/// Labels of the traversals of a reversed circuit.
fn reversed_labels(labels: &[Block]) -> Vec<Block> {
    let len = labels.len() as isize;
    (0..len).map(|k| at_label(labels, len - 2 - k)).collect()
}

/// Splice `d` (opened after `q`) into `c` after `p`, with traversal labels.
fn splice_labelled(
    c: &[Vertex],
    lc: &[Block],
    p: usize,
    d: &[Vertex],
    ld: &[Block],
    q: usize,
) -> (Vec<Vertex>, Vec<Block>) {
    let mut opened = d[q + 1..].to_vec();
    opened.extend_from_slice(&d[..=q]);
    let mut labels = lc[..p].to_vec();
    labels.extend_from_slice(&ld[q..]);
    labels.extend_from_slice(&ld[..q]);
    labels.extend_from_slice(&lc[p..]);
    (insert_after(c, p, &opened), labels)
}

fn splice_glued(
    base: &EmbeddingSet,
    base_glue: &Gluing,
    layer: &EmbeddingSet,
    layer_glue: &Gluing,
    rng: &mut Option<ChaCha8Rng>,
) -> Result<(EmbeddingSet, Gluing)> {
    let n = base.n();
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    if layer.n() != n || layer.m() != 1 {
        return Err(Error::MismatchedAmbient);
    }
    let allow_reverse = !(base.strong() && layer.strong());
    let copy = base.m();
    let fresh = |row: &Vec<Block>| -> Vec<Block> { row.iter().map(|b| Block { copy, ..*b }).collect() };
    let mut seqs = Vec::with_capacity(n as usize);
    let mut blocks = Vec::with_capacity(n as usize);
    for i in (1..n).step_by(2) {
        let (iu, iv) = (i as usize - 1, i as usize);
        let c = base.circuit(i).seq();
        let lc = &base_glue.blocks[iu];
        let candidates: Vec<usize> = (0..c.len())
            .filter(|&p| {
                c[p] == i + 1 && {
                    let t = Transition::new(at(c, p as isize - 1), i + 1, at(c, p as isize + 1));
                    locate(layer.circuit(i).seq(), t, allow_reverse).is_some()
                }
            })
            .collect();
        if candidates.is_empty() {
            return Err(Error::NoCommonTransition { excluded: i, through: i + 1 });
        }
        let p = candidates[pick(candidates.len(), rng)];
        let t = Transition::new(at(c, p as isize - 1), i + 1, at(c, p as isize + 1));
        let (d, q, rev) = locate(layer.circuit(i).seq(), t, allow_reverse).expect("candidate was checked");
        let ld = fresh(&layer_glue.blocks[iu]);
        let ld = if rev { reversed_labels(&ld) } else { ld };
        let (seq, labels) = splice_labelled(c, lc, p, &d, &ld, q);
        seqs.push(seq);
        blocks.push(labels);

        // the corner of T_{i+1} on the same two blocks
        let corner = sorted2([at_label(lc, p as isize - 1), lc[p]]);
        let c2 = base.circuit(i + 1).seq();
        let lc2 = &base_glue.blocks[iv];
        let p2 = (0..c2.len())
            .find(|&p| c2[p] == i && sorted2([at_label(lc2, p as isize - 1), lc2[p]]) == corner)
            .ok_or(Error::NoCommonTransition { excluded: i + 1, through: i })?;
        let t2 = Transition::new(at(c2, p2 as isize - 1), i, at(c2, p2 as isize + 1));
        let (d2, q2, rev2) = locate(layer.circuit(i + 1).seq(), t2, allow_reverse)
            .ok_or(Error::NoCommonTransition { excluded: i + 1, through: i })?;
        let ld2 = fresh(&layer_glue.blocks[iv]);
        let ld2 = if rev2 { reversed_labels(&ld2) } else { ld2 };
        let (seq, labels) = splice_labelled(c2, lc2, p2, &d2, &ld2, q2);
        seqs.push(seq);
        blocks.push(labels);
    }
    let out = EmbeddingSet::from_sequences(n, base.m() + 1, seqs, base.strong() && layer.strong());
    Ok((verified(out)?, Gluing { blocks }))
}

fn sorted2(mut pair: [Block; 2]) -> [Block; 2] {
    pair.sort_unstable();
    pair
}

/// An embedding set of `mK_n^3` for even `n`.
///
/// Every added layer is the same simple set, so shared transitions always
/// exist. Non-orientable `mK_4^3` starts from the Klein bottle set at `m = 2`
/// and adds planar layers.
pub fn build_multi(n: u32, m: u32, orientable: bool, choices: &Choices) -> Result<EmbeddingSet> {
    Ok(build_multi_glued(n, m, orientable, choices)?.0)
}

/// [`build_multi`] together with the block of every traversal, which the
/// construction knows and which [`crate::scheme::set_to_scheme_glued`]
/// accepts in place of a search.
pub fn build_multi_glued(n: u32, m: u32, orientable: bool, choices: &Choices) -> Result<(EmbeddingSet, Gluing)> {
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    HypergraphSpec::new(n, m)?;
    let mut rng = choices.rng();
    let (layer, mut set) = if !orientable && n == 4 {
        if m < 2 {
            return Err(Error::UnsupportedCase("K_4^3 has no non-orientable quadrilateral embedding".into()));
        }
        (fixtures::planar_k4(), fixtures::klein_2k4())
    } else {
        let layer = build_even_with(n, orientable, choices, &mut rng)?;
        (layer.clone(), layer)
    };
    let layer_glue = find_gluing(&layer)?;
    let mut glue = find_gluing(&set)?;
    while set.m() < m {
        (set, glue) = splice_glued(&set, &glue, &layer, &layer_glue, &mut rng)?;
    }
    Ok((set, glue))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_validate() {
        assert!(is_embedding_set(&fixtures::planar_k4(), true).is_valid());
        assert!(is_embedding_set(&fixtures::strong_k6(), true).is_valid());
        assert!(is_embedding_set(&fixtures::nonorientable_k6(), false).is_valid());
        assert!(is_embedding_set(&fixtures::klein_2k4(), false).is_valid());
        assert!(!is_embedding_set(&fixtures::nonorientable_k6_as_printed(), false).is_valid());
    }

    #[test]
    fn even_builds_validate() {
        for n in (4..=14).step_by(2) {
            let s = build_even(n, true, &Choices::first()).unwrap();
            assert!(s.strong());
            assert!(is_embedding_set(&s, true).is_valid(), "n = {n}");
            if n >= 6 {
                let s = build_even(n, false, &Choices::first()).unwrap();
                assert!(!s.strong());
                assert!(is_embedding_set(&s, false).is_valid(), "n = {n}");
            }
        }
    }

    #[test]
    fn orders_are_checked() {
        assert!(matches!(build_even(7, true, &Choices::first()), Err(Error::OddOrder(7))));
        assert!(matches!(build_even(4, false, &Choices::first()), Err(Error::UnsupportedCase(_))));
        assert!(matches!(build_multi(4, 1, false, &Choices::first()), Err(Error::UnsupportedCase(_))));
    }

    #[test]
    fn seeded_builds_are_deterministic() {
        let a = build_even(10, true, &Choices::seeded(7)).unwrap();
        let b = build_even(10, true, &Choices::seeded(7)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn explicit_pairing_and_transition() {
        let choice = TransitionChoice {
            transitions: vec![Some((4, 3))],
            pairing: Some(vec![(1, 3), (2, 4)]),
            swaps: vec![false, true],
            swap_apex: true,
        };
        let s = build_even(6, true, &Choices::explicit(vec![choice])).unwrap();
        assert!(is_embedding_set(&s, true).is_valid());

        let bad = TransitionChoice {
            pairing: Some(vec![(1, 3), (1, 4)]),
            ..Default::default()
        };
        assert!(build_even(6, true, &Choices::explicit(vec![bad])).is_err());
    }

    #[test]
    fn multi_builds_validate() {
        for (n, m, orientable) in [(4, 2, true), (4, 3, false), (6, 2, true), (6, 3, false), (8, 2, true)] {
            let s = build_multi(n, m, orientable, &Choices::first()).unwrap();
            assert_eq!(s.m(), m);
            assert!(is_embedding_set(&s, orientable).is_valid(), "({n}, {m}, {orientable})");
        }
    }
}
