//! Closed trails in `m(K_n - i)`, their transitions, and the (strong)
//! compatibility relation that makes a family of circuits an embedding set.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levi::Vertex;

/// A cyclic vertex sequence; consecutive entries (wrapping around) are the
/// traversed edges. Storage has an arbitrary start, and equality ignores it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Circuit {
    excluded: Vertex,
    n: u32,
    m: u32,
    seq: Vec<Vertex>,
}

/// Two consecutive edges `a-mid`, `mid-b` of a closed trail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transition {
    pub a: Vertex,
    pub mid: Vertex,
    pub b: Vertex,
}

impl Transition {
    pub fn new(a: Vertex, mid: Vertex, b: Vertex) -> Self {
        Transition { a, mid, b }
    }

    pub fn reversed(self) -> Self {
        Transition {
            a: self.b,
            mid: self.mid,
            b: self.a,
        }
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.mid, self.b)
    }
}

impl Circuit {
    pub fn new(excluded: Vertex, n: u32, m: u32, seq: Vec<Vertex>) -> Self {
        Circuit {
            excluded,
            n,
            m,
            seq,
        }
    }

    pub fn excluded(&self) -> Vertex {
        self.excluded
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn seq(&self) -> &[Vertex] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Entry at cyclic position `p` (any integer offset).
    pub fn at(&self, p: isize) -> Vertex {
        self.seq[p.rem_euclid(self.seq.len() as isize) as usize]
    }

    pub fn reversed(&self) -> Circuit {
        let mut seq = self.seq.clone();
        seq.reverse();
        Circuit { seq, ..*self }
    }

    /// The same cyclic sequence started at position `k`.
    pub fn rotated(&self, k: usize) -> Circuit {
        let mut seq = self.seq.clone();
        if !seq.is_empty() {
            let len = seq.len();
            seq.rotate_left(k % len);
        }
        Circuit { seq, ..*self }
    }

    /// Traversed edges `(seq[p], seq[p+1])`, wrap-around included.
    pub fn steps(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let len = self.seq.len();
        (0..len).map(move |p| (self.seq[p], self.seq[(p + 1) % len]))
    }

    /// Transitions through `j` in scan order, one per occurrence of `j`.
    pub fn transitions_through(&self, j: Vertex) -> Result<Vec<Transition>> {
        let out: Vec<Transition> = (0..self.seq.len())
            .filter(|&p| self.seq[p] == j)
            .map(|p| Transition::new(self.at(p as isize - 1), j, self.at(p as isize + 1)))
            .collect();
        if out.is_empty() {
            return Err(Error::VertexAbsent(j));
        }
        Ok(out)
    }

    /// True when `other` is the same cyclic sequence or its reverse.
    pub fn equivalent(&self, other: &Circuit) -> bool {
        self == other || *self == other.reversed()
    }

    /// Apply a vertex relabelling to every entry and to the excluded vertex.
    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> Circuit {
        Circuit {
            excluded: map(self.excluded),
            n: self.n,
            m: self.m,
            seq: self.seq.iter().map(|&v| map(v)).collect(),
        }
    }

    pub(crate) fn with_ambient(self, n: u32, m: u32) -> Circuit {
        Circuit { n, m, ..self }
    }
}

/// Rotation-only equality.
impl PartialEq for Circuit {
    fn eq(&self, other: &Self) -> bool {
        if self.excluded != other.excluded
            || self.n != other.n
            || self.m != other.m
            || self.seq.len() != other.seq.len()
        {
            return false;
        }
        if self.seq.is_empty() {
            return true;
        }
        let len = self.seq.len();
        (0..len).any(|k| (0..len).all(|p| self.seq[(p + k) % len] == other.seq[p]))
    }
}

impl Eq for Circuit {}

/// What is wrong with a would-be Eulerian circuit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CircuitDefect {
    Empty,
    ContainsExcluded { position: usize },
    LabelOutOfRange { position: usize, label: Vertex },
    Loop { position: usize, vertex: Vertex },
    PairCount {
        pair: (Vertex, Vertex),
        count: u32,
        expected: u32,
    },
}

impl fmt::Display for CircuitDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircuitDefect::Empty => write!(f, "empty circuit"),
            CircuitDefect::ContainsExcluded { position } => {
                write!(f, "excluded vertex occurs at position {position}")
            }
            CircuitDefect::LabelOutOfRange { position, label } => {
                write!(f, "label {label} at position {position} is out of range")
            }
            CircuitDefect::Loop { position, vertex } => {
                write!(f, "vertex {vertex} repeats immediately at position {position}")
            }
            CircuitDefect::PairCount {
                pair,
                count,
                expected,
            } => write!(
                f,
                "pair {{{},{}}} traversed {count} times, expected {expected}",
                pair.0, pair.1
            ),
        }
    }
}

fn unordered(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Check that `c` traverses every pair of `[n] \ {excluded}` exactly `m`
/// times. Over-used pairs are reported before missing ones.
pub fn validate_eulerian(c: &Circuit) -> Result<(), CircuitDefect> {
    if c.seq.is_empty() {
        return Err(CircuitDefect::Empty);
    }
    for (position, &v) in c.seq.iter().enumerate() {
        if v == c.excluded {
            return Err(CircuitDefect::ContainsExcluded { position });
        }
        if v < 1 || v > c.n {
            return Err(CircuitDefect::LabelOutOfRange { position, label: v });
        }
    }
    let mut counts: HashMap<(Vertex, Vertex), u32> = HashMap::new();
    for (position, (a, b)) in c.steps().enumerate() {
        if a == b {
            return Err(CircuitDefect::Loop {
                position,
                vertex: a,
            });
        }
        *counts.entry(unordered(a, b)).or_default() += 1;
    }
    let pairs = || {
        (1..=c.n)
            .filter(move |&v| v != c.excluded)
            .flat_map(move |u| (u + 1..=c.n).filter(move |&v| v != c.excluded).map(move |v| (u, v)))
    };
    let defect = |pair: (Vertex, Vertex)| CircuitDefect::PairCount {
        pair,
        count: counts.get(&pair).copied().unwrap_or(0),
        expected: c.m,
    };
    if let Some(p) = pairs().find(|p| counts.get(p).copied().unwrap_or(0) > c.m) {
        return Err(defect(p));
    }
    if let Some(p) = pairs().find(|p| counts.get(p).copied().unwrap_or(0) < c.m) {
        return Err(defect(p));
    }
    Ok(())
}

fn check_pair(t_i: &Circuit, t_j: &Circuit) -> Result<()> {
    if t_i.n != t_j.n || t_i.m != t_j.m {
        return Err(Error::MismatchedAmbient);
    }
    if t_i.excluded == t_j.excluded {
        return Err(Error::SameExcluded(t_i.excluded));
    }
    Ok(())
}

/// Transitions through the other circuit's excluded vertex, as `(a, b)`.
fn crossing(t_i: &Circuit, t_j: &Circuit) -> (Vec<(Vertex, Vertex)>, Vec<(Vertex, Vertex)>) {
    let through = |c: &Circuit, v: Vertex| -> Vec<(Vertex, Vertex)> {
        c.transitions_through(v)
            .map(|ts| ts.into_iter().map(|t| (t.a, t.b)).collect())
            .unwrap_or_default()
    };
    (through(t_i, t_j.excluded), through(t_j, t_i.excluded))
}

fn multiset<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort_unstable();
    v
}

/// The first transition of `t_i` through `j` that has no partner in `t_j`,
/// or `None` when the two circuits are compatible.
pub fn compatibility_witness(t_i: &Circuit, t_j: &Circuit, strong: bool) -> Result<Option<Transition>> {
    check_pair(t_i, t_j)?;
    let (mine, theirs) = crossing(t_i, t_j);
    let key = |(a, b): (Vertex, Vertex)| if strong { (a, b) } else { unordered(a, b) };
    let mut budget: HashMap<(Vertex, Vertex), i64> = HashMap::new();
    for &(a, b) in &theirs {
        // strong partner of a,j,b in t_i is b,i,a in t_j
        let k = if strong { (b, a) } else { unordered(a, b) };
        *budget.entry(k).or_default() += 1;
    }
    for &t in &mine {
        *budget.entry(key(t)).or_default() -= 1;
    }
    let j = t_j.excluded;
    if let Some(&(a, b)) = mine.iter().find(|&&t| budget[&key(t)] != 0) {
        return Ok(Some(Transition::new(a, j, b)));
    }
    if let Some(&(a, b)) = theirs.iter().find(|&&(a, b)| {
        let k = if strong { (b, a) } else { unordered(a, b) };
        budget[&k] != 0
    }) {
        // report from t_i's point of view: t_j has b,i,a, so t_i lacks a,j,b
        return Ok(Some(Transition::new(b, j, a)));
    }
    Ok(None)
}

/// Compatible: the transitions through `j` in `t_i` and through `i` in
/// `t_j` agree as multisets of unordered end pairs.
pub fn is_compatible(t_i: &Circuit, t_j: &Circuit) -> Result<bool> {
    check_pair(t_i, t_j)?;
    let (mine, theirs) = crossing(t_i, t_j);
    let mine = multiset(mine.into_iter().map(|(a, b)| unordered(a, b)).collect());
    let theirs = multiset(theirs.into_iter().map(|(a, b)| unordered(a, b)).collect());
    Ok(mine == theirs)
}

/// Strongly compatible: every `a,j,b` in `t_i` is matched, with equal
/// multiplicity, by `b,i,a` in `t_j`.
pub fn is_strongly_compatible(t_i: &Circuit, t_j: &Circuit) -> Result<bool> {
    check_pair(t_i, t_j)?;
    let (mine, theirs) = crossing(t_i, t_j);
    Ok(multiset(mine) == multiset(theirs.into_iter().map(|(a, b)| (b, a)).collect()))
}

/// `n` circuits, `T_i` (index `i - 1`) avoiding vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingSet {
    n: u32,
    m: u32,
    circuits: Vec<Circuit>,
    strong: bool,
}

impl EmbeddingSet {
    /// Builds a set from raw sequences, `seqs[i - 1]` being `T_i`.
    pub fn from_sequences(n: u32, m: u32, seqs: Vec<Vec<Vertex>>, strong: bool) -> Self {
        let circuits = seqs
            .into_iter()
            .enumerate()
            .map(|(idx, seq)| Circuit::new(idx as Vertex + 1, n, m, seq))
            .collect();
        EmbeddingSet {
            n,
            m,
            circuits,
            strong,
        }
    }

    pub fn new(n: u32, m: u32, circuits: Vec<Circuit>, strong: bool) -> Self {
        let circuits = circuits.into_iter().map(|c| c.with_ambient(n, m)).collect();
        EmbeddingSet {
            n,
            m,
            circuits,
            strong,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn strong(&self) -> bool {
        self.strong
    }

    pub fn set_strong(&mut self, strong: bool) {
        self.strong = strong;
    }

    pub fn circuits(&self) -> &[Circuit] {
        &self.circuits
    }

    /// `T_i`, 1-based.
    pub fn circuit(&self, i: Vertex) -> &Circuit {
        &self.circuits[i as usize - 1]
    }

    /// Circuit-wise equivalence: each `T_i` equal up to rotation and reversal.
    pub fn equivalent(&self, other: &EmbeddingSet) -> bool {
        self.n == other.n
            && self.m == other.m
            && self.circuits.len() == other.circuits.len()
            && self.circuits.iter().zip(&other.circuits).all(|(a, b)| a.equivalent(b))
    }

    /// Replace `T_i` by `T_i^{-1}` for every `i` with `flip[i - 1]` set.
    pub fn with_reversals(&self, flip: &[bool]) -> EmbeddingSet {
        let circuits = self
            .circuits
            .iter()
            .zip(flip)
            .map(|(c, &f)| if f { c.reversed() } else { c.clone() })
            .collect();
        EmbeddingSet {
            circuits,
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SetDefect {
    Shape(String),
    Circuit { index: Vertex, defect: CircuitDefect },
    Incompatible { i: Vertex, j: Vertex, transition: Transition },
    NotStrong { i: Vertex, j: Vertex, transition: Transition },
}

impl fmt::Display for SetDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetDefect::Shape(s) => write!(f, "{s}"),
            SetDefect::Circuit { index, defect } => write!(f, "T_{index}: {defect}"),
            SetDefect::Incompatible { i, j, transition } => write!(
                f,
                "T_{i} and T_{j} are not compatible (transition {transition} in T_{i})"
            ),
            SetDefect::NotStrong { i, j, transition } => write!(
                f,
                "T_{i} and T_{j} are not strongly compatible (transition {transition} in T_{i})"
            ),
        }
    }
}

/// Outcome of [`is_embedding_set`]; every defect found, in scan order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetReport {
    pub defects: Vec<SetDefect>,
}

impl SetReport {
    pub fn is_valid(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn first(&self) -> Option<&SetDefect> {
        self.defects.first()
    }

    pub fn eulerian_ok(&self) -> bool {
        !self
            .defects
            .iter()
            .any(|d| matches!(d, SetDefect::Circuit { .. } | SetDefect::Shape(_)))
    }

    pub fn compatible_ok(&self) -> bool {
        self.eulerian_ok() && !self.defects.iter().any(|d| matches!(d, SetDefect::Incompatible { .. }))
    }

    pub fn strength_ok(&self) -> bool {
        self.compatible_ok() && !self.defects.iter().any(|d| matches!(d, SetDefect::NotStrong { .. }))
    }

    /// Pairs reported as failing (strong) compatibility.
    pub fn failing_pairs(&self) -> Vec<(Vertex, Vertex)> {
        self.defects
            .iter()
            .filter_map(|d| match d {
                SetDefect::Incompatible { i, j, .. } | SetDefect::NotStrong { i, j, .. } => Some((*i, *j)),
                _ => None,
            })
            .collect()
    }
}

/// Validate every circuit and every pair. With `require_strong`, pairs that
/// are compatible but not strongly compatible are reported as well.
pub fn is_embedding_set(s: &EmbeddingSet, require_strong: bool) -> SetReport {
    let mut report = SetReport::default();
    if s.circuits.len() != s.n as usize {
        report.defects.push(SetDefect::Shape(format!(
            "expected {} circuits, found {}",
            s.n,
            s.circuits.len()
        )));
        return report;
    }
    for (idx, c) in s.circuits.iter().enumerate() {
        let index = idx as Vertex + 1;
        if c.excluded != index || c.n != s.n || c.m != s.m {
            report.defects.push(SetDefect::Shape(format!(
                "circuit {index} has wrong excluded vertex or ambient parameters"
            )));
        } else if let Err(defect) = validate_eulerian(c) {
            report.defects.push(SetDefect::Circuit { index, defect });
        }
    }
    if !report.is_valid() {
        return report;
    }
    for i in 1..=s.n {
        for j in i + 1..=s.n {
            let (ti, tj) = (s.circuit(i), s.circuit(j));
            if let Some(transition) = compatibility_witness(ti, tj, false).expect("checked shape") {
                report.defects.push(SetDefect::Incompatible { i, j, transition });
            } else if require_strong {
                if let Some(transition) = compatibility_witness(ti, tj, true).expect("checked shape") {
                    report.defects.push(SetDefect::NotStrong { i, j, transition });
                }
            }
        }
    }
    report
}

/// Whether some choice of reversals makes the set strong. Returns the
/// reversal flags when it does. Assumes the set is already compatible.
pub fn strong_orientation(s: &EmbeddingSet) -> Option<Vec<bool>> {
    let n = s.n as usize;
    // relation[i][j]: Some(false) = strong as stored, Some(true) = strong after
    // reversing exactly one of the two, None = neither.
    let mut flip: Vec<Option<bool>> = vec![None; n];
    for root in 0..n {
        if flip[root].is_some() {
            continue;
        }
        flip[root] = Some(false);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if v == u {
                    continue;
                }
                let (cu, cv) = (&s.circuits[u], &s.circuits[v]);
                let same = is_strongly_compatible(cu, cv).ok()?;
                let opposite = is_strongly_compatible(&cu.reversed(), cv).ok()?;
                let parity = match (same, opposite) {
                    (true, _) => false,
                    (false, true) => true,
                    (false, false) => return None,
                };
                let want = flip[u].unwrap() ^ parity;
                match flip[v] {
                    None => {
                        flip[v] = Some(want);
                        stack.push(v);
                    }
                    Some(f) if f != want => return None,
                    _ => {}
                }
            }
        }
    }
    Some(flip.into_iter().map(|f| f.unwrap_or(false)).collect())
}

/// Pairs `(i, j)` for which neither `T_i` nor `T_i^{-1}` is strongly
/// compatible with `T_j`.
pub fn never_strong_pairs(s: &EmbeddingSet) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    for i in 1..=s.n {
        for j in i + 1..=s.n {
            let (ti, tj) = (s.circuit(i), s.circuit(j));
            let fwd = is_strongly_compatible(ti, tj).unwrap_or(false);
            let back = is_strongly_compatible(&ti.reversed(), tj).unwrap_or(false);
            if !fwd && !back {
                out.push((i, j));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::fixtures;

    fn c(excluded: Vertex, n: u32, m: u32, seq: &[Vertex]) -> Circuit {
        Circuit::new(excluded, n, m, seq.to_vec())
    }

    #[test]
    fn eulerian_examples() {
        let t1 = c(1, 6, 1, &[3, 4, 2, 5, 3, 6, 4, 5, 6, 2]);
        assert_eq!(validate_eulerian(&t1), Ok(()));
        let bad = c(1, 5, 1, &[3, 4, 3, 5]);
        assert_eq!(
            validate_eulerian(&bad),
            Err(CircuitDefect::PairCount {
                pair: (3, 4),
                count: 2,
                expected: 1
            })
        );
        let multi = c(1, 4, 2, &[3, 2, 4, 2, 3, 4]);
        assert_eq!(validate_eulerian(&multi), Ok(()));
    }

    #[test]
    fn eulerian_rejects_junk() {
        assert_eq!(validate_eulerian(&c(1, 4, 1, &[])), Err(CircuitDefect::Empty));
        assert_eq!(
            validate_eulerian(&c(1, 4, 1, &[2, 1, 3])),
            Err(CircuitDefect::ContainsExcluded { position: 1 })
        );
        assert_eq!(
            validate_eulerian(&c(1, 4, 1, &[2, 9, 3])),
            Err(CircuitDefect::LabelOutOfRange { position: 1, label: 9 })
        );
        assert_eq!(
            validate_eulerian(&c(1, 4, 1, &[2, 2, 3, 4])),
            Err(CircuitDefect::Loop { position: 0, vertex: 2 })
        );
        assert!(matches!(
            validate_eulerian(&c(1, 4, 1, &[2, 3])),
            Err(CircuitDefect::PairCount { pair: (2, 3), count: 2, .. })
        ));
    }

    #[test]
    fn transitions_of_example_circuit() {
        let t1 = c(1, 6, 1, &[3, 4, 2, 5, 3, 6, 4, 5, 6, 2]);
        assert_eq!(
            t1.transitions_through(2).unwrap(),
            vec![Transition::new(4, 2, 5), Transition::new(6, 2, 3)]
        );
        assert_eq!(
            t1.transitions_through(6).unwrap(),
            vec![Transition::new(3, 6, 4), Transition::new(5, 6, 2)]
        );
        assert!(matches!(t1.transitions_through(1), Err(Error::VertexAbsent(1))));
    }

    #[test]
    fn rotation_equality() {
        let t = c(1, 6, 1, &[3, 4, 2, 5, 3, 6, 4, 5, 6, 2]);
        assert_eq!(t, t.rotated(3));
        assert_ne!(t, t.reversed());
        assert!(t.equivalent(&t.reversed().rotated(7)));
    }

    #[test]
    fn example_pairs() {
        let strong = fixtures::strong_k6();
        let (t1, t2) = (strong.circuit(1), strong.circuit(2));
        assert!(is_compatible(t1, t2).unwrap());
        assert!(is_strongly_compatible(t1, t2).unwrap());

        let non = fixtures::nonorientable_k6();
        let (t3, t5) = (non.circuit(3), non.circuit(5));
        assert!(is_compatible(t3, t5).unwrap());
        assert!(!is_strongly_compatible(t3, t5).unwrap());
        assert!(!is_strongly_compatible(&t3.reversed(), t5).unwrap());
    }

    #[test]
    fn pair_preconditions() {
        let s = fixtures::strong_k6();
        let t1 = s.circuit(1);
        assert!(matches!(is_compatible(t1, &t1.reversed()), Err(Error::SameExcluded(1))));
        let other = fixtures::planar_k4();
        assert!(matches!(
            is_compatible(t1, other.circuit(2)),
            Err(Error::MismatchedAmbient)
        ));
    }

    #[test]
    fn witness_names_missing_transition() {
        let s = fixtures::nonorientable_k6();
        let w = compatibility_witness(s.circuit(3), s.circuit(5), true).unwrap();
        assert_eq!(w, Some(Transition::new(6, 5, 4)));
        assert_eq!(compatibility_witness(s.circuit(3), s.circuit(5), false).unwrap(), None);
    }

    #[test]
    fn set_reports() {
        assert!(is_embedding_set(&fixtures::strong_k6(), true).is_valid());
        let non = fixtures::nonorientable_k6();
        assert!(is_embedding_set(&non, false).is_valid());
        let strict = is_embedding_set(&non, true);
        assert!(!strict.is_valid());
        assert!(strict.compatible_ok());
        assert!(strict.failing_pairs().contains(&(3, 5)));
        assert!(is_embedding_set(&fixtures::klein_2k4(), false).is_valid());
        assert!(!is_embedding_set(&fixtures::klein_2k4(), true).is_valid());
    }

    #[test]
    fn printed_nonorientable_set_is_not_compatible() {
        let printed = fixtures::nonorientable_k6_as_printed();
        let report = is_embedding_set(&printed, false);
        assert!(report.eulerian_ok());
        assert_eq!(report.failing_pairs(), vec![(2, 6), (4, 5)]);
    }

    #[test]
    fn orientation_search() {
        let strong = fixtures::strong_k6();
        assert_eq!(strong_orientation(&strong), Some(vec![false; 6]));
        let flipped = strong.with_reversals(&[true, false, true, false, false, true]);
        let flips = strong_orientation(&flipped).unwrap();
        let restored = flipped.with_reversals(&flips);
        assert!(is_embedding_set(&restored, true).is_valid());
        assert_eq!(strong_orientation(&fixtures::nonorientable_k6()), None);
        assert!(never_strong_pairs(&fixtures::nonorientable_k6()).contains(&(3, 5)));
    }
}
