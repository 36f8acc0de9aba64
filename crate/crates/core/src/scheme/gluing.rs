//! Assigning circuit traversals to blocks.
//!
//! Every traversal `(a, b)` in `T_i` belongs to some block on `{i, a, b}`.
//! For simple triple systems there is one such block. With repeated triples
//! the copies have to be chosen so that each corner of `T_i` at `j` is met
//! by a corner of `T_j` at `i` on the same two blocks; otherwise the faces
//! are not quadrilaterals.
//!
//! Chronological backtracking thrashes on this at a few thousand
//! traversals, so the assignment is posed as CNF: one variable per pair of
//! traversals that could share a block, exactly one partner per circuit,
//! partners closing into triangles, and each corner forcing the pair across
//! it.

use std::collections::HashMap;

use varisat::{ExtendFormula, Lit, Solver, Var};

use crate::circuits::EmbeddingSet;
use crate::error::{Error, Result};
use crate::levi::{Block, LeviGraph, Vertex};

/// The block of every traversal, per circuit: `blocks[i - 1][p]` holds the
/// traversal `seq[p] -> seq[p + 1]` of `T_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub blocks: Vec<Vec<Block>>,
}

type Trav = (usize, usize);

fn key(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    (a.min(b), a.max(b))
}

struct Encoding<'a> {
    seqs: Vec<&'a [Vertex]>,
    by_pair: Vec<HashMap<(Vertex, Vertex), Vec<usize>>>,
    vars: HashMap<(Trav, Trav), Var>,
}

impl<'a> Encoding<'a> {
    fn pair(&self, t: Trav) -> (Vertex, Vertex) {
        let s = self.seqs[t.0];
        (s[t.1], s[(t.1 + 1) % s.len()])
    }

    /// Traversals of `T_j` that could share a block with `t`.
    fn candidates(&self, t: Trav, j: Vertex) -> &[usize] {
        let i = t.0 as Vertex + 1;
        let (a, b) = self.pair(t);
        let k = if a == j { b } else { a };
        self.by_pair[(j - 1) as usize]
            .get(&key(i, k))
            .map_or(&[], Vec::as_slice)
    }

    fn var(&self, t: Trav, u: Trav) -> Option<Var> {
        self.vars.get(&(t.min(u), t.max(u))).copied()
    }

    /// If `t` shares a block with `member` of `T_j`, the corner of `T_i` at
    /// `j` next to `t` must meet the corner of `T_j` at `i` next to
    /// `member`: the two other traversals there share a block too. `None`
    /// when the corners carry different pairs.
    fn across(&self, t: Trav, member: Trav) -> Option<(Trav, Trav)> {
        let s = self.seqs[t.0];
        let len = s.len();
        let i = t.0 as Vertex + 1;
        let j = member.0 as Vertex + 1;
        let forward = s[(t.1 + 1) % len] == j;
        let neighbour = if forward {
            (t.0, (t.1 + 1) % len)
        } else {
            (t.0, (t.1 + len - 1) % len)
        };
        let sj = self.seqs[member.0];
        let lj = sj.len();
        let y = if sj[member.1] == i {
            (member.1 + lj - 1) % lj
        } else {
            (member.1 + 1) % lj
        };
        let (na, nb) = self.pair(neighbour);
        let other = if na == j { nb } else { na };
        let (ya, yb) = self.pair((member.0, y));
        (key(ya, yb) == key(i, other)).then_some((neighbour, (member.0, y)))
    }
}

/// Find a block assignment for a (compatible) embedding set. Copies of a
/// repeated triple are numbered by where their member in the circuit of the
/// smallest point of the triple occurs.
///
/// The search is exact: `GluingNotFound` means no assignment exists.
pub fn find_gluing(s: &EmbeddingSet) -> Result<Gluing> {
    let seqs: Vec<&[Vertex]> = s.circuits().iter().map(|c| c.seq()).collect();
    if s.m() == 1 {
        let blocks = seqs
            .iter()
            .enumerate()
            .map(|(c, seq)| {
                let i = c as Vertex + 1;
                (0..seq.len())
                    .map(|p| Block::new(i, seq[p], seq[(p + 1) % seq.len()], 0))
                    .collect()
            })
            .collect();
        return Ok(Gluing { blocks });
    }

    let by_pair = seqs
        .iter()
        .map(|seq| {
            let mut m: HashMap<(Vertex, Vertex), Vec<usize>> = HashMap::new();
            for p in 0..seq.len() {
                m.entry(key(seq[p], seq[(p + 1) % seq.len()])).or_default().push(p);
            }
            m
        })
        .collect();
    let mut enc = Encoding {
        seqs,
        by_pair,
        vars: HashMap::new(),
    };
    let travs: Vec<Trav> = enc
        .seqs
        .iter()
        .enumerate()
        .flat_map(|(c, seq)| (0..seq.len()).map(move |p| (c, p)))
        .collect();

    let mut solver = Solver::new();
    let mut next = 0;
    for &t in &travs {
        let (a, b) = enc.pair(t);
        for j in [a, b] {
            for q in enc.candidates(t, j).to_vec() {
                let u = ((j - 1) as usize, q);
                if t < u {
                    enc.vars.insert((t, u), Var::from_index(next));
                    next += 1;
                }
            }
        }
    }

    for &t in &travs {
        let (a, b) = enc.pair(t);
        let row = |j: Vertex| -> Vec<(Trav, Var)> {
            enc.candidates(t, j)
                .iter()
                .map(|&q| {
                    let u = ((j - 1) as usize, q);
                    (u, enc.var(t, u).unwrap())
                })
                .collect()
        };
        let (ra, rb) = (row(a), row(b));
        for r in [&ra, &rb] {
            // exactly one partner in each of the other two circuits
            let some: Vec<Lit> = r.iter().map(|&(_, v)| v.positive()).collect();
            solver.add_clause(&some);
            for x in 0..r.len() {
                for y in x + 1..r.len() {
                    solver.add_clause(&[r[x].1.negative(), r[y].1.negative()]);
                }
            }
            for &(u, v) in r {
                match enc.across(t, u) {
                    None => solver.add_clause(&[v.negative()]),
                    Some((n, y)) => {
                        let w = enc.var(n, y).expect("corner partners share a triple");
                        solver.add_clause(&[v.negative(), w.positive()]);
                    }
                }
            }
        }
        for &(u, vu) in &ra {
            for &(w, vw) in &rb {
                let vuw = enc.var(u, w).expect("block members share a triple");
                solver.add_clause(&[vu.negative(), vw.negative(), vuw.positive()]);
            }
        }
    }

    if !solver.solve().map_err(|_| Error::GluingNotFound)? {
        return Err(Error::GluingNotFound);
    }
    let model = solver.model().ok_or(Error::GluingNotFound)?;
    let truth = |v: Var| model[v.index()].is_positive();

    // One group per block, keyed by its member in the smallest circuit.
    let mut group_of: Vec<Vec<usize>> = enc.seqs.iter().map(|s| vec![usize::MAX; s.len()]).collect();
    let mut ranked: Vec<(Block, usize, usize)> = Vec::new();
    for &t in &travs {
        let i = t.0 as Vertex + 1;
        let (a, b) = enc.pair(t);
        if i > a || i > b {
            continue;
        }
        let g = ranked.len();
        group_of[t.0][t.1] = g;
        for j in [a, b] {
            let q = enc
                .candidates(t, j)
                .iter()
                .copied()
                .find(|&q| truth(enc.var(t, ((j - 1) as usize, q)).unwrap()))
                .expect("model gives every traversal a partner");
            group_of[(j - 1) as usize][q] = g;
        }
        ranked.push((Block::new(i, a, b, 0), t.1, g));
    }
    ranked.sort_by_key(|r| (r.0.triple, r.1));
    let mut named = vec![Block::new(1, 2, 3, 0); ranked.len()];
    let mut prev: Option<[Vertex; 3]> = None;
    let mut copy = 0;
    for (b, _, g) in &ranked {
        copy = if prev == Some(b.triple) { copy + 1 } else { 0 };
        prev = Some(b.triple);
        named[*g] = Block { copy, ..*b };
    }
    let blocks = group_of
        .iter()
        .map(|row| row.iter().map(|&g| named[g]).collect())
        .collect();
    Ok(Gluing { blocks })
}

/// Check that `g` places every traversal of `s` in a block on its triple
/// and uses each block of `graph` exactly once from each of its points.
pub fn check_gluing(s: &EmbeddingSet, g: &Gluing, graph: &LeviGraph) -> Result<Vec<Vec<usize>>> {
    let bad = |msg: String| Error::MalformedScheme(msg);
    if g.blocks.len() != s.circuits().len() {
        return Err(bad("gluing has the wrong number of circuits".into()));
    }
    let mut uses = vec![0u8; graph.blocks().len()];
    let mut out = Vec::with_capacity(g.blocks.len());
    for (idx, (c, row)) in s.circuits().iter().zip(&g.blocks).enumerate() {
        let i = idx as Vertex + 1;
        if row.len() != c.len() {
            return Err(bad(format!("gluing row {i} has the wrong length")));
        }
        let mut ids = Vec::with_capacity(row.len());
        for (p, (u, w)) in c.steps().enumerate() {
            let b = row[p];
            if b != Block::new(i, u, w, b.copy) {
                return Err(bad(format!("traversal {u}-{w} of T_{i} placed in block {:?}", b.triple)));
            }
            let id = graph
                .block_index(&b)
                .ok_or_else(|| bad(format!("block copy {} out of range", b.copy)))?;
            uses[id] += 1;
            ids.push(id);
        }
        out.push(ids);
    }
    if uses.iter().any(|&u| u != 3) {
        return Err(bad("some block is not used once from each of its points".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{build_multi_glued, Choices};
    use crate::levi::{build_levi, HypergraphSpec};
    use crate::scheme::{set_to_scheme_glued, trace_faces};

    #[test]
    fn found_gluings_are_consistent_and_match_the_builder() {
        for (n, m, orientable) in [(4, 2, true), (4, 3, false), (6, 2, false), (8, 3, true)] {
            let (s, built) = build_multi_glued(n, m, orientable, &Choices::seeded(9)).unwrap();
            let graph = build_levi(HypergraphSpec::new(n, m).unwrap());
            let found = find_gluing(&s).unwrap();
            check_gluing(&s, &found, &graph).unwrap();
            check_gluing(&s, &built, &graph).unwrap();
            let a = trace_faces(&set_to_scheme_glued(&s, &found).unwrap()).unwrap();
            let b = trace_faces(&set_to_scheme_glued(&s, &built).unwrap()).unwrap();
            assert_eq!(a, b);
            assert!(a.is_quadrilateral());
        }
    }

    #[test]
    fn malformed_gluings_are_rejected() {
        let (s, mut g) = build_multi_glued(4, 2, true, &Choices::first()).unwrap();
        let graph = build_levi(HypergraphSpec::new(4, 2).unwrap());
        // send one traversal to the other copy of its triple
        let b = g.blocks[0][0];
        g.blocks[0][0] = Block { copy: 1 - b.copy, ..b };
        assert!(matches!(check_gluing(&s, &g, &graph), Err(Error::MalformedScheme(_))));
        g.blocks[0][0] = Block { copy: 2, ..b };
        assert!(matches!(check_gluing(&s, &g, &graph), Err(Error::MalformedScheme(_))));
    }

    #[test]
    fn simple_sets_need_no_search() {
        let (s, built) = build_multi_glued(8, 1, true, &Choices::first()).unwrap();
        assert_eq!(find_gluing(&s).unwrap(), built);
    }
}
