//! Embedding schemes (rotation system plus edge signature) on the Levi graph,
//! and the correspondence between quadrilateral schemes and embedding sets.

mod faces;
mod gluing;

use std::collections::{HashMap, VecDeque};

pub use faces::{faces, trace_faces, Face, FaceReport};
pub use gluing::{check_gluing, find_gluing, Gluing};

use crate::circuits::{is_embedding_set, EmbeddingSet};
use crate::error::{Error, Result};
use crate::levi::{build_levi, HypergraphSpec, LeviGraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingScheme {
    graph: LeviGraph,
    rotation: Vec<Vec<usize>>,
    signature: Vec<i8>,
    // position of each edge in the rotation at its point end and block end
    pos: Vec<[usize; 2]>,
}

impl EmbeddingScheme {
    pub fn new(graph: LeviGraph, rotation: Vec<Vec<usize>>, signature: Vec<i8>) -> Result<Self> {
        if rotation.len() != graph.vertex_count() {
            return Err(Error::MalformedScheme(format!(
                "expected {} rotations, got {}",
                graph.vertex_count(),
                rotation.len()
            )));
        }
        if signature.len() != graph.edge_count() || signature.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::MalformedScheme("signature must be +1/-1 on every edge".into()));
        }
        let mut pos = vec![[usize::MAX; 2]; graph.edge_count()];
        for (v, rot) in rotation.iter().enumerate() {
            let mut expected = graph.incident_edges(v);
            let mut got = rot.clone();
            expected.sort_unstable();
            got.sort_unstable();
            if expected != got {
                return Err(Error::MalformedScheme(format!(
                    "rotation at vertex {v} does not list its incident edges exactly once"
                )));
            }
            let end = usize::from(!graph.is_point(v));
            for (idx, &e) in rot.iter().enumerate() {
                pos[e][end] = idx;
            }
        }
        Ok(EmbeddingScheme {
            graph,
            rotation,
            signature,
            pos,
        })
    }

    pub fn graph(&self) -> &LeviGraph {
        &self.graph
    }

    /// Cyclic order of edge ids around vertex `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn signature(&self, e: usize) -> i8 {
        self.signature[e]
    }

    fn position(&self, v: usize, e: usize) -> usize {
        self.pos[e][usize::from(!self.graph.is_point(v))]
    }

    pub fn succ(&self, v: usize, e: usize) -> usize {
        let rot = &self.rotation[v];
        rot[(self.position(v, e) + 1) % rot.len()]
    }

    pub fn pred(&self, v: usize, e: usize) -> usize {
        let rot = &self.rotation[v];
        rot[(self.position(v, e) + rot.len() - 1) % rot.len()]
    }

    fn reindex(&mut self, v: usize) {
        let end = usize::from(!self.graph.is_point(v));
        for (idx, &e) in self.rotation[v].iter().enumerate() {
            self.pos[e][end] = idx;
        }
    }

    pub fn invert_rotation(&mut self, v: usize) {
        self.rotation[v].reverse();
        self.reindex(v);
    }

    pub fn set_rotation(&mut self, v: usize, rot: Vec<usize>) -> Result<()> {
        let mut expected = self.graph.incident_edges(v);
        let mut got = rot.clone();
        expected.sort_unstable();
        got.sort_unstable();
        if expected != got {
            return Err(Error::MalformedScheme(format!("bad rotation for vertex {v}")));
        }
        self.rotation[v] = rot;
        self.reindex(v);
        Ok(())
    }

    pub fn flip_signature(&mut self, e: usize) {
        self.signature[e] = -self.signature[e];
    }

    /// Local switch at `v`: invert its rotation and negate its edges.
    pub fn switch_at(&mut self, v: usize) {
        self.invert_rotation(v);
        for e in self.graph.incident_edges(v) {
            self.flip_signature(e);
        }
    }
}

/// Orientable iff the signature can be switched to all-positive: fix signs
/// along a BFS tree, then every other edge must agree.
pub fn is_orientable(sch: &EmbeddingScheme) -> bool {
    let g = sch.graph();
    let mut side: Vec<Option<i8>> = vec![None; g.vertex_count()];
    for root in 0..g.vertex_count() {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(1);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let sv = side[v].unwrap();
            for &e in sch.rotation(v) {
                let w = g.other_end(e, v);
                let want = sv * sch.signature(e);
                match side[w] {
                    None => {
                        side[w] = Some(want);
                        queue.push_back(w);
                    }
                    Some(sw) if sw != want => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Build the scheme of a quadrilateral embedding from an embedding set:
/// the rotation at point `i` lists the blocks `{i, a_p, a_{p+1}}` in the
/// order `T_i` traverses them, blocks rotate as their sorted triple, and the
/// edge from block `{i,j,k}` to one of its points is positive iff that point's
/// circuit traverses the opposite pair in cyclic triple order.
pub fn set_to_scheme(s: &EmbeddingSet) -> Result<EmbeddingScheme> {
    check_set(s)?;
    let gluing = find_gluing(s)?;
    glue(s, &gluing)
}

/// [`set_to_scheme`] with the block of every traversal supplied, as the
/// builders know it; no search is needed.
pub fn set_to_scheme_glued(s: &EmbeddingSet, gluing: &Gluing) -> Result<EmbeddingScheme> {
    check_set(s)?;
    glue(s, gluing)
}

fn check_set(s: &EmbeddingSet) -> Result<()> {
    match is_embedding_set(s, s.strong()).first() {
        Some(d) => Err(Error::NotAnEmbeddingSet(d.to_string())),
        None => Ok(()),
    }
}

fn glue(s: &EmbeddingSet, gluing: &Gluing) -> Result<EmbeddingScheme> {
    let spec = HypergraphSpec::new(s.n(), s.m())?;
    let graph = build_levi(spec);
    let labels = check_gluing(s, gluing, &graph)?;

    let mut rotation = vec![Vec::new(); graph.vertex_count()];
    let mut signature = vec![0i8; graph.edge_count()];
    for (idx, c) in s.circuits().iter().enumerate() {
        let i = idx as Vertex + 1;
        for (p, step) in c.steps().enumerate() {
            let b = labels[idx][p];
            let e = graph.edge_between(i, b).expect("checked gluing");
            rotation[idx].push(e);
            let t = graph.blocks()[b].triple;
            let slot = e % 3;
            let forward = (t[(slot + 1) % 3], t[(slot + 2) % 3]);
            signature[e] = if step == forward { 1 } else { -1 };
        }
    }
    let n = s.n() as usize;
    for b in 0..graph.blocks().len() {
        rotation[n + b] = vec![3 * b, 3 * b + 1, 3 * b + 2];
    }
    EmbeddingScheme::new(graph, rotation, signature)
}

/// Read the embedding set back off a quadrilateral scheme: each angle at a
/// point `i` lies in a 4-face whose opposite point is the next circuit entry.
pub fn scheme_to_set(sch: &EmbeddingScheme) -> Result<EmbeddingSet> {
    let g = sch.graph();
    let n = g.n();
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    let fs = faces(sch)?;
    if let Some(f) = fs.iter().find(|f| f.edges.len() != 4) {
        return Err(Error::NotQuadrilateral(f.edges.len()));
    }
    let mut angle: HashMap<(usize, usize, usize), Vertex> = HashMap::new();
    for f in &fs {
        for k in 0..4 {
            let v = f.vertices[k];
            if !g.is_point(v) {
                continue;
            }
            let (e_in, e_out) = (f.edges[(k + 3) % 4], f.edges[k]);
            let opposite = f.vertices[(k + 2) % 4];
            if !g.is_point(opposite) {
                return Err(Error::MalformedScheme("face does not alternate sides".into()));
            }
            angle.insert((v, e_in.min(e_out), e_in.max(e_out)), opposite as Vertex + 1);
        }
    }
    let mut seqs = Vec::with_capacity(n as usize);
    for v in 0..n as usize {
        let rot = sch.rotation(v);
        let len = rot.len();
        let seq = (0..len)
            .map(|p| {
                let (a, b) = (rot[(p + len - 1) % len], rot[p]);
                angle
                    .get(&(v, a.min(b), a.max(b)))
                    .copied()
                    .ok_or_else(|| Error::MalformedScheme(format!("no face at an angle of point {}", v + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        seqs.push(seq);
    }
    let mut set = EmbeddingSet::from_sequences(n, g.spec().m(), seqs, false);
    let strong = is_embedding_set(&set, true).is_valid();
    set.set_strong(strong);
    if let Some(d) = is_embedding_set(&set, false).first() {
        return Err(Error::NotAnEmbeddingSet(d.to_string()));
    }
    Ok(set)
}

fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    match b.iter().position(|&x| x == a[0]) {
        Some(off) => (0..a.len()).all(|k| a[k] == b[(off + k) % b.len()]),
        None => false,
    }
}

/// Switching equivalence. At vertices of degree at least 3 the rotations
/// decide membership in the switching set; the signature then has to differ
/// exactly on edges leaving that set. Vertices of degree at most 2 are solved
/// for by parity propagation.
pub fn schemes_equivalent(a: &EmbeddingScheme, b: &EmbeddingScheme) -> Result<bool> {
    let g = a.graph();
    if g != b.graph() {
        return Err(Error::GraphMismatch);
    }
    let count = g.vertex_count();
    let mut inside: Vec<Option<bool>> = vec![None; count];
    let mut forced = Vec::new();
    for v in 0..count {
        let (ra, rb) = (a.rotation(v), b.rotation(v));
        let same = same_cycle(ra, rb);
        let reversed: Vec<usize> = ra.iter().rev().copied().collect();
        let flipped = same_cycle(&reversed, rb);
        match (same, flipped) {
            (false, false) => return Ok(false),
            (true, false) => inside[v] = Some(false),
            (false, true) => inside[v] = Some(true),
            (true, true) => continue,
        }
        forced.push(v);
    }
    let mut queue: VecDeque<usize> = forced.into_iter().collect();
    let mut next_root = 0;
    loop {
        while let Some(v) = queue.pop_front() {
            let iv = inside[v].unwrap();
            for &e in a.rotation(v) {
                let w = g.other_end(e, v);
                let want = iv ^ (a.signature(e) != b.signature(e));
                match inside[w] {
                    None => {
                        inside[w] = Some(want);
                        queue.push_back(w);
                    }
                    Some(x) if x != want => return Ok(false),
                    _ => {}
                }
            }
        }
        while next_root < count && inside[next_root].is_some() {
            next_root += 1;
        }
        if next_root == count {
            return Ok(true);
        }
        inside[next_root] = Some(false);
        queue.push_back(next_root);
    }
}
