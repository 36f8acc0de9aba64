//! Facial walks of an embedding scheme.
//!
//! A walk state is `(vertex, outgoing edge, local orientation)`. Leaving `v`
//! along `e` with orientation `s`, we arrive at `w` with `s * sig(e)` and leave
//! along the successor of `e` in the rotation at `w` when that product is
//! positive, the predecessor otherwise. Each face is met twice, once in each
//! direction; the reverse walk through `(w, e', s')` is started from its
//! mirror state `(w, rot_w^{-s'}(e'), -s')`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{is_orientable, EmbeddingScheme};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceReport {
    pub face_count: usize,
    /// Face lengths, sorted ascending.
    pub face_lengths: Vec<usize>,
    pub euler_genus: i64,
    pub orientable: bool,
}

impl FaceReport {
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &l in &self.face_lengths {
            *h.entry(l).or_default() += 1;
        }
        h
    }

    pub fn is_quadrilateral(&self) -> bool {
        self.face_lengths.iter().all(|&l| l == 4)
    }

    /// Orientable genus when orientable, otherwise the crosscap number.
    pub fn surface_genus(&self) -> i64 {
        if self.orientable {
            self.euler_genus / 2
        } else {
            self.euler_genus
        }
    }
}

/// One facial walk: the vertices visited and the edges used, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Clone, Copy)]
struct State {
    v: usize,
    e: usize,
    s: i8,
}

fn state_index(sch: &EmbeddingScheme, st: State) -> usize {
    let (p, _) = sch.graph().edge_ends(st.e);
    let end = usize::from(st.v != p);
    ((st.e * 2 + end) * 2) + usize::from(st.s < 0)
}

fn step(sch: &EmbeddingScheme, st: State) -> State {
    let w = sch.graph().other_end(st.e, st.v);
    let s = st.s * sch.signature(st.e);
    let e = if s > 0 { sch.succ(w, st.e) } else { sch.pred(w, st.e) };
    State { v: w, e, s }
}

fn mirror(sch: &EmbeddingScheme, st: State) -> State {
    let e = if st.s > 0 { sch.pred(st.v, st.e) } else { sch.succ(st.v, st.e) };
    State { v: st.v, e, s: -st.s }
}

pub(crate) fn is_connected(sch: &EmbeddingScheme) -> bool {
    let g = sch.graph();
    let count = g.vertex_count();
    if count == 0 {
        return true;
    }
    let mut seen = vec![false; count];
    let mut stack = vec![0];
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for &e in sch.rotation(v) {
            let w = g.other_end(e, v);
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    reached == count
}

/// All facial walks, each reported once.
pub fn faces(sch: &EmbeddingScheme) -> Result<Vec<Face>> {
    if !is_connected(sch) {
        return Err(Error::Disconnected);
    }
    let g = sch.graph();
    let mut visited = vec![false; 4 * g.edge_count()];
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        for &e in sch.rotation(v) {
            for s in [1i8, -1] {
                let start = State { v, e, s };
                if visited[state_index(sch, start)] {
                    continue;
                }
                let mut face = Face {
                    vertices: Vec::new(),
                    edges: Vec::new(),
                };
                let mut st = start;
                loop {
                    visited[state_index(sch, st)] = true;
                    visited[state_index(sch, mirror(sch, st))] = true;
                    face.vertices.push(st.v);
                    face.edges.push(st.e);
                    st = step(sch, st);
                    if state_index(sch, st) == state_index(sch, start) {
                        break;
                    }
                }
                out.push(face);
            }
        }
    }
    Ok(out)
}

/// Face count, lengths, Euler genus and orientability of a connected scheme.
pub fn trace_faces(sch: &EmbeddingScheme) -> Result<FaceReport> {
    let fs = faces(sch)?;
    let g = sch.graph();
    let mut face_lengths: Vec<usize> = fs.iter().map(|f| f.edges.len()).collect();
    face_lengths.sort_unstable();
    let face_count = fs.len();
    let euler_genus = 2 - g.vertex_count() as i64 + g.edge_count() as i64 - face_count as i64;
    Ok(FaceReport {
        face_count,
        face_lengths,
        euler_genus,
        orientable: is_orientable(sch),
    })
}
