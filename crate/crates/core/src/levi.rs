//! The hypergraph `mK_n^3` and its Levi (incidence) graph.
//!
//! Point vertices are labelled `1..=n`. Block vertices are the sorted triples
//! `{i, j, k}` with a copy index `0..m`. In the Levi graph, point `i` gets
//! vertex id `i - 1` and block `b` gets id `n + b`. The edge joining block `b`
//! to the point in slot `s` of its triple has id `3 * b + s`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point label in `1..=n` (apex labels `n + 1`, `n + 2` only appear while
/// an induction step is in flight).
pub type Vertex = u32;

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HypergraphSpec {
    n: u32,
    m: u32,
}

impl HypergraphSpec {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n < 4 || m < 1 {
            return Err(Error::InvalidSpec { n, m });
        }
        Ok(HypergraphSpec { n, m })
    }

    /// `K_n^3`, every triple once.
    pub fn complete(n: u32) -> Result<Self> {
        Self::new(n, 1)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of hyperedges, `m * C(n, 3)`.
    pub fn edge_count(&self) -> u64 {
        self.m as u64 * binomial(self.n as u64, 3)
    }

    pub fn levi_vertex_count(&self) -> u64 {
        self.n as u64 + self.edge_count()
    }

    pub fn levi_edge_count(&self) -> u64 {
        3 * self.edge_count()
    }

    /// Degree of every point vertex in the Levi graph, `m * C(n-1, 2)`.
    pub fn point_degree(&self) -> u64 {
        self.m as u64 * binomial(self.n as u64 - 1, 2)
    }
}

impl fmt::Display for HypergraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "K_{}^3", self.n)
        } else {
            write!(f, "{}K_{}^3", self.m, self.n)
        }
    }
}

/// A hyperedge: a sorted triple plus the index distinguishing parallel copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Block {
    pub triple: [Vertex; 3],
    pub copy: u32,
}

impl Block {
    pub fn new(a: Vertex, b: Vertex, c: Vertex, copy: u32) -> Self {
        let mut triple = [a, b, c];
        triple.sort_unstable();
        Block { triple, copy }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.triple.contains(&v)
    }

    /// Slot of `v` within the sorted triple.
    pub fn slot_of(&self, v: Vertex) -> Option<usize> {
        self.triple.iter().position(|&t| t == v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LeviVertex {
    Point(Vertex),
    Block(Block),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviGraph {
    spec: HypergraphSpec,
    blocks: Vec<Block>,
    index: HashMap<Block, usize>,
    point_edges: Vec<Vec<usize>>,
}

pub fn build_levi(spec: HypergraphSpec) -> LeviGraph {
    let n = spec.n();
    let mut blocks = Vec::with_capacity(spec.edge_count() as usize);
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                for copy in 0..spec.m() {
                    blocks.push(Block {
                        triple: [i, j, k],
                        copy,
                    });
                }
            }
        }
    }
    let index = blocks.iter().enumerate().map(|(b, &blk)| (blk, b)).collect();
    let mut point_edges = vec![Vec::new(); n as usize];
    for (b, blk) in blocks.iter().enumerate() {
        for (slot, &v) in blk.triple.iter().enumerate() {
            point_edges[v as usize - 1].push(3 * b + slot);
        }
    }
    LeviGraph {
        spec,
        blocks,
        index,
        point_edges,
    }
}

impl LeviGraph {
    pub fn spec(&self) -> HypergraphSpec {
        self.spec
    }

    pub fn n(&self) -> u32 {
        self.spec.n()
    }

    pub fn vertex_count(&self) -> usize {
        self.n() as usize + self.blocks.len()
    }

    pub fn edge_count(&self) -> usize {
        3 * self.blocks.len()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block_index(&self, block: &Block) -> Option<usize> {
        self.index.get(block).copied()
    }

    pub fn vertex_id(&self, v: LeviVertex) -> Option<usize> {
        match v {
            LeviVertex::Point(p) if p >= 1 && p <= self.n() => Some(p as usize - 1),
            LeviVertex::Point(_) => None,
            LeviVertex::Block(b) => self.block_index(&b).map(|b| self.n() as usize + b),
        }
    }

    pub fn vertex(&self, id: usize) -> LeviVertex {
        let n = self.n() as usize;
        if id < n {
            LeviVertex::Point(id as Vertex + 1)
        } else {
            LeviVertex::Block(self.blocks[id - n])
        }
    }

    pub fn is_point(&self, id: usize) -> bool {
        id < self.n() as usize
    }

    /// Endpoints `(point id, block id)` of an edge.
    pub fn edge_ends(&self, e: usize) -> (usize, usize) {
        let b = e / 3;
        let p = self.blocks[b].triple[e % 3] as usize - 1;
        (p, self.n() as usize + b)
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (p, b) = self.edge_ends(e);
        if v == p {
            b
        } else {
            p
        }
    }

    /// Edge ids incident to vertex `id`, in canonical (block-index) order.
    pub fn incident_edges(&self, id: usize) -> Vec<usize> {
        let n = self.n() as usize;
        if id < n {
            self.point_edges[id].clone()
        } else {
            let b = id - n;
            vec![3 * b, 3 * b + 1, 3 * b + 2]
        }
    }

    pub fn degree(&self, id: usize) -> usize {
        if self.is_point(id) {
            self.point_edges[id].len()
        } else {
            3
        }
    }

    /// The edge joining point `p` and block index `b`, if they are incident.
    pub fn edge_between(&self, p: Vertex, b: usize) -> Option<usize> {
        self.blocks[b].slot_of(p).map(|slot| 3 * b + slot)
    }
}

/// Euler-formula lower bound on the Euler genus: `ceil(e/2 - n + 2)`.
pub fn euler_genus_lower_bound(spec: HypergraphSpec) -> i64 {
    let e = spec.edge_count() as i64;
    let n = spec.n() as i64;
    // ceil(e / 2) - n + 2
    (e + 1).div_euclid(2) - n + 2
}

/// Orientable genus (`orientable = true`) or crosscap number of `mK_n^3`
/// for even `n`: `(n-2)(m n (n-1) - 12) / 24`, doubled in the non-orientable
/// case.
pub fn genus_formula(spec: HypergraphSpec, orientable: bool) -> Result<u64> {
    let (n, m) = (spec.n() as u64, spec.m() as u64);
    if n % 2 == 1 {
        return Err(Error::OddOrder(spec.n()));
    }
    if !orientable && n == 4 && m == 1 {
        return Err(Error::UnsupportedCase(
            "K_4^3 is planar; its non-orientable genus is 0 by convention".into(),
        ));
    }
    let numerator = (n - 2) * (m * n * (n - 1) - 12);
    Ok(if orientable {
        numerator / 24
    } else {
        numerator / 12
    })
}
