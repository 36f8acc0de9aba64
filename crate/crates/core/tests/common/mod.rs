//! Shared test support: a brute-force face tracer on flags, written without
//! any of the library's walking code, plus a corpus of schemes.

#![allow(dead_code)]

use kn3::builder::{build_even, build_multi, fixtures, Choices};
use kn3::scheme::{set_to_scheme, EmbeddingScheme};

/// What the oracle reports; mirrors the fields of `FaceReport`.
#[derive(Debug, PartialEq, Eq)]
pub struct OracleFaces {
    pub face_count: usize,
    pub face_lengths: Vec<usize>,
    pub euler_genus: i64,
    pub orientable: bool,
}

// A flag is (edge, end, side); end 0 is the point end, side 1 faces the
// next edge of the rotation at that end.
fn flag(e: usize, end: usize, side: usize) -> usize {
    (e * 2 + end) * 2 + side
}

pub fn oracle_trace(sch: &EmbeddingScheme) -> OracleFaces {
    let g = sch.graph();
    let edges = g.edge_count();
    let flags = 4 * edges;
    let mut t0 = vec![usize::MAX; flags];
    let mut t1 = vec![usize::MAX; flags];
    let mut t2 = vec![usize::MAX; flags];
    for e in 0..edges {
        let keep = usize::from(sch.signature(e) < 0);
        for end in 0..2 {
            for side in 0..2 {
                let f = flag(e, end, side);
                // positive edges swap the side label when crossing to the other end
                let other_side = if keep == 1 { side } else { 1 - side };
                t0[f] = flag(e, 1 - end, other_side);
                t2[f] = flag(e, end, 1 - side);
            }
        }
    }
    for v in 0..g.vertex_count() {
        let end = usize::from(!g.is_point(v));
        let rot = sch.rotation(v);
        for k in 0..rot.len() {
            let (a, b) = (rot[k], rot[(k + 1) % rot.len()]);
            t1[flag(a, end, 1)] = flag(b, end, 0);
            t1[flag(b, end, 0)] = flag(a, end, 1);
        }
    }
    assert!(t0.iter().chain(&t1).all(|&x| x != usize::MAX));

    let mut seen = vec![false; flags];
    let mut face_lengths = Vec::new();
    for start in 0..flags {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        seen[start] = true;
        let mut size = 0;
        while let Some(f) = stack.pop() {
            size += 1;
            for nb in [t0[f], t1[f]] {
                if !seen[nb] {
                    seen[nb] = true;
                    stack.push(nb);
                }
            }
        }
        face_lengths.push(size / 2);
    }
    face_lengths.sort_unstable();

    // orientable iff the flag graph is bipartite
    let mut colour = vec![u8::MAX; flags];
    let mut orientable = true;
    for start in 0..flags {
        if colour[start] != u8::MAX {
            continue;
        }
        colour[start] = 0;
        let mut stack = vec![start];
        while let Some(f) = stack.pop() {
            for nb in [t0[f], t1[f], t2[f]] {
                if colour[nb] == u8::MAX {
                    colour[nb] = 1 - colour[f];
                    stack.push(nb);
                } else if colour[nb] == colour[f] {
                    orientable = false;
                }
            }
        }
    }

    let face_count = face_lengths.len();
    OracleFaces {
        face_count,
        face_lengths,
        euler_genus: 2 - g.vertex_count() as i64 + edges as i64 - face_count as i64,
        orientable,
    }
}

/// Fixtures and a spread of constructions, as (label, scheme).
pub fn scheme_corpus() -> Vec<(String, EmbeddingScheme)> {
    let mut out = Vec::new();
    for (name, s) in [
        ("planar K4", fixtures::planar_k4()),
        ("strong K6", fixtures::strong_k6()),
        ("non-orientable K6", fixtures::nonorientable_k6()),
        ("Klein 2K4", fixtures::klein_2k4()),
    ] {
        out.push((name.to_string(), set_to_scheme(&s).unwrap()));
    }
    for n in (4..=12).step_by(2) {
        for orientable in [true, false] {
            if !orientable && n == 4 {
                continue;
            }
            for seed in [None, Some(3), Some(11)] {
                let choices = seed.map(Choices::seeded).unwrap_or_default();
                let s = build_even(n, orientable, &choices).unwrap();
                out.push((format!("K{n} orientable={orientable} seed={seed:?}"), set_to_scheme(&s).unwrap()));
            }
        }
    }
    for (n, m, orientable) in [(4, 2, true), (4, 3, false), (6, 2, true), (6, 2, false), (8, 2, true)] {
        let s = build_multi(n, m, orientable, &Choices::seeded(5)).unwrap();
        out.push((format!("{m}K{n} orientable={orientable}"), set_to_scheme(&s).unwrap()));
    }
    out
}
