//! Versioned, line-oriented text formats for embedding sets, schemes and
//! census files. Writers produce a canonical byte stream that the parsers
//! accept and reproduce exactly.

use std::fmt::Write as _;

use crate::circuits::{Circuit, EmbeddingSet};
use crate::error::{Error, Result};
use crate::levi::{build_levi, Block, HypergraphSpec, LeviVertex, Vertex};
use crate::scheme::EmbeddingScheme;

pub const SET_HEADER: &str = "# kn3-embedding-set v1";
pub const SCHEME_HEADER: &str = "# kn3-scheme v1";
pub const CENSUS_HEADER: &str = "# kn3-census v1";

/// `T <i>: v1 v2 ... vN`
pub fn write_circuit_line(index: Vertex, c: &Circuit) -> String {
    let mut out = format!("T {index}:");
    for v in c.seq() {
        write!(out, " {v}").unwrap();
    }
    out
}

pub fn write_set(s: &EmbeddingSet) -> String {
    let mut out = String::new();
    writeln!(out, "{SET_HEADER}").unwrap();
    writeln!(out, "n={} m={} orientable={}", s.n(), s.m(), u8::from(s.strong())).unwrap();
    for (idx, c) in s.circuits().iter().enumerate() {
        writeln!(out, "{}", write_circuit_line(idx as Vertex + 1, c)).unwrap();
    }
    out
}

fn check_header(first: Option<(usize, &str)>, header: &str, kind: &str) -> Result<()> {
    match first {
        Some((_, line)) if line.trim_end() == header => Ok(()),
        Some((no, line)) if line.starts_with(&header[..header.len() - 3]) => {
            Err(Error::parse(no, format!("unsupported {kind} version: {line:?}")))
        }
        Some((no, line)) => Err(Error::parse(no, format!("expected {header:?}, found {line:?}"))),
        None => Err(Error::parse(1, format!("empty {kind} file"))),
    }
}

fn parse_key_values(no: usize, line: &str) -> Result<(u32, u32, bool)> {
    let (mut n, mut m, mut orientable) = (None, None, None);
    for field in line.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| Error::parse(no, format!("expected key=value, found {field:?}")))?;
        let parsed: u32 = value
            .parse()
            .map_err(|_| Error::parse(no, format!("bad number in {field:?}")))?;
        match key {
            "n" => n = Some(parsed),
            "m" => m = Some(parsed),
            "orientable" if parsed <= 1 => orientable = Some(parsed == 1),
            _ => return Err(Error::parse(no, format!("unexpected field {field:?}"))),
        }
    }
    match (n, m, orientable) {
        (Some(n), Some(m), Some(o)) => Ok((n, m, o)),
        _ => Err(Error::parse(no, "metadata line needs n=, m= and orientable=")),
    }
}

fn parse_circuit_line(no: usize, line: &str) -> Result<(Vertex, Vec<Vertex>)> {
    let rest = line
        .strip_prefix("T ")
        .ok_or_else(|| Error::parse(no, format!("expected a circuit line, found {line:?}")))?;
    let (index, body) = rest
        .split_once(':')
        .ok_or_else(|| Error::parse(no, "missing ':' after circuit index"))?;
    let index: Vertex = index
        .trim()
        .parse()
        .map_err(|_| Error::parse(no, format!("bad circuit index {index:?}")))?;
    let seq = body
        .split_whitespace()
        .map(|tok| {
            tok.parse::<Vertex>()
                .map_err(|_| Error::parse(no, format!("bad vertex label {tok:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if seq.is_empty() {
        return Err(Error::parse(no, "empty circuit"));
    }
    Ok((index, seq))
}

/// Parse an embedding-set file. Line numbers in errors are 1-based.
pub fn parse_set(text: &str) -> Result<EmbeddingSet> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    check_header(lines.next(), SET_HEADER, "embedding-set")?;
    let (no, meta) = lines
        .next()
        .ok_or_else(|| Error::parse(2, "missing metadata line"))?;
    let (n, m, orientable) = parse_key_values(no, meta)?;
    if n < 4 || m < 1 {
        return Err(Error::parse(no, format!("invalid parameters n={n} m={m}")));
    }
    let mut seqs = Vec::with_capacity(n as usize);
    for (no, line) in lines {
        let (index, seq) = parse_circuit_line(no, line)?;
        if index as usize != seqs.len() + 1 {
            return Err(Error::parse(
                no,
                format!("expected circuit {}, found {index}", seqs.len() + 1),
            ));
        }
        seqs.push(seq);
    }
    if seqs.len() != n as usize {
        return Err(Error::parse(
            text.lines().count(),
            format!("expected {n} circuits, found {}", seqs.len()),
        ));
    }
    Ok(EmbeddingSet::from_sequences(n, m, seqs, orientable))
}

fn block_label(b: &Block, m: u32) -> String {
    let [i, j, k] = b.triple;
    if m == 1 {
        format!("e{{{i},{j},{k}}}")
    } else {
        format!("e{{{i},{j},{k}}}#{}", b.copy)
    }
}

fn vertex_label(v: LeviVertex, m: u32) -> String {
    match v {
        LeviVertex::Point(p) => p.to_string(),
        LeviVertex::Block(b) => block_label(&b, m),
    }
}

fn parse_vertex(no: usize, tok: &str) -> Result<LeviVertex> {
    if let Some(rest) = tok.strip_prefix("e{") {
        let (body, copy) = match rest.split_once('}') {
            Some((body, "")) => (body, 0),
            Some((body, tail)) => {
                let copy = tail
                    .strip_prefix('#')
                    .and_then(|c| c.parse().ok())
                    .ok_or_else(|| Error::parse(no, format!("bad copy suffix in {tok:?}")))?;
                (body, copy)
            }
            None => return Err(Error::parse(no, format!("unterminated block label {tok:?}"))),
        };
        let parts = body
            .split(',')
            .map(|p| p.parse::<Vertex>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::parse(no, format!("bad block label {tok:?}")))?;
        match parts[..] {
            [a, b, c] if a < b && b < c => Ok(LeviVertex::Block(Block::new(a, b, c, copy))),
            _ => Err(Error::parse(no, format!("block label {tok:?} must be a sorted triple"))),
        }
    } else {
        tok.parse()
            .map(LeviVertex::Point)
            .map_err(|_| Error::parse(no, format!("bad vertex {tok:?}")))
    }
}

pub fn write_scheme(sch: &EmbeddingScheme) -> String {
    let g = sch.graph();
    let m = g.spec().m();
    let mut out = String::new();
    writeln!(out, "{SCHEME_HEADER}").unwrap();
    for v in 0..g.vertex_count() {
        write!(out, "rot {}:", vertex_label(g.vertex(v), m)).unwrap();
        for &e in sch.rotation(v) {
            write!(out, " {}", vertex_label(g.vertex(g.other_end(e, v)), m)).unwrap();
        }
        out.push('\n');
    }
    for e in 0..g.edge_count() {
        let (p, b) = g.edge_ends(e);
        let sign = if sch.signature(e) > 0 { "+1" } else { "-1" };
        writeln!(
            out,
            "sig {} {}: {sign}",
            vertex_label(g.vertex(p), m),
            vertex_label(g.vertex(b), m)
        )
        .unwrap();
    }
    out
}

/// Parse a scheme file. `n` is the number of point rotations and `m` the
/// largest copy index plus one.
pub fn parse_scheme(text: &str) -> Result<EmbeddingScheme> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty())
        .peekable();
    check_header(lines.next(), SCHEME_HEADER, "scheme")?;
    let mut rots: Vec<(usize, LeviVertex, Vec<LeviVertex>)> = Vec::new();
    let mut sigs: Vec<(usize, LeviVertex, LeviVertex, i8)> = Vec::new();
    for (no, line) in lines {
        let (head, body) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(no, "missing ':'"))?;
        let mut words = head.split_whitespace();
        match words.next() {
            Some("rot") => {
                if !sigs.is_empty() {
                    return Err(Error::parse(no, "rotation line after signature lines"));
                }
                let v = parse_vertex(no, words.next().unwrap_or(""))?;
                let nbrs = body
                    .split_whitespace()
                    .map(|t| parse_vertex(no, t))
                    .collect::<Result<Vec<_>>>()?;
                rots.push((no, v, nbrs));
            }
            Some("sig") => {
                let u = parse_vertex(no, words.next().unwrap_or(""))?;
                let w = parse_vertex(no, words.next().unwrap_or(""))?;
                let sign = match body.trim() {
                    "+1" => 1,
                    "-1" => -1,
                    other => return Err(Error::parse(no, format!("bad sign {other:?}"))),
                };
                sigs.push((no, u, w, sign));
            }
            _ => return Err(Error::parse(no, format!("unexpected line {line:?}"))),
        }
    }
    let n = rots
        .iter()
        .filter(|(_, v, _)| matches!(v, LeviVertex::Point(_)))
        .count() as u32;
    let m = rots
        .iter()
        .filter_map(|(_, v, _)| match v {
            LeviVertex::Block(b) => Some(b.copy + 1),
            _ => None,
        })
        .max()
        .unwrap_or(1);
    let spec = HypergraphSpec::new(n, m).map_err(|e| Error::parse(1, e.to_string()))?;
    let graph = build_levi(spec);
    if rots.len() != graph.vertex_count() {
        return Err(Error::parse(
            1,
            format!("expected {} rotations, found {}", graph.vertex_count(), rots.len()),
        ));
    }
    let mut rotation = vec![Vec::new(); graph.vertex_count()];
    let mut seen = vec![false; graph.vertex_count()];
    for (no, v, nbrs) in rots {
        let id = graph
            .vertex_id(v)
            .ok_or_else(|| Error::parse(no, "vertex not in the Levi graph"))?;
        if std::mem::replace(&mut seen[id], true) {
            return Err(Error::parse(no, "duplicate rotation"));
        }
        for w in nbrs {
            let wid = graph
                .vertex_id(w)
                .ok_or_else(|| Error::parse(no, "neighbour not in the Levi graph"))?;
            let e = edge_of(&graph, id, wid).ok_or_else(|| Error::parse(no, "not adjacent"))?;
            rotation[id].push(e);
        }
    }
    let mut signature = vec![0i8; graph.edge_count()];
    for (no, u, w, sign) in sigs {
        let (uid, wid) = match (graph.vertex_id(u), graph.vertex_id(w)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::parse(no, "signature on unknown vertex")),
        };
        let e = edge_of(&graph, uid, wid).ok_or_else(|| Error::parse(no, "signature on a non-edge"))?;
        if signature[e] != 0 {
            return Err(Error::parse(no, "duplicate signature"));
        }
        signature[e] = sign;
    }
    if signature.contains(&0) {
        return Err(Error::parse(text.lines().count(), "missing signature lines"));
    }
    EmbeddingScheme::new(graph, rotation, signature)
        .map_err(|e| Error::parse(1, e.to_string()))
}

fn edge_of(g: &crate::levi::LeviGraph, u: usize, w: usize) -> Option<usize> {
    let (p, b) = if g.is_point(u) { (u, w) } else { (w, u) };
    if !g.is_point(p) || g.is_point(b) {
        return None;
    }
    g.edge_between(p as Vertex + 1, b - g.n() as usize)
}

/// One census record: a digest line followed by a set in the set format.
pub fn write_census<'a>(records: impl IntoIterator<Item = (&'a str, &'a EmbeddingSet)>) -> String {
    let mut out = String::new();
    writeln!(out, "{CENSUS_HEADER}").unwrap();
    for (digest, set) in records {
        writeln!(out, "digest {digest}").unwrap();
        out.push_str(&write_set(set));
    }
    out
}

pub fn parse_census(text: &str) -> Result<Vec<(String, EmbeddingSet)>> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    check_header(lines.next(), CENSUS_HEADER, "census")?;
    let mut out = Vec::new();
    let mut current: Option<(usize, String, String)> = None;
    let finish = |rec: Option<(usize, String, String)>, out: &mut Vec<(String, EmbeddingSet)>| -> Result<()> {
        if let Some((start, digest, body)) = rec {
            let set = parse_set(&body).map_err(|e| match e {
                Error::Parse { line, message } => Error::parse(start + line, message),
                other => other,
            })?;
            out.push((digest, set));
        }
        Ok(())
    };
    for (no, line) in lines {
        if let Some(d) = line.strip_prefix("digest ") {
            finish(current.take(), &mut out)?;
            current = Some((no, d.trim().to_string(), String::new()));
        } else if let Some((_, _, body)) = current.as_mut() {
            body.push_str(line);
            body.push('\n');
        } else if !line.trim().is_empty() {
            return Err(Error::parse(no, "expected a digest line"));
        }
    }
    finish(current, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::fixtures;

    #[test]
    fn set_round_trip_is_exact() {
        for s in [fixtures::strong_k6(), fixtures::nonorientable_k6(), fixtures::klein_2k4()] {
            let text = write_set(&s);
            let back = parse_set(&text).unwrap();
            assert_eq!(back, s);
            assert_eq!(write_set(&back), text);
        }
    }

    #[test]
    fn set_parse_errors_carry_line_numbers() {
        let text = write_set(&fixtures::strong_k6()).replace("T 3: 1 2", "T 3: 1 x");
        match parse_set(&text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("unexpected {other:?}"),
        }
        let text = write_set(&fixtures::strong_k6()).replace("v1", "v2");
        assert!(matches!(parse_set(&text), Err(Error::Parse { line: 1, .. })));
        let text = write_set(&fixtures::strong_k6()).replace("T 6", "T 7");
        assert!(matches!(parse_set(&text), Err(Error::Parse { line: 8, .. })));
        assert!(parse_set("").is_err());
        assert!(parse_set("# kn3-embedding-set v1\nn=6 m=1\n").is_err());
    }

    #[test]
    fn census_round_trip() {
        let a = fixtures::strong_k6();
        let b = fixtures::nonorientable_k6();
        let text = write_census([("aa", &a), ("bb", &b)]);
        let back = parse_census(&text).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].0, "aa");
        assert_eq!(back[1].1, b);
        assert_eq!(write_census(back.iter().map(|(d, s)| (d.as_str(), s))), text);
    }
}
