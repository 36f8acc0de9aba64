//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (no libtest harness) so the lines always show up
//! in `cargo test` output. A criterion listed in `UNATTAINABLE` is reported
//! as it is, but does not fail the run; any other failure does.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{oracle_trace, scheme_corpus};
use kn3::builder::{build_even, build_multi, fixtures, Choices};
use kn3::census::{canonicalize, count_lower_bound, count_upper_bound, enumerate_variants, exhaustive_classes};
use kn3::circuits::{is_embedding_set, is_strongly_compatible, strong_orientation, EmbeddingSet};
use kn3::cli;
use kn3::format::parse_census;
use kn3::levi::{euler_genus_lower_bound, HypergraphSpec};
use kn3::scheme::{is_orientable, scheme_to_set, set_to_scheme, trace_faces, EmbeddingScheme};

/// Criterion 1 asks the published non-orientable K_6 listing to verify; it
/// is not a compatible family (pairs (2,6) and (4,5)), so it cannot.
const UNATTAINABLE: &[u32] = &[1];

struct Gate {
    failures: Vec<u32>,
    lower_bound_checks: usize,
    lower_bound_misses: Vec<String>,
}

impl Gate {
    fn report(&mut self, id: u32, title: &str, ok: bool, detail: String) {
        println!("[{}] criterion {id}: {title} -- {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failures.push(id);
        }
    }

    /// Face trace, with the Euler-formula lower bound check of criterion 6
    /// recorded on the side.
    fn trace(&mut self, label: &str, s: &EmbeddingSet) -> kn3::FaceReport {
        let r = trace_faces(&set_to_scheme(s).unwrap()).unwrap();
        let bound = euler_genus_lower_bound(HypergraphSpec::new(s.n(), s.m()).unwrap());
        self.lower_bound_checks += 1;
        if r.euler_genus != bound {
            self.lower_bound_misses.push(format!("{label}: {} vs {bound}", r.euler_genus));
        }
        r
    }
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["kn3"];
    full.extend_from_slice(args);
    let code = cli::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
}

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(&format!("{key}: ")))
}

fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn criterion_1(gate: &mut Gate) {
    let start = Instant::now();
    let cases = [
        ("strong_k6.txt", "strong", "genus", "3"),
        ("nonorientable_k6_printed.txt", "not strong", "crosscaps", "6"),
        ("klein_2k4.txt", "not strong", "crosscaps", "2"),
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for (file, strength, key, value) in cases {
        let (code, text) = run_cli(&["verify", &fixture_path(file)]);
        let good = code == 0 && field(&text, "strength") == Some(strength) && field(&text, key) == Some(value);
        ok &= good;
        notes.push(if good {
            format!("{file} ok")
        } else {
            format!(
                "{file} exit {code}, compatibility {}, incompatible pairs {}",
                field(&text, "compatibility").unwrap_or("?"),
                field(&text, "incompatible_pairs").unwrap_or("none")
            )
        });
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(1);
    gate.report(1, "published fixtures verify", ok, format!("{}; {elapsed:.2?}", notes.join("; ")));

    // The repaired listing, for context.
    let (code, text) = run_cli(&["verify", &fixture_path("nonorientable_k6.txt")]);
    println!(
        "       note: repaired non-orientable K6 listing: exit {code}, strength {}, crosscaps {}",
        field(&text, "strength").unwrap_or("?"),
        field(&text, "crosscaps").unwrap_or("?")
    );
}

fn criterion_2(gate: &mut Gate) {
    let start = Instant::now();
    let mut genera = Vec::new();
    let mut ok = true;
    for n in (4..=16u32).step_by(2) {
        let s = build_even(n, true, &Choices::first()).unwrap();
        let r = gate.trace(&format!("K{n} orientable"), &s);
        let expected = ((n - 2) * (n + 3) * (n - 4) / 24) as i64;
        ok &= is_embedding_set(&s, true).is_valid()
            && s.strong()
            && r.is_quadrilateral()
            && r.orientable
            && r.euler_genus == 2 * expected;
        genera.push(r.surface_genus().to_string());
    }
    ok &= genera[..5] == ["0", "3", "11", "26", "50"];
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(5);
    gate.report(
        2,
        "orientable builds n=4..16",
        ok,
        format!("genera {}; {elapsed:.2?}", genera.join(",")),
    );
}

fn criterion_3(gate: &mut Gate) {
    let mut crosscaps = Vec::new();
    let mut ok = true;
    for n in (6..=16u32).step_by(2) {
        let s = build_even(n, false, &Choices::first()).unwrap();
        let r = gate.trace(&format!("K{n} non-orientable"), &s);
        let expected = ((n - 2) * (n + 3) * (n - 4) / 12) as i64;
        let sch = set_to_scheme(&s).unwrap();
        ok &= is_embedding_set(&s, false).is_valid()
            && r.is_quadrilateral()
            && !is_orientable(&sch)
            && r.euler_genus == expected
            && !is_strongly_compatible(s.circuit(3), s.circuit(5)).unwrap();
        crosscaps.push(r.euler_genus.to_string());
    }
    gate.report(
        3,
        "non-orientable builds n=6..16",
        ok,
        format!("crosscaps {}; (T3,T5) never strong", crosscaps.join(",")),
    );
}

fn criterion_4(gate: &mut Gate) {
    let mut ok = true;
    let mut cells = Vec::new();
    for n in [4u32, 6, 8] {
        for m in 1..=3u32 {
            let euler = ((n - 2) * (m * n * (n - 1) - 12) / 12) as i64;
            for orientable in [true, false] {
                if !orientable && n == 4 && m == 1 {
                    continue;
                }
                let s = build_multi(n, m, orientable, &Choices::first()).unwrap();
                let r = gate.trace(&format!("{m}K{n} orientable={orientable}"), &s);
                let good = is_embedding_set(&s, orientable).is_valid()
                    && r.is_quadrilateral()
                    && r.orientable == orientable
                    && r.euler_genus == euler;
                ok &= good;
                cells.push(format!(
                    "{m}K{n}{}={}",
                    if orientable { "o" } else { "n" },
                    r.surface_genus()
                ));
            }
        }
    }
    let klein = trace_faces(&set_to_scheme(&build_multi(4, 2, false, &Choices::first()).unwrap()).unwrap()).unwrap();
    ok &= klein.euler_genus == 2 && !klein.orientable;
    gate.report(4, "multi-edge builds", ok, cells.join(" "));
}

fn criterion_5(gate: &mut Gate) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut passed = 0;
    let total = 200;
    for k in 0..total {
        let n = [4u32, 6, 8, 10][k % 4];
        let m = 1 + (k / 4 % 2) as u32;
        let orientable = n == 4 && m == 1 || (k / 8) % 2 == 0;
        let s = build_multi(n, m, orientable, &Choices::seeded(rng.random())).unwrap();
        let sch = set_to_scheme(&s).unwrap();
        let back = scheme_to_set(&sch).unwrap();
        let r = gate.trace(&format!("round trip {k}"), &s);
        if back.equivalent(&s)
            && is_orientable(&sch) == s.strong()
            && strong_orientation(&s).is_some() == is_orientable(&sch)
            && r.is_quadrilateral()
        {
            passed += 1;
        }
    }
    gate.report(
        5,
        "set -> scheme -> set round trip",
        passed == total,
        format!("{passed}/{total} seeded builds, n<=10, m<=2"),
    );
}

fn perturb(sch: &EmbeddingScheme, rng: &mut ChaCha8Rng) -> EmbeddingScheme {
    let mut p = sch.clone();
    let g = sch.graph();
    for _ in 0..rng.random_range(1..=4) {
        match rng.random_range(0..3) {
            0 => p.flip_signature(rng.random_range(0..g.edge_count())),
            1 => p.switch_at(rng.random_range(0..g.vertex_count())),
            _ => {
                let v = rng.random_range(0..g.vertex_count());
                let mut rot = p.rotation(v).to_vec();
                rot.shuffle(rng);
                p.set_rotation(v, rot).unwrap();
            }
        }
    }
    p
}

fn minimum_schemes() -> Vec<EmbeddingScheme> {
    [
        fixtures::strong_k6(),
        fixtures::nonorientable_k6(),
        fixtures::klein_2k4(),
        build_even(8, true, &Choices::first()).unwrap(),
        build_even(8, false, &Choices::seeded(2)).unwrap(),
        build_multi(6, 2, true, &Choices::first()).unwrap(),
    ]
    .iter()
    .map(|s| set_to_scheme(s).unwrap())
    .collect()
}

fn criterion_6(gate: &mut Gate) {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let schemes = minimum_schemes();
    let mut below = 0;
    let trials = 1200;
    for k in 0..trials {
        let base = &schemes[k % schemes.len()];
        let bound = trace_faces(base).unwrap().euler_genus;
        if trace_faces(&perturb(base, &mut rng)).unwrap().euler_genus < bound {
            below += 1;
        }
    }
    let ok = gate.lower_bound_misses.is_empty() && below == 0;
    gate.report(
        6,
        "Euler genus meets the lower bound",
        ok,
        format!(
            "{} builds at the bound ({} misses); {below}/{trials} perturbations went below",
            gate.lower_bound_checks,
            gate.lower_bound_misses.len()
        ),
    );
}

fn criterion_7(gate: &mut Gate) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census8.txt");
    let start = Instant::now();
    let (code, _) = run_cli(&["enumerate", "--n", "8", "--count", "100", "--seed", "1", "--out", path.to_str().unwrap()]);
    let records = parse_census(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let mut distinct = HashSet::new();
    let mut verified = 0;
    for (_, s) in &records {
        distinct.insert(canonicalize(s));
        let faces = oracle_trace(&set_to_scheme(s).unwrap());
        if is_embedding_set(s, true).is_valid() && faces.euler_genus == 22 && faces.orientable {
            verified += 1;
        }
    }
    let elapsed = start.elapsed();
    let six = enumerate_variants(6, true, 6, 1).unwrap().sets.len();
    let four = exhaustive_classes(4, 4).unwrap();
    let bounds_ok = count_lower_bound(6).unwrap() == BigUint::from(6u32)
        && count_upper_bound(6).unwrap() == BigUint::from(3u32).pow(15)
        && count_upper_bound(4).unwrap() == BigUint::from(four);
    let ok = code == 0
        && records.len() == 100
        && distinct.len() == 100
        && verified == 100
        && elapsed < Duration::from_secs(60)
        && six >= 6
        && four == 1
        && bounds_ok;
    gate.report(
        7,
        "enumeration and counting bounds",
        ok,
        format!(
            "n=8: {} classes, {verified} verified, {elapsed:.2?}; n=6: {six} classes; n=4 exhaustive: {four} class; R_6={}, U_6={}",
            distinct.len(),
            count_lower_bound(6).unwrap(),
            count_upper_bound(6).unwrap()
        ),
    );
}

fn criterion_8(gate: &mut Gate) {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut corpus = scheme_corpus();
    let minimum = minimum_schemes();
    for k in 0..100 {
        corpus.push((format!("perturbed {k}"), perturb(&minimum[k % minimum.len()], &mut rng)));
    }
    let mut disagreements = Vec::new();
    for (label, sch) in &corpus {
        let fast = trace_faces(sch).unwrap();
        let slow = oracle_trace(sch);
        if fast.face_count != slow.face_count
            || fast.face_lengths != slow.face_lengths
            || fast.euler_genus != slow.euler_genus
            || fast.orientable != slow.orientable
        {
            disagreements.push(label.clone());
        }
    }
    gate.report(
        8,
        "independent face tracer agrees",
        disagreements.is_empty(),
        format!("{} schemes, {} disagreements {:?}", corpus.len(), disagreements.len(), disagreements),
    );
}

fn main() -> ExitCode {
    let mut gate = Gate {
        failures: Vec::new(),
        lower_bound_checks: 0,
        lower_bound_misses: Vec::new(),
    };
    criterion_1(&mut gate);
    criterion_2(&mut gate);
    criterion_3(&mut gate);
    criterion_4(&mut gate);
    criterion_5(&mut gate);
    criterion_6(&mut gate);
    criterion_7(&mut gate);
    criterion_8(&mut gate);

    let unexpected: Vec<u32> = gate.failures.iter().copied().filter(|c| !UNATTAINABLE.contains(c)).collect();
    let recovered: Vec<u32> = UNATTAINABLE.iter().copied().filter(|c| !gate.failures.contains(c)).collect();
    println!(
        "acceptance: {} of 8 criteria pass; failing {:?} (known unattainable: {:?})",
        8 - gate.failures.len(),
        gate.failures,
        UNATTAINABLE
    );
    if !unexpected.is_empty() || !recovered.is_empty() {
        println!("acceptance: unexpected outcome (failed {unexpected:?}, now passing {recovered:?})");
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
