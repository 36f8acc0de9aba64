//! The `kn3` command line. Everything runs through [`run`], which takes the
//! argument list and output streams and returns the process exit code:
//! 0 on success, 1 when a verification fails, 2 for usage and input errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::builder::{build_multi_glued, Choices};
use crate::census::{census_text, count_lower_bound, count_upper_bound, enumerate_variants};
use crate::circuits::{is_embedding_set, SetDefect};
use crate::error::{Error, Result};
use crate::format::{parse_scheme, parse_set, write_scheme, write_set, SET_HEADER};
use crate::levi::{euler_genus_lower_bound, genus_formula, HypergraphSpec};
use crate::scheme::{set_to_scheme, set_to_scheme_glued, trace_faces, EmbeddingScheme, FaceReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "kn3", version, about = "Minimum-genus quadrilateral embeddings of mK_n^3")]
pub struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Surface {
    /// Orientable embedding (the default)
    #[arg(long, conflicts_with = "nonorientable")]
    pub orientable: bool,
    /// Non-orientable embedding
    #[arg(long)]
    pub nonorientable: bool,
}

impl Surface {
    fn orientable(&self) -> bool {
        !self.nonorientable
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct a minimum-genus embedding set
    Build {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        multiplicity: u32,
        #[command(flatten)]
        surface: Surface,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the set here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the embedding scheme
        #[arg(long)]
        scheme_out: Option<PathBuf>,
    },
    /// Check an embedding-set file
    Verify {
        path: PathBuf,
        /// Also require every pair of circuits to be strongly compatible
        #[arg(long)]
        strict_strong: bool,
    },
    /// Trace the faces of a scheme (or embedding-set) file
    Genus { path: PathBuf },
    /// Sample pairwise inequivalent embedding sets into a census file
    Enumerate {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        surface: Surface,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the genus formulas
    Formula {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        multiplicity: u32,
    },
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Parse { .. }
                | Error::Io(_)
                | Error::OddOrder(_)
                | Error::InvalidSpec { .. }
                | Error::UnsupportedCase(_)
                | Error::MalformedScheme(_) => EXIT_USAGE,
                _ => EXIT_FAILED,
            }
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Build {
            n,
            multiplicity,
            surface,
            seed,
            out: path,
            scheme_out,
        } => cmd_build(*n, *multiplicity, surface.orientable(), *seed, path.as_deref(), scheme_out.as_deref(), cli.json, out),
        Command::Verify { path, strict_strong } => cmd_verify(path, *strict_strong, cli.json, out),
        Command::Genus { path } => cmd_genus(path, cli.json, out),
        Command::Enumerate {
            n,
            surface,
            count,
            seed,
            out: path,
        } => cmd_enumerate(*n, surface.orientable(), *count, *seed, path.as_deref(), cli.json, out, err),
        Command::Formula { n, multiplicity } => cmd_formula(*n, *multiplicity, cli.json, out),
    }
}

fn emit(out: &mut dyn Write, json: bool, fields: &[(&str, Value)]) -> Result<()> {
    if json {
        let map: serde_json::Map<String, Value> = fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        writeln!(out, "{}", Value::Object(map))?;
    } else {
        for (k, v) in fields {
            match v {
                Value::String(s) => writeln!(out, "{k}: {s}")?,
                Value::Object(map) => {
                    let parts: Vec<String> = map.iter().map(|(a, b)| format!("{a}x{b}")).collect();
                    writeln!(out, "{k}: {}", parts.join(" "))?
                }
                other => writeln!(out, "{k}: {other}")?,
            }
        }
    }
    Ok(())
}

fn face_fields(r: &FaceReport) -> Vec<(&'static str, Value)> {
    let hist: serde_json::Map<String, Value> = r.histogram().into_iter().map(|(l, c)| (l.to_string(), json!(c))).collect();
    let mut v = vec![
        ("faces", json!(r.face_count)),
        ("face_lengths", Value::Object(hist)),
        ("euler_genus", json!(r.euler_genus)),
        ("surface", json!(if r.orientable { "orientable" } else { "non-orientable" })),
    ];
    v.push(if r.orientable {
        ("genus", json!(r.surface_genus()))
    } else {
        ("crosscaps", json!(r.surface_genus()))
    });
    v
}

#[allow(clippy::too_many_arguments)]
fn cmd_build(
    n: u32,
    m: u32,
    orientable: bool,
    seed: Option<u64>,
    path: Option<&Path>,
    scheme_out: Option<&Path>,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let choices = seed.map(Choices::seeded).unwrap_or_default();
    let (set, gluing) = build_multi_glued(n, m, orientable, &choices)?;
    let scheme = set_to_scheme_glued(&set, &gluing)?;
    let report = trace_faces(&scheme)?;
    if let Some(p) = scheme_out {
        fs::write(p, write_scheme(&scheme))?;
    }
    let text = write_set(&set);
    match path {
        Some(p) => fs::write(p, &text)?,
        None if !json => write!(out, "{text}")?,
        None => {}
    }
    let mut fields = vec![("n", json!(n)), ("m", json!(m)), ("strong", json!(set.strong()))];
    fields.extend(face_fields(&report));
    if json && path.is_none() {
        fields.push(("set", json!(text)));
    }
    emit(out, json, &fields)?;
    Ok(EXIT_OK)
}

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn pairs_text(pairs: &[(u32, u32)]) -> String {
    pairs.iter().map(|(i, j)| format!("({i},{j})")).collect::<Vec<_>>().join(" ")
}

fn cmd_verify(path: &Path, strict_strong: bool, json: bool, out: &mut dyn Write) -> Result<i32> {
    let set = parse_set(&fs::read_to_string(path)?)?;
    let report = is_embedding_set(&set, true);
    let eulerian = report.eulerian_ok();
    let compatible = eulerian && report.compatible_ok();
    let strong = compatible && report.strength_ok();
    let incompatible: Vec<(u32, u32)> = report
        .defects
        .iter()
        .filter_map(|d| match d {
            SetDefect::Incompatible { i, j, .. } => Some((*i, *j)),
            _ => None,
        })
        .collect();
    let not_strong: Vec<(u32, u32)> = report
        .defects
        .iter()
        .filter_map(|d| match d {
            SetDefect::NotStrong { i, j, .. } | SetDefect::Incompatible { i, j, .. } => Some((*i, *j)),
            _ => None,
        })
        .collect();
    let mut fields = vec![
        ("n", json!(set.n())),
        ("m", json!(set.m())),
        ("eulerian", json!(status(eulerian))),
        ("compatibility", json!(status(compatible))),
        ("strength", json!(if strong { "strong" } else { "not strong" })),
    ];
    if let Some(d) = report.defects.iter().find(|d| matches!(d, SetDefect::Circuit { .. } | SetDefect::Shape(_))) {
        fields.push(("eulerian_defect", json!(d.to_string())));
    }
    if !incompatible.is_empty() {
        fields.push(("incompatible_pairs", json!(pairs_text(&incompatible))));
    }
    if compatible && !strong {
        fields.push(("non_strong_pairs", json!(pairs_text(&not_strong))));
    }
    let mut ok = compatible && (strong || !strict_strong);
    if compatible {
        let report = trace_faces(&set_to_scheme(&set)?)?;
        let minimum = report.euler_genus == euler_genus_lower_bound(HypergraphSpec::new(set.n(), set.m())?);
        fields.push(("quadrilateral", json!(status(report.is_quadrilateral()))));
        fields.push(("minimum_genus", json!(status(minimum))));
        fields.extend(face_fields(&report).into_iter().filter(|(k, _)| *k != "face_lengths"));
        ok &= report.is_quadrilateral() && minimum;
    }
    fields.push(("result", json!(status(ok))));
    emit(out, json, &fields)?;
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_genus(path: &Path, json: bool, out: &mut dyn Write) -> Result<i32> {
    let text = fs::read_to_string(path)?;
    let scheme: EmbeddingScheme = if text.starts_with(SET_HEADER) {
        set_to_scheme(&parse_set(&text)?)?
    } else {
        parse_scheme(&text)?
    };
    let report = trace_faces(&scheme)?;
    emit(out, json, &face_fields(&report))?;
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_enumerate(
    n: u32,
    orientable: bool,
    count: usize,
    seed: u64,
    path: Option<&Path>,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let run = enumerate_variants(n, orientable, count, seed)?;
    let text = census_text(&run.sets);
    match path {
        Some(p) => fs::write(p, &text)?,
        None if !json => write!(out, "{text}")?,
        None => {}
    }
    if run.exhausted {
        writeln!(
            err,
            "warning: sampling budget exhausted after {} attempts; found {} of {count} classes",
            run.attempts,
            run.sets.len()
        )?;
    }
    emit(
        out,
        json,
        &[
            ("classes", json!(run.sets.len())),
            ("attempts", json!(run.attempts)),
            ("exhausted", json!(run.exhausted)),
            ("lower_bound", json!(count_lower_bound(n)?.to_string())),
            ("upper_bound", json!(count_upper_bound(n)?.to_string())),
        ],
    )?;
    Ok(EXIT_OK)
}

fn cmd_formula(n: u32, m: u32, json: bool, out: &mut dyn Write) -> Result<i32> {
    let spec = HypergraphSpec::new(n, m)?;
    let describe = |orientable| match genus_formula(spec, orientable) {
        Ok(g) => json!(g),
        Err(Error::OddOrder(_)) => json!("out of scope (odd n)"),
        Err(e) => json!(e.to_string()),
    };
    emit(
        out,
        json,
        &[
            ("n", json!(n)),
            ("m", json!(m)),
            ("euler_genus_lower_bound", json!(euler_genus_lower_bound(spec))),
            ("orientable_genus", describe(true)),
            ("nonorientable_genus", describe(false)),
        ],
    )?;
    Ok(EXIT_OK)
}
