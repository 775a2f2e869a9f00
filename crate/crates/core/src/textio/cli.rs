//! The `occob` command line.
//!
//! Exit status: 0 on success, 1 when the input is well formed but the requested
//! operation fails on it (invalid cobordism, interface mismatch, not isomorphic, ...),
//! 2 for usage errors, unreadable files and syntax or name-resolution errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::brane::Brane;
use crate::calculus::{self, CalculusError};
use crate::classify::{is_isomorphic, strata_table, StrataRow};
use crate::permutation::Permutation;

use super::json::{document_json, FORMAT};
use super::{exit_code, parse, parse_cycles, serialize, Diagnostic, Document, NamedCobordism};

#[derive(Parser, Debug)]
#[command(
    name = "occob",
    version,
    about = "Open-closed cobordisms with D-brane labels"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate every cobordism in FILE.
    Check { file: PathBuf },
    /// Glue B first, then A (the composite A∘B).
    Compose {
        file: PathBuf,
        a: String,
        b: String,
        #[arg(short = 'o', long = "output", value_name = "NAME")]
        name: Option<String>,
    },
    /// Disjoint union of two cobordisms.
    Tensor { file: PathBuf, a: String, b: String },
    /// Symmetry cobordism from n⊗m to m⊗n.
    Swap { file: PathBuf, n: String, m: String },
    /// Genus, windows, Euler characteristic, fixed boundary count and b-flag per component.
    Invariants { file: PathBuf, a: String },
    /// Open boundary permutation of a cobordism to (0).
    Sigma { file: PathBuf, a: String },
    /// Pull a permutation of the target intervals back to the source.
    Pullback {
        file: PathBuf,
        a: String,
        #[arg(long, value_name = "CYCLES", allow_hyphen_values = true)]
        tau: String,
    },
    /// Exit 0 iff A and B are isomorphic.
    Iso { file: PathBuf, a: String, b: String },
    /// Classes of connected cobordisms from OBJ to (0), by genus and windows.
    Classify {
        file: PathBuf,
        obj: String,
        #[arg(short = 'G', value_name = "INT")]
        max_genus: u32,
        #[arg(short = 'W', value_name = "INT")]
        max_windows: usize,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Glue the genus one stabilizer onto the outgoing circle, k times.
    Stabilize {
        file: PathBuf,
        a: String,
        #[arg(short = 'k', default_value_t = 1)]
        k: usize,
    },
}

/// A failed command: message for stderr and the exit status.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl fmt::Display) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }

    fn domain(message: impl fmt::Display) -> Self {
        Failure {
            code: 1,
            message: message.to_string(),
        }
    }
}

impl From<CalculusError> for Failure {
    fn from(e: CalculusError) -> Self {
        Failure::domain(e)
    }
}

struct Output<'a> {
    json: bool,
    out: &'a mut dyn Write,
}

impl Output<'_> {
    fn line(&mut self, s: impl fmt::Display) -> Result<(), Failure> {
        writeln!(self.out, "{s}").map_err(Failure::usage)
    }

    fn value<T: Serialize>(&mut self, v: &T) -> Result<(), Failure> {
        let s = serde_json::to_string_pretty(v).map_err(Failure::usage)?;
        self.line(s)
    }

    fn document(&mut self, doc: &Document) -> Result<(), Failure> {
        if self.json {
            self.value(&document_json(doc))
        } else {
            write!(self.out, "{}", serialize(doc)).map_err(Failure::usage)
        }
    }
}

fn load(path: &Path) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|diags| Failure {
        code: exit_code(&diags),
        message: diagnostics_text(path, &diags),
    })
}

fn diagnostics_text(path: &Path, diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(|d| format!("{}:{d}", path.display()))
        .collect::<Vec<_>>()
        .join("\n")
}

fn find<'d>(doc: &'d Document, name: &str) -> Result<&'d NamedCobordism, Failure> {
    doc.cobordism(name)
        .ok_or_else(|| Failure::usage(format!("no cobordism named {name}")))
}

fn windows_text(w: &BTreeMap<Brane, usize>) -> String {
    let items: Vec<String> = w.iter().map(|(b, n)| format!("{b}:{n}")).collect();
    format!("{{{}}}", items.join(","))
}

fn windows_json(w: &BTreeMap<Brane, usize>) -> BTreeMap<String, usize> {
    w.iter().map(|(b, n)| (b.id().to_owned(), *n)).collect()
}

#[derive(Serialize)]
struct ComponentJson {
    genus: u32,
    windows: BTreeMap<String, usize>,
    chi: i64,
    c: usize,
    b: bool,
}

#[derive(Serialize)]
struct TotalJson {
    genus: u32,
    windows: BTreeMap<String, usize>,
    components: usize,
    b: bool,
}

#[derive(Serialize)]
struct InvariantsJson {
    format: u32,
    cobordism: String,
    components: Vec<ComponentJson>,
    total: TotalJson,
}

#[derive(Serialize)]
struct PermutationJson {
    format: u32,
    cobordism: String,
    sigma: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct IsoJson {
    format: u32,
    isomorphic: bool,
}

#[derive(Serialize)]
struct RowJson {
    g: u32,
    w: BTreeMap<String, usize>,
    c: usize,
    b_flag: bool,
}

#[derive(Serialize)]
struct ClassifyJson {
    format: u32,
    object: String,
    rows: Vec<RowJson>,
}

#[derive(Serialize)]
struct DiagnosticJson {
    line: usize,
    column: usize,
    kind: String,
    message: String,
}

#[derive(Serialize)]
struct CheckJson {
    format: u32,
    ok: bool,
    cobordisms: usize,
    diagnostics: Vec<DiagnosticJson>,
}

fn check(file: &Path, out: &mut Output) -> Result<(), Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::usage(format!("{}: {e}", file.display())))?;
    match parse(&text) {
        Ok(doc) => {
            if out.json {
                out.value(&CheckJson {
                    format: FORMAT,
                    ok: true,
                    cobordisms: doc.cobordisms.len(),
                    diagnostics: Vec::new(),
                })
            } else {
                out.line(format!(
                    "ok: {} objects, {} cobordisms",
                    doc.objects.len(),
                    doc.cobordisms.len()
                ))
            }
        }
        Err(diags) => {
            if out.json {
                out.value(&CheckJson {
                    format: FORMAT,
                    ok: false,
                    cobordisms: 0,
                    diagnostics: diags
                        .iter()
                        .map(|d| DiagnosticJson {
                            line: d.line,
                            column: d.column,
                            kind: d.kind.to_string(),
                            message: d.message.clone(),
                        })
                        .collect(),
                })?;
            }
            Err(Failure {
                code: exit_code(&diags),
                message: diagnostics_text(file, &diags),
            })
        }
    }
}

fn named(
    name: String,
    source: String,
    target: String,
    c: crate::surface::Cobordism,
) -> NamedCobordism {
    NamedCobordism {
        name,
        source,
        target,
        cobordism: c,
    }
}

fn execute(cmd: Command, out: &mut Output) -> Result<(), Failure> {
    match cmd {
        Command::Check { file } => check(&file, out),
        Command::Compose { file, a, b, name } => {
            let doc = load(&file)?;
            let (second, first) = (find(&doc, &a)?, find(&doc, &b)?);
            let glued = calculus::compose(&second.cobordism, &first.cobordism)?;
            let mut res = Document::new(doc.branes.clone());
            res.add_object(&first.source, glued.source.clone());
            res.add_object(&second.target, glued.target.clone());
            res.cobordisms.push(named(
                name.unwrap_or_else(|| format!("{a}_{b}")),
                first.source.clone(),
                second.target.clone(),
                glued,
            ));
            out.document(&res)
        }
        Command::Tensor { file, a, b } => {
            let doc = load(&file)?;
            let (x, y) = (find(&doc, &a)?, find(&doc, &b)?);
            let t = calculus::tensor(&x.cobordism, &y.cobordism)?;
            let source = format!("{}_x_{}", x.source, y.source);
            let target = format!("{}_x_{}", x.target, y.target);
            let mut res = Document::new(doc.branes.clone());
            res.add_object(&source, t.source.clone());
            res.add_object(&target, t.target.clone());
            res.cobordisms
                .push(named(format!("{a}_x_{b}"), source, target, t));
            out.document(&res)
        }
        Command::Swap { file, n, m } => {
            let doc = load(&file)?;
            let object = |name: &str| {
                doc.object(name)
                    .ok_or_else(|| Failure::usage(format!("no object named {name}")))
            };
            let s = calculus::swap(object(&n)?, object(&m)?)?;
            let source = format!("{n}_x_{m}");
            let target = format!("{m}_x_{n}");
            let mut res = Document::new(doc.branes.clone());
            res.add_object(&source, s.source.clone());
            res.add_object(&target, s.target.clone());
            res.cobordisms
                .push(named(format!("swap_{n}_{m}"), source, target, s));
            out.document(&res)
        }
        Command::Invariants { file, a } => {
            let doc = load(&file)?;
            let c = &find(&doc, &a)?.cobordism;
            let summary = c.invariant_summary();
            let in_b = c.in_b_subcategory();
            if out.json {
                return out.value(&InvariantsJson {
                    format: FORMAT,
                    cobordism: a,
                    components: summary
                        .components
                        .iter()
                        .map(|s| ComponentJson {
                            genus: s.genus,
                            windows: windows_json(&s.windows),
                            chi: s.euler,
                            c: s.fixed_boundary,
                            b: s.has_outgoing,
                        })
                        .collect(),
                    total: TotalJson {
                        genus: summary.total_genus,
                        windows: windows_json(&summary.windows),
                        components: summary.component_count,
                        b: in_b,
                    },
                });
            }
            for (k, s) in summary.components.iter().enumerate() {
                out.line(format!(
                    "component {}: g={} w={} chi={} c={} b={}",
                    k + 1,
                    s.genus,
                    windows_text(&s.windows),
                    s.euler,
                    s.fixed_boundary,
                    s.has_outgoing
                ))?;
            }
            out.line(format!(
                "total: g={} w={} components={} b={}",
                summary.total_genus,
                windows_text(&summary.windows),
                summary.component_count,
                in_b
            ))
        }
        Command::Sigma { file, a } => {
            let doc = load(&file)?;
            let sigma = find(&doc, &a)?
                .cobordism
                .boundary_permutation()
                .map_err(Failure::domain)?;
            permutation_out(out, a, &sigma)
        }
        Command::Pullback { file, a, tau } => {
            let doc = load(&file)?;
            let c = &find(&doc, &a)?.cobordism;
            let cycles = parse_cycles(&tau).map_err(|d| Failure::usage(format!("--tau: {d}")))?;
            let tau = Permutation::from_cycles(c.target.interval_indices(), cycles)
                .map_err(|e| Failure::usage(format!("--tau: {e}")))?;
            let sigma = calculus::pullback(c, &tau)?;
            permutation_out(out, a, &sigma)
        }
        Command::Iso { file, a, b } => {
            let doc = load(&file)?;
            let iso = is_isomorphic(&find(&doc, &a)?.cobordism, &find(&doc, &b)?.cobordism)
                .map_err(Failure::domain)?;
            if out.json {
                out.value(&IsoJson {
                    format: FORMAT,
                    isomorphic: iso,
                })?;
            } else {
                out.line(if iso { "isomorphic" } else { "not isomorphic" })?;
            }
            if iso {
                Ok(())
            } else {
                Err(Failure::domain(format!("{a} and {b} are not isomorphic")))
            }
        }
        Command::Classify {
            file,
            obj,
            max_genus,
            max_windows,
            csv,
        } => {
            let doc = load(&file)?;
            let object = doc
                .object(&obj)
                .ok_or_else(|| Failure::usage(format!("no object named {obj}")))?;
            let rows = strata_table(object, max_genus, max_windows)?;
            if let Some(path) = csv {
                write_csv(&path, doc.branes.as_slice(), &rows)
                    .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            }
            if out.json {
                return out.value(&ClassifyJson {
                    format: FORMAT,
                    object: obj,
                    rows: rows
                        .iter()
                        .map(|r| RowJson {
                            g: r.genus,
                            w: windows_json(&r.windows),
                            c: r.c_number,
                            b_flag: r.in_b,
                        })
                        .collect(),
                });
            }
            for r in &rows {
                out.line(format!(
                    "g={} w={} c={} b={}",
                    r.genus,
                    windows_text(&r.windows),
                    r.c_number,
                    r.in_b
                ))?;
            }
            Ok(())
        }
        Command::Stabilize { file, a, k } => {
            let doc = load(&file)?;
            let c = find(&doc, &a)?;
            let s = calculus::stabilize_n(&c.cobordism, k)?;
            let mut res = Document::new(doc.branes.clone());
            res.add_object(&c.source, s.source.clone());
            res.add_object(&c.target, s.target.clone());
            res.cobordisms.push(named(
                format!("{a}_stab{k}"),
                c.source.clone(),
                c.target.clone(),
                s,
            ));
            out.document(&res)
        }
    }
}

fn permutation_out(out: &mut Output, name: String, p: &Permutation) -> Result<(), Failure> {
    if out.json {
        out.value(&PermutationJson {
            format: FORMAT,
            cobordism: name,
            sigma: p.cycles(),
        })
    } else {
        out.line(p)
    }
}

/// Header `g,w_<brane>...,c,b_flag`, one line per row.
fn write_csv(path: &Path, branes: &[Brane], rows: &[StrataRow]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_path(path)?;
    let mut header = vec!["g".to_owned()];
    header.extend(branes.iter().map(|b| format!("w_{b}")));
    header.extend(["c".to_owned(), "b_flag".to_owned()]);
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![r.genus.to_string()];
        rec.extend(
            branes
                .iter()
                .map(|b| r.windows.get(b).copied().unwrap_or(0).to_string()),
        );
        rec.push(r.c_number.to_string());
        rec.push(r.in_b.to_string());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Runs the command line `args` (program name first), writing to the given sinks, and
/// returns the exit status.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let mut out = Output {
        json: cli.json,
        out: stdout,
    };
    match execute(cli.command, &mut out) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "{}", f.message);
            f.code
        }
    }
}

/// Runs against the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
