//! The `dmwb` command line: table replay, hybrid verdicts, fibration sweeps,
//! the arrangement diagram and monodromy presentations.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 for unusable input or I/O errors.

pub mod output;
pub mod svg;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use dmwb_core::fibration::sweep::{Sweep, DEFAULT_SAMPLES, DEFAULT_SEED};
use dmwb_core::fixture::MatrixFixture;
use dmwb_core::hybrid::{designated_pair, HybridContext, HybridVerdict, LatticeFlags, Side};
use dmwb_core::lattice_params::{column_name, parse_table, validate_rows_par};
use dmwb_core::monodromy::{
    abelianization, coinvariant_rank, fiber_orbifold_group, mapping_torus,
    verify_matrix_assignment, MappingClass, MonodromyError, WordStatus, CONE_POINTS,
};
use dmwb_core::triangle_groups::Classification;
use dmwb_core::{data, LatticeSpec};

pub use output::{emit, Format, Record};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "dmwb",
    version,
    about = "Branched-cover model of Deligne-Mostow lattices"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Global {
    /// Tolerance; each fibration sweep has its own default.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Replay the ramification table and the blow-up round trip.
    ValidateTable,
    /// Hybrid verdict for the designated orthogonal pair, or all fifteen.
    Hybrid {
        lattice: LatticeSpec,
        #[arg(long)]
        all_pairs: bool,
    },
    /// Seeded sweep checking one fibration formula.
    Fibration {
        #[arg(value_parser = parse_sweep)]
        check: Sweep,
    },
    /// Draw the arrangement labelled with branched orders.
    Svg {
        lattice: LatticeSpec,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Fibre orbifold group, mapping torus and matrix checks.
    Monodromy {
        lattice: LatticeSpec,
        /// Word in the half twists s1, s2, s3.
        #[arg(long)]
        monodromy: Option<String>,
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
}

fn parse_sweep(s: &str) -> Result<Sweep, String> {
    Sweep::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Sweep::ALL.iter().map(Sweep::name).collect();
        format!("unknown check `{s}`, expected one of {}", names.join(", "))
    })
}

/// Failure to run a command at all.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<i32, InputError>;

/// Run with explicit arguments and streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_PASS
            };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let g = &cli.global;
    if g.tol.is_some_and(|t| !(t > 0.0 && t.is_finite())) {
        return Err(InputError("--tol must be a positive number".into()));
    }
    if g.samples == 0 {
        return Err(InputError("--samples must be at least 1".into()));
    }
    match &cli.command {
        Command::ValidateTable => validate_table(g, out),
        Command::Hybrid { lattice, all_pairs } => hybrid(g, lattice, *all_pairs, out),
        Command::Fibration { check } => fibration(g, *check, out),
        Command::Svg { lattice, output } => write_svg(lattice, output, out),
        Command::Monodromy {
            lattice,
            monodromy,
            fixture,
        } => monodromy_cmd(g, lattice, monodromy.as_deref(), fixture.as_ref(), out),
    }
}

fn perm_string(p: &[u8; 4]) -> String {
    p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("")
}

fn validate_table(g: &Global, out: &mut dyn Write) -> CmdResult {
    let text = data::load(data::Dataset::Table)?;
    let rows = parse_table(&text)?;
    let report = validate_rows_par(&rows);
    let mut records: Vec<Record> = report
        .rows
        .iter()
        .map(|r| {
            let mism: Vec<String> = r
                .mismatches
                .iter()
                .chain(&r.blowup_mismatches)
                .map(|m| {
                    format!(
                        "{}: {} != {}",
                        column_name(m.column),
                        m.computed,
                        m.expected
                    )
                })
                .collect();
            Record::new()
                .with("lattice", r.spec.to_string())
                .with("permutation", perm_string(&r.permutation))
                .with("status", if r.passed() { "pass" } else { "FAIL" })
                .with("mismatches", mism.join("; "))
        })
        .collect();
    if g.format == Format::Table {
        records.push(Record::new().with(
            "summary",
            format!("{}/{} rows pass", report.pass_count(), report.rows.len()),
        ));
    }
    emit(out, g.format, &records)?;
    Ok(if report.passed() && !report.rows.is_empty() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

fn side_fields(r: Record, prefix: usize, side: &Side) -> Record {
    let (sig, class) = match side {
        Side::Group {
            signature,
            class_id,
            ..
        } => (
            signature.to_string(),
            class_id.map_or(Value::Null, Value::from),
        ),
        other => (other.to_string(), Value::Null),
    };
    let (ks, kc) = if prefix == 0 {
        ("signature_a", "class_a")
    } else {
        ("signature_b", "class_b")
    };
    r.with(ks, sig).with(kc, class)
}

fn verdict_record(v: &HybridVerdict) -> Record {
    let r = Record::new()
        .with("lattice", v.spec.to_string())
        .with("pair", format!("{} x {}", v.pair.0, v.pair.1));
    let r = side_fields(r, 0, &v.sides[0]);
    let r = side_fields(r, 1, &v.sides[1]);
    r.with("outcome", v.outcome.name())
        .with("lattice_flag", v.lattice_flag.name())
        .with("theorem_scope", v.theorem_scope)
}

fn hybrid(g: &Global, spec: &LatticeSpec, all_pairs: bool, out: &mut dyn Write) -> CmdResult {
    let classes = Classification::load()?;
    let flags = LatticeFlags::load()?;
    let ctx = HybridContext {
        classes: &classes,
        flags: &flags,
    };
    let verdicts = if all_pairs {
        ctx.scan_pairs(spec)
    } else {
        vec![ctx.classify_pair(spec, designated_pair(spec))]
    };
    let records: Vec<Record> = verdicts.iter().map(verdict_record).collect();
    emit(out, g.format, &records)?;
    Ok(EXIT_PASS)
}

fn fibration(g: &Global, check: Sweep, out: &mut dyn Write) -> CmdResult {
    let tol = g.tol.unwrap_or_else(|| check.default_tolerance());
    let report = check.run(g.seed, g.samples, tol);
    let mut r = Record::new()
        .with("check", check.name())
        .with("seed", report.seed)
        .with("samples", report.samples)
        .with("skipped", report.skipped)
        .with("failures", report.failures)
        .with("max_error", report.max_error)
        .with("tolerance", report.tolerance);
    for (k, v) in &report.notes {
        r = r.with(k, v.clone());
    }
    let r = r.with("status", if report.passed() { "pass" } else { "FAIL" });
    emit(out, g.format, &[r])?;
    Ok(if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

fn write_svg(spec: &LatticeSpec, path: &PathBuf, out: &mut dyn Write) -> CmdResult {
    std::fs::write(path, svg::render(spec))
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    writeln!(out, "wrote {}", path.display())?;
    Ok(EXIT_PASS)
}

fn monodromy_cmd(
    g: &Global,
    spec: &LatticeSpec,
    word: Option<&str>,
    fixture: Option<&PathBuf>,
    out: &mut dyn Write,
) -> CmdResult {
    let mc = word.map(MappingClass::parse).transpose()?;
    let fx = match fixture {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            let mut fx = MatrixFixture::from_json(&text)?;
            if let Some(t) = g.tol {
                fx.tolerance = t;
            }
            Some(fx)
        }
        None => None,
    };
    let mut records = Vec::new();
    let mut code = EXIT_PASS;
    match fiber_orbifold_group(spec) {
        Ok(group) => {
            let orders: Vec<String> = group.orders().iter().map(|o| o.symbol()).collect();
            let points: Vec<&str> = CONE_POINTS.iter().map(|d| d.name()).collect();
            records.push(
                Record::new()
                    .with("lattice", spec.to_string())
                    .with("cone_points", points.join(","))
                    .with("orders", orders.join(","))
                    .with("presentation", group.to_string()),
            );
            if let Some(mc) = &mc {
                match mapping_torus(&group, mc) {
                    Ok(torus) => {
                        let ab = abelianization(&torus);
                        let torsion: Vec<String> =
                            ab.torsion.iter().map(|d| d.to_string()).collect();
                        records.push(
                            Record::new()
                                .with("monodromy", mc.to_string())
                                .with("presentation", torus.to_string())
                                .with("h1_free_rank", ab.free_rank)
                                .with("h1_torsion", torsion.join(","))
                                .with("coinvariant_rank", coinvariant_rank(&torus)),
                        );
                    }
                    Err(e) => {
                        records.push(Record::new().with("notice", e.to_string()));
                        code = EXIT_FAIL;
                    }
                }
            }
        }
        Err(
            e @ (MonodromyError::CollapsedFiberPoint { .. } | MonodromyError::InvalidOrder { .. }),
        ) => {
            records.push(
                Record::new()
                    .with("lattice", spec.to_string())
                    .with("notice", e.to_string()),
            );
            code = EXIT_FAIL;
        }
        Err(e) => return Err(e.into()),
    }
    if let Some(fx) = &fx {
        let report = verify_matrix_assignment(fx, spec)?;
        for c in &report.checks {
            let status = match &c.status {
                WordStatus::Pass => "pass".to_string(),
                WordStatus::Fail { found } => format!("FAIL (order {found})"),
                WordStatus::Skipped(why) => format!("skipped ({why})"),
            };
            records.push(
                Record::new()
                    .with("word", c.word)
                    .with("target", c.target.name())
                    .with("expected", c.expected.symbol())
                    .with("status", status),
            );
        }
        if !report.passed() {
            code = EXIT_FAIL;
        }
    }
    emit(out, g.format, &records)?;
    Ok(code)
}
