//! The `hfree` command line.
//!
//! Machine-readable output (JSON objects or JSONL streams) goes to stdout or
//! to `--out` files; tables and progress go to stderr. Exit status is 0 on
//! success, 1 when a check or verification fails, and 2 on usage errors.

pub mod config;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use hfree::enumerate::{self, Checkpoint, EnumerationTask, RunOptions, RunRecord};
use hfree::families::FamilySpec;
use hfree::search::{hill_climb, SearchConfig};
use hfree::spectral::{lemma22_bound, odd_bound, rho_prime, spectral_radius};
use hfree::subgraph::{parse_patterns, Pattern};
use hfree::{audit, parse_graph6, report, verify};

use config::{parse_seed, Config};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// An invalid invocation that clap itself cannot detect.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()).into())
}

#[derive(Debug, Parser)]
#[command(name = "hfree", version, about = "Spectral-extremal graphs under forbidden-subgraph constraints")]
struct Cli {
    /// key=value configuration file (keys: tol, workers, seed, checkpoint_dir, out_dir).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, env = "HFREE_WORKERS")]
    workers: Option<usize>,
    /// RNG seed, decimal or 0x-hex.
    #[arg(long, global = true, value_parser = seed_arg)]
    seed: Option<u64>,
    /// Power-iteration tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

fn seed_arg(s: &str) -> std::result::Result<u64, String> {
    parse_seed(s).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build named constructions, e.g. `s-minus(21)` or `f-prime(38,3)`.
    Families {
        #[arg(required = true)]
        specs: Vec<String>,
    },
    /// Spectral radius of a graph6 graph.
    Rho { graph6: String },
    /// Largest root of the even-size quartic, with its bracketing bounds.
    RhoPrime { m: usize },
    /// Subgraph containment of a pattern (h43, h33, f5, p2p3 or graph6).
    Check {
        host: String,
        #[arg(long)]
        pattern: String,
    },
    /// Exhaustive isomorph-free enumeration by edge count.
    Enumerate {
        #[arg(long)]
        m: usize,
        /// Comma-separated forbidden patterns.
        #[arg(long, default_value = "")]
        forbid: String,
        /// Connected graphs only (otherwise: no isolated vertices).
        #[arg(long)]
        connected_only: bool,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// RunRecord JSONL output; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the per-size summary as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Stop after committing this many prefixes.
        #[arg(long, hide = true)]
        stop_after: Option<usize>,
    },
    /// Hill climbing with random restarts.
    Search {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "h43")]
        forbid: String,
        #[arg(long, default_value_t = hfree::search::DEFAULT_RESTARTS)]
        restarts: usize,
        #[arg(long, default_value_t = hfree::search::DEFAULT_MOVE_BUDGET)]
        budget: usize,
        /// Per-restart trace JSONL.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Structural ledger for a connected graph, or the construction fixtures.
    Audit {
        #[arg(required_unless_present = "fixture", conflicts_with = "fixture")]
        graph6: Option<String>,
        /// Print the full report as JSON.
        #[arg(long)]
        json: bool,
        /// Audit a named construction over a size range (`s-minus`).
        #[arg(long)]
        fixture: Option<String>,
        /// Size or inclusive range `a..b` for --fixture.
        #[arg(long, default_value = "38..60", requires = "fixture")]
        m: String,
    },
    /// Run the acceptance criteria.
    Verify {
        #[arg(long, default_value = "paper")]
        suite: String,
        #[arg(long)]
        quick: bool,
        /// Comma-separated criterion numbers.
        #[arg(long)]
        only: Option<String>,
    },
    /// Per-size summary of RunRecord JSONL files.
    Report {
        paths: Vec<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// Run with the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Run with explicit output streams; returns the exit status.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli, out, err) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILURE,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> i32 {
    use hfree::Error as E;
    for cause in e.chain() {
        if cause.is::<UsageError>() {
            return EXIT_USAGE;
        }
        if let Some(
            E::Capacity(_)
            | E::EmptyGraph
            | E::Loop(_)
            | E::VertexOutOfRange { .. }
            | E::Graph6(_)
            | E::Domain(_)
            | E::UnresolvedFigure(_)
            | E::Budget(_),
        ) = cause.downcast_ref::<E>()
        {
            return EXIT_USAGE;
        }
    }
    EXIT_FAILURE
}

fn resolve_config(cli: &Cli) -> Result<Config> {
    let mut cfg = Config::default();
    if let Some(path) = &cli.config {
        cfg.merge_file(path).map_err(|e| UsageError(format!("{e:#}")))?;
    }
    if let Some(w) = cli.workers {
        cfg.workers = w;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(t) = cli.tol {
        cfg.tol = t;
    }
    cfg.validate().map_err(|e| UsageError(e.to_string()))?;
    Ok(cfg)
}

fn emit(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string(value)?)?;
    Ok(())
}

fn graph_arg(s: &str) -> Result<hfree::Graph> {
    parse_graph6(s.trim()).map_err(|e| UsageError(format!("`{s}`: {e}")).into())
}

fn patterns_arg(s: &str) -> Result<Vec<Pattern>> {
    parse_patterns(s).map_err(|e| UsageError(format!("pattern list `{s}`: {e}")).into())
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    let cfg = resolve_config(&cli)?;
    match cli.command {
        Command::Families { specs } => families(&specs, out, err),
        Command::Rho { graph6 } => {
            let g = graph_arg(&graph6)?;
            let r = spectral_radius(&g, cfg.tol)?;
            emit(
                out,
                &json!({"graph6": g.to_graph6(), "rho": r.rho, "residual": r.residual, "iterations": r.iterations}),
            )?;
            Ok(true)
        }
        Command::RhoPrime { m } => {
            let r = rho_prime(m)?;
            emit(
                out,
                &json!({"m": m, "rho_prime": r, "lower_bound": lemma22_bound(m), "upper_bound": odd_bound(m)}),
            )?;
            Ok(true)
        }
        Command::Check { host, pattern } => {
            let g = graph_arg(&host)?;
            let p: Pattern = pattern
                .parse()
                .map_err(|e| UsageError(format!("pattern `{pattern}`: {e}")))?;
            let contains = p.contained_in(&g);
            let witness = if contains { p.witness(&g).map(|w| w.map) } else { None };
            emit(
                out,
                &json!({"host": g.to_graph6(), "pattern": p.name(), "contains": contains, "witness": witness}),
            )?;
            Ok(true)
        }
        Command::Enumerate {
            m,
            forbid,
            connected_only,
            checkpoint,
            out: out_path,
            csv,
            stop_after,
        } => {
            let mut task = EnumerationTask::new(m, patterns_arg(&forbid)?);
            task.restrict_connected = connected_only;
            let stem = format!("enumerate-m{m}{}", if connected_only { "-connected" } else { "" });
            let checkpoint = checkpoint.or_else(|| cfg.checkpoint_dir.as_ref().map(|d| d.join(format!("{stem}.ckpt.json"))));
            let out_path = out_path.or_else(|| cfg.out_dir.as_ref().map(|d| d.join(format!("{stem}.jsonl"))));
            let opts = RunOptions {
                workers: cfg.workers,
                checkpoint_path: checkpoint,
                stop_after,
            };
            enumerate_cmd(&task, out_path.as_deref(), csv.as_deref(), &opts, out, err)
        }
        Command::Search {
            m,
            forbid,
            restarts,
            budget,
            out: out_path,
        } => {
            let mut sc = SearchConfig::new(m, patterns_arg(&forbid)?);
            sc.restarts = restarts;
            sc.move_budget = budget;
            sc.rng_seed = cfg.seed;
            sc.workers = cfg.workers;
            let out_path = out_path.or_else(|| cfg.out_dir.as_ref().map(|d| d.join(format!("search-m{m}.jsonl"))));
            search_cmd(&sc, out_path.as_deref(), out, err)
        }
        Command::Audit { graph6, json, fixture, m } => match fixture {
            Some(name) => audit_fixture_cmd(&name, &m, out, err),
            None => audit_cmd(graph6.as_deref().unwrap_or_default(), json, out, err),
        },
        Command::Verify { suite, quick, only } => {
            if suite != "paper" {
                return usage(format!("unknown suite `{suite}` (available: paper)"));
            }
            let ids = match only {
                Some(list) => parse_ids(&list)?,
                None => (1..=10).collect(),
            };
            let opts = verify::VerifyOptions {
                quick,
                workers: cfg.workers,
                seed: cfg.seed,
            };
            let mut ok = true;
            for id in ids {
                let r = verify::run_criterion(id, &opts);
                writeln!(err, "{r}")?;
                emit(out, &r)?;
                ok &= r.passed;
            }
            Ok(ok)
        }
        Command::Report { paths, csv } => {
            let summary = report::summarize_files(&paths)?;
            for w in &summary.warnings {
                writeln!(err, "warning: {w}")?;
            }
            write!(err, "{}", summary.to_markdown())?;
            if let Some(path) = csv {
                fs::write(&path, summary.to_csv()).with_context(|| format!("writing {}", path.display()))?;
            }
            emit(out, &summary)?;
            Ok(true)
        }
    }
}

fn parse_ids(list: &str) -> Result<Vec<usize>> {
    let mut ids = Vec::new();
    for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.parse::<usize>() {
            Ok(id) if (1..=10).contains(&id) => ids.push(id),
            _ => return usage(format!("criterion numbers are 1..=10, got `{part}`")),
        }
    }
    Ok(ids)
}

/// `a`, `a..b` or `a..=b`, both ends inclusive.
fn parse_range(s: &str) -> Result<(usize, usize)> {
    let bad = || UsageError(format!("expected a size or range a..b, got `{s}`"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad().into());
    }
    Ok((a, b))
}

fn families(specs: &[String], out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    for s in specs {
        let spec: FamilySpec = s.parse().map_err(|e| UsageError(format!("`{s}`: {e}")))?;
        let g = spec.build()?;
        writeln!(err, "{spec}: n={} m={} {}", g.order(), g.size(), g.to_graph6())?;
        emit(
            out,
            &json!({
                "spec": spec.to_string(),
                "graph6": g.to_graph6(),
                "order": g.order(),
                "size": g.size(),
                "degree_sequence": g.degree_sequence(),
            }),
        )?;
    }
    Ok(true)
}

fn enumerate_cmd(
    task: &EnumerationTask,
    out_path: Option<&Path>,
    csv: Option<&Path>,
    opts: &RunOptions,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<bool> {
    let (summary, ck, table) = match out_path {
        Some(path) => {
            let (summary, ck) = enumerate::run_to_jsonl(task, path, opts)?;
            (summary, ck, report::summarize_files(&[path])?)
        }
        None => {
            if opts.checkpoint_path.is_some() {
                return usage("--checkpoint needs --out (records of completed prefixes live in the output file)");
            }
            let mut ck = Checkpoint::fresh(task)?;
            let mut text = String::new();
            let summary = enumerate::run(
                task,
                &mut ck,
                opts,
                |g| {
                    let rho = hfree::spectral::spectral_radius_default(g).ok()?.rho;
                    Some(RunRecord::new(g, rho))
                },
                |_, records, ck| {
                    for r in &records {
                        let line = r.to_json_line();
                        writeln!(out, "{line}")?;
                        text.push_str(&line);
                        text.push('\n');
                        ck.offer_best(r);
                    }
                    Ok(())
                },
            )?;
            (summary, ck, report::summarize_text(&[("stdout".into(), text)]))
        }
    };
    write!(err, "{}", table.to_markdown())?;
    writeln!(
        err,
        "{}: {}/{} prefixes, {} classes{}",
        task.fingerprint(),
        summary.completed,
        summary.total,
        summary.emitted,
        if summary.is_complete() { "" } else { " (incomplete)" }
    )?;
    if let Some(path) = csv {
        fs::write(path, table.to_csv()).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = out_path {
        emit(
            out,
            &json!({
                "task": task.fingerprint(),
                "out": path.display().to_string(),
                "completed": summary.completed,
                "total": summary.total,
                "emitted": ck.emitted_total(),
                "complete": summary.is_complete(),
                "best": ck.best,
            }),
        )?;
    }
    Ok(true)
}

fn search_cmd(sc: &SearchConfig, out_path: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    let trace = hill_climb(sc)?;
    if let Some(path) = out_path {
        let mut text = String::new();
        for t in &trace.restarts {
            text.push_str(&serde_json::to_string(t)?);
            text.push('\n');
        }
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    writeln!(
        err,
        "best rho {:.12} ({}) from restart {}; {} of {} restarts within tolerance of the reference",
        trace.best_rho,
        trace.best_graph6,
        trace.best_restart,
        trace.hits,
        trace.restarts.len()
    )?;
    emit(
        out,
        &json!({
            "config": trace.config,
            "best_graph6": trace.best_graph6,
            "best_rho": trace.best_rho,
            "best_restart": trace.best_restart,
            "reference": trace.reference,
            "hits": trace.hits,
            "restarts": trace.restarts.len(),
        }),
    )?;
    Ok(true)
}

fn audit_cmd(graph6: &str, full: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    let g = graph_arg(graph6)?;
    if !g.is_connected() {
        return usage("audit needs a connected graph");
    }
    let report = audit::audit(&g)?;
    write!(err, "{}", report.table())?;
    let ok = report.gating_ok();
    if full {
        emit(out, &report)?;
    } else {
        let failed: Vec<&str> = report
            .entries
            .iter()
            .filter(|e| e.status == audit::Status::Fail)
            .map(|e| e.name.as_str())
            .collect();
        let (holds, l) = audit::final_structure(&g);
        emit(
            out,
            &json!({
                "graph6": report.graph6,
                "m": report.m,
                "n": report.n,
                "rho": report.rho,
                "gating_ok": ok,
                "failed": failed,
                "final_structure": {"holds": holds, "pendants": l},
            }),
        )?;
    }
    Ok(ok)
}

fn audit_fixture_cmd(name: &str, range: &str, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    if name != "s-minus" {
        return usage(format!("unknown fixture `{name}` (available: s-minus)"));
    }
    let (a, b) = parse_range(range)?;
    let sizes: Vec<usize> = (a.max(6)..=b).filter(|m| m % 2 == 0).collect();
    if sizes.is_empty() {
        return usage(format!("no even size >= 6 in `{range}`"));
    }
    let mut ok = true;
    for m in sizes {
        let (report, bad) = verify::audit_fixture(m)?;
        writeln!(
            err,
            "{} m={m} {} rho={:.12}{}",
            if bad.is_empty() { "PASS" } else { "FAIL" },
            report.graph6,
            report.rho,
            if bad.is_empty() { String::new() } else { format!(" failed: {}", bad.join(", ")) }
        )?;
        emit(
            out,
            &json!({"m": m, "graph6": report.graph6, "rho": report.rho, "passed": bad.is_empty(), "failures": bad}),
        )?;
        ok &= bad.is_empty();
    }
    Ok(ok)
}
