//! Command-line front end: `evolve`, `sweep`, `compare` and `verify`.
//!
//! All four subcommands share one argument shape: an optional JSON config
//! (defaults apply when omitted), an optional output override, and any
//! number of dotted-path `--set key=value` overrides applied on top of the
//! config before validation.
//!
//! Exit codes: 0 on success, 1 for config parse/validation errors, 2 for
//! runtime failures (I/O, fully post-selected-away sweeps, failed checks).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use qutrit_cad::channels::{cad_apply, ChannelParams};
use qutrit_cad::error::{Error, Result};
use qutrit_cad::linalg::ComplexMatrix;
use qutrit_cad::protection::{eam_qmr_pipeline, wm_qmr_pipeline, ProtocolOutcome};
use qutrit_cad::states::{make_state, negativity};
use qutrit_cad::svg::emit_svg_heatmap;
use qutrit_cad::sweep::{
    config_from_value, emit_csv, run_sweep, OutputFormat, RecordScheme, Scheme, SweepConfig,
    SweepRecord,
};
use qutrit_cad::verify;

/// Two-qutrit correlated amplitude damping: channel sweeps, entanglement
/// protection schemes, and numeric self-checks.
#[derive(Parser)]
#[command(name = "qutrit-cad", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one grid point (each axis's first value) and print the state.
    Evolve(RunArgs),
    /// Evaluate the configured grid and write CSV (and optionally SVG).
    Sweep(RunArgs),
    /// Run a sweep with the scheme forced to `compare`.
    Compare(RunArgs),
    /// Run the numeric self-check battery and report pass/fail.
    Verify(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON config file; omit to use built-in defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override the config's output path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Dotted-path config override, e.g. --set grid.mu.steps=5
    /// or --set scheme=eam. May be repeated.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn main() -> ExitCode {
    // Restore conventional SIGPIPE behavior so piping into `head` simply
    // truncates the output instead of turning into a panic.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::ConfigParse { .. } | Error::ConfigInvalid { .. } => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Evolve(args) => cmd_evolve(args).map(|()| true),
        Command::Sweep(args) => cmd_sweep(args, false).map(|()| true),
        Command::Compare(args) => cmd_sweep(args, true).map(|()| true),
        Command::Verify(args) => cmd_verify(args),
    }
}

/// Reads the config file (or starts from `{}`), applies `--set` overrides
/// and the `--out` override, then validates.
fn load_config(args: &RunArgs) -> Result<SweepConfig> {
    let mut value = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            serde_json::from_str(&text).map_err(|err| Error::ConfigParse {
                path: path.display().to_string(),
                message: err.to_string(),
            })?
        }
        None => Value::Object(serde_json::Map::new()),
    };
    for assignment in &args.set {
        apply_set(&mut value, assignment)?;
    }
    let mut cfg = config_from_value(value)?;
    if let Some(out) = &args.out {
        cfg.output = out.display().to_string();
    }
    Ok(cfg)
}

/// Sets one dotted-path key in a JSON tree, creating intermediate objects
/// as needed. The value is parsed as JSON when possible and falls back to
/// a plain string (so `--set scheme=eam` needs no inner quotes).
fn apply_set(root: &mut Value, assignment: &str) -> Result<()> {
    let parse_error = |message: &str| Error::ConfigParse {
        path: assignment.to_string(),
        message: message.to_string(),
    };
    let (path, raw) = assignment
        .split_once('=')
        .ok_or_else(|| parse_error("--set expects KEY=VALUE"))?;
    let segments: Vec<&str> = path.split('.').collect();
    if segments.iter().any(|s| s.is_empty()) {
        return Err(parse_error("--set path has an empty segment"));
    }
    let leaf =
        serde_json::from_str::<Value>(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let mut node = root;
    for segment in &segments[..segments.len() - 1] {
        if !node.is_object() {
            *node = Value::Object(serde_json::Map::new());
        }
        node = node
            .as_object_mut()
            .expect("just coerced to object")
            .entry(segment.to_string())
            .or_insert_with(|| Value::Object(serde_json::Map::new()));
    }
    if !node.is_object() {
        *node = Value::Object(serde_json::Map::new());
    }
    node.as_object_mut()
        .expect("just coerced to object")
        .insert(segments[segments.len() - 1].to_string(), leaf);
    Ok(())
}

fn cmd_sweep(args: RunArgs, force_compare: bool) -> Result<()> {
    let mut cfg = load_config(&args)?;
    if force_compare && cfg.scheme != Scheme::Compare {
        cfg.scheme = Scheme::Compare;
        cfg.validate()?;
    }
    let records = run_sweep(&cfg)?;
    fs::write(&cfg.output, emit_csv(&records))?;
    println!("wrote {} rows to {}", records.len(), cfg.output);
    if cfg.format == OutputFormat::CsvSvg {
        write_heatmaps(&cfg, &records)?;
    }
    Ok(())
}

fn write_heatmaps(cfg: &SweepConfig, records: &[SweepRecord]) -> Result<()> {
    let multi = cfg.grid.resolve().multi_axes();
    // Config validation guarantees exactly two scanning axes here.
    let (x, y) = (multi[0], multi[1]);
    let jobs: Vec<(Option<&str>, Vec<SweepRecord>)> = match cfg.scheme {
        Scheme::Compare => [RecordScheme::Wm, RecordScheme::Eam]
            .into_iter()
            .map(|scheme| {
                let tag = if scheme == RecordScheme::Wm { "wm" } else { "eam" };
                let subset = records
                    .iter()
                    .copied()
                    .filter(|r| r.scheme == scheme)
                    .collect();
                (Some(tag), subset)
            })
            .collect(),
        _ => vec![(None, records.to_vec())],
    };
    for (tag, subset) in jobs {
        let path = svg_path(&cfg.output, tag);
        fs::write(&path, emit_svg_heatmap(&subset, x, y, "negativity")?)?;
        println!("wrote heatmap to {}", path.display());
    }
    Ok(())
}

/// SVG path derived from the CSV output path: extension swapped to `.svg`,
/// with a `_wm`/`_eam` stem suffix for the paired compare heatmaps.
fn svg_path(csv_path: &str, tag: Option<&str>) -> PathBuf {
    let base = Path::new(csv_path);
    match tag {
        None => base.with_extension("svg"),
        Some(tag) => {
            let stem = base.file_stem().unwrap_or_default().to_string_lossy();
            base.with_file_name(format!("{stem}_{tag}.svg"))
        }
    }
}

fn cmd_evolve(args: RunArgs) -> Result<()> {
    let cfg = load_config(&args)?;
    let grid = cfg.grid.resolve();
    let (d1, d2) = grid.damping_pairs()[0];
    let mu = grid.mu.values()[0];
    let p = grid.p.values()[0];
    let ch = ChannelParams::new(d1, d2, mu)?;
    let amps = cfg.amplitudes.build()?;
    let rho0 = make_state(cfg.state_class, &amps);
    println!("state_class = {}", cfg.state_class);
    println!("d1 = {d1}, d2 = {d2}, mu = {mu}");
    println!("initial negativity = {:.12}", negativity(&rho0)?);
    let schemes: &[RecordScheme] = match cfg.scheme {
        Scheme::None => &[RecordScheme::None],
        Scheme::Wm => &[RecordScheme::Wm],
        Scheme::Eam => &[RecordScheme::Eam],
        Scheme::Compare => &[RecordScheme::Wm, RecordScheme::Eam],
    };
    for &scheme in schemes {
        println!();
        match scheme {
            RecordScheme::None => {
                let rho = cad_apply(&rho0, &ch)?;
                println!(
                    "scheme none: negativity = {:.12}, probability = 1",
                    negativity(&rho)?
                );
                print_matrix(&rho);
            }
            RecordScheme::Wm => {
                let prot = cfg.wm_strengths(p, d1, d2)?;
                println!(
                    "scheme wm: p = {}, q = {}, p_r = {}, q_r = {}",
                    prot.p, prot.q, prot.p_r, prot.q_r
                );
                report_outcome(wm_qmr_pipeline(&rho0, &prot, &ch))?;
            }
            RecordScheme::Eam => {
                let prot = cfg.eam_strengths(d1, d2)?;
                println!("scheme eam: p_r = {}, q_r = {}", prot.p_r, prot.q_r);
                report_outcome(eam_qmr_pipeline(&rho0, &prot, &ch))?;
            }
        }
    }
    Ok(())
}

fn report_outcome(outcome: Result<ProtocolOutcome>) -> Result<()> {
    match outcome {
        Ok(out) => {
            println!(
                "negativity = {:.12}, probability = {:.12}",
                negativity(&out.state)?,
                out.probability
            );
            print_matrix(&out.state);
            Ok(())
        }
        Err(Error::ZeroProbability { .. }) => {
            println!("post-selection never succeeds at this point (probability 0)");
            Ok(())
        }
        Err(err) => Err(err),
    }
}

fn print_matrix(rho: &ComplexMatrix) {
    for i in 0..rho.dim() {
        let row: Vec<String> = (0..rho.dim())
            .map(|j| {
                let z = rho[(i, j)];
                format!("{:+.6}{:+.6}i", z.re, z.im)
            })
            .collect();
        println!("  {}", row.join("  "));
    }
}

fn cmd_verify(args: RunArgs) -> Result<bool> {
    // A provided config is validated as part of verification.
    if args.config.is_some() || !args.set.is_empty() {
        load_config(&args)?;
        println!("config ok");
    }
    let results = verify::run_all();
    let mut passed = 0usize;
    for result in &results {
        let tag = if result.passed { "ok  " } else { "FAIL" };
        println!("{tag} {:<28} {}", result.name, result.detail);
        passed += usize::from(result.passed);
    }
    println!("{passed}/{} checks passed", results.len());
    Ok(passed == results.len())
}
