//! Command-line surface for the multirigid toolkit.
//!
//! Exit codes are a stable contract:
//!   0  success / complete fan / polytopal
//!   2  bases only (fan certification failed past the basis stage)
//!   3  not a basis collection
//!   4  structural error (degenerate positions, internal invariant)
//!   5  fan is not polytopal (LP infeasible)
//!   64 bad flags or arguments

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::io::Write;
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::time::Instant;

use multirigid_core::fan::{certify_fan, FanOptions, Verdict};
use multirigid_core::formats;
use multirigid_core::linalg::Rat;
use multirigid_core::ngon::{hankel_count, Edge, Gon, KTriangulation};
use multirigid_core::obstructions;
use multirigid_core::polytope::{
    build_inequalities, find_lift, verify_farkas, verify_lift, LpOutcome,
};
use multirigid_core::rigidity::{
    build_bar_joint, build_cofactor, build_hyper, build_polynomial, circle_positions,
    regular_gon_config, ParameterConfig, RigidityMatrix,
};
use multirigid_core::sample;
use multirigid_core::ReducedEmbedding;

const EXIT_STRUCTURAL: i32 = 4;
const EXIT_NOT_POLYTOPAL: i32 = 5;
const EXIT_USAGE: i32 = 64;

#[derive(Parser)]
#[command(name = "multirigid", version, about = "Exact certification of multiassociahedron fans and polytopes")]
struct Cli {
    /// Worker threads (also settable via MULTIRIGID_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all k-triangulations as a JSON-Lines facet stream.
    Enumerate(EnumerateArgs),
    /// Certify bases / ICoP / cycle signs / degree one for given positions.
    CheckFan(CheckFanArgs),
    /// Verify a lifting vector or search for one by exact LP.
    CheckPolytope(CheckPolytopeArgs),
    /// Geometric obstruction tests.
    #[command(subcommand)]
    Obstruction(ObstructionCmd),
    /// Export a rigidity matrix as CSV plus a JSON descriptor.
    ExportMatrix(ExportMatrixArgs),
}

#[derive(Args)]
struct CommonParams {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    /// "standard", "circle", or a comma-separated list of exact rationals.
    #[arg(long, default_value = "standard", allow_hyphen_values = true)]
    positions: String,
    /// Read positions from a JSON file (array of "p/q" strings) instead.
    #[arg(long, conflicts_with = "positions")]
    positions_file: Option<PathBuf>,
    /// Matrix kind: polynomial | bar-joint | cofactor | hyper (d = 2k).
    #[arg(long, default_value = "polynomial")]
    kind: String,
    /// Numerator/denominator bit bound for circle-position convergents.
    #[arg(long, default_value_t = 64)]
    circle_bits: u32,
    /// desk (default) refuses runs with more than 10^5 facets; heavy allows them.
    #[arg(long, default_value = "desk")]
    tier: String,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    /// Write the facet stream here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Checkpoint file: written every 10^5 facets; if it exists the stream
    /// resumes after the recorded facet.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long, default_value = "desk")]
    tier: String,
}

#[derive(Args)]
struct CheckFanArgs {
    #[command(flatten)]
    common: CommonParams,
    /// Run all checks in each stage instead of stopping at the first failure.
    #[arg(long)]
    exhaustive: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckPolytopeArgs {
    #[command(flatten)]
    common: CommonParams,
    /// Verify this lift file instead of searching for one.
    #[arg(long)]
    lift: Option<PathBuf>,
    /// Skip the fan certification stage.
    #[arg(long)]
    assume_fan: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ObstructionCmd {
    /// Classify six convex points by the chords 14, 25, 36.
    Desargues(DesarguesArgs),
    /// Test the relevant-star interior at n = 2k+3.
    StarInterior(StarInteriorArgs),
    /// Exhibit the conflicting orientation requirements at n = 2k+6.
    TwoKSix(TwoKSixArgs),
}

#[derive(Args)]
struct DesarguesArgs {
    /// Six increasing rationals; points are taken on the parabola.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    t: Vec<String>,
}

#[derive(Args)]
struct StarInteriorArgs {
    #[arg(long)]
    k: usize,
    /// 2k+3 increasing rationals; points are taken on the parabola.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    t: Vec<String>,
}

#[derive(Args)]
struct TwoKSixArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    /// "circle" (regular-gon surrogate) or comma-separated parabola parameters.
    #[arg(long, default_value = "circle", allow_hyphen_values = true)]
    positions: String,
    #[arg(long, default_value_t = 64)]
    circle_bits: u32,
    /// Additionally test this many seeded random convex configurations.
    #[arg(long, default_value_t = 0)]
    samples: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct ExportMatrixArgs {
    /// polynomial | bar-joint | cofactor | hyper
    #[arg(long, default_value = "polynomial")]
    kind: String,
    #[arg(long)]
    d: usize,
    /// Comma-separated exact rationals (moment-curve parameters).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    t: Vec<String>,
    #[arg(long)]
    out_csv: PathBuf,
    #[arg(long)]
    out_descriptor: Option<PathBuf>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap uses exit code 2 for usage errors; the contract wants 64.
            let is_usage = !matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            std::process::exit(if is_usage { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(threads) = cli
        .threads
        .or_else(|| std::env::var("MULTIRIGID_THREADS").ok().and_then(|v| v.parse().ok()))
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_STRUCTURAL
        }
    };
    std::process::exit(code);
}

fn run(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::CheckFan(a) => cmd_check_fan(a),
        Command::CheckPolytope(a) => cmd_check_polytope(a),
        Command::Obstruction(a) => cmd_obstruction(a),
        Command::ExportMatrix(a) => cmd_export_matrix(a),
    }
}

fn parse_rationals(items: &[String]) -> Result<Vec<Rat>> {
    items
        .iter()
        .map(|s| formats::rat_from_string(s).map_err(|e| anyhow!("{e}")))
        .collect()
}

fn tier_guard(tier: &str, n: usize, k: usize) -> Result<()> {
    match tier {
        "heavy" => Ok(()),
        "desk" => {
            let count = hankel_count(n, k);
            if count > 100_000u32.into() {
                bail!(
                    "(k={k}, n={n}) has {count} facets; rerun with --tier heavy to allow long runs"
                );
            }
            Ok(())
        }
        other => bail!("unknown tier `{other}` (expected desk or heavy)"),
    }
}

fn resolve_parameters(c: &CommonParams) -> Result<ParameterConfig> {
    if let Some(path) = &c.positions_file {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let t = formats::positions_from_json(&text).map_err(|e| anyhow!("{e}"))?;
        return ParameterConfig::new(t).map_err(|e| anyhow!("{e}"));
    }
    match c.positions.as_str() {
        "standard" => Ok(ParameterConfig::standard(c.n)),
        "circle" => circle_positions(c.n, c.circle_bits).map_err(|e| anyhow!("{e}")),
        list => {
            let items: Vec<String> = list.split(',').map(|s| s.to_string()).collect();
            if items.len() != c.n {
                bail!("expected {} positions, got {}", c.n, items.len());
            }
            ParameterConfig::new(parse_rationals(&items)?).map_err(|e| anyhow!("{e}"))
        }
    }
}

fn build_matrix(kind: &str, t: &ParameterConfig, d: usize) -> Result<RigidityMatrix> {
    let m = match kind {
        "polynomial" => build_polynomial(t, d),
        "bar-joint" => build_bar_joint(&t.moment_curve(d)),
        "hyper" => build_hyper(&t.polynomial_vectors(d)),
        "cofactor" => build_cofactor(&t.parabola(), d),
        other => bail!("unknown matrix kind `{other}`"),
    };
    m.map_err(|e| anyhow!("{e}"))
}

fn positions_echo(t: &ParameterConfig) -> Vec<String> {
    t.t.iter().map(formats::rat_to_string).collect()
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn cmd_enumerate(a: EnumerateArgs) -> Result<i32> {
    tier_guard(&a.tier, a.n, a.k)?;
    let gon = Gon::new(a.n, a.k).map_err(|e| anyhow!("{e}"))?;
    let resume: Option<Vec<Edge>> = match &a.checkpoint {
        Some(path) if path.exists() => {
            let text = std::fs::read_to_string(path)?;
            let (n, k, last) = formats::checkpoint_from_json(&text).map_err(|e| anyhow!("{e}"))?;
            if (n, k) != (a.n, a.k) {
                bail!("checkpoint is for (k={k}, n={n}), not (k={}, n={})", a.k, a.n);
            }
            eprintln!("resuming after checkpointed facet");
            Some(last)
        }
        _ => None,
    };
    let mut sink: Box<dyn Write> = match &a.out {
        Some(path) => Box::new(std::io::BufWriter::new(std::fs::File::create(path)?)),
        None => Box::new(std::io::BufWriter::new(std::io::stdout().lock())),
    };
    let mut emitted = 0u64;
    let mut last: Option<KTriangulation> = None;
    let mut io_err: Option<std::io::Error> = None;
    gon.enumerate(resume.as_deref(), |t| {
        if let Err(e) = writeln!(sink, "{}", formats::facet_line(t)) {
            io_err = Some(e);
            return ControlFlow::Break(());
        }
        emitted += 1;
        if emitted % 100_000 == 0 {
            if let Some(path) = &a.checkpoint {
                let _ = std::fs::write(path, formats::checkpoint_json(t.n, t.k, &t.relevant));
            }
        }
        last = Some(t.clone());
        ControlFlow::Continue(())
    });
    if let Some(e) = io_err {
        return Err(e.into());
    }
    sink.flush()?;
    if let (Some(path), Some(t)) = (&a.checkpoint, &last) {
        std::fs::write(path, formats::checkpoint_json(t.n, t.k, &t.relevant))?;
    }
    let expected = hankel_count(a.n, a.k);
    eprintln!("emitted {emitted} facets; total count by Hankel determinant: {expected}");
    Ok(0)
}

fn cmd_check_fan(a: CheckFanArgs) -> Result<i32> {
    tier_guard(&a.common.tier, a.common.n, a.common.k)?;
    let t = resolve_parameters(&a.common)?;
    if t.len() != a.common.n {
        bail!("expected {} positions, got {}", a.common.n, t.len());
    }
    let d = 2 * a.common.k;
    let matrix = build_matrix(&a.common.kind, &t, d)?;
    let start = Instant::now();
    let report = certify_fan(
        &matrix,
        a.common.k,
        positions_echo(&t),
        &FanOptions { exhaustive: a.exhaustive },
    )
    .map_err(|e| anyhow!("{e}"))?;
    let timing_ms = start.elapsed().as_millis() as u64;
    let doc = json!({
        "format": formats::FORMAT_VERSION,
        "command": "check-fan",
        "tool_version": env!("CARGO_PKG_VERSION"),
        "timing_ms": timing_ms,
        "report": report,
    });
    emit(&a.out, &serde_json::to_string_pretty(&doc)?)?;
    Ok(report.exit_code())
}

fn cmd_check_polytope(a: CheckPolytopeArgs) -> Result<i32> {
    tier_guard(&a.common.tier, a.common.n, a.common.k)?;
    let t = resolve_parameters(&a.common)?;
    let (k, n) = (a.common.k, a.common.n);
    if t.len() != n {
        bail!("expected {n} positions, got {}", t.len());
    }
    let d = 2 * k;
    let matrix = build_matrix(&a.common.kind, &t, d)?;
    let start = Instant::now();
    let mut fan_verdict = None;
    if !a.assume_fan {
        let report = certify_fan(&matrix, k, positions_echo(&t), &FanOptions::default())
            .map_err(|e| anyhow!("{e}"))?;
        fan_verdict = Some(report.verdict);
        if report.verdict != Verdict::CompleteFan {
            let doc = json!({
                "format": formats::FORMAT_VERSION,
                "command": "check-polytope",
                "tool_version": env!("CARGO_PKG_VERSION"),
                "timing_ms": start.elapsed().as_millis() as u64,
                "report": report,
                "polytopal": false,
                "reason": "fan certification failed",
            });
            emit(&a.out, &serde_json::to_string_pretty(&doc)?)?;
            return Ok(report.exit_code());
        }
    }
    let emb = ReducedEmbedding::new(&matrix, k).map_err(|e| anyhow!("{e}"))?;
    let facets = emb.gon.all_facets();
    let inequalities = build_inequalities(&emb, &facets).map_err(|e| anyhow!("{e}"))?;
    let greedy = KTriangulation::greedy(n, k).map_err(|e| anyhow!("{e}"))?;
    let (doc, code) = match &a.lift {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let lift = formats::lift_from_json(&text).map_err(|e| anyhow!("{e}"))?;
            let outcome =
                verify_lift(&lift, &inequalities, &greedy).map_err(|e| anyhow!("{e}"))?;
            match outcome {
                Ok(()) => (
                    json!({
                        "polytopal": true,
                        "verified_lift": lift,
                        "inequalities": inequalities.len(),
                    }),
                    0,
                ),
                Err(violation) => (
                    json!({
                        "polytopal": false,
                        "violated": violation,
                    }),
                    EXIT_NOT_POLYTOPAL,
                ),
            }
        }
        None => match find_lift(&inequalities, n, k).map_err(|e| anyhow!("{e}"))? {
            LpOutcome::Feasible(lift) => {
                let ok = verify_lift(&lift, &inequalities, &greedy)
                    .map_err(|e| anyhow!("{e}"))?
                    .is_ok();
                if !ok {
                    bail!("internal error: found lift fails verification");
                }
                (
                    json!({
                        "polytopal": true,
                        "lift": lift,
                        "inequalities": inequalities.len(),
                    }),
                    0,
                )
            }
            LpOutcome::Infeasible(cert) => {
                let ok = verify_farkas(&cert, &inequalities, n, k).map_err(|e| anyhow!("{e}"))?;
                if !ok {
                    bail!("internal error: Farkas certificate fails verification");
                }
                (
                    json!({
                        "polytopal": false,
                        "farkas_certificate": cert,
                        "certificate_verified": true,
                    }),
                    EXIT_NOT_POLYTOPAL,
                )
            }
        },
    };
    let full = json!({
        "format": formats::FORMAT_VERSION,
        "command": "check-polytope",
        "tool_version": env!("CARGO_PKG_VERSION"),
        "timing_ms": start.elapsed().as_millis() as u64,
        "k": k,
        "n": n,
        "kind": a.common.kind,
        "positions": positions_echo(&t),
        "fan_verdict": fan_verdict.map(|v| format!("{v:?}")),
        "result": doc,
    });
    emit(&a.out, &serde_json::to_string_pretty(&full)?)?;
    Ok(code)
}

fn cmd_obstruction(cmd: ObstructionCmd) -> Result<i32> {
    match cmd {
        ObstructionCmd::Desargues(a) => {
            let t = ParameterConfig::new(parse_rationals(&a.t)?).map_err(|e| anyhow!("{e}"))?;
            let class =
                obstructions::desargues_class(&t.parabola()).map_err(|e| anyhow!("{e}"))?;
            let ms =
                obstructions::morgan_scott_signs(&t.parabola()).map_err(|e| anyhow!("{e}"))?;
            let doc = json!({
                "format": formats::FORMAT_VERSION,
                "command": "obstruction desargues",
                "tool_version": env!("CARGO_PKG_VERSION"),
                "t": positions_echo(&t),
                "class": class,
                "morgan_scott_sign": format!("{:?}", ms.sign),
                "dependence": ms.dependence,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(0)
        }
        ObstructionCmd::StarInterior(a) => {
            let t = ParameterConfig::new(parse_rationals(&a.t)?).map_err(|e| anyhow!("{e}"))?;
            if t.len() != 2 * a.k + 3 {
                bail!("star-interior needs 2k+3 = {} parameters", 2 * a.k + 3);
            }
            let r = obstructions::star_interior_test(&t.parabola(), a.k)
                .map_err(|e| anyhow!("{e}"))?;
            let doc = json!({
                "format": formats::FORMAT_VERSION,
                "command": "obstruction star-interior",
                "tool_version": env!("CARGO_PKG_VERSION"),
                "k": a.k,
                "t": positions_echo(&t),
                "result": r,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(0)
        }
        ObstructionCmd::TwoKSix(a) => {
            if a.n != 2 * a.k + 6 {
                bail!("two-k-six needs n = 2k+6 = {}", 2 * a.k + 6);
            }
            let q = match a.positions.as_str() {
                "circle" => {
                    regular_gon_config(a.n, a.circle_bits).map_err(|e| anyhow!("{e}"))?
                }
                list => {
                    let items: Vec<String> = list.split(',').map(|s| s.to_string()).collect();
                    let t = ParameterConfig::new(parse_rationals(&items)?)
                        .map_err(|e| anyhow!("{e}"))?;
                    t.parabola()
                }
            };
            let w = obstructions::impossibility_witness(&q, a.k).map_err(|e| anyhow!("{e}"))?;
            let mut sampled_conflicts = 0u32;
            for s in 0..a.samples {
                let mut rng = sample::rng(a.seed.wrapping_add(s as u64));
                let rq = sample::random_convex_config(&mut rng, a.n);
                let rw =
                    obstructions::impossibility_witness(&rq, a.k).map_err(|e| anyhow!("{e}"))?;
                if rw.conflict {
                    sampled_conflicts += 1;
                }
            }
            let doc = json!({
                "format": formats::FORMAT_VERSION,
                "command": "obstruction two-k-six",
                "tool_version": env!("CARGO_PKG_VERSION"),
                "witness": w,
                "samples": a.samples,
                "seed": a.seed,
                "sampled_conflicts": sampled_conflicts,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(0)
        }
    }
}

fn cmd_export_matrix(a: ExportMatrixArgs) -> Result<i32> {
    let t = ParameterConfig::new(parse_rationals(&a.t)?).map_err(|e| anyhow!("{e}"))?;
    let m = build_matrix(&a.kind, &t, a.d)?;
    std::fs::write(&a.out_csv, formats::matrix_csv(&m))?;
    if let Some(desc) = &a.out_descriptor {
        std::fs::write(desc, formats::matrix_descriptor(&m, &positions_echo(&t)))?;
    }
    Ok(0)
}
