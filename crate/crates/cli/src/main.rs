use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use orbitcensus_core::census::{census, CensusReport};
use orbitcensus_core::exactmath::prime_power;
use orbitcensus_core::groupkit::{parse_generators, FiniteGroup, DEFAULT_CAP};
use orbitcensus_core::models::{make_model, ModelParams, REGISTRY};
use orbitcensus_core::orbitscan::{regular_orbit_scan, OrbitVerdict, DEFAULT_BUDGET};
use orbitcensus_core::starcheck::{builtin_case, evaluate_star, scan_thresholds, Outcome, ScanMode, Variant};
use orbitcensus_core::verify::{run_suite, Status, SUITES};
use orbitcensus_core::Error;

const THREADS_VAR: &str = "ORBITCENSUS_THREADS";

#[derive(Parser)]
#[command(name = "orbitcensus", version, about = "Exact censuses, orbit scans and star-inequality checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Element-order and fixed-space census of a group.
    Census(GroupArgs),
    /// Brute-force regular-orbit scan.
    Orbit {
        #[command(flatten)]
        group: GroupArgs,
        /// Refuse modules with more vectors than this.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// The star inequality: single evaluations and threshold scans.
    #[command(subcommand)]
    Star(StarCmd),
    /// Run a suite of golden-value checks.
    Verify {
        #[arg(value_parser = SUITES.iter().map(|(n, _)| *n).collect::<Vec<_>>())]
        suite: String,
        #[arg(long)]
        json: bool,
    },
    /// List the model registry with expected group orders.
    Models {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct GroupArgs {
    /// Registry model name (see `models`).
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    model: Option<String>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    m: Option<u32>,
    /// Read generators from a file instead of the registry.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Paper,
    Corrected,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Paper => Variant::Paper,
            VariantArg::Corrected => Variant::Corrected,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Prime,
    PrimePower,
}

#[derive(Subcommand)]
enum StarCmd {
    /// Evaluate the inequality at one |W|; exits 1 unless it holds.
    Check {
        #[arg(long)]
        e: u32,
        #[arg(long)]
        w: BigInt,
        #[arg(long, default_value_t = 1)]
        b: u32,
        /// Exponent with |W| = r^m; inferred when omitted.
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, value_enum, default_value = "corrected")]
        variant: VariantArg,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate every admissible |W| up to a cap.
    Scan {
        #[arg(long)]
        e: u32,
        #[arg(long, default_value_t = 1)]
        b: u32,
        #[arg(long, value_enum, default_value = "prime-power")]
        mode: ModeArg,
        #[arg(long, default_value_t = 500)]
        max: u64,
        #[arg(long, value_enum, default_value = "corrected")]
        variant: VariantArg,
        #[arg(long)]
        json: bool,
    },
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

struct Loaded {
    label: String,
    params: Value,
    group: FiniteGroup,
}

fn load(args: &GroupArgs) -> Result<Loaded, Error> {
    if let Some(path) = &args.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
        let parsed = parse_generators(&text)?;
        return Ok(Loaded {
            label: path.display().to_string(),
            params: json!({ "field": parsed.field.to_string(), "dim": parsed.dim }),
            group: FiniteGroup::closure(&parsed.generators, DEFAULT_CAP)?,
        });
    }
    let name = args.model.as_deref().expect("clap enforces model or file");
    let model = make_model(name, ModelParams { q: args.q, m: args.m })?;
    Ok(Loaded {
        label: model.name.to_string(),
        params: json!({ "q": model.params.q, "m": model.params.m }),
        group: model.group,
    })
}

fn envelope(command: &str, loaded: &Loaded, report: Value) -> Value {
    json!({
        "command": command,
        "model": loaded.label,
        "params": loaded.params,
        "order": loaded.group.order().to_string(),
        "module": loaded.group.module().to_string(),
        "version": env!("CARGO_PKG_VERSION"),
        "report": report,
    })
}

fn print_census(l: &Loaded, c: &CensusReport) {
    println!("{}: |G| = {}, V = {}", l.label, c.order, l.group.module());
    println!("{:>5} {:>10} {:>10}  NPC (dim:count)", "p", "NEP", "SP");
    for (p, pc) in &c.primes {
        let npc: Vec<String> = pc.npc.iter().map(|(i, n)| format!("{i}:{n}")).collect();
        println!("{p:>5} {:>10} {:>10}  {}", pc.nep, pc.sp, npc.join(" "));
    }
    println!("total NEP {}", c.total_nep);
}

fn print_orbit(l: &Loaded, v: &OrbitVerdict) {
    println!("{}: |G| = {}, V = {}", l.label, l.group.order(), l.group.module());
    println!("regular orbit: {}", if v.has_regular_orbit { "yes" } else { "no" });
    println!("free vectors: {}, covered: {}", v.free_vector_count, v.covered_count);
    if let Some(w) = &v.witness {
        let f = &l.group.module().field;
        let coords: Vec<String> = w.iter().map(|&c| f.format(c)).collect();
        println!("witness: ({})", coords.join(", "));
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Census(args) => {
            let l = load(&args)?;
            let c = census(&l.group);
            if args.json {
                let report = serde_json::to_value(&c).expect("serializable");
                print_json(&envelope("census", &l, report));
            } else {
                print_census(&l, &c);
            }
        }
        Cmd::Orbit { group, budget } => {
            let l = load(&group)?;
            let v = regular_orbit_scan(&l.group, budget)?;
            if group.json {
                let report = serde_json::to_value(&v).expect("serializable");
                print_json(&envelope("orbit", &l, report));
            } else {
                print_orbit(&l, &v);
            }
        }
        Cmd::Star(StarCmd::Check { e, w, b, m, variant, json }) => {
            let case = builtin_case(e, variant.into())?;
            let m = match m {
                Some(m) => m,
                None => prime_power(&w).map(|(_, m)| m).ok_or_else(|| {
                    Error::Inadmissible(format!("|W| = {w} is not a prime power"))
                })?,
            };
            let v = evaluate_star(&case, &w, b, m)?;
            if json {
                print_json(&v);
            } else {
                println!("e = {e}, |W| = {w}, b = {b}, m = {m}, {} variant", v.variant);
                for t in &v.per_term {
                    println!("  {:<4} beta {:>4}  a = {}  term <= {}", t.label, t.beta.to_string(), t.a, t.contribution);
                }
                println!("lhs in [{}, {}], rhs = {}", v.lhs_lower, v.lhs_upper, v.rhs);
                println!("{:?}", v.verdict);
            }
            if v.verdict != Outcome::Holds {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Star(StarCmd::Scan { e, b, mode, max, variant, json }) => {
            let mode = match mode {
                ModeArg::Prime => ScanMode::Prime,
                ModeArg::PrimePower => ScanMode::PrimePower,
            };
            let s = scan_thresholds(&builtin_case(e, variant.into())?, b, mode, max)?;
            if json {
                print_json(&s);
            } else {
                println!("e = {e}, b = {b}, {:?} |W| <= {max}, {} variant: {} evaluated", mode, s.variant, s.evaluated);
                println!("failing: {:?}", s.failing);
                if !s.indeterminate.is_empty() {
                    println!("indeterminate: {:?}", s.indeterminate);
                }
                println!("minimal pass: {}", s.minimal_pass);
            }
        }
        Cmd::Verify { suite, json } => {
            let start = Instant::now();
            let r = run_suite(&suite)?;
            if json {
                print_json(&r);
            } else {
                for c in &r.checks {
                    let tag = match c.status {
                        Status::Pass => "PASS",
                        Status::Fail => "FAIL",
                        Status::Skip => "SKIP",
                    };
                    println!("{tag} [{}] {}: expected {}, got {}", c.criterion, c.name, c.expected, c.actual);
                }
                println!(
                    "{} passed, {} failed, {} skipped ({:.2?})",
                    r.passed,
                    r.failed,
                    r.skipped,
                    start.elapsed()
                );
            }
            if !r.ok() {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Models { json } => {
            let rows: Vec<Value> = REGISTRY
                .iter()
                .map(|s| {
                    json!({
                        "name": s.name,
                        "params": s.params,
                        "defaults": { "q": s.defaults.q, "m": s.defaults.m },
                        "expected_order": s.expected_order(ModelParams::default()).to_string(),
                        "description": s.description,
                    })
                })
                .collect();
            if json {
                print_json(&rows);
            } else {
                for s in REGISTRY {
                    let order = s.expected_order(ModelParams::default());
                    println!("{:<16} {:<20} order {:>7}  {}", s.name, s.params, order, s.description);
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var(THREADS_VAR) else { return Ok(()) };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_VAR} must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = init_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
