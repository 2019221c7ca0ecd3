//! Command-line front end: evaluation, verification suites, torus slope
//! enumeration, and counting bounds, with machine-readable output.
//!
//! Exit codes: 0 success (and all suites passing), 1 verification failure,
//! 2 usage or domain error. Data goes to stdout, diagnostics to stderr.

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use pants_measures::jsonfmt::{fmt_f64, to_string_g17};
use pants_measures::torus::eta_term;
use pants_measures::{
    counting, enumerate_slopes, eta, eta_partial_sum, lasso, mcshane_partial_sum, phi_x, phi_y,
    rogers_l, run_all, torus_from_lengths, verify, Accuracy, Branch, Cutoff, EvalMode, GridSpec,
    Length, PantsShape, PartialSum, Sampling, TorusBoundary, TorusPantsShape, TraceTriple,
    UnitArg, VerificationReport, XCoord,
};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "pants",
    version,
    about = "Measures on hyperbolic pairs of pants: evaluate, verify, enumerate, count"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format for data on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a measure or special function at a point.
    Eval(EvalArgs),
    /// Run an inequality/monotonicity verification suite.
    Verify(VerifyArgs),
    /// Enumerate one-holed-torus slopes and their partial sums.
    Torus(TorusArgs),
    /// Pants-counting bound, measure floor, and budget.
    Count(CountArgs),
}

#[derive(Args)]
#[command(group(
    ArgGroup::new("target")
        .required(true)
        .args(["phi_x", "phi_lengths", "eta", "rogers", "lasso"])
))]
struct EvalArgs {
    /// phi from x-coordinates: X1,X2,X3 in (0,1).
    #[arg(long, value_name = "X1,X2,X3")]
    phi_x: Option<String>,
    /// phi from boundary lengths (orthogeodesic route): L1,L2,L3 > 0.
    #[arg(long, value_name = "L1,L2,L3")]
    phi_lengths: Option<String>,
    /// eta from boundary and waist coordinates: X,Y in (0,1).
    #[arg(long, value_name = "X,Y")]
    eta: Option<String>,
    /// Rogers' dilogarithm L(x), x in [0,1].
    #[arg(long, value_name = "X")]
    rogers: Option<f64>,
    /// Lasso function La(a,b), a,b in (0,1).
    #[arg(long, value_name = "A,B")]
    lasso: Option<String>,
    /// Precision mode for the special-function evaluations.
    #[arg(long, value_enum, default_value_t = CliMode::Standard)]
    mode: CliMode,
    /// Clamp coordinates within 1e-9 of 0 or 1 instead of rejecting them.
    #[arg(long)]
    limit_mode: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliMode {
    Standard,
    Extended,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run.
    #[arg(long, value_enum)]
    suite: SuiteName,
    /// Points per grid axis (default: 64 for 3-coordinate suites, 256 for
    /// 2-coordinate, 1024 for 1-coordinate).
    #[arg(long, value_name = "N")]
    grid: Option<usize>,
    /// Grid lower bound per axis.
    #[arg(long, default_value_t = 0.01)]
    min: f64,
    /// Grid upper bound per axis.
    #[arg(long, default_value_t = 0.99)]
    max: f64,
    /// Seed for random sampling (and the sampled iterate checks).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Lattice sweep or seeded uniform sampling.
    #[arg(long, value_enum, default_value_t = SamplingArg::Uniform)]
    sampling: SamplingArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SamplingArg {
    Uniform,
    Random,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteName {
    MonotonePhi,
    MonotoneEta,
    EtaDominates,
    Symmetrization,
    GeometricMean,
    DiagBound,
    Degeneration,
    All,
}

#[derive(Args)]
struct TorusArgs {
    #[command(subcommand)]
    action: TorusAction,
}

#[derive(Subcommand)]
enum TorusAction {
    /// List slopes with traces and lengths (JSON lines by default).
    Enum(TorusCommon),
    /// Compensated sum of eta over enumerated slopes.
    SumEta(TorusCommon),
    /// McShane partial sum 1/(1+e^l) over slopes of a cusped torus.
    Mcshane(TorusCommon),
}

#[derive(Args)]
#[command(group(
    ArgGroup::new("cutoff")
        .required(true)
        .args(["max_trace", "max_denominator"])
))]
#[command(group(
    ArgGroup::new("boundary")
        .required(true)
        .args(["cusped", "boundary_length"])
))]
struct TorusCommon {
    /// Cusped torus (boundary commutator trace exactly -2).
    #[arg(long)]
    cusped: bool,
    /// Geodesic boundary length of the torus.
    #[arg(long, value_name = "L")]
    boundary_length: Option<f64>,
    /// Length of the waist geodesic seeding the symmetric marking.
    /// Defaults to 2 acosh(3/2) in cusped mode (the modular torus).
    #[arg(long, value_name = "L")]
    alpha_length: Option<f64>,
    /// Root choice for the symmetric-seed quadratic.
    #[arg(long, value_enum, default_value_t = BranchArg::Plus)]
    branch: BranchArg,
    /// Keep slopes of trace at most this.
    #[arg(long, value_name = "T")]
    max_trace: Option<f64>,
    /// Keep slopes of Stern-Brocot height max(|p|,|q|) at most this.
    #[arg(long, value_name = "N")]
    max_denominator: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BranchArg {
    Plus,
    Minus,
}

#[derive(Args)]
struct CountArgs {
    /// Genus of the closed surface (>= 2).
    #[arg(long)]
    genus: u32,
    /// Total boundary length bound L.
    #[arg(long)]
    length: f64,
}

#[derive(Serialize)]
struct EvalReport {
    op: &'static str,
    form: &'static str,
    input: Vec<f64>,
    value: f64,
}

fn parse_tuple<const N: usize>(s: &str, what: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(format!(
            "{what}: expected {N} comma-separated values, got {s:?}"
        ));
    }
    let mut out = [0.0; N];
    for (slot, part) in out.iter_mut().zip(parts.iter()) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("{what}: {part:?} is not a number ({e})"))?;
    }
    Ok(out)
}

fn emit_eval(report: &EvalReport, format: Format) {
    match format {
        Format::Json => println!("{}", to_string_g17(report)),
        Format::Csv => {
            println!("op,form,input,value");
            let input = report
                .input
                .iter()
                .map(|v| fmt_f64(*v))
                .collect::<Vec<_>>()
                .join(";");
            println!(
                "{},{},{},{}",
                report.op,
                report.form,
                input,
                fmt_f64(report.value)
            );
        }
        Format::Human => {
            let input = report
                .input
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            println!(
                "{}[{}]({}) = {}",
                report.op,
                report.form,
                input,
                fmt_f64(report.value)
            );
        }
    }
}

fn cmd_eval(args: &EvalArgs, format: Format) -> Result<i32, String> {
    let acc = match args.mode {
        CliMode::Standard => Accuracy::standard(),
        CliMode::Extended => Accuracy::extended(),
    };
    let eval_mode = if args.limit_mode {
        EvalMode::Limit
    } else {
        EvalMode::Strict
    };
    let coord = |v: f64| -> Result<XCoord, String> {
        if args.limit_mode {
            XCoord::clamped(v).map_err(|e| e.to_string())
        } else {
            XCoord::new(v).map_err(|e| e.to_string())
        }
    };

    let report = if let Some(s) = &args.phi_x {
        let [a, b, c] = parse_tuple::<3>(s, "--phi-x")?;
        let shape = PantsShape::new(coord(a)?, coord(b)?, coord(c)?);
        let v = phi_x(&shape, eval_mode).map_err(|e| e.to_string())?;
        EvalReport {
            op: "phi",
            form: "x-form",
            input: vec![a, b, c],
            value: v.get(),
        }
    } else if let Some(s) = &args.phi_lengths {
        let [a, b, c] = parse_tuple::<3>(s, "--phi-lengths")?;
        let mk = |v| Length::new(v).map_err(|e: pants_measures::Error| e.to_string());
        let v = phi_y(mk(a)?, mk(b)?, mk(c)?, eval_mode).map_err(|e| e.to_string())?;
        EvalReport {
            op: "phi",
            form: "y-form",
            input: vec![a, b, c],
            value: v.get(),
        }
    } else if let Some(s) = &args.eta {
        let [x, y] = parse_tuple::<2>(s, "--eta")?;
        let shape = TorusPantsShape::new(coord(x)?, coord(y)?);
        let v = eta(&shape, eval_mode).map_err(|e| e.to_string())?;
        EvalReport {
            op: "eta",
            form: "x-form",
            input: vec![x, y],
            value: v.get(),
        }
    } else if let Some(x) = args.rogers {
        let arg = UnitArg::new(x).map_err(|e| e.to_string())?;
        EvalReport {
            op: "rogers",
            form: match args.mode {
                CliMode::Standard => "reflection-series",
                CliMode::Extended => "extended-series",
            },
            input: vec![x],
            value: rogers_l(arg, acc),
        }
    } else if let Some(s) = &args.lasso {
        let [a, b] = parse_tuple::<2>(s, "--lasso")?;
        let ua = UnitArg::new(a).map_err(|e| e.to_string())?;
        let ub = UnitArg::new(b).map_err(|e| e.to_string())?;
        EvalReport {
            op: "lasso",
            form: "rogers-combination",
            input: vec![a, b],
            value: lasso(ua, ub, acc).map_err(|e| e.to_string())?,
        }
    } else {
        unreachable!("clap enforces the target group");
    };
    emit_eval(&report, format);
    Ok(0)
}

fn emit_reports(reports: &[VerificationReport], single: bool, format: Format) {
    match format {
        Format::Json => {
            if single {
                println!("{}", reports[0].to_json());
            } else {
                println!("{}", to_string_g17(&reports));
            }
        }
        Format::Csv => {
            println!("suite,pass,points,worst_margin,failure_count");
            for r in reports {
                println!(
                    "{},{},{},{},{}",
                    r.suite,
                    r.pass,
                    r.points,
                    fmt_f64(r.worst_margin),
                    r.failure_count
                );
            }
        }
        Format::Human => {
            for r in reports {
                println!(
                    "suite {}: {} ({} points, worst margin {}{})",
                    r.suite,
                    if r.pass { "PASS" } else { "FAIL" },
                    r.points,
                    fmt_f64(r.worst_margin),
                    if r.limit_mode { ", limit-mode" } else { "" }
                );
                for c in &r.checks {
                    println!(
                        "  check {}: {} (worst margin {})",
                        c.check,
                        if c.pass { "pass" } else { "FAIL" },
                        fmt_f64(c.worst_margin)
                    );
                }
                for f in r.failures.iter().take(5) {
                    println!(
                        "  witness [{}] at ({}): lhs {} rhs {}",
                        f.check,
                        f.point
                            .iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(", "),
                        fmt_f64(f.lhs),
                        fmt_f64(f.rhs)
                    );
                }
            }
        }
    }
}

fn cmd_verify(args: &VerifyArgs, format: Format) -> Result<i32, String> {
    let sampling = match args.sampling {
        SamplingArg::Uniform => Sampling::Uniform,
        SamplingArg::Random => Sampling::Random { seed: args.seed },
    };
    let grid_with = |default_count: usize| -> Result<GridSpec, String> {
        GridSpec::new(
            args.min,
            args.max,
            args.grid.unwrap_or(default_count),
            sampling,
        )
        .map_err(|e| e.to_string())
    };
    let map_err = |e: pants_measures::Error| e.to_string();
    let reports: Vec<VerificationReport> = match args.suite {
        SuiteName::MonotonePhi => vec![verify::suite_monotone_phi(&grid_with(64)?).map_err(map_err)?],
        SuiteName::MonotoneEta => vec![verify::suite_monotone_eta(&grid_with(256)?).map_err(map_err)?],
        SuiteName::EtaDominates => {
            vec![verify::suite_eta_dominates(&grid_with(256)?).map_err(map_err)?]
        }
        SuiteName::Symmetrization => {
            vec![verify::suite_symmetrization(&grid_with(64)?).map_err(map_err)?]
        }
        SuiteName::GeometricMean => {
            vec![verify::suite_geometric_mean(&grid_with(64)?).map_err(map_err)?]
        }
        SuiteName::DiagBound => {
            vec![verify::suite_diag_lower_bound(&grid_with(1024)?).map_err(map_err)?]
        }
        SuiteName::Degeneration => {
            vec![verify::suite_degeneration(&grid_with(64)?).map_err(map_err)?]
        }
        SuiteName::All => {
            if let Some(n) = args.grid {
                let g = GridSpec::new(args.min, args.max, n, sampling).map_err(map_err)?;
                run_all(Some(&g)).map_err(map_err)?
            } else {
                // Per-suite default counts, custom bounds/sampling applied.
                vec![
                    verify::suite_monotone_phi(&grid_with(64)?).map_err(map_err)?,
                    verify::suite_monotone_eta(&grid_with(256)?).map_err(map_err)?,
                    verify::suite_eta_dominates(&grid_with(256)?).map_err(map_err)?,
                    verify::suite_symmetrization(&grid_with(64)?).map_err(map_err)?,
                    verify::suite_geometric_mean(&grid_with(64)?).map_err(map_err)?,
                    verify::suite_diag_lower_bound(&grid_with(1024)?).map_err(map_err)?,
                    verify::suite_degeneration(&grid_with(64)?).map_err(map_err)?,
                ]
            }
        }
    };

    let single = reports.len() == 1;
    emit_reports(&reports, single, format);
    Ok(if reports.iter().all(|r| r.pass) { 0 } else { 1 })
}

fn build_seed(c: &TorusCommon) -> Result<(TraceTriple, Option<Length>), String> {
    let branch = match c.branch {
        BranchArg::Plus => Branch::Plus,
        BranchArg::Minus => Branch::Minus,
    };
    let map_err = |e: pants_measures::Error| e.to_string();
    if c.cusped {
        let alpha = match c.alpha_length {
            Some(l) => Length::new(l).map_err(map_err)?,
            // The modular torus: tx = ty = 2 cosh(acosh(3/2)) = 3.
            None => Length::new(2.0 * 1.5f64.acosh()).map_err(map_err)?,
        };
        let seed = torus_from_lengths(TorusBoundary::Cusp, alpha, branch).map_err(map_err)?;
        Ok((seed, None))
    } else {
        let lb = Length::new(c.boundary_length.expect("clap boundary group")).map_err(map_err)?;
        let alpha = match c.alpha_length {
            Some(l) => Length::new(l).map_err(map_err)?,
            None => return Err("--alpha-length is required with --boundary-length".to_string()),
        };
        let seed =
            torus_from_lengths(TorusBoundary::Geodesic(lb), alpha, branch).map_err(map_err)?;
        Ok((seed, Some(lb)))
    }
}

fn cutoff_of(c: &TorusCommon) -> Cutoff {
    match (c.max_trace, c.max_denominator) {
        (Some(t), None) => Cutoff::MaxTrace(t),
        (None, Some(n)) => Cutoff::MaxDenominator(n),
        _ => unreachable!("clap enforces the cutoff group"),
    }
}

fn emit_partial_sum(sum: &PartialSum, format: Format) {
    match format {
        Format::Json => println!("{}", to_string_g17(sum)),
        Format::Csv => {
            println!("cutoff,value,term_count,last_term");
            let cutoff = match sum.cutoff {
                Cutoff::MaxTrace(t) => format!("max_trace={}", fmt_f64(t)),
                Cutoff::MaxDenominator(n) => format!("max_denominator={n}"),
            };
            println!(
                "{},{},{},{}",
                cutoff,
                fmt_f64(sum.value),
                sum.term_count,
                fmt_f64(sum.last_term)
            );
        }
        Format::Human => {
            println!(
                "partial sum = {} over {} slopes (last term {})",
                fmt_f64(sum.value),
                sum.term_count,
                fmt_f64(sum.last_term)
            );
        }
    }
}

fn cmd_torus(args: &TorusArgs, format: Format) -> Result<i32, String> {
    let common = match &args.action {
        TorusAction::Enum(c) | TorusAction::SumEta(c) | TorusAction::Mcshane(c) => c,
    };
    let (seed, boundary) = build_seed(common)?;
    let cutoff = cutoff_of(common);
    match &args.action {
        TorusAction::Enum(_) => {
            let records = enumerate_slopes(&seed, cutoff).map_err(|e| e.to_string())?;
            let x = boundary.map(|lb| (-lb.get() / 2.0).exp());
            match format {
                Format::Json => {
                    for r in &records {
                        println!("{}", to_string_g17(&r.to_line(x.map(|x| eta_term(x, r)))));
                    }
                }
                Format::Csv => {
                    println!("p,q,trace,length{}", if x.is_some() { ",eta" } else { "" });
                    for r in &records {
                        let base = format!(
                            "{},{},{},{}",
                            r.slope.p,
                            r.slope.q,
                            fmt_f64(r.trace),
                            fmt_f64(r.length.get())
                        );
                        match x {
                            Some(x) => println!("{base},{}", fmt_f64(eta_term(x, r))),
                            None => println!("{base}"),
                        }
                    }
                }
                Format::Human => {
                    for r in &records {
                        println!(
                            "slope {}/{}: trace {} length {}",
                            r.slope.p,
                            r.slope.q,
                            fmt_f64(r.trace),
                            fmt_f64(r.length.get())
                        );
                    }
                }
            }
            Ok(0)
        }
        TorusAction::SumEta(_) => {
            let lb = boundary.ok_or_else(|| {
                "sum-eta needs a geodesic boundary (--boundary-length); the eta summand \
                 degenerates at a cusp"
                    .to_string()
            })?;
            let sum = eta_partial_sum(&seed, lb, cutoff).map_err(|e| e.to_string())?;
            emit_partial_sum(&sum, format);
            Ok(0)
        }
        TorusAction::Mcshane(_) => {
            let sum = mcshane_partial_sum(&seed, cutoff).map_err(|e| e.to_string())?;
            emit_partial_sum(&sum, format);
            Ok(0)
        }
    }
}

#[derive(Serialize)]
struct CountReport {
    genus: u32,
    length: f64,
    bound: f64,
    floor: f64,
    budget: f64,
}

fn cmd_count(args: &CountArgs, format: Format) -> Result<i32, String> {
    let l = Length::new(args.length).map_err(|e| e.to_string())?;
    let bound = counting::np_upper_bound(args.genus, l).map_err(|e| e.to_string())?;
    let report = CountReport {
        genus: args.genus,
        length: args.length,
        bound: bound.bound,
        floor: counting::min_measure_floor(l),
        budget: counting::budget(args.genus).map_err(|e| e.to_string())?,
    };
    match format {
        Format::Json => println!("{}", to_string_g17(&report)),
        Format::Csv => {
            println!("genus,length,bound,floor,budget");
            println!(
                "{},{},{},{},{}",
                report.genus,
                fmt_f64(report.length),
                fmt_f64(report.bound),
                fmt_f64(report.floor),
                fmt_f64(report.budget)
            );
        }
        Format::Human => {
            println!(
                "genus {} length {}: at most {} pants; measure floor {}, budget {}",
                report.genus,
                report.length,
                fmt_f64(report.bound),
                fmt_f64(report.floor),
                fmt_f64(report.budget)
            );
        }
    }
    Ok(0)
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval(args) => cmd_eval(args, cli.format),
        Command::Verify(args) => cmd_verify(args, cli.format),
        Command::Torus(args) => cmd_torus(args, cli.format),
        Command::Count(args) => cmd_count(args, cli.format),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
    }
}
