use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use bbqp::constructions::{
    alternating_trap, bqp_threshold, bqp_to_bbqp, local_search_trap, pad_instance,
    partition_median_instance, tight_instance,
};
use bbqp::experiment::{read_manifest, run_experiment, write_csv, ExperimentConfig, StartKind};
use bbqp::generators::{generate, Family, GeneratorConfig};
use bbqp::heuristics::{
    alternating, default_alternating_iters, guaranteed_alternating, half_start, local_search_with,
    round_x_optimize_y, round_y_optimize_x, type1_start, type2_start, FirstSide, NeighborhoodSpec,
    DEFAULT_LOCAL_SEARCH_ITERS,
};
use bbqp::ilp::{model_text, read_fractional_file, Formulation};
use bbqp::oracle::{Enumerator, DEFAULT_ENUMERATION_CAP};
use bbqp::{
    average_nontrivial, average_upper_bound, average_value, best_corner_solution,
    best_trivial_solution, Exec, FractionalPoint, Instance, Solution,
};

#[derive(Parser)]
#[command(name = "bbqp", version, about = "Bipartite boolean quadratic programming toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file
    Gen(GenArgs),
    /// Run a heuristic on an instance
    Solve(SolveArgs),
    /// Average values and trivial bounds
    Avg { file: PathBuf },
    /// Exhaustive oracle report
    Verify(VerifyArgs),
    /// Write an ILP model in LP format
    Emit {
        formulation: FormulationArg,
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run the rounding algorithms over a manifest of instances
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulationArg {
    Ilp1,
    Ilp2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Random,
    Biclique,
    Maxcut,
    InducedSubgraph,
    Factorization,
    Tight,
    AlternatingTrap,
    LocalSearchTrap,
    Partition,
    Bqp,
    Pad,
}

#[derive(Args)]
struct GenArgs {
    kind: Kind,
    #[arg(short, long)]
    output: PathBuf,
    #[arg(short, default_value_t = 4)]
    m: usize,
    #[arg(short, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Value range as `lo..hi` (inclusive); family default if omitted
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    range: Option<(i64, i64)>,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long)]
    penalty: Option<i64>,
    /// `M` for the alternating trap and the BQP reduction
    #[arg(long = "big-m")]
    big_m: Option<i64>,
    /// Comma-separated positive integers for the partition instance
    #[arg(long, value_delimiter = ',')]
    items: Vec<u64>,
    #[arg(long, default_value_t = 1000)]
    scale: u64,
    /// Input file: a BQP (`n`, `n` rows, `c'`) or an instance to pad
    #[arg(long)]
    from: Option<PathBuf>,
    #[arg(short = 'a', default_value_t = 2)]
    pad_a: usize,
    #[arg(short = 'b', default_value_t = 1)]
    pad_b: usize,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once("..").ok_or("expected lo..hi")?;
    let lo = lo.parse().map_err(|_| format!("bad bound {lo:?}"))?;
    let hi = hi.parse().map_err(|_| format!("bad bound {hi:?}"))?;
    Ok((lo, hi))
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Rxoy,
    Ryox,
    AltX,
    AltY,
    GuaranteedAlt,
    Local,
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    algo: Algo,
    /// Fractional start for rounding: half, type1, type2 or a file path
    #[arg(long, default_value = "half")]
    start: String,
    /// Binary start `x:<bits> y:<bits>` for alternating and local search
    /// (default: best corner solution)
    #[arg(long)]
    solution: Option<String>,
    #[arg(long, num_args = 2, value_names = ["H", "K"])]
    hk: Option<Vec<usize>>,
    #[arg(long, conflicts_with = "hk")]
    alpha: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    max_iters: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    /// Count solutions dominated by `x:<bits> y:<bits>`
    #[arg(long)]
    dominance: Option<String>,
    /// Check local optimality of `x:<bits> y:<bits>`
    #[arg(long)]
    local_opt: Option<String>,
    #[arg(long, num_args = 2, value_names = ["H", "K"])]
    hk: Option<Vec<usize>>,
    #[arg(long, conflicts_with = "hk")]
    alpha: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
    /// Also print the report as CSV
    #[arg(long)]
    csv: bool,
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    manifest: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long, default_value = "half", value_parser = parse_start)]
    start: StartKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = bbqp::experiment::DEFAULT_ENUM_CAP)]
    enum_cap: usize,
    /// Leave timing columns empty
    #[arg(long)]
    no_timings: bool,
    #[arg(long)]
    sequential: bool,
}

fn parse_start(s: &str) -> Result<StartKind, String> {
    s.parse().map_err(|e: bbqp::Error| e.to_string())
}

fn exec_for(sequential: bool) -> Exec {
    if sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn neighborhood(hk: &Option<Vec<usize>>, alpha: Option<usize>) -> Option<NeighborhoodSpec> {
    match (hk, alpha) {
        (Some(v), _) => Some(NeighborhoodSpec::HK { h: v[0], k: v[1] }),
        (None, Some(a)) => Some(NeighborhoodSpec::Alpha(a)),
        (None, None) => None,
    }
}

fn read_instance(path: &Path) -> Result<Instance> {
    Instance::read_file(path).with_context(|| format!("reading {}", path.display()))
}

fn write_instance(path: &Path, inst: &Instance, header: &[String]) -> Result<()> {
    fs::write(path, inst.to_text(header)).with_context(|| format!("writing {}", path.display()))
}

/// `n`, then `n` rows of `Q'`, then `c'`.
fn read_bqp(path: &Path) -> Result<(Vec<Vec<i64>>, Vec<i64>)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let nums: Vec<i64> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
        .map(|t| t.parse::<i64>().with_context(|| format!("bad integer {t:?}")))
        .collect::<Result<_>>()?;
    let Some((&n, rest)) = nums.split_first() else {
        bail!("empty BQP file");
    };
    let n = usize::try_from(n).context("negative dimension")?;
    if rest.len() != n * n + n {
        bail!("expected {} numbers after n = {n}, found {}", n * n + n, rest.len());
    }
    let rows = rest[..n * n].chunks(n).map(<[i64]>::to_vec).collect();
    Ok((rows, rest[n * n..].to_vec()))
}

fn gen(args: GenArgs) -> Result<()> {
    let mut header = Vec::new();
    let family = match args.kind {
        Kind::Random => Some(Family::Random),
        Kind::Biclique => Some(Family::Biclique),
        Kind::Maxcut => Some(Family::MaxCut),
        Kind::InducedSubgraph => Some(Family::InducedSubgraph),
        Kind::Factorization => Some(Family::Factorization),
        _ => None,
    };
    let inst = if let Some(family) = family {
        let mut cfg = GeneratorConfig::new(family, args.m, args.n, args.seed);
        if let Some(r) = args.range {
            cfg.value_range = r;
        }
        cfg.density = args.density;
        cfg.penalty = args.penalty;
        header.push(cfg.describe());
        generate(&cfg)?
    } else {
        match args.kind {
            Kind::Tight => {
                header.push(format!("tight m={} n={}", args.m, args.n));
                tight_instance(args.m, args.n)?
            }
            Kind::AlternatingTrap => {
                let big_m = args.big_m.unwrap_or(10);
                let (inst, start) = alternating_trap(args.n, big_m)?;
                header.push(format!("alternating-trap n={} M={big_m}", args.n));
                header.push(format!("start {start}"));
                inst
            }
            Kind::LocalSearchTrap => {
                let (inst, start, alpha) = local_search_trap(args.n)?;
                header.push(format!("local-search-trap n={} alpha={alpha}", args.n));
                header.push(format!("start {start}"));
                inst
            }
            Kind::Partition => {
                let items: Vec<String> = args.items.iter().map(u64::to_string).collect();
                header.push(format!("partition items={} scale={}", items.join(","), args.scale));
                partition_median_instance(&args.items, args.scale)?
            }
            Kind::Bqp => {
                let path = args.from.as_deref().context("bqp needs --from <file>")?;
                let (qp, cp) = read_bqp(path)?;
                let big_m = match args.big_m {
                    Some(v) => v,
                    None => i64::try_from(bqp_threshold(&qp, &cp)).context("threshold overflow")?,
                };
                header.push(format!("bqp from={} M={big_m} (objective doubled)", path.display()));
                bqp_to_bbqp(&qp, &cp, big_m)?
            }
            Kind::Pad => {
                let path = args.from.as_deref().context("pad needs --from <file>")?;
                let p = pad_instance(&read_instance(path)?, args.pad_a, args.pad_b)?;
                header.push(format!(
                    "pad from={} a={} b={} original={}x{}",
                    path.display(),
                    p.a,
                    p.b,
                    p.original_m,
                    p.original_n
                ));
                p.inner
            }
            _ => unreachable!("families handled above"),
        }
    };
    write_instance(&args.output, &inst, &header)?;
    println!("wrote {} ({} x {})", args.output.display(), inst.m(), inst.n());
    Ok(())
}

fn fractional_start(inst: &Instance, start: &str, seed: u64) -> Result<FractionalPoint> {
    Ok(match start {
        "half" => half_start(inst.m(), inst.n()),
        "type1" => type1_start(inst, seed),
        "type2" => type2_start(inst, seed),
        path => read_fractional_file(inst, path).with_context(|| format!("reading {path}"))?,
    })
}

fn solve(args: SolveArgs) -> Result<()> {
    let inst = read_instance(&args.file)?;
    let binary_start = || -> Result<Solution> {
        match &args.solution {
            Some(text) => Ok(Solution::parse(&inst, text)?),
            None => Ok(best_corner_solution(&inst)),
        }
    };
    let mut out = io::stdout().lock();
    match args.algo {
        Algo::Rxoy | Algo::Ryox => {
            let p = fractional_start(&inst, &args.start, args.seed)?;
            let s = match args.algo {
                Algo::Rxoy => round_x_optimize_y(&inst, &p)?,
                _ => round_y_optimize_x(&inst, &p)?,
            };
            writeln!(out, "{s}")?;
        }
        Algo::AltX | Algo::AltY => {
            let first = match args.algo {
                Algo::AltX => FirstSide::X,
                _ => FirstSide::Y,
            };
            let iters = args.max_iters.unwrap_or_else(|| default_alternating_iters(&inst));
            let r = alternating(&inst, &binary_start()?, first, iters)?;
            writeln!(out, "{}", r.solution)?;
            writeln!(out, "iterations:{} converged:{}", r.iterations, r.converged)?;
        }
        Algo::GuaranteedAlt => writeln!(out, "{}", guaranteed_alternating(&inst))?,
        Algo::Local => {
            let spec = neighborhood(&args.hk, args.alpha).unwrap_or(NeighborhoodSpec::HK { h: 1, k: 1 });
            let iters = args.max_iters.unwrap_or(DEFAULT_LOCAL_SEARCH_ITERS);
            let r = local_search_with(&inst, &binary_start()?, spec, iters, Exec::default())?;
            writeln!(out, "{}", r.solution)?;
            writeln!(out, "iterations:{} converged:{}", r.iterations, r.converged)?;
        }
    }
    Ok(())
}

fn avg(file: &Path) -> Result<()> {
    let inst = read_instance(file)?;
    let a = average_value(&inst);
    let abar = average_nontrivial(&inst);
    let mut out = io::stdout().lock();
    writeln!(out, "average: {a} ({})", a.to_decimal_string(6))?;
    writeln!(out, "average_nontrivial: {abar} ({})", abar.to_decimal_string(6))?;
    writeln!(out, "avg_plus: {}", average_upper_bound(&inst))?;
    writeln!(out, "best_corner: {}", best_corner_solution(&inst))?;
    writeln!(out, "best_trivial: {}", best_trivial_solution(&inst))?;
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<()> {
    let inst = read_instance(&args.file)?;
    let e = Enumerator::new(args.cap, exec_for(args.sequential));
    let r = e.stats(&inst)?;
    let mut out = io::stdout().lock();
    let mut fields = vec![
        ("optimum", r.optimum.to_string()),
        ("minimum", r.minimum.to_string()),
        ("mean", r.mean.to_string()),
        ("nontrivial_mean", r.nontrivial_mean.to_string()),
        ("theta1", r.theta1.to_string()),
        ("theta2", r.theta2.to_string()),
        ("count_at_most_average", r.count_at_most_average.to_string()),
        ("total_solutions", r.total_solutions.to_string()),
    ];
    if let Some(text) = &args.dominance {
        let s = Solution::parse(&inst, text)?;
        fields.push(("dominance", e.count_at_most(&inst, s.value)?.to_string()));
    }
    if let Some(text) = &args.local_opt {
        let s = Solution::parse(&inst, text)?;
        let spec = neighborhood(&args.hk, args.alpha).context("--local-opt needs --alpha or --hk")?;
        fields.push(("local_optimum", e.is_local_optimum(&inst, &s, spec)?.to_string()));
    }
    for (k, v) in &fields {
        writeln!(out, "{k}: {v}")?;
    }
    if args.csv {
        let keys: Vec<&str> = fields.iter().map(|f| f.0).collect();
        let values: Vec<&str> = fields.iter().map(|f| f.1.as_str()).collect();
        writeln!(out, "{}", keys.join(","))?;
        writeln!(out, "{}", values.join(","))?;
    }
    Ok(())
}

fn emit(formulation: FormulationArg, file: &Path, output: &Path) -> Result<()> {
    let inst = read_instance(file)?;
    let f = match formulation {
        FormulationArg::Ilp1 => Formulation::Ilp1,
        FormulationArg::Ilp2 => Formulation::Ilp2,
    };
    let (text, stats) = model_text(&inst, f);
    fs::write(output, text).with_context(|| format!("writing {}", output.display()))?;
    println!(
        "{}: variables {} constraints {} binaries {}",
        f.name(),
        stats.variable_count,
        stats.constraint_count,
        stats.binary_count
    );
    Ok(())
}

fn experiment(args: ExperimentArgs) -> Result<ExitCode> {
    let entries = read_manifest(&args.manifest)
        .with_context(|| format!("reading {}", args.manifest.display()))?;
    let cfg = ExperimentConfig {
        start: args.start,
        seed: args.seed,
        enum_cap: args.enum_cap,
        exec: exec_for(args.sequential),
    };
    let rows = run_experiment(&entries, &cfg);
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf, !args.no_timings)?;
    fs::write(&args.output, buf).with_context(|| format!("writing {}", args.output.display()))?;
    let mut failed = false;
    for row in &rows {
        if let Err(e) = &row.outcome {
            eprintln!("{}: {e}", row.instance);
            failed = true;
        }
    }
    Ok(if failed { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Gen(args) => gen(args)?,
        Command::Solve(args) => solve(args)?,
        Command::Avg { file } => avg(&file)?,
        Command::Verify(args) => verify(args)?,
        Command::Emit {
            formulation,
            file,
            output,
        } => emit(formulation, &file, &output)?,
        Command::Experiment(args) => return experiment(args),
    }
    Ok(ExitCode::SUCCESS)
}
