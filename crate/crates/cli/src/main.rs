use std::fs::{self, File};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use longjump::cost::{cost_table, degree_frontier};
use longjump::euclid::{diameter_formula, expand, sandwich_constant};
use longjump::experiments::{cyclic_frontier, run_example, run_suite, Example, ExperimentConfig};
use longjump::geometry::{doubling_constant, reverse_doubling_check, volume_profile};
use longjump::group::{parse_alpha, DEFAULT_GROUP_CAP};
use longjump::io::{cost_report, to_json_string, write_cost_csv, write_mixing_csv, write_rows, write_volume_csv, fmt_f64};
use longjump::measure::LongJumpMeasure;
use longjump::mixing::{default_horizon, evolve_dense_with_cap, evolve_abelian, l2_sandwich_report, mixing_time, monte_carlo_walk};
use longjump::spectral::{beta_min_floor, spectrum_abelian, spectrum_dense_with_cap};
use longjump::{GroupSpec, Result, WalkSpec};
use serde_json::json;

#[derive(Parser)]
#[command(name = "longjump", version, about = "Long-jump random walks on finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cost of every element, written to cost.csv and cost.json.
    Cost(WalkArgs),
    /// Diameter and a farthest element, written to diameter.json.
    Diameter(WalkArgs),
    /// Signed Euclidean expansion of N by s, written to euclid.json.
    Euclid(EuclidArgs),
    /// Kernel eigenvalues and gap, written to spectrum.json.
    Spectrum(WalkArgs),
    /// Volume growth, written to volume.csv and volume.json.
    Volume(WalkArgs),
    /// Distance to uniform over time, written to mixing.csv and mixing.json.
    Mixing(MixingArgs),
    /// Reproduces one worked example family.
    Example {
        name: Example,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Runs a suite config; exits nonzero if any check or golden comparison fails.
    Suite {
        config: PathBuf,
        /// Overrides the config's output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides the config's seed.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args)]
struct WalkArgs {
    /// `Z/N`, a product such as `Z/4xZ/6`, or `H3/N`.
    #[arg(long)]
    group: String,
    /// Generators, e.g. `1,3` for a cyclic group or `(1,0,0);(0,1,0)`.
    #[arg(long, visible_alias = "s")]
    gens: String,
    /// One exponent per generator, or a single value for all.
    #[arg(long, default_value = "1")]
    alpha: String,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Largest group order to enumerate.
    #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
    cap: u64,
}

#[derive(Args)]
struct EuclidArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    s: u64,
    /// Two exponents; adds the diameter formula and its lower constant.
    #[arg(long)]
    alpha: Option<String>,
    /// Checks the expansion invariants and, with `--alpha`, the sandwich against the exact diameter.
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct MixingArgs {
    #[command(flatten)]
    walk: WalkArgs,
    /// Number of steps; defaults to 20 times the diameter.
    #[arg(long)]
    horizon: Option<usize>,
    /// Monte Carlo walkers for a sampled comparison; 0 skips it.
    #[arg(long, default_value_t = 0)]
    walkers: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl WalkArgs {
    fn walk(&self) -> Result<WalkSpec> {
        let group: GroupSpec = self.group.parse()?;
        group.check_cap(self.cap)?;
        let gens = group.parse_generators(&self.gens)?;
        let mut alpha = parse_alpha(&self.alpha)?;
        if alpha.len() == 1 && gens.len() > 1 {
            alpha = vec![alpha[0]; gens.len()];
        }
        WalkSpec::with_cap(group, gens, alpha, self.cap)
    }

    fn label(&self) -> String {
        format!("{} S={} alpha={}", self.group, self.gens, self.alpha)
    }
}

fn output(dir: &Path, name: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    Ok(dir.join(name))
}

fn cost(args: &WalkArgs) -> Result<String> {
    let table = cost_table(&args.walk()?)?;
    write_cost_csv(File::create(output(&args.out, "cost.csv")?)?, &table)?;
    fs::write(output(&args.out, "cost.json")?, to_json_string(&cost_report(&table))?)?;
    Ok(format!("{}: {} elements, D = {}", args.label(), table.len(), table.diameter()))
}

fn diameter(args: &WalkArgs) -> Result<String> {
    let table = cost_table(&args.walk()?)?;
    let report = json!({ "group": table.group().to_string(), "diameter": table.diameter(), "argmax": table.argmax().to_string() });
    fs::write(output(&args.out, "diameter.json")?, to_json_string(&report)?)?;
    Ok(format!("{}: D = {} at {}", args.label(), table.diameter(), table.argmax()))
}

fn euclid(args: &EuclidArgs) -> Result<(String, bool)> {
    let e = expand(args.n, args.s)?;
    let mut report = serde_json::to_value(&e)?;
    let mut failures = if args.verify { e.violations() } else { Vec::new() };
    let mut line = format!("N={} s={}: K = {}, m = {:?}", args.n, args.s, e.k, &e.m[1..]);
    if let Some(alpha) = &args.alpha {
        let alpha = match parse_alpha(alpha)?[..] {
            [a] => (a, a),
            [a1, a2] => (a1, a2),
            _ => return Err(longjump::Error::InvalidParameter("--alpha takes one or two exponents".into())),
        };
        let (m, index) = diameter_formula(&e, alpha)?;
        let lower = sandwich_constant(alpha);
        report["formula"] = json!({ "value": m, "index": index, "lower_constant": lower });
        line.push_str(&format!(", M = {m}"));
        if args.verify {
            let d = cyclic_frontier(args.n, args.s)?.evaluate(&[alpha.0, alpha.1])?.diameter();
            report["diameter"] = json!(d);
            line.push_str(&format!(", D = {d}"));
            if !(lower * m <= d && d <= m) {
                failures.push(format!("D = {d} outside [{}, {m}]", lower * m));
            }
        }
    }
    if args.verify {
        report["violations"] = json!(failures);
        line.push_str(&if failures.is_empty() { ", verified".to_string() } else { format!(", FAILED: {}", failures.join("; ")) });
    }
    fs::write(output(&args.out, "euclid.json")?, to_json_string(&report)?)?;
    Ok((line, failures.is_empty()))
}

fn spectrum(args: &WalkArgs) -> Result<String> {
    let walk = args.walk()?;
    let measure = LongJumpMeasure::new(&walk)?;
    let report = if walk.group().is_abelian() {
        spectrum_abelian(&measure)?
    } else {
        spectrum_dense_with_cap(&measure, args.cap as usize)?
    };
    let floor = beta_min_floor(&walk);
    let mut value = serde_json::to_value(&report)?;
    value["beta_min_floor"] = json!(floor);
    fs::write(output(&args.out, "spectrum.json")?, to_json_string(&value)?)?;
    Ok(format!("{}: gap = {:.6e}, beta_min = {:.6} (floor {floor:.6})", args.label(), report.gap, report.beta_min))
}

fn volume(args: &WalkArgs) -> Result<String> {
    let table = cost_table(&args.walk()?)?;
    let profile = volume_profile(&table);
    let doubling = doubling_constant(&profile);
    let reverse = reverse_doubling_check(&profile);
    write_volume_csv(File::create(output(&args.out, "volume.csv")?)?, &profile)?;
    let report = json!({ "diameter": table.diameter(), "doubling": doubling, "reverse_doubling": reverse });
    fs::write(output(&args.out, "volume.json")?, to_json_string(&report)?)?;
    Ok(format!("{}: doubling constant {doubling}, reverse doubling min ratio {}", args.label(), reverse.min_ratio))
}

fn mixing(args: &MixingArgs) -> Result<String> {
    let walk = args.walk.walk()?;
    let measure = LongJumpMeasure::new(&walk)?;
    let table = degree_frontier(&walk)?.table();
    let horizon = args.horizon.unwrap_or_else(|| default_horizon(table.diameter()));
    let curve = if walk.group().is_abelian() {
        evolve_abelian(&measure, horizon)?
    } else {
        evolve_dense_with_cap(&measure, horizon, args.walk.cap as usize)?
    };
    let out = &args.walk.out;
    write_mixing_csv(File::create(output(out, "mixing.csv")?)?, &curve)?;
    let t_mix = mixing_time(&curve).ok();
    let fit = l2_sandwich_report(&curve, &volume_profile(&table), table.diameter()).ok();
    let report = json!({ "diameter": table.diameter(), "horizon": horizon, "t_mix": t_mix, "envelope": fit });
    fs::write(output(out, "mixing.json")?, to_json_string(&report)?)?;
    if args.walkers > 0 {
        let steps: Vec<usize> = (0..=horizon.min(curve.len() - 1)).collect();
        let mut rows = Vec::with_capacity(steps.len());
        for &n in &steps {
            let empirical = monte_carlo_walk(&measure, n, args.walkers, args.seed)?;
            let tv = 0.5 * empirical.iter().map(|p| (p - 1.0 / empirical.len() as f64).abs()).sum::<f64>();
            rows.push(vec![n.to_string(), fmt_f64(tv), fmt_f64(curve.tv[n])]);
        }
        write_rows(File::create(output(out, "monte_carlo.csv")?)?, &["n", "tv_sampled", "tv_exact"], &rows)?;
    }
    let t_mix = t_mix.map(|t| t.to_string()).unwrap_or_else(|| format!("not reached by {horizon}"));
    Ok(format!("{}: D = {}, t_mix = {t_mix}", args.walk.label(), table.diameter()))
}

fn run(cli: Cli) -> Result<bool> {
    let (line, ok) = match cli.command {
        Command::Cost(args) => (cost(&args)?, true),
        Command::Diameter(args) => (diameter(&args)?, true),
        Command::Euclid(args) => euclid(&args)?,
        Command::Spectrum(args) => (spectrum(&args)?, true),
        Command::Volume(args) => (volume(&args)?, true),
        Command::Mixing(args) => (mixing(&args)?, true),
        Command::Example { name, out } => {
            let report = run_example(name)?;
            report.write(&out)?;
            (report.summary(), true)
        }
        Command::Suite { config, out, seed } => {
            let mut config = ExperimentConfig::load(&config)?;
            if out.is_some() {
                config.out = out;
            }
            if let Some(seed) = seed {
                config.seed = seed;
            }
            let summary = run_suite(&config)?;
            for line in &summary.lines {
                println!("{line}");
            }
            let mut line = format!("{}: {} instances, {} failed", summary.name, summary.rows.len(), summary.failed);
            if summary.golden_mismatch {
                line.push_str(", summary differs from golden");
            }
            (line, summary.success())
        }
    };
    println!("{line}");
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
