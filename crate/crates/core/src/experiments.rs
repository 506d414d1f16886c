//! Worked-example recipes and a config-driven experiment suite.
//!
//! Each recipe builds a family of walks, computes exact quantities, and
//! compares them with the closed-form growth rates or estimates of the
//! example. Outputs are deterministic: rows come back in grid order and all
//! floats are printed with 17 significant digits.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cost::{
    degree_frontier, heisenberg_cost_estimate, heisenberg_split_cost_estimate, phi_example_estimate, CostTable,
    DegreeFrontier,
};
use crate::error::{Error, Result};
use crate::euclid::{diameter_formula, expand, sandwich_constant};
use crate::geometry::{doubling_constant, moderate_growth_check, reverse_doubling_check, volume_profile};
use crate::group::{GroupSpec, WalkSpec};
use crate::io::{fmt_f64, to_json_string, write_rows};
use crate::measure::LongJumpMeasure;
use crate::mixing::{default_horizon, evolve, l2_sandwich_report, mixing_time_abelian, EnvelopeFit};
use crate::numeric::least_squares;
use crate::spectral::{beta_min_floor, spectrum, spectrum_abelian};

/// The worked examples with a recipe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Example {
    /// `Z/t^5` with `S = (1, t^4)`.
    Intro,
    /// `Z/N`, `N = t(t^2+1)(t^2+2)`, `s = (t^2+1)(t^2+2)`, which divides `N`.
    QuinticDivisor,
    /// Same `N`, `s = t^2(t^2+2)`: two division steps.
    QuinticTwoStep,
    /// Same `N`, `s = (t^2+1)^2`: three division steps.
    QuinticThreeStep,
    /// `H3(Z/N)` with the standard triple.
    HeisenbergStandard,
    /// `H3(Z/t^2)` with `S = (s1, s1^t, s2, s3)`.
    HeisenbergSplit,
    /// `Z/t^2` with `S = (1, t)` and `alpha = (1, 2)`.
    PhiCycle,
}

impl Example {
    pub const ALL: [Example; 7] = [
        Example::Intro,
        Example::QuinticDivisor,
        Example::QuinticTwoStep,
        Example::QuinticThreeStep,
        Example::HeisenbergStandard,
        Example::HeisenbergSplit,
        Example::PhiCycle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Example::Intro => "intro-1.2",
            Example::QuinticDivisor => "cyclic-5.1",
            Example::QuinticTwoStep => "cyclic-5.2",
            Example::QuinticThreeStep => "cyclic-5.3",
            Example::HeisenbergStandard => "heis-5.4",
            Example::HeisenbergSplit => "heis-5.5",
            Example::PhiCycle => "phi-6",
        }
    }

    pub fn is_cyclic_family(self) -> bool {
        matches!(self, Example::Intro | Example::QuinticDivisor | Example::QuinticTwoStep | Example::QuinticThreeStep)
    }
}

impl fmt::Display for Example {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Example {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Example::ALL
            .into_iter()
            .find(|e| e.name() == s.trim())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown example {s:?}")))
    }
}

/// `(N, s)` of a cyclic family at parameter `t`.
pub fn cyclic_instance(example: Example, t: u64) -> Result<(u64, u64)> {
    let (a, b) = (t * t + 1, t * t + 2);
    match example {
        Example::Intro => Ok((t.pow(5), t.pow(4))),
        Example::QuinticDivisor => Ok((t * a * b, a * b)),
        Example::QuinticTwoStep => Ok((t * a * b, t * t * b)),
        Example::QuinticThreeStep => Ok((t * a * b, a * a)),
        _ => Err(Error::InvalidParameter(format!("{example} is not a cyclic family"))),
    }
}

/// Terms `(u, v)` of the growth rate `min_j max(u_j alpha, v_j)` of a cyclic family.
pub fn exponent_terms(example: Example) -> Result<&'static [(f64, f64)]> {
    const TWO: [(f64, f64); 2] = [(1.0, 0.0), (0.8, 0.2)];
    const THREE: [(f64, f64); 3] = [(1.0, 0.0), (0.8, 0.2), (0.6, 0.4)];
    const FOUR: [(f64, f64); 4] = [(1.0, 0.0), (0.8, 0.2), (0.6, 0.4), (0.4, 0.6)];
    match example {
        Example::Intro | Example::QuinticDivisor => Ok(&TWO),
        Example::QuinticTwoStep => Ok(&THREE),
        Example::QuinticThreeStep => Ok(&FOUR),
        _ => Err(Error::InvalidParameter(format!("{example} is not a cyclic family"))),
    }
}

/// Predicted exponent `e` in `D ≍ N^e` for `alpha = (alpha, 1)`.
pub fn expected_exponent(example: Example, alpha: f64) -> Result<f64> {
    Ok(exponent_terms(example)?.iter().map(|&(u, v)| (u * alpha).max(v)).fold(f64::INFINITY, f64::min))
}

/// Parameters swept by the cyclic recipes.
pub const CYCLIC_T_RANGE: std::ops::RangeInclusive<u64> = 3..=8;

/// One representative `alpha` inside each regime of the family's growth table.
pub fn regime_alphas(example: Example) -> Result<&'static [f64]> {
    match example {
        Example::Intro | Example::QuinticDivisor => Ok(&[0.1, 0.22, 1.0]),
        Example::QuinticTwoStep => Ok(&[0.1, 0.22, 0.4, 0.6, 1.2]),
        Example::QuinticThreeStep => Ok(&[0.1, 0.22, 0.4, 0.6, 0.8, 1.2, 1.8]),
        _ => Err(Error::InvalidParameter(format!("{example} is not a cyclic family"))),
    }
}

/// Least-squares slope of `ln D` against `ln N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub alpha: f64,
    pub fitted_exponent: f64,
    pub expected_exponent: f64,
    /// `fitted_exponent - expected_exponent`.
    pub residual: f64,
}

pub fn fit_exponent(alpha: f64, expected: f64, points: &[(u64, f64)]) -> Result<ExponentFit> {
    if points.len() < 4 {
        return Err(Error::DegenerateFit(points.len()));
    }
    let x: Vec<f64> = points.iter().map(|p| (p.0 as f64).ln()).collect();
    let y: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let (slope, _) = least_squares(&x, &y);
    Ok(ExponentFit { alpha, fitted_exponent: slope, expected_exponent: expected, residual: slope - expected })
}

/// Exact quantities for one member of a cyclic family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyclicRow {
    pub t: u64,
    pub n: u64,
    pub s: u64,
    pub alpha: f64,
    pub diameter: f64,
    /// The Euclidean formula value `M` and its minimizing index.
    pub formula: f64,
    pub formula_index: i64,
    /// Whether `2^{-5(alpha + 1)} M <= D <= M`.
    pub sandwich_holds: bool,
    pub gap: f64,
    pub t_mix: u64,
}

impl CyclicRow {
    fn fields(&self) -> Vec<String> {
        vec![
            self.t.to_string(),
            self.n.to_string(),
            self.s.to_string(),
            fmt_f64(self.alpha),
            fmt_f64(self.diameter),
            fmt_f64(self.formula),
            self.formula_index.to_string(),
            self.sandwich_holds.to_string(),
            fmt_f64(self.gap),
            self.t_mix.to_string(),
        ]
    }
}

const CYCLIC_HEADER: [&str; 10] =
    ["t", "N", "s", "alpha", "diameter", "formula", "formula_index", "sandwich_holds", "gap", "t_mix"];

/// Degree frontier of `Z/N` with `S = (1, s)`, ready to evaluate at any `alpha`.
pub fn cyclic_frontier(n: u64, s: u64) -> Result<DegreeFrontier> {
    let group = GroupSpec::cyclic(n)?;
    let gens = vec![group.element(&[1])?, group.element(&[s as i64])?];
    degree_frontier(&WalkSpec::new(group, gens, vec![1.0, 1.0])?)
}

/// Rows for one family member at every `alpha` in `alphas`, with `alpha = (alpha, 1)`.
pub fn cyclic_rows(example: Example, t: u64, alphas: &[f64]) -> Result<Vec<CyclicRow>> {
    let (n, s) = cyclic_instance(example, t)?;
    let frontier = cyclic_frontier(n, s)?;
    let expansion = expand(n, s)?;
    alphas
        .iter()
        .map(|&alpha| {
            let table = frontier.evaluate(&[alpha, 1.0])?;
            let diameter = table.diameter();
            let (formula, formula_index) = diameter_formula(&expansion, (alpha, 1.0))?;
            let measure = LongJumpMeasure::new(table.walk())?;
            let gap = spectrum_abelian(&measure)?.gap;
            let t_mix = mixing_time_abelian(&measure, u64::MAX / 4)?;
            Ok(CyclicRow {
                t,
                n,
                s,
                alpha,
                diameter,
                formula,
                formula_index,
                sandwich_holds: sandwich_constant((alpha, 1.0)) * formula <= diameter && diameter <= formula,
                gap,
                t_mix,
            })
        })
        .collect()
}

/// Observed `cost / estimate` over the nonidentity elements of one walk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioBand {
    pub label: String,
    pub min_ratio: f64,
    pub max_ratio: f64,
}

impl RatioBand {
    /// Smallest `c` with every ratio in `[1/c, c]`.
    pub fn width(&self) -> f64 {
        self.max_ratio.max(1.0 / self.min_ratio)
    }

    fn fields(&self) -> Vec<String> {
        vec![self.label.clone(), fmt_f64(self.min_ratio), fmt_f64(self.max_ratio), fmt_f64(self.width())]
    }
}

pub fn ratio_band(label: String, table: &CostTable, estimate: impl Fn(usize) -> Result<f64>) -> Result<RatioBand> {
    let mut min_ratio = f64::INFINITY;
    let mut max_ratio = 0.0f64;
    for (i, &c) in table.costs().iter().enumerate().skip(1) {
        let ratio = c / estimate(i)?;
        min_ratio = min_ratio.min(ratio);
        max_ratio = max_ratio.max(ratio);
    }
    Ok(RatioBand { label, min_ratio, max_ratio })
}

pub const HEISENBERG_MODULI: [u64; 5] = [3, 5, 7, 9, 11];
pub const HEISENBERG_ALPHAS: [[f64; 3]; 4] = [[1.0, 1.0, 1.0], [0.5, 0.5, 1.5], [1.5, 1.0, 0.5], [0.4, 1.2, 0.8]];

/// Ratio band of exact cost to the standard-triple estimate on `H3(Z/n)`.
pub fn heisenberg_band(n: u64, alpha: [f64; 3]) -> Result<RatioBand> {
    let walk = WalkSpec::parse(&format!("H3/{n}"), "(1,0,0);(0,1,0);(0,0,1)", &join(&alpha))?;
    let table = degree_frontier(&walk)?.table();
    let group = walk.group();
    ratio_band(format!("N={n} alpha={}", join(&alpha)), &table, |i| {
        heisenberg_cost_estimate(&walk, &group.element_at(i))
    })
}

pub const SPLIT_T_RANGE: [u64; 2] = [2, 3];
pub const SPLIT_ALPHAS: [[f64; 3]; 3] = [[1.0, 1.0, 1.0], [1.5, 0.5, 1.0], [0.6, 1.2, 1.6]];

/// Ratio band on `H3(Z/t^2)` with `S = (s1, s1^t, s2, s3)` and
/// `alpha = (a1, a1, a2, a3)`.
pub fn heisenberg_split_band(t: u64, alpha: [f64; 3]) -> Result<RatioBand> {
    let gens = format!("(1,0,0);({t},0,0);(0,1,0);(0,0,1)");
    let full = [alpha[0], alpha[0], alpha[1], alpha[2]];
    let walk = WalkSpec::parse(&format!("H3/{}", t * t), &gens, &join(&full))?;
    let table = degree_frontier(&walk)?.table();
    let group = walk.group();
    ratio_band(format!("t={t} alpha={}", join(&alpha)), &table, |i| {
        heisenberg_split_cost_estimate(&walk, &group.element_at(i))
    })
}

pub const PHI_T_RANGE: std::ops::RangeInclusive<u64> = 4..=12;

/// Ratio band on `Z/t^2` with `S = (1, t)` and `alpha = (1, 2)`.
pub fn phi_band(t: u64) -> Result<RatioBand> {
    let walk = WalkSpec::parse(&format!("Z/{}", t * t), &format!("1,{t}"), "1,2")?;
    let table = degree_frontier(&walk)?.table();
    ratio_band(format!("t={t}"), &table, |i| Ok(phi_example_estimate(t, i as u64)))
}

fn join(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// Everything a recipe produces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub fits: Vec<ExponentFit>,
    pub bands: Vec<RatioBand>,
}

impl ExampleReport {
    /// Writes `<name>.csv` and `<name>.json` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let csv_path = dir.join(format!("{}.csv", self.name));
        let header: Vec<&str> = self.header.iter().map(String::as_str).collect();
        write_rows(fs::File::create(&csv_path)?, &header, &self.rows)?;
        let json_path = dir.join(format!("{}.json", self.name));
        fs::write(&json_path, to_json_string(&serde_json::json!({ "name": self.name, "fits": self.fits, "bands": self.bands }))?)?;
        Ok(vec![csv_path, json_path])
    }

    /// One line for the terminal.
    pub fn summary(&self) -> String {
        if !self.fits.is_empty() {
            let worst = self.fits.iter().map(|f| f.residual.abs()).fold(0.0, f64::max);
            format!("{}: {} exponent fits, max |fitted - expected| = {worst:.4}", self.name, self.fits.len())
        } else {
            let worst = self.bands.iter().map(RatioBand::width).fold(1.0, f64::max);
            format!("{}: {} ratio bands, widest [1/c, c] with c = {worst:.4}", self.name, self.bands.len())
        }
    }
}

/// Runs one recipe.
pub fn run_example(example: Example) -> Result<ExampleReport> {
    let name = example.name().to_string();
    if example.is_cyclic_family() {
        let alphas = regime_alphas(example)?;
        let ts: Vec<u64> = CYCLIC_T_RANGE.collect();
        let per_t = ts.par_iter().map(|&t| cyclic_rows(example, t, alphas)).collect::<Result<Vec<_>>>()?;
        let mut rows = Vec::new();
        let mut fits = Vec::new();
        for (j, &alpha) in alphas.iter().enumerate() {
            let points: Vec<(u64, f64)> = per_t.iter().map(|r| (r[j].n, r[j].diameter)).collect();
            fits.push(fit_exponent(alpha, expected_exponent(example, alpha)?, &points)?);
        }
        for r in per_t.iter().flatten() {
            rows.push(r.fields());
        }
        let header = CYCLIC_HEADER.iter().map(|s| s.to_string()).collect();
        return Ok(ExampleReport { name, header, rows, fits, bands: Vec::new() });
    }
    let bands: Vec<RatioBand> = match example {
        Example::HeisenbergStandard => HEISENBERG_ALPHAS
            .iter()
            .flat_map(|&a| HEISENBERG_MODULI.iter().map(move |&n| (n, a)))
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&(n, a)| heisenberg_band(n, a))
            .collect::<Result<_>>()?,
        Example::HeisenbergSplit => SPLIT_ALPHAS
            .iter()
            .flat_map(|&a| SPLIT_T_RANGE.iter().map(move |&t| (t, a)))
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&(t, a)| heisenberg_split_band(t, a))
            .collect::<Result<_>>()?,
        _ => PHI_T_RANGE.collect::<Vec<_>>().par_iter().map(|&t| phi_band(t)).collect::<Result<_>>()?,
    };
    let header = ["instance", "min_ratio", "max_ratio", "width"].iter().map(|s| s.to_string()).collect();
    let rows = bands.iter().map(RatioBand::fields).collect();
    Ok(ExampleReport { name, header, rows, fits: Vec::new(), bands })
}

/// A suite description read from a flat `key = value` file.
///
/// Recognized keys: `name`, `seed`, `out`, `horizon`, `golden`, and the
/// repeatable `instance = <group> <generators> <alpha>`. Blank lines and lines
/// starting with `#` are ignored. Relative paths resolve against the config
/// file's directory.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub name: String,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub horizon: Option<usize>,
    pub golden: Option<PathBuf>,
    pub instances: Vec<InstanceSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub group: String,
    pub gens: String,
    pub alpha: String,
}

impl ExperimentConfig {
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut config = ExperimentConfig { name: "suite".into(), ..Default::default() };
        for (line_no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", line_no + 1)))?;
            let bad = |what: &str| Error::Parse(format!("line {}: bad {what} {value:?}", line_no + 1));
            match key {
                "name" => config.name = value.to_string(),
                "seed" => config.seed = value.parse().map_err(|_| bad("seed"))?,
                "horizon" => config.horizon = Some(value.parse().map_err(|_| bad("horizon"))?),
                "out" => config.out = Some(base.join(value)),
                "golden" => config.golden = Some(base.join(value)),
                "instance" => {
                    let parts: Vec<&str> = value.split_whitespace().collect();
                    let [group, gens, alpha] = parts[..] else {
                        return Err(bad("instance"));
                    };
                    config.instances.push(InstanceSpec {
                        group: group.into(),
                        gens: gens.into(),
                        alpha: alpha.into(),
                    });
                }
                other => return Err(Error::Parse(format!("line {}: unknown key {other:?}", line_no + 1))),
            }
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }
}

/// Per-instance results of the full pipeline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub group: String,
    pub gens: String,
    pub alpha: String,
    pub order: usize,
    pub diameter: f64,
    pub argmax: String,
    pub gap: f64,
    pub beta_min: f64,
    pub beta_min_floor: f64,
    pub gap_times_diameter: f64,
    pub doubling: f64,
    pub moderate_growth_slack: f64,
    pub reverse_doubling_ratio: f64,
    pub reverse_doubling_power_constant: f64,
    pub horizon: usize,
    pub t_mix: Option<f64>,
    pub envelope: Option<EnvelopeFit>,
    pub seed: u64,
    /// Names of the invariants that failed; empty on success.
    pub failures: Vec<String>,
}

fn run_instance(spec: &InstanceSpec, seed: u64, horizon: Option<usize>) -> Result<InstanceReport> {
    let walk = WalkSpec::parse(&spec.group, &spec.gens, &spec.alpha)?;
    let measure = LongJumpMeasure::new(&walk)?;
    let table = degree_frontier(&walk)?.table();
    let spec_report = spectrum(&measure)?;
    let profile = volume_profile(&table);
    let doubling = doubling_constant(&profile);
    let slack = moderate_growth_check(&profile, doubling)?;
    let reverse = reverse_doubling_check(&profile);
    let diameter = table.diameter();
    let horizon = horizon.unwrap_or_else(|| default_horizon(diameter)).min(default_horizon(diameter));
    let curve = evolve(&measure, horizon)?;
    let envelope = l2_sandwich_report(&curve, &profile, diameter).ok();

    let mut failures = Vec::new();
    let floor = beta_min_floor(&walk);
    if spec_report.beta_min < floor - 1e-10 {
        failures.push("spectral floor".to_string());
    }
    if slack < 1.0 - 1e-9 {
        failures.push("moderate growth".to_string());
    }
    if !reverse.holds {
        failures.push("reverse doubling".to_string());
    }
    let group = walk.group();
    if (0..table.len()).any(|i| table.costs()[i] != table.costs()[group.inv_index(i)]) {
        failures.push("cost symmetry".to_string());
    }
    let beta_1 = spec_report.beta_1();
    for n in 0..curve.len() {
        let next_ok = n + 1 == curve.len() || (curve.tv[n + 1] <= curve.tv[n] + 1e-12 && curve.l2[n + 1] <= curve.l2[n] * (1.0 + 1e-9) + 1e-15);
        let lower = beta_1.abs().powi(n as i32);
        if !next_ok || 2.0 * curve.tv[n] > curve.l2[n] * (1.0 + 1e-9) + 1e-15 || curve.l2[n] < lower * (1.0 - 1e-9) - 1e-15 {
            failures.push(format!("mixing curve at n = {n}"));
            break;
        }
    }
    if let Some(fit) = &envelope {
        if fit.max_violation() > 1e-9 {
            failures.push("envelope".to_string());
        }
    }
    Ok(InstanceReport {
        group: spec.group.clone(),
        gens: spec.gens.clone(),
        alpha: spec.alpha.clone(),
        order: table.len(),
        diameter,
        argmax: table.argmax().to_string(),
        gap: spec_report.gap,
        beta_min: spec_report.beta_min,
        beta_min_floor: floor,
        gap_times_diameter: spec_report.gap * diameter,
        doubling,
        moderate_growth_slack: slack,
        reverse_doubling_ratio: reverse.min_ratio,
        reverse_doubling_power_constant: reverse.power_constant,
        horizon,
        t_mix: curve.t_mix,
        envelope,
        seed,
        failures,
    })
}

/// Outcome of a suite run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// One line per instance for the terminal.
    pub lines: Vec<String>,
    pub failed: usize,
    pub golden_mismatch: bool,
}

impl SuiteSummary {
    pub fn success(&self) -> bool {
        self.failed == 0 && !self.golden_mismatch
    }

    pub fn csv(&self) -> Result<Vec<u8>> {
        let header: Vec<&str> = self.header.iter().map(String::as_str).collect();
        let mut buf = Vec::new();
        write_rows(&mut buf, &header, &self.rows)?;
        Ok(buf)
    }
}

const SUITE_HEADER: [&str; 10] =
    ["index", "group", "gens", "alpha", "order", "diameter", "gap", "doubling", "t_mix", "status"];

/// Runs every instance through measure, cost, spectrum, geometry and mixing.
///
/// Instances run in parallel and are reported in config order. An instance
/// that hits a module error is recorded as failed and the suite continues.
/// With `out` set, writes `instance-<i>.json` per instance and `summary.csv`.
/// With `golden` set, the summary CSV must match that file byte for byte.
pub fn run_suite(config: &ExperimentConfig) -> Result<SuiteSummary> {
    let results: Vec<Result<InstanceReport>> =
        config.instances.par_iter().map(|spec| run_instance(spec, config.seed, config.horizon)).collect();
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut failed = 0;
    if let Some(dir) = &config.out {
        fs::create_dir_all(dir)?;
    }
    for (i, (spec, result)) in config.instances.iter().zip(&results).enumerate() {
        let label = format!("{} {} {}", spec.group, spec.gens, spec.alpha);
        let (row_tail, line) = match result {
            Ok(r) => {
                let status = if r.failures.is_empty() { "ok".to_string() } else { format!("FAILED: {}", r.failures.join("; ")) };
                if !r.failures.is_empty() {
                    failed += 1;
                }
                let t_mix = r.t_mix.map(|t| t.to_string()).unwrap_or_else(|| "none".into());
                let line = format!("[{i}] {label}: D = {}, gap = {:.6e}, t_mix = {t_mix}, {status}", r.diameter, r.gap);
                (
                    vec![r.order.to_string(), fmt_f64(r.diameter), fmt_f64(r.gap), fmt_f64(r.doubling), t_mix, status],
                    line,
                )
            }
            Err(e) => {
                failed += 1;
                let status = format!("ERROR: {e}");
                (vec![String::new(), String::new(), String::new(), String::new(), String::new(), status.clone()], format!("[{i}] {label}: {status}"))
            }
        };
        let mut row = vec![i.to_string(), spec.group.clone(), spec.gens.clone(), spec.alpha.clone()];
        row.extend(row_tail);
        rows.push(row);
        lines.push(line);
        if let (Some(dir), Ok(r)) = (&config.out, result) {
            fs::write(dir.join(format!("instance-{i}.json")), to_json_string(r)?)?;
        }
    }
    let mut summary = SuiteSummary {
        name: config.name.clone(),
        header: SUITE_HEADER.iter().map(|s| s.to_string()).collect(),
        rows,
        lines,
        failed,
        golden_mismatch: false,
    };
    let bytes = summary.csv()?;
    if let Some(dir) = &config.out {
        fs::write(dir.join("summary.csv"), &bytes)?;
    }
    if let Some(golden) = &config.golden {
        summary.golden_mismatch = fs::read(golden)? != bytes;
    }
    Ok(summary)
}
