//! Exact evolution of `K^n(e, .)`, its distances to uniform, and mixing times.
//!
//! Distances are measured as `||k_e^n - 1||_2` in `l^2(pi)`, where
//! `k_e^n = K^n(e, .) / pi`, and as total variation `||K^n(e, .) - pi||_TV`.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier;
use crate::geometry::VolumeProfile;
use crate::measure::LongJumpMeasure;
use crate::numeric::stable_sum;
use crate::spectral::{character_values, DEFAULT_DENSE_CAP};

/// Evolution stops once the `l^2` distance drops below this.
pub const L2_FLOOR: f64 = 1e-12;

/// Bound on the `l^1` mass dropped from the exponential series.
pub const SERIES_TOLERANCE: f64 = 1e-12;

const MAX_SERIES_TERMS: usize = 10_000_000;

/// Distances to uniform along a time grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixingCurve {
    pub times: Vec<f64>,
    pub l2: Vec<f64>,
    pub tv: Vec<f64>,
    /// First time with `tv <= 1/4`, if the grid reaches it.
    pub t_mix: Option<f64>,
    /// Set when some nonzero `beta^{2n}` underflowed to 0.
    pub underflow: bool,
}

impl MixingCurve {
    fn new(times: Vec<f64>, l2: Vec<f64>, tv: Vec<f64>, underflow: bool) -> Self {
        let t_mix = tv.iter().position(|&v| v <= 0.25).map(|i| times[i]);
        MixingCurve { times, l2, tv, t_mix, underflow }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Drops every point after the first with `l2 < floor`.
    pub fn truncate_below(&mut self, floor: f64) {
        if let Some(i) = self.l2.iter().position(|&v| v < floor) {
            self.times.truncate(i + 1);
            self.l2.truncate(i + 1);
            self.tv.truncate(i + 1);
        }
    }
}

fn tv_from_density(density: &[f64]) -> f64 {
    let u = 1.0 / density.len() as f64;
    0.5 * stable_sum(density.iter().map(|&p| (p - u).abs()))
}

fn l2_from_density(density: &[f64]) -> f64 {
    let order = density.len() as f64;
    (stable_sum(density.iter().map(|&p| (order * p - 1.0).powi(2))) / order).sqrt()
}

fn dims(measure: &LongJumpMeasure) -> Vec<usize> {
    measure.walk().group().moduli().iter().map(|&n| n as usize).collect()
}

/// `(l2, tv, underflow)` of the distribution with character values `coeffs`.
fn abelian_distances(coeffs: &[f64], dims: &[usize]) -> (f64, f64, bool) {
    let underflow = coeffs[1..].iter().any(|&c| c != 0.0 && c * c < f64::MIN_POSITIVE);
    let l2 = stable_sum(coeffs[1..].iter().map(|&c| c * c)).sqrt();
    let density = fourier::inverse_real(coeffs, dims);
    (l2, tv_from_density(&density), underflow)
}

/// Curve at `n = 0..=horizon` through the characters of an abelian group.
pub fn evolve_abelian(measure: &LongJumpMeasure, horizon: usize) -> Result<MixingCurve> {
    let beta = character_values(measure)?;
    let dims = dims(measure);
    let mut power = vec![1.0; beta.len()];
    let (mut times, mut l2, mut tv) = (Vec::new(), Vec::new(), Vec::new());
    let mut underflow = false;
    for n in 0..=horizon {
        if n > 0 {
            for (p, b) in power.iter_mut().zip(&beta) {
                *p *= b;
            }
        }
        let (d2, dtv, flag) = abelian_distances(&power, &dims);
        underflow |= flag;
        times.push(n as f64);
        l2.push(d2);
        tv.push(dtv);
    }
    Ok(MixingCurve::new(times, l2, tv, underflow))
}

/// `x -> x g` for every `g` in the support, laid out as `table[s * order + x]`.
fn support_table(measure: &LongJumpMeasure) -> (Vec<f64>, Vec<u32>) {
    let group = measure.walk().group();
    let order = measure.density().len();
    let support = measure.support();
    let mut table = Vec::with_capacity(support.len() * order);
    for &(g, _) in &support {
        table.extend((0..order).map(|x| group.mul_index(x, g) as u32));
    }
    (support.iter().map(|&(_, p)| p).collect(), table)
}

fn step_dense(v: &[f64], weights: &[f64], table: &[u32], out: &mut [f64]) {
    let order = v.len();
    out.fill(0.0);
    for (s, &p) in weights.iter().enumerate() {
        let row = &table[s * order..(s + 1) * order];
        for (x, &y) in row.iter().enumerate() {
            out[y as usize] += v[x] * p;
        }
    }
}

fn check_dense(measure: &LongJumpMeasure, cap: usize) -> Result<()> {
    let order = measure.density().len();
    if order > cap {
        return Err(Error::CapExceeded { order: order as u128, cap: cap as u64 });
    }
    Ok(())
}

/// Curve at `n = 0..=horizon` by iterating `v <- v K` from the point mass at `e`.
pub fn evolve_dense(measure: &LongJumpMeasure, horizon: usize) -> Result<MixingCurve> {
    evolve_dense_with_cap(measure, horizon, DEFAULT_DENSE_CAP)
}

pub fn evolve_dense_with_cap(measure: &LongJumpMeasure, horizon: usize, cap: usize) -> Result<MixingCurve> {
    check_dense(measure, cap)?;
    let order = measure.density().len();
    let (weights, table) = support_table(measure);
    let mut v = vec![0.0; order];
    v[0] = 1.0;
    let mut next = vec![0.0; order];
    let (mut times, mut l2, mut tv) = (Vec::new(), Vec::new(), Vec::new());
    for n in 0..=horizon {
        if n > 0 {
            step_dense(&v, &weights, &table, &mut next);
            std::mem::swap(&mut v, &mut next);
        }
        times.push(n as f64);
        l2.push(l2_from_density(&v));
        tv.push(tv_from_density(&v));
    }
    Ok(MixingCurve::new(times, l2, tv, false))
}

/// Discrete curve by the character route when possible, otherwise dense;
/// runs `horizon` steps and stops early once `l2 < L2_FLOOR`.
pub fn evolve(measure: &LongJumpMeasure, horizon: usize) -> Result<MixingCurve> {
    let mut curve = if measure.walk().group().is_abelian() {
        evolve_abelian(measure, horizon)?
    } else {
        evolve_dense(measure, horizon)?
    };
    curve.truncate_below(L2_FLOOR);
    Ok(curve)
}

/// `ceil(20 D)`, at least 1.
pub fn default_horizon(diameter: f64) -> usize {
    ((20.0 * diameter).ceil() as usize).max(1)
}

/// Number of Poisson(t) terms after which the remaining mass is at most `tol`.
fn series_terms(t: f64, tol: f64) -> Result<usize> {
    if t == 0.0 {
        return Ok(1);
    }
    // log pmf, stepped forward so that e^-t never has to be formed on its own
    let mut log_p = -t;
    let mut m = 0usize;
    loop {
        let rho = t / (m + 1) as f64;
        // past the mode the ratios p(j+1)/p(j) are all at most rho
        if rho < 1.0 && log_p + (rho / (1.0 - rho)).ln() <= tol.ln() {
            return Ok(m + 1);
        }
        m += 1;
        if m > MAX_SERIES_TERMS {
            return Err(Error::SeriesTruncation { time: t, terms: MAX_SERIES_TERMS });
        }
        log_p += t.ln() - (m as f64).ln();
    }
}

/// Continuous-time curve `H_t = e^{-t(I - K)}` at the given times.
///
/// Abelian groups use `e^{-t(1 - beta_j)}` per character. Other groups sum the
/// Poisson series `sum_m e^{-t} t^m / m! K^m(e, .)` until the dropped mass is
/// at most [`SERIES_TOLERANCE`].
pub fn evolve_continuous(measure: &LongJumpMeasure, times: &[f64]) -> Result<MixingCurve> {
    if let Some(&t) = times.iter().find(|t| !t.is_finite() || **t < 0.0) {
        return Err(Error::InvalidParameter(format!("time {t} must be finite and nonnegative")));
    }
    if measure.walk().group().is_abelian() {
        let beta = character_values(measure)?;
        let dims = dims(measure);
        let (mut l2, mut tv) = (Vec::new(), Vec::new());
        let mut underflow = false;
        for &t in times {
            let coeffs: Vec<f64> = beta.iter().map(|&b| (-t * (1.0 - b)).exp()).collect();
            let (d2, dtv, flag) = abelian_distances(&coeffs, &dims);
            underflow |= flag;
            l2.push(d2);
            tv.push(dtv);
        }
        return Ok(MixingCurve::new(times.to_vec(), l2, tv, underflow));
    }
    evolve_continuous_dense(measure, times, DEFAULT_DENSE_CAP)
}

/// Poisson-series route for any group within `cap`.
pub fn evolve_continuous_dense(measure: &LongJumpMeasure, times: &[f64], cap: usize) -> Result<MixingCurve> {
    check_dense(measure, cap)?;
    let order = measure.density().len();
    let terms = times.iter().map(|&t| series_terms(t, SERIES_TOLERANCE)).collect::<Result<Vec<_>>>()?;
    let max_terms = terms.iter().copied().max().unwrap_or(0);
    let (weights, table) = support_table(measure);
    let mut heat = vec![vec![0.0; order]; times.len()];
    let mut log_p: Vec<f64> = times.iter().map(|&t| -t).collect();
    let mut v = vec![0.0; order];
    v[0] = 1.0;
    let mut next = vec![0.0; order];
    for m in 0..max_terms {
        if m > 0 {
            step_dense(&v, &weights, &table, &mut next);
            std::mem::swap(&mut v, &mut next);
        }
        for (j, &t) in times.iter().enumerate() {
            if m >= terms[j] {
                continue;
            }
            if m > 0 {
                log_p[j] += t.ln() - (m as f64).ln();
            }
            let w = log_p[j].exp();
            for (h, &x) in heat[j].iter_mut().zip(&v) {
                *h += w * x;
            }
        }
    }
    let l2 = heat.iter().map(|h| l2_from_density(h)).collect();
    let tv = heat.iter().map(|h| tv_from_density(h)).collect();
    Ok(MixingCurve::new(times.to_vec(), l2, tv, false))
}

/// First time on the curve with `tv <= 1/4`.
pub fn mixing_time(curve: &MixingCurve) -> Result<f64> {
    curve.t_mix.ok_or(Error::HorizonTooShort { horizon: curve.times.last().copied().unwrap_or(0.0) })
}

/// Total variation at step `n` on an abelian group, from precomputed characters.
fn tv_at(beta: &[f64], dims: &[usize], n: u64) -> f64 {
    let coeffs: Vec<f64> = beta.iter().map(|&b| b.powi(n.min(i32::MAX as u64) as i32)).collect();
    tv_from_density(&fourier::inverse_real(&coeffs, dims))
}

/// Discrete mixing time on an abelian group without building the whole curve.
///
/// Total variation is nonincreasing in `n`, so the first step with
/// `tv <= 1/4` is found by doubling and then bisection.
pub fn mixing_time_abelian(measure: &LongJumpMeasure, max_steps: u64) -> Result<u64> {
    let beta = character_values(measure)?;
    let dims = dims(measure);
    if tv_at(&beta, &dims, 0) <= 0.25 {
        return Ok(0);
    }
    let mut hi = 1u64;
    while tv_at(&beta, &dims, hi) > 0.25 {
        if hi >= max_steps {
            return Err(Error::HorizonTooShort { horizon: max_steps as f64 });
        }
        hi = (2 * hi).min(max_steps);
    }
    let mut lo = hi / 2;
    // tv(lo) > 1/4 >= tv(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if tv_at(&beta, &dims, mid) <= 0.25 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Line `y = -x / (a D) + ln c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub a: f64,
    pub c: f64,
}

impl Envelope {
    pub fn log_value(&self, x: f64, diameter: f64) -> f64 {
        -x / (self.a * diameter) + self.c.ln()
    }
}

/// Empirical constants for `c1 e^{-n/(a1 D)} <= ||k_e^n - 1||_2 V(e,n)^{1/2} <= c2 e^{-n/(a2 D)}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeFit {
    pub lower: Envelope,
    pub upper: Envelope,
    pub diameter: f64,
    /// `(n, ln l2(n) + 1/2 ln V(e, min(n, D)))` for each usable time `n > 0`.
    pub points: Vec<(f64, f64)>,
}

impl EnvelopeFit {
    /// Largest violation of either envelope over the fitted points.
    pub fn max_violation(&self) -> f64 {
        self.points
            .iter()
            .map(|&(x, y)| {
                let below = self.lower.log_value(x, self.diameter) - y;
                let above = y - self.upper.log_value(x, self.diameter);
                below.max(above)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Monotone-chain hull of points sorted by `x`; `upper` selects the upper chain.
fn hull(points: &[(f64, f64)], upper: bool) -> Vec<(f64, f64)> {
    let mut h: Vec<(f64, f64)> = Vec::new();
    for &p in points {
        while h.len() >= 2 {
            let turn = cross(h[h.len() - 2], h[h.len() - 1], p);
            if (upper && turn >= 0.0) || (!upper && turn <= 0.0) {
                h.pop();
            } else {
                break;
            }
        }
        h.push(p);
    }
    h
}

/// Supporting line with negative slope through a hull edge, minimizing total slack.
fn supporting_line(points: &[(f64, f64)], upper: bool) -> Option<(f64, f64)> {
    let chain = hull(points, upper);
    let count = points.len() as f64;
    let sum_x: f64 = points.iter().map(|p| p.0).sum();
    let sum_y: f64 = points.iter().map(|p| p.1).sum();
    let mut best: Option<(f64, f64, f64)> = None;
    for w in chain.windows(2) {
        let slope = (w[1].1 - w[0].1) / (w[1].0 - w[0].0);
        if slope >= 0.0 || !slope.is_finite() {
            continue;
        }
        let intercept = w[0].1 - slope * w[0].0;
        let line_sum = count * intercept + slope * sum_x;
        let slack = if upper { line_sum - sum_y } else { sum_y - line_sum };
        if best.is_none_or(|b| slack < b.0) {
            best = Some((slack, slope, intercept));
        }
    }
    best.map(|(_, s, i)| (s, i))
}

/// The points `(n, ln l2(n) + 1/2 ln V(e, min(n, D)))` for `n > 0` with `l2(n) > 0`.
pub fn sandwich_points(curve: &MixingCurve, profile: &VolumeProfile, diameter: f64) -> Vec<(f64, f64)> {
    curve
        .times
        .iter()
        .zip(&curve.l2)
        .filter(|&(&t, &d)| t > 0.0 && d > 0.0)
        .map(|(&t, &d)| (t, d.ln() + 0.5 * profile.volume(t.min(diameter)).ln()))
        .filter(|p| p.1.is_finite())
        .collect()
}

/// Fits the two exponential envelopes of the `l^2` sandwich on the curve's horizon.
///
/// Each envelope is the supporting line of the point set with the least total
/// slack among those with negative slope; both hold at every point by construction.
pub fn l2_sandwich_report(curve: &MixingCurve, profile: &VolumeProfile, diameter: f64) -> Result<EnvelopeFit> {
    let points = sandwich_points(curve, profile, diameter);
    if points.len() < 3 || diameter <= 0.0 {
        return Err(Error::DegenerateFit(points.len()));
    }
    let upper = supporting_line(&points, true).ok_or(Error::DegenerateFit(points.len()))?;
    let lower = supporting_line(&points, false).ok_or(Error::DegenerateFit(points.len()))?;
    let envelope = |(slope, intercept): (f64, f64)| Envelope { a: -1.0 / (slope * diameter), c: intercept.exp() };
    Ok(EnvelopeFit { lower: envelope(lower), upper: envelope(upper), diameter, points })
}

/// Empirical distribution after `steps` steps of `walkers` independent walks from `e`.
///
/// Walker `i` draws from a ChaCha8 stream keyed by `(seed, i)`, so the result
/// does not depend on the thread count.
pub fn monte_carlo_walk(measure: &LongJumpMeasure, steps: usize, walkers: usize, seed: u64) -> Result<Vec<f64>> {
    let group = measure.walk().group();
    let order = measure.density().len();
    let support = measure.support();
    let sampler = WeightedIndex::new(support.iter().map(|&(_, p)| p))
        .map_err(|e| Error::InvalidParameter(format!("measure cannot be sampled: {e}")))?;
    const CHUNK: usize = 4096;
    let counts = (0..walkers.div_ceil(CHUNK))
        .into_par_iter()
        .map(|chunk| {
            let mut counts = vec![0u64; order];
            for w in chunk * CHUNK..((chunk + 1) * CHUNK).min(walkers) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(w as u64);
                let mut x = 0usize;
                for _ in 0..steps {
                    x = group.mul_index(x, support[sampler.sample(&mut rng)].0);
                }
                counts[x] += 1;
            }
            counts
        })
        .reduce(
            || vec![0u64; order],
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(counts.iter().map(|&c| c as f64 / walkers.max(1) as f64).collect())
}

/// Exact `K^n(e, .)` after `steps` steps, by the dense iteration.
pub fn distribution_at(measure: &LongJumpMeasure, steps: usize, cap: usize) -> Result<Vec<f64>> {
    check_dense(measure, cap)?;
    let order = measure.density().len();
    let (weights, table) = support_table(measure);
    let mut v = vec![0.0; order];
    v[0] = 1.0;
    let mut next = vec![0.0; order];
    for _ in 0..steps {
        step_dense(&v, &weights, &table, &mut next);
        std::mem::swap(&mut v, &mut next);
    }
    Ok(v)
}

/// `1/2 sum |p - q|`.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    0.5 * stable_sum(p.iter().zip(q).map(|(a, b)| (a - b).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::cost_table;
    use crate::geometry::volume_profile;
    use crate::group::WalkSpec;

    fn measure(group: &str, gens: &str, alpha: &str) -> LongJumpMeasure {
        LongJumpMeasure::new(&WalkSpec::parse(group, gens, alpha).unwrap()).unwrap()
    }

    #[test]
    fn two_point_chain_closed_form() {
        // mu = (4/5, 1/5), beta_1 = 3/5
        let m = measure("Z/2", "1", "1");
        for curve in [evolve_abelian(&m, 30).unwrap(), evolve_dense(&m, 30).unwrap()] {
            for n in 0..=30 {
                let b = 0.6f64.powi(n);
                assert!((curve.l2[n as usize] - b).abs() < 1e-14);
                assert!((curve.tv[n as usize] - 0.5 * b).abs() < 1e-14);
            }
            assert_eq!(mixing_time(&curve).unwrap(), 2.0);
        }
        assert_eq!(mixing_time_abelian(&m, 100).unwrap(), 2);
        let times = [0.0, 0.5, 3.0, 10.0];
        let cont = evolve_continuous(&m, &times).unwrap();
        let dense = evolve_continuous_dense(&m, &times, 16).unwrap();
        for (i, &t) in times.iter().enumerate() {
            let exact = (-0.4 * t).exp();
            assert!((cont.l2[i] - exact).abs() < 1e-14);
            assert!((dense.l2[i] - exact).abs() < 1e-10);
        }
    }

    #[test]
    fn initial_values() {
        let m = measure("Z/12", "1,5", "1,0.5");
        let curve = evolve_abelian(&m, 0).unwrap();
        assert!((curve.l2[0] - 11f64.sqrt()).abs() < 1e-12);
        assert!((curve.tv[0] - 11.0 / 12.0).abs() < 1e-12);
        let cont = evolve_continuous(&m, &[0.0]).unwrap();
        assert!((cont.l2[0] - 11f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn routes_agree() {
        for (g, s, a) in [("Z/12", "1,5", "1,0.5"), ("Z/3xZ/4", "(1,0);(0,1)", "1.5"), ("Z/31", "1", "0.7")] {
            let m = measure(g, s, a);
            let fast = evolve_abelian(&m, 60).unwrap();
            let slow = evolve_dense(&m, 60).unwrap();
            for n in 0..=60 {
                assert!((fast.l2[n] - slow.l2[n]).abs() < 1e-10);
                assert!((fast.tv[n] - slow.tv[n]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn continuous_routes_agree() {
        let m = measure("Z/15", "1,4", "1,1.5");
        let times = [0.0, 0.3, 2.0, 7.5, 40.0];
        let fast = evolve_continuous(&m, &times).unwrap();
        let slow = evolve_continuous_dense(&m, &times, 64).unwrap();
        for i in 0..times.len() {
            assert!((fast.l2[i] - slow.l2[i]).abs() < 1e-9, "{i}");
            assert!((fast.tv[i] - slow.tv[i]).abs() < 1e-10);
        }
    }

    #[test]
    fn heisenberg_curve() {
        let m = measure("H3/3", "(1,0,0);(0,1,0);(0,0,1)", "1");
        let curve = evolve_dense(&m, 200).unwrap();
        assert_eq!(curve.len(), 201);
        assert!((curve.l2[0] - 26f64.sqrt()).abs() < 1e-12);
        for n in 0..200 {
            assert!(curve.tv[n + 1] <= curve.tv[n] + 1e-15);
            assert!(curve.l2[n + 1] <= curve.l2[n] + 1e-15);
            assert!(2.0 * curve.tv[n] <= curve.l2[n] + 1e-15);
        }
        assert!(curve.t_mix.is_some());
        let cont = evolve_continuous(&m, &[0.0, 1.0, 5.0]).unwrap();
        assert!(cont.l2[2] < cont.l2[1] && cont.l2[1] < cont.l2[0]);
    }

    #[test]
    fn horizon_errors() {
        let m = measure("Z/100", "1", "1");
        let curve = evolve_abelian(&m, 2).unwrap();
        assert!(matches!(mixing_time(&curve), Err(Error::HorizonTooShort { .. })));
        assert!(mixing_time_abelian(&m, 3).is_err());
        let trivial = measure("Z/1", "0", "1");
        assert_eq!(mixing_time(&evolve_abelian(&trivial, 1).unwrap()).unwrap(), 0.0);
        assert!(evolve_dense_with_cap(&m, 1, 50).is_err());
    }

    #[test]
    fn bisection_matches_curve() {
        let m = measure("Z/200", "1,13", "0.8,1.2");
        let curve = evolve_abelian(&m, 500).unwrap();
        assert_eq!(mixing_time_abelian(&m, 10_000).unwrap() as f64, mixing_time(&curve).unwrap());
    }

    #[test]
    fn series_terms_cover_large_times() {
        assert_eq!(series_terms(0.0, 1e-12).unwrap(), 1);
        let n = series_terms(2000.0, 1e-12).unwrap();
        assert!(n > 2000 && n < 2600, "{n}");
    }

    #[test]
    fn envelope_fit_holds_pointwise() {
        let walk = WalkSpec::parse("Z/64", "1", "1").unwrap();
        let m = LongJumpMeasure::new(&walk).unwrap();
        let table = cost_table(&walk).unwrap();
        let d = table.diameter();
        let curve = evolve(&m, default_horizon(d)).unwrap();
        let fit = l2_sandwich_report(&curve, &volume_profile(&table), d).unwrap();
        assert!(fit.max_violation() <= 1e-9);
        assert!(fit.lower.a > 0.0 && fit.upper.a > 0.0);
        let short = evolve_abelian(&m, 2).unwrap();
        assert!(matches!(l2_sandwich_report(&short, &volume_profile(&table), d), Err(Error::DegenerateFit(2))));
    }

    #[test]
    fn monte_carlo_sanity() {
        let m = measure("Z/10", "1", "1");
        let point = monte_carlo_walk(&m, 0, 100, 7).unwrap();
        assert_eq!(point[0], 1.0);
        let a = monte_carlo_walk(&m, 5, 20_000, 42).unwrap();
        let b = monte_carlo_walk(&m, 5, 20_000, 42).unwrap();
        assert_eq!(a, b);
        let exact = distribution_at(&m, 5, 100).unwrap();
        assert!(total_variation(&a, &exact) < 0.03);
    }
}
