//! The long-jump measure: a truncated power law on each generator's cyclic
//! subgroup, averaged over generators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{cyclic_abs, Element, WalkSpec};
use crate::numeric::stable_sum;

/// `p(j) = c / (1 + |j|)^{1 + alpha}` on `Z/N`, with `|j| = min(j, N - j)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerLawDistribution {
    n: u64,
    alpha: f64,
    c: f64,
    probs: Vec<f64>,
}

impl PowerLawDistribution {
    pub fn new(n: u64, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("cycle length must be at least 1".into()));
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidAlpha(alpha));
        }
        let weights: Vec<f64> = (0..n).map(|j| weight(cyclic_abs(j, n), alpha)).collect();
        // smallest terms first
        let total = stable_sum(weights.iter().rev().copied());
        let c = 1.0 / total;
        let probs = weights.into_iter().map(|w| c * w).collect();
        Ok(PowerLawDistribution { n, alpha, c, probs })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Normalization constant `c_{N, alpha}`.
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Probability of the residue `j` (reduced mod `N`).
    pub fn prob(&self, j: u64) -> f64 {
        self.probs[(j % self.n) as usize]
    }

    /// Probability of any residue at cyclic distance `d` from zero.
    pub fn prob_at_distance(&self, d: u64) -> f64 {
        self.probs[d as usize]
    }
}

fn weight(d: u64, alpha: f64) -> f64 {
    (1.0 + d as f64).powf(-(1.0 + alpha))
}

/// Same as [`PowerLawDistribution::new`].
pub fn build_power_law(n: u64, alpha: f64) -> Result<PowerLawDistribution> {
    PowerLawDistribution::new(n, alpha)
}

/// `sum_{|t| > a} p(t)`.
pub fn tail_mass(p: &PowerLawDistribution, a: f64) -> f64 {
    let n = p.n();
    stable_sum((0..n).rev().filter(|&t| cyclic_abs(t, n) as f64 > a).map(|t| p.prob(t)))
}

/// The bound `2 * 2^alpha / alpha / a^alpha` on [`tail_mass`].
pub fn tail_bound(alpha: f64, a: f64) -> f64 {
    2.0 * 2f64.powf(alpha) / alpha / a.powf(alpha)
}

/// Bounds `alpha / (2 (1 + alpha)) <= c_{N, alpha} <= 1`.
pub fn normalization_bounds(alpha: f64) -> (f64, f64) {
    (alpha / (2.0 * (1.0 + alpha)), 1.0)
}

/// The long-jump measure of a walk, stored densely over group indices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LongJumpMeasure {
    walk: WalkSpec,
    per_gen: Vec<PowerLawDistribution>,
    density: Vec<f64>,
}

impl LongJumpMeasure {
    pub fn new(walk: &WalkSpec) -> Result<Self> {
        let group = walk.group();
        let order = group.order() as usize;
        let per_gen = walk
            .orders()
            .iter()
            .zip(walk.alpha())
            .map(|(&n, &a)| PowerLawDistribution::new(n, a))
            .collect::<Result<Vec<_>>>()?;
        let k = walk.k() as f64;
        let mut density = vec![0.0; order];
        for (g, p) in walk.gens().iter().zip(&per_gen) {
            let step = group.index_of(g);
            let mut x = 0usize;
            for j in 0..p.n() {
                density[x] += p.prob(j) / k;
                x = group.mul_index(x, step);
            }
        }
        Ok(LongJumpMeasure { walk: walk.clone(), per_gen, density })
    }

    pub fn walk(&self) -> &WalkSpec {
        &self.walk
    }

    pub fn per_gen(&self) -> &[PowerLawDistribution] {
        &self.per_gen
    }

    /// `mu` as a vector over the group's enumeration indices.
    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn mass(&self, g: &Element) -> f64 {
        self.density[self.walk.group().index_of(g)]
    }

    pub fn identity_mass(&self) -> f64 {
        self.density[0]
    }

    /// Nonzero entries as `(index, probability)`, in index order.
    pub fn support(&self) -> Vec<(usize, f64)> {
        self.density.iter().enumerate().filter(|(_, &p)| p > 0.0).map(|(i, &p)| (i, p)).collect()
    }

    /// Measure of the single-generator walk `mu_i`, over the same group.
    pub fn component(&self, i: usize) -> Vec<f64> {
        let group = self.walk.group();
        let step = group.index_of(&self.walk.gens()[i]);
        let p = &self.per_gen[i];
        let mut density = vec![0.0; self.density.len()];
        let mut x = 0usize;
        for j in 0..p.n() {
            density[x] += p.prob(j);
            x = group.mul_index(x, step);
        }
        density
    }
}

/// Same as [`LongJumpMeasure::new`].
pub fn build_measure(walk: &WalkSpec) -> Result<LongJumpMeasure> {
    LongJumpMeasure::new(walk)
}

/// Result of comparing `p` with the wrapped measure on the integers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WrappedComparison {
    pub min_ratio: f64,
    pub max_ratio: f64,
    /// Lower constant `alpha / (2 c_alpha (1 + alpha))`.
    pub lower: f64,
    /// Upper constant `(1 + 2^{2 + alpha}) A_alpha / c_alpha`.
    pub upper: f64,
    /// Certified bound on the truncation error of any ratio.
    pub error_bound: f64,
}

/// Default certification tolerance for [`check_wrapped_comparability`].
pub const WRAP_TOLERANCE: f64 = 1e-10;

/// `A_alpha = sum_{j >= 1} (1 + j)^{-1 - alpha}`, with a certified error bound.
pub fn zeta_tail(alpha: f64) -> (f64, f64) {
    const TERMS: u64 = 100_000;
    let head = stable_sum((1..=TERMS).rev().map(|j| weight(j, alpha)));
    let (lo, hi) = tail_bracket(|x| (1.0 + x).powf(-alpha) / alpha, |x| weight_real(x, alpha), TERMS as f64, 1.0);
    (head + 0.5 * (lo + hi), 0.5 * (hi - lo))
}

fn weight_real(x: f64, alpha: f64) -> f64 {
    (1.0 + x).powf(-(1.0 + alpha))
}

/// Bracket for `sum_{j > last} f(a + step j)` with `f` convex and decreasing,
/// given the antiderivative tail `big_f(x) = int_x^inf f`.
///
/// The midpoint rule underestimates each cell integral of a convex function and
/// the trapezoid rule overestimates it, which brackets the sum.
fn tail_bracket(big_f: impl Fn(f64) -> f64, f: impl Fn(f64) -> f64, last: f64, step: f64) -> (f64, f64) {
    let first = step * (last + 1.0);
    let lower = big_f(first) / step + 0.5 * f(first);
    let upper = big_f(step * (last + 0.5)) / step;
    (lower.min(upper), upper.max(lower))
}

/// Compares `p` on `Z/N` with the wrapped measure
/// `p~(k) = c_alpha sum_{j in Z} (1 + |k + N j|)^{-1 - alpha}`.
///
/// The wrap sum is truncated at `|j| <= wrap_terms`; the remainder is
/// estimated by integrals and its error is certified against `tolerance`.
pub fn check_wrapped_comparability(
    n: u64,
    alpha: f64,
    wrap_terms: u64,
    tolerance: f64,
) -> Result<WrappedComparison> {
    if wrap_terms == 0 {
        return Err(Error::InvalidParameter("wrap_terms must be at least 1".into()));
    }
    let p = PowerLawDistribution::new(n, alpha)?;
    let (a_alpha, a_err) = zeta_tail(alpha);
    let c_alpha = 1.0 / (1.0 + 2.0 * a_alpha);
    let nf = n as f64;
    let big_f = |x: f64| (1.0 + x).powf(-alpha) / alpha;
    let f = |x: f64| weight_real(x, alpha);

    let mut min_ratio = f64::INFINITY;
    let mut max_ratio = 0.0f64;
    let mut error_bound = 0.0f64;
    for k in 0..=n / 2 {
        let kf = k as f64;
        let terms = (1..=wrap_terms).rev().flat_map(|j| {
            let jf = j as f64;
            [f(kf + nf * jf), f(nf * jf - kf)]
        });
        let head = stable_sum(terms.chain(std::iter::once(f(kf))));
        let (lo_pos, hi_pos) = tail_bracket(|x| big_f(x + kf), |x| f(x + kf), wrap_terms as f64, nf);
        let (lo_neg, hi_neg) = tail_bracket(|x| big_f(x - kf), |x| f(x - kf), wrap_terms as f64, nf);
        let wrapped = head + 0.5 * (lo_pos + hi_pos + lo_neg + hi_neg);
        let err = 0.5 * (hi_pos - lo_pos + hi_neg - lo_neg);
        let pk = p.prob(k);
        let ratio = c_alpha * wrapped / pk;
        // error from the wrap tail plus the propagated error in c_alpha
        let ratio_err = c_alpha * err / pk + ratio * 2.0 * a_err * c_alpha;
        error_bound = error_bound.max(ratio_err);
        min_ratio = min_ratio.min(ratio);
        max_ratio = max_ratio.max(ratio);
    }
    if error_bound > tolerance {
        return Err(Error::TailTolerance { error: error_bound, tolerance });
    }
    Ok(WrappedComparison {
        min_ratio,
        max_ratio,
        lower: alpha / (2.0 * c_alpha * (1.0 + alpha)),
        upper: (1.0 + 2f64.powf(2.0 + alpha)) * a_alpha / c_alpha,
        error_bound,
    })
}

/// Outcome of the regularity check on the windows `I_k = [floor(k/9), k]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Regularity {
    pub holds: bool,
    pub best_constant: f64,
    pub threshold: f64,
}

/// Checks that `min_{I_k} p / max_{I_k} p >= 18^{-1 - alpha}` for every
/// `k in [0, N/2]`.
pub fn check_regularity_a(p: &PowerLawDistribution) -> Regularity {
    let threshold = 18f64.powf(-1.0 - p.alpha());
    // p is decreasing in |j| on [0, N/2], so the window ratio is p(k) / p(floor(k/9))
    let best_constant = (0..=p.n() / 2)
        .map(|k| p.prob_at_distance(k) / p.prob_at_distance(k / 9))
        .fold(1.0f64, f64::min);
    Regularity { holds: best_constant >= threshold, best_constant, threshold }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn walk(group: &str, gens: &str, alpha: &str) -> WalkSpec {
        WalkSpec::parse(group, gens, alpha).unwrap()
    }

    #[test]
    fn five_point_law() {
        let p = build_power_law(5, 1.0).unwrap();
        // 1 + 1/4 + 1/9 + 1/9 + 1/4 = 31/18
        assert!((p.c() - 18.0 / 31.0).abs() < 1e-15);
        let expected = [1.0, 0.25, 1.0 / 9.0, 1.0 / 9.0, 0.25];
        for (got, e) in p.probs().iter().zip(expected) {
            assert!((got - 18.0 / 31.0 * e).abs() < 1e-15);
        }
    }

    #[test]
    fn four_point_law_and_trivial_law() {
        let p = build_power_law(4, 1.0).unwrap();
        let inv = 1.0 + 0.25 + 1.0 / 9.0 + 0.25;
        assert!((1.0 / p.c() - inv).abs() < 1e-14);
        assert_eq!(build_power_law(1, 0.7).unwrap().probs(), &[1.0]);
        assert!(build_power_law(0, 1.0).is_err());
        assert!(matches!(build_power_law(5, -1.0), Err(Error::InvalidAlpha(_))));
    }

    #[test]
    fn two_point_law() {
        // 1 + 2^{-2} = 5/4
        let p = build_power_law(2, 1.0).unwrap();
        assert!((p.probs()[0] - 0.8).abs() < 1e-15);
        assert!((p.probs()[1] - 0.2).abs() < 1e-15);
    }

    #[test]
    fn measure_construction() {
        let m = build_measure(&walk("Z/5", "1", "1")).unwrap();
        let p = build_power_law(5, 1.0).unwrap();
        assert_eq!(m.density(), p.probs());

        let single = build_measure(&walk("Z/6", "1", "1")).unwrap();
        let doubled = build_measure(&walk("Z/6", "1,1", "1,1")).unwrap();
        for (a, b) in single.density().iter().zip(doubled.density()) {
            assert!((a - b).abs() < 1e-15);
        }

        let m = build_measure(&walk("Z/10", "1,5", "1,1")).unwrap();
        let second = m.component(1);
        let support: Vec<usize> = (0..10).filter(|&i| second[i] > 0.0).collect();
        assert_eq!(support, vec![0, 5]);
        assert!((second[0] + second[5] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn heisenberg_measure_is_symmetric() {
        let w = walk("H3/5", "(1,0,0),(0,1,0)", "0.7,1.3");
        let m = build_measure(&w).unwrap();
        let g = w.group();
        for x in 0..g.order() as usize {
            assert!((m.density()[x] - m.density()[g.inv_index(x)]).abs() < 1e-16);
        }
        assert!((m.density().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(m.identity_mass() >= w.alpha_star());
    }

    #[test]
    fn tail_mass_examples() {
        let p = build_power_law(5, 1.0).unwrap();
        assert_eq!(tail_mass(&p, 2.0), 0.0);
        let q = build_power_law(101, 1.0).unwrap();
        let direct = 1.0 - q.prob(0) - q.prob(1) - q.prob(100);
        assert!((tail_mass(&q, 1.0) - direct).abs() < 1e-14);
        assert_eq!(tail_mass(&q, 50.5), 0.0);
    }

    #[test]
    fn wrapped_measure_trivial_cycle() {
        let r = check_wrapped_comparability(1, 1.0, 10_000, WRAP_TOLERANCE).unwrap();
        assert!((r.min_ratio - 1.0).abs() < 1e-10 && (r.max_ratio - 1.0).abs() < 1e-10);
    }

    #[test]
    fn wrapped_measure_band() {
        let r = check_wrapped_comparability(20, 1.0, 10_000, WRAP_TOLERANCE).unwrap();
        assert!(r.lower <= r.min_ratio && r.max_ratio <= r.upper, "{r:?}");
        assert!(r.min_ratio <= 1.0 && 1.0 <= r.max_ratio * (1.0 + 1e-9));
    }

    #[test]
    fn zeta_tail_known_value() {
        // A_1 = pi^2/6 - 1
        let (a, err) = zeta_tail(1.0);
        assert!((a - (std::f64::consts::PI.powi(2) / 6.0 - 1.0)).abs() < 1e-12);
        assert!(err < 1e-13);
    }

    #[test]
    fn wrapped_tolerance_is_enforced() {
        assert!(matches!(
            check_wrapped_comparability(10, 0.25, 1, 1e-12),
            Err(Error::TailTolerance { .. })
        ));
    }

    #[test]
    fn regularity_examples() {
        let r = check_regularity_a(&build_power_law(5, 1.0).unwrap());
        assert!((r.best_constant - 1.0 / 9.0).abs() < 1e-15);
        assert!(r.holds);
        let r = check_regularity_a(&build_power_law(1, 1.0).unwrap());
        assert_eq!(r.best_constant, 1.0);
        let r = check_regularity_a(&build_power_law(1000, 0.5).unwrap());
        assert!(r.holds && r.best_constant >= 18f64.powf(-1.5));
    }
}
