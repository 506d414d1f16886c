//! Spectrum of the walk kernel `K(x, y) = mu(x^-1 y)` and Dirichlet forms.
//!
//! Two independent routes compute the spectrum. On abelian groups the
//! eigenvalues are the character sums of `mu`, obtained with an FFT. On any
//! group up to [`DEFAULT_DENSE_CAP`] elements the kernel matrix is built and
//! diagonalized directly.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cost::{cost_table, CostTable};
use crate::error::{Error, Result};
use crate::fourier;
use crate::group::WalkSpec;
use crate::measure::LongJumpMeasure;
use crate::numeric::stable_sum;

/// Largest group handled by the dense eigensolver by default.
pub const DEFAULT_DENSE_CAP: usize = 4096;

/// Eigenvalues of the kernel in decreasing order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub beta: Vec<f64>,
    pub gap: f64,
    pub beta_min: f64,
}

impl SpectrumReport {
    fn from_unsorted(mut beta: Vec<f64>) -> Self {
        beta.sort_by(|a, b| b.total_cmp(a));
        let gap = if beta.len() > 1 { 1.0 - beta[1] } else { 1.0 };
        let beta_min = *beta.last().unwrap_or(&1.0);
        SpectrumReport { beta, gap, beta_min }
    }

    /// `beta_1`, or 0 for the trivial group.
    pub fn beta_1(&self) -> f64 {
        self.beta.get(1).copied().unwrap_or(0.0)
    }
}

/// Eigenvalue of each character, indexed like the group elements.
pub fn character_values(measure: &LongJumpMeasure) -> Result<Vec<f64>> {
    let group = measure.walk().group();
    if !group.is_abelian() {
        return Err(Error::NotAbelian(group.to_string()));
    }
    let dims: Vec<usize> = group.moduli().iter().map(|&n| n as usize).collect();
    // mu is symmetric, so every character sum is real
    Ok(fourier::forward_real(measure.density(), &dims).iter().map(|c| c.re).collect())
}

/// Spectrum through the characters of an abelian group.
pub fn spectrum_abelian(measure: &LongJumpMeasure) -> Result<SpectrumReport> {
    Ok(SpectrumReport::from_unsorted(character_values(measure)?))
}

/// Kernel matrix `K[x][y] = mu(x^-1 y)`.
pub fn kernel_matrix(measure: &LongJumpMeasure, cap: usize) -> Result<DMatrix<f64>> {
    let group = measure.walk().group();
    let order = group.order() as usize;
    if order > cap {
        return Err(Error::CapExceeded { order: order as u128, cap: cap as u64 });
    }
    let support = measure.support();
    let mut k = DMatrix::<f64>::zeros(order, order);
    for x in 0..order {
        for &(g, p) in &support {
            k[(x, group.mul_index(x, g))] += p;
        }
    }
    Ok(k)
}

/// Spectrum through a dense symmetric eigensolve.
pub fn spectrum_dense(measure: &LongJumpMeasure) -> Result<SpectrumReport> {
    spectrum_dense_with_cap(measure, DEFAULT_DENSE_CAP)
}

pub fn spectrum_dense_with_cap(measure: &LongJumpMeasure, cap: usize) -> Result<SpectrumReport> {
    let k = kernel_matrix(measure, cap)?;
    let eigen = SymmetricEigen::new(k);
    Ok(SpectrumReport::from_unsorted(eigen.eigenvalues.iter().copied().collect()))
}

/// Eigenvalues and orthonormal eigenvectors (columns), eigenvalues decreasing.
pub fn eigen_dense(measure: &LongJumpMeasure, cap: usize) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let eigen = SymmetricEigen::new(kernel_matrix(measure, cap)?);
    let mut order: Vec<usize> = (0..eigen.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eigen.eigenvalues[b].total_cmp(&eigen.eigenvalues[a]));
    let values = order.iter().map(|&i| eigen.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(eigen.eigenvectors.nrows(), order.len(), |r, c| eigen.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

/// Spectrum by the character route when the group is abelian, otherwise dense.
pub fn spectrum(measure: &LongJumpMeasure) -> Result<SpectrumReport> {
    if measure.walk().group().is_abelian() {
        spectrum_abelian(measure)
    } else {
        spectrum_dense(measure)
    }
}

/// Floor `2 alpha_* - 1` for the smallest eigenvalue.
pub fn beta_min_floor(walk: &WalkSpec) -> f64 {
    2.0 * walk.alpha_star() - 1.0
}

fn check_len(measure: &LongJumpMeasure, f: &[f64]) -> Result<()> {
    if f.len() != measure.density().len() {
        return Err(Error::InvalidParameter(format!(
            "function has {} values for a group of order {}",
            f.len(),
            measure.density().len()
        )));
    }
    Ok(())
}

/// `E(f, g) = 1/2 sum_{x,y} (f(x) - f(xy)) (g(x) - g(xy)) mu(y) pi(x)`.
pub fn dirichlet_form(measure: &LongJumpMeasure, f: &[f64], g: &[f64]) -> Result<f64> {
    check_len(measure, f)?;
    check_len(measure, g)?;
    Ok(dirichlet_form_with(measure, measure.density(), f, g))
}

/// Dirichlet form of an arbitrary measure `mu` on the same group.
pub fn dirichlet_form_with(measure: &LongJumpMeasure, mu: &[f64], f: &[f64], g: &[f64]) -> f64 {
    let group = measure.walk().group();
    let n = f.len();
    let support: Vec<(usize, f64)> = mu.iter().enumerate().filter(|(_, &p)| p > 0.0).map(|(i, &p)| (i, p)).collect();
    let terms = (0..n).map(|x| {
        support
            .iter()
            .map(|&(y, p)| {
                let xy = group.mul_index(x, y);
                (f[x] - f[xy]) * (g[x] - g[xy]) * p
            })
            .sum::<f64>()
    });
    0.5 * stable_sum(terms) / n as f64
}

/// `(K f)(x) = sum_y mu(y) f(xy)`.
pub fn apply_kernel(measure: &LongJumpMeasure, f: &[f64]) -> Vec<f64> {
    let group = measure.walk().group();
    let support = measure.support();
    (0..f.len()).map(|x| support.iter().map(|&(y, p)| p * f[group.mul_index(x, y)]).sum()).collect()
}

/// `<f, g>_pi` for uniform `pi`.
pub fn inner(f: &[f64], g: &[f64]) -> f64 {
    stable_sum(f.iter().zip(g).map(|(a, b)| a * b)) / f.len() as f64
}

pub fn variance(f: &[f64]) -> f64 {
    let mean = stable_sum(f.iter().copied()) / f.len() as f64;
    stable_sum(f.iter().map(|v| (v - mean) * (v - mean))) / f.len() as f64
}

/// `E(f, f) / Var(f)`.
pub fn rayleigh_quotient(measure: &LongJumpMeasure, f: &[f64]) -> Result<f64> {
    check_len(measure, f)?;
    let var = variance(f);
    let scale = f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if var <= 1e-28 * scale * scale || scale == 0.0 {
        return Err(Error::InvalidParameter("Rayleigh quotient of a constant function".into()));
    }
    Ok(dirichlet_form_with(measure, measure.density(), f, f) / var)
}

/// The two-bump test function `zeta = zeta_plus - zeta_minus`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaFunction {
    pub radius: f64,
    /// `min_i alpha_i`.
    pub alpha_min: f64,
    pub plus: Vec<f64>,
    pub minus: Vec<f64>,
}

impl ZetaFunction {
    pub fn values(&self) -> Vec<f64> {
        self.plus.iter().zip(&self.minus).map(|(a, b)| a - b).collect()
    }
}

/// Builds `zeta_plus(g) = (R^{1/a} - cost(g)^{1/a})_+` and
/// `zeta_minus(g) = (R^{1/a} - cost(o^-1 g)^{1/a})_+`, with `a = min alpha`
/// and `o` the cost argmax. Requires `R <= D/16`.
pub fn zeta_test_function(walk: &WalkSpec, table: &CostTable, radius: f64) -> Result<ZetaFunction> {
    let d = table.diameter();
    if radius.is_nan() || radius <= 0.0 || radius > d / 16.0 {
        return Err(Error::InvalidParameter(format!("radius {radius} must lie in (0, D/16] with D = {d}")));
    }
    let group = walk.group();
    let a = walk.alpha_min();
    let top = radius.powf(1.0 / a);
    let bump = |c: f64| (top - c.powf(1.0 / a)).max(0.0);
    let o_inv = group.inv_index(table.argmax_index());
    let costs = table.costs();
    let plus: Vec<f64> = costs.iter().map(|&c| bump(c)).collect();
    let minus: Vec<f64> = (0..costs.len()).map(|g| bump(costs[group.mul_index(o_inv, g)])).collect();
    Ok(ZetaFunction { radius, alpha_min: a, plus, minus })
}

/// `(1 - beta_1) D` for one walk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub gap: f64,
    pub beta_min: f64,
    pub diameter: f64,
    pub product: f64,
}

pub fn gap_sandwich_report(walk: &WalkSpec) -> Result<GapReport> {
    let measure = LongJumpMeasure::new(walk)?;
    let spectrum = spectrum(&measure)?;
    let diameter = cost_table(walk)?.diameter();
    Ok(GapReport { gap: spectrum.gap, beta_min: spectrum.beta_min, diameter, product: spectrum.gap * diameter })
}

/// `max / min` of a family of positive values.
pub fn band_ratio(values: &[f64]) -> f64 {
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    hi / lo
}

/// `C(alpha) = 2^{9 + alpha} 3^{2 + alpha} (alpha + 1) / alpha`.
pub fn poincare_constant(alpha: f64) -> f64 {
    2f64.powf(9.0 + alpha) * 3f64.powf(2.0 + alpha) * (alpha + 1.0) / alpha
}

/// Worst observed ratio of `(1/|G|) sum_x |f(x) - f(xy)|^2` to
/// `cost(y) E(f, f)`, over `trials` random functions and every `y != e`.
///
/// Functions take independent uniform values in `[-1, 1]` from a ChaCha8
/// stream seeded with `seed`. Functions with a vanishing Dirichlet form are
/// skipped.
pub fn pseudo_poincare_check(measure: &LongJumpMeasure, table: &CostTable, trials: usize, seed: u64) -> f64 {
    let group = measure.walk().group();
    let n = measure.density().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let f: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let energy = dirichlet_form_with(measure, measure.density(), &f, &f);
        if energy <= 0.0 {
            continue;
        }
        for y in 1..n {
            let shift = stable_sum((0..n).map(|x| (f[x] - f[group.mul_index(x, y)]).powi(2))) / n as f64;
            worst = worst.max(shift / (table.costs()[y] * energy));
        }
    }
    worst
}
