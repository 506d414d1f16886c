//! Discrete Fourier transform over products of cyclic groups, on the
//! row-major index layout used by [`GroupSpec`](crate::group::GroupSpec).

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

/// In-place unnormalized multidimensional transform.
pub(crate) fn transform(data: &mut [Complex64], dims: &[usize], direction: FftDirection) {
    let mut planner = FftPlanner::<f64>::new();
    let total: usize = dims.iter().product();
    debug_assert_eq!(total, data.len());
    let mut stride = total;
    for &len in dims {
        stride /= len;
        if len == 1 {
            continue;
        }
        let fft = planner.plan_fft(len, direction);
        let mut line = vec![Complex64::new(0.0, 0.0); len];
        let block = len * stride;
        for start in (0..total).step_by(block) {
            for offset in 0..stride {
                let base = start + offset;
                for (j, v) in line.iter_mut().enumerate() {
                    *v = data[base + j * stride];
                }
                fft.process(&mut line);
                for (j, v) in line.iter().enumerate() {
                    data[base + j * stride] = *v;
                }
            }
        }
    }
}

/// Character sums `sum_x mu(x) chi(x)` of a real function, one per character.
pub(crate) fn forward_real(values: &[f64], dims: &[usize]) -> Vec<Complex64> {
    let mut data: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    transform(&mut data, dims, FftDirection::Forward);
    data
}

/// Inverse of [`forward_real`], returning the real part.
pub(crate) fn inverse_real(coeffs: &[f64], dims: &[usize]) -> Vec<f64> {
    let mut data: Vec<Complex64> = coeffs.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    transform(&mut data, dims, FftDirection::Inverse);
    let scale = 1.0 / data.len() as f64;
    data.iter().map(|c| c.re * scale).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_direct_character_sums() {
        let dims = [3usize, 4];
        let values: Vec<f64> = (0..12).map(|i| (i as f64 * 0.37).sin()).collect();
        let fast = forward_real(&values, &dims);
        for a in 0..3 {
            for b in 0..4 {
                let mut direct = Complex64::new(0.0, 0.0);
                for x in 0..3 {
                    for y in 0..4 {
                        let phase = -2.0 * std::f64::consts::PI * (a * x) as f64 / 3.0
                            - 2.0 * std::f64::consts::PI * (b * y) as f64 / 4.0;
                        direct += values[x * 4 + y] * Complex64::from_polar(1.0, phase);
                    }
                }
                assert!((fast[a * 4 + b] - direct).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn inverse_round_trip_for_symmetric_input() {
        let sym = [0.5, 0.2, 0.1, 0.2];
        let coeffs: Vec<f64> = forward_real(&sym, &[4]).iter().map(|c| c.re).collect();
        let round = inverse_real(&coeffs, &[4]);
        for (a, b) in sym.iter().zip(&round) {
            assert!((a - b).abs() < 1e-15);
        }
    }
}
