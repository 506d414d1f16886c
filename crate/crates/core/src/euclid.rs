//! Diameter of `Z/N` with generators `(1, s)` via a signed Euclidean expansion.
//!
//! Each division step writes `b = q a - eps r` with `0 <= r <= a/2` and
//! `eps = -1` on the tie `r = a/2`. Starting from `r_{-1} = N`, `r_0 = s` this
//! yields remainders `r_i`, quotients `q_i`, signs `eps_i`, and step counts
//!
//! ```text
//! m_{-1} = 0,  m_0 = 1,  m_{i+1} = q_{i+1} m_i - eps_i m_{i-1},
//! ```
//!
//! where `m_i` is the least number of `s`-steps reaching `+-r_i`. The diameter
//! of the `(1, s)` quasi-norm is within a factor `2^{5(a1 + a2)}` of
//! `min_i max(Phi_{a1}(r_i), Phi_{a2}(m_{i+1}))`.

use serde::{Deserialize, Serialize};

use crate::cost::phi;
use crate::error::{Error, Result};

/// The sequences of the signed expansion of `N` by `s`.
///
/// Index conventions follow the recurrence: `r` and `m` run over
/// `-1..=K+1`, `q` and `eps` over `1..=K+1`. Use the accessors rather than the
/// raw vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EuclidExpansion {
    pub n: u64,
    pub s: u64,
    /// `r_{-1}, r_0, ..., r_{K+1}`.
    pub r: Vec<u64>,
    /// `q_1, ..., q_{K+1}`.
    pub q: Vec<u64>,
    /// `eps_1, ..., eps_{K+1}`; the terminal division uses `+1`.
    pub eps: Vec<i8>,
    /// `m_{-1}, m_0, ..., m_{K+1}`.
    pub m: Vec<u64>,
    /// Index of the last nonzero remainder.
    pub k: usize,
}

impl EuclidExpansion {
    /// `r_i` for `-1 <= i <= K+1`.
    pub fn r(&self, i: i64) -> u64 {
        self.r[(i + 1) as usize]
    }

    /// `m_i` for `-1 <= i <= K+1`.
    pub fn m(&self, i: i64) -> u64 {
        self.m[(i + 1) as usize]
    }

    /// `q_i` for `1 <= i <= K+1`.
    pub fn q(&self, i: i64) -> u64 {
        self.q[(i - 1) as usize]
    }

    /// `eps_i` for `1 <= i <= K+1`.
    pub fn eps(&self, i: i64) -> i8 {
        self.eps[(i - 1) as usize]
    }

    /// `eps_1 * ... * eps_i`, with the empty product for `i = 0`.
    pub fn eps_bar(&self, i: i64) -> i8 {
        self.eps[..i as usize].iter().product()
    }

    pub fn gcd(&self) -> u64 {
        self.r(self.k as i64)
    }

    /// Lists every violated structural property; empty when the expansion is sound.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let k = self.k as i64;
        for i in 0..=k {
            let lhs = self.r(i - 1) as i128;
            let rhs = self.q(i + 1) as i128 * self.r(i) as i128 - self.eps(i + 1) as i128 * self.r(i + 1) as i128;
            if lhs != rhs {
                out.push(format!("division identity fails at i = {i}"));
            }
            if 2 * self.r(i + 1) > self.r(i) {
                out.push(format!("r_{} > r_{i}/2", i + 1));
            }
            if 2 * self.r(i + 1) == self.r(i) && self.eps(i + 1) != -1 {
                out.push(format!("tie at r_{} without eps = -1", i + 1));
            }
        }
        for i in 0..=k {
            let prev = if i == 0 { 0 } else { self.eps(i) as i128 };
            let expected = self.q(i + 1) as i128 * self.m(i) as i128 - prev * self.m(i - 1) as i128;
            if self.m(i + 1) as i128 != expected {
                out.push(format!("m recurrence fails at i = {}", i + 1));
            }
        }
        for i in 1..=k + 1 {
            if self.q(i) < 2 {
                out.push(format!("q_{i} < 2"));
            }
        }
        for i in -1..k {
            if self.m(i + 1) <= self.m(i) {
                out.push(format!("m not increasing at i = {}", i + 1));
            }
        }
        for i in 2..=k {
            if 4 * (self.q(i + 1) as u128) * (self.m(i) as u128) < (self.m(i + 1) as u128) {
                out.push(format!("4 q_{} m_{i} < m_{}", i + 1, i + 1));
            }
        }
        for i in 1..=k {
            if 4 * (self.q(i + 1) as u128) * (self.r(i) as u128) < 3 * (self.r(i - 1) as u128) {
                out.push(format!("4 q_{} r_{i} < 3 r_{}", i + 1, i - 1));
            }
        }
        if self.r(k + 1) != 0 || self.r(k) == 0 {
            out.push("termination index is wrong".into());
        }
        if self.gcd() != gcd(self.n, self.s) {
            out.push("r_K is not gcd(N, s)".into());
        }
        out
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Signed Euclidean expansion of `N` by `s`.
///
/// `s` is reduced mod `N` and replaced by `N - s` when larger than `N/2`.
/// `s = 1` gives the one-step expansion `N = N * 1`.
pub fn expand(n: u64, s: u64) -> Result<EuclidExpansion> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("modulus N = {n} must be at least 2")));
    }
    let mut s = s % n;
    if 2 * s > n {
        s = n - s;
    }
    if s == 0 {
        return Err(Error::InvalidParameter(format!("s must be a nonzero residue mod {n}")));
    }
    let mut r = vec![n, s];
    let mut q = Vec::new();
    let mut eps = Vec::new();
    loop {
        let b = r[r.len() - 2];
        let a = r[r.len() - 1];
        let (quot, rem) = (b / a, b % a);
        if rem == 0 {
            q.push(quot);
            eps.push(1);
            r.push(0);
            break;
        }
        if 2 * rem <= a {
            q.push(quot);
            eps.push(-1);
            r.push(rem);
        } else {
            q.push(quot + 1);
            eps.push(1);
            r.push(a - rem);
        }
    }
    let k = r.len() - 3;
    let mut m = vec![0u64, 1u64];
    for i in 0..=k {
        // m_{i+1} = q_{i+1} m_i - eps_i m_{i-1}; eps_0 multiplies m_{-1} = 0
        let prev = if i == 0 { 0 } else { eps[i - 1] as i128 };
        let next = q[i] as i128 * m[i + 1] as i128 - prev * m[i] as i128;
        m.push(u64::try_from(next).map_err(|_| Error::InvalidParameter("step count overflow".into()))?);
    }
    Ok(EuclidExpansion { n, s, r, q, eps, m, k })
}

/// `m_i`, the least `|l|` with `l s = +-r_i mod N`.
pub fn step_length(exp: &EuclidExpansion, i: usize) -> Result<u64> {
    if i > exp.k {
        return Err(Error::InvalidParameter(format!("index {i} is beyond K = {}", exp.k)));
    }
    Ok(exp.m(i as i64))
}

/// `M = min_{-1 <= i <= K} max(Phi_{a1}(r_i), Phi_{a2}(m_{i+1}))` and the
/// first minimizing `i`. `a1` belongs to the generator `1`, `a2` to `s`.
pub fn diameter_formula(exp: &EuclidExpansion, alpha: (f64, f64)) -> Result<(f64, i64)> {
    crate::group::check_alpha(&[alpha.0, alpha.1])?;
    let mut best = (f64::INFINITY, -1);
    for i in -1..=exp.k as i64 {
        let v = phi(alpha.0, exp.r(i)).max(phi(alpha.1, exp.m(i + 1)));
        if v < best.0 {
            best = (v, i);
        }
    }
    Ok(best)
}

/// Lower-bound constant `2^{-5(a1 + a2)}`.
pub fn sandwich_constant(alpha: (f64, f64)) -> f64 {
    2f64.powf(-5.0 * (alpha.0 + alpha.1))
}

/// The element `floor(q_{i+1}/2) r_i` (or `r_i` when `q_{i+1} < 8`), as a residue mod `N`.
pub fn hard_element(exp: &EuclidExpansion, i: usize) -> Result<u64> {
    if i > exp.k {
        return Err(Error::InvalidParameter(format!("index {i} is beyond K = {}", exp.k)));
    }
    let i = i as i64;
    let q = exp.q(i + 1);
    let r = exp.r(i) as u128;
    let x = if q >= 8 { (q / 2) as u128 * r } else { r };
    Ok((x % exp.n as u128) as u64)
}

/// Lower bound `2^{-5(a1 + a2)} min(Phi_{a1}(r_{i-1}), Phi_{a2}(m_{i+1}))` on
/// the cost of [`hard_element`].
pub fn hard_element_bound(exp: &EuclidExpansion, i: usize, alpha: (f64, f64)) -> f64 {
    let i = i as i64;
    sandwich_constant(alpha) * phi(alpha.0, exp.r(i - 1)).min(phi(alpha.1, exp.m(i + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_by_three() {
        let e = expand(10, 3).unwrap();
        assert_eq!(e.q, vec![3, 3]);
        assert_eq!(e.eps[0], -1);
        assert_eq!(e.r, vec![10, 3, 1, 0]);
        assert_eq!(e.m, vec![0, 1, 3, 10]);
        assert_eq!(e.k, 1);
        assert!(e.violations().is_empty());
        // 3 * 3 = 9 = -1 mod 10
        assert_eq!(step_length(&e, 1).unwrap(), 3);
        assert_eq!(step_length(&e, 0).unwrap(), 1);
        assert!(step_length(&e, 2).is_err());
    }

    #[test]
    fn quintic_example_with_t_six() {
        // 8436 = 6 * 1368 + 228, 1368 = 6 * 228
        let e = expand(8436, 1368).unwrap();
        assert_eq!((e.q(1), e.eps(1), e.r(1)), (6, -1, 228));
        assert_eq!((e.q(2), e.r(2)), (6, 0));
        assert_eq!((e.m(1), e.m(2)), (6, 37));
        assert_eq!(6 * 1368 % 8436, 8436 - 228);
    }

    #[test]
    fn divisor_case() {
        for t in 2..7u64 {
            let s = (t * t + 1) * (t * t + 2);
            let e = expand(t * s, s).unwrap();
            assert_eq!((e.k, e.q(1), e.m(1)), (0, t, t));
        }
    }

    #[test]
    fn normalization_and_errors() {
        assert_eq!(expand(10, 7).unwrap(), expand(10, 3).unwrap());
        assert!(expand(1, 1).is_err());
        assert!(expand(10, 0).is_err());
        assert!(expand(10, 20).is_err());
        let one = expand(10, 1).unwrap();
        assert_eq!((one.k, one.q(1), one.r(1), one.m(1)), (0, 10, 0, 10));
    }

    #[test]
    fn formula_by_hand() {
        let e = expand(10, 3).unwrap();
        assert_eq!(diameter_formula(&e, (1.0, 1.0)).unwrap(), (3.0, 0));
    }

    #[test]
    fn formula_for_divisors() {
        let (n, s) = (60u64, 12u64);
        let e = expand(n, s).unwrap();
        let (a1, a2) = (0.7, 1.3);
        let expected = (n as f64).powf(a1).min((s as f64).powf(a1).max(((n / s) as f64).powf(a2)));
        assert_eq!(diameter_formula(&e, (a1, a2)).unwrap().0, expected);
    }

    #[test]
    fn hard_elements() {
        let e = expand(10, 3).unwrap();
        assert_eq!(hard_element(&e, 1).unwrap(), 1);
        // q_1 = 10 >= 8
        let e = expand(100, 10).unwrap();
        assert_eq!(e.q(1), 10);
        assert_eq!(hard_element(&e, 0).unwrap(), 50);
    }
}
