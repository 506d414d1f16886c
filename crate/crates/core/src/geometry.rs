//! Ball volumes of the quasi-norm.
//!
//! `V(r) = #{g : cost(g) <= r} / |G|` is a right-continuous step function
//! that jumps only at cost values, so suprema and infima over all real radii
//! reduce to finitely many one-sided limits at the breakpoints.

use serde::{Deserialize, Serialize};

use crate::cost::CostTable;
use crate::error::{Error, Result};
use crate::group::Element;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeProfile {
    /// Distinct cost values, increasing; the first is 0.
    pub radii: Vec<f64>,
    /// `#B(e, r)` at each radius.
    pub counts: Vec<usize>,
    pub order: usize,
}

impl VolumeProfile {
    pub fn new(table: &CostTable) -> Self {
        let hist = table.histogram();
        let mut radii = Vec::with_capacity(hist.len());
        let mut counts = Vec::with_capacity(hist.len());
        let mut total = 0;
        for (c, n) in hist {
            total += n;
            radii.push(c);
            counts.push(total);
        }
        VolumeProfile { radii, counts, order: total }
    }

    /// `#{g : cost(g) <= r}`.
    pub fn count(&self, r: f64) -> usize {
        match self.radii.partition_point(|&b| b <= r) {
            0 => 0,
            i => self.counts[i - 1],
        }
    }

    /// `#{g : cost(g) < r}`.
    pub fn count_below(&self, r: f64) -> usize {
        match self.radii.partition_point(|&b| b < r) {
            0 => 0,
            i => self.counts[i - 1],
        }
    }

    /// `V(e, r)`, the normalized volume.
    pub fn volume(&self, r: f64) -> f64 {
        self.count(r) as f64 / self.order as f64
    }

    pub fn diameter(&self) -> f64 {
        *self.radii.last().unwrap_or(&0.0)
    }

    pub fn normalized(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| c as f64 / self.order as f64).collect()
    }
}

pub fn volume_profile(table: &CostTable) -> VolumeProfile {
    VolumeProfile::new(table)
}

/// `sup_{0 < r <= D} V(2r) / V(r)`, computed exactly.
///
/// On `[b_i, b_{i+1})` the denominator is constant and the numerator is
/// largest as `r -> b_{i+1}`, where it equals `#{cost < 2 b_{i+1}}`.
pub fn doubling_constant(profile: &VolumeProfile) -> f64 {
    let mut best = 1.0f64;
    for i in 0..profile.radii.len().saturating_sub(1) {
        let ratio = profile.count_below(2.0 * profile.radii[i + 1]) as f64 / profile.counts[i] as f64;
        best = best.max(ratio);
    }
    best
}

/// `min V(r) / (V(R) ((r + 1)/(R + 1))^d)` over breakpoint pairs `r <= R`,
/// with `d = log2 A`.
pub fn moderate_growth_check(profile: &VolumeProfile, a: f64) -> Result<f64> {
    let measured = doubling_constant(profile);
    if a < measured * (1.0 - 1e-12) {
        return Err(Error::InvalidParameter(format!("A = {a} is below the doubling constant {measured}")));
    }
    let d = a.log2();
    let mut worst = f64::INFINITY;
    for (j, &big) in profile.radii.iter().enumerate() {
        for (i, &small) in profile.radii[..=j].iter().enumerate() {
            let rhs = profile.counts[j] as f64 * ((small + 1.0) / (big + 1.0)).powf(d);
            worst = worst.min(profile.counts[i] as f64 / rhs);
        }
    }
    Ok(worst)
}

/// Outcome of the reverse-doubling scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReverseDoubling {
    /// `inf_{1 <= R <= D} V(R) / V(R / 128)`.
    pub min_ratio: f64,
    /// Whether `min_ratio >= 2`.
    pub holds: bool,
    /// Largest `c` with `V(R)/V(r) >= c (R/r)^{1/7}` for all `1 <= r <= R <= D`.
    pub power_constant: f64,
}

/// Checks `V(R) >= 2 V(R/2^7)` for all `1 <= R <= D` and measures the
/// constant of the iterated form `V(R)/V(r) >= c (R/r)^{1/7}`.
pub fn reverse_doubling_check(profile: &VolumeProfile) -> ReverseDoubling {
    let b = &profile.radii;
    let d = profile.diameter();
    let mut min_ratio = f64::INFINITY;
    for i in 0..b.len() {
        // R ranges over [b_i, b_{i+1}) intersected with [1, D]
        let upper = if i + 1 < b.len() { b[i + 1] } else { d };
        if (i + 1 < b.len() && upper <= 1.0) || upper < 1.0 {
            continue;
        }
        let denom = if i + 1 < b.len() {
            profile.count_below(upper / 128.0)
        } else {
            profile.count(d / 128.0)
        };
        min_ratio = min_ratio.min(profile.counts[i] as f64 / denom as f64);
    }
    if min_ratio.is_infinite() {
        min_ratio = 2.0f64.max(profile.order as f64);
    }

    // the ratio is smallest with r at the left end of its step and R at the right end of its step
    let mut power_constant = f64::INFINITY;
    for i in 0..b.len() {
        let r = b[i].max(1.0);
        if r > d || (i + 1 < b.len() && b[i + 1] <= 1.0) {
            continue;
        }
        for j in i..b.len() {
            let big = if j + 1 < b.len() { b[j + 1] } else { d };
            if big < r {
                continue;
            }
            let ratio = profile.counts[j] as f64 / profile.counts[i] as f64;
            power_constant = power_constant.min(ratio / (big / r).powf(1.0 / 7.0));
        }
    }
    if power_constant.is_infinite() {
        power_constant = 1.0;
    }
    ReverseDoubling { min_ratio, holds: min_ratio >= 2.0, power_constant }
}

/// First element in enumeration order with `R/4 <= cost(g) <= R`.
pub fn annulus_witness(table: &CostTable, radius: f64) -> Result<Element> {
    let d = table.diameter();
    if !(1.0..d).contains(&radius) {
        return Err(Error::InvalidParameter(format!("radius {radius} must lie in [1, D) with D = {d}")));
    }
    table
        .costs()
        .iter()
        .position(|&c| radius / 4.0 <= c && c <= radius)
        .map(|i| table.group().element_at(i))
        .ok_or_else(|| Error::InvalidParameter(format!("no element with cost in [{}, {radius}]", radius / 4.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::cost_table_abelian;
    use crate::group::{cyclic_abs, WalkSpec};

    fn table(group: &str, gens: &str, alpha: &str) -> CostTable {
        cost_table_abelian(&WalkSpec::parse(group, gens, alpha).unwrap()).unwrap()
    }

    #[test]
    fn cycle_profile() {
        let p = volume_profile(&table("Z/10", "1", "1"));
        assert_eq!(p.count(0.0), 1);
        assert_eq!(p.count(2.0), 5);
        assert_eq!(p.count(2.5), 5);
        assert_eq!(p.count(5.0), 10);
        assert_eq!(p.count(100.0), 10);
        assert_eq!(p.count_below(2.0), 3);
        assert!((p.volume(2.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn cycle_doubling() {
        let p = volume_profile(&table("Z/10", "1", "1"));
        // V(2)/V(1) = 5/3 at r = 1; just below r = 1 the ratio is #{cost < 2}/1 = 3
        assert!(doubling_constant(&p) >= 5.0 / 3.0);
        assert_eq!(doubling_constant(&p), 3.0);
        let trivial = volume_profile(&table("Z/1", "0", "1"));
        assert_eq!(doubling_constant(&trivial), 1.0);
    }

    #[test]
    fn moderate_growth_on_two_generators() {
        let p = volume_profile(&table("Z/100", "1,10", "1,1"));
        let a = doubling_constant(&p);
        assert!(moderate_growth_check(&p, a).unwrap() >= 1.0 - 1e-9);
        assert!(moderate_growth_check(&p, 1e6).unwrap() >= 1.0);
        assert!(moderate_growth_check(&p, a / 2.0).is_err());
    }

    #[test]
    fn reverse_doubling_on_long_cycle() {
        let p = volume_profile(&table("Z/1024", "1", "1"));
        let r = reverse_doubling_check(&p);
        assert!(r.holds, "{r:?}");
        assert!(r.power_constant > 0.0);
        let d = p.diameter();
        assert!(p.count(d) as f64 / p.count(d / 128.0) as f64 >= 2.0);
    }

    #[test]
    fn annulus_witnesses() {
        let t = table("Z/100", "1", "1");
        let g = annulus_witness(&t, 50.0 - 1e-9).unwrap();
        let c = cyclic_abs(g.coords()[0], 100);
        assert!((13..=50).contains(&c));
        let one = annulus_witness(&t, 1.0).unwrap();
        assert_eq!(t.cost(&one), 1.0);
        assert!(annulus_witness(&t, 50.0).is_err());
        assert!(annulus_witness(&t, 0.5).is_err());
    }
}
