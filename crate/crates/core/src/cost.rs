//! The long-jump quasi-norm.
//!
//! The cost of `g` is the minimum, over words `w` representing `g`, of
//! `max_i Phi_{alpha_i}(deg_i(w))`, where `deg_i(w)` counts the letters
//! `s_i^{+1}` and `s_i^{-1}` in `w`. Since `Phi` is increasing, only the
//! Pareto-minimal degree vectors of each element matter, and those do not
//! depend on the exponents. Both constructions below therefore compute a
//! [`DegreeFrontier`] first; a [`CostTable`] is a frontier evaluated at one
//! exponent tuple.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{cyclic_abs, Element, GeneratorTables, GroupSpec, WalkSpec, DEFAULT_GROUP_CAP};

/// Default per-element label budget of the Pareto search.
pub const DEFAULT_LABEL_BUDGET: usize = 64;

/// `Phi_alpha(x)`: `x^alpha` for `alpha < 2`, `x^2 / ln x` at `alpha = 2`, `x^2` above.
///
/// At `alpha = 2` the values at 0 and 1 are set to 0 and 1.
pub fn phi_alpha(alpha: f64, x: u64) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidAlpha(alpha));
    }
    Ok(phi(alpha, x))
}

pub(crate) fn phi(alpha: f64, x: u64) -> f64 {
    let xf = x as f64;
    if alpha < 2.0 {
        xf.powf(alpha)
    } else if alpha == 2.0 {
        match x {
            0 => 0.0,
            1 => 1.0,
            _ => xf * xf / xf.ln(),
        }
    } else {
        xf * xf
    }
}

/// `Phi_alpha` at a real argument, used by the closed-form estimates.
pub(crate) fn phi_real(alpha: f64, x: f64) -> f64 {
    if alpha < 2.0 {
        x.powf(alpha)
    } else if alpha == 2.0 {
        if x <= 1.0 {
            x
        } else {
            x * x / x.ln()
        }
    } else {
        x * x
    }
}

/// Pareto-minimal degree vectors of every group element.
#[derive(Clone, Debug)]
pub struct DegreeFrontier {
    walk: WalkSpec,
    // labels of element x, flattened with stride k and sorted lexicographically
    labels: Vec<Vec<u32>>,
}

fn dominates(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Inserts `cand` unless an existing label dominates it; drops labels it dominates.
fn pareto_insert(labels: &mut Vec<u32>, k: usize, cand: &[u32]) -> bool {
    if labels.chunks_exact(k).rev().any(|l| dominates(l, cand)) {
        return false;
    }
    if labels.chunks_exact(k).any(|l| dominates(cand, l)) {
        let kept: Vec<u32> =
            labels.chunks_exact(k).filter(|l| !dominates(cand, l)).flatten().copied().collect();
        *labels = kept;
    }
    labels.extend_from_slice(cand);
    true
}

fn sort_labels(labels: &mut Vec<u32>, k: usize) {
    let mut rows: Vec<&[u32]> = labels.chunks_exact(k).collect();
    rows.sort_unstable();
    *labels = rows.concat();
}

/// Centered residues `0, 1, -1, 2, -2, ...` of `Z/n`, each once, as
/// `(signed exponent, |exponent|)`.
fn centered(n: u64) -> Vec<(i64, u32)> {
    let mut out = vec![(0i64, 0u32)];
    for d in 1..=n / 2 {
        out.push((d as i64, d as u32));
        if 2 * d != n {
            out.push((-(d as i64), d as u32));
        }
    }
    out
}

impl DegreeFrontier {
    /// Exact frontier for an abelian group by enumerating exponent vectors.
    ///
    /// In an abelian group a word only matters through its exponent sums, and a
    /// minimal word uses each generator in a single direction. The generators
    /// other than the one of largest order are enumerated as an outer lattice;
    /// the largest-order generator is swept along its coset.
    pub fn abelian(walk: &WalkSpec, cap: u64) -> Result<Self> {
        let group = walk.group();
        if !group.is_abelian() {
            return Err(Error::NotAbelian(group.to_string()));
        }
        let order = group.check_cap(cap)?;
        let k = walk.k();
        let orders = walk.orders();
        let inner = (0..k).rev().max_by_key(|&i| orders[i]).unwrap_or(0);
        let outer: Vec<usize> = (0..k).filter(|&i| i != inner).collect();
        let steps: Vec<usize> = walk.gens().iter().map(|g| group.index_of(g)).collect();

        // outer lattice points sorted by their first coordinate's degree, so the
        // common two-generator case rejects dominated candidates at the tail
        let mut lattice: Vec<(usize, Vec<u32>)> = vec![(0, vec![0; k])];
        for &i in &outer {
            let residues = centered(orders[i]);
            let mut next = Vec::with_capacity(lattice.len() * residues.len());
            for (base, degs) in &lattice {
                for &(e, d) in &residues {
                    let g = group.pow(&walk.gens()[i], e)?;
                    let mut degs = degs.clone();
                    degs[i] = d;
                    next.push((group.mul_index(*base, group.index_of(&g)), degs));
                }
            }
            lattice = next;
        }
        lattice.sort_by(|a, b| a.1.cmp(&b.1));

        let inner_step = steps[inner];
        let inner_back = group.inv_index(inner_step);
        let half = orders[inner] / 2;
        let mut labels = vec![Vec::new(); order];
        let mut cand = vec![0u32; k];
        for (base, degs) in &lattice {
            cand.copy_from_slice(degs);
            let (mut fwd, mut back) = (*base, *base);
            cand[inner] = 0;
            pareto_insert(&mut labels[fwd], k, &cand);
            for d in 1..=half {
                fwd = group.mul_index(fwd, inner_step);
                back = group.mul_index(back, inner_back);
                cand[inner] = d as u32;
                pareto_insert(&mut labels[fwd], k, &cand);
                if fwd != back {
                    pareto_insert(&mut labels[back], k, &cand);
                }
            }
        }
        for l in &mut labels {
            sort_labels(l, k);
        }
        Ok(DegreeFrontier { walk: walk.clone(), labels })
    }

    /// Exact frontier for any supported group by a label-setting search.
    ///
    /// Labels are expanded in order of total word length. A label whose
    /// degree vector is dominated by another label at the same element can
    /// be discarded, since every extension of it is dominated as well. In this
    /// order a stored label is never dominated later, so labels are final
    /// once stored. Degrees are capped at `|G|`; more than `budget` labels at
    /// one element is an error.
    pub fn pareto(walk: &WalkSpec, cap: u64, budget: usize) -> Result<Self> {
        let tables = GeneratorTables::new(walk, cap)?;
        let order = tables.order();
        let k = walk.k();
        let degree_cap = order as u32;
        let mut labels = vec![Vec::new(); order];
        labels[0] = vec![0u32; k];
        let mut frontier: Vec<(u32, u32)> = vec![(0, 0)];
        let mut cand = vec![0u32; k];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &(x, slot) in &frontier {
                let (x, slot) = (x as usize, slot as usize);
                for i in 0..k {
                    for inverse in [false, true] {
                        let y = tables.step(x, i, inverse);
                        cand.copy_from_slice(&labels[x][slot * k..(slot + 1) * k]);
                        cand[i] += 1;
                        if cand[i] > degree_cap {
                            continue;
                        }
                        let target = &mut labels[y];
                        if target.chunks_exact(k).any(|l| dominates(l, &cand)) {
                            continue;
                        }
                        debug_assert!(!target.chunks_exact(k).any(|l| dominates(&cand, l)));
                        let new_slot = target.len() / k;
                        if new_slot >= budget {
                            return Err(Error::LabelOverflow { element: y, budget });
                        }
                        target.extend_from_slice(&cand);
                        next.push((y as u32, new_slot as u32));
                    }
                }
            }
            frontier = next;
        }
        for l in &mut labels {
            sort_labels(l, k);
        }
        Ok(DegreeFrontier { walk: walk.clone(), labels })
    }

    pub fn walk(&self) -> &WalkSpec {
        &self.walk
    }

    /// Minimal degree vectors of the element with enumeration index `index`.
    pub fn labels(&self, index: usize) -> impl Iterator<Item = &[u32]> {
        self.labels[index].chunks_exact(self.walk.k())
    }

    pub fn max_labels(&self) -> usize {
        self.labels.iter().map(|l| l.len() / self.walk.k()).max().unwrap_or(0)
    }

    /// Cost table at the walk's own exponents.
    pub fn table(&self) -> CostTable {
        self.evaluate_unchecked(self.walk.clone())
    }

    /// Cost table at another exponent tuple of the same length.
    pub fn evaluate(&self, alpha: &[f64]) -> Result<CostTable> {
        Ok(self.evaluate_unchecked(self.walk.with_alpha(alpha.to_vec())?))
    }

    fn evaluate_unchecked(&self, walk: WalkSpec) -> CostTable {
        let k = walk.k();
        let max_deg = self.labels.iter().flatten().copied().max().unwrap_or(0) as usize;
        let phis: Vec<Vec<f64>> =
            walk.alpha().iter().map(|&a| (0..=max_deg as u64).map(|d| phi(a, d)).collect()).collect();
        let mut costs = Vec::with_capacity(self.labels.len());
        let mut witness = Vec::with_capacity(self.labels.len());
        for labels in &self.labels {
            let mut best = f64::INFINITY;
            let mut best_label: &[u32] = &[];
            for l in labels.chunks_exact(k) {
                let c = l.iter().zip(&phis).map(|(&d, t)| t[d as usize]).fold(0.0, f64::max);
                if c < best {
                    best = c;
                    best_label = l;
                }
            }
            costs.push(best);
            witness.push(best_label.to_vec());
        }
        CostTable::new(walk, costs, witness)
    }
}

/// Cost and witness degree vector of every element.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CostTable {
    walk: WalkSpec,
    costs: Vec<f64>,
    witness: Vec<Vec<u32>>,
    diameter: f64,
    argmax: usize,
}

impl CostTable {
    fn new(walk: WalkSpec, costs: Vec<f64>, witness: Vec<Vec<u32>>) -> Self {
        let mut argmax = 0;
        for (i, &c) in costs.iter().enumerate() {
            if c > costs[argmax] {
                argmax = i;
            }
        }
        let diameter = costs[argmax];
        CostTable { walk, costs, witness, diameter, argmax }
    }

    pub fn walk(&self) -> &WalkSpec {
        &self.walk
    }

    pub fn group(&self) -> &GroupSpec {
        self.walk.group()
    }

    pub fn len(&self) -> usize {
        self.costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    /// Costs indexed by the group's enumeration order.
    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    pub fn cost(&self, g: &Element) -> f64 {
        self.costs[self.group().index_of(g)]
    }

    pub fn witness(&self, index: usize) -> &[u32] {
        &self.witness[index]
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// First element of maximal cost in enumeration order.
    pub fn argmax(&self) -> Element {
        self.group().element_at(self.argmax)
    }

    pub fn argmax_index(&self) -> usize {
        self.argmax
    }

    /// Number of elements per distinct cost value, in increasing cost order.
    pub fn histogram(&self) -> Vec<(f64, usize)> {
        let mut sorted = self.costs.clone();
        sorted.sort_by(f64::total_cmp);
        let mut out: Vec<(f64, usize)> = Vec::new();
        for c in sorted {
            match out.last_mut() {
                Some((v, n)) if *v == c => *n += 1,
                _ => out.push((c, 1)),
            }
        }
        out
    }
}

/// Cost table of an abelian walk by exponent-lattice enumeration.
pub fn cost_table_abelian(walk: &WalkSpec) -> Result<CostTable> {
    Ok(DegreeFrontier::abelian(walk, DEFAULT_GROUP_CAP)?.table())
}

/// Cost table of any walk by Pareto label search.
pub fn cost_table_pareto(walk: &WalkSpec) -> Result<CostTable> {
    Ok(DegreeFrontier::pareto(walk, DEFAULT_GROUP_CAP, DEFAULT_LABEL_BUDGET)?.table())
}

/// Frontier by the fastest exact route available for the group.
pub fn degree_frontier(walk: &WalkSpec) -> Result<DegreeFrontier> {
    if walk.group().is_abelian() {
        DegreeFrontier::abelian(walk, DEFAULT_GROUP_CAP)
    } else {
        DegreeFrontier::pareto(walk, DEFAULT_GROUP_CAP, DEFAULT_LABEL_BUDGET)
    }
}

/// Cost table by the fastest exact route available for the group.
pub fn cost_table(walk: &WalkSpec) -> Result<CostTable> {
    Ok(degree_frontier(walk)?.table())
}

/// `(D, argmax)`.
pub fn diameter(walk: &WalkSpec) -> Result<(f64, Element)> {
    let table = cost_table(walk)?;
    Ok((table.diameter(), table.argmax()))
}

/// Diameter of the same generators with every exponent equal to 1.
pub fn word_diameter(walk: &WalkSpec) -> Result<u64> {
    let table = degree_frontier(walk)?.evaluate(&vec![1.0; walk.k()])?;
    Ok(table.diameter() as u64)
}

fn standard_heisenberg(walk: &WalkSpec, expected: &[[i64; 3]]) -> Result<u64> {
    let GroupSpec::Heisenberg3(n) = *walk.group() else {
        return Err(Error::WrongShape(format!("{} is not a Heisenberg group", walk.group())));
    };
    let group = walk.group();
    let want = expected.iter().map(|c| group.element(c)).collect::<Result<Vec<_>>>()?;
    if walk.gens() != want.as_slice() {
        return Err(Error::WrongShape("generators are not the expected Heisenberg tuple".into()));
    }
    Ok(n)
}

/// Closed-form comparison target for `H3(Z/N)` with `S = (s1, s2, s3)`:
/// `max(|x|^a1, |y|^a2, min(|z|^a3, |z|^{a1 a2 / (a1 + a2)}))`.
pub fn heisenberg_cost_estimate(walk: &WalkSpec, g: &Element) -> Result<f64> {
    let n = standard_heisenberg(walk, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]])?;
    if !walk.group().contains(g) {
        return Err(Error::ElementMismatch { element: g.to_string(), group: walk.group().to_string() });
    }
    let a = walk.alpha();
    let c = g.coords();
    let (x, y, z) = (cyclic_abs(c[0], n) as f64, cyclic_abs(c[1], n) as f64, cyclic_abs(c[2], n) as f64);
    let mixed = a[0] * a[1] / (a[0] + a[1]);
    let central = phi_real(a[2], z).min(z.powf(mixed));
    Ok(phi_real(a[0], x).max(phi_real(a[1], y)).max(central))
}

/// Splits a residue of `Z/t^2` as `m = y t + x` with `m` taken in
/// `(-t^2/2, t^2/2]` and `|x| <= t/2`. Returns `(|x|, |y|)`.
pub fn split_digits(m: u64, t: u64) -> (u64, u64) {
    let n = (t * t) as i64;
    let mut m = (m as i64).rem_euclid(n);
    if 2 * m > n {
        m -= n;
    }
    let t = t as i64;
    let y = (2 * m + t).div_euclid(2 * t);
    let x = m - y * t;
    (x.unsigned_abs(), y.unsigned_abs())
}

/// Closed-form comparison target for `H3(Z/t^2)` with
/// `S = (s1, s1^t, s2, s3)`.
pub fn heisenberg_split_cost_estimate(walk: &WalkSpec, g: &Element) -> Result<f64> {
    let GroupSpec::Heisenberg3(n) = *walk.group() else {
        return Err(Error::WrongShape(format!("{} is not a Heisenberg group", walk.group())));
    };
    let t = (n as f64).sqrt().round() as u64;
    if t * t != n {
        return Err(Error::WrongShape(format!("N = {n} is not a perfect square")));
    }
    standard_heisenberg(walk, &[[1, 0, 0], [t as i64, 0, 0], [0, 1, 0], [0, 0, 1]])?;
    if !walk.group().contains(g) {
        return Err(Error::ElementMismatch { element: g.to_string(), group: walk.group().to_string() });
    }
    let a = walk.alpha();
    let c = g.coords();
    let (x1, y1) = split_digits(c[0], t);
    let (x3, y3) = split_digits(c[2], t);
    let m2 = cyclic_abs(c[1], n) as f64;
    let m3 = cyclic_abs(c[2], n) as f64;
    let mixed = a[0] * a[2] / (a[0] + a[2]);
    let central = phi_real(a[3], m3).min((x3.max(y3) as f64).powf(mixed));
    Ok(phi_real(a[0], x1.max(y1) as f64).max(phi_real(a[2], m2)).max(central))
}

/// Comparison target `max(|x1|, Phi_2(|x2|))` for `Z/t^2` with `S = (1, t)`,
/// using the decomposition of [`split_digits`].
pub fn phi_example_estimate(t: u64, g: u64) -> f64 {
    let (x1, x2) = split_digits(g, t);
    (x1 as f64).max(phi(2.0, x2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn walk(group: &str, gens: &str, alpha: &str) -> WalkSpec {
        WalkSpec::parse(group, gens, alpha).unwrap()
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi_alpha(1.0, 7).unwrap(), 7.0);
        assert_eq!(phi_alpha(2.0, 8).unwrap(), 64.0 / 8f64.ln());
        assert_eq!(phi_alpha(3.0, 5).unwrap(), 25.0);
        assert_eq!(phi_alpha(2.0, 0).unwrap(), 0.0);
        assert_eq!(phi_alpha(2.0, 1).unwrap(), 1.0);
        assert!(phi_alpha(0.0, 3).is_err());
        for a in [0.3, 1.0, 1.7, 2.0, 2.5] {
            for x in 0..200u64 {
                assert!(phi(a, x + 1) > phi(a, x), "alpha {a} x {x}");
            }
        }
    }

    #[test]
    fn ten_with_one_and_three() {
        let w = walk("Z/10", "1,3", "1,1");
        let t = cost_table_abelian(&w).unwrap();
        let g = w.group();
        assert_eq!(t.cost(&g.element(&[9]).unwrap()), 1.0);
        assert_eq!(t.cost(&g.element(&[5]).unwrap()), 2.0);
        assert_eq!(t.cost(&g.identity()), 0.0);
        assert_eq!(t.witness(0), &[0, 0]);
        assert_eq!(t.diameter(), 2.0);
        assert_eq!(cost_table_pareto(&w).unwrap(), t);
    }

    #[test]
    fn single_generator_cycle() {
        for n in [1u64, 2, 7, 10, 33] {
            for alpha in [0.5, 1.0, 1.5] {
                let w = WalkSpec::new(
                    GroupSpec::cyclic(n).unwrap(),
                    vec![GroupSpec::cyclic(n).unwrap().element(&[1]).unwrap()],
                    vec![alpha],
                )
                .unwrap();
                let t = cost_table_abelian(&w).unwrap();
                for x in 0..n {
                    assert_eq!(t.costs()[x as usize], (cyclic_abs(x, n) as f64).powf(alpha));
                }
                assert_eq!(t.diameter(), ((n / 2) as f64).powf(alpha));
                assert_eq!(t.argmax().coords(), &[n / 2]);
            }
        }
    }

    #[test]
    fn heisenberg_commutator_cost() {
        let w = walk("H3/5", "(1,0,0),(0,1,0)", "1,1");
        let t = cost_table_pareto(&w).unwrap();
        let z = w.group().element(&[0, 0, 1]).unwrap();
        assert_eq!(t.cost(&z), 2.0);
        assert_eq!(t.witness(w.group().index_of(&z)), &[2, 2]);

        let w3 = walk("H3/3", "(1,0,0),(0,1,0),(0,0,1)", "1,1,1");
        let t3 = cost_table_pareto(&w3).unwrap();
        assert_eq!(t3.cost(&w3.group().element(&[0, 0, 1]).unwrap()), 1.0);
    }

    #[test]
    fn non_abelian_rejected_by_lattice_route() {
        let w = walk("H3/3", "(1,0,0),(0,1,0)", "1,1");
        assert!(matches!(cost_table_abelian(&w), Err(Error::NotAbelian(_))));
    }

    #[test]
    fn label_budget_is_enforced() {
        let w = walk("H3/5", "(1,0,0),(0,1,0)", "1,1");
        assert!(matches!(DegreeFrontier::pareto(&w, DEFAULT_GROUP_CAP, 1), Err(Error::LabelOverflow { .. })));
    }

    #[test]
    fn word_diameters() {
        assert_eq!(word_diameter(&walk("Z/10", "1", "1")).unwrap(), 5);
        assert_eq!(word_diameter(&walk("Z/10", "1,3", "1,1")).unwrap(), 2);
        let w = walk("Z/37", "1,6", "0.5,0.5");
        let d_s = word_diameter(&w).unwrap();
        assert_eq!(diameter(&w).unwrap().0, (d_s as f64).powf(0.5));
    }

    #[test]
    fn heisenberg_estimates() {
        let w = walk("H3/5", "(1,0,0),(0,1,0),(0,0,1)", "1,1,1");
        let g = w.group();
        assert_eq!(heisenberg_cost_estimate(&w, &g.identity()).unwrap(), 0.0);
        let est = heisenberg_cost_estimate(&w, &g.element(&[0, 0, 2]).unwrap()).unwrap();
        assert!((est - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(heisenberg_cost_estimate(&w, &g.element(&[2, 0, 0]).unwrap()).unwrap(), 2.0);
        let pair = walk("H3/5", "(1,0,0),(0,1,0)", "1,1");
        assert!(matches!(heisenberg_cost_estimate(&pair, &g.identity()), Err(Error::WrongShape(_))));
    }

    #[test]
    fn split_estimates() {
        let w = walk("H3/9", "(1,0,0),(3,0,0),(0,1,0),(0,0,1)", "1.3,1.3,1,1");
        let g = w.group();
        assert_eq!(heisenberg_split_cost_estimate(&w, &g.identity()).unwrap(), 0.0);
        // 6 = -3 in Z/9, which is one step of s1^3
        assert_eq!(heisenberg_split_cost_estimate(&w, &g.element(&[6, 0, 0]).unwrap()).unwrap(), 1.0);
        assert_eq!(heisenberg_split_cost_estimate(&w, &g.element(&[4, 0, 0]).unwrap()).unwrap(), 1.0);
        let bad = walk("H3/8", "(1,0,0),(0,1,0),(0,0,1)", "1,1,1");
        assert!(heisenberg_split_cost_estimate(&bad, &bad.group().identity()).is_err());
    }

    #[test]
    fn digit_split() {
        assert_eq!(split_digits(4, 3), (1, 1));
        assert_eq!(split_digits(6, 3), (0, 1));
        assert_eq!(split_digits(0, 5), (0, 0));
        for t in 2..9u64 {
            for m in 0..t * t {
                let (x, y) = split_digits(m, t);
                assert!(2 * x <= t && y <= t, "t {t} m {m}");
            }
        }
    }

    #[test]
    fn histogram_counts_everything() {
        let t = cost_table_abelian(&walk("Z/10", "1", "1")).unwrap();
        assert_eq!(t.histogram(), vec![(0.0, 1), (1.0, 2), (2.0, 2), (3.0, 2), (4.0, 2), (5.0, 1)]);
    }
}
