//! Exact arithmetic on the finite nilpotent groups used throughout the crate.
//!
//! Three families are supported: cyclic groups `Z/N`, finite products of
//! cyclic groups, and the discrete Heisenberg group `H3(Z/N)` of upper
//! unitriangular 3x3 matrices. Elements are tuples of reduced residues.
//! A Heisenberg element `(x, y, z)` stands for the matrix
//!
//! ```text
//! [1 x z]
//! [0 1 y]
//! [0 0 1]
//! ```
//!
//! so that `(x, y, z) * (x', y', z') = (x + x', y + y', z + z' + x y')`.
//!
//! Every group also has a dense indexing: the lexicographic enumeration
//! order of its coordinate tuples. Most of the numerical code works on
//! these indices instead of on [`Element`] values.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group order that may be fully enumerated unless a caller
/// raises the cap explicitly.
pub const DEFAULT_GROUP_CAP: u64 = 1_000_000;

/// One of the supported finite nilpotent groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupSpec {
    Cyclic(u64),
    ProductOfCyclics(Vec<u64>),
    Heisenberg3(u64),
}

/// A group element as a tuple of reduced residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element(Vec<u64>);

impl Element {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Distance from `v` to zero in `Z/n`, i.e. `min(v, n - v)` for a reduced `v`.
pub fn cyclic_abs(v: u64, n: u64) -> u64 {
    let v = v % n;
    v.min(n - v)
}

fn reduce(v: i128, n: u64) -> u64 {
    v.rem_euclid(n as i128) as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl GroupSpec {
    pub fn cyclic(n: u64) -> Result<Self> {
        let g = GroupSpec::Cyclic(n);
        g.validate()?;
        Ok(g)
    }

    pub fn product(moduli: Vec<u64>) -> Result<Self> {
        let g = GroupSpec::ProductOfCyclics(moduli);
        g.validate()?;
        Ok(g)
    }

    pub fn heisenberg(n: u64) -> Result<Self> {
        let g = GroupSpec::Heisenberg3(n);
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let moduli = self.moduli();
        if moduli.is_empty() {
            return Err(Error::InvalidParameter("a product needs at least one factor".into()));
        }
        if moduli.contains(&0) {
            return Err(Error::InvalidParameter(format!("{self}: every modulus must be at least 1")));
        }
        Ok(())
    }

    /// Moduli of the coordinate tuple.
    pub fn moduli(&self) -> Vec<u64> {
        match self {
            GroupSpec::Cyclic(n) => vec![*n],
            GroupSpec::ProductOfCyclics(ns) => ns.clone(),
            GroupSpec::Heisenberg3(n) => vec![*n, *n, *n],
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            GroupSpec::Cyclic(_) => 1,
            GroupSpec::ProductOfCyclics(ns) => ns.len(),
            GroupSpec::Heisenberg3(_) => 3,
        }
    }

    pub fn order(&self) -> u128 {
        self.moduli().iter().map(|&n| n as u128).product()
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            GroupSpec::Heisenberg3(n) => *n == 1,
            _ => true,
        }
    }

    /// Fails with [`Error::CapExceeded`] when the group is too large to enumerate.
    pub fn check_cap(&self, cap: u64) -> Result<usize> {
        let order = self.order();
        if order > cap as u128 {
            return Err(Error::CapExceeded { order, cap });
        }
        Ok(order as usize)
    }

    pub fn identity(&self) -> Element {
        Element(vec![0; self.rank()])
    }

    /// Builds an element from arbitrary integer coordinates, reducing each.
    pub fn element(&self, coords: &[i64]) -> Result<Element> {
        let moduli = self.moduli();
        if coords.len() != moduli.len() {
            return Err(Error::ElementMismatch {
                element: format!("{coords:?}"),
                group: self.to_string(),
            });
        }
        Ok(Element(
            coords.iter().zip(&moduli).map(|(&c, &n)| reduce(c as i128, n)).collect(),
        ))
    }

    pub fn contains(&self, g: &Element) -> bool {
        let moduli = self.moduli();
        g.0.len() == moduli.len() && g.0.iter().zip(&moduli).all(|(c, n)| c < n)
    }

    fn check(&self, g: &Element) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::ElementMismatch { element: g.to_string(), group: self.to_string() })
        }
    }

    pub fn mul(&self, g: &Element, h: &Element) -> Result<Element> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul_unchecked(g, h))
    }

    fn mul_unchecked(&self, g: &Element, h: &Element) -> Element {
        match self {
            GroupSpec::Heisenberg3(n) => {
                let n = *n as u128;
                let (a, b) = (&g.0, &h.0);
                let x = (a[0] as u128 + b[0] as u128) % n;
                let y = (a[1] as u128 + b[1] as u128) % n;
                let z = (a[2] as u128 + b[2] as u128 + a[0] as u128 * b[1] as u128) % n;
                Element(vec![x as u64, y as u64, z as u64])
            }
            _ => {
                let moduli = self.moduli();
                Element(
                    g.0.iter()
                        .zip(&h.0)
                        .zip(&moduli)
                        .map(|((&a, &b), &n)| ((a as u128 + b as u128) % n as u128) as u64)
                        .collect(),
                )
            }
        }
    }

    pub fn inv(&self, g: &Element) -> Result<Element> {
        self.check(g)?;
        Ok(self.inv_unchecked(g))
    }

    fn inv_unchecked(&self, g: &Element) -> Element {
        match self {
            GroupSpec::Heisenberg3(n) => {
                let (x, y, z) = (g.0[0] as i128, g.0[1] as i128, g.0[2] as i128);
                Element(vec![reduce(-x, *n), reduce(-y, *n), reduce(x * y - z, *n)])
            }
            _ => {
                let moduli = self.moduli();
                Element(g.0.iter().zip(&moduli).map(|(&c, &n)| reduce(-(c as i128), n)).collect())
            }
        }
    }

    /// `g^e` for any integer exponent.
    pub fn pow(&self, g: &Element, e: i64) -> Result<Element> {
        self.check(g)?;
        let base = if e < 0 { self.inv_unchecked(g) } else { g.clone() };
        let m = e.unsigned_abs() as u128;
        Ok(match self {
            GroupSpec::Heisenberg3(n) => {
                let nn = *n as u128;
                let (x, y, z) = (base.0[0] as u128, base.0[1] as u128, base.0[2] as u128);
                let mm = m % (2 * nn);
                // g^m = (m x, m y, m z + C(m, 2) x y); C(m, 2) mod N depends on m mod 2N.
                let binom = (mm * (mm + 2 * nn - 1) / 2) % nn;
                Element(vec![
                    ((mm % nn) * x % nn) as u64,
                    ((mm % nn) * y % nn) as u64,
                    (((mm % nn) * z + binom * (x * y % nn)) % nn) as u64,
                ])
            }
            _ => {
                let moduli = self.moduli();
                Element(
                    base.0
                        .iter()
                        .zip(&moduli)
                        .map(|(&c, &n)| ((c as u128 * (m % n as u128)) % n as u128) as u64)
                        .collect(),
                )
            }
        })
    }

    /// `[g, h] = g h g^-1 h^-1`.
    pub fn commutator(&self, g: &Element, h: &Element) -> Result<Element> {
        let gh = self.mul(g, h)?;
        let gi = self.inv(g)?;
        let hi = self.inv(h)?;
        Ok(self.mul_unchecked(&self.mul_unchecked(&gh, &gi), &hi))
    }

    /// Smallest `m >= 1` with `g^m = e`.
    pub fn element_order(&self, g: &Element) -> Result<u64> {
        self.check(g)?;
        match self {
            GroupSpec::Heisenberg3(n) => {
                let id = self.identity();
                let mut acc = g.clone();
                let mut m = 1u64;
                while acc != id {
                    acc = self.mul_unchecked(&acc, g);
                    m += 1;
                    debug_assert!(m <= 2 * n);
                }
                Ok(m)
            }
            _ => {
                let moduli = self.moduli();
                Ok(g.0.iter().zip(&moduli).fold(1u64, |acc, (&c, &n)| {
                    let o = n / gcd(c, n);
                    acc / gcd(acc, o) * o
                }))
            }
        }
    }

    /// Every element once, in lexicographic order of the coordinates.
    pub fn enumerate(&self, cap: u64) -> Result<impl Iterator<Item = Element> + '_> {
        let order = self.check_cap(cap)?;
        Ok((0..order).map(move |i| self.element_at(i)))
    }

    /// Position of `g` in the lexicographic enumeration.
    pub fn index_of(&self, g: &Element) -> usize {
        let moduli = self.moduli();
        g.0.iter().zip(&moduli).fold(0usize, |acc, (&c, &n)| acc * n as usize + c as usize)
    }

    pub fn element_at(&self, mut index: usize) -> Element {
        let moduli = self.moduli();
        let mut coords = vec![0u64; moduli.len()];
        for (slot, &n) in coords.iter_mut().zip(&moduli).rev() {
            *slot = (index % n as usize) as u64;
            index /= n as usize;
        }
        Element(coords)
    }

    /// Product of two elements given by enumeration index.
    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        match self {
            GroupSpec::Cyclic(n) => {
                let n = *n as usize;
                let s = a + b;
                if s >= n {
                    s - n
                } else {
                    s
                }
            }
            GroupSpec::Heisenberg3(n) => {
                let n = *n as usize;
                let (ax, ay, az) = (a / (n * n), (a / n) % n, a % n);
                let (bx, by, bz) = (b / (n * n), (b / n) % n, b % n);
                let x = (ax + bx) % n;
                let y = (ay + by) % n;
                let z = (az + bz + (ax * by) % n) % n;
                (x * n + y) * n + z
            }
            GroupSpec::ProductOfCyclics(ns) => {
                let (mut a, mut b) = (a, b);
                let mut stride = 1usize;
                let mut out = 0usize;
                for &n in ns.iter().rev() {
                    let n = n as usize;
                    out += ((a % n + b % n) % n) * stride;
                    a /= n;
                    b /= n;
                    stride *= n;
                }
                out
            }
        }
    }

    pub fn inv_index(&self, a: usize) -> usize {
        self.index_of(&self.inv_unchecked(&self.element_at(a)))
    }

    /// Parses a single element: `7`, `-3`, `(1,0,2)` or `1,0,2`.
    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let coords = body
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        self.element(&coords)
    }

    /// Parses a generator tuple.
    ///
    /// Accepted forms: `(1,0,0),(0,1,0)`, `1,0,0;0,1,0`, and for rank-one
    /// groups a plain list `1,10`.
    pub fn parse_generators(&self, s: &str) -> Result<Vec<Element>> {
        let s = s.trim();
        if s.contains('(') {
            return s
                .split(')')
                .map(|t| t.trim().trim_start_matches([',', ';']).trim())
                .filter(|t| !t.is_empty())
                .map(|t| self.parse_element(t))
                .collect();
        }
        if s.contains(';') {
            return s.split(';').filter(|t| !t.trim().is_empty()).map(|t| self.parse_element(t)).collect();
        }
        if self.rank() == 1 {
            return s.split(',').map(|t| self.parse_element(t)).collect();
        }
        Ok(vec![self.parse_element(s)?])
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "Z/{n}"),
            GroupSpec::ProductOfCyclics(ns) => {
                let parts: Vec<String> = ns.iter().map(|n| format!("Z/{n}")).collect();
                write!(f, "{}", parts.join("x"))
            }
            GroupSpec::Heisenberg3(n) => write!(f, "H3/{n}"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let number = |t: &str| {
            t.trim().parse::<u64>().map_err(|e| Error::Parse(format!("bad modulus {t:?} in {s:?}: {e}")))
        };
        if let Some(rest) = s.strip_prefix("H3/") {
            return GroupSpec::heisenberg(number(rest)?);
        }
        let factors = s
            .split(['x', 'X', '×'])
            .map(|part| {
                part.trim()
                    .strip_prefix("Z/")
                    .ok_or_else(|| Error::Parse(format!("expected Z/N factors in {s:?}")))
                    .and_then(number)
            })
            .collect::<Result<Vec<_>>>()?;
        match factors.as_slice() {
            [n] => GroupSpec::cyclic(*n),
            _ => GroupSpec::product(factors),
        }
    }
}

/// True iff the closure of `gens` and their inverses is the whole group.
pub fn verify_generates(group: &GroupSpec, gens: &[Element], cap: u64) -> Result<bool> {
    let order = group.check_cap(cap)?;
    let mut steps = Vec::with_capacity(2 * gens.len());
    for g in gens {
        steps.push(group.index_of(g));
        steps.push(group.index_of(&group.inv(g)?));
    }
    let mut seen = vec![false; order];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = queue.pop_front() {
        for &s in &steps {
            let y = group.mul_index(x, s);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                queue.push_back(y);
            }
        }
    }
    Ok(count == order)
}

/// A generating tuple with per-generator exponents.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkSpec {
    group: GroupSpec,
    gens: Vec<Element>,
    alpha: Vec<f64>,
    orders: Vec<u64>,
}

impl WalkSpec {
    pub fn new(group: GroupSpec, gens: Vec<Element>, alpha: Vec<f64>) -> Result<Self> {
        Self::with_cap(group, gens, alpha, DEFAULT_GROUP_CAP)
    }

    pub fn with_cap(group: GroupSpec, gens: Vec<Element>, alpha: Vec<f64>, cap: u64) -> Result<Self> {
        group.validate()?;
        if gens.is_empty() {
            return Err(Error::InvalidParameter("at least one generator is required".into()));
        }
        if gens.len() != alpha.len() {
            return Err(Error::InvalidParameter(format!(
                "{} generators but {} exponents",
                gens.len(),
                alpha.len()
            )));
        }
        check_alpha(&alpha)?;
        let orders = gens.iter().map(|g| group.element_order(g)).collect::<Result<Vec<_>>>()?;
        if !verify_generates(&group, &gens, cap)? {
            return Err(Error::NotGenerating { group: group.to_string() });
        }
        Ok(WalkSpec { group, gens, alpha, orders })
    }

    /// Parses the compact forms used on the command line.
    pub fn parse(group: &str, gens: &str, alpha: &str) -> Result<Self> {
        let group: GroupSpec = group.parse()?;
        let gens = group.parse_generators(gens)?;
        let alpha = parse_alpha(alpha)?;
        let alpha = if alpha.len() == 1 && gens.len() > 1 { vec![alpha[0]; gens.len()] } else { alpha };
        WalkSpec::new(group, gens, alpha)
    }

    /// Same group and generators with a different exponent tuple.
    pub fn with_alpha(&self, alpha: Vec<f64>) -> Result<Self> {
        if alpha.len() != self.gens.len() {
            return Err(Error::InvalidParameter("exponent tuple has the wrong length".into()));
        }
        check_alpha(&alpha)?;
        Ok(WalkSpec { alpha, ..self.clone() })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn gens(&self) -> &[Element] {
        &self.gens
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    /// Orders `N_i` of the generators.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn k(&self) -> usize {
        self.gens.len()
    }

    /// `min_i alpha_i / (2 (1 + alpha_i))`, a lower bound for the mass at the identity.
    pub fn alpha_star(&self) -> f64 {
        self.alpha.iter().map(|a| a / (2.0 * (1.0 + a))).fold(f64::INFINITY, f64::min)
    }

    pub fn alpha_min(&self) -> f64 {
        self.alpha.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

pub(crate) fn check_alpha(alpha: &[f64]) -> Result<()> {
    for &a in alpha {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidAlpha(a));
        }
    }
    Ok(())
}

pub fn parse_alpha(s: &str) -> Result<Vec<f64>> {
    let alpha = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| Error::Parse(format!("alpha {t:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    check_alpha(&alpha)?;
    Ok(alpha)
}

/// Right-multiplication tables `x -> x s_i^{+1}` and `x -> x s_i^{-1}` for
/// every generator of a walk, over the dense element indexing.
#[derive(Clone, Debug)]
pub struct GeneratorTables {
    order: usize,
    steps: Vec<[Vec<u32>; 2]>,
}

impl GeneratorTables {
    pub fn new(walk: &WalkSpec, cap: u64) -> Result<Self> {
        let group = walk.group();
        let order = group.check_cap(cap)?;
        let steps = walk
            .gens()
            .iter()
            .map(|g| {
                let plus = group.index_of(g);
                let minus = group.inv_index(plus);
                let table = |s: usize| (0..order).map(|x| group.mul_index(x, s) as u32).collect::<Vec<_>>();
                Ok([table(plus), table(minus)])
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GeneratorTables { order, steps })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `x s_i` when `inverse` is false, `x s_i^-1` otherwise.
    #[inline]
    pub fn step(&self, x: usize, i: usize, inverse: bool) -> usize {
        self.steps[i][inverse as usize][x] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: u64) -> GroupSpec {
        GroupSpec::heisenberg(n).unwrap()
    }

    #[test]
    fn cyclic_arithmetic() {
        let g = GroupSpec::cyclic(10).unwrap();
        let seven = g.element(&[7]).unwrap();
        let five = g.element(&[5]).unwrap();
        assert_eq!(g.mul(&seven, &five).unwrap(), g.element(&[2]).unwrap());
        assert_eq!(g.inv(&g.element(&[3]).unwrap()).unwrap(), seven);
        assert_eq!(g.element_order(&g.element(&[4]).unwrap()).unwrap(), 5);
        assert_eq!(g.element_order(&g.identity()).unwrap(), 1);
        assert_eq!(g.mul(&seven, &g.identity()).unwrap(), seven);
    }

    #[test]
    fn heisenberg_product_of_generators() {
        let g = h(5);
        let s1 = g.element(&[1, 0, 0]).unwrap();
        let s2 = g.element(&[0, 1, 0]).unwrap();
        assert_eq!(g.mul(&s1, &s2).unwrap(), g.element(&[1, 1, 1]).unwrap());
        // the other order does not pick up the cocycle
        assert_eq!(g.mul(&s2, &s1).unwrap(), g.element(&[1, 1, 0]).unwrap());
    }

    #[test]
    fn heisenberg_inverse() {
        let g = h(5);
        let x = g.element(&[1, 1, 1]).unwrap();
        let xi = g.inv(&x).unwrap();
        assert_eq!(xi, g.element(&[4, 4, 0]).unwrap());
        assert_eq!(g.mul(&x, &xi).unwrap(), g.identity());
        assert_eq!(g.inv(&g.identity()).unwrap(), g.identity());
    }

    #[test]
    fn heisenberg_orders() {
        let g = h(5);
        assert_eq!(g.element_order(&g.element(&[1, 0, 0]).unwrap()).unwrap(), 5);
        // in H3(Z/2) the element (1,1,0) squares to (0,0,1)
        let g2 = h(2);
        assert_eq!(g2.element_order(&g2.element(&[1, 1, 0]).unwrap()).unwrap(), 4);
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        for group in [h(4), h(6), GroupSpec::product(vec![4, 6]).unwrap()] {
            for g in group.enumerate(DEFAULT_GROUP_CAP).unwrap().step_by(5) {
                let mut acc = group.identity();
                for m in 0..30i64 {
                    assert_eq!(group.pow(&g, m).unwrap(), acc, "{group} {g} ^ {m}");
                    let inv = group.pow(&g, -m).unwrap();
                    assert_eq!(group.mul(&acc, &inv).unwrap(), group.identity());
                    acc = group.mul(&acc, &g).unwrap();
                }
            }
        }
    }

    #[test]
    fn mismatched_elements_are_rejected() {
        let g = GroupSpec::cyclic(10).unwrap();
        let bad = h(3).identity();
        assert!(matches!(g.mul(&bad, &g.identity()), Err(Error::ElementMismatch { .. })));
        let unreduced = Element(vec![12]);
        assert!(g.inv(&unreduced).is_err());
    }

    #[test]
    fn enumeration() {
        let c3: Vec<_> = GroupSpec::cyclic(3).unwrap().enumerate(10).unwrap().collect();
        assert_eq!(c3, vec![Element(vec![0]), Element(vec![1]), Element(vec![2])]);
        assert_eq!(h(2).enumerate(10).unwrap().count(), 8);
        let p = GroupSpec::product(vec![2, 3]).unwrap();
        let elems: Vec<_> = p.enumerate(10).unwrap().collect();
        assert_eq!(elems.len(), 6);
        assert!(elems.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(h(101).enumerate(DEFAULT_GROUP_CAP), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn index_roundtrip_and_index_multiplication() {
        for group in [h(3), GroupSpec::product(vec![2, 3, 4]).unwrap(), GroupSpec::cyclic(7).unwrap()] {
            let n = group.order() as usize;
            for a in 0..n {
                let ga = group.element_at(a);
                assert_eq!(group.index_of(&ga), a);
                for b in 0..n {
                    let gb = group.element_at(b);
                    assert_eq!(group.mul_index(a, b), group.index_of(&group.mul(&ga, &gb).unwrap()));
                }
            }
        }
    }

    #[test]
    fn generation() {
        let c10 = GroupSpec::cyclic(10).unwrap();
        let gens = c10.parse_generators("1,3").unwrap();
        assert!(verify_generates(&c10, &gens, 100).unwrap());
        let evens = c10.parse_generators("2,4").unwrap();
        assert!(!verify_generates(&c10, &evens, 100).unwrap());
        let h5 = h(5);
        let gens = h5.parse_generators("(1,0,0),(0,1,0)").unwrap();
        assert!(verify_generates(&h5, &gens, 1000).unwrap());
        assert!(matches!(
            WalkSpec::new(c10.clone(), evens, vec![1.0, 1.0]),
            Err(Error::NotGenerating { .. })
        ));
    }

    #[test]
    fn walk_spec_validation() {
        let c = GroupSpec::cyclic(10).unwrap();
        let one = c.element(&[1]).unwrap();
        assert!(matches!(WalkSpec::new(c.clone(), vec![one.clone()], vec![0.0]), Err(Error::InvalidAlpha(_))));
        assert!(WalkSpec::new(c.clone(), vec![], vec![]).is_err());
        let w = WalkSpec::new(c.clone(), vec![one, c.element(&[5]).unwrap()], vec![1.0, 0.5]).unwrap();
        assert_eq!(w.orders(), &[10, 2]);
        assert!((w.alpha_star() - 0.5 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn parsing() {
        assert_eq!("Z/100".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic(100));
        assert_eq!("Z/4xZ/25".parse::<GroupSpec>().unwrap(), GroupSpec::ProductOfCyclics(vec![4, 25]));
        assert_eq!("H3/7".parse::<GroupSpec>().unwrap(), GroupSpec::Heisenberg3(7));
        assert!("Q/3".parse::<GroupSpec>().is_err());
        assert!("Z/0".parse::<GroupSpec>().is_err());
        for s in ["Z/100", "Z/4xZ/25", "H3/7"] {
            assert_eq!(s.parse::<GroupSpec>().unwrap().to_string(), s);
        }
        let h7 = h(7);
        let gens = h7.parse_generators("1,0,0;0,1,0").unwrap();
        assert_eq!(gens, h7.parse_generators("(1,0,0),(0,1,0)").unwrap());
        assert_eq!(h7.parse_element("(-1,0,0)").unwrap(), h7.element(&[6, 0, 0]).unwrap());
    }

    #[test]
    fn cyclic_abs_is_symmetric() {
        assert_eq!(cyclic_abs(0, 10), 0);
        assert_eq!(cyclic_abs(7, 10), 3);
        assert_eq!(cyclic_abs(5, 10), 5);
        assert_eq!(cyclic_abs(3, 7), 3);
        assert_eq!(cyclic_abs(4, 7), 3);
    }
}
