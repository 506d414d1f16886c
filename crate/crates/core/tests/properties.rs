use longjump::cost::{cost_table, degree_frontier};
use longjump::measure::LongJumpMeasure;
use longjump::mixing::{evolve, evolve_continuous};
use longjump::{GroupSpec, WalkSpec};
use proptest::prelude::*;

fn group() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        (2u64..60).prop_map(|n| GroupSpec::cyclic(n).unwrap()),
        prop::collection::vec(2u64..7, 2..=3).prop_map(|m| GroupSpec::product(m).unwrap()),
        (2u64..8).prop_map(|n| GroupSpec::heisenberg(n).unwrap()),
    ]
}

fn elements(g: &GroupSpec) -> std::ops::Range<usize> {
    0..g.order() as usize
}

/// A walk whose generators are the standard basis plus one random extra element.
fn walk() -> impl Strategy<Value = WalkSpec> {
    (group(), any::<prop::sample::Index>(), 0.1f64..2.5).prop_map(|(g, extra, alpha)| {
        let rank = g.rank();
        let mut gens: Vec<_> = (0..rank)
            .map(|i| {
                let mut c = vec![0i64; rank];
                c[i] = 1;
                g.element(&c).unwrap()
            })
            .collect();
        let e = g.element_at(extra.index(g.order() as usize));
        if e != g.identity() && !gens.contains(&e) {
            gens.push(e);
        }
        let alpha = (0..gens.len()).map(|i| alpha * (1.0 + 0.2 * i as f64)).collect();
        WalkSpec::new(g, gens, alpha).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_laws((g, a, b, c) in group().prop_flat_map(|g| {
        let e = elements(&g);
        (Just(g), e.clone(), e.clone(), e)
    })) {
        let e = g.index_of(&g.identity());
        prop_assert_eq!(g.mul_index(g.mul_index(a, b), c), g.mul_index(a, g.mul_index(b, c)));
        prop_assert_eq!(g.mul_index(a, e), a);
        prop_assert_eq!(g.mul_index(e, a), a);
        prop_assert_eq!(g.mul_index(a, g.inv_index(a)), e);
        let (x, y) = (g.element_at(a), g.element_at(b));
        prop_assert_eq!(g.index_of(&g.mul(&x, &y).unwrap()), g.mul_index(a, b));
        let order = g.element_order(&x).unwrap();
        prop_assert_eq!(g.pow(&x, order as i64).unwrap(), g.identity());
        prop_assert_eq!(g.pow(&x, -1).unwrap(), g.inv(&x).unwrap());
    }

    #[test]
    fn commutators_are_central((g, a, b, c) in group().prop_flat_map(|g| {
        let e = elements(&g);
        (Just(g), e.clone(), e.clone(), e)
    })) {
        let (x, y, z) = (g.element_at(a), g.element_at(b), g.element_at(c));
        let k = g.commutator(&x, &y).unwrap();
        prop_assert_eq!(g.mul(&k, &z).unwrap(), g.mul(&z, &k).unwrap());
        if g.is_abelian() {
            prop_assert_eq!(k, g.identity());
        }
    }

    #[test]
    fn measure_is_symmetric_probability(w in walk()) {
        let m = LongJumpMeasure::new(&w).unwrap();
        let g = w.group();
        let total: f64 = m.density().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        for (i, &p) in m.density().iter().enumerate() {
            prop_assert!(p >= 0.0);
            prop_assert!((p - m.density()[g.inv_index(i)]).abs() < 1e-15);
        }
        for s in w.gens() {
            prop_assert!(m.mass(s) > 0.0);
        }
    }

    #[test]
    fn cost_is_symmetric_and_quasi_subadditive((w, a, b) in walk().prop_flat_map(|w| {
        let e = elements(w.group());
        (Just(w), e.clone(), e)
    })) {
        let table = cost_table(&w).unwrap();
        let g = w.group();
        let costs = table.costs();
        prop_assert_eq!(costs[g.index_of(&g.identity())], 0.0);
        prop_assert_eq!(costs[a], costs[g.inv_index(a)]);
        let factor = if w.alpha().iter().any(|&x| x >= 2.0) { 4.0 } else { 2.0 };
        prop_assert!(costs[g.mul_index(a, b)] <= factor * (costs[a] + costs[b]) * (1.0 + 1e-12));
    }

    #[test]
    fn cost_scales_as_a_power(w in walk(), scale in 0.2f64..1.0) {
        // keep every scaled exponent in the pure power range
        let top = w.alpha().iter().cloned().fold(0.0, f64::max);
        prop_assume!(top < 2.0);
        let frontier = degree_frontier(&w).unwrap();
        let base = frontier.table();
        let scaled: Vec<f64> = w.alpha().iter().map(|a| a * scale).collect();
        let scaled = frontier.evaluate(&scaled).unwrap();
        for (&c, &d) in base.costs().iter().zip(scaled.costs()) {
            prop_assert!((c.powf(scale) - d).abs() <= 1e-12 * d.max(1.0));
        }
    }

    #[test]
    fn mixing_curves_decrease(w in walk()) {
        let m = LongJumpMeasure::new(&w).unwrap();
        let curve = evolve(&m, 60).unwrap();
        for pair in curve.l2.windows(2).chain(curve.tv.windows(2)) {
            prop_assert!(pair[1] <= pair[0] * (1.0 + 1e-9) + 1e-15);
        }
        let times: Vec<f64> = (0..20).map(|i| i as f64 * 0.75).collect();
        let curve = evolve_continuous(&m, &times).unwrap();
        for pair in curve.l2.windows(2).chain(curve.tv.windows(2)) {
            prop_assert!(pair[1] <= pair[0] * (1.0 + 1e-9) + 1e-15);
        }
    }
}
