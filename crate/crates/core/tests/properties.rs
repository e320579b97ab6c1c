use degmom_core::analysis::{structural_checks, verify_degeneracy_sum_square_bound};
use degmom_core::enumerate::for_each_outcome;
use degmom_core::estimate_once;
use degmom_core::estimator::{plan_degeneracy, plan_general};
use degmom_core::weights::{degree_power_sum, weight_profile};
use degmom_core::{core_number, verify_alpha_moment_bound, EstimatorConfig, Fraction, Graph};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..3 * n).prop_map(move |pairs| {
            Graph::from_edges(n, pairs.into_iter().filter(|(u, v)| u != v)).unwrap()
        })
    })
}

/// Sorted `(value, probability)` list of one run's outcomes.
fn outcome_distribution(g: &Graph, s: u32) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = Vec::new();
    // Probabilities are 1/(n * d_v * d_R)-style products; scale by a common
    // multiple so they stay integral.
    let scale: u64 = (1..=g.n() as u64).product::<u64>() * 720 * 720;
    for_each_outcome(
        g,
        |o| estimate_once(o, 1, 1, s).unwrap(),
        |arities, x| {
            let p = arities.iter().fold(scale, |acc, &a| acc / a);
            out.push(((x * 1e6).round() as u64, p));
        },
    );
    out.sort_unstable();
    let mut merged: Vec<(u64, u64)> = Vec::new();
    for (x, p) in out {
        match merged.last_mut() {
            Some(last) if last.0 == x => last.1 += p,
            _ => merged.push((x, p)),
        }
    }
    merged
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn weights_sum_to_the_moment(g in graph_strategy(40), s in 1u32..=4) {
        let p = weight_profile(&g, s);
        prop_assert_eq!(&p.total, &degree_power_sum(&g, s));
        prop_assert_eq!(p.vertex_weight.iter().sum::<num_bigint::BigUint>(), p.total);
    }

    #[test]
    fn structural_bounds_hold(g in graph_strategy(40), s in 1u32..=3) {
        let p = weight_profile(&g, s);
        for c in structural_checks(&g, &p) {
            prop_assert!(c.ok, "{} failed: {} > {}", c.name, c.lhs, c.rhs);
        }
        prop_assert!(verify_alpha_moment_bound(&g, s) || g.m() == 0);
        let alpha = core_number(&g).max(1) as u64;
        let ratio = verify_degeneracy_sum_square_bound(&g, &p, alpha).ratio;
        prop_assert!(ratio <= 4.0, "ratio {}", ratio);
    }

    #[test]
    fn degeneracy_plan_never_exceeds_general(
        n in 2usize..1_000_000,
        m_exp in 0.0f64..30.0,
        alpha in 1u64..10_000,
        s in 1u32..=5,
        eps_den in 2u64..20,
    ) {
        let cfg = EstimatorConfig::new(s, Fraction::new(1, eps_den), Fraction::new(1, 3)).unwrap();
        let m_hat = 2f64.powf(m_exp);
        let g = plan_general(n, m_hat, &cfg);
        let d = plan_degeneracy(n, m_hat, alpha as f64, &cfg);
        prop_assert!(d.r <= g.r && d.q <= g.q);
    }

    #[test]
    fn order_preserving_relabel_keeps_the_distribution(
        g in graph_strategy(5),
        shuffle in proptest::collection::vec(any::<u32>(), 5),
        s in 1u32..=3,
    ) {
        // Give each degree class a random set of ids, increasing within the
        // class, so the (degree, id) order is unchanged.
        let n = g.n();
        let mut ids: Vec<usize> = (0..n).collect();
        ids.sort_by_key(|&i| shuffle[i]);
        let mut by_key: Vec<usize> = (0..n).collect();
        by_key.sort_by_key(|&v| g.order_key(v));
        let mut perm = vec![0; n];
        let mut start = 0;
        while start < n {
            let d = g.degree(by_key[start]);
            let end = start + by_key[start..].iter().take_while(|&&v| g.degree(v) == d).count();
            let mut class_ids = ids[start..end].to_vec();
            class_ids.sort_unstable();
            for (k, &v) in by_key[start..end].iter().enumerate() {
                perm[v] = class_ids[k];
            }
            start = end;
        }
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(outcome_distribution(&g, s), outcome_distribution(&h, s));
    }
}
