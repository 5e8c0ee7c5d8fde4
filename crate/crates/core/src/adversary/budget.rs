//! Budgeted deletion fixtures used by the builder-rate experiments: both
//! respect a per-vertex deletion budget, so the result is always a
//! `(1 - budget)`-subgraph.

use super::AttackReport;
use crate::geom::distance_sq;
use crate::graph::GeometricGraph;
use rand::{seq::SliceRandom, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Delete each vertex's farthest neighbours, greedily, never exceeding a
/// `frac` fraction of either endpoint's degree. Deterministic.
pub fn farthest_fraction_cut(g: &GeometricGraph, frac: f64) -> AttackReport {
    let n = g.n();
    let mut budget: Vec<i64> = (0..n as u32)
        .map(|v| (frac * g.graph.degree(v) as f64).floor() as i64)
        .collect();
    let mut deleted = Vec::new();
    // candidate deletions: per vertex, neighbours sorted farthest-first
    for v in 0..n as u32 {
        if budget[v as usize] == 0 {
            continue;
        }
        let mut nbrs: Vec<(f64, u32)> = g
            .graph
            .neighbors(v)
            .iter()
            .map(|&w| {
                (
                    distance_sq(g.points.coords(v as usize), g.points.coords(w as usize), g.metric),
                    w,
                )
            })
            .collect();
        nbrs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
        for (_, w) in nbrs {
            if budget[v as usize] == 0 {
                break;
            }
            if budget[w as usize] == 0 {
                continue;
            }
            let e = (v.min(w), v.max(w));
            deleted.push(e);
            budget[v as usize] -= 1;
            budget[w as usize] -= 1;
        }
    }
    deleted.sort_unstable();
    deleted.dedup();
    AttackReport::from_deletion(
        "farthest-fraction",
        vec![("frac".into(), frac.to_string())],
        0,
        &g.graph,
        deleted,
        None,
        false,
    )
}

/// Delete uniformly random edges, never exceeding a `budget` fraction of
/// either endpoint's degree.
pub fn random_budget_cut(g: &GeometricGraph, budget_frac: f64, seed: u64) -> AttackReport {
    let n = g.n();
    let mut budget: Vec<i64> = (0..n as u32)
        .map(|v| (budget_frac * g.graph.degree(v) as f64).floor() as i64)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..g.graph.edge_count()).collect();
    order.shuffle(&mut rng);
    let mut deleted = Vec::new();
    for idx in order {
        let (u, v) = g.graph.edges()[idx];
        if budget[u as usize] > 0 && budget[v as usize] > 0 {
            budget[u as usize] -= 1;
            budget[v as usize] -= 1;
            deleted.push((u, v));
        }
    }
    AttackReport::from_deletion(
        "random-budget",
        vec![("budget".into(), budget_frac.to_string())],
        seed,
        &g.graph,
        deleted,
        None,
        false,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Metric;
    use crate::graph::check_alpha_subgraph;
    use crate::rgg::sample_rgg;

    #[test]
    fn budgets_are_respected() {
        let g = sample_rgg(600, 2, 0.12, Metric::CubeEuclidean, 8);
        for rep in [
            farthest_fraction_cut(&g, 0.3),
            random_budget_cut(&g, 0.25, 5),
        ] {
            let frac: f64 = rep.params[0].1.parse().unwrap();
            let mask = rep.apply(&g);
            let check = check_alpha_subgraph(&mask, 1.0 - frac).unwrap();
            assert!(check.pass, "budget exceeded: worst {}", check.worst_ratio);
        }
    }

    #[test]
    fn farthest_cut_removes_far_neighbours_first() {
        // budget blocking can spare a far neighbour occasionally, so the
        // distance ordering is asserted in aggregate and for the vast
        // majority of vertices
        let g = sample_rgg(300, 1, 0.2, Metric::CubeEuclidean, 9);
        let rep = farthest_fraction_cut(&g, 0.4);
        let mask = rep.apply(&g);
        let mut checked = 0;
        let mut ordered = 0;
        let (mut kept_total, mut cut_total) = (0.0, 0.0);
        let (mut kept_n, mut cut_n) = (0usize, 0usize);
        for v in 0..g.n() as u32 {
            let mut kept = Vec::new();
            let mut cut = Vec::new();
            for &w in g.graph.neighbors(v) {
                let d = distance_sq(
                    g.points.coords(v as usize),
                    g.points.coords(w as usize),
                    g.metric,
                );
                if mask.is_kept(v, w) {
                    kept.push(d);
                } else {
                    cut.push(d);
                }
            }
            if kept.len() > 2 && cut.len() > 2 {
                let avg = |xs: &[f64]| xs.iter().sum::<f64>() / xs.len() as f64;
                checked += 1;
                if avg(&kept) <= avg(&cut) + 1e-12 {
                    ordered += 1;
                }
                kept_total += kept.iter().sum::<f64>();
                cut_total += cut.iter().sum::<f64>();
                kept_n += kept.len();
                cut_n += cut.len();
            }
        }
        assert!(checked > 100);
        assert!(ordered * 10 >= checked * 9, "{ordered}/{checked} ordered");
        assert!(kept_total / (kept_n as f64) < cut_total / (cut_n as f64));
    }
}
