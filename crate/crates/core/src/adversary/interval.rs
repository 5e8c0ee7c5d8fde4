//! Empty-interval cut in one dimension: find an interval `[a-r, b+r]` inside
//! `[1/3, 2/3]` whose core `[a,b]` contains no vertex while the flanks carry
//! their typical occupancy, then delete every edge crossing the core. The
//! construction is a.a.s., so a no-witness outcome is a value, not an error.

use super::AttackReport;
use crate::geom::Metric;
use crate::graph::GeometricGraph;
use crate::{Error, Result};

pub fn empty_interval_cut(g: &GeometricGraph, eps: f64) -> Result<AttackReport> {
    if g.dim() != 1 || g.metric != Metric::CubeEuclidean {
        return Err(Error::Precondition(
            "empty-interval cut needs d = 1 on the cube".into(),
        ));
    }
    let n = g.n();
    if n < 8 {
        return Err(Error::Parameter("instance too small".into()));
    }
    let nf = n as f64;
    let log_n = nf.ln();
    let ell = (log_n - log_n.sqrt()) / nf;
    let r = g.r;
    let mut params = vec![
        ("eps".into(), eps.to_string()),
        ("ell".into(), ell.to_string()),
    ];
    if r > log_n / (4.0 * eps * nf) + 1e-15 {
        params.push((
            "warning".into(),
            "r above the log n/(4 eps n) regime".into(),
        ));
    }
    let mut pos: Vec<f64> = (0..n).map(|i| g.points.coords(i)[0]).collect();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by(|&a, &b| pos[a as usize].partial_cmp(&pos[b as usize]).unwrap());
    pos.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let count_in = |lo: f64, hi: f64| -> usize {
        let l = pos.partition_point(|&x| x < lo);
        let h = pos.partition_point(|&x| x <= hi);
        h.saturating_sub(l)
    };

    let rn = r * nf;
    let tol = rn.powf(2.0 / 3.0);
    let a_min = 1.0 / 3.0 + r;
    let a_max = 2.0 / 3.0 - r - ell;
    let step = ell / 4.0;
    let mut best: Option<(f64, f64, f64)> = None; // (min ratio, a, b)
    let mut k = 0usize;
    loop {
        let a = a_min + k as f64 * step;
        k += 1;
        if a > a_max {
            break;
        }
        let b = a + ell;
        if count_in(a, b) != 0 {
            continue;
        }
        let occupancy_ok = (count_in(a - r, a) as f64 - rn).abs() <= tol
            && (count_in(b, b + r) as f64 - rn).abs() <= tol
            && (count_in(a - r + ell, a) as f64 - (rn - ell * nf)).abs() <= tol
            && (count_in(b, b + r - ell) as f64 - (rn - ell * nf)).abs() <= tol;
        if !occupancy_ok {
            continue;
        }
        // worst degree fraction after deleting the crossing edges
        let mut worst = 1.0f64;
        let lo_idx = pos.partition_point(|&x| x < a - r);
        for i in lo_idx..pos.len() {
            let x = pos[i];
            if x >= a {
                break;
            }
            let total = count_in(x - r, x + r) - 1;
            let lost = if x + r > b { count_in(b, x + r) } else { 0 };
            if total > 0 {
                worst = worst.min((total - lost) as f64 / total as f64);
            }
        }
        let hi_start = pos.partition_point(|&x| x <= b);
        for i in hi_start..pos.len() {
            let x = pos[i];
            if x > b + r {
                break;
            }
            let total = count_in(x - r, x + r) - 1;
            let lost = if x - r < a { count_in(x - r, a) } else { 0 };
            if total > 0 {
                worst = worst.min((total - lost) as f64 / total as f64);
            }
        }
        if best.map(|(w, _, _)| worst > w).unwrap_or(true) {
            best = Some((worst, a, b));
        }
    }

    let Some((_, a, b)) = best else {
        return Ok(AttackReport::from_deletion(
            "empty-interval",
            params,
            0,
            &g.graph,
            vec![],
            None,
            true,
        ));
    };
    let mut deleted = Vec::new();
    for (i, &x) in pos.iter().enumerate() {
        if x < a - r || x >= a {
            continue;
        }
        let u = order[i];
        for &w in g.graph.neighbors(u) {
            if g.points.coords(w as usize)[0] > b {
                deleted.push((u.min(w), u.max(w)));
            }
        }
    }
    params.push(("a".into(), a.to_string()));
    params.push(("b".into(), b.to_string()));
    Ok(AttackReport::from_deletion(
        "empty-interval",
        params,
        0,
        &g.graph,
        deleted,
        Some(format!("interval [{a},{b}]")),
        false,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::PointSet;
    use crate::graph::check_alpha_subgraph;
    use crate::rgg::trial_seed;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn injected_gap_splits_in_two() {
        // near-regular points (so no other long gap exists) with an injected
        // gap of length 2r centred at 1/2
        let n = 4000;
        let r = 0.004;
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut pts = Vec::with_capacity(n);
        let mut i = 0usize;
        while pts.len() < n {
            let x = (i as f64 + 0.3 * rng.gen::<f64>()) / n as f64;
            i += 1;
            if (x - 0.5).abs() > r && x < 1.0 {
                pts.push(vec![x]);
            }
        }
        let ps = PointSet::from_points(1, &pts).unwrap();
        let g = GeometricGraph::build(ps, r, Metric::CubeEuclidean);
        let rep = empty_interval_cut(&g, 0.1).unwrap();
        assert!(!rep.no_witness, "gap must be found");
        assert!(rep.disconnected);
        assert_eq!(rep.component_sizes.len(), 2);
        // no kept edge joins the two sides of the emptied core
        let a: f64 = rep
            .params
            .iter()
            .find(|(k, _)| k == "a")
            .unwrap()
            .1
            .parse()
            .unwrap();
        let b: f64 = rep
            .params
            .iter()
            .find(|(k, _)| k == "b")
            .unwrap()
            .1
            .parse()
            .unwrap();
        let kept = rep.kept_edges_graph(&g);
        for &(u, v) in kept.edges() {
            let (x, y) = (g.points.coords(u as usize)[0], g.points.coords(v as usize)[0]);
            assert!(!(x.min(y) < a && x.max(y) > b));
        }
    }

    #[test]
    fn dense_instance_reports_no_witness() {
        // equally spaced points leave no empty interval of the prescribed
        // length anywhere
        let n = 2000;
        let pts: Vec<Vec<f64>> = (0..n).map(|i| vec![(i as f64 + 0.5) / n as f64]).collect();
        let ps = PointSet::from_points(1, &pts).unwrap();
        let g = GeometricGraph::build(ps, 0.01, Metric::CubeEuclidean);
        let rep = empty_interval_cut(&g, 0.1).unwrap();
        assert!(rep.no_witness);
        assert!(rep.deleted.is_empty());
    }

    #[test]
    fn success_rate_and_alpha_inside_the_regime() {
        // r = log n/(8 eps n) sits comfortably inside the admissible regime
        let n = 100_000;
        let eps = 0.1;
        let r = (n as f64).ln() / (8.0 * eps * n as f64);
        let mut ok = 0;
        let trials = 10;
        for t in 0..trials {
            let g = crate::rgg::sample_rgg(n, 1, r, Metric::CubeEuclidean, trial_seed(21, t));
            let rep = empty_interval_cut(&g, eps).unwrap();
            if !rep.no_witness && rep.disconnected {
                let mask = rep.apply(&g);
                if check_alpha_subgraph(&mask, 0.5 + eps).unwrap().pass {
                    ok += 1;
                }
            }
        }
        assert!(ok >= 8, "only {ok}/{trials} succeeded");
    }
}
