//! Sandwich check on the one-dimensional torus: after sorting the vertices
//! cyclically by position, the geometric graph should contain the
//! `floor((1-eps) r n)`-th power of the cycle and be contained in the
//! `floor((1+eps) r n)`-th power.

use crate::geom::{distance_sq, Metric};
use crate::graph::GeometricGraph;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum SandwichOutcome {
    Holds {
        k_lower: usize,
        k_upper: usize,
    },
    /// A pair within the lower power's label distance that is not an edge.
    LowerViolation {
        pair: (u32, u32),
        label_distance: usize,
    },
    /// An edge whose cyclic label distance exceeds the upper power.
    UpperViolation {
        edge: (u32, u32),
        label_distance: usize,
    },
}

pub fn sandwich_check(t: &GeometricGraph, eps: f64) -> Result<SandwichOutcome> {
    if t.dim() != 1 || t.metric != Metric::TorusEuclidean {
        return Err(Error::Precondition(
            "sandwich check needs d = 1 on the torus".into(),
        ));
    }
    if eps <= 0.0 {
        return Err(Error::Parameter("eps must be positive".into()));
    }
    let n = t.n();
    if n < 3 {
        return Err(Error::Parameter("need at least 3 vertices".into()));
    }
    let rn = t.r * n as f64;
    let k_lower = (((1.0 - eps) * rn).floor() as usize).min(n / 2);
    let k_upper = ((1.0 + eps) * rn).floor() as usize;
    // cyclic order by position
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by(|&a, &b| {
        t.points.coords(a as usize)[0]
            .partial_cmp(&t.points.coords(b as usize)[0])
            .unwrap()
    });
    let mut label = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        label[v as usize] = i;
    }
    // lower inclusion: every pair at label distance <= k_lower is an edge;
    // by monotonicity of arc length it suffices to check distance exactly
    // k_lower from each vertex, but all steps are checked for witnesses
    for s in 1..=k_lower {
        for i in 0..n {
            let u = order[i];
            let v = order[(i + s) % n];
            let d = distance_sq(
                t.points.coords(u as usize),
                t.points.coords(v as usize),
                t.metric,
            )
            .sqrt();
            if d > t.r {
                return Ok(SandwichOutcome::LowerViolation {
                    pair: (u, v),
                    label_distance: s,
                });
            }
        }
    }
    // upper inclusion: every edge has label distance <= k_upper
    for &(u, v) in t.graph.edges() {
        let raw = label[u as usize].abs_diff(label[v as usize]);
        let d = raw.min(n - raw);
        if d > k_upper {
            return Ok(SandwichOutcome::UpperViolation {
                edge: (u, v),
                label_distance: d,
            });
        }
    }
    Ok(SandwichOutcome::Holds { k_lower, k_upper })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::PointSet;
    use crate::rgg::{sample_rgg, trial_seed};

    #[test]
    fn equally_spaced_square() {
        let pts =
            PointSet::from_points(1, &[vec![0.0], vec![0.25], vec![0.5], vec![0.75]]).unwrap();
        let g = GeometricGraph::build(pts, 0.3, Metric::TorusEuclidean);
        // T = C_4 exactly; rn = 1.2, eps = 1/6 gives k_lower = k_upper = 1
        let out = sandwich_check(&g, 1.0 / 6.0).unwrap();
        assert_eq!(
            out,
            SandwichOutcome::Holds {
                k_lower: 1,
                k_upper: 1
            }
        );
    }

    #[test]
    fn adversarial_cluster_upper_violation() {
        // two far labels at tiny distance: a point cluster at 0 and 0.5 plus
        // an isolated chord pair, making a long-chord witness
        let mut pts = vec![];
        let n = 40;
        for i in 0..n {
            pts.push(vec![i as f64 / n as f64 * 0.5]);
        }
        // a vertex close to position 0 but wrap-around (label far from 0)
        pts.push(vec![0.999]);
        let ps = PointSet::from_points(1, &pts).unwrap();
        let g = GeometricGraph::build(ps, 0.02, Metric::TorusEuclidean);
        let out = sandwich_check(&g, 0.1).unwrap();
        match out {
            SandwichOutcome::UpperViolation { .. } => {}
            other => panic!("expected an upper violation, got {other:?}"),
        }
    }

    #[test]
    fn typical_instances_hold() {
        let n = 2000;
        let r = 30.0 * (n as f64).ln() / n as f64;
        let mut holds = 0;
        for s in 0..10u64 {
            let g = sample_rgg(n, 1, r, Metric::TorusEuclidean, trial_seed(77, s));
            if matches!(
                sandwich_check(&g, 0.5).unwrap(),
                SandwichOutcome::Holds { .. }
            ) {
                holds += 1;
            }
        }
        assert!(holds >= 9, "only {holds}/10 held");
    }
}
