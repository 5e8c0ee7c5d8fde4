//! Triangle killer: around a target vertex `v`, delete the edges from `v`
//! into its inner ball and every edge inside the outer shell, so that no
//! triangle through `v` survives while each vertex keeps roughly half of its
//! neighbours.

use super::AttackReport;
use crate::geom::{boundary_distance, distance_sq, Metric};
use crate::graph::GeometricGraph;
use crate::{Error, Result};

/// Cut all triangles through `v`. The inner radius is
/// `t = (1/2 - 2 eps)^{1/d} r`, which makes the shell `B(v,r) \ B(v,t)` carry
/// a `(1/2 + 2 eps)` share of the ball volume. `boundary_margin` is the
/// required distance of `v` from the cube boundary in units of `r` (2 in the
/// source construction; relaxable when `2r` exceeds the cube).
pub fn triangle_killer_cut(
    g: &GeometricGraph,
    v: u32,
    eps: f64,
    boundary_margin: f64,
) -> Result<AttackReport> {
    if eps <= 0.0 || eps >= 0.25 {
        return Err(Error::Parameter("need 0 < eps < 1/4".into()));
    }
    let d = g.dim();
    if g.metric == Metric::CubeEuclidean {
        let bd = boundary_distance(g.points.coords(v as usize), g.metric);
        if bd < boundary_margin * g.r {
            return Err(Error::Precondition(format!(
                "vertex {v} at boundary distance {bd:.4} < {boundary_margin} r"
            )));
        }
    }
    let t = (0.5 - 2.0 * eps).powf(1.0 / d as f64) * g.r;
    let dist_to_v = |w: u32| {
        distance_sq(
            g.points.coords(v as usize),
            g.points.coords(w as usize),
            g.metric,
        )
        .sqrt()
    };
    let mut deleted = Vec::new();
    let mut shell = Vec::new();
    for &w in g.graph.neighbors(v) {
        if dist_to_v(w) <= t {
            deleted.push((v.min(w), v.max(w)));
        } else {
            shell.push(w);
        }
    }
    let in_shell: std::collections::HashSet<u32> = shell.iter().copied().collect();
    for &u in &shell {
        for &w in g.graph.neighbors(u) {
            if w > u && in_shell.contains(&w) {
                deleted.push((u, w));
            }
        }
    }
    let report = AttackReport::from_deletion(
        "triangle-killer",
        vec![
            ("v".into(), v.to_string()),
            ("eps".into(), eps.to_string()),
            ("t".into(), t.to_string()),
        ],
        0,
        &g.graph,
        deleted,
        Some(format!("v={v} inner={t} outer={}", g.r)),
        false,
    );
    // exhaustive audit: no surviving triangle through v
    let kept: Vec<u32> = g
        .graph
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&w| !report.deleted.contains(&(v.min(w), v.max(w))))
        .collect();
    let del: std::collections::HashSet<(u32, u32)> = report.deleted.iter().copied().collect();
    for (i, &a) in kept.iter().enumerate() {
        for &b in &kept[i + 1..] {
            let e = (a.min(b), a.max(b));
            if g.graph.has_edge(e.0, e.1) && !del.contains(&e) {
                return Err(Error::Precondition(format!(
                    "internal audit failed: triangle v={v},{a},{b} survived"
                )));
            }
        }
    }
    Ok(report)
}
