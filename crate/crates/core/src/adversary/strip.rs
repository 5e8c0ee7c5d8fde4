//! Strip cut: slice the cube with hyperplanes orthogonal to the x-axis into
//! strips of width between `2r` and `4r` and delete every crossing edge.
//! Components are then confined to strips, so their order stays below `5rn`
//! in the typical regime.

use super::AttackReport;
use crate::geom::Metric;
use crate::graph::GeometricGraph;
use crate::{Error, Result};

pub fn strip_cut(g: &GeometricGraph) -> Result<AttackReport> {
    if g.metric != Metric::CubeEuclidean {
        return Err(Error::Precondition("strip cut needs the cube metric".into()));
    }
    let r = g.r;
    if r >= 0.2 {
        // at r >= 1/5 the component bound `5rn >= n` holds for the base graph
        // itself, so the strategy deletes nothing (the trivial exemption)
        return Ok(AttackReport::from_deletion(
            "strip",
            vec![("exemption".into(), "r >= 1/5".into())],
            0,
            &g.graph,
            vec![],
            Some("trivial (single strip)".into()),
            false,
        ));
    }
    let k = (1.0 / (4.0 * r)).ceil() as usize;
    let width = 1.0 / k as f64;
    debug_assert!(width >= 2.0 * r - 1e-12 && width <= 4.0 * r + 1e-12);
    let strip_of = |x: f64| -> usize { ((x * k as f64) as usize).min(k - 1) };
    let deleted: Vec<(u32, u32)> = g
        .graph
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| {
            strip_of(g.points.coords(u as usize)[0]) != strip_of(g.points.coords(v as usize)[0])
        })
        .collect();
    Ok(AttackReport::from_deletion(
        "strip",
        vec![
            ("k".into(), k.to_string()),
            ("width".into(), width.to_string()),
        ],
        0,
        &g.graph,
        deleted,
        Some(format!("strips k={k} width={width}")),
        false,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::PointSet;
    use crate::rgg::{sample_rgg, trial_seed};

    #[test]
    fn width_rule_example() {
        // r = 0.1 -> k = ceil(1/0.4) = 3, width 1/3 in [0.2, 0.4]
        let g = sample_rgg(50, 2, 0.1, Metric::CubeEuclidean, 1);
        let rep = strip_cut(&g).unwrap();
        assert_eq!(
            rep.params.iter().find(|(k, _)| k == "k").unwrap().1,
            "3"
        );
    }

    #[test]
    fn all_points_in_one_strip_keeps_everything() {
        let pts: Vec<Vec<f64>> = (0..20)
            .map(|i| vec![0.05 + 0.001 * i as f64, 0.5])
            .collect();
        let ps = PointSet::from_points(2, &pts).unwrap();
        let g = GeometricGraph::build(ps, 0.1, Metric::CubeEuclidean);
        let rep = strip_cut(&g).unwrap();
        assert!(rep.deleted.is_empty());
        assert_eq!(rep.achieved_alpha, 1.0);
    }

    #[test]
    fn no_kept_edge_crosses_a_strip_and_components_confined() {
        let g = sample_rgg(800, 2, 0.05, Metric::CubeEuclidean, trial_seed(3, 1));
        let rep = strip_cut(&g).unwrap();
        let k: usize = rep
            .params
            .iter()
            .find(|(k, _)| k == "k")
            .unwrap()
            .1
            .parse()
            .unwrap();
        let strip_of = |x: f64| ((x * k as f64) as usize).min(k - 1);
        let kept = rep.kept_edges_graph(&g);
        for &(u, v) in kept.edges() {
            assert_eq!(
                strip_of(g.points.coords(u as usize)[0]),
                strip_of(g.points.coords(v as usize)[0])
            );
        }
        // every component inside one strip
        let (labels, sizes) = kept.components();
        let mut comp_strip: Vec<Option<usize>> = vec![None; sizes.len()];
        for v in 0..g.n() {
            let s = strip_of(g.points.coords(v)[0]);
            let c = labels[v] as usize;
            match comp_strip[c] {
                None => comp_strip[c] = Some(s),
                Some(prev) => assert_eq!(prev, s),
            }
        }
    }

    #[test]
    fn exemption_for_large_radius() {
        let g = sample_rgg(100, 2, 0.33, Metric::CubeEuclidean, 9);
        let rep = strip_cut(&g).unwrap();
        assert!(rep.deleted.is_empty());
        assert_eq!(rep.achieved_alpha, 1.0);
    }
}
