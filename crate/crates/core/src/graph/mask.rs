//! Per-edge keep/delete overlays on a geometric graph, with the alpha-subgraph
//! degree-fraction check.

use super::{GeometricGraph, Graph};
use crate::{Error, Result};
use std::io::{BufRead, BufWriter, Write};
use std::path::Path;

/// A spanning subgraph of a base geometric graph, stored as a keep/delete
/// flag per base edge plus per-vertex kept degrees.
#[derive(Debug, Clone)]
pub struct SubgraphMask<'g> {
    base: &'g GeometricGraph,
    kept: Vec<bool>,
    kept_deg: Vec<u32>,
}

impl<'g> SubgraphMask<'g> {
    /// The identity mask: everything kept.
    pub fn full(base: &'g GeometricGraph) -> Self {
        let kept = vec![true; base.graph.edge_count()];
        let kept_deg = (0..base.n() as u32)
            .map(|v| base.graph.degree(v) as u32)
            .collect();
        SubgraphMask {
            base,
            kept,
            kept_deg,
        }
    }

    pub fn base(&self) -> &'g GeometricGraph {
        self.base
    }

    /// Delete one base edge (no-op when already deleted). Unknown edges are
    /// a contract violation by the caller.
    pub fn delete_edge(&mut self, u: u32, v: u32) {
        let idx = self
            .base
            .graph
            .edge_index(u, v)
            .expect("edge must exist in the base graph");
        if self.kept[idx] {
            self.kept[idx] = false;
            self.kept_deg[u as usize] -= 1;
            self.kept_deg[v as usize] -= 1;
        }
    }

    pub fn is_kept(&self, u: u32, v: u32) -> bool {
        self.base
            .graph
            .edge_index(u, v)
            .map(|i| self.kept[i])
            .unwrap_or(false)
    }

    pub fn kept_degree(&self, v: u32) -> usize {
        self.kept_deg[v as usize] as usize
    }

    pub fn kept_edge_count(&self) -> usize {
        self.kept.iter().filter(|&&k| k).count()
    }

    pub fn kept_edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.base
            .graph
            .edges()
            .iter()
            .zip(&self.kept)
            .filter(|(_, &k)| k)
            .map(|(&e, _)| e)
    }

    /// Kept neighbours of `v`, in sorted order.
    pub fn kept_neighbors(&self, v: u32) -> Vec<u32> {
        self.base
            .graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| self.is_kept(v, w))
            .collect()
    }

    /// Degree fraction `d_H(v)/d_G(v)`, taken as 1 for isolated base vertices.
    pub fn kept_fraction(&self, v: u32) -> f64 {
        let d = self.base.graph.degree(v);
        if d == 0 {
            1.0
        } else {
            self.kept_deg[v as usize] as f64 / d as f64
        }
    }

    /// The achieved alpha: minimum degree fraction over all vertices.
    pub fn achieved_alpha(&self) -> f64 {
        (0..self.base.n() as u32)
            .map(|v| self.kept_fraction(v))
            .fold(1.0, f64::min)
    }

    /// Materialise the kept subgraph.
    pub fn kept_graph(&self) -> Graph {
        Graph::from_edges(self.base.n(), self.kept_edges()).expect("kept edges are valid")
    }
}

/// Result of the alpha-subgraph check.
#[derive(Debug, Clone, Copy)]
pub struct AlphaCheck {
    pub pass: bool,
    /// Minimum of `d_H(v)/d_G(v)` over non-isolated vertices (1 if none).
    pub worst_ratio: f64,
    /// A vertex attaining the minimum.
    pub witness: Option<u32>,
}

/// Check whether the mask keeps at least an `alpha` fraction of every
/// vertex's base degree. Isolated base vertices pass vacuously.
pub fn check_alpha_subgraph(mask: &SubgraphMask, alpha: f64) -> Result<AlphaCheck> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Parameter(format!("alpha {alpha} outside [0,1]")));
    }
    let mut worst = 1.0f64;
    let mut witness = None;
    let mut pass = true;
    for v in 0..mask.base.n() as u32 {
        let d = mask.base.graph.degree(v);
        if d == 0 {
            continue;
        }
        let ratio = mask.kept_degree(v) as f64 / d as f64;
        if ratio < worst {
            worst = ratio;
            witness = Some(v);
        }
        if (mask.kept_degree(v) as f64) < alpha * d as f64 - 1e-12 {
            pass = false;
        }
    }
    Ok(AlphaCheck {
        pass,
        worst_ratio: worst,
        witness,
    })
}

/// Write a mask as `base <path>` then the kept edge list.
pub fn write_mask_file(mask: &SubgraphMask, base_path: &str, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut w = BufWriter::new(file);
    writeln!(w, "base {base_path}")?;
    writeln!(w, "kept {}", mask.kept_edge_count())?;
    for (u, v) in mask.kept_edges() {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()?;
    Ok(())
}

/// Read a mask against an already-loaded base graph. Returns the mask and the
/// base path recorded in the file.
pub fn read_mask_file<'g>(
    base: &'g GeometricGraph,
    path: &Path,
) -> Result<(SubgraphMask<'g>, String)> {
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    let mut kept_pairs = Vec::new();
    let mut base_path = String::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("base ") {
            base_path = rest.to_string();
            continue;
        }
        if line.starts_with("kept ") {
            continue;
        }
        let mut it = line.split_whitespace();
        let parse = |t: Option<&str>| -> Result<u32> {
            t.and_then(|t| t.parse().ok()).ok_or(Error::Parse {
                line: i + 1,
                msg: "invalid kept-edge line".into(),
            })
        };
        let u = parse(it.next())?;
        let v = parse(it.next())?;
        kept_pairs.push((u, v));
    }
    let mut mask = SubgraphMask::full(base);
    let keep: std::collections::HashSet<(u32, u32)> = kept_pairs
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    for &(u, v) in base.graph.edges() {
        if !keep.contains(&(u, v)) {
            mask.delete_edge(u, v);
        }
    }
    for &(u, v) in &keep {
        if base.graph.edge_index(u, v).is_none() {
            return Err(Error::Parameter(format!(
                "mask keeps edge ({u},{v}) absent from the base graph"
            )));
        }
    }
    Ok((mask, base_path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Metric, PointSet};

    fn toy_base(n: usize, edges: &[(u32, u32)]) -> GeometricGraph {
        // positions are irrelevant for mask logic; use a line layout with a
        // radius large enough to produce exactly the requested edges via the
        // explicit constructor below
        let pts = PointSet::from_points(1, &vec![vec![0.5]; n]).unwrap();
        GeometricGraph {
            points: pts,
            r: 0.0,
            metric: Metric::CubeEuclidean,
            graph: Graph::from_edges(n, edges.to_vec()).unwrap(),
        }
    }

    #[test]
    fn identity_mask_passes_alpha_one() {
        let base = toy_base(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]);
        let mask = SubgraphMask::full(&base);
        let res = check_alpha_subgraph(&mask, 1.0).unwrap();
        assert!(res.pass);
        assert_eq!(res.worst_ratio, 1.0);
    }

    #[test]
    fn k4_matching_fails_half() {
        let base = toy_base(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let mut mask = SubgraphMask::full(&base);
        // keep the perfect matching {01, 23}
        for (u, v) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
            mask.delete_edge(u, v);
        }
        let res = check_alpha_subgraph(&mask, 0.5).unwrap();
        assert!(!res.pass);
        assert!((res.worst_ratio - 1.0 / 3.0).abs() < 1e-12);
        assert!(res.witness.is_some());
    }

    #[test]
    fn c6_minus_edge_passes_half() {
        let base = toy_base(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]);
        let mut mask = SubgraphMask::full(&base);
        mask.delete_edge(0, 1);
        let res = check_alpha_subgraph(&mask, 0.5).unwrap();
        assert!(res.pass);
        assert!((res.worst_ratio - 0.5).abs() < 1e-12);
    }

    #[test]
    fn isolated_vertices_pass_vacuously() {
        let base = toy_base(3, &[(0, 1)]);
        let mut mask = SubgraphMask::full(&base);
        mask.delete_edge(0, 1);
        let res = check_alpha_subgraph(&mask, 1.0).unwrap();
        assert!(!res.pass); // 0 and 1 fail
        let base2 = toy_base(2, &[]);
        let mask2 = SubgraphMask::full(&base2);
        assert!(check_alpha_subgraph(&mask2, 1.0).unwrap().pass);
    }
}
