//! Executable edge-deletion strategies. Each returns an [`AttackReport`]
//! recording the deleted edges, the achieved per-vertex degree fraction, and
//! the structural damage.

mod annulus;
mod budget;
mod interval;
mod stiebitz;
mod strip;
mod triangle_killer;
mod tripartite;

pub use annulus::{annulus_cut, solve_annulus_params, AnnulusParams};
pub use budget::{farthest_fraction_cut, random_budget_cut};
pub use interval::empty_interval_cut;
pub use stiebitz::stiebitz_cut;
pub use strip::strip_cut;
pub use triangle_killer::triangle_killer_cut;
pub use tripartite::tripartite_cut;

use crate::graph::{GeometricGraph, Graph, SubgraphMask};
use crate::{Error, Result};
use std::io::Write;
use std::path::Path;

/// Outcome of one strategy run: the deletion set plus damage statistics.
/// `achieved_alpha` is always recomputed from the deletion set, never trusted
/// from the strategy internals.
#[derive(Debug, Clone)]
pub struct AttackReport {
    pub strategy: String,
    pub params: Vec<(String, String)>,
    pub seed: u64,
    /// Minimum over non-isolated vertices of `d_H(v)/d_G(v)`.
    pub achieved_alpha: f64,
    pub disconnected: bool,
    /// Component sizes of the kept graph, descending.
    pub component_sizes: Vec<usize>,
    /// Strategy-specific witness geometry, when one was found.
    pub witness: Option<String>,
    /// Set when an a.a.s. strategy found no witness on this instance; the
    /// deletion set is then empty.
    pub no_witness: bool,
    /// Deleted base edges, `u < v`, sorted.
    pub deleted: Vec<(u32, u32)>,
}

impl AttackReport {
    /// Assemble a report from a deletion set against a base graph.
    pub fn from_deletion(
        strategy: &str,
        params: Vec<(String, String)>,
        seed: u64,
        base: &Graph,
        mut deleted: Vec<(u32, u32)>,
        witness: Option<String>,
        no_witness: bool,
    ) -> AttackReport {
        for e in deleted.iter_mut() {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        deleted.sort_unstable();
        deleted.dedup();
        let mut kept_deg: Vec<usize> = (0..base.n() as u32).map(|v| base.degree(v)).collect();
        for &(u, v) in &deleted {
            debug_assert!(base.has_edge(u, v), "deleting a non-edge");
            kept_deg[u as usize] -= 1;
            kept_deg[v as usize] -= 1;
        }
        let achieved_alpha = (0..base.n())
            .filter(|&v| base.degree(v as u32) > 0)
            .map(|v| kept_deg[v] as f64 / base.degree(v as u32) as f64)
            .fold(1.0, f64::min);
        let kept = kept_graph_of(base, &deleted);
        let (_, mut sizes) = kept.components();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        AttackReport {
            strategy: strategy.to_string(),
            params,
            seed,
            achieved_alpha,
            disconnected: sizes.len() > 1,
            component_sizes: sizes,
            witness,
            no_witness,
            deleted,
        }
    }

    /// The kept subgraph as a plain graph.
    pub fn kept_edges_graph(&self, base: &GeometricGraph) -> Graph {
        kept_graph_of(&base.graph, &self.deleted)
    }

    /// The kept subgraph against an abstract base graph.
    pub fn kept_graph_abstract(&self, base: &Graph) -> Graph {
        kept_graph_of(base, &self.deleted)
    }

    /// Apply the deletion set to the base as a mask.
    pub fn apply<'g>(&self, base: &'g GeometricGraph) -> SubgraphMask<'g> {
        let mut mask = SubgraphMask::full(base);
        for &(u, v) in &self.deleted {
            mask.delete_edge(u, v);
        }
        mask
    }

    /// Structured text record: strategy, params, seed, achieved alpha,
    /// disconnection, component-size histogram, witness geometry.
    pub fn write(&self, path: &Path) -> Result<()> {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(w, "strategy {}", self.strategy)?;
        for (k, v) in &self.params {
            writeln!(w, "param {k} {v}")?;
        }
        writeln!(w, "seed {}", self.seed)?;
        writeln!(w, "achieved_alpha {}", self.achieved_alpha)?;
        writeln!(w, "disconnected {}", self.disconnected)?;
        writeln!(w, "no_witness {}", self.no_witness)?;
        let mut hist = std::collections::BTreeMap::new();
        for &s in &self.component_sizes {
            *hist.entry(s).or_insert(0usize) += 1;
        }
        let hist_str: Vec<String> = hist.iter().map(|(s, c)| format!("{s}x{c}")).collect();
        writeln!(w, "components {}", hist_str.join(" "))?;
        if let Some(wit) = &self.witness {
            writeln!(w, "witness {wit}")?;
        }
        writeln!(w, "deleted_edges {}", self.deleted.len())?;
        w.flush()?;
        Ok(())
    }

    pub fn max_component(&self) -> usize {
        self.component_sizes.first().copied().unwrap_or(0)
    }
}

fn kept_graph_of(base: &Graph, deleted: &[(u32, u32)]) -> Graph {
    let del: std::collections::HashSet<(u32, u32)> = deleted.iter().copied().collect();
    Graph::from_edges(
        base.n(),
        base.edges().iter().copied().filter(|e| !del.contains(e)),
    )
    .expect("kept edges valid")
}

/// Strategy selector used by the CLI and the hitting-time machinery.
#[derive(Debug, Clone)]
pub enum AdversaryKind {
    Stiebitz,
    Strip,
    EmptyInterval { eps: f64 },
    Tripartite,
    /// Triangle killer aimed at the vertex nearest the cube centre.
    TriangleKillerCenter { eps: f64, boundary_margin: f64 },
    Annulus { c: f64, a: f64 },
    FarthestFraction { frac: f64 },
    RandomBudget { budget: f64 },
}

impl AdversaryKind {
    pub fn name(&self) -> &'static str {
        match self {
            AdversaryKind::Stiebitz => "stiebitz",
            AdversaryKind::Strip => "strip",
            AdversaryKind::EmptyInterval { .. } => "empty-interval",
            AdversaryKind::Tripartite => "tripartite",
            AdversaryKind::TriangleKillerCenter { .. } => "triangle-killer",
            AdversaryKind::Annulus { .. } => "annulus",
            AdversaryKind::FarthestFraction { .. } => "farthest-fraction",
            AdversaryKind::RandomBudget { .. } => "random-budget",
        }
    }
}

/// Run a strategy by name against a geometric graph.
pub fn run_strategy(
    kind: &AdversaryKind,
    g: &GeometricGraph,
    seed: u64,
) -> Result<AttackReport> {
    match kind {
        AdversaryKind::Stiebitz => Ok(stiebitz_cut(&g.graph, seed)),
        AdversaryKind::Strip => strip_cut(g),
        AdversaryKind::EmptyInterval { eps } => empty_interval_cut(g, *eps),
        AdversaryKind::Tripartite => Ok(tripartite_cut(&g.graph, seed)),
        AdversaryKind::TriangleKillerCenter {
            eps,
            boundary_margin,
        } => {
            let v = center_most_vertex(g).ok_or_else(|| {
                Error::Precondition("graph has no vertices".into())
            })?;
            triangle_killer_cut(g, v, *eps, *boundary_margin)
        }
        AdversaryKind::Annulus { c, a } => {
            let params = solve_annulus_params(*c, *a, 40)?;
            annulus_cut(g, &params)
        }
        AdversaryKind::FarthestFraction { frac } => Ok(farthest_fraction_cut(g, *frac)),
        AdversaryKind::RandomBudget { budget } => Ok(random_budget_cut(g, *budget, seed)),
    }
}

/// The vertex closest to the centre of the cube.
pub fn center_most_vertex(g: &GeometricGraph) -> Option<u32> {
    let d = g.dim();
    let center = vec![0.5; d];
    (0..g.n() as u32).min_by(|&a, &b| {
        let da = crate::geom::distance_sq(g.points.coords(a as usize), &center,
            crate::geom::Metric::CubeEuclidean);
        let db = crate::geom::distance_sq(g.points.coords(b as usize), &center,
            crate::geom::Metric::CubeEuclidean);
        da.partial_cmp(&db).unwrap()
    })
}
