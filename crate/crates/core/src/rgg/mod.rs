//! Sampling of random geometric graphs and the distance-ordered graph
//! process with hitting times.
//!
//! All randomness flows through a counter-style splittable scheme: a trial
//! seed is a hash of `(master seed, trial index)`, so trials are
//! order-independent and identical parameters reproduce identical bytes.

use crate::adversary::{run_strategy, AdversaryKind};
use crate::geom::{distance_sq, Metric, PointSet};
use crate::graph::{is_k_connected, check_alpha_subgraph, GeometricGraph, Graph, SubgraphMask};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::{BufWriter, Write};
use std::path::Path;

/// Derive the RNG seed of one trial from a master seed (splitmix64 finalizer
/// over the pair).
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    let mut z = master ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `n` i.i.d. uniform points on `[0,1]^d`, deterministic for a fixed seed.
pub fn sample_points(n: usize, d: usize, seed: u64) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords: Vec<f64> = (0..n * d).map(|_| rng.gen::<f64>()).collect();
    PointSet::new(d, coords).expect("sampled coordinates are valid")
}

/// Sample `G_d(n,r)` (cube metric) or `T_d(n,r)` (torus metric).
pub fn sample_rgg(n: usize, d: usize, r: f64, metric: Metric, seed: u64) -> GeometricGraph {
    GeometricGraph::build(sample_points(n, d, seed), r, metric)
}

/// One edge of a process trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEdge {
    pub u: u32,
    pub v: u32,
    pub dist: f64,
}

/// The distance-ordered random geometric graph process: all pairs within a
/// cutoff radius, sorted by increasing distance (ties broken by lexicographic
/// endpoint order). The prefix of length `i` is the process graph `G_i`.
#[derive(Debug, Clone)]
pub struct ProcessTrace {
    pub points: PointSet,
    pub metric: Metric,
    pub cutoff: f64,
    pub edges: Vec<TraceEdge>,
}

/// Default cutoff radius `4 (log n / n)^{1/d}`; the studied properties hit
/// far below it in practice.
pub fn default_cutoff(n: usize, d: usize) -> f64 {
    4.0 * ((n as f64).ln() / n as f64).powf(1.0 / d as f64)
}

/// Build a trace from freshly sampled points.
pub fn rgg_process(n: usize, d: usize, seed: u64, cutoff_r: f64, metric: Metric) -> Result<ProcessTrace> {
    ProcessTrace::from_points(sample_points(n, d, seed), cutoff_r, metric)
}

impl ProcessTrace {
    /// Build a trace from explicit positions (used by tests to inject
    /// configurations).
    pub fn from_points(points: PointSet, cutoff_r: f64, metric: Metric) -> Result<Self> {
        if cutoff_r <= 0.0 {
            return Err(Error::Parameter("cutoff radius must be positive".into()));
        }
        let skeleton = GeometricGraph::build(points, cutoff_r, metric);
        let points = skeleton.points;
        let mut edges: Vec<TraceEdge> = skeleton
            .graph
            .edges()
            .iter()
            .map(|&(u, v)| TraceEdge {
                u,
                v,
                dist: distance_sq(points.coords(u as usize), points.coords(v as usize), metric)
                    .sqrt(),
            })
            .collect();
        edges.sort_by(|a, b| {
            a.dist
                .partial_cmp(&b.dist)
                .unwrap()
                .then(a.u.cmp(&b.u))
                .then(a.v.cmp(&b.v))
        });
        Ok(ProcessTrace {
            points,
            metric,
            cutoff: cutoff_r,
            edges,
        })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// The prefix graph `G_i` (first `i` edges).
    pub fn prefix_graph(&self, i: usize) -> Graph {
        Graph::from_edges(self.n(), self.edges[..i].iter().map(|e| (e.u, e.v)))
            .expect("trace edges valid")
    }

    /// The prefix graph as a geometric graph with radius `||e_i||`.
    pub fn prefix_geometric(&self, i: usize) -> GeometricGraph {
        let r = if i == 0 { 0.0 } else { self.edges[i - 1].dist };
        GeometricGraph {
            points: self.points.clone(),
            r,
            metric: self.metric,
            graph: self.prefix_graph(i),
        }
    }

    /// Write `i u v dist` lines, one per edge, 1-based index.
    pub fn write(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path)?;
        let mut w = BufWriter::new(file);
        writeln!(
            w,
            "trace {} {} {} {}",
            self.points.dim(),
            self.n(),
            self.cutoff,
            self.metric.name()
        )?;
        for (i, e) in self.edges.iter().enumerate() {
            writeln!(w, "{} {} {} {}", i + 1, e.u, e.v, e.dist)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Monotone properties whose hitting time can be measured along a trace.
#[derive(Debug, Clone)]
pub enum HittingProperty {
    Connected,
    MinDegree(usize),
    KConnected(usize),
    /// Holds when the given adversary fails to produce a disconnected mask
    /// that still keeps an `alpha` fraction of every degree.
    ResilientConnected { alpha: f64, adversary: AdversaryKind },
}

impl HittingProperty {
    pub fn name(&self) -> String {
        match self {
            HittingProperty::Connected => "connected".into(),
            HittingProperty::MinDegree(d) => format!("min-degree>={d}"),
            HittingProperty::KConnected(k) => format!("{k}-connected"),
            HittingProperty::ResilientConnected { alpha, adversary } => {
                format!("resilient-connected(alpha={alpha},{})", adversary.name())
            }
        }
    }
}

/// Result of a hitting-time query: the least prefix index at which the
/// property holds, together with the realized radius, or a censored record
/// when the property is not attained within the trace.
#[derive(Debug, Clone)]
pub struct HittingRecord {
    pub property: String,
    pub index: Option<usize>,
    pub radius: Option<f64>,
}

impl HittingRecord {
    pub fn censored(&self) -> bool {
        self.index.is_none()
    }
}

/// Exact least prefix index at which the monotone property first holds.
/// Connectivity and degree thresholds use incremental structures (union-find
/// and degree counters); the heavier properties use binary search over
/// prefixes, which is valid for monotone properties.
pub fn hitting_time(trace: &ProcessTrace, property: &HittingProperty, seed: u64) -> HittingRecord {
    let name = property.name();
    let index = match property {
        HittingProperty::Connected => hit_connected(trace),
        HittingProperty::MinDegree(d) => hit_min_degree(trace, *d),
        HittingProperty::KConnected(k) => {
            // a graph is k-connected only with min degree >= k; start the
            // search there
            let lb = hit_min_degree(trace, *k);
            lb.and_then(|lb| {
                binary_search_hit(lb, trace.edges.len(), |i| {
                    is_k_connected(&trace.prefix_graph(i), *k).connected
                })
            })
        }
        HittingProperty::ResilientConnected { alpha, adversary } => {
            let holds = |i: usize| {
                let g = trace.prefix_geometric(i);
                let report = run_strategy(adversary, &g, seed);
                match report {
                    Err(_) => false,
                    Ok(rep) => {
                        let mask_graph = rep.kept_edges_graph(&g);
                        let mask = rebuild_mask(&g, &mask_graph);
                        let pass_alpha = check_alpha_subgraph(&mask, *alpha)
                            .map(|c| c.pass)
                            .unwrap_or(false);
                        !(rep.disconnected && pass_alpha)
                    }
                }
            };
            binary_search_hit(0, trace.edges.len(), holds)
        }
    };
    HittingRecord {
        property: name,
        index,
        radius: index.and_then(|i| {
            if i == 0 {
                None
            } else {
                Some(trace.edges[i - 1].dist)
            }
        }),
    }
}

fn rebuild_mask<'g>(g: &'g GeometricGraph, kept: &Graph) -> SubgraphMask<'g> {
    let mut mask = SubgraphMask::full(g);
    for &(u, v) in g.graph.edges() {
        if !kept.has_edge(u, v) {
            mask.delete_edge(u, v);
        }
    }
    mask
}

fn binary_search_hit(lb: usize, ub: usize, holds: impl Fn(usize) -> bool) -> Option<usize> {
    if !holds(ub) {
        return None;
    }
    let (mut lo, mut hi) = (lb, ub); // invariant: holds(hi), lo <= first hit
    if holds(lb) {
        return Some(lb);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

fn hit_connected(trace: &ProcessTrace) -> Option<usize> {
    let n = trace.n();
    if n <= 1 {
        return Some(0);
    }
    let mut dsu = Dsu::new(n);
    let mut comps = n;
    for (i, e) in trace.edges.iter().enumerate() {
        if dsu.union(e.u as usize, e.v as usize) {
            comps -= 1;
            if comps == 1 {
                return Some(i + 1);
            }
        }
    }
    None
}

fn hit_min_degree(trace: &ProcessTrace, d: usize) -> Option<usize> {
    let n = trace.n();
    if d == 0 {
        return Some(0);
    }
    let mut deg = vec![0usize; n];
    let mut below = n;
    for (i, e) in trace.edges.iter().enumerate() {
        for v in [e.u as usize, e.v as usize] {
            deg[v] += 1;
            if deg[v] == d {
                below -= 1;
                if below == 0 {
                    return Some(i + 1);
                }
            }
        }
    }
    // n = 1 cannot have positive degree; handled by `below` never reaching 0
    None
}

/// Plain union-find with path halving and union by size.
struct Dsu {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] as usize != v {
            self.parent[v] = self.parent[self.parent[v] as usize];
            v = self.parent[v] as usize;
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::ball_volume;

    #[test]
    fn reproducible_bit_identical() {
        let a = sample_rgg(200, 2, 0.1, Metric::CubeEuclidean, 99);
        let b = sample_rgg(200, 2, 0.1, Metric::CubeEuclidean, 99);
        assert_eq!(a.points, b.points);
        assert_eq!(a.graph.edges(), b.graph.edges());
        let t1 = rgg_process(100, 2, 5, 0.4, Metric::CubeEuclidean).unwrap();
        let t2 = rgg_process(100, 2, 5, 0.4, Metric::CubeEuclidean).unwrap();
        assert_eq!(t1.edges, t2.edges);
    }

    #[test]
    fn two_points_diameter_edge() {
        for d in 1..=3 {
            let g = sample_rgg(2, d, (d as f64).sqrt(), Metric::CubeEuclidean, 7);
            assert_eq!(g.graph.edge_count(), 1);
        }
    }

    #[test]
    fn zero_radius_is_empty() {
        let g = sample_rgg(100, 2, 0.0, Metric::CubeEuclidean, 3);
        assert_eq!(g.graph.edge_count(), 0);
    }

    #[test]
    fn torus_edge_count_near_mean() {
        // mean = C(n,2) * theta_2 r^2 ~ 15692 at n=1000, r=0.1; allow 4 sigma
        let n = 1000;
        let r = 0.1;
        let mean = (n * (n - 1) / 2) as f64 * ball_volume(2) * r * r;
        let p = ball_volume(2) * r * r;
        let sigma = ((n * (n - 1) / 2) as f64 * p * (1.0 - p)).sqrt();
        assert!((mean - 15692.0).abs() < 1.0);
        let g = sample_rgg(n, 2, r, Metric::TorusEuclidean, 2024);
        let e = g.graph.edge_count() as f64;
        assert!(
            (e - mean).abs() <= 4.0 * sigma,
            "edge count {e} too far from {mean}"
        );
    }

    #[test]
    fn injected_collinear_trace() {
        let pts = PointSet::from_points(1, &[vec![0.0], vec![0.4], vec![1.0]]).unwrap();
        let trace = ProcessTrace::from_points(pts, 1.0, Metric::CubeEuclidean).unwrap();
        let order: Vec<(u32, u32)> = trace.edges.iter().map(|e| (e.u, e.v)).collect();
        assert_eq!(order, vec![(0, 1), (1, 2), (0, 2)]);
        // G_0 has no edges
        assert_eq!(trace.prefix_graph(0).edge_count(), 0);
        // connectivity hits at index 2
        let rec = hitting_time(&trace, &HittingProperty::Connected, 0);
        assert_eq!(rec.index, Some(2));
        assert!((rec.radius.unwrap() - 0.6).abs() < 1e-12);
    }

    #[test]
    fn hitting_order_invariants() {
        for seed in 0..20u64 {
            let trace = rgg_process(300, 2, trial_seed(17, seed), 0.35, Metric::CubeEuclidean)
                .unwrap();
            let conn = hitting_time(&trace, &HittingProperty::Connected, 0);
            let mindeg = hitting_time(&trace, &HittingProperty::MinDegree(1), 0);
            let two = hitting_time(&trace, &HittingProperty::KConnected(2), 0);
            let mindeg2 = hitting_time(&trace, &HittingProperty::MinDegree(2), 0);
            if let (Some(c), Some(m)) = (conn.index, mindeg.index) {
                assert!(c >= m);
            }
            if let (Some(t), Some(m2)) = (two.index, mindeg2.index) {
                assert!(t >= m2);
            }
            // definition check: holds at i*, fails at i*-1 (spot on connectivity)
            if let Some(c) = conn.index {
                assert!(trace.prefix_graph(c).is_connected());
                assert!(c == 0 || !trace.prefix_graph(c - 1).is_connected());
            }
        }
    }

    #[test]
    fn torus_degree_statistics() {
        // expected degree (n-1) theta_d r^d, empirical mean within 3 sigma
        let n = 800;
        let r = 0.08;
        let mut total = 0usize;
        let trials = 10;
        for t in 0..trials {
            let g = sample_rgg(n, 2, r, Metric::TorusEuclidean, trial_seed(5, t));
            total += 2 * g.graph.edge_count();
        }
        let mean_deg = total as f64 / (n as u64 * trials) as f64;
        let p = ball_volume(2) * r * r;
        let expect = (n - 1) as f64 * p;
        let sigma_mean = ((n - 1) as f64 * p * (1.0 - p) / (n as u64 * trials) as f64).sqrt() * 2.0;
        assert!(
            (mean_deg - expect).abs() < 3.0 * sigma_mean.max(0.05),
            "mean degree {mean_deg} vs {expect}"
        );
    }
}
