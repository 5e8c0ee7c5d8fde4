//! Connectivity certification by coupling with a shrunken-radius auxiliary
//! graph: when the geometric graph at radius `delta r` is `c`-connected and
//! every pair joined at that radius keeps at least `c` common neighbours in
//! the mask, the mask itself is `c`-connected (any deletion of fewer than `c`
//! vertices leaves a surviving common neighbour along every auxiliary path).

use crate::graph::{is_k_connected, GeometricGraph, Graph, SubgraphMask};
use crate::{Error, Result};

/// A verifiable connectivity witness.
#[derive(Debug, Clone)]
pub struct ConnectivityCertificate {
    pub delta: f64,
    pub c: usize,
    pub aux_edges: Vec<(u32, u32)>,
    /// Common kept-neighbour count per auxiliary edge, aligned with
    /// `aux_edges`.
    pub common_counts: Vec<u32>,
}

impl ConnectivityCertificate {
    pub fn min_common(&self) -> u32 {
        self.common_counts.iter().copied().min().unwrap_or(0)
    }
}

#[derive(Debug, Clone)]
pub enum CertifyOutcome {
    Certified(ConnectivityCertificate),
    /// The auxiliary graph is not `c`-connected; the cut is returned when it
    /// exists.
    AuxiliaryCut { witness: Option<Vec<u32>> },
    /// Some auxiliary pair keeps too few common neighbours in the mask.
    PairDeficient { pair: (u32, u32), count: usize },
}

impl CertifyOutcome {
    pub fn certified(&self) -> bool {
        matches!(self, CertifyOutcome::Certified(_))
    }
}

pub fn certify_connectivity(
    mask: &SubgraphMask,
    delta: f64,
    c: usize,
) -> Result<CertifyOutcome> {
    if !(0.0 < delta && delta < 1.0) {
        return Err(Error::Parameter("delta must lie in (0,1)".into()));
    }
    if c < 1 {
        return Err(Error::Parameter("c must be at least 1".into()));
    }
    let base = mask.base();
    let aux = GeometricGraph::build(base.points.clone(), delta * base.r, base.metric);
    let conn = is_k_connected(&aux.graph, c);
    if !conn.connected {
        return Ok(CertifyOutcome::AuxiliaryCut {
            witness: conn.witness,
        });
    }
    // common kept neighbours per auxiliary edge, via bitset rows of the mask
    let kept = mask.kept_graph();
    let rows = kept.adjacency_bits();
    let mut counts = Vec::with_capacity(aux.graph.edge_count());
    for &(u, v) in aux.graph.edges() {
        let count: u32 = rows[u as usize]
            .iter()
            .zip(&rows[v as usize])
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        if (count as usize) < c {
            return Ok(CertifyOutcome::PairDeficient {
                pair: (u, v),
                count: count as usize,
            });
        }
        counts.push(count);
    }
    Ok(CertifyOutcome::Certified(ConnectivityCertificate {
        delta,
        c,
        aux_edges: aux.graph.edges().to_vec(),
        common_counts: counts,
    }))
}

/// Independent re-check of a certificate against the mask it certifies: the
/// auxiliary edges must be `c`-connected as a graph and every recorded count
/// must match a recomputation.
pub fn verify_connectivity_certificate(
    mask: &SubgraphMask,
    cert: &ConnectivityCertificate,
) -> bool {
    let n = mask.base().n();
    let Ok(aux) = Graph::from_edges(n, cert.aux_edges.iter().copied()) else {
        return false;
    };
    if !is_k_connected(&aux, cert.c).connected {
        return false;
    }
    let kept = mask.kept_graph();
    let rows = kept.adjacency_bits();
    cert.aux_edges
        .iter()
        .zip(&cert.common_counts)
        .all(|(&(u, v), &recorded)| {
            let count: u32 = rows[u as usize]
                .iter()
                .zip(&rows[v as usize])
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            count == recorded && count as usize >= cert.c
        })
}
