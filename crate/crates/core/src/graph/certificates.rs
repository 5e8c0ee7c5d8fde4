//! Cycle certificates and their verifier. Builders must never return an
//! unverified positive, so everything they emit passes through here.

use super::Graph;

/// A verifiable witness for "this graph contains a cycle": the vertex
/// sequence in cyclic order, plus an optional anchored vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCertificate {
    pub seq: Vec<u32>,
    pub anchored: Option<u32>,
}

impl CycleCertificate {
    pub fn new(seq: Vec<u32>) -> Self {
        CycleCertificate {
            seq,
            anchored: None,
        }
    }

    pub fn with_anchor(mut self, v: u32) -> Self {
        self.anchored = Some(v);
        self
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }
}

/// Check a cycle certificate against a graph: all vertices distinct, length
/// at least 3, every cyclically consecutive pair an edge, the anchored vertex
/// present when `through` is given, and the length equal to `length` when
/// given.
pub fn verify_cycle(
    g: &Graph,
    cert: &CycleCertificate,
    through: Option<u32>,
    length: Option<usize>,
) -> bool {
    let l = cert.seq.len();
    if l < 3 {
        return false;
    }
    if let Some(want) = length {
        if l != want {
            return false;
        }
    }
    let mut seen = vec![false; g.n()];
    for &v in &cert.seq {
        if v as usize >= g.n() || seen[v as usize] {
            return false;
        }
        seen[v as usize] = true;
    }
    if let Some(t) = through {
        if t as usize >= g.n() || !seen[t as usize] {
            return false;
        }
    }
    for i in 0..l {
        let u = cert.seq[i];
        let v = cert.seq[(i + 1) % l];
        if !g.has_edge(u, v) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c5_verifies() {
        let g = Graph::cycle(5);
        let cert = CycleCertificate::new(vec![0, 1, 2, 3, 4]);
        assert!(verify_cycle(&g, &cert, None, None));
        assert!(verify_cycle(&g, &cert, Some(3), Some(5)));
    }

    #[test]
    fn repeated_vertex_rejected() {
        let g = Graph::complete(5);
        let cert = CycleCertificate::new(vec![0, 1, 2, 1]);
        assert!(!verify_cycle(&g, &cert, None, None));
    }

    #[test]
    fn anchor_must_lie_on_cycle() {
        let g = Graph::complete(7);
        let cert = CycleCertificate::new(vec![0, 1, 2, 3, 4, 5]);
        assert!(verify_cycle(&g, &cert, None, Some(6)));
        assert!(!verify_cycle(&g, &cert, Some(6), None));
    }

    #[test]
    fn non_edges_rejected() {
        let g = Graph::cycle(6);
        let cert = CycleCertificate::new(vec![0, 2, 4]);
        assert!(!verify_cycle(&g, &cert, None, None));
    }
}
