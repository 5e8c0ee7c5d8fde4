//! Graph representation, subgraph masks and exact verification oracles.

mod certificates;
mod connectivity;
mod geometric;
mod hamilton;
mod mask;

pub use certificates::{verify_cycle, CycleCertificate};
pub use connectivity::{is_k_connected, KConnectivity};
pub use geometric::{read_graph_file, write_graph_file, GeometricGraph};
pub use hamilton::{is_hamiltonian_exact, power_of_cycle, HamOptions, HamResult};
pub use mask::{check_alpha_subgraph, read_mask_file, write_mask_file, AlphaCheck, SubgraphMask};

use crate::{Error, Result};

/// Simple undirected graph with sorted adjacency lists and a canonical
/// lexicographically sorted edge list (`u < v`). Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<u32>>,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    /// Build from an edge list; loops are rejected, duplicates collapsed.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut es: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Parameter(format!("loop at vertex {a}")));
            }
            if a as usize >= n || b as usize >= n {
                return Err(Error::Parameter(format!("edge ({a},{b}) out of range")));
            }
            es.push((a.min(b), a.max(b)));
        }
        es.sort_unstable();
        es.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &es {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        Ok(Graph { n, adj, edges: es })
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, edges).expect("complete graph is valid")
    }

    pub fn cycle(n: usize) -> Self {
        let edges = (0..n as u32).map(|i| (i, (i + 1) % n as u32));
        Graph::from_edges(n, edges).expect("cycle is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|l| l.len()).min().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        let l = &self.adj[u as usize];
        l.binary_search(&v).is_ok()
    }

    /// Position of the edge `{u,v}` in the canonical edge list.
    pub fn edge_index(&self, u: u32, v: u32) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Non-decreasing degree sequence.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(|l| l.len()).collect();
        d.sort_unstable();
        d
    }

    /// Connected component label per vertex plus component sizes.
    pub fn components(&self) -> (Vec<u32>, Vec<usize>) {
        let mut label = vec![u32::MAX; self.n];
        let mut sizes = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.n {
            if label[start] != u32::MAX {
                continue;
            }
            let comp = sizes.len() as u32;
            let mut size = 0usize;
            stack.push(start as u32);
            label[start] = comp;
            while let Some(v) = stack.pop() {
                size += 1;
                for &w in self.neighbors(v) {
                    if label[w as usize] == u32::MAX {
                        label[w as usize] = comp;
                        stack.push(w);
                    }
                }
            }
            sizes.push(size);
        }
        (label, sizes)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().1.len() == 1
    }

    /// Induced subgraph on `verts` with the original vertex ids returned as a
    /// lookup table (`local -> original`).
    pub fn induced(&self, verts: &[u32]) -> (Graph, Vec<u32>) {
        let mut index = std::collections::HashMap::with_capacity(verts.len());
        for (i, &v) in verts.iter().enumerate() {
            index.insert(v, i as u32);
        }
        let mut edges = Vec::new();
        for (i, &v) in verts.iter().enumerate() {
            for &w in self.neighbors(v) {
                if let Some(&j) = index.get(&w) {
                    if (i as u32) < j {
                        edges.push((i as u32, j));
                    }
                }
            }
        }
        (
            Graph::from_edges(verts.len(), edges).expect("induced edges valid"),
            verts.to_vec(),
        )
    }

    /// Adjacency rows as fixed-width bitsets, for dense small-graph work.
    pub fn adjacency_bits(&self) -> Vec<Vec<u64>> {
        let words = self.n.div_ceil(64);
        let mut rows = vec![vec![0u64; words]; self.n];
        for &(u, v) in &self.edges {
            rows[u as usize][v as usize / 64] |= 1 << (v % 64);
            rows[v as usize][u as usize / 64] |= 1 << (u % 64);
        }
        rows
    }
}
