//! Exact k-connectivity via vertex-splitting max-flow (Menger), with a
//! Nagamochi–Ibaraki sparse certificate as a preprocessing step so that the
//! flow phase runs on at most `k·n` edges. Witness cuts returned on failure
//! are re-derived on the full graph, so they are always genuine separators.

use super::Graph;

/// Outcome of a k-connectivity query.
#[derive(Debug, Clone)]
pub struct KConnectivity {
    pub connected: bool,
    /// A separating set of fewer than `k` vertices when the answer is false
    /// and one exists (`|V| <= k` fails the definition without a witness).
    pub witness: Option<Vec<u32>>,
}

/// True iff `|V| > k` and no vertex set of size `< k` disconnects the graph.
pub fn is_k_connected(g: &Graph, k: usize) -> KConnectivity {
    if k == 0 {
        return KConnectivity {
            connected: true,
            witness: None,
        };
    }
    let n = g.n();
    if n <= k {
        return KConnectivity {
            connected: false,
            witness: None,
        };
    }
    if !g.is_connected() {
        return KConnectivity {
            connected: false,
            witness: Some(vec![]),
        };
    }
    if k == 1 {
        return KConnectivity {
            connected: true,
            witness: None,
        };
    }
    // Minimum degree bound: removing N(v) isolates v when anything is left.
    if let Some(v) = (0..n as u32).find(|&v| g.degree(v) < k) {
        if n > g.degree(v) + 1 {
            return KConnectivity {
                connected: false,
                witness: Some(g.neighbors(v).to_vec()),
            };
        }
    }
    let h = ni_certificate(g, k);
    let s = (0..n as u32).min_by_key(|&v| h.degree(v)).unwrap();
    let mut net = SplitNetwork::new(&h);
    let mut in_nbhd = vec![false; n];
    in_nbhd[s as usize] = true;
    for &w in h.neighbors(s) {
        in_nbhd[w as usize] = true;
    }
    let mut failing_pair = None;
    for t in 0..n as u32 {
        if in_nbhd[t as usize] {
            continue;
        }
        if net.maxflow_limited(s, t, k) < k {
            failing_pair = Some((s, t));
            break;
        }
    }
    if failing_pair.is_none() {
        let nb = h.neighbors(s).to_vec();
        'outer: for (i, &u) in nb.iter().enumerate() {
            for &v in &nb[i + 1..] {
                if h.has_edge(u, v) {
                    continue;
                }
                if net.maxflow_limited(u, v, k) < k {
                    failing_pair = Some((u, v));
                    break 'outer;
                }
            }
        }
    }
    match failing_pair {
        None => KConnectivity {
            connected: true,
            witness: None,
        },
        Some((x, y)) => {
            // Local connectivity below k in the certificate implies the same
            // in the full graph; the cut is extracted there.
            let mut full = SplitNetwork::new(g);
            let flow = full.maxflow_limited(x, y, k);
            debug_assert!(flow < k);
            let cut = full.min_vertex_cut(x);
            KConnectivity {
                connected: false,
                witness: Some(cut),
            }
        }
    }
}

/// Nagamochi–Ibaraki scan: partitions the edges into forests `F_1, F_2, ...`
/// and keeps the first `k`. The result preserves all local vertex
/// connectivities up to `k`.
fn ni_certificate(g: &Graph, k: usize) -> Graph {
    let n = g.n();
    let mut rank = vec![0usize; n];
    let mut scanned = vec![false; n];
    let mut buckets: Vec<Vec<u32>> = vec![(0..n as u32).collect()];
    let mut top = 0usize;
    let mut kept = Vec::new();
    for _ in 0..n {
        let v = loop {
            while top > 0 && buckets[top].is_empty() {
                top -= 1;
            }
            let cand = buckets[top].pop().expect("an unscanned vertex exists");
            if !scanned[cand as usize] && rank[cand as usize] == top {
                break cand;
            }
        };
        scanned[v as usize] = true;
        for &w in g.neighbors(v) {
            if scanned[w as usize] {
                continue;
            }
            let label = rank[w as usize] + 1;
            if label <= k {
                kept.push((v.min(w), v.max(w)));
            }
            rank[w as usize] = label;
            if buckets.len() <= label {
                buckets.resize(label + 1, Vec::new());
            }
            buckets[label].push(w);
            top = top.max(label);
        }
    }
    Graph::from_edges(n, kept).expect("certificate edges valid")
}

/// Unit-capacity vertex-split flow network: vertex `v` becomes `v_in = 2v`
/// and `v_out = 2v+1` joined by a capacity-1 arc; each undirected edge turns
/// into the two arcs `u_out -> v_in`, `v_out -> u_in`.
struct SplitNetwork {
    head: Vec<u32>,
    next: Vec<u32>,
    to: Vec<u32>,
    used: Vec<bool>,
    arcs: usize,
}

const NONE: u32 = u32::MAX;

impl SplitNetwork {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut net = SplitNetwork {
            head: vec![NONE; 2 * n],
            next: Vec::new(),
            to: Vec::new(),
            used: Vec::new(),
            arcs: 0,
        };
        for v in 0..n as u32 {
            net.add_arc(2 * v, 2 * v + 1);
        }
        for &(u, v) in g.edges() {
            net.add_arc(2 * u + 1, 2 * v);
            net.add_arc(2 * v + 1, 2 * u);
        }
        net
    }

    fn add_arc(&mut self, from: u32, to: u32) {
        // arcs stored in pairs: arc 2i forward, 2i+1 its reverse
        self.to.push(to);
        self.next.push(self.head[from as usize]);
        self.head[from as usize] = (self.arcs * 2) as u32;
        self.to.push(from);
        self.next.push(self.head[to as usize]);
        self.head[to as usize] = (self.arcs * 2 + 1) as u32;
        self.used.push(false);
        self.used.push(true); // reverse arcs start saturated
        self.arcs += 1;
    }

    fn reset(&mut self) {
        for i in 0..self.arcs {
            self.used[2 * i] = false;
            self.used[2 * i + 1] = true;
        }
    }

    /// Max flow from `s` to `t` in vertex-capacity terms, stopping at `limit`.
    fn maxflow_limited(&mut self, s: u32, t: u32, limit: usize) -> usize {
        self.reset();
        let (src, dst) = (2 * s + 1, 2 * t);
        let mut flow = 0;
        let mut parent_arc = vec![NONE; self.head.len()];
        while flow < limit {
            // BFS for an augmenting path in the residual graph
            parent_arc.fill(NONE);
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(src);
            let mut found = false;
            'bfs: while let Some(v) = queue.pop_front() {
                let mut a = self.head[v as usize];
                while a != NONE {
                    if !self.used[a as usize] {
                        let w = self.to[a as usize];
                        if parent_arc[w as usize] == NONE && w != src {
                            parent_arc[w as usize] = a;
                            if w == dst {
                                found = true;
                                break 'bfs;
                            }
                            queue.push_back(w);
                        }
                    }
                    a = self.next[a as usize];
                }
            }
            if !found {
                break;
            }
            // augment along parent arcs
            let mut v = dst;
            while v != src {
                let a = parent_arc[v as usize] as usize;
                self.used[a] = true;
                self.used[a ^ 1] = false;
                v = self.to[a ^ 1];
            }
            flow += 1;
        }
        flow
    }

    /// After a limited max flow fell short: the set of vertices whose in-node
    /// is residual-reachable from the source while the out-node is not.
    fn min_vertex_cut(&self, s: u32) -> Vec<u32> {
        let src = 2 * s + 1;
        let mut seen = vec![false; self.head.len()];
        seen[src as usize] = true;
        let mut stack = vec![src];
        while let Some(v) = stack.pop() {
            let mut a = self.head[v as usize];
            while a != NONE {
                if !self.used[a as usize] {
                    let w = self.to[a as usize];
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        stack.push(w);
                    }
                }
                a = self.next[a as usize];
            }
        }
        let n = self.head.len() / 2;
        (0..n as u32)
            .filter(|&v| seen[2 * v as usize] && !seen[2 * v as usize + 1])
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check_witness(g: &Graph, k: usize, res: &KConnectivity) {
        if let Some(cut) = &res.witness {
            assert!(cut.len() < k, "witness too large");
            let keep: Vec<u32> = (0..g.n() as u32).filter(|v| !cut.contains(v)).collect();
            let (sub, _) = g.induced(&keep);
            assert!(!sub.is_connected(), "witness does not separate");
        }
    }

    #[test]
    fn complete_graph_examples() {
        let k5 = Graph::complete(5);
        assert!(is_k_connected(&k5, 4).connected);
        assert!(!is_k_connected(&k5, 5).connected); // |V| <= k
    }

    #[test]
    fn path_middle_vertex_witness() {
        let p3 = Graph::from_edges(3, vec![(0, 1), (1, 2)]).unwrap();
        let res = is_k_connected(&p3, 2);
        assert!(!res.connected);
        assert_eq!(res.witness, Some(vec![1]));
    }

    #[test]
    fn cycles_are_exactly_two_connected() {
        let c8 = Graph::cycle(8);
        assert!(is_k_connected(&c8, 2).connected);
        let res = is_k_connected(&c8, 3);
        assert!(!res.connected);
        check_witness(&c8, 3, &res);
    }

    /// Brute-force oracle: try every vertex subset of size < k.
    fn brute_k_connected(g: &Graph, k: usize) -> bool {
        if g.n() <= k {
            return false;
        }
        let n = g.n();
        for mask in 0u32..(1 << n) {
            let size = mask.count_ones() as usize;
            if size >= k {
                continue;
            }
            let keep: Vec<u32> = (0..n as u32).filter(|&v| mask & (1 << v) == 0).collect();
            let (sub, _) = g.induced(&keep);
            if !sub.is_connected() {
                return false;
            }
        }
        true
    }

    #[test]
    fn agrees_with_brute_force_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..300 {
            let n = rng.gen_range(2..=9);
            let p: f64 = rng.gen_range(0.2..0.9);
            let mut edges = Vec::new();
            for u in 0..n as u32 {
                for v in (u + 1)..n as u32 {
                    if rng.gen::<f64>() < p {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            for k in 1..=4 {
                let res = is_k_connected(&g, k);
                assert_eq!(
                    res.connected,
                    brute_k_connected(&g, k),
                    "disagreement n={n} k={k} edges={:?}",
                    g.edges()
                );
                check_witness(&g, k, &res);
            }
        }
    }

    #[test]
    fn monotone_in_k_and_bounded_by_min_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..60 {
            let n = rng.gen_range(5..=40);
            let p: f64 = rng.gen_range(0.1..0.7);
            let mut edges = Vec::new();
            for u in 0..n as u32 {
                for v in (u + 1)..n as u32 {
                    if rng.gen::<f64>() < p {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            let mut prev = true;
            for k in 1..=5 {
                let res = is_k_connected(&g, k).connected;
                assert!(!res || prev, "k-connected must imply (k-1)-connected");
                if res {
                    assert!(g.min_degree() >= k);
                }
                prev = res;
            }
        }
    }
}
