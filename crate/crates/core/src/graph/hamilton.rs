//! Exact Hamiltonicity oracle (bitset dynamic programming up to a configured
//! bound, branch-and-bound with pruning beyond) and cycle powers.

use super::{CycleCertificate, Graph};
use crate::{Error, Result};

/// Configuration for the exact Hamiltonicity oracle.
#[derive(Debug, Clone, Copy)]
pub struct HamOptions {
    /// Largest `n` handled by the Held–Karp bitset DP.
    pub dp_bound: usize,
    /// Hard cap on `n`; above this the oracle refuses.
    pub hard_cap: usize,
    /// Node budget for the branch-and-bound search.
    pub bb_budget: u64,
}

impl Default for HamOptions {
    fn default() -> Self {
        HamOptions {
            dp_bound: 24,
            hard_cap: 64,
            bb_budget: 50_000_000,
        }
    }
}

/// Answer of the exact oracle. `Unknown` only occurs when the
/// branch-and-bound budget is exhausted; it is never a wrong answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HamResult {
    Hamiltonian(CycleCertificate),
    NotHamiltonian,
    Unknown,
}

impl HamResult {
    pub fn is_hamiltonian(&self) -> bool {
        matches!(self, HamResult::Hamiltonian(_))
    }
}

/// Exact Hamiltonicity. Dynamic programming for `n <= opts.dp_bound`,
/// branch-and-bound with degree pruning up to `opts.hard_cap`.
pub fn is_hamiltonian_exact(g: &Graph, opts: &HamOptions) -> Result<HamResult> {
    let n = g.n();
    if n > opts.hard_cap {
        return Err(Error::OracleScope(format!(
            "n = {n} above the hard cap {}",
            opts.hard_cap
        )));
    }
    if n < 3 {
        return Ok(HamResult::NotHamiltonian);
    }
    if g.min_degree() < 2 || !g.is_connected() {
        return Ok(HamResult::NotHamiltonian);
    }
    let res = if n <= opts.dp_bound.min(25) {
        held_karp(g)
    } else {
        branch_and_bound(g, opts.bb_budget)
    };
    if let HamResult::Hamiltonian(cert) = &res {
        debug_assert!(super::verify_cycle(g, cert, None, Some(n)));
    }
    Ok(res)
}

/// Bitset Held–Karp reachability: `dp[mask]` holds the endpoints `v` such
/// that some path starts at vertex 0, visits exactly `mask ∪ {0}`, and ends
/// at `v`. Vertices `1..n` map to bits `0..n-1`.
fn held_karp(g: &Graph) -> HamResult {
    let n = g.n();
    let full: u32 = if n - 1 == 32 {
        u32::MAX
    } else {
        (1u32 << (n - 1)) - 1
    };
    let adj: Vec<u32> = (0..n as u32)
        .map(|v| {
            let mut m = 0u32;
            for &w in g.neighbors(v) {
                if w > 0 {
                    m |= 1 << (w - 1);
                }
            }
            m
        })
        .collect();
    let mut dp = vec![0u32; (full as usize) + 1];
    let start_nbrs = adj[0];
    let mut m = start_nbrs;
    while m != 0 {
        let b = m & m.wrapping_neg();
        dp[b as usize] = b;
        m ^= b;
    }
    for mask in 1..=full {
        let ends = dp[mask as usize];
        if ends == 0 {
            continue;
        }
        let mut rest = full & !mask;
        while rest != 0 {
            let b = rest & rest.wrapping_neg();
            rest ^= b;
            let w = b.trailing_zeros() as usize + 1;
            if ends & adj[w] != 0 {
                dp[(mask | b) as usize] |= b;
            }
        }
    }
    let closing = dp[full as usize] & adj[0];
    if closing == 0 {
        return HamResult::NotHamiltonian;
    }
    // reconstruct backwards from any closing endpoint
    let mut seq = Vec::with_capacity(n);
    let mut mask = full;
    let mut end = closing.trailing_zeros() + 1;
    while mask != 0 {
        seq.push(end);
        let b = 1u32 << (end - 1);
        mask &= !b;
        if mask == 0 {
            break;
        }
        let prevs = dp[mask as usize] & adj[end as usize];
        debug_assert!(prevs != 0);
        end = prevs.trailing_zeros() + 1;
    }
    seq.push(0);
    seq.reverse();
    HamResult::Hamiltonian(CycleCertificate::new(seq))
}

fn branch_and_bound(g: &Graph, budget: u64) -> HamResult {
    let n = g.n();
    let words = n.div_ceil(64);
    let mut visited = vec![0u64; words];
    visited[0] |= 1;
    let mut path = vec![0u32];
    let mut nodes = 0u64;
    match dfs(g, &mut visited, &mut path, &mut nodes, budget) {
        Some(true) => HamResult::Hamiltonian(CycleCertificate::new(path)),
        Some(false) => HamResult::NotHamiltonian,
        None => HamResult::Unknown,
    }
}

/// Returns Some(true) when a Hamilton cycle was completed in `path`,
/// Some(false) when the subtree is exhausted, None when out of budget.
fn dfs(
    g: &Graph,
    visited: &mut [u64],
    path: &mut Vec<u32>,
    nodes: &mut u64,
    budget: u64,
) -> Option<bool> {
    *nodes += 1;
    if *nodes > budget {
        return None;
    }
    let n = g.n();
    if path.len() == n {
        return Some(g.has_edge(*path.last().unwrap(), path[0]));
    }
    let cur = *path.last().unwrap();
    // prune: every unvisited vertex must keep >= 2 unvisited-or-terminal
    // connections available
    for v in 0..n as u32 {
        if visited[v as usize / 64] >> (v % 64) & 1 == 1 {
            continue;
        }
        let mut free = 0;
        for &w in g.neighbors(v) {
            let vis = visited[w as usize / 64] >> (w % 64) & 1 == 1;
            if !vis || w == cur || w == path[0] {
                free += 1;
                if free >= 2 {
                    break;
                }
            }
        }
        if free < 2 {
            return Some(false);
        }
    }
    let mut next: Vec<u32> = g
        .neighbors(cur)
        .iter()
        .copied()
        .filter(|&w| visited[w as usize / 64] >> (w % 64) & 1 == 0)
        .collect();
    // fewest-free-neighbours first
    next.sort_by_key(|&w| {
        g.neighbors(w)
            .iter()
            .filter(|&&x| visited[x as usize / 64] >> (x % 64) & 1 == 0)
            .count()
    });
    for w in next {
        visited[w as usize / 64] |= 1 << (w % 64);
        path.push(w);
        let sub = dfs(g, visited, path, nodes, budget);
        if sub == Some(true) {
            return Some(true);
        }
        path.pop();
        visited[w as usize / 64] &= !(1 << (w % 64));
        if sub.is_none() {
            return None;
        }
    }
    Some(false)
}

/// The `k`-th power of the `n`-cycle: vertices `0..n`, edge `ij` iff the
/// cyclic distance between `i` and `j` is at most `k`.
pub fn power_of_cycle(n: usize, k: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Parameter("power_of_cycle needs n >= 3".into()));
    }
    if k < 1 || 2 * k > n {
        return Err(Error::Parameter(format!(
            "power_of_cycle needs 1 <= k <= n/2, got k={k}, n={n}"
        )));
    }
    let mut edges = Vec::new();
    for i in 0..n as u32 {
        for step in 1..=k as u32 {
            let j = (i + step) % n as u32;
            if i != j {
                edges.push((i.min(j), i.max(j)));
            }
        }
    }
    Graph::from_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn k4_is_hamiltonian() {
        let res = is_hamiltonian_exact(&Graph::complete(4), &HamOptions::default()).unwrap();
        assert!(res.is_hamiltonian());
    }

    #[test]
    fn star_is_not() {
        let star = Graph::from_edges(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        let res = is_hamiltonian_exact(&star, &HamOptions::default()).unwrap();
        assert_eq!(res, HamResult::NotHamiltonian);
    }

    fn petersen() -> Graph {
        let mut edges = vec![];
        for i in 0..5u32 {
            edges.push((i, (i + 1) % 5)); // outer cycle
            edges.push((i, i + 5)); // spokes
            edges.push((i + 5, (i + 2) % 5 + 5)); // pentagram
        }
        Graph::from_edges(10, edges).unwrap()
    }

    /// Naive permutation-search oracle, independent of the DP.
    fn naive_hamiltonian(g: &Graph) -> bool {
        let n = g.n();
        if n < 3 {
            return false;
        }
        let mut perm: Vec<u32> = (1..n as u32).collect();
        fn rec(g: &Graph, fixed: usize, perm: &mut Vec<u32>) -> bool {
            if fixed == perm.len() {
                return g.has_edge(0, perm[0])
                    && g.has_edge(*perm.last().unwrap(), 0)
                    && perm.windows(2).all(|w| g.has_edge(w[0], w[1]));
            }
            for i in fixed..perm.len() {
                perm.swap(fixed, i);
                // partial pruning on the prefix
                let ok = if fixed == 0 {
                    g.has_edge(0, perm[0])
                } else {
                    g.has_edge(perm[fixed - 1], perm[fixed])
                };
                if ok && rec(g, fixed + 1, perm) {
                    return true;
                }
                perm.swap(fixed, i);
            }
            false
        }
        rec(g, 0, &mut perm)
    }

    #[test]
    fn petersen_is_not_hamiltonian() {
        let g = petersen();
        assert!(naive_hamiltonian(&Graph::cycle(10)));
        assert!(!naive_hamiltonian(&g), "oracle: Petersen non-Hamiltonian");
        let res = is_hamiltonian_exact(&g, &HamOptions::default()).unwrap();
        assert_eq!(res, HamResult::NotHamiltonian);
    }

    #[test]
    fn dp_agrees_with_naive_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let opts = HamOptions::default();
        for trial in 0..10_000 {
            let n = rng.gen_range(3..=8);
            let p: f64 = rng.gen_range(0.15..0.95);
            let mut edges = Vec::new();
            for u in 0..n as u32 {
                for v in (u + 1)..n as u32 {
                    if rng.gen::<f64>() < p {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            let fast = is_hamiltonian_exact(&g, &opts).unwrap();
            let slow = naive_hamiltonian(&g);
            assert_eq!(
                fast.is_hamiltonian(),
                slow,
                "trial {trial} n={n} edges={:?}",
                g.edges()
            );
        }
    }

    #[test]
    fn branch_and_bound_on_midsize_cycle() {
        // n = 30 exceeds the DP bound; a plain cycle plus chords
        let mut edges: Vec<(u32, u32)> = (0..30u32).map(|i| (i, (i + 1) % 30)).collect();
        edges.push((0, 15));
        edges.push((7, 22));
        let g = Graph::from_edges(30, edges).unwrap();
        let res = is_hamiltonian_exact(&g, &HamOptions::default()).unwrap();
        assert!(res.is_hamiltonian());
    }

    #[test]
    fn hard_cap_is_enforced() {
        let g = Graph::complete(70);
        assert!(is_hamiltonian_exact(&g, &HamOptions::default()).is_err());
    }

    #[test]
    fn power_of_cycle_examples() {
        assert_eq!(power_of_cycle(5, 2).unwrap(), Graph::complete(5));
        assert_eq!(power_of_cycle(6, 1).unwrap(), Graph::cycle(6));
        let g = power_of_cycle(8, 2).unwrap();
        assert_eq!(g.edge_count(), 16);
        assert!((0..8u32).all(|v| g.degree(v) == 4));
        assert!(power_of_cycle(8, 5).is_err());
    }

    #[test]
    fn power_of_cycle_odd_half_is_complete() {
        // brute enumeration oracle for the edge count built into complete()
        for n in (3..=15usize).step_by(2) {
            let g = power_of_cycle(n, n / 2).unwrap();
            assert_eq!(g, Graph::complete(n), "n={n}");
        }
    }

    #[test]
    fn power_of_cycle_16_edges_brute() {
        // count pairs at cyclic distance <= 2 for n=8 by brute force
        let mut count = 0;
        for i in 0..8i32 {
            for j in (i + 1)..8 {
                let d = (j - i).min(8 - (j - i));
                if d <= 2 {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 16);
    }
}
