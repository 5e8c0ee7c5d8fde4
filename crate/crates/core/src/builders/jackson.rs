//! Exact alternating-cycle search in bipartite graphs: a cycle of length
//! `2|A|` covering every vertex of `A`. Guaranteed to exist when the
//! degree/size hypothesis holds (|A| in [2,k], |B| in [k, 2k-2], A-degrees
//! at least k); the search itself is exact either way.

use crate::graph::CycleCertificate;
use crate::{Error, Result};

/// A bipartite graph with sides `A` (indices `0..a`) and `B` (indices
/// `0..b`), adjacency stored per A-vertex.
#[derive(Debug, Clone)]
pub struct Bipartite {
    pub a: usize,
    pub b: usize,
    pub adj: Vec<Vec<u32>>,
}

impl Bipartite {
    pub fn new(a: usize, b: usize, adj: Vec<Vec<u32>>) -> Result<Self> {
        if adj.len() != a {
            return Err(Error::Parameter("adjacency rows must match |A|".into()));
        }
        if adj.iter().flatten().any(|&w| w as usize >= b) {
            return Err(Error::Parameter("B index out of range".into()));
        }
        Ok(Bipartite { a, b, adj })
    }

    pub fn min_a_degree(&self) -> usize {
        self.adj.iter().map(|l| l.len()).min().unwrap_or(0)
    }

    /// Does some `k` witness the size/degree hypothesis?
    pub fn hypothesis_holds(&self) -> bool {
        // the constraints pin k to max(|A|, ceil((|B|+2)/2))
        let k = self.a.max((self.b + 2).div_ceil(2));
        self.a >= 2 && self.a <= k && self.b >= k && self.b <= 2 * k - 2 && self.min_a_degree() >= k
    }
}

#[derive(Debug, Clone)]
pub struct JacksonOutcome {
    /// Alternating cycle `a_1 b_1 a_2 b_2 ...` covering `A`, as a certificate
    /// over the combined vertex space (`A` first, then `B` offset by `|A|`).
    pub certificate: Option<CycleCertificate>,
    pub hypothesis_ok: bool,
    pub hypothesis_note: String,
}

/// Exhaustive DFS over A-orderings with per-step B choice and availability
/// pruning. `a_cap` bounds the instance size (default 16 in callers);
/// `budget` bounds the node count.
pub fn jackson_cycle(bip: &Bipartite, a_cap: usize, budget: u64) -> Result<JacksonOutcome> {
    if bip.a < 2 {
        return Err(Error::Parameter("|A| must be at least 2".into()));
    }
    if bip.a > a_cap {
        return Err(Error::OracleScope(format!(
            "|A| = {} above the configured bound {a_cap}",
            bip.a
        )));
    }
    let hypothesis_ok = bip.hypothesis_holds();
    let hypothesis_note = if hypothesis_ok {
        "sizes and A-degrees satisfy the bipartite cycle hypothesis".to_string()
    } else {
        format!(
            "hypothesis violated: |A|={}, |B|={}, min A-degree={}",
            bip.a,
            bip.b,
            bip.min_a_degree()
        )
    };

    let mut used_a = vec![false; bip.a];
    let mut used_b = vec![false; bip.b];
    let mut order: Vec<u32> = Vec::with_capacity(bip.a);
    let mut bs: Vec<u32> = Vec::with_capacity(bip.a);
    used_a[0] = true;
    order.push(0);
    let mut nodes = 0u64;
    let found = dfs(bip, &mut used_a, &mut used_b, &mut order, &mut bs, &mut nodes, budget);
    if nodes > budget {
        return Err(Error::OracleScope("search budget exceeded".into()));
    }
    let certificate = if found {
        let mut seq = Vec::with_capacity(2 * bip.a);
        for i in 0..bip.a {
            seq.push(order[i]);
            seq.push(bip.a as u32 + bs[i]);
        }
        Some(CycleCertificate::new(seq))
    } else {
        None
    };
    Ok(JacksonOutcome {
        certificate,
        hypothesis_ok,
        hypothesis_note,
    })
}

fn dfs(
    bip: &Bipartite,
    used_a: &mut [bool],
    used_b: &mut [bool],
    order: &mut Vec<u32>,
    bs: &mut Vec<u32>,
    nodes: &mut u64,
    budget: u64,
) -> bool {
    *nodes += 1;
    if *nodes > budget {
        return false;
    }
    let cur = *order.last().unwrap() as usize;
    if order.len() == bip.a {
        // close the cycle: a free b adjacent to cur and to order[0]
        let first = order[0] as usize;
        for &b in &bip.adj[cur] {
            if !used_b[b as usize] && bip.adj[first].contains(&b) {
                bs.push(b);
                return true;
            }
        }
        return false;
    }
    // availability pruning: every unused A-vertex needs >= 2 free B-neighbours
    // (one in, one out), except loose accounting for the two adjacent to cur/first
    for (a, used) in used_a.iter().enumerate() {
        if *used {
            continue;
        }
        let free = bip.adj[a].iter().filter(|&&b| !used_b[b as usize]).count();
        if free < 2 {
            return false;
        }
    }
    // candidate next A-vertices (those reachable from cur through a free B),
    // fewest connecting choices first
    let mut cands: Vec<(usize, u32)> = Vec::new();
    for a in 0..bip.a {
        if used_a[a] {
            continue;
        }
        let common = bip.adj[cur]
            .iter()
            .filter(|&&b| !used_b[b as usize] && bip.adj[a].contains(&b))
            .count();
        if common > 0 {
            cands.push((common, a as u32));
        }
    }
    cands.sort_unstable();
    for &(_, a) in &cands {
        let a = a as usize;
        let bridge: Vec<u32> = bip.adj[cur]
            .iter()
            .copied()
            .filter(|&b| !used_b[b as usize] && bip.adj[a].contains(&b))
            .collect();
        for b in bridge {
            used_a[a] = true;
            used_b[b as usize] = true;
            order.push(a as u32);
            bs.push(b);
            if dfs(bip, used_a, used_b, order, bs, nodes, budget) {
                return true;
            }
            bs.pop();
            order.pop();
            used_b[b as usize] = false;
            used_a[a] = false;
        }
    }
    false
}

/// Check an alternating-cycle certificate against the bipartite graph.
pub fn verify_jackson(bip: &Bipartite, cert: &CycleCertificate) -> bool {
    let m = cert.seq.len();
    if m != 2 * bip.a || m < 4 {
        return false;
    }
    let mut seen_a = vec![false; bip.a];
    let mut seen_b = vec![false; bip.b];
    for i in 0..m {
        let v = cert.seq[i] as usize;
        if i % 2 == 0 {
            if v >= bip.a || seen_a[v] {
                return false;
            }
            seen_a[v] = true;
        } else {
            let b = v.checked_sub(bip.a);
            match b {
                Some(b) if b < bip.b && !seen_b[b] => seen_b[b] = true,
                _ => return false,
            }
        }
    }
    if !seen_a.iter().all(|&s| s) {
        return false;
    }
    for i in 0..m {
        let x = cert.seq[i];
        let y = cert.seq[(i + 1) % m];
        let (a, b) = if i % 2 == 0 {
            (x as usize, y as usize - bip.a)
        } else {
            (y as usize, x as usize - bip.a)
        };
        if !bip.adj[a].contains(&(b as u32)) {
            return false;
        }
    }
    true
}
