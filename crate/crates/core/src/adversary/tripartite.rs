//! Random tripartition cut: colour the vertices with three colours uniformly
//! at random and delete every edge inside a colour class. The kept graph is
//! 3-partite, hence K4-free.

use super::AttackReport;
use crate::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn tripartite_cut(g: &Graph, seed: u64) -> AttackReport {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let colour: Vec<u8> = (0..n).map(|_| rng.gen_range(0..3u8)).collect();
    let deleted: Vec<(u32, u32)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| colour[u as usize] == colour[v as usize])
        .collect();
    let report = AttackReport::from_deletion(
        "tripartite",
        vec![(
            "class_sizes".into(),
            format!(
                "{}/{}/{}",
                colour.iter().filter(|&&c| c == 0).count(),
                colour.iter().filter(|&&c| c == 1).count(),
                colour.iter().filter(|&&c| c == 2).count()
            ),
        )],
        seed,
        g,
        deleted,
        None,
        false,
    );
    // sampling audit: no K4 among random quadruples of the kept graph
    let kept: std::collections::HashSet<(u32, u32)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| colour[u as usize] != colour[v as usize])
        .collect();
    if n >= 4 {
        for _ in 0..1000 {
            let mut q: Vec<u32> = (0..4).map(|_| rng.gen_range(0..n as u32)).collect();
            q.sort_unstable();
            q.dedup();
            if q.len() < 4 {
                continue;
            }
            let complete = q.iter().enumerate().all(|(i, &a)| {
                q[i + 1..]
                    .iter()
                    .all(|&b| kept.contains(&(a.min(b), a.max(b))))
            });
            debug_assert!(!complete, "3-partite graphs cannot contain K4");
        }
    }
    report
}
