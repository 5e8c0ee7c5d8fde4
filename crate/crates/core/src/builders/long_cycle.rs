//! Long cycles through a prescribed vertex via the three-colour scheme:
//! blue vertices are carried by the cycle, red vertices are inserted between
//! blue vertices of their assigned cell through alternating bipartite cycles,
//! and green vertices bridge blue vertices of adjacent cells. Even lengths
//! come from gluing per-cell alternating cycles along a grid path; odd
//! lengths splice a short odd path (using the one blue-blue edge at the
//! prescribed vertex) into an even cycle.
//!
//! The probabilistic lemmas behind the construction become named
//! instance-level audits here. Colour masses and slack constants default to
//! the source values but are exposed as a tuning block, because the original
//! slack is asymptotic and desk-scale instances need heavier colour classes.

use super::jackson::{jackson_cycle, Bipartite};
use super::{audit, AuditLedger};
use crate::geom::{grid_spanning_path, tessellate, Metric, SideRule, Tessellation};
use crate::graph::{verify_cycle, CycleCertificate, Graph, SubgraphMask};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{HashMap, HashSet, VecDeque};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Colour {
    Blue,
    Red,
    Green,
}

/// Colour masses, assignment policy and slack settings.
#[derive(Debug, Clone)]
pub struct ColourParams {
    pub blue: f64,
    pub red: f64,
    pub green: f64,
    /// Assign reds/greens to the least-loaded eligible cell/pair instead of
    /// uniformly at random.
    pub balanced_assignment: bool,
    /// Interior margin in units of `r`: cells closer to the boundary do not
    /// host the cycle core.
    pub boundary_margin: f64,
    /// Cell-rule constant: cells have side `1/ceil(d/(delta r))`.
    pub delta: f64,
    pub jackson_cap: usize,
    pub jackson_budget: u64,
    /// Odd lengths below this are refused outright: an adversary may destroy
    /// all short odd cycles at a vertex (triangles in the extreme case).
    pub short_odd_min: usize,
    /// Stop at the first failing audit (the faithful mode); otherwise audits
    /// are recorded and the construction itself is the gate.
    pub gate_on_audits: bool,
}

#[derive(Debug, Clone)]
pub struct LongCycleParams {
    pub eta: f64,
    pub eps: f64,
    pub colours: ColourParams,
}

impl LongCycleParams {
    /// The source constants: blue `eta/(1+eta) + eps/40`, red
    /// `1/(1+eta) - eps/20`, green `eps/40`, margin `2r`, uniform
    /// assignments, audit-gated.
    pub fn paper(eta: f64, eps: f64) -> Self {
        LongCycleParams {
            eta,
            eps,
            colours: ColourParams {
                blue: eta / (1.0 + eta) + eps / 40.0,
                red: 1.0 / (1.0 + eta) - eps / 20.0,
                green: eps / 40.0,
                balanced_assignment: false,
                boundary_margin: 2.0,
                delta: 0.5,
                jackson_cap: 16,
                jackson_budget: 50_000_000,
                short_odd_min: 5,
                gate_on_audits: true,
            },
        }
    }

    /// Desk-scale tuning: heavier green mass, balanced assignments, no
    /// boundary margin, constructive gating.
    pub fn tuned(eta: f64, eps: f64) -> Self {
        LongCycleParams {
            eta,
            eps,
            colours: ColourParams {
                blue: 0.46,
                red: 0.46,
                green: 0.08,
                balanced_assignment: true,
                boundary_margin: 0.0,
                delta: 0.85,
                jackson_cap: 128,
                jackson_budget: 50_000_000,
                short_odd_min: 5,
                gate_on_audits: false,
            },
        }
    }
}

/// A sampled colouring with the per-red cell and per-green pair assignments.
#[derive(Debug, Clone)]
pub struct Colouring {
    pub colour: Vec<Colour>,
    pub red_cell: Vec<Option<u32>>,
    pub green_pair: Vec<Option<(u32, u32)>>,
}

#[derive(Debug)]
pub enum LongCycleOutcome {
    Cycle {
        certificate: CycleCertificate,
        ledger: AuditLedger,
        colouring: Colouring,
    },
    Diagnostic {
        reason: String,
        ledger: AuditLedger,
    },
}

impl LongCycleOutcome {
    pub fn certificate(&self) -> Option<&CycleCertificate> {
        match self {
            LongCycleOutcome::Cycle { certificate, .. } => Some(certificate),
            LongCycleOutcome::Diagnostic { .. } => None,
        }
    }

    pub fn diagnostic(&self) -> Option<&str> {
        match self {
            LongCycleOutcome::Cycle { .. } => None,
            LongCycleOutcome::Diagnostic { reason, .. } => Some(reason),
        }
    }
}

struct Ctx {
    h: Graph,
    tess: Tessellation,
    cell_of: Vec<u32>,
    colouring: Colouring,
    blues: Vec<Vec<u32>>,
    reds: Vec<Vec<u32>>,
    greens: HashMap<(u32, u32), Vec<u32>>,
    box_range: (usize, usize),
    used: HashSet<u32>,
    jackson_cap: usize,
    jackson_budget: u64,
}

impl Ctx {
    fn in_box(&self, cell: u32) -> bool {
        let (lo, hi) = self.box_range;
        self.tess
            .cell_coords(cell as usize)
            .iter()
            .all(|&c| c >= lo && c <= hi)
    }

    /// An unused green assigned to the pair, kept-adjacent to both targets.
    fn take_green(&mut self, q1: u32, q2: u32, x: u32, y: u32) -> Option<u32> {
        let key = (q1.min(q2), q1.max(q2));
        let pool = self.greens.get(&key)?;
        let pick = pool
            .iter()
            .copied()
            .find(|&z| !self.used.contains(&z) && self.h.has_edge(z, x) && self.h.has_edge(z, y))?;
        self.used.insert(pick);
        Some(pick)
    }
}

/// Build a cycle of length `l` through `v` in the masked graph.
pub fn long_cycle(
    mask: &SubgraphMask,
    v: u32,
    l: usize,
    params: &LongCycleParams,
    seed: u64,
) -> Result<LongCycleOutcome> {
    let base = mask.base();
    let n = base.n();
    let d = base.dim();
    if base.metric != Metric::CubeEuclidean {
        return Err(Error::Precondition("long cycles need the cube metric".into()));
    }
    if !(0.5..1.0).contains(&params.eta) {
        return Err(Error::Parameter("eta must lie in [1/2, 1)".into()));
    }
    if params.eps <= 0.0 || params.eps > 1.0 - params.eta + 1e-12 {
        return Err(Error::Parameter("eps must lie in (0, 1 - eta]".into()));
    }
    let l_max = (2.0 * params.eta * n as f64 / (1.0 + params.eta)).floor() as usize;
    if l < 4 || l > l_max {
        return Err(Error::Parameter(format!(
            "cycle length {l} outside [4, {l_max}]"
        )));
    }
    if v as usize >= n {
        return Err(Error::Parameter("anchor vertex out of range".into()));
    }
    if base.r > (d as f64).sqrt() {
        return Err(Error::Parameter("radius above the cube diameter".into()));
    }
    let mut ledger = AuditLedger::new();
    if l % 2 == 1 && l < params.colours.short_odd_min {
        return Ok(LongCycleOutcome::Diagnostic {
            reason: format!(
                "odd length {l} below the configured threshold {}: an adversary may delete \
                 every short odd cycle at a vertex (all triangles in the extreme case)",
                params.colours.short_odd_min
            ),
            ledger,
        });
    }

    let tess = tessellate(
        d,
        SideRule::Jackson {
            delta: params.colours.delta,
        },
        base.r,
    )?;
    let cell_total = tess.cell_count();
    let mut cell_of = vec![0u32; n];
    for u in 0..n as u32 {
        cell_of[u as usize] = tess.cell_of(base.points.coords(u as usize)) as u32;
    }
    let Some(box_range) = tess.interior_range(params.colours.boundary_margin * base.r) else {
        return Ok(LongCycleOutcome::Diagnostic {
            reason: "no interior cells at the configured boundary margin".into(),
            ledger,
        });
    };

    let h = mask.kept_graph();
    let colouring = sample_colouring(base, &tess, v, params, seed);
    let mut blues: Vec<Vec<u32>> = vec![Vec::new(); cell_total];
    let mut reds: Vec<Vec<u32>> = vec![Vec::new(); cell_total];
    let mut greens: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
    for u in 0..n as u32 {
        match colouring.colour[u as usize] {
            Colour::Blue => blues[cell_of[u as usize] as usize].push(u),
            Colour::Red => {
                if let Some(q) = colouring.red_cell[u as usize] {
                    reds[q as usize].push(u);
                }
            }
            Colour::Green => {
                if let Some(pair) = colouring.green_pair[u as usize] {
                    greens.entry(pair).or_default().push(u);
                }
            }
        }
    }

    run_audits(
        &mut ledger, base, &h, &tess, &blues, &reds, &greens, params, box_range,
    );
    if params.colours.gate_on_audits {
        if let Some(bad) = ledger.iter().find(|a| !a.pass) {
            return Ok(LongCycleOutcome::Diagnostic {
                reason: format!("audit `{}` failed: {}", bad.name, bad.detail),
                ledger,
            });
        }
    }

    let mut ctx = Ctx {
        h,
        tess,
        cell_of,
        colouring,
        blues,
        reds,
        greens,
        box_range,
        used: HashSet::new(),
        jackson_cap: params.colours.jackson_cap,
        jackson_budget: params.colours.jackson_budget,
    };

    let result = if l % 2 == 0 {
        build_even(&mut ctx, v, l / 2)
    } else {
        build_odd(&mut ctx, v, l)
    };
    match result {
        Err(reason) => Ok(LongCycleOutcome::Diagnostic { reason, ledger }),
        Ok(seq) => {
            let cert = CycleCertificate::new(seq).with_anchor(v);
            if verify_cycle(&ctx.h, &cert, Some(v), Some(l)) {
                Ok(LongCycleOutcome::Cycle {
                    certificate: cert,
                    ledger,
                    colouring: ctx.colouring,
                })
            } else {
                Ok(LongCycleOutcome::Diagnostic {
                    reason: "assembled cycle failed verification".into(),
                    ledger,
                })
            }
        }
    }
}

fn sample_colouring(
    base: &crate::graph::GeometricGraph,
    tess: &Tessellation,
    v: u32,
    params: &LongCycleParams,
    seed: u64,
) -> Colouring {
    let n = base.n();
    let c = &params.colours;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut colour = Vec::with_capacity(n);
    for _ in 0..n {
        let x: f64 = rng.gen();
        colour.push(if x < c.blue {
            Colour::Blue
        } else if x < c.blue + c.red {
            Colour::Red
        } else if x < c.blue + c.red + c.green {
            Colour::Green
        } else {
            Colour::Red
        });
    }
    colour[v as usize] = Colour::Blue; // the prescribed vertex rides the cycle
    let mut red_cell = vec![None; n];
    let mut green_pair = vec![None; n];
    let mut red_load: HashMap<u32, usize> = HashMap::new();
    let mut green_load: HashMap<(u32, u32), usize> = HashMap::new();
    for u in 0..n as u32 {
        match colour[u as usize] {
            Colour::Red => {
                let cands = contained_cells(base, tess, u);
                if cands.is_empty() {
                    continue;
                }
                let pick = if c.balanced_assignment {
                    *cands
                        .iter()
                        .min_by_key(|&&q| (red_load.get(&q).copied().unwrap_or(0), q))
                        .unwrap()
                } else {
                    cands[rng.gen_range(0..cands.len())]
                };
                *red_load.entry(pick).or_insert(0) += 1;
                red_cell[u as usize] = Some(pick);
            }
            Colour::Green => {
                let cands = contained_pairs(base, tess, u);
                if cands.is_empty() {
                    continue;
                }
                let pick = if c.balanced_assignment {
                    *cands
                        .iter()
                        .min_by_key(|&&p| (green_load.get(&p).copied().unwrap_or(0), p))
                        .unwrap()
                } else {
                    cands[rng.gen_range(0..cands.len())]
                };
                *green_load.entry(pick).or_insert(0) += 1;
                green_pair[u as usize] = Some(pick);
            }
            Colour::Blue => {}
        }
    }
    Colouring {
        colour,
        red_cell,
        green_pair,
    }
}

/// Cells entirely contained in the ball of radius `r` around `u`.
fn contained_cells(
    base: &crate::graph::GeometricGraph,
    tess: &Tessellation,
    u: u32,
) -> Vec<u32> {
    let p = base.points.coords(u as usize);
    let d = p.len();
    let m = tess.cells_per_axis() as isize;
    let s = tess.side();
    let r = base.r;
    let lo: Vec<isize> = p.iter().map(|&x| ((x - r) / s).floor() as isize).collect();
    let hi: Vec<isize> = p.iter().map(|&x| ((x + r) / s).ceil() as isize).collect();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<isize>> = vec![vec![]];
    for a in 0..d {
        let mut next = Vec::new();
        for prefix in &stack {
            for cdx in lo[a].max(0)..=hi[a].min(m - 1) {
                let mut q = prefix.clone();
                q.push(cdx);
                next.push(q);
            }
        }
        stack = next;
    }
    'cell: for coord in &stack {
        for corner in 0..(1usize << d) {
            let mut dist2 = 0.0;
            for a in 0..d {
                let x = (coord[a] + ((corner >> a) & 1) as isize) as f64 * s;
                dist2 += (x - p[a]) * (x - p[a]);
            }
            if dist2 > r * r {
                continue 'cell;
            }
        }
        let ucoord: Vec<usize> = coord.iter().map(|&c| c as usize).collect();
        out.push(tess.cell_id(&ucoord) as u32);
    }
    out.sort_unstable();
    out
}

/// Adjacent cell pairs whose union is contained in the ball around `u`.
fn contained_pairs(
    base: &crate::graph::GeometricGraph,
    tess: &Tessellation,
    u: u32,
) -> Vec<(u32, u32)> {
    let contained = contained_cells(base, tess, u);
    let set: HashSet<u32> = contained.iter().copied().collect();
    let mut out = Vec::new();
    for &q in &contained {
        for nb in tess.neighbors(q as usize) {
            let nb = nb as u32;
            if nb > q && set.contains(&nb) {
                out.push((q, nb));
            }
        }
    }
    out.sort_unstable();
    out
}

#[allow(clippy::too_many_arguments)]
fn run_audits(
    ledger: &mut AuditLedger,
    base: &crate::graph::GeometricGraph,
    h: &Graph,
    tess: &Tessellation,
    blues: &[Vec<u32>],
    reds: &[Vec<u32>],
    greens: &HashMap<(u32, u32), Vec<u32>>,
    params: &LongCycleParams,
    box_range: (usize, usize),
) {
    let n = base.n() as f64;
    let d = base.dim();
    let s = tess.side();
    let cell_mean = s.powi(d as i32) * n;
    let eps = params.eps;
    let eta = params.eta;
    let (lo_r, hi_r) = box_range;
    let in_box = |id: usize| tess.cell_coords(id).iter().all(|&c| c >= lo_r && c <= hi_r);
    let mut counts = vec![0usize; tess.cell_count()];
    for u in 0..base.n() {
        counts[tess.cell_of(base.points.coords(u))] += 1;
    }

    // point distribution: every interior cell near its mean occupancy
    let mut worst_ratio: f64 = 1.0;
    for (id, &cnt) in counts.iter().enumerate() {
        if !in_box(id) {
            continue;
        }
        let ratio = cnt as f64 / cell_mean;
        if (ratio - 1.0).abs() > (worst_ratio - 1.0).abs() {
            worst_ratio = ratio;
        }
    }
    ledger.push(audit(
        "point-distribution cell counts",
        (worst_ratio - 1.0).abs() <= eps / 100.0,
        format!(
            "worst cell/mean ratio {worst_ratio:.4} (band 1 +- {:.4})",
            eps / 100.0
        ),
    ));

    // blue occupancy band per cell, stated against the configured blue mass
    let blue_lo = (params.colours.blue - 3.0 * eps / 280.0) * cell_mean;
    let blue_hi = (params.colours.blue + eps / 3.0 - eps / 40.0) * cell_mean;
    let mut blue_ok = true;
    let mut blue_detail = format!("all interior cells within [{blue_lo:.1}, {blue_hi:.1}]");
    for (id, b) in blues.iter().enumerate() {
        if !in_box(id) {
            continue;
        }
        let cnt = b.len() as f64;
        if cnt < blue_lo || cnt > blue_hi {
            blue_ok = false;
            blue_detail = format!("cell {id}: {cnt} outside [{blue_lo:.1}, {blue_hi:.1}]");
            break;
        }
    }
    ledger.push(audit("blue occupancy per cell", blue_ok, blue_detail));

    // every high-degree vertex keeps a sixth of its kept degree in blue
    let threshold = 40.0 * n.ln();
    let mut bn_ok = true;
    let mut bn_detail = "all high-degree vertices pass".to_string();
    let colour_of = |w: u32, blues: &[Vec<u32>], cell: usize| blues[cell].binary_search(&w).is_ok();
    for u in 0..base.n() as u32 {
        let deg = h.degree(u);
        if (deg as f64) < threshold {
            continue;
        }
        let blue_deg = h
            .neighbors(u)
            .iter()
            .filter(|&&w| {
                let cell = tess.cell_of(base.points.coords(w as usize));
                colour_of(w, blues, cell)
            })
            .count();
        if (blue_deg as f64) < deg as f64 / 6.0 {
            bn_ok = false;
            bn_detail = format!("vertex {u}: {blue_deg} blue of {deg} kept neighbours");
            break;
        }
    }
    ledger.push(audit("blue neighbour share", bn_ok, bn_detail));

    // red support: the poorest interior blue vertex's count of kept red
    // neighbours assigned to its own cell
    let k_red = (eta / (1.0 + eta) + eps / 3.0) * cell_mean;
    let mut red_ok = true;
    let mut red_detail = format!("all blues above the threshold {k_red:.1}");
    'outer: for (id, b) in blues.iter().enumerate() {
        if !in_box(id) {
            continue;
        }
        for &u in b {
            let support = reds[id].iter().filter(|&&w| h.has_edge(u, w)).count();
            if (support as f64) < k_red {
                red_ok = false;
                red_detail =
                    format!("blue {u} in cell {id}: {support} red supporters < {k_red:.1}");
                break 'outer;
            }
        }
    }
    ledger.push(audit("red support per blue vertex", red_ok, red_detail));

    let red_cap = (1.0 / (1.0 + eta) + eps / 20.0).max(params.colours.red + eps / 20.0) * cell_mean;
    let mut load_ok = true;
    let mut load_detail = format!("all cells below the cap {red_cap:.1}");
    for (id, r) in reds.iter().enumerate() {
        if in_box(id) && r.len() as f64 > red_cap {
            load_ok = false;
            load_detail = format!("cell {id}: {} reds above {red_cap:.1}", r.len());
            break;
        }
    }
    ledger.push(audit("red load per cell", load_ok, load_detail));

    // green availability per interior adjacent pair
    let mut green_min = usize::MAX;
    let mut where_min = (0usize, 0usize);
    for id in 0..tess.cell_count() {
        if !in_box(id) {
            continue;
        }
        for nb in tess.neighbors(id) {
            if nb < id || !in_box(nb) {
                continue;
            }
            let cnt = greens
                .get(&(id as u32, nb as u32))
                .map(|v| v.len())
                .unwrap_or(0);
            if cnt < green_min {
                green_min = cnt;
                where_min = (id, nb);
            }
        }
    }
    let green_ok = green_min != usize::MAX && green_min >= 5;
    ledger.push(audit(
        "green supply per cell pair",
        green_ok,
        format!("minimum pair supply {green_min} at cells {where_min:?}"),
    ));
}

/// Per-cell slice of the even-cycle core.
struct CellPart {
    cell: u32,
    o: Vec<u32>,
    is_anchor: bool,
}

impl CellPart {
    fn t_end(&self) -> usize {
        if self.is_anchor {
            4
        } else {
            2
        }
    }

    fn tp_start(&self) -> usize {
        (self.t_end() + 2) % self.o.len()
    }
}

/// The core claim: a cycle of length `2 ell` through `anchor` (a blue vertex
/// in an interior cell), avoiding `forbidden`, alternating blue/non-blue,
/// with reds confined to their assigned cells and at most two greens per
/// adjacent cell pair. Returns the cycle and the anchor's position; the two
/// vertices after the anchor are always a red of its cell followed by
/// another blue of its cell (the anchored length-2 subpath).
fn claim_cycle(
    ctx: &mut Ctx,
    anchor: u32,
    ell: usize,
    forbidden: &HashSet<u32>,
) -> std::result::Result<(Vec<u32>, usize), String> {
    if ell < 2 {
        return Err(format!("claim needs ell >= 2, got {ell}"));
    }
    let anchor_cell = ctx.cell_of[anchor as usize] as usize;
    if !ctx.in_box(anchor_cell as u32) {
        return Err("claim anchor outside the interior box".into());
    }
    let box_cells = ctx.tess.box_cells(ctx.box_range);
    let snake = grid_spanning_path(&ctx.tess, Some(&box_cells))
        .map_err(|e| format!("interior snake failed: {e}"))?;
    let pos = snake
        .iter()
        .position(|&q| q == anchor_cell)
        .ok_or("anchor cell missing from the snake")?;
    let cap = |cell: usize| -> usize {
        let blue = ctx.blues[cell]
            .iter()
            .filter(|&&b| b == anchor || !forbidden.contains(&b) && !ctx.used.contains(&b))
            .count();
        blue.min(ctx.reds[cell].iter().filter(|r| !ctx.used.contains(r)).count())
    };
    let anchor_cap = cap(snake[pos]);
    let (mut left, mut right) = (pos, pos);
    let mut capsum = anchor_cap;
    if anchor_cap < ell {
        if anchor_cap < 3 {
            return Err(format!(
                "anchor cell supply {anchor_cap} too small (needs 3 blues with reds)"
            ));
        }
        while capsum < ell {
            if right - left + 1 >= ell.saturating_sub(1) / 2 {
                return Err(format!(
                    "window hit the cell budget with supply {capsum} < {ell}"
                ));
            }
            let right_cap = if right + 1 < snake.len() {
                Some(cap(snake[right + 1]))
            } else {
                None
            };
            let left_cap = if left > 0 { Some(cap(snake[left - 1])) } else { None };
            let go_right = match (right_cap, left_cap) {
                (Some(rc), Some(lc)) if rc >= 2 && (lc < 2 || rc >= lc) => true,
                (Some(_), Some(lc)) if lc >= 2 => false,
                (Some(rc), None) if rc >= 2 => true,
                (None, Some(lc)) if lc >= 2 => false,
                _ => {
                    return Err(format!(
                        "supply exhausted at {capsum} < {ell}: neighbouring cells too poor"
                    ))
                }
            };
            if go_right {
                right += 1;
                capsum += cap(snake[right]);
            } else {
                left -= 1;
                capsum += cap(snake[left]);
            }
        }
    }
    let m = right - left + 1;
    let window: Vec<usize> = (left..=right).map(|i| snake[i]).collect();
    let anchor_idx = pos - left;
    let mut sigma: Vec<usize> = window
        .iter()
        .enumerate()
        .map(|(i, _)| if i == anchor_idx && m > 1 { 3 } else { 2 })
        .collect();
    if m == 1 {
        sigma[0] = ell;
    } else {
        let minimum: usize = sigma.iter().sum();
        if minimum > ell {
            return Err(format!(
                "window minimum occupancy {minimum} exceeds the requested {ell}"
            ));
        }
        let mut remaining = ell - minimum;
        for (i, &cell) in window.iter().enumerate() {
            if remaining == 0 {
                break;
            }
            let room = cap(cell).saturating_sub(sigma[i]);
            let take = room.min(remaining);
            sigma[i] += take;
            remaining -= take;
        }
        if remaining > 0 {
            return Err("insufficient blue/red supply in the interior window".into());
        }
    }

    let mut parts: Vec<CellPart> = Vec::with_capacity(m);
    for (i, &cell) in window.iter().enumerate() {
        let is_anchor_cell = i == anchor_idx;
        let mut chosen: Vec<u32> = Vec::with_capacity(sigma[i]);
        if is_anchor_cell {
            chosen.push(anchor);
        }
        for &b in &ctx.blues[cell] {
            if chosen.len() >= sigma[i] {
                break;
            }
            if b != anchor && !forbidden.contains(&b) && !ctx.used.contains(&b) {
                chosen.push(b);
            }
        }
        if chosen.len() < sigma[i] {
            return Err(format!("cell {cell}: only {} usable blues", chosen.len()));
        }
        let o = cell_alternating_cycle(ctx, cell, &chosen)?;
        parts.push(CellPart {
            cell: cell as u32,
            o,
            is_anchor: is_anchor_cell,
        });
    }
    assemble_claim(ctx, parts, anchor)
}

/// Alternating blue/red cycle covering the chosen blues of a cell, via the
/// exact bipartite search on kept edges.
fn cell_alternating_cycle(
    ctx: &Ctx,
    cell: usize,
    chosen: &[u32],
) -> std::result::Result<Vec<u32>, String> {
    let red_pool: Vec<u32> = ctx.reds[cell]
        .iter()
        .copied()
        .filter(|r| !ctx.used.contains(r))
        .collect();
    let adj: Vec<Vec<u32>> = chosen
        .iter()
        .map(|&b| {
            red_pool
                .iter()
                .enumerate()
                .filter(|(_, &r)| ctx.h.has_edge(b, r))
                .map(|(i, _)| i as u32)
                .collect()
        })
        .collect();
    let bip = Bipartite::new(chosen.len(), red_pool.len(), adj)
        .map_err(|e| format!("cell {cell}: {e}"))?;
    let out = jackson_cycle(&bip, ctx.jackson_cap, ctx.jackson_budget)
        .map_err(|e| format!("cell {cell}: alternating search: {e}"))?;
    let cert = out.certificate.ok_or_else(|| {
        format!(
            "cell {cell}: no alternating cycle over {} blues and {} reds",
            chosen.len(),
            red_pool.len()
        )
    })?;
    Ok(cert
        .seq
        .iter()
        .map(|&x| {
            if (x as usize) < chosen.len() {
                chosen[x as usize]
            } else {
                red_pool[x as usize - chosen.len()]
            }
        })
        .collect())
}

/// Stitch the per-cell cycles with green connectors into one cycle following
/// the split-and-traverse pattern: ride each cell's arc on the way out and
/// its complementary arc on the way back.
fn assemble_claim(
    ctx: &mut Ctx,
    mut parts: Vec<CellPart>,
    anchor: u32,
) -> std::result::Result<(Vec<u32>, usize), String> {
    // rotate the anchor cell's cycle so the anchor sits at blue slot 1
    // (sequence position 2): the anchored subpath then survives inside the
    // forward arc
    for part in parts.iter_mut() {
        if part.is_anchor {
            let p = part
                .o
                .iter()
                .position(|&x| x == anchor)
                .ok_or("anchor missing from its cell cycle")?;
            let shift = (p + part.o.len() - 2) % part.o.len();
            part.o.rotate_left(shift);
            debug_assert_eq!(part.o[2], anchor);
        }
    }
    let m = parts.len();
    if m == 1 {
        let part = parts.pop().unwrap();
        for &u in &part.o {
            ctx.used.insert(u);
        }
        let pos = part.o.iter().position(|&x| x == anchor).unwrap();
        return Ok((part.o, pos));
    }

    let mut seq: Vec<u32> = Vec::new();
    // forward sweep
    for j in 0..m {
        let lenj = parts[j].o.len();
        let t_end = parts[j].t_end();
        if j == 0 {
            seq.push(parts[j].o[0]);
            seq.push(parts[j].o[1]);
        }
        for i in 2..=t_end {
            seq.push(parts[j].o[i]);
        }
        if j + 1 < m {
            // connector towards the next cell; its target blue is pushed by
            // the next cell's own arc loop
            let from = parts[j].o[t_end];
            let to = parts[j + 1].o[2];
            let (qa, qb) = (parts[j].cell, parts[j + 1].cell);
            let z = ctx
                .take_green(qa, qb, from, to)
                .ok_or_else(|| format!("no usable green between cells {qa} and {qb}"))?;
            seq.push(z);
        } else {
            // last cell: ride through its second split and complementary arc
            seq.push(parts[j].o[(t_end + 1) % lenj]);
            seq.push(parts[j].o[(t_end + 2) % lenj]);
            let mut i = parts[j].tp_start();
            while i != 0 {
                i = (i + 1) % lenj;
                seq.push(parts[j].o[i]);
            }
        }
    }
    // backward sweep over the complementary arcs
    for j in (0..m - 1).rev() {
        let lenj = parts[j].o.len();
        let tp = parts[j].tp_start();
        let from = parts[j + 1].o[0];
        let to = parts[j].o[tp];
        let (qa, qb) = (parts[j].cell, parts[j + 1].cell);
        let z = ctx
            .take_green(qa, qb, from, to)
            .ok_or_else(|| format!("no usable second green between cells {qa} and {qb}"))?;
        seq.push(z);
        if j == 0 && tp == 0 {
            // the complementary arc is the single closing vertex seq[0]
            continue;
        }
        seq.push(parts[j].o[tp]);
        let mut i = tp;
        while i != 0 {
            i = (i + 1) % lenj;
            if i == 0 && j == 0 {
                break; // position 0 of the first cell is seq[0]
            }
            seq.push(parts[j].o[i]);
        }
    }
    for &u in &seq {
        ctx.used.insert(u);
    }
    let pos = seq
        .iter()
        .position(|&x| x == anchor)
        .ok_or("anchor missing from the assembled cycle")?;
    debug_assert_eq!(seq.len() % 2, 0);
    Ok((seq, pos))
}

fn build_even(ctx: &mut Ctx, v: u32, ell: usize) -> std::result::Result<Vec<u32>, String> {
    let vcell = ctx.cell_of[v as usize];
    if ctx.in_box(vcell) {
        let (seq, _) = claim_cycle(ctx, v, ell, &HashSet::new())?;
        return Ok(seq);
    }
    let path = cell_path_to_box(ctx, vcell)?;
    let t = path.len() - 1;
    if ell <= 2 * t {
        chain_cycle(ctx, v, ell, &path)
    } else {
        boundary_spliced_cycle(ctx, v, ell, &path)
    }
}

/// Boundary routing for long even cycles: an interior cycle two blues short
/// per boundary step, spliced with a doubled chain of blues through the
/// cells towards the vertex.
fn boundary_spliced_cycle(
    ctx: &mut Ctx,
    v: u32,
    ell: usize,
    path: &[u32],
) -> std::result::Result<Vec<u32>, String> {
    let t = path.len() - 1;
    let w_cell = *path.last().unwrap() as usize;
    let w = ctx.blues[w_cell]
        .iter()
        .copied()
        .find(|&b| b != v && !ctx.used.contains(&b))
        .ok_or("no blue vertex in the first interior cell")?;
    let ell_claim = ell - 2 * t + 1;
    let (o_seq, wpos) = claim_cycle(ctx, w, ell_claim, &HashSet::new())?;
    let len = o_seq.len();
    let w_other = o_seq[(wpos + 2) % len];
    // interior path P1 from w_other around to w (dropping the red between)
    let mut p1: Vec<u32> = Vec::with_capacity(len - 1);
    let mut i = (wpos + 2) % len;
    loop {
        p1.push(o_seq[i]);
        if i == wpos {
            break;
        }
        i = (i + 1) % len;
    }
    // doubled chain from w down to v and back up to w_other
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for &cell in path.iter().rev().skip(1).take(t - 1) {
        let mut it = ctx.blues[cell as usize]
            .iter()
            .copied()
            .filter(|&b| b != v && !ctx.used.contains(&b) && !pairs.iter().any(|&(x, y)| x == b || y == b));
        let a = it.next().ok_or("missing chain blue")?;
        let b = it.next().ok_or("missing second chain blue")?;
        pairs.push((a, b));
    }
    let mut down: Vec<u32> = vec![w];
    let mut up: Vec<u32> = vec![w_other];
    let mut prev_cell = *path.last().unwrap();
    let (mut prev_down, mut prev_up) = (w, w_other);
    for (step, &cell) in path.iter().rev().skip(1).enumerate() {
        let (a, b) = if step < pairs.len() {
            pairs[step]
        } else {
            (v, v)
        };
        let zd = ctx
            .take_green(prev_cell, cell, prev_down, a)
            .ok_or("no green for the boundary chain")?;
        down.push(zd);
        down.push(a);
        let zu = ctx
            .take_green(prev_cell, cell, prev_up, b)
            .ok_or("no second green for the boundary chain")?;
        up.push(zu);
        up.push(b);
        prev_down = a;
        prev_up = b;
        prev_cell = cell;
    }
    debug_assert_eq!(*down.last().unwrap(), v);
    debug_assert_eq!(*up.last().unwrap(), v);
    up.pop(); // v appears once
    let mut seq = p1; // w_other .. w
    seq.extend(down.iter().skip(1)); // .. down to v
    seq.extend(up.iter().rev()); // .. back up, ending at w_other
    seq.pop(); // w_other is seq[0]
    Ok(seq)
}

/// Even short cycles for a boundary vertex: a doubled chain of blues through
/// the cells towards the interior, joined by greens.
fn chain_cycle(
    ctx: &mut Ctx,
    v: u32,
    ell: usize,
    path: &[u32],
) -> std::result::Result<Vec<u32>, String> {
    let half = ell / 2;
    let mut blue_at: Vec<u32> = vec![u32::MAX; ell];
    blue_at[0] = v;
    for j in 1..=half {
        let cell = path[j] as usize;
        let picks: Vec<u32> = ctx.blues[cell]
            .iter()
            .copied()
            .filter(|&b| b != v && !ctx.used.contains(&b) && !blue_at.contains(&b))
            .take(2)
            .collect();
        if j < half {
            blue_at[j] = *picks.first().ok_or("missing chain blue")?;
            blue_at[ell - j] = *picks.get(1).ok_or("missing paired chain blue")?;
        } else if ell % 2 == 0 {
            blue_at[j] = *picks.first().ok_or("missing middle blue")?;
        } else {
            blue_at[j] = *picks.first().ok_or("missing middle blue")?;
            blue_at[ell - j] = *picks.get(1).ok_or("missing second middle blue")?;
        }
    }
    let cell_of_index = |i: usize| -> u32 {
        let k = if i <= half { i } else { ell - i };
        path[k]
    };
    let mut seq = Vec::with_capacity(2 * ell);
    for i in 0..ell {
        let a = blue_at[i];
        let b = blue_at[(i + 1) % ell];
        let (ca, cb) = (cell_of_index(i), cell_of_index((i + 1) % ell));
        let (q1, q2) = if ca == cb {
            let k = if i <= half { i } else { ell - i };
            (path[k - 1], path[k])
        } else {
            (ca, cb)
        };
        seq.push(a);
        let z = ctx
            .take_green(q1, q2, a, b)
            .ok_or("no green for the short chain")?;
        seq.push(z);
    }
    Ok(seq)
}

/// Shortest grid path from a cell to the interior box.
fn cell_path_to_box(ctx: &Ctx, from: u32) -> std::result::Result<Vec<u32>, String> {
    bfs_path(ctx, &[from], |c| ctx.in_box(c)).map(|(_, p)| p)
}

fn grid_path(ctx: &Ctx, from: u32, to: u32) -> std::result::Result<Vec<u32>, String> {
    bfs_path(ctx, &[from], |c| c == to).map(|(_, p)| p)
}

/// BFS from a set of start cells to the first cell satisfying the goal;
/// returns (index of the originating start cell, path from it to the goal).
fn bfs_path(
    ctx: &Ctx,
    starts: &[u32],
    goal: impl Fn(u32) -> bool,
) -> std::result::Result<(usize, Vec<u32>), String> {
    let total = ctx.tess.cell_count();
    let mut prev: Vec<Option<u32>> = vec![None; total];
    let mut origin: Vec<usize> = vec![usize::MAX; total];
    let mut seen = vec![false; total];
    let mut queue = VecDeque::new();
    for (i, &c) in starts.iter().enumerate() {
        if !seen[c as usize] {
            seen[c as usize] = true;
            origin[c as usize] = i;
            queue.push_back(c as usize);
        }
    }
    while let Some(c) = queue.pop_front() {
        if goal(c as u32) {
            let mut path = vec![c as u32];
            let mut cur = c;
            while let Some(p) = prev[cur] {
                path.push(p);
                cur = p as usize;
            }
            path.reverse();
            return Ok((origin[path[0] as usize], path));
        }
        for nb in ctx.tess.neighbors(c) {
            if !seen[nb] {
                seen[nb] = true;
                prev[nb] = Some(c as u32);
                origin[nb] = origin[c];
                queue.push_back(nb);
            }
        }
    }
    Err("no grid path to the target".into())
}

fn build_odd(ctx: &mut Ctx, v: u32, l: usize) -> std::result::Result<Vec<u32>, String> {
    let vcell = ctx.cell_of[v as usize];
    let vprime = ctx
        .h
        .neighbors(v)
        .iter()
        .copied()
        .find(|&w| {
            ctx.colouring.colour[w as usize] == Colour::Blue && ctx.cell_of[w as usize] != vcell
        })
        .ok_or("no blue kept neighbour outside the vertex cell")?;
    let mut pcells = grid_path(ctx, vcell, ctx.cell_of[vprime as usize])?;
    let mut v0 = v;
    let mut vt = vprime;
    // splice point: the path cell nearest the interior box
    let in_box_idx = pcells.iter().position(|&q| ctx.in_box(q));
    let (mut istar, tprime, qprime): (usize, usize, Vec<u32>) = match in_box_idx {
        Some(i) => (i, 0, vec![pcells[i]]),
        None => {
            let (i, path) = bfs_path(ctx, &pcells, |c| ctx.in_box(c))?;
            (i, path.len() - 1, path)
        }
    };
    if istar == pcells.len() - 1 {
        // flip the chain so the splice point is not the far endpoint
        pcells.reverse();
        std::mem::swap(&mut v0, &mut vt);
        istar = pcells.len() - 1 - istar;
    }
    let t = pcells.len() - 1;
    let ell_p = 2 * t + 4 * tprime + 1;
    if l < ell_p + 2 {
        return Err(format!(
            "odd length {l} too short for the splice (needs at least {})",
            ell_p + 2
        ));
    }
    let ell_claim = (l - ell_p + 2) / 2;

    // chain blues along pcells (v0 and vt fixed at the ends)
    let mut vs: Vec<u32> = vec![u32::MAX; t + 1];
    vs[0] = v0;
    vs[t] = vt;
    let mut forbidden: HashSet<u32> = HashSet::new();
    forbidden.insert(v0);
    forbidden.insert(vt);
    for j in 1..t {
        let cell = pcells[j] as usize;
        let b = ctx.blues[cell]
            .iter()
            .copied()
            .find(|&b| !forbidden.contains(&b) && !ctx.used.contains(&b))
            .ok_or("missing blue on the odd chain")?;
        vs[j] = b;
        forbidden.insert(b);
    }
    // doubled blues along the approach to the box
    let mut ws: Vec<u32> = Vec::new();
    let mut wps: Vec<u32> = Vec::new();
    if tprime > 0 {
        for (i, &cell) in qprime.iter().enumerate() {
            if i == 0 {
                ws.push(vs[istar]);
                let wp = ctx.blues[cell as usize]
                    .iter()
                    .copied()
                    .find(|&b| !forbidden.contains(&b) && !ctx.used.contains(&b))
                    .ok_or("missing paired blue at the splice cell")?;
                wps.push(wp);
                forbidden.insert(wp);
            } else if i < tprime {
                let picks: Vec<u32> = ctx.blues[cell as usize]
                    .iter()
                    .copied()
                    .filter(|&b| !forbidden.contains(&b) && !ctx.used.contains(&b))
                    .take(2)
                    .collect();
                let a = *picks.first().ok_or("missing approach blue")?;
                let b = *picks.get(1).ok_or("missing paired approach blue")?;
                forbidden.insert(a);
                forbidden.insert(b);
                ws.push(a);
                wps.push(b);
            } else {
                let a = ctx.blues[cell as usize]
                    .iter()
                    .copied()
                    .find(|&b| !forbidden.contains(&b) && !ctx.used.contains(&b))
                    .ok_or("missing anchor blue in the interior cell")?;
                ws.push(a);
            }
        }
    }
    let anchor = if tprime == 0 { vs[istar] } else { *ws.last().unwrap() };
    let mut claim_forbidden = forbidden.clone();
    claim_forbidden.remove(&anchor);

    let (o_seq, apos) = claim_cycle(ctx, anchor, ell_claim, &claim_forbidden)?;
    let len = o_seq.len();
    let other = o_seq[(apos + 2) % len];
    // P' = the interior cycle minus the red of the anchored subpath
    let mut pprime: Vec<u32> = Vec::with_capacity(len - 1);
    let mut i = (apos + 2) % len;
    loop {
        pprime.push(o_seq[i]);
        if i == apos {
            break;
        }
        i = (i + 1) % len;
    }
    debug_assert_eq!(pprime[0], other);
    debug_assert_eq!(*pprime.last().unwrap(), anchor);

    // odd path P from `other` back to the anchor
    let mut p: Vec<u32> = vec![other];
    let mut prev = other;
    if tprime > 0 {
        // descend the primed approach chain
        for i in (0..tprime).rev() {
            let z = ctx
                .take_green(qprime[i + 1], qprime[i], prev, wps[i])
                .ok_or("no green on the approach chain")?;
            p.push(z);
            p.push(wps[i]);
            prev = wps[i];
        }
    }
    // cross beyond the splice, ride the odd edge, return to the splice
    for j in istar + 1..=t {
        let z = ctx
            .take_green(pcells[j - 1], pcells[j], prev, vs[j])
            .ok_or("no green beyond the splice")?;
        p.push(z);
        p.push(vs[j]);
        prev = vs[j];
    }
    p.push(vs[0]); // the blue-blue kept edge between v' and v
    prev = vs[0];
    for j in 1..=istar {
        let z = ctx
            .take_green(pcells[j - 1], pcells[j], prev, vs[j])
            .ok_or("no green on the return chain")?;
        p.push(z);
        p.push(vs[j]);
        prev = vs[j];
    }
    if tprime > 0 {
        // ascend the unprimed approach chain to the anchor
        prev = vs[istar];
        for i in 1..=tprime {
            let z = ctx
                .take_green(qprime[i - 1], qprime[i], prev, ws[i])
                .ok_or("no green on the ascent chain")?;
            p.push(z);
            p.push(ws[i]);
            prev = ws[i];
        }
    }
    debug_assert_eq!(*p.last().unwrap(), anchor);
    debug_assert_eq!(p.len(), ell_p + 1);
    // cycle = P' (other .. anchor) followed by P reversed (anchor .. other),
    // dropping the duplicated endpoints
    let mut seq = pprime;
    for &x in p.iter().rev().skip(1) {
        if x == other {
            break;
        }
        seq.push(x);
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rgg::{sample_rgg, trial_seed};

    fn tuned_instance(
        n: usize,
        factor: f64,
        seed: u64,
    ) -> (crate::graph::GeometricGraph, LongCycleParams) {
        let r = factor * ((n as f64).ln() / n as f64).sqrt();
        let g = sample_rgg(n, 2, r, Metric::CubeEuclidean, seed);
        (g, LongCycleParams::tuned(0.5, 0.1))
    }

    #[test]
    fn even_cycles_at_small_scale() {
        let (g, params) = tuned_instance(4000, 6.0, trial_seed(100, 1));
        let mask = SubgraphMask::full(&g);
        for l in [4usize, 10, 60] {
            let out = long_cycle(&mask, 7, l, &params, 99).unwrap();
            let cert = out
                .certificate()
                .unwrap_or_else(|| panic!("L={l}: {:?}", out.diagnostic()));
            assert!(verify_cycle(&mask.kept_graph(), cert, Some(7), Some(l)));
        }
    }

    #[test]
    fn near_extremal_even_length() {
        let (g, params) = tuned_instance(4000, 6.0, trial_seed(100, 2));
        let mask = SubgraphMask::full(&g);
        let l = 2 * 4000 / 3 - (2 * 4000 / 3) % 2;
        let out = long_cycle(&mask, 11, l, &params, 5).unwrap();
        let cert = out
            .certificate()
            .unwrap_or_else(|| panic!("L={l}: {:?}", out.diagnostic()));
        assert!(verify_cycle(&mask.kept_graph(), cert, Some(11), Some(l)));
    }

    #[test]
    fn odd_cycles_at_small_scale() {
        let (g, params) = tuned_instance(4000, 6.0, trial_seed(100, 3));
        let mask = SubgraphMask::full(&g);
        for l in [21usize, 101, 1001] {
            let out = long_cycle(&mask, 13, l, &params, 17).unwrap();
            let cert = out
                .certificate()
                .unwrap_or_else(|| panic!("L={l}: {:?}", out.diagnostic()));
            assert!(verify_cycle(&mask.kept_graph(), cert, Some(13), Some(l)));
        }
    }

    #[test]
    fn short_odd_refused() {
        let (g, params) = tuned_instance(2000, 6.0, trial_seed(100, 4));
        let mask = SubgraphMask::full(&g);
        let out = long_cycle(&mask, 3, 3, &params, 1);
        // length 3 is outside [4, ..] entirely
        assert!(out.is_err());
        let mut p = params.clone();
        p.colours.short_odd_min = 9;
        let out = long_cycle(&mask, 3, 7, &p, 1).unwrap();
        assert!(out
            .diagnostic()
            .map(|d| d.contains("odd length"))
            .unwrap_or(false));
    }

    #[test]
    fn paper_mode_names_the_failing_audit() {
        // at desk scale the verbatim colour constants cannot pass the green
        // audit; the builder must say which ingredient is missing
        let n = 3000;
        let r = 6.0 * ((n as f64).ln() / n as f64).sqrt();
        let g = sample_rgg(n, 2, r, Metric::CubeEuclidean, trial_seed(100, 5));
        let mask = SubgraphMask::full(&g);
        let params = LongCycleParams::paper(0.5, 0.1);
        let out = long_cycle(&mask, 1, 10, &params, 3).unwrap();
        match out {
            LongCycleOutcome::Diagnostic { reason, ledger } => {
                assert!(reason.contains("audit"), "diagnostic: {reason}");
                assert!(!ledger.is_empty());
            }
            LongCycleOutcome::Cycle { .. } => {
                panic!("verbatim constants should not succeed at n=3000")
            }
        }
    }

    #[test]
    fn forbidden_vertices_are_avoided() {
        let (g, params) = tuned_instance(4000, 6.0, trial_seed(100, 6));
        let mask = SubgraphMask::full(&g);
        // run once to learn the colouring, then forbid two blues per cell
        let out = long_cycle(&mask, 3, 30, &params, 23).unwrap();
        let LongCycleOutcome::Cycle { colouring, .. } = out else {
            panic!("baseline build failed");
        };
        // rebuild the context the same way long_cycle does and call the
        // claim directly with a forbidden set
        let tess = tessellate(
            2,
            SideRule::Jackson {
                delta: params.colours.delta,
            },
            g.r,
        )
        .unwrap();
        let n = g.n();
        let mut cell_of = vec![0u32; n];
        let mut blues: Vec<Vec<u32>> = vec![Vec::new(); tess.cell_count()];
        let mut reds: Vec<Vec<u32>> = vec![Vec::new(); tess.cell_count()];
        let mut greens: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
        for u in 0..n as u32 {
            cell_of[u as usize] = tess.cell_of(g.points.coords(u as usize)) as u32;
            match colouring.colour[u as usize] {
                Colour::Blue => blues[cell_of[u as usize] as usize].push(u),
                Colour::Red => {
                    if let Some(q) = colouring.red_cell[u as usize] {
                        reds[q as usize].push(u)
                    }
                }
                Colour::Green => {
                    if let Some(pr) = colouring.green_pair[u as usize] {
                        greens.entry(pr).or_default().push(u)
                    }
                }
            }
        }
        let box_range = tess.interior_range(0.0).unwrap();
        let mut forbidden: HashSet<u32> = HashSet::new();
        for b in blues.iter() {
            for &x in b.iter().take(2) {
                forbidden.insert(x);
            }
        }
        let anchor = blues
            .iter()
            .flatten()
            .copied()
            .find(|b| !forbidden.contains(b))
            .unwrap();
        let mut ctx = Ctx {
            h: mask.kept_graph(),
            tess,
            cell_of,
            colouring,
            blues,
            reds,
            greens,
            box_range,
            used: HashSet::new(),
            jackson_cap: params.colours.jackson_cap,
            jackson_budget: params.colours.jackson_budget,
        };
        let (seq, _) = claim_cycle(&mut ctx, anchor, 25, &forbidden).unwrap();
        assert_eq!(seq.len(), 50);
        for x in &seq {
            assert!(!forbidden.contains(x), "forbidden vertex {x} on the cycle");
        }
    }

    #[test]
    fn colour_structure_invariants_on_even_cycles() {
        let (g, params) = tuned_instance(4000, 6.0, trial_seed(100, 7));
        let mask = SubgraphMask::full(&g);
        let l = 400;
        let out = long_cycle(&mask, 5, l, &params, 8).unwrap();
        let LongCycleOutcome::Cycle {
            certificate,
            colouring,
            ..
        } = out
        else {
            panic!("build failed");
        };
        let tess = tessellate(
            2,
            SideRule::Jackson {
                delta: params.colours.delta,
            },
            g.r,
        )
        .unwrap();
        let cell = |u: u32| tess.cell_of(g.points.coords(u as usize)) as u32;
        let seq = &certificate.seq;
        let mut green_budget: HashMap<(u32, u32), usize> = HashMap::new();
        for (i, &x) in seq.iter().enumerate() {
            let prev = seq[(i + seq.len() - 1) % seq.len()];
            let next = seq[(i + 1) % seq.len()];
            match colouring.colour[x as usize] {
                Colour::Blue => {}
                Colour::Red => {
                    // a red sits between two blues of its assigned cell
                    let q = colouring.red_cell[x as usize].unwrap();
                    assert_eq!(colouring.colour[prev as usize], Colour::Blue);
                    assert_eq!(colouring.colour[next as usize], Colour::Blue);
                    assert_eq!(cell(prev), q);
                    assert_eq!(cell(next), q);
                }
                Colour::Green => {
                    // a green joins blues of its assigned adjacent cell pair
                    let (q1, q2) = colouring.green_pair[x as usize].unwrap();
                    assert_eq!(colouring.colour[prev as usize], Colour::Blue);
                    assert_eq!(colouring.colour[next as usize], Colour::Blue);
                    let cp = (cell(prev).min(cell(next)), cell(prev).max(cell(next)));
                    assert_eq!(cp, (q1.min(q2), q1.max(q2)));
                    *green_budget.entry((q1, q2)).or_insert(0) += 1;
                }
            }
            // even cycles alternate blue / non-blue
            let is_blue = colouring.colour[x as usize] == Colour::Blue;
            let next_blue = colouring.colour[next as usize] == Colour::Blue;
            assert_ne!(is_blue, next_blue, "alternation broken at position {i}");
        }
        for (&pair, &used) in &green_budget {
            assert!(used <= 2, "pair {pair:?} used {used} greens");
        }
    }
}
