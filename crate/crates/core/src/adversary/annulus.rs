//! Double-annulus cut in two dimensions. A feasibility solver finds width
//! and density-boost parameters `(t, nu)` satisfying the two region
//! inequalities (the geometry is scale-free, so the solver works at unit
//! scale); the cut then scans a deterministic grid of centres for a point
//! whose outer annulus is empty, inner annulus atypically dense and outer
//! shell typical, and deletes every edge crossing the empty annulus.

use super::AttackReport;
use crate::geom::{ball_intersection_volume, distance_sq, Metric};
use crate::graph::GeometricGraph;
use crate::{Error, Result};
use std::f64::consts::PI;

/// Parameters of the double-annulus construction.
#[derive(Debug, Clone, Copy)]
pub struct AnnulusParams {
    /// Inner interaction radius multiplier (the paper's `C`).
    pub c: f64,
    /// Annulus radius multiplier (the paper's `A`), at least `2C`.
    pub a: f64,
    /// Relative width of the empty annulus, in `(0, t_a)`.
    pub t: f64,
    /// Density boost of the inner annulus, in `(0, nu_t)`.
    pub nu: f64,
    /// Feasibility margin: both region inequalities hold with `1 + 10*eps`.
    pub eps_margin: f64,
    /// Largest admissible `t`: the positive root of `pi A^2 (t^2+2t) = 1`.
    pub t_a: f64,
    /// Largest admissible `nu` at the returned `t`.
    pub nu_t: f64,
}

/// `t_A` in closed form.
pub fn t_a_closed_form(a: f64) -> f64 {
    (1.0 + 1.0 / (PI * a * a)).sqrt() - 1.0
}

/// The exponent balance `c(A, C, t, nu)`; the admissible region is where it
/// stays positive.
pub fn exponent_balance(a: f64, c: f64, t: f64, nu: f64) -> f64 {
    1.0 - PI * a * a * (t * t + 2.0 * t)
        - 4.0 * PI * c * (a - c) * (1.0 - (1.0 + nu) * (1.0 - (1.0 + nu).ln()))
}

/// Unique non-negative root of `exponent_balance(a, c, t, ·) = 0`.
pub fn solve_nu_t(a: f64, c: f64, t: f64) -> f64 {
    if exponent_balance(a, c, t, 0.0) <= 0.0 {
        return 0.0;
    }
    let mut hi = 1.0;
    while exponent_balance(a, c, t, hi) > 0.0 {
        hi *= 2.0;
        if hi > 1e9 {
            return hi;
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = (lo + hi) / 2.0;
        if exponent_balance(a, c, t, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / 2.0
}

/// Unit-scale region volumes at a boundary point. `R1` is the part of the
/// interaction ball inside `B(x, A)`; `R2` is the part beyond `B(x, (1+t)A)`.
fn region_pair(a: f64, c: f64, t: f64, at_radius: f64) -> (f64, f64) {
    let r1 = ball_intersection_volume(2, c, a, at_radius, 1e-10).unwrap_or(0.0);
    let inner_part = ball_intersection_volume(2, c, (1.0 + t) * a, at_radius, 1e-10).unwrap_or(0.0);
    let r2 = (PI * c * c - inner_part).max(0.0);
    (r1, r2)
}

/// Feasibility margin of `(t, nu)`: the largest `eps` such that
/// `(1+nu) |R1(y)| >= (1+10 eps) |R2(y,t)|` on the inner boundary and
/// `|R2(z,t)| >= (1+10 eps) (1+nu) |R1(z)|` on the outer boundary.
pub fn feasibility_margin(a: f64, c: f64, t: f64, nu: f64) -> f64 {
    let (r1_y, r2_y) = region_pair(a, c, t, a);
    let m1 = if r2_y <= 0.0 {
        f64::INFINITY
    } else {
        ((1.0 + nu) * r1_y / r2_y - 1.0) / 10.0
    };
    let (r1_z, r2_z) = region_pair(a, c, t, (1.0 + t) * a);
    let m2 = if (1.0 + nu) * r1_z <= 0.0 {
        f64::INFINITY
    } else {
        (r2_z / ((1.0 + nu) * r1_z) - 1.0) / 10.0
    };
    m1.min(m2)
}

/// Scan a `grid x grid` lattice over `(0,t_A) x (0,nu_t)` and return the
/// parameters with the largest feasibility margin. Fails when no grid point
/// is feasible (the paper requires `A` sufficiently large).
pub fn solve_annulus_params(c: f64, a: f64, grid: usize) -> Result<AnnulusParams> {
    if c <= 0.0 {
        return Err(Error::Parameter("C must be positive".into()));
    }
    if a < 2.0 * c {
        return Err(Error::Parameter("need A >= 2C".into()));
    }
    if grid == 0 {
        return Err(Error::Parameter("grid resolution must be positive".into()));
    }
    let t_a = t_a_closed_form(a);
    let mut best: Option<AnnulusParams> = None;
    for i in 1..=grid {
        let t = t_a * i as f64 / (grid + 1) as f64;
        let nu_t = solve_nu_t(a, c, t);
        if nu_t <= 0.0 {
            continue;
        }
        for j in 1..=grid {
            let nu = nu_t * j as f64 / (grid + 1) as f64;
            let margin = feasibility_margin(a, c, t, nu);
            if margin > 0.0 && best.map(|b| margin > b.eps_margin).unwrap_or(true) {
                best = Some(AnnulusParams {
                    c,
                    a,
                    t,
                    nu,
                    eps_margin: margin,
                    t_a,
                    nu_t,
                });
            }
        }
    }
    best.ok_or_else(|| {
        Error::Parameter(format!(
            "no feasible (t, nu) at A = {a}, C = {c}; increase A"
        ))
    })
}

/// Apply the double-annulus deletion to a 2-D geometric graph.
pub fn annulus_cut(g: &GeometricGraph, params: &AnnulusParams) -> Result<AttackReport> {
    if g.dim() != 2 || g.metric != Metric::CubeEuclidean {
        return Err(Error::Precondition(
            "annulus cut needs d = 2 on the cube".into(),
        ));
    }
    let n = g.n();
    let nf = n as f64;
    let log_n = nf.ln();
    let zeta = (log_n / nf).sqrt();
    let (a, c, t, nu) = (params.a, params.c, params.t, params.nu);
    let r_empty_in = a * zeta;
    let r_empty_out = (1.0 + t) * a * zeta;
    let r_dense_in = (a - 2.0 * c) * zeta;
    let z_t = ((1.0 + t) * a + 2.0 * c) * zeta;
    let z_ta = ((1.0 + params.t_a) * a + 2.0 * c) * zeta;
    let f_lo = (1.0 + nu) * 4.0 * PI * c * (a - c) * log_n;
    let f_hi = log_n * log_n;
    let g_mid = 4.0 * PI * (c + (1.0 + t) * a) * c * log_n;
    let g_tol = log_n.powf(2.0 / 3.0);

    let report_params = vec![
        ("C".into(), c.to_string()),
        ("A".into(), a.to_string()),
        ("t".into(), t.to_string()),
        ("nu".into(), nu.to_string()),
        ("zeta".into(), zeta.to_string()),
        ("eps_margin".into(), params.eps_margin.to_string()),
    ];
    if z_ta > 0.5 {
        // no admissible centre; the scan region [Z, 1-Z]^2 is empty
        return Ok(AttackReport::from_deletion(
            "annulus",
            report_params,
            0,
            &g.graph,
            vec![],
            None,
            true,
        ));
    }

    // bucket the points at the scan radius so each candidate centre only
    // inspects its neighbourhood
    let bm = ((1.0 / z_t).floor() as usize).clamp(1, 4096);
    let bucket_of = |p: &[f64]| -> usize {
        let bx = ((p[0] * bm as f64) as usize).min(bm - 1);
        let by = ((p[1] * bm as f64) as usize).min(bm - 1);
        by * bm + bx
    };
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); bm * bm];
    for i in 0..n {
        buckets[bucket_of(g.points.coords(i))].push(i as u32);
    }

    // events at a candidate centre: empty outer annulus, boosted inner
    // annulus, typical outer shell
    let events_hold = |x: &[f64; 2]| -> bool {
        let (mut dense_cnt, mut shell_cnt) = (0usize, 0usize);
        let bx = ((x[0] * bm as f64) as isize).clamp(0, bm as isize - 1);
        let by = ((x[1] * bm as f64) as isize).clamp(0, bm as isize - 1);
        for dy in -1..=1isize {
            for dx in -1..=1isize {
                let (cx, cy) = (bx + dx, by + dy);
                if cx < 0 || cy < 0 || cx >= bm as isize || cy >= bm as isize {
                    continue;
                }
                for &i in &buckets[cy as usize * bm + cx as usize] {
                    let d2 =
                        distance_sq(g.points.coords(i as usize), x, Metric::CubeEuclidean);
                    if d2 > z_t * z_t {
                        continue;
                    }
                    let d = d2.sqrt();
                    if d > r_empty_in && d <= r_empty_out {
                        return false; // the annulus must be empty
                    }
                    if d > r_dense_in && d <= r_empty_in {
                        dense_cnt += 1;
                    } else if d > r_empty_out {
                        shell_cnt += 1;
                    }
                }
            }
        }
        dense_cnt as f64 >= f_lo
            && dense_cnt as f64 <= f_hi
            && (shell_cnt as f64 - g_mid).abs() <= g_tol
    };

    let step = zeta / 2.0;
    let steps = (((1.0 - 2.0 * z_ta) / step).floor() as usize).max(1);
    let mut witness_center: Option<[f64; 2]> = None;
    'scan: for ix in 0..=steps {
        for iy in 0..=steps {
            let x = [z_ta + ix as f64 * step, z_ta + iy as f64 * step];
            if x[0] > 1.0 - z_ta || x[1] > 1.0 - z_ta {
                continue;
            }
            if events_hold(&x) {
                witness_center = Some(x);
                break 'scan;
            }
        }
    }

    match witness_center {
        None => Ok(AttackReport::from_deletion(
            "annulus",
            report_params,
            0,
            &g.graph,
            vec![],
            None,
            true,
        )),
        Some(x) => {
            let mut inside = vec![false; n];
            let mut outside = vec![false; n];
            for i in 0..n {
                let d2 = distance_sq(g.points.coords(i), &x, Metric::CubeEuclidean);
                if d2 <= r_empty_in * r_empty_in {
                    inside[i] = true;
                } else if d2 > r_empty_out * r_empty_out {
                    outside[i] = true;
                }
            }
            let deleted: Vec<(u32, u32)> = g
                .graph
                .edges()
                .iter()
                .copied()
                .filter(|&(u, v)| {
                    (inside[u as usize] && outside[v as usize])
                        || (outside[u as usize] && inside[v as usize])
                })
                .collect();
            let mut p = report_params;
            p.push(("center".into(), format!("{},{}", x[0], x[1])));
            Ok(AttackReport::from_deletion(
                "annulus",
                p,
                0,
                &g.graph,
                deleted,
                Some(format!(
                    "center=({},{}) radii=({},{})",
                    x[0], x[1], r_empty_in, r_empty_out
                )),
                false,
            ))
        }
    }
}
