//! Exact and numeric volumes of balls, annuli, lenses and their clipped
//! variants.
//!
//! Closed forms are used wherever they exist (dimension 1 everywhere,
//! circle/rectangle and two-disc lenses in dimension 2, torus balls below
//! wrap-around radius). Everything else falls back to a deterministic
//! midpoint rule with adaptive refinement, so repeated runs are bit-identical.

use super::{Metric, Point};
use crate::{Error, Result};

/// Volume of the `d`-dimensional unit Euclidean ball.
pub fn ball_volume(d: usize) -> f64 {
    assert!(d >= 1, "dimension must be >= 1");
    std::f64::consts::PI.powf(d as f64 / 2.0) / gamma_half_integer(d + 2)
}

/// `Gamma(k/2)` for integer `k >= 1`, by the recursion `Gamma(x+1) = x Gamma(x)`.
fn gamma_half_integer(k: usize) -> f64 {
    let mut x = k as f64 / 2.0;
    let mut acc = 1.0;
    while x > 1.0 + 1e-12 {
        x -= 1.0;
        acc *= x;
    }
    if (x - 0.5).abs() < 1e-12 {
        acc * std::f64::consts::PI.sqrt()
    } else {
        acc
    }
}

/// A geometric region whose volume can be measured.
///
/// `Ball` and `Annulus` are interpreted inside the model domain (clipped to
/// `[0,1]^d` under the cube metric, unclipped on the torus). `BallIntersection`
/// and `HalfspaceClip` are plain Euclidean regions: they serve the annulus
/// adversary's feasibility inequalities, which live in the plane.
#[derive(Debug, Clone)]
pub enum Region {
    Ball {
        center: Point,
        r: f64,
        metric: Metric,
    },
    Annulus {
        center: Point,
        r_inner: f64,
        r_outer: f64,
        metric: Metric,
    },
    BallIntersection {
        centers: (Point, Point),
        radii: (f64, f64),
    },
    /// `B(center, r)` intersected with the halfspace `x[axis] <= bound`.
    HalfspaceClip {
        center: Point,
        r: f64,
        axis: usize,
        bound: f64,
    },
}

/// Lebesgue volume of `B(center, r) ∩ [0,1]^d` (cube metric), or of the
/// torus ball (torus metric).
///
/// Exact in d=1 and d=2; deterministic adaptive quadrature for 3 <= d <= 6.
pub fn clipped_ball_volume(center: &Point, r: f64, metric: Metric, tol: f64) -> Result<f64> {
    if r <= 0.0 {
        if r < 0.0 {
            return Err(Error::Parameter("radius must be positive".into()));
        }
        return Ok(0.0);
    }
    if tol <= 0.0 {
        return Err(Error::Parameter("tol must be positive".into()));
    }
    let d = center.dim();
    match metric {
        Metric::TorusEuclidean => {
            if 2.0 * r < 1.0 {
                Ok(ball_volume(d) * r.powi(d as i32))
            } else {
                torus_ball_volume(d, r, tol)
            }
        }
        Metric::CubeEuclidean => {
            if d > 6 {
                return Err(Error::Parameter(
                    "clipped volumes unsupported for d > 6".into(),
                ));
            }
            cube_clipped_ball(&center.0, r, tol)
        }
    }
}

fn cube_clipped_ball(c: &[f64], r: f64, tol: f64) -> Result<f64> {
    match c.len() {
        1 => Ok((c[0] + r).min(1.0) - (c[0] - r).max(0.0)).map(|v| v.max(0.0)),
        2 => Ok(circle_rect_area(c[0], c[1], r, 0.0, 1.0, 0.0, 1.0)),
        _ => {
            let d = c.len();
            let (lo, hi) = ((c[d - 1] - r).max(0.0), (c[d - 1] + r).min(1.0));
            if lo >= hi {
                return Ok(0.0);
            }
            let inner = &c[..d - 1];
            adaptive_midpoint(
                lo,
                hi,
                tol,
                &mut |x| {
                    let rho_sq = r * r - (x - c[d - 1]) * (x - c[d - 1]);
                    if rho_sq <= 0.0 {
                        Ok(0.0)
                    } else {
                        cube_clipped_ball(inner, rho_sq.sqrt(), tol / 10.0)
                    }
                },
            )
        }
    }
}

fn torus_ball_volume(d: usize, r: f64, tol: f64) -> Result<f64> {
    if d == 1 {
        return Ok((2.0 * r).min(1.0));
    }
    let hi = r.min(0.5);
    adaptive_midpoint(0.0, hi, tol, &mut |u| {
        let rho_sq = r * r - u * u;
        if rho_sq <= 0.0 {
            Ok(0.0)
        } else {
            torus_ball_volume(d - 1, rho_sq.sqrt(), tol / 10.0).map(|v| 2.0 * v)
        }
    })
}

/// Volume of a region (see [`Region`] for the clipping convention), to
/// absolute accuracy `tol`.
pub fn region_volume(region: &Region, tol: f64) -> Result<f64> {
    match region {
        Region::Ball { center, r, metric } => clipped_ball_volume(center, *r, *metric, tol),
        Region::Annulus {
            center,
            r_inner,
            r_outer,
            metric,
        } => {
            if !(0.0 < *r_inner && r_inner < r_outer) {
                return Err(Error::Parameter(
                    "annulus needs 0 < r_inner < r_outer".into(),
                ));
            }
            let outer = clipped_ball_volume(center, *r_outer, *metric, tol / 2.0)?;
            let inner = clipped_ball_volume(center, *r_inner, *metric, tol / 2.0)?;
            Ok((outer - inner).max(0.0))
        }
        Region::BallIntersection { centers, radii } => {
            let (p, q) = centers;
            if p.dim() != q.dim() {
                return Err(Error::DimensionMismatch(p.dim(), q.dim()));
            }
            if radii.0 <= 0.0 || radii.1 <= 0.0 {
                return Err(Error::Parameter("radii must be positive".into()));
            }
            let dist = super::distance(p, q, Metric::CubeEuclidean)?;
            ball_intersection_volume(p.dim(), radii.0, radii.1, dist, tol)
        }
        Region::HalfspaceClip {
            center,
            r,
            axis,
            bound,
        } => {
            if *r <= 0.0 {
                return Err(Error::Parameter("radius must be positive".into()));
            }
            if *axis >= center.dim() {
                return Err(Error::Parameter("axis out of range".into()));
            }
            Ok(ball_halfspace_volume(
                center.dim(),
                *r,
                bound - center.0[*axis],
            ))
        }
    }
}

/// Volume of the intersection of two Euclidean balls at centre distance
/// `dist` (exact lens area in d=2, exact overlap in d=1, adaptive slices
/// otherwise).
pub fn ball_intersection_volume(d: usize, r1: f64, r2: f64, dist: f64, tol: f64) -> Result<f64> {
    if dist >= r1 + r2 {
        return Ok(0.0);
    }
    if dist <= (r1 - r2).abs() {
        return Ok(ball_volume(d) * r1.min(r2).powi(d as i32));
    }
    match d {
        1 => Ok(((dist - r1 - r2) / 2.0).abs().min(r1.min(r2)) * 2.0 - 0.0).map(|_| {
            // interval overlap: [d-r2, r1] relative to the first centre at 0
            (r1.min(dist + r2) - (dist - r2).max(-r1)).max(0.0)
        }),
        2 => Ok(lens_area(r1, r2, dist)),
        _ => {
            // Rotationally symmetric about the centre line: integrate
            // cross-sectional (d-1)-balls along it.
            let lo = (dist - r2).max(-r1);
            let hi = r1.min(dist + r2);
            let unit = ball_volume(d - 1);
            adaptive_midpoint(lo, hi, tol, &mut |x| {
                let a = r1 * r1 - x * x;
                let b = r2 * r2 - (x - dist) * (x - dist);
                let rho_sq = a.min(b);
                if rho_sq <= 0.0 {
                    Ok(0.0)
                } else {
                    Ok(unit * rho_sq.sqrt().powi((d - 1) as i32))
                }
            })
        }
    }
}

/// Exact area of the lens formed by two discs of radii `r1`, `r2` with
/// centres `dist` apart, assuming proper overlap.
pub fn lens_area(r1: f64, r2: f64, dist: f64) -> f64 {
    let d1 = (dist * dist - r2 * r2 + r1 * r1) / (2.0 * dist);
    let d2 = dist - d1;
    let seg = |r: f64, a: f64| {
        let a = a.clamp(-r, r);
        r * r * (a / r).acos() - a * (r * r - a * a).max(0.0).sqrt()
    };
    seg(r1, d1) + seg(r2, d2)
}

/// Volume of `B(0, r) ∩ {x_1 <= a}` in dimension `d` (a spherical cap or its
/// complement), exact in d=1,2 and by adaptive slices otherwise.
fn ball_halfspace_volume(d: usize, r: f64, a: f64) -> f64 {
    if a <= -r {
        return 0.0;
    }
    if a >= r {
        return ball_volume(d) * r.powi(d as i32);
    }
    match d {
        1 => a + r,
        2 => {
            // disc area minus the circular segment beyond x = a
            let seg = r * r * (a / r).acos() - a * (r * r - a * a).sqrt();
            std::f64::consts::PI * r * r - seg
        }
        _ => {
            let unit = ball_volume(d - 1);
            adaptive_midpoint(-r, a, 1e-9, &mut |x| {
                let rho_sq = r * r - x * x;
                if rho_sq <= 0.0 {
                    Ok(0.0)
                } else {
                    Ok(unit * rho_sq.sqrt().powi((d - 1) as i32))
                }
            })
            .unwrap_or(0.0)
        }
    }
}

/// Exact area of the disc `B((cx,cy), r)` intersected with the axis-aligned
/// rectangle `[x0,x1] x [y0,y1]`, by Green's theorem over the rectangle
/// boundary with arcs replacing the parts outside the disc.
pub fn circle_rect_area(cx: f64, cy: f64, r: f64, x0: f64, x1: f64, y0: f64, y1: f64) -> f64 {
    let corners = [
        (x0 - cx, y0 - cy),
        (x1 - cx, y0 - cy),
        (x1 - cx, y1 - cy),
        (x0 - cx, y1 - cy),
    ];
    let mut total = 0.0;
    for i in 0..4 {
        total += circle_segment_contrib(corners[i], corners[(i + 1) % 4], r);
    }
    total.max(0.0)
}

/// Signed area contribution of one directed edge `p -> q` against the disc of
/// radius `r` centred at the origin.
fn circle_segment_contrib(p: (f64, f64), q: (f64, f64), r: f64) -> f64 {
    let dx = q.0 - p.0;
    let dy = q.1 - p.1;
    // |p + t (q-p)|^2 = r^2
    let a = dx * dx + dy * dy;
    let b = 2.0 * (p.0 * dx + p.1 * dy);
    let c = p.0 * p.0 + p.1 * p.1 - r * r;
    let mut cuts = vec![0.0];
    if a > 0.0 {
        let disc = b * b - 4.0 * a * c;
        if disc > 0.0 {
            let sq = disc.sqrt();
            for t in [(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)] {
                if t > 0.0 && t < 1.0 {
                    cuts.push(t);
                }
            }
        }
    }
    cuts.push(1.0);
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let at = |t: f64| (p.0 + t * dx, p.1 + t * dy);
    let mut acc = 0.0;
    for w in cuts.windows(2) {
        let (ta, tb) = (w[0], w[1]);
        if tb - ta < 1e-15 {
            continue;
        }
        let m = at((ta + tb) / 2.0);
        let (pa, pb) = (at(ta), at(tb));
        if m.0 * m.0 + m.1 * m.1 <= r * r {
            // chord inside the disc: triangle with the origin
            acc += (pa.0 * pb.1 - pa.1 * pb.0) / 2.0;
        } else {
            // outside: the boundary follows the arc between pa and pb
            let ang = (pa.0 * pb.1 - pa.1 * pb.0).atan2(pa.0 * pb.0 + pa.1 * pb.1);
            acc += r * r * ang / 2.0;
        }
    }
    acc
}

/// Deterministic adaptive midpoint quadrature. `f` may itself recurse into a
/// lower-dimensional quadrature; failures propagate.
fn adaptive_midpoint(
    a: f64,
    b: f64,
    tol: f64,
    f: &mut dyn FnMut(f64) -> Result<f64>,
) -> Result<f64> {
    fn rec(
        a: f64,
        b: f64,
        fm: f64,
        tol: f64,
        depth: u32,
        f: &mut dyn FnMut(f64) -> Result<f64>,
    ) -> Result<f64> {
        let h = b - a;
        let m = a + h / 2.0;
        let (m1, m2) = (a + h / 4.0, a + 3.0 * h / 4.0);
        let (f1, f2) = (f(m1)?, f(m2)?);
        let coarse = fm * h;
        let fine = (f1 + f2) * h / 2.0;
        if (fine - coarse).abs() <= 3.0 * tol || h < 1e-13 {
            return Ok(fine);
        }
        if depth == 0 {
            return Err(Error::Accuracy {
                tol,
                achieved: (fine - coarse).abs(),
            });
        }
        let left = rec(a, m, f1, tol / 2.0, depth - 1, f)?;
        let right = rec(m, b, f2, tol / 2.0, depth - 1, f)?;
        Ok(left + right)
    }
    if b <= a {
        return Ok(0.0);
    }
    let fm = f((a + b) / 2.0)?;
    rec(a, b, fm, tol, 42, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unit_ball_volumes() {
        assert!((ball_volume(1) - 2.0).abs() < 1e-12);
        assert!((ball_volume(2) - PI).abs() < 1e-12);
        assert!((ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-12);
        assert!((ball_volume(4) - PI * PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn ball_volume_lower_bounds() {
        // theta_d >= max(pi^{d/2}/(2 d^{d/2+1}), d^{-d/2})
        for d in 1..=10 {
            let v = ball_volume(d);
            let df = d as f64;
            let b1 = PI.powf(df / 2.0) / (2.0 * df.powf(df / 2.0 + 1.0));
            let b2 = df.powf(-df / 2.0);
            assert!(v >= b1.max(b2) - 1e-12, "bound fails at d={d}");
        }
    }

    #[test]
    fn clipped_examples() {
        let v = clipped_ball_volume(&Point(vec![0.0]), 0.3, Metric::CubeEuclidean, 1e-9).unwrap();
        assert!((v - 0.3).abs() < 1e-12);
        let v = clipped_ball_volume(&Point(vec![0.5, 0.5]), 0.1, Metric::CubeEuclidean, 1e-9)
            .unwrap();
        assert!((v - 0.01 * PI).abs() < 1e-10);
        let v = clipped_ball_volume(&Point(vec![0.0, 0.0]), 0.1, Metric::CubeEuclidean, 1e-9)
            .unwrap();
        assert!((v - 0.0025 * PI).abs() < 1e-10);
    }

    #[test]
    fn torus_ball_is_exact_below_half() {
        let v = clipped_ball_volume(&Point(vec![0.9, 0.1]), 0.2, Metric::TorusEuclidean, 1e-9)
            .unwrap();
        assert!((v - PI * 0.04).abs() < 1e-12);
    }

    #[test]
    fn quadrature_matches_exact_interior_ball_d3() {
        let v = clipped_ball_volume(&Point(vec![0.5, 0.5, 0.5]), 0.2, Metric::CubeEuclidean, 1e-7)
            .unwrap();
        let exact = ball_volume(3) * 0.2f64.powi(3);
        assert!((v - exact).abs() < 1e-6, "got {v}, want {exact}");
    }

    #[test]
    fn clipped_monotone_in_radius() {
        let c = Point(vec![0.2, 0.7]);
        let mut last = 0.0;
        for i in 1..30 {
            let r = i as f64 * 0.02;
            let v = clipped_ball_volume(&c, r, Metric::CubeEuclidean, 1e-9).unwrap();
            assert!(v >= last - 1e-12);
            last = v;
        }
    }

    #[test]
    fn region_examples() {
        // annulus B(x, r, 2r) on the torus, d=2, r=0.05
        let v = region_volume(
            &Region::Annulus {
                center: Point(vec![0.5, 0.5]),
                r_inner: 0.05,
                r_outer: 0.1,
                metric: Metric::TorusEuclidean,
            },
            1e-9,
        )
        .unwrap();
        assert!((v - 3.0 * PI * 0.0025).abs() < 1e-12);

        // coincident unit discs: the intersection is a full unit disc
        let v = region_volume(
            &Region::BallIntersection {
                centers: (Point(vec![0.5, 0.5]), Point(vec![0.5, 0.5])),
                radii: (1.0, 1.0),
            },
            1e-9,
        )
        .unwrap();
        assert!((v - PI).abs() < 1e-12);

        // tangent discs overlap in a zero-measure set
        let v = region_volume(
            &Region::BallIntersection {
                centers: (Point(vec![0.2, 0.5]), Point(vec![0.4, 0.5])),
                radii: (0.1, 0.1),
            },
            1e-9,
        )
        .unwrap();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn lens_matches_quadrature_oracle() {
        // independent oracle: slice integration of the overlap profile
        let (r1, r2, dist) = (0.3, 0.22, 0.35);
        let exact = lens_area(r1, r2, dist);
        let n = 400_000;
        let lo = dist - r2;
        let hi = r1;
        let h = (hi - lo) / n as f64;
        let mut acc = 0.0;
        for i in 0..n {
            let x = lo + (i as f64 + 0.5) * h;
            let w1 = (r1 * r1 - x * x).max(0.0).sqrt();
            let w2 = (r2 * r2 - (x - dist) * (x - dist)).max(0.0).sqrt();
            acc += 2.0 * w1.min(w2) * h;
        }
        assert!((exact - acc).abs() < 1e-6, "lens {exact} vs oracle {acc}");
    }

    #[test]
    fn circle_rect_matches_grid_oracle() {
        // brute grid-count oracle for a clipped circle
        let (cx, cy, r) = (0.15, 0.85, 0.3);
        let exact = circle_rect_area(cx, cy, r, 0.0, 1.0, 0.0, 1.0);
        let n = 3000;
        let h = 1.0 / n as f64;
        let mut count = 0u64;
        for i in 0..n {
            for j in 0..n {
                let x = (i as f64 + 0.5) * h;
                let y = (j as f64 + 0.5) * h;
                if (x - cx).powi(2) + (y - cy).powi(2) <= r * r {
                    count += 1;
                }
            }
        }
        let approx = count as f64 * h * h;
        assert!((exact - approx).abs() < 1e-3, "{exact} vs {approx}");
    }
}
