//! Axis-aligned tessellations of `[0,1]^d` into cells of side `1/m`, the grid
//! graph on cells, and boustrophedon spanning paths.


use crate::{Error, Result};

/// How the cell side is derived from the connection radius. Each rule takes
/// the reciprocal of a ceiling so that `m * side == 1` exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SideRule {
    /// `s = 1/ceil(sqrt(d)/r)`: any two points of one cell are within `r`.
    Clique,
    /// `s = 1/ceil(d/(delta r))`: cell diameter at most `delta r`.
    Jackson { delta: f64 },
    /// `s = 1/ceil(sqrt(d+3)/r)`: two face-adjacent cells fit in one ball.
    Appendix,
    /// `s = 1/ceil(3/(4r))`, the 1-D interval rule.
    Interval,
    /// Explicit number of cells per axis.
    Explicit { m: usize },
}

/// A tessellation of `[0,1]^d` with `m^d` cells of side `1/m`.
#[derive(Debug, Clone)]
pub struct Tessellation {
    dim: usize,
    m: usize,
    side: f64,
    r: f64,
    torus: bool,
}

/// Build a tessellation for radius `r` under the given side rule.
pub fn tessellate(d: usize, rule: SideRule, r: f64) -> Result<Tessellation> {
    if d == 0 {
        return Err(Error::Parameter("dimension must be >= 1".into()));
    }
    if r <= 0.0 || r > (d as f64).sqrt() {
        return Err(Error::Parameter(format!(
            "radius {r} outside (0, sqrt(d)]"
        )));
    }
    let m = match rule {
        SideRule::Clique => ((d as f64).sqrt() / r).ceil() as usize,
        SideRule::Jackson { delta } => {
            if delta <= 0.0 {
                return Err(Error::Parameter("jackson rule needs delta > 0".into()));
            }
            (d as f64 / (delta * r)).ceil() as usize
        }
        SideRule::Appendix => (((d + 3) as f64).sqrt() / r).ceil() as usize,
        SideRule::Interval => (3.0 / (4.0 * r)).ceil() as usize,
        SideRule::Explicit { m } => m,
    };
    if m == 0 {
        return Err(Error::Parameter("rule produced zero cells per axis".into()));
    }
    Ok(Tessellation {
        dim: d,
        m,
        side: 1.0 / m as f64,
        r,
        torus: false,
    })
}

impl Tessellation {
    /// Same cells with wrap-around grid adjacency.
    pub fn with_torus(mut self) -> Self {
        self.torus = true;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells_per_axis(&self) -> usize {
        self.m
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn radius(&self) -> f64 {
        self.r
    }

    pub fn cell_count(&self) -> usize {
        self.m.pow(self.dim as u32)
    }

    pub fn cell_coords(&self, id: usize) -> Vec<usize> {
        let mut rest = id;
        let mut coords = vec![0usize; self.dim];
        for c in coords.iter_mut() {
            *c = rest % self.m;
            rest /= self.m;
        }
        coords
    }

    pub fn cell_id(&self, coords: &[usize]) -> usize {
        let mut id = 0usize;
        for &c in coords.iter().rev() {
            id = id * self.m + c;
        }
        id
    }

    /// Cell containing a point. Boundary ties go to the lexicographically
    /// smallest containing cell.
    pub fn cell_of(&self, p: &[f64]) -> usize {
        debug_assert_eq!(p.len(), self.dim);
        let mut coords = vec![0usize; self.dim];
        for (c, &x) in coords.iter_mut().zip(p) {
            let t = x * self.m as f64;
            let mut i = t.floor();
            if i == t && i > 0.0 {
                i -= 1.0; // exactly on a boundary: take the lower cell
            }
            *c = (i.max(0.0) as usize).min(self.m - 1);
        }
        self.cell_id(&coords)
    }

    pub fn cell_center(&self, id: usize) -> Vec<f64> {
        self.cell_coords(id)
            .iter()
            .map(|&c| (c as f64 + 0.5) * self.side)
            .collect()
    }

    /// Lower corner of a cell.
    pub fn cell_origin(&self, id: usize) -> Vec<f64> {
        self.cell_coords(id)
            .iter()
            .map(|&c| c as f64 * self.side)
            .collect()
    }

    /// Grid-graph neighbours: cells sharing a `(d-1)`-face.
    pub fn neighbors(&self, id: usize) -> Vec<usize> {
        let coords = self.cell_coords(id);
        let mut out = Vec::with_capacity(2 * self.dim);
        for axis in 0..self.dim {
            for dir in [-1isize, 1] {
                let c = coords[axis] as isize + dir;
                let c = if self.torus {
                    (c + self.m as isize) % self.m as isize
                } else if c < 0 || c >= self.m as isize {
                    continue;
                } else {
                    c
                };
                if self.torus && self.m <= 2 && c == coords[axis] as isize {
                    continue;
                }
                let mut nc = coords.clone();
                nc[axis] = c as usize;
                out.push(self.cell_id(&nc));
            }
        }
        out.sort_unstable();
        out.dedup();
        out.retain(|&c| c != id);
        out
    }

    pub fn are_adjacent(&self, a: usize, b: usize) -> bool {
        self.neighbors(a).contains(&b)
    }

    /// Per-axis index range (inclusive) of cells at distance at least
    /// `margin` from the boundary, or `None` when no cell qualifies.
    /// On the torus every cell qualifies.
    pub fn interior_range(&self, margin: f64) -> Option<(usize, usize)> {
        if self.torus || margin <= 0.0 {
            return Some((0, self.m - 1));
        }
        let k = (margin * self.m as f64).ceil() as usize;
        if 2 * k >= self.m {
            if k as f64 * self.side >= margin && self.m > 2 * k {
                Some((k, self.m - 1 - k))
            } else {
                None
            }
        } else {
            Some((k, self.m - 1 - k))
        }
    }

    /// The interior set `Q_{2r}`: cells at distance at least `2r` from the
    /// boundary of the cube.
    pub fn q2r_range(&self) -> Option<(usize, usize)> {
        self.interior_range(2.0 * self.r)
    }

    /// Cell ids of a sub-box given by one inclusive per-axis range applied to
    /// all axes.
    pub fn box_cells(&self, range: (usize, usize)) -> Vec<usize> {
        let (lo, hi) = range;
        let mut cells = vec![vec![]];
        for _ in 0..self.dim {
            let mut next = Vec::new();
            for prefix in &cells {
                for c in lo..=hi {
                    let mut p = prefix.clone();
                    p.push(c);
                    next.push(p);
                }
            }
            cells = next;
        }
        cells.iter().map(|c| self.cell_id(c)).collect()
    }
}

/// Boustrophedon spanning path of the grid graph restricted to `restrict`
/// (all cells when `None`). The restriction must form a full axis-aligned
/// box of cells; anything else is an unsupported shape.
pub fn grid_spanning_path(t: &Tessellation, restrict: Option<&[usize]>) -> Result<Vec<usize>> {
    let (lo, hi) = match restrict {
        None => (vec![0; t.dim()], vec![t.cells_per_axis() - 1; t.dim()]),
        Some(cells) => {
            if cells.is_empty() {
                return Err(Error::UnsupportedShape("empty restriction".into()));
            }
            let mut lo = vec![usize::MAX; t.dim()];
            let mut hi = vec![0usize; t.dim()];
            for &id in cells {
                let coords = t.cell_coords(id);
                for a in 0..t.dim() {
                    lo[a] = lo[a].min(coords[a]);
                    hi[a] = hi[a].max(coords[a]);
                }
            }
            let expected: usize = (0..t.dim()).map(|a| hi[a] - lo[a] + 1).product();
            let mut sorted: Vec<usize> = cells.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != expected {
                return Err(Error::UnsupportedShape(
                    "restriction is not a full grid box".into(),
                ));
            }
            (lo, hi)
        }
    };
    let dims: Vec<usize> = (0..t.dim()).map(|a| hi[a] - lo[a] + 1).collect();
    let rel = snake(&dims);
    Ok(rel
        .into_iter()
        .map(|coords| {
            let abs: Vec<usize> = coords.iter().zip(&lo).map(|(c, l)| c + l).collect();
            t.cell_id(&abs)
        })
        .collect())
}

fn snake(dims: &[usize]) -> Vec<Vec<usize>> {
    if dims.len() == 1 {
        return (0..dims[0]).map(|i| vec![i]).collect();
    }
    let sub = snake(&dims[..dims.len() - 1]);
    let mut out = Vec::with_capacity(sub.len() * dims[dims.len() - 1]);
    for layer in 0..dims[dims.len() - 1] {
        let iter: Box<dyn Iterator<Item = &Vec<usize>>> = if layer % 2 == 0 {
            Box::new(sub.iter())
        } else {
            Box::new(sub.iter().rev())
        };
        for c in iter {
            let mut v = c.clone();
            v.push(layer);
            out.push(v);
        }
    }
    out
}
