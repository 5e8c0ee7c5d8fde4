//! Geometric graphs: a point set plus a connection radius, with cell-list
//! construction and the textual graph file format.

use super::Graph;
use crate::geom::{distance_sq, Metric, PointSet};
use crate::{Error, Result};
use std::io::{BufRead, BufWriter, Write};
use std::path::Path;

/// A geometric graph `G(V, r)`: vertices are point indices, edges exactly the
/// pairs at distance `<= r` under the metric. Immutable after construction.
#[derive(Debug, Clone)]
pub struct GeometricGraph {
    pub points: PointSet,
    pub r: f64,
    pub metric: Metric,
    pub graph: Graph,
}

impl GeometricGraph {
    /// Build the graph from points via cell-list buckets of side >= r
    /// (expected time `O(n + |E|)`).
    pub fn build(points: PointSet, r: f64, metric: Metric) -> Self {
        let edges = if r <= 0.0 {
            Vec::new()
        } else {
            cell_list_edges(&points, r, metric)
        };
        let graph = Graph::from_edges(points.len(), edges).expect("cell list produces valid edges");
        GeometricGraph {
            points,
            r,
            metric,
            graph,
        }
    }

    /// Quadratic all-pairs reference construction (testing oracle).
    pub fn build_naive(points: PointSet, r: f64, metric: Metric) -> Self {
        let n = points.len();
        let rsq = r * r;
        let mut edges = Vec::new();
        if r > 0.0 {
            for i in 0..n {
                for j in (i + 1)..n {
                    if distance_sq(points.coords(i), points.coords(j), metric) <= rsq {
                        edges.push((i as u32, j as u32));
                    }
                }
            }
        }
        let graph = Graph::from_edges(n, edges).expect("valid edges");
        GeometricGraph {
            points,
            r,
            metric,
            graph,
        }
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn dim(&self) -> usize {
        self.points.dim()
    }
}

fn cell_list_edges(points: &PointSet, r: f64, metric: Metric) -> Vec<(u32, u32)> {
    let n = points.len();
    let d = points.dim();
    let m = ((1.0 / r).floor() as usize).clamp(1, 1 << 20);
    let torus_wrap = metric == Metric::TorusEuclidean && m > 2;
    let bucket_of = |p: &[f64]| -> usize {
        let mut id = 0usize;
        for &x in p.iter().rev() {
            let c = ((x * m as f64) as usize).min(m - 1);
            id = id * m + c;
        }
        id
    };
    let nbuckets = m.pow(d as u32);
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); nbuckets];
    for i in 0..n {
        buckets[bucket_of(points.coords(i))].push(i as u32);
    }
    // offsets of neighbouring buckets: every coordinate shift in {-1,0,1}
    let mut shifts: Vec<Vec<isize>> = vec![vec![]];
    for _ in 0..d {
        let mut next = Vec::new();
        for s in &shifts {
            for delta in [-1isize, 0, 1] {
                let mut t = s.clone();
                t.push(delta);
                next.push(t);
            }
        }
        shifts = next;
    }
    let rsq = r * r;
    let mut edges = Vec::new();
    let mut coords = vec![0usize; d];
    for b in 0..nbuckets {
        if buckets[b].is_empty() {
            continue;
        }
        let mut rest = b;
        for c in coords.iter_mut() {
            *c = rest % m;
            rest /= m;
        }
        for shift in &shifts {
            let mut nb = 0usize;
            let mut ok = true;
            for axis in (0..d).rev() {
                let c = coords[axis] as isize + shift[axis];
                let c = if torus_wrap {
                    (c + m as isize) % m as isize
                } else if c < 0 || c >= m as isize {
                    ok = false;
                    break;
                } else {
                    c
                };
                nb = nb * m + c as usize;
            }
            if !ok || nb < b {
                continue;
            }
            if nb == b {
                let list = &buckets[b];
                for (i, &u) in list.iter().enumerate() {
                    for &v in &list[i + 1..] {
                        if distance_sq(points.coords(u as usize), points.coords(v as usize), metric)
                            <= rsq
                        {
                            edges.push((u.min(v), u.max(v)));
                        }
                    }
                }
            } else {
                for &u in &buckets[b] {
                    for &v in &buckets[nb] {
                        if distance_sq(points.coords(u as usize), points.coords(v as usize), metric)
                            <= rsq
                        {
                            edges.push((u.min(v), u.max(v)));
                        }
                    }
                }
            }
        }
    }
    // wrap-around on a torus with few buckets degenerates to all-pairs
    if metric == Metric::TorusEuclidean && m <= 2 {
        edges.clear();
        for i in 0..n {
            for j in (i + 1)..n {
                if distance_sq(points.coords(i), points.coords(j), metric) <= rsq {
                    edges.push((i as u32, j as u32));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    edges
}

/// Write the graph file format: `d n r metric`, then `n` coordinate lines,
/// then one `u v` line per edge with `u < v`.
pub fn write_graph_file(g: &GeometricGraph, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut w = BufWriter::new(file);
    writeln!(w, "{} {} {} {}", g.dim(), g.n(), g.r, g.metric.name())?;
    for p in g.points.iter() {
        let line: Vec<String> = p.iter().map(|x| format!("{x}")).collect();
        writeln!(w, "{}", line.join(" "))?;
    }
    for &(u, v) in g.graph.edges() {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()?;
    Ok(())
}

/// Read the graph file format written by [`write_graph_file`].
pub fn read_graph_file(path: &Path) -> Result<GeometricGraph> {
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    let mut lines = reader.lines().enumerate();
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::Parse {
            line: 1,
            msg: "empty file".into(),
        })
        .and_then(|(i, l)| l.map(|l| (i + 1, l)).map_err(Error::Io))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 4 {
        return Err(Error::Parse {
            line: lineno,
            msg: "expected `d n r metric`".into(),
        });
    }
    let parse_err = |line: usize, what: &str| Error::Parse {
        line,
        msg: format!("invalid {what}"),
    };
    let d: usize = parts[0].parse().map_err(|_| parse_err(lineno, "d"))?;
    let n: usize = parts[1].parse().map_err(|_| parse_err(lineno, "n"))?;
    let r: f64 = parts[2].parse().map_err(|_| parse_err(lineno, "r"))?;
    let metric = Metric::parse(parts[3]).map_err(|_| parse_err(lineno, "metric"))?;
    let mut coords = Vec::with_capacity(n * d);
    for _ in 0..n {
        let (i, line) = lines
            .next()
            .ok_or_else(|| Error::Parse {
                line: lineno + 1,
                msg: "missing coordinate line".into(),
            })
            .and_then(|(i, l)| l.map(|l| (i + 1, l)).map_err(Error::Io))?;
        let row: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| parse_err(i, "coordinate"))?;
        if row.len() != d {
            return Err(parse_err(i, "coordinate count"));
        }
        coords.extend(row);
    }
    let mut edges = Vec::new();
    for (i, line) in lines {
        let line = line.map_err(Error::Io)?;
        if line.trim().is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let u: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(i + 1, "edge"))?;
        let v: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(i + 1, "edge"))?;
        if u >= v {
            return Err(parse_err(i + 1, "edge order (need u < v)"));
        }
        edges.push((u, v));
    }
    let points = PointSet::new(d, coords)?;
    let graph = Graph::from_edges(n, edges)?;
    Ok(GeometricGraph {
        points,
        r,
        metric,
        graph,
    })
}
