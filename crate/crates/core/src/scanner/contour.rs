use std::collections::HashMap;

use serde::Serialize;

use super::{distillability_threshold, protocol_eps, ScanSpec};
use crate::error::Result;

/// Bisection steps used to place a crossing on a lattice edge.
const REFINE_STEPS: usize = 60;

/// An iso-line of a scalar field.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Contour {
    pub level: f64,
    pub points: Vec<(f64, f64)>,
    /// The last point connects back to the first.
    pub closed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Edge {
    /// Between nodes `(i, j)` and `(i + 1, j)`.
    Horizontal(usize, usize),
    /// Between nodes `(i, j)` and `(i, j + 1)`.
    Vertical(usize, usize),
}

impl Edge {
    fn nodes(self) -> ((usize, usize), (usize, usize)) {
        match self {
            Edge::Horizontal(i, j) => ((i, j), (i + 1, j)),
            Edge::Vertical(i, j) => ((i, j), (i, j + 1)),
        }
    }
}

/// Marching squares on the lattice `xs x ys`.
///
/// `values[j * xs.len() + i]` is the field at `(xs[i], ys[j])`; NaN marks
/// masked nodes, and squares touching a masked node are skipped. Crossings
/// start from linear interpolation along the edge and are then bisected on
/// `exact` when it is defined along the whole edge. Saddles are resolved
/// by the mean of the four corners.
pub fn march<F>(xs: &[f64], ys: &[f64], values: &[f64], level: f64, exact: F) -> Vec<Contour>
where
    F: Fn(f64, f64) -> Option<f64>,
{
    let (nx, ny) = (xs.len(), ys.len());
    assert_eq!(
        values.len(),
        nx * ny,
        "field size does not match the lattice"
    );
    let value = |i: usize, j: usize| values[j * nx + i];

    let mut segments: Vec<(Edge, Edge)> = Vec::new();
    for j in 0..ny.saturating_sub(1) {
        for i in 0..nx.saturating_sub(1) {
            let corners = [
                value(i, j),
                value(i + 1, j),
                value(i + 1, j + 1),
                value(i, j + 1),
            ];
            if corners.iter().any(|v| v.is_nan()) {
                continue;
            }
            let case =
                corners.iter().enumerate().fold(
                    0u8,
                    |acc, (k, &v)| if v > level { acc | (1 << k) } else { acc },
                );
            let bottom = Edge::Horizontal(i, j);
            let right = Edge::Vertical(i + 1, j);
            let top = Edge::Horizontal(i, j + 1);
            let left = Edge::Vertical(i, j);
            let center_above = corners.iter().sum::<f64>() / 4.0 > level;
            match case {
                0 | 15 => {}
                1 | 14 => segments.push((left, bottom)),
                2 | 13 => segments.push((bottom, right)),
                3 | 12 => segments.push((left, right)),
                4 | 11 => segments.push((right, top)),
                6 | 9 => segments.push((bottom, top)),
                7 | 8 => segments.push((left, top)),
                5 => {
                    if center_above {
                        segments.push((bottom, right));
                        segments.push((top, left));
                    } else {
                        segments.push((left, bottom));
                        segments.push((right, top));
                    }
                }
                10 => {
                    if center_above {
                        segments.push((left, bottom));
                        segments.push((right, top));
                    } else {
                        segments.push((bottom, right));
                        segments.push((top, left));
                    }
                }
                _ => unreachable!(),
            }
        }
    }

    let mut crossings: HashMap<Edge, (f64, f64)> = HashMap::new();
    let mut crossing = |edge: Edge| -> (f64, f64) {
        *crossings.entry(edge).or_insert_with(|| {
            let ((i0, j0), (i1, j1)) = edge.nodes();
            let p0 = (xs[i0], ys[j0]);
            let p1 = (xs[i1], ys[j1]);
            locate(p0, p1, value(i0, j0), value(i1, j1), level, &exact)
        })
    };

    let mut adjacency: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (k, &(a, b)) in segments.iter().enumerate() {
        adjacency.entry(a).or_default().push(k);
        adjacency.entry(b).or_default().push(k);
    }

    let mut used = vec![false; segments.len()];
    let mut contours = Vec::new();
    let mut walk = |start_seg: usize, start_edge: Edge, used: &mut Vec<bool>| -> Contour {
        let mut points = vec![crossing(start_edge)];
        let (mut seg, mut edge) = (start_seg, start_edge);
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            let next_edge = if a == edge { b } else { a };
            if next_edge == start_edge {
                return Contour {
                    level,
                    points,
                    closed: true,
                };
            }
            points.push(crossing(next_edge));
            match adjacency[&next_edge].iter().find(|&&s| !used[s]) {
                Some(&s) => {
                    seg = s;
                    edge = next_edge;
                }
                None => {
                    return Contour {
                        level,
                        points,
                        closed: false,
                    }
                }
            }
        }
    };

    // open polylines start at an edge used by a single segment
    for k in 0..segments.len() {
        if used[k] {
            continue;
        }
        let (a, b) = segments[k];
        for end in [a, b] {
            if !used[k] && adjacency[&end].len() == 1 {
                contours.push(walk(k, end, &mut used));
            }
        }
    }
    for k in 0..segments.len() {
        if !used[k] {
            contours.push(walk(k, segments[k].0, &mut used));
        }
    }
    contours
}

fn locate<F>(p0: (f64, f64), p1: (f64, f64), v0: f64, v1: f64, level: f64, exact: &F) -> (f64, f64)
where
    F: Fn(f64, f64) -> Option<f64>,
{
    let at = |s: f64| (p0.0 + s * (p1.0 - p0.0), p0.1 + s * (p1.1 - p0.1));
    let linear = ((level - v0) / (v1 - v0)).clamp(0.0, 1.0);
    let f = |s: f64| {
        let (x, y) = at(s);
        exact(x, y).map(|v| v - level)
    };
    let (Some(f0), Some(f1)) = (f(0.0), f(1.0)) else {
        return at(linear);
    };
    if f0 == 0.0 {
        return at(0.0);
    }
    if f1 == 0.0 || f0.signum() == f1.signum() {
        return at(if f1 == 0.0 { 1.0 } else { linear });
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..REFINE_STEPS {
        let mid = 0.5 * (lo + hi);
        let Some(fm) = f(mid) else {
            return at(linear);
        };
        if fm == 0.0 {
            return at(mid);
        }
        if fm.signum() == f0.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    at(0.5 * (lo + hi))
}

/// Contours `eps = 1` and `eps = e^-1` of the protocol's large-`mu` `eps`
/// over the bona-fide part of the scan window.
pub fn boundary_curves(spec: &ScanSpec) -> Result<Vec<Contour>> {
    let n = spec.resolution();
    let (tau, omega, protocol) = (spec.tau(), spec.omega(), spec.protocol());
    let xs: Vec<f64> = (0..n).map(|i| spec.g_at(i)).collect();
    let ys: Vec<f64> = (0..n).map(|j| spec.gp_at(j)).collect();
    let values: Vec<f64> = (0..n * n)
        .map(|k| protocol_eps(tau, omega, xs[k % n], ys[k / n], protocol).unwrap_or(f64::NAN))
        .collect();
    let exact = |g: f64, gp: f64| protocol_eps(tau, omega, g, gp, protocol);
    let mut contours = march(&xs, &ys, &values, 1.0, exact);
    contours.extend(march(&xs, &ys, &values, distillability_threshold(), exact));
    Ok(contours)
}
