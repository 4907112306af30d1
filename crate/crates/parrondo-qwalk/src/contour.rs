//! Marching-squares extraction of the zero level set from a 2D sweep grid.

use crate::error::{Error, Result};
use crate::sweep::{RecordMode, SweepResult};
use std::collections::HashMap;

/// A chain of points in axis coordinates. Closed when the first and last
/// points coincide.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub points: Vec<(f64, f64)>,
}

impl Polyline {
    pub fn is_closed(&self) -> bool {
        self.points.len() > 2 && self.points.first() == self.points.last()
    }
}

/// Grid-edge identity; crossings are keyed by edge so chained segments
/// connect exactly, with no floating-point matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum EdgeKey {
    /// Between nodes (i, j) and (i+1, j).
    H(usize, usize),
    /// Between nodes (i, j) and (i, j+1).
    V(usize, usize),
}

/// Regular 2D scalar field sampled on the sweep grid.
pub struct GridField {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// values[i][j] at (xs[i], ys[j])
    pub values: Vec<Vec<f64>>,
}

impl GridField {
    /// Reassemble the grid from a two-axis final-only sweep result, using
    /// the expected-position column.
    pub fn from_sweep(result: &SweepResult) -> Result<Self> {
        if result.spec.axes.len() != 2 || result.spec.record_mode != RecordMode::FinalOnly {
            return Err(Error::ContourShape);
        }
        let (a1, a2) = (&result.spec.axes[0], &result.spec.axes[1]);
        let xs: Vec<f64> = (0..a1.points).map(|i| a1.value(i)).collect();
        let ys: Vec<f64> = (0..a2.points).map(|j| a2.value(j)).collect();
        let mut values = vec![vec![0.0; a2.points]; a1.points];
        for (k, row) in result.rows.iter().enumerate() {
            values[k / a2.points][k % a2.points] = row.expected_position;
        }
        Ok(Self { xs, ys, values })
    }
}

/// Extract the zero contour of the field as a set of polylines, with
/// linear interpolation along cell edges. An all-same-sign grid yields an
/// empty set.
pub fn zero_contour(field: &GridField) -> Vec<Polyline> {
    let ni = field.xs.len();
    let nj = field.ys.len();
    let positive = |i: usize, j: usize| field.values[i][j] > 0.0;

    // interpolated crossing point on an edge
    let point = |key: EdgeKey| -> (f64, f64) {
        match key {
            EdgeKey::H(i, j) => {
                let (v0, v1) = (field.values[i][j], field.values[i + 1][j]);
                let t = v0 / (v0 - v1);
                (
                    field.xs[i] + t * (field.xs[i + 1] - field.xs[i]),
                    field.ys[j],
                )
            }
            EdgeKey::V(i, j) => {
                let (v0, v1) = (field.values[i][j], field.values[i][j + 1]);
                let t = v0 / (v0 - v1);
                (
                    field.xs[i],
                    field.ys[j] + t * (field.ys[j + 1] - field.ys[j]),
                )
            }
        }
    };

    // march cells, collecting segments as (edge, edge) pairs
    let mut segments: Vec<(EdgeKey, EdgeKey)> = Vec::new();
    for i in 0..ni.saturating_sub(1) {
        for j in 0..nj.saturating_sub(1) {
            // corners: 1 = (i,j), 2 = (i+1,j), 4 = (i+1,j+1), 8 = (i,j+1)
            let mut case = 0u8;
            if positive(i, j) {
                case |= 1;
            }
            if positive(i + 1, j) {
                case |= 2;
            }
            if positive(i + 1, j + 1) {
                case |= 4;
            }
            if positive(i, j + 1) {
                case |= 8;
            }
            let bottom = EdgeKey::H(i, j);
            let top = EdgeKey::H(i, j + 1);
            let left = EdgeKey::V(i, j);
            let right = EdgeKey::V(i + 1, j);
            match case {
                0 | 15 => {}
                1 | 14 => segments.push((left, bottom)),
                2 | 13 => segments.push((bottom, right)),
                3 | 12 => segments.push((left, right)),
                4 | 11 => segments.push((right, top)),
                6 | 9 => segments.push((bottom, top)),
                7 | 8 => segments.push((left, top)),
                5 | 10 => {
                    // saddle: disambiguate with the cell-center average
                    let center = (field.values[i][j]
                        + field.values[i + 1][j]
                        + field.values[i + 1][j + 1]
                        + field.values[i][j + 1])
                        / 4.0;
                    let center_positive = center > 0.0;
                    if (case == 5) == center_positive {
                        segments.push((left, top));
                        segments.push((bottom, right));
                    } else {
                        segments.push((left, bottom));
                        segments.push((right, top));
                    }
                }
                _ => unreachable!(),
            }
        }
    }

    chain_segments(&segments, point)
}

/// Link segments sharing edge endpoints into maximal polylines.
fn chain_segments<F>(segments: &[(EdgeKey, EdgeKey)], point: F) -> Vec<Polyline>
where
    F: Fn(EdgeKey) -> (f64, f64),
{
    let mut adjacency: HashMap<EdgeKey, Vec<usize>> = HashMap::new();
    for (idx, &(a, b)) in segments.iter().enumerate() {
        adjacency.entry(a).or_default().push(idx);
        adjacency.entry(b).or_default().push(idx);
    }
    let mut used = vec![false; segments.len()];
    let mut polylines = Vec::new();

    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let (a, b) = segments[start];
        let mut chain = vec![a, b];
        // extend forward from the tail, then backward from the head
        for forward in [true, false] {
            loop {
                let tip = if forward { *chain.last().unwrap() } else { chain[0] };
                let next = adjacency
                    .get(&tip)
                    .and_then(|ids| ids.iter().find(|&&i| !used[i]).copied());
                let Some(seg_idx) = next else { break };
                used[seg_idx] = true;
                let (sa, sb) = segments[seg_idx];
                let other = if sa == tip { sb } else { sa };
                if forward {
                    chain.push(other);
                } else {
                    chain.insert(0, other);
                }
            }
        }
        // closed loop: the two chain ends meet through one more segment
        if chain.len() > 2 {
            let (head, tail) = (chain[0], *chain.last().unwrap());
            if segments
                .iter()
                .any(|&(a, b)| (a, b) == (head, tail) || (a, b) == (tail, head))
            {
                chain.push(head);
            }
        }
        polylines.push(Polyline {
            points: chain.into_iter().map(&point).collect(),
        });
    }
    polylines
}
