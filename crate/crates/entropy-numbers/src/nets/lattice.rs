//! Grid coverings of `B_{l_p^m}` in the `l_q` metric.
//!
//! Cells are the boxes `[k*step, (k+1)*step)^m` with centers at the
//! midpoints; the step is chosen so each cell has `l_q` circumradius at most
//! `eps`. A cell is kept iff its nearest point to the origin has `l_p`
//! norm strictly below 1; points of the ball lying exactly on a dropped
//! cell's boundary are covered by the adjacent kept cell at distance
//! exactly `eps`.

use super::{index_for_count, Budget, Net};
use crate::error::{Error, Result};
use crate::space::{Exponent, ExponentPair, Point};

pub(crate) const MAX_DIM: u32 = 16;
pub(crate) const MIN_EPS: f64 = 9.5367431640625e-7; // 2^-20

fn check_args(m: u32, eps: f64) -> Result<()> {
    if m < 1 || m > MAX_DIM {
        return Err(Error::Domain(format!("lattice net supports 1 <= m <= {MAX_DIM}, got {m}")));
    }
    if !(eps >= MIN_EPS) {
        return Err(Error::Domain(format!("lattice net requires eps >= 2^-20, got {eps}")));
    }
    Ok(())
}

/// Cell side length such that the `l_q` circumradius of a cell is `eps`.
fn cell_step(m: u32, q: Exponent, eps: f64) -> f64 {
    match q {
        Exponent::Infinity => 2.0 * eps,
        Exponent::Finite(q) => 2.0 * eps * (m as f64).powf(-1.0 / q),
    }
}

/// Covering net of `B_{l_p^m}` with `l_q` radius `eps`.
pub fn lattice_net(m: u32, pq: ExponentPair, eps: f64, budget: &Budget) -> Result<Net> {
    check_args(m, eps)?;
    if eps >= 1.0 {
        // p < q implies sup of the l_q norm over the ball is 1
        return Net::new(vec![Point::new(vec![0.0; m as usize])], eps, pq.q(), 1);
    }
    let step = cell_step(m, pq.q(), eps);
    let mut centers: Vec<Point> = Vec::new();
    let mut cell = vec![0i64; m as usize];
    let full = visit_cells(m, pq.p(), step, &mut cell, 0, 0.0, &mut |cell| {
        if centers.len() as u64 >= budget.max_centers {
            return false;
        }
        centers.push(Point::new(
            cell.iter().map(|&k| (k as f64 + 0.5) * step).collect(),
        ));
        true
    });
    if !full {
        return Err(Error::Resource(format!(
            "lattice net exceeded budget of {} centers (m = {m}, eps = {eps})",
            budget.max_centers
        )));
    }
    let index = index_for_count(centers.len() as u64);
    Net::new(centers, eps, pq.q(), index)
}

/// Number of cells the net at `eps` would contain, or `None` as soon as the
/// count exceeds `cap`. Used by bracket searches to avoid materializing nets.
pub fn lattice_cell_count(m: u32, pq: ExponentPair, eps: f64, cap: u64) -> Result<Option<u64>> {
    check_args(m, eps)?;
    if eps >= 1.0 {
        return Ok(if cap >= 1 { Some(1) } else { None });
    }
    let step = cell_step(m, pq.q(), eps);
    let mut count = 0u64;
    let mut cell = vec![0i64; m as usize];
    let full = visit_cells(m, pq.p(), step, &mut cell, 0, 0.0, &mut |_| {
        count += 1;
        count <= cap
    });
    Ok(if full { Some(count) } else { None })
}

/// Depth-first enumeration of all cells whose nearest point to the origin
/// has `l_p` norm strictly below 1. The visitor returns `false` to abort;
/// the function returns `true` iff the enumeration ran to completion.
fn visit_cells(
    m: u32,
    p: Exponent,
    step: f64,
    cell: &mut [i64],
    pos: usize,
    partial: f64,
    visit: &mut dyn FnMut(&[i64]) -> bool,
) -> bool {
    let pval = match p {
        Exponent::Finite(v) => v,
        // p < q <= inf forces p finite; guarded at construction
        Exponent::Infinity => unreachable!("source exponent p must be finite"),
    };
    if pos == m as usize {
        return visit(cell);
    }
    // shells j = 0 (k in {0, -1}), then j = 1, 2, ... (k in {j, -j-1})
    let mut j = 0i64;
    loop {
        let offset = (j as f64) * step;
        let contribution = if j == 0 { 0.0 } else { offset.powf(pval) };
        if partial + contribution >= 1.0 {
            return true;
        }
        for k in [j, -j - 1] {
            cell[pos] = k;
            if !visit_cells(m, p, step, cell, pos + 1, partial + contribution, visit) {
                return false;
            }
        }
        j += 1;
    }
}
