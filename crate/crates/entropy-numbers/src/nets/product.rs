//! Cartesian-product nets: blockwise coverings combine into a covering of
//! the product with radius `(sum r_i^q)^(1/q)` and index `1 + sum (n_i - 1)`.

use super::{Budget, Net};
use crate::error::{Error, Result};
use crate::space::{Exponent, Point};

/// Combines per-block nets into a net of the product set under the `l_q`
/// combination of block metrics. Center count is exactly the product of the
/// input counts; the index bookkeeping `n - 1 = sum (n_i - 1)` is applied
/// with `n_i = claimed_index_i`.
pub fn product_net(nets: &[Net], q: Exponent, budget: &Budget) -> Result<Net> {
    if nets.is_empty() {
        return Err(Error::InvalidInput("product net needs at least one block".into()));
    }
    let mut count: u128 = 1;
    let mut index: u64 = 1;
    for net in nets {
        if net.is_empty() {
            return Err(Error::InvalidInput("empty block net".into()));
        }
        if !super::count_fits_index(net.len() as u128, net.claimed_index) {
            return Err(Error::InvalidInput(format!(
                "block net violates its own index claim: {} centers, index {}",
                net.len(),
                net.claimed_index
            )));
        }
        count = count.saturating_mul(net.len() as u128);
        index += (net.claimed_index - 1) as u64;
    }
    if count > budget.max_centers as u128 {
        return Err(Error::Resource(format!(
            "product net would have {count} centers, budget is {}",
            budget.max_centers
        )));
    }
    let radius = combine_radii(nets.iter().map(|n| n.radius), q);

    let mut points: Vec<Point> = Vec::with_capacity(count as usize);
    let mut cursor = vec![0usize; nets.len()];
    loop {
        let mut coords = Vec::new();
        for (net, &i) in nets.iter().zip(&cursor) {
            coords.extend_from_slice(&net.points[i].coords);
        }
        points.push(Point::new(coords));
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == nets.len() {
                return Net::new(points, radius, q, index as u32);
            }
            cursor[pos] += 1;
            if cursor[pos] < nets[pos].len() {
                break;
            }
            cursor[pos] = 0;
            pos += 1;
        }
    }
}

/// `(sum r_i^q)^(1/q)`, with the max for `q = inf`.
pub(crate) fn combine_radii(radii: impl Iterator<Item = f64>, q: Exponent) -> f64 {
    match q {
        Exponent::Infinity => radii.fold(0.0, f64::max),
        Exponent::Finite(q) => radii.map(|r| r.powf(q)).sum::<f64>().powf(1.0 / q),
    }
}
