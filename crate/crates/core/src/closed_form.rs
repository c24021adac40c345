//! Analytic values: regular polygon ensembles and the regular polyhedron
//! reference table.

use std::f64::consts::PI;

use crate::ensemble::{Ensemble, Ordering, Polyhedron};
use crate::error::{Error, Result};
use crate::operator::HermitianOperator;
use crate::score::value_from_trace_norm;

fn check_count(count: usize) -> Result<f64> {
    if count < 2 {
        return Err(Error::PolygonTooSmall(count));
    }
    Ok(count as f64)
}

/// Optimal `||E_M(n*)||_1` for the regular `count`-gon ensemble.
///
/// Even `k`: `2 sin(pi/k)^-2 sqrt(3 cos(pi/k)^2 + 1) / k`.
/// Odd `k`: `cos(pi/2k) sin(pi/2k)^-2 / k`.
pub fn polygon_trace_norm(count: usize) -> Result<f64> {
    let k = check_count(count)?;
    Ok(if count.is_multiple_of(2) {
        let (s, c) = (PI / k).sin_cos();
        2.0 * (3.0 * c * c + 1.0).sqrt() / (s * s) / k
    } else {
        let (s, c) = (PI / (2.0 * k)).sin_cos();
        c / (s * s) / k
    })
}

/// Minimum guesswork of the regular `count`-gon ensemble.
pub fn polygon_value(count: usize) -> Result<f64> {
    Ok(value_from_trace_norm(count, polygon_trace_norm(count)?))
}

/// An optimal ordering for [`Ensemble::polygon`]: the zig-zag that sorts
/// vertices by their projection on the direction at angle `pi / 2k`, i.e.
/// the middle of one sort cell. Reported with rank-1 index below rank-`k`.
pub fn polygon_optimal_ordering(count: usize) -> Result<Ordering> {
    let k = check_count(count)?;
    let phi = PI / (2.0 * k);
    let key = |m: usize| (2.0 * PI * m as f64 / k - phi).cos();
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by(|&a, &b| key(a).total_cmp(&key(b)).then(a.cmp(&b)));
    if order[0] > order[count - 1] {
        order.reverse();
    }
    Ordering::new(order)
}

/// The explicit optimal score operator of the regular polygon in the basis
/// where it is real:
///
/// ```text
/// even k:  1/k      [[-2 cot^2 - 1, -cot], [-cot, 2 cot^2 + 1]],  cot = cot(pi/k)
/// odd k:   1/(2k)   [[-cot^2, -cot], [-cot, cot^2]],              cot = cot(pi/2k)
/// ```
pub fn polygon_score_matrix(count: usize) -> Result<HermitianOperator> {
    let k = check_count(count)?;
    let rows = if count.is_multiple_of(2) {
        let ct = 1.0 / (PI / k).tan();
        let d = 2.0 * ct * ct + 1.0;
        vec![vec![-d / k, -ct / k], vec![-ct / k, d / k]]
    } else {
        let ct = 1.0 / (PI / (2.0 * k)).tan();
        let s = 1.0 / (2.0 * k);
        vec![vec![-ct * ct * s, -ct * s], vec![-ct * s, ct * ct * s]]
    };
    HermitianOperator::from_real_rows(&rows)
}

/// Minimum guesswork of the regular polyhedron with `count` vertices,
/// evaluated from its radical:
///
/// | vertices | value |
/// |---|---|
/// | 4  | `5/2 - sqrt(5/3)/2` |
/// | 6  | `7/2 - sqrt(35)/6` |
/// | 8  | `9/2 - sqrt(7)/2` |
/// | 12 | `13/2 - sqrt(110 (65 + 29 sqrt 5))/60` |
/// | 20 | `21/2 - sqrt(30 (665 + 291 sqrt 5))/60` |
pub fn polyhedron_reference(count: usize) -> Result<f64> {
    let sqrt5 = 5f64.sqrt();
    Ok(match count {
        4 => 2.5 - 0.5 * (5.0f64 / 3.0).sqrt(),
        6 => 3.5 - 35f64.sqrt() / 6.0,
        8 => 4.5 - 7f64.sqrt() / 2.0,
        12 => 6.5 - (110.0 * (65.0 + 29.0 * sqrt5)).sqrt() / 60.0,
        20 => 10.5 - (30.0 * (665.0 + 291.0 * sqrt5)).sqrt() / 60.0,
        other => return Err(Error::UnsupportedCount(other)),
    })
}

pub fn polyhedron_reference_for(shape: Polyhedron) -> f64 {
    polyhedron_reference(shape.vertex_count()).expect("every polyhedron has a reference")
}

/// Convenience: the ensemble and its optimal ordering together.
pub fn polygon_instance(count: usize) -> Result<(Ensemble, Ordering)> {
    Ok((Ensemble::polygon(count)?, polygon_optimal_ordering(count)?))
}
