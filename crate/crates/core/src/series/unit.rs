use num_traits::{One, Zero};

use super::{Precision, Rational, Series, SeriesError};

/// Inverse of a unit, correct up to total degree `target` (exclusive), or
/// exact when `u` is an exact constant.
pub fn invert_unit(u: &Series, target: u32) -> Result<Series, SeriesError> {
    let u0 = u.constant_term();
    if u0.is_zero() {
        return Err(SeriesError::NotAUnit);
    }
    let inv0 = Rational::one() / &u0;
    if u.is_exact() && u.num_terms() == 1 {
        return Ok(Series::constant(inv0));
    }
    let precision = u.precision().min(Precision::Degree(target));
    let p = precision.bound().unwrap_or(target);
    let parts: Vec<Series> = (0..p).map(|d| u.homogeneous_part(d)).collect();
    // r_d = -(1/u0) * sum_{e=1..d} u_e r_{d-e}
    let mut inv_parts: Vec<Series> = Vec::with_capacity(p as usize);
    for d in 0..p as usize {
        if d == 0 {
            inv_parts.push(Series::constant(inv0.clone()));
            continue;
        }
        let mut acc = Series::zero();
        for e in 1..=d {
            if parts[e].is_zero() {
                continue;
            }
            acc = acc.add_series(&parts[e].mul_series(&inv_parts[d - e]));
        }
        inv_parts.push(acc.scale(&-&inv0));
    }
    let mut out = Series::zero();
    for part in &inv_parts {
        out = out.add_series(part);
    }
    Ok(out.with_precision(precision))
}
