//! Division in the local ring `Q[[X, Y, Z]]` by a single series.
//!
//! The leading monomial of the divisor is the smallest monomial of its
//! initial form (degree first, then lexicographic). Processing the dividend
//! degree by degree yields the unique `f = q g + r` in which no term of `r`
//! is divisible by that leading monomial, so `g | f` exactly when `r = 0`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{local_key, total_degree, Monomial, Rational, Series, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalDivision {
    /// `f = q g` holds exactly.
    Exact(Series),
    /// `f = q g` holds to the precision recorded on the quotient.
    UpTo(Series),
    /// A remainder term survives; this certifies `g` does not divide `f`.
    NotDivisible { monomial: Monomial, coefficient: Rational },
}

type Key = (u32, u32, u32, u32);

fn key_monomial(k: &Key) -> Monomial {
    [k.1, k.2, k.3]
}

/// Runs the local division. For exact inputs `cap` bounds the quotient's
/// degree when it does not terminate.
pub fn local_division(f: &Series, g: &Series, cap: u32) -> Result<LocalDivision, SeriesError> {
    let (lead, lead_coeff) = g
        .terms()
        .min_by_key(|(m, _)| local_key(m))
        .map(|(m, c)| (*m, c.clone()))
        .ok_or(SeriesError::DivisionByZero)?;
    let g_order = total_degree(&lead);
    let inputs_exact = f.is_exact() && g.is_exact();
    let bound = match f.precision().min(g.precision()).bound() {
        Some(p) => p,
        None => cap.saturating_add(g_order),
    };
    let g_terms: Vec<(Monomial, Rational)> = g.terms().map(|(m, c)| (*m, c.clone())).collect();

    let mut rest: BTreeMap<Key, Rational> = BTreeMap::new();
    let mut dropped = false;
    for (m, c) in f.terms() {
        if total_degree(m) < bound {
            rest.insert(local_key(m), c.clone());
        } else {
            dropped = true;
        }
    }
    let mut quotient: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((key, c)) = rest.pop_first() {
        let m = key_monomial(&key);
        if (0..3).any(|v| m[v] < lead[v]) {
            return Ok(LocalDivision::NotDivisible { monomial: m, coefficient: c });
        }
        let shift = [m[0] - lead[0], m[1] - lead[1], m[2] - lead[2]];
        let t = &c / &lead_coeff;
        for (gm, gc) in &g_terms {
            let pm = [gm[0] + shift[0], gm[1] + shift[1], gm[2] + shift[2]];
            if pm == m {
                continue;
            }
            if total_degree(&pm) >= bound {
                dropped = true;
                continue;
            }
            let k = local_key(&pm);
            let entry = rest.entry(k).or_insert_with(Rational::zero);
            *entry -= &t * gc;
            if entry.is_zero() {
                rest.remove(&k);
            }
        }
        quotient.push((shift, t));
    }
    let q_bound = bound - g_order;
    if inputs_exact && !dropped {
        Ok(LocalDivision::Exact(Series::from_terms(quotient, super::Precision::Exact)))
    } else {
        Ok(LocalDivision::UpTo(Series::from_terms(quotient, super::Precision::Degree(q_bound))))
    }
}

/// `q` with `f = q g`, exact or to `min(prec f, prec g) - ord g`.
pub fn divide_exact(f: &Series, g: &Series, cap: u32) -> Result<Series, SeriesError> {
    match local_division(f, g, cap)? {
        LocalDivision::Exact(q) | LocalDivision::UpTo(q) => Ok(q),
        LocalDivision::NotDivisible { monomial, .. } => Err(SeriesError::NotDivisible { monomial }),
    }
}

/// Division of exact polynomials using the graded order with the largest
/// monomial leading. `Some(q)` iff `g` divides `f` in the polynomial ring,
/// which implies divisibility of the series.
pub fn polynomial_divide(f: &Series, g: &Series) -> Option<Series> {
    if !f.is_exact() || !g.is_exact() {
        return None;
    }
    let (lead, lead_coeff) = g.terms().max_by_key(|(m, _)| local_key(m)).map(|(m, c)| (*m, c.clone()))?;
    let mut rest: BTreeMap<Key, Rational> = f.terms().map(|(m, c)| (local_key(m), c.clone())).collect();
    let mut quotient: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((key, c)) = rest.pop_last() {
        let m = key_monomial(&key);
        if (0..3).any(|v| m[v] < lead[v]) {
            return None;
        }
        let shift = [m[0] - lead[0], m[1] - lead[1], m[2] - lead[2]];
        let t = &c / &lead_coeff;
        for (gm, gc) in g.terms() {
            let pm = [gm[0] + shift[0], gm[1] + shift[1], gm[2] + shift[2]];
            if pm == m {
                continue;
            }
            let k = local_key(&pm);
            let entry = rest.entry(k).or_insert_with(Rational::zero);
            *entry -= &t * gc;
            if entry.is_zero() {
                rest.remove(&k);
            }
        }
        quotient.push((shift, t));
    }
    Some(Series::from_terms(quotient, super::Precision::Exact))
}

#[cfg(test)]
mod tests {
    use super::super::{rat, Precision, X, Y};
    use super::*;

    fn x() -> Series {
        Series::var(X)
    }
    fn y() -> Series {
        Series::var(Y)
    }

    #[test]
    fn strips_exceptional_power() {
        let f = &(&x().pow(2) * &y().pow(2)) - &x().pow(3);
        let q = divide_exact(&f, &x().pow(2), 24).unwrap();
        assert_eq!(q, &y().pow(2) - &x());
        assert!(q.is_exact());
    }

    #[test]
    fn unit_divisor_identity() {
        let f = &y().pow(3) + &x();
        assert_eq!(divide_exact(&f, &Series::one(), 24).unwrap(), f);
    }

    #[test]
    fn square_of_cusp() {
        let g = &y().pow(2) - &x().pow(3);
        let f = g.pow(2);
        assert_eq!(divide_exact(&f, &g, 24).unwrap(), g);
    }

    #[test]
    fn non_terminating_quotient_is_truncated() {
        // X = (X + X^2) / (1 + X)
        let g = &x() + &x().pow(2);
        let q = divide_exact(&x(), &g, 6).unwrap();
        assert_eq!(q.precision(), Precision::Degree(6));
        let expected = Series::from_terms((0..6).map(|k| ([k, 0, 0], rat(if k % 2 == 0 { 1 } else { -1 }))), Precision::Degree(6));
        assert_eq!(q, expected);
    }

    #[test]
    fn polynomial_division() {
        let g = &y().pow(2) - &x().pow(3);
        assert_eq!(polynomial_divide(&g.pow(3), &g), Some(g.pow(2)));
        assert_eq!(polynomial_divide(&x().pow(2), &(&x() + &x().pow(2))), None);
    }

    #[test]
    fn obstruction_reported() {
        let res = local_division(&x().pow(3), &y().pow(2), 24).unwrap();
        assert_eq!(res, LocalDivision::NotDivisible { monomial: [3, 0, 0], coefficient: rat(1) });
        assert!(matches!(divide_exact(&x(), &x().pow(2), 10), Err(SeriesError::NotDivisible { .. })));
    }
}
