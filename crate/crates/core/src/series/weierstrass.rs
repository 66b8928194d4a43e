//! Weierstrass division and preparation with respect to one variable.
//!
//! Let `v` be the distinguished variable and `h` be `v`-regular of order `d`,
//! i.e. `h(0, .., v, .., 0)` has order exactly `d`. The computation runs on
//! the weighted filtration in which `v` has weight 1 and every other
//! variable weight `d`. In that filtration `v^d` leads `h`, so quotient and
//! remainder modulo a weight bound `W` are determined by the data modulo
//! `W`. Results are converted back to total-degree precision at the end.
//!
//! Preparation of a series whose `v`-order equals its total order skips the
//! filtration and lifts one homogeneous degree at a time.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{invert_unit, Monomial, Precision, Rational, Series, SeriesError};

type Terms = BTreeMap<Monomial, Rational>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassDivisionResult {
    pub quotient: Series,
    /// `remainder_coeffs[j]` is the coefficient of `v^j`, a series free of `v`.
    pub remainder_coeffs: Vec<Series>,
}

impl WeierstrassDivisionResult {
    pub fn is_exact(&self) -> bool {
        self.quotient.is_exact() && self.remainder_coeffs.iter().all(Series::is_exact)
    }

    pub fn remainder_vanishes(&self) -> bool {
        self.remainder_coeffs.iter().all(Series::is_zero)
    }

    /// Smallest surviving remainder monomial, already multiplied by `v^j`.
    pub fn first_obstruction(&self, var: usize) -> Option<(Monomial, Rational)> {
        self.remainder_coeffs
            .iter()
            .enumerate()
            .flat_map(|(j, s)| {
                s.terms().map(move |(m, c)| {
                    let mut m2 = *m;
                    m2[var] += j as u32;
                    (m2, c.clone())
                })
            })
            .min_by_key(|(m, _)| super::local_key(m))
    }

    /// `sum_j remainder_coeffs[j] * v^j`.
    pub fn remainder(&self, var: usize) -> Series {
        let mut out = Series::zero();
        for (j, s) in self.remainder_coeffs.iter().enumerate() {
            out = out.add_series(&s.multiply_by_power(var, j as u32));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preparation {
    pub unit: Series,
    /// `v^d + c_{d-1} v^{d-1} + ... + c_0` with every `c_j` a non-unit.
    pub distinguished: Series,
    pub degree: u32,
}

pub(crate) fn regular_order(h: &Series, var: usize) -> Option<u32> {
    h.terms()
        .filter(|(m, _)| (0..3).all(|w| w == var || m[w] == 0))
        .map(|(m, _)| m[var])
        .min()
}

struct Weights {
    var: usize,
    d: u32,
}

impl Weights {
    fn weight(&self, m: &Monomial) -> u32 {
        let others: u32 = (0..3).filter(|&w| w != self.var).map(|w| m[w]).sum();
        self.d * others + m[self.var]
    }

    fn mul(&self, a: &Terms, b: &Terms, cap: u32, lossy: &mut bool) -> Terms {
        let mut out = Terms::new();
        for (ma, ca) in a {
            let wa = self.weight(ma);
            if wa >= cap {
                *lossy = true;
                continue;
            }
            for (mb, cb) in b {
                let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]];
                if wa + self.weight(mb) >= cap {
                    *lossy = true;
                    continue;
                }
                *out.entry(m).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Inverse of a unit modulo weight `cap`.
    fn invert(&self, e: &Terms, cap: u32, lossy: &mut bool) -> Terms {
        let e0 = e[&[0, 0, 0]].clone();
        let inv0 = Rational::one() / &e0;
        let step: Terms = e
            .iter()
            .filter(|(m, _)| **m != [0, 0, 0])
            .map(|(m, c)| (*m, -(c * &inv0)))
            .collect();
        let mut term: Terms = Terms::new();
        term.insert([0, 0, 0], inv0);
        let mut acc = term.clone();
        for _ in 0..=cap {
            term = self.mul(&term, &step, cap, lossy);
            if term.is_empty() {
                break;
            }
            add_into(&mut acc, &term);
        }
        acc
    }
}

fn add_into(acc: &mut Terms, other: &Terms) {
    for (m, c) in other {
        let entry = acc.entry(*m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            acc.remove(m);
        }
    }
}

/// `f = q h + sum_{j<d} sigma_j v^j` for `h` regular in `var`.
pub fn weierstrass_divide_in(
    f: &Series,
    h: &Series,
    var: usize,
    target: u32,
) -> Result<WeierstrassDivisionResult, SeriesError> {
    let d = regular_order(h, var).ok_or(SeriesError::NotRegular(var))?;
    if d == 0 {
        let inv = invert_unit(h, target)?;
        let quotient = f.mul_series(&inv);
        let quotient = if quotient.is_exact() { quotient } else { quotient.truncate(target) };
        return Ok(WeierstrassDivisionResult { quotient, remainder_coeffs: Vec::new() });
    }
    let weights = Weights { var, d };
    let both_exact = f.is_exact() && h.is_exact();
    let cap = match f.precision().min(h.precision()).bound() {
        Some(p) => p,
        None => d * (target + 1),
    };
    let mut lossy = !both_exact;

    let mut low_part = Terms::new();
    let mut leading = Terms::new();
    for (m, c) in h.terms() {
        if m[var] < d {
            low_part.insert(*m, -c.clone());
        } else {
            let mut m2 = *m;
            m2[var] -= d;
            leading.insert(m2, c.clone());
        }
    }
    let leading_inv = if leading.len() == 1 {
        let mut t = Terms::new();
        t.insert([0, 0, 0], Rational::one() / &leading[&[0, 0, 0]]);
        t
    } else {
        weights.invert(&leading, cap.saturating_sub(d), &mut lossy)
    };

    let mut pending = Terms::new();
    for (m, c) in f.terms() {
        if weights.weight(m) < cap {
            pending.insert(*m, c.clone());
        } else {
            lossy = true;
        }
    }
    let mut quotient = Terms::new();
    let mut remainder = Terms::new();
    let max_iter = cap + 2;
    let mut iter = 0;
    while !pending.is_empty() {
        if iter > max_iter {
            return Err(SeriesError::NoConvergence(max_iter));
        }
        iter += 1;
        let mut high = Terms::new();
        for (m, c) in std::mem::take(&mut pending) {
            if m[var] < d {
                let entry = remainder.entry(m).or_insert_with(Rational::zero);
                *entry += c;
                if entry.is_zero() {
                    remainder.remove(&m);
                }
            } else {
                let mut m2 = m;
                m2[var] -= d;
                high.insert(m2, c);
            }
        }
        if high.is_empty() {
            break;
        }
        let t = weights.mul(&high, &leading_inv, cap.saturating_sub(d), &mut lossy);
        add_into(&mut quotient, &t);
        // pending <- f - q h restricted to what is left: -t * (low part of h)
        pending = weights.mul(&t, &low_part, cap, &mut lossy);
    }

    let (q_prec, sigma_prec): (Precision, Box<dyn Fn(u32) -> Precision>) = if both_exact && !lossy {
        (Precision::Exact, Box::new(|_| Precision::Exact))
    } else {
        let q_bound = if cap >= d { (cap - 1) / d } else { 0 };
        let sigma = move |j: u32| Precision::Degree(((cap.saturating_sub(j)) + d - 1) / d).min(Precision::Degree(target));
        (Precision::Degree(q_bound.min(target)), Box::new(sigma))
    };
    let quotient = Series::from_terms(quotient, q_prec);
    let remainder_coeffs = (0..d)
        .map(|j| {
            let terms = remainder.iter().filter(|(m, _)| m[var] == j).map(|(m, c)| {
                let mut m2 = *m;
                m2[var] = 0;
                (m2, c.clone())
            });
            Series::from_terms(terms, sigma_prec(j))
        })
        .collect();
    Ok(WeierstrassDivisionResult { quotient, remainder_coeffs })
}

/// Weierstrass division with respect to `Y`.
pub fn weierstrass_divide(f: &Series, h: &Series, target: u32) -> Result<WeierstrassDivisionResult, SeriesError> {
    weierstrass_divide_in(f, h, super::Y, target)
}

/// `f = unit * distinguished`, obtained by dividing `v^d` by `f`.
pub fn weierstrass_prepare(f: &Series, var: usize, target: u32) -> Result<Preparation, SeriesError> {
    let d = regular_order(f, var).ok_or(SeriesError::NotRegular(var))?;
    if d == 0 {
        return Ok(Preparation { unit: f.clone(), distinguished: Series::one(), degree: 0 });
    }
    if f.order().finite() == Some(d) {
        return Ok(prepare_by_degree(f, var, d, target));
    }
    prepare_weighted(f, var, d, target)
}

fn prepare_weighted(f: &Series, var: usize, d: u32, target: u32) -> Result<Preparation, SeriesError> {
    let mut pure = [0u32; 3];
    pure[var] = d;
    let leading = Series::monomial(Rational::one(), pure);
    let div = weierstrass_divide_in(&leading, f, var, target)?;
    let unit = invert_unit(&div.quotient, target)?;
    let unit = if unit.is_exact() { unit } else { unit.truncate(target) };
    let mut distinguished = leading;
    let mut precision = Precision::Exact;
    for (j, sigma) in div.remainder_coeffs.iter().enumerate() {
        let shifted = sigma.multiply_by_power(var, j as u32);
        precision = precision.min(shifted.precision());
        distinguished = distinguished.sub_series(&shifted.with_precision(Precision::Exact));
    }
    if !precision.is_exact() {
        precision = precision.min(Precision::Degree(target));
    }
    let distinguished = distinguished.with_precision(precision);
    Ok(Preparation { unit, distinguished, degree: d })
}

fn total(m: &Monomial) -> u32 {
    m[0] + m[1] + m[2]
}

/// Preparation when the `var`-order equals the total order `d`. Then the
/// initial form is monic of degree `d` in `var` up to a constant, and
/// `f = u P` is solved one homogeneous degree at a time: each step is an
/// exact division by that initial form.
fn prepare_by_degree(f: &Series, var: usize, d: u32, target: u32) -> Preparation {
    let (p_bound, exact_input) = match f.precision().bound() {
        Some(p) => (p.min(target + d), false),
        None => (target + d, true),
    };
    let mut parts: Vec<Terms> = vec![Terms::new(); p_bound as usize];
    for (m, c) in f.terms() {
        let k = total(m);
        if k < p_bound {
            parts[k as usize].insert(*m, c.clone());
        }
    }
    let mut pure = [0u32; 3];
    pure[var] = d;
    let u0 = parts[d as usize][&pure].clone();
    let inv0 = Rational::one() / &u0;
    let lead: Terms = parts[d as usize].iter().map(|(m, c)| (*m, c * &inv0)).collect();

    // unit[i] has degree i, dist[k] has degree k
    let mut unit: Vec<Terms> = vec![Terms::new(); p_bound.saturating_sub(d) as usize];
    let mut dist: Vec<Terms> = vec![Terms::new(); p_bound as usize];
    unit[0].insert([0, 0, 0], u0);
    dist[d as usize] = lead.clone();
    for k in d + 1..p_bound {
        let mut rest = parts[k as usize].clone();
        for i in 1..k - d {
            let (ui, pj) = (&unit[i as usize], &dist[(k - i) as usize]);
            for (ma, ca) in ui {
                for (mb, cb) in pj {
                    let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]];
                    *rest.entry(m).or_insert_with(Rational::zero) -= ca * cb;
                }
            }
        }
        rest.retain(|_, c| !c.is_zero());
        let (q, r) = divide_monic(rest, &lead, var, d);
        unit[(k - d) as usize] = q;
        dist[k as usize] = r.into_iter().map(|(m, c)| (m, c * &inv0)).collect();
    }

    let unit_terms = unit.into_iter().flatten();
    let dist_terms = dist.into_iter().take(target.min(p_bound) as usize).flatten();
    let unit = Series::from_terms(unit_terms, Precision::Exact);
    let dist = Series::from_terms(dist_terms, Precision::Exact);
    let top = |s: &Series| s.terms().map(|(m, _)| total(m)).max().unwrap_or(0);
    let closes = exact_input && top(&unit) + top(&dist) == top(f) && top(&dist) < target;
    let (unit, dist) = if closes && unit.mul_series(&dist) == *f {
        (unit, dist)
    } else {
        let bound = p_bound.min(target);
        (
            unit.with_precision(Precision::Degree(p_bound - d).min(Precision::Degree(target))),
            dist.with_precision(Precision::Degree(bound)),
        )
    };
    Preparation { unit, distinguished: dist, degree: d }
}

/// Long division of `a` by `b`, monic of degree `d` in `var`; the remainder
/// has `var`-degree below `d`.
fn divide_monic(mut a: Terms, b: &Terms, var: usize, d: u32) -> (Terms, Terms) {
    let mut q = Terms::new();
    loop {
        let top = a.iter().filter(|(m, _)| m[var] >= d).max_by_key(|(m, _)| m[var]).map(|(m, c)| (*m, c.clone()));
        let Some((m, c)) = top else { break };
        let mut mq = m;
        mq[var] -= d;
        for (mb, cb) in b {
            let t = [mq[0] + mb[0], mq[1] + mb[1], mq[2] + mb[2]];
            *a.entry(t).or_insert_with(Rational::zero) -= &c * cb;
        }
        a.retain(|_, c| !c.is_zero());
        *q.entry(mq).or_insert_with(Rational::zero) += c;
    }
    q.retain(|_, c| !c.is_zero());
    (q, a)
}
