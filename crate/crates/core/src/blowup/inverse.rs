//! Recovering a curve `H` whose strict transform is `X1 + G(Y1)`.
//!
//! Write `G = sum_{e >= l} alpha_e Y^e`, `H = sum beta_ij X^i Y^j` and
//! `u = sum gamma_ab X^a Y^b`. Matching `H(X1, X1 Y1) / X1^l = u (X1 + G)`
//! monomial by monomial, the coefficient of `X1^a Y1^b` on the right is
//! `coef(a, b) = gamma_{a-1,b} + sum_e alpha_e gamma_{a,b-e}`. For `b <= a + l`
//! it defines `beta_{a+l-b, b}`; for `b > a + l` it must vanish, which fixes
//! `gamma_{a, b-l}`. The remaining `gamma_{a,c}` with `c <= a` are free and
//! set to zero, except `gamma_00 = 1`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{Precision, Rational, Series, X, Y, Z};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictTransformInverse {
    pub h: Series,
    pub u: Series,
    pub lambda: u32,
    /// Nonzero `gamma_{a,c}` with `a + c < precision`.
    pub gamma_table: BTreeMap<(u32, u32), Rational>,
    /// Nonzero `beta_{i,j}` with `i + j < precision`.
    pub beta_table: BTreeMap<(u32, u32), Rational>,
    pub precision: u32,
}

impl StrictTransformInverse {
    pub fn beta(&self, i: u32, j: u32) -> Rational {
        self.beta_table.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }
}

struct Gammas {
    rows: Vec<Vec<Rational>>,
}

impl Gammas {
    fn get(&self, a: i64, c: i64) -> Rational {
        if a < 0 || c < 0 {
            return Rational::zero();
        }
        self.rows
            .get(a as usize)
            .and_then(|r| r.get(c as usize))
            .cloned()
            .expect("gamma requested outside the computed window")
    }
}

/// Solves for `H` and `u` to total degree `precision`.
pub fn invert_strict_transform(g: &Series, precision: u32) -> Result<StrictTransformInverse> {
    if g.uses_var(X) || g.uses_var(Z) {
        return Err(Error::InvalidCurve("G must be a series in Y alone".into()));
    }
    let lambda = g.order().finite().ok_or_else(|| Error::InvalidCurve("G is zero".into()))?;
    if lambda == 0 {
        return Err(Error::InvalidCurve("G is a unit".into()));
    }
    if lambda < 2 {
        return Err(Error::Transversal);
    }
    let p = precision.max(lambda + 2);
    let l = lambda as i64;
    let alpha: BTreeMap<i64, Rational> = g.terms().map(|(m, c)| (m[Y] as i64, c.clone())).collect();
    let alpha_l = alpha[&l].clone();
    let last_row = p as i64 - 1;
    let top = p as i64 - l - 1;

    // columns needed per row, filled from the last row upwards
    let mut need = vec![0i64; p as usize];
    for a in (0..=last_row).rev() {
        let mut c = last_row - a;
        if a <= top {
            c = c.max(a);
        }
        if a < last_row {
            c = c.max(need[a as usize + 1] + l);
            if a + 1 <= top {
                c = c.max(a + 1 + l);
            }
        }
        need[a as usize] = c;
    }

    let mut gam = Gammas { rows: Vec::with_capacity(p as usize) };
    for a in 0..=last_row {
        let mut row: Vec<Rational> = Vec::with_capacity(need[a as usize] as usize + 1);
        for c in 0..=need[a as usize] {
            let value = if a == 0 && c == 0 {
                Rational::one()
            } else if c <= a {
                Rational::zero()
            } else {
                let mut acc = gam.get(a - 1, c + l);
                for (e, ae) in alpha.range(l + 1..=c + l) {
                    acc += ae * &row[(c + l - e) as usize];
                }
                -acc / &alpha_l
            };
            row.push(value);
        }
        gam.rows.push(row);
    }

    let coef = |a: i64, b: i64| -> Rational {
        let mut acc = gam.get(a - 1, b);
        for (e, ae) in alpha.range(..=b) {
            acc += ae * gam.get(a, b - e);
        }
        acc
    };

    let mut beta_table = BTreeMap::new();
    for a in 0..=top {
        for b in 0..=a + l {
            let c = coef(a, b);
            if !c.is_zero() {
                beta_table.insert(((a + l - b) as u32, b as u32), c);
            }
        }
    }
    let mut gamma_table = BTreeMap::new();
    for a in 0..=last_row {
        for c in 0..=(last_row - a) {
            let v = gam.get(a, c);
            if !v.is_zero() {
                gamma_table.insert((a as u32, c as u32), v);
            }
        }
    }

    let exact = g.is_exact() && g.num_terms() == 1;
    let prec = if exact { Precision::Exact } else { Precision::Degree(p) };
    let h = Series::from_terms(beta_table.iter().map(|(&(i, j), c)| ([i, j, 0], c.clone())), prec);
    let u = Series::from_terms(gamma_table.iter().map(|(&(a, c), v)| ([a, c, 0], v.clone())), prec);
    let out = StrictTransformInverse { h, u, lambda, gamma_table, beta_table, precision: p };
    verify(&out, g, &alpha_l)?;
    Ok(out)
}

fn verify(inv: &StrictTransformInverse, g: &Series, alpha_l: &Rational) -> Result<()> {
    let l = inv.lambda;
    let fail = |what: &str| Err(Error::Internal(format!("inverse strict transform: {what}")));
    if inv.h.order().finite() != Some(l) {
        return fail("ord(H) differs from ord(G)");
    }
    if inv.h.coeff(&[0, l, 0]).is_zero() {
        return fail("H is not Y-regular of order lambda");
    }
    if inv.u.constant_term().is_zero() {
        return fail("u is not a unit");
    }
    let images = [Series::var(X), Series::var(X).mul_series(&Series::var(Y)), Series::var(Z)];
    let left = inv.h.substitute(&images)?;
    let right = inv
        .u
        .mul_series(&Series::var(X).add_series(g))
        .multiply_by_power(X, l);
    if !left.agrees_with(&right) {
        return fail("H(X1, X1 Y1) != X1^lambda u (X1 + G(Y1))");
    }
    let checks = [
        (inv.beta(l, 0).is_zero(), "beta_{lambda,0} != 0"),
        (inv.beta(l - 1, 1).is_zero(), "beta_{lambda-1,1} != 0"),
        (inv.beta(l + 1, 0).is_one(), "beta_{lambda+1,0} != 1"),
        (inv.beta(0, l) == *alpha_l, "beta_{0,lambda} != alpha_lambda"),
    ];
    for (ok, what) in checks {
        if !ok {
            return fail(what);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expression;
    use crate::series::{rat, Precision};

    fn p(t: &str) -> Series {
        parse_expression(t).unwrap()
    }

    #[test]
    fn pure_powers() {
        let inv = invert_strict_transform(&p("-Y^2"), 16).unwrap();
        assert_eq!(inv.h, p("X^3 - Y^2"));
        assert_eq!(inv.u, Series::one());
        let inv = invert_strict_transform(&p("Y^2"), 16).unwrap();
        assert_eq!(inv.h, p("X^3 + Y^2"));
    }

    #[test]
    fn two_terms() {
        let inv = invert_strict_transform(&p("Y^2 + Y^3"), 4).unwrap();
        assert_eq!(inv.h.precision(), Precision::Degree(4));
        assert!(inv.h.agrees_with(&p("Y^2 - X^2*Y + X*Y^2 + X^3 - Y^3")));
        assert!(inv.u.truncate(3).agrees_with(&p("1 - Y + Y^2 - X*Y^2").truncate(3)));
        assert_eq!(inv.gamma_table[&(0, 1)], rat(-1));
        assert_eq!(inv.gamma_table[&(0, 2)], rat(1));
        assert_eq!(inv.beta(0, 3), rat(-1));
    }

    #[test]
    fn errors() {
        assert_eq!(invert_strict_transform(&p("Y + Y^2"), 8), Err(Error::Transversal));
        assert!(invert_strict_transform(&p("X*Y^2"), 8).is_err());
    }
}
