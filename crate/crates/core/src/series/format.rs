//! Canonical text form of a series.
//!
//! Terms are printed by ascending total degree; inside one degree the larger
//! `Z` exponent comes first, then the larger `Y` exponent. A truncated series
//! ends with `O(p)`, meaning every term of total degree `>= p` is unknown.

use std::cmp::Reverse;
use std::fmt;

use num_traits::{One, Signed};

use super::{total_degree, Monomial, Precision, Rational, Series};

pub fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn display_key(m: &Monomial) -> (u32, Reverse<u32>, Reverse<u32>) {
    (total_degree(m), Reverse(m[2]), Reverse(m[1]))
}

pub(crate) fn var_name(var: usize, level: u32) -> String {
    let base = ["X", "Y", "Z"][var];
    if level == 0 {
        base.to_string()
    } else {
        format!("{base}{level}")
    }
}

pub struct SeriesDisplay<'a> {
    series: &'a Series,
    level: u32,
}

impl<'a> SeriesDisplay<'a> {
    pub(crate) fn new(series: &'a Series, level: u32) -> Self {
        SeriesDisplay { series, level }
    }
}

fn monomial_text(m: &Monomial, level: u32) -> String {
    let mut parts = Vec::new();
    for (var, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(var_name(var, level)),
            _ => parts.push(format!("{}^{}", var_name(var, level), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for SeriesDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(&Monomial, &Rational)> = self.series.terms().collect();
        terms.sort_by_key(|(m, _)| display_key(m));
        let mut first = true;
        for (m, c) in terms {
            let negative = c.is_negative();
            let abs = c.abs();
            let body = if *m == [0, 0, 0] {
                format_rational(&abs)
            } else if abs.is_one() {
                monomial_text(m, self.level)
            } else {
                format!("{}*{}", format_rational(&abs), monomial_text(m, self.level))
            };
            match (first, negative) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        match self.series.precision() {
            Precision::Exact => {
                if first {
                    write!(f, "0")?;
                }
            }
            Precision::Degree(p) => {
                if first {
                    write!(f, "O({p})")?;
                } else {
                    write!(f, " + O({p})")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{ratio, X, Y, Z};
    use super::*;

    #[test]
    fn canonical_order() {
        let x = Series::var(X);
        let y = Series::var(Y);
        let z = Series::var(Z);
        let f = &z.pow(2) - &(&x.pow(2) * &y);
        assert_eq!(f.to_string(), "Z^2 - X^2*Y");
        let g = &y - &x.pow(2);
        assert_eq!(g.to_string(), "Y - X^2");
        let h = &Series::constant(ratio(-1, 2)) + &z.scale(&ratio(3, 4));
        assert_eq!(h.to_string(), "-1/2 + 3/4*Z");
        assert_eq!(g.display(1).to_string(), "Y1 - X1^2");
        assert_eq!(x.truncate(3).to_string(), "X + O(3)");
        assert_eq!(Series::zero().to_string(), "0");
    }
}
