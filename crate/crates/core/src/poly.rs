//! Dense univariate polynomials over the rationals, just enough to find
//! rational roots with multiplicity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::series::{format_rational, Rational};

/// Coefficients by ascending degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UPoly(Vec<Rational>);

/// Largest integer whose divisors we are willing to enumerate.
const DIVISOR_LIMIT: u64 = 1 << 40;

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    fn monic(&self) -> UPoly {
        match self.0.last() {
            Some(lead) => UPoly(self.0.iter().map(|c| c / lead).collect()),
            None => UPoly::default(),
        }
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = &d.0[dd];
        let mut rem = self.0.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let t = &rem[top] / lead;
            if !t.is_zero() {
                for (i, c) in d.0.iter().enumerate() {
                    rem[top - dd + i] -= &t * c;
                }
                quot[top - dd] = t;
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UPoly::new(quot), UPoly::new(rem))
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn divide_linear(&self, root: &Rational) -> UPoly {
        let lin = UPoly::new(vec![-root.clone(), Rational::one()]);
        self.div_rem(&lin).0
    }

    /// Rational roots with multiplicity, in ascending order, plus the part
    /// that has no rational roots (constant when everything split).
    pub fn rational_roots(&self) -> RootSplit {
        let mut rest = self.clone();
        let mut roots: Vec<(Rational, u32)> = Vec::new();
        if rest.is_zero() {
            return RootSplit { roots, cofactor: rest };
        }
        let zero = Rational::zero();
        let mut m = 0;
        while rest.0.first().is_some_and(Zero::is_zero) {
            rest.0.remove(0);
            m += 1;
        }
        if m > 0 {
            roots.push((zero, m));
        }
        if rest.degree().unwrap_or(0) > 0 {
            for cand in candidates(&rest) {
                let mut mult = 0;
                while rest.degree().unwrap_or(0) > 0 && rest.eval(&cand).is_zero() {
                    rest = rest.divide_linear(&cand);
                    mult += 1;
                }
                if mult > 0 {
                    roots.push((cand, mult));
                }
                if rest.degree().unwrap_or(0) == 0 {
                    break;
                }
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        RootSplit { roots, cofactor: rest }
    }

    pub fn to_text(&self, var: &str) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let abs = c.abs();
            let body = if mono.is_empty() {
                format_rational(&abs)
            } else if abs.is_one() {
                mono
            } else {
                format!("{}*{}", format_rational(&abs), mono)
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{sign} {body}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSplit {
    pub roots: Vec<(Rational, u32)>,
    pub cofactor: UPoly,
}

impl RootSplit {
    /// True when some factor of degree > 0 has no rational root.
    pub fn has_irrational_part(&self) -> bool {
        self.cofactor.degree().unwrap_or(0) > 0
    }
}

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

/// Candidates `±p/q` from the rational root theorem on the integer-scaled
/// polynomial. Empty when the coefficients are too large to factor.
fn candidates(f: &UPoly) -> Vec<Rational> {
    let denom_lcm = f.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.0.iter().map(|c| (c * Rational::from_integer(denom_lcm.clone())).to_integer()).collect();
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return Vec::new();
    };
    let mut out: Vec<Rational> = Vec::new();
    for p in &ps {
        for q in &qs {
            let r = Rational::new(BigInt::from(*p), BigInt::from(*q));
            out.push(r.clone());
            out.push(-r);
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rat, ratio};

    fn p(cs: &[i64]) -> UPoly {
        UPoly::new(cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn roots_with_multiplicity() {
        // (t - 1)^2 (2t + 1) t = 2t^4 - 3t^3 + 0t^2 + t
        let f = p(&[0, 1, 0, -3, 2]);
        let split = f.rational_roots();
        assert_eq!(split.roots, vec![(ratio(-1, 2), 1), (rat(0), 1), (rat(1), 2)]);
        assert!(!split.has_irrational_part());
    }

    #[test]
    fn irrational_cofactor() {
        let f = p(&[-2, 0, 1]).div_rem(&p(&[1])).0;
        let split = f.rational_roots();
        assert!(split.roots.is_empty());
        assert!(split.has_irrational_part());
        assert_eq!(split.cofactor.to_text("t"), "t^2 - 2");
    }

    #[test]
    fn gcd_and_derivative() {
        let f = p(&[1, -2, 1]);
        assert_eq!(f.derivative(), p(&[-2, 2]));
        assert_eq!(f.gcd(&f.derivative()), p(&[-1, 1]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[-1, 1])), p(&[1]));
    }
}
