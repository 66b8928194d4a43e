//! Truncated multivariate power series over the rationals.
//!
//! A [`Series`] lives in `Q[[X, Y, Z]]`. Series in fewer variables simply
//! never use the remaining exponent slots. Every value carries a
//! [`Precision`]: either it is exactly the stored polynomial, or all terms of
//! total degree below some bound are known and nothing is known above it.

mod division;
mod format;
mod unit;
mod weierstrass;

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use division::{divide_exact, local_division, polynomial_divide, LocalDivision};
pub use format::{format_rational, SeriesDisplay};
pub use unit::invert_unit;
pub use weierstrass::{
    weierstrass_divide, weierstrass_divide_in, weierstrass_prepare, Preparation,
    WeierstrassDivisionResult,
};

pub type Rational = BigRational;

/// Exponent vector `[x, y, z]`.
pub type Monomial = [u32; 3];

pub const X: usize = 0;
pub const Y: usize = 1;
pub const Z: usize = 2;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn total_degree(m: &Monomial) -> u32 {
    m[0] + m[1] + m[2]
}

fn add_monomials(a: &Monomial, b: &Monomial) -> Monomial {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Key used by the local division: total degree first, then lexicographic.
pub(crate) fn local_key(m: &Monomial) -> (u32, u32, u32, u32) {
    (total_degree(m), m[0], m[1], m[2])
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("indeterminate initial form")]
    IndeterminateInitialForm,
    #[error("precision violation: {0}")]
    PrecisionViolation(String),
    #[error("not divisible: obstruction at {monomial:?}")]
    NotDivisible { monomial: Monomial },
    #[error("not a unit")]
    NotAUnit,
    #[error("not regular in variable {0}")]
    NotRegular(usize),
    #[error("division by zero series")]
    DivisionByZero,
    #[error("no convergence within {0} iterations")]
    NoConvergence(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Precision {
    Exact,
    /// All terms of total degree `< p` are known.
    Degree(u32),
}

impl Precision {
    pub fn bound(self) -> Option<u32> {
        match self {
            Precision::Exact => None,
            Precision::Degree(p) => Some(p),
        }
    }

    pub fn from_bound(bound: Option<u32>) -> Self {
        bound.map_or(Precision::Exact, Precision::Degree)
    }

    pub fn min(self, other: Precision) -> Precision {
        match (self, other) {
            (Precision::Exact, p) | (p, Precision::Exact) => p,
            (Precision::Degree(a), Precision::Degree(b)) => Precision::Degree(a.min(b)),
        }
    }

    pub fn admits(self, degree: u32) -> bool {
        match self {
            Precision::Exact => true,
            Precision::Degree(p) => degree < p,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Precision::Exact)
    }

    /// Precision after losing `k` degrees (e.g. dividing by a degree-`k` monomial).
    pub fn lowered(self, k: u32) -> Precision {
        match self {
            Precision::Exact => Precision::Exact,
            Precision::Degree(p) => Precision::Degree(p.saturating_sub(k)),
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precision::Exact => write!(f, "exact"),
            Precision::Degree(p) => write!(f, "degree {p}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(u32),
    /// No stored term below the truncation degree.
    AtLeast(u32),
    /// The exact zero series.
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(o) => Some(o),
            _ => None,
        }
    }

    /// A lower bound usable in precision bookkeeping; `None` means infinite.
    pub fn lower_bound(self) -> Option<u32> {
        match self {
            Order::Finite(o) | Order::AtLeast(o) => Some(o),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(o) => write!(f, "{o}"),
            Order::AtLeast(p) => write!(f, "at-least-{p}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    terms: BTreeMap<Monomial, Rational>,
    precision: Precision,
}

impl Default for Series {
    fn default() -> Self {
        Series::zero()
    }
}

impl Series {
    pub fn zero() -> Self {
        Series { terms: BTreeMap::new(), precision: Precision::Exact }
    }

    pub fn one() -> Self {
        Series::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Series::monomial(c, [0, 0, 0])
    }

    pub fn var(index: usize) -> Self {
        let mut m = [0; 3];
        m[index] = 1;
        Series::monomial(Rational::one(), m)
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Series { terms, precision: Precision::Exact }
    }

    /// Builds a series, dropping zero coefficients and anything at or above
    /// the precision bound. Repeated monomials are summed.
    pub fn from_terms<I>(terms: I, precision: Precision) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            if !precision.admits(total_degree(&m)) {
                continue;
            }
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Series { terms: map, precision }
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_exact()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// No stored terms. For a truncated series this says nothing about
    /// degrees at or above the bound.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.is_exact()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&[0, 0, 0])
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.contains_key(&[0, 0, 0])
    }

    pub fn is_unit(&self) -> bool {
        self.has_constant_term()
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m[var] > 0)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(total_degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[var]).max()
    }

    pub fn order(&self) -> Order {
        match self.terms.keys().map(total_degree).min() {
            Some(o) => Order::Finite(o),
            None => match self.precision {
                Precision::Exact => Order::Infinite,
                Precision::Degree(p) => Order::AtLeast(p),
            },
        }
    }

    pub(crate) fn order_lower_bound(&self) -> Option<u32> {
        let stored = self.terms.keys().map(total_degree).min();
        match (stored, self.precision.bound()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) => Some(a),
            (None, b) => b,
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Series {
        Series::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| total_degree(m) == d)
                .map(|(m, c)| (*m, c.clone())),
            Precision::Exact,
        )
    }

    pub fn initial_form(&self) -> Result<Series, SeriesError> {
        match self.order() {
            Order::Finite(o) => Ok(self.homogeneous_part(o)),
            _ => Err(SeriesError::IndeterminateInitialForm),
        }
    }

    pub fn truncate(&self, p: u32) -> Series {
        let precision = self.precision.min(Precision::Degree(p));
        Series::from_terms(self.terms.iter().map(|(m, c)| (*m, c.clone())), precision)
    }

    pub fn truncate_to(&self, precision: Precision) -> Series {
        match precision {
            Precision::Exact => self.clone(),
            Precision::Degree(p) => self.truncate(p),
        }
    }

    /// Forgets everything at or above degree `p` but keeps the flag as-is when
    /// that loses nothing.
    pub fn with_precision(mut self, precision: Precision) -> Series {
        self.precision = precision;
        let prec = self.precision;
        self.terms.retain(|m, _| prec.admits(total_degree(m)));
        self
    }

    pub fn scale(&self, c: &Rational) -> Series {
        if c.is_zero() {
            return Series { terms: BTreeMap::new(), precision: self.precision };
        }
        Series {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
            precision: self.precision,
        }
    }

    pub fn add_series(&self, other: &Series) -> Series {
        let precision = self.precision.min(other.precision);
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in self.terms.iter().chain(other.terms.iter()) {
            if precision.admits(total_degree(m)) {
                *terms.entry(*m).or_insert_with(Rational::zero) += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Series { terms, precision }
    }

    pub fn sub_series(&self, other: &Series) -> Series {
        self.add_series(&other.neg_series())
    }

    pub fn neg_series(&self) -> Series {
        Series {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
            precision: self.precision,
        }
    }

    fn product_precision(&self, other: &Series) -> Precision {
        let mut bound: Option<u32> = None;
        let mut tighten = |b: u32| bound = Some(bound.map_or(b, |x: u32| x.min(b)));
        if let Precision::Degree(p) = self.precision {
            if let Some(o) = other.order_lower_bound() {
                tighten(p.saturating_add(o));
            }
        }
        if let Precision::Degree(p) = other.precision {
            if let Some(o) = self.order_lower_bound() {
                tighten(p.saturating_add(o));
            }
        }
        Precision::from_bound(bound)
    }

    pub fn mul_series(&self, other: &Series) -> Series {
        let precision = self.product_precision(other);
        self.mul_capped(other, precision)
    }

    /// Product keeping only terms admitted by `precision`.
    pub(crate) fn mul_capped(&self, other: &Series, precision: Precision) -> Series {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        let other_min = other.terms.keys().map(total_degree).min().unwrap_or(0);
        for (ma, ca) in &self.terms {
            if !precision.admits(total_degree(ma) + other_min) {
                continue;
            }
            for (mb, cb) in &other.terms {
                let m = add_monomials(ma, mb);
                if precision.admits(total_degree(&m)) {
                    *terms.entry(m).or_insert_with(Rational::zero) += ca * cb;
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Series { terms, precision: self.product_precision(other).min(precision) }
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut result = Series::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_series(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_series(&base);
            }
        }
        result
    }

    /// Composition `self(images[0], images[1], images[2])`.
    ///
    /// Images with a nonzero constant term are refused when `self` is
    /// truncated: the low-degree output would depend on the unknown tail.
    pub fn substitute(&self, images: &[Series; 3]) -> Result<Series, SeriesError> {
        let target = match self.precision {
            Precision::Exact => None,
            Precision::Degree(p) => {
                if images.iter().any(|s| s.has_constant_term()) {
                    return Err(SeriesError::PrecisionViolation(
                        "constant-term substitution into a truncated series".into(),
                    ));
                }
                let min_order = images
                    .iter()
                    .filter_map(|s| s.order_lower_bound())
                    .min()
                    .unwrap_or(u32::MAX)
                    .max(1);
                Some(p.saturating_mul(min_order))
            }
        };
        let cap = Precision::from_bound(target);
        let images: Vec<Series> = images.iter().map(|s| s.truncate_to(cap)).collect();
        let mut powers: HashMap<(usize, u32), Series> = HashMap::new();
        let mut power = |var: usize, e: u32| -> Series {
            if let Some(s) = powers.get(&(var, e)) {
                return s.clone();
            }
            // build up from the largest cached power below e
            let mut k = e;
            while k > 0 && !powers.contains_key(&(var, k)) {
                k -= 1;
            }
            let mut acc = if k == 0 { Series::one() } else { powers[&(var, k)].clone() };
            for j in k + 1..=e {
                acc = acc.mul_series(&images[var]).truncate_to(cap);
                powers.insert((var, j), acc.clone());
            }
            acc
        };
        let mut out = Series { terms: BTreeMap::new(), precision: cap };
        for (m, c) in &self.terms {
            let mut t = Series::constant(c.clone());
            for var in 0..3 {
                if m[var] > 0 {
                    t = t.mul_series(&power(var, m[var])).truncate_to(cap);
                }
            }
            out = out.add_series(&t);
        }
        Ok(out.truncate_to(cap))
    }

    /// Divides by `var^e`. Every stored term must be divisible.
    pub fn divide_by_power(&self, var: usize, e: u32) -> Result<Series, SeriesError> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m[var] < e {
                return Err(SeriesError::NotDivisible { monomial: *m });
            }
            let mut m2 = *m;
            m2[var] -= e;
            terms.insert(m2, c.clone());
        }
        Ok(Series { terms, precision: self.precision.lowered(e) })
    }

    pub fn multiply_by_power(&self, var: usize, e: u32) -> Series {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = *m;
                m2[var] += e;
                (m2, c.clone())
            })
            .collect();
        let precision = match self.precision {
            Precision::Exact => Precision::Exact,
            Precision::Degree(p) => Precision::Degree(p + e),
        };
        Series { terms, precision }
    }

    /// Largest `e` with `var^e` dividing every stored term.
    pub fn adic_order(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m[var]).min().unwrap_or(0)
    }

    /// Coefficient of `var^k`, as a series in the remaining variables.
    pub fn coefficient_of(&self, var: usize, k: u32) -> Series {
        let terms = self.terms.iter().filter(|(m, _)| m[var] == k).map(|(m, c)| {
            let mut m2 = *m;
            m2[var] = 0;
            (m2, c.clone())
        });
        Series::from_terms(terms, self.precision.lowered(k))
    }

    /// Partial derivative with respect to `var`.
    pub fn derivative(&self, var: usize) -> Series {
        let terms = self.terms.iter().filter(|(m, _)| m[var] > 0).map(|(m, c)| {
            let mut m2 = *m;
            m2[var] -= 1;
            (m2, c * Rational::from_integer(m[var].into()))
        });
        Series::from_terms(terms, self.precision.lowered(1))
    }

    /// Exchanges two variables.
    pub fn swap_vars(&self, a: usize, b: usize) -> Series {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut m2 = *m;
            m2.swap(a, b);
            (m2, c.clone())
        });
        Series::from_terms(terms, self.precision)
    }

    /// Exact evaluation of a polynomial; `None` for truncated series.
    pub fn evaluate(&self, point: &[Rational; 3]) -> Option<Rational> {
        if !self.is_exact() {
            return None;
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for var in 0..3 {
                for _ in 0..m[var] {
                    t *= &point[var];
                }
            }
            total += t;
        }
        Some(total)
    }

    /// Equality of the known parts, up to the smaller of the two precisions.
    pub fn agrees_with(&self, other: &Series) -> bool {
        self.sub_series(other).is_zero()
    }

    pub fn display(&self, level: u32) -> SeriesDisplay<'_> {
        SeriesDisplay::new(self, level)
    }
}

impl<'a> Add<&'a Series> for &'a Series {
    type Output = Series;
    fn add(self, rhs: &'a Series) -> Series {
        self.add_series(rhs)
    }
}

impl<'a> Sub<&'a Series> for &'a Series {
    type Output = Series;
    fn sub(self, rhs: &'a Series) -> Series {
        self.sub_series(rhs)
    }
}

impl<'a> Mul<&'a Series> for &'a Series {
    type Output = Series;
    fn mul(self, rhs: &'a Series) -> Series {
        self.mul_series(rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.neg_series()
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(0).fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Series {
        Series::var(X)
    }
    fn y() -> Series {
        Series::var(Y)
    }
    fn z() -> Series {
        Series::var(Z)
    }

    #[test]
    fn order_examples() {
        let f = &(&x().pow(2) * &y()) + &z().pow(3);
        assert_eq!(f.order(), Order::Finite(3));
        assert_eq!(Series::zero().order(), Order::Infinite);
        assert_eq!(Series::constant(rat(7)).order(), Order::Finite(0));
        assert_eq!(Series::zero().with_precision(Precision::Degree(5)).order(), Order::AtLeast(5));
    }

    #[test]
    fn initial_form_examples() {
        let f = &z().pow(2) - &x().pow(3);
        assert_eq!(f.initial_form().unwrap(), z().pow(2));
        let f = &(&z().pow(2) - &x().pow(2)) - &x().pow(3);
        assert_eq!(f.initial_form().unwrap(), &z().pow(2) - &x().pow(2));
        let f = &(&x() + &y()) + &(&x() * &y());
        assert_eq!(f.initial_form().unwrap(), &x() + &y());
        assert_eq!(Series::zero().initial_form(), Err(SeriesError::IndeterminateInitialForm));
    }

    #[test]
    fn substitute_examples() {
        // Y^2 - X^3 under X -> X, Y -> X*Y
        let f = &y().pow(2) - &x().pow(3);
        let g = f.substitute(&[x(), &x() * &y(), z()]).unwrap();
        let expected = &(&x().pow(2) * &y().pow(2)) - &x().pow(3);
        assert_eq!(g, expected);

        // Z -> X*(Z + 1)
        let g = z().substitute(&[x(), y(), &x() * &(&z() + &Series::one())]).unwrap();
        assert_eq!(g, &(&x() * &z()) + &x());

        // X -> X + 3/2 on an exact polynomial
        let t = Series::constant(ratio(3, 2));
        let g = x().substitute(&[&x() + &t, y(), z()]).unwrap();
        assert_eq!(g, &x() + &t);
    }

    #[test]
    fn substitute_refuses_translation_of_truncated() {
        let f = x().truncate(5);
        let err = f.substitute(&[&x() + &Series::one(), y(), z()]).unwrap_err();
        assert!(matches!(err, SeriesError::PrecisionViolation(_)));
    }

    #[test]
    fn truncated_product_precision() {
        let a = (&Series::one() + &x()).truncate(4);
        let b = x().pow(2);
        let p = a.mul_series(&b);
        assert_eq!(p.precision(), Precision::Degree(6));
        let c = (&x() + &y()).truncate(3);
        let q = a.mul_series(&c);
        // min(4 + 1, 3 + 0)
        assert_eq!(q.precision(), Precision::Degree(3));
    }

    #[test]
    fn mixing_exact_and_truncated_is_truncated() {
        let a = x().truncate(4);
        assert_eq!((&a + &y()).precision(), Precision::Degree(4));
        assert!((&x() + &y()).is_exact());
    }

    #[test]
    fn coefficient_extraction() {
        let f = &(&z().pow(2) * &x()) + &(&y() * &z());
        assert_eq!(f.coefficient_of(Z, 2), x());
        assert_eq!(f.coefficient_of(Z, 1), y());
        assert!(f.coefficient_of(Z, 0).is_exact_zero());
    }
}
