//! Quadratic and monoidal transforms, in one affine chart at a time.

mod diagram;
mod inverse;

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

pub use diagram::induced_chart_map;
pub use inverse::{invert_strict_transform, StrictTransformInverse};

use crate::error::{Error, Result};
use crate::locus::{is_permitted_axis, CurveIdeal};
use crate::series::{format_rational, Order, Rational, Series, X, Y, Z};
use crate::surface::WeierstrassSurface;
use crate::Config;

const NAMES: [&str; 3] = ["X", "Y", "Z"];

/// A point `(a:b:c)` of the exceptional plane, scaled so that the
/// privileged coordinate is one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Direction {
    coords: [Rational; 3],
    privileged: usize,
}

impl Direction {
    /// Privileges the first nonzero coordinate.
    pub fn new(coords: [Rational; 3]) -> Result<Self> {
        let p = coords
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidDirection("all coordinates are zero".into()))?;
        Self::with_privileged(coords, p)
    }

    pub fn with_privileged(coords: [Rational; 3], privileged: usize) -> Result<Self> {
        if privileged > 2 {
            return Err(Error::InvalidDirection(format!("no coordinate {privileged}")));
        }
        if coords[privileged].is_zero() {
            return Err(Error::InvalidDirection(format!("privileged coordinate {} is zero", NAMES[privileged])));
        }
        let scale = coords[privileged].clone();
        Ok(Direction { coords: coords.map(|c| c / &scale), privileged })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new([Rational::from_integer(a.into()), Rational::from_integer(b.into()), Rational::from_integer(c.into())])
    }

    pub fn coords(&self) -> &[Rational; 3] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    pub fn privileged(&self) -> usize {
        self.privileged
    }

    pub fn privileged_name(&self) -> &'static str {
        NAMES[self.privileged]
    }

    /// Whether a homogeneous form vanishes here.
    pub fn lies_on(&self, form: &Series) -> bool {
        form.evaluate(&self.coords).is_some_and(|v| v.is_zero())
    }

    pub fn swapped_xy(&self) -> Direction {
        let [a, b, c] = self.coords.clone();
        let p = match self.privileged {
            X => Y,
            Y => X,
            z => z,
        };
        Direction { coords: [b, a, c], privileged: p }
    }

    pub fn to_strings(&self) -> [String; 3] {
        self.coords.clone().map(|c| format_rational(&c))
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.to_strings();
        write!(f, "({a}:{b}:{c})")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChartKind {
    Quadratic,
    Monoidal,
}

impl fmt::Display for ChartKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChartKind::Quadratic => "quadratic",
            ChartKind::Monoidal => "monoidal",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChartDescriptor {
    pub kind: ChartKind,
    pub direction: [String; 3],
    pub privileged: &'static str,
    pub center: Option<String>,
}

impl ChartDescriptor {
    pub fn new(kind: ChartKind, d: &Direction, center: Option<String>) -> Self {
        ChartDescriptor { kind, direction: d.to_strings(), privileged: d.privileged_name(), center }
    }
}

/// Images of `X, Y, Z` in the quadratic chart of `d`: the privileged
/// variable `E` is kept and every other `V` goes to `E (V + d_V)`.
pub fn quadratic_images(d: &Direction) -> [Series; 3] {
    let e = d.privileged();
    std::array::from_fn(|v| {
        if v == e {
            Series::var(e)
        } else {
            Series::var(e).mul_series(&Series::var(v).add_series(&Series::constant(d.coord(v).clone())))
        }
    })
}

fn strict_transform(f: &Series, images: &[Series; 3], exceptional: usize, power: u32) -> Result<Series> {
    let pulled = f.substitute(images)?;
    let out = pulled
        .divide_by_power(exceptional, power)
        .map_err(|_| Error::Internal(format!("chart image not divisible by {}^{power}", NAMES[exceptional])))?;
    if out.has_constant_term() {
        return Err(Error::UnitTransform);
    }
    Ok(out)
}

/// `F(chart) / E^n` before any re-normalization.
pub fn quadratic_chart_equation(f: &Series, d: &Direction) -> Result<Series> {
    let n = match f.order() {
        Order::Finite(n) => n,
        _ => return Err(crate::series::SeriesError::IndeterminateInitialForm.into()),
    };
    let cone = f.initial_form()?;
    if !d.lies_on(&cone) {
        return Err(Error::UnitTransform);
    }
    strict_transform(f, &quadratic_images(d), d.privileged(), n)
}

pub fn quadratic_transform(s: &WeierstrassSurface, d: &Direction, cfg: &Config) -> Result<WeierstrassSurface> {
    let raw = quadratic_chart_equation(&s.equation(), d)?;
    Ok(WeierstrassSurface::from_equation_at(&raw, s.level() + 1, cfg)?
        .with_provenance(format!("quadratic transform at {d}")))
}

/// Monoidal directions are `(1:0:g)`.
fn monoidal_slope(d: &Direction) -> Result<Rational> {
    if !d.coord(Y).is_zero() {
        return Err(Error::InvalidDirection(format!("{d} has a nonzero Y coordinate")));
    }
    if d.coord(X).is_zero() {
        return Err(Error::InvalidDirection(format!("{d} has a zero X coordinate")));
    }
    Ok(d.coord(Z) / d.coord(X))
}

pub fn monoidal_images(slope: &Rational) -> [Series; 3] {
    let z = Series::var(X).mul_series(&Series::var(Z).add_series(&Series::constant(slope.clone())));
    [Series::var(X), Series::var(Y), z]
}

/// `F(X, Y, X (Z + g)) / X^n` for the center `(Z, X)`.
pub fn monoidal_chart_equation(s: &WeierstrassSurface, d: &Direction) -> Result<Series> {
    if !is_permitted_axis(s) {
        return Err(Error::NotPermitted);
    }
    let slope = monoidal_slope(d)?;
    strict_transform(&s.equation(), &monoidal_images(&slope), X, s.multiplicity())
}

pub fn monoidal_transform(s: &WeierstrassSurface, d: &Direction, cfg: &Config) -> Result<WeierstrassSurface> {
    let raw = monoidal_chart_equation(s, d)?;
    Ok(WeierstrassSurface::from_equation_at(&raw, s.level() + 1, cfg)?
        .with_provenance(format!("monoidal transform with center (Z, X) at {d}")))
}

fn curve_result(g: Series) -> Result<CurveIdeal> {
    if g.has_constant_term() || g.is_exact_zero() {
        return Err(Error::CurveMissesPoint);
    }
    CurveIdeal::new(g)
}

/// `(Z1, pi(G) / E^{ord G})`.
pub fn curve_quadratic_transform(q: &CurveIdeal, d: &Direction) -> Result<CurveIdeal> {
    if d.privileged() == Z || !d.coord(Z).is_zero() {
        return Err(Error::CurveMissesPoint);
    }
    let order = q.g().order().finite().ok_or_else(|| Error::InvalidCurve("generator is zero".into()))?;
    let e = d.privileged();
    let pulled = q.g().substitute(&quadratic_images(d))?;
    let g = pulled
        .divide_by_power(e, order)
        .map_err(|_| Error::Internal("curve image not divisible by its order".into()))?;
    curve_result(g)
}

/// `(Z1, G / X^m)` with `m` the `X`-adic order of `G`; the chart fixes `X, Y`.
pub fn curve_monoidal_transform(q: &CurveIdeal, d: &Direction) -> Result<CurveIdeal> {
    let slope = monoidal_slope(d)?;
    if !slope.is_zero() {
        return Err(Error::CurveMissesPoint);
    }
    let m = q.g().adic_order(X);
    let g = q.g().divide_by_power(X, m)?;
    curve_result(g)
}

/// The renaming `X -> X1, Y -> Y1, Z -> Z1`.
pub fn nu(s: &WeierstrassSurface) -> WeierstrassSurface {
    s.clone().with_level(s.level() + 1)
}

pub fn nu_inverse(s: &WeierstrassSurface) -> WeierstrassSurface {
    s.clone().with_level(s.level().saturating_sub(1))
}

/// Chart label like `quadratic (1:0:0)`.
pub fn chart_label(kind: ChartKind, d: &Direction) -> String {
    format!("{kind} {d}")
}
