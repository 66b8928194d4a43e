//! Equimultiple curves `(Z, G)` of a Weierstrass surface.
//!
//! A curve `(Z, G)` is equimultiple when `G^{n-k}` divides every `a_k`. For
//! smooth `G` this is the usual `F in P^n`; for singular `G` it only shows
//! membership in the symbolic power, and irreducibility of `G` is taken on
//! trust.

use std::fmt;

use num_traits::Zero;

use crate::change::VariableChange;
use crate::error::{Error, Result};
use crate::poly::UPoly;
use crate::series::{
    format_rational, local_division, local_key, polynomial_divide, weierstrass_divide_in, weierstrass_prepare,
    LocalDivision, Monomial, Order, Precision, Rational, Series, X, Y, Z,
};
use crate::surface::WeierstrassSurface;
use crate::Config;

/// The ideal `(Z, g)`, with `g` a series in `X, Y` of order at least one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveIdeal {
    g: Series,
    orientation: Option<usize>,
    smooth: bool,
}

impl CurveIdeal {
    pub fn new(g: Series) -> Result<Self> {
        if g.uses_var(Z) {
            return Err(Error::InvalidCurve("generator must not involve Z".into()));
        }
        let order = match g.order() {
            Order::Finite(o) => o,
            _ => return Err(Error::InvalidCurve("generator is zero".into())),
        };
        if order == 0 {
            return Err(Error::InvalidCurve("generator is a unit".into()));
        }
        let regular = |var: usize| g.terms().any(|(m, _)| (0..3).all(|w| w == var || m[w] == 0));
        let orientation = if regular(Y) {
            Some(Y)
        } else if regular(X) {
            Some(X)
        } else {
            None
        };
        Ok(CurveIdeal { g, orientation, smooth: order == 1 })
    }

    /// `(Z, X)` or `(Z, Y)`.
    pub fn axis(var: usize) -> Self {
        CurveIdeal::new(Series::var(var)).expect("coordinate axis")
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn orientation(&self) -> Option<usize> {
        self.orientation
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    /// Linear coefficients of `g` in `X` and `Y`.
    fn linear(&self) -> (Rational, Rational) {
        (self.g.coeff(&[1, 0, 0]), self.g.coeff(&[0, 1, 0]))
    }

    /// For smooth curves, the monic generator `Y - h(X)` when `g` has a `Y`
    /// term, else `X - h(Y)` with `ord(h) >= 2`.
    pub fn canonical(&self, precision: u32) -> Result<Series> {
        if !self.smooth {
            return Err(Error::NotSmooth);
        }
        let (_, b) = self.linear();
        let var = if b.is_zero() { X } else { Y };
        Ok(weierstrass_prepare(&self.g, var, precision)?.distinguished)
    }

    /// Canonical form for smooth curves, the generator itself otherwise.
    pub fn canonical_or_self(&self, precision: u32) -> Series {
        self.canonical(precision).unwrap_or_else(|_| self.g.clone())
    }

    /// Whether the two ideals agree (to the working precision when a
    /// generator is not a polynomial).
    pub fn same_ideal(&self, other: &CurveIdeal, precision: u32) -> bool {
        if self.smooth != other.smooth {
            return false;
        }
        if self.smooth {
            return match (self.canonical(precision), other.canonical(precision)) {
                (Ok(a), Ok(b)) => a.agrees_with(&b),
                _ => false,
            };
        }
        divides(&self.g, &other.g, precision).accepted() && divides(&other.g, &self.g, precision).accepted()
    }

    pub fn display(&self, level: u32) -> String {
        let z = if level == 0 { "Z".to_string() } else { format!("Z{level}") };
        format!("({z}, {})", self.g.display(level))
    }

    /// `g` with `X` and `Y` exchanged.
    pub fn swapped(&self) -> CurveIdeal {
        CurveIdeal::new(self.g.swap_vars(X, Y)).expect("swap keeps the order")
    }
}

impl fmt::Display for CurveIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    /// No obstruction below this degree, but nothing certifies the rest.
    UpToPrecision(u32),
    /// `G^{n-k}` leaves a nonzero remainder at `monomial` when dividing `a_k`.
    No { k: u32, monomial: Monomial },
}

impl Verdict {
    /// `Yes`, or undecided at the working precision.
    pub fn accepted(&self) -> bool {
        !matches!(self, Verdict::No { .. })
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes)
    }

    fn merge(self, other: Verdict) -> Verdict {
        match (self, other) {
            (v @ Verdict::No { .. }, _) | (_, v @ Verdict::No { .. }) => v,
            (Verdict::UpToPrecision(a), Verdict::UpToPrecision(b)) => Verdict::UpToPrecision(a.min(b)),
            (v @ Verdict::UpToPrecision(_), _) | (_, v @ Verdict::UpToPrecision(_)) => v,
            _ => Verdict::Yes,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => write!(f, "yes"),
            Verdict::UpToPrecision(p) => write!(f, "undecided at precision {p}"),
            Verdict::No { k, monomial } => write!(f, "no (a_{k}, obstruction at {monomial:?})"),
        }
    }
}

fn precision_of(s: &Series, fallback: u32) -> u32 {
    s.precision().bound().unwrap_or(fallback)
}

/// Does `g` divide `f`? `k` only labels obstructions.
fn divides_labeled(f: &Series, g: &Series, k: u32, precision: u32) -> Verdict {
    if f.is_exact_zero() {
        return Verdict::Yes;
    }
    if f.is_zero() {
        return Verdict::UpToPrecision(precision_of(f, precision));
    }
    if polynomial_divide(f, g).is_some() {
        return Verdict::Yes;
    }
    for var in [Y, X] {
        if let Ok(res) = weierstrass_divide_in(f, g, var, precision) {
            if let Some((monomial, _)) = res.first_obstruction(var) {
                return Verdict::No { k, monomial };
            }
            if res.is_exact() {
                return Verdict::Yes;
            }
            let p = res.remainder_coeffs.iter().filter_map(|s| s.precision().bound()).min().unwrap_or(precision);
            return Verdict::UpToPrecision(p);
        }
    }
    match local_division(f, g, precision) {
        Ok(LocalDivision::Exact(_)) => Verdict::Yes,
        Ok(LocalDivision::UpTo(q)) => Verdict::UpToPrecision(precision_of(&q, precision)),
        Ok(LocalDivision::NotDivisible { monomial, .. }) => Verdict::No { k, monomial },
        Err(_) => Verdict::No { k, monomial: [0, 0, 0] },
    }
}

fn divides(g: &Series, f: &Series, precision: u32) -> Verdict {
    divides_labeled(f, g, 0, precision)
}

/// `G^{n-k} | a_k` for every `k`.
pub fn is_equimultiple(s: &WeierstrassSurface, c: &CurveIdeal, cfg: &Config) -> Verdict {
    let n = s.multiplicity();
    let mut verdict = Verdict::Yes;
    for (k, a) in s.coeffs().iter().enumerate() {
        let power = c.g().pow(n - k as u32);
        verdict = verdict.merge(divides_labeled(a, &power, k as u32, cfg.precision));
        if !verdict.accepted() {
            break;
        }
    }
    verdict
}

/// `(Z, X)` is permitted iff `i + k >= n` on the whole Newton set.
pub fn is_permitted_axis(s: &WeierstrassSurface) -> bool {
    let n = s.multiplicity();
    s.newton_set().triples.iter().all(|t| t[0] + t[2] >= n)
}

/// Moves a smooth curve to `(Z, X)` by a change of the `X, Y` plane.
pub fn normalize_curve(
    s: &WeierstrassSurface,
    c: &CurveIdeal,
    cfg: &Config,
) -> Result<(WeierstrassSurface, VariableChange)> {
    if !c.is_smooth() {
        return Err(Error::NotSmooth);
    }
    let (a, _) = c.linear();
    let images = if !a.is_zero() {
        let prep = weierstrass_prepare(c.g(), X, cfg.precision).map_err(|_| Error::NotRegularCurve)?;
        let h = prep.distinguished.coefficient_of(X, 0).neg_series();
        [Series::var(X).add_series(&h), Series::var(Y), Series::var(Z)]
    } else {
        let prep = weierstrass_prepare(c.g(), Y, cfg.precision).map_err(|_| Error::NotRegularCurve)?;
        let h = prep.distinguished.coefficient_of(Y, 0).neg_series().swap_vars(X, Y);
        [Series::var(Y), Series::var(X).add_series(&h), Series::var(Z)]
    };
    let phi = VariableChange::new(images)?;
    let normalized = phi.apply_to_surface(s, cfg)?.with_provenance(format!("normalize {}: {}", c, phi));
    Ok((normalized, phi))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Completeness {
    /// Every smooth curve `Y - h(X)` or `X - h(Y)` with `deg h <= D` was found.
    VerifiedWithinDegree(u32),
    /// Coefficients are truncated; results are candidates checked to precision.
    CandidatesOnly(u32),
    /// Every curve in `Z = 0` is equimultiple; nothing to enumerate.
    Unbounded,
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Completeness::VerifiedWithinDegree(d) => write!(f, "verified within degree bound {d}"),
            Completeness::CandidatesOnly(p) => write!(f, "candidates only (precision {p})"),
            Completeness::Unbounded => write!(f, "unbounded: every curve in Z = 0 is equimultiple"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocusReport {
    /// Members of `E(S)` found; the singular ones are never searched for.
    pub curves: Vec<CurveIdeal>,
    pub smooth_curves: Vec<CurveIdeal>,
    pub verdicts: Vec<Verdict>,
    /// The maximal ideal is always equimultiple.
    pub includes_origin: bool,
    pub completeness: Completeness,
    /// Lifting steps that needed a root outside the rationals.
    pub irrational_branches: Vec<String>,
    /// Branches still alive at the degree bound without closing up.
    pub open_branches: usize,
    pub degree_bound: u32,
    pub precision: u32,
}

impl LocusReport {
    pub fn contains(&self, c: &CurveIdeal, precision: u32) -> bool {
        self.smooth_curves.iter().any(|d| d.same_ideal(c, precision))
    }
}

struct Lifting {
    solutions: Vec<Vec<Rational>>,
    irrational: Vec<String>,
    open: usize,
}

/// Finds polynomial roots `Y = h(X)`, `h(0) = 0`, common to all of `ps`,
/// one coefficient per blow-up `Y -> X (c + Y)`.
fn lift(ps: &[Series], coeffs: &mut Vec<Rational>, depth: u32, tangent_only: bool, out: &mut Lifting) {
    if ps.iter().all(|p| p.coefficient_of(Y, 0).is_zero()) {
        let mut h = coeffs.clone();
        while h.last().is_some_and(Zero::is_zero) {
            h.pop();
        }
        if !out.solutions.contains(&h) {
            out.solutions.push(h);
        }
    }
    let mut common = UPoly::default();
    for p in ps {
        let Ok(cone) = p.initial_form() else { continue };
        let deg = cone.degree_in(Y).unwrap_or(0) as usize;
        let coeffs: Vec<Rational> = (0..=deg).map(|j| cone.coefficient_of(Y, j as u32).terms().map(|(_, c)| c.clone()).next().unwrap_or_else(Rational::zero)).collect();
        common = common.gcd(&UPoly::new(coeffs));
        if common.degree() == Some(0) {
            return;
        }
    }
    if common.is_zero() {
        return;
    }
    let split = common.rational_roots();
    if split.has_irrational_part() {
        let prefix: Vec<String> = coeffs.iter().map(format_rational).collect();
        out.irrational.push(format!("h = [{}] + t*X^{}: {} = 0", prefix.join(", "), coeffs.len() + 1, split.cofactor.to_text("t")));
    }
    if depth == 0 {
        if !split.roots.is_empty() {
            out.open += 1;
        }
        return;
    }
    for (c, _) in &split.roots {
        if tangent_only && coeffs.is_empty() && !c.is_zero() {
            continue;
        }
        let image = Series::var(X).mul_series(&Series::constant(c.clone()).add_series(&Series::var(Y)));
        let images = [Series::var(X), image, Series::var(Z)];
        let next: Vec<Series> = ps
            .iter()
            .filter_map(|p| {
                let q = p.substitute(&images).ok()?;
                let mu = q.adic_order(X);
                q.divide_by_power(X, mu).ok()
            })
            .collect();
        coeffs.push(c.clone());
        lift(&next, coeffs, depth - 1, tangent_only, out);
        coeffs.pop();
    }
}

/// `(1/j!) d^j a_k / dY^j` for `j < n - k`, dropping zeros.
fn vanishing_conditions(s: &WeierstrassSurface, var: usize) -> Vec<Series> {
    let n = s.multiplicity();
    let mut out = Vec::new();
    for (k, a) in s.coeffs().iter().enumerate() {
        let mut d = Series::from_terms(a.terms().map(|(m, c)| (*m, c.clone())), Precision::Exact);
        if var == X {
            d = d.swap_vars(X, Y);
        }
        for _ in 0..n - k as u32 {
            if d.is_zero() {
                break;
            }
            out.push(d.clone());
            d = d.derivative(Y);
        }
    }
    out
}

fn polynomial_in(var: usize, coeffs: &[Rational]) -> Series {
    let mut h = Series::zero();
    for (i, c) in coeffs.iter().enumerate() {
        let mut m = [0; 3];
        m[var] = i as u32 + 1;
        h = h.add_series(&Series::monomial(c.clone(), m));
    }
    h
}

/// All smooth equimultiple curves `(Z, Y - h(X))` and `(Z, X - h(Y))` with
/// `h` a polynomial of degree at most the configured bound.
pub fn enumerate_smooth_equimultiple(s: &WeierstrassSurface, cfg: &Config) -> LocusReport {
    let mut report = LocusReport {
        curves: Vec::new(),
        smooth_curves: Vec::new(),
        verdicts: Vec::new(),
        includes_origin: true,
        completeness: Completeness::VerifiedWithinDegree(cfg.degree_bound),
        irrational_branches: Vec::new(),
        open_branches: 0,
        degree_bound: cfg.degree_bound,
        precision: cfg.precision,
    };
    if s.coeffs().iter().all(Series::is_exact_zero) {
        report.completeness = Completeness::Unbounded;
        return report;
    }
    if !s.is_exact() {
        let p = s.coeffs().iter().filter_map(|a| a.precision().bound()).min().unwrap_or(cfg.precision);
        report.completeness = Completeness::CandidatesOnly(p);
    }
    let mut found: Vec<(String, CurveIdeal, Verdict)> = Vec::new();
    for (var, other) in [(Y, X), (X, Y)] {
        let ps = vanishing_conditions(s, var);
        let mut out = Lifting { solutions: Vec::new(), irrational: Vec::new(), open: 0 };
        lift(&ps, &mut Vec::new(), cfg.degree_bound, var == X, &mut out);
        report.irrational_branches.extend(out.irrational);
        report.open_branches += out.open;
        for h in out.solutions {
            let g = Series::var(var).sub_series(&polynomial_in(other, &h));
            let curve = CurveIdeal::new(g).expect("smooth generator");
            let verdict = is_equimultiple(s, &curve, cfg);
            if verdict.accepted() {
                found.push((curve.g().to_string(), curve, verdict));
            }
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    found.dedup_by(|a, b| a.0 == b.0);
    for (_, curve, verdict) in found {
        report.curves.push(curve.clone());
        report.smooth_curves.push(curve);
        report.verdicts.push(verdict);
    }
    report
}

/// Sort key used wherever curves need a deterministic order.
pub fn curve_key(c: &CurveIdeal) -> (String, Vec<(u32, u32, u32, u32)>) {
    (c.g().to_string(), c.g().terms().map(|(m, _)| local_key(m)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expression;

    fn surface(text: &str) -> WeierstrassSurface {
        WeierstrassSurface::from_equation(&parse_expression(text).unwrap(), &Config::default()).unwrap()
    }

    fn curve(text: &str) -> CurveIdeal {
        CurveIdeal::new(parse_expression(text).unwrap()).unwrap()
    }

    fn names(r: &LocusReport) -> Vec<String> {
        r.smooth_curves.iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn membership() {
        let cfg = Config::default();
        let flag = surface("Z^2 - (Y^2 - X^3)^2");
        assert_eq!(is_equimultiple(&flag, &curve("Y^2 - X^3"), &cfg), Verdict::Yes);
        let cusp = surface("Z^2 - X^3");
        assert_eq!(is_equimultiple(&cusp, &curve("X"), &cfg), Verdict::Yes);
        assert!(matches!(is_equimultiple(&cusp, &curve("Y"), &cfg), Verdict::No { k: 0, .. }));
    }

    #[test]
    fn series_divisibility_is_undecided_not_false() {
        // X + X^2 = X (1 + X) divides X^2 only as a series
        let cfg = Config::default();
        let s = surface("Z^2 - X^2");
        let v = is_equimultiple(&s, &curve("X + X^2"), &cfg);
        assert!(v.accepted());
    }

    #[test]
    fn permitted_axis() {
        assert!(is_permitted_axis(&surface("Z^2 - X^2*Y")));
        assert!(is_permitted_axis(&surface("Z^2 - X^3*Y^3")));
        assert!(!is_permitted_axis(&surface("Z^2 - X*Y^3")));
    }

    #[test]
    fn enumeration_examples() {
        let cfg = Config::default();
        assert_eq!(names(&enumerate_smooth_equimultiple(&surface("Z^2 - X^2*Y"), &cfg)), vec!["(Z, X)"]);
        assert_eq!(names(&enumerate_smooth_equimultiple(&surface("Z^2 - X^3*Y^3"), &cfg)), vec!["(Z, X)", "(Z, Y)"]);
        let flag = enumerate_smooth_equimultiple(&surface("Z^2 - (Y^2 - X^3)^2"), &cfg);
        assert!(flag.smooth_curves.is_empty());
        assert!(flag.includes_origin);
        let r = enumerate_smooth_equimultiple(&surface("Z^2 - (Y - X^2)^2*(Y + X)^2*X"), &cfg);
        assert_eq!(names(&r), vec!["(Z, Y + X)", "(Z, Y - X^2)"]);
        let tangent = enumerate_smooth_equimultiple(&surface("Z^2 - (X - Y^3)^2"), &cfg);
        assert_eq!(names(&tangent), vec!["(Z, X - Y^3)"]);
    }

    #[test]
    fn irrational_branch_reported() {
        let r = enumerate_smooth_equimultiple(&surface("Z^2 - (Y^2 - 2*X^2)^2"), &Config::default());
        assert!(r.smooth_curves.is_empty());
        assert!(!r.irrational_branches.is_empty());
    }

    #[test]
    fn normalization() {
        let cfg = Config::default();
        let s = surface("Z^2 - (X - Y^2)^2*Y");
        let (t, phi) = normalize_curve(&s, &curve("X - Y^2"), &cfg).unwrap();
        assert!(is_permitted_axis(&t));
        assert_eq!(phi.images()[0].to_string(), "X + Y^2");
        let (t, _) = normalize_curve(&surface("Z^2 - Y^2*X"), &curve("Y"), &cfg).unwrap();
        assert_eq!(t.to_string(), "Z^2 - X^2*Y");
        let (t, phi) = normalize_curve(&surface("Z^2 - (2*X + Y^3)^3"), &curve("2*X + Y^3"), &cfg).unwrap();
        assert!(is_permitted_axis(&t));
        assert_eq!(phi.images()[0].to_string(), "X - 1/2*Y^3");
    }

    #[test]
    fn canonical_forms() {
        let c = curve("2*Y - 4*X^2");
        assert_eq!(c.canonical(10).unwrap().to_string(), "Y - 2*X^2");
        assert!(c.same_ideal(&curve("Y - 2*X^2"), 10));
        assert!(!c.same_ideal(&curve("Y"), 10));
    }
}
