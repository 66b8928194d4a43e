//! Comparing the smooth equimultiple locus before and after a blow-up that
//! keeps the multiplicity.

use std::fmt;

use num_traits::Zero;

use crate::blowup::{
    curve_quadratic_transform, invert_strict_transform, monoidal_transform, quadratic_transform, ChartKind, Direction,
};
use crate::change::VariableChange;
use crate::error::{Error, Result};
use crate::locus::{
    enumerate_smooth_equimultiple, is_equimultiple, normalize_curve, Completeness, CurveIdeal, LocusReport,
};
use crate::series::{weierstrass_prepare, Series, X, Y, Z};
use crate::surface::WeierstrassSurface;
use crate::Config;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremCase {
    Monoidal,
    NonPlaneCone,
    PlaneCone,
}

impl fmt::Display for TheoremCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremCase::Monoidal => "a",
            TheoremCase::NonPlaneCone => "b1",
            TheoremCase::PlaneCone => "b2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CurveType {
    /// The exceptional divisor.
    I,
    /// Tangent to the divisor, coming from a singular equimultiple curve.
    II,
    /// Transversal, coming from a permitted curve.
    III,
}

impl fmt::Display for CurveType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveType::I => "i",
            CurveType::II => "ii",
            CurveType::III => "iii",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Preimage {
    Exceptional,
    Curve(CurveIdeal),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedCurve {
    pub curve: CurveIdeal,
    pub kind: CurveType,
    pub preimage: Preimage,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// `keeps_center`: the locus is `nu(E0)`; otherwise `nu(E0 minus the center)`.
    Monoidal { keeps_center: bool },
    NonPlaneCone { image: Vec<CurveIdeal>, image_equal: bool },
    PlaneCone {
        curves: Vec<ClassifiedCurve>,
        moreover: bool,
        /// Images of the permitted curves through the point are exactly the type (iii) curves.
        transversal_bijection: bool,
        /// Permitted curves whose image is tangent to the divisor and still permitted.
        tangent_survivors: usize,
        /// Type (ii) curves, each with a singular equimultiple preimage.
        tangent_created: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub case: TheoremCase,
    pub multiplicity: u32,
    /// The surface the transform was computed from, after moving a
    /// monoidal center to `(Z, X)`.
    pub surface: WeierstrassSurface,
    pub normalization: Option<VariableChange>,
    pub transform: WeierstrassSurface,
    pub direction: Direction,
    pub center: Option<CurveIdeal>,
    pub before: LocusReport,
    pub after: LocusReport,
    pub outcome: Outcome,
}

impl TheoremReport {
    pub fn types(&self) -> Vec<CurveType> {
        match &self.outcome {
            Outcome::PlaneCone { curves, .. } => {
                let mut t: Vec<CurveType> = curves.iter().map(|c| c.kind).collect();
                t.sort();
                t.dedup();
                t
            }
            _ => Vec::new(),
        }
    }
}

pub(crate) fn same_set(a: &[CurveIdeal], b: &[CurveIdeal], precision: u32) -> bool {
    a.iter().all(|c| b.iter().any(|d| c.same_ideal(d, precision)))
        && b.iter().all(|d| a.iter().any(|c| c.same_ideal(d, precision)))
}

fn bounded(report: &LocusReport, which: &str) -> Result<()> {
    if report.completeness == Completeness::Unbounded {
        return Err(Error::Unclassified(format!("{which}: every curve in Z = 0 is equimultiple")));
    }
    Ok(())
}

fn var_coeff(g: &Series, var: usize) -> crate::series::Rational {
    let mut m = [0; 3];
    m[var] = 1;
    g.coeff(&m)
}

/// Classifies the locus of the transform of `s` in the chart `d`. A
/// monoidal transform uses `center`, or `(Z, X)` when none is given.
pub fn classify_transform(
    s: &WeierstrassSurface,
    kind: ChartKind,
    d: &Direction,
    center: Option<&CurveIdeal>,
    cfg: &Config,
) -> Result<TheoremReport> {
    let n = s.multiplicity();
    let (base, normalization, center) = match (kind, center) {
        (ChartKind::Monoidal, Some(c)) => {
            if !c.is_smooth() || !is_equimultiple(s, c, cfg).accepted() {
                return Err(Error::NotPermitted);
            }
            let (t, phi) = normalize_curve(s, c, cfg)?;
            (t, Some(phi), Some(c.clone()))
        }
        (ChartKind::Monoidal, None) => (s.clone(), None, Some(CurveIdeal::axis(X))),
        (ChartKind::Quadratic, _) => (s.clone(), None, None),
    };
    let transform = match kind {
        ChartKind::Monoidal => monoidal_transform(&base, d, cfg),
        ChartKind::Quadratic => quadratic_transform(&base, d, cfg),
    };
    let transform = match transform {
        Err(Error::UnitTransform) => return Err(Error::HypothesisViolated { before: n, after: 0 }),
        other => other?,
    };
    if transform.multiplicity() != n {
        return Err(Error::HypothesisViolated { before: n, after: transform.multiplicity() });
    }
    let before = enumerate_smooth_equimultiple(&base, cfg);
    let after = enumerate_smooth_equimultiple(&transform, cfg);
    bounded(&before, "before")?;
    bounded(&after, "after")?;
    let p = cfg.precision;
    let (case, outcome) = match kind {
        ChartKind::Monoidal => {
            let axis = CurveIdeal::axis(X);
            let without: Vec<CurveIdeal> =
                before.smooth_curves.iter().filter(|c| !c.same_ideal(&axis, p)).cloned().collect();
            let keeps_center = if same_set(&after.smooth_curves, &before.smooth_curves, p) {
                true
            } else if same_set(&after.smooth_curves, &without, p) {
                false
            } else {
                return Err(Error::Unclassified(
                    "monoidal locus is neither nu(E0) nor nu(E0 minus the center)".into(),
                ));
            };
            (TheoremCase::Monoidal, Outcome::Monoidal { keeps_center })
        }
        ChartKind::Quadratic if !base.tangent_cone_is_plane() => {
            let image: Vec<CurveIdeal> = before
                .smooth_curves
                .iter()
                .filter_map(|q| curve_quadratic_transform(q, d).ok())
                .collect();
            let image_equal = same_set(&after.smooth_curves, &image, p);
            (TheoremCase::NonPlaneCone, Outcome::NonPlaneCone { image, image_equal })
        }
        ChartKind::Quadratic => (TheoremCase::PlaneCone, classify_plane(&base, d, &before, &after, cfg)?),
    };
    Ok(TheoremReport { case, multiplicity: n, surface: base, normalization, transform, direction: d.clone(), center, before, after, outcome })
}

fn classify_plane(
    s: &WeierstrassSurface,
    d: &Direction,
    before: &LocusReport,
    after: &LocusReport,
    cfg: &Config,
) -> Result<Outcome> {
    let p = cfg.precision;
    let e = d.privileged();
    if e == Z {
        return Err(Error::InvalidDirection(format!("{d} is not on the plane Z = 0")));
    }
    let o = if e == X { Y } else { X };
    let d_o = d.coord(o).clone();
    // var_o -> var_o - d_o var_e moves the chart of d to the untranslated one
    let mut shift: [Series; 3] = [Series::var(X), Series::var(Y), Series::var(Z)];
    shift[o] = Series::var(o).sub_series(&Series::var(e).scale(&d_o));

    let mut curves = Vec::new();
    for c in &after.smooth_curves {
        if c.same_ideal(&CurveIdeal::axis(e), p) {
            curves.push(ClassifiedCurve { curve: c.clone(), kind: CurveType::I, preimage: Preimage::Exceptional });
            continue;
        }
        let unclassified = |why: &str| Error::Unclassified(format!("{}: {why}", c.display(s.level() + 1)));
        let (kind, q) = if !var_coeff(c.g(), o).is_zero() {
            let dist = weierstrass_prepare(c.g(), o, p)?.distinguished;
            let h = dist.coefficient_of(o, 0).neg_series();
            let g = Series::var(o)
                .sub_series(&Series::var(e).scale(&d_o))
                .sub_series(&h.multiply_by_power(e, 1));
            let q = CurveIdeal::new(g)?;
            if !is_equimultiple(s, &q, cfg).accepted() {
                return Err(unclassified("transversal, but its preimage is not permitted"));
            }
            (CurveType::III, q)
        } else {
            let dist = weierstrass_prepare(c.g(), e, p)?.distinguished;
            let g = dist.coefficient_of(e, 0);
            let g_y = if e == X { g } else { g.swap_vars(X, Y) };
            let inv = invert_strict_transform(&g_y, p).map_err(|err| unclassified(&err.to_string()))?;
            let h = if e == X { inv.h } else { inv.h.swap_vars(X, Y) };
            let q = CurveIdeal::new(h.substitute(&shift)?)?;
            if q.is_smooth() || !is_equimultiple(s, &q, cfg).accepted() {
                return Err(unclassified("tangent, but no singular equimultiple preimage"));
            }
            (CurveType::II, q)
        };
        match curve_quadratic_transform(&q, d) {
            Ok(image) if image.same_ideal(c, p) => {}
            _ => return Err(unclassified("preimage does not transform back")),
        }
        curves.push(ClassifiedCurve { curve: c.clone(), kind, preimage: Preimage::Curve(q) });
    }

    let has = |t: CurveType| curves.iter().any(|c| c.kind == t);
    let moreover = !has(CurveType::II) || has(CurveType::I);
    if !moreover {
        return Err(Error::Unclassified("a type (ii) curve appears without the exceptional divisor".into()));
    }
    let images: Vec<CurveIdeal> =
        before.smooth_curves.iter().filter_map(|q| curve_quadratic_transform(q, d).ok()).collect();
    let transversal: Vec<CurveIdeal> =
        curves.iter().filter(|c| c.kind == CurveType::III).map(|c| c.curve.clone()).collect();
    let (tangent, crossing): (Vec<CurveIdeal>, Vec<CurveIdeal>) =
        images.into_iter().partition(|q| var_coeff(q.g(), o).is_zero());
    let tangent_survivors = tangent.iter().filter(|q| after.contains(q, p)).count();
    Ok(Outcome::PlaneCone {
        transversal_bijection: same_set(&crossing, &transversal, p),
        tangent_survivors,
        tangent_created: curves.iter().filter(|c| c.kind == CurveType::II).count(),
        curves,
        moreover,
    })
}
