use num_traits::{One, Zero};

use crate::blowup::{monoidal_chart_equation, Direction};
use crate::change::VariableChange;
use crate::error::Result;
use crate::locus::{enumerate_smooth_equimultiple, normalize_curve, CurveIdeal};
use crate::poly::UPoly;
use crate::series::{rat, Rational};
use crate::surface::WeierstrassSurface;
use crate::Config;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub cone_is_plane: bool,
    /// No permitted curve, or a plane cone: nothing to check.
    pub vacuous: bool,
    pub curve: Option<CurveIdeal>,
    pub normalization: Option<VariableChange>,
    /// `F(1, 0, z)` after moving the curve to `(Z, X)`.
    pub cone_polynomial: Option<UPoly>,
    pub directions_checked: Vec<Direction>,
    /// Order of each monoidal transform at its chart origin.
    pub multiplicities: Vec<u32>,
    /// How many cone roots coincide with the chart's root.
    pub m_values: Vec<u32>,
    /// Coefficient of `Z1^m` in the transform: the product of the root gaps.
    pub surviving_coefficients: Vec<Rational>,
    pub unresolved: Vec<String>,
    pub verdict: bool,
}

impl LemmaReport {
    fn vacuous(cone_is_plane: bool) -> Self {
        LemmaReport {
            cone_is_plane,
            vacuous: true,
            curve: None,
            normalization: None,
            cone_polynomial: None,
            directions_checked: Vec::new(),
            multiplicities: Vec::new(),
            m_values: Vec::new(),
            surviving_coefficients: Vec::new(),
            unresolved: Vec::new(),
            verdict: true,
        }
    }
}

/// `z^n + sum_k a_{n-k,0,k} z^k` for a surface with `(Z, X)` permitted.
pub(crate) fn fiber_polynomial(s: &WeierstrassSurface) -> UPoly {
    let n = s.multiplicity();
    let mut coeffs = vec![Rational::zero(); n as usize + 1];
    coeffs[n as usize] = Rational::one();
    for (k, a) in s.coeffs().iter().enumerate() {
        coeffs[k] = a.coeff(&[n - k as u32, 0, 0]);
    }
    UPoly::new(coeffs)
}

/// Every monoidal transform centered at a permitted curve of a surface whose
/// tangent cone is not a plane has smaller multiplicity.
pub fn verify_lemma(s: &WeierstrassSurface, cfg: &Config) -> Result<LemmaReport> {
    let plane = s.tangent_cone_is_plane();
    if plane || s.multiplicity() < 2 {
        return Ok(LemmaReport::vacuous(plane));
    }
    let locus = enumerate_smooth_equimultiple(s, cfg);
    let Some(curve) = locus.smooth_curves.first().cloned() else {
        return Ok(LemmaReport::vacuous(plane));
    };
    let n = s.multiplicity();
    let (t, phi) = normalize_curve(s, &curve, cfg)?;
    let cone = fiber_polynomial(&t);
    let split = cone.rational_roots();
    let mut report = LemmaReport::vacuous(plane);
    report.vacuous = false;
    report.curve = Some(curve);
    report.normalization = Some(phi);
    report.cone_polynomial = Some(cone.clone());
    if split.has_irrational_part() {
        report.unresolved.push(format!("(1:0:z) with {} = 0", split.cofactor.to_text("z")));
    }
    for (alpha, m) in &split.roots {
        let d = Direction::new([rat(1), rat(0), alpha.clone()])?;
        let raw = monoidal_chart_equation(&t, &d)?;
        let order = raw.order().finite().unwrap_or(u32::MAX);
        let mut rest = cone.clone();
        let linear = UPoly::new(vec![-alpha.clone(), Rational::one()]);
        for _ in 0..*m {
            rest = rest.div_rem(&linear).0;
        }
        report.directions_checked.push(d);
        report.multiplicities.push(order);
        report.m_values.push(*m);
        report.surviving_coefficients.push(rest.eval(alpha));
    }
    report.verdict = report.multiplicities.iter().zip(&report.m_values).all(|(&o, &m)| o < n && o <= m);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expression;

    fn surface(text: &str) -> WeierstrassSurface {
        WeierstrassSurface::from_equation(&parse_expression(text).unwrap(), &Config::default()).unwrap()
    }

    fn dirs(r: &LemmaReport) -> Vec<String> {
        r.directions_checked.iter().map(|d| d.to_string()).collect()
    }

    #[test]
    fn node_times_line() {
        let r = verify_lemma(&surface("Z^2 - X^2 - X^3"), &Config::default()).unwrap();
        assert!(!r.vacuous && r.verdict);
        assert_eq!(dirs(&r), ["(1:0:-1)", "(1:0:1)"]);
        assert_eq!(r.multiplicities, [1, 1]);
        assert_eq!(r.m_values, [1, 1]);
    }

    #[test]
    fn plane_cone_is_vacuous() {
        let r = verify_lemma(&surface("Z^2 - X^3"), &Config::default()).unwrap();
        assert!(r.vacuous && r.cone_is_plane);
    }

    #[test]
    fn three_roots() {
        let r = verify_lemma(&surface("Z^3 - X^2*Z + X^3*Y"), &Config::default()).unwrap();
        assert!(r.verdict);
        assert_eq!(dirs(&r), ["(1:0:-1)", "(1:0:0)", "(1:0:1)"]);
        assert_eq!(r.m_values, [1, 1, 1]);
        assert_eq!(r.surviving_coefficients, [rat(2), rat(-1), rat(2)]);
    }

    #[test]
    fn double_root() {
        let r = verify_lemma(&surface("Z^3 - 3*X^2*Z + 2*X^3 + X^3*Y"), &Config::default()).unwrap();
        assert!(r.verdict);
        assert_eq!(dirs(&r), ["(1:0:-2)", "(1:0:1)"]);
        assert_eq!(r.m_values, [1, 2]);
        assert!(r.multiplicities[1] <= 2);
    }

    #[test]
    fn irrational_roots_are_reported() {
        let r = verify_lemma(&surface("Z^2 - 2*X^2 - X^3"), &Config::default()).unwrap();
        assert!(r.directions_checked.is_empty());
        assert_eq!(r.unresolved.len(), 1);
    }
}
