//! Surfaces `Z^n + a_{n-2} Z^{n-2} + ... + a_0` with `ord(a_k) >= n - k`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parse::parse_expression;
use crate::series::{format_rational, rat, total_degree, weierstrass_prepare, Order, Rational, Series, X, Y, Z};
use crate::Config;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassSurface {
    n: u32,
    /// `a_0 ..= a_{n-2}`, series in `X, Y` only.
    coeffs: Vec<Series>,
    provenance: Vec<String>,
    source: Series,
    level: u32,
}

/// Exponents `(i, j, k)` of the monomials `X^i Y^j Z^k` of the `a_k Z^k`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct NewtonSet {
    pub triples: BTreeSet<[u32; 3]>,
}

impl NewtonSet {
    pub fn contains(&self, t: &[u32; 3]) -> bool {
        self.triples.contains(t)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDescriptor {
    pub n: u32,
    pub coeffs: Vec<String>,
    #[serde(default)]
    pub provenance: Vec<String>,
    #[serde(default)]
    pub level: u32,
}

fn shift_order(bound: i64) -> Vec<(i64, i64)> {
    let mut pairs: Vec<(i64, i64)> = (-bound..=bound)
        .flat_map(|c| (-bound..=bound).map(move |d| (c, d)))
        .filter(|&p| p != (0, 0))
        .collect();
    pairs.sort_by_key(|&(c, d)| (c.abs() + d.abs(), c, d));
    pairs
}

fn linear_term(c: &Rational, var: &str) -> String {
    if c.is_negative() {
        format!(" - {}*{var}", format_rational(&-c))
    } else {
        format!(" + {}*{var}", format_rational(c))
    }
}

impl WeierstrassSurface {
    pub fn from_equation(f: &Series, cfg: &Config) -> Result<Self> {
        Self::from_equation_at(f, 0, cfg)
    }

    /// Normalizes `f` into Weierstrass form: make it regular in `Z` if
    /// needed, prepare, drop the unit and remove the `Z^{n-1}` term.
    pub fn from_equation_at(f: &Series, level: u32, cfg: &Config) -> Result<Self> {
        if f.is_exact_zero() {
            return Err(Error::ZeroEquation);
        }
        if f.has_constant_term() {
            return Err(Error::NotAGerm);
        }
        let n = match f.order() {
            Order::Finite(n) => n,
            _ => return Err(crate::series::SeriesError::IndeterminateInitialForm.into()),
        };
        let mut provenance = Vec::new();
        if n == 1 {
            provenance.push("order 1: smooth, Weierstrass form Z".to_string());
            return Ok(WeierstrassSurface { n, coeffs: Vec::new(), provenance, source: f.clone(), level });
        }
        let cone = f.initial_form()?;
        let mut g = f.clone();
        let one = rat(1);
        if cone.evaluate(&[rat(0), rat(0), one.clone()]).is_none_or(|v| v.is_zero()) {
            let (c, d) = shift_order(cfg.regularization_bound)
                .into_iter()
                .find(|&(c, d)| cone.evaluate(&[rat(c), rat(d), one.clone()]).is_some_and(|v| !v.is_zero()))
                .ok_or(Error::RegularizationFailed { bound: cfg.regularization_bound })?;
            let images = [
                &Series::var(X) + &Series::var(Z).scale(&rat(c)),
                &Series::var(Y) + &Series::var(Z).scale(&rat(d)),
                Series::var(Z),
            ];
            g = g.substitute(&images)?;
            provenance.push(format!("X -> X{}, Y -> Y{}", linear_term(&rat(c), "Z"), linear_term(&rat(d), "Z")));
        }
        let prep = weierstrass_prepare(&g, Z, cfg.precision)?;
        if prep.degree != n {
            return Err(Error::Internal(format!("Z-order {} differs from order {n}", prep.degree)));
        }
        if !prep.unit.is_exact() || prep.unit != Series::one() {
            provenance.push(format!("dropped unit {}", prep.unit));
        }
        let mut dist = prep.distinguished;
        let top = dist.coefficient_of(Z, n - 1);
        if !top.is_zero() {
            let shift = top.scale(&(one / rat(n as i64)));
            let images = [Series::var(X), Series::var(Y), Series::var(Z).sub_series(&shift)];
            dist = dist.substitute(&images)?;
            provenance.push(format!("Z -> Z - ({shift})"));
        }
        let leftover = dist.coefficient_of(Z, n - 1);
        if !leftover.is_zero() {
            return Err(Error::Internal(format!("Z^{} coefficient survived: {leftover}", n - 1)));
        }
        let coeffs: Vec<Series> = (0..n - 1).map(|k| dist.coefficient_of(Z, k)).collect();
        Self::checked(n, coeffs, provenance, f.clone(), level)
    }

    fn checked(n: u32, coeffs: Vec<Series>, provenance: Vec<String>, source: Series, level: u32) -> Result<Self> {
        for (k, a) in coeffs.iter().enumerate() {
            if a.uses_var(Z) {
                return Err(Error::InvalidDescriptor(format!("a_{k} involves Z")));
            }
            if let Order::Finite(o) = a.order() {
                if o < n - k as u32 {
                    return Err(Error::InvalidDescriptor(format!("ord(a_{k}) = {o} < {}", n - k as u32)));
                }
            }
        }
        Ok(WeierstrassSurface { n, coeffs, provenance, source, level })
    }

    /// Builds a surface from its coefficients, checking the order condition.
    pub fn from_coeffs(n: u32, coeffs: Vec<Series>, level: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDescriptor("multiplicity must be at least 1".into()));
        }
        if coeffs.len() != n.saturating_sub(1) as usize {
            return Err(Error::InvalidDescriptor(format!("expected {} coefficients, found {}", n - 1, coeffs.len())));
        }
        let source = Self::assemble(n, &coeffs);
        Self::checked(n, coeffs, Vec::new(), source, level)
    }

    fn assemble(n: u32, coeffs: &[Series]) -> Series {
        let mut f = Series::var(Z).pow(n);
        for (k, a) in coeffs.iter().enumerate() {
            f = f.add_series(&a.multiply_by_power(Z, k as u32));
        }
        f
    }

    pub fn multiplicity(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Series] {
        &self.coeffs
    }

    /// `a_k`, zero for `k = n - 1`.
    pub fn coeff(&self, k: u32) -> Series {
        self.coeffs.get(k as usize).cloned().unwrap_or_else(Series::zero)
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    /// The equation this surface was normalized from.
    pub fn source(&self) -> &Series {
        &self.source
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn with_level(mut self, level: u32) -> Self {
        self.level = level;
        self
    }

    pub fn with_provenance(mut self, entry: impl Into<String>) -> Self {
        self.provenance.push(entry.into());
        self
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(Series::is_exact)
    }

    pub fn equation(&self) -> Series {
        Self::assemble(self.n, &self.coeffs)
    }

    pub fn newton_set(&self) -> NewtonSet {
        let triples = self
            .coeffs
            .iter()
            .enumerate()
            .flat_map(|(k, a)| a.terms().map(move |(m, _)| [m[0], m[1], k as u32]))
            .collect();
        NewtonSet { triples }
    }

    /// True iff the initial form is `Z^n`.
    pub fn tangent_cone_is_plane(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, a)| a.terms().all(|(m, _)| total_degree(m) + k as u32 > self.n))
    }

    /// Initial form of the equation.
    pub fn tangent_cone(&self) -> Series {
        self.equation().homogeneous_part(self.n)
    }

    pub fn to_descriptor(&self) -> SurfaceDescriptor {
        SurfaceDescriptor {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a.display(self.level).to_string()).collect(),
            provenance: self.provenance.clone(),
            level: self.level,
        }
    }

    pub fn from_descriptor(d: &SurfaceDescriptor) -> Result<Self> {
        let coeffs = d
            .coeffs
            .iter()
            .map(|s| parse_expression(s).map_err(|e| Error::InvalidDescriptor(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let mut s = Self::from_coeffs(d.n, coeffs, d.level)?;
        s.provenance = d.provenance.clone();
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let d: SurfaceDescriptor = serde_json::from_str(text).map_err(|e| Error::InvalidDescriptor(e.to_string()))?;
        Self::from_descriptor(&d)
    }
}

impl fmt::Display for WeierstrassSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.equation().display(self.level))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expression;

    fn surface(text: &str) -> WeierstrassSurface {
        WeierstrassSurface::from_equation(&parse_expression(text).unwrap(), &Config::default()).unwrap()
    }

    #[test]
    fn already_normalized() {
        let s = surface("Z^2 - X^3");
        assert_eq!(s.multiplicity(), 2);
        assert_eq!(s.coeffs(), &[parse_expression("-X^3").unwrap()]);
        assert!(s.provenance().is_empty());
    }

    #[test]
    fn tschirnhausen() {
        let s = surface("Z^2 + 2*X*Z + X^2 - Y^3");
        assert_eq!(s.to_string(), "Z^2 - Y^3");
        assert_eq!(s.provenance(), &["Z -> Z - (X)".to_string()]);
    }

    #[test]
    fn flagship() {
        let s = surface("Z^2 - (Y^2 - X^3)^2");
        let ns: Vec<[u32; 3]> = s.newton_set().triples.into_iter().collect();
        assert_eq!(ns, vec![[0, 4, 0], [3, 2, 0], [6, 0, 0]]);
        assert!(s.tangent_cone_is_plane());
    }

    #[test]
    fn multiplicities() {
        assert_eq!(surface("Z^3 + X^2*Y^2*Z + X^5").multiplicity(), 3);
        assert_eq!(surface("Z").multiplicity(), 1);
        assert_eq!(surface("Z + X^2").multiplicity(), 1);
    }

    #[test]
    fn tangent_cones() {
        assert!(surface("Z^2 - X^3").tangent_cone_is_plane());
        assert!(!surface("Z^2 - X^2 - X^3").tangent_cone_is_plane());
        assert!(!surface("Z^2 - X^2 - Y^4").tangent_cone_is_plane());
        assert_eq!(surface("Z^2 - X^2*Y^2").newton_set().triples.into_iter().collect::<Vec<_>>(), vec![[2, 2, 0]]);
    }

    #[test]
    fn regularizes_when_needed() {
        let s = surface("X*Y + Z^3");
        assert_eq!(s.multiplicity(), 2);
        assert!(s.provenance()[0].starts_with("X -> X"));
    }

    #[test]
    fn rejects_units_and_zero() {
        let cfg = Config::default();
        let unit = parse_expression("1 + X").unwrap();
        assert_eq!(WeierstrassSurface::from_equation(&unit, &cfg), Err(Error::NotAGerm));
        assert_eq!(WeierstrassSurface::from_equation(&Series::zero(), &cfg), Err(Error::ZeroEquation));
    }

    #[test]
    fn idempotent_and_descriptor_roundtrip() {
        let cfg = Config::default();
        let s = surface("Z^3 - 3*X^2*Z + X^3*Y + 2*Y*Z^2");
        let again = WeierstrassSurface::from_equation(&s.equation(), &cfg).unwrap();
        assert_eq!(again.coeffs(), s.coeffs());
        let json = serde_json::to_string(&s.to_descriptor()).unwrap();
        let back = WeierstrassSurface::from_json(&json).unwrap();
        assert_eq!(back.coeffs(), s.coeffs());
        assert_eq!(back.newton_set(), s.newton_set());
    }
}
