use num_traits::{One, Zero};

use crate::blowup::{quadratic_chart_equation, Direction};
use crate::poly::UPoly;
use crate::series::{rat, Rational, Series, X, Y, Z};
use crate::surface::WeierstrassSurface;

/// Points of the exceptional plane where a quadratic transform keeps the
/// multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionReport {
    pub cone_is_plane: bool,
    pub isolated: Vec<Direction>,
    /// Every `(1:t:0)` keeps the multiplicity: `(Z1, X1)` is equimultiple.
    pub divisor_equimultiple: bool,
    /// Factors without rational roots whose roots `t` give `(1:t:0)` candidates.
    pub unresolved: Vec<String>,
}

/// `A(1, T)` for a form `A` in `X, Y`.
fn dehomogenize(form: &Series) -> UPoly {
    let deg = form.degree_in(Y).unwrap_or(0) as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (m, c) in form.terms() {
        coeffs[m[Y] as usize] = c.clone();
    }
    UPoly::new(coeffs)
}

pub(crate) fn keeps_multiplicity(s: &WeierstrassSurface, d: &Direction) -> bool {
    quadratic_chart_equation(&s.equation(), d)
        .is_ok_and(|f| f.order().finite().is_some_and(|o| o == s.multiplicity()))
}

/// Basis of `{v : row . v = 0 for every row}`.
pub(crate) fn kernel(rows: &[[Rational; 3]]) -> Vec<[Rational; 3]> {
    let mut m: Vec<[Rational; 3]> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..3 {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        let lead = m[r][col].clone();
        for v in m[r].iter_mut() {
            *v = &*v / &lead;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..3 {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (0..3)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v: [Rational; 3] = std::array::from_fn(|_| Rational::zero());
            v[free] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[i][free].clone();
            }
            v
        })
        .collect()
}

/// Linear forms `d^{n-1} F / d(var)...` of the cone.
fn top_partials(cone: &Series, n: u32) -> Vec<[Rational; 3]> {
    let mut layer = vec![cone.clone()];
    for _ in 0..n - 1 {
        let mut next: Vec<Series> = Vec::new();
        for f in &layer {
            for v in [X, Y, Z] {
                let d = f.derivative(v);
                if !d.is_exact_zero() && !next.contains(&d) {
                    next.push(d);
                }
            }
        }
        layer = next;
    }
    layer.iter().map(|l| [l.coeff(&[1, 0, 0]), l.coeff(&[0, 1, 0]), l.coeff(&[0, 0, 1])]).collect()
}

/// Candidates come from the points of the tangent cone of multiplicity `n`;
/// each one is confirmed by computing the chart.
pub fn equimultiple_directions(s: &WeierstrassSurface) -> DirectionReport {
    let n = s.multiplicity();
    let plane = s.tangent_cone_is_plane();
    let mut report =
        DirectionReport { cone_is_plane: plane, isolated: Vec::new(), divisor_equimultiple: false, unresolved: Vec::new() };
    if n < 2 {
        return report;
    }
    let mut candidates: Vec<Direction> = Vec::new();
    if plane {
        // ord of X^{d-(n-k)} A(1, Y + t) must reach n - k
        let mut conditions: Vec<UPoly> = Vec::new();
        for (k, a) in s.coeffs().iter().enumerate() {
            let need = 2 * (n - k as u32);
            for d in (n - k as u32 + 1)..need {
                let form = a.homogeneous_part(d);
                if form.is_zero() {
                    continue;
                }
                let mut p = dehomogenize(&form);
                for _ in 0..need - d {
                    if p.is_zero() {
                        break;
                    }
                    conditions.push(p.clone());
                    p = p.derivative();
                }
            }
        }
        if conditions.is_empty() {
            report.divisor_equimultiple = true;
        } else {
            let common = conditions.iter().fold(UPoly::default(), |g, p| g.gcd(p));
            let split = common.rational_roots();
            for (t, _) in &split.roots {
                candidates.push(Direction::new([rat(1), t.clone(), rat(0)]).expect("nonzero"));
            }
            if split.has_irrational_part() {
                report.unresolved.push(format!("(1:t:0) with {} = 0", split.cofactor.to_text("t")));
            }
        }
        candidates.push(Direction::from_ints(0, 1, 0).expect("nonzero"));
    } else {
        let basis = kernel(&top_partials(&s.tangent_cone(), n));
        if basis.len() == 1 {
            if let Ok(d) = Direction::new(basis[0].clone()) {
                candidates.push(d);
            }
        }
    }
    report.isolated = candidates.into_iter().filter(|d| keeps_multiplicity(s, d)).collect();
    report
}
