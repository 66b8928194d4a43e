//! JSON and plain text renderings of the library reports.

use std::fmt::Write as _;

use equiloc::blowup::{ChartDescriptor, StrictTransformInverse};
use equiloc::driver::{LemmaReport, Outcome, Preimage, ResolutionNode, TheoremReport};
use equiloc::locus::{Completeness, CurveIdeal, LocusReport};
use equiloc::series::{format_rational, Series};
use equiloc::surface::WeierstrassSurface;
use equiloc::{Config, Error};
use serde_json::{json, Value};

use crate::Failure;

fn bounds(cfg: &Config) -> Value {
    json!({ "precision": cfg.precision, "degree_bound": cfg.degree_bound, "max_depth": cfg.max_depth })
}

fn surface(s: &WeierstrassSurface) -> Value {
    let d = s.to_descriptor();
    json!({
        "equation": s.to_string(),
        "n": d.n,
        "coeffs": d.coeffs,
        "level": d.level,
        "history": d.provenance,
    })
}

fn curves(cs: &[CurveIdeal], level: u32) -> Vec<String> {
    cs.iter().map(|c| c.display(level)).collect()
}

pub fn analyze(input: &str, s: &WeierstrassSurface, cfg: &Config) -> Value {
    let newton: Vec<[u32; 3]> = s.newton_set().triples.into_iter().collect();
    json!({
        "command": "analyze",
        "input": input,
        "n": s.multiplicity(),
        "newton_set": newton,
        "cone_plane": s.tangent_cone_is_plane(),
        "tangent_cone": s.tangent_cone().to_string(),
        "surface": surface(s),
        "bounds": bounds(cfg),
    })
}

pub fn analyze_text(s: &WeierstrassSurface) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "surface: {s}");
    let _ = writeln!(out, "multiplicity: {}", s.multiplicity());
    let triples: Vec<String> = s.newton_set().triples.iter().map(|t| format!("({},{},{})", t[0], t[1], t[2])).collect();
    let _ = writeln!(out, "newton set: {}", triples.join(" "));
    let _ = writeln!(out, "tangent cone: {} (plane: {})", s.tangent_cone(), s.tangent_cone_is_plane());
    for step in s.provenance() {
        let _ = writeln!(out, "  {step}");
    }
    out
}

pub fn blowup(
    chart: &ChartDescriptor,
    base: &WeierstrassSurface,
    raw: &Series,
    t: &WeierstrassSurface,
    cfg: &Config,
) -> Value {
    json!({
        "command": "blowup",
        "chart": chart,
        "source": surface(base),
        "chart_equation": raw.display(t.level()).to_string(),
        "surface": surface(t),
        "bounds": bounds(cfg),
    })
}

pub fn blowup_text(chart: &ChartDescriptor, raw: &Series, t: &WeierstrassSurface) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "chart: {:?} ({})", chart.kind, chart.direction.join(":"));
    let _ = writeln!(out, "chart equation: {}", raw.display(t.level()));
    let _ = writeln!(out, "surface: {t}");
    let _ = writeln!(out, "multiplicity: {}", t.multiplicity());
    out
}

fn completeness(c: &Completeness) -> Value {
    match c {
        Completeness::VerifiedWithinDegree(d) => json!({ "kind": "verified-within-degree", "bound": d }),
        Completeness::CandidatesOnly(p) => json!({ "kind": "candidates-only", "bound": p }),
        Completeness::Unbounded => json!({ "kind": "unbounded", "bound": null }),
    }
}

pub fn locus(r: &LocusReport, level: u32) -> Value {
    json!({
        "command": "curves",
        "curves": curves(&r.smooth_curves, level),
        "verdicts": r.verdicts.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "includes_origin": r.includes_origin,
        "completeness": completeness(&r.completeness),
        "irrational_branches": r.irrational_branches,
        "open_branches": r.open_branches,
        "bounds": { "precision": r.precision, "degree_bound": r.degree_bound },
    })
}

pub fn locus_text(r: &LocusReport, level: u32) -> String {
    let mut out = String::new();
    for (c, v) in r.smooth_curves.iter().zip(&r.verdicts) {
        let _ = writeln!(out, "{}  {v}", c.display(level));
    }
    if r.smooth_curves.is_empty() {
        out.push_str("no permitted curves\n");
    }
    let _ = writeln!(out, "completeness: {}", r.completeness);
    for b in &r.irrational_branches {
        let _ = writeln!(out, "irrational branch: {b}");
    }
    out
}

pub fn inverse(g: &Series, inv: &StrictTransformInverse) -> Value {
    let table = |t: &std::collections::BTreeMap<(u32, u32), equiloc::series::Rational>| {
        t.iter().map(|(&(a, b), c)| json!([a, b, format_rational(c)])).collect::<Vec<_>>()
    };
    json!({
        "command": "invert",
        "g": g.to_string(),
        "lambda": inv.lambda,
        "h": inv.h.to_string(),
        "u": inv.u.to_string(),
        "beta": table(&inv.beta_table),
        "gamma": table(&inv.gamma_table),
        "bounds": { "precision": inv.precision },
    })
}

pub fn inverse_text(inv: &StrictTransformInverse) -> String {
    format!("lambda: {}\nH = {}\nu = {}\n", inv.lambda, inv.h, inv.u)
}

fn outcome(r: &TheoremReport) -> Value {
    let level = r.transform.level();
    match &r.outcome {
        Outcome::Monoidal { keeps_center } => json!({
            "alternative": if *keeps_center { "nu(E0)" } else { "nu(E0 \\ {P})" },
        }),
        Outcome::NonPlaneCone { image, image_equal } => json!({
            "image": curves(image, level),
            "image_equal": image_equal,
        }),
        Outcome::PlaneCone { curves, moreover, transversal_bijection, tangent_survivors, tangent_created } => {
            let entries: Vec<Value> = curves
                .iter()
                .map(|c| {
                    let pre = match &c.preimage {
                        Preimage::Exceptional => "exceptional".to_string(),
                        Preimage::Curve(q) => q.display(level - 1),
                    };
                    json!({ "curve": c.curve.display(level), "type": c.kind.to_string(), "preimage": pre })
                })
                .collect();
            json!({
                "curves": entries,
                "moreover": if *moreover { "pass" } else { "fail" },
                "transversal_bijection": transversal_bijection,
                "tangent_survivors": tangent_survivors,
                "tangent_created": tangent_created,
            })
        }
    }
}

pub fn theorem(r: &TheoremReport, cfg: &Config) -> Value {
    json!({
        "command": "classify",
        "case": r.case.to_string(),
        "multiplicity": r.multiplicity,
        "direction": r.direction.to_string(),
        "center": r.center.as_ref().map(|c| c.display(r.surface.level())),
        "normalization": r.normalization.as_ref().map(|p| p.to_string()),
        "surface": surface(&r.surface),
        "transform": surface(&r.transform),
        "e0_before": curves(&r.before.smooth_curves, r.surface.level()),
        "e0_after": curves(&r.after.smooth_curves, r.transform.level()),
        "types": r.types().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "outcome": outcome(r),
        "bounds": bounds(cfg),
    })
}

pub fn theorem_text(r: &TheoremReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "case {}: {} -> {}", r.case, r.surface, r.transform);
    let _ = writeln!(out, "E0 before: {}", curves(&r.before.smooth_curves, r.surface.level()).join(", "));
    let _ = writeln!(out, "E0 after: {}", curves(&r.after.smooth_curves, r.transform.level()).join(", "));
    let level = r.transform.level();
    match &r.outcome {
        Outcome::Monoidal { keeps_center } => {
            let _ = writeln!(out, "outcome: {}", if *keeps_center { "nu(E0)" } else { "nu(E0 \\ {P})" });
        }
        Outcome::NonPlaneCone { image_equal, .. } => {
            let _ = writeln!(out, "image equal: {image_equal}");
        }
        Outcome::PlaneCone { curves, moreover, .. } => {
            for c in curves {
                let pre = match &c.preimage {
                    Preimage::Exceptional => "exceptional".to_string(),
                    Preimage::Curve(q) => q.display(level - 1),
                };
                let _ = writeln!(out, "type {}: {} from {pre}", c.kind, c.curve.display(level));
            }
            let _ = writeln!(out, "moreover: {}", if *moreover { "pass" } else { "fail" });
        }
    }
    out
}

pub fn resolve(input: &str, tree: &ResolutionNode, cfg: &Config) -> Value {
    json!({
        "command": "resolve",
        "input": input,
        "height": tree.height(),
        "tree": tree.to_json(),
        "bounds": bounds(cfg),
    })
}

pub fn lemma(r: &LemmaReport, cfg: &Config) -> Value {
    json!({
        "command": "lemma",
        "cone_is_plane": r.cone_is_plane,
        "vacuous": r.vacuous,
        "curve": r.curve.as_ref().map(|c| c.to_string()),
        "normalization": r.normalization.as_ref().map(|p| p.to_string()),
        "cone_polynomial": r.cone_polynomial.as_ref().map(|p| p.to_text("z")),
        "directions_checked": r.directions_checked.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "multiplicities": r.multiplicities,
        "m_values": r.m_values,
        "surviving_coefficients": r.surviving_coefficients.iter().map(format_rational).collect::<Vec<_>>(),
        "unresolved": r.unresolved,
        "verdict": r.verdict,
        "bounds": bounds(cfg),
    })
}

pub fn lemma_text(r: &LemmaReport) -> String {
    if r.vacuous {
        let why = if r.cone_is_plane { "tangent cone is a plane" } else { "no permitted curve" };
        return format!("vacuous: {why}\n");
    }
    let mut out = String::new();
    for ((d, n), m) in r.directions_checked.iter().zip(&r.multiplicities).zip(&r.m_values) {
        let _ = writeln!(out, "{d}: multiplicity {n}, m = {m}");
    }
    for u in &r.unresolved {
        let _ = writeln!(out, "unresolved: {u}");
    }
    let _ = writeln!(out, "verdict: {}", r.verdict);
    out
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::Series(_) => "series",
        Error::Parse(_) => "parse",
        Error::ZeroEquation => "zero-equation",
        Error::NotAGerm => "not-a-germ",
        Error::RegularizationFailed { .. } => "regularization-failed",
        Error::InvalidDescriptor(_) => "invalid-descriptor",
        Error::InvalidCurve(_) => "invalid-curve",
        Error::NotSmooth => "not-smooth",
        Error::NotRegularCurve => "not-regular-curve",
        Error::NotPermitted => "not-permitted",
        Error::InvalidDirection(_) => "invalid-direction",
        Error::UnitTransform => "unit-transform",
        Error::CurveMissesPoint => "curve-misses-point",
        Error::Transversal => "transversal",
        Error::ChartMismatch(_) => "chart-mismatch",
        Error::HypothesisViolated { .. } => "hypothesis-violated",
        Error::Unclassified(_) => "unclassified",
        Error::Internal(_) => "internal",
    }
}

pub fn error(f: &Failure) -> String {
    let v = match f {
        Failure::Usage(m) => json!({ "error": { "kind": "usage", "message": m } }),
        Failure::Core(Error::Parse(p)) => {
            json!({ "error": { "kind": "parse", "message": p.message, "offset": p.offset } })
        }
        Failure::Core(e) => json!({ "error": { "kind": kind(e), "message": e.to_string() } }),
    };
    serde_json::to_string(&v).expect("json value")
}
