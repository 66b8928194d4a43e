use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use super::directions::equimultiple_directions;
use super::lemma::fiber_polynomial;
use crate::blowup::{chart_label, monoidal_transform, quadratic_transform, ChartKind, Direction};
use crate::change::VariableChange;
use crate::error::Result;
use crate::locus::{enumerate_smooth_equimultiple, normalize_curve, Completeness, CurveIdeal};
use crate::series::{rat, X};
use crate::surface::WeierstrassSurface;
use crate::Config;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeStatus {
    Resolved,
    Open,
    DepthCapped,
    IrrationalDirection,
}

impl NodeStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeStatus::Resolved => "resolved",
            NodeStatus::Open => "open",
            NodeStatus::DepthCapped => "depth-capped",
            NodeStatus::IrrationalDirection => "irrational-direction",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionNode {
    /// Absent for summary leaves that stand for a whole set of points.
    pub surface: Option<WeierstrassSurface>,
    /// For summary leaves, an upper bound.
    pub multiplicity: u32,
    pub depth: u32,
    /// Chart that produced this node, like `quadratic (1:0:0)`.
    pub action: Option<String>,
    /// Center blown up to produce the children.
    pub center: Option<String>,
    pub history: Vec<String>,
    pub status: NodeStatus,
    pub note: Option<String>,
    pub children: Vec<ResolutionNode>,
}

/// Smooth surfaces collapse to `Z`; show the equation they came from.
fn label(s: &WeierstrassSurface) -> String {
    if s.multiplicity() == 1 {
        s.source().display(s.level()).to_string()
    } else {
        s.to_string()
    }
}

impl ResolutionNode {
    fn leaf(surface: Option<WeierstrassSurface>, multiplicity: u32, depth: u32, history: Vec<String>) -> Self {
        ResolutionNode {
            surface,
            multiplicity,
            depth,
            action: history.last().cloned(),
            center: None,
            history,
            status: NodeStatus::Open,
            note: None,
            children: Vec::new(),
        }
    }

    fn summary(status: NodeStatus, multiplicity: u32, depth: u32, history: Vec<String>, note: String) -> Self {
        let mut node = Self::leaf(None, multiplicity, depth, history);
        node.status = status;
        node.note = Some(note);
        node
    }

    pub fn leaves(&self) -> Vec<&ResolutionNode> {
        if self.children.is_empty() {
            return vec![self];
        }
        self.children.iter().flat_map(|c| c.leaves()).collect()
    }

    pub fn height(&self) -> u32 {
        self.children.iter().map(|c| c.height() + 1).max().unwrap_or(0)
    }

    /// Multiplicity never goes up along an edge.
    pub fn is_monotone(&self) -> bool {
        self.children.iter().all(|c| c.multiplicity <= self.multiplicity && c.is_monotone())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "equation": self.surface.as_ref().map(label),
            "surface": self.surface.as_ref().map(|s| s.to_descriptor()),
            "multiplicity": self.multiplicity,
            "depth": self.depth,
            "action": self.action,
            "center": self.center,
            "status": self.status,
            "note": self.note,
            "history": self.history,
            "children": self.children.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn to_dot(&self) -> String {
        fn escape(s: &str) -> String {
            s.replace('\\', "\\\\").replace('"', "\\\"")
        }
        fn walk(node: &ResolutionNode, next: &mut usize, out: &mut String) -> usize {
            let id = *next;
            *next += 1;
            let eq = node.surface.as_ref().map(label).unwrap_or_else(|| "remaining points".into());
            let _ = writeln!(
                out,
                "  n{id} [label=\"{}\\nn = {}, {}\"];",
                escape(&eq),
                node.multiplicity,
                node.status.as_str()
            );
            for child in &node.children {
                let cid = walk(child, next, out);
                let label = child.action.clone().unwrap_or_default();
                let _ = writeln!(out, "  n{id} -> n{cid} [label=\"{}\"];", escape(&label));
            }
            id
        }
        let mut out = String::from("digraph resolution {\n  node [shape=box];\n");
        walk(self, &mut 0, &mut out);
        out.push_str("}\n");
        out
    }

    pub fn to_text(&self) -> String {
        fn walk(node: &ResolutionNode, indent: usize, out: &mut String) {
            let pad = "  ".repeat(indent);
            let eq = node.surface.as_ref().map(label).unwrap_or_else(|| "(remaining points)".into());
            let via = node.action.as_ref().map(|a| format!("[{a}] ")).unwrap_or_default();
            let _ = write!(out, "{pad}{via}{eq}  n = {}  {}", node.multiplicity, node.status.as_str());
            if let Some(c) = &node.center {
                let _ = write!(out, "  center {c}");
            }
            if let Some(n) = &node.note {
                let _ = write!(out, "  ({n})");
            }
            out.push('\n');
            for c in &node.children {
                walk(c, indent + 1, out);
            }
        }
        let mut out = String::new();
        walk(self, 0, &mut out);
        out
    }
}

/// Blows up a permitted curve when there is one, the point otherwise, and
/// follows every point over the origin that keeps the multiplicity.
pub fn levi_zariski_resolve(s: &WeierstrassSurface, cfg: &Config) -> ResolutionNode {
    expand(s.clone(), 0, Vec::new(), cfg)
}

fn expand(s: WeierstrassSurface, depth: u32, history: Vec<String>, cfg: &Config) -> ResolutionNode {
    let n = s.multiplicity();
    let mut node = ResolutionNode::leaf(Some(s.clone()), n, depth, history);
    if n <= 1 {
        node.status = NodeStatus::Resolved;
        return node;
    }
    if depth >= cfg.max_depth {
        node.status = NodeStatus::DepthCapped;
        return node;
    }
    match step(&s, depth, &node.history, cfg) {
        Ok((center, children)) => {
            node.center = Some(center);
            node.children = children;
        }
        Err(e) => node.note = Some(format!("stopped: {e}")),
    }
    node
}

fn step(s: &WeierstrassSurface, depth: u32, history: &[String], cfg: &Config) -> Result<(String, Vec<ResolutionNode>)> {
    let n = s.multiplicity();
    let locus = enumerate_smooth_equimultiple(s, cfg);
    let center = if locus.completeness == Completeness::Unbounded {
        Some(CurveIdeal::axis(X))
    } else {
        locus.smooth_curves.first().cloned()
    };
    let mut children = Vec::new();
    let child_history = |extra: &[String]| {
        let mut h = history.to_vec();
        h.extend_from_slice(extra);
        h
    };
    if let Some(curve) = center {
        let label = curve.display(s.level());
        let (t, phi) = normalize_curve(s, &curve, cfg)?;
        let mut prefix = Vec::new();
        if phi != VariableChange::identity() {
            prefix.push(format!("normalize {label}: {phi}"));
        }
        let split = fiber_polynomial(&t).rational_roots();
        for (alpha, _) in &split.roots {
            let d = Direction::new([rat(1), rat(0), alpha.clone()])?;
            let child = monoidal_transform(&t, &d, cfg)?;
            let mut h = prefix.clone();
            h.push(chart_label(ChartKind::Monoidal, &d));
            children.push(expand(child, depth + 1, child_history(&h), cfg));
        }
        if split.has_irrational_part() {
            let mut h = prefix.clone();
            h.push(format!("monoidal (1:0:z), {} = 0", split.cofactor.to_text("z")));
            let note = "direction with irrational coordinates".to_string();
            children.push(ResolutionNode::summary(NodeStatus::IrrationalDirection, n, depth + 1, child_history(&h), note));
        }
        return Ok((label, children));
    }

    let report = equimultiple_directions(s);
    let mut dirs = report.isolated.clone();
    let generic = Direction::from_ints(1, 0, 0)?;
    if report.divisor_equimultiple && !dirs.contains(&generic) {
        dirs.push(generic);
    }
    dirs.sort();
    for d in &dirs {
        let child = quadratic_transform(s, d, cfg)?;
        let h = [chart_label(ChartKind::Quadratic, d)];
        let mut node = expand(child, depth + 1, child_history(&h), cfg);
        if report.divisor_equimultiple && d.coord(2) == &rat(0) && d.privileged() == X {
            let note = "multiplicity is kept along the whole exceptional line";
            node.note = Some(node.note.map_or(note.to_string(), |old| format!("{note}; {old}")));
        }
        children.push(node);
    }
    for w in &report.unresolved {
        let h = [format!("quadratic {w}")];
        let note = "direction with irrational coordinates".to_string();
        children.push(ResolutionNode::summary(NodeStatus::IrrationalDirection, n, depth + 1, child_history(&h), note));
    }
    let h = ["quadratic, remaining points".to_string()];
    if n == 2 && children.is_empty() {
        let note = "every point over the origin has multiplicity 1".to_string();
        children.push(ResolutionNode::summary(NodeStatus::Resolved, 1, depth + 1, child_history(&h), note));
    } else if n > 2 {
        let note = format!("points of multiplicity below {n} are not followed");
        children.push(ResolutionNode::summary(NodeStatus::Open, n - 1, depth + 1, child_history(&h), note));
    }
    Ok(("origin".to_string(), children))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expression;

    fn surface(text: &str) -> WeierstrassSurface {
        WeierstrassSurface::from_equation(&parse_expression(text).unwrap(), &Config::default()).unwrap()
    }

    fn all_resolved(t: &ResolutionNode) -> bool {
        t.leaves().iter().all(|l| l.status == NodeStatus::Resolved)
    }

    #[test]
    fn whitney_umbrella() {
        let t = levi_zariski_resolve(&surface("Z^2 - X^2*Y"), &Config::default());
        assert_eq!(t.center.as_deref(), Some("(Z, X)"));
        assert_eq!(t.height(), 1);
        assert_eq!(t.children.len(), 1);
        assert_eq!(t.children[0].action.as_deref(), Some("monoidal (1:0:0)"));
        assert!(all_resolved(&t));
    }

    #[test]
    fn a_chains() {
        let cfg = Config::default();
        let t = levi_zariski_resolve(&surface("Z^2 + X^2 + Y^4"), &cfg);
        assert_eq!(t.height(), 2);
        assert_eq!(t.children[0].action.as_deref(), Some("quadratic (0:1:0)"));
        assert_eq!(t.children[0].surface.as_ref().unwrap().to_string(), "Z1^2 + Y1^2 + X1^2");
        assert!(all_resolved(&t));
        let t = levi_zariski_resolve(&surface("Z^2 + X^2 + Y^6"), &cfg);
        assert_eq!(t.height(), 3);
        assert!(all_resolved(&t) && t.is_monotone());
    }

    #[test]
    fn cusp() {
        let t = levi_zariski_resolve(&surface("Z^2 - X^3"), &Config::default());
        assert_eq!(t.height(), 1);
        assert!(all_resolved(&t));
    }

    #[test]
    fn depth_cap() {
        let cfg = Config { max_depth: 1, ..Config::default() };
        let t = levi_zariski_resolve(&surface("Z^2 + X^2 + Y^6"), &cfg);
        assert_eq!(t.children[0].status, NodeStatus::DepthCapped);
    }

    #[test]
    fn exports() {
        let t = levi_zariski_resolve(&surface("Z^2 - X^2*Y"), &Config::default());
        let dot = t.to_dot();
        assert!(dot.starts_with("digraph resolution {"));
        assert!(dot.contains("n0 -> n1 [label=\"monoidal (1:0:0)\"]"));
        assert_eq!(t.to_json()["children"][0]["status"], "resolved");
        assert!(t.to_text().contains("center (Z, X)"));
    }
}
