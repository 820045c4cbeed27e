//! Line-based and JSON diagram files.
//!
//! ```text
//! # positive Hopf link
//! X+ 1 2 3 0
//! X+ 2 1 0 3
//! color 0 red
//! color 1 blue
//! ```
//!
//! `X+`/`X-` tuples start at the incoming under-strand and run counterclockwise.
//! `V` tuples list incoming, incoming, outgoing, outgoing counterclockwise.
//! `O k` is a crossingless circle on arc `k`. Color lines refer to components in
//! order of their smallest arc. A file without color lines is one color.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use tangle_core::diagram::{ArcId, Coloration, ColoredDiagram, Diagram, Node, NodeKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    At { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("json: {0}")]
    Json(String),
}

fn at(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::At { line, column, message: message.into() }
}

/// A diagram with one color name per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkFile {
    pub diagram: Diagram,
    pub colors: Vec<String>,
}

impl LinkFile {
    pub fn new(diagram: Diagram, coloration: &Coloration) -> Self {
        let colors = coloration.0.iter().map(|c| c.to_string()).collect();
        LinkFile { diagram, colors }
    }

    pub fn uniform(diagram: Diagram) -> Self {
        let n = diagram.component_count();
        LinkFile::new(diagram, &Coloration::uniform(n))
    }

    /// Labels numbered by first appearance.
    pub fn coloration(&self) -> Coloration {
        let mut ids: Vec<&str> = Vec::new();
        Coloration(
            self.colors
                .iter()
                .map(|c| match ids.iter().position(|x| x == c) {
                    Some(i) => i as u32,
                    None => {
                        ids.push(c);
                        (ids.len() - 1) as u32
                    }
                })
                .collect(),
        )
    }

    pub fn colored(&self) -> ColoredDiagram {
        ColoredDiagram::new(self.diagram.clone(), &self.coloration()).expect("validated on construction")
    }

    pub fn is_single_colored(&self) -> bool {
        self.colors.windows(2).all(|w| w[0] == w[1])
    }
}

fn kind_tag(k: NodeKind) -> &'static str {
    match k {
        NodeKind::Positive => "X+",
        NodeKind::Negative => "X-",
        NodeKind::Singular => "V",
    }
}

fn parse_kind(tag: &str) -> Option<NodeKind> {
    match tag {
        "X+" => Some(NodeKind::Positive),
        "X-" => Some(NodeKind::Negative),
        "V" => Some(NodeKind::Singular),
        _ => None,
    }
}

/// Whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(s, t)| (line[..s].chars().count() + 1, t)).collect()
}

fn number(line: usize, (col, tok): (usize, &str)) -> Result<u32, FormatError> {
    tok.parse().map_err(|_| at(line, col, format!("expected a non-negative integer, found `{tok}`")))
}

pub fn parse_text(text: &str) -> Result<LinkFile, FormatError> {
    let mut nodes: Vec<Node> = Vec::new();
    let mut loops: Vec<ArcId> = Vec::new();
    // positions of every arc use
    let mut uses: BTreeMap<ArcId, Vec<(usize, usize)>> = BTreeMap::new();
    let mut colors: BTreeMap<usize, (String, usize, usize)> = BTreeMap::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        last_line = ln;
        let body = raw.split('#').next().unwrap_or("");
        let toks = tokens(body);
        let Some(&(col, head)) = toks.first() else { continue };
        if let Some(kind) = parse_kind(head) {
            if toks.len() != 5 {
                return Err(at(ln, col, format!("`{head}` takes 4 arcs, found {}", toks.len() - 1)));
            }
            let mut pd = [0; 4];
            for (k, t) in toks[1..].iter().enumerate() {
                pd[k] = number(ln, *t)?;
                uses.entry(pd[k]).or_default().push((ln, t.0));
            }
            nodes.push(Node::from_pd(kind, pd));
        } else if head == "O" {
            if toks.len() != 2 {
                return Err(at(ln, col, "`O` takes one arc"));
            }
            let a = number(ln, toks[1])?;
            uses.entry(a).or_default().extend([(ln, toks[1].0), (ln, toks[1].0)]);
            loops.push(a);
        } else if head == "color" {
            if toks.len() != 3 {
                return Err(at(ln, col, "`color` takes a component index and a label"));
            }
            let c = number(ln, toks[1])? as usize;
            if colors.insert(c, (toks[2].1.to_string(), ln, toks[1].0)).is_some() {
                return Err(at(ln, toks[1].0, format!("component {c} colored twice")));
            }
        } else {
            return Err(at(ln, col, format!("unknown record `{head}`")));
        }
    }
    for (a, u) in &uses {
        if u.len() != 2 {
            let (l, c) = u[0];
            return Err(at(l, c, format!("arc {a} used {} times, expected 2", u.len())));
        }
    }
    let diagram = Diagram::new(nodes, loops).map_err(|e| FormatError::Invalid(e.to_string()))?;
    let n = diagram.component_count();
    let colors = if colors.is_empty() {
        vec![String::from("0"); n]
    } else {
        if let Some((&c, (_, l, col))) = colors.iter().find(|(&c, _)| c >= n) {
            return Err(at(*l, *col, format!("component {c} out of range, diagram has {n}")));
        }
        match (0..n).find(|c| !colors.contains_key(c)) {
            Some(c) => return Err(at(last_line.max(1), 1, format!("missing color for component {c}"))),
            None => colors.into_values().map(|(s, _, _)| s).collect(),
        }
    };
    Ok(LinkFile { diagram, colors })
}

pub fn to_text(f: &LinkFile) -> String {
    let mut out = String::new();
    for n in f.diagram.nodes() {
        let [a, b, c, d] = n.pd();
        let _ = writeln!(out, "{} {a} {b} {c} {d}", kind_tag(n.kind));
    }
    for l in f.diagram.free_loops() {
        let _ = writeln!(out, "O {l}");
    }
    for (i, c) in f.colors.iter().enumerate() {
        let _ = writeln!(out, "color {i} {c}");
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonNode {
    kind: String,
    arcs: [ArcId; 4],
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonColor {
    component: usize,
    label: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonFile {
    #[serde(default)]
    nodes: Vec<JsonNode>,
    #[serde(default)]
    loops: Vec<ArcId>,
    #[serde(default)]
    colors: Vec<JsonColor>,
}

/// The JSON mirror goes through the text parser so both report the same errors.
pub fn parse_json(text: &str) -> Result<LinkFile, FormatError> {
    let j: JsonFile = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    let mut t = String::new();
    for n in &j.nodes {
        if parse_kind(&n.kind).is_none() {
            return Err(FormatError::Json(format!("unknown node kind `{}`", n.kind)));
        }
        let [a, b, c, d] = n.arcs;
        let _ = writeln!(t, "{} {a} {b} {c} {d}", n.kind);
    }
    for l in &j.loops {
        let _ = writeln!(t, "O {l}");
    }
    for c in &j.colors {
        if c.label.split_whitespace().count() != 1 || c.label.contains('#') {
            return Err(FormatError::Json(format!("label `{}` must be one token", c.label)));
        }
        let _ = writeln!(t, "color {} {}", c.component, c.label);
    }
    parse_text(&t).map_err(|e| FormatError::Json(e.to_string()))
}

pub fn to_json(f: &LinkFile) -> String {
    let j = JsonFile {
        nodes: f.diagram.nodes().iter().map(|n| JsonNode { kind: kind_tag(n.kind).into(), arcs: n.pd() }).collect(),
        loops: f.diagram.free_loops().to_vec(),
        colors: f
            .colors
            .iter()
            .enumerate()
            .map(|(component, label)| JsonColor { component, label: label.clone() })
            .collect(),
    };
    serde_json::to_string_pretty(&j).expect("plain data")
}

/// JSON if the first non-blank character is `{`, text otherwise.
pub fn parse_any(text: &str) -> Result<LinkFile, FormatError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HOPF: &str = "# positive Hopf link\nX+ 1 2 3 0\nX+ 2 1 0 3\ncolor 0 red\ncolor 1 blue\n";

    #[test]
    fn hopf_round_trip() {
        let f = parse_text(HOPF).unwrap();
        assert_eq!(f.diagram.component_count(), 2);
        assert_eq!(f.coloration(), Coloration(vec![0, 1]));
        let again = parse_text(&to_text(&f)).unwrap();
        assert_eq!(again, f);
        assert_eq!(parse_json(&to_json(&f)).unwrap(), f);
    }

    #[test]
    fn unknot_and_unlink() {
        let f = parse_text("O 0\ncolor 0 red\n").unwrap();
        assert_eq!(f.diagram.component_count(), 1);
        let f = parse_text("O 0\nO 1\n").unwrap();
        assert_eq!(f.colors, vec!["0", "0"]);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_text("X+ 0 1 2 3\n").unwrap_err();
        assert!(matches!(e, FormatError::At { line: 1, column: 4, .. }), "{e}");
        let e = parse_text("O 0\nY 1 2\n").unwrap_err();
        assert!(matches!(e, FormatError::At { line: 2, column: 1, .. }));
        let e = parse_text("O 0\n  X- 1 2 x 4\n").unwrap_err();
        assert!(matches!(e, FormatError::At { line: 2, column: 10, .. }), "{e}");
        let e = parse_text("O 0\nO 1\ncolor 0 a\n").unwrap_err();
        assert!(e.to_string().contains("missing color for component 1"));
    }
}
