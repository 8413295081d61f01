//! Line-oriented text formats for bidirected and skew-symmetric graphs.
//!
//! ```text
//! bigraph <n> <m>
//! e <id> <u> <v> <du> <dv> <w>      du, dv in {i, o}
//!
//! skewgraph <N> <M>
//! a <id> <mate> <tail> <head> <w>
//! ```
//!
//! Nodes are 1-based, edge and arc ids 0-based and dense. `#` starts a
//! comment. In skew files node `2k - 1` is the mate of node `2k`.

use std::fmt;
use std::str::FromStr;

use bimean_core::matching::UndirectedGraph;
use bimean_core::skew::{validate_skew, Arc, SkewSymmetricGraph};
use bimean_core::{BidirectedGraph, Edge, Sign, Violation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn number<T: FromStr>(line: usize, what: &str, token: &str) -> Result<T, ParseError> {
    token.parse().or_else(|_| err(line, format!("invalid {what} `{token}`")))
}

fn node(line: usize, token: &str) -> Result<usize, ParseError> {
    let v: usize = number(line, "node", token)?;
    if v == 0 {
        return err(line, "node ids are 1-based");
    }
    Ok(v - 1)
}

fn sign(line: usize, token: &str) -> Result<Sign, ParseError> {
    match token {
        "i" => Ok(Sign::In),
        "o" => Ok(Sign::Out),
        _ => err(line, format!("invalid direction `{token}`, expected `i` or `o`")),
    }
}

/// Header fields and body lines of a file starting with `keyword <a> <b>`.
type Sections<'a> = (usize, usize, usize, Vec<(usize, Vec<&'a str>)>);

fn header<'a>(text: &'a str, keyword: &str) -> Result<Sections<'a>, ParseError> {
    let mut lines = content_lines(text);
    let Some((line, tokens)) = lines.next() else {
        return err(1, format!("missing header `{keyword} <count> <count>`"));
    };
    if tokens.len() != 3 || tokens[0] != keyword {
        return err(line, format!("expected header `{keyword} <count> <count>`"));
    }
    let a = number(line, "count", tokens[1])?;
    let b = number(line, "count", tokens[2])?;
    Ok((line, a, b, lines.collect()))
}

pub fn parse_bigraph(text: &str) -> Result<BidirectedGraph, ParseError> {
    let (head_line, n, edges) = parse_edges(text, true)?;
    BidirectedGraph::new(n, edges).or_else(|e| err(head_line, e.to_string()))
}

/// Reads a bigraph file as an undirected multigraph; directions are ignored,
/// so loops may carry any pair of signs.
pub fn parse_undirected(text: &str) -> Result<UndirectedGraph, ParseError> {
    let (_, n, edges) = parse_edges(text, false)?;
    Ok(UndirectedGraph::new(n, edges.iter().map(|e| (e.ends[0], e.ends[1], e.weight)).collect()))
}

fn parse_edges(text: &str, check_loops: bool) -> Result<(usize, usize, Vec<Edge>), ParseError> {
    let (head_line, n, m, body) = header(text, "bigraph")?;
    if n == 0 {
        return err(head_line, Violation::NoNodes.to_string());
    }
    let mut edges = Vec::with_capacity(m);
    for (line, t) in &body {
        let line = *line;
        if t[0] != "e" || t.len() != 7 {
            return err(line, "expected `e <id> <u> <v> <du> <dv> <w>`");
        }
        let id: usize = number(line, "edge id", t[1])?;
        let (u, v) = (node(line, t[2])?, node(line, t[3])?);
        let (du, dv) = (sign(line, t[4])?, sign(line, t[5])?);
        let w: i64 = number(line, "weight", t[6])?;
        if id != edges.len() {
            return err(line, Violation::NonDenseId { position: edges.len(), id }.to_string());
        }
        for node in [u, v] {
            if node >= n {
                return err(line, Violation::DanglingEndpoint { edge: id, node }.to_string());
            }
        }
        if check_loops && u == v && du != dv {
            return err(line, Violation::MixedLoop { edge: id }.to_string());
        }
        edges.push(Edge::new(id, u, v, du, dv, w));
    }
    if edges.len() != m {
        let line = body.last().map_or(head_line, |(l, _)| *l);
        return err(line, format!("header declares {m} edges, found {}", edges.len()));
    }
    Ok((head_line, n, edges))
}

fn sign_char(s: Sign) -> char {
    match s {
        Sign::In => 'i',
        Sign::Out => 'o',
    }
}

pub fn serialize_bigraph(g: &BidirectedGraph) -> String {
    let mut out = format!("bigraph {} {}\n", g.node_count(), g.edge_count());
    for e in g.edges() {
        out.push_str(&format!(
            "e {} {} {} {} {} {}\n",
            e.id,
            e.ends[0] + 1,
            e.ends[1] + 1,
            sign_char(e.signs[0]),
            sign_char(e.signs[1]),
            e.weight
        ));
    }
    out
}

/// Parses and checks structure. Asymmetric arc weights are accepted here;
/// callers decide whether to reject them.
pub fn parse_skew(text: &str) -> Result<SkewSymmetricGraph, ParseError> {
    let (head_line, n, m, body) = header(text, "skewgraph")?;
    let mut arcs = Vec::with_capacity(m);
    let mut lines = Vec::with_capacity(m);
    for (line, t) in &body {
        let line = *line;
        if t[0] != "a" || t.len() != 6 {
            return err(line, "expected `a <id> <mate> <tail> <head> <w>`");
        }
        let id: usize = number(line, "arc id", t[1])?;
        let mate: usize = number(line, "arc id", t[2])?;
        let (tail, head) = (node(line, t[3])?, node(line, t[4])?);
        let weight: i64 = number(line, "weight", t[5])?;
        arcs.push(Arc { id, mate, tail, head, weight });
        lines.push(line);
    }
    if arcs.len() != m {
        let line = lines.last().copied().unwrap_or(head_line);
        return err(line, format!("header declares {m} arcs, found {}", arcs.len()));
    }
    let mates = SkewSymmetricGraph::standard_pairing(n);
    if let Err(violations) = validate_skew(n, &mates, &arcs) {
        if let Some(v) = violations.iter().find(|v| v.is_structural()) {
            let line = violation_arc(v).and_then(|a| lines.get(a).copied()).unwrap_or(head_line);
            return err(line, v.to_string());
        }
    }
    SkewSymmetricGraph::new(n, mates, arcs).or_else(|e| err(head_line, e.to_string()))
}

/// Position of the arc a violation is about, if any.
pub fn violation_arc(v: &bimean_core::skew::SkewViolation) -> Option<usize> {
    use bimean_core::skew::SkewViolation::*;
    match *v {
        NonDenseArcId { position, .. } => Some(position),
        DanglingArc { arc }
        | ArcMateOutOfRange { arc }
        | SelfMateArc { arc }
        | ArcMateNotInvolution { arc }
        | BrokenArcSymmetry { arc }
        | AsymmetricWeight { arc } => Some(arc),
        OddNodeCount
        | NodeMateOutOfRange { .. }
        | FixedNode { .. }
        | NodeMateNotInvolution { .. } => None,
    }
}

pub fn serialize_skew(g: &SkewSymmetricGraph) -> String {
    let mut out = format!("skewgraph {} {}\n", g.node_count(), g.arcs().len());
    for a in g.arcs() {
        out.push_str(&format!(
            "a {} {} {} {} {}\n",
            a.id,
            a.mate,
            a.tail + 1,
            a.head + 1,
            a.weight
        ));
    }
    out
}
