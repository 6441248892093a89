//! The `.bg` text format.
//!
//! ```text
//! bg 1
//! vertex <name> <mult>
//! order <name> : <h1> <h2> ... <hk>     # counterclockwise
//! edge <ha> <hb>
//! deformed <ha> <t>                     # optional, t = p/q or an integer
//! face <h> disc|annulus                 # arc systems: the face containing half-edge h
//! deg <h> <int>                         # arc systems: degree of the arrow α_h
//! wind <h> <int>                        # arc systems: winding number of the arc containing h
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::ribbon::{BrauerGraph, HalfEdge, Labels, RibbonError, RibbonGraph};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BgError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] RibbonError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FaceKind {
    Disc,
    Annulus,
}

/// A parsed file: the Brauer graph plus any arc-system annotations, keyed by half-edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BgDocument {
    pub graph: BrauerGraph,
    pub faces: Vec<(HalfEdge, FaceKind)>,
    pub degrees: Vec<(HalfEdge, i64)>,
    pub windings: Vec<(HalfEdge, i64)>,
}

fn syntax(line: usize, message: impl Into<String>) -> BgError {
    BgError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse(text: &str) -> Result<BrauerGraph, BgError> {
    Ok(parse_document(text)?.graph)
}

pub fn parse_document(text: &str) -> Result<BgDocument, BgError> {
    let mut header = false;
    let mut vertex_mult: Vec<(String, u32, usize)> = Vec::new();
    let mut orders: Vec<(String, Vec<String>, usize)> = Vec::new();
    let mut edges: Vec<(String, String, usize)> = Vec::new();
    let mut deformed: Vec<(String, Scalar, usize)> = Vec::new();
    let mut faces: Vec<(String, FaceKind, usize)> = Vec::new();
    let mut degrees: Vec<(String, i64, usize)> = Vec::new();
    let mut windings: Vec<(String, i64, usize)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if !header {
            if tokens != ["bg", "1"] {
                return Err(syntax(line, "expected header `bg 1`"));
            }
            header = true;
            continue;
        }
        let int = |s: &str| i64::from_str(s).map_err(|_| syntax(line, format!("bad integer `{s}`")));
        match tokens[0] {
            "vertex" if tokens.len() == 3 => {
                let m = u32::from_str(tokens[2])
                    .ok()
                    .filter(|&m| m >= 1)
                    .ok_or_else(|| syntax(line, "multiplicity must be a positive integer"))?;
                vertex_mult.push((tokens[1].to_string(), m, line));
            }
            "order" if tokens.len() >= 4 && tokens[2] == ":" => {
                let hs = tokens[3..].iter().map(|s| s.to_string()).collect();
                orders.push((tokens[1].to_string(), hs, line));
            }
            "edge" if tokens.len() == 3 => {
                edges.push((tokens[1].to_string(), tokens[2].to_string(), line));
            }
            "deformed" if tokens.len() == 3 => {
                let t = Scalar::from_str(tokens[2]).map_err(|_| syntax(line, format!("bad scalar `{}`", tokens[2])))?;
                deformed.push((tokens[1].to_string(), t, line));
            }
            "face" if tokens.len() == 3 => {
                let kind = match tokens[2] {
                    "disc" => FaceKind::Disc,
                    "annulus" => FaceKind::Annulus,
                    other => return Err(syntax(line, format!("unknown face kind `{other}`"))),
                };
                faces.push((tokens[1].to_string(), kind, line));
            }
            "deg" if tokens.len() == 3 => degrees.push((tokens[1].to_string(), int(tokens[2])?, line)),
            "wind" if tokens.len() == 3 => windings.push((tokens[1].to_string(), int(tokens[2])?, line)),
            _ => return Err(syntax(line, format!("cannot parse `{}`", content.trim()))),
        }
    }
    if !header {
        return Err(syntax(1, "empty file"));
    }

    let mut ids: HashMap<String, HalfEdge> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    let mut next_of: Vec<HalfEdge> = Vec::new();
    let mut vertex_first: HashMap<String, HalfEdge> = HashMap::new();
    for (v, hs, line) in &orders {
        if !vertex_mult.iter().any(|(n, _, _)| n == v) {
            return Err(syntax(*line, format!("order for undeclared vertex `{v}`")));
        }
        if vertex_first.contains_key(v) {
            return Err(syntax(*line, format!("second order line for vertex `{v}`")));
        }
        let start = names.len();
        for h in hs {
            if ids.contains_key(h) {
                return Err(syntax(*line, format!("half-edge `{h}` appears twice")));
            }
            ids.insert(h.clone(), names.len());
            names.push(h.clone());
        }
        let k = hs.len();
        for j in 0..k {
            next_of.push(start + (j + 1) % k);
        }
        vertex_first.insert(v.clone(), start);
    }
    for (v, _, line) in &vertex_mult {
        if !vertex_first.contains_key(v) {
            return Err(syntax(*line, format!("vertex `{v}` has no order line")));
        }
    }
    let lookup = |h: &str, line: usize| {
        ids.get(h)
            .copied()
            .ok_or_else(|| syntax(line, format!("unknown half-edge `{h}`")))
    };
    let n = names.len();
    let mut pair = vec![usize::MAX; n];
    for (a, b, line) in &edges {
        let (x, y) = (lookup(a, *line)?, lookup(b, *line)?);
        if x == y {
            return Err(syntax(*line, "an edge needs two distinct half-edges"));
        }
        if pair[x] != usize::MAX || pair[y] != usize::MAX {
            return Err(syntax(*line, "half-edge used by two edges"));
        }
        pair[x] = y;
        pair[y] = x;
    }
    if let Some(h) = pair.iter().position(|&p| p == usize::MAX) {
        return Err(syntax(0, format!("half-edge `{}` has no edge line", names[h])));
    }
    let ribbon = RibbonGraph::new(next_of, pair)?;
    let mut mult = vec![0; ribbon.vertex_count()];
    let mut vnames = vec![String::new(); ribbon.vertex_count()];
    for (v, m, _) in &vertex_mult {
        let idx = ribbon.vertex_of(vertex_first[v]);
        mult[idx] = *m;
        vnames[idx] = v.clone();
    }
    let mut def = BTreeMap::new();
    for (h, t, line) in &deformed {
        let x = lookup(h, *line)?;
        let arrow = if ribbon.next(x) == ribbon.pair(x) {
            x
        } else if ribbon.next(ribbon.pair(x)) == x {
            ribbon.pair(x)
        } else {
            return Err(RibbonError::DeformedLoopInvalid(x).into());
        };
        def.insert(arrow, *t);
    }
    let graph = BrauerGraph::new(ribbon, mult, def)?.with_labels(Labels {
        half_edges: names,
        vertices: vnames,
    });
    let resolve = |items: Vec<(String, i64, usize)>| -> Result<Vec<(HalfEdge, i64)>, BgError> {
        items
            .into_iter()
            .map(|(h, x, line)| Ok((lookup(&h, line)?, x)))
            .collect()
    };
    Ok(BgDocument {
        faces: faces
            .into_iter()
            .map(|(h, k, line)| Ok((lookup(&h, line)?, k)))
            .collect::<Result<_, BgError>>()?,
        degrees: resolve(degrees)?,
        windings: resolve(windings)?,
        graph,
    })
}

pub fn write(g: &BrauerGraph) -> String {
    let r = g.ribbon();
    let mut out = String::from("bg 1\n");
    for v in 0..r.vertex_count() {
        writeln!(out, "vertex {} {}", g.vertex_name(v), g.mult_at(v)).unwrap();
    }
    for (v, cycle) in r.vertices().iter().enumerate() {
        let hs: Vec<String> = cycle.iter().map(|&h| g.half_edge_name(h)).collect();
        writeln!(out, "order {} : {}", g.vertex_name(v), hs.join(" ")).unwrap();
    }
    for (a, b) in r.edges() {
        writeln!(out, "edge {} {}", g.half_edge_name(a), g.half_edge_name(b)).unwrap();
    }
    for (h, t) in g.deformed() {
        writeln!(out, "deformed {} {}", g.half_edge_name(*h), t).unwrap();
    }
    out
}

pub fn write_document(doc: &BgDocument) -> String {
    let g = &doc.graph;
    let mut out = write(g);
    for (h, k) in &doc.faces {
        let kind = match k {
            FaceKind::Disc => "disc",
            FaceKind::Annulus => "annulus",
        };
        writeln!(out, "face {} {}", g.half_edge_name(*h), kind).unwrap();
    }
    for (h, d) in &doc.degrees {
        writeln!(out, "deg {} {}", g.half_edge_name(*h), d).unwrap();
    }
    for (h, w) in &doc.windings {
        writeln!(out, "wind {} {}", g.half_edge_name(*h), w).unwrap();
    }
    out
}
