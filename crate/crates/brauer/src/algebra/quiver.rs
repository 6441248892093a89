use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use super::AlgebraError;
use crate::ribbon::{BrauerGraph, HalfEdge};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    /// The arrow id is the half-edge it comes from: `α_h : edge(h) -> edge(next(h))`.
    pub id: HalfEdge,
    pub source: usize,
    pub target: usize,
}

/// A path in traversal order: `arrows[0]` is walked first. Products are written right to left,
/// so `[β, α]` here is the product `αβ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<HalfEdge>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`, if composable.
    pub fn then(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    /// Right-to-left notation, e.g. `a3*a1` for a1 followed by a3, or `e2` for a trivial path.
    pub fn to_text(&self) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", self.source);
        }
        let names: Vec<String> = self.arrows.iter().rev().map(|a| format!("a{a}")).collect();
        names.join("*")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

impl Relation {
    pub fn monomial(p: Path) -> Relation {
        Relation {
            terms: vec![(Scalar::one(), p)],
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Collects equal paths, drops zero terms, sorts terms and makes the first coefficient positive.
    fn normalized(self) -> Relation {
        let mut acc: BTreeMap<Path, Scalar> = BTreeMap::new();
        for (c, p) in self.terms {
            *acc.entry(p).or_insert_with(Scalar::zero) += c;
        }
        let mut terms: Vec<(Scalar, Path)> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| (c, p))
            .collect();
        terms.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.1.cmp(&b.1)));
        if let Some((c, _)) = terms.first() {
            if *c < Scalar::zero() {
                for t in &mut terms {
                    t.0 = -t.0;
                }
            }
        }
        Relation { terms }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresentationKind {
    Ordinary,
    StablyBiserial,
    Reduced,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    /// The arrow the cycle ends with.
    pub arrow: HalfEdge,
    pub vertex: usize,
    /// `C_α` in traversal order, one full turn around the vertex.
    pub path: Path,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub kind: PresentationKind,
    /// Quiver vertices are the edges of the graph.
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
    /// `pi[h]` is the arrow id `π(α_h) = α_{h⁻}`, defined for every half-edge.
    pub pi: Vec<HalfEdge>,
    /// One cycle per half-edge, indexed by the arrow it ends with.
    pub cycles: Vec<Cycle>,
    pub relations: Vec<Relation>,
}

impl QuiverPresentation {
    pub fn arrow(&self, id: HalfEdge) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.id == id)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for a in &self.arrows {
            writeln!(out, "arrow a{} e{} -> e{}", a.id, a.source, a.target).unwrap();
        }
        for r in &self.relations {
            let terms: Vec<String> = r
                .terms
                .iter()
                .map(|(c, p)| {
                    let sign = if *c < Scalar::zero() { "-" } else { "+" };
                    format!("{sign}{} {}", c.abs(), p.to_text())
                })
                .collect();
            writeln!(out, "rel {}", terms.join(" ")).unwrap();
        }
        out
    }
}

pub fn arrow_of(g: &BrauerGraph, h: HalfEdge) -> Arrow {
    let r = g.ribbon();
    Arrow {
        id: h,
        source: r.edge_of(h),
        target: r.edge_of(r.next(h)),
    }
}

/// The path of the given length that starts with `α_h` and keeps turning around the vertex.
pub fn turn_path(g: &BrauerGraph, h: HalfEdge, len: usize) -> Path {
    let r = g.ribbon();
    let mut arrows = Vec::with_capacity(len);
    let mut x = h;
    for _ in 0..len {
        arrows.push(x);
        x = r.next(x);
    }
    Path {
        source: r.edge_of(h),
        target: r.edge_of(x),
        arrows,
    }
}

/// `C^m` starting with `α_h`: the longest nonzero path starting there.
pub fn full_turn(g: &BrauerGraph, h: HalfEdge) -> Path {
    turn_path(g, h, g.cycle_length(g.ribbon().vertex_of(h)))
}

fn monomial_pair(g: &BrauerGraph, first: HalfEdge, second: HalfEdge) -> Path {
    let (a, b) = (arrow_of(g, first), arrow_of(g, second));
    Path {
        source: a.source,
        target: b.target,
        arrows: vec![first, second],
    }
}

pub fn build_quiver(g: &BrauerGraph, kind: PresentationKind) -> Result<QuiverPresentation, AlgebraError> {
    let r = g.ribbon();
    let n = r.half_edge_count();
    if kind != PresentationKind::StablyBiserial && !g.deformed().is_empty() {
        return Err(AlgebraError::DeformedNotSupported);
    }
    let arrows: Vec<Arrow> = (0..n).map(|h| arrow_of(g, h)).collect();
    let pi: Vec<HalfEdge> = (0..n).map(|h| r.prev(h)).collect();
    let cycles = (0..n)
        .map(|h| {
            let start = r.next(h);
            Cycle {
                arrow: h,
                vertex: r.vertex_of(h),
                path: turn_path(g, start, r.valency(r.vertex_of(h))),
            }
        })
        .collect();
    let deformed = g.deformed();
    let mut relations = Vec::new();
    // zero relations: β then α vanishes unless β = π(α)
    for beta in 0..n {
        for alpha in 0..n {
            if arrows[beta].target != arrows[alpha].source || pi[alpha] == beta {
                continue;
            }
            if kind == PresentationKind::StablyBiserial && deformed.contains_key(&alpha) {
                continue;
            }
            relations.push(Relation::monomial(monomial_pair(g, beta, alpha)));
        }
    }
    // commutativity relations, one per edge: the two cycle powers ending at it agree
    for (h1, h2) in r.edges() {
        relations.push(Relation {
            terms: vec![(Scalar::one(), full_turn(g, h1)), (-Scalar::one(), full_turn(g, h2))],
        });
    }
    if kind == PresentationKind::StablyBiserial {
        for (&h, &t) in deformed {
            let square = monomial_pair(g, h, h);
            relations.push(Relation {
                terms: vec![(Scalar::one(), square), (-t, full_turn(g, r.next(h)))],
            });
        }
        for start in 0..n {
            let c = full_turn(g, start);
            for beta in 0..n {
                if arrows[beta].target == c.source {
                    let p = Path {
                        source: arrows[beta].source,
                        target: c.target,
                        arrows: vec![beta],
                    };
                    relations.push(Relation::monomial(p.then(&c).expect("composable")));
                }
            }
        }
    }
    let mut pres = QuiverPresentation {
        kind,
        vertex_count: r.edge_count(),
        arrows,
        pi,
        cycles,
        relations,
    };
    if kind == PresentationKind::Reduced {
        reduce_leaf_loops(g, &mut pres);
    }
    let mut seen = Vec::new();
    for rel in std::mem::take(&mut pres.relations) {
        let rel = rel.normalized();
        if !rel.terms.is_empty() && !seen.contains(&rel) {
            seen.push(rel);
        }
    }
    pres.relations = seen;
    Ok(pres)
}

/// Removes the loop arrows at leaves of multiplicity 1: such a loop equals the cycle power
/// around the other end of its edge, so it is substituted away.
fn reduce_leaf_loops(g: &BrauerGraph, pres: &mut QuiverPresentation) {
    let r = g.ribbon();
    let is_leaf_loop = |h: HalfEdge| r.next(h) == h && g.mult_at(r.vertex_of(h)) == 1;
    let mut substitute: BTreeMap<HalfEdge, Path> = BTreeMap::new();
    for h in 0..r.half_edge_count() {
        let other = r.pair(h);
        if !is_leaf_loop(h) {
            continue;
        }
        // a single edge with two such leaves keeps one loop
        if is_leaf_loop(other) && other > h {
            continue;
        }
        substitute.insert(h, full_turn(g, other));
    }
    let expand = |p: &Path| -> Path {
        let mut arrows = Vec::new();
        for a in &p.arrows {
            match substitute.get(a) {
                Some(s) => arrows.extend_from_slice(&s.arrows),
                None => arrows.push(*a),
            }
        }
        Path {
            source: p.source,
            target: p.target,
            arrows,
        }
    };
    pres.relations = pres
        .relations
        .iter()
        .map(|rel| Relation {
            terms: rel.terms.iter().map(|(c, p)| (*c, expand(p))).collect(),
        })
        .collect();
    pres.arrows.retain(|a| !substitute.contains_key(&a.id));
}

/// True iff the quiver is an oriented cycle on `n > 1` vertices with every arrow doubled.
pub fn is_caterpillar_quiver(pres: &QuiverPresentation) -> bool {
    let n = pres.vertex_count;
    if n < 2 || pres.arrows.len() != 2 * n {
        return false;
    }
    let mut succ = vec![usize::MAX; n];
    let mut out_degree = vec![0; n];
    for a in &pres.arrows {
        if a.source == a.target {
            return false;
        }
        if succ[a.source] != usize::MAX && succ[a.source] != a.target {
            return false;
        }
        succ[a.source] = a.target;
        out_degree[a.source] += 1;
    }
    if out_degree.iter().any(|&d| d != 2) {
        return false;
    }
    let mut v = 0;
    for step in 1..=n {
        v = succ[v];
        if v == 0 {
            return step == n;
        }
    }
    false
}
