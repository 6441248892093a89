//! Kauer moves, the tilting complexes behind them, and searches for mutation sequences.
//!
//! A move at edge `j` slides the moved half-edges of `j` one step forward along the next
//! edge. Half-edge ids, pairings, names and multiplicities survive the move, so an edge can
//! be followed through a sequence of moves by the name of its smaller half.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::invariants::{cartan_matrix, derived_equivalent, EquivalenceVerdict, FailedCondition};
use crate::ribbon::{canonical_form, BrauerGraph, CanonicalForm, HalfEdge, Labels, RibbonError, RibbonGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KauerError {
    #[error("no edge {0}")]
    NoSuchEdge(usize),
    #[error("Kauer moves need at least two edges")]
    TooSmall,
    #[error("move produced an invalid graph: {0}")]
    Invalid(#[from] RibbonError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KauerCase {
    /// One end of the edge has valency 1.
    Leaf,
    /// A loop bounding a face of perimeter 1.
    LoopPerimeterOne,
    Generic,
}

/// Where moved half-edges land. `Mirrored` conjugates the move by the mirror and is only
/// used to check that the default is the one matching the tilting complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Insertion {
    AfterFarHalf,
    Mirrored,
}

pub const INSERTION: Insertion = Insertion::AfterFarHalf;

/// One summand of the two-term complex `T_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexTerm {
    pub degree: i32,
    /// Edge index in the graph before the move.
    pub projective: usize,
    /// Component of the differential landing here, as a path `a<h>*...`; empty for the source.
    pub map: String,
}

/// `T_j = (P_j -> ⊕ P_k)`, with `P_j` in degree -1; the other summands are `P_i`, `i ≠ j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TiltingDescriptor {
    pub edge: usize,
    pub case: KauerCase,
    pub terms: Vec<ComplexTerm>,
}

pub fn classify_edge(g: &BrauerGraph, e: usize) -> Result<KauerCase, KauerError> {
    let r = g.ribbon();
    if e >= r.edge_count() {
        return Err(KauerError::NoSuchEdge(e));
    }
    let (h1, h2) = r.edge_halves(e);
    Ok(if r.is_loop(e) {
        if r.next(h1) == h2 || r.next(h2) == h1 {
            KauerCase::LoopPerimeterOne
        } else {
            KauerCase::Generic
        }
    } else if r.valency(r.vertex_of(h1)) == 1 || r.valency(r.vertex_of(h2)) == 1 {
        KauerCase::Leaf
    } else {
        KauerCase::Generic
    })
}

/// Consecutive runs of half-edges to move, each with the half-edge it is re-inserted after.
fn blocks(r: &RibbonGraph, e: usize, case: KauerCase) -> Vec<(Vec<HalfEdge>, HalfEdge)> {
    let (h1, h2) = r.edge_halves(e);
    match case {
        KauerCase::Leaf => {
            let h = if r.valency(r.vertex_of(h1)) == 1 { h2 } else { h1 };
            vec![(vec![h], r.pair(r.next(h)))]
        }
        KauerCase::LoopPerimeterOne => {
            let (a, b) = if r.next(h1) == h2 { (h1, h2) } else { (h2, h1) };
            vec![(vec![a, b], r.pair(r.next(b)))]
        }
        KauerCase::Generic => vec![(vec![h1], r.pair(r.next(h1))), (vec![h2], r.pair(r.next(h2)))],
    }
}

fn arrow_text(h: HalfEdge) -> String {
    format!("a{h}")
}

fn descriptor(r: &RibbonGraph, e: usize, case: KauerCase) -> TiltingDescriptor {
    let source = ComplexTerm {
        degree: -1,
        projective: e,
        map: String::new(),
    };
    let target = |h: HalfEdge, map: String| ComplexTerm {
        degree: 0,
        projective: r.edge_of(r.next(h)),
        map,
    };
    let mut terms = vec![source];
    match case {
        KauerCase::Leaf | KauerCase::Generic => {
            for (block, _) in blocks(r, e, case) {
                terms.push(target(block[0], arrow_text(block[0])));
            }
        }
        KauerCase::LoopPerimeterOne => {
            let block = &blocks(r, e, case)[0].0;
            let (gamma, alpha) = (block[0], block[1]);
            terms.push(target(alpha, arrow_text(alpha)));
            terms.push(target(alpha, format!("{}*{}", arrow_text(alpha), arrow_text(gamma))));
        }
    }
    TiltingDescriptor { edge: e, case, terms }
}

pub fn kauer_move(g: &BrauerGraph, e: usize) -> Result<(BrauerGraph, TiltingDescriptor), KauerError> {
    kauer_move_with(g, e, INSERTION)
}

pub fn kauer_move_with(
    g: &BrauerGraph,
    e: usize,
    insertion: Insertion,
) -> Result<(BrauerGraph, TiltingDescriptor), KauerError> {
    if insertion == Insertion::Mirrored {
        let m = g.mirror();
        let (moved, desc) = kauer_move_with(&m, e, Insertion::AfterFarHalf)?;
        return Ok((moved.mirror(), desc));
    }
    let case = classify_edge(g, e)?;
    if g.edge_count() < 2 {
        return Err(KauerError::TooSmall);
    }
    let r = g.ribbon();
    let plan = blocks(r, e, case);
    let moved: BTreeSet<HalfEdge> = plan.iter().flat_map(|(b, _)| b.iter().copied()).collect();
    let mut next = r.next_perm().to_vec();
    for (block, _) in &plan {
        let (first, last) = (block[0], *block.last().unwrap());
        next[r.prev(first)] = r.next(last);
    }
    for (block, anchor) in &plan {
        let (first, last) = (block[0], *block.last().unwrap());
        next[last] = next[*anchor];
        next[*anchor] = first;
    }
    let ribbon = RibbonGraph::new(next, r.pair_perm().to_vec())?;
    let mut witness = vec![None; ribbon.vertex_count()];
    for h in (0..r.half_edge_count()).filter(|h| !moved.contains(h)) {
        witness[ribbon.vertex_of(h)].get_or_insert(r.vertex_of(h));
    }
    let old_vertex: Vec<usize> = witness
        .into_iter()
        .map(|w| w.expect("every vertex keeps a half-edge"))
        .collect();
    let mult = old_vertex.iter().map(|&v| g.mult_at(v)).collect();
    let mut moved_graph = BrauerGraph::new(ribbon, mult, g.deformed().clone())?;
    if let Some(l) = g.labels() {
        moved_graph = moved_graph.with_labels(Labels {
            half_edges: l.half_edges.clone(),
            vertices: old_vertex.iter().map(|&v| l.vertices[v].clone()).collect(),
        });
    }
    Ok((moved_graph, descriptor(r, e, case)))
}

/// Name of the smaller half of edge `e`; stable under Kauer moves.
pub fn edge_label(g: &BrauerGraph, e: usize) -> String {
    g.half_edge_name(g.ribbon().edge_halves(e).0)
}

/// The Euler form of the tilting complex, `X·C·Xᵀ`, indexed by the edges of the graph before
/// the move. Here row `i` of `X` is the class of the `i`-th summand in the Grothendieck group.
pub fn tilted_cartan(g: &BrauerGraph, d: &TiltingDescriptor) -> Vec<Vec<i64>> {
    let c = cartan_matrix(g);
    let n = c.len();
    let mut x: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    x[d.edge] = vec![0; n];
    for t in &d.terms {
        x[d.edge][t.projective] += if t.degree % 2 == 0 { 1 } else { -1 };
    }
    let xc: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| x[i][k] * c[k][j]).sum()).collect())
        .collect();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| xc[i][k] * x[j][k]).sum()).collect())
        .collect()
}

/// Whether the Cartan matrix of the moved graph is the Euler form of the tilting complex, with
/// edges matched by their half-edges.
pub fn cartan_consistent(g: &BrauerGraph, moved: &BrauerGraph, d: &TiltingDescriptor) -> bool {
    let expected = tilted_cartan(g, d);
    let actual = cartan_matrix(moved);
    let (r, s) = (g.ribbon(), moved.ribbon());
    let to_new: Vec<usize> = (0..r.edge_count()).map(|e| s.edge_of(r.edge_halves(e).0)).collect();
    (0..to_new.len()).all(|i| (0..to_new.len()).all(|j| expected[i][j] == actual[to_new[i]][to_new[j]]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MutationStep {
    pub edge: String,
    pub result: CanonicalForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MutationSequence {
    pub source: CanonicalForm,
    pub target: CanonicalForm,
    pub steps: Vec<MutationStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "details")]
pub enum SearchOutcome {
    Found(MutationSequence),
    NotFound { max_depth: usize },
    NotEquivalent(Vec<FailedCondition>),
    OutOfScope(String),
}

/// Applies moves named by edge labels in turn.
pub fn replay(g: &BrauerGraph, edges: &[String]) -> Result<BrauerGraph, KauerError> {
    let mut cur = g.clone();
    for name in edges {
        let e = (0..cur.edge_count())
            .find(|&e| edge_label(&cur, e) == *name)
            .ok_or(KauerError::NoSuchEdge(usize::MAX))?;
        cur = kauer_move(&cur, e)?.0;
    }
    Ok(cur)
}

/// Breadth-first search over isomorphism classes reachable from `g` by Kauer moves. The inverse
/// of a move is a power of the same move, so searching forward from one side suffices.
/// Returns, for each class reached, a shortest sequence of edge labels.
fn explore(
    g: &BrauerGraph,
    max_depth: usize,
    mut stop: impl FnMut(&CanonicalForm) -> bool,
) -> BTreeMap<CanonicalForm, Vec<String>> {
    let mut seen = BTreeMap::new();
    let start = canonical_form(g);
    seen.insert(start.clone(), Vec::new());
    if stop(&start) {
        return seen;
    }
    let mut queue = VecDeque::from([(g.clone(), Vec::<String>::new())]);
    while let Some((cur, path)) = queue.pop_front() {
        if path.len() >= max_depth {
            continue;
        }
        for e in 0..cur.edge_count() {
            let Ok((moved, _)) = kauer_move(&cur, e) else { continue };
            let form = canonical_form(&moved);
            if seen.contains_key(&form) {
                continue;
            }
            let mut p = path.clone();
            p.push(edge_label(&cur, e));
            seen.insert(form.clone(), p.clone());
            if stop(&form) {
                return seen;
            }
            queue.push_back((moved, p));
        }
    }
    seen
}

pub fn mutation_search(g1: &BrauerGraph, g2: &BrauerGraph, max_depth: usize) -> SearchOutcome {
    match derived_equivalent(g1, g2) {
        EquivalenceVerdict::OutOfScope(reason) => return SearchOutcome::OutOfScope(reason),
        EquivalenceVerdict::NotEquivalent(failed) => return SearchOutcome::NotEquivalent(failed),
        EquivalenceVerdict::Equivalent => {}
    }
    let target = canonical_form(g2);
    let seen = explore(g1, max_depth, |f| *f == target);
    let Some(labels) = seen.get(&target) else {
        return SearchOutcome::NotFound { max_depth };
    };
    let mut steps = Vec::new();
    let mut cur = g1.clone();
    for name in labels {
        cur = replay(&cur, std::slice::from_ref(name)).expect("labels come from the search");
        steps.push(MutationStep {
            edge: name.clone(),
            result: canonical_form(&cur),
        });
    }
    SearchOutcome::Found(MutationSequence {
        source: canonical_form(g1),
        target,
        steps,
    })
}

/// Groups graph indices by mutual reachability within `max_depth` moves of each graph.
pub fn reachability_classes(gs: &[BrauerGraph], max_depth: usize) -> Vec<Vec<usize>> {
    let forms: Vec<CanonicalForm> = gs.iter().map(canonical_form).collect();
    let mut index: BTreeMap<&CanonicalForm, usize> = BTreeMap::new();
    for (i, f) in forms.iter().enumerate() {
        index.entry(f).or_insert(i);
    }
    let mut parent: Vec<usize> = (0..gs.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, g) in gs.iter().enumerate() {
        for form in explore(g, max_depth, |_| false).keys() {
            if let Some(&j) = index.get(form) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..gs.len() {
        let root = find(&mut parent, i);
        classes.entry(root).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = classes
        .into_values()
        .map(|mut c| {
            c.sort_by(|&a, &b| forms[a].cmp(&forms[b]));
            c
        })
        .collect();
    out.sort_by(|a, b| forms[a[0]].cmp(&forms[b[0]]));
    out
}
