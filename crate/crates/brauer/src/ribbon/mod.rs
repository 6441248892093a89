//! Ribbon graphs as a pair of permutations on half-edges, and Brauer graphs on top of them.
//!
//! A ribbon graph is given by `next` (the counterclockwise successor of a half-edge around its
//! vertex) and `pair` (the other half of the same edge). Vertices are the orbits of `next`,
//! edges the orbits of `pair`, faces the orbits of `pair ∘ next⁻¹`.

mod canon;
mod enumerate;

pub use canon::{canonical_form, canonical_relabeling, isomorphic_brute_force, CanonicalForm};
pub use enumerate::{enumerate, enumerate_ribbon_graphs};

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::Scalar;

pub type HalfEdge = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RibbonError {
    #[error("next and pair have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("a ribbon graph needs at least one edge")]
    Empty,
    #[error("next is not a permutation: half-edge {0} is hit twice or out of range")]
    NotPermutation(HalfEdge),
    #[error("pair has a fixed point at half-edge {0}")]
    PairHasFixedPoint(HalfEdge),
    #[error("pair is not an involution at half-edge {0}")]
    PairNotInvolution(HalfEdge),
    #[error("graph is disconnected: half-edge {0} is not reachable from half-edge 0")]
    Disconnected(HalfEdge),
    #[error("V - E + F is odd; face tracing is inconsistent")]
    InternalParityError,
    #[error("multiplicity list has {got} entries, graph has {expected} vertices")]
    MultLength { expected: usize, got: usize },
    #[error("vertex {0} has multiplicity 0")]
    ZeroMultiplicity(usize),
    #[error("deformed loop at half-edge {0} is invalid: its edge is not a loop bounding a perimeter-1 face")]
    DeformedLoopInvalid(HalfEdge),
    #[error("deformed loop at half-edge {0} has scalar 0")]
    DeformedScalarZero(HalfEdge),
}

/// Which permutation traces faces. Both choices are inverse to each other and have the same
/// orbits; the choice fixes the direction in which a face is walked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceConvention {
    /// φ(h) = pair(next⁻¹(h))
    PairAfterPrev,
    /// φ(h) = next(pair(h))
    NextAfterPair,
}

pub const FACE_CONVENTION: FaceConvention = FaceConvention::PairAfterPrev;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RibbonGraph {
    next: Vec<HalfEdge>,
    prev: Vec<HalfEdge>,
    pair: Vec<HalfEdge>,
    vertex_of: Vec<usize>,
    edge_of: Vec<usize>,
    vertex_count: usize,
    edge_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceData {
    /// Each face as its cyclic sequence of half-edges, starting at its smallest half-edge.
    /// Faces are sorted by that smallest half-edge.
    pub orbits: Vec<Vec<HalfEdge>>,
    /// Sorted perimeters.
    pub perimeters: Vec<usize>,
}

/// Orbits of a permutation, each starting at its minimum, sorted by minimum; plus orbit index per point.
fn orbits(perm: &[usize]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut index = vec![usize::MAX; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if index[start] != usize::MAX {
            continue;
        }
        let mut orbit = vec![start];
        index[start] = out.len();
        let mut h = perm[start];
        while h != start {
            index[h] = out.len();
            orbit.push(h);
            h = perm[h];
        }
        out.push(orbit);
    }
    (out, index)
}

impl RibbonGraph {
    pub fn new(next: Vec<HalfEdge>, pair: Vec<HalfEdge>) -> Result<Self, RibbonError> {
        let n = next.len();
        if pair.len() != n {
            return Err(RibbonError::LengthMismatch(n, pair.len()));
        }
        if n == 0 {
            return Err(RibbonError::Empty);
        }
        let mut prev = vec![usize::MAX; n];
        for (h, &x) in next.iter().enumerate() {
            if x >= n || prev[x] != usize::MAX {
                return Err(RibbonError::NotPermutation(x.min(n)));
            }
            prev[x] = h;
        }
        for (h, &x) in pair.iter().enumerate() {
            if x >= n {
                return Err(RibbonError::PairNotInvolution(h));
            }
            if x == h {
                return Err(RibbonError::PairHasFixedPoint(h));
            }
            if pair[x] != h {
                return Err(RibbonError::PairNotInvolution(h));
            }
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(h) = queue.pop_front() {
            for x in [next[h], pair[h]] {
                if !seen[x] {
                    seen[x] = true;
                    queue.push_back(x);
                }
            }
        }
        if let Some(h) = seen.iter().position(|s| !s) {
            return Err(RibbonError::Disconnected(h));
        }
        let (vs, vertex_of) = orbits(&next);
        let (es, edge_of) = orbits(&pair);
        Ok(RibbonGraph {
            next,
            prev,
            pair,
            vertex_of,
            edge_of,
            vertex_count: vs.len(),
            edge_count: es.len(),
        })
    }

    pub fn half_edge_count(&self) -> usize {
        self.next.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn next(&self, h: HalfEdge) -> HalfEdge {
        self.next[h]
    }

    pub fn prev(&self, h: HalfEdge) -> HalfEdge {
        self.prev[h]
    }

    pub fn pair(&self, h: HalfEdge) -> HalfEdge {
        self.pair[h]
    }

    pub fn next_perm(&self) -> &[HalfEdge] {
        &self.next
    }

    pub fn pair_perm(&self) -> &[HalfEdge] {
        &self.pair
    }

    /// Vertex index of a half-edge; vertices are numbered by their smallest half-edge.
    pub fn vertex_of(&self, h: HalfEdge) -> usize {
        self.vertex_of[h]
    }

    /// Edge index of a half-edge; edges are numbered by their smallest half-edge.
    pub fn edge_of(&self, h: HalfEdge) -> usize {
        self.edge_of[h]
    }

    /// Cyclic order at each vertex, starting at the smallest half-edge.
    pub fn vertices(&self) -> Vec<Vec<HalfEdge>> {
        orbits(&self.next).0
    }

    /// Both halves of each edge, smaller first.
    pub fn edges(&self) -> Vec<(HalfEdge, HalfEdge)> {
        (0..self.half_edge_count())
            .filter(|&h| h < self.pair[h])
            .map(|h| (h, self.pair[h]))
            .collect()
    }

    pub fn edge_halves(&self, e: usize) -> (HalfEdge, HalfEdge) {
        self.edges()[e]
    }

    pub fn valency(&self, v: usize) -> usize {
        self.vertex_of.iter().filter(|&&x| x == v).count()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (a, b) = self.edge_halves(e);
        self.vertex_of[a] == self.vertex_of[b]
    }

    pub fn face_permutation(&self, convention: FaceConvention) -> Vec<HalfEdge> {
        (0..self.half_edge_count())
            .map(|h| match convention {
                FaceConvention::PairAfterPrev => self.pair[self.prev[h]],
                FaceConvention::NextAfterPair => self.next[self.pair[h]],
            })
            .collect()
    }

    pub fn faces_with(&self, convention: FaceConvention) -> FaceData {
        let (orbits, _) = orbits(&self.face_permutation(convention));
        let mut perimeters: Vec<usize> = orbits.iter().map(Vec::len).collect();
        perimeters.sort_unstable();
        FaceData { orbits, perimeters }
    }

    pub fn faces(&self) -> FaceData {
        self.faces_with(FACE_CONVENTION)
    }

    pub fn genus(&self) -> Result<usize, RibbonError> {
        let v = self.vertex_count as i64;
        let e = self.edge_count as i64;
        let f = self.faces().orbits.len() as i64;
        let twice = 2 - v + e - f;
        if twice.rem_euclid(2) != 0 || twice < 0 {
            return Err(RibbonError::InternalParityError);
        }
        Ok((twice / 2) as usize)
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![None; self.vertex_count];
        color[0] = Some(false);
        let mut queue = VecDeque::from([0usize]);
        let vertices = self.vertices();
        while let Some(v) = queue.pop_front() {
            let c = color[v].unwrap();
            for &h in &vertices[v] {
                let w = self.vertex_of[self.pair[h]];
                match color[w] {
                    None => {
                        color[w] = Some(!c);
                        queue.push_back(w);
                    }
                    Some(d) if d == c => return false,
                    Some(_) => {}
                }
            }
        }
        true
    }

    /// Reverses the cyclic order at every vertex.
    pub fn mirror(&self) -> RibbonGraph {
        RibbonGraph::new(self.prev.clone(), self.pair.clone()).expect("mirror of a valid graph")
    }
}

/// Optional names carried for file round trips.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labels {
    pub half_edges: Vec<String>,
    /// Indexed by vertex index.
    pub vertices: Vec<String>,
}

/// A ribbon graph with vertex multiplicities and optional deformed loops.
///
/// A deformed loop is stored under the half-edge `h` with `next(h) == pair(h)`, so that the
/// quiver loop `α_h` is the deformed arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrauerGraph {
    ribbon: RibbonGraph,
    mult: Vec<u32>,
    deformed: BTreeMap<HalfEdge, Scalar>,
    labels: Option<Labels>,
}

impl BrauerGraph {
    pub fn new(ribbon: RibbonGraph, mult: Vec<u32>, deformed: BTreeMap<HalfEdge, Scalar>) -> Result<Self, RibbonError> {
        if mult.len() != ribbon.vertex_count() {
            return Err(RibbonError::MultLength {
                expected: ribbon.vertex_count(),
                got: mult.len(),
            });
        }
        if let Some(v) = mult.iter().position(|&m| m == 0) {
            return Err(RibbonError::ZeroMultiplicity(v));
        }
        for (&h, t) in &deformed {
            if h >= ribbon.half_edge_count() || ribbon.next(h) != ribbon.pair(h) {
                return Err(RibbonError::DeformedLoopInvalid(h));
            }
            if *t == Scalar::from_integer(0) {
                return Err(RibbonError::DeformedScalarZero(h));
            }
        }
        Ok(BrauerGraph {
            ribbon,
            mult,
            deformed,
            labels: None,
        })
    }

    /// A graph with every multiplicity 1 and no deformed loops.
    pub fn plain(ribbon: RibbonGraph) -> Self {
        let v = ribbon.vertex_count();
        BrauerGraph::new(ribbon, vec![1; v], BTreeMap::new()).expect("plain Brauer graph")
    }

    pub fn from_permutations(next: Vec<HalfEdge>, pair: Vec<HalfEdge>, mult: Vec<u32>) -> Result<Self, RibbonError> {
        BrauerGraph::new(RibbonGraph::new(next, pair)?, mult, BTreeMap::new())
    }

    pub fn with_labels(mut self, labels: Labels) -> Self {
        assert_eq!(labels.half_edges.len(), self.ribbon.half_edge_count());
        assert_eq!(labels.vertices.len(), self.ribbon.vertex_count());
        self.labels = Some(labels);
        self
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn ribbon(&self) -> &RibbonGraph {
        &self.ribbon
    }

    pub fn mult(&self) -> &[u32] {
        &self.mult
    }

    pub fn mult_at(&self, v: usize) -> u32 {
        self.mult[v]
    }

    pub fn deformed(&self) -> &BTreeMap<HalfEdge, Scalar> {
        &self.deformed
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_ref()
    }

    pub fn half_edge_name(&self, h: HalfEdge) -> String {
        match &self.labels {
            Some(l) => l.half_edges[h].clone(),
            None => h.to_string(),
        }
    }

    pub fn vertex_name(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l.vertices[v].clone(),
            None => format!("v{v}"),
        }
    }

    /// Edge index whose half-edge carries the given name, accepting the name of either half.
    pub fn edge_by_name(&self, name: &str) -> Option<usize> {
        (0..self.ribbon.half_edge_count())
            .find(|&h| self.half_edge_name(h) == name)
            .map(|h| self.ribbon.edge_of(h))
    }

    pub fn vertex_count(&self) -> usize {
        self.ribbon.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.ribbon.edge_count()
    }

    pub fn faces(&self) -> FaceData {
        self.ribbon.faces()
    }

    pub fn genus(&self) -> Result<usize, RibbonError> {
        self.ribbon.genus()
    }

    pub fn is_bipartite(&self) -> bool {
        self.ribbon.is_bipartite()
    }

    /// `m(v) · val(v)`, the length of the longest nonzero path around vertex `v`.
    pub fn cycle_length(&self, v: usize) -> usize {
        self.mult[v] as usize * self.ribbon.valency(v)
    }

    pub fn mirror(&self) -> BrauerGraph {
        let ribbon = self.ribbon.mirror();
        // vertex orbits are unchanged as sets, so indices and multiplicities carry over
        let deformed = self.deformed.iter().map(|(&h, t)| (self.ribbon.pair(h), *t)).collect();
        let mut g = BrauerGraph::new(ribbon, self.mult.clone(), deformed).expect("mirror");
        g.labels = self.labels.clone();
        g
    }

    /// Applies a relabeling `old -> new` of half-edges. Labels are dropped.
    pub fn relabel(&self, map: &[HalfEdge]) -> BrauerGraph {
        let n = map.len();
        let mut next = vec![0; n];
        let mut pair = vec![0; n];
        for h in 0..n {
            next[map[h]] = map[self.ribbon.next(h)];
            pair[map[h]] = map[self.ribbon.pair(h)];
        }
        let ribbon = RibbonGraph::new(next, pair).expect("relabeling preserves validity");
        let mut mult = vec![0; ribbon.vertex_count()];
        for h in 0..n {
            mult[ribbon.vertex_of(map[h])] = self.mult[self.ribbon.vertex_of(h)];
        }
        let deformed = self.deformed.iter().map(|(&h, t)| (map[h], *t)).collect();
        BrauerGraph::new(ribbon, mult, deformed).expect("relabeling preserves validity")
    }

    /// Brauer star with `n` edges, central multiplicity `m`; half-edges `2i` at the centre.
    pub fn star(n: usize, m: u32) -> BrauerGraph {
        let mut next = vec![0; 2 * n];
        let mut pair = vec![0; 2 * n];
        for i in 0..n {
            next[2 * i] = 2 * ((i + 1) % n);
            next[2 * i + 1] = 2 * i + 1;
            pair[2 * i] = 2 * i + 1;
            pair[2 * i + 1] = 2 * i;
        }
        let ribbon = RibbonGraph::new(next, pair).expect("star");
        let mut mult = vec![1; ribbon.vertex_count()];
        mult[ribbon.vertex_of(0)] = m;
        BrauerGraph::new(ribbon, mult, BTreeMap::new()).expect("star")
    }

    /// Path with `n` edges and all multiplicities 1.
    pub fn path(n: usize) -> BrauerGraph {
        // edge i has halves 2i (left end) and 2i+1 (right end)
        let mut next: Vec<usize> = (0..2 * n).collect();
        for i in 0..n.saturating_sub(1) {
            next[2 * i + 1] = 2 * i + 2;
            next[2 * i + 2] = 2 * i + 1;
        }
        let pair = (0..2 * n).map(|h| h ^ 1).collect();
        BrauerGraph::plain(RibbonGraph::new(next, pair).expect("path"))
    }

    /// Cycle with `n` edges drawn in the plane, all multiplicities 1.
    pub fn cycle(n: usize) -> BrauerGraph {
        // edge i joins vertex i (half 2i) to vertex i+1 (half 2i+1)
        let mut next = vec![0; 2 * n];
        for i in 0..n {
            let incoming = 2 * ((i + n - 1) % n) + 1;
            next[2 * i] = incoming;
            next[incoming] = 2 * i;
        }
        let pair = (0..2 * n).map(|h| h ^ 1).collect();
        BrauerGraph::plain(RibbonGraph::new(next, pair).expect("cycle"))
    }

    /// A single loop whose two halves are adjacent.
    pub fn single_loop(m: u32) -> BrauerGraph {
        BrauerGraph::from_permutations(vec![1, 0], vec![1, 0], vec![m]).expect("loop")
    }

    /// A single edge with the given end multiplicities.
    pub fn single_edge(m0: u32, m1: u32) -> BrauerGraph {
        BrauerGraph::from_permutations(vec![0, 1], vec![1, 0], vec![m0, m1]).expect("edge")
    }
}
