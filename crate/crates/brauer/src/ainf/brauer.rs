use std::collections::BTreeMap;

use num_traits::One;

use super::arcs::GradedArcSystem;
use super::category::{sign, AInfCategory, Element};
use super::SignConvention;
use crate::linalg::SparseVec;
use crate::ribbon::HalfEdge;
use crate::Scalar;

/// Basis of the modified Brauer graph algebra.
///
/// `Path(h, l)` is the path `α_h, α_{next h}, …` of `l` arrows with `1 ≤ l < m(v)·val(v)`.
/// The two full turns at an arc `X` with halves `h1 < h2` are `(h1, L1) = S_X` and
/// `(h2, L2) = (-1)^{ω(X)} S_X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BrauerElement {
    Identity(usize),
    Path(HalfEdge, usize),
    Socle(usize),
}

/// The Brauer graph category of a graded arc system, with its basis described.
#[derive(Debug, Clone)]
pub struct BrauerCategory {
    pub system: GradedArcSystem,
    pub kinds: Vec<BrauerElement>,
    pub category: AInfCategory,
    /// Input tuples produced by two operation shapes with different outputs; the earlier shape
    /// in the order (Mu1), (Mu2), (HigherOps5) wins.
    pub conflicts: Vec<Vec<usize>>,
    index: BTreeMap<BrauerElement, usize>,
}

impl BrauerCategory {
    pub fn index_of(&self, e: BrauerElement) -> Option<usize> {
        self.index.get(&e).copied()
    }

    fn cycle_len(&self, h: HalfEdge) -> usize {
        let r = self.system.graph.ribbon();
        self.system.graph.cycle_length(r.vertex_of(h))
    }

    fn advance(&self, h: HalfEdge, k: usize) -> HalfEdge {
        let r = self.system.graph.ribbon();
        (0..k).fold(h, |x, _| r.next(x))
    }

    fn retreat(&self, h: HalfEdge, k: usize) -> HalfEdge {
        let r = self.system.graph.ribbon();
        (0..k).fold(h, |x, _| r.prev(x))
    }

    /// The path of `len` arrows from `h` as `sign · basis element`; `None` if it vanishes.
    pub fn path(&self, h: HalfEdge, len: usize) -> Option<(Scalar, usize)> {
        let r = self.system.graph.ribbon();
        let l = self.cycle_len(h);
        let kind = match len {
            0 => BrauerElement::Identity(r.edge_of(h)),
            x if x < l => BrauerElement::Path(h, x),
            x if x == l => {
                let e = r.edge_of(h);
                let s = if h == r.edge_halves(e).0 {
                    Scalar::one()
                } else {
                    sign(self.system.windings[e])
                };
                return Some((s, self.index[&BrauerElement::Socle(e)]));
            }
            _ => return None,
        };
        Some((Scalar::one(), self.index[&kind]))
    }

    /// `q ∘ p`: first `p`, then `q`.
    fn compose(&self, p: usize, q: usize) -> Option<(Scalar, usize)> {
        match (self.kinds[p], self.kinds[q]) {
            (BrauerElement::Identity(_), _) => Some((Scalar::one(), q)),
            (_, BrauerElement::Identity(_)) => Some((Scalar::one(), p)),
            (BrauerElement::Path(h, l1), BrauerElement::Path(h2, l2)) if h2 == self.advance(h, l1) => {
                self.path(h, l1 + l2)
            }
            _ => None,
        }
    }
}

fn path_degree(s: &GradedArcSystem, h: HalfEdge, len: usize) -> i64 {
    let r = s.graph.ribbon();
    let mut x = h;
    let mut d = 0;
    for _ in 0..len {
        d += s.degrees[x];
        x = r.next(x);
    }
    d
}

fn path_label(h: HalfEdge, len: usize, next: impl Fn(HalfEdge) -> HalfEdge) -> String {
    let mut arrows = Vec::with_capacity(len);
    let mut x = h;
    for _ in 0..len {
        arrows.push(format!("a{x}"));
        x = next(x);
    }
    arrows.reverse();
    arrows.join("*")
}

/// Builds the A∞ Brauer graph category `𝔹(𝒜, 𝕞)`.
pub fn build_category(s: &GradedArcSystem, convention: SignConvention) -> BrauerCategory {
    let g = &s.graph;
    let r = g.ribbon();
    let mut kinds = Vec::new();
    let mut elements = Vec::new();
    let mut identities = Vec::new();
    for e in 0..r.edge_count() {
        let (h1, h2) = r.edge_halves(e);
        identities.push(kinds.len());
        kinds.push(BrauerElement::Identity(e));
        elements.push(Element {
            label: format!("1_e{e}"),
            source: e,
            target: e,
            degree: 0,
        });
        for h in [h1, h2] {
            for len in 1..g.cycle_length(r.vertex_of(h)) {
                kinds.push(BrauerElement::Path(h, len));
                let end = (0..len).fold(h, |x, _| r.next(x));
                elements.push(Element {
                    label: path_label(h, len, |x| r.next(x)),
                    source: e,
                    target: r.edge_of(end),
                    degree: path_degree(s, h, len),
                });
            }
        }
        kinds.push(BrauerElement::Socle(e));
        elements.push(Element {
            label: format!("s_e{e}"),
            source: e,
            target: e,
            degree: path_degree(s, h1, g.cycle_length(r.vertex_of(h1))),
        });
    }
    let index = kinds.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut cat = BrauerCategory {
        system: s.clone(),
        kinds,
        category: AInfCategory {
            object_names: (0..r.edge_count()).map(|e| format!("e{e}")).collect(),
            elements,
            identities,
            ops: BTreeMap::new(),
        },
        conflicts: Vec::new(),
        index,
    };

    let n = cat.kinds.len();
    let mut ops: BTreeMap<Vec<usize>, SparseVec> = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            if cat.category.elements[b].target != cat.category.elements[a].source {
                continue;
            }
            if let Some((c, k)) = cat.compose(b, a) {
                let sgn = if convention.composition.applies() {
                    sign(cat.category.elements[b].degree)
                } else {
                    Scalar::one()
                };
                ops.insert(vec![a, b], SparseVec::from([(k, c * sgn)]));
            }
        }
    }

    let mut conflicts = Vec::new();
    let mut put = |ops: &mut BTreeMap<Vec<usize>, SparseVec>,
                   inputs: Vec<(Scalar, usize)>,
                   out: Option<(Scalar, usize)>,
                   c: Scalar| {
        let Some((so, o)) = out else { return };
        let scale: Scalar = inputs.iter().map(|(s, _)| *s).product();
        let tuple: Vec<usize> = inputs.iter().map(|(_, i)| *i).collect();
        let value = SparseVec::from([(o, c * so * scale)]);
        match ops.get(&tuple) {
            Some(existing) if *existing != value => conflicts.push(tuple),
            Some(_) => {}
            None => {
                ops.insert(tuple, value);
            }
        }
    };
    let arrow = |h: HalfEdge| cat.path(h, 1).expect("arrows are nonzero");
    let mut mu1 = Vec::new();
    let mut mu2 = Vec::new();
    let mut ho5 = Vec::new();
    for seq in s.disc_sequences() {
        let len = seq.len();
        for rot in 0..len {
            // a[0] = a_1, …, a[len - 1] = a_n
            let a: Vec<HalfEdge> = (0..len).map(|i| seq[(rot + i) % len]).collect();
            let written = |from: usize, to: usize| -> Vec<(Scalar, usize)> {
                // a_to, …, a_from in written order (1-based, inclusive)
                (from..=to).rev().map(|i| arrow(a[i - 1])).collect()
            };
            // (Mu1) μ(b a_n, a_{n-1}, …, a_1) = b
            let yn = a[len - 1];
            for k in 0..cat.cycle_len(yn) {
                let mut inputs = vec![cat.path(yn, k + 1).expect("ba_n is nonzero")];
                inputs.extend(written(1, len - 1));
                mu1.push((inputs, cat.path(r.next(yn), k), Scalar::one()));
            }
            // (Mu2) μ(a_n, …, a_2, a_1 b) = (-1)^{|b|} b
            let y1 = a[0];
            for k in 0..cat.cycle_len(y1) {
                let h = cat.retreat(y1, k);
                let mut inputs = written(2, len);
                inputs.push(cat.path(h, k + 1).expect("a_1 b is nonzero"));
                let mut c = sign(path_degree(s, h, k));
                if convention.mu2_flip {
                    c = -c;
                }
                mu2.push((inputs, cat.path(h, k), c));
            }
            // (HigherOps5) μ(a_n, …, a_{r+1}, a_r (b a_r)*, b a_r, a_{r-1}, …, a_2) = (-1)^∘ a_1*
            let out = cat.path(r.next(y1), cat.cycle_len(y1) - 1);
            for rr in 2..=len {
                let yr = a[rr - 1];
                let l = cat.cycle_len(yr);
                for ell in 1..=l {
                    let mut inputs = if rr < len { written(rr + 1, len) } else { Vec::new() };
                    inputs.push(cat.path(cat.advance(yr, ell), l - ell + 1).expect("nonzero"));
                    inputs.push(cat.path(yr, ell).expect("nonzero"));
                    if rr > 2 {
                        inputs.extend(written(2, rr - 1));
                    }
                    let mut circ: i64 = (0..rr - 1).map(|i| s.degrees[a[i]]).sum();
                    circ += path_degree(s, yr, ell);
                    circ += (1..rr).map(|i| s.windings[r.edge_of(a[i])]).sum::<i64>();
                    let c = if convention.higher.applies() {
                        sign(circ)
                    } else {
                        Scalar::one()
                    };
                    ho5.push((inputs, out, c));
                }
            }
        }
    }
    for (inputs, out, c) in mu1.into_iter().chain(mu2).chain(ho5) {
        put(&mut ops, inputs, out, c);
    }
    cat.conflicts = conflicts;
    cat.category.ops = ops;
    cat
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::arcs::triangle_disc;
    use crate::algebra::expected_dimension;
    use crate::ribbon::BrauerGraph;

    #[test]
    fn seed_dimension_and_units() {
        for g in [
            BrauerGraph::star(3, 2),
            BrauerGraph::single_loop(1),
            BrauerGraph::cycle(3),
        ] {
            let c = build_category(&GradedArcSystem::seed(&g).unwrap(), SignConvention::default());
            assert_eq!(c.category.dimension(), expected_dimension(&g));
            assert_eq!(c.category.max_arity(), 2);
            assert_eq!(c.category.unitality_violation(), None);
            assert_eq!(c.category.degree_violation(), None);
        }
    }

    #[test]
    fn triangle_has_unit_valued_mu3() {
        let s = triangle_disc();
        let c = build_category(&s, SignConvention::default());
        let seq = &s.disc_sequences()[0];
        let idx = |h| c.path(h, 1).unwrap().1;
        let tuple = vec![idx(seq[2]), idx(seq[1]), idx(seq[0])];
        let x0 = s.graph.ribbon().edge_of(seq[0]);
        assert_eq!(
            c.category.mu(&tuple).unwrap(),
            SparseVec::from([(c.category.identities[x0], Scalar::one())])
        );
        assert_eq!(c.category.degree_violation(), None);
        assert_eq!(c.category.unitality_violation(), None);
    }
}
