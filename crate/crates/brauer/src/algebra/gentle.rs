use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::One;

use super::basis::{quotient_basis, trivial_extension, AlgebraBasis, BasisLabel};
use super::quiver::{arrow_of, build_quiver, turn_path, Arrow, Path, PresentationKind, Relation};
use super::{basis_and_dimension, AlgebraError};
use crate::linalg::{unit, Echelon, SparseVec};
use crate::ribbon::{BrauerGraph, HalfEdge};
use crate::Scalar;

/// `B / I` where `I` is generated by one cut arrow in each vertex cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GentlePresentation {
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
    /// Zero relations `(first, second)`: the path `first` then `second` vanishes.
    pub relations: Vec<(HalfEdge, HalfEdge)>,
    pub cut: Vec<HalfEdge>,
    /// Length of the vertex cycle each remaining arrow lives on, used to bound path lengths.
    max_valency: usize,
}

/// Checks that `cut` has exactly one arrow in every vertex cycle.
pub fn validate_cut(g: &BrauerGraph, cut: &[HalfEdge]) -> Result<(), AlgebraError> {
    let r = g.ribbon();
    let mut hit = vec![0; r.vertex_count()];
    for &h in cut {
        if h >= r.half_edge_count() {
            return Err(AlgebraError::NotACut(format!("arrow a{h} does not exist")));
        }
        hit[r.vertex_of(h)] += 1;
    }
    if let Some(v) = hit.iter().position(|&k| k != 1) {
        return Err(AlgebraError::NotACut(format!(
            "vertex {} is cut {} times",
            g.vertex_name(v),
            hit[v]
        )));
    }
    Ok(())
}

/// Every cut of `g`: one arrow from each vertex cycle, in lexicographic order.
pub fn all_cuts(g: &BrauerGraph) -> Vec<Vec<HalfEdge>> {
    let mut cuts = vec![Vec::new()];
    for cycle in g.ribbon().vertices() {
        cuts = cuts
            .into_iter()
            .flat_map(|c| {
                cycle.iter().map(move |&h| {
                    let mut c = c.clone();
                    c.push(h);
                    c
                })
            })
            .collect();
    }
    cuts
}

pub fn gentle_quotient(g: &BrauerGraph, cut: &[HalfEdge]) -> Result<GentlePresentation, AlgebraError> {
    if g.mult().iter().any(|&m| m != 1) || !g.deformed().is_empty() {
        return Err(AlgebraError::NotMultiplicityOne);
    }
    validate_cut(g, cut)?;
    let r = g.ribbon();
    let arrows: Vec<Arrow> = (0..r.half_edge_count())
        .filter(|h| !cut.contains(h))
        .map(|h| arrow_of(g, h))
        .collect();
    let mut relations = Vec::new();
    for b in &arrows {
        for a in &arrows {
            // b then a is nonzero only when a turns on from b around the same vertex
            if b.target == a.source && r.next(b.id) != a.id {
                relations.push((b.id, a.id));
            }
        }
    }
    let max_valency = (0..r.vertex_count()).map(|v| r.valency(v)).max().unwrap_or(1);
    let mut cut = cut.to_vec();
    cut.sort_unstable();
    let p = GentlePresentation {
        vertex_count: r.edge_count(),
        arrows,
        relations,
        cut,
        max_valency,
    };
    p.check_gentle()?;
    Ok(p)
}

impl GentlePresentation {
    /// The two special biserial conditions plus gentleness.
    pub fn check_gentle(&self) -> Result<(), AlgebraError> {
        let fail = |msg: String| Err(AlgebraError::NotGentle(msg));
        for v in 0..self.vertex_count {
            let out = self.arrows.iter().filter(|a| a.source == v).count();
            let inc = self.arrows.iter().filter(|a| a.target == v).count();
            if out > 2 || inc > 2 {
                return fail(format!("vertex e{v} has {inc} incoming and {out} outgoing arrows"));
            }
        }
        for a in &self.arrows {
            let after: Vec<&Arrow> = self.arrows.iter().filter(|b| b.source == a.target).collect();
            let before: Vec<&Arrow> = self.arrows.iter().filter(|b| b.target == a.source).collect();
            let zero = |x: HalfEdge, y: HalfEdge| self.relations.contains(&(x, y));
            let nonzero_after = after.iter().filter(|b| !zero(a.id, b.id)).count();
            let nonzero_before = before.iter().filter(|b| !zero(b.id, a.id)).count();
            let zero_after = after.iter().filter(|b| zero(a.id, b.id)).count();
            let zero_before = before.iter().filter(|b| zero(b.id, a.id)).count();
            if nonzero_after > 1 || nonzero_before > 1 {
                return fail(format!("arrow a{} has two nonzero compositions", a.id));
            }
            if zero_after > 1 || zero_before > 1 {
                return fail(format!("arrow a{} has two zero relations on one side", a.id));
            }
        }
        Ok(())
    }

    pub fn relations_as_paths(&self) -> Vec<Relation> {
        self.relations
            .iter()
            .map(|&(x, y)| {
                let (a, b) = (self.arrow(x), self.arrow(y));
                Relation::monomial(Path {
                    source: a.source,
                    target: b.target,
                    arrows: vec![x, y],
                })
            })
            .collect()
    }

    pub fn arrow(&self, id: HalfEdge) -> Arrow {
        *self
            .arrows
            .iter()
            .find(|a| a.id == id)
            .expect("arrow of the gentle quiver")
    }

    pub fn basis(&self) -> Result<AlgebraBasis, AlgebraError> {
        quotient_basis(
            self.vertex_count,
            &self.arrows,
            &self.relations_as_paths(),
            self.max_valency,
        )
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for a in &self.arrows {
            writeln!(out, "arrow a{} e{} -> e{}", a.id, a.source, a.target).unwrap();
        }
        for &(x, y) in &self.relations {
            writeln!(out, "rel +1 a{y}*a{x}").unwrap();
        }
        out
    }
}

/// Result of the diagonal-ansatz identification `triv(B/I) ≅ B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalIsomorphism {
    /// Sign attached to the image of each cut arrow.
    pub cut_signs: BTreeMap<HalfEdge, i8>,
    pub dimension: usize,
}

/// Solves `x_c1 + ... = rhs` over GF(2); returns one solution with free variables 0.
fn solve_gf2(vars: usize, equations: &[(Vec<bool>, bool)]) -> Option<Vec<bool>> {
    let mut rows: Vec<(Vec<bool>, bool)> = equations.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..vars {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].0[col]) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i].0[col] {
                let (lhs, rhs) = rows[r].clone();
                for (x, y) in rows[i].0.iter_mut().zip(lhs) {
                    *x ^= y;
                }
                rows[i].1 ^= rhs;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|(_, rhs)| *rhs) {
        return None;
    }
    let mut x = vec![false; vars];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = rows[i].1;
    }
    Some(x)
}

/// Sends idempotents to idempotents, uncut arrows to themselves and each cut arrow `α` to a
/// signed dual of its complementary path, then checks that the relations of `B` are killed and
/// that the images of a basis of `B` are independent. Signs are solved over GF(2).
pub fn schroll_isomorphism(g: &BrauerGraph, cut: &[HalfEdge]) -> Result<DiagonalIsomorphism, AlgebraError> {
    let b = basis_and_dimension(g)?;
    let gentle = gentle_quotient(g, cut)?;
    let a = gentle.basis()?;
    let t = trivial_extension(&a);
    let fail = |msg: String| Err(AlgebraError::NoDiagonalIsomorphism(msg));
    if t.dimension() != b.dimension() {
        return fail(format!("dimensions {} and {}", t.dimension(), b.dimension()));
    }
    let r = g.ribbon();
    let n = a.dimension();
    let cut_index: BTreeMap<HalfEdge, usize> = gentle.cut.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let mut image: BTreeMap<HalfEdge, SparseVec> = BTreeMap::new();
    for h in 0..r.half_edge_count() {
        if cut_index.contains_key(&h) {
            let complement = turn_path(g, r.next(h), r.valency(r.vertex_of(h)) - 1);
            let coords = a.path_coords(&complement);
            let k = match coords.iter().next() {
                Some((&k, c)) if coords.len() == 1 && *c == Scalar::one() => k,
                _ => return fail(format!("complement of a{h} is not a basis path of B/I")),
            };
            image.insert(h, unit(n + k));
        } else {
            image.insert(h, a.path_coords(&turn_path(g, h, 1)));
        }
    }
    let eval = |p: &Path| -> (SparseVec, Vec<bool>) {
        let mut acc = unit(t.identities[p.source]);
        let mut parity = vec![false; cut_index.len()];
        for x in &p.arrows {
            acc = t.mul(&image[x], &acc);
            if let Some(&i) = cut_index.get(x) {
                parity[i] ^= true;
            }
        }
        (acc, parity)
    };
    let pres = build_quiver(g, PresentationKind::Ordinary)?;
    let mut equations = Vec::new();
    for rel in &pres.relations {
        if rel.is_monomial() {
            if !eval(&rel.terms[0].1).0.is_empty() {
                return fail(format!("zero relation {} is not killed", rel.terms[0].1.to_text()));
            }
            continue;
        }
        let (p1, p2) = (&rel.terms[0].1, &rel.terms[1].1);
        let (c1, c2) = (rel.terms[0].0, rel.terms[1].0);
        let ((v1, par1), (v2, par2)) = (eval(p1), eval(p2));
        let v1 = crate::linalg::scale(&v1, c1);
        let v2 = crate::linalg::scale(&v2, c2);
        // need λ(p1)·v1 + λ(p2)·v2 = 0 with λ(p) = ±1
        let lhs: Vec<bool> = par1.iter().zip(&par2).map(|(x, y)| x ^ y).collect();
        if v1.is_empty() && v2.is_empty() {
            continue;
        }
        if v1 == crate::linalg::scale(&v2, -Scalar::one()) {
            equations.push((lhs, false));
        } else if v1 == v2 {
            equations.push((lhs, true));
        } else {
            return fail(format!("relation at {} is not diagonalizable", p1.to_text()));
        }
    }
    let Some(x) = solve_gf2(cut_index.len(), &equations) else {
        return fail("sign equations are inconsistent".into());
    };
    let mut rank = Echelon::new();
    for label in &b.labels {
        let BasisLabel::Path(p) = label else {
            unreachable!("Brauer graph algebra basis is paths")
        };
        let (v, parity) = eval(p);
        let negative = parity.iter().zip(&x).filter(|(p, s)| **p && **s).count() % 2 == 1;
        let v = if negative {
            crate::linalg::scale(&v, -Scalar::one())
        } else {
            v
        };
        rank.insert(v);
    }
    if rank.rank() != b.dimension() {
        return fail(format!("images span {} of {} dimensions", rank.rank(), b.dimension()));
    }
    let cut_signs = gentle
        .cut
        .iter()
        .zip(&x)
        .map(|(&h, &s)| (h, if s { -1 } else { 1 }))
        .collect();
    Ok(DiagonalIsomorphism {
        cut_signs,
        dimension: b.dimension(),
    })
}
