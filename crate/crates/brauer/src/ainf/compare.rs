use std::collections::BTreeMap;

use num_traits::One;
use serde::Serialize;

use super::brauer::{build_category, BrauerCategory, BrauerElement};
use super::category::{trivial_extension, AInfCategory};
use super::relations::verify_relations;
use super::{AinfError, GradedArcSystem, SignConvention};
use crate::algebra::{gentle_quotient, AlgebraBasis, BasisLabel};
use crate::linalg::{add_scaled, SparseVec};
use crate::ribbon::{BrauerGraph, HalfEdge};
use crate::Scalar;

/// A strict isomorphism candidate: object `i` of the first category goes to `objects[i]`, basis
/// element `j` to `elements[j].0 · (basis element elements[j].1)` of the second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    pub objects: Vec<usize>,
    pub elements: Vec<(Scalar, usize)>,
}

impl Correspondence {
    pub fn identity(c: &AInfCategory) -> Correspondence {
        Correspondence {
            objects: (0..c.object_names.len()).collect(),
            elements: (0..c.dimension()).map(|i| (Scalar::one(), i)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// Input tuple in the second category.
    pub tuple: Vec<usize>,
    pub expected: Vec<(usize, String)>,
    pub actual: Vec<(usize, String)>,
}

fn check_bijection(c1: &AInfCategory, c2: &AInfCategory, corr: &Correspondence) -> Result<(), AinfError> {
    let bad = |m: String| Err(AinfError::MalformedCorrespondence(m));
    if corr.objects.len() != c1.object_names.len() || c1.object_names.len() != c2.object_names.len() {
        return bad("object counts differ".into());
    }
    if corr.elements.len() != c1.dimension() || c1.dimension() != c2.dimension() {
        return bad("dimensions differ".into());
    }
    let mut hit = vec![false; c2.object_names.len()];
    for &o in &corr.objects {
        if o >= hit.len() || std::mem::replace(&mut hit[o], true) {
            return bad(format!("object {o} is not hit exactly once"));
        }
    }
    let mut hit = vec![false; c2.dimension()];
    for (i, (s, j)) in corr.elements.iter().enumerate() {
        if *j >= hit.len() || std::mem::replace(&mut hit[*j], true) {
            return bad(format!("element {j} is not hit exactly once"));
        }
        if *s != Scalar::one() && *s != -Scalar::one() {
            return bad(format!("element {i} is scaled by {s}"));
        }
        let (a, b) = (&c1.elements[i], &c2.elements[*j]);
        if corr.objects[a.source] != b.source || corr.objects[a.target] != b.target || a.degree != b.degree {
            return bad(format!("element {} does not match {}", a.label, b.label));
        }
    }
    Ok(())
}

fn to_text(v: &SparseVec) -> Vec<(usize, String)> {
    v.iter().map(|(&k, c)| (k, c.to_string())).collect()
}

/// Whether `corr` is a strict isomorphism: all structure constants agree after transport.
pub fn compare_categories(
    c1: &AInfCategory,
    c2: &AInfCategory,
    corr: &Correspondence,
) -> Result<Result<(), Mismatch>, AinfError> {
    check_bijection(c1, c2, corr)?;
    let mut transported: BTreeMap<Vec<usize>, SparseVec> = BTreeMap::new();
    for (t, out) in &c1.ops {
        let tuple: Vec<usize> = t.iter().map(|&a| corr.elements[a].1).collect();
        let s: Scalar = t.iter().map(|&a| corr.elements[a].0).product();
        let mut v = SparseVec::new();
        for (&y, c) in out {
            let (sy, y2) = corr.elements[y];
            add_scaled(&mut v, &SparseVec::from([(y2, sy)]), *c * s);
        }
        transported.insert(tuple, v);
    }
    transported.retain(|_, v| !v.is_empty());
    let keys: std::collections::BTreeSet<&Vec<usize>> = transported.keys().chain(c2.ops.keys()).collect();
    for k in keys {
        let empty = SparseVec::new();
        let (e, a) = (transported.get(k).unwrap_or(&empty), c2.ops.get(k).unwrap_or(&empty));
        if e != a {
            return Ok(Err(Mismatch {
                tuple: k.clone(),
                expected: to_text(e),
                actual: to_text(a),
            }));
        }
    }
    Ok(Ok(()))
}

/// The gentle category of `B / I` for a cut, concentrated in degree 0, with its basis.
pub fn gentle_category(g: &BrauerGraph, cut: &[HalfEdge]) -> Result<(AInfCategory, AlgebraBasis), AinfError> {
    let basis = gentle_quotient(g, cut)?.basis()?;
    let names = (0..g.edge_count()).map(|e| format!("e{e}")).collect();
    Ok((AInfCategory::from_algebra(&basis, names), basis))
}

/// Sign twists tried on the dual part of the Schroll correspondence; `p` is a gentle path of
/// length `l` at a vertex whose full turn has length `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Twist {
    None,
    /// `(-1)^l`
    Length,
    /// `(-1)^{L - l}`
    CoLength,
}

pub const TWISTS: [Twist; 3] = [Twist::None, Twist::Length, Twist::CoLength];

/// `p ↦ p`, `dual(e_X) ↦ S_X`, `dual(p) ↦ ε(p) · p*` with `p p* = C^𝕞`, from `triv(F)` to `𝔹`.
pub fn schroll_correspondence(b: &BrauerCategory, f: &AlgebraBasis, twist: Twist) -> Result<Correspondence, AinfError> {
    let g = &b.system.graph;
    let r = g.ribbon();
    let n = f.dimension();
    let malformed = |m: &str| AinfError::MalformedCorrespondence(m.to_string());
    let mut elements = vec![(Scalar::one(), 0); 2 * n];
    for i in 0..n {
        let BasisLabel::Path(p) = &f.labels[i] else {
            return Err(malformed("gentle basis has duals"));
        };
        if p.is_empty() {
            elements[i] = (
                Scalar::one(),
                b.index_of(BrauerElement::Identity(p.source))
                    .ok_or_else(|| malformed("identity"))?,
            );
            elements[n + i] = (
                Scalar::one(),
                b.index_of(BrauerElement::Socle(p.source))
                    .ok_or_else(|| malformed("socle"))?,
            );
            continue;
        }
        let h = p.arrows[0];
        let l = p.len();
        elements[i] = b.path(h, l).ok_or_else(|| malformed("gentle path vanishes in B"))?;
        let full = g.cycle_length(r.vertex_of(h));
        let end = (0..l).fold(h, |x, _| r.next(x));
        let (s, k) = b.path(end, full - l).ok_or_else(|| malformed("complement vanishes"))?;
        let eps = match twist {
            Twist::None => 0,
            Twist::Length => l,
            Twist::CoLength => full - l,
        };
        let eps = if eps % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        elements[n + i] = (s * eps, k);
    }
    Ok(Correspondence {
        objects: (0..g.edge_count()).collect(),
        elements,
    })
}

/// Compares `triv(F)` for the given cut with the seed category of `g`; returns the first twist
/// under which they agree, or the mismatch found with the untwisted correspondence.
pub fn schroll_round_trip(
    g: &BrauerGraph,
    cut: &[HalfEdge],
    convention: SignConvention,
) -> Result<Result<Twist, Mismatch>, AinfError> {
    let (f, basis) = gentle_category(g, cut)?;
    let triv = trivial_extension(&f, convention);
    let b = build_category(&GradedArcSystem::seed(g)?, convention);
    let mut first = None;
    for twist in TWISTS {
        let corr = schroll_correspondence(&b, &basis, twist)?;
        match compare_categories(&triv, &b.category, &corr)? {
            Ok(()) => return Ok(Ok(twist)),
            Err(m) => {
                first.get_or_insert(m);
            }
        }
    }
    Ok(Err(first.expect("at least one twist was tried")))
}

/// Outcome of the relation check on one fixture, for the category and its trivial extension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureCheck {
    pub name: String,
    pub category: super::RelationReport,
    pub trivial_extension: super::RelationReport,
}

pub fn check_fixture(
    name: &str,
    s: &GradedArcSystem,
    convention: SignConvention,
    max_len: Option<usize>,
) -> FixtureCheck {
    let b = build_category(s, convention);
    let t = trivial_extension(&b.category, convention);
    FixtureCheck {
        name: name.to_string(),
        category: verify_relations(&b.category, max_len),
        trivial_extension: verify_relations(&t, max_len),
    }
}

/// All toggle combinations passing the relation check on every fixture and its trivial extension.
pub fn convention_search(suite: &[(String, GradedArcSystem)]) -> Vec<SignConvention> {
    SignConvention::all()
        .into_iter()
        .filter(|&c| {
            suite.iter().all(|(name, s)| {
                let r = check_fixture(name, s, c, None);
                r.category.passed() && r.trivial_extension.passed()
            })
        })
        .collect()
}
