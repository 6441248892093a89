//! Derived invariants of Brauer graph algebras and the derived-equivalence decision.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::is_caterpillar;
use crate::ribbon::{canonical_form, BrauerGraph};

/// Each face corner contributes this much to the winding number of its boundary component.
pub const BOUNDARY_WINDING_PER_CORNER: i64 = -1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantBundle {
    pub v_count: usize,
    pub e_count: usize,
    pub f_count: usize,
    pub perimeters: Vec<usize>,
    pub multiplicities: Vec<u32>,
    pub bipartite: bool,
    pub genus: usize,
    pub stable_k0_rank: i64,
    pub torus_rank: Option<i64>,
    pub omega_boundary: Vec<i64>,
    pub omega_punctures: Vec<i64>,
    pub sigma_lf: u8,
    pub gcd_lf: Option<u32>,
    pub deformed_count: usize,
    /// A loop of multiplicity 1 or an edge with both multiplicities 2: local algebras whose
    /// Brauer graph is not determined by the algebra.
    pub exceptional_local: bool,
    pub notes: Vec<String>,
}

pub fn invariant_bundle(g: &BrauerGraph) -> InvariantBundle {
    let r = g.ribbon();
    let faces = g.faces();
    let (v, e, f) = (r.vertex_count(), r.edge_count(), faces.perimeters.len());
    let bipartite = g.is_bipartite();
    let genus = g.genus().expect("face tracing is consistent");
    let mut multiplicities = g.mult().to_vec();
    multiplicities.sort_unstable();
    let d = g.deformed().len();
    let mut notes = Vec::new();

    let exceptional_local =
        (e == 1 && r.is_loop(0) && g.mult_at(0) == 1) || (e == 1 && !r.is_loop(0) && g.mult().iter().all(|&m| m == 2));
    if exceptional_local {
        notes.push("exceptional local case: the Brauer graph depends on the presentation".into());
    }
    let caterpillar = is_caterpillar(g);
    let torus_rank = if e < 2 {
        notes.push("torus_rank undefined: the algebra is local".into());
        None
    } else if caterpillar {
        notes.push("torus_rank undefined: caterpillar algebra".into());
        None
    } else {
        Some(e as i64 - v as i64 - d as i64 + 2)
    };
    let gcd_lf = if genus >= 1 {
        Some(if bipartite { 2 } else { 1 })
    } else {
        notes.push("gcd_lf undefined in genus 0".into());
        None
    };
    let mut omega_boundary: Vec<i64> = faces
        .perimeters
        .iter()
        .map(|&p| BOUNDARY_WINDING_PER_CORNER * p as i64)
        .collect();
    omega_boundary.sort_unstable();
    InvariantBundle {
        v_count: v,
        e_count: e,
        f_count: f,
        perimeters: faces.perimeters,
        multiplicities,
        bipartite,
        genus,
        stable_k0_rank: e as i64 - v as i64 + i64::from(bipartite),
        torus_rank,
        omega_boundary,
        omega_punctures: vec![0; v],
        sigma_lf: if bipartite { 0 } else { 1 },
        gcd_lf,
        deformed_count: d,
        exceptional_local,
        notes,
    }
}

/// `c_ij = dim e_i A e_j = Σ_v m(v)·n_i(v)·n_j(v)`, with `n_i(v)` the number of half-edges of
/// edge `i` at `v`.
pub fn cartan_matrix(g: &BrauerGraph) -> Vec<Vec<i64>> {
    let r = g.ribbon();
    let e = r.edge_count();
    let mut c = vec![vec![0i64; e]; e];
    for (v, halves) in r.vertices().iter().enumerate() {
        let mut n = vec![0i64; e];
        for &h in halves {
            n[r.edge_of(h)] += 1;
        }
        for i in 0..e {
            for j in 0..e {
                c[i][j] += i64::from(g.mult_at(v)) * n[i] * n[j];
            }
        }
    }
    c
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailedCondition {
    Counts,
    Perimeters,
    Multiplicities,
    Bipartite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "details")]
pub enum EquivalenceVerdict {
    Equivalent,
    NotEquivalent(Vec<FailedCondition>),
    OutOfScope(String),
}

/// Why a graph falls outside the classification theorem, if it does.
pub fn scope_violation(g: &BrauerGraph) -> Option<String> {
    if g.edge_count() < 2 {
        Some("fewer than two edges: the algebra is local".into())
    } else if !g.deformed().is_empty() {
        Some("deformed loops: the classification applies to Brauer graph algebras".into())
    } else {
        None
    }
}

fn failed_conditions(a: &InvariantBundle, b: &InvariantBundle) -> Vec<FailedCondition> {
    let mut failed = Vec::new();
    if (a.v_count, a.e_count, a.f_count) != (b.v_count, b.e_count, b.f_count) {
        failed.push(FailedCondition::Counts);
    }
    if a.perimeters != b.perimeters {
        failed.push(FailedCondition::Perimeters);
    }
    if a.multiplicities != b.multiplicities {
        failed.push(FailedCondition::Multiplicities);
    }
    if a.bipartite != b.bipartite {
        failed.push(FailedCondition::Bipartite);
    }
    failed
}

pub fn derived_equivalent(g1: &BrauerGraph, g2: &BrauerGraph) -> EquivalenceVerdict {
    if let Some(reason) = scope_violation(g1).or_else(|| scope_violation(g2)) {
        return EquivalenceVerdict::OutOfScope(reason);
    }
    let failed = failed_conditions(&invariant_bundle(g1), &invariant_bundle(g2));
    if failed.is_empty() {
        EquivalenceVerdict::Equivalent
    } else {
        EquivalenceVerdict::NotEquivalent(failed)
    }
}

/// The part of the bundle the classification theorem compares.
pub type ClassKey = (usize, usize, usize, Vec<usize>, Vec<u32>, bool);

pub fn class_key(b: &InvariantBundle) -> ClassKey {
    (
        b.v_count,
        b.e_count,
        b.f_count,
        b.perimeters.clone(),
        b.multiplicities.clone(),
        b.bipartite,
    )
}

/// Groups graph indices into derived-equivalence classes. Members are sorted by canonical
/// form and classes by their first member.
pub fn partition_into_classes(gs: &[BrauerGraph]) -> Result<Vec<Vec<usize>>, (usize, String)> {
    let mut classes: BTreeMap<ClassKey, Vec<usize>> = BTreeMap::new();
    for (i, g) in gs.iter().enumerate() {
        if let Some(reason) = scope_violation(g) {
            return Err((i, reason));
        }
        classes.entry(class_key(&invariant_bundle(g))).or_default().push(i);
    }
    let forms: Vec<_> = gs.iter().map(canonical_form).collect();
    let mut out: Vec<Vec<usize>> = classes
        .into_values()
        .map(|mut c| {
            c.sort_by(|&a, &b| forms[a].cmp(&forms[b]));
            c
        })
        .collect();
    out.sort_by(|a, b| forms[a[0]].cmp(&forms[b[0]]));
    Ok(out)
}
