use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::category::{sign, AInfCategory};
use crate::linalg::{add_scaled, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationFailure {
    /// Written order, `a_n` first.
    pub tuple: Vec<usize>,
    /// Basis index and coefficient as text, e.g. `(3, "-2")`.
    pub residual: Vec<(usize, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checked: usize,
    pub max_len: usize,
    pub failure: Option<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Every nonzero term of a relation nests two operations, so tuples longer than this carry no
/// nonzero terms.
pub fn default_max_len(cat: &AInfCategory) -> usize {
    (2 * cat.max_arity()).saturating_sub(1).max(3)
}

/// `Σ (-1)^{||a_k|| + … + ||a_1||} μ(a_n, …, a_{k+m+1}, μ^m(a_{k+m}, …, a_{k+1}), a_k, …, a_1)`,
/// summed over `m ≥ 2` and outer arity at least 2, since `μ¹ = 0`.
pub fn residual(cat: &AInfCategory, tuple: &[usize]) -> SparseVec {
    let n = tuple.len();
    let mut out = SparseVec::new();
    for k in 0..n {
        let shift: i64 = tuple[n - k..].iter().map(|&a| cat.shifted_degree(a)).sum();
        for m in 2..=n - k {
            if n - m + 1 < 2 {
                continue;
            }
            let start = n - k - m;
            let Some(inner) = cat.ops.get(&tuple[start..n - k]) else {
                continue;
            };
            let mut outer = tuple[..start].to_vec();
            outer.push(0);
            outer.extend_from_slice(&tuple[n - k..]);
            for (&y, c) in inner {
                outer[start] = y;
                if let Some(v) = cat.ops.get(&outer) {
                    add_scaled(&mut out, v, *c * sign(shift));
                }
            }
        }
    }
    out
}

/// Tuples of length `≤ max_len` on which some term of the relation can be nonzero: an
/// operation with one input replaced by the inputs of an operation producing it.
pub fn candidate_tuples(cat: &AInfCategory, max_len: usize) -> BTreeSet<Vec<usize>> {
    let mut by_output: BTreeMap<usize, Vec<&Vec<usize>>> = BTreeMap::new();
    for (t, out) in &cat.ops {
        for &y in out.keys() {
            by_output.entry(y).or_default().push(t);
        }
    }
    let mut out = BTreeSet::new();
    for outer in cat.ops.keys() {
        for j in 0..outer.len() {
            let Some(inners) = by_output.get(&outer[j]) else {
                continue;
            };
            for inner in inners {
                if outer.len() + inner.len() - 1 > max_len {
                    continue;
                }
                let mut t = outer[..j].to_vec();
                t.extend_from_slice(inner);
                t.extend_from_slice(&outer[j + 1..]);
                out.insert(t);
            }
        }
    }
    out
}

fn failure(tuple: &[usize], r: &SparseVec) -> RelationFailure {
    RelationFailure {
        tuple: tuple.to_vec(),
        residual: r.iter().map(|(&k, c)| (k, c.to_string())).collect(),
    }
}

/// Checks the A∞ relations on every composable tuple of length `3 ≤ n ≤ max_len`. Tuples outside
/// [`candidate_tuples`] have only zero terms and are skipped; `checked` counts the rest.
pub fn verify_relations(cat: &AInfCategory, max_len: Option<usize>) -> RelationReport {
    let max_len = max_len.unwrap_or_else(|| default_max_len(cat));
    let candidates = candidate_tuples(cat, max_len);
    let mut checked = 0;
    for t in &candidates {
        checked += 1;
        let r = residual(cat, t);
        if !r.is_empty() {
            return RelationReport {
                checked,
                max_len,
                failure: Some(failure(t, &r)),
            };
        }
    }
    RelationReport {
        checked,
        max_len,
        failure: None,
    }
}

/// Same as [`verify_relations`] but over every composable tuple; for small categories only.
pub fn verify_relations_brute_force(cat: &AInfCategory, max_len: usize) -> RelationReport {
    let mut layer: Vec<Vec<usize>> = (0..cat.dimension()).map(|a| vec![a]).collect();
    let mut checked = 0;
    for len in 2..=max_len {
        let mut next = Vec::new();
        for t in &layer {
            // prepend a_{n+1}, which must start where a_n = t[0] ends
            let end = cat.elements[t[0]].target;
            for (a, e) in cat.elements.iter().enumerate() {
                if e.source == end {
                    let mut u = Vec::with_capacity(len);
                    u.push(a);
                    u.extend_from_slice(t);
                    next.push(u);
                }
            }
        }
        layer = next;
        if len < 3 {
            continue;
        }
        for t in &layer {
            checked += 1;
            let r = residual(cat, t);
            if !r.is_empty() {
                return RelationReport {
                    checked,
                    max_len,
                    failure: Some(failure(t, &r)),
                };
            }
        }
    }
    RelationReport {
        checked,
        max_len,
        failure: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::{
        build_category, square_disc, triangle_disc, trivial_extension, GradedArcSystem, FROZEN_CONVENTION,
    };
    use crate::ribbon::BrauerGraph;

    #[test]
    fn candidates_agree_with_brute_force() {
        let seeds = [
            BrauerGraph::single_edge(1, 1),
            BrauerGraph::path(2),
            BrauerGraph::single_loop(1),
        ];
        let mut cats: Vec<AInfCategory> = seeds
            .iter()
            .map(|g| build_category(&GradedArcSystem::seed(g).unwrap(), FROZEN_CONVENTION).category)
            .collect();
        cats.push(build_category(&triangle_disc(), FROZEN_CONVENTION).category);
        let t = trivial_extension(&cats[0], FROZEN_CONVENTION);
        cats.push(t);
        for c in &cats {
            let fast = verify_relations(c, Some(5));
            let slow = verify_relations_brute_force(c, 5);
            assert!(fast.passed() && slow.passed());
            assert!(fast.checked <= slow.checked);
        }
        // a wrong sign is caught by both, at a tuple of the same length
        let mut flipped = FROZEN_CONVENTION;
        flipped.mu2_flip = true;
        let c = build_category(&triangle_disc(), flipped).category;
        let fast = verify_relations(&c, Some(5)).failure.unwrap();
        let slow = verify_relations_brute_force(&c, 5).failure.unwrap();
        assert_eq!(fast.tuple.len(), slow.tuple.len());
        assert!(!residual(&c, &slow.tuple).is_empty());
    }

    #[test]
    fn flipped_mu2_fails_on_a_length_four_tuple() {
        let mut flipped = FROZEN_CONVENTION;
        flipped.mu2_flip = true;
        let r = verify_relations(&build_category(&triangle_disc(), flipped).category, None);
        assert_eq!(r.failure.unwrap().tuple.len(), 4);
        assert!(verify_relations(&build_category(&square_disc(), FROZEN_CONVENTION).category, None).passed());
    }

    #[test]
    fn default_length() {
        let seed = build_category(
            &GradedArcSystem::seed(&BrauerGraph::star(3, 2)).unwrap(),
            FROZEN_CONVENTION,
        );
        assert_eq!(default_max_len(&seed.category), 3);
        let sq = build_category(&square_disc(), FROZEN_CONVENTION);
        assert_eq!(sq.category.max_arity(), 4);
        assert_eq!(default_max_len(&sq.category), 7);
    }
}
