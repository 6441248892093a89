use std::collections::BTreeMap;

use num_traits::One;

use super::{AinfError, SignConvention};
use crate::algebra::{AlgebraBasis, BasisLabel};
use crate::linalg::{add_scaled, scale, SparseVec};
use crate::Scalar;

/// A basis morphism `source -> target` of the given degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub label: String,
    pub source: usize,
    pub target: usize,
    pub degree: i64,
}

/// A strictly unital A∞-category with finitely many basis morphisms and `μ¹ = 0`.
///
/// Operations are stored on basis tuples written as in `μ(a_n, …, a_1)`: index 0 holds `a_n`,
/// the last entry is `a_1`, and `a_{i+1}` starts where `a_i` ends. Tuples that are absent
/// evaluate to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AInfCategory {
    pub object_names: Vec<String>,
    pub elements: Vec<Element>,
    pub identities: Vec<usize>,
    pub ops: BTreeMap<Vec<usize>, SparseVec>,
}

pub(crate) fn sign(exponent: i64) -> Scalar {
    if exponent.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

impl AInfCategory {
    pub fn dimension(&self) -> usize {
        self.elements.len()
    }

    /// `||a|| = |a| - 1`.
    pub fn shifted_degree(&self, a: usize) -> i64 {
        self.elements[a].degree - 1
    }

    pub fn is_composable(&self, tuple: &[usize]) -> bool {
        tuple
            .windows(2)
            .all(|w| self.elements[w[1]].target == self.elements[w[0]].source)
    }

    pub fn mu(&self, tuple: &[usize]) -> Result<SparseVec, AinfError> {
        if !self.is_composable(tuple) {
            return Err(AinfError::NotComposable(tuple.to_vec()));
        }
        Ok(self.ops.get(tuple).cloned().unwrap_or_default())
    }

    /// Multilinear extension of `mu` to linear combinations.
    pub fn mu_linear(&self, inputs: &[SparseVec]) -> SparseVec {
        let mut out = SparseVec::new();
        let mut tuple = Vec::with_capacity(inputs.len());
        self.expand(inputs, &mut tuple, Scalar::one(), &mut out);
        out
    }

    fn expand(&self, inputs: &[SparseVec], tuple: &mut Vec<usize>, c: Scalar, out: &mut SparseVec) {
        if tuple.len() == inputs.len() {
            if let Some(v) = self.ops.get(tuple.as_slice()) {
                add_scaled(out, v, c);
            }
            return;
        }
        for (&k, x) in &inputs[tuple.len()] {
            tuple.push(k);
            self.expand(inputs, tuple, c * *x, out);
            tuple.pop();
        }
    }

    /// Largest arity of a nonzero operation.
    pub fn max_arity(&self) -> usize {
        self.ops.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// First operation whose output is not of degree `Σ|a_i| + 2 - n`.
    pub fn degree_violation(&self) -> Option<Vec<usize>> {
        self.ops
            .iter()
            .find(|(t, out)| {
                let expected = t.iter().map(|&a| self.elements[a].degree).sum::<i64>() + 2 - t.len() as i64;
                out.keys().any(|&y| self.elements[y].degree != expected)
            })
            .map(|(t, _)| t.clone())
    }

    /// First tuple violating `μ²(a, 1) = (-1)^{|a|} μ²(1, a) = a` or `μⁿ(…, 1, …) = 0` for `n ≥ 3`.
    pub fn unitality_violation(&self) -> Option<Vec<usize>> {
        for (a, e) in self.elements.iter().enumerate() {
            let right = vec![a, self.identities[e.source]];
            let left = vec![self.identities[e.target], a];
            let expect = SparseVec::from([(a, Scalar::one())]);
            if self.ops.get(&right) != Some(&expect) {
                return Some(right);
            }
            if self.ops.get(&left) != Some(&scale(&expect, sign(e.degree))) {
                return Some(left);
            }
        }
        self.ops
            .keys()
            .find(|t| t.len() >= 3 && t.iter().any(|a| self.identities.contains(a)))
            .cloned()
    }

    /// The category of projectives of an ordinary algebra concentrated in degree 0.
    pub fn from_algebra(a: &AlgebraBasis, object_names: Vec<String>) -> AInfCategory {
        let elements = (0..a.dimension())
            .map(|i| Element {
                label: match &a.labels[i] {
                    BasisLabel::Path(p) => p.to_text(),
                    BasisLabel::Dual(j) => format!("D({j})"),
                },
                source: a.source[i],
                target: a.target[i],
                degree: 0,
            })
            .collect();
        let mut ops = BTreeMap::new();
        for i in 0..a.dimension() {
            for j in 0..a.dimension() {
                if a.source[i] == a.target[j] && !a.table[i][j].is_empty() {
                    ops.insert(vec![i, j], a.table[i][j].clone());
                }
            }
        }
        AInfCategory {
            object_names,
            elements,
            identities: a.identities.clone(),
            ops,
        }
    }
}

/// The trivial extension `triv(A)`. Element `i < n` is the `i`-th element of `A` and element
/// `n + i` is its dual, of degree `-|a_i|` and with source and target swapped.
pub fn trivial_extension(a: &AInfCategory, convention: SignConvention) -> AInfCategory {
    let n = a.dimension();
    let mut elements = a.elements.clone();
    elements.extend(a.elements.iter().map(|e| Element {
        label: format!("D({})", e.label),
        source: e.target,
        target: e.source,
        degree: -e.degree,
    }));
    let mut ops = a.ops.clone();
    // μ(R, y^∨, L)(x) = (-1)^† y^∨(μ_A(L, x, R)) for every way of reading an operation of A as
    // (L, x, R) with x in the middle.
    for (w, out) in &a.ops {
        let base: i64 = w.iter().map(|&b| a.shifted_degree(b)).sum();
        for q in 0..w.len() {
            let x = w[q];
            let rest = base - a.shifted_degree(x);
            for (&y, c) in out {
                let dagger = rest + (-a.elements[y].degree - 1);
                let s = if convention.trivial_extension.applies() {
                    sign(dagger)
                } else {
                    Scalar::one()
                };
                let mut tuple = Vec::with_capacity(w.len());
                tuple.extend_from_slice(&w[q + 1..]);
                tuple.push(n + y);
                tuple.extend_from_slice(&w[..q]);
                let entry = ops.entry(tuple).or_default();
                add_scaled(entry, &SparseVec::from([(n + x, Scalar::one())]), *c * s);
            }
        }
    }
    ops.retain(|_, v| !v.is_empty());
    AInfCategory {
        object_names: a.object_names.clone(),
        elements,
        identities: a.identities.clone(),
        ops,
    }
}
