use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::quiver::{Arrow, Path, Relation};
use super::AlgebraError;
use crate::linalg::{add_scaled, unit, Echelon, SparseVec};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisLabel {
    Path(Path),
    /// The dual of the given basis element of the algebra being extended.
    Dual(usize),
}

/// A finite-dimensional algebra given by a basis and its multiplication table.
#[derive(Debug, Clone)]
pub struct AlgebraBasis {
    pub vertex_count: usize,
    pub labels: Vec<BasisLabel>,
    /// Source and target vertex of each basis element (`e_target · b · e_source = b`).
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    /// `table[i][j]` is `b_i · b_j`, i.e. `b_j` followed by `b_i`.
    pub table: Vec<Vec<SparseVec>>,
    pub identities: Vec<usize>,
    /// Coordinates of every nonzero path of bounded length; paths not listed are zero.
    pub normal_forms: BTreeMap<Path, SparseVec>,
}

impl AlgebraBasis {
    pub fn dimension(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in x {
            for (&j, b) in y {
                add_scaled(&mut out, &self.table[i][j], *a * *b);
            }
        }
        out
    }

    /// Coordinates of a path; zero if the path vanishes.
    pub fn path_coords(&self, p: &Path) -> SparseVec {
        self.normal_forms.get(p).cloned().unwrap_or_default()
    }

    pub fn one(&self) -> SparseVec {
        self.identities.iter().map(|&i| (i, Scalar::one())).collect()
    }

    /// First basis triple `(i, j, k)` with `(b_i b_j) b_k ≠ b_i (b_j b_k)`.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dimension();
        for i in 0..n {
            for j in 0..n {
                if self.source[i] != self.target[j] {
                    continue;
                }
                for k in 0..n {
                    if self.source[j] != self.target[k] {
                        continue;
                    }
                    let left = self.mul(&self.table[i][j], &unit(k));
                    let right = self.mul(&unit(i), &self.table[j][k]);
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Checks that `1` is a two-sided unit.
    pub fn is_unital(&self) -> bool {
        let one = self.one();
        (0..self.dimension()).all(|i| {
            let b = unit(i);
            self.mul(&one, &b) == b && self.mul(&b, &one) == b
        })
    }

    /// The form `(a, f) ↦ f(1)` on a trivial extension, as coefficients on the basis.
    fn trace_form(&self) -> SparseVec {
        self.labels
            .iter()
            .enumerate()
            .filter_map(|(k, l)| match l {
                BasisLabel::Dual(i) => Some((k, *i)),
                BasisLabel::Path(_) => None,
            })
            .filter(|(_, i)| matches!(&self.labels[*i], BasisLabel::Path(p) if p.is_empty()))
            .map(|(k, _)| (k, Scalar::one()))
            .collect()
    }

    /// For a trivial extension: `λ(xy) = λ(yx)` on all basis pairs, with `λ` the trace form.
    pub fn trace_form_is_symmetric(&self) -> bool {
        let lambda = self.trace_form();
        let eval = |v: &SparseVec| -> Scalar {
            v.iter()
                .map(|(k, c)| *c * lambda.get(k).copied().unwrap_or_else(Scalar::zero))
                .sum()
        };
        let n = self.dimension();
        (0..n).all(|i| (0..n).all(|j| eval(&self.table[i][j]) == eval(&self.table[j][i])))
    }
}

fn contains_monomial(arrows: &[usize], monomials: &[Vec<usize>]) -> bool {
    monomials
        .iter()
        .any(|m| m.len() <= arrows.len() && arrows.windows(m.len()).any(|w| w == m.as_slice()))
}

/// Basis of `kQ/I` by brute force: all paths of length `≤ bound` avoiding the monomial
/// relations, modulo the span of `u · r · w` for the other relations, truncated above `bound`.
/// Fails if some path of length `bound` survives, since then truncation is not justified.
pub fn quotient_basis(
    vertex_count: usize,
    arrows: &[Arrow],
    relations: &[Relation],
    bound: usize,
) -> Result<AlgebraBasis, AlgebraError> {
    let monomials: Vec<Vec<usize>> = relations
        .iter()
        .filter(|r| r.is_monomial())
        .map(|r| r.terms[0].1.arrows.clone())
        .collect();
    let mut survivors: Vec<Path> = (0..vertex_count).map(Path::trivial).collect();
    let mut frontier = survivors.clone();
    for _ in 0..bound {
        let mut grown = Vec::new();
        for p in &frontier {
            for a in arrows.iter().filter(|a| a.source == p.target) {
                let mut q = p.clone();
                q.arrows.push(a.id);
                q.target = a.target;
                let ends_badly = monomials.iter().any(|m| q.arrows.ends_with(m));
                if !ends_badly {
                    grown.push(q);
                }
            }
        }
        survivors.extend(grown.iter().cloned());
        frontier = grown;
    }
    survivors.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    let column: BTreeMap<Path, usize> = survivors.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();

    let mut by_target: BTreeMap<usize, Vec<&Path>> = BTreeMap::new();
    let mut by_source: BTreeMap<usize, Vec<&Path>> = BTreeMap::new();
    for p in &survivors {
        by_target.entry(p.target).or_default().push(p);
        by_source.entry(p.source).or_default().push(p);
    }
    let mut ideal = Echelon::new();
    for rel in relations.iter().filter(|r| !r.is_monomial()) {
        let (s, t) = (rel.terms[0].1.source, rel.terms[0].1.target);
        let shortest = rel.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0);
        for u in by_target.get(&s).into_iter().flatten() {
            for w in by_source.get(&t).into_iter().flatten() {
                if u.len() + w.len() + shortest > bound {
                    continue;
                }
                let mut v = SparseVec::new();
                for (c, p) in &rel.terms {
                    let q = u.then(p).and_then(|q| q.then(w)).expect("relation endpoints agree");
                    if q.len() > bound || contains_monomial(&q.arrows, &monomials) {
                        continue;
                    }
                    add_scaled(&mut v, &unit(column[&q]), *c);
                }
                ideal.insert(v);
            }
        }
    }
    for p in survivors.iter().filter(|p| p.len() == bound) {
        if !ideal.reduce(unit(column[p])).is_empty() {
            return Err(AlgebraError::BoundTooSmall(bound));
        }
    }
    let basis_cols: Vec<usize> = (0..survivors.len()).filter(|&c| !ideal.is_pivot(c)).collect();
    let position: BTreeMap<usize, usize> = basis_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut normal_forms = BTreeMap::new();
    for (c, p) in survivors.iter().enumerate() {
        let r = ideal.reduce(unit(c));
        if r.is_empty() {
            continue;
        }
        let coords: SparseVec = r.into_iter().map(|(k, x)| (position[&k], x)).collect();
        normal_forms.insert(p.clone(), coords);
    }
    let labels: Vec<BasisLabel> = basis_cols
        .iter()
        .map(|&c| BasisLabel::Path(survivors[c].clone()))
        .collect();
    let paths: Vec<&Path> = basis_cols.iter().map(|&c| &survivors[c]).collect();
    let n = paths.len();
    let mut table = vec![vec![SparseVec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if let Some(q) = paths[j].then(paths[i]) {
                if let Some(nf) = normal_forms.get(&q) {
                    table[i][j] = nf.clone();
                }
            }
        }
    }
    let mut identities = Vec::with_capacity(vertex_count);
    for v in 0..vertex_count {
        let idx = paths
            .iter()
            .position(|p| p.is_empty() && p.source == v)
            .ok_or(AlgebraError::IdentityInIdeal(v))?;
        identities.push(idx);
    }
    Ok(AlgebraBasis {
        vertex_count,
        source: paths.iter().map(|p| p.source).collect(),
        target: paths.iter().map(|p| p.target).collect(),
        labels,
        table,
        identities,
        normal_forms,
    })
}

/// `A ⊕ D(A)` with `(a, f)(b, g) = (ab, ag + fb)`. The dual of `b_i : x -> y` goes `y -> x`.
pub fn trivial_extension(a: &AlgebraBasis) -> AlgebraBasis {
    let n = a.dimension();
    let mut labels = a.labels.clone();
    labels.extend((0..n).map(BasisLabel::Dual));
    let mut source = a.source.clone();
    source.extend(a.target.iter().copied());
    let mut target = a.target.clone();
    target.extend(a.source.iter().copied());
    let mut table = vec![vec![SparseVec::new(); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            table[i][j] = a.table[i][j].clone();
        }
    }
    // (b_i · b_j^∨)(b_k) = b_j^∨(b_k b_i)   and   (b_j^∨ · b_i)(b_k) = b_j^∨(b_i b_k)
    for i in 0..n {
        for k in 0..n {
            for (&j, c) in &a.table[k][i] {
                table[i][n + j].insert(n + k, *c);
            }
            for (&j, c) in &a.table[i][k] {
                table[n + j][i].insert(n + k, *c);
            }
        }
    }
    AlgebraBasis {
        vertex_count: a.vertex_count,
        labels,
        source,
        target,
        table,
        identities: a.identities.clone(),
        normal_forms: a.normal_forms.clone(),
    }
}
