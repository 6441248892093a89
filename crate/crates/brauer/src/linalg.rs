//! Sparse exact linear algebra: vectors as ordered maps, incremental row echelon form.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::Scalar;

pub type SparseVec = BTreeMap<usize, Scalar>;

pub fn add_scaled(target: &mut SparseVec, source: &SparseVec, c: Scalar) {
    if c.is_zero() {
        return;
    }
    for (&k, v) in source {
        let entry = target.entry(k).or_insert_with(Scalar::zero);
        *entry += *v * c;
        if entry.is_zero() {
            target.remove(&k);
        }
    }
}

pub fn scale(v: &SparseVec, c: Scalar) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(&k, x)| (k, *x * c)).collect()
}

pub fn unit(k: usize) -> SparseVec {
    SparseVec::from([(k, Scalar::one())])
}

/// Rows in echelon form. Each row is keyed by its pivot, the largest column it contains, and is
/// normalized so that the pivot entry is 1. Columns with larger indices are eliminated first.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces `v` modulo the row space: afterwards `v` has no pivot columns.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut bound = usize::MAX;
        loop {
            let col = v
                .range(..=bound)
                .rev()
                .map(|(&k, _)| k)
                .find(|k| self.rows.contains_key(k));
            let Some(col) = col else { return v };
            let c = -v[&col];
            add_scaled(&mut v, &self.rows[&col], c);
            if col == 0 {
                return v;
            }
            bound = col - 1;
        }
    }

    /// Adds a vector to the row space; returns false if it was already in it.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((&pivot, &lead)) = v.iter().next_back() else {
            return false;
        };
        let v = scale(&v, lead.recip());
        self.rows.insert(pivot, v);
        true
    }
}
