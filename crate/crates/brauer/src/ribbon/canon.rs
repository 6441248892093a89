use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use super::{BrauerGraph, HalfEdge};
use crate::bgfile;
use crate::Scalar;

/// Canonical `.bg` text of a Brauer graph; equal iff the graphs are isomorphic
/// (orientation-preserving, respecting multiplicities and deformed loops).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct CanonicalForm(pub String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

type Entry = (usize, usize, u32, Option<(i64, i64)>);

/// Breadth-first labeling from `start`, visiting `next` then `pair`; returns `old -> new`.
fn trace(g: &BrauerGraph, start: HalfEdge) -> (Vec<usize>, Vec<HalfEdge>) {
    let r = g.ribbon();
    let n = r.half_edge_count();
    let mut label = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([start]);
    label[start] = 0;
    order.push(start);
    while let Some(h) = queue.pop_front() {
        for x in [r.next(h), r.pair(h)] {
            if label[x] == usize::MAX {
                label[x] = order.len();
                order.push(x);
                queue.push_back(x);
            }
        }
    }
    (label, order)
}

fn entry(g: &BrauerGraph, label: &[usize], h: HalfEdge) -> Entry {
    let r = g.ribbon();
    let d = g.deformed().get(&h).map(|t: &Scalar| (*t.numer(), *t.denom()));
    (label[r.next(h)], label[r.pair(h)], g.mult_at(r.vertex_of(h)), d)
}

/// The relabeling `old -> new` giving the lexicographically smallest trace code.
pub fn canonical_relabeling(g: &BrauerGraph) -> Vec<HalfEdge> {
    let n = g.ribbon().half_edge_count();
    let mut best: Option<(Vec<Entry>, Vec<usize>)> = None;
    for start in 0..n {
        let (label, order) = trace(g, start);
        match &best {
            None => {
                let code = order.iter().map(|&h| entry(g, &label, h)).collect();
                best = Some((code, label));
            }
            Some((code, _)) => {
                let mut verdict = Ordering::Equal;
                for (i, &h) in order.iter().enumerate() {
                    let e = entry(g, &label, h);
                    verdict = e.cmp(&code[i]);
                    if verdict != Ordering::Equal {
                        break;
                    }
                }
                if verdict == Ordering::Less {
                    let code = order.iter().map(|&h| entry(g, &label, h)).collect();
                    best = Some((code, label));
                }
            }
        }
    }
    best.expect("nonempty graph").1
}

pub fn canonical_form(g: &BrauerGraph) -> CanonicalForm {
    let relabeled = g.relabel(&canonical_relabeling(g));
    CanonicalForm(bgfile::write(&relabeled))
}

/// Isomorphism test by trying every bijection; only for tiny graphs.
pub fn isomorphic_brute_force(a: &BrauerGraph, b: &BrauerGraph) -> bool {
    let (ra, rb) = (a.ribbon(), b.ribbon());
    let n = ra.half_edge_count();
    if n != rb.half_edge_count() {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn consistent(a: &BrauerGraph, b: &BrauerGraph, map: &[usize], h: usize) -> bool {
        let (ra, rb) = (a.ribbon(), b.ribbon());
        let x = map[h];
        if a.mult_at(ra.vertex_of(h)) != b.mult_at(rb.vertex_of(x)) {
            return false;
        }
        if a.deformed().get(&h) != b.deformed().get(&x) {
            return false;
        }
        for (p, q) in [(ra.next(h), rb.next(x)), (ra.pair(h), rb.pair(x))] {
            if map[p] != usize::MAX && map[p] != q {
                return false;
            }
        }
        for (p, q) in [(ra.prev(h), rb.prev(x)), (ra.pair(h), rb.pair(x))] {
            if map[p] != usize::MAX && map[p] != q {
                return false;
            }
        }
        true
    }
    fn go(a: &BrauerGraph, b: &BrauerGraph, map: &mut [usize], used: &mut [bool], h: usize) -> bool {
        if h == map.len() {
            return true;
        }
        for x in 0..map.len() {
            if used[x] {
                continue;
            }
            map[h] = x;
            used[x] = true;
            if consistent(a, b, map, h) && go(a, b, map, used, h + 1) {
                return true;
            }
            used[x] = false;
            map[h] = usize::MAX;
        }
        false
    }
    go(a, b, &mut map, &mut used, 0)
}
