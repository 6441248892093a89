use std::collections::{BTreeMap, BTreeSet};

use super::{canonical_form, BrauerGraph, CanonicalForm, RibbonGraph};

/// Inserts half-edge `x` right after `anchor` in the cyclic order.
fn insert_after(next: &mut [usize], anchor: usize, x: usize) {
    next[x] = next[anchor];
    next[anchor] = x;
}

fn extensions(g: &RibbonGraph) -> Vec<RibbonGraph> {
    let n = g.half_edge_count();
    let (a, b) = (n, n + 1);
    let base_next: Vec<usize> = g.next_perm().to_vec();
    let mut pair: Vec<usize> = g.pair_perm().to_vec();
    pair.extend([b, a]);
    let mut out = Vec::new();
    for c in 0..n {
        // new leaf edge hanging at the corner after c
        let mut next = base_next.clone();
        next.extend([a, b]);
        insert_after(&mut next, c, a);
        out.push(RibbonGraph::new(next, pair.clone()).expect("leaf extension"));
        // new edge between the corners after c and after d
        for d in 0..n {
            let mut next = base_next.clone();
            next.extend([a, b]);
            insert_after(&mut next, c, a);
            insert_after(&mut next, d, b);
            out.push(RibbonGraph::new(next, pair.clone()).expect("edge extension"));
        }
    }
    out
}

/// All connected ribbon graphs with exactly `1..=max_edges` edges, one per isomorphism class,
/// grouped by edge count. Built by adding one edge at a time: every connected graph arises from a
/// smaller one by adding a leaf (trees) or an edge between two corners (any non-bridge edge).
pub fn enumerate_ribbon_graphs(max_edges: usize) -> Vec<Vec<RibbonGraph>> {
    let mut levels: Vec<Vec<RibbonGraph>> = Vec::new();
    if max_edges == 0 {
        return levels;
    }
    let seeds = [
        RibbonGraph::new(vec![0, 1], vec![1, 0]).unwrap(),
        RibbonGraph::new(vec![1, 0], vec![1, 0]).unwrap(),
    ];
    let mut current: BTreeMap<CanonicalForm, RibbonGraph> = seeds
        .into_iter()
        .map(|r| (canonical_form(&BrauerGraph::plain(r.clone())), r))
        .collect();
    levels.push(current.values().cloned().collect());
    for _ in 1..max_edges {
        let mut grown = BTreeMap::new();
        for g in current.values() {
            for r in extensions(g) {
                let c = canonical_form(&BrauerGraph::plain(r.clone()));
                grown.entry(c).or_insert(r);
            }
        }
        current = grown;
        levels.push(current.values().cloned().collect());
    }
    levels
}

/// All connected Brauer graphs with at most `max_edges` edges and multiplicities in
/// `1..=max_mult`, without deformed loops, one per isomorphism class. Sorted by edge count, then
/// by canonical form.
pub fn enumerate(max_edges: usize, max_mult: u32) -> Vec<BrauerGraph> {
    let mut out = Vec::new();
    for level in enumerate_ribbon_graphs(max_edges) {
        let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
        let mut graphs = Vec::new();
        for r in level {
            let v = r.vertex_count();
            let mut mult = vec![1u32; v];
            loop {
                let g = BrauerGraph::new(r.clone(), mult.clone(), BTreeMap::new()).expect("valid multiplicities");
                let c = canonical_form(&g);
                if seen.insert(c.clone()) {
                    graphs.push((c, g));
                }
                // odometer over 1..=max_mult
                let mut i = 0;
                while i < v && mult[i] == max_mult {
                    mult[i] = 1;
                    i += 1;
                }
                if i == v {
                    break;
                }
                mult[i] += 1;
            }
        }
        graphs.sort_by(|a, b| a.0.cmp(&b.0));
        out.extend(graphs.into_iter().map(|(_, g)| g));
    }
    out
}
