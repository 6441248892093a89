//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the libtest harness so the
//! lines show up in plain `cargo test` output; exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use brauer::ainf::{
    build_category, convention_search, schroll_round_trip, square_disc, triangle_disc, trivial_extension,
    verify_relations, GradedArcSystem, FROZEN_CONVENTION,
};
use brauer::algebra::{
    self, all_cuts, basis_and_dimension, build_quiver, expected_dimension, gentle_quotient, schroll_isomorphism,
    PresentationKind,
};
use brauer::bgfile;
use brauer::invariants::{
    derived_equivalent, invariant_bundle, partition_into_classes, scope_violation, EquivalenceVerdict,
};
use brauer::kauer::{kauer_move, reachability_classes};
use brauer::ribbon::{enumerate, BrauerGraph, HalfEdge};

const DIMENSION_BUDGET: Duration = Duration::from_secs(60);
const KAUER_BUDGET: Duration = Duration::from_secs(120);
const AINF_BUDGET: Duration = Duration::from_secs(600);
const REACHABILITY_DEPTH: usize = 12;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < budget, || format!("took {t:?}, budget {budget:?}"))?;
    Ok(t)
}

/// Reverses half-edge ids; a fixed, non-trivial relabeling.
fn reversed(g: &BrauerGraph) -> BrauerGraph {
    let n = g.ribbon().half_edge_count();
    g.relabel(&(0..n).map(|h| n - 1 - h).collect::<Vec<_>>())
}

/// Face lengths from a walk around `pair ∘ prev`, independent of the library's face tracing.
fn face_lengths(g: &BrauerGraph) -> Vec<usize> {
    let r = g.ribbon();
    let n = r.half_edge_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        let mut len = 0;
        let mut h = s;
        while !seen[h] {
            seen[h] = true;
            len += 1;
            h = r.pair(r.prev(h));
        }
        if len > 0 {
            out.push(len);
        }
    }
    out.sort_unstable();
    out
}

/// Whether some fundamental cycle of a BFS spanning tree has odd length.
fn has_odd_cycle(g: &BrauerGraph) -> bool {
    let r = g.ribbon();
    let mut depth = vec![usize::MAX; r.vertex_count()];
    depth[0] = 0;
    let mut queue = VecDeque::from([0]);
    let vertices = r.vertices();
    while let Some(v) = queue.pop_front() {
        for &h in &vertices[v] {
            let w = r.vertex_of(r.pair(h));
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                queue.push_back(w);
            }
        }
    }
    (0..r.edge_count()).any(|e| {
        let (a, b) = r.edge_halves(e);
        depth[r.vertex_of(a)] % 2 == depth[r.vertex_of(b)] % 2
    })
}

fn graph(text: &str) -> BrauerGraph {
    bgfile::parse(text).expect("fixture parses")
}

fn criterion_1() -> Check {
    for n in 1..=6 {
        let f = BrauerGraph::star(n, 1).faces();
        ensure(f.perimeters == vec![2 * n], || {
            format!("star {n}: perimeters {:?}", f.perimeters)
        })?;
    }
    let p = BrauerGraph::single_loop(1).faces().perimeters;
    ensure(p == vec![1, 1], || format!("adjacent loop: perimeters {p:?}"))?;
    Ok("stars 1..6 have one face of perimeter 2n; adjacent loop has {1, 1}".into())
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let graphs = enumerate(3, 2);
    for g in &graphs {
        let b = basis_and_dimension(g).map_err(|e| format!("{}: {e}", bgfile::write(g)))?;
        ensure(b.dimension() == expected_dimension(g), || bgfile::write(g))?;
    }
    let t = within(start, DIMENSION_BUDGET)?;
    Ok(format!("{} graphs, {t:.1?}", graphs.len()))
}

const TWO_TRIVALENT: &str = "bg 1
vertex u 1
vertex w 1
vertex a 1
vertex b 1
vertex c 1
vertex d 1
order u : u1 u2 u3
order w : w1 w2 w3
order a : a1
order b : b1
order c : c1
order d : d1
edge u1 w1
edge u2 a1
edge u3 b1
edge w2 c1
edge w3 d1
";

fn criterion_3() -> Check {
    let g = graph(TWO_TRIVALENT);
    let r = g.ribbon();
    let inner = g.edge_by_name("u1").unwrap();
    let (u, w) = (r.vertex_of(0), r.vertex_of(3));
    let p = build_quiver(&g, PresentationKind::Ordinary).map_err(|e| e.to_string())?;
    let at = |h: HalfEdge| r.vertex_of(h);
    // αβγ − δεζ: the two full turns at the inner edge, one around each trivalent vertex
    let commutation = p.relations.iter().any(|rel| {
        rel.terms.len() == 2
            && rel.terms[0].0 == -rel.terms[1].0
            && rel
                .terms
                .iter()
                .all(|(_, q)| q.len() == 3 && q.source == inner && q.target == inner)
            && {
                let sides: BTreeSet<usize> = rel.terms.iter().map(|(_, q)| at(q.arrows[0])).collect();
                sides == BTreeSet::from([u, w])
            }
    });
    // γδ: into the inner edge around one vertex, then out of it around the other
    let zero = p.relations.iter().any(|rel| {
        rel.is_monomial() && {
            let q = &rel.terms[0].1;
            q.len() == 2 && at(q.arrows[0]) != at(q.arrows[1]) && {
                let a = p.arrow(q.arrows[0]).unwrap();
                a.target == inner
            }
        }
    });
    ensure(commutation, || "no relation αβγ − δεζ".into())?;
    ensure(zero, || "no relation γδ".into())?;
    let dim = basis_and_dimension(&g).map_err(|e| e.to_string())?.dimension();
    ensure(dim == 22, || format!("dimension {dim}"))?;
    for m in 1..=3u32 {
        let star = BrauerGraph::star(4, m);
        let q = build_quiver(&star, PresentationKind::Reduced).map_err(|e| e.to_string())?;
        ensure(q.arrows.len() == 4 && q.vertex_count == 4, || {
            format!("m={m}: not a 4-cycle")
        })?;
        let mut succ = BTreeMap::new();
        for a in &q.arrows {
            succ.insert(a.source, a.target);
        }
        let mut v = 0;
        for _ in 0..4 {
            v = succ[&v];
        }
        ensure(v == 0 && succ.len() == 4, || {
            format!("m={m}: arrows do not form one cycle")
        })?;
        let ok = !q.relations.is_empty()
            && q.relations
                .iter()
                .all(|rel| rel.is_monomial() && rel.terms[0].1.len() == (4 * m + 1) as usize);
        ensure(ok, || format!("m={m}: relations are not α^{}", 4 * m + 1))?;
        let d = algebra::presentation_basis(&star, &q)
            .map_err(|e| e.to_string())?
            .dimension();
        ensure(d == expected_dimension(&star), || {
            format!("m={m}: reduced dimension {d}")
        })?;
    }
    Ok("two-trivalent tree has αβγ − δεζ and γδ, dimension 22; reduced star is one cycle with α^(4m+1) = 0".into())
}

fn exceptional_multiplicity(g: &BrauerGraph) -> Option<u32> {
    let big: Vec<u32> = g.mult().iter().copied().filter(|&m| m > 1).collect();
    match big.len() {
        0 => Some(1),
        1 => Some(big[0]),
        _ => None,
    }
}

fn criterion_4() -> Check {
    let graphs = enumerate(4, 2);
    let mut trees: BTreeMap<(usize, u32), Vec<&BrauerGraph>> = BTreeMap::new();
    for g in &graphs {
        let tree = g.vertex_count() == g.edge_count() + 1;
        if let (true, Some(m), true) = (tree, exceptional_multiplicity(g), g.edge_count() >= 2) {
            trees.entry((g.edge_count(), m)).or_default().push(g);
        }
    }
    let mut pairs = 0;
    for class in trees.values() {
        for a in class {
            for b in class {
                pairs += 1;
                ensure(derived_equivalent(a, b) == EquivalenceVerdict::Equivalent, || {
                    format!("trees not equivalent:\n{}\n{}", bgfile::write(a), bgfile::write(b))
                })?;
            }
        }
    }
    let moved: Vec<BrauerGraph> = graphs.iter().map(|g| reversed(&g.mirror())).collect();
    let bundles: Vec<_> = graphs.iter().map(invariant_bundle).collect();
    for (i, g) in graphs.iter().enumerate() {
        ensure(invariant_bundle(&moved[i]) == bundles[i], || {
            format!("bundle moved:\n{}", bgfile::write(g))
        })?;
        ensure(scope_violation(&moved[i]) == scope_violation(g), || {
            "scope moved".into()
        })?;
    }
    // all pairs up to three edges; four-edge graphs against their neighbours in the enumeration
    let mut checked = 0;
    for i in 0..graphs.len() {
        let partners: Vec<usize> = if graphs[i].edge_count() <= 3 {
            (0..graphs.len()).filter(|&j| graphs[j].edge_count() <= 3).collect()
        } else {
            (i.saturating_sub(3)..(i + 4).min(graphs.len())).collect()
        };
        for j in partners {
            checked += 1;
            let v = derived_equivalent(&graphs[i], &graphs[j]);
            ensure(v == derived_equivalent(&moved[i], &graphs[j]), || {
                "verdict changed".into()
            })?;
            ensure(v == derived_equivalent(&graphs[i], &moved[j]), || {
                "verdict changed".into()
            })?;
        }
    }
    Ok(format!(
        "{} tree classes, {pairs} tree pairs equivalent; {} graphs, {checked} verdicts stable under relabeling and mirroring",
        trees.len(),
        graphs.len()
    ))
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let graphs = enumerate(4, 2);
    let mut moves = 0;
    for g in graphs.iter().filter(|g| g.edge_count() >= 2) {
        let b = invariant_bundle(g);
        for e in 0..g.edge_count() {
            let (moved, _) = kauer_move(g, e).map_err(|err| format!("{err}:\n{}", bgfile::write(g)))?;
            moves += 1;
            ensure(invariant_bundle(&moved) == b, || {
                format!("edge {e} of\n{}", bgfile::write(g))
            })?;
        }
    }
    let t = within(start, KAUER_BUDGET)?;
    Ok(format!("{moves} moves on {} graphs, {t:.1?}", graphs.len()))
}

fn as_sets(classes: &[Vec<usize>]) -> BTreeSet<BTreeSet<usize>> {
    classes.iter().map(|c| c.iter().copied().collect()).collect()
}

fn criterion_6() -> Check {
    let graphs: Vec<BrauerGraph> = enumerate(4, 1)
        .into_iter()
        .filter(|g| g.edge_count() >= 2 && g.genus() == Ok(0))
        .collect();
    let invariant = partition_into_classes(&graphs).map_err(|(_, e)| e)?;
    let reach = reachability_classes(&graphs, REACHABILITY_DEPTH);
    ensure(as_sets(&invariant) == as_sets(&reach), || {
        format!(
            "{} invariant classes, {} reachability classes",
            invariant.len(),
            reach.len()
        )
    })?;
    let higher: Vec<BrauerGraph> = enumerate(4, 1)
        .into_iter()
        .filter(|g| g.edge_count() >= 2 && g.genus().is_ok_and(|k| k >= 1))
        .collect();
    let hi_inv = partition_into_classes(&higher).map_err(|(_, e)| e)?;
    let hi_reach = reachability_classes(&higher, REACHABILITY_DEPTH);
    Ok(format!(
        "genus 0: {} graphs, {} classes agree; genus ≥ 1 (reported only): {} graphs, {} invariant classes, {} reachability classes",
        graphs.len(),
        invariant.len(),
        higher.len(),
        hi_inv.len(),
        hi_reach.len()
    ))
}

/// Stably biserial fixtures: an edge with adjacent loops at one end, the loops deformed.
fn deformed_fixture(d: usize) -> BrauerGraph {
    let mut order = vec!["a".to_string()];
    let mut edges = vec!["edge a b".to_string()];
    let mut deformed = Vec::new();
    for i in 0..d {
        order.push(format!("l{i}"));
        order.push(format!("k{i}"));
        edges.push(format!("edge l{i} k{i}"));
        deformed.push(format!("deformed l{i} {}", i + 2));
    }
    let text = format!(
        "bg 1\nvertex u 1\nvertex w 1\norder u : {}\norder w : b\n{}\n{}\n",
        order.join(" "),
        edges.join("\n"),
        deformed.join("\n")
    );
    graph(&text)
}

fn criterion_7() -> Check {
    let mut computed = 0;
    let mut moves = 0;
    let mut fixtures: Vec<BrauerGraph> = enumerate(4, 2)
        .into_iter()
        .filter(|g| scope_violation(g).is_none())
        .collect();
    for d in [1, 2] {
        let g = deformed_fixture(d);
        ensure(g.deformed().len() == d, || {
            format!("fixture has {} deformed loops", g.deformed().len())
        })?;
        fixtures.push(g);
    }
    for g in &fixtures {
        let b = invariant_bundle(g);
        let Some(rank) = b.torus_rank else { continue };
        computed += 1;
        let expected = g.edge_count() as i64 - g.vertex_count() as i64 - g.deformed().len() as i64 + 2;
        ensure(rank == expected, || {
            format!("torus rank {rank}, expected {expected}:\n{}", bgfile::write(g))
        })?;
        for e in 0..g.edge_count() {
            let (moved, _) = kauer_move(g, e).map_err(|err| format!("{err}:\n{}", bgfile::write(g)))?;
            moves += 1;
            let after = invariant_bundle(&moved).torus_rank;
            ensure(after == Some(rank), || {
                format!("move at {e} changes torus rank:\n{}", bgfile::write(g))
            })?;
        }
    }
    let ranks: Vec<Option<i64>> = [1, 2]
        .map(|d| invariant_bundle(&deformed_fixture(d)).torus_rank)
        .to_vec();
    ensure(ranks.iter().all(Option::is_some), || format!("fixture ranks {ranks:?}"))?;
    Ok(format!(
        "{computed} graphs with a torus rank (deformed fixtures: {ranks:?}), stable under {moves} moves"
    ))
}

fn criterion_8() -> Check {
    let start = Instant::now();
    let mut suite: Vec<(String, GradedArcSystem)> = Vec::new();
    for (i, g) in enumerate(3, 2).iter().enumerate() {
        suite.push((
            format!("seed {i}"),
            GradedArcSystem::seed(g).map_err(|e| e.to_string())?,
        ));
    }
    suite.push(("3-arc disc".into(), triangle_disc()));
    suite.push(("4-arc disc".into(), square_disc()));
    let found = convention_search(&suite);
    ensure(found == vec![FROZEN_CONVENTION], || {
        format!("surviving conventions {found:?}")
    })?;
    let mut tuples = 0;
    for (name, s) in &suite {
        let b = build_category(s, FROZEN_CONVENTION);
        ensure(b.conflicts.is_empty(), || format!("{name}: conflicting operations"))?;
        ensure(b.category.degree_violation().is_none(), || {
            format!("{name}: degree violation")
        })?;
        ensure(b.category.unitality_violation().is_none(), || {
            format!("{name}: not strictly unital")
        })?;
        let t = trivial_extension(&b.category, FROZEN_CONVENTION);
        for (what, c) in [("category", &b.category), ("trivial extension", &t)] {
            let r = verify_relations(c, None);
            ensure(r.passed(), || format!("{name} {what}: {:?}", r.failure))?;
            tuples += r.checked;
        }
    }
    let t = within(start, AINF_BUDGET)?;
    Ok(format!(
        "{} fixtures and their trivial extensions pass under the unique convention, {tuples} tuples, {t:.1?}",
        suite.len()
    ))
}

fn criterion_9() -> Check {
    let mut cuts = 0;
    let mut twists = BTreeMap::new();
    for g in enumerate(3, 1) {
        for cut in all_cuts(&g) {
            cuts += 1;
            let twist = schroll_round_trip(&g, &cut, FROZEN_CONVENTION)
                .map_err(|e| e.to_string())?
                .map_err(|m| format!("mismatch at {:?}:\n{}", m.tuple, bgfile::write(&g)))?;
            *twists.entry(format!("{twist:?}")).or_insert(0) += 1;
            let a = gentle_quotient(&g, &cut)
                .and_then(|q| q.basis())
                .map_err(|e| e.to_string())?;
            let t = algebra::trivial_extension(&a);
            ensure(t.dimension() == expected_dimension(&g), || {
                format!("triv dimension {}", t.dimension())
            })?;
            schroll_isomorphism(&g, &cut).map_err(|e| e.to_string())?;
        }
    }
    Ok(format!("{cuts} cuts, correspondences by twist {twists:?}"))
}

fn criterion_10() -> Check {
    let graphs = enumerate(4, 2);
    let mut slice = 0;
    for g in &graphs {
        let b = invariant_bundle(g);
        let expected: Vec<i64> = {
            let mut v: Vec<i64> = face_lengths(g).iter().map(|&p| -(p as i64)).collect();
            v.sort_unstable();
            v
        };
        let mut got = b.omega_boundary.clone();
        got.sort_unstable();
        ensure(got == expected, || format!("Ω∂ {got:?} vs {expected:?}"))?;
        ensure(
            b.omega_punctures.len() == g.vertex_count() && b.omega_punctures.iter().all(|&w| w == 0),
            || format!("Ω𝒫 {:?}", b.omega_punctures),
        )?;
        let bip = !has_odd_cycle(g);
        ensure((b.sigma_lf == 0) == bip && b.bipartite == bip, || {
            format!("σ mismatch:\n{}", bgfile::write(g))
        })?;
        if b.genus >= 1 {
            slice += 1;
            ensure((b.gcd_lf == Some(2)) == bip && b.gcd_lf.is_some(), || {
                format!("gcd mismatch:\n{}", bgfile::write(g))
            })?;
        }
    }
    Ok(format!("{} graphs, {slice} of genus ≥ 1", graphs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 face calibration", criterion_1),
        ("2 dimension oracle", criterion_2),
        ("3 presentation fixtures", criterion_3),
        ("4 derived-equivalence decision", criterion_4),
        ("5 Kauer invariance", criterion_5),
        ("6 sphere reachability", criterion_6),
        ("7 torus rank", criterion_7),
        ("8 A-infinity relation suite", criterion_8),
        ("9 trivial extension round trip", criterion_9),
        ("10 line-field invariants", criterion_10),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{:.1?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why} [{:.1?}]", start.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
