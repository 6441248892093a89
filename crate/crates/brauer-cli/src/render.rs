//! Text renderings of library results.

use std::fmt::Write as _;

use brauer::ainf::{BrauerCategory, FixtureCheck, RelationReport, SignConvention, Toggle};
use brauer::invariants::{class_key, invariant_bundle, EquivalenceVerdict, FailedCondition, InvariantBundle};
use brauer::kauer::{edge_label, SearchOutcome, TiltingDescriptor};
use brauer::ribbon::{canonical_form, BrauerGraph, CanonicalForm};
use serde::Serialize;

fn list<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(T::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn optional<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "none".to_string(), T::to_string)
}

pub fn bundle(b: &InvariantBundle) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| writeln!(out, "{k}: {v}").unwrap();
    line("v_count", b.v_count.to_string());
    line("e_count", b.e_count.to_string());
    line("f_count", b.f_count.to_string());
    line("perimeters", list(&b.perimeters));
    line("multiplicities", list(&b.multiplicities));
    line("bipartite", b.bipartite.to_string());
    line("genus", b.genus.to_string());
    line("stable_k0_rank", b.stable_k0_rank.to_string());
    line("torus_rank", optional(&b.torus_rank));
    line("omega_boundary", list(&b.omega_boundary));
    line("omega_punctures", list(&b.omega_punctures));
    line("sigma_lf", b.sigma_lf.to_string());
    line("gcd_lf", optional(&b.gcd_lf));
    line("deformed_count", b.deformed_count.to_string());
    line("exceptional_local", b.exceptional_local.to_string());
    for n in &b.notes {
        line("note", n.clone());
    }
    out
}

fn condition(c: FailedCondition) -> &'static str {
    match c {
        FailedCondition::Counts => "counts",
        FailedCondition::Perimeters => "perimeters",
        FailedCondition::Multiplicities => "multiplicities",
        FailedCondition::Bipartite => "bipartite",
    }
}

fn conditions(cs: &[FailedCondition]) -> String {
    cs.iter().map(|&c| condition(c)).collect::<Vec<_>>().join(", ")
}

pub fn verdict(v: &EquivalenceVerdict) -> String {
    match v {
        EquivalenceVerdict::Equivalent => "Equivalent".into(),
        EquivalenceVerdict::NotEquivalent(cs) => format!("NotEquivalent: {}", conditions(cs)),
        EquivalenceVerdict::OutOfScope(reason) => format!("OutOfScope: {reason}"),
    }
}

/// Rewrites `a<h>*a<h>` paths with half-edge names.
fn named_path(g: &BrauerGraph, path: &str) -> String {
    path.split('*')
        .map(|a| match a.strip_prefix('a').and_then(|h| h.parse::<usize>().ok()) {
            Some(h) => format!("a[{}]", g.half_edge_name(h)),
            None => a.to_string(),
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// The descriptor as `.bg` comment lines, so that the output of `mutate` still parses.
pub fn descriptor(g: &BrauerGraph, d: &TiltingDescriptor) -> String {
    let case = match d.case {
        brauer::kauer::KauerCase::Leaf => "leaf",
        brauer::kauer::KauerCase::LoopPerimeterOne => "loop_perimeter_one",
        brauer::kauer::KauerCase::Generic => "generic",
    };
    let mut out = format!("# move {} case {case}\n", edge_label(g, d.edge));
    for t in &d.terms {
        write!(out, "# term {} P[{}]", t.degree, edge_label(g, t.projective)).unwrap();
        if !t.map.is_empty() {
            write!(out, " via {}", named_path(g, &t.map)).unwrap();
        }
        out.push('\n');
    }
    out
}

fn indented(form: &CanonicalForm) -> String {
    form.as_str().lines().map(|l| format!("  {l}\n")).collect()
}

pub fn search(o: &SearchOutcome) -> String {
    match o {
        SearchOutcome::Found(seq) => {
            let mut out = format!("Found: {} moves\nsource\n{}", seq.steps.len(), indented(&seq.source));
            for s in &seq.steps {
                write!(out, "move {}\n{}", s.edge, indented(&s.result)).unwrap();
            }
            out
        }
        SearchOutcome::NotFound { max_depth } => format!("NotFound: no sequence of at most {max_depth} moves\n"),
        SearchOutcome::NotEquivalent(cs) => format!("NotEquivalent: {}\n", conditions(cs)),
        SearchOutcome::OutOfScope(reason) => format!("OutOfScope: {reason}\n"),
    }
}

pub fn classes(graphs: &[BrauerGraph], classes: &[Vec<usize>]) -> String {
    let mut out = String::new();
    for (i, class) in classes.iter().enumerate() {
        let (v, e, f, perimeters, multiplicities, bipartite) = class_key(&invariant_bundle(&graphs[class[0]]));
        writeln!(
            out,
            "class {} members={} v={v} e={e} f={f} perimeters={} multiplicities={} bipartite={bipartite}",
            i + 1,
            class.len(),
            list(&perimeters),
            list(&multiplicities)
        )
        .unwrap();
        for &g in class {
            out.push_str(&indented(&canonical_form(&graphs[g])));
            out.push('\n');
        }
    }
    out
}

fn toggle(t: Toggle) -> &'static str {
    match t {
        Toggle::Plus => "plus",
        Toggle::Minus => "minus",
    }
}

fn convention(c: &SignConvention) -> String {
    format!(
        "composition={} trivial_extension={} higher={}",
        toggle(c.composition),
        toggle(c.trivial_extension),
        toggle(c.higher)
    )
}

fn report(what: &str, r: &RelationReport) -> String {
    match &r.failure {
        None => format!("{what}: pass ({} tuples up to length {})\n", r.checked, r.max_len),
        Some(f) => {
            let residual: Vec<String> = f.residual.iter().map(|(k, c)| format!("{c}·#{k}")).collect();
            format!(
                "{what}: FAIL at tuple {} with residual {}\n",
                list(&f.tuple),
                residual.join(" + ")
            )
        }
    }
}

pub fn ainf(b: &BrauerCategory, check: &FixtureCheck, surviving: Option<&[SignConvention]>) -> String {
    let mut out = format!("convention {}\n", convention(&brauer::ainf::FROZEN_CONVENTION));
    writeln!(
        out,
        "category: dimension {}, max arity {}, disc sequences {}",
        b.category.dimension(),
        b.category.max_arity(),
        b.system.disc_sequences().len()
    )
    .unwrap();
    out.push_str(&report("relations", &check.category));
    out.push_str(&report("trivial extension relations", &check.trivial_extension));
    if let Some(s) = surviving {
        writeln!(out, "conventions passing: {}", s.len()).unwrap();
        for c in s {
            writeln!(out, "  {}", convention(c)).unwrap();
        }
    }
    out
}

#[derive(Serialize)]
pub struct AinfJson<'a> {
    pub convention: SignConvention,
    pub dimension: usize,
    pub max_arity: usize,
    pub check: &'a FixtureCheck,
    pub surviving_conventions: Option<&'a [SignConvention]>,
}
