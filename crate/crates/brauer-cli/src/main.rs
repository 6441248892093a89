//! `brauer`: batch command-line access to the brauer library.
//!
//! Exit codes: 0 success, equivalent or pass; 1 not equivalent or fail; 2 usage or parse
//! error; 3 out of scope.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use brauer::ainf::{self, GradedArcSystem, FROZEN_CONVENTION};
use brauer::algebra::{self, PresentationKind};
use brauer::bgfile::{self, BgDocument};
use brauer::invariants::{self, EquivalenceVerdict};
use brauer::kauer::{self, SearchOutcome};
use brauer::ribbon::{self, BrauerGraph};
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

const OK: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;
const OUT_OF_SCOPE: u8 = 3;

#[derive(Parser)]
#[command(name = "brauer", version, about = "Brauer graph algebras from .bg files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Ordinary,
    Stably,
    Reduced,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a file and check the graph and any arc-system annotations
    Validate { file: PathBuf },
    /// Print the invariant bundle
    Invariants {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide derived equivalence of two Brauer graph algebras
    Compare {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a quiver-with-relations presentation
    Present {
        file: PathBuf,
        /// Defaults to `stably` for graphs with deformed loops, `ordinary` otherwise
        #[arg(long, value_enum)]
        kind: Option<Kind>,
    },
    /// Compute the dimension of the algebra from a basis
    Dim { file: PathBuf },
    /// Apply a Kauer move at the edge containing the named half-edge
    Mutate {
        file: PathBuf,
        #[arg(long)]
        edge: String,
    },
    /// Search for a sequence of Kauer moves from the first graph to the second
    Search {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        max_depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List all connected Brauer graphs with exactly N edges, up to isomorphism
    Enumerate {
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        max_mult: u32,
        #[arg(long)]
        genus: Option<usize>,
    },
    /// Group the graphs with exactly N edges into derived-equivalence classes
    Classes {
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        max_mult: u32,
    },
    /// Check the A-infinity relations of the category of an arc system and its trivial extension
    AinfCheck {
        file: PathBuf,
        #[arg(long)]
        max_len: Option<usize>,
        /// Also try every sign-toggle combination on this file
        #[arg(long)]
        convention_search: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// A diagnostic for standard error, with the exit code to use.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: USAGE,
            message: message.into(),
        }
    }

    fn fail(message: impl Into<String>) -> Failure {
        Failure {
            code: FAIL,
            message: message.into(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read_document(path: &Path) -> Result<BgDocument, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    bgfile::parse_document(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<BrauerGraph, Failure> {
    Ok(read_document(path)?.graph)
}

fn has_annotations(doc: &BgDocument) -> bool {
    !doc.faces.is_empty() || !doc.degrees.is_empty() || !doc.windings.is_empty()
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable output")
}

fn validate(file: &Path) -> Outcome {
    let doc = read_document(file)?;
    let g = &doc.graph;
    let genus = g.genus().map_err(|e| Failure::fail(e.to_string()))?;
    println!(
        "valid: {} vertices, {} edges, {} faces, genus {genus}",
        g.vertex_count(),
        g.edge_count(),
        g.faces().perimeters.len()
    );
    if has_annotations(&doc) {
        let s = GradedArcSystem::from_document(&doc).map_err(|e| Failure::fail(format!("arc system: {e}")))?;
        println!("arc system: {} disc faces", s.disc_sequences().len());
    }
    Ok(OK)
}

fn compare(first: &Path, second: &Path, format: Format) -> Outcome {
    let verdict = invariants::derived_equivalent(&read_graph(first)?, &read_graph(second)?);
    match format {
        Format::Text => println!("{}", render::verdict(&verdict)),
        Format::Json => println!("{}", json(&verdict)),
    }
    Ok(match verdict {
        EquivalenceVerdict::Equivalent => OK,
        EquivalenceVerdict::NotEquivalent(_) => FAIL,
        EquivalenceVerdict::OutOfScope(_) => OUT_OF_SCOPE,
    })
}

fn present(file: &Path, kind: Option<Kind>) -> Outcome {
    let g = read_graph(file)?;
    let kind = match kind {
        Some(Kind::Ordinary) => PresentationKind::Ordinary,
        Some(Kind::Stably) => PresentationKind::StablyBiserial,
        Some(Kind::Reduced) => PresentationKind::Reduced,
        None if g.deformed().is_empty() => PresentationKind::Ordinary,
        None => PresentationKind::StablyBiserial,
    };
    let p = algebra::build_quiver(&g, kind).map_err(|e| Failure::fail(e.to_string()))?;
    print!("{}", p.to_text());
    Ok(OK)
}

fn dim(file: &Path) -> Outcome {
    let g = read_graph(file)?;
    let basis = algebra::basis_and_dimension(&g).map_err(|e| Failure::fail(e.to_string()))?;
    println!("{}", basis.dimension());
    Ok(OK)
}

fn mutate(file: &Path, edge: &str) -> Outcome {
    let g = read_graph(file)?;
    let e = g
        .edge_by_name(edge)
        .ok_or_else(|| Failure::usage(format!("no half-edge named {edge}")))?;
    let (moved, descriptor) = kauer::kauer_move(&g, e).map_err(|e| Failure::fail(e.to_string()))?;
    print!("{}", bgfile::write(&moved));
    print!("{}", render::descriptor(&g, &descriptor));
    Ok(OK)
}

fn search(first: &Path, second: &Path, max_depth: usize, format: Format) -> Outcome {
    let outcome = kauer::mutation_search(&read_graph(first)?, &read_graph(second)?, max_depth);
    match format {
        Format::Text => print!("{}", render::search(&outcome)),
        Format::Json => println!("{}", json(&outcome)),
    }
    Ok(match outcome {
        SearchOutcome::Found(_) => OK,
        SearchOutcome::NotFound { .. } | SearchOutcome::NotEquivalent(_) => FAIL,
        SearchOutcome::OutOfScope(_) => OUT_OF_SCOPE,
    })
}

fn graphs_with(edges: usize, max_mult: u32) -> Result<Vec<BrauerGraph>, Failure> {
    if edges == 0 || max_mult == 0 {
        return Err(Failure::usage("--edges and --max-mult must be positive"));
    }
    Ok(ribbon::enumerate(edges, max_mult)
        .into_iter()
        .filter(|g| g.edge_count() == edges)
        .collect())
}

fn enumerate(edges: usize, max_mult: u32, genus: Option<usize>) -> Outcome {
    let graphs: Vec<BrauerGraph> = graphs_with(edges, max_mult)?
        .into_iter()
        .filter(|g| genus.is_none() || g.genus().ok() == genus)
        .collect();
    for (i, g) in graphs.iter().enumerate() {
        if i > 0 {
            println!();
        }
        print!("{}", ribbon::canonical_form(g));
    }
    eprintln!("{} graphs", graphs.len());
    Ok(OK)
}

fn classes(edges: usize, max_mult: u32) -> Outcome {
    let all = graphs_with(edges, max_mult)?;
    let (graphs, skipped): (Vec<BrauerGraph>, Vec<BrauerGraph>) =
        all.into_iter().partition(|g| invariants::scope_violation(g).is_none());
    if !skipped.is_empty() {
        eprintln!("{} graphs out of scope", skipped.len());
    }
    if graphs.is_empty() {
        return Ok(OUT_OF_SCOPE);
    }
    let classes = invariants::partition_into_classes(&graphs).map_err(|(_, reason)| Failure::fail(reason))?;
    print!("{}", render::classes(&graphs, &classes));
    Ok(OK)
}

fn ainf_check(file: &Path, max_len: Option<usize>, convention_search: bool, format: Format) -> Outcome {
    if max_len.is_some_and(|l| l < 3) {
        return Err(Failure::usage("--max-len must be at least 3"));
    }
    let doc = read_document(file)?;
    let s = GradedArcSystem::from_document(&doc).map_err(|e| Failure::fail(e.to_string()))?;
    let name = file.display().to_string();
    let check = ainf::check_fixture(&name, &s, FROZEN_CONVENTION, max_len);
    let surviving = convention_search.then(|| ainf::convention_search(&[(name, s.clone())]));
    let b = ainf::build_category(&s, FROZEN_CONVENTION);
    match format {
        Format::Text => print!("{}", render::ainf(&b, &check, surviving.as_deref())),
        Format::Json => println!(
            "{}",
            json(&render::AinfJson {
                convention: FROZEN_CONVENTION,
                dimension: b.category.dimension(),
                max_arity: b.category.max_arity(),
                check: &check,
                surviving_conventions: surviving.as_deref(),
            })
        ),
    }
    let passed = check.category.passed() && check.trivial_extension.passed();
    Ok(if passed { OK } else { FAIL })
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Invariants { file, format } => {
            let bundle = invariants::invariant_bundle(&read_graph(&file)?);
            match format {
                Format::Text => print!("{}", render::bundle(&bundle)),
                Format::Json => println!("{}", json(&bundle)),
            }
            Ok(OK)
        }
        Command::Compare { first, second, format } => compare(&first, &second, format),
        Command::Present { file, kind } => present(&file, kind),
        Command::Dim { file } => dim(&file),
        Command::Mutate { file, edge } => mutate(&file, &edge),
        Command::Search {
            first,
            second,
            max_depth,
            format,
        } => search(&first, &second, max_depth, format),
        Command::Enumerate { edges, max_mult, genus } => enumerate(edges, max_mult, genus),
        Command::Classes { edges, max_mult } => classes(edges, max_mult),
        Command::AinfCheck {
            file,
            max_len,
            convention_search,
            format,
        } => ainf_check(&file, max_len, convention_search, format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // the error, then the full grammar
            let _ = e.print();
            eprintln!("\n{}", Cli::command().render_long_help());
            return ExitCode::from(USAGE);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    ExitCode::from(code)
}
