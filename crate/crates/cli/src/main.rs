use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hominv::hom::{default_corpus, hom_tensor, invariant_rank};
use hominv::lab::{
    check_theorem1, exhaustive_survey, run_lemma1, run_lemma2, survey_json_lines, survey_table, SurveyOptions,
    TheoremBounds, Verdict, FLIP_SCHEDULE, LEMMA1_SCHEDULE,
};
use hominv::multigraph::{enumerate_labeled, graph_to_json, parse_graph, LabeledGraph};
use hominv::poly::{chromatic_value, count_tensions, flow_value, tutte, verify_tutte_hom_identity, Orientation};
use hominv::rational::{self, Rational};
use hominv::weighted::{automorphisms, orbit_count, parse_target, target_to_json, twin_reduce};
use hominv::{h, hom_fast, Error, WeightedGraph};

#[derive(Parser)]
#[command(name = "hominv", version, about = "Exact homomorphism counts and cycle matroid invariance checks")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// hom(F, G)
    Hom { graph: PathBuf, target: PathBuf },
    /// hom(F, G) / (Σa)^c(F)
    H { graph: PathBuf, target: PathBuf },
    /// Tensor of a k-labelled graph
    Tensor {
        #[arg(long)]
        k: usize,
        graph: PathBuf,
        target: PathBuf,
    },
    /// Tutte polynomial
    Tutte { graph: PathBuf },
    /// Chromatic polynomial at n
    Chromatic {
        #[arg(long)]
        n: u64,
        graph: PathBuf,
    },
    /// Flow polynomial at n
    Flow {
        #[arg(long)]
        n: u64,
        graph: PathBuf,
    },
    /// Automorphism group of a target
    Aut { target: PathBuf },
    /// Whether the automorphism group is generously transitive
    Gentrans { target: PathBuf },
    /// Merge twin vertices
    Twinreduce { target: PathBuf },
    /// Orbits of the automorphism group on k-tuples
    Orbits {
        #[arg(long)]
        k: usize,
        target: PathBuf,
    },
    /// Rank of the span of k-labelled tensors against the orbit count
    Ranktest {
        #[arg(long)]
        k: usize,
        /// Corpus vertex bound (default k + 2)
        #[arg(long)]
        max_vertices: Option<usize>,
        /// Corpus edge bound (default k + 3)
        #[arg(long)]
        max_edges: Option<usize>,
        target: PathBuf,
    },
    /// Number of Z_m-tensions with values in a set
    Tensions {
        #[arg(long)]
        m: u64,
        /// Comma-separated residues
        #[arg(long)]
        set: String,
        graph: PathBuf,
    },
    /// Run one of the invariance checks
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Run every check on all simple graphs up to a size
    Survey {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        pairs: usize,
    },
    /// Smallest pair of 2-isomorphic graphs with different h values
    Witness { target: PathBuf },
}

#[derive(Subcommand)]
enum Check {
    /// hom(F, G(1, (y-1)I + J)) against the Tutte polynomial
    Example1 {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        graph: PathBuf,
    },
    /// Multiplicativity of h against transitivity
    Lemma1 { target: PathBuf },
    /// Flip invariance against generous transitivity
    Lemma2 { target: PathBuf },
    /// Cycle matroid invariance of h against generous transitivity
    Theorem1 {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        pairs: usize,
        target: PathBuf,
    },
}

enum Failure {
    Input(String),
    Budget(String),
    Inconsistent(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonExactDivision { .. } => Failure::Inconsistent(e.to_string()),
            e if e.is_input_error() => Failure::Input(e.to_string()),
            e => Failure::Budget(e.to_string()),
        }
    }
}

/// Printed text and the exit status it carries.
struct Output {
    text: String,
    status: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, status: 0 }
    }

    fn verdict(text: String, verdict: Verdict) -> Self {
        let status = match verdict {
            Verdict::Consistent => 0,
            Verdict::Inconsistent => 1,
            Verdict::Inconclusive => 3,
        };
        Output { text, status }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if !out.text.is_empty() && !out.text.ends_with('\n') {
                println!();
            }
            ExitCode::from(out.status)
        }
        Err(failure) => {
            let (message, code) = match failure {
                Failure::Input(m) => (m, 2),
                Failure::Budget(m) => (m, 3),
                Failure::Inconsistent(m) => (m, 1),
            };
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path) -> impl FnOnce(Error) -> Failure + '_ {
    move |e| match Failure::from(e) {
        Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
        other => other,
    }
}

fn load_graph(path: &Path) -> Result<LabeledGraph, Failure> {
    parse_graph(&read(path)?).map_err(in_file(path))
}

/// A target document, or a graph document read as a target with unit
/// weights and edge multiplicities as B.
fn load_target(path: &Path) -> Result<WeightedGraph, Failure> {
    let text = read(path)?;
    let is_graph = serde_json::from_str::<Value>(&text)
        .ok()
        .is_some_and(|v| v.get("vertices").is_some());
    if is_graph {
        let g = parse_graph(&text).map_err(in_file(path))?;
        let g = g.graph();
        return WeightedGraph::from_edges(g.vertex_count(), g.edges()).map_err(in_file(path));
    }
    parse_target(&text).map_err(in_file(path))
}

fn render(format: Format, value: Value, table: String) -> String {
    match format {
        Format::Json => serde_json::to_string(&value).expect("json value") + "\n",
        Format::Table => table,
    }
}

fn r(x: &Rational) -> String {
    rational::format(x)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let fmt = cli.format;
    let out = match &cli.command {
        Command::Hom { graph, target } => {
            let (f, g) = (load_graph(graph)?, load_target(target)?);
            let value = hom_fast(f.graph(), &g);
            Output::ok(render(fmt, json!({ "hom": r(&value) }), r(&value)))
        }
        Command::H { graph, target } => {
            let (f, g) = (load_graph(graph)?, load_target(target)?);
            let value = h(f.graph(), &g)?;
            Output::ok(render(fmt, json!({ "h": r(&value) }), r(&value)))
        }
        Command::Tensor { k, graph, target } => {
            let (f, g) = (load_graph(graph)?, load_target(target)?);
            if f.k() != *k {
                return Err(Failure::Input(format!(
                    "{}: labels: graph has {} labels but --k is {k}",
                    graph.display(),
                    f.k()
                )));
            }
            let t = hom_tensor(&f, &g)?;
            let entries: Vec<String> = t.entries().iter().map(r).collect();
            Output::ok(render(fmt, json!({ "k": t.k(), "n": t.n(), "entries": entries }), t.to_string()))
        }
        Command::Tutte { graph } => {
            let f = load_graph(graph)?;
            let t = tutte(f.graph())?;
            let value: Value = serde_json::from_str(&t.to_json()).expect("polynomial json");
            Output::ok(render(fmt, value, t.to_string()))
        }
        Command::Chromatic { n, graph } => {
            let f = load_graph(graph)?;
            let value = chromatic_value(f.graph(), *n)?;
            Output::ok(render(fmt, json!({ "n": n, "chromatic": r(&value) }), r(&value)))
        }
        Command::Flow { n, graph } => {
            let f = load_graph(graph)?;
            let value = flow_value(f.graph(), *n)?;
            Output::ok(render(fmt, json!({ "n": n, "flow": r(&value) }), r(&value)))
        }
        Command::Aut { target } => {
            let g = load_target(target)?;
            let group = automorphisms(&g)?;
            let elements: Vec<&[usize]> = group.elements().iter().map(|p| p.images()).collect();
            let mut table = format!("order {}\n", group.order());
            for p in &elements {
                table.push_str(&format!("{}\n", join(p)));
            }
            table.push_str(&format!("orbits {}\n", orbits_text(&group.orbits())));
            let value = json!({
                "order": group.order(),
                "elements": elements,
                "orbits": group.orbits(),
                "transitive": group.is_transitive(),
                "generously_transitive": group.is_generously_transitive(),
            });
            Output::ok(render(fmt, value, table))
        }
        Command::Gentrans { target } => {
            let g = load_target(target)?;
            let group = automorphisms(&g)?;
            let generous = group.is_generously_transitive();
            let orbits = group.orbits();
            let pair = group.unswappable_pair();
            let mut table = format!("{generous}\norbits {}\n", orbits_text(&orbits));
            if let Some((u, v)) = pair {
                table.push_str(&format!("no automorphism swaps {u} and {v}\n"));
            }
            let value = json!({
                "generously_transitive": generous,
                "transitive": group.is_transitive(),
                "orbits": orbits,
                "unswappable_pair": pair,
            });
            Output::ok(render(fmt, value, table))
        }
        Command::Twinreduce { target } => {
            let g = load_target(target)?;
            let reduced = twin_reduce(&g);
            Output::ok(target_to_json(&reduced) + "\n")
        }
        Command::Orbits { k, target } => {
            let g = load_target(target)?;
            let count = orbit_count(&automorphisms(&g)?, *k);
            Output::ok(render(fmt, json!({ "k": k, "orbits": count }), count.to_string()))
        }
        Command::Ranktest {
            k,
            max_vertices,
            max_edges,
            target,
        } => {
            let g = load_target(target)?;
            let corpus = match (max_vertices, max_edges) {
                (None, None) => default_corpus(*k),
                (v, e) => enumerate_labeled(*k, v.unwrap_or(k + 2), e.unwrap_or(k + 3)),
            };
            let rank = invariant_rank(&g, *k, &corpus)?;
            let orbits = orbit_count(&automorphisms(&g)?, *k);
            let status = match rank.cmp(&orbits) {
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Less => 3,
                std::cmp::Ordering::Greater => 1,
            };
            let table = format!("rank {rank}\norbits {orbits}\ncorpus {}\n", corpus.len());
            let value = json!({ "k": k, "rank": rank, "orbits": orbits, "corpus_size": corpus.len(), "equal": rank == orbits });
            Output {
                text: render(fmt, value, table),
                status,
            }
        }
        Command::Tensions { m, set, graph } => {
            let f = load_graph(graph)?;
            let residues = parse_set(set, *m)?;
            let symmetric = residues.iter().all(|&s| residues.contains(&((m - s) % m)));
            if !symmetric {
                eprintln!("warning: set is not closed under negation; the count depends on orientation");
            }
            let count = count_tensions(f.graph(), *m, &residues, &Orientation::canonical(f.graph()))?;
            Output::ok(render(fmt, json!({ "m": m, "set": residues, "tensions": count.to_string() }), count.to_string()))
        }
        Command::Verify { check } => run_check(fmt, check)?,
        Command::Survey {
            max_n,
            jobs,
            seed,
            pairs,
        } => {
            let options = SurveyOptions {
                jobs: *jobs,
                theorem: TheoremBounds {
                    seed: *seed,
                    random_pairs: *pairs,
                    ..TheoremBounds::default()
                },
            };
            let rows = exhaustive_survey(*max_n, &options)?;
            let text = match fmt {
                Format::Json => survey_json_lines(&rows),
                Format::Table => survey_table(&rows),
            };
            let worst = rows
                .iter()
                .flat_map(|row| [row.lemma1, row.lemma2, row.theorem1])
                .chain(rows.iter().filter(|row| !row.consistent).map(|_| Verdict::Inconsistent))
                .max_by_key(|v| match v {
                    Verdict::Consistent => 0,
                    Verdict::Inconclusive => 1,
                    Verdict::Inconsistent => 2,
                })
                .unwrap_or(Verdict::Consistent);
            Output::verdict(text, worst)
        }
        Command::Witness { target } => {
            let g = load_target(target)?;
            let verdict = check_theorem1(&g, &target.display().to_string(), &witness_bounds())?;
            let table = match &verdict.witness {
                Some(w) => format!(
                    "F  {}\nF' {}\nbijection {}\nh(F)  = {}\nh(F') = {}\n",
                    serde_json::to_string(&w.left).expect("graph json"),
                    serde_json::to_string(&w.right).expect("graph json"),
                    join(&w.bijection),
                    w.h_left,
                    w.h_right
                ),
                None if verdict.generously_transitive => "none: automorphism group is generously transitive\n".into(),
                None => "none found within bounds\n".into(),
            };
            let value = json!({
                "generously_transitive": verdict.generously_transitive,
                "witness": verdict.witness,
                "verdict": verdict.verdict,
            });
            Output::verdict(render(fmt, value, table), verdict.verdict)
        }
    };
    Ok(out)
}

fn witness_bounds() -> TheoremBounds {
    TheoremBounds {
        random_pairs: 0,
        ..TheoremBounds::default()
    }
}

fn run_check(fmt: Format, check: &Check) -> Result<Output, Failure> {
    Ok(match check {
        Check::Example1 { n, y, graph } => {
            let f = load_graph(graph)?;
            let y = rational::parse(y).map_err(|e| Failure::Input(format!("--y: {e}")))?;
            let report = verify_tutte_hom_identity(f.graph(), *n, &y)?;
            let mut table = format!("{} = {}\n", report.lhs, report.rhs);
            if let Some(o) = &report.oracle {
                table.push_str(&format!("counting oracle {o}\n"));
            }
            let verdict = if report.consistent() {
                Verdict::Consistent
            } else {
                Verdict::Inconsistent
            };
            let value = serde_json::to_value(&report).expect("report json");
            Output::verdict(render(fmt, value, table), verdict)
        }
        Check::Lemma1 { target } => {
            let g = load_target(target)?;
            let report = run_lemma1(&g, &LEMMA1_SCHEDULE).map_err(twin_hint)?;
            let mut table = format!(
                "transitive {}\nmultiplicative {}\npairs {}\nverdict {}\n",
                report.transitive,
                report.multiplicative,
                report.pairs_tested,
                report.verdict.as_str()
            );
            if let Some(w) = &report.witness {
                table.push_str(&format!(
                    "F1 {}\nF2 {}\nh(F1) h(F2) = {} but h(F1.F2) = {}\n",
                    graph_to_json(&w.f1),
                    graph_to_json(&w.f2),
                    &w.h1 * &w.h2,
                    w.h_glued
                ));
            }
            let value = serde_json::to_value(&report).expect("report json");
            Output::verdict(render(fmt, value, table), report.verdict)
        }
        Check::Lemma2 { target } => {
            let g = load_target(target)?;
            let report = run_lemma2(&g, &FLIP_SCHEDULE).map_err(twin_hint)?;
            let mut table = format!(
                "generously transitive {}\nflip invariant {}\npairs {}\nverdict {}\n",
                report.generously_transitive,
                report.flip_invariant,
                report.pairs_tested,
                report.verdict.as_str()
            );
            if let Some(w) = &report.witness {
                table.push_str(&format!(
                    "F1 {}\nF2 {}\nhom(F1.F2) = {} but hom(F1^T.F2) = {}\n",
                    graph_to_json(&w.f1),
                    graph_to_json(&w.f2),
                    w.hom_glued,
                    w.hom_flipped
                ));
            }
            let value = serde_json::to_value(&report).expect("report json");
            Output::verdict(render(fmt, value, table), report.verdict)
        }
        Check::Theorem1 { seed, pairs, target } => {
            let g = load_target(target)?;
            let bounds = TheoremBounds {
                seed: *seed,
                random_pairs: *pairs,
                ..TheoremBounds::default()
            };
            let verdict = check_theorem1(&g, &target.display().to_string(), &bounds)?;
            let mut table = format!(
                "generously transitive {}\ntransitive {}\npairs {}\nverdict {}\n",
                verdict.generously_transitive,
                verdict.transitive,
                verdict.pairs_tested,
                verdict.verdict.as_str()
            );
            if let Some(w) = &verdict.witness {
                table.push_str(&format!("h(F) = {} but h(F') = {} on 2-isomorphic graphs\n", w.h_left, w.h_right));
            }
            let value = serde_json::to_value(&verdict).expect("verdict json");
            Output::verdict(render(fmt, value, table), verdict.verdict)
        }
    })
}

fn twin_hint(e: Error) -> Failure {
    match e {
        Error::NotTwinFree(i, j) => Failure::Input(format!(
            "target: vertices {i} and {j} are twins; the check needs a twin-free target (see `twinreduce`)"
        )),
        e => e.into(),
    }
}

fn parse_set(text: &str, m: u64) -> Result<Vec<u64>, Failure> {
    if m == 0 {
        return Err(Failure::Input("--m: modulus must be positive".into()));
    }
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let value: i64 = part
            .parse()
            .map_err(|_| Failure::Input(format!("--set: cannot parse {part:?} as a residue")))?;
        let residue = value.rem_euclid(m as i64) as u64;
        if !out.contains(&residue) {
            out.push(residue);
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn join(items: &[usize]) -> String {
    items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

fn orbits_text(orbits: &[Vec<usize>]) -> String {
    orbits
        .iter()
        .map(|o| format!("{{{}}}", o.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}
