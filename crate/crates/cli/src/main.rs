use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Args, Parser, Subcommand};
use multicone::claims::run_claims;
use multicone::closed::{
    complement_multicone_c3_spectrum, multicone_adjacency_spectrum, multicone_laplacian_spectrum,
};
use multicone::graph6::{self, OnError};
use multicone::invariants::summarize;
use multicone::isomorphism::are_isomorphic;
use multicone::numeric::eigenvalues_numeric;
use multicone::perfection::{is_perfect, multicone_max_len};
use multicone::search::{mate_degree_audit, verify_remark1};
use multicone::{
    certify_ds, char_poly_exact, find_cospectral_mates, parse_expr, Error, Expr, Graph, MatrixKind,
    MulticoneParams, SearchSpace,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "multicone",
    version,
    about = "Spectra, cospectral mates and perfectness of multicone graphs"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for scans.
    #[arg(long, global = true, env = "MULTICONE_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build graphs and print them as graph6.
    Gen(GraphInput),
    /// Eigenvalues of a graph, grouped by multiplicity.
    Spec {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value = "A")]
        kind: MatrixKind,
        /// Also print the exact characteristic polynomial.
        #[arg(long)]
        exact: bool,
    },
    /// Closed-form spectrum of K_w ∇ mC_n.
    Closed {
        #[arg(long)]
        w: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "A")]
        kind: MatrixKind,
        /// Adjacency spectrum of the complement (n = 3 only).
        #[arg(long)]
        complement: bool,
    },
    /// Compare two graphs: exact cospectrality and isomorphism.
    Cmp {
        /// Expression or graph6.
        #[arg(long)]
        a: String,
        /// Expression or graph6.
        #[arg(long)]
        b: String,
        #[arg(long, default_value = "A")]
        kind: MatrixKind,
    },
    /// Exhaustive search for cospectral mates.
    Hunt {
        /// Expression or graph6.
        #[arg(long)]
        target: String,
        #[arg(long, default_value = "A")]
        kind: MatrixKind,
        /// Labeled enumeration size; defaults to the target's order.
        #[arg(long)]
        n: Option<usize>,
        /// Scan a graph6 corpus instead of labeled graphs.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        connected_only: bool,
        /// Only candidates with this many edges.
        #[arg(long)]
        edges: Option<usize>,
        /// Allow the 8-vertex labeled enumeration.
        #[arg(long)]
        long_run: bool,
    },
    /// Spectral and structural invariants.
    Invariants(GraphInput),
    /// Perfectness by odd hole and antihole search.
    Perfect {
        #[command(flatten)]
        input: GraphInput,
        /// Longest cycle searched; defaults to the vertex count (rim length for MC).
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Rerun the registered claims.
    VerifyPaper {
        /// Include the 7-vertex labeled scans.
        #[arg(long)]
        all: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Graph expression, e.g. "(2*C4)~(3*C4+K3)+5*C4".
    #[arg(long)]
    expr: Option<String>,
    #[arg(long)]
    g6: Option<String>,
    /// File with one graph6 string per line.
    #[arg(long)]
    corpus: Option<PathBuf>,
}

enum Failure {
    Usage(anyhow::Error),
    Internal(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NumericFailure { .. } => Failure::Internal(e.into()),
            _ => Failure::Usage(e.into()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.into())
    }
}

type Outcome = Result<(), Failure>;

/// A graph with the text it came from.
struct Input {
    label: String,
    graph: Graph,
    expr: Option<Expr>,
}

fn parse_graph_text(text: &str) -> Result<Input, Failure> {
    match parse_expr(text) {
        Ok(expr) => Ok(Input {
            label: text.to_string(),
            graph: expr.build()?,
            expr: Some(expr),
        }),
        Err(expr_err) => match graph6::decode(text.trim().as_bytes()) {
            Ok(graph) => Ok(Input {
                label: text.to_string(),
                graph,
                expr: None,
            }),
            Err(_) => Err(Failure::Usage(anyhow!(
                "not an expression or graph6 string: {expr_err}"
            ))),
        },
    }
}

fn load(input: &GraphInput) -> Result<Vec<Input>, Failure> {
    if let Some(text) = &input.expr {
        let expr = parse_expr(text)?;
        return Ok(vec![Input {
            label: text.clone(),
            graph: expr.build()?,
            expr: Some(expr),
        }]);
    }
    if let Some(text) = &input.g6 {
        return Ok(vec![Input {
            label: text.clone(),
            graph: graph6::decode(text.as_bytes())?,
            expr: None,
        }]);
    }
    let path = input.corpus.as_ref().expect("clap enforces one input");
    let (graphs, _) = graph6::read_corpus(path, OnError::Abort)?;
    Ok(graphs
        .into_iter()
        .map(|graph| Input {
            label: graph6::encode(&graph),
            graph,
            expr: None,
        })
        .collect())
}

fn multicone_params(expr: &Option<Expr>) -> Option<MulticoneParams> {
    match expr {
        Some(Expr::Multicone(w, m, n)) => MulticoneParams::new(*w, *m, *n).ok(),
        _ => None,
    }
}

fn fmt_value(x: f64) -> String {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        format!("{}", r as i64)
    } else {
        format!("{x:.9}")
    }
}

fn emit(
    out: &mut impl Write,
    json: bool,
    value: serde_json::Value,
    text: String,
) -> io::Result<()> {
    if json {
        writeln!(
            out,
            "{}",
            serde_json::to_string(&value).expect("serializable")
        )
    } else {
        write!(out, "{text}")
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Gen(input) => {
            for g in load(&input)? {
                let code = graph6::encode(&g.graph);
                let text = format!("{code}\n");
                emit(
                    out,
                    json,
                    json!({"input": g.label, "graph6": code, "order": g.graph.order(), "edges": g.graph.edge_count()}),
                    text,
                )?;
            }
        }
        Command::Spec { input, kind, exact } => {
            for g in load(&input)? {
                let s = eigenvalues_numeric(&g.graph, kind)?;
                let poly = exact.then(|| char_poly_exact(&g.graph, kind));
                let groups: Vec<String> = s
                    .groups
                    .iter()
                    .map(|(v, k)| format!("{}:{k}", fmt_value(*v)))
                    .collect();
                let mut text = format!("{{{}}}\n", groups.join(", "));
                if let Some(p) = &poly {
                    writeln!(text, "{p}").expect("string write");
                }
                emit(
                    out,
                    json,
                    json!({"input": g.label, "spectrum": s, "char_poly": poly}),
                    text,
                )?;
            }
        }
        Command::Closed {
            w,
            m,
            n,
            kind,
            complement,
        } => {
            let p = MulticoneParams::new(w, m, n)?;
            let s = match (complement, kind) {
                (true, MatrixKind::Adjacency) if n == 3 => complement_multicone_c3_spectrum(w, m)?,
                (true, _) => {
                    return Err(Failure::Usage(anyhow!(
                        "--complement needs n = 3 and kind A"
                    )))
                }
                (false, MatrixKind::Adjacency) => multicone_adjacency_spectrum(p)?,
                (false, MatrixKind::Laplacian) => multicone_laplacian_spectrum(p)?,
                (false, MatrixKind::SignlessLaplacian) => {
                    return Err(Failure::Usage(anyhow!(
                        "no closed form for the signless Laplacian"
                    )))
                }
            };
            emit(
                out,
                json,
                json!({"params": p, "kind": kind, "spectrum": s}),
                format!("{s}\n"),
            )?;
        }
        Command::Cmp { a, b, kind } => {
            let (ga, gb) = (parse_graph_text(&a)?, parse_graph_text(&b)?);
            let cospectral = multicone::cospectral_exact(&ga.graph, &gb.graph, kind);
            let isomorphic = if ga.graph.order().max(gb.graph.order())
                <= multicone::isomorphism::ISOMORPHISM_CAP
            {
                Some(are_isomorphic(&ga.graph, &gb.graph)?)
            } else if ga.graph.component_count() != gb.graph.component_count()
                || ga.graph.degree_sequence() != gb.graph.degree_sequence()
            {
                Some(false)
            } else {
                None
            };
            let iso_text = isomorphic.map_or("undecided".to_string(), |b| b.to_string());
            let text = format!(
                "a: {} vertices, {} edges, {} components\nb: {} vertices, {} edges, {} components\ncospectral ({}): {cospectral}\nisomorphic: {iso_text}\n",
                ga.graph.order(),
                ga.graph.edge_count(),
                ga.graph.component_count(),
                gb.graph.order(),
                gb.graph.edge_count(),
                gb.graph.component_count(),
                kind.name()
            );
            let value = json!({
                "a": ga.label, "b": gb.label, "kind": kind,
                "cospectral": cospectral, "isomorphic": isomorphic,
            });
            emit(out, json, value, text)?;
        }
        Command::Hunt {
            target,
            kind,
            n,
            corpus,
            connected_only,
            edges,
            long_run,
        } => {
            let t = parse_graph_text(&target)?;
            let base = match (corpus, n) {
                (Some(path), _) => SearchSpace::corpus_file(path)?,
                (None, n) => {
                    let n = n.unwrap_or(t.graph.order());
                    if long_run {
                        SearchSpace::labeled_long_run(n)
                    } else {
                        SearchSpace::labeled(n)
                    }
                }
            };
            let space = base.connected_only(connected_only).with_edge_count(edges);
            let report = match multicone_params(&t.expr) {
                Some(p) => certify_ds(p, kind, &space)?,
                None => find_cospectral_mates(&t.graph, &space, kind)?,
            };
            let audit = mate_degree_audit(&report).ok();
            let mut text = format!(
                "target {} ({}), {} spectrum, {}\nscanned {}, passed prefilter {}, cospectral {}\nverdict: {:?}\n",
                t.label,
                graph6::encode(&t.graph),
                kind.name(),
                report.space,
                report.stats.scanned,
                report.stats.passed_prefilter,
                report.stats.cospectral_hits,
                report.verdict
            );
            for m in &report.mates {
                let tag = if m.isomorphic_to_target {
                    "target"
                } else {
                    "mate"
                };
                let conn = if m.connected {
                    "connected"
                } else {
                    "disconnected"
                };
                writeln!(text, "  {tag} {} {conn} x{}", m.graph6, m.copies_seen)
                    .expect("string write");
            }
            if let Some(c) = report.consistent {
                writeln!(text, "consistent with expectation: {c}").expect("string write");
            }
            if let Some(a) = &audit {
                for e in &a.entries {
                    writeln!(
                        text,
                        "  degree audit {}: min degree {} (want {}), degrees ok {}",
                        e.graph6, e.min_degree, a.expected_min_degree, e.degrees_ok
                    )
                    .expect("string write");
                }
            }
            emit(
                out,
                json,
                json!({"report": report, "degree_audit": audit}),
                text,
            )?;
        }
        Command::Invariants(input) => {
            for g in load(&input)? {
                let s = summarize(&g.graph)?;
                let text = invariants_table(&g.label, &s);
                emit(out, json, json!({"input": g.label, "invariants": s}), text)?;
            }
        }
        Command::Perfect { input, max_len } => {
            for g in load(&input)? {
                let len = max_len
                    .or_else(|| multicone_params(&g.expr).map(multicone_max_len))
                    .unwrap_or(g.graph.order());
                let r = is_perfect(&g.graph, len)?;
                let text = match &r.witness {
                    None => format!("{}: perfect (cycles up to {len})\n", g.label),
                    Some(w) => format!("{}: not perfect, {:?} {:?}\n", g.label, w.kind, w.vertices),
                };
                emit(out, json, json!({"input": g.label, "result": r}), text)?;
            }
        }
        Command::VerifyPaper { all } => {
            let results = run_claims(all);
            let remark = verify_remark1()?;
            let passed = results.iter().filter(|r| r.passed).count();
            let mut text = String::new();
            for r in &results {
                let mark = if r.passed { "PASS" } else { "FAIL" };
                writeln!(
                    text,
                    "[{mark}] {} ({} ms): {}\n       {}",
                    r.id, r.elapsed_ms, r.statement, r.detail
                )
                .expect("string write");
            }
            writeln!(text, "{passed}/{} claims pass", results.len()).expect("string write");
            let value = json!({"claims": results, "pairs": remark.pairs, "passed": passed, "total": results.len()});
            emit(out, json, value, text)?;
        }
    }
    Ok(())
}

fn invariants_table(label: &str, s: &multicone::invariants::InvariantSummary) -> String {
    let a = &s.adjacency_facts;
    let l = &s.laplacian_facts;
    let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
    let rows: Vec<(&str, String)> = vec![
        ("graph", label.to_string()),
        ("vertices", s.vertex_count.to_string()),
        ("edges", s.edge_count.to_string()),
        ("connected", s.connected.to_string()),
        (
            "triangles",
            opt(a.triangle_count.as_ref().map(ToString::to_string)),
        ),
        (
            "closed walks 2..6",
            opt(a.closed_walk_counts.as_ref().map(|w| {
                w.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            })),
        ),
        (
            "regular (spectrum)",
            opt(a.is_regular_by_spectrum.map(|b| b.to_string())),
        ),
        (
            "bipartite (spectrum)",
            opt(a.is_bipartite_by_spectrum.map(|b| b.to_string())),
        ),
        ("components", opt(l.component_count.map(|c| c.to_string()))),
        (
            "spanning trees",
            opt(l.spanning_tree_count.as_ref().map(ToString::to_string)),
        ),
        (
            "sum of squared degrees",
            opt(l.sum_sq_degrees.as_ref().map(ToString::to_string)),
        ),
        ("degree profile", format!("{:?}", s.degree_profile)),
        (
            "radius bound",
            opt(s.bound.as_ref().map(|b| {
                format!(
                    "rho {:.9} <= {:.9}, equality {} ({:?})",
                    b.rho, b.bound, b.equality_holds, b.structure_class
                )
            })),
        ),
        (
            "n is a Laplacian eigenvalue",
            s.has_join_eigenvalue.to_string(),
        ),
        ("join", s.is_join.to_string()),
        (
            "regularity criteria agree",
            s.regularity.consistent.to_string(),
        ),
        (
            "positive eigenvalues",
            s.positive_eigenvalues.count.to_string(),
        ),
        (
            "complete multipartite parts",
            opt(s
                .complete_multipartite_parts
                .as_ref()
                .map(|p| format!("{p:?}"))),
        ),
        (
            "three-eigenvalue checks",
            opt(s.three_eigenvalue.as_ref().map(|t| {
                t.checks
                    .iter()
                    .map(|c| format!("{}={}", c.name, if c.passed { "pass" } else { "fail" }))
                    .collect::<Vec<_>>()
                    .join(" ")
            })),
        ),
    ];
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(k) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(2)
        }
    }
}
