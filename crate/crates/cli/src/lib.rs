//! Command-line surface: compute clique embedding powers, verify
//! embeddings, compute width measures, compile clique instances into
//! sum-of-product inputs, evaluate them, and reproduce the reference
//! result tables. All numeric output is exact (`p/q`).

mod report;
mod repro;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use embtool_core::embedding::{
    emb_fractional, min_wed_bruteforce_with_budget, min_wed_ilp, validate_embedding, Embedding,
    Family, DEFAULT_MULTISET_BUDGET,
};
use embtool_core::engine::{
    eval_acyclic, eval_bruteforce, parse_instance, parse_weighted_graph, write_instance,
    BooleanSemiring, CountingSemiring, TextSemiring, TropicalSemiring,
};
use embtool_core::error::Error as CoreError;
use embtool_core::hypergraph::Hypergraph;
use embtool_core::reduce::{build_instance, kpartite_lift_canonical};
use embtool_core::widths::{
    fhw, is_acyclic, is_chordal, proper_tree_decompositions,
};

pub(crate) enum CliError {
    /// bad arguments, missing or malformed input files: exit 2
    Usage(String),
    /// invalid embeddings, infeasibility, resource guards: exit 1
    Domain(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Parse { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

pub(crate) type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(name = "embtool", version, about = "Clique embedding power toolkit")]
struct Cli {
    /// emit a machine-readable JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact clique embedding power of a hypergraph
    Emb {
        /// named family, e.g. cycle:6, complete_bipartite:2,3, boat
        #[arg(long, conflicts_with = "hypergraph")]
        family: Option<String>,
        /// hypergraph text file
        #[arg(long)]
        hypergraph: Option<PathBuf>,
        /// write the optimal weight assignment to this file
        #[arg(long)]
        witness: Option<PathBuf>,
        /// refuse inputs with more vertices than this
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Minimum weak edge depth and embedding power at a fixed clique size
    Embk {
        #[arg(long)]
        k: usize,
        #[arg(long, conflicts_with = "hypergraph")]
        family: Option<String>,
        #[arg(long)]
        hypergraph: Option<PathBuf>,
        /// solve by integer programming or exhaustive search
        #[arg(long, value_enum, default_value_t = Oracle::Ilp)]
        oracle: Oracle,
        /// multiset budget for the exhaustive search
        #[arg(long, default_value_t = DEFAULT_MULTISET_BUDGET)]
        budget: u128,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Validate an embedding and report its depth measures
    Verify {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        embedding: PathBuf,
    },
    /// Width measures: acyclicity, chordality, proper decompositions, fhw
    Widths {
        #[arg(long, conflicts_with = "hypergraph")]
        family: Option<String>,
        #[arg(long)]
        hypergraph: Option<PathBuf>,
        /// print only the selected measures (default: all)
        #[arg(long)]
        fhw: bool,
        #[arg(long)]
        chordal: bool,
        #[arg(long)]
        acyclic: bool,
        #[arg(long)]
        proper_tds: bool,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Compile a weighted clique instance into a sum-of-product input
    Reduce {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        embedding: PathBuf,
        /// weighted graph file (`n:` line plus `edge u v [weight]` lines)
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        semiring: SemiringKind,
        /// instance output file; a `.theta` sidecar records the audit map
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Evaluate a sum-of-product instance file
    Eval {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum)]
        semiring: SemiringKind,
        /// use join-forest message passing (input must be acyclic)
        #[arg(long)]
        acyclic: bool,
    },
    /// Emit a named family hypergraph
    Family {
        /// cycle, complete_bipartite, hyperclique, almost_clique, boat, hyper_boat
        name: String,
        /// numeric parameters of the family
        params: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recompute reference results and report pass/fail per row
    Repro {
        #[arg(value_enum)]
        target: ReproTarget,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Ilp,
    Brute,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum SemiringKind {
    Boolean,
    Counting,
    Tropical,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum ReproTarget {
    Table1,
    Boat,
    Curve6,
}

/// Entry point; returns the process exit code (0 success, 1 domain
/// failure, 2 usage error).
pub fn run(args: &[String], out: &mut impl Write) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(out, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(out, "error: {msg}");
            2
        }
        Err(CliError::Domain(msg)) => {
            let _ = writeln!(out, "error: {msg}");
            1
        }
    }
}

fn dispatch(cli: &Cli, out: &mut impl Write) -> CliResult<u8> {
    match &cli.cmd {
        Cmd::Emb { family, hypergraph, witness, max_n } => {
            let h = load_hypergraph(family.as_deref(), hypergraph.as_deref())?;
            check_max_n(&h, *max_n)?;
            let w = emb_fractional(&h)?;
            report::emb(out, &h, &w, cli.json);
            if let Some(path) = witness {
                write_file(path, &report::witness_file(&h, &w))?;
            }
            Ok(0)
        }
        Cmd::Embk { k, family, hypergraph, oracle, budget, max_n } => {
            let h = load_hypergraph(family.as_deref(), hypergraph.as_deref())?;
            check_max_n(&h, *max_n)?;
            let (wed, e) = match oracle {
                Oracle::Ilp => min_wed_ilp(&h, *k)?,
                Oracle::Brute => min_wed_bruteforce_with_budget(&h, *k, *budget)?,
            };
            report::embk(out, &h, *k, wed, &e, cli.json);
            Ok(0)
        }
        Cmd::Verify { hypergraph, embedding } => {
            let h = parse_hypergraph_file(hypergraph)?;
            let text = read_file(embedding)?;
            let e = Embedding::parse(&text, &h).map_err(usage)?;
            let rep = validate_embedding(&h, &e)?;
            report::verify(out, &h, &rep, cli.json);
            Ok(if rep.valid { 0 } else { 1 })
        }
        Cmd::Widths { family, hypergraph, fhw: want_fhw, chordal, acyclic, proper_tds, max_n } => {
            let h = load_hypergraph(family.as_deref(), hypergraph.as_deref())?;
            check_max_n(&h, *max_n)?;
            let all = !(*want_fhw || *chordal || *acyclic || *proper_tds);
            let mut r = report::WidthsReport::default();
            if all || *acyclic {
                r.acyclic = Some(is_acyclic(&h));
            }
            if all || *chordal {
                r.chordal = Some(is_chordal(&h));
            }
            if all || *proper_tds {
                r.proper_tds = Some(proper_tree_decompositions(&h)?);
            }
            if all || *want_fhw {
                r.fhw = Some(fhw(&h)?);
            }
            report::widths(out, &h, &r, cli.json);
            Ok(0)
        }
        Cmd::Reduce { hypergraph, embedding, graph, semiring, output } => {
            let h = parse_hypergraph_file(hypergraph)?;
            let text = read_file(embedding)?;
            let e = Embedding::parse(&text, &h).map_err(usage)?;
            let graph_text = read_file(graph)?;
            let (instance_text, sidecar, size, depth) = match semiring {
                SemiringKind::Boolean => reduce_with(&h, &e, &graph_text, &BooleanSemiring)?,
                SemiringKind::Counting => reduce_with(&h, &e, &graph_text, &CountingSemiring)?,
                SemiringKind::Tropical => reduce_with(&h, &e, &graph_text, &TropicalSemiring)?,
            };
            write_file(output, &instance_text)?;
            let sidecar_path = sidecar_path(output);
            write_file(&sidecar_path, &sidecar)?;
            report::reduce(out, size, depth, output, &sidecar_path, cli.json);
            Ok(0)
        }
        Cmd::Eval { instance, semiring, acyclic } => {
            let text = read_file(instance)?;
            let value = match semiring {
                SemiringKind::Boolean => eval_with(&text, *acyclic, &BooleanSemiring)?,
                SemiringKind::Counting => eval_with(&text, *acyclic, &CountingSemiring)?,
                SemiringKind::Tropical => eval_with(&text, *acyclic, &TropicalSemiring)?,
            };
            report::eval(out, semiring_name(*semiring), &value, cli.json);
            Ok(0)
        }
        Cmd::Family { name, params, output } => {
            let fam = family_from_parts(name, params)?;
            let h = fam.hypergraph()?;
            let text = h.to_text();
            if let Some(path) = output {
                write_file(path, &text)?;
            }
            report::family(out, &h, output.as_deref(), cli.json);
            Ok(0)
        }
        Cmd::Repro { target } => repro::run(*target, cli.json, out),
    }
}

fn usage(e: CoreError) -> CliError {
    CliError::Usage(e.to_string())
}

fn check_max_n(h: &Hypergraph, max_n: Option<usize>) -> CliResult<()> {
    if let Some(max) = max_n {
        if h.vertex_count() > max {
            return Err(CliError::Domain(format!(
                "hypergraph has {} vertices, above the requested cap of {max}",
                h.vertex_count()
            )));
        }
    }
    Ok(())
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> CliResult<()> {
    std::fs::write(path, content)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

fn sidecar_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_os_string();
    name.push(".theta");
    PathBuf::from(name)
}

fn parse_hypergraph_file(path: &Path) -> CliResult<Hypergraph> {
    let text = read_file(path)?;
    Hypergraph::parse(&text).map_err(usage)
}

fn load_hypergraph(family: Option<&str>, file: Option<&Path>) -> CliResult<Hypergraph> {
    match (family, file) {
        (Some(spec), None) => Ok(parse_family_spec(spec)?.hypergraph()?),
        (None, Some(path)) => parse_hypergraph_file(path),
        _ => Err(CliError::Usage(
            "exactly one of --family or --hypergraph is required".into(),
        )),
    }
}

/// Accepts `name`, `name:a`, `name:a,b`, and `name(a,b)` spellings.
pub(crate) fn parse_family_spec(spec: &str) -> CliResult<Family> {
    let spec = spec.trim();
    let (name, params) = if let Some((name, rest)) = spec.split_once(':') {
        (name, rest.to_string())
    } else if let Some((name, rest)) = spec.split_once('(') {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| CliError::Usage(format!("unbalanced parentheses in `{spec}`")))?;
        (name, inner.to_string())
    } else {
        (spec, String::new())
    };
    let params: Vec<usize> = if params.trim().is_empty() {
        vec![]
    } else {
        params
            .split(',')
            .map(|p| {
                p.trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad family parameter `{p}`")))
            })
            .collect::<CliResult<_>>()?
    };
    family_from_parts(name, &params)
}

pub(crate) fn family_from_parts(name: &str, params: &[usize]) -> CliResult<Family> {
    let fam = match (name, params) {
        ("cycle", [l]) => Family::Cycle(*l),
        ("complete_bipartite", [m, n]) => Family::CompleteBipartite(*m, *n),
        ("hyperclique", [l, k]) => Family::Hyperclique(*l, *k),
        ("almost_clique", [l, k]) => Family::AlmostClique(*l, *k),
        ("boat", []) => Family::Boat,
        ("hyper_boat", []) => Family::HyperBoat,
        _ => {
            return Err(CliError::Usage(format!(
                "unknown family `{name}` with {} parameters",
                params.len()
            )))
        }
    };
    Ok(fam)
}

pub(crate) fn semiring_name(kind: SemiringKind) -> &'static str {
    match kind {
        SemiringKind::Boolean => "boolean",
        SemiringKind::Counting => "counting",
        SemiringKind::Tropical => "tropical",
    }
}

fn reduce_with<S: TextSemiring>(
    h: &Hypergraph,
    e: &Embedding,
    graph_text: &str,
    semiring: &S,
) -> CliResult<(String, String, usize, usize)> {
    let g = parse_weighted_graph(graph_text, semiring).map_err(usage)?;
    let lift = kpartite_lift_canonical(&g, e.k(), semiring)?;
    let output = build_instance(h, e, &lift, semiring)?;
    let instance_text = write_instance(&output.instance, semiring);
    let mut sidecar = String::new();
    sidecar.push_str(&format!("parts: {}\n", output.partition.parts));
    sidecar.push_str(&format!("base_n: {}\n", output.partition.base_n));
    for (v, pre) in output.partition.preimages.iter().enumerate() {
        let shown: Vec<String> = pre.iter().map(|i| (i + 1).to_string()).collect();
        sidecar.push_str(&format!("preimage {}: {}\n", h.label(v), shown.join(" ")));
    }
    for (&(i, j), &edge) in &output.assignment.edge_of_pair {
        sidecar.push_str(&format!(
            "pair {} {}: edge {}\n",
            i + 1,
            j + 1,
            h.set_to_string(h.edges()[edge])
        ));
    }
    Ok((instance_text, sidecar, output.instance.size(), output.depth_bound))
}

fn eval_with<S: TextSemiring>(text: &str, acyclic: bool, semiring: &S) -> CliResult<String>
where
    S::Value: std::fmt::Debug,
{
    let inst = parse_instance(text, semiring).map_err(usage)?;
    let value = if acyclic {
        eval_acyclic(&inst, semiring)?
    } else {
        eval_bruteforce(&inst, semiring)?
    };
    Ok(semiring.format_value(&value))
}
