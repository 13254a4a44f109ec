use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use forge::cone::ConeError;
use forge::config::{Config, ConfigError};
use forge::dot::{fold_stage_to_dot, graph_to_dot};
use forge::folds::{is_homotopy_equivalence, FoldError};
use forge::graphmap::{pf_eigenvalue, var_growth, GraphError, GraphMap, MapDocument, SymbolicMetric};
use forge::numberfield::{ClassKind, FieldError};
use forge::poly::{IntPolynomial, PolyError};
use forge::splitting::{split_graph, split_map, SplitError};
use forge::synth::{synthesize, CertificateBundle, Pipeline, SynthError};
use forge::traintrack::{
    induced_split_structure, verify_traintrack, StructureDocument, TraintrackError, TraintrackStructure,
};
use forge::NumberFieldContext;
use serde::Serialize;

mod exit {
    pub const USAGE: u8 = 2;
    pub const IO: u8 = 3;
    pub const PARSE: u8 = 4;
    pub const FIELD: u8 = 5;
    pub const CONE: u8 = 6;
    pub const GRAPH: u8 = 7;
    pub const UNVERIFIED: u8 = 8;
}

#[derive(Parser)]
#[command(name = "forge", version, about = "Ergodic traintrack maps with prescribed entropy")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the largest real root of a polynomial.
    Classify { polyfile: PathBuf },
    /// Build and certify a traintrack map with entropy log λ.
    Synth {
        polyfile: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for star and split map drawings.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long = "cone-scale")]
        cone_scale: Option<u64>,
        #[arg(long)]
        polygon: Option<usize>,
        #[arg(long = "p-cap")]
        p_cap: Option<u64>,
        #[arg(long)]
        precision: Option<u64>,
        #[arg(long)]
        nmax: Option<u32>,
    },
    /// Split a map of a bipartite graph.
    Split {
        map: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a map against a legal-turn structure.
    VerifyTraintrack { map: PathBuf, structure: PathBuf },
    /// Decide homotopy equivalence by folding.
    VerifyHe {
        map: PathBuf,
        #[arg(long = "emit-snapshots")]
        emit_snapshots: Option<PathBuf>,
    },
    /// Perron–Frobenius eigenvalue and length growth.
    Entropy {
        map: PathBuf,
        #[arg(long, default_value_t = 40)]
        k: usize,
    },
    /// Graphviz drawing of a map.
    ExportDot {
        map: PathBuf,
        #[arg(long)]
        structure: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct Unverified(String);

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<Unverified>() {
            return exit::UNVERIFIED;
        }
        if cause.is::<std::io::Error>() {
            return exit::IO;
        }
        if cause.is::<serde_json::Error>()
            || cause.is::<toml::de::Error>()
            || cause.is::<PolyError>()
            || cause.is::<ConfigError>()
        {
            return exit::PARSE;
        }
        if let Some(e) = cause.downcast_ref::<GraphError>() {
            return match e {
                GraphError::Document(_) => exit::PARSE,
                _ => exit::GRAPH,
            };
        }
        if let Some(e) = cause.downcast_ref::<SynthError>() {
            return match e {
                SynthError::Field(_) | SynthError::NotWeakPerron(_) => exit::FIELD,
                SynthError::Cone(_) => exit::CONE,
                SynthError::VerificationFailed { .. } | SynthError::StarAxiom(_) => exit::UNVERIFIED,
                SynthError::Graph(_) | SynthError::Split(_) | SynthError::Fold(_) => exit::GRAPH,
            };
        }
        if cause.is::<FieldError>() {
            return exit::FIELD;
        }
        if cause.is::<ConeError>() {
            return exit::CONE;
        }
        if cause.is::<SplitError>() || cause.is::<FoldError>() || cause.is::<TraintrackError>() {
            return exit::GRAPH;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn emit(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        Some(p) => write(p, contents),
        None => {
            print!("{contents}");
            if !contents.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable") + "\n"
}

fn load_config() -> Result<Config> {
    match std::env::var_os("FORGE_CONFIG") {
        Some(path) => {
            let path = PathBuf::from(path);
            let text = read(&path)?;
            toml::from_str(&text).with_context(|| format!("config {}", path.display()))
        }
        None => Ok(Config::default()),
    }
}

fn load_poly(path: &Path) -> Result<IntPolynomial> {
    let text = read(path)?;
    IntPolynomial::parse(&text).with_context(|| format!("polynomial in {}", path.display()))
}

fn load_map(path: &Path) -> Result<(MapDocument, GraphMap, Option<SymbolicMetric>)> {
    let doc = MapDocument::from_json(&read(path)?).with_context(|| format!("map {}", path.display()))?;
    let (f, metric) = doc.to_map().with_context(|| format!("map {}", path.display()))?;
    Ok((doc, f, metric))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Classify { polyfile } => classify(&polyfile),
        Command::Synth {
            polyfile,
            out,
            dot,
            cone_scale,
            polygon,
            p_cap,
            precision,
            nmax,
        } => {
            let mut cfg = load_config()?;
            if let Some(r) = cone_scale {
                cfg.cone_scale_start = r;
                cfg.cone_scale_cap = cfg.cone_scale_cap.max(r);
            }
            if let Some(k) = polygon {
                cfg.polygon_k = k;
            }
            if let Some(p) = p_cap {
                cfg.p_cap = p;
            }
            if let Some(b) = precision {
                cfg.precision = b;
            }
            if let Some(n) = nmax {
                cfg.n_max = n;
            }
            cfg.validate()?;
            synth(&load_poly(&polyfile)?, &cfg, out.as_deref(), dot.as_deref())
        }
        Command::Split { map, out } => split(&map, out.as_deref()),
        Command::VerifyTraintrack { map, structure } => verify_tt(&map, &structure),
        Command::VerifyHe { map, emit_snapshots } => verify_he(&map, emit_snapshots.as_deref()),
        Command::Entropy { map, k } => entropy(&map, k),
        Command::ExportDot { map, structure, out } => {
            let (_, f, _) = load_map(&map)?;
            let s = structure.as_deref().map(|p| load_structure(&f, p)).transpose()?;
            let name = map.file_stem().map_or("map".into(), |s| s.to_string_lossy().into_owned());
            emit(out.as_deref(), &graph_to_dot(&name, f.graph(), Some(&f), s.as_ref()))
        }
    }
}

fn classify(path: &Path) -> Result<()> {
    let poly = load_poly(path)?;
    let cfg = load_config()?;
    cfg.validate()?;
    let ctx = NumberFieldContext::new(&poly, &cfg.field_options())?;
    let c = ctx.classify()?;
    match (c.kind, c.witness) {
        (ClassKind::WeakPerron, Some(n)) => println!("WeakPerron N={n}"),
        (kind, _) => println!("{kind:?}"),
    }
    println!("lambda ~ {:.15}", ctx.lambda_f64());
    println!("{:>4}  {:>22}  {:>22}  {:>9}  real", "#", "re", "im", "radius");
    for (i, r) in ctx.roots().iter().enumerate() {
        let (re, im) = r.center_f64();
        println!("{i:>4}  {re:>22.15}  {im:>22.15}  {:>9.2e}  {}", r.radius_f64(), r.real);
    }
    Ok(())
}

fn write_dots(dir: &Path, p: &Pipeline) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    write(&dir.join("star.dot"), &graph_to_dot("star", p.star.map.graph(), Some(&p.star.map), None))?;
    let s = induced_split_structure(&p.split);
    write(&dir.join("split.dot"), &graph_to_dot("split", p.split_map.graph(), Some(&p.split_map), Some(&s)))
}

fn synth(poly: &IntPolynomial, cfg: &Config, out: Option<&Path>, dot: Option<&Path>) -> Result<()> {
    let save = |b: &CertificateBundle| emit(out, &(b.to_json() + "\n"));
    match synthesize(poly, cfg) {
        Ok(p) => {
            save(&p.bundle)?;
            if let Some(dir) = dot {
                write_dots(dir, &p)?;
            }
            if out.is_some() {
                let b = &p.bundle;
                eprintln!(
                    "verified: {} star edges, {} split edges, entropy log {:.12}",
                    p.star.edge_count(),
                    p.split_map.graph().edge_count(),
                    b.lambda.approx
                );
            }
            Ok(())
        }
        Err(SynthError::VerificationFailed { failures, bundle }) => {
            save(&bundle)?;
            Err(Unverified(format!("bundle not verified: {}", failures.join("; "))).into())
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct SplitOutput {
    map: MapDocument,
    provenance: Vec<(String, char, String, bool)>,
    structure: StructureDocument,
}

fn split(path: &Path, out: Option<&Path>) -> Result<()> {
    let (doc, f, metric) = load_map(path)?;
    let s = split_graph(f.graph(), None)?;
    let sf = split_map(&s, &f)?;
    let sm = metric.map(|m| s.inherited_metric(&m));
    let structure = induced_split_structure(&s).to_document(sf.graph());
    let output = SplitOutput {
        map: MapDocument::from_map(&sf, sm.as_ref(), doc.minpoly.as_ref()),
        provenance: s.provenance_table(),
        structure,
    };
    emit(out, &to_json(&output))
}

fn load_structure(f: &GraphMap, path: &Path) -> Result<TraintrackStructure> {
    let doc: StructureDocument =
        serde_json::from_str(&read(path)?).with_context(|| format!("structure {}", path.display()))?;
    TraintrackStructure::from_document(f.graph(), &doc).with_context(|| format!("structure {}", path.display()))
}

fn verify_tt(map: &Path, structure: &Path) -> Result<()> {
    let (_, f, _) = load_map(map)?;
    let s = load_structure(&f, structure)?;
    let cert = verify_traintrack(&f, &s);
    print!("{}", to_json(&cert));
    if !cert.passed() {
        bail!(Unverified(format!("traintrack check failed: {:?}", cert.first_violation())));
    }
    Ok(())
}

fn verify_he(map: &Path, snapshots: Option<&Path>) -> Result<()> {
    let (_, f, _) = load_map(map)?;
    let (verdict, sub, decomposition) = is_homotopy_equivalence(&f)?;
    println!(
        "homotopy equivalence: {} ({} folds, {} Type II, {} stages, terminal isomorphism {})",
        verdict.homotopy_equivalence,
        verdict.folds,
        verdict.type_two,
        verdict.stages,
        verdict.terminal_is_isomorphism
    );
    for (i, r) in decomposition.folds.iter().enumerate() {
        println!(
            "{i:>5} stage {:>4} at {:<8} {}{} ~ {}{}  {:?}  betti {} -> {}",
            r.stage + 1,
            r.vertex,
            r.kept,
            if r.kept_reversed { "^-1" } else { "" },
            r.removed,
            if r.removed_reversed { "^-1" } else { "" },
            r.kind,
            r.betti_before,
            r.betti_after
        );
    }
    if let Some(dir) = snapshots {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let graphs = decomposition.snapshots(&sub.morphism).map_err(|e| anyhow::anyhow!(e))?;
        for (k, g) in graphs.iter().enumerate() {
            write(&dir.join(format!("stage_{k:03}.dot")), &fold_stage_to_dot(k, g, &decomposition.folds))?;
        }
    }
    if !verdict.homotopy_equivalence {
        bail!(Unverified("not a homotopy equivalence".into()));
    }
    Ok(())
}

fn entropy(path: &Path, k: usize) -> Result<()> {
    let (doc, f, metric) = load_map(path)?;
    let t = f.transition_matrix();
    let lengths = match (metric, &doc.minpoly) {
        (Some(m), Some(p)) => {
            let ctx = NumberFieldContext::new(p, &load_config()?.field_options())?;
            m.to_f64(&ctx)
        }
        _ => vec![1.0; f.graph().edge_count()],
    };
    let pf = pf_eigenvalue::<f64>(&t, 1e-12, 1_000_000)?;
    println!("pf {:.15} in [{:.15}, {:.15}]", pf.value, pf.lower, pf.upper);
    println!("log pf {:.15}", pf.value.ln());
    println!("{:>4}  {:>18}  {:>18}", "k", "raw", "corrected");
    for v in var_growth(&t, &lengths, k) {
        println!("{:>4}  {:>18.12}  {:>18.12}", v.k, v.raw, v.corrected);
    }
    Ok(())
}
