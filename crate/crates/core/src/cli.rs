//! The `hjsplit` command line.
//!
//! Every command checks its own output before writing it. Exit codes: 0 ok,
//! 2 hypothesis violation or invalid input partition (a witness file is
//! written), 3 budget refusal, 4 I/O, schema or usage error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cograph::{cograph_split, is_cograph, is_universal_bruteforce, universal_cograph, Cotree};
use crate::construction::{audit_density, audit_local_split, construct, ConstructionParams};
use crate::embed::contains_induced;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracles::{exists_partition, is_split, verify_partition, ClassRule, FPartition};
use crate::partition::{disconnected_partition_with, two_graphs_partition_with, EngineConfig, SplitChoice};
use crate::tournament::{hero_color, two_tourn_partition_with, verify_tournament_partition, Tournament};
use crate::SCHEMA_VERSION;

#[derive(Debug, Parser)]
#[command(
    name = "hjsplit",
    version,
    about = "Partitions of graphs and tournaments excluding pairs of induced subgraphs"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Seed for every random step.
    #[arg(long, global = true, env = "HJ_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Work budget for exhaustive searches.
    #[arg(long, global = true, default_value_t = crate::oracles::DEFAULT_WORK_BUDGET)]
    pub budget: u64,
    /// Where to write the artifact; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Where to write a witness on hypothesis failure. Defaults to
    /// `<out>.witness.json`, or `witness.json`.
    #[arg(long, global = true)]
    pub witness: Option<PathBuf>,
    /// Also write the relevant graph in DOT format here.
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
    /// Print progress to stderr.
    #[arg(short, long, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PartitionMode {
    /// Classes free of H1, H2, J1 or J2.
    Pair,
    /// Classes free of one component of H or one anticomponent of J.
    Components,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AuditMode {
    Local,
    Density,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    Free,
    PerPattern,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partition an {H, J}-free graph.
    Partition {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long = "H")]
        h: PathBuf,
        #[arg(long = "J")]
        j: PathBuf,
        #[arg(long, value_enum, default_value_t = PartitionMode::Pair)]
        mode: PartitionMode,
        /// Re-check every intermediate step of the recursion.
        #[arg(long)]
        audit: bool,
    },
    /// Split an {H, J}-free graph for cographs H (anticonnected) and J (connected).
    Cosplit {
        #[arg(long)]
        graph: PathBuf,
        /// Cotree or graph JSON.
        #[arg(long = "H")]
        h: PathBuf,
        /// Cotree or graph JSON.
        #[arg(long = "J")]
        j: PathBuf,
    },
    /// Build a connected cograph of height k with no (F, P)-partition.
    Universal {
        /// JSON array of cotrees or graphs.
        #[arg(long)]
        patterns: PathBuf,
        #[arg(long = "P")]
        p: usize,
        #[arg(long)]
        k: usize,
    },
    /// Partition an (H1 => H2)-free tournament.
    Tpartition {
        #[arg(long)]
        tournament: PathBuf,
        #[arg(long = "H1")]
        h1: PathBuf,
        #[arg(long = "H2")]
        h2: PathBuf,
        #[arg(long)]
        audit: bool,
    },
    /// Colour an (H1 => H2)-free tournament by transitive sets.
    Thero {
        #[arg(long)]
        tournament: PathBuf,
        #[arg(long = "H1")]
        h1: PathBuf,
        #[arg(long = "H2")]
        h2: PathBuf,
        /// Transitive sets allowed per class.
        #[arg(long)]
        c: usize,
    },
    /// Random graph that is {L, M}-split on small sets.
    Construct {
        #[arg(long = "L")]
        l: PathBuf,
        #[arg(long = "M")]
        m: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        local_samples: usize,
        #[arg(long, default_value_t = 200)]
        density_samples: usize,
    },
    /// Sampled local-split or density audit of a graph.
    Audit {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long = "L")]
        l: PathBuf,
        #[arg(long = "M")]
        m: PathBuf,
        #[arg(long, value_enum)]
        mode: AuditMode,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Subset size for the local audit.
        #[arg(long, default_value_t = 5)]
        r: usize,
        /// Partition size for the density audit.
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Check a partition file against a graph and its patterns.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        /// JSON array of graphs, or an artifact with a `patterns` field.
        #[arg(long)]
        patterns: PathBuf,
        /// Partition JSON, or an artifact with a `partition` field.
        #[arg(long)]
        partition: PathBuf,
    },
    /// Exact brute-force oracles.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleQuery {
    /// Induced-subgraph search.
    Contains {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
    },
    /// Exhaustive {H1, H2}-split search.
    Split {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long = "H1")]
        h1: PathBuf,
        #[arg(long = "H2")]
        h2: PathBuf,
    },
    /// Exhaustive (F, k)-partition search.
    Partition {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        patterns: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Rule::Free)]
        rule: Rule,
    },
    /// Decompose a graph into a cotree.
    Cograph {
        #[arg(long)]
        graph: PathBuf,
    },
}

/// Outcome of a command that did not fail outright.
enum Outcome {
    Ok(Value),
    /// The artifact is written, but the command reports a violation.
    Violation(Value, Value),
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

fn read_value(path: &Path) -> Result<Value> {
    read_json(path)
}

/// A cotree file, or a graph file holding a cograph.
fn read_cotree(path: &Path) -> Result<Cotree> {
    let v = read_value(path)?;
    if v.get("op").is_some() {
        return serde_json::from_value(v).map_err(|e| Error::input(format!("{}: {e}", path.display())));
    }
    let g: Graph = serde_json::from_value(v).map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    is_cograph(&g).ok_or_else(|| Error::input(format!("{} is not a cograph", path.display())))
}

/// A JSON array, or an object carrying the array under `field`.
fn read_list<T: DeserializeOwned>(path: &Path, field: &str) -> Result<Vec<T>> {
    let v = read_value(path)?;
    let list = match v {
        Value::Array(_) => v,
        Value::Object(ref o) if o.contains_key(field) => o[field].clone(),
        _ => return Err(Error::input(format!("{}: expected a list", path.display()))),
    };
    serde_json::from_value(list).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

fn read_partition(path: &Path) -> Result<FPartition> {
    let v = read_value(path)?;
    let p = match v.get("partition") {
        Some(inner) => inner.clone(),
        None => v,
    };
    serde_json::from_value(p).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(ref mut o) = v {
        o.insert("schema_version".into(), json!(SCHEMA_VERSION));
    }
    v
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("artifacts serialize")
}

fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn write_artifact(path: Option<&Path>, v: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    write_text(path, &text)
}

fn witness_path(common: &Common) -> PathBuf {
    if let Some(w) = &common.witness {
        return w.clone();
    }
    match &common.out {
        Some(out) => {
            let mut s = out.clone().into_os_string();
            s.push(".witness.json");
            PathBuf::from(s)
        }
        None => PathBuf::from("witness.json"),
    }
}

fn engine_config(audit: bool) -> EngineConfig {
    EngineConfig {
        audit,
        ..EngineConfig::default()
    }
}

fn log(common: &Common, msg: impl AsRef<str>) {
    if common.verbose {
        eprintln!("hjsplit: {}", msg.as_ref());
    }
}

fn write_dot(common: &Common, g: &Graph) -> Result<()> {
    if let Some(p) = &common.dot {
        fs::write(p, g.to_dot("G"))?;
    }
    Ok(())
}

fn invalid(report: &crate::oracles::PartitionReport) -> Error {
    Error::hypothesis(format!(
        "produced partition failed verification: {}",
        serde_json::to_string(&report.first_violation).unwrap_or_default()
    ))
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    run(&cli)
}

pub fn run(cli: &Cli) -> i32 {
    let common = &cli.common;
    match execute(cli) {
        Ok(Outcome::Ok(v)) => match write_artifact(common.out.as_deref(), &with_schema(v)) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("hjsplit: {e}");
                4
            }
        },
        Ok(Outcome::Violation(v, witness)) => {
            let written = write_artifact(common.out.as_deref(), &with_schema(v))
                .and_then(|_| write_artifact(Some(&witness_path(common)), &with_schema(witness)));
            if let Err(e) = written {
                eprintln!("hjsplit: {e}");
                return 4;
            }
            eprintln!(
                "hjsplit: verification failed; witness in {}",
                witness_path(common).display()
            );
            2
        }
        Err(e) => {
            eprintln!("hjsplit: {e}");
            match e {
                Error::Hypothesis { reason, witness } => {
                    let w = with_schema(json!({ "reason": reason, "witness": witness }));
                    if let Err(e) = write_artifact(Some(&witness_path(common)), &w) {
                        eprintln!("hjsplit: {e}");
                        return 4;
                    }
                    2
                }
                Error::Budget(_) => 3,
                Error::Input(_) | Error::Io(_) | Error::Json(_) => 4,
            }
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let common = &cli.common;
    match &cli.command {
        Command::Partition {
            graph,
            h,
            j,
            mode,
            audit,
        } => {
            let g: Graph = read_json(graph)?;
            let (h, j): (Graph, Graph) = (read_json(h)?, read_json(j)?);
            write_dot(common, &g)?;
            log(common, format!("partitioning {} vertices", g.order()));
            let v = match mode {
                PartitionMode::Pair => {
                    let r = two_graphs_partition_with(&g, &h, &j, &SplitChoice::default(), engine_config(*audit))?;
                    let report = verify_partition(&g, &r.patterns, &r.partition)?;
                    if !report.valid || r.partition.len() as u64 > r.bound {
                        return Err(invalid(&report));
                    }
                    json!({
                        "mode": "pair",
                        "patterns": r.patterns,
                        "partition": r.partition,
                        "normalization": r.normalization,
                        "m": r.m,
                        "class_bound": r.bound,
                        "classes": r.partition.len(),
                        "stats": r.stats,
                    })
                }
                PartitionMode::Components => {
                    let r = disconnected_partition_with(&g, &h, &j, engine_config(*audit))?;
                    let report = verify_partition(&g, &r.patterns, &r.partition)?;
                    if !report.valid {
                        return Err(invalid(&report));
                    }
                    json!({
                        "mode": "components",
                        "patterns": r.patterns,
                        "h_components": r.h_components,
                        "partition": r.partition,
                        "class_bound": r.class_bound.to_string(),
                        "classes": r.partition.len(),
                        "pair_runs": r.pair_runs,
                    })
                }
            };
            Ok(Outcome::Ok(v))
        }
        Command::Cosplit { graph, h, j } => {
            let g: Graph = read_json(graph)?;
            let (h, j) = (read_cotree(h)?, read_cotree(j)?);
            write_dot(common, &g)?;
            let s = cograph_split(&g, &h, &j)?;
            if !s.check(&g)? {
                return Err(Error::hypothesis("produced split failed verification"));
            }
            Ok(Outcome::Ok(json!({
                "x": s.x,
                "y": s.y,
                "htilde": s.htilde,
                "jtilde": s.jtilde,
                "htilde_vertices": s.htilde.leaves(),
                "jtilde_vertices": s.jtilde.leaves(),
                "classes": s.classes,
                "partition": s.partition,
                "patterns": s.patterns,
            })))
        }
        Command::Universal { patterns, p, k } => {
            let family: Vec<Cotree> = read_value(patterns).and_then(|v| match v {
                Value::Array(items) => items
                    .into_iter()
                    .map(|item| {
                        if item.get("op").is_some() {
                            serde_json::from_value(item).map_err(Error::from)
                        } else {
                            let g: Graph = serde_json::from_value(item)?;
                            is_cograph(&g).ok_or_else(|| Error::input("pattern is not a cograph"))
                        }
                    })
                    .collect(),
                _ => Err(Error::input("patterns must be a JSON array")),
            })?;
            let u = universal_cograph(&family, *p, *k)?;
            if !u.is_connected() || u.height() != *k {
                return Err(Error::hypothesis("universal cograph has the wrong shape"));
            }
            let work = (*p as f64).powi(u.leaves() as i32);
            let checked = if u.leaves() <= 64 && work <= common.budget as f64 {
                let c = u.realize();
                let graphs: Vec<Graph> = family.iter().map(Cotree::realize).collect();
                if !is_universal_bruteforce(&c, &graphs, *p, common.budget)? {
                    return Err(Error::hypothesis("universal cograph admits a partition"));
                }
                if common.dot.is_some() {
                    write_dot(common, &c)?;
                }
                true
            } else {
                false
            };
            let mut v = to_value(&u);
            if let Value::Object(ref mut o) = v {
                o.insert("vertices".into(), json!(u.leaves()));
                o.insert("height".into(), json!(u.height()));
                o.insert("universality_checked".into(), json!(checked));
            }
            Ok(Outcome::Ok(v))
        }
        Command::Tpartition {
            tournament,
            h1,
            h2,
            audit,
        } => {
            let g: Tournament = read_json(tournament)?;
            let (h1, h2): (Tournament, Tournament) = (read_json(h1)?, read_json(h2)?);
            let r = two_tourn_partition_with(&g, &h1, &h2, engine_config(*audit))?;
            if let Some(problem) = verify_tournament_partition(&g, &r.patterns, &r.partition) {
                return Err(Error::hypothesis(format!(
                    "produced partition failed verification: {problem}"
                )));
            }
            if r.partition.len() as u64 > r.bound {
                return Err(Error::hypothesis("produced partition exceeds its class bound"));
            }
            Ok(Outcome::Ok(json!({
                "patterns": r.patterns,
                "partition": r.partition,
                "reversed": r.reversed,
                "m": r.m,
                "class_bound": r.bound,
                "classes": r.partition.len(),
                "stats": r.stats,
            })))
        }
        Command::Thero { tournament, h1, h2, c } => {
            let g: Tournament = read_json(tournament)?;
            let (h1, h2): (Tournament, Tournament) = (read_json(h1)?, read_json(h2)?);
            let r = hero_color(&g, &h1, &h2, *c, common.budget)?;
            if let Some(problem) = verify_tournament_partition(&g, &[], &r.as_partition()) {
                return Err(Error::hypothesis(format!(
                    "produced colouring failed verification: {problem}"
                )));
            }
            Ok(Outcome::Ok(json!({
                "classes": r.classes,
                "colours": r.classes.len(),
                "pair_classes": r.pair_classes,
                "per_class": r.per_class,
                "optimal": r.optimal,
                "bound": r.bound,
            })))
        }
        Command::Construct {
            l,
            m,
            n,
            r,
            k,
            epsilon,
            local_samples,
            density_samples,
        } => {
            let (l, m): (Graph, Graph) = (read_json(l)?, read_json(m)?);
            let params = ConstructionParams {
                epsilon: *epsilon,
                local_samples: *local_samples,
                density_samples: *density_samples,
                ..ConstructionParams::new(*n, *r, *k, common.seed)
            };
            log(common, format!("constructing with n={n}, seed={}", common.seed));
            let report = construct(&l, &m, &params)?;
            let g = Graph::try_from(report.graph.clone())?;
            write_dot(common, &g)?;
            let c = &report.checks;
            if !report.post_removal_violations.is_clean()
                || !c.provenance_unique
                || !c.blocks_induced
                || !c.intersections_at_most_one
            {
                return Err(Error::hypothesis("constructed graph failed its structural checks"));
            }
            Ok(Outcome::Ok(to_value(&report)))
        }
        Command::Audit {
            graph,
            l,
            m,
            mode,
            samples,
            r,
            k,
        } => {
            let g: Graph = read_json(graph)?;
            let (l, m): (Graph, Graph) = (read_json(l)?, read_json(m)?);
            let v = match mode {
                AuditMode::Local => {
                    json!({ "mode": "local", "report": audit_local_split(&g, &l, &m, *r, *samples, common.seed)? })
                }
                AuditMode::Density => {
                    json!({ "mode": "density", "report": audit_density(&g, &l, &m, *k, *samples, common.seed)? })
                }
            };
            Ok(Outcome::Ok(v))
        }
        Command::Verify {
            graph,
            patterns,
            partition,
        } => {
            let g: Graph = read_json(graph)?;
            let patterns: Vec<Graph> = read_list(patterns, "patterns")?;
            let p = read_partition(partition)?;
            let report = verify_partition(&g, &patterns, &p)?;
            let v = json!({ "valid": report.valid, "first_violation": report.first_violation });
            if report.valid {
                Ok(Outcome::Ok(v))
            } else {
                Ok(Outcome::Violation(v.clone(), v))
            }
        }
        Command::Oracle { query } => oracle(common, query),
    }
}

fn oracle(common: &Common, query: &OracleQuery) -> Result<Outcome> {
    let v = match query {
        OracleQuery::Contains { graph, pattern } => {
            let g: Graph = read_json(graph)?;
            let h: Graph = read_json(pattern)?;
            let e = contains_induced(&g, &h);
            json!({ "query": "contains", "found": e.is_some(), "embedding": e })
        }
        OracleQuery::Split { graph, h1, h2 } => {
            let g: Graph = read_json(graph)?;
            let (h1, h2): (Graph, Graph) = (read_json(h1)?, read_json(h2)?);
            let w = is_split(&g, &h1, &h2)?;
            json!({ "query": "split", "split": w.is_some(), "witness": w })
        }
        OracleQuery::Partition {
            graph,
            patterns,
            k,
            rule,
        } => {
            let g: Graph = read_json(graph)?;
            let patterns: Vec<Graph> = read_list(patterns, "patterns")?;
            let rule = match rule {
                Rule::Free => ClassRule::Free,
                Rule::PerPattern => ClassRule::PerPattern,
            };
            let p = exists_partition(&g, &patterns, *k, rule, common.budget)?;
            if let Some(p) = &p {
                if !verify_partition(&g, &patterns, p)?.valid {
                    return Err(Error::hypothesis("oracle partition failed verification"));
                }
            }
            json!({ "query": "partition", "exists": p.is_some(), "partition": p })
        }
        OracleQuery::Cograph { graph } => {
            let g: Graph = read_json(graph)?;
            let t = is_cograph(&g);
            json!({
                "query": "cograph",
                "cograph": t.is_some(),
                "height": t.as_ref().map(Cotree::height),
                "cotree": t,
            })
        }
    };
    Ok(Outcome::Ok(v))
}
