use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use sheafgraph::cover::{
    build_cover_window, equivariant_hom, lift_curve, stabilized_equivariant_hom, VoltageAssignment,
};
use sheafgraph::gluecat::{compile, curve_from_json, curve_to_json, euler_form, hom_global, reframe, CurveObject, GlobalSection};
use sheafgraph::graph::{
    build_exit_quiver, gauge_fix, graph_from_json, graph_to_json, total_weight, validate, DecoratedGraph, GraphError,
    GraphFile,
};
use sheafgraph::hmscheck::run_all;
use sheafgraph::localrestrict::LocalGenerator;
use sheafgraph::ncingest::{
    check_orientability, graph_from_fan, graph_from_nc, NcSurfaceDesc, Orientability, ToricFan3,
};
use sheafgraph::surface::{spanning_tree, surface_invariants};

#[derive(Parser)]
#[command(name = "sheafgraph", about = "Matrix-factorization sheaves on decorated trivalent graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Clone, Default)]
struct Opts {
    /// Graph file.
    #[arg(long, global = true)]
    graph: Option<PathBuf>,
    /// Second graph file (target framing for `reframe`).
    #[arg(long, global = true)]
    graph2: Option<PathBuf>,
    #[arg(long, global = true)]
    curve: Option<PathBuf>,
    #[arg(long, global = true)]
    curve2: Option<PathBuf>,
    /// Toric fan file for `from-fan`.
    #[arg(long, global = true)]
    fan: Option<PathBuf>,
    /// Normal-crossing surface file for `from-nc` and `orient`.
    #[arg(long, global = true)]
    nc: Option<PathBuf>,
    /// Polynomial degree window for Hom computations.
    #[arg(long, global = true, default_value_t = 6)]
    window: u32,
    /// Lattice radius for covers; `eqhom` stabilizes up to 3 when absent.
    #[arg(long, global = true)]
    radius: Option<u32>,
    /// Spanning tree edges, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    tree: Option<Vec<String>>,
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Print the full report (command, input hashes, timing) instead of the payload.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Check a graph file against every structural rule.
    Validate,
    /// Exit-path quiver of a graph.
    Quiver,
    /// Genus, boundary circles and stops of the associated surface.
    Genus,
    /// Move all weight onto a single edge by a gauge transformation.
    GaugeFix,
    /// Product of all vertex and edge weights.
    TotalWeight,
    /// Compile a curve to a global section.
    Compile,
    /// Hom between two curves.
    Hom,
    /// Euler characteristic of Hom, checked across two windows.
    Euler,
    /// Shifts carrying sections between two framings of one graph.
    Reframe,
    /// Finite window of the abelian cover, as a graph file.
    Cover,
    /// Lifts of a curve to the cover window, as curve files.
    Lift,
    /// Deck-invariant Hom on the cover.
    Eqhom,
    /// Graph of the toric boundary of a smooth complete fan.
    FromFan,
    /// Graph of a normal-crossing surface description.
    FromNc,
    /// Orientability of the dual intersection complex.
    Orient,
    /// Run the acceptance criteria.
    HmsCheck,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Quiver => "quiver",
            Command::Genus => "genus",
            Command::GaugeFix => "gauge-fix",
            Command::TotalWeight => "total-weight",
            Command::Compile => "compile",
            Command::Hom => "hom",
            Command::Euler => "euler",
            Command::Reframe => "reframe",
            Command::Cover => "cover",
            Command::Lift => "lift",
            Command::Eqhom => "eqhom",
            Command::FromFan => "from-fan",
            Command::FromNc => "from-nc",
            Command::Orient => "orient",
            Command::HmsCheck => "hms-check",
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Io(String),
    /// Failure in the input itself; the payload carries the details.
    #[error("{message}")]
    Domain { message: String, payload: Value },
}

impl CliError {
    fn domain(e: impl std::fmt::Display) -> Self {
        let message = e.to_string();
        CliError::Domain { payload: json!({ "error": message }), message }
    }
}

/// Reads inputs and remembers their hashes.
struct Inputs {
    hashes: BTreeMap<String, String>,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        self.hashes
            .insert(path.display().to_string(), hex::encode(Sha256::digest(&bytes)));
        String::from_utf8(bytes).map_err(|e| CliError::domain(format!("{}: {e}", path.display())))
    }

    fn path<'a>(p: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path, CliError> {
        p.as_deref().ok_or_else(|| CliError::Io(format!("missing --{flag}")))
    }

    fn graph_at(&mut self, p: &Option<PathBuf>, flag: &str) -> Result<DecoratedGraph, CliError> {
        let text = self.read(Self::path(p, flag)?)?;
        graph_from_json(&text).map_err(graph_error)
    }

    fn graph(&mut self, o: &Opts) -> Result<DecoratedGraph, CliError> {
        self.graph_at(&o.graph, "graph")
    }

    fn curve_at(&mut self, p: &Option<PathBuf>, flag: &str) -> Result<CurveObject, CliError> {
        let text = self.read(Self::path(p, flag)?)?;
        curve_from_json(&text).map_err(CliError::domain)
    }

    fn nc(&mut self, o: &Opts) -> Result<NcSurfaceDesc, CliError> {
        let text = self.read(Self::path(&o.nc, "nc")?)?;
        NcSurfaceDesc::from_json(&text).map_err(CliError::domain)
    }
}

fn graph_error(e: GraphError) -> CliError {
    match e {
        GraphError::Invalid(report) => CliError::Domain {
            message: format!("invalid graph: {report}"),
            payload: json!({ "valid": false, "violations": report.violations }),
        },
        other => CliError::domain(other),
    }
}

fn parse_json(text: &str) -> Value {
    serde_json::from_str(text).expect("library output is JSON")
}

fn voltages(g: &DecoratedGraph, o: &Opts) -> Result<VoltageAssignment, CliError> {
    let tree: BTreeSet<String> = match &o.tree {
        Some(t) => t.iter().cloned().collect(),
        None => spanning_tree(g),
    };
    VoltageAssignment::new(g, tree).map_err(CliError::domain)
}

fn generator_text(g: &LocalGenerator) -> String {
    match g {
        LocalGenerator::Pair(a, b) => format!("F({a},{b})"),
        LocalGenerator::Free => "free".into(),
    }
}

fn section_json(s: &GlobalSection) -> Value {
    let vertices: BTreeMap<&String, Vec<Value>> = s
        .vertex_objects
        .iter()
        .map(|(v, xs)| {
            let items = xs
                .iter()
                .map(|x| {
                    json!({
                        "generator": generator_text(&x.generator),
                        "shift": x.shift,
                        "step": x.label.step,
                        "copy": x.label.copy,
                    })
                })
                .collect();
            (v, items)
        })
        .collect();
    let edges: BTreeMap<&String, Vec<u8>> =
        s.edge_objects.iter().map(|(e, xs)| (e, xs.iter().map(|x| x.parity).collect())).collect();
    let matchings: BTreeMap<&String, Vec<Value>> = s
        .matchings
        .iter()
        .map(|(h, bs)| {
            let items = bs
                .iter()
                .map(|b| {
                    let scalar: Vec<Vec<String>> =
                        b.scalar.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
                    json!({ "summands": b.summands, "generators": b.generators, "scalar": scalar, "x_power": b.x_power })
                })
                .collect();
            (h, items)
        })
        .collect();
    json!({ "vertex_objects": vertices, "edge_objects": edges, "matchings": matchings })
}

fn run(cmd: Command, o: &Opts, inputs: &mut Inputs) -> Result<Value, CliError> {
    Ok(match cmd {
        Command::Validate => {
            let text = inputs.read(Inputs::path(&o.graph, "graph")?)?;
            let file: GraphFile = serde_json::from_str(&text).map_err(CliError::domain)?;
            let g = file.to_graph().map_err(graph_error)?;
            let report = validate(&g);
            if !report.is_empty() {
                return Err(graph_error(GraphError::Invalid(report)));
            }
            json!({ "valid": true, "violations": [] })
        }
        Command::Quiver => {
            let q = build_exit_quiver(&inputs.graph(o)?).map_err(graph_error)?;
            let arrows: Vec<Value> =
                q.arrows.iter().map(|(h, v, e)| json!({ "half_edge": h, "from": v, "to": e })).collect();
            json!({ "black": q.black, "white": q.white, "arrows": arrows })
        }
        Command::Genus => serde_json::to_value(surface_invariants(&inputs.graph(o)?).map_err(CliError::domain)?)
            .expect("invariants serialize"),
        Command::GaugeFix => {
            let (g, chain) = gauge_fix(&inputs.graph(o)?).map_err(graph_error)?;
            let chain: BTreeMap<&String, String> = chain.0.iter().map(|(h, x)| (h, x.to_string())).collect();
            json!({ "graph": parse_json(&graph_to_json(&g)), "chain": chain })
        }
        Command::TotalWeight => json!({ "total_weight": total_weight(&inputs.graph(o)?).to_string() }),
        Command::Compile => {
            let g = inputs.graph(o)?;
            let c = inputs.curve_at(&o.curve, "curve")?;
            section_json(&compile(&g, &c).map_err(CliError::domain)?)
        }
        Command::Hom | Command::Euler => {
            let g = inputs.graph(o)?;
            let c1 = inputs.curve_at(&o.curve, "curve")?;
            let c2 = match &o.curve2 {
                Some(_) => inputs.curve_at(&o.curve2, "curve2")?,
                None => c1.clone(),
            };
            let l = compile(&g, &c1).map_err(CliError::domain)?;
            let m = compile(&g, &c2).map_err(CliError::domain)?;
            if matches!(cmd, Command::Hom) {
                let r = hom_global(&g, &l, &m, o.window).map_err(CliError::domain)?;
                let (e, d) = r.stable_totals();
                let mut v = serde_json::to_value(&r).expect("report serializes");
                v["stable_totals"] = json!([e, d]);
                v
            } else {
                let chi = euler_form(&g, &l, &m, o.window).map_err(CliError::domain)?;
                json!({ "window": o.window, "euler": chi })
            }
        }
        Command::Reframe => {
            let g = inputs.graph(o)?;
            let target = inputs.graph_at(&o.graph2, "graph2")?;
            let p = reframe(&g, &target.framing()).map_err(CliError::domain)?;
            json!({ "vertex_shifts": p.vertex_shifts, "edge_shifts": p.edge_shifts })
        }
        Command::Cover => {
            let g = inputs.graph(o)?;
            let w = build_cover_window(&g, &voltages(&g, o)?, o.radius.unwrap_or(1)).map_err(CliError::domain)?;
            parse_json(&graph_to_json(&w.graph))
        }
        Command::Lift => {
            let g = inputs.graph(o)?;
            let c = inputs.curve_at(&o.curve, "curve")?;
            let lifts = lift_curve(&g, &voltages(&g, o)?, &c, o.radius.unwrap_or(1)).map_err(CliError::domain)?;
            Value::Array(lifts.iter().map(|l| parse_json(&curve_to_json(&l.curve))).collect())
        }
        Command::Eqhom => {
            let g = inputs.graph(o)?;
            let c1 = inputs.curve_at(&o.curve, "curve")?;
            let c2 = match &o.curve2 {
                Some(_) => inputs.curve_at(&o.curve2, "curve2")?,
                None => c1.clone(),
            };
            let volt = voltages(&g, o)?;
            let (r, n) = match o.radius {
                Some(n) => (equivariant_hom(&g, &volt, &c1, &c2, n, o.window).map_err(CliError::domain)?, n),
                None => stabilized_equivariant_hom(&g, &volt, &c1, &c2, o.window, 3).map_err(CliError::domain)?,
            };
            json!({ "radius": n, "report": r })
        }
        Command::FromFan => {
            let text = inputs.read(Inputs::path(&o.fan, "fan")?)?;
            let fan = ToricFan3::from_json(&text).map_err(CliError::domain)?;
            parse_json(&graph_to_json(&graph_from_fan(&fan).map_err(CliError::domain)?))
        }
        Command::FromNc => parse_json(&graph_to_json(&graph_from_nc(&inputs.nc(o)?).map_err(CliError::domain)?)),
        Command::Orient => match check_orientability(&inputs.nc(o)?).map_err(CliError::domain)? {
            Orientability::Orientable(or) => json!({ "orientable": true, "orientation": or.cyclic }),
            Orientability::NonOrientable { cycle } => {
                return Err(CliError::Domain {
                    message: format!("dual complex is not orientable along {}", cycle.join(" ")),
                    payload: json!({ "orientable": false, "cycle": cycle }),
                })
            }
        },
        Command::HmsCheck => {
            let outcomes = run_all(o.seed);
            for x in &outcomes {
                eprintln!("{}", x.line());
            }
            let failed: Vec<usize> = outcomes.iter().filter(|x| !x.passed).map(|x| x.id).collect();
            let payload = json!({ "seed": o.seed, "criteria": outcomes });
            if !failed.is_empty() {
                return Err(CliError::Domain { message: format!("failed criteria {failed:?}"), payload });
            }
            payload
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut inputs = Inputs { hashes: BTreeMap::new() };
    let start = Instant::now();
    let result = run(cli.command, &cli.opts, &mut inputs);
    let (code, payload) = match result {
        Ok(v) => (0, v),
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(CliError::Domain { message, payload }) => {
            eprintln!("error: {message}");
            (1, payload)
        }
    };
    let out = if cli.opts.json {
        json!({
            "command": cli.command.name(),
            "inputs": inputs.hashes,
            "window": cli.opts.window,
            "result": payload,
            "timings": { "elapsed_ms": start.elapsed().as_secs_f64() * 1e3 },
        })
    } else {
        payload
    };
    println!("{}", serde_json::to_string_pretty(&out).expect("JSON output"));
    ExitCode::from(code)
}
