use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mcc_cli::fitting::fit_exponent;
use mcc_cli::plan::ExperimentPlan;
use mcc_cli::run::{rows_to_csv, run_plan};
use mcc_cli::parse_rational;
use mcc_core::exact::{exact_mcc_with, naive_mcc, ExactConfig, ExactError};
use mcc_core::fragment::{hamming_cube_edge_coloring, layer_coloring, t_color_via_separators, FragmentationRun};
use mcc_core::gen::{gen_deg45_line, instantiate, Family, InstanceSpec};
use mcc_core::graph::{max_mono_component, Coloring, Graph, Vertex};
use mcc_core::io::{
    emit_coloring, emit_edge_list, emit_tree_decomposition, parse_coloring, parse_edge_list,
    parse_tree_decomposition,
};
use mcc_core::separator::{
    verify_separator, FallbackProvider, PlanarProvider, SeparatorProfile, SeparatorProvider,
    SeparatorResult, TreewidthProvider,
};

/// Exit codes: 0 success, 1 verification/processing failure, 2 usage error,
/// 3 budget exceeded.
enum CliError {
    Failure(String),
    Usage(String),
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Failure(m) | CliError::Usage(m) | CliError::Budget(m) => m,
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn failure<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Failure(e.to_string())
}

#[derive(Parser)]
#[command(
    name = "mcc",
    version,
    about = "Colorings with small monochromatic components: generators, separator colorings, exact solving, verification, sweeps, and scaling fits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance and write it in edge-list format.
    Generate(GenerateArgs),
    /// Color a graph (separator-driven or closed-form) and report component sizes.
    Color(ColorArgs),
    /// Exact mcc_t of a small graph by branch and bound (or naive enumeration).
    Exact(ExactArgs),
    /// Verify colorings, separators, or tree decompositions.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Run an experiment plan and emit a CSV of results.
    Sweep(SweepArgs),
    /// Least-squares exponent of a log-log relation in sweep CSVs.
    Fit(FitArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// grid_diag | tri_grid | rib_planar | fan | cone | hamming_cube |
    /// line_graph | config_bipartite | deg45_line
    #[arg(long)]
    family: String,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    copies: Option<usize>,
    #[arg(long)]
    m_a: Option<usize>,
    /// Rational like 0.05 or 1/20.
    #[arg(long)]
    rho: Option<String>,
    /// Degree runs like `190x4;10x5`.
    #[arg(long)]
    deg_a: Option<String>,
    #[arg(long)]
    deg_b: Option<String>,
    /// Base family for line_graph (hamming_cube, grid_diag, fan, tri_grid).
    #[arg(long)]
    base: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file for the edge list (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the family's tree decomposition here (fan, cone).
    #[arg(long)]
    td_out: Option<PathBuf>,
    /// Write the metadata sidecar here.
    #[arg(long)]
    meta_out: Option<PathBuf>,
    /// deg45_line only: also write the base graph H.
    #[arg(long)]
    base_out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Separator,
    Layer,
    HammingCube,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProviderArg {
    Planar,
    Treewidth,
    Fallback,
}

#[derive(Args)]
struct ColorArgs {
    #[arg(long, value_enum)]
    strategy: Strategy,
    /// Graph file; required for the separator strategy, optional check
    /// target for the closed-form ones.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    t: u32,
    #[arg(long, value_enum, default_value_t = ProviderArg::Fallback)]
    provider: ProviderArg,
    /// Tree-decomposition file for the treewidth provider.
    #[arg(long)]
    td: Option<PathBuf>,
    /// Declared profile coefficient for the fallback provider.
    #[arg(long, default_value = "4")]
    declared_k: String,
    /// Declared profile exponent for the fallback provider.
    #[arg(long, default_value = "1/2")]
    declared_gamma: String,
    /// Layer strategy: grid side m.
    #[arg(long)]
    m: Option<usize>,
    /// Layer / hamming-cube strategy: dimension d.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    coloring_out: Option<PathBuf>,
    /// Also write the key=value run report to this file.
    #[arg(long)]
    report_out: Option<PathBuf>,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 2)]
    t: u32,
    /// Full enumeration instead of branch and bound.
    #[arg(long)]
    naive: bool,
    #[arg(long)]
    node_budget: Option<u64>,
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Check a coloring file against a graph and report component sizes.
    Coloring {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        /// Fail (exit 1) when the largest monochromatic component exceeds this.
        #[arg(long)]
        max_component: Option<usize>,
        /// Fail unless the coloring is proper.
        #[arg(long)]
        proper: bool,
    },
    /// Check a separator file (one line of space-separated vertices).
    Separator {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        separator: PathBuf,
    },
    /// Check a tree-decomposition file.
    Td {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        td: PathBuf,
    },
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    plan: PathBuf,
    /// Output CSV (falls back to the plan's `out`, then stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override plan keys, e.g. --set seeds=0..9
    #[arg(long = "set")]
    set: Vec<String>,
}

#[derive(Args)]
struct FitArgs {
    /// Sweep CSV files (repeatable).
    #[arg(long, required = true)]
    input: Vec<PathBuf>,
    #[arg(long, default_value = "n")]
    x: String,
    #[arg(long, default_value = "max_component")]
    y: String,
    /// Keep only rows where column=value (repeatable).
    #[arg(long = "where")]
    filter: Vec<String>,
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))
}

fn write_output(path: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| CliError::Failure(format!("{}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    parse_edge_list(&read_file(path)?)
        .map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))
}

fn spec_from_flags(args: &GenerateArgs) -> Result<InstanceSpec, CliError> {
    let mut plan = ExperimentPlan::default();
    plan.set("family", &args.family).map_err(usage)?;
    let ints = [
        ("m", args.m),
        ("d", args.d),
        ("k", args.k),
        ("copies", args.copies),
        ("m_a", args.m_a),
    ];
    for (key, v) in ints {
        if let Some(v) = v {
            plan.set(key, &v.to_string()).map_err(usage)?;
        }
    }
    let texts = [
        ("rho", &args.rho),
        ("deg_a", &args.deg_a),
        ("deg_b", &args.deg_b),
        ("base", &args.base),
    ];
    for (key, v) in texts {
        if let Some(v) = v {
            plan.set(key, v).map_err(usage)?;
        }
    }
    plan.set("seeds", &args.seed.to_string()).map_err(usage)?;
    let specs = plan.expand().map_err(usage)?;
    Ok(specs.into_iter().next().expect("one seed, one combo"))
}

fn cmd_generate(args: GenerateArgs) -> Result<(), CliError> {
    let spec = spec_from_flags(&args)?;
    let inst = instantiate(&spec).map_err(failure)?;
    write_output(args.out.as_ref(), &emit_edge_list(&inst.graph))?;
    if let Some(td_path) = &args.td_out {
        let td = inst
            .decomposition
            .as_ref()
            .ok_or_else(|| usage(format!("family {} emits no tree decomposition", args.family)))?;
        write_output(Some(td_path), &emit_tree_decomposition(td))?;
    }
    if let Some(meta_path) = &args.meta_out {
        let sidecar = inst
            .metadata
            .to_sidecar(&spec, inst.graph.n(), inst.graph.instance_count());
        write_output(Some(meta_path), &sidecar)?;
    }
    if let Some(base_path) = &args.base_out {
        let Family::Deg45Line { m_a, rho } = spec.family else {
            return Err(usage("--base-out only applies to deg45_line"));
        };
        let full = gen_deg45_line(m_a, rho, spec.seed).map_err(failure)?;
        write_output(Some(base_path), &emit_edge_list(&full.base))?;
    }
    Ok(())
}

fn run_report(g: &Graph, run: &FragmentationRun, profile: &SeparatorProfile) -> Result<String, CliError> {
    let report = max_mono_component(g, &run.coloring).map_err(failure)?;
    let mut out = String::new();
    out.push_str(&format!("n={}\n", g.n()));
    out.push_str(&format!("t={}\n", run.coloring.t()));
    out.push_str(&format!("gamma={}\n", profile.exponent));
    out.push_str(&format!("coefficient={}\n", profile.coefficient));
    out.push_str(&format!("provider={}\n", profile.provider));
    out.push_str(&format!("n0={}\n", run.threshold));
    out.push_str(&format!("separator_size={}\n", run.separator_vertices.len()));
    out.push_str(&format!("separator_budget={:.3}\n", run.bound_certificate.budget));
    out.push_str(&format!("honored={}\n", run.bound_certificate.honored));
    for (c, max) in report.per_color_max.iter().enumerate() {
        out.push_str(&format!("max_component.color{c}={max}\n"));
    }
    out.push_str(&format!("max_component={}\n", report.max_component_size));
    out.push_str(&format!("time_ms={}\n", run.elapsed.as_millis()));
    Ok(out)
}

fn cmd_color(args: ColorArgs) -> Result<(), CliError> {
    match args.strategy {
        Strategy::Separator => {
            let input = args
                .input
                .as_ref()
                .ok_or_else(|| usage("separator strategy needs --input"))?;
            let g = load_graph(input)?;
            let provider: Box<dyn SeparatorProvider> = match args.provider {
                ProviderArg::Planar => Box::new(PlanarProvider),
                ProviderArg::Treewidth => {
                    let td_path = args
                        .td
                        .as_ref()
                        .ok_or_else(|| usage("treewidth provider needs --td"))?;
                    let td = parse_tree_decomposition(&read_file(td_path)?)
                        .map_err(|e| CliError::Failure(format!("{}: {e}", td_path.display())))?;
                    Box::new(TreewidthProvider::new(td))
                }
                ProviderArg::Fallback => {
                    let k = parse_rational(&args.declared_k).map_err(usage)?;
                    let gamma = parse_rational(&args.declared_gamma).map_err(usage)?;
                    let profile =
                        SeparatorProfile::new(k, gamma, "fallback").map_err(usage)?;
                    Box::new(FallbackProvider::new(profile))
                }
            };
            let profile = provider.profile();
            let run = t_color_via_separators(&g, args.t, provider.as_ref()).map_err(failure)?;
            let report = run_report(&g, &run, &profile)?;
            print!("{report}");
            if let Some(p) = &args.report_out {
                write_output(Some(p), &report)?;
            }
            if let Some(p) = &args.coloring_out {
                write_output(Some(p), &emit_coloring(&run.coloring))?;
            }
            Ok(())
        }
        Strategy::Layer => {
            let m = args.m.ok_or_else(|| usage("layer strategy needs --m"))?;
            let d = args.d.ok_or_else(|| usage("layer strategy needs --d"))?;
            let coloring = layer_coloring(d, m).map_err(usage)?;
            report_closed_form(&args, coloring, None)
        }
        Strategy::HammingCube => {
            let d = args.d.ok_or_else(|| usage("hamming-cube strategy needs --d"))?;
            let (lg, coloring) = hamming_cube_edge_coloring(d).map_err(usage)?;
            report_closed_form(&args, coloring, Some(lg.graph))
        }
    }
}

/// Prints the closed-form coloring report, checking it against --input or
/// the internally constructed graph when available.
fn report_closed_form(
    args: &ColorArgs,
    coloring: Coloring,
    constructed: Option<Graph>,
) -> Result<(), CliError> {
    let graph = match (&args.input, constructed) {
        (Some(path), _) => Some(load_graph(path)?),
        (None, g) => g,
    };
    if let Some(g) = &graph {
        if g.n() != coloring.len() {
            return Err(CliError::Failure(format!(
                "coloring covers {} vertices but the graph has {}",
                coloring.len(),
                g.n()
            )));
        }
        let report = max_mono_component(g, &coloring).map_err(failure)?;
        println!("n={}", g.n());
        println!("t={}", coloring.t());
        for (c, max) in report.per_color_max.iter().enumerate() {
            println!("max_component.color{c}={max}");
        }
        println!("max_component={}", report.max_component_size);
    } else {
        println!("n={}", coloring.len());
        println!("t={}", coloring.t());
    }
    if let Some(p) = &args.coloring_out {
        write_output(Some(p), &emit_coloring(&coloring))?;
    }
    Ok(())
}

fn cmd_exact(args: ExactArgs) -> Result<(), CliError> {
    let g = load_graph(&args.input)?;
    let start = std::time::Instant::now();
    let res = if args.naive {
        naive_mcc(&g, args.t).map_err(|e| match e {
            ExactError::TooLarge { .. } => CliError::Budget(e.to_string()),
            other => failure(other),
        })?
    } else {
        let config = ExactConfig {
            node_budget: args.node_budget.unwrap_or(ExactConfig::default().node_budget),
        };
        exact_mcc_with(&g, args.t, &config).map_err(failure)?
    };
    let ms = start.elapsed().as_millis();
    println!("instance,t,value,exact,nodes,time_ms");
    println!(
        "{},{},{},{},{},{}",
        args.input.display(),
        args.t,
        res.value,
        res.exact,
        res.nodes_explored,
        ms
    );
    if let Some(p) = &args.witness_out {
        write_output(Some(p), &emit_coloring(&res.witness))?;
    }
    if !res.exact {
        return Err(CliError::Budget(format!(
            "node budget exhausted; best known value {}",
            res.value
        )));
    }
    Ok(())
}

fn cmd_verify(cmd: VerifyCommand) -> Result<(), CliError> {
    match cmd {
        VerifyCommand::Coloring {
            graph,
            coloring,
            max_component,
            proper,
        } => {
            let g = load_graph(&graph)?;
            let c = parse_coloring(&read_file(&coloring)?)
                .map_err(|e| CliError::Failure(format!("{}: {e}", coloring.display())))?;
            let report = max_mono_component(&g, &c).map_err(failure)?;
            for (color, max) in report.per_color_max.iter().enumerate() {
                println!("max_component.color{color}={max}");
            }
            println!("max_component={}", report.max_component_size);
            if let Some(bound) = max_component {
                if report.max_component_size > bound {
                    return Err(CliError::Failure(format!(
                        "largest monochromatic component {} exceeds bound {bound}",
                        report.max_component_size
                    )));
                }
            }
            if proper && report.max_component_size > 1 {
                return Err(CliError::Failure("coloring is not proper".into()));
            }
            println!("ok");
            Ok(())
        }
        VerifyCommand::Separator { graph, separator } => {
            let g = load_graph(&graph)?;
            let text = read_file(&separator)?;
            let mut verts: Vec<Vertex> = Vec::new();
            for tok in text.split_whitespace() {
                verts.push(
                    tok.parse()
                        .map_err(|_| CliError::Failure(format!("bad vertex {tok:?}")))?,
                );
            }
            let result = SeparatorResult::from_separator(&g, verts).map_err(failure)?;
            let verdict = verify_separator(&g, &result);
            println!("size={}", result.size);
            println!("balance={}", result.balance);
            println!("components={}", result.components.len());
            match verdict.failure {
                None => {
                    println!("ok");
                    Ok(())
                }
                Some(diag) => Err(CliError::Failure(diag)),
            }
        }
        VerifyCommand::Td { graph, td } => {
            let g = load_graph(&graph)?;
            let decomposition = parse_tree_decomposition(&read_file(&td)?)
                .map_err(|e| CliError::Failure(format!("{}: {e}", td.display())))?;
            decomposition.validate(&g).map_err(failure)?;
            println!("bags={}", decomposition.bag_count());
            println!("width={}", decomposition.width());
            println!("ok");
            Ok(())
        }
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let mut plan = ExperimentPlan::parse(&read_file(&args.plan)?).map_err(usage)?;
    for kv in &args.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| usage(format!("--set needs key=value, got {kv:?}")))?;
        plan.set(k.trim(), v.trim()).map_err(usage)?;
    }
    let rows = run_plan(&plan).map_err(failure)?;
    let csv = rows_to_csv(&rows);
    let out = args.out.or_else(|| plan.out.clone().map(PathBuf::from));
    write_output(out.as_ref(), &csv)
}

fn cmd_fit(args: FitArgs) -> Result<(), CliError> {
    let mut filters: Vec<(String, String)> = Vec::new();
    for kv in &args.filter {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| usage(format!("--where needs column=value, got {kv:?}")))?;
        filters.push((k.trim().to_string(), v.trim().to_string()));
    }
    let mut pairs: Vec<(f64, f64)> = Vec::new();
    for path in &args.input {
        let mut reader = csv::Reader::from_path(path)
            .map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))?;
        let headers = reader
            .headers()
            .map_err(|e| CliError::Failure(e.to_string()))?
            .clone();
        let col = |name: &str| headers.iter().position(|h| h == name);
        let xi = col(&args.x).ok_or_else(|| usage(format!("no column {:?}", args.x)))?;
        let yi = col(&args.y).ok_or_else(|| usage(format!("no column {:?}", args.y)))?;
        let fidx: Vec<(usize, &str)> = filters
            .iter()
            .map(|(k, v)| col(k).map(|i| (i, v.as_str())))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| usage("unknown --where column"))?;
        for record in reader.records() {
            let record = record.map_err(|e| CliError::Failure(e.to_string()))?;
            if fidx.iter().any(|&(i, v)| record.get(i) != Some(v)) {
                continue;
            }
            let x: f64 = record
                .get(xi)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| CliError::Failure(format!("bad {} cell", args.x)))?;
            let y: f64 = record
                .get(yi)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| CliError::Failure(format!("bad {} cell", args.y)))?;
            pairs.push((x, y));
        }
    }
    let fit = fit_exponent(&pairs).map_err(failure)?;
    println!(
        "points={} exponent={:.6} intercept={:.6} residual={:.6}",
        fit.points.len(),
        fit.exponent,
        fit.intercept,
        fit.residual
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Color(args) => cmd_color(args),
        Command::Exact(args) => cmd_exact(args),
        Command::Verify(cmd) => cmd_verify(cmd),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Fit(args) => cmd_fit(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
