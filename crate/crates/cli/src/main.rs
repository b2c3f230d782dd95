use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pachner_core::canon::IsoMode;
use pachner_core::explorer::{explore, ExplorePolicy};
use pachner_core::family::{apex_shape, generate_tn, tn_closed_form, verify_lemma_conditions};
use pachner_core::report;
use pachner_core::seeds::{self, GluingFile, Seed};
use pachner_core::shapes::{check_edge_consistency, classify, Classification};
use pachner_core::triangulation::tet_name;
use pachner_core::volume::{bloch_wigner, format_volume, volume_series_trace, volume_total};

/// Ideal triangulations, exact shapes and Pachner-graph exploration.
#[derive(Parser, Debug)]
#[command(name = "pachner", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build T_n of the figure eight family and check its closed-form shapes.
    Tn {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
        /// Write the triangulation and shapes as a gluing-table JSON file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Breadth-first search of the Pachner graph from a seed.
    Explore(ExploreArgs),
    /// Classify the shapes of a seed and report its edge equations.
    Classify {
        #[arg(long)]
        seed: String,
    },
    /// Volume of a seed, or partial sums of the family's volume series.
    Volume(VolumeArgs),
}

#[derive(Args, Debug)]
struct ExploreArgs {
    /// Built-in name (fig8, fig8-sister), JSON path, or a name in $PACHNER_SEED_DIR.
    #[arg(long)]
    seed: String,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    max_tets: Option<u64>,
    /// Expand only geometric nodes; others are recorded as leaves.
    #[arg(long)]
    geometric_only: bool,
    /// Also follow 3-2 moves.
    #[arg(long)]
    include_32: bool,
    /// Do not identify a triangulation with its mirror image.
    #[arg(long)]
    orientation_preserving: bool,
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct VolumeArgs {
    #[arg(long)]
    seed: Option<String>,
    /// Number of series terms.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    series: Option<u64>,
}

enum Failure {
    Input(String),
    Internal(String),
}

type CmdResult = Result<(), Failure>;

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn resolve_seed(seed_arg: &str) -> Result<Seed, Failure> {
    if let Some(seed) = seeds::builtin(seed_arg) {
        return Ok(seed);
    }
    let path = Path::new(seed_arg);
    if path.is_file() {
        return seeds::load_seed_file(path).map_err(input);
    }
    if let Some(dir) = std::env::var_os("PACHNER_SEED_DIR") {
        let candidate = Path::new(&dir).join(format!("{seed_arg}.json"));
        if candidate.is_file() {
            return seeds::load_seed_file(&candidate).map_err(input);
        }
    }
    Err(Failure::Input(format!(
        "unknown seed {seed_arg:?}: not a built-in name, a file, or a name in PACHNER_SEED_DIR"
    )))
}

fn write_file(path: &Path, contents: &str) -> CmdResult {
    std::fs::write(path, contents)
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn cmd_tn(n: usize, json: Option<PathBuf>) -> CmdResult {
    let (tri, shapes) = generate_tn(n);
    for (t, z) in shapes.iter().enumerate() {
        println!("{}: {z}", tet_name(t));
    }
    let class = classify(&shapes);
    println!("classification: {class}");
    println!("volume: {}", format_volume(volume_total(&shapes)));
    if let Some(path) = json {
        let file = GluingFile::from_triangulation(&tri, Some(&shapes));
        write_file(&path, &file.to_json_string())?;
    }
    if class != Classification::Geometric {
        return Err(Failure::Internal(format!("T_{n} is not geometric")));
    }
    if shapes.as_slice() != tn_closed_form(n).as_slice() {
        return Err(Failure::Internal(format!(
            "T_{n} shapes differ from the closed form"
        )));
    }
    if !verify_lemma_conditions(&tri, &shapes, 0, 1).all_hold() {
        return Err(Failure::Internal(format!(
            "inductive conditions fail on T_{n}"
        )));
    }
    Ok(())
}

fn cmd_explore(args: ExploreArgs) -> CmdResult {
    let outputs: Vec<&PathBuf> = [&args.dot, &args.json, &args.csv]
        .into_iter()
        .flatten()
        .collect();
    for (i, a) in outputs.iter().enumerate() {
        if outputs[..i].contains(a) {
            return Err(Failure::Input(format!(
                "output path {} given twice",
                a.display()
            )));
        }
    }
    let seed = resolve_seed(&args.seed)?;
    let shapes = seed
        .shapes
        .as_ref()
        .ok_or_else(|| Failure::Input(format!("seed {} has no shapes", seed.name)))?;
    if !args.geometric_only && args.depth.is_none() && args.max_tets.is_none() {
        return Err(Failure::Input(
            "exploring every node needs --depth or --max-tets (or use --geometric-only)".into(),
        ));
    }
    let policy = ExplorePolicy {
        max_depth: args.depth.unwrap_or(usize::MAX),
        max_tets: args.max_tets.map_or(usize::MAX, |m| m as usize),
        geometric_only: args.geometric_only,
        include_32: args.include_32,
        iso_mode: if args.orientation_preserving {
            IsoMode::OrientationPreserving
        } else {
            IsoMode::All
        },
    };
    let graph = explore(&seed.triangulation, shapes, policy).map_err(input)?;
    print!("{}", report::summary_table(&graph));
    if let Some(p) = &args.dot {
        write_file(p, &report::to_dot(&graph))?;
    }
    if let Some(p) = &args.json {
        write_file(p, &report::to_json(&graph))?;
    }
    if let Some(p) = &args.csv {
        write_file(p, &report::to_csv(&graph))?;
    }
    if !graph.shape_conflicts.is_empty() {
        return Err(Failure::Internal(format!(
            "{} classes reached with different shapes",
            graph.shape_conflicts.len()
        )));
    }
    Ok(())
}

fn cmd_classify(seed_arg: &str) -> CmdResult {
    let seed = resolve_seed(seed_arg)?;
    let tri = &seed.triangulation;
    let shapes = seed
        .shapes
        .as_ref()
        .ok_or_else(|| Failure::Input(format!("seed {} has no shapes", seed.name)))?;
    let edges = check_edge_consistency(tri, shapes).map_err(input)?;
    println!("tetrahedra: {}", tri.size());
    for (i, e) in edges.edges.iter().enumerate() {
        println!(
            "edge {i}: degree {} product {} winding {}",
            e.degree, e.product, e.winding
        );
    }
    let cusps = tri.vertex_links();
    let chis: Vec<String> = cusps
        .iter()
        .map(|c| c.link_euler_characteristic.to_string())
        .collect();
    println!(
        "cusps: {} (euler characteristics {})",
        cusps.len(),
        chis.join(", ")
    );
    println!(
        "edge equations: {}",
        if edges.is_consistent() {
            "satisfied"
        } else {
            "violated"
        }
    );
    println!("classification: {}", classify(shapes));
    println!("volume: {}", format_volume(volume_total(shapes)));
    Ok(())
}

fn cmd_volume(args: VolumeArgs) -> CmdResult {
    if let Some(seed_arg) = args.seed {
        let seed = resolve_seed(&seed_arg)?;
        let shapes = seed
            .shapes
            .as_ref()
            .ok_or_else(|| Failure::Input(format!("seed {} has no shapes", seed.name)))?;
        println!("{}", format_volume(volume_total(shapes)));
        return Ok(());
    }
    let m = args.series.expect("clap group requires one argument");
    let target = volume_total(
        &seeds::builtin("fig8")
            .and_then(|s| s.shapes)
            .expect("built-in"),
    );
    let trace = volume_series_trace(m);
    println!("{:>8}  {:>16}  {:>16}", "m", "partial", "residual");
    for (i, partial) in trace.iter().enumerate() {
        let k = i as u64 + 1;
        let residual = target - partial - 2.0 * bloch_wigner(apex_shape(k).to_complex());
        println!("{k:>8}  {}  {residual:>16.3e}", format_volume(*partial));
    }
    if trace.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Failure::Internal("partial sums are not increasing".into()));
    }
    println!("limit: {}", format_volume(target));
    Ok(())
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
    let result = match cli.command {
        Command::Tn { n, json } => cmd_tn(n as usize, json),
        Command::Explore(args) => cmd_explore(args),
        Command::Classify { seed } => cmd_classify(&seed),
        Command::Volume(args) => cmd_volume(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
