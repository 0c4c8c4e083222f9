mod svg;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crescent_core::classifier::{self, type_of_config, TypeString, TypeSymbol};
use crescent_core::constructors::{self, HexadReading, SegmentChoice};
use crescent_core::json::{parse_norm, parse_points, read_configuration};
use crescent_core::lp;
use crescent_core::predicates::{crescent_report, is_perpendicular_perturbation, Axis, Configuration};
use crescent_core::search::{self, LatticeKind, LatticeSpec, SearchMode, SearchParams};
use crescent_core::{Error, ExactScalar, NormSpec};

#[derive(Parser)]
#[command(name = "crescent", version, about = "Crescent and line-like configurations in normed planes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every predicate on a configuration file; exit 0 iff it is a strong crescent.
    Check {
        file: PathBuf,
        /// Replace the norm given in the file.
        #[arg(long)]
        norm: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lattice search for strong crescent configurations.
    Search(SearchArgs),
    /// Type string, line-like order and perturbation verdict of an L^inf configuration.
    Classify {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a configuration from one of the constructions.
    Construct {
        #[command(subcommand)]
        what: Construct,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Check every forbidden-type claim by grid sampling.
    VerifyLemmas {
        /// Grid denominator, a power of two.
        #[arg(long, default_value_t = 8)]
        grid: u64,
        /// Run the deliberately false control claim instead.
        #[arg(long)]
        inverted: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample all line-like crescents of size n and test for perpendicular perturbations.
    VerifyTheorem {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        grid: u64,
        /// Restrict step symbols, written in ASCII (for example `xAD`).
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw the distance graph of a configuration as SVG.
    Plot {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// Square 7x8, L^inf, size 8, first.
    LinfTable,
    /// Square 9x9, L^inf, size 9, absence.
    LinfAbsence,
    /// Triangular 5x4, L^2, size 6, first.
    L2Hexad,
    /// Triangular 10x10, L^2, size 7, absence.
    L2Absence,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    #[arg(long)]
    norm: Option<String>,
    #[arg(long)]
    lattice: Option<String>,
    #[arg(long)]
    width: Option<usize>,
    #[arg(long)]
    height: Option<usize>,
    #[arg(long)]
    size: Option<usize>,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long)]
    no_symmetry: bool,
    #[arg(long)]
    node_cap: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write one SVG per configuration into this directory.
    #[arg(long)]
    svg_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Construct {
    /// Published L^inf strong crescent of size 4..8.
    Table {
        #[arg(long)]
        n: usize,
    },
    /// Published L^2 six-point set under one of two coordinate readings.
    Hexad {
        #[arg(long, value_enum, default_value = "alternate")]
        reading: ReadingArg,
    },
    /// Four-point strong crescent for an exact norm.
    Crescent4 {
        #[arg(long)]
        norm: String,
    },
    /// Line-like set along a segment of the unit circle.
    Segment {
        #[arg(long)]
        norm: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Equally spaced points pushed off a horizontal line.
    PerturbedLine {
        #[arg(long)]
        n: usize,
    },
    Staircase {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: String,
    },
    /// Non-perturbation line-like crescents with types xy, xyx, xyxy, xyxyx.
    Counterexample {
        #[arg(long)]
        len: usize,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Best line-like approximation in L^p (numeric).
    LpSearch {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 60)]
        grid: usize,
        /// Free-direction walk instead of the circle chain.
        #[arg(long)]
        free: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReadingArg {
    Literal,
    Alternate,
}

/// Mistakes in the invocation itself; they exit with status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let resource = e.chain().any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::ResourceLimit(_))));
            ExitCode::from(if resource { 1 } else { 2 })
        }
    }
}

fn emit(value: &Value, out: Option<&Path>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(p) => fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            }
        }
    }
    Ok(())
}

fn norm_flag(s: &str) -> anyhow::Result<NormSpec> {
    if let Some(path) = s.strip_prefix("polygon:") {
        let text = fs::read_to_string(path).with_context(|| format!("reading polygon {path}"))?;
        return Ok(NormSpec::polygon(parse_points(&text)?)?);
    }
    parse_norm(s).map_err(|e| usage(e.to_string()))
}

fn load(file: &Path) -> anyhow::Result<Configuration> {
    read_configuration(file).with_context(|| format!("reading {}", file.display()))
}

fn exact(s: &str) -> anyhow::Result<ExactScalar> {
    s.parse().map_err(|e: Error| usage(e.to_string()))
}

fn grid_exp(grid: u64) -> anyhow::Result<u32> {
    if grid < 4 || !grid.is_power_of_two() {
        return Err(usage(format!("--grid must be a power of two >= 4, got {grid}")));
    }
    Ok(grid.trailing_zeros())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Check { file, norm, out } => {
            let mut cfg = load(&file)?;
            if let Some(n) = norm {
                cfg = Configuration::new(norm_flag(&n)?, cfg.points)?;
            }
            let r = crescent_report(&cfg)?;
            let strong = r.strong_crescent();
            emit(
                &json!({
                    "norm": cfg.norm,
                    "size": cfg.len(),
                    "strong_crescent": strong,
                    "crescent_multiplicity": r.crescent_multiplicity,
                    "strong_general_position": r.strong_general_position(),
                    "linelike_crescent": r.linelike_crescent(),
                    "report": r,
                }),
                out.as_deref(),
            )?;
            Ok(strong)
        }
        Command::Search(args) => cmd_search(args),
        Command::Classify { file, out } => {
            let cfg = load(&file)?;
            if cfg.norm != NormSpec::Linf {
                return Err(usage("classify works on L^inf configurations"));
            }
            let r = crescent_report(&cfg)?;
            let mut report = json!({ "linelike": r.linelike_order.is_some() });
            if let Some(order) = &r.linelike_order {
                let ordered = cfg.reordered(order);
                let t = type_of_config(&ordered.points)?;
                let pert = is_perpendicular_perturbation(&cfg.points, Axis::Auto);
                report = json!({
                    "linelike": true,
                    "order": order,
                    "type": t.to_ascii(),
                    "type_unicode": t.symbols().iter().map(|s| s.name()).collect::<Vec<_>>().join(" "),
                    "linelike_crescent": r.linelike_crescent(),
                    "perpendicular_perturbation": pert.is_some(),
                    "axis": pert.map(|w| w.axis),
                });
            }
            emit(&report, out.as_deref())?;
            Ok(r.linelike_order.is_some())
        }
        Command::Construct { what, out } => {
            let value = construct(what)?;
            emit(&value, out.as_deref())?;
            Ok(true)
        }
        Command::VerifyLemmas { grid, inverted, out } => {
            let exp = grid_exp(grid)?;
            if inverted {
                let r = classifier::sanity_inversion(exp)?;
                emit(&serde_json::to_value(&r)?, out.as_deref())?;
                return Ok(r.holds);
            }
            let r = classifier::verify_forbidden_types(exp)?;
            emit(&serde_json::to_value(&r)?, out.as_deref())?;
            Ok(r.all_hold)
        }
        Command::VerifyTheorem { n, grid, alphabet, out } => {
            let exp = grid_exp(grid)?;
            let alpha: Option<Vec<TypeSymbol>> = match alphabet {
                Some(a) => Some(a.parse::<TypeString>().map_err(|e| usage(e.to_string()))?.0),
                None => None,
            };
            let r = classifier::verify_classification(n, exp, alpha.as_deref())?;
            emit(&serde_json::to_value(&r)?, out.as_deref())?;
            Ok(r.consistent)
        }
        Command::Plot { file, out } => {
            let cfg = load(&file)?;
            if cfg.len() < 2 {
                return Err(usage("plot needs at least two points"));
            }
            fs::write(&out, svg::distance_graph_svg(&cfg)?).with_context(|| format!("writing {}", out.display()))?;
            Ok(true)
        }
    }
}

fn construct(what: Construct) -> anyhow::Result<Value> {
    let cfg = match what {
        Construct::Table { n } => {
            constructors::published_linf(n).ok_or_else(|| usage(format!("the published table covers n = 4..8, got {n}")))?
        }
        Construct::Hexad { reading } => constructors::published_l2_hexad(match reading {
            ReadingArg::Literal => HexadReading::Literal,
            ReadingArg::Alternate => HexadReading::Alternate,
        }),
        Construct::Crescent4 { norm } => constructors::build_crescent4(&norm_flag(&norm)?)?,
        Construct::Segment { norm, n, seed } => {
            constructors::build_segment_norm_linelike(&norm_flag(&norm)?, n, &SegmentChoice::Seeded(seed))?
        }
        Construct::PerturbedLine { n } => constructors::example_perturbed_line(n),
        Construct::Staircase { n, a } => constructors::example_staircase(n, &exact(&a)?)?,
        Construct::Counterexample { len, a, b } => constructors::example_counterexample(len, &exact(&a)?, &exact(&b)?)?,
        Construct::LpSearch { p, n, grid, free } => {
            if !(p > 1.0 && p.is_finite()) || n < 3 || grid < 4 {
                return Err(usage("lp-search needs p > 1, n >= 3 and grid >= 4"));
            }
            let r = if free { lp::lp_linelike_search_free(p, n, grid) } else { lp::lp_linelike_search(p, n, grid) };
            return Ok(serde_json::to_value(r)?);
        }
    };
    Ok(serde_json::to_value(cfg)?)
}

struct Resolved {
    kind: LatticeKind,
    norm: String,
    width: usize,
    height: usize,
    size: usize,
    mode: SearchMode,
}

fn preset_values(p: Preset) -> Resolved {
    let (kind, norm, width, height, size, mode) = match p {
        Preset::LinfTable => (LatticeKind::Square, "linf", 7, 8, 8, SearchMode::First),
        Preset::LinfAbsence => (LatticeKind::Square, "linf", 9, 9, 9, SearchMode::Absence),
        Preset::L2Hexad => (LatticeKind::Triangular, "l2", 5, 4, 6, SearchMode::First),
        Preset::L2Absence => (LatticeKind::Triangular, "l2", 10, 10, 7, SearchMode::Absence),
    };
    Resolved { kind, norm: norm.into(), width, height, size, mode }
}

/// Explicit flags fill in what no preset gives; a flag that contradicts the
/// chosen preset is a usage error.
fn resolve(args: &SearchArgs) -> anyhow::Result<Resolved> {
    let kind = args.lattice.as_deref().map(str::parse::<LatticeKind>).transpose().map_err(|e| usage(e.to_string()))?;
    let mode = args.mode.as_deref().map(str::parse::<SearchMode>).transpose().map_err(|e| usage(e.to_string()))?;
    let Some(p) = args.preset else {
        return Ok(Resolved {
            kind: kind.unwrap_or(LatticeKind::Square),
            norm: args.norm.clone().unwrap_or_else(|| "linf".into()),
            width: args.width.ok_or_else(|| usage("--width is required without --preset"))?,
            height: args.height.ok_or_else(|| usage("--height is required without --preset"))?,
            size: args.size.ok_or_else(|| usage("--size is required without --preset"))?,
            mode: mode.unwrap_or(SearchMode::First),
        });
    };
    let r = preset_values(p);
    let clash = |what: &str, given: String, preset: String| {
        usage(format!("--{what} {given} conflicts with the preset's {preset}"))
    };
    if let Some(k) = kind.filter(|&k| k != r.kind) {
        return Err(clash("lattice", k.to_string(), r.kind.to_string()));
    }
    if let Some(n) = args.norm.as_ref().filter(|n| norm_flag(n).ok() != norm_flag(&r.norm).ok()) {
        return Err(clash("norm", n.clone(), r.norm));
    }
    for (what, given, want) in [("width", args.width, r.width), ("height", args.height, r.height), ("size", args.size, r.size)] {
        if let Some(g) = given.filter(|&g| g != want) {
            return Err(clash(what, g.to_string(), want.to_string()));
        }
    }
    if let Some(m) = mode.filter(|&m| m != r.mode) {
        return Err(clash("mode", m.to_string(), r.mode.to_string()));
    }
    Ok(r)
}

fn cmd_search(args: SearchArgs) -> anyhow::Result<bool> {
    let r = resolve(&args)?;
    let spec = LatticeSpec::new(r.kind, r.width, r.height).map_err(|e| usage(e.to_string()))?;
    let norm = norm_flag(&r.norm)?;
    if !norm.is_exact() {
        return Err(usage("search needs an exact norm"));
    }
    let mut params = SearchParams::new(spec, norm, r.size, r.mode);
    params.symmetry_reduction = !args.no_symmetry;
    params.threads = args.threads;
    params.checkpoint = args.checkpoint.clone();
    params.node_cap = args.node_cap;
    if let Ok(v) = std::env::var("CRESCENT_NODE_CAP") {
        params.node_cap = Some(v.trim().parse().map_err(|_| usage(format!("CRESCENT_NODE_CAP must be an integer, got `{v}`")))?);
    }
    let result = search::search(&params)?;
    if let Some(dir) = &args.svg_dir {
        fs::create_dir_all(dir)?;
        for (i, cfg) in result.configurations.iter().enumerate() {
            fs::write(dir.join(format!("config_{i:03}.svg")), svg::distance_graph_svg(cfg)?)?;
        }
    }
    emit(&serde_json::to_value(&result)?, args.out.as_deref())?;
    Ok(match r.mode {
        SearchMode::Absence => result.absent == Some(true),
        _ => !result.configurations.is_empty(),
    })
}
