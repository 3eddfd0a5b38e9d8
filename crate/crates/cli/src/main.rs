//! Command-line surface for the plmap toolkit: verification lines, orbit
//! traces, classification tables, sequence enumeration, polygon and tree
//! conversions, SVG rendering, and recurrence runs.

use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use plmap::document::{self, verdict_name};
use plmap::{
    classify_half_plane, enumerate_admissible, named_map, polygon_from_trees, recurrence_orbit,
    tree_from_polygon, ConeFanMap, Document, FundamentalPolygon, HalfPlaneParams, LatticeVector,
    PeriodOutcome, RecurrenceKind, RenderOptions, TraceSequence,
};

#[derive(Parser)]
#[command(
    name = "plmap",
    version,
    about = "Exact piecewise-linear periodic maps of the integer plane"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report period, rotation number, orientation and piece count of a map.
    Verify {
        /// Map name (H, G, F, E, D, alpha, ..., phi(M), reflect2(N)) or a
        /// JSON document file describing a map, polygon, sequence or code.
        target: String,
        #[arg(long, default_value_t = 120)]
        max_period: u32,
    },
    /// Print the orbit of a lattice point, one step per line.
    Orbit {
        #[arg(long)]
        map: String,
        /// Starting point as X,Y.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        steps: u32,
    },
    /// Classify the normalized two-piece family over a parameter grid.
    Classify {
        /// Range of the right-piece trace as LO:HI (inclusive).
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Range of the left-piece trace as LO:HI (inclusive).
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 120)]
        max_period: u32,
        /// Emit one classification document instead of the TSV table.
        #[arg(long)]
        json: bool,
    },
    /// List the canonical admissible sequences of a given order.
    ///
    /// Output is complete relative to --max-entry: there are infinitely many
    /// maps of each order past 3, so entries are capped in absolute value.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        max_entry: i64,
        /// Emit one sequence document per line instead of plain rows.
        #[arg(long)]
        json: bool,
    },
    /// Build and transform fundamental polygons.
    Polygon {
        #[command(subcommand)]
        cmd: PolygonCmd,
    },
    /// Encode polygons as insertion trees and back.
    Tree {
        #[command(subcommand)]
        cmd: TreeCmd,
    },
    /// Render a polygon or periodic map as an SVG figure.
    Render {
        /// Map name or JSON document file (map, polygon, sequence or code).
        target: String,
        #[arg(short, long)]
        output: PathBuf,
        /// Pixels per lattice unit.
        #[arg(long, default_value_t = 40)]
        scale: u32,
        #[arg(long, default_value_t = 20)]
        margin: u32,
        #[arg(long)]
        label_regions: bool,
        #[arg(long)]
        label_vertices: bool,
        #[arg(long, default_value_t = 120)]
        max_period: u32,
    },
    /// Iterate one of the recurrences x' = |x|-p, max(x,0)-p, max(-x,0)-p.
    Recur {
        /// H, G or F.
        #[arg(long)]
        kind: String,
        /// Seed pair as X0,X1.
        #[arg(long, allow_hyphen_values = true)]
        seed: String,
        #[arg(long)]
        steps: u32,
    },
}

#[derive(Subcommand)]
enum PolygonCmd {
    /// Build the polygon of a trace sequence (e_0 = (1,0), e_1 = (0,1)).
    FromSequence {
        /// Comma-separated integers, e.g. 0,-2,0,2.
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Recover the fundamental polygon of a periodic map.
    OfMap {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 120)]
        max_period: u32,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Insert the mediant vertex between positions INDEX and INDEX+1.
    Insert {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        index: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Remove vertex INDEX (requires e_i = e_{i-1} + e_{i+1}).
    Remove {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        index: usize,
        #[command(flatten)]
        out: OutputArg,
    },
}

#[derive(Subcommand)]
enum TreeCmd {
    /// Encode a polygon document as upper/lower trees plus a shear.
    Encode {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Decode a code document back into its polygon.
    Decode {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
}

#[derive(Args)]
struct OutputArg {
    /// Write to a file instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Verify { target, max_period } => verify(&target, max_period),
        Cmd::Orbit { map, point, steps } => orbit(&map, &point, steps),
        Cmd::Classify { a, b, max_period, json } => classify(&a, &b, max_period, json),
        Cmd::Enumerate { order, max_entry, json } => enumerate(order, max_entry, json),
        Cmd::Polygon { cmd } => polygon(cmd),
        Cmd::Tree { cmd } => tree(cmd),
        Cmd::Render { target, output, scale, margin, label_regions, label_vertices, max_period } => {
            let opts = RenderOptions { scale, margin, label_regions, label_vertices };
            render(&target, &output, &opts, max_period)
        }
        Cmd::Recur { kind, seed, steps } => recur(&kind, &seed, steps),
    }
}

fn load_document(path: &Path) -> Result<Document> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    document::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

/// A map given either by catalog name or by a document file of any
/// map-bearing kind.
fn load_map(target: &str) -> Result<ConeFanMap> {
    match named_map(target) {
        Ok(map) => Ok(map),
        Err(name_err) => {
            let path = Path::new(target);
            if !path.exists() {
                bail!("{name_err}; and no file {target} exists");
            }
            let doc = load_document(path)?;
            match &doc {
                Document::Map { .. } => Ok(doc.to_map()?),
                Document::Polygon { .. } => Ok(doc.to_polygon()?.to_map()),
                Document::Sequence { .. } => {
                    Ok(FundamentalPolygon::from_sequence(&doc.to_sequence()?)?.to_map())
                }
                Document::Code { .. } => Ok(polygon_from_trees(&doc.to_code()?)?.to_map()),
                Document::Classification { .. } => {
                    bail!("a classification document does not describe a single map")
                }
            }
        }
    }
}

/// A polygon from a name or document: maps go through their fundamental
/// polygon, so they must be periodic and orientation-preserving.
fn load_polygon(target: &str, max_period: u32) -> Result<FundamentalPolygon> {
    match named_map(target) {
        Ok(map) => Ok(FundamentalPolygon::of_map(&map, max_period)?),
        Err(name_err) => {
            let path = Path::new(target);
            if !path.exists() {
                bail!("{name_err}; and no file {target} exists");
            }
            let doc = load_document(path)?;
            match &doc {
                Document::Map { .. } => Ok(FundamentalPolygon::of_map(&doc.to_map()?, max_period)?),
                Document::Polygon { .. } => Ok(doc.to_polygon()?),
                Document::Sequence { .. } => {
                    Ok(FundamentalPolygon::from_sequence(&doc.to_sequence()?)?)
                }
                Document::Code { .. } => Ok(polygon_from_trees(&doc.to_code()?)?),
                Document::Classification { .. } => {
                    bail!("a classification document does not describe a polygon")
                }
            }
        }
    }
}

fn emit(out: &OutputArg, text: &str) -> Result<()> {
    match &out.output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_point(s: &str) -> Result<LatticeVector> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| anyhow!("point must be given as X,Y, got {s:?}"))?;
    Ok(LatticeVector::new(x.trim().parse()?, y.trim().parse()?))
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| anyhow!("range must be given as LO:HI, got {s:?}"))?;
    let (lo, hi): (i64, i64) = (lo.trim().parse()?, hi.trim().parse()?);
    if lo > hi {
        bail!("empty range {s:?}");
    }
    Ok(lo..=hi)
}

fn verify(target: &str, max_period: u32) -> Result<()> {
    let map = load_map(target)?;
    let period = map.period(max_period);
    let period_str = match period {
        PeriodOutcome::Periodic(n) => n.to_string(),
        PeriodOutcome::GrowthExceeded => "none(growth)".to_string(),
        PeriodOutcome::NoPeriodWithinBound => "none(bound)".to_string(),
    };
    let rotation = map
        .rotation_number(max_period)
        .map(|r| r.to_string())
        .unwrap_or_else(|_| "-".to_string());
    println!(
        "period={period_str} rotation={rotation} orientation={} pieces={}",
        map.orientation(),
        map.pieces()
    );
    Ok(())
}

fn orbit(map: &str, point: &str, steps: u32) -> Result<()> {
    let map = load_map(map)?;
    let mut p = parse_point(point)?;
    for j in 0..=steps {
        println!("{j}\t{}\t{}", p.x, p.y);
        p = map.eval(p);
    }
    Ok(())
}

fn classify(a: &str, b: &str, max_period: u32, json: bool) -> Result<()> {
    let rows = classify_half_plane(parse_range(a)?, parse_range(b)?, max_period);
    if json {
        println!("{}", document::serialize(&Document::from_classification(&rows, max_period)));
        return Ok(());
    }
    for row in rows {
        let HalfPlaneParams { a, b } = row.params;
        let detail = match row.outcome {
            PeriodOutcome::Periodic(p) => p.to_string(),
            _ => row
                .witness
                .map(|w| format!("{},{}", w.x, w.y))
                .unwrap_or_else(|| "-".to_string()),
        };
        println!("{a}\t{b}\t{}\t{detail}", verdict_name(row.outcome));
    }
    Ok(())
}

fn enumerate(order: usize, max_entry: i64, json: bool) -> Result<()> {
    if order < 3 {
        bail!("order must be at least 3");
    }
    if max_entry < 0 {
        bail!("max-entry must be nonnegative");
    }
    for s in enumerate_admissible(order, max_entry) {
        if json {
            println!("{}", document::serialize(&Document::from_sequence(&s)));
        } else {
            println!("{s}");
        }
    }
    Ok(())
}

fn polygon(cmd: PolygonCmd) -> Result<()> {
    let (p, out) = match cmd {
        PolygonCmd::FromSequence { m, out } => {
            let seq: TraceSequence = m.parse().context("parsing the sequence")?;
            (FundamentalPolygon::from_sequence(&seq)?, out)
        }
        PolygonCmd::OfMap { map, max_period, out } => (load_polygon(&map, max_period)?, out),
        PolygonCmd::Insert { file, index, out } => {
            let p = load_document(&file)?.to_polygon()?;
            if index >= p.len() {
                bail!("index {index} out of range for a polygon with {} vertices", p.len());
            }
            (p.insert_vertex(index), out)
        }
        PolygonCmd::Remove { file, index, out } => {
            let p = load_document(&file)?.to_polygon()?;
            if index >= p.len() {
                bail!("index {index} out of range for a polygon with {} vertices", p.len());
            }
            (p.remove_vertex(index)?, out)
        }
    };
    emit(&out, &format!("{}\n", document::serialize(&Document::from_polygon(&p))))
}

fn tree(cmd: TreeCmd) -> Result<()> {
    match cmd {
        TreeCmd::Encode { file, out } => {
            let p = load_document(&file)?.to_polygon()?;
            let code = tree_from_polygon(&p)?;
            emit(&out, &format!("{}\n", document::serialize(&Document::from_code(&code))))
        }
        TreeCmd::Decode { file, out } => {
            let code = load_document(&file)?.to_code()?;
            let p = polygon_from_trees(&code)?;
            emit(&out, &format!("{}\n", document::serialize(&Document::from_polygon(&p))))
        }
    }
}

fn render(target: &str, output: &Path, opts: &RenderOptions, max_period: u32) -> Result<()> {
    // names and map documents render through render_map (which falls back to
    // a bare fan for unlabelled aperiodic maps); other kinds give polygons
    let svg = match named_map(target) {
        Ok(map) => plmap::render_map(&map, opts, max_period)?,
        Err(_) => {
            let path = Path::new(target);
            if !path.exists() {
                bail!("no such map name or file: {target}");
            }
            let doc = load_document(path)?;
            match &doc {
                Document::Map { .. } => plmap::render_map(&doc.to_map()?, opts, max_period)?,
                _ => {
                    let p = load_polygon(target, max_period)?;
                    plmap::render_polygon(&p, opts)
                }
            }
        }
    };
    fs::write(output, svg).with_context(|| format!("writing {}", output.display()))?;
    Ok(())
}

fn recur(kind: &str, seed: &str, steps: u32) -> Result<()> {
    let kind: RecurrenceKind = kind.parse()?;
    if steps < 2 {
        bail!("steps must be at least 2");
    }
    let seed = parse_point(seed)?;
    let orbit = recurrence_orbit(kind, seed.x, seed.y, steps);
    let terms: Vec<String> = orbit.terms.iter().map(|t| t.to_string()).collect();
    println!("{}", terms.join(","));
    match orbit.period {
        Some(p) => println!("period={p}"),
        None => println!("period=none"),
    }
    Ok(())
}
