//! Command-line front end: generate polygons, run exploration strategies,
//! compute exact optimal tours, verify the bound suites, and render
//! polygons or traces as ASCII or SVG.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use gridexplore::explore::{
    dump_walk, explore_dfs, explore_smartdfs, parse_trace_dump, TraceSummary,
};
use gridexplore::generate::{
    comp_hex, comp_tri, corridor, honeycomb, random_connected, random_simple, tri_hexagon,
};
use gridexplore::harness::{run_suite, Suite};
use gridexplore::oracle::{optimal_tour, DEFAULT_OPT_CEILING};
use gridexplore::render::{render_ascii, render_svg};
use gridexplore::{Cell, GridKind, GridPolygon};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Environment variable naming the directory for outputs written without an
/// explicit path (currently the exploration trace).
const OUT_DIR_ENV: &str = "GRIDEXPLORE_OUT_DIR";

#[derive(Parser)]
#[command(name = "gridexplore", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Grid {
    Hex,
    Tri,
}

impl From<Grid> for GridKind {
    fn from(g: Grid) -> Self {
        match g {
            Grid::Hex => GridKind::Hex,
            Grid::Tri => GridKind::Tri,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Dfs,
    Smartdfs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Ascii,
    Svg,
    Csv,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Write a polygon from one of the named families.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Explore a polygon and print cell, edge, and step counts.
    Explore {
        /// Polygon file in the text format.
        polygon: PathBuf,
        #[arg(long, value_enum, default_value = "smartdfs")]
        strategy: Strategy,
        /// Start cell "x,y"; defaults to the smallest boundary cell.
        #[arg(long, value_parser = parse_cell)]
        start: Option<Cell>,
        /// Trace output path; defaults next to the polygon file (or into
        /// $GRIDEXPLORE_OUT_DIR when set).
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Compute the exact optimal closed tour through all cells.
    Optimal {
        polygon: PathBuf,
        #[arg(long, value_parser = parse_cell)]
        start: Option<Cell>,
        /// Largest cell count the exact solver accepts.
        #[arg(long, default_value_t = DEFAULT_OPT_CEILING)]
        exact_ceiling: usize,
        /// Write the tour in the trace format.
        #[arg(long)]
        tour_out: Option<PathBuf>,
    },
    /// Run a verification suite and report every checked inequality.
    Verify {
        /// bounds, offsets, shortest-paths, competitive, tightness, or all.
        suite: Suite,
        /// Grow the random pools by this factor.
        #[arg(long, default_value_t = 0)]
        widen: u32,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
        /// Also write the report to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a polygon, optionally with a recorded walk.
    Render {
        polygon: PathBuf,
        /// Trace file whose walk and split cells are overlaid.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Straight corridor of width 1, 2, or 3.
    Corridor {
        #[arg(long, value_enum)]
        grid: Grid,
        #[arg(long)]
        width: u32,
        #[arg(long)]
        len: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Filled hexagon: all cells within the given distance of a center.
    Honeycomb {
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regular hexagon of 6·side² triangles on the triangular grid.
    TriHexagon {
        #[arg(long)]
        side: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random polygon.
    Random {
        #[arg(long, value_enum)]
        grid: Grid,
        #[arg(long)]
        cells: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Allow holes (the result may not be simple).
        #[arg(long)]
        holes: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Capped width-3 hex corridor attaining the competitive factor.
    CompHex {
        #[arg(long)]
        len: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Triangular strip attaining the competitive factor asymptotically.
    CompTri {
        /// Pairs of 6-cell middle rows (total rows = 2·pairs + 2).
        #[arg(long)]
        pairs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_cell(s: &str) -> Result<Cell, String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"x,y\", got {s:?}"))?;
    let x = x.trim().parse().map_err(|e| format!("bad x: {e}"))?;
    let y = y.trim().parse().map_err(|e| format!("bad y: {e}"))?;
    Ok(Cell::new(x, y))
}

fn read_polygon(path: &Path) -> Result<GridPolygon> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    GridPolygon::parse(&text)
        .map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Default trace location: $GRIDEXPLORE_OUT_DIR if set, else the polygon's
/// directory, with the strategy name folded into the extension.
fn default_trace_path(polygon: &Path, strategy: &str) -> PathBuf {
    let stem = polygon.file_stem().unwrap_or_default().to_string_lossy();
    let name = format!("{stem}.{strategy}.trace");
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) => PathBuf::from(dir).join(name),
        None => polygon.with_file_name(name),
    }
}

fn cmd_generate(family: Family) -> Result<()> {
    let (p, out) = match family {
        Family::Corridor { grid, width, len, out } => {
            (corridor(grid.into(), width, len)?, out)
        }
        Family::Honeycomb { radius, out } => (honeycomb(radius), out),
        Family::TriHexagon { side, out } => (tri_hexagon(side)?, out),
        Family::Random { grid, cells, seed, holes, out } => {
            let p = if holes {
                random_connected(grid.into(), cells, seed)?
            } else {
                random_simple(grid.into(), cells, seed)?
            };
            (p, out)
        }
        Family::CompHex { len, out } => (comp_hex(len)?, out),
        Family::CompTri { pairs, out } => (comp_tri(pairs)?, out),
    };
    write_or_print(out.as_deref(), &p.to_text())
}

fn cmd_explore(
    polygon: &Path,
    strategy: Strategy,
    start: Option<Cell>,
    trace_out: Option<PathBuf>,
) -> Result<()> {
    let p = read_polygon(polygon)?;
    let start = start.unwrap_or_else(|| p.default_start());
    let (name, trace) = match strategy {
        Strategy::Dfs => ("dfs", explore_dfs(&p, start)?),
        Strategy::Smartdfs => ("smartdfs", explore_smartdfs(&p, start)?),
    };
    let m = p.metrics();
    let (c, e, s) = (m.area as f64, m.perimeter as f64, trace.steps());
    let bound = match (strategy, p.kind()) {
        (Strategy::Dfs, _) => 2.0 * c - 2.0,
        (Strategy::Smartdfs, GridKind::Hex) => c + e / 4.0 - 2.5,
        (Strategy::Smartdfs, GridKind::Tri) => c + e - 4.0,
    };
    println!("C={}, E={}, S={s}, bound={bound:.1}", m.area, m.perimeter);
    let path = trace_out.unwrap_or_else(|| default_trace_path(polygon, name));
    fs::write(&path, trace.dump())
        .with_context(|| format!("writing {}", path.display()))?;
    eprintln!("trace written to {}", path.display());
    Ok(())
}

fn cmd_optimal(
    polygon: &Path,
    start: Option<Cell>,
    ceiling: usize,
    tour_out: Option<PathBuf>,
) -> Result<()> {
    let p = read_polygon(polygon)?;
    let start = start.unwrap_or_else(|| p.default_start());
    let tour = optimal_tour(&p, start, ceiling)?;
    println!("C={}, S_opt={}", p.area(), tour.steps);
    if let Some(path) = tour_out {
        fs::write(&path, dump_walk(&tour.walk))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn cmd_verify(
    suite: Suite,
    widen: u32,
    format: Format,
    out: Option<PathBuf>,
) -> Result<bool> {
    let report = run_suite(suite, widen);
    let text = match format {
        Format::Md => report.to_markdown(),
        Format::Csv => report.to_csv(),
        _ => bail!("verify reports come as --format md or csv"),
    };
    print!("{text}");
    if let Some(path) = out {
        fs::write(&path, &text)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    eprintln!("{}", report.summary());
    Ok(report.passed())
}

/// A walk replayed over a polygon: every cell must exist and every move
/// must cross an edge of the right grid.
fn check_trace(p: &GridPolygon, t: &TraceSummary) -> Result<()> {
    for c in t.walk.iter().chain(&t.split_cells) {
        if !p.contains(*c) {
            bail!("trace does not match polygon: {c} is outside");
        }
    }
    for w in t.walk.windows(2) {
        if !p.kind().adjacent(w[0], w[1]) {
            bail!(
                "trace does not match polygon: {} -> {} is not a {} move",
                w[0],
                w[1],
                p.kind()
            );
        }
    }
    Ok(())
}

fn cmd_render(
    polygon: &Path,
    trace: Option<PathBuf>,
    format: Format,
    out: Option<PathBuf>,
) -> Result<()> {
    let p = read_polygon(polygon)?;
    let summary = match trace {
        Some(path) => {
            let text = fs::read_to_string(&path)
                .with_context(|| format!("reading {}", path.display()))?;
            let s = parse_trace_dump(&text)
                .map_err(|e| anyhow!("{}: {e}", path.display()))?;
            check_trace(&p, &s)?;
            Some(s)
        }
        None => None,
    };
    let text = match format {
        Format::Ascii => render_ascii(&p, summary.as_ref()),
        Format::Svg => render_svg(&p, summary.as_ref()),
        _ => bail!("render output is --format ascii or svg"),
    };
    write_or_print(out.as_deref(), &text)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Generate { family } => cmd_generate(family).map(|()| true),
        Command::Explore { polygon, strategy, start, trace_out } => {
            cmd_explore(&polygon, strategy, start, trace_out).map(|()| true)
        }
        Command::Optimal { polygon, start, exact_ceiling, tour_out } => {
            cmd_optimal(&polygon, start, exact_ceiling, tour_out).map(|()| true)
        }
        Command::Verify { suite, widen, format, out } => {
            cmd_verify(suite, widen, format, out)
        }
        Command::Render { polygon, trace, format, out } => {
            cmd_render(&polygon, trace, format, out).map(|()| true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
