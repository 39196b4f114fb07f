//! Verification suites: run the strategies and the oracle over seeded
//! polygon pools and check every step, perimeter, offset, distance, and
//! competitiveness claim as an exact integer comparison.

use crate::explore::{explore_dfs, explore_smartdfs};
use crate::generate::{
    comp_hex, comp_hex_cycle, comp_tri, corridor, honeycomb, punch_hole,
    random_connected, random_simple, tri_hexagon,
};
use crate::grid::{Cell, GridKind};
use crate::oracle::{
    optimal_tour, tree_tour_steps, verify_hamiltonian_cycle, DistanceTable,
    DEFAULT_OPT_CEILING,
};
use crate::polygon::{set_metrics, GridPolygon};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Bounds,
    Offsets,
    ShortestPaths,
    Competitive,
    Tightness,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] =
        ["bounds", "offsets", "shortest-paths", "competitive", "tightness", "all"];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::Bounds => "bounds",
            Suite::Offsets => "offsets",
            Suite::ShortestPaths => "shortest-paths",
            Suite::Competitive => "competitive",
            Suite::Tightness => "tightness",
            Suite::All => "all",
        };
        f.write_str(name)
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bounds" => Ok(Suite::Bounds),
            "offsets" => Ok(Suite::Offsets),
            "shortest-paths" => Ok(Suite::ShortestPaths),
            "competitive" => Ok(Suite::Competitive),
            "tightness" => Ok(Suite::Tightness),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite {:?}; expected one of {}",
                other,
                Suite::NAMES.join(", ")
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "==",
        })
    }
}

/// One verified claim. The verdict is never stored: it is recomputed from
/// `lhs relation rhs` wherever the row is consumed.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub suite: Suite,
    pub case: String,
    pub grid: GridKind,
    pub area: usize,
    pub perimeter: usize,
    pub steps: Option<usize>,
    pub optimal: Option<usize>,
    pub check: String,
    pub relation: Relation,
    pub lhs: i64,
    pub rhs: i64,
    pub polygon: String,
}

impl ReportRow {
    pub fn ok(&self) -> bool {
        match self.relation {
            Relation::Le => self.lhs <= self.rhs,
            Relation::Eq => self.lhs == self.rhs,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(ReportRow::ok)
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.ok()).count()
    }

    pub fn summary(&self) -> String {
        let mut lines = Vec::new();
        for name in Suite::NAMES.iter().take(5) {
            let total = self
                .rows
                .iter()
                .filter(|r| r.suite.to_string() == *name)
                .count();
            if total == 0 {
                continue;
            }
            let failed = self
                .rows
                .iter()
                .filter(|r| r.suite.to_string() == *name && !r.ok())
                .count();
            lines.push(format!("{name}: {total} checks, {failed} failures"));
        }
        lines.push(format!(
            "total: {} checks, {} failures",
            self.rows.len(),
            self.failures()
        ));
        lines.join("\n")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("# verification report\n\n");
        out.push_str("| suite | case | grid | C | E | S | OPT | check | result |\n");
        out.push_str("|---|---|---|---|---|---|---|---|---|\n");
        let opt = |v: Option<usize>| v.map_or(String::from("-"), |x| x.to_string());
        for r in &self.rows {
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} | `{}` | {} |\n",
                r.suite,
                r.case,
                r.grid,
                r.area,
                r.perimeter,
                opt(r.steps),
                opt(r.optimal),
                r.check,
                if r.ok() { "ok" } else { "FAIL" }
            ));
        }
        let failures: Vec<&ReportRow> = self.rows.iter().filter(|r| !r.ok()).collect();
        if !failures.is_empty() {
            out.push_str("\n## failing cases\n");
            for r in &failures {
                out.push_str(&format!(
                    "\n### {}\n\n`{}` gave {} {} {}\n\n```\n{}```\n",
                    r.case, r.check, r.lhs, r.relation, r.rhs, r.polygon
                ));
            }
        }
        out.push('\n');
        out.push_str(&self.summary());
        out.push('\n');
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "# verification report; ok is recomputed as `lhs relation rhs`\n\
             # polygon text is included only for failing rows\n",
        );
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "suite", "case", "grid", "area", "perimeter", "steps", "optimal",
            "check", "relation", "lhs", "rhs", "ok", "polygon",
        ])
        .unwrap();
        for r in &self.rows {
            let opt = |v: Option<usize>| v.map_or(String::new(), |x| x.to_string());
            w.write_record([
                r.suite.to_string(),
                r.case.clone(),
                r.grid.to_string(),
                r.area.to_string(),
                r.perimeter.to_string(),
                opt(r.steps),
                opt(r.optimal),
                r.check.clone(),
                r.relation.to_string(),
                r.lhs.to_string(),
                r.rhs.to_string(),
                r.ok().to_string(),
                if r.ok() { String::new() } else { r.polygon.clone() },
            ])
            .unwrap();
        }
        out.push_str(&String::from_utf8(w.into_inner().unwrap()).unwrap());
        out
    }
}

// --- seeded pools ---

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a(s: &str) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in s.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Deterministic seed list for a pool label. `--widen` scales the counts,
/// extending each list without changing its prefix.
pub fn pool_seeds(label: &str, count: usize) -> Vec<u64> {
    let mut state = fnv1a(label);
    (0..count).map(|_| splitmix64(&mut state)).collect()
}

fn random_count(widen: u32) -> usize {
    3 * (1 + widen as usize)
}

fn corridor_pool() -> Vec<(String, GridPolygon)> {
    let mut pool = Vec::new();
    for kind in [GridKind::Hex, GridKind::Tri] {
        for width in 1..=3u32 {
            for len in [2usize, 3, 5, 9, 14] {
                let p = corridor(kind, width, len).unwrap();
                pool.push((format!("{kind} corridor w{width} len {len}"), p));
            }
        }
    }
    pool
}

fn simple_pool(widen: u32) -> Vec<(String, GridPolygon)> {
    let mut pool = corridor_pool();
    for r in 1..=3u32 {
        pool.push((format!("honeycomb {r}"), honeycomb(r)));
    }
    for m in 2..=4u32 {
        pool.push((format!("tri hexagon {m}"), tri_hexagon(m).expect("side >= 1")));
    }
    for kind in [GridKind::Hex, GridKind::Tri] {
        for size in [10usize, 18, 30, 44] {
            let label = format!("{kind} random {size}");
            for seed in pool_seeds(&label, random_count(widen)) {
                let p = random_simple(kind, size, seed).expect("random growth succeeds");
                pool.push((format!("{label} seed {seed:#018x}"), p));
            }
        }
    }
    pool
}

/// The tri window fixture: a 8x4 block with two blocked cells that touch
/// only at a corner, enclosing a single hole.
fn tri_pinched_window() -> GridPolygon {
    let blocked = [Cell::new(2, 1), Cell::new(3, 2)];
    let cells = (-1..=6).flat_map(|x| {
        (0..=3).map(move |y| Cell::new(x, y))
    });
    GridPolygon::new(
        GridKind::Tri,
        cells.filter(|c| !blocked.contains(c)),
    )
    .unwrap()
}

fn holed_pool(widen: u32) -> Vec<(String, GridPolygon)> {
    let mut pool = vec![
        (
            "honeycomb 2 with punched center".to_string(),
            punch_hole(&honeycomb(2)).expect("the center is interior"),
        ),
        ("tri pinched window".to_string(), tri_pinched_window()),
    ];
    for kind in [GridKind::Hex, GridKind::Tri] {
        let label = format!("{kind} random holed");
        for seed in pool_seeds(&label, random_count(widen)) {
            let p = random_connected(kind, 36, seed).expect("random growth succeeds");
            match punch_hole(&p) {
                Some(h) => pool.push((format!("{label} seed {seed:#018x}"), h)),
                None if !p.is_simple() => {
                    pool.push((format!("{label} seed {seed:#018x} grown"), p))
                }
                None => {}
            }
        }
    }
    pool
}

fn has_narrow_cell(p: &GridPolygon) -> bool {
    p.cells()
        .any(|c| p.is_narrow_passage_cell(c).expect("own cells are in range"))
}

fn row(
    suite: Suite,
    case: &str,
    p: &GridPolygon,
    steps: Option<usize>,
    optimal: Option<usize>,
    check: &str,
    relation: Relation,
    lhs: i64,
    rhs: i64,
) -> ReportRow {
    let m = p.metrics();
    ReportRow {
        suite,
        case: case.to_string(),
        grid: p.kind(),
        area: m.area,
        perimeter: m.perimeter,
        steps,
        optimal,
        // Error texts may span lines; keep the check cell table-safe.
        check: check.replace('\n', "; "),
        relation,
        lhs,
        rhs,
        polygon: p.to_text(),
    }
}

/// The step bound of the smart strategy, as an integer comparison scaled
/// by four on hex grids: `4S <= 4C + E - 10` and `S <= C + E - 4`.
fn smart_bound_row(suite: Suite, case: &str, p: &GridPolygon, start: Cell) -> ReportRow {
    let m = p.metrics();
    let (c, e) = (m.area as i64, m.perimeter as i64);
    match explore_smartdfs(p, start) {
        Ok(trace) => {
            let s = trace.steps() as i64;
            match p.kind() {
                GridKind::Hex => row(
                    suite, case, p, Some(trace.steps()), None,
                    "4*S <= 4*C + E - 10", Relation::Le, 4 * s, 4 * c + e - 10,
                ),
                GridKind::Tri => row(
                    suite, case, p, Some(trace.steps()), None,
                    "S <= C + E - 4", Relation::Le, s, c + e - 4,
                ),
            }
        }
        Err(err) => row(
            suite, case, p, None, None,
            &format!("smartdfs failed: {err}"), Relation::Eq, 1, 0,
        ),
    }
}

fn bounds(widen: u32) -> Vec<ReportRow> {
    let suite = Suite::Bounds;
    let mut rows = Vec::new();
    let simple = simple_pool(widen);

    for (name, p) in simple.iter().chain(holed_pool(widen).iter()) {
        let trace = explore_dfs(p, p.default_start()).expect("start is free");
        let s = trace.steps() as i64;
        rows.push(row(
            suite, &format!("{name}, dfs"), p, Some(trace.steps()), None,
            "S == 2*C - 2", Relation::Eq, s, 2 * p.area() as i64 - 2,
        ));
    }

    for (name, p) in &simple {
        rows.push(smart_bound_row(suite, &format!("{name}, smartdfs"), p, p.default_start()));

        // Small instances: exercise every boundary start that leaves the
        // explorer a blocked edge-neighbor to put its back against.  The
        // strategy's first move presupposes such a wall; on triangular grids
        // a layer-1 cell may touch the outside only at corners and offer
        // none, and stepping off such a start can split the free cells into
        // two components that both touch the visited region.
        if p.area() <= 12 {
            let layers = p.layers();
            for s in p.cells().filter(|&c| layers.get(c) == Some(1)) {
                if s == p.default_start() {
                    continue;
                }
                if p.kind().neighbors(s).iter().all(|&n| p.contains(n)) {
                    continue;
                }
                rows.push(smart_bound_row(
                    suite,
                    &format!("{name}, smartdfs from {s}"),
                    p,
                    s,
                ));
            }
        }

        // Polygons without narrow passages or first-layer splits obey
        // tighter bounds.
        if !has_narrow_cell(p) {
            let trace = explore_smartdfs(p, p.default_start()).expect("simple pool");
            if trace.events().iter().any(|ev| ev.layer == 1) {
                continue;
            }
            let m = p.metrics();
            let (c, e) = (m.area as i64, m.perimeter as i64);
            let (check, lhs, rhs) = match p.kind() {
                GridKind::Hex => ("3*E <= 4*C + 26", 3 * e, 4 * c + 26),
                GridKind::Tri => ("3*E <= C + 14", 3 * e, c + 14),
            };
            rows.push(row(
                suite, &format!("{name}, no narrow passages"), p, None, None,
                check, Relation::Le, lhs, rhs,
            ));
            let s = trace.steps() as i64;
            let (check, lhs, rhs) = match p.kind() {
                GridKind::Hex => ("4*S <= 4*C + E - 18", 4 * s, 4 * c + e - 18),
                GridKind::Tri => ("S <= C + E - 6", s, c + e - 6),
            };
            rows.push(row(
                suite, &format!("{name}, smartdfs, no narrow passages"), p,
                Some(trace.steps()), None, check, Relation::Le, lhs, rhs,
            ));
        }
    }
    rows
}

fn offsets(widen: u32) -> Vec<ReportRow> {
    let suite = Suite::Offsets;
    let mut rows = Vec::new();
    for (name, p) in simple_pool(widen) {
        let e = p.metrics().perimeter as i64;
        let max_layer = p.layers().max_layer();
        for l in 1..max_layer {
            let off = p.offset(l);
            let off_e = set_metrics(p.kind(), &off).perimeter as i64;
            let (check, rhs) = match p.kind() {
                GridKind::Hex => ("E(offset) <= E - 12*l", e - 12 * l as i64),
                GridKind::Tri => ("E(offset) <= E - 6*l", e - 6 * l as i64),
            };
            rows.push(row(
                suite, &format!("{name}, offset {l}"), &p, None, None,
                check, Relation::Le, off_e, rhs,
            ));
        }
    }
    rows
}

fn shortest_paths(widen: u32) -> Vec<ReportRow> {
    let suite = Suite::ShortestPaths;
    let mut rows = Vec::new();
    for (name, p) in simple_pool(widen) {
        let table = DistanceTable::new(&p);
        let cells = table.cells().to_vec();
        let mut diameter = 0i64;
        for &a in &cells {
            for &b in &cells {
                diameter = diameter.max(table.get(a, b).unwrap() as i64);
            }
        }
        let e = p.metrics().perimeter as i64;
        let (check, lhs, rhs) = match p.kind() {
            GridKind::Hex => ("4*diam <= E - 6", 4 * diameter, e - 6),
            GridKind::Tri => ("diam <= E - 3", diameter, e - 3),
        };
        rows.push(row(
            suite, &format!("{name}, diameter"), &p, None, None,
            check, Relation::Le, lhs, rhs,
        ));
    }
    rows
}

fn hex_w2_cycle(len: i32) -> Vec<Cell> {
    (0..len)
        .map(|q| Cell::new(q, 0))
        .chain((0..len).rev().map(|q| Cell::new(q, 1)))
        .collect()
}

fn tri_w2_cycle(len: i32) -> Vec<Cell> {
    (1..=2 * len - 1)
        .map(|x| Cell::new(x, 0))
        .chain((1..=2 * len - 1).rev().map(|x| Cell::new(x, 1)))
        .collect()
}

/// `3S <= 4*OPT` as a report row; `optimal` must already be exact.
fn competitive_row(case: &str, p: &GridPolygon, start: Cell, optimal: usize) -> ReportRow {
    match explore_smartdfs(p, start) {
        Ok(trace) => {
            let s = trace.steps() as i64;
            row(
                Suite::Competitive, case, p, Some(trace.steps()), Some(optimal),
                "3*S <= 4*OPT", Relation::Le, 3 * s, 4 * optimal as i64,
            )
        }
        Err(err) => row(
            Suite::Competitive, case, p, None, Some(optimal),
            &format!("smartdfs failed: {err}"), Relation::Eq, 1, 0,
        ),
    }
}

fn competitive(widen: u32) -> Vec<ReportRow> {
    let mut rows = Vec::new();

    // Exact oracle range.
    let mut pool: Vec<(String, GridPolygon)> = Vec::new();
    for kind in [GridKind::Hex, GridKind::Tri] {
        for (width, len) in [(1u32, 4usize), (1, 9), (2, 4)] {
            let p = corridor(kind, width, len).unwrap();
            if p.area() <= DEFAULT_OPT_CEILING {
                pool.push((format!("{kind} corridor w{width} len {len}"), p));
            }
        }
        for size in [8usize, 12, 16] {
            let label = format!("{kind} random competitive {size}");
            for seed in pool_seeds(&label, random_count(widen).min(4)) {
                let p = random_simple(kind, size, seed).expect("random growth succeeds");
                pool.push((format!("{label} seed {seed:#018x}"), p));
            }
        }
    }
    pool.push(("honeycomb 1".to_string(), honeycomb(1)));
    for (name, p) in pool {
        let s = p.default_start();
        let opt = optimal_tour(&p, s, DEFAULT_OPT_CEILING).expect("within ceiling");
        rows.push(competitive_row(&name, &p, s, opt.steps));
    }

    // Beyond the ceiling: tree polygons and Hamiltonian witnesses.
    for kind in [GridKind::Hex, GridKind::Tri] {
        let p = corridor(kind, 1, 30).unwrap();
        let opt = tree_tour_steps(&p).expect("a width-1 corridor is a path");
        rows.push(competitive_row(
            &format!("{kind} corridor w1 len 30 (tree optimum)"),
            &p,
            p.default_start(),
            opt,
        ));
    }
    for (kind, len, cycle) in [
        (GridKind::Hex, 20, hex_w2_cycle(20)),
        (GridKind::Tri, 10, tri_w2_cycle(10)),
    ] {
        let p = corridor(kind, 2, len as usize).unwrap();
        let witness = verify_hamiltonian_cycle(&p, &cycle);
        rows.push(row(
            Suite::Competitive,
            &format!("{kind} corridor w2 len {len}, hamiltonian witness"),
            &p, None, Some(p.area()),
            "witness cycle is hamiltonian", Relation::Eq, witness as i64, 1,
        ));
        rows.push(competitive_row(
            &format!("{kind} corridor w2 len {len} (witnessed optimum)"),
            &p,
            p.default_start(),
            p.area(),
        ));
    }
    rows
}

fn tightness(_widen: u32) -> Vec<ReportRow> {
    let suite = Suite::Tightness;
    let mut rows = Vec::new();

    // Width-1 corridors meet the step and diameter bounds exactly.
    for len in [2usize, 5, 9, 14] {
        let p = corridor(GridKind::Hex, 1, len).unwrap();
        let m = p.metrics();
        let (c, e) = (m.area as i64, m.perimeter as i64);
        let trace = explore_smartdfs(&p, p.default_start()).unwrap();
        rows.push(row(
            suite, &format!("hex corridor w1 len {len}, step bound tight"), &p,
            Some(trace.steps()), None, "4*S == 4*C + E - 10", Relation::Eq,
            4 * trace.steps() as i64, 4 * c + e - 10,
        ));
        let diam = (len - 1) as i64;
        rows.push(row(
            suite, &format!("hex corridor w1 len {len}, diameter bound tight"), &p,
            None, None, "4*diam == E - 6", Relation::Eq, 4 * diam, e - 6,
        ));

        let p = corridor(GridKind::Tri, 1, len).unwrap();
        let m = p.metrics();
        let (c, e) = (m.area as i64, m.perimeter as i64);
        let trace = explore_smartdfs(&p, p.default_start()).unwrap();
        rows.push(row(
            suite, &format!("tri corridor w1 len {len}, step bound tight"), &p,
            Some(trace.steps()), None, "S == C + E - 4", Relation::Eq,
            trace.steps() as i64, c + e - 4,
        ));
        rows.push(row(
            suite, &format!("tri corridor w1 len {len}, diameter bound tight"), &p,
            None, None, "diam == E - 3", Relation::Eq, (len - 1) as i64, e - 3,
        ));
    }

    // The filled hexagon of radius 1 meets the no-narrow perimeter bound.
    let p = honeycomb(1);
    let m = p.metrics();
    rows.push(row(
        suite, "honeycomb 1, perimeter bound tight", &p, None, None,
        "3*E == 4*C + 26", Relation::Eq,
        3 * m.perimeter as i64, 4 * m.area as i64 + 26,
    ));

    // Honeycomb offsets lose exactly 12 perimeter per layer.
    for r in 1..=3u32 {
        let p = honeycomb(r);
        let e = p.metrics().perimeter as i64;
        for l in 1..=r {
            let off_e = set_metrics(p.kind(), &p.offset(l)).perimeter as i64;
            rows.push(row(
                suite, &format!("honeycomb {r}, offset {l} tight"), &p, None, None,
                "E(offset) == E - 12*l", Relation::Eq, off_e, e - 12 * l as i64,
            ));
        }
    }

    // The capped width-3 hex corridor attains the competitive factor: the
    // smart strategy spends 4 steps per 3-cell column while a closed tour
    // through every cell exists, so S == (4/3)·S_opt − 7/3.
    for m in [3usize, 5, 8, 12] {
        let p = comp_hex(m).unwrap();
        let trace = explore_smartdfs(&p, p.default_start()).unwrap();
        let s = trace.steps() as i64;
        let opt = if p.area() <= DEFAULT_OPT_CEILING {
            optimal_tour(&p, p.default_start(), DEFAULT_OPT_CEILING).unwrap().steps
        } else {
            assert!(verify_hamiltonian_cycle(&p, &comp_hex_cycle(m)));
            p.area()
        } as i64;
        rows.push(row(
            suite, &format!("comp hex {m}, factor attained"), &p,
            Some(s as usize), Some(opt as usize),
            "3*S == 4*S_opt - 7", Relation::Eq, 3 * s, 4 * opt - 7,
        ));
    }

    // The triangular strip family: 16 steps per pair of 6-cell middle rows
    // plus 10 for the end rows, over 10 + 12n cells.
    for n in [1usize, 2, 3] {
        let p = comp_tri(n).unwrap();
        let trace = explore_smartdfs(&p, p.default_start()).unwrap();
        rows.push(row(
            suite, &format!("comp tri {n}, strip steps"), &p,
            Some(trace.steps()), None,
            "S == 16*n + 10", Relation::Eq,
            trace.steps() as i64, 16 * n as i64 + 10,
        ));
    }
    rows
}

/// Runs one suite (or all of them) and collects the result rows.
pub fn run_suite(suite: Suite, widen: u32) -> Report {
    let rows = match suite {
        Suite::Bounds => bounds(widen),
        Suite::Offsets => offsets(widen),
        Suite::ShortestPaths => shortest_paths(widen),
        Suite::Competitive => competitive(widen),
        Suite::Tightness => tightness(widen),
        Suite::All => {
            let mut rows = bounds(widen);
            rows.extend(offsets(widen));
            rows.extend(shortest_paths(widen));
            rows.extend(competitive(widen));
            rows.extend(tightness(widen));
            rows
        }
    };
    Report { rows }
}
