//! ASCII sketches and SVG drawings of polygons and exploration traces.
//!
//! Output is deterministic: cells are emitted in sorted order and all
//! coordinates are formatted with fixed precision, so repeated renders of
//! the same input are byte-identical.

use crate::explore::TraceSummary;
use crate::grid::{Cell, GridKind};
use crate::polygon::GridPolygon;
use std::collections::BTreeSet;
use std::fmt::Write as _;

const SQRT3: f64 = 1.732_050_807_568_877_2;
/// Fill colors by layer, light to dark, cycling when the polygon is deeper.
const LAYER_FILLS: [&str; 6] =
    ["#fdf6e3", "#e7dcbe", "#d2c49a", "#bcab79", "#a5935c", "#8d7c43"];

/// One character per cell: hex cells are `#`, tri cells `^` or `v`. The
/// start cell becomes `S` and split cells `!`; blocked cells inside the
/// bounding box show as `.`.
pub fn render_ascii(p: &GridPolygon, trace: Option<&TraceSummary>) -> String {
    let min_x = p.cells().map(|c| c.x).min().unwrap();
    let max_x = p.cells().map(|c| c.x).max().unwrap();
    let min_y = p.cells().map(|c| c.y).min().unwrap();
    let max_y = p.cells().map(|c| c.y).max().unwrap();
    let start = trace.map(|t| t.walk[0]);
    let splits: BTreeSet<Cell> = trace
        .map(|t| t.split_cells.iter().copied().collect())
        .unwrap_or_default();

    let col = |c: Cell| match p.kind() {
        // Stagger hex rows so neighbors line up diagonally.
        GridKind::Hex => (2 * (c.x - min_x) + (c.y - min_y)) as usize,
        GridKind::Tri => (c.x - min_x) as usize,
    };
    let mut lines = Vec::new();
    // Larger y is farther north for tri rows; hex rows grow southeast.
    let rows: Vec<i32> = match p.kind() {
        GridKind::Hex => (min_y..=max_y).collect(),
        GridKind::Tri => (min_y..=max_y).rev().collect(),
    };
    for y in rows {
        let mut line: Vec<u8> = Vec::new();
        for x in min_x..=max_x {
            let c = Cell::new(x, y);
            let col = col(c);
            if line.len() < col + 1 {
                line.resize(col + 1, b' ');
            }
            line[col] = if !p.contains(c) {
                b'.'
            } else if start == Some(c) {
                b'S'
            } else if splits.contains(&c) {
                b'!'
            } else {
                match p.kind() {
                    GridKind::Hex => b'#',
                    GridKind::Tri if crate::grid::tri_points_up(c) => b'^',
                    GridKind::Tri => b'v',
                }
            };
        }
        while line.last() == Some(&b' ') {
            line.pop();
        }
        lines.push(String::from_utf8(line).unwrap());
    }
    lines.join("\n") + "\n"
}

fn hex_center(c: Cell, scale: f64) -> (f64, f64) {
    (SQRT3 * (c.x as f64 + c.y as f64 / 2.0) * scale, 1.5 * c.y as f64 * scale)
}

fn cell_corners(kind: GridKind, c: Cell, scale: f64) -> Vec<(f64, f64)> {
    match kind {
        GridKind::Hex => {
            let (cx, cy) = hex_center(c, scale);
            let half = SQRT3 / 2.0 * scale;
            vec![
                (cx, cy - scale),
                (cx + half, cy - scale / 2.0),
                (cx + half, cy + scale / 2.0),
                (cx, cy + scale),
                (cx - half, cy + scale / 2.0),
                (cx - half, cy - scale / 2.0),
            ]
        }
        GridKind::Tri => {
            // Corner (u, v) of the rhombic corner lattice sits at
            // (u/2, v * sqrt(3)/2), with the y axis flipped for screen space.
            let corner = |u: i32, v: i32| {
                (u as f64 / 2.0 * scale, -(v as f64) * SQRT3 / 2.0 * scale)
            };
            let (x, y) = (c.x, c.y);
            if crate::grid::tri_points_up(c) {
                vec![corner(x, y), corner(x + 2, y), corner(x + 1, y + 1)]
            } else {
                vec![corner(x, y), corner(x + 2, y), corner(x + 1, y - 1)]
            }
        }
    }
}

fn cell_center(kind: GridKind, c: Cell, scale: f64) -> (f64, f64) {
    let corners = cell_corners(kind, c, scale);
    let n = corners.len() as f64;
    let (sx, sy) = corners
        .iter()
        .fold((0.0, 0.0), |(ax, ay), &(x, y)| (ax + x, ay + y));
    (sx / n, sy / n)
}

/// SVG drawing: cells filled by layer, the exploration walk as a polyline,
/// split cells outlined, and a dot on the start cell.
pub fn render_svg(p: &GridPolygon, trace: Option<&TraceSummary>) -> String {
    let scale = 20.0;
    let layers = p.layers();
    let mut min = (f64::MAX, f64::MAX);
    let mut max = (f64::MIN, f64::MIN);
    let all_corners: Vec<(Cell, Vec<(f64, f64)>)> = p
        .cells()
        .map(|c| (c, cell_corners(p.kind(), c, scale)))
        .collect();
    for (_, corners) in &all_corners {
        for &(x, y) in corners {
            min = (min.0.min(x), min.1.min(y));
            max = (max.0.max(x), max.1.max(y));
        }
    }
    let pad = scale;
    let view = (
        min.0 - pad,
        min.1 - pad,
        max.0 - min.0 + 2.0 * pad,
        max.1 - min.1 + 2.0 * pad,
    );

    let mut svg = String::new();
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.2} {:.2} {:.2} {:.2}\">\n",
        view.0, view.1, view.2, view.3
    );
    let points = |corners: &[(f64, f64)]| {
        corners
            .iter()
            .map(|&(x, y)| format!("{x:.2},{y:.2}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    for (c, corners) in &all_corners {
        let layer = layers.get(*c).unwrap_or(1);
        let fill = LAYER_FILLS[((layer - 1) as usize) % LAYER_FILLS.len()];
        let _ = write!(
            svg,
            "<polygon points=\"{}\" fill=\"{}\" stroke=\"#444444\" stroke-width=\"1\"/>\n",
            points(corners),
            fill
        );
    }
    if let Some(t) = trace {
        for c in &t.split_cells {
            if p.contains(*c) {
                let corners = cell_corners(p.kind(), *c, scale);
                let _ = write!(
                    svg,
                    "<polygon points=\"{}\" fill=\"none\" stroke=\"#d03030\" stroke-width=\"2.5\"/>\n",
                    points(&corners)
                );
            }
        }
        if t.walk.len() > 1 {
            let pts = t
                .walk
                .iter()
                .map(|&c| {
                    let (x, y) = cell_center(p.kind(), c, scale);
                    format!("{x:.2},{y:.2}")
                })
                .collect::<Vec<_>>()
                .join(" ");
            let _ = write!(
                svg,
                "<polyline points=\"{pts}\" fill=\"none\" stroke=\"#2060c0\" \
                 stroke-width=\"1.5\" stroke-linejoin=\"round\" opacity=\"0.8\"/>\n"
            );
        }
        let (sx, sy) = cell_center(p.kind(), t.walk[0], scale);
        let _ = write!(
            svg,
            "<circle cx=\"{sx:.2}\" cy=\"{sy:.2}\" r=\"{:.2}\" fill=\"#2060c0\"/>\n",
            scale * 0.3
        );
    }
    svg.push_str("</svg>\n");
    svg
}
