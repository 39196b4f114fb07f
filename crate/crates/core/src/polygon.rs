//! Grid polygons: finite, edge-connected sets of free cells on one lattice.
//!
//! Everything downstream (exploration, oracles, reports) measures polygons
//! through this module: `C` is the number of cells (`area`), `E` the number
//! of free/blocked edge incidences (`perimeter`). Layers peel the polygon
//! from the boundary inward; the `l`-offset is what remains after peeling
//! `l` layers.

use crate::grid::{Cell, GridKind, COORD_LIMIT};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolygonError {
    #[error("polygon has no cells")]
    Empty,
    #[error("polygon is not edge-connected")]
    Disconnected,
    #[error("coordinate out of range in cell {0}")]
    CoordinateOutOfRange(Cell),
    #[error("cell {cell} is not part of the polygon")]
    NotInPolygon { cell: Cell },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Area and perimeter of a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolygonMetrics {
    /// Number of free cells, `C`.
    pub area: usize,
    /// Number of edges shared between a free and a non-free cell, `E`.
    pub perimeter: usize,
}

/// Layer number per cell; layer 1 is the boundary, larger is deeper.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerMap {
    map: BTreeMap<Cell, u32>,
}

impl LayerMap {
    pub fn get(&self, c: Cell) -> Option<u32> {
        self.map.get(&c).copied()
    }

    pub fn max_layer(&self) -> u32 {
        self.map.values().copied().max().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Cell, u32)> + '_ {
        self.map.iter().map(|(&c, &l)| (c, l))
    }
}

/// An edge-connected set of free cells on one lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridPolygon {
    kind: GridKind,
    free: BTreeSet<Cell>,
}

impl GridPolygon {
    pub fn new(
        kind: GridKind,
        cells: impl IntoIterator<Item = Cell>,
    ) -> Result<Self, PolygonError> {
        let free: BTreeSet<Cell> = cells.into_iter().collect();
        if free.is_empty() {
            return Err(PolygonError::Empty);
        }
        for &c in &free {
            if c.x.abs() > COORD_LIMIT || c.y.abs() > COORD_LIMIT {
                return Err(PolygonError::CoordinateOutOfRange(c));
            }
        }
        if !edge_connected(kind, &free) {
            return Err(PolygonError::Disconnected);
        }
        Ok(GridPolygon { kind, free })
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn area(&self) -> usize {
        self.free.len()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.free.contains(&c)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.free.iter().copied()
    }

    pub fn cell_set(&self) -> &BTreeSet<Cell> {
        &self.free
    }

    /// Free neighbors of `c` in canonical clockwise order.
    pub fn free_neighbors(&self, c: Cell) -> Vec<Cell> {
        self.kind
            .neighbors(c)
            .into_iter()
            .filter(|n| self.free.contains(n))
            .collect()
    }

    pub fn metrics(&self) -> PolygonMetrics {
        set_metrics(self.kind, &self.free)
    }

    /// Blocked components fully enclosed by free cells.
    ///
    /// Blocked cells are grouped using edge adjacency plus, on triangular
    /// grids, corner contact; two diagonally touching blocked triangles
    /// count as one obstacle. A group that cannot reach the unbounded
    /// outside is a hole.
    pub fn holes(&self) -> Vec<BTreeSet<Cell>> {
        let margin = 3;
        let min_x = self.free.iter().map(|c| c.x).min().unwrap() - margin;
        let max_x = self.free.iter().map(|c| c.x).max().unwrap() + margin;
        let min_y = self.free.iter().map(|c| c.y).min().unwrap() - margin;
        let max_y = self.free.iter().map(|c| c.y).max().unwrap() + margin;

        let blocked_adjacent = |c: Cell| -> Vec<Cell> {
            let mut out: Vec<Cell> = self.kind.neighbors(c).into_iter().collect();
            out.extend(self.kind.touching(c));
            out
        };

        // Flood the blocked region from the rim of the padded window; any
        // blocked cell left unreached is enclosed by free cells.
        let in_window =
            |c: Cell| c.x >= min_x && c.x <= max_x && c.y >= min_y && c.y <= max_y;
        let is_blocked = |c: Cell| !self.free.contains(&c);

        let mut outside: BTreeSet<Cell> = BTreeSet::new();
        let mut queue: VecDeque<Cell> = VecDeque::new();
        for x in min_x..=max_x {
            for y in [min_y, max_y] {
                let c = Cell::new(x, y);
                if outside.insert(c) {
                    queue.push_back(c);
                }
            }
        }
        for y in min_y..=max_y {
            for x in [min_x, max_x] {
                let c = Cell::new(x, y);
                if outside.insert(c) {
                    queue.push_back(c);
                }
            }
        }
        while let Some(c) = queue.pop_front() {
            for n in blocked_adjacent(c) {
                if in_window(n) && is_blocked(n) && outside.insert(n) {
                    queue.push_back(n);
                }
            }
        }

        // Remaining blocked cells near the polygon form the holes.
        let mut seen: BTreeSet<Cell> = BTreeSet::new();
        let mut holes = Vec::new();
        for x in min_x..=max_x {
            for y in min_y..=max_y {
                let c = Cell::new(x, y);
                if !is_blocked(c) || outside.contains(&c) || seen.contains(&c) {
                    continue;
                }
                let mut comp = BTreeSet::new();
                let mut queue = VecDeque::from([c]);
                seen.insert(c);
                while let Some(d) = queue.pop_front() {
                    comp.insert(d);
                    for n in blocked_adjacent(d) {
                        if in_window(n) && is_blocked(n) && seen.insert(n) {
                            queue.push_back(n);
                        }
                    }
                }
                holes.push(comp);
            }
        }
        holes
    }

    pub fn is_simple(&self) -> bool {
        self.holes().is_empty()
    }

    /// Layer numbers obtained by iterated boundary peeling.
    pub fn layers(&self) -> LayerMap {
        LayerMap { map: layer_map_of_set(self.kind, &self.free) }
    }

    /// Cells strictly deeper than layer `l`.
    pub fn offset(&self, l: u32) -> BTreeSet<Cell> {
        self.layers()
            .iter()
            .filter(|&(_, layer)| layer > l)
            .map(|(c, _)| c)
            .collect()
    }

    /// True when `c` lies in the first layer and removing it leaves every
    /// other cell's layer number unchanged (layers recomputed from scratch,
    /// per remaining component). These are exactly the cells of width-1 and
    /// width-2 corridors; interior cells never qualify, even when their
    /// removal happens to preserve all layers (e.g. a honeycomb's center).
    pub fn is_narrow_passage_cell(&self, c: Cell) -> Result<bool, PolygonError> {
        if !self.free.contains(&c) {
            return Err(PolygonError::NotInPolygon { cell: c });
        }
        let before = layer_map_of_set(self.kind, &self.free);
        if before.get(&c) != Some(&1) {
            return Ok(false);
        }
        let mut rest = self.free.clone();
        rest.remove(&c);
        let after = layer_map_of_set(self.kind, &rest);
        Ok(rest.iter().all(|&d| after.get(&d) == before.get(&d)))
    }

    /// The lexicographically smallest layer-1 cell; the default start.
    pub fn default_start(&self) -> Cell {
        let layers = self.layers();
        self.free
            .iter()
            .copied()
            .find(|&c| layers.get(c) == Some(1))
            .expect("a finite polygon always has a boundary cell")
    }

    /// Canonical text form: header line, then one cell per line in
    /// lexicographic order.
    pub fn to_text(&self) -> String {
        let mut out = format!("grid {}\n", self.kind);
        for c in &self.free {
            out.push_str(&format!("{} {}\n", c.x, c.y));
        }
        out
    }

    /// Parses the text form. `#` starts a comment; blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self, PolygonError> {
        let mut kind: Option<GridKind> = None;
        let mut cells: BTreeSet<Cell> = BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            if kind.is_none() {
                let mut parts = line.split_whitespace();
                if parts.next() != Some("grid") {
                    return Err(PolygonError::Parse {
                        line: line_no,
                        message: "expected header `grid hex` or `grid tri`".into(),
                    });
                }
                kind = Some(match parts.next() {
                    Some("hex") => GridKind::Hex,
                    Some("tri") => GridKind::Tri,
                    other => {
                        return Err(PolygonError::Parse {
                            line: line_no,
                            message: format!(
                                "unknown grid kind {:?}",
                                other.unwrap_or("")
                            ),
                        })
                    }
                });
                if parts.next().is_some() {
                    return Err(PolygonError::Parse {
                        line: line_no,
                        message: "trailing tokens after grid kind".into(),
                    });
                }
                continue;
            }
            let mut parts = line.split_whitespace();
            let (sx, sy) = match (parts.next(), parts.next(), parts.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(PolygonError::Parse {
                        line: line_no,
                        message: "expected two integers".into(),
                    })
                }
            };
            let parse_coord = |s: &str| -> Result<i32, PolygonError> {
                let v: i64 = s.parse().map_err(|_| PolygonError::Parse {
                    line: line_no,
                    message: format!("invalid integer {s:?}"),
                })?;
                if v.abs() > COORD_LIMIT as i64 {
                    return Err(PolygonError::Parse {
                        line: line_no,
                        message: format!("coordinate {v} out of range"),
                    });
                }
                Ok(v as i32)
            };
            let cell = Cell::new(parse_coord(sx)?, parse_coord(sy)?);
            if !cells.insert(cell) {
                return Err(PolygonError::Parse {
                    line: line_no,
                    message: format!("duplicate cell {cell}"),
                });
            }
        }
        let kind = kind.ok_or(PolygonError::Empty)?;
        GridPolygon::new(kind, cells)
    }
}

impl fmt::Display for GridPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} polygon with {} cells", self.kind, self.free.len())
    }
}

/// True when `set` is connected through shared edges. Empty sets count as
/// connected.
/// Area and perimeter of a raw cell set, which may be disconnected.
pub fn set_metrics(kind: GridKind, cells: &BTreeSet<Cell>) -> PolygonMetrics {
    let perimeter = cells
        .iter()
        .map(|&c| {
            kind.neighbors(c)
                .into_iter()
                .filter(|n| !cells.contains(n))
                .count()
        })
        .sum();
    PolygonMetrics { area: cells.len(), perimeter }
}

pub fn edge_connected(kind: GridKind, set: &BTreeSet<Cell>) -> bool {
    let Some(&start) = set.iter().next() else { return true };
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for n in kind.neighbors(c) {
            if set.contains(&n) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen.len() == set.len()
}

/// Edge-connected components of `set`, each sorted, listed by smallest cell.
pub fn edge_components(kind: GridKind, set: &BTreeSet<Cell>) -> Vec<BTreeSet<Cell>> {
    let mut seen: BTreeSet<Cell> = BTreeSet::new();
    let mut out = Vec::new();
    for &start in set {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(c) = queue.pop_front() {
            for n in kind.neighbors(c) {
                if set.contains(&n) && seen.insert(n) {
                    comp.insert(n);
                    queue.push_back(n);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Boundary peeling on an arbitrary cell set. A cell belongs to the
/// boundary when any cell it shares an edge or a corner with is missing;
/// on hex grids corner contact implies edge contact, on tri grids it does
/// not. Peeling never needs connectivity, so a disconnected set gets
/// per-component layer numbers.
pub fn layer_map_of_set(kind: GridKind, set: &BTreeSet<Cell>) -> BTreeMap<Cell, u32> {
    let mut out = BTreeMap::new();
    let mut rest = set.clone();
    let mut layer = 1;
    while !rest.is_empty() {
        let boundary: Vec<Cell> = rest
            .iter()
            .copied()
            .filter(|&c| {
                kind.neighbors(c)
                    .iter()
                    .chain(kind.touching(c).iter())
                    .any(|n| !rest.contains(n))
            })
            .collect();
        debug_assert!(!boundary.is_empty());
        for c in boundary {
            rest.remove(&c);
            out.insert(c, layer);
        }
        layer += 1;
    }
    out
}
