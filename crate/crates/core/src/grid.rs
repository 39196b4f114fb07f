//! Cell-level geometry for the two supported lattices.
//!
//! Hexagonal cells use axial coordinates `(x, y)` (pointy-top; `x` grows
//! east, `y` grows south-east). Triangular cells use `(x, y)` where `y` is
//! the row and `x` the position within the row; the triangle points up
//! exactly when `x + y` is even. Orientation is never stored, it is always
//! derived from the coordinates.

use arrayvec::ArrayVec;
use std::fmt;
use thiserror::Error;

/// Coordinates are capped so neighbor arithmetic can never overflow `i32`.
pub const COORD_LIMIT: i32 = 1 << 30;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GridError {
    #[error("cell {arrived_from} is not edge-adjacent to {cell}")]
    NotAdjacent { cell: Cell, arrived_from: Cell },
}

/// Which lattice a polygon lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GridKind {
    Hex,
    Tri,
}

impl fmt::Display for GridKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridKind::Hex => write!(f, "hex"),
            GridKind::Tri => write!(f, "tri"),
        }
    }
}

/// A lattice cell. For hex grids this is the axial pair, for tri grids the
/// row pair described in the module docs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

impl Cell {
    pub const fn new(x: i32, y: i32) -> Self {
        Cell { x, y }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// One unit step between two edge-adjacent cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Move {
    pub from: Cell,
    pub to: Cell,
}

impl Move {
    pub fn new(from: Cell, to: Cell) -> Self {
        Move { from, to }
    }

    pub fn reverse(self) -> Self {
        Move { from: self.to, to: self.from }
    }
}

/// Clockwise axial direction vectors: NE, E, SE, SW, W, NW.
pub const HEX_DIRS: [(i32, i32); 6] =
    [(1, -1), (1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1)];

/// True when the triangular cell points up. Pure function of the coordinates.
pub fn tri_points_up(c: Cell) -> bool {
    (c.x + c.y).rem_euclid(2) == 0
}

impl GridKind {
    /// Edge-adjacent cells in canonical clockwise order.
    ///
    /// Hex: NE, E, SE, SW, W, NW. Tri up-cell: E, S, W. Tri down-cell:
    /// N, E, W. Every later rotation-based scan is a rotation of this list.
    pub fn neighbors(self, c: Cell) -> ArrayVec<Cell, 6> {
        let mut out = ArrayVec::new();
        match self {
            GridKind::Hex => {
                for (dx, dy) in HEX_DIRS {
                    out.push(Cell::new(c.x + dx, c.y + dy));
                }
            }
            GridKind::Tri => {
                if tri_points_up(c) {
                    out.push(Cell::new(c.x + 1, c.y)); // E
                    out.push(Cell::new(c.x, c.y - 1)); // S
                    out.push(Cell::new(c.x - 1, c.y)); // W
                } else {
                    out.push(Cell::new(c.x, c.y + 1)); // N
                    out.push(Cell::new(c.x + 1, c.y)); // E
                    out.push(Cell::new(c.x - 1, c.y)); // W
                }
            }
        }
        out
    }

    /// Cells sharing exactly one corner with `c` (and no edge).
    ///
    /// Hexagons have none: any two hexagons meeting at a corner also share
    /// an edge. A triangle has three such cells per corner, nine in total.
    pub fn touching(self, c: Cell) -> ArrayVec<Cell, 9> {
        let mut out = ArrayVec::new();
        match self {
            GridKind::Hex => {}
            GridKind::Tri => {
                let (x, y) = (c.x, c.y);
                // Same row: the cells two steps sideways.
                out.push(Cell::new(x - 2, y));
                out.push(Cell::new(x + 2, y));
                if tri_points_up(c) {
                    // Three above the apex, four below the base corners.
                    out.push(Cell::new(x - 1, y + 1));
                    out.push(Cell::new(x, y + 1));
                    out.push(Cell::new(x + 1, y + 1));
                    out.push(Cell::new(x - 2, y - 1));
                    out.push(Cell::new(x - 1, y - 1));
                    out.push(Cell::new(x + 1, y - 1));
                    out.push(Cell::new(x + 2, y - 1));
                } else {
                    out.push(Cell::new(x - 1, y - 1));
                    out.push(Cell::new(x, y - 1));
                    out.push(Cell::new(x + 1, y - 1));
                    out.push(Cell::new(x - 2, y + 1));
                    out.push(Cell::new(x - 1, y + 1));
                    out.push(Cell::new(x + 1, y + 1));
                    out.push(Cell::new(x + 2, y + 1));
                }
            }
        }
        out
    }

    /// The canonical clockwise neighbor cycle rotated to start at
    /// `arrived_from`, which must be edge-adjacent to `c`.
    pub fn clockwise_scan(
        self,
        c: Cell,
        arrived_from: Cell,
    ) -> Result<ArrayVec<Cell, 6>, GridError> {
        let cycle = self.neighbors(c);
        let start = cycle
            .iter()
            .position(|&n| n == arrived_from)
            .ok_or(GridError::NotAdjacent { cell: c, arrived_from })?;
        let mut out = ArrayVec::new();
        for i in 0..cycle.len() {
            out.push(cycle[(start + i) % cycle.len()]);
        }
        Ok(out)
    }

    /// True when `a` and `b` share an edge.
    pub fn adjacent(self, a: Cell, b: Cell) -> bool {
        self.neighbors(a).contains(&b)
    }
}
