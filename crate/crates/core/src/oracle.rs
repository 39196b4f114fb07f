//! Exact offline baseline: the cheapest closed walk that starts at a given
//! cell, visits every cell of the polygon, and returns.
//!
//! The tour length is computed by Held-Karp dynamic programming over the
//! polygon's shortest-path metric; any covering walk orders the first
//! visits of the cells, costs at least the metric tour through that order,
//! and stitching shortest paths through the optimal order achieves the
//! bound. The subset table grows as `2^(C-1)`, so the solver refuses
//! polygons above an explicit area ceiling instead of thrashing.

use crate::explore::shortest_path_over;
use crate::grid::{Cell, GridKind};
use crate::polygon::GridPolygon;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use thiserror::Error;

/// Default maximum area for the exact solver.
pub const DEFAULT_OPT_CEILING: usize = 18;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("start cell {0} is not in the polygon")]
    StartNotInPolygon(Cell),
    #[error(
        "polygon has {area} cells, above the exact-solver ceiling of {ceiling}; \
         raise the ceiling explicitly to force it"
    )]
    ExceedsCeiling { area: usize, ceiling: usize },
}

/// All-pairs shortest-path distances between free cells, by BFS from every
/// cell.
pub struct DistanceTable {
    index: BTreeMap<Cell, usize>,
    cells: Vec<Cell>,
    dist: Vec<Vec<u32>>,
}

impl DistanceTable {
    pub fn new(p: &GridPolygon) -> Self {
        let cells: Vec<Cell> = p.cells().collect();
        let index: BTreeMap<Cell, usize> =
            cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let dist = cells
            .iter()
            .map(|&source| {
                let mut row = vec![u32::MAX; cells.len()];
                row[index[&source]] = 0;
                let mut queue = VecDeque::from([source]);
                while let Some(c) = queue.pop_front() {
                    let dc = row[index[&c]];
                    for n in p.kind().neighbors(c) {
                        if let Some(&i) = index.get(&n) {
                            if row[i] == u32::MAX {
                                row[i] = dc + 1;
                                queue.push_back(n);
                            }
                        }
                    }
                }
                row
            })
            .collect();
        DistanceTable { index, cells, dist }
    }

    /// Distance in steps, `None` for cells outside the polygon.
    pub fn get(&self, a: Cell, b: Cell) -> Option<u32> {
        Some(self.dist[*self.index.get(&a)?][*self.index.get(&b)?])
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }
}

/// An optimal covering tour: a closed walk from `walk[0]` through every
/// cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalTour {
    pub walk: Vec<Cell>,
    pub steps: usize,
}

/// Exact minimum number of steps for a covering closed walk from `start`.
pub fn optimal_tour(
    p: &GridPolygon,
    start: Cell,
    ceiling: usize,
) -> Result<OptimalTour, OracleError> {
    if !p.contains(start) {
        return Err(OracleError::StartNotInPolygon(start));
    }
    let area = p.area();
    if area > ceiling {
        return Err(OracleError::ExceedsCeiling { area, ceiling });
    }
    if area == 1 {
        return Ok(OptimalTour { walk: vec![start], steps: 0 });
    }

    let table = DistanceTable::new(p);
    let others: Vec<Cell> = p.cells().filter(|&c| c != start).collect();
    let m = others.len();
    let d = |a: Cell, b: Cell| table.get(a, b).unwrap() as u64;

    const UNSET: u64 = u64::MAX / 4;
    let mut dp = vec![vec![UNSET; m]; 1 << m];
    let mut parent = vec![vec![usize::MAX; m]; 1 << m];
    for j in 0..m {
        dp[1 << j][j] = d(start, others[j]);
    }
    for mask in 1usize..(1 << m) {
        for j in 0..m {
            let cur = dp[mask][j];
            if cur >= UNSET || mask & (1 << j) == 0 {
                continue;
            }
            for k in 0..m {
                if mask & (1 << k) != 0 {
                    continue;
                }
                let next = cur + d(others[j], others[k]);
                let slot = &mut dp[mask | (1 << k)][k];
                if next < *slot {
                    *slot = next;
                    parent[mask | (1 << k)][k] = j;
                }
            }
        }
    }
    let full = (1 << m) - 1;
    let (best_end, best) = (0..m)
        .map(|j| (j, dp[full][j] + d(others[j], start)))
        .min_by_key(|&(_, cost)| cost)
        .unwrap();

    // Recover the first-visit order, then stitch shortest paths.
    let mut order = vec![best_end];
    let mut mask = full;
    let mut j = best_end;
    while parent[mask][j] != usize::MAX {
        let prev = parent[mask][j];
        mask &= !(1 << j);
        j = prev;
        order.push(j);
    }
    order.reverse();

    let all = p.cell_set();
    let mut walk = vec![start];
    let mut at = start;
    for &idx in &order {
        let seg = shortest_path_over(p.kind(), all, at, others[idx])
            .expect("polygon cells are connected");
        walk.extend_from_slice(&seg[1..]);
        at = others[idx];
    }
    let seg = shortest_path_over(p.kind(), all, at, start)
        .expect("polygon cells are connected");
    walk.extend_from_slice(&seg[1..]);

    debug_assert_eq!(walk.len() as u64 - 1, best);
    if p.kind() == GridKind::Tri {
        // Closed walks on the tri grid alternate orientations.
        debug_assert_eq!(best % 2, 0);
    }
    Ok(OptimalTour { walk, steps: best as usize })
}

/// For polygons whose adjacency graph is a tree, every covering closed walk
/// crosses each of the `C - 1` edges at least twice, and an Euler tour does
/// exactly that.
pub fn tree_tour_steps(p: &GridPolygon) -> Option<usize> {
    let edges: usize = p
        .cells()
        .map(|c| p.free_neighbors(c).len())
        .sum::<usize>()
        / 2;
    (edges == p.area() - 1).then_some(2 * (p.area() - 1))
}

/// Checks that `cycle` lists every cell exactly once and that consecutive
/// cells (wrapping around) are edge-adjacent. Such a witness pins the
/// optimal tour to exactly `C` steps.
pub fn verify_hamiltonian_cycle(p: &GridPolygon, cycle: &[Cell]) -> bool {
    if cycle.len() != p.area() || p.area() < 3 {
        return false;
    }
    let distinct: std::collections::BTreeSet<Cell> = cycle.iter().copied().collect();
    if distinct.len() != cycle.len() || !cycle.iter().all(|&c| p.contains(c)) {
        return false;
    }
    (0..cycle.len()).all(|i| p.kind().adjacent(cycle[i], cycle[(i + 1) % cycle.len()]))
}

/// Exact non-negative rational, kept reduced. Used for competitive ratios,
/// where floating point would blur equalities like `S = 4/3 * OPT - 7/3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = if num == 0 { den } else { gcd(num, den) };
        Ratio { num: num / g, den: den / g }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Independent cross-check of [`optimal_tour`]: iterative deepening over
/// raw walks with no metric-closure reduction. Deliberately plain and kept
/// apart from the dynamic program so the two cannot share a bug. Exponential
/// — intended for polygons of at most about 8 cells.
pub fn exhaustive_walk_steps(p: &GridPolygon, start: Cell) -> usize {
    let table = DistanceTable::new(p);
    let area = p.area();
    if area == 1 {
        return 0;
    }
    let mut limit = area;
    loop {
        let mut visited: BTreeSet<Cell> = BTreeSet::from([start]);
        if walk_search(p, &table, start, start, &mut visited, 0, limit) {
            return limit;
        }
        limit += 1;
        assert!(limit <= 2 * area - 2, "plain DFS bounds every polygon");
    }
}

fn walk_search(
    p: &GridPolygon,
    table: &DistanceTable,
    start: Cell,
    at: Cell,
    visited: &mut BTreeSet<Cell>,
    used: usize,
    limit: usize,
) -> bool {
    let missing = p.area() - visited.len();
    if missing == 0 && at == start {
        return used % 2 == limit % 2 && used <= limit;
    }
    let back = table.get(at, start).unwrap() as usize;
    if used + missing.max(back) > limit {
        return false;
    }
    for n in p.free_neighbors(at) {
        let fresh = visited.insert(n);
        if walk_search(p, table, start, n, visited, used + 1, limit) {
            return true;
        }
        if fresh {
            visited.remove(&n);
        }
    }
    false
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        let left = self.num as u128 * other.den as u128;
        let right = other.num as u128 * self.den as u128;
        left.cmp(&right)
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{corridor, enumerate_connected_up_to, honeycomb, random_simple};
    use std::collections::BTreeSet;

    fn assert_covering_tour(p: &GridPolygon, walk: &[Cell], start: Cell) {
        assert_eq!(walk.first(), Some(&start));
        assert_eq!(walk.last(), Some(&start));
        for w in walk.windows(2) {
            assert!(p.kind().adjacent(w[0], w[1]));
        }
        let seen: BTreeSet<Cell> = walk.iter().copied().collect();
        assert_eq!(seen.len(), p.area());
    }

    /// Independent check #1: brute force over all first-visit orders.
    fn brute_force_order_steps(p: &GridPolygon, start: Cell) -> usize {
        let table = DistanceTable::new(p);
        let others: Vec<Cell> = p.cells().filter(|&c| c != start).collect();
        let mut best = usize::MAX;
        let mut order: Vec<usize> = (0..others.len()).collect();
        permute(&mut order, 0, &mut |perm| {
            let mut cost = 0usize;
            let mut at = start;
            for &i in perm {
                cost += table.get(at, others[i]).unwrap() as usize;
                at = others[i];
            }
            cost += table.get(at, start).unwrap() as usize;
            best = best.min(cost);
        });
        if others.is_empty() {
            0
        } else {
            best
        }
    }

    fn permute(xs: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == xs.len() {
            f(xs);
            return;
        }
        for i in k..xs.len() {
            xs.swap(k, i);
            permute(xs, k + 1, f);
            xs.swap(k, i);
        }
    }

    #[test]
    fn distance_table_basics() {
        let p = honeycomb(1);
        let t = DistanceTable::new(&p);
        let cells: Vec<Cell> = p.cells().collect();
        for &a in &cells {
            assert_eq!(t.get(a, a), Some(0));
            for &b in &cells {
                assert_eq!(t.get(a, b), t.get(b, a));
                if p.kind().adjacent(a, b) {
                    assert_eq!(t.get(a, b), Some(1));
                }
                for &c in &cells {
                    assert!(
                        t.get(a, c).unwrap() <= t.get(a, b).unwrap() + t.get(b, c).unwrap()
                    );
                }
            }
        }
        assert_eq!(t.get(Cell::new(0, 0), Cell::new(9, 9)), None);
    }

    #[test]
    fn optimal_tour_on_known_shapes() {
        // Corridors force going out and back.
        for kind in [GridKind::Hex, GridKind::Tri] {
            for len in 2..=8 {
                let p = corridor(kind, 1, len).unwrap();
                let tour = optimal_tour(&p, p.default_start(), DEFAULT_OPT_CEILING).unwrap();
                assert_eq!(tour.steps, 2 * (len - 1));
                assert_covering_tour(&p, &tour.walk, p.default_start());
                assert_eq!(tree_tour_steps(&p), Some(tour.steps));
            }
        }
        // The filled hexagon: around the ring, into the center, back out.
        let p = honeycomb(1);
        let s = p.default_start();
        let tour = optimal_tour(&p, s, DEFAULT_OPT_CEILING).unwrap();
        assert_eq!(tour.steps, 7);
        assert_covering_tour(&p, &tour.walk, s);
        assert_eq!(tree_tour_steps(&p), None);

        // Width-2 corridors have closed tours through every cell.
        let p = corridor(GridKind::Hex, 2, 6).unwrap();
        let tour = optimal_tour(&p, p.default_start(), DEFAULT_OPT_CEILING).unwrap();
        assert_eq!(tour.steps, p.area());
        let p = corridor(GridKind::Tri, 2, 2).unwrap();
        let tour = optimal_tour(&p, p.default_start(), DEFAULT_OPT_CEILING).unwrap();
        assert_eq!(tour.steps, p.area());
    }

    #[test]
    fn optimal_tour_respects_the_ceiling() {
        let p = honeycomb(2);
        let err = optimal_tour(&p, p.default_start(), DEFAULT_OPT_CEILING).unwrap_err();
        assert_eq!(err, OracleError::ExceedsCeiling { area: 19, ceiling: 18 });
        let err = optimal_tour(&p, Cell::new(50, 50), DEFAULT_OPT_CEILING).unwrap_err();
        assert_eq!(err, OracleError::StartNotInPolygon(Cell::new(50, 50)));
    }

    #[test]
    fn held_karp_matches_order_brute_force() {
        for kind in [GridKind::Hex, GridKind::Tri] {
            for size in 1..=6 {
                for p in enumerate_connected_up_to(kind, size).pop().unwrap() {
                    let s = p.default_start();
                    let tour = optimal_tour(&p, s, DEFAULT_OPT_CEILING).unwrap();
                    assert_eq!(tour.steps, brute_force_order_steps(&p, s), "{}", p.to_text());
                    assert_covering_tour(&p, &tour.walk, s);
                }
            }
        }
    }

    #[test]
    fn held_karp_matches_exhaustive_walk_search() {
        for kind in [GridKind::Hex, GridKind::Tri] {
            for size in [4, 5, 6] {
                for (i, p) in enumerate_connected_up_to(kind, size)
                    .pop()
                    .unwrap()
                    .into_iter()
                    .enumerate()
                {
                    if i % 3 != 0 {
                        continue; // keep the slow searcher on a sample
                    }
                    let s = p.default_start();
                    let tour = optimal_tour(&p, s, DEFAULT_OPT_CEILING).unwrap();
                    assert_eq!(tour.steps, exhaustive_walk_steps(&p, s), "{}", p.to_text());
                }
            }
        }
    }

    #[test]
    fn optimal_steps_sit_between_area_and_dfs() {
        for kind in [GridKind::Hex, GridKind::Tri] {
            for seed in 0..6 {
                let p = random_simple(kind, 12, seed).unwrap();
                let s = p.default_start();
                let tour = optimal_tour(&p, s, DEFAULT_OPT_CEILING).unwrap();
                assert!(tour.steps >= p.area());
                assert!(tour.steps <= 2 * p.area() - 2);
                if kind == GridKind::Tri {
                    assert_eq!(tour.steps % 2, 0);
                }
            }
        }
    }

    #[test]
    fn hamiltonian_witness_checking() {
        let ring: Vec<Cell> = GridKind::Hex.neighbors(Cell::new(0, 0)).to_vec();
        let p = GridPolygon::new(GridKind::Hex, ring.clone()).unwrap();
        assert!(verify_hamiltonian_cycle(&p, &ring));
        let mut bad = ring.clone();
        bad.swap(0, 2);
        assert!(!verify_hamiltonian_cycle(&p, &bad));
        assert!(!verify_hamiltonian_cycle(&p, &ring[1..]));
        let line = corridor(GridKind::Hex, 1, 4).unwrap();
        let cells: Vec<Cell> = line.cells().collect();
        assert!(!verify_hamiltonian_cycle(&line, &cells));
    }

    #[test]
    fn ratios_reduce_and_compare_exactly() {
        assert_eq!(Ratio::new(8, 6), Ratio::new(4, 3));
        assert_eq!(Ratio::new(8, 6).to_string(), "4/3");
        assert!(Ratio::new(13, 10) < Ratio::new(4, 3));
        assert!(Ratio::new(27, 20) > Ratio::new(4, 3));
        assert_eq!(Ratio::new(0, 5), Ratio::new(0, 7));
        assert!((Ratio::new(1, 3).as_f64() - 1.0 / 3.0).abs() < 1e-12);
    }
}
