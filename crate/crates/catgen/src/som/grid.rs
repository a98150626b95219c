use serde::{Deserialize, Serialize};

/// Position of a unit on the map's grid, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridCoord {
    pub row: usize,
    pub col: usize,
}

impl GridCoord {
    pub fn new(row: usize, col: usize) -> Self {
        GridCoord { row, col }
    }

    /// Axial coordinates for an odd-row-shifted hexagonal layout
    /// (odd rows offset half a cell to the right).
    fn axial(self) -> (i64, i64) {
        let row = self.row as i64;
        let col = self.col as i64;
        (col - (row - (row & 1)) / 2, row)
    }
}

/// Hexagonal grid distance between two cells.
///
/// Cells live on an odd-row-shifted hexagonal layout; the distance is the
/// minimum number of steps between adjacent hexes, computed in axial
/// coordinates as max(|dq|, |dr|, |dq + dr|).
pub fn grid_distance(a: GridCoord, b: GridCoord) -> f64 {
    let (qa, ra) = a.axial();
    let (qb, rb) = b.axial();
    let dq = qa - qb;
    let dr = ra - rb;
    dq.abs().max(dr.abs()).max((dq + dr).abs()) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::VecDeque;

    fn cells(rows: usize, cols: usize) -> Vec<GridCoord> {
        (0..rows)
            .flat_map(|r| (0..cols).map(move |c| GridCoord::new(r, c)))
            .collect()
    }

    /// Neighbors from the standard odd-r offset tables, independent of the
    /// axial conversion used by `grid_distance`.
    fn oddr_neighbors(c: GridCoord, rows: usize, cols: usize) -> Vec<GridCoord> {
        let even: [(i64, i64); 6] = [(0, 1), (0, -1), (-1, 0), (-1, -1), (1, 0), (1, -1)];
        let odd: [(i64, i64); 6] = [(0, 1), (0, -1), (-1, 0), (-1, 1), (1, 0), (1, 1)];
        let offs = if c.row.is_multiple_of(2) { even } else { odd };
        offs.iter()
            .filter_map(|&(dr, dc)| {
                let r = c.row as i64 + dr;
                let k = c.col as i64 + dc;
                (r >= 0 && (r as usize) < rows && k >= 0 && (k as usize) < cols)
                    .then(|| GridCoord::new(r as usize, k as usize))
            })
            .collect()
    }

    fn bfs_distance(a: GridCoord, b: GridCoord, rows: usize, cols: usize) -> u32 {
        let mut queue = VecDeque::from([(a, 0)]);
        let mut seen = std::collections::HashSet::from([a]);
        while let Some((cur, d)) = queue.pop_front() {
            if cur == b {
                return d;
            }
            for nb in oddr_neighbors(cur, rows, cols) {
                if seen.insert(nb) {
                    queue.push_back((nb, d + 1));
                }
            }
        }
        unreachable!("grid is connected");
    }

    #[test]
    fn identity_is_zero() {
        for c in cells(3, 3) {
            assert_eq!(grid_distance(c, c), 0.0);
        }
    }

    #[test]
    fn adjacent_cells_are_at_distance_one() {
        for c in cells(3, 3) {
            for nb in oddr_neighbors(c, 3, 3) {
                assert_eq!(grid_distance(c, nb), 1.0, "{c:?} -> {nb:?}");
            }
        }
    }

    #[test]
    fn matches_bfs_shortest_paths_on_3x3() {
        for a in cells(3, 3) {
            for b in cells(3, 3) {
                let expected = bfs_distance(a, b, 3, 3) as f64;
                assert_eq!(grid_distance(a, b), expected, "{a:?} -> {b:?}");
            }
        }
    }

    #[test]
    fn corner_to_corner() {
        let d = grid_distance(GridCoord::new(0, 0), GridCoord::new(2, 2));
        assert_eq!(d, bfs_distance(GridCoord::new(0, 0), GridCoord::new(2, 2), 3, 3) as f64);
        assert_eq!(d, 3.0);
    }

    #[test]
    fn metric_axioms_hold_on_3x3() {
        let cs = cells(3, 3);
        for &a in &cs {
            for &b in &cs {
                let dab = grid_distance(a, b);
                assert_eq!(dab, grid_distance(b, a));
                assert_eq!(dab == 0.0, a == b);
                for &c in &cs {
                    assert!(dab <= grid_distance(a, c) + grid_distance(c, b));
                }
            }
        }
    }
}
