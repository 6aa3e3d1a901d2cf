//! Shared helpers for the integration tests: an independent rank oracle over
//! boolean grids and small random-complex generators. The oracle deliberately
//! shares no code with the library's column elimination.

#![allow(dead_code)]

use concept_homology::{build_complex, FilteredComplex, GF2Matrix, Simplex};
use rand::prelude::*;

/// Row-reduction rank of a dense boolean grid. Textbook Gaussian elimination
/// over GF(2), written against rows (the library eliminates columns) so the
/// two implementations share nothing but the answer.
pub fn boolean_rank(mut grid: Vec<Vec<bool>>) -> usize {
    let rows = grid.len();
    let cols = grid.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| grid[r][col]) else {
            continue;
        };
        grid.swap(rank, pivot);
        for r in 0..rows {
            if r != rank && grid[r][col] {
                let (a, b) = if r < rank {
                    let (lo, hi) = grid.split_at_mut(rank);
                    (&mut lo[r], &hi[0])
                } else {
                    let (lo, hi) = grid.split_at_mut(r);
                    (&mut hi[0], &lo[rank])
                };
                for (x, y) in a.iter_mut().zip(b) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// The library matrix expanded to a dense grid for the oracle.
#[allow(clippy::needless_range_loop)] // j indexes the inner vec, not the loop target
pub fn to_bool_grid(m: &GF2Matrix) -> Vec<Vec<bool>> {
    let mut grid = vec![vec![false; m.cols()]; m.rows()];
    for j in 0..m.cols() {
        for &i in m.column(j) {
            grid[i][j] = true;
        }
    }
    grid
}

/// A random face-closed filtered complex on up to `max_vertices` vertices:
/// random simplices of dimension <= `max_dim` with random appearances, closed
/// and repaired by the library builder, which the caller's tests re-validate.
pub fn random_complex(
    rng: &mut impl Rng,
    max_vertices: usize,
    max_dim: usize,
) -> FilteredComplex {
    let n = rng.random_range(1..=max_vertices);
    let mut simplices: Vec<Simplex> = (0..n)
        .map(|v| Simplex::new(vec![v], rng.random_range(0..4) as f64))
        .collect();
    let extra = rng.random_range(0..=2 * n);
    for _ in 0..extra {
        let size = rng.random_range(2..=(max_dim + 1).min(n).max(2));
        let mut ids: Vec<usize> = (0..n).collect();
        ids.shuffle(rng);
        ids.truncate(size);
        let appearance = rng.random_range(0..10) as f64;
        simplices.push(Simplex::new(ids, appearance));
    }
    build_complex(simplices).expect("dense ids and finite appearances build")
}

/// Boundary-of-boundary check payload: the standard octahedron as eight
/// triangles, poles 0 and 5, equator 1-2-3-4.
pub fn octahedron_triangles() -> Vec<Simplex> {
    [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 1, 4],
        [1, 2, 5],
        [2, 3, 5],
        [3, 4, 5],
        [1, 4, 5],
    ]
    .into_iter()
    .map(|v| Simplex::new(v.to_vec(), 1.0))
    .collect()
}
