//! Boundary matrices, ranks, Betti numbers, and cycle bases over GF(2).
//!
//! Over the two-element field the boundary formula's signs are all 1, so the
//! column of an `i`-simplex is simply the set of its `i+1` faces. The Betti
//! numbers come from the rank formula
//! `beta_i = dim C_i - rank d_i - rank d_{i+1}`.

use std::collections::HashMap;

use crate::gf2::{rank_gf2, reduce_with_combination, GF2Matrix, Gf2Column, SparseColumn};
use crate::scalar::Scalar;
use crate::simplicial::{FilteredComplex, Simplex, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("degree {degree} exceeds the complex dimension {max_dim}")]
    DegreeOutOfRange { degree: usize, max_dim: usize },
}

/// The ordered basis of the chain space C_i: the `i`-simplices in complex
/// order. Cycle vectors index into this.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainBasis<T = f64> {
    degree: usize,
    simplices: Vec<Simplex<T>>,
}

impl<T: Scalar> ChainBasis<T> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn simplices(&self) -> &[Simplex<T>] {
        &self.simplices
    }

    /// dim C_i.
    pub fn dim(&self) -> usize {
        self.simplices.len()
    }
}

/// The `i`-simplices of `k` in canonical order.
pub fn chain_basis<T: Scalar>(k: &FilteredComplex<T>, degree: usize) -> ChainBasis<T> {
    ChainBasis { degree, simplices: k.simplices_of_dim(degree).cloned().collect() }
}

/// Betti numbers beta_0..beta_max_dim of one complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiVector {
    betti: Vec<usize>,
}

impl BettiVector {
    pub fn betti(&self) -> &[usize] {
        &self.betti
    }

    /// beta_i, defaulting to 0 beyond the stored range.
    pub fn get(&self, i: usize) -> usize {
        self.betti.get(i).copied().unwrap_or(0)
    }
}

impl std::fmt::Display for BettiVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.betti.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The boundary map d_i as a GF(2) matrix: rows are the `(i-1)`-simplices,
/// columns the `i`-simplices, both in canonical order. `i = 0` gives the
/// zero map out of C_0, a `0 x |V|` matrix.
pub fn boundary_matrix<T: Scalar>(
    k: &FilteredComplex<T>,
    i: usize,
) -> Result<GF2Matrix, HomologyError> {
    if i > k.max_dim() {
        return Err(HomologyError::DegreeOutOfRange { degree: i, max_dim: k.max_dim() });
    }
    if i == 0 {
        return Ok(GF2Matrix::zero(0, k.vertex_count()));
    }
    let row_index: HashMap<Vec<VertexId>, usize> = k
        .simplices_of_dim(i - 1)
        .enumerate()
        .map(|(r, s)| (s.vertices().to_vec(), r))
        .collect();
    let entries: Vec<Vec<usize>> = k
        .simplices_of_dim(i)
        .map(|s| s.faces().iter().map(|f| row_index[f.vertices()]).collect())
        .collect();
    let cols = entries.len();
    Ok(GF2Matrix::from_columns(row_index.len(), cols, entries)
        .expect("faces of a closed complex index its lower basis"))
}

/// Betti numbers by the rank formula, degrees 0..=`max_dim`. The map out of
/// degree `max_dim + 1` is read from `k` when such simplices exist and is the
/// zero map otherwise.
pub fn betti_numbers<T: Scalar>(k: &FilteredComplex<T>, max_dim: usize) -> BettiVector {
    let dim_c: Vec<usize> =
        (0..=max_dim + 1).map(|i| k.simplices_of_dim(i).count()).collect();
    let rank_d: Vec<usize> = (0..=max_dim + 1)
        .map(|i| {
            if i == 0 || dim_c[i] == 0 {
                0
            } else {
                rank_gf2(&boundary_matrix(k, i).expect("dimension is populated"))
            }
        })
        .collect();
    let betti = (0..=max_dim)
        .map(|i| dim_c[i] - rank_d[i] - rank_d[i + 1])
        .collect();
    BettiVector { betti }
}

/// A basis of the cycle space Z_i = null(d_i). Each cycle is the ascending
/// list of positions in [`chain_basis`]`(k, i)` carrying coefficient 1.
pub fn cycle_space_basis<T: Scalar>(
    k: &FilteredComplex<T>,
    i: usize,
) -> Result<Vec<Vec<usize>>, HomologyError> {
    let m = boundary_matrix(k, i)?;
    let columns: Vec<SparseColumn> = (0..m.cols())
        .map(|j| SparseColumn::from_indices(m.rows(), m.column(j)))
        .collect();
    let dec = reduce_with_combination(columns);
    Ok(dec
        .reduced
        .iter()
        .zip(&dec.combination)
        .filter(|(r, _)| r.is_zero())
        .map(|(_, v)| v.indices())
        .collect())
}
