//! GF(2) columns and matrices: the only linear algebra in the crate.
//!
//! Two column layouts share one elimination kernel: a sorted sparse index
//! list and a dense 64-bit-word bitset. [`rank_gf2`] picks the layout from
//! the row count; the persistence engine always reduces sparse columns while
//! maintaining the combination matrix V with R = D * V.
//!
//! The pivot of a column is its largest row index holding a 1 (the lowest
//! entry of the column as drawn on paper). Reduction sweeps columns left to
//! right and adds earlier columns until the pivot is unclaimed or the column
//! vanishes; that discipline is what makes the persistence pairing valid.

use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Gf2Error {
    #[error("column {col} holds row index {index}, outside 0..{rows}")]
    EntryOutOfRange { col: usize, index: usize, rows: usize },
    #[error("expected {expected} columns, got {got}")]
    ColumnCountMismatch { expected: usize, got: usize },
    #[error("cannot multiply {left_rows}x{left_cols} by {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
}

/// One column of a GF(2) matrix. Both layouts implement exactly the
/// operations the elimination kernel needs.
pub trait Gf2Column: Clone {
    fn zero(rows: usize) -> Self;
    /// Builds a column from a set of row indices; duplicates collapse.
    fn from_indices(rows: usize, indices: &[usize]) -> Self;
    /// Symmetric difference: GF(2) column addition.
    fn xor_assign(&mut self, other: &Self);
    /// Largest row index holding a 1; `None` for the zero column.
    fn low(&self) -> Option<usize>;
    fn is_zero(&self) -> bool;
    /// Row indices holding a 1, ascending.
    fn indices(&self) -> Vec<usize>;
}

/// Sorted list of the row indices holding a 1.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseColumn {
    indices: Vec<usize>,
}

impl Gf2Column for SparseColumn {
    fn zero(_rows: usize) -> Self {
        SparseColumn { indices: Vec::new() }
    }

    fn from_indices(_rows: usize, indices: &[usize]) -> Self {
        let mut indices = indices.to_vec();
        indices.sort_unstable();
        indices.dedup();
        SparseColumn { indices }
    }

    fn xor_assign(&mut self, other: &Self) {
        let mut merged = Vec::with_capacity(self.indices.len() + other.indices.len());
        let (mut a, mut b) = (0, 0);
        while a < self.indices.len() && b < other.indices.len() {
            match self.indices[a].cmp(&other.indices[b]) {
                std::cmp::Ordering::Less => {
                    merged.push(self.indices[a]);
                    a += 1;
                }
                std::cmp::Ordering::Greater => {
                    merged.push(other.indices[b]);
                    b += 1;
                }
                std::cmp::Ordering::Equal => {
                    a += 1;
                    b += 1;
                }
            }
        }
        merged.extend_from_slice(&self.indices[a..]);
        merged.extend_from_slice(&other.indices[b..]);
        self.indices = merged;
    }

    fn low(&self) -> Option<usize> {
        self.indices.last().copied()
    }

    fn is_zero(&self) -> bool {
        self.indices.is_empty()
    }

    fn indices(&self) -> Vec<usize> {
        self.indices.clone()
    }
}

/// Bitset over 64-bit words; word `i` holds rows `64*i..64*i+63`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseColumn {
    words: Vec<u64>,
}

impl Gf2Column for DenseColumn {
    fn zero(rows: usize) -> Self {
        DenseColumn { words: vec![0; rows.div_ceil(64)] }
    }

    fn from_indices(rows: usize, indices: &[usize]) -> Self {
        let mut col = Self::zero(rows);
        for &i in indices {
            debug_assert!(i < rows);
            col.words[i / 64] |= 1u64 << (i % 64);
        }
        col
    }

    fn xor_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.words.len(), other.words.len());
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    fn low(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(i * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        None
    }

    fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &word) in self.words.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let bit = w.trailing_zeros() as usize;
                out.push(i * 64 + bit);
                w &= w - 1;
            }
        }
        out
    }
}

/// A matrix over the two-element field, stored as sparse columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GF2Matrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseColumn>,
}

impl GF2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        GF2Matrix { rows, cols, columns: vec![SparseColumn::default(); cols] }
    }

    /// Builds a matrix from per-column row-index sets. Duplicate indices in
    /// one column collapse (the columns are sets, not multisets).
    pub fn from_columns(
        rows: usize,
        cols: usize,
        entries: Vec<Vec<usize>>,
    ) -> Result<Self, Gf2Error> {
        if entries.len() != cols {
            return Err(Gf2Error::ColumnCountMismatch { expected: cols, got: entries.len() });
        }
        let mut columns = Vec::with_capacity(cols);
        for (col, set) in entries.into_iter().enumerate() {
            if let Some(&index) = set.iter().find(|&&i| i >= rows) {
                return Err(Gf2Error::EntryOutOfRange { col, index, rows });
            }
            columns.push(SparseColumn::from_indices(rows, &set));
        }
        Ok(GF2Matrix { rows, cols, columns })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row indices holding a 1 in column `j`, ascending.
    pub fn column(&self, j: usize) -> &[usize] {
        &self.columns[j].indices
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseColumn::is_zero)
    }

    /// Matrix product over GF(2): column `j` of the result is the XOR of the
    /// left matrix's columns selected by the right matrix's column `j`.
    pub fn multiply(&self, rhs: &GF2Matrix) -> Result<GF2Matrix, Gf2Error> {
        if self.cols != rhs.rows {
            return Err(Gf2Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        let columns = rhs
            .columns
            .iter()
            .map(|rc| {
                let mut acc = SparseColumn::default();
                for &i in &rc.indices {
                    acc.xor_assign(&self.columns[i]);
                }
                acc
            })
            .collect();
        Ok(GF2Matrix { rows: self.rows, cols: rhs.cols, columns })
    }
}

/// Left-to-right column elimination; returns the rank. Claims each pivot row
/// for the first column that ends on it and folds later columns into earlier
/// ones until their pivot is free or they vanish.
fn eliminate<C: Gf2Column>(cols: &mut [C]) -> usize {
    let mut pivot_of: HashMap<usize, usize> = HashMap::new();
    let mut rank = 0;
    for j in 0..cols.len() {
        while let Some(l) = cols[j].low() {
            match pivot_of.get(&l) {
                Some(&k) => {
                    // k < j always: pivots are claimed left to right.
                    let (left, right) = cols.split_at_mut(j);
                    right[0].xor_assign(&left[k]);
                }
                None => {
                    pivot_of.insert(l, j);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Rank over GF(2). Dispatches to the dense bitset layout while columns stay
/// short (rows <= 256) and to sparse merges beyond that.
pub fn rank_gf2(m: &GF2Matrix) -> usize {
    if m.rows <= 64 * 4 {
        rank_gf2_dense(m)
    } else {
        rank_gf2_sparse(m)
    }
}

/// Rank via the sparse layout. Public so tests can pin layout agreement.
pub fn rank_gf2_sparse(m: &GF2Matrix) -> usize {
    let mut cols = m.columns.clone();
    eliminate(&mut cols)
}

/// Rank via the dense bitset layout. Public so tests can pin layout agreement.
pub fn rank_gf2_dense(m: &GF2Matrix) -> usize {
    let mut cols: Vec<DenseColumn> = m
        .columns
        .iter()
        .map(|c| DenseColumn::from_indices(m.rows, &c.indices))
        .collect();
    eliminate(&mut cols)
}

/// Result of reducing a column matrix D while tracking the combination:
/// `reduced = D * combination`, with `combination` invertible upper-triangular.
#[derive(Debug, Clone)]
pub struct Decomposition<C> {
    /// The reduced columns R; distinct nonzero columns have distinct pivots.
    pub reduced: Vec<C>,
    /// Column `j` lists which original columns were XORed into column `j`
    /// (always including `j` itself).
    pub combination: Vec<SparseColumn>,
}

/// Same sweep as [`rank_gf2`] but keeps the combination matrix, which is what
/// turns zero columns into explicit cycles.
pub fn reduce_with_combination<C: Gf2Column>(mut columns: Vec<C>) -> Decomposition<C> {
    let n = columns.len();
    let mut combination: Vec<SparseColumn> =
        (0..n).map(|j| SparseColumn::from_indices(n, &[j])).collect();
    let mut pivot_of: HashMap<usize, usize> = HashMap::new();
    for j in 0..n {
        while let Some(l) = columns[j].low() {
            match pivot_of.get(&l) {
                Some(&k) => {
                    let (left, right) = columns.split_at_mut(j);
                    right[0].xor_assign(&left[k]);
                    let (vleft, vright) = combination.split_at_mut(j);
                    vright[0].xor_assign(&vleft[k]);
                }
                None => {
                    pivot_of.insert(l, j);
                    break;
                }
            }
        }
    }
    Decomposition { reduced: columns, combination }
}
