//! Barcode computation by boundary-matrix column reduction in filtration order.
//!
//! One global boundary matrix covers all degrees at once: column `j` lists the
//! faces of simplex `j` in canonical order. After reduction, a column that
//! vanished marks a birth and a column whose pivot is row `i` kills the class
//! born at simplex `i`. Intervals are half-open: a class killed by a simplex
//! appearing at `t` is not alive at `t`, so the count of intervals containing
//! `r` equals the Betti number of the snapshot complex at `r`.

use std::collections::HashMap;

use crate::gf2::{reduce_with_combination, Gf2Column, SparseColumn};
use crate::scalar::Scalar;
use crate::simplicial::{FilteredComplex, Simplex, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PersistenceError {
    #[error("filtration is not monotone: [{child}] enters before its face [{face}]")]
    NonMonotone { child: String, face: String },
    #[error("complex is not face-closed: [{child}] lacks face [{face}]")]
    MissingFace { child: String, face: String },
    #[error("interval not found in this barcode")]
    IntervalNotFound,
}

/// One bar: a homology class of the given degree born at `birth` and dead at
/// `death` (infinity for classes of the final complex). The representative is
/// a cycle of that degree supported on simplices present at the birth.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceInterval<T = f64> {
    degree: usize,
    birth: T,
    death: T,
    birth_simplex: Simplex<T>,
    death_simplex: Option<Simplex<T>>,
    representative: Vec<Simplex<T>>,
}

impl<T: Scalar> PersistenceInterval<T> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn birth(&self) -> T {
        self.birth
    }

    /// Death parameter; `T::infinity()` exactly when the class survives to
    /// the end (equivalently, when [`Self::death_simplex`] is `None`).
    pub fn death(&self) -> T {
        self.death
    }

    pub fn is_infinite(&self) -> bool {
        self.death.is_infinite()
    }

    /// Zero-length bars are bookkeeping: counted for conservation checks,
    /// hidden from rendered barcodes.
    pub fn is_ephemeral(&self) -> bool {
        self.birth == self.death
    }

    pub fn persistence(&self) -> T {
        self.death - self.birth
    }

    pub fn birth_simplex(&self) -> &Simplex<T> {
        &self.birth_simplex
    }

    pub fn death_simplex(&self) -> Option<&Simplex<T>> {
        self.death_simplex.as_ref()
    }

    pub fn representative(&self) -> &[Simplex<T>] {
        &self.representative
    }
}

/// Every interval of one filtration, sorted by (degree, birth, death).
#[derive(Debug, Clone, PartialEq)]
pub struct Barcode<T = f64> {
    intervals: Vec<PersistenceInterval<T>>,
    max_degree: usize,
    final_parameter: T,
}

impl<T: Scalar> Barcode<T> {
    /// All intervals, ephemeral ones included.
    pub fn intervals(&self) -> &[PersistenceInterval<T>] {
        &self.intervals
    }

    /// The intervals a barcode rendering shows: positive length only.
    pub fn visible(&self) -> impl Iterator<Item = &PersistenceInterval<T>> {
        self.intervals.iter().filter(|iv| !iv.is_ephemeral())
    }

    /// The visible intervals of one degree.
    pub fn intervals_of_degree(
        &self,
        degree: usize,
    ) -> impl Iterator<Item = &PersistenceInterval<T>> {
        self.visible().filter(move |iv| iv.degree == degree)
    }

    /// Largest degree this barcode reports on.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// The final filtration value R_p of the underlying complex.
    pub fn final_parameter(&self) -> T {
        self.final_parameter
    }
}

fn simplex_label<T: Scalar>(s: &Simplex<T>) -> String {
    let ids: Vec<String> = s.vertices().iter().map(usize::to_string).collect();
    ids.join(" ")
}

/// Reduces `k`'s boundary matrix in filtration order and reports intervals of
/// degree 0..=`max_degree`. Simplices up to dimension `max_degree + 1` take
/// part, so deaths of degree-`max_degree` classes are seen.
///
/// Ephemeral (zero-length) intervals are kept in the result and flagged by
/// [`PersistenceInterval::is_ephemeral`]; with `max_degree >= k.max_dim()`
/// every simplex creates or destroys exactly one class, which the tests pin
/// as a conservation law.
pub fn compute_persistence<T: Scalar>(
    k: &FilteredComplex<T>,
    max_degree: usize,
) -> Result<Barcode<T>, PersistenceError> {
    let sims: Vec<&Simplex<T>> =
        k.simplices().iter().filter(|s| s.dim() <= max_degree + 1).collect();
    let n = sims.len();
    let index: HashMap<&[VertexId], usize> =
        sims.iter().enumerate().map(|(j, s)| (s.vertices(), j)).collect();

    let mut columns = Vec::with_capacity(n);
    for (j, s) in sims.iter().enumerate() {
        if s.dim() == 0 {
            columns.push(SparseColumn::zero(n));
            continue;
        }
        let mut rows = Vec::with_capacity(s.dim() + 1);
        for f in s.faces() {
            let &fi = index.get(f.vertices()).ok_or_else(|| PersistenceError::MissingFace {
                child: simplex_label(s),
                face: simplex_label(&f),
            })?;
            // A face must strictly precede its coface in the reduction order.
            if fi >= j || sims[fi].appearance() > s.appearance() {
                return Err(PersistenceError::NonMonotone {
                    child: simplex_label(s),
                    face: simplex_label(&f),
                });
            }
            rows.push(fi);
        }
        columns.push(SparseColumn::from_indices(n, &rows));
    }

    let dec = reduce_with_combination(columns);

    let mut paired = vec![false; n];
    let mut intervals = Vec::new();
    for j in 0..n {
        if let Some(i) = dec.reduced[j].low() {
            // Simplex j kills the class born at simplex i; the reduced column
            // is itself a cycle supported at the birth parameter.
            paired[i] = true;
            let degree = sims[i].dim();
            if degree <= max_degree {
                intervals.push(PersistenceInterval {
                    degree,
                    birth: sims[i].appearance(),
                    death: sims[j].appearance(),
                    birth_simplex: sims[i].clone(),
                    death_simplex: Some(sims[j].clone()),
                    representative: dec.reduced[j]
                        .indices()
                        .into_iter()
                        .map(|x| sims[x].clone())
                        .collect(),
                });
            }
        }
    }
    for j in 0..n {
        if dec.reduced[j].is_zero() && !paired[j] && sims[j].dim() <= max_degree {
            // Essential class: the combination column is the cycle it created.
            intervals.push(PersistenceInterval {
                degree: sims[j].dim(),
                birth: sims[j].appearance(),
                death: T::infinity(),
                birth_simplex: sims[j].clone(),
                death_simplex: None,
                representative: dec.combination[j]
                    .indices()
                    .into_iter()
                    .map(|x| sims[x].clone())
                    .collect(),
            });
        }
    }

    intervals.sort_by(|a, b| {
        a.degree
            .cmp(&b.degree)
            .then(a.birth.partial_cmp(&b.birth).unwrap_or(std::cmp::Ordering::Equal))
            .then(a.death.partial_cmp(&b.death).unwrap_or(std::cmp::Ordering::Equal))
            .then(a.birth_simplex.vertices().cmp(b.birth_simplex.vertices()))
    });

    Ok(Barcode {
        intervals,
        max_degree: max_degree.min(k.max_dim()),
        final_parameter: k.final_parameter(),
    })
}

/// Number of intervals of `degree` containing `r`, i.e. with
/// `birth <= r < death`. Equals the Betti number of the snapshot at `r`.
pub fn persistent_betti<T: Scalar>(b: &Barcode<T>, degree: usize, r: T) -> usize {
    b.intervals
        .iter()
        .filter(|iv| iv.degree == degree && iv.birth <= r && r < iv.death)
        .count()
}

/// The stored representative cycle of `interval`, looked up in `b`.
pub fn representative_cycle<T: Scalar>(
    b: &Barcode<T>,
    interval: &PersistenceInterval<T>,
) -> Result<Vec<Simplex<T>>, PersistenceError> {
    b.intervals
        .iter()
        .find(|iv| *iv == interval)
        .map(|iv| iv.representative.clone())
        .ok_or(PersistenceError::IntervalNotFound)
}
