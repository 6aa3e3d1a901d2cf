//! Simplices and face-closed filtered complexes.
//!
//! [`build_complex`] is the one entry point that establishes the structural
//! invariants everything downstream relies on: face closure, appearance
//! monotonicity along faces, canonical (appearance, dimension, vertex) order,
//! dense vertex ids, and no duplicate vertex lists.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// Index of a vertex within one complex. Ids are dense: `0..vertex_count`.
pub type VertexId = usize;

/// A `p`-simplex: `p + 1` distinct vertices sorted ascending, plus the
/// filtration parameter at which it enters the complex.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex<T = f64> {
    vertices: Vec<VertexId>,
    appearance: T,
}

impl<T: Scalar> Simplex<T> {
    /// Builds a simplex from vertices in any order; they are sorted here.
    ///
    /// Panics when `vertices` is empty. Duplicate vertices are representable
    /// at this level and rejected by [`build_complex`], which names the
    /// offending simplex in its error.
    pub fn new(vertices: impl Into<Vec<VertexId>>, appearance: T) -> Self {
        let mut vertices = vertices.into();
        assert!(!vertices.is_empty(), "a simplex needs at least one vertex");
        vertices.sort_unstable();
        Simplex { vertices, appearance }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn appearance(&self) -> T {
        self.appearance
    }

    /// Dimension `p`; a lone vertex is 0-dimensional.
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Codimension-1 faces, ordered by omitted-vertex position ascending, each
    /// inheriting this simplex's appearance. A vertex has no faces.
    pub fn faces(&self) -> Vec<Simplex<T>> {
        if self.dim() == 0 {
            return Vec::new();
        }
        (0..self.vertices.len())
            .map(|skip| {
                let vertices = self
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != skip)
                    .map(|(_, &v)| v)
                    .collect();
                Simplex { vertices, appearance: self.appearance }
            })
            .collect()
    }

    fn has_duplicate_vertex(&self) -> bool {
        self.vertices.windows(2).any(|w| w[0] == w[1])
    }

    fn label(&self) -> String {
        let ids: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        ids.join(" ")
    }
}

/// Same-signature free function as the method, for callers that prefer it.
pub fn faces<T: Scalar>(s: &Simplex<T>) -> Vec<Simplex<T>> {
    s.faces()
}

/// Total order used for storage: appearance, then dimension, then vertex list.
/// Appearance values are finite by construction, so the comparison is total.
pub fn canonical_cmp<T: Scalar>(a: &Simplex<T>, b: &Simplex<T>) -> Ordering {
    a.appearance
        .partial_cmp(&b.appearance)
        .unwrap_or(Ordering::Equal)
        .then(a.dim().cmp(&b.dim()))
        .then(a.vertices.cmp(&b.vertices))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("simplex [{0}] repeats a vertex")]
    DuplicateVertex(String),
    #[error("simplex [{0}] has a non-finite or negative appearance")]
    InvalidAppearance(String),
    #[error("vertex ids are not dense: {present} distinct ids but largest id is {max}")]
    SparseVertexIds { present: usize, max: usize },
    #[error("appearance monotonicity violated: [{child}] appears before its face [{face}]")]
    NonMonotone { child: String, face: String },
    #[error("face closure violated: [{child}] lacks face [{face}]")]
    MissingFace { child: String, face: String },
    #[error("simplices are not stored in canonical order")]
    NotCanonical,
}

/// A face-closed set of simplices in canonical order. The appearance values
/// define the filtration: the complex at parameter `r` is every member with
/// appearance at most `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex<T = f64> {
    simplices: Vec<Simplex<T>>,
    max_dim: usize,
}

impl<T: Scalar> FilteredComplex<T> {
    /// Simplices in canonical (appearance, dimension, vertex) order.
    pub fn simplices(&self) -> &[Simplex<T>] {
        &self.simplices
    }

    /// Largest dimension present; 0 for the empty complex.
    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.simplices_of_dim(0).count()
    }

    pub fn simplices_of_dim(&self, d: usize) -> impl Iterator<Item = &Simplex<T>> {
        self.simplices.iter().filter(move |s| s.dim() == d)
    }

    /// Largest appearance value present; zero for the empty complex.
    pub fn final_parameter(&self) -> T {
        self.simplices
            .iter()
            .map(|s| s.appearance)
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    /// Snapshot at parameter `r`: every simplex with appearance <= `r`,
    /// vertices relabeled densely. The second value maps each new vertex id
    /// back to the id it had in `self`.
    pub fn snapshot_at(&self, r: T) -> (FilteredComplex<T>, Vec<VertexId>) {
        let keep: Vec<&Simplex<T>> =
            self.simplices.iter().filter(|s| s.appearance <= r).collect();
        relabel(&keep)
    }

    /// Snapshot at parameter `r` restricted to the simplices whose vertices
    /// all lie in `vertices`, relabeled densely as in [`Self::snapshot_at`].
    pub fn induced_at(
        &self,
        vertices: &std::collections::BTreeSet<VertexId>,
        r: T,
    ) -> (FilteredComplex<T>, Vec<VertexId>) {
        let keep: Vec<&Simplex<T>> = self
            .simplices
            .iter()
            .filter(|s| s.appearance <= r && s.vertices.iter().all(|v| vertices.contains(v)))
            .collect();
        relabel(&keep)
    }

    /// Re-checks every structural invariant. Cheap enough that builders and
    /// property tests call it on everything they produce.
    pub fn validate(&self) -> Result<(), ComplexError> {
        for w in self.simplices.windows(2) {
            if canonical_cmp(&w[0], &w[1]) != Ordering::Less {
                return Err(ComplexError::NotCanonical);
            }
        }
        let mut appearance: BTreeMap<&[VertexId], T> = BTreeMap::new();
        let mut max_vertex = None;
        let mut vertex_count = 0usize;
        for s in &self.simplices {
            if s.has_duplicate_vertex() {
                return Err(ComplexError::DuplicateVertex(s.label()));
            }
            if !(s.appearance.is_finite() && s.appearance >= T::zero()) {
                return Err(ComplexError::InvalidAppearance(s.label()));
            }
            if s.dim() == 0 {
                vertex_count += 1;
                max_vertex = max_vertex.max(Some(s.vertices[0]));
            }
            appearance.insert(&s.vertices, s.appearance);
        }
        if let Some(max) = max_vertex {
            if max + 1 != vertex_count {
                return Err(ComplexError::SparseVertexIds { present: vertex_count, max });
            }
        }
        for s in &self.simplices {
            for f in s.faces() {
                match appearance.get(f.vertices()) {
                    None => {
                        return Err(ComplexError::MissingFace {
                            child: s.label(),
                            face: f.label(),
                        })
                    }
                    Some(&fa) if fa > s.appearance => {
                        return Err(ComplexError::NonMonotone {
                            child: s.label(),
                            face: f.label(),
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(())
    }

    /// Wraps raw parts without validating or sorting. Lets tests exercise the
    /// error paths of consumers that check invariants themselves.
    #[doc(hidden)]
    pub fn from_parts_unchecked(simplices: Vec<Simplex<T>>) -> FilteredComplex<T> {
        let max_dim = simplices.iter().map(Simplex::dim).max().unwrap_or(0);
        FilteredComplex { simplices, max_dim }
    }
}

fn relabel<T: Scalar>(keep: &[&Simplex<T>]) -> (FilteredComplex<T>, Vec<VertexId>) {
    let mut old_ids: Vec<VertexId> =
        keep.iter().filter(|s| s.dim() == 0).map(|s| s.vertices[0]).collect();
    old_ids.sort_unstable();
    let to_new: BTreeMap<VertexId, VertexId> =
        old_ids.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    // Old ids are renumbered in increasing order, so vertex-list lexicographic
    // order is preserved and the canonical order survives the relabeling.
    let simplices: Vec<Simplex<T>> = keep
        .iter()
        .map(|s| Simplex {
            vertices: s.vertices.iter().map(|v| to_new[v]).collect(),
            appearance: s.appearance,
        })
        .collect();
    let max_dim = simplices.iter().map(Simplex::dim).max().unwrap_or(0);
    (FilteredComplex { simplices, max_dim }, old_ids)
}

/// Closes the input under faces, repairs appearance monotonicity by lowering
/// faces to the minimum appearance of their cofaces, deduplicates vertex lists
/// keeping the minimum appearance, and sorts canonically.
///
/// Errors when a simplex repeats a vertex, has a non-finite or negative
/// appearance, or when the resulting vertex ids are not dense.
pub fn build_complex<T: Scalar>(
    simplices: Vec<Simplex<T>>,
) -> Result<FilteredComplex<T>, ComplexError> {
    for s in &simplices {
        if !(s.appearance.is_finite() && s.appearance >= T::zero()) {
            return Err(ComplexError::InvalidAppearance(s.label()));
        }
        if s.has_duplicate_vertex() {
            return Err(ComplexError::DuplicateVertex(s.label()));
        }
    }

    // Minimum appearance per vertex list, then face closure from the top
    // dimension down so lowered appearances keep propagating to faces.
    let mut appearance: BTreeMap<Vec<VertexId>, T> = BTreeMap::new();
    for s in simplices {
        appearance
            .entry(s.vertices)
            .and_modify(|a| {
                if s.appearance < *a {
                    *a = s.appearance;
                }
            })
            .or_insert(s.appearance);
    }
    let top = appearance.keys().map(|v| v.len()).max().unwrap_or(0);
    for size in (2..=top).rev() {
        let parents: Vec<(Vec<VertexId>, T)> = appearance
            .iter()
            .filter(|(v, _)| v.len() == size)
            .map(|(v, &a)| (v.clone(), a))
            .collect();
        for (vertices, a) in parents {
            for skip in 0..vertices.len() {
                let mut face = vertices.clone();
                face.remove(skip);
                appearance
                    .entry(face)
                    .and_modify(|fa| {
                        if a < *fa {
                            *fa = a;
                        }
                    })
                    .or_insert(a);
            }
        }
    }

    let vertex_ids: Vec<VertexId> = appearance
        .keys()
        .filter(|v| v.len() == 1)
        .map(|v| v[0])
        .collect();
    if let Some(&max) = vertex_ids.iter().max() {
        if max + 1 != vertex_ids.len() {
            return Err(ComplexError::SparseVertexIds { present: vertex_ids.len(), max });
        }
    }

    let mut out: Vec<Simplex<T>> = appearance
        .into_iter()
        .map(|(vertices, appearance)| Simplex { vertices, appearance })
        .collect();
    out.sort_by(canonical_cmp);
    let max_dim = out.iter().map(Simplex::dim).max().unwrap_or(0);
    Ok(FilteredComplex { simplices: out, max_dim })
}

/// The sub-complex of all simplices of dimension at most `d`.
pub fn skeleton<T: Scalar>(k: &FilteredComplex<T>, d: usize) -> FilteredComplex<T> {
    let simplices: Vec<Simplex<T>> =
        k.simplices.iter().filter(|s| s.dim() <= d).cloned().collect();
    let max_dim = simplices.iter().map(Simplex::dim).max().unwrap_or(0);
    FilteredComplex { simplices, max_dim }
}
