//! Point clouds, distance matrices, and the witness/Rips filtration builders.
//!
//! The witness complex lives on the landmark vertices. An edge's time of
//! appearance is the min-max witness value evaluated at the edge's own
//! endpoints: `min over i in {a, b} of max(D(a, i), D(b, i))`, which for a
//! true metric is exactly the landmark distance `d(a, b)`. With every point a
//! landmark this makes the witness construction coincide with the Rips
//! complex, edges joining at distance <= R. Higher simplices follow flag
//! semantics: a simplex enters when its last edge does.

use std::collections::BTreeSet;
use std::str::FromStr;

use crate::scalar::Scalar;
use crate::simplicial::{build_complex, FilteredComplex, Simplex, VertexId};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BuildError {
    #[error("unknown metric '{0}' (expected euclidean, manhattan, or hamming)")]
    UnknownMetric(String),
    #[error("points must share one dimension: expected {expected}, point {index} has {got}")]
    DimensionMismatch { index: usize, expected: usize, got: usize },
    #[error("point {index} has a non-finite coordinate")]
    NonFiniteCoordinate { index: usize },
    #[error("landmark set is empty")]
    EmptyLandmarks,
    #[error("landmark index {index} is outside 0..{n_points}")]
    LandmarkOutOfRange { index: usize, n_points: usize },
    #[error("landmark index {0} is listed twice")]
    DuplicateLandmark(usize),
    #[error("distance matrix row {row} has {got} entries, expected {expected}")]
    RowLengthMismatch { row: usize, expected: usize, got: usize },
    #[error("distance matrix entry ({row}, {col}) is negative or non-finite")]
    InvalidEntry { row: usize, col: usize },
    #[error("scale parameter must be finite and non-negative, got {0}")]
    InvalidScale(String),
}

/// The data set Z: N points sharing one coordinate dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud<T = f64> {
    points: Vec<Vec<T>>,
    dim: usize,
}

impl<T: Scalar> PointCloud<T> {
    /// Validates that every point is finite and of equal dimension.
    pub fn new(points: Vec<Vec<T>>) -> Result<Self, BuildError> {
        let dim = points.first().map_or(0, Vec::len);
        for (index, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(BuildError::DimensionMismatch { index, expected: dim, got: p.len() });
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(BuildError::NonFiniteCoordinate { index });
            }
        }
        Ok(PointCloud { points, dim })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Coordinate dimension d (0 for the empty cloud).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[T] {
        &self.points[i]
    }
}

/// The landmark subset L of the point cloud, as strictly increasing indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LandmarkSet {
    indices: Vec<usize>,
}

impl LandmarkSet {
    /// Sorts the indices and validates: nonempty, within range, no repeats.
    pub fn new(mut indices: Vec<usize>, n_points: usize) -> Result<Self, BuildError> {
        if indices.is_empty() {
            return Err(BuildError::EmptyLandmarks);
        }
        indices.sort_unstable();
        if let Some(w) = indices.windows(2).find(|w| w[0] == w[1]) {
            return Err(BuildError::DuplicateLandmark(w[0]));
        }
        if let Some(&index) = indices.iter().find(|&&i| i >= n_points) {
            return Err(BuildError::LandmarkOutOfRange { index, n_points });
        }
        Ok(LandmarkSet { indices })
    }

    /// Every point a landmark: the L = Z choice that yields the Rips complex.
    pub fn all(n_points: usize) -> Result<Self, BuildError> {
        Self::new((0..n_points).collect(), n_points.max(1))
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Euclidean,
    Manhattan,
    Hamming,
}

impl FromStr for Metric {
    type Err = BuildError;

    fn from_str(s: &str) -> Result<Self, BuildError> {
        match s {
            "euclidean" => Ok(Metric::Euclidean),
            "manhattan" => Ok(Metric::Manhattan),
            "hamming" => Ok(Metric::Hamming),
            other => Err(BuildError::UnknownMetric(other.to_string())),
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Metric::Euclidean => "euclidean",
            Metric::Manhattan => "manhattan",
            Metric::Hamming => "hamming",
        })
    }
}

impl Metric {
    /// Distance between two coordinate vectors of equal length.
    pub fn distance<T: Scalar>(self, a: &[T], b: &[T]) -> T {
        debug_assert_eq!(a.len(), b.len());
        match self {
            Metric::Euclidean => a
                .iter()
                .zip(b)
                .map(|(&x, &y)| (x - y) * (x - y))
                .fold(T::zero(), |s, d| s + d)
                .sqrt(),
            Metric::Manhattan => a
                .iter()
                .zip(b)
                .map(|(&x, &y)| (x - y).abs())
                .fold(T::zero(), |s, d| s + d),
            Metric::Hamming => {
                let differing = a.iter().zip(b).filter(|(x, y)| x != y).count();
                T::from_usize(differing).expect("coordinate count fits the scalar")
            }
        }
    }
}

/// The n x N matrix D of distances from each landmark to every point, along
/// with which point each landmark row refers to.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix<T = f64> {
    entries: Vec<Vec<T>>,
    landmarks: Vec<usize>,
    metric_name: String,
}

impl<T: Scalar> DistanceMatrix<T> {
    /// Wraps precomputed entries. `landmarks[a]` is the point index of row
    /// `a`; rows must be equal length with finite non-negative entries.
    pub fn from_entries(
        entries: Vec<Vec<T>>,
        landmarks: Vec<usize>,
        metric_name: impl Into<String>,
    ) -> Result<Self, BuildError> {
        if entries.len() != landmarks.len() {
            return Err(BuildError::RowLengthMismatch {
                row: 0,
                expected: landmarks.len(),
                got: entries.len(),
            });
        }
        let n_points = entries.first().map_or(0, Vec::len);
        for (row, r) in entries.iter().enumerate() {
            if r.len() != n_points {
                return Err(BuildError::RowLengthMismatch {
                    row,
                    expected: n_points,
                    got: r.len(),
                });
            }
            for (col, &v) in r.iter().enumerate() {
                if !(v.is_finite() && v >= T::zero()) {
                    return Err(BuildError::InvalidEntry { row, col });
                }
            }
        }
        for (row, &index) in landmarks.iter().enumerate() {
            if index >= n_points {
                return Err(BuildError::LandmarkOutOfRange { index, n_points });
            }
            if row > 0 && landmarks[row - 1] >= index {
                return Err(BuildError::DuplicateLandmark(index));
            }
        }
        Ok(DistanceMatrix { entries, landmarks, metric_name: metric_name.into() })
    }

    pub fn n_landmarks(&self) -> usize {
        self.entries.len()
    }

    pub fn n_points(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    /// D(a, i): distance from landmark row `a` to point `i`.
    pub fn entry(&self, a: usize, i: usize) -> T {
        self.entries[a][i]
    }

    pub fn row(&self, a: usize) -> &[T] {
        &self.entries[a]
    }

    /// Point index of landmark row `a`.
    pub fn landmark_point(&self, a: usize) -> usize {
        self.landmarks[a]
    }

    pub fn landmarks(&self) -> &[usize] {
        &self.landmarks
    }

    pub fn metric_name(&self) -> &str {
        &self.metric_name
    }
}

/// Computes D(a, i) = distance from landmark `a` to point `i` under the named
/// metric (one of `euclidean`, `manhattan`, `hamming`).
pub fn distance_matrix<T: Scalar>(
    z: &PointCloud<T>,
    l: &LandmarkSet,
    metric: &str,
) -> Result<DistanceMatrix<T>, BuildError> {
    let m: Metric = metric.parse()?;
    if let Some(&index) = l.indices().iter().find(|&&i| i >= z.len()) {
        return Err(BuildError::LandmarkOutOfRange { index, n_points: z.len() });
    }
    let entries = l
        .indices()
        .iter()
        .map(|&a| (0..z.len()).map(|i| m.distance(z.point(a), z.point(i))).collect())
        .collect();
    Ok(DistanceMatrix { entries, landmarks: l.indices().to_vec(), metric_name: m.to_string() })
}

/// The witness filtration W(D, R) up to `r_max` and dimension `max_dim`.
///
/// Vertices (one per landmark) appear at 0. An edge's appearance is the
/// endpoint-witness min-max value described in the module docs; edges above
/// `r_max` are dropped. Simplices of dimension >= 2 follow flag semantics:
/// present as soon as all their edges are, appearing at the max edge value.
#[allow(clippy::needless_range_loop)] // symmetric writes need both indices
pub fn witness_filtration<T: Scalar>(
    d: &DistanceMatrix<T>,
    r_max: T,
    max_dim: usize,
) -> Result<FilteredComplex<T>, BuildError> {
    if d.n_landmarks() == 0 {
        return Err(BuildError::EmptyLandmarks);
    }
    if !(r_max.is_finite() && r_max >= T::zero()) {
        return Err(BuildError::InvalidScale(format!("{r_max}")));
    }
    let n = d.n_landmarks();
    let mut simplices: Vec<Simplex<T>> =
        (0..n).map(|v| Simplex::new(vec![v], T::zero())).collect();

    // Pairwise appearance values; infinity marks a dropped edge.
    let mut edge_at = vec![vec![T::infinity(); n]; n];
    if max_dim >= 1 {
        for a in 0..n {
            for b in (a + 1)..n {
                let (za, zb) = (d.landmark_point(a), d.landmark_point(b));
                let via_a = d.entry(a, za).max(d.entry(b, za));
                let via_b = d.entry(a, zb).max(d.entry(b, zb));
                let r = via_a.min(via_b);
                if r <= r_max {
                    edge_at[a][b] = r;
                    edge_at[b][a] = r;
                    simplices.push(Simplex::new(vec![a, b], r));
                }
            }
        }
    }

    // Flag closure: grow cliques one vertex at a time, appearance = max edge.
    let mut frontier: Vec<(Vec<VertexId>, T)> = simplices
        .iter()
        .filter(|s| s.dim() == 1)
        .map(|s| (s.vertices().to_vec(), s.appearance()))
        .collect();
    for _dim in 2..=max_dim {
        let mut next: Vec<(Vec<VertexId>, T)> = Vec::new();
        for (clique, at) in &frontier {
            let last = *clique.last().expect("cliques are nonempty");
            for v in (last + 1)..n {
                if clique.iter().all(|&u| edge_at[u][v].is_finite()) {
                    let grown =
                        clique.iter().fold(*at, |m, &u| m.max(edge_at[u][v]));
                    let mut vertices = clique.clone();
                    vertices.push(v);
                    next.push((vertices, grown));
                }
            }
        }
        simplices
            .extend(next.iter().map(|(v, a)| Simplex::new(v.clone(), *a)));
        if next.is_empty() {
            break;
        }
        frontier = next;
    }

    Ok(build_complex(simplices).expect("flag construction satisfies the complex invariants"))
}

/// The Rips filtration on `z`: the witness filtration with every point a
/// landmark, where each edge appears exactly at the pairwise distance.
pub fn rips_filtration<T: Scalar>(
    z: &PointCloud<T>,
    r_max: T,
    max_dim: usize,
    metric: &str,
) -> Result<FilteredComplex<T>, BuildError> {
    let l = LandmarkSet::all(z.len())?;
    witness_filtration(&distance_matrix(z, &l, metric)?, r_max, max_dim)
}

/// Connected components of the snapshot at `r`: union-find over the vertices
/// and edges with appearance <= `r`. Components are sorted internally and
/// listed by their smallest vertex id.
pub fn components_at<T: Scalar>(k: &FilteredComplex<T>, r: T) -> Vec<Vec<VertexId>> {
    let vertices: Vec<VertexId> = k
        .simplices_of_dim(0)
        .filter(|s| s.appearance() <= r)
        .map(|s| s.vertices()[0])
        .collect();
    if vertices.is_empty() {
        return Vec::new();
    }
    let slot_of: std::collections::HashMap<VertexId, usize> =
        vertices.iter().enumerate().map(|(slot, &v)| (v, slot)).collect();
    let mut uf = UnionFind::new(vertices.len());
    for e in k.simplices_of_dim(1).filter(|s| s.appearance() <= r) {
        // Monotonicity puts both endpoints in the snapshot already.
        uf.union(slot_of[&e.vertices()[0]], slot_of[&e.vertices()[1]]);
    }
    let mut by_root: std::collections::BTreeMap<usize, Vec<VertexId>> =
        std::collections::BTreeMap::new();
    for (slot, &v) in vertices.iter().enumerate() {
        by_root.entry(uf.find(slot)).or_default().push(v);
    }
    let mut components: Vec<Vec<VertexId>> = by_root.into_values().collect();
    for c in &mut components {
        c.sort_unstable();
    }
    components.sort_by_key(|c| c[0]);
    components
}

/// Largest pairwise distance in the cloud; zero for fewer than two points.
/// This is the AUTO choice of `r_max`, at which the final 1-skeleton is the
/// complete graph on the points.
pub fn max_pairwise_distance<T: Scalar>(
    z: &PointCloud<T>,
    metric: &str,
) -> Result<T, BuildError> {
    let m: Metric = metric.parse()?;
    let mut best = T::zero();
    for a in 0..z.len() {
        for b in (a + 1)..z.len() {
            best = best.max(m.distance(z.point(a), z.point(b)));
        }
    }
    Ok(best)
}

/// Min-max scales each coordinate column to [0, 1]; constant columns go to 0.
pub fn normalize_min_max<T: Scalar>(z: &PointCloud<T>) -> PointCloud<T> {
    if z.is_empty() || z.dim() == 0 {
        return z.clone();
    }
    let mut lo = z.point(0).to_vec();
    let mut hi = z.point(0).to_vec();
    for p in z.points() {
        for (c, &v) in p.iter().enumerate() {
            lo[c] = lo[c].min(v);
            hi[c] = hi[c].max(v);
        }
    }
    let points = z
        .points()
        .iter()
        .map(|p| {
            p.iter()
                .enumerate()
                .map(|(c, &v)| {
                    if hi[c] > lo[c] {
                        (v - lo[c]) / (hi[c] - lo[c])
                    } else {
                        T::zero()
                    }
                })
                .collect()
        })
        .collect();
    PointCloud::new(points).expect("scaling finite coordinates stays finite")
}

/// Union by size with path halving.
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

/// Vertex set of a collection of simplices, ascending.
pub fn vertex_set<T: Scalar>(simplices: &[Simplex<T>]) -> BTreeSet<VertexId> {
    simplices.iter().flat_map(|s| s.vertices().iter().copied()).collect()
}
