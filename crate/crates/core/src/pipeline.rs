//! CSV ingest, exact deduplication, and the end-to-end analysis report:
//! components with medoid representatives, a homology-trivial flag per
//! component, and named polyhedral 2-cycles, plus the JSON document view.

use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::builders::{
    components_at, distance_matrix, max_pairwise_distance, normalize_min_max, rips_filtration,
    vertex_set, BuildError, DistanceMatrix, LandmarkSet, PointCloud,
};
use crate::homology::betti_numbers;
use crate::persistence::{
    compute_persistence, Barcode, PersistenceError, PersistenceInterval,
};
use crate::scalar::Scalar;
use crate::simplicial::{build_complex, ComplexError, FilteredComplex, Simplex, VertexId};

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("row {row} ({label}): cannot parse {column}='{value}' as a number")]
    ParseCell { row: usize, label: String, column: String, value: String },
    #[error("row {row} ({label}): non-finite value in column {column}")]
    NonFiniteCell { row: usize, label: String, column: String },
    #[error("row {row} ({label}): missing value in column {column}")]
    MissingCell { row: usize, label: String, column: String },
    #[error("row {row} has {got} cells, expected {expected}")]
    RowLength { row: usize, expected: usize, got: usize },
    #[error("{labels} labels for {rows} value rows")]
    LabelCount { labels: usize, rows: usize },
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Persistence(#[from] PersistenceError),
    #[error("not a 2-cycle: {0}")]
    NotATwoCycle(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// What to do with a row whose cells are not all present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MissingPolicy {
    /// Skip the row and log it (the default).
    #[default]
    DropRow,
    /// Fail the ingest, naming the first offending cell.
    Fail,
}

/// Labeled rows of numeric indicators: the raw input of the pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorTable<T = f64> {
    labels: Vec<String>,
    columns: Vec<String>,
    values: Vec<Vec<T>>,
    year: Option<String>,
}

impl<T: Scalar> IndicatorTable<T> {
    /// Builds a complete table; every row must have one value per column.
    pub fn new(
        labels: Vec<String>,
        columns: Vec<String>,
        values: Vec<Vec<T>>,
    ) -> Result<Self, PipelineError> {
        if labels.len() != values.len() {
            return Err(PipelineError::LabelCount {
                labels: labels.len(),
                rows: values.len(),
            });
        }
        for (row, v) in values.iter().enumerate() {
            if v.len() != columns.len() {
                return Err(PipelineError::RowLength {
                    row: row + 1,
                    expected: columns.len(),
                    got: v.len(),
                });
            }
        }
        Ok(IndicatorTable { labels, columns, values, year: None })
    }

    pub fn with_year(mut self, year: impl Into<String>) -> Self {
        self.year = Some(year.into());
        self
    }

    pub fn n_rows(&self) -> usize {
        self.values.len()
    }

    pub fn n_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn values(&self) -> &[Vec<T>] {
        &self.values
    }

    pub fn year(&self) -> Option<&str> {
        self.year.as_deref()
    }
}

/// Reads a UTF-8, comma-separated file with a header row whose first column
/// is the row label and whose remaining columns are numeric indicators. An
/// empty cell counts as missing and is handled per `missing`; a non-numeric
/// nonempty cell is always an error naming the row and column.
pub fn ingest_csv<T: Scalar>(
    path: impl AsRef<Path>,
    missing: MissingPolicy,
) -> Result<IndicatorTable<T>, PipelineError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path)?;
    let headers = reader.headers()?.clone();
    let columns: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();

    let mut labels = Vec::new();
    let mut values: Vec<Vec<T>> = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let record = record?;
        let row = idx + 1;
        let label = record.get(0).unwrap_or("").to_string();
        let mut cells: Vec<T> = Vec::with_capacity(columns.len());
        let mut dropped = false;
        for (c, column) in columns.iter().enumerate() {
            let raw = record.get(c + 1).unwrap_or("");
            if raw.is_empty() {
                match missing {
                    MissingPolicy::DropRow => {
                        log::warn!(
                            "dropping row {row} ({label}): missing value in column {column}"
                        );
                        dropped = true;
                        break;
                    }
                    MissingPolicy::Fail => {
                        return Err(PipelineError::MissingCell {
                            row,
                            label,
                            column: column.clone(),
                        })
                    }
                }
            }
            let parsed: f64 = raw.parse().map_err(|_| PipelineError::ParseCell {
                row,
                label: label.clone(),
                column: column.clone(),
                value: raw.to_string(),
            })?;
            if !parsed.is_finite() {
                return Err(PipelineError::NonFiniteCell {
                    row,
                    label: label.clone(),
                    column: column.clone(),
                });
            }
            cells.push(T::from_f64(parsed).expect("finite f64 converts to the scalar"));
        }
        if !dropped {
            labels.push(label);
            values.push(cells);
        }
    }
    IndicatorTable::new(labels, columns, values)
}

/// The table collapsed to bitwise-distinct indicator vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct DedupResult<T = f64> {
    /// One point per distinct vector, in first-occurrence order.
    pub unique_points: PointCloud<T>,
    /// For each unique point, the sorted labels of the rows that share it.
    pub groups: Vec<Vec<String>>,
}

/// Groups rows by exact bitwise equality of their value vectors. No epsilon:
/// indicator data is small integers, and tolerant matching would silently
/// merge distinct configurations.
pub fn dedup<T: Scalar>(table: &IndicatorTable<T>) -> DedupResult<T> {
    let mut key_of: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut points: Vec<Vec<T>> = Vec::new();
    let mut groups: Vec<Vec<String>> = Vec::new();
    for (label, row) in table.labels().iter().zip(table.values()) {
        let key: Vec<u64> = row.iter().map(|v| v.as_f64().to_bits()).collect();
        match key_of.get(&key) {
            Some(&i) => groups[i].push(label.clone()),
            None => {
                key_of.insert(key, points.len());
                points.push(row.clone());
                groups.push(vec![label.clone()]);
            }
        }
    }
    for g in &mut groups {
        g.sort();
    }
    DedupResult {
        unique_points: PointCloud::new(points).expect("table rows share one width"),
        groups,
    }
}

/// Pipeline configuration. `None` for `r_max` or `at` selects the AUTO rule:
/// `r_max` = largest pairwise distance, `at` = last finite degree-0 death
/// (the parameter where the component structure stabilizes).
#[derive(Debug, Clone)]
pub struct AnalyzeConfig<T = f64> {
    pub metric: String,
    pub r_max: Option<T>,
    pub max_dim: usize,
    pub at: Option<T>,
    pub min_persistence: T,
    pub normalize: bool,
}

impl<T: Scalar> Default for AnalyzeConfig<T> {
    fn default() -> Self {
        AnalyzeConfig {
            metric: "euclidean".to_string(),
            r_max: None,
            max_dim: 2,
            at: None,
            min_persistence: T::zero(),
            normalize: false,
        }
    }
}

/// The configuration after AUTO values have been resolved; echoed in reports.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedParameters<T = f64> {
    pub metric: String,
    pub r_max: T,
    pub max_dim: usize,
    pub at: T,
    pub min_persistence: T,
    pub normalize: bool,
    pub year: Option<String>,
}

/// One connected component at the working parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentReport<T = f64> {
    /// Unique-point indices, ascending.
    pub member_points: Vec<VertexId>,
    /// Lex-first label of the component's medoid point.
    pub representative_label: String,
    /// True when every Betti number above degree 0 vanishes on the component
    /// snapshot. A necessary condition for contractibility, not a proof.
    pub homology_trivial: bool,
    /// Degree-2 classes reported for this component.
    pub two_cycles: Vec<CycleShape<T>>,
}

/// A degree-2 representative cycle summarized as a polyhedron.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleShape<T = f64> {
    /// Dedup-group labels of each distinct vertex, vertex order ascending.
    pub vertex_labels: Vec<Vec<String>>,
    /// Number of triangles in the representative.
    pub triangle_count: usize,
    /// Present exactly when (vertex count, triangle count) matches the naming
    /// table: (4,4) tetrahedron, (5,6) triangular bipyramid, (6,8) octahedron.
    pub shape_name: Option<String>,
    pub interval: PersistenceInterval<T>,
}

impl<T: Scalar> CycleShape<T> {
    /// The table name, or the irregular-polyhedron fallback text.
    pub fn label(&self) -> String {
        self.shape_name.clone().unwrap_or_else(|| {
            format!(
                "irregular polyhedron with {} triangular faces",
                self.triangle_count
            )
        })
    }
}

/// Everything `analyze` produces.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport<T = f64> {
    pub parameters: ResolvedParameters<T>,
    pub unique_point_count: usize,
    pub groups: Vec<Vec<String>>,
    pub components: Vec<ComponentReport<T>>,
    pub barcode: Barcode<T>,
}

fn shape_table_name(vertices: usize, triangles: usize) -> Option<String> {
    match (vertices, triangles) {
        (4, 4) => Some("tetrahedron".to_string()),
        (5, 6) => Some("triangular bipyramid".to_string()),
        (6, 8) => Some("octahedron".to_string()),
        _ => None,
    }
}

/// Classifies a degree-2 representative cycle. `groups` maps each vertex id
/// to its dedup labels; vertices beyond it fall back to `v<id>` placeholders
/// so the classifier also works on bare complexes.
///
/// Errors unless the input is a nonempty set of triangles whose GF(2)
/// boundary vanishes (every edge covered an even number of times).
pub fn name_shape<T: Scalar>(
    cycle: &[Simplex<T>],
    interval: &PersistenceInterval<T>,
    groups: &[Vec<String>],
) -> Result<CycleShape<T>, PipelineError> {
    if cycle.is_empty() {
        return Err(PipelineError::NotATwoCycle("empty chain".to_string()));
    }
    if let Some(s) = cycle.iter().find(|s| s.dim() != 2) {
        return Err(PipelineError::NotATwoCycle(format!(
            "chain contains a {}-simplex",
            s.dim()
        )));
    }
    let mut edge_parity: HashMap<Vec<VertexId>, usize> = HashMap::new();
    for t in cycle {
        for f in t.faces() {
            *edge_parity.entry(f.vertices().to_vec()).or_insert(0) += 1;
        }
    }
    if let Some((edge, _)) = edge_parity.iter().find(|(_, &c)| c % 2 != 0) {
        return Err(PipelineError::NotATwoCycle(format!(
            "edge [{}] has odd coefficient in the boundary",
            edge.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
        )));
    }

    let vertices = vertex_set(cycle);
    let vertex_labels = vertices
        .iter()
        .map(|&v| groups.get(v).cloned().unwrap_or_else(|| vec![format!("v{v}")]))
        .collect();
    let triangle_count = cycle.len();
    Ok(CycleShape {
        vertex_labels,
        triangle_count,
        shape_name: shape_table_name(vertices.len(), triangle_count),
        interval: interval.clone(),
    })
}

/// The medoid's label: the member minimizing the sum of distances to the
/// other members, ties broken by the lexicographically smaller label. `d`
/// must be a full (every point a landmark) matrix and `groups` the dedup
/// groups, so a point's label is the lex-first of its group.
pub fn component_representative<T: Scalar>(
    component: &[VertexId],
    d: &DistanceMatrix<T>,
    groups: &[Vec<String>],
) -> String {
    assert!(!component.is_empty(), "components are nonempty");
    let mut best: Option<(T, &str)> = None;
    for &p in component {
        let sum = component
            .iter()
            .fold(T::zero(), |acc, &q| acc + d.entry(p, q));
        let label = groups[p][0].as_str();
        let better = match &best {
            None => true,
            Some((s, l)) => sum < *s || (sum == *s && label < *l),
        };
        if better {
            best = Some((sum, label));
        }
    }
    best.expect("nonempty component").1.to_string()
}

/// True when beta_1 .. beta_max_dim all vanish on `k`. Degree 0 is ignored,
/// so pass the snapshot of a single connected component.
pub fn homology_trivial<T: Scalar>(k: &FilteredComplex<T>, max_dim: usize) -> bool {
    betti_numbers(k, max_dim).betti()[1..].iter().all(|&b| b == 0)
}

/// Runs the whole pipeline: dedup, optional normalization, Rips filtration,
/// persistence, components at the working parameter, and per-component
/// representative/triviality/2-cycle extraction. Deterministic for a given
/// table and configuration.
pub fn analyze<T: Scalar>(
    table: &IndicatorTable<T>,
    config: &AnalyzeConfig<T>,
) -> Result<AnalysisReport<T>, PipelineError> {
    let ded = dedup(table);
    let cloud = if config.normalize {
        normalize_min_max(&ded.unique_points)
    } else {
        ded.unique_points.clone()
    };

    let r_max = match config.r_max {
        Some(r) => r,
        None => max_pairwise_distance(&cloud, &config.metric)?,
    };
    let k = if cloud.is_empty() {
        build_complex(Vec::new())?
    } else {
        rips_filtration(&cloud, r_max, config.max_dim, &config.metric)?
    };
    let barcode = compute_persistence(&k, config.max_dim)?;

    let at = match config.at {
        Some(r) => r,
        None => barcode
            .intervals_of_degree(0)
            .filter(|iv| !iv.is_infinite())
            .map(|iv| iv.death())
            .fold(T::zero(), |a, b| a.max(b)),
    };

    let component_sets = components_at(&k, at);
    let mut component_of: HashMap<VertexId, usize> = HashMap::new();
    for (i, c) in component_sets.iter().enumerate() {
        for &v in c {
            component_of.insert(v, i);
        }
    }

    let d = if cloud.is_empty() {
        None
    } else {
        Some(distance_matrix(&cloud, &LandmarkSet::all(cloud.len())?, &config.metric)?)
    };

    let mut components: Vec<ComponentReport<T>> = component_sets
        .iter()
        .map(|members| {
            let d = d.as_ref().expect("components imply a nonempty cloud");
            let representative_label = component_representative(members, d, &ded.groups);
            let set: BTreeSet<VertexId> = members.iter().copied().collect();
            let (snapshot, _) = k.induced_at(&set, at);
            ComponentReport {
                member_points: members.clone(),
                representative_label,
                homology_trivial: homology_trivial(&snapshot, config.max_dim),
                two_cycles: Vec::new(),
            }
        })
        .collect();

    // A degree-2 class is reported when it is alive at the working parameter;
    // finite classes must additionally outlast min_persistence. Every
    // representative lies inside one component by edge-connectivity.
    for iv in barcode.intervals_of_degree(2) {
        let alive = iv.birth() <= at && at < iv.death();
        let persistent = iv.is_infinite() || iv.persistence() > config.min_persistence;
        if !(alive && persistent) {
            continue;
        }
        let shape = name_shape(iv.representative(), iv, &ded.groups)?;
        let home = vertex_set(iv.representative())
            .first()
            .and_then(|v| component_of.get(v))
            .copied();
        if let Some(i) = home {
            components[i].two_cycles.push(shape);
        }
    }

    Ok(AnalysisReport {
        parameters: ResolvedParameters {
            metric: config.metric.clone(),
            r_max,
            max_dim: config.max_dim,
            at,
            min_persistence: config.min_persistence,
            normalize: config.normalize,
            year: table.year().map(str::to_string),
        },
        unique_point_count: ded.unique_points.len(),
        groups: ded.groups,
        components,
        barcode,
    })
}

// ============================================================================
// JSON document view
// ============================================================================

/// The serialized form of an [`AnalysisReport`]: what the CLI writes and what
/// downstream tooling parses. Deserializing what was serialized reproduces
/// the document exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument<T = f64> {
    pub parameters: ReportParameters<T>,
    pub unique_point_count: usize,
    pub groups: Vec<Vec<String>>,
    pub components: Vec<ReportComponent<T>>,
    pub barcode: Vec<ReportBar<T>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportParameters<T = f64> {
    pub metric: String,
    pub r_max: T,
    pub max_dim: usize,
    pub at: T,
    pub min_persistence: T,
    pub normalize: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub year: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportComponent<T = f64> {
    pub members: Vec<usize>,
    pub representative: String,
    pub homology_trivial: bool,
    pub cycles: Vec<ReportCycle<T>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportCycle<T = f64> {
    pub vertex_labels: Vec<Vec<String>>,
    pub triangle_count: usize,
    pub shape_name: String,
    pub birth: T,
    /// `null` encodes an infinite death.
    pub death: Option<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportBar<T = f64> {
    pub degree: usize,
    pub birth: T,
    /// `null` encodes an infinite death.
    pub death: Option<T>,
}

impl<T: Scalar> AnalysisReport<T> {
    /// The JSON-facing view: visible bars only, infinite deaths as `null`,
    /// shape names flattened to their display labels.
    pub fn document(&self) -> ReportDocument<T> {
        ReportDocument {
            parameters: ReportParameters {
                metric: self.parameters.metric.clone(),
                r_max: self.parameters.r_max,
                max_dim: self.parameters.max_dim,
                at: self.parameters.at,
                min_persistence: self.parameters.min_persistence,
                normalize: self.parameters.normalize,
                year: self.parameters.year.clone(),
            },
            unique_point_count: self.unique_point_count,
            groups: self.groups.clone(),
            components: self
                .components
                .iter()
                .map(|c| ReportComponent {
                    members: c.member_points.clone(),
                    representative: c.representative_label.clone(),
                    homology_trivial: c.homology_trivial,
                    cycles: c
                        .two_cycles
                        .iter()
                        .map(|s| ReportCycle {
                            vertex_labels: s.vertex_labels.clone(),
                            triangle_count: s.triangle_count,
                            shape_name: s.label(),
                            birth: s.interval.birth(),
                            death: finite(s.interval.death()),
                        })
                        .collect(),
                })
                .collect(),
            barcode: self
                .barcode
                .visible()
                .map(|iv| ReportBar {
                    degree: iv.degree(),
                    birth: iv.birth(),
                    death: finite(iv.death()),
                })
                .collect(),
        }
    }
}

fn finite<T: Scalar>(death: T) -> Option<T> {
    if death.is_finite() {
        Some(death)
    } else {
        None
    }
}

impl<T: Scalar + Serialize> ReportDocument<T> {
    /// Full-precision pretty JSON; scalars print with their shortest
    /// round-trip representation, so parsing this text reproduces `self`.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report document serializes")
    }
}

/// Parses a report document back from JSON text.
pub fn report_from_json<T: Scalar + DeserializeOwned>(
    text: &str,
) -> Result<ReportDocument<T>, PipelineError> {
    Ok(serde_json::from_str(text)?)
}
