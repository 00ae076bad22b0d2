//! Constructors for scaled toric models: independence models, dilated
//! cubes, discrete graphical models, quasi-independence models, explicit
//! matrices, and the facial and column-deleted submodels derived from them.
//!
//! Every constructor emits a full-rank design matrix with an all-ones first
//! row whose columns affinely generate the full lattice, so the standing
//! assumptions checked by [`crate::lattice::validate_design_matrix`] hold
//! by construction.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{parse_rat, rat, Int, Rat};
use crate::error::Error;
use crate::lattice::{
    complete_unimodular, validate_design_matrix, IntMatrix, UnimodularAffineMap,
};
use crate::linalg;
use crate::polytope::{FaceDescriptor, PointConfiguration};
use crate::rng::Rng;

/// A design matrix together with nonzero rational scalings: the data of a
/// scaled toric model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledModel {
    pub matrix: IntMatrix,
    pub scaling: Vec<Rat>,
    pub provenance: String,
}

impl ScaledModel {
    pub fn new(
        matrix: IntMatrix,
        scaling: Vec<Rat>,
        provenance: impl Into<String>,
    ) -> Result<Self, Error> {
        if scaling.len() != matrix.ncols() {
            return Err(Error::ScalingLengthMismatch {
                expected: matrix.ncols(),
                got: scaling.len(),
            });
        }
        if scaling.iter().any(|c| c.is_zero()) {
            return Err(Error::Invalid("scalings must be nonzero".into()));
        }
        let report = validate_design_matrix(&matrix);
        if !report.all_pass() {
            return Err(Error::Invalid(format!(
                "matrix fails design checks: {report:?}"
            )));
        }
        Ok(ScaledModel {
            matrix,
            scaling,
            provenance: provenance.into(),
        })
    }

    /// Number of non-homogenizing coordinates (the model dimension).
    pub fn dim(&self) -> usize {
        self.matrix.nrows() - 1
    }

    pub fn n_cols(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn config(&self) -> PointConfiguration {
        PointConfiguration::from_design_matrix(&self.matrix)
    }

    /// Apply an affine unimodular coordinate change to the exponent
    /// vectors; the ML degree is invariant under this.
    pub fn apply_map(&self, map: &UnimodularAffineMap) -> Result<ScaledModel, Error> {
        let d = self.dim();
        let mut rows: Vec<Vec<Int>> = vec![vec![Int::one(); self.n_cols()]];
        rows.extend(vec![Vec::with_capacity(self.n_cols()); d]);
        for j in 0..self.n_cols() {
            let a: Vec<Int> = self.matrix.col(j)[1..].to_vec();
            let image = map.apply(&a);
            for (i, x) in image.into_iter().enumerate() {
                rows[i + 1].push(x);
            }
        }
        ScaledModel::new(
            IntMatrix::from_int_rows(rows),
            self.scaling.clone(),
            format!("{} (transformed)", self.provenance),
        )
    }
}

/// Reduce a raw parametrization matrix to a canonical full-rank design
/// matrix: the row lattice is saturated via the Smith normal form, a basis
/// is chosen with the all-ones vector as its first element, and the
/// remaining exponent rows are shifted to start at zero.
pub fn reduce_to_design_matrix(raw: &IntMatrix) -> Result<IntMatrix, Error> {
    let n = raw.ncols();
    if n == 0 {
        return Err(Error::Invalid("no columns".into()));
    }
    let snf = raw.smith_normal_form();
    let rank = (0..raw.nrows().min(n))
        .filter(|&i| !snf.d.get(i, i).is_zero())
        .count();
    let vinv = snf.v.inverse_unimodular()?;
    // saturated row lattice basis: leading rows of V^{-1}
    let basis: Vec<Vec<Int>> = (0..rank).map(|i| vinv.row(i).to_vec()).collect();

    // coordinates of the all-ones vector in that basis; integral because
    // the ones vector lies in the raw row lattice
    let cols: Vec<Vec<Rat>> = basis
        .iter()
        .map(|b| b.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let ones: Vec<Rat> = vec![Rat::one(); n];
    let alpha = linalg::solve_columns(&cols, &ones)
        .ok_or_else(|| Error::Invalid("ones vector not in the row space".into()))?;
    let alpha_int: Vec<Int> = alpha
        .iter()
        .map(|x| {
            debug_assert!(x.denom().is_one());
            x.numer().clone()
        })
        .collect();

    let w = complete_unimodular(&alpha_int, false);
    let b_mat = IntMatrix::from_int_rows(basis);
    let mut a = w.mul(&b_mat);
    debug_assert!(a.row(0).iter().all(|x| x.is_one()));

    // translate each exponent row to start at zero
    for i in 1..a.nrows() {
        let min = a.row(i).iter().min().cloned().expect("nonempty");
        if !min.is_zero() {
            for j in 0..a.ncols() {
                a.set(i, j, a.get(i, j) - &min);
            }
        }
    }
    Ok(a)
}

/// Scaling presets: the all-ones vector and the six 3x3 scaling grids
/// c1..c6 (flattened row-major, matching the independence model's column
/// order) that realize every ML degree of the 3x3 independence model.
pub fn scaling_preset(name: &str, n: usize) -> Option<Vec<Rat>> {
    let grid = |g: [i64; 9]| -> Option<Vec<Rat>> {
        (n == 9).then(|| g.iter().map(|&x| rat(x)).collect())
    };
    match name {
        "ones" => Some(vec![Rat::one(); n]),
        "c1" => grid([1, 1, 1, 1, 1, 1, 1, 1, 1]),
        "c2" => grid([1, 1, 1, 1, 1, 2, 1, 1, 2]),
        "c3" => grid([1, 1, 1, 1, 2, 3, 1, 2, 3]),
        "c4" => grid([1, 1, 1, 1, 2, 3, 1, 2, 1]),
        "c5" => grid([1, 1, 1, 1, 2, 3, 1, 3, 5]),
        "c6" => grid([1, 1, 1, 1, 2, 3, 2, 3, 1]),
        _ => None,
    }
}

/// Independence model of two variables with m and k states: columns are
/// indexed by joint states (i, j) in lexicographic order, rows are the
/// homogenizing ones plus state indicators for all but the last state of
/// each variable.
pub fn independence_model(m: usize, k: usize) -> Result<ScaledModel, Error> {
    if m < 2 || k < 2 {
        return Err(Error::Invalid(
            "need at least two states per variable".into(),
        ));
    }
    let n = m * k;
    let mut rows: Vec<Vec<i64>> = vec![vec![1; n]];
    for s in 0..m - 1 {
        rows.push((0..n).map(|c| i64::from(c / k == s)).collect());
    }
    for s in 0..k - 1 {
        rows.push((0..n).map(|c| i64::from(c % k == s)).collect());
    }
    ScaledModel::new(
        IntMatrix::from_rows(&rows),
        vec![Rat::one(); n],
        format!("independence model {m}x{k}"),
    )
}

/// All lattice points of the dilated cube [0, dilation]^dim, in
/// lexicographic order, with the given scalings (all ones when None).
pub fn dilated_cube_model(
    dim: usize,
    dilation: u32,
    scaling: Option<Vec<Rat>>,
) -> Result<ScaledModel, Error> {
    if dim == 0 || dilation == 0 {
        return Err(Error::Invalid(
            "dimension and dilation must be positive".into(),
        ));
    }
    let per = (dilation + 1) as usize;
    let n = per.pow(dim as u32);
    let mut rows: Vec<Vec<i64>> = vec![vec![1; n]; dim + 1];
    for c in 0..n {
        let mut rem = c;
        for v in (0..dim).rev() {
            rows[v + 1][c] = (rem % per) as i64;
            rem /= per;
        }
    }
    let scaling = match scaling {
        Some(s) => {
            if s.len() != n {
                return Err(Error::ScalingLengthMismatch {
                    expected: n,
                    got: s.len(),
                });
            }
            s
        }
        None => vec![Rat::one(); n],
    };
    ScaledModel::new(
        IntMatrix::from_rows(&rows),
        scaling,
        format!("{dilation}-dilated {dim}-cube"),
    )
}

/// An undirected graph with a state count for each vertex.
#[derive(Clone, Debug)]
pub struct MarkedGraph {
    pub vertices: Vec<String>,
    pub edges: BTreeSet<(usize, usize)>,
    pub state_counts: Vec<u32>,
}

impl MarkedGraph {
    pub fn new(
        vertices: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
        state_counts: Vec<u32>,
    ) -> Result<Self, Error> {
        let n = vertices.len();
        if state_counts.len() != n {
            return Err(Error::LengthMismatch("one state count per vertex".into()));
        }
        if state_counts.iter().any(|&s| s < 2) {
            return Err(Error::Invalid(
                "every vertex needs at least two states".into(),
            ));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::Invalid(format!("bad edge ({a}, {b})")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(MarkedGraph {
            vertices,
            edges: set,
            state_counts,
        })
    }

    pub fn binary_cycle(len: usize) -> Self {
        let vertices: Vec<String> = (1..=len).map(|i| format!("X{i}")).collect();
        let edges = (0..len).map(|i| (i, (i + 1) % len));
        MarkedGraph::new(vertices, edges, vec![2; len]).expect("valid cycle")
    }

    fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    /// Maximal cliques by Bron-Kerbosch with pivoting; isolated vertices
    /// count as singleton cliques.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut r: Vec<usize> = Vec::new();
        let p: BTreeSet<usize> = (0..self.vertices.len()).collect();
        let x: BTreeSet<usize> = BTreeSet::new();
        bron_kerbosch(&adj, &mut r, p, x, &mut out);
        out.sort();
        out
    }

    /// Induced subgraph on the given vertices (indices into this graph).
    pub fn induced_subgraph(&self, keep: &[usize]) -> MarkedGraph {
        let vertices: Vec<String> = keep.iter().map(|&v| self.vertices[v].clone()).collect();
        let pos = |v: usize| keep.iter().position(|&u| u == v);
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| Some((pos(a)?, pos(b)?)))
            .collect();
        let state_counts: Vec<u32> = keep.iter().map(|&v| self.state_counts[v]).collect();
        MarkedGraph::new(vertices, edges, state_counts).expect("induced subgraph is valid")
    }
}

fn bron_kerbosch(
    adj: &[BTreeSet<usize>],
    r: &mut Vec<usize>,
    p: BTreeSet<usize>,
    x: BTreeSet<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        let mut clique = r.clone();
        clique.sort_unstable();
        out.push(clique);
        return;
    }
    let pivot = p
        .union(&x)
        .max_by_key(|v| adj[**v].intersection(&p).count())
        .copied()
        .expect("p or x nonempty");
    let candidates: Vec<usize> = p.difference(&adj[pivot]).copied().collect();
    let mut p = p;
    let mut x = x;
    for v in candidates {
        r.push(v);
        let np: BTreeSet<usize> = p.intersection(&adj[v]).copied().collect();
        let nx: BTreeSet<usize> = x.intersection(&adj[v]).copied().collect();
        bron_kerbosch(adj, r, np, nx, out);
        r.pop();
        p.remove(&v);
        x.insert(v);
    }
}

/// Design matrix of the discrete graphical model of a graph: the clique
/// parametrization matrix reduced to a canonical full-rank representative.
pub fn graphical_model_matrix(graph: &MarkedGraph) -> Result<ScaledModel, Error> {
    let nv = graph.vertices.len();
    if nv == 0 {
        return Err(Error::Invalid("empty graph".into()));
    }
    let cliques = graph.maximal_cliques();
    let n: usize = graph.state_counts.iter().map(|&s| s as usize).product();

    // joint states in lexicographic order, last vertex fastest
    let joint_state = |mut idx: usize| -> Vec<usize> {
        let mut state = vec![0usize; nv];
        for v in (0..nv).rev() {
            let s = graph.state_counts[v] as usize;
            state[v] = idx % s;
            idx /= s;
        }
        state
    };

    let mut rows: Vec<Vec<Int>> = Vec::new();
    for clique in &cliques {
        let combos: usize = clique
            .iter()
            .map(|&v| graph.state_counts[v] as usize)
            .product();
        for c in 0..combos {
            let mut assignment = Vec::with_capacity(clique.len());
            let mut rem = c;
            for &v in clique.iter().rev() {
                let s = graph.state_counts[v] as usize;
                assignment.push((v, rem % s));
                rem /= s;
            }
            let row: Vec<Int> = (0..n)
                .map(|col| {
                    let state = joint_state(col);
                    let hit = assignment.iter().all(|&(v, sv)| state[v] == sv);
                    if hit {
                        Int::one()
                    } else {
                        Int::zero()
                    }
                })
                .collect();
            rows.push(row);
        }
    }
    let raw = IntMatrix::from_int_rows(rows);
    let matrix = reduce_to_design_matrix(&raw)?;
    ScaledModel::new(
        matrix,
        vec![Rat::one(); n],
        format!("graphical model on {nv} vertices"),
    )
}

/// Allowed state pairs of a quasi-independence model.
#[derive(Clone, Debug)]
pub struct BipartiteSupport {
    pub m: usize,
    pub k: usize,
    /// zero-based pairs (i, j)
    pub pairs: BTreeSet<(usize, usize)>,
}

impl BipartiteSupport {
    pub fn new(
        m: usize,
        k: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, Error> {
        let pairs: BTreeSet<(usize, usize)> = pairs.into_iter().collect();
        if pairs.is_empty() {
            return Err(Error::Invalid("empty support".into()));
        }
        if pairs.iter().any(|&(i, j)| i >= m || j >= k) {
            return Err(Error::Invalid("support pair out of range".into()));
        }
        Ok(BipartiteSupport { m, k, pairs })
    }

    pub fn full(m: usize, k: usize) -> Self {
        BipartiteSupport::new(m, k, (0..m).flat_map(|i| (0..k).map(move |j| (i, j))))
            .expect("nonempty")
    }

    pub fn without_diagonal(m: usize) -> Self {
        BipartiteSupport::new(
            m,
            m,
            (0..m).flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j))),
        )
        .expect("nonempty")
    }
}

/// Design matrix of the quasi-independence model on a support set:
/// columns indexed by the allowed pairs in lexicographic order.
pub fn quasi_independence_matrix(support: &BipartiteSupport) -> Result<ScaledModel, Error> {
    let n = support.pairs.len();
    let mut rows: Vec<Vec<Int>> = vec![vec![Int::zero(); n]; support.m + support.k];
    for (col, &(i, j)) in support.pairs.iter().enumerate() {
        rows[i][col] = Int::one();
        rows[support.m + j][col] = Int::one();
    }
    let raw = IntMatrix::from_int_rows(rows);
    let matrix = reduce_to_design_matrix(&raw)?;
    ScaledModel::new(
        matrix,
        vec![Rat::one(); n],
        format!("quasi-independence on {n} pairs"),
    )
}

/// The facial submodel: restrict columns and scalings to the points on a
/// face and re-express the matrix in full-rank, lattice-index-one form.
pub fn facial_submodel(model: &ScaledModel, face: &FaceDescriptor) -> Result<ScaledModel, Error> {
    let config = model.config();
    // checks membership/tightness and returns the column labels
    let labels = crate::polytope::lattice_points_of_face(&config, face)?;
    let sub_rows: Vec<Vec<Int>> = (0..model.matrix.nrows())
        .map(|i| {
            labels
                .iter()
                .map(|&j| model.matrix.get(i, j).clone())
                .collect()
        })
        .collect();
    let raw = IntMatrix::from_int_rows(sub_rows);
    let matrix = reduce_to_design_matrix(&raw)?;
    let scaling: Vec<Rat> = labels.iter().map(|&j| model.scaling[j].clone()).collect();
    ScaledModel::new(
        matrix,
        scaling,
        format!("{}, face {:?}", model.provenance, labels),
    )
}

/// Remove the listed columns (a non-facial submodel). The remaining
/// columns must still affinely span.
pub fn delete_columns(model: &ScaledModel, idx: &[usize]) -> Result<ScaledModel, Error> {
    let drop: BTreeSet<usize> = idx.iter().copied().collect();
    if drop.iter().any(|&j| j >= model.n_cols()) {
        return Err(Error::Invalid("column index out of range".into()));
    }
    let keep: Vec<usize> = (0..model.n_cols()).filter(|j| !drop.contains(j)).collect();
    if keep.is_empty() {
        return Err(Error::SpanCollapse);
    }
    let sub_rows: Vec<Vec<Int>> = (0..model.matrix.nrows())
        .map(|i| {
            keep.iter()
                .map(|&j| model.matrix.get(i, j).clone())
                .collect()
        })
        .collect();
    let raw = IntMatrix::from_int_rows(sub_rows);
    if raw.rank() < model.matrix.nrows() {
        return Err(Error::SpanCollapse);
    }
    let matrix = reduce_to_design_matrix(&raw)?;
    let scaling: Vec<Rat> = keep.iter().map(|&j| model.scaling[j].clone()).collect();
    ScaledModel::new(
        matrix,
        scaling,
        format!("{}, columns {:?} deleted", model.provenance, idx),
    )
}

/// Seeded random valid model for property tests: distinct lattice points
/// in a small box, saturated to a proper design matrix, with small random
/// positive scalings.
pub fn random_model(dim: usize, max_cols: usize, rng: &mut Rng) -> ScaledModel {
    assert!(dim >= 1 && max_cols >= dim + 1);
    loop {
        let n = rng.int_in((dim + 1) as i64, max_cols as i64) as usize;
        let mut points: BTreeSet<Vec<i64>> = BTreeSet::new();
        for _ in 0..n {
            points.insert((0..dim).map(|_| rng.int_in(0, 3)).collect());
        }
        let points: Vec<Vec<i64>> = points.into_iter().collect();
        if points.len() < dim + 1 {
            continue;
        }
        let mut rows: Vec<Vec<i64>> = vec![vec![1; points.len()]];
        for v in 0..dim {
            rows.push(points.iter().map(|p| p[v]).collect());
        }
        let raw = IntMatrix::from_rows(&rows);
        if raw.rank() < dim + 1 {
            continue;
        }
        let matrix = match reduce_to_design_matrix(&raw) {
            Ok(m) => m,
            Err(_) => continue,
        };
        let scaling: Vec<Rat> = (0..points.len()).map(|_| rat(rng.int_in(1, 5))).collect();
        return ScaledModel::new(matrix, scaling, "random model")
            .expect("reduction produces a valid design matrix");
    }
}

fn default_schema_version() -> u32 {
    1
}

/// JSON model description consumed by the command line tools.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelSpec {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    #[serde(flatten)]
    pub kind: ModelKind,
    pub scaling: ScalingSpec,
    /// Optional flag of faces, outermost first, as 1-based column index
    /// sets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<Vec<Vec<usize>>>,
    /// Optional tropical degeneration data.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tropical: Option<TropicalSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ModelKind {
    Independence {
        m: usize,
        k: usize,
    },
    Cube {
        dim: usize,
        dilation: u32,
    },
    Graphical {
        state_counts: Vec<u32>,
        /// 1-based vertex pairs
        edges: Vec<(usize, usize)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vertices: Option<Vec<String>>,
    },
    QuasiIndependence {
        m: usize,
        k: usize,
        /// 1-based state pairs
        support: Vec<(usize, usize)>,
    },
    Explicit {
        matrix: Vec<Vec<i64>>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalingSpec {
    /// "ones", "c1".."c6", or "generic" (seeded random integers)
    Named(String),
    List(Vec<String>),
}

/// Tropical degeneration block of a model spec. Column indices are
/// 1-based; weight maps are keyed by column index rendered as a string.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TropicalSpec {
    pub face: Vec<usize>,
    pub monomial_weights: std::collections::BTreeMap<String, String>,
    pub data_weights: std::collections::BTreeMap<String, String>,
    pub data: Vec<String>,
    /// variable index kept by the eliminant (0 is the homogenizing one)
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub keep: Option<usize>,
    /// lex priority for the eliminant, most significant first
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
}

impl ModelSpec {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let spec: ModelSpec =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("bad spec: {e}")))?;
        if spec.schema_version != 1 {
            return Err(Error::Invalid(format!(
                "unsupported schema_version {}",
                spec.schema_version
            )));
        }
        Ok(spec)
    }

    /// Build the model; `seed` feeds the "generic" scaling preset.
    pub fn to_model(&self, seed: u64) -> Result<ScaledModel, Error> {
        let base = match &self.kind {
            ModelKind::Independence { m, k } => independence_model(*m, *k)?,
            ModelKind::Cube { dim, dilation } => dilated_cube_model(*dim, *dilation, None)?,
            ModelKind::Graphical {
                state_counts,
                edges,
                vertices,
            } => {
                let nv = state_counts.len();
                let names = match vertices {
                    Some(v) => v.clone(),
                    None => (1..=nv).map(|i| format!("X{i}")).collect(),
                };
                let zero_based = edges
                    .iter()
                    .map(|&(a, b)| {
                        if a == 0 || b == 0 || a > nv || b > nv {
                            Err(Error::Invalid(format!("bad edge ({a}, {b})")))
                        } else {
                            Ok((a - 1, b - 1))
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let graph = MarkedGraph::new(names, zero_based, state_counts.clone())?;
                graphical_model_matrix(&graph)?
            }
            ModelKind::QuasiIndependence { m, k, support } => {
                let zero_based = support
                    .iter()
                    .map(|&(i, j)| {
                        if i == 0 || j == 0 || i > *m || j > *k {
                            Err(Error::Invalid(format!("bad support pair ({i}, {j})")))
                        } else {
                            Ok((i - 1, j - 1))
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                quasi_independence_matrix(&BipartiteSupport::new(*m, *k, zero_based)?)?
            }
            ModelKind::Explicit { matrix } => {
                let m = IntMatrix::from_rows(matrix);
                let n = m.ncols();
                ScaledModel::new(m, vec![Rat::one(); n], "explicit matrix")?
            }
        };
        let n = base.n_cols();
        let scaling = match &self.scaling {
            ScalingSpec::Named(name) if name == "generic" => {
                let mut rng = Rng::derive(seed, "generic scaling");
                (0..n).map(|_| rat(rng.int_in(1, 10_000))).collect()
            }
            ScalingSpec::Named(name) => scaling_preset(name, n).ok_or_else(|| {
                Error::Invalid(format!("unknown scaling preset {name:?} for {n} columns"))
            })?,
            ScalingSpec::List(entries) => {
                if entries.len() != n {
                    return Err(Error::ScalingLengthMismatch {
                        expected: n,
                        got: entries.len(),
                    });
                }
                entries
                    .iter()
                    .map(|s| parse_rat(s))
                    .collect::<Result<Vec<_>, _>>()?
            }
        };
        ScaledModel::new(base.matrix, scaling, base.provenance)
    }
}

/// A published full-rank binary four-cycle design matrix, used as a
/// cross-check for the graphical constructor (same row lattice, possibly a
/// different basis) and as the base of the flag computations.
pub fn binary_four_cycle_reference() -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
        vec![0, 1, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 1, 1, 1],
        vec![0, 0, 1, 0, 0, 0, 1, 1, 1, 1, 0, 1, 0, 1, 0, 1],
        vec![0, 0, 0, 1, 1, 0, 0, 0, 1, 1, 1, 1, 0, 0, 1, 1],
        vec![0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1, 1, 1, 1, 1],
        vec![0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 1],
        vec![0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0, 0, 0, 1],
        vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1],
        vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};

    #[test]
    fn independence_three_by_three_matrix() {
        let m = independence_model(3, 3).unwrap();
        let expected = IntMatrix::from_rows(&[
            vec![1, 1, 1, 1, 1, 1, 1, 1, 1],
            vec![1, 1, 1, 0, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 1, 1, 1, 0, 0, 0],
            vec![1, 0, 0, 1, 0, 0, 1, 0, 0],
            vec![0, 1, 0, 0, 1, 0, 0, 1, 0],
        ]);
        assert_eq!(m.matrix, expected);
        assert!(validate_design_matrix(&m.matrix).all_pass());
    }

    #[test]
    fn cube_model_columns_are_lattice_points() {
        let m = dilated_cube_model(3, 2, None).unwrap();
        assert_eq!(m.n_cols(), 27);
        assert_eq!(m.dim(), 3);
        assert!(validate_design_matrix(&m.matrix).all_pass());
        // first and last columns in lexicographic order
        assert_eq!(m.matrix.col(0)[1..].to_vec(), vec![int(0), int(0), int(0)]);
        assert_eq!(m.matrix.col(26)[1..].to_vec(), vec![int(2), int(2), int(2)]);
        // segment special case
        let seg = dilated_cube_model(1, 1, None).unwrap();
        assert_eq!(seg.matrix, IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]));
    }

    #[test]
    fn scaled_square_accepts_the_symmetric_scaling() {
        let c: Vec<Rat> = [1, 2, 1, 2, 4, 2, 1, 2, 1]
            .iter()
            .map(|&x| rat(x))
            .collect();
        let m = dilated_cube_model(2, 2, Some(c)).unwrap();
        assert_eq!(m.n_cols(), 9);
        assert!(matches!(
            dilated_cube_model(2, 2, Some(vec![rat(1); 4])),
            Err(Error::ScalingLengthMismatch { .. })
        ));
    }

    #[test]
    fn four_cycle_cliques_are_edges() {
        let g = MarkedGraph::binary_cycle(4);
        let cliques = g.maximal_cliques();
        assert_eq!(
            cliques,
            vec![vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]
        );
    }

    #[test]
    fn triangle_has_one_clique() {
        let g = MarkedGraph::new(
            vec!["a".into(), "b".into(), "c".into()],
            [(0, 1), (1, 2), (0, 2)],
            vec![2, 2, 2],
        )
        .unwrap();
        assert_eq!(g.maximal_cliques(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn four_cycle_matrix_has_reference_row_lattice() {
        let m = graphical_model_matrix(&MarkedGraph::binary_cycle(4)).unwrap();
        assert_eq!(m.matrix.nrows(), 9);
        assert_eq!(m.n_cols(), 16);
        assert!(validate_design_matrix(&m.matrix).all_pass());
        let reference = binary_four_cycle_reference();
        assert!(validate_design_matrix(&reference).all_pass());
        // the reference orders the joint states differently: rows 1..4 are
        // the per-vertex indicators, so the state of each column can be
        // read off and used to align the two column orders
        let perm: Vec<usize> = (0..16)
            .map(|j| {
                let state: usize = (0..4)
                    .map(|v| {
                        let bit = reference.get(v + 1, j).clone();
                        (if bit.is_one() { 1usize } else { 0 }) << (3 - v)
                    })
                    .sum();
                state
            })
            .collect();
        // column of my matrix for joint state s (last vertex fastest) is s
        let mine_rows: Vec<Vec<Int>> = (0..9)
            .map(|i| perm.iter().map(|&s| m.matrix.get(i, s).clone()).collect())
            .collect();
        let mine_permuted = IntMatrix::from_int_rows(mine_rows);
        assert_eq!(mine_permuted.hnf_rows(), reference.hnf_rows());
    }

    #[test]
    fn quasi_independence_full_support_is_independence() {
        let q = quasi_independence_matrix(&BipartiteSupport::full(2, 2)).unwrap();
        let ind = independence_model(2, 2).unwrap();
        assert_eq!(q.matrix.hnf_rows(), ind.matrix.hnf_rows());
    }

    #[test]
    fn edgeless_graphical_is_independence() {
        // two isolated vertices: cliques are the singletons, giving the
        // independence model; a single edge would give the saturated model
        let g = MarkedGraph::new(vec!["a".into(), "b".into()], [], vec![2, 2]).unwrap();
        let m = graphical_model_matrix(&g).unwrap();
        let ind = independence_model(2, 2).unwrap();
        assert_eq!(m.matrix.hnf_rows(), ind.matrix.hnf_rows());
        let full = MarkedGraph::new(vec!["a".into(), "b".into()], [(0, 1)], vec![2, 2]).unwrap();
        let sat = graphical_model_matrix(&full).unwrap();
        assert_eq!(sat.dim(), 3);
    }

    #[test]
    fn deleting_columns_checks_span() {
        let m = dilated_cube_model(2, 2, None).unwrap();
        let m2 = delete_columns(&m, &[8]).unwrap();
        assert_eq!(m2.n_cols(), 8);
        assert!(validate_design_matrix(&m2.matrix).all_pass());
        let id = delete_columns(&m, &[]).unwrap();
        assert_eq!(id.matrix, m.matrix);
        // removing everything but a segment collapses the span
        let seg = delete_columns(&m, &[2, 3, 4, 5, 6, 7, 8]);
        assert!(matches!(seg, Err(Error::SpanCollapse)));
    }

    #[test]
    fn random_models_validate() {
        let mut rng = Rng::new(9);
        for _ in 0..20 {
            let dim = rng.int_in(1, 3) as usize;
            let m = random_model(dim, 12, &mut rng);
            assert!(validate_design_matrix(&m.matrix).all_pass());
            assert!(m.n_cols() <= 12);
        }
    }

    #[test]
    fn model_spec_round_trip() {
        let text = r#"{
            "schema_version": 1,
            "type": "cube",
            "dim": 3,
            "dilation": 2,
            "scaling": "ones"
        }"#;
        let spec = ModelSpec::from_json(text).unwrap();
        let model = spec.to_model(0).unwrap();
        assert_eq!(model.matrix, dilated_cube_model(3, 2, None).unwrap().matrix);

        let text = r#"{"type": "independence", "m": 3, "k": 3, "scaling": "c4"}"#;
        let model = ModelSpec::from_json(text).unwrap().to_model(0).unwrap();
        assert_eq!(model.scaling[4], rat(2));
        assert_eq!(model.scaling[8], rat(1));

        let text = r#"{"type": "explicit", "matrix": [[1,1],[0,1]], "scaling": ["1", "3/2"]}"#;
        let model = ModelSpec::from_json(text).unwrap().to_model(0).unwrap();
        assert_eq!(model.scaling[1], ratio(3, 2));
    }

    #[test]
    fn facial_submodel_of_cube_facet() {
        let m = dilated_cube_model(3, 2, None).unwrap();
        let faces = crate::polytope::face_lattice(&m.config()).unwrap();
        let facet = faces.iter().find(|f| f.dim == 2 && !f.is_full()).unwrap();
        let sub = facial_submodel(&m, facet).unwrap();
        assert_eq!(sub.n_cols(), 9);
        assert_eq!(sub.dim(), 2);
        assert!(validate_design_matrix(&sub.matrix).all_pass());
        // the facet is a two-dilated square in its own lattice
        assert_eq!(
            crate::polytope::normalized_volume(&sub.config()).unwrap(),
            int(8)
        );
    }
}
