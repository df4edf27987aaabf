//! Decorated divisor graphs, intersection matrices and exact inertia.
//!
//! A divisor `D = C_1 ∪ … ∪ C_k` is encoded as a connected decorated
//! multigraph: one vertex per component carrying `(genus, self_intersection)`,
//! one edge per transverse intersection point. Loops are forbidden.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{parse_rational, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexData {
    pub id: String,
    pub genus: u32,
    pub self_intersection: i64,
}

/// Raw, unvalidated graph description as found in input files.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawGraph {
    pub vertices: Vec<RawVertex>,
    pub edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub areas: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawVertex {
    pub id: String,
    pub genus: i64,
    pub self_intersection: i64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateId(String),
    #[error("edge joins vertex `{0}` to itself")]
    LoopEdge(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge refers to unknown vertex `{0}`")]
    UnknownVertexInEdge(String),
    #[error("vertex `{0}` has negative genus {1}")]
    NegativeGenus(String, i64),
    #[error("graph has no vertices")]
    Empty,
    #[error("area for vertex `{0}` is not positive")]
    NonPositiveArea(String),
    #[error("missing area for vertex `{0}`")]
    MissingArea(String),
    #[error("bad rational `{0}`")]
    BadRational(String),
}

/// A validated decorated multigraph. Edges are stored as index pairs
/// `(i, j)` with `i < j`, in input order; parallel edges are kept separate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedGraph {
    vertices: Vec<VertexData>,
    edges: Vec<(usize, usize)>,
}

impl DecoratedGraph {
    /// Validate a raw description into a `DecoratedGraph`.
    pub fn validate(raw: &RawGraph) -> Result<Self, GraphError> {
        if raw.vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut index: HashMap<&str, usize> = HashMap::new();
        for (i, v) in raw.vertices.iter().enumerate() {
            if v.genus < 0 {
                return Err(GraphError::NegativeGenus(v.id.clone(), v.genus));
            }
            if index.insert(v.id.as_str(), i).is_some() {
                return Err(GraphError::DuplicateId(v.id.clone()));
            }
        }
        let mut edges = Vec::with_capacity(raw.edges.len());
        for (a, b) in &raw.edges {
            let ia = *index
                .get(a.as_str())
                .ok_or_else(|| GraphError::UnknownVertexInEdge(a.clone()))?;
            let ib = *index
                .get(b.as_str())
                .ok_or_else(|| GraphError::UnknownVertexInEdge(b.clone()))?;
            if ia == ib {
                return Err(GraphError::LoopEdge(a.clone()));
            }
            edges.push((ia.min(ib), ia.max(ib)));
        }
        let vertices: Vec<VertexData> = raw
            .vertices
            .iter()
            .map(|v| VertexData {
                id: v.id.clone(),
                genus: v.genus as u32,
                self_intersection: v.self_intersection,
            })
            .collect();
        let g = DecoratedGraph { vertices, edges };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Build directly from parts; used by the move operations, which keep
    /// all invariants by construction.
    pub(crate) fn from_parts(
        vertices: Vec<VertexData>,
        edges: Vec<(usize, usize)>,
    ) -> Self {
        let edges = edges
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        DecoratedGraph { vertices, edges }
    }

    pub fn vertices(&self) -> &[VertexData] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    /// Valence of a vertex; each parallel edge counts separately.
    pub fn valence(&self, i: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == i || b == i)
            .count()
    }

    /// Edge indices incident to vertex `i`, in input order.
    pub fn incident_edges(&self, i: usize) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == i || b == i)
            .map(|(k, _)| k)
            .collect()
    }

    /// The endpoint of edge `e` opposite to vertex `i`.
    pub fn other_endpoint(&self, e: usize, i: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == i {
            b
        } else {
            a
        }
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &(a, b) in &self.edges {
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    /// `s_i + d_i` for each vertex, the degree pairing `D · C_i`.
    pub fn degrees(&self) -> Vec<i64> {
        (0..self.vertices.len())
            .map(|i| self.vertices[i].self_intersection + self.valence(i) as i64)
            .collect()
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph {
            vertices: self
                .vertices
                .iter()
                .map(|v| RawVertex {
                    id: v.id.clone(),
                    genus: v.genus as i64,
                    self_intersection: v.self_intersection,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| (self.vertices[a].id.clone(), self.vertices[b].id.clone()))
                .collect(),
            areas: None,
        }
    }
}

/// A divisor graph together with a positive exact-rational area per vertex
/// and an optional witness `z` with `Q·z = a`.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedGraph {
    pub graph: DecoratedGraph,
    pub area: Vec<Rational>,
    pub witness: Option<Vec<Rational>>,
}

impl AugmentedGraph {
    pub fn new(
        graph: DecoratedGraph,
        area: Vec<Rational>,
        witness: Option<Vec<Rational>>,
    ) -> Result<Self, GraphError> {
        for (i, a) in area.iter().enumerate() {
            if !a.is_positive() {
                return Err(GraphError::NonPositiveArea(graph.vertices()[i].id.clone()));
            }
        }
        let ag = AugmentedGraph {
            graph,
            area,
            witness,
        };
        debug_assert!(ag.witness_consistent());
        Ok(ag)
    }

    pub fn from_raw(raw: &RawGraph) -> Result<Self, GraphError> {
        let graph = DecoratedGraph::validate(raw)?;
        let areas = raw.areas.as_ref().ok_or_else(|| {
            GraphError::MissingArea(graph.vertices()[0].id.clone())
        })?;
        let mut area = Vec::with_capacity(graph.vertex_count());
        for v in graph.vertices() {
            let s = areas
                .get(&v.id)
                .ok_or_else(|| GraphError::MissingArea(v.id.clone()))?;
            let r =
                parse_rational(s).map_err(|_| GraphError::BadRational(s.clone()))?;
            area.push(r);
        }
        AugmentedGraph::new(graph, area, None)
    }

    /// `Q·z = a` holds exactly, whenever a witness is present.
    pub fn witness_consistent(&self) -> bool {
        match &self.witness {
            None => true,
            Some(z) => {
                let q = intersection_matrix(&self.graph);
                q.apply(z) == self.area
            }
        }
    }
}

/// Symmetric integer matrix; diagonal holds self-intersections,
/// off-diagonal entries count intersection points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricIntMatrix {
    dim: usize,
    entries: Vec<i64>, // row-major
}

impl SymmetricIntMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for r in rows {
            assert_eq!(r.len(), dim, "matrix must be square");
            entries.extend_from_slice(r);
        }
        let m = SymmetricIntMatrix { dim, entries };
        for i in 0..dim {
            for j in 0..i {
                assert_eq!(m.get(i, j), m.get(j, i), "matrix must be symmetric");
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Exact matrix-vector product over the rationals.
    pub fn apply(&self, z: &[Rational]) -> Vec<Rational> {
        assert_eq!(z.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| rat(self.get(i, j)) * &z[j])
                    .sum::<Rational>()
            })
            .collect()
    }
}

/// Signature data of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    pub b_plus: usize,
    pub b_zero: usize,
    pub b_minus: usize,
}

/// Sign classification of a divisor by the values `s_i + d_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignClass {
    NonNegative,
    NonPositive,
    Positive,
    Negative,
    Mixed,
    Zero,
}

/// Intersection matrix `Q_D`: `Q_ii = s_i`, `Q_ij` = edge multiplicity.
pub fn intersection_matrix(g: &DecoratedGraph) -> SymmetricIntMatrix {
    let n = g.vertex_count();
    let mut entries = vec![0i64; n * n];
    for (i, v) in g.vertices().iter().enumerate() {
        entries[i * n + i] = v.self_intersection;
    }
    for &(a, b) in g.edges() {
        entries[a * n + b] += 1;
        entries[b * n + a] += 1;
    }
    SymmetricIntMatrix { dim: n, entries }
}

/// Inertia by exact symmetric congruence reduction over the rationals.
///
/// Pivot on a nonzero diagonal entry; if the remaining diagonal is zero but
/// some off-diagonal entry `a_ij` is not, add row and column `j` into `i`
/// first. This is a congruence, so the signs are those of the eigenvalues.
pub fn inertia(m: &SymmetricIntMatrix) -> Inertia {
    let n = m.dim;
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| rat(m.get(i, j))).collect())
        .collect();
    let mut b_plus = 0;
    let mut b_minus = 0;
    let mut b_zero = 0;
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        // find a nonzero diagonal pivot among active rows
        let pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // all active diagonal entries are zero; look for a_ij != 0
                let mut found = None;
                'search: for (x, &i) in active.iter().enumerate() {
                    for &j in &active[x + 1..] {
                        if !a[i][j].is_zero() {
                            found = Some((i, j));
                            break 'search;
                        }
                    }
                }
                match found {
                    None => {
                        b_zero += active.len();
                        break;
                    }
                    Some((i, j)) => {
                        // add row then column j into i; a_ii becomes 2*a_ij
                        for &k in &active {
                            let t = a[j][k].clone();
                            a[i][k] += t;
                        }
                        for &k in &active {
                            let t = a[k][j].clone();
                            a[k][i] += t;
                        }
                        i
                    }
                }
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            b_plus += 1;
        } else {
            b_minus += 1;
        }
        active.retain(|&i| i != p);
        // congruence step on the active block: a_ij -= a_ip * a_jp / d
        let col: Vec<(usize, Rational)> =
            active.iter().map(|&i| (i, a[i][p].clone())).collect();
        for (i, fi) in &col {
            if fi.is_zero() {
                continue;
            }
            for (j, fj) in &col {
                let t = fi * fj / &d;
                a[*i][*j] -= t;
            }
        }
    }
    Inertia {
        b_plus,
        b_zero,
        b_minus,
    }
}

/// Classify by the signs of `s_i + d_i`.
pub fn sign_class(g: &DecoratedGraph) -> SignClass {
    let t = g.degrees();
    let all_pos = t.iter().all(|&x| x > 0);
    let all_neg = t.iter().all(|&x| x < 0);
    let all_ge = t.iter().all(|&x| x >= 0);
    let all_le = t.iter().all(|&x| x <= 0);
    let all_zero = t.iter().all(|&x| x == 0);
    if all_zero {
        SignClass::Zero
    } else if all_pos {
        SignClass::Positive
    } else if all_neg {
        SignClass::Negative
    } else if all_ge {
        SignClass::NonNegative
    } else if all_le {
        SignClass::NonPositive
    } else {
        SignClass::Mixed
    }
}

/// If the graph is a cycle of spheres, return the vertex indices in cyclic
/// order. Length 2 requires a double edge; length 1 is rejected.
pub fn is_circular_spherical(g: &DecoratedGraph) -> Option<Vec<usize>> {
    if g.vertices().iter().any(|v| v.genus != 0) {
        return None;
    }
    let n = g.vertex_count();
    match n {
        0 | 1 => None,
        2 => {
            if g.edge_count() == 2 {
                Some(vec![0, 1])
            } else {
                None
            }
        }
        _ => {
            if g.edge_count() != n {
                return None;
            }
            if (0..n).any(|i| g.valence(i) != 2) {
                return None;
            }
            // connected with all valences 2: a single simple cycle; walk it
            let mut order = vec![0usize];
            let mut prev_edge = usize::MAX;
            let mut cur = 0usize;
            loop {
                let next_edge = g
                    .incident_edges(cur)
                    .into_iter()
                    .find(|&e| e != prev_edge)?;
                let nxt = g.other_endpoint(next_edge, cur);
                if nxt == 0 {
                    break;
                }
                order.push(nxt);
                prev_edge = next_edge;
                cur = nxt;
            }
            if order.len() == n {
                Some(order)
            } else {
                None
            }
        }
    }
}

/// Self-intersections along a circular order, e.g. `[n, 0]`.
pub fn circular_self_intersections(g: &DecoratedGraph, order: &[usize]) -> Vec<i64> {
    order
        .iter()
        .map(|&i| g.vertices()[i].self_intersection)
        .collect()
}

/// Build the cycle graph for a sphere sequence `(s_1, …, s_l)`, `l ≥ 2`.
pub fn cycle_graph(s: &[i64]) -> Result<DecoratedGraph, GraphError> {
    let l = s.len();
    if l < 2 {
        return Err(GraphError::Empty);
    }
    let vertices: Vec<VertexData> = s
        .iter()
        .enumerate()
        .map(|(i, &si)| VertexData {
            id: format!("v{}", i + 1),
            genus: 0,
            self_intersection: si,
        })
        .collect();
    let edges: Vec<(usize, usize)> = (0..l).map(|i| (i, (i + 1) % l)).collect();
    Ok(DecoratedGraph::from_parts(vertices, edges))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn raw(vs: &[(&str, i64, i64)], es: &[(&str, &str)]) -> RawGraph {
        RawGraph {
            vertices: vs
                .iter()
                .map(|&(id, g, s)| RawVertex {
                    id: id.to_string(),
                    genus: g,
                    self_intersection: s,
                })
                .collect(),
            edges: es
                .iter()
                .map(|&(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            areas: None,
        }
    }

    pub(crate) fn triangle() -> DecoratedGraph {
        // the (1,1), (-2,0), (2,2) triangle
        DecoratedGraph::validate(&raw(
            &[("v1", 1, 1), ("v2", 0, -2), ("v3", 2, 2)],
            &[("v1", "v2"), ("v2", "v3"), ("v1", "v3")],
        ))
        .unwrap()
    }

    #[test]
    fn validates_single_sphere() {
        let g = DecoratedGraph::validate(&raw(&[("v1", 0, 1)], &[])).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(sign_class(&g), SignClass::Positive);
    }

    #[test]
    fn rejects_unknown_vertex_in_edge() {
        let e = DecoratedGraph::validate(&raw(
            &[("v1", 0, 1), ("v2", 0, 2)],
            &[("v1", "v9")],
        ))
        .unwrap_err();
        assert_eq!(e, GraphError::UnknownVertexInEdge("v9".into()));
    }

    #[test]
    fn rejects_disconnected() {
        let e =
            DecoratedGraph::validate(&raw(&[("v1", 0, 1), ("v2", 0, 2)], &[])).unwrap_err();
        assert_eq!(e, GraphError::Disconnected);
    }

    #[test]
    fn rejects_loop_and_duplicate_and_negative_genus() {
        assert_eq!(
            DecoratedGraph::validate(&raw(&[("v1", 0, 1)], &[("v1", "v1")]))
                .unwrap_err(),
            GraphError::LoopEdge("v1".into())
        );
        assert_eq!(
            DecoratedGraph::validate(&raw(&[("v1", 0, 1), ("v1", 0, 2)], &[]))
                .unwrap_err(),
            GraphError::DuplicateId("v1".into())
        );
        assert_eq!(
            DecoratedGraph::validate(&raw(&[("v1", -1, 1)], &[])).unwrap_err(),
            GraphError::NegativeGenus("v1".into(), -1)
        );
    }

    #[test]
    fn intersection_matrix_examples() {
        // chain of spheres s=1 and s=2 joined by an edge
        let g = DecoratedGraph::validate(&raw(
            &[("v1", 0, 1), ("v2", 0, 2)],
            &[("v1", "v2")],
        ))
        .unwrap();
        assert_eq!(intersection_matrix(&g).rows(), vec![vec![1, 1], vec![1, 2]]);

        let c = cycle_graph(&[0, 0]).unwrap();
        assert_eq!(intersection_matrix(&c).rows(), vec![vec![0, 2], vec![2, 0]]);

        let t = triangle();
        assert_eq!(
            intersection_matrix(&t).rows(),
            vec![vec![1, 1, 1], vec![1, -2, 1], vec![1, 1, 2]]
        );
    }

    #[test]
    fn inertia_examples() {
        let i1 = inertia(&SymmetricIntMatrix::from_rows(&[vec![1]]));
        assert_eq!(
            i1,
            Inertia {
                b_plus: 1,
                b_zero: 0,
                b_minus: 0
            }
        );
        let i2 = inertia(&SymmetricIntMatrix::from_rows(&[vec![1, 1], vec![1, 2]]));
        assert_eq!(
            i2,
            Inertia {
                b_plus: 2,
                b_zero: 0,
                b_minus: 0
            }
        );
        let i3 = inertia(&SymmetricIntMatrix::from_rows(&[vec![0, 2], vec![2, 0]]));
        assert_eq!(
            i3,
            Inertia {
                b_plus: 1,
                b_zero: 0,
                b_minus: 1
            }
        );
    }

    #[test]
    fn inertia_handles_zero_and_degenerate() {
        let z = inertia(&SymmetricIntMatrix::from_rows(&[vec![0, 0], vec![0, 0]]));
        assert_eq!(z.b_zero, 2);
        // rank-1 PSD matrix
        let d = inertia(&SymmetricIntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]));
        assert_eq!(
            d,
            Inertia {
                b_plus: 1,
                b_zero: 1,
                b_minus: 0
            }
        );
    }

    #[test]
    fn sign_class_examples() {
        assert_eq!(sign_class(&triangle()), SignClass::NonNegative);
        let neg = DecoratedGraph::validate(&raw(&[("v1", 0, -3)], &[])).unwrap();
        assert_eq!(sign_class(&neg), SignClass::Negative);
        assert_eq!(sign_class(&cycle_graph(&[0, 0]).unwrap()), SignClass::Positive);
        assert_eq!(
            sign_class(&cycle_graph(&[-2, -2]).unwrap()),
            SignClass::Zero
        );
        assert_eq!(
            sign_class(&cycle_graph(&[-2, 1]).unwrap()),
            SignClass::NonNegative
        );
        assert_eq!(
            sign_class(&cycle_graph(&[-3, 1]).unwrap()),
            SignClass::Mixed
        );
    }

    #[test]
    fn circular_detection() {
        let c = cycle_graph(&[5, 0]).unwrap();
        let order = is_circular_spherical(&c).unwrap();
        assert_eq!(circular_self_intersections(&c, &order), vec![5, 0]);

        // genus obstruction
        let mut t = triangle();
        assert!(is_circular_spherical(&t).is_none());
        t = cycle_graph(&[1, 2, 3]).unwrap();
        assert!(is_circular_spherical(&t).is_some());

        // linear chain of three spheres has endpoints of valence 1
        let chain = DecoratedGraph::validate(&raw(
            &[("v1", 0, 0), ("v2", 0, 0), ("v3", 0, 0)],
            &[("v1", "v2"), ("v2", "v3")],
        ))
        .unwrap();
        assert!(is_circular_spherical(&chain).is_none());

        // single vertex rejected
        let single = DecoratedGraph::validate(&raw(&[("v1", 0, 1)], &[])).unwrap();
        assert!(is_circular_spherical(&single).is_none());
    }

    #[test]
    fn degree_sum_identity() {
        let g = triangle();
        let sum: i64 = g.degrees().iter().sum();
        let s_sum: i64 = g.vertices().iter().map(|v| v.self_intersection).sum();
        assert_eq!(sum, s_sum + 2 * g.edge_count() as i64);
    }
}
