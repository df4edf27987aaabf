//! Open book decompositions supported on the plumbing boundary, read off
//! combinatorially from the divisor graph: for the concave side each
//! vertex contributes `s_i + d_i` boundary-parallel positive twists and
//! each edge one negative twist along a connect-sum neck; the convex side
//! mirrors this with `-s_i - d_i` boundary components per vertex.

use std::collections::BTreeMap;
use thiserror::Error;

use crate::graph::{sign_class, DecoratedGraph, SignClass};
use crate::gs::GsMode;

pub type Side = GsMode;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OpenBookError {
    #[error("divisor sign class {0:?} is incompatible with the requested {1:?} side")]
    SideMismatch(SignClass, Side),
    #[error("stored page data is inconsistent")]
    InconsistentPage,
}

/// A choice of `s_{i,e}` meeting the side's positivity constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistDistribution {
    pub side: Side,
    /// keyed by `(vertex index, edge index)`
    pub values: BTreeMap<(usize, usize), i64>,
}

impl TwistDistribution {
    /// `q_{i,e} = s_{i,e} + 1` (concave side).
    pub fn q(&self, key: (usize, usize)) -> i64 {
        self.values[&key] + 1
    }

    /// `p_{i,e} = -s_{i,e} - 1` (convex side).
    pub fn p(&self, key: (usize, usize)) -> i64 {
        -self.values[&key] - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Curve {
    /// `γ_e`: circle around the connect-sum neck of an edge.
    Neck { edge: usize },
    /// `δ`: curve parallel to a boundary component of a vertex page.
    Boundary { vertex: usize, index: usize },
}

impl Curve {
    /// Text form used in CLI output: `g:e1` for necks, `d:v1:1` for
    /// boundary curves.
    pub fn display(&self, g: &DecoratedGraph) -> String {
        match *self {
            Curve::Neck { edge } => format!("g:e{}", edge + 1),
            Curve::Boundary { vertex, index } => {
                format!("d:{}:{}", g.vertices()[vertex].id, index + 1)
            }
        }
    }
}

/// Abstract page plus ordered signed monodromy word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenBookDescription {
    pub side: Side,
    pub page_genus: u64,
    /// number of binding components, `q`
    pub binding_count: u64,
    pub neck_curves: Vec<Curve>,
    pub boundary_curves: Vec<Curve>,
    /// `l` negative neck twists followed by `q` positive boundary twists
    pub monodromy: Vec<(Curve, i8)>,
    /// per-vertex `(genus, boundary component count)` for consistency checks
    pub vertex_pages: Vec<(u32, u64)>,
}

/// Deterministic twist choice: within each vertex the first incident edge
/// absorbs `s_i + d_i - 1` and every other edge gets `-1`.
pub fn distribute_twists(
    g: &DecoratedGraph,
    side: Side,
) -> Result<TwistDistribution, OpenBookError> {
    let class = sign_class(g);
    let ok = match side {
        Side::Concave => matches!(class, SignClass::NonNegative | SignClass::Positive),
        Side::Convex => matches!(
            class,
            SignClass::NonPositive | SignClass::Negative | SignClass::Zero
        ),
    };
    if !ok {
        return Err(OpenBookError::SideMismatch(class, side));
    }
    let mut values = BTreeMap::new();
    for (i, v) in g.vertices().iter().enumerate() {
        let incident = g.incident_edges(i);
        let d = incident.len() as i64;
        for (k, &e) in incident.iter().enumerate() {
            let s = if k == 0 {
                v.self_intersection + d - 1
            } else {
                -1
            };
            values.insert((i, e), s);
        }
    }
    let dist = TwistDistribution { side, values };
    debug_assert!(twist_invariants_hold(g, &dist));
    Ok(dist)
}

fn twist_invariants_hold(g: &DecoratedGraph, dist: &TwistDistribution) -> bool {
    for (i, v) in g.vertices().iter().enumerate() {
        let incident = g.incident_edges(i);
        if incident.is_empty() {
            continue;
        }
        let sum: i64 = incident.iter().map(|&e| dist.values[&(i, e)]).sum();
        if sum != v.self_intersection {
            return false;
        }
        for &e in &incident {
            let ok = match dist.side {
                Side::Concave => dist.q((i, e)) >= 0,
                Side::Convex => dist.p((i, e)) >= 0,
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Boundary components contributed by vertex `i` on the given side.
fn boundary_count(g: &DecoratedGraph, i: usize, side: Side) -> i64 {
    let t = g.vertices()[i].self_intersection + g.valence(i) as i64;
    match side {
        Side::Concave => t,
        Side::Convex => -t,
    }
}

/// Page and monodromy of the supporting open book.
pub fn build_open_book(
    g: &DecoratedGraph,
    side: Side,
) -> Result<OpenBookDescription, OpenBookError> {
    let dist = distribute_twists(g, side)?;
    let l = g.edge_count();
    let sum_genus: u64 = g.vertices().iter().map(|v| v.genus as u64).sum();
    let b1 = (g.edge_count() + 1 - g.vertex_count()) as u64;
    let page_genus = sum_genus + b1;

    let mut vertex_pages = Vec::with_capacity(g.vertex_count());
    let mut boundary_curves = Vec::new();
    for (i, v) in g.vertices().iter().enumerate() {
        let m = boundary_count(g, i, side);
        debug_assert!(m >= 0);
        // cross-check: the per-edge twist counts sum to the vertex's
        // boundary component count
        let incident = g.incident_edges(i);
        if !incident.is_empty() {
            let twist_sum: i64 = incident
                .iter()
                .map(|&e| match side {
                    Side::Concave => dist.q((i, e)),
                    Side::Convex => dist.p((i, e)),
                })
                .sum();
            if twist_sum != m {
                return Err(OpenBookError::InconsistentPage);
            }
        }
        vertex_pages.push((v.genus, m as u64));
        for k in 0..m as usize {
            boundary_curves.push(Curve::Boundary {
                vertex: i,
                index: k,
            });
        }
    }
    let neck_curves: Vec<Curve> =
        (0..l).map(|e| Curve::Neck { edge: e }).collect();
    let binding_count = boundary_curves.len() as u64;

    let mut monodromy = Vec::with_capacity(l + boundary_curves.len());
    for &c in &neck_curves {
        monodromy.push((c, -1i8));
    }
    for &c in &boundary_curves {
        monodromy.push((c, 1i8));
    }

    let ob = OpenBookDescription {
        side,
        page_genus,
        binding_count,
        neck_curves,
        boundary_curves,
        monodromy,
        vertex_pages,
    };
    debug_assert!(page_invariants(&ob).is_ok());
    Ok(ob)
}

/// `(genus, boundary count, Euler characteristic)` with the connect-sum
/// bookkeeping asserted: `2 - 2g - q = Σ_i (2 - 2g_i - m_i) - 2l`.
pub fn page_invariants(
    ob: &OpenBookDescription,
) -> Result<(u64, u64, i64), OpenBookError> {
    let g = ob.page_genus as i64;
    let q = ob.binding_count as i64;
    let l = ob.neck_curves.len() as i64;
    let chi = 2 - 2 * g - q;
    let component_sum: i64 = ob
        .vertex_pages
        .iter()
        .map(|&(gi, mi)| 2 - 2 * gi as i64 - mi as i64)
        .sum();
    if chi != component_sum - 2 * l {
        return Err(OpenBookError::InconsistentPage);
    }
    if ob.monodromy.len() != ob.neck_curves.len() + ob.boundary_curves.len() {
        return Err(OpenBookError::InconsistentPage);
    }
    Ok((ob.page_genus, ob.binding_count, chi))
}
