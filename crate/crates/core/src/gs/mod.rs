//! GS criterion: exact feasibility checks, constructive witnesses for
//! non-negative divisors, and the combinatorial construction data
//! (`z'`, `s_{i,e}`, `x_{i,e}`).
//!
//! All quantities that carry a factor of `2π` in the geometry (`z'`,
//! `x_{i,e}`) are stored as exact rationals with `π` symbolically factored
//! out, so `z' = -z/2` here stands for `-z/(2π)`.

mod simplex;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{intersection_matrix, sign_class, DecoratedGraph, SignClass};
use crate::rational::{rat, ratio, Rational};

pub use simplex::feasible_nonneg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum GsMode {
    Concave,
    Convex,
}

/// An exact certificate `Q·z = a`. Concave: `z > 0`, `a > 0`.
/// Convex: `z <= 0`, `a > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct GsWitness {
    pub z: Vec<Rational>,
    pub a: Vec<Rational>,
    pub mode: GsMode,
}

impl GsWitness {
    pub fn verify(&self, g: &DecoratedGraph) -> bool {
        let q = intersection_matrix(g);
        if q.apply(&self.z) != self.a {
            return false;
        }
        if !self.a.iter().all(|x| x.is_positive()) {
            return false;
        }
        match self.mode {
            GsMode::Concave => self.z.iter().all(|x| x.is_positive()),
            GsMode::Convex => self.z.iter().all(|x| !x.is_positive()),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GsError {
    #[error("divisor is not non-negative")]
    NotNonNegative,
    #[error("perturbation stalled with a zero entry remaining (defect)")]
    InternalStall,
    #[error("vertex `{0}` is isolated and no half edge was supplied")]
    IsolatedVertexWithoutHalfEdge(String),
    #[error("twist overrides for vertex `{0}` do not cover its edges or sum to s_i")]
    BadOverride(String),
}

/// Decide the GS criterion exactly. Strictness is recovered by cone
/// scaling: `z > 0, Qz > 0` is feasible iff `z >= 1, Qz >= 1` is.
pub fn check_gs(g: &DecoratedGraph, mode: GsMode) -> Option<GsWitness> {
    let q = intersection_matrix(g);
    let n = q.dim();
    let qrows: Vec<Vec<Rational>> = q
        .rows()
        .iter()
        .map(|r| r.iter().map(|&x| rat(x)).collect())
        .collect();
    match mode {
        GsMode::Concave => {
            // substitute z = 1 + y, y >= 0: need Q y >= 1 - Q·1
            let ones = vec![Rational::one(); n];
            let q1 = q.apply(&ones);
            let b: Vec<Rational> =
                q1.iter().map(|v| Rational::one() - v).collect();
            let y = feasible_nonneg(&qrows, &b)?;
            let z: Vec<Rational> =
                y.iter().map(|yi| yi + Rational::one()).collect();
            let a = q.apply(&z);
            let w = GsWitness {
                z,
                a,
                mode: GsMode::Concave,
            };
            debug_assert!(w.verify(g));
            Some(w)
        }
        GsMode::Convex => {
            // substitute z = -y, y >= 0: need (-Q) y >= 1
            let neg: Vec<Vec<Rational>> = qrows
                .iter()
                .map(|r| r.iter().map(|x| -x.clone()).collect())
                .collect();
            let b = vec![Rational::one(); n];
            let y = feasible_nonneg(&neg, &b)?;
            let z: Vec<Rational> = y.iter().map(|yi| -yi.clone()).collect();
            let a = q.apply(&z);
            let w = GsWitness {
                z,
                a,
                mode: GsMode::Convex,
            };
            debug_assert!(w.verify(g));
            Some(w)
        }
    }
}

/// Constructive witness for a non-negative divisor via iterated
/// perturbation: start from the all-ones vector and bump `z_i` wherever a
/// positive-area vertex `i` meets a zero-area vertex, in breadth-first
/// order from the initially positive set.
pub fn nonnegative_witness(g: &DecoratedGraph) -> Result<GsWitness, GsError> {
    match sign_class(g) {
        SignClass::NonNegative | SignClass::Positive => {}
        _ => return Err(GsError::NotNonNegative),
    }
    let q = intersection_matrix(g);
    let n = q.dim();
    let mut z = vec![Rational::one(); n];
    let mut a = q.apply(&z);

    let mut enqueued = vec![false; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for i in 0..n {
        if a[i].is_positive() {
            enqueued[i] = true;
            queue.push_back(i);
        }
    }
    while let Some(i) = queue.pop_front() {
        let has_zero_neighbor =
            (0..n).any(|l| a[l].is_zero() && q.get(i, l) > 0);
        if !has_zero_neighbor {
            continue;
        }
        let qii = q.get(i, i);
        let eps = if qii < 0 {
            &a[i] / (rat(2) * rat((-qii).max(1)))
        } else {
            Rational::one()
        };
        z[i] += eps;
        a = q.apply(&z);
        for l in 0..n {
            if a[l].is_positive() && !enqueued[l] {
                enqueued[l] = true;
                queue.push_back(l);
            }
        }
    }
    if a.iter().any(|x| x.is_zero()) {
        // unreachable for connected non-negative inputs
        return Err(GsError::InternalStall);
    }
    let w = GsWitness {
        z,
        a,
        mode: GsMode::Concave,
    };
    debug_assert!(w.verify(g));
    Ok(w)
}

/// How `s_i` is split across the edges of each vertex.
#[derive(Debug, Clone, Default)]
pub struct TwistPolicy {
    /// Explicit `s_{i,e}` values keyed by `(vertex index, edge index)`.
    /// A vertex with any override must have all its edges overridden and
    /// the values must sum to `s_i`.
    pub overrides: BTreeMap<(usize, usize), i64>,
    /// Vertices carrying a half edge (needed when the valence is zero).
    pub half_edges: BTreeSet<usize>,
}

/// The combinatorial data of the GS construction for a chosen witness.
#[derive(Debug, Clone, PartialEq)]
pub struct GsEdgeData {
    /// `z'_i = -z_i/2` with `π` factored out.
    pub z_prime: Vec<Rational>,
    /// `s_{i,e}` keyed by `(vertex index, edge index)`.
    pub s_dist: BTreeMap<(usize, usize), i64>,
    /// `x_{i,e} = -s_{i,e}·z'_i - z'_j` keyed the same way.
    pub x: BTreeMap<(usize, usize), Rational>,
    /// Half-edge data per isolated vertex: `(s_{v,ẽ}, x_{v,ẽ})`.
    pub half_edges: BTreeMap<usize, (i64, Rational)>,
}

/// Choose `s_{i,e}` (default: floor split with the remainder on the last
/// incident edges) and compute `z'` and all `x_{i,e}`.
pub fn gs_edge_data(
    g: &DecoratedGraph,
    z: &[Rational],
    policy: &TwistPolicy,
) -> Result<GsEdgeData, GsError> {
    let n = g.vertex_count();
    assert_eq!(z.len(), n);
    let z_prime: Vec<Rational> =
        z.iter().map(|zi| zi * ratio(-1, 2)).collect();

    let mut s_dist = BTreeMap::new();
    let mut half_edges = BTreeMap::new();
    for (i, v) in g.vertices().iter().enumerate() {
        let incident = g.incident_edges(i);
        let d = incident.len();
        if d == 0 {
            if !policy.half_edges.contains(&i) {
                return Err(GsError::IsolatedVertexWithoutHalfEdge(
                    v.id.clone(),
                ));
            }
            let s = v.self_intersection;
            let x = rat(-s) * &z_prime[i];
            half_edges.insert(i, (s, x));
            continue;
        }
        let overridden: Vec<_> = incident
            .iter()
            .filter(|&&e| policy.overrides.contains_key(&(i, e)))
            .collect();
        if !overridden.is_empty() {
            if overridden.len() != d {
                return Err(GsError::BadOverride(v.id.clone()));
            }
            let sum: i64 = incident
                .iter()
                .map(|&e| policy.overrides[&(i, e)])
                .sum();
            if sum != v.self_intersection {
                return Err(GsError::BadOverride(v.id.clone()));
            }
            for &e in &incident {
                s_dist.insert((i, e), policy.overrides[&(i, e)]);
            }
        } else {
            let s = v.self_intersection;
            let base = s.div_euclid(d as i64);
            let r = (s - base * d as i64) as usize;
            for (k, &e) in incident.iter().enumerate() {
                let extra = if k >= d - r { 1 } else { 0 };
                s_dist.insert((i, e), base + extra);
            }
        }
    }

    let mut x = BTreeMap::new();
    for (&(i, e), &sie) in &s_dist {
        let j = g.other_endpoint(e, i);
        let xie = rat(-sie) * &z_prime[i] - &z_prime[j];
        x.insert((i, e), xie);
    }

    Ok(GsEdgeData {
        z_prime,
        s_dist,
        x,
        half_edges,
    })
}
