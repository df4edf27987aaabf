//! Divisor moves: toric and interior blow-up/blow-down, the augmented
//! (area-carrying) versions, minimal models and non-negative
//! representatives.
//!
//! The augmented weight parameter `w` is the symplectic area of the new
//! exceptional sphere, i.e. the quantity `2πa₀` with `π` factored out,
//! consistent with the bookkeeping in [`crate::gs`].

use std::collections::{HashSet, VecDeque};

use num_traits::Signed;
use thiserror::Error;

use crate::graph::{sign_class, AugmentedGraph, DecoratedGraph, SignClass, VertexData};
use crate::rational::{parse_rational, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("vertex `{0}` is not an exceptional sphere (need genus 0, s = -1)")]
    NotExceptional(String),
    #[error("vertex `{0}` has the wrong valence for this move")]
    WrongValence(String),
    #[error("vertex `{0}` has both edges to the same neighbor; refusing to blow down")]
    SameNeighbor(String),
    #[error("no edge with index {0}")]
    NoSuchEdge(usize),
    #[error("no vertex `{0}`")]
    NoSuchVertex(String),
    #[error("weight is not strictly between zero and the adjacent area ({0})")]
    WeightTooLarge(String),
    #[error("cannot parse move spec `{0}`")]
    BadMoveSpec(String),
}

fn fresh_id(g: &DecoratedGraph) -> String {
    let mut k = 1;
    loop {
        let id = format!("E{k}");
        if g.vertex_index(&id).is_none() {
            return id;
        }
        k += 1;
    }
}

/// Subdivide edge `e` by a `-1`-sphere; both endpoints lose 1 from `s`.
pub fn toric_blowup(g: &DecoratedGraph, e: usize) -> Result<DecoratedGraph, MoveError> {
    if e >= g.edge_count() {
        return Err(MoveError::NoSuchEdge(e));
    }
    let (i, j) = g.edges()[e];
    let mut vertices = g.vertices().to_vec();
    vertices[i].self_intersection -= 1;
    vertices[j].self_intersection -= 1;
    let new = vertices.len();
    vertices.push(VertexData {
        id: fresh_id(g),
        genus: 0,
        self_intersection: -1,
    });
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(g.edge_count() + 1);
    for (k, &ed) in g.edges().iter().enumerate() {
        if k == e {
            edges.push((i, new));
            edges.push((j, new));
        } else {
            edges.push(ed);
        }
    }
    Ok(DecoratedGraph::from_parts(vertices, edges))
}

/// Remove an exceptional sphere of valence two with distinct neighbors,
/// joining the neighbors and giving each +1 on `s`.
pub fn toric_blowdown(g: &DecoratedGraph, v: usize) -> Result<DecoratedGraph, MoveError> {
    let vd = &g.vertices()[v];
    if vd.genus != 0 || vd.self_intersection != -1 {
        return Err(MoveError::NotExceptional(vd.id.clone()));
    }
    let incident = g.incident_edges(v);
    if incident.len() != 2 {
        return Err(MoveError::WrongValence(vd.id.clone()));
    }
    let n1 = g.other_endpoint(incident[0], v);
    let n2 = g.other_endpoint(incident[1], v);
    if n1 == n2 {
        return Err(MoveError::SameNeighbor(vd.id.clone()));
    }
    let remap = |k: usize| if k > v { k - 1 } else { k };
    let mut vertices: Vec<VertexData> = g
        .vertices()
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != v)
        .map(|(_, vd)| vd.clone())
        .collect();
    vertices[remap(n1)].self_intersection += 1;
    vertices[remap(n2)].self_intersection += 1;
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(g.edge_count() - 1);
    let mut joined = false;
    for (k, &(a, b)) in g.edges().iter().enumerate() {
        if k == incident[0] {
            if !joined {
                edges.push((remap(n1), remap(n2)));
                joined = true;
            }
        } else if k == incident[1] {
            // second incident edge dropped; the join was emitted in place
            // of the first
        } else {
            edges.push((remap(a), remap(b)));
        }
        let _ = (a, b);
    }
    Ok(DecoratedGraph::from_parts(vertices, edges))
}

/// Attach a `-1`-sphere leaf at vertex `v`; `s_v` drops by 1.
pub fn interior_blowup(g: &DecoratedGraph, v: usize) -> Result<DecoratedGraph, MoveError> {
    if v >= g.vertex_count() {
        return Err(MoveError::NoSuchVertex(format!("#{v}")));
    }
    let mut vertices = g.vertices().to_vec();
    vertices[v].self_intersection -= 1;
    let new = vertices.len();
    vertices.push(VertexData {
        id: fresh_id(g),
        genus: 0,
        self_intersection: -1,
    });
    let mut edges = g.edges().to_vec();
    edges.push((v, new));
    Ok(DecoratedGraph::from_parts(vertices, edges))
}

/// Remove a `-1`-sphere leaf; its neighbor gets +1 on `s`.
pub fn interior_blowdown(g: &DecoratedGraph, v: usize) -> Result<DecoratedGraph, MoveError> {
    let vd = &g.vertices()[v];
    if vd.genus != 0 || vd.self_intersection != -1 {
        return Err(MoveError::NotExceptional(vd.id.clone()));
    }
    let incident = g.incident_edges(v);
    if incident.len() != 1 {
        return Err(MoveError::WrongValence(vd.id.clone()));
    }
    let nb = g.other_endpoint(incident[0], v);
    let remap = |k: usize| if k > v { k - 1 } else { k };
    let mut vertices: Vec<VertexData> = g
        .vertices()
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != v)
        .map(|(_, vd)| vd.clone())
        .collect();
    vertices[remap(nb)].self_intersection += 1;
    let edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != incident[0])
        .map(|(_, &(a, b))| (remap(a), remap(b)))
        .collect();
    Ok(DecoratedGraph::from_parts(vertices, edges))
}

/// Augmented toric blow-up with weight `w` (the area of the new sphere).
/// Areas become `(…, a_i - w, …, a_j - w, …, w)` and the witness entry for
/// the new sphere is `z_i + z_j - w`, which re-establishes `Q·z = a`.
pub fn augmented_toric_blowup(
    ag: &AugmentedGraph,
    e: usize,
    w: &Rational,
) -> Result<AugmentedGraph, MoveError> {
    if e >= ag.graph.edge_count() {
        return Err(MoveError::NoSuchEdge(e));
    }
    let (i, j) = ag.graph.edges()[e];
    if !w.is_positive() || *w >= ag.area[i] {
        return Err(MoveError::WeightTooLarge(ag.graph.vertices()[i].id.clone()));
    }
    if *w >= ag.area[j] {
        return Err(MoveError::WeightTooLarge(ag.graph.vertices()[j].id.clone()));
    }
    if let Some(z) = &ag.witness {
        if *w >= &z[i] + &z[j] {
            return Err(MoveError::WeightTooLarge(format!(
                "witness entry for the new sphere at edge {e}"
            )));
        }
    }
    let graph = toric_blowup(&ag.graph, e)?;
    let mut area = ag.area.clone();
    area[i] -= w;
    area[j] -= w;
    area.push(w.clone());
    let witness = ag.witness.as_ref().map(|z| {
        let mut z2 = z.clone();
        z2.push(&z[i] + &z[j] - w);
        z2
    });
    let out = AugmentedGraph {
        graph,
        area,
        witness,
    };
    debug_assert!(out.witness_consistent());
    Ok(out)
}

/// Augmented interior blow-up with weight `w`; the new witness entry is
/// `z_v - w` (any sign).
pub fn augmented_interior_blowup(
    ag: &AugmentedGraph,
    v: usize,
    w: &Rational,
) -> Result<AugmentedGraph, MoveError> {
    if v >= ag.graph.vertex_count() {
        return Err(MoveError::NoSuchVertex(format!("#{v}")));
    }
    if !w.is_positive() || *w >= ag.area[v] {
        return Err(MoveError::WeightTooLarge(ag.graph.vertices()[v].id.clone()));
    }
    let graph = interior_blowup(&ag.graph, v)?;
    let mut area = ag.area.clone();
    area[v] -= w;
    area.push(w.clone());
    let witness = ag.witness.as_ref().map(|z| {
        let mut z2 = z.clone();
        z2.push(&z[v] - w);
        z2
    });
    let out = AugmentedGraph {
        graph,
        area,
        witness,
    };
    debug_assert!(out.witness_consistent());
    Ok(out)
}

/// Reverse of the augmented toric blow-up: the neighbors absorb the
/// exceptional area. `Q·z = a` holds again automatically.
pub fn augmented_toric_blowdown(
    ag: &AugmentedGraph,
    v: usize,
) -> Result<AugmentedGraph, MoveError> {
    let incident = ag.graph.incident_edges(v);
    let graph = toric_blowdown(&ag.graph, v)?;
    let n1 = ag.graph.other_endpoint(incident[0], v);
    let n2 = ag.graph.other_endpoint(incident[1], v);
    let av = ag.area[v].clone();
    let mut area = Vec::with_capacity(ag.area.len() - 1);
    for (k, a) in ag.area.iter().enumerate() {
        if k == v {
            continue;
        }
        let mut a = a.clone();
        if k == n1 || k == n2 {
            a += &av;
        }
        area.push(a);
    }
    let witness = ag.witness.as_ref().map(|z| {
        z.iter()
            .enumerate()
            .filter(|&(k, _)| k != v)
            .map(|(_, zi)| zi.clone())
            .collect()
    });
    let out = AugmentedGraph {
        graph,
        area,
        witness,
    };
    debug_assert!(out.witness_consistent());
    Ok(out)
}

/// Reverse of the augmented interior blow-up.
pub fn augmented_interior_blowdown(
    ag: &AugmentedGraph,
    v: usize,
) -> Result<AugmentedGraph, MoveError> {
    let incident = ag.graph.incident_edges(v);
    let graph = interior_blowdown(&ag.graph, v)?;
    let nb = ag.graph.other_endpoint(incident[0], v);
    let av = ag.area[v].clone();
    let mut area = Vec::with_capacity(ag.area.len() - 1);
    for (k, a) in ag.area.iter().enumerate() {
        if k == v {
            continue;
        }
        let mut a = a.clone();
        if k == nb {
            a += &av;
        }
        area.push(a);
    }
    let witness = ag.witness.as_ref().map(|z| {
        z.iter()
            .enumerate()
            .filter(|&(k, _)| k != v)
            .map(|(_, zi)| zi.clone())
            .collect()
    });
    let out = AugmentedGraph {
        graph,
        area,
        witness,
    };
    debug_assert!(out.witness_consistent());
    Ok(out)
}

// ---------------------------------------------------------------------
// decorated multigraph isomorphism via canonical labeling
// ---------------------------------------------------------------------

/// Canonical key of a decorated multigraph: the lexicographically smallest
/// `(decorations, sorted edge list)` over all vertex relabelings that
/// respect a color refinement of `(genus, s, valence)`.
pub fn canonical_key(g: &DecoratedGraph) -> Vec<i64> {
    let n = g.vertex_count();
    // initial colors from local decorations, refined by neighbor multisets
    let mut color: Vec<u64> = (0..n)
        .map(|i| {
            let v = &g.vertices()[i];
            hash3(v.genus as i64, v.self_intersection, g.valence(i) as i64)
        })
        .collect();
    for _ in 0..n {
        let mut next = Vec::with_capacity(n);
        for i in 0..n {
            let mut nb: Vec<u64> = g
                .incident_edges(i)
                .iter()
                .map(|&e| color[g.other_endpoint(e, i)])
                .collect();
            nb.sort_unstable();
            let mut h = color[i];
            for x in nb {
                h = h
                    .wrapping_mul(0x100000001b3)
                    .wrapping_add(x.rotate_left(17));
            }
            next.push(h);
        }
        if next == color {
            break;
        }
        color = next;
    }

    // group vertices by color; candidate orderings permute within groups
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| {
        (
            color[i],
            g.vertices()[i].genus,
            g.vertices()[i].self_intersection,
        )
    });
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match groups.last_mut() {
            Some(grp) if color[grp[0]] == color[i] => grp.push(i),
            _ => groups.push(vec![i]),
        }
    }

    let mut best: Option<Vec<i64>> = None;
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    permute_groups(&groups, 0, &mut perm, &mut |p| {
        let key = key_for(g, p);
        if best.as_ref().map_or(true, |b| key < *b) {
            best = Some(key);
        }
    });
    best.unwrap()
}

fn hash3(a: i64, b: i64, c: i64) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for x in [a, b, c] {
        h = (h ^ x as u64).wrapping_mul(0x100000001b3);
    }
    h
}

fn permute_groups(
    groups: &[Vec<usize>],
    gi: usize,
    perm: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if gi == groups.len() {
        f(perm);
        return;
    }
    let mut items = groups[gi].clone();
    heap_permute(&mut items, perm, groups, gi, f);
}

fn heap_permute(
    items: &mut Vec<usize>,
    perm: &mut Vec<usize>,
    groups: &[Vec<usize>],
    gi: usize,
    f: &mut impl FnMut(&[usize]),
) {
    // simple recursive permutation of one group, then recurse to the next
    fn rec(
        items: &mut Vec<usize>,
        k: usize,
        perm: &mut Vec<usize>,
        groups: &[Vec<usize>],
        gi: usize,
        f: &mut impl FnMut(&[usize]),
    ) {
        if k == items.len() {
            let len = perm.len();
            perm.extend_from_slice(items);
            permute_groups(groups, gi + 1, perm, f);
            perm.truncate(len);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            rec(items, k + 1, perm, groups, gi, f);
            items.swap(k, i);
        }
    }
    rec(items, 0, perm, groups, gi, f);
}

fn key_for(g: &DecoratedGraph, perm: &[usize]) -> Vec<i64> {
    // perm[pos] = original index placed at position pos
    let n = g.vertex_count();
    let mut pos_of = vec![0usize; n];
    for (pos, &orig) in perm.iter().enumerate() {
        pos_of[orig] = pos;
    }
    let mut key = Vec::with_capacity(2 * n + 2 * g.edge_count());
    for &orig in perm {
        let v = &g.vertices()[orig];
        key.push(v.genus as i64);
        key.push(v.self_intersection);
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (pos_of[a], pos_of[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    edges.sort_unstable();
    for (a, b) in edges {
        key.push(a as i64);
        key.push(b as i64);
    }
    key
}

pub fn isomorphic(a: &DecoratedGraph, b: &DecoratedGraph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && canonical_key(a) == canonical_key(b)
}

// ---------------------------------------------------------------------
// exploration
// ---------------------------------------------------------------------

fn applicable_blowdowns(g: &DecoratedGraph) -> Vec<DecoratedGraph> {
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        if let Ok(h) = toric_blowdown(g, v) {
            out.push(h);
        }
        if let Ok(h) = interior_blowdown(g, v) {
            out.push(h);
        }
    }
    out
}

/// All distinct terminal graphs (up to decorated isomorphism) reachable by
/// maximal sequences of toric and interior blow-downs.
pub fn minimal_models(g: &DecoratedGraph) -> Vec<DecoratedGraph> {
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut terminals: Vec<DecoratedGraph> = Vec::new();
    let mut terminal_keys: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::from([g.clone()]);
    seen.insert(canonical_key(g));
    while let Some(cur) = queue.pop_front() {
        let next = applicable_blowdowns(&cur);
        if next.is_empty() {
            let key = canonical_key(&cur);
            if terminal_keys.insert(key) {
                terminals.push(cur);
            }
            continue;
        }
        for h in next {
            let key = canonical_key(&h);
            if seen.insert(key) {
                queue.push_back(h);
            }
        }
    }
    terminals
}

/// Search `g` and every blow-down descendant for a non-negative (or
/// positive) graph; prefers `g` itself, then the shortest reduction.
/// Blow-ups are not searched; see the crate docs for the caveat.
pub fn nonnegative_representative(g: &DecoratedGraph) -> Option<DecoratedGraph> {
    let good = |h: &DecoratedGraph| {
        matches!(
            sign_class(h),
            SignClass::NonNegative | SignClass::Positive
        )
    };
    if good(g) {
        return Some(g.clone());
    }
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::from([g.clone()]);
    seen.insert(canonical_key(g));
    while let Some(cur) = queue.pop_front() {
        for h in applicable_blowdowns(&cur) {
            if good(&h) {
                return Some(h);
            }
            let key = canonical_key(&h);
            if seen.insert(key) {
                queue.push_back(h);
            }
        }
    }
    None
}

// ---------------------------------------------------------------------
// move scripts
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveKind {
    ToricUp,
    ToricDown,
    InteriorUp,
    InteriorDown,
}

/// One move from a CLI script, e.g. `toric_up:e3` or `toric_up:e3:w=1/2`.
/// Edge sites are `e<k>` with 1-based edge index; vertex sites are vertex
/// ids. A weight makes the move augmented.
#[derive(Debug, Clone, PartialEq)]
pub struct MoveRecord {
    pub kind: MoveKind,
    pub site: String,
    pub weight: Option<Rational>,
}

impl MoveRecord {
    pub fn parse(spec: &str) -> Result<Self, MoveError> {
        let mut parts = spec.split(':');
        let kind = match parts.next() {
            Some("toric_up") => MoveKind::ToricUp,
            Some("toric_down") => MoveKind::ToricDown,
            Some("interior_up") => MoveKind::InteriorUp,
            Some("interior_down") => MoveKind::InteriorDown,
            _ => return Err(MoveError::BadMoveSpec(spec.to_string())),
        };
        let site = parts
            .next()
            .ok_or_else(|| MoveError::BadMoveSpec(spec.to_string()))?
            .to_string();
        let weight = match parts.next() {
            None => None,
            Some(w) => {
                let w = w
                    .strip_prefix("w=")
                    .ok_or_else(|| MoveError::BadMoveSpec(spec.to_string()))?;
                Some(
                    parse_rational(w)
                        .map_err(|_| MoveError::BadMoveSpec(spec.to_string()))?,
                )
            }
        };
        if parts.next().is_some() {
            return Err(MoveError::BadMoveSpec(spec.to_string()));
        }
        if weight.is_some()
            && matches!(kind, MoveKind::ToricDown | MoveKind::InteriorDown)
        {
            return Err(MoveError::BadMoveSpec(spec.to_string()));
        }
        Ok(MoveRecord { kind, site, weight })
    }

    fn edge_index(&self, g: &DecoratedGraph) -> Result<usize, MoveError> {
        let k: usize = self
            .site
            .strip_prefix('e')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| MoveError::BadMoveSpec(self.site.clone()))?;
        if k == 0 || k > g.edge_count() {
            return Err(MoveError::NoSuchEdge(k));
        }
        Ok(k - 1)
    }

    fn vertex_index(&self, g: &DecoratedGraph) -> Result<usize, MoveError> {
        g.vertex_index(&self.site)
            .ok_or_else(|| MoveError::NoSuchVertex(self.site.clone()))
    }

    /// Apply to a bare graph; the weight, if any, is ignored here.
    pub fn apply(&self, g: &DecoratedGraph) -> Result<DecoratedGraph, MoveError> {
        match self.kind {
            MoveKind::ToricUp => toric_blowup(g, self.edge_index(g)?),
            MoveKind::ToricDown => toric_blowdown(g, self.vertex_index(g)?),
            MoveKind::InteriorUp => interior_blowup(g, self.vertex_index(g)?),
            MoveKind::InteriorDown => interior_blowdown(g, self.vertex_index(g)?),
        }
    }

    /// Apply to an augmented graph; up-moves require a weight.
    pub fn apply_augmented(
        &self,
        ag: &AugmentedGraph,
    ) -> Result<AugmentedGraph, MoveError> {
        match self.kind {
            MoveKind::ToricUp => {
                let w = self
                    .weight
                    .as_ref()
                    .ok_or_else(|| MoveError::BadMoveSpec(self.site.clone()))?;
                augmented_toric_blowup(ag, self.edge_index(&ag.graph)?, w)
            }
            MoveKind::InteriorUp => {
                let w = self
                    .weight
                    .as_ref()
                    .ok_or_else(|| MoveError::BadMoveSpec(self.site.clone()))?;
                augmented_interior_blowup(ag, self.vertex_index(&ag.graph)?, w)
            }
            MoveKind::ToricDown => {
                augmented_toric_blowdown(ag, self.vertex_index(&ag.graph)?)
            }
            MoveKind::InteriorDown => {
                augmented_interior_blowdown(ag, self.vertex_index(&ag.graph)?)
            }
        }
    }
}
