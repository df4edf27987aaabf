//! Randomized invariants: congruence-stable inertia, sign-class symmetry,
//! witness scaling, move round trips, and the exact rotation calculus
//! against its floating-point shadow.

use std::cmp::Ordering;

use proptest::prelude::*;

use plumb_core::graph::{
    inertia, intersection_matrix, sign_class, DecoratedGraph, RawGraph,
    RawVertex, SymmetricIntMatrix,
};
use plumb_core::gs::{check_gs, GsMode, GsWitness};
use plumb_core::moves::{isomorphic, toric_blowdown, toric_blowup};
use plumb_core::rational::rat;
use plumb_core::torus::{phi, rewrite, rotation, Letter, RewriteStep, Word};

fn build_raw(
    n: usize,
    parents: Vec<u8>,
    extras: Vec<(u8, u8)>,
    deco: Vec<(u32, i64)>,
) -> RawGraph {
    let id = |i: usize| format!("v{}", i + 1);
    let vertices = deco
        .iter()
        .enumerate()
        .map(|(i, &(g, s))| RawVertex {
            id: id(i),
            genus: g as i64,
            self_intersection: s,
        })
        .collect();
    let mut edges = Vec::new();
    for i in 1..n {
        let p = parents[i - 1] as usize % i;
        edges.push((id(p), id(i)));
    }
    for &(a, b) in &extras {
        let u = a as usize % n;
        let v = b as usize % n;
        if u != v {
            edges.push((id(u), id(v)));
        }
    }
    RawGraph {
        vertices,
        edges,
        areas: None,
    }
}

fn graph_strategy() -> impl Strategy<Value = DecoratedGraph> {
    (1usize..=6)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(any::<u8>(), n.saturating_sub(1)),
                prop::collection::vec((any::<u8>(), any::<u8>()), 0..=3),
                prop::collection::vec((0u32..=2, -4i64..=4), n),
            )
                .prop_map(move |(parents, extras, deco)| {
                    build_raw(n, parents, extras, deco)
                })
        })
        .prop_map(|raw| DecoratedGraph::validate(&raw).expect("generated graph is valid"))
}

fn inverse_word_strategy() -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::bool::ANY, 0..=20).prop_map(|bits| {
        Word(
            bits.into_iter()
                .map(|b| if b { Letter::AInv } else { Letter::BInv })
                .collect(),
        )
    })
}

fn word_strategy() -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..4, 0..=24).prop_map(|ks| {
        Word(
            ks.into_iter()
                .map(|k| match k {
                    0 => Letter::A,
                    1 => Letter::AInv,
                    2 => Letter::B,
                    _ => Letter::BInv,
                })
                .collect(),
        )
    })
}

/// `UᵀMU` for a unimodular `U` assembled from integer shears and swaps.
fn congruent(m: &SymmetricIntMatrix, ops: &[(u8, u8, i8)]) -> SymmetricIntMatrix {
    let n = m.dim();
    let mut u = vec![vec![0i64; n]; n];
    for (i, row) in u.iter_mut().enumerate() {
        row[i] = 1;
    }
    for &(a, b, k) in ops {
        let i = a as usize % n;
        let j = b as usize % n;
        if i == j {
            continue;
        }
        // column op: col_j += k·col_i
        for row in u.iter_mut() {
            row[j] += k as i64 * row[i];
        }
    }
    let a = m.rows();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0i64;
            for p in 0..n {
                for q in 0..n {
                    acc += u[p][i] * a[p][q] * u[q][j];
                }
            }
            out[i][j] = acc;
        }
    }
    SymmetricIntMatrix::from_rows(&out)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn valence_sum_identity(g in graph_strategy()) {
        let lhs: i64 = g
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| v.self_intersection + g.valence(i) as i64)
            .sum();
        let rhs: i64 = g.vertices().iter().map(|v| v.self_intersection).sum::<i64>()
            + 2 * g.edge_count() as i64;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sign_class_ignores_vertex_order(g in graph_strategy(), rot in any::<u8>()) {
        let raw = g.to_raw();
        let n = raw.vertices.len();
        let k = rot as usize % n;
        let mut vertices = raw.vertices.clone();
        vertices.rotate_left(k);
        let permuted = RawGraph { vertices, edges: raw.edges.clone(), areas: None };
        let h = DecoratedGraph::validate(&permuted).unwrap();
        prop_assert_eq!(sign_class(&g), sign_class(&h));
    }

    #[test]
    fn inertia_is_congruence_invariant(
        g in graph_strategy(),
        ops in prop::collection::vec((any::<u8>(), any::<u8>(), -2i8..=2), 0..=4),
    ) {
        let q = intersection_matrix(&g);
        let q2 = congruent(&q, &ops);
        prop_assert_eq!(inertia(&q), inertia(&q2));
    }

    #[test]
    fn witnesses_scale(s in prop::collection::vec(-3i64..=3, 2..=5)) {
        let g = plumb_core::graph::cycle_graph(&s).unwrap();
        for mode in [GsMode::Concave, GsMode::Convex] {
            if let Some(w) = check_gs(&g, mode) {
                prop_assert!(w.verify(&g));
                let scaled = GsWitness {
                    z: w.z.iter().map(|v| v * rat(3)).collect(),
                    a: w.a.iter().map(|v| v * rat(3)).collect(),
                    mode,
                };
                prop_assert!(scaled.verify(&g));
            }
        }
    }

    #[test]
    fn toric_blowup_round_trips(g in graph_strategy(), pick in any::<u8>()) {
        if g.edge_count() == 0 {
            return Ok(());
        }
        let e = pick as usize % g.edge_count();
        let up = toric_blowup(&g, e).unwrap();
        let down = toric_blowdown(&up, up.vertex_count() - 1).unwrap();
        prop_assert!(isomorphic(&g, &down));
    }

    #[test]
    fn rotation_is_monotone_over_inverse_letters(w in inverse_word_strategy()) {
        let r = rotation(&w);
        prop_assert!(r.quarter_crossings >= 0);
        prop_assert!(r.at_least(0));
        prop_assert!(r.float_value >= -1e-9);
    }

    #[test]
    fn braid_moves_preserve_rotation_class(w in inverse_word_strategy()) {
        let r = rotation(&w);
        for i in 0..w.len() {
            if let Ok(w2) = rewrite(&w, RewriteStep::Braid(i)) {
                prop_assert_eq!(phi(&w2), phi(&w));
                let r2 = rotation(&w2);
                prop_assert_eq!(r2.cmp_rotation(&r), Ordering::Equal);
                prop_assert_eq!(r2.end, r.end);
            }
        }
    }

    #[test]
    fn cancellation_preserves_phi(w in word_strategy()) {
        for i in 0..w.len() {
            if let Ok(w2) = rewrite(&w, RewriteStep::CancelPair(i)) {
                prop_assert_eq!(phi(&w2), phi(&w));
            }
        }
    }

    #[test]
    fn cyclic_permutation_preserves_trace(w in word_strategy(), k in any::<u8>()) {
        if w.is_empty() {
            return Ok(());
        }
        let w2 = rewrite(&w, RewriteStep::CyclicPermute(k as usize % w.len())).unwrap();
        prop_assert_eq!(phi(&w2).trace(), phi(&w).trace());
    }

    #[test]
    fn exact_rotation_matches_float(w in word_strategy()) {
        let r = rotation(&w);
        let half_pi = std::f64::consts::FRAC_PI_2;
        for m in r.quarter_crossings - 2..=r.quarter_crossings + 2 {
            let gap = r.float_value - m as f64 * half_pi;
            if gap.abs() <= 1e-6 {
                continue; // boundary-exact: only the exact method decides
            }
            prop_assert_eq!(r.at_least(m), gap > 0.0);
        }
    }
}
