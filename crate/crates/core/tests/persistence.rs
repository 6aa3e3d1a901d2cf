//! Barcode computation: pinned filtrations, conservation laws, representative
//! validity, and the equality between interval counts and snapshot homology.

mod common;

use std::collections::HashMap;

use concept_homology::{
    betti_numbers, build_complex, compute_persistence, persistent_betti, representative_cycle,
    rips_filtration, Barcode, FilteredComplex, PersistenceError, PointCloud, Simplex,
};
use proptest::prelude::*;
use rand::SeedableRng;

/// Four vertices, all six edges at 1, and the four triangles filling in one
/// at a time at 2, 3, 4, 5.
fn staggered_tetra() -> FilteredComplex {
    let mut simplices: Vec<Simplex> = (0..4).map(|v| Simplex::new(vec![v], 0.0)).collect();
    for (a, b) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        simplices.push(Simplex::new(vec![a, b], 1.0));
    }
    for (t, appearance) in [([0, 1, 2], 2.0), ([0, 1, 3], 3.0), ([0, 2, 3], 4.0), ([1, 2, 3], 5.0)]
    {
        simplices.push(Simplex::new(t.to_vec(), appearance));
    }
    build_complex(simplices).unwrap()
}

fn unit_square() -> FilteredComplex {
    let cloud = PointCloud::new(vec![
        vec![0.0, 0.0],
        vec![1.0, 0.0],
        vec![0.0, 1.0],
        vec![1.0, 1.0],
    ])
    .unwrap();
    rips_filtration(&cloud, 2.0, 2, "euclidean").unwrap()
}

fn triples(b: &Barcode) -> Vec<(usize, f64, f64)> {
    let mut t: Vec<(usize, f64, f64)> =
        b.intervals().iter().map(|iv| (iv.degree(), iv.birth(), iv.death())).collect();
    t.sort_by(|a, b| a.partial_cmp(b).unwrap());
    t
}

#[test]
fn staggered_tetrahedron_barcode_is_exact() {
    let b = compute_persistence(&staggered_tetra(), 2).unwrap();
    let expected = vec![
        (0, 0.0, 1.0),
        (0, 0.0, 1.0),
        (0, 0.0, 1.0),
        (0, 0.0, f64::INFINITY),
        (1, 1.0, 2.0),
        (1, 1.0, 3.0),
        (1, 1.0, 4.0),
        (2, 5.0, f64::INFINITY),
    ];
    assert_eq!(triples(&b), expected);
    assert!(b.intervals().iter().all(|iv| !iv.is_ephemeral()));
    assert_eq!(b.max_degree(), 2);
    assert_eq!(b.final_parameter(), 5.0);
}

#[test]
fn the_enclosed_void_is_the_sum_of_all_four_triangles() {
    let b = compute_persistence(&staggered_tetra(), 2).unwrap();
    let void = b.intervals_of_degree(2).next().unwrap();
    assert!(void.is_infinite());
    let mut faces: Vec<&[usize]> =
        void.representative().iter().map(|s| s.vertices()).collect();
    faces.sort();
    assert_eq!(faces, vec![&[0, 1, 2][..], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
}

#[test]
fn first_loop_dies_to_the_first_triangle_with_its_boundary_as_witness() {
    let b = compute_persistence(&staggered_tetra(), 2).unwrap();
    let first = b.intervals_of_degree(1).next().unwrap();
    assert_eq!((first.birth(), first.death()), (1.0, 2.0));
    assert_eq!(first.death_simplex().unwrap().vertices(), &[0, 1, 2]);
    let mut edges: Vec<&[usize]> =
        first.representative().iter().map(|s| s.vertices()).collect();
    edges.sort();
    assert_eq!(edges, vec![&[0, 1][..], &[0, 2], &[1, 2]]);
}

#[test]
fn one_edge_merges_two_components() {
    let k = build_complex(vec![
        Simplex::new(vec![0], 0.0),
        Simplex::new(vec![1], 0.0),
        Simplex::new(vec![0, 1], 1.0),
    ])
    .unwrap();
    let b = compute_persistence(&k, 1).unwrap();
    assert_eq!(triples(&b), vec![(0, 0.0, 1.0), (0, 0.0, f64::INFINITY)]);
    let dead = &b.intervals()[0];
    assert_eq!(dead.birth_simplex().vertices(), &[1]);
    assert_eq!(dead.death_simplex().unwrap().vertices(), &[0, 1]);
}

#[test]
fn square_barcode_has_one_visible_loop() {
    let b = compute_persistence(&unit_square(), 2).unwrap();
    let sqrt2 = 2.0_f64.sqrt();

    let deg0: Vec<_> = b.intervals_of_degree(0).collect();
    assert_eq!(deg0.len(), 4);
    assert_eq!(deg0.iter().filter(|iv| iv.death() == 1.0).count(), 3);
    assert_eq!(deg0.iter().filter(|iv| iv.is_infinite()).count(), 1);

    let loops: Vec<_> = b.intervals_of_degree(1).collect();
    assert_eq!(loops.len(), 1);
    assert_eq!(loops[0].birth(), 1.0);
    assert_eq!(loops[0].death(), sqrt2);

    // The diagonals create two more degree-1 classes that the two triangles
    // arriving at the same parameter kill instantly: bookkeeping bars only.
    let raw_deg1 = b.intervals().iter().filter(|iv| iv.degree() == 1).count();
    assert_eq!(raw_deg1, 3);
    assert_eq!(b.intervals().iter().filter(|iv| iv.is_ephemeral()).count(), 2);

    // With no 3-simplices available, the filled shell reads as a sphere.
    let deg2: Vec<_> = b.intervals_of_degree(2).collect();
    assert_eq!(deg2.len(), 1);
    assert_eq!(deg2[0].birth(), sqrt2);
    assert!(deg2[0].is_infinite());
}

#[test]
fn interval_counts_at_a_parameter_match_snapshot_homology() {
    let b = compute_persistence(&unit_square(), 2).unwrap();
    assert_eq!(persistent_betti(&b, 0, 0.5), 4);
    assert_eq!(persistent_betti(&b, 0, 1.0), 1);
    assert_eq!(persistent_betti(&b, 1, 0.5), 0);
    assert_eq!(persistent_betti(&b, 1, 1.0), 1);
    assert_eq!(persistent_betti(&b, 1, 1.4), 1);
    assert_eq!(persistent_betti(&b, 1, 1.5), 0);
    assert_eq!(persistent_betti(&b, 2, 1.5), 1);
    assert_eq!(persistent_betti(&b, 0, -1.0), 0);
}

#[test]
fn truncating_the_degree_keeps_lower_intervals_identical() {
    let k = unit_square();
    let full = compute_persistence(&k, 2).unwrap();
    let zero_only = compute_persistence(&k, 0).unwrap();
    assert!(zero_only.intervals().iter().all(|iv| iv.degree() == 0));
    let full_deg0: Vec<(usize, f64, f64)> =
        triples(&full).into_iter().filter(|t| t.0 == 0).collect();
    assert_eq!(triples(&zero_only), full_deg0);
    assert_eq!(zero_only.max_degree(), 0);
}

#[test]
fn requested_degree_is_capped_by_the_complex_dimension() {
    let b = compute_persistence(&unit_square(), 9).unwrap();
    assert_eq!(b.max_degree(), 2);
}

#[test]
fn a_simultaneous_edge_creates_an_ephemeral_pair() {
    let k = build_complex(vec![
        Simplex::new(vec![0], 0.0),
        Simplex::new(vec![1], 0.0),
        Simplex::new(vec![0, 1], 0.0),
    ])
    .unwrap();
    let b = compute_persistence(&k, 1).unwrap();
    assert_eq!(b.intervals().len(), 2);
    let ephemeral = b.intervals().iter().find(|iv| iv.is_ephemeral()).unwrap();
    assert_eq!(ephemeral.persistence(), 0.0);
    assert_eq!(b.visible().count(), 1);
    assert_eq!(b.intervals_of_degree(0).count(), 1);
}

#[test]
fn intervals_are_sorted_by_degree_then_birth_then_death() {
    let b = compute_persistence(&staggered_tetra(), 2).unwrap();
    let keys: Vec<(usize, f64, f64)> =
        b.intervals().iter().map(|iv| (iv.degree(), iv.birth(), iv.death())).collect();
    for w in keys.windows(2) {
        assert!(w[0] <= w[1], "{:?} after {:?}", w[1], w[0]);
    }
}

#[test]
fn representative_lookup_round_trips_and_rejects_foreign_intervals() {
    let b = compute_persistence(&staggered_tetra(), 2).unwrap();
    for iv in b.intervals() {
        assert_eq!(representative_cycle(&b, iv).unwrap(), iv.representative().to_vec());
    }
    let other = compute_persistence(&unit_square(), 2).unwrap();
    let foreign = other.intervals_of_degree(1).next().unwrap();
    assert_eq!(
        representative_cycle(&b, foreign).unwrap_err(),
        PersistenceError::IntervalNotFound
    );
}

#[test]
fn a_face_arriving_after_its_coface_is_rejected() {
    let k = FilteredComplex::from_parts_unchecked(vec![
        Simplex::new(vec![0], 0.0),
        Simplex::new(vec![1], 2.0),
        Simplex::new(vec![0, 1], 1.0),
    ]);
    assert!(matches!(
        compute_persistence(&k, 1).unwrap_err(),
        PersistenceError::NonMonotone { .. }
    ));

    let order_violation = FilteredComplex::from_parts_unchecked(vec![
        Simplex::new(vec![0, 1], 0.0),
        Simplex::new(vec![0], 0.0),
        Simplex::new(vec![1], 0.0),
    ]);
    assert!(matches!(
        compute_persistence(&order_violation, 1).unwrap_err(),
        PersistenceError::NonMonotone { .. }
    ));
}

#[test]
fn a_missing_face_is_rejected() {
    let k = FilteredComplex::from_parts_unchecked(vec![
        Simplex::new(vec![0], 0.0),
        Simplex::new(vec![0, 1], 1.0),
    ]);
    assert!(matches!(
        compute_persistence(&k, 1).unwrap_err(),
        PersistenceError::MissingFace { .. }
    ));
}

#[test]
fn infinite_bars_match_the_final_homology() {
    let k = staggered_tetra();
    let b = compute_persistence(&k, 2).unwrap();
    let betti = betti_numbers(&k, 2);
    for degree in 0..=2 {
        let infinite = b
            .intervals()
            .iter()
            .filter(|iv| iv.degree() == degree && iv.is_infinite())
            .count();
        assert_eq!(infinite, betti.get(degree), "degree {degree}");
    }
}

/// GF(2) boundary of a chain: the set of faces covered an odd number of times.
fn boundary_is_zero(chain: &[Simplex]) -> bool {
    let mut parity: HashMap<Vec<usize>, usize> = HashMap::new();
    for s in chain {
        for f in s.faces() {
            *parity.entry(f.vertices().to_vec()).or_insert(0) += 1;
        }
    }
    parity.values().all(|c| c % 2 == 0)
}

proptest! {
    /// Every simplex creates or kills exactly one class: interval counts are
    /// conserved when no degree is truncated away.
    #[test]
    fn intervals_conserve_simplices(seed in 0u64..300) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let k = common::random_complex(&mut rng, 7, 3);
        let b = compute_persistence(&k, k.max_dim()).unwrap();
        let finite = b.intervals().iter().filter(|iv| !iv.is_infinite()).count();
        let infinite = b.intervals().iter().filter(|iv| iv.is_infinite()).count();
        prop_assert_eq!(k.len(), 2 * finite + infinite);
    }

    /// Representatives are genuine cycles of the right degree, supported on
    /// simplices present at the birth parameter.
    #[test]
    fn representatives_are_cycles_at_their_birth(seed in 0u64..300) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let k = common::random_complex(&mut rng, 7, 3);
        let b = compute_persistence(&k, k.max_dim()).unwrap();
        for iv in b.intervals() {
            prop_assert!(!iv.representative().is_empty());
            prop_assert!(iv.representative().iter().all(|s| s.dim() == iv.degree()));
            prop_assert!(iv.representative().iter().all(|s| s.appearance() <= iv.birth()));
            prop_assert!(boundary_is_zero(iv.representative()));
            prop_assert_eq!(iv.birth_simplex().appearance(), iv.birth());
            match iv.death_simplex() {
                Some(d) => prop_assert_eq!(d.appearance(), iv.death()),
                None => prop_assert!(iv.is_infinite()),
            }
        }
    }

    /// Counting intervals that contain r reproduces the homology of the
    /// snapshot at r, in every degree.
    #[test]
    fn persistent_betti_equals_snapshot_betti(seed in 0u64..200, r in 0.0f64..11.0) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let k = common::random_complex(&mut rng, 7, 3);
        let b = compute_persistence(&k, k.max_dim()).unwrap();
        let (snap, _) = k.snapshot_at(r);
        if snap.is_empty() {
            for degree in 0..=k.max_dim() {
                prop_assert_eq!(persistent_betti(&b, degree, r), 0);
            }
        } else {
            let betti = betti_numbers(&snap, k.max_dim());
            for degree in 0..=k.max_dim() {
                prop_assert_eq!(
                    persistent_betti(&b, degree, r),
                    betti.get(degree),
                    "degree {} at {}", degree, r
                );
            }
        }
    }
}
