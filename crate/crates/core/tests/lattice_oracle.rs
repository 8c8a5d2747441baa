mod common;

use std::collections::BTreeSet;

use closure_cohomology::{build_lattice, FiniteClosureSpace};
use common::{interior_mask, mask_of, random_relation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sets with nonempty interior, closed under pairwise intersection until
/// nothing new appears, plus ∅ and X.
fn fixed_point_lattice(rel: &[Vec<bool>]) -> BTreeSet<u32> {
    let n = rel.len();
    let full = (1u32 << n) - 1;
    let mut sets: BTreeSet<u32> = (0..=full).filter(|&a| interior_mask(rel, a) != 0).collect();
    sets.insert(0);
    sets.insert(full);
    loop {
        let snapshot: Vec<u32> = sets.iter().copied().collect();
        let before = sets.len();
        for (i, &a) in snapshot.iter().enumerate() {
            for &b in &snapshot[i..] {
                sets.insert(a & b);
            }
        }
        if sets.len() == before {
            return sets;
        }
    }
}

#[test]
fn lattice_matches_intersection_fixed_point_exhaustively_small() {
    // Every reflexive relation on up to 3 points.
    for n in 1..=3usize {
        let off: Vec<(usize, usize)> = (0..n).flat_map(|y| (0..n).map(move |x| (y, x))).filter(|(y, x)| y != x).collect();
        for bits in 0u32..(1 << off.len()) {
            let mut rel = vec![vec![false; n]; n];
            for (i, row) in rel.iter_mut().enumerate() {
                row[i] = true;
            }
            for (k, &(y, x)) in off.iter().enumerate() {
                rel[y][x] = bits >> k & 1 == 1;
            }
            let space = FiniteClosureSpace::from_relation(n, &rel).unwrap();
            let lattice = build_lattice(&space, 1 << 10).unwrap();
            let got: BTreeSet<u32> = lattice.elements().iter().map(mask_of).collect();
            assert_eq!(got, fixed_point_lattice(&rel), "relation {rel:?}");
            assert_eq!(got.len(), lattice.len());
        }
    }
}

#[test]
fn lattice_matches_intersection_fixed_point_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let n = rng.gen_range(1..=6);
        let p = rng.gen_range(0.0..0.7);
        let rel = random_relation(&mut rng, n, p);
        let space = FiniteClosureSpace::from_relation(n, &rel).unwrap();
        let lattice = build_lattice(&space, 1 << 10).unwrap();
        let got: BTreeSet<u32> = lattice.elements().iter().map(mask_of).collect();
        assert_eq!(got, fixed_point_lattice(&rel), "relation {rel:?}");
        for id in 0..lattice.len() {
            assert_eq!(lattice.is_neighborhood(id), interior_mask(&rel, mask_of(lattice.get(id))) != 0);
        }
        for a in 0..lattice.len() {
            for b in 0..lattice.len() {
                let m = lattice.meet(a, b);
                assert_eq!(mask_of(lattice.get(m)), mask_of(lattice.get(a)) & mask_of(lattice.get(b)));
            }
        }
    }
}

#[test]
fn cap_is_reported() {
    let space = FiniteClosureSpace::from_graph(12, &[]).unwrap();
    let err = build_lattice(&space, 1000).unwrap_err();
    assert!(err.is_cap_exceeded());
    assert_eq!(build_lattice(&space, 4096).unwrap().len(), 4096);
}
