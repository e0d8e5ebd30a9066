use std::collections::BTreeMap;

use proptest::prelude::*;
use topocenter::simplicial::{Simplex, SimplicialComplex};
use topocenter::z2_index::{
    characteristic_cocycle, coboundary, cross_polytope_sphere, cup_power, disjoint_union_index,
    hind, hind_of_quotient, is_coboundary, quotient, Z2Complex,
};

fn polygon(n: usize) -> Z2Complex {
    let edges = (0..2 * n).map(|i| Simplex::new(vec![i, (i + 1) % (2 * n)]).unwrap());
    let inv = (0..2 * n).map(|i| (i, (i + n) % (2 * n))).collect();
    Z2Complex::new(SimplicialComplex::from_simplices(edges), inv).unwrap()
}

/// Two copies of `k` swapped by the action: the trivial double cover.
fn swapped_copies(k: &SimplicialComplex) -> Z2Complex {
    let off = k.vertices().iter().next_back().map_or(0, |v| v + 1);
    let both = k.union(&k.shifted(off));
    let mut inv = BTreeMap::new();
    for &v in k.vertices() {
        inv.insert(v, v + off);
        inv.insert(v + off, v);
    }
    Z2Complex::new(both, inv).unwrap()
}

fn small_complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0usize..6, 1..=3), 1..=5).prop_map(|sets| {
        SimplicialComplex::from_simplices(
            sets.into_iter()
                .map(|s| Simplex::new(s.into_iter().collect()).unwrap()),
        )
    })
}

#[test]
fn spheres_up_to_dimension_four() {
    for m in 0..=4 {
        assert_eq!(hind(&cross_polytope_sphere(m)).unwrap(), m, "m = {m}");
    }
}

#[test]
fn subdivision_leaves_the_index_unchanged() {
    for m in 0..=2 {
        let x = cross_polytope_sphere(m);
        let (sd, _) = x.subdivide().unwrap();
        assert_eq!(hind(&sd).unwrap(), hind(&x).unwrap());
    }
}

#[test]
fn antipodal_polygons_are_circles() {
    for n in 2..=6 {
        assert_eq!(hind(&polygon(n)).unwrap(), 1, "{}-gon", 2 * n);
    }
}

#[test]
fn characteristic_cocycles_are_cocycles() {
    for m in 0..=3 {
        let q = quotient(&cross_polytope_sphere(m)).unwrap();
        let w = characteristic_cocycle(&q);
        if m >= 1 {
            assert!(coboundary(&w, &q).unwrap().is_zero());
        }
        for n in 1..=m {
            let wn = cup_power(&w, n, &q).unwrap();
            if n < m {
                assert!(coboundary(&wn, &q).unwrap().is_zero());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn class_does_not_depend_on_the_section(m in 1usize..=2, flips in prop::collection::vec(any::<bool>(), 64)) {
        let q = quotient(&cross_polytope_sphere(m)).unwrap();
        let section: Vec<usize> = q
            .section()
            .iter()
            .enumerate()
            .map(|(o, &v)| if flips[o % flips.len()] { q.cover().involution(v) } else { v })
            .collect();
        let q2 = q.with_section(section).unwrap();
        let w = characteristic_cocycle(&q);
        let w2 = characteristic_cocycle(&q2);
        prop_assert!(is_coboundary(&w.sum(&w2), &q).unwrap());
        prop_assert_eq!(hind_of_quotient(&q2).unwrap(), m);
    }

    #[test]
    fn index_does_not_depend_on_the_vertex_order(m in 1usize..=2, seed in any::<u64>()) {
        let q = quotient(&cross_polytope_sphere(m)).unwrap();
        let n = q.n_orbits();
        // a permutation from a seeded shuffle
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let q2 = q.relabeled(&perm).unwrap();
        prop_assert_eq!(hind_of_quotient(&q2).unwrap(), m);
    }

    #[test]
    fn trivial_covers_have_index_zero(k in small_complex()) {
        prop_assert_eq!(hind(&swapped_copies(&k)).unwrap(), 0);
    }

    #[test]
    fn union_index_is_the_largest_part(ms in prop::collection::vec(0usize..=2, 1..=3)) {
        let parts: Vec<Z2Complex> = ms.iter().map(|&m| cross_polytope_sphere(m)).collect();
        prop_assert_eq!(disjoint_union_index(&parts).unwrap(), *ms.iter().max().unwrap());
    }
}
