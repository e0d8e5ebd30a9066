use proptest::prelude::*;
use topocenter::random::{facet_touching_set, trial_rng};
use topocenter::rational::{int, rat, Point, Rational};
use topocenter::waist::{
    facet_touching_check, min_cover_homothety, simplex_chart, standard_simplex, HPolytopeBody,
};

fn frac() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn positive() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn points(n: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec(prop::collection::vec(frac(), n), 1..=5)
}

/// `[-1, 1]^n`.
fn cube(n: usize) -> (HPolytopeBody, Vec<Point>) {
    let mut a = Vec::new();
    for i in 0..n {
        for s in [1, -1] {
            let mut row = vec![int(0); n];
            row[i] = int(s);
            a.push(row);
        }
    }
    let verts = (0..1u32 << n)
        .map(|m| {
            (0..n)
                .map(|i| int(if m >> i & 1 == 1 { 1 } else { -1 }))
                .collect()
        })
        .collect();
    (HPolytopeBody::new(a, vec![int(1); 2 * n]).unwrap(), verts)
}

/// `|x| + |y| <= 1`.
fn diamond() -> (HPolytopeBody, Vec<Point>) {
    let a = vec![
        vec![int(1), int(1)],
        vec![int(1), int(-1)],
        vec![int(-1), int(1)],
        vec![int(-1), int(-1)],
    ];
    let verts = vec![
        vec![int(1), int(0)],
        vec![int(-1), int(0)],
        vec![int(0), int(1)],
        vec![int(0), int(-1)],
    ];
    (HPolytopeBody::new(a, vec![int(1); 4]).unwrap(), verts)
}

fn simplex_vertices(n: usize) -> Vec<Point> {
    (0..=n)
        .map(|i| {
            let mut x = vec![int(0); n + 1];
            x[i] = int(1);
            simplex_chart(&x)
        })
        .collect()
}

fn bodies(n: usize) -> Vec<HPolytopeBody> {
    let mut out = vec![standard_simplex(n), cube(n).0];
    if n == 2 {
        out.push(diamond().0);
    }
    out
}

#[test]
fn vertex_sets_need_the_full_body() {
    for n in 1..=3 {
        let d = min_cover_homothety(&simplex_vertices(n), &standard_simplex(n)).unwrap();
        assert_eq!(d.delta, int(1));
        let (k, v) = cube(n);
        assert_eq!(min_cover_homothety(&v, &k).unwrap().delta, int(1));
    }
    let (k, v) = diamond();
    assert_eq!(min_cover_homothety(&v, &k).unwrap().delta, int(1));
}

#[test]
fn seeded_facet_touching_sets() {
    for n in [2, 3] {
        for t in 0..100 {
            let set = facet_touching_set(&mut trial_rng(17, t), n);
            let r = facet_touching_check(&set).unwrap();
            assert!(r.touches_all);
            assert!(r.cover.delta >= int(1), "n = {n}, trial {t}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn scaling_and_translating_scales_the_radius(
        (n, s, v) in (1usize..=3).prop_flat_map(|n| (Just(n), points(n), prop::collection::vec(frac(), n))),
        lambda in positive(),
    ) {
        for k in bodies(n) {
            let base = min_cover_homothety(&s, &k).unwrap();
            prop_assert!(base.verify(&s, &k));
            let moved: Vec<Point> = s
                .iter()
                .map(|p| p.iter().zip(&v).map(|(x, t)| &lambda * x + t).collect())
                .collect();
            let scaled = min_cover_homothety(&moved, &k).unwrap();
            prop_assert_eq!(scaled.delta, &lambda * &base.delta);
        }
    }

    #[test]
    fn more_points_need_a_larger_copy(
        (n, s, extra) in (1usize..=3).prop_flat_map(|n| (Just(n), points(n), points(n))),
    ) {
        for k in bodies(n) {
            let small = min_cover_homothety(&s, &k).unwrap();
            let mut all = s.clone();
            all.extend(extra.iter().cloned());
            let big = min_cover_homothety(&all, &k).unwrap();
            prop_assert!(small.delta <= big.delta);
        }
    }
}
