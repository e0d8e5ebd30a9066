use num_traits::{Signed, Zero};
use proptest::prelude::*;
use topocenter::exact_lp::{
    in_convex_hull, lp_feasible, lp_minimize, separating_functional, Feasibility, LinearSystem,
    LpOutcome,
};
use topocenter::rational::{combine, dot, int, is_convex_weights, rat, Point, Rational};

fn frac() -> impl Strategy<Value = Rational> {
    (-8i64..=8, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn pt(d: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(frac(), d)
}

fn instance() -> impl Strategy<Value = (Point, Vec<Point>)> {
    (1usize..=3).prop_flat_map(|d| (pt(d), prop::collection::vec(pt(d), 1..=5)))
}

/// `min c·x` over `x >= 0`, `x_i <= 10`, `A x <= b` in two variables, by
/// trying every intersection of two boundary lines.
fn vertex_oracle(rows: &[(Vec<Rational>, Rational)], c: &[Rational]) -> Option<Rational> {
    let mut lines: Vec<(Vec<Rational>, Rational)> = rows.to_vec();
    lines.push((vec![int(-1), int(0)], int(0)));
    lines.push((vec![int(0), int(-1)], int(0)));
    lines.push((vec![int(1), int(0)], int(10)));
    lines.push((vec![int(0), int(1)], int(10)));
    let mut best: Option<Rational> = None;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a, b) = (&lines[i], &lines[j]);
            let det = &a.0[0] * &b.0[1] - &a.0[1] * &b.0[0];
            if det.is_zero() {
                continue;
            }
            let x0 = (&a.1 * &b.0[1] - &a.0[1] * &b.1) / &det;
            let x1 = (&a.0[0] * &b.1 - &a.1 * &b.0[0]) / &det;
            let x = vec![x0, x1];
            if lines.iter().all(|(row, rhs)| &dot(row, &x) <= rhs) {
                let v = dot(c, &x);
                if best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hull_membership_and_separation_are_exclusive((x, set) in instance()) {
        let inside = in_convex_hull(&x, &set).unwrap();
        let sep = separating_functional(&set, &x).unwrap();
        prop_assert_eq!(inside.is_some(), sep.is_none());
        if let Some(w) = inside {
            prop_assert!(is_convex_weights(&w));
            prop_assert_eq!(combine(&w, &set, x.len()), x.clone());
        }
        if let Some(s) = sep {
            prop_assert!(s.margin.is_positive());
            for p in &set {
                prop_assert!(dot(&s.functional, p) - &s.offset >= s.margin);
            }
            prop_assert!(dot(&s.functional, &x) - &s.offset <= -s.margin.clone());
        }
    }

    #[test]
    fn feasible_witness_is_exact(
        rows in prop::collection::vec((pt(3), frac()), 1..=5),
        eqs in prop::collection::vec((pt(3), frac()), 0..=2),
    ) {
        let mut sys = LinearSystem::new(3);
        sys.set_nonneg(0).unwrap();
        for (a, b) in &rows {
            sys.add_le(a.clone(), b.clone());
        }
        for (a, b) in &eqs {
            sys.add_eq(a.clone(), b.clone());
        }
        match lp_feasible(&sys).unwrap() {
            Feasibility::Feasible(x) => prop_assert!(sys.is_satisfied_by(&x)),
            Feasibility::Infeasible(cert) => prop_assert!(cert.verify(&sys)),
        }
    }

    #[test]
    fn optimum_matches_vertex_enumeration_and_dual(
        rows in prop::collection::vec((pt(2), frac()), 0..=4),
        c in pt(2),
    ) {
        let mut sys = LinearSystem::new(2);
        sys.set_all_nonneg();
        for (a, b) in &rows {
            sys.add_le(a.clone(), b.clone());
        }
        sys.add_le(vec![int(1), int(0)], int(10));
        sys.add_le(vec![int(0), int(1)], int(10));
        let oracle = vertex_oracle(&rows, &c);
        match lp_minimize(&sys, &c).unwrap() {
            LpOutcome::Optimal(opt) => {
                prop_assert!(sys.is_satisfied_by(&opt.witness));
                prop_assert_eq!(dot(&c, &opt.witness), opt.value.clone());
                prop_assert_eq!(opt.dual.lower_bound(&sys, &c), Some(opt.value.clone()));
                prop_assert_eq!(oracle, Some(opt.value));
            }
            LpOutcome::Infeasible(cert) => {
                prop_assert!(cert.verify(&sys));
                prop_assert_eq!(oracle, None);
            }
            LpOutcome::Unbounded => prop_assert!(false, "box-bounded LP reported unbounded"),
        }
    }
}
