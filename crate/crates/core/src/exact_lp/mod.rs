//! Exact rational linear programming.
//!
//! All geometric predicates of the crate reduce to one of the operations
//! here: feasibility with Farkas certificates, minimization with a dual
//! certificate, convex-hull membership, common points of V-polytopes, and
//! strict separation of a point from a finite set.

mod simplex;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, dot, Point, Rational};
use simplex::{PhaseOneResult, PhaseTwoResult, Tableau};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("variable index {0} out of range")]
    VariableOutOfRange(usize),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Eq,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// A system of `<=` and `=` rows over `n_vars` variables.
///
/// Variables are free unless marked nonnegative with [`set_nonneg`]. Sign
/// bounds are kept apart from the rows so the solver does not pay for them as
/// constraints.
///
/// [`set_nonneg`]: LinearSystem::set_nonneg
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem {
    n_vars: usize,
    constraints: Vec<Constraint>,
    nonneg: Vec<bool>,
}

impl LinearSystem {
    pub fn new(n_vars: usize) -> Self {
        LinearSystem {
            n_vars,
            constraints: Vec::new(),
            nonneg: vec![false; n_vars],
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn is_nonneg(&self, var: usize) -> bool {
        self.nonneg[var]
    }

    pub fn set_nonneg(&mut self, var: usize) -> Result<(), LpError> {
        if var >= self.n_vars {
            return Err(LpError::VariableOutOfRange(var));
        }
        self.nonneg[var] = true;
        Ok(())
    }

    pub fn set_all_nonneg(&mut self) {
        self.nonneg.iter_mut().for_each(|b| *b = true);
    }

    /// Appends a row without validation; [`check`](Self::check) runs before
    /// every solve.
    pub fn push(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn add_le(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.push(coeffs, Relation::Le, rhs);
    }

    /// `coeffs . x >= rhs`, stored as the negated `<=` row.
    pub fn add_ge(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        let neg = coeffs.into_iter().map(|c| -c).collect();
        self.push(neg, Relation::Le, -rhs);
    }

    pub fn add_eq(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.push(coeffs, Relation::Eq, rhs);
    }

    pub fn check(&self) -> Result<(), LpError> {
        for c in &self.constraints {
            if c.coeffs.len() != self.n_vars {
                return Err(LpError::DimensionMismatch {
                    expected: self.n_vars,
                    found: c.coeffs.len(),
                });
            }
        }
        Ok(())
    }

    /// Exact check of every row and sign bound at `x`.
    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        if x.len() != self.n_vars {
            return false;
        }
        if (0..self.n_vars).any(|j| self.nonneg[j] && x[j].is_negative()) {
            return false;
        }
        self.constraints.iter().all(|c| {
            let lhs = dot(&c.coeffs, x);
            match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Eq => lhs == c.rhs,
            }
        })
    }
}

/// Proof of infeasibility: multiplying row `i` by `row_multipliers[i]`
/// (nonnegative on `<=` rows) and each sign bound `-x_j <= 0` by
/// `bound_multipliers[j]` (nonnegative) and summing gives `0 <= -1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FarkasCertificate {
    #[serde(with = "rational::serde_frac::vec")]
    pub row_multipliers: Vec<Rational>,
    #[serde(with = "rational::serde_frac::vec")]
    pub bound_multipliers: Vec<Rational>,
}

impl FarkasCertificate {
    pub fn verify(&self, sys: &LinearSystem) -> bool {
        if self.row_multipliers.len() != sys.constraints.len()
            || self.bound_multipliers.len() != sys.n_vars
        {
            return false;
        }
        let mut combo = vec![Rational::zero(); sys.n_vars];
        let mut rhs = Rational::zero();
        for (c, y) in sys.constraints.iter().zip(&self.row_multipliers) {
            if c.relation == Relation::Le && y.is_negative() {
                return false;
            }
            if y.is_zero() {
                continue;
            }
            for (acc, a) in combo.iter_mut().zip(&c.coeffs) {
                *acc += y * a;
            }
            rhs += y * &c.rhs;
        }
        for (j, u) in self.bound_multipliers.iter().enumerate() {
            if u.is_negative() || (!u.is_zero() && !sys.nonneg[j]) {
                return false;
            }
            combo[j] -= u;
        }
        combo.iter().all(Zero::is_zero) && rhs == -Rational::one()
    }

    /// Short stable fingerprint of the certificate.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        for y in &self.row_multipliers {
            h.update(y.to_string().as_bytes());
            h.update(b",");
        }
        h.update(b";");
        for u in &self.bound_multipliers {
            h.update(u.to_string().as_bytes());
            h.update(b",");
        }
        hex::encode(&h.finalize()[..8])
    }
}

/// Lagrange multipliers certifying a minimum: `objective = sum_i y_i a_i + v`
/// with `y_i <= 0` on `<=` rows and `v_j >= 0` only on nonnegative variables.
/// Weak duality then gives `objective . x >= sum_i y_i b_i` on the feasible set.
#[derive(Clone, Debug, PartialEq)]
pub struct DualCertificate {
    pub row_multipliers: Vec<Rational>,
    pub bound_multipliers: Vec<Rational>,
}

impl DualCertificate {
    /// Returns the lower bound this certificate proves, or `None` if it is
    /// not a valid dual solution for `(sys, objective)`.
    pub fn lower_bound(&self, sys: &LinearSystem, objective: &[Rational]) -> Option<Rational> {
        if self.row_multipliers.len() != sys.constraints.len()
            || self.bound_multipliers.len() != sys.n_vars
            || objective.len() != sys.n_vars
        {
            return None;
        }
        let mut combo = vec![Rational::zero(); sys.n_vars];
        let mut bound = Rational::zero();
        for (c, y) in sys.constraints.iter().zip(&self.row_multipliers) {
            if c.relation == Relation::Le && y.is_positive() {
                return None;
            }
            for (acc, a) in combo.iter_mut().zip(&c.coeffs) {
                *acc += y * a;
            }
            bound += y * &c.rhs;
        }
        for (j, v) in self.bound_multipliers.iter().enumerate() {
            if v.is_negative() || (!v.is_zero() && !sys.nonneg[j]) {
                return None;
            }
            combo[j] += v;
        }
        (combo.as_slice() == objective).then_some(bound)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible(FarkasCertificate),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Optimum {
    pub value: Rational,
    pub witness: Vec<Rational>,
    pub dual: DualCertificate,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(Optimum),
    Infeasible(FarkasCertificate),
    Unbounded,
}

fn bound_multipliers(sys: &LinearSystem, rows: &[Rational], base: &[Rational]) -> Vec<Rational> {
    // v_j = base_j - sum_i y_i a_ij on nonnegative columns, zero elsewhere
    let mut v: Vec<Rational> = base.to_vec();
    for (c, y) in sys.constraints.iter().zip(rows) {
        if y.is_zero() {
            continue;
        }
        for (vj, a) in v.iter_mut().zip(&c.coeffs) {
            *vj -= y * a;
        }
    }
    for (j, vj) in v.iter_mut().enumerate() {
        if !sys.nonneg[j] {
            debug_assert!(vj.is_zero());
            *vj = Rational::zero();
        }
    }
    v
}

fn farkas(sys: &LinearSystem, multipliers: Vec<Rational>) -> FarkasCertificate {
    let zero = vec![Rational::zero(); sys.n_vars];
    // combination sum_i y_i a_i - u = 0, so u_j = sum_i y_i a_ij
    let bound = bound_multipliers(sys, &multipliers, &zero)
        .into_iter()
        .map(|v| -v)
        .collect();
    FarkasCertificate {
        row_multipliers: multipliers,
        bound_multipliers: bound,
    }
}

/// Finds a point satisfying every row exactly, or a Farkas certificate.
pub fn lp_feasible(sys: &LinearSystem) -> Result<Feasibility, LpError> {
    sys.check()?;
    match Tableau::build(sys).phase_one() {
        PhaseOneResult::Infeasible { multipliers } => {
            Ok(Feasibility::Infeasible(farkas(sys, multipliers)))
        }
        PhaseOneResult::Feasible(t) => Ok(Feasibility::Feasible(t.primal_values())),
    }
}

/// Minimizes `objective . x` over the system.
pub fn lp_minimize(sys: &LinearSystem, objective: &[Rational]) -> Result<LpOutcome, LpError> {
    sys.check()?;
    if objective.len() != sys.n_vars {
        return Err(LpError::DimensionMismatch {
            expected: sys.n_vars,
            found: objective.len(),
        });
    }
    let t = match Tableau::build(sys).phase_one() {
        PhaseOneResult::Infeasible { multipliers } => {
            return Ok(LpOutcome::Infeasible(farkas(sys, multipliers)))
        }
        PhaseOneResult::Feasible(t) => t,
    };
    match t.phase_two(objective) {
        PhaseTwoResult::Unbounded => Ok(LpOutcome::Unbounded),
        PhaseTwoResult::Optimal {
            value,
            witness,
            duals,
        } => {
            let bound = bound_multipliers(sys, &duals, objective);
            Ok(LpOutcome::Optimal(Optimum {
                value,
                witness,
                dual: DualCertificate {
                    row_multipliers: duals,
                    bound_multipliers: bound,
                },
            }))
        }
    }
}

fn check_dims(dim: usize, points: &[Point]) -> Result<(), LpError> {
    for p in points {
        if p.len() != dim {
            return Err(LpError::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
    }
    Ok(())
}

/// Convex weights expressing `p` as a combination of `points`, if any exist.
/// An empty `points` list has an empty hull.
pub fn in_convex_hull(p: &[Rational], points: &[Point]) -> Result<Option<Vec<Rational>>, LpError> {
    check_dims(p.len(), points)?;
    if points.is_empty() {
        return Ok(None);
    }
    let n = points.len();
    let mut sys = LinearSystem::new(n);
    sys.set_all_nonneg();
    sys.add_eq(vec![Rational::one(); n], Rational::one());
    for (k, pk) in p.iter().enumerate() {
        sys.add_eq(points.iter().map(|s| s[k].clone()).collect(), pk.clone());
    }
    match lp_feasible(&sys)? {
        Feasibility::Feasible(w) => Ok(Some(w)),
        Feasibility::Infeasible(_) => Ok(None),
    }
}

/// Convex hull of a nonempty finite list of points (not necessarily minimal).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VPolytope {
    ambient_dim: usize,
    #[serde(with = "rational::serde_frac::vec2")]
    vertices: Vec<Point>,
}

impl VPolytope {
    pub fn new(vertices: Vec<Point>) -> Result<Self, LpError> {
        let first = vertices
            .first()
            .ok_or(LpError::EmptyInput("polytope without vertices"))?;
        let ambient_dim = first.len();
        check_dims(ambient_dim, &vertices)?;
        Ok(VPolytope {
            ambient_dim,
            vertices,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn contains(&self, p: &[Rational]) -> Result<bool, LpError> {
        Ok(in_convex_hull(p, &self.vertices)?.is_some())
    }
}

/// Witness that a family of V-polytopes shares a point.
#[derive(Clone, Debug, PartialEq)]
pub struct CommonPoint {
    pub point: Point,
    /// Convex weights per polytope, each reproducing `point`.
    pub weights: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Intersection {
    Common(CommonPoint),
    Empty {
        system: LinearSystem,
        certificate: FarkasCertificate,
    },
}

impl Intersection {
    pub fn point(&self) -> Option<&Point> {
        match self {
            Intersection::Common(c) => Some(&c.point),
            Intersection::Empty { .. } => None,
        }
    }
}

/// The LP whose feasible points are families of convex weights, one family per
/// polytope, all producing the same point. The common point is expressed
/// through the first polytope's weights. Optional per-coordinate bounds
/// restrict where that point may lie.
pub(crate) fn common_point_system(
    polys: &[&VPolytope],
    bounds: Option<&[(Rational, Rational)]>,
) -> (LinearSystem, Vec<usize>) {
    let dim = polys[0].ambient_dim;
    let mut offsets = Vec::with_capacity(polys.len());
    let mut n = 0;
    for p in polys {
        offsets.push(n);
        n += p.vertices.len();
    }
    let mut sys = LinearSystem::new(n);
    sys.set_all_nonneg();
    for (i, p) in polys.iter().enumerate() {
        let mut row = vec![Rational::zero(); n];
        for j in 0..p.vertices.len() {
            row[offsets[i] + j] = Rational::one();
        }
        sys.add_eq(row, Rational::one());
    }
    let first = polys[0];
    for (i, p) in polys.iter().enumerate().skip(1) {
        for k in 0..dim {
            let mut row = vec![Rational::zero(); n];
            for (j, v) in first.vertices.iter().enumerate() {
                row[j] = v[k].clone();
            }
            for (j, v) in p.vertices.iter().enumerate() {
                row[offsets[i] + j] -= &v[k];
            }
            sys.add_eq(row, Rational::zero());
        }
    }
    if let Some(bounds) = bounds {
        for (k, (lo, hi)) in bounds.iter().enumerate() {
            let mut row = vec![Rational::zero(); n];
            for (j, v) in first.vertices.iter().enumerate() {
                row[j] = v[k].clone();
            }
            sys.add_ge(row.clone(), lo.clone());
            sys.add_le(row, hi.clone());
        }
    }
    (sys, offsets)
}

pub(crate) fn solve_common_point(
    polys: &[&VPolytope],
    bounds: Option<&[(Rational, Rational)]>,
) -> Result<Intersection, LpError> {
    let (sys, offsets) = common_point_system(polys, bounds);
    match lp_feasible(&sys)? {
        Feasibility::Infeasible(certificate) => Ok(Intersection::Empty {
            system: sys,
            certificate,
        }),
        Feasibility::Feasible(w) => {
            let weights: Vec<Vec<Rational>> = polys
                .iter()
                .zip(&offsets)
                .map(|(p, &o)| w[o..o + p.vertices.len()].to_vec())
                .collect();
            let point = rational::combine(&weights[0], &polys[0].vertices, polys[0].ambient_dim);
            Ok(Intersection::Common(CommonPoint { point, weights }))
        }
    }
}

/// A point lying in every polytope, or a certificate that none exists.
pub fn polytopes_common_point(polys: &[VPolytope]) -> Result<Intersection, LpError> {
    let first = polys.first().ok_or(LpError::EmptyInput("no polytopes"))?;
    for p in polys {
        if p.ambient_dim != first.ambient_dim {
            return Err(LpError::DimensionMismatch {
                expected: first.ambient_dim,
                found: p.ambient_dim,
            });
        }
    }
    let refs: Vec<&VPolytope> = polys.iter().collect();
    solve_common_point(&refs, None)
}

/// An affine functional with `functional . p - offset >= margin > 0` on the
/// separated set and `<= -margin` at the separated point.
#[derive(Clone, Debug, PartialEq)]
pub struct Separator {
    pub functional: Vec<Rational>,
    pub offset: Rational,
    pub margin: Rational,
}

/// Maximizes the separation margin `t` over functionals with coefficients in
/// `[-1, 1]` and `t <= 1`. The result is `Some` iff the optimum is positive.
pub fn separating_functional(set: &[Point], x: &[Rational]) -> Result<Option<Separator>, LpError> {
    let d = x.len();
    check_dims(d, set)?;
    // variables: a_0..a_{d-1}, b, t
    let n = d + 2;
    let (ib, it) = (d, d + 1);
    let mut sys = LinearSystem::new(n);
    for p in set {
        // -(a.p) + b + t <= 0
        let mut row: Vec<Rational> = p.iter().map(|c| -c).collect();
        row.push(Rational::one());
        row.push(Rational::one());
        sys.add_le(row, Rational::zero());
    }
    let mut row: Vec<Rational> = x.to_vec();
    row.push(-Rational::one());
    row.push(Rational::one());
    sys.add_le(row, Rational::zero());
    for k in 0..d {
        let mut e = vec![Rational::zero(); n];
        e[k] = Rational::one();
        sys.add_le(e.clone(), Rational::one());
        e[k] = -Rational::one();
        sys.add_le(e, Rational::one());
    }
    let mut et = vec![Rational::zero(); n];
    et[it] = Rational::one();
    sys.add_le(et, Rational::one());

    let mut objective = vec![Rational::zero(); n];
    objective[it] = -Rational::one();
    match lp_minimize(&sys, &objective)? {
        LpOutcome::Optimal(opt) => {
            let margin = opt.witness[it].clone();
            if margin.is_positive() {
                Ok(Some(Separator {
                    functional: opt.witness[..d].to_vec(),
                    offset: opt.witness[ib].clone(),
                    margin,
                }))
            } else {
                Ok(None)
            }
        }
        // a = 0, b = 0, t = 0 is always feasible and t <= 1 bounds the objective
        LpOutcome::Infeasible(_) | LpOutcome::Unbounded => {
            unreachable!("separation LP is feasible and bounded")
        }
    }
}

/// True iff some affine functional is strictly positive on `set` and
/// strictly negative at `x`.
pub fn strictly_separable(set: &[Point], x: &[Rational]) -> Result<bool, LpError> {
    Ok(separating_functional(set, x)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, int_point, point, rat};

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn interval_is_feasible() {
        let mut sys = LinearSystem::new(1);
        sys.add_ge(row(&[1]), int(0));
        sys.add_le(row(&[1]), int(1));
        match lp_feasible(&sys).unwrap() {
            Feasibility::Feasible(x) => assert!(sys.is_satisfied_by(&x)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_interval_has_farkas_certificate() {
        let mut sys = LinearSystem::new(1);
        sys.add_le(row(&[1]), int(0));
        sys.add_ge(row(&[1]), int(1));
        match lp_feasible(&sys).unwrap() {
            Feasibility::Infeasible(cert) => {
                assert!(cert.verify(&sys));
                assert_eq!(cert.row_multipliers, vec![int(1), int(1)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let mut sys = LinearSystem::new(2);
        sys.add_le(row(&[1]), int(0));
        assert_eq!(
            lp_feasible(&sys),
            Err(LpError::DimensionMismatch {
                expected: 2,
                found: 1
            })
        );
        assert!(in_convex_hull(&int_point(&[0]), &[int_point(&[0, 1])]).is_err());
    }

    #[test]
    fn square_center_weights() {
        let square = vec![
            int_point(&[0, 0]),
            int_point(&[1, 0]),
            int_point(&[1, 1]),
            int_point(&[0, 1]),
        ];
        let c = point(&[(1, 2), (1, 2)]);
        let w = in_convex_hull(&c, &square).unwrap().unwrap();
        assert!(rational::is_convex_weights(&w));
        assert_eq!(rational::combine(&w, &square, 2), c);

        // the uniform weights satisfy the same system
        let mut sys = LinearSystem::new(4);
        sys.set_all_nonneg();
        sys.add_eq(row(&[1, 1, 1, 1]), int(1));
        sys.add_eq(row(&[0, 1, 1, 0]), rat(1, 2));
        sys.add_eq(row(&[0, 0, 1, 1]), rat(1, 2));
        assert!(sys.is_satisfied_by(&vec![rat(1, 4); 4]));
        match lp_feasible(&sys).unwrap() {
            Feasibility::Feasible(x) => assert!(sys.is_satisfied_by(&x)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn minimize_examples() {
        let mut sys = LinearSystem::new(1);
        sys.add_ge(row(&[1]), int(0));
        sys.add_le(row(&[1]), int(1));
        match lp_minimize(&sys, &row(&[1])).unwrap() {
            LpOutcome::Optimal(o) => {
                assert_eq!(o.value, int(0));
                assert_eq!(o.dual.lower_bound(&sys, &row(&[1])), Some(int(0)));
            }
            other => panic!("{other:?}"),
        }

        let mut sys = LinearSystem::new(2);
        sys.add_ge(row(&[1, 0]), int(1));
        sys.add_ge(row(&[0, 1]), int(2));
        match lp_minimize(&sys, &row(&[1, 1])).unwrap() {
            LpOutcome::Optimal(o) => {
                assert_eq!(o.value, int(3));
                assert_eq!(o.witness, row(&[1, 2]));
                assert_eq!(o.dual.lower_bound(&sys, &row(&[1, 1])), Some(int(3)));
            }
            other => panic!("{other:?}"),
        }

        // cover {0, 1/2} by delta*[0,1] + t: s - t >= 0, s - t <= delta
        let mut sys = LinearSystem::new(2); // (delta, t)
        for s in [int(0), rat(1, 2)] {
            sys.add_le(row(&[0, 1]), s.clone());
            sys.add_le(row(&[-1, -1]), -s);
        }
        match lp_minimize(&sys, &row(&[1, 0])).unwrap() {
            LpOutcome::Optimal(o) => assert_eq!(o.value, rat(1, 2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbounded_and_infeasible_minimize() {
        let mut sys = LinearSystem::new(1);
        sys.add_le(row(&[1]), int(5));
        assert_eq!(lp_minimize(&sys, &row(&[1])).unwrap(), LpOutcome::Unbounded);

        sys.add_ge(row(&[1]), int(6));
        match lp_minimize(&sys, &row(&[1])).unwrap() {
            LpOutcome::Infeasible(c) => assert!(c.verify(&sys)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nonneg_bounds_enter_the_certificate() {
        // x >= 0, y >= 0, x + y <= -1
        let mut sys = LinearSystem::new(2);
        sys.set_all_nonneg();
        sys.add_le(row(&[1, 1]), int(-1));
        match lp_feasible(&sys).unwrap() {
            Feasibility::Infeasible(c) => {
                assert!(c.verify(&sys));
                assert_eq!(c.bound_multipliers, row(&[1, 1]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_equalities() {
        let mut sys = LinearSystem::new(2);
        sys.add_eq(row(&[1, 1]), int(2));
        sys.add_eq(row(&[2, 2]), int(4));
        sys.add_eq(row(&[1, -1]), int(0));
        match lp_minimize(&sys, &row(&[1, 0])).unwrap() {
            LpOutcome::Optimal(o) => {
                assert_eq!(o.witness, row(&[1, 1]));
                assert_eq!(o.dual.lower_bound(&sys, &row(&[1, 0])), Some(int(1)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn hull_examples() {
        let seg = vec![int_point(&[0]), int_point(&[2])];
        assert_eq!(
            in_convex_hull(&int_point(&[1]), &seg).unwrap(),
            Some(vec![rat(1, 2), rat(1, 2)])
        );
        assert_eq!(in_convex_hull(&int_point(&[3]), &seg).unwrap(), None);
        assert_eq!(in_convex_hull(&int_point(&[3]), &[]).unwrap(), None);
    }

    #[test]
    fn common_point_examples() {
        let a = VPolytope::new(vec![int_point(&[0, 0]), int_point(&[1, 1])]).unwrap();
        let b = VPolytope::new(vec![int_point(&[1, 0]), int_point(&[0, 1])]).unwrap();
        let r = polytopes_common_point(&[a, b]).unwrap();
        assert_eq!(r.point(), Some(&point(&[(1, 2), (1, 2)])));

        let a = VPolytope::new(vec![int_point(&[0])]).unwrap();
        let b = VPolytope::new(vec![int_point(&[1])]).unwrap();
        match polytopes_common_point(&[a, b]).unwrap() {
            Intersection::Empty {
                system,
                certificate,
            } => assert!(certificate.verify(&system)),
            other => panic!("{other:?}"),
        }
        assert!(polytopes_common_point(&[]).is_err());
    }

    #[test]
    fn separation_examples() {
        assert!(strictly_separable(&[int_point(&[2]), int_point(&[3])], &int_point(&[0])).unwrap());
        let three = vec![int_point(&[0, 0]), int_point(&[1, 0]), int_point(&[1, 1])];
        assert!(!strictly_separable(&three, &point(&[(1, 2), (1, 2)])).unwrap());
        assert!(!strictly_separable(&[int_point(&[1])], &int_point(&[1])).unwrap());
        assert!(strictly_separable(&[], &int_point(&[1])).unwrap());
        let s = separating_functional(&[int_point(&[2]), int_point(&[3])], &int_point(&[0]))
            .unwrap()
            .unwrap();
        for p in [2, 3] {
            assert!(dot(&s.functional, &int_point(&[p])) - &s.offset >= s.margin);
        }
        assert!(dot(&s.functional, &int_point(&[0])) - &s.offset <= -s.margin.clone());
    }
}
