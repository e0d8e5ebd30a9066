//! Smallest homothetic copy of a polytope covering a point set, and the
//! facet-touching bound for the simplex.
//!
//! Bodies are in H-form `{y : A y <= b}` with `b > 0`, so the origin is
//! interior. The simplex `Δ^n` is charted in `R^n` by dropping the last
//! barycentric coordinate and moving the barycenter to the origin.

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::counterexample::{build_counterexample, CounterexampleError};
use crate::exact_lp::{self, LinearSystem, LpError, LpOutcome};
use crate::rational::{self, dot, int, rat, Point, Rational};
use crate::simplicial::{
    barycentric_subdivision, realize_standard, PLMapSpec, Realization, Simplex, SimplicialComplex,
    SimplicialError,
};

#[derive(Debug, Error)]
pub enum WaistError {
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Counterexample(#[from] CounterexampleError),
    #[error("right-hand side {0} is not positive, the origin is not interior")]
    OriginNotInterior(usize),
    #[error("the body is unbounded")]
    Unbounded,
    #[error("empty point set")]
    EmptySet,
    #[error("point {0} is not in the standard simplex")]
    OutsideSimplex(usize),
    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("a facet-touching set is covered at scale {0} < 1")]
    FacetBoundViolated(String),
    #[error("need k <= n - 1, got k = {k}, n = {n}")]
    TargetTooLarge { k: usize, n: usize },
    #[error("LP optimum not certified by its dual")]
    Uncertified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytopeBody {
    dim: usize,
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
}

impl HPolytopeBody {
    pub fn new(a: Vec<Vec<Rational>>, b: Vec<Rational>) -> Result<Self, WaistError> {
        let dim = a.first().map(Vec::len).ok_or(WaistError::Unbounded)?;
        if b.len() != a.len() {
            return Err(WaistError::DimensionMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        if let Some(row) = a.iter().find(|row| row.len() != dim) {
            return Err(WaistError::DimensionMismatch {
                expected: dim,
                found: row.len(),
            });
        }
        if let Some(i) = b.iter().position(|x| !x.is_positive()) {
            return Err(WaistError::OriginNotInterior(i));
        }
        let body = HPolytopeBody { dim, a, b };
        body.check_bounded()?;
        Ok(body)
    }

    fn check_bounded(&self) -> Result<(), WaistError> {
        let mut sys = LinearSystem::new(self.dim);
        for (row, rhs) in self.a.iter().zip(&self.b) {
            sys.add_le(row.clone(), rhs.clone());
        }
        for k in 0..self.dim {
            for sign in [1, -1] {
                let mut obj = vec![Rational::zero(); self.dim];
                obj[k] = int(sign);
                if let LpOutcome::Unbounded = exact_lp::lp_minimize(&sys, &obj)? {
                    return Err(WaistError::Unbounded);
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn a(&self) -> &[Vec<Rational>] {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    /// Whether `y` lies in `delta K + t`.
    pub fn scaled_contains(&self, y: &[Rational], delta: &Rational, t: &[Rational]) -> bool {
        let z: Point = y.iter().zip(t).map(|(a, b)| a - b).collect();
        self.a
            .iter()
            .zip(&self.b)
            .all(|(row, rhs)| dot(row, &z) <= delta * rhs)
    }
}

/// `Δ^n` in the chart `z = (x_0, ..., x_{n-1}) - c`; facet `i` is `x_i >= 0`.
pub fn standard_simplex(n: usize) -> HPolytopeBody {
    let c = rat(1, n as i64 + 1);
    let mut a = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut row = vec![Rational::zero(); n];
        row[i] = -Rational::one();
        a.push(row);
    }
    a.push(vec![Rational::one(); n]);
    HPolytopeBody::new(a, vec![c; n + 1]).expect("the simplex is a body")
}

/// Barycentric coordinates on `Δ^n` to the chart of [`standard_simplex`].
pub fn simplex_chart(x: &[Rational]) -> Point {
    let c = rat(1, x.len() as i64);
    x[..x.len() - 1].iter().map(|v| v - &c).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverCertificate {
    #[serde(with = "rational::serde_frac")]
    pub delta: Rational,
    #[serde(with = "rational::serde_frac::vec")]
    pub translate: Point,
    /// `(point index, facet index)` pairs holding with equality.
    pub tight: Vec<(usize, usize)>,
}

impl CoverCertificate {
    pub fn verify(&self, set: &[Point], body: &HPolytopeBody) -> bool {
        set.iter()
            .all(|s| body.scaled_contains(s, &self.delta, &self.translate))
    }
}

/// Least `delta` with `S ⊆ delta K + t` for some `t`, over variables
/// `(delta, t)` with `a·(s - t) <= delta b_a` for every point and facet.
pub fn min_cover_homothety(
    set: &[Point],
    body: &HPolytopeBody,
) -> Result<CoverCertificate, WaistError> {
    if set.is_empty() {
        return Err(WaistError::EmptySet);
    }
    let n = body.dim;
    if let Some(s) = set.iter().find(|s| s.len() != n) {
        return Err(WaistError::DimensionMismatch {
            expected: n,
            found: s.len(),
        });
    }
    let mut sys = LinearSystem::new(n + 1);
    sys.set_nonneg(0)?;
    for s in set {
        for (row, rhs) in body.a.iter().zip(&body.b) {
            let mut coeffs = Vec::with_capacity(n + 1);
            coeffs.push(-rhs.clone());
            coeffs.extend(row.iter().map(|c| -c));
            sys.add_le(coeffs, -dot(row, s));
        }
    }
    let mut obj = vec![Rational::zero(); n + 1];
    obj[0] = Rational::one();
    let opt = match exact_lp::lp_minimize(&sys, &obj)? {
        LpOutcome::Optimal(opt) => opt,
        LpOutcome::Infeasible(_) | LpOutcome::Unbounded => {
            unreachable!("a large enough copy covers any finite set and delta >= 0")
        }
    };
    if opt.dual.lower_bound(&sys, &obj).as_ref() != Some(&opt.value) {
        return Err(WaistError::Uncertified);
    }
    let translate = opt.witness[1..].to_vec();
    let delta = opt.value;
    let mut tight = Vec::new();
    for (i, s) in set.iter().enumerate() {
        let z: Point = s.iter().zip(&translate).map(|(a, b)| a - b).collect();
        for (j, (row, rhs)) in body.a.iter().zip(&body.b).enumerate() {
            if dot(row, &z) == &delta * rhs {
                tight.push((i, j));
            }
        }
    }
    Ok(CoverCertificate {
        delta,
        translate,
        tight,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetReport {
    pub touches_all: bool,
    pub cover: CoverCertificate,
}

/// Whether a set of barycentric points meets every facet of `Δ^n`; if so its
/// covering scale must be at least 1, and a smaller one is an error.
pub fn facet_touching_check(set: &[Point]) -> Result<FacetReport, WaistError> {
    let coords = set.first().ok_or(WaistError::EmptySet)?.len();
    if coords < 2 {
        return Err(WaistError::DimensionMismatch {
            expected: 2,
            found: coords,
        });
    }
    for (i, x) in set.iter().enumerate() {
        if x.len() != coords || !rational::is_convex_weights(x) {
            return Err(WaistError::OutsideSimplex(i));
        }
    }
    let touches_all = (0..coords).all(|k| set.iter().any(|x| x[k].is_zero()));
    let chart: Vec<Point> = set.iter().map(|x| simplex_chart(x)).collect();
    let cover = min_cover_homothety(&chart, &standard_simplex(coords - 1))?;
    if touches_all && cover.delta < Rational::one() {
        return Err(WaistError::FacetBoundViolated(cover.delta.to_string()));
    }
    Ok(FacetReport { touches_all, cover })
}

/// Maps offered by the fiber demo.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DemoMap {
    /// `Δ^n → [0, 1]`, the first barycentric coordinate.
    Projection,
    /// `Δ^n` to a point.
    Constant,
    /// The cone map onto `C(skel_0 Δ^2)`, the tripod.
    Counterexample,
}

fn demo_map(map: DemoMap, n: usize) -> Result<(PLMapSpec, usize), WaistError> {
    let base = SimplicialComplex::full_simplex(n);
    let sd = barycentric_subdivision(&base)?;
    let real = realize_standard(n);
    let (target, images, k) = match map {
        DemoMap::Projection => {
            let mut pts = BTreeMap::new();
            pts.insert(0, vec![int(1)]);
            for v in 1..=n {
                pts.insert(v, vec![int(0)]);
            }
            let images = Realization::new(1, pts)?;
            let segment = SimplicialComplex::from_simplices([Simplex::new(vec![0, 1])?]);
            let mut tpts = BTreeMap::new();
            tpts.insert(0, vec![int(1)]);
            tpts.insert(1, vec![int(0)]);
            (segment, (images, Realization::new(1, tpts)?), 1)
        }
        DemoMap::Constant => {
            let pts: BTreeMap<usize, Point> = (0..=n).map(|v| (v, vec![int(0)])).collect();
            let images = Realization::new(1, pts)?;
            let point = SimplicialComplex::from_simplices([Simplex::new(vec![0])?]);
            let tpts = BTreeMap::from([(0, vec![int(0)])]);
            (point, (images, Realization::new(1, tpts)?), 0)
        }
        DemoMap::Counterexample => {
            if n != 2 {
                return Err(WaistError::DimensionMismatch {
                    expected: 2,
                    found: n,
                });
            }
            return Ok((build_counterexample(1, 2)?.map, 1));
        }
    };
    let (images, target_real) = images;
    let f = PLMapSpec::affine(sd, &real, target, target_real, &images)?;
    Ok((f, k))
}

/// All barycentric points of `Δ^n` with denominator `den`.
pub fn simplex_grid(n: usize, den: usize) -> Vec<Point> {
    fn rec(left: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in (0..=left).rev() {
            cur.push(v);
            rec(left - v, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(den, n + 1, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|c| c.into_iter().map(|v| rat(v as i64, den as i64)).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberCell {
    /// `floor(den * y)` per coordinate of the image.
    pub cell: Vec<i64>,
    pub samples: usize,
    pub cover: CoverCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub kind: &'static str,
    pub map: DemoMap,
    pub n: usize,
    pub k: usize,
    pub den: usize,
    pub cells: Vec<FiberCell>,
    #[serde(with = "rational::serde_frac")]
    pub max_delta: Rational,
}

/// Grid-sampled fibers of a PL map on `Δ^n` and their covering scales. The
/// samples only approximate the fibers, so the result is evidence, not proof.
pub fn fiber_width_demo(map: DemoMap, n: usize, den: usize) -> Result<FiberReport, WaistError> {
    let (f, k) = demo_map(map, n)?;
    if k + 1 > n {
        return Err(WaistError::TargetTooLarge { k, n });
    }
    let scale = int(den as i64);
    let mut cells: BTreeMap<Vec<i64>, Vec<Point>> = BTreeMap::new();
    for x in simplex_grid(n, den) {
        let y = f.evaluate(&x)?;
        let key: Vec<i64> = y
            .iter()
            .map(|v| {
                (v * &scale)
                    .floor()
                    .to_integer()
                    .to_i64()
                    .expect("small grid")
            })
            .collect();
        cells.entry(key).or_default().push(x);
    }
    let body = standard_simplex(n);
    let cells: Vec<FiberCell> = cells
        .into_par_iter()
        .map(|(cell, xs)| {
            let chart: Vec<Point> = xs.iter().map(|x| simplex_chart(x)).collect();
            min_cover_homothety(&chart, &body).map(|cover| FiberCell {
                cell,
                samples: xs.len(),
                cover,
            })
        })
        .collect::<Result<_, _>>()?;
    let max_delta = cells
        .iter()
        .map(|c| c.cover.delta.clone())
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(FiberReport {
        kind: "evidence",
        map,
        n,
        k,
        den,
        cells,
        max_delta,
    })
}
