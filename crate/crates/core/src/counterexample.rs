//! The cone map from `Δ^m` onto `W = C(skel_{d-1} Δ^m)` and exhaustive checks
//! of face isolation at `m = (d+1)r - 2` and of common image points at
//! `m = (d+1)r - 1`.
//!
//! The map is PL on the barycentric subdivision: the barycenter of a face of
//! dimension at most `d-1` is fixed, every other barycenter goes to the apex
//! `c`, the barycenter of `Δ^m`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact_lp::{self, Intersection, LpError, VPolytope};
use crate::rational::{self, Point};
use crate::simplicial::{
    barycentric_subdivision, cone, faces_of_simplex, pl_image_of_face, realize_standard, skeleton,
    standard_apex, PLMapSpec, Simplex, SimplicialComplex, SimplicialError,
};

#[derive(Debug, Error)]
pub enum CounterexampleError {
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("need d >= 1 and r >= 2, got d = {d}, r = {r}")]
    InvalidParameters { d: usize, r: usize },
    #[error("no face of dimension at most {max_dim} in {tuple:?}")]
    Pigeonhole {
        tuple: Vec<Vec<usize>>,
        max_dim: usize,
    },
    #[error("face {index} of {tuple:?} is not isolated")]
    NotIsolated {
        tuple: Vec<Vec<usize>>,
        index: usize,
    },
    #[error("Farkas certificate failed to verify for {tuple:?}")]
    BadCertificate { tuple: Vec<Vec<usize>> },
}

#[derive(Clone, Debug)]
pub struct CounterexampleSpec {
    pub d: usize,
    pub r: usize,
    pub m: usize,
    /// `C(skel_{d-1} Δ^m)` with apex [`standard_apex`]`(m)`.
    pub cone: SimplicialComplex,
    pub map: PLMapSpec,
}

impl CounterexampleSpec {
    pub fn apex(&self) -> &Point {
        self.map
            .target_realization()
            .point(standard_apex(self.m))
            .expect("apex is realized")
    }

    pub fn image(&self, face: &Simplex) -> Result<Vec<VPolytope>, CounterexampleError> {
        Ok(pl_image_of_face(&self.map, face)?)
    }
}

/// The cone map on `Δ^m` for any `m >= d`.
pub fn build_cone_map(d: usize, m: usize) -> Result<CounterexampleSpec, CounterexampleError> {
    if d == 0 || m < d {
        return Err(CounterexampleError::InvalidParameters { d, r: 0 });
    }
    let base = SimplicialComplex::full_simplex(m);
    let sd = barycentric_subdivision(&base)?;
    let real = realize_standard(m);
    let apex = standard_apex(m);
    let w = cone(&skeleton(&base, d - 1), apex)?;
    let c = real.point(apex)?.clone();
    let images = sd
        .faces()
        .iter()
        .map(|f| {
            if f.dim() < d {
                real.barycenter(f)
            } else {
                Ok(c.clone())
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let map = PLMapSpec::new(sd, &real, w.clone(), real.clone(), images)?;
    Ok(CounterexampleSpec {
        d,
        r: 0,
        m,
        cone: w,
        map,
    })
}

pub fn build_counterexample(d: usize, r: usize) -> Result<CounterexampleSpec, CounterexampleError> {
    if d == 0 || r < 2 {
        return Err(CounterexampleError::InvalidParameters { d, r });
    }
    let mut spec = build_cone_map(d, (d + 1) * r - 2)?;
    spec.r = r;
    Ok(spec)
}

/// Nonempty faces of `Δ^m` ordered by dimension, then lexicographically.
pub fn faces_in_order(m: usize) -> Vec<Simplex> {
    (0..=m)
        .flat_map(|k| faces_of_simplex(m, k).expect("k <= m"))
        .collect()
}

/// Unordered `r`-tuples of pairwise disjoint nonempty faces. Each tuple lists
/// its faces in [`faces_in_order`] order; tuples come in lexicographic order
/// of their face indices.
pub fn enumerate_disjoint_tuples(m: usize, r: usize) -> Vec<Vec<Simplex>> {
    let faces = faces_in_order(m);
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn rec(
        faces: &[Simplex],
        start: usize,
        r: usize,
        used: u64,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<Simplex>>,
    ) {
        if stack.len() == r {
            out.push(stack.iter().map(|&i| faces[i].clone()).collect());
            return;
        }
        for i in start..faces.len() {
            let mask = faces[i].vertices().iter().fold(0u64, |a, v| a | 1 << v);
            if mask & used == 0 {
                stack.push(i);
                rec(faces, i + 1, r, used | mask, stack, out);
                stack.pop();
            }
        }
    }
    assert!(m < 64, "vertex masks hold at most 64 vertices");
    rec(&faces, 0, r, 0, &mut stack, &mut out);
    out
}

fn tuple_vertices(tuple: &[Simplex]) -> Vec<Vec<usize>> {
    tuple.iter().map(|f| f.vertices().to_vec()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsolationRecord {
    pub tuple: Vec<Vec<usize>>,
    /// Index of the isolated face, chosen by the combinatorial criterion.
    pub isolated: usize,
    /// First index that the LP check finds isolated.
    pub geometric: usize,
    /// One digest per polytope pair between the isolated face's image and the
    /// others, in order.
    pub digests: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsolationReport {
    pub d: usize,
    pub r: usize,
    pub m: usize,
    pub records: Vec<IsolationRecord>,
}

/// Certificate digests when every polytope of `a` misses every polytope of
/// `b`, `None` as soon as one pair meets.
fn disjoint_images(
    a: &[VPolytope],
    b: &[VPolytope],
) -> Result<Option<Vec<String>>, CounterexampleError> {
    let mut digests = Vec::with_capacity(a.len() * b.len());
    for p in a {
        for q in b {
            match exact_lp::polytopes_common_point(&[p.clone(), q.clone()])? {
                Intersection::Common(_) => return Ok(None),
                Intersection::Empty {
                    system,
                    certificate,
                } => {
                    if !certificate.verify(&system) {
                        return Err(CounterexampleError::BadCertificate { tuple: Vec::new() });
                    }
                    digests.push(certificate.digest());
                }
            }
        }
    }
    Ok(Some(digests))
}

fn isolation_of(
    images: &[Vec<VPolytope>],
    i: usize,
) -> Result<Option<Vec<String>>, CounterexampleError> {
    let mut digests = Vec::new();
    for (j, other) in images.iter().enumerate() {
        if j == i {
            continue;
        }
        match disjoint_images(&images[i], other)? {
            None => return Ok(None),
            Some(d) => digests.extend(d),
        }
    }
    Ok(Some(digests))
}

fn check_tuple(
    spec: &CounterexampleSpec,
    tuple: &[Simplex],
) -> Result<IsolationRecord, CounterexampleError> {
    let labels = tuple_vertices(tuple);
    let combinatorial = tuple.iter().position(|f| f.dim() < spec.d).ok_or_else(|| {
        CounterexampleError::Pigeonhole {
            tuple: labels.clone(),
            max_dim: spec.d - 1,
        }
    })?;
    let images = tuple
        .iter()
        .map(|f| spec.image(f))
        .collect::<Result<Vec<_>, _>>()?;
    let mut geometric = None;
    let mut chosen = None;
    for i in 0..tuple.len() {
        let isolated = isolation_of(&images, i).map_err(|e| match e {
            CounterexampleError::BadCertificate { .. } => CounterexampleError::BadCertificate {
                tuple: labels.clone(),
            },
            e => e,
        })?;
        if let Some(digests) = isolated {
            geometric.get_or_insert(i);
            if i == combinatorial {
                chosen = Some(digests);
            }
        }
        if geometric.is_some() && i >= combinatorial {
            break;
        }
    }
    let digests = chosen.ok_or_else(|| CounterexampleError::NotIsolated {
        tuple: labels.clone(),
        index: combinatorial,
    })?;
    Ok(IsolationRecord {
        tuple: labels,
        isolated: combinatorial,
        geometric: geometric.expect("combinatorial index is isolated"),
        digests,
    })
}

/// Checks every disjoint `r`-tuple of faces for a face whose image misses
/// the images of all the others. The first failing tuple in canonical order
/// is returned as the error.
pub fn verify_isolation(spec: &CounterexampleSpec) -> Result<IsolationReport, CounterexampleError> {
    let tuples = enumerate_disjoint_tuples(spec.m, spec.r);
    let results: Vec<Result<IsolationRecord, CounterexampleError>> =
        tuples.par_iter().map(|t| check_tuple(spec, t)).collect();
    let records = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(IsolationReport {
        d: spec.d,
        r: spec.r,
        m: spec.m,
        records,
    })
}

pub fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|p| n.is_multiple_of(*p)).expect("n >= 2");
    let mut k = n;
    while k.is_multiple_of(p) {
        k /= p;
    }
    k == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ProbeOutcome {
    Found {
        tuple: Vec<Vec<usize>>,
        /// Index of the chosen polytope inside each face's image.
        choice: Vec<usize>,
        #[serde(with = "rational::serde_frac::vec")]
        point: Point,
        /// Whether the apex lies in the image of every face of the tuple.
        apex_in_all: bool,
        tuples_checked: usize,
    },
    NotFound {
        tuples_checked: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub d: usize,
    pub r: usize,
    pub m: usize,
    pub prime_power: bool,
    #[serde(flatten)]
    pub outcome: ProbeOutcome,
}

impl ProbeReport {
    /// A missing witness contradicts the theorem only for prime powers.
    pub fn is_failure(&self) -> bool {
        self.prime_power && matches!(self.outcome, ProbeOutcome::NotFound { .. })
    }
}

fn tuple_common_point(
    spec: &CounterexampleSpec,
    tuple: &[Simplex],
) -> Result<Option<(Vec<usize>, Point, bool)>, CounterexampleError> {
    let images = tuple
        .iter()
        .map(|f| spec.image(f))
        .collect::<Result<Vec<_>, _>>()?;
    let mut choice = vec![0; images.len()];
    loop {
        let polys: Vec<VPolytope> = choice
            .iter()
            .zip(&images)
            .map(|(&c, img)| img[c].clone())
            .collect();
        if let Intersection::Common(common) = exact_lp::polytopes_common_point(&polys)? {
            let c = spec.apex();
            let mut apex_in_all = true;
            for img in &images {
                let mut any = false;
                for p in img {
                    if p.contains(c)? {
                        any = true;
                        break;
                    }
                }
                apex_in_all &= any;
            }
            return Ok(Some((choice, common.point, apex_in_all)));
        }
        // odometer over polytope choices, last index fastest
        let mut k = images.len();
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < images[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

/// The first disjoint `r`-tuple, in canonical order, whose images share a
/// point, for the cone map on `Δ^m` with `m = (d+1)r - 1`.
pub fn probe_tverberg_plus_one(d: usize, r: usize) -> Result<ProbeReport, CounterexampleError> {
    if d == 0 || r < 2 {
        return Err(CounterexampleError::InvalidParameters { d, r });
    }
    let m = (d + 1) * r - 1;
    let mut spec = build_cone_map(d, m)?;
    spec.r = r;
    let tuples = enumerate_disjoint_tuples(m, r);
    const CHUNK: usize = 64;
    let mut checked = 0;
    for chunk in tuples.chunks(CHUNK) {
        let found = chunk
            .par_iter()
            .enumerate()
            .map(|(i, t)| tuple_common_point(&spec, t).map(|o| o.map(|o| (i, t, o))))
            .find_map_first(|res| match res {
                Ok(None) => None,
                other => Some(other),
            });
        if let Some(res) = found {
            let (i, t, (choice, point, apex_in_all)) = res?.expect("filtered to found tuples");
            return Ok(ProbeReport {
                d,
                r,
                m,
                prime_power: is_prime_power(r),
                outcome: ProbeOutcome::Found {
                    tuple: tuple_vertices(t),
                    choice,
                    point,
                    apex_in_all,
                    tuples_checked: checked + i + 1,
                },
            });
        }
        checked += chunk.len();
    }
    Ok(ProbeReport {
        d,
        r,
        m,
        prime_power: is_prime_power(r),
        outcome: ProbeOutcome::NotFound {
            tuples_checked: checked,
        },
    })
}

/// How many tuples of each dimension profile were checked, keyed by the
/// sorted face dimensions.
pub fn profile_counts(report: &IsolationReport) -> BTreeMap<Vec<usize>, usize> {
    let mut counts = BTreeMap::new();
    for rec in &report.records {
        let mut dims: Vec<usize> = rec.tuple.iter().map(|f| f.len() - 1).collect();
        dims.sort_unstable();
        *counts.entry(dims).or_insert(0) += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use num_traits::Zero;

    fn s(v: &[usize]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    fn binom(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |a, i| a * (n - i) / (i + 1))
    }

    fn stirling2(n: u64, k: u64) -> u64 {
        match (n, k) {
            (0, 0) => 1,
            (_, 0) | (0, _) => 0,
            _ => k * stirling2(n - 1, k) + stirling2(n - 1, k - 1),
        }
    }

    fn tuple_count(m: u64, r: u64) -> u64 {
        (r..=m + 1).map(|j| binom(m + 1, j) * stirling2(j, r)).sum()
    }

    #[test]
    fn tuple_counts() {
        assert_eq!(enumerate_disjoint_tuples(2, 2).len(), 6);
        assert_eq!(
            enumerate_disjoint_tuples(1, 2),
            vec![vec![s(&[0]), s(&[1])]]
        );
        for m in 1..=6u32 {
            let pairs = (3u64.pow(m + 1) + 1 - 2u64.pow(m + 2)) / 2;
            assert_eq!(enumerate_disjoint_tuples(m as usize, 2).len() as u64, pairs);
            for r in 2..=4 {
                assert_eq!(
                    enumerate_disjoint_tuples(m as usize, r as usize).len() as u64,
                    tuple_count(m as u64, r)
                );
            }
        }
        assert_eq!(enumerate_disjoint_tuples(4, 2).len(), 90);
        assert_eq!(enumerate_disjoint_tuples(4, 3).len(), 65);
    }

    #[test]
    fn cone_shapes() {
        let tripod = build_counterexample(1, 2).unwrap();
        assert_eq!(tripod.m, 2);
        assert_eq!(tripod.cone.f_vector(), vec![4, 3]);
        let star = build_counterexample(1, 3).unwrap();
        assert_eq!(star.m, 4);
        assert_eq!(star.cone.f_vector(), vec![6, 5]);
        let k5 = build_counterexample(2, 2).unwrap();
        assert_eq!(k5.m, 4);
        assert_eq!(k5.cone.f_vector(), vec![6, 15, 10]);
        assert_eq!(tripod.apex(), &vec![rat(1, 3); 3]);
    }

    #[test]
    fn small_faces_are_fixed_and_big_faces_hit_the_apex() {
        for (d, r) in [(1, 2), (1, 3), (2, 2)] {
            let spec = build_counterexample(d, r).unwrap();
            let real = realize_standard(spec.m);
            for face in faces_in_order(spec.m) {
                let polys = spec.image(&face).unwrap();
                let corners: Vec<Point> = face
                    .vertices()
                    .iter()
                    .map(|v| real.point(*v).unwrap().clone())
                    .collect();
                for p in &polys {
                    if face.dim() < d {
                        for v in p.vertices() {
                            assert!(exact_lp::in_convex_hull(v, &corners).unwrap().is_some());
                        }
                    } else {
                        assert!(p.contains(spec.apex()).unwrap());
                    }
                    // vertices other than c: barycenters of small subfaces
                    for v in p.vertices().iter().filter(|v| *v != spec.apex()) {
                        let support: Vec<usize> =
                            (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
                        assert!(support.len() <= d);
                        assert!(support.iter().all(|i| face.contains_vertex(*i)));
                    }
                }
            }
        }
    }

    #[test]
    fn isolation_examples() {
        let spec = build_counterexample(1, 2).unwrap();
        let rec = check_tuple(&spec, &[s(&[0]), s(&[1, 2])]).unwrap();
        assert_eq!(rec.isolated, 0);
        let img = spec.image(&s(&[1, 2])).unwrap();
        assert_eq!(img.len(), 2);
        let rec = check_tuple(&spec, &[s(&[0]), s(&[1])]).unwrap();
        assert_eq!((rec.isolated, rec.geometric), (0, 0));
        assert_eq!(
            spec.image(&s(&[0])).unwrap()[0].vertices(),
            &[vec![int(1), int(0), int(0)]]
        );

        let report = verify_isolation(&spec).unwrap();
        assert_eq!(report.records.len(), 6);
    }

    #[test]
    fn probe_finds_apex_for_two_edges() {
        let rep = probe_tverberg_plus_one(1, 2).unwrap();
        assert_eq!(rep.m, 3);
        assert!(!rep.is_failure());
        match rep.outcome {
            ProbeOutcome::Found {
                tuple,
                point,
                apex_in_all,
                ..
            } => {
                assert!(tuple.iter().all(|f| f.len() >= 2));
                assert!(apex_in_all);
                assert_eq!(point, vec![rat(1, 4); 4]);
            }
            ProbeOutcome::NotFound { .. } => panic!("no witness"),
        }
    }

    #[test]
    fn prime_powers() {
        let pp: Vec<usize> = (1..=16).filter(|&n| is_prime_power(n)).collect();
        assert_eq!(pp, vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16]);
    }
}
