//! Finite abstract simplicial complexes on integer vertex ids, their
//! barycentric subdivisions, rational realizations and PL maps.

mod pl;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_lp::LpError;
use crate::rational::{self, int, Point, Rational};

pub use pl::{pl_image_of_face, squaring_map, PLMapSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("a simplex needs at least one vertex")]
    EmptySimplex,
    #[error("repeated vertex {0} in simplex")]
    RepeatedVertex(usize),
    #[error("face dimension {dim} exceeds simplex dimension {m}")]
    DimensionTooLarge { dim: usize, m: usize },
    #[error("apex {0} is already a vertex of the complex")]
    ApexCollision(usize),
    #[error("{0:?} is not a face of the complex")]
    NotAFace(Vec<usize>),
    #[error("vertex {0} has no realized point")]
    MissingVertex(usize),
    #[error("point does not lie on the unit sphere")]
    NotOnSphere,
    #[error("point is not in the realized source complex")]
    OutsideSource,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the complex is empty")]
    EmptyComplex,
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// A nonempty strictly increasing list of vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(mut vertices: Vec<usize>) -> Result<Self, SimplicialError> {
        if vertices.is_empty() {
            return Err(SimplicialError::EmptySimplex);
        }
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(SimplicialError::RepeatedVertex(w[0]));
        }
        Ok(Simplex(vertices))
    }

    /// Caller guarantees `vertices` is nonempty, sorted and duplicate free.
    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(!vertices.is_empty() && vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains_vertex(*v))
    }

    /// All nonempty faces, including `self`.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        (1..=self.0.len()).flat_map(move |k| {
            self.0
                .iter()
                .copied()
                .combinations(k)
                .map(Simplex::from_sorted)
        })
    }

    /// Faces of codimension one, in the order obtained by deleting vertex
    /// `0, 1, ...`.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.0.len() == 1 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|i| {
                let mut v = self.0.clone();
                v.remove(i);
                Simplex(v)
            })
            .collect()
    }

    pub fn map_vertices(&self, f: impl Fn(usize) -> usize) -> Result<Simplex, SimplicialError> {
        Simplex::new(self.0.iter().map(|&v| f(v)).collect())
    }
}

impl<'de> Deserialize<'de> for Simplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Simplex::new(v).map_err(serde::de::Error::custom)
    }
}

/// A finite simplicial complex stored by its maximal simplices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    vertices: BTreeSet<usize>,
    maximal: BTreeSet<Simplex>,
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    maximal: Vec<Simplex>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ComplexRepr {
            maximal: self.maximal.iter().cloned().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ComplexRepr::deserialize(d)?;
        Ok(SimplicialComplex::from_simplices(r.maximal))
    }
}

impl SimplicialComplex {
    /// The smallest complex containing every given simplex.
    pub fn from_simplices<I: IntoIterator<Item = Simplex>>(simplices: I) -> Self {
        let given: BTreeSet<Simplex> = simplices.into_iter().collect();
        let vertices = given.iter().flat_map(|s| s.0.iter().copied()).collect();
        let mut by_size: Vec<&Simplex> = given.iter().collect();
        by_size.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let mut covered: HashSet<Simplex> = HashSet::new();
        let mut maximal = BTreeSet::new();
        let mut i = 0;
        while i < by_size.len() {
            let size = by_size[i].len();
            let mut j = i;
            while j < by_size.len() && by_size[j].len() == size {
                j += 1;
            }
            let level = &by_size[i..j];
            for s in level {
                if !covered.contains(*s) {
                    maximal.insert((*s).clone());
                }
            }
            // facets of this level and of everything covered at this size
            let mut next: Vec<Simplex> = level.iter().flat_map(|s| s.facets()).collect();
            let covered_here: Vec<Simplex> = covered
                .iter()
                .filter(|s| s.len() == size)
                .cloned()
                .collect();
            next.extend(covered_here.iter().flat_map(|s| s.facets()));
            covered.extend(next);
            i = j;
        }
        SimplicialComplex { vertices, maximal }
    }

    /// The full simplex on vertices `0..=m`.
    pub fn full_simplex(m: usize) -> Self {
        SimplicialComplex::from_simplices([Simplex((0..=m).collect())])
    }

    pub fn vertices(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    pub fn maximal(&self) -> &BTreeSet<Simplex> {
        &self.maximal
    }

    pub fn is_empty(&self) -> bool {
        self.maximal.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.maximal.iter().map(Simplex::dim).max()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.maximal.iter().any(|m| s.is_face_of(m))
    }

    pub fn all_simplices(&self) -> BTreeSet<Simplex> {
        self.maximal.iter().flat_map(|m| m.faces()).collect()
    }

    /// Simplices grouped by dimension, each group in lexicographic order.
    pub fn simplices_by_dim(&self) -> Vec<Vec<Simplex>> {
        let Some(d) = self.dim() else {
            return Vec::new();
        };
        let mut out = vec![Vec::new(); d + 1];
        for s in self.all_simplices() {
            out[s.dim()].push(s);
        }
        out
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices_by_dim().iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Disjoint copy with every vertex id shifted by `offset`.
    pub fn shifted(&self, offset: usize) -> SimplicialComplex {
        SimplicialComplex::from_simplices(
            self.maximal
                .iter()
                .map(|s| Simplex(s.0.iter().map(|v| v + offset).collect())),
        )
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex::from_simplices(self.maximal.iter().chain(&other.maximal).cloned())
    }
}

/// All `dim`-faces of the simplex on `0..=m`, lexicographically.
pub fn faces_of_simplex(m: usize, dim: usize) -> Result<Vec<Simplex>, SimplicialError> {
    if dim > m {
        return Err(SimplicialError::DimensionTooLarge { dim, m });
    }
    Ok((0..=m)
        .combinations(dim + 1)
        .map(Simplex::from_sorted)
        .collect())
}

/// Every face of `complex` of dimension at most `k`.
pub fn skeleton(complex: &SimplicialComplex, k: usize) -> SimplicialComplex {
    SimplicialComplex::from_simplices(complex.maximal.iter().flat_map(|m| {
        let size = m.len().min(k + 1);
        m.0.iter()
            .copied()
            .combinations(size)
            .map(Simplex::from_sorted)
            .collect::<Vec<_>>()
    }))
}

/// The cone `K ∪ {σ ∪ {apex}} ∪ {apex}`.
pub fn cone(
    complex: &SimplicialComplex,
    apex: usize,
) -> Result<SimplicialComplex, SimplicialError> {
    if complex.vertices.contains(&apex) {
        return Err(SimplicialError::ApexCollision(apex));
    }
    if complex.is_empty() {
        return Ok(SimplicialComplex::from_simplices([Simplex(vec![apex])]));
    }
    Ok(SimplicialComplex::from_simplices(
        complex.maximal.iter().map(|s| {
            let mut v = s.0.clone();
            v.push(apex);
            Simplex::new(v).expect("apex is a fresh vertex")
        }),
    ))
}

/// Barycentric subdivision. Vertex `i` of the subdivision is the barycenter
/// of `faces()[i]`; faces are numbered by dimension, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarycentricComplex {
    base: SimplicialComplex,
    complex: SimplicialComplex,
    faces: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
}

impl BarycentricComplex {
    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn faces(&self) -> &[Simplex] {
        &self.faces
    }

    pub fn face_of(&self, vertex: usize) -> &Simplex {
        &self.faces[vertex]
    }

    pub fn vertex_of(&self, face: &Simplex) -> Option<usize> {
        self.index.get(face).copied()
    }

    /// The chain of base faces a subdivision simplex corresponds to.
    pub fn chain(&self, s: &Simplex) -> Vec<&Simplex> {
        s.vertices().iter().map(|&v| &self.faces[v]).collect()
    }

    /// Subdivision vertices of every maximal chain `{v1} ⊂ {v1,v2} ⊂ ... ⊂ face`.
    pub fn maximal_chains_in(&self, face: &Simplex) -> Vec<Vec<usize>> {
        face.vertices()
            .iter()
            .copied()
            .permutations(face.len())
            .map(|perm| {
                (1..=perm.len())
                    .map(|k| {
                        let mut f = perm[..k].to_vec();
                        f.sort_unstable();
                        self.index[&Simplex(f)]
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn barycentric_subdivision(
    complex: &SimplicialComplex,
) -> Result<BarycentricComplex, SimplicialError> {
    if complex.is_empty() {
        return Err(SimplicialError::EmptyComplex);
    }
    let mut faces: Vec<Simplex> = complex.all_simplices().into_iter().collect();
    faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let index: HashMap<Simplex, usize> = faces
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, f)| (f, i))
        .collect();
    let mut sd = BarycentricComplex {
        base: complex.clone(),
        complex: SimplicialComplex::default(),
        faces,
        index,
    };
    let tops: Vec<Simplex> = complex
        .maximal
        .iter()
        .flat_map(|m| sd.maximal_chains_in(m))
        .map(Simplex::from_sorted)
        .collect();
    sd.complex = SimplicialComplex::from_simplices(tops);
    Ok(sd)
}

/// Exact rational coordinates for vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    ambient_dim: usize,
    #[serde(with = "point_map")]
    points: BTreeMap<usize, Point>,
}

mod point_map {
    use super::*;

    pub fn serialize<S: serde::Serializer>(
        m: &BTreeMap<usize, Point>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let out: BTreeMap<usize, Vec<String>> = m
            .iter()
            .map(|(k, p)| (*k, rational::format_point(p)))
            .collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<usize, Point>, D::Error> {
        let raw = BTreeMap::<usize, Vec<String>>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                let p: Result<Point, String> =
                    v.iter().map(|s| rational::parse_rational(s)).collect();
                p.map(|p| (k, p)).map_err(serde::de::Error::custom)
            })
            .collect()
    }
}

impl Realization {
    pub fn new(
        ambient_dim: usize,
        points: BTreeMap<usize, Point>,
    ) -> Result<Self, SimplicialError> {
        for p in points.values() {
            if p.len() != ambient_dim {
                return Err(SimplicialError::DimensionMismatch {
                    expected: ambient_dim,
                    found: p.len(),
                });
            }
        }
        Ok(Realization {
            ambient_dim,
            points,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn point(&self, v: usize) -> Result<&Point, SimplicialError> {
        self.points.get(&v).ok_or(SimplicialError::MissingVertex(v))
    }

    pub fn points(&self) -> &BTreeMap<usize, Point> {
        &self.points
    }

    pub fn covers(&self, complex: &SimplicialComplex) -> bool {
        complex.vertices.iter().all(|v| self.points.contains_key(v))
    }

    /// Exact average of the face's vertex points.
    pub fn barycenter(&self, face: &Simplex) -> Result<Point, SimplicialError> {
        let mut out = vec![Rational::zero(); self.ambient_dim];
        for &v in face.vertices() {
            for (o, c) in out.iter_mut().zip(self.point(v)?) {
                *o += c;
            }
        }
        let n = int(face.len() as i64);
        Ok(out.into_iter().map(|c| c / &n).collect())
    }

    /// Realizes each subdivision vertex at the barycenter of its face.
    pub fn subdivide(&self, sd: &BarycentricComplex) -> Result<Realization, SimplicialError> {
        let points = sd
            .faces
            .iter()
            .enumerate()
            .map(|(i, f)| Ok((i, self.barycenter(f)?)))
            .collect::<Result<_, SimplicialError>>()?;
        Ok(Realization {
            ambient_dim: self.ambient_dim,
            points,
        })
    }

    pub fn with_point(mut self, v: usize, p: Point) -> Result<Self, SimplicialError> {
        if p.len() != self.ambient_dim {
            return Err(SimplicialError::DimensionMismatch {
                expected: self.ambient_dim,
                found: p.len(),
            });
        }
        self.points.insert(v, p);
        Ok(self)
    }
}

/// Id of the cone apex in [`realize_standard`].
pub fn standard_apex(m: usize) -> usize {
    m + 1
}

/// Vertex `i ∈ 0..=m` at the basis vector `e_i` of `R^{m+1}` and the apex
/// [`standard_apex`] at the barycenter `(1/(m+1), ..., 1/(m+1))`.
pub fn realize_standard(m: usize) -> Realization {
    let dim = m + 1;
    let mut points = BTreeMap::new();
    for i in 0..=m {
        let mut p = vec![Rational::zero(); dim];
        p[i] = Rational::one();
        points.insert(i, p);
    }
    points.insert(standard_apex(m), vec![rational::rat(1, dim as i64); dim]);
    Realization {
        ambient_dim: dim,
        points,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn s(v: &[usize]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn simplex_validation() {
        assert_eq!(Simplex::new(vec![]), Err(SimplicialError::EmptySimplex));
        assert_eq!(
            Simplex::new(vec![2, 1, 2]),
            Err(SimplicialError::RepeatedVertex(2))
        );
        assert_eq!(s(&[3, 1, 2]).vertices(), &[1, 2, 3]);
    }

    #[test]
    fn faces_of_simplex_examples() {
        assert_eq!(
            faces_of_simplex(2, 1).unwrap(),
            vec![s(&[0, 1]), s(&[0, 2]), s(&[1, 2])]
        );
        assert_eq!(faces_of_simplex(4, 2).unwrap().len(), 10);
        assert_eq!(faces_of_simplex(8, 4).unwrap().len(), 126);
        assert!(matches!(
            faces_of_simplex(2, 3),
            Err(SimplicialError::DimensionTooLarge { dim: 3, m: 2 })
        ));
    }

    #[test]
    fn faces_count_is_binomial() {
        for m in 0..7 {
            for k in 0..=m {
                let f = faces_of_simplex(m, k).unwrap();
                assert_eq!(f.len(), binom(m + 1, k + 1));
                assert!(f.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn skeleton_examples() {
        let k = skeleton(&SimplicialComplex::full_simplex(2), 0);
        assert_eq!(k.maximal().len(), 3);
        assert_eq!(k.dim(), Some(0));

        let k5 = skeleton(&SimplicialComplex::full_simplex(4), 1);
        assert_eq!(k5.f_vector(), vec![5, 10]);

        let b = skeleton(&SimplicialComplex::full_simplex(3), 2);
        assert_eq!(b.maximal().len(), 4);
        assert_eq!(b.f_vector(), vec![4, 6, 4]);
        assert_eq!(b.euler_characteristic(), 2);
    }

    #[test]
    fn maximal_reduction() {
        let k = SimplicialComplex::from_simplices([s(&[0]), s(&[0, 1, 2]), s(&[1, 2]), s(&[3])]);
        assert_eq!(
            k.maximal().iter().cloned().collect::<Vec<_>>(),
            vec![s(&[0, 1, 2]), s(&[3])]
        );
    }

    #[test]
    fn cone_examples() {
        let two = SimplicialComplex::from_simplices([s(&[0]), s(&[1])]);
        let c = cone(&two, 2).unwrap();
        assert_eq!(c.f_vector(), vec![3, 2]);

        let tripod = cone(&skeleton(&SimplicialComplex::full_simplex(2), 0), 3).unwrap();
        assert_eq!(
            tripod.maximal().iter().cloned().collect::<Vec<_>>(),
            vec![s(&[0, 3]), s(&[1, 3]), s(&[2, 3])]
        );

        let boundary = skeleton(&SimplicialComplex::full_simplex(2), 1);
        let disk = cone(&boundary, 3).unwrap();
        assert_eq!(disk.f_vector(), vec![4, 6, 3]);
        assert_eq!(disk.euler_characteristic(), 1);

        assert_eq!(cone(&two, 1), Err(SimplicialError::ApexCollision(1)));
    }

    #[test]
    fn cone_raises_dimension_and_is_contractible() {
        for m in 1..5 {
            for k in 0..m {
                let base = skeleton(&SimplicialComplex::full_simplex(m), k);
                let c = cone(&base, m + 1).unwrap();
                assert_eq!(c.dim(), Some(k + 1));
                assert_eq!(c.euler_characteristic(), 1);
            }
        }
    }

    /// Counts chains of length `len` in the face poset of Δ^m directly.
    fn chain_count(m: usize, len: usize) -> usize {
        let faces: Vec<Simplex> = SimplicialComplex::full_simplex(m)
            .all_simplices()
            .into_iter()
            .collect();
        fn extend(faces: &[Simplex], last: &Simplex, left: usize) -> usize {
            if left == 0 {
                return 1;
            }
            faces
                .iter()
                .filter(|f| f.len() > last.len() && last.is_face_of(f))
                .map(|f| extend(faces, f, left - 1))
                .sum()
        }
        faces.iter().map(|f| extend(&faces, f, len - 1)).sum()
    }

    #[test]
    fn subdivision_counts_match_chain_enumeration() {
        let sd1 = barycentric_subdivision(&SimplicialComplex::full_simplex(1)).unwrap();
        assert_eq!(sd1.complex().f_vector(), vec![3, 2]);
        let sd2 = barycentric_subdivision(&SimplicialComplex::full_simplex(2)).unwrap();
        assert_eq!(sd2.complex().f_vector(), vec![7, 12, 6]);
        for m in 0..=4 {
            let sd = barycentric_subdivision(&SimplicialComplex::full_simplex(m)).unwrap();
            let f = sd.complex().f_vector();
            for (k, &n) in f.iter().enumerate() {
                assert_eq!(n, chain_count(m, k + 1), "m={m} k={k}");
            }
            assert_eq!(sd.complex().euler_characteristic(), 1);
        }
    }

    #[test]
    fn subdivision_simplices_are_chains() {
        let sd = barycentric_subdivision(&SimplicialComplex::full_simplex(3)).unwrap();
        for t in sd.complex().all_simplices() {
            let chain = sd.chain(&t);
            assert!(chain
                .windows(2)
                .all(|w| w[0].len() < w[1].len() && w[0].is_face_of(w[1])));
        }
    }

    #[test]
    fn standard_realization() {
        let r = realize_standard(1);
        assert_eq!(r.point(0).unwrap(), &vec![int(1), int(0)]);
        assert_eq!(r.point(1).unwrap(), &vec![int(0), int(1)]);
        assert_eq!(
            r.point(standard_apex(1)).unwrap(),
            &vec![rat(1, 2), rat(1, 2)]
        );
        let r2 = realize_standard(2);
        assert_eq!(
            r2.barycenter(&s(&[0, 1])).unwrap(),
            vec![rat(1, 2), rat(1, 2), int(0)]
        );
        let r4 = realize_standard(4);
        assert_eq!(r4.point(5).unwrap(), &vec![rat(1, 5); 5]);
        assert_eq!(
            r4.barycenter(&s(&[0, 1, 2, 3, 4])).unwrap(),
            r4.point(5).unwrap().clone()
        );
    }

    #[test]
    fn json_round_trip() {
        let k = cone(&skeleton(&SimplicialComplex::full_simplex(2), 0), 3).unwrap();
        let text = serde_json::to_string(&k).unwrap();
        assert_eq!(text, r#"{"maximal":[[0,3],[1,3],[2,3]]}"#);
        let back: SimplicialComplex = serde_json::from_str(&text).unwrap();
        assert_eq!(back, k);

        let r = realize_standard(1);
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains(r#""2":["1/2","1/2"]"#));
        let back: Realization = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(serde_json::from_str::<SimplicialComplex>(r#"{"maximal":[[1,1]]}"#).is_err());
    }
}
