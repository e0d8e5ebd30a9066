//! Homological index of finite free simplicial Z₂-complexes.
//!
//! For a free Z₂-complex `X` the equivariant cohomology is the mod-2
//! cohomology of the quotient `X/Z₂`, and the generator of `H*(RP^∞)` pulls
//! back to the class of the double cover `X → X/Z₂`. The index is the largest
//! `n` for which the `n`-th cup power of that class is nonzero.
//!
//! Quotients are always taken after one barycentric subdivision: the quotient
//! of a free simplicial action need not be a simplicial complex, but the
//! quotient of its subdivision is.

mod f2;

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::simplicial::{
    barycentric_subdivision, BarycentricComplex, Simplex, SimplicialComplex, SimplicialError,
};

pub use f2::{F2Vec, XorBasis};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Z2Error {
    #[error("invalid involution: {0}")]
    InvalidInvolution(String),
    #[error("involution sends simplex {0:?} outside the complex")]
    NotSimplicial(Vec<usize>),
    #[error("fixed simplex found: {0:?} (the index is infinite)")]
    FixedSimplex(Vec<usize>),
    #[error("the complex is empty")]
    EmptyComplex,
    #[error("cochain of degree {0} is not a cocycle")]
    NotACocycle(usize),
    #[error("cochain has {found} coefficients, expected {expected}")]
    CochainLength { expected: usize, found: usize },
    #[error("expected a cochain of degree {expected}, found degree {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error("index of the union is {direct} but the maximum over parts is {parts}")]
    IndexMismatch { direct: usize, parts: usize },
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

/// A simplicial complex with a vertex involution that maps simplices to
/// simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z2Complex {
    complex: SimplicialComplex,
    involution: BTreeMap<usize, usize>,
}

#[derive(Serialize, Deserialize)]
struct Z2Repr {
    maximal: Vec<Simplex>,
    involution: Vec<[usize; 2]>,
}

impl Serialize for Z2Complex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Z2Repr {
            maximal: self.complex.maximal().iter().cloned().collect(),
            involution: self
                .involution
                .iter()
                .filter(|(a, b)| a < b)
                .map(|(a, b)| [*a, *b])
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Z2Complex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = Z2Repr::deserialize(d)?;
        let complex = SimplicialComplex::from_simplices(r.maximal);
        let mut inv = BTreeMap::new();
        for [a, b] in r.involution {
            inv.insert(a, b);
            inv.insert(b, a);
        }
        Z2Complex::new(complex, inv).map_err(serde::de::Error::custom)
    }
}

impl Z2Complex {
    pub fn new(
        complex: SimplicialComplex,
        involution: BTreeMap<usize, usize>,
    ) -> Result<Self, Z2Error> {
        for &v in complex.vertices() {
            let w = *involution
                .get(&v)
                .ok_or_else(|| Z2Error::InvalidInvolution(format!("vertex {v} has no image")))?;
            if involution.get(&w) != Some(&v) {
                return Err(Z2Error::InvalidInvolution(format!(
                    "not of order two at vertex {v}"
                )));
            }
        }
        for s in complex.maximal() {
            let image = s.map_vertices(|v| involution[&v])?;
            if !complex.maximal().contains(&image) {
                return Err(Z2Error::NotSimplicial(s.vertices().to_vec()));
            }
        }
        let involution = involution
            .into_iter()
            .filter(|(v, _)| complex.vertices().contains(v))
            .collect();
        Ok(Z2Complex {
            complex,
            involution,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn involution(&self, v: usize) -> usize {
        self.involution[&v]
    }

    pub fn act(&self, s: &Simplex) -> Simplex {
        s.map_vertices(|v| self.involution[&v])
            .expect("involution is a bijection")
    }

    /// The first simplex mapped onto itself, if any. The action is free iff
    /// there is none.
    pub fn fixed_simplex(&self) -> Option<Simplex> {
        self.complex
            .all_simplices()
            .into_iter()
            .find(|s| self.act(s) == *s)
    }

    pub fn is_free(&self) -> bool {
        self.fixed_simplex().is_none()
    }

    /// The induced action on the barycentric subdivision.
    pub fn subdivide(&self) -> Result<(Z2Complex, BarycentricComplex), Z2Error> {
        let sd = barycentric_subdivision(&self.complex)?;
        let involution = sd
            .faces()
            .iter()
            .enumerate()
            .map(|(i, f)| {
                (
                    i,
                    sd.vertex_of(&self.act(f))
                        .expect("faces are closed under the action"),
                )
            })
            .collect();
        let x = Z2Complex::new(sd.complex().clone(), involution)?;
        Ok((x, sd))
    }

    pub fn shifted(&self, offset: usize) -> Z2Complex {
        Z2Complex {
            complex: self.complex.shifted(offset),
            involution: self
                .involution
                .iter()
                .map(|(a, b)| (a + offset, b + offset))
                .collect(),
        }
    }

    /// Disjoint union with vertex ids of each part shifted past the previous
    /// parts.
    pub fn disjoint_union(parts: &[Z2Complex]) -> Z2Complex {
        let mut complex = SimplicialComplex::default();
        let mut involution = BTreeMap::new();
        let mut offset = 0;
        for p in parts {
            let s = p.shifted(offset);
            complex = complex.union(&s.complex);
            involution.extend(s.involution);
            offset += p.complex.vertices().iter().next_back().map_or(0, |v| v + 1);
        }
        Z2Complex {
            complex,
            involution,
        }
    }
}

/// Boundary of the `(m+1)`-dimensional cross-polytope with the antipodal
/// action. Vertex `2i` is `+e_i` and `2i+1` is `-e_i`.
pub fn cross_polytope_sphere(m: usize) -> Z2Complex {
    let n = m + 1;
    let facets = (0u64..1 << n).map(|signs| {
        Simplex::new(
            (0..n)
                .map(|i| 2 * i + ((signs >> i) & 1) as usize)
                .collect(),
        )
        .expect("distinct vertices")
    });
    let complex = SimplicialComplex::from_simplices(facets);
    let involution = (0..2 * n).map(|v| (v, v ^ 1)).collect();
    Z2Complex::new(complex, involution).expect("antipodal map is simplicial")
}

/// The quotient of the subdivided complex together with the covering data.
#[derive(Clone, Debug)]
pub struct QuotientData {
    cover: Z2Complex,
    complex: SimplicialComplex,
    orbit: BTreeMap<usize, usize>,
    section: Vec<usize>,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    cover_edges: HashSet<(usize, usize)>,
}

impl QuotientData {
    fn assemble(
        cover: Z2Complex,
        orbit: BTreeMap<usize, usize>,
        section: Vec<usize>,
    ) -> Result<Self, Z2Error> {
        let complex = SimplicialComplex::from_simplices(
            cover
                .complex
                .maximal()
                .iter()
                .map(|s| s.map_vertices(|v| orbit[&v]))
                .collect::<Result<Vec<_>, _>>()?,
        );
        let simplices = complex.simplices_by_dim();
        let index = simplices
            .iter()
            .map(|level| {
                level
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, s)| (s, i))
                    .collect()
            })
            .collect();
        let cover_edges = cover
            .complex
            .all_simplices()
            .into_iter()
            .filter(|s| s.len() == 2)
            .map(|s| (s.vertices()[0], s.vertices()[1]))
            .collect();
        Ok(QuotientData {
            cover,
            complex,
            orbit,
            section,
            simplices,
            index,
            cover_edges,
        })
    }

    /// The subdivided Z₂-complex whose quotient this is.
    pub fn cover(&self) -> &Z2Complex {
        &self.cover
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn orbit_of(&self, v: usize) -> usize {
        self.orbit[&v]
    }

    pub fn section(&self) -> &[usize] {
        &self.section
    }

    pub fn n_orbits(&self) -> usize {
        self.section.len()
    }

    pub fn dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    /// Quotient simplices of dimension `k` in cochain index order.
    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    fn index_of(&self, s: &Simplex) -> usize {
        self.index[s.dim()][s]
    }

    /// Same quotient with a different representative per orbit.
    pub fn with_section(&self, section: Vec<usize>) -> Result<QuotientData, Z2Error> {
        if section.len() != self.section.len() {
            return Err(Z2Error::InvalidSection(format!(
                "{} representatives for {} orbits",
                section.len(),
                self.section.len()
            )));
        }
        for (o, v) in section.iter().enumerate() {
            if self.orbit.get(v) != Some(&o) {
                return Err(Z2Error::InvalidSection(format!(
                    "vertex {v} is not in orbit {o}"
                )));
            }
        }
        let mut q = self.clone();
        q.section = section;
        Ok(q)
    }

    /// Same quotient with orbit `o` renamed `perm[o]`, which changes the total
    /// vertex order used by cup products.
    pub fn relabeled(&self, perm: &[usize]) -> Result<QuotientData, Z2Error> {
        let n = self.section.len();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Z2Error::InvalidSection(
                "relabeling is not a permutation".into(),
            ));
        }
        let orbit = self.orbit.iter().map(|(v, o)| (*v, perm[*o])).collect();
        let mut section = vec![0; n];
        for (o, v) in self.section.iter().enumerate() {
            section[perm[o]] = *v;
        }
        QuotientData::assemble(self.cover.clone(), orbit, section)
    }
}

/// Subdivides, checks freeness and forms the orbit complex. Orbits are
/// numbered by their smallest subdivision vertex, which is also the default
/// section.
pub fn quotient(x: &Z2Complex) -> Result<QuotientData, Z2Error> {
    if x.complex.is_empty() {
        return Err(Z2Error::EmptyComplex);
    }
    if let Some(s) = x.fixed_simplex() {
        return Err(Z2Error::FixedSimplex(s.vertices().to_vec()));
    }
    let (cover, _) = x.subdivide()?;
    let mut orbit = BTreeMap::new();
    let mut section = Vec::new();
    for &v in cover.complex.vertices() {
        if orbit.contains_key(&v) {
            continue;
        }
        let o = section.len();
        orbit.insert(v, o);
        orbit.insert(cover.involution(v), o);
        section.push(v);
    }
    QuotientData::assemble(cover, orbit, section)
}

/// A mod-2 cochain on the quotient, one bit per simplex of its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Cochain {
    pub degree: usize,
    pub bits: F2Vec,
}

impl F2Cochain {
    pub fn zero(degree: usize, q: &QuotientData) -> Self {
        F2Cochain {
            degree,
            bits: F2Vec::zeros(q.simplices(degree).len()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    fn check(&self, q: &QuotientData) -> Result<(), Z2Error> {
        let expected = q.simplices(self.degree).len();
        if self.bits.len() != expected {
            return Err(Z2Error::CochainLength {
                expected,
                found: self.bits.len(),
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &F2Cochain) -> F2Cochain {
        assert_eq!(self.degree, other.degree);
        let mut bits = self.bits.clone();
        bits.xor_assign(&other.bits);
        F2Cochain {
            degree: self.degree,
            bits,
        }
    }
}

/// Bit of quotient edge `{a, b}` (`a < b`): whether the lift of the edge
/// starting at the representative of `a` ends away from the representative
/// of `b`.
pub fn characteristic_cocycle(q: &QuotientData) -> F2Cochain {
    let edges = q.simplices(1);
    let mut bits = F2Vec::zeros(edges.len());
    for (i, e) in edges.iter().enumerate() {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        let (sa, sb) = (q.section[a], q.section[b]);
        let key = (sa.min(sb), sa.max(sb));
        if !q.cover_edges.contains(&key) {
            bits.set(i, true);
        }
    }
    F2Cochain { degree: 1, bits }
}

/// `δx`, evaluated on each `(k+1)`-simplex as the sum of `x` over its facets.
pub fn coboundary(x: &F2Cochain, q: &QuotientData) -> Result<F2Cochain, Z2Error> {
    x.check(q)?;
    let upper = q.simplices(x.degree + 1);
    let mut bits = F2Vec::zeros(upper.len());
    for (i, s) in upper.iter().enumerate() {
        let parity = s
            .facets()
            .iter()
            .filter(|f| x.bits.get(q.index_of(f)))
            .count()
            % 2;
        if parity == 1 {
            bits.set(i, true);
        }
    }
    Ok(F2Cochain {
        degree: x.degree + 1,
        bits,
    })
}

/// The `n`-fold cup product of a 1-cochain with itself. With the front-face /
/// back-face rule on vertex-sorted simplices, `wⁿ(v_0 … v_n)` is the product
/// of `w(v_i v_{i+1})` over consecutive vertices.
pub fn cup_power(w: &F2Cochain, n: usize, q: &QuotientData) -> Result<F2Cochain, Z2Error> {
    if w.degree != 1 {
        return Err(Z2Error::WrongDegree {
            expected: 1,
            found: w.degree,
        });
    }
    w.check(q)?;
    if n == 0 {
        return Ok(F2Cochain {
            degree: 0,
            bits: F2Vec::ones(q.simplices(0).len()),
        });
    }
    let level = q.simplices(n);
    let mut bits = F2Vec::zeros(level.len());
    for (i, s) in level.iter().enumerate() {
        let on = s.vertices().windows(2).all(|pair| {
            let edge = Simplex::new(pair.to_vec()).expect("distinct");
            w.bits.get(q.index_of(&edge))
        });
        if on {
            bits.set(i, true);
        }
    }
    Ok(F2Cochain { degree: n, bits })
}

/// Whether `x = δy` for some `y`, decided by echelon reduction against the
/// coboundaries of all `(k-1)`-simplices.
pub fn is_coboundary(x: &F2Cochain, q: &QuotientData) -> Result<bool, Z2Error> {
    x.check(q)?;
    if !coboundary(x, q)?.is_zero() {
        return Err(Z2Error::NotACocycle(x.degree));
    }
    if x.is_zero() {
        return Ok(true);
    }
    if x.degree == 0 {
        return Ok(false);
    }
    let lower = q.simplices(x.degree - 1);
    let level = q.simplices(x.degree);
    let mut columns = vec![F2Vec::zeros(level.len()); lower.len()];
    for (i, s) in level.iter().enumerate() {
        for f in s.facets() {
            columns[q.index_of(&f)].flip(i);
        }
    }
    let mut basis = XorBasis::new();
    for c in columns {
        basis.insert(c);
    }
    Ok(basis.contains(&x.bits))
}

/// Index of an already formed quotient.
pub fn hind_of_quotient(q: &QuotientData) -> Result<usize, Z2Error> {
    let w = characteristic_cocycle(q);
    let mut h = 0;
    for n in 1..=q.dim() {
        // cⁿ = 0 forces cⁿ⁺¹ = 0
        if is_coboundary(&cup_power(&w, n, q)?, q)? {
            break;
        }
        h = n;
    }
    Ok(h)
}

/// The largest `n ≤ dim X` with `wⁿ` not a coboundary on the quotient.
pub fn hind(x: &Z2Complex) -> Result<usize, Z2Error> {
    hind_of_quotient(&quotient(x)?)
}

/// Index of a disjoint union, computed on the union itself and as the maximum
/// over the parts; the two must agree.
pub fn disjoint_union_index(parts: &[Z2Complex]) -> Result<usize, Z2Error> {
    if parts.is_empty() {
        return Err(Z2Error::EmptyComplex);
    }
    let direct = hind(&Z2Complex::disjoint_union(parts))?;
    let mut best = 0;
    for p in parts {
        best = best.max(hind(p)?);
    }
    if direct != best {
        return Err(Z2Error::IndexMismatch {
            direct,
            parts: best,
        });
    }
    Ok(direct)
}
