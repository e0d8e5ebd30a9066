use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::{BarycentricComplex, Realization, Simplex, SimplicialComplex, SimplicialError};
use crate::exact_lp::VPolytope;
use crate::rational::{int, Point, Rational};

/// A map that is affine on every simplex of a barycentric subdivision,
/// determined by the images of the subdivision vertices.
#[derive(Clone, Debug)]
pub struct PLMapSpec {
    source: BarycentricComplex,
    source_realization: Realization,
    target: SimplicialComplex,
    target_realization: Realization,
    vertex_images: Vec<Point>,
}

impl PLMapSpec {
    /// `base_realization` realizes the base complex; the subdivision vertices
    /// are placed at barycenters. `vertex_images[i]` is the image of
    /// subdivision vertex `i`.
    pub fn new(
        source: BarycentricComplex,
        base_realization: &Realization,
        target: SimplicialComplex,
        target_realization: Realization,
        vertex_images: Vec<Point>,
    ) -> Result<Self, SimplicialError> {
        if !base_realization.covers(source.base()) {
            let v = source
                .base()
                .vertices()
                .iter()
                .find(|v| base_realization.point(**v).is_err())
                .copied()
                .unwrap_or_default();
            return Err(SimplicialError::MissingVertex(v));
        }
        if vertex_images.len() != source.faces().len() {
            return Err(SimplicialError::MissingVertex(vertex_images.len()));
        }
        let dim = target_realization.ambient_dim();
        if let Some(p) = vertex_images.iter().find(|p| p.len() != dim) {
            return Err(SimplicialError::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        let source_realization = base_realization.subdivide(&source)?;
        Ok(PLMapSpec {
            source,
            source_realization,
            target,
            target_realization,
            vertex_images,
        })
    }

    /// The affine map sending base vertex `v` to `images(v)`, viewed as a PL
    /// map on the subdivision.
    pub fn affine(
        source: BarycentricComplex,
        base_realization: &Realization,
        target: SimplicialComplex,
        target_realization: Realization,
        images: &Realization,
    ) -> Result<Self, SimplicialError> {
        let vertex_images = source
            .faces()
            .iter()
            .map(|f| images.barycenter(f))
            .collect::<Result<Vec<_>, _>>()?;
        PLMapSpec::new(
            source,
            base_realization,
            target,
            target_realization,
            vertex_images,
        )
    }

    pub fn source(&self) -> &BarycentricComplex {
        &self.source
    }

    pub fn source_realization(&self) -> &Realization {
        &self.source_realization
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn target_realization(&self) -> &Realization {
        &self.target_realization
    }

    pub fn vertex_images(&self) -> &[Point] {
        &self.vertex_images
    }

    pub fn image_of_face_vertex(&self, face: &Simplex) -> Option<&Point> {
        self.source.vertex_of(face).map(|i| &self.vertex_images[i])
    }

    /// Evaluates the map at a point of the base given by barycentric weights
    /// over the sorted base vertex list.
    ///
    /// With weights sorted `w_1 >= w_2 >= ...` over vertices `v_1, v_2, ...`,
    /// the point lies in the subdivision simplex of the chain
    /// `{v_1} ⊂ {v_1, v_2} ⊂ ...` with coefficient `k (w_k - w_{k+1})` on the
    /// barycenter of the `k`-vertex face.
    pub fn evaluate(&self, weights: &[Rational]) -> Result<Point, SimplicialError> {
        let base_vertices: Vec<usize> = self.source.base().vertices().iter().copied().collect();
        if weights.len() != base_vertices.len() {
            return Err(SimplicialError::DimensionMismatch {
                expected: base_vertices.len(),
                found: weights.len(),
            });
        }
        if weights.iter().any(Signed::is_negative)
            || weights.iter().fold(Rational::zero(), |a, w| a + w) != Rational::one()
        {
            return Err(SimplicialError::OutsideSource);
        }
        let mut order: Vec<usize> = (0..weights.len())
            .filter(|&i| weights[i].is_positive())
            .collect();
        order.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
        let support = Simplex::new(order.iter().map(|&i| base_vertices[i]).collect())?;
        if !self.source.base().contains(&support) {
            return Err(SimplicialError::OutsideSource);
        }
        let dim = self.target_realization.ambient_dim();
        let mut out = vec![Rational::zero(); dim];
        for k in 1..=order.len() {
            let next = order
                .get(k)
                .map(|&i| weights[i].clone())
                .unwrap_or_else(Rational::zero);
            let coeff = int(k as i64) * (&weights[order[k - 1]] - next);
            if coeff.is_zero() {
                continue;
            }
            let face = Simplex::new(order[..k].iter().map(|&i| base_vertices[i]).collect())?;
            let image = self
                .image_of_face_vertex(&face)
                .ok_or(SimplicialError::OutsideSource)?;
            for (o, c) in out.iter_mut().zip(image) {
                *o += &coeff * c;
            }
        }
        Ok(out)
    }
}

/// The image of a base face as a union of V-polytopes, one per maximal chain
/// of faces inside it. Chains with identical vertex images collapse to one
/// polytope; polytope vertices are deduplicated and sorted.
pub fn pl_image_of_face(
    spec: &PLMapSpec,
    face: &Simplex,
) -> Result<Vec<VPolytope>, SimplicialError> {
    if !spec.source.base().contains(face) {
        return Err(SimplicialError::NotAFace(face.vertices().to_vec()));
    }
    let mut polys = BTreeSet::new();
    for chain in spec.source.maximal_chains_in(face) {
        let verts: BTreeSet<Point> = chain
            .iter()
            .map(|&v| spec.vertex_images[v].clone())
            .collect();
        polys.insert(VPolytope::new(verts.into_iter().collect())?);
    }
    Ok(polys.into_iter().collect())
}

/// `(x_1, ..., x_{m+1}) ↦ (x_1², ..., x_{m+1}²)`, from the unit sphere onto the
/// standard simplex.
pub fn squaring_map(x: &[Rational]) -> Result<Point, SimplicialError> {
    let sq: Point = x.iter().map(|c| c * c).collect();
    if sq.iter().fold(Rational::zero(), |a, c| a + c) != Rational::one() {
        return Err(SimplicialError::NotOnSphere);
    }
    Ok(sq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int_point, rat};
    use crate::simplicial::{barycentric_subdivision, realize_standard};

    fn s(v: &[usize]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    fn identity_on(m: usize) -> PLMapSpec {
        let base = SimplicialComplex::full_simplex(m);
        let sd = barycentric_subdivision(&base).unwrap();
        let r = realize_standard(m);
        PLMapSpec::affine(sd, &r, base, r.clone(), &r).unwrap()
    }

    #[test]
    fn affine_face_image_is_hull_of_vertex_images() {
        let base = SimplicialComplex::full_simplex(2);
        let sd = barycentric_subdivision(&base).unwrap();
        let r = realize_standard(2);
        let mut pts = std::collections::BTreeMap::new();
        pts.insert(0, int_point(&[0, 0]));
        pts.insert(1, int_point(&[4, 0]));
        pts.insert(2, int_point(&[0, 4]));
        let images = Realization::new(2, pts).unwrap();
        let target = SimplicialComplex::full_simplex(2);
        let f = PLMapSpec::affine(sd, &r, target, images.clone(), &images).unwrap();
        for face in SimplicialComplex::full_simplex(2).all_simplices() {
            let polys = pl_image_of_face(&f, &face).unwrap();
            for p in &polys {
                // every chain polytope sits inside conv of the face's vertex images
                let hull: Vec<Point> = face
                    .vertices()
                    .iter()
                    .map(|v| images.point(*v).unwrap().clone())
                    .collect();
                for v in p.vertices() {
                    assert!(crate::exact_lp::in_convex_hull(v, &hull).unwrap().is_some());
                }
            }
            // and the vertex images are covered
            for v in face.vertices() {
                let q = images.point(*v).unwrap();
                assert!(polys.iter().any(|p| p.contains(q).unwrap()));
            }
        }
    }

    #[test]
    fn not_a_face_is_rejected() {
        let f = identity_on(2);
        assert!(matches!(
            pl_image_of_face(&f, &s(&[0, 7])),
            Err(SimplicialError::NotAFace(_))
        ));
    }

    #[test]
    fn evaluate_identity() {
        let f = identity_on(3);
        let w = vec![rat(1, 2), rat(1, 6), rat(1, 3), int_point(&[0])[0].clone()];
        assert_eq!(f.evaluate(&w).unwrap(), w);
        assert!(f
            .evaluate(&[rat(1, 2), rat(1, 2), rat(1, 2), rat(-1, 2)])
            .is_err());
        assert!(f.evaluate(&[rat(1, 2)]).is_err());
    }

    #[test]
    fn squaring_examples() {
        assert_eq!(
            squaring_map(&int_point(&[1, 0, 0])).unwrap(),
            int_point(&[1, 0, 0])
        );
        assert_eq!(
            squaring_map(&[rat(3, 5), rat(4, 5)]).unwrap(),
            vec![rat(9, 25), rat(16, 25)]
        );
        assert_eq!(
            squaring_map(&[rat(1, 2), rat(1, 2)]),
            Err(SimplicialError::NotOnSphere)
        );
    }
}
