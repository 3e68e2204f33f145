//! Face lattices of cones, enumerated through active facet sets.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::linalg::QMatrix;
use crate::rational::Rational;

use super::Cone;

/// Index of a face inside its cone's [`FaceLattice`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceId(pub usize);

/// A face of a cone: the points of the cone on which the facets in
/// `active` are tight. `active` is closed: it holds every facet that
/// vanishes on the whole face.
#[derive(Clone, Debug)]
pub struct Face {
    active: BitSet,
    rays: BitSet,
    span_basis: QMatrix,
    dim: usize,
}

impl Face {
    /// Facet indices (into [`Cone::facets`]) tight on this face.
    pub fn active(&self) -> &BitSet {
        &self.active
    }

    /// Ray indices (into [`Cone::rays`]) generating this face together
    /// with the lineality space of the cone.
    pub fn rays(&self) -> &BitSet {
        &self.rays
    }

    /// Canonical basis of the linear span `V_F`.
    pub fn span_basis(&self) -> &QMatrix {
        &self.span_basis
    }

    /// `d_F = dim V_F`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `(-1)^{d_F}`.
    pub fn sign(&self) -> Rational {
        Rational::sign_power(self.dim)
    }
}

/// All faces of a cone with their containment order.
///
/// Faces are sorted by dimension, so the minimal face `F_0` is always
/// `FaceId(0)` and the cone itself is the last face.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    faces: Vec<Face>,
    // supersets[i] = faces containing face i (including i)
    supersets: Vec<BitSet>,
    by_active: BTreeMap<BitSet, usize>,
}

impl FaceLattice {
    pub(crate) fn build(cone: &Cone) -> FaceLattice {
        let nf = cone.facets().len();
        let nr = cone.rays().len();
        let tight: Vec<BitSet> = cone
            .facets()
            .iter()
            .map(|h| (0..nr).filter(|&r| h.normal().inner(&cone.rays()[r]).is_zero()).collect())
            .collect();
        let closure = |rays: &BitSet| -> BitSet { (0..nf).filter(|&i| rays.is_subset(&tight[i])).collect() };

        let all_rays: BitSet = (0..nr).collect();
        let mut found: BTreeMap<BitSet, BitSet> = BTreeMap::new();
        let mut queue = VecDeque::new();
        let top_active = closure(&all_rays);
        found.insert(top_active.clone(), all_rays.clone());
        queue.push_back((top_active, all_rays));
        while let Some((active, rays)) = queue.pop_front() {
            for j in (0..nf).filter(|j| !active.contains(*j)) {
                let sub = rays.intersection(&tight[j]);
                let sub_active = closure(&sub);
                if !found.contains_key(&sub_active) {
                    found.insert(sub_active.clone(), sub.clone());
                    queue.push_back((sub_active, sub));
                }
            }
        }

        let lin = cone.lineality();
        let mut faces: Vec<Face> = found
            .into_iter()
            .map(|(active, rays)| {
                let mut gens = lin.rows().to_vec();
                gens.extend(rays.iter().map(|r| cone.rays()[r].clone()));
                let span = QMatrix::from_rows_unchecked(cone.dim(), gens).canonical_row_basis();
                let dim = span.nrows();
                Face { active, rays, span_basis: span, dim }
            })
            .collect();
        faces.sort_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then_with(|| a.rays.iter().collect::<Vec<_>>().cmp(&b.rays.iter().collect::<Vec<_>>()))
        });

        let supersets = faces
            .iter()
            .map(|f| faces.iter().enumerate().filter(|(_, g)| f.rays.is_subset(&g.rays)).map(|(j, _)| j).collect())
            .collect();
        let by_active = faces.iter().enumerate().map(|(i, f)| (f.active.clone(), i)).collect();
        FaceLattice { faces, supersets, by_active }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn ids(&self) -> impl Iterator<Item = FaceId> {
        (0..self.faces.len()).map(FaceId)
    }

    pub fn get(&self, id: FaceId) -> Option<&Face> {
        self.faces.get(id.0)
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id.0]
    }

    /// The minimal face `F_0`.
    pub fn minimal(&self) -> FaceId {
        FaceId(0)
    }

    /// The cone itself, as its maximal face.
    pub fn top(&self) -> FaceId {
        FaceId(self.faces.len() - 1)
    }

    /// Whether face `a` is contained in face `b`.
    pub fn is_subface(&self, a: FaceId, b: FaceId) -> bool {
        self.supersets[a.0].contains(b.0)
    }

    /// Faces containing `f`, including `f`.
    pub fn containing(&self, f: FaceId) -> impl Iterator<Item = FaceId> + '_ {
        self.supersets[f.0].iter().map(FaceId)
    }

    /// Faces contained in `f`, including `f`.
    pub fn within(&self, f: FaceId) -> impl Iterator<Item = FaceId> + '_ {
        self.ids().filter(move |&g| self.is_subface(g, f))
    }

    /// Face whose closed active set is exactly `active`.
    pub fn by_active(&self, active: &BitSet) -> Option<FaceId> {
        self.by_active.get(active).copied().map(FaceId)
    }

    /// Containment as a boolean matrix: `m[i][j]` iff face i is inside face j.
    pub fn containment_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.len()).map(|i| (0..self.len()).map(|j| self.supersets[i].contains(j)).collect()).collect()
    }

    /// `sum_F (-1)^{d_C - d_F}`.
    pub fn euler_sum(&self) -> i64 {
        let top = self.faces[self.len() - 1].dim;
        self.faces.iter().map(|f| if (top - f.dim).is_multiple_of(2) { 1 } else { -1 }).sum()
    }
}
