//! Polyhedral cones in paired halfspace / generator form.
//!
//! Every [`Cone`] is stored canonically:
//!
//! * `equalities` is the canonical basis of `V_C^⊥`,
//! * `facets` are the irredundant inequalities, normals projected into
//!   `V_C`, primitive, sorted lexicographically,
//! * `lineality` is the canonical basis of the minimal face `F_0`,
//! * `rays` are the extreme rays of `C ∩ F_0^⊥`, primitive and sorted.
//!
//! Two cones are equal as point sets exactly when these fields agree.

mod dd;
mod lattice;

use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

use crate::bitset::BitSet;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{QMatrix, QVector};
use crate::rational::Rational;

pub(crate) use dd::double_description;
pub use lattice::{Face, FaceId, FaceLattice};

/// The closed halfspace `{v : <normal, v> >= 0}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    normal: QVector,
}

impl Halfspace {
    /// Normal is stored in primitive integer form; orientation is kept.
    pub fn new(normal: QVector) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::ZeroNormal);
        }
        Ok(Halfspace { normal: normal.primitive() })
    }

    pub fn normal(&self) -> &QVector {
        &self.normal
    }

    pub fn contains(&self, x: &QVector) -> bool {
        !self.normal.inner(x).is_negative()
    }
}

impl fmt::Debug for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}, v> >= 0", self.normal)
    }
}

/// A polyhedral cone.
pub struct Cone {
    dim: usize,
    equalities: QMatrix,
    facets: Vec<Halfspace>,
    rays: Vec<QVector>,
    lineality: QMatrix,
    lattice: OnceBox<FaceLattice>,
}

impl Clone for Cone {
    fn clone(&self) -> Self {
        let lattice = OnceBox::new();
        if let Some(l) = self.lattice.get() {
            let _ = lattice.set(alloc::boxed::Box::new(l.clone()));
        }
        Cone {
            dim: self.dim,
            equalities: self.equalities.clone(),
            facets: self.facets.clone(),
            rays: self.rays.clone(),
            lineality: self.lineality.clone(),
            lattice,
        }
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.equalities == other.equalities && self.facets == other.facets
    }
}

impl Eq for Cone {}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cone")
            .field("dim", &self.dim)
            .field("equalities", &self.equalities)
            .field("facets", &self.facets)
            .field("rays", &self.rays)
            .field("lineality", &self.lineality)
            .finish()
    }
}

fn project_out(basis: &QMatrix, v: &QVector) -> QVector {
    if basis.is_empty() {
        v.clone()
    } else {
        v.sub(&basis.project(v))
    }
}

fn canonical_directions(complement_of: &QMatrix, vs: &[QVector]) -> Vec<QVector> {
    let mut out: Vec<QVector> = vs
        .iter()
        .map(|v| project_out(complement_of, v).primitive())
        .filter(|v| !v.is_zero())
        .collect();
    out.sort();
    out.dedup();
    out
}

fn with_negations(normals: &mut Vec<QVector>, rows: &[QVector]) {
    for r in rows {
        normals.push(r.clone());
        normals.push(r.neg());
    }
}

impl Cone {
    /// `{v : <a, v> >= 0 for every a in normals}`.
    pub fn from_hrep(dim: usize, normals: &[QVector]) -> Result<Cone> {
        for a in normals {
            check_dim(dim, a.dim())?;
            if a.is_zero() {
                return Err(Error::ZeroNormal);
            }
        }
        let (lin, rays) = double_description(dim, normals);
        Ok(Cone::from_extreme_generators(dim, lin, rays))
    }

    pub fn from_halfspaces(dim: usize, halfspaces: &[Halfspace]) -> Result<Cone> {
        let normals: Vec<QVector> = halfspaces.iter().map(|h| h.normal.clone()).collect();
        Cone::from_hrep(dim, &normals)
    }

    /// The cone generated by `rays` (nonnegative combinations) plus the
    /// linear span of `lineality`.
    pub fn from_vrep(dim: usize, rays: &[QVector], lineality: &[QVector]) -> Result<Cone> {
        for g in rays.iter().chain(lineality) {
            check_dim(dim, g.dim())?;
        }
        let mut normals: Vec<QVector> = rays.iter().filter(|r| !r.is_zero()).cloned().collect();
        with_negations(&mut normals, lineality);
        let (eq, facets) = double_description(dim, &normals);
        Ok(Cone::from_irredundant_hrep(dim, eq, facets))
    }

    /// The whole ambient space.
    pub fn whole_space(dim: usize) -> Cone {
        Cone::assemble(dim, QMatrix::empty(dim), Vec::new(), Vec::new(), QMatrix::identity(dim))
    }

    /// The cone `{0}`.
    pub fn zero(dim: usize) -> Cone {
        Cone::assemble(dim, QMatrix::identity(dim), Vec::new(), Vec::new(), QMatrix::empty(dim))
    }

    /// The linear span of `basis`, as a cone.
    pub fn subspace(dim: usize, basis: &[QVector]) -> Result<Cone> {
        Cone::from_vrep(dim, &[], basis)
    }

    /// Builds the canonical cone from a generator description whose rays are
    /// extreme (modulo lineality), recovering the facets by dualizing.
    fn from_extreme_generators(dim: usize, lin: Vec<QVector>, rays: Vec<QVector>) -> Cone {
        let lineality = QMatrix::from_rows_unchecked(dim, lin).canonical_row_basis();
        let rays = canonical_directions(&lineality, &rays);
        let mut normals = rays.clone();
        with_negations(&mut normals, lineality.rows());
        let (eq, facets) = double_description(dim, &normals);
        let equalities = QMatrix::from_rows_unchecked(dim, eq).canonical_row_basis();
        let facets = canonical_directions(&equalities, &facets);
        Cone::assemble(dim, equalities, facets.into_iter().map(|normal| Halfspace { normal }).collect(), rays, lineality)
    }

    /// Builds the canonical cone from an irredundant inequality description
    /// (`eq` spans the equalities), recovering the generators.
    fn from_irredundant_hrep(dim: usize, eq: Vec<QVector>, facets: Vec<QVector>) -> Cone {
        let equalities = QMatrix::from_rows_unchecked(dim, eq).canonical_row_basis();
        let facets = canonical_directions(&equalities, &facets);
        let mut normals = facets.clone();
        with_negations(&mut normals, equalities.rows());
        let (lin, rays) = double_description(dim, &normals);
        let lineality = QMatrix::from_rows_unchecked(dim, lin).canonical_row_basis();
        let rays = canonical_directions(&lineality, &rays);
        Cone::assemble(dim, equalities, facets.into_iter().map(|normal| Halfspace { normal }).collect(), rays, lineality)
    }

    fn assemble(dim: usize, equalities: QMatrix, facets: Vec<Halfspace>, rays: Vec<QVector>, lineality: QMatrix) -> Cone {
        let cone = Cone { dim, equalities, facets, rays, lineality, lattice: OnceBox::new() };
        debug_assert!(cone.representations_agree(), "hrep/vrep mismatch: {cone:?}");
        cone
    }

    /// Every generator satisfies every constraint, and the dimensions of the
    /// two descriptions match.
    pub fn representations_agree(&self) -> bool {
        let gens_ok = self.rays.iter().all(|r| self.contains_unchecked(r))
            && self.lineality.rows().iter().all(|l| self.contains_unchecked(l) && self.contains_unchecked(&l.neg()));
        let mut span = self.lineality.rows().to_vec();
        span.extend(self.rays.iter().cloned());
        let span_rank = QMatrix::from_rows_unchecked(self.dim, span).rank();
        gens_ok && span_rank + self.equalities.nrows() == self.dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Canonical basis of `V_C^⊥`.
    pub fn equalities(&self) -> &QMatrix {
        &self.equalities
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn rays(&self) -> &[QVector] {
        &self.rays
    }

    /// Canonical basis of the lineality space `F_0 = C ∩ -C`.
    pub fn lineality(&self) -> &QMatrix {
        &self.lineality
    }

    /// Irredundant inequality description: facets, then each equality row
    /// as a pair of opposite halfspaces.
    pub fn hrep(&self) -> Vec<Halfspace> {
        let mut out = self.facets.clone();
        for e in self.equalities.rows() {
            out.push(Halfspace { normal: e.clone() });
            out.push(Halfspace { normal: e.neg() });
        }
        out
    }

    pub(crate) fn hrep_normals(&self) -> Vec<QVector> {
        self.hrep().into_iter().map(|h| h.normal).collect()
    }

    /// `d_C = dim V_C`.
    pub fn linear_dim(&self) -> usize {
        self.dim - self.equalities.nrows()
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.nrows()
    }

    /// `(-1)^{d_C}`.
    pub fn sign(&self) -> Rational {
        Rational::sign_power(self.linear_dim())
    }

    pub fn is_subspace(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equalities.is_empty()
    }

    /// Pointed and spanning the ambient space.
    pub fn is_nondegenerate(&self) -> bool {
        self.is_pointed() && self.is_full_dimensional()
    }

    /// Canonical basis of `V_C`.
    pub fn span_basis(&self) -> QMatrix {
        self.equalities.orthogonal_complement()
    }

    pub(crate) fn in_span_unchecked(&self, x: &QVector) -> bool {
        self.equalities.rows().iter().all(|e| e.inner(x).is_zero())
    }

    pub(crate) fn contains_unchecked(&self, x: &QVector) -> bool {
        self.in_span_unchecked(x) && self.facets.iter().all(|h| h.contains(x))
    }

    pub(crate) fn relint_contains_unchecked(&self, x: &QVector) -> bool {
        self.in_span_unchecked(x) && self.facets.iter().all(|h| h.normal.inner(x).is_positive())
    }

    pub(crate) fn dual_contains_unchecked(&self, u: &QVector) -> bool {
        self.lineality.rows().iter().all(|l| l.inner(u).is_zero()) && self.rays.iter().all(|r| !r.inner(u).is_negative())
    }

    pub(crate) fn dual_relint_contains_unchecked(&self, u: &QVector) -> bool {
        self.lineality.rows().iter().all(|l| l.inner(u).is_zero()) && self.rays.iter().all(|r| r.inner(u).is_positive())
    }

    pub fn contains(&self, x: &QVector) -> Result<bool> {
        check_dim(self.dim, x.dim())?;
        Ok(self.contains_unchecked(x))
    }

    /// Membership in the largest open subset of `V_C` inside `C`.
    pub fn relint_contains(&self, x: &QVector) -> Result<bool> {
        check_dim(self.dim, x.dim())?;
        Ok(self.relint_contains_unchecked(x))
    }

    /// `x ∈ V_C`.
    pub fn span_contains(&self, x: &QVector) -> Result<bool> {
        check_dim(self.dim, x.dim())?;
        Ok(self.in_span_unchecked(x))
    }

    /// Membership in `C*` without building the dual.
    pub fn dual_contains(&self, u: &QVector) -> Result<bool> {
        check_dim(self.dim, u.dim())?;
        Ok(self.dual_contains_unchecked(u))
    }

    /// Membership in `relint C*` without building the dual.
    pub fn dual_relint_contains(&self, u: &QVector) -> Result<bool> {
        check_dim(self.dim, u.dim())?;
        Ok(self.dual_relint_contains_unchecked(u))
    }

    /// The dual cone `C* = {v : <v, C> >= 0}`. The canonical data of `C*`
    /// is that of `C` with the two descriptions swapped.
    pub fn dual(&self) -> Cone {
        Cone::assemble(
            self.dim,
            self.lineality.clone(),
            self.rays.iter().map(|r| Halfspace { normal: r.clone() }).collect(),
            self.facets.iter().map(|h| h.normal.clone()).collect(),
            self.equalities.clone(),
        )
    }

    /// `-C`.
    pub fn negate(&self) -> Cone {
        let mut facets: Vec<Halfspace> = self.facets.iter().map(|h| Halfspace { normal: h.normal.neg() }).collect();
        facets.sort();
        let mut rays: Vec<QVector> = self.rays.iter().map(QVector::neg).collect();
        rays.sort();
        Cone::assemble(self.dim, self.equalities.clone(), facets, rays, self.lineality.clone())
    }

    /// `C ∩ {v : <a, v> >= 0 for a in normals}`.
    pub fn intersect_hrep(&self, normals: &[QVector]) -> Result<Cone> {
        let mut all = self.hrep_normals();
        all.extend(normals.iter().cloned());
        Cone::from_hrep(self.dim, &all)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        check_dim(self.dim, other.dim)?;
        self.intersect_hrep(&other.hrep_normals())
    }

    /// `C1 + C2`.
    pub fn minkowski_sum(&self, other: &Cone) -> Result<Cone> {
        check_dim(self.dim, other.dim)?;
        let mut rays = self.rays.clone();
        rays.extend(other.rays.iter().cloned());
        let mut lin = self.lineality.rows().to_vec();
        lin.extend(other.lineality.rows().iter().cloned());
        Cone::from_vrep(self.dim, &rays, &lin)
    }

    /// `(C ∩ H⁺, C ∩ H⁻, C ∩ H)` for `H = normal^⊥`.
    pub fn cut(&self, normal: &QVector) -> Result<(Cone, Cone, Cone)> {
        check_dim(self.dim, normal.dim())?;
        if normal.is_zero() {
            return Err(Error::ZeroNormal);
        }
        let plus = self.intersect_hrep(core::slice::from_ref(normal))?;
        let minus = self.intersect_hrep(&[normal.neg()])?;
        let hyper = plus.intersect_hrep(&[normal.neg()])?;
        Ok((plus, minus, hyper))
    }

    /// The pointed cone `C' = C ∩ F_0^⊥` with `C = F_0 + C'`.
    pub fn pointed_part(&self) -> Cone {
        Cone::from_vrep(self.dim, &self.rays, &[]).expect("rays share the ambient dimension")
    }

    /// The minimal face `F_0` as a cone (a subspace).
    pub fn minimal_face_cone(&self) -> Cone {
        Cone::assemble(self.dim, self.lineality.orthogonal_complement(), Vec::new(), Vec::new(), self.lineality.clone())
    }

    /// The face lattice, computed on first use.
    pub fn face_lattice(&self) -> &FaceLattice {
        self.lattice.get_or_init(|| alloc::boxed::Box::new(FaceLattice::build(self)))
    }

    pub fn minimal_face(&self) -> FaceId {
        self.face_lattice().minimal()
    }

    pub fn face(&self, id: FaceId) -> Result<&Face> {
        self.face_lattice().get(id).ok_or(Error::NotAFace(id.0))
    }

    /// Generators of face `id`: its rays plus the lineality space.
    pub fn face_rays(&self, id: FaceId) -> Result<Vec<QVector>> {
        let f = self.face(id)?;
        Ok(f.rays().iter().map(|r| self.rays[r].clone()).collect())
    }

    /// Face `id` as a cone in its own right.
    pub fn face_cone(&self, id: FaceId) -> Result<Cone> {
        let rays = self.face_rays(id)?;
        Cone::from_vrep(self.dim, &rays, self.lineality.rows())
    }

    /// The angle cone `A(F, C)`: the constraints of `C` active on `F`.
    pub fn angle_cone(&self, id: FaceId) -> Result<Cone> {
        let f = self.face(id)?;
        let mut normals: Vec<QVector> = f.active().iter().map(|i| self.facets[i].normal.clone()).collect();
        with_negations(&mut normals, self.equalities.rows());
        if normals.is_empty() {
            return Ok(Cone::whole_space(self.dim));
        }
        Cone::from_hrep(self.dim, &normals)
    }

    /// `F*` regarded as a cone in the ambient space.
    pub fn face_dual(&self, id: FaceId) -> Result<Cone> {
        let mut normals = self.face_rays(id)?;
        with_negations(&mut normals, self.lineality.rows());
        if normals.is_empty() {
            return Ok(Cone::whole_space(self.dim));
        }
        Cone::from_hrep(self.dim, &normals)
    }

    /// Facets tight at `x` (assumes `x ∈ C`).
    pub(crate) fn tight_set(&self, x: &QVector) -> BitSet {
        (0..self.facets.len()).filter(|&i| self.facets[i].normal.inner(x).is_zero()).collect()
    }

    /// The face containing `x` in its relative interior, or `None` if
    /// `x ∉ C`.
    pub fn smallest_face_containing(&self, x: &QVector) -> Result<Option<FaceId>> {
        check_dim(self.dim, x.dim())?;
        if !self.contains_unchecked(x) {
            return Ok(None);
        }
        Ok(self.face_lattice().by_active(&self.tight_set(x)))
    }

    /// The face of `self` equal to `other` as a point set, if any.
    pub fn find_face(&self, other: &Cone) -> Option<FaceId> {
        if other.dim != self.dim {
            return None;
        }
        let z = other.relint_point();
        let id = self.smallest_face_containing(&z).ok()??;
        let found = self.face_cone(id).ok()?;
        (found == *other).then_some(id)
    }

    /// A point of the relative interior: the sum of all extreme rays.
    pub fn relint_point(&self) -> QVector {
        self.rays.iter().fold(QVector::zeros(self.dim), |acc, r| acc.add(r))
    }

    /// Exhaustive implication test: every constraint of `normals` holds on
    /// all generators of `self`.
    pub fn satisfies_all(&self, normals: &[QVector]) -> bool {
        normals.iter().all(|a| {
            self.rays.iter().all(|r| !a.inner(r).is_negative()) && self.lineality.rows().iter().all(|l| a.inner(l).is_zero())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn v(c: &[i64]) -> QVector {
        QVector::from_ints(c)
    }

    fn quadrant() -> Cone {
        Cone::from_vrep(2, &[v(&[1, 0]), v(&[0, 1])], &[]).unwrap()
    }

    fn fid(c: &Cone, x: &[i64]) -> FaceId {
        c.smallest_face_containing(&v(x)).unwrap().unwrap()
    }

    #[test]
    fn hrep_examples() {
        let c = Cone::from_hrep(2, &[v(&[0, 1]), v(&[1, -1])]).unwrap();
        assert_eq!(c.rays(), &[v(&[1, 0]), v(&[1, 1])]);
        assert!(c.is_pointed());

        let plane = Cone::from_hrep(2, &[]).unwrap();
        assert!(plane.rays().is_empty());
        assert_eq!(plane.lineality_dim(), 2);
        assert_eq!(plane, Cone::whole_space(2));

        let line = Cone::from_hrep(2, &[v(&[1, 0]), v(&[-1, 0])]).unwrap();
        assert!(line.rays().is_empty());
        assert_eq!(line.lineality().rows(), &[v(&[0, 1])]);
        assert!(line.hrep().iter().all(|h| h.normal().inner(&v(&[0, 1])).is_zero()));

        assert_eq!(Cone::from_hrep(3, &[v(&[1, 0])]).unwrap_err(), Error::DimensionMismatch { expected: 3, found: 2 });
        assert_eq!(Cone::from_hrep(2, &[v(&[0, 0])]).unwrap_err(), Error::ZeroNormal);
    }

    #[test]
    fn vrep_examples() {
        let q = quadrant();
        let normals: Vec<_> = q.hrep().into_iter().map(|h| h.normal().clone()).collect();
        assert_eq!(normals, vec![v(&[0, 1]), v(&[1, 0])]);

        let z = Cone::from_vrep(2, &[], &[]).unwrap();
        assert_eq!(z, Cone::zero(2));
        assert_eq!(z.hrep().len(), 4);

        let c = Cone::from_vrep(2, &[v(&[1, 0]), v(&[1, 1])], &[]).unwrap();
        let normals: Vec<_> = c.facets().iter().map(|h| h.normal().clone()).collect();
        assert_eq!(normals, vec![v(&[0, 1]), v(&[1, -1])]);
        assert_eq!(c, Cone::from_hrep(2, &[v(&[0, 1]), v(&[1, -1])]).unwrap());
    }

    #[test]
    fn redundant_generators_and_constraints_are_dropped() {
        let c = Cone::from_vrep(2, &[v(&[1, 0]), v(&[0, 1]), v(&[1, 1]), v(&[2, 0])], &[]).unwrap();
        assert_eq!(c, quadrant());
        assert_eq!(c.rays().len(), 2);
        let c = Cone::from_hrep(2, &[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap();
        assert_eq!(c.facets().len(), 2);
    }

    #[test]
    fn dual_examples() {
        assert_eq!(quadrant().dual(), quadrant());
        assert_eq!(Cone::zero(2).dual(), Cone::whole_space(2));
        assert_eq!(Cone::whole_space(2).dual(), Cone::zero(2));
        let half = Cone::from_hrep(2, &[v(&[1, 0])]).unwrap();
        assert_eq!(half.dual(), Cone::from_vrep(2, &[v(&[1, 0])], &[]).unwrap());
        let c = Cone::from_vrep(3, &[v(&[1, 0, 2]), v(&[0, 1, 1]), v(&[-1, 1, 3])], &[]).unwrap();
        assert_eq!(c.dual().dual(), c);
    }

    #[test]
    fn minimal_face_examples() {
        let q = quadrant();
        assert_eq!(q.face(q.minimal_face()).unwrap().dim(), 0);
        let half = Cone::from_hrep(2, &[v(&[1, 0])]).unwrap();
        let f0 = half.face(half.minimal_face()).unwrap();
        assert_eq!(f0.span_basis().rows(), &[v(&[0, 1])]);
        assert_eq!(f0.active().len(), half.facets().len());
        let plane = Cone::whole_space(2);
        assert_eq!(plane.face_lattice().len(), 1);
        assert_eq!(plane.face_cone(plane.minimal_face()).unwrap(), plane);
    }

    #[test]
    fn face_lattice_examples() {
        assert_eq!(quadrant().face_lattice().len(), 4);
        let square = Cone::from_vrep(3, &[v(&[1, 0, 1]), v(&[0, 1, 1]), v(&[-1, 0, 1]), v(&[0, -1, 1])], &[]).unwrap();
        let lat = square.face_lattice();
        assert_eq!(lat.len(), 10);
        let dims: Vec<usize> = lat.faces().iter().map(Face::dim).collect();
        assert_eq!(dims, vec![0, 1, 1, 1, 1, 2, 2, 2, 2, 3]);
        let line = Cone::subspace(2, &[v(&[1, 1])]).unwrap();
        assert_eq!(line.face_lattice().len(), 1);
        assert!(lat.is_subface(lat.minimal(), lat.top()));
    }

    #[test]
    fn angle_cone_examples() {
        let q = quadrant();
        let e1 = fid(&q, &[1, 0]);
        assert_eq!(q.angle_cone(e1).unwrap(), Cone::from_hrep(2, &[v(&[0, 1])]).unwrap());
        assert_eq!(q.angle_cone(q.minimal_face()).unwrap(), q);
        assert_eq!(q.angle_cone(q.face_lattice().top()).unwrap(), Cone::whole_space(2));
        assert_eq!(q.angle_cone(FaceId(17)).unwrap_err(), Error::NotAFace(17));
    }

    #[test]
    fn face_dual_examples() {
        let q = quadrant();
        let e1 = fid(&q, &[1, 0]);
        assert_eq!(q.face_dual(e1).unwrap(), Cone::from_hrep(2, &[v(&[1, 0])]).unwrap());
        assert_eq!(q.face_dual(q.minimal_face()).unwrap(), Cone::whole_space(2));
        let c = Cone::from_vrep(2, &[v(&[1, 1]), v(&[1, 0])], &[]).unwrap();
        let diag = fid(&c, &[1, 1]);
        assert_eq!(c.face_dual(diag).unwrap(), Cone::from_hrep(2, &[v(&[1, 1])]).unwrap());
    }

    #[test]
    fn membership_examples() {
        let q = quadrant();
        assert!(q.contains(&v(&[1, 1])).unwrap() && q.relint_contains(&v(&[1, 1])).unwrap());
        assert!(q.contains(&v(&[1, 0])).unwrap() && !q.relint_contains(&v(&[1, 0])).unwrap());
        let line = Cone::subspace(2, &[v(&[1, 0])]).unwrap();
        assert!(line.relint_contains(&v(&[5, 0])).unwrap());
        assert!(q.contains(&v(&[1, 0, 0])).is_err());
    }

    #[test]
    fn smallest_face_examples() {
        let q = quadrant();
        assert_eq!(q.smallest_face_containing(&v(&[0, 0])).unwrap(), Some(q.minimal_face()));
        let f = q.smallest_face_containing(&v(&[2, 0])).unwrap().unwrap();
        assert_eq!(q.face_cone(f).unwrap(), Cone::from_vrep(2, &[v(&[1, 0])], &[]).unwrap());
        assert_eq!(q.smallest_face_containing(&v(&[-1, 0])).unwrap(), None);
    }

    #[test]
    fn pointed_part_examples() {
        let half = Cone::from_hrep(2, &[v(&[1, 0])]).unwrap();
        assert_eq!(half.pointed_part(), Cone::from_vrep(2, &[v(&[1, 0])], &[]).unwrap());
        assert_eq!(quadrant().pointed_part(), quadrant());
        assert_eq!(Cone::whole_space(2).pointed_part(), Cone::zero(2));
    }

    #[test]
    fn minkowski_examples() {
        let r1 = Cone::from_vrep(2, &[v(&[1, 0])], &[]).unwrap();
        let r2 = Cone::from_vrep(2, &[v(&[0, 1])], &[]).unwrap();
        assert_eq!(r1.minkowski_sum(&r2).unwrap(), quadrant());
        assert_eq!(quadrant().minkowski_sum(&Cone::zero(2)).unwrap(), quadrant());
        let line = Cone::subspace(2, &[v(&[0, 1])]).unwrap();
        assert_eq!(line.minkowski_sum(&r1).unwrap(), Cone::from_hrep(2, &[v(&[1, 0])]).unwrap());
    }

    #[test]
    fn cut_examples() {
        let q = quadrant();
        let (p, m, h) = q.cut(&v(&[1, -1])).unwrap();
        assert_eq!(p, Cone::from_vrep(2, &[v(&[1, 0]), v(&[1, 1])], &[]).unwrap());
        assert_eq!(m, Cone::from_vrep(2, &[v(&[0, 1]), v(&[1, 1])], &[]).unwrap());
        assert_eq!(h, Cone::from_vrep(2, &[v(&[1, 1])], &[]).unwrap());

        let (p, m, h) = q.cut(&v(&[1, 0])).unwrap();
        assert_eq!(p, q);
        assert_eq!(m, h);
        assert_eq!(h, Cone::from_vrep(2, &[v(&[0, 1])], &[]).unwrap());

        let (p, m, h) = Cone::whole_space(1).cut(&v(&[1])).unwrap();
        assert_eq!(p, Cone::from_vrep(1, &[v(&[1])], &[]).unwrap());
        assert_eq!(m, Cone::from_vrep(1, &[v(&[-1])], &[]).unwrap());
        assert_eq!(h, Cone::zero(1));

        assert_eq!(q.cut(&v(&[0, 0])).unwrap_err(), Error::ZeroNormal);
    }

    #[test]
    fn negate_examples() {
        let third = Cone::from_vrep(2, &[v(&[-1, 0]), v(&[0, -1])], &[]).unwrap();
        assert_eq!(quadrant().negate(), third);
        assert_eq!(Cone::whole_space(2).negate(), Cone::whole_space(2));
        let c = Cone::from_vrep(2, &[v(&[1, 0]), v(&[1, 1])], &[]).unwrap();
        assert_eq!(c.negate(), Cone::from_vrep(2, &[v(&[-1, 0]), v(&[-1, -1])], &[]).unwrap());
    }
}
