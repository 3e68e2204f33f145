//! Atomic checks. Each one compares an expected with an actual exact value
//! for a single cone and a few vectors, so that any failure can be replayed
//! and shrunk on its own.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::arrangement::gamma_cells_with;
use crate::cone::{Cone, FaceId};
use crate::error::{Error, Result};
use crate::gamma::{
    bgs_values, gamma_point_reference, gamma_point_with, gamma_prime_y_eval_with, gamma_y_eval_with, lang_values, reciprocity_lhs,
    reciprocity_rhs, Mutation,
};
use crate::indicator::{indicator, AffineCondition, ConicSum, GeneralizedPolyhedron, Relation};
use crate::linalg::QVector;
use crate::rational::Rational;

use super::oracle::{brute_force_angle_cone, lattice_matches_brute_force};

/// Facet bound for the checks that enumerate faces by brute force or
/// compare cones for every face pair.
pub const MAX_EXHAUSTIVE_FACETS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// `Σ_F ε_C^F = [C is a subspace]`.
    Euler,
    /// `F(C) = {C}` exactly for subspaces.
    SingletonLattice,
    /// `[C] = [C⁺] + [C⁻] - [C_H]` at a point. Vectors: normal, x.
    IepIndicator,
    /// `χ` of the cut expansion is `χ([C]) = 1`. Vectors: normal.
    IepEuler,
    /// One of the four BGS relations at a point. Vectors: x; face `F`.
    Bgs(u8),
    /// One part of the angle/dual cone lemma; parts 3 and 4 take a face.
    Wellknown(u8),
    /// The dual map of the cut expansion is `[C*]`. Vectors: normal, x.
    DualValuation,
    /// One special-case formula for `Γ(x, y)`. Vectors: x, y.
    GamEazy(u8),
    /// `Γ(x, y) = 0` when `<x, y> > 0`, for non-degenerate cones.
    XyVanish,
    /// `Γ_y([C])(x) = 0` when `<x, x - y> > 0`. Vectors: y, x.
    GamBound,
    /// The fast `Γ_y` equals the constructive one. Vectors: y, x.
    GammaOracle,
    /// The cut identity for `Γ_y`. Vectors: normal, y, x.
    MainCut,
    /// `Γ_y([C]) = [C ∩ (y - relint C*)]` at a point. Vectors: y, x.
    ClosedForm2d,
    /// Cells of `gamma_region` against the same closed form. Vectors: y.
    ClosedFormRegion,
    /// `Γ′_y([-relint C])` against the relint face sum. Vectors: y, x.
    Reciprocity,
    /// The cut identity for `Γ′_y`. Vectors: normal, y, x.
    PrimeCut,
    /// One of the four `y = 0` identities. Vectors: x.
    Lang(u8),
    /// `a(x - z) ∈ A(F, C)` for `x ∈ C`, `z ∈ relint F`, `a > 0`.
    /// Vectors: x, (a); face `F`.
    AngleDefinition,
    /// Every point of `A(F, C)` is of the form `a(x - z)`. Vectors: q; face `F`.
    AngleInterior,
    /// `A(F, C)` equals the brute-force active-constraint cone. Face `F`.
    AngleBruteForce,
    /// The face lattice equals brute-force subset enumeration.
    LatticeOracle,
}

impl Check {
    pub fn name(self) -> String {
        let base = match self {
            Check::Euler => "euler",
            Check::SingletonLattice => "singleton-lattice",
            Check::IepIndicator => "iep-indicator",
            Check::IepEuler => "iep-euler",
            Check::Bgs(k) => return format!("bgs-{}", k + 1),
            Check::Wellknown(k) => return format!("wellknown-{k}"),
            Check::DualValuation => "dual-valuation",
            Check::GamEazy(k) => return format!("gameazy-{k}"),
            Check::XyVanish => "xyvanish",
            Check::GamBound => "gambound",
            Check::GammaOracle => "gamma-oracle",
            Check::MainCut => "main-cut",
            Check::ClosedForm2d => "closed-form-2d",
            Check::ClosedFormRegion => "closed-form-region",
            Check::Reciprocity => "reciprocity",
            Check::PrimeCut => "prime-cut",
            Check::Lang(k) => return format!("lang-{}", k + 1),
            Check::AngleDefinition => "angle-definition",
            Check::AngleInterior => "angle-interior",
            Check::AngleBruteForce => "angle-brute-force",
            Check::LatticeOracle => "lattice-oracle",
        };
        base.into()
    }

    pub fn from_name(s: &str) -> Option<Check> {
        let numbered = |prefix: &str, lo: u8, hi: u8| -> Option<u8> {
            let k: u8 = s.strip_prefix(prefix)?.parse().ok()?;
            (lo..=hi).contains(&k).then_some(k)
        };
        if let Some(k) = numbered("bgs-", 1, 4) {
            return Some(Check::Bgs(k - 1));
        }
        if let Some(k) = numbered("lang-", 1, 4) {
            return Some(Check::Lang(k - 1));
        }
        if let Some(k) = numbered("wellknown-", 1, 4) {
            return Some(Check::Wellknown(k));
        }
        if let Some(k) = numbered("gameazy-", 1, 4) {
            return Some(Check::GamEazy(k));
        }
        [
            Check::Euler,
            Check::SingletonLattice,
            Check::IepIndicator,
            Check::IepEuler,
            Check::DualValuation,
            Check::XyVanish,
            Check::GamBound,
            Check::GammaOracle,
            Check::MainCut,
            Check::ClosedForm2d,
            Check::ClosedFormRegion,
            Check::Reciprocity,
            Check::PrimeCut,
            Check::AngleDefinition,
            Check::AngleInterior,
            Check::AngleBruteForce,
            Check::LatticeOracle,
        ]
        .into_iter()
        .find(|c| c.name() == s)
    }

    pub(crate) fn arity(self) -> usize {
        match self {
            Check::Euler
            | Check::SingletonLattice
            | Check::Wellknown(_)
            | Check::AngleBruteForce
            | Check::LatticeOracle => 0,
            Check::IepEuler | Check::Bgs(_) | Check::Lang(_) | Check::AngleInterior | Check::ClosedFormRegion => 1,
            Check::MainCut | Check::PrimeCut => 3,
            _ => 2,
        }
    }

    pub(crate) fn needs_face(self) -> bool {
        matches!(
            self,
            Check::Bgs(2) | Check::Wellknown(3 | 4) | Check::AngleDefinition | Check::AngleInterior | Check::AngleBruteForce
        )
    }
}

/// One replayable check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub check: Check,
    pub cone: Cone,
    pub vectors: Vec<QVector>,
    pub face: Option<FaceId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub expected: Rational,
    pub actual: Rational,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }

    pub(crate) fn new(expected: Rational, actual: Rational) -> Self {
        Outcome { expected, actual }
    }

    pub(crate) fn truth(ok: bool) -> Self {
        Outcome { expected: Rational::one(), actual: ind(ok) }
    }
}

pub(crate) fn ind(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// Runs `instance`. `None` means its preconditions do not hold, so it
/// checks nothing.
pub fn evaluate(instance: &Instance, mutation: Mutation) -> Result<Option<Outcome>> {
    let Instance { check, cone, vectors, face } = instance;
    let check = *check;
    if vectors.len() != check.arity() {
        return Err(Error::Unsupported(format!("{} takes {} vectors, got {}", check.name(), check.arity(), vectors.len())));
    }
    let d = cone.dim();
    for (i, v) in vectors.iter().enumerate() {
        let expect = if check == Check::AngleDefinition && i == 1 { 1 } else { d };
        crate::error::check_dim(expect, v.dim())?;
    }
    let f = match (check.needs_face(), face) {
        (true, Some(f)) => {
            cone.face(*f)?;
            *f
        }
        (true, None) => return Err(Error::Unsupported(format!("{} needs a face", check.name()))),
        (false, _) => cone.minimal_face(),
    };
    let v = |i: usize| &vectors[i];
    Ok(match check {
        Check::Euler => Some(Outcome::new(ind(cone.is_subspace()), Rational::integer(cone.face_lattice().euler_sum()))),
        Check::SingletonLattice => Some(Outcome::new(ind(cone.is_subspace()), ind(cone.face_lattice().len() == 1))),
        Check::IepIndicator => cut_nonzero(v(0))
            .map(|()| Ok(Outcome::new(ind(cone.contains(v(1))?), ConicSum::cut_expansion(cone, v(0))?.evaluate(v(1))?)))
            .transpose()?,
        Check::IepEuler => cut_nonzero(v(0))
            .map(|()| Ok(Outcome::new(Rational::one(), ConicSum::cut_expansion(cone, v(0))?.to_formal().euler_char()?)))
            .transpose()?,
        Check::DualValuation => match cut_nonzero(v(0)) {
            None => None,
            Some(()) => {
                let lhs = indicator(cone).dual_map()?.evaluate(v(1))?;
                if lhs != ind(cone.dual_contains(v(1))?) {
                    Some(Outcome::new(ind(cone.dual_contains(v(1))?), lhs))
                } else {
                    let rhs = ConicSum::cut_expansion(cone, v(0))?.to_formal().dual_map()?.evaluate(v(1))?;
                    Some(Outcome::new(lhs, rhs))
                }
            }
        },
        Check::Bgs(k) => {
            let vals = bgs_values(cone, f, v(0))?;
            let iv = &vals[usize::from(k.min(3))];
            Some(Outcome::new(iv.rhs.clone(), iv.lhs.clone()))
        }
        Check::Lang(k) => {
            let vals = lang_values(cone, v(0))?;
            let iv = &vals[usize::from(k.min(3))];
            Some(Outcome::new(iv.rhs.clone(), iv.lhs.clone()))
        }
        Check::Wellknown(k) => wellknown(cone, k, f)?.map(Outcome::truth),
        Check::GamEazy(k) => gam_eazy(cone, k, v(0), v(1), mutation)?,
        Check::XyVanish => {
            if cone.is_nondegenerate() && v(0).inner(v(1)).is_positive() {
                Some(Outcome::new(Rational::zero(), gamma_point_with(cone, v(0), v(1), mutation)?))
            } else {
                None
            }
        }
        Check::GamBound => {
            let (y, x) = (v(0), v(1));
            if x.inner(&x.sub(y)).is_positive() {
                Some(Outcome::new(Rational::zero(), gamma_y_eval_with(cone, y, x, mutation)?))
            } else {
                None
            }
        }
        Check::GammaOracle => {
            let (y, x) = (v(0), v(1));
            Some(Outcome::new(gamma_point_reference(cone, x, &x.sub(y))?, gamma_y_eval_with(cone, y, x, mutation)?))
        }
        Check::MainCut => match cut_nonzero(v(0)) {
            None => None,
            Some(()) => Some(CutCase::new(cone, v(0))?.gamma(v(1), v(2), mutation)?),
        },
        Check::PrimeCut => match cut_nonzero(v(0)) {
            None => None,
            Some(()) => Some(CutCase::new(cone, v(0))?.gamma_prime(v(1), v(2), mutation)?),
        },
        Check::ClosedForm2d => match closed_form_target(cone, v(0))? {
            None => None,
            Some(t) => Some(Outcome::new(ind(t.contains(v(1))), gamma_y_eval_with(cone, v(0), v(1), mutation)?)),
        },
        Check::ClosedFormRegion => match closed_form_target(cone, v(0))? {
            None => None,
            Some(t) => Some(Outcome::truth(region_matches(cone, v(0), &t, mutation)?)),
        },
        Check::Reciprocity => Some(Outcome::new(reciprocity_rhs(cone, v(0), v(1))?, reciprocity_lhs(cone, v(0), v(1))?)),
        Check::AngleDefinition => {
            let z = cone.face_cone(f)?.relint_point();
            angle_definition(cone, &cone.angle_cone(f)?, &z, v(0), &v(1)[0])?
        }
        Check::AngleInterior => {
            let z = cone.face_cone(f)?.relint_point();
            angle_interior(cone, &cone.angle_cone(f)?, &z, v(0))?
        }
        Check::AngleBruteForce => Some(Outcome::truth(cone.angle_cone(f)? == brute_force_angle_cone(cone, f)?)),
        Check::LatticeOracle => {
            if cone.facets().len() > MAX_EXHAUSTIVE_FACETS {
                None
            } else {
                Some(Outcome::truth(lattice_matches_brute_force(cone)?))
            }
        }
    })
}

fn cut_nonzero(normal: &QVector) -> Option<()> {
    (!normal.is_zero()).then_some(())
}

/// `C` with its three pieces under the hyperplane `normal^⊥`.
pub(crate) struct CutCase<'a> {
    pub(crate) cone: &'a Cone,
    pub(crate) plus: Cone,
    pub(crate) minus: Cone,
    pub(crate) hyper: Cone,
}

impl<'a> CutCase<'a> {
    pub(crate) fn new(cone: &'a Cone, normal: &QVector) -> Result<Self> {
        let (plus, minus, hyper) = cone.cut(normal)?;
        Ok(CutCase { cone, plus, minus, hyper })
    }

    pub(crate) fn pieces(&self) -> [&Cone; 4] {
        [self.cone, &self.plus, &self.minus, &self.hyper]
    }

    fn combine(&self, eval: impl Fn(&Cone) -> Result<Rational>, mutation: Mutation) -> Result<Outcome> {
        let mut actual = &eval(&self.plus)? + &eval(&self.minus)?;
        if mutation != Mutation::DropCutTerm {
            actual -= eval(&self.hyper)?;
        }
        Ok(Outcome::new(eval(self.cone)?, actual))
    }

    pub(crate) fn gamma(&self, y: &QVector, x: &QVector, mutation: Mutation) -> Result<Outcome> {
        self.combine(|c| gamma_y_eval_with(c, y, x, mutation), mutation)
    }

    pub(crate) fn gamma_prime(&self, y: &QVector, x: &QVector, mutation: Mutation) -> Result<Outcome> {
        self.combine(|c| gamma_prime_y_eval_with(c, y, x, mutation), mutation)
    }
}

fn gam_eazy(cone: &Cone, k: u8, x: &QVector, y: &QVector, mutation: Mutation) -> Result<Option<Outcome>> {
    let neg_x = x.neg();
    let neg_y = y.neg();
    let f0_sign = Rational::sign_power(cone.lineality_dim());
    let expected = match k {
        1 => {
            let in_dual = cone.dual_contains(y)?;
            let neg_relint = cone.relint_contains(&neg_x)?;
            if !(in_dual || neg_relint) {
                return Ok(None);
            }
            &cone.sign() * &ind(neg_relint && in_dual)
        }
        2 => {
            let neg_dual_relint = cone.dual_relint_contains(&neg_y)?;
            let in_cone = cone.contains(x)?;
            if !(neg_dual_relint || in_cone) {
                return Ok(None);
            }
            &f0_sign * &ind(in_cone && neg_dual_relint)
        }
        3 => {
            if !cone.is_subspace() {
                return Ok(None);
            }
            &cone.sign() * &ind(cone.contains(x)? && cone.dual_contains(y)?)
        }
        4 => {
            let perp = cone.lineality().rows().iter().all(|l| l.inner(y).is_zero());
            if cone.span_contains(x)? && perp {
                return Ok(None);
            }
            Rational::zero()
        }
        _ => return Err(Error::Unsupported(format!("gameazy part {k} does not exist"))),
    };
    Ok(Some(Outcome::new(expected, gamma_point_with(cone, x, y, mutation)?)))
}

/// `A(F, G)` for faces `F ⊆ G` of `cone`, as a cone in the ambient space.
fn sub_angle(cone: &Cone, f: FaceId, g: FaceId) -> Result<Cone> {
    let gc = cone.face_cone(g)?;
    let id = gc.find_face(&cone.face_cone(f)?).ok_or(Error::NotAFace(f.0))?;
    gc.angle_cone(id)
}

pub(crate) fn wellknown(cone: &Cone, k: u8, f: FaceId) -> Result<Option<bool>> {
    let lat = cone.face_lattice();
    let f0 = cone.minimal_face_cone();
    Ok(Some(match k {
        1 => {
            let v_c = Cone::subspace(cone.dim(), cone.span_basis().rows())?;
            let f0_perp = Cone::subspace(cone.dim(), cone.lineality().orthogonal_complement().rows())?;
            cone.angle_cone(lat.minimal())? == *cone
                && cone.angle_cone(lat.top())? == v_c
                && cone.face_dual(lat.minimal())? == f0_perp
        }
        2 => {
            let pointed = cone.pointed_part();
            let orthogonal = pointed.rays().iter().all(|r| cone.lineality().rows().iter().all(|l| l.inner(r).is_zero()));
            pointed.is_pointed()
                && orthogonal
                && f0.minkowski_sum(&pointed)? == *cone
                && cone.dual() == f0.dual().intersect(&pointed.dual())?
        }
        3 | 4 => {
            if cone.facets().len() > MAX_EXHAUSTIVE_FACETS {
                return Ok(None);
            }
            let above: Vec<FaceId> = lat.containing(f).collect();
            let angle = cone.angle_cone(f)?;
            let target = if k == 3 { angle.clone() } else { angle.dual() };
            let tlat = target.face_lattice();
            let mut ids = Vec::with_capacity(above.len());
            for &g in &above {
                let image = if k == 3 { sub_angle(cone, f, g)? } else { cone.angle_cone(g)?.dual() };
                match target.find_face(&image) {
                    Some(id) => ids.push(id),
                    None => return Ok(Some(false)),
                }
            }
            let mut sorted = ids.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != ids.len() || ids.len() != tlat.len() {
                return Ok(Some(false));
            }
            for (i, &g1) in above.iter().enumerate() {
                for (j, &g2) in above.iter().enumerate() {
                    let image_order = if k == 3 { tlat.is_subface(ids[i], ids[j]) } else { tlat.is_subface(ids[j], ids[i]) };
                    if lat.is_subface(g1, g2) != image_order {
                        return Ok(Some(false));
                    }
                }
            }
            for (i, &g) in above.iter().enumerate() {
                let composite = target.angle_cone(ids[i])?;
                let expect = if k == 3 { cone.angle_cone(g)? } else { sub_angle(cone, f, g)?.dual() };
                if composite != expect {
                    return Ok(Some(false));
                }
            }
            true
        }
        _ => return Err(Error::Unsupported(format!("wellknown part {k} does not exist"))),
    }))
}

/// `a(x - z) ∈ A(F, C)`, given `angle = A(F, C)` and `z ∈ relint F`.
pub(crate) fn angle_definition(cone: &Cone, angle: &Cone, z: &QVector, x: &QVector, a: &Rational) -> Result<Option<Outcome>> {
    if !a.is_positive() || !cone.contains(x)? {
        return Ok(None);
    }
    Ok(Some(Outcome::truth(angle.contains(&x.sub(z).scale(a))?)))
}

/// For `q ∈ A(F, C)`: whether `q = a(x - z)` for some `a > 0` and
/// `x ∈ C`, i.e. moving from `z` along `q` stays in `C` for a while.
pub(crate) fn angle_interior(cone: &Cone, angle: &Cone, z: &QVector, q: &QVector) -> Result<Option<Outcome>> {
    if !angle.contains(q)? {
        return Ok(None);
    }
    Ok(Some(Outcome::truth(is_feasible_direction(cone, z, q)?)))
}

fn is_feasible_direction(cone: &Cone, z: &QVector, q: &QVector) -> Result<bool> {
    if !cone.span_contains(q)? {
        return Ok(false);
    }
    let mut t = Rational::one();
    for h in cone.facets() {
        let slope = h.normal().inner(q);
        if slope.is_negative() {
            let room = h.normal().inner(z);
            if !room.is_positive() {
                return Ok(false);
            }
            let bound = &room / &(-slope);
            if bound < t {
                t = bound;
            }
        }
    }
    cone.contains(&z.add_scaled(&t, q))
}

/// `C ∩ (y - relint C*)` for a non-degenerate 2D cone and
/// `y ∈ relint(C ∩ C*)`; `None` otherwise.
pub(crate) fn closed_form_target(cone: &Cone, y: &QVector) -> Result<Option<GeneralizedPolyhedron>> {
    if cone.dim() != 2 || !cone.is_nondegenerate() || !cone.relint_contains(y)? || !cone.dual_relint_contains(y)? {
        return Ok(None);
    }
    let mut conds: Vec<AffineCondition> = cone.facets().iter().map(|h| AffineCondition::halfspace(h.normal().clone())).collect();
    // the facets of C* are the rays of C: <r, y - x> > 0
    conds.extend(cone.rays().iter().map(|r| AffineCondition::new(r.neg(), -r.inner(y), Relation::Gt)));
    Ok(Some(GeneralizedPolyhedron::new(2, conds)?))
}

/// The alternatives whose union is the complement of `c`.
fn complement(c: &AffineCondition) -> Vec<AffineCondition> {
    let flip = |rel| AffineCondition::new(c.normal().neg(), -c.offset(), rel);
    match c.relation() {
        Relation::Ge => alloc::vec![flip(Relation::Gt)],
        Relation::Gt => alloc::vec![flip(Relation::Ge)],
        Relation::Eq => alloc::vec![
            AffineCondition::new(c.normal().clone(), c.offset().clone(), Relation::Gt),
            flip(Relation::Gt),
        ],
    }
}

fn feasible_with(cell: &GeneralizedPolyhedron, extra: &[AffineCondition]) -> Result<bool> {
    let mut conds = cell.conditions().to_vec();
    conds.extend(extra.iter().cloned());
    Ok(GeneralizedPolyhedron::new(cell.dim(), conds)?.is_feasible())
}

/// Every nonzero cell has value 1 and lies inside `target`; every zero
/// cell misses it. The cells partition a domain containing the support.
fn region_matches(cone: &Cone, y: &QVector, target: &GeneralizedPolyhedron, mutation: Mutation) -> Result<bool> {
    let cells = gamma_cells_with(cone, y, mutation)?;
    for cell in &cells.cells {
        if cell.value.is_zero() {
            if feasible_with(&cell.conditions, target.conditions())? {
                return Ok(false);
            }
            continue;
        }
        if cell.value != Rational::one() {
            return Ok(false);
        }
        for t in target.conditions() {
            for alt in complement(t) {
                if feasible_with(&cell.conditions, &[alt])? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
