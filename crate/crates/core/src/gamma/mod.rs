//! The Γ function and the valuations `Γ_y`, `Γ′_y` built from it.
//!
//! `Γ(C, x, y) = Σ_F ε_F [A(F,C)](x) [F*](y)`, summed over the face
//! lattice, and `Γ_y([C])(x) = Γ(C, x, x - y)`.

mod identities;
mod signs;

use alloc::vec::Vec;

use crate::cone::{Cone, FaceId};
use crate::error::{check_dim, Result};
use crate::indicator::{ConicSum, FormalSum};
use crate::linalg::QVector;
use crate::rational::Rational;

pub use identities::{bgs_check, bgs_values, lang_identities_check, lang_values, IdentityValue};
pub(crate) use signs::{FacetSigns, RaySigns};

/// Deliberately wrong variants of the face sign, used to show that the
/// verification suites detect broken implementations.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mutation {
    #[default]
    None,
    /// `ε_C^F` in place of `ε_F`.
    RelativeSign,
    /// `-ε_F` in place of `ε_F`.
    NegatedSign,
    /// The cut identity loses its `-Γ_y([C ∩ H])` term.
    DropCutTerm,
}

impl Mutation {
    fn face_sign(self, face_dim: usize, top_dim: usize) -> Rational {
        match self {
            Mutation::RelativeSign => Rational::sign_power(top_dim - face_dim),
            Mutation::NegatedSign => -Rational::sign_power(face_dim),
            Mutation::None | Mutation::DropCutTerm => Rational::sign_power(face_dim),
        }
    }
}

/// `Γ(C, x, y)`.
pub fn gamma_point(cone: &Cone, x: &QVector, y: &QVector) -> Result<Rational> {
    gamma_point_with(cone, x, y, Mutation::None)
}

#[doc(hidden)]
pub fn gamma_point_with(cone: &Cone, x: &QVector, y: &QVector, mutation: Mutation) -> Result<Rational> {
    check_dim(cone.dim(), x.dim())?;
    check_dim(cone.dim(), y.dim())?;
    let lattice = cone.face_lattice();
    Ok(face_gamma(cone, lattice.top(), &FacetSigns::new(cone, x), &RaySigns::new(cone, y), mutation))
}

/// `Γ(F, x, u)` for a face `F` of `cone`, from precomputed sign patterns.
fn face_gamma(cone: &Cone, f: FaceId, xs: &FacetSigns, us: &RaySigns, mutation: Mutation) -> Rational {
    let lattice = cone.face_lattice();
    let top = lattice.face(f);
    if !xs.in_span() {
        return Rational::zero();
    }
    let mut total = Rational::zero();
    for g in lattice.within(f) {
        let face = lattice.face(g);
        if xs.in_sub_angle(face, top) && us.in_face_dual(face) {
            total += mutation.face_sign(face.dim(), top.dim());
        }
    }
    total
}

/// `Γ(C, x, y)` evaluated from explicitly constructed angle and dual
/// cones. Much slower than [`gamma_point`]; used as an oracle.
pub fn gamma_point_reference(cone: &Cone, x: &QVector, y: &QVector) -> Result<Rational> {
    check_dim(cone.dim(), x.dim())?;
    check_dim(cone.dim(), y.dim())?;
    let mut total = Rational::zero();
    for f in cone.face_lattice().ids() {
        if cone.angle_cone(f)?.contains(x)? && cone.face_dual(f)?.contains(y)? {
            total += cone.face(f)?.sign();
        }
    }
    Ok(total)
}

/// `Γ_y([C])(x)`.
pub fn gamma_y_eval(cone: &Cone, y: &QVector, x: &QVector) -> Result<Rational> {
    gamma_y_eval_with(cone, y, x, Mutation::None)
}

#[doc(hidden)]
pub fn gamma_y_eval_with(cone: &Cone, y: &QVector, x: &QVector, mutation: Mutation) -> Result<Rational> {
    check_dim(cone.dim(), y.dim())?;
    gamma_point_with(cone, x, &x.sub(y), mutation)
}

/// `Γ_y([F])(x)` for every face `F` of `cone`, indexed by [`FaceId`].
pub fn gamma_y_faces(cone: &Cone, y: &QVector, x: &QVector) -> Result<Vec<Rational>> {
    gamma_y_faces_with(cone, y, x, Mutation::None)
}

#[doc(hidden)]
pub fn gamma_y_faces_with(cone: &Cone, y: &QVector, x: &QVector, mutation: Mutation) -> Result<Vec<Rational>> {
    check_dim(cone.dim(), x.dim())?;
    check_dim(cone.dim(), y.dim())?;
    let xs = FacetSigns::new(cone, x);
    let us = RaySigns::new(cone, &x.sub(y));
    Ok(cone.face_lattice().ids().map(|f| face_gamma(cone, f, &xs, &us, mutation)).collect())
}

/// `Γ_y` applied termwise to a combination of cones.
pub fn gamma_y_on_conic(sum: &ConicSum, y: &QVector, x: &QVector) -> Result<Rational> {
    gamma_y_on_conic_with(sum, y, x, Mutation::None)
}

#[doc(hidden)]
pub fn gamma_y_on_conic_with(sum: &ConicSum, y: &QVector, x: &QVector, mutation: Mutation) -> Result<Rational> {
    let mut total = Rational::zero();
    for (c, cone) in sum.terms() {
        total += c * &gamma_y_eval_with(cone, y, x, mutation)?;
    }
    Ok(total)
}

/// `Γ_y` applied termwise to a formal sum whose cells are all cones.
pub fn gamma_y_on_sum(sum: &FormalSum, y: &QVector, x: &QVector) -> Result<Rational> {
    gamma_y_on_conic(&sum.to_conic()?, y, x)
}

/// `Γ′_y([C])(x) = ε_C Γ_y([relint C])(x)`, with `[relint C]` expanded as
/// `Σ_F ε_C^F [F]`.
pub fn gamma_prime_y_eval(cone: &Cone, y: &QVector, x: &QVector) -> Result<Rational> {
    gamma_prime_y_eval_with(cone, y, x, Mutation::None)
}

#[doc(hidden)]
pub fn gamma_prime_y_eval_with(cone: &Cone, y: &QVector, x: &QVector, mutation: Mutation) -> Result<Rational> {
    let per_face = gamma_y_faces_with(cone, y, x, mutation)?;
    let lattice = cone.face_lattice();
    Ok(prime_of_face(lattice, lattice.top(), &per_face))
}

fn prime_of_face(lattice: &crate::cone::FaceLattice, f: FaceId, per_face: &[Rational]) -> Rational {
    let d = lattice.face(f).dim();
    let mut total = Rational::zero();
    for g in lattice.within(f) {
        let s = Rational::sign_power(d - lattice.face(g).dim());
        total += &s * &per_face[g.0];
    }
    &Rational::sign_power(d) * &total
}

/// `Γ′_y` applied termwise to a combination of cones.
pub fn gamma_prime_y_on_conic(sum: &ConicSum, y: &QVector, x: &QVector) -> Result<Rational> {
    let mut total = Rational::zero();
    for (c, cone) in sum.terms() {
        total += c * &gamma_prime_y_eval(cone, y, x)?;
    }
    Ok(total)
}

/// `Γ′_y([-relint C])(x)`, computed by expanding `[-relint C]` as
/// `Σ_F ε_C^F [-F]` and applying `Γ′_y` to every term.
pub fn reciprocity_lhs(cone: &Cone, y: &QVector, x: &QVector) -> Result<Rational> {
    let neg = cone.negate();
    let per_face = gamma_y_faces(&neg, y, x)?;
    let lattice = neg.face_lattice();
    let top = lattice.face(lattice.top()).dim();
    let mut total = Rational::zero();
    for f in lattice.ids() {
        let s = Rational::sign_power(top - lattice.face(f).dim());
        total += &s * &prime_of_face(lattice, f, &per_face);
    }
    Ok(total)
}

/// `Σ_F ε_F^{F_0} [relint A(F,C)](x) [relint F*](x - y)`.
pub fn reciprocity_rhs(cone: &Cone, y: &QVector, x: &QVector) -> Result<Rational> {
    check_dim(cone.dim(), x.dim())?;
    check_dim(cone.dim(), y.dim())?;
    let xs = FacetSigns::new(cone, x);
    let us = RaySigns::new(cone, &x.sub(y));
    let lattice = cone.face_lattice();
    let d0 = lattice.face(lattice.minimal()).dim();
    let mut total = Rational::zero();
    for face in lattice.faces() {
        if xs.in_relint_angle(face) && us.in_relint_face_dual(face) {
            total += Rational::sign_power(face.dim() - d0);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests;
