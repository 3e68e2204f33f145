//! Pointwise evaluation of the Brianchon–Gram–Sommerville relations and
//! of the `y = 0` identities.

use crate::cone::{Cone, FaceId};
use crate::error::{check_dim, Result};
use crate::linalg::QVector;
use crate::rational::Rational;

use super::{FacetSigns, RaySigns};

/// Both sides of one identity at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityValue {
    pub lhs: Rational,
    pub rhs: Rational,
}

impl IdentityValue {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn indicator(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// The four relations at `x`, the third one for the face `f`:
///
/// 1. `Σ_E ε_C^E [A(E,C)] = [-relint C]`
/// 2. `Σ_E ε_E^{F_0} [E*] = [-relint C*]`
/// 3. `Σ_{E ⊇ F} ε_C^E [relint A(E,C)] = [-A(F,C)]`
/// 4. `Σ_E ε_E^{F_0} [relint E*] = [-C*]`
pub fn bgs_values(cone: &Cone, f: FaceId, x: &QVector) -> Result<[IdentityValue; 4]> {
    check_dim(cone.dim(), x.dim())?;
    let face_f = cone.face(f)?;
    let lattice = cone.face_lattice();
    let top = lattice.face(lattice.top());
    let d_c = top.dim();
    let d_0 = lattice.face(lattice.minimal()).dim();
    let xs = FacetSigns::new(cone, x);
    let xr = RaySigns::new(cone, x);
    let neg = x.neg();
    let ns = FacetSigns::new(cone, &neg);
    let nr = RaySigns::new(cone, &neg);

    let mut sums = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
    for e in lattice.ids() {
        let face = lattice.face(e);
        let rel_c = Rational::sign_power(d_c - face.dim());
        let rel_0 = Rational::sign_power(face.dim() - d_0);
        if xs.in_angle(face) {
            sums[0] += &rel_c;
        }
        if xr.in_face_dual(face) {
            sums[1] += &rel_0;
        }
        if lattice.is_subface(f, e) && xs.in_relint_angle(face) {
            sums[2] += &rel_c;
        }
        if xr.in_relint_face_dual(face) {
            sums[3] += &rel_0;
        }
    }
    let rhs = [
        indicator(ns.in_relint_face(top)),
        indicator(nr.in_relint_face_dual(top)),
        indicator(ns.in_angle(face_f)),
        indicator(nr.in_dual()),
    ];
    let [s0, s1, s2, s3] = sums;
    let [r0, r1, r2, r3] = rhs;
    Ok([
        IdentityValue { lhs: s0, rhs: r0 },
        IdentityValue { lhs: s1, rhs: r1 },
        IdentityValue { lhs: s2, rhs: r2 },
        IdentityValue { lhs: s3, rhs: r3 },
    ])
}

pub fn bgs_check(cone: &Cone, f: FaceId, x: &QVector) -> Result<[bool; 4]> {
    Ok(bgs_values(cone, f, x)?.map(|v| v.holds()))
}

/// The four `y = 0` identities at `x`, where `x_F` is the orthogonal
/// projection of `x` onto `V_F` and `x^F = x - x_F`:
///
/// 1. `Σ_F ε_C^F [A(F,C)](x) [F*](x) = [C is a subspace and x = 0]`
/// 2. the same with both factors replaced by relative interiors
/// 3. `Σ_F ε_C^F [A(F,C)*](x^F) [F](x_F) = [C is a subspace]`
/// 4. the same with both factors replaced by relative interiors
pub fn lang_values(cone: &Cone, x: &QVector) -> Result<[IdentityValue; 4]> {
    check_dim(cone.dim(), x.dim())?;
    let lattice = cone.face_lattice();
    let d_c = lattice.face(lattice.top()).dim();
    let xs = FacetSigns::new(cone, x);
    let xr = RaySigns::new(cone, x);
    let mut sums = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
    for face in lattice.faces() {
        let s = Rational::sign_power(d_c - face.dim());
        if xs.in_angle(face) && xr.in_face_dual(face) {
            sums[0] += &s;
        }
        if xs.in_relint_angle(face) && xr.in_relint_face_dual(face) {
            sums[1] += &s;
        }
        let x_f = face.span_basis().project(x);
        let x_perp = x.sub(&x_f);
        let along = FacetSigns::new(cone, &x_f);
        let across = RaySigns::new(cone, &x_perp);
        if across.in_angle_dual(face) && along.in_face(face) {
            sums[2] += &s;
        }
        if across.in_relint_angle_dual(face) && along.in_relint_face(face) {
            sums[3] += &s;
        }
    }
    let subspace = cone.is_subspace();
    let at_zero = indicator(subspace && x.is_zero());
    let [s0, s1, s2, s3] = sums;
    Ok([
        IdentityValue { lhs: s0, rhs: at_zero.clone() },
        IdentityValue { lhs: s1, rhs: at_zero },
        IdentityValue { lhs: s2, rhs: indicator(subspace) },
        IdentityValue { lhs: s3, rhs: indicator(subspace) },
    ])
}

pub fn lang_identities_check(cone: &Cone, x: &QVector) -> Result<[bool; 4]> {
    Ok(lang_values(cone, x)?.map(|v| v.holds()))
}
