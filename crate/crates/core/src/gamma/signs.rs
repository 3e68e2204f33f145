//! Sign patterns of points against a cone's facets and rays. Every
//! membership test used by the Γ sums reduces to subset tests on these.

use crate::bitset::BitSet;
use crate::cone::{Cone, Face};
use core::cmp::Ordering;

use crate::linalg::{QVector, Scaled};

/// Signs of `<a_i, x>` over the facets of a cone.
pub(crate) struct FacetSigns {
    in_span: bool,
    nonneg: BitSet,
    zero: BitSet,
    all: BitSet,
}

impl FacetSigns {
    pub(crate) fn new(cone: &Cone, x: &QVector) -> Self {
        let x = Scaled::new(x);
        let in_span = cone.equalities().rows().iter().all(|e| e.inner_sign(&x) == Ordering::Equal);
        let mut nonneg = BitSet::new();
        let mut zero = BitSet::new();
        for (i, h) in cone.facets().iter().enumerate() {
            match h.normal().inner_sign(&x) {
                Ordering::Equal => {
                    zero.insert(i);
                    nonneg.insert(i);
                }
                Ordering::Greater => nonneg.insert(i),
                Ordering::Less => {}
            }
        }
        FacetSigns { in_span, nonneg, zero, all: BitSet::full(cone.facets().len()) }
    }

    pub(crate) fn in_span(&self) -> bool {
        self.in_span
    }

    /// `x ∈ A(F, C)`.
    pub(crate) fn in_angle(&self, f: &Face) -> bool {
        self.in_span && f.active().is_subset(&self.nonneg)
    }

    /// `x ∈ relint A(F, C)`.
    pub(crate) fn in_relint_angle(&self, f: &Face) -> bool {
        self.in_span && f.active().intersection(&self.zero).is_empty() && f.active().is_subset(&self.nonneg)
    }

    /// `x ∈ A(G, F)` for faces `G ⊆ F`.
    pub(crate) fn in_sub_angle(&self, g: &Face, f: &Face) -> bool {
        self.in_span && f.active().is_subset(&self.zero) && g.active().is_subset(&self.nonneg)
    }

    /// `x ∈ C`.
    pub(crate) fn in_cone(&self) -> bool {
        self.in_span && self.nonneg == self.all
    }

    /// `x ∈ F`.
    pub(crate) fn in_face(&self, f: &Face) -> bool {
        self.in_cone() && f.active().is_subset(&self.zero)
    }

    /// `x ∈ relint F`.
    pub(crate) fn in_relint_face(&self, f: &Face) -> bool {
        self.in_cone() && *f.active() == self.zero
    }
}

/// Signs of `<r, u>` over the extreme rays of a cone, plus whether `u` is
/// orthogonal to the lineality space.
pub(crate) struct RaySigns {
    perp: bool,
    nonneg: BitSet,
    zero: BitSet,
    all: BitSet,
}

impl RaySigns {
    pub(crate) fn new(cone: &Cone, u: &QVector) -> Self {
        let u = Scaled::new(u);
        let perp = cone.lineality().rows().iter().all(|l| l.inner_sign(&u) == Ordering::Equal);
        let mut nonneg = BitSet::new();
        let mut zero = BitSet::new();
        for (i, r) in cone.rays().iter().enumerate() {
            match r.inner_sign(&u) {
                Ordering::Equal => {
                    zero.insert(i);
                    nonneg.insert(i);
                }
                Ordering::Greater => nonneg.insert(i),
                Ordering::Less => {}
            }
        }
        RaySigns { perp, nonneg, zero, all: BitSet::full(cone.rays().len()) }
    }

    /// `u ∈ F*`.
    pub(crate) fn in_face_dual(&self, f: &Face) -> bool {
        self.perp && f.rays().is_subset(&self.nonneg)
    }

    /// `u ∈ relint F*`.
    pub(crate) fn in_relint_face_dual(&self, f: &Face) -> bool {
        self.perp && f.rays().is_subset(&self.nonneg) && f.rays().intersection(&self.zero).is_empty()
    }

    /// `u ∈ C*`.
    pub(crate) fn in_dual(&self) -> bool {
        self.perp && self.nonneg == self.all
    }

    /// `u ∈ A(F, C)*`, the face of `C*` orthogonal to `F`.
    pub(crate) fn in_angle_dual(&self, f: &Face) -> bool {
        self.in_dual() && f.rays().is_subset(&self.zero)
    }

    /// `u ∈ relint A(F, C)*`.
    pub(crate) fn in_relint_angle_dual(&self, f: &Face) -> bool {
        self.in_dual() && *f.rays() == self.zero
    }
}
