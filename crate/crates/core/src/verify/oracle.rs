//! Brute-force face lattices and angle cones, by enumerating subsets of
//! facets.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::cone::{Cone, FaceId};
use crate::error::{Error, Result};
use crate::linalg::QVector;

/// Largest facet count accepted by the brute-force enumerators.
pub const MAX_ORACLE_FACETS: usize = 12;

/// `(active facets, dimension)` for every face, found by forcing every
/// subset of facets to be tight and closing the resulting active set.
pub fn brute_force_faces(cone: &Cone) -> Result<BTreeSet<(BitSet, usize)>> {
    let m = cone.facets().len();
    if m > MAX_ORACLE_FACETS {
        return Err(Error::Unsupported(alloc::format!("brute force needs at most {MAX_ORACLE_FACETS} facets, got {m}")));
    }
    let base = cone.hrep_normals();
    let mut faces = BTreeSet::new();
    for mask in 0u32..1 << m {
        let mut normals = base.clone();
        for i in (0..m).filter(|i| mask >> i & 1 == 1) {
            normals.push(cone.facets()[i].normal().neg());
        }
        let piece = Cone::from_hrep(cone.dim(), &normals)?;
        let active: BitSet = (0..m)
            .filter(|&i| {
                let a = cone.facets()[i].normal();
                piece.rays().iter().chain(piece.lineality().rows()).all(|g| a.inner(g).is_zero())
            })
            .collect();
        faces.insert((active, piece.linear_dim()));
    }
    Ok(faces)
}

/// Whether the production face lattice equals the brute-force one,
/// including the containment order.
pub fn lattice_matches_brute_force(cone: &Cone) -> Result<bool> {
    let brute = brute_force_faces(cone)?;
    let lattice = cone.face_lattice();
    let produced: BTreeSet<(BitSet, usize)> = lattice.faces().iter().map(|f| (f.active().clone(), f.dim())).collect();
    if produced.len() != lattice.len() || produced != brute {
        return Ok(false);
    }
    for a in lattice.ids() {
        for b in lattice.ids() {
            let by_sets = lattice.face(b).active().is_subset(lattice.face(a).active());
            if lattice.is_subface(a, b) != by_sets {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `A(F, C)` from the equalities of `C` and the facets tight at a
/// relative-interior point of `F`.
pub fn brute_force_angle_cone(cone: &Cone, f: FaceId) -> Result<Cone> {
    let z = cone.face_cone(f)?.relint_point();
    let mut normals: Vec<QVector> = cone.equalities().rows().iter().flat_map(|e| [e.clone(), e.neg()]).collect();
    normals.extend(cone.facets().iter().filter(|h| h.normal().inner(&z).is_zero()).map(|h| h.normal().clone()));
    if normals.is_empty() {
        return Ok(Cone::whole_space(cone.dim()));
    }
    Cone::from_hrep(cone.dim(), &normals)
}
