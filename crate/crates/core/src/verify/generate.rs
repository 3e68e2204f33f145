//! Seeded random cones and rational points.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cone::{Cone, FaceId};
use crate::error::{Error, Result};
use crate::linalg::QVector;
use crate::rational::Rational;

/// Largest ambient dimension the generators accept.
pub const MAX_GENERATOR_DIM: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorMode {
    RandomRays,
    RandomHalfspaces,
    Subspace,
    PointedFull,
    WithLineality,
    ZeroCone,
    FullSpace,
}

impl GeneratorMode {
    pub const ALL: [GeneratorMode; 7] = [
        GeneratorMode::RandomRays,
        GeneratorMode::RandomHalfspaces,
        GeneratorMode::Subspace,
        GeneratorMode::PointedFull,
        GeneratorMode::WithLineality,
        GeneratorMode::ZeroCone,
        GeneratorMode::FullSpace,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorMode::RandomRays => "random-rays",
            GeneratorMode::RandomHalfspaces => "random-halfspaces",
            GeneratorMode::Subspace => "subspace",
            GeneratorMode::PointedFull => "pointed-full",
            GeneratorMode::WithLineality => "with-lineality",
            GeneratorMode::ZeroCone => "zero-cone",
            GeneratorMode::FullSpace => "full-space",
        }
    }

    pub fn from_name(s: &str) -> Option<GeneratorMode> {
        GeneratorMode::ALL.into_iter().find(|m| m.name() == s)
    }
}

/// What kind of cone to draw.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorProfile {
    pub dim: usize,
    pub mode: GeneratorMode,
    /// Upper bound on the number of rays or halfspaces drawn.
    pub max_generators: usize,
    /// Integer coordinates are drawn from `[-coord_bound, coord_bound]`.
    pub coord_bound: i64,
    pub seed: u64,
}

impl GeneratorProfile {
    pub fn new(dim: usize, mode: GeneratorMode, seed: u64) -> Self {
        GeneratorProfile { dim, mode, max_generators: dim + 2, coord_bound: 3, seed }
    }
}

pub(crate) fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of trial `index` under `master`: the first word of ChaCha stream
/// `index`, so trials can be generated in any order.
pub(crate) fn trial_seed(master: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng.gen()
}

fn int_vector(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> QVector {
    loop {
        let coords: Vec<i64> = (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect();
        if coords.iter().any(|&c| c != 0) {
            return QVector::from_ints(&coords);
        }
    }
}

fn int_vectors(rng: &mut ChaCha8Rng, dim: usize, bound: i64, n: usize) -> Vec<QVector> {
    (0..n).map(|_| int_vector(rng, dim, bound)).collect()
}

pub fn random_cone(profile: &GeneratorProfile) -> Result<Cone> {
    let d = profile.dim;
    if d == 0 || d > MAX_GENERATOR_DIM {
        return Err(Error::Unsupported(alloc::format!("generator dimension must be in 1..={MAX_GENERATOR_DIM}, got {d}")));
    }
    if profile.coord_bound < 1 || profile.max_generators < 1 {
        return Err(Error::Unsupported("generator bounds must be positive".into()));
    }
    let b = profile.coord_bound;
    let rng = &mut rng_from(profile.seed);
    let max_gen = profile.max_generators;
    match profile.mode {
        GeneratorMode::ZeroCone => Ok(Cone::zero(d)),
        GeneratorMode::FullSpace => Ok(Cone::whole_space(d)),
        GeneratorMode::RandomRays => {
            let k = rng.gen_range(1..=max_gen);
            Cone::from_vrep(d, &int_vectors(rng, d, b, k), &[])
        }
        GeneratorMode::RandomHalfspaces => {
            let k = rng.gen_range(1..=max_gen);
            Cone::from_hrep(d, &int_vectors(rng, d, b, k))
        }
        GeneratorMode::Subspace => {
            let k = rng.gen_range(0..=d);
            Cone::subspace(d, &int_vectors(rng, d, b, k))
        }
        GeneratorMode::WithLineality => {
            if d == 1 {
                return Ok(Cone::whole_space(1));
            }
            let j = rng.gen_range(1..d);
            let k = rng.gen_range(1..=max_gen.saturating_sub(j).max(1));
            Cone::from_vrep(d, &int_vectors(rng, d, b, k), &int_vectors(rng, d, b, j))
        }
        GeneratorMode::PointedFull => {
            let k_max = max_gen.max(d);
            for _ in 0..64 {
                // rays in the open halfspace <axis, .> > 0 keep the cone pointed
                let axis = int_vector(rng, d, b);
                let k = rng.gen_range(d..=k_max);
                let mut rays = Vec::with_capacity(k);
                while rays.len() < k {
                    let r = int_vector(rng, d, b);
                    if axis.inner(&r).is_positive() {
                        rays.push(r);
                    }
                }
                let c = Cone::from_vrep(d, &rays, &[])?;
                if c.is_nondegenerate() {
                    return Ok(c);
                }
            }
            Cone::from_vrep(d, &(0..d).map(|i| QVector::unit(d, i)).collect::<Vec<_>>(), &[])
        }
    }
}

pub(crate) fn small_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    Rational::new(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

fn positive_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    Rational::new(rng.gen_range(1..=bound), rng.gen_range(1..=bound))
}

/// Coordinates `p/q` with `|p| <= bound` and `1 <= q <= bound`.
pub fn random_point(dim: usize, bound: i64, seed: u64) -> QVector {
    sample_point(&mut rng_from(seed), dim, bound.max(1))
}

pub(crate) fn sample_point(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> QVector {
    QVector::new((0..dim).map(|_| small_rational(rng, bound)).collect())
}

/// Point of the cone generated by `rays` plus the span of `lineality`;
/// with `strict` every ray gets a positive coefficient.
pub(crate) fn combination(rng: &mut ChaCha8Rng, dim: usize, rays: &[QVector], lineality: &[QVector], strict: bool) -> QVector {
    let mut x = QVector::zeros(dim);
    for r in rays {
        let c = if strict || rng.gen_bool(0.7) { positive_rational(rng, 4) } else { Rational::zero() };
        x = x.add_scaled(&c, r);
    }
    for l in lineality {
        x = x.add_scaled(&small_rational(rng, 4), l);
    }
    x
}

pub(crate) fn point_in_relint_face(rng: &mut ChaCha8Rng, cone: &Cone, f: FaceId) -> QVector {
    let rays = cone.face_rays(f).expect("face of this cone");
    combination(rng, cone.dim(), &rays, cone.lineality().rows(), true)
}

pub(crate) fn point_in_cone(rng: &mut ChaCha8Rng, cone: &Cone) -> QVector {
    combination(rng, cone.dim(), cone.rays(), cone.lineality().rows(), false)
}

pub(crate) fn point_in_dual(rng: &mut ChaCha8Rng, cone: &Cone) -> QVector {
    let normals: Vec<QVector> = cone.facets().iter().map(|h| h.normal().clone()).collect();
    combination(rng, cone.dim(), &normals, cone.equalities().rows(), false)
}

pub(crate) fn point_in_relint_dual(rng: &mut ChaCha8Rng, cone: &Cone) -> QVector {
    let normals: Vec<QVector> = cone.facets().iter().map(|h| h.normal().clone()).collect();
    combination(rng, cone.dim(), &normals, cone.equalities().rows(), true)
}

/// A point biased towards the places where indicator sums change: faces,
/// their negatives, the dual cone, the origin, or a generic point.
pub(crate) fn probe_point(rng: &mut ChaCha8Rng, cone: &Cone) -> QVector {
    let d = cone.dim();
    let n = cone.face_lattice().len();
    let f = FaceId(rng.gen_range(0..n));
    match rng.gen_range(0..10) {
        0..=3 => sample_point(rng, d, 8),
        4 | 5 => point_in_relint_face(rng, cone, f),
        6 => point_in_relint_face(rng, cone, f).neg(),
        7 => point_in_dual(rng, cone),
        8 => point_in_dual(rng, cone).neg(),
        _ => QVector::zeros(d),
    }
}

/// The fixed degenerate cones of dimension `dim`: `{0}`, `V`, subspaces,
/// rays and halfspaces.
pub fn degenerate_catalog(dim: usize) -> Vec<Cone> {
    let e = |i: usize| QVector::unit(dim, i);
    let mut out = alloc::vec![Cone::zero(dim), Cone::whole_space(dim)];
    let ok = |c: Result<Cone>| c.expect("catalog cones are well formed");
    out.push(ok(Cone::from_vrep(dim, &[e(0)], &[])));
    out.push(ok(Cone::from_vrep(dim, &[e(0).neg()], &[])));
    out.push(ok(Cone::from_hrep(dim, &[e(0)])));
    if dim >= 2 {
        let diag = e(0).add(&e(1));
        out.push(ok(Cone::subspace(dim, core::slice::from_ref(&diag))));
        out.push(ok(Cone::subspace(dim, &(1..dim).map(e).collect::<Vec<_>>())));
        out.push(ok(Cone::from_vrep(dim, &[e(0), diag], &[])));
        out.push(ok(Cone::from_vrep(dim, &[e(0)], &[e(1)])));
    }
    if dim >= 3 {
        out.push(ok(Cone::from_vrep(dim, &[e(0), e(1)], &[e(2)])));
        out.push(ok(Cone::from_hrep(dim, &[e(0), e(1)])));
    }
    out
}
