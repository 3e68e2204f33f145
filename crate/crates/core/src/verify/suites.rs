//! Per-suite trial bodies: which instances to build for one cone.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{support_cells, support_domain, MAX_REGION_DIM};
use crate::cone::{Cone, FaceId};
use crate::error::Result;
use crate::linalg::QVector;
use crate::rational::Rational;

use super::checks::{angle_definition, angle_interior, closed_form_target, CutCase};
use super::generate::{
    combination, point_in_cone, point_in_dual, point_in_relint_dual, point_in_relint_face, probe_point, sample_point, small_rational,
    GeneratorMode,
};
use super::{Check, Instance, Recorder, MAX_EXHAUSTIVE_FACETS};

pub(crate) const DEFAULT_MODES: [GeneratorMode; 6] = [
    GeneratorMode::RandomRays,
    GeneratorMode::RandomRays,
    GeneratorMode::RandomHalfspaces,
    GeneratorMode::PointedFull,
    GeneratorMode::WithLineality,
    GeneratorMode::Subspace,
];

const POINTED_FULL: [GeneratorMode; 1] = [GeneratorMode::PointedFull];

type TrialFn = fn(&mut Recorder, &mut ChaCha8Rng, &Cone) -> Result<()>;
type Entry = (Option<(usize, usize)>, Option<&'static [GeneratorMode]>, TrialFn);

pub(crate) struct Suite {
    /// Forced dimension range.
    pub(crate) dims: Option<(usize, usize)>,
    /// Forced generator modes.
    pub(crate) modes: Option<&'static [GeneratorMode]>,
    /// Mixed into the point seeds so suites sample independently.
    pub(crate) salt: u64,
    pub(crate) run: TrialFn,
}

pub(crate) fn lookup(name: &str) -> Option<Suite> {
    let (dims, modes, run): Entry = match name {
        "euler" => (None, None, euler),
        "iep" => (None, None, iep),
        "bgs" => (None, None, bgs),
        "wellknown" => (None, None, wellknown),
        "dual-valuation" => (None, None, dual_valuation),
        "gameazy" => (None, None, gameazy),
        "xyvanish" => (None, Some(&POINTED_FULL), xyvanish),
        "gambound" => (None, None, gambound),
        "main-cut" => (None, None, main_cut),
        "closed-form-2d" => (Some((2, 2)), Some(&POINTED_FULL), closed_form_2d),
        "reciprocity" => (None, None, reciprocity),
        "prime-cut" => (None, None, prime_cut),
        "lang" => (None, None, lang),
        "angle-definition" => (None, None, angle_definition_suite),
        "lattice-oracle" => (None, None, lattice_oracle),
        _ => return None,
    };
    let salt = name.bytes().fold(0u64, |h, b| h.rotate_left(7) ^ u64::from(b));
    Some(Suite { dims, modes, salt, run })
}

fn inst(check: Check, cone: &Cone, vectors: Vec<QVector>, face: Option<FaceId>) -> Instance {
    Instance { check, cone: cone.clone(), vectors, face }
}

fn points(rec: &Recorder) -> usize {
    rec.options.points
}

fn random_normal(rng: &mut ChaCha8Rng, d: usize) -> QVector {
    loop {
        let v = QVector::new((0..d).map(|_| Rational::integer(rng.gen_range(-3..=3))).collect());
        if !v.is_zero() {
            return v;
        }
    }
}

/// A hyperplane normal: often one that really splits the cone.
fn cut_normal(rng: &mut ChaCha8Rng, cone: &Cone) -> QVector {
    let d = cone.dim();
    if rng.gen_bool(0.5) {
        // orthogonal to a point of the cone's relative interior
        let z = point_in_relint_face(rng, cone, cone.face_lattice().top());
        for _ in 0..8 {
            let n = random_normal(rng, d);
            let shifted = n.sub(&z.scale(&(&n.inner(&z) / &z.norm_sq().max(Rational::one()))));
            let prim = shifted.primitive();
            if !prim.is_zero() && prim.iter().all(|c| c.abs() <= Rational::integer(8)) {
                return prim;
            }
        }
    }
    random_normal(rng, d)
}

/// A point near the support of `Γ_y`: inside the box around `y/2`.
fn near_ball(rng: &mut ChaCha8Rng, y: &QVector) -> QVector {
    let half = Rational::new(1, 2);
    let radius: Rational = y.iter().map(Rational::abs).sum::<Rational>() * half.clone() + Rational::new(1, 4);
    let c = y.scale(&half);
    QVector::new(
        (0..y.dim())
            .map(|i| {
                let t = Rational::new(rng.gen_range(-16..=16), 16);
                &c[i] + &(&t * &radius)
            })
            .collect(),
    )
}

fn euler(rec: &mut Recorder, _: &mut ChaCha8Rng, cone: &Cone) -> Result<()> {
    rec.run(inst(Check::Euler, cone, vec![], None))?;
    rec.run(inst(Check::SingletonLattice, cone, vec![], None))
}

fn iep(rec: &mut Recorder, rng: &mut ChaCha8Rng, cone: &Cone) -> Result<()> {
    let n = cut_normal(rng, cone);
    rec.run(inst(Check::IepEuler, cone, vec![n.clone()], None))?;
    let hyper = cone.intersect_hrep(&[n.clone(), n.neg()])?;
    for i in 0..points(rec) {
        let x = if i % 3 == 0 { point_in_cone(rng, &hyper) } else { probe_point(rng, cone) };
        rec.run(inst(Check::IepIndicator, cone, vec![n.clone(), x], None))?;
    }
    Ok(())
}

fn bgs(rec: &mut Recorder, rng: &mut ChaCha8Rng, cone: &Cone) -> Result<()> {
    let faces: Vec<FaceId> = cone.face_lattice().ids().collect();
    for i in 0..points(rec) {
        let x = probe_point(rng, cone);
        let x = if i % 4 == 3 { x.neg() } else { x };
        for k in [0u8, 1, 3] {
            rec.run(inst(Check::Bgs(k), cone, vec![x.clone()], None))?;
        }
        for &f in &faces {
            rec.run(inst(Check::Bgs(2), cone, vec![x.clone()], Some(f)))?;
        }
    }
    Ok(())
}

fn wellknown(rec: &mut Recorder, _: &mut ChaCha8Rng, cone: &Cone) -> Result<()> {
    rec.run(inst(Check::Wellknown(1), cone, vec![], None))?;
    rec.run(inst(Check::Wellknown(2), cone, vec![], None))?;
    if cone.facets().len() > MAX_EXHAUSTIVE_FACETS {
        rec.record(inst(Check::Wellknown(3), cone, vec![], Some(cone.minimal_face())), None);
        return Ok(());
    }
    for f in cone.face_lattice().ids() {
        rec.run(inst(Check::Wellknown(3), cone, vec![], Some(f)))?;
        rec.run(inst(Check::Wellknown(4), cone, vec![], Some(f)))?;
    }
    Ok(())
}

fn dual_valuation(rec: &mut Recorder, rng: &mut ChaCha8Rng, cone: &Cone) -> Result<()> {
    let n = cut_normal(rng, cone);
    let dual = cone.dual();
    for _ in 0..points(rec) {
        let x = probe_point(rng, &dual);
        rec.run(inst(Check::DualValuation, cone, vec![n.clone(), x], None))?;
    }
    Ok(())
}

fn gameazy(rec: &mut Recorder, rng: &mut ChaCha8Rng, cone: &Cone) -> Result<()> {
    let d = cone.dim();
    let top = cone.face_lattice().top();
    for i in 0..points(rec) {
        let (x1, y1) = if i % 2 == 0 {
            (probe_point(rng, cone), point_in_dual(rng, cone))
        } else {
            (point_in_relint_face(rng, cone, top).neg(), probe_point(rng, cone))
        };
        rec.run(inst(Check::GamEazy(1), cone, vec![x1, y1], None))?;
        let (x2, y2) = if i % 2 == 0 {
            (probe_point(rng, cone), point_in_relint_dual(rng, cone).neg())
        } else {
            (point_in_cone(rng, cone), probe_point(rng, cone))
        };
        rec.run(inst(Check::GamEazy(2), cone, vec![x2, y2], None))?;
        let (x3, y3) = (probe_point(rng, cone), probe_point(rng, &cone.dual()));
        rec.run(inst(Check::GamEazy(3), cone, vec![x3, y3], None))?;
        let (x4, y4) = (sample_point(rng, d, 8), sample_point(rng, d, 8));
        rec.run(inst(Check::GamEazy(4), cone, vec![x4, y4], None))?;
    }
    Ok(())
}

/// Whether `v` avoids every `V_F` and `V_F^⊥` for the proper nonzero faces.
fn general_position(cone: &Cone, v: &QVector) -> bool {
    let lat = cone.face_lattice();
    lat.faces().iter().filter(|f| f.dim() > 0 && f.dim() < cone.dim()).all(|f| {
        let basis = f.span_basis();
        !basis.spans(v) && !basis.rows().iter().all(|b| b.inner(v).is_zero())
    })
}

fn general_point(rng: &mut ChaCha8Rng, cone: &Cone) -> QVector {
    let mut x = sample_point(rng, cone.dim(), 8);
    for _ in 0..32 {
        if general_position(cone, &x) && !x.is_zero() {
            break;
        }
        x = sample_point(rng, cone.dim(), 8);
    }
    x
}

fn xyvanish(rec: &mut Recorder, rng: &mut ChaCha8Rng, cone: &Cone) -> Result<()> {
    for i in 0..points(rec) {
        let (mut x, mut y) = if i % 2 == 0 {
            (general_point(rng, cone), general_point(rng, cone))
        } else {
            (probe_point(rng, cone), probe_point(rng, &cone.dual()))
        };
        let mut s = x.inner(&y);
        for _ in 0..16 {
            if !s.is_zero() {
                break;
            }
            if x.is_zero() {
                x = general_point(rng, cone);
            }
            y = sample_point(rng, cone.dim(), 8);
            s = x.inner(&y);
        }
        if s.is_negative() {
            y = y.neg();
        }
        rec.run(inst(Check::XyVanish, cone, vec![x, y], None))?;
    }
    Ok(())
}

/// A rational point `p` with `<p, p - y> = 0`: the second intersection of
/// the line through 0 along `t` with the sphere over `[0, y]`.
fn sphere_point(t: &QVector, y: &QVector) -> QVector {
    t.scale(&(&t.inner(y) / &t.norm_sq()))
}

fn gambound(rec: &mut Recorder, rng: &mut ChaCha8Rng, cone: &Cone) -> Result<()> {
    let d = cone.dim();
    let y = if rng.gen_bool(0.5) { sample_point(rng, d, 4) } else { probe_point(rng, &cone.dual()) };
    let half = y.scale(&Rational::new(1, 2));
    let n = 4 * points(rec);
    let draw = |rng: &mut ChaCha8Rng, i: usize| match i % 4 {
        // just outside the sphere, along a random direction
        0 => {
            let t = sample_point(rng, d, 4);
            if t.is_zero() || y.is_zero() {
                t
            } else {
                let p = sphere_point(&t, &y);
                p.add_scaled(&Rational::new(1, rng.gen_range(2..=64)), &p.sub(&half))
            }
        }
        1 => probe_point(rng, cone),
        _ => sample_point(rng, d, 8),
    };
    for i in 0..n {
        let mut x = draw(rng, i);
        for _ in 0..32 {
            if x.inner(&x.sub(&y)).is_positive() {
                break;
            }
            x = draw(rng, i);
        }
        let check = if x.inner(&x.sub(&y)).is_positive() { Check::GamBound } else { Check::GammaOracle };
        rec.run(inst(check, cone, vec![y.clone(), x], None))?;
    }
    // sphere points, where the closed ball matters
    let mut sphere = vec![QVector::zeros(d), y.clone()];
    for _ in 0..points(rec) / 5 {
        let t = sample_point(rng, d, 4);
        if !t.is_zero() {
            sphere.push(sphere_point(&t, &y));
        }
    }
    for x in sphere {
        rec.run(inst(Check::GammaOracle, cone, vec![y.clone(), x], None))?;
    }
    Ok(())
}

/// Points for cut identities: one witness per arrangement cell of all
/// pieces when the dimension allows, then extra random points.
fn cut_points(rng: &mut ChaCha8Rng, case: &CutCase, y: &QVector, extra: usize) -> Result<Vec<QVector>> {
    let mut pts = Vec::new();
    if y.dim() <= MAX_REGION_DIM {
        let (_, cells) = support_cells(&case.pieces(), y)?;
        pts.extend(cells.into_iter().map(|c| c.witness));
    }
    for i in 0..extra {
        pts.push(match i % 4 {
            0 | 1 => near_ball(rng, y),
            2 => probe_point(rng, case.pieces()[1 + i / 4 % 3]),
            _ => probe_point(rng, case.cone),
        });
    }
    Ok(pts)
}

fn cut_y(rng: &mut ChaCha8Rng, cone: &Cone) -> QVector {
    match rng.gen_range(0..4) {
        0 => point_in_cone(rng, cone),
        1 => point_in_dual(rng, cone),
        _ => sample_point(rng, cone.dim(), 4),
    }
}

fn main_cut(rec: &mut Recorder, rng: &mut ChaCha8Rng, cone: &Cone) -> Result<()> {
    let n = cut_normal(rng, cone);
    let case = CutCase::new(cone, &n)?;
    let y = cut_y(rng, cone);
    for x in cut_points(rng, &case, &y, 2 * points(rec))? {
        let outcome = case.gamma(&y, &x, rec.options.mutation)?;
        rec.record(inst(Check::MainCut, cone, vec![n.clone(), y.clone(), x], None), Some(outcome));
    }
    Ok(())
}

fn prime_cut(rec: &mut Recorder, rng: &mut ChaCha8Rng, cone: &Cone) -> Result<()> {
    let n = cut_normal(rng, cone);
    let case = CutCase::new(cone, &n)?;
    let y = cut_y(rng, cone);
    for x in cut_points(rng, &case, &y, points(rec))? {
        let outcome = case.gamma_prime(&y, &x, rec.options.mutation)?;
        rec.record(inst(Check::PrimeCut, cone, vec![n.clone(), y.clone(), x], None), Some(outcome));
    }
    Ok(())
}

/// 40 x 40 grid over the box of the support domain of `y`.
fn grid(y: &QVector) -> Vec<QVector> {
    let dom = support_domain(y);
    let w = &dom.half_width;
    let mut out = Vec::with_capacity(1600);
    for i in 0..40 {
        for j in 0..40 {
            let at = |k: i64, c: &Rational| c - w + &(w * &Rational::new(2 * k + 1, 40));
            out.push(QVector::new(vec![at(i, &dom.center[0]), at(j, &dom.center[1])]));
        }
    }
    out
}

fn closed_form_2d(rec: &mut Recorder, rng: &mut ChaCha8Rng, cone: &Cone) -> Result<()> {
    let y = if cone.dim() == 2 && cone.is_nondegenerate() {
        let meet = cone.intersect(&cone.dual())?;
        combination(rng, 2, meet.rays(), &[], true)
    } else {
        sample_point(rng, cone.dim(), 4)
    };
    if closed_form_target(cone, &y)?.is_none() {
        rec.record(inst(Check::ClosedFormRegion, cone, vec![y], None), None);
        return Ok(());
    }
    rec.run(inst(Check::ClosedFormRegion, cone, vec![y.clone()], None))?;
    for x in grid(&y) {
        rec.run(inst(Check::ClosedForm2d, cone, vec![y.clone(), x], None))?;
    }
    Ok(())
}

fn reciprocity(rec: &mut Recorder, rng: &mut ChaCha8Rng, cone: &Cone) -> Result<()> {
    for i in 0..points(rec) {
        let y = cut_y(rng, cone);
        let x = if i % 2 == 0 { near_ball(rng, &y) } else { probe_point(rng, cone).neg() };
        rec.run(inst(Check::Reciprocity, cone, vec![y, x], None))?;
    }
    Ok(())
}

fn lang(rec: &mut Recorder, rng: &mut ChaCha8Rng, cone: &Cone) -> Result<()> {
    let mut xs = vec![QVector::zeros(cone.dim())];
    xs.extend((0..points(rec)).map(|_| probe_point(rng, cone)));
    for x in xs {
        for k in 0..4 {
            rec.run(inst(Check::Lang(k), cone, vec![x.clone()], None))?;
        }
    }
    Ok(())
}

fn angle_definition_suite(rec: &mut Recorder, rng: &mut ChaCha8Rng, cone: &Cone) -> Result<()> {
    let per_face = points(rec);
    for f in cone.face_lattice().ids() {
        rec.run(inst(Check::AngleBruteForce, cone, vec![], Some(f)))?;
        let angle = cone.angle_cone(f)?;
        let z = cone.face_cone(f)?.relint_point();
        for _ in 0..per_face {
            let x = point_in_cone(rng, cone);
            let a = QVector::new(vec![small_rational(rng, 8).abs() + Rational::new(1, 8)]);
            let outcome = angle_definition(cone, &angle, &z, &x, &a[0])?;
            rec.record(inst(Check::AngleDefinition, cone, vec![x, a], Some(f)), outcome);
            let q = point_in_cone(rng, &angle);
            let outcome = angle_interior(cone, &angle, &z, &q)?;
            rec.record(inst(Check::AngleInterior, cone, vec![q], Some(f)), outcome);
        }
    }
    Ok(())
}

fn lattice_oracle(rec: &mut Recorder, _: &mut ChaCha8Rng, cone: &Cone) -> Result<()> {
    rec.run(inst(Check::LatticeOracle, cone, vec![], None))?;
    for f in cone.face_lattice().ids() {
        rec.run(inst(Check::AngleBruteForce, cone, vec![], Some(f)))?;
    }
    Ok(())
}
