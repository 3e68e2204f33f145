use alloc::vec;
use alloc::vec::Vec;

use super::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn v(c: &[i64]) -> QVector {
    QVector::from_ints(c)
}

fn qv(c: &[(i64, i64)]) -> QVector {
    QVector::new(c.iter().map(|&(n, d)| q(n, d)).collect())
}

fn wedge() -> Cone {
    Cone::from_vrep(2, &[v(&[1, 0]), v(&[1, 1])], &[]).unwrap()
}

fn sample_cones() -> Vec<Cone> {
    vec![
        Cone::zero(2),
        Cone::whole_space(2),
        Cone::subspace(2, &[v(&[1, 1])]).unwrap(),
        Cone::from_vrep(2, &[v(&[1, 0])], &[]).unwrap(),
        Cone::from_hrep(2, &[v(&[1, 0])]).unwrap(),
        wedge(),
        Cone::from_vrep(2, &[v(&[1, 0]), v(&[-2, 3])], &[]).unwrap(),
        Cone::from_vrep(3, &[v(&[1, 0, 1]), v(&[0, 1, 1]), v(&[-1, 0, 1]), v(&[0, -1, 1])], &[]).unwrap(),
        Cone::from_vrep(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])], &[v(&[0, 0, 1])]).unwrap(),
        Cone::from_vrep(3, &[v(&[1, 2, 0]), v(&[2, -1, 1])], &[]).unwrap(),
    ]
}

fn points(dim: usize) -> Vec<QVector> {
    let vals = [q(-3, 2), q(-1, 1), q(0, 1), q(1, 2), q(1, 1), q(2, 1)];
    let mut pts = vec![QVector::zeros(0)];
    for _ in 0..dim {
        let mut next = Vec::new();
        for p in &pts {
            for c in &vals {
                let mut coords = p.coords().to_vec();
                coords.push(c.clone());
                next.push(QVector::new(coords));
            }
        }
        pts = next;
    }
    pts
}

#[test]
fn point_cone() {
    let z = Cone::zero(2);
    assert_eq!(gamma_point(&z, &v(&[0, 0]), &v(&[5, -3])).unwrap(), Rational::one());
    assert_eq!(gamma_point(&z, &v(&[1, 0]), &v(&[5, -3])).unwrap(), Rational::zero());
}

#[test]
fn wedge_examples() {
    let c = wedge();
    assert_eq!(gamma_point(&c, &qv(&[(1, 1), (1, 2)]), &qv(&[(-1, 1), (-1, 2)])).unwrap(), Rational::one());
    assert_eq!(gamma_point(&c, &v(&[3, 0]), &v(&[1, -1])).unwrap(), Rational::zero());
    let y = v(&[2, 1]);
    assert_eq!(gamma_y_eval(&c, &y, &qv(&[(1, 1), (1, 2)])).unwrap(), Rational::one());
    assert_eq!(gamma_y_eval(&c, &y, &v(&[3, 0])).unwrap(), Rational::zero());
}

#[test]
fn fast_path_matches_reference() {
    for c in sample_cones() {
        let pts = points(c.dim());
        for (i, x) in pts.iter().enumerate().step_by(3) {
            let y = &pts[(i * 7 + 5) % pts.len()];
            assert_eq!(gamma_point(&c, x, y).unwrap(), gamma_point_reference(&c, x, y).unwrap(), "{c:?} {x:?} {y:?}");
        }
    }
}

#[test]
fn y_zero() {
    for c in sample_cones() {
        let y = QVector::zeros(c.dim());
        let at0 = gamma_y_eval(&c, &y, &y).unwrap();
        let expect = if c.is_subspace() { c.sign() } else { Rational::zero() };
        assert_eq!(at0, expect, "{c:?}");
        for x in points(c.dim()).iter().filter(|x| !x.is_zero()) {
            assert!(gamma_y_eval(&c, &y, x).unwrap().is_zero());
        }
    }
}

#[test]
fn gamma_prime_ray() {
    // [relint C] = [C] - [{0}] for C = ray(e1) in dim 1
    let c = Cone::from_vrep(1, &[v(&[1])], &[]).unwrap();
    let y = v(&[3]);
    for x in [v(&[1]), v(&[0]), v(&[3]), qv(&[(5, 2)]), v(&[-1])] {
        let direct = gamma_y_eval(&c, &y, &x).unwrap() - gamma_y_eval(&Cone::zero(1), &y, &x).unwrap();
        let expect = &c.sign() * &direct;
        assert_eq!(gamma_prime_y_eval(&c, &y, &x).unwrap(), expect);
    }
    assert_eq!(gamma_prime_y_eval(&c, &y, &v(&[1])).unwrap(), -Rational::one());
}

#[test]
fn reciprocity_samples() {
    for c in sample_cones() {
        let pts = points(c.dim());
        for (i, x) in pts.iter().enumerate().step_by(5) {
            let y = &pts[(i * 11 + 3) % pts.len()];
            assert_eq!(reciprocity_lhs(&c, y, x).unwrap(), reciprocity_rhs(&c, y, x).unwrap(), "{c:?} {x:?} {y:?}");
        }
    }
}

#[test]
fn cut_identity_samples() {
    let c = Cone::from_vrep(2, &[v(&[1, 0]), v(&[-2, 3])], &[]).unwrap();
    let sum = ConicSum::cut_expansion(&c, &v(&[1, -1])).unwrap();
    let y = qv(&[(1, 4), (3, 4)]);
    for x in points(2) {
        assert_eq!(gamma_y_on_conic(&sum, &y, &x).unwrap(), gamma_y_eval(&c, &y, &x).unwrap());
        assert_eq!(gamma_prime_y_on_conic(&sum, &y, &x).unwrap(), gamma_prime_y_eval(&c, &y, &x).unwrap());
        let formal = sum.to_formal();
        assert_eq!(gamma_y_on_sum(&formal, &y, &x).unwrap(), gamma_y_eval(&c, &y, &x).unwrap());
    }
}

#[test]
fn bgs_samples() {
    let quadrant = Cone::from_vrep(2, &[v(&[1, 0]), v(&[0, 1])], &[]).unwrap();
    let vals = bgs_values(&quadrant, quadrant.minimal_face(), &v(&[-1, -1])).unwrap();
    assert_eq!(vals[0].lhs, Rational::one());
    for c in sample_cones() {
        for x in points(c.dim()).iter().step_by(2) {
            for f in c.face_lattice().ids() {
                assert_eq!(bgs_check(&c, f, x).unwrap(), [true; 4], "{c:?} {f:?} {x:?}");
            }
        }
    }
}

#[test]
fn lang_samples() {
    let quadrant = Cone::from_vrep(2, &[v(&[1, 0]), v(&[0, 1])], &[]).unwrap();
    for x in [v(&[1, 1]), v(&[0, 0])] {
        let vals = lang_values(&quadrant, &x).unwrap();
        assert!(vals.iter().all(|v| v.lhs.is_zero() && v.holds()));
    }
    let sub = Cone::subspace(3, &[v(&[1, 0, 1])]).unwrap();
    assert_eq!(lang_identities_check(&sub, &QVector::zeros(3)).unwrap(), [true; 4]);
    for c in sample_cones() {
        for x in points(c.dim()) {
            assert_eq!(lang_identities_check(&c, &x).unwrap(), [true; 4], "{c:?} {x:?}");
        }
    }
}

#[test]
fn mutations_change_values() {
    let c = wedge();
    let y = v(&[2, 1]);
    let x = qv(&[(1, 1), (1, 2)]);
    assert_eq!(gamma_y_eval_with(&c, &y, &x, Mutation::NegatedSign).unwrap(), -Rational::one());
    assert_eq!(gamma_y_eval_with(&c, &y, &x, Mutation::DropCutTerm).unwrap(), Rational::one());
}
