use alloc::vec;
use alloc::vec::Vec;

use super::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn v(c: &[i64]) -> QVector {
    QVector::from_ints(c)
}

fn cond(n: &[i64], off: Rational, rel: Relation) -> AffineCondition {
    AffineCondition::new(v(n), off, rel)
}

fn quadrant() -> Cone {
    Cone::from_vrep(2, &[v(&[1, 0]), v(&[0, 1])], &[]).unwrap()
}

fn grid(dim: usize) -> Vec<QVector> {
    let vals: Vec<Rational> = (-4..=4).map(|n| q(n, 2)).collect();
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
fn indicator_cells() {
    let c = indicator_cell(&quadrant());
    assert_eq!(c.conditions().len(), 2);
    assert!(c.conditions().iter().all(|a| a.relation() == Relation::Ge));
    let z = indicator_cell(&Cone::zero(2));
    assert!(z.conditions().iter().all(|a| a.relation() == Relation::Eq));
    assert!(z.contains(&v(&[0, 0])) && !z.contains(&v(&[0, 1])));
}

#[test]
fn relint_cells() {
    let r = relint_indicator(&quadrant());
    assert_eq!(r.evaluate(&v(&[1, 1])).unwrap(), Rational::one());
    assert_eq!(r.evaluate(&v(&[1, 0])).unwrap(), Rational::zero());
    let line = Cone::subspace(2, &[v(&[1, 0])]).unwrap();
    let l = relint_cell(&line);
    assert_eq!(l.conditions().len(), 1);
    assert_eq!(l.conditions()[0].relation(), Relation::Eq);
    let ray = Cone::from_vrep(2, &[v(&[1, 0])], &[]).unwrap();
    let rr = relint_indicator(&ray);
    assert_eq!(rr.evaluate(&v(&[0, 0])).unwrap(), Rational::zero());
    assert_eq!(rr.evaluate(&v(&[3, 0])).unwrap(), Rational::one());
}

#[test]
fn evaluation_matches_membership() {
    let c = Cone::from_vrep(2, &[v(&[1, 0]), v(&[1, 1])], &[]).unwrap();
    let s = indicator(&c);
    let r = relint_indicator(&c);
    for p in grid(2) {
        assert_eq!(s.evaluate(&p).unwrap().is_positive(), c.contains(&p).unwrap());
        assert_eq!(r.evaluate(&p).unwrap().is_positive(), c.relint_contains(&p).unwrap());
    }
}

#[test]
fn cut_sum_is_one_on_cone() {
    let c = quadrant();
    let s = ConicSum::cut_expansion(&c, &v(&[1, -1])).unwrap().to_formal();
    for p in grid(2) {
        let expect = if c.contains(&p).unwrap() { Rational::one() } else { Rational::zero() };
        assert_eq!(s.evaluate(&p).unwrap(), expect);
    }
    assert_eq!(s.euler_char().unwrap(), Rational::one());
}

#[test]
fn arithmetic_and_translation() {
    let s = indicator(&quadrant());
    let t = v(&[1, 1]);
    let moved = s.translate(&t).unwrap();
    assert_eq!(moved.evaluate(&v(&[1, 1])).unwrap(), Rational::one());
    assert_eq!(moved.evaluate(&v(&[0, 0])).unwrap(), Rational::zero());
    let back = moved.translate(&t.neg()).unwrap();
    let diff = s.add(&s.scale(&-Rational::one())).unwrap();
    for p in grid(2) {
        assert_eq!(back.evaluate(&p).unwrap(), s.evaluate(&p).unwrap());
        assert!(diff.evaluate(&p).unwrap().is_zero());
    }
}

#[test]
fn products() {
    let hp = indicator(&Cone::from_hrep(2, &[v(&[1, 0])]).unwrap());
    let hm = indicator(&Cone::from_hrep(2, &[v(&[-1, 0])]).unwrap());
    let prod = hp.product(&hm).unwrap();
    for p in grid(2) {
        let on = p[0].is_zero();
        assert_eq!(prod.evaluate(&p).unwrap().is_positive(), on);
    }
    let empty = hp.product(&FormalSum::zero(2)).unwrap();
    assert!(empty.terms().is_empty());
}

#[test]
fn feasibility_examples() {
    let a = GeneralizedPolyhedron::new(
        1,
        vec![cond(&[1], Rational::zero(), Relation::Gt), cond(&[-1], Rational::zero(), Relation::Gt)],
    )
    .unwrap();
    assert!(!a.is_feasible());
    assert!(a.witness().is_none());
    let b = GeneralizedPolyhedron::new(
        1,
        vec![cond(&[1], Rational::zero(), Relation::Ge), cond(&[1], Rational::zero(), Relation::Eq)],
    )
    .unwrap();
    assert!(b.is_feasible());
    // v1 > 0, v2 > 0, v1 + v2 < 1
    let c = GeneralizedPolyhedron::new(
        2,
        vec![
            cond(&[1, 0], Rational::zero(), Relation::Gt),
            cond(&[0, 1], Rational::zero(), Relation::Gt),
            cond(&[-1, -1], -Rational::one(), Relation::Gt),
        ],
    )
    .unwrap();
    assert!(c.is_feasible());
    assert!(c.contains(&QVector::new(vec![q(1, 4), q(1, 4)])));
    let w = c.witness().expect("feasible");
    assert!(c.contains(&w));
}

#[test]
fn zero_normal_simplification() {
    let t = GeneralizedPolyhedron::new(2, vec![cond(&[0, 0], -Rational::one(), Relation::Gt)]).unwrap();
    assert!(t.conditions().is_empty());
    let f = GeneralizedPolyhedron::new(2, vec![cond(&[0, 0], Rational::zero(), Relation::Gt)]).unwrap();
    assert!(!f.is_feasible());
    assert!(!f.contains(&v(&[0, 0])));
}

#[test]
fn fm_and_lp_agree() {
    // every subset of a small family of strict and closed conditions
    let family = [
        cond(&[1, 0], Rational::zero(), Relation::Gt),
        cond(&[-1, 0], Rational::zero(), Relation::Ge),
        cond(&[0, 1], q(1, 2), Relation::Ge),
        cond(&[1, 1], Rational::one(), Relation::Eq),
        cond(&[-1, -1], -Rational::integer(2), Relation::Gt),
        cond(&[1, -1], Rational::zero(), Relation::Gt),
        cond(&[0, -1], -Rational::integer(3), Relation::Ge),
    ];
    for mask in 0u32..(1 << family.len()) {
        let conds: Vec<_> = (0..family.len()).filter(|i| mask >> i & 1 == 1).map(|i| family[i].clone()).collect();
        let p = GeneralizedPolyhedron::new(2, conds).unwrap();
        let fm = p.is_feasible();
        let w = p.witness();
        assert_eq!(fm, w.is_some(), "mask {mask:b}");
        if let Some(w) = w {
            assert!(p.contains(&w));
        }
    }
}

#[test]
fn euler_char_rules() {
    assert_eq!(indicator(&quadrant()).euler_char().unwrap(), Rational::one());
    assert_eq!(FormalSum::zero(2).euler_char().unwrap(), Rational::zero());
    assert!(relint_indicator(&quadrant()).euler_char().is_err());
}

#[test]
fn dual_map_examples() {
    let d = indicator(&quadrant()).dual_map().unwrap();
    for p in grid(2) {
        assert_eq!(d.evaluate(&p).unwrap(), indicator(&quadrant()).evaluate(&p).unwrap());
    }
    let dz = indicator(&Cone::zero(2)).dual_map().unwrap();
    for p in grid(2) {
        assert_eq!(dz.evaluate(&p).unwrap(), Rational::one());
    }
    assert!(relint_indicator(&quadrant()).dual_map().is_err());
    assert!(indicator(&quadrant()).translate(&v(&[1, 0])).unwrap().dual_map().is_err());

    let c = Cone::from_vrep(2, &[v(&[1, 0]), v(&[-1, 2])], &[]).unwrap();
    let lhs = ConicSum::cut_expansion(&c, &v(&[1, 1])).unwrap().to_formal().dual_map().unwrap();
    let rhs = indicator(&c).dual_map().unwrap();
    for p in grid(2) {
        assert_eq!(lhs.evaluate(&p).unwrap(), rhs.evaluate(&p).unwrap());
    }
}

#[test]
fn relint_expansion_and_face_partition() {
    let c = Cone::from_vrep(3, &[v(&[1, 0, 1]), v(&[0, 1, 1]), v(&[-1, 0, 1]), v(&[0, -1, 1])], &[]).unwrap();
    let exp = ConicSum::relint_expansion(&c);
    let lattice = c.face_lattice();
    let partition: Vec<GeneralizedPolyhedron> =
        lattice.ids().map(|f| relint_cell(&c.face_cone(f).unwrap())).collect();
    for p in grid(3) {
        assert_eq!(exp.evaluate(&p).unwrap().is_positive(), c.relint_contains(&p).unwrap());
        let hits = partition.iter().filter(|cell| cell.contains(&p)).count();
        assert_eq!(hits, usize::from(c.contains(&p).unwrap()));
    }
}
