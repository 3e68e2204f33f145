use coneval_core::arrangement::{gamma_cells, support_domain};
use coneval_core::gamma::{gamma_point, gamma_y_eval};
use coneval_core::indicator::{indicator, relint_indicator};
use coneval_core::linalg::{orthogonal_complement_basis, project_onto_span, rank};
use coneval_core::{Cone, FormalSum, QMatrix, QVector, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn canonical(r: &Rational) -> bool {
    let (n, d) = (r.numer(), r.denom());
    d > BigInt::from(0) && n.gcd(&d) == BigInt::from(1)
}

fn rational(bound: i64) -> impl Strategy<Value = Rational> {
    (-bound..=bound, 1..=bound).prop_map(|(n, d)| Rational::new(n, d))
}

fn wide_rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1..i64::MAX).prop_map(|(n, d)| Rational::new(n.max(-i64::MAX), d))
}

fn point(dim: usize) -> impl Strategy<Value = QVector> {
    prop::collection::vec(rational(6), dim).prop_map(QVector::new)
}

fn int_vector(dim: usize) -> impl Strategy<Value = QVector> {
    prop::collection::vec(-3i64..=3, dim)
        .prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
        .prop_map(|v| QVector::from_ints(&v))
}

/// Cones of dimension 1..=3 from random rays, lineality and halfspaces.
fn cone() -> impl Strategy<Value = Cone> {
    (1usize..=3).prop_flat_map(|d| {
        (
            prop::collection::vec(int_vector(d), 0..=d + 2),
            prop::collection::vec(int_vector(d), 0..=1),
            any::<bool>(),
        )
            .prop_map(move |(gens, lin, by_hrep)| {
                if by_hrep {
                    Cone::from_hrep(d, &gens).unwrap()
                } else {
                    Cone::from_vrep(d, &gens, &lin).unwrap()
                }
            })
    })
}

fn cone_with_points(n: usize) -> impl Strategy<Value = (Cone, Vec<QVector>)> {
    cone().prop_flat_map(move |c| {
        let d = c.dim();
        (Just(c), prop::collection::vec(point(d), n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rational_results_are_canonical(a in wide_rational(), b in wide_rational(), c in rational(50)) {
        for r in [&a + &b, &a - &b, &a * &b, &a * &c + &b, -&a] {
            prop_assert!(canonical(&r));
        }
        if !b.is_zero() {
            prop_assert!(canonical(&(&a / &b)));
            prop_assert_eq!(&(&a * &b) / &b, a.clone());
        }
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn projection_is_orthogonal_and_idempotent(rows in prop::collection::vec(point(4), 0..4), x in point(4)) {
        let b = QMatrix::new(4, rows).unwrap();
        let p = project_onto_span(&b, &x).unwrap();
        let r = x.sub(&p);
        for row in b.rows() {
            prop_assert!(row.inner(&r).is_zero());
        }
        prop_assert_eq!(project_onto_span(&b, &p).unwrap(), p);
        prop_assert_eq!(rank(&b) + rank(&orthogonal_complement_basis(&b)), 4);
    }

    #[test]
    fn representations_round_trip(c in cone()) {
        prop_assert!(c.representations_agree());
        let via_vrep = Cone::from_vrep(c.dim(), c.rays(), c.lineality().rows()).unwrap();
        prop_assert_eq!(&via_vrep, &c);
        let normals: Vec<QVector> = c.hrep().iter().map(|h| h.normal().clone()).collect();
        prop_assert_eq!(&Cone::from_hrep(c.dim(), &normals).unwrap(), &c);
        prop_assert_eq!(&c.dual().dual(), &c);
    }

    #[test]
    fn euler_relation(c in cone()) {
        prop_assert_eq!(c.face_lattice().euler_sum(), i64::from(c.is_subspace()));
    }

    #[test]
    fn pointed_part_splits_off_lineality(c in cone()) {
        let p = c.pointed_part();
        prop_assert!(p.is_pointed());
        prop_assert_eq!(&c.minimal_face_cone().minkowski_sum(&p).unwrap(), &c);
    }

    #[test]
    fn face_expansions((c, xs) in cone_with_points(12)) {
        let d = c.dim();
        let mut partition = FormalSum::zero(d);
        let mut interior = FormalSum::zero(d);
        let top = c.face(c.face_lattice().top()).unwrap().dim();
        for f in c.face_lattice().ids() {
            let face = c.face_cone(f).unwrap();
            partition = partition.add(&relint_indicator(&face)).unwrap();
            let s = Rational::sign_power(top - face.linear_dim());
            interior = interior.add(&indicator(&face).scale(&s)).unwrap();
        }
        for x in xs.iter().chain([&QVector::zeros(d), &c.relint_point()]) {
            prop_assert_eq!(partition.evaluate(x).unwrap(), indicator(&c).evaluate(x).unwrap());
            prop_assert_eq!(interior.evaluate(x).unwrap(), relint_indicator(&c).evaluate(x).unwrap());
        }
    }

    #[test]
    fn evaluate_is_linear((c, xs) in cone_with_points(6), a in rational(5), b in rational(5)) {
        let s1 = indicator(&c);
        let s2 = relint_indicator(&c.dual());
        let combo = s1.scale(&a).add(&s2.scale(&b)).unwrap();
        for x in &xs {
            let expect = &a * &s1.evaluate(x).unwrap() + &b * &s2.evaluate(x).unwrap();
            prop_assert_eq!(combo.evaluate(x).unwrap(), expect);
        }
    }

    #[test]
    fn gamma_vanishes_off_span((c, xs) in cone_with_points(8)) {
        for pair in xs.chunks(2) {
            let (x, y) = (&pair[0], &pair[1]);
            let off_span = !c.span_contains(x).unwrap();
            let off_perp = c.minimal_face_cone().span_basis().rows().iter().any(|l| !l.inner(y).is_zero());
            if off_span || off_perp {
                prop_assert!(gamma_point(&c, x, y).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn gamma_vanishes_outside_ball((c, xs) in cone_with_points(10)) {
        let y = &xs[0];
        for x in &xs[1..] {
            let half = y.scale(&Rational::new(1, 2));
            if x.sub(&half).norm_sq() > &y.norm_sq() * &Rational::new(1, 4) {
                prop_assert!(gamma_y_eval(&c, y, x).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn cut_identity((c, xs) in cone_with_points(10), n in int_vector(3)) {
        let d = c.dim();
        let n = QVector::new(n.coords()[..d].to_vec());
        prop_assume!(!n.is_zero());
        let (plus, minus, hyper) = c.cut(&n).unwrap();
        let y = &xs[0];
        for x in &xs[1..] {
            let lhs = gamma_y_eval(&c, y, x).unwrap();
            let rhs = gamma_y_eval(&plus, y, x).unwrap() + gamma_y_eval(&minus, y, x).unwrap()
                - gamma_y_eval(&hyper, y, x).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cells_match_pointwise_evaluation(
        rays in prop::collection::vec(int_vector(2), 1..=3),
        y in point(2),
        probes in prop::collection::vec((0u32..=64, 0u32..=64), 16),
    ) {
        let c = Cone::from_vrep(2, &rays, &[]).unwrap();
        let dec = gamma_cells(&c, &y).unwrap();
        for cell in &dec.cells {
            prop_assert!(cell.conditions.contains(&cell.witness));
            prop_assert_eq!(&cell.value, &gamma_y_eval(&c, &y, &cell.witness).unwrap());
        }
        let dom = support_domain(&y);
        for (i, j) in probes {
            let at = |k: u32, c: &Rational| c - &dom.half_width + &dom.half_width * &Rational::new(i64::from(k), 32);
            let x = QVector::new(vec![at(i, &dom.center[0]), at(j, &dom.center[1])]);
            if !dom.contains(&x) {
                prop_assert!(gamma_y_eval(&c, &y, &x).unwrap().is_zero());
                continue;
            }
            let covering = dec.cells.iter().filter(|cell| cell.conditions.contains(&x)).count();
            prop_assert_eq!(covering, 1);
            prop_assert_eq!(dec.evaluate(&x), gamma_y_eval(&c, &y, &x).unwrap());
        }
    }
}
