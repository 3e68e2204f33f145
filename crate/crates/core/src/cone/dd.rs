//! Double description conversion from inequalities to generators.

use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::linalg::{integer_rank, QVector};
use crate::rational::Rational;

#[derive(Clone)]
struct Ray {
    v: QVector,
    zero: BitSet,
}

/// Generators of `{x : <a, x> >= 0 for all a in normals}`.
///
/// Returns `(lineality, rays)`: a basis of the lineality space and one
/// primitive vector per extreme ray of the cone modulo that space.
/// Constraints are inserted in lexicographic order of their primitive
/// forms; two rays are combined only when the constraints tight on both
/// have rank `dim - dim(lineality) - 2`.
pub(crate) fn double_description(dim: usize, normals: &[QVector]) -> (Vec<QVector>, Vec<QVector>) {
    let mut order: Vec<QVector> = normals.iter().filter(|a| !a.is_zero()).map(QVector::primitive).collect();
    order.sort();
    order.dedup();

    let mut lineality: Vec<QVector> = (0..dim).map(|i| QVector::unit(dim, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in order.iter().enumerate() {
        if let Some(p) = lineality.iter().position(|l| !a.inner(l).is_zero()) {
            let mut pivot = lineality.remove(p);
            let mut s0 = a.inner(&pivot);
            if s0.is_negative() {
                pivot = pivot.neg();
                s0 = -s0;
            }
            for l in lineality.iter_mut() {
                let s = a.inner(l);
                if !s.is_zero() {
                    *l = l.add_scaled(&(-(&s / &s0)), &pivot).primitive();
                }
            }
            for r in rays.iter_mut() {
                let s = a.inner(&r.v);
                if !s.is_zero() {
                    r.v = r.v.add_scaled(&(-(&s / &s0)), &pivot).primitive();
                }
                r.zero.insert(k);
            }
            rays.push(Ray { v: pivot.primitive(), zero: (0..k).collect() });
            continue;
        }

        let vals: Vec<Rational> = rays.iter().map(|r| a.inner(&r.v)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zero.insert(k);
                }
            }
            continue;
        }

        let plus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        for (i, r) in rays.iter().enumerate() {
            if vals[i].is_zero() {
                let mut r = r.clone();
                r.zero.insert(k);
                next.push(r);
            } else if vals[i].is_positive() {
                next.push(r.clone());
            }
        }
        let free = dim - lineality.len();
        if free >= 2 {
            let target = free - 2;
            for &p in &plus {
                for &n in &minus {
                    let common = rays[p].zero.intersection(&rays[n].zero);
                    if common.len() < target {
                        continue;
                    }
                    let tight: Vec<QVector> = common.iter().map(|j| order[j].clone()).collect();
                    if integer_rank(&tight, dim) != target {
                        continue;
                    }
                    let v = rays[n].v.scale(&vals[p]).add_scaled(&(-&vals[n]), &rays[p].v).primitive();
                    let mut zero = common;
                    zero.insert(k);
                    next.push(Ray { v, zero });
                }
            }
        }
        rays = next;
    }

    (lineality, rays.into_iter().map(|r| r.v).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn quadrant_from_two_constraints() {
        let (lin, mut rays) = double_description(2, &[QVector::from_ints(&[0, 1]), QVector::from_ints(&[1, -1])]);
        assert!(lin.is_empty());
        rays.sort();
        assert_eq!(rays, vec![QVector::from_ints(&[1, 0]), QVector::from_ints(&[1, 1])]);
    }

    #[test]
    fn no_constraints_is_whole_space() {
        let (lin, rays) = double_description(3, &[]);
        assert_eq!(lin.len(), 3);
        assert!(rays.is_empty());
    }

    #[test]
    fn opposite_constraints_give_a_line() {
        let (lin, rays) = double_description(2, &[QVector::from_ints(&[1, 0]), QVector::from_ints(&[-1, 0])]);
        assert_eq!(lin.len(), 1);
        assert!(lin[0][0].is_zero());
        assert!(rays.is_empty());
    }

    #[test]
    fn square_cone_has_four_rays() {
        // x3 >= |x1|, x3 >= |x2|
        let normals = [[1, 0, 1], [-1, 0, 1], [0, 1, 1], [0, -1, 1]].map(|n| QVector::from_ints(&n));
        let (lin, rays) = double_description(3, &normals);
        assert!(lin.is_empty());
        assert_eq!(rays.len(), 4);
    }
}
