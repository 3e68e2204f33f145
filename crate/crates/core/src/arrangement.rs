//! Relatively open cells of affine hyperplane arrangements, and the
//! decomposition of `Γ_y([C])` into constant pieces.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::cone::Cone;
use crate::error::{check_dim, Error, Result};
use crate::gamma::{gamma_y_eval_with, Mutation};
use crate::bitset::BitSet;
use crate::indicator::{AffineCondition, GeneralizedPolyhedron, Relation};
use crate::linalg::{QVector, Scaled};
use crate::rational::Rational;

/// Largest ambient dimension accepted by [`gamma_region`].
pub const MAX_REGION_DIM: usize = 4;

/// One relatively open cell with a point inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub conditions: GeneralizedPolyhedron,
    pub witness: QVector,
}

/// A relatively open cell of the arrangement on which `Γ_y([C])` is
/// constant, together with that constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuedCell {
    pub conditions: GeneralizedPolyhedron,
    pub witness: QVector,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellDecomposition {
    pub dim: usize,
    /// The walls, each `<n, v> - c = 0`.
    pub hyperplanes: Vec<AffineCondition>,
    pub cells: Vec<ValuedCell>,
}

impl CellDecomposition {
    /// Sum of the values of the cells containing `x`. The cells are
    /// disjoint, so this is the value of the represented function.
    pub fn evaluate(&self, x: &QVector) -> Rational {
        self.cells.iter().filter(|c| c.conditions.contains(x)).map(|c| &c.value).sum()
    }
}

/// An affine wall `<normal, v> = offset`, scaled so that the normal is
/// primitive with positive leading coordinate.
fn canonical_wall(normal: &QVector, offset: &Rational) -> Option<(QVector, Rational)> {
    if normal.is_zero() {
        return None;
    }
    let canon = normal.canonical_line();
    let i = (0..normal.dim()).find(|&i| !normal[i].is_zero()).expect("nonzero");
    let scale = &canon[i] / &normal[i];
    Some((canon, offset * &scale))
}

/// Where each constraint of a cone sits among the canonical walls, and
/// whether the canonical normal is the negated constraint normal.
struct ConeWallMap {
    eqs: Vec<(usize, bool)>,
    facets: Vec<(usize, bool)>,
    lineality: Vec<(usize, bool)>,
    rays: Vec<(usize, bool)>,
}

/// Canonical walls of `Γ_y` for several cones at once.
pub struct GammaWalls {
    walls: Vec<AffineCondition>,
    maps: Vec<ConeWallMap>,
}

impl GammaWalls {
    /// Facet and equality hyperplanes through the origin, ray and
    /// lineality hyperplanes through `y`.
    pub fn new(cones: &[&Cone], y: &QVector) -> Self {
        let mut raw: Vec<(QVector, Rational)> = Vec::new();
        for c in cones {
            raw.extend(c.equalities().rows().iter().map(|e| (e.clone(), Rational::zero())));
            raw.extend(c.facets().iter().map(|h| (h.normal().clone(), Rational::zero())));
            raw.extend(c.lineality().rows().iter().chain(c.rays()).map(|r| (r.clone(), r.inner(y))));
        }
        let walls = dedup_walls(raw);
        let locate = |n: &QVector, off: Rational| -> (usize, bool) {
            let (canon, c) = canonical_wall(n, &off).expect("constraint normals are nonzero");
            let i = walls
                .iter()
                .position(|w| *w.normal() == canon && *w.offset() == c)
                .expect("every constraint has a wall");
            (i, canon != n.primitive())
        };
        let maps = cones
            .iter()
            .map(|c| ConeWallMap {
                eqs: c.equalities().rows().iter().map(|e| locate(e, Rational::zero())).collect(),
                facets: c.facets().iter().map(|h| locate(h.normal(), Rational::zero())).collect(),
                lineality: c.lineality().rows().iter().map(|l| locate(l, l.inner(y))).collect(),
                rays: c.rays().iter().map(|r| locate(r, r.inner(y))).collect(),
            })
            .collect();
        GammaWalls { walls, maps }
    }

    pub fn walls(&self) -> &[AffineCondition] {
        &self.walls
    }

    /// Whether every face term of `Γ_y([C])`, for every cone, already has a
    /// factor known to vanish given the signs of the first walls.
    fn all_terms_dead(&self, cones: &[&Cone], signs: &[Ordering]) -> bool {
        let known = |(i, flipped): (usize, bool)| -> Option<Ordering> {
            signs.get(i).map(|&s| if flipped { s.reverse() } else { s })
        };
        cones.iter().zip(&self.maps).all(|(cone, map)| {
            if map.eqs.iter().chain(&map.lineality).any(|&w| known(w).is_some_and(|s| s != Ordering::Equal)) {
                return true;
            }
            let bad_facets: crate::BitSet =
                (0..map.facets.len()).filter(|&i| known(map.facets[i]) == Some(Ordering::Less)).collect();
            let bad_rays: crate::BitSet = (0..map.rays.len()).filter(|&i| known(map.rays[i]) == Some(Ordering::Less)).collect();
            cone.face_lattice().faces().iter().all(|f| {
                !f.active().intersection(&bad_facets).is_empty() || !f.rays().intersection(&bad_rays).is_empty()
            })
        })
    }
}

/// Walls of `Γ_y([C])`.
pub fn gamma_walls(cone: &Cone, y: &QVector) -> Vec<AffineCondition> {
    GammaWalls::new(&[cone], y).walls
}

/// Deduplicated, sorted walls from `(normal, offset)` pairs.
pub fn dedup_walls(walls: Vec<(QVector, Rational)>) -> Vec<AffineCondition> {
    let mut canon: Vec<(QVector, Rational)> = walls.iter().filter_map(|(n, c)| canonical_wall(n, c)).collect();
    canon.sort();
    canon.dedup();
    canon.into_iter().map(|(n, c)| AffineCondition::new(n, c, Relation::Eq)).collect()
}

/// An open box around `center`, cut by further strict halfspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    pub center: QVector,
    pub half_width: Rational,
    pub cuts: Vec<AffineCondition>,
}

impl Domain {
    pub fn boxed(center: QVector, half_width: Rational) -> Self {
        Domain { center, half_width, cuts: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    /// Box bounds in the order `x_i > c_i - w`, `x_i < c_i + w`, then the cuts.
    pub fn conditions(&self) -> Vec<AffineCondition> {
        let d = self.dim();
        let mut conds = Vec::with_capacity(2 * d + self.cuts.len());
        for i in 0..d {
            let e = QVector::unit(d, i);
            conds.push(AffineCondition::new(e.clone(), &self.center[i] - &self.half_width, Relation::Gt));
            conds.push(AffineCondition::new(e.neg(), -(&self.center[i] + &self.half_width), Relation::Gt));
        }
        conds.extend(self.cuts.iter().cloned());
        conds
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.conditions().iter().all(|c| c.holds(x))
    }
}

/// An open polytope containing the closed ball `B(y/2, |y|/2)`, the only
/// place where `Γ_y` can be nonzero: an open box, cut by slightly
/// pushed-out tangent planes at the rational sphere points on the lines
/// through 0 along `±e_i` and `y`.
pub fn support_domain(y: &QVector) -> Domain {
    let d = y.dim();
    let half = Rational::new(1, 2);
    let c = y.scale(&half);
    if y.is_zero() {
        return Domain::boxed(c, half);
    }
    let abs_sum: Rational = y.iter().map(Rational::abs).sum();
    let mut dom = Domain::boxed(c.clone(), &(&abs_sum * &half) + &Rational::new(1, 8));
    let margin = &y.norm_sq() * &Rational::new(1, 128);
    let mut dirs = Vec::new();
    for i in 0..d {
        dirs.push(QVector::unit(d, i));
        dirs.push(QVector::unit(d, i).neg());
    }
    dirs.push(y.clone());
    for t in dirs {
        // second intersection of the line through 0 along t with the sphere
        let p = t.scale(&(&t.inner(y) / &t.norm_sq()));
        // <x, p - c> < <c, p> + margin
        let n = p.sub(&c);
        if n.is_zero() {
            continue;
        }
        dom.cuts.push(AffineCondition::new(n.neg(), -(&c.inner(&p) + &margin), Relation::Gt));
    }
    dom
}

/// Vertices shared by all cells, each with the processed constraints that
/// vanish on it. Tightness is a property of the point, so cells store ids.
struct Vertices {
    points: Vec<Scaled>,
    tight: Vec<BitSet>,
}

impl Vertices {
    fn push(&mut self, point: QVector, tight: BitSet) -> usize {
        self.points.push(Scaled::new(&point));
        self.tight.push(tight);
        self.points.len() - 1
    }

    /// Whether vertices `a` and `b` of the polytope `verts` span an edge: no
    /// third vertex is tight at every constraint tight at both. Exact
    /// because tight sets are complete and the polytope is bounded.
    fn adjacent(&self, dim: usize, verts: &[usize], a: usize, b: usize) -> bool {
        let common = self.tight[a].intersection(&self.tight[b]);
        if common.len() + 1 < dim {
            return false;
        }
        !verts.iter().any(|&v| v != a && v != b && common.is_subset(&self.tight[v]))
    }

    /// A point of the relative interior of `verts`: the average of a few
    /// vertices tight together only where all of them are.
    fn relint_point(&self, verts: &[usize]) -> QVector {
        let all = verts.iter().skip(1).fold(self.tight[verts[0]].clone(), |acc, &v| acc.intersection(&self.tight[v]));
        let mut common = self.tight[verts[0]].clone();
        let mut sum = self.points[verts[0]].exact().clone();
        let mut n = 1;
        while common != all {
            let v = *verts.iter().min_by_key(|&&v| common.intersection(&self.tight[v]).len()).expect("nonempty");
            common = common.intersection(&self.tight[v]);
            sum = sum.add(self.points[v].exact());
            n += 1;
        }
        sum.scale(&Rational::new(1, n))
    }
}

/// One pass of constraint `idx` over the cells.
struct Pass<'a> {
    idx: usize,
    wall: &'a AffineCondition,
    signs: BTreeMap<usize, Ordering>,
    /// New vertex on each crossed edge, shared by the cells around it.
    crossings: BTreeMap<(usize, usize), usize>,
}

struct Work {
    /// Vertices of the closure of the cell.
    vertices: Vec<usize>,
    /// Sign of each processed wall on the cell.
    signs: Vec<Ordering>,
}

enum Cut {
    Whole(Ordering),
    Split { less: Vec<usize>, equal: Vec<usize>, greater: Vec<usize> },
}

impl Pass<'_> {
    fn new(idx: usize, wall: &AffineCondition) -> Pass<'_> {
        Pass { idx, wall, signs: BTreeMap::new(), crossings: BTreeMap::new() }
    }

    fn sign(&mut self, store: &mut Vertices, v: usize) -> Ordering {
        if let Some(&s) = self.signs.get(&v) {
            return s;
        }
        let s = store.points[v].affine_sign(self.wall.normal(), self.wall.offset());
        if s == Ordering::Equal {
            store.tight[v].insert(self.idx);
        }
        self.signs.insert(v, s);
        s
    }

    /// Intersects the closed polytope `verts` with both closed sides of the
    /// wall and with the wall itself. A wall not crossing the relative
    /// interior leaves the polytope whole.
    fn cut(&mut self, store: &mut Vertices, dim: usize, verts: &[usize]) -> Cut {
        let signs: Vec<Ordering> = verts.iter().map(|&v| self.sign(store, v)).collect();
        let has_pos = signs.contains(&Ordering::Greater);
        let has_neg = signs.contains(&Ordering::Less);
        if !(has_pos && has_neg) {
            return Cut::Whole(if has_pos {
                Ordering::Greater
            } else if has_neg {
                Ordering::Less
            } else {
                Ordering::Equal
            });
        }
        let (mut less, mut equal, mut greater) = (Vec::new(), Vec::new(), Vec::new());
        for (&v, s) in verts.iter().zip(&signs) {
            match s {
                Ordering::Less => less.push(v),
                Ordering::Greater => greater.push(v),
                Ordering::Equal => {
                    less.push(v);
                    greater.push(v);
                    equal.push(v);
                }
            }
        }
        let pick = |o: Ordering| verts.iter().zip(&signs).filter(move |(_, s)| **s == o).map(|(&v, _)| v);
        for a in pick(Ordering::Greater) {
            for b in pick(Ordering::Less) {
                let key = (a.min(b), a.max(b));
                let v = match self.crossings.get(&key) {
                    Some(&v) => v,
                    None => {
                        if !store.adjacent(dim, verts, a, b) {
                            continue;
                        }
                        let (pa, pb) = (store.points[a].exact(), store.points[b].exact());
                        let (ha, hb) = (self.wall.value_at(pa), self.wall.value_at(pb));
                        let t = &ha / &(&ha - &hb);
                        let point = pa.add_scaled(&t, &pb.sub(pa));
                        let mut tight = store.tight[a].intersection(&store.tight[b]);
                        tight.insert(self.idx);
                        let v = store.push(point, tight);
                        self.crossings.insert(key, v);
                        v
                    }
                };
                less.push(v);
                greater.push(v);
                equal.push(v);
            }
        }
        Cut::Split { less, equal, greater }
    }
}

/// The box corners with their tight bounds, indexed as in [`Domain::conditions`].
fn box_vertices(dom: &Domain) -> Vertices {
    let d = dom.dim();
    let mut store = Vertices { points: Vec::new(), tight: Vec::new() };
    for mask in 0..1usize << d {
        let mut tight = BitSet::new();
        let coords = (0..d)
            .map(|i| {
                if mask >> i & 1 == 0 {
                    tight.insert(2 * i);
                    &dom.center[i] - &dom.half_width
                } else {
                    tight.insert(2 * i + 1);
                    &dom.center[i] + &dom.half_width
                }
            })
            .collect();
        store.push(QVector::new(coords), tight);
    }
    store
}

/// All relatively open cells of the arrangement `walls` inside the open
/// polytope `domain`, each with a witness point. A cell's conditions list
/// the sign of every wall; the domain conditions are left out.
pub fn arrangement_cells(walls: &[AffineCondition], domain: &Domain) -> Result<Vec<Cell>> {
    refine_cells(walls, domain, &|_| false)
}

/// Like [`arrangement_cells`], but a cell whose wall signs so far make
/// `settled` true is kept as it is instead of being split further.
fn refine_cells(walls: &[AffineCondition], domain: &Domain, settled: &dyn Fn(&[Ordering]) -> bool) -> Result<Vec<Cell>> {
    let dim = domain.dim();
    for c in walls.iter().chain(&domain.cuts) {
        check_dim(dim, c.normal().dim())?;
    }
    if !domain.half_width.is_positive() {
        return Err(Error::Unsupported("domain box must have positive width".into()));
    }
    let bounds = domain.conditions();
    let mut store = box_vertices(domain);
    let mut verts: Vec<usize> = (0..store.points.len()).collect();
    for (k, c) in domain.cuts.iter().enumerate() {
        verts = match Pass::new(2 * dim + k, c).cut(&mut store, dim, &verts) {
            Cut::Whole(Ordering::Greater) => verts,
            Cut::Whole(..) => return Ok(Vec::new()),
            Cut::Split { greater, .. } => greater,
        };
    }
    let offset = bounds.len();
    let mut cells = alloc::vec![Work { vertices: verts, signs: Vec::new() }];
    let mut done = Vec::new();
    for (k, wall) in walls.iter().enumerate() {
        let mut pass = Pass::new(offset + k, wall);
        let mut next = Vec::with_capacity(cells.len() * 2);
        for mut cell in cells {
            if settled(&cell.signs) {
                done.push(cell);
                continue;
            }
            match pass.cut(&mut store, dim, &cell.vertices) {
                Cut::Whole(sign) => {
                    cell.signs.push(sign);
                    next.push(cell);
                }
                Cut::Split { less, equal, greater } => {
                    for (sign, vertices) in [(Ordering::Less, less), (Ordering::Equal, equal), (Ordering::Greater, greater)] {
                        let mut signs = cell.signs.clone();
                        signs.push(sign);
                        next.push(Work { vertices, signs });
                    }
                }
            }
        }
        cells = next;
    }
    done.extend(cells);
    done.into_iter()
        .map(|w| {
            let conds: Vec<AffineCondition> = walls
                .iter()
                .zip(&w.signs)
                .map(|(wall, s)| match s {
                    Ordering::Equal => wall.clone(),
                    Ordering::Greater => AffineCondition::new(wall.normal().clone(), wall.offset().clone(), Relation::Gt),
                    Ordering::Less => AffineCondition::new(wall.normal().neg(), -wall.offset(), Relation::Gt),
                })
                .collect();
            let witness = store.relint_point(&w.vertices);
            debug_assert!(bounds.iter().chain(&conds).all(|c| c.holds(&witness)));
            Ok(Cell { conditions: GeneralizedPolyhedron::new(dim, conds)?, witness })
        })
        .collect()
}

/// Cells covering the support domain of `Γ_y` for each of `cones`: every
/// region where some `Γ_y([C])` may be nonzero is a full arrangement cell,
/// while regions where all of them vanish may be left coarser.
pub fn support_cells(cones: &[&Cone], y: &QVector) -> Result<(Vec<AffineCondition>, Vec<Cell>)> {
    let dim = y.dim();
    for c in cones {
        check_dim(dim, c.dim())?;
    }
    if dim > MAX_REGION_DIM {
        return Err(Error::Unsupported(alloc::format!("region extraction supports dimension <= {MAX_REGION_DIM}, got {dim}")));
    }
    let walls = GammaWalls::new(cones, y);
    let domain = support_domain(y);
    let cells = refine_cells(walls.walls(), &domain, &|signs| walls.all_terms_dead(cones, signs))?;
    Ok((walls.walls, cells))
}

/// A partition of the support domain into relatively open cells on which
/// `Γ_y([C])` is constant, with the values. Cells with value zero may be
/// unions of arrangement cells.
pub fn gamma_cells(cone: &Cone, y: &QVector) -> Result<CellDecomposition> {
    gamma_cells_with(cone, y, Mutation::None)
}

#[doc(hidden)]
pub fn gamma_cells_with(cone: &Cone, y: &QVector, mutation: Mutation) -> Result<CellDecomposition> {
    check_dim(cone.dim(), y.dim())?;
    let (walls, cells) = support_cells(&[cone], y)?;
    let cells = cells
        .into_iter()
        .map(|c| {
            let value = gamma_y_eval_with(cone, y, &c.witness, mutation)?;
            Ok(ValuedCell { conditions: c.conditions, witness: c.witness, value })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CellDecomposition { dim: cone.dim(), hyperplanes: walls, cells })
}

/// `Γ_y([C])` as a disjoint union of relatively open bounded cells with
/// nonzero constant values.
pub fn gamma_region(cone: &Cone, y: &QVector) -> Result<CellDecomposition> {
    gamma_region_with(cone, y, Mutation::None)
}

#[doc(hidden)]
pub fn gamma_region_with(cone: &Cone, y: &QVector, mutation: Mutation) -> Result<CellDecomposition> {
    let mut all = gamma_cells_with(cone, y, mutation)?;
    all.cells.retain(|c| !c.value.is_zero());
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn v(c: &[i64]) -> QVector {
        QVector::from_ints(c)
    }

    #[test]
    fn line_arrangement() {
        // two points on a line: 5 cells
        let walls = dedup_walls(vec![(v(&[1]), q(0, 1)), (v(&[2]), q(2, 1))]);
        let cells = arrangement_cells(&walls, &Domain::boxed(v(&[0]), q(5, 1))).unwrap();
        assert_eq!(cells.len(), 5);
        for c in &cells {
            assert!(c.conditions.contains(&c.witness));
        }
    }

    #[test]
    fn plane_arrangement_counts() {
        // three generic lines through distinct points: 7 regions, 9 edges, 3 vertices
        let walls = dedup_walls(vec![(v(&[1, 0]), q(0, 1)), (v(&[0, 1]), q(0, 1)), (v(&[1, 1]), q(1, 1))]);
        let cells = arrangement_cells(&walls, &Domain::boxed(v(&[0, 0]), q(10, 1))).unwrap();
        assert_eq!(cells.len(), 19);
        for (i, a) in cells.iter().enumerate() {
            assert!(a.conditions.contains(&a.witness));
            for b in &cells[i + 1..] {
                assert!(!b.conditions.contains(&a.witness));
            }
        }
    }

    #[test]
    fn wedge_region() {
        let c = Cone::from_vrep(2, &[v(&[1, 0]), v(&[1, 1])], &[]).unwrap();
        let y = v(&[2, 1]);
        let region = gamma_region(&c, &y).unwrap();
        assert!(!region.cells.is_empty());
        // the closed-form target {v2 >= 0, v1 - v2 >= 0, v1 < 2, v1 + v2 < 3}
        let target = |x: &QVector| {
            !x[1].is_negative() && !(&x[0] - &x[1]).is_negative() && x[0] < Rational::integer(2) && &x[0] + &x[1] < Rational::integer(3)
        };
        for c in &region.cells {
            assert_eq!(c.value, Rational::one());
            assert!(target(&c.witness));
        }
        for i in -4..=16 {
            for j in -4..=16 {
                let x = QVector::new(vec![q(i, 4), q(j, 4)]);
                let expect = if target(&x) { Rational::one() } else { Rational::zero() };
                assert_eq!(region.evaluate(&x), expect, "{x:?}");
            }
        }
    }

    #[test]
    fn degenerate_regions() {
        let c = Cone::from_vrep(2, &[v(&[1, 0]), v(&[1, 1])], &[]).unwrap();
        let r0 = gamma_region(&c, &v(&[0, 0])).unwrap();
        assert!(r0.cells.iter().all(|cell| cell.witness.is_zero()));
        let z = gamma_region(&Cone::zero(2), &v(&[3, -1])).unwrap();
        assert_eq!(z.cells.len(), 1);
        assert!(z.cells[0].witness.is_zero());
        assert_eq!(z.cells[0].value, Rational::one());
        assert!(gamma_region(&Cone::zero(5), &QVector::zeros(5)).is_err());
    }

    #[test]
    fn domain_contains_ball_points() {
        let y = QVector::new(vec![q(3, 2), q(-1, 2), q(1, 1)]);
        let dom = support_domain(&y);
        // points of the sphere through 0 along several directions, and the center
        for t in [v(&[1, 0, 0]), v(&[1, 2, 3]), v(&[-1, 1, 2]), v(&[0, 0, 1])] {
            let p = t.scale(&(&t.inner(&y) / &t.norm_sq()));
            assert!(dom.contains(&p), "{p:?}");
        }
        assert!(dom.contains(&y));
    }
}
