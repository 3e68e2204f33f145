//! Formal linear combinations of indicator functions of generalized
//! (partly open, translated) polyhedra.
//!
//! Sums are never brought into a canonical form; two sums are compared
//! by evaluating them at points.

mod feasibility;

use alloc::vec::Vec;
use core::fmt;

use crate::cone::Cone;
use crate::error::{check_dim, Error, Result};
use crate::linalg::QVector;
use crate::rational::Rational;

pub use feasibility::{fourier_motzkin_feasible, max_min_slack, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    /// `>=`
    Ge,
    /// `>`
    Gt,
    /// `=`
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Eq => "=",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Relation> {
        match s {
            ">=" => Some(Relation::Ge),
            ">" => Some(Relation::Gt),
            "=" => Some(Relation::Eq),
            _ => None,
        }
    }

    fn holds(self, value: &Rational) -> bool {
        match self {
            Relation::Ge => !value.is_negative(),
            Relation::Gt => value.is_positive(),
            Relation::Eq => value.is_zero(),
        }
    }
}

/// `<normal, v> - offset  rel  0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineCondition {
    normal: QVector,
    offset: Rational,
    relation: Relation,
}

impl AffineCondition {
    pub fn new(normal: QVector, offset: Rational, relation: Relation) -> Self {
        AffineCondition { normal, offset, relation }
    }

    /// `<normal, v> >= 0`.
    pub fn halfspace(normal: QVector) -> Self {
        AffineCondition::new(normal, Rational::zero(), Relation::Ge)
    }

    /// The canonical always-false condition `0 >= 1`.
    pub fn never(dim: usize) -> Self {
        AffineCondition::new(QVector::zeros(dim), Rational::one(), Relation::Ge)
    }

    pub fn normal(&self) -> &QVector {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn value_at(&self, x: &QVector) -> Rational {
        self.normal.inner(x) - &self.offset
    }

    pub fn holds(&self, x: &QVector) -> bool {
        self.relation.holds(&self.value_at(x))
    }

    /// Condition satisfied by `v + t` exactly when `self` is satisfied by `v`.
    pub fn translated(&self, t: &QVector) -> Self {
        AffineCondition::new(self.normal.clone(), &self.offset + &self.normal.inner(t), self.relation)
    }

    /// Condition satisfied by `-v` exactly when `self` is satisfied by `v`.
    pub fn negated_argument(&self) -> Self {
        AffineCondition::new(self.normal.neg(), self.offset.clone(), self.relation)
    }

    /// `Some(truth)` when the normal is zero.
    fn constant_truth(&self) -> Option<bool> {
        self.normal.is_zero().then(|| self.relation.holds(&(-&self.offset)))
    }
}

impl fmt::Debug for AffineCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}, v> - {} {} 0", self.normal, self.offset, self.relation.symbol())
    }
}

/// A finite conjunction of affine conditions. Conditions with a zero
/// normal are simplified on construction: true ones are dropped, a false
/// one collapses the whole cell to [`AffineCondition::never`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedPolyhedron {
    dim: usize,
    conditions: Vec<AffineCondition>,
}

impl GeneralizedPolyhedron {
    pub fn new(dim: usize, conditions: Vec<AffineCondition>) -> Result<Self> {
        let mut kept = Vec::with_capacity(conditions.len());
        for c in conditions {
            check_dim(dim, c.normal.dim())?;
            match c.constant_truth() {
                Some(true) => {}
                Some(false) => {
                    return Ok(GeneralizedPolyhedron { dim, conditions: alloc::vec![AffineCondition::never(dim)] });
                }
                None => kept.push(c),
            }
        }
        Ok(GeneralizedPolyhedron { dim, conditions: kept })
    }

    /// The whole space.
    pub fn everything(dim: usize) -> Self {
        GeneralizedPolyhedron { dim, conditions: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conditions(&self) -> &[AffineCondition] {
        &self.conditions
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.conditions.iter().all(|c| c.holds(x))
    }

    pub fn is_closed(&self) -> bool {
        self.conditions.iter().all(|c| c.relation != Relation::Gt)
    }

    /// Closed, and every condition passes through the origin.
    pub fn is_conical(&self) -> bool {
        self.is_closed() && self.conditions.iter().all(|c| c.offset.is_zero())
    }

    pub fn translated(&self, t: &QVector) -> Self {
        GeneralizedPolyhedron { dim: self.dim, conditions: self.conditions.iter().map(|c| c.translated(t)).collect() }
    }

    /// `-P`.
    pub fn negated(&self) -> Self {
        GeneralizedPolyhedron { dim: self.dim, conditions: self.conditions.iter().map(|c| c.negated_argument()).collect() }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut conditions = self.conditions.clone();
        conditions.extend(other.conditions.iter().cloned());
        GeneralizedPolyhedron { dim: self.dim, conditions }
    }

    /// Exact emptiness test by Fourier–Motzkin elimination.
    pub fn is_feasible(&self) -> bool {
        fourier_motzkin_feasible(self.dim, &self.conditions)
    }

    /// A point of the cell from the max-min-slack LP, if the cell is nonempty.
    pub fn witness(&self) -> Option<QVector> {
        max_min_slack(self.dim, &self.conditions).interior()
    }

    /// The cone described by a conical cell.
    pub fn to_cone(&self) -> Result<Cone> {
        if !self.is_conical() {
            return Err(Error::Unsupported("cell is not a closed cone".into()));
        }
        let mut normals = Vec::new();
        for c in &self.conditions {
            if c.normal.is_zero() {
                // only the `never` marker has a zero normal
                return Err(Error::Unsupported("empty cell is not a cone".into()));
            }
            normals.push(c.normal.clone());
            if c.relation == Relation::Eq {
                normals.push(c.normal.neg());
            }
        }
        Cone::from_hrep(self.dim, &normals)
    }
}

impl fmt::Debug for GeneralizedPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.conditions.iter()).finish()
    }
}

/// A finite rational combination of indicator functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSum {
    dim: usize,
    terms: Vec<(Rational, GeneralizedPolyhedron)>,
}

impl FormalSum {
    pub fn zero(dim: usize) -> Self {
        FormalSum { dim, terms: Vec::new() }
    }

    pub fn single(cell: GeneralizedPolyhedron) -> Self {
        FormalSum { dim: cell.dim, terms: alloc::vec![(Rational::one(), cell)] }
    }

    pub fn from_terms(dim: usize, terms: Vec<(Rational, GeneralizedPolyhedron)>) -> Result<Self> {
        for (_, cell) in &terms {
            check_dim(dim, cell.dim)?;
        }
        Ok(FormalSum { dim, terms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(Rational, GeneralizedPolyhedron)] {
        &self.terms
    }

    pub fn evaluate(&self, x: &QVector) -> Result<Rational> {
        check_dim(self.dim, x.dim())?;
        Ok(self.terms.iter().filter(|(_, cell)| cell.contains(x)).map(|(c, _)| c).sum())
    }

    pub fn add(&self, other: &FormalSum) -> Result<FormalSum> {
        check_dim(self.dim, other.dim)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(FormalSum { dim: self.dim, terms })
    }

    pub fn scale(&self, s: &Rational) -> FormalSum {
        FormalSum { dim: self.dim, terms: self.terms.iter().map(|(c, p)| (c * s, p.clone())).collect() }
    }

    /// The function `x ↦ S(x - t)`.
    pub fn translate(&self, t: &QVector) -> Result<FormalSum> {
        check_dim(self.dim, t.dim())?;
        Ok(FormalSum { dim: self.dim, terms: self.terms.iter().map(|(c, p)| (c.clone(), p.translated(t))).collect() })
    }

    /// The function `x ↦ S(-x)`.
    pub fn negate_argument(&self) -> FormalSum {
        FormalSum { dim: self.dim, terms: self.terms.iter().map(|(c, p)| (c.clone(), p.negated())).collect() }
    }

    /// Pointwise product, using `[P][Q] = [P ∩ Q]`.
    pub fn product(&self, other: &FormalSum) -> Result<FormalSum> {
        check_dim(self.dim, other.dim)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                terms.push((a * b, p.intersection(q)));
            }
        }
        Ok(FormalSum { dim: self.dim, terms })
    }

    /// Euler characteristic: the sum of the coefficients of nonempty cells.
    /// Only closed cells are accepted.
    pub fn euler_char(&self) -> Result<Rational> {
        if let Some((_, open)) = self.terms.iter().find(|(_, p)| !p.is_closed()) {
            return Err(Error::Unsupported(alloc::format!("euler_char needs closed cells, got {open:?}")));
        }
        Ok(self.terms.iter().filter(|(_, p)| p.is_feasible()).map(|(c, _)| c).sum())
    }

    /// The valuation `D([C]) = [C*]` applied termwise to a sum of cones.
    pub fn dual_map(&self) -> Result<FormalSum> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, p) in &self.terms {
            terms.push((c.clone(), indicator_cell(&p.to_cone()?.dual())));
        }
        Ok(FormalSum { dim: self.dim, terms })
    }

    /// Views the sum as a combination of cones.
    pub fn to_conic(&self) -> Result<ConicSum> {
        let terms = self.terms.iter().map(|(c, p)| Ok((c.clone(), p.to_cone()?))).collect::<Result<Vec<_>>>()?;
        Ok(ConicSum { dim: self.dim, terms })
    }
}

/// Closed conditions of the irredundant hrep.
pub fn indicator_cell(cone: &Cone) -> GeneralizedPolyhedron {
    let mut conditions: Vec<AffineCondition> = cone
        .facets()
        .iter()
        .map(|h| AffineCondition::new(h.normal().clone(), Rational::zero(), Relation::Ge))
        .collect();
    conditions.extend(cone.equalities().rows().iter().map(|e| AffineCondition::new(e.clone(), Rational::zero(), Relation::Eq)));
    GeneralizedPolyhedron { dim: cone.dim(), conditions }
}

/// Equalities of the span plus strict facet inequalities.
pub fn relint_cell(cone: &Cone) -> GeneralizedPolyhedron {
    let mut conditions: Vec<AffineCondition> = cone
        .facets()
        .iter()
        .map(|h| AffineCondition::new(h.normal().clone(), Rational::zero(), Relation::Gt))
        .collect();
    conditions.extend(cone.equalities().rows().iter().map(|e| AffineCondition::new(e.clone(), Rational::zero(), Relation::Eq)));
    GeneralizedPolyhedron { dim: cone.dim(), conditions }
}

/// `[C]`.
pub fn indicator(cone: &Cone) -> FormalSum {
    FormalSum::single(indicator_cell(cone))
}

/// `[relint C]`.
pub fn relint_indicator(cone: &Cone) -> FormalSum {
    FormalSum::single(relint_cell(cone))
}

/// An element of the cone algebra: a rational combination of cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicSum {
    dim: usize,
    terms: Vec<(Rational, Cone)>,
}

impl ConicSum {
    pub fn zero(dim: usize) -> Self {
        ConicSum { dim, terms: Vec::new() }
    }

    pub fn single(cone: Cone) -> Self {
        ConicSum { dim: cone.dim(), terms: alloc::vec![(Rational::one(), cone)] }
    }

    pub fn from_terms(dim: usize, terms: Vec<(Rational, Cone)>) -> Result<Self> {
        for (_, c) in &terms {
            check_dim(dim, c.dim())?;
        }
        Ok(ConicSum { dim, terms })
    }

    /// `[C ∩ H⁺] + [C ∩ H⁻] - [C ∩ H]`, which equals `[C]`.
    pub fn cut_expansion(cone: &Cone, normal: &QVector) -> Result<Self> {
        let (p, m, h) = cone.cut(normal)?;
        Ok(ConicSum { dim: cone.dim(), terms: alloc::vec![(Rational::one(), p), (Rational::one(), m), (-Rational::one(), h)] })
    }

    /// `[relint C] = Σ_F (-1)^{d_C - d_F} [F]`.
    pub fn relint_expansion(cone: &Cone) -> Self {
        let lattice = cone.face_lattice();
        let top = lattice.face(lattice.top()).dim();
        let terms = lattice
            .ids()
            .map(|f| {
                let d = lattice.face(f).dim();
                (Rational::sign_power(top - d), cone.face_cone(f).expect("face of this cone"))
            })
            .collect();
        ConicSum { dim: cone.dim(), terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(Rational, Cone)] {
        &self.terms
    }

    pub fn push(&mut self, coeff: Rational, cone: Cone) -> Result<()> {
        check_dim(self.dim, cone.dim())?;
        self.terms.push((coeff, cone));
        Ok(())
    }

    /// Termwise negation of the argument: `[C] ↦ [-C]`.
    pub fn negate(&self) -> Self {
        ConicSum { dim: self.dim, terms: self.terms.iter().map(|(c, k)| (c.clone(), k.negate())).collect() }
    }

    pub fn to_formal(&self) -> FormalSum {
        FormalSum { dim: self.dim, terms: self.terms.iter().map(|(c, k)| (c.clone(), indicator_cell(k))).collect() }
    }

    pub fn evaluate(&self, x: &QVector) -> Result<Rational> {
        check_dim(self.dim, x.dim())?;
        Ok(self.terms.iter().filter(|(_, k)| k.contains_unchecked(x)).map(|(c, _)| c).sum())
    }
}

#[cfg(test)]
mod tests;
