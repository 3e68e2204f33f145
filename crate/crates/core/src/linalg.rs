//! Exact vectors, matrices and the linear algebra the geometry is built on.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Deref, Index};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{check_dim, Result};
use crate::rational::Rational;

/// A point or direction of the ambient space, with exact coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QVector(Vec<Rational>);

impl QVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        QVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        QVector(vec![Rational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        QVector(coords.iter().map(|&c| Rational::integer(c)).collect())
    }

    /// The `i`-th standard basis vector of `R^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = QVector::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    /// Inner product; both vectors must have the same length.
    pub fn inner(&self, other: &QVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        let mut acc = Rational::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    /// Sign of the inner product, computed in machine integers when both
    /// vectors allow it.
    pub(crate) fn inner_sign(&self, other: &Scaled) -> core::cmp::Ordering {
        other.sign_against(self).unwrap_or_else(|| self.inner(&other.exact).sign())
    }

    pub fn norm_sq(&self) -> Rational {
        self.inner(self)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn add(&self, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> QVector {
        QVector(self.0.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> QVector {
        QVector(self.0.iter().map(|a| -a).collect())
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: &Rational, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + &(s * b)).collect())
    }

    /// Positive multiple of `self` with coprime integer coordinates.
    /// The zero vector is returned unchanged.
    pub fn primitive(&self) -> QVector {
        if self.is_zero() {
            return self.clone();
        }
        if let Some(p) = self.primitive_small() {
            return p;
        }
        let mut lcm = BigInt::one();
        for c in &self.0 {
            lcm = lcm.lcm(&c.denom());
        }
        let ints: Vec<BigInt> = self.0.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let mut g = BigInt::zero();
        for n in &ints {
            g = g.gcd(n);
        }
        QVector(ints.into_iter().map(|n| Rational::from_bigint(n / &g)).collect())
    }

    /// [`QVector::primitive`] in machine integers; `None` on overflow.
    fn primitive_small(&self) -> Option<QVector> {
        let mut parts = Vec::with_capacity(self.0.len());
        let mut lcm: i64 = 1;
        for c in &self.0 {
            let (n, d) = c.to_i64_parts()?;
            lcm = lcm.checked_mul(d / lcm.gcd(&d))?;
            parts.push((n, d));
        }
        let mut ints = Vec::with_capacity(parts.len());
        let mut g: i64 = 0;
        for (n, d) in parts {
            let v = n.checked_mul(lcm / d)?;
            g = g.gcd(&v);
            ints.push(v);
        }
        Some(QVector(ints.into_iter().map(|v| Rational::integer(v / g)).collect()))
    }

    /// Primitive form with leading nonzero coordinate positive: a canonical
    /// representative of the line (or hyperplane normal) through `self`.
    pub fn canonical_line(&self) -> QVector {
        let p = self.primitive();
        match p.0.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => p.neg(),
            _ => p,
        }
    }
}

impl Deref for QVector {
    type Target = [Rational];
    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl Index<usize> for QVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl From<Vec<Rational>> for QVector {
    fn from(v: Vec<Rational>) -> Self {
        QVector(v)
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A vector prepared for repeated sign tests against integer vectors: its
/// coordinates over a common positive denominator, when that fits `i128`.
pub(crate) struct Scaled {
    exact: QVector,
    numers: Option<Vec<i128>>,
    lcm: Option<i128>,
}

impl Scaled {
    pub(crate) fn new(v: &QVector) -> Self {
        let (numers, lcm) = match Self::numers(v) {
            Some((n, l)) => (Some(n), Some(l)),
            None => (None, None),
        };
        Scaled { numers, lcm, exact: v.clone() }
    }

    fn numers(v: &QVector) -> Option<(Vec<i128>, i128)> {
        let parts: Vec<(i64, i64)> = v.iter().map(Rational::to_i64_parts).collect::<Option<_>>()?;
        let mut lcm: i128 = 1;
        for &(_, q) in &parts {
            let g = num_integer::Integer::gcd(&lcm, &(q as i128));
            lcm = lcm.checked_mul(q as i128 / g).filter(|l| *l < 1 << 62)?;
        }
        let numers = parts.iter().map(|&(p, q)| (p as i128).checked_mul(lcm / q as i128)).collect::<Option<_>>()?;
        Some((numers, lcm))
    }

    pub(crate) fn exact(&self) -> &QVector {
        &self.exact
    }

    /// `None` when `n` is not an integer vector in `i64` or the sum
    /// overflows.
    fn sign_against(&self, n: &QVector) -> Option<core::cmp::Ordering> {
        self.scaled_dot(n, 1).map(|acc| acc.cmp(&0))
    }

    /// `q <n, numers>`, checked.
    fn scaled_dot(&self, n: &QVector, q: i128) -> Option<i128> {
        let xs = self.numers.as_ref()?;
        let mut acc: i128 = 0;
        for (c, x) in n.iter().zip(xs) {
            let (p, d) = c.to_i64_parts()?;
            if d != 1 {
                return None;
            }
            acc = acc.checked_add((p as i128).checked_mul(*x)?.checked_mul(q)?)?;
        }
        Some(acc)
    }

    /// Sign of `<n, v> - offset` for an integer `n`.
    pub(crate) fn affine_sign(&self, n: &QVector, offset: &Rational) -> core::cmp::Ordering {
        let fast = || {
            let (p, q) = offset.to_i64_parts()?;
            let lcm = self.lcm?;
            let dot = self.scaled_dot(n, q as i128)?;
            Some(dot.checked_sub((p as i128).checked_mul(lcm)?)?.cmp(&0))
        };
        fast().unwrap_or_else(|| (n.inner(&self.exact) - offset).sign())
    }
}

/// Exact inner product with a dimension check.
pub fn dot(u: &QVector, v: &QVector) -> Result<Rational> {
    check_dim(u.dim(), v.dim())?;
    Ok(u.inner(v))
}

/// A rectangular matrix stored by rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    ncols: usize,
    rows: Vec<QVector>,
}

impl QMatrix {
    pub fn new(ncols: usize, rows: Vec<QVector>) -> Result<Self> {
        for r in &rows {
            check_dim(ncols, r.dim())?;
        }
        Ok(QMatrix { ncols, rows })
    }

    pub(crate) fn from_rows_unchecked(ncols: usize, rows: Vec<QVector>) -> Self {
        debug_assert!(rows.iter().all(|r| r.dim() == ncols));
        QMatrix { ncols, rows }
    }

    pub fn empty(ncols: usize) -> Self {
        QMatrix { ncols, rows: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        QMatrix { ncols: n, rows: (0..n).map(|i| QVector::unit(n, i)).collect() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<QVector> {
        self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `M x`.
    pub fn apply(&self, x: &QVector) -> QVector {
        QVector(self.rows.iter().map(|r| r.inner(x)).collect())
    }

    /// Exact rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        integer_rank(&self.rows, self.ncols)
    }

    /// Reduced row echelon form (nonzero rows only) and pivot columns.
    pub fn rref(&self) -> (Vec<QVector>, Vec<usize>) {
        let mut m: Vec<Vec<Rational>> = self.rows.iter().map(|r| r.0.clone()).collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.ncols {
            if row == m.len() {
                break;
            }
            let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let inv = m[row][col].recip();
            for c in col..self.ncols {
                m[row][c] = &m[row][c] * &inv;
            }
            for i in 0..m.len() {
                if i != row && !m[i][col].is_zero() {
                    let f = m[i][col].clone();
                    for c in col..self.ncols {
                        let delta = &f * &m[row][c];
                        m[i][c] -= delta;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        m.truncate(row);
        (m.into_iter().map(QVector).collect(), pivots)
    }

    /// A canonical basis of the row span: RREF rows scaled to primitive
    /// integer vectors. Equal spans give equal bases.
    pub fn canonical_row_basis(&self) -> QMatrix {
        let (rows, _) = self.rref();
        QMatrix {
            ncols: self.ncols,
            rows: rows.iter().map(QVector::primitive).collect(),
        }
    }

    /// Basis of `{x : M x = 0}` in canonical form.
    pub fn nullspace(&self) -> QMatrix {
        let (rows, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|c| !pivots.contains(c)) {
            let mut v = QVector::zeros(self.ncols);
            v.0[free] = Rational::one();
            for (r, &p) in rows.iter().zip(&pivots) {
                v.0[p] = -&r[free];
            }
            basis.push(v);
        }
        QMatrix { ncols: self.ncols, rows: basis }.canonical_row_basis()
    }

    /// Whether `v` lies in the row span.
    pub fn spans(&self, v: &QVector) -> bool {
        if v.is_zero() {
            return true;
        }
        let mut rows = self.rows.clone();
        let r0 = integer_rank(&rows, self.ncols);
        rows.push(v.clone());
        integer_rank(&rows, self.ncols) == r0
    }

    /// Orthogonal projection of `x` onto the row span, from the Gram system.
    pub fn project(&self, x: &QVector) -> QVector {
        let (basis, _) = self.rref();
        if basis.is_empty() {
            return QVector::zeros(self.ncols);
        }
        let k = basis.len();
        let mut gram = vec![vec![Rational::zero(); k]; k];
        for i in 0..k {
            for j in i..k {
                let g = basis[i].inner(&basis[j]);
                gram[j][i] = g.clone();
                gram[i][j] = g;
            }
        }
        let rhs: Vec<Rational> = basis.iter().map(|b| b.inner(x)).collect();
        let coeffs = solve_square(gram, rhs).expect("Gram matrix of independent rows is invertible");
        let mut out = QVector::zeros(self.ncols);
        for (c, b) in coeffs.iter().zip(&basis) {
            out = out.add_scaled(c, b);
        }
        out
    }

    /// Canonical basis of the orthogonal complement of the row span.
    pub fn orthogonal_complement(&self) -> QMatrix {
        self.nullspace()
    }

    pub fn stacked(&self, other: &QMatrix) -> QMatrix {
        debug_assert_eq!(self.ncols, other.ncols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        QMatrix { ncols: self.ncols, rows }
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter()).finish()
    }
}

/// Exact rank of a row set.
pub fn rank(m: &QMatrix) -> usize {
    m.rank()
}

pub fn project_onto_span(basis: &QMatrix, x: &QVector) -> Result<QVector> {
    check_dim(basis.ncols(), x.dim())?;
    Ok(basis.project(x))
}

pub fn orthogonal_complement_basis(basis: &QMatrix) -> QMatrix {
    basis.orthogonal_complement()
}

/// Bareiss elimination on integer-scaled rows. Pivot row is the first row
/// (lowest index) with a nonzero entry in the current column.
pub(crate) fn integer_rank(rows: &[QVector], ncols: usize) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.iter().filter(|r| !r.is_zero()).map(|r| r.primitive().0).collect();
    let mut rank = 0;
    let mut prev = Rational::one();
    for col in 0..ncols {
        if rank == m.len() {
            break;
        }
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            for c in col + 1..ncols {
                // exact: Bareiss quotients are integers
                let v = &(&(&m[rank][col] * &m[i][c]) - &(&m[i][col] * &m[rank][c])) / &prev;
                m[i][c] = v;
            }
            m[i][col] = Rational::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Solves a square system by Gauss-Jordan elimination. `None` if singular.
pub(crate) fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, p);
        b.swap(col, p);
        let inv = a[col][col].recip();
        for c in col..n {
            a[col][c] = &a[col][c] * &inv;
        }
        b[col] = &b[col] * &inv;
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for c in col..n {
                    let d = &f * &a[col][c];
                    a[i][c] -= d;
                }
                let d = &f * &b[col];
                b[i] -= d;
            }
        }
    }
    Some(b)
}

/// Solves `M x = b` for any particular solution, returning it together
/// with a canonical basis of the solution directions.
pub(crate) fn solve_affine(m: &QMatrix, b: &[Rational]) -> Option<(QVector, QMatrix)> {
    let n = m.ncols();
    let mut aug: Vec<QVector> = m
        .rows()
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut c = r.0.clone();
            c.push(bi.clone());
            QVector(c)
        })
        .collect();
    let (rows, pivots) = QMatrix { ncols: n + 1, rows: core::mem::take(&mut aug) }.rref();
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = QVector::zeros(n);
    for (r, &p) in rows.iter().zip(&pivots) {
        x.0[p] = r[n].clone();
    }
    Some((x, m.nullspace()))
}
