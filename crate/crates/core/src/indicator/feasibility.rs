//! Exact feasibility of systems mixing `>=`, `>` and `=` conditions.

use alloc::vec::Vec;

use crate::linalg::{solve_affine, QMatrix, QVector};
use crate::lp::{maximize, LpOutcome};
use crate::rational::Rational;

use super::{AffineCondition, Relation};

/// `a·x + b (>= | >) 0`.
#[derive(Clone)]
struct Row {
    a: Vec<Rational>,
    b: Rational,
    strict: bool,
}

impl Row {
    fn is_constant(&self) -> bool {
        self.a.iter().all(Rational::is_zero)
    }

    fn constant_holds(&self) -> bool {
        if self.strict {
            self.b.is_positive()
        } else {
            !self.b.is_negative()
        }
    }
}

/// Fourier–Motzkin elimination with strictness tracking: a combination is
/// strict when either parent is. Equalities are substituted away first.
pub fn fourier_motzkin_feasible(dim: usize, conditions: &[AffineCondition]) -> bool {
    let mut eqs: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let mut rows: Vec<Row> = Vec::new();
    for c in conditions {
        let a = c.normal().coords().to_vec();
        let b = -c.offset();
        match c.relation() {
            Relation::Eq => eqs.push((a, b)),
            Relation::Ge => rows.push(Row { a, b, strict: false }),
            Relation::Gt => rows.push(Row { a, b, strict: true }),
        }
    }

    while let Some((ea, eb)) = eqs.pop() {
        let Some(j) = (0..dim).find(|&j| !ea[j].is_zero()) else {
            if !eb.is_zero() {
                return false;
            }
            continue;
        };
        let pivot = ea[j].clone();
        let reduce = |a: &mut Vec<Rational>, b: &mut Rational| {
            if a[j].is_zero() {
                return;
            }
            let f = &a[j] / &pivot;
            for (ai, ei) in a.iter_mut().zip(&ea) {
                *ai -= &f * ei;
            }
            *b -= &f * &eb;
        };
        for (a, b) in eqs.iter_mut() {
            reduce(a, b);
        }
        for r in rows.iter_mut() {
            reduce(&mut r.a, &mut r.b);
        }
    }

    let mut remaining: Vec<usize> = (0..dim).collect();
    loop {
        rows = match prune(rows) {
            Some(rows) => rows,
            None => return false,
        };
        if remaining.is_empty() || rows.is_empty() {
            return true;
        }
        // eliminate the variable producing the fewest new rows
        let (pos, &var) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| {
                let p = rows.iter().filter(|r| r.a[v].is_positive()).count();
                let n = rows.iter().filter(|r| r.a[v].is_negative()).count();
                p * n
            })
            .expect("remaining is nonempty");
        remaining.remove(pos);
        let (mut keep, mut plus, mut minus) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.a[var].is_positive() {
                plus.push(r);
            } else if r.a[var].is_negative() {
                minus.push(r);
            } else {
                keep.push(r);
            }
        }
        for p in &plus {
            for n in &minus {
                let fp = -&n.a[var];
                let fn_ = p.a[var].clone();
                let a = p.a.iter().zip(&n.a).map(|(x, y)| &(&fp * x) + &(&fn_ * y)).collect();
                let b = &(&fp * &p.b) + &(&fn_ * &n.b);
                keep.push(Row { a, b, strict: p.strict || n.strict });
            }
        }
        rows = keep;
    }
}

/// Drops constant rows (returning `None` on a violated one), scales each
/// row so its direction is primitive, and keeps the tightest row per
/// direction (smallest constant, strict before non-strict on ties).
fn prune(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut keyed: Vec<(QVector, Rational, bool)> = Vec::with_capacity(rows.len());
    for r in rows {
        if r.is_constant() {
            if !r.constant_holds() {
                return None;
            }
            continue;
        }
        let dir = QVector::new(r.a.clone()).primitive();
        let scale = first_ratio(&dir, &r.a);
        keyed.push((dir, &r.b / &scale, r.strict));
    }
    keyed.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)).then(y.2.cmp(&x.2)));
    let mut result: Vec<Row> = Vec::new();
    let mut last: Option<QVector> = None;
    for (dir, b, strict) in keyed {
        if last.as_ref() == Some(&dir) {
            continue;
        }
        last = Some(dir.clone());
        result.push(Row { a: dir.into_coords(), b, strict });
    }
    Some(result)
}

fn first_ratio(dir: &QVector, a: &[Rational]) -> Rational {
    let i = (0..a.len()).find(|&i| !dir[i].is_zero()).expect("nonconstant row");
    &a[i] / &dir[i]
}

/// Result of the witness LP for a system of conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Even the closure of the system is empty.
    Infeasible,
    /// A point that satisfies every non-strict condition and maximizes the
    /// smallest slack of the strict ones (capped at 1). The system itself
    /// is feasible iff `slack > 0` or there are no strict conditions.
    Point { point: QVector, slack: Rational, has_strict: bool },
}

impl Witness {
    /// The witness, if it satisfies the system.
    pub fn interior(self) -> Option<QVector> {
        match self {
            Witness::Point { point, slack, has_strict } if !has_strict || slack.is_positive() => Some(point),
            _ => None,
        }
    }
}

/// Exact LP `max t` subject to `n·x - offset >= t` on strict conditions,
/// `>= 0` on non-strict ones, equalities exact and `t <= 1`.
pub fn max_min_slack(dim: usize, conditions: &[AffineCondition]) -> Witness {
    let eq_rows: Vec<QVector> = conditions.iter().filter(|c| c.relation() == Relation::Eq).map(|c| c.normal().clone()).collect();
    let eq_rhs: Vec<Rational> = conditions.iter().filter(|c| c.relation() == Relation::Eq).map(|c| c.offset().clone()).collect();
    let eq_matrix = QMatrix::from_rows_unchecked(dim, eq_rows);
    let Some((x0, dirs)) = solve_affine(&eq_matrix, &eq_rhs) else {
        return Witness::Infeasible;
    };
    let ineqs: Vec<&AffineCondition> = conditions.iter().filter(|c| c.relation() != Relation::Eq).collect();
    let has_strict = ineqs.iter().any(|c| c.relation() == Relation::Gt);
    let k = dirs.nrows();

    if k == 0 {
        let mut slack = Rational::one();
        for c in &ineqs {
            let s = c.normal().inner(&x0) - c.offset();
            if s.is_negative() {
                return Witness::Infeasible;
            }
            if c.relation() == Relation::Gt && s < slack {
                slack = s;
            }
        }
        return Witness::Point { point: x0, slack, has_strict };
    }

    // variables: z+ (k), z- (k), t
    let nvars = 2 * k + 1;
    let mut a = Vec::with_capacity(ineqs.len() + 1);
    let mut b = Vec::with_capacity(ineqs.len() + 1);
    for c in &ineqs {
        let mut row = Vec::with_capacity(nvars);
        let g: Vec<Rational> = dirs.rows().iter().map(|d| c.normal().inner(d)).collect();
        row.extend(g.iter().map(|x| -x));
        row.extend(g.iter().cloned());
        row.push(if c.relation() == Relation::Gt { Rational::one() } else { Rational::zero() });
        a.push(row);
        b.push(c.normal().inner(&x0) - c.offset());
    }
    let mut cap = alloc::vec![Rational::zero(); nvars];
    cap[2 * k] = Rational::one();
    a.push(cap.clone());
    b.push(Rational::one());

    match maximize(&a, &b, &cap) {
        LpOutcome::Optimal { value, solution } => {
            let mut point = x0;
            for (j, d) in dirs.rows().iter().enumerate() {
                let z = &solution[j] - &solution[k + j];
                if !z.is_zero() {
                    point = point.add_scaled(&z, d);
                }
            }
            Witness::Point { point, slack: value, has_strict }
        }
        LpOutcome::Infeasible => Witness::Infeasible,
        LpOutcome::Unbounded => unreachable!("objective is capped by t <= 1"),
    }
}
