//! A small dense exact simplex solver.
//!
//! Solves `maximize c·u subject to A u <= b, u >= 0` over the rationals,
//! with Bland's rule for termination and an auxiliary-variable phase for
//! infeasible starting dictionaries.

use alloc::vec;
use alloc::vec::Vec;

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, solution: Vec<Rational> },
    Infeasible,
    Unbounded,
}

/// Slack-form dictionary: `x_{basic[i]} = b[i] - sum_j a[i][j] x_{nonbasic[j]}`,
/// objective `v + sum_j c[j] x_{nonbasic[j]}`.
struct Dictionary {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    c: Vec<Rational>,
    v: Rational,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Dictionary {
    fn pivot(&mut self, l: usize, e: usize) {
        let ale = self.a[l][e].clone();
        let inv = ale.recip();
        let n = self.nonbasic.len();
        for j in 0..n {
            if j != e {
                self.a[l][j] = &self.a[l][j] * &inv;
            }
        }
        self.a[l][e] = inv.clone();
        self.b[l] = &self.b[l] * &inv;

        for i in 0..self.b.len() {
            if i == l || self.a[i][e].is_zero() {
                continue;
            }
            let aie = self.a[i][e].clone();
            let delta = &aie * &self.b[l];
            self.b[i] -= delta;
            for j in 0..n {
                if j != e && !self.a[l][j].is_zero() {
                    let d = &aie * &self.a[l][j];
                    self.a[i][j] -= d;
                }
            }
            self.a[i][e] = -(&aie * &inv);
        }

        if !self.c[e].is_zero() {
            let ce = self.c[e].clone();
            self.v += &ce * &self.b[l];
            for j in 0..n {
                if j != e && !self.a[l][j].is_zero() {
                    let d = &ce * &self.a[l][j];
                    self.c[j] -= d;
                }
            }
            self.c[e] = -(&ce * &inv);
        }
        core::mem::swap(&mut self.basic[l], &mut self.nonbasic[e]);
    }

    fn run(&mut self) -> Step {
        loop {
            // Bland: smallest variable label among improving columns.
            let entering = (0..self.nonbasic.len())
                .filter(|&j| self.c[j].is_positive())
                .min_by_key(|&j| self.nonbasic[j]);
            let Some(e) = entering else {
                return Step::Optimal;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.b.len() {
                if !self.a[i][e].is_positive() {
                    continue;
                }
                let ratio = &self.b[i] / &self.a[i][e];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basic[i] < self.basic[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((l, _)) => self.pivot(l, e),
                None => return Step::Unbounded,
            }
        }
    }
}

/// Maximizes `c·u` subject to `A u <= b` and `u >= 0`.
pub fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = b.len();
    let n = c.len();
    debug_assert!(a.iter().all(|r| r.len() == n));

    let mut dict = Dictionary {
        a: a.to_vec(),
        b: b.to_vec(),
        c: c.to_vec(),
        v: Rational::zero(),
        basic: (n..n + m).collect(),
        nonbasic: (0..n).collect(),
    };

    let most_negative = (0..m).filter(|&i| dict.b[i].is_negative()).min_by(|&i, &j| dict.b[i].cmp(&dict.b[j]));
    if let Some(l) = most_negative {
        // Auxiliary problem: maximize -x0 with x0 (label n + m) subtracted in every row.
        let aux = n + m;
        for row in dict.a.iter_mut() {
            row.push(-Rational::one());
        }
        dict.nonbasic.push(aux);
        dict.c = vec![Rational::zero(); n + 1];
        dict.c[n] = -Rational::one();
        dict.pivot(l, n);
        if let Step::Unbounded = dict.run() {
            return LpOutcome::Infeasible;
        }
        if !dict.v.is_zero() {
            return LpOutcome::Infeasible;
        }
        if let Some(row) = dict.basic.iter().position(|&x| x == aux) {
            let Some(e) = (0..dict.nonbasic.len()).find(|&j| !dict.a[row][j].is_zero()) else {
                return LpOutcome::Infeasible;
            };
            dict.pivot(row, e);
        }
        let col = dict.nonbasic.iter().position(|&x| x == aux).expect("auxiliary variable is nonbasic");
        for row in dict.a.iter_mut() {
            row.remove(col);
        }
        dict.nonbasic.remove(col);

        // Re-express the original objective in the current nonbasic variables.
        let mut newc = vec![Rational::zero(); dict.nonbasic.len()];
        let mut v = Rational::zero();
        for (j, &label) in dict.nonbasic.iter().enumerate() {
            if label < n {
                newc[j] += &c[label];
            }
        }
        for (i, &label) in dict.basic.iter().enumerate() {
            if label < n && !c[label].is_zero() {
                v += &c[label] * &dict.b[i];
                for j in 0..dict.nonbasic.len() {
                    let d = &c[label] * &dict.a[i][j];
                    newc[j] -= d;
                }
            }
        }
        dict.c = newc;
        dict.v = v;
    }

    match dict.run() {
        Step::Unbounded => LpOutcome::Unbounded,
        Step::Optimal => {
            let mut solution = vec![Rational::zero(); n];
            for (i, &label) in dict.basic.iter().enumerate() {
                if label < n {
                    solution[label] = dict.b[i].clone();
                }
            }
            LpOutcome::Optimal { value: dict.v, solution }
        }
    }
}
