//! Exact feasibility of small linear systems by Fourier-Motzkin elimination.

use crate::scalar::ExactScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Le,
    Lt,
    Eq,
}

/// `coef . v  (rel)  rhs`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coef: Vec<ExactScalar>,
    pub rel: Rel,
    pub rhs: ExactScalar,
}

impl Constraint {
    pub fn new(coef: Vec<ExactScalar>, rel: Rel, rhs: ExactScalar) -> Self {
        Constraint { coef, rel, rhs }
    }

    fn is_trivial(&self) -> bool {
        self.coef.iter().all(|c| c.is_zero())
    }

    fn holds_trivially(&self) -> bool {
        let s = self.rhs.signum();
        match self.rel {
            Rel::Le => s >= 0,
            Rel::Lt => s > 0,
            Rel::Eq => s == 0,
        }
    }
}

enum Step {
    /// `v[var] = (rhs - sum_{j != var} coef_j v_j) / coef_var`
    Substitute { var: usize, row: Constraint },
    /// bounds on `v[var]` in terms of later-eliminated variables
    Bounds { var: usize, rows: Vec<Constraint> },
}

/// Returns a solution of the system, or `None` if it is infeasible.
pub fn solve(dim: usize, rows: Vec<Constraint>) -> Option<Vec<ExactScalar>> {
    solve_counting(dim, rows).map(|(v, _)| v)
}

/// Like [`solve`], also reporting how many variables the equalities left free.
pub fn solve_counting(dim: usize, mut rows: Vec<Constraint>) -> Option<(Vec<ExactScalar>, usize)> {
    let mut steps = Vec::new();
    let mut eliminated = vec![false; dim];

    // equalities first, by substitution
    while let Some(pos) = rows.iter().position(|r| r.rel == Rel::Eq && !r.is_trivial()) {
        let row = rows.swap_remove(pos);
        let var = (0..dim).find(|&j| !row.coef[j].is_zero()).unwrap();
        rows = rows.into_iter().map(|r| substitute(&r, &row, var)).collect();
        eliminated[var] = true;
        steps.push(Step::Substitute { var, row });
    }
    if !rows.iter().filter(|r| r.is_trivial()).all(Constraint::holds_trivially) {
        return None;
    }
    rows.retain(|r| !r.is_trivial());

    for var in 0..dim {
        if eliminated[var] {
            continue;
        }
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            match r.coef[var].signum() {
                1 => pos.push(r),
                -1 => neg.push(r),
                _ => rest.push(r),
            }
        }
        for p in &pos {
            for q in &neg {
                // eliminate var: |q_var| * p + p_var * q
                let a = -q.coef[var].clone();
                let b = p.coef[var].clone();
                let coef: Vec<ExactScalar> = (0..dim)
                    .map(|j| &a * &p.coef[j] + &b * &q.coef[j])
                    .collect();
                let rel = if p.rel == Rel::Lt || q.rel == Rel::Lt { Rel::Lt } else { Rel::Le };
                let c = Constraint::new(coef, rel, &a * &p.rhs + &b * &q.rhs);
                if c.is_trivial() {
                    if !c.holds_trivially() {
                        return None;
                    }
                } else {
                    rest.push(c);
                }
            }
        }
        let mut bounds = pos;
        bounds.extend(neg);
        steps.push(Step::Bounds { var, rows: bounds });
        rows = rest;
    }
    debug_assert!(rows.is_empty());
    let free = eliminated.iter().filter(|e| !**e).count();

    let mut v = vec![ExactScalar::zero(); dim];
    for step in steps.iter().rev() {
        match step {
            Step::Bounds { var, rows } => v[*var] = pick(*var, rows, &v)?,
            Step::Substitute { var, row } => {
                let mut acc = row.rhs.clone();
                for j in 0..dim {
                    if j != *var {
                        acc = acc - &row.coef[j] * &v[j];
                    }
                }
                v[*var] = acc / &row.coef[*var];
            }
        }
    }
    Some((v, free))
}

impl Constraint {
    /// Whether the point `v` satisfies this constraint.
    pub fn satisfied_by(&self, v: &[ExactScalar]) -> bool {
        let lhs = self
            .coef
            .iter()
            .zip(v)
            .fold(ExactScalar::zero(), |acc, (c, x)| acc + c * x);
        let s = (&self.rhs - &lhs).signum();
        match self.rel {
            Rel::Le => s >= 0,
            Rel::Lt => s > 0,
            Rel::Eq => s == 0,
        }
    }
}

fn substitute(r: &Constraint, eq: &Constraint, var: usize) -> Constraint {
    if r.coef[var].is_zero() {
        return r.clone();
    }
    // r - (r_var / eq_var) * eq
    let k = &r.coef[var] / &eq.coef[var];
    let coef = r
        .coef
        .iter()
        .zip(&eq.coef)
        .map(|(a, b)| a - &(&k * b))
        .collect();
    Constraint::new(coef, r.rel, &r.rhs - &(&k * &eq.rhs))
}

fn pick(var: usize, rows: &[Constraint], v: &[ExactScalar]) -> Option<ExactScalar> {
    let mut lo: Option<(ExactScalar, bool)> = None;
    let mut hi: Option<(ExactScalar, bool)> = None;
    for r in rows {
        let mut rest = r.rhs.clone();
        for (j, c) in r.coef.iter().enumerate() {
            if j != var && !c.is_zero() {
                rest = rest - c * &v[j];
            }
        }
        let bound = rest / &r.coef[var];
        let strict = r.rel == Rel::Lt;
        if r.coef[var].signum() > 0 {
            if hi.as_ref().is_none_or(|(h, s)| bound < *h || (bound == *h && strict && !s)) {
                hi = Some((bound, strict));
            }
        } else if lo.as_ref().is_none_or(|(l, s)| bound > *l || (bound == *l && strict && !s)) {
            lo = Some((bound, strict));
        }
    }
    let one = ExactScalar::one();
    match (lo, hi) {
        (None, None) => Some(ExactScalar::zero()),
        (Some((l, _)), None) => Some(l + one),
        (None, Some((h, _))) => Some(h - one),
        (Some((l, ls)), Some((h, hs))) => {
            if l < h {
                Some((l + h).half())
            } else if l == h && !ls && !hs {
                Some(l)
            } else {
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> ExactScalar {
        ExactScalar::from_int(v)
    }

    #[test]
    fn box_with_equality() {
        // x + y = 3, 0 <= x < 1, y <= 10
        let rows = vec![
            Constraint::new(vec![s(1), s(1)], Rel::Eq, s(3)),
            Constraint::new(vec![s(-1), s(0)], Rel::Le, s(0)),
            Constraint::new(vec![s(1), s(0)], Rel::Lt, s(1)),
            Constraint::new(vec![s(0), s(1)], Rel::Le, s(10)),
        ];
        let v = solve(2, rows).unwrap();
        assert_eq!(&v[0] + &v[1], s(3));
        assert!(v[0] >= s(0) && v[0] < s(1));
    }

    #[test]
    fn strict_contradiction() {
        // x <= 0 and x > 0
        let rows = vec![
            Constraint::new(vec![s(1)], Rel::Le, s(0)),
            Constraint::new(vec![s(-1)], Rel::Lt, s(0)),
        ];
        assert!(solve(1, rows).is_none());
    }

    #[test]
    fn tight_but_closed() {
        let rows = vec![
            Constraint::new(vec![s(1), s(-1)], Rel::Le, s(0)),
            Constraint::new(vec![s(-1), s(1)], Rel::Le, s(0)),
            Constraint::new(vec![s(0), s(1)], Rel::Le, s(2)),
            Constraint::new(vec![s(0), s(-1)], Rel::Le, s(-2)),
        ];
        assert_eq!(solve(2, rows).unwrap(), vec![s(2), s(2)]);
    }

    #[test]
    fn inconsistent_equalities() {
        let rows = vec![
            Constraint::new(vec![s(1), s(1)], Rel::Eq, s(1)),
            Constraint::new(vec![s(2), s(2)], Rel::Eq, s(3)),
        ];
        assert!(solve(2, rows).is_none());
    }
}
