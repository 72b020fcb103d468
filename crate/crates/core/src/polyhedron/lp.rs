//! Exact rational linear programming: dense two-phase simplex with Bland's
//! rule, so every pivot terminates and every certificate is exact.

use num_traits::{One, Signed, Zero};

use crate::kernel::{dot, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Le,
    Eq,
    Ge,
}

/// All variables are free; bounds go in as rows.
#[derive(Clone, Debug)]
pub struct LpProblem {
    pub n: usize,
    pub rows: Vec<(Vec<Rat>, Rel, Rat)>,
    pub objective: Vec<Rat>,
    pub maximize: bool,
}

#[derive(Clone, Debug)]
pub enum LpResult {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, x: Vec<Rat> },
}

impl LpResult {
    pub fn optimal(self) -> Option<(Rat, Vec<Rat>)> {
        match self {
            LpResult::Optimal { value, x } => Some((value, x)),
            _ => None,
        }
    }
}

/// Tableau over columns of the standardized program (split vars + slacks).
struct Tableau {
    m: usize,
    n: usize,
    a: Vec<Vec<Rat>>,
    b: Vec<Rat>,
    basis: Vec<usize>,
}

enum Phase2 {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.a[r][c].clone();
        for j in 0..self.n {
            let v = &self.a[r][j] / &inv;
            self.a[r][j] = v;
        }
        let v = &self.b[r] / &inv;
        self.b[r] = v;
        for i in 0..self.m {
            if i == r || self.a[i][c].is_zero() {
                continue;
            }
            let f = self.a[i][c].clone();
            for j in 0..self.n {
                let v = &self.a[i][j] - &f * &self.a[r][j];
                self.a[i][j] = v;
            }
            let v = &self.b[i] - &f * &self.b[r];
            self.b[i] = v;
        }
        self.basis[r] = c;
    }

    /// Minimizes c over the current basic feasible solution with Bland's rule.
    fn optimize(&mut self, c: &[Rat]) -> Phase2 {
        loop {
            // Reduced costs from scratch: r_j = c_j - c_B . column_j.
            let cb: Vec<Rat> = self.basis.iter().map(|&j| c[j].clone()).collect();
            let mut enter = None;
            for j in 0..self.n {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut rc = c[j].clone();
                for i in 0..self.m {
                    if !cb[i].is_zero() && !self.a[i][j].is_zero() {
                        rc -= &cb[i] * &self.a[i][j];
                    }
                }
                if rc.is_negative() {
                    enter = Some(j);
                    break;
                }
            }
            let Some(col) = enter else {
                return Phase2::Optimal;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.m {
                if self.a[i][col].is_positive() {
                    let ratio = &self.b[i] / &self.a[i][col];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leave else {
                return Phase2::Unbounded;
            };
            self.pivot(row, col);
        }
    }

    fn solution(&self) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); self.n];
        for (i, &j) in self.basis.iter().enumerate() {
            x[j] = self.b[i].clone();
        }
        x
    }
}

pub fn solve_lp(p: &LpProblem) -> LpResult {
    assert_eq!(p.objective.len(), p.n);
    let n_free = p.n;
    // Standard form: x = u - v, slack per inequality row, all columns >= 0.
    let n_slack = p.rows.iter().filter(|(_, rel, _)| *rel != Rel::Eq).count();
    let n_cols = 2 * n_free + n_slack;
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(p.rows.len());
    let mut b: Vec<Rat> = Vec::with_capacity(p.rows.len());
    let mut slack = 0;
    for (coeffs, rel, rhs) in &p.rows {
        assert_eq!(coeffs.len(), n_free);
        let mut row = vec![Rat::zero(); n_cols];
        for (j, cj) in coeffs.iter().enumerate() {
            row[2 * j] = cj.clone();
            row[2 * j + 1] = -cj.clone();
        }
        match rel {
            Rel::Le => {
                row[2 * n_free + slack] = Rat::one();
                slack += 1;
            }
            Rel::Ge => {
                row[2 * n_free + slack] = -Rat::one();
                slack += 1;
            }
            Rel::Eq => {}
        }
        a.push(row);
        b.push(rhs.clone());
    }
    // Phase 1: nonnegative right-hand sides, one artificial per row.
    let m = a.len();
    for i in 0..m {
        if b[i].is_negative() {
            for v in &mut a[i] {
                *v = -v.clone();
            }
            b[i] = -b[i].clone();
        }
    }
    let total = n_cols + m;
    for (i, row) in a.iter_mut().enumerate() {
        row.resize(total, Rat::zero());
        row[n_cols + i] = Rat::one();
    }
    let mut t = Tableau {
        m,
        n: total,
        a,
        b,
        basis: (n_cols..total).collect(),
    };
    let mut phase1 = vec![Rat::zero(); total];
    for j in n_cols..total {
        phase1[j] = Rat::one();
    }
    match t.optimize(&phase1) {
        Phase2::Unbounded => unreachable!("phase 1 is bounded below by zero"),
        Phase2::Optimal => {}
    }
    let p1: Rat = t
        .basis
        .iter()
        .zip(&t.b)
        .filter(|(&j, _)| j >= n_cols)
        .map(|(_, bi)| bi.clone())
        .sum();
    if p1.is_positive() {
        return LpResult::Infeasible;
    }
    // Drive leftover artificials out of the basis; rows that cannot pivot are
    // redundant and dropped.
    let mut drop_rows = Vec::new();
    for i in 0..t.m {
        if t.basis[i] < n_cols {
            continue;
        }
        match (0..n_cols).find(|&j| !t.a[i][j].is_zero()) {
            Some(j) => t.pivot(i, j),
            None => drop_rows.push(i),
        }
    }
    if !drop_rows.is_empty() {
        for &i in drop_rows.iter().rev() {
            t.a.remove(i);
            t.b.remove(i);
            t.basis.remove(i);
        }
        t.m -= drop_rows.len();
    }
    // Phase 2 on the original columns; artificial columns are zeroed so they
    // never re-enter.
    let mut cost = vec![Rat::zero(); total];
    for j in 0..n_free {
        let cj = if p.maximize { -p.objective[j].clone() } else { p.objective[j].clone() };
        cost[2 * j] = cj.clone();
        cost[2 * j + 1] = -cj;
    }
    for row in &mut t.a {
        for j in n_cols..total {
            row[j] = Rat::zero();
        }
    }
    match t.optimize(&cost) {
        Phase2::Unbounded => LpResult::Unbounded,
        Phase2::Optimal => {
            let sol = t.solution();
            let x: Vec<Rat> = (0..n_free).map(|j| &sol[2 * j] - &sol[2 * j + 1]).collect();
            let value = dot(&p.objective, &x);
            LpResult::Optimal { value, x }
        }
    }
}

/// A point satisfying all weak rows `a.x >= b` and equations, if any exists.
pub fn lp_feasible(
    n: usize,
    ge_rows: &[(Vec<Rat>, Rat)],
    eq_rows: &[(Vec<Rat>, Rat)],
) -> Option<Vec<Rat>> {
    let mut rows: Vec<(Vec<Rat>, Rel, Rat)> = Vec::new();
    for (a, b) in ge_rows {
        rows.push((a.clone(), Rel::Ge, b.clone()));
    }
    for (e, c) in eq_rows {
        rows.push((e.clone(), Rel::Eq, c.clone()));
    }
    let p = LpProblem { n, rows, objective: vec![Rat::zero(); n], maximize: false };
    solve_lp(&p).optimal().map(|(_, x)| x)
}

/// A point with `a.x > b` on every strict row, `a.x >= b` on weak rows and
/// `e.x = c` on equations.  Strictness is certified by maximizing a slack
/// bounded by one.
pub fn strict_lp_feasible(
    n: usize,
    strict_rows: &[(Vec<Rat>, Rat)],
    ge_rows: &[(Vec<Rat>, Rat)],
    eq_rows: &[(Vec<Rat>, Rat)],
) -> Option<Vec<Rat>> {
    if strict_rows.is_empty() {
        return lp_feasible(n, ge_rows, eq_rows);
    }
    // Variables: x .. then eps.
    let mut rows: Vec<(Vec<Rat>, Rel, Rat)> = Vec::new();
    for (a, b) in strict_rows {
        let mut row = a.clone();
        row.push(-Rat::one());
        rows.push((row, Rel::Ge, b.clone()));
    }
    for (a, b) in ge_rows {
        let mut row = a.clone();
        row.push(Rat::zero());
        rows.push((row, Rel::Ge, b.clone()));
    }
    for (e, c) in eq_rows {
        let mut row = e.clone();
        row.push(Rat::zero());
        rows.push((row, Rel::Eq, c.clone()));
    }
    let mut eps_cap = vec![Rat::zero(); n + 1];
    eps_cap[n] = Rat::one();
    rows.push((eps_cap.clone(), Rel::Le, Rat::one()));
    let p = LpProblem { n: n + 1, rows, objective: eps_cap, maximize: true };
    match solve_lp(&p) {
        LpResult::Optimal { value, mut x } if value.is_positive() => {
            x.pop();
            Some(x)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{rat, rat_int};

    fn rv(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn maximize_over_a_triangle() {
        // max x+y st x>=0, y>=0, x+2y<=4, 3x+y<=6: optimum at (8/5, 6/5).
        let p = LpProblem {
            n: 2,
            rows: vec![
                (rv(&[1, 0]), Rel::Ge, rat_int(0)),
                (rv(&[0, 1]), Rel::Ge, rat_int(0)),
                (rv(&[1, 2]), Rel::Le, rat_int(4)),
                (rv(&[3, 1]), Rel::Le, rat_int(6)),
            ],
            objective: rv(&[1, 1]),
            maximize: true,
        };
        let (val, x) = solve_lp(&p).optimal().unwrap();
        assert_eq!(val, rat(14, 5));
        assert_eq!(x, vec![rat(8, 5), rat(6, 5)]);
    }

    #[test]
    fn infeasible_and_unbounded_are_detected() {
        let inf = LpProblem {
            n: 1,
            rows: vec![(rv(&[1]), Rel::Ge, rat_int(2)), (rv(&[1]), Rel::Le, rat_int(1))],
            objective: rv(&[1]),
            maximize: false,
        };
        assert!(matches!(solve_lp(&inf), LpResult::Infeasible));
        let unb = LpProblem {
            n: 1,
            rows: vec![(rv(&[1]), Rel::Ge, rat_int(0))],
            objective: rv(&[1]),
            maximize: true,
        };
        assert!(matches!(solve_lp(&unb), LpResult::Unbounded));
    }

    #[test]
    fn equality_rows_bind() {
        // min x+y st x+y+z = 3, z = 1, x,y >= 0.
        let p = LpProblem {
            n: 3,
            rows: vec![
                (rv(&[1, 1, 1]), Rel::Eq, rat_int(3)),
                (rv(&[0, 0, 1]), Rel::Eq, rat_int(1)),
                (rv(&[1, 0, 0]), Rel::Ge, rat_int(0)),
                (rv(&[0, 1, 0]), Rel::Ge, rat_int(0)),
            ],
            objective: rv(&[1, 1, 0]),
            maximize: false,
        };
        let (val, x) = solve_lp(&p).optimal().unwrap();
        assert_eq!(val, rat_int(2));
        assert_eq!(&x[0] + &x[1], rat_int(2));
        assert_eq!(x[2], rat_int(1));
    }

    #[test]
    fn degenerate_cycling_candidate_terminates() {
        // Beale's classic cycling example; Bland's rule must terminate.
        let p = LpProblem {
            n: 4,
            rows: vec![
                (
                    vec![rat(1, 4), rat_int(-60), rat(-1, 25), rat_int(9)],
                    Rel::Le,
                    rat_int(0),
                ),
                (
                    vec![rat(1, 2), rat_int(-90), rat(-1, 50), rat_int(3)],
                    Rel::Le,
                    rat_int(0),
                ),
                (rv(&[0, 0, 1, 0]), Rel::Le, rat_int(1)),
                (rv(&[1, 0, 0, 0]), Rel::Ge, rat_int(0)),
                (rv(&[0, 1, 0, 0]), Rel::Ge, rat_int(0)),
                (rv(&[0, 0, 1, 0]), Rel::Ge, rat_int(0)),
                (rv(&[0, 0, 0, 1]), Rel::Ge, rat_int(0)),
            ],
            objective: vec![rat(3, 4), rat_int(-150), rat(1, 50), rat_int(-6)],
            maximize: true,
        };
        let (val, _) = solve_lp(&p).optimal().unwrap();
        assert_eq!(val, rat(1, 20));
    }

    #[test]
    fn strict_feasibility_distinguishes_open_sets() {
        // x > 0, x < 1 is satisfiable; x > 0, -x > 0 is not.
        let ok = strict_lp_feasible(
            1,
            &[(rv(&[1]), rat_int(0)), (rv(&[-1]), rat_int(-1))],
            &[],
            &[],
        );
        let x = ok.unwrap();
        assert!(x[0].is_positive() && x[0] < rat_int(1));
        let bad = strict_lp_feasible(1, &[(rv(&[1]), rat_int(0)), (rv(&[-1]), rat_int(0))], &[], &[]);
        assert!(bad.is_none());
    }

    #[test]
    fn strict_rows_combine_with_equations() {
        // On the plane x+y=1 find a point with x > 0 and y > 0.
        let x = strict_lp_feasible(
            2,
            &[(rv(&[1, 0]), rat_int(0)), (rv(&[0, 1]), rat_int(0))],
            &[],
            &[(rv(&[1, 1]), rat_int(1))],
        )
        .unwrap();
        assert!(x[0].is_positive() && x[1].is_positive());
        assert_eq!(&x[0] + &x[1], rat_int(1));
    }
}
