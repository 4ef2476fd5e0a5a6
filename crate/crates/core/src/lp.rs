//! Exact rational linear programming in standard form:
//! `min c^T v  s.t.  U v = w, v >= 0`.
//!
//! Two-phase revised simplex with Bland's rule and a dense exact basis
//! inverse. Every optimal solution carries a dual vector; primal feasibility,
//! dual feasibility, and a zero duality gap are checked exactly and together
//! form the optimality certificate.

use num_traits::Zero;

use crate::matrix::SparseRationalMatrix;
use crate::Rat;

/// `min cost . v` subject to `matrix . v = rhs`, `v >= 0`.
#[derive(Debug, Clone)]
pub struct StandardLp {
    pub matrix: SparseRationalMatrix,
    pub rhs: Vec<Rat>,
    pub cost: Vec<Rat>,
}

impl StandardLp {
    pub fn new(matrix: SparseRationalMatrix, rhs: Vec<Rat>, cost: Vec<Rat>) -> Self {
        assert_eq!(matrix.nrows(), rhs.len(), "rhs length mismatch");
        assert_eq!(matrix.ncols(), cost.len(), "cost length mismatch");
        Self { matrix, rhs, cost }
    }

    /// Textual dump: the objective row, then one `= rhs` row per constraint,
    /// all entries exact rationals separated by spaces.
    pub fn dump(&self) -> String {
        let mut out = String::from("min");
        for c in &self.cost {
            out.push(' ');
            out.push_str(&c.to_string());
        }
        out.push('\n');
        for i in 0..self.matrix.nrows() {
            let row: Vec<String> = (0..self.matrix.ncols())
                .map(|j| self.matrix.entry(i, j).to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push_str(" = ");
            out.push_str(&self.rhs[i].to_string());
            out.push('\n');
        }
        out
    }
}

/// A vertex solution together with its dual certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub primal: Vec<Rat>,
    pub dual: Vec<Rat>,
    pub value: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpConfig {
    /// Recompute the basis inverse from scratch every this many pivots.
    /// The explicit inverse is exact either way, so this is disabled by
    /// default; it remains available as a consistency safeguard.
    pub refactor_interval: usize,
}

impl Default for LpConfig {
    fn default() -> Self {
        Self { refactor_interval: usize::MAX }
    }
}

/// Exact verification of an optimality certificate: primal feasibility, dual
/// feasibility, and zero duality gap.
pub fn verify_certificate(lp: &StandardLp, sol: &LpSolution) -> bool {
    let t = lp.matrix.ncols();
    let m = lp.matrix.nrows();
    if sol.primal.len() != t || sol.dual.len() != m {
        return false;
    }
    if sol.primal.iter().any(|v| v < &Rat::zero()) {
        return false;
    }
    if lp.matrix.mul_vec(&sol.primal) != lp.rhs {
        return false;
    }
    for j in 0..t {
        if lp.matrix.col_dot(&sol.dual, j) > lp.cost[j] {
            return false;
        }
    }
    let primal_value: Rat = sol
        .primal
        .iter()
        .zip(&lp.cost)
        .map(|(v, c)| v * c)
        .sum();
    let dual_value: Rat = sol.dual.iter().zip(&lp.rhs).map(|(l, w)| l * w).sum();
    primal_value == sol.value && dual_value == sol.value
}

pub fn solve_standard(lp: &StandardLp) -> LpOutcome {
    solve_standard_with(lp, &LpConfig::default())
}

pub fn solve_standard_with(lp: &StandardLp, config: &LpConfig) -> LpOutcome {
    Solver::new(lp, config).solve()
}

enum PhaseEnd {
    Optimal,
    Unbounded,
}

struct Solver<'a> {
    lp: &'a StandardLp,
    config: &'a LpConfig,
    t: usize,
    /// Active original row indices, in working order.
    rows: Vec<usize>,
    /// Per original row: whether the row was negated to make the rhs
    /// nonnegative.
    flip: Vec<bool>,
    /// Active rhs, sign-applied.
    w: Vec<Rat>,
    /// Original row index -> active position, `usize::MAX` when deleted.
    pos_of: Vec<usize>,
    /// Per active row: the basic variable. Real variables are `0..t`,
    /// the artificial of original row `i` is `t + i`.
    basis: Vec<usize>,
    binv: Vec<Vec<Rat>>,
    xb: Vec<Rat>,
    pivots_since_refactor: usize,
}

impl<'a> Solver<'a> {
    fn new(lp: &'a StandardLp, config: &'a LpConfig) -> Self {
        let m = lp.matrix.nrows();
        let flip: Vec<bool> = lp.rhs.iter().map(|v| v < &Rat::zero()).collect();
        let w: Vec<Rat> = lp
            .rhs
            .iter()
            .zip(&flip)
            .map(|(v, &f)| if f { -v } else { v.clone() })
            .collect();
        let rows: Vec<usize> = (0..m).collect();
        let basis: Vec<usize> = rows.iter().map(|&i| lp.matrix.ncols() + i).collect();
        let binv: Vec<Vec<Rat>> = (0..m)
            .map(|r| {
                (0..m)
                    .map(|c| if r == c { Rat::from_integer(1.into()) } else { Rat::zero() })
                    .collect()
            })
            .collect();
        let xb = w.clone();
        let pos_of = (0..m).collect();
        Self {
            lp,
            config,
            t: lp.matrix.ncols(),
            rows,
            flip,
            w,
            pos_of,
            basis,
            binv,
            xb,
            pivots_since_refactor: 0,
        }
    }

    fn m(&self) -> usize {
        self.rows.len()
    }

    fn rebuild_pos_of(&mut self) {
        self.pos_of = vec![usize::MAX; self.lp.matrix.nrows()];
        for (p, &orig) in self.rows.iter().enumerate() {
            self.pos_of[orig] = p;
        }
    }

    /// Column of the working system for variable `v`, as sparse
    /// `(active_row, value)` pairs.
    fn gather(&self, v: usize) -> Vec<(usize, Rat)> {
        if v < self.t {
            let mut col = Vec::new();
            for (orig, value) in self.lp.matrix.column(v) {
                let p = self.pos_of[*orig];
                if p == usize::MAX {
                    continue;
                }
                let value = if self.flip[*orig] { -value } else { value.clone() };
                col.push((p, value));
            }
            col.sort_by_key(|(p, _)| *p);
            col
        } else {
            let orig = v - self.t;
            match self.pos_of.get(orig) {
                Some(&p) if p != usize::MAX => vec![(p, Rat::from_integer(1.into()))],
                _ => Vec::new(),
            }
        }
    }

    fn direction(&self, v: usize) -> Vec<Rat> {
        let m = self.m();
        let col = self.gather(v);
        let mut d = vec![Rat::zero(); m];
        for (r, row) in self.binv.iter().enumerate() {
            let mut acc = Rat::zero();
            for (p, value) in &col {
                let entry = &row[*p];
                if !entry.is_zero() {
                    acc += entry * value;
                }
            }
            d[r] = acc;
        }
        d
    }

    /// `lambda = c_B^T binv` for the given cost function.
    fn duals(&self, cost: &dyn Fn(usize) -> Rat) -> Vec<Rat> {
        let m = self.m();
        let mut lambda = vec![Rat::zero(); m];
        for (p, &var) in self.basis.iter().enumerate() {
            let c = cost(var);
            if c.is_zero() {
                continue;
            }
            for (j, l) in lambda.iter_mut().enumerate() {
                let entry = &self.binv[p][j];
                if !entry.is_zero() {
                    *l += &c * entry;
                }
            }
        }
        lambda
    }

    fn reduced_cost(&self, lambda: &[Rat], v: usize, cost: &dyn Fn(usize) -> Rat) -> Rat {
        let mut rc = cost(v);
        for (p, value) in self.gather(v) {
            rc -= &lambda[p] * &value;
        }
        rc
    }

    fn refactor(&mut self) {
        let m = self.m();
        // Augmented Gauss-Jordan inversion of the basis matrix.
        let mut aug: Vec<Vec<Rat>> = (0..m)
            .map(|r| {
                let mut row = vec![Rat::zero(); 2 * m];
                row[m + r] = Rat::from_integer(1.into());
                row
            })
            .collect();
        for (c, &var) in self.basis.iter().enumerate() {
            for (p, value) in self.gather(var) {
                aug[p][c] = value;
            }
        }
        for col in 0..m {
            let pivot = (col..m)
                .find(|&r| !aug[r][col].is_zero())
                .expect("basis matrix is singular");
            aug.swap(col, pivot);
            let inv = aug[col][col].recip();
            for entry in aug[col].iter_mut() {
                *entry *= &inv;
            }
            for r in 0..m {
                if r == col || aug[r][col].is_zero() {
                    continue;
                }
                let factor = std::mem::replace(&mut aug[r][col], Rat::zero());
                for j in (col + 1)..(2 * m) {
                    let delta = &factor * &aug[col][j];
                    aug[r][j] -= delta;
                }
            }
        }
        self.binv = aug.into_iter().map(|row| row[m..].to_vec()).collect();
        self.xb = (0..m)
            .map(|r| {
                let mut acc = Rat::zero();
                for (j, wv) in self.w.iter().enumerate() {
                    acc += &self.binv[r][j] * wv;
                }
                acc
            })
            .collect();
        self.pivots_since_refactor = 0;
    }

    fn pivot(&mut self, entering: usize, leaving_pos: usize, d: &[Rat]) {
        let m = self.m();
        let theta = &self.xb[leaving_pos] / &d[leaving_pos];
        let inv = d[leaving_pos].recip();
        let mut pivot_row_support = Vec::new();
        for j in 0..m {
            if self.binv[leaving_pos][j].is_zero() {
                continue;
            }
            self.binv[leaving_pos][j] *= &inv;
            pivot_row_support.push(j);
        }
        for r in 0..m {
            if r == leaving_pos || d[r].is_zero() {
                continue;
            }
            for &j in &pivot_row_support {
                let delta = &d[r] * &self.binv[leaving_pos][j];
                self.binv[r][j] -= delta;
            }
            if !theta.is_zero() {
                let delta = &d[r] * &theta;
                self.xb[r] -= delta;
            }
        }
        self.xb[leaving_pos] = theta;
        self.basis[leaving_pos] = entering;
        self.pivots_since_refactor += 1;
        if self.pivots_since_refactor >= self.config.refactor_interval {
            self.refactor();
        }
    }

    /// Bland's rule: entering is the lowest-index real variable with negative
    /// reduced cost; the leaving row is the minimum-ratio row, ties broken by
    /// the lowest basic variable index.
    fn run_phase(&mut self, cost: &dyn Fn(usize) -> Rat) -> PhaseEnd {
        loop {
            let lambda = self.duals(cost);
            let mut entering = None;
            for v in 0..self.t {
                if self.basis.contains(&v) {
                    continue;
                }
                if self.reduced_cost(&lambda, v, cost) < Rat::zero() {
                    entering = Some(v);
                    break;
                }
            }
            let Some(entering) = entering else {
                return PhaseEnd::Optimal;
            };
            let d = self.direction(entering);
            let mut leaving: Option<usize> = None;
            for p in 0..self.m() {
                if d[p] <= Rat::zero() {
                    continue;
                }
                match leaving {
                    None => leaving = Some(p),
                    Some(best) => {
                        let cmp = (&self.xb[p] * &d[best]).cmp(&(&self.xb[best] * &d[p]));
                        if cmp == std::cmp::Ordering::Less
                            || (cmp == std::cmp::Ordering::Equal
                                && self.basis[p] < self.basis[best])
                        {
                            leaving = Some(p);
                        }
                    }
                }
            }
            let Some(leaving) = leaving else {
                return PhaseEnd::Unbounded;
            };
            self.pivot(entering, leaving, &d);
        }
    }

    /// Eliminate basic artificials after phase 1: pivot in a real column
    /// where possible, otherwise drop the (redundant) row.
    fn drive_out_artificials(&mut self) {
        loop {
            let Some(p) = self.basis.iter().position(|&v| v >= self.t) else {
                return;
            };
            debug_assert!(self.xb[p].is_zero(), "basic artificial with nonzero value");
            let mut pivot_col = None;
            for v in 0..self.t {
                if self.basis.contains(&v) {
                    continue;
                }
                let d = self.direction(v);
                if !d[p].is_zero() {
                    pivot_col = Some((v, d));
                    break;
                }
            }
            match pivot_col {
                Some((v, d)) => {
                    // Degenerate exchange at value zero; feasibility is kept.
                    let m = self.m();
                    let inv = d[p].recip();
                    for j in 0..m {
                        self.binv[p][j] *= &inv;
                    }
                    for r in 0..m {
                        if r == p || d[r].is_zero() {
                            continue;
                        }
                        for j in 0..m {
                            let delta = &d[r] * &self.binv[p][j];
                            self.binv[r][j] -= delta;
                        }
                    }
                    self.basis[p] = v;
                }
                None => {
                    // The row is a linear combination of the others.
                    self.rows.remove(p);
                    self.w.remove(p);
                    self.basis.remove(p);
                    self.rebuild_pos_of();
                    self.refactor();
                }
            }
        }
    }

    fn solve(mut self) -> LpOutcome {
        let phase1_cost = |v: usize| -> Rat {
            if v < self.lp.matrix.ncols() {
                Rat::zero()
            } else {
                Rat::from_integer(1.into())
            }
        };
        match self.run_phase(&phase1_cost) {
            PhaseEnd::Optimal => {}
            PhaseEnd::Unbounded => unreachable!("phase 1 objective is bounded below"),
        }
        let infeasibility: Rat = self
            .basis
            .iter()
            .zip(&self.xb)
            .filter(|(&v, _)| v >= self.t)
            .map(|(_, x)| x.clone())
            .sum();
        if !infeasibility.is_zero() {
            return LpOutcome::Infeasible;
        }
        self.drive_out_artificials();

        let costs: Vec<Rat> = self.lp.cost.clone();
        let t = self.t;
        let phase2_cost = move |v: usize| -> Rat {
            if v < t {
                costs[v].clone()
            } else {
                Rat::zero()
            }
        };
        match self.run_phase(&phase2_cost) {
            PhaseEnd::Unbounded => return LpOutcome::Unbounded,
            PhaseEnd::Optimal => {}
        }

        let mut primal = vec![Rat::zero(); self.t];
        for (p, &v) in self.basis.iter().enumerate() {
            if v < self.t {
                primal[v] = self.xb[p].clone();
            }
        }
        let lambda_active = self.duals(&phase2_cost);
        let mut dual = vec![Rat::zero(); self.lp.matrix.nrows()];
        for (p, &orig) in self.rows.iter().enumerate() {
            dual[orig] = if self.flip[orig] {
                -lambda_active[p].clone()
            } else {
                lambda_active[p].clone()
            };
        }
        let value: Rat = primal.iter().zip(&self.lp.cost).map(|(v, c)| v * c).sum();
        LpOutcome::Optimal(LpSolution { primal, dual, value })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn rq(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn l1_recast_single_row() {
        // min p + q s.t. p - q = 1: optimum (1, 0), value 1, dual (1).
        let m = SparseRationalMatrix::from_columns(1, vec![vec![(0, r(1))], vec![(0, r(-1))]]);
        let lp = StandardLp::new(m, vec![r(1)], vec![r(1), r(1)]);
        match solve_standard(&lp) {
            LpOutcome::Optimal(sol) => {
                assert_eq!(sol.primal, vec![r(1), r(0)]);
                assert_eq!(sol.value, r(1));
                assert_eq!(sol.dual, vec![r(1)]);
                assert!(verify_certificate(&lp, &sol));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn vertex_optimum() {
        // min v1 + v2 s.t. v1 + v2 = 2: value 2 at a vertex.
        let m = SparseRationalMatrix::from_columns(1, vec![vec![(0, r(1))], vec![(0, r(1))]]);
        let lp = StandardLp::new(m, vec![r(2)], vec![r(1), r(1)]);
        match solve_standard(&lp) {
            LpOutcome::Optimal(sol) => {
                assert_eq!(sol.value, r(2));
                let zero_count = sol.primal.iter().filter(|v| v.is_zero()).count();
                assert_eq!(zero_count, 1, "solution must be a vertex");
                assert!(verify_certificate(&lp, &sol));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_contradiction() {
        // 0 * v = 1 is a contradiction.
        let m = SparseRationalMatrix::from_columns(1, vec![vec![]]);
        let lp = StandardLp::new(m, vec![r(1)], vec![r(1)]);
        assert_eq!(solve_standard(&lp), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_direction() {
        // min -v1 s.t. v1 - v2 = 0: ray (1,1) with negative cost.
        let m = SparseRationalMatrix::from_columns(1, vec![vec![(0, r(1))], vec![(0, r(-1))]]);
        let lp = StandardLp::new(m, vec![r(0)], vec![r(-1), r(0)]);
        assert_eq!(solve_standard(&lp), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_dropped() {
        // Duplicate constraints: x + y = 2 stated twice.
        let m = SparseRationalMatrix::from_columns(
            2,
            vec![vec![(0, r(1)), (1, r(1))], vec![(0, r(1)), (1, r(1))]],
        );
        let lp = StandardLp::new(m, vec![r(2), r(2)], vec![r(1), r(3)]);
        match solve_standard(&lp) {
            LpOutcome::Optimal(sol) => {
                assert_eq!(sol.value, r(2));
                assert_eq!(sol.primal, vec![r(2), r(0)]);
                assert!(verify_certificate(&lp, &sol));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn tampered_certificates_fail() {
        let m = SparseRationalMatrix::from_columns(1, vec![vec![(0, r(1))], vec![(0, r(-1))]]);
        let lp = StandardLp::new(m, vec![r(1)], vec![r(1), r(1)]);
        let LpOutcome::Optimal(sol) = solve_standard(&lp) else {
            panic!("expected optimal");
        };
        let mut bad_value = sol.clone();
        bad_value.value += r(1);
        assert!(!verify_certificate(&lp, &bad_value));
        let mut bad_sign = sol.clone();
        bad_sign.primal[1] = r(-1);
        assert!(!verify_certificate(&lp, &bad_sign));
        let mut bad_dual = sol;
        bad_dual.dual[0] = r(5);
        assert!(!verify_certificate(&lp, &bad_dual));
    }

    #[test]
    fn fractional_data() {
        // min v1 + v2 s.t. (1/2)v1 + (1/3)v2 = 1.
        let m = SparseRationalMatrix::from_columns(
            1,
            vec![vec![(0, rq(1, 2))], vec![(0, rq(1, 3))]],
        );
        let lp = StandardLp::new(m, vec![r(1)], vec![r(1), r(1)]);
        match solve_standard(&lp) {
            LpOutcome::Optimal(sol) => {
                assert_eq!(sol.value, r(2));
                assert_eq!(sol.primal, vec![r(2), r(0)]);
                assert!(verify_certificate(&lp, &sol));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn dump_format() {
        let m = SparseRationalMatrix::from_columns(1, vec![vec![(0, r(1))], vec![(0, rq(-1, 2))]]);
        let lp = StandardLp::new(m, vec![r(1)], vec![r(1), r(2)]);
        assert_eq!(lp.dump(), "min 1 2\n1 -1/2 = 1\n");
    }
}
