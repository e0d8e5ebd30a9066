//! Dense two-phase tableau simplex over exact rationals with Bland's rule.
//!
//! The caller's system (free or nonnegative variables, `<=` and `=` rows) is
//! rewritten in standard form `A'x' = b', x' >= 0, b' >= 0`:
//! free variables are split into a positive and a negative part, every `<=`
//! row gets a slack, rows with negative right-hand side are negated, and every
//! row gets an artificial column. The artificial columns start as the identity
//! basis, so after any sequence of pivots they hold `B^-1`; the simplex
//! multipliers of both phases are read off their reduced costs.

use num_traits::{One, Signed, Zero};

use super::{LinearSystem, Relation};
use crate::rational::Rational;

pub(crate) enum PhaseOneResult {
    /// Phase 1 ended with a positive artificial sum. `multipliers[i]` belong to
    /// the original rows and satisfy the Farkas conditions.
    Infeasible {
        multipliers: Vec<Rational>,
    },
    Feasible(Tableau),
}

pub(crate) enum PhaseTwoResult {
    Optimal {
        value: Rational,
        witness: Vec<Rational>,
        /// One multiplier per original row.
        duals: Vec<Rational>,
    },
    Unbounded,
}

#[derive(Clone, Copy)]
enum VarColumns {
    Nonneg(usize),
    Free(usize, usize),
}

pub(crate) struct Tableau {
    rows: Vec<Vec<Rational>>,
    obj: Vec<Rational>,
    basis: Vec<usize>,
    /// First artificial column; columns `>= art_start` are artificial.
    art_start: usize,
    n_cols: usize,
    var_cols: Vec<VarColumns>,
    /// `true` where the original row was negated.
    negated: Vec<bool>,
}

impl Tableau {
    pub(crate) fn build(sys: &LinearSystem) -> Self {
        let n_rows = sys.constraints.len();
        let mut var_cols = Vec::with_capacity(sys.n_vars);
        let mut col = 0;
        for j in 0..sys.n_vars {
            if sys.nonneg[j] {
                var_cols.push(VarColumns::Nonneg(col));
                col += 1;
            } else {
                var_cols.push(VarColumns::Free(col, col + 1));
                col += 2;
            }
        }
        let mut slack_of_row = vec![None; n_rows];
        for (i, c) in sys.constraints.iter().enumerate() {
            if c.relation == Relation::Le {
                slack_of_row[i] = Some(col);
                col += 1;
            }
        }
        let art_start = col;
        let n_cols = art_start + n_rows;

        let mut rows = Vec::with_capacity(n_rows);
        let mut negated = Vec::with_capacity(n_rows);
        for (i, c) in sys.constraints.iter().enumerate() {
            let mut row = vec![Rational::zero(); n_cols + 1];
            for (j, a) in c.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                match var_cols[j] {
                    VarColumns::Nonneg(p) => row[p] = a.clone(),
                    VarColumns::Free(p, q) => {
                        row[p] = a.clone();
                        row[q] = -a;
                    }
                }
            }
            if let Some(s) = slack_of_row[i] {
                row[s] = Rational::one();
            }
            row[n_cols] = c.rhs.clone();
            let neg = c.rhs.is_negative();
            if neg {
                for x in row.iter_mut() {
                    if !x.is_zero() {
                        *x = -&*x;
                    }
                }
            }
            row[art_start + i] = Rational::one();
            rows.push(row);
            negated.push(neg);
        }
        let basis = (0..n_rows).map(|i| art_start + i).collect();
        Tableau {
            rows,
            obj: vec![Rational::zero(); n_cols + 1],
            basis,
            art_start,
            n_cols,
            var_cols,
            negated,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let nz: Vec<usize> = (0..=self.n_cols)
            .filter(|&j| !pivot_row[j].is_zero())
            .collect();
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for &j in &nz {
                let delta = &f * &pivot_row[j];
                row[j] -= delta;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Runs Bland's rule on the current objective row. Returns `false` when
    /// the objective is unbounded below.
    fn optimize(&mut self, allow_artificial: bool) -> bool {
        let limit = if allow_artificial {
            self.n_cols
        } else {
            self.art_start
        };
        loop {
            let Some(enter) = (0..limit).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.n_cols] / &row[enter];
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
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }

    fn set_objective(&mut self, costs: &[Rational]) {
        // reduced costs d_j = c_j - sum_i c_{B_i} a_ij, last entry is -z
        let mut obj = costs.to_vec();
        obj.push(Rational::zero());
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &costs[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (o, a) in obj.iter_mut().zip(row) {
                if !a.is_zero() {
                    *o -= cb * a;
                }
            }
        }
        self.obj = obj;
    }

    /// Row multipliers `pi_i = c_art - d_art_i` mapped back to the caller's
    /// row orientation.
    fn row_multipliers(&self, art_cost: &Rational) -> Vec<Rational> {
        (0..self.rows.len())
            .map(|i| {
                let pi = art_cost - &self.obj[self.art_start + i];
                if self.negated[i] {
                    -pi
                } else {
                    pi
                }
            })
            .collect()
    }

    pub(crate) fn phase_one(mut self) -> PhaseOneResult {
        let mut costs = vec![Rational::zero(); self.n_cols];
        for c in costs.iter_mut().skip(self.art_start) {
            *c = Rational::one();
        }
        self.set_objective(&costs);
        let bounded = self.optimize(true);
        debug_assert!(bounded, "phase one is bounded below by zero");
        let w = -&self.obj[self.n_cols];
        if w.is_positive() {
            let pi = self.row_multipliers(&Rational::one());
            let multipliers = pi.iter().map(|p| -p / &w).collect();
            return PhaseOneResult::Infeasible { multipliers };
        }
        // Drive zero-level artificials out of the basis where possible. Rows
        // where that is impossible are redundant and stay inert.
        for r in 0..self.rows.len() {
            if self.basis[r] < self.art_start {
                continue;
            }
            if let Some(c) = (0..self.art_start).find(|&j| !self.rows[r][j].is_zero()) {
                self.pivot(r, c);
            }
        }
        PhaseOneResult::Feasible(self)
    }

    pub(crate) fn phase_two(mut self, objective: &[Rational]) -> PhaseTwoResult {
        let mut costs = vec![Rational::zero(); self.n_cols];
        for (j, c) in objective.iter().enumerate() {
            match self.var_cols[j] {
                VarColumns::Nonneg(p) => costs[p] = c.clone(),
                VarColumns::Free(p, q) => {
                    costs[p] = c.clone();
                    costs[q] = -c;
                }
            }
        }
        self.set_objective(&costs);
        if !self.optimize(false) {
            return PhaseTwoResult::Unbounded;
        }
        let witness = self.primal_values();
        let value = -&self.obj[self.n_cols];
        let duals = self.row_multipliers(&Rational::zero());
        PhaseTwoResult::Optimal {
            value,
            witness,
            duals,
        }
    }

    pub(crate) fn primal_values(&self) -> Vec<Rational> {
        let mut col_val = vec![Rational::zero(); self.n_cols];
        for (i, &b) in self.basis.iter().enumerate() {
            col_val[b] = self.rows[i][self.n_cols].clone();
        }
        self.var_cols
            .iter()
            .map(|vc| match *vc {
                VarColumns::Nonneg(p) => col_val[p].clone(),
                VarColumns::Free(p, q) => &col_val[p] - &col_val[q],
            })
            .collect()
    }
}
