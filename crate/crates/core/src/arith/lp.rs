//! Exact two-phase simplex over the rationals.
//!
//! Variables are free (unrestricted in sign). Internally each variable is
//! split as `x = x⁺ − x⁻`, inequalities receive slack or surplus columns and
//! every row that has no natural basic column receives an artificial one.
//! Pivoting follows Bland's rule, so the method terminates on degenerate
//! problems as well.

use super::{RatVector, Rational};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: RatVector,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: RatVector, relation: Relation, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }

    pub fn is_satisfied_by(&self, x: &RatVector) -> bool {
        self.relation.holds(&self.coeffs.dot(x), &self.rhs)
    }
}

/// Maximize `objective · x` subject to the constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    pub objective: RatVector,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        point: RatVector,
        value: Rational,
    },
    Infeasible,
    Unbounded {
        feasible_point: RatVector,
        ray: RatVector,
    },
}

impl LpProblem {
    pub fn new(objective: RatVector) -> Self {
        LpProblem {
            objective,
            constraints: Vec::new(),
        }
    }

    /// A pure feasibility problem in `dim` variables.
    pub fn feasibility(dim: usize) -> Self {
        Self::new(RatVector::zeros(dim))
    }

    pub fn dim(&self) -> usize {
        self.objective.dim()
    }

    pub fn constrain(&mut self, coeffs: RatVector, relation: Relation, rhs: Rational) -> &mut Self {
        self.constraints
            .push(Constraint::new(coeffs, relation, rhs));
        self
    }

    pub fn is_feasible_point(&self, x: &RatVector) -> bool {
        x.dim() == self.dim() && self.constraints.iter().all(|c| c.is_satisfied_by(x))
    }

    /// A ray keeps every constraint satisfied from any feasible point when
    /// `a·d ≤ 0`, `= 0` or `≥ 0` matching each relation.
    pub fn is_recession_direction(&self, d: &RatVector) -> bool {
        d.dim() == self.dim()
            && self
                .constraints
                .iter()
                .all(|c| c.relation.holds(&c.coeffs.dot(d), &Rational::zero()))
    }

    fn validate(&self) -> Result<(), Error> {
        let n = self.dim();
        for c in &self.constraints {
            if c.coeffs.dim() != n {
                return Err(Error::DimensionMismatch {
                    what: "constraint",
                    expected: n,
                    found: c.coeffs.dim(),
                });
            }
        }
        Ok(())
    }

    pub fn solve(&self) -> Result<LpOutcome, Error> {
        lp_solve(self)
    }
}

struct Tableau {
    /// `rows × (cols + 1)`; the last entry of each row is the right-hand side.
    cells: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

enum Phase {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        &self.cells[r][self.cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.cells[row][col].recip().expect("pivot on zero entry");
        for x in self.cells[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.cells[row].clone();
        for (r, cells) in self.cells.iter_mut().enumerate() {
            if r == row || cells[col].is_zero() {
                continue;
            }
            let factor = cells[col].clone();
            for (x, p) in cells.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &(&factor * p);
                }
            }
        }
        self.basis[row] = col;
    }

    fn reduced_cost(&self, cost: &[Rational], col: usize) -> Rational {
        let mut rc = cost[col].clone();
        for (r, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() && !self.cells[r][col].is_zero() {
                rc -= &(&cost[b] * &self.cells[r][col]);
            }
        }
        rc
    }

    /// Primal simplex maximizing `cost` over columns `< allowed`, Bland's rule.
    fn run(&mut self, cost: &[Rational], allowed: usize) -> Phase {
        loop {
            let entering = (0..allowed)
                .filter(|c| !self.basis.contains(c))
                .find(|&c| self.reduced_cost(cost, c).is_positive());
            let Some(col) = entering else {
                return Phase::Optimal;
            };
            let mut best: Option<(usize, Rational)> = None;
            for r in 0..self.cells.len() {
                let a = &self.cells[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &best {
                    None => true,
                    Some((br, bv)) => {
                        ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return Phase::Unbounded(col),
            }
        }
    }

    fn value_of(&self, col: usize) -> Rational {
        self.basis
            .iter()
            .position(|&b| b == col)
            .map_or_else(Rational::zero, |r| self.rhs(r).clone())
    }
}

/// Solves a linear program exactly.
pub fn lp_solve(problem: &LpProblem) -> Result<LpOutcome, Error> {
    problem.validate()?;
    let n = problem.dim();
    let m = problem.constraints.len();

    // Columns: x⁺ (n), x⁻ (n), one slack/surplus per inequality, artificials.
    let slack_count = problem
        .constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count();
    let structural = 2 * n + slack_count;

    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut natural_basis: Vec<Option<usize>> = Vec::with_capacity(m);
    let mut next_slack = 2 * n;
    for c in &problem.constraints {
        let mut row = vec![Rational::zero(); structural];
        for j in 0..n {
            row[j] = c.coeffs[j].clone();
            row[n + j] = -&c.coeffs[j];
        }
        let slack = match c.relation {
            Relation::Le => {
                row[next_slack] = Rational::one();
                Some(next_slack)
            }
            Relation::Ge => {
                row[next_slack] = -Rational::one();
                Some(next_slack)
            }
            Relation::Eq => None,
        };
        if slack.is_some() {
            next_slack += 1;
        }
        let mut rhs = c.rhs.clone();
        if rhs.is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
            rhs = -rhs;
        }
        // A slack with coefficient +1 after sign normalization can start basic.
        natural_basis.push(slack.filter(|&s| row[s].is_positive()));
        row.push(rhs);
        rows.push(row);
    }

    let artificial_rows: Vec<usize> = (0..m).filter(|&r| natural_basis[r].is_none()).collect();
    let cols = structural + artificial_rows.len();
    let mut basis = vec![0; m];
    let mut cells = Vec::with_capacity(m);
    for (r, mut row) in rows.into_iter().enumerate() {
        let rhs = row.pop().expect("rhs present");
        row.resize(cols, Rational::zero());
        if let Some(s) = natural_basis[r] {
            basis[r] = s;
        } else {
            let a = structural + artificial_rows.iter().position(|&x| x == r).unwrap();
            row[a] = Rational::one();
            basis[r] = a;
        }
        row.push(rhs);
        cells.push(row);
    }
    let mut tab = Tableau { cells, basis, cols };

    if !artificial_rows.is_empty() {
        let mut phase_one = vec![Rational::zero(); cols];
        for c in phase_one.iter_mut().skip(structural) {
            *c = -Rational::one();
        }
        tab.run(&phase_one, cols);
        let infeasibility: Rational = (structural..cols).map(|c| tab.value_of(c)).sum();
        if infeasibility.is_positive() {
            return Ok(LpOutcome::Infeasible);
        }
        // Drive remaining (zero-valued) artificials out of the basis; rows
        // where that is impossible are redundant and are dropped.
        let mut r = 0;
        while r < tab.cells.len() {
            if tab.basis[r] >= structural {
                match (0..structural).find(|&c| !tab.cells[r][c].is_zero()) {
                    Some(c) => tab.pivot(r, c),
                    None => {
                        tab.cells.remove(r);
                        tab.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    let mut cost = vec![Rational::zero(); cols];
    for j in 0..n {
        cost[j] = problem.objective[j].clone();
        cost[n + j] = -&problem.objective[j];
    }

    let outcome = tab.run(&cost, structural);
    let point: RatVector = (0..n)
        .map(|j| tab.value_of(j) - tab.value_of(n + j))
        .collect();
    match outcome {
        Phase::Optimal => {
            let value = problem.objective.dot(&point);
            debug_assert!(problem.is_feasible_point(&point));
            Ok(LpOutcome::Optimal { point, value })
        }
        Phase::Unbounded(col) => {
            let mut direction = vec![Rational::zero(); cols];
            direction[col] = Rational::one();
            for (r, &b) in tab.basis.iter().enumerate() {
                direction[b] = -&tab.cells[r][col];
            }
            let ray: RatVector = (0..n).map(|j| &direction[j] - &direction[n + j]).collect();
            debug_assert!(problem.objective.dot(&ray).is_positive());
            debug_assert!(problem.is_recession_direction(&ray));
            Ok(LpOutcome::Unbounded {
                feasible_point: point,
                ray,
            })
        }
    }
}
