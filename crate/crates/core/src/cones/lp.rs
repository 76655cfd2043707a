//! Exact feasibility for linear systems over the rationals.
//!
//! Phase I of the primal simplex method on a dense tableau, with Bland's
//! smallest-index rule for both the entering and the leaving variable, so the
//! method cannot cycle.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::{Error, ExactRational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<ExactRational>,
    pub relation: Relation,
    pub rhs: ExactRational,
}

/// Linear constraints on `num_vars` variables, each either nonnegative
/// (the default) or free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    num_vars: usize,
    free: Vec<bool>,
    constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<ExactRational>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[ExactRational]> {
        match self {
            Feasibility::Feasible(w) => Some(w),
            Feasibility::Infeasible => None,
        }
    }
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            free: vec![false; num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Drops the sign restriction on variable `var`.
    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.free[var] = true;
        self
    }

    pub fn is_free(&self, var: usize) -> bool {
        self.free[var]
    }

    pub fn add(
        &mut self,
        coeffs: Vec<ExactRational>,
        relation: Relation,
        rhs: ExactRational,
    ) -> &mut Self {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    /// Checks that `x` satisfies every constraint and sign restriction.
    pub fn is_satisfied_by(&self, x: &[ExactRational]) -> bool {
        if x.len() != self.num_vars {
            return false;
        }
        let signs = x
            .iter()
            .zip(&self.free)
            .all(|(v, &free)| free || !v.is_negative());
        signs
            && self.constraints.iter().all(|c| {
                let lhs = c
                    .coeffs
                    .iter()
                    .zip(x)
                    .fold(ExactRational::zero(), |acc, (a, v)| acc + a * v);
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                }
            })
    }

    fn validate(&self) -> Result<()> {
        if self.free.len() != self.num_vars {
            return Err(Error::MalformedSystem("sign flags do not match variable count"));
        }
        if self.constraints.iter().any(|c| c.coeffs.len() != self.num_vars) {
            return Err(Error::MalformedSystem("constraint length differs from variable count"));
        }
        Ok(())
    }
}

/// Decides feasibility exactly and returns a rational witness when one exists.
pub fn lp_feasible(system: &LinearSystem) -> Result<Feasibility> {
    system.validate()?;

    // Column layout: structural (free variables split in two), slacks, artificials.
    let mut structural: Vec<(usize, bool)> = Vec::new();
    for v in 0..system.num_vars {
        structural.push((v, false));
        if system.free[v] {
            structural.push((v, true));
        }
    }
    let n_struct = structural.len();
    let n_slack = system
        .constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count();
    let rows = system.constraints.len();
    let n_art = rows;
    let width = n_struct + n_slack + n_art;

    let mut tableau: Vec<Vec<ExactRational>> = Vec::with_capacity(rows);
    let mut slack = n_struct;
    for (i, c) in system.constraints.iter().enumerate() {
        let mut row = vec![ExactRational::zero(); width + 1];
        for (col, &(v, negated)) in structural.iter().enumerate() {
            row[col] = if negated {
                -c.coeffs[v].clone()
            } else {
                c.coeffs[v].clone()
            };
        }
        match c.relation {
            Relation::Le => {
                row[slack] = ExactRational::one();
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = -ExactRational::one();
                slack += 1;
            }
            Relation::Eq => {}
        }
        row[width] = c.rhs.clone();
        if row[width].is_negative() {
            for x in row.iter_mut() {
                *x = -core::mem::take(x);
            }
        }
        row[n_struct + n_slack + i] = ExactRational::one();
        tableau.push(row);
    }
    let mut basis: Vec<usize> = (0..rows).map(|i| n_struct + n_slack + i).collect();

    // Reduced costs of the phase-one objective Σ artificials.
    let mut objective = vec![ExactRational::zero(); width + 1];
    for row in &tableau {
        for (j, x) in row.iter().enumerate() {
            if j < n_struct + n_slack || j == width {
                objective[j] -= x;
            }
        }
    }

    loop {
        let Some(enter) = (0..width).find(|&j| objective[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, ExactRational)> = None;
        for (i, row) in tableau.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[width] / &row[enter];
            let better = match &leave {
                None => true,
                Some((best, best_ratio)) => {
                    ratio < *best_ratio || (ratio == *best_ratio && basis[i] < basis[*best])
                }
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so a leaving row always exists.
        let (pivot_row, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tableau, &mut objective, pivot_row, enter);
        basis[pivot_row] = enter;
    }

    if !objective[width].is_zero() {
        return Ok(Feasibility::Infeasible);
    }
    let mut column_values = vec![ExactRational::zero(); width];
    for (i, &b) in basis.iter().enumerate() {
        column_values[b] = tableau[i][width].clone();
    }
    let mut witness = vec![ExactRational::zero(); system.num_vars];
    for (col, &(v, negated)) in structural.iter().enumerate() {
        if negated {
            witness[v] -= &column_values[col];
        } else {
            witness[v] += &column_values[col];
        }
    }
    debug_assert!(system.is_satisfied_by(&witness));
    Ok(Feasibility::Feasible(witness))
}

fn pivot(
    tableau: &mut [Vec<ExactRational>],
    objective: &mut [ExactRational],
    pivot_row: usize,
    enter: usize,
) {
    let inv = tableau[pivot_row][enter].recip();
    for x in tableau[pivot_row].iter_mut() {
        if !x.is_zero() {
            *x *= &inv;
        }
    }
    let prow = tableau[pivot_row].clone();
    let eliminate = |row: &mut [ExactRational]| {
        if row[enter].is_zero() {
            return;
        }
        let factor = row[enter].clone();
        for (x, p) in row.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *x -= &factor * p;
            }
        }
    };
    for (i, row) in tableau.iter_mut().enumerate() {
        if i != pivot_row {
            eliminate(row);
        }
    }
    eliminate(objective);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use alloc::vec;

    #[test]
    fn one_variable_systems() {
        let mut s = LinearSystem::new(1);
        s.set_free(0);
        s.add(vec![rat(1)], Relation::Ge, rat(1));
        s.add(vec![rat(-1)], Relation::Ge, rat(0));
        assert_eq!(lp_feasible(&s).unwrap(), Feasibility::Infeasible);

        let mut s = LinearSystem::new(1);
        s.set_free(0);
        s.add(vec![rat(1)], Relation::Ge, rat(1));
        assert_eq!(lp_feasible(&s).unwrap(), Feasibility::Feasible(vec![rat(1)]));
    }

    #[test]
    fn equality_with_free_variables() {
        // x - y = -3, x + y = 1, both free: x = -1, y = 2
        let mut s = LinearSystem::new(2);
        s.set_free(0).set_free(1);
        s.add(vec![rat(1), rat(-1)], Relation::Eq, rat(-3));
        s.add(vec![rat(1), rat(1)], Relation::Eq, rat(1));
        let w = lp_feasible(&s).unwrap();
        assert_eq!(w.witness().unwrap(), &[rat(-1), rat(2)]);
    }

    #[test]
    fn nonnegativity_respected() {
        // x + y = -1 has no nonnegative solution
        let mut s = LinearSystem::new(2);
        s.add(vec![rat(1), rat(1)], Relation::Eq, rat(-1));
        assert!(!lp_feasible(&s).unwrap().is_feasible());
        // x <= 2, x >= 2
        let mut s = LinearSystem::new(1);
        s.add(vec![rat(1)], Relation::Le, rat(2));
        s.add(vec![rat(1)], Relation::Ge, rat(2));
        assert_eq!(lp_feasible(&s).unwrap().witness().unwrap(), &[rat(2)]);
    }

    #[test]
    fn degenerate_redundant_rows() {
        let mut s = LinearSystem::new(3);
        for _ in 0..3 {
            s.add(vec![rat(1), rat(1), rat(1)], Relation::Eq, rat(0));
        }
        s.add(vec![rat(1), rat(-1), rat(0)], Relation::Eq, rat(0));
        assert_eq!(
            lp_feasible(&s).unwrap().witness().unwrap(),
            &[rat(0), rat(0), rat(0)]
        );
    }

    #[test]
    fn malformed() {
        let mut s = LinearSystem::new(2);
        s.add(vec![rat(1)], Relation::Eq, rat(0));
        assert!(matches!(lp_feasible(&s), Err(Error::MalformedSystem(_))));
    }
}
