//! A small dense two-phase simplex over exact rationals.
//!
//! Used as an independent check on the closed-form dual prices: the value
//! of the dual linear program of a coalition must equal its cost.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::coalition::Coalition;
use crate::error::Result;
use crate::model::PISituation;
use crate::rational::Rational;
use crate::solver::{aggregate, CoalitionParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarSign {
    Free,
    NonNegative,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Self { coeffs, relation, rhs }
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs: Rational = self.coeffs.iter().zip(x).map(|(a, x)| a * x).sum();
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub signs: Vec<VarSign>,
}

impl LinearProgram {
    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn is_well_formed(&self) -> bool {
        let n = self.num_vars();
        self.signs.len() == n && self.constraints.iter().all(|c| c.coeffs.len() == n)
    }

    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && self.constraints.iter().all(|c| c.is_satisfied_by(x))
            && self
                .signs
                .iter()
                .zip(x)
                .all(|(s, v)| *s == VarSign::Free || !v.is_negative())
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, x)| c * x).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub outcome: LpOutcome,
    /// Total pivots over both phases.
    pub pivots: usize,
}

pub fn solve_lp(lp: &LinearProgram) -> LpOutcome {
    solve_lp_with_stats(lp).outcome
}

pub fn solve_lp_with_stats(lp: &LinearProgram) -> LpSolution {
    assert!(lp.is_well_formed(), "malformed linear program");
    Tableau::build(lp).solve(lp)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ColumnKind {
    Structural { var: usize, negated: bool },
    Slack,
    Artificial,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    kinds: Vec<ColumnKind>,
    pivots: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let mut kinds = Vec::new();
        for (var, sign) in lp.signs.iter().enumerate() {
            kinds.push(ColumnKind::Structural { var, negated: false });
            if *sign == VarSign::Free {
                kinds.push(ColumnKind::Structural { var, negated: true });
            }
        }
        let structural = kinds.len();

        // normalize rows to non-negative right-hand sides
        let normalized: Vec<(Vec<Rational>, Relation, Rational)> = lp
            .constraints
            .iter()
            .map(|c| {
                let mut coeffs = Vec::with_capacity(structural);
                for kind in &kinds[..structural] {
                    if let ColumnKind::Structural { var, negated } = *kind {
                        let a = &c.coeffs[var];
                        coeffs.push(if negated { -a } else { a.clone() });
                    }
                }
                if c.rhs.is_negative() {
                    let flipped = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (coeffs.into_iter().map(|a| -a).collect(), flipped, -&c.rhs)
                } else {
                    (coeffs, c.relation, c.rhs.clone())
                }
            })
            .collect();

        let m = normalized.len();
        let mut extra: Vec<(usize, Rational, ColumnKind)> = Vec::new();
        let mut basis_kind = Vec::with_capacity(m);
        for (r, (_, rel, _)) in normalized.iter().enumerate() {
            match rel {
                Relation::Le => {
                    extra.push((r, Rational::one(), ColumnKind::Slack));
                    basis_kind.push(extra.len() - 1);
                }
                Relation::Ge => {
                    extra.push((r, -Rational::one(), ColumnKind::Slack));
                    extra.push((r, Rational::one(), ColumnKind::Artificial));
                    basis_kind.push(extra.len() - 1);
                }
                Relation::Eq => {
                    extra.push((r, Rational::one(), ColumnKind::Artificial));
                    basis_kind.push(extra.len() - 1);
                }
            }
        }
        let width = structural + extra.len();
        let mut rows = Vec::with_capacity(m);
        for (r, (coeffs, _, rhs)) in normalized.into_iter().enumerate() {
            let mut row = coeffs;
            row.resize(width + 1, Rational::zero());
            for (k, (er, v, _)) in extra.iter().enumerate() {
                if *er == r {
                    row[structural + k] = v.clone();
                }
            }
            row[width] = rhs;
            rows.push(row);
        }
        kinds.extend(extra.iter().map(|(_, _, kind)| *kind));
        let basis = basis_kind.into_iter().map(|k| structural + k).collect();
        Tableau { rows, basis, kinds, pivots: 0 }
    }

    fn width(&self) -> usize {
        self.kinds.len()
    }

    fn pivot(&mut self, r: usize, col: usize, cost: &mut [Rational]) {
        self.pivots += 1;
        let w = self.width();
        let inv = Rational::one() / &self.rows[r][col];
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for j in 0..=w {
                if !pivot_row[j].is_zero() {
                    row[j] -= &f * &pivot_row[j];
                }
            }
        }
        if !cost[col].is_zero() {
            let f = cost[col].clone();
            for j in 0..=w {
                if !pivot_row[j].is_zero() {
                    cost[j] -= &f * &pivot_row[j];
                }
            }
        }
        self.basis[r] = col;
    }

    /// Reduced-cost row for minimizing `costs` over the current basis; the
    /// last entry is minus the objective value.
    fn reduced_costs(&self, costs: &[Rational]) -> Vec<Rational> {
        let mut red: Vec<Rational> = costs.to_vec();
        red.push(Rational::zero());
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (red_j, a) in red.iter_mut().zip(&self.rows[r]) {
                *red_j -= cb * a;
            }
        }
        red
    }

    /// Bland's rule simplex. Returns false if unbounded.
    fn run(&mut self, cost: &mut [Rational], allowed: impl Fn(usize) -> bool) -> bool {
        let w = self.width();
        loop {
            let Some(col) = (0..w).find(|&j| allowed(j) && cost[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[w] / &row[col];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, col, cost),
                None => return false,
            }
        }
    }

    fn solve(mut self, lp: &LinearProgram) -> LpSolution {
        let w = self.width();
        let is_artificial = |kinds: &[ColumnKind], j: usize| kinds[j] == ColumnKind::Artificial;

        if self.kinds.contains(&ColumnKind::Artificial) {
            let phase1: Vec<Rational> = (0..w)
                .map(|j| if is_artificial(&self.kinds, j) { Rational::one() } else { Rational::zero() })
                .collect();
            let mut cost = self.reduced_costs(&phase1);
            self.run(&mut cost, |_| true);
            if !cost[w].is_zero() {
                return LpSolution { outcome: LpOutcome::Infeasible, pivots: self.pivots };
            }
            // drive zero-level artificials out of the basis, dropping redundant rows
            let mut r = 0;
            while r < self.rows.len() {
                if is_artificial(&self.kinds, self.basis[r]) {
                    let entering = (0..w).find(|&j| !is_artificial(&self.kinds, j) && !self.rows[r][j].is_zero());
                    match entering {
                        Some(j) => self.pivot(r, j, &mut cost),
                        None => {
                            self.rows.remove(r);
                            self.basis.remove(r);
                            continue;
                        }
                    }
                }
                r += 1;
            }
        }

        let sign = match lp.sense {
            Sense::Minimize => Rational::one(),
            Sense::Maximize => -Rational::one(),
        };
        let phase2: Vec<Rational> = self
            .kinds
            .iter()
            .map(|k| match *k {
                ColumnKind::Structural { var, negated } => {
                    let c = &sign * &lp.objective[var];
                    if negated { -c } else { c }
                }
                _ => Rational::zero(),
            })
            .collect();
        let mut cost = self.reduced_costs(&phase2);
        let kinds = self.kinds.clone();
        if !self.run(&mut cost, |j| kinds[j] != ColumnKind::Artificial) {
            return LpSolution { outcome: LpOutcome::Unbounded, pivots: self.pivots };
        }

        let mut point = vec![Rational::zero(); lp.num_vars()];
        for (r, &b) in self.basis.iter().enumerate() {
            if let ColumnKind::Structural { var, negated } = self.kinds[b] {
                let v = &self.rows[r][w];
                if negated {
                    point[var] -= v;
                } else {
                    point[var] += v;
                }
            }
        }
        let value = lp.objective_value(&point);
        LpSolution { outcome: LpOutcome::Optimal { value, point }, pivots: self.pivots }
    }
}

/// The dual program of a coalition's lot-sizing LP: maximize `Σ d_t y_t`
/// subject to `y_t <= p_t`, `y_{t+1} - y_t <= h_t`, `y_t - y_{t+1} <= b_t`,
/// with free `y`.
pub fn build_dlpi(sit: &PISituation, s: Coalition) -> Result<LinearProgram> {
    Ok(dlpi_from_params(&aggregate(sit, s)?))
}

pub fn dlpi_from_params(params: &CoalitionParams) -> LinearProgram {
    let t = params.horizon();
    let unit = |k: usize| {
        let mut v = vec![Rational::zero(); t];
        v[k] = Rational::one();
        v
    };
    let mut constraints: Vec<Constraint> = (0..t)
        .map(|k| Constraint::new(unit(k), Relation::Le, params.production[k].clone()))
        .collect();
    for k in 0..t.saturating_sub(1) {
        let mut up = vec![Rational::zero(); t];
        up[k + 1] = Rational::one();
        up[k] = -Rational::one();
        constraints.push(Constraint::new(up, Relation::Le, params.holding[k].clone()));
    }
    for k in 0..t.saturating_sub(1) {
        let mut down = vec![Rational::zero(); t];
        down[k] = Rational::one();
        down[k + 1] = -Rational::one();
        constraints.push(Constraint::new(down, Relation::Le, params.backlogging[k].clone()));
    }
    LinearProgram {
        sense: Sense::Maximize,
        objective: params.demand.iter().map(|&d| Rational::from_integer(d.into())).collect(),
        constraints,
        signs: vec![VarSign::Free; t],
    }
}
