//! Coalition costs of production-inventory situations.
//!
//! A coalition produces, holds and backlogs at the cheapest rate among its
//! members and must meet the summed demand of its members. The optimal unit
//! price of serving period `t` is the cheapest way to bring one unit from
//! any production period `k` to `t`:
//!
//! ```text
//! y*_t(S) = min_k  p_k^S + (holding from k to t, if k < t)
//!                        + (backlogging from t to k, if k > t)
//! ```
//!
//! and the coalition's cost is `c(S) = Σ_t d_t^S y*_t(S)`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::coalition::{coalitions, Coalition, MAX_PLAYERS};
use crate::error::{Error, Result};
use crate::model::{PISituation, TUGame};
use crate::rational::Rational;

/// Demand and cheapest costs of a coalition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalitionParams {
    pub demand: Vec<u64>,
    pub production: Vec<Rational>,
    pub holding: Vec<Rational>,
    pub backlogging: Vec<Rational>,
}

impl CoalitionParams {
    pub fn horizon(&self) -> usize {
        self.demand.len()
    }

    /// Unit cost of producing in period `k` to serve period `t`.
    fn serving_costs(&self) -> ServingCosts<'_> {
        // prefix[t] = cost of carrying one unit over periods 0..t
        let prefix = |v: &[Rational]| {
            let mut acc = vec![Rational::zero()];
            for x in v {
                let next = acc.last().unwrap() + x;
                acc.push(next);
            }
            acc
        };
        ServingCosts {
            production: &self.production,
            hold: prefix(&self.holding),
            back: prefix(&self.backlogging),
        }
    }
}

struct ServingCosts<'a> {
    production: &'a [Rational],
    hold: Vec<Rational>,
    back: Vec<Rational>,
}

impl ServingCosts<'_> {
    fn cost(&self, k: usize, t: usize) -> Rational {
        let p = &self.production[k];
        if k < t {
            p + (&self.hold[t] - &self.hold[k])
        } else if k > t {
            p + (&self.back[k] - &self.back[t])
        } else {
            p.clone()
        }
    }

    /// `(min cost, smallest k attaining it)`.
    fn best(&self, t: usize) -> (Rational, usize) {
        let mut best = (self.cost(0, t), 0);
        for k in 1..self.production.len() {
            let c = self.cost(k, t);
            if c < best.0 {
                best = (c, k);
            }
        }
        best
    }
}

/// Sums demand and takes member-wise minimum costs over `s`.
pub fn aggregate(sit: &PISituation, s: Coalition) -> Result<CoalitionParams> {
    sit.check_coalition(s)?;
    Ok(aggregate_unchecked(sit, s))
}

fn aggregate_unchecked(sit: &PISituation, s: Coalition) -> CoalitionParams {
    let t = sit.horizon();
    let min_rows = |rows: &[Vec<Rational>], width: usize| -> Vec<Rational> {
        (0..width)
            .map(|c| s.members().map(|i| &rows[i][c]).min().unwrap().clone())
            .collect()
    };
    CoalitionParams {
        demand: (0..t).map(|c| s.members().map(|i| sit.demand()[i][c]).sum()).collect(),
        production: min_rows(sit.production(), t),
        holding: min_rows(sit.holding(), t - 1),
        backlogging: min_rows(sit.backlogging(), t - 1),
    }
}

/// Optimal dual prices `y*(S)`, one per period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSolution {
    pub prices: Vec<Rational>,
}

impl DualSolution {
    /// Exact feasibility against the dual constraint system of `params`.
    pub fn is_feasible_for(&self, params: &CoalitionParams) -> bool {
        let y = &self.prices;
        y.len() == params.horizon()
            && y.iter().zip(&params.production).all(|(y, p)| y <= p)
            && (0..y.len().saturating_sub(1)).all(|t| {
                &y[t + 1] - &y[t] <= params.holding[t] && &y[t] - &y[t + 1] <= params.backlogging[t]
            })
    }

    pub fn value(&self, demand: &[u64]) -> Rational {
        demand
            .iter()
            .zip(&self.prices)
            .map(|(&d, y)| y * Rational::from_integer(d.into()))
            .sum()
    }
}

pub fn dual_solution(sit: &PISituation, s: Coalition) -> Result<DualSolution> {
    Ok(dual_from_params(&aggregate(sit, s)?))
}

pub fn dual_from_params(params: &CoalitionParams) -> DualSolution {
    let costs = params.serving_costs();
    DualSolution {
        prices: (0..params.horizon()).map(|t| costs.best(t).0).collect(),
    }
}

/// `c(S)`, the optimal cost of coalition `s`.
pub fn char_value(sit: &PISituation, s: Coalition) -> Result<Rational> {
    let params = aggregate(sit, s)?;
    Ok(dual_from_params(&params).value(&params.demand))
}

/// The full cost game of a situation.
pub fn build_game(sit: &PISituation) -> Result<TUGame> {
    if sit.n() > MAX_PLAYERS {
        return Err(Error::TooManyPlayers { players: sit.n(), cap: MAX_PLAYERS });
    }
    TUGame::from_fn(sit.players().to_vec(), |s| {
        let params = aggregate_unchecked(sit, s);
        dual_from_params(&params).value(&params.demand)
    })
}

/// An integer production plan. `stock[t]` and `backlog[t]` are the levels at
/// the end of period `t` for `t < T - 1`; both are zero at the horizon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimalPlan {
    pub production: Vec<u64>,
    pub stock: Vec<u64>,
    pub backlog: Vec<u64>,
}

impl PrimalPlan {
    pub fn cost(&self, params: &CoalitionParams) -> Rational {
        let q: Rational = self
            .production
            .iter()
            .zip(&params.production)
            .map(|(&q, p)| p * Rational::from_integer(q.into()))
            .sum();
        let carry = |levels: &[u64], rates: &[Rational]| -> Rational {
            levels
                .iter()
                .zip(rates)
                .map(|(&l, r)| r * Rational::from_integer(l.into()))
                .sum()
        };
        q + carry(&self.stock, &params.holding) + carry(&self.backlog, &params.backlogging)
    }

    /// Flow balance `I_t - E_t = I_{t-1} - E_{t-1} + q_t - d_t` with zero
    /// boundary levels.
    pub fn is_feasible_for(&self, demand: &[u64]) -> bool {
        let t = demand.len();
        if self.production.len() != t || self.stock.len() + 1 != t || self.backlog.len() + 1 != t {
            return false;
        }
        let mut prev: i128 = 0;
        for (period, (&q, &d)) in self.production.iter().zip(demand).enumerate() {
            let level = if period + 1 < t {
                self.stock[period] as i128 - self.backlog[period] as i128
            } else {
                0
            };
            if level != prev + q as i128 - d as i128 {
                return false;
            }
            prev = level;
        }
        true
    }
}

/// Plan that serves each period from the cheapest production period, ties
/// broken toward the earliest. Its cost equals `char_value`.
pub fn primal_plan(sit: &PISituation, s: Coalition) -> Result<PrimalPlan> {
    Ok(plan_from_params(&aggregate(sit, s)?))
}

pub fn plan_from_params(params: &CoalitionParams) -> PrimalPlan {
    let t = params.horizon();
    let costs = params.serving_costs();
    let mut production = vec![0u64; t];
    for (period, &d) in params.demand.iter().enumerate() {
        production[costs.best(period).1] += d;
    }
    levels_from_production(production, &params.demand)
}

fn levels_from_production(production: Vec<u64>, demand: &[u64]) -> PrimalPlan {
    let t = demand.len();
    let mut stock = Vec::with_capacity(t.saturating_sub(1));
    let mut backlog = Vec::with_capacity(t.saturating_sub(1));
    let mut cum: i128 = 0;
    for period in 0..t.saturating_sub(1) {
        cum += production[period] as i128 - demand[period] as i128;
        stock.push(cum.max(0) as u64);
        backlog.push((-cum).max(0) as u64);
    }
    PrimalPlan { production, stock, backlog }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_units: u64,
    pub max_periods: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self { max_units: 12, max_periods: 6 }
    }
}

/// Minimum plan cost by exhaustive enumeration of every production vector
/// with the right total. Independent of the dual prices.
pub fn oracle_cost(sit: &PISituation, s: Coalition) -> Result<Rational> {
    oracle_cost_with(sit, s, OracleLimits::default())
}

pub fn oracle_cost_with(sit: &PISituation, s: Coalition, limits: OracleLimits) -> Result<Rational> {
    let params = aggregate(sit, s)?;
    let units: u64 = params.demand.iter().sum();
    let periods = params.horizon();
    if units > limits.max_units || periods > limits.max_periods {
        return Err(Error::OracleTooLarge {
            units,
            periods,
            max_units: limits.max_units,
            max_periods: limits.max_periods,
        });
    }
    let mut best: Option<Rational> = None;
    let mut q = vec![0u64; periods];
    enumerate_compositions(&mut q, 0, units, &mut |q| {
        let plan = levels_from_production(q.to_vec(), &params.demand);
        let c = plan.cost(&params);
        if best.as_ref().is_none_or(|b| &c < b) {
            best = Some(c);
        }
    });
    Ok(best.unwrap_or_else(Rational::zero))
}

fn enumerate_compositions(q: &mut [u64], pos: usize, remaining: u64, visit: &mut dyn FnMut(&[u64])) {
    if pos + 1 == q.len() {
        q[pos] = remaining;
        visit(q);
        return;
    }
    for v in 0..=remaining {
        q[pos] = v;
        enumerate_compositions(q, pos + 1, remaining - v, visit);
    }
}

/// `c(S)` for every nonempty coalition, in canonical order.
pub fn all_values(sit: &PISituation) -> Vec<(Coalition, Rational)> {
    coalitions(sit.n())
        .map(|s| {
            let params = aggregate_unchecked(sit, s);
            (s, dual_from_params(&params).value(&params.demand))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{ex1, ex1_prime};
    use crate::rational::int;

    fn c(members: &[usize]) -> Coalition {
        Coalition::from_members(members.iter().copied())
    }

    #[test]
    fn aggregates_ex1() {
        let sit = ex1();
        let p = aggregate(&sit, c(&[0, 1])).unwrap();
        assert_eq!(p.demand, [1, 2]);
        assert_eq!(p.production, [int(1), int(1)]);
        assert_eq!(p.holding, [int(1)]);
        assert_eq!(p.backlogging, [int(1)]);
        let p1 = aggregate(&sit, c(&[0])).unwrap();
        assert_eq!(p1.production, [int(2), int(1)]);
        assert_eq!(p1.demand, [1, 0]);
        let p2 = aggregate(&sit, c(&[1])).unwrap();
        assert_eq!(p2.holding, [int(2)]);
        assert_eq!(p2.demand, [0, 2]);
    }

    #[test]
    fn dual_prices_ex1() {
        let sit = ex1();
        assert_eq!(dual_solution(&sit, c(&[0, 1])).unwrap().prices, [int(1), int(1)]);
        assert_eq!(dual_solution(&sit, c(&[0])).unwrap().prices, [int(2), int(1)]);
    }

    #[test]
    fn single_period_price_is_production_cost() {
        let sit = PISituation::new(
            vec!["a".into()],
            1,
            vec![vec![4]],
            vec![vec![int(7)]],
            vec![vec![]],
            vec![vec![]],
        )
        .unwrap();
        assert_eq!(dual_solution(&sit, c(&[0])).unwrap().prices, [int(7)]);
        assert_eq!(char_value(&sit, c(&[0])).unwrap(), int(28));
        let plan = primal_plan(&sit, c(&[0])).unwrap();
        assert_eq!(plan.production, [4]);
        assert!(plan.stock.is_empty());
    }

    #[test]
    fn game_values_ex1_and_ex1_prime() {
        for sit in [ex1(), ex1_prime()] {
            let g = build_game(&sit).unwrap();
            let vals: Vec<_> = g.entries().map(|(_, v)| v.clone()).collect();
            assert_eq!(vals, [int(2), int(2), int(3)]);
        }
    }

    #[test]
    fn zero_demand_costs_nothing() {
        let sit = ex1().with_demand(vec![vec![0, 0], vec![0, 0]]);
        for (_, v) in all_values(&sit) {
            assert_eq!(v, int(0));
        }
        let plan = primal_plan(&sit, sit.grand()).unwrap();
        assert_eq!(plan, PrimalPlan { production: vec![0, 0], stock: vec![0], backlog: vec![0] });
        assert_eq!(oracle_cost(&sit, sit.grand()).unwrap(), int(0));
    }

    #[test]
    fn primal_plans_ex1() {
        let sit = ex1();
        let plan = primal_plan(&sit, c(&[0, 1])).unwrap();
        assert_eq!(plan, PrimalPlan { production: vec![1, 2], stock: vec![0], backlog: vec![0] });
        let params = aggregate(&sit, c(&[0, 1])).unwrap();
        assert_eq!(plan.cost(&params), int(3));
        assert!(plan.is_feasible_for(&params.demand));

        // tie between producing early and backlogging: earliest period wins
        let plan = primal_plan(&sit, c(&[0])).unwrap();
        assert_eq!(plan.production, [1, 0]);
        let params = aggregate(&sit, c(&[0])).unwrap();
        assert_eq!(plan.cost(&params), int(2));
        let late = PrimalPlan { production: vec![0, 1], stock: vec![0], backlog: vec![1] };
        assert!(late.is_feasible_for(&params.demand));
        assert_eq!(late.cost(&params), int(2));
    }

    #[test]
    fn oracle_matches_ex1() {
        let sit = ex1();
        assert_eq!(oracle_cost(&sit, c(&[0, 1])).unwrap(), int(3));
        assert_eq!(oracle_cost(&sit, c(&[1])).unwrap(), int(2));
        assert_eq!(oracle_cost(&sit, c(&[0])).unwrap(), int(2));
    }

    #[test]
    fn oracle_guard() {
        let sit = ex1().with_demand(vec![vec![7, 0], vec![0, 6]]);
        assert!(matches!(oracle_cost(&sit, sit.grand()), Err(Error::OracleTooLarge { units: 13, .. })));
        let relaxed = OracleLimits { max_units: 13, max_periods: 6 };
        assert_eq!(
            oracle_cost_with(&sit, sit.grand(), relaxed).unwrap(),
            char_value(&sit, sit.grand()).unwrap()
        );
    }

    #[test]
    fn infeasible_dual_detected() {
        let params = aggregate(&ex1(), c(&[0, 1])).unwrap();
        let bad = DualSolution { prices: vec![int(1), int(3)] };
        assert!(!bad.is_feasible_for(&params));
        assert!(dual_from_params(&params).is_feasible_for(&params));
    }
}
