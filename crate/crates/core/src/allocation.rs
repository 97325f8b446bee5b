//! Owen point, core membership, the dual-price allocation scheme and
//! essential players.

use alloc::vec::Vec;

use crate::coalition::{coalitions, Coalition, MAX_PLAYERS};
use crate::error::{Error, Result};
use crate::model::{Allocation, PISituation, Pmas, TUGame};
use crate::rational::Rational;
use crate::solver::{aggregate, dual_from_params, dual_solution, DualSolution};

/// Prices each player's own demand at the grand coalition's dual prices.
pub fn owen_point(sit: &PISituation) -> Allocation {
    let y = dual_solution(sit, sit.grand()).expect("grand coalition is valid");
    price_demand(sit, sit.grand(), &y)
}

fn price_demand(sit: &PISituation, s: Coalition, y: &DualSolution) -> Allocation {
    Allocation::new(
        s.members()
            .map(|i| {
                sit.demand()[i]
                    .iter()
                    .zip(&y.prices)
                    .map(|(&d, p)| p * Rational::from_integer(d.into()))
                    .sum()
            })
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreVerdict {
    InCore,
    /// First coalition, in canonical order, charged more than its cost.
    /// Reported as the grand coalition when efficiency fails.
    Violated { coalition: Coalition, charged: Rational, cost: Rational },
}

impl CoreVerdict {
    pub fn is_in_core(&self) -> bool {
        matches!(self, CoreVerdict::InCore)
    }
}

pub fn in_core(game: &TUGame, x: &Allocation) -> Result<CoreVerdict> {
    if x.len() != game.n() {
        return Err(Error::AllocationLength { expected: game.n(), found: x.len() });
    }
    let grand = game.grand();
    let total = x.total();
    if &total != game.value(grand) {
        return Ok(CoreVerdict::Violated {
            coalition: grand,
            charged: total,
            cost: game.value(grand).clone(),
        });
    }
    for s in coalitions(game.n()) {
        let charged = x.coalition_sum(s);
        if &charged > game.value(s) {
            return Ok(CoreVerdict::Violated { coalition: s, charged, cost: game.value(s).clone() });
        }
    }
    Ok(CoreVerdict::InCore)
}

/// `y_i^S = Σ_t d_t^i y*_t(S)`: every coalition's own Owen point.
pub fn pmas(sit: &PISituation) -> Result<Pmas> {
    if sit.n() > MAX_PLAYERS {
        return Err(Error::TooManyPlayers { players: sit.n(), cap: MAX_PLAYERS });
    }
    Ok(Pmas::from_fn(sit.n(), |s| {
        let y = dual_from_params(&aggregate(sit, s).expect("nonempty"));
        price_demand(sit, s, &y).into_amounts()
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialWitness {
    pub player: usize,
    pub period: usize,
    /// `y*_t(N \ {i})`
    pub price_without: Rational,
    /// `y*_t(N)`
    pub price_with: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialReport {
    pub essential: Vec<usize>,
    /// One witness per essential player, same order as `essential`.
    pub witnesses: Vec<EssentialWitness>,
}

impl EssentialReport {
    pub fn is_essential(&self, i: usize) -> bool {
        self.essential.contains(&i)
    }

    pub fn inessential(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        (0..n).filter(move |i| !self.is_essential(*i))
    }
}

/// Player `i` is essential if removing it strictly raises the dual price of
/// some period in which the others still have demand. The first such period
/// is reported. With a single player there is no one left, so the player is
/// inessential.
pub fn essential_players(sit: &PISituation) -> EssentialReport {
    let grand = sit.grand();
    let with_all = dual_solution(sit, grand).expect("grand coalition is valid");
    let mut report = EssentialReport { essential: Vec::new(), witnesses: Vec::new() };
    if sit.n() < 2 {
        return report;
    }
    for i in 0..sit.n() {
        let rest = grand.without(i);
        let params = aggregate(sit, rest).expect("nonempty");
        let without = dual_from_params(&params);
        let hit = (0..sit.horizon())
            .find(|&t| params.demand[t] > 0 && without.prices[t] > with_all.prices[t]);
        if let Some(period) = hit {
            report.essential.push(i);
            report.witnesses.push(EssentialWitness {
                player: i,
                period,
                price_without: without.prices[period].clone(),
                price_with: with_all.prices[period].clone(),
            });
        }
    }
    report
}

/// True iff every player is inessential, in which case the core is exactly
/// the Owen point.
pub fn core_is_owen_singleton(sit: &PISituation) -> bool {
    essential_players(sit).essential.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{ex1, ex1_prime};
    use crate::rational::int;
    use crate::solver::{build_game, char_value};
    use alloc::vec;

    fn alloc(v: &[i64]) -> Allocation {
        Allocation::new(v.iter().map(|&x| int(x)).collect())
    }

    fn identical_rows(demand: Vec<Vec<u64>>) -> PISituation {
        let n = demand.len();
        PISituation::new(
            (0..n).map(|i| alloc::format!("P{}", i + 1)).collect(),
            3,
            demand,
            vec![vec![int(3), int(1), int(4)]; n],
            vec![vec![int(1), int(1)]; n],
            vec![vec![int(2), int(1)]; n],
        )
        .unwrap()
    }

    #[test]
    fn owen_points() {
        assert_eq!(owen_point(&ex1()), alloc(&[1, 2]));
        assert_eq!(owen_point(&ex1_prime()), alloc(&[2, 1]));
        let sit = ex1().with_demand(vec![vec![1, 0], vec![0, 0]]);
        assert_eq!(owen_point(&sit)[1], int(0));
    }

    #[test]
    fn core_checks_ex1() {
        let g = build_game(&ex1()).unwrap();
        assert_eq!(in_core(&g, &alloc(&[1, 2])).unwrap(), CoreVerdict::InCore);
        assert_eq!(
            in_core(&g, &alloc(&[0, 3])).unwrap(),
            CoreVerdict::Violated { coalition: Coalition::singleton(1), charged: int(3), cost: int(2) }
        );
        assert_eq!(
            in_core(&g, &alloc(&[1, 1])).unwrap(),
            CoreVerdict::Violated { coalition: g.grand(), charged: int(2), cost: int(3) }
        );
        assert!(in_core(&g, &alloc(&[1])).is_err());
    }

    #[test]
    fn scheme_ex1() {
        let sit = ex1();
        let scheme = pmas(&sit).unwrap();
        assert_eq!(scheme.shares(Coalition::singleton(0)), [int(2)]);
        assert_eq!(scheme.shares(Coalition::singleton(1)), [int(2)]);
        assert_eq!(scheme.shares(sit.grand()), owen_point(&sit).amounts());
        assert_eq!(scheme.check(&build_game(&sit).unwrap()), Ok(()));
    }

    #[test]
    fn single_player_scheme_is_its_cost() {
        let sit = ex1().restrict(Coalition::singleton(0)).unwrap();
        let scheme = pmas(&sit).unwrap();
        assert_eq!(scheme.shares(Coalition::singleton(0)), [char_value(&sit, sit.grand()).unwrap()]);
        assert!(essential_players(&sit).essential.is_empty());
        assert!(core_is_owen_singleton(&sit));
    }

    #[test]
    fn essential_ex1() {
        let report = essential_players(&ex1());
        assert_eq!(report.essential, [1]);
        assert_eq!(
            report.witnesses,
            [EssentialWitness { player: 1, period: 0, price_without: int(2), price_with: int(1) }]
        );
        assert!(!core_is_owen_singleton(&ex1()));
        // player 1 is inessential: o_{N\{1}} = c(N\{1})
        let o = owen_point(&ex1());
        assert_eq!(o[1], char_value(&ex1(), Coalition::singleton(1)).unwrap());
    }

    #[test]
    fn identical_rows_have_no_essential_players() {
        let sit = identical_rows(vec![vec![1, 0, 2], vec![0, 3, 1], vec![2, 2, 0]]);
        assert!(core_is_owen_singleton(&sit));
        let o = owen_point(&sit);
        for i in 0..3 {
            let rest = sit.grand().without(i);
            assert_eq!(o.coalition_sum(rest), char_value(&sit, rest).unwrap());
        }
    }
}
