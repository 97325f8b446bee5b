//! Game constructions: sums of situations, the situation realizing a
//! 0-monotone simple veto game, concavity, and the Shapley allocation
//! scheme of a concave game.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::coalition::{coalitions, sub_coalitions, Coalition};
use crate::error::{Error, Result};
use crate::model::{Allocation, PISituation, Pmas, TUGame};
use crate::rational::Rational;

/// Cost put on the separator period between the two blocks of a summed
/// situation: above every unit serving cost inside either block.
pub fn separator_cost(first: &PISituation, second: &PISituation) -> Rational {
    let mut max_p = Rational::zero();
    let mut carry = Rational::zero();
    for sit in [first, second] {
        for row in sit.production() {
            for p in row {
                if p > &max_p {
                    max_p = p.clone();
                }
            }
        }
        for rows in [sit.holding(), sit.backlogging()] {
            for v in rows.iter().flatten() {
                carry += v;
            }
        }
    }
    Rational::one() + max_p + carry
}

/// Concatenates two situations on the same players with an expensive
/// zero-demand period in between, so that every coalition's cost is the
/// sum of its costs in the two parts.
pub fn sum_situations(first: &PISituation, second: &PISituation) -> Result<PISituation> {
    if first.players() != second.players() {
        return Err(Error::PlayerMismatch {
            left: first.players().to_vec(),
            right: second.players().to_vec(),
        });
    }
    let omega = separator_cost(first, second);
    let n = first.n();
    let horizon = first.horizon() + second.horizon() + 1;
    let join = |a: &[Rational], mid: &[Rational], b: &[Rational]| -> Vec<Rational> {
        a.iter().chain(mid).chain(b).cloned().collect()
    };
    let sep = [omega.clone()];
    let sep2 = [omega.clone(), omega.clone()];
    let demand = (0..n)
        .map(|i| {
            first.demand()[i]
                .iter()
                .copied()
                .chain([0])
                .chain(second.demand()[i].iter().copied())
                .collect()
        })
        .collect();
    let production = (0..n)
        .map(|i| join(&first.production()[i], &sep, &second.production()[i]))
        .collect();
    // carrying into and out of the separator both cost omega
    let holding = (0..n)
        .map(|i| join(&first.holding()[i], &sep2, &second.holding()[i]))
        .collect();
    let backlogging = (0..n)
        .map(|i| join(&first.backlogging()[i], &sep2, &second.backlogging()[i]))
        .collect();
    PISituation::new(first.players().to_vec(), horizon, demand, production, holding, backlogging)
}

/// First coalition whose value is neither 0 nor 1.
pub fn non_simple_coalition(game: &TUGame) -> Option<Coalition> {
    game.entries()
        .find(|(_, v)| !v.is_zero() && !v.is_one())
        .map(|(s, _)| s)
}

pub fn is_simple(game: &TUGame) -> bool {
    non_simple_coalition(game).is_none()
}

/// Players `i` with `c(S) = 0` for every `S ⊆ N \ {i}`.
pub fn veto_players(game: &TUGame) -> Vec<usize> {
    let grand = game.grand();
    (0..game.n())
        .filter(|&i| {
            let rest = grand.without(i);
            rest.subsets().all(|s| game.value(s).is_zero())
        })
        .collect()
}

pub fn is_veto(game: &TUGame) -> bool {
    !veto_players(game).is_empty()
}

/// A pair `S ⊊ S'` of nonempty coalitions whose 0-normalized value
/// `c(S) - Σ_{i∈S} c({i})` increases from `S` to `S'`.
pub fn zero_monotonicity_violation(game: &TUGame) -> Option<(Coalition, Coalition)> {
    let normalized = |s: Coalition| -> Rational {
        game.value(s) - s.members().map(|i| game.value(Coalition::singleton(i))).sum::<Rational>()
    };
    for larger in coalitions(game.n()) {
        let big = normalized(larger);
        for smaller in sub_coalitions(larger) {
            if smaller != larger && normalized(smaller) < big {
                return Some((smaller, larger));
            }
        }
    }
    None
}

pub fn is_zero_monotone(game: &TUGame) -> bool {
    zero_monotonicity_violation(game).is_none()
}

/// Coalitions of value 1 all of whose strict supersets have value 0,
/// largest first and then in canonical order.
pub fn maximal_winning_coalitions(game: &TUGame) -> Vec<Coalition> {
    let grand = game.grand();
    let mut out: Vec<Coalition> = coalitions(game.n())
        .filter(|&s| {
            game.value(s).is_one()
                && (grand - s)
                    .subsets()
                    .filter(|extra| !extra.is_empty())
                    .all(|extra| game.value(s | extra).is_zero())
        })
        .collect();
    out.sort_by_key(|s| Reverse(s.len()));
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VetoConstruction {
    pub situation: PISituation,
    pub veto_player: usize,
    /// Maximal value-1 coalitions; coalition `k` carries holding cost 1 in
    /// period `k`.
    pub maximal: Vec<Coalition>,
}

/// Builds a situation whose game is exactly `game`, for a 0-monotone
/// simple veto game. The lowest-indexed veto player carries one unit of
/// demand in the last period; production is free in the first period and
/// costs 1 afterwards; backlogging always costs 1; holding in period `k`
/// costs 1 for members of the `k`-th maximal value-1 coalition.
pub fn veto_construction(game: &TUGame) -> Result<VetoConstruction> {
    if let Some(coalition) = non_simple_coalition(game) {
        return Err(Error::NotSimple { coalition });
    }
    if let Some((smaller, larger)) = zero_monotonicity_violation(game) {
        return Err(Error::NotZeroMonotone { smaller, larger });
    }
    let veto_player = *veto_players(game).first().ok_or(Error::NoVetoPlayer)?;
    let maximal = maximal_winning_coalitions(game);
    let n = game.n();
    let zero = Rational::zero;
    let one = Rational::one;

    let situation = if maximal.is_empty() {
        PISituation::new(
            game.players().to_vec(),
            1,
            vec![vec![0]; n],
            vec![vec![zero()]; n],
            vec![vec![]; n],
            vec![vec![]; n],
        )?
    } else {
        let horizon = maximal.len() + 1;
        let demand = (0..n)
            .map(|i| {
                let mut row = vec![0u64; horizon];
                if i == veto_player {
                    row[horizon - 1] = 1;
                }
                row
            })
            .collect();
        let production = vec![
            (0..horizon).map(|t| if t == 0 { zero() } else { one() }).collect::<Vec<_>>();
            n
        ];
        let holding = (0..n)
            .map(|i| {
                maximal
                    .iter()
                    .map(|s| if s.contains(i) { one() } else { zero() })
                    .collect()
            })
            .collect();
        let backlogging = vec![vec![one(); horizon - 1]; n];
        PISituation::new(game.players().to_vec(), horizon, demand, production, holding, backlogging)?
    };
    Ok(VetoConstruction { situation, veto_player, maximal })
}

pub fn veto_game_to_situation(game: &TUGame) -> Result<PISituation> {
    veto_construction(game).map(|c| c.situation)
}

/// `i`'s marginal cost to `smaller` is below its marginal cost to `larger`,
/// with `smaller ⊆ larger ⊆ N \ {i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcavityWitness {
    pub player: usize,
    pub smaller: Coalition,
    pub larger: Coalition,
    pub smaller_marginal: Rational,
    pub larger_marginal: Rational,
}

impl fmt::Display for ConcavityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "player {} adds {} to {:?} but {} to {:?}",
            self.player + 1,
            self.smaller_marginal,
            self.smaller,
            self.larger_marginal,
            self.larger
        )
    }
}

/// Exhaustive search over `i ∉ T`, `S ⊊ T`. The outer loop runs over `T`
/// in canonical order, then `S` (empty set first), then `i` ascending.
pub fn concavity_violation(game: &TUGame) -> Option<ConcavityWitness> {
    let grand = game.grand();
    let marginal = |i: usize, s: Coalition| game.value(s.with(i)) - game.value(s);
    for larger in coalitions(game.n()) {
        let smaller_sets = core::iter::once(Coalition::EMPTY).chain(sub_coalitions(larger).filter(|s| *s != larger));
        for smaller in smaller_sets {
            for i in (grand - larger).members() {
                let a = marginal(i, smaller);
                let b = marginal(i, larger);
                if a < b {
                    return Some(ConcavityWitness {
                        player: i,
                        smaller,
                        larger,
                        smaller_marginal: a,
                        larger_marginal: b,
                    });
                }
            }
        }
    }
    None
}

pub fn is_concave(game: &TUGame) -> bool {
    concavity_violation(game).is_none()
}

/// Shapley value by coalition-weighted marginal contributions.
pub fn shapley(game: &TUGame) -> Allocation {
    let n = game.n();
    let mut fact = vec![BigInt::one()];
    for k in 1..=n {
        let next = fact[k - 1].clone() * BigInt::from(k);
        fact.push(next);
    }
    let weight = |s: usize| Rational::new(fact[s].clone() * &fact[n - s - 1], fact[n].clone());
    let weights: Vec<Rational> = (0..n).map(weight).collect();
    let grand = game.grand();
    Allocation::new(
        (0..n)
            .map(|i| {
                (grand.without(i))
                    .subsets()
                    .map(|s| &weights[s.len()] * (game.value(s.with(i)) - game.value(s)))
                    .sum()
            })
            .collect(),
    )
}

/// Assigns every subgame its Shapley value. Requires a non-negative
/// concave game.
pub fn shapley_pmas(game: &TUGame) -> Result<Pmas> {
    if let Some((coalition, _)) = game.entries().find(|(_, v)| v.is_negative()) {
        return Err(Error::NegativeValue { coalition });
    }
    if let Some(w) = concavity_violation(game) {
        return Err(Error::NotConcave(Box::new(w)));
    }
    Ok(Pmas::from_fn(game.n(), |s| shapley(&game.subgame(s)).into_amounts()))
}
