//! Production-inventory situations, TU cost games, allocations and
//! allocation schemes.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::coalition::{coalitions, Coalition, MAX_PLAYERS};
use crate::error::{Error, Result};
use crate::rational::Rational;

pub type PlayerId = String;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Matrix {
    Demand,
    Production,
    Holding,
    Backlogging,
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Matrix::Demand => "demand",
            Matrix::Production => "production",
            Matrix::Holding => "holding",
            Matrix::Backlogging => "backlogging",
        })
    }
}

/// Unvalidated situation data as read from a file. Every entry is an exact
/// rational so that integrality and sign can be diagnosed.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RawSituation {
    pub players: Vec<PlayerId>,
    pub horizon: i64,
    pub demand: Vec<Vec<Rational>>,
    pub production: Vec<Vec<Rational>>,
    pub holding: Vec<Vec<Rational>>,
    pub backlogging: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoPlayers,
    TooManyPlayers { players: usize },
    HorizonTooSmall { horizon: i64 },
    DuplicatePlayer { id: PlayerId },
    RowCount { matrix: Matrix, expected: usize, found: usize },
    RowLength { matrix: Matrix, row: usize, expected: usize, found: usize },
    NegativeDemand { row: usize, period: usize },
    NonIntegerDemand { row: usize, period: usize },
    DemandOverflow { row: usize, period: usize },
    NegativeCost { matrix: Matrix, row: usize, period: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoPlayers => f.write_str("no players"),
            Violation::TooManyPlayers { players } => {
                write!(f, "{players} players exceeds the cap of {MAX_PLAYERS}")
            }
            Violation::HorizonTooSmall { horizon } => write!(f, "horizon T={horizon} must be >= 1"),
            Violation::DuplicatePlayer { id } => write!(f, "duplicate player id {id:?}"),
            Violation::RowCount { matrix, expected, found } => {
                write!(f, "{matrix} matrix has {found} rows, expected {expected}")
            }
            Violation::RowLength { matrix, row, expected, found } => write!(
                f,
                "{matrix} row {} has {found} entries, expected {expected}",
                row + 1
            ),
            Violation::NegativeDemand { row, period } => {
                write!(f, "negative demand at row {}, period {}", row + 1, period + 1)
            }
            Violation::NonIntegerDemand { row, period } => {
                write!(f, "non-integer demand at row {}, period {}", row + 1, period + 1)
            }
            Violation::DemandOverflow { row, period } => {
                write!(f, "demand too large at row {}, period {}", row + 1, period + 1)
            }
            Violation::NegativeCost { matrix, row, period } => write!(
                f,
                "negative {matrix} cost at row {}, period {}",
                row + 1,
                period + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationError {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid situation")?;
        for (k, v) in self.violations.iter().enumerate() {
            f.write_str(if k == 0 { ": " } else { "; " })?;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl core::error::Error for ValidationError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    /// A carrying-cost row had `T` entries; the period-`T` entry can never be
    /// charged because end-of-horizon stock and backlog are zero.
    TrailingCarryCostDropped { matrix: Matrix, row: usize },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::TrailingCarryCostDropped { matrix, row } => write!(
                f,
                "{matrix} row {} has T entries; the final-period entry is ignored",
                row + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Validated {
    pub situation: PISituation,
    pub warnings: Vec<Warning>,
}

/// A validated production-inventory situation.
///
/// Rows are players in `players` order. Demand and production have `T`
/// columns; holding and backlogging have `T - 1` columns, entry `t` being
/// the unit cost of carrying stock (resp. backlog) from period `t` to `t+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PISituation {
    players: Vec<PlayerId>,
    horizon: usize,
    demand: Vec<Vec<u64>>,
    production: Vec<Vec<Rational>>,
    holding: Vec<Vec<Rational>>,
    backlogging: Vec<Vec<Rational>>,
}

/// Checks every invariant and reports all violations at once.
pub fn validate(raw: &RawSituation) -> core::result::Result<Validated, ValidationError> {
    let mut violations = Vec::new();
    let mut warnings = Vec::new();
    let n = raw.players.len();
    if n == 0 {
        violations.push(Violation::NoPlayers);
    }
    if n > MAX_PLAYERS {
        violations.push(Violation::TooManyPlayers { players: n });
    }
    for (k, id) in raw.players.iter().enumerate() {
        if raw.players[..k].contains(id) && !violations.iter().any(|v| matches!(v, Violation::DuplicatePlayer { id: d } if d == id)) {
            violations.push(Violation::DuplicatePlayer { id: id.clone() });
        }
    }
    if raw.horizon < 1 {
        violations.push(Violation::HorizonTooSmall { horizon: raw.horizon });
        return Err(ValidationError { violations });
    }
    let t = raw.horizon as usize;

    let mut check_rows = |matrix: Matrix, rows: &Vec<Vec<Rational>>, widths: &[usize]| {
        if rows.len() != n {
            violations.push(Violation::RowCount { matrix, expected: n, found: rows.len() });
        }
        for (row, entries) in rows.iter().enumerate() {
            if !widths.contains(&entries.len()) {
                violations.push(Violation::RowLength {
                    matrix,
                    row,
                    expected: widths[0],
                    found: entries.len(),
                });
            }
            for (period, v) in entries.iter().enumerate() {
                if v.is_negative() {
                    violations.push(match matrix {
                        Matrix::Demand => Violation::NegativeDemand { row, period },
                        _ => Violation::NegativeCost { matrix, row, period },
                    });
                } else if matrix == Matrix::Demand {
                    if !v.is_integer() {
                        violations.push(Violation::NonIntegerDemand { row, period });
                    } else if v.to_integer().to_u64().is_none() {
                        violations.push(Violation::DemandOverflow { row, period });
                    }
                }
            }
        }
    };
    check_rows(Matrix::Demand, &raw.demand, &[t]);
    check_rows(Matrix::Production, &raw.production, &[t]);
    check_rows(Matrix::Holding, &raw.holding, &[t - 1, t]);
    check_rows(Matrix::Backlogging, &raw.backlogging, &[t - 1, t]);

    if !violations.is_empty() {
        return Err(ValidationError { violations });
    }

    let mut carry = |matrix: Matrix, rows: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
        rows.iter()
            .enumerate()
            .map(|(row, entries)| {
                if entries.len() == t && t > 0 {
                    warnings.push(Warning::TrailingCarryCostDropped { matrix, row });
                }
                entries[..t - 1].to_vec()
            })
            .collect()
    };
    let holding = carry(Matrix::Holding, &raw.holding);
    let backlogging = carry(Matrix::Backlogging, &raw.backlogging);
    let demand = raw
        .demand
        .iter()
        .map(|r| r.iter().map(|v| v.to_integer().to_u64().unwrap()).collect())
        .collect();
    Ok(Validated {
        situation: PISituation {
            players: raw.players.clone(),
            horizon: t,
            demand,
            production: raw.production.clone(),
            holding,
            backlogging,
        },
        warnings,
    })
}

impl PISituation {
    /// Builds a situation from already-typed matrices. Carrying-cost rows
    /// must have exactly `T - 1` entries.
    pub fn new(
        players: Vec<PlayerId>,
        horizon: usize,
        demand: Vec<Vec<u64>>,
        production: Vec<Vec<Rational>>,
        holding: Vec<Vec<Rational>>,
        backlogging: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let raw = RawSituation {
            players,
            horizon: horizon as i64,
            demand: demand
                .iter()
                .map(|r| r.iter().map(|&d| Rational::from_integer(d.into())).collect())
                .collect(),
            production,
            holding,
            backlogging,
        };
        let width = horizon.saturating_sub(1);
        let mut bad = Vec::new();
        for (matrix, rows) in [(Matrix::Holding, &raw.holding), (Matrix::Backlogging, &raw.backlogging)] {
            for (row, r) in rows.iter().enumerate() {
                if horizon >= 1 && r.len() != width {
                    bad.push(Violation::RowLength { matrix, row, expected: width, found: r.len() });
                }
            }
        }
        if !bad.is_empty() {
            return Err(ValidationError { violations: bad }.into());
        }
        Ok(validate(&raw)?.situation)
    }

    pub fn players(&self) -> &[PlayerId] {
        &self.players
    }

    pub fn n(&self) -> usize {
        self.players.len()
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn grand(&self) -> Coalition {
        Coalition::grand(self.n())
    }

    pub fn demand(&self) -> &[Vec<u64>] {
        &self.demand
    }

    pub fn production(&self) -> &[Vec<Rational>] {
        &self.production
    }

    pub fn holding(&self) -> &[Vec<Rational>] {
        &self.holding
    }

    pub fn backlogging(&self) -> &[Vec<Rational>] {
        &self.backlogging
    }

    pub fn total_demand(&self, player: usize) -> u64 {
        self.demand[player].iter().sum()
    }

    /// Raw form with `T - 1` carrying columns; `validate` maps it back to
    /// `self` without warnings.
    pub fn to_raw(&self) -> RawSituation {
        RawSituation {
            players: self.players.clone(),
            horizon: self.horizon as i64,
            demand: self
                .demand
                .iter()
                .map(|r| r.iter().map(|&d| Rational::from_integer(d.into())).collect())
                .collect(),
            production: self.production.clone(),
            holding: self.holding.clone(),
            backlogging: self.backlogging.clone(),
        }
    }

    pub fn check_coalition(&self, s: Coalition) -> Result<()> {
        if s.is_empty() {
            return Err(Error::EmptyCoalition);
        }
        if !s.is_subset_of(self.grand()) {
            return Err(Error::CoalitionOutOfRange { coalition: s, players: self.n() });
        }
        Ok(())
    }

    /// The sub-situation with only the rows of `s`, in original order.
    pub fn restrict(&self, s: Coalition) -> Result<PISituation> {
        self.check_coalition(s)?;
        let pick = |rows: &[Vec<Rational>]| s.members().map(|i| rows[i].clone()).collect();
        Ok(PISituation {
            players: s.members().map(|i| self.players[i].clone()).collect(),
            horizon: self.horizon,
            demand: s.members().map(|i| self.demand[i].clone()).collect(),
            production: pick(&self.production),
            holding: pick(&self.holding),
            backlogging: pick(&self.backlogging),
        })
    }

    /// Same costs, demand replaced by `demand`.
    pub fn with_demand(&self, demand: Vec<Vec<u64>>) -> PISituation {
        assert_eq!(demand.len(), self.n());
        assert!(demand.iter().all(|r| r.len() == self.horizon));
        PISituation { demand, ..self.clone() }
    }

    /// Demand matrix `D_k`: player `k` keeps its row, every other row is zero.
    pub fn isolate_demand(&self, k: usize) -> PISituation {
        let demand = (0..self.n())
            .map(|i| if i == k { self.demand[i].clone() } else { vec![0; self.horizon] })
            .collect();
        self.with_demand(demand)
    }

    /// Reorders and relabels players: row `j` of the result is row
    /// `order[j]` of `self`, named `labels[j]`.
    pub fn permuted(&self, order: &[usize], labels: Vec<PlayerId>) -> Result<PISituation> {
        let n = self.n();
        if order.len() != n || labels.len() != n {
            return Err(Error::InvalidRelabeling { reason: "length mismatch" });
        }
        let mut seen = vec![false; n];
        for &i in order {
            if i >= n || seen[i] {
                return Err(Error::InvalidRelabeling { reason: "order is not a permutation" });
            }
            seen[i] = true;
        }
        for (k, l) in labels.iter().enumerate() {
            if labels[..k].contains(l) {
                return Err(Error::InvalidRelabeling { reason: "duplicate label" });
            }
        }
        let pick_r = |rows: &[Vec<Rational>]| order.iter().map(|&i| rows[i].clone()).collect();
        Ok(PISituation {
            players: labels,
            horizon: self.horizon,
            demand: order.iter().map(|&i| self.demand[i].clone()).collect(),
            production: pick_r(&self.production),
            holding: pick_r(&self.holding),
            backlogging: pick_r(&self.backlogging),
        })
    }
}

/// Exact cost allocation indexed by player position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Allocation(Vec<Rational>);

impl Allocation {
    pub fn new(amounts: Vec<Rational>) -> Self {
        Self(amounts)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![Rational::zero(); n])
    }

    pub fn amounts(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_amounts(self) -> Vec<Rational> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    /// `x_S`, the amount charged to coalition `s`.
    pub fn coalition_sum(&self, s: Coalition) -> Rational {
        s.members().map(|i| &self.0[i]).sum()
    }

    pub fn add(&self, other: &Allocation) -> Allocation {
        assert_eq!(self.len(), other.len());
        Allocation(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Index<usize> for Allocation {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl From<Vec<Rational>> for Allocation {
    fn from(v: Vec<Rational>) -> Self {
        Self(v)
    }
}

/// A TU cost game: players and `c(S)` for every nonempty coalition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TUGame {
    players: Vec<PlayerId>,
    // indexed by coalition bitmask; slot 0 holds c(∅) = 0
    values: Vec<Rational>,
}

impl TUGame {
    /// `values[mask]` is `c(S)` for the coalition with that bitmask; slot 0
    /// is ignored and forced to zero.
    pub fn new(players: Vec<PlayerId>, mut values: Vec<Rational>) -> Result<Self> {
        let n = players.len();
        if n > MAX_PLAYERS {
            return Err(Error::TooManyPlayers { players: n, cap: MAX_PLAYERS });
        }
        if values.len() != 1 << n {
            return Err(Error::IncompleteGame {
                expected: (1 << n) - 1,
                found: values.len().saturating_sub(1),
            });
        }
        values[0] = Rational::zero();
        Ok(Self { players, values })
    }

    pub fn from_fn<F: FnMut(Coalition) -> Rational>(players: Vec<PlayerId>, mut f: F) -> Result<Self> {
        let n = players.len();
        if n > MAX_PLAYERS {
            return Err(Error::TooManyPlayers { players: n, cap: MAX_PLAYERS });
        }
        let values = (0..1u32 << n)
            .map(|m| if m == 0 { Rational::zero() } else { f(Coalition::from_bits(m)) })
            .collect();
        Ok(Self { players, values })
    }

    pub fn players(&self) -> &[PlayerId] {
        &self.players
    }

    pub fn n(&self) -> usize {
        self.players.len()
    }

    pub fn grand(&self) -> Coalition {
        Coalition::grand(self.n())
    }

    /// `c(S)`; `c(∅) = 0`.
    pub fn value(&self, s: Coalition) -> &Rational {
        &self.values[s.index()]
    }

    /// `(S, c(S))` over nonempty coalitions in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (Coalition, &Rational)> + '_ {
        coalitions(self.n()).map(move |s| (s, self.value(s)))
    }

    /// The subgame `c_S` on the members of `s`, relabeled to positions `0..|S|`.
    pub fn subgame(&self, s: Coalition) -> TUGame {
        let members: Vec<usize> = s.members().collect();
        let players = members.iter().map(|&i| self.players[i].clone()).collect();
        let k = members.len();
        let values = (0..1u32 << k)
            .map(|local| {
                let global = Coalition::from_bits(local)
                    .members()
                    .fold(Coalition::EMPTY, |acc, j| acc.with(members[j]));
                self.values[global.index()].clone()
            })
            .collect();
        TUGame { players, values }
    }

    /// Value-wise sum of two games on the same player list.
    pub fn sum(&self, other: &TUGame) -> Result<TUGame> {
        if self.players != other.players {
            return Err(Error::PlayerMismatch {
                left: self.players.clone(),
                right: other.players.clone(),
            });
        }
        Ok(TUGame {
            players: self.players.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }
}

/// An allocation scheme: for each nonempty coalition `S`, a vector of
/// shares over the members of `S` in ascending position order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pmas {
    n: usize,
    shares: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PmasViolation {
    Inefficient { coalition: Coalition, assigned: Rational, value: Rational },
    NotMonotone { player: usize, smaller: Coalition, larger: Coalition, in_smaller: Rational, in_larger: Rational },
}

impl fmt::Display for PmasViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PmasViolation::Inefficient { coalition, assigned, value } => {
                write!(f, "shares in {coalition:?} sum to {assigned}, c = {value}")
            }
            PmasViolation::NotMonotone { player, smaller, larger, in_smaller, in_larger } => write!(
                f,
                "player {} pays {in_smaller} in {smaller:?} but {in_larger} in the larger {larger:?}",
                player + 1
            ),
        }
    }
}

impl Pmas {
    /// Builds a scheme from a per-coalition share function; `f(S)` must
    /// return one entry per member of `S`.
    pub fn from_fn<F: FnMut(Coalition) -> Vec<Rational>>(n: usize, mut f: F) -> Self {
        let shares = (0..1u32 << n)
            .map(|m| {
                if m == 0 {
                    Vec::new()
                } else {
                    let s = Coalition::from_bits(m);
                    let v = f(s);
                    assert_eq!(v.len(), s.len());
                    v
                }
            })
            .collect();
        Self { n, shares }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Shares of the members of `s`, ascending by position.
    pub fn shares(&self, s: Coalition) -> &[Rational] {
        &self.shares[s.index()]
    }

    /// `y_i^S`.
    pub fn share(&self, s: Coalition, i: usize) -> Option<&Rational> {
        s.rank_of(i).map(|r| &self.shares[s.index()][r])
    }

    /// Per-coalition efficiency, then monotonicity over every pair
    /// `S ⊆ R`. The first violation in canonical coalition order is returned.
    #[allow(clippy::result_large_err)]
    pub fn check(&self, game: &TUGame) -> core::result::Result<(), PmasViolation> {
        assert_eq!(game.n(), self.n);
        for s in coalitions(self.n) {
            let assigned: Rational = self.shares(s).iter().sum();
            if &assigned != game.value(s) {
                return Err(PmasViolation::Inefficient {
                    coalition: s,
                    assigned,
                    value: game.value(s).clone(),
                });
            }
        }
        for larger in coalitions(self.n) {
            for smaller in larger.subsets() {
                if smaller.is_empty() || smaller == larger {
                    continue;
                }
                for i in smaller.members() {
                    let a = self.share(smaller, i).unwrap();
                    let b = self.share(larger, i).unwrap();
                    if a < b {
                        return Err(PmasViolation::NotMonotone {
                            player: i,
                            smaller,
                            larger,
                            in_smaller: a.clone(),
                            in_larger: b.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{ex1, ex1_raw};
    use crate::rational::int;
    use alloc::string::ToString;

    #[test]
    fn ex1_validates() {
        let v = validate(&ex1_raw()).unwrap();
        assert!(v.warnings.is_empty());
        assert_eq!(v.situation.n(), 2);
        assert_eq!(v.situation.horizon(), 2);
    }

    #[test]
    fn negative_demand_is_reported() {
        let mut raw = ex1_raw();
        raw.demand[0][1] = int(-1);
        let err = validate(&raw).unwrap_err();
        assert_eq!(err.violations, [Violation::NegativeDemand { row: 0, period: 1 }]);
        assert!(err.to_string().contains("negative demand"));
    }

    #[test]
    fn every_violation_is_listed() {
        let mut raw = ex1_raw();
        raw.players[1] = "P1".into();
        raw.demand[0][0] = crate::rational::ratio(1, 2);
        raw.production[1].push(int(1));
        raw.holding[0][0] = int(-2);
        raw.backlogging.pop();
        let err = validate(&raw).unwrap_err();
        assert_eq!(
            err.violations,
            [
                Violation::DuplicatePlayer { id: "P1".into() },
                Violation::NonIntegerDemand { row: 0, period: 0 },
                Violation::RowLength { matrix: Matrix::Production, row: 1, expected: 2, found: 3 },
                Violation::NegativeCost { matrix: Matrix::Holding, row: 0, period: 0 },
                Violation::RowCount { matrix: Matrix::Backlogging, expected: 2, found: 1 },
            ]
        );
    }

    #[test]
    fn horizon_and_player_errors() {
        let mut raw = ex1_raw();
        raw.horizon = 0;
        assert_eq!(
            validate(&raw).unwrap_err().violations,
            [Violation::HorizonTooSmall { horizon: 0 }]
        );
        let empty = RawSituation { horizon: 1, ..Default::default() };
        assert_eq!(validate(&empty).unwrap_err().violations, [Violation::NoPlayers]);
        let mut big = RawSituation { horizon: 1, ..Default::default() };
        for i in 0..25 {
            big.players.push(alloc::format!("P{i}"));
            big.demand.push(vec![int(0)]);
            big.production.push(vec![int(0)]);
            big.holding.push(vec![]);
            big.backlogging.push(vec![]);
        }
        assert_eq!(
            validate(&big).unwrap_err().violations,
            [Violation::TooManyPlayers { players: 25 }]
        );
    }

    #[test]
    fn full_length_carry_rows_are_truncated_with_warning() {
        let mut raw = ex1_raw();
        raw.holding[0].push(int(9));
        raw.holding[1].push(int(9));
        let v = validate(&raw).unwrap();
        assert_eq!(v.situation, ex1());
        assert_eq!(
            v.warnings,
            [
                Warning::TrailingCarryCostDropped { matrix: Matrix::Holding, row: 0 },
                Warning::TrailingCarryCostDropped { matrix: Matrix::Holding, row: 1 },
            ]
        );
    }

    #[test]
    fn restrict_picks_rows() {
        let sit = ex1();
        let p1 = sit.restrict(Coalition::singleton(0)).unwrap();
        assert_eq!(p1.players(), ["P1"]);
        assert_eq!(p1.demand(), [vec![1, 0]]);
        assert_eq!(p1.production(), [vec![int(2), int(1)]]);
        assert_eq!(p1.holding(), [vec![int(1)]]);
        assert_eq!(p1.backlogging(), [vec![int(1)]]);
        let p2 = sit.restrict(Coalition::singleton(1)).unwrap();
        assert_eq!(p2.demand(), [vec![0, 2]]);
        assert_eq!(p2.holding(), [vec![int(2)]]);
        assert_eq!(sit.restrict(sit.grand()).unwrap(), sit);
        assert_eq!(sit.restrict(Coalition::EMPTY), Err(Error::EmptyCoalition));
        assert!(matches!(
            sit.restrict(Coalition::singleton(2)),
            Err(Error::CoalitionOutOfRange { .. })
        ));
    }

    #[test]
    fn game_subgame_and_sum() {
        let g = TUGame::from_fn(vec!["a".into(), "b".into(), "c".into()], |s| int(s.bits() as i64)).unwrap();
        let sub = g.subgame(Coalition::from_members([0, 2]));
        assert_eq!(sub.players(), ["a", "c"]);
        assert_eq!(sub.value(Coalition::from_bits(0b11)), &int(0b101));
        assert_eq!(sub.value(Coalition::from_bits(0b10)), &int(0b100));
        let twice = g.sum(&g).unwrap();
        assert_eq!(twice.value(g.grand()), &int(14));
        assert!(TUGame::new(vec!["a".into()], vec![int(0)]).is_err());
    }
}
