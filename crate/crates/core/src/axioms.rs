//! Solution rules on production-inventory situations and checkers for the
//! axioms that characterize the Owen point.
//!
//! A rule maps a situation to a finite set of allocations. Each checker
//! evaluates one axiom on one situation and, on failure, returns a witness
//! that can be re-verified without consulting the rule again.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::allocation::{essential_players, owen_point};
use crate::coalition::{coalitions, Coalition};
use crate::constructions::shapley;
use crate::error::Result;
use crate::instances;
use crate::model::{Allocation, PISituation, PlayerId};
use crate::rational::Rational;
use crate::solver::{build_game, char_value, dual_solution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Efficiency,
    Nonemptiness,
    Positivity,
    IndividualRationality,
    Inessentiality,
    DemandAdditivity,
    PopulationMonotonicity,
    Anonymity,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::Efficiency,
        Axiom::Nonemptiness,
        Axiom::Positivity,
        Axiom::IndividualRationality,
        Axiom::Inessentiality,
        Axiom::DemandAdditivity,
        Axiom::PopulationMonotonicity,
        Axiom::Anonymity,
    ];

    /// The six axioms whose logical independence the counterexample rules
    /// demonstrate.
    pub const INDEPENDENCE: [Axiom; 6] = [
        Axiom::Efficiency,
        Axiom::Nonemptiness,
        Axiom::Positivity,
        Axiom::IndividualRationality,
        Axiom::Inessentiality,
        Axiom::DemandAdditivity,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Axiom::Efficiency => "EF",
            Axiom::Nonemptiness => "NE",
            Axiom::Positivity => "PO",
            Axiom::IndividualRationality => "IR",
            Axiom::Inessentiality => "IE",
            Axiom::DemandAdditivity => "AP",
            Axiom::PopulationMonotonicity => "PM",
            Axiom::Anonymity => "AN",
        }
    }

    pub fn from_code(code: &str) -> Option<Axiom> {
        Axiom::ALL.into_iter().find(|a| a.code().eq_ignore_ascii_case(code))
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

pub trait SolutionRule {
    fn name(&self) -> &str;
    /// A finite, duplicate-free set of allocations indexed like `sit`.
    fn evaluate(&self, sit: &PISituation) -> Vec<Allocation>;
}

fn dedup(mut out: Vec<Allocation>) -> Vec<Allocation> {
    let mut k = 0;
    while k < out.len() {
        if out[..k].contains(&out[k]) {
            out.remove(k);
        } else {
            k += 1;
        }
    }
    out
}

/// Wraps a closure as a rule.
pub struct FnRule<F> {
    name: String,
    eval: F,
}

impl<F: Fn(&PISituation) -> Vec<Allocation>> FnRule<F> {
    pub fn new(name: impl Into<String>, eval: F) -> Self {
        Self { name: name.into(), eval }
    }
}

impl<F: Fn(&PISituation) -> Vec<Allocation>> SolutionRule for FnRule<F> {
    fn name(&self) -> &str {
        &self.name
    }
    fn evaluate(&self, sit: &PISituation) -> Vec<Allocation> {
        dedup((self.eval)(sit))
    }
}

pub struct OwenRule;

impl SolutionRule for OwenRule {
    fn name(&self) -> &str {
        "owen"
    }
    fn evaluate(&self, sit: &PISituation) -> Vec<Allocation> {
        vec![owen_point(sit)]
    }
}

/// On two-player two-period situations where the grand coalition costs no
/// more than either player alone, returns both the equal split and the Owen
/// point; elsewhere the Owen point. Violates demand additivity only.
pub struct EqualSplitRule;

impl EqualSplitRule {
    pub fn in_domain(sit: &PISituation) -> bool {
        if sit.n() != 2 || sit.horizon() != 2 {
            return false;
        }
        let all = char_value(sit, sit.grand()).expect("valid");
        (0..2).all(|i| all <= char_value(sit, Coalition::singleton(i)).expect("valid"))
    }
}

impl SolutionRule for EqualSplitRule {
    fn name(&self) -> &str {
        "equal-split"
    }
    fn evaluate(&self, sit: &PISituation) -> Vec<Allocation> {
        let owen = owen_point(sit);
        if !Self::in_domain(sit) {
            return vec![owen];
        }
        let half = char_value(sit, sit.grand()).expect("valid") / Rational::from_integer(2.into());
        dedup(vec![Allocation::new(vec![half.clone(), half]), owen])
    }
}

/// Charges the whole cost to the first player. Violates individual
/// rationality and inessentiality.
pub struct DumpRule;

impl SolutionRule for DumpRule {
    fn name(&self) -> &str {
        "dump"
    }
    fn evaluate(&self, sit: &PISituation) -> Vec<Allocation> {
        let mut y = Allocation::zeros(sit.n()).into_amounts();
        y[0] = char_value(sit, sit.grand()).expect("valid");
        vec![Allocation::new(y)]
    }
}

/// On one-period two-player situations where the first player produces
/// strictly cheaper, the first player is credited the second player's
/// savings: `(p1 d1 + (p1 - p2) d2, p2 d2)`. Elsewhere the Owen point.
/// Violates positivity only.
pub struct CheaperFirstRule;

impl CheaperFirstRule {
    pub fn in_domain(sit: &PISituation) -> bool {
        sit.n() == 2 && sit.horizon() == 1 && sit.production()[0][0] < sit.production()[1][0]
    }
}

impl SolutionRule for CheaperFirstRule {
    fn name(&self) -> &str {
        "cheaper-first"
    }
    fn evaluate(&self, sit: &PISituation) -> Vec<Allocation> {
        if !Self::in_domain(sit) {
            return vec![owen_point(sit)];
        }
        let p1 = &sit.production()[0][0];
        let p2 = &sit.production()[1][0];
        let d1 = Rational::from_integer(sit.demand()[0][0].into());
        let d2 = Rational::from_integer(sit.demand()[1][0].into());
        vec![Allocation::new(vec![p1 * &d1 + (p1 - p2) * &d2, p2 * &d2])]
    }
}

/// Charges nobody. Violates efficiency only.
pub struct ZeroRule;

impl SolutionRule for ZeroRule {
    fn name(&self) -> &str {
        "zero"
    }
    fn evaluate(&self, sit: &PISituation) -> Vec<Allocation> {
        vec![Allocation::zeros(sit.n())]
    }
}

/// Returns nothing. Violates nonemptiness only.
pub struct EmptyRule;

impl SolutionRule for EmptyRule {
    fn name(&self) -> &str {
        "empty"
    }
    fn evaluate(&self, _sit: &PISituation) -> Vec<Allocation> {
        Vec::new()
    }
}

/// Shapley value of the situation's game.
pub struct ShapleyRule;

impl SolutionRule for ShapleyRule {
    fn name(&self) -> &str {
        "shapley"
    }
    fn evaluate(&self, sit: &PISituation) -> Vec<Allocation> {
        vec![shapley(&build_game(sit).expect("within player cap"))]
    }
}

pub fn builtin_rules() -> Vec<Box<dyn SolutionRule>> {
    vec![
        Box::new(OwenRule),
        Box::new(EqualSplitRule),
        Box::new(DumpRule),
        Box::new(CheaperFirstRule),
        Box::new(ZeroRule),
        Box::new(EmptyRule),
        Box::new(ShapleyRule),
    ]
}

pub fn rule_by_name(name: &str) -> Option<Box<dyn SolutionRule>> {
    builtin_rules().into_iter().find(|r| r.name() == name)
}

/// A rule whose failure pattern over [`Axiom::INDEPENDENCE`] is known, with
/// a situation on which that pattern shows.
pub struct Counterexample {
    pub rule: Box<dyn SolutionRule>,
    pub fails: &'static [Axiom],
    pub domain_name: &'static str,
    pub domain: fn() -> PISituation,
}

pub fn counterexamples() -> Vec<Counterexample> {
    vec![
        Counterexample {
            rule: Box::new(EqualSplitRule),
            fails: &[Axiom::DemandAdditivity],
            domain_name: "equal-split-domain",
            domain: instances::equal_split_domain,
        },
        Counterexample {
            rule: Box::new(DumpRule),
            fails: &[Axiom::IndividualRationality, Axiom::Inessentiality],
            domain_name: "ex1-prime",
            domain: instances::ex1_prime,
        },
        Counterexample {
            rule: Box::new(CheaperFirstRule),
            fails: &[Axiom::Positivity],
            domain_name: "cheaper-first-domain",
            domain: instances::cheaper_first_domain,
        },
        Counterexample {
            rule: Box::new(ZeroRule),
            fails: &[Axiom::Efficiency],
            domain_name: "ex1",
            domain: instances::ex1,
        },
        Counterexample {
            rule: Box::new(EmptyRule),
            fails: &[Axiom::Nonemptiness],
            domain_name: "ex1",
            domain: instances::ex1,
        },
    ]
}

/// Row `j` of the relabeled situation is old player `order[j]`, now named
/// `labels[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    pub order: Vec<usize>,
    pub labels: Vec<PlayerId>,
}

impl Relabeling {
    pub fn identity(sit: &PISituation) -> Self {
        Self { order: (0..sit.n()).collect(), labels: sit.players().to_vec() }
    }

    /// Keep the original labels, permute the rows.
    pub fn permutation(sit: &PISituation, order: Vec<usize>) -> Self {
        let labels = order.iter().map(|&i| sit.players()[i].clone()).collect();
        Self { order, labels }
    }

    /// Permute the rows and rename every player to a label not used in `sit`.
    pub fn fresh(sit: &PISituation, order: Vec<usize>) -> Self {
        let labels = order
            .iter()
            .map(|&i| {
                let mut l = format!("{}'", sit.players()[i]);
                while sit.players().contains(&l) {
                    l.push('\'');
                }
                l
            })
            .collect();
        Self { order, labels }
    }

    /// `z_j = y_{order[j]}`.
    pub fn apply(&self, y: &Allocation) -> Allocation {
        Allocation::new(self.order.iter().map(|&i| y[i].clone()).collect())
    }
}

/// Evidence that an axiom fails. Every variant carries enough data to be
/// re-checked against the situation with [`Witness::confirms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Inefficient { allocation: Allocation, total: Rational, cost: Rational },
    EmptyOutput,
    NegativeShare { allocation: Allocation, player: usize },
    AboveStandalone { allocation: Allocation, player: usize, standalone: Rational },
    InessentialExcess { allocation: Allocation, player: usize, charged: Rational, cost: Rational },
    /// No choice of one allocation per isolated-demand situation sums to
    /// `allocation`; `parts[k]` is the rule's output with only player `k`'s demand.
    NoDecomposition { allocation: Allocation, parts: Vec<Vec<Allocation>> },
    NotPopulationMonotone { coalition: Coalition, allocation: Allocation, restricted: Allocation, player: usize },
    /// `expected` should appear in `found` (or vice versa, when `missing_from_relabeled` is false).
    NotAnonymous { relabeling: Relabeling, expected: Allocation, found: Vec<Allocation>, missing_from_relabeled: bool },
}

impl Witness {
    /// Re-verifies the violation from the stored data and the situation.
    pub fn confirms(&self, sit: &PISituation) -> bool {
        match self {
            Witness::Inefficient { allocation, .. } => {
                allocation.total() != char_value(sit, sit.grand()).expect("valid")
            }
            Witness::EmptyOutput => true,
            Witness::NegativeShare { allocation, player } => allocation[*player].is_negative(),
            Witness::AboveStandalone { allocation, player, .. } => {
                allocation[*player] > char_value(sit, Coalition::singleton(*player)).expect("valid")
            }
            Witness::InessentialExcess { allocation, player, .. } => {
                let rest = sit.grand().without(*player);
                !essential_players(sit).is_essential(*player)
                    && allocation.coalition_sum(rest) > coalition_cost(sit, rest)
            }
            Witness::NoDecomposition { allocation, parts } => find_decomposition(allocation, parts).is_none(),
            Witness::NotPopulationMonotone { coalition, allocation, restricted, player } => {
                let rank = coalition.rank_of(*player).expect("member");
                allocation[*player] > restricted[rank]
            }
            Witness::NotAnonymous { expected, found, .. } => !found.contains(expected),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |a: &Allocation| {
            let parts: Vec<String> = a.amounts().iter().map(|v| format!("{v}")).collect();
            format!("({})", parts.join(", "))
        };
        match self {
            Witness::Inefficient { allocation, total, cost } => {
                write!(f, "{} sums to {total}, c(N) = {cost}", show(allocation))
            }
            Witness::EmptyOutput => f.write_str("rule returned no allocation"),
            Witness::NegativeShare { allocation, player } => {
                write!(f, "{} charges player {} a negative amount", show(allocation), player + 1)
            }
            Witness::AboveStandalone { allocation, player, standalone } => write!(
                f,
                "{} charges player {} more than c({{{}}}) = {standalone}",
                show(allocation),
                player + 1,
                player + 1
            ),
            Witness::InessentialExcess { allocation, player, charged, cost } => write!(
                f,
                "{}: N without inessential player {} pays {charged} > {cost}",
                show(allocation),
                player + 1
            ),
            Witness::NoDecomposition { allocation, .. } => {
                write!(f, "{} is not a sum of single-demand outputs", show(allocation))
            }
            Witness::NotPopulationMonotone { coalition, allocation, restricted, player } => write!(
                f,
                "player {} pays {} in N but only {} in {coalition:?}",
                player + 1,
                allocation[*player],
                restricted[coalition.rank_of(*player).unwrap_or(0)]
            ),
            Witness::NotAnonymous { expected, missing_from_relabeled, .. } => {
                if *missing_from_relabeled {
                    write!(f, "relabeled output lacks {}", show(expected))
                } else {
                    write!(f, "relabeled output has extra {}", show(expected))
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl AxiomVerdict {
    fn pass(axiom: Axiom) -> Self {
        Self { axiom, passed: true, witness: None }
    }

    fn fail(axiom: Axiom, witness: Witness) -> Self {
        Self { axiom, passed: false, witness: Some(witness) }
    }

    fn from_first(axiom: Axiom, witness: Option<Witness>) -> Self {
        match witness {
            Some(w) => Self::fail(axiom, w),
            None => Self::pass(axiom),
        }
    }
}

fn coalition_cost(sit: &PISituation, s: Coalition) -> Rational {
    if s.is_empty() {
        Rational::zero()
    } else {
        char_value(sit, s).expect("valid")
    }
}

pub fn check_efficiency(rule: &dyn SolutionRule, sit: &PISituation) -> AxiomVerdict {
    let cost = coalition_cost(sit, sit.grand());
    let w = rule.evaluate(sit).into_iter().find_map(|y| {
        let total = y.total();
        (total != cost).then(|| Witness::Inefficient { allocation: y, total, cost: cost.clone() })
    });
    AxiomVerdict::from_first(Axiom::Efficiency, w)
}

pub fn check_nonemptiness(rule: &dyn SolutionRule, sit: &PISituation) -> AxiomVerdict {
    if rule.evaluate(sit).is_empty() {
        AxiomVerdict::fail(Axiom::Nonemptiness, Witness::EmptyOutput)
    } else {
        AxiomVerdict::pass(Axiom::Nonemptiness)
    }
}

pub fn check_positivity(rule: &dyn SolutionRule, sit: &PISituation) -> AxiomVerdict {
    let w = rule.evaluate(sit).into_iter().find_map(|y| {
        let player = (0..y.len()).find(|&i| y[i].is_negative())?;
        Some(Witness::NegativeShare { allocation: y, player })
    });
    AxiomVerdict::from_first(Axiom::Positivity, w)
}

pub fn check_individual_rationality(rule: &dyn SolutionRule, sit: &PISituation) -> AxiomVerdict {
    let standalone: Vec<Rational> = (0..sit.n()).map(|i| coalition_cost(sit, Coalition::singleton(i))).collect();
    let w = rule.evaluate(sit).into_iter().find_map(|y| {
        let player = (0..y.len()).find(|&i| y[i] > standalone[i])?;
        Some(Witness::AboveStandalone { allocation: y, player, standalone: standalone[player].clone() })
    });
    AxiomVerdict::from_first(Axiom::IndividualRationality, w)
}

pub fn check_inessentiality(rule: &dyn SolutionRule, sit: &PISituation) -> AxiomVerdict {
    let report = essential_players(sit);
    let inessential: Vec<usize> = report.inessential(sit.n()).collect();
    let costs: Vec<Rational> = inessential
        .iter()
        .map(|&i| coalition_cost(sit, sit.grand().without(i)))
        .collect();
    let w = rule.evaluate(sit).into_iter().find_map(|y| {
        inessential.iter().zip(&costs).find_map(|(&i, cost)| {
            let charged = y.coalition_sum(sit.grand().without(i));
            (&charged > cost).then(|| Witness::InessentialExcess {
                allocation: y.clone(),
                player: i,
                charged,
                cost: cost.clone(),
            })
        })
    });
    AxiomVerdict::from_first(Axiom::Inessentiality, w)
}

/// Depth-first search for one allocation per part summing to `target`.
fn find_decomposition(target: &Allocation, parts: &[Vec<Allocation>]) -> Option<Vec<usize>> {
    fn go(target: &Allocation, parts: &[Vec<Allocation>], acc: Allocation, picks: &mut Vec<usize>) -> bool {
        let k = picks.len();
        if k == parts.len() {
            return &acc == target;
        }
        for (j, z) in parts[k].iter().enumerate() {
            picks.push(j);
            if go(target, parts, acc.add(z), picks) {
                return true;
            }
            picks.pop();
        }
        false
    }
    let mut picks = Vec::new();
    go(target, parts, Allocation::zeros(target.len()), &mut picks).then_some(picks)
}

pub fn check_demand_additivity(rule: &dyn SolutionRule, sit: &PISituation) -> AxiomVerdict {
    let outputs = rule.evaluate(sit);
    if outputs.is_empty() {
        return AxiomVerdict::pass(Axiom::DemandAdditivity);
    }
    let parts: Vec<Vec<Allocation>> = (0..sit.n()).map(|k| rule.evaluate(&sit.isolate_demand(k))).collect();
    let w = outputs.into_iter().find_map(|y| {
        find_decomposition(&y, &parts)
            .is_none()
            .then(|| Witness::NoDecomposition { allocation: y, parts: parts.clone() })
    });
    AxiomVerdict::from_first(Axiom::DemandAdditivity, w)
}

/// Every allocation of the full situation charges each member of `S` no
/// more than every allocation of the restriction to `S`, for all `S`
/// including `N` itself.
pub fn check_population_monotonicity(rule: &dyn SolutionRule, sit: &PISituation) -> AxiomVerdict {
    let outputs = rule.evaluate(sit);
    if outputs.is_empty() {
        return AxiomVerdict::pass(Axiom::PopulationMonotonicity);
    }
    for s in coalitions(sit.n()) {
        let restricted_sit = sit.restrict(s).expect("nonempty");
        for z in rule.evaluate(&restricted_sit) {
            for y in &outputs {
                for (rank, i) in s.members().enumerate() {
                    if y[i] > z[rank] {
                        return AxiomVerdict::fail(
                            Axiom::PopulationMonotonicity,
                            Witness::NotPopulationMonotone {
                                coalition: s,
                                allocation: y.clone(),
                                restricted: z.clone(),
                                player: i,
                            },
                        );
                    }
                }
            }
        }
    }
    AxiomVerdict::pass(Axiom::PopulationMonotonicity)
}

/// Output on the relabeled situation must equal the relabeled output.
pub fn check_anonymity(rule: &dyn SolutionRule, sit: &PISituation, sigma: &Relabeling) -> Result<AxiomVerdict> {
    let relabeled = sit.permuted(&sigma.order, sigma.labels.clone())?;
    let mapped: Vec<Allocation> = rule.evaluate(sit).iter().map(|y| sigma.apply(y)).collect();
    let found = rule.evaluate(&relabeled);
    if let Some(missing) = mapped.iter().find(|z| !found.contains(z)) {
        return Ok(AxiomVerdict::fail(
            Axiom::Anonymity,
            Witness::NotAnonymous {
                relabeling: sigma.clone(),
                expected: missing.clone(),
                found,
                missing_from_relabeled: true,
            },
        ));
    }
    if let Some(extra) = found.iter().find(|z| !mapped.contains(z)) {
        return Ok(AxiomVerdict::fail(
            Axiom::Anonymity,
            Witness::NotAnonymous {
                relabeling: sigma.clone(),
                expected: extra.clone(),
                found: mapped,
                missing_from_relabeled: false,
            },
        ));
    }
    Ok(AxiomVerdict::pass(Axiom::Anonymity))
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// Relabelings used for anonymity: every permutation of the original labels
/// when `n <= 5`, plus `samples` seeded random bijections to fresh labels.
pub fn anonymity_relabelings(sit: &PISituation, seed: u64, samples: usize) -> Vec<Relabeling> {
    let n = sit.n();
    let mut out: Vec<Relabeling> = if n <= 5 {
        permutations(n).into_iter().map(|p| Relabeling::permutation(sit, p)).collect()
    } else {
        vec![Relabeling::identity(sit)]
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        out.push(Relabeling::fresh(sit, order));
    }
    out
}

/// Anonymity over several relabelings; the first failure wins.
pub fn check_anonymity_all(rule: &dyn SolutionRule, sit: &PISituation, sigmas: &[Relabeling]) -> AxiomVerdict {
    for sigma in sigmas {
        let v = check_anonymity(rule, sit, sigma).expect("relabelings are bijections");
        if !v.passed {
            return v;
        }
    }
    AxiomVerdict::pass(Axiom::Anonymity)
}

pub fn check_axiom(rule: &dyn SolutionRule, sit: &PISituation, axiom: Axiom, sigmas: &[Relabeling]) -> AxiomVerdict {
    match axiom {
        Axiom::Efficiency => check_efficiency(rule, sit),
        Axiom::Nonemptiness => check_nonemptiness(rule, sit),
        Axiom::Positivity => check_positivity(rule, sit),
        Axiom::IndividualRationality => check_individual_rationality(rule, sit),
        Axiom::Inessentiality => check_inessentiality(rule, sit),
        Axiom::DemandAdditivity => check_demand_additivity(rule, sit),
        Axiom::PopulationMonotonicity => check_population_monotonicity(rule, sit),
        Axiom::Anonymity => check_anonymity_all(rule, sit, sigmas),
    }
}

pub fn check_all(rule: &dyn SolutionRule, sit: &PISituation, sigmas: &[Relabeling]) -> Vec<AxiomVerdict> {
    Axiom::ALL.iter().map(|&a| check_axiom(rule, sit, a, sigmas)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleReport {
    pub rule: String,
    pub verdicts: Vec<AxiomVerdict>,
}

impl RuleReport {
    pub fn failed(&self) -> Vec<Axiom> {
        self.verdicts.iter().filter(|v| !v.passed).map(|v| v.axiom).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleCheck {
    pub rule: String,
    pub domain: &'static str,
    pub expected_failures: Vec<Axiom>,
    /// Verdicts over [`Axiom::INDEPENDENCE`] on the domain situation.
    pub verdicts: Vec<AxiomVerdict>,
    pub matches: bool,
}

/// Checks the collapse argument for situations without essential players:
/// removing an inessential player `i` costs exactly `o_{N\{i}}`, so any
/// efficient allocation obeying the inessentiality bounds satisfies
/// `y_i >= c(N) - c(N\{i}) = o_i` for all `i` and therefore equals `o`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseCheck {
    pub bounds_equal_owen: bool,
    pub sampled: usize,
    /// Sampled efficient allocations meeting every inessentiality bound
    /// that differ from the Owen point. Must be empty.
    pub rivals: Vec<Allocation>,
}

impl CollapseCheck {
    pub fn holds(&self) -> bool {
        self.bounds_equal_owen && self.rivals.is_empty()
    }
}

pub fn collapse_check(sit: &PISituation, seed: u64, samples: usize) -> CollapseCheck {
    let o = owen_point(sit);
    let grand = sit.grand();
    let total = coalition_cost(sit, grand);
    let bounds: Vec<Rational> = (0..sit.n())
        .map(|i| &total - coalition_cost(sit, grand.without(i)))
        .collect();
    let bounds_equal_owen = bounds.as_slice() == o.amounts();

    let admissible = |y: &Allocation| {
        y.total() == total
            && (0..sit.n()).all(|i| y.coalition_sum(grand.without(i)) <= coalition_cost(sit, grand.without(i)))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rivals = Vec::new();
    let n = sit.n();
    for _ in 0..samples {
        let mut y = o.clone().into_amounts();
        if n >= 2 {
            // move a small rational amount between two distinct players
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let eps = Rational::new(rng.gen_range(1i64..=4).into(), rng.gen_range(1i64..=8).into());
            y[i] += &eps;
            y[j] -= &eps;
        }
        let y = Allocation::new(y);
        if admissible(&y) && y != o {
            rivals.push(y);
        }
    }
    CollapseCheck { bounds_equal_owen, sampled: samples, rivals }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterizationReport {
    /// Every built-in rule's verdicts on the situation.
    pub rules: Vec<RuleReport>,
    pub owen_passes_all: bool,
    pub counterexamples: Vec<CounterexampleCheck>,
    /// Present when the situation has no essential player.
    pub collapse: Option<CollapseCheck>,
}

impl CharacterizationReport {
    pub fn holds(&self) -> bool {
        self.owen_passes_all
            && self.counterexamples.iter().all(|c| c.matches)
            && self.collapse.as_ref().is_none_or(CollapseCheck::holds)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    pub seed: u64,
    pub relabel_samples: usize,
    pub collapse_samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { seed: 0, relabel_samples: 4, collapse_samples: 64 }
    }
}

pub fn counterexample_check(cx: &Counterexample) -> CounterexampleCheck {
    let domain = (cx.domain)();
    let verdicts: Vec<AxiomVerdict> = Axiom::INDEPENDENCE
        .iter()
        .map(|&a| check_axiom(cx.rule.as_ref(), &domain, a, &[]))
        .collect();
    let failed: Vec<Axiom> = verdicts.iter().filter(|v| !v.passed).map(|v| v.axiom).collect();
    CounterexampleCheck {
        rule: cx.rule.name().into(),
        domain: cx.domain_name,
        expected_failures: cx.fails.to_vec(),
        matches: failed == cx.fails,
        verdicts,
    }
}

pub fn characterization_suite(sit: &PISituation, opts: SuiteOptions) -> CharacterizationReport {
    let sigmas = anonymity_relabelings(sit, opts.seed, opts.relabel_samples);
    let rules: Vec<RuleReport> = builtin_rules()
        .iter()
        .map(|r| RuleReport { rule: r.name().into(), verdicts: check_all(r.as_ref(), sit, &sigmas) })
        .collect();
    let owen_passes_all = rules[0].verdicts.iter().all(|v| v.passed);
    let counterexamples = counterexamples().iter().map(counterexample_check).collect();
    let collapse = essential_players(sit)
        .essential
        .is_empty()
        .then(|| collapse_check(sit, opts.seed, opts.collapse_samples));
    CharacterizationReport { rules, owen_passes_all, counterexamples, collapse }
}

/// Adds a copy of player `j` (same demand and costs) under `label`.
pub fn clone_player(sit: &PISituation, j: usize, label: PlayerId) -> PISituation {
    let mut raw = sit.to_raw();
    raw.players.push(label);
    raw.demand.push(raw.demand[j].clone());
    raw.production.push(raw.production[j].clone());
    raw.holding.push(raw.holding[j].clone());
    raw.backlogging.push(raw.backlogging[j].clone());
    crate::model::validate(&raw).expect("clone of a valid situation").situation
}

/// Cloning a player leaves the grand coalition's dual prices unchanged.
pub fn cloning_preserves_prices(sit: &PISituation, j: usize) -> bool {
    let cloned = clone_player(sit, j, format!("{}#clone", sit.players()[j]));
    dual_solution(sit, sit.grand()).expect("valid") == dual_solution(&cloned, cloned.grand()).expect("valid")
}
