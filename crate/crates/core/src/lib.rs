//! Cost allocation for production-inventory situations.
//!
//! Players facing integer demand over a finite horizon may cooperate by
//! producing at the cheapest member's cost and sharing carrying costs. The
//! crate computes coalition costs through closed-form dual prices, checks
//! them against a brute-force oracle and an exact simplex, and provides the
//! Owen point, core checks, the dual-price allocation scheme, game
//! constructions and axiom checkers.

#![no_std]

extern crate alloc;

pub mod allocation;
pub mod axioms;
pub mod coalition;
pub mod constructions;
pub mod error;
pub mod instances;
pub mod lp;
pub mod model;
pub mod rational;
pub mod solver;

pub use allocation::{core_is_owen_singleton, essential_players, in_core, owen_point, pmas, CoreVerdict, EssentialReport};
pub use coalition::{coalitions, Coalition, MAX_PLAYERS};
pub use error::{Error, Result};
pub use model::{validate, Allocation, PISituation, Pmas, RawSituation, TUGame, ValidationError, Warning};
pub use rational::{format_rational, parse_rational, Rational};
pub use solver::{build_game, char_value, dual_solution, oracle_cost, primal_plan, DualSolution, OracleLimits};
