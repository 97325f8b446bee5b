//! Small named situations used in docs, tests, and as witness domains for
//! the counterexample rules.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::model::{validate, PISituation, RawSituation};
use crate::rational::{int, Rational};

fn row(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| alloc::format!("P{i}")).collect()
}

/// Two players, two periods. Game `(2, 2, 3)`, Owen point `(1, 2)`.
pub fn ex1_raw() -> RawSituation {
    RawSituation {
        players: names(2),
        horizon: 2,
        demand: vec![row(&[1, 0]), row(&[0, 2])],
        production: vec![row(&[2, 1]), row(&[1, 1])],
        holding: vec![row(&[1]), row(&[2])],
        backlogging: vec![row(&[1]), row(&[2])],
    }
}

pub fn ex1() -> PISituation {
    validate(&ex1_raw()).expect("valid").situation
}

/// Same game as [`ex1`] but Owen point `(2, 1)`.
pub fn ex1_prime() -> PISituation {
    let raw = RawSituation {
        players: names(2),
        horizon: 2,
        demand: vec![row(&[0, 2]), row(&[1, 0])],
        production: vec![row(&[1, 1]), row(&[2, 1])],
        holding: vec![row(&[2]), row(&[3])],
        backlogging: vec![row(&[2]), row(&[2])],
    };
    validate(&raw).expect("valid").situation
}

/// Two players, two periods, `c(N) <= c({i})` for both players, and an Owen
/// point `(1, 0)` that differs from the equal split.
pub fn equal_split_domain() -> PISituation {
    PISituation::new(
        names(2),
        2,
        vec![vec![1, 0], vec![0, 1]],
        vec![row(&[5, 0]), row(&[5, 5])],
        vec![row(&[0]), row(&[0])],
        vec![row(&[5]), row(&[1])],
    )
    .expect("valid")
}

/// One period, two players, player 1 strictly cheaper and demand only from
/// player 2.
pub fn cheaper_first_domain() -> PISituation {
    PISituation::new(
        names(2),
        1,
        vec![vec![0], vec![1]],
        vec![row(&[1]), row(&[2])],
        vec![vec![], vec![]],
        vec![vec![], vec![]],
    )
    .expect("valid")
}
