//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use prodinv_core::rational::Rational;
use prodinv_core::{Coalition, PISituation, TUGame};
use rand::Rng;

pub fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("P{i}")).collect()
}

/// Non-negative rational with value at most `max`, denominator at most 4.
pub fn cost<R: Rng>(rng: &mut R, max: i64) -> Rational {
    let den = rng.gen_range(1..=4i64);
    Rational::new(rng.gen_range(0..=max * den).into(), den.into())
}

fn cost_rows<R: Rng>(rng: &mut R, n: usize, len: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|_| (0..len).map(|_| cost(rng, 10)).collect()).collect()
}

pub fn demand_rows<R: Rng>(rng: &mut R, n: usize, t: usize) -> Vec<Vec<u64>> {
    (0..n).map(|_| (0..t).map(|_| rng.gen_range(0..=3)).collect()).collect()
}

/// `n` players, `t` periods, demand entries in `0..=3`, costs in `[0, 10]`.
pub fn situation<R: Rng>(rng: &mut R, n: usize, t: usize) -> PISituation {
    PISituation::new(
        names(n),
        t,
        demand_rows(rng, n, t),
        cost_rows(rng, n, t),
        cost_rows(rng, n, t - 1),
        cost_rows(rng, n, t - 1),
    )
    .expect("generated situation is valid")
}

pub fn random_situation<R: Rng>(rng: &mut R, max_players: usize, max_periods: usize) -> PISituation {
    let n = rng.gen_range(1..=max_players);
    let t = rng.gen_range(1..=max_periods);
    situation(rng, n, t)
}

/// Every player has the same cost rows, so nobody is essential.
pub fn identical_rows<R: Rng>(rng: &mut R, n: usize, t: usize) -> PISituation {
    let p: Vec<Rational> = (0..t).map(|_| cost(rng, 10)).collect();
    let h: Vec<Rational> = (0..t - 1).map(|_| cost(rng, 10)).collect();
    let b: Vec<Rational> = (0..t - 1).map(|_| cost(rng, 10)).collect();
    PISituation::new(names(n), t, demand_rows(rng, n, t), vec![p; n], vec![h; n], vec![b; n])
        .expect("generated situation is valid")
}

/// Non-negative concave cost game: a random non-negative mix of an additive
/// game, an airport game and a concave function of coalition size.
pub fn concave_game<R: Rng>(rng: &mut R, n: usize) -> TUGame {
    let weights: Vec<Rational> = (0..n).map(|_| cost(rng, 10)).collect();
    let heights: Vec<Rational> = (0..n).map(|_| cost(rng, 10)).collect();
    // decreasing non-negative increments
    let mut steps: Vec<Rational> = (0..n).map(|_| cost(rng, 10)).collect();
    steps.sort_by(|a, b| b.cmp(a));
    let mix: Vec<Rational> = (0..3).map(|_| cost(rng, 3)).collect();
    TUGame::from_fn(names(n), |s: Coalition| {
        let additive: Rational = s.members().map(|i| weights[i].clone()).sum();
        let airport = s.members().map(|i| heights[i].clone()).max().unwrap_or_default();
        let size: Rational = steps[..s.len()].iter().cloned().sum();
        &mix[0] * additive + &mix[1] * airport + &mix[2] * size
    })
    .expect("game within player cap")
}
