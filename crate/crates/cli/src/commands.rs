//! One function per subcommand. Each returns a text rendering, a JSON
//! rendering and whether every verdict it reports passed.

use std::fmt::Write as _;

use anyhow::{bail, Result};
use prodinv_core::allocation::{essential_players, in_core, owen_point, pmas, CoreVerdict};
use prodinv_core::axioms::{
    characterization_suite, rule_by_name, Axiom, AxiomVerdict, CharacterizationReport, SuiteOptions,
};
use prodinv_core::constructions::{separator_cost, sum_situations, veto_construction};
use prodinv_core::lp::{build_dlpi, solve_lp};
use prodinv_core::rational::{parse_rational, Rational};
use prodinv_core::solver::{build_game, char_value, dual_solution, oracle_cost_with, primal_plan, OracleLimits};
use prodinv_core::{coalitions, Allocation, Coalition, Error, PISituation, TUGame};
use serde_json::{json, Value};

use crate::io::{coalition_key, game_to_json, rational_to_json, situation_to_json};

pub struct Output {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, ok: true }
    }
}

pub struct Settings {
    pub seed: u64,
    pub oracle: OracleLimits,
}

fn list(values: &[Rational]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn json_list(values: &[Rational]) -> Value {
    Value::Array(values.iter().map(rational_to_json).collect())
}

fn braces(s: Coalition) -> String {
    format!("{{{}}}", coalition_key(s))
}

fn json_coalition(s: Coalition) -> Value {
    json!(s.members().map(|i| i + 1).collect::<Vec<_>>())
}

fn labelled(sit_players: &[String], y: &Allocation) -> String {
    sit_players
        .iter()
        .zip(y.amounts())
        .map(|(p, v)| format!("{p}: {v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn solve(sit: &PISituation, coalition: Option<Coalition>) -> Result<Output> {
    let s = coalition.unwrap_or(sit.grand());
    let cost = char_value(sit, s)?;
    let prices = dual_solution(sit, s)?.prices;
    let plan = primal_plan(sit, s)?;
    let ints = |v: &[u64]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    let mut text = String::new();
    writeln!(text, "coalition {}", braces(s))?;
    writeln!(text, "cost: {cost}")?;
    writeln!(text, "prices: {}", list(&prices))?;
    writeln!(text, "production: {}", ints(&plan.production))?;
    writeln!(text, "stock: {}", ints(&plan.stock))?;
    writeln!(text, "backlog: {}", ints(&plan.backlog))?;
    let json = json!({
        "coalition": json_coalition(s),
        "cost": rational_to_json(&cost),
        "prices": json_list(&prices),
        "plan": { "production": plan.production, "stock": plan.stock, "backlog": plan.backlog },
    });
    Ok(Output::ok(text, json))
}

pub fn game(sit: &PISituation) -> Result<Output> {
    let g = build_game(sit)?;
    let width = g.entries().map(|(s, _)| braces(s).len()).max().unwrap_or(0).max("coalition".len());
    let mut text = format!("{:<width$}  cost\n", "coalition");
    for (s, v) in g.entries() {
        writeln!(text, "{:<width$}  {v}", braces(s))?;
    }
    Ok(Output::ok(text, game_to_json(&g)))
}

pub fn owen(sit: &PISituation) -> Result<Output> {
    let o = owen_point(sit);
    Ok(Output::ok(
        format!("{}\n", labelled(sit.players(), &o)),
        json!({ "players": sit.players(), "owen": json_list(o.amounts()) }),
    ))
}

pub fn parse_allocation(text: &str, n: usize) -> Result<Allocation> {
    let values = text
        .split(',')
        .map(|v| parse_rational(v.trim()).map_err(|e| anyhow::anyhow!("{e}")))
        .collect::<Result<Vec<_>>>()?;
    if values.len() != n {
        bail!("allocation has {} entries, the situation has {n} players", values.len());
    }
    Ok(Allocation::new(values))
}

pub fn core(sit: &PISituation, x: &Allocation) -> Result<Output> {
    let g = build_game(sit)?;
    Ok(match in_core(&g, x)? {
        CoreVerdict::InCore => Output::ok("in core\n".into(), json!({ "in_core": true })),
        CoreVerdict::Violated { coalition, charged, cost } => {
            let text = if coalition == g.grand() && charged != cost {
                format!("not in core: allocation sums to {charged}, c(N) = {cost}\n")
            } else {
                format!("not in core: coalition {} is charged {charged} > c = {cost}\n", braces(coalition))
            };
            let json = json!({
                "in_core": false,
                "coalition": json_coalition(coalition),
                "charged": rational_to_json(&charged),
                "cost": rational_to_json(&cost),
            });
            Output { text, json, ok: false }
        }
    })
}

pub fn scheme(sit: &PISituation) -> Result<Output> {
    let g = build_game(sit)?;
    let scheme = pmas(sit)?;
    let mut text = String::new();
    let mut rows = serde_json::Map::new();
    for s in coalitions(sit.n()) {
        writeln!(text, "{}: {}", braces(s), list(scheme.shares(s)))?;
        rows.insert(coalition_key(s), json_list(scheme.shares(s)));
    }
    let verdict = scheme.check(&g);
    match &verdict {
        Ok(()) => text.push_str("scheme: efficient and monotone\n"),
        Err(v) => writeln!(text, "scheme violation: {v}")?,
    }
    let json = json!({
        "players": sit.players(),
        "shares": rows,
        "valid": verdict.is_ok(),
        "violation": verdict.as_ref().err().map(ToString::to_string),
    });
    Ok(Output { text, json, ok: verdict.is_ok() })
}

pub fn essential(sit: &PISituation) -> Result<Output> {
    let report = essential_players(sit);
    let mut text = String::new();
    if report.essential.is_empty() {
        text.push_str("essential: none\n");
    }
    for w in &report.witnesses {
        writeln!(
            text,
            "essential: player {} (period {}: price {} without it, {} with it)",
            w.player + 1,
            w.period + 1,
            w.price_without,
            w.price_with
        )?;
    }
    let inessential: Vec<usize> = report.inessential(sit.n()).map(|i| i + 1).collect();
    writeln!(
        text,
        "inessential: {}",
        if inessential.is_empty() {
            "none".to_string()
        } else {
            inessential.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        }
    )?;
    let singleton = report.essential.is_empty();
    writeln!(text, "core is the Owen point alone: {}", if singleton { "yes" } else { "no" })?;
    let witnesses: Vec<Value> = report
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "player": w.player + 1,
                "period": w.period + 1,
                "price_without": rational_to_json(&w.price_without),
                "price_with": rational_to_json(&w.price_with),
            })
        })
        .collect();
    let json = json!({
        "essential": report.essential.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "inessential": inessential,
        "witnesses": witnesses,
        "core_is_owen_singleton": singleton,
    });
    Ok(Output::ok(text, json))
}

/// Returns the report and the combined situation.
pub fn combine(first: &PISituation, second: &PISituation) -> Result<(Output, PISituation)> {
    let combined = sum_situations(first, second)?;
    let omega = separator_cost(first, second);
    let text = format!(
        "combined situation: T = {} + {} + 1 = {}, separator cost {omega}\n",
        first.horizon(),
        second.horizon(),
        combined.horizon()
    );
    let json = json!({ "situation": situation_to_json(&combined), "separator_cost": rational_to_json(&omega) });
    Ok((Output::ok(text, json), combined))
}

pub fn from_veto(game: &TUGame) -> Result<(Output, PISituation)> {
    let built = veto_construction(game)?;
    let round_trip = build_game(&built.situation)? == *game;
    let maximal: Vec<String> = built.maximal.iter().map(|&s| braces(s)).collect();
    let mut text = format!(
        "veto player: {}\nmaximal value-1 coalitions: {}\nT = {}\n",
        built.veto_player + 1,
        if maximal.is_empty() { "none".into() } else { maximal.join(" ") },
        built.situation.horizon()
    );
    writeln!(text, "round-trip: {}", if round_trip { "game reproduced" } else { "MISMATCH" })?;
    let json = json!({
        "veto_player": built.veto_player + 1,
        "maximal": built.maximal.iter().map(|&s| json_coalition(s)).collect::<Vec<_>>(),
        "round_trip": round_trip,
        "situation": situation_to_json(&built.situation),
    });
    Ok((Output { text, json, ok: round_trip }, built.situation))
}

fn verdict_json(v: &AxiomVerdict) -> Value {
    json!({
        "axiom": v.axiom.code(),
        "passed": v.passed,
        "witness": v.witness.as_ref().map(ToString::to_string),
    })
}

fn verdict_row(name: &str, verdicts: &[AxiomVerdict]) -> String {
    let cells: Vec<String> = verdicts
        .iter()
        .map(|v| format!("{:<6}", if v.passed { "ok" } else { "FAIL" }))
        .collect();
    format!("{name:<14}{}", cells.join("").trim_end())
}

fn witness_lines(name: &str, verdicts: &[AxiomVerdict], out: &mut String) {
    for v in verdicts {
        if let Some(w) = &v.witness {
            let _ = writeln!(out, "  {name} {}: {w}", v.axiom);
        }
    }
}

pub fn axioms(sit: &PISituation, rule: Option<&str>, settings: &Settings) -> Result<Output> {
    if let Some(name) = rule {
        if rule_by_name(name).is_none() {
            bail!("unknown rule {name:?}");
        }
    }
    let report: CharacterizationReport =
        characterization_suite(sit, SuiteOptions { seed: settings.seed, ..SuiteOptions::default() });
    let header = format!(
        "{:<14}{}",
        "rule",
        Axiom::ALL.iter().map(|a| format!("{:<6}", a.code())).collect::<String>().trim_end()
    );
    let mut text = format!("{header}\n");
    let shown: Vec<_> = report.rules.iter().filter(|r| rule.is_none_or(|n| r.rule == n)).collect();
    for r in &shown {
        writeln!(text, "{}", verdict_row(&r.rule, &r.verdicts))?;
    }
    let mut witnesses = String::new();
    for r in &shown {
        witness_lines(&r.rule, &r.verdicts, &mut witnesses);
    }
    if !witnesses.is_empty() {
        text.push_str("witnesses:\n");
        text.push_str(&witnesses);
    }
    let rules_json: Vec<Value> = shown
        .iter()
        .map(|r| json!({ "rule": r.rule, "verdicts": r.verdicts.iter().map(verdict_json).collect::<Vec<_>>() }))
        .collect();

    if rule.is_some() {
        let ok = shown.iter().all(|r| r.verdicts.iter().all(|v| v.passed));
        return Ok(Output { text, json: json!({ "rules": rules_json }), ok });
    }

    text.push_str("counterexamples:\n");
    for c in &report.counterexamples {
        let failed: Vec<&str> = c.verdicts.iter().filter(|v| !v.passed).map(|v| v.axiom.code()).collect();
        let expected: Vec<&str> = c.expected_failures.iter().map(|a| a.code()).collect();
        writeln!(
            text,
            "  {} on {}: fails {} (expected {}) {}",
            c.rule,
            c.domain,
            failed.join("+"),
            expected.join("+"),
            if c.matches { "ok" } else { "MISMATCH" }
        )?;
    }
    if let Some(c) = &report.collapse {
        writeln!(
            text,
            "no essential players: bounds c(N) - c(N-i) equal the Owen point: {}; {} sampled rivals admissible: {}",
            if c.bounds_equal_owen { "yes" } else { "no" },
            c.sampled,
            c.rivals.len()
        )?;
    }
    writeln!(
        text,
        "Owen rule passes all axioms: {}",
        if report.owen_passes_all { "yes" } else { "no" }
    )?;
    let counter_json: Vec<Value> = report
        .counterexamples
        .iter()
        .map(|c| {
            json!({
                "rule": c.rule,
                "domain": c.domain,
                "expected_failures": c.expected_failures.iter().map(|a| a.code()).collect::<Vec<_>>(),
                "verdicts": c.verdicts.iter().map(verdict_json).collect::<Vec<_>>(),
                "matches": c.matches,
            })
        })
        .collect();
    let json = json!({
        "rules": rules_json,
        "owen_passes_all": report.owen_passes_all,
        "counterexamples": counter_json,
        "collapse": report.collapse.as_ref().map(|c| json!({
            "bounds_equal_owen": c.bounds_equal_owen,
            "sampled": c.sampled,
            "rivals": c.rivals.iter().map(|y| json_list(y.amounts())).collect::<Vec<_>>(),
        })),
        "holds": report.holds(),
    });
    Ok(Output { text, json, ok: report.holds() })
}

pub fn verify(sit: &PISituation, settings: &Settings) -> Result<Output> {
    let mut rows = Vec::new();
    let mut mismatches = String::new();
    let (mut total, mut all_three, mut skipped) = (0, 0, 0);
    for s in coalitions(sit.n()) {
        total += 1;
        let closed = char_value(sit, s)?;
        let lp = solve_lp(&build_dlpi(sit, s)?).value().cloned();
        let oracle = match oracle_cost_with(sit, s, settings.oracle) {
            Ok(v) => Some(v),
            Err(Error::OracleTooLarge { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        let lp_ok = lp.as_ref() == Some(&closed);
        let oracle_ok = oracle.as_ref().is_none_or(|o| o == &closed);
        if oracle.is_none() {
            skipped += 1;
        }
        if lp_ok && oracle_ok {
            if oracle.is_some() {
                all_three += 1;
            }
        } else {
            writeln!(
                mismatches,
                "mismatch at {}: closed-form {closed}, oracle {}, LP {}",
                braces(s),
                oracle.as_ref().map_or("skipped".into(), ToString::to_string),
                lp.as_ref().map_or("no optimum".into(), ToString::to_string),
            )?;
        }
        rows.push(json!({
            "coalition": json_coalition(s),
            "closed_form": rational_to_json(&closed),
            "oracle": oracle.as_ref().map(rational_to_json),
            "lp": lp.as_ref().map(rational_to_json),
        }));
    }
    let ok = mismatches.is_empty();
    let mut text = mismatches;
    writeln!(text, "{all_three}/{total} coalitions: closed-form = oracle = LP")?;
    if skipped > 0 {
        writeln!(
            text,
            "{skipped}/{total} coalitions: oracle skipped (more than {} units or {} periods)",
            settings.oracle.max_units, settings.oracle.max_periods
        )?;
    }
    Ok(Output { text, json: json!({ "coalitions": rows, "agree": ok, "oracle_skipped": skipped }), ok })
}
