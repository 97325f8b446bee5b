//! JSON file formats for situations and games.
//!
//! Rationals are read from JSON numbers (integers, decimals, exponents) or
//! strings (`"3"`, `"0.25"`, `"7/2"`). They are written as JSON integers when
//! integral and as `"num/den"` strings otherwise, so reading back what was
//! written is exact.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_traits::{One, Pow, ToPrimitive};
use prodinv_core::model::{validate, Validated};
use prodinv_core::rational::{format_rational, is_integer, parse_rational, Rational};
use prodinv_core::{coalitions, Coalition, PISituation, RawSituation, TUGame};
use serde_json::{json, Map, Value};

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{} is not valid JSON", path.display()))
}

pub fn write_json(path: &Path, value: &Value) -> Result<()> {
    let mut text = render(value);
    text.push('\n');
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Indented JSON that keeps arrays of scalars on one line, so matrices
/// print one row per line.
pub fn render(value: &Value) -> String {
    let mut out = String::new();
    render_into(value, 0, &mut out);
    out
}

fn render_into(value: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match value {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, v)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                render_into(v, depth + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(items) if items.iter().any(|v| v.is_array() || v.is_object()) => {
            out.push_str("[\n");
            for (k, v) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                render_into(v, depth + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

/// Exact value of a JSON number literal, including exponent notation.
fn number_literal(text: &str) -> Result<Rational> {
    let lower = text.to_ascii_lowercase();
    let (mantissa, exponent) = match lower.split_once('e') {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| anyhow!("bad exponent in {text}"))?),
        None => (lower.as_str(), 0),
    };
    let m = parse_rational(mantissa).map_err(|e| anyhow!("{e}"))?;
    let ten = Rational::from_integer(10.into());
    let scale: Rational = if exponent >= 0 {
        Pow::pow(ten, exponent as u32)
    } else {
        Rational::one() / Pow::pow(ten, exponent.unsigned_abs())
    };
    Ok(m * scale)
}

pub fn rational_from_json(value: &Value) -> Result<Rational> {
    match value {
        Value::Number(n) => number_literal(&n.to_string()),
        Value::String(s) => parse_rational(s.trim()).map_err(|e| anyhow!("{e}")),
        other => bail!("expected a number or a rational string, found {other}"),
    }
}

pub fn rational_to_json(value: &Rational) -> Value {
    if is_integer(value) {
        if let Some(v) = value.to_integer().to_i64() {
            return json!(v);
        }
    }
    Value::String(format_rational(value))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| anyhow!("missing field {key:?}"))
}

fn players_from_json(value: &Value) -> Result<Vec<String>> {
    value
        .as_array()
        .ok_or_else(|| anyhow!("\"players\" must be an array"))?
        .iter()
        .map(|p| match p {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            other => bail!("player ids must be strings, found {other}"),
        })
        .collect()
}

fn matrix_from_json(obj: &Map<String, Value>, key: &str) -> Result<Vec<Vec<Rational>>> {
    let rows = field(obj, key)?
        .as_array()
        .ok_or_else(|| anyhow!("{key:?} must be an array of rows"))?;
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            row.as_array()
                .ok_or_else(|| anyhow!("{key} row {} must be an array", r + 1))?
                .iter()
                .enumerate()
                .map(|(t, v)| {
                    rational_from_json(v).with_context(|| format!("{key} row {}, entry {}", r + 1, t + 1))
                })
                .collect()
        })
        .collect()
}

pub fn raw_situation_from_json(value: &Value) -> Result<RawSituation> {
    let obj = value.as_object().ok_or_else(|| anyhow!("a situation must be a JSON object"))?;
    let horizon = field(obj, "T")?
        .as_i64()
        .ok_or_else(|| anyhow!("\"T\" must be an integer"))?;
    Ok(RawSituation {
        players: players_from_json(field(obj, "players")?)?,
        horizon,
        demand: matrix_from_json(obj, "demand")?,
        production: matrix_from_json(obj, "production")?,
        holding: matrix_from_json(obj, "holding")?,
        backlogging: matrix_from_json(obj, "backlogging")?,
    })
}

pub fn situation_from_json(value: &Value) -> Result<Validated> {
    Ok(validate(&raw_situation_from_json(value)?)?)
}

pub fn situation_to_json(sit: &PISituation) -> Value {
    let matrix = |m: &[Vec<Rational>]| -> Value {
        Value::Array(m.iter().map(|row| Value::Array(row.iter().map(rational_to_json).collect())).collect())
    };
    json!({
        "players": sit.players(),
        "T": sit.horizon(),
        "demand": sit.demand(),
        "production": matrix(sit.production()),
        "holding": matrix(sit.holding()),
        "backlogging": matrix(sit.backlogging()),
    })
}

/// `"1,3"` for players 1 and 3 (1-based).
pub fn coalition_key(s: Coalition) -> String {
    s.members().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

/// Parses comma-separated 1-based player indices.
pub fn parse_coalition(text: &str, n: usize) -> Result<Coalition> {
    let mut s = Coalition::EMPTY;
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let i: usize = part.parse().map_err(|_| anyhow!("bad player index {part:?}"))?;
        if i == 0 || i > n {
            bail!("player index {i} out of range 1..={n}");
        }
        if s.contains(i - 1) {
            bail!("player {i} listed twice");
        }
        s = s.with(i - 1);
    }
    Ok(s)
}

pub fn game_from_json(value: &Value) -> Result<TUGame> {
    let obj = value.as_object().ok_or_else(|| anyhow!("a game must be a JSON object"))?;
    let players = players_from_json(field(obj, "players")?)?;
    let n = players.len();
    if n == 0 || n > prodinv_core::MAX_PLAYERS {
        bail!("a game needs between 1 and {} players, found {n}", prodinv_core::MAX_PLAYERS);
    }
    let entries = field(obj, "values")?
        .as_object()
        .ok_or_else(|| anyhow!("\"values\" must be an object keyed by coalitions"))?;
    let mut values: HashMap<Coalition, Rational> = HashMap::new();
    for (key, v) in entries {
        let s = parse_coalition(key, n).with_context(|| format!("coalition key {key:?}"))?;
        let v = rational_from_json(v).with_context(|| format!("value of {key:?}"))?;
        if s.is_empty() {
            if v != Rational::default() {
                bail!("the empty coalition must have value 0");
            }
            continue;
        }
        if values.insert(s, v).is_some() {
            bail!("coalition {key:?} listed twice");
        }
    }
    let missing: Vec<String> = coalitions(n).filter(|s| !values.contains_key(s)).map(coalition_key).collect();
    if !missing.is_empty() {
        bail!("missing values for coalitions {}", missing.join(" "));
    }
    Ok(TUGame::from_fn(players, |s| values[&s].clone())?)
}

pub fn game_to_json(game: &TUGame) -> Value {
    let values: Map<String, Value> = game.entries().map(|(s, v)| (coalition_key(s), rational_to_json(v))).collect();
    json!({ "players": game.players(), "values": values })
}
