//! Browser bindings. Every function takes stacks in the library's text form
//! and returns a JSON string.

use std::cell::OnceCell;

use serde_json::json;
use wasm_bindgen::prelude::*;

use pancake::exact::{greedy_lb_burnt_limited, greedy_lb_unburnt, Solver, SolverConfig};
use pancake::experiments::{run_algorithm, sample_rng, Algorithm};
use pancake::{lower_bound_potential, potential, AnyStack, PancakeError};

/// Largest stack `exact_distance` accepts.
pub const MAX_EXACT: usize = 10;
const GREEDY_NODES: u64 = 20_000;

thread_local! {
    static SOLVER: OnceCell<Solver> = const { OnceCell::new() };
}

fn js(e: PancakeError) -> JsError {
    JsError::new(&e.to_string())
}

/// Sort with `burnt-avg`, `unburnt-rand` or `greedy`; returns the flips and
/// every intermediate stack.
pub fn sort_json(algo: &str, stack: &str, seed: u64) -> Result<String, PancakeError> {
    let algo: Algorithm = algo.parse()?;
    let stack: AnyStack = stack.parse()?;
    let out = run_algorithm(algo, &stack, sample_rng(seed, 0))?;
    let states: Vec<String> = out.trace.states()?.iter().map(|s| s.to_string()).collect();
    Ok(json!({
        "algo": algo.name(),
        "stack": stack.to_string(),
        "flips": out.trace.flips,
        "states": states,
    })
    .to_string())
}

pub fn bounds_json(stack: &str) -> Result<String, PancakeError> {
    let stack: AnyStack = stack.parse()?;
    let report = match &stack {
        AnyStack::Burnt(s) => {
            let p = potential(s);
            let g = greedy_lb_burnt_limited(s, GREEDY_NODES);
            json!({
                "stack": stack.to_string(),
                "potential_thirds": p.value_thirds,
                "potential_bound": lower_bound_potential(s),
                "greedy_bound": g.bound,
                "greedy_exact": g.exact,
            })
        }
        AnyStack::Unburnt(s) => {
            let g = greedy_lb_unburnt(s);
            json!({
                "stack": stack.to_string(),
                "greedy_bound": g.bound,
                "greedy_exact": g.exact,
            })
        }
        AnyStack::Mixed(_) => {
            return Err(PancakeError::InvalidArgument(
                "bounds need a burnt or unburnt stack".into(),
            ))
        }
    };
    Ok(report.to_string())
}

pub fn exact_json(stack: &str) -> Result<String, PancakeError> {
    let stack: AnyStack = stack.parse()?;
    if stack.len() > MAX_EXACT {
        return Err(PancakeError::InvalidArgument(format!(
            "exact distances are limited to {MAX_EXACT} pancakes here"
        )));
    }
    let d = SOLVER.with(|cell| {
        if cell.get().is_none() {
            let config = SolverConfig {
                endgame_table_size: 6,
                ..SolverConfig::default()
            };
            let _ = cell.set(Solver::new(config)?);
        }
        cell.get().expect("solver initialised").distance(&stack)
    })?;
    Ok(json!({ "stack": stack.to_string(), "distance": d }).to_string())
}

#[wasm_bindgen]
pub fn sort(algo: &str, stack: &str, seed: u64) -> Result<String, JsError> {
    sort_json(algo, stack, seed).map_err(js)
}

#[wasm_bindgen]
pub fn bounds(stack: &str) -> Result<String, JsError> {
    bounds_json(stack).map_err(js)
}

#[wasm_bindgen]
pub fn exact(stack: &str) -> Result<String, JsError> {
    exact_json(stack).map_err(js)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sort_reports_states() {
        let v: serde_json::Value =
            serde_json::from_str(&sort_json("burnt-avg", "-I3", 0).unwrap()).unwrap();
        let flips = v["flips"].as_array().unwrap().len();
        assert_eq!(v["states"].as_array().unwrap().len(), flips + 1);
        assert_eq!(v["states"][flips], "+1 +2 +3");
    }

    #[test]
    fn bounds_and_exact() {
        let b: serde_json::Value = serde_json::from_str(&bounds_json("-I7").unwrap()).unwrap();
        assert_eq!(b["potential_bound"], 12);
        let e: serde_json::Value = serde_json::from_str(&exact_json("-I7").unwrap()).unwrap();
        assert_eq!(e["distance"], 14);
        assert!(exact_json("I11").is_err());
        assert!(sort_json("fast", "I3", 0).is_err());
    }
}
