//! Browser bindings: statistics of pasted data, Monte Carlo p-values and
//! draws from the alternative grids.

use laplace_gof::alternatives::{submodel_grid, SubmodelId};
use laplace_gof::engine::{decide, null_statistics, pvalue_from_null, region_from_values};
use laplace_gof::rng::stream;
use laplace_gof::{estimate, Sample, TestId};
use wasm_bindgen::prelude::*;

/// Largest replicate count accepted from the page.
pub const MAX_REPS: usize = 200_000;

/// Numbers separated by whitespace, commas or semicolons.
pub fn parse_values(text: &str) -> Result<Vec<f64>, String> {
    text.split(|c: char| c.is_whitespace() || c == ',' || c == ';')
        .filter(|t| !t.is_empty())
        .enumerate()
        .map(|(i, t)| t.parse::<f64>().map_err(|_| format!("value {} ('{t}') is not a number", i + 1)))
        .collect()
}

fn sample_of(text: &str) -> Result<Sample, String> {
    Sample::new(parse_values(text)?).map_err(|e| e.to_string())
}

fn test_of(name: &str) -> Result<TestId, String> {
    name.parse().map_err(|e: laplace_gof::Error| e.to_string())
}

/// Every test statistic on the sample; NaN where a statistic is undefined.
pub fn statistics_of(text: &str) -> Result<Vec<f64>, String> {
    let s = sample_of(text)?;
    estimate(&s).map_err(|e| e.to_string())?;
    Ok(TestId::all().map(|t| t.statistic(&s).unwrap_or(f64::NAN)).collect())
}

/// Outcome of one Monte Carlo test.
#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct Decision {
    pub n: usize,
    pub mu_hat: f64,
    pub sigma_hat: f64,
    pub statistic: f64,
    /// NaN when the region has no lower bound.
    pub lower: f64,
    /// NaN when the region has no upper bound.
    pub upper: f64,
    pub reject: bool,
    pub p_value: f64,
}

pub fn decision_of(text: &str, test: &str, alpha: f64, reps: usize, seed: u64) -> Result<Decision, String> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(format!("alpha = {alpha} is outside (0, 1)"));
    }
    if reps > MAX_REPS {
        return Err(format!("at most {MAX_REPS} replicates"));
    }
    let t = test_of(test)?;
    let s = sample_of(text)?;
    let est = estimate(&s).map_err(|e| e.to_string())?;
    let statistic = t.statistic(&s).map_err(|e| e.to_string())?;
    let n = s.len();
    let null = null_statistics(&[t], n, reps, seed).map_err(|e| e.to_string())?.remove(0);
    let p_value = pvalue_from_null(t.direction(), &null, statistic);
    let region = region_from_values(t, null, n, alpha, seed);
    Ok(Decision {
        n,
        mu_hat: est.mu_ml,
        sigma_hat: est.sigma_ml,
        statistic,
        lower: region.lower.unwrap_or(f64::NAN),
        upper: region.upper.unwrap_or(f64::NAN),
        reject: decide(&region, statistic),
        p_value,
    })
}

/// n draws from case `case_index` (1..=20) of a submodel grid at a study size.
pub fn draws_of(submodel: &str, case_index: usize, n: usize, seed: u64) -> Result<Vec<f64>, String> {
    let m: SubmodelId = submodel.parse().map_err(|e: laplace_gof::Error| e.to_string())?;
    let grid = submodel_grid(m, n).map_err(|e| e.to_string())?;
    let case = grid.cases.iter().find(|c| c.index == case_index).ok_or_else(|| format!("case index must be 1..={}", grid.cases.len()))?;
    let mut rng = stream(seed, &format!("demo/{m}/{case_index}/{n}"), 0);
    Ok(case.spec.draws(n, &mut rng))
}

#[wasm_bindgen(js_name = testNames)]
pub fn test_names() -> Vec<String> {
    TestId::all().map(|t| t.name().to_string()).collect()
}

/// `upper`, `lower` or `two-sided`, in test order.
#[wasm_bindgen(js_name = testDirections)]
pub fn test_directions() -> Vec<String> {
    TestId::all().map(|t| t.direction().to_string()).collect()
}

#[wasm_bindgen(js_name = submodelNames)]
pub fn submodel_names() -> Vec<String> {
    SubmodelId::ALL.iter().map(|m| m.name().to_string()).collect()
}

#[wasm_bindgen]
pub fn statistics(text: &str) -> Result<Vec<f64>, JsError> {
    statistics_of(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = testSample)]
pub fn test_sample(text: &str, test: &str, alpha: f64, reps: usize, seed: u64) -> Result<Decision, JsError> {
    decision_of(text, test, alpha, reps, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = drawAlternative)]
pub fn draw_alternative(submodel: &str, case_index: usize, n: usize, seed: u64) -> Result<Vec<f64>, JsError> {
    draws_of(submodel, case_index, n, seed).map_err(|e| JsError::new(&e))
}
