//! Browser bindings for the interactive well explorer.
//!
//! Three operations cross the boundary, all returning JSON strings so the
//! page needs no generated types: the potential curve, the bound spectrum,
//! and one sampled eigenfunction. The logic lives in plain functions
//! (natively testable); the `#[wasm_bindgen]` exports are one-line wrappers.
//! Build with `cargo build --target wasm32-unknown-unknown -p triwell-wasm`
//! and run wasm-bindgen over the artifact (see demo/build.sh).

use serde::Serialize;
use triwell::eigen::solve_spectrum;
use triwell::wavefn::build_state;
use triwell::{potential_value, Convention, DimensionlessWell};
use wasm_bindgen::prelude::*;

const DEMO_TOL: f64 = 1e-10;

/// Sampled potential curve over [-span, span].
#[wasm_bindgen]
pub fn potential_curve(
    vbar0: f64,
    convention: &str,
    span: f64,
    samples: usize,
) -> Result<String, JsValue> {
    potential_curve_json(vbar0, convention, span, samples).map_err(|e| JsValue::from_str(&e))
}

/// Every bound level of the well, ordered by energy.
#[wasm_bindgen]
pub fn spectrum(vbar0: f64, convention: &str) -> Result<String, JsValue> {
    spectrum_json(vbar0, convention).map_err(|e| JsValue::from_str(&e))
}

/// One normalized eigenfunction sampled on a uniform grid.
#[wasm_bindgen]
pub fn wavefunction(
    vbar0: f64,
    convention: &str,
    state_index: usize,
    samples: usize,
) -> Result<String, JsValue> {
    wavefunction_json(vbar0, convention, state_index, samples).map_err(|e| JsValue::from_str(&e))
}

fn well(vbar0: f64, convention: &str) -> Result<DimensionlessWell, String> {
    let conv: Convention = convention.parse().map_err(|e: triwell::Error| e.to_string())?;
    DimensionlessWell::new(vbar0, conv).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct CurveJson {
    y: Vec<f64>,
    v: Vec<f64>,
    edge: f64,
}

#[derive(Serialize)]
struct SpectrumJson {
    vbar0: f64,
    convention: String,
    states: Vec<StateJson>,
}

#[derive(Serialize)]
struct StateJson {
    n: usize,
    parity: String,
    ebar: f64,
}

#[derive(Serialize)]
struct WaveJson {
    n: usize,
    parity: String,
    ebar: f64,
    y: Vec<f64>,
    psi: Vec<f64>,
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("demo documents serialize")
}

pub fn potential_curve_json(
    vbar0: f64,
    convention: &str,
    span: f64,
    samples: usize,
) -> Result<String, String> {
    let w = well(vbar0, convention)?;
    if !(span.is_finite() && span > 0.0) {
        return Err(format!("span must be positive and finite, got {span}"));
    }
    let n = samples.clamp(2, 100_000);
    let mut y = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    for i in 0..n {
        let yi = -span + 2.0 * span * (i as f64) / ((n - 1) as f64);
        y.push(yi);
        v.push(potential_value(&w, yi));
    }
    Ok(to_json(&CurveJson {
        y,
        v,
        edge: w.edge(),
    }))
}

pub fn spectrum_json(vbar0: f64, convention: &str) -> Result<String, String> {
    let w = well(vbar0, convention)?;
    let spec = solve_spectrum(&w, DEMO_TOL).map_err(|e| e.to_string())?;
    Ok(to_json(&SpectrumJson {
        vbar0: w.vbar0,
        convention: w.convention.label().to_string(),
        states: spec
            .states
            .iter()
            .map(|s| StateJson {
                n: s.n,
                parity: s.parity.label().to_string(),
                ebar: s.ebar,
            })
            .collect(),
    }))
}

pub fn wavefunction_json(
    vbar0: f64,
    convention: &str,
    state_index: usize,
    samples: usize,
) -> Result<String, String> {
    let w = well(vbar0, convention)?;
    let spec = solve_spectrum(&w, DEMO_TOL).map_err(|e| e.to_string())?;
    let Some(target) = spec.states.get(state_index) else {
        return Err(format!(
            "state {state_index} out of range: {} state(s) available",
            spec.states.len()
        ));
    };
    let st = build_state(&w, target).map_err(|e| e.to_string())?;
    let n = samples.clamp(2, 100_000);
    let r = st.sampling_half_range();
    let mut y = Vec::with_capacity(n);
    let mut psi = Vec::with_capacity(n);
    for i in 0..n {
        let yi = -r + 2.0 * r * (i as f64) / ((n - 1) as f64);
        y.push(yi);
        psi.push(st.evaluate(yi));
    }
    Ok(to_json(&WaveJson {
        n: target.n,
        parity: target.parity.label().to_string(),
        ebar: target.ebar,
        y,
        psi,
    }))
}
