//! wasm-bindgen bindings for the browser demo in `www/`. Every export takes
//! plain values and returns a JSON string; the `*_json` functions are the
//! same operations without the JS error type, for native tests.

use puresplit::filtration::{analyze, AnalysisOptions, Verdict};
use puresplit::semigroup::{is_in_bmod, triplet_to_diagram};
use puresplit::sparse::sparse_ray;
use puresplit::{BettiDiagram, Triplet};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn text(d: &BettiDiagram) -> Value {
    d.to_text().map(Value::from).unwrap_or(Value::Null)
}

/// Decomposes a diagram and reports the splitting analysis.
pub fn analyze_json(diagram: &str, enforce_hypotheses: bool) -> Result<String, String> {
    let d = BettiDiagram::parse_any(diagram, None).map_err(|e| e.to_string())?;
    let opts = AnalysisOptions {
        enforce_hypotheses,
        ..AnalysisOptions::default()
    };
    let report = analyze(&d, opts).map_err(|e| e.to_string())?;
    let (verdict, witness) = match &report.verdict {
        Verdict::DirectSumCertified => ("direct sum certified".to_string(), None),
        Verdict::CleanFiltrationCertified => ("clean filtration certified".to_string(), None),
        Verdict::Inconclusive => ("inconclusive".to_string(), None),
        Verdict::ObstructionFound { step, witness } => {
            (format!("obstruction at step {step}"), Some(text(witness)))
        }
    };
    let pairs: Vec<Value> = report
        .chain
        .steps
        .windows(2)
        .zip(&report.pairs)
        .map(|(w, p)| {
            json!({
                "from": w[0].sequence.to_string(),
                "to": w[1].sequence.to_string(),
                "separated": p.separated,
                "strong_split": p.strong_split,
            })
        })
        .collect();
    Ok(json!({
        "chain": report.chain.to_string(),
        "pairs": pairs,
        "step_integral": report.step_integral,
        "verdict": verdict,
        "witness": witness,
    })
    .to_string())
}

/// Membership of `(r, s, t)` in the semigroup of module diagrams.
pub fn semigroup_json(r: u32, s: u32, t: u32) -> Result<String, String> {
    let q = Triplet::new(r, s, t);
    let result = is_in_bmod(q).map_err(|e| e.to_string())?;
    Ok(json!({
        "triplet": q.to_string(),
        "diagram": text(&triplet_to_diagram(q)),
        "member": result.is_member(),
        "summary": result.to_string(),
    })
    .to_string())
}

/// A certified sparse ray for the prime `p`.
pub fn sparse_ray_json(p: u32) -> Result<String, String> {
    let cert = sparse_ray(p as u64).map_err(|e| e.to_string())?;
    let steps: Vec<String> = cert
        .steps
        .iter()
        .map(|s| {
            format!(
                "{} * pi~{}",
                puresplit::rational::format_rational(&s.weight),
                s.sequence
            )
        })
        .collect();
    Ok(json!({
        "p": cert.p,
        "alpha": cert.alpha,
        "steps": steps,
        "diagram": text(&cert.diagram),
        "obstruction_multiple": cert.obstruction_multiple,
        "note": cert.literal_failure,
    })
    .to_string())
}

#[wasm_bindgen(js_name = analyzeDiagram)]
pub fn analyze_diagram(diagram: &str, enforce_hypotheses: bool) -> Result<String, JsError> {
    analyze_json(diagram, enforce_hypotheses).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = semigroupCheck)]
pub fn semigroup_check(r: u32, s: u32, t: u32) -> Result<String, JsError> {
    semigroup_json(r, s, t).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = sparseRay)]
pub fn sparse_ray_export(p: u32) -> Result<String, JsError> {
    sparse_ray_json(p).map_err(|e| JsError::new(&e))
}
