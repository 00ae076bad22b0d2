//! Browser demo bindings: a handful of interactive entry points over the
//! exact solver, each returning a JSON string for the page to render.
//!
//! Everything runs synchronously in the browser; the demo sticks to
//! desk-sized models where the exact computation takes at most a few
//! seconds.

use wasm_bindgen::prelude::*;

use mldeg_core::arith::{parse_rat, rat, Rat};
use mldeg_core::lattice::IntMatrix;
use mldeg_core::likelihood::{count_solutions, facet_report, ml_degree};
use mldeg_core::models::{scaling_preset, ModelSpec, ScaledModel};
use mldeg_core::polytope::{face_lattice, normalized_volume};
use mldeg_core::solve::SolveOpts;
use mldeg_core::tropical::{
    cayley_subdivision_check, eliminant_int_coeffs, tropical_eliminant, tropical_system,
    TropicalWeights,
};

fn err_json(message: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": message.to_string() }).to_string()
}

/// ML degree and degree of a model described by a spec JSON, optionally
/// with the per-facet table.
#[wasm_bindgen]
pub fn model_report(spec_json: &str, seed: u64, with_facets: bool) -> String {
    let run = || -> Result<String, mldeg_core::Error> {
        let spec = ModelSpec::from_json(spec_json)?;
        let model = spec.to_model(seed)?;
        let mldeg = ml_degree(&model, seed)?;
        let degree = if model.dim() == 0 {
            "1".to_string()
        } else {
            normalized_volume(&model.config())?.to_string()
        };
        let facets = if with_facets {
            let report = facet_report(&model, seed, &SolveOpts::default())?;
            let rows: Vec<serde_json::Value> = report
                .rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "dimension": r.dim,
                        "face": r.label,
                        "ml_degree": r.ml_degree.clone().map(|v| v.to_string()).unwrap_or_else(|e| e),
                        "degree": r.degree.clone().map(|v| v.to_string()).unwrap_or_else(|e| e),
                    })
                })
                .collect();
            Some(rows)
        } else {
            None
        };
        Ok(serde_json::json!({
            "provenance": model.provenance,
            "columns": model.n_cols(),
            "dimension": model.dim(),
            "ml_degree": mldeg,
            "degree": degree,
            "facets": facets,
        })
        .to_string())
    };
    run().unwrap_or_else(err_json)
}

/// Solution counts of the 3x3 independence model likelihood equations for
/// a data-zero pattern (string of nine 'u'/'0' symbols) under the six
/// scaling presets.
#[wasm_bindgen]
pub fn zero_pattern_counts(pattern: &str, seed: u64) -> String {
    let run = || -> Result<String, mldeg_core::Error> {
        let symbols: Vec<char> = pattern.chars().filter(|c| !c.is_whitespace()).collect();
        if symbols.len() != 9 || symbols.iter().any(|&c| c != 'u' && c != '0') {
            return Err(mldeg_core::Error::Invalid(
                "pattern must be nine symbols, each 'u' or '0'".into(),
            ));
        }
        let base = mldeg_core::models::independence_model(3, 3)?;
        let mut counts = serde_json::Map::new();
        for name in ["c1", "c2", "c3", "c4", "c5", "c6"] {
            let mut model = base.clone();
            model.scaling = scaling_preset(name, 9).expect("presets exist");
            let mut rng = mldeg_core::rng::Rng::derive(seed, &format!("wasm zeros {pattern} {name}"));
            let u: Vec<Rat> = symbols
                .iter()
                .map(|&c| if c == 'u' { rat(rng.int_in(1, 10_000)) } else { rat(0) })
                .collect();
            let count = count_solutions(&model, &u, seed, &SolveOpts::default())?;
            counts.insert(name.to_string(), count.display_count().into());
        }
        Ok(serde_json::json!({ "pattern": pattern, "counts": counts }).to_string())
    };
    run().unwrap_or_else(err_json)
}

/// Tropical degeneration of the Segre square with scalings (1, 1, 3, 7),
/// data (1, 2, 3, 4) and the bottom edge as the distinguished face. The
/// four arguments are the monomial and data weights of the two off-face
/// columns, as rational strings.
#[wasm_bindgen]
pub fn segre_tropical_demo(w3: &str, w4: &str, wd3: &str, wd4: &str) -> String {
    let run = || -> Result<String, mldeg_core::Error> {
        let a = IntMatrix::from_rows(&[vec![1, 1, 1, 1], vec![0, 1, 0, 1], vec![0, 0, 1, 1]]);
        let model = ScaledModel::new(
            a,
            vec![rat(1), rat(1), rat(3), rat(7)],
            "Segre square, scalings (1,1,3,7)",
        )?;
        let faces = face_lattice(&model.config())?;
        let face = faces
            .iter()
            .find(|f| f.members == vec![0, 1])
            .expect("bottom edge")
            .clone();
        let weights = TropicalWeights {
            monomial: [(2usize, parse_rat(w3)?), (3usize, parse_rat(w4)?)]
                .into_iter()
                .collect(),
            data: [(2usize, parse_rat(wd3)?), (3usize, parse_rat(wd4)?)]
                .into_iter()
                .collect(),
        };
        let u = vec![rat(1), rat(2), rat(3), rat(4)];
        let system = tropical_system(&model, &u, &face, &weights)?;
        let elim = tropical_eliminant(&system, 1, Some(&[0, 2, 1]), &SolveOpts::default())?;
        let coeffs: Vec<String> = eliminant_int_coeffs(&elim, 1)
            .iter()
            .map(|c| c.to_string())
            .collect();
        let check = cayley_subdivision_check(&model, &face, &weights)?;
        Ok(serde_json::json!({
            "eliminant_coefficients": coeffs,
            "weight_denominator": system.weight_denominator,
            "cayley_cells": check.subdivision.cells,
            "is_triangulation": check.is_triangulation,
        })
        .to_string())
    };
    run().unwrap_or_else(err_json)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_are_json() {
        let out = model_report(
            r#"{"type": "cube", "dim": 1, "dilation": 1, "scaling": "ones"}"#,
            0,
            false,
        );
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["ml_degree"], 1);

        let out = zero_pattern_counts("uuuu00000", 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["counts"]["c4"], "1");
        assert_eq!(v["counts"]["c6"], "3");

        let out = segre_tropical_demo("1", "3", "2", "4");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["eliminant_coefficients"][2], "21*t^4 + 7*t^2");
    }
}
