//! The five subcommands.

use std::path::Path;

use margulis_core::invariant::Tolerances;
use margulis_core::spectrum::{
    certify_conjugacy, coboundary_fit, compare_spectra, linear_parts_match, marked_spectrum,
    random_loxodromic_rep,
};
use margulis_core::{AffineRep, ModelSpec, Verdict};
use serde_json::{json, Value};

use crate::check::run_checks;
use crate::output::{matrix_json, render_json, spectrum_csv, spectrum_json, velement_json};
use crate::spec_file::load_rep;
use crate::{exit, Common, Failure, Format, Outcome};

fn tolerances(common: &Common) -> Tolerances {
    Tolerances {
        loxodromy: common.loxodromy_tol,
        ..Tolerances::default()
    }
}

fn validate(common: &Common, csv_allowed: bool) -> Result<(), Failure> {
    if common.max_word_len == 0 {
        return Err(Failure::invalid("--max-word-len must be at least 1"));
    }
    if !(common.tol > 0.0 && common.tol.is_finite()) {
        return Err(Failure::invalid("--tol must be a positive number"));
    }
    if !(common.loxodromy_tol > 0.0 && common.loxodromy_tol.is_finite()) {
        return Err(Failure::invalid("--loxodromy-tol must be a positive number"));
    }
    if !csv_allowed && common.format == Some(Format::Csv) {
        return Err(Failure::invalid("--format csv is only available for spectrum"));
    }
    Ok(())
}

fn json_outcome(code: i32, value: &Value) -> Outcome {
    Outcome {
        code,
        stdout: render_json(value),
        notes: Vec::new(),
    }
}

fn same_model(rep1: &AffineRep, rep2: &AffineRep) -> Result<(), Failure> {
    if rep1.model() != rep2.model() {
        return Err(Failure::new(
            exit::MODEL_MISMATCH,
            format!("models differ: adjoint_sl n = {} vs n = {}", rep1.n(), rep2.n()),
        ));
    }
    if rep1.k() != rep2.k() {
        return Err(Failure::new(
            exit::MODEL_MISMATCH,
            format!("generator counts differ: {} vs {}", rep1.k(), rep2.k()),
        ));
    }
    Ok(())
}

pub fn spectrum(spec: &Path, common: &Common) -> Result<Outcome, Failure> {
    validate(common, true)?;
    let rep = load_rep(spec, common.loxodromy_tol)?;
    let s = marked_spectrum(&rep, common.max_word_len, &tolerances(common));
    let stdout = match common.format.unwrap_or(Format::Csv) {
        Format::Csv => spectrum_csv(&s),
        Format::Json => render_json(&spectrum_json(&s)),
    };
    let notes = s
        .skipped
        .iter()
        .map(|w| format!("skipped {w}: image is not loxodromic"))
        .collect();
    Ok(Outcome {
        code: exit::OK,
        stdout,
        notes,
    })
}

pub fn compare(spec1: &Path, spec2: &Path, common: &Common) -> Result<Outcome, Failure> {
    validate(common, false)?;
    let rep1 = load_rep(spec1, common.loxodromy_tol)?;
    let rep2 = load_rep(spec2, common.loxodromy_tol)?;
    same_model(&rep1, &rep2)?;
    let tols = tolerances(common);
    let s1 = marked_spectrum(&rep1, common.max_word_len, &tols);
    let s2 = marked_spectrum(&rep2, common.max_word_len, &tols);
    let report = compare_spectra(&s1, &s2, common.tol)
        .map_err(|e| Failure::new(exit::MODEL_MISMATCH, e.to_string()))?;
    let code = match report.verdict {
        Verdict::Equal => exit::OK,
        Verdict::QEqualOnly => exit::Q_EQUAL_ONLY,
        Verdict::Differ => exit::DIFFER,
    };
    let witness = report.witness.as_ref().map(|w| {
        json!({
            "word": w.word.render(),
            "len": w.word.len(),
            "magnitude": w.magnitude,
        })
    });
    let value = json!({
        "verdict": report.verdict.as_str(),
        "witness": witness,
        "tol": report.tol,
        "scale": s1.scale().max(s2.scale()),
        "max_word_len": common.max_word_len,
        "skipped": [
            s1.skipped.iter().map(|w| w.render()).collect::<Vec<_>>(),
            s2.skipped.iter().map(|w| w.render()).collect::<Vec<_>>(),
        ],
    });
    Ok(json_outcome(code, &value))
}

pub fn coboundary(spec: &Path, common: &Common) -> Result<Outcome, Failure> {
    validate(common, false)?;
    let rep = load_rep(spec, common.loxodromy_tol)?;
    let fit = coboundary_fit(&rep, common.tol).map_err(|e| Failure::invalid(e.to_string()))?;
    let accepted = fit.accepted();
    let value = json!({
        "coboundary": accepted,
        "Y": accepted.then(|| velement_json(&fit.y)),
        "generator_residual": fit.generator_residual,
        "word_residual": fit.word_residual,
        "threshold": fit.threshold,
        "rank": fit.rank,
    });
    let code = if accepted { exit::OK } else { exit::NO_COBOUNDARY };
    Ok(json_outcome(code, &value))
}

pub fn certify(spec1: &Path, spec2: &Path, common: &Common) -> Result<Outcome, Failure> {
    validate(common, false)?;
    let rep1 = load_rep(spec1, common.loxodromy_tol)?;
    let rep2 = load_rep(spec2, common.loxodromy_tol)?;
    same_model(&rep1, &rep2)?;
    if !linear_parts_match(&rep1, &rep2, common.tol) {
        return Err(Failure::new(
            exit::LINEAR_PARTS_DIFFER,
            "linear parts differ; certify only handles translation conjugators",
        ));
    }
    let value = match certify_conjugacy(&rep1, &rep2, common.max_word_len, common.tol) {
        Some(cert) => json!({
            "certified": true,
            "conjugator": {
                "g": matrix_json(cert.conjugator.linear().mat()),
                "Y": velement_json(cert.conjugator.translation()),
            },
            "reconstruction_error": cert.reconstruction_error,
            "max_word_len": common.max_word_len,
        }),
        None => json!({
            "certified": false,
            "conjugator": Value::Null,
            "max_word_len": common.max_word_len,
        }),
    };
    let code = if value["certified"] == true {
        exit::OK
    } else {
        exit::NOT_CERTIFIED
    };
    Ok(json_outcome(code, &value))
}

pub fn check(spec: Option<&Path>, random: Option<&[usize]>, common: &Common) -> Result<Outcome, Failure> {
    validate(common, false)?;
    let rep = match (spec, random) {
        (Some(path), None) => load_rep(path, common.loxodromy_tol)?,
        (None, Some(&[n, k])) => {
            let model = ModelSpec::adjoint_sl(n).map_err(|e| Failure::invalid(format!("--random: {e}")))?;
            random_loxodromic_rep(&model, k, common.max_word_len, common.seed, 1.0)
                .map_err(|e| Failure::invalid(format!("--random: {e}")))?
        }
        _ => return Err(Failure::invalid("check needs a spec file or --random N K")),
    };
    let report = run_checks(&rep, common.max_word_len, common.tol, common.seed, common.rational);
    let mut notes = Vec::new();
    let code = match report.first_failure {
        None => exit::OK,
        Some(name) => {
            notes.push(format!("check failed: {name}"));
            exit::CHECK_FAILED
        }
    };
    let value = serde_json::to_value(&report).expect("report serializes");
    Ok(Outcome {
        code,
        stdout: render_json(&value),
        notes,
    })
}
