//! Loading saved models and certifying them against a sample.

use std::path::Path;

use anyhow::{bail, Context, Result};
use occlearn::dfa::Dfa;
use occlearn::ltlf::LtlfFormula;
use occlearn::oracle::{check_dfa_minimal, check_ltlf_minimal, Verdict};
use occlearn::words::{Alphabet, Sample};
use serde::{Deserialize, Serialize};

use crate::bench::{Model, ORACLE_LIMIT};

/// JSON shape written for learned formulas.
#[derive(Debug, Serialize, Deserialize)]
pub struct FormulaJson {
    pub alphabet: Vec<String>,
    pub formula: String,
    pub size: usize,
}

pub fn formula_json(f: &LtlfFormula) -> String {
    let doc = FormulaJson {
        alphabet: f.alphabet().names().map(String::from).collect(),
        formula: f.to_string(),
        size: f.size(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// Reads a DFA (DOT or JSON) or a formula (JSON or plain text over `alphabet`).
pub fn parse_model(text: &str, alphabet: &Alphabet) -> Result<Model> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        if let Ok(doc) = serde_json::from_str::<FormulaJson>(text) {
            let sigma = Alphabet::new(doc.alphabet)?;
            return Ok(Model::Ltlf(LtlfFormula::parse(&sigma, &doc.formula)?));
        }
        return Ok(Model::Dfa(Dfa::from_json(text)?));
    }
    if trimmed.starts_with("//") || trimmed.starts_with("digraph") {
        return Ok(Model::Dfa(Dfa::from_dot(text)?));
    }
    Ok(Model::Ltlf(LtlfFormula::parse(alphabet, text.trim())?))
}

pub fn load_model(path: &Path, alphabet: &Alphabet) -> Result<Model> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read model {}", path.display()))?;
    parse_model(&text, alphabet).with_context(|| format!("cannot parse model {}", path.display()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    /// `None` when the model is an n-description, else the reason it is not.
    pub not_description: Option<String>,
    pub verdict: Verdict,
    pub note: Option<String>,
}

/// Certifies `model` with bound `n` (default: its own size), enumerating
/// competitors up to `max_size`.
pub fn check_model(sample: &Sample, model: &Model, n: Option<usize>, max_size: usize) -> Result<CheckReport> {
    let sigma = match model {
        Model::Dfa(d) => d.alphabet(),
        Model::Ltlf(f) => f.alphabet(),
    };
    if sigma != sample.alphabet() {
        bail!("the model's alphabet {sigma} differs from the sample's {}", sample.alphabet());
    }
    let n = n.unwrap_or_else(|| model.size());
    let not_description = if model.size() > n {
        Some(format!("size {} exceeds the bound {n}", model.size()))
    } else {
        sample
            .positives()
            .iter()
            .find(|w| match model {
                Model::Dfa(d) => !d.accepts(w),
                Model::Ltlf(f) => !f.satisfies(w).unwrap_or(false),
            })
            .map(|w| format!("positive word `{}` is rejected", sample.alphabet().render(w)))
    };
    if let Some(why) = &not_description {
        return Ok(CheckReport {
            not_description: Some(why.clone()),
            verdict: Verdict::Fail(why.clone()),
            note: None,
        });
    }
    if max_size > ORACLE_LIMIT {
        return Ok(CheckReport {
            not_description,
            verdict: Verdict::Skipped,
            note: Some(format!("oracle bound {max_size} exceeds the enumeration limit {ORACLE_LIMIT}")),
        });
    }
    let (verdict, note) = match model {
        Model::Dfa(_) if n > max_size => (
            Verdict::Skipped,
            Some(format!("bound {n} exceeds the oracle bound {max_size}; raise --oracle-max-size")),
        ),
        Model::Dfa(d) => (check_dfa_minimal(sample, d, n, u128::MAX), None),
        Model::Ltlf(f) => {
            let ops = occlearn::learn::LearnConfig::new(n).operators;
            let note = (n > max_size).then(|| format!("competitors enumerated only up to size {max_size}"));
            (check_ltlf_minimal(sample, f, n, max_size, &ops, None), note)
        }
    };
    Ok(CheckReport {
        not_description,
        verdict,
        note,
    })
}
