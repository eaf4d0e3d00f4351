use std::collections::BTreeMap;
use std::path::PathBuf;

use congruence_core::surfaces::Family;
use congruence_core::trisecant::{TrisecantReport, SCHEMA_VERSION};
use serde::{Deserialize, Serialize};

use crate::verify::expected_order;
use crate::{write_out, Output, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation {
    pub q: u32,
    pub seed: u64,
    pub mode: u64,
    pub anomalies: usize,
    pub trials: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryEntry {
    pub family: String,
    pub expected: Option<u64>,
    pub observed: Vec<Observation>,
    /// All runs of the family report the same mode.
    pub agreement: bool,
    pub matches_expected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub schema: String,
    pub agreement: bool,
    pub entries: Vec<SummaryEntry>,
}

fn family_by_label(label: &str) -> Option<Family> {
    [
        Family::Bordiga,
        Family::Veronese,
        Family::VeroneseDegenerate,
        Family::Delpezzo,
        Family::Scroll14,
        Family::Scroll23,
        Family::QuarticScroll,
        Family::Zak,
    ]
    .into_iter()
    .find(|f| f.label() == label)
}

/// Parses report documents and groups them by family.
pub fn consolidate(docs: &[String]) -> Result<Summary, String> {
    let mut groups: BTreeMap<String, Vec<Observation>> = BTreeMap::new();
    for (i, doc) in docs.iter().enumerate() {
        let value: serde_json::Value = serde_json::from_str(doc).map_err(|e| format!("report {i}: {e}"))?;
        let schema = value.get("schema").and_then(|s| s.as_str()).unwrap_or("<missing>");
        if schema != SCHEMA_VERSION {
            return Err(format!("report {i}: schema '{schema}', expected '{SCHEMA_VERSION}'"));
        }
        let r: TrisecantReport = serde_json::from_value(value).map_err(|e| format!("report {i}: {e}"))?;
        groups.entry(r.family.clone()).or_default().push(Observation {
            q: r.q,
            seed: r.seed,
            mode: r.mode,
            anomalies: r.anomalies.len(),
            trials: r.trials,
        });
    }
    let entries: Vec<SummaryEntry> = groups
        .into_iter()
        .map(|(family, mut observed)| {
            observed.sort_by_key(|o| (o.q, o.seed));
            let expected = family_by_label(&family).and_then(expected_order);
            let agreement = observed.windows(2).all(|w| w[0].mode == w[1].mode);
            let matches_expected = expected.is_some_and(|e| observed.iter().all(|o| o.mode == e));
            SummaryEntry {
                family,
                expected,
                observed,
                agreement,
                matches_expected,
            }
        })
        .collect();
    Ok(Summary {
        schema: SCHEMA_VERSION.to_string(),
        agreement: entries.iter().all(|e| e.agreement),
        entries,
    })
}

pub(crate) fn cmd_report(paths: &[PathBuf], json: bool, out: &Option<PathBuf>) -> Output {
    let mut docs = Vec::with_capacity(paths.len());
    for p in paths {
        match std::fs::read_to_string(p) {
            Ok(s) => docs.push(s),
            Err(e) => return Output::fail(EXIT_USAGE, format!("cannot read {}: {e}\n", p.display())),
        }
    }
    let summary = match consolidate(&docs) {
        Ok(s) => s,
        Err(e) => return Output::fail(EXIT_USAGE, format!("{e}\n")),
    };
    let body = serde_json::to_string_pretty(&summary).unwrap() + "\n";
    if let Err(e) = write_out(out, &body) {
        return e;
    }
    let ok = summary.entries.iter().all(|e| e.agreement && e.matches_expected);
    let stdout = if json {
        body
    } else {
        let mut s = format!("{:<20}{:>10}  {:<30}{:>7}\n", "family", "expected", "observed", "agree");
        for e in &summary.entries {
            let obs: Vec<String> = e.observed.iter().map(|o| format!("q={}: {}", o.q, o.mode)).collect();
            let expected = e.expected.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
            s.push_str(&format!(
                "{:<20}{:>10}  {:<30}{:>7}\n",
                e.family,
                expected,
                obs.join(", "),
                e.agreement
            ));
        }
        s
    };
    Output {
        code: if ok { EXIT_OK } else { EXIT_MISMATCH },
        stdout,
        stderr: String::new(),
    }
}
