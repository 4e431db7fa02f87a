use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::curated::Embedding;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Computed,
    Curated,
}

impl Source {
    fn tag(self) -> &'static str {
        match self {
            Source::Computed => "[computed]",
            Source::Curated => "[curated]",
        }
    }
}

/// One exact value on the way to `C_{h,g}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Intermediate {
    pub name: String,
    pub value: String,
    pub source: Source,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    /// Published value of the same quantity, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_reference: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub case: String,
    pub k: u32,
    pub n: u32,
    pub embedding: Embedding,
    pub intermediates: Vec<Intermediate>,
    pub c_value: String,
    pub expected: String,
    pub rational: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_divergence: Option<String>,
    /// Wall-clock milliseconds per stage; the only nondeterministic field.
    pub timings_ms: BTreeMap<String, u64>,
}

impl Report {
    /// First intermediate that disagrees with its published value.
    pub(super) fn locate_divergence(&self) -> Option<String> {
        if self.pass {
            return None;
        }
        let hit = self.intermediates.iter().find(|i| i.matches_reference == Some(false));
        Some(match hit {
            Some(i) => format!("{} = {} (published {})", i.name, i.value, i.reference.as_deref().unwrap_or("?")),
            None if !self.rational => format!("C_{{h,g}} = {} is not rational", self.c_value),
            None => format!("C_{{h,g}} = {} (expected {})", self.c_value, self.expected),
        })
    }

    pub fn without_timings(&self) -> Self {
        Self { timings_ms: BTreeMap::new(), ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "# Case {} ({} embedding): {verdict}\n", self.case, self.embedding.name());
        let _ = writeln!(s, "- k = {}, n = {}", self.k, self.n);
        let _ = writeln!(s, "- C_{{h,g}} = {}", self.c_value);
        let _ = writeln!(s, "- expected 2^((2n-1)k+4n) = {}", self.expected);
        let _ = writeln!(s, "- rational: {}", self.rational);
        if let Some(d) = &self.first_divergence {
            let _ = writeln!(s, "- first divergence: {d}");
        }
        let _ = writeln!(s, "\n| quantity | value | source | published | agrees |");
        let _ = writeln!(s, "|---|---|---|---|---|");
        for i in &self.intermediates {
            let agrees = match i.matches_reference {
                Some(true) => "yes",
                Some(false) => "NO",
                None => "",
            };
            let _ = writeln!(
                s,
                "| {} | `{}` | {} | {} | {agrees} |",
                i.name.replace('|', "\\|"),
                i.value,
                i.source.tag(),
                i.reference.as_deref().map(|r| format!("`{r}`")).unwrap_or_default(),
            );
        }
        let curated: Vec<_> = self.intermediates.iter().filter_map(|i| Some((&i.name, i.provenance.as_ref()?))).collect();
        if !curated.is_empty() {
            let _ = writeln!(s, "\n## Provenance\n");
            for (name, prov) in curated {
                let _ = writeln!(s, "- {name}: {prov}");
            }
        }
        if !self.timings_ms.is_empty() {
            let _ = writeln!(s, "\n## Timing (ms)\n");
            for (stage, ms) in &self.timings_ms {
                let _ = writeln!(s, "- {stage}: {ms}");
            }
        }
        s
    }
}
