//! Output records. Field order is declaration order, so `--json` output is
//! byte-stable for identical inputs.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum System {
    Henle,
    Hyperreal,
    Fermat,
    Giordano,
}

impl System {
    pub fn as_str(self) -> &'static str {
        match self {
            System::Henle => "henle",
            System::Hyperreal => "hyperreal",
            System::Fermat => "fermat",
            System::Giordano => "giordano",
        }
    }
}

/// A decision in one of the four number systems.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Verdict {
    pub system: System,
    pub result: String,
    /// Present exactly for hyperreal verdicts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selector_used: Option<String>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Classification {
    pub expr: String,
    pub zero: bool,
    pub bounded: bool,
    pub finite: bool,
    pub infinite: bool,
    pub infinitesimal: bool,
    pub in_o: bool,
    pub little_oh: bool,
    pub nilpotency_index: Option<u32>,
    pub standard_part: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InfinitesimalTerm {
    pub coeff: String,
    pub exponent: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Decomposition {
    pub expr: String,
    pub standard_part: String,
    pub infinitesimal_terms: Vec<InfinitesimalTerm>,
    pub discarded: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct MapImage {
    pub map: &'static str,
    pub input: String,
    pub image: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct Named {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub claim: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub witness: &'static str,
    pub elements: Vec<Named>,
    pub claims: Vec<Claim>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Binding {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Canonical {
    pub expr: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Report {
    Verdict(Verdict),
    Classification(Classification),
    Decomposition(Decomposition),
    Map(MapImage),
    Witness(Witness),
    Binding(Binding),
    Canonical(Canonical),
}

impl Report {
    /// Reports that carry a failed machine check.
    pub fn failed(&self) -> bool {
        matches!(self, Report::Witness(w) if !w.holds)
    }

    pub fn json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        match self {
            Report::Verdict(v) => verdict_text(&mut s, v),
            Report::Classification(c) => {
                let opt = |v: &Option<String>| v.clone().unwrap_or_else(|| "none".into());
                writeln!(s, "expr:             {}", c.expr).unwrap();
                writeln!(s, "zero:             {}", c.zero).unwrap();
                writeln!(s, "bounded:          {}", c.bounded).unwrap();
                writeln!(s, "finite:           {}", c.finite).unwrap();
                writeln!(s, "infinite:         {}", c.infinite).unwrap();
                writeln!(s, "infinitesimal:    {}", c.infinitesimal).unwrap();
                writeln!(s, "in o:             {}", c.in_o).unwrap();
                writeln!(s, "little-oh:        {}", c.little_oh).unwrap();
                let index = c.nilpotency_index.map(|k| k.to_string());
                writeln!(s, "nilpotency index: {}", opt(&index)).unwrap();
                writeln!(s, "standard part:    {}", opt(&c.standard_part)).unwrap();
            }
            Report::Decomposition(d) => {
                writeln!(s, "expr:          {}", d.expr).unwrap();
                writeln!(s, "standard part: {}", d.standard_part).unwrap();
                if d.infinitesimal_terms.is_empty() {
                    writeln!(s, "infinitesimal: none").unwrap();
                }
                for t in &d.infinitesimal_terms {
                    writeln!(s, "infinitesimal: {} * n^(-{})", t.coeff, t.exponent).unwrap();
                }
                writeln!(s, "discarded:     {}", d.discarded).unwrap();
            }
            Report::Map(m) => {
                writeln!(s, "{}({}) = {}", m.map, m.input, m.image).unwrap();
                verdict_text(&mut s, &m.verdict);
            }
            Report::Witness(w) => {
                writeln!(s, "witness: {}", w.witness).unwrap();
                for e in &w.elements {
                    writeln!(s, "  {} = {}", e.name, e.value).unwrap();
                }
                for c in &w.claims {
                    let mark = if c.holds { "ok  " } else { "FAIL" };
                    writeln!(s, "  [{mark}] {}", c.claim).unwrap();
                }
            }
            Report::Binding(b) => writeln!(s, "{} = {}", b.name, b.value).unwrap(),
            Report::Canonical(c) => writeln!(s, "{}", c.expr).unwrap(),
        }
        s
    }
}

fn verdict_text(s: &mut String, v: &Verdict) {
    write!(s, "{}: {}", v.system.as_str(), v.result).unwrap();
    if let Some(sel) = &v.selector_used {
        write!(s, "  [selector {sel}]").unwrap();
    }
    s.push('\n');
    for note in &v.notes {
        writeln!(s, "  {note}").unwrap();
    }
}
