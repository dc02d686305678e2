use serde::Serialize;
use thomas_core::poly::{Poly, Variable};
use thomas_core::thomas::Stats;
use thomas_core::verify::VerifyReport;
use thomas_core::{Decomposition, Relation};

use crate::document::Document;

#[derive(Clone, Debug, Serialize)]
pub struct RelationRecord {
    pub poly: String,
    pub kind: &'static str,
    pub leader: Option<String>,
    pub mdeg: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Output {
    pub mode: &'static str,
    /// Header lines of the canonical document, without the mode.
    pub ranking: Vec<String>,
    pub input: Vec<String>,
    pub systems: Vec<Vec<RelationRecord>>,
    pub stats: Stats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyReport>,
}

fn record<V: Variable>(r: &Relation<V>, name: &dyn Fn(&V) -> String, fmt: &dyn Fn(&Poly<V>) -> String) -> RelationRecord {
    RelationRecord {
        poly: fmt(&r.poly),
        kind: r.kind.symbol(),
        leader: r.leader().map(name),
        mdeg: r.poly.mdeg(),
    }
}

fn records<V: Variable>(
    d: &Decomposition<V>,
    name: &dyn Fn(&V) -> String,
    fmt: &dyn Fn(&Poly<V>) -> String,
) -> Vec<Vec<RelationRecord>> {
    d.systems.iter().map(|s| s.relations.iter().map(|r| record(r, name, fmt)).collect()).collect()
}

pub enum Decomposed {
    Algebraic(Decomposition<thomas_core::Var>),
    Differential(Decomposition<thomas_core::differential::Jet>),
}

impl Decomposed {
    pub fn stats(&self) -> &Stats {
        match self {
            Decomposed::Algebraic(d) => &d.stats,
            Decomposed::Differential(d) => &d.stats,
        }
    }
}

pub fn output(doc: &Document, dec: &Decomposed, verify: Option<VerifyReport>) -> Output {
    let systems = match (doc, dec) {
        (Document::Algebraic(a), Decomposed::Algebraic(d)) => {
            records(d, &|v| a.ranking.name(*v).to_string(), &|p| a.ranking.format(p))
        }
        (Document::Differential(x), Decomposed::Differential(d)) => {
            let r = &x.theory.ranking;
            records(d, &|j| r.jet_name(j), &|p| r.format(p))
        }
        _ => unreachable!("mode mismatch"),
    };
    Output {
        mode: doc.mode().name(),
        ranking: doc.header_lines().into_iter().skip(1).collect(),
        input: doc.relation_lines(),
        systems,
        stats: dec.stats().clone(),
        verify,
    }
}

pub fn pretty(out: &Output) -> String {
    let mut s = String::new();
    s.push_str(&format!("mode: {}\n", out.mode));
    for line in &out.ranking {
        s.push_str(line);
        s.push('\n');
    }
    s.push_str("input:\n");
    for r in &out.input {
        s.push_str(&format!("  {r}\n"));
    }
    let n = out.systems.len();
    s.push_str(&format!("{n} simple system{}\n", if n == 1 { "" } else { "s" }));
    for (i, sys) in out.systems.iter().enumerate() {
        s.push_str(&format!("system {}:\n", i + 1));
        if sys.is_empty() {
            s.push_str("  (no conditions)\n");
        }
        for r in sys {
            s.push_str(&format!("  {} {} 0\n", r.poly, r.kind));
        }
    }
    let st = &out.stats;
    s.push_str(&format!(
        "stats: steps {}, splits {}, discarded {}, prs cache {} hits / {} misses\n",
        st.steps, st.splits, st.discarded, st.prs_cache_hits, st.prs_cache_misses
    ));
    s
}

pub fn verify_summary(r: &VerifyReport) -> String {
    let used: Vec<String> = r.primes.iter().map(|p| p.prime.to_string()).collect();
    let mut s = format!("verify: {:?}", r.verdict).to_lowercase();
    s.push_str(&format!(" (primes used: {})", if used.is_empty() { "none".into() } else { used.join(", ") }));
    for k in &r.skipped {
        s.push_str(&format!("\n  skipped {}: {}", k.prime, k.reason));
    }
    if let Some(c) = &r.counterexample {
        s.push_str(&format!("\n  counterexample mod {} at {:?}: {}", c.prime, c.point, c.detail));
    }
    s
}
