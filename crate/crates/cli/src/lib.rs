//! Front end for the decomposition engine: input documents, output rendering
//! and the verification hook.

pub mod document;
pub mod render;

use thomas_core::differential::diff_decompose;
use thomas_core::thomas::DecomposeError;
use thomas_core::verify::{check_decomposition, SkippedPrime, Verdict, VerifyReport};
use thomas_core::{algebraic, Options};

pub use document::{parse_document, DocError, Document, Mode};
pub use render::{Decomposed, Output};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_VERIFY_FAIL: i32 = 4;
pub const EXIT_INCONCLUSIVE: i32 = 5;

/// Fibers sampled per system by the simplicity check.
pub const SIMPLE_SAMPLES: usize = 20;

pub fn decompose(doc: &Document, opts: &Options) -> Result<Decomposed, DecomposeError> {
    Ok(match doc {
        Document::Algebraic(a) => Decomposed::Algebraic(algebraic::decompose(&a.relations, opts)?),
        Document::Differential(d) => Decomposed::Differential(diff_decompose(&d.theory, &d.relations, opts)?),
    })
}

pub fn verify(doc: &Document, dec: &Decomposed, primes: &[u64]) -> VerifyReport {
    match (doc, dec) {
        (Document::Algebraic(a), Decomposed::Algebraic(d)) => {
            check_decomposition(&a.relations, &d.systems, &d.critical, a.ranking.len(), primes, SIMPLE_SAMPLES)
        }
        _ => VerifyReport {
            verdict: Verdict::Inconclusive,
            primes: Vec::new(),
            skipped: primes
                .iter()
                .map(|&p| SkippedPrime { prime: p, reason: "differential systems are not checked".into() })
                .collect(),
            counterexample: None,
        },
    }
}

pub fn exit_code(report: Option<&VerifyReport>) -> i32 {
    match report.map(|r| r.verdict) {
        None | Some(Verdict::Pass) => EXIT_OK,
        Some(Verdict::Fail) => EXIT_VERIFY_FAIL,
        Some(Verdict::Inconclusive) => EXIT_INCONCLUSIVE,
    }
}
