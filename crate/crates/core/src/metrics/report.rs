use serde::Serialize;

use super::{bleu, nist, ter, BleuScore, NistScore, TerScore, DEFAULT_BLEU_ORDER, DEFAULT_NIST_ORDER};
use crate::corpus::TokenCorpus;
use crate::error::Result;

/// BLEU, NIST and TER for one system output, in that order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalReport {
    pub bleu: BleuScore,
    pub nist: NistScore,
    pub ter: TerScore,
    /// BLEU scaled to 0..100.
    pub bleu_percent: f64,
    /// TER scaled by 100.
    pub ter_percent: f64,
}

impl EvalReport {
    pub const TSV_HEADER: &'static str = "BLEU\tNIST\tTER\tBLEU_ratio\tTER_ratio";

    /// One TSV row: percentage BLEU, NIST, percentage TER, then the raw ratios.
    pub fn tsv_row(&self) -> String {
        format!(
            "{:.2}\t{:.4}\t{:.2}\t{:.6}\t{:.6}",
            self.bleu_percent, self.nist.score, self.ter_percent, self.bleu.score, self.ter.score
        )
    }
}

pub fn evaluate(hyps: &TokenCorpus, refs: &TokenCorpus) -> Result<EvalReport> {
    let bleu = bleu(hyps, refs, DEFAULT_BLEU_ORDER)?;
    let nist = nist(hyps, refs, DEFAULT_NIST_ORDER)?;
    let ter = ter(hyps, refs)?;
    Ok(EvalReport {
        bleu_percent: bleu.score * 100.0,
        ter_percent: ter.score * 100.0,
        bleu,
        nist,
        ter,
    })
}
