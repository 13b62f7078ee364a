//! Finite-blocklength Monte Carlo: random codebooks, transmission over a
//! DMC, successive maximum-likelihood decoding, and error-rate estimates.
//!
//! Every random draw is derived from a hash of (seed, lane, index,
//! position), so results are pure functions of their inputs and trials can
//! run concurrently without changing the outcome. Likelihoods accumulate in
//! the log domain with -inf for zero-probability transitions; score ties
//! break toward the lowest message index.

use crate::prob::{Channel, MixFunction, ProbVec};
use crate::split::{RatePair, SplitSpec};
use crate::switchsplit::mix64;
use crate::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Default cap on the number of codeword pairs a spec may imply.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// Which component codebooks a spec uses.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum CodebookKind {
    /// two components merged by a mixing function
    Split(SplitSpec),
    /// a single standard codebook drawn from p_x
    Unsplit(ProbVec),
}

/// A reproducible codebook specification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodebookSpec {
    pub n: usize,
    pub rates: RatePair,
    pub kind: CodebookKind,
    pub seed: u64,
    pub budget: u64,
}

impl CodebookSpec {
    pub fn split(n: usize, rates: RatePair, spec: SplitSpec, seed: u64) -> Self {
        Self {
            n,
            rates,
            kind: CodebookKind::Split(spec),
            seed,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn unsplit(n: usize, rate: f64, p_x: ProbVec, seed: u64) -> Result<Self> {
        Ok(Self {
            n,
            rates: RatePair::new(rate, 0.0)?,
            kind: CodebookKind::Unsplit(p_x),
            seed,
            budget: DEFAULT_BUDGET,
        })
    }

    /// Message counts M = floor(2^(n R)), at least 1.
    pub fn message_counts(&self) -> (u64, u64) {
        let count = |r: f64| ((self.n as f64 * r).exp2().floor() as u64).max(1);
        (count(self.rates.r_a), count(self.rates.r_b))
    }
}

/// Draw lanes keep the codebook components, message picks, and channel
/// noise on disjoint hash streams.
mod lane {
    pub const COMPONENT_A: u64 = 1;
    pub const COMPONENT_B: u64 = 2;
    pub const MESSAGE: u64 = 3;
    pub const CHANNEL: u64 = 4;
}

/// Uniform f64 in [0, 1) derived from (seed, lane, index, position).
fn draw(seed: u64, lane: u64, index: u64, position: u64) -> f64 {
    let mut h = seed;
    for v in [lane, index, position] {
        h = mix64(h ^ v.wrapping_mul(0x9E3779B97F4A7C15));
    }
    (h >> 11) as f64 / (1u64 << 53) as f64
}

/// Inverse-CDF sample from cumulative weights.
fn sample_cdf(cdf: &[f64], u: f64) -> usize {
    cdf.iter().position(|&c| u < c).unwrap_or(cdf.len() - 1)
}

/// A generated codebook: component codewords as symbol indices plus the
/// mix table, everything immutable and shareable.
#[derive(Debug, Clone)]
pub struct Codebook {
    pub n: usize,
    pub m_a: u64,
    pub m_b: u64,
    /// m_a rows of n symbol indices into the a-support
    pub xa: Vec<Vec<usize>>,
    /// m_b rows of n symbol indices into the b-support
    pub xb: Vec<Vec<usize>>,
    /// mix output as channel-input index, indexed [a_sym][b_sym]
    pub mix: Vec<Vec<usize>>,
    pub p_a: ProbVec,
    pub p_b: ProbVec,
}

impl Codebook {
    /// Channel-input index of the mixed codeword symbol at one position.
    pub fn mixed_symbol(&self, m_a: usize, m_b: usize, pos: usize) -> usize {
        self.mix[self.xa[m_a][pos]][self.xb[m_b][pos]]
    }
}

/// Draw the component codebooks of a spec; same seed, same codebook.
pub fn generate_codebook(spec: &CodebookSpec, ch_inputs: &[String]) -> Result<Codebook> {
    if spec.n == 0 {
        return Err(Error::InvalidParameter("block length 0".into()));
    }
    let (m_a, m_b) = spec.message_counts();
    let required = m_a as u128 * m_b as u128;
    if required > spec.budget as u128 {
        return Err(Error::BudgetExceeded {
            required,
            budget: spec.budget,
        });
    }
    let (p_a, p_b, f) = match &spec.kind {
        CodebookKind::Split(s) => (s.p_a.clone(), s.p_b.clone(), s.f.clone()),
        CodebookKind::Unsplit(p_x) => {
            // a degenerate b-component that the mix ignores
            let p_b = ProbVec::point_mass(p_x.support.clone(), p_x.len() - 1)?;
            let f = MixFunction::min_over(&p_x.support);
            (p_x.clone(), p_b, f)
        }
    };
    let mix_labels = f.output_indices(ch_inputs)?;
    let cdf = |p: &ProbVec| -> Vec<f64> {
        let mut acc = 0.0;
        p.probs
            .iter()
            .map(|w| {
                acc += w;
                acc
            })
            .collect()
    };
    let (cdf_a, cdf_b) = (cdf(&p_a), cdf(&p_b));
    let component = |lane: u64, m: u64, cdf: &[f64]| -> Vec<Vec<usize>> {
        (0..m)
            .map(|msg| {
                (0..spec.n as u64)
                    .map(|pos| sample_cdf(cdf, draw(spec.seed, lane, msg, pos)))
                    .collect()
            })
            .collect()
    };
    Ok(Codebook {
        n: spec.n,
        m_a,
        m_b,
        xa: component(lane::COMPONENT_A, m_a, &cdf_a),
        xb: component(lane::COMPONENT_B, m_b, &cdf_b),
        mix: mix_labels,
        p_a,
        p_b,
    })
}

/// Decode order of the two stages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecodeOrder {
    AThenB,
    BThenA,
}

/// Empirical error rates of one experiment.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub trials: u64,
    pub err_a: f64,
    pub err_b: f64,
    pub err_any: f64,
    pub ci95_a: f64,
    pub ci95_b: f64,
    pub ci95_any: f64,
}

fn ci95(p: f64, trials: u64) -> f64 {
    1.96 * (p * (1.0 - p) / trials as f64).sqrt()
}

/// The averaged stage-1 channel p(y | x_component) with the other
/// component marginalized out.
pub fn effective_stage1_channel(cb: &Codebook, ch: &Channel, first: DecodeOrder) -> Vec<Vec<f64>> {
    let ny = ch.num_outputs();
    match first {
        DecodeOrder::AThenB => {
            let mut eff = vec![vec![0.0; ny]; cb.p_a.len()];
            for (a, row) in eff.iter_mut().enumerate() {
                for b in 0..cb.p_b.len() {
                    let w = cb.p_b.probs[b];
                    for (y, e) in row.iter_mut().enumerate() {
                        *e += w * ch.matrix[cb.mix[a][b]][y];
                    }
                }
            }
            eff
        }
        DecodeOrder::BThenA => {
            let mut eff = vec![vec![0.0; ny]; cb.p_b.len()];
            for (b, row) in eff.iter_mut().enumerate() {
                for a in 0..cb.p_a.len() {
                    let w = cb.p_a.probs[a];
                    for (y, e) in row.iter_mut().enumerate() {
                        *e += w * ch.matrix[cb.mix[a][b]][y];
                    }
                }
            }
            eff
        }
    }
}

fn log_table(matrix: &[Vec<f64>]) -> Vec<Vec<f64>> {
    matrix
        .iter()
        .map(|row| {
            row.iter()
                .map(|&w| if w > 0.0 { w.log2() } else { f64::NEG_INFINITY })
                .collect()
        })
        .collect()
}

/// Transmit random message pairs and decode successively by ML.
///
/// Stage 1 decodes the first message against the averaged single-user
/// channel; stage 2 conditions on the stage-1 decision. Stage errors are
/// counted against the true messages even when the earlier stage erred.
pub fn simulate_successive(
    ch: &Channel,
    spec: &CodebookSpec,
    order: DecodeOrder,
    trials: u64,
    sim_seed: u64,
) -> Result<ExperimentResult> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    let cb = generate_codebook(spec, &ch.input_support)?;
    let log_eff = log_table(&effective_stage1_channel(&cb, ch, order));
    let log_ch = log_table(&ch.matrix);
    let cdf_rows: Vec<Vec<f64>> = ch
        .matrix
        .iter()
        .map(|row| {
            let mut acc = 0.0;
            row.iter()
                .map(|w| {
                    acc += w;
                    acc
                })
                .collect()
        })
        .collect();

    let counts = (0..trials)
        .into_par_iter()
        .map(|t| {
            let m_a = (draw(sim_seed, lane::MESSAGE, t, 0) * cb.m_a as f64) as usize;
            let m_a = m_a.min(cb.m_a as usize - 1);
            let m_b = (draw(sim_seed, lane::MESSAGE, t, 1) * cb.m_b as f64) as usize;
            let m_b = m_b.min(cb.m_b as usize - 1);
            let y: Vec<usize> = (0..cb.n)
                .map(|pos| {
                    let x = cb.mixed_symbol(m_a, m_b, pos);
                    sample_cdf(&cdf_rows[x], draw(sim_seed, lane::CHANNEL, t, pos as u64))
                })
                .collect();
            let (err_first, err_second) = match order {
                DecodeOrder::AThenB => {
                    let a_hat =
                        argmax_score(cb.m_a, |m| score(&y, |pos| log_eff[cb.xa[m][pos]][y[pos]]));
                    let b_hat = argmax_score(cb.m_b, |m| {
                        score(&y, |pos| log_ch[cb.mixed_symbol(a_hat, m, pos)][y[pos]])
                    });
                    (a_hat != m_a, b_hat != m_b)
                }
                DecodeOrder::BThenA => {
                    let b_hat =
                        argmax_score(cb.m_b, |m| score(&y, |pos| log_eff[cb.xb[m][pos]][y[pos]]));
                    let a_hat = argmax_score(cb.m_a, |m| {
                        score(&y, |pos| log_ch[cb.mixed_symbol(m, b_hat, pos)][y[pos]])
                    });
                    (b_hat != m_b, a_hat != m_a)
                }
            };
            let (ea, eb) = match order {
                DecodeOrder::AThenB => (err_first, err_second),
                DecodeOrder::BThenA => (err_second, err_first),
            };
            (ea as u64, eb as u64, (ea || eb) as u64)
        })
        .reduce(|| (0, 0, 0), |x, y| (x.0 + y.0, x.1 + y.1, x.2 + y.2));

    let t = trials as f64;
    let (err_a, err_b, err_any) = (
        counts.0 as f64 / t,
        counts.1 as f64 / t,
        counts.2 as f64 / t,
    );
    Ok(ExperimentResult {
        trials,
        err_a,
        err_b,
        err_any,
        ci95_a: ci95(err_a, trials),
        ci95_b: ci95(err_b, trials),
        ci95_any: ci95(err_any, trials),
    })
}

fn score(y: &[usize], f: impl Fn(usize) -> f64) -> f64 {
    (0..y.len()).map(f).sum()
}

/// Index of the best score; ties go to the lowest index.
fn argmax_score(m: u64, score_of: impl Fn(usize) -> f64) -> usize {
    let mut best = 0usize;
    let mut best_score = f64::NEG_INFINITY;
    for msg in 0..m as usize {
        let s = score_of(msg);
        if s > best_score {
            best = msg;
            best_score = s;
        }
    }
    best
}

/// One row of an error-versus-blocklength table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrendRow {
    pub n: usize,
    pub result: ExperimentResult,
}

/// Run the same experiment template across block lengths.
#[allow(clippy::too_many_arguments)]
pub fn error_vs_n(
    ch: &Channel,
    kind: &CodebookKind,
    rates: RatePair,
    n_list: &[usize],
    trials: u64,
    codebook_seed: u64,
    sim_seed: u64,
    order: DecodeOrder,
) -> Result<Vec<TrendRow>> {
    n_list
        .iter()
        .map(|&n| {
            let spec = CodebookSpec {
                n,
                rates,
                kind: kind.clone(),
                seed: codebook_seed,
                budget: DEFAULT_BUDGET,
            };
            Ok(TrendRow {
                n,
                result: simulate_successive(ch, &spec, order, trials, sim_seed)?,
            })
        })
        .collect()
}
