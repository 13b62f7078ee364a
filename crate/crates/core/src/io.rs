//! File formats used by the command-line front end: JSON documents for
//! distributions, channels, discrete interference channels and simulation
//! configs, plus the CSV tables the subcommands emit.
//!
//! CSV dialect: comma-separated, "." decimal point, numeric-only fields
//! (no quoting), LF line endings, one header row.

use crate::gaussian::RateRegion;
use crate::mcsim::{CodebookKind, DecodeOrder, TrendRow};
use crate::prob::{Channel, ProbVec};
use crate::split::{min_split_spec, RatePair, SplitAnalysis, SweepRow};
use crate::switchsplit::DiscreteIC;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// JSON form of a ProbVec: {"support": [...], "probs": [...]}.
#[derive(Debug, Serialize, Deserialize)]
pub struct ProbVecFile {
    pub support: Vec<String>,
    pub probs: Vec<f64>,
}

/// JSON form of a Channel:
/// {"support_in": [...], "support_out": [...], "rows": [[...], ...]}.
#[derive(Debug, Serialize, Deserialize)]
pub struct ChannelFile {
    pub support_in: Vec<String>,
    pub support_out: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

pub fn parse_probvec(json: &str) -> Result<ProbVec> {
    let file: ProbVecFile =
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("probvec: {e}")))?;
    ProbVec::new(file.support, file.probs)
}

pub fn probvec_to_json(p: &ProbVec) -> String {
    serde_json::to_string_pretty(&ProbVecFile {
        support: p.support.clone(),
        probs: p.probs.clone(),
    })
    .expect("serializable")
}

pub fn parse_channel(json: &str) -> Result<Channel> {
    let file: ChannelFile =
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("channel: {e}")))?;
    Channel::new(file.support_in, file.support_out, file.rows)
}

pub fn channel_to_json(ch: &Channel) -> String {
    serde_json::to_string_pretty(&ChannelFile {
        support_in: ch.input_support.clone(),
        support_out: ch.output_support.clone(),
        rows: ch.matrix.clone(),
    })
    .expect("serializable")
}

/// JSON form of a discrete interference channel fixture.
#[derive(Debug, Serialize, Deserialize)]
pub struct DiscreteICFile {
    pub p_x1: ProbVecFile,
    pub p_x2: ProbVecFile,
    pub ch1: ChannelFile,
    pub ch2: ChannelFile,
}

pub fn parse_discrete_ic(json: &str) -> Result<DiscreteIC> {
    let file: DiscreteICFile =
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("fixture: {e}")))?;
    DiscreteIC::new(
        ProbVec::new(file.p_x1.support, file.p_x1.probs)?,
        ProbVec::new(file.p_x2.support, file.p_x2.probs)?,
        Channel::new(file.ch1.support_in, file.ch1.support_out, file.ch1.rows)?,
        Channel::new(file.ch2.support_in, file.ch2.support_out, file.ch2.rows)?,
    )
}

pub fn discrete_ic_to_json(ic: &DiscreteIC) -> String {
    serde_json::to_string_pretty(&DiscreteICFile {
        p_x1: ProbVecFile {
            support: ic.p_x1.support.clone(),
            probs: ic.p_x1.probs.clone(),
        },
        p_x2: ProbVecFile {
            support: ic.p_x2.support.clone(),
            probs: ic.p_x2.probs.clone(),
        },
        ch1: ChannelFile {
            support_in: ic.ch1.input_support.clone(),
            support_out: ic.ch1.output_support.clone(),
            rows: ic.ch1.matrix.clone(),
        },
        ch2: ChannelFile {
            support_in: ic.ch2.input_support.clone(),
            support_out: ic.ch2.output_support.clone(),
            rows: ic.ch2.matrix.clone(),
        },
    })
    .expect("serializable")
}

/// JSON config for the simulate subcommand.
///
/// `split` carries (p_x, epsilon) for a min-construction codebook;
/// `unsplit` carries a plain input distribution. Exactly one must be set.
#[derive(Debug, Serialize, Deserialize)]
pub struct SimConfig {
    pub channel: ChannelFile,
    pub n_list: Vec<usize>,
    pub rate_a: f64,
    #[serde(default)]
    pub rate_b: f64,
    #[serde(default)]
    pub split: Option<SplitConfig>,
    #[serde(default)]
    pub unsplit: Option<ProbVecFile>,
    pub trials: u64,
    pub codebook_seed: u64,
    pub sim_seed: u64,
    #[serde(default = "default_order")]
    pub order: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SplitConfig {
    pub p_x: ProbVecFile,
    pub epsilon: f64,
}

fn default_order() -> String {
    "a-then-b".into()
}

/// Everything a simulation run needs, decoded from a SimConfig.
pub struct SimPlan {
    pub channel: Channel,
    pub kind: CodebookKind,
    pub rates: RatePair,
    pub n_list: Vec<usize>,
    pub trials: u64,
    pub codebook_seed: u64,
    pub sim_seed: u64,
    pub order: DecodeOrder,
}

pub fn parse_sim_config(json: &str) -> Result<SimPlan> {
    let cfg: SimConfig =
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("config: {e}")))?;
    let channel = Channel::new(
        cfg.channel.support_in,
        cfg.channel.support_out,
        cfg.channel.rows,
    )?;
    if cfg.trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    if cfg.n_list.is_empty() {
        return Err(Error::InvalidParameter("n_list is empty".into()));
    }
    let kind = match (cfg.split, cfg.unsplit) {
        (Some(split), None) => {
            let p_x = ProbVec::new(split.p_x.support, split.p_x.probs)?;
            CodebookKind::Split(min_split_spec(&p_x, split.epsilon)?)
        }
        (None, Some(p)) => CodebookKind::Unsplit(ProbVec::new(p.support, p.probs)?),
        _ => {
            return Err(Error::Parse(
                "config must set exactly one of `split` / `unsplit`".into(),
            ))
        }
    };
    let order = match cfg.order.as_str() {
        "a-then-b" => DecodeOrder::AThenB,
        "b-then-a" => DecodeOrder::BThenA,
        other => {
            return Err(Error::Parse(format!(
                "order `{other}` is not a-then-b or b-then-a"
            )))
        }
    };
    Ok(SimPlan {
        channel,
        kind,
        rates: RatePair::new(cfg.rate_a, cfg.rate_b)?,
        n_list: cfg.n_list,
        trials: cfg.trials,
        codebook_seed: cfg.codebook_seed,
        sim_seed: cfg.sim_seed,
        order,
    })
}

// --------------------------------------------------------------- CSV out

/// Region CSV: header `R1,R2`, one vertex per row.
pub fn region_to_csv(region: &RateRegion) -> String {
    let mut out = String::from("R1,R2\n");
    for &(x, y) in &region.boundary {
        out.push_str(&format!("{x},{y}\n"));
    }
    out
}

pub fn parse_region_csv(csv: &str, label: &str) -> Result<RateRegion> {
    let mut lines = csv.lines();
    match lines.next() {
        Some("R1,R2") => {}
        other => return Err(Error::Parse(format!("bad region header {other:?}"))),
    }
    let boundary = lines
        .filter(|l| !l.is_empty())
        .map(|line| {
            let mut parts = line.split(',');
            let x = parse_f64(parts.next())?;
            let y = parse_f64(parts.next())?;
            Ok((x, y))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RateRegion {
        boundary,
        label: label.to_string(),
        grid: None,
    })
}

fn parse_f64(field: Option<&str>) -> Result<f64> {
    field
        .ok_or_else(|| Error::Parse("missing field".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad number: {e}")))
}

/// Raw corner cloud CSV with the same schema as a region CSV.
pub fn corners_to_csv(corners: &[(f64, f64)]) -> String {
    let mut out = String::from("R1,R2\n");
    for &(x, y) in corners {
        out.push_str(&format!("{x},{y}\n"));
    }
    out
}

/// Trend CSV: `n,err_a,err_b,err_any,ci95` where ci95 is for err_any.
pub fn trend_to_csv(rows: &[TrendRow]) -> String {
    let mut out = String::from("n,err_a,err_b,err_any,ci95\n");
    for row in rows {
        let r = &row.result;
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.n, r.err_a, r.err_b, r.err_any, r.ci95_any
        ));
    }
    out
}

/// (n, err_a, err_b, err_any, ci95)
pub type TrendRecord = (usize, f64, f64, f64, f64);

pub fn parse_trend_csv(csv: &str) -> Result<Vec<TrendRecord>> {
    let mut lines = csv.lines();
    match lines.next() {
        Some("n,err_a,err_b,err_any,ci95") => {}
        other => return Err(Error::Parse(format!("bad trend header {other:?}"))),
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|line| {
            let mut parts = line.split(',');
            let n: usize = parts
                .next()
                .ok_or_else(|| Error::Parse("missing n".into()))?
                .parse()
                .map_err(|e| Error::Parse(format!("bad n: {e}")))?;
            let err_a = parse_f64(parts.next())?;
            let err_b = parse_f64(parts.next())?;
            let err_any = parse_f64(parts.next())?;
            let ci = parse_f64(parts.next())?;
            Ok((n, err_a, err_b, err_any, ci))
        })
        .collect()
}

/// Epsilon-sweep CSV: one row per epsilon, six analysis columns per channel.
pub fn sweep_to_csv(rows: &[SweepRow], channel_names: &[String]) -> String {
    let mut out = String::from("epsilon");
    for name in channel_names {
        for field in [
            "i_a_y",
            "i_b_y_given_a",
            "i_b_y",
            "i_a_y_given_b",
            "i_x_y",
            "i_b_ya",
        ] {
            out.push_str(&format!(",{name}_{field}"));
        }
    }
    out.push('\n');
    for row in rows {
        out.push_str(&row.epsilon.to_string());
        for a in &row.analyses {
            out.push_str(&format!(
                ",{},{},{},{},{},{}",
                a.i_a_y, a.i_b_y_given_a, a.i_b_y, a.i_a_y_given_b, a.i_x_y, a.i_b_ya
            ));
        }
        out.push('\n');
    }
    out
}

pub fn parse_sweep_csv(csv: &str) -> Result<Vec<SweepRow>> {
    let mut lines = csv.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty sweep csv".into()))?;
    let cols = header.split(',').count();
    if cols < 7 || (cols - 1) % 6 != 0 {
        return Err(Error::Parse(format!("bad sweep header `{header}`")));
    }
    let channels = (cols - 1) / 6;
    lines
        .filter(|l| !l.is_empty())
        .map(|line| {
            let fields = line
                .split(',')
                .map(|f| {
                    f.parse::<f64>()
                        .map_err(|e| Error::Parse(format!("bad number: {e}")))
                })
                .collect::<Result<Vec<f64>>>()?;
            if fields.len() != cols {
                return Err(Error::Parse("ragged sweep row".into()));
            }
            let analyses = (0..channels)
                .map(|c| {
                    let base = 1 + 6 * c;
                    SplitAnalysis {
                        i_a_y: fields[base],
                        i_b_y_given_a: fields[base + 1],
                        i_b_y: fields[base + 2],
                        i_a_y_given_b: fields[base + 3],
                        i_x_y: fields[base + 4],
                        i_b_ya: fields[base + 5],
                    }
                })
                .collect();
            Ok(SweepRow {
                epsilon: fields[0],
                analyses,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::broken_typewriter;
    use crate::split::sweep_epsilon;

    #[test]
    fn probvec_json_round_trip() {
        let p = ProbVec::uniform_numeric(4);
        let parsed = parse_probvec(&probvec_to_json(&p)).unwrap();
        assert_eq!(parsed, p);
    }

    #[test]
    fn channel_json_round_trip() {
        let ch = broken_typewriter();
        let parsed = parse_channel(&channel_to_json(&ch)).unwrap();
        assert_eq!(parsed, ch);
    }

    #[test]
    fn invalid_channel_json_rejected() {
        assert!(parse_channel("{\"support_in\": [\"0\"]}").is_err());
        let bad = r#"{"support_in": ["0","1"], "support_out": ["0"], "rows": [[0.5],[1.0]]}"#;
        assert!(parse_channel(bad).is_err());
    }

    #[test]
    fn region_csv_round_trip() {
        let region = RateRegion {
            boundary: vec![
                (0.0, 0.0),
                (0.7202862956929907, 0.0),
                (0.0, 0.792481250360578),
            ],
            label: "t".into(),
            grid: None,
        };
        let parsed = parse_region_csv(&region_to_csv(&region), "t").unwrap();
        assert_eq!(parsed.boundary, region.boundary);
    }

    #[test]
    fn sweep_csv_round_trip() {
        let rows = sweep_epsilon(&ProbVec::uniform_numeric(4), &[broken_typewriter()], 3).unwrap();
        let csv = sweep_to_csv(&rows, &["ch0".into()]);
        let parsed = parse_sweep_csv(&csv).unwrap();
        assert_eq!(parsed.len(), rows.len());
        for (a, b) in parsed.iter().zip(rows.iter()) {
            assert_eq!(a.epsilon, b.epsilon);
            assert_eq!(a.analyses[0].i_a_y, b.analyses[0].i_a_y);
            assert_eq!(a.analyses[0].i_b_ya, b.analyses[0].i_b_ya);
        }
    }

    #[test]
    fn sim_config_requires_exactly_one_codebook_kind() {
        let base = r#"{
            "channel": {"support_in": ["0","1"], "support_out": ["0","1"],
                        "rows": [[0.89, 0.11], [0.11, 0.89]]},
            "n_list": [8], "rate_a": 0.25, "trials": 10,
            "codebook_seed": 1, "sim_seed": 2
        }"#;
        assert!(parse_sim_config(base).is_err());
        let with_unsplit = base.replacen(
            "\"n_list\"",
            "\"unsplit\": {\"support\": [\"0\",\"1\"], \"probs\": [0.5, 0.5]}, \"n_list\"",
            1,
        );
        assert!(parse_sim_config(&with_unsplit).is_ok());
    }
}
