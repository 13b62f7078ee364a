//! Switch-based four-way split of Sender 2's message and the per-stage
//! successive-decoding constraints at both receivers.
//!
//! Sender 2's message is a 2x2 grid (a, b; c, d). Two i.i.d. switch
//! variables pick, per position, the row (S_v) and the column (S_h) whose
//! component codebook occupies that position. Receiver 1 decodes
//! (m2a, m2b) -> m1 -> (m2c, m2d); Receiver 2 decodes
//! (m2a, m2c) -> m1 -> (m2b, m2d). Rate caps use exact expected position
//! fractions (the large-blocklength idealization) with switch realizations
//! known to all parties; decoded Sender-2 symbols are used as side
//! information only on their own position classes.

use crate::prob::{
    conditional_mutual_information, mutual_information, Axis, Channel, JointDist, ProbVec,
};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Switch probabilities: p_h = P(S_h = left column), p_v = P(S_v = top row).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SwitchSpec {
    pub p_h: f64,
    pub p_v: f64,
}

impl SwitchSpec {
    pub fn new(p_h: f64, p_v: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p_h) || !(0.0..=1.0).contains(&p_v) {
            return Err(Error::InvalidParameter(format!(
                "switch probabilities ({p_h}, {p_v}) outside [0,1]"
            )));
        }
        Ok(Self { p_h, p_v })
    }
}

/// Rates of the four split parts and of Sender 1's message.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GridRates {
    pub r1: f64,
    pub r2a: f64,
    pub r2b: f64,
    pub r2c: f64,
    pub r2d: f64,
}

impl GridRates {
    pub fn new(r1: f64, r2a: f64, r2b: f64, r2c: f64, r2d: f64) -> Result<Self> {
        for r in [r1, r2a, r2b, r2c, r2d] {
            if r < 0.0 {
                return Err(Error::InvalidParameter(format!("negative rate {r}")));
            }
        }
        Ok(Self {
            r1,
            r2a,
            r2b,
            r2c,
            r2d,
        })
    }

    pub fn zero() -> Self {
        Self {
            r1: 0.0,
            r2a: 0.0,
            r2b: 0.0,
            r2c: 0.0,
            r2d: 0.0,
        }
    }

    fn part(&self, part: Part) -> f64 {
        match part {
            Part::M1 => self.r1,
            Part::M2a => self.r2a,
            Part::M2b => self.r2b,
            Part::M2c => self.r2c,
            Part::M2d => self.r2d,
        }
    }
}

/// A discrete two-sender interference channel given by its two MAC
/// sub-channels. Channel inputs are indexed by (x1, x2) pairs labeled
/// "x1|x2" in x1-major order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiscreteIC {
    pub p_x1: ProbVec,
    pub p_x2: ProbVec,
    pub ch1: Channel,
    pub ch2: Channel,
}

/// Label of the pair input (x1, x2).
pub fn pair_label(x1: &str, x2: &str) -> String {
    format!("{x1}|{x2}")
}

impl DiscreteIC {
    pub fn new(p_x1: ProbVec, p_x2: ProbVec, ch1: Channel, ch2: Channel) -> Result<Self> {
        let expected: Vec<String> = p_x1
            .support
            .iter()
            .flat_map(|a| p_x2.support.iter().map(move |b| pair_label(a, b)))
            .collect();
        for ch in [&ch1, &ch2] {
            if ch.input_support != expected {
                return Err(Error::SupportMismatch(
                    "channel input support is not the product of the sender supports".into(),
                ));
            }
        }
        Ok(Self {
            p_x1,
            p_x2,
            ch1,
            ch2,
        })
    }

    /// Joint distribution p(x1, x2, y) at the given receiver.
    fn receiver_joint(&self, receiver: usize) -> Result<JointDist> {
        let ch = if receiver == 1 { &self.ch1 } else { &self.ch2 };
        let (n1, n2, ny) = (self.p_x1.len(), self.p_x2.len(), ch.num_outputs());
        let mut table = vec![0.0; n1 * n2 * ny];
        for a in 0..n1 {
            for b in 0..n2 {
                let row = &ch.matrix[a * n2 + b];
                let w = self.p_x1.probs[a] * self.p_x2.probs[b];
                for y in 0..ny {
                    table[(a * n2 + b) * ny + y] = w * row[y];
                }
            }
        }
        JointDist::new(
            vec![
                Axis {
                    name: "x1".into(),
                    support: self.p_x1.support.clone(),
                },
                Axis {
                    name: "x2".into(),
                    support: self.p_x2.support.clone(),
                },
                Axis {
                    name: "y".into(),
                    support: ch.output_support.clone(),
                },
            ],
            table,
        )
    }

    /// The four per-letter quantities at one receiver:
    /// (I(X2;Y), I(X2;Y|X1), I(X1;Y), I(X1;Y|X2)).
    pub fn per_letter(&self, receiver: usize) -> Result<PerLetter> {
        let j = self.receiver_joint(receiver)?;
        Ok(PerLetter {
            i_x2_y: mutual_information(&j, &["x2"], &["y"])?,
            i_x2_y_given_x1: conditional_mutual_information(&j, &["x2"], &["y"], &["x1"])?,
            i_x1_y: mutual_information(&j, &["x1"], &["y"])?,
            i_x1_y_given_x2: conditional_mutual_information(&j, &["x1"], &["y"], &["x2"])?,
        })
    }
}

/// Per-letter mutual informations on one MAC sub-channel.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PerLetter {
    pub i_x2_y: f64,
    pub i_x2_y_given_x1: f64,
    pub i_x1_y: f64,
    pub i_x1_y_given_x2: f64,
}

/// Expected position fractions of the four classes (a, b, c, d).
pub fn stage_fractions(sw: &SwitchSpec) -> [f64; 4] {
    let (ph, pv) = (sw.p_h, sw.p_v);
    [
        pv * ph,
        pv * (1.0 - ph),
        (1.0 - pv) * ph,
        (1.0 - pv) * (1.0 - ph),
    ]
}

/// The five message parts in play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Part {
    M2a,
    M2b,
    M2c,
    M2d,
    M1,
}

impl Part {
    pub fn name(&self) -> &'static str {
        match self {
            Part::M2a => "R2a",
            Part::M2b => "R2b",
            Part::M2c => "R2c",
            Part::M2d => "R2d",
            Part::M1 => "R1",
        }
    }
}

/// One stage's rate cap at one receiver.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StageCap {
    pub part: Part,
    /// fraction of positions carrying the part (1 for m1)
    pub fraction: f64,
    pub cap: f64,
}

/// Per-receiver cap tables in decode order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstraintTable {
    pub rx1: Vec<StageCap>,
    pub rx2: Vec<StageCap>,
}

impl ConstraintTable {
    pub fn cap(&self, receiver: usize, part: Part) -> f64 {
        let stages = if receiver == 1 { &self.rx1 } else { &self.rx2 };
        stages
            .iter()
            .find(|s| s.part == part)
            .map(|s| s.cap)
            .expect("every part appears in both orders")
    }
}

/// Rate caps for every message part at every stage of both receivers'
/// decode orders.
pub fn stage_constraints(ic: &DiscreteIC, sw: &SwitchSpec) -> Result<ConstraintTable> {
    let [fa, fb, fc, fd] = stage_fractions(sw);
    let q1 = ic.per_letter(1)?;
    let q2 = ic.per_letter(2)?;
    // Receiver 1: (m2a, m2b) -> m1 -> (m2c, m2d). Before m1 the sender-1
    // signal is noise; afterwards it is known. m1 sees known X2 only on the
    // already-decoded top-row positions.
    let rx1 = vec![
        StageCap {
            part: Part::M2a,
            fraction: fa,
            cap: fa * q1.i_x2_y,
        },
        StageCap {
            part: Part::M2b,
            fraction: fb,
            cap: fb * q1.i_x2_y,
        },
        StageCap {
            part: Part::M1,
            fraction: 1.0,
            cap: sw.p_v * q1.i_x1_y_given_x2 + (1.0 - sw.p_v) * q1.i_x1_y,
        },
        StageCap {
            part: Part::M2c,
            fraction: fc,
            cap: fc * q1.i_x2_y_given_x1,
        },
        StageCap {
            part: Part::M2d,
            fraction: fd,
            cap: fd * q1.i_x2_y_given_x1,
        },
    ];
    // Receiver 2: (m2a, m2c) -> m1 -> (m2b, m2d), left column first.
    let rx2 = vec![
        StageCap {
            part: Part::M2a,
            fraction: fa,
            cap: fa * q2.i_x2_y,
        },
        StageCap {
            part: Part::M2c,
            fraction: fc,
            cap: fc * q2.i_x2_y,
        },
        StageCap {
            part: Part::M1,
            fraction: 1.0,
            cap: sw.p_h * q2.i_x1_y_given_x2 + (1.0 - sw.p_h) * q2.i_x1_y,
        },
        StageCap {
            part: Part::M2b,
            fraction: fb,
            cap: fb * q2.i_x2_y_given_x1,
        },
        StageCap {
            part: Part::M2d,
            fraction: fd,
            cap: fd * q2.i_x2_y_given_x1,
        },
    ];
    Ok(ConstraintTable { rx1, rx2 })
}

/// One stage check of a feasibility report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StageCheck {
    pub constraint: String,
    pub rate: f64,
    pub cap: f64,
    pub margin: f64,
    pub ok: bool,
}

/// Verdict of checking a rate assignment against both decode orders.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub rx1: Vec<StageCheck>,
    pub rx2: Vec<StageCheck>,
    pub first_failure_rx1: Option<String>,
    pub first_failure_rx2: Option<String>,
    pub feasible: bool,
}

/// Check every rate against its cap at every stage of both receivers.
pub fn feasibility_check(
    ic: &DiscreteIC,
    sw: &SwitchSpec,
    rates: &GridRates,
) -> Result<FeasibilityReport> {
    let table = stage_constraints(ic, sw)?;
    let check = |stages: &[StageCap], receiver: usize| -> Vec<StageCheck> {
        stages
            .iter()
            .map(|s| {
                let rate = rates.part(s.part);
                let ok = rate == 0.0 || rate < s.cap;
                StageCheck {
                    constraint: format!("{} vs Rx{receiver}", s.part.name()),
                    rate,
                    cap: s.cap,
                    margin: s.cap - rate,
                    ok,
                }
            })
            .collect()
    };
    let rx1 = check(&table.rx1, 1);
    let rx2 = check(&table.rx2, 2);
    let first = |checks: &[StageCheck]| checks.iter().find(|c| !c.ok).map(|c| c.constraint.clone());
    let first_failure_rx1 = first(&rx1);
    let first_failure_rx2 = first(&rx2);
    let feasible = first_failure_rx1.is_none() && first_failure_rx2.is_none();
    Ok(FeasibilityReport {
        rx1,
        rx2,
        first_failure_rx1,
        first_failure_rx2,
        feasible,
    })
}

/// Rates pinned at Receiver 2's caps minus a guard (clamped at 0).
pub fn rates_at_rx2_caps(ic: &DiscreteIC, sw: &SwitchSpec, guard: f64) -> Result<GridRates> {
    let table = stage_constraints(ic, sw)?;
    let at = |p: Part| (table.cap(2, p) - guard).max(0.0);
    Ok(GridRates {
        r1: at(Part::M1),
        r2a: at(Part::M2a),
        r2b: at(Part::M2b),
        r2c: at(Part::M2c),
        r2d: at(Part::M2d),
    })
}

// ------------------------------------------------------- fixture search

/// SplitMix64 finalizer; also used by the Monte Carlo module.
pub(crate) fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

struct SearchRng {
    state: u64,
    counter: u64,
}

impl SearchRng {
    fn new(seed: u64, idx: u64) -> Self {
        Self {
            state: mix64(mix64(seed) ^ idx),
            counter: 0,
        }
    }

    fn next_f64(&mut self) -> f64 {
        self.counter += 1;
        let h = mix64(self.state ^ self.counter.wrapping_mul(0x9E3779B97F4A7C15));
        (h >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Random probability vector (normalized exponentials). Weights are
    /// quantized to a 1e-12 grid so the search output is bit-identical
    /// across build profiles (`ln` may differ by an ulp under
    /// optimization), then renormalized exactly.
    fn prob_vector(&mut self, k: usize) -> Vec<f64> {
        let mut v: Vec<f64> = (0..k).map(|_| -self.next_f64().max(1e-300).ln()).collect();
        let total: f64 = v.iter().sum();
        for w in &mut v {
            *w = (*w / total * 1e12).round() / 1e12;
        }
        let s: f64 = v.iter().sum();
        let largest = v
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).expect("finite"))
            .map(|(i, _)| i)
            .unwrap_or(0);
        v[largest] += 1.0 - s;
        v
    }
}

/// Deterministic seed-indexed search for an interference channel where the
/// m2b rate chosen at Receiver 2's cap violates Receiver 1's constraint:
/// I(X2;Y2) + margin < I(X2;Y1) < I(X2;Y2|X1) - margin. First success by
/// index order wins. Returns (index, channel).
pub fn search_demo_fixture(
    seed: u64,
    max_candidates: u64,
    margin: f64,
) -> Option<(u64, DiscreteIC)> {
    for idx in 0..max_candidates {
        let mut rng = SearchRng::new(seed, idx);
        let p1 = ProbVec::new(vec!["0", "1"], rng.prob_vector(2)).ok()?;
        let p2 = ProbVec::new(vec!["0", "1"], rng.prob_vector(2)).ok()?;
        let pair_support: Vec<String> = p1
            .support
            .iter()
            .flat_map(|a| p2.support.iter().map(move |b| pair_label(a, b)))
            .collect();
        let outputs = vec!["0".to_string(), "1".to_string()];
        let make_channel = |rng: &mut SearchRng| {
            let rows: Vec<Vec<f64>> = (0..4).map(|_| rng.prob_vector(2)).collect();
            Channel::new(pair_support.clone(), outputs.clone(), rows)
        };
        let ch1 = make_channel(&mut rng).ok()?;
        let ch2 = make_channel(&mut rng).ok()?;
        let ic = DiscreteIC::new(p1, p2, ch1, ch2).ok()?;
        let q1 = ic.per_letter(1).ok()?;
        let q2 = ic.per_letter(2).ok()?;
        if q2.i_x2_y + margin < q1.i_x2_y && q1.i_x2_y + margin < q2.i_x2_y_given_x1 {
            return Some((idx, ic));
        }
    }
    None
}

/// Seed and margin of the shipped demo fixture.
pub const FIXTURE_SEARCH_SEED: u64 = 20250810;
pub const FIXTURE_SEARCH_MARGIN: f64 = 0.02;

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn demo_ic() -> DiscreteIC {
        search_demo_fixture(FIXTURE_SEARCH_SEED, 10_000, FIXTURE_SEARCH_MARGIN)
            .expect("search finds a fixture")
            .1
    }

    #[test]
    fn fractions_examples() {
        let f = stage_fractions(&SwitchSpec::new(1.0, 1.0).unwrap());
        assert_eq!(f, [1.0, 0.0, 0.0, 0.0]);
        let f = stage_fractions(&SwitchSpec::new(0.5, 0.5).unwrap());
        assert_eq!(f, [0.25, 0.25, 0.25, 0.25]);
        let f = stage_fractions(&SwitchSpec::new(0.3, 0.6).unwrap());
        for (got, want) in f.iter().zip([0.18, 0.42, 0.12, 0.28]) {
            assert_abs_diff_eq!(got, &want, epsilon = 1e-15);
        }
    }

    #[test]
    fn fractions_sum_to_one() {
        for ph in [0.0, 0.17, 0.5, 0.93, 1.0] {
            for pv in [0.0, 0.26, 0.5, 0.81, 1.0] {
                let f = stage_fractions(&SwitchSpec::new(ph, pv).unwrap());
                assert_abs_diff_eq!(f.iter().sum::<f64>(), 1.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn degenerate_switch_zeroes_bottom_row() {
        let ic = demo_ic();
        let table = stage_constraints(&ic, &SwitchSpec::new(0.5, 1.0).unwrap()).unwrap();
        assert_eq!(table.cap(1, Part::M2c), 0.0);
        assert_eq!(table.cap(1, Part::M2d), 0.0);
        assert_eq!(table.cap(2, Part::M2c), 0.0);
    }

    #[test]
    fn symmetric_ic_has_symmetric_m2a_caps() {
        // identical MAC sub-channels at both receivers
        let p1 = ProbVec::new(vec!["0", "1"], vec![0.5, 0.5]).unwrap();
        let p2 = ProbVec::new(vec!["0", "1"], vec![0.5, 0.5]).unwrap();
        let support: Vec<String> = ["0|0", "0|1", "1|0", "1|1"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let rows = vec![
            vec![0.9, 0.1],
            vec![0.6, 0.4],
            vec![0.3, 0.7],
            vec![0.2, 0.8],
        ];
        let ch = Channel::new(
            support.clone(),
            vec!["0".to_string(), "1".to_string()],
            rows,
        )
        .unwrap();
        let ic = DiscreteIC::new(p1, p2, ch.clone(), ch).unwrap();
        let table = stage_constraints(&ic, &SwitchSpec::new(0.5, 0.5).unwrap()).unwrap();
        assert_abs_diff_eq!(
            table.cap(1, Part::M2a),
            table.cap(2, Part::M2a),
            epsilon = 1e-12
        );
    }

    #[test]
    fn caps_monotone_in_position_fraction() {
        let ic = demo_ic();
        let mut prev_a = -1.0;
        let mut prev_c = f64::INFINITY;
        for k in 0..=10 {
            let pv = k as f64 / 10.0;
            let table = stage_constraints(&ic, &SwitchSpec::new(0.5, pv).unwrap()).unwrap();
            let a = table.cap(1, Part::M2a);
            let c = table.cap(1, Part::M2c);
            assert!(a >= prev_a - 1e-12);
            assert!(c <= prev_c + 1e-12);
            prev_a = a;
            prev_c = c;
        }
    }

    #[test]
    fn fixture_search_is_deterministic_and_satisfies_conditions() {
        let (idx, ic) = search_demo_fixture(FIXTURE_SEARCH_SEED, 10_000, FIXTURE_SEARCH_MARGIN)
            .expect("fixture");
        let (idx2, ic2) = search_demo_fixture(FIXTURE_SEARCH_SEED, 10_000, FIXTURE_SEARCH_MARGIN)
            .expect("fixture");
        assert_eq!(idx, idx2);
        assert_eq!(ic.ch1.matrix, ic2.ch1.matrix);
        let q1 = ic.per_letter(1).unwrap();
        let q2 = ic.per_letter(2).unwrap();
        assert!(q2.i_x2_y + FIXTURE_SEARCH_MARGIN < q1.i_x2_y);
        assert!(q1.i_x2_y + FIXTURE_SEARCH_MARGIN < q2.i_x2_y_given_x1);
    }

    #[test]
    fn m2b_cap_is_tighter_at_rx1_on_the_fixture() {
        let ic = demo_ic();
        let table = stage_constraints(&ic, &SwitchSpec::new(0.5, 0.5).unwrap()).unwrap();
        assert!(table.cap(1, Part::M2b) < table.cap(2, Part::M2b));
    }

    #[test]
    fn zero_rates_feasible() {
        let ic = demo_ic();
        let report =
            feasibility_check(&ic, &SwitchSpec::new(0.5, 0.5).unwrap(), &GridRates::zero())
                .unwrap();
        assert!(report.feasible);
    }

    #[test]
    fn rates_below_both_caps_feasible() {
        let ic = demo_ic();
        let sw = SwitchSpec::new(0.5, 0.5).unwrap();
        let table = stage_constraints(&ic, &sw).unwrap();
        let below = |p: Part| (table.cap(1, p).min(table.cap(2, p)) - 1e-9).max(0.0);
        let rates = GridRates {
            r1: below(Part::M1),
            r2a: below(Part::M2a),
            r2b: below(Part::M2b),
            r2c: below(Part::M2c),
            r2d: below(Part::M2d),
        };
        let report = feasibility_check(&ic, &sw, &rates).unwrap();
        assert!(report.feasible, "{report:#?}");
    }

    #[test]
    fn rx2_caps_violate_r2b_at_rx1() {
        let ic = demo_ic();
        let sw = SwitchSpec::new(0.5, 0.5).unwrap();
        let rates = rates_at_rx2_caps(&ic, &sw, 1e-9).unwrap();
        let report = feasibility_check(&ic, &sw, &rates).unwrap();
        assert!(!report.feasible);
        assert_eq!(report.first_failure_rx1.as_deref(), Some("R2b vs Rx1"));
        assert_eq!(report.first_failure_rx2, None);
    }

    #[test]
    fn decreasing_rates_preserves_feasibility() {
        let ic = demo_ic();
        let sw = SwitchSpec::new(0.4, 0.7).unwrap();
        let mut rng = SearchRng::new(99, 0);
        let table = stage_constraints(&ic, &sw).unwrap();
        let max = |p: Part| table.cap(1, p).min(table.cap(2, p)) * 1.2;
        let mut feasible_seen = 0;
        for _ in 0..500 {
            let rates = GridRates {
                r1: rng.next_f64() * max(Part::M1),
                r2a: rng.next_f64() * max(Part::M2a),
                r2b: rng.next_f64() * max(Part::M2b),
                r2c: rng.next_f64() * max(Part::M2c),
                r2d: rng.next_f64() * max(Part::M2d),
            };
            let before = feasibility_check(&ic, &sw, &rates).unwrap().feasible;
            if before {
                feasible_seen += 1;
                let shrunk = GridRates {
                    r1: rates.r1 * rng.next_f64(),
                    r2a: rates.r2a * rng.next_f64(),
                    r2b: rates.r2b * rng.next_f64(),
                    r2c: rates.r2c * rng.next_f64(),
                    r2d: rates.r2d * rng.next_f64(),
                };
                assert!(feasibility_check(&ic, &sw, &shrunk).unwrap().feasible);
            }
        }
        assert!(feasible_seen > 0, "sweep never produced a feasible draw");
    }
}
