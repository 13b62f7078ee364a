//! Exact finite-probability algebra: distributions, channels, joint
//! composition, entropy and (conditional) mutual information.
//!
//! Everything works on dense tables over ordered label supports, which is
//! comfortable for alphabets up to a few dozen symbols and joints up to
//! five axes. All information quantities are in bits.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Mass must sum to 1 within this tolerance.
pub const VALIDATION_TOL: f64 = 1e-12;
/// Tiny negative MI values (accumulation noise) are clamped to 0.
pub const MI_CLAMP: f64 = 1e-12;

/// A probability distribution over an ordered alphabet of labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbVec {
    pub support: Vec<String>,
    pub probs: Vec<f64>,
}

impl ProbVec {
    pub fn new<S: Into<String>>(support: Vec<S>, probs: Vec<f64>) -> Result<Self> {
        let support: Vec<String> = support.into_iter().map(Into::into).collect();
        if support.len() != probs.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} labels but {} weights",
                support.len(),
                probs.len()
            )));
        }
        if support.is_empty() {
            return Err(Error::InvalidDistribution("empty support".into()));
        }
        for (i, a) in support.iter().enumerate() {
            if support[..i].contains(a) {
                return Err(Error::InvalidDistribution(format!("duplicate label `{a}`")));
            }
        }
        if let Some(&w) = probs.iter().find(|&&w| w < 0.0 || !w.is_finite()) {
            return Err(Error::InvalidDistribution(format!("negative weight {w}")));
        }
        let mass: f64 = probs.iter().sum();
        if (mass - 1.0).abs() > VALIDATION_TOL {
            return Err(Error::InvalidDistribution(format!("mass {mass} is not 1")));
        }
        Ok(Self { support, probs })
    }

    /// Uniform distribution over the given labels.
    pub fn uniform<S: Into<String>>(support: Vec<S>) -> Result<Self> {
        let n = support.len();
        Self::new(support, vec![1.0 / n as f64; n])
    }

    /// Uniform distribution over `0..n` with decimal labels.
    pub fn uniform_numeric(n: usize) -> Self {
        Self::uniform((0..n).map(|i| i.to_string()).collect()).expect("n > 0")
    }

    /// Point mass on one symbol of the given support.
    pub fn point_mass<S: Into<String>>(support: Vec<S>, index: usize) -> Result<Self> {
        let mut probs = vec![0.0; support.len()];
        probs[index] = 1.0;
        Self::new(support, probs)
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Survival function G(x) = P(X >= x) under the support order.
    pub fn survival(&self) -> Vec<f64> {
        let mut g = vec![0.0; self.len()];
        let mut acc = 0.0;
        for i in (0..self.len()).rev() {
            acc += self.probs[i];
            g[i] = acc;
        }
        g
    }
}

/// Shannon entropy H(p) in bits, with 0 log 0 := 0.
pub fn entropy(p: &ProbVec) -> f64 {
    entropy_of(&p.probs)
}

fn entropy_of(probs: &[f64]) -> f64 {
    -probs
        .iter()
        .filter(|&&w| w > 0.0)
        .map(|&w| w * w.log2())
        .sum::<f64>()
}

/// A row-stochastic conditional distribution p(y|x).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Channel {
    pub input_support: Vec<String>,
    pub output_support: Vec<String>,
    /// rows indexed by input, columns by output
    pub matrix: Vec<Vec<f64>>,
}

impl Channel {
    pub fn new<S: Into<String>, T: Into<String>>(
        input_support: Vec<S>,
        output_support: Vec<T>,
        matrix: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let input_support: Vec<String> = input_support.into_iter().map(Into::into).collect();
        let output_support: Vec<String> = output_support.into_iter().map(Into::into).collect();
        if matrix.len() != input_support.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} rows for {} inputs",
                matrix.len(),
                input_support.len()
            )));
        }
        for (i, row) in matrix.iter().enumerate() {
            // every row must itself be a valid distribution over the outputs
            ProbVec::new(output_support.clone(), row.clone()).map_err(|e| {
                Error::InvalidDistribution(format!("row {i} ({}): {e}", input_support[i]))
            })?;
        }
        Ok(Self {
            input_support,
            output_support,
            matrix,
        })
    }

    pub fn num_inputs(&self) -> usize {
        self.input_support.len()
    }

    pub fn num_outputs(&self) -> usize {
        self.output_support.len()
    }

    /// Binary symmetric channel with crossover probability `p`.
    pub fn bsc(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("bsc crossover {p}")));
        }
        Self::new(
            vec!["0", "1"],
            vec!["0", "1"],
            vec![vec![1.0 - p, p], vec![p, 1.0 - p]],
        )
    }
}

/// The 4-ary channel that maps i to i or i+1 (mod 4) with probability 1/2 each.
pub fn broken_typewriter() -> Channel {
    let labels: Vec<String> = (0..4).map(|i| i.to_string()).collect();
    let mut matrix = vec![vec![0.0; 4]; 4];
    for i in 0..4 {
        matrix[i][i] = 0.5;
        matrix[i][(i + 1) % 4] = 0.5;
    }
    Channel::new(labels.clone(), labels, matrix).expect("rows sum to 1")
}

/// The deterministic 4-to-2 channel whose output is 1 iff the input is 2 or 3.
pub fn msb_channel() -> Channel {
    let inputs: Vec<String> = (0..4).map(|i| i.to_string()).collect();
    let mut matrix = vec![vec![0.0; 2]; 4];
    for (i, row) in matrix.iter_mut().enumerate() {
        row[if i >= 2 { 1 } else { 0 }] = 1.0;
    }
    Channel::new(inputs, vec!["0".to_string(), "1".to_string()], matrix).expect("one-hot rows")
}

/// One named axis of a joint distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub support: Vec<String>,
}

/// A dense joint distribution over a small set of named variables.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDist {
    pub axes: Vec<Axis>,
    /// row-major table, last axis fastest
    pub table: Vec<f64>,
}

impl JointDist {
    pub fn new(axes: Vec<Axis>, table: Vec<f64>) -> Result<Self> {
        let cells: usize = axes.iter().map(|a| a.support.len()).product();
        if table.len() != cells {
            return Err(Error::InvalidDistribution(format!(
                "table has {} cells, axes imply {cells}",
                table.len()
            )));
        }
        if let Some(&w) = table.iter().find(|&&w| w < 0.0 || !w.is_finite()) {
            return Err(Error::InvalidDistribution(format!("negative entry {w}")));
        }
        let mass: f64 = table.iter().sum();
        if (mass - 1.0).abs() > VALIDATION_TOL {
            return Err(Error::InvalidDistribution(format!("mass {mass} is not 1")));
        }
        Ok(Self { axes, table })
    }

    pub fn axis_sizes(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.support.len()).collect()
    }

    fn axis_indices(&self, names: &[&str]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| {
                self.axes
                    .iter()
                    .position(|a| a.name == *n)
                    .ok_or_else(|| Error::UnknownAxis(n.to_string()))
            })
            .collect()
    }

    /// Unravel a flat cell index into per-axis coordinates.
    fn coords(&self, mut flat: usize, sizes: &[usize]) -> Vec<usize> {
        let mut c = vec![0; sizes.len()];
        for i in (0..sizes.len()).rev() {
            c[i] = flat % sizes[i];
            flat /= sizes[i];
        }
        c
    }

    /// Entropy of the marginal over the given axis indices, in bits.
    fn entropy_axes(&self, keep: &[usize]) -> f64 {
        let sizes = self.axis_sizes();
        let reduced: usize = keep.iter().map(|&i| sizes[i]).product();
        let mut marg = vec![0.0; reduced.max(1)];
        for (flat, &w) in self.table.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            let c = self.coords(flat, &sizes);
            let mut idx = 0;
            for &k in keep {
                idx = idx * sizes[k] + c[k];
            }
            marg[idx] += w;
        }
        entropy_of(&marg)
    }

    /// Marginal distribution over one axis.
    pub fn marginal(&self, axis: &str) -> Result<ProbVec> {
        let idx = self.axis_indices(&[axis])?[0];
        let sizes = self.axis_sizes();
        let mut probs = vec![0.0; sizes[idx]];
        for (flat, &w) in self.table.iter().enumerate() {
            let c = self.coords(flat, &sizes);
            probs[c[idx]] += w;
        }
        ProbVec::new(self.axes[idx].support.clone(), probs)
    }
}

/// Joint distribution of (X, Y) with X ~ p_x and Y | X = x ~ ch row x.
pub fn compose(p_x: &ProbVec, ch: &Channel) -> Result<JointDist> {
    if p_x.support != ch.input_support {
        return Err(Error::SupportMismatch(format!(
            "distribution support {:?} vs channel input {:?}",
            p_x.support, ch.input_support
        )));
    }
    let nx = p_x.len();
    let ny = ch.num_outputs();
    let mut table = vec![0.0; nx * ny];
    for x in 0..nx {
        for y in 0..ny {
            table[x * ny + y] = p_x.probs[x] * ch.matrix[x][y];
        }
    }
    JointDist::new(
        vec![
            Axis {
                name: "x".into(),
                support: p_x.support.clone(),
            },
            Axis {
                name: "y".into(),
                support: ch.output_support.clone(),
            },
        ],
        table,
    )
}

fn check_disjoint(groups: &[&[&str]]) -> Result<()> {
    for (i, g) in groups.iter().enumerate() {
        for name in *g {
            for h in &groups[..i] {
                if h.contains(name) {
                    return Err(Error::OverlappingAxes(name.to_string()));
                }
            }
            if g.iter().filter(|n| *n == name).count() > 1 {
                return Err(Error::OverlappingAxes(name.to_string()));
            }
        }
    }
    Ok(())
}

/// I(A;B) in bits, where A and B are disjoint sets of axes each treated as a
/// product variable. Tiny negatives from accumulation are clamped to 0.
pub fn mutual_information(j: &JointDist, a: &[&str], b: &[&str]) -> Result<f64> {
    check_disjoint(&[a, b])?;
    let ia = j.axis_indices(a)?;
    let ib = j.axis_indices(b)?;
    let iab: Vec<usize> = ia.iter().chain(ib.iter()).copied().collect();
    let mi = j.entropy_axes(&ia) + j.entropy_axes(&ib) - j.entropy_axes(&iab);
    clamp_mi(mi)
}

/// I(A;B|C) in bits via H(AC) + H(BC) - H(ABC) - H(C).
pub fn conditional_mutual_information(
    j: &JointDist,
    a: &[&str],
    b: &[&str],
    c: &[&str],
) -> Result<f64> {
    check_disjoint(&[a, b, c])?;
    let ia = j.axis_indices(a)?;
    let ib = j.axis_indices(b)?;
    let ic = j.axis_indices(c)?;
    let cat =
        |u: &[usize], v: &[usize]| -> Vec<usize> { u.iter().chain(v.iter()).copied().collect() };
    let iabc = cat(&cat(&ia, &ib), &ic);
    let mi = j.entropy_axes(&cat(&ia, &ic)) + j.entropy_axes(&cat(&ib, &ic))
        - j.entropy_axes(&iabc)
        - j.entropy_axes(&ic);
    clamp_mi(mi)
}

fn clamp_mi(mi: f64) -> Result<f64> {
    if mi < -MI_CLAMP {
        return Err(Error::InvalidDistribution(format!(
            "mutual information {mi} below -1e-12; joint is not a distribution"
        )));
    }
    Ok(mi.max(0.0))
}

/// A total mapping (x_a, x_b) -> x over finite supports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixFunction {
    pub a_support: Vec<String>,
    pub b_support: Vec<String>,
    /// output label for each (a, b) pair, indexed [a][b]
    pub table: Vec<Vec<String>>,
}

impl MixFunction {
    pub fn new(
        a_support: Vec<String>,
        b_support: Vec<String>,
        table: Vec<Vec<String>>,
    ) -> Result<Self> {
        if table.len() != a_support.len() || table.iter().any(|row| row.len() != b_support.len()) {
            return Err(Error::SupportMismatch(
                "mix table shape does not match supports".into(),
            ));
        }
        Ok(Self {
            a_support,
            b_support,
            table,
        })
    }

    /// f(u, v) = min(u, v) under the order of `support`.
    pub fn min_over(support: &[String]) -> Self {
        let table = (0..support.len())
            .map(|a| {
                (0..support.len())
                    .map(|b| support[a.min(b)].clone())
                    .collect()
            })
            .collect();
        Self {
            a_support: support.to_vec(),
            b_support: support.to_vec(),
            table,
        }
    }

    /// f(u, v) = v, ignoring the first component.
    pub fn projection_b(a_support: &[String], b_support: &[String]) -> Self {
        let table = (0..a_support.len()).map(|_| b_support.to_vec()).collect();
        Self {
            a_support: a_support.to_vec(),
            b_support: b_support.to_vec(),
            table,
        }
    }

    /// Output indices into `ch_inputs`, validating totality.
    pub fn output_indices(&self, ch_inputs: &[String]) -> Result<Vec<Vec<usize>>> {
        self.table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|label| {
                        ch_inputs.iter().position(|l| l == label).ok_or_else(|| {
                            Error::SupportMismatch(format!(
                                "mix output `{label}` not a channel input"
                            ))
                        })
                    })
                    .collect()
            })
            .collect()
    }
}

/// Joint distribution of (X_a, X_b, Y) with independent inputs and
/// Y | (x_a, x_b) ~ channel row f(x_a, x_b).
pub fn mix_joint(p_a: &ProbVec, p_b: &ProbVec, f: &MixFunction, ch: &Channel) -> Result<JointDist> {
    if f.a_support != p_a.support || f.b_support != p_b.support {
        return Err(Error::SupportMismatch(
            "mix function supports do not match the component distributions".into(),
        ));
    }
    let out = f.output_indices(&ch.input_support)?;
    let (na, nb, ny) = (p_a.len(), p_b.len(), ch.num_outputs());
    let mut table = vec![0.0; na * nb * ny];
    for a in 0..na {
        for b in 0..nb {
            let row = &ch.matrix[out[a][b]];
            let w = p_a.probs[a] * p_b.probs[b];
            for y in 0..ny {
                table[(a * nb + b) * ny + y] = w * row[y];
            }
        }
    }
    JointDist::new(
        vec![
            Axis {
                name: "xa".into(),
                support: p_a.support.clone(),
            },
            Axis {
                name: "xb".into(),
                support: p_b.support.clone(),
            },
            Axis {
                name: "y".into(),
                support: ch.output_support.clone(),
            },
        ],
        table,
    )
}

/// Joint distribution of the mixed input X = f(X_a, X_b) and the output Y.
pub fn mixed_input_joint(
    p_a: &ProbVec,
    p_b: &ProbVec,
    f: &MixFunction,
    ch: &Channel,
) -> Result<JointDist> {
    let out = f.output_indices(&ch.input_support)?;
    let mut p_x = vec![0.0; ch.num_inputs()];
    for a in 0..p_a.len() {
        for b in 0..p_b.len() {
            p_x[out[a][b]] += p_a.probs[a] * p_b.probs[b];
        }
    }
    compose(&ProbVec::new(ch.input_support.clone(), p_x)?, ch)
}
