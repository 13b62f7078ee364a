//! Python bindings: thin wrappers over the core toolkit that take and
//! return plain Python values (floats, lists, dicts).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde_json::Value;
use splitdec_core::gaussian::{self, GaussianIC, PowerSplit};
use splitdec_core::mcsim::error_vs_n;
use splitdec_core::prob::{Channel, ProbVec};
use splitdec_core::split::{
    example1_report_with_epsilon, min_split as core_min_split, min_split_spec,
    split_quantities as core_split_quantities, successive_decodable, RatePair,
};
use splitdec_core::switchsplit::{feasibility_check, rates_at_rx2_caps, GridRates, SwitchSpec};

fn err(e: splitdec_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn numeric_probvec(probs: Vec<f64>) -> PyResult<ProbVec> {
    let labels: Vec<String> = (0..probs.len()).map(|i| i.to_string()).collect();
    ProbVec::new(labels, probs).map_err(err)
}

fn numeric_channel(rows: Vec<Vec<f64>>) -> PyResult<Channel> {
    let ny = rows.first().map(|r| r.len()).unwrap_or(0);
    Channel::new(
        (0..rows.len()).map(|i| i.to_string()).collect::<Vec<_>>(),
        (0..ny).map(|i| i.to_string()).collect::<Vec<_>>(),
        rows,
    )
    .map_err(err)
}

fn json_to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    match v {
        Value::Null => Ok(py.None()),
        Value::Bool(b) => b.into_py_any(py),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_py_any(py)
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_py_any(py)
            }
        }
        Value::String(s) => s.into_py_any(py),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_py_any(py)
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, val) in map {
                dict.set_item(k, json_to_py(py, val)?)?;
            }
            dict.into_py_any(py)
        }
    }
}

fn serialize_to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let json = serde_json::to_value(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    json_to_py(py, &json)
}

/// Shannon entropy of a distribution, in bits.
#[pyfunction]
fn entropy(probs: Vec<f64>) -> PyResult<f64> {
    Ok(splitdec_core::prob::entropy(&numeric_probvec(probs)?))
}

/// I(X;Y) in bits from a dense joint table (rows = x, columns = y).
#[pyfunction]
fn mutual_information(joint: Vec<Vec<f64>>) -> PyResult<f64> {
    use splitdec_core::prob::{Axis, JointDist};
    let nx = joint.len();
    let ny = joint.first().map(|r| r.len()).unwrap_or(0);
    let table: Vec<f64> = joint.into_iter().flatten().collect();
    let j = JointDist::new(
        vec![
            Axis {
                name: "x".into(),
                support: (0..nx).map(|i| i.to_string()).collect(),
            },
            Axis {
                name: "y".into(),
                support: (0..ny).map(|i| i.to_string()).collect(),
            },
        ],
        table,
    )
    .map_err(err)?;
    splitdec_core::prob::mutual_information(&j, &["x"], &["y"]).map_err(err)
}

/// Min-construction split: returns (p_a, p_b) with min(A, B) ~ probs.
#[pyfunction]
fn min_split(probs: Vec<f64>, epsilon: f64) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let p_x = numeric_probvec(probs)?;
    let (p_u, p_v, _) = core_min_split(&p_x, epsilon).map_err(err)?;
    Ok((p_u.probs, p_v.probs))
}

/// The six decodability quantities of a min-construction split against a
/// channel given as transition rows (inputs match the split alphabet).
#[pyfunction]
fn split_quantities(
    py: Python<'_>,
    probs: Vec<f64>,
    epsilon: f64,
    rows: Vec<Vec<f64>>,
) -> PyResult<Py<PyAny>> {
    let p_x = numeric_probvec(probs)?;
    let spec = min_split_spec(&p_x, epsilon).map_err(err)?;
    let ch = numeric_channel(rows)?;
    let analysis = core_split_quantities(&spec, &ch).map_err(err)?;
    serialize_to_py(py, &analysis)
}

/// Successive-decoding verdict of a min-construction split at given rates.
#[pyfunction]
fn decode_verdict(
    py: Python<'_>,
    probs: Vec<f64>,
    epsilon: f64,
    rows: Vec<Vec<f64>>,
    r_a: f64,
    r_b: f64,
) -> PyResult<Py<PyAny>> {
    let p_x = numeric_probvec(probs)?;
    let spec = min_split_spec(&p_x, epsilon).map_err(err)?;
    let ch = numeric_channel(rows)?;
    let analysis = core_split_quantities(&spec, &ch).map_err(err)?;
    let verdict = successive_decodable(&analysis, &RatePair::new(r_a, r_b).map_err(err)?);
    serialize_to_py(py, &verdict)
}

/// The full two-receiver worked-example report as a dict.
#[pyfunction]
#[pyo3(signature = (epsilon = 0.5))]
fn example1_report(py: Python<'_>, epsilon: f64) -> PyResult<Py<PyAny>> {
    let report = example1_report_with_epsilon(epsilon).map_err(err)?;
    serialize_to_py(py, &report)
}

/// Point-to-point Gaussian capacity 1/2 log2(1 + snr) in bits.
#[pyfunction]
fn gaussian_capacity(snr: f64) -> PyResult<f64> {
    gaussian::gaussian_capacity(snr).map_err(err)
}

#[allow(clippy::too_many_arguments)]
fn build_ic(
    p1: f64,
    p2: f64,
    n1: f64,
    n2: f64,
    g11: f64,
    g12: f64,
    g21: f64,
    g22: f64,
) -> PyResult<GaussianIC> {
    GaussianIC::new(p1, p2, n1, n2, g11, g12, g21, g22).map_err(err)
}

/// Whether the channel is in the strong-interference regime.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn strong_interference_check(
    p1: f64,
    p2: f64,
    n1: f64,
    n2: f64,
    g11: f64,
    g12: f64,
    g21: f64,
    g22: f64,
) -> PyResult<bool> {
    Ok(gaussian::strong_interference_check(&build_ic(
        p1, p2, n1, n2, g11, g12, g21, g22,
    )?))
}

/// Capacity-region polygon under strong interference, as (R1, R2) vertices.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn hk_strong_region(
    p1: f64,
    p2: f64,
    n1: f64,
    n2: f64,
    g11: f64,
    g12: f64,
    g21: f64,
    g22: f64,
) -> PyResult<Vec<(f64, f64)>> {
    let region =
        gaussian::hk_strong_region(&build_ic(p1, p2, n1, n2, g11, g12, g21, g22)?).map_err(err)?;
    Ok(region.boundary)
}

/// Rate-splitting + successive-decoding region polygon.
#[pyfunction]
#[pyo3(signature = (p1, p2, n1, n2, g11, g12, g21, g22, grid = 201, include_mirror = false))]
#[allow(clippy::too_many_arguments)]
fn sdrs_region(
    p1: f64,
    p2: f64,
    n1: f64,
    n2: f64,
    g11: f64,
    g12: f64,
    g21: f64,
    g22: f64,
    grid: usize,
    include_mirror: bool,
) -> PyResult<Vec<(f64, f64)>> {
    let region = gaussian::sdrs_region(
        &build_ic(p1, p2, n1, n2, g11, g12, g21, g22)?,
        grid,
        include_mirror,
    )
    .map_err(err)?;
    Ok(region.boundary)
}

/// Componentwise-maximal feasible rate quadruple of one power split.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn sdrs_constraints(
    p1: f64,
    p2: f64,
    n1: f64,
    n2: f64,
    g11: f64,
    g12: f64,
    g21: f64,
    g22: f64,
    beta: f64,
    gamma: f64,
) -> PyResult<(f64, f64, f64, f64)> {
    let q = gaussian::sdrs_constraints(
        &build_ic(p1, p2, n1, n2, g11, g12, g21, g22)?,
        &PowerSplit::new(beta, gamma).map_err(err)?,
    );
    Ok((q.r1a, q.r1b, q.r2a, q.r2b))
}

/// Compare the achievable region against the capacity region on the
/// standard comparison channel; returns contained / max_gap / witness.
#[pyfunction]
#[pyo3(signature = (grid = 201, include_mirror = false))]
fn figure1_compare(py: Python<'_>, grid: usize, include_mirror: bool) -> PyResult<Py<PyAny>> {
    let ic = GaussianIC::figure1();
    let hk = gaussian::hk_strong_region(&ic).map_err(err)?;
    let sd = gaussian::sdrs_region(&ic, grid, include_mirror).map_err(err)?;
    serialize_to_py(py, &gaussian::region_compare(&sd, &hk))
}

/// Position fractions (f_a, f_b, f_c, f_d) of the four switch classes.
#[pyfunction]
fn stage_fractions(p_h: f64, p_v: f64) -> PyResult<(f64, f64, f64, f64)> {
    let f = splitdec_core::switchsplit::stage_fractions(&SwitchSpec::new(p_h, p_v).map_err(err)?);
    Ok((f[0], f[1], f[2], f[3]))
}

/// Feasibility report of the switch-split scheme on a fixture (JSON
/// string). Rates default to Receiver 2's caps minus a 1e-9 guard.
#[pyfunction]
#[pyo3(signature = (fixture_json, p_h = 0.5, p_v = 0.5, rates = None))]
fn switch_feasibility(
    py: Python<'_>,
    fixture_json: &str,
    p_h: f64,
    p_v: f64,
    rates: Option<(f64, f64, f64, f64, f64)>,
) -> PyResult<Py<PyAny>> {
    let ic = splitdec_core::io::parse_discrete_ic(fixture_json).map_err(err)?;
    let sw = SwitchSpec::new(p_h, p_v).map_err(err)?;
    let rates = match rates {
        Some((r1, r2a, r2b, r2c, r2d)) => GridRates::new(r1, r2a, r2b, r2c, r2d).map_err(err)?,
        None => rates_at_rx2_caps(&ic, &sw, 1e-9).map_err(err)?,
    };
    serialize_to_py(py, &feasibility_check(&ic, &sw, &rates).map_err(err)?)
}

/// Run a Monte Carlo trend experiment from a JSON config (same schema as
/// the CLI) and return one dict per block length.
#[pyfunction]
fn simulate_trend(py: Python<'_>, config_json: &str) -> PyResult<Py<PyAny>> {
    let plan = splitdec_core::io::parse_sim_config(config_json).map_err(err)?;
    let rows = error_vs_n(
        &plan.channel,
        &plan.kind,
        plan.rates,
        &plan.n_list,
        plan.trials,
        plan.codebook_seed,
        plan.sim_seed,
        plan.order,
    )
    .map_err(err)?;
    serialize_to_py(py, &rows)
}

#[pymodule]
fn splitdec(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(entropy, m)?)?;
    m.add_function(wrap_pyfunction!(mutual_information, m)?)?;
    m.add_function(wrap_pyfunction!(min_split, m)?)?;
    m.add_function(wrap_pyfunction!(split_quantities, m)?)?;
    m.add_function(wrap_pyfunction!(decode_verdict, m)?)?;
    m.add_function(wrap_pyfunction!(example1_report, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_capacity, m)?)?;
    m.add_function(wrap_pyfunction!(strong_interference_check, m)?)?;
    m.add_function(wrap_pyfunction!(hk_strong_region, m)?)?;
    m.add_function(wrap_pyfunction!(sdrs_region, m)?)?;
    m.add_function(wrap_pyfunction!(sdrs_constraints, m)?)?;
    m.add_function(wrap_pyfunction!(figure1_compare, m)?)?;
    m.add_function(wrap_pyfunction!(stage_fractions, m)?)?;
    m.add_function(wrap_pyfunction!(switch_feasibility, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_trend, m)?)?;
    Ok(())
}
