//! Python bindings: words-as-strings in, plain ints/dicts out.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use fcc_bsymbol::channel::monte_carlo;
use fcc_bsymbol::error::Error;
use fcc_bsymbol::fcc::{
    encoder_locally_binary, encoder_weight, encoder_weight_distribution, find_assignment,
    optimal_redundancy, redundancy_bounds_report, verify_fcc,
};
use fcc_bsymbol::functions::{DistanceMatrix, FunctionKind, FunctionSpec};
use fcc_bsymbol::irregular::{
    default_orderings, exact_min_length, greedy_construct, gv_upper, plotkin_lower,
};
use fcc_bsymbol::metric::{
    b_distance as core_b_distance, b_weight as core_b_weight, partition_stats, Word,
};
use fcc_bsymbol::spheres::{sphere_size_enum, sphere_size_formula_b3};
use fcc_bsymbol::Limits;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(format!("{} ({})", e, e.code()))
}

fn json_to_py(py: Python<'_>, value: &serde_json::Value) -> PyResult<Py<PyAny>> {
    use serde_json::Value;
    Ok(match value {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().unbind().into(),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.unbind().into()
            } else {
                n.as_f64().unwrap().into_pyobject(py)?.unbind().into()
            }
        }
        Value::String(s) => s.into_pyobject(py)?.unbind().into(),
        Value::Array(items) => {
            let list: Vec<Py<PyAny>> =
                items.iter().map(|v| json_to_py(py, v)).collect::<PyResult<_>>()?;
            list.into_pyobject(py)?.unbind().into()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, v) in map {
                dict.set_item(k, json_to_py(py, v)?)?;
            }
            dict.unbind().into()
        }
    })
}

/// A target function f: words of length k over alphabet q -> values.
#[pyclass(name = "Function")]
struct PyFunction {
    inner: FunctionSpec,
}

#[pymethods]
impl PyFunction {
    /// kind: "or", "weight" (b-symbol weight, window fb),
    /// "wdist" (weight-distribution step function, period T),
    /// or "table" with an explicit value list over all q^k words.
    #[new]
    #[pyo3(signature = (q, k, kind, fb=None, t_cap=None, table=None))]
    fn new(
        q: u32,
        k: usize,
        kind: &str,
        fb: Option<usize>,
        t_cap: Option<u64>,
        table: Option<Vec<u64>>,
    ) -> PyResult<Self> {
        let kind = match kind {
            "or" => FunctionKind::Or,
            "weight" => FunctionKind::BWeight {
                b: fb.ok_or_else(|| PyValueError::new_err("weight needs fb"))?,
            },
            "wdist" => FunctionKind::WeightDistribution {
                b: fb.ok_or_else(|| PyValueError::new_err("wdist needs fb"))?,
                t_param: t_cap.ok_or_else(|| PyValueError::new_err("wdist needs t_cap"))?,
            },
            "table" => FunctionKind::Table(
                table.ok_or_else(|| PyValueError::new_err("table needs values"))?,
            ),
            other => return Err(PyValueError::new_err(format!("unknown kind '{other}'"))),
        };
        Ok(PyFunction { inner: FunctionSpec::new(q, k, kind).map_err(err)? })
    }

    fn eval(&self, x: &str) -> PyResult<u64> {
        let word = Word::parse(x, self.inner.q()).map_err(err)?;
        self.inner.eval(&word).map_err(err)
    }

    fn image(&self) -> PyResult<Vec<u64>> {
        Ok(self.inner.image())
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }
}

/// A systematic encoder x -> (x, p(x)) for a fixed (t, b).
#[pyclass(name = "Encoder")]
struct PyEncoder {
    inner: fcc_bsymbol::fcc::Encoder,
}

#[pymethods]
impl PyEncoder {
    fn encode(&self, x: &str) -> PyResult<String> {
        let word = Word::parse(x, self.inner.q()).map_err(err)?;
        Ok(self.inner.encode(&word).map_err(err)?.to_string())
    }

    fn redundancy(&self, x: &str) -> PyResult<Option<String>> {
        let word = Word::parse(x, self.inner.q()).map_err(err)?;
        Ok(self.inner.redundancy(&word).map_err(err)?.map(|p| p.to_string()))
    }

    fn verify(&self, f: &PyFunction) -> PyResult<bool> {
        verify_fcc(&self.inner, &f.inner, &Limits::default()).map_err(err)
    }

    fn to_csv(&self) -> PyResult<String> {
        self.inner.to_csv().map_err(err)
    }

    #[staticmethod]
    fn from_csv(text: &str, q: u32, b: usize, t: usize) -> PyResult<Self> {
        Ok(PyEncoder {
            inner: fcc_bsymbol::fcc::Encoder::from_csv(text, q, b, t).map_err(err)?,
        })
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.r()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn t(&self) -> usize {
        self.inner.t()
    }

    #[getter]
    fn b(&self) -> usize {
        self.inner.b()
    }
}

#[pyfunction]
fn b_distance(x: &str, y: &str, q: u32, b: usize) -> PyResult<usize> {
    let x = Word::parse(x, q).map_err(err)?;
    let y = Word::parse(y, q).map_err(err)?;
    core_b_distance(&x, &y, b).map_err(err)
}

#[pyfunction]
fn b_weight(x: &str, q: u32, b: usize) -> PyResult<usize> {
    let x = Word::parse(x, q).map_err(err)?;
    core_b_weight(&x, b).map_err(err)
}

#[pyfunction]
fn distance_stats(py: Python<'_>, x: &str, y: &str, q: u32, b: usize) -> PyResult<Py<PyAny>> {
    let xw = Word::parse(x, q).map_err(err)?;
    let yw = Word::parse(y, q).map_err(err)?;
    let dict = PyDict::new(py);
    dict.set_item("d_b", core_b_distance(&xw, &yw, b).map_err(err)?)?;
    if let Ok(stats) = partition_stats(&xw, &yw, b) {
        dict.set_item("d_h", stats.d_h)?;
        dict.set_item("L", stats.big_runs)?;
        dict.set_item("e", stats.small_total)?;
    }
    Ok(dict.unbind().into())
}

/// Sphere size by the b=3 closed form ("formula") or by pattern
/// enumeration ("enum", any b).
#[pyfunction]
#[pyo3(signature = (k, radius, q, b, method="enum"))]
fn sphere_size(k: usize, radius: usize, q: u32, b: usize, method: &str) -> PyResult<String> {
    let value = match method {
        "formula" => {
            if b != 3 {
                return Err(PyValueError::new_err("formula method requires b = 3"));
            }
            sphere_size_formula_b3(k, radius, q).map_err(err)?
        }
        "enum" => sphere_size_enum(k, radius, q, b, &Limits::default()).map_err(err)?,
        other => return Err(PyValueError::new_err(format!("unknown method '{other}'"))),
    };
    Ok(value.to_string())
}

fn matrix_from_rows(rows: Vec<Vec<u64>>) -> PyResult<DistanceMatrix> {
    let labels = (0..rows.len()).map(|i| format!("v{i}")).collect();
    DistanceMatrix::new(labels, rows).map_err(err)
}

/// (counting upper bound, averaging lower bound as a float) for the
/// minimum code length meeting a pairwise distance-requirement matrix.
#[pyfunction]
fn length_bounds(rows: Vec<Vec<u64>>, q: u32, b: usize) -> PyResult<(usize, Option<f64>)> {
    let matrix = matrix_from_rows(rows)?;
    let limits = Limits::default();
    let upper = gv_upper(&matrix, q, b, &default_orderings(&matrix), &limits).map_err(err)?;
    let lower = if matrix.order() >= 2 {
        use fcc_bsymbol::irregular::BoundValue;
        Some(BoundValue::Rational(plotkin_lower(&matrix, q, b).map_err(err)?).approx())
    } else {
        None
    };
    Ok((upper, lower))
}

/// Exact minimum length by exhaustive search, or None if r_max is hit.
#[pyfunction]
fn min_length(rows: Vec<Vec<u64>>, q: u32, b: usize, r_max: usize) -> PyResult<Option<usize>> {
    let matrix = matrix_from_rows(rows)?;
    exact_min_length(&matrix, q, b, r_max, &Limits::default()).map_err(err)
}

/// Greedy code meeting the matrix at length r: list of word strings.
#[pyfunction]
fn greedy_code(rows: Vec<Vec<u64>>, q: u32, b: usize, r: usize) -> PyResult<Vec<String>> {
    let matrix = matrix_from_rows(rows)?;
    let limits = Limits::default();
    for ordering in default_orderings(&matrix) {
        if let Ok(code) = greedy_construct(&matrix, q, b, r, &ordering, &limits) {
            return Ok(code.words().iter().map(|w| w.to_string()).collect());
        }
    }
    Err(PyValueError::new_err("no greedy code found at this length"))
}

/// Smallest redundancy with a valid assignment, with a witness encoder.
#[pyfunction]
fn optimal_encoder(f: &PyFunction, t: usize, b: usize, r_max: usize) -> PyResult<Option<PyEncoder>> {
    let cert = optimal_redundancy(&f.inner, t, b, r_max, &Limits::default()).map_err(err)?;
    Ok(cert.and_then(|c| c.witness).map(|inner| PyEncoder { inner }))
}

/// Exhaustive assignment search at a fixed redundancy length.
#[pyfunction]
fn assignment_at(f: &PyFunction, r: usize, t: usize, b: usize) -> PyResult<PyEncoder> {
    Ok(PyEncoder { inner: find_assignment(&f.inner, r, t, b, &Limits::default()).map_err(err)? })
}

/// Named constructions: "repetition" (two-valued-ball functions),
/// "weight" (weight classes), "wdist" (step function, needs t_cap).
#[pyfunction]
#[pyo3(signature = (f, t, b, construction, a=1, t_cap=None))]
fn construct(
    f: &PyFunction,
    t: usize,
    b: usize,
    construction: &str,
    a: u32,
    t_cap: Option<u64>,
) -> PyResult<PyEncoder> {
    let limits = Limits::default();
    let inner = match construction {
        "repetition" => encoder_locally_binary(&f.inner, t, b, a, &limits).map_err(err)?,
        "weight" => encoder_weight(f.inner.k(), t, b, f.inner.q(), None, &limits).map_err(err)?,
        "wdist" => {
            let t_param = t_cap.ok_or_else(|| PyValueError::new_err("wdist needs t_cap"))?;
            encoder_weight_distribution(f.inner.k(), t, b, f.inner.q(), t_param, a, &limits)
                .map_err(err)?
        }
        other => return Err(PyValueError::new_err(format!("unknown construction '{other}'"))),
    };
    Ok(PyEncoder { inner })
}

/// Aggregated redundancy bounds as a dict.
#[pyfunction]
#[pyo3(signature = (f, t, b, exact_r_max=None))]
fn bounds_report(
    py: Python<'_>,
    f: &PyFunction,
    t: usize,
    b: usize,
    exact_r_max: Option<usize>,
) -> PyResult<Py<PyAny>> {
    let report =
        redundancy_bounds_report(&f.inner, t, b, exact_r_max, &Limits::default()).map_err(err)?;
    json_to_py(py, &report.to_json())
}

/// Seeded Monte Carlo channel run: dict {trials, failures, seed, t}.
#[pyfunction]
fn simulate(
    py: Python<'_>,
    enc: &PyEncoder,
    f: &PyFunction,
    t: usize,
    trials: u64,
    seed: u64,
) -> PyResult<Py<PyAny>> {
    let report = monte_carlo(&enc.inner, &f.inner, t, trials, seed, &Limits::default()).map_err(err)?;
    json_to_py(py, &report.to_json())
}

/// Redundancy comparison rows against classical codes at b = 3.
#[pyfunction]
fn comparison_table(py: Python<'_>, k: usize, t: usize, q: u32) -> PyResult<Py<PyAny>> {
    let table = fcc_bsymbol::cli::comparison_table(k, t, q).map_err(err)?;
    json_to_py(py, &table)
}

#[pymodule]
fn fccb(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFunction>()?;
    m.add_class::<PyEncoder>()?;
    m.add_function(wrap_pyfunction!(b_distance, m)?)?;
    m.add_function(wrap_pyfunction!(b_weight, m)?)?;
    m.add_function(wrap_pyfunction!(distance_stats, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_size, m)?)?;
    m.add_function(wrap_pyfunction!(length_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(min_length, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_code, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_encoder, m)?)?;
    m.add_function(wrap_pyfunction!(assignment_at, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(bounds_report, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(comparison_table, m)?)?;
    Ok(())
}
