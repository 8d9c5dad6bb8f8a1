//! Python bindings. Rates come back as floats in bits per channel use;
//! reports come back as plain dicts.

use icobr_core::detschemes::{build_scheme, run_block, symbolic_trace, verify_built, LinearScheme};
use icobr_core::gausscap::{self, GammaKind, GaussParams};
use icobr_core::{DetParams, LevelVector};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_err(e: icobr_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn gauss(hd2: f64, hc2: f64, hr2: f64, alpha: f64) -> PyResult<GaussParams> {
    GaussParams::with_alpha(hd2, hc2, hr2, alpha).map_err(value_err)
}

fn bits(v: Vec<u8>) -> PyResult<LevelVector> {
    LevelVector::from_bits(&v).map_err(value_err)
}

/// A certified linear scheme for the deterministic model.
#[pyclass(name = "DetScheme", module = "icobr", frozen)]
struct PyDetScheme {
    inner: LinearScheme,
}

#[pymethods]
impl PyDetScheme {
    #[new]
    fn new(n_d: usize, n_c: usize, n_r: usize) -> Self {
        PyDetScheme {
            inner: build_scheme(&DetParams::new(n_d, n_c, n_r)),
        }
    }

    #[getter]
    fn regime(&self) -> &'static str {
        self.inner.regime.name()
    }

    /// Message bits per two-use block for each source.
    #[getter]
    fn block_bits(&self) -> (usize, usize) {
        (self.inner.k1, self.inner.k2)
    }

    #[getter]
    fn rates(&self) -> (f64, f64) {
        let r = self.inner.rates();
        (r.r1.to_f64(), r.r2.to_f64())
    }

    /// Runs one block; returns the two decoded messages.
    fn run(&self, m1: Vec<u8>, m2: Vec<u8>) -> PyResult<(Vec<u32>, Vec<u32>)> {
        let s = &self.inner;
        let (d1, d2, _) = run_block(s, &s.params, &bits(m1)?, &bits(m2)?).map_err(value_err)?;
        // Vec<u8> would surface as `bytes`; hand back lists of ints.
        let ints = |v: LevelVector| v.iter().map(u32::from).collect();
        Ok((ints(d1), ints(d2)))
    }

    fn verify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = verify_built(&self.inner);
        let d = PyDict::new(py);
        d.set_item("regime", r.regime.name())?;
        d.set_item("r1", r.rates.r1.to_f64())?;
        d.set_item("r2", r.rates.r2.to_f64())?;
        d.set_item("sum_capacity", r.sum_capacity.to_f64())?;
        d.set_item("decode_errors", r.decode_errors)?;
        d.set_item("passed", r.passed())?;
        Ok(d)
    }

    fn trace(&self) -> String {
        symbolic_trace(&self.inner).render_text()
    }

    fn __repr__(&self) -> String {
        let p = self.inner.params;
        format!(
            "DetScheme(n_d={}, n_c={}, n_r={}, regime={}, k=({}, {}))",
            p.n_d, p.n_c, p.n_r, self.inner.regime, self.inner.k1, self.inner.k2
        )
    }
}

#[pyfunction]
fn det_sum_capacity(n_d: usize, n_c: usize, n_r: usize) -> f64 {
    icobr_core::det_sum_capacity(&DetParams::new(n_d, n_c, n_r)).to_f64()
}

#[pyfunction]
fn det_outer_region(py: Python<'_>, n_d: usize, n_c: usize, n_r: usize) -> PyResult<Bound<'_, PyDict>> {
    let o = icobr_core::det_outer_region(&DetParams::new(n_d, n_c, n_r));
    let d = PyDict::new(py);
    d.set_item("individual_bound", o.individual_bound.to_f64())?;
    d.set_item("sum_bound", o.sum_bound.to_f64())?;
    Ok(d)
}

#[pyfunction]
fn classify_det(n_d: usize, n_c: usize, n_r: usize) -> &'static str {
    icobr_core::classify_det(&DetParams::new(n_d, n_c, n_r)).name()
}

#[pyfunction]
fn verify_scheme(py: Python<'_>, n_d: usize, n_c: usize, n_r: usize) -> PyResult<Bound<'_, PyDict>> {
    PyDetScheme::new(n_d, n_c, n_r).verify(py)
}

#[pyfunction]
#[pyo3(signature = (hd2, hc2, hr2, alpha = 0.5))]
fn outer_bounds(py: Python<'_>, hd2: f64, hc2: f64, hr2: f64, alpha: f64) -> PyResult<Bound<'_, PyDict>> {
    let p = gauss(hd2, hc2, hr2, alpha)?;
    let b = gausscap::outer_bounds(&p);
    let d = PyDict::new(py);
    for (k, v) in [("c1", b.c1), ("c2", b.c2), ("c3", b.c3), ("c4", b.c4), ("applicable", b.applicable(&p))] {
        d.set_item(k, v)?;
    }
    Ok(d)
}

#[pyfunction]
fn classify_gauss(hd2: f64, hc2: f64, hr2: f64) -> PyResult<&'static str> {
    Ok(gausscap::classify_gauss(&gauss(hd2, hc2, hr2, 0.5)?).name())
}

#[pyfunction]
fn achievable_sum(py: Python<'_>, hd2: f64, hc2: f64, hr2: f64) -> PyResult<Bound<'_, PyDict>> {
    let rep = gausscap::achievable_sum(&gauss(hd2, hc2, hr2, 0.5)?).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("regime", rep.regime.name())?;
    d.set_item("sum_rate", rep.sum_rate)?;
    d.set_item("gamma", rep.gamma)?;
    d.set_item("theta", rep.theta)?;
    d.set_item("beta", rep.beta)?;
    let c = PyDict::new(py);
    for k in &rep.constraints {
        c.set_item(k.label, k.value)?;
    }
    d.set_item("constraints", c)?;
    d.set_item("reconciled", gausscap::constraint_consistency(&rep).holds())?;
    Ok(d)
}

/// `kind` is one of `very_strong`, `weak_rich`, `very_weak_rich`.
#[pyfunction]
fn solve_gamma(kind: &str, hd2: f64, hc2: f64, hr2: f64) -> PyResult<f64> {
    let kind = match kind {
        "very_strong" => GammaKind::VeryStrong,
        "weak_rich" => GammaKind::WeakRich,
        "very_weak_rich" => GammaKind::VeryWeakRich,
        _ => return Err(PyValueError::new_err(format!("unknown gamma kind {kind:?}"))),
    };
    gausscap::solve_gamma(kind, &gauss(hd2, hc2, hr2, 0.5)?).map_err(value_err)
}

#[pyfunction]
fn solve_theta(hd2: f64, hc2: f64, hr2: f64) -> PyResult<f64> {
    gausscap::solve_theta(&gauss(hd2, hc2, hr2, 0.5)?).map_err(value_err)
}

/// Audits the product grid of the three axes; returns the summary only.
#[pyfunction]
fn gap_audit(py: Python<'_>, hd2: Vec<f64>, hc2: Vec<f64>, hr2: Vec<f64>) -> PyResult<Bound<'_, PyDict>> {
    let grid = gausscap::product_grid(&hd2, &hc2, &hr2).map_err(value_err)?;
    let rep = py.detach(|| gausscap::gap_audit(&grid));
    let d = PyDict::new(py);
    d.set_item("points", rep.points.len())?;
    d.set_item("skipped", rep.skipped.len())?;
    d.set_item("worst_sum_gap", rep.worst_sum_gap)?;
    d.set_item("worst_symmetric_gap", rep.worst_symmetric_gap)?;
    d.set_item("passed", rep.passed)?;
    let per = PyDict::new(py);
    for (reg, g) in &rep.per_regime {
        let e = PyDict::new(py);
        e.set_item("points", g.points)?;
        e.set_item("worst_gap", g.worst_gap)?;
        e.set_item("least_gap", g.least_gap)?;
        e.set_item("limit", g.limit)?;
        e.set_item("argmax", g.argmax)?;
        e.set_item("passed", g.passed)?;
        per.set_item(reg.name(), e)?;
    }
    d.set_item("per_regime", per)?;
    Ok(d)
}

#[pyfunction]
fn duplexing_gaps(hr2: f64) -> [f64; 4] {
    gausscap::duplexing_gaps(hr2)
}

#[pyfunction]
fn interference_useful(py: Python<'_>, hd2: f64, hr2: f64) -> PyResult<Bound<'_, PyDict>> {
    let u = gausscap::interference_useful(hd2, hr2);
    let d = PyDict::new(py);
    d.set_item("no_interference_bound", u.no_interference_bound)?;
    d.set_item("es_achievable_floor", u.es_achievable_floor)?;
    d.set_item("useful", u.useful)?;
    d.set_item("closed_form_useful", u.closed_form_useful)?;
    Ok(d)
}

#[pymodule]
fn icobr(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDetScheme>()?;
    m.add_function(wrap_pyfunction!(det_sum_capacity, m)?)?;
    m.add_function(wrap_pyfunction!(det_outer_region, m)?)?;
    m.add_function(wrap_pyfunction!(classify_det, m)?)?;
    m.add_function(wrap_pyfunction!(verify_scheme, m)?)?;
    m.add_function(wrap_pyfunction!(outer_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(classify_gauss, m)?)?;
    m.add_function(wrap_pyfunction!(achievable_sum, m)?)?;
    m.add_function(wrap_pyfunction!(solve_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(solve_theta, m)?)?;
    m.add_function(wrap_pyfunction!(gap_audit, m)?)?;
    m.add_function(wrap_pyfunction!(duplexing_gaps, m)?)?;
    m.add_function(wrap_pyfunction!(interference_useful, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use pyo3::ffi::c_str;

    #[test]
    fn module_round_trip() {
        Python::initialize();
        Python::attach(|py| {
            let m = PyModule::new(py, "icobr").unwrap();
            icobr(&m).unwrap();
            let locals = PyDict::new(py);
            locals.set_item("icobr", &m).unwrap();
            py.run(
                c_str!(
                    r#"
s = icobr.DetScheme(1, 4, 2)
assert s.rates == (2.0, 2.0)
assert s.run([1, 0, 1, 1], [0, 0, 1, 0]) == ([1, 0, 1, 1], [0, 0, 1, 0])
assert icobr.verify_scheme(5, 3, 6)["passed"]
assert icobr.achievable_sum(4.0, 100.0, 4.0)["regime"] == "ExtremelyStrong"
try:
    icobr.solve_gamma("nope", 1.0, 1.0, 1.0)
    raise AssertionError
except ValueError:
    pass
"#
                ),
                None,
                Some(&locals),
            )
            .unwrap();
        });
    }
}
