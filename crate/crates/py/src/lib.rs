// Copyright 2026 The triwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Python bindings for the witness, state and certification APIs.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use triwit_core as core;

fn to_py_err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn sign_from_int(sign: i32) -> PyResult<core::Sign> {
    match sign {
        1 => Ok(core::Sign::Plus),
        -1 => Ok(core::Sign::Minus),
        other => Err(PyValueError::new_err(format!("sign must be +1 or -1 (got {other})"))),
    }
}

fn perm_from_str(code: &str) -> PyResult<core::PauliPermutation> {
    code.parse().map_err(to_py_err)
}

#[pyclass(name = "DensityMatrix", module = "triwit", frozen)]
struct PyDensityMatrix {
    inner: core::DensityMatrix,
}

#[pymethods]
impl PyDensityMatrix {
    #[getter]
    fn family(&self) -> &'static str {
        self.inner.family().name()
    }

    /// Family parameters, e.g. `{"a": 2.0}`.
    #[getter]
    fn params<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        match *self.inner.family() {
            core::Family::Kay { a } => d.set_item("a", a)?,
            core::Family::Kye { b, c } => {
                d.set_item("b", b)?;
                d.set_item("c", c)?;
            }
            _ => {}
        }
        Ok(d)
    }

    fn matrix(&self) -> Vec<Vec<Complex64>> {
        self.inner.matrix().rows()
    }

    fn eigenvalues(&self) -> PyResult<Vec<f64>> {
        self.inner.eigenvalues().map_err(to_py_err)
    }

    fn pt_min_eigenvalues(&self) -> PyResult<[f64; 3]> {
        self.inner.pt_min_eigenvalues().map_err(to_py_err)
    }

    #[pyo3(signature = (tol = 1e-10))]
    fn is_ppt(&self, tol: f64) -> PyResult<[bool; 3]> {
        core::is_ppt(&self.inner, tol).map_err(to_py_err)
    }

    fn partial_transpose(&self, qubit: usize) -> PyResult<Vec<Vec<Complex64>>> {
        Ok(self.inner.partial_transpose(qubit).map_err(to_py_err)?.rows())
    }

    fn __repr__(&self) -> String {
        format!("DensityMatrix(family={:?})", self.inner.family())
    }
}

#[pyclass(name = "Witness", module = "triwit", frozen)]
struct PyWitness {
    inner: core::Witness,
}

fn certification_dict<'py>(py: Python<'py>, c: &core::Certification) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("witness", &c.witness)?;
    d.set_item("max_angle_objective", c.max_angle_objective)?;
    d.set_item("min_expectation", c.min_expectation)?;
    d.set_item("pass", c.pass)?;
    d.set_item("best_angles", c.best_angles)?;
    d.set_item("evaluations", c.evaluations)?;
    d.set_item("converged", c.converged)?;
    Ok(d)
}

#[pymethods]
impl PyWitness {
    #[getter]
    fn label(&self) -> &str {
        self.inner.label()
    }

    /// Permutation code such as `"xzy"`; `None` for custom operators.
    #[getter]
    fn perm(&self) -> Option<String> {
        match self.inner.origin() {
            core::WitnessOrigin::Family { perm, .. } => Some(perm.code()),
            core::WitnessOrigin::Custom => None,
        }
    }

    #[getter]
    fn sign(&self) -> Option<i32> {
        match self.inner.origin() {
            core::WitnessOrigin::Family { sign, .. } => Some(sign.value() as i32),
            core::WitnessOrigin::Custom => None,
        }
    }

    fn matrix(&self) -> Vec<Vec<Complex64>> {
        self.inner.matrix().rows()
    }

    fn expectation(&self, rho: &PyDensityMatrix) -> PyResult<f64> {
        core::expectation(&self.inner, &rho.inner).map_err(to_py_err)
    }

    /// `<ψ|W|ψ>` for angles `[θ1, θ2, θ3, φ1, φ2, φ3]`.
    fn product_expectation(&self, angles: [f64; 6]) -> f64 {
        self.inner.product_expectation(&angles)
    }

    #[pyo3(signature = (grid = 9, refine = 200, tol = 1e-8, seed = 0))]
    fn certify<'py>(&self, py: Python<'py>, grid: usize, refine: usize, tol: f64, seed: u64) -> PyResult<Bound<'py, PyDict>> {
        let config = core::OptimizerConfig { grid_points_per_axis: grid, refine_iterations: refine, tolerance: tol, seed };
        let report = py.detach(|| core::certify_witness(&self.inner, &config)).map_err(to_py_err)?;
        certification_dict(py, &report)
    }

    fn __repr__(&self) -> String {
        format!("Witness({})", self.inner.label())
    }
}

#[pyfunction]
fn kay_state(a: f64) -> PyResult<PyDensityMatrix> {
    Ok(PyDensityMatrix { inner: core::kay_state(a).map_err(to_py_err)? })
}

#[pyfunction]
fn kye_state(b: f64, c: f64) -> PyResult<PyDensityMatrix> {
    Ok(PyDensityMatrix { inner: core::kye_state(b, c).map_err(to_py_err)? })
}

/// Pure product state from `[θ1, θ2, θ3, φ1, φ2, φ3]`.
#[pyfunction]
fn product_state(angles: [f64; 6]) -> PyResult<PyDensityMatrix> {
    let p = core::ProductState::from_angles(&angles).map_err(to_py_err)?;
    Ok(PyDensityMatrix { inner: core::product_density(&p) })
}

#[pyfunction]
fn random_product_angles(seed: u64) -> [f64; 6] {
    core::random_product_state(seed).angles()
}

#[pyfunction]
fn witness(label: &str) -> PyResult<PyWitness> {
    Ok(PyWitness { inner: core::witness_by_label(label).map_err(to_py_err)? })
}

#[pyfunction]
#[pyo3(signature = (perm = "xyz", sign = 1))]
fn build_witness(perm: &str, sign: i32) -> PyResult<PyWitness> {
    Ok(PyWitness { inner: core::build_witness(perm_from_str(perm)?, sign_from_int(sign)?) })
}

#[pyfunction]
fn witness_family() -> Vec<PyWitness> {
    core::witness_family().into_iter().map(|inner| PyWitness { inner }).collect()
}

#[pyfunction]
fn closed_form_kay(a: f64) -> f64 {
    core::closed_form_kay(a)
}

#[pyfunction]
fn closed_form_kye(b: f64, c: f64) -> f64 {
    core::closed_form_kye(b, c)
}

#[pyfunction]
#[pyo3(signature = (angles, perm = "xyz", sign = 1))]
fn angle_objective(angles: [f64; 6], perm: &str, sign: i32) -> PyResult<f64> {
    Ok(core::angle_objective_at(&angles, perm_from_str(perm)?, sign_from_int(sign)?))
}

/// Three-letter label string such as `"zzi"`.
#[pyfunction]
fn pauli_string(labels: &str) -> PyResult<Vec<Vec<Complex64>>> {
    let parse = |ch: char| match ch.to_ascii_lowercase() {
        'i' => Ok(core::PauliLabel::I),
        'x' => Ok(core::PauliLabel::X),
        'y' => Ok(core::PauliLabel::Y),
        'z' => Ok(core::PauliLabel::Z),
        _ => Err(PyValueError::new_err(format!("bad Pauli label '{ch}'"))),
    };
    let ls: Vec<core::PauliLabel> = labels.chars().map(parse).collect::<PyResult<_>>()?;
    let [a, b, c] = ls[..] else {
        return Err(PyValueError::new_err("expected three labels"));
    };
    Ok(core::pauli_string(a, b, c).rows())
}

fn record_dict<'py>(py: Python<'py>, r: &core::DetectionRecord) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("family", &r.family)?;
    for (k, v) in &r.params {
        d.set_item(k, *v)?;
    }
    d.set_item("witness", &r.witness)?;
    d.set_item("expectation", r.expectation)?;
    d.set_item("detected", r.detected)?;
    d.set_item("ppt", r.ppt)?;
    d.set_item("closed_form", r.closed_form)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (a_min, a_max, steps, witness = "W1"))]
fn scan_kay<'py>(py: Python<'py>, a_min: f64, a_max: f64, steps: usize, witness: &str) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let w = core::witness_by_label(witness).map_err(to_py_err)?;
    let records = py.detach(|| core::scan_kay(a_min, a_max, steps, &w)).map_err(to_py_err)?;
    records.iter().map(|r| record_dict(py, r)).collect()
}

/// `c` is either a number or `"inverse"` for `c = 1/b`.
#[pyfunction]
#[pyo3(signature = (b_list, c = None, witness = "W2"))]
fn scan_kye<'py>(
    py: Python<'py>,
    b_list: Vec<f64>,
    c: Option<&Bound<'py, PyAny>>,
    witness: &str,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let rule = match c {
        None => core::CRule::Inverse,
        Some(v) => match v.extract::<f64>() {
            Ok(x) => core::CRule::Fixed(x),
            Err(_) if v.extract::<String>().is_ok_and(|s| s == "inverse") => core::CRule::Inverse,
            Err(_) => return Err(PyValueError::new_err("c must be a number or 'inverse'")),
        },
    };
    let w = core::witness_by_label(witness).map_err(to_py_err)?;
    let records = py.detach(|| core::scan_kye(&b_list, rule, &w)).map_err(to_py_err)?;
    records.iter().map(|r| record_dict(py, r)).collect()
}

#[pymodule]
fn triwit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDensityMatrix>()?;
    m.add_class::<PyWitness>()?;
    m.add_function(wrap_pyfunction!(kay_state, m)?)?;
    m.add_function(wrap_pyfunction!(kye_state, m)?)?;
    m.add_function(wrap_pyfunction!(product_state, m)?)?;
    m.add_function(wrap_pyfunction!(random_product_angles, m)?)?;
    m.add_function(wrap_pyfunction!(witness, m)?)?;
    m.add_function(wrap_pyfunction!(build_witness, m)?)?;
    m.add_function(wrap_pyfunction!(witness_family, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_kay, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_kye, m)?)?;
    m.add_function(wrap_pyfunction!(angle_objective, m)?)?;
    m.add_function(wrap_pyfunction!(pauli_string, m)?)?;
    m.add_function(wrap_pyfunction!(scan_kay, m)?)?;
    m.add_function(wrap_pyfunction!(scan_kye, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_and_perm_parsing() {
        assert_eq!(sign_from_int(1).unwrap(), core::Sign::Plus);
        assert_eq!(sign_from_int(-1).unwrap(), core::Sign::Minus);
        assert!(sign_from_int(0).is_err());
        assert!(perm_from_str("zyx").is_ok());
        assert!(perm_from_str("zzx").is_err());
    }

    #[test]
    fn module_functions_through_interpreter() {
        Python::initialize();
        Python::attach(|py| {
            let m = PyModule::new(py, "triwit").unwrap();
            triwit(&m).unwrap();
            let value: f64 = m.getattr("closed_form_kay").unwrap().call1((2.0,)).unwrap().extract().unwrap();
            assert!((value - core::closed_form_kay(2.0)).abs() < 1e-15);
            let family = m.getattr("witness_family").unwrap().call0().unwrap();
            assert_eq!(family.len().unwrap(), 12);
            assert!(m.getattr("kay_state").unwrap().call1((1.0,)).is_err());
        });
    }
}
