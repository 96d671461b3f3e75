//! Python bindings: states, sampled phase-space fields, localisation
//! measures and the inequality battery.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use phasespace_core::battery::default_battery;
use phasespace_core::engine::{auto_grid, field_via_char, husimi_q, order_smooth, wigner_w};
use phasespace_core::inequality::{default_relations, run_battery, SuiteConfig};
use phasespace_core::measures::{
    build_measure_report, renyi_wehrl, suessmann, wehrl_entropy, MeasureConfig, RenyiOrder,
};
use phasespace_core::{DensityMatrix, Ext, FockCutoff, PhaseGrid, PhaseSpaceField, StateKind};

fn err<T>(r: phasespace_core::Result<T>) -> PyResult<T> {
    r.map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Python floats map to finite exponents; `float("inf")` to the extended one.
fn ext_of(v: f64) -> Ext {
    if v.is_infinite() {
        Ext::Inf
    } else {
        Ext::Finite(v)
    }
}

/// A real-valued phase-space function sampled on a square grid.
#[pyclass(name = "Field")]
struct PyField {
    inner: PhaseSpaceField,
}

#[pymethods]
impl PyField {
    /// Flat row-major samples (`idx = i_re * n + i_im`).
    #[getter]
    fn values(&self) -> Vec<f64> {
        self.inner.values.clone()
    }

    #[getter]
    fn points_per_axis(&self) -> usize {
        self.inner.grid.points_per_axis
    }

    #[getter]
    fn half_extent(&self) -> f64 {
        self.inner.grid.half_extent
    }

    #[getter]
    fn order(&self) -> f64 {
        self.inner.order
    }

    /// Cell-centre coordinate along either axis.
    fn coord(&self, i: usize) -> f64 {
        self.inner.grid.coord(i)
    }

    fn value(&self, i_re: usize, i_im: usize) -> f64 {
        self.inner.value(i_re, i_im)
    }

    /// Midpoint-rule integral over the plane.
    fn integral(&self) -> f64 {
        self.inner.integral()
    }

    /// `(norm, error_estimate)`; `p = float("inf")` gives the refined sup.
    fn pnorm(&self, p: f64) -> PyResult<(f64, f64)> {
        err(self.inner.pnorm(ext_of(p)))
    }

    /// Rényi–Wehrl entropy of order q (only meaningful for Husimi fields).
    fn renyi_wehrl(&self, q: f64) -> PyResult<f64> {
        let order = err(RenyiOrder::new(ext_of(q)))?;
        err(renyi_wehrl(&self.inner, order))
    }

    fn wehrl_entropy(&self) -> PyResult<f64> {
        err(wehrl_entropy(&self.inner))
    }

    /// `(area_ratio, entropy)` of the Süßmann measure (Wigner fields only).
    fn suessmann(&self) -> PyResult<(f64, f64)> {
        err(suessmann(&self.inner))
    }

    /// Gaussian smoothing down to a lower ordering s.
    fn smooth(&self, s: f64) -> PyResult<PyField> {
        Ok(PyField { inner: err(order_smooth(&self.inner, s))? })
    }

    fn __repr__(&self) -> String {
        format!(
            "Field(state={}, s={}, N={}, R={:.3})",
            self.inner.state_tag,
            self.inner.order,
            self.inner.grid.points_per_axis,
            self.inner.grid.half_extent
        )
    }
}

/// A density matrix in the truncated Fock basis, built from a descriptor
/// such as "vacuum", "fock:2", "coherent:0.7+0.2i" or "squeezed:0.5".
#[pyclass(name = "State")]
struct PyState {
    rho: DensityMatrix,
}

impl PyState {
    fn grid(&self, points: usize, half_extent: Option<f64>) -> PyResult<PhaseGrid> {
        match half_extent {
            Some(r) => err(PhaseGrid::new(r, points)),
            None => err(auto_grid(&self.rho, points)),
        }
    }
}

#[pymethods]
impl PyState {
    #[new]
    #[pyo3(signature = (descriptor, cutoff = 63))]
    fn new(descriptor: &str, cutoff: usize) -> PyResult<Self> {
        let kind = err(StateKind::parse(descriptor))?;
        Ok(PyState { rho: err(DensityMatrix::build(&kind, FockCutoff::new(cutoff)))? })
    }

    #[getter]
    fn tag(&self) -> String {
        self.rho.tag().to_string()
    }

    fn purity(&self) -> f64 {
        self.rho.purity()
    }

    fn mean_occupation(&self) -> f64 {
        self.rho.mean_occupation()
    }

    /// Wigner function (s = 0) via the displaced-parity path.
    #[pyo3(signature = (points = 256, half_extent = None))]
    fn wigner(&self, points: usize, half_extent: Option<f64>) -> PyResult<PyField> {
        let grid = self.grid(points, half_extent)?;
        Ok(PyField { inner: err(wigner_w(&self.rho, &grid))? })
    }

    /// Husimi function (s = -1), non-negative by construction.
    #[pyo3(signature = (points = 256, half_extent = None))]
    fn husimi(&self, points: usize, half_extent: Option<f64>) -> PyResult<PyField> {
        let grid = self.grid(points, half_extent)?;
        Ok(PyField { inner: err(husimi_q(&self.rho, &grid))? })
    }

    /// Any ordering s in [-1, 0] via the characteristic-function path,
    /// on an automatically sized dual grid.
    fn field_via_char(&self, s: f64) -> PyResult<PyField> {
        Ok(PyField { inner: err(field_via_char(&self.rho, s))? })
    }

    /// Full localisation-measure report as a JSON string.
    #[pyo3(signature = (points = 256, half_extent = None))]
    fn measure_report_json(&self, points: usize, half_extent: Option<f64>) -> PyResult<String> {
        let config = MeasureConfig {
            grid_points: points,
            grid_half_extent: half_extent,
            ..MeasureConfig::default()
        };
        let report = err(build_measure_report(&self.rho, &config))?;
        serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!("State({})", self.rho.tag())
    }
}

/// Run every inequality relation on the given descriptors (or the default
/// battery when none are given); returns the verdict list as a JSON string.
#[pyfunction]
#[pyo3(signature = (descriptors = None, cutoff = 63, points = 256))]
fn verify_battery_json(
    descriptors: Option<Vec<String>>,
    cutoff: usize,
    points: usize,
) -> PyResult<String> {
    let states = match descriptors {
        None => default_battery(),
        Some(list) => list
            .iter()
            .map(|d| err(StateKind::parse(d)))
            .collect::<PyResult<Vec<_>>>()?,
    };
    let config = SuiteConfig { grid_points: points, ..SuiteConfig::default() };
    let relations = default_relations(&config);
    let verdicts = run_battery(&states, &relations, FockCutoff::new(cutoff), &config);
    serde_json::to_string(&verdicts).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Descriptors of the default verification battery.
#[pyfunction]
fn battery_descriptors() -> Vec<String> {
    default_battery().iter().map(|k| k.tag()).collect()
}

#[pymodule]
fn phasespace_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyState>()?;
    m.add_class::<PyField>()?;
    m.add_function(wrap_pyfunction!(verify_battery_json, m)?)?;
    m.add_function(wrap_pyfunction!(battery_descriptors, m)?)?;
    Ok(())
}
