//! Python bindings: the group family, algebra constructors, and the four
//! verification engines, with reports handed back as JSON strings.
//!
//! Usage from Python:
//!
//!     import celab_py as celab
//!     a = celab.Algebra.from_spec("ga:2:1")
//!     report = json.loads(a.ce_check())
//!     assert report["verdict"] == "essential"

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use celab_core::algdeg::{self, DegreeMode, DegreeOutcome, SweepStrategy};
use celab_core::algebra::{self, Algebra as CoreAlgebra};
use celab_core::central::{ce_check, ce_product, CeStrategy};
use celab_core::error::Error;
use celab_core::field::PrimeField;
use celab_core::fixtures::parse_algebra_spec;
use celab_core::group::{self, FiniteGroup, GroupParams};
use celab_core::pi::{self, PiStrategy};
use celab_core::rng::SplitMix64;

fn to_py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_string<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn degree_mode(mode: &str) -> PyResult<DegreeMode> {
    match mode {
        "regular" => Ok(DegreeMode::Regular),
        "invertible" => Ok(DegreeMode::Invertible),
        _ => Err(PyValueError::new_err(format!(
            "mode '{mode}' (expected 'regular' or 'invertible')"
        ))),
    }
}

/// A finite group: the family G(n), the quaternion fixture, or a loaded
/// table.
#[pyclass(frozen)]
struct Group {
    inner: Arc<FiniteGroup>,
}

#[pymethods]
impl Group {
    /// G(n) of order p^(3n): generators a, b, c of order p^n, c central,
    /// a b a^-1 = b c.
    #[staticmethod]
    fn heisenberg(p: u32, n: u32) -> PyResult<Self> {
        let params = GroupParams::new(p, n).map_err(to_py_err)?;
        let g = group::make_heisenberg(params).map_err(to_py_err)?;
        Ok(Self { inner: Arc::new(g) })
    }

    /// The quaternion group of order 8.
    #[staticmethod]
    fn quaternion8() -> Self {
        Self {
            inner: Arc::new(group::make_quaternion8()),
        }
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    fn center_order(&self) -> PyResult<usize> {
        Ok(group::center(&self.inner).map_err(to_py_err)?.order())
    }

    fn derived_order(&self) -> PyResult<usize> {
        Ok(group::derived_subgroup(&self.inner).map_err(to_py_err)?.order())
    }

    fn nilpotency_class(&self) -> PyResult<u32> {
        group::nilpotency_class(&self.inner).map_err(to_py_err)
    }

    fn conjugacy_class_count(&self) -> PyResult<usize> {
        Ok(group::conjugacy_classes(&self.inner).map_err(to_py_err)?.len())
    }

    fn subgroup_count(&self) -> PyResult<usize> {
        Ok(group::enumerate_subgroups(&self.inner).map_err(to_py_err)?.len())
    }

    /// Checks [g, h] = c^(x y' - y x') over all pairs (or seeded samples at
    /// large orders).
    #[pyo3(signature = (seed = 0))]
    fn verify_commutator_formula(&self, seed: u64) -> PyResult<bool> {
        Ok(group::verify_commutator_formula(&self.inner, seed)
            .map_err(to_py_err)?
            .holds)
    }

    /// min over subgroups H of [G : H] |H'| with the witness order.
    fn min_index_bound(&self) -> PyResult<(u64, usize)> {
        let (value, witness) = group::min_index_commutator_product(&self.inner).map_err(to_py_err)?;
        Ok((value, witness.order()))
    }

    fn __repr__(&self) -> String {
        format!("Group({}, order={})", self.inner.name(), self.inner.order())
    }
}

/// A finite-dimensional associative unital algebra over F_p.
#[pyclass(frozen)]
struct Algebra {
    inner: Arc<CoreAlgebra>,
}

#[pymethods]
impl Algebra {
    /// Resolve an algebra spec: ga:p:n | q8:p | mat:p:k | file:path |
    /// prod:spec,spec.
    #[staticmethod]
    fn from_spec(spec: &str) -> PyResult<Self> {
        Ok(Self {
            inner: parse_algebra_spec(spec).map_err(to_py_err)?,
        })
    }

    /// The group algebra F_p[G].
    #[staticmethod]
    fn group_algebra(p: u32, group: &Group) -> PyResult<Self> {
        let field = PrimeField::new(p).map_err(to_py_err)?;
        let a = algebra::group_algebra(field, group.inner.clone()).map_err(to_py_err)?;
        Ok(Self { inner: Arc::new(a) })
    }

    /// The matrix algebra M_k(F_p).
    #[staticmethod]
    fn matrix(p: u32, k: usize) -> PyResult<Self> {
        let field = PrimeField::new(p).map_err(to_py_err)?;
        let a = algebra::matrix_algebra(field, k).map_err(to_py_err)?;
        Ok(Self { inner: Arc::new(a) })
    }

    /// Componentwise direct product.
    #[staticmethod]
    fn product(factors: Vec<PyRef<Algebra>>) -> PyResult<Self> {
        let inner = algebra::product_algebra(factors.iter().map(|f| f.inner.clone()).collect())
            .map_err(to_py_err)?;
        Ok(Self {
            inner: Arc::new(inner),
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.field().p()
    }

    fn center_dim(&self) -> usize {
        self.inner.center().dim()
    }

    fn is_commutative(&self) -> bool {
        self.inner.is_commutative()
    }

    /// Decides the centrally essential property; returns the report as a
    /// JSON string.
    #[pyo3(signature = (mode = "exhaustive", samples = 10_000, seed = 0))]
    fn ce_check(&self, mode: &str, samples: u64, seed: u64) -> PyResult<String> {
        let strategy = match mode {
            "exhaustive" => CeStrategy::Exhaustive,
            "randomized" => CeStrategy::Randomized { samples, seed },
            _ => {
                return Err(PyValueError::new_err(format!(
                    "mode '{mode}' (expected 'exhaustive' or 'randomized')"
                )))
            }
        };
        let report = ce_check(&self.inner, strategy).map_err(to_py_err)?;
        json_string(&report)
    }

    /// ce verdict of a product from per-factor runs, as a JSON string.
    #[pyo3(signature = (samples = 2000, seed = 0))]
    fn ce_product_check(&self, samples: u64, seed: u64) -> PyResult<String> {
        let factors = self
            .inner
            .factors()
            .ok_or_else(|| PyValueError::new_err("not a product algebra"))?;
        let mut reports = Vec::new();
        for factor in factors {
            let strategy = if factor.element_count().is_some() {
                CeStrategy::Exhaustive
            } else {
                CeStrategy::Randomized { samples, seed }
            };
            reports.push(ce_check(factor, strategy).map_err(to_py_err)?);
        }
        let combined = ce_product(&self.inner, &reports).map_err(to_py_err)?;
        json_string(&combined)
    }

    /// Scans St_1..St_d_max for the least degree with no witness; JSON
    /// report.
    #[pyo3(signature = (d_max = 4, mode = "basis", samples = 2000, seed = 0))]
    fn min_standard_degree(&self, d_max: usize, mode: &str, samples: u64, seed: u64) -> PyResult<String> {
        let strategy = match mode {
            "basis" => PiStrategy::BasisExhaustive,
            "randomized" => PiStrategy::Randomized { samples, seed },
            _ => {
                return Err(PyValueError::new_err(format!(
                    "mode '{mode}' (expected 'basis' or 'randomized')"
                )))
            }
        };
        let report = pi::min_standard_degree(&self.inner, d_max, strategy).map_err(to_py_err)?;
        json_string(&report)
    }

    /// Algebraic degree of one element over the center; JSON relation
    /// report, or a JSON inconclusive marker.
    #[pyo3(signature = (coeffs, mode = "regular"))]
    fn element_degree(&self, coeffs: Vec<u32>, mode: &str) -> PyResult<String> {
        let r = self.inner.elem(coeffs).map_err(to_py_err)?;
        match algdeg::algebraic_degree(&self.inner, &r, degree_mode(mode)?).map_err(to_py_err)? {
            DegreeOutcome::Found(rel) => {
                let report = rel.to_report(&self.inner, &r).map_err(to_py_err)?;
                json_string(&report)
            }
            DegreeOutcome::Inconclusive { degree_reached, reason } => json_string(&serde_json::json!({
                "inconclusive": true,
                "degree_reached": degree_reached,
                "reason": reason,
            })),
        }
    }

    /// Max algebraic degree over swept elements; JSON report.
    #[pyo3(signature = (strategy = "exhaustive", mode = "regular", samples = 1000, seed = 0))]
    fn m1_estimate(&self, strategy: &str, mode: &str, samples: u64, seed: u64) -> PyResult<String> {
        let strategy = match strategy {
            "exhaustive" => SweepStrategy::Exhaustive,
            "randomized" => SweepStrategy::Randomized { samples, seed },
            _ => {
                return Err(PyValueError::new_err(format!(
                    "strategy '{strategy}' (expected 'exhaustive' or 'randomized')"
                )))
            }
        };
        let report =
            algdeg::m1_estimate(&self.inner, degree_mode(mode)?, strategy).map_err(to_py_err)?;
        json_string(&report)
    }

    /// Assembles a seeded random componentwise probe of a product algebra
    /// and reports its degree data; JSON.
    #[pyo3(signature = (seed = 42, mode = "regular"))]
    fn escape_element(&self, seed: u64, mode: &str) -> PyResult<String> {
        let factors = self
            .inner
            .factors()
            .ok_or_else(|| PyValueError::new_err("not a product algebra"))?;
        let mut rng = SplitMix64::new(seed);
        let components: Vec<_> = factors.iter().map(|f| f.random_nonzero_elem(&mut rng)).collect();
        let report = algdeg::escape_element(&self.inner, &components, degree_mode(mode)?)
            .map_err(to_py_err)?;
        let relation = report
            .relation
            .to_report(&self.inner, &report.element.assembled)
            .map_err(to_py_err)?;
        json_string(&serde_json::json!({
            "component_degrees": report.component_degrees,
            "degree": report.degree,
            "relation": relation,
        }))
    }

    fn __repr__(&self) -> String {
        format!("Algebra({}, dim={})", self.inner.name(), self.inner.dim())
    }
}

/// d(m) = m(m+1)/2 + m.
#[pyfunction]
fn d_of_m(m: u64) -> u64 {
    algdeg::d_of_m(m)
}

#[pymodule]
fn celab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Group>()?;
    m.add_class::<Algebra>()?;
    m.add_function(wrap_pyfunction!(d_of_m, m)?)?;
    Ok(())
}
