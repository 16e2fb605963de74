//! Python bindings: fields, curves, Igusa points, classification, stratum models, gluing and
//! the census.

use genus2::algebra::{field, Field as FieldRef, FieldElement};
use genus2::census::{self, CensusOptions, EoFilter};
use genus2::curve::{CurveJson, Genus2Curve};
use genus2::eo::{hasse_witt, supersingular_count as ss_count, EoType};
use genus2::igusa::{igusa_invariants, wp_equal, IgusaPoint as Point, IgusaPointJson};
use genus2::strata::{self, CountTable};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: genus2::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A field element given as an integer or as text such as `"2*t + 5"`.
#[derive(FromPyObject)]
enum Elem {
    Int(i64),
    Text(String),
}

impl Elem {
    fn to_element(&self, f: &FieldRef) -> PyResult<FieldElement> {
        match self {
            Elem::Int(v) => Ok(f.from_i64(*v)),
            Elem::Text(s) => f.parse_element(s).map_err(err),
        }
    }
}

fn elements(f: &FieldRef, v: &[Elem]) -> PyResult<Vec<FieldElement>> {
    v.iter().map(|e| e.to_element(f)).collect()
}

/// The finite field `F_{p^k}`.
#[pyclass(frozen, skip_from_py_object, name = "Field")]
#[derive(Clone)]
struct PyField {
    inner: FieldRef,
}

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (p, k = 1))]
    fn new(p: u64, k: usize) -> PyResult<Self> {
        Ok(PyField { inner: field(p, k).map_err(err)? })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn order(&self) -> u128 {
        self.inner.order()
    }

    /// Coefficients of the defining polynomial, constant term first.
    #[getter]
    fn modulus(&self) -> Vec<u64> {
        self.inner.modulus().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("Field({}, {})", self.inner.p(), self.inner.degree())
    }
}

/// `y^2 + g(x) y = f(x)` of genus 2.
#[pyclass(frozen, skip_from_py_object, name = "Curve")]
#[derive(Clone)]
struct PyCurve {
    inner: Genus2Curve,
}

#[pymethods]
impl PyCurve {
    /// `f` and `g` are coefficient lists, constant term first.
    #[new]
    #[pyo3(signature = (field, f, g = None))]
    fn new(field: &PyField, f: Vec<Elem>, g: Option<Vec<Elem>>) -> PyResult<Self> {
        let fld = &field.inner;
        let rhs = genus2::algebra::Poly::new(fld, elements(fld, &f)?);
        let lhs = genus2::algebra::Poly::new(fld, elements(fld, &g.unwrap_or_default())?);
        Ok(PyCurve { inner: Genus2Curve::new(lhs, rhs).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let json: CurveJson = serde_json::from_str(text).map_err(json_err)?;
        Ok(PyCurve { inner: Genus2Curve::from_json(&json).map_err(err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.to_json()).map_err(json_err)
    }

    #[getter]
    fn field(&self) -> PyField {
        PyField { inner: self.inner.field().clone() }
    }

    fn igusa(&self) -> PyResult<PyIgusaPoint> {
        Ok(PyIgusaPoint { inner: igusa_invariants(&self.inner).map_err(err)? })
    }

    /// Rows of the Hasse-Witt matrix, as displayed field elements.
    fn hasse_witt(&self) -> Vec<Vec<String>> {
        let f = self.inner.field();
        hasse_witt(&self.inner).m.iter().map(|r| r.iter().map(|x| f.display(x)).collect()).collect()
    }

    /// `(p-rank, a-number)`.
    fn eo_type(&self) -> (u8, u8) {
        let t: EoType = genus2::eo::eo_type_of(&self.inner);
        (t.f_rank, t.a_rank)
    }

    /// `(label, reduced order)` of the automorphism group.
    fn automorphisms(&self) -> PyResult<(String, usize)> {
        let (n, label) = genus2::aut::aut_classify(&self.inner).map_err(err)?;
        Ok((label.to_string(), n))
    }

    /// Invariants, EO type, automorphism group and strata as a JSON object.
    fn classify(&self) -> PyResult<String> {
        let c = census::classify_curve(&self.inner).map_err(err)?;
        let v = serde_json::json!({
            "invariants": c.point.to_json(),
            "eo": c.eo,
            "aut": c.aut,
            "reduced_order": c.reduced_order,
            "strata": c.strata,
        });
        Ok(v.to_string())
    }

    fn __repr__(&self) -> String {
        self.inner.display()
    }
}

/// A point `[J2 : J4 : J6 : J8 : J10]` of weighted projective space.
#[pyclass(frozen, skip_from_py_object, name = "IgusaPoint")]
#[derive(Clone)]
struct PyIgusaPoint {
    inner: Point,
}

#[pymethods]
impl PyIgusaPoint {
    #[new]
    fn new(field: &PyField, coords: Vec<Elem>) -> PyResult<Self> {
        let c = elements(&field.inner, &coords)?;
        let c: [FieldElement; 5] = c.try_into().map_err(|_| PyValueError::new_err("expected five coordinates"))?;
        Ok(PyIgusaPoint { inner: Point::new(&field.inner, c).map_err(err)? })
    }

    #[staticmethod]
    fn parse(field: &PyField, text: &str) -> PyResult<Self> {
        Ok(PyIgusaPoint { inner: Point::parse(&field.inner, text).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let json: IgusaPointJson = serde_json::from_str(text).map_err(json_err)?;
        Ok(PyIgusaPoint { inner: Point::from_json(&json).map_err(err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.to_json()).map_err(json_err)
    }

    #[getter]
    fn coords(&self) -> Vec<String> {
        let f = self.inner.field();
        self.inner.coords().iter().map(|c| f.display(c)).collect()
    }

    #[getter]
    fn key(&self) -> String {
        self.inner.key().render(self.inner.field())
    }

    fn check_relation(&self) -> bool {
        self.inner.check_relation()
    }

    /// Strata decided by equations (`D4`, `D6`, `Z` and the isolated points).
    fn strata(&self) -> PyResult<Vec<String>> {
        let s = strata::stratum_membership(&self.inner).map_err(err)?;
        Ok(s.iter().map(|x| x.to_string()).collect())
    }

    /// Equality in weighted projective space over the algebraic closure.
    fn __eq__(&self, other: &PyIgusaPoint) -> PyResult<bool> {
        wp_equal(&self.inner, &other.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        self.inner.display()
    }
}

/// A curve realizing `point` on the `"d4"`, `"d6"` or `"d6-omega"` stratum.
#[pyfunction]
fn model(stratum: &str, point: &PyIgusaPoint) -> PyResult<PyCurve> {
    let pt = &point.inner;
    let c = match stratum {
        "d4" => strata::d4_model(pt),
        "d6" => strata::d6_model(pt),
        "d6-omega" => strata::d6_omega_model(pt),
        _ => return Err(PyValueError::new_err(format!("unknown stratum {stratum:?}"))),
    };
    Ok(PyCurve { inner: c.map_err(err)? })
}

/// The genus-2 curve glued from the Legendre curves with parameters `l1`, `l2`.
#[pyfunction]
fn glue(field: &PyField, l1: Elem, l2: Elem) -> PyResult<PyCurve> {
    let f = &field.inner;
    let c = strata::glue(f, &l1.to_element(f)?, &l2.to_element(f)?).map_err(err)?;
    Ok(PyCurve { inner: c })
}

/// Stratum dimensions and component counts at `p`, as JSON.
#[pyfunction]
fn count_table(p: u64) -> PyResult<String> {
    serde_json::to_string(&CountTable::new(p).map_err(err)?).map_err(json_err)
}

#[pyfunction]
fn supersingular_count(p: u64) -> PyResult<u64> {
    ss_count(p).map_err(err)
}

fn parse_filter(filter: Option<(u8, u8)>) -> PyResult<EoFilter> {
    match filter {
        None => Ok(EoFilter::All),
        Some((f, a)) => Ok(EoFilter::Only(EoType::new(f, a).map_err(err)?)),
    }
}

/// Normal-form census over `F_{p^k}`; returns the CSV text, one row per Igusa point.
#[pyfunction]
#[pyo3(signature = (p, k = 1, eo = None, workers = None, budget = None))]
fn census_csv(py: Python<'_>, p: u64, k: usize, eo: Option<(u8, u8)>, workers: Option<usize>, budget: Option<u64>) -> PyResult<String> {
    let opts = CensusOptions { filter: parse_filter(eo)?, workers, budget };
    let c = py.detach(|| census::census(p, k, &opts)).map_err(err)?;
    Ok(c.to_csv())
}

/// Empty-cell check over `F_{p^k}` for each `k`; returns `(passed, report JSON)`.
#[pyfunction]
#[pyo3(signature = (p, ks = vec![1, 2], workers = None, budget = None))]
fn verify_tables(py: Python<'_>, p: u64, ks: Vec<usize>, workers: Option<usize>, budget: Option<u64>) -> PyResult<(bool, String)> {
    let opts = CensusOptions { filter: EoFilter::All, workers, budget };
    let r = py.detach(|| census::verify_tables(p, &ks, &opts)).map_err(err)?;
    Ok((r.passed(), serde_json::to_string(&r).map_err(json_err)?))
}

#[pymodule]
fn genus2py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyCurve>()?;
    m.add_class::<PyIgusaPoint>()?;
    m.add_function(wrap_pyfunction!(model, m)?)?;
    m.add_function(wrap_pyfunction!(glue, m)?)?;
    m.add_function(wrap_pyfunction!(count_table, m)?)?;
    m.add_function(wrap_pyfunction!(supersingular_count, m)?)?;
    m.add_function(wrap_pyfunction!(census_csv, m)?)?;
    m.add_function(wrap_pyfunction!(verify_tables, m)?)?;
    Ok(())
}
