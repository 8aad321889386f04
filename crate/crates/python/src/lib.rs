//! Python bindings. Scalars cross the boundary as packed integers
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`, so prime-field elements are plain residues.

use hyperjac::gf::{FieldSpec, Scalar};
use hyperjac::group::{
    is_reflection_generated, pointwise_stabilizer, reflecting_arrangement, Group, GroupSpec,
    Hyperplane,
};
use hyperjac::invariants::{
    self, construct_hyperplane_invariants, verify_basic_invariants, BasicInvariants,
};
use hyperjac::linalg::Matrix;
use hyperjac::mpoly::{self, Monomial, MultiPoly};
use hyperjac::report::{TheoremRepr, VerificationRepr};
use hyperjac::theorem;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyList;
use serde::Serialize;

fn err(e: hyperjac::Error) -> PyErr {
    match e {
        hyperjac::Error::Internal(_) | hyperjac::Error::VerificationFailed => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_python<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<PyObject> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn scalar(field: &FieldSpec, i: u32) -> PyResult<Scalar> {
    field.element(i).map_err(err)
}

fn vector(field: &FieldSpec, v: &[u32]) -> PyResult<Vec<Scalar>> {
    v.iter().map(|&i| scalar(field, i)).collect()
}

fn matrix(field: &FieldSpec, rows: &[Vec<u32>]) -> PyResult<Matrix> {
    let rows = rows
        .iter()
        .map(|r| vector(field, r))
        .collect::<PyResult<Vec<_>>>()?;
    Matrix::from_rows(rows).map_err(err)
}

fn unpack_matrix(m: &Matrix) -> Vec<Vec<u32>> {
    m.rows()
        .iter()
        .map(|r| r.iter().map(|s| s.index()).collect())
        .collect()
}

#[pyclass(name = "Field", module = "pyhyperjac", frozen)]
#[derive(Clone)]
struct PyField {
    inner: FieldSpec,
}

#[pymethods]
impl PyField {
    /// `Field(p, modulus)` with the modulus monic and least degree first.
    #[new]
    fn new(p: u32, modulus: Vec<u32>) -> PyResult<Self> {
        Ok(PyField {
            inner: FieldSpec::new(p, modulus).map_err(err)?,
        })
    }

    #[staticmethod]
    fn of_order(q: u32) -> PyResult<Self> {
        Ok(PyField {
            inner: FieldSpec::of_order(q).map_err(err)?,
        })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn order(&self) -> u32 {
        self.inner.order()
    }

    #[getter]
    fn modulus(&self) -> Vec<u32> {
        self.inner.modulus().to_vec()
    }

    fn add(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self
            .inner
            .add(scalar(&self.inner, a)?, scalar(&self.inner, b)?)
            .index())
    }

    fn mul(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self
            .inner
            .mul(scalar(&self.inner, a)?, scalar(&self.inner, b)?)
            .index())
    }

    fn inv(&self, a: u32) -> PyResult<u32> {
        Ok(self
            .inner
            .inv(scalar(&self.inner, a)?)
            .map_err(err)?
            .index())
    }

    fn format(&self, a: u32) -> PyResult<String> {
        Ok(self.inner.format(scalar(&self.inner, a)?))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Field(p={}, modulus={:?})",
            self.inner.p(),
            self.inner.modulus()
        )
    }
}

#[pyclass(name = "Poly", module = "pyhyperjac", frozen)]
#[derive(Clone)]
struct PyPoly {
    field: FieldSpec,
    inner: MultiPoly,
}

impl PyPoly {
    fn wrap(field: &FieldSpec, inner: MultiPoly) -> Self {
        PyPoly {
            field: field.clone(),
            inner,
        }
    }

    fn same_ring(&self, other: &PyPoly) -> PyResult<()> {
        if self.field != other.field || self.inner.n_vars() != other.inner.n_vars() {
            return Err(PyValueError::new_err("polynomials live in different rings"));
        }
        Ok(())
    }
}

#[pymethods]
impl PyPoly {
    /// `Poly(field, n, [(exponents, coeff), ...])`; repeated monomials are summed.
    #[new]
    fn new(field: &PyField, n: usize, terms: Vec<(Vec<u32>, u32)>) -> PyResult<Self> {
        let f = &field.inner;
        let mut parsed = Vec::with_capacity(terms.len());
        for (exps, c) in terms {
            if exps.len() != n {
                return Err(PyValueError::new_err(format!(
                    "exponent vector {exps:?} does not have {n} entries"
                )));
            }
            parsed.push((Monomial::new(&exps), scalar(f, c)?));
        }
        Ok(PyPoly::wrap(f, MultiPoly::from_terms(f, n, parsed)))
    }

    #[staticmethod]
    fn var(field: &PyField, n: usize, i: usize) -> PyResult<Self> {
        if i >= n {
            return Err(PyValueError::new_err(format!(
                "variable index {i} out of range for {n} variables"
            )));
        }
        Ok(PyPoly::wrap(&field.inner, MultiPoly::var(n, i)))
    }

    #[getter]
    fn field(&self) -> PyField {
        PyField {
            inner: self.field.clone(),
        }
    }

    #[getter]
    fn n_vars(&self) -> usize {
        self.inner.n_vars()
    }

    #[getter]
    fn degree(&self) -> Option<u32> {
        self.inner.degree()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_homogeneous(&self) -> bool {
        self.inner.is_homogeneous()
    }

    fn terms(&self) -> Vec<(Vec<u32>, u32)> {
        let n = self.inner.n_vars();
        self.inner
            .terms()
            .map(|(m, c)| (m.exps(n).to_vec(), c.index()))
            .collect()
    }

    fn derivative(&self, i: usize) -> PyResult<Self> {
        if i >= self.inner.n_vars() {
            return Err(PyValueError::new_err(format!(
                "variable index {i} out of range"
            )));
        }
        Ok(PyPoly::wrap(
            &self.field,
            self.inner.derivative(&self.field, i),
        ))
    }

    /// The polynomial `f o g` for a matrix `g` given as rows of packed scalars.
    fn act(&self, g: Vec<Vec<u32>>) -> PyResult<Self> {
        let g = matrix(&self.field, &g)?;
        Ok(PyPoly::wrap(
            &self.field,
            self.inner.act(&self.field, &g).map_err(err)?,
        ))
    }

    fn evaluate(&self, point: Vec<u32>) -> PyResult<u32> {
        let f = &self.field;
        if point.len() != self.inner.n_vars() {
            return Err(PyValueError::new_err("point has the wrong length"));
        }
        let v = vector(f, &point)?;
        let value = self.inner.terms().fold(f.zero(), |acc, (m, &c)| {
            let t = (0..v.len()).fold(c, |t, i| f.mul(t, f.pow(v[i], m.exp(i) as u64)));
            f.add(acc, t)
        });
        Ok(value.index())
    }

    fn __add__(&self, other: &PyPoly) -> PyResult<Self> {
        self.same_ring(other)?;
        Ok(PyPoly::wrap(
            &self.field,
            self.inner.add(&self.field, &other.inner),
        ))
    }

    fn __sub__(&self, other: &PyPoly) -> PyResult<Self> {
        self.same_ring(other)?;
        Ok(PyPoly::wrap(
            &self.field,
            self.inner.sub(&self.field, &other.inner),
        ))
    }

    fn __mul__(&self, other: &PyPoly) -> PyResult<Self> {
        self.same_ring(other)?;
        Ok(PyPoly::wrap(
            &self.field,
            self.inner.mul(&self.field, &other.inner),
        ))
    }

    fn __neg__(&self) -> Self {
        PyPoly::wrap(&self.field, self.inner.neg(&self.field))
    }

    fn __pow__(&self, e: u64, _modulo: Option<u64>) -> Self {
        PyPoly::wrap(&self.field, self.inner.pow(&self.field, e))
    }

    /// Exact quotient, or `None` when `other` does not divide `self`.
    fn __floordiv__(&self, other: &PyPoly) -> PyResult<Option<Self>> {
        self.same_ring(other)?;
        let q = mpoly::exact_divide(&self.field, &self.inner, &other.inner).map_err(err)?;
        Ok(q.map(|q| PyPoly::wrap(&self.field, q)))
    }

    fn __eq__(&self, other: &PyPoly) -> bool {
        self.field == other.field && self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.display(&self.field).to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({})", self.inner.display(&self.field))
    }
}

#[pyclass(name = "Group", module = "pyhyperjac", frozen)]
struct PyGroup {
    inner: Group,
    family: Option<Vec<MultiPoly>>,
}

#[pymethods]
impl PyGroup {
    /// The group generated by matrices given as rows of packed scalars.
    #[new]
    #[pyo3(signature = (field, generators, order_cap=None))]
    fn new(
        field: &PyField,
        generators: Vec<Vec<Vec<u32>>>,
        order_cap: Option<usize>,
    ) -> PyResult<Self> {
        let f = &field.inner;
        let gens = generators
            .iter()
            .map(|g| matrix(f, g))
            .collect::<PyResult<Vec<_>>>()?;
        let n = gens
            .first()
            .map(|g| g.dim())
            .ok_or_else(|| PyValueError::new_err("need at least one generator"))?;
        let mut spec = GroupSpec::new(f.clone(), n, gens).map_err(err)?;
        if let Some(cap) = order_cap {
            spec = spec.with_order_cap(cap);
        }
        Ok(PyGroup {
            inner: Group::generate(&spec).map_err(err)?,
            family: None,
        })
    }

    /// A named group such as `Group.builtin("gl", 2, 3)`.
    #[staticmethod]
    #[pyo3(signature = (name, *args))]
    fn builtin(name: &str, args: Vec<u32>) -> PyResult<Self> {
        let args: Vec<String> = args.iter().map(u32::to_string).collect();
        let fx = hyperjac::fixtures::builtin(name, &args).map_err(err)?;
        let family = fx.family_invariants().transpose().map_err(err)?;
        Ok(PyGroup {
            inner: Group::generate(&fx.spec).map_err(err)?,
            family,
        })
    }

    #[getter]
    fn field(&self) -> PyField {
        PyField {
            inner: self.inner.field.clone(),
        }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn generators(&self) -> Vec<Vec<Vec<u32>>> {
        self.inner.generators.iter().map(unpack_matrix).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    /// Normalized linear forms of the reflecting hyperplanes.
    fn reflecting_hyperplanes(&self) -> Vec<Vec<u32>> {
        reflecting_arrangement(&self.inner.field, &self.inner.elements)
            .iter()
            .map(|h| h.form().iter().map(|s| s.index()).collect())
            .collect()
    }

    fn is_reflection_generated(&self) -> PyResult<bool> {
        is_reflection_generated(&self.inner.field, &self.inner.elements).map_err(err)
    }

    /// Pointwise stabilizer of the hyperplane `form = 0`.
    fn stabilizer(&self, form: Vec<u32>) -> PyResult<PyGroup> {
        let f = &self.inner.field;
        let h = Hyperplane::from_form(f, &vector(f, &form)?).map_err(err)?;
        let elements = pointwise_stabilizer(f, &self.inner.elements, &h);
        let generators = if elements.len() == 1 {
            elements.clone()
        } else {
            elements
                .iter()
                .filter(|g| !g.is_identity())
                .cloned()
                .collect()
        };
        Ok(PyGroup {
            inner: self.inner.subgroup(generators, elements),
            family: None,
        })
    }

    /// Basic invariants known in closed form for builtin families.
    fn family_invariants(&self) -> Option<Vec<PyPoly>> {
        let f = &self.inner.field;
        self.family
            .as_ref()
            .map(|ps| ps.iter().map(|p| PyPoly::wrap(f, p.clone())).collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "Group(order={}, n={}, q={})",
            self.inner.order(),
            self.inner.n,
            self.inner.field.order()
        )
    }
}

fn unwrap_polys(group: &Group, polys: &[PyRef<'_, PyPoly>]) -> PyResult<Vec<MultiPoly>> {
    polys
        .iter()
        .map(|p| {
            if p.field != group.field || p.inner.n_vars() != group.n {
                Err(PyValueError::new_err(
                    "polynomial does not match the group's field and dimension",
                ))
            } else {
                Ok(p.inner.clone())
            }
        })
        .collect()
}

#[pyfunction]
fn jacobian(polys: Vec<PyRef<'_, PyPoly>>) -> PyResult<PyPoly> {
    let first = polys
        .first()
        .ok_or_else(|| PyValueError::new_err("need at least one polynomial"))?;
    let field = first.field.clone();
    for p in &polys {
        first.same_ring(p)?;
    }
    let inner: Vec<MultiPoly> = polys.iter().map(|p| p.inner.clone()).collect();
    Ok(PyPoly::wrap(
        &field,
        mpoly::jacobian(&field, &inner).map_err(err)?,
    ))
}

/// Basic invariants of a group fixing the hyperplane `form = 0` pointwise.
#[pyfunction]
fn construct_invariants(group: &PyGroup, form: Vec<u32>) -> PyResult<Vec<PyPoly>> {
    let f = &group.inner.field;
    let h = Hyperplane::from_form(f, &vector(f, &form)?).map_err(err)?;
    let (basics, _) = construct_hyperplane_invariants(f, &group.inner.elements, &h).map_err(err)?;
    Ok(basics
        .polys
        .into_iter()
        .map(|p| PyPoly::wrap(f, p))
        .collect())
}

#[pyfunction]
fn verify(py: Python<'_>, group: &PyGroup, polys: Vec<PyRef<'_, PyPoly>>) -> PyResult<PyObject> {
    let polys = unwrap_polys(&group.inner, &polys)?;
    let report = verify_basic_invariants(&group.inner.field, &group.inner, &polys).map_err(err)?;
    to_python(py, &VerificationRepr::from(&report))
}

/// Factorization, degree identity and ramification checks as a dict; `None` when `polys` fail verification.
#[pyfunction]
#[pyo3(signature = (group, polys, exhaustive=false))]
fn check(
    py: Python<'_>,
    group: &PyGroup,
    polys: Vec<PyRef<'_, PyPoly>>,
    exhaustive: bool,
) -> PyResult<Option<PyObject>> {
    let polys = unwrap_polys(&group.inner, &polys)?;
    let f = &group.inner.field;
    let report = theorem::check_all(f, &group.inner, &polys, exhaustive).map_err(err)?;
    let (Some(fact), Some(deg)) = (&report.factorization, &report.degree_identity) else {
        return Ok(None);
    };
    let repr = TheoremRepr::new(f, fact, deg, report.ramification.as_ref());
    to_python(py, &repr).map(Some)
}

#[pyfunction]
fn stabilizer_exponent_sum(group: &PyGroup, form: Vec<u32>) -> PyResult<u32> {
    let f = &group.inner.field;
    let h = Hyperplane::from_form(f, &vector(f, &form)?).map_err(err)?;
    theorem::stabilizer_exponent_sum(f, &group.inner, &h).map_err(err)
}

#[pyfunction]
fn dickson(field: &PyField, n: usize) -> PyResult<Vec<PyPoly>> {
    let f = &field.inner;
    Ok(invariants::dickson_invariants(f, n)
        .map_err(err)?
        .into_iter()
        .map(|p| PyPoly::wrap(f, p))
        .collect())
}

#[pyfunction]
fn q_form(field: &PyField, n: usize) -> PyResult<PyPoly> {
    Ok(PyPoly::wrap(
        &field.inner,
        invariants::q_form(&field.inner, n).map_err(err)?,
    ))
}

#[pyfunction]
fn sl_invariants(field: &PyField, n: usize) -> PyResult<Vec<PyPoly>> {
    let f = &field.inner;
    Ok(invariants::sl_invariants(f, n)
        .map_err(err)?
        .into_iter()
        .map(|p| PyPoly::wrap(f, p))
        .collect())
}

#[pyfunction]
fn exponent_sum(polys: Vec<PyRef<'_, PyPoly>>) -> PyResult<u32> {
    let inner: Vec<MultiPoly> = polys.iter().map(|p| p.inner.clone()).collect();
    Ok(BasicInvariants::new(inner).map_err(err)?.exponent_sum())
}

/// `psi` of a degree sequence, as a `fractions.Fraction`.
#[pyfunction]
fn psi(py: Python<'_>, degrees: Vec<u32>, n: usize) -> PyResult<PyObject> {
    let r = theorem::psi(&degrees, n).map_err(err)?;
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    Ok(fraction.call1((*r.numer(), *r.denom()))?.unbind())
}

/// Runs the command-line tool in-process; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run(args: Bound<'_, PyList>) -> PyResult<(i32, String, String)> {
    let args: Vec<String> = args.extract()?;
    let r = hyperjac::cli::main_with_args(std::iter::once("hyperjac".to_string()).chain(args));
    Ok((r.code, r.stdout, r.stderr))
}

#[pymodule]
pub fn pyhyperjac(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyPoly>()?;
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(jacobian, m)?)?;
    m.add_function(wrap_pyfunction!(construct_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(stabilizer_exponent_sum, m)?)?;
    m.add_function(wrap_pyfunction!(dickson, m)?)?;
    m.add_function(wrap_pyfunction!(q_form, m)?)?;
    m.add_function(wrap_pyfunction!(sl_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(exponent_sum, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add("SCHEMA_VERSION", hyperjac::report::SCHEMA_VERSION)?;
    Ok(())
}
