//! Python bindings. Polynomials cross the boundary as coefficient lists in
//! ascending degree; rational coefficients become `fractions.Fraction`.

use arborlat_core::arbor::{self, Arbor};
use arborlat_core::checker::{self, Conjecture, SweepOptions};
use arborlat_core::polyalg::{self, Bound as RootBound};
use arborlat_core::{closedform, lattice, parking, Error, IntPolynomial, RatPolynomial};
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;

fn value_error(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

trait OrValueError<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrValueError<T> for arborlat_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(value_error)
    }
}

fn fractions<'py>(py: Python<'py>, p: &RatPolynomial) -> PyResult<Bound<'py, PyList>> {
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    let items = p
        .coeffs()
        .iter()
        .map(|c| fraction.call1((c.numer().clone(), c.denom().clone())))
        .collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

fn from_json<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("reports serialize")
}

/// A rooted tree on the blocks of a set partition of `1..=n`.
#[pyclass(name = "Arbor", module = "arborlat", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyArbor {
    inner: Arbor,
}

#[pymethods]
impl PyArbor {
    /// `parent[b]` is the index of the parent block, or -1 for the root.
    #[new]
    fn new(n: usize, blocks: Vec<Vec<usize>>, parent: Vec<i64>) -> PyResult<Self> {
        let parent = parent
            .into_iter()
            .map(|p| match p {
                -1 => Ok(None),
                p if p >= 0 => Ok(Some(p as usize)),
                p => Err(PyValueError::new_err(format!("parent index {p} is negative"))),
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyArbor { inner: Arbor::new(n, blocks, parent).py()? })
    }

    #[staticmethod]
    fn octopus(n: usize, k: usize) -> PyResult<Self> {
        Ok(PyArbor { inner: Arbor::octopus(n, k).py()? })
    }

    #[staticmethod]
    fn linear(n: usize) -> PyResult<Self> {
        Ok(PyArbor { inner: Arbor::linear(n).py()? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyArbor { inner: Arbor::from_json(text).py()? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn blocks(&self) -> Vec<Vec<usize>> {
        self.inner.blocks().to_vec()
    }

    #[getter]
    fn parent(&self) -> Vec<i64> {
        self.inner.parent().iter().map(|p| p.map_or(-1, |p| p as i64)).collect()
    }

    fn is_linear(&self) -> bool {
        self.inner.is_linear()
    }

    /// Union of the blocks weakly below each block, in block order.
    fn descendant_sets(&self) -> PyResult<Vec<Vec<usize>>> {
        let table = self.inner.descendant_sets().py()?;
        Ok(table.sets.iter().map(|s| s.iter().copied().collect()).collect())
    }

    fn __repr__(&self) -> String {
        format!("Arbor.from_json('{}')", self.inner.to_json())
    }
}

#[pyfunction]
fn enumerate_arbors(n: usize) -> Vec<PyArbor> {
    arbor::enumerate_arbors(n).map(|inner| PyArbor { inner }).collect()
}

#[pyfunction]
fn ehrhart_qnk(py: Python<'_>, n: usize, k: usize) -> PyResult<Bound<'_, PyList>> {
    fractions(py, &closedform::ehrhart_qnk(n, k).py()?)
}

#[pyfunction]
fn ehrhart_qndk(py: Python<'_>, n: usize, d: usize, k: usize) -> PyResult<Bound<'_, PyList>> {
    fractions(py, &closedform::ehrhart_qndk(n, d, k).py()?)
}

/// Ehrhart polynomial of the arbor polytope by lattice point counts.
#[pyfunction]
fn ehrhart<'py>(py: Python<'py>, a: &PyArbor) -> PyResult<Bound<'py, PyList>> {
    let p = lattice::polytope_of_arbor(&a.inner).py()?;
    let e = py.detach(|| lattice::ehrhart_interpolated(&p)).py()?;
    fractions(py, &e)
}

#[pyfunction]
fn hstar(py: Python<'_>, a: &PyArbor) -> PyResult<Vec<BigInt>> {
    let p = lattice::polytope_of_arbor(&a.inner).py()?;
    Ok(py.detach(|| lattice::hstar(&p)).py()?.into_coeffs())
}

#[pyfunction]
fn hstar_qnk(n: usize, k: usize) -> PyResult<Vec<BigInt>> {
    let e = closedform::ehrhart_qnk(n, k).py()?;
    Ok(polyalg::hstar_from_ehrhart(&e, Some(n)).py()?.into_coeffs())
}

/// Lattice points of the arbor polytope counted by support size.
#[pyfunction]
fn h_vector(a: &PyArbor) -> PyResult<Vec<BigInt>> {
    Ok(lattice::h_vector(&lattice::polytope_of_arbor(&a.inner).py()?).hs)
}

#[pyfunction]
fn h_poly_qnk(n: usize, k: usize) -> PyResult<Vec<BigInt>> {
    Ok(closedform::h_poly_qnk(n, k).py()?.into_coeffs())
}

#[pyfunction]
fn to_gamma_basis(coeffs: Vec<BigInt>, n: usize) -> PyResult<Vec<BigInt>> {
    Ok(polyalg::to_gamma_basis(&IntPolynomial::new(coeffs), n).py()?.gammas)
}

#[pyfunction]
fn to_magic_basis(coeffs: Vec<BigInt>, n: usize) -> PyResult<Vec<BigInt>> {
    Ok(polyalg::to_magic_basis(&IntPolynomial::new(coeffs), n).py()?.cs)
}

#[pyfunction]
fn f_poly(n: usize, k: usize) -> PyResult<Vec<BigInt>> {
    Ok(closedform::f_poly(n, k).py()?.into_coeffs())
}

#[pyfunction]
fn f_poly_general(n: usize, d: usize, k: usize) -> PyResult<Vec<BigInt>> {
    Ok(closedform::f_poly_general(n, d, k).py()?.into_coeffs())
}

#[pyfunction]
fn magic_identity_check(n: usize, d: usize, k: usize) -> PyResult<bool> {
    closedform::magic_identity_check(n, d, k).py()
}

/// Returns `{"spots": [...], "lucky": [car, ...], "unlucky": count}`; the
/// number of spaces defaults to the word length.
#[pyfunction]
#[pyo3(signature = (word, spaces = None))]
fn park<'py>(py: Python<'py>, word: Vec<usize>, spaces: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
    let spaces = spaces.unwrap_or(word.len());
    if let Some(bad) = word.iter().find(|&&l| l == 0) {
        return Err(PyValueError::new_err(format!("letter {bad} is not positive")));
    }
    let out = parking::park_on(&word, spaces).py()?;
    let lucky: Vec<usize> = (1..).zip(&out.lucky).filter(|(_, l)| **l).map(|(i, _)| i).collect();
    let v = serde_json::json!({"spots": out.spot, "lucky": lucky, "unlucky": out.unlucky_count});
    from_json(py, &v.to_string())
}

#[pyfunction]
fn unlucky_generating_poly(py: Python<'_>, n: usize, d: usize, k: usize) -> PyResult<Vec<BigInt>> {
    Ok(py.detach(|| parking::unlucky_generating_poly(n, d, k)).py()?.into_coeffs())
}

#[pyfunction]
fn descent_enumerator_w(py: Python<'_>, n: usize, d: usize, k: usize) -> PyResult<Vec<BigInt>> {
    Ok(py.detach(|| parking::descent_enumerator_w(n, d, k)).py()?.into_coeffs())
}

#[pyfunction]
fn descent_enumerator_tau(py: Python<'_>, a: &PyArbor) -> PyResult<Vec<BigInt>> {
    let inner = a.inner.clone();
    Ok(py.detach(move || parking::descent_enumerator_tau(&inner)).py()?.into_coeffs())
}

#[pyfunction]
fn exc_enumerator(n: usize, d: usize, k: usize) -> PyResult<Vec<BigInt>> {
    Ok(parking::exc_enumerator(n, d, k).py()?.into_coeffs())
}

/// Whether every root is real and lies in `[lo, hi]`; `None` means unbounded.
#[pyfunction]
#[pyo3(signature = (coeffs, lo = None, hi = None))]
fn all_roots_real_in(coeffs: Vec<BigInt>, lo: Option<BigInt>, hi: Option<BigInt>) -> PyResult<bool> {
    let rat = |b: BigInt| RootBound::Finite(num_rational::BigRational::from_integer(b));
    let lo = lo.map_or(RootBound::NegInfinity, rat);
    let hi = hi.map_or(RootBound::PosInfinity, rat);
    polyalg::all_roots_real_in(&IntPolynomial::new(coeffs).to_rational(), &lo, &hi).py()
}

#[pyfunction]
fn m_sequence_check(g: Vec<BigInt>) -> bool {
    polyalg::m_sequence_check(&g)
}

fn conjecture(which: &str) -> PyResult<Conjecture> {
    which.parse().py()
}

#[pyfunction]
fn check_theorem_hstar(py: Python<'_>, n: usize, k: usize) -> PyResult<Bound<'_, PyAny>> {
    let r = py.detach(|| checker::check_theorem_hstar(n, k)).py()?;
    from_json(py, &to_json(&r))
}

/// Reports for the selected conjecture checks on one arbor.
#[pyfunction]
#[pyo3(signature = (a, which = "all"))]
fn check_conjecture<'py>(py: Python<'py>, a: &PyArbor, which: &str) -> PyResult<Bound<'py, PyAny>> {
    let which = conjecture(which)?;
    let inner = a.inner.clone();
    let reports = py.detach(move || checker::check_arbor(&inner, which)).py()?;
    from_json(py, &to_json(&reports))
}

#[pyfunction]
#[pyo3(signature = (size, which = "all", force = false))]
fn sweep<'py>(py: Python<'py>, size: usize, which: &str, force: bool) -> PyResult<Bound<'py, PyAny>> {
    let which = conjecture(which)?;
    let opts = SweepOptions { force, timing: false };
    let report = py.detach(move || checker::sweep(size, which, opts)).py()?;
    from_json(py, &to_json(&report))
}

#[pymodule]
fn arborlat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyArbor>()?;
    m.add_function(wrap_pyfunction!(enumerate_arbors, m)?)?;
    m.add_function(wrap_pyfunction!(ehrhart_qnk, m)?)?;
    m.add_function(wrap_pyfunction!(ehrhart_qndk, m)?)?;
    m.add_function(wrap_pyfunction!(ehrhart, m)?)?;
    m.add_function(wrap_pyfunction!(hstar, m)?)?;
    m.add_function(wrap_pyfunction!(hstar_qnk, m)?)?;
    m.add_function(wrap_pyfunction!(h_vector, m)?)?;
    m.add_function(wrap_pyfunction!(h_poly_qnk, m)?)?;
    m.add_function(wrap_pyfunction!(to_gamma_basis, m)?)?;
    m.add_function(wrap_pyfunction!(to_magic_basis, m)?)?;
    m.add_function(wrap_pyfunction!(f_poly, m)?)?;
    m.add_function(wrap_pyfunction!(f_poly_general, m)?)?;
    m.add_function(wrap_pyfunction!(magic_identity_check, m)?)?;
    m.add_function(wrap_pyfunction!(park, m)?)?;
    m.add_function(wrap_pyfunction!(unlucky_generating_poly, m)?)?;
    m.add_function(wrap_pyfunction!(descent_enumerator_w, m)?)?;
    m.add_function(wrap_pyfunction!(descent_enumerator_tau, m)?)?;
    m.add_function(wrap_pyfunction!(exc_enumerator, m)?)?;
    m.add_function(wrap_pyfunction!(all_roots_real_in, m)?)?;
    m.add_function(wrap_pyfunction!(m_sequence_check, m)?)?;
    m.add_function(wrap_pyfunction!(check_theorem_hstar, m)?)?;
    m.add_function(wrap_pyfunction!(check_conjecture, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use pyo3::types::PyModule;

    fn with_module(f: impl FnOnce(&Bound<'_, PyModule>) -> PyResult<()>) {
        Python::initialize();
        Python::attach(|py| {
            let m = PyModule::new(py, "arborlat")?;
            arborlat(&m)?;
            f(&m)
        })
        .unwrap();
    }

    #[test]
    fn conversions() {
        with_module(|m| {
            let e = m.getattr("ehrhart_qndk")?.call1((2, 2, 1))?;
            assert_eq!(e.repr()?.to_string(), "[Fraction(1, 1), Fraction(5, 2), Fraction(3, 2)]");
            let f: Vec<i64> = m.getattr("f_poly")?.call1((4, 1))?.extract()?;
            assert_eq!(f, vec![24, 86, 59, 6]);
            let arbor = m.getattr("Arbor")?.call_method1("octopus", (2, 1))?;
            let h: Vec<i64> = m.getattr("hstar")?.call1((&arbor,))?.extract()?;
            assert_eq!(h, vec![1, 2]);
            let parent: Vec<i64> = arbor.getattr("parent")?.extract()?;
            assert_eq!(parent, vec![-1, 0]);
            Ok(())
        });
    }

    #[test]
    fn errors_become_value_errors() {
        with_module(|m| {
            let err = m.getattr("f_poly")?.call1((2, 5)).unwrap_err();
            Python::attach(|py| assert!(err.is_instance_of::<PyValueError>(py)));
            let err = m.getattr("sweep")?.call1((2, "nope")).unwrap_err();
            Python::attach(|py| assert!(err.is_instance_of::<PyValueError>(py)));
            Ok(())
        });
    }
}
