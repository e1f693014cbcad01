//! Python bindings for `vanishlab`.
//!
//! Polynomials and operators are built from text in a fixed variable list.
//! Rationals cross the boundary as exact fraction strings. Engines return a
//! [`Report`] holding the structured records.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use vanishlab::cases::{self, CaseVerdict, TwoTerm};
use vanishlab::diff::DiffMode;
use vanishlab::parse::{parse_exponent, parse_op, parse_poly, parse_rational, parse_vars};
use vanishlab::record::{parse_records, render, Record};
use vanishlab::{density, ExponentVector, LaurentPoly, OrthantMeet, Point, Rational, RationalPolytope, ToRecords};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn vars_from(vars: &str) -> PyResult<Vec<String>> {
    parse_vars(vars).map_err(err)
}

fn rational(s: &str) -> PyResult<Rational> {
    parse_rational(s).map_err(err)
}

/// Coordinates are given as strings or integers, e.g. `["1/2", 3]`.
fn point(coords: Vec<Coord>) -> PyResult<Point> {
    coords.into_iter().map(|c| rational(&c.0)).collect::<PyResult<_>>().map(Point)
}

struct Coord(String);

impl<'a, 'py> FromPyObject<'a, 'py> for Coord {
    type Error = PyErr;

    fn extract(ob: Borrowed<'a, 'py, PyAny>) -> PyResult<Self> {
        if let Ok(i) = ob.extract::<i64>() {
            return Ok(Coord(i.to_string()));
        }
        Ok(Coord(ob.extract::<String>()?))
    }
}

fn same_vars(a: &[String], b: &[String]) -> PyResult<()> {
    if a != b {
        return Err(PyValueError::new_err(format!("variable lists differ: {} vs {}", a.join(","), b.join(","))));
    }
    Ok(())
}

/// A Laurent polynomial with exact rational coefficients.
#[pyclass(module = "pyvanishlab", eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct Poly {
    inner: LaurentPoly,
    vars: Vec<String>,
}

#[pymethods]
impl Poly {
    #[new]
    #[pyo3(signature = (text, vars = "x,y"))]
    fn new(text: &str, vars: &str) -> PyResult<Self> {
        let vars = vars_from(vars)?;
        let inner = parse_poly(text, &vars).map_err(err)?;
        Ok(Poly { inner, vars })
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.vars.clone()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Exponent vectors of the nonzero terms.
    fn support(&self) -> Vec<Vec<i64>> {
        self.inner.support().iter().map(|e| e.entries().to_vec()).collect()
    }

    fn coeff(&self, exponent: Vec<i64>) -> PyResult<String> {
        if exponent.len() != self.vars.len() {
            return Err(PyValueError::new_err("exponent has the wrong length"));
        }
        Ok(self.inner.coeff_at(&ExponentVector::new(exponent)).to_string())
    }

    fn constant_term(&self) -> String {
        self.inner.constant_term().to_string()
    }

    fn __add__(&self, other: &Poly) -> PyResult<Poly> {
        same_vars(&self.vars, &other.vars)?;
        Ok(self.with(&self.inner + &other.inner))
    }

    fn __sub__(&self, other: &Poly) -> PyResult<Poly> {
        same_vars(&self.vars, &other.vars)?;
        Ok(self.with(&self.inner - &other.inner))
    }

    fn __mul__(&self, other: &Poly) -> PyResult<Poly> {
        same_vars(&self.vars, &other.vars)?;
        Ok(self.with(&self.inner * &other.inner))
    }

    fn __pow__(&self, m: u32, _modulo: Option<Py<PyAny>>) -> Poly {
        self.with(self.inner.pow(m))
    }

    fn __str__(&self) -> String {
        self.inner.to_text(&self.vars)
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}', vars='{}')", self.__str__(), self.vars.join(","))
    }
}

impl Poly {
    fn with(&self, inner: LaurentPoly) -> Poly {
        Poly {
            inner,
            vars: self.vars.clone(),
        }
    }
}

/// A constant-coefficient differential operator such as `dx*dy - dy^2`.
#[pyclass(module = "pyvanishlab", skip_from_py_object)]
#[derive(Clone)]
pub struct Operator {
    inner: vanishlab::DiffOp,
    vars: Vec<String>,
}

#[pymethods]
impl Operator {
    #[new]
    #[pyo3(signature = (text, vars = "x,y"))]
    fn new(text: &str, vars: &str) -> PyResult<Self> {
        let vars = vars_from(vars)?;
        let inner = parse_op(text, &vars).map_err(err)?;
        Ok(Operator { inner, vars })
    }

    #[pyo3(signature = (p, laurent = false))]
    fn apply(&self, p: &Poly, laurent: bool) -> PyResult<Poly> {
        self.apply_power(1, p, laurent)
    }

    /// Λ^m applied to p.
    #[pyo3(signature = (m, p, laurent = false))]
    fn apply_power(&self, m: u32, p: &Poly, laurent: bool) -> PyResult<Poly> {
        same_vars(&self.vars, &p.vars)?;
        let mode = if laurent { DiffMode::Laurent } else { DiffMode::Polynomial };
        let inner = self.inner.apply_power(m, &p.inner, mode).map_err(err)?;
        Ok(p.with(inner))
    }

    /// The symbol Λ(ξ), written in the operator's variables.
    fn symbol(&self) -> Poly {
        Poly {
            inner: self.inner.symbol().clone(),
            vars: self.vars.clone(),
        }
    }

    fn __repr__(&self) -> String {
        let names: Vec<String> = self.vars.iter().map(|v| format!("d{v}")).collect();
        format!("Operator('{}')", self.inner.symbol().to_text(&names))
    }
}

/// Convex hull of finitely many rational points.
#[pyclass(module = "pyvanishlab")]
pub struct Polytope {
    inner: RationalPolytope,
}

#[pymethods]
impl Polytope {
    #[new]
    fn new(points: Vec<Vec<Coord>>) -> PyResult<Self> {
        let gens = points.into_iter().map(point).collect::<PyResult<Vec<_>>>()?;
        Ok(Polytope {
            inner: RationalPolytope::new(gens).map_err(err)?,
        })
    }

    #[staticmethod]
    fn newton(p: &Poly) -> PyResult<Self> {
        Ok(Polytope {
            inner: RationalPolytope::newton(&p.inner).map_err(err)?,
        })
    }

    /// A separation certificate or a witness point, as a [`Report`].
    fn orthant_meet(&self) -> Report {
        let meet = self.inner.orthant_meet();
        let status = if meet.is_disjoint() { "disjoint" } else { "meets" };
        Report::new(status, meet.to_records(&[]))
    }

    /// N with (β + mΣ) disjoint from the orthant for all m ≥ N, or `None`
    /// when the polytope meets the orthant.
    fn moveaway_bound(&self, beta: Vec<Coord>) -> PyResult<Option<u64>> {
        match self.inner.orthant_meet() {
            OrthantMeet::Certificate(cert) => self.inner.moveaway_bound(&point(beta)?, &cert).map(Some).map_err(err),
            OrthantMeet::Witness { .. } => Ok(None),
        }
    }

    /// Convex coefficients of the point over the generators, if contained.
    fn contains(&self, w: Vec<Coord>) -> PyResult<Option<Vec<String>>> {
        let c = self.inner.contains_point(&point(w)?).map_err(err)?;
        Ok(c.map(|c| c.iter().map(ToString::to_string).collect()))
    }

    fn __repr__(&self) -> String {
        format!("Polytope('{}')", self.inner)
    }
}

/// Outcome of an engine: a status word plus structured records.
#[pyclass(module = "pyvanishlab", get_all)]
pub struct Report {
    status: String,
    structured: String,
}

impl Report {
    fn new(status: &str, records: Vec<Record>) -> Report {
        Report {
            status: status.to_string(),
            structured: render(&records),
        }
    }

    fn case(v: CaseVerdict, vars: &[String]) -> Report {
        Report::new(v.status.as_str(), v.to_records(vars))
    }
}

#[pymethods]
impl Report {
    /// `[(kind, [(key, value), ...]), ...]`
    fn records(&self) -> Vec<(String, Vec<(String, String)>)> {
        parse_records(&self.structured)
            .expect("rendered records parse")
            .into_iter()
            .map(|r| (r.kind, r.fields))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("Report(status='{}')", self.status)
    }
}

#[pyfunction]
#[pyo3(signature = (op, p, g = None, horizon = 8, laurent = false))]
fn vanishing_profile(op: &Operator, p: &Poly, g: Option<&Poly>, horizon: u32, laurent: bool) -> PyResult<Report> {
    same_vars(&op.vars, &p.vars)?;
    let one = LaurentPoly::one(p.vars.len());
    let g = match g {
        Some(g) => {
            same_vars(&op.vars, &g.vars)?;
            &g.inner
        }
        None => &one,
    };
    let mode = if laurent { DiffMode::Laurent } else { DiffMode::Polynomial };
    let profile = vanishlab::vanishing_profile(&op.inner, &p.inner, g, horizon, mode).map_err(err)?;
    let status = if profile.hypothesis_holds() { "consistent" } else { "hypothesis-fails" };
    Ok(Report::new(status, profile.to_records(&p.vars)))
}

#[pyfunction]
#[pyo3(signature = (p, u, horizon = 8))]
fn ray_hits_support(p: &Poly, u: Vec<Coord>, horizon: u32) -> PyResult<Report> {
    let r = density::ray_hits_support(&p.inner, &point(u)?, horizon).map_err(err)?;
    Ok(Report::new(r.verdict().as_str(), r.to_records(&p.vars)))
}

#[pyfunction]
#[pyo3(signature = (f, horizon = 8))]
fn dk_check(f: &Poly, horizon: u32) -> PyResult<Report> {
    let r = density::dk_check(&f.inner, horizon).map_err(err)?;
    Ok(Report::new(r.verdict().as_str(), r.to_records(&f.vars)))
}

#[pyfunction]
#[pyo3(signature = (op, p, g, horizon = 8))]
fn one_var_check(op: &Operator, p: &Poly, g: &Poly, horizon: u32) -> PyResult<Report> {
    let v = cases::one_var_check(&op.inner, &p.inner, &g.inner, horizon).map_err(err)?;
    Ok(Report::case(v, &p.vars))
}

/// Φ and f are univariate; g is in (x, y).
#[pyfunction]
#[pyo3(signature = (phi, f, g, horizon = 8))]
fn phi_case_check(phi: &Poly, f: &Poly, g: &Poly, horizon: u32) -> PyResult<Report> {
    let v = cases::phi_case_check(&phi.inner, &f.inner, &g.inner, horizon).map_err(err)?;
    Ok(Report::case(v, &g.vars))
}

/// e^{xΦ(∂_y)} f in variables (x, y).
#[pyfunction]
#[pyo3(signature = (phi, f, vars = "x,y"))]
fn phi_flow(phi: &Poly, f: &Poly, vars: &str) -> PyResult<Poly> {
    let vars = vars_from(vars)?;
    let inner = cases::phi_flow(&phi.inner, &f.inner).map_err(err)?;
    Ok(Poly { inner, vars })
}

/// P = z^α with α given as e.g. `"(2,0)"`.
#[pyfunction]
#[pyo3(signature = (op, alpha, g, horizon = 8))]
fn monomial_case_check(op: &Operator, alpha: &str, g: &Poly, horizon: u32) -> PyResult<Report> {
    let alpha = parse_exponent(alpha, op.vars.len()).map_err(err)?;
    let v = cases::monomial_case_check(&op.inner, &alpha, &g.inner, horizon).map_err(err)?;
    Ok(Report::case(v, &g.vars))
}

/// Λ = ∂^α.
#[pyfunction]
#[pyo3(signature = (alpha, p, g, horizon = 8))]
fn monomial_operator_check(alpha: &str, p: &Poly, g: &Poly, horizon: u32) -> PyResult<Report> {
    let alpha = parse_exponent(alpha, p.vars.len()).map_err(err)?;
    let v = cases::monomial_operator_check(&alpha, &p.inner, &g.inner, horizon).map_err(err)?;
    Ok(Report::case(v, &p.vars))
}

fn two_terms(p: &LaurentPoly) -> PyResult<TwoTerm> {
    let terms: Vec<_> = p.iter().collect();
    match terms.as_slice() {
        [(alpha, a), (beta, b)] => Ok(TwoTerm::new((*a).clone(), (*alpha).clone(), (*b).clone(), (*beta).clone())),
        _ => Err(PyValueError::new_err("expected exactly two terms")),
    }
}

/// Λ a sum of two monomial operators of different orders.
#[pyfunction]
#[pyo3(signature = (op, p, g, horizon = 8))]
fn two_monomial_check(op: &Operator, p: &Poly, g: &Poly, horizon: u32) -> PyResult<Report> {
    let term = two_terms(op.inner.symbol())?;
    let v = cases::two_monomial_check(&term, &p.inner, &g.inner, horizon).map_err(err)?;
    Ok(Report::case(v, &p.vars))
}

/// P a sum of two monomials of different degrees, Λ homogeneous.
#[pyfunction]
#[pyo3(signature = (op, p, g, horizon = 8))]
fn homogeneous_two_monomial_p_check(op: &Operator, p: &Poly, g: &Poly, horizon: u32) -> PyResult<Report> {
    let term = two_terms(&p.inner)?;
    let v = cases::homogeneous_two_monomial_p_check(&op.inner, &term, &g.inner, horizon).map_err(err)?;
    Ok(Report::case(v, &p.vars))
}

fn counterexample_report(r: cases::CounterexampleReport) -> Report {
    let vars = vec!["x".to_string(), "y".to_string()];
    Report::new(if r.holds() { "confirmed" } else { "check-failed" }, r.to_records(&vars))
}

#[pyfunction]
#[pyo3(signature = (horizon = 8, precision = 12))]
fn counterexample_ddv(horizon: u32, precision: i64) -> PyResult<Report> {
    cases::counterexample_ddv(horizon, precision).map(counterexample_report).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (horizon = 8, precision = 12))]
fn counterexample_dk(horizon: u32, precision: i64) -> PyResult<Report> {
    cases::counterexample_dk(horizon, precision).map(counterexample_report).map_err(err)
}

#[pyfunction]
fn binomial_gap_check(d: u64, r: u64) -> PyResult<bool> {
    cases::binomial_gap_check(d, r).map_err(err)
}

#[pymodule]
fn pyvanishlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Poly>()?;
    m.add_class::<Operator>()?;
    m.add_class::<Polytope>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(vanishing_profile, m)?)?;
    m.add_function(wrap_pyfunction!(ray_hits_support, m)?)?;
    m.add_function(wrap_pyfunction!(dk_check, m)?)?;
    m.add_function(wrap_pyfunction!(one_var_check, m)?)?;
    m.add_function(wrap_pyfunction!(phi_case_check, m)?)?;
    m.add_function(wrap_pyfunction!(phi_flow, m)?)?;
    m.add_function(wrap_pyfunction!(monomial_case_check, m)?)?;
    m.add_function(wrap_pyfunction!(monomial_operator_check, m)?)?;
    m.add_function(wrap_pyfunction!(two_monomial_check, m)?)?;
    m.add_function(wrap_pyfunction!(homogeneous_two_monomial_p_check, m)?)?;
    m.add_function(wrap_pyfunction!(counterexample_ddv, m)?)?;
    m.add_function(wrap_pyfunction!(counterexample_dk, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_gap_check, m)?)?;
    Ok(())
}
