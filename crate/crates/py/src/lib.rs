//! Python bindings. Grades cross the boundary as strings in lowest terms
//! (`"1/2"`, `"-2/5"`); inputs may be strings, ints or `Fraction`s.

use std::collections::BTreeMap;
use std::sync::Arc;

use bfshvs_core::bfs::{self as ops, Method};
use bfshvs_core::construct::{self, Variant};
use bfshvs_core::dsl::{self, DefKind};
use bfshvs_core::hyper::{self, AxiomOutcome};
use bfshvs_core::oracle::{self, GradeGrid};
use bfshvs_core::{format_rational, parse_rational, Error, Rational, VectorSubset};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(
    bfshvs,
    HvsError,
    PyException,
    "A precondition, hypothesis or capacity failure."
);
create_exception!(bfshvs, ParseError, PyValueError, "Malformed `.hvs` text.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Structure(_)
        | Error::Domain(_)
        | Error::SpaceMismatch
        | Error::UnknownParameter(_) => PyValueError::new_err(e.to_string()),
        _ => HvsError::new_err(e.to_string()),
    }
}

fn rational(value: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let text = value.str()?.to_string();
    parse_rational(text.trim())
        .ok_or_else(|| PyValueError::new_err(format!("`{text}` is not a rational")))
}

fn method(name: &str) -> PyResult<Method> {
    Method::from_name(name).ok_or_else(|| PyValueError::new_err(format!("unknown method `{name}`")))
}

#[pyclass(
    name = "HyperVectorSpace",
    module = "bfshvs",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
struct PySpace {
    inner: Arc<hyper::HyperVectorSpace>,
}

impl PySpace {
    fn set(&self, labels: Vec<String>) -> PyResult<VectorSubset> {
        labels
            .iter()
            .map(|l| {
                self.inner.index_of(l).ok_or_else(|| {
                    PyValueError::new_err(format!("`{l}` is not a vector of {}", self.inner.name()))
                })
            })
            .collect()
    }

    fn labels_of(&self, set: &VectorSubset) -> Vec<String> {
        set.iter()
            .map(|x| self.inner.label(x).to_string())
            .collect()
    }
}

fn outcome_text(v: &hyper::HyperVectorSpace, o: &AxiomOutcome) -> Option<String> {
    o.witness().map(|w| w.describe(v))
}

#[pymethods]
impl PySpace {
    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn field(&self) -> &str {
        self.inner.field().name()
    }

    #[getter]
    fn vectors(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn scalars(&self) -> Vec<String> {
        self.inner.field().labels().to_vec()
    }

    /// `{law: witness or None}` for H1..H5, srd, sld and invertible.
    fn check_axioms(&self) -> BTreeMap<&'static str, Option<String>> {
        let r = hyper::check_hvs_axioms(&self.inner);
        r.axioms()
            .into_iter()
            .chain(r.flags())
            .map(|(law, o)| (law.name(), outcome_text(&self.inner, o)))
            .collect()
    }

    fn is_hvs(&self) -> bool {
        hyper::check_hvs_axioms(&self.inner).is_hvs()
    }

    fn is_subhyperspace(&self, labels: Vec<String>) -> PyResult<bool> {
        hyper::is_subhyperspace(&self.inner, &self.set(labels)?).map_err(to_py)
    }

    fn span(&self, labels: Vec<String>) -> PyResult<Vec<String>> {
        let s = hyper::span(&self.inner, &self.set(labels)?).map_err(to_py)?;
        Ok(self.labels_of(&s))
    }

    fn enumerate_subhyperspaces(&self) -> PyResult<Vec<Vec<String>>> {
        let all = hyper::enumerate_subhyperspaces(&self.inner).map_err(to_py)?;
        Ok(all.iter().map(|s| self.labels_of(s)).collect())
    }

    #[pyo3(signature = (params, seed, grid_pos=None, grid_neg=None))]
    fn random_bfs(
        &self,
        params: Vec<String>,
        seed: u64,
        grid_pos: Option<Vec<Bound<'_, PyAny>>>,
        grid_neg: Option<Vec<Bound<'_, PyAny>>>,
    ) -> PyResult<PyBfs> {
        let grid = grid(grid_pos, grid_neg)?;
        Ok(PyBfs {
            inner: oracle::random_bfs(&self.inner, &params, &grid, seed),
        })
    }

    #[pyo3(signature = (labels, params, variant="pos"))]
    fn characteristic(
        &self,
        labels: Vec<String>,
        params: Vec<String>,
        variant: &str,
    ) -> PyResult<PyBfs> {
        let variant = match variant {
            "pos" => Variant::Pos,
            "neg" => Variant::Neg,
            other => return Err(PyValueError::new_err(format!("unknown variant `{other}`"))),
        };
        let set = self.set(labels)?;
        let g = construct::characteristic_bfs(self.inner.clone(), &set, params, variant)
            .map_err(to_py)?;
        Ok(PyBfs { inner: g })
    }

    /// Runs the seeded equivalence suite; returns the report as a dict.
    #[pyo3(signature = (n, seed, grid_pos=None, grid_neg=None))]
    fn verify<'py>(
        &self,
        py: Python<'py>,
        n: usize,
        seed: u64,
        grid_pos: Option<Vec<Bound<'py, PyAny>>>,
        grid_neg: Option<Vec<Bound<'py, PyAny>>>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let grid = grid(grid_pos, grid_neg)?;
        let inner = self.inner.clone();
        let report = py.detach(|| oracle::equivalence_suite(&inner, n, seed, &grid));
        let text = serde_json::to_string(&report).expect("reports serialize");
        py.import("json")?.call_method1("loads", (text,))
    }

    fn __repr__(&self) -> String {
        format!(
            "HyperVectorSpace({} over {})",
            self.inner.name(),
            self.inner.field().name()
        )
    }
}

fn grid(
    pos: Option<Vec<Bound<'_, PyAny>>>,
    neg: Option<Vec<Bound<'_, PyAny>>>,
) -> PyResult<GradeGrid> {
    let default = GradeGrid::three_by_three();
    let pos = match pos {
        Some(v) => v.iter().map(rational).collect::<PyResult<_>>()?,
        None => default.pos_levels().to_vec(),
    };
    let neg = match neg {
        Some(v) => v.iter().map(rational).collect::<PyResult<_>>()?,
        None => default.neg_levels().to_vec(),
    };
    GradeGrid::new(pos, neg).map_err(to_py)
}

#[pyclass(name = "BfsSet", module = "bfshvs", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyBfs {
    inner: bfshvs_core::BipolarFuzzySoftSet,
}

#[pymethods]
impl PyBfs {
    #[getter]
    fn space(&self) -> PySpace {
        PySpace {
            inner: self.inner.space_arc().clone(),
        }
    }

    #[getter]
    fn params(&self) -> Vec<String> {
        self.inner.params().to_vec()
    }

    /// `{param: {vector: (pos, neg)}}`.
    fn grades(&self) -> BTreeMap<String, BTreeMap<String, (String, String)>> {
        let v = self.inner.space();
        self.inner
            .entries()
            .map(|(p, ge)| {
                let row = v
                    .carrier()
                    .map(|x| {
                        (
                            v.label(x).to_string(),
                            (format_rational(&ge.pos(x)), format_rational(&ge.neg(x))),
                        )
                    })
                    .collect();
                (p.to_string(), row)
            })
            .collect()
    }

    /// `(holds, witness)`; `witness` is `None` when the answer is yes.
    #[pyo3(signature = (method="direct"))]
    fn check(&self, method: &str) -> PyResult<(bool, Option<String>)> {
        let v = ops::check_bfs(&self.inner, self::method(method)?).map_err(to_py)?;
        Ok((v.holds, v.witness.map(|w| w.describe(&self.inner))))
    }

    fn is_bfs_hvs(&self) -> bool {
        ops::is_bfs_hvs_direct(&self.inner).holds
    }

    /// `{param: [vectors]}` for the `(alpha, beta)` cut.
    fn level(
        &self,
        alpha: &Bound<'_, PyAny>,
        beta: &Bound<'_, PyAny>,
    ) -> PyResult<Vec<(String, Vec<String>)>> {
        let l =
            ops::level_soft_set(&self.inner, rational(alpha)?, rational(beta)?).map_err(to_py)?;
        let v = self.inner.space();
        Ok(l.cuts
            .iter()
            .map(|(p, c)| {
                (
                    p.clone(),
                    c.iter().map(|x| v.label(x).to_string()).collect(),
                )
            })
            .collect())
    }

    /// `self ⊑ other`.
    fn is_contained_in(&self, other: &PyBfs) -> PyResult<bool> {
        ops::bfs_contains(&self.inner, &other.inner).map_err(to_py)
    }

    fn __add__(&self, other: &PyBfs) -> PyResult<PyBfs> {
        Ok(PyBfs {
            inner: ops::bfs_sum(&self.inner, &other.inner).map_err(to_py)?,
        })
    }

    fn __neg__(&self) -> PyBfs {
        PyBfs {
            inner: ops::bfs_negate(&self.inner),
        }
    }

    /// `b o G` for the field element labelled `scalar`.
    fn scale(&self, scalar: &str) -> PyResult<PyBfs> {
        let k = self.inner.space().field();
        let b = k.index_of(scalar).ok_or_else(|| {
            PyValueError::new_err(format!("`{scalar}` is not an element of {}", k.name()))
        })?;
        Ok(PyBfs {
            inner: ops::bfs_scalar(b, &self.inner).map_err(to_py)?,
        })
    }

    /// The generated bfs-hvs and its shells as
    /// `[(seed, span, shell, {param: (pos, neg)})]`.
    #[allow(clippy::type_complexity)]
    fn generate(
        &self,
    ) -> PyResult<(
        PyBfs,
        Vec<(
            Vec<String>,
            Vec<String>,
            Vec<String>,
            BTreeMap<String, (String, String)>,
        )>,
    )> {
        let (g, t) = construct::generate_bfs_hvs(&self.inner).map_err(to_py)?;
        let v = g.space();
        let names = |s: &VectorSubset| s.iter().map(|x| v.label(x).to_string()).collect::<Vec<_>>();
        let shells: Vec<_> = (0..t.shells.len())
            .map(|i| {
                let grades = g
                    .params()
                    .iter()
                    .enumerate()
                    .map(|(e, p)| {
                        (
                            p.clone(),
                            (
                                format_rational(&t.pos_grades[i][e]),
                                format_rational(&t.neg_grades[i][e]),
                            ),
                        )
                    })
                    .collect();
                (
                    names(&t.seeds[i]),
                    names(&t.spans[i]),
                    names(&t.shells[i]),
                    grades,
                )
            })
            .collect();
        Ok((PyBfs { inner: g }, shells))
    }

    fn promote(
        &self,
        param: &str,
        alpha: &Bound<'_, PyAny>,
        beta: &Bound<'_, PyAny>,
    ) -> PyResult<PyBfs> {
        let g = construct::level_promote(&self.inner, param, rational(alpha)?, rational(beta)?)
            .map_err(to_py)?;
        Ok(PyBfs { inner: g })
    }

    fn is_normal(&self) -> PyResult<bool> {
        construct::is_normal(&self.inner).map_err(to_py)
    }

    #[pyo3(signature = (mode="shift", literal=false))]
    fn normalize(&self, mode: &str, literal: bool) -> PyResult<PyBfs> {
        let g = match (mode, literal) {
            ("shift", false) => construct::normalize_shift(&self.inner),
            ("shift", true) => construct::normalize_shift_literal(&self.inner),
            ("scale", false) => construct::normalize_scale(&self.inner),
            _ => {
                return Err(PyValueError::new_err(format!(
                    "unsupported mode `{mode}` (literal={literal})"
                )))
            }
        };
        Ok(PyBfs {
            inner: g.map_err(to_py)?,
        })
    }

    /// Canonical `.hvs` text defining this set under `name`.
    #[pyo3(signature = (name="result"))]
    fn to_hvs(&self, name: &str) -> PyResult<String> {
        let mut doc = dsl::Document::new();
        doc.insert_bfs(name, self.inner.clone()).map_err(to_py)?;
        Ok(dsl::serialize_document(&doc))
    }

    fn __repr__(&self) -> String {
        format!(
            "BfsSet(on {}, params {:?})",
            self.inner.space().name(),
            self.inner.params()
        )
    }
}

#[pyclass(name = "Document", module = "bfshvs", frozen)]
struct PyDocument {
    inner: dsl::Document,
}

#[pymethods]
impl PyDocument {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        dsl::parse_document(text)
            .map(|inner| Self { inner })
            .map_err(|e| ParseError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn load(path: std::path::PathBuf) -> PyResult<Self> {
        let text = std::fs::read_to_string(&path)?;
        Self::parse(&text)
    }

    fn serialize(&self) -> String {
        dsl::serialize_document(&self.inner)
    }

    #[getter]
    fn spaces(&self) -> Vec<String> {
        self.inner.spaces().keys().cloned().collect()
    }

    #[getter]
    fn bfs_sets(&self) -> Vec<String> {
        self.inner.bfs_sets().keys().cloned().collect()
    }

    #[getter]
    fn fields(&self) -> Vec<String> {
        self.inner.fields().keys().cloned().collect()
    }

    fn space(&self, name: &str) -> PyResult<PySpace> {
        self.inner
            .space(name)
            .map(|s| PySpace { inner: s.clone() })
            .ok_or_else(|| PyValueError::new_err(format!("no space `{name}`")))
    }

    fn bfs(&self, name: &str) -> PyResult<PyBfs> {
        self.inner
            .bfs(name)
            .map(|g| PyBfs { inner: g.clone() })
            .ok_or_else(|| PyValueError::new_err(format!("no bfs set `{name}`")))
    }

    /// `(line, column)` of a definition header.
    fn span_of(&self, kind: &str, name: &str) -> PyResult<Option<(usize, usize)>> {
        let kind = match kind {
            "field" => DefKind::Field,
            "space" => DefKind::Space,
            "bfs" => DefKind::Bfs,
            other => return Err(PyValueError::new_err(format!("unknown kind `{other}`"))),
        };
        Ok(self.inner.span(kind, name).map(|s| (s.line, s.column)))
    }

    fn __eq__(&self, other: &PyDocument) -> bool {
        self.inner == other.inner
    }
}

/// Smallest grid-valued bfs-hvs containing `f`, by exhaustive search.
#[pyfunction]
#[pyo3(signature = (f, grid_pos=None, grid_neg=None))]
fn brute_force_min(
    py: Python<'_>,
    f: &PyBfs,
    grid_pos: Option<Vec<Bound<'_, PyAny>>>,
    grid_neg: Option<Vec<Bound<'_, PyAny>>>,
) -> PyResult<PyBfs> {
    let grid = grid(grid_pos, grid_neg)?.with_grades_of(&f.inner);
    let inner = f.inner.clone();
    let g = py
        .detach(|| oracle::brute_force_min_bfs_hvs(inner.space_arc(), &inner, &grid))
        .map_err(to_py)?;
    Ok(PyBfs { inner: g })
}

#[pymodule]
fn bfshvs(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDocument>()?;
    m.add_class::<PySpace>()?;
    m.add_class::<PyBfs>()?;
    m.add_function(wrap_pyfunction!(brute_force_min, m)?)?;
    m.add("HvsError", m.py().get_type::<HvsError>())?;
    m.add("ParseError", m.py().get_type::<ParseError>())?;
    m.add("METHODS", Method::ALL.map(Method::name).to_vec())?;
    Ok(())
}
