//! Python bindings for `vanishing`.
//!
//! Exposes groups (built from builder expressions or group-file text),
//! exact vanishing proportions, character degrees, the structural
//! classifier and the acceptance campaign. Rationals cross the boundary as
//! `(numerator, denominator)` tuples.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use vanishing::campaign::{check_name, Campaign, CampaignConfig, CHECKS};
use vanishing::character::{self, Rational};
use vanishing::classifier;
use vanishing::constructions::GroupSpec;
use vanishing::group::FiniteGroup;
use vanishing::groupfile::GroupFile;
use vanishing::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::CapExceeded { .. } | Error::Consistency(_) | Error::Configuration(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn frac(r: Rational) -> (i64, i64) {
    (*r.numer(), *r.denom())
}

/// A finite group stored as a multiplication table.
#[pyclass(name = "Group", module = "vanishing_py")]
struct PyGroup {
    group: FiniteGroup,
    file: Option<GroupFile>,
}

#[pymethods]
impl PyGroup {
    /// Builds a group from a builder expression such as `"B4_1(1,C2xC2)"`.
    #[staticmethod]
    fn from_spec(spec: &str) -> PyResult<Self> {
        let spec = GroupSpec::parse(spec).map_err(py_err)?;
        let file = GroupFile::from_spec(&spec).map_err(py_err)?;
        let group = file.build().map_err(py_err)?;
        Ok(PyGroup {
            group,
            file: Some(file),
        })
    }

    /// Builds a group from the text of a group file.
    #[staticmethod]
    fn from_file_text(text: &str) -> PyResult<Self> {
        let file = GroupFile::parse(text).map_err(py_err)?;
        let group = file.build().map_err(py_err)?;
        Ok(PyGroup {
            group,
            file: Some(file),
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.group.order()
    }

    #[getter]
    fn name(&self) -> String {
        self.group.name().to_string()
    }

    fn is_abelian(&self) -> bool {
        self.group.is_abelian()
    }

    fn num_classes(&self) -> usize {
        self.group.classes().len()
    }

    /// `P(G)` as `(numerator, denominator)`.
    fn proportion(&self) -> PyResult<(i64, i64)> {
        let r = character::proportion(&self.group).map_err(py_err)?;
        Ok(frac(r.proportion))
    }

    /// Indices of the vanishing elements.
    fn vanishing_elements(&self) -> PyResult<Vec<u32>> {
        let r = character::proportion(&self.group).map_err(py_err)?;
        Ok(r.vanishing)
    }

    /// Degrees of the irreducible characters, in table order.
    fn character_degrees(&self) -> PyResult<Vec<u64>> {
        let t = character::dixon_table(&self.group).map_err(py_err)?;
        Ok(t.degrees().to_vec())
    }

    /// The character table rendered as text.
    fn character_table(&self) -> PyResult<String> {
        let t = character::dixon_table(&self.group).map_err(py_err)?;
        Ok(t.render(&self.group))
    }

    fn is_quasi_frobenius(&self) -> bool {
        self.group.is_quasi_frobenius().holds
    }

    fn classify(&self) -> PyVerdict {
        PyVerdict::from(classifier::classify_theorem_a(&self.group))
    }

    /// The group-file text for this group.
    fn to_file_text(&self) -> Option<String> {
        self.file.as_ref().map(GroupFile::to_text)
    }

    fn __repr__(&self) -> String {
        format!("Group(name={:?}, order={})", self.group.name(), self.group.order())
    }
}

/// The classifier's decision for one group.
#[pyclass(name = "Verdict", module = "vanishing_py", get_all)]
struct PyVerdict {
    below: bool,
    /// Case label (`"a"`, `"b1"`, …) or `None` when at or above the threshold.
    case: Option<String>,
    /// `(m - 1, m)` for Below verdicts.
    predicted_p: Option<(i64, i64)>,
    /// Witness subgroup orders by name.
    witnesses: BTreeMap<String, usize>,
    notes: Vec<String>,
    text: String,
}

impl From<classifier::Verdict> for PyVerdict {
    fn from(v: classifier::Verdict) -> Self {
        PyVerdict {
            below: v.outcome.is_below(),
            case: v.outcome.case().map(|c| c.label().to_string()),
            predicted_p: v.outcome.predicted_p().map(frac),
            witnesses: v.witnesses.iter().map(|(n, s)| (n.clone(), s.order())).collect(),
            notes: v.notes.clone(),
            text: v.outcome.to_string(),
        }
    }
}

#[pymethods]
impl PyVerdict {
    fn __repr__(&self) -> String {
        format!("Verdict({})", self.text)
    }
}

/// `P(A_7) = 1067/1260` as `(numerator, denominator)`.
#[pyfunction]
fn threshold() -> (i64, i64) {
    frac(character::threshold())
}

/// Structural classification of a group.
#[pyfunction]
fn classify_theorem_a(group: &PyGroup) -> PyVerdict {
    group.classify()
}

/// Exact `P(G)` of a group.
#[pyfunction]
fn proportion(group: &PyGroup) -> PyResult<(i64, i64)> {
    group.proportion()
}

/// Names of the acceptance checks, in order.
#[pyfunction]
fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

/// Runs campaign checks (all of them when `only` is empty; names or short
/// aliases) and returns one dict per check with keys `check`, `status`,
/// `observed`, `expected`, `tag`.
#[pyfunction]
#[pyo3(signature = (seed=42, count=200, only=Vec::new(), max_order=None))]
fn run_campaign(
    py: Python<'_>,
    seed: u64,
    count: usize,
    only: Vec<String>,
    max_order: Option<usize>,
) -> PyResult<Vec<BTreeMap<&'static str, String>>> {
    let names = only
        .iter()
        .map(|n| check_name(n).ok_or_else(|| PyValueError::new_err(format!("unknown check `{n}`"))))
        .collect::<PyResult<Vec<&str>>>()?;
    let mut cfg = CampaignConfig {
        seed,
        count,
        ..CampaignConfig::default()
    };
    if let Some(cap) = max_order {
        cfg = cfg.with_cap(cap);
    }
    let report = py.detach(|| Campaign::new(cfg).run(&names));
    Ok(report
        .rows
        .iter()
        .map(|r| {
            BTreeMap::from([
                ("check", r.check.to_string()),
                ("status", r.status.to_string()),
                ("observed", r.observed.clone()),
                ("expected", r.expected.clone()),
                ("tag", r.tag.to_string()),
            ])
        })
        .collect())
}

#[pymodule]
fn vanishing_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyVerdict>()?;
    m.add_function(wrap_pyfunction!(threshold, m)?)?;
    m.add_function(wrap_pyfunction!(classify_theorem_a, m)?)?;
    m.add_function(wrap_pyfunction!(proportion, m)?)?;
    m.add_function(wrap_pyfunction!(check_names, m)?)?;
    m.add_function(wrap_pyfunction!(run_campaign, m)?)?;
    Ok(())
}
