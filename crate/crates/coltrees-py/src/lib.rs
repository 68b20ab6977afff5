//! Python module `coltrees_py`.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use coltrees as ct;
use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;

fn err(e: ct::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse<T: std::str::FromStr<Err = ct::Error>>(text: &str) -> PyResult<T> {
    text.parse().map_err(err)
}

/// A zero-one coloring matrix; `Matrix("11;10")` or `Matrix("[[1,1],[1,0]]")`.
#[pyclass(name = "Matrix", frozen, skip_from_py_object, module = "coltrees_py")]
#[derive(Clone)]
pub struct PyMatrix {
    inner: ct::ColoringMatrix,
}

#[pymethods]
impl PyMatrix {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        let inner = if text.trim_start().starts_with('[') {
            ct::parse_matrix_json(text)
        } else {
            ct::parse_matrix(text)
        }
        .map_err(err)?;
        Ok(PyMatrix { inner })
    }

    #[staticmethod]
    fn from_code(m: usize, code: u64) -> PyResult<Self> {
        if m == 0 || m > 8 || (m * m < 64 && code >> (m * m) != 0) {
            return Err(PyValueError::new_err("code does not fit an m x m matrix"));
        }
        Ok(PyMatrix {
            inner: ct::ColoringMatrix::from_code(m, code),
        })
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn code(&self) -> u64 {
        self.inner.code()
    }

    fn rows(&self) -> Vec<Vec<u8>> {
        self.inner.to_rows()
    }

    fn get(&self, i: usize, j: usize) -> PyResult<bool> {
        let m = self.inner.size();
        if !(1..=m).contains(&i) || !(1..=m).contains(&j) {
            return Err(PyIndexError::new_err(format!("entry ({i}, {j}) outside 1..={m}")));
        }
        Ok(self.inner.get(i, j))
    }

    /// Canonical representative and the permutation images mapping `self` onto it.
    fn canonical(&self) -> (PyMatrix, Vec<usize>) {
        let (c, p) = ct::canonical_form(&self.inner);
        (PyMatrix { inner: c }, p.images())
    }

    /// `b[p(i)][p(j)] = a[i][j]` for the 1-based images `p`.
    fn permute(&self, images: Vec<usize>) -> PyResult<PyMatrix> {
        let p = ct::ColorPermutation::from_images(&images).map_err(err)?;
        Ok(PyMatrix {
            inner: ct::apply_permutation(&self.inner, &p).map_err(err)?,
        })
    }

    /// `(ones_total, ones_per_row, three_vertex_sum)`.
    fn invariants(&self) -> (usize, Vec<usize>, u64) {
        let i = ct::necessary_invariants(&self.inner);
        (i.ones_total, i.ones_per_row, i.three_vertex_sum)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Matrix('{}')", self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        (self.inner.size(), self.inner.code()).hash(&mut h);
        h.finish()
    }
}

/// Counts by root color for `n = 1..=depth`.
#[pyclass(name = "SequenceTable", frozen, module = "coltrees_py")]
pub struct PyTable {
    inner: ct::SequenceTable,
}

#[pymethods]
impl PyTable {
    #[getter]
    fn m(&self) -> usize {
        self.inner.m
    }

    #[getter]
    fn depth(&self) -> usize {
        self.inner.depth
    }

    #[getter]
    fn total(&self) -> Vec<BigUint> {
        self.inner.total.clone()
    }

    #[getter]
    fn per_color(&self) -> Vec<Vec<BigUint>> {
        self.inner.per_color.clone()
    }

    fn color(&self, i: usize) -> PyResult<Vec<BigUint>> {
        if !(1..=self.inner.m).contains(&i) {
            return Err(PyIndexError::new_err(format!("color {i} outside 1..={}", self.inner.m)));
        }
        Ok(self.inner.color(i).to_vec())
    }

    fn __repr__(&self) -> String {
        format!("SequenceTable(m={}, depth={})", self.inner.m, self.inner.depth)
    }
}

/// Result of `classify`.
#[pyclass(name = "Catalog", frozen, module = "coltrees_py")]
pub struct PyCatalog {
    inner: ct::ClassificationCatalog,
}

#[pymethods]
impl PyCatalog {
    #[getter]
    fn m(&self) -> usize {
        self.inner.header.m
    }

    #[getter]
    fn depth(&self) -> usize {
        self.inner.header.depth
    }

    /// `(iso, strong, tree, split, triple_split)`.
    fn counts(&self) -> (usize, usize, usize, usize, usize) {
        let s = &self.inner.summary;
        (s.iso_classes, s.strong_classes, s.tree_classes, s.split_tree_classes, s.triple_split_tree_classes)
    }

    /// `(tree, strong)` largest least-separating depths.
    fn max_separating_n(&self) -> (usize, usize) {
        let s = &self.inner.summary;
        (s.max_separating_n_tree, s.max_separating_n_strong)
    }

    fn summary_line(&self) -> String {
        self.inner.summary_line()
    }

    /// Each tree class as `(total, [[canonical matrix text per strong class]])`.
    fn tree_classes(&self) -> Vec<(Vec<BigUint>, Vec<Vec<String>>)> {
        self.inner
            .tree_classes
            .iter()
            .map(|t| {
                let strong = t
                    .strong_classes
                    .iter()
                    .map(|s| s.iso_classes.iter().map(|c| c.canonical.to_string()).collect())
                    .collect();
                (t.total.0.clone(), strong)
            })
            .collect()
    }

    /// Total sequence of the class containing `a`, if `a` has size `m`.
    fn find(&self, a: &PyMatrix) -> Option<Vec<BigUint>> {
        self.inner.find(&a.inner).map(|t| t.total.0.clone())
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyCatalog {
            inner: ct::ClassificationCatalog::from_json(text).map_err(err)?,
        })
    }
}

#[pyfunction]
fn count(a: &PyMatrix, n: usize) -> PyResult<PyTable> {
    Ok(PyTable {
        inner: ct::count_by_root(&a.inner, n).map_err(err)?,
    })
}

/// Counts at exactly `n` vertices by root color, by literal enumeration.
#[pyfunction]
fn brute_force(a: &PyMatrix, n: usize) -> PyResult<Vec<u64>> {
    ct::brute_force_counts(&a.inner, n).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (m, depth=None, allow_m5=false))]
fn classify(py: Python<'_>, m: usize, depth: Option<usize>, allow_m5: bool) -> PyResult<PyCatalog> {
    let opts = ct::ClassifyOptions {
        depth: depth.unwrap_or_else(|| ct::default_depth(m)),
        allow_m5,
    };
    let inner = py.detach(|| ct::classify_all(m, opts)).map_err(err)?;
    Ok(PyCatalog { inner })
}

fn selector(series: &str, m: usize) -> PyResult<ct::SeriesSelector> {
    match series.trim() {
        "total" => Ok(ct::SeriesSelector::Total),
        s => s
            .strip_prefix("color=")
            .and_then(|c| c.parse().ok())
            .filter(|c| (1..=m).contains(c))
            .map(ct::SeriesSelector::Color)
            .ok_or_else(|| PyValueError::new_err(format!("series must be \"total\" or \"color=i\" with i in 1..={m}"))),
    }
}

/// `(True, order)` if annihilated, else `(False, index of first nonzero coefficient)`.
#[pyfunction]
#[pyo3(signature = (a, series, equation, order=30))]
fn verify_equation(a: &PyMatrix, series: &str, equation: &str, order: usize) -> PyResult<(bool, usize)> {
    let sel = selector(series, a.inner.size())?;
    let p = ct::parse_polynomial(equation).map_err(err)?;
    let t = ct::count_by_root(&a.inner, order).map_err(err)?;
    let s = ct::series_from_counts(&t, sel).map_err(err)?;
    Ok(match ct::verify_functional_equation(&p, &s) {
        ct::EquationVerdict::Annihilated { order } => (true, order),
        ct::EquationVerdict::FailsAt { index, .. } => (false, index),
    })
}

/// `(p, q, valid_from)` with `q(n) a(n) = p(n) a(n-1)`; coefficients low to high.
#[pyfunction]
#[pyo3(signature = (terms, max_degree=4))]
fn guess_hypergeometric(terms: Vec<BigInt>, max_degree: usize) -> Option<(Vec<BigInt>, Vec<BigInt>, usize)> {
    ct::guess_hypergeometric(&terms, max_degree).map(|g| (g.p.coeffs().to_vec(), g.q.coeffs().to_vec(), g.valid_from))
}

/// `None` when equal to `depth`, otherwise the separating `n` (0 for an invariant filter).
fn verdict(v: ct::EquivalenceVerdict) -> Option<usize> {
    match v.verdict {
        ct::Verdict::EqualToDepth => None,
        ct::Verdict::DistinguishedAt(n) => Some(n),
        ct::Verdict::FilteredByInvariant(_) => Some(0),
    }
}

#[pyfunction]
#[pyo3(signature = (a, b, depth=16))]
fn tree_coloring_equivalent(a: &PyMatrix, b: &PyMatrix, depth: usize) -> PyResult<Option<usize>> {
    ct::tree_coloring_equivalent(&a.inner, &b.inner, depth).map(verdict).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (a, b, depth=16))]
fn strictly_equivalent(a: &PyMatrix, b: &PyMatrix, depth: usize) -> PyResult<Option<usize>> {
    ct::strictly_equivalent(&a.inner, &b.inner, depth).map(verdict).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (a, b, depth=16))]
fn strongly_equivalent(a: &PyMatrix, b: &PyMatrix, depth: usize) -> PyResult<Option<usize>> {
    ct::strongly_equivalent(&a.inner, &b.inner, depth).map(verdict).map_err(err)
}

/// Moves as `(row, I, J)`.
#[pyfunction]
#[pyo3(signature = (a, depth=16, max_size=3))]
fn find_rewrites(a: &PyMatrix, depth: usize, max_size: usize) -> PyResult<Vec<(usize, Vec<usize>, Vec<usize>)>> {
    let moves = ct::find_rewrites_bounded(&a.inner, depth, max_size).map_err(err)?;
    Ok(moves.into_iter().map(|m| (m.row, m.set_i, m.set_j)).collect())
}

#[pyfunction]
fn apply_rewrite(a: &PyMatrix, row: usize, set_i: Vec<usize>, set_j: Vec<usize>) -> PyResult<PyMatrix> {
    let mv = ct::RewriteMove::new(row, &set_i, &set_j);
    Ok(PyMatrix {
        inner: ct::apply_rewrite(&a.inner, &mv).map_err(err)?,
    })
}

/// Plane tree in parenthesis form to its Dyck path as a `U`/`D` string.
#[pyfunction]
fn glove(tree: &str) -> PyResult<String> {
    Ok(ct::glove(&parse::<ct::PlaneTree>(tree)?).to_string())
}

#[pyfunction]
fn unglove(path: &str) -> PyResult<String> {
    Ok(ct::unglove(&parse::<ct::DyckPath>(path)?).to_string())
}

/// Two-colored tree text, e.g. `"(1(2)(1))"`, to an uncolored plane tree.
#[pyfunction]
fn tau(tree: &str) -> PyResult<String> {
    Ok(ct::tau(&parse::<ct::ColoredTree>(tree)?).map_err(err)?.to_string())
}

#[pyfunction]
fn tau_inv(tree: &str) -> PyResult<String> {
    Ok(ct::tau_inv(&parse::<ct::PlaneTree>(tree)?).map_err(err)?.to_string())
}

#[pyfunction]
fn root3_path(tree: &str) -> PyResult<String> {
    Ok(ct::root3_path(&parse::<ct::ColoredTree>(tree)?).map_err(err)?.to_string())
}

#[pyfunction]
fn root3_path_inv(path: &str) -> PyResult<String> {
    Ok(ct::root3_path_inv(&parse::<ct::DyckPath>(path)?).map_err(err)?.to_string())
}

#[pymodule]
fn coltrees_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyTable>()?;
    m.add_class::<PyCatalog>()?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_equation, m)?)?;
    m.add_function(wrap_pyfunction!(guess_hypergeometric, m)?)?;
    m.add_function(wrap_pyfunction!(tree_coloring_equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(strictly_equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(strongly_equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(find_rewrites, m)?)?;
    m.add_function(wrap_pyfunction!(apply_rewrite, m)?)?;
    m.add_function(wrap_pyfunction!(glove, m)?)?;
    m.add_function(wrap_pyfunction!(unglove, m)?)?;
    m.add_function(wrap_pyfunction!(tau, m)?)?;
    m.add_function(wrap_pyfunction!(tau_inv, m)?)?;
    m.add_function(wrap_pyfunction!(root3_path, m)?)?;
    m.add_function(wrap_pyfunction!(root3_path_inv, m)?)?;
    m.add("CATALOG_VERSION", ct::CATALOG_VERSION)?;
    Ok(())
}
