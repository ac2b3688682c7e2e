//! Python bindings: the main types and operations of the exact-arithmetic
//! symmetrizer toolkit, with rationals crossing the boundary as "num/den"
//! strings so nothing is ever rounded.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qma_core::report::{run_tower, BackendSpec, RMatrixSpec, RunSpec};
use qma_core::scalar::{QValue, Rationals};
use qma_core::tower::{classical_oracle, coefficients_s3, SymmetrizerTower, TowerOptions};
use qma_core::twist::TwistKind;
use qma_core::{quantum_integer as qint, Field};

fn err(e: qma_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_q(q: &str) -> PyResult<QValue> {
    QValue::parse(q).map_err(err)
}

/// A validated braiding R on V⊗V with its Hecke parameter.
#[pyclass(name = "HeckeSymmetry", frozen)]
struct PyHecke {
    inner: qma_core::HeckeSymmetry<Rationals>,
}

#[pymethods]
impl PyHecke {
    /// Dimension N of the base space V.
    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn q(&self) -> String {
        self.inner.q().to_string()
    }

    #[getter]
    fn source(&self) -> String {
        self.inner.source().label()
    }

    /// Side length of the matrix (N²).
    #[getter]
    fn dim(&self) -> usize {
        self.inner.matrix().dim()
    }

    /// All entries as exact "num/den" strings, row-major.
    fn entries(&self) -> Vec<Vec<String>> {
        let m = self.inner.matrix();
        (0..m.dim())
            .map(|i| (0..m.dim()).map(|j| m.get(i, j).to_string()).collect())
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "HeckeSymmetry(source={}, N={}, q={})",
            self.inner.source().label(),
            self.inner.n(),
            self.inner.q()
        )
    }
}

/// The twist operator on W⊗W whose fixed points encode the quadratic
/// relations.
#[pyclass(name = "TwistOperator", frozen)]
struct PyTwist {
    inner: qma_core::TwistOperator<Rationals>,
}

#[pymethods]
impl PyTwist {
    #[getter]
    fn kind(&self) -> String {
        self.inner.kind().label().to_owned()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn q(&self) -> String {
        self.inner.q().to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.matrix().dim()
    }

    /// Ascending exact coefficients of the minimal polynomial.
    fn minimal_polynomial(&self) -> PyResult<Vec<String>> {
        let mp = self.inner.matrix().minimal_polynomial().map_err(err)?;
        Ok(mp.as_poly().coeffs().iter().map(|c| c.to_string()).collect())
    }

    /// Dimension of the quadratic-relation space Im(twist − I).
    fn relation_space_dim(&self) -> usize {
        self.inner.relation_space_dim()
    }

    fn __repr__(&self) -> String {
        format!(
            "TwistOperator(kind={}, N={}, q={}, dim={})",
            self.inner.kind().label(),
            self.inner.n(),
            self.inner.q(),
            self.inner.matrix().dim()
        )
    }
}

/// The chain of symmetrizers S⁽²⁾..S⁽ⁿ⁾ with their minimal polynomials.
#[pyclass(name = "SymmetrizerTower", frozen)]
struct PyTower {
    inner: SymmetrizerTower<Rationals>,
}

#[pymethods]
impl PyTower {
    /// Levels present (2..=n_max).
    fn levels(&self) -> Vec<usize> {
        self.inner.levels().iter().map(|l| l.n).collect()
    }

    /// rank(S⁽ⁿ⁾) = trace(S⁽ⁿ⁾) per level, in level order.
    fn dimensions(&self) -> Vec<usize> {
        self.inner.levels().iter().map(|l| l.dimension).collect()
    }

    /// Ascending exact coefficients of the level polynomial (levels ≥ 3).
    fn minimal_polynomial(&self, n: usize) -> Option<Vec<String>> {
        self.inner.level(n)?.m.as_ref().map(|m| {
            m.as_poly().coeffs().iter().map(|c| c.to_string()).collect()
        })
    }

    /// Exact (root, multiplicity) pairs of the level polynomial.
    fn roots(&self, n: usize) -> Option<Vec<(String, usize)>> {
        self.inner.level(n)?.roots.as_ref().map(|rd| {
            rd.roots
                .iter()
                .map(|(v, mult)| (v.to_string(), *mult))
                .collect()
        })
    }

    fn kappa(&self, n: usize) -> Option<String> {
        self.inner.level(n)?.kappa.as_ref().map(|k| k.to_string())
    }

    /// True when idempotency, absorption, and interchange checks all passed.
    fn checks_pass(&self) -> bool {
        self.inner.all_checks_pass()
    }

    /// The (alpha, beta, gamma, sum, degenerate) expansion of S⁽³⁾ over
    /// {S₁₂S₂₃S₁₂S₂₃S₁₂, S₁₂S₂₃S₁₂, S₁₂}.
    fn coefficients_s3(&self) -> PyResult<(String, String, String, String, bool)> {
        let c = coefficients_s3(&self.inner).map_err(err)?;
        Ok((
            c.alpha.to_string(),
            c.beta.to_string(),
            c.gamma.to_string(),
            c.sum.to_string(),
            c.degenerate,
        ))
    }

    fn __repr__(&self) -> String {
        format!(
            "SymmetrizerTower(kind={}, N={}, q={}, levels=2..={})",
            self.inner.twist().kind().label(),
            self.inner.twist().n(),
            self.inner.q(),
            self.inner.top_n()
        )
    }
}

/// Quantum integer k_q as an exact "num/den" string.
#[pyfunction]
fn quantum_integer(k: i64, q: &str) -> PyResult<String> {
    Ok(qint(k, &parse_q(q)?).to_string())
}

/// The classical flip at q = 1.
#[pyfunction]
fn flip(n: usize) -> PyResult<PyHecke> {
    Ok(PyHecke { inner: qma_core::flip(&Rationals, n).map_err(err)? })
}

/// The graded flip with `even` + `odd` directions at q = 1.
#[pyfunction]
fn super_flip(even: usize, odd: usize) -> PyResult<PyHecke> {
    Ok(PyHecke { inner: qma_core::super_flip(&Rationals, even, odd).map_err(err)? })
}

/// The standard GL_q(N) Hecke symmetry at an exact rational q.
#[pyfunction]
fn standard_glq(n: usize, q: &str) -> PyResult<PyHecke> {
    Ok(PyHecke { inner: qma_core::standard_glq(&Rationals, n, &parse_q(q)?).map_err(err)? })
}

/// Load and validate a qma-matrix-v1 file.
#[pyfunction]
fn load_hecke(path: &str) -> PyResult<PyHecke> {
    Ok(PyHecke { inner: qma_core::load_hecke(&Rationals, path).map_err(err)? })
}

/// The RTT twist of a validated Hecke symmetry.
#[pyfunction]
fn rtt_twist(h: &PyHecke) -> PyResult<PyTwist> {
    Ok(PyTwist { inner: qma_core::rtt_twist(&h.inner).map_err(err)? })
}

/// The reflection-equation twist of a validated Hecke symmetry.
#[pyfunction]
fn re_twist(h: &PyHecke) -> PyResult<PyTwist> {
    Ok(PyTwist { inner: qma_core::re_twist(&h.inner).map_err(err)? })
}

/// Build the symmetrizer tower to `n_max`.
#[pyfunction]
#[pyo3(signature = (twist, n_max, full_checks = false))]
fn build_tower(twist: &PyTwist, n_max: usize, full_checks: bool) -> PyResult<PyTower> {
    let opts = if full_checks {
        TowerOptions::to_level(n_max).with_full_checks()
    } else {
        TowerOptions::to_level(n_max)
    };
    let tower = SymmetrizerTower::build(twist.inner.clone(), &opts).map_err(err)?;
    Ok(PyTower { inner: tower })
}

/// Rank of the brute-force permutation-averaged symmetrizer on W⊗ⁿ.
#[pyfunction]
fn classical_oracle_rank(n: usize, big_n: usize) -> PyResult<usize> {
    Ok(classical_oracle(n, big_n).map_err(err)?.rank())
}

/// Full tower report as canonical JSON, through the same driver the CLI
/// uses. `backend` is "rational", "prime:p", or "multiprime:p1,p2".
#[pyfunction]
#[pyo3(signature = (rmatrix, n, q, kind = "rtt", n_max = 4, backend = "rational"))]
fn tower_report_json(
    rmatrix: &str,
    n: usize,
    q: &str,
    kind: &str,
    n_max: usize,
    backend: &str,
) -> PyResult<String> {
    let rmatrix = match rmatrix {
        "flip" => RMatrixSpec::Flip { n },
        "glq" => RMatrixSpec::Glq { n },
        other => {
            if let Some(path) = other.strip_prefix("file:") {
                RMatrixSpec::File { path: path.to_owned() }
            } else {
                return Err(PyValueError::new_err(format!(
                    "rmatrix must be flip, glq, or file:<path>, got {other:?}"
                )));
            }
        }
    };
    let kind = match kind {
        "rtt" => TwistKind::Rtt,
        "re" => TwistKind::Re,
        other => return Err(PyValueError::new_err(format!("kind must be rtt or re, got {other:?}"))),
    };
    let spec = RunSpec {
        command: "tower".into(),
        rmatrix,
        q: parse_q(q)?,
        kind,
        n_max,
        backend: BackendSpec::parse(backend).map_err(err)?,
        format: "json".into(),
        full_checks: false,
    };
    Ok(run_tower(&spec).map_err(err)?.canonical_json())
}

/// Residue of an exact rational mod p.
#[pyfunction]
fn to_prime_field(value: &str, p: u64) -> PyResult<u64> {
    let v = qma_core::Rational::parse(value).map_err(err)?;
    Ok(qma_core::to_prime_field(&v, p).map_err(err)?.residue())
}

/// Evaluate k_q in the prime field Z/p (q given as "num/den").
#[pyfunction]
fn quantum_integer_mod(k: i64, q: &str, p: u64) -> PyResult<u64> {
    let field = qma_core::PrimeField::new(p).map_err(err)?;
    let qv = parse_q(q)?;
    let q_elem = field.from_rational(qv.rational()).map_err(err)?;
    qma_core::scalar::quantum_integer_in(&field, k, &q_elem).map_err(err)
}

#[pymodule]
fn qma_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHecke>()?;
    m.add_class::<PyTwist>()?;
    m.add_class::<PyTower>()?;
    m.add_function(wrap_pyfunction!(quantum_integer, m)?)?;
    m.add_function(wrap_pyfunction!(quantum_integer_mod, m)?)?;
    m.add_function(wrap_pyfunction!(to_prime_field, m)?)?;
    m.add_function(wrap_pyfunction!(flip, m)?)?;
    m.add_function(wrap_pyfunction!(super_flip, m)?)?;
    m.add_function(wrap_pyfunction!(standard_glq, m)?)?;
    m.add_function(wrap_pyfunction!(load_hecke, m)?)?;
    m.add_function(wrap_pyfunction!(rtt_twist, m)?)?;
    m.add_function(wrap_pyfunction!(re_twist, m)?)?;
    m.add_function(wrap_pyfunction!(build_tower, m)?)?;
    m.add_function(wrap_pyfunction!(classical_oracle_rank, m)?)?;
    m.add_function(wrap_pyfunction!(tower_report_json, m)?)?;
    Ok(())
}
