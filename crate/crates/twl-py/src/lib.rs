//! Python module `twl_py`. Every function takes a ring as spec TOML text, a spec file path,
//! or a bundled name (`f4`, `f5`, `f7`, `f9`, `f9-id`, `hamilton`), and returns
//! `(ok, text)` with the same text the `twl` binary prints.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use twl::cli::{self, Output, RunConfig};
use twl::symbols::Presentation;
use twl::{Ring, TwlError};

fn err(e: TwlError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn ring(spec: &str) -> PyResult<Ring> {
    if spec.contains("kind") {
        Ring::from_spec_text(spec).map_err(err)
    } else {
        cli::load_ring(spec).map_err(err)
    }
}

fn kind(name: &str) -> PyResult<Presentation> {
    match name {
        "P" | "p" => Ok(Presentation::P),
        "Q" | "q" => Ok(Presentation::Q),
        other => Err(PyValueError::new_err(format!("kind must be P or Q, got {other:?}"))),
    }
}

fn config(spec: &str, n: usize, samples: usize, seed: u64, degree_cap: i64) -> PyResult<RunConfig> {
    let mut cfg = RunConfig::new(ring(spec)?, n).map_err(err)?;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.degree_cap = degree_cap;
    Ok(cfg)
}

fn pair(out: twl::Result<Output>) -> PyResult<(bool, String)> {
    out.map(|o| (o.ok, o.text)).map_err(err)
}

/// Canonical description of a ring.
#[pyfunction]
fn describe_ring(spec: &str) -> PyResult<String> {
    Ok(ring(spec)?.describe())
}

#[pyfunction]
#[pyo3(signature = (ring, n, word, steinberg = false))]
fn evaluate(ring: &str, n: usize, word: &str, steinberg: bool) -> PyResult<(bool, String)> {
    pair(cli::eval(&config(ring, n, 0, 0, 0)?, word, steinberg))
}

#[pyfunction]
fn factor(ring: &str, n: usize, word: &str) -> PyResult<(bool, String)> {
    pair(cli::factor(&config(ring, n, 0, 0, 0)?, word))
}

#[pyfunction]
fn rho(ring: &str, n: usize, word: &str) -> PyResult<(bool, String)> {
    pair(cli::rho(&config(ring, n, 0, 0, 0)?, word))
}

#[pyfunction]
#[pyo3(signature = (ring, word, kind = "P"))]
fn symbol_image(ring: &str, word: &str, kind: &str) -> PyResult<(bool, String)> {
    pair(cli::symbol_eval(&self::ring(ring)?, self::kind(kind)?, word))
}

#[pyfunction]
#[pyo3(signature = (ring, word, kind = "P"))]
fn k2_witness(ring: &str, word: &str, kind: &str) -> PyResult<(bool, String)> {
    pair(cli::k2_witness(&self::ring(ring)?, self::kind(kind)?, word))
}

#[pyfunction]
#[pyo3(signature = (which, ring, n = 2, samples = 1000, seed = 0, degree_cap = 3, max_len = 12))]
fn audit(which: &str, ring: &str, n: usize, samples: usize, seed: u64, degree_cap: i64, max_len: usize) -> PyResult<(bool, String)> {
    let cfg = config(ring, n, samples, seed, degree_cap)?;
    pair(cli::audit(which, max_len, &cfg.audit_config()).map(Output::from))
}

#[pyfunction]
#[pyo3(signature = (family, ring, n = 2, samples = 200, seed = 0, degree_cap = 3))]
fn extension_check(family: &str, ring: &str, n: usize, samples: usize, seed: u64, degree_cap: i64) -> PyResult<(bool, String)> {
    pair(cli::extension_check(&config(ring, n, samples, seed, degree_cap)?, family))
}

#[pymodule]
fn twl_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(describe_ring, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(factor, m)?)?;
    m.add_function(wrap_pyfunction!(rho, m)?)?;
    m.add_function(wrap_pyfunction!(symbol_image, m)?)?;
    m.add_function(wrap_pyfunction!(k2_witness, m)?)?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    m.add_function(wrap_pyfunction!(extension_check, m)?)?;
    Ok(())
}
