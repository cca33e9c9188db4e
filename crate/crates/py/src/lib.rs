//! Python bindings: `import lsclique`.

use engine::{EnumCounters, EnumOptions, InputFormat, StreamConfig, Time, TimedClique};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

type PyClique = (Time, Time, Vec<String>);

#[pyclass(name = "LinkStream", module = "lsclique", frozen)]
struct PyLinkStream {
    inner: engine::LinkStream,
}

#[pymethods]
impl PyLinkStream {
    /// Parses `b e u v` lines (`format="interval"`) or `t u v` lines
    /// (`format="instantaneous"`, each contact lasting `delta`).
    #[staticmethod]
    #[pyo3(signature = (text, format = "interval", delta = 0))]
    fn parse(text: &str, format: &str, delta: Time) -> PyResult<Self> {
        let config = match format.parse::<InputFormat>().map_err(PyValueError::new_err)? {
            InputFormat::Interval => StreamConfig::interval(),
            InputFormat::Instantaneous => StreamConfig::instantaneous(delta),
        };
        let inner = engine::LinkStream::parse(text, &config).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Self { inner })
    }

    /// Builds a stream from `(b, e, u, v)` tuples with string labels.
    #[staticmethod]
    fn from_links(links: Vec<(Time, Time, String, String)>) -> PyResult<Self> {
        let inner = engine::LinkStream::from_labeled(links.iter().map(|(b, e, u, v)| (*b, *e, u.as_str(), v.as_str())))
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Self { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    /// Normalized links as `(b, e, u, v)` tuples.
    fn links(&self) -> Vec<(Time, Time, String, String)> {
        self.inner
            .links()
            .iter()
            .map(|l| (l.begin, l.end, self.inner.label(l.u).to_owned(), self.inner.label(l.v).to_owned()))
            .collect()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __len__(&self) -> usize {
        self.inner.m()
    }

    fn __repr__(&self) -> String {
        format!("LinkStream(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

#[pyclass(name = "Counters", module = "lsclique", frozen, get_all)]
struct PyCounters {
    n: usize,
    m: usize,
    distinct_instants: usize,
    max_degree: usize,
    max_clique_size: usize,
    alpha: u64,
    alpha_t: u64,
    leaves: u64,
    leaves_max: u64,
    r: f64,
    wall_time_secs: f64,
    worker_wall_time_secs: Vec<f64>,
}

impl PyCounters {
    fn new(c: &EnumCounters, workers: Vec<f64>) -> Self {
        Self {
            n: c.n,
            m: c.m,
            distinct_instants: c.distinct_instants,
            max_degree: c.max_degree,
            max_clique_size: c.max_clique_size,
            alpha: c.alpha,
            alpha_t: c.alpha_t,
            leaves: c.leaves,
            leaves_max: c.leaves_max,
            r: c.ratio(),
            wall_time_secs: c.wall_time_secs,
            worker_wall_time_secs: workers,
        }
    }
}

#[pymethods]
impl PyCounters {
    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        d.set_item("n", self.n)?;
        d.set_item("m", self.m)?;
        d.set_item("distinct_instants", self.distinct_instants)?;
        d.set_item("max_degree", self.max_degree)?;
        d.set_item("max_clique_size", self.max_clique_size)?;
        d.set_item("alpha", self.alpha)?;
        d.set_item("alpha_t", self.alpha_t)?;
        d.set_item("leaves", self.leaves)?;
        d.set_item("leaves_max", self.leaves_max)?;
        d.set_item("r", self.r)?;
        d.set_item("wall_time_secs", self.wall_time_secs)?;
        d.set_item("worker_wall_time_secs", self.worker_wall_time_secs.clone())?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!(
            "Counters(alpha={}, alpha_t={}, leaves={}, leaves_max={}, max_degree={}, max_clique_size={})",
            self.alpha, self.alpha_t, self.leaves, self.leaves_max, self.max_degree, self.max_clique_size
        )
    }
}

fn to_py(stream: &engine::LinkStream, c: &TimedClique) -> PyClique {
    (c.t0, c.t1, c.labels(stream).into_iter().map(str::to_owned).collect())
}

/// Maximal cliques as `(t0, t1, members)` tuples plus the run's counters.
/// Members are labels sorted bytewise.
#[pyfunction]
#[pyo3(signature = (stream, pivot = true, threads = 1))]
fn enumerate(py: Python<'_>, stream: &PyLinkStream, pivot: bool, threads: usize) -> PyResult<(Vec<PyClique>, PyCounters)> {
    if threads == 0 {
        return Err(PyValueError::new_err("threads must be at least 1"));
    }
    let s = &stream.inner;
    let run = py.detach(|| engine::parallel_enumerate(s, threads, &EnumOptions::with_pivot(pivot)));
    let cliques = run.cliques.iter().map(|c| to_py(s, c)).collect();
    Ok((cliques, PyCounters::new(&run.counters, run.worker_wall_times)))
}

/// Brute-force reference enumeration, sorted. Refuses large streams unless `force`.
#[pyfunction]
#[pyo3(signature = (stream, force = false))]
fn oracle(py: Python<'_>, stream: &PyLinkStream, force: bool) -> PyResult<Vec<PyClique>> {
    let s = &stream.inner;
    let set = py
        .detach(|| engine::oracle_enumerate(s, force))
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(set.iter().map(|c| to_py(s, c)).collect())
}

/// The parallel driver's ranges as `(lo, hi, links)`; `hi` is `None` for the open last range.
#[pyfunction]
fn split(stream: &PyLinkStream, threads: usize) -> PyResult<Vec<(Time, Option<Time>, usize)>> {
    if threads == 0 {
        return Err(PyValueError::new_err("threads must be at least 1"));
    }
    let plan = engine::split_intervals(&stream.inner, threads);
    Ok(plan
        .ranges()
        .zip(&plan.counts)
        .map(|((lo, hi), &n)| (lo, (hi != Time::MAX).then_some(hi), n))
        .collect())
}

#[pymodule]
fn lsclique(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLinkStream>()?;
    m.add_class::<PyCounters>()?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(split, m)?)?;
    Ok(())
}
