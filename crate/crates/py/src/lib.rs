//! Python bindings: graphs, families, templates, the hom* machinery and the
//! solve/verify pipeline.

#[pyo3::pymodule]
mod freesub {
    use std::sync::Arc;

    use freesub_core::bipartite::{bipartize as core_bipartize, Side};
    use freesub_core::cycles::girth;
    use freesub_core::engine::{solve as core_solve, Params};
    use freesub_core::generate::random_regular;
    use freesub_core::homomorphism::{self as hom, FamilySpec, PartialColoring};
    use freesub_core::pattern::contains_pattern;
    use freesub_core::templates::{build_template, CertifiedTemplate};
    use freesub_core::verifier;
    use freesub_core::Error;
    use pyo3::exceptions::{PyRuntimeError, PyValueError};
    use pyo3::prelude::*;

    fn err(e: Error) -> PyErr {
        match e.exit_code() {
            2 => PyValueError::new_err(e.to_string()),
            _ => PyRuntimeError::new_err(e.to_string()),
        }
    }

    fn coloring(n: usize, colors: Vec<Option<usize>>) -> PyResult<PartialColoring> {
        if colors.len() != n {
            return Err(PyValueError::new_err(format!("expected {n} colors, got {}", colors.len())));
        }
        Ok(PartialColoring::from_vec(colors))
    }

    /// Simple undirected graph on vertices `0..n`.
    #[pyclass(frozen, skip_from_py_object)]
    #[derive(Clone)]
    struct Graph {
        inner: freesub_core::Graph,
    }

    #[pymethods]
    impl Graph {
        #[new]
        fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
            Ok(Graph { inner: freesub_core::Graph::from_edges(n, edges).map_err(err)? })
        }

        #[staticmethod]
        fn random_regular(n: usize, d: usize, seed: u64) -> PyResult<Self> {
            Ok(Graph { inner: random_regular(n, d, seed).map_err(err)? })
        }

        #[staticmethod]
        fn complete(n: usize) -> Self {
            Graph { inner: freesub_core::Graph::complete(n) }
        }

        #[staticmethod]
        fn cycle(k: usize) -> Self {
            Graph { inner: freesub_core::Graph::cycle(k) }
        }

        #[staticmethod]
        fn complete_bipartite(a: usize, b: usize) -> Self {
            Graph { inner: freesub_core::Graph::complete_bipartite(a, b) }
        }

        #[staticmethod]
        fn from_edge_list(text: &str) -> PyResult<Self> {
            Ok(Graph { inner: freesub_core::Graph::from_edge_list(text).map_err(err)? })
        }

        fn to_edge_list(&self) -> String {
            self.inner.to_edge_list()
        }

        #[getter]
        fn n(&self) -> usize {
            self.inner.n()
        }

        #[getter]
        fn edge_count(&self) -> usize {
            self.inner.edge_count()
        }

        fn edges(&self) -> Vec<(usize, usize)> {
            self.inner.edges().collect()
        }

        fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
            self.check(v)?;
            Ok(self.inner.neighbors(v).to_vec())
        }

        fn degree(&self, v: usize) -> PyResult<usize> {
            self.check(v)?;
            Ok(self.inner.degree(v))
        }

        fn min_degree(&self) -> usize {
            self.inner.min_degree()
        }

        fn max_degree(&self) -> usize {
            self.inner.max_degree()
        }

        fn is_bipartite(&self) -> bool {
            self.inner.is_bipartite()
        }

        fn girth(&self) -> Option<usize> {
            girth(&self.inner)
        }

        /// Whether `pattern` occurs as a (not necessarily induced) subgraph.
        fn contains(&self, pattern: &Graph) -> bool {
            contains_pattern(&self.inner, &pattern.inner)
        }

        fn __len__(&self) -> usize {
            self.inner.n()
        }

        fn __eq__(&self, other: &Graph) -> bool {
            self.inner == other.inner
        }

        fn __repr__(&self) -> String {
            format!("Graph(n={}, m={})", self.inner.n(), self.inner.edge_count())
        }
    }

    impl Graph {
        fn check(&self, v: usize) -> PyResult<()> {
            if v >= self.inner.n() {
                return Err(PyValueError::new_err(format!("vertex {v} out of range")));
            }
            Ok(())
        }
    }

    /// A family of forbidden patterns, e.g. `Family("C3-C5")`.
    #[pyclass(frozen)]
    struct Family {
        inner: FamilySpec,
    }

    #[pymethods]
    impl Family {
        #[new]
        fn new(name: &str) -> PyResult<Self> {
            Ok(Family { inner: FamilySpec::parse(name).map_err(err)? })
        }

        #[getter]
        fn name(&self) -> String {
            self.inner.name.clone()
        }

        #[getter]
        fn closed(&self) -> bool {
            self.inner.closed
        }

        fn patterns(&self) -> Vec<(String, Graph)> {
            self.inner.patterns.iter().map(|p| (p.name.clone(), Graph { inner: p.graph.clone() })).collect()
        }

        /// Smallest F-free graph admitting a locally injective homomorphism
        /// from a member, or None.
        fn witness(&self, max_n: usize) -> PyResult<Option<Graph>> {
            Ok(hom::closedness_witness_search(&self.inner, max_n).map_err(err)?.map(|inner| Graph { inner }))
        }

        fn __repr__(&self) -> String {
            format!("Family({:?})", self.inner.name)
        }
    }

    /// A certified template graph whose vertices serve as colors.
    #[pyclass(frozen)]
    struct Template {
        inner: Arc<CertifiedTemplate>,
    }

    #[pymethods]
    impl Template {
        #[staticmethod]
        #[pyo3(signature = (family, d, alpha = 64.0, seed = 0))]
        fn build(family: &Family, d: usize, alpha: f64, seed: u64) -> PyResult<Self> {
            Ok(Template { inner: Arc::new(build_template(&family.inner, d, alpha, seed).map_err(err)?) })
        }

        #[getter]
        fn graph(&self) -> Graph {
            Graph { inner: self.inner.graph().clone() }
        }

        #[getter]
        fn order(&self) -> usize {
            self.inner.order()
        }

        #[getter]
        fn delta(&self) -> usize {
            self.inner.delta()
        }

        #[getter]
        fn max_degree(&self) -> usize {
            self.inner.max_degree()
        }

        #[getter]
        fn beta(&self) -> f64 {
            self.inner.beta()
        }

        #[getter]
        fn construction(&self) -> String {
            self.inner.construction().to_string()
        }

        #[getter]
        fn certificate(&self) -> String {
            format!("{:?}", self.inner.certificate())
        }

        fn to_text(&self) -> String {
            self.inner.to_text()
        }

        fn __repr__(&self) -> String {
            format!("Template({}, order={})", self.inner.construction(), self.inner.order())
        }
    }

    #[pyclass(frozen, get_all)]
    struct Verdict {
        spanning: bool,
        subgraph: bool,
        rainbow: bool,
        edge_consistent: bool,
        f_free: bool,
        min_degree: usize,
        target_degree: f64,
    }

    #[pymethods]
    impl Verdict {
        fn is_fully_true(&self) -> bool {
            self.spanning && self.subgraph && self.rainbow && self.edge_consistent && self.f_free
        }

        fn __repr__(&self) -> String {
            format!("Verdict(fully_true={}, min_degree={})", self.is_fully_true(), self.min_degree)
        }
    }

    impl From<verifier::Verdict> for Verdict {
        fn from(v: verifier::Verdict) -> Self {
            Verdict {
                spanning: v.spanning,
                subgraph: v.subgraph,
                rainbow: v.rainbow,
                edge_consistent: v.edge_consistent,
                f_free: v.f_free,
                min_degree: v.min_degree,
                target_degree: v.target_degree,
            }
        }
    }

    /// Output of `solve`.
    #[pyclass(frozen)]
    struct Solution {
        #[pyo3(get)]
        subgraph: Py<Graph>,
        #[pyo3(get)]
        coloring: Vec<Option<usize>>,
        #[pyo3(get)]
        template: Py<Template>,
        #[pyo3(get)]
        report_json: String,
        #[pyo3(get)]
        min_degree: usize,
        #[pyo3(get)]
        target_degree: f64,
        #[pyo3(get)]
        verified: bool,
        #[pyo3(get)]
        retries: usize,
        #[pyo3(get)]
        tau: usize,
    }

    /// Runs the two-phase coloring pipeline on a regular graph.
    #[pyfunction]
    #[pyo3(signature = (graph, family, alpha = 64.0, seed = 0, max_retries = 20))]
    fn solve(py: Python<'_>, graph: &Graph, family: &Family, alpha: f64, seed: u64, max_retries: usize) -> PyResult<Solution> {
        let g = &graph.inner;
        let d = g.regular_degree().ok_or(Error::NotRegular).map_err(err)?;
        let params = Params { alpha, max_retries, seed, ..Params::default() };
        let sol = py
            .detach(|| {
                let t = build_template(&family.inner, d, alpha, seed)?;
                core_solve(g, &family.inner, Arc::new(t), &params)
            })
            .map_err(err)?;
        let r = &sol.report;
        Ok(Solution {
            min_degree: r.min_degree,
            target_degree: r.target_degree,
            verified: r.verdict.is_fully_true(),
            retries: r.retries,
            tau: r.tau,
            report_json: r.to_json(),
            coloring: sol.coloring.as_slice().to_vec(),
            subgraph: Py::new(py, Graph { inner: sol.h })?,
            template: Py::new(py, Template { inner: sol.template })?,
        })
    }

    #[pyfunction]
    fn verify(graph: &Graph, subgraph: &Graph, coloring: Vec<Option<usize>>, template: &Template, family: &Family) -> PyResult<Verdict> {
        let chi = self::coloring(subgraph.inner.n(), coloring)?;
        Ok(verifier::verify_solution(&graph.inner, &subgraph.inner, &chi, template.inner.template(), &family.inner).into())
    }

    /// `Bad(v, χ, G)` for a coloring given as a list with None for uncolored.
    #[pyfunction]
    fn bad_count(v: usize, colors: Vec<Option<usize>>, graph: &Graph) -> PyResult<usize> {
        graph.check(v)?;
        let chi = coloring(graph.inner.n(), colors)?;
        hom::bad_count(v, &chi, &graph.inner).map_err(err)
    }

    /// Number of locally injective homomorphisms `pattern → target`.
    #[pyfunction]
    #[pyo3(signature = (pattern, target, early_exit = false))]
    fn count_homs(pattern: &Graph, target: &Graph, early_exit: bool) -> PyResult<u64> {
        hom::count_locally_injective_homs(&pattern.inner, &target.inner, early_exit).map_err(err)
    }

    /// Sides (True for A) and the bipartite subgraph of cut edges.
    #[pyfunction]
    fn bipartize(graph: &Graph) -> (Vec<bool>, Graph) {
        let (sides, h) = core_bipartize(&graph.inner);
        (sides.sides().iter().map(|&s| s == Side::A).collect(), Graph { inner: h })
    }
}
