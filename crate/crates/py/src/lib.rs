//! Python module `hurwitz`: permutations, groups, braid components and
//! their invariants.
//!
//! Elements cross the boundary as cycle strings such as `"(1, 2, 3)"`.
//! Resource limits raise `hurwitz.CapExceeded`; bad input raises
//! `ValueError`.

use std::collections::BTreeMap;
use std::sync::Arc;

use hurwitz_core::braid::{self, ComponentFilter};
use hurwitz_core::galois::{self, make_context, ActionResolution, ContextMode};
use hurwitz_core::lifting;
use hurwitz_core::monoid::{self, NiQuery};
use hurwitz_core::{perm, Caps, ClassSet, GTuple};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(hurwitz, CapExceeded, PyException);

fn to_py(e: hurwitz_core::Error) -> PyErr {
    if e.is_cap() {
        CapExceeded::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn caps() -> Caps {
    Caps::default()
}

#[pyclass(frozen, from_py_object, name = "Permutation", module = "hurwitz")]
#[derive(Clone)]
struct Permutation(perm::Permutation);

#[pymethods]
impl Permutation {
    /// Parses 1-based cycle notation on `degree` points.
    #[new]
    fn new(cycles: &str, degree: usize) -> PyResult<Self> {
        perm::Permutation::parse_cycles(cycles, degree)
            .map(Permutation)
            .map_err(to_py)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn order(&self) -> u64 {
        self.0.order()
    }

    fn inverse(&self) -> Self {
        Permutation(self.0.inverse())
    }

    fn pow(&self, e: i64) -> Self {
        Permutation(self.0.pow(e))
    }

    /// `h g h^-1`.
    fn conjugate_by(&self, h: &Permutation) -> Self {
        Permutation(self.0.conjugate_by(&h.0))
    }

    /// Images of the points 1..=degree.
    fn images(&self) -> Vec<usize> {
        self.0.images().map(|p| p + 1).collect()
    }

    /// Product applying `self` first.
    fn __mul__(&self, other: &Permutation) -> PyResult<Self> {
        self.0.compose(&other.0).map(Permutation).map_err(to_py)
    }

    fn __eq__(&self, other: &Permutation) -> bool {
        self.0 == other.0
    }

    fn __lt__(&self, other: &Permutation) -> bool {
        self.0 < other.0
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation('{}', {})", self.0, self.0.degree())
    }
}

#[pyclass(frozen, skip_from_py_object, name = "Group", module = "hurwitz")]
#[derive(Clone)]
struct Group(perm::PermutationGroup);

#[pymethods]
impl Group {
    #[new]
    fn new(degree: usize, generators: Vec<String>) -> PyResult<Self> {
        let gens = generators
            .iter()
            .map(|s| perm::Permutation::parse_cycles(s, degree))
            .collect::<Result<Vec<_>, _>>()
            .map_err(to_py)?;
        perm::PermutationGroup::new(degree, gens)
            .map(Group)
            .map_err(to_py)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn order(&self) -> u128 {
        self.0.order()
    }

    fn is_transitive(&self) -> bool {
        self.0.is_transitive()
    }

    fn is_abelian(&self) -> bool {
        self.0.is_abelian()
    }

    fn exponent(&self) -> PyResult<u64> {
        Ok(self.0.order_statistics(caps().max_elements).map_err(to_py)?.exponent)
    }

    fn contains(&self, p: &Permutation) -> PyResult<bool> {
        self.0.contains(&p.0).map_err(to_py)
    }

    fn are_conjugate(&self, a: &Permutation, b: &Permutation) -> PyResult<bool> {
        self.0.are_conjugate(&a.0, &b.0, caps().max_orbit).map_err(to_py)
    }

    /// `"transpositions"`, `"nonidentity"`, `"all"`, or a list of elements
    /// whose conjugacy classes are taken.
    fn classes(&self, spec: &Bound<'_, PyAny>) -> PyResult<Classes> {
        let table = Arc::new(self.0.conjugacy_classes(caps().max_elements).map_err(to_py)?);
        let set = if let Ok(name) = spec.extract::<String>() {
            match name.as_str() {
                "transpositions" => ClassSet::filtered(table, perm::Permutation::is_transposition),
                "nonidentity" => ClassSet::nonidentity(table),
                "all" => ClassSet::all(table),
                other => return Err(PyValueError::new_err(format!("unknown class spec `{other}`"))),
            }
        } else {
            let reps: Vec<Permutation> = spec.extract()?;
            let reps: Vec<perm::Permutation> = reps.into_iter().map(|p| p.0).collect();
            ClassSet::closure_of(table, &reps).map_err(to_py)?
        };
        Ok(Classes(set))
    }

    fn __len__(&self) -> usize {
        self.0.order() as usize
    }
}

/// A union of conjugacy classes of a group.
#[pyclass(frozen, skip_from_py_object, name = "Classes", module = "hurwitz")]
#[derive(Clone)]
struct Classes(ClassSet);

#[pymethods]
impl Classes {
    fn elements(&self) -> Vec<Permutation> {
        self.0.elements().into_iter().map(Permutation).collect()
    }

    fn representatives(&self) -> Vec<Permutation> {
        self.0
            .class_ids()
            .iter()
            .map(|&id| Permutation(self.0.table().class(id).representative.clone()))
            .collect()
    }

    fn group(&self) -> Group {
        Group(self.0.group().clone())
    }

    fn generates(&self) -> bool {
        self.0.generates()
    }

    /// Multidiscriminant as `{representative: count}`.
    fn multidiscriminant(&self, x: &Component) -> PyResult<BTreeMap<String, usize>> {
        let mu = braid::multidiscriminant(x.0.canonical(), &self.0).map_err(to_py)?;
        Ok(mu
            .counts()
            .iter()
            .map(|(&id, &n)| (self.0.table().class(id).representative.to_string(), n))
            .collect())
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

/// A braid orbit of product-one tuples, held by its least tuple.
#[pyclass(frozen, from_py_object, name = "Component", module = "hurwitz")]
#[derive(Clone)]
struct Component(braid::Component);

#[pymethods]
impl Component {
    /// The component containing a product-one tuple.
    #[new]
    fn new(perm_degree: usize, entries: Vec<String>) -> PyResult<Self> {
        let t = GTuple::parse(perm_degree, &entries).map_err(to_py)?;
        braid::component_of(&t, caps().max_orbit)
            .map(Component)
            .map_err(to_py)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    #[getter]
    fn perm_degree(&self) -> usize {
        self.0.perm_degree()
    }

    #[getter]
    fn orbit_size(&self) -> usize {
        self.0.orbit_size()
    }

    fn canonical(&self) -> Vec<String> {
        self.0.canonical().to_strings()
    }

    fn monodromy(&self) -> Group {
        Group(self.0.monodromy().clone())
    }

    /// Concatenation.
    fn __mul__(&self, other: &Component) -> PyResult<Self> {
        braid::concat(&self.0, &other.0, caps().max_orbit)
            .map(Component)
            .map_err(to_py)
    }

    fn conjugate(&self, gamma: &Permutation) -> PyResult<Self> {
        braid::conjugate_component(&self.0, &gamma.0, caps().max_orbit)
            .map(Component)
            .map_err(to_py)
    }

    fn __eq__(&self, other: &Component) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.canonical().hash(&mut h);
        h.finish()
    }

    fn __repr__(&self) -> String {
        format!("Component({:?})", self.0.canonical().to_strings())
    }
}

fn unwrap_all(xs: Vec<braid::Component>) -> Vec<Component> {
    xs.into_iter().map(Component).collect()
}

/// The finite cover S_c of the group generated by a class set.
#[pyclass(frozen, name = "SchurCover", module = "hurwitz")]
struct SchurCover(lifting::SchurCover);

#[pymethods]
impl SchurCover {
    #[new]
    fn new(classes: &Classes) -> PyResult<Self> {
        lifting::build_schur_cover(&classes.0, &caps())
            .map(SchurCover)
            .map_err(to_py)
    }

    fn size(&self) -> usize {
        self.0.size()
    }

    fn kernel_order(&self) -> usize {
        self.0.kernel_order()
    }

    fn exponent(&self) -> u64 {
        self.0.exponent()
    }

    /// Lifting invariant of a component as `(s_part, projection, psi)`.
    fn invariant(&self, x: &Component) -> PyResult<(u32, Permutation, BTreeMap<String, usize>)> {
        let v = lifting::lifting_invariant(x.0.canonical(), &self.0).map_err(to_py)?;
        Ok(self.describe(&v))
    }

    /// The invariant of `x` transformed by the unit `k`.
    fn act_invariant(&self, x: &Component, k: u64) -> PyResult<(u32, Permutation, BTreeMap<String, usize>)> {
        let v = lifting::lifting_invariant(x.0.canonical(), &self.0).map_err(to_py)?;
        let w = lifting::galois_act_invariant(&v, k, &self.0).map_err(to_py)?;
        Ok(self.describe(&w))
    }

    /// Candidates for the image of `x` under the unit `k`.
    fn resolve_action(&self, x: &Component, k: u64) -> PyResult<Vec<Component>> {
        Ok(match galois::resolve_action(&x.0, k, &self.0, &caps()).map_err(to_py)? {
            ActionResolution::Determined(y) => vec![Component(y)],
            ActionResolution::Ambiguous(ys) => unwrap_all(ys),
        })
    }

    /// `(estimate or None, collisions)` over degrees up to `degree_cap`.
    fn estimate_m_big(&self, degree_cap: usize) -> PyResult<(Option<usize>, Vec<usize>)> {
        let r = lifting::estimate_m_big(&self.0, degree_cap, &caps()).map_err(to_py)?;
        let est = match r.estimate {
            lifting::MBigEstimate::Estimate(m) => Some(m),
            lifting::MBigEstimate::NotStabilized => None,
        };
        Ok((est, r.collisions_at))
    }
}

impl SchurCover {
    fn describe(&self, v: &lifting::LiftingInvariant) -> (u32, Permutation, BTreeMap<String, usize>) {
        let c = self.0.classes();
        let psi = v
            .psi
            .counts()
            .iter()
            .map(|(&id, &n)| (c.table().class(id).representative.to_string(), n))
            .collect();
        (v.s_part.0, Permutation(self.0.project(v.s_part).clone()), psi)
    }
}

#[pyfunction]
#[pyo3(signature = (classes, degree, generating = false))]
fn enumerate_components(classes: &Classes, degree: usize, generating: bool) -> PyResult<Vec<Component>> {
    braid::enumerate_components(&classes.0, degree, ComponentFilter { generating }, &caps())
        .map(unwrap_all)
        .map_err(to_py)
}

/// The ni set of the factors inside the group they generate.
#[pyfunction]
#[pyo3(signature = (factors, sharp = false))]
fn ni_set(factors: Vec<Component>, sharp: bool) -> PyResult<Vec<Component>> {
    let q = NiQuery::generated(factors.into_iter().map(|x| x.0).collect(), sharp).map_err(to_py)?;
    monoid::ni_set(&q, &caps()).map(unwrap_all).map_err(to_py)
}

#[pyfunction]
fn are_permuting(x: &Component, y: &Component) -> PyResult<bool> {
    monoid::are_permuting(&x.0, &y.0, &caps()).map_err(to_py)
}

#[pyfunction]
fn build_v(classes: &Classes) -> PyResult<Component> {
    monoid::build_v(&classes.0, &caps()).map(Component).map_err(to_py)
}

#[pyfunction]
fn is_complete(classes: &Classes) -> PyResult<bool> {
    monoid::is_complete_class_set(&classes.0, &caps()).map_err(to_py)
}

#[pyfunction]
fn abelian_action(x: &Component, k: u64) -> PyResult<Component> {
    galois::abelian_action(&x.0, k, &caps()).map(Component).map_err(to_py)
}

fn context(modulus: u64, units: Option<Vec<u64>>) -> PyResult<galois::RationalityContext> {
    let mode = match units {
        None => ContextMode::Full,
        Some(u) => ContextMode::Explicit(u),
    };
    make_context(modulus, mode).map_err(to_py)
}

/// Whether an abelian component is fixed by the units (all units modulo
/// the exponent of its monodromy group by default).
#[pyfunction]
#[pyo3(signature = (x, units = None))]
fn is_defined_over_abelian(x: &Component, units: Option<Vec<u64>>) -> PyResult<bool> {
    let e = x.0.monodromy().order_statistics(caps().max_elements).map_err(to_py)?.exponent;
    galois::is_defined_over_abelian(&x.0, &context(e, units)?, &caps()).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (x, classes, units = None))]
fn is_rational_multidiscriminant(x: &Component, classes: &Classes, units: Option<Vec<u64>>) -> PyResult<bool> {
    let e = classes.0.group().order_statistics(caps().max_elements).map_err(to_py)?.exponent;
    galois::is_rational_multidiscriminant(&x.0, &classes.0, &context(e, units)?).map_err(to_py)
}

#[pymodule]
pub fn hurwitz(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Permutation>()?;
    m.add_class::<Group>()?;
    m.add_class::<Classes>()?;
    m.add_class::<Component>()?;
    m.add_class::<SchurCover>()?;
    m.add("CapExceeded", m.py().get_type::<CapExceeded>())?;
    m.add_function(wrap_pyfunction!(enumerate_components, m)?)?;
    m.add_function(wrap_pyfunction!(ni_set, m)?)?;
    m.add_function(wrap_pyfunction!(are_permuting, m)?)?;
    m.add_function(wrap_pyfunction!(build_v, m)?)?;
    m.add_function(wrap_pyfunction!(is_complete, m)?)?;
    m.add_function(wrap_pyfunction!(abelian_action, m)?)?;
    m.add_function(wrap_pyfunction!(is_defined_over_abelian, m)?)?;
    m.add_function(wrap_pyfunction!(is_rational_multidiscriminant, m)?)?;
    Ok(())
}
