//! Tuples, the braid action, braid orbits and the monoid of components.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::perm::{ClassSet, Permutation, PermutationGroup};
use crate::{Caps, Error, Result};

/// An ordered tuple of permutations of one common degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GTuple {
    perm_degree: usize,
    entries: Vec<Permutation>,
}

impl GTuple {
    pub fn new(perm_degree: usize, entries: Vec<Permutation>) -> Result<Self> {
        for e in &entries {
            if e.degree() != perm_degree {
                return Err(Error::DegreeMismatch {
                    expected: perm_degree,
                    found: e.degree(),
                });
            }
        }
        Ok(GTuple {
            perm_degree,
            entries,
        })
    }

    pub fn empty(perm_degree: usize) -> Self {
        GTuple {
            perm_degree,
            entries: Vec::new(),
        }
    }

    /// Parses a list of cycle-notation strings.
    pub fn parse<S: AsRef<str>>(perm_degree: usize, entries: &[S]) -> Result<Self> {
        let entries = entries
            .iter()
            .map(|s| Permutation::parse_cycles(s.as_ref(), perm_degree))
            .collect::<Result<Vec<_>>>()?;
        Ok(GTuple {
            perm_degree,
            entries,
        })
    }

    /// Degree of the permutations (the ambient symmetric group).
    pub fn perm_degree(&self) -> usize {
        self.perm_degree
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Permutation] {
        &self.entries
    }

    /// Left-to-right product `g_1 g_2 ... g_n`.
    pub fn product(&self) -> Permutation {
        self.entries
            .iter()
            .fold(Permutation::identity(self.perm_degree), |acc, g| acc.mul(g))
    }

    pub fn is_product_one(&self) -> bool {
        self.product().is_identity()
    }

    /// Applies `sigma_i` (1-based `i`), or its inverse.
    pub fn braid_move(&self, i: usize, inverse: bool) -> Result<GTuple> {
        let n = self.len();
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        let (a, b) = (&self.entries[i - 1], &self.entries[i]);
        let (x, y) = if inverse {
            (b.clone(), a.conjugate_by(&b.inverse()))
        } else {
            (b.conjugate_by(a), a.clone())
        };
        let mut entries = self.entries.clone();
        entries[i - 1] = x;
        entries[i] = y;
        Ok(GTuple {
            perm_degree: self.perm_degree,
            entries,
        })
    }

    /// Entrywise conjugate `(g_1^h, .., g_n^h)`.
    pub fn conjugate_by(&self, h: &Permutation) -> GTuple {
        GTuple {
            perm_degree: self.perm_degree,
            entries: self.entries.iter().map(|g| g.conjugate_by(h)).collect(),
        }
    }

    pub fn concat(&self, other: &GTuple) -> Result<GTuple> {
        if self.perm_degree != other.perm_degree {
            return Err(Error::DegreeMismatch {
                expected: self.perm_degree,
                found: other.perm_degree,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(GTuple {
            perm_degree: self.perm_degree,
            entries,
        })
    }

    /// The group `<g_1, .., g_n>`.
    pub fn group(&self) -> PermutationGroup {
        PermutationGroup::new(self.perm_degree, self.entries.clone()).expect("checked degrees")
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.to_string()).collect()
    }
}

impl fmt::Debug for GTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.iter()).finish()
    }
}

/// A braid orbit of product-one tuples, identified by its lexicographically
/// least member.
#[derive(Clone)]
pub struct Component {
    canonical: GTuple,
    orbit_size: usize,
    monodromy: Arc<PermutationGroup>,
}

impl Component {
    pub fn canonical(&self) -> &GTuple {
        &self.canonical
    }

    /// Number of tuples in the braid orbit.
    pub fn orbit_size(&self) -> usize {
        self.orbit_size
    }

    /// The group generated by the entries of any representative.
    pub fn monodromy(&self) -> &PermutationGroup {
        &self.monodromy
    }

    /// Number of entries (the grading of the monoid).
    pub fn degree(&self) -> usize {
        self.canonical.len()
    }

    pub fn perm_degree(&self) -> usize {
        self.canonical.perm_degree()
    }
}

impl PartialEq for Component {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl Eq for Component {}

impl PartialOrd for Component {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Component {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical.cmp(&other.canonical)
    }
}

impl std::hash::Hash for Component {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical.hash(state)
    }
}

impl fmt::Debug for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "comp{:?}", self.canonical)
    }
}

/// Interned group elements with a memo of conjugations, used to run orbit
/// searches on compact index tuples.
#[derive(Default)]
struct Interner {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    conj: HashMap<(u32, u32), u32>,
}

impl Interner {
    fn intern(&mut self, p: &Permutation) -> u32 {
        if let Some(&i) = self.index.get(p) {
            return i;
        }
        let i = self.elements.len() as u32;
        self.elements.push(p.clone());
        self.index.insert(p.clone(), i);
        i
    }

    /// Index of `g^h = h g h^{-1}`.
    fn conjugate(&mut self, g: u32, h: u32) -> u32 {
        if g == h {
            return g;
        }
        if let Some(&r) = self.conj.get(&(g, h)) {
            return r;
        }
        let p = self.elements[g as usize].conjugate_by(&self.elements[h as usize]);
        let r = self.intern(&p);
        self.conj.insert((g, h), r);
        r
    }

    fn cmp_tuples(&self, a: &[u32], b: &[u32]) -> Ordering {
        for (&x, &y) in a.iter().zip(b) {
            if x != y {
                return self.elements[x as usize].cmp(&self.elements[y as usize]);
            }
        }
        a.len().cmp(&b.len())
    }
}

/// Computes braid orbits and remembers every tuple already placed in an
/// orbit, so repeated queries landing in a known orbit are lookups.
///
/// Orbits are closed under the forward moves `sigma_i` only: on a finite
/// orbit each `sigma_i` acts as a permutation, so its inverse is a power.
pub struct Canonicalizer {
    perm_degree: usize,
    orbit_cap: usize,
    interner: Interner,
    seen: HashMap<Box<[u32]>, usize>,
    components: Vec<Component>,
}

impl Canonicalizer {
    pub fn new(perm_degree: usize, orbit_cap: usize) -> Self {
        Canonicalizer {
            perm_degree,
            orbit_cap,
            interner: Interner::default(),
            seen: HashMap::new(),
            components: Vec::new(),
        }
    }

    pub fn perm_degree(&self) -> usize {
        self.perm_degree
    }

    /// Number of tuples indexed so far.
    pub fn indexed_tuples(&self) -> usize {
        self.seen.len()
    }

    fn encode(&mut self, t: &GTuple) -> Box<[u32]> {
        t.entries.iter().map(|e| self.interner.intern(e)).collect()
    }

    fn decode(&self, key: &[u32]) -> GTuple {
        GTuple {
            perm_degree: self.perm_degree,
            entries: key
                .iter()
                .map(|&i| self.interner.elements[i as usize].clone())
                .collect(),
        }
    }

    /// Whether the tuple already belongs to a computed orbit.
    pub fn is_known(&mut self, t: &GTuple) -> bool {
        let key = self.encode(t);
        self.seen.contains_key(&key)
    }

    /// The component of a product-one tuple.
    pub fn component_of(&mut self, t: &GTuple) -> Result<Component> {
        if t.perm_degree != self.perm_degree {
            return Err(Error::DegreeMismatch {
                expected: self.perm_degree,
                found: t.perm_degree,
            });
        }
        if !t.is_product_one() {
            return Err(Error::NotProductOne);
        }
        let start = self.encode(t);
        if let Some(&id) = self.seen.get(&start) {
            return Ok(self.components[id].clone());
        }
        let n = start.len();
        let mut orbit: HashSet<Box<[u32]>> = HashSet::new();
        orbit.insert(start.clone());
        let mut frontier = vec![start.clone()];
        let mut best = start;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for i in 0..n.saturating_sub(1) {
                    let (a, b) = (s[i], s[i + 1]);
                    if a == b {
                        continue;
                    }
                    let moved = self.interner.conjugate(b, a);
                    let mut t = s.clone();
                    t[i] = moved;
                    t[i + 1] = a;
                    if !orbit.contains(&t) {
                        if orbit.len() >= self.orbit_cap {
                            return Err(Error::CapExceeded {
                                cap: "max_orbit",
                                limit: self.orbit_cap,
                            });
                        }
                        if self.interner.cmp_tuples(&t, &best) == Ordering::Less {
                            best = t.clone();
                        }
                        orbit.insert(t.clone());
                        next.push(t);
                    }
                }
            }
            frontier = next;
        }
        let canonical = self.decode(&best);
        let monodromy = Arc::new(canonical.group());
        let component = Component {
            canonical,
            orbit_size: orbit.len(),
            monodromy,
        };
        let id = self.components.len();
        self.components.push(component.clone());
        for key in orbit {
            self.seen.insert(key, id);
        }
        Ok(component)
    }

    pub fn concat(&mut self, x: &Component, y: &Component) -> Result<Component> {
        self.component_of(&x.canonical.concat(&y.canonical)?)
    }

    pub fn conjugate(&mut self, x: &Component, gamma: &Permutation) -> Result<Component> {
        if gamma.degree() != self.perm_degree {
            return Err(Error::DegreeMismatch {
                expected: self.perm_degree,
                found: gamma.degree(),
            });
        }
        self.component_of(&x.canonical.conjugate_by(gamma))
    }

    /// Product of a list of components (the identity component when empty).
    pub fn product(&mut self, factors: &[&Component]) -> Result<Component> {
        let mut t = GTuple::empty(self.perm_degree);
        for f in factors {
            t = t.concat(&f.canonical)?;
        }
        self.component_of(&t)
    }
}

/// Braid orbit of a product-one tuple.
pub fn component_of(t: &GTuple, orbit_cap: usize) -> Result<Component> {
    Canonicalizer::new(t.perm_degree(), orbit_cap).component_of(t)
}

/// Product in the monoid of components.
pub fn concat(x: &Component, y: &Component, orbit_cap: usize) -> Result<Component> {
    Canonicalizer::new(x.perm_degree(), orbit_cap).concat(x, y)
}

/// Component of the entrywise conjugate `x^gamma`.
pub fn conjugate_component(x: &Component, gamma: &Permutation, orbit_cap: usize) -> Result<Component> {
    Canonicalizer::new(x.perm_degree(), orbit_cap).conjugate(x, gamma)
}

/// Per-class occurrence counts of a tuple, over the classes of `c`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Multidiscriminant {
    counts: BTreeMap<usize, usize>,
}

impl Multidiscriminant {
    /// All-zero map on the given class ids.
    pub fn zero(class_ids: &[usize]) -> Self {
        Multidiscriminant {
            counts: class_ids.iter().map(|&i| (i, 0)).collect(),
        }
    }

    pub fn from_counts(counts: BTreeMap<usize, usize>) -> Self {
        Multidiscriminant { counts }
    }

    pub fn class_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts.keys().copied()
    }

    pub fn count(&self, class_id: usize) -> usize {
        self.counts.get(&class_id).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<usize, usize> {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Least count over the classes that occur; `0` when nothing occurs.
    pub fn min_nonzero(&self) -> usize {
        self.counts.values().copied().filter(|&v| v > 0).min().unwrap_or(0)
    }

    /// Least count over every class of `c`.
    pub fn min_count(&self) -> usize {
        self.counts.values().copied().min().unwrap_or(0)
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Multidiscriminant) -> Multidiscriminant {
        let mut counts = self.counts.clone();
        for (&k, &v) in &other.counts {
            *counts.entry(k).or_insert(0) += v;
        }
        Multidiscriminant { counts }
    }
}

/// The `(H, c)`-multidiscriminant of a tuple.
pub fn multidiscriminant(t: &GTuple, c: &ClassSet) -> Result<Multidiscriminant> {
    let mut md = Multidiscriminant::zero(c.class_ids());
    for e in t.entries() {
        let Some(global) = c.table().class_of(e) else {
            return Err(Error::HNotContaining(e.to_string()));
        };
        if c.class_of(e).is_none() {
            return Err(Error::EntryOutsideC(e.to_string()));
        }
        *md.counts.get_mut(&global).expect("class in c") += 1;
    }
    Ok(md)
}

/// Filters for [`enumerate_components`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ComponentFilter {
    /// Keep only components whose monodromy group is all of `H`.
    pub generating: bool,
}

/// All braid orbits of product-one `n`-tuples with entries in `c`, sorted by
/// canonical representative.
pub fn enumerate_components(
    c: &ClassSet,
    n: usize,
    filter: ComponentFilter,
    caps: &Caps,
) -> Result<Vec<Component>> {
    let mut canon = Canonicalizer::new(c.group().degree(), caps.max_orbit);
    enumerate_with(&mut canon, c, n, filter, caps)
}

/// [`enumerate_components`] reusing an existing canonicalizer.
pub fn enumerate_with(
    canon: &mut Canonicalizer,
    c: &ClassSet,
    n: usize,
    filter: ComponentFilter,
    caps: &Caps,
) -> Result<Vec<Component>> {
    let degree = c.group().degree();
    let elements = c.elements();
    let mut found: Vec<Component> = Vec::new();
    let mut keys: HashSet<GTuple> = HashSet::new();
    let mut visited = 0usize;
    if n == 0 {
        let comp = canon.component_of(&GTuple::empty(degree))?;
        if !filter.generating || comp.monodromy().order() == c.group().order() {
            found.push(comp);
        }
        return Ok(found);
    }
    if elements.is_empty() {
        return Ok(found);
    }
    let members: HashSet<Permutation> = elements.iter().cloned().collect();
    // odometer over c^(n-1); the last entry is forced by the product
    let mut idx = vec![0usize; n - 1];
    let mut prefix: Vec<Permutation> = Vec::with_capacity(n);
    prefix.push(Permutation::identity(degree));
    for i in 0..n - 1 {
        let next = prefix[i].mul(&elements[idx[i]]);
        prefix.push(next);
    }
    loop {
        let last = prefix[n - 1].inverse();
        if members.contains(&last) {
            visited += 1;
            if visited > caps.max_orbit {
                return Err(Error::CapExceeded {
                    cap: "max_orbit",
                    limit: caps.max_orbit,
                });
            }
            let mut entries: Vec<Permutation> = idx.iter().map(|&i| elements[i].clone()).collect();
            entries.push(last);
            let t = GTuple {
                perm_degree: degree,
                entries,
            };
            let comp = canon.component_of(&t)?;
            if (!filter.generating || comp.monodromy().order() == c.group().order())
                && keys.insert(comp.canonical.clone())
            {
                found.push(comp);
            }
        }
        // advance the odometer
        let mut pos = n - 1;
        loop {
            if pos == 0 {
                found.sort();
                return Ok(found);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < elements.len() {
                break;
            }
            idx[pos] = 0;
        }
        for i in pos..n - 1 {
            prefix[i + 1] = prefix[i].mul(&elements[idx[i]]);
        }
    }
}
