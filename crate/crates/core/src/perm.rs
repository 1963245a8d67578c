//! Permutations, permutation groups with a stabilizer chain, and conjugacy
//! classes.
//!
//! Points are stored 0-based; cycle notation and `Display` are 1-based.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::{Caps, Error, Result};

/// A bijection of `{0, .., degree-1}`.
///
/// The derived ordering is lexicographic on the images array, which is the
/// element order used for every canonical form in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {} out of range for degree {}",
                    x + 1,
                    n
                )));
            }
            if seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "image {} repeated",
                    x + 1
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation of the given degree from disjoint cycles of
    /// 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(Error::Parse(format!(
                        "point {} out of range 1..{}",
                        p + 1,
                        degree
                    )));
                }
                if used[p] {
                    return Err(Error::Parse(format!("point {} repeated", p + 1)));
                }
                used[p] = true;
                images[p] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Parses a product of disjoint cycles such as `"(1, 22, 14)(2, 13, 9)"`.
    ///
    /// Points are 1-based and separated by commas and/or whitespace. The
    /// empty string and `"()"` denote the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Parse("degree must be positive".into()));
        }
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(after_open) = rest.strip_prefix('(') else {
                return Err(Error::Parse(format!("expected '(' at `{rest}`")));
            };
            let Some(close) = after_open.find(')') else {
                return Err(Error::Parse("unbalanced parenthesis".into()));
            };
            let body = &after_open[..close];
            if body.contains('(') {
                return Err(Error::Parse("nested parenthesis".into()));
            }
            let mut cycle = Vec::new();
            for tok in body
                .split(|ch: char| ch == ',' || ch.is_whitespace())
                .filter(|s| !s.is_empty())
            {
                let p: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point `{tok}`")))?;
                if p == 0 || p > degree {
                    return Err(Error::Parse(format!(
                        "point {p} out of range 1..{degree}"
                    )));
                }
                cycle.push(p - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = after_open[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// 0-based images array.
    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    fn check_degree(&self, other: &Permutation) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(())
    }

    /// "Apply `self` first, then `other`": `result[i] = other[self[i]]`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        self.check_degree(other)?;
        Ok(self.mul(other))
    }

    /// Unchecked [`compose`](Self::compose); panics on a degree mismatch.
    #[inline]
    pub fn mul(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `self^h = h self h^{-1}`.
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        // (h g h^-1)(x): apply h, then g, then h^-1
        let hinv = h.inverse();
        Permutation {
            images: h
                .images
                .iter()
                .map(|&y| hinv.images[self.images[y as usize] as usize])
                .collect(),
        }
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its
    /// smallest point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least `k >= 1` with `self^k = 1`: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Smallest moved point in the given priority order.
    fn first_moved(&self, priority: &[usize]) -> Option<usize> {
        priority.iter().copied().find(|&p| self.apply(p) != p)
    }

    pub fn is_transposition(&self) -> bool {
        let c = self.cycles();
        c.len() == 1 && c[0].len() == 2
    }

    /// Cycle notation with comma-separated 1-based points, `()` for the
    /// identity.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            s.push_str(&pts.join(", "));
            s.push(')');
        }
        s
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Inverse of `k` modulo `m`, if it exists. `m = 1` yields `0`.
pub fn mod_inverse(k: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (k as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Euler's totient by trial factorization.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

struct Level {
    base: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[p]` maps the base point to `p`.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
        };
        level.recompute_orbit(degree);
        level
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal[self.base] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let q = self.orbit[i];
            let uq = self.transversal[q].clone().expect("orbit point");
            for s in &self.gens {
                let r = s.apply(q);
                if self.transversal[r].is_none() {
                    self.transversal[r] = Some(uq.mul(s));
                    self.orbit.push(r);
                }
            }
            i += 1;
        }
    }
}

/// A permutation group with a deterministic stabilizer chain.
#[derive(Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Arc<Vec<Level>>,
    order: u128,
}

impl fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermutationGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .field("order", &self.order)
            .finish()
    }
}

impl PermutationGroup {
    /// The group generated by `generators`; base points are the smallest
    /// moved points.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        let priority: Vec<usize> = (0..degree).collect();
        Self::with_base_priority(degree, generators, &priority)
    }

    /// Like [`new`](Self::new) but selects each new base point as the first
    /// moved point in `priority` (a permutation of the points).
    pub fn with_base_priority(
        degree: usize,
        generators: Vec<Permutation>,
        priority: &[usize],
    ) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        if priority.len() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: priority.len(),
            });
        }
        let chain = schreier_sims(degree, &generators, priority);
        let mut order: u128 = 1;
        for level in &chain {
            order = order
                .checked_mul(level.orbit.len() as u128)
                .ok_or(Error::OrderOverflow)?;
        }
        Ok(PermutationGroup {
            degree,
            generators,
            chain: Arc::new(chain),
            order,
        })
    }

    /// Group generated by a nonempty list of permutations.
    pub fn generated_by(generators: &[Permutation]) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::Parse(
                "empty generator list carries no degree".into(),
            ));
        };
        Self::new(first.degree(), generators.to_vec())
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.iter().map(|l| l.base).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.chain.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in self.chain.iter() {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// Membership by sifting through the chain.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        Ok(self.has(p))
    }

    /// Unchecked membership; false on a degree mismatch.
    pub fn has(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (residue, level) = strip(&self.chain, p.clone(), 0);
        level == self.chain.len() && residue.is_identity()
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.has(g))
    }

    /// Equality as sets of permutations.
    pub fn same_as(&self, other: &PermutationGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].commutes_with(&g[j])))
    }

    /// Orbit of a 0-based point, sorted.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut queue = vec![point];
        let mut i = 0;
        while i < queue.len() {
            let q = queue[i];
            for g in &self.generators {
                let r = g.apply(q);
                if !seen[r] {
                    seen[r] = true;
                    queue.push(r);
                }
            }
            i += 1;
        }
        queue.sort_unstable();
        queue
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        if self.order > cap as u128 {
            return Err(Error::CapExceeded {
                cap: "max_elements",
                limit: cap,
            });
        }
        Ok(())
    }

    /// All elements, each once, sorted lexicographically.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        self.check_cap(cap)?;
        let mut current = vec![self.identity()];
        for level in self.chain.iter().rev() {
            let mut next = Vec::with_capacity(current.len() * level.orbit.len());
            for e in &current {
                for &p in &level.orbit {
                    let u = level.transversal[p].as_ref().expect("orbit point");
                    next.push(e.mul(u));
                }
            }
            current = next;
        }
        current.sort_unstable();
        Ok(current)
    }

    /// Conjugacy classes by conjugation orbits under the generators.
    pub fn conjugacy_classes(&self, cap: usize) -> Result<ClassTable> {
        ClassTable::new(self.clone(), cap)
    }

    /// Whether `b` lies in the conjugation orbit of `a`, by breadth-first
    /// search conjugating by generators.
    pub fn are_conjugate(
        &self,
        a: &Permutation,
        b: &Permutation,
        node_cap: usize,
    ) -> Result<bool> {
        for x in [a, b] {
            if !self.contains(x)? {
                return Err(Error::NotInGroup(x.to_string()));
            }
        }
        if a == b {
            return Ok(true);
        }
        if a.order() != b.order() || cycle_type(a) != cycle_type(b) {
            return Ok(false);
        }
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(a.clone());
        let mut frontier = vec![a.clone()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                for g in &self.generators {
                    let y = x.conjugate_by(g);
                    if &y == b {
                        return Ok(true);
                    }
                    if seen.insert(y.clone()) {
                        if seen.len() > node_cap {
                            return Err(Error::CapExceeded {
                                cap: "node_cap",
                                limit: node_cap,
                            });
                        }
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        Ok(false)
    }

    /// Exponent and the sum of element orders.
    pub fn order_statistics(&self, cap: usize) -> Result<OrderStatistics> {
        let mut exponent = 1u64;
        let mut psi = 0u128;
        for g in self.elements(cap)? {
            let o = g.order();
            exponent = lcm(exponent, o);
            psi += o as u128;
        }
        Ok(OrderStatistics { exponent, psi })
    }

    /// Conjugate subgroup `self^h`.
    pub fn conjugate_by(&self, h: &Permutation) -> PermutationGroup {
        let gens = self.generators.iter().map(|g| g.conjugate_by(h)).collect();
        PermutationGroup::new(self.degree, gens).expect("same degree")
    }

    /// Subgroup generated by `self` and `other`.
    pub fn join(&self, other: &PermutationGroup) -> Result<PermutationGroup> {
        let mut gens = self.generators.clone();
        for g in &other.generators {
            if !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        PermutationGroup::new(self.degree, gens)
    }

    /// Normality of `self` in `other`, by conjugating generators.
    pub fn is_normal_in(&self, other: &PermutationGroup) -> bool {
        self.is_subgroup_of(other)
            && other
                .generators
                .iter()
                .all(|h| self.generators.iter().all(|g| self.has(&g.conjugate_by(h))))
    }
}

fn cycle_type(p: &Permutation) -> Vec<usize> {
    let mut t: Vec<usize> = p.cycles().iter().map(|c| c.len()).collect();
    t.sort_unstable();
    t
}

/// Exponent and `psi = sum of element orders`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderStatistics {
    pub exponent: u64,
    pub psi: u128,
}

fn strip(chain: &[Level], mut g: Permutation, start: usize) -> (Permutation, usize) {
    for (l, level) in chain.iter().enumerate().skip(start) {
        let beta = g.apply(level.base);
        match &level.transversal[beta] {
            Some(u) => g = g.mul(&u.inverse()),
            None => return (g, l),
        }
    }
    (g, chain.len())
}

/// Deterministic Schreier-Sims: Schreier generators of each level are sifted
/// through the deeper levels, restarting at the deepest level that changed.
fn schreier_sims(degree: usize, generators: &[Permutation], priority: &[usize]) -> Vec<Level> {
    let mut gens: Vec<Permutation> = Vec::new();
    for g in generators {
        if !g.is_identity() && !gens.contains(g) {
            gens.push(g.clone());
        }
    }
    let mut bases: Vec<usize> = Vec::new();
    for g in &gens {
        if bases.iter().all(|&b| g.apply(b) == b) {
            bases.push(g.first_moved(priority).expect("non-identity"));
        }
    }
    let mut chain: Vec<Level> = bases.iter().map(|&b| Level::new(b, degree)).collect();
    for (i, level) in chain.iter_mut().enumerate() {
        level.gens = gens
            .iter()
            .filter(|g| bases[..i].iter().all(|&b| g.apply(b) == b))
            .cloned()
            .collect();
        level.recompute_orbit(degree);
    }

    let mut i = chain.len();
    while i > 0 {
        let li = i - 1;
        let mut restart = None;
        'search: for oi in 0..chain[li].orbit.len() {
            let p = chain[li].orbit[oi];
            let up = chain[li].transversal[p].clone().expect("orbit point");
            for si in 0..chain[li].gens.len() {
                let s = &chain[li].gens[si];
                let q = s.apply(p);
                let uq = chain[li].transversal[q].as_ref().expect("orbit closed");
                let h = up.mul(s).mul(&uq.inverse());
                if h.is_identity() {
                    continue;
                }
                let (residue, j) = strip(&chain, h, li + 1);
                if j < chain.len() || !residue.is_identity() {
                    if j == chain.len() {
                        let b = residue.first_moved(priority).expect("non-identity");
                        chain.push(Level::new(b, degree));
                    }
                    for level in chain.iter_mut().take(j + 1).skip(li + 1) {
                        level.gens.push(residue.clone());
                        level.recompute_orbit(degree);
                    }
                    restart = Some(j + 1);
                    break 'search;
                }
            }
        }
        match restart {
            Some(next) => i = next,
            None => i -= 1,
        }
    }
    chain
}

/// One conjugacy class: its least element and all members, sorted.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub elements: Vec<Permutation>,
}

/// The conjugacy classes of a group, ordered by representative. Class 0 is
/// the identity class.
#[derive(Clone, Debug)]
pub struct ClassTable {
    group: PermutationGroup,
    classes: Vec<ConjugacyClass>,
    element_to_class: HashMap<Permutation, usize>,
}

impl ClassTable {
    pub fn new(group: PermutationGroup, cap: usize) -> Result<Self> {
        let elements = group.elements(cap)?;
        let mut assigned: HashSet<Permutation> = HashSet::with_capacity(elements.len());
        let mut classes = Vec::new();
        for e in &elements {
            if assigned.contains(e) {
                continue;
            }
            let mut members = vec![e.clone()];
            assigned.insert(e.clone());
            let mut i = 0;
            while i < members.len() {
                let x = members[i].clone();
                for g in group.generators() {
                    let y = x.conjugate_by(g);
                    if assigned.insert(y.clone()) {
                        members.push(y);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            classes.push(ConjugacyClass {
                representative: members[0].clone(),
                elements: members,
            });
        }
        // elements are visited in sorted order, so each class is first met
        // at its least element and `classes` is already sorted
        let mut element_to_class = HashMap::with_capacity(elements.len());
        for (id, class) in classes.iter().enumerate() {
            for e in &class.elements {
                element_to_class.insert(e.clone(), id);
            }
        }
        Ok(ClassTable {
            group,
            classes,
            element_to_class,
        })
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, p: &Permutation) -> Option<usize> {
        self.element_to_class.get(p).copied()
    }

    pub fn class(&self, id: usize) -> &ConjugacyClass {
        &self.classes[id]
    }

    /// All group elements, sorted.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut all: Vec<Permutation> = self.element_to_class.keys().cloned().collect();
        all.sort_unstable();
        all
    }
}

/// A conjugation-invariant subset `c` of a group `H`, kept as a set of
/// class ids of `H`.
#[derive(Clone, Debug)]
pub struct ClassSet {
    table: Arc<ClassTable>,
    class_ids: Vec<usize>,
}

impl ClassSet {
    /// `c` given by its elements; it must be a union of classes of `H`.
    pub fn new(table: Arc<ClassTable>, c: &[Permutation]) -> Result<Self> {
        let mut ids = Vec::new();
        let mut members: HashSet<&Permutation> = HashSet::new();
        for p in c {
            let id = table
                .class_of(p)
                .ok_or_else(|| Error::HNotContaining(p.to_string()))?;
            members.insert(p);
            if !ids.contains(&id) {
                ids.push(id);
            }
        }
        for &id in &ids {
            if table.class(id).elements.iter().any(|e| !members.contains(e)) {
                return Err(Error::CNotConjugationClosed);
            }
        }
        ids.sort_unstable();
        Ok(ClassSet {
            table,
            class_ids: ids,
        })
    }

    /// Union of the classes of the given elements.
    pub fn closure_of(table: Arc<ClassTable>, reps: &[Permutation]) -> Result<Self> {
        let mut ids = Vec::new();
        for p in reps {
            let id = table
                .class_of(p)
                .ok_or_else(|| Error::HNotContaining(p.to_string()))?;
            ids.push(id);
        }
        Ok(Self::from_class_ids(table, ids))
    }

    pub fn from_class_ids(table: Arc<ClassTable>, mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        ClassSet {
            table,
            class_ids: ids,
        }
    }

    /// Every element of `H`.
    pub fn all(table: Arc<ClassTable>) -> Self {
        let ids = (0..table.len()).collect();
        Self::from_class_ids(table, ids)
    }

    /// Every non-identity element of `H`.
    pub fn nonidentity(table: Arc<ClassTable>) -> Self {
        let ids = (1..table.len()).collect();
        Self::from_class_ids(table, ids)
    }

    /// Classes whose elements satisfy `pred` (tested on representatives).
    pub fn filtered(table: Arc<ClassTable>, pred: impl Fn(&Permutation) -> bool) -> Self {
        let ids = (0..table.len())
            .filter(|&i| pred(&table.class(i).representative))
            .collect();
        Self::from_class_ids(table, ids)
    }

    pub fn table(&self) -> &Arc<ClassTable> {
        &self.table
    }

    pub fn group(&self) -> &PermutationGroup {
        self.table.group()
    }

    pub fn class_ids(&self) -> &[usize] {
        &self.class_ids
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.class_of(p).is_some()
    }

    /// Class id of `p` if `p` lies in `c`.
    pub fn class_of(&self, p: &Permutation) -> Option<usize> {
        self.table
            .class_of(p)
            .filter(|id| self.class_ids.binary_search(id).is_ok())
    }

    /// Elements of `c`, sorted.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = self
            .class_ids
            .iter()
            .flat_map(|&i| self.table.class(i).elements.iter().cloned())
            .collect();
        out.sort_unstable();
        out
    }

    pub fn len(&self) -> usize {
        self.class_ids
            .iter()
            .map(|&i| self.table.class(i).elements.len())
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.class_ids.is_empty()
    }

    /// Whether `c` generates `H`.
    pub fn generates(&self) -> bool {
        let gens = self.elements();
        let g = PermutationGroup::new(self.group().degree(), gens).expect("same degree");
        g.order() == self.group().order()
    }
}

/// Result of comparing `H1 H2` with `<H1, H2>`.
#[derive(Clone, Debug)]
pub struct ProductTest {
    pub join: PermutationGroup,
    pub intersection_order: u128,
    pub product_is_group: bool,
}

/// Tests whether `H1 H2 = <H1, H2>` via `|H1||H2|/|H1 ∩ H2| = |<H1,H2>|`.
pub fn subgroup_product_test(
    h1: &PermutationGroup,
    h2: &PermutationGroup,
    caps: &Caps,
) -> Result<ProductTest> {
    if h1.degree() != h2.degree() {
        return Err(Error::DegreeMismatch {
            expected: h1.degree(),
            found: h2.degree(),
        });
    }
    let join = h1.join(h2)?;
    let (small, large) = if h1.order() <= h2.order() {
        (h1, h2)
    } else {
        (h2, h1)
    };
    let intersection_order = small
        .elements(caps.max_elements)?
        .iter()
        .filter(|e| large.has(e))
        .count() as u128;
    let product_is_group = h1.order() * h2.order() == intersection_order * join.order();
    Ok(ProductTest {
        join,
        intersection_order,
        product_is_group,
    })
}
