//! Lifting invariants.
//!
//! `U(H, c)` is generated by symbols `[g]`, `g in c`, subject to
//! `[g][h][g]^{-1} = [g h g^{-1}]`. The finite group `S_c` used here is the
//! quotient of `U(H, c)` by the central elements `[g]^{ord(g)}`; it is built
//! by coset enumeration and stored as its regular representation. An
//! invariant is the pair (element of `S_c`, multidiscriminant), which
//! determines the element of `U(H, c)`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use crate::braid::{self, Canonicalizer, ComponentFilter, GTuple, Multidiscriminant};
use crate::coset::{self, CosetTable};
use crate::galois;
use crate::perm::{gcd, lcm, mod_inverse, ClassSet, Permutation, PermutationGroup};
use crate::{Caps, Error, Result};

/// Generators indexed by the sorted elements of `c`, with conjugation and
/// (optionally) power relators.
#[derive(Clone, Debug)]
pub struct Presentation {
    generator_labels: Vec<Permutation>,
    conjugation_relators: Vec<Vec<usize>>,
    power_relators: Vec<Vec<usize>>,
}

impl Presentation {
    pub fn generator_labels(&self) -> &[Permutation] {
        &self.generator_labels
    }

    pub fn conjugation_relators(&self) -> &[Vec<usize>] {
        &self.conjugation_relators
    }

    pub fn power_relators(&self) -> &[Vec<usize>] {
        &self.power_relators
    }

    /// All relators, conjugation relators first.
    pub fn relators(&self) -> Vec<Vec<usize>> {
        let mut out = self.conjugation_relators.clone();
        out.extend(self.power_relators.iter().cloned());
        out
    }

    pub fn num_generators(&self) -> usize {
        self.generator_labels.len()
    }
}

/// Presentation of `U(H, c)`, or of `S_c` when `with_power_relators`.
pub fn build_presentation(c: &ClassSet, with_power_relators: bool) -> Result<Presentation> {
    if !c.generates() {
        return Err(Error::CDoesNotGenerate);
    }
    let labels = c.elements();
    let index: HashMap<&Permutation, usize> =
        labels.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut conjugation_relators = Vec::with_capacity(labels.len() * labels.len());
    for (gi, g) in labels.iter().enumerate() {
        for (hi, h) in labels.iter().enumerate() {
            let ghg = h.conjugate_by(g);
            let Some(&ci) = index.get(&ghg) else {
                return Err(Error::CNotConjugationClosed);
            };
            // [g][h][g]^-1 [ghg^-1]^-1
            conjugation_relators.push(vec![2 * gi, 2 * hi, 2 * gi + 1, 2 * ci + 1]);
        }
    }
    let power_relators = if with_power_relators {
        labels
            .iter()
            .enumerate()
            .map(|(i, g)| vec![2 * i; g.order() as usize])
            .collect()
    } else {
        Vec::new()
    };
    Ok(Presentation {
        generator_labels: labels,
        conjugation_relators,
        power_relators,
    })
}

/// Coset enumeration of a presentation over the trivial subgroup.
pub fn coset_enumerate(p: &Presentation, max_cosets: usize) -> Result<CosetTable> {
    coset::enumerate_cosets(p.num_generators(), &p.relators(), max_cosets)
}

/// An element of `S_c`, as a coset index in its regular representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverElement(pub u32);

static NEXT_COVER_ID: AtomicU64 = AtomicU64::new(1);

/// The finite group `S_c` with its projection onto `H`.
#[derive(Clone, Debug)]
pub struct SchurCover {
    id: u64,
    classes: ClassSet,
    presentation: Presentation,
    table: CosetTable,
    generator_index: HashMap<Permutation, usize>,
    /// Word from the identity coset to each coset along the BFS tree.
    words: Vec<Vec<usize>>,
    projections: Vec<Permutation>,
    exponent: u64,
    abelianization: Abelianization,
}

/// Builds `S_c` for a generating, conjugation-closed `c`.
pub fn build_schur_cover(c: &ClassSet, caps: &Caps) -> Result<SchurCover> {
    let presentation = build_presentation(c, true)?;
    let table = coset_enumerate(&presentation, caps.max_cosets)?;
    let n = table.len();
    let degree = c.group().degree();
    let labels = presentation.generator_labels().to_vec();
    let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut projections: Vec<Option<Permutation>> = vec![None; n];
    words[0] = Some(Vec::new());
    projections[0] = Some(Permutation::identity(degree));
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let cur = queue[i];
        for x in 0..table.columns() {
            let d = table.get(cur, x);
            if words[d].is_none() {
                let mut w = words[cur].clone().expect("visited");
                w.push(x);
                let g = &labels[x / 2];
                let step = if x % 2 == 0 { g.clone() } else { g.inverse() };
                projections[d] = Some(projections[cur].as_ref().expect("visited").mul(&step));
                words[d] = Some(w);
                queue.push(d);
            }
        }
        i += 1;
    }
    let words: Vec<Vec<usize>> = words.into_iter().map(|w| w.expect("connected")).collect();
    let projections: Vec<Permutation> = projections
        .into_iter()
        .map(|p| p.expect("connected"))
        .collect();
    let generator_index = labels
        .iter()
        .enumerate()
        .map(|(i, g)| (g.clone(), i))
        .collect();
    let abelianization = Abelianization::new(c.group(), caps)?;
    let mut cover = SchurCover {
        id: NEXT_COVER_ID.fetch_add(1, Ordering::Relaxed),
        classes: c.clone(),
        presentation,
        table,
        generator_index,
        words,
        projections,
        exponent: 1,
        abelianization,
    };
    let mut exponent = 1;
    for e in 0..n {
        exponent = lcm(exponent, cover.element_order(CoverElement(e as u32)));
    }
    cover.exponent = exponent;
    Ok(cover)
}

impl SchurCover {
    pub fn classes(&self) -> &ClassSet {
        &self.classes
    }

    pub fn group(&self) -> &PermutationGroup {
        self.classes.group()
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn coset_table(&self) -> &CosetTable {
        &self.table
    }

    /// `|S_c|`.
    pub fn size(&self) -> usize {
        self.table.len()
    }

    /// `|S_c| / |H|`.
    pub fn kernel_order(&self) -> usize {
        self.size() / self.group().order() as usize
    }

    /// Exponent of `S_c`.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn abelianization(&self) -> &Abelianization {
        &self.abelianization
    }

    pub fn identity(&self) -> CoverElement {
        CoverElement(0)
    }

    /// Image of `[g]` in `S_c`.
    pub fn generator(&self, g: &Permutation) -> Result<CoverElement> {
        self.generator_index
            .get(g)
            .map(|&i| CoverElement(self.table.get(0, 2 * i) as u32))
            .ok_or_else(|| Error::EntryOutsideC(g.to_string()))
    }

    pub fn mul(&self, a: CoverElement, b: CoverElement) -> CoverElement {
        CoverElement(self.table.trace(a.0 as usize, &self.words[b.0 as usize]) as u32)
    }

    pub fn inverse(&self, a: CoverElement) -> CoverElement {
        let w = coset::invert_word(&self.words[a.0 as usize]);
        CoverElement(self.table.trace(0, &w) as u32)
    }

    pub fn pow(&self, a: CoverElement, e: i64) -> CoverElement {
        let base = if e < 0 { self.inverse(a) } else { a };
        let mut e = e.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: CoverElement) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Image in `H`.
    pub fn project(&self, a: CoverElement) -> &Permutation {
        &self.projections[a.0 as usize]
    }

    /// Product of the generator images of a tuple, `[g_1] ... [g_n]`.
    pub fn trace_tuple(&self, t: &GTuple) -> Result<CoverElement> {
        let mut c = 0usize;
        for g in t.entries() {
            let i = *self
                .generator_index
                .get(g)
                .ok_or_else(|| Error::EntryOutsideC(g.to_string()))?;
            c = self.table.get(c, 2 * i);
        }
        Ok(CoverElement(c as u32))
    }

    /// Whether `a` commutes with every element of `S_c`'s generating set.
    pub fn is_central(&self, a: CoverElement) -> bool {
        (0..self.presentation.num_generators()).all(|i| {
            let g = CoverElement(self.table.get(0, 2 * i) as u32);
            self.mul(a, g) == self.mul(g, a)
        })
    }

    /// `u` reduced against the exponent of `S_c` as the inverse of the unit
    /// `k`.
    pub fn inverse_unit(&self, k: u64) -> Result<u64> {
        mod_inverse(k % self.exponent.max(1), self.exponent).ok_or(Error::NotAUnit {
            k,
            modulus: self.exponent,
        })
    }
}

/// The invariant `Pi_{H,c}(g)` as (element of `S_c`, multidiscriminant).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LiftingInvariant {
    cover_id: u64,
    pub s_part: CoverElement,
    pub psi: Multidiscriminant,
}

impl LiftingInvariant {
    pub fn identity(cover: &SchurCover) -> Self {
        LiftingInvariant {
            cover_id: cover.id,
            s_part: cover.identity(),
            psi: Multidiscriminant::zero(cover.classes.class_ids()),
        }
    }

    /// Invariant of the single symbol `[g]`.
    pub fn of_generator(cover: &SchurCover, g: &Permutation) -> Result<Self> {
        let t = GTuple::new(g.degree(), vec![g.clone()])?;
        lifting_invariant(&t, cover)
    }
}

/// `Pi_{H,c}(t) = [t_1] ... [t_n]`.
pub fn lifting_invariant(t: &GTuple, cover: &SchurCover) -> Result<LiftingInvariant> {
    let psi = braid::multidiscriminant(t, &cover.classes)?;
    let s_part = cover.trace_tuple(t)?;
    Ok(LiftingInvariant {
        cover_id: cover.id,
        s_part,
        psi,
    })
}

/// Product in `U(H, c)`.
pub fn invariant_product(
    u: &LiftingInvariant,
    v: &LiftingInvariant,
    cover: &SchurCover,
) -> Result<LiftingInvariant> {
    if u.cover_id != cover.id || v.cover_id != cover.id {
        return Err(Error::CoverMismatch);
    }
    Ok(LiftingInvariant {
        cover_id: cover.id,
        s_part: cover.mul(u.s_part, v.s_part),
        psi: u.psi.add(&v.psi),
    })
}

/// `H^ab` as `H` modulo the normal closure of the commutators of its
/// generators. Elements are named by the least member of their coset.
#[derive(Clone, Debug)]
pub struct Abelianization {
    derived: PermutationGroup,
    derived_elements: Vec<Permutation>,
    order: usize,
}

impl Abelianization {
    pub fn new(h: &PermutationGroup, caps: &Caps) -> Result<Self> {
        let degree = h.degree();
        let gens = h.generators();
        let mut derived_gens: Vec<Permutation> = Vec::new();
        for a in gens {
            for b in gens {
                let comm = a.mul(b).mul(&a.inverse()).mul(&b.inverse());
                if !comm.is_identity() && !derived_gens.contains(&comm) {
                    derived_gens.push(comm);
                }
            }
        }
        let mut derived = PermutationGroup::new(degree, derived_gens.clone())?;
        loop {
            let mut added = false;
            for d in derived_gens.clone() {
                for g in gens {
                    let x = d.conjugate_by(g);
                    if !derived.has(&x) {
                        derived_gens.push(x);
                        derived = PermutationGroup::new(degree, derived_gens.clone())?;
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        let derived_elements = derived.elements(caps.max_elements)?;
        let order = (h.order() / derived.order()) as usize;
        Ok(Abelianization {
            derived,
            derived_elements,
            order,
        })
    }

    pub fn derived_subgroup(&self) -> &PermutationGroup {
        &self.derived
    }

    /// `|H^ab|`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Canonical name of the image of `g`.
    pub fn image(&self, g: &Permutation) -> Permutation {
        self.derived_elements
            .iter()
            .map(|d| g.mul(d))
            .min()
            .expect("derived subgroup has the identity")
    }
}

/// `pi~(psi) = prod over classes of (class image)^psi(class)` in `H^ab`.
pub fn tilde_pi(psi: &Multidiscriminant, cover: &SchurCover) -> Permutation {
    tilde_pi_with(psi, &cover.classes, &cover.abelianization)
}

pub fn tilde_pi_with(psi: &Multidiscriminant, c: &ClassSet, ab: &Abelianization) -> Permutation {
    let mut acc = c.group().identity();
    for (&class, &count) in psi.counts() {
        let rep = &c.table().class(class).representative;
        acc = ab.image(&acc.mul(&rep.pow(count as i64)));
    }
    ab.image(&acc)
}

/// Whether `pi~(psi)` equals the `H^ab`-image of the projection of the
/// `S_c` part.
pub fn is_fibered_coherent(v: &LiftingInvariant, cover: &SchurCover) -> bool {
    tilde_pi(&v.psi, cover) == cover.abelianization.image(cover.project(v.s_part))
}

/// `w(gamma, u) = [g]^{-u} [g^u]` for a representative `g` of the class.
pub fn w_element(class_id: usize, u: u64, cover: &SchurCover) -> Result<CoverElement> {
    let g = cover.classes.table().class(class_id).representative.clone();
    w_element_for(&g, u, cover)
}

/// [`w_element`] computed from an explicit representative `g`.
pub fn w_element_for(g: &Permutation, u: u64, cover: &SchurCover) -> Result<CoverElement> {
    let hat = cover.generator(g)?;
    let gu = g.pow(u as i64);
    let hat_gu = cover.generator(&gu).map_err(|_| Error::PowerLeavesC {
        element: g.to_string(),
        k: u,
    })?;
    let e = (u % cover.exponent.max(1)) as i64;
    let w = cover.mul(cover.pow(hat, -e), hat_gu);
    debug_assert!(cover.project(w).is_identity());
    Ok(w)
}

/// `sigma.v = (h^u prod w(gamma, u)^{psi(gamma)}, psi o p_k)` with
/// `u = k^{-1}`.
pub fn galois_act_invariant(
    v: &LiftingInvariant,
    k: u64,
    cover: &SchurCover,
) -> Result<LiftingInvariant> {
    if v.cover_id != cover.id {
        return Err(Error::CoverMismatch);
    }
    let u = cover.inverse_unit(k)?;
    let mut s = cover.pow(v.s_part, u as i64);
    for (&class, &count) in v.psi.counts() {
        if count == 0 {
            continue;
        }
        let w = w_element(class, u, cover)?;
        s = cover.mul(s, cover.pow(w, count as i64));
    }
    let psi = galois::act_multidiscriminant(&v.psi, &cover.classes, k)?;
    Ok(LiftingInvariant {
        cover_id: cover.id,
        s_part: s,
        psi,
    })
}

/// Outcome of [`estimate_m_big`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MBigEstimate {
    /// Least `M` from which `(mu, invariant)` is injective on the
    /// enumerated components.
    Estimate(usize),
    NotStabilized,
}

/// Per-degree data gathered by [`estimate_m_big`].
#[derive(Clone, Debug)]
pub struct MBigReport {
    pub estimate: MBigEstimate,
    /// Number of qualifying components per degree.
    pub components_per_degree: BTreeMap<usize, usize>,
    /// Values of `M` at which two components share `(mu, invariant)`.
    pub collisions_at: Vec<usize>,
}

/// Empirical threshold for the lifting invariant to separate components.
///
/// Considers components of degree `0..=degree_cap` with monodromy group `H`
/// in which every class of `c` occurs. Since every class then occurs at
/// least once, candidate thresholds start at `1`; with nothing enumerated
/// the estimate is `0`.
pub fn estimate_m_big(cover: &SchurCover, degree_cap: usize, caps: &Caps) -> Result<MBigReport> {
    let c = &cover.classes;
    let mut canon = Canonicalizer::new(c.group().degree(), caps.max_orbit);
    let mut entries: Vec<(usize, (Multidiscriminant, CoverElement))> = Vec::new();
    let mut per_degree = BTreeMap::new();
    for n in 0..=degree_cap {
        let comps = braid::enumerate_with(
            &mut canon,
            c,
            n,
            ComponentFilter { generating: true },
            caps,
        )?;
        let mut count = 0;
        for comp in comps {
            let inv = lifting_invariant(comp.canonical(), cover)?;
            if inv.psi.min_count() == 0 {
                continue;
            }
            count += 1;
            entries.push((inv.psi.min_count(), (inv.psi, inv.s_part)));
        }
        per_degree.insert(n, count);
    }
    if entries.is_empty() {
        return Ok(MBigReport {
            estimate: MBigEstimate::Estimate(0),
            components_per_degree: per_degree,
            collisions_at: Vec::new(),
        });
    }
    let max_m = entries.iter().map(|e| e.0).max().expect("nonempty");
    let mut collisions_at = Vec::new();
    for m in 1..=max_m {
        let mut seen = HashSet::new();
        let injective = entries
            .iter()
            .filter(|e| e.0 >= m)
            .all(|e| seen.insert(e.1.clone()));
        if !injective {
            collisions_at.push(m);
        }
    }
    let estimate = match collisions_at.last() {
        None => MBigEstimate::Estimate(1),
        Some(&m) if m < max_m => MBigEstimate::Estimate(m + 1),
        Some(_) => MBigEstimate::NotStabilized,
    };
    Ok(MBigReport {
        estimate,
        components_per_degree: per_degree,
        collisions_at,
    })
}

/// Checks that `gcd(k, exponent) = 1`.
pub fn is_unit_for(cover: &SchurCover, k: u64) -> bool {
    gcd(k, cover.exponent) == 1
}
