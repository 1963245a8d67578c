//! Operations on the monoid of components: `ni` sets, permuting criteria,
//! small-degree factorization and the `V` component.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::braid::{Canonicalizer, Component, GTuple};
use crate::perm::{subgroup_product_test, totient, ClassSet, Permutation, PermutationGroup};
use crate::{Caps, Error, Result};

/// A request for `ni_H(x_1, ..., x_n)` or its sharp variant.
#[derive(Clone, Debug)]
pub struct NiQuery {
    pub group: PermutationGroup,
    pub factors: Vec<Component>,
    pub sharp: bool,
}

impl NiQuery {
    /// Query with `H` the group generated by the factors.
    pub fn generated(factors: Vec<Component>, sharp: bool) -> Result<Self> {
        let group = join_all(&factors)?;
        Ok(NiQuery {
            group,
            factors,
            sharp,
        })
    }
}

fn join_all(factors: &[Component]) -> Result<PermutationGroup> {
    let degree = factors.first().map_or(0, |x| x.perm_degree());
    let mut gens = Vec::new();
    for x in factors {
        if x.perm_degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: x.perm_degree(),
            });
        }
        gens.extend(x.monodromy().generators().iter().cloned());
    }
    PermutationGroup::new(degree, gens)
}

/// Distinct conjugates `x^gamma`, `gamma` running over `elements`.
fn conjugates(
    canon: &mut Canonicalizer,
    x: &Component,
    elements: &[Permutation],
) -> Result<Vec<Component>> {
    let mut out = BTreeSet::new();
    for g in elements {
        out.insert(canon.conjugate(x, g)?);
    }
    Ok(out.into_iter().collect())
}

/// `{ x_1^{gamma_1} ... x_n^{gamma_n} : gamma_i in H }`, sorted.
pub fn ni_set(q: &NiQuery, caps: &Caps) -> Result<Vec<Component>> {
    let mut canon = Canonicalizer::new(q.group.degree(), caps.max_orbit);
    ni_set_with(&mut canon, q, caps)
}

/// [`ni_set`] reusing an existing canonicalizer.
pub fn ni_set_with(canon: &mut Canonicalizer, q: &NiQuery, caps: &Caps) -> Result<Vec<Component>> {
    for x in &q.factors {
        if !x.monodromy().is_subgroup_of(&q.group) {
            return Err(Error::NotInGroup(x.canonical().to_strings().join(" ")));
        }
    }
    let elements = q.group.elements(caps.max_elements)?;
    // concatenation is well defined on components, so partial products can
    // be deduplicated as they are built
    let mut partial: BTreeSet<Component> = BTreeSet::new();
    partial.insert(canon.component_of(&GTuple::empty(q.group.degree()))?);
    for x in &q.factors {
        let conj = conjugates(canon, x, &elements)?;
        let mut next = BTreeSet::new();
        for p in &partial {
            for y in &conj {
                next.insert(canon.concat(p, y)?);
            }
        }
        partial = next;
    }
    if q.sharp {
        let target = join_all(&q.factors)?;
        partial.retain(|z| z.monodromy().same_as(&target));
    }
    Ok(partial.into_iter().collect())
}

/// Whether `<x><y> = <<x>, <y>>`.
pub fn are_permuting(x: &Component, y: &Component, caps: &Caps) -> Result<bool> {
    Ok(subgroup_product_test(x.monodromy(), y.monodromy(), caps)?.product_is_group)
}

fn subgroup_key(g: &PermutationGroup, caps: &Caps) -> Result<Vec<Permutation>> {
    g.elements(caps.max_elements)
}

/// Whether the family is permuting: for every `i >= 2` and every choice of
/// conjugates `H_j^{gamma_j}` (`j > i`), if `A = <H_1..H_{i-1}, H_j^{gamma_j}>`
/// together with `H_i` generates `H`, then `A H_i = H`.
pub fn is_permuting_family(factors: &[Component], caps: &Caps) -> Result<bool> {
    let n = factors.len();
    if n < 2 {
        return Ok(true);
    }
    let h = join_all(factors)?;
    let h_elements = h.elements(caps.max_elements)?;
    let mut conj: Vec<Vec<PermutationGroup>> = Vec::with_capacity(n);
    for x in factors {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for g in &h_elements {
            let k = x.monodromy().conjugate_by(g);
            if seen.insert(subgroup_key(&k, caps)?) {
                list.push(k);
            }
        }
        conj.push(list);
    }
    for i in 1..n {
        let mut base = factors[0].monodromy().clone();
        for x in &factors[1..i] {
            base = base.join(x.monodromy())?;
        }
        let mut states: HashMap<Vec<Permutation>, PermutationGroup> = HashMap::new();
        states.insert(subgroup_key(&base, caps)?, base);
        for list in &conj[i + 1..] {
            let mut next = HashMap::new();
            for a in states.values() {
                for k in list {
                    let j = a.join(k)?;
                    let key = subgroup_key(&j, caps)?;
                    next.entry(key).or_insert(j);
                }
            }
            states = next;
        }
        let hi = factors[i].monodromy();
        for a in states.values() {
            let test = subgroup_product_test(a, hi, caps)?;
            if test.join.order() == h.order() && !test.product_is_group {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of [`verify_singleton`].
#[derive(Clone, Debug)]
pub struct SingletonCheck {
    pub holds: bool,
    pub product: Component,
    /// The full sharp `ni` set.
    pub witness: Vec<Component>,
}

/// Whether the sharp `ni` set of the factors is exactly their product.
pub fn verify_singleton(q: &NiQuery, caps: &Caps) -> Result<SingletonCheck> {
    let mut canon = Canonicalizer::new(q.group.degree(), caps.max_orbit);
    verify_singleton_with(&mut canon, q, caps)
}

pub fn verify_singleton_with(
    canon: &mut Canonicalizer,
    q: &NiQuery,
    caps: &Caps,
) -> Result<SingletonCheck> {
    let sharp = NiQuery {
        sharp: true,
        ..q.clone()
    };
    let witness = ni_set_with(canon, &sharp, caps)?;
    let refs: Vec<&Component> = q.factors.iter().collect();
    let product = canon.product(&refs)?;
    let holds = witness.len() == 1 && witness[0] == product;
    Ok(SingletonCheck {
        holds,
        product,
        witness,
    })
}

/// Result of [`factor_small`]: `x = (g_1,..,g_1) ... (g_m,..,g_m) y`.
#[derive(Clone, Debug)]
pub struct Factorization {
    /// `(g, ord(g))` per extracted block.
    pub blocks: Vec<(Permutation, usize)>,
    pub rest: Component,
}

/// Extracts blocks `(g, .., g)` of length `ord(g)` while the degree exceeds
/// `psi` and some `g` occurs at least `ord(g) + 1` times.
pub fn factor_small(x: &Component, psi: usize, caps: &Caps) -> Result<Factorization> {
    let mut canon = Canonicalizer::new(x.perm_degree(), caps.max_orbit);
    let mut t = x.canonical().clone();
    let mut blocks = Vec::new();
    while t.len() > psi {
        let mut counts: BTreeMap<&Permutation, usize> = BTreeMap::new();
        for g in t.entries() {
            *counts.entry(g).or_insert(0) += 1;
        }
        let Some(g) = counts
            .iter()
            .find(|(g, &n)| n > g.order() as usize)
            .map(|(g, _)| (*g).clone())
        else {
            break;
        };
        let ord = g.order() as usize;
        // bubble the first `ord` occurrences of g to the front; inverse moves
        // leave the travelling entry unchanged
        let mut filled = 0;
        while filled < ord {
            let pos = (filled..t.len())
                .find(|&j| t.entries()[j] == g)
                .expect("enough occurrences");
            for j in (filled..pos).rev() {
                t = t.braid_move(j + 1, true)?;
            }
            filled += 1;
        }
        t = GTuple::new(t.perm_degree(), t.entries()[ord..].to_vec())?;
        blocks.push((g, ord));
    }
    let rest = canon.component_of(&t)?;
    debug_assert!({
        let mut whole = Vec::new();
        for (g, ord) in &blocks {
            whole.extend(std::iter::repeat(g.clone()).take(*ord));
        }
        whole.extend(t.entries().iter().cloned());
        let w = GTuple::new(t.perm_degree(), whole)?;
        canon.component_of(&w)? == *x
    });
    Ok(Factorization { blocks, rest })
}

/// `(2 |c| psi(H), sum over classes |gamma| [ord(gamma)(|gamma| + phi(ord gamma)) - 1])`.
pub fn reduction_bounds(c: &ClassSet, caps: &Caps) -> Result<(u128, u128)> {
    let psi = c.group().order_statistics(caps.max_elements)?.psi;
    let coarse = 2 * c.len() as u128 * psi;
    let mut refined: u128 = 0;
    for &id in c.class_ids() {
        let class = c.table().class(id);
        let size = class.elements.len() as u128;
        let ord = class.representative.order();
        refined += size * (ord as u128 * (size + totient(ord) as u128) - 1);
    }
    Ok((coarse, refined))
}

/// `prod_{g in c} (g, .., g)` with blocks of length `ord(g)`, in the given
/// element order.
pub fn build_v_tuple(degree: usize, order: &[Permutation]) -> Result<GTuple> {
    let mut entries = Vec::new();
    for g in order {
        entries.extend(std::iter::repeat(g.clone()).take(g.order() as usize));
    }
    GTuple::new(degree, entries)
}

/// The `V` component, blocks in increasing element order.
pub fn build_v(c: &ClassSet, caps: &Caps) -> Result<Component> {
    build_v_ordered(c, &c.elements(), caps)
}

/// The `V` component with blocks in a caller-chosen order; `order` must
/// list every element of `c` once.
pub fn build_v_ordered(c: &ClassSet, order: &[Permutation], caps: &Caps) -> Result<Component> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != c.elements() {
        return Err(Error::Parse(
            "block order must list every element of c exactly once".into(),
        ));
    }
    let t = build_v_tuple(c.group().degree(), order)?;
    let total: usize = t.len();
    if total > caps.max_orbit {
        return Err(Error::CapExceeded {
            cap: "max_orbit",
            limit: caps.max_orbit,
        });
    }
    crate::braid::component_of(&t, caps.max_orbit)
}

/// Whether no proper subgroup of `H` meets every class of `c`.
pub fn is_complete_class_set(c: &ClassSet, caps: &Caps) -> Result<bool> {
    let g = c.group();
    let elements = g.elements(caps.max_elements)?;
    let index: HashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let words = elements.len().div_ceil(64);
    let classes: Vec<Vec<usize>> = c
        .class_ids()
        .iter()
        .map(|&id| {
            c.table().class(id).elements.iter().map(|e| index[e]).collect()
        })
        .collect();
    let meets_all = |bits: &[u64]| {
        classes
            .iter()
            .all(|cl| cl.iter().any(|&i| bits[i / 64] >> (i % 64) & 1 == 1))
    };
    let to_bits = |sub: &PermutationGroup| -> Result<Vec<u64>> {
        let mut bits = vec![0u64; words];
        for e in sub.elements(caps.max_elements)? {
            let i = index[&e];
            bits[i / 64] |= 1 << (i % 64);
        }
        Ok(bits)
    };
    let full = g.order();
    let mut known: HashSet<Vec<u64>> = HashSet::new();
    let mut subgroups: Vec<PermutationGroup> = Vec::new();
    for e in &elements {
        let cyc = PermutationGroup::new(g.degree(), vec![e.clone()])?;
        let bits = to_bits(&cyc)?;
        if known.insert(bits.clone()) {
            if cyc.order() < full && meets_all(&bits) {
                return Ok(false);
            }
            subgroups.push(cyc);
        }
    }
    let mut frontier: Vec<usize> = (0..subgroups.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &a in &frontier {
            for b in 0..subgroups.len() {
                let j = subgroups[a].join(&subgroups[b])?;
                if j.order() == full {
                    continue;
                }
                let bits = to_bits(&j)?;
                if known.insert(bits.clone()) {
                    if meets_all(&bits) {
                        return Ok(false);
                    }
                    if known.len() > caps.max_elements {
                        return Err(Error::CapExceeded {
                            cap: "max_elements",
                            limit: caps.max_elements,
                        });
                    }
                    subgroups.push(j);
                    next.push(subgroups.len() - 1);
                }
            }
        }
        frontier = next;
    }
    Ok(true)
}
