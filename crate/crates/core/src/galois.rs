//! The cyclotomic model of the Galois action. An element `sigma` is known
//! only through the unit `k = chi(sigma)` modulo `N`.
//!
//! Conventions: abelian entries are raised to the power `k^{-1}`, and
//! multidiscriminants are precomposed with the class power map `p_k`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::braid::{
    self, multidiscriminant, Canonicalizer, Component, ComponentFilter, GTuple, Multidiscriminant,
};
use crate::lifting::{self, SchurCover};
use crate::perm::{gcd, mod_inverse, ClassSet, Permutation};
use crate::{Caps, Error, Result};

/// Image of `Gamma_K` in `(Z/N)^x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalityContext {
    modulus: u64,
    units: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContextMode {
    /// Every unit mod `N` (the field `Q`).
    Full,
    /// Only `1` (the field contains the relevant roots of unity).
    Trivial,
    Explicit(Vec<u64>),
}

impl RationalityContext {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Sorted residues.
    pub fn units(&self) -> &[u64] {
        &self.units
    }
}

pub fn make_context(modulus: u64, mode: ContextMode) -> Result<RationalityContext> {
    let n = modulus.max(1);
    let units: Vec<u64> = match mode {
        ContextMode::Full if n == 1 => vec![1],
        ContextMode::Full => (1..n).filter(|&k| gcd(k, n) == 1).collect(),
        ContextMode::Trivial => vec![1],
        ContextMode::Explicit(list) => {
            let set: BTreeSet<u64> = list.iter().map(|&k| k % n).collect();
            let ok = set.iter().all(|&k| gcd(k, n) == 1)
                && (n == 1 || set.contains(&1))
                && set
                    .iter()
                    .all(|&a| set.iter().all(|&b| set.contains(&(a * b % n))));
            if !ok || set.is_empty() {
                return Err(Error::NotAUnitSubgroup(list));
            }
            if n == 1 {
                vec![1]
            } else {
                set.into_iter().collect()
            }
        }
    };
    let mut units = units;
    units.sort_unstable();
    units.dedup();
    Ok(RationalityContext { modulus: n, units })
}

/// Whether `g^k` lies in `c` for every `g` in `c` and unit `k`.
pub fn is_rational_subset(c: &[Permutation], ctx: &RationalityContext) -> bool {
    let set: HashSet<&Permutation> = c.iter().collect();
    c.iter().all(|g| {
        ctx.units
            .iter()
            .all(|&k| set.contains(&g.pow(k as i64)))
    })
}

/// The permutation `p_k` of the classes of `c` induced by `g -> g^k`.
pub fn class_power_map(c: &ClassSet, k: u64) -> Result<BTreeMap<usize, usize>> {
    let table = c.table();
    let mut map = BTreeMap::new();
    for &id in c.class_ids() {
        let class = table.class(id);
        let mut target = None;
        for g in &class.elements {
            if gcd(k, g.order()) != 1 {
                return Err(Error::NotAUnit {
                    k,
                    modulus: g.order(),
                });
            }
            let gk = g.pow(k as i64);
            let Some(t) = c.class_of(&gk) else {
                return Err(Error::PowerLeavesC {
                    element: g.to_string(),
                    k,
                });
            };
            match target {
                None => target = Some(t),
                Some(prev) => debug_assert_eq!(prev, t),
            }
        }
        map.insert(id, target.expect("classes are nonempty"));
    }
    Ok(map)
}

/// `psi o p_k`.
pub fn act_multidiscriminant(
    psi: &Multidiscriminant,
    c: &ClassSet,
    k: u64,
) -> Result<Multidiscriminant> {
    let p = class_power_map(c, k)?;
    let counts = psi
        .class_ids()
        .map(|id| {
            let target = p.get(&id).copied().unwrap_or(id);
            (id, psi.count(target))
        })
        .collect();
    Ok(Multidiscriminant::from_counts(counts))
}

/// Whether `mu(x) = mu(x) o p_k` for every unit of the context.
pub fn is_rational_multidiscriminant(
    x: &Component,
    c: &ClassSet,
    ctx: &RationalityContext,
) -> Result<bool> {
    let mu = multidiscriminant(x.canonical(), c)?;
    for &k in &ctx.units {
        if act_multidiscriminant(&mu, c, k)? != mu {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Entrywise `k^{-1}`-th powers of an abelian component.
pub fn abelian_action(x: &Component, k: u64, caps: &Caps) -> Result<Component> {
    if !x.monodromy().is_abelian() {
        return Err(Error::NotAbelian);
    }
    let t = abelian_action_tuple(x.canonical(), k)?;
    braid::component_of(&t, caps.max_orbit)
}

fn abelian_action_tuple(t: &GTuple, k: u64) -> Result<GTuple> {
    let mut entries = Vec::with_capacity(t.len());
    for g in t.entries() {
        let m = g.order();
        let u = mod_inverse(k % m.max(1), m).ok_or(Error::NotAUnit { k, modulus: m })?;
        entries.push(g.pow(u as i64));
    }
    GTuple::new(t.perm_degree(), entries)
}

/// Whether an abelian component is fixed by every unit of the context.
pub fn is_defined_over_abelian(
    x: &Component,
    ctx: &RationalityContext,
    caps: &Caps,
) -> Result<bool> {
    for &k in &ctx.units {
        if abelian_action(x, k, caps)? != *x {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of [`resolve_action`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionResolution {
    Determined(Component),
    /// Zero or several candidates.
    Ambiguous(Vec<Component>),
}

/// Components of the same degree and monodromy group as `x` whose
/// multidiscriminant and lifting invariant match the transformed ones.
pub fn resolve_action(
    x: &Component,
    k: u64,
    cover: &SchurCover,
    caps: &Caps,
) -> Result<ActionResolution> {
    let c = cover.classes();
    let inv = lifting::lifting_invariant(x.canonical(), cover)?;
    let target = lifting::galois_act_invariant(&inv, k, cover)?;
    let mut canon = Canonicalizer::new(c.group().degree(), caps.max_orbit);
    let candidates = braid::enumerate_with(
        &mut canon,
        c,
        x.degree(),
        ComponentFilter::default(),
        caps,
    )?;
    let mut matches = Vec::new();
    for cand in candidates {
        if !cand.monodromy().same_as(x.monodromy()) {
            continue;
        }
        if lifting::lifting_invariant(cand.canonical(), cover)? == target {
            matches.push(cand);
        }
    }
    if matches.len() == 1 {
        Ok(ActionResolution::Determined(matches.pop().expect("one match")))
    } else {
        Ok(ActionResolution::Ambiguous(matches))
    }
}

/// Product of the distinct components in the orbit of `x` under the
/// context's units.
pub fn galois_norm_abelian(
    x: &Component,
    ctx: &RationalityContext,
    caps: &Caps,
) -> Result<Component> {
    let mut orbit = BTreeSet::new();
    for &k in &ctx.units {
        orbit.insert(abelian_action(x, k, caps)?);
    }
    let mut canon = Canonicalizer::new(x.perm_degree(), caps.max_orbit);
    let factors: Vec<&Component> = orbit.iter().collect();
    canon.product(&factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermutationGroup;
    use std::sync::Arc;

    fn cyclic(n: usize) -> (Arc<crate::ClassTable>, Permutation) {
        let gen = Permutation::from_images((1..n).chain([0]).collect()).unwrap();
        let g = PermutationGroup::new(n, vec![gen.clone()]).unwrap();
        (Arc::new(g.conjugacy_classes(1000).unwrap()), gen)
    }

    fn comp(gen: &Permutation, exps: &[i64]) -> Component {
        let t = GTuple::new(gen.degree(), exps.iter().map(|&e| gen.pow(e)).collect()).unwrap();
        braid::component_of(&t, 100_000).unwrap()
    }

    #[test]
    fn contexts() {
        assert_eq!(make_context(3, ContextMode::Full).unwrap().units(), &[1, 2]);
        assert_eq!(make_context(12, ContextMode::Trivial).unwrap().units(), &[1]);
        assert_eq!(
            make_context(8, ContextMode::Explicit(vec![1, 3])).unwrap().units(),
            &[1, 3]
        );
        assert!(make_context(8, ContextMode::Explicit(vec![1, 2])).is_err());
        assert!(make_context(8, ContextMode::Explicit(vec![3])).is_err());
    }

    #[test]
    fn rational_subsets() {
        let (t, g) = cyclic(3);
        let full = make_context(3, ContextMode::Full).unwrap();
        assert!(!is_rational_subset(&[g.clone()], &full));
        assert!(is_rational_subset(&[g.clone(), g.pow(2)], &full));
        assert!(is_rational_subset(&t.elements(), &full));
    }

    #[test]
    fn power_maps_z3() {
        let (t, g) = cyclic(3);
        let c = ClassSet::nonidentity(t);
        let p = class_power_map(&c, 2).unwrap();
        let a = c.class_of(&g).unwrap();
        let b = c.class_of(&g.pow(2)).unwrap();
        assert_eq!((p[&a], p[&b]), (b, a));
        let x = comp(&g, &[1, 1, 1]);
        let mu = multidiscriminant(x.canonical(), &c).unwrap();
        let acted = act_multidiscriminant(&mu, &c, 2).unwrap();
        assert_eq!((acted.count(a), acted.count(b)), (0, 3));
        let only_one = ClassSet::closure_of(c.table().clone(), &[g.clone()]).unwrap();
        assert!(matches!(
            class_power_map(&only_one, 2),
            Err(Error::PowerLeavesC { .. })
        ));
    }

    #[test]
    fn abelian_actions() {
        let caps = Caps::default();
        let (_, g5) = cyclic(5);
        let x = comp(&g5, &[1, 1, 3]);
        assert_eq!(abelian_action(&x, 2, &caps).unwrap(), comp(&g5, &[3, 3, 4]));
        assert_eq!(abelian_action(&x, 1, &caps).unwrap(), x);

        let (_, g6) = cyclic(6);
        let y = comp(&g6, &[1, -1]);
        for k in [1, 5] {
            assert_eq!(abelian_action(&y, k, &caps).unwrap(), y);
        }

        let (_, g3) = cyclic(3);
        let full3 = make_context(3, ContextMode::Full).unwrap();
        assert!(!is_defined_over_abelian(&comp(&g3, &[1, 1, 1]), &full3, &caps).unwrap());
        let full5 = make_context(5, ContextMode::Full).unwrap();
        assert!(!is_defined_over_abelian(&comp(&g5, &[1, -1]), &full5, &caps).unwrap());
        let (_, g4) = cyclic(4);
        let full4 = make_context(4, ContextMode::Full).unwrap();
        assert!(is_defined_over_abelian(&comp(&g4, &[1, -1]), &full4, &caps).unwrap());
    }

    #[test]
    fn norms() {
        let caps = Caps::default();
        let (_, g3) = cyclic(3);
        let full3 = make_context(3, ContextMode::Full).unwrap();
        let n = galois_norm_abelian(&comp(&g3, &[1, 1, 1]), &full3, &caps).unwrap();
        assert_eq!(n, comp(&g3, &[1, 1, 1, 2, 2, 2]));
        assert!(is_defined_over_abelian(&n, &full3, &caps).unwrap());

        let (_, g5) = cyclic(5);
        let full5 = make_context(5, ContextMode::Full).unwrap();
        let n = galois_norm_abelian(&comp(&g5, &[1, -1]), &full5, &caps).unwrap();
        assert_eq!(n, comp(&g5, &[1, 4, 2, 3]));
    }

    #[test]
    fn resolve_s3_transpositions() {
        let caps = Caps::default();
        let s3 = PermutationGroup::new(
            3,
            vec![
                Permutation::parse_cycles("(1 2)", 3).unwrap(),
                Permutation::parse_cycles("(1 2 3)", 3).unwrap(),
            ],
        )
        .unwrap();
        let c = ClassSet::filtered(
            Arc::new(s3.conjugacy_classes(100).unwrap()),
            Permutation::is_transposition,
        );
        let cover = lifting::build_schur_cover(&c, &caps).unwrap();
        let t = GTuple::parse(3, &["(1 2)", "(1 2)", "(1 3)", "(1 3)"]).unwrap();
        let x = braid::component_of(&t, caps.max_orbit).unwrap();
        for k in [1, 5] {
            assert_eq!(
                resolve_action(&x, k, &cover, &caps).unwrap(),
                ActionResolution::Determined(x.clone())
            );
        }
    }
}
