//! Worked examples reproduced by `paper-example ID`.

use std::collections::BTreeMap;
use std::sync::Arc;

use hurwitz_core::braid::{self, ComponentFilter};
use hurwitz_core::galois::{self, make_context, ActionResolution, ContextMode};
use hurwitz_core::lifting;
use hurwitz_core::monoid;
use hurwitz_core::{Caps, ClassSet, GTuple, Permutation, PermutationGroup};
use serde_json::{json, Value};

use crate::{io, CliError};

pub fn run(id: &str, caps: &Caps) -> Result<Value, CliError> {
    match id {
        "5.5" => m23(caps),
        "5.6" => order_8160(caps),
        "2.13" => cyclic_rationality(caps),
        "2.14" => transpositions_s3(caps),
        "3.15" => v_component(caps),
        other => Err(CliError::Input(format!(
            "unknown example `{other}` (known: 5.5, 5.6, 2.13, 2.14, 3.15)"
        ))),
    }
}

fn two_generators(n: usize, a: &str, b: &str) -> Result<(Permutation, Permutation, PermutationGroup), CliError> {
    let a = Permutation::parse_cycles(a, n)?;
    let b = Permutation::parse_cycles(b, n)?;
    let g = PermutationGroup::new(n, vec![a.clone(), b.clone()])?;
    Ok((a, b, g))
}

fn m23(caps: &Caps) -> Result<Value, CliError> {
    let (a, b, g) = two_generators(
        23,
        "(1, 22, 14) (2, 13, 9) (3, 8, 6) (7, 16, 21) (10, 18, 19) (11, 23, 12)",
        "(2, 4, 16) (3, 5, 7) (6, 11, 12) (8, 9, 14) (10, 21, 20) (15, 18, 17)",
    )?;
    let conj = g.are_conjugate(&a, &b, caps.max_orbit)?;
    Ok(json!({
        "a": a.to_string(),
        "b": b.to_string(),
        "order": g.order(),
        "transitive": g.is_transitive(),
        "generator_orders": [a.order(), b.order()],
        "conjugate": conj,
    }))
}

fn order_8160(caps: &Caps) -> Result<Value, CliError> {
    let (a, b, g) = two_generators(
        17,
        "(1, 11, 5, 13, 14, 17) (3, 15, 7, 12, 8, 6) (9, 10, 16)",
        "(1, 2, 15, 12, 8, 5) (3, 14, 11, 4, 9, 6) (7, 10, 17)",
    )?;
    let conj = g.are_conjugate(&a, &b, caps.max_orbit)?;
    Ok(json!({
        "a": a.to_string(),
        "b": b.to_string(),
        "order": g.order(),
        "transitive": g.is_transitive(),
        "generator_orders": [a.order(), b.order()],
        "conjugate": conj,
    }))
}

fn cyclic(n: usize) -> Result<PermutationGroup, CliError> {
    let cycle: Vec<usize> = (0..n).collect();
    let g = Permutation::from_cycles(n, &[cycle])?;
    Ok(PermutationGroup::new(n, vec![g])?)
}

fn cyclic_rationality(caps: &Caps) -> Result<Value, CliError> {
    let z3 = cyclic(3)?;
    let g = z3.generators()[0].clone();
    let x = braid::component_of(&GTuple::new(3, vec![g; 3])?, caps.max_orbit)?;
    let ctx = make_context(3, ContextMode::Full)?;
    let triple = galois::is_defined_over_abelian(&x, &ctx, caps)?;
    let mut rows = Vec::new();
    for n in 2..=12usize {
        let zn = cyclic(n)?;
        let g = zn.generators()[0].clone();
        let x = braid::component_of(&GTuple::new(n, vec![g.clone(), g.inverse()])?, caps.max_orbit)?;
        let ctx = make_context(n as u64, ContextMode::Full)?;
        rows.push(json!({
            "n": n,
            "defined": galois::is_defined_over_abelian(&x, &ctx, caps)?,
        }));
    }
    Ok(json!({
        "one_one_one_over_z3": triple,
        "one_minus_one": rows,
    }))
}

/// Components of transposition tuples in S3 are told apart by monodromy
/// group and multidiscriminant, are rational, and the unit action fixes
/// each of them.
fn transpositions_s3(caps: &Caps) -> Result<Value, CliError> {
    let (_, _, s3) = two_generators(3, "(1, 2)", "(1, 2, 3)")?;
    let table = Arc::new(s3.conjugacy_classes(caps.max_elements)?);
    let c = ClassSet::filtered(table, Permutation::is_transposition);
    let cover = lifting::build_schur_cover(&c, caps)?;
    let ctx = make_context(s3.order_statistics(caps.max_elements)?.exponent, ContextMode::Full)?;
    let mut rows = Vec::new();
    for degree in 0..=8usize {
        let comps = braid::enumerate_components(&c, degree, ComponentFilter::default(), caps)?;
        let mut keys: BTreeMap<(Vec<Permutation>, BTreeMap<usize, usize>), usize> = BTreeMap::new();
        let mut rational = true;
        let mut fixed = true;
        for x in &comps {
            let mu = braid::multidiscriminant(x.canonical(), &c)?;
            let mut elements = x.monodromy().elements(caps.max_elements)?;
            elements.sort();
            *keys.entry((elements, mu.counts().clone())).or_default() += 1;
            rational &= galois::is_rational_multidiscriminant(x, &c, &ctx)?;
            for &k in ctx.units() {
                fixed &= galois::resolve_action(x, k, &cover, caps)?
                    == ActionResolution::Determined(x.clone());
            }
        }
        rows.push(json!({
            "degree": degree,
            "components": comps.len(),
            "separated": keys.values().all(|&n| n == 1),
            "rational": rational,
            "fixed_by_units": fixed,
        }));
    }
    Ok(json!({ "group_order": s3.order(), "by_degree": rows }))
}

/// The component built from ord(g) copies of every g in c = G minus the
/// identity. Canonical forms are computed only where the orbit fits the
/// default caps.
fn v_component(caps: &Caps) -> Result<Value, CliError> {
    let mut rows = Vec::new();
    for (name, g, canonicalize) in [
        ("Z/3", cyclic(3)?, true),
        ("V4", two_generators(4, "(1, 2)(3, 4)", "(1, 3)(2, 4)")?.2, true),
        ("S3", two_generators(3, "(1, 2)", "(1, 2, 3)")?.2, false),
    ] {
        let table = Arc::new(g.conjugacy_classes(caps.max_elements)?);
        let c = ClassSet::nonidentity(table);
        let order = c.elements();
        let t = monoid::build_v_tuple(g.degree(), &order)?;
        let mut row = json!({
            "group": name,
            "group_order": g.order(),
            "complete": monoid::is_complete_class_set(&c, caps)?,
            "tuple_degree": t.len(),
            "product_one": t.is_product_one(),
            "generates": t.group().same_as(&g),
        });
        if canonicalize {
            let v = monoid::build_v(&c, caps)?;
            let mut reversed = order.clone();
            reversed.reverse();
            let w = monoid::build_v_ordered(&c, &reversed, caps)?;
            let ctx = make_context(g.order_statistics(caps.max_elements)?.exponent, ContextMode::Full)?;
            row["v"] = io::component_json(&v);
            row["order_independent"] = json!(v == w);
            row["defined"] = json!(galois::is_defined_over_abelian(&v, &ctx, caps)?);
        }
        rows.push(row);
    }
    Ok(json!({ "examples": rows }))
}
