#![allow(dead_code)]

use std::sync::Arc;

use hurwitz_core::{ClassSet, ClassTable, GTuple, Permutation, PermutationGroup};

pub fn perm(s: &str, n: usize) -> Permutation {
    Permutation::parse_cycles(s, n).unwrap()
}

pub fn group(n: usize, gens: &[&str]) -> PermutationGroup {
    PermutationGroup::new(n, gens.iter().map(|s| perm(s, n)).collect()).unwrap()
}

pub fn table(g: &PermutationGroup) -> Arc<ClassTable> {
    Arc::new(g.conjugacy_classes(100_000).unwrap())
}

pub fn cyclic(n: usize) -> PermutationGroup {
    let cycle: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    group(n, &[&format!("({})", cycle.join(" "))])
}

pub fn z2() -> PermutationGroup {
    group(2, &["(1 2)"])
}
pub fn v4() -> PermutationGroup {
    group(4, &["(1 2)(3 4)", "(1 3)(2 4)"])
}
pub fn s3() -> PermutationGroup {
    group(3, &["(1 2)", "(1 2 3)"])
}
pub fn d4() -> PermutationGroup {
    group(4, &["(1 2 3 4)", "(1 3)"])
}
pub fn a4() -> PermutationGroup {
    group(4, &["(1 2 3)", "(2 3 4)"])
}
pub fn s4() -> PermutationGroup {
    group(4, &["(1 2)", "(1 2 3 4)"])
}
pub fn q8() -> PermutationGroup {
    group(8, &["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"])
}

pub fn transpositions(g: &PermutationGroup) -> ClassSet {
    ClassSet::filtered(table(g), Permutation::is_transposition)
}

pub fn nonidentity(g: &PermutationGroup) -> ClassSet {
    ClassSet::nonidentity(table(g))
}

/// `g^h = h g h^{-1}` computed directly on image arrays, where products
/// apply the left factor first.
pub fn conj_raw(g: &Permutation, h: &Permutation) -> Permutation {
    let hv: Vec<usize> = h.images().collect();
    let gv: Vec<usize> = g.images().collect();
    let mut hinv = vec![0; hv.len()];
    for (i, &x) in hv.iter().enumerate() {
        hinv[x] = i;
    }
    Permutation::from_images((0..hv.len()).map(|i| hinv[gv[hv[i]]]).collect()).unwrap()
}

/// `sigma_i` (0-based `i`) on a list of entries.
pub fn move_raw(entries: &[Permutation], i: usize) -> Vec<Permutation> {
    let mut out = entries.to_vec();
    out[i] = conj_raw(&entries[i + 1], &entries[i]);
    out[i + 1] = entries[i].clone();
    out
}

pub fn product_raw(entries: &[Permutation], n: usize) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    for g in entries {
        let gv: Vec<usize> = g.images().collect();
        v = v.iter().map(|&x| gv[x]).collect();
    }
    Permutation::from_images(v).unwrap()
}

/// Every product-one tuple of length `len` over `elements`, by brute force.
pub fn product_one_tuples(elements: &[Permutation], len: usize, n: usize) -> Vec<GTuple> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; len];
    if len == 0 {
        return vec![GTuple::empty(n)];
    }
    if elements.is_empty() {
        return out;
    }
    loop {
        let entries: Vec<Permutation> = idx.iter().map(|&i| elements[i].clone()).collect();
        if product_raw(&entries, n).is_identity() {
            out.push(GTuple::new(n, entries).unwrap());
        }
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < elements.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

pub fn subgroup_key(g: &PermutationGroup) -> Vec<Permutation> {
    g.elements(100_000).unwrap()
}
