//! Coset enumeration over the trivial subgroup (HLT strategy with
//! coincidence processing), producing the regular representation of a
//! finitely presented group.
//!
//! Words are sequences of columns: `2i` is generator `i`, `2i + 1` its
//! inverse.

use std::collections::VecDeque;

use crate::{Error, Result};

const UNDEF: u32 = u32::MAX;

#[inline]
pub fn inverse_letter(x: usize) -> usize {
    x ^ 1
}

/// Inverse of a word.
pub fn invert_word(w: &[usize]) -> Vec<usize> {
    w.iter().rev().map(|&x| inverse_letter(x)).collect()
}

/// Free reduction (cyclic reduction is not applied).
pub fn free_reduce(w: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&inverse_letter(x)) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// A complete, standardized coset table: `row(c)[x]` is the coset `c·x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    columns: usize,
    cells: Vec<u32>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.cells.len() / self.columns.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    #[inline]
    pub fn get(&self, coset: usize, column: usize) -> usize {
        self.cells[coset * self.columns + column] as usize
    }

    /// Coset reached from `start` by reading `word`.
    pub fn trace(&self, start: usize, word: &[usize]) -> usize {
        word.iter().fold(start, |c, &x| self.get(c, x))
    }

    /// Every relator returns every coset to itself and every column is a
    /// permutation inverse to its partner column.
    pub fn is_consistent(&self, relators: &[Vec<usize>]) -> bool {
        let n = self.len();
        (0..n).all(|c| {
            relators.iter().all(|r| self.trace(c, r) == c)
                && (0..self.columns).all(|x| {
                    let d = self.get(c, x);
                    d < n && self.get(d, inverse_letter(x)) == c
                })
        })
    }
}

struct Enumerator {
    columns: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: VecDeque<usize>,
    max_cosets: usize,
}

impl Enumerator {
    fn rows(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn cell(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.columns + x]
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, d: u32) {
        self.table[c * self.columns + x] = d;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.rows() >= self.max_cosets {
            return Err(Error::CosetLimitExceeded(self.max_cosets));
        }
        let d = self.rows();
        self.parent.push(d as u32);
        self.table.extend(std::iter::repeat(UNDEF).take(self.columns));
        self.set(c, x, d as u32);
        self.set(d, inverse_letter(x), c as u32);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut k = c;
        while self.parent[k] as usize != root {
            let next = self.parent[k] as usize;
            self.parent[k] = root as u32;
            k = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra == rb {
            return;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo as u32;
        self.queue.push_back(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        while let Some(g) = self.queue.pop_front() {
            for x in 0..self.columns {
                let d = self.cell(g, x);
                if d == UNDEF {
                    continue;
                }
                let d = d as usize;
                let xi = inverse_letter(x);
                if self.cell(d, xi) as usize == g {
                    self.set(d, xi, UNDEF);
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mx = self.cell(mu, x);
                if mx != UNDEF {
                    self.merge(nu, mx as usize);
                } else {
                    let nxi = self.cell(nu, xi);
                    if nxi != UNDEF {
                        self.merge(mu, nxi as usize);
                    } else {
                        self.set(mu, x, nu as u32);
                        self.set(nu, xi, mu as u32);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, alpha: usize, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = alpha;
        let mut b = alpha;
        let mut i: isize = 0;
        let mut j: isize = w.len() as isize - 1;
        loop {
            while i <= j && self.cell(f, w[i as usize]) != UNDEF {
                f = self.cell(f, w[i as usize]) as usize;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.cell(b, inverse_letter(w[j as usize])) != UNDEF {
                b = self.cell(b, inverse_letter(w[j as usize])) as usize;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            } else if i == j {
                let x = w[i as usize];
                self.set(f, x, b as u32);
                self.set(b, inverse_letter(x), f as u32);
                return Ok(());
            } else {
                self.define(f, w[i as usize])?;
            }
        }
    }
}

/// Enumerates the cosets of the trivial subgroup of `<gens | relators>`.
///
/// Fails with [`Error::CosetLimitExceeded`] when more than `max_cosets`
/// cosets would be defined; this is inconclusive, not a proof that the group
/// is infinite.
pub fn enumerate_cosets(
    generators: usize,
    relators: &[Vec<usize>],
    max_cosets: usize,
) -> Result<CosetTable> {
    let columns = 2 * generators;
    let relators: Vec<Vec<usize>> = relators
        .iter()
        .map(|r| free_reduce(r))
        .filter(|r| !r.is_empty())
        .collect();
    if max_cosets == 0 {
        return Err(Error::CosetLimitExceeded(0));
    }
    let mut e = Enumerator {
        columns,
        table: vec![UNDEF; columns],
        parent: vec![0],
        queue: VecDeque::new(),
        max_cosets,
    };
    let mut alpha = 0;
    while alpha < e.rows() {
        if e.is_live(alpha) {
            for r in &relators {
                e.scan_and_fill(alpha, r)?;
                if !e.is_live(alpha) {
                    break;
                }
            }
            for x in 0..columns {
                if !e.is_live(alpha) {
                    break;
                }
                if e.cell(alpha, x) == UNDEF {
                    e.define(alpha, x)?;
                }
            }
        }
        alpha += 1;
    }
    Ok(standardize(&mut e))
}

/// Renumbers the live cosets in breadth-first order from coset 0.
fn standardize(e: &mut Enumerator) -> CosetTable {
    let columns = e.columns;
    let mut order: Vec<usize> = vec![0];
    let mut new_index = vec![UNDEF; e.rows()];
    new_index[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let c = order[i];
        for x in 0..columns {
            let d = e.cell(c, x) as usize;
            let d = e.rep(d);
            if new_index[d] == UNDEF {
                new_index[d] = order.len() as u32;
                order.push(d);
            }
        }
        i += 1;
    }
    let mut cells = Vec::with_capacity(order.len() * columns);
    for &c in &order {
        for x in 0..columns {
            let d = e.rep(e.cell(c, x) as usize);
            cells.push(new_index[d]);
        }
    }
    CosetTable { columns, cells }
}
