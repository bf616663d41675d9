//! Exhaustive and seeded random generation of small canonical hypergroups,
//! Krasner hyperrings and hypermodules, and counterexample hunting over
//! the generated instances.
//!
//! Generators fill commutative table cells one at a time and prune with
//! every axiom instance whose cells are already assigned; complete tables
//! are validated in full. Output is deduplicated by a canonical form, the
//! least table serialization over carrier permutations fixing the
//! distinguished elements, and sorted by that form.

use std::collections::HashSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::carrier::{find_tuple, next_tuple, tuple_index, Carrier};
use crate::error::{Error, Result};
use crate::format;
use crate::harness::{self, TheoremId, TheoremVerdict};
use crate::limits::Limits;
use crate::module::{Hypermodule, ScalarAction};
use crate::multiplication;
use crate::ops::{HyperOperation, Operation};
use crate::ring::KrasnerHyperring;
use crate::set::ElementSet;

/// Largest carrier the exhaustive generators accept.
pub const MAX_EXHAUSTIVE_SIZE: usize = 6;

trait Search {
    type Value: Copy;
    fn cells(&self) -> usize;
    fn options(&self, cell: usize) -> Vec<Self::Value>;
    fn set(&mut self, cell: usize, value: Option<Self::Value>);
    fn consistent(&self) -> bool;
    /// Called on a complete assignment; `true` stops the search.
    fn leaf(&mut self) -> bool;
}

fn run<S: Search>(s: &mut S, mut rng: Option<&mut ChaCha8Rng>, budget: u64) -> Result<()> {
    let mut visited = 0u64;
    go(s, 0, &mut rng, &mut visited, budget).map(|_| ())
}

fn go<S: Search>(
    s: &mut S,
    cell: usize,
    rng: &mut Option<&mut ChaCha8Rng>,
    visited: &mut u64,
    budget: u64,
) -> Result<bool> {
    if cell == s.cells() {
        return Ok(s.leaf());
    }
    let mut options = s.options(cell);
    if let Some(r) = rng.as_deref_mut() {
        options.shuffle(r);
    }
    for v in options {
        *visited += 1;
        if *visited > budget {
            return Err(Error::capacity("search nodes", *visited as u128, budget as u128));
        }
        s.set(cell, Some(v));
        if s.consistent() && go(s, cell + 1, rng, visited, budget)? {
            s.set(cell, None);
            return Ok(true);
        }
    }
    s.set(cell, None);
    Ok(false)
}

/// Orbit of table indices under argument permutation, one per sorted tuple.
fn commutative_cells(size: usize, arity: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut cells = Vec::new();
    let mut t = vec![0; arity];
    loop {
        if t.windows(2).all(|w| w[0] <= w[1]) {
            let mut indices = Vec::new();
            let mut p = t.clone();
            permutations_of(&mut p, 0, &mut |q| indices.push(tuple_index(q, size)));
            indices.sort_unstable();
            indices.dedup();
            cells.push((t.clone(), indices));
        }
        if !next_tuple(&mut t, size) {
            return cells;
        }
    }
}

fn permutations_of(xs: &mut [usize], k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == xs.len() {
        visit(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permutations_of(xs, k + 1, visit);
        xs.swap(k, i);
    }
}

/// Permutations of `0..size` fixing `0..fixed` pointwise.
pub fn permutations_fixing(size: usize, fixed: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let start = fixed.min(size);
    let mut tail: Vec<usize> = (start..size).collect();
    permutations_of(&mut tail, 0, &mut |q| {
        let mut p: Vec<usize> = (0..start).collect();
        p.extend_from_slice(q);
        out.push(p);
    });
    out.sort();
    out
}

fn subsets(size: usize) -> impl Iterator<Item = ElementSet> {
    (1u128..1 << size).map(ElementSet::from_bits)
}

/// Evaluate a partial table on sets; `None` when a needed entry is unset.
fn partial_eval(table: &[Option<ElementSet>], size: usize, args: &[ElementSet]) -> Option<ElementSet> {
    fn rec(table: &[Option<ElementSet>], size: usize, args: &[ElementSet], idx: usize, acc: &mut ElementSet) -> bool {
        let Some((first, rest)) = args.split_first() else {
            return match table[idx] {
                Some(v) => {
                    *acc = acc.union(v);
                    true
                }
                None => false,
            };
        };
        first.iter().all(|x| rec(table, size, rest, idx * size + x, acc))
    }
    let mut acc = ElementSet::EMPTY;
    rec(table, size, args, 0, &mut acc).then_some(acc)
}

fn singletons(t: &[usize]) -> Vec<ElementSet> {
    t.iter().map(|&x| ElementSet::singleton(x)).collect()
}

/// Partial associativity: every bracketing of every `2m-1`-tuple whose
/// entries are all assigned agrees with the leftmost bracketing.
fn partially_associative(table: &[Option<ElementSet>], size: usize, arity: usize) -> bool {
    let mut args = vec![ElementSet::EMPTY; arity];
    find_tuple(size, 2 * arity - 1, |t| {
        let inner = partial_eval(table, size, &singletons(&t[..arity]))?;
        args[0] = inner;
        for (a, &x) in args[1..].iter_mut().zip(&t[arity..]) {
            *a = ElementSet::singleton(x);
        }
        let reference = partial_eval(table, size, &args)?;
        (1..arity).find_map(|i| {
            let inner = partial_eval(table, size, &singletons(&t[i..i + arity]))?;
            let mut outer = singletons(&t[..i]);
            outer.push(inner);
            outer.extend(singletons(&t[i + arity..]));
            let other = partial_eval(table, size, &outer)?;
            (other != reference).then_some(())
        })
    })
    .is_none()
}

/// Least table over the given relabelings, and the relabeling attaining it.
fn least_form<T: Ord>(perms: &[Vec<usize>], form: impl Fn(&[usize]) -> T) -> (T, usize) {
    perms
        .iter()
        .enumerate()
        .map(|(i, p)| (form(p), i))
        .min()
        .expect("at least the identity permutation")
}

struct HypergroupSearch {
    size: usize,
    arity: usize,
    cells: Vec<(Vec<usize>, Vec<usize>)>,
    table: Vec<Option<ElementSet>>,
    inverse: Option<Vec<usize>>,
    perms: Vec<Vec<usize>>,
    seen: HashSet<Vec<ElementSet>>,
    out: Vec<(Vec<ElementSet>, HyperOperation)>,
}

impl Search for HypergroupSearch {
    type Value = ElementSet;

    fn cells(&self) -> usize {
        self.cells.len()
    }

    fn options(&self, cell: usize) -> Vec<ElementSet> {
        let t = &self.cells[cell].0;
        let nonzero: Vec<usize> = t.iter().copied().filter(|&x| x != 0).collect();
        match nonzero.as_slice() {
            [] => return vec![ElementSet::singleton(0)],
            [x] => return vec![ElementSet::singleton(*x)],
            _ => {}
        }
        let holds_zero = match (&self.inverse, nonzero.as_slice()) {
            (Some(inv), [x, y]) if self.arity == 2 => Some(inv[*x] == *y),
            _ => None,
        };
        subsets(self.size)
            .filter(|s| holds_zero.map_or(true, |z| s.contains(0) == z))
            .collect()
    }

    fn set(&mut self, cell: usize, value: Option<ElementSet>) {
        for &i in &self.cells[cell].1 {
            self.table[i] = value;
        }
    }

    fn consistent(&self) -> bool {
        partially_associative(&self.table, self.size, self.arity)
    }

    fn leaf(&mut self) -> bool {
        let table: Vec<ElementSet> = self.table.iter().map(|v| v.expect("complete")).collect();
        let op = HyperOperation::from_table(self.size, self.arity, table).expect("shape");
        let report = op.canonical_report();
        if !report.is_canonical || report.neutral != Some(0) {
            return false;
        }
        let (form, best) = least_form(&self.perms, |p| op.permuted(p).table().to_vec());
        if self.seen.insert(form.clone()) {
            self.out.push((form, op.permuted(&self.perms[best])));
        }
        false
    }
}

/// Involutions of `1..size`, each as a full map with `0 -> 0`.
fn involutions(size: usize) -> Vec<Vec<usize>> {
    fn go(inv: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        let Some(x) = inv.iter().position(|v| v.is_none()) else {
            out.push(inv.iter().map(|v| v.expect("filled")).collect());
            return;
        };
        inv[x] = Some(x);
        go(inv, out);
        for y in x + 1..inv.len() {
            if inv[y].is_none() {
                inv[x] = Some(y);
                inv[y] = Some(x);
                go(inv, out);
                inv[y] = None;
            }
        }
        inv[x] = None;
    }
    let mut inv = vec![None; size];
    inv[0] = Some(0);
    let mut out = Vec::new();
    go(&mut inv, &mut out);
    out
}

/// All commutative canonical `arity`-ary hypergroups on `0..size` with
/// identity `0`, one per isomorphism class, in canonical form.
pub fn canonical_hypergroups(size: usize, arity: usize, limits: &Limits) -> Result<Vec<HyperOperation>> {
    check_size(size)?;
    if arity < 2 {
        return Err(Error::Arity(format!("hypergroup arity must be at least 2, got {arity}")));
    }
    let inverses: Vec<Option<Vec<usize>>> = if arity == 2 {
        involutions(size).into_iter().map(Some).collect()
    } else {
        vec![None]
    };
    let cells = commutative_cells(size, arity);
    let perms = permutations_fixing(size, 1);
    let table_len = size.pow(arity as u32);
    let runs: Vec<Result<Vec<(Vec<ElementSet>, HyperOperation)>>> = inverses
        .into_par_iter()
        .map(|inverse| {
            let mut s = HypergroupSearch {
                size,
                arity,
                cells: cells.clone(),
                table: vec![None; table_len],
                inverse,
                perms: perms.clone(),
                seen: HashSet::new(),
                out: Vec::new(),
            };
            run(&mut s, None, limits.search_budget)?;
            Ok(s.out)
        })
        .collect();
    merge(runs)
}

fn merge<T>(runs: Vec<Result<Vec<(Vec<ElementSet>, T)>>>) -> Result<Vec<T>> {
    let mut all = Vec::new();
    for r in runs {
        all.extend(r?);
    }
    all.sort_by(|a, b| a.0.cmp(&b.0));
    all.dedup_by(|a, b| a.0 == b.0);
    Ok(all.into_iter().map(|(_, x)| x).collect())
}

fn check_size(size: usize) -> Result<()> {
    if size == 0 {
        return Err(Error::Shape("carrier must have at least one element".into()));
    }
    if size > MAX_EXHAUSTIVE_SIZE {
        return Err(Error::capacity(
            "exhaustive search carrier size",
            size as u128,
            MAX_EXHAUSTIVE_SIZE as u128,
        ));
    }
    Ok(())
}

struct RingSearch<'a> {
    size: usize,
    n: usize,
    h: &'a HyperOperation,
    cells: Vec<(Vec<usize>, Vec<usize>)>,
    table: Vec<Option<usize>>,
    perms: &'a [Vec<usize>],
    seen: HashSet<(Vec<ElementSet>, Vec<usize>)>,
    out: Vec<((Vec<ElementSet>, Vec<usize>), KrasnerHyperring)>,
}

impl RingSearch<'_> {
    fn k(&self, t: &[usize]) -> Option<usize> {
        self.table[tuple_index(t, self.size)]
    }

    fn associative(&self) -> bool {
        let n = self.n;
        let mut args = vec![0; n];
        find_tuple(self.size, 2 * n - 1, |t| {
            args[0] = self.k(&t[..n])?;
            args[1..].copy_from_slice(&t[n..]);
            let reference = self.k(&args)?;
            (1..n).find_map(|i| {
                let mut other = t[..i].to_vec();
                other.push(self.k(&t[i..i + n])?);
                other.extend_from_slice(&t[i + n..]);
                (self.k(&other)? != reference).then_some(())
            })
        })
        .is_none()
    }

    /// Distributivity in the first slot; commutativity covers the others.
    fn distributive(&self) -> bool {
        let (n, m) = (self.n, self.h.arity());
        let mut args = vec![0; n];
        let mut prods = vec![0; m];
        find_tuple(self.size, n - 1 + m, |t| {
            let (rest, xs) = t.split_at(n - 1);
            args[1..].copy_from_slice(rest);
            let mut lhs = ElementSet::EMPTY;
            for y in self.h.get(xs) {
                args[0] = y;
                lhs.insert(self.k(&args)?);
            }
            for (p, &x) in prods.iter_mut().zip(xs) {
                args[0] = x;
                *p = self.k(&args)?;
            }
            (self.h.get(&prods) != lhs).then_some(())
        })
        .is_none()
    }
}

impl Search for RingSearch<'_> {
    type Value = usize;

    fn cells(&self) -> usize {
        self.cells.len()
    }

    fn options(&self, cell: usize) -> Vec<usize> {
        let t = &self.cells[cell].0;
        if t.contains(&0) {
            return vec![0];
        }
        let rest: Vec<usize> = t.iter().copied().filter(|&x| x != 1).collect();
        match rest.as_slice() {
            [] => vec![1],
            [x] => vec![*x],
            _ => (0..self.size).collect(),
        }
    }

    fn set(&mut self, cell: usize, value: Option<usize>) {
        for &i in &self.cells[cell].1 {
            self.table[i] = value;
        }
    }

    fn consistent(&self) -> bool {
        self.associative() && self.distributive()
    }

    fn leaf(&mut self) -> bool {
        let table: Vec<usize> = self.table.iter().map(|v| v.expect("complete")).collect();
        let k = Operation::from_table(self.size, self.n, table).expect("shape");
        let carrier = Carrier::numbered(self.size).expect("small carrier");
        let ring = KrasnerHyperring::new(carrier, self.h.clone(), k, 0, 1).expect("shape");
        if !ring.validate().is_valid() {
            return false;
        }
        let (form, best) = least_form(self.perms, |p| {
            (ring.h().permuted(p).table().to_vec(), ring.k().permuted(p).table().collect::<Vec<_>>())
        });
        if self.seen.insert(form.clone()) {
            let p = &self.perms[best];
            let relabeled = KrasnerHyperring::new(
                ring.carrier().clone(),
                ring.h().permuted(p),
                ring.k().permuted(p),
                0,
                1,
            )
            .expect("shape");
            self.out.push((form, relabeled));
        }
        false
    }
}

/// The zero ring: one element, `1 = 0`.
pub fn zero_ring(m: usize, n: usize) -> Result<KrasnerHyperring> {
    let h = HyperOperation::from_fn(1, m, |_| ElementSet::singleton(0))?;
    let k = Operation::from_fn(1, n, |_| 0)?;
    KrasnerHyperring::new(Carrier::numbered(1)?, h, k, 0, 0)
}

/// All commutative Krasner (m,n)-hyperrings on `size` elements, one per
/// isomorphism class, with `0` and `1` at indices 0 and 1. Size 1 yields
/// the degenerate zero ring.
pub fn krasner_hyperrings(size: usize, m: usize, n: usize, limits: &Limits) -> Result<Vec<KrasnerHyperring>> {
    check_size(size)?;
    if n < 2 {
        return Err(Error::Arity(format!("multiplication arity must be at least 2, got {n}")));
    }
    if size == 1 {
        return Ok(vec![zero_ring(m, n)?]);
    }
    let additive = canonical_hypergroups(size, m, limits)?;
    let cells = commutative_cells(size, n);
    let perms = permutations_fixing(size, 2);
    let table_len = size.pow(n as u32);
    let runs: Vec<Result<Vec<((Vec<ElementSet>, Vec<usize>), KrasnerHyperring)>>> = additive
        .par_iter()
        .map(|h| {
            let mut out = Vec::new();
            let mut seen = HashSet::new();
            for one in 1..size {
                let mut swap: Vec<usize> = (0..size).collect();
                swap.swap(1, one);
                let h1 = h.permuted(&swap);
                let mut s = RingSearch {
                    size,
                    n,
                    h: &h1,
                    cells: cells.clone(),
                    table: vec![None; table_len],
                    perms: &perms,
                    seen: std::mem::take(&mut seen),
                    out: Vec::new(),
                };
                run(&mut s, None, limits.search_budget)?;
                seen = s.seen;
                out.extend(s.out);
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for r in runs {
        all.extend(r?);
    }
    all.sort_by(|a, b| a.0.cmp(&b.0));
    all.dedup_by(|a, b| a.0 == b.0);
    Ok(all.into_iter().map(|(_, r)| r).collect())
}

struct ModuleSearch<'a> {
    ring: &'a Arc<KrasnerHyperring>,
    f: &'a HyperOperation,
    size: usize,
    scalars: usize,
    cells: Vec<Vec<usize>>,
    table: Vec<Option<ElementSet>>,
    perms: &'a [Vec<usize>],
    seen: HashSet<(Vec<ElementSet>, Vec<ElementSet>)>,
    out: Vec<((Vec<ElementSet>, Vec<ElementSet>), Hypermodule)>,
    limit: Option<usize>,
}

impl ModuleSearch<'_> {
    fn g(&self, rs: &[usize], x: usize) -> Option<ElementSet> {
        self.table[tuple_index(rs, self.ring.size()) * self.size + x]
    }

    fn g_set(&self, rs: &[usize], xs: ElementSet) -> Option<ElementSet> {
        xs.iter().try_fold(ElementSet::EMPTY, |acc, x| Some(acc.union(self.g(rs, x)?)))
    }

    /// `g(r, f(x)) = f(g(r, x_1), ..., g(r, x_m))`.
    fn axiom_i(&self) -> bool {
        let m = self.f.arity();
        let mut parts = vec![ElementSet::EMPTY; m];
        find_tuple(self.ring.size(), self.scalars, |rs| {
            find_tuple(self.size, m, |xs| {
                let lhs = self.g_set(rs, self.f.get(xs))?;
                for (p, &x) in parts.iter_mut().zip(xs) {
                    *p = self.g(rs, x)?;
                }
                (self.f.eval_sets(&parts) != lhs).then_some(())
            })
        })
        .is_none()
    }

    /// `g(h(s), r, x) = f(g(s_1, r, x), ..., g(s_m, r, x))` in the first slot.
    fn axiom_ii(&self) -> bool {
        let ring = &**self.ring;
        let m = ring.m();
        let mut rs = vec![0; self.scalars];
        let mut parts = vec![ElementSet::EMPTY; m];
        find_tuple(ring.size(), self.scalars - 1 + m, |t| {
            let (rest, ss) = t.split_at(self.scalars - 1);
            rs[1..].copy_from_slice(rest);
            (0..self.size).find_map(|x| {
                let mut lhs = ElementSet::EMPTY;
                for r in ring.h().get(ss) {
                    rs[0] = r;
                    lhs = lhs.union(self.g(&rs, x)?);
                }
                for (p, &s) in parts.iter_mut().zip(ss) {
                    rs[0] = s;
                    *p = self.g(&rs, x)?;
                }
                (self.f.eval_sets(&parts) != lhs).then_some(())
            })
        })
        .is_none()
    }

    /// Binary action only: `g(k(r, s), x) = g(r, g(s, x))`.
    fn axiom_iii(&self) -> bool {
        if self.scalars != 1 {
            return true;
        }
        let ring = &**self.ring;
        find_tuple(ring.size(), 2, |rs| {
            (0..self.size).find_map(|x| {
                let lhs = self.g(&[ring.k().get(rs)], x)?;
                let inner = self.g(&rs[1..], x)?;
                (self.g_set(&rs[..1], inner)? != lhs).then_some(())
            })
        })
        .is_none()
    }
}

impl Search for ModuleSearch<'_> {
    type Value = ElementSet;

    fn cells(&self) -> usize {
        self.cells.len()
    }

    fn options(&self, cell: usize) -> Vec<ElementSet> {
        let t = &self.cells[cell];
        let (rs, x) = t.split_at(self.scalars);
        if rs.contains(&self.ring.zero()) {
            return vec![ElementSet::singleton(0)];
        }
        if rs.iter().all(|&r| r == self.ring.one()) {
            return vec![ElementSet::singleton(x[0])];
        }
        subsets(self.size).collect()
    }

    fn set(&mut self, cell: usize, value: Option<ElementSet>) {
        let t = &self.cells[cell];
        let idx = tuple_index(&t[..self.scalars], self.ring.size()) * self.size + t[self.scalars];
        self.table[idx] = value;
    }

    fn consistent(&self) -> bool {
        self.axiom_i() && self.axiom_ii() && self.axiom_iii()
    }

    fn leaf(&mut self) -> bool {
        let table: Vec<ElementSet> = self.table.iter().map(|v| v.expect("complete")).collect();
        let g = ScalarAction::from_table(self.ring.size(), self.size, self.scalars, table).expect("shape");
        let carrier = Carrier::numbered(self.size).expect("small carrier");
        let module = Hypermodule::new(self.ring.clone(), carrier, self.f.clone(), g, 0).expect("shape");
        if !module.validate().is_valid() {
            return false;
        }
        let (form, best) = least_form(self.perms, |p| {
            (module.f().permuted(p).table().to_vec(), module.g().permuted(p).table().to_vec())
        });
        if self.seen.insert(form.clone()) {
            self.out.push((form, module.permuted(&self.perms[best])));
        }
        self.limit.is_some_and(|l| self.out.len() >= l)
    }
}

fn module_search<'a>(
    ring: &'a Arc<KrasnerHyperring>,
    f: &'a HyperOperation,
    perms: &'a [Vec<usize>],
    limit: Option<usize>,
) -> ModuleSearch<'a> {
    let size = f.size();
    let scalars = ring.n() - 1;
    // Row-major by scalars so each scalar row completes before the next.
    let mut cells = Vec::new();
    find_tuple::<()>(ring.size(), scalars, |rs| {
        for x in 0..size {
            let mut c = rs.to_vec();
            c.push(x);
            cells.push(c);
        }
        None
    });
    ModuleSearch {
        ring,
        f,
        size,
        scalars,
        cells,
        table: vec![None; ring.size().pow(scalars as u32) * size],
        perms,
        seen: HashSet::new(),
        out: Vec::new(),
        limit,
    }
}

/// All (m,n)-hypermodules of `size` elements over `ring`, one per
/// isomorphism class (relabelings of the module fixing its zero).
pub fn hypermodules(ring: &Arc<KrasnerHyperring>, size: usize, limits: &Limits) -> Result<Vec<Hypermodule>> {
    check_size(size)?;
    let additive = canonical_hypergroups(size, ring.m(), limits)?;
    let perms = permutations_fixing(size, 1);
    let runs: Vec<Result<Vec<((Vec<ElementSet>, Vec<ElementSet>), Hypermodule)>>> = additive
        .par_iter()
        .map(|f| {
            let mut s = module_search(ring, f, &perms, None);
            run(&mut s, None, limits.search_budget)?;
            Ok(s.out)
        })
        .collect();
    let mut all = Vec::new();
    for r in runs {
        all.extend(r?);
    }
    all.sort_by(|a, b| a.0.cmp(&b.0));
    all.dedup_by(|a, b| a.0 == b.0);
    Ok(all.into_iter().map(|(_, m)| m).collect())
}

/// What a hunt evaluates on each instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Theorems(Vec<TheoremId>),
    /// Record the multiplication property of every instance.
    Multiplication,
}

impl Target {
    /// A theorem selector (`L3.2`, `T3.8`, `all`) or `is_multiplication`.
    pub fn parse(s: &str) -> Result<Target> {
        if s == "is_multiplication" {
            return Ok(Target::Multiplication);
        }
        TheoremId::select(s)
            .map(Target::Theorems)
            .ok_or_else(|| Error::Precondition(format!("unknown search target `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Random { seed: u64, count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub max_ring_size: usize,
    pub max_module_size: usize,
    pub m: usize,
    pub n: usize,
    pub target: Target,
    pub mode: Mode,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Finding {
    /// A failing verdict on an instance satisfying the standing assumptions.
    Counterexample { verdict: TheoremVerdict },
    Property { name: String, holds: bool },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hit {
    pub ring_size: usize,
    pub module_size: usize,
    pub finding: Finding,
    /// The instance in the structure text format.
    pub instance: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HuntReport {
    pub rings: usize,
    pub instances: usize,
    pub in_contract: usize,
    /// Failing verdicts on instances outside the standing assumptions.
    pub out_of_contract_failures: usize,
    pub hits: Vec<Hit>,
}

/// Ring instances up to the bound, smallest first.
pub fn rings_up_to(max_size: usize, m: usize, n: usize, limits: &Limits) -> Result<Vec<Arc<KrasnerHyperring>>> {
    let mut out = Vec::new();
    for size in 1..=max_size {
        out.extend(krasner_hyperrings(size, m, n, limits)?.into_iter().map(Arc::new));
    }
    Ok(out)
}

/// Every (ring, module) pair within the bounds, in generation order.
pub fn instances(spec: &SearchSpec, limits: &Limits) -> Result<(usize, Vec<Hypermodule>)> {
    check_size(spec.max_ring_size)?;
    check_size(spec.max_module_size)?;
    let rings = rings_up_to(spec.max_ring_size, spec.m, spec.n, limits)?;
    let mut modules = Vec::new();
    for ring in &rings {
        for size in 1..=spec.max_module_size {
            modules.extend(hypermodules(ring, size, limits)?);
        }
    }
    Ok((rings.len(), modules))
}

/// Seeded sample: a ring, a module size and an additive hypergroup are drawn
/// uniformly, then the action is found by a search with shuffled choices.
/// Draws admitting no action are skipped.
pub fn random_instances(spec: &SearchSpec, seed: u64, count: usize, limits: &Limits) -> Result<(usize, Vec<Hypermodule>)> {
    let rings = rings_up_to(spec.max_ring_size, spec.m, spec.n, limits)?;
    check_size(spec.max_module_size)?;
    let mut additive = Vec::new();
    for size in 1..=spec.max_module_size {
        additive.push(canonical_hypergroups(size, spec.m, limits)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..count {
        let ring = &rings[rng.gen_range(0..rings.len())];
        let size = rng.gen_range(1..=spec.max_module_size);
        let pool = &additive[size - 1];
        let f = &pool[rng.gen_range(0..pool.len())];
        let perms = permutations_fixing(size, 1);
        let mut s = module_search(ring, f, &perms, Some(1));
        run(&mut s, Some(&mut rng), limits.search_budget)?;
        out.extend(s.out.into_iter().map(|(_, m)| m));
    }
    Ok((rings.len(), out))
}

enum Outcome {
    Verdicts(Vec<TheoremVerdict>),
    Multiplication(bool),
}

pub fn hunt(spec: &SearchSpec, limits: &Limits) -> Result<HuntReport> {
    let (rings, modules) = match spec.mode {
        Mode::Exhaustive => instances(spec, limits)?,
        Mode::Random { seed, count } => random_instances(spec, seed, count, limits)?,
    };
    let outcomes: Vec<Result<(Outcome, bool)>> = modules
        .par_iter()
        .map(|module| {
            let out_of_contract = {
                let a = crate::module::check_standing_assumptions(module, limits)?;
                !a.all_hold() || module.ring().is_degenerate()
            };
            let outcome = match &spec.target {
                Target::Theorems(ids) => Outcome::Verdicts(harness::verify(module, ids, limits)?),
                Target::Multiplication => {
                    Outcome::Multiplication(multiplication::is_multiplication(module, limits)?.verdict)
                }
            };
            Ok((outcome, out_of_contract))
        })
        .collect();
    let mut report = HuntReport {
        rings,
        instances: modules.len(),
        in_contract: 0,
        out_of_contract_failures: 0,
        hits: Vec::new(),
    };
    for (module, outcome) in modules.iter().zip(outcomes) {
        let (outcome, out_of_contract) = outcome?;
        if !out_of_contract {
            report.in_contract += 1;
        }
        let hit = |finding| Hit {
            ring_size: module.ring().size(),
            module_size: module.size(),
            finding,
            instance: format::emit_module(module),
        };
        match outcome {
            Outcome::Multiplication(holds) => report.hits.push(hit(Finding::Property {
                name: "is_multiplication".into(),
                holds,
            })),
            Outcome::Verdicts(verdicts) => {
                for v in verdicts.into_iter().filter(|v| !v.pass) {
                    if v.out_of_contract {
                        report.out_of_contract_failures += 1;
                    } else {
                        report.hits.push(hit(Finding::Counterexample { verdict: v }));
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// Independent oracle: every commutative table, filtered by the full
    /// canonical-hypergroup check, counted up to relabelings fixing 0.
    fn naive_hypergroup_count(size: usize) -> usize {
        let cells = commutative_cells(size, 2);
        let perms = permutations_fixing(size, 1);
        let choices = (1usize << size) - 1;
        let mut seen = HashSet::new();
        let mut digits = vec![0usize; cells.len()];
        loop {
            let mut table = vec![ElementSet::EMPTY; size * size];
            for ((_, idx), &d) in cells.iter().zip(&digits) {
                for &i in idx {
                    table[i] = ElementSet::from_bits(d as u128 + 1);
                }
            }
            let op = HyperOperation::from_table(size, 2, table).unwrap();
            let r = op.canonical_report();
            if r.is_canonical && r.neutral == Some(0) {
                let form = perms.iter().map(|p| op.permuted(p).table().to_vec()).min().unwrap();
                seen.insert(form);
            }
            if !next_tuple(&mut digits, choices) {
                return seen.len();
            }
        }
    }

    #[test]
    fn hypergroup_counts_match_the_naive_filter() {
        let l = Limits::default();
        assert_eq!(canonical_hypergroups(1, 2, &l).unwrap().len(), 1);
        for size in 2..=3 {
            assert_eq!(
                canonical_hypergroups(size, 2, &l).unwrap().len(),
                naive_hypergroup_count(size),
                "size {size}"
            );
        }
        assert_eq!(naive_hypergroup_count(2), 2);
    }

    #[test]
    fn size_two_hypergroups_are_z2_and_k2() {
        let gs = canonical_hypergroups(2, 2, &Limits::default()).unwrap();
        let sums: Vec<ElementSet> = gs.iter().map(|g| g.get(&[1, 1])).collect();
        assert!(sums.contains(&ElementSet::singleton(0)));
        assert!(sums.contains(&ElementSet::full(2)));
    }

    #[test]
    fn small_rings() {
        let l = Limits::default();
        let one = krasner_hyperrings(1, 2, 2, &l).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0].is_degenerate());
        let two = krasner_hyperrings(2, 2, 2, &l).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.contains(&fixtures::zn(2)));
        assert!(two.contains(&fixtures::k2()));
        // over the Z/3 addition only the classical ring survives
        let z3_add = fixtures::zn(3);
        let three = krasner_hyperrings(3, 2, 2, &l).unwrap();
        let classical: Vec<_> = three.iter().filter(|r| r.h() == z3_add.h()).collect();
        assert_eq!(classical.len(), 1);
        assert_eq!(classical[0].k(), z3_add.k());
    }

    #[test]
    fn generated_structures_validate_and_are_distinct() {
        let l = Limits::default();
        for ring in rings_up_to(3, 2, 2, &l).unwrap() {
            assert!(ring.validate().is_valid());
            for size in 1..=3 {
                let ms = hypermodules(&ring, size, &l).unwrap();
                for m in &ms {
                    assert!(m.validate().is_valid());
                }
                let distinct: HashSet<_> = ms.iter().collect();
                assert_eq!(distinct.len(), ms.len());
            }
        }
    }

    #[test]
    fn z2_modules_of_order_four_include_v4() {
        let ring = Arc::new(fixtures::zn(2));
        let ms = hypermodules(&ring, 4, &Limits::default()).unwrap();
        let v4 = fixtures::v4_over_z2();
        let relabeled = Hypermodule::new(
            ring.clone(),
            Carrier::numbered(4).unwrap(),
            v4.f().clone(),
            v4.g().clone(),
            0,
        )
        .unwrap();
        let perms = permutations_fixing(4, 1);
        let form = |m: &Hypermodule| {
            perms
                .iter()
                .map(|p| (m.f().permuted(p).table().to_vec(), m.g().permuted(p).table().to_vec()))
                .min()
                .unwrap()
        };
        let target = form(&relabeled);
        assert!(ms.iter().any(|m| form(m) == target));
    }

    #[test]
    fn l3_2_hunt_is_empty() {
        let spec = SearchSpec {
            max_ring_size: 2,
            max_module_size: 2,
            m: 2,
            n: 2,
            target: Target::parse("L3.2").unwrap(),
            mode: Mode::Exhaustive,
        };
        let r = hunt(&spec, &Limits::default()).unwrap();
        assert!(r.hits.is_empty());
        assert!(r.instances > 0);
    }

    #[test]
    fn random_mode_is_reproducible() {
        let spec = SearchSpec {
            max_ring_size: 3,
            max_module_size: 3,
            m: 2,
            n: 2,
            target: Target::Multiplication,
            mode: Mode::Random { seed: 7, count: 12 },
        };
        let l = Limits::default();
        let a = hunt(&spec, &l).unwrap();
        let b = hunt(&spec, &l).unwrap();
        assert_eq!(a, b);
        assert!(!a.hits.is_empty());
    }

    #[test]
    fn capacity_guards() {
        let l = Limits::default();
        assert!(matches!(canonical_hypergroups(7, 2, &l), Err(Error::Capacity { .. })));
        let tight = Limits {
            search_budget: 10,
            ..Limits::default()
        };
        assert!(matches!(canonical_hypergroups(4, 2, &tight), Err(Error::Capacity { .. })));
    }
}
