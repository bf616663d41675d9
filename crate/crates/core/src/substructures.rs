//! Hyperideals, subhypermodules and the ideal-theoretic objects built from
//! them: colon ideals, annihilators, products, radicals, classification,
//! Jacobson radicals and torsion parts.
//!
//! Enumerations return sets in ascending bitmask order.

use crate::carrier::find_tuple;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::module::Hypermodule;
use crate::ops::HyperOperation;
use crate::ring::KrasnerHyperring;
use crate::set::ElementSet;

/// `(B, op)` is an m-ary subhypergroup: `op(B^m) ⊆ B` and every equation
/// `b ∈ op(b_1, .., x, .., b_m)` is solvable in `B`. With commutativity both
/// reduce to `op(B, b_2, ..., b_m) = B` for all `b_i ∈ B`.
fn is_subhypergroup(op: &HyperOperation, set: ElementSet) -> bool {
    if set.is_empty() {
        return false;
    }
    let m = op.arity();
    let members: Vec<usize> = set.iter().collect();
    let mut args = vec![set; m];
    let mut idx = vec![0; m - 1];
    loop {
        for (slot, &i) in args[1..].iter_mut().zip(&idx) {
            *slot = ElementSet::singleton(members[i]);
        }
        if op.eval_sets(&args) != set {
            return false;
        }
        if !crate::carrier::next_tuple(&mut idx, members.len()) {
            return true;
        }
    }
}

pub fn is_hyperideal(ring: &KrasnerHyperring, set: ElementSet) -> bool {
    if !set.is_subset(ring.full()) || !is_subhypergroup(ring.h(), set) {
        return false;
    }
    let full = ring.full();
    let mut args = vec![full; ring.n()];
    (0..ring.n()).all(|i| {
        args[i] = set;
        let ok = ring.k().image_of_sets(&args).is_subset(set);
        args[i] = full;
        ok
    })
}

pub fn is_subhypermodule(module: &Hypermodule, set: ElementSet) -> bool {
    if !set.is_subset(module.full()) || !is_subhypergroup(module.f(), set) {
        return false;
    }
    let rs = vec![module.ring().full(); module.ring().n() - 1];
    module.g().eval_sets(&rs, set).is_subset(set)
}

/// Smallest set containing `seed` and `0` that is closed under `h`, additive
/// negation and absorption by `k`. On a validated ring this is the hyperideal
/// generated by `seed`.
pub fn ideal_closure(ring: &KrasnerHyperring, seed: ElementSet) -> ElementSet {
    let full = ring.full();
    let mut set = seed.with(ring.zero());
    loop {
        let mut next = set.union(ring.h().eval_sets(&vec![set; ring.m()]));
        next = next.union(set.map(|x| ring.neg(x)));
        let mut args = vec![full; ring.n()];
        args[0] = set;
        next = next.union(ring.k().image_of_sets(&args));
        if next == set {
            return set;
        }
        set = next;
    }
}

/// Smallest set containing `seed` and `0_M` closed under `f`, negation and the action.
pub fn submodule_closure(module: &Hypermodule, seed: ElementSet) -> ElementSet {
    let rs = vec![module.ring().full(); module.ring().n() - 1];
    let mut set = seed.with(module.zero());
    loop {
        let mut next = set.union(module.f().eval_sets(&vec![set; module.f().arity()]));
        next = next.union(set.map(|x| module.neg(x)));
        next = next.union(module.g().eval_sets(&rs, set));
        if next == set {
            return set;
        }
        set = next;
    }
}

fn check_bound(size: usize, limits: &Limits) -> Result<()> {
    if size > limits.max_enum_size {
        return Err(Error::capacity(
            "carrier size for enumeration",
            size as u128,
            limits.max_enum_size as u128,
        ));
    }
    Ok(())
}

/// Every zero-containing subset passing `keep`, by brute force.
pub fn naive_filter(size: usize, zero: usize, keep: impl Fn(ElementSet) -> bool) -> Vec<ElementSet> {
    (0..1u128 << size)
        .map(ElementSet::from_bits)
        .filter(|s| s.contains(zero) && keep(*s))
        .collect()
}

/// Lattice of closed sets reachable from `closure(∅)` by adjoining one
/// element at a time and closing.
pub fn closure_lattice(size: usize, closure: impl Fn(ElementSet) -> ElementSet) -> Vec<ElementSet> {
    let bottom = closure(ElementSet::EMPTY);
    let mut found = vec![bottom];
    let mut seen = std::collections::HashSet::from([bottom]);
    let mut frontier = vec![bottom];
    while let Some(base) = frontier.pop() {
        for x in ElementSet::full(size).difference(base) {
            let next = closure(base.with(x));
            if seen.insert(next) {
                found.push(next);
                frontier.push(next);
            }
        }
    }
    found.sort();
    found
}

pub fn enumerate_hyperideal_sets(ring: &KrasnerHyperring, limits: &Limits) -> Result<Vec<ElementSet>> {
    check_bound(ring.size(), limits)?;
    if ring.size() <= limits.naive_threshold {
        return Ok(naive_filter(ring.size(), ring.zero(), |s| is_hyperideal(ring, s)));
    }
    let mut found = closure_lattice(ring.size(), |s| ideal_closure(ring, s));
    found.retain(|&s| is_hyperideal(ring, s));
    Ok(found)
}

pub fn enumerate_subhypermodule_sets(module: &Hypermodule, limits: &Limits) -> Result<Vec<ElementSet>> {
    check_bound(module.size(), limits)?;
    if module.size() <= limits.naive_threshold {
        return Ok(naive_filter(module.size(), module.zero(), |s| is_subhypermodule(module, s)));
    }
    let mut found = closure_lattice(module.size(), |s| submodule_closure(module, s));
    found.retain(|&s| is_subhypermodule(module, s));
    Ok(found)
}

/// Members of `lattice` that are proper in `full` and maximal among the proper members.
pub fn maximal_among(lattice: &[ElementSet], full: ElementSet) -> Vec<ElementSet> {
    let proper: Vec<ElementSet> = lattice.iter().copied().filter(|&s| s != full).collect();
    proper
        .iter()
        .copied()
        .filter(|&s| !proper.iter().any(|&t| t != s && s.is_subset(t)))
        .collect()
}

/// Intersection of `sets`, or `full` when `sets` is empty.
pub fn intersect_all(sets: &[ElementSet], full: ElementSet) -> ElementSet {
    sets.iter().fold(full, |acc, &s| acc.intersection(s))
}

/// `g(I, 1^(n-2), M)`.
pub fn action(module: &Hypermodule, ideal: ElementSet) -> ElementSet {
    module.scale(ideal, module.full())
}

/// `g(I, 1^(n-2), M)`, checked to be a subhypermodule when `I` is a hyperideal.
pub fn ideal_action(module: &Hypermodule, ideal: ElementSet) -> Result<ElementSet> {
    if ideal.is_empty() {
        return Err(Error::Precondition("ideal action of the empty set".into()));
    }
    let n = action(module, ideal);
    if is_hyperideal(module.ring(), ideal) && !is_subhypermodule(module, n) {
        return Err(Error::StructureViolation(format!(
            "g({}, 1, M) = {} is not a subhypermodule",
            module.ring().carrier().show_set(ideal),
            module.carrier().show_set(n)
        )));
    }
    Ok(n)
}

/// `S_N = {r ∈ R | g(r, 1^(n-2), M) ⊆ N}`, verified to be a hyperideal.
pub fn colon_ideal(module: &Hypermodule, n: ElementSet) -> Result<ElementSet> {
    let ring = module.ring();
    let s: ElementSet = (0..ring.size())
        .filter(|&r| action(module, ElementSet::singleton(r)).is_subset(n))
        .collect();
    if !is_hyperideal(ring, s) {
        return Err(Error::StructureViolation(format!(
            "S_N = {} for N = {} is not a hyperideal",
            ring.carrier().show_set(s),
            module.carrier().show_set(n)
        )));
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Annihilator {
    /// `A(x) = {r | 0 ∈ g(r, 1^(n-2), x)}`.
    pub all: ElementSet,
    /// `F_x = A(x) \ {0}`.
    pub nonzero: ElementSet,
}

pub fn annihilator_sets(module: &Hypermodule, x: usize) -> Annihilator {
    let ring = module.ring();
    let all: ElementSet = (0..ring.size())
        .filter(|&r| module.scale1(r, x).contains(module.zero()))
        .collect();
    Annihilator {
        all,
        nonzero: all.without(ring.zero()),
    }
}

/// Faithful: `F_x` is empty for every nonzero `x`.
pub fn is_faithful(module: &Hypermodule) -> bool {
    (0..module.size())
        .filter(|&x| x != module.zero())
        .all(|x| annihilator_sets(module, x).nonzero.is_empty())
}

/// Hyperideal generated by `{k(a, b, 1^(n-2)) | a ∈ I, b ∈ J}`.
pub fn ideal_product(ring: &KrasnerHyperring, i: ElementSet, j: ElementSet) -> ElementSet {
    let products = i
        .iter()
        .flat_map(|a| j.iter().map(move |b| (a, b)))
        .map(|(a, b)| ring.mul2(a, b))
        .collect();
    ideal_closure(ring, products)
}

/// `{r | some representable power of r lies in Q}`.
pub fn radical(ring: &KrasnerHyperring, q: ElementSet) -> ElementSet {
    (0..ring.size())
        .filter(|&r| ring.power_orbit(r).iter().any(|&(_, p)| q.contains(p)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdealClassification {
    pub is_maximal: bool,
    pub is_prime: bool,
    pub is_primary: bool,
    pub radical: ElementSet,
}

/// `k(x_1^n) ∈ Q ⇒ some x_i ∈ Q`, for proper `Q`.
pub fn is_prime(ring: &KrasnerHyperring, q: ElementSet) -> bool {
    q != ring.full()
        && find_tuple(ring.size(), ring.n(), |x| {
            (q.contains(ring.k().get(x)) && !x.iter().any(|&xi| q.contains(xi))).then_some(())
        })
        .is_none()
}

/// `k(x_1^n) ∈ Q ∧ x_i ∉ Q ⇒ k(x_1^{i-1}, 1, x_{i+1}^n) ∈ √Q`, for proper `Q`.
pub fn is_primary(ring: &KrasnerHyperring, q: ElementSet) -> bool {
    if q == ring.full() {
        return false;
    }
    let rad = radical(ring, q);
    let mut rest = vec![0; ring.n()];
    find_tuple(ring.size(), ring.n(), |x| {
        if !q.contains(ring.k().get(x)) {
            return None;
        }
        (0..x.len()).find_map(|i| {
            if q.contains(x[i]) {
                return None;
            }
            rest.copy_from_slice(x);
            rest[i] = ring.one();
            (!rad.contains(ring.k().get(&rest))).then_some(())
        })
    })
    .is_none()
}

/// Classify `q` against the full hyperideal lattice `ideals`.
pub fn classify(ring: &KrasnerHyperring, ideals: &[ElementSet], q: ElementSet) -> IdealClassification {
    let full = ring.full();
    let is_maximal = q != full && !ideals.iter().any(|&t| t != q && t != full && q.is_subset(t));
    IdealClassification {
        is_maximal,
        is_prime: is_prime(ring, q),
        is_primary: is_primary(ring, q),
        radical: radical(ring, q),
    }
}

/// Intersection of all maximal hyperideals.
pub fn jacobson_radical_ring(ring: &KrasnerHyperring, limits: &Limits) -> Result<ElementSet> {
    let ideals = enumerate_hyperideal_sets(ring, limits)?;
    let maximal = maximal_among(&ideals, ring.full());
    if maximal.is_empty() {
        return Err(Error::InternalAssert(
            "ring has no maximal hyperideal (is 1 = 0?)".into(),
        ));
    }
    Ok(intersect_all(&maximal, ring.full()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Torsion {
    /// `{x | ∃p ∈ P: 0 ∈ g(h(1, -p, 0^(m-2)), 1^(n-2), x)}`.
    pub lower: ElementSet,
    /// `{x | ∃p ∈ P: {0} = g(h(1, -p, 0^(m-2)), 1^(n-2), x)}`.
    pub upper: ElementSet,
}

pub fn torsion_part(module: &Hypermodule, p: ElementSet) -> Torsion {
    let ring = module.ring();
    let scalars: Vec<ElementSet> = p.iter().map(|q| ring.one_minus(q)).collect();
    let mut lower = ElementSet::EMPTY;
    let mut upper = ElementSet::EMPTY;
    for x in 0..module.size() {
        for &s in &scalars {
            let image = module.scale(s, ElementSet::singleton(x));
            if image.contains(module.zero()) {
                lower.insert(x);
            }
            if image == module.zero_set() {
                upper.insert(x);
            }
        }
    }
    Torsion { lower, upper }
}

/// Least `(q, x)` with `g(h(1, -q, 0^(m-2)), 1^(n-2), M) ⊆ g(R, 1^(n-2), x)`.
pub fn p_cyclic_witness(module: &Hypermodule, p: ElementSet) -> Option<(usize, usize)> {
    let ring = module.ring();
    let orbits: Vec<ElementSet> = (0..module.size())
        .map(|x| module.scale(ring.full(), ElementSet::singleton(x)))
        .collect();
    p.iter().find_map(|q| {
        let lhs = action(module, ring.one_minus(q));
        orbits.iter().position(|o| lhs.is_subset(*o)).map(|x| (q, x))
    })
}
