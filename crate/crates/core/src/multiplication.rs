//! The multiplication property and its companions: cyclicity, `ω(M)`,
//! cofinite generation, the module Jacobson radical and primary
//! subhypermodules.

use std::collections::HashSet;

use crate::carrier::find_tuple;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::module::Hypermodule;
use crate::ring::KrasnerHyperring;
use crate::set::ElementSet;
use crate::substructures::{self, action, enumerate_hyperideal_sets, enumerate_subhypermodule_sets};

/// For each subhypermodule `N` (ascending), the hyperideal `I` with
/// `g(I, 1^(n-2), M) = N`, or `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicationCertificate {
    pub verdict: bool,
    pub witnesses: Vec<(ElementSet, Option<ElementSet>)>,
}

impl MultiplicationCertificate {
    pub fn first_failure(&self) -> Option<ElementSet> {
        self.witnesses.iter().find(|(_, w)| w.is_none()).map(|(n, _)| *n)
    }

    pub fn witness_for(&self, n: ElementSet) -> Option<ElementSet> {
        self.witnesses.iter().find(|(k, _)| *k == n).and_then(|(_, w)| *w)
    }
}

/// Hyperideals ordered for witness search: by size, then bitmask.
pub fn by_popcount(ideals: &[ElementSet]) -> Vec<ElementSet> {
    let mut sorted = ideals.to_vec();
    sorted.sort_by_key(|s| (s.len(), *s));
    sorted
}

/// Is the subhypermodule `n` of `module`, viewed as a module in its own
/// right, a multiplication module? `ideals` must be the hyperideal lattice
/// (in witness-search order) and `submodules` the subhypermodule lattice
/// of `module`.
pub fn certify_within(
    module: &Hypermodule,
    ideals_by_size: &[ElementSet],
    submodules: &[ElementSet],
    n: ElementSet,
) -> MultiplicationCertificate {
    let ring = module.ring();
    let scaled: Vec<ElementSet> = (0..ring.size())
        .map(|r| module.scale(ElementSet::singleton(r), n))
        .collect();
    let act = |ideal: ElementSet| ideal.iter().fold(ElementSet::EMPTY, |acc, r| acc.union(scaled[r]));
    let witnesses: Vec<(ElementSet, Option<ElementSet>)> = submodules
        .iter()
        .filter(|k| k.is_subset(n))
        .map(|&k| {
            let colon: ElementSet = (0..ring.size()).filter(|&r| scaled[r].is_subset(k)).collect();
            if act(colon) == k && substructures::is_hyperideal(ring, colon) {
                return (k, Some(colon));
            }
            (k, ideals_by_size.iter().copied().find(|&i| act(i) == k))
        })
        .collect();
    MultiplicationCertificate {
        verdict: witnesses.iter().all(|(_, w)| w.is_some()),
        witnesses,
    }
}

pub fn is_multiplication(module: &Hypermodule, limits: &Limits) -> Result<MultiplicationCertificate> {
    let ideals = enumerate_hyperideal_sets(module.ring(), limits)?;
    let submodules = enumerate_subhypermodule_sets(module, limits)?;
    Ok(certify_within(module, &by_popcount(&ideals), &submodules, module.full()))
}

/// Least `x` with `g(R, 1^(n-2), x) = M`.
pub fn is_cyclic(module: &Hypermodule) -> Option<usize> {
    let full_ring = module.ring().full();
    (0..module.size()).find(|&x| module.scale(full_ring, ElementSet::singleton(x)) == module.full())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaData {
    /// Hyperideals `A` with `g(A, 1^(n-2), M) = M`, ascending.
    pub members: Vec<ElementSet>,
    /// Their intersection.
    pub omega: ElementSet,
}

pub fn omega(module: &Hypermodule, ideals: &[ElementSet]) -> OmegaData {
    let members: Vec<ElementSet> = ideals
        .iter()
        .copied()
        .filter(|&a| action(module, a) == module.full())
        .collect();
    let omega = substructures::intersect_all(&members, module.ring().full());
    OmegaData { members, omega }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofiniteReport {
    pub holds: bool,
    /// Families of distinct lattice members meeting in the bottom element.
    pub families_examined: usize,
    /// Largest such family.
    pub max_family_size: usize,
    /// Smallest family meeting in the bottom element, avoiding the bottom
    /// element itself when possible.
    pub witness: Vec<ElementSet>,
}

/// Literal cofinite-generation check over a finite lattice: every family
/// with intersection `bottom` has a finite subfamily with intersection
/// `bottom`. On a finite lattice each family is its own finite witness, so
/// the check records what it saw.
pub fn cofinitely_generated(lattice: &[ElementSet], bottom: ElementSet, limits: &Limits) -> Result<CofiniteReport> {
    let count = lattice.len();
    if count > limits.max_cofinite_members {
        return Err(Error::capacity(
            "lattice members for the cofinite check",
            count as u128,
            limits.max_cofinite_members as u128,
        ));
    }
    let mut report = CofiniteReport {
        holds: true,
        families_examined: 0,
        max_family_size: 0,
        witness: Vec::new(),
    };
    let mut best: Option<(bool, usize, u32)> = None;
    for mask in 1u32..(1 << count) {
        let family: Vec<ElementSet> = (0..count).filter(|i| mask >> i & 1 == 1).map(|i| lattice[i]).collect();
        let meet = family.iter().fold(ElementSet::full(128), |a, &b| a.intersection(b));
        if meet != bottom {
            continue;
        }
        report.families_examined += 1;
        report.max_family_size = report.max_family_size.max(family.len());
        let key = (family.contains(&bottom), family.len(), mask);
        if best.map_or(true, |b| key < b) {
            best = Some(key);
            report.witness = family;
        }
    }
    report.holds = report.families_examined > 0;
    Ok(report)
}

/// Intersection of the maximal subhypermodules, or `M` when there are none.
pub fn jacobson_radical_module(module: &Hypermodule, submodules: &[ElementSet]) -> ElementSet {
    let maximal = substructures::maximal_among(submodules, module.full());
    substructures::intersect_all(&maximal, module.full())
}

/// Joint powers `(r_1^t, ..., r_j^t)` for every representable `t`, until the
/// joint sequence repeats.
fn joint_powers(ring: &KrasnerHyperring, rs: &[usize]) -> Vec<Vec<usize>> {
    let n = ring.n();
    let mut out: Vec<Vec<usize>> = (1..=n)
        .map(|t| rs.iter().map(|&r| ring.power(r, t).expect("t <= n")).collect())
        .collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut q = out.last().expect("n >= 2").clone();
    seen.insert(q.clone());
    let mut args = vec![0; n];
    loop {
        for (qi, &r) in q.iter_mut().zip(rs) {
            args.fill(r);
            args[0] = *qi;
            *qi = ring.k().get(&args);
        }
        if !seen.insert(q.clone()) {
            return out;
        }
        out.push(q.clone());
    }
}

/// Least `(r_1, ..., r_{n-1}, x)` violating the n-ary primary condition for
/// the proper subhypermodule `n`: `x ∉ N`, `g(r_1^{n-1}, x) ⊆ N`, and no
/// common exponent `t` gives `g(r_1^t, ..., r_{n-1}^t, M) ⊆ N`.
pub fn primary_violation(module: &Hypermodule, n: ElementSet) -> Result<Option<Vec<usize>>> {
    if n == module.full() {
        return Err(Error::Precondition("primary subhypermodules must be proper".into()));
    }
    let ring = module.ring();
    let scalars = ring.n() - 1;
    let full = module.full();
    Ok(find_tuple(ring.size(), scalars, |rs| {
        let hypothesis = (0..module.size()).find(|&x| !n.contains(x) && module.g().get(rs, x).is_subset(n))?;
        let rescued = joint_powers(ring, rs).iter().any(|powers| {
            let sets: Vec<ElementSet> = powers.iter().map(|&p| ElementSet::singleton(p)).collect();
            module.g().eval_sets(&sets, full).is_subset(n)
        });
        (!rescued).then(|| {
            let mut w = rs.to_vec();
            w.push(hypothesis);
            w
        })
    }))
}

pub fn is_primary_subhypermodule(module: &Hypermodule, n: ElementSet) -> Result<bool> {
    primary_violation(module, n).map(|v| v.is_none())
}
