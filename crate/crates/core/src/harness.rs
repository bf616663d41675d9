//! Every lemma, theorem and corollary of the theory as an executable
//! predicate. A verdict passes when its hypotheses fail or its conclusion
//! holds; theorems stated over families of hyperideals or subhypermodules
//! are quantified over all finite families up to `Limits::family_cap`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::constructions::{self, external_direct_sum, internal_direct_sum_check};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::module::{check_standing_assumptions, AssumptionReport, Hypermodule};
use crate::multiplication::{self, by_popcount, certify_within, cofinitely_generated, jacobson_radical_module, omega};
use crate::ops::extension_level;
use crate::ring::KrasnerHyperring;
use crate::set::ElementSet;
use crate::substructures::{
    self, action, enumerate_hyperideal_sets, enumerate_subhypermodule_sets, ideal_product, intersect_all,
    maximal_among, radical,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    L3_2,
    T3_3,
    T3_4,
    T3_5,
    T3_7,
    T3_8_1,
    T3_8_2,
    T3_8_3,
    T3_8_4,
    T3_8_5,
    T3_9,
    T3_10,
    L4_1,
    C4_2,
    C4_3,
    T5_1,
    C5_2,
    T5_3,
    T5_4,
    L5_5,
    T5_6,
    T5_7,
    C5_8,
}

impl TheoremId {
    pub const ALL: [TheoremId; 23] = [
        TheoremId::L3_2,
        TheoremId::T3_3,
        TheoremId::T3_4,
        TheoremId::T3_5,
        TheoremId::T3_7,
        TheoremId::T3_8_1,
        TheoremId::T3_8_2,
        TheoremId::T3_8_3,
        TheoremId::T3_8_4,
        TheoremId::T3_8_5,
        TheoremId::T3_9,
        TheoremId::T3_10,
        TheoremId::L4_1,
        TheoremId::C4_2,
        TheoremId::C4_3,
        TheoremId::T5_1,
        TheoremId::C5_2,
        TheoremId::T5_3,
        TheoremId::T5_4,
        TheoremId::L5_5,
        TheoremId::T5_6,
        TheoremId::T5_7,
        TheoremId::C5_8,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::L3_2 => "L3.2",
            TheoremId::T3_3 => "T3.3",
            TheoremId::T3_4 => "T3.4",
            TheoremId::T3_5 => "T3.5",
            TheoremId::T3_7 => "T3.7",
            TheoremId::T3_8_1 => "T3.8.1",
            TheoremId::T3_8_2 => "T3.8.2",
            TheoremId::T3_8_3 => "T3.8.3",
            TheoremId::T3_8_4 => "T3.8.4",
            TheoremId::T3_8_5 => "T3.8.5",
            TheoremId::T3_9 => "T3.9",
            TheoremId::T3_10 => "T3.10",
            TheoremId::L4_1 => "L4.1",
            TheoremId::C4_2 => "C4.2",
            TheoremId::C4_3 => "C4.3",
            TheoremId::T5_1 => "T5.1",
            TheoremId::C5_2 => "C5.2",
            TheoremId::T5_3 => "T5.3",
            TheoremId::T5_4 => "T5.4",
            TheoremId::L5_5 => "L5.5",
            TheoremId::T5_6 => "T5.6",
            TheoremId::T5_7 => "T5.7",
            TheoremId::C5_8 => "C5.8",
        }
    }

    /// Ids named by a selector: a single id, `T3.8` for its five parts, or `all`.
    pub fn select(selector: &str) -> Option<Vec<TheoremId>> {
        match selector {
            "all" => Some(TheoremId::ALL.to_vec()),
            "T3.8" => Some(TheoremId::ALL.iter().copied().filter(|t| t.as_str().starts_with("T3.8.")).collect()),
            s => s.parse().ok().map(|t| vec![t]),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown theorem id `{s}`")))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// One direction of an equivalence, aggregated over every instance checked.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Direction {
    pub direction: String,
    pub holds: bool,
    /// Instances in which the left-hand side held.
    pub instances: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremVerdict {
    pub theorem_id: TheoremId,
    pub pass: bool,
    pub hypotheses_hold: bool,
    pub conclusion_holds: bool,
    pub witness: Value,
    pub out_of_contract: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub directions: Vec<Direction>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl TheoremVerdict {
    /// A failing verdict on an instance satisfying the standing assumptions.
    pub fn is_counterexample(&self) -> bool {
        !self.pass && !self.out_of_contract
    }
}

/// Aggregates hypothesis/conclusion outcomes over the instances of a
/// quantified statement; keeps the first failing instance.
struct Tally {
    hypotheses: bool,
    conclusion: bool,
    instances: usize,
    witness: Option<Value>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            hypotheses: false,
            conclusion: true,
            instances: 0,
            witness: None,
        }
    }

    fn record(&mut self, hypotheses: bool, conclusion: bool, describe: impl FnOnce() -> Value) {
        if !hypotheses {
            return;
        }
        self.hypotheses = true;
        self.instances += 1;
        if !conclusion && self.conclusion {
            self.conclusion = false;
            self.witness = Some(describe());
        }
    }
}

struct DirectionTally {
    name: String,
    holds: bool,
    instances: usize,
    witness: Option<Value>,
}

impl DirectionTally {
    fn new(name: impl Into<String>) -> Self {
        DirectionTally {
            name: name.into(),
            holds: true,
            instances: 0,
            witness: None,
        }
    }

    fn record(&mut self, lhs: bool, rhs: bool, describe: impl FnOnce() -> Value) {
        if !lhs {
            return;
        }
        self.instances += 1;
        if !rhs && self.holds {
            self.holds = false;
            self.witness = Some(describe());
        }
    }

    fn finish(self) -> Direction {
        Direction {
            direction: self.name,
            holds: self.holds,
            instances: self.instances,
            witness: self.witness,
        }
    }
}

/// Pairwise directions `(i) => (j)` for a list of equivalent conditions.
fn equivalence_tallies(labels: &[&str]) -> Vec<((usize, usize), DirectionTally)> {
    let mut out = Vec::new();
    for i in 0..labels.len() {
        for j in 0..labels.len() {
            if i != j {
                out.push(((i, j), DirectionTally::new(format!("{} => {}", labels[i], labels[j]))));
            }
        }
    }
    out
}

/// All families of distinct members of `items` (by index order) whose size
/// satisfies `size_ok`, up to `cap` members.
fn families(items: &[ElementSet], cap: usize, size_ok: impl Fn(usize) -> bool) -> Vec<Vec<ElementSet>> {
    fn go(
        items: &[ElementSet],
        start: usize,
        cap: usize,
        current: &mut Vec<ElementSet>,
        out: &mut Vec<Vec<ElementSet>>,
        size_ok: &dyn Fn(usize) -> bool,
    ) {
        if !current.is_empty() && size_ok(current.len()) {
            out.push(current.clone());
        }
        if current.len() == cap {
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            go(items, i + 1, cap, current, out, size_ok);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(items, 0, cap, &mut Vec::new(), &mut out, &size_ok);
    out
}

/// Shared, read-only facts about one module, computed once per instance.
pub struct Analysis<'a> {
    pub module: &'a Hypermodule,
    pub limits: Limits,
    pub assumptions: AssumptionReport,
    pub ideals: Vec<ElementSet>,
    pub ideals_by_size: Vec<ElementSet>,
    pub maximal_ideals: Vec<ElementSet>,
    pub primary_ideals: Vec<ElementSet>,
    pub prime_ideals: Vec<ElementSet>,
    pub submodules: Vec<ElementSet>,
    /// Multiplication property of each subhypermodule viewed as a module.
    pub multiplication: HashMap<ElementSet, bool>,
    pub colon: HashMap<ElementSet, ElementSet>,
    pub annihilator_of_module: ElementSet,
    pub faithful: bool,
    pub jacobson_ring: Option<ElementSet>,
}

impl<'a> Analysis<'a> {
    pub fn new(module: &'a Hypermodule, limits: &Limits) -> Result<Self> {
        let ring = module.ring();
        let assumptions = check_standing_assumptions(module, limits)?;
        let ideals = enumerate_hyperideal_sets(ring, limits)?;
        let ideals_by_size = by_popcount(&ideals);
        let maximal_ideals = maximal_among(&ideals, ring.full());
        let primary_ideals = ideals.iter().copied().filter(|&q| substructures::is_primary(ring, q)).collect();
        let prime_ideals = ideals.iter().copied().filter(|&q| substructures::is_prime(ring, q)).collect();
        let submodules = enumerate_subhypermodule_sets(module, limits)?;
        let multiplication = submodules
            .iter()
            .map(|&n| (n, certify_within(module, &ideals_by_size, &submodules, n).verdict))
            .collect();
        let colon = submodules.iter().map(|&n| (n, colon_set(module, n))).collect();
        let annihilator_of_module = colon_set(module, module.zero_set());
        let jacobson_ring = (!maximal_ideals.is_empty()).then(|| intersect_all(&maximal_ideals, ring.full()));
        Ok(Analysis {
            module,
            limits: *limits,
            assumptions,
            ideals,
            ideals_by_size,
            maximal_ideals,
            primary_ideals,
            prime_ideals,
            submodules,
            multiplication,
            colon,
            annihilator_of_module,
            faithful: substructures::is_faithful(module),
            jacobson_ring,
        })
    }

    fn ring(&self) -> &KrasnerHyperring {
        self.module.ring()
    }

    pub fn out_of_contract(&self) -> bool {
        !self.assumptions.all_hold() || self.ring().is_degenerate()
    }

    pub fn is_multiplication(&self) -> bool {
        self.mult(self.module.full())
    }

    /// Multiplication property of a subhypermodule; `false` for sets that
    /// are not subhypermodules.
    fn mult(&self, n: ElementSet) -> bool {
        self.multiplication.get(&n).copied().unwrap_or(false)
    }

    fn act(&self, ideal: ElementSet) -> ElementSet {
        action(self.module, ideal)
    }

    fn colon_of(&self, n: ElementSet) -> ElementSet {
        self.colon.get(&n).copied().unwrap_or_else(|| colon_set(self.module, n))
    }

    /// `f_(l)` of `parts`, padded with `{0}` to a representable length.
    fn module_sum(&self, parts: &[ElementSet]) -> ElementSet {
        padded_fold(self.module.f(), parts, self.module.zero_set())
    }

    fn ring_sum(&self, parts: &[ElementSet]) -> ElementSet {
        padded_fold(self.ring().h(), parts, self.ring().zero_set())
    }

    fn rs(&self, s: ElementSet) -> String {
        self.ring().carrier().show_set(s)
    }

    fn ms(&self, s: ElementSet) -> String {
        self.module.carrier().show_set(s)
    }

    fn ms_list(&self, sets: &[ElementSet]) -> Vec<String> {
        sets.iter().map(|&s| self.ms(s)).collect()
    }

    fn is_zero(&self) -> bool {
        self.module.is_zero_module()
    }
}

fn colon_set(module: &Hypermodule, n: ElementSet) -> ElementSet {
    (0..module.ring().size())
        .filter(|&r| action(module, ElementSet::singleton(r)).is_subset(n))
        .collect()
}

fn padded_fold(op: &crate::ops::HyperOperation, parts: &[ElementSet], zero: ElementSet) -> ElementSet {
    let mut args = parts.to_vec();
    if args.is_empty() {
        return zero;
    }
    while extension_level(args.len(), op.arity()).is_none() {
        args.push(zero);
    }
    op.fold_sets(&args)
}

struct Builder {
    id: TheoremId,
    out_of_contract: bool,
    directions: Vec<Direction>,
    notes: Vec<String>,
}

impl Builder {
    fn finish(self, tally: Tally, summary: Value) -> TheoremVerdict {
        let pass = !tally.hypotheses || tally.conclusion;
        let witness = match tally.witness {
            Some(w) => w,
            None => {
                let mut s = summary;
                if let Value::Object(map) = &mut s {
                    map.insert("instances_checked".into(), json!(tally.instances));
                }
                s
            }
        };
        TheoremVerdict {
            theorem_id: self.id,
            pass,
            hypotheses_hold: tally.hypotheses,
            conclusion_holds: tally.conclusion,
            witness,
            out_of_contract: self.out_of_contract,
            directions: self.directions,
            notes: self.notes,
        }
    }
}

impl Analysis<'_> {
    fn builder(&self, id: TheoremId) -> Builder {
        let mut notes = Vec::new();
        if self.ring().is_degenerate() {
            notes.push("degenerate ring (1 = 0)".to_string());
        }
        for (name, check) in [
            ("(a) singleton witness", &self.assumptions.singleton_witness),
            ("(b) h(r, -r, 0^(m-2)) = {0}", &self.assumptions.zero_difference),
            ("(c) torsion parts agree", &self.assumptions.torsion_agreement),
        ] {
            if let Some(w) = &check.witness {
                notes.push(format!("standing assumption {name} violated: {w}"));
            }
        }
        Builder {
            id,
            out_of_contract: self.out_of_contract(),
            directions: Vec::new(),
            notes,
        }
    }

    pub fn check(&self, id: TheoremId) -> Result<TheoremVerdict> {
        match id {
            TheoremId::L3_2 => Ok(self.l3_2()),
            TheoremId::T3_3 => Ok(self.t3_3()),
            TheoremId::T3_4 => self.t3_4(),
            TheoremId::T3_5 => Ok(self.t3_5()),
            TheoremId::T3_7 => self.t3_7(),
            TheoremId::T3_8_1
            | TheoremId::T3_8_2
            | TheoremId::T3_8_3
            | TheoremId::T3_8_4
            | TheoremId::T3_8_5 => Ok(self.t3_8(id)),
            TheoremId::T3_9 => Ok(self.t3_9()),
            TheoremId::T3_10 => self.t3_10(),
            TheoremId::L4_1 => Ok(self.l4_1()),
            TheoremId::C4_2 => self.c4_2(),
            TheoremId::C4_3 => self.c4_3(),
            TheoremId::T5_1 => Ok(self.t5_1()),
            TheoremId::C5_2 => Ok(self.c5_2()),
            TheoremId::T5_3 => Ok(self.t5_3()),
            TheoremId::T5_4 => Ok(self.t5_4()),
            TheoremId::L5_5 => Ok(self.l5_5()),
            TheoremId::T5_6 => Ok(self.t5_6()),
            TheoremId::T5_7 => Ok(self.t5_7()),
            TheoremId::C5_8 => Ok(self.c5_8()),
        }
    }

    fn l3_2(&self) -> TheoremVerdict {
        let b = self.builder(TheoremId::L3_2);
        let mut tally = Tally::new();
        let Some(j) = self.jacobson_ring else {
            let mut b = b;
            b.notes.push("no maximal hyperideal, J(R) undefined".into());
            return b.finish(tally, json!({}));
        };
        if self.is_multiplication() {
            for &i in self.ideals.iter().filter(|i| i.is_subset(j)) {
                let hyp = self.act(i) == self.module.full();
                tally.record(hyp, self.is_zero(), || {
                    json!({"I": self.rs(i), "J(R)": self.rs(j), "g(I,1,M)": self.ms(self.module.full())})
                });
            }
        }
        b.finish(tally, json!({"J(R)": self.rs(j), "multiplication": self.is_multiplication()}))
    }

    fn t3_3(&self) -> TheoremVerdict {
        let b = self.builder(TheoremId::T3_3);
        let mut tally = Tally::new();
        let hyp = !self.is_zero() && self.is_multiplication() && self.maximal_ideals.len() == 1;
        let generator = multiplication::is_cyclic(self.module);
        tally.record(hyp, generator.is_some(), || {
            json!({"maximal_ideal": self.rs(self.maximal_ideals[0]), "cyclic": false})
        });
        let generator = generator.map(|g| self.module.carrier().label(g).to_string());
        b.finish(
            tally,
            json!({"maximal_ideals": self.maximal_ideals.len(), "generator": generator}),
        )
    }

    fn t3_4(&self) -> Result<TheoremVerdict> {
        let mut b = self.builder(TheoremId::T3_4);
        let mut tally = Tally::new();
        let Some(j) = self.jacobson_ring else {
            b.notes.push("no maximal hyperideal, J(R) undefined".into());
            return Ok(b.finish(tally, json!({})));
        };
        let n1 = self.act(j);
        let mut summary = json!({"N_1": self.ms(n1)});
        if self.is_multiplication() {
            match constructions::quotient(self.module, n1) {
                Ok(q) => {
                    let cert = multiplication::is_multiplication(&q.module, &self.limits)?;
                    let failing = cert.first_failure().map(|n| q.module.carrier().show_set(n));
                    tally.record(true, cert.verdict, || {
                        json!({"N_1": self.ms(n1), "quotient_size": q.module.size(), "unwitnessed_submodule": failing})
                    });
                    summary["quotient_size"] = json!(q.module.size());
                }
                Err(e @ Error::Capacity { .. }) => return Err(e),
                Err(e) => tally.record(true, false, || json!({"N_1": self.ms(n1), "quotient_error": e.to_string()})),
            }
        }
        Ok(b.finish(tally, summary))
    }

    fn t3_5(&self) -> TheoremVerdict {
        let mut b = self.builder(TheoremId::T3_5);
        b.notes.push("f(I, S_0, 0^(m-2)) read as the ring sum h".into());
        let s0 = self.annihilator_of_module;
        let mut fams = families(&self.ideals, 3, |_| true);
        if self.ideals.len() > 3 {
            fams.push(self.ideals.clone());
        }
        let cond1_failure = fams.iter().find_map(|fam| {
            let lhs = fam.iter().fold(self.module.full(), |acc, &i| acc.intersection(self.act(i)));
            let inner = fam
                .iter()
                .fold(self.ring().full(), |acc, &i| acc.intersection(self.ring_sum(&[i, s0])));
            let rhs = self.act(inner);
            (lhs != rhs).then(|| {
                json!({"condition": "(1)", "family": fam.iter().map(|&i| self.rs(i)).collect::<Vec<_>>(),
                       "intersection_of_actions": self.ms(lhs), "action_of_intersection": self.ms(rhs)})
            })
        });
        let cond2_failure = self.ideals.iter().find_map(|&a| {
            let ga = self.act(a);
            self.submodules.iter().find_map(|&n| {
                if !(n.is_subset(ga) && n != ga) {
                    return None;
                }
                let ok = self
                    .ideals
                    .iter()
                    .any(|&bb| bb.is_subset(a) && bb != a && n.is_subset(self.act(bb)));
                (!ok).then(|| json!({"condition": "(2)", "A": self.rs(a), "N": self.ms(n)}))
            })
        });
        let lhs = self.is_multiplication();
        let rhs = cond1_failure.is_none() && cond2_failure.is_none();
        let rhs_witness = cond1_failure.clone().or(cond2_failure.clone());
        let mut forward = DirectionTally::new("multiplication => (1) and (2)");
        forward.record(lhs, rhs, || rhs_witness.clone().unwrap_or(Value::Null));
        let mut backward = DirectionTally::new("(1) and (2) => multiplication");
        let cert_failure = self.first_unwitnessed();
        backward.record(rhs, lhs, || json!({"unwitnessed_submodule": cert_failure}));
        let mut tally = Tally::new();
        tally.record(true, lhs == rhs, || {
            json!({"multiplication": lhs, "condition_1": cond1_failure.is_none(), "condition_2": cond2_failure.is_none(),
                   "detail": rhs_witness.clone()})
        });
        b.directions = vec![forward.finish(), backward.finish()];
        b.finish(
            tally,
            json!({"multiplication": lhs, "condition_1": cond1_failure.is_none(), "condition_2": cond2_failure.is_none(),
                   "families_checked": fams.len()}),
        )
    }

    fn first_unwitnessed(&self) -> Option<String> {
        let cert = certify_within(self.module, &self.ideals_by_size, &self.submodules, self.module.full());
        cert.first_failure().map(|n| self.ms(n))
    }

    fn t3_7(&self) -> Result<TheoremVerdict> {
        let mut b = self.builder(TheoremId::T3_7);
        b.notes
            .push("DESK_TRIVIAL: both sides hold on every finite instance".into());
        let module_side = cofinitely_generated(&self.submodules, self.module.zero_set(), &self.limits)?;
        let ring_side = cofinitely_generated(&self.ideals, self.ring().zero_set(), &self.limits)?;
        let hyp = self.faithful && self.is_multiplication();
        let mut forward = DirectionTally::new("M cofinitely generated => R cofinitely generated");
        let mut backward = DirectionTally::new("R cofinitely generated => M cofinitely generated");
        if hyp {
            forward.record(module_side.holds, ring_side.holds, || json!({}));
            backward.record(ring_side.holds, module_side.holds, || json!({}));
        }
        let mut tally = Tally::new();
        tally.record(hyp, module_side.holds == ring_side.holds, || {
            json!({"module_side": module_side.holds, "ring_side": ring_side.holds})
        });
        b.directions = vec![forward.finish(), backward.finish()];
        Ok(b.finish(
            tally,
            json!({
                "module_families": module_side.families_examined,
                "module_witness": self.ms_list(&module_side.witness),
                "ring_families": ring_side.families_examined,
                "ring_witness": ring_side.witness.iter().map(|&s| self.rs(s)).collect::<Vec<_>>(),
            }),
        ))
    }

    fn t3_8(&self, id: TheoremId) -> TheoremVerdict {
        let mut b = self.builder(id);
        let hyp = self.faithful && self.is_multiplication();
        let om = omega(self.module, &self.ideals);
        let bset = om.omega;
        let ring = self.ring();
        let mut tally = Tally::new();
        let summary = json!({"B": self.rs(bset), "faithful": self.faithful, "multiplication": self.is_multiplication()});
        if !hyp {
            return b.finish(tally, summary);
        }
        match id {
            TheoremId::T3_8_1 => {
                for x in 0..self.module.size() {
                    let ok = self.module.scale(bset, ElementSet::singleton(x)).contains(x);
                    tally.record(true, ok, || json!({"B": self.rs(bset), "x": self.module.carrier().label(x)}));
                }
            }
            TheoremId::T3_8_2 => {
                let bb = ideal_product(ring, bset, bset);
                tally.record(true, bb == bset, || json!({"B": self.rs(bset), "B.B": self.rs(bb)}));
            }
            TheoremId::T3_8_3 => {
                b.notes.push("quantified over every n-ary prime hyperideal; the sum is padded with 0^(m-2)".into());
                for &p in &self.prime_ideals {
                    let sum = self.ring_sum(&[bset, p]);
                    let ok = bset.is_subset(p) || sum == ring.full();
                    tally.record(true, ok, || json!({"B": self.rs(bset), "P": self.rs(p), "h(B,P,0)": self.rs(sum)}));
                }
            }
            TheoremId::T3_8_4 => {
                b.notes.push("hyperideals of B read as hyperideals of R contained in B".into());
                for &n in &self.submodules {
                    let ok = self.ideals.iter().any(|&d| d.is_subset(bset) && self.act(d) == n);
                    tally.record(true, ok, || json!({"B": self.rs(bset), "N": self.ms(n)}));
                }
            }
            TheoremId::T3_8_5 => {
                for &c in self.ideals.iter().filter(|&&c| c != ring.full()) {
                    let ok = self.act(c) != self.module.full();
                    tally.record(true, ok, || json!({"C": self.rs(c), "g(C,1,M)": "M"}));
                }
            }
            _ => unreachable!("not a part of T3.8"),
        }
        b.finish(tally, summary)
    }

    fn t3_9(&self) -> TheoremVerdict {
        let mut b = self.builder(TheoremId::T3_9);
        b.notes.push("hypotheses: M nonzero and multiplication; empty intersections are R".into());
        let mut tally = Tally::new();
        let full = self.module.full();
        let a1: Vec<ElementSet> = self.maximal_ideals.iter().copied().filter(|&p| self.act(p) != full).collect();
        let a2: Vec<ElementSet> = self
            .maximal_ideals
            .iter()
            .copied()
            .filter(|&p| self.annihilator_of_module.is_subset(p))
            .collect();
        let j_m = jacobson_radical_module(self.module, &self.submodules);
        if !self.submodules.iter().any(|&s| s != full) {
            b.notes.push("no maximal subhypermodule, J(M) = M".into());
        }
        let via_a1 = self.act(intersect_all(&a1, self.ring().full()));
        let via_a2 = self.act(intersect_all(&a2, self.ring().full()));
        let summary = json!({"J(M)": self.ms(j_m), "g(cap A_1)": self.ms(via_a1), "g(cap A_2)": self.ms(via_a2)});
        let hyp = !self.is_zero() && self.is_multiplication();
        tally.record(hyp, j_m == via_a1 && via_a1 == via_a2, || summary.clone());
        b.finish(tally, summary)
    }

    fn t3_10(&self) -> Result<TheoremVerdict> {
        let mut b = self.builder(TheoremId::T3_10);
        b.notes.push("instantiated over internal direct decompositions of M".into());
        let m = self.module.f().arity();
        let mut decompositions = Vec::new();
        for fam in families(&self.submodules, self.limits.family_cap, |t| {
            t >= 2 && extension_level(t, m).is_some()
        }) {
            if internal_direct_sum_check(self.module, &fam)?.holds() {
                decompositions.push(fam);
            }
        }
        let (tally, directions, records) = self.direct_sum_iff(self.module, &decompositions);
        b.directions = directions;
        Ok(b.finish(tally, json!({"decompositions": records})))
    }

    /// The equivalence of T3.10 for each decomposition of `module`.
    /// Also returns one record per decomposition with its witness ideals.
    fn direct_sum_iff(
        &self,
        module: &Hypermodule,
        decompositions: &[Vec<ElementSet>],
    ) -> (Tally, Vec<Direction>, Vec<Value>) {
        let mut tally = Tally::new();
        let mut forward = DirectionTally::new("multiplication => (i) and (ii)");
        let mut backward = DirectionTally::new("(i) and (ii) => multiplication");
        let lhs = self.is_multiplication();
        let mut records = Vec::new();
        for parts in decompositions {
            let cond_i = parts.iter().all(|&p| self.mult(p));
            let mut witnesses = Vec::new();
            let mut cond_ii = true;
            for (i, &part) in parts.iter().enumerate() {
                let others: Vec<ElementSet> = parts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &p)| p).collect();
                let hat = self.module_sum(&others);
                let found = self.ideals_by_size.iter().copied().find(|&ideal| {
                    module.scale(ideal, part) == part && module.scale(ideal, hat) == module.zero_set()
                });
                match found {
                    Some(ideal) => witnesses.push(json!({"M_lambda": self.ms(part), "I_lambda": self.rs(ideal)})),
                    None => {
                        cond_ii = false;
                        witnesses.push(json!({"M_lambda": self.ms(part), "I_lambda": null}));
                    }
                }
            }
            let rhs = cond_i && cond_ii;
            let describe = || {
                json!({"parts": self.ms_list(parts), "multiplication": lhs, "condition_i": cond_i,
                       "condition_ii": cond_ii, "witness_ideals": witnesses.clone()})
            };
            forward.record(lhs, rhs, describe);
            backward.record(rhs, lhs, describe);
            tally.record(true, lhs == rhs, describe);
            records.push(describe());
        }
        (tally, vec![forward.finish(), backward.finish()], records)
    }

    fn l4_1(&self) -> TheoremVerdict {
        let b = self.builder(TheoremId::L4_1);
        let mut tally = Tally::new();
        if self.faithful && self.is_multiplication() {
            for &q in &self.primary_ideals {
                let gq = self.act(q);
                let rad = radical(self.ring(), q);
                for r in 0..self.ring().size() {
                    for x in 0..self.module.size() {
                        if !self.module.scale1(r, x).is_subset(gq) {
                            continue;
                        }
                        tally.record(true, rad.contains(r) || gq.contains(x), || {
                            json!({"Q": self.rs(q), "r": self.ring().carrier().label(r),
                                   "m": self.module.carrier().label(x), "sqrt(Q)": self.rs(rad), "g(Q,1,M)": self.ms(gq)})
                        });
                    }
                }
            }
        }
        b.finish(tally, json!({"primary_ideals": self.primary_ideals.len()}))
    }

    fn c4_2(&self) -> Result<TheoremVerdict> {
        let b = self.builder(TheoremId::C4_2);
        let mut tally = Tally::new();
        if self.faithful && self.is_multiplication() {
            for &q in &self.primary_ideals {
                let n = self.act(q);
                if n == self.module.full() {
                    continue;
                }
                let violation = multiplication::primary_violation(self.module, n)?;
                tally.record(true, violation.is_none(), || {
                    json!({"Q": self.rs(q), "N": self.ms(n), "violating_tuple": violation})
                });
            }
        }
        Ok(b.finish(tally, json!({})))
    }

    fn c4_3(&self) -> Result<TheoremVerdict> {
        let mut b = self.builder(TheoremId::C4_3);
        let labels = ["(1)", "(2)", "(3)"];
        let mut dirs = equivalence_tallies(&labels);
        let mut tally = Tally::new();
        if self.is_multiplication() {
            for &n in self.submodules.iter().filter(|&&n| n != self.module.full()) {
                let c1 = multiplication::is_primary_subhypermodule(self.module, n)?;
                let sn = self.colon_of(n);
                let c2 = substructures::is_primary(self.ring(), sn);
                let q3 = self
                    .primary_ideals
                    .iter()
                    .copied()
                    .find(|&q| self.annihilator_of_module.is_subset(q) && self.act(q) == n);
                let c3 = q3.is_some();
                let conds = [c1, c2, c3];
                let describe = || {
                    json!({"N": self.ms(n), "S_N": self.rs(sn), "(1)": c1, "(2)": c2, "(3)": c3,
                           "Q": q3.map(|q| self.rs(q))})
                };
                for ((i, j), d) in dirs.iter_mut() {
                    d.record(conds[*i], conds[*j], describe);
                }
                tally.record(true, c1 == c2 && c2 == c3, describe);
            }
        }
        b.directions = dirs.into_iter().map(|(_, d)| d.finish()).collect();
        Ok(b.finish(tally, json!({})))
    }

    /// Families of distinct multiplication subhypermodules whose size is a
    /// representable arity `l(m-1)+1`, `l >= 0`.
    fn multiplication_families(&self) -> Vec<Vec<ElementSet>> {
        let m = self.module.f().arity();
        let mult: Vec<ElementSet> = self.submodules.iter().copied().filter(|&n| self.mult(n)).collect();
        families(&mult, self.limits.family_cap, |t| extension_level(t, m).is_some())
    }

    fn t5_1(&self) -> TheoremVerdict {
        let mut b = self.builder(TheoremId::T5_1);
        b.notes.push("B = f_(l)(S_N) read as the ring sum h_(l) of the colon ideals".into());
        let labels = ["(1)", "(2)", "(3)", "(4)"];
        let mut dirs = equivalence_tallies(&labels);
        let mut tally = Tally::new();
        let ring = self.ring();
        let full = self.module.full();
        for fam in self.multiplication_families() {
            if self.module_sum(&fam) != full {
                continue;
            }
            let c1 = self.is_multiplication();
            let c2 = fam.iter().all(|&n| self.act(self.colon_of(n)) == n);
            let colons: Vec<ElementSet> = fam.iter().map(|&n| self.colon_of(n)).collect();
            let bsum = self.ring_sum(&colons);
            let c3 = (0..self.module.size()).all(|x| {
                let a = substructures::annihilator_sets(self.module, x).all;
                self.ring_sum(&[a, bsum]) == ring.full()
            });
            let union = fam.iter().fold(ElementSet::EMPTY, |acc, &n| acc.union(n));
            let c4 = self.maximal_ideals.iter().all(|&p| {
                substructures::torsion_part(self.module, p).lower == full
                    || p.iter().any(|q| {
                        let lhs = self.act(ring.one_minus(q));
                        union
                            .iter()
                            .any(|a| lhs.is_subset(self.module.scale(ring.full(), ElementSet::singleton(a))))
                    })
            });
            let conds = [c1, c2, c3, c4];
            let describe = || {
                json!({"parts": self.ms_list(&fam), "B": self.rs(bsum), "(1)": c1, "(2)": c2, "(3)": c3, "(4)": c4})
            };
            for ((i, j), d) in dirs.iter_mut() {
                d.record(conds[*i], conds[*j], describe);
            }
            tally.record(true, conds.iter().all(|&c| c == c1), describe);
        }
        b.directions = dirs.into_iter().map(|(_, d)| d.finish()).collect();
        b.finish(tally, json!({}))
    }

    fn c5_2(&self) -> TheoremVerdict {
        let b = self.builder(TheoremId::C5_2);
        let mut tally = Tally::new();
        for fam in self.multiplication_families() {
            let colons: Vec<ElementSet> = fam.iter().map(|&n| self.colon_of(n)).collect();
            let hyp = self.ring_sum(&colons) == self.ring().full();
            tally.record(hyp, self.is_multiplication(), || {
                json!({"parts": self.ms_list(&fam), "colon_ideals": colons.iter().map(|&s| self.rs(s)).collect::<Vec<_>>()})
            });
        }
        b.finish(tally, json!({}))
    }

    fn t5_3(&self) -> TheoremVerdict {
        let b = self.builder(TheoremId::T5_3);
        let mut tally = Tally::new();
        let full = self.module.full();
        for fam in self.multiplication_families() {
            if self.module_sum(&fam) != full {
                continue;
            }
            for &n in &self.submodules {
                let meets: Vec<ElementSet> = fam.iter().map(|&p| p.intersection(n)).collect();
                let sum = self.module_sum(&meets);
                tally.record(true, sum == n, || {
                    json!({"parts": self.ms_list(&fam), "N": self.ms(n), "f_(l)(N cap N_lambda)": self.ms(sum)})
                });
            }
        }
        b.finish(tally, json!({}))
    }

    fn t5_4(&self) -> TheoremVerdict {
        let mut b = self.builder(TheoremId::T5_4);
        b.notes.push("f(H, K, 1^(n-2)) read as f(H, K, 0^(m-2))".into());
        let mut tally = Tally::new();
        for pair in families(&self.submodules, 2, |t| t == 2) {
            let (h, k) = (pair[0], pair[1]);
            let sum = self.module_sum(&[h, k]);
            let hyp = self.mult(h) && self.mult(k) && self.mult(sum);
            let meet = h.intersection(k);
            tally.record(hyp, self.mult(meet), || {
                json!({"H": self.ms(h), "K": self.ms(k), "f(H,K,0)": self.ms(sum), "H cap K": self.ms(meet)})
            });
        }
        b.finish(tally, json!({}))
    }

    fn l5_5(&self) -> TheoremVerdict {
        let b = self.builder(TheoremId::L5_5);
        let mut tally = Tally::new();
        let ring = self.ring();
        let into = |src: ElementSet, dst: ElementSet| -> ElementSet {
            (0..ring.size())
                .filter(|&r| self.module.scale(ElementSet::singleton(r), src).is_subset(dst))
                .collect()
        };
        for pair in families(&self.submodules, 2, |t| t == 2) {
            let (n1, n2) = (pair[0], pair[1]);
            let a = into(n2, n1);
            let bb = into(n1, n2);
            let hyp = self.mult(n1) && self.mult(n2) && self.ring_sum(&[a, bb]) == ring.full();
            let sum = self.module_sum(&[n1, n2]);
            tally.record(hyp, self.mult(sum), || {
                json!({"N_1": self.ms(n1), "N_2": self.ms(n2), "A": self.rs(a), "B": self.rs(bb), "f(N_1,N_2,0)": self.ms(sum)})
            });
        }
        b.finish(tally, json!({}))
    }

    fn t5_6(&self) -> TheoremVerdict {
        let b = self.builder(TheoremId::T5_6);
        let mut tally = Tally::new();
        let cap = self.limits.family_cap.saturating_sub(1).max(1);
        for &l in &self.submodules {
            if !self.mult(l) {
                continue;
            }
            for fam in families(&self.submodules, cap, |_| true) {
                let meet = intersect_all(&fam, self.module.full());
                let hyp = self.mult(meet)
                    && fam.iter().all(|&n| self.mult(n) && self.mult(self.module_sum(&[l, n])));
                let sum = self.module_sum(&[l, meet]);
                tally.record(hyp, self.mult(sum), || {
                    json!({"L": self.ms(l), "N_i": self.ms_list(&fam), "N": self.ms(meet), "f(L,N,0)": self.ms(sum)})
                });
            }
        }
        b.finish(tally, json!({}))
    }

    fn pairwise_sums_multiplication(&self, fam: &[ElementSet]) -> bool {
        (0..fam.len()).all(|i| (i + 1..fam.len()).all(|j| self.mult(self.module_sum(&[fam[i], fam[j]]))))
    }

    fn t5_7(&self) -> TheoremVerdict {
        let mut b = self.builder(TheoremId::T5_7);
        let mut tally = Tally::new();
        let mut forward = DirectionTally::new("every N_i multiplication => intersection multiplication");
        let mut backward = DirectionTally::new("intersection multiplication => every N_i multiplication");
        for fam in families(&self.submodules, self.limits.family_cap, |_| true) {
            if !self.pairwise_sums_multiplication(&fam) {
                continue;
            }
            let lhs = fam.iter().all(|&n| self.mult(n));
            let meet = intersect_all(&fam, self.module.full());
            let rhs = self.mult(meet);
            let describe = || {
                json!({"N_i": self.ms_list(&fam), "all_multiplication": lhs, "N": self.ms(meet), "N_multiplication": rhs})
            };
            forward.record(lhs, rhs, describe);
            backward.record(rhs, lhs, describe);
            tally.record(true, lhs == rhs, describe);
        }
        b.directions = vec![forward.finish(), backward.finish()];
        b.finish(tally, json!({}))
    }

    fn c5_8(&self) -> TheoremVerdict {
        let b = self.builder(TheoremId::C5_8);
        let mut tally = Tally::new();
        let full = self.module.full();
        for fam in families(&self.submodules, self.limits.family_cap, |t| t >= 2) {
            if !fam.iter().all(|&n| self.mult(n)) || !self.pairwise_sums_multiplication(&fam) {
                continue;
            }
            for split in 1..(1u32 << fam.len()) - 1 {
                let (first, rest): (Vec<(usize, ElementSet)>, Vec<(usize, ElementSet)>) =
                    fam.iter().copied().enumerate().partition(|(i, _)| split >> i & 1 == 1);
                let first: Vec<ElementSet> = first.into_iter().map(|(_, s)| s).collect();
                let rest: Vec<ElementSet> = rest.into_iter().map(|(_, s)| s).collect();
                let n = intersect_all(&first, full);
                let l = intersect_all(&rest, full);
                let sum = self.module_sum(&[n, l]);
                tally.record(true, self.mult(sum), || {
                    json!({"N_1..N_n": self.ms_list(&first), "N_(n+1)..N_k": self.ms_list(&rest),
                           "N": self.ms(n), "L": self.ms(l), "f(N,L,0)": self.ms(sum)})
                });
            }
        }
        b.finish(tally, json!({}))
    }
}

/// Run the named theorems on one module; verdicts follow `ids` order.
pub fn verify(module: &Hypermodule, ids: &[TheoremId], limits: &Limits) -> Result<Vec<TheoremVerdict>> {
    let analysis = Analysis::new(module, limits)?;
    ids.par_iter().map(|&id| analysis.check(id)).collect()
}

pub fn verify_all(module: &Hypermodule, limits: &Limits) -> Result<Vec<TheoremVerdict>> {
    verify(module, &TheoremId::ALL, limits)
}

/// T3.10 for an external direct sum of `parts` (all over one ring).
pub fn check_t3_10_external(parts: &[Hypermodule], limits: &Limits) -> Result<(Hypermodule, TheoremVerdict)> {
    let (sum, images) = external_direct_sum(parts, limits)?;
    let analysis = Analysis::new(&sum, limits)?;
    let mut b = analysis.builder(TheoremId::T3_10);
    b.notes.push("external direct sum of the given parts".into());
    let decompositions = if extension_level(images.len(), sum.f().arity()).is_some() {
        vec![images.clone()]
    } else {
        Vec::new()
    };
    let (tally, directions, records) = analysis.direct_sum_iff(&sum, &decompositions);
    b.directions = directions;
    let verdict = b.finish(tally, json!({"parts": analysis.ms_list(&images), "decompositions": records}));
    Ok((sum, verdict))
}
