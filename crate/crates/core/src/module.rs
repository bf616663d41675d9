use std::sync::Arc;

use serde::Serialize;

use crate::carrier::{find_tuple, tuple_index, Carrier};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::ops::HyperOperation;
use crate::report::{ValidationReport, Violation};
use crate::ring::KrasnerHyperring;
use crate::set::ElementSet;
use crate::substructures;

/// The scalar action `g: R^(n-1) × M -> P*(M)` as a dense table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarAction {
    ring_size: usize,
    module_size: usize,
    scalars: usize,
    table: Vec<ElementSet>,
}

impl ScalarAction {
    pub fn from_table(ring_size: usize, module_size: usize, scalars: usize, table: Vec<ElementSet>) -> Result<Self> {
        let expected = ring_size.pow(scalars as u32) * module_size;
        if table.len() != expected {
            return Err(Error::Shape(format!(
                "scalar action has {} entries, expected {expected}",
                table.len()
            )));
        }
        let full = ElementSet::full(module_size);
        if let Some(i) = table.iter().position(|s| s.is_empty() || !s.is_subset(full)) {
            return Err(Error::Shape(format!(
                "scalar action entry {i} is empty or leaves the module"
            )));
        }
        Ok(ScalarAction {
            ring_size,
            module_size,
            scalars,
            table,
        })
    }

    pub fn from_fn(
        ring_size: usize,
        module_size: usize,
        scalars: usize,
        mut g: impl FnMut(&[usize], usize) -> ElementSet,
    ) -> Result<Self> {
        let mut table = Vec::with_capacity(ring_size.pow(scalars as u32) * module_size);
        find_tuple::<()>(ring_size, scalars, |rs| {
            for x in 0..module_size {
                table.push(g(rs, x));
            }
            None
        });
        ScalarAction::from_table(ring_size, module_size, scalars, table)
    }

    pub fn scalars(&self) -> usize {
        self.scalars
    }

    pub fn table(&self) -> &[ElementSet] {
        &self.table
    }

    pub fn get(&self, rs: &[usize], x: usize) -> ElementSet {
        debug_assert_eq!(rs.len(), self.scalars);
        self.table[tuple_index(rs, self.ring_size) * self.module_size + x]
    }

    fn eval_sets_into(&self, rs: &[ElementSet], pos: usize, idx: usize, xs: ElementSet, acc: &mut ElementSet) {
        if pos == rs.len() {
            for x in xs {
                *acc = acc.union(self.table[idx * self.module_size + x]);
            }
            return;
        }
        for r in rs[pos] {
            self.eval_sets_into(rs, pos + 1, idx * self.ring_size + r, xs, acc);
        }
    }

    pub fn eval_sets(&self, rs: &[ElementSet], xs: ElementSet) -> ElementSet {
        let mut acc = ElementSet::EMPTY;
        self.eval_sets_into(rs, 0, 0, xs, &mut acc);
        acc
    }

    pub fn permuted(&self, perm: &[usize]) -> ScalarAction {
        let mut table = vec![ElementSet::EMPTY; self.table.len()];
        let rows = self.table.len() / self.module_size;
        for row in 0..rows {
            for x in 0..self.module_size {
                table[row * self.module_size + perm[x]] = self.table[row * self.module_size + x].map(|v| perm[v]);
            }
        }
        ScalarAction { table, ..*self }
    }
}

/// An (m,n)-hypermodule `(M, f, g)` over a Krasner (m,n)-hyperring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypermodule {
    ring: Arc<KrasnerHyperring>,
    carrier: Carrier,
    f: HyperOperation,
    g: ScalarAction,
    zero: usize,
    negation: Vec<usize>,
}

impl Hypermodule {
    pub fn new(
        ring: Arc<KrasnerHyperring>,
        carrier: Carrier,
        f: HyperOperation,
        g: ScalarAction,
        zero: usize,
    ) -> Result<Self> {
        let size = carrier.size();
        if f.size() != size || f.arity() != ring.m() {
            return Err(Error::Shape(format!(
                "module addition must be {}-ary over {size} elements",
                ring.m()
            )));
        }
        if g.module_size != size || g.ring_size != ring.size() || g.scalars + 1 != ring.n() {
            return Err(Error::Shape("scalar action does not match ring and module".into()));
        }
        if zero >= size {
            return Err(Error::Shape("module zero outside the carrier".into()));
        }
        let m = f.arity();
        let mut args = vec![zero; m];
        let negation = (0..size)
            .map(|x| {
                args[0] = x;
                (0..size)
                    .find(|&y| {
                        args[1] = y;
                        f.get(&args).contains(zero)
                    })
                    .unwrap_or(x)
            })
            .collect();
        Ok(Hypermodule {
            ring,
            carrier,
            f,
            g,
            zero,
            negation,
        })
    }

    pub fn ring(&self) -> &KrasnerHyperring {
        &self.ring
    }

    pub fn ring_arc(&self) -> &Arc<KrasnerHyperring> {
        &self.ring
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn f(&self) -> &HyperOperation {
        &self.f
    }

    pub fn g(&self) -> &ScalarAction {
        &self.g
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn zero_set(&self) -> ElementSet {
        ElementSet::singleton(self.zero)
    }

    pub fn full(&self) -> ElementSet {
        self.carrier.full()
    }

    pub fn neg(&self, x: usize) -> usize {
        self.negation[x]
    }

    pub fn is_zero_module(&self) -> bool {
        self.size() == 1
    }

    /// `g(A, 1^(n-2), X)` for a set of scalars `A` and a set of vectors `X`.
    pub fn scale(&self, scalars: ElementSet, xs: ElementSet) -> ElementSet {
        let mut rs = vec![ElementSet::singleton(self.ring.one()); self.g.scalars];
        rs[0] = scalars;
        self.g.eval_sets(&rs, xs)
    }

    /// `g(a, 1^(n-2), x)`.
    pub fn scale1(&self, a: usize, x: usize) -> ElementSet {
        let mut rs = vec![self.ring.one(); self.g.scalars];
        rs[0] = a;
        self.g.get(&rs, x)
    }

    /// `f(X_1, ..., X_j, 0^(m-j))`.
    pub fn sum_sets(&self, parts: &[ElementSet]) -> ElementSet {
        let mut args = vec![self.zero_set(); self.f.arity()];
        args[..parts.len()].copy_from_slice(parts);
        self.f.eval_sets(&args)
    }

    /// Axioms (i)-(iv) of an (m,n)-hypermodule, the canonical hypergroup
    /// axioms for `(M, f)`, and unitality `g(1^(n-1), x) = {x}`.
    pub fn validate(&self) -> ValidationReport {
        let c = &self.carrier;
        let mut report = ValidationReport::default();
        let canonical = self.f.canonical_report();
        report.push(
            "f_canonical_hypergroup",
            canonical.violation.as_ref().map(|v| v.render(c)),
        );
        let zero_ok = self.f.find_scalar_neutral() == Some(self.zero);
        report.push(
            "zero_is_additive_identity",
            (!zero_ok).then(|| format!("`{}` is not the identity of f", c.label(self.zero))),
        );
        report.push("action_distributes_over_f", self.axiom_i().map(|v| self.render(&v)));
        report.push(
            "scalar_distributivity",
            self.axiom_ii().map(|v| self.render(&v)),
        );
        let mixed_note = if self.ring.m() != self.ring.n() {
            "checked with n-based index ranges: r_1^{i-1}, k(r_i^{i+n-1}), r_{i+n}^{2n-2} against g(r_1^{n-1}, g(r_n^{2n-2}, x)); the m-based ranges are inconsistent when m != n"
        } else {
            "g(r_1^{i-1}, k(r_i^{i+n-1}), r_{i+n}^{2n-2}, x) = g(r_1^{n-1}, g(r_n^{2n-2}, x))"
        };
        report.push_noted(
            "mixed_associativity",
            self.axiom_iii().map(|v| self.render(&v)),
            mixed_note,
        );
        report.push("zero_scalar_annihilates", self.axiom_iv().map(|v| self.render(&v)));
        report.push_noted(
            "unitality",
            self.unitality_violation().map(|v| self.render(&v)),
            "implied axiom",
        );
        report
    }

    /// Witness tuples list ring scalars first, then module elements.
    fn render(&self, v: &Violation) -> String {
        format!("{}: {} (tuple {:?})", v.axiom, v.detail, v.tuple)
    }

    fn axiom_i(&self) -> Option<Violation> {
        let (m, s, r) = (self.f.arity(), self.size(), self.g.scalars);
        let mut parts = vec![ElementSet::EMPTY; m];
        find_tuple(self.ring.size(), r, |rs| {
            find_tuple(s, m, |xs| {
                let lhs = self.g.eval_sets(&rs.iter().map(|&x| ElementSet::singleton(x)).collect::<Vec<_>>(), self.f.get(xs));
                for (p, &x) in parts.iter_mut().zip(xs) {
                    *p = self.g.get(rs, x);
                }
                let rhs = self.f.eval_sets(&parts);
                (lhs != rhs).then(|| {
                    let mut t = rs.to_vec();
                    t.extend_from_slice(xs);
                    Violation::new("(i)", t, format!("g(r, f(x)) = {lhs:?} but f(g(r,x_1), ...) = {rhs:?}"))
                })
            })
        })
    }

    fn axiom_ii(&self) -> Option<Violation> {
        let ring = &*self.ring;
        let (m, scalars) = (ring.m(), self.g.scalars);
        let mut rs = vec![ElementSet::EMPTY; scalars];
        let mut parts = vec![ElementSet::EMPTY; m];
        for i in 0..scalars {
            let found = find_tuple(ring.size(), scalars - 1 + m, |t| {
                let (others, ss) = t.split_at(scalars - 1);
                let mut k = 0;
                for (j, slot) in rs.iter_mut().enumerate() {
                    if j != i {
                        *slot = ElementSet::singleton(others[k]);
                        k += 1;
                    }
                }
                rs[i] = ring.h().get(ss);
                let lhs_rs = rs.clone();
                find_tuple(self.size(), 1, |x| {
                    let x = x[0];
                    let lhs = self.g.eval_sets(&lhs_rs, ElementSet::singleton(x));
                    let mut rs1 = lhs_rs.clone();
                    for (p, &s) in parts.iter_mut().zip(ss) {
                        rs1[i] = ElementSet::singleton(s);
                        *p = self.g.eval_sets(&rs1, ElementSet::singleton(x));
                    }
                    let rhs = self.f.eval_sets(&parts);
                    (lhs != rhs).then(|| {
                        let mut w = t.to_vec();
                        w.push(x);
                        Violation::new(
                            "(ii)",
                            w,
                            format!("slot {}: g(.., h(s), .., x) = {lhs:?} but f(g(.., s_j, .., x)) = {rhs:?}", i + 1),
                        )
                    })
                })
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn axiom_iii(&self) -> Option<Violation> {
        let ring = &*self.ring;
        let n = ring.n();
        let scalars = n - 1;
        let mut lhs_rs = vec![0; scalars];
        let mut outer = vec![ElementSet::EMPTY; scalars];
        for i in 0..scalars {
            let found = find_tuple(ring.size(), 2 * n - 2, |r| {
                lhs_rs[..i].copy_from_slice(&r[..i]);
                lhs_rs[i] = ring.k().get(&r[i..i + n]);
                lhs_rs[i + 1..].copy_from_slice(&r[i + n..]);
                for (o, &x) in outer.iter_mut().zip(&r[..scalars]) {
                    *o = ElementSet::singleton(x);
                }
                find_tuple(self.size(), 1, |x| {
                    let x = x[0];
                    let lhs = self.g.get(&lhs_rs, x);
                    let inner = self.g.get(&r[scalars..], x);
                    let rhs = self.g.eval_sets(&outer, inner);
                    (lhs != rhs).then(|| {
                        let mut w = r.to_vec();
                        w.push(x);
                        Violation::new(
                            "(iii)",
                            w,
                            format!("k in slot {}: {lhs:?} versus nested action {rhs:?}", i + 1),
                        )
                    })
                })
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn axiom_iv(&self) -> Option<Violation> {
        let ring = &*self.ring;
        let scalars = self.g.scalars;
        let zero = self.zero_set();
        find_tuple(ring.size(), scalars, |rs| {
            if !rs.contains(&ring.zero()) {
                return None;
            }
            (0..self.size()).find_map(|x| {
                (self.g.get(rs, x) != zero).then(|| {
                    let mut w = rs.to_vec();
                    w.push(x);
                    Violation::new("(iv)", w, "a zero scalar does not give {0}")
                })
            })
        })
    }

    fn unitality_violation(&self) -> Option<Violation> {
        let ones = vec![self.ring.one(); self.g.scalars];
        (0..self.size()).find_map(|x| {
            (self.g.get(&ones, x) != ElementSet::singleton(x)).then(|| {
                let mut w = ones.clone();
                w.push(x);
                Violation::new("unitality", w, "g(1^(n-1), x) != {x}")
            })
        })
    }

    /// Relabel the module carrier through `perm` (old -> new); the ring is untouched.
    pub fn permuted(&self, perm: &[usize]) -> Hypermodule {
        let mut labels = vec![String::new(); self.size()];
        for (old, &new) in perm.iter().enumerate() {
            labels[new] = self.carrier.label(old).to_string();
        }
        let mut negation = vec![0; self.size()];
        for (old, &new) in perm.iter().enumerate() {
            negation[new] = perm[self.negation[old]];
        }
        Hypermodule {
            ring: self.ring.clone(),
            carrier: Carrier::new(labels).expect("permutation of distinct labels"),
            f: self.f.permuted(perm),
            g: self.g.permuted(perm),
            zero: perm[self.zero],
            negation,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssumptionCheck {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl AssumptionCheck {
    fn from_witness(witness: Option<String>) -> Self {
        AssumptionCheck {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// The three conventions every result in the theory is stated under.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssumptionReport {
    /// (a) `x ∈ g(I, 1^(n-2), m)` has a singleton witness `{x} = g(a, 1^(n-2), m)`, `a ∈ I`.
    pub singleton_witness: AssumptionCheck,
    /// (b) `h(r, -r, 0^(m-2)) = {0}`.
    pub zero_difference: AssumptionCheck,
    /// (c) the two torsion parts agree for every maximal hyperideal.
    pub torsion_agreement: AssumptionCheck,
}

impl AssumptionReport {
    pub fn all_hold(&self) -> bool {
        self.singleton_witness.holds && self.zero_difference.holds && self.torsion_agreement.holds
    }
}

/// Check the standing assumptions. Instances failing them are outside
/// the contract of the theorem harness.
pub fn check_standing_assumptions(module: &Hypermodule, limits: &Limits) -> Result<AssumptionReport> {
    let ring = module.ring();
    let ideals = substructures::enumerate_hyperideal_sets(ring, limits)?;
    let rc = ring.carrier();
    let mc = module.carrier();

    let check_a = |subset: ElementSet| -> Option<String> {
        for m in 0..module.size() {
            let reach = module.scale(subset, ElementSet::singleton(m));
            for x in reach {
                let ok = subset
                    .iter()
                    .any(|a| module.scale1(a, m) == ElementSet::singleton(x));
                if !ok {
                    return Some(format!(
                        "I = {}, m = {}: {} ∈ g(I, 1, m) without a singleton witness",
                        rc.show_set(subset),
                        mc.label(m),
                        mc.label(x)
                    ));
                }
            }
        }
        None
    };
    let singleton_witness = if ring.size() <= 4 {
        (1..1u128 << ring.size())
            .map(ElementSet::from_bits)
            .find_map(check_a)
    } else {
        ideals.iter().copied().find_map(check_a)
    };

    let zero_difference = (0..ring.size()).find_map(|r| {
        let s = ring.sum_sets(&[ElementSet::singleton(r), ElementSet::singleton(ring.neg(r))]);
        (s != ring.zero_set()).then(|| {
            format!(
                "h({}, -{}) = {} is not {{0}}",
                rc.label(r),
                rc.label(r),
                rc.show_set(s)
            )
        })
    });

    let maximal = substructures::maximal_among(&ideals, ring.full());
    let torsion_agreement = maximal.iter().find_map(|&p| {
        let t = substructures::torsion_part(module, p);
        (t.lower != t.upper).then(|| {
            format!(
                "P = {}: lower torsion {} differs from upper {}",
                rc.show_set(p),
                mc.show_set(t.lower),
                mc.show_set(t.upper)
            )
        })
    });

    Ok(AssumptionReport {
        singleton_witness: AssumptionCheck::from_witness(singleton_witness),
        zero_difference: AssumptionCheck::from_witness(zero_difference),
        torsion_agreement: AssumptionCheck::from_witness(torsion_agreement),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_validate() {
        for module in [
            fixtures::zn_over_self(4),
            fixtures::k2_over_k2(),
            fixtures::v4_over_z2(),
            fixtures::zero_module(fixtures::zn(4)),
        ] {
            let r = module.validate();
            assert!(r.is_valid(), "{r:?}");
        }
    }

    #[test]
    fn standing_assumptions() {
        let limits = Limits::default();
        let z4 = check_standing_assumptions(&fixtures::zn_over_self(4), &limits).unwrap();
        assert!(z4.all_hold());
        let v4 = check_standing_assumptions(&fixtures::v4_over_z2(), &limits).unwrap();
        assert!(v4.all_hold());
        let k2 = check_standing_assumptions(&fixtures::k2_over_k2(), &limits).unwrap();
        assert!(!k2.zero_difference.holds);
        assert!(k2.zero_difference.witness.as_deref().unwrap().contains("h(1, -1)"));
    }

    #[test]
    fn broken_action_is_reported() {
        let good = fixtures::zn_over_self(3);
        let ring = good.ring_arc().clone();
        // g(2, x) = {x}: breaks (ii) and (iii)
        let g = ScalarAction::from_fn(3, 3, 1, |rs, x| match rs[0] {
            0 => ElementSet::singleton(0),
            _ => ElementSet::singleton(x),
        })
        .unwrap();
        let bad = Hypermodule::new(ring, good.carrier().clone(), good.f().clone(), g, 0).unwrap();
        let report = bad.validate();
        assert!(!report.get("scalar_distributivity").unwrap().passed);
        assert!(report.get("unitality").unwrap().passed);
    }
}
