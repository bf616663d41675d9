use crate::carrier::{find_tuple, Carrier};
use crate::error::{Error, Result};
use crate::ops::{HyperOperation, Operation};
use crate::report::{ValidationReport, Violation};
use crate::set::ElementSet;

/// A commutative Krasner (m,n)-hyperring: an m-ary additive hyperoperation
/// `h`, an n-ary multiplication `k`, and declared `zero` and `one`.
///
/// Construction checks shapes only; [`validate`](Self::validate) checks the
/// axioms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KrasnerHyperring {
    carrier: Carrier,
    h: HyperOperation,
    k: Operation,
    zero: usize,
    one: usize,
    negation: Vec<usize>,
}

impl KrasnerHyperring {
    pub fn new(carrier: Carrier, h: HyperOperation, k: Operation, zero: usize, one: usize) -> Result<Self> {
        let size = carrier.size();
        if h.size() != size || k.size() != size {
            return Err(Error::Shape("operation tables do not match the ring carrier".into()));
        }
        if zero >= size || one >= size {
            return Err(Error::Shape("zero or one outside the ring carrier".into()));
        }
        let negation = additive_negation(&h, zero);
        Ok(KrasnerHyperring {
            carrier,
            h,
            k,
            zero,
            one,
            negation,
        })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    /// Arity of the addition `h`.
    pub fn m(&self) -> usize {
        self.h.arity()
    }

    /// Arity of the multiplication `k`.
    pub fn n(&self) -> usize {
        self.k.arity()
    }

    pub fn h(&self) -> &HyperOperation {
        &self.h
    }

    pub fn k(&self) -> &Operation {
        &self.k
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn full(&self) -> ElementSet {
        self.carrier.full()
    }

    pub fn zero_set(&self) -> ElementSet {
        ElementSet::singleton(self.zero)
    }

    /// Additive inverse `-x`: the least `y` with `0 ∈ h(x, y, 0^(m-2))`.
    /// Exact on validated rings, where it is unique.
    pub fn neg(&self, x: usize) -> usize {
        self.negation[x]
    }

    /// `h(a_1, ..., a_j, 0^(m-j))` on sets.
    pub fn sum_sets(&self, parts: &[ElementSet]) -> ElementSet {
        let mut args = vec![self.zero_set(); self.m()];
        args[..parts.len()].copy_from_slice(parts);
        self.h.eval_sets(&args)
    }

    /// `h(1, -p, 0^(m-2))`.
    pub fn one_minus(&self, p: usize) -> ElementSet {
        self.sum_sets(&[ElementSet::singleton(self.one), ElementSet::singleton(self.neg(p))])
    }

    /// `k(a, b, 1^(n-2))`.
    pub fn mul2(&self, a: usize, b: usize) -> usize {
        let mut args = vec![self.one; self.n()];
        args[0] = a;
        args[1] = b;
        self.k.get(&args)
    }

    /// The `t`-th power of `r`: `k(r^(t), 1^(n-t))` for `t <= n`, and
    /// `k_(l)(r^(t))` for `t = l(n-1)+1 > n`. `None` when `t` has neither form.
    pub fn power(&self, r: usize, t: usize) -> Option<usize> {
        let n = self.n();
        if t == 0 {
            return None;
        }
        if t <= n {
            let mut args = vec![self.one; n];
            args[..t].fill(r);
            return Some(self.k.get(&args));
        }
        if (t - 1) % (n - 1) != 0 {
            return None;
        }
        self.k.fold(&vec![r; t]).ok()
    }

    /// Representable exponents in increasing order, up to the point where
    /// the power sequence of `r` starts repeating. Every value the power
    /// sequence ever takes appears among the returned `(t, r^t)` pairs.
    pub fn power_orbit(&self, r: usize) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out: Vec<(usize, usize)> = (1..=n).filter_map(|t| self.power(r, t).map(|p| (t, p))).collect();
        // beyond n, powers advance by n-1 factors: q_{l+1} = k(q_l, r^(n-1))
        let mut seen = vec![false; self.size()];
        let mut t = n;
        let mut q = out.last().map(|&(_, p)| p).unwrap_or(r);
        seen[q] = true;
        let mut args = vec![r; n];
        loop {
            args[0] = q;
            q = self.k.get(&args);
            t += n - 1;
            if seen[q] {
                break;
            }
            seen[q] = true;
            out.push((t, q));
        }
        out
    }

    /// Axiom-by-axiom validation of a commutative Krasner (m,n)-hyperring
    /// with identity.
    pub fn validate(&self) -> ValidationReport {
        let c = &self.carrier;
        let mut report = ValidationReport::default();
        let canonical = self.h.canonical_report();
        report.push(
            "h_canonical_hypergroup",
            canonical.violation.as_ref().map(|v| v.render(c)),
        );
        let zero_is_identity = match canonical.neutral {
            Some(e) if e != self.zero => Some(format!(
                "declared zero `{}` but the additive identity is `{}`",
                c.label(self.zero),
                c.label(e)
            )),
            _ if !self.h_identity_ok() => Some(format!("`{}` is not a scalar neutral of h", c.label(self.zero))),
            _ => None,
        };
        report.push("zero_is_additive_identity", zero_is_identity);
        report.push(
            "k_associative",
            self.k.associativity_violation().map(|v| v.render(c)),
        );
        report.push(
            "k_commutative",
            self.k.commutativity_violation().map(|v| v.render(c)),
        );
        report.push(
            "distributivity",
            self.distributivity_violation().map(|v| v.render(c)),
        );
        report.push(
            "zero_absorbing",
            (!self.k.is_zero(self.zero)).then(|| format!("`{}` does not absorb under k", c.label(self.zero))),
        );
        report.push(
            "one_neutral",
            (!self.k.is_scalar_neutral(self.one))
                .then(|| format!("`{}` is not a scalar neutral of k", c.label(self.one))),
        );
        report
    }

    fn h_identity_ok(&self) -> bool {
        self.h.find_scalar_neutral() == Some(self.zero)
    }

    /// `k(a_1^{i-1}, h(x_1^m), a_{i+1}^n) = h(k(.., x_1, ..), ..., k(.., x_m, ..))`
    /// in every position `i`.
    pub fn distributivity_violation(&self) -> Option<Violation> {
        let (m, n, s) = (self.m(), self.n(), self.size());
        let mut kargs = vec![0; n];
        let mut hargs = vec![0; m];
        for i in 0..n {
            let found = find_tuple(s, n - 1 + m, |t| {
                let (others, xs) = t.split_at(n - 1);
                let mut lhs = ElementSet::EMPTY;
                let place = |kargs: &mut Vec<usize>, y: usize| {
                    kargs[..i].copy_from_slice(&others[..i]);
                    kargs[i] = y;
                    kargs[i + 1..].copy_from_slice(&others[i..]);
                };
                for y in self.h.get(xs) {
                    place(&mut kargs, y);
                    lhs.insert(self.k.get(&kargs));
                }
                for (slot, &x) in hargs.iter_mut().zip(xs) {
                    place(&mut kargs, x);
                    *slot = self.k.get(&kargs);
                }
                let rhs = self.h.get(&hargs);
                (lhs != rhs).then(|| {
                    Violation::new(
                        "distributivity",
                        t.to_vec(),
                        format!("position {}: k over the sum gives {lhs:?}, sum of products gives {rhs:?}", i + 1),
                    )
                })
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }

    pub fn is_degenerate(&self) -> bool {
        self.zero == self.one
    }
}

fn additive_negation(h: &HyperOperation, zero: usize) -> Vec<usize> {
    let m = h.arity();
    let mut args = vec![zero; m];
    (0..h.size())
        .map(|x| {
            args[0] = x;
            let y = (0..h.size()).find(|&y| {
                args[1] = y;
                h.get(&args).contains(zero)
            });
            y.unwrap_or(x)
        })
        .collect()
}
