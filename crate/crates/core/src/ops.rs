//! Operation tables over a finite carrier: multivalued ([`HyperOperation`])
//! and single-valued ([`Operation`]), with their iterated extensions and
//! the table-level axiom checks.

use crate::carrier::{checked_pow, find_tuple, next_tuple, tuple_index};
use crate::error::{Error, Result};
use crate::report::Violation;
use crate::set::{ElementSet, MAX_CARRIER};

fn check_shape(size: usize, arity: usize, budget: u128) -> Result<usize> {
    if size == 0 || size > MAX_CARRIER {
        return Err(Error::Shape(format!("carrier size {size} out of range")));
    }
    if arity < 2 {
        return Err(Error::Arity(format!("operation arity must be at least 2, got {arity}")));
    }
    let entries = checked_pow(size, arity).unwrap_or(u128::MAX);
    if entries > budget {
        return Err(Error::capacity("operation table entries", entries, budget));
    }
    Ok(entries as usize)
}

/// `l` such that `len = l*(arity-1)+1`, if any.
pub fn extension_level(len: usize, arity: usize) -> Option<usize> {
    (len >= 1 && (len - 1) % (arity - 1) == 0).then(|| (len - 1) / (arity - 1))
}

/// A total map from `arity`-tuples of `0..size` to nonempty subsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HyperOperation {
    size: usize,
    arity: usize,
    table: Vec<ElementSet>,
}

impl HyperOperation {
    pub fn from_table(size: usize, arity: usize, table: Vec<ElementSet>) -> Result<Self> {
        let entries = check_shape(size, arity, u128::MAX)?;
        if table.len() != entries {
            return Err(Error::Shape(format!(
                "hyperoperation table has {} entries, expected {entries}",
                table.len()
            )));
        }
        let full = ElementSet::full(size);
        if let Some(i) = table.iter().position(|s| s.is_empty() || !s.is_subset(full)) {
            return Err(Error::Shape(format!(
                "hyperoperation entry {i} is empty or leaves the carrier"
            )));
        }
        Ok(HyperOperation { size, arity, table })
    }

    pub fn from_fn(size: usize, arity: usize, mut f: impl FnMut(&[usize]) -> ElementSet) -> Result<Self> {
        let entries = check_shape(size, arity, u128::MAX)?;
        let mut table = Vec::with_capacity(entries);
        find_tuple::<()>(size, arity, |t| {
            table.push(f(t));
            None
        });
        HyperOperation::from_table(size, arity, table)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[ElementSet] {
        &self.table
    }

    pub fn get(&self, tuple: &[usize]) -> ElementSet {
        debug_assert_eq!(tuple.len(), self.arity);
        self.table[tuple_index(tuple, self.size)]
    }

    /// Union of the table entries over the Cartesian product of `args`.
    pub fn eval_on_sets(&self, args: &[ElementSet]) -> Result<ElementSet> {
        if args.len() != self.arity {
            return Err(Error::Arity(format!(
                "expected {} arguments, got {}",
                self.arity,
                args.len()
            )));
        }
        if args.iter().any(|a| a.is_empty()) {
            return Err(Error::Precondition("set arguments must be nonempty".into()));
        }
        Ok(self.eval_sets(args))
    }

    /// As [`eval_on_sets`](Self::eval_on_sets) without argument checks; an
    /// empty argument yields the empty set.
    pub(crate) fn eval_sets(&self, args: &[ElementSet]) -> ElementSet {
        let mut acc = ElementSet::EMPTY;
        self.eval_sets_into(args, 0, 0, &mut acc);
        acc
    }

    fn eval_sets_into(&self, args: &[ElementSet], pos: usize, idx: usize, acc: &mut ElementSet) {
        if pos == args.len() {
            *acc = acc.union(self.table[idx]);
            return;
        }
        for x in args[pos] {
            self.eval_sets_into(args, pos + 1, idx * self.size + x, acc);
        }
    }

    /// Evaluate the `l`-fold extension on sets, folding from the left.
    /// `args.len()` must be `l*(arity-1)+1`; `l = 0` returns the single argument.
    pub fn fold_on_sets(&self, args: &[ElementSet]) -> Result<ElementSet> {
        if extension_level(args.len(), self.arity).is_none() {
            return Err(Error::Arity(format!(
                "{} arguments is not of the form l*({})+1",
                args.len(),
                self.arity - 1
            )));
        }
        Ok(self.fold_sets(args))
    }

    pub(crate) fn fold_sets(&self, args: &[ElementSet]) -> ElementSet {
        let step = self.arity - 1;
        let mut acc = args[0];
        let mut buf = vec![ElementSet::EMPTY; self.arity];
        for chunk in args[1..].chunks(step) {
            buf[0] = acc;
            buf[1..].copy_from_slice(chunk);
            acc = self.eval_sets(&buf);
        }
        acc
    }

    /// Table of the extension `f_(l)` of arity `l*(arity-1)+1`.
    pub fn extend(&self, l: usize, budget: u128) -> Result<HyperOperation> {
        if l == 0 {
            return Err(Error::Arity("extension level must be at least 1".into()));
        }
        let target = l * (self.arity - 1) + 1;
        check_shape(self.size, target, budget)?;
        let suffix_count = self.size.pow(self.arity as u32 - 1);
        let mut current = self.table.clone();
        for _ in 1..l {
            let mut next = Vec::with_capacity(current.len() * suffix_count);
            for prefix in &current {
                for s in 0..suffix_count {
                    let mut out = ElementSet::EMPTY;
                    for a in *prefix {
                        out = out.union(self.table[a * suffix_count + s]);
                    }
                    next.push(out);
                }
            }
            current = next;
        }
        Ok(HyperOperation {
            size: self.size,
            arity: target,
            table: current,
        })
    }

    /// Compare the nestings `f(x_1^{i-1}, f(x_i^{i+t-1}), x_{i+t}^{2t-1})`
    /// for all positions over every `(2t-1)`-tuple.
    pub fn associativity_violation(&self) -> Option<Violation> {
        let t = self.arity;
        let mut outer = vec![ElementSet::EMPTY; t];
        let mut nests = vec![ElementSet::EMPTY; t];
        find_tuple(self.size, 2 * t - 1, |x| {
            for (i, nest) in nests.iter_mut().enumerate() {
                let inner = self.get(&x[i..i + t]);
                for (j, slot) in outer.iter_mut().enumerate() {
                    *slot = match j.cmp(&i) {
                        std::cmp::Ordering::Less => ElementSet::singleton(x[j]),
                        std::cmp::Ordering::Equal => inner,
                        std::cmp::Ordering::Greater => ElementSet::singleton(x[j + t - 1]),
                    };
                }
                *nest = self.eval_sets(&outer);
            }
            for i in 0..t {
                for j in i + 1..t {
                    if nests[i] != nests[j] {
                        return Some(Violation::new(
                            "associativity",
                            x.to_vec(),
                            format!(
                                "nesting at position {} gives {:?}, at position {} gives {:?}",
                                i + 1,
                                nests[i],
                                j + 1,
                                nests[j]
                            ),
                        ));
                    }
                }
            }
            None
        })
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_violation().is_none()
    }

    /// Each entry must equal the entry at its sorted tuple.
    pub fn commutativity_violation(&self) -> Option<Violation> {
        let mut sorted = vec![0; self.arity];
        find_tuple(self.size, self.arity, |x| {
            sorted.copy_from_slice(x);
            sorted.sort_unstable();
            (self.get(x) != self.get(&sorted)).then(|| {
                Violation::new("commutativity", x.to_vec(), "entry differs from its sorted permutation")
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_violation().is_none()
    }

    fn is_scalar_neutral(&self, e: usize) -> bool {
        let mut args = vec![e; self.arity];
        (0..self.size).all(|x| {
            (0..self.arity).all(|i| {
                args[i] = x;
                let ok = self.get(&args) == ElementSet::singleton(x);
                args[i] = e;
                ok
            })
        })
    }

    /// The element `e` with `f(e^(i-1), x, e^(t-i)) = {x}` everywhere, if any.
    pub fn find_scalar_neutral(&self) -> Option<usize> {
        let mut found = (0..self.size).filter(|&e| self.is_scalar_neutral(e));
        let e = found.next();
        debug_assert!(found.next().is_none(), "two scalar neutrals coincide");
        e
    }

    /// An absorbing element: every entry with `z` in some slot is `{z}`.
    pub fn find_zero(&self) -> Option<usize> {
        (0..self.size).find(|&z| {
            find_tuple(self.size, self.arity, |x| {
                (x.contains(&z) && self.get(x) != ElementSet::singleton(z)).then_some(())
            })
            .is_none()
        })
    }

    /// Axioms of a commutative canonical hypergroup, in order: associativity,
    /// commutativity, unique identity, unique inverses, reversibility, and
    /// solvability of `b ∈ f(a_1^{i-1}, x, a_{i+1}^t)`.
    pub fn canonical_report(&self) -> CanonicalReport {
        let fail = |v: Violation| CanonicalReport {
            is_canonical: false,
            neutral: None,
            inverse_map: None,
            violation: Some(v),
        };
        if let Some(v) = self.associativity_violation() {
            return fail(v);
        }
        if let Some(v) = self.commutativity_violation() {
            return fail(v);
        }
        let t = self.arity;
        // (1) unique e with f(x, e^(t-1)) = {x}
        let identities: Vec<usize> = (0..self.size)
            .filter(|&e| {
                (0..self.size).all(|x| {
                    let mut args = vec![e; t];
                    args[0] = x;
                    self.get(&args) == ElementSet::singleton(x)
                })
            })
            .collect();
        let e = match identities.as_slice() {
            [e] => *e,
            [] => return fail(Violation::new("identity", vec![], "no scalar identity")),
            many => {
                return fail(Violation::new(
                    "identity",
                    many.to_vec(),
                    "scalar identity is not unique",
                ))
            }
        };
        // (2) unique inverses
        let mut inverse = Vec::with_capacity(self.size);
        let mut args = vec![e; t];
        for x in 0..self.size {
            args[0] = x;
            let mut candidates = (0..self.size).filter(|&y| {
                args[1] = y;
                self.get(&args).contains(e)
            });
            let first = candidates.next();
            let second = candidates.next();
            match (first, second) {
                (Some(y), None) => inverse.push(y),
                (None, _) => {
                    return fail(Violation::new("inverse", vec![x], "element has no inverse"))
                }
                (Some(y), Some(z)) => {
                    return fail(Violation::new(
                        "inverse",
                        vec![x, y, z],
                        "element has more than one inverse",
                    ))
                }
            }
        }
        // (3) reversibility
        let mut rhs = vec![0; t];
        let reversibility = find_tuple(self.size, t, |x| {
            for z in self.get(x) {
                for i in 0..t {
                    rhs[0] = z;
                    let mut k = 1;
                    for (j, &xj) in x.iter().enumerate() {
                        if j != i {
                            rhs[k] = inverse[xj];
                            k += 1;
                        }
                    }
                    if !self.get(&rhs).contains(x[i]) {
                        let mut w = x.to_vec();
                        w.push(z);
                        return Some(Violation::new(
                            "reversibility",
                            w,
                            format!("x_{} not recovered from the result by inverses", i + 1),
                        ));
                    }
                }
            }
            None
        });
        if let Some(v) = reversibility {
            return fail(v);
        }
        if let Some(v) = self.solvability_violation() {
            return fail(v);
        }
        CanonicalReport {
            is_canonical: true,
            neutral: Some(e),
            inverse_map: Some(inverse),
            violation: None,
        }
    }

    fn solvability_violation(&self) -> Option<Violation> {
        let full = ElementSet::full(self.size);
        let t = self.arity;
        let mut args = vec![0; t];
        for i in 0..t {
            let found = find_tuple(self.size, t - 1, |others| {
                let mut k = 0;
                for (j, slot) in args.iter_mut().enumerate() {
                    if j != i {
                        *slot = others[k];
                        k += 1;
                    }
                }
                let mut reach = ElementSet::EMPTY;
                for x in 0..self.size {
                    args[i] = x;
                    reach = reach.union(self.get(&args));
                }
                (reach != full).then(|| {
                    let b = full.difference(reach).min().unwrap_or(0);
                    let mut w = others.to_vec();
                    w.push(b);
                    Violation::new(
                        "solvability",
                        w,
                        format!("no solution in position {}", i + 1),
                    )
                })
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Relabel through `perm` (old index -> new index).
    pub fn permuted(&self, perm: &[usize]) -> HyperOperation {
        let mut table = vec![ElementSet::EMPTY; self.table.len()];
        let mut image = vec![0; self.arity];
        let mut x = vec![0; self.arity];
        loop {
            for (d, s) in image.iter_mut().zip(&x) {
                *d = perm[*s];
            }
            table[tuple_index(&image, self.size)] = self.get(&x).map(|v| perm[v]);
            if !next_tuple(&mut x, self.size) {
                break;
            }
        }
        HyperOperation {
            size: self.size,
            arity: self.arity,
            table,
        }
    }
}

/// Result of [`HyperOperation::canonical_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalReport {
    pub is_canonical: bool,
    pub neutral: Option<usize>,
    pub inverse_map: Option<Vec<usize>>,
    pub violation: Option<Violation>,
}

/// A total single-valued map from `arity`-tuples of `0..size` into `0..size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Operation {
    size: usize,
    arity: usize,
    table: Vec<u32>,
}

impl Operation {
    pub fn from_table(size: usize, arity: usize, table: Vec<usize>) -> Result<Self> {
        let entries = check_shape(size, arity, u128::MAX)?;
        if table.len() != entries {
            return Err(Error::Shape(format!(
                "operation table has {} entries, expected {entries}",
                table.len()
            )));
        }
        if let Some(i) = table.iter().position(|&v| v >= size) {
            return Err(Error::Shape(format!("operation entry {i} leaves the carrier")));
        }
        Ok(Operation {
            size,
            arity,
            table: table.into_iter().map(|v| v as u32).collect(),
        })
    }

    pub fn from_fn(size: usize, arity: usize, mut f: impl FnMut(&[usize]) -> usize) -> Result<Self> {
        let entries = check_shape(size, arity, u128::MAX)?;
        let mut table = Vec::with_capacity(entries);
        find_tuple::<()>(size, arity, |t| {
            table.push(f(t));
            None
        });
        Operation::from_table(size, arity, table)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> impl Iterator<Item = usize> + '_ {
        self.table.iter().map(|&v| v as usize)
    }

    pub fn get(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.arity);
        self.table[tuple_index(tuple, self.size)] as usize
    }

    /// Image of the Cartesian product of `args`.
    pub fn image_of_sets(&self, args: &[ElementSet]) -> ElementSet {
        let mut acc = ElementSet::EMPTY;
        self.image_into(args, 0, 0, &mut acc);
        acc
    }

    fn image_into(&self, args: &[ElementSet], pos: usize, idx: usize, acc: &mut ElementSet) {
        if pos == args.len() {
            acc.insert(self.table[idx] as usize);
            return;
        }
        for x in args[pos] {
            self.image_into(args, pos + 1, idx * self.size + x, acc);
        }
    }

    /// Left fold of the `l`-fold extension over `l*(arity-1)+1` arguments.
    pub fn fold(&self, args: &[usize]) -> Result<usize> {
        if args.is_empty() || extension_level(args.len(), self.arity).is_none() {
            return Err(Error::Arity(format!(
                "{} arguments is not of the form l*({})+1",
                args.len(),
                self.arity - 1
            )));
        }
        let mut acc = args[0];
        let mut buf = vec![0; self.arity];
        for chunk in args[1..].chunks(self.arity - 1) {
            buf[0] = acc;
            buf[1..].copy_from_slice(chunk);
            acc = self.get(&buf);
        }
        Ok(acc)
    }

    pub fn extend(&self, l: usize, budget: u128) -> Result<Operation> {
        if l == 0 {
            return Err(Error::Arity("extension level must be at least 1".into()));
        }
        let target = l * (self.arity - 1) + 1;
        check_shape(self.size, target, budget)?;
        let suffix_count = self.size.pow(self.arity as u32 - 1);
        let mut current = self.table.clone();
        for _ in 1..l {
            let mut next = Vec::with_capacity(current.len() * suffix_count);
            for &prefix in &current {
                for s in 0..suffix_count {
                    next.push(self.table[prefix as usize * suffix_count + s]);
                }
            }
            current = next;
        }
        Ok(Operation {
            size: self.size,
            arity: target,
            table: current,
        })
    }

    pub fn associativity_violation(&self) -> Option<Violation> {
        let t = self.arity;
        let mut outer = vec![0; t];
        let mut nests = vec![0; t];
        find_tuple(self.size, 2 * t - 1, |x| {
            for (i, nest) in nests.iter_mut().enumerate() {
                outer[..i].copy_from_slice(&x[..i]);
                outer[i] = self.get(&x[i..i + t]);
                outer[i + 1..].copy_from_slice(&x[i + t..]);
                *nest = self.get(&outer);
            }
            let j = (1..t).find(|&j| nests[j] != nests[0])?;
            Some(Violation::new(
                "associativity",
                x.to_vec(),
                format!("nesting at position 1 gives {}, at position {} gives {}", nests[0], j + 1, nests[j]),
            ))
        })
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_violation().is_none()
    }

    pub fn commutativity_violation(&self) -> Option<Violation> {
        let mut sorted = vec![0; self.arity];
        find_tuple(self.size, self.arity, |x| {
            sorted.copy_from_slice(x);
            sorted.sort_unstable();
            (self.get(x) != self.get(&sorted)).then(|| {
                Violation::new("commutativity", x.to_vec(), "entry differs from its sorted permutation")
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_violation().is_none()
    }

    pub fn is_scalar_neutral(&self, e: usize) -> bool {
        let mut args = vec![e; self.arity];
        (0..self.size).all(|x| {
            (0..self.arity).all(|i| {
                args[i] = x;
                let ok = self.get(&args) == x;
                args[i] = e;
                ok
            })
        })
    }

    pub fn find_scalar_neutral(&self) -> Option<usize> {
        let mut found = (0..self.size).filter(|&e| self.is_scalar_neutral(e));
        let e = found.next();
        debug_assert!(found.next().is_none(), "two scalar neutrals coincide");
        e
    }

    pub fn is_zero(&self, z: usize) -> bool {
        find_tuple(self.size, self.arity, |x| (x.contains(&z) && self.get(x) != z).then_some(())).is_none()
    }

    /// The absorbing element, unique when present.
    pub fn find_zero(&self) -> Option<usize> {
        let mut found = (0..self.size).filter(|&z| self.is_zero(z));
        let z = found.next();
        debug_assert!(found.next().is_none(), "the zero element is unique");
        z
    }

    pub fn permuted(&self, perm: &[usize]) -> Operation {
        let mut table = vec![0u32; self.table.len()];
        let mut image = vec![0; self.arity];
        let mut x = vec![0; self.arity];
        loop {
            for (d, s) in image.iter_mut().zip(&x) {
                *d = perm[*s];
            }
            table[tuple_index(&image, self.size)] = perm[self.get(&x)] as u32;
            if !next_tuple(&mut x, self.size) {
                break;
            }
        }
        Operation {
            size: self.size,
            arity: self.arity,
            table,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> ElementSet {
        xs.iter().copied().collect()
    }

    /// Additive hypergroup of the two-element Krasner hyperfield.
    fn k2_plus() -> HyperOperation {
        HyperOperation::from_fn(2, 2, |t| match (t[0], t[1]) {
            (0, x) | (x, 0) => ElementSet::singleton(x),
            _ => set(&[0, 1]),
        })
        .unwrap()
    }

    fn z4_plus() -> HyperOperation {
        HyperOperation::from_fn(4, 2, |t| ElementSet::singleton((t[0] + t[1]) % 4)).unwrap()
    }

    #[test]
    fn extension_base_case_is_identity() {
        let h = k2_plus();
        assert_eq!(h.extend(1, u128::MAX).unwrap(), h);
    }

    #[test]
    fn extension_examples() {
        let z4 = z4_plus().extend(2, u128::MAX).unwrap();
        assert_eq!(z4.arity(), 3);
        assert_eq!(z4.get(&[1, 1, 1]), ElementSet::singleton(3));
        // h(h(1,1),1) = h({0,1},1) = {1} ∪ {0,1}
        let k2 = k2_plus().extend(2, u128::MAX).unwrap();
        assert_eq!(k2.get(&[1, 1, 1]), set(&[0, 1]));
    }

    #[test]
    fn extension_respects_budget() {
        let err = z4_plus().extend(3, 100).unwrap_err();
        assert!(matches!(err, Error::Capacity { .. }));
    }

    #[test]
    fn set_evaluation() {
        let h = k2_plus();
        assert_eq!(h.eval_on_sets(&[set(&[0, 1]), set(&[1])]).unwrap(), set(&[0, 1]));
        assert_eq!(h.eval_on_sets(&[set(&[1]), set(&[0])]).unwrap(), set(&[1]));
        assert!(matches!(h.eval_on_sets(&[set(&[1])]), Err(Error::Arity(_))));
    }

    #[test]
    fn fold_on_sets_matches_extended_table() {
        let h = k2_plus();
        let ext = h.extend(3, u128::MAX).unwrap();
        find_tuple::<()>(2, 4, |t| {
            let args: Vec<ElementSet> = t.iter().map(|&x| ElementSet::singleton(x)).collect();
            assert_eq!(h.fold_on_sets(&args).unwrap(), ext.get(t));
            None
        });
        assert!(h.fold_on_sets(&[set(&[0])]).is_ok());
    }

    #[test]
    fn associativity_examples() {
        assert!(z4_plus().is_associative());
        assert!(k2_plus().is_associative());
        // h(0,0)={1}, everything else {0}: h(h(0,0),1) = h(1,1) = {0}
        // but h(0,h(0,1)) = h(0,0) = {1}
        let bad = HyperOperation::from_fn(2, 2, |t| {
            if t == [0, 0] {
                set(&[1])
            } else {
                set(&[0])
            }
        })
        .unwrap();
        let v = bad.associativity_violation().unwrap();
        assert_eq!(v.tuple, vec![0, 0, 1]);
    }

    #[test]
    fn commutativity_examples() {
        assert!(z4_plus().is_commutative());
        let asym = HyperOperation::from_fn(2, 2, |t| set(&[t[0]])).unwrap();
        assert_eq!(asym.commutativity_violation().unwrap().tuple, vec![1, 0]);
    }

    #[test]
    fn neutral_and_zero() {
        assert_eq!(z4_plus().find_scalar_neutral(), Some(0));
        assert_eq!(k2_plus().find_scalar_neutral(), Some(0));
        let constant = HyperOperation::from_fn(3, 2, |_| set(&[0, 1, 2])).unwrap();
        assert_eq!(constant.find_scalar_neutral(), None);
        assert_eq!(z4_plus().find_zero(), None);
        let z4_times = Operation::from_fn(4, 2, |t| t[0] * t[1] % 4).unwrap();
        assert_eq!(z4_times.find_zero(), Some(0));
        assert_eq!(z4_times.find_scalar_neutral(), Some(1));
        let min = Operation::from_fn(2, 2, |t| t[0].min(t[1])).unwrap();
        assert_eq!(min.find_zero(), Some(0));
        assert!(min.is_commutative());
    }

    #[test]
    fn canonical_examples() {
        let r = z4_plus().canonical_report();
        assert!(r.is_canonical);
        assert_eq!(r.inverse_map, Some(vec![0, 3, 2, 1]));
        let r = k2_plus().canonical_report();
        assert!(r.is_canonical);
        assert_eq!(r.inverse_map, Some(vec![0, 1]));
        // 0 neutral, any two nonzero elements sum to everything: associative,
        // but 1 and 2 are both inverses of 1
        let two_inverses = HyperOperation::from_fn(3, 2, |t| match (t[0], t[1]) {
            (0, x) | (x, 0) => ElementSet::singleton(x),
            _ => set(&[0, 1, 2]),
        })
        .unwrap();
        let r = two_inverses.canonical_report();
        assert!(!r.is_canonical);
        assert_eq!(r.violation.unwrap().axiom, "inverse");
    }

    #[test]
    fn operation_fold_and_extension() {
        let z5 = Operation::from_fn(5, 2, |t| (t[0] * t[1]) % 5).unwrap();
        assert_eq!(z5.fold(&[2, 2, 2]).unwrap(), 3);
        let ext = z5.extend(2, u128::MAX).unwrap();
        assert_eq!(ext.get(&[2, 2, 2]), 3);
        assert!(z5.fold(&[]).is_err());
        let ternary = Operation::from_fn(2, 3, |t| t.iter().product::<usize>()).unwrap();
        assert!(ternary.fold(&[1, 1]).is_err());
        assert_eq!(ternary.fold(&[1, 1, 1, 1, 1]).unwrap(), 1);
    }

    #[test]
    fn permutation_preserves_axioms() {
        let h = k2_plus().permuted(&[1, 0]);
        assert_eq!(h.find_scalar_neutral(), Some(1));
        assert!(h.canonical_report().is_canonical);
    }
}
