//! Quotient hypermodules and direct sums.

use crate::carrier::{find_tuple, Carrier};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::module::{Hypermodule, ScalarAction};
use crate::ops::{extension_level, HyperOperation};
use crate::report::ValidationReport;
use crate::set::{ElementSet, MAX_CARRIER};
use crate::substructures::is_subhypermodule;

#[derive(Clone, Debug)]
pub struct QuotientModule {
    /// `M/N`, one element per class, ordered by least representative.
    pub module: Hypermodule,
    pub classes: Vec<ElementSet>,
    /// Index of the class containing each element of `M`.
    pub class_of: Vec<usize>,
    /// Every `f(x_1^{i-1}, N, x_{i+1}^m)` is a single coset `f(x, N, 0^(m-2))`.
    pub multi_slot_agrees: bool,
    pub report: ValidationReport,
}

/// `M/N` with cosets `f(x, N, 0^(m-2))`.
pub fn quotient(module: &Hypermodule, n: ElementSet) -> Result<QuotientModule> {
    if !is_subhypermodule(module, n) {
        return Err(Error::Precondition(format!(
            "{} is not a subhypermodule",
            module.carrier().show_set(n)
        )));
    }
    let mc = module.carrier();
    let size = module.size();
    let mut classes: Vec<ElementSet> = Vec::new();
    let mut class_of = vec![usize::MAX; size];
    for x in 0..size {
        if class_of[x] != usize::MAX {
            continue;
        }
        let coset = module.sum_sets(&[ElementSet::singleton(x), n]);
        if let Some(y) = coset.iter().find(|&y| class_of[y] != usize::MAX) {
            return Err(Error::WellDefinedness(format!(
                "cosets of {} and {} overlap in {} without being equal",
                mc.label(x),
                mc.label(ElementSet::min(classes[class_of[y]]).expect("nonempty")),
                mc.label(y)
            )));
        }
        if !coset.contains(x) {
            return Err(Error::WellDefinedness(format!("{} is not in its own coset", mc.label(x))));
        }
        for y in coset {
            class_of[y] = classes.len();
        }
        classes.push(coset);
    }
    let classes_of = |s: ElementSet| -> ElementSet { s.iter().map(|y| class_of[y]).collect() };

    let m = module.f().arity();
    let multi_slot_agrees = find_tuple(size, m - 1, |others| {
        (0..m).find_map(|i| {
            let mut args: Vec<ElementSet> = others.iter().map(|&x| ElementSet::singleton(x)).collect();
            args.insert(i, n);
            let s = module.f().eval_sets(&args);
            (!classes.contains(&s)).then_some(())
        })
    })
    .is_none();

    let q = classes.len();
    let mut f_table: Vec<Option<ElementSet>> = vec![None; q.pow(m as u32)];
    let mut bad = None;
    find_tuple::<()>(size, m, |xs| {
        let idx = xs.iter().fold(0, |acc, &x| acc * q + class_of[x]);
        let value = classes_of(module.f().get(xs));
        match f_table[idx] {
            Some(prev) if prev != value && bad.is_none() => bad = Some(xs.to_vec()),
            Some(_) => {}
            None => f_table[idx] = Some(value),
        }
        None
    });
    if let Some(xs) = bad {
        return Err(Error::WellDefinedness(format!(
            "F depends on representatives at ({})",
            mc.tuple_labels(&xs).join(", ")
        )));
    }

    let ring = module.ring();
    let scalars = ring.n() - 1;
    let mut g_table: Vec<Option<ElementSet>> = vec![None; ring.size().pow(scalars as u32) * q];
    find_tuple::<()>(ring.size(), scalars, |rs| {
        let row = crate::carrier::tuple_index(rs, ring.size());
        for x in 0..size {
            let value = classes_of(module.g().get(rs, x));
            let slot = &mut g_table[row * q + class_of[x]];
            match *slot {
                Some(prev) if prev != value && bad.is_none() => {
                    let mut w = rs.to_vec();
                    w.push(x);
                    bad = Some(w);
                }
                Some(_) => {}
                None => *slot = Some(value),
            }
        }
        None
    });
    if let Some(w) = bad {
        return Err(Error::WellDefinedness(format!(
            "G depends on representatives at scalars {:?}, element {}",
            &w[..scalars],
            mc.label(w[scalars])
        )));
    }

    let labels: Vec<String> = classes
        .iter()
        .map(|c| format!("{}+N", mc.label(ElementSet::min(*c).expect("nonempty class"))))
        .collect();
    let carrier = Carrier::new(labels)?;
    let f = HyperOperation::from_table(q, m, f_table.into_iter().map(|v| v.expect("every class tuple has representatives")).collect())?;
    let g = ScalarAction::from_table(ring.size(), q, scalars, g_table.into_iter().map(|v| v.expect("filled")).collect())?;
    let quotient = Hypermodule::new(module.ring_arc().clone(), carrier, f, g, class_of[module.zero()])?;
    let report = quotient.validate();
    Ok(QuotientModule {
        module: quotient,
        classes,
        class_of,
        multi_slot_agrees,
        report,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DirectSumWitness {
    /// `M = f_(l)(M_1, ..., M_t)`.
    pub sum_check: bool,
    /// `M_i ∩ f_(l)(M_1, ..., 0, ..., M_t) = {0}` for every `i`.
    pub independence_check: bool,
}

impl DirectSumWitness {
    pub fn holds(&self) -> bool {
        self.sum_check && self.independence_check
    }
}

/// `f_(l)(parts)` on sets; `parts.len()` must be `l(m-1)+1`, `l >= 0`.
pub fn sum_family(module: &Hypermodule, parts: &[ElementSet]) -> Result<ElementSet> {
    module.f().fold_on_sets(parts)
}

pub fn internal_direct_sum_check(module: &Hypermodule, parts: &[ElementSet]) -> Result<DirectSumWitness> {
    let m = module.f().arity();
    match extension_level(parts.len(), m) {
        Some(l) if l >= 1 => {}
        _ => {
            return Err(Error::Arity(format!(
                "{} parts is not of the form l({m}-1)+1 with l >= 1",
                parts.len()
            )))
        }
    }
    let sum_check = sum_family(module, parts)? == module.full();
    let zero = module.zero_set();
    let mut independence_check = true;
    let mut others = parts.to_vec();
    for i in 0..parts.len() {
        others[i] = zero;
        if parts[i].intersection(sum_family(module, &others)?) != zero {
            independence_check = false;
            break;
        }
        others[i] = parts[i];
    }
    Ok(DirectSumWitness {
        sum_check,
        independence_check,
    })
}

/// Componentwise direct sum. Elements are tuples in row-major order
/// (first component most significant); also returns the image of each
/// component's canonical embedding.
pub fn external_direct_sum(modules: &[Hypermodule], limits: &Limits) -> Result<(Hypermodule, Vec<ElementSet>)> {
    let first = modules
        .first()
        .ok_or_else(|| Error::Precondition("direct sum of no modules".into()))?;
    if modules.iter().any(|m| m.ring() != first.ring()) {
        return Err(Error::Precondition("direct summands must share a ring".into()));
    }
    let bound = limits.max_product_size.min(MAX_CARRIER) as u128;
    let size = modules.iter().fold(1u128, |acc, m| acc.saturating_mul(m.size() as u128));
    if size > bound {
        return Err(Error::capacity("direct sum carrier", size, bound));
    }
    let size = size as usize;
    let sizes: Vec<usize> = modules.iter().map(|m| m.size()).collect();
    let decode = |mut i: usize| -> Vec<usize> {
        let mut parts = vec![0; sizes.len()];
        for j in (0..sizes.len()).rev() {
            parts[j] = i % sizes[j];
            i /= sizes[j];
        }
        parts
    };
    let encode = |parts: &[usize]| parts.iter().zip(&sizes).fold(0, |acc, (&p, &s)| acc * s + p);
    let product = |sets: &[ElementSet]| -> ElementSet {
        let mut out = ElementSet::EMPTY;
        let members: Vec<Vec<usize>> = sets.iter().map(|s| s.iter().collect()).collect();
        let mut idx = vec![0; sets.len()];
        loop {
            let t: Vec<usize> = idx.iter().zip(&members).map(|(&i, m)| m[i]).collect();
            out.insert(encode(&t));
            let mut j = sets.len();
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                idx[j] += 1;
                if idx[j] < members[j].len() {
                    break;
                }
                idx[j] = 0;
            }
        }
    };
    let labels = (0..size)
        .map(|i| {
            let parts = decode(i);
            let names: Vec<&str> = parts.iter().zip(modules).map(|(&p, m)| m.carrier().label(p)).collect();
            format!("({})", names.join(","))
        })
        .collect();
    let carrier = Carrier::new(labels)?;
    let m = first.f().arity();
    let f = HyperOperation::from_fn(size, m, |xs| {
        let decoded: Vec<Vec<usize>> = xs.iter().map(|&x| decode(x)).collect();
        let sets: Vec<ElementSet> = modules
            .iter()
            .enumerate()
            .map(|(j, module)| {
                let args: Vec<usize> = decoded.iter().map(|d| d[j]).collect();
                module.f().get(&args)
            })
            .collect();
        product(&sets)
    })?;
    let ring = first.ring();
    let g = ScalarAction::from_fn(ring.size(), size, ring.n() - 1, |rs, x| {
        let parts = decode(x);
        let sets: Vec<ElementSet> = modules.iter().zip(&parts).map(|(module, &p)| module.g().get(rs, p)).collect();
        product(&sets)
    })?;
    let zeros: Vec<usize> = modules.iter().map(|m| m.zero()).collect();
    let sum = Hypermodule::new(first.ring_arc().clone(), carrier, f, g, encode(&zeros))?;
    let images = (0..modules.len())
        .map(|j| {
            (0..modules[j].size())
                .map(|p| {
                    let mut t = zeros.clone();
                    t[j] = p;
                    encode(&t)
                })
                .collect()
        })
        .collect();
    Ok((sum, images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::multiplication::is_multiplication;

    fn set(xs: &[usize]) -> ElementSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn quotient_examples() {
        let z4 = fixtures::zn_over_self(4);
        let q = quotient(&z4, set(&[0, 2])).unwrap();
        assert_eq!(q.classes, vec![set(&[0, 2]), set(&[1, 3])]);
        assert!(q.report.is_valid(), "{:?}", q.report);
        assert!(q.multi_slot_agrees);
        assert_eq!(q.module.carrier().labels(), ["0+N", "1+N"]);
        assert_eq!(q.module.f().get(&[1, 1]), set(&[0]));
        assert_eq!(q.module.g().get(&[3], 1), set(&[1]));

        let trivial = quotient(&z4, set(&[0])).unwrap();
        assert_eq!(trivial.classes.len(), 4);
        let whole = quotient(&z4, z4.full()).unwrap();
        assert!(whole.module.is_zero_module());
        assert!(quotient(&z4, set(&[0, 1])).is_err());
    }

    #[test]
    fn hyper_quotient_validates() {
        let k2 = fixtures::k2_over_k2();
        for n in [set(&[0]), set(&[0, 1])] {
            let q = quotient(&k2, n).unwrap();
            assert!(q.report.is_valid());
        }
    }

    #[test]
    fn internal_sums() {
        let v4 = fixtures::v4_over_z2();
        let w = internal_direct_sum_check(&v4, &[set(&[0, 1]), set(&[0, 2])]).unwrap();
        assert!(w.sum_check && w.independence_check);
        let z4 = fixtures::zn_over_self(4);
        let w = internal_direct_sum_check(&z4, &[set(&[0, 2]), set(&[0, 2])]).unwrap();
        assert!(!w.sum_check);
        assert!(matches!(internal_direct_sum_check(&z4, &[z4.full()]), Err(Error::Arity(_))));
    }

    #[test]
    fn external_sums() {
        let l = Limits::default();
        let z2 = fixtures::zn_over_self(2);
        let (v4, images) = external_direct_sum(&[z2.clone(), z2.clone()], &l).unwrap();
        assert!(v4.validate().is_valid());
        assert_eq!(v4.f(), fixtures::v4_over_z2().f());
        assert_eq!(v4.g(), fixtures::v4_over_z2().g());
        assert!(internal_direct_sum_check(&v4, &images).unwrap().holds());

        let (copy, _) = external_direct_sum(&[z2.clone()], &l).unwrap();
        assert_eq!(copy.f(), z2.f());

        let parts = [fixtures::zk_over_zn(2, 6), fixtures::zk_over_zn(3, 6)];
        let (sum, images) = external_direct_sum(&parts, &l).unwrap();
        assert!(sum.validate().is_valid());
        assert!(internal_direct_sum_check(&sum, &images).unwrap().holds());
        assert!(is_multiplication(&sum, &l).unwrap().verdict);
    }

    #[test]
    fn zero_summand_pads_labels() {
        let l = Limits::default();
        let z3 = fixtures::zn_over_self(3);
        let zero = fixtures::zero_module(fixtures::zn(3));
        let (sum, _) = external_direct_sum(&[zero, z3.clone()], &l).unwrap();
        assert_eq!(sum.carrier().labels(), ["(0,0)", "(0,1)", "(0,2)"]);
        assert_eq!(sum.f(), z3.f());
    }
}
