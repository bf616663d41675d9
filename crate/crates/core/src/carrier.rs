use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::set::{ElementSet, MAX_CARRIER};

/// A finite set of named elements, referenced internally by dense index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Carrier {
    labels: Vec<String>,
}

impl Carrier {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Shape("carrier must have at least one element".into()));
        }
        if labels.len() > MAX_CARRIER {
            return Err(Error::capacity(
                "carrier size",
                labels.len() as u128,
                MAX_CARRIER as u128,
            ));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Shape(format!("duplicate element label `{l}`")));
            }
        }
        Ok(Carrier { labels })
    }

    /// Labels `0`, `1`, ..., `size-1`.
    pub fn numbered(size: usize) -> Result<Self> {
        Carrier::new((0..size).map(|i| i.to_string()).collect())
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full(&self) -> ElementSet {
        ElementSet::full(self.size())
    }

    pub fn set_labels(&self, set: ElementSet) -> Vec<String> {
        set.iter().map(|x| self.labels[x].clone()).collect()
    }

    pub fn tuple_labels(&self, tuple: &[usize]) -> Vec<String> {
        tuple.iter().map(|&x| self.labels[x].clone()).collect()
    }

    /// `{a, b}` rendering for text reports.
    pub fn show_set(&self, set: ElementSet) -> String {
        format!("{{{}}}", self.set_labels(set).join(", "))
    }
}

/// Advance `tuple` to the next element of `0..size` in lexicographic order.
/// Returns `false` after the last tuple (leaving it all zeros).
pub fn next_tuple(tuple: &mut [usize], size: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < size {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Visit every tuple of length `len` over `0..size` in lexicographic order,
/// stopping early when the visitor returns `Some`.
pub fn find_tuple<T>(size: usize, len: usize, mut visit: impl FnMut(&[usize]) -> Option<T>) -> Option<T> {
    let mut t = vec![0usize; len];
    loop {
        if let Some(found) = visit(&t) {
            return Some(found);
        }
        if !next_tuple(&mut t, size) {
            return None;
        }
    }
}

/// Row-major index of a tuple, first coordinate most significant.
pub fn tuple_index(tuple: &[usize], size: usize) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * size + x)
}

pub fn checked_pow(size: usize, arity: usize) -> Option<u128> {
    (size as u128).checked_pow(arity as u32)
}
