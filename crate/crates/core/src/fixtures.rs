//! Small named structures used throughout the tests, the acceptance suite
//! and the bundled `.hs` files.

use std::sync::Arc;

use crate::carrier::Carrier;
use crate::module::{Hypermodule, ScalarAction};
use crate::ops::{HyperOperation, Operation};
use crate::ring::KrasnerHyperring;
use crate::set::ElementSet;

fn numbered(size: usize) -> Carrier {
    Carrier::numbered(size).expect("fixture carrier")
}

/// ℤ/k as an (m,n)-ring: `h` is the m-fold sum, `k` the n-fold product.
pub fn zn_mn(size: usize, m: usize, n: usize) -> KrasnerHyperring {
    let h = HyperOperation::from_fn(size, m, |t| ElementSet::singleton(t.iter().sum::<usize>() % size)).unwrap();
    let k = Operation::from_fn(size, n, |t| t.iter().fold(1 % size, |a, &b| a * b % size)).unwrap();
    KrasnerHyperring::new(numbered(size), h, k, 0, 1 % size).unwrap()
}

/// ℤ/k as a (2,2)-ring with singleton sums.
pub fn zn(size: usize) -> KrasnerHyperring {
    zn_mn(size, 2, 2)
}

/// The two-element Krasner hyperfield: `h(1,1) = {0,1}`, `h(x,0) = {x}`, `k = min`.
pub fn k2() -> KrasnerHyperring {
    let h = HyperOperation::from_fn(2, 2, |t| match (t[0], t[1]) {
        (1, 1) => ElementSet::full(2),
        (a, b) => ElementSet::singleton(a.max(b)),
    })
    .unwrap();
    let k = Operation::from_fn(2, 2, |t| t[0].min(t[1])).unwrap();
    KrasnerHyperring::new(numbered(2), h, k, 0, 1).unwrap()
}

/// ℤ/4 with the product patched so that `k(2,3) = k(3,2) = 1`.
pub fn z4_patched_product() -> KrasnerHyperring {
    let z4 = zn(4);
    let k = Operation::from_fn(4, 2, |t| match (t[0], t[1]) {
        (2, 3) | (3, 2) => 1,
        (a, b) => a * b % 4,
    })
    .unwrap();
    KrasnerHyperring::new(z4.carrier().clone(), z4.h().clone(), k, 0, 1).unwrap()
}

/// A module over `ring` whose elements are `0..size` with singleton sums and
/// a singleton action.
pub fn classical_module(
    ring: Arc<KrasnerHyperring>,
    carrier: Carrier,
    add: impl Fn(usize, usize) -> usize,
    act: impl Fn(usize, usize) -> usize,
) -> Hypermodule {
    let size = carrier.size();
    let m = ring.m();
    let f = HyperOperation::from_fn(size, m, |t| {
        ElementSet::singleton(t[1..].iter().fold(t[0], |a, &b| add(a, b)))
    })
    .unwrap();
    let g = ScalarAction::from_fn(ring.size(), size, ring.n() - 1, |rs, x| {
        ElementSet::singleton(rs.iter().rev().fold(x, |y, &r| act(r, y)))
    })
    .unwrap();
    Hypermodule::new(ring, carrier, f, g, 0).unwrap()
}

/// ℤ/k over itself.
pub fn zn_over_self(size: usize) -> Hypermodule {
    zk_over_zn(size, size)
}

/// ℤ/k as a module over ℤ/n, for `k | n`.
pub fn zk_over_zn(k: usize, n: usize) -> Hypermodule {
    assert!(n % k == 0, "ℤ/{k} is not a ℤ/{n}-module");
    let ring = Arc::new(zn(n));
    classical_module(ring, numbered(k), |a, b| (a + b) % k, |r, x| r * x % k)
}

/// K2 over itself: `f = h`, `g = k`.
pub fn k2_over_k2() -> Hypermodule {
    let ring = k2();
    let g = ScalarAction::from_fn(2, 2, 1, |rs, x| ElementSet::singleton(rs[0].min(x))).unwrap();
    let f = ring.h().clone();
    Hypermodule::new(Arc::new(ring), numbered(2), f, g, 0).unwrap()
}

/// ℤ/2 × ℤ/2 over ℤ/2 with componentwise operations.
pub fn v4_over_z2() -> Hypermodule {
    let ring = Arc::new(zn(2));
    let carrier = Carrier::new(["00", "01", "10", "11"].map(String::from).to_vec()).unwrap();
    classical_module(ring, carrier, |a, b| a ^ b, |r, x| if r == 1 { x } else { 0 })
}

/// The one-element module over `ring`.
pub fn zero_module(ring: KrasnerHyperring) -> Hypermodule {
    let f = HyperOperation::from_fn(1, ring.m(), |_| ElementSet::singleton(0)).unwrap();
    let g = ScalarAction::from_fn(ring.size(), 1, ring.n() - 1, |_, _| ElementSet::singleton(0)).unwrap();
    Hypermodule::new(Arc::new(ring), numbered(1), f, g, 0).unwrap()
}

/// Text of the bundled fixture files.
pub mod files {
    pub const K2: &str = include_str!("../fixtures/k2.hs");
    pub const Z4: &str = include_str!("../fixtures/z4.hs");
    pub const Z6: &str = include_str!("../fixtures/z6.hs");
    pub const V4: &str = include_str!("../fixtures/v4.hs");
}
