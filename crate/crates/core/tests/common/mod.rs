#![allow(dead_code)]

use lmc::gf2::{BinMatrix, CnotGate, Synthesis};
use lmc::perm::Permutation;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> BinMatrix {
    let mask = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    loop {
        let rows: Vec<u32> = (0..n).map(|_| rng.gen::<u32>() & mask).collect();
        if let Ok(m) = BinMatrix::from_rows(n, &rows) {
            return m;
        }
    }
}

pub fn random_gate<R: Rng>(rng: &mut R, n: usize) -> CnotGate {
    let c = rng.gen_range(0..n);
    let mut t = rng.gen_range(0..n - 1);
    if t >= c {
        t += 1;
    }
    CnotGate::from_indices(c, t).unwrap()
}

pub fn random_synthesis<R: Rng>(rng: &mut R, n: usize, len: usize) -> Synthesis {
    let gates = (0..len).map(|_| random_gate(rng, n)).collect();
    Synthesis::new(n, gates).unwrap()
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        images.swap(i, rng.gen_range(0..=i));
    }
    Permutation::from_images(images).unwrap()
}

/// Every invertible matrix of dimension `n <= 4`, in key order.
pub fn all_invertible(n: usize) -> Vec<BinMatrix> {
    assert!(n <= 4);
    (0u32..1 << (n * n))
        .map(|k| BinMatrix::decode(k, n))
        .filter(|m| m.is_invertible())
        .collect()
}

pub fn cycle_matrix(n: usize) -> BinMatrix {
    let images = (0..n).map(|i| (i + 1) % n).collect();
    Permutation::from_images(images)
        .unwrap()
        .to_matrix()
        .unwrap()
}

/// Strategy yielding invertible matrices with dimension in `lo..=hi`.
pub fn arb_invertible(lo: usize, hi: usize) -> impl Strategy<Value = BinMatrix> {
    (lo..=hi, any::<u64>()).prop_map(|(n, seed)| random_invertible(&mut rng(seed), n))
}

/// Strategy yielding an invertible matrix and a gate of the same dimension.
pub fn arb_state_and_gate(lo: usize, hi: usize) -> impl Strategy<Value = (BinMatrix, CnotGate)> {
    (lo.max(2)..=hi, any::<u64>()).prop_map(|(n, seed)| {
        let mut r = rng(seed);
        let m = random_invertible(&mut r, n);
        (m, random_gate(&mut r, n))
    })
}
