//! Seeded inputs shared by the benchmarks.

use lmc::{BinMatrix, CnotGate, Synthesis};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng() -> StdRng {
    StdRng::seed_from_u64(0x1dc)
}

pub fn random_gate<R: Rng>(rng: &mut R, n: usize) -> CnotGate {
    let c = rng.gen_range(0..n);
    let mut t = rng.gen_range(0..n - 1);
    if t >= c {
        t += 1;
    }
    CnotGate::from_indices(c, t).expect("distinct in-range qubits")
}

/// Replays `len` random gates from the identity.
pub fn random_synthesis<R: Rng>(rng: &mut R, n: usize, len: usize) -> Synthesis {
    let gates = (0..len).map(|_| random_gate(rng, n)).collect();
    Synthesis::new(n, gates).expect("n within range")
}

/// A random invertible matrix reached by a long random walk.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> BinMatrix {
    random_synthesis(rng, n, 4 * n * n).replay()
}
