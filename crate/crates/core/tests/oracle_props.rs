mod common;

use std::sync::OnceLock;

use common::*;
use lmc::bound::{conjugate, BoundOptions};
use lmc::classifier::classify_synthesis;
use lmc::gf2::{BinMatrix, CnotGate};
use lmc::oracle::{apply_to_key, confusion, SizeTable, GL_ORDER, SENTINEL};
use lmc::perm::Permutation;
use rand::Rng;

fn five() -> &'static SizeTable {
    static T: OnceLock<SizeTable> = OnceLock::new();
    T.get_or_init(|| SizeTable::build(5).unwrap())
}

fn table(n: usize) -> SizeTable {
    SizeTable::build(n).unwrap()
}

#[test]
fn reachable_counts_are_group_orders() {
    for n in 1..=4 {
        assert_eq!(table(n).reachable() as u64, GL_ORDER[n]);
    }
    assert_eq!(five().reachable() as u64, GL_ORDER[5]);
}

fn check_neighbors(t: &SizeTable) {
    let n = t.n();
    let gates: Vec<CnotGate> = CnotGate::all(n).collect();
    for (key, s) in t.iter() {
        if s == SENTINEL {
            continue;
        }
        let mut has_lower = s == 0;
        for g in &gates {
            let nb = t
                .size_of_key(apply_to_key(key, n, g.control_index(), g.target_index()))
                .unwrap();
            assert!(nb + 1 >= s, "key {key}");
            assert!(nb <= s + 1, "key {key}");
            has_lower |= nb + 1 == s;
        }
        assert!(has_lower, "key {key}");
    }
}

#[test]
fn neighbor_consistency() {
    for n in 2..=4 {
        check_neighbors(&table(n));
    }
    check_neighbors(five());
}

#[test]
fn four_qubit_histogram() {
    assert_eq!(
        table(4).histogram(),
        vec![1, 12, 96, 542, 2058, 5316, 7530, 4058, 541, 6]
    );
}

#[test]
fn size_equivalence_over_the_four_qubit_census() {
    let t = table(4);
    let mut r = rng(5);
    for m in all_invertible(4) {
        let s = t.exact_size(&m).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(t.exact_size(&m.transpose()).unwrap(), s);
        assert_eq!(t.exact_size(&inv).unwrap(), s);
        assert_eq!(t.exact_size(&inv.transpose()).unwrap(), s);
        if r.gen_bool(0.01) {
            for _ in 0..10 {
                let p = random_permutation(&mut r, 4);
                assert_eq!(t.exact_size(&conjugate(&m, &p).unwrap()).unwrap(), s);
            }
        }
    }
}

#[test]
fn witnesses_replay_with_exact_length() {
    for n in 2..=4 {
        let t = table(n);
        for m in all_invertible(n) {
            let w = t.witness_synthesis(&m).unwrap();
            assert_eq!(w.replay(), m);
            assert_eq!(w.len(), t.exact_size(&m).unwrap());
        }
    }
}

#[test]
fn five_cycle_witness_census() {
    let t = five();
    let mut r = rng(9);
    for _ in 0..20 {
        let p = random_permutation(&mut r, 5);
        let c = conjugate(&cycle_matrix(5), &p).unwrap();
        let w = t.witness_synthesis(&c).unwrap();
        assert_eq!(w.len(), 12);
        assert_eq!(w.replay(), c);
        let cl = classify_synthesis(&w);
        assert_eq!((cl.links(), cl.middles(), cl.cuts()), (4, 4, 4));
    }
}

#[test]
fn maximum_size_is_attained_by_full_cycles_only() {
    let factorial = [1u64, 1, 2, 6, 24];
    for n in 3..=5 {
        let owned;
        let t = if n == 5 {
            five()
        } else {
            owned = table(n);
            &owned
        };
        let hist = t.histogram();
        assert_eq!(hist.len() - 1, 3 * (n - 1));
        assert_eq!(hist[3 * (n - 1)], factorial[n - 1]);
        for sigma in Permutation::all(n)
            .into_iter()
            .filter(|s| s.cycle_count() == 1)
        {
            assert_eq!(
                t.exact_size(&sigma.to_matrix().unwrap()).unwrap(),
                3 * (n - 1)
            );
        }
    }
}

#[test]
fn bound_is_sound_over_full_censuses() {
    for n in 1..=4 {
        let cm = confusion(&table(n), BoundOptions::default());
        assert!(cm.unsound_cells().is_empty());
        assert_eq!(cm.total(), GL_ORDER[n]);
    }
    let cm = confusion(five(), BoundOptions::default());
    assert!(cm.unsound_cells().is_empty());
    assert_eq!(cm.total(), GL_ORDER[5]);
    assert_eq!(cm.get(4, 9), 12);
}

#[test]
fn cache_round_trip_and_lookup_errors() {
    let t = table(4);
    let mut buf = Vec::new();
    t.write_cache(&mut buf).unwrap();
    let back = SizeTable::read_cache(&buf[..]).unwrap();
    assert_eq!(back.sizes(), t.sizes());
    assert!(t.exact_size(&BinMatrix::identity(3).unwrap()).is_err());
    assert_eq!(t.exact_size(&BinMatrix::identity(4).unwrap()).unwrap(), 0);
}
