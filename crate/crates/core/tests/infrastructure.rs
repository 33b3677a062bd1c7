use std::collections::BTreeMap;

use lmov_core::arith::{factorial, rat, BigRat};
use lmov_core::partition::{mn_character, partitions_of, Partition};
use lmov_core::qa_ring::{to_z_basis, z, LaurentQA, ZBasisTable};
use lmov_core::series::{plethystic_exp, plethystic_log, Series};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cycle_type(perm: &[usize]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        parts.push(len);
    }
    Partition::new(parts).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn centralizer_orders_by_enumeration() {
    for n in 1..=5usize {
        let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
        for p in permutations(n) {
            *counts.entry(cycle_type(&p)).or_default() += 1;
        }
        assert_eq!(counts.len(), partitions_of(n as u32).len());
        for (mu, c) in counts {
            assert_eq!(mu.z_factor() * BigInt::from(c), factorial(n as u64), "{mu}");
        }
    }
}

#[test]
fn standard_character_counts_fixed_points() {
    for n in 2..=5usize {
        let std_rep = Partition::new(vec![n as u32 - 1, 1]).unwrap();
        for p in permutations(n) {
            let fixed = p.iter().enumerate().filter(|(i, &x)| *i == x).count() as i64;
            let chi = mn_character(&std_rep, &cycle_type(&p)).unwrap();
            assert_eq!(chi, BigInt::from(fixed - 1));
        }
    }
}

#[test]
fn character_orthogonality() {
    for n in 1..=7u32 {
        let parts = partitions_of(n);
        for a in &parts {
            for b in &parts {
                let row: BigRat = parts
                    .iter()
                    .map(|mu| {
                        BigRat::new(
                            mn_character(a, mu).unwrap() * mn_character(b, mu).unwrap(),
                            mu.z_factor(),
                        )
                    })
                    .sum();
                assert_eq!(row, rat(i64::from(a == b)), "rows {a} {b}");
                let col: BigInt = parts
                    .iter()
                    .map(|l| mn_character(l, a).unwrap() * mn_character(l, b).unwrap())
                    .sum();
                let expect = if a == b { a.z_factor() } else { BigInt::from(0) };
                assert_eq!(col, expect, "columns {a} {b}");
            }
        }
    }
}

#[test]
fn z_basis_round_trip_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..200 {
        let mut table = ZBasisTable::new();
        let slices = rng.gen_range(1..=3);
        for _ in 0..slices {
            let v = rng.gen_range(-6i64..=6);
            for g in 0..rng.gen_range(1u32..=5) {
                let c = rng.gen_range(-50i64..=50);
                if c != 0 {
                    table.insert(g, v, rat(c));
                }
            }
        }
        let f = table.to_laurent();
        // independent rebuild from powers of z^2
        let z2 = LaurentQA::from_q(z().mul(&z()));
        let mut g = LaurentQA::zero();
        for (&(genus, v), c) in table.entries() {
            g = g.add(&z2.pow(genus).shift(0, v).scale(c));
        }
        assert_eq!(f, g, "case {case}");
        assert_eq!(to_z_basis(&f).unwrap(), table, "case {case}");
    }
}

#[test]
fn plethystic_round_trip_order_12() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let order = 12;
    let mut f = vec![LaurentQA::zero()];
    for _ in 1..=order {
        let terms: Vec<(i64, i64, BigRat)> = (0..3)
            .map(|_| (rng.gen_range(-4..=4), rng.gen_range(-2..=2), rat(rng.gen_range(-3..=3))))
            .collect();
        f.push(LaurentQA::from_terms(terms));
    }
    let big_z = plethystic_exp(&f, order).unwrap();
    let back = plethystic_log(&big_z).unwrap();
    assert_eq!(back[1..], f[1..]);
    let again: Series<LaurentQA> = plethystic_exp(&back, order).unwrap();
    assert_eq!(again, big_z);
}

fn laurent_strategy() -> impl Strategy<Value = LaurentQA> {
    prop::collection::vec((-5i64..=5, -3i64..=3, -4i64..=4), 0..6)
        .prop_map(|ts| LaurentQA::from_terms(ts.into_iter().map(|(u, v, c)| (u, v, rat(c)))))
}

proptest! {
    #[test]
    fn adams_is_a_ring_homomorphism(f in laurent_strategy(), g in laurent_strategy(), d in 1u32..5) {
        prop_assert_eq!(f.mul(&g).adams(d), f.adams(d).mul(&g.adams(d)));
        prop_assert_eq!(f.add(&g).adams(d), f.adams(d).add(&g.adams(d)));
    }

    #[test]
    fn adams_composes(f in laurent_strategy(), d in 1u32..4, e in 1u32..4) {
        prop_assert_eq!(f.adams(d).adams(e), f.adams(d * e));
    }

    #[test]
    fn exact_division_recovers_factor(f in laurent_strategy(), g in laurent_strategy()) {
        prop_assume!(!g.is_zero());
        let prod = f.mul(&g);
        prop_assert_eq!(prod.exact_div(&g).unwrap(), f);
    }
}
