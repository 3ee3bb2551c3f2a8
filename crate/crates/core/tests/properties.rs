//! Randomized invariants over rings, characters, bases and groups.

use std::sync::Arc;

use proptest::prelude::*;

use minfaith_core::chain_ring::{ChainRing, Ramification};
use minfaith_core::char_duality::{basis_greedy, min_weight_basis_exhaustive, psi_b, rank, DualVector};
use minfaith_core::exactrep::Cyclotomic;
use minfaith_core::groups::{AbelianProduct, FiniteGroup};
use minfaith_core::mackey::{canonical_rep, dimension_for_level, stone_von_neumann_dim};
use minfaith_core::oracle::{character_table, min_faithful_exhaustive, DEFAULT_CAP};
use minfaith_core::solver::{formula_heisenberg, levels_lower_bound_audit, orbit_lower_bound};

const RINGS: &[(u64, u32, Ramification, u32)] = &[
    (2, 1, Ramification::Finite(1), 3),
    (2, 1, Ramification::Infinite, 3),
    (2, 1, Ramification::Finite(2), 3),
    (2, 2, Ramification::Finite(1), 2),
    (3, 1, Ramification::Finite(1), 2),
    (3, 1, Ramification::Finite(2), 2),
    (3, 2, Ramification::Infinite, 2),
    (5, 1, Ramification::Finite(1), 2),
    (7, 1, Ramification::Finite(1), 1),
];

fn ring_strategy() -> impl Strategy<Value = Arc<ChainRing>> {
    (0..RINGS.len()).prop_map(|i| {
        let (p, f, e, n) = RINGS[i];
        Arc::new(ChainRing::new(p, f, e, n).unwrap())
    })
}

/// A ring together with three element indices.
fn ring_and_elems() -> impl Strategy<Value = (Arc<ChainRing>, usize, usize, usize)> {
    ring_strategy().prop_flat_map(|r| {
        let s = r.size() as usize;
        (Just(r), 0..s, 0..s, 0..s)
    })
}

/// Admissible profiles: start from (f, ..., f) and shift mass toward lower
/// levels, which only lowers suffix sums.
fn profile() -> impl Strategy<Value = (Vec<u64>, u64, u64, u32, u32)> {
    (1u32..6, 1u64..4, prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]), 1u32..4)
        .prop_flat_map(|(n, f, q, k)| (Just(n), Just(f), Just(q), Just(k), 1..=n as usize))
        .prop_flat_map(|(n, f, q, k, xi)| {
            (Just(n), Just(f), Just(q), Just(k), Just(xi), prop::collection::vec((0..xi, 0..xi), 0..12))
        })
        .prop_map(|(n, f, q, k, xi, moves)| {
            let mut alpha = vec![f; xi];
            for (a, b) in moves {
                let (lo, hi) = (a.min(b), a.max(b));
                if lo < hi && alpha[hi] > 0 {
                    alpha[hi] -= 1;
                    alpha[lo] += 1;
                }
            }
            (alpha, f, q, k, n)
        })
}

fn pool() -> impl Strategy<Value = (u64, Vec<DualVector>, Vec<u64>)> {
    (prop::sample::select(vec![2u64, 3, 5]), 1usize..=4, 1usize..=12).prop_flat_map(|(p, dim, len)| {
        (
            Just(p),
            prop::collection::vec(prop::collection::vec(0..p, dim), len)
                .prop_map(|rows| rows.into_iter().map(|coords| DualVector { coords }).collect::<Vec<_>>()),
            prop::collection::vec(1u64..30, len),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms((r, a, b, c) in ring_and_elems()) {
        prop_assert_eq!(r.mul_idx(r.mul_idx(a, b), c), r.mul_idx(a, r.mul_idx(b, c)));
        prop_assert_eq!(r.mul_idx(a, r.add_idx(b, c)), r.add_idx(r.mul_idx(a, b), r.mul_idx(a, c)));
        prop_assert_eq!(r.mul_idx(a, b), r.mul_idx(b, a));
        prop_assert_eq!(r.add_idx(a, r.neg_idx(a)), r.index_of(&r.zero()));
        let (ea, eb) = (r.element(a), r.element(b));
        let v = r.valuation(&r.mul(&ea, &eb));
        prop_assert_eq!(v, (r.valuation(&ea) + r.valuation(&eb)).min(r.n()));
    }

    #[test]
    fn characters_are_homomorphisms((r, b, x, y) in ring_and_elems()) {
        let chi = psi_b(&r, r.element(b));
        let top = r.additive_exponent();
        prop_assert_eq!(chi.eval_idx(&r, r.add_idx(x, y)), (chi.eval_idx(&r, x) + chi.eval_idx(&r, y)) % top);
        prop_assert_eq!(chi.is_primitive(&r), r.is_unit(&r.element(b)));
        // (b, x) -> psi(bx) is symmetric
        prop_assert_eq!(chi.eval_idx(&r, x), psi_b(&r, r.element(x)).eval_idx(&r, b));
    }

    #[test]
    fn greedy_basis_is_optimal((p, vs, ws) in pool()) {
        let chosen = basis_greedy(p, &vs, &ws);
        prop_assert_eq!(chosen.len(), rank(p, &vs));
        let picked: Vec<DualVector> = chosen.iter().map(|&i| vs[i].clone()).collect();
        prop_assert_eq!(rank(p, &picked), chosen.len());
        let total: u64 = chosen.iter().map(|&i| ws[i]).sum();
        prop_assert_eq!(Some(total), min_weight_basis_exhaustive(p, &vs, &ws));
    }

    #[test]
    fn level_profiles_respect_lemma_4_1((alpha, f, q, k, n) in profile()) {
        prop_assert_eq!(levels_lower_bound_audit(&alpha, f, q, k, n).unwrap(), true);
    }

    #[test]
    fn canonical_rep_is_idempotent((r, a, b, c) in ring_and_elems()) {
        let bv = vec![r.element(a), r.element(b)];
        let base = r.element(c);
        let once = canonical_rep(&r, &bv, &base);
        let twice = canonical_rep(&r, &once.b_vec, &once.b);
        prop_assert_eq!(&once, &twice);
        // shifting b_vec by b * y stays in the orbit
        let y = r.element((a * 7 + 3) % r.size() as usize);
        let moved: Vec<_> = bv.iter().map(|v| r.add(v, &r.mul(&base, &y))).collect();
        prop_assert_eq!(once, canonical_rep(&r, &moved, &base));
    }

    #[test]
    fn generic_dimension_and_formula(r in ring_strategy(), k in 1usize..4) {
        let one = psi_b(&r, r.one());
        let d = stone_von_neumann_dim(&r, k, &one).unwrap();
        prop_assert_eq!(d, r.size().pow(k as u32));
        prop_assert_eq!(d, dimension_for_level(&r, k, 0));
        let m = formula_heisenberg(r.params(), k).unwrap();
        // at least one generic summand, at most one per level and residue direction
        prop_assert!(m >= d);
        prop_assert!(m <= d * (r.f() * r.xi()) as u64);
    }

    #[test]
    fn cyclotomic_roots_multiply(m in 1u32..40, a in 0u64..100, b in 0u64..100) {
        let prod = &Cyclotomic::root(m, a) * &Cyclotomic::root(m, b);
        prop_assert_eq!(prod.as_root_of_unity(), Some((a + b) % m as u64));
        let norm = &Cyclotomic::root(m, a) * &Cyclotomic::root(m, a).conj();
        prop_assert_eq!(norm.as_integer(), Some(1));
    }

    #[test]
    fn orbit_bound_counts_distinct_units(pow in 1u32..4, gen in 1u64..30, h in 1u64..8) {
        let n = 3u64.pow(pow);
        prop_assume!(gen % 3 != 0);
        let mults: Vec<u64> = (0..h).map(|i| (0..i).fold(1, |acc, _| acc * gen % n)).collect();
        let b = orbit_lower_bound(n, &mults).unwrap();
        prop_assert!(b.bound >= 1 && b.bound <= h);
        prop_assert_eq!(b.equality, b.bound == h);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// An abelian group needs exactly as many summands as its largest p-rank.
    #[test]
    fn abelian_groups_need_their_rank(orders in prop::collection::vec(prop::sample::select(vec![2u64, 3, 4, 5, 6, 8, 9]), 1..4)) {
        let g = AbelianProduct::new(orders.clone()).unwrap();
        prop_assume!(g.order() <= 128);
        let t = character_table(&g, DEFAULT_CAP).unwrap();
        let rank_at = |p: u64| orders.iter().filter(|&&o| o % p == 0).count() as u64;
        let want = [2u64, 3, 5].into_iter().map(rank_at).max().unwrap();
        prop_assert_eq!(min_faithful_exhaustive(&t).value, want);
    }
}
