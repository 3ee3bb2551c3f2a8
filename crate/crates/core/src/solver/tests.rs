use std::sync::Arc;

use super::*;
use crate::chain_ring::Ramification::{self, Finite, Infinite};
use crate::char_duality::min_weight_basis_exhaustive;
use crate::groups::{structure_scan, AbelianProduct, Metacyclic};

fn params(p: u64, f: u32, e: Ramification, n: u32) -> RingParams {
    RingParams::new(p, f, e, n)
}

fn ring(p: u64, f: u32, e: Ramification, n: u32) -> Arc<ChainRing> {
    Arc::new(ChainRing::new(p, f, e, n).unwrap())
}

#[test]
fn heisenberg_formula_examples() {
    for p in [2, 3, 5, 7] {
        assert_eq!(formula_heisenberg(params(p, 1, Finite(1), 1), 1).unwrap(), p);
    }
    assert_eq!(formula_heisenberg(params(2, 1, Infinite, 2), 1).unwrap(), 6);
    assert_eq!(formula_heisenberg(params(2, 2, Finite(1), 2), 1).unwrap(), 32);
    assert_eq!(formula_heisenberg(params(3, 1, Finite(1), 2), 1).unwrap(), 9);
    assert_eq!(formula_unitriangular(params(3, 1, Finite(1), 1), 4).unwrap(), 9);
    assert_eq!(formula_unitriangular(params(2, 1, Finite(1), 1), 4), Err(Error::Char2Unsupported));
    assert!(formula_heisenberg(params(4, 1, Finite(1), 1), 1).is_err());
}

#[test]
fn affine_formula_examples() {
    assert_eq!(formula_affine(3, 1).unwrap(), 2);
    assert_eq!(formula_affine(2, 2).unwrap(), 2);
    assert_eq!(formula_affine(3, 2).unwrap(), 6);
    assert_eq!(formula_affine(4, 1).unwrap(), 3);
    assert!(formula_affine(6, 1).is_err());
}

#[test]
fn two_step_formula_examples() {
    let d4 = Metacyclic::new(4, 2, 3, 0).unwrap();
    assert_eq!(formula_two_step(&structure_scan(&d4, 4096).unwrap()).unwrap(), 2);
    let h = Heisenberg::new(ring(2, 1, Finite(1), 2), 1).unwrap();
    assert_eq!(formula_two_step(&structure_scan(&h, 4096).unwrap()).unwrap(), 4);
    let h3 = Heisenberg::new(ring(3, 1, Finite(1), 1), 1).unwrap();
    assert_eq!(formula_two_step(&structure_scan(&h3, 4096).unwrap()).unwrap(), 3);
    let f2t = Heisenberg::new(ring(2, 1, Infinite, 2), 1).unwrap();
    assert_eq!(formula_two_step(&structure_scan(&f2t, 4096).unwrap()), Err(Error::CommutatorNotCyclic));
    let aff = Affine::new(ring(3, 1, Finite(1), 1)).unwrap();
    assert_eq!(formula_two_step(&structure_scan(&aff, 4096).unwrap()), Err(Error::NotPGroup));
    let a = AbelianProduct::new(vec![4, 2]).unwrap();
    assert_eq!(formula_two_step(&structure_scan(&a, 4096).unwrap()).unwrap(), 2);
}

#[test]
fn orbit_bounds() {
    let units9: Vec<u64> = (1..9).filter(|u| u % 3 != 0).collect();
    assert_eq!(orbit_lower_bound(9, &units9).unwrap(), OrbitBound { bound: 6, equality: true });
    assert_eq!(orbit_lower_bound(9, &[1]).unwrap(), OrbitBound { bound: 1, equality: true });
    assert_eq!(orbit_lower_bound(8, &[1, 7]).unwrap(), OrbitBound { bound: 2, equality: true });
    assert_eq!(orbit_lower_bound(8, &[1, 7, 1, 7]).unwrap(), OrbitBound { bound: 2, equality: false });
    assert!(orbit_lower_bound(8, &[2]).is_err());
}

#[test]
fn greedy_heisenberg_selections() {
    let z4 = ring(2, 1, Finite(1), 2);
    let sol = solve_heisenberg(&z4, 1).unwrap();
    assert_eq!(sol.total_dim, 4);
    assert_eq!(sol.summands.len(), 1);
    let f2t = ring(2, 1, Infinite, 2);
    let sol = solve_heisenberg(&f2t, 1).unwrap();
    let mut dims: Vec<u64> = sol.summands.iter().map(|s| s.dim).collect();
    dims.sort_unstable();
    assert_eq!(dims, vec![2, 4]);
    for (r, k) in [(ring(2, 2, Finite(1), 2), 1), (ring(3, 1, Finite(2), 3), 1), (ring(2, 1, Infinite, 3), 2)] {
        let want = formula_heisenberg(r.params(), k).unwrap();
        assert_eq!(solve_heisenberg(&r, k).unwrap().total_dim, want, "{r}");
    }
}

#[test]
fn greedy_matches_exhaustive_on_small_pools() {
    let r = ring(2, 1, Infinite, 3);
    let pool = heisenberg_pool(&r, 1);
    let vs: Vec<DualVector> = pool.iter().map(|e| e.central.clone()).collect();
    let ws: Vec<u64> = pool.iter().map(|e| e.dim).collect();
    let greedy = solve_pgroup("x", 2, 3, &pool).unwrap().total_dim;
    assert_eq!(Some(greedy), min_weight_basis_exhaustive(2, &vs, &ws));
    assert_eq!(solve_pgroup("x", 2, 3, &pool[..1]), Err(Error::PoolDoesNotSpan));
}

#[test]
fn heisenberg_constructions_are_faithful() {
    for (r, k) in [
        (ring(2, 1, Finite(1), 2), 1),
        (ring(2, 1, Infinite, 2), 1),
        (ring(3, 1, Finite(1), 1), 2),
        (ring(2, 1, Finite(2), 2), 1),
    ] {
        let h = Heisenberg::new(r.clone(), k).unwrap();
        let (sol, reps) = construct_faithful_heisenberg(&h, 4096).unwrap();
        assert_eq!(sol.total_dim, formula_heisenberg(r.params(), k).unwrap());
        assert_eq!(sol.faithful_checked, Some(true));
        assert_eq!(reps.unwrap().degree() as u64, sol.total_dim);
        match sol.certificate {
            Certificate::DualBasis { dim, rank, .. } => assert_eq!(dim, rank),
            other => panic!("unexpected {other:?}"),
        }
    }
    let f2t = Heisenberg::new(ring(2, 1, Infinite, 2), 1).unwrap();
    let (sol, _) = construct_faithful_heisenberg(&f2t, 4096).unwrap();
    let dims: Vec<u64> = sol.summands.iter().map(|s| s.dim).collect();
    assert_eq!(dims, vec![4, 2]);
}

#[test]
fn two_step_constructions() {
    let groups: Vec<(Box<dyn FiniteGroup>, u64)> = vec![
        (Box::new(Metacyclic::new(4, 2, 3, 0).unwrap()), 2),
        (Box::new(Metacyclic::new(4, 2, 3, 2).unwrap()), 2),
        (Box::new(Metacyclic::new(9, 3, 4, 0).unwrap()), 3),
        (Box::new(Metacyclic::new(8, 2, 5, 0).unwrap()), 2),
        (Box::new(Heisenberg::new(ring(2, 1, Finite(1), 2), 1).unwrap()), 4),
        (Box::new(AbelianProduct::new(vec![4, 2, 2]).unwrap()), 3),
    ];
    for (g, want) in &groups {
        let s = structure_scan(g.as_ref(), 4096).unwrap();
        let (sol, sum) = construct_faithful_two_step(g.as_ref(), &s).unwrap();
        assert_eq!(sol.total_dim, *want, "{}", g.name());
        assert_eq!(sol.faithful_checked, Some(true), "{}", g.name());
        assert_eq!(sum.degree() as u64, *want);
        assert_eq!(formula_two_step(&s).unwrap(), *want);
    }
    let f2t = Heisenberg::new(ring(2, 1, Infinite, 2), 1).unwrap();
    let s = structure_scan(&f2t, 4096).unwrap();
    assert_eq!(construct_faithful_two_step(&f2t, &s).unwrap_err(), Error::CommutatorNotCyclic);
}

#[test]
fn affine_constructions() {
    for (r, want) in [
        (ring(2, 1, Finite(1), 2), 2),
        (ring(3, 1, Finite(1), 1), 2),
        (ring(3, 1, Finite(1), 2), 6),
        (ring(2, 2, Finite(1), 1), 3),
    ] {
        let aff = Affine::new(r).unwrap();
        let (sol, _) = construct_faithful_affine(&aff, 4096).unwrap();
        assert_eq!(sol.total_dim, want);
        assert_eq!(sol.faithful_checked, Some(true));
    }
}

#[test]
fn level_audit_examples() {
    assert_eq!(levels_lower_bound_audit(&[1, 1], 1, 2, 1, 2), Ok(true));
    assert_eq!(levels_lower_bound_audit(&[2, 0], 1, 2, 1, 2), Ok(true));
    assert!(matches!(levels_lower_bound_audit(&[0, 2], 1, 2, 1, 2), Err(Error::ConstraintViolation(_))));
    assert!(matches!(levels_lower_bound_audit(&[1, 0], 1, 2, 1, 2), Err(Error::ConstraintViolation(_))));
}

#[test]
fn solution_json_round_trip() {
    let h = Heisenberg::new(ring(2, 1, Infinite, 2), 1).unwrap();
    let (sol, _) = construct_faithful_heisenberg(&h, 0).unwrap();
    assert_eq!(sol.faithful_checked, None);
    let json = serde_json::to_string(&sol).unwrap();
    let back: FaithfulSolution = serde_json::from_str(&json).unwrap();
    assert_eq!(back, sol);
    assert!(json.contains("\"kind\":\"dual_basis\""));
}
