use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::chain_ring::{ChainRing, Ramification::Finite, Ramification::Infinite};

fn ring(p: u64, f: u32, e: crate::chain_ring::Ramification, n: u32) -> Arc<ChainRing> {
    Arc::new(ChainRing::new(p, f, e, n).unwrap())
}

fn d4() -> Metacyclic {
    Metacyclic::new(4, 2, 3, 0).unwrap()
}

fn assert_group_axioms(g: &dyn FiniteGroup) {
    let n = g.order();
    let e = g.identity();
    for a in 0..n {
        assert_eq!(g.mul(a, e), a);
        assert_eq!(g.mul(e, a), a);
        assert_eq!(g.mul(a, g.inv(a)), e);
    }
    let t = CayleyTable::from_group(g);
    CayleyTable::new("check", t_rows(&t)).expect("axioms hold");
}

fn t_rows(t: &CayleyTable) -> Vec<Vec<u32>> {
    (0..t.order()).map(|a| (0..t.order()).map(|b| t.mul(a, b) as u32).collect()).collect()
}

#[test]
fn family_orders_and_axioms() {
    let hei = Heisenberg::new(ring(2, 1, Finite(1), 2), 1).unwrap();
    assert_eq!(hei.order(), 64);
    assert_group_axioms(&hei);
    assert_eq!(Heisenberg::new(ring(3, 1, Finite(1), 1), 2).unwrap().order(), 243);
    let u4 = Unitriangular::new(ring(3, 1, Finite(1), 1), 4).unwrap();
    assert_eq!(u4.order(), 729);
    assert_eq!(Unitriangular::new(ring(3, 1, Finite(1), 2), 4).unwrap().order(), 531441);
    let aff = Affine::new(ring(3, 1, Finite(1), 2)).unwrap();
    assert_eq!(aff.order(), 54);
    assert_group_axioms(&aff);
    assert_group_axioms(&Gl2::new(3).unwrap());
    assert_group_axioms(&Metacyclic::new(9, 6, 2, 0).unwrap());
    assert_group_axioms(&Metacyclic::new(4, 2, 3, 2).unwrap());
    assert_group_axioms(&Unitriangular::new(ring(2, 1, Finite(1), 1), 4).unwrap());
    assert_group_axioms(&AbelianProduct::new(vec![4, 2]).unwrap());
}

#[test]
fn small_isomorphisms() {
    let hei = Heisenberg::new(ring(2, 1, Finite(1), 1), 1).unwrap();
    assert!(find_isomorphism(&hei, &d4()).is_some());
    let aff4 = Affine::new(ring(2, 1, Finite(1), 2)).unwrap();
    assert!(find_isomorphism(&aff4, &d4()).is_some());
    // GL_2(F_2) is S_3
    let aff3 = Affine::new(ring(3, 1, Finite(1), 1)).unwrap();
    assert!(find_isomorphism(&aff3, &Gl2::new(2).unwrap()).is_some());
    let q8 = Metacyclic::new(4, 2, 3, 2).unwrap();
    assert!(find_isomorphism(&q8, &d4()).is_none());
}

#[test]
fn heisenberg_conjugation_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (r, k) in [
        (ring(3, 1, Finite(1), 2), 1),
        (ring(2, 1, Infinite, 2), 2),
        (ring(2, 2, Finite(1), 2), 1),
        (ring(2, 1, Finite(2), 3), 1),
    ] {
        let h = Heisenberg::new(r, k).unwrap();
        let rg = h.ring();
        let dot = |a: &[usize], b: &[usize]| a.iter().zip(b).fold(0, |acc, (&u, &v)| rg.add_idx(acc, rg.mul_idx(u, v)));
        for _ in 0..1000 {
            let g1 = rng.gen_range(0..h.order());
            let g = rng.gen_range(0..h.order());
            let (x1, y1, _) = h.decode(g1);
            let (x, y, z) = h.decode(g);
            let expect_z = rg.add_idx(rg.sub_idx(dot(&x1, &y), dot(&x, &y1)), z);
            assert_eq!(h.conj(g1, g), h.encode(&x, &y, expect_z));
            let g2 = rng.gen_range(0..h.order());
            let (x2, y2, _) = h.decode(g2);
            let c = rg.sub_idx(dot(&x1, &y2), dot(&x2, &y1));
            let zero = vec![0; k];
            assert_eq!(h.commutator(g1, g2), h.encode(&zero, &zero, c));
        }
    }
}

#[test]
fn heisenberg_semidirect_factorization() {
    for r in [ring(2, 1, Finite(1), 2), ring(3, 1, Finite(1), 1), ring(2, 1, Infinite, 2)] {
        let h = Heisenberg::new(r, 1).unwrap();
        let (a, l) = (h.subgroup_a(), h.subgroup_l());
        let mut hit = vec![0u32; h.order()];
        for &x in a.elements() {
            for &y in l.elements() {
                hit[h.mul(x, y)] += 1;
            }
        }
        assert!(hit.iter().all(|&c| c == 1));
        let s = structure_scan(&h, 4096).unwrap();
        assert_eq!(s.center.elements(), h.subgroup_z().elements());
        // A is abelian and self-centralizing
        for &x in a.elements() {
            for &y in a.elements().iter().step_by(3) {
                assert_eq!(h.mul(x, y), h.mul(y, x));
            }
        }
    }
}

#[test]
fn unitriangular_contains_heisenberg() {
    let r = ring(3, 1, Finite(1), 1);
    let u3 = Unitriangular::new(r.clone(), 3).unwrap();
    let (h3, map) = u3.embedded_heisenberg().unwrap();
    let mut image = map.clone();
    image.sort_unstable();
    assert!(image.iter().enumerate().all(|(i, &m)| i == m), "U_3 = Hei_3");
    for a in 0..h3.order() {
        for b in (0..h3.order()).step_by(5) {
            assert_eq!(u3.mul(map[a], map[b]), map[h3.mul(a, b)]);
        }
    }
    let u4 = Unitriangular::new(r, 4).unwrap();
    let (h5, map) = u4.embedded_heisenberg().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..2000 {
        let (a, b) = (rng.gen_range(0..h5.order()), rng.gen_range(0..h5.order()));
        assert_eq!(u4.mul(map[a], map[b]), map[h5.mul(a, b)]);
    }
    let s = structure_scan(&u4, 4096).unwrap();
    let z_hei: Vec<usize> = h5.subgroup_z().elements().iter().map(|&z| map[z]).collect();
    let mut z_hei = z_hei;
    z_hei.sort_unstable();
    assert_eq!(s.center.elements(), &z_hei[..]);
    assert_eq!(s.center.order(), 3);
}

#[test]
fn scan_examples() {
    let h = Heisenberg::new(ring(2, 1, Finite(1), 2), 1).unwrap();
    let s = structure_scan(&h, 4096).unwrap();
    assert_eq!(s.center.order(), 4);
    assert_eq!(s.omega1_center.order(), 2);
    assert_eq!(s.center_rank(), 1);
    assert!(s.is_two_step && s.commutator_cyclic);
    assert_eq!(s.commutator.order(), 4);
    assert_eq!(h.order() / s.maximal_abelian.order(), 4);

    let s = structure_scan(&d4(), 4096).unwrap();
    assert_eq!((s.center.order(), s.commutator.order()), (2, 2));
    assert!(s.is_two_step && s.commutator_cyclic && s.is_p_group());
    assert_eq!(s.class_count(), 5);

    let aff = Affine::new(ring(3, 1, Finite(1), 1)).unwrap();
    let s = structure_scan(&aff, 4096).unwrap();
    assert_eq!(s.center.order(), 1);
    assert!(!s.is_p_group());
    assert_eq!(s.class_count(), 3);

    let big = Unitriangular::new(ring(3, 1, Finite(1), 2), 4).unwrap();
    assert_eq!(structure_scan(&big, 4096).unwrap_err(), crate::error::Error::CapExceeded { order: 531441, cap: 4096 });
}

#[test]
fn lemma_3_12_on_two_step_groups() {
    let groups: Vec<Box<dyn FiniteGroup>> = vec![
        Box::new(d4()),
        Box::new(Metacyclic::new(4, 2, 3, 2).unwrap()),
        Box::new(Metacyclic::new(9, 3, 4, 0).unwrap()),
        Box::new(Heisenberg::new(ring(2, 1, Finite(1), 2), 1).unwrap()),
        Box::new(Heisenberg::new(ring(3, 1, Finite(1), 1), 2).unwrap()),
        Box::new(AbelianProduct::new(vec![4, 2]).unwrap()),
    ];
    for g in &groups {
        let s = structure_scan(g.as_ref(), 4096).unwrap();
        assert!(s.is_two_step && s.commutator_cyclic, "{}", g.name());
        let idx = g.order() / s.maximal_abelian.order();
        assert_eq!(idx * idx, s.index_of_center(), "{}", g.name());
    }
}

#[test]
fn classes_partition_group() {
    let g = Gl2::new(3).unwrap();
    let s = structure_scan(&g, 4096).unwrap();
    assert_eq!(s.class_count(), 8);
    assert_eq!(s.classes.iter().map(Vec::len).sum::<usize>(), 48);
    for (i, c) in s.classes.iter().enumerate() {
        assert!(c.iter().all(|&x| s.class_of[x] == i));
    }
}

#[test]
fn table_json_and_validation() {
    let t = CayleyTable::from_group(&d4());
    let back = CayleyTable::from_json(&t.to_json()).unwrap();
    assert_eq!(back, t);
    // a Latin square with identity that is not associative (order 5 loop)
    let rows =
        vec![vec![0, 1, 2, 3, 4], vec![1, 0, 3, 4, 2], vec![2, 4, 0, 1, 3], vec![3, 2, 4, 0, 1], vec![4, 3, 1, 2, 0]];
    assert!(CayleyTable::new("loop", rows).is_err());
    assert!(CayleyTable::from_json("{\"table\": [[0, 1], [1, 1]]}").is_err());
}

#[test]
fn subgroup_checks() {
    let g = d4();
    assert!(SubgroupHandle::checked(SubgroupLabel::Custom, &g, g.cyclic_part().elements().to_vec()).is_ok());
    assert_eq!(
        SubgroupHandle::checked(SubgroupLabel::Custom, &g, vec![0, 2]).unwrap_err(),
        crate::error::Error::NotSubgroup
    );
}

#[test]
fn spec_round_trip() {
    for text in [
        "heis:p=3,f=1,e=1,n=2,k=1",
        "heis:p=2,f=1,e=inf,n=2,k=1",
        "unitri:p=3,f=1,e=1,n=1,size=4",
        "aff:p=2,f=2,e=1,n=1",
        "meta:N=8,h=2,u=7,s=0",
        "abelian:4,2",
        "gl2:p=3",
    ] {
        let spec: GroupSpec = text.parse().unwrap();
        assert_eq!(spec.to_string(), text);
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<GroupSpec>(&json).unwrap(), spec);
    }
    assert_eq!("heis:p=3".parse::<GroupSpec>().unwrap().to_string(), "heis:p=3,f=1,e=1,n=1,k=1");
    assert_eq!("q8".parse::<GroupSpec>().unwrap().build().unwrap().order(), 8);
    for bad in ["heis:p=3,q=1", "nope:p=2", "heis", "heis:p=x", "unitri:p=3"] {
        assert!(bad.parse::<GroupSpec>().is_err(), "{bad}");
    }
    assert!("heis:p=4".parse::<GroupSpec>().unwrap().build().is_err());
}
