//! Monomial representations induced from linear characters of subgroups.

use serde::Serialize;

use super::Cyclotomic;
use crate::error::{Error, Result};
use crate::groups::{generators_of, FiniteGroup, SubgroupHandle};

/// A linear character of a subgroup: `chi(a) = zeta_m^{exps[a]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChar {
    root_order: u32,
    /// Exponent per group element; `None` off the subgroup.
    exps: Vec<Option<u64>>,
}

impl LinearChar {
    /// Tabulates `value` on the subgroup and checks the homomorphism property.
    pub fn new(
        g: &dyn FiniteGroup,
        sub: &SubgroupHandle,
        root_order: u32,
        value: impl Fn(usize) -> u64,
    ) -> Result<Self> {
        let m = root_order as u64;
        let mut exps = vec![None; g.order()];
        for &a in sub.elements() {
            exps[a] = Some(value(a) % m);
        }
        let chi = LinearChar { root_order, exps };
        if chi.exp(g.identity()) != Some(0) {
            return Err(Error::ChiNotHomomorphism);
        }
        for s in generators_of(g, sub.elements()) {
            for &a in sub.elements() {
                let ab = chi.exp(g.mul(a, s)).ok_or(Error::NotSubgroup)?;
                if ab != (chi.exp(a).unwrap() + chi.exp(s).unwrap()) % m {
                    return Err(Error::ChiNotHomomorphism);
                }
            }
        }
        Ok(chi)
    }

    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    pub fn exp(&self, a: usize) -> Option<u64> {
        self.exps[a]
    }
}

/// A monomial matrix: column `j` has the single entry `zeta^{exps[j]}` in row `perm[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialMatrix {
    pub perm: Vec<usize>,
    pub exps: Vec<u64>,
}

impl MonomialMatrix {
    pub fn compose(&self, rhs: &MonomialMatrix, root_order: u32) -> MonomialMatrix {
        let m = root_order as u64;
        let perm = rhs.perm.iter().map(|&k| self.perm[k]).collect();
        let exps = rhs.exps.iter().zip(&rhs.perm).map(|(&e, &k)| (e + self.exps[k]) % m).collect();
        MonomialMatrix { perm, exps }
    }

    pub fn trace(&self, root_order: u32) -> Cyclotomic {
        let mut counts = vec![0i64; root_order as usize];
        for (j, (&i, &e)) in self.perm.iter().zip(&self.exps).enumerate() {
            if i == j {
                counts[e as usize] += 1;
            }
        }
        Cyclotomic::from_exponent_counts(root_order, &counts)
    }
}

/// `Ind_A^G(chi)` on the left cosets `r_j A`, with `r_j` the least index in its coset.
#[derive(Clone, Debug)]
pub struct MonomialRep {
    chi: LinearChar,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
    rep_inv: Vec<usize>,
}

pub fn induce_character(g: &dyn FiniteGroup, sub: &SubgroupHandle, chi: &LinearChar) -> Result<MonomialRep> {
    let n = g.order();
    if !n.is_multiple_of(sub.order()) {
        return Err(Error::NotSubgroup);
    }
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::with_capacity(n / sub.order());
    for r in 0..n {
        if coset_of[r] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(r);
        for &a in sub.elements() {
            let x = g.mul(r, a);
            if coset_of[x] != usize::MAX {
                return Err(Error::NotSubgroup);
            }
            coset_of[x] = id;
        }
    }
    let rep_inv = reps.iter().map(|&r| g.inv(r)).collect();
    Ok(MonomialRep { chi: chi.clone(), reps, coset_of, rep_inv })
}

impl MonomialRep {
    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    pub fn root_order(&self) -> u32 {
        self.chi.root_order
    }

    pub fn coset_reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn matrix(&self, g: &dyn FiniteGroup, x: usize) -> MonomialMatrix {
        let (perm, exps) = self
            .reps
            .iter()
            .map(|&r| {
                let y = g.mul(x, r);
                let i = self.coset_of[y];
                let a = g.mul(self.rep_inv[i], y);
                (i, self.chi.exp(a).expect("r_i^-1 x r_j lies in the subgroup"))
            })
            .unzip();
        MonomialMatrix { perm, exps }
    }

    /// Character from the matrices (trace of `matrix(x)`).
    pub fn character_at(&self, g: &dyn FiniteGroup, x: usize) -> Cyclotomic {
        self.matrix(g, x).trace(self.root_order())
    }

    /// Character from the induction formula `sum_{r : r^-1 x r in A} chi(r^-1 x r)`.
    pub fn character_formula(&self, g: &dyn FiniteGroup, x: usize) -> Cyclotomic {
        let mut counts = vec![0i64; self.root_order() as usize];
        for (&r, &ri) in self.reps.iter().zip(&self.rep_inv) {
            if let Some(e) = self.chi.exp(g.mul(g.mul(ri, x), r)) {
                counts[e as usize] += 1;
            }
        }
        Cyclotomic::from_exponent_counts(self.root_order(), &counts)
    }

    pub fn character(&self, g: &dyn FiniteGroup) -> Vec<Cyclotomic> {
        (0..g.order()).map(|x| self.character_formula(g, x)).collect()
    }

    pub fn kernel(&self, g: &dyn FiniteGroup) -> Vec<usize> {
        kernel_of(&self.character(g), g.identity())
    }

    /// JSON export of the matrices of the listed elements.
    pub fn to_json(&self, g: &dyn FiniteGroup, elements: &[usize]) -> serde_json::Value {
        let mats: Vec<serde_json::Value> = elements
            .iter()
            .map(|&x| {
                let m = self.matrix(g, x);
                serde_json::json!({ "element": x, "perm": m.perm, "exps": m.exps })
            })
            .collect();
        serde_json::json!({
            "degree": self.degree(),
            "root_order": self.root_order(),
            "coset_reps": self.reps,
            "matrices": mats,
        })
    }
}

/// `{x : chi(x) = chi(1)}` for a character listed per element.
pub fn kernel_of(character: &[Cyclotomic], identity: usize) -> Vec<usize> {
    let degree = &character[identity];
    (0..character.len()).filter(|&x| character[x] == *degree).collect()
}

/// A direct sum kept as its list of summands.
#[derive(Clone, Debug, Default)]
pub struct DirectSum {
    pub summands: Vec<MonomialRep>,
}

impl DirectSum {
    pub fn new(summands: Vec<MonomialRep>) -> Self {
        DirectSum { summands }
    }

    pub fn degree(&self) -> usize {
        self.summands.iter().map(MonomialRep::degree).sum()
    }

    /// Intersection of the summand kernels.
    pub fn kernel(&self, g: &dyn FiniteGroup) -> Vec<usize> {
        let mut inside = vec![true; g.order()];
        for s in &self.summands {
            let k = s.kernel(g);
            let mut mark = vec![false; g.order()];
            for x in k {
                mark[x] = true;
            }
            for (a, b) in inside.iter_mut().zip(mark) {
                *a &= b;
            }
        }
        (0..g.order()).filter(|&x| inside[x]).collect()
    }

    pub fn is_faithful(&self, g: &dyn FiniteGroup) -> bool {
        self.kernel(g) == [g.identity()]
    }
}

pub fn direct_sum(reps: Vec<MonomialRep>) -> DirectSum {
    DirectSum::new(reps)
}

/// `<a, b> = |G|^-1 sum_x a(x) conj(b(x))`, when it is an integer.
pub fn inner_product(a: &[Cyclotomic], b: &[Cyclotomic]) -> Option<i64> {
    let mut acc = Cyclotomic::zero(1);
    for (x, y) in a.iter().zip(b) {
        acc = &acc + &(x * &y.conj());
    }
    let total = acc.as_integer()?;
    (total % a.len() as i64 == 0).then(|| total / a.len() as i64)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::chain_ring::{ChainRing, Ramification::Finite};
    use crate::groups::{Affine, Heisenberg, Metacyclic, SubgroupLabel};

    fn trivial_sub(g: &dyn FiniteGroup) -> SubgroupHandle {
        SubgroupHandle::from_elements(SubgroupLabel::Custom, g.order(), vec![g.identity()])
    }

    fn check_homomorphism(g: &dyn FiniteGroup, rep: &MonomialRep) {
        let mats: Vec<MonomialMatrix> = (0..g.order()).map(|x| rep.matrix(g, x)).collect();
        for x in 0..g.order() {
            for y in 0..g.order() {
                assert_eq!(mats[x].compose(&mats[y], rep.root_order()), mats[g.mul(x, y)]);
            }
            assert_eq!(rep.character_at(g, x), rep.character_formula(g, x));
        }
    }

    #[test]
    fn regular_representation() {
        let g = Metacyclic::new(4, 2, 3, 0).unwrap();
        let sub = trivial_sub(&g);
        let chi = LinearChar::new(&g, &sub, 1, |_| 0).unwrap();
        let rep = induce_character(&g, &sub, &chi).unwrap();
        assert_eq!(rep.degree(), 8);
        let ch = rep.character(&g);
        assert_eq!(ch[0].as_integer(), Some(8));
        assert!(ch[1..].iter().all(Cyclotomic::is_zero));
        assert_eq!(rep.kernel(&g), vec![0]);
        check_homomorphism(&g, &rep);
        // trivial character of the whole group
        let all = SubgroupHandle::generated(SubgroupLabel::Custom, &g, &[1, 2]);
        let triv = LinearChar::new(&g, &all, 1, |_| 0).unwrap();
        let one = induce_character(&g, &all, &triv).unwrap();
        assert_eq!(one.kernel(&g).len(), 8);
    }

    #[test]
    fn heisenberg_f2_faithful_on_a() {
        let r = Arc::new(ChainRing::new(2, 1, Finite(1), 1).unwrap());
        let h = Heisenberg::new(r.clone(), 1).unwrap();
        let a = h.subgroup_a();
        let chi = LinearChar::new(&h, &a, 2, |g| r.psi_exponent_idx(h.decode(g).2)).unwrap();
        let rep = induce_character(&h, &a, &chi).unwrap();
        assert_eq!(rep.degree(), 2);
        let z = h.encode(&[0], &[0], 1);
        assert_eq!(rep.character_at(&h, z).as_integer(), Some(-2));
        check_homomorphism(&h, &rep);
        assert!(direct_sum(vec![rep.clone()]).is_faithful(&h));
        assert_eq!(inner_product(&rep.character(&h), &rep.character(&h)), Some(1));
    }

    #[test]
    fn affine_f3_is_faithful_degree_two() {
        let r = Arc::new(ChainRing::new(3, 1, Finite(1), 1).unwrap());
        let g = Affine::new(r.clone()).unwrap();
        let t = g.translations();
        let chi = LinearChar::new(&g, &t, 3, |x| r.psi_exponent_idx(g.decode(x).0)).unwrap();
        let rep = induce_character(&g, &t, &chi).unwrap();
        assert_eq!(rep.degree(), 2);
        check_homomorphism(&g, &rep);
        assert!(direct_sum(vec![rep]).is_faithful(&g));
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = Metacyclic::new(4, 2, 3, 0).unwrap();
        let c4 = g.cyclic_part();
        // a -> i is a homomorphism on <a>, a -> i^2 on a^1 only is not
        assert!(LinearChar::new(&g, &c4, 4, |x| g.decode(x).0).is_ok());
        assert_eq!(LinearChar::new(&g, &c4, 4, |x| if x == 2 { 1 } else { 0 }).unwrap_err(), Error::ChiNotHomomorphism);
        let not_sub = SubgroupHandle::from_elements(SubgroupLabel::Custom, 8, vec![0, 2]);
        assert!(LinearChar::new(&g, &not_sub, 4, |_| 0).is_err());
    }

    #[test]
    fn json_export_lists_matrices() {
        let g = Metacyclic::new(4, 2, 3, 0).unwrap();
        let c4 = g.cyclic_part();
        let chi = LinearChar::new(&g, &c4, 4, |x| g.decode(x).0).unwrap();
        let rep = induce_character(&g, &c4, &chi).unwrap();
        let v = rep.to_json(&g, &[2]);
        assert_eq!(v["degree"], 2);
        assert_eq!(v["matrices"][0]["exps"], serde_json::json!([1, 3]));
    }
}
