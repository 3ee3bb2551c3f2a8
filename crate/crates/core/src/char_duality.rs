//! Additive characters `psi_b(x) = psi(b x)` of a chain ring and their
//! restrictions to `Omega_1(R, +)`.

use serde::{Deserialize, Serialize};

use crate::chain_ring::{ChainRing, RingElem};
use crate::exactrep::Cyclotomic;
use crate::linalg::Echelon;

/// The additive character `psi_b`, stored through its dual parameter `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AddChar {
    pub b: RingElem,
    pub level: usize,
}

impl AddChar {
    /// Exponent `k` with `psi_b(x) = zeta_N^k`, `N` the additive exponent of the ring.
    pub fn eval(&self, ring: &ChainRing, x: &RingElem) -> u64 {
        ring.psi_exponent(&ring.mul(&self.b, x))
    }

    pub fn eval_idx(&self, ring: &ChainRing, x: usize) -> u64 {
        ring.psi_exponent_idx(ring.mul_idx(ring.index_of(&self.b), x))
    }

    pub fn value(&self, ring: &ChainRing, x: &RingElem) -> Cyclotomic {
        Cyclotomic::root(ring.additive_exponent() as u32, self.eval(ring, x))
    }

    /// `psi_b` is trivial on `u^{n-i} R` exactly; the returned index is `n - level`.
    pub fn conductor(&self, ring: &ChainRing) -> usize {
        ring.n() - self.level
    }

    /// Primitive iff nontrivial on the socle `u^{n-1} R`.
    pub fn is_primitive(&self, ring: &ChainRing) -> bool {
        (0..ring.f()).any(|i| self.eval(ring, &ring.omega_ideal(i, ring.n() - 1)) != 0)
    }
}

/// The fixed primitive character of the ring (`b = 1`).
pub fn primitive_character(ring: &ChainRing) -> AddChar {
    psi_b(ring, ring.one())
}

pub fn psi_b(ring: &ChainRing, b: RingElem) -> AddChar {
    let level = ring.valuation(&b);
    AddChar { b, level }
}

/// Largest ideal contained in the kernel, found by scanning the ideal chain.
pub fn conductor_by_enumeration(ring: &ChainRing, chi: &AddChar) -> usize {
    (0..=ring.n())
        .find(|&j| (0..ring.ideal_size(j) as usize).all(|x| chi.eval_idx(ring, x) == 0))
        .expect("the zero ideal lies in every kernel")
}

/// `F_p` coordinates of a character restricted to an elementary abelian subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DualVector {
    pub coords: Vec<u64>,
}

impl DualVector {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// Restriction of `chi` to `Omega_1(R) = u^{n-xi} R`, read on the generators
/// `w_i u^{n-xi+j}` in `(i, j)` order.
pub fn restrict_to_omega1(ring: &ChainRing, chi: &AddChar) -> DualVector {
    let step = ring.additive_exponent() / ring.p();
    let coords = ring
        .omega1_generators()
        .iter()
        .map(|g| {
            let k = chi.eval(ring, g);
            debug_assert_eq!(k % step, 0, "order-p element maps to a p-th root of unity");
            k / step
        })
        .collect();
    DualVector { coords }
}

pub fn rank(p: u64, vs: &[DualVector]) -> usize {
    let Some(first) = vs.first() else { return 0 };
    let mut ech = Echelon::new(p, first.coords.len());
    vs.iter().filter(|v| ech.insert(&v.coords)).count()
}

/// Whether `vs` spans the full `dim`-dimensional dual space.
pub fn spans_dual(p: u64, dim: usize, vs: &[DualVector]) -> bool {
    dim == 0 || rank(p, vs) == dim
}

/// Minimum-weight basis of the span of `vs` (matroid greedy). Ties are broken
/// by pool index. Returns selected indices in selection order.
pub fn basis_greedy(p: u64, vs: &[DualVector], weights: &[u64]) -> Vec<usize> {
    assert_eq!(vs.len(), weights.len(), "one weight per vector");
    let Some(first) = vs.first() else { return Vec::new() };
    let mut order: Vec<usize> = (0..vs.len()).collect();
    order.sort_by_key(|&i| (weights[i], i));
    let mut ech = Echelon::new(p, first.coords.len());
    order.into_iter().filter(|&i| ech.insert(&vs[i].coords)).collect()
}

/// Minimum total weight over all bases of the span, by exhaustive subset
/// enumeration. Intended for small pools only.
pub fn min_weight_basis_exhaustive(p: u64, vs: &[DualVector], weights: &[u64]) -> Option<u64> {
    assert!(vs.len() <= 20, "exhaustive basis search limited to 20 vectors");
    let target = rank(p, vs);
    let mut best: Option<u64> = None;
    for mask in 0u32..(1 << vs.len()) {
        if mask.count_ones() as usize != target {
            continue;
        }
        let chosen: Vec<DualVector> = (0..vs.len()).filter(|i| mask >> i & 1 == 1).map(|i| vs[i].clone()).collect();
        if rank(p, &chosen) == target {
            let w = (0..vs.len()).filter(|i| mask >> i & 1 == 1).map(|i| weights[i]).sum();
            best = Some(best.map_or(w, |b: u64| b.min(w)));
        }
    }
    best
}
