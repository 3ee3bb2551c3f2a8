//! Irreducible representations of `Hei_{2k+1}(R)` by the little-group method.
//!
//! `H = A x| L` with `A = {(x, 0, z)}` and `L = {(0, y, 0)}`. The characters of
//! `A` are `psi_{b_vec, b}(x, 0, z) = psi(b_vec . x + b z)` and `(0, y, 0)` moves
//! `(b_vec, b)` to `(b_vec + b y, b)`. For `b` of level `i` the orbit of `b_vec`
//! is the coset `b_vec + (u^i R)^k`, whose least element zeroes every
//! coordinate of each `b_j` from position `i f` on.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chain_ring::{ChainRing, RingElem};
use crate::char_duality::{psi_b, AddChar};
use crate::error::{Error, Result};
use crate::exactrep::{induce_character, LinearChar, MonomialRep};
use crate::groups::{FiniteGroup, Heisenberg, SubgroupHandle, SubgroupLabel};

/// Explicit enumeration is used while `|R|^(k+1)` stays below this bound.
pub const EXPLICIT_LIMIT: u64 = 100_000;

/// An `L`-orbit representative `(b_vec, b)` in the dual of `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitRep {
    pub b_vec: Vec<RingElem>,
    pub b: RingElem,
}

impl fmt::Display for OrbitRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.b_vec.iter().map(RingElem::to_string).collect();
        write!(f, "({};{})", parts.join(" "), self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitInfo {
    pub rep: OrbitRep,
    pub level: usize,
    pub orbit_size: u64,
    pub stabilizer_size: u64,
}

/// `theta_{s, lambda}`: orbit representative, stabilizer character label,
/// dimension, central character and level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepDescriptor {
    pub orbit_rep: OrbitRep,
    /// `lambda(0, y, 0) = psi(c . y)` on the stabilizer, `c` truncated mod `u^level`.
    pub lambda: Vec<RingElem>,
    pub dim: u64,
    pub central_char: AddChar,
    pub level: usize,
}

/// Counts per level, available without enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSummary {
    pub level: usize,
    pub dim: u64,
    /// Number of central characters `psi_b` of this level.
    pub central_chars: u64,
    pub orbits: u64,
    pub irreps: u64,
}

fn q_pow(ring: &ChainRing, e: usize) -> u64 {
    ring.q().pow(e as u32)
}

/// Dimension law `q^((n - level) k)`.
pub fn dimension_for_level(ring: &ChainRing, k: usize, level: usize) -> u64 {
    q_pow(ring, (ring.n() - level) * k)
}

/// Number of `b` of exact level `i`.
fn level_count(ring: &ChainRing, i: usize) -> u64 {
    if i == ring.n() {
        1
    } else {
        ring.ideal_size(i) - ring.ideal_size(i + 1)
    }
}

pub fn level_summary(ring: &ChainRing, k: usize) -> Vec<LevelSummary> {
    (0..=ring.n())
        .map(|i| {
            let central_chars = level_count(ring, i);
            let per_b = q_pow(ring, i * k);
            LevelSummary {
                level: i,
                dim: dimension_for_level(ring, k, i),
                central_chars,
                orbits: central_chars * per_b,
                irreps: central_chars * per_b * per_b,
            }
        })
        .collect()
}

fn explicit_ok(ring: &ChainRing, k: usize) -> Result<()> {
    let size = (ring.size() as u128).pow(k as u32 + 1);
    if size > EXPLICIT_LIMIT as u128 {
        return Err(Error::EnumerationCap(format!("|R|^(k+1) = {size} exceeds {EXPLICIT_LIMIT}")));
    }
    Ok(())
}

/// Least element of `a + u^i R`.
pub fn truncate(ring: &ChainRing, a: &RingElem, i: usize) -> RingElem {
    let mut coords = a.coords.clone();
    for c in coords.iter_mut().skip(i * ring.f()) {
        *c = 0;
    }
    RingElem { coords }
}

/// All elements of `R / u^i R` as least coset representatives.
fn residues(ring: &ChainRing, i: usize) -> Vec<RingElem> {
    let step = ring.ideal_size(i) as usize;
    (0..ring.size() as usize).step_by(step).map(|idx| ring.element(idx)).collect()
}

/// All `k`-tuples over the given list.
fn tuples(items: &[RingElem], k: usize) -> Vec<Vec<RingElem>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                items.iter().map(move |x| {
                    let mut t = t.clone();
                    t.push(x.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// Canonical `L`-orbit representatives of the dual of `A`, ordered by `b` then `b_vec`.
pub fn orbit_representatives(ring: &ChainRing, k: usize) -> Result<Vec<OrbitInfo>> {
    explicit_ok(ring, k)?;
    let mut out = Vec::new();
    for b in ring.elements() {
        let i = ring.valuation(&b);
        for b_vec in tuples(&residues(ring, i), k) {
            out.push(OrbitInfo {
                rep: OrbitRep { b_vec, b: b.clone() },
                level: i,
                orbit_size: q_pow(ring, (ring.n() - i) * k),
                stabilizer_size: q_pow(ring, i * k),
            });
        }
    }
    Ok(out)
}

/// Canonical representative of the orbit of `(b_vec, b)`.
pub fn canonical_rep(ring: &ChainRing, b_vec: &[RingElem], b: &RingElem) -> OrbitRep {
    let i = ring.valuation(b);
    OrbitRep { b_vec: b_vec.iter().map(|c| truncate(ring, c, i)).collect(), b: b.clone() }
}

pub fn irrep_catalog(ring: &ChainRing, k: usize) -> Result<Vec<IrrepDescriptor>> {
    let mut out = Vec::new();
    for info in orbit_representatives(ring, k)? {
        let i = info.level;
        for lambda in tuples(&residues(ring, i), k) {
            out.push(IrrepDescriptor {
                orbit_rep: info.rep.clone(),
                lambda,
                dim: dimension_for_level(ring, k, i),
                central_char: psi_b(ring, info.rep.b.clone()),
                level: i,
            });
        }
    }
    Ok(out)
}

/// Stabilizer in `L` of `psi_{b_vec, b}` by direct evaluation: all `y` with
/// `psi(b x . y) = 1` for every `x` in `R^k`. Returned as ring-index tuples.
pub fn stabilizer_exhaustive(ring: &ChainRing, k: usize, b: &RingElem) -> Vec<Vec<usize>> {
    let s = ring.size() as usize;
    let bi = ring.index_of(b);
    let all = (0..s.pow(k as u32)).map(|v| {
        let mut t = vec![0; k];
        let mut v = v;
        for c in t.iter_mut().rev() {
            *c = v % s;
            v /= s;
        }
        t
    });
    let xs: Vec<Vec<usize>> = all.clone().collect();
    all.filter(|y| {
        xs.iter().all(|x| {
            let dot = x.iter().zip(y).fold(0, |acc, (&u, &v)| ring.add_idx(acc, ring.mul_idx(u, v)));
            ring.psi_exponent_idx(ring.mul_idx(bi, dot)) == 0
        })
    })
    .collect()
}

/// The irreducible `theta_{s, lambda}` as `Ind_{H_s}^H(psi_s (x) lambda~)`, computed
/// with the primitive character `x -> psi(twist x)` (`twist` a unit).
pub fn mackey_rep(h: &Heisenberg, desc: &IrrepDescriptor, twist: &RingElem) -> Result<MonomialRep> {
    let ring = h.ring();
    if !ring.is_unit(twist) {
        return Err(Error::InvalidParameter("twist must be a unit".into()));
    }
    let k = h.k();
    let i = desc.level;
    let s = ring.size() as usize;
    let stab_size = ring.ideal_size(ring.n() - i) as usize;
    let mut elems = Vec::with_capacity(s.pow(k as u32) * stab_size.pow(k as u32) * s);
    for xi in 0..s.pow(k as u32) {
        let x = h.digits(xi);
        for yi in 0..stab_size.pow(k as u32) {
            let y: Vec<usize> = h_digits_base(yi, stab_size, k);
            for z in 0..s {
                elems.push(h.encode(&x, &y, z));
            }
        }
    }
    let hs = SubgroupHandle::from_elements(SubgroupLabel::Custom, h.order(), elems);
    let idx = |e: &RingElem| ring.index_of(&ring.mul(twist, e));
    let bv: Vec<usize> = desc.orbit_rep.b_vec.iter().map(idx).collect();
    let b = idx(&desc.orbit_rep.b);
    let c: Vec<usize> = desc.lambda.iter().map(idx).collect();
    let dot = |a: &[usize], v: &[usize]| a.iter().zip(v).fold(0, |acc, (&u, &w)| ring.add_idx(acc, ring.mul_idx(u, w)));
    let n_root = ring.additive_exponent() as u32;
    let chi = LinearChar::new(h, &hs, n_root, |g| {
        let (x, y, z) = h.decode(g);
        let inner =
            ring.add_idx(ring.add_idx(dot(&bv, &x), ring.mul_idx(b, ring.sub_idx(z, dot(&x, &y)))), dot(&c, &y));
        ring.psi_exponent_idx(inner)
    })?;
    induce_character(h, &hs, &chi)
}

fn h_digits_base(mut v: usize, base: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for c in out.iter_mut().rev() {
        *c = v % base;
        v /= base;
    }
    out
}

/// Dimension of the unique irreducible with generic central character `chi`,
/// namely `[H : A] = q^(nk)`.
pub fn stone_von_neumann_dim(ring: &ChainRing, k: usize, chi: &AddChar) -> Result<u64> {
    if chi.level > 0 {
        return Err(Error::NotGeneric { level: chi.level });
    }
    Ok(q_pow(ring, ring.n() * k))
}

/// `V = R^(2k)` with `<(x1, y1), (x2, y2)> = x1 y2^T - y1 x2^T`.
#[derive(Clone, Debug)]
pub struct SymplecticModule<'r> {
    ring: &'r ChainRing,
    k: usize,
}

impl<'r> SymplecticModule<'r> {
    pub fn new(ring: &'r ChainRing, k: usize) -> Self {
        SymplecticModule { ring, k }
    }

    /// Number of vectors, `|R|^(2k)`.
    pub fn size(&self) -> u128 {
        (self.ring.size() as u128).pow(2 * self.k as u32)
    }

    /// Ring-index coordinates of the vector with index `v`.
    pub fn vector(&self, v: usize) -> Vec<usize> {
        h_digits_base(v, self.ring.size() as usize, 2 * self.k)
    }

    pub fn pairing(&self, v: &[usize], w: &[usize]) -> usize {
        let r = self.ring;
        let (x1, y1) = v.split_at(self.k);
        let (x2, y2) = w.split_at(self.k);
        let dot = |a: &[usize], b: &[usize]| a.iter().zip(b).fold(0, |acc, (&u, &t)| r.add_idx(acc, r.mul_idx(u, t)));
        r.sub_idx(dot(x1, y2), dot(y1, x2))
    }

    /// `V(a) = {v : <v, V> in a}` for `a = u^j R`, by enumeration. Pairing
    /// against the standard basis suffices since `a` is an ideal.
    pub fn v_of_ideal(&self, j: usize) -> Vec<usize> {
        let r = self.ring;
        let basis: Vec<Vec<usize>> = (0..2 * self.k)
            .map(|l| {
                let mut e = vec![0; 2 * self.k];
                e[l] = r.index_of(&r.one());
                e
            })
            .collect();
        (0..self.size() as usize)
            .filter(|&v| {
                let vv = self.vector(v);
                basis.iter().all(|e| r.valuation_of_index(self.pairing(&vv, e)) >= j)
            })
            .collect()
    }
}

/// Schrödinger dimension `sqrt |V / V(a_chi)|` with `a_chi` the conductor of `chi`.
pub fn schrodinger_dim(m: &SymplecticModule<'_>, chi: &AddChar) -> Result<u64> {
    let ring = m.ring;
    if ring.p() == 2 {
        return Err(Error::Char2Unsupported);
    }
    let j = chi.conductor(ring);
    let sub = if m.size() <= 1 << 20 {
        m.v_of_ideal(j).len() as u128
    } else {
        (ring.ideal_size(j) as u128).pow(2 * m.k as u32)
    };
    let quotient = m.size() / sub;
    let root = crate::arith::isqrt(quotient as u64);
    debug_assert_eq!((root as u128) * (root as u128), quotient);
    Ok(root)
}

/// CSV rows `orbit_rep,level,dim,multiplicity`, one per orbit.
pub fn catalog_csv(ring: &ChainRing, k: usize) -> Result<String> {
    let mut out = String::from("orbit_rep,level,dim,multiplicity\n");
    for info in orbit_representatives(ring, k)? {
        out.push_str(&format!(
            "{},{},{},{}\n",
            info.rep,
            info.level,
            dimension_for_level(ring, k, info.level),
            info.stabilizer_size
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::chain_ring::Ramification::{Finite, Infinite};
    use crate::exactrep::inner_product;
    use crate::groups::structure_scan;

    fn ring(p: u64, f: u32, e: crate::chain_ring::Ramification, n: u32) -> ChainRing {
        ChainRing::new(p, f, e, n).unwrap()
    }

    #[test]
    fn hei3_f2_catalog() {
        let r = ring(2, 1, Finite(1), 1);
        let cat = irrep_catalog(&r, 1).unwrap();
        let mut dims: Vec<u64> = cat.iter().map(|d| d.dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 1, 1, 2]);
        assert_eq!(orbit_representatives(&r, 1).unwrap().len(), 3);
    }

    #[test]
    fn sum_of_squares_and_class_counts() {
        for (r, k) in [
            (ring(2, 1, Finite(1), 2), 1),
            (ring(2, 1, Infinite, 2), 1),
            (ring(3, 1, Finite(1), 1), 1),
            (ring(3, 1, Finite(1), 1), 2),
            (ring(2, 1, Finite(2), 2), 1),
        ] {
            let cat = irrep_catalog(&r, k).unwrap();
            let h = Heisenberg::new(Arc::new(r.clone()), k).unwrap();
            let sq: u64 = cat.iter().map(|d| d.dim * d.dim).sum();
            assert_eq!(sq as usize, h.order());
            let s = structure_scan(&h, 4096).unwrap();
            assert_eq!(cat.len(), s.class_count());
            let total: u64 = level_summary(&r, k).iter().map(|l| l.irreps).sum();
            assert_eq!(total as usize, cat.len());
        }
    }

    #[test]
    fn stabilizers_match_prop_4_3() {
        for r in [ring(2, 1, Finite(1), 2), ring(2, 1, Infinite, 2), ring(3, 1, Finite(1), 2)] {
            for b in r.elements() {
                let i = r.valuation(&b);
                let stab = stabilizer_exhaustive(&r, 1, &b);
                assert_eq!(stab.len() as u64, r.q().pow(i as u32));
                let ideal = r.ideal_size(r.n() - i) as usize;
                assert!(stab.iter().all(|y| y[0] < ideal));
            }
        }
    }

    #[test]
    fn explicit_reps_are_irreducible_with_catalog_dims() {
        let r = Arc::new(ring(2, 1, Finite(1), 2));
        let h = Heisenberg::new(r.clone(), 1).unwrap();
        let cat = irrep_catalog(&r, 1).unwrap();
        for d in cat.iter().step_by(3) {
            let rep = mackey_rep(&h, d, &r.one()).unwrap();
            assert_eq!(rep.degree() as u64, d.dim);
            let ch = rep.character(&h);
            assert_eq!(inner_product(&ch, &ch), Some(1));
        }
        // level-1 irreps of Hei3(Z/4): kernel meets Z in {(0,0,0), (0,0,2)}, and has order 8
        let two = r.index_of(&r.elem(vec![0, 1]).unwrap());
        let z = h.subgroup_z();
        for d in cat.iter().filter(|d| d.level == 1) {
            let ker = mackey_rep(&h, d, &r.one()).unwrap().kernel(&h);
            let central: Vec<usize> = ker.iter().copied().filter(|&g| z.contains(g)).collect();
            assert_eq!(central, vec![0, h.encode(&[0], &[0], two)]);
            assert_eq!(ker.len(), 8);
        }
    }

    #[test]
    fn svn_and_schrodinger() {
        let z4 = ring(2, 1, Finite(1), 2);
        assert_eq!(stone_von_neumann_dim(&z4, 1, &psi_b(&z4, z4.one())).unwrap(), 4);
        let two = z4.elem(vec![0, 1]).unwrap();
        assert_eq!(stone_von_neumann_dim(&z4, 1, &psi_b(&z4, two)).unwrap_err(), Error::NotGeneric { level: 1 });
        let f3 = ring(3, 1, Finite(1), 1);
        assert_eq!(stone_von_neumann_dim(&f3, 2, &psi_b(&f3, f3.one())).unwrap(), 9);

        let z9 = ring(3, 1, Finite(1), 2);
        let m1 = SymplecticModule::new(&z9, 1);
        assert_eq!(schrodinger_dim(&m1, &psi_b(&z9, z9.one())).unwrap(), 9);
        assert_eq!(schrodinger_dim(&m1, &psi_b(&z9, z9.zero())).unwrap(), 1);
        let m2 = SymplecticModule::new(&z9, 2);
        let three = z9.uniformizer();
        assert_eq!(schrodinger_dim(&m2, &psi_b(&z9, three)).unwrap(), 9);
        assert_eq!(
            schrodinger_dim(&SymplecticModule::new(&z4, 1), &psi_b(&z4, z4.one())),
            Err(Error::Char2Unsupported)
        );
    }

    #[test]
    fn symplectic_pairing_properties() {
        let r = ring(3, 1, Finite(1), 2);
        let m = SymplecticModule::new(&r, 1);
        for v in (0..m.size() as usize).step_by(7) {
            for w in (0..m.size() as usize).step_by(5) {
                let (vv, ww) = (m.vector(v), m.vector(w));
                assert_eq!(m.pairing(&vv, &ww), r.neg_idx(m.pairing(&ww, &vv)));
            }
        }
        let sizes: Vec<usize> = (0..=r.n()).map(|j| m.v_of_ideal(j).len()).collect();
        assert_eq!(sizes, vec![81, 9, 1]);
    }

    #[test]
    fn canonical_rep_is_orbit_minimum() {
        let r = ring(2, 1, Infinite, 2);
        for b in r.elements() {
            for bv in r.elements() {
                let rep = canonical_rep(&r, std::slice::from_ref(&bv), &b);
                let orbit_min = r.elements().map(|y| r.add(&bv, &r.mul(&b, &y))).min().unwrap();
                assert_eq!(rep.b_vec[0], orbit_min);
            }
        }
    }

    #[test]
    fn twisted_primitive_character_gives_same_dimensions() {
        let r = Arc::new(ring(3, 1, Finite(1), 1));
        let h = Heisenberg::new(r.clone(), 1).unwrap();
        let twist = r.elem(vec![2]).unwrap();
        for d in irrep_catalog(&r, 1).unwrap() {
            let a = mackey_rep(&h, &d, &r.one()).unwrap();
            let b = mackey_rep(&h, &d, &twist).unwrap();
            assert_eq!(a.degree(), b.degree());
            let cb = b.character(&h);
            assert_eq!(inner_product(&cb, &cb), Some(1));
            assert_eq!(a.kernel(&h).len(), b.kernel(&h).len());
        }
    }
}
