//! Exact minimum-dimension faithful direct sums from a character table.

use serde::{Deserialize, Serialize};

use super::CharacterTable;
use crate::char_duality::DualVector;
use crate::exactrep::Cyclotomic;
use crate::groups::{FiniteGroup, Structure};

/// Per-irrep kernels as element bitsets.
#[derive(Clone, Debug)]
pub struct KernelLattice {
    pub kernels: Vec<Vec<bool>>,
}

impl KernelLattice {
    pub fn new(t: &CharacterTable) -> Self {
        let kernels = (0..t.chars.len())
            .map(|i| {
                let mut bits = vec![false; t.group_order];
                for x in t.kernel_elements(i) {
                    bits[x] = true;
                }
                bits
            })
            .collect();
        KernelLattice { kernels }
    }

    /// Closed under multiplication and conjugation by every element.
    pub fn is_normal_subgroup(&self, g: &dyn FiniteGroup, i: usize) -> bool {
        let k = &self.kernels[i];
        let elems: Vec<usize> = (0..k.len()).filter(|&x| k[x]).collect();
        elems.iter().all(|&a| elems.iter().all(|&b| k[g.mul(a, b)]))
            && (0..g.order()).all(|x| elems.iter().all(|&a| k[g.conj(x, a)]))
    }

    /// Elements lying in every kernel.
    pub fn intersection(&self, rows: &[usize]) -> Vec<usize> {
        let n = self.kernels.first().map_or(0, Vec::len);
        (0..n).filter(|&x| rows.iter().all(|&i| self.kernels[i][x])).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinFaithful {
    pub value: u64,
    /// Row indices into the character table, by increasing dimension.
    pub selection: Vec<usize>,
}

#[derive(Clone, Debug)]
struct Item {
    row: usize,
    dim: u64,
    cover: Vec<u64>,
}

fn bit(set: &[u64], i: usize) -> bool {
    set[i / 64] >> (i % 64) & 1 == 1
}

fn is_empty(set: &[u64]) -> bool {
    set.iter().all(|&w| w == 0)
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x & !y == 0)
}

/// Minimum total dimension of a set of irreducibles with trivial common
/// kernel. A normal subgroup is trivial exactly when it misses every socle
/// class, so this is a weighted set cover of the socle classes, solved by
/// branch and bound.
pub fn min_faithful_exhaustive(t: &CharacterTable) -> MinFaithful {
    let socle = &t.socle_classes;
    if socle.is_empty() {
        return MinFaithful { value: 0, selection: Vec::new() };
    }
    let words = socle.len().div_ceil(64);
    let mut items: Vec<Item> = Vec::new();
    for row in 0..t.chars.len() {
        let deg = Cyclotomic::integer(t.exponent as u32, t.dims[row] as i64);
        let mut cover = vec![0u64; words];
        for (b, &c) in socle.iter().enumerate() {
            if t.chars[row][c] != deg {
                cover[b / 64] |= 1 << (b % 64);
            }
        }
        if !is_empty(&cover) {
            items.push(Item { row, dim: t.dims[row], cover });
        }
    }
    items.sort_by_key(|it| (it.dim, it.row));
    // drop items dominated by a cheaper-or-equal earlier one
    let mut kept: Vec<Item> = Vec::new();
    for it in items {
        if !kept.iter().any(|k| k.dim <= it.dim && subset(&it.cover, &k.cover)) {
            kept.push(it);
        }
    }

    let mut all = vec![0u64; words];
    for b in 0..socle.len() {
        all[b / 64] |= 1 << (b % 64);
    }
    let mut search = Search { items: &kept, nbits: socle.len(), best: u64::MAX, best_sel: Vec::new() };
    search.greedy(&all);
    search.rec(&all, 0, &mut Vec::new());
    let mut selection: Vec<usize> = search.best_sel.iter().map(|&i| kept[i].row).collect();
    selection.sort_by_key(|&r| (t.dims[r], r));
    MinFaithful { value: search.best, selection }
}

struct Search<'a> {
    items: &'a [Item],
    nbits: usize,
    best: u64,
    best_sel: Vec<usize>,
}

impl Search<'_> {
    fn greedy(&mut self, all: &[u64]) {
        let mut left = all.to_vec();
        let mut sel = Vec::new();
        let mut cost = 0;
        while !is_empty(&left) {
            let pick = (0..self.items.len())
                .filter_map(|i| {
                    let gain: u32 = self.items[i].cover.iter().zip(&left).map(|(&c, &l)| (c & l).count_ones()).sum();
                    (gain > 0).then_some((i, gain))
                })
                .min_by(|&(a, ga), &(b, gb)| {
                    // cheapest cost per newly covered bit
                    (self.items[a].dim * gb as u64).cmp(&(self.items[b].dim * ga as u64)).then(a.cmp(&b))
                });
            let Some((i, _)) = pick else { return };
            for (l, &c) in left.iter_mut().zip(&self.items[i].cover) {
                *l &= !c;
            }
            cost += self.items[i].dim;
            sel.push(i);
        }
        self.best = cost;
        self.best_sel = sel;
    }

    fn rec(&mut self, left: &[u64], cost: u64, sel: &mut Vec<usize>) {
        if is_empty(left) {
            if cost < self.best {
                self.best = cost;
                self.best_sel = sel.clone();
            }
            return;
        }
        // admissible bound: the costliest single uncovered bit
        let mut bound = 0;
        let mut branch_bit = None;
        let mut fewest = usize::MAX;
        for b in (0..self.nbits).filter(|&b| bit(left, b)) {
            let coverers = self.items.iter().enumerate().filter(|(i, it)| !sel.contains(i) && bit(&it.cover, b));
            let (mut cheapest, mut count) = (u64::MAX, 0);
            for (_, it) in coverers {
                cheapest = cheapest.min(it.dim);
                count += 1;
            }
            if count == 0 {
                return;
            }
            bound = bound.max(cheapest);
            if count < fewest {
                fewest = count;
                branch_bit = Some(b);
            }
        }
        if cost + bound >= self.best {
            return;
        }
        let b = branch_bit.expect("nonempty");
        let candidates: Vec<usize> =
            (0..self.items.len()).filter(|&i| !sel.contains(&i) && bit(&self.items[i].cover, b)).collect();
        for i in candidates {
            let next: Vec<u64> = left.iter().zip(&self.items[i].cover).map(|(&l, &c)| l & !c).collect();
            sel.push(i);
            self.rec(&next, cost + self.items[i].dim, sel);
            sel.pop();
        }
    }
}

/// Restricted central characters of every row on the `Omega_1(Z)` basis of a
/// p-group: `chi(z_t) = chi(1) zeta_p^(a_t)` gives coordinate `a_t`.
pub fn restricted_dual_vectors(t: &CharacterTable, s: &Structure) -> Option<Vec<DualVector>> {
    let p = s.prime?;
    let e = t.exponent;
    t.chars
        .iter()
        .zip(&t.dims)
        .map(|(row, &d)| {
            let coords = s
                .omega1_basis
                .iter()
                .map(|&z| {
                    let v = &row[t.class_of[z]];
                    (0..p).find(|&a| {
                        *v == &Cyclotomic::integer(e as u32, d as i64) * &Cyclotomic::root(e as u32, a * (e / p))
                    })
                })
                .collect::<Option<Vec<u64>>>()?;
            Some(DualVector { coords })
        })
        .collect()
}
