//! Finite groups on index sets `0..order`, concrete families over chain
//! rings, and exact structure extraction.

mod families;
mod spec;
mod structure;
mod table;

pub use families::{AbelianProduct, Affine, Gl2, Heisenberg, Metacyclic, Unitriangular};
pub use spec::GroupSpec;
pub use structure::{find_isomorphism, structure_scan, Structure};
pub use table::CayleyTable;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group whose elements are the indices `0..order()`.
pub trait FiniteGroup: Send + Sync {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;

    fn name(&self) -> String;

    /// Human-readable element label.
    fn label(&self, g: usize) -> String {
        g.to_string()
    }

    fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `[a, b] = a b a^-1 b^-1`.
    fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    fn pow(&self, g: usize, mut k: u64) -> usize {
        let mut acc = self.identity();
        let mut base = g;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    fn element_order(&self, g: usize) -> u64 {
        let e = self.identity();
        let mut x = g;
        let mut k = 1;
        while x != e {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupLabel {
    A,
    L,
    Z,
    Center,
    Commutator,
    MaximalAbelian,
    Custom,
}

/// A subgroup given by its sorted element list plus a membership bitmap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupHandle {
    pub label: SubgroupLabel,
    elements: Vec<usize>,
    member: Vec<bool>,
}

impl SubgroupHandle {
    /// Wraps an element list without checking closure.
    pub fn from_elements(label: SubgroupLabel, group_order: usize, mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let mut member = vec![false; group_order];
        for &g in &elements {
            member[g] = true;
        }
        SubgroupHandle { label, elements, member }
    }

    /// Wraps an element list after verifying it is a subgroup.
    pub fn checked(label: SubgroupLabel, g: &dyn FiniteGroup, elements: Vec<usize>) -> Result<Self> {
        let h = Self::from_elements(label, g.order(), elements);
        if !h.contains(g.identity()) || h.elements.iter().any(|&x| !h.contains(g.inv(x))) {
            return Err(Error::NotSubgroup);
        }
        let gens = generators_of(g, &h.elements);
        for &x in &h.elements {
            for &s in &gens {
                if !h.contains(g.mul(x, s)) {
                    return Err(Error::NotSubgroup);
                }
            }
        }
        Ok(h)
    }

    pub fn generated(label: SubgroupLabel, g: &dyn FiniteGroup, gens: &[usize]) -> Self {
        Self::from_elements(label, g.order(), closure(g, gens))
    }

    pub fn contains(&self, g: usize) -> bool {
        self.member.get(g).copied().unwrap_or(false)
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Subgroup generated by `gens`, as an unsorted element list.
pub fn closure(g: &dyn FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut member = vec![false; g.order()];
    let e = g.identity();
    member[e] = true;
    let mut elems = vec![e];
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i];
        for &s in gens {
            let y = g.mul(x, s);
            if !member[y] {
                member[y] = true;
                elems.push(y);
            }
        }
        i += 1;
    }
    elems
}

/// Greedy generating set of the subgroup with the given elements, in index order.
pub fn generators_of(g: &dyn FiniteGroup, elements: &[usize]) -> Vec<usize> {
    let mut sorted = elements.to_vec();
    sorted.sort_unstable();
    let mut member = vec![false; g.order()];
    member[g.identity()] = true;
    let mut gens = Vec::new();
    for &x in &sorted {
        if member[x] {
            continue;
        }
        gens.push(x);
        for y in closure(g, &gens) {
            member[y] = true;
        }
    }
    gens
}

/// Smallest normal subgroup containing `seeds`, given generators of the whole group.
pub fn normal_closure(g: &dyn FiniteGroup, group_gens: &[usize], seeds: &[usize]) -> Vec<usize> {
    let mut gens: Vec<usize> = seeds.to_vec();
    loop {
        let elems = closure(g, &gens);
        let mut member = vec![false; g.order()];
        for &x in &elems {
            member[x] = true;
        }
        let extra = gens
            .iter()
            .flat_map(|&h| group_gens.iter().map(move |&s| (s, h)))
            .map(|(s, h)| g.conj(s, h))
            .find(|&c| !member[c]);
        match extra {
            Some(c) => gens.push(c),
            None => return elems,
        }
    }
}

#[cfg(test)]
mod tests;
