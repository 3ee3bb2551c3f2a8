use super::{closure, generators_of, normal_closure, FiniteGroup, SubgroupHandle, SubgroupLabel};
use crate::arith::{lcm, prime_power};
use crate::error::{Error, Result};

/// Exact structural data of a finite group.
#[derive(Clone, Debug)]
pub struct Structure {
    pub order: usize,
    pub generators: Vec<usize>,
    /// `Some(p)` when the order is a positive power of the prime `p`.
    pub prime: Option<u64>,
    pub exponent: u64,
    pub center: SubgroupHandle,
    pub commutator: SubgroupHandle,
    pub omega1_center: SubgroupHandle,
    /// Greedy `F_p`-basis of `Omega_1(Z)` (empty unless a p-group).
    pub omega1_basis: Vec<usize>,
    /// Conjugacy classes, each sorted, ordered by their least element.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// Nilpotency class at most two: `[G, G] <= Z(G)`.
    pub is_two_step: bool,
    pub commutator_cyclic: bool,
    pub maximal_abelian: SubgroupHandle,
}

impl Structure {
    pub fn is_p_group(&self) -> bool {
        self.prime.is_some()
    }

    /// `d(Z(G)) = dim_{F_p} Omega_1(Z(G))`.
    pub fn center_rank(&self) -> usize {
        self.omega1_basis.len()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn index_of_center(&self) -> usize {
        self.order / self.center.order()
    }
}

/// Scans `g` for center, commutator subgroup, classes and related data.
pub fn structure_scan(g: &dyn FiniteGroup, cap: usize) -> Result<Structure> {
    let order = g.order();
    if order > cap {
        return Err(Error::CapExceeded { order, cap });
    }
    let all: Vec<usize> = (0..order).collect();
    let gens = generators_of(g, &all);

    let center: Vec<usize> = (0..order).filter(|&z| gens.iter().all(|&s| g.mul(z, s) == g.mul(s, z))).collect();
    let center = SubgroupHandle::from_elements(SubgroupLabel::Center, order, center);

    let seeds: Vec<usize> = gens
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| gens[i + 1..].iter().map(move |&b| (a, b)))
        .map(|(a, b)| g.commutator(a, b))
        .collect();
    let commutator = SubgroupHandle::from_elements(SubgroupLabel::Commutator, order, normal_closure(g, &gens, &seeds));

    let (classes, class_of) = conjugacy_classes(g, &gens);
    let exponent = (0..order).fold(1, |acc, x| lcm(acc, g.element_order(x)));
    let prime = prime_power(order as u64).map(|(p, _)| p);

    let (omega1_center, omega1_basis) = match prime {
        Some(p) => {
            let elems: Vec<usize> =
                center.elements().iter().copied().filter(|&z| g.pow(z, p) == g.identity()).collect();
            let basis = generators_of(g, &elems);
            (SubgroupHandle::from_elements(SubgroupLabel::Custom, order, elems), basis)
        }
        None => (SubgroupHandle::from_elements(SubgroupLabel::Custom, order, vec![g.identity()]), Vec::new()),
    };

    let is_two_step = commutator.elements().iter().all(|&c| center.contains(c));
    let commutator_cyclic = commutator.elements().iter().any(|&c| g.element_order(c) as usize == commutator.order());

    // Greedy pass from the center: any g left out fails to commute with an
    // element already chosen, so the result equals its own centralizer.
    let mut a_gens = generators_of(g, center.elements());
    let mut in_a = vec![false; order];
    for &z in center.elements() {
        in_a[z] = true;
    }
    for x in 0..order {
        if !in_a[x] && a_gens.iter().all(|&s| g.mul(x, s) == g.mul(s, x)) {
            a_gens.push(x);
            for y in closure(g, &a_gens) {
                in_a[y] = true;
            }
        }
    }
    let maximal_abelian = SubgroupHandle::generated(SubgroupLabel::MaximalAbelian, g, &a_gens);

    Ok(Structure {
        order,
        generators: gens,
        prime,
        exponent,
        center,
        commutator,
        omega1_center,
        omega1_basis,
        classes,
        class_of,
        is_two_step,
        commutator_cyclic,
        maximal_abelian,
    })
}

fn conjugacy_classes(g: &dyn FiniteGroup, gens: &[usize]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let order = g.order();
    let inv_gens: Vec<usize> = gens.iter().map(|&s| g.inv(s)).collect();
    let mut class_of = vec![usize::MAX; order];
    let mut classes = Vec::new();
    for x in 0..order {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[x] = id;
        let mut members = vec![x];
        let mut i = 0;
        while i < members.len() {
            let y = members[i];
            for (&s, &si) in gens.iter().zip(&inv_gens) {
                let c = g.mul(g.mul(s, y), si);
                if class_of[c] == usize::MAX {
                    class_of[c] = id;
                    members.push(c);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        classes.push(members);
    }
    (classes, class_of)
}

/// Searches for an isomorphism `g -> h` by mapping a generating set of `g`.
/// Returns the image of every element.
pub fn find_isomorphism(g: &dyn FiniteGroup, h: &dyn FiniteGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() {
        return None;
    }
    let all: Vec<usize> = (0..g.order()).collect();
    let gens = generators_of(g, &all);
    let orders: Vec<u64> = gens.iter().map(|&s| g.element_order(s)).collect();
    let candidates: Vec<Vec<usize>> =
        orders.iter().map(|&o| (0..h.order()).filter(|&y| h.element_order(y) == o).collect()).collect();
    let mut choice = vec![0usize; gens.len()];
    if candidates.iter().any(|c| c.is_empty()) {
        return None;
    }
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, cand)| cand[c]).collect();
        if let Some(map) = extend_hom(g, h, &gens, &images) {
            return Some(map);
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return None;
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn extend_hom(g: &dyn FiniteGroup, h: &dyn FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    let mut hit = vec![false; n];
    map[g.identity()] = h.identity();
    hit[h.identity()] = true;
    let mut queue = vec![g.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = h.mul(map[x], t);
            if map[y] == usize::MAX {
                if std::mem::replace(&mut hit[fy], true) {
                    return None;
                }
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
        i += 1;
    }
    (queue.len() == n).then_some(map)
}
