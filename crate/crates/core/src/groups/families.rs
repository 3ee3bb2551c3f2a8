use std::sync::Arc;

use super::{FiniteGroup, SubgroupHandle, SubgroupLabel};
use crate::arith::{gcd, is_prime, mod_inv, mod_pow};
use crate::chain_ring::ChainRing;
use crate::error::{Error, Result};

/// Largest group order the index-based families accept.
const MAX_ORDER: u128 = 1 << 40;

fn checked_order(base: u64, exp: usize) -> Result<usize> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc *= base as u128;
        if acc > MAX_ORDER {
            return Err(Error::TooLarge(format!("{base}^{exp} elements")));
        }
    }
    Ok(acc as usize)
}

/// `Hei_{2k+1}(R)`: triples `(x, y, z)` with `x, y` in `R^k`, `z` in `R` and
/// `(x1, y1, z1)(x2, y2, z2) = (x1 + x2, y1 + y2, z1 + z2 + x1 y2^T)`.
///
/// Elements are indexed lexicographically on `(x, y, z)`, each ring entry
/// contributing its own enumeration index as one mixed-radix digit.
#[derive(Clone, Debug)]
pub struct Heisenberg {
    ring: Arc<ChainRing>,
    k: usize,
    s: usize,
    order: usize,
}

impl Heisenberg {
    pub fn new(ring: Arc<ChainRing>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be positive".into()));
        }
        let s = ring.size() as usize;
        let order = checked_order(ring.size(), 2 * k + 1)?;
        Ok(Heisenberg { ring, k, s, order })
    }

    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn ring_arc(&self) -> Arc<ChainRing> {
        self.ring.clone()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn encode(&self, x: &[usize], y: &[usize], z: usize) -> usize {
        let acc = x.iter().chain(y).fold(0usize, |acc, &c| acc * self.s + c);
        acc * self.s + z
    }

    pub fn decode(&self, mut g: usize) -> (Vec<usize>, Vec<usize>, usize) {
        let z = g % self.s;
        g /= self.s;
        let mut xy = vec![0usize; 2 * self.k];
        for c in xy.iter_mut().rev() {
            *c = g % self.s;
            g /= self.s;
        }
        let y = xy.split_off(self.k);
        (xy, y, z)
    }

    fn dot(&self, a: &[usize], b: &[usize]) -> usize {
        a.iter().zip(b).fold(0, |acc, (&u, &v)| self.ring.add_idx(acc, self.ring.mul_idx(u, v)))
    }

    /// `A = {(x, 0, z)}`.
    pub fn subgroup_a(&self) -> SubgroupHandle {
        let zero = vec![0; self.k];
        let elems = (0..self.s.pow(self.k as u32))
            .flat_map(|xi| {
                let x = self.digits(xi);
                let zero = zero.clone();
                (0..self.s).map(move |z| (x.clone(), zero.clone(), z))
            })
            .map(|(x, y, z)| self.encode(&x, &y, z))
            .collect();
        SubgroupHandle::from_elements(SubgroupLabel::A, self.order, elems)
    }

    /// `L = {(0, y, 0)}`.
    pub fn subgroup_l(&self) -> SubgroupHandle {
        let zero = vec![0; self.k];
        let elems = (0..self.s.pow(self.k as u32)).map(|yi| self.encode(&zero, &self.digits(yi), 0)).collect();
        SubgroupHandle::from_elements(SubgroupLabel::L, self.order, elems)
    }

    /// The center `Z = {(0, 0, z)}`.
    pub fn subgroup_z(&self) -> SubgroupHandle {
        SubgroupHandle::from_elements(SubgroupLabel::Z, self.order, (0..self.s).collect())
    }

    /// Base-`|R|` digits of `v`, length `k`, most significant first.
    pub fn digits(&self, mut v: usize) -> Vec<usize> {
        let mut out = vec![0; self.k];
        for c in out.iter_mut().rev() {
            *c = v % self.s;
            v /= self.s;
        }
        out
    }
}

impl FiniteGroup for Heisenberg {
    fn order(&self) -> usize {
        self.order
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let (x1, y1, z1) = self.decode(a);
        let (x2, y2, z2) = self.decode(b);
        let r = &self.ring;
        let x: Vec<usize> = x1.iter().zip(&x2).map(|(&u, &v)| r.add_idx(u, v)).collect();
        let y: Vec<usize> = y1.iter().zip(&y2).map(|(&u, &v)| r.add_idx(u, v)).collect();
        let z = r.add_idx(r.add_idx(z1, z2), self.dot(&x1, &y2));
        self.encode(&x, &y, z)
    }
    fn inv(&self, a: usize) -> usize {
        // (x, y, z)^-1 = (-x, -y, x y^T - z)
        let (x, y, z) = self.decode(a);
        let r = &self.ring;
        let z = r.sub_idx(self.dot(&x, &y), z);
        let x: Vec<usize> = x.iter().map(|&c| r.neg_idx(c)).collect();
        let y: Vec<usize> = y.iter().map(|&c| r.neg_idx(c)).collect();
        self.encode(&x, &y, z)
    }
    fn name(&self) -> String {
        format!("Hei_{}({})", 2 * self.k + 1, self.ring)
    }
    fn label(&self, g: usize) -> String {
        let (x, y, z) = self.decode(g);
        let show = |v: &[usize]| v.iter().map(|&c| self.ring.element(c).to_string()).collect::<Vec<_>>().join(" ");
        format!("({};{};{})", show(&x), show(&y), self.ring.element(z))
    }
}

/// Upper unitriangular `size x size` matrices over `R`, indexed
/// lexicographically on the above-diagonal entries in row-major order.
#[derive(Clone, Debug)]
pub struct Unitriangular {
    ring: Arc<ChainRing>,
    size: usize,
    s: usize,
    order: usize,
    /// `pos[i * size + j]` for `i < j`.
    pos: Vec<usize>,
    cells: usize,
}

impl Unitriangular {
    pub fn new(ring: Arc<ChainRing>, size: usize) -> Result<Self> {
        if size < 2 {
            return Err(Error::InvalidParameter("matrix size must be at least 2".into()));
        }
        let cells = size * (size - 1) / 2;
        let order = checked_order(ring.size(), cells)?;
        let mut pos = vec![usize::MAX; size * size];
        let mut c = 0;
        for i in 0..size {
            for j in i + 1..size {
                pos[i * size + j] = c;
                c += 1;
            }
        }
        let s = ring.size() as usize;
        Ok(Unitriangular { ring, size, s, order, pos, cells })
    }

    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn encode(&self, entries: &[usize]) -> usize {
        entries.iter().fold(0, |acc, &c| acc * self.s + c)
    }

    pub fn decode(&self, mut g: usize) -> Vec<usize> {
        let mut out = vec![0; self.cells];
        for c in out.iter_mut().rev() {
            *c = g % self.s;
            g /= self.s;
        }
        out
    }

    fn at(&self, m: &[usize], i: usize, j: usize) -> usize {
        m[self.pos[i * self.size + j]]
    }

    /// The embedded `Hei_{2k+1}(R)` (first row and last column, `k = size - 2`)
    /// and the index of each of its elements inside this group.
    pub fn embedded_heisenberg(&self) -> Result<(Heisenberg, Vec<usize>)> {
        let k = self.size - 2;
        let hei = Heisenberg::new(self.ring.clone(), k)?;
        let last = self.size - 1;
        let map = (0..hei.order())
            .map(|g| {
                let (x, y, z) = hei.decode(g);
                let mut m = vec![0; self.cells];
                for c in 0..k {
                    m[self.pos[c + 1]] = x[c];
                    m[self.pos[(c + 1) * self.size + last]] = y[c];
                }
                m[self.pos[last]] = z;
                self.encode(&m)
            })
            .collect();
        Ok((hei, map))
    }
}

impl FiniteGroup for Unitriangular {
    fn order(&self) -> usize {
        self.order
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let (ma, mb) = (self.decode(a), self.decode(b));
        let r = &self.ring;
        let mut out = vec![0; self.cells];
        for i in 0..self.size {
            for j in i + 1..self.size {
                let mut acc = r.add_idx(self.at(&ma, i, j), self.at(&mb, i, j));
                for l in i + 1..j {
                    acc = r.add_idx(acc, r.mul_idx(self.at(&ma, i, l), self.at(&mb, l, j)));
                }
                out[self.pos[i * self.size + j]] = acc;
            }
        }
        self.encode(&out)
    }
    fn inv(&self, a: usize) -> usize {
        // Y = X^-1 solves Y_ij = -X_ij - sum_{i<l<j} X_il Y_lj, by increasing j - i
        let m = self.decode(a);
        let r = &self.ring;
        let mut y = vec![0; self.cells];
        for span in 1..self.size {
            for i in 0..self.size - span {
                let j = i + span;
                let mut acc = r.neg_idx(self.at(&m, i, j));
                for l in i + 1..j {
                    acc = r.sub_idx(acc, r.mul_idx(self.at(&m, i, l), self.at(&y, l, j)));
                }
                y[self.pos[i * self.size + j]] = acc;
            }
        }
        self.encode(&y)
    }
    fn name(&self) -> String {
        format!("U_{}({})", self.size, self.ring)
    }
    fn label(&self, g: usize) -> String {
        let m = self.decode(g);
        let parts: Vec<String> = m.iter().map(|&c| self.ring.element(c).to_string()).collect();
        format!("[{}]", parts.join(" "))
    }
}

/// `Aff(R) = R x| R^*`, pairs `(a, u)` with `(a1, u1)(a2, u2) = (a1 + u1 a2, u1 u2)`,
/// indexed by `a * |R^*| + (position of u among the units)`.
#[derive(Clone, Debug)]
pub struct Affine {
    ring: Arc<ChainRing>,
    units: Vec<usize>,
    unit_pos: Vec<usize>,
    unit_inv: Vec<usize>,
    order: usize,
}

impl Affine {
    pub fn new(ring: Arc<ChainRing>) -> Result<Self> {
        let s = ring.size() as usize;
        if s > 1 << 16 {
            return Err(Error::TooLarge(format!("Aff over a ring of size {s}")));
        }
        let units: Vec<usize> = (0..s).filter(|&i| ring.valuation_of_index(i) == 0).collect();
        let mut unit_pos = vec![usize::MAX; s];
        for (k, &u) in units.iter().enumerate() {
            unit_pos[u] = k;
        }
        let one = ring.index_of(&ring.one());
        let unit_inv = units
            .iter()
            .map(|&u| {
                let v = units.iter().copied().find(|&v| ring.mul_idx(u, v) == one);
                unit_pos[v.expect("units are invertible")]
            })
            .collect();
        let order = s * units.len();
        Ok(Affine { ring, units, unit_pos, unit_inv, order })
    }

    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn unit_count(&self) -> usize {
        self.units.len()
    }

    /// Index of `(a, u)` from ring indices.
    pub fn encode(&self, a: usize, u: usize) -> usize {
        a * self.units.len() + self.unit_pos[u]
    }

    /// Ring indices `(a, u)`.
    pub fn decode(&self, g: usize) -> (usize, usize) {
        let nu = self.units.len();
        (g / nu, self.units[g % nu])
    }

    /// The translation subgroup `{(a, 1)}`.
    pub fn translations(&self) -> SubgroupHandle {
        let one = self.ring.index_of(&self.ring.one());
        let elems = (0..self.ring.size() as usize).map(|a| self.encode(a, one)).collect();
        SubgroupHandle::from_elements(SubgroupLabel::Custom, self.order, elems)
    }
}

impl FiniteGroup for Affine {
    fn order(&self) -> usize {
        self.order
    }
    fn identity(&self) -> usize {
        self.encode(0, self.ring.index_of(&self.ring.one()))
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let (a1, u1) = self.decode(a);
        let (a2, u2) = self.decode(b);
        let r = &self.ring;
        self.encode(r.add_idx(a1, r.mul_idx(u1, a2)), r.mul_idx(u1, u2))
    }
    fn inv(&self, a: usize) -> usize {
        // (a, u)^-1 = (-u^-1 a, u^-1)
        let (t, u) = self.decode(a);
        let ui = self.units[self.unit_inv[self.unit_pos[u]]];
        let r = &self.ring;
        self.encode(r.neg_idx(r.mul_idx(ui, t)), ui)
    }
    fn name(&self) -> String {
        format!("Aff({})", self.ring)
    }
    fn label(&self, g: usize) -> String {
        let (a, u) = self.decode(g);
        format!("({}, {})", self.ring.element(a), self.ring.element(u))
    }
}

/// `<a, b | a^N, b^h = a^s, b a b^-1 = a^u>`, elements `a^i b^j` indexed by `i * h + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metacyclic {
    n: u64,
    h: u64,
    u: u64,
    s: u64,
    /// `u^j mod N` for `j < h`.
    upow: Vec<u64>,
}

impl Metacyclic {
    pub fn new(n: u64, h: u64, u: u64, s: u64) -> Result<Self> {
        if n == 0 || h == 0 {
            return Err(Error::InvalidParameter("N and h must be positive".into()));
        }
        let (u, s) = (u % n, s % n);
        let bad = |msg: &str| Err(Error::InvalidParameter(format!("metacyclic(N={n}, h={h}, u={u}, s={s}): {msg}")));
        if gcd(u, n) != 1 {
            return bad("u must be a unit mod N");
        }
        if mod_pow(u, h, n) != 1 % n {
            return bad("u^h must be 1 mod N");
        }
        if (u * s) % n != s {
            return bad("b^h = a^s must commute with b");
        }
        if n.checked_mul(h).is_none_or(|o| o as u128 > MAX_ORDER) {
            return Err(Error::TooLarge("metacyclic order".into()));
        }
        let upow = (0..h).map(|j| mod_pow(u, j, n)).collect();
        Ok(Metacyclic { n, h, u, s, upow })
    }

    pub fn params(&self) -> (u64, u64, u64, u64) {
        (self.n, self.h, self.u, self.s)
    }

    /// Index of `a^i b^j`.
    pub fn encode(&self, i: u64, j: u64) -> usize {
        ((i % self.n) * self.h + j % self.h) as usize
    }

    pub fn decode(&self, g: usize) -> (u64, u64) {
        (g as u64 / self.h, g as u64 % self.h)
    }

    /// The cyclic normal subgroup `<a>`.
    pub fn cyclic_part(&self) -> SubgroupHandle {
        let elems = (0..self.n).map(|i| self.encode(i, 0)).collect();
        SubgroupHandle::from_elements(SubgroupLabel::Custom, self.order(), elems)
    }
}

impl FiniteGroup for Metacyclic {
    fn order(&self) -> usize {
        (self.n * self.h) as usize
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let (i, j) = self.decode(a);
        let (k, l) = self.decode(b);
        let mut e = (i + self.upow[j as usize] * k) % self.n;
        let mut jl = j + l;
        if jl >= self.h {
            jl -= self.h;
            e = (e + self.s) % self.n;
        }
        self.encode(e, jl)
    }
    fn inv(&self, a: usize) -> usize {
        let ord = self.element_order(a);
        self.pow(a, ord - 1)
    }
    fn name(&self) -> String {
        format!("Meta(N={}, h={}, u={}, s={})", self.n, self.h, self.u, self.s)
    }
    fn label(&self, g: usize) -> String {
        let (i, j) = self.decode(g);
        format!("a^{i} b^{j}")
    }
}

/// `Z/n_1 x ... x Z/n_r`, indexed in mixed radix with the first factor most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianProduct {
    orders: Vec<u64>,
    order: usize,
}

impl AbelianProduct {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidParameter("cyclic factor orders must be positive".into()));
        }
        let order = orders
            .iter()
            .try_fold(1u128, |acc, &o| Some(acc * o as u128).filter(|&v| v <= MAX_ORDER))
            .ok_or_else(|| Error::TooLarge("abelian product order".into()))?;
        Ok(AbelianProduct { orders, order: order as usize })
    }

    pub fn factors(&self) -> &[u64] {
        &self.orders
    }

    fn digits(&self, mut g: usize) -> Vec<u64> {
        let mut out = vec![0; self.orders.len()];
        for (c, &o) in out.iter_mut().zip(&self.orders).rev() {
            *c = g as u64 % o;
            g /= o as usize;
        }
        out
    }

    fn undigits(&self, d: &[u64]) -> usize {
        d.iter().zip(&self.orders).fold(0usize, |acc, (&c, &o)| acc * o as usize + c as usize)
    }
}

impl FiniteGroup for AbelianProduct {
    fn order(&self) -> usize {
        self.order
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = da.iter().zip(&db).zip(&self.orders).map(|((x, y), o)| (x + y) % o).collect();
        self.undigits(&sum)
    }
    fn inv(&self, a: usize) -> usize {
        let d: Vec<u64> = self.digits(a).iter().zip(&self.orders).map(|(x, o)| (o - x) % o).collect();
        self.undigits(&d)
    }
    fn name(&self) -> String {
        let parts: Vec<String> = self.orders.iter().map(|o| format!("Z/{o}")).collect();
        parts.join(" x ")
    }
    fn label(&self, g: usize) -> String {
        format!("{:?}", self.digits(g))
    }
}

/// `GL_2(F_p)`, matrices `[[a, b], [c, d]]` in lexicographic order of `(a, b, c, d)`.
#[derive(Clone, Debug)]
pub struct Gl2 {
    p: u64,
    elems: Vec<[u64; 4]>,
    index: Vec<usize>,
}

impl Gl2 {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if p > 13 {
            return Err(Error::TooLarge(format!("GL_2(F_{p})")));
        }
        let mut elems = Vec::new();
        let mut index = vec![usize::MAX; p.pow(4) as usize];
        for code in 0..p.pow(4) {
            let m = [code / (p * p * p), code / (p * p) % p, code / p % p, code % p];
            if !(m[0] * m[3] + p * p - m[1] * m[2] % p).is_multiple_of(p) {
                index[code as usize] = elems.len();
                elems.push(m);
            }
        }
        Ok(Gl2 { p, elems, index })
    }

    fn idx(&self, m: [u64; 4]) -> usize {
        let p = self.p;
        self.index[(((m[0] * p + m[1]) * p + m[2]) * p + m[3]) as usize]
    }
}

impl FiniteGroup for Gl2 {
    fn order(&self) -> usize {
        self.elems.len()
    }
    fn identity(&self) -> usize {
        self.idx([1, 0, 0, 1])
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let (x, y, p) = (self.elems[a], self.elems[b], self.p);
        self.idx([
            (x[0] * y[0] + x[1] * y[2]) % p,
            (x[0] * y[1] + x[1] * y[3]) % p,
            (x[2] * y[0] + x[3] * y[2]) % p,
            (x[2] * y[1] + x[3] * y[3]) % p,
        ])
    }
    fn inv(&self, a: usize) -> usize {
        let (m, p) = (self.elems[a], self.p);
        let det = (m[0] * m[3] + p * p - m[1] * m[2] % p) % p;
        let di = mod_inv(det, p);
        self.idx([m[3] * di % p, (p - m[1]) % p * di % p, (p - m[2]) % p * di % p, m[0] * di % p])
    }
    fn name(&self) -> String {
        format!("GL_2(F_{})", self.p)
    }
    fn label(&self, g: usize) -> String {
        let m = self.elems[g];
        format!("[[{}, {}], [{}, {}]]", m[0], m[1], m[2], m[3])
    }
}
