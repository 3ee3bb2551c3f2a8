//! Dixon's modular method: common eigenvectors of the class matrices over
//! `F_l`, lifted to cyclotomic integers through power maps.

use crate::arith::{factorize, is_prime, isqrt, mod_inv, mod_pow};
use crate::error::{Error, Result};
use crate::exactrep::Cyclotomic;
use crate::groups::{closure, structure_scan, FiniteGroup, Structure};
use crate::linalg::{nullspace, Echelon};

/// How many primes `l = 1 mod exponent` are tried before giving up.
const PRIME_ATTEMPTS: usize = 8;

/// Exact character table. Rows are irreducible characters, columns classes.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub group_name: String,
    pub group_order: usize,
    pub exponent: u64,
    /// Least element of each class; classes are ordered by it.
    pub class_reps: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub class_of: Vec<usize>,
    /// Class containing the inverses of class `c`.
    pub inverse_class: Vec<usize>,
    /// Non-identity classes lying in a minimal normal subgroup.
    pub socle_classes: Vec<usize>,
    /// `chars[i][c]`, values in `Q(zeta_exponent)`.
    pub chars: Vec<Vec<Cyclotomic>>,
    pub dims: Vec<u64>,
    /// The prime used for the modular computation.
    pub prime: u64,
}

impl CharacterTable {
    pub fn class_count(&self) -> usize {
        self.class_reps.len()
    }

    pub fn identity_class(&self) -> usize {
        self.class_sizes.iter().position(|&s| s == 1).expect("identity class")
    }

    /// Classes where `chi_i(g) = chi_i(1)`.
    pub fn kernel_classes(&self, i: usize) -> Vec<usize> {
        let deg = Cyclotomic::integer(self.exponent as u32, self.dims[i] as i64);
        (0..self.class_count()).filter(|&c| self.chars[i][c] == deg).collect()
    }

    /// Kernel of row `i` as a sorted element list.
    pub fn kernel_elements(&self, i: usize) -> Vec<usize> {
        let ker = self.kernel_classes(i);
        let mut mask = vec![false; self.class_count()];
        for c in ker {
            mask[c] = true;
        }
        (0..self.group_order).filter(|&x| mask[self.class_of[x]]).collect()
    }

    /// `sum_c |C| chi_i(c) conj(chi_j(c)) / |G|` when integral.
    pub fn inner_product(&self, i: usize, j: usize) -> Option<i64> {
        inner(&self.class_sizes, &self.chars[i], &self.chars[j], self.group_order)
    }

    /// Exact first orthogonality relations for every pair of rows.
    pub fn check_orthogonality(&self) -> bool {
        let r = self.chars.len();
        r == self.class_count() && (0..r).all(|i| (i..r).all(|j| self.inner_product(i, j) == Some((i == j) as i64)))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("irrep,dim");
        for (c, rep) in self.class_reps.iter().enumerate() {
            out.push_str(&format!(",c{c}[{rep}|{}]", self.class_sizes[c]));
        }
        out.push('\n');
        for (i, row) in self.chars.iter().enumerate() {
            out.push_str(&format!("{i},{}", self.dims[i]));
            for v in row {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }
}

fn inner(sizes: &[usize], a: &[Cyclotomic], b: &[Cyclotomic], order: usize) -> Option<i64> {
    let mut acc = Cyclotomic::zero(1);
    for ((x, y), &s) in a.iter().zip(b).zip(sizes) {
        let term = x * &y.conj();
        acc = &acc + &(&term * &Cyclotomic::integer(term.order(), s as i64));
    }
    let total = acc.as_integer()?;
    (total % order as i64 == 0).then(|| total / order as i64)
}

/// Character table of `g`, refusing groups larger than `cap`.
pub fn character_table(g: &dyn FiniteGroup, cap: usize) -> Result<CharacterTable> {
    let s = structure_scan(g, cap)?;
    character_table_with(g, &s)
}

pub fn character_table_with(g: &dyn FiniteGroup, s: &Structure) -> Result<CharacterTable> {
    let order = g.order();
    let r = s.class_count();
    let exponent = s.exponent;
    let class_reps: Vec<usize> = s.classes.iter().map(|c| c[0]).collect();
    let class_sizes: Vec<usize> = s.classes.iter().map(Vec::len).collect();
    let inverse_class: Vec<usize> = class_reps.iter().map(|&x| s.class_of[g.inv(x)]).collect();
    let socle_classes = socle_classes(g, s);

    let mut prime = first_prime(exponent, order);
    for _ in 0..PRIME_ATTEMPTS {
        if let Some(chars) = attempt(g, s, &class_reps, &class_sizes, &inverse_class, prime) {
            let mut rows: Vec<(u64, Vec<Cyclotomic>)> = chars;
            let trivial = |row: &[Cyclotomic]| row.iter().all(|v| v.as_integer() == Some(1));
            rows.sort_by_cached_key(|(d, row)| {
                (*d, !trivial(row), row.iter().map(|v| v.to_string()).collect::<Vec<_>>())
            });
            let table = CharacterTable {
                group_name: g.name(),
                group_order: order,
                exponent,
                class_reps: class_reps.clone(),
                class_sizes: class_sizes.clone(),
                class_of: s.class_of.clone(),
                inverse_class: inverse_class.clone(),
                socle_classes: socle_classes.clone(),
                dims: rows.iter().map(|(d, _)| *d).collect(),
                chars: rows.into_iter().map(|(_, row)| row).collect(),
                prime,
            };
            if table.chars.len() == r && table.check_orthogonality() {
                return Ok(table);
            }
        }
        prime = next_prime(exponent, prime);
    }
    Err(Error::ModularPrimeNotFound)
}

/// Smallest prime `l = 1 (mod exponent)` with `l > 2 sqrt |G|`.
pub fn first_prime(exponent: u64, order: usize) -> u64 {
    let bound = 2 * isqrt(order as u64) + 1;
    let mut l = 1 + exponent * (bound / exponent).max(1);
    while l <= bound || !is_prime(l) {
        l += exponent;
    }
    l
}

fn next_prime(exponent: u64, l: u64) -> u64 {
    let mut l = l + exponent;
    while !is_prime(l) {
        l += exponent;
    }
    l
}

fn primitive_root(l: u64) -> u64 {
    let factors = factorize(l - 1);
    (2..l)
        .find(|&a| factors.iter().all(|&(q, _)| mod_pow(a, (l - 1) / q, l) != 1))
        .expect("prime fields have primitive roots")
}

/// Non-identity classes whose normal closure is a minimal normal subgroup.
fn socle_classes(g: &dyn FiniteGroup, s: &Structure) -> Vec<usize> {
    let id_class = s.class_of[g.identity()];
    let closures: Vec<Vec<usize>> = s
        .classes
        .iter()
        .enumerate()
        .map(|(c, members)| if c == id_class { vec![g.identity()] } else { closure(g, members) })
        .collect();
    (0..s.class_count())
        .filter(|&c| c != id_class)
        .filter(|&c| {
            let n = &closures[c];
            n.iter().filter(|&&x| x != g.identity()).all(|&x| closures[s.class_of[x]].len() == n.len())
        })
        .collect()
}

/// Deterministic coefficients for the first splitting matrix.
fn mix(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn attempt(
    g: &dyn FiniteGroup,
    s: &Structure,
    reps: &[usize],
    sizes: &[usize],
    inv_class: &[usize],
    l: u64,
) -> Option<Vec<(u64, Vec<Cyclotomic>)>> {
    let r = reps.len();
    let order = g.order() as u64;
    let id_class = s.class_of[g.identity()];

    // M_j[k][l] = #{x in C_j : x^-1 g_l in C_k}
    let class_matrix = |j: usize| -> Vec<Vec<u64>> {
        let mut m = vec![vec![0u64; r]; r];
        for &x in &s.classes[j] {
            let xi = g.inv(x);
            for (col, &gl) in reps.iter().enumerate() {
                m[s.class_of[g.mul(xi, gl)]][col] += 1;
            }
        }
        m
    };
    let mut combo = vec![vec![0u64; r]; r];
    for j in 0..r {
        let a = mix(j as u64 ^ l) % l;
        let mj = class_matrix(j);
        for (crow, mrow) in combo.iter_mut().zip(&mj) {
            for (c, &v) in crow.iter_mut().zip(mrow) {
                *c = (*c + a * (v % l)) % l;
            }
        }
    }

    let mut whole = Echelon::new(l, r);
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        whole.insert(&e);
    }
    let mut spaces = vec![whole];
    let mut j = 0;
    let mut m = combo;
    loop {
        let mut next = Vec::with_capacity(spaces.len());
        for v in spaces {
            if v.rank() == 1 {
                next.push(v);
            } else {
                next.extend(split(&v, &m, l)?);
            }
        }
        spaces = next;
        if spaces.iter().all(|v| v.rank() == 1) {
            break;
        }
        if j == r {
            return None;
        }
        m = class_matrix(j).into_iter().map(|row| row.into_iter().map(|v| v % l).collect()).collect();
        j += 1;
    }

    let z = mod_pow(primitive_root(l), (l - 1) / s.exponent, l);
    let e = s.exponent;
    let mut out = Vec::with_capacity(r);
    for v in spaces {
        let v = &v.rows()[0];
        let lead = v[id_class];
        if lead == 0 {
            return None;
        }
        let li = mod_inv(lead, l);
        let w: Vec<u64> = v.iter().map(|&x| x * li % l).collect();
        let mut sum = 0;
        for c in 0..r {
            sum = (sum + w[c] * w[inv_class[c]] % l * mod_inv(sizes[c] as u64 % l, l)) % l;
        }
        if sum == 0 {
            return None;
        }
        let d2 = order % l * mod_inv(sum, l) % l;
        let d = (1..=isqrt(order)).find(|&d| d * d % l == d2)?;
        let values: Vec<u64> = (0..r).map(|c| d % l * w[c] % l * mod_inv(sizes[c] as u64 % l, l) % l).collect();

        let mut row = Vec::with_capacity(r);
        for &x in reps {
            let o = g.element_order(x);
            let zo = mod_pow(z, e / o, l);
            let powers: Vec<u64> = (0..o).map(|t| values[s.class_of[g.pow(x, t)]]).collect();
            let o_inv = mod_inv(o % l, l);
            let mut counts = vec![0i64; e as usize];
            let mut total = 0;
            for t in 0..o {
                let step = mod_pow(zo, (o - t) % o, l);
                let mut acc = 0;
                let mut zz = 1;
                for &pv in &powers {
                    acc = (acc + pv * zz) % l;
                    zz = zz * step % l;
                }
                let mult = acc * o_inv % l;
                if mult > d {
                    return None;
                }
                total += mult;
                counts[(t * (e / o)) as usize] += mult as i64;
            }
            if total != d {
                return None;
            }
            row.push(Cyclotomic::from_exponent_counts(e as u32, &counts));
        }
        out.push((d, row));
    }
    Some(out)
}

/// Splits an invariant subspace into eigenspaces of `m`.
fn split(v: &Echelon, m: &[Vec<u64>], l: u64) -> Option<Vec<Echelon>> {
    let basis = v.rows();
    let piv = v.pivots();
    let d = basis.len();
    let r = m.len();
    // column i of `c` = coordinates of M b_i
    let mut c = vec![vec![0u64; d]; d];
    for (i, b) in basis.iter().enumerate() {
        for (t, &p) in piv.iter().enumerate() {
            let mut acc = 0u64;
            for k in 0..r {
                if b[k] != 0 {
                    acc = (acc + m[p][k] * b[k]) % l;
                }
            }
            c[t][i] = acc;
        }
    }
    let poly = charpoly(&c, l);
    let roots: Vec<u64> = (0..l).filter(|&x| eval(&poly, x, l) == 0).collect();
    if roots.len() == 1 {
        return Some(vec![v.clone()]);
    }
    let mut out = Vec::with_capacity(roots.len());
    let mut total = 0;
    for lam in roots {
        let shifted: Vec<Vec<u64>> = c
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut row = row.clone();
                row[i] = (row[i] + l - lam) % l;
                row
            })
            .collect();
        let mut space = Echelon::new(l, r);
        for coeffs in nullspace(&shifted, d, l) {
            let mut vec = vec![0u64; r];
            for (ci, b) in coeffs.iter().zip(basis) {
                if *ci != 0 {
                    for (x, &y) in vec.iter_mut().zip(b) {
                        *x = (*x + ci * y) % l;
                    }
                }
            }
            space.insert(&vec);
        }
        total += space.rank();
        out.push(space);
    }
    (total == d).then_some(out)
}

fn eval(poly: &[u64], x: u64, l: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % l)
}

/// Characteristic polynomial (low degree first) via Hessenberg reduction.
#[allow(clippy::needless_range_loop)]
pub fn charpoly(a: &[Vec<u64>], l: u64) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|&x| x % l).collect()).collect();
    for col in 0..n.saturating_sub(2) {
        let Some(pr) = (col + 1..n).find(|&i| h[i][col] != 0) else { continue };
        if pr != col + 1 {
            h.swap(pr, col + 1);
            for row in h.iter_mut() {
                row.swap(pr, col + 1);
            }
        }
        let inv = mod_inv(h[col + 1][col], l);
        for i in col + 2..n {
            let f = h[i][col] * inv % l;
            if f == 0 {
                continue;
            }
            for k in 0..n {
                let sub = f * h[col + 1][k] % l;
                h[i][k] = (h[i][k] + l - sub) % l;
            }
            for row in h.iter_mut() {
                row[col + 1] = (row[col + 1] + f * row[i]) % l;
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}
    let mut ps: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let prev = &ps[m];
        let mut next = vec![0u64; m + 2];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] = (next[k + 1] + c) % l;
            next[k] = (next[k] + l - h[m][m] * c % l) % l;
        }
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = prod * h[i + 1][i] % l;
            let coef = h[i][m] * prod % l;
            if coef != 0 {
                for (k, &c) in ps[i].iter().enumerate() {
                    next[k] = (next[k] + l - coef * c % l) % l;
                }
            }
        }
        ps.push(next);
    }
    ps.pop().unwrap()
}
