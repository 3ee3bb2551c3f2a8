//! Finite chain rings `O/p^n` for the ring of integers `O` of a non-archimedean
//! local field with residue field `F_q`, `q = p^f`, and ramification index `e`.
//!
//! Three concrete models share one normal form:
//!
//! * `e = inf` (equal characteristic): `F_q[T]/(T^n)`;
//! * `e = 1`: the Galois ring `GR(p^n, f) = (Z/p^n)[y]/(h(y))`;
//! * `1 < e < inf`: `GR(p^m, f)[x]/(x^e - p, x^n)` with `m = ceil(n/e)`.
//!
//! Internally an element is `sum_t s_t x^t` with `s_t` in a Galois ring of
//! precision `p^{m_t}`. Its public coordinates are the base-`p` digits of the
//! `y^{i-1}` coefficients of the `s_t`, which are exactly the digits `d_{ij}`
//! of the expansion `sum d_{ij} w_i u^j` with `w_i = y^{i-1}` and `u` the
//! uniformizer. Coordinates are stored level-major: `coords[j * f + i]`.

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::arith::{checked_pow, is_prime};
use crate::error::{Error, Result};

/// Rings up to this size carry precomputed addition and multiplication tables.
const TABLE_LIMIT: u64 = 1024;

/// Absolute ramification index; `Infinite` marks equal characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ramification {
    Finite(u32),
    Infinite,
}

impl Serialize for Ramification {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Ramification::Finite(e) => serializer.serialize_u32(*e),
            Ramification::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Ramification {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct RamVisitor;
        impl Visitor<'_> for RamVisitor {
            type Value = Ramification;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a positive integer or the string \"inf\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Ramification, E> {
                u32::try_from(v).map(Ramification::Finite).map_err(|_| E::custom("ramification index too large"))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Ramification, E> {
                u32::try_from(v).map(Ramification::Finite).map_err(|_| E::custom("ramification index out of range"))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Ramification, E> {
                v.parse().map_err(E::custom)
            }
        }
        deserializer.deserialize_any(RamVisitor)
    }
}

impl std::str::FromStr for Ramification {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Ramification::Infinite);
        }
        s.parse::<u32>().map(Ramification::Finite).map_err(|_| Error::Parse(format!("bad ramification index {s:?}")))
    }
}

impl fmt::Display for Ramification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ramification::Finite(e) => write!(f, "{e}"),
            Ramification::Infinite => f.write_str("inf"),
        }
    }
}

/// The serializable parameter tuple `(p, f, e, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingParams {
    pub p: u64,
    pub f: u32,
    pub e: Ramification,
    pub n: u32,
}

impl RingParams {
    pub fn new(p: u64, f: u32, e: Ramification, n: u32) -> Self {
        RingParams { p, f, e, n }
    }

    /// `xi = min(e, n)`, with `xi = n` in equal characteristic.
    pub fn xi(&self) -> u32 {
        match self.e {
            Ramification::Finite(e) => e.min(self.n),
            Ramification::Infinite => self.n,
        }
    }
}

/// An element of a chain ring in canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RingElem {
    pub coords: Vec<u8>,
}

impl RingElem {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.coords.iter().any(|&c| c > 9);
        for (i, c) in self.coords.iter().enumerate() {
            if wide && i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

/// A finite chain ring `O/p^n`.
#[derive(Clone, Debug)]
pub struct ChainRing {
    params: RingParams,
    q: u64,
    size: u64,
    /// Number of powers of `x` in the internal normal form.
    xdeg: usize,
    /// Precision exponent `m_t` of the coefficient of `x^t`.
    prec: Vec<u32>,
    /// `p^{m_t}`.
    modulus: Vec<u64>,
    /// `p^{m_0}`: the exponent of the additive group.
    top: u64,
    /// Low coefficients of the monic unramified polynomial `h`.
    h: Vec<u64>,
    /// `Tr(y^i) mod p^{m_0}` for `i < f`.
    traces: Vec<u64>,
    /// Index `t` of the `x`-power carrying the socle.
    socle_t: usize,
    tables: Option<Tables>,
}

impl PartialEq for ChainRing {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params
    }
}

impl Eq for ChainRing {}

impl ChainRing {
    /// Builds `O/p^n` for the given parameters.
    pub fn new(p: u64, f: u32, e: Ramification, n: u32) -> Result<Self> {
        Self::from_params(RingParams::new(p, f, e, n))
    }

    pub fn from_params(params: RingParams) -> Result<Self> {
        let RingParams { p, f, e, n } = params;
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if p > 255 {
            return Err(Error::TooLarge(format!("prime {p} exceeds digit range")));
        }
        if f == 0 || n == 0 {
            return Err(Error::InvalidParameter("f and n must be positive".into()));
        }
        if e == Ramification::Finite(0) {
            return Err(Error::InvalidParameter("e must be positive or inf".into()));
        }
        let q = checked_pow(p, f).ok_or_else(|| Error::TooLarge("q = p^f".into()))?;
        let size =
            checked_pow(q, n).filter(|&s| s < (1 << 40)).ok_or_else(|| Error::TooLarge(format!("|R| = {q}^{n}")))?;
        let n_us = n as usize;
        let xdeg = match e {
            Ramification::Finite(e) if (e as usize) < n_us => e as usize,
            _ => n_us,
        };
        let prec: Vec<u32> = (0..xdeg).map(|t| ((n_us - t).div_ceil(xdeg)) as u32).collect();
        let modulus: Vec<u64> = prec.iter().map(|&m| p.pow(m)).collect();
        let top = modulus[0];
        let h = least_irreducible(p, f as usize);
        let mut ring = ChainRing {
            params,
            q,
            size,
            xdeg,
            prec,
            modulus,
            top,
            h,
            traces: Vec::new(),
            socle_t: (n_us - 1) % xdeg,
            tables: None,
        };
        ring.traces = ring.compute_traces();
        if size <= TABLE_LIMIT {
            ring.tables = Some(ring.build_tables());
        }
        Ok(ring)
    }

    pub fn params(&self) -> RingParams {
        self.params
    }
    pub fn p(&self) -> u64 {
        self.params.p
    }
    pub fn f(&self) -> usize {
        self.params.f as usize
    }
    pub fn n(&self) -> usize {
        self.params.n as usize
    }
    pub fn e(&self) -> Ramification {
        self.params.e
    }
    /// Residue field size.
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn xi(&self) -> usize {
        self.params.xi() as usize
    }
    /// `|R| = q^n`.
    pub fn size(&self) -> u64 {
        self.size
    }
    /// Number of coordinates, `f * n`.
    pub fn dim(&self) -> usize {
        self.f() * self.n()
    }
    /// Exponent of `(R, +)`; additive character values are roots of unity of this order.
    pub fn additive_exponent(&self) -> u64 {
        self.top
    }
    /// Coefficients `c_0, ..., c_{f-1}` of the monic unramified polynomial.
    pub fn unramified_poly(&self) -> &[u64] {
        &self.h
    }

    /// Element of `R` with the given coordinates.
    pub fn elem(&self, coords: Vec<u8>) -> Result<RingElem> {
        if coords.len() != self.dim() || coords.iter().any(|&c| c as u64 >= self.p()) {
            return Err(Error::InvalidParameter(format!("coordinate vector {coords:?} is not a canonical element")));
        }
        Ok(RingElem { coords })
    }

    pub fn zero(&self) -> RingElem {
        RingElem { coords: vec![0; self.dim()] }
    }

    pub fn one(&self) -> RingElem {
        self.omega_ideal(0, 0)
    }

    /// `w_{i+1} u^j` as an element (zero when `j >= n`).
    pub fn omega_ideal(&self, i: usize, j: usize) -> RingElem {
        let mut coords = vec![0; self.dim()];
        if j < self.n() {
            coords[j * self.f() + i] = 1;
        }
        RingElem { coords }
    }

    /// The fixed uniformizer.
    pub fn uniformizer(&self) -> RingElem {
        self.omega_ideal(0, 1)
    }

    /// Units `w_1 = 1, w_2 = y, ..., w_f = y^{f-1}` whose residues form an
    /// `F_p`-basis of the residue field.
    pub fn omega_units(&self) -> Vec<RingElem> {
        (0..self.f()).map(|i| self.omega_ideal(i, 0)).collect()
    }

    /// Position of `a` in the lexicographic enumeration of `R`.
    pub fn index_of(&self, a: &RingElem) -> usize {
        let p = self.p() as usize;
        a.coords.iter().fold(0usize, |acc, &c| acc * p + c as usize)
    }

    /// The element at position `idx` of the lexicographic enumeration.
    pub fn element(&self, mut idx: usize) -> RingElem {
        let p = self.p() as usize;
        let mut coords = vec![0u8; self.dim()];
        for c in coords.iter_mut().rev() {
            *c = (idx % p) as u8;
            idx /= p;
        }
        RingElem { coords }
    }

    /// All `q^n` elements in lexicographic coordinate order.
    pub fn elements(&self) -> impl Iterator<Item = RingElem> + '_ {
        (0..self.size as usize).map(move |i| self.element(i))
    }

    /// Largest `j <= n` with `a` in `u^j R`.
    pub fn valuation(&self, a: &RingElem) -> usize {
        a.coords.iter().position(|&c| c != 0).map_or(self.n(), |pos| pos / self.f())
    }

    /// Valuation of the element at enumeration index `idx`.
    pub fn valuation_of_index(&self, idx: usize) -> usize {
        // u^j R is exactly the set of indices below q^{n-j}.
        let mut j = self.n();
        let mut bound = 1usize;
        while idx >= bound {
            bound *= self.q as usize;
            j -= 1;
        }
        j
    }

    pub fn is_unit(&self, a: &RingElem) -> bool {
        self.valuation(a) == 0
    }

    /// Elements of valuation zero, in enumeration order.
    pub fn units(&self) -> impl Iterator<Item = RingElem> + '_ {
        self.elements().filter(|a| self.is_unit(a))
    }

    /// Number of elements of the ideal `u^j R`, i.e. `q^{n-j}`.
    pub fn ideal_size(&self, j: usize) -> u64 {
        self.q.pow((self.n() - j.min(self.n())) as u32)
    }

    /// Elements of the ideal `u^j R`, in enumeration order.
    pub fn ideal(&self, j: usize) -> impl Iterator<Item = RingElem> + '_ {
        (0..self.ideal_size(j) as usize).map(move |i| self.element(i))
    }

    /// Index `n - xi` with `Omega_1(R, +) = u^{n - xi} R`.
    pub fn omega1_index(&self) -> usize {
        self.n() - self.xi()
    }

    /// The `f * xi` generators `w_i u^{n - xi + j}` of `Omega_1(R, +)`, in
    /// `(i, j)`-lexicographic order.
    pub fn omega1_generators(&self) -> Vec<RingElem> {
        let base = self.omega1_index();
        let mut out = Vec::with_capacity(self.f() * self.xi());
        for i in 0..self.f() {
            for j in 0..self.xi() {
                out.push(self.omega_ideal(i, base + j));
            }
        }
        out
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        if let Some(t) = &self.tables {
            let s = self.size as usize;
            return self.element(t.add[self.index_of(a) * s + self.index_of(b)] as usize);
        }
        self.add_slow(a, b)
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        if let Some(t) = &self.tables {
            return self.element(t.neg[self.index_of(a)] as usize);
        }
        self.neg_slow(a)
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        if let Some(t) = &self.tables {
            let s = self.size as usize;
            return self.element(t.mul[self.index_of(a) * s + self.index_of(b)] as usize);
        }
        self.mul_slow(a, b)
    }

    /// `a * m` for an integer `m`.
    pub fn scale(&self, a: &RingElem, m: u64) -> RingElem {
        let mut s = self.to_internal(&a.coords);
        for (t, coeffs) in s.iter_mut().enumerate() {
            for c in coeffs.iter_mut() {
                *c = ((*c as u128 * m as u128) % self.modulus[t] as u128) as u64;
            }
        }
        self.to_coords(&s)
    }

    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        match &self.tables {
            Some(t) => t.add[a * self.size as usize + b] as usize,
            None => self.index_of(&self.add_slow(&self.element(a), &self.element(b))),
        }
    }

    pub fn neg_idx(&self, a: usize) -> usize {
        match &self.tables {
            Some(t) => t.neg[a] as usize,
            None => self.index_of(&self.neg_slow(&self.element(a))),
        }
    }

    pub fn sub_idx(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, self.neg_idx(b))
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        match &self.tables {
            Some(t) => t.mul[a * self.size as usize + b] as usize,
            None => self.index_of(&self.mul_slow(&self.element(a), &self.element(b))),
        }
    }

    /// Exponent `k` (mod the additive exponent `N`) such that the fixed
    /// primitive character takes the value `exp(2 pi i k / N)` at `a`.
    ///
    /// The character is `a -> e(Tr(s) / p^{m})` where `s` is the Galois-ring
    /// coefficient carrying the socle and `Tr` the Galois-ring trace; for
    /// `Z/p^n` this is `e(a / p^n)`.
    pub fn psi_exponent(&self, a: &RingElem) -> u64 {
        let s = self.to_internal(&a.coords);
        let t = self.socle_t;
        let md = self.modulus[t];
        let tr =
            s[t].iter().zip(&self.traces).fold(0u128, |acc, (&c, &tr)| (acc + c as u128 * tr as u128) % md as u128);
        (tr as u64) * (self.top / md)
    }

    pub fn psi_exponent_idx(&self, a: usize) -> u64 {
        self.psi_exponent(&self.element(a))
    }

    fn to_internal(&self, coords: &[u8]) -> Vec<Vec<u64>> {
        let f = self.f();
        let p = self.p();
        let mut s = vec![vec![0u64; f]; self.xdeg];
        for (t, st) in s.iter_mut().enumerate() {
            for (i, c) in st.iter_mut().enumerate() {
                let mut acc = 0u64;
                let mut pw = 1u64;
                for l in 0..self.prec[t] as usize {
                    let j = t + self.xdeg * l;
                    acc += coords[j * f + i] as u64 * pw;
                    pw *= p;
                }
                *c = acc;
            }
        }
        s
    }

    fn to_coords(&self, s: &[Vec<u64>]) -> RingElem {
        let f = self.f();
        let p = self.p();
        let mut coords = vec![0u8; self.dim()];
        for (t, st) in s.iter().enumerate() {
            for (i, &c) in st.iter().enumerate() {
                let mut v = c % self.modulus[t];
                for l in 0..self.prec[t] as usize {
                    let j = t + self.xdeg * l;
                    coords[j * f + i] = (v % p) as u8;
                    v /= p;
                }
            }
        }
        RingElem { coords }
    }

    fn add_slow(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let mut s = self.to_internal(&a.coords);
        let r = self.to_internal(&b.coords);
        for t in 0..self.xdeg {
            for i in 0..self.f() {
                s[t][i] = (s[t][i] + r[t][i]) % self.modulus[t];
            }
        }
        self.to_coords(&s)
    }

    fn neg_slow(&self, a: &RingElem) -> RingElem {
        let mut s = self.to_internal(&a.coords);
        for (t, st) in s.iter_mut().enumerate() {
            for c in st.iter_mut() {
                *c = (self.modulus[t] - *c) % self.modulus[t];
            }
        }
        self.to_coords(&s)
    }

    #[allow(clippy::needless_range_loop)]
    fn mul_slow(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let s = self.to_internal(&a.coords);
        let r = self.to_internal(&b.coords);
        let f = self.f();
        let wraps = self.xdeg < self.n();
        let mut out = vec![vec![0u64; f]; self.xdeg];
        for t in 0..self.xdeg {
            if s[t].iter().all(|&c| c == 0) {
                continue;
            }
            for u in 0..self.xdeg {
                let prod = self.galois_mul(&s[t], &r[u]);
                let (deg, factor) = if t + u < self.xdeg {
                    (t + u, 1)
                } else if wraps {
                    // x^e = p
                    (t + u - self.xdeg, self.p())
                } else {
                    continue;
                };
                for i in 0..f {
                    let v = (prod[i] as u128 * factor as u128 + out[deg][i] as u128) % self.top as u128;
                    out[deg][i] = v as u64;
                }
            }
        }
        self.to_coords(&out)
    }

    /// Product in `(Z/p^{m_0})[y]/(h)`.
    fn galois_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let f = self.f();
        let m = self.top as u128;
        let mut prod = vec![0u128; 2 * f - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai as u128 * bj as u128) % m;
            }
        }
        for d in (f..2 * f - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            // y^f = -sum h_i y^i
            for (i, &hi) in self.h.iter().enumerate() {
                let sub = c * hi as u128 % m;
                prod[d - f + i] = (prod[d - f + i] + m - sub) % m;
            }
        }
        prod.truncate(f);
        prod.into_iter().map(|c| c as u64).collect()
    }

    fn compute_traces(&self) -> Vec<u64> {
        let f = self.f();
        // Column j of multiplication by y^i is y^{i+j}; its trace sums the
        // y^j-coefficient of y^{i+j}.
        let mut powers = Vec::with_capacity(2 * f);
        let mut cur = vec![0u64; f];
        cur[0] = 1 % self.top;
        for _ in 0..2 * f {
            powers.push(cur.clone());
            let mut y = vec![0u64; f];
            if f > 1 {
                y[1] = 1;
                cur = self.galois_mul(&cur, &y);
            } else {
                // y = -h_0 when f = 1
                y[0] = (self.top - self.h[0] % self.top) % self.top;
                cur = self.galois_mul(&cur, &y);
            }
        }
        (0..f).map(|i| (0..f).fold(0u64, |acc, j| (acc + powers[i + j][j]) % self.top)).collect()
    }

    fn build_tables(&self) -> Tables {
        let s = self.size as usize;
        let elems: Vec<RingElem> = self.elements().collect();
        let mut add = vec![0u32; s * s];
        let mut mul = vec![0u32; s * s];
        let neg = elems.iter().map(|a| self.index_of(&self.neg_slow(a)) as u32).collect();
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate().skip(i) {
                let sum = self.index_of(&self.add_slow(a, b)) as u32;
                let prod = self.index_of(&self.mul_slow(a, b)) as u32;
                add[i * s + j] = sum;
                add[j * s + i] = sum;
                mul[i * s + j] = prod;
                mul[j * s + i] = prod;
            }
        }
        Tables { add, mul, neg }
    }
}

impl fmt::Display for ChainRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let RingParams { p, f: deg, e, n } = self.params;
        match e {
            Ramification::Infinite => write!(f, "F_{}[T]/(T^{n})", self.q),
            Ramification::Finite(1) if deg == 1 => write!(f, "Z/{}", self.size),
            Ramification::Finite(1) => write!(f, "GR({}, {deg})", p.pow(n)),
            Ramification::Finite(e) => {
                write!(f, "GR({}, {deg})[x]/(x^{e} - {p}, x^{n})", self.top)
            }
        }
    }
}

/// Lexicographically least monic irreducible of degree `f` over `F_p`,
/// ordering candidates by `sum c_i p^i` over the low coefficients.
fn least_irreducible(p: u64, f: usize) -> Vec<u64> {
    let count = p.pow(f as u32);
    for code in 0..count {
        let coeffs = digits(code, p, f);
        if is_irreducible_mod_p(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn digits(mut code: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    for c in out.iter_mut() {
        *c = code % p;
        code /= p;
    }
    out
}

/// Trial division of `y^f + sum c_i y^i` by every monic polynomial of degree at most `f/2`.
fn is_irreducible_mod_p(low: &[u64], p: u64) -> bool {
    let f = low.len();
    let mut poly: Vec<u64> = low.to_vec();
    poly.push(1);
    for d in 1..=f / 2 {
        for code in 0..p.pow(d as u32) {
            let mut divisor = digits(code, p, d);
            divisor.push(1);
            if poly_rem_mod_p(&poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_mod_p(a: &[u64], monic: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let d = monic.len() - 1;
    for top in (d..r.len()).rev() {
        let c = r[top] % p;
        if c == 0 {
            continue;
        }
        for (i, &m) in monic.iter().enumerate() {
            let idx = top - d + i;
            r[idx] = (r[idx] + p * p - c * m % p) % p;
        }
    }
    r.truncate(d);
    r
}

/// Searches for a ring isomorphism `R1 -> R2` by extending additive maps from
/// a generating set. Returns the image index of every element of `R1`.
pub fn find_ring_isomorphism(r1: &ChainRing, r2: &ChainRing) -> Option<Vec<usize>> {
    if r1.size() != r2.size() {
        return None;
    }
    let size = r1.size() as usize;
    let gens = additive_generators(r1);
    let mut choice = vec![0usize; gens.len()];
    loop {
        if let Some(map) = extend_additive(r1, r2, &gens, &choice) {
            let bijective = {
                let mut seen = vec![false; size];
                map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
            };
            let one_ok = map[r1.index_of(&r1.one())] == r2.index_of(&r2.one());
            if bijective
                && one_ok
                && (0..size).all(|a| (0..size).all(|b| map[r1.mul_idx(a, b)] == r2.mul_idx(map[a], map[b])))
            {
                return Some(map);
            }
        }
        // next choice of generator images
        let mut k = 0;
        loop {
            if k == choice.len() {
                return None;
            }
            choice[k] += 1;
            if choice[k] < size {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Greedy generating set of `(R, +)` in enumeration order.
fn additive_generators(r: &ChainRing) -> Vec<usize> {
    let size = r.size() as usize;
    let mut span = vec![false; size];
    span[r.index_of(&r.zero())] = true;
    let mut members = vec![r.index_of(&r.zero())];
    let mut gens = Vec::new();
    for g in 0..size {
        if span[g] {
            continue;
        }
        gens.push(g);
        let mut frontier = members.clone();
        while let Some(x) = frontier.pop() {
            let y = r.add_idx(x, g);
            if !span[y] {
                span[y] = true;
                members.push(y);
                frontier.push(y);
            }
        }
    }
    gens
}

fn extend_additive(r1: &ChainRing, r2: &ChainRing, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let size = r1.size() as usize;
    let mut map = vec![usize::MAX; size];
    let z1 = r1.index_of(&r1.zero());
    map[z1] = r2.index_of(&r2.zero());
    let mut members = vec![z1];
    for (&g, &img) in gens.iter().zip(images) {
        let mut frontier = members.clone();
        while let Some(x) = frontier.pop() {
            let y = r1.add_idx(x, g);
            let fy = r2.add_idx(map[x], img);
            if map[y] == usize::MAX {
                map[y] = fy;
                members.push(y);
                frontier.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}
