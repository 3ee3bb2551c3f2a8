//! Exact arithmetic in cyclotomic integer rings `Z[zeta_m]`.
//!
//! Values are stored as the remainder of a polynomial in `zeta_m` modulo the
//! cyclotomic polynomial `Phi_m`, which is a unique normal form: two values
//! are equal iff their remainders agree.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use crate::arith::lcm;

fn cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients (low to high) of the monic cyclotomic polynomial `Phi_m`.
pub fn cyclotomic_poly(m: u32) -> Arc<Vec<i64>> {
    assert!(m >= 1, "cyclotomic order must be positive");
    if let Some(poly) = cache().read().unwrap().get(&m) {
        return poly.clone();
    }
    // x^m - 1 = prod_{d | m} Phi_d
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        let div = cyclotomic_poly(d);
        num = exact_div_monic(&num, &div);
    }
    let poly = Arc::new(num);
    cache().write().unwrap().insert(m, poly.clone());
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// An element of `Z[zeta_m]` in canonical form.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    /// `sum_k counts[k] zeta_m^k`, with `counts` of any length (exponents read mod `m`).
    pub fn from_exponent_counts(order: u32, counts: &[i64]) -> Self {
        let m = order as usize;
        let mut folded = vec![0i64; m];
        for (k, &c) in counts.iter().enumerate() {
            folded[k % m] += c;
        }
        Self::reduce(order, folded)
    }

    pub fn zero(order: u32) -> Self {
        Self::integer(order, 0)
    }

    pub fn integer(order: u32, c: i64) -> Self {
        Self::reduce(order, vec![c])
    }

    /// `zeta_m^k`.
    pub fn root(order: u32, k: u64) -> Self {
        let mut counts = vec![0i64; order as usize];
        counts[(k % order as u64) as usize] = 1;
        Self::reduce(order, counts)
    }

    fn reduce(order: u32, mut poly: Vec<i64>) -> Self {
        let phi = cyclotomic_poly(order);
        let deg = phi.len() - 1;
        for top in (deg..poly.len()).rev() {
            let c = poly[top];
            if c == 0 {
                continue;
            }
            for (i, &d) in phi.iter().enumerate() {
                poly[top - deg + i] -= c * d;
            }
        }
        poly.resize(deg, 0);
        Cyclotomic { order, coeffs: poly }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Canonical coefficients with respect to `1, zeta, ..., zeta^{phi(m)-1}`.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Rewrites the value over `zeta_{order}` where `order` is a multiple of the current order.
    pub fn lift(&self, order: u32) -> Self {
        assert_eq!(order % self.order, 0, "lift target must be a multiple");
        if order == self.order {
            return self.clone();
        }
        let step = (order / self.order) as usize;
        let mut counts = vec![0i64; order as usize];
        for (k, &c) in self.coeffs.iter().enumerate() {
            counts[k * step] += c;
        }
        Self::reduce(order, counts)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let l = lcm(self.order as u64, other.order as u64) as u32;
        (self.lift(l), other.lift(l))
    }

    /// Complex conjugate: `zeta^k -> zeta^{-k}`.
    pub fn conj(&self) -> Self {
        let m = self.order as usize;
        let mut counts = vec![0i64; m];
        for (k, &c) in self.coeffs.iter().enumerate() {
            counts[(m - k) % m] += c;
        }
        Self::reduce(self.order, counts)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `Some(c)` when the value is the rational integer `c`.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs.iter().skip(1).all(|&c| c == 0) {
            Some(self.coeffs.first().copied().unwrap_or(0))
        } else {
            None
        }
    }

    /// The root of unity `zeta_m^k` equal to this value, if any.
    pub fn as_root_of_unity(&self) -> Option<u64> {
        (0..self.order as u64).find(|&k| *self == Self::root(self.order, k))
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = self.common(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = self.common(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.common(rhs);
        let mut prod = vec![0i64; (a.coeffs.len() * 2).max(1)];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        Cyclotomic::reduce(a.order, prod)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_integer() {
            return write!(f, "{c}");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "E({})^{k}", self.order)?,
                _ => write!(f, "{a}*E({})^{k}", self.order)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(24).len() - 1, 8);
    }

    #[test]
    fn roots_of_unity_relations() {
        for m in [2u32, 3, 4, 8, 9, 12, 18, 24] {
            let z = Cyclotomic::root(m, 1);
            let mut acc = Cyclotomic::integer(m, 1);
            for _ in 0..m {
                acc = &acc * &z;
            }
            assert_eq!(acc, Cyclotomic::integer(m, 1), "zeta_{m}^{m} = 1");
        }
        for p in [2u32, 3, 5, 7] {
            let counts = vec![1i64; p as usize];
            assert!(Cyclotomic::from_exponent_counts(p, &counts).is_zero());
        }
        // prime-power: sum over j < p of zeta_{p^2}^{j p} = 0
        let s = Cyclotomic::from_exponent_counts(9, &[1, 0, 0, 1, 0, 0, 1, 0, 0]);
        assert!(s.is_zero());
    }

    #[test]
    fn lifting_preserves_values() {
        let a = Cyclotomic::root(3, 1);
        assert_eq!(a, Cyclotomic::root(9, 3));
        assert_eq!(a, Cyclotomic::root(6, 2));
        assert_ne!(a, Cyclotomic::root(6, 4));
        assert_eq!(Cyclotomic::integer(1, -1), Cyclotomic::root(2, 1));
        assert_eq!((&a + &a.conj()).as_integer(), Some(-1));
    }

    #[test]
    fn root_detection() {
        assert_eq!(Cyclotomic::root(8, 5).as_root_of_unity(), Some(5));
        assert_eq!(Cyclotomic::integer(8, 2).as_root_of_unity(), None);
    }

    #[test]
    fn display_forms() {
        assert_eq!(Cyclotomic::integer(4, -2).to_string(), "-2");
        assert_eq!(Cyclotomic::root(4, 1).to_string(), "E(4)^1");
        let v = &Cyclotomic::integer(3, 1) - &Cyclotomic::root(3, 1);
        assert_eq!(v.to_string(), "1 - E(3)^1");
    }
}
