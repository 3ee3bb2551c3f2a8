//! Linear algebra over prime fields `F_p`.

use crate::arith::mod_inv;

/// Incrementally maintained row-echelon basis of a subspace of `F_p^dim`.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u64,
    dim: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(p: u64, dim: usize) -> Self {
        Echelon { p, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the current basis.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut v: Vec<u64> = v.iter().map(|&x| x % p).collect();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = (*x + p - c * r % p) % p;
                }
            }
        }
        v
    }

    /// Adds `v` to the basis; returns whether the rank grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let p = self.p;
        let mut v = self.reduce(v);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = mod_inv(v[piv], p);
        for x in v.iter_mut() {
            *x = *x * inv % p;
        }
        // keep earlier rows reduced at the new pivot
        for row in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (x, &r) in row.iter_mut().zip(&v) {
                    *x = (*x + p - c * r % p) % p;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(piv);
        true
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

pub fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let dim = rows.first().map_or(0, |r| r.len());
    let mut ech = Echelon::new(p, dim);
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Basis of `{v : M v = 0}` for a matrix given by rows.
pub fn nullspace(matrix: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut ech = Echelon::new(p, cols);
    for r in matrix {
        ech.insert(r);
    }
    let pivots = ech.pivots().to_vec();
    let rows = ech.rows().to_vec();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (row, &piv) in rows.iter().zip(&pivots) {
                v[piv] = (p - row[fc] % p) % p;
            }
            v
        })
        .collect()
}
