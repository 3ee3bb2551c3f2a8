use serde::{Deserialize, Serialize};

use super::{generators_of, FiniteGroup};
use crate::error::{Error, Result};

/// A group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    name: String,
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    #[serde(default)]
    name: Option<String>,
    table: Vec<Vec<u32>>,
}

impl CayleyTable {
    /// Validates the group axioms. Associativity uses Light's test over a
    /// generating set, which is exact.
    pub fn new(name: impl Into<String>, rows: Vec<Vec<u32>>) -> Result<Self> {
        let order = rows.len();
        let bad = |msg: String| Err(Error::Parse(format!("multiplication table: {msg}")));
        if order == 0 {
            return bad("empty table".into());
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return bad(format!("row {i} has length {}", row.len()));
            }
            let mut seen = vec![false; order];
            for &v in row {
                if v as usize >= order || std::mem::replace(&mut seen[v as usize], true) {
                    return bad(format!("row {i} is not a permutation"));
                }
            }
        }
        let table: Vec<u32> = rows.into_iter().flatten().collect();
        let Some(identity) = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x && table[x * order + e] as usize == x))
        else {
            return bad("no identity element".into());
        };
        let mut inv = vec![0u32; order];
        for (x, slot) in inv.iter_mut().enumerate() {
            let y = (0..order).find(|&y| table[x * order + y] as usize == identity).expect("rows are permutations");
            *slot = y as u32;
        }
        let g = CayleyTable { name: name.into(), order, table, inv, identity };
        let all: Vec<usize> = (0..order).collect();
        for s in generators_of(&g, &all) {
            for x in 0..order {
                for y in 0..order {
                    if g.mul(g.mul(x, y), s) != g.mul(x, g.mul(y, s)) {
                        return bad(format!("not associative at ({x}, {y}, {s})"));
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn from_group(g: &dyn FiniteGroup) -> Self {
        let order = g.order();
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(g.mul(a, b) as u32);
            }
        }
        let inv = (0..order).map(|a| g.inv(a) as u32).collect();
        CayleyTable { name: g.name(), order, table, inv, identity: g.identity() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: TableJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(parsed.name.unwrap_or_else(|| "table".into()), parsed.table)
    }

    pub fn to_json(&self) -> String {
        let rows = self.table.chunks(self.order).map(|r| r.to_vec()).collect();
        serde_json::to_string(&TableJson { name: Some(self.name.clone()), table: rows }).expect("tables serialize")
    }
}

impl FiniteGroup for CayleyTable {
    fn order(&self) -> usize {
        self.order
    }
    fn identity(&self) -> usize {
        self.identity
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }
    fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }
    fn name(&self) -> String {
        self.name.clone()
    }
}
