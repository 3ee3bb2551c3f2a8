use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AbelianProduct, Affine, CayleyTable, FiniteGroup, Gl2, Heisenberg, Metacyclic, Unitriangular};
use crate::chain_ring::{ChainRing, Ramification, RingParams};
use crate::error::{Error, Result};

/// A parseable description of a group instance.
///
/// Text forms: `heis:p=3,f=1,e=1,n=2,k=1`, `unitri:p=3,n=1,size=4`,
/// `aff:p=3,n=2`, `meta:N=8,h=2,u=7,s=0`, `abelian:4,2`, `gl2:p=3`,
/// `table:<path>`, and the shorthands `d4`, `q8`. Omitted ring parameters
/// default to `f=1, e=1, n=1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GroupSpec {
    Heisenberg { ring: RingParams, k: usize },
    Unitriangular { ring: RingParams, size: usize },
    Affine { ring: RingParams },
    Metacyclic { n: u64, h: u64, u: u64, s: u64 },
    Abelian { orders: Vec<u64> },
    Gl2 { p: u64 },
    Table { path: String },
}

impl GroupSpec {
    pub fn build(&self) -> Result<Box<dyn FiniteGroup>> {
        let ring = |r: &RingParams| ChainRing::from_params(*r).map(Arc::new);
        Ok(match self {
            GroupSpec::Heisenberg { ring: r, k } => Box::new(Heisenberg::new(ring(r)?, *k)?),
            GroupSpec::Unitriangular { ring: r, size } => Box::new(Unitriangular::new(ring(r)?, *size)?),
            GroupSpec::Affine { ring: r } => Box::new(Affine::new(ring(r)?)?),
            GroupSpec::Metacyclic { n, h, u, s } => Box::new(Metacyclic::new(*n, *h, *u, *s)?),
            GroupSpec::Abelian { orders } => Box::new(AbelianProduct::new(orders.clone())?),
            GroupSpec::Gl2 { p } => Box::new(Gl2::new(*p)?),
            GroupSpec::Table { path } => {
                let text =
                    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
                Box::new(CayleyTable::from_json(&text)?)
            }
        })
    }

    pub fn ring(&self) -> Option<RingParams> {
        match self {
            GroupSpec::Heisenberg { ring, .. } | GroupSpec::Unitriangular { ring, .. } | GroupSpec::Affine { ring } => {
                Some(*ring)
            }
            _ => None,
        }
    }
}

fn ring_fields(f: &mut fmt::Formatter<'_>, r: &RingParams) -> fmt::Result {
    write!(f, "p={},f={},e={},n={}", r.p, r.f, r.e, r.n)
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Heisenberg { ring, k } => {
                f.write_str("heis:")?;
                ring_fields(f, ring)?;
                write!(f, ",k={k}")
            }
            GroupSpec::Unitriangular { ring, size } => {
                f.write_str("unitri:")?;
                ring_fields(f, ring)?;
                write!(f, ",size={size}")
            }
            GroupSpec::Affine { ring } => {
                f.write_str("aff:")?;
                ring_fields(f, ring)
            }
            GroupSpec::Metacyclic { n, h, u, s } => write!(f, "meta:N={n},h={h},u={u},s={s}"),
            GroupSpec::Abelian { orders } => {
                let parts: Vec<String> = orders.iter().map(u64::to_string).collect();
                write!(f, "abelian:{}", parts.join(","))
            }
            GroupSpec::Gl2 { p } => write!(f, "gl2:p={p}"),
            GroupSpec::Table { path } => write!(f, "table:{path}"),
        }
    }
}

fn parse_fields(body: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for part in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
        if out.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(Error::Parse(format!("duplicate key {k:?}")));
        }
    }
    Ok(out)
}

struct Fields(BTreeMap<String, String>);

impl Fields {
    fn take<T: FromStr>(&mut self, key: &str, default: Option<T>) -> Result<T> {
        match self.0.remove(key) {
            Some(v) => v.parse().map_err(|_| Error::Parse(format!("bad value {v:?} for {key}"))),
            None => default.ok_or_else(|| Error::Parse(format!("missing key {key}"))),
        }
    }

    fn ring(&mut self) -> Result<RingParams> {
        let p = self.take("p", None)?;
        let f = self.take("f", Some(1))?;
        let e = match self.0.remove("e") {
            Some(v) => v.parse::<Ramification>()?,
            None => Ramification::Finite(1),
        };
        let n = self.take("n", Some(1))?;
        Ok(RingParams::new(p, f, e, n))
    }

    fn finish(self) -> Result<()> {
        match self.0.keys().next() {
            Some(k) => Err(Error::Parse(format!("unknown key {k:?}"))),
            None => Ok(()),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "d4" => return Ok(GroupSpec::Metacyclic { n: 4, h: 2, u: 3, s: 0 }),
            "q8" => return Ok(GroupSpec::Metacyclic { n: 4, h: 2, u: 3, s: 2 }),
            _ => {}
        }
        let (family, body) =
            s.split_once(':').ok_or_else(|| Error::Parse(format!("group spec {s:?} lacks a family prefix")))?;
        if family == "table" {
            return Ok(GroupSpec::Table { path: body.to_string() });
        }
        if family == "abelian" {
            let orders = body
                .split(',')
                .map(|o| o.trim().parse().map_err(|_| Error::Parse(format!("bad cyclic order {o:?}"))))
                .collect::<Result<Vec<u64>>>()?;
            return Ok(GroupSpec::Abelian { orders });
        }
        let mut fields = Fields(parse_fields(body)?);
        let spec = match family {
            "heis" | "heisenberg" => {
                let ring = fields.ring()?;
                GroupSpec::Heisenberg { ring, k: fields.take("k", Some(1))? }
            }
            "unitri" | "unitriangular" => {
                let ring = fields.ring()?;
                GroupSpec::Unitriangular { ring, size: fields.take("size", None)? }
            }
            "aff" | "affine" => GroupSpec::Affine { ring: fields.ring()? },
            "meta" | "metacyclic" => GroupSpec::Metacyclic {
                n: fields.take("N", None)?,
                h: fields.take("h", None)?,
                u: fields.take("u", None)?,
                s: fields.take("s", Some(0))?,
            },
            "gl2" => GroupSpec::Gl2 { p: fields.take("p", None)? },
            other => return Err(Error::Parse(format!("unknown group family {other:?}"))),
        };
        fields.finish()?;
        Ok(spec)
    }
}
