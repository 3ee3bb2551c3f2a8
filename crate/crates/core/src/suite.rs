//! Named instances and the cross-validation pipeline:
//! formula vs greedy solver vs explicit construction vs character-table oracle.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::prime_power;
use crate::chain_ring::ChainRing;
use crate::error::{Error, Result};
use crate::groups::{structure_scan, Affine, FiniteGroup, GroupSpec, Heisenberg, Structure};
use crate::oracle::{character_table_with, min_faithful_exhaustive, restricted_dual_vectors};
use crate::solver::{
    construct_faithful_affine, construct_faithful_heisenberg, construct_faithful_two_step, formula_affine,
    formula_heisenberg, formula_two_step, formula_unitriangular, orbit_lower_bound, solve_heisenberg, solve_pgroup,
    OrbitBound, PoolEntry,
};

/// The default suite, pinned as a versioned fixture.
pub const DEFAULT_SUITE_JSON: &str = include_str!("../fixtures/default_suite.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub name: String,
    /// Group in the textual spec form, e.g. `heis:p=2,e=inf,n=2`.
    pub group: String,
    /// Value expected from the paper, when it states one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<u64>,
    #[serde(default = "yes")]
    pub oracle: bool,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSpec {
    pub version: u32,
    pub instances: Vec<Instance>,
}

impl SuiteSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SuiteSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        for inst in &spec.instances {
            inst.group.parse::<GroupSpec>()?;
        }
        Ok(spec)
    }

    pub fn default_suite() -> Self {
        Self::from_json(DEFAULT_SUITE_JSON).expect("bundled suite parses")
    }
}

/// Everything computed for one instance. Absent values were not applicable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub name: String,
    pub group: String,
    pub order: usize,
    pub expect: Option<u64>,
    pub formula: Option<u64>,
    pub solver: Option<u64>,
    pub construction: Option<u64>,
    pub construction_faithful: Option<bool>,
    pub oracle: Option<u64>,
    /// Greedy basis over the oracle's restricted central characters (p-groups).
    pub oracle_greedy: Option<u64>,
    pub orbit_bound: Option<OrbitBound>,
    pub notes: Vec<String>,
    pub mismatches: Vec<String>,
}

impl InstanceReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// The agreed value, if any method produced one.
    pub fn value(&self) -> Option<u64> {
        [self.oracle, self.formula, self.solver, self.construction, self.expect].into_iter().flatten().next()
    }

    fn settle(&mut self) {
        let named = [
            ("expect", self.expect),
            ("formula", self.formula),
            ("solver", self.solver),
            ("construction", self.construction),
            ("oracle", self.oracle),
            ("oracle_greedy", self.oracle_greedy),
        ];
        let present: Vec<(&str, u64)> = named.iter().filter_map(|&(n, v)| v.map(|v| (n, v))).collect();
        if let Some(&(first, v0)) = present.first() {
            for &(n, v) in &present[1..] {
                if v != v0 {
                    self.mismatches.push(format!("{n} = {v} but {first} = {v0}"));
                }
            }
        }
        if self.construction_faithful == Some(false) {
            self.mismatches.push("construction failed the kernel check".into());
        }
        if let (Some(b), Some(o)) = (&self.orbit_bound, self.oracle) {
            if o < b.bound || (b.equality && o != b.bound) {
                self.mismatches.push(format!("orbit bound {} (equality {}) vs oracle {o}", b.bound, b.equality));
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub instances: Vec<InstanceReport>,
}

impl SuiteReport {
    pub fn all_match(&self) -> bool {
        self.instances.iter().all(InstanceReport::ok)
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        for r in &self.instances {
            let show = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
            let _ = writeln!(
                out,
                "{:<5} {:<28} |G|={:<6} formula={:<4} solver={:<4} construct={:<4} oracle={:<4} greedy={:<4}{}",
                if r.ok() { "ok" } else { "FAIL" },
                r.name,
                r.order,
                show(r.formula),
                show(r.solver),
                show(r.construction),
                show(r.oracle),
                show(r.oracle_greedy),
                r.orbit_bound.as_ref().map_or(String::new(), |b| format!(" bound={}", b.bound)),
            );
            for m in &r.mismatches {
                let _ = writeln!(out, "      mismatch: {m}");
            }
        }
        let bad = self.instances.iter().filter(|r| !r.ok()).count();
        let _ = writeln!(out, "{} instances, {} mismatches", self.instances.len(), bad);
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "name,group,order,expect,formula,solver,construction,oracle,oracle_greedy,orbit_bound,status\n",
        );
        let show = |v: Option<u64>| v.map_or(String::new(), |v| v.to_string());
        for r in &self.instances {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                r.name,
                r.group,
                r.order,
                show(r.expect),
                show(r.formula),
                show(r.solver),
                show(r.construction),
                show(r.oracle),
                show(r.oracle_greedy),
                show(r.orbit_bound.as_ref().map(|b| b.bound)),
                if r.ok() { "ok" } else { "mismatch" }
            );
        }
        out
    }
}

/// Runs every applicable method on one instance. Library errors other than
/// a cap overflow are reported as mismatches.
pub fn cross_validate_instance(inst: &Instance, cap: usize) -> Result<InstanceReport> {
    let spec: GroupSpec = inst.group.parse()?;
    let g = spec.build()?;
    let mut rep = InstanceReport {
        name: inst.name.clone(),
        group: spec.to_string(),
        order: g.order(),
        expect: inst.expect,
        ..Default::default()
    };
    let scan = if g.order() <= cap { Some(structure_scan(g.as_ref(), cap)?) } else { None };

    match &spec {
        GroupSpec::Heisenberg { ring, k } => {
            rep.formula = Some(formula_heisenberg(*ring, *k)?);
            let r = Arc::new(ChainRing::from_params(*ring)?);
            rep.solver = Some(solve_heisenberg(&r, *k)?.total_dim);
            let h = Heisenberg::new(r, *k)?;
            let (sol, _) = construct_faithful_heisenberg(&h, cap)?;
            rep.construction = Some(sol.total_dim);
            rep.construction_faithful = sol.faithful_checked;
        }
        GroupSpec::Unitriangular { ring, size } => match formula_unitriangular(*ring, *size) {
            Ok(v) => rep.formula = Some(v),
            Err(Error::Char2Unsupported) => rep.notes.push("Theorem 1.2 not asserted in characteristic 2".into()),
            Err(e) => return Err(e),
        },
        GroupSpec::Affine { ring } => {
            let r = Arc::new(ChainRing::from_params(*ring)?);
            rep.formula = Some(formula_affine(r.q(), r.n() as u32)?);
            let aff = Affine::new(r)?;
            let (sol, _) = construct_faithful_affine(&aff, cap)?;
            rep.construction = Some(sol.total_dim);
            rep.construction_faithful = sol.faithful_checked;
        }
        GroupSpec::Gl2 { p } if *p != 2 => {
            rep.formula = Some(p - 1);
            rep.notes.push("cuspidal bound q - 1 from the Section 1 remark".into());
        }
        GroupSpec::Metacyclic { n, h, u, s: 0 } if prime_power(*n).is_some() => {
            let mults: Vec<u64> = (0..*h)
                .scan(1u64, |acc, _| {
                    let cur = *acc;
                    *acc = *acc * u % n;
                    Some(cur)
                })
                .collect();
            rep.orbit_bound = Some(orbit_lower_bound(*n, &mults)?);
        }
        _ => {}
    }

    if let Some(s) = &scan {
        two_step_methods(g.as_ref(), s, &spec, &mut rep)?;
        if inst.oracle {
            let t = character_table_with(g.as_ref(), s)?;
            rep.oracle = Some(min_faithful_exhaustive(&t).value);
            if let Some(p) = s.prime {
                let dvs = restricted_dual_vectors(&t, s).ok_or(Error::NotPGroup)?;
                let pool: Vec<PoolEntry> = dvs
                    .into_iter()
                    .zip(&t.dims)
                    .enumerate()
                    .map(|(i, (central, &dim))| PoolEntry { label: format!("row{i}"), dim, central })
                    .collect();
                rep.oracle_greedy = Some(solve_pgroup(&g.name(), p, s.center_rank(), &pool)?.total_dim);
            }
        }
    } else {
        rep.notes.push(format!("order {} above cap {cap}: oracle skipped", g.order()));
    }
    rep.settle();
    Ok(rep)
}

fn two_step_methods(g: &dyn FiniteGroup, s: &Structure, spec: &GroupSpec, rep: &mut InstanceReport) -> Result<()> {
    let generic = matches!(spec, GroupSpec::Metacyclic { .. } | GroupSpec::Abelian { .. } | GroupSpec::Table { .. });
    if !generic {
        return Ok(());
    }
    match formula_two_step(s) {
        Ok(v) => {
            rep.formula = Some(v);
            let (sol, _) = construct_faithful_two_step(g, s)?;
            rep.construction = Some(sol.total_dim);
            rep.construction_faithful = sol.faithful_checked;
        }
        Err(e @ (Error::NotTwoStep | Error::NotPGroup | Error::CommutatorNotCyclic)) => {
            rep.notes.push(format!("Theorem 1.3 not applicable: {e}"));
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

/// Cross-validates every instance of a suite.
pub fn cross_validate(suite: &SuiteSpec, cap: usize) -> SuiteReport {
    let instances = suite
        .instances
        .iter()
        .map(|inst| {
            cross_validate_instance(inst, cap).unwrap_or_else(|e| InstanceReport {
                name: inst.name.clone(),
                group: inst.group.clone(),
                mismatches: vec![format!("error: {e}")],
                ..Default::default()
            })
        })
        .collect();
    SuiteReport { instances }
}
