//! `minfaith`: minimal faithful representation dimensions from the command line.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use minfaith_core::chain_ring::{ChainRing, Ramification, RingParams};
use minfaith_core::groups::{structure_scan, Affine, CayleyTable, FiniteGroup, Heisenberg};
use minfaith_core::mackey::{catalog_csv, irrep_catalog, level_summary};
use minfaith_core::oracle::{character_table, character_table_with, min_faithful_exhaustive, DEFAULT_CAP};
use minfaith_core::solver::{
    construct_faithful_affine, construct_faithful_heisenberg, construct_faithful_two_step, formula_affine,
    formula_heisenberg, formula_two_step, formula_unitriangular, solve_heisenberg, Summand,
};
use minfaith_core::suite::{cross_validate, cross_validate_instance, Instance, SuiteSpec};
use minfaith_core::{Certificate, Error, FaithfulSolution, GroupSpec};

const CAP_ENV: &str = "MINFAITH_ORACLE_CAP";

#[derive(Parser)]
#[command(name = "minfaith", version, about = "Minimal faithful representation dimensions over finite chain rings")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Formula,
    Construct,
    Oracle,
    All,
}

#[derive(Args, Clone, Copy)]
struct RingArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    f: u32,
    /// Ramification index, or `inf` for equal characteristic.
    #[arg(long, default_value = "1")]
    e: Ramification,
    #[arg(long, default_value_t = 1)]
    n: u32,
}

impl RingArgs {
    fn params(&self) -> RingParams {
        RingParams::new(self.p, self.f, self.e, self.n)
    }

    fn ring(&self) -> Result<Arc<ChainRing>> {
        Ok(Arc::new(ChainRing::from_params(self.params())?))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Describe a chain ring.
    Ring(RingArgs),
    /// Irreducible representations of Hei_{2k+1}(R).
    Irreps {
        #[command(subcommand)]
        action: IrrepsAction,
    },
    /// m_faithful of Hei_{2k+1}(R).
    Heisenberg {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Mode::Formula)]
        mode: Mode,
    },
    /// m_faithful of U_size(R).
    Unitriangular {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum, default_value_t = Mode::Formula)]
        mode: Mode,
    },
    /// m_faithful of R x| R^*.
    Affine {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum, default_value_t = Mode::Formula)]
        mode: Mode,
    },
    /// Two-step nilpotent p-group given by a JSON multiplication table.
    TwoStep {
        #[arg(long)]
        table: String,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
    },
    /// Every applicable method on one group spec.
    Minfaith {
        #[arg(long)]
        group: String,
    },
    /// Brute-force character tables.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
    /// Cross-validate a suite of instances.
    Verify {
        /// `default` or a path to a suite JSON file.
        #[arg(long, default_value = "default")]
        suite: String,
    },
}

#[derive(Subcommand)]
enum IrrepsAction {
    /// Catalog as orbit_rep, level, dim, multiplicity.
    List {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Counts per level.
    Summary {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum OracleAction {
    Table {
        #[arg(long)]
        group: String,
    },
    Minfaith {
        #[arg(long)]
        group: String,
    },
}

/// Outcome of one subcommand: text to print and whether every check agreed.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

/// Result of the family subcommands.
#[derive(Serialize)]
struct Report {
    group: String,
    order: usize,
    mode: Mode,
    value: Option<u64>,
    formula: Option<u64>,
    solver: Option<u64>,
    construction: Option<u64>,
    construction_faithful: Option<bool>,
    oracle: Option<u64>,
    certificate: Option<Certificate>,
    summands: Vec<Summand>,
    notes: Vec<String>,
    mismatches: Vec<String>,
}

impl Report {
    fn new(g: &dyn FiniteGroup, mode: Mode) -> Self {
        Report {
            group: g.name(),
            order: g.order(),
            mode,
            value: None,
            formula: None,
            solver: None,
            construction: None,
            construction_faithful: None,
            oracle: None,
            certificate: None,
            summands: Vec::new(),
            notes: Vec::new(),
            mismatches: Vec::new(),
        }
    }

    fn wants(&self, m: Mode) -> bool {
        self.mode == m || self.mode == Mode::All
    }

    fn adopt(&mut self, sol: FaithfulSolution) {
        self.certificate = Some(sol.certificate);
        self.summands = sol.summands;
    }

    fn run_oracle(&mut self, g: &dyn FiniteGroup, cap: usize) -> Result<()> {
        if g.order() > cap {
            if self.mode == Mode::Oracle {
                bail!(Error::CapExceeded { order: g.order(), cap });
            }
            self.notes.push(format!("order {} above oracle cap {cap}: oracle skipped", g.order()));
            return Ok(());
        }
        self.oracle = Some(min_faithful_exhaustive(&character_table(g, cap)?).value);
        Ok(())
    }

    fn settle(mut self) -> Self {
        let vals = [
            ("formula", self.formula),
            ("solver", self.solver),
            ("construction", self.construction),
            ("oracle", self.oracle),
        ];
        let present: Vec<(&str, u64)> = vals.iter().filter_map(|&(n, v)| v.map(|v| (n, v))).collect();
        if let Some(&(first, v0)) = present.first() {
            self.value = Some(v0);
            for &(n, v) in &present[1..] {
                if v != v0 {
                    self.mismatches.push(format!("{n} = {v} but {first} = {v0}"));
                }
            }
        }
        if self.construction_faithful == Some(false) {
            self.mismatches.push("construction failed the kernel check".into());
        }
        self
    }

    fn render(&self, format: Format) -> Result<Output> {
        let show = |v: Option<u64>| v.map_or(String::new(), |v| v.to_string());
        let text = match format {
            Format::Json => serde_json::to_string_pretty(self)? + "\n",
            Format::Csv => format!(
                "group,order,mode,value,formula,solver,construction,oracle,status\n{},{},{},{},{},{},{},{},{}\n",
                self.group,
                self.order,
                serde_json::to_value(self.mode)?.as_str().unwrap_or_default(),
                show(self.value),
                show(self.formula),
                show(self.solver),
                show(self.construction),
                show(self.oracle),
                if self.mismatches.is_empty() { "ok" } else { "mismatch" }
            ),
            Format::Human => {
                let mut out = format!("{}\n", show(self.value));
                if self.mode == Mode::All {
                    for (n, v) in [
                        ("formula", self.formula),
                        ("solver", self.solver),
                        ("construction", self.construction),
                        ("oracle", self.oracle),
                    ] {
                        if let Some(v) = v {
                            writeln!(out, "  {n}: {v}")?;
                        }
                    }
                    for s in &self.summands {
                        writeln!(out, "  summand {} (dim {})", s.label, s.dim)?;
                    }
                }
                for n in &self.notes {
                    writeln!(out, "  note: {n}")?;
                }
                for m in &self.mismatches {
                    writeln!(out, "  mismatch: {m}")?;
                }
                out
            }
        };
        Ok(Output { text, ok: self.mismatches.is_empty() })
    }
}

fn oracle_cap() -> Result<usize> {
    match std::env::var(CAP_ENV) {
        Ok(v) => {
            let cap: usize = v.trim().parse().map_err(|_| Error::Parse(format!("{CAP_ENV}={v:?} is not a number")))?;
            if cap > DEFAULT_CAP {
                eprintln!("warning: oracle cap raised to {cap}; large tables can take minutes");
            }
            Ok(cap)
        }
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn heisenberg(ring: RingArgs, k: usize, mode: Mode, cap: usize) -> Result<Report> {
    let r = ring.ring()?;
    let h = Heisenberg::new(r.clone(), k)?;
    let mut rep = Report::new(&h, mode);
    if rep.wants(Mode::Formula) {
        rep.formula = Some(formula_heisenberg(ring.params(), k)?);
        if mode == Mode::Formula {
            rep.adopt(solve_heisenberg(&r, k)?);
        }
    }
    if rep.wants(Mode::Construct) {
        let sol = solve_heisenberg(&r, k)?;
        rep.solver = Some(sol.total_dim);
        let (built, _) = construct_faithful_heisenberg(&h, cap)?;
        rep.construction = Some(built.total_dim);
        rep.construction_faithful = built.faithful_checked;
        if built.faithful_checked.is_none() {
            rep.notes.push(format!("order above {cap}: summands not materialized"));
        }
        rep.adopt(sol);
    }
    if rep.wants(Mode::Oracle) {
        rep.run_oracle(&h, cap)?;
    }
    Ok(rep.settle())
}

fn unitriangular(ring: RingArgs, size: usize, mode: Mode, cap: usize) -> Result<Report> {
    let r = ring.ring()?;
    let g = minfaith_core::groups::Unitriangular::new(r.clone(), size)?;
    let mut rep = Report::new(&g, mode);
    if rep.wants(Mode::Formula) {
        rep.formula = Some(formula_unitriangular(ring.params(), size)?);
    }
    if rep.wants(Mode::Construct) {
        // no Weil matrices: the value comes from the embedded Heisenberg group
        formula_unitriangular(ring.params(), size)?;
        let sol = solve_heisenberg(&r, size - 2)?;
        rep.solver = Some(sol.total_dim);
        rep.notes.push(format!("solver value is that of Hei_{}(R); no matrices are built", 2 * size - 3));
        rep.adopt(sol);
    }
    if rep.wants(Mode::Oracle) {
        rep.run_oracle(&g, cap)?;
    }
    Ok(rep.settle())
}

fn affine(ring: RingArgs, mode: Mode, cap: usize) -> Result<Report> {
    let r = ring.ring()?;
    let (q, n) = (r.q(), r.n() as u32);
    let aff = Affine::new(r)?;
    let mut rep = Report::new(&aff, mode);
    if rep.wants(Mode::Formula) {
        rep.formula = Some(formula_affine(q, n)?);
    }
    if rep.wants(Mode::Construct) {
        let (sol, _) = construct_faithful_affine(&aff, cap)?;
        rep.construction = Some(sol.total_dim);
        rep.construction_faithful = sol.faithful_checked;
        rep.adopt(sol);
    }
    if rep.wants(Mode::Oracle) {
        rep.run_oracle(&aff, cap)?;
    }
    Ok(rep.settle())
}

fn two_step(path: &str, mode: Mode, cap: usize) -> Result<Report> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let g = CayleyTable::from_json(&text)?;
    let s = structure_scan(&g, cap)?;
    let mut rep = Report::new(&g, mode);
    if rep.wants(Mode::Formula) {
        rep.formula = Some(formula_two_step(&s)?);
    }
    if rep.wants(Mode::Construct) {
        let (sol, _) = construct_faithful_two_step(&g, &s)?;
        rep.construction = Some(sol.total_dim);
        rep.construction_faithful = sol.faithful_checked;
        rep.adopt(sol);
    }
    if rep.wants(Mode::Oracle) {
        rep.oracle = Some(min_faithful_exhaustive(&character_table_with(&g, &s)?).value);
    }
    Ok(rep.settle())
}

#[derive(Serialize)]
struct RingInfo {
    ring: String,
    params: RingParams,
    size: u64,
    q: u64,
    xi: usize,
    units: u64,
    omega1_generators: Vec<String>,
}

fn ring_cmd(args: RingArgs, format: Format) -> Result<Output> {
    let r = args.ring()?;
    let info = RingInfo {
        ring: r.to_string(),
        params: r.params(),
        size: r.size(),
        q: r.q(),
        xi: r.xi(),
        units: r.size() - r.ideal_size(1),
        omega1_generators: r.omega1_generators().iter().map(|g| g.to_string()).collect(),
    };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&info)? + "\n",
        Format::Csv => {
            let mut out = String::from("index,element,valuation,unit\n");
            for (i, a) in r.elements().enumerate() {
                writeln!(out, "{i},{a},{},{}", r.valuation(&a), r.is_unit(&a))?;
            }
            out
        }
        Format::Human => format!(
            "{}\n  |R| = {}, q = {}, xi = {}, units = {}\n  Omega_1 generators: {}\n",
            info.ring,
            info.size,
            info.q,
            info.xi,
            info.units,
            info.omega1_generators.join(" ")
        ),
    };
    Ok(Output::ok(text))
}

fn irreps_cmd(action: IrrepsAction, format: Format) -> Result<Output> {
    match action {
        IrrepsAction::List { ring, k } => {
            let r = ring.ring()?;
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&irrep_catalog(&r, k)?)? + "\n",
                _ => catalog_csv(&r, k)?,
            };
            Ok(Output::ok(text))
        }
        IrrepsAction::Summary { ring, k } => {
            let r = ring.ring()?;
            let levels = level_summary(&r, k);
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&levels)? + "\n",
                _ => {
                    let mut out = String::from("level,dim,central_chars,orbits,irreps\n");
                    for l in &levels {
                        writeln!(out, "{},{},{},{},{}", l.level, l.dim, l.central_chars, l.orbits, l.irreps)?;
                    }
                    out
                }
            };
            Ok(Output::ok(text))
        }
    }
}

#[derive(Serialize)]
struct TableJson {
    group: String,
    order: usize,
    prime: u64,
    class_reps: Vec<String>,
    class_sizes: Vec<usize>,
    dims: Vec<u64>,
    values: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct MinfaithJson {
    group: String,
    order: usize,
    value: u64,
    selection: Vec<usize>,
    dims: Vec<u64>,
}

fn oracle_cmd(action: OracleAction, format: Format, cap: usize) -> Result<Output> {
    let (OracleAction::Table { group } | OracleAction::Minfaith { group }) = &action;
    let spec: GroupSpec = group.parse()?;
    let g = spec.build()?;
    let t = character_table(g.as_ref(), cap)?;
    let text = match action {
        OracleAction::Table { .. } => match format {
            Format::Json => {
                let tj = TableJson {
                    group: t.group_name.clone(),
                    order: t.group_order,
                    prime: t.prime,
                    class_reps: t.class_reps.iter().map(|&x| g.label(x)).collect(),
                    class_sizes: t.class_sizes.clone(),
                    dims: t.dims.clone(),
                    values: t.chars.iter().map(|row| row.iter().map(|v| v.to_string()).collect()).collect(),
                };
                serde_json::to_string_pretty(&tj)? + "\n"
            }
            _ => t.to_csv(),
        },
        OracleAction::Minfaith { .. } => {
            let mf = min_faithful_exhaustive(&t);
            let out = MinfaithJson {
                group: t.group_name.clone(),
                order: t.group_order,
                value: mf.value,
                dims: mf.selection.iter().map(|&i| t.dims[i]).collect(),
                selection: mf.selection,
            };
            match format {
                Format::Json => serde_json::to_string_pretty(&out)? + "\n",
                Format::Csv => format!(
                    "group,order,value,selection,dims\n{},{},{},{},{}\n",
                    out.group,
                    out.order,
                    out.value,
                    join(&out.selection, ";"),
                    join(&out.dims, ";")
                ),
                Format::Human => format!(
                    "{}\n  irreducibles {} of dimensions {}\n",
                    out.value,
                    join(&out.selection, ", "),
                    join(&out.dims, ", ")
                ),
            }
        }
    };
    Ok(Output::ok(text))
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn minfaith_cmd(group: &str, format: Format, cap: usize) -> Result<Output> {
    let inst = Instance { name: group.to_string(), group: group.to_string(), expect: None, oracle: true };
    let report = minfaith_core::SuiteReport { instances: vec![cross_validate_instance(&inst, cap)?] };
    render_suite(&report, format)
}

fn render_suite(report: &minfaith_core::SuiteReport, format: Format) -> Result<Output> {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
        Format::Csv => report.to_csv(),
        Format::Human => report.to_human(),
    };
    Ok(Output { text, ok: report.all_match() })
}

fn verify_cmd(suite: &str, format: Format, cap: usize) -> Result<Output> {
    let spec = if suite == "default" {
        SuiteSpec::default_suite()
    } else {
        let text = std::fs::read_to_string(suite).map_err(|e| Error::Parse(format!("cannot read {suite}: {e}")))?;
        SuiteSpec::from_json(&text)?
    };
    render_suite(&cross_validate(&spec, cap), format)
}

fn run(cli: Cli) -> Result<Output> {
    let cap = oracle_cap()?;
    let format = cli.format;
    match cli.command {
        Command::Ring(args) => ring_cmd(args, format),
        Command::Irreps { action } => irreps_cmd(action, format),
        Command::Heisenberg { ring, k, mode } => heisenberg(ring, k, mode, cap)?.render(format),
        Command::Unitriangular { ring, size, mode } => unitriangular(ring, size, mode, cap)?.render(format),
        Command::Affine { ring, mode } => affine(ring, mode, cap)?.render(format),
        Command::TwoStep { table, mode } => two_step(&table, mode, cap)?.render(format),
        Command::Minfaith { group } => minfaith_cmd(&group, format, cap),
        Command::Oracle { action } => oracle_cmd(action, format, cap),
        Command::Verify { suite } => verify_cmd(&suite, format, cap),
    }
}

/// Bad input exits 2, everything else that fails exits 1.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Parse(_) | Error::InvalidParameter(_) | Error::NonPrime(_)) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
