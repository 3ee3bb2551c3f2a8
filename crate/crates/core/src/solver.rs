//! Exact `m_faithful`: closed forms, the matroid greedy for p-groups, and
//! explicit faithful constructions checked by kernel computation.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_prime, isqrt};
use crate::chain_ring::{ChainRing, RingElem, RingParams};
use crate::char_duality::{basis_greedy, psi_b, rank, restrict_to_omega1, DualVector};
use crate::error::{Error, Result};
use crate::exactrep::{direct_sum, induce_character, DirectSum, LinearChar, MonomialRep};
use crate::groups::{generators_of, Affine, FiniteGroup, Heisenberg, Structure, SubgroupHandle, SubgroupLabel};
use crate::mackey::{dimension_for_level, mackey_rep, IrrepDescriptor, OrbitRep};

/// Theorem 1.1: `sum_{i < xi} f q^(k(n-i))`.
pub fn formula_heisenberg(params: RingParams, k: usize) -> Result<u64> {
    if !is_prime(params.p) {
        return Err(Error::NonPrime(params.p));
    }
    if params.f == 0 || params.n == 0 {
        return Err(Error::InvalidParameter("f and n must be positive".into()));
    }
    let q = params.p.checked_pow(params.f).ok_or_else(|| Error::TooLarge("q overflows u64".into()))?;
    let n = params.n as u64;
    let mut total: u64 = 0;
    for i in 0..params.xi() as u64 {
        let term = q
            .checked_pow((k as u64 * (n - i)) as u32)
            .and_then(|t| t.checked_mul(params.f as u64))
            .ok_or_else(|| Error::TooLarge("formula value overflows u64".into()))?;
        total = total.checked_add(term).ok_or_else(|| Error::TooLarge("formula value overflows u64".into()))?;
    }
    Ok(total)
}

/// Theorem 1.2 for `U_size`: equal to the Heisenberg value with `k = size - 2`,
/// asserted only in odd residue characteristic.
pub fn formula_unitriangular(params: RingParams, size: usize) -> Result<u64> {
    if size < 2 {
        return Err(Error::InvalidParameter("unitriangular size must be at least 2".into()));
    }
    if params.p == 2 {
        return Err(Error::Char2Unsupported);
    }
    formula_heisenberg(params, size - 2)
}

/// Theorem 1.5: `q^n - q^(n-1)`.
pub fn formula_affine(q: u64, n: u32) -> Result<u64> {
    if crate::arith::prime_power(q).is_none() || n == 0 {
        return Err(Error::InvalidParameter(format!("need a prime power q and n >= 1, got q={q}, n={n}")));
    }
    let hi = q.checked_pow(n).ok_or_else(|| Error::TooLarge("q^n overflows".into()))?;
    Ok(hi - hi / q)
}

/// Theorem 1.3: `sqrt[G:Z] + d(Z) - 1` for two-step p-groups with cyclic commutator.
pub fn formula_two_step(s: &Structure) -> Result<u64> {
    check_two_step(s)?;
    let idx = s.index_of_center();
    let root = isqrt(idx as u64);
    if (root * root) as usize != idx {
        return Err(Error::NonSquareIndex(idx));
    }
    Ok(root + s.center_rank() as u64 - 1)
}

fn check_two_step(s: &Structure) -> Result<()> {
    if !s.is_p_group() {
        return Err(Error::NotPGroup);
    }
    if !s.is_two_step {
        return Err(Error::NotTwoStep);
    }
    if !s.commutator_cyclic {
        return Err(Error::CommutatorNotCyclic);
    }
    Ok(())
}

/// Prop 1.4 data for `C = Z/modulus` acted on by `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitBound {
    /// Size of the `H`-orbit of a generator of `C`; a lower bound for `m_faithful(C x| H)`.
    pub bound: u64,
    /// The action is faithful, so the bound is attained.
    pub equality: bool,
}

/// `multipliers` lists the unit by which each element of `H` acts, one entry
/// per element (repeats mean a non-faithful action).
pub fn orbit_lower_bound(modulus: u64, multipliers: &[u64]) -> Result<OrbitBound> {
    if multipliers.is_empty() {
        return Err(Error::InvalidParameter("H must be nonempty".into()));
    }
    let mut orbit: Vec<u64> = multipliers.iter().map(|&u| u % modulus).collect();
    if orbit.iter().any(|&u| gcd(u, modulus) != 1) {
        return Err(Error::InvalidParameter("multipliers must be units".into()));
    }
    orbit.sort_unstable();
    orbit.dedup();
    Ok(OrbitBound { bound: orbit.len() as u64, equality: orbit.len() == multipliers.len() })
}

/// One summand of a faithful representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub label: String,
    pub dim: u64,
    /// Level of the central character (Heisenberg summands).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    /// Restriction of the central character to `Omega_1(Z)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub central: Option<DualVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub descriptor: Option<IrrepDescriptor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Rows are the summands' central characters on `Omega_1(Z)`; full rank.
    DualBasis { p: u64, dim: usize, rank: usize, rows: Vec<DualVector> },
    /// Kernel of the explicit direct sum, computed element by element.
    Kernel { kernel_order: usize },
    /// Closed form only; nothing was constructed.
    Formula,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaithfulSolution {
    pub group: String,
    pub total_dim: u64,
    pub summands: Vec<Summand>,
    pub certificate: Certificate,
    /// Result of the explicit kernel check, when matrices were built.
    pub faithful_checked: Option<bool>,
}

impl FaithfulSolution {
    fn new(group: String, summands: Vec<Summand>, certificate: Certificate) -> Self {
        let total_dim = summands.iter().map(|s| s.dim).sum();
        FaithfulSolution { group, total_dim, summands, certificate, faithful_checked: None }
    }
}

/// A candidate irreducible for the greedy: its dimension and restricted central character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoolEntry {
    pub label: String,
    pub dim: u64,
    pub central: DualVector,
}

/// Minimum-weight basis of the dual of `Omega_1(Z)` (Lemmas 3.6, 3.7).
pub fn solve_pgroup(group: &str, p: u64, dim: usize, pool: &[PoolEntry]) -> Result<FaithfulSolution> {
    let vs: Vec<DualVector> = pool.iter().map(|e| e.central.clone()).collect();
    if dim > 0 && (vs.is_empty() || rank(p, &vs) < dim) {
        return Err(Error::PoolDoesNotSpan);
    }
    let weights: Vec<u64> = pool.iter().map(|e| e.dim).collect();
    let picks = basis_greedy(p, &vs, &weights);
    let summands: Vec<Summand> = picks
        .iter()
        .map(|&i| Summand {
            label: pool[i].label.clone(),
            dim: pool[i].dim,
            level: None,
            central: Some(pool[i].central.clone()),
            descriptor: None,
        })
        .collect();
    let rows: Vec<DualVector> = picks.iter().map(|&i| vs[i].clone()).collect();
    let certificate = Certificate::DualBasis { p, dim, rank: rank(p, &rows), rows };
    Ok(FaithfulSolution::new(group.to_string(), summands, certificate))
}

/// Pool for `Hei_{2k+1}(R)`: one entry per central character `psi_b`, weighted
/// by the common dimension `q^((n - level) k)` of the irreducibles above it.
pub fn heisenberg_pool(ring: &ChainRing, k: usize) -> Vec<PoolEntry> {
    ring.elements()
        .filter(|b| !b.is_zero())
        .map(|b| {
            let level = ring.valuation(&b);
            PoolEntry {
                label: format!("psi_{b}"),
                dim: dimension_for_level(ring, k, level),
                central: restrict_to_omega1(ring, &psi_b(ring, b)),
            }
        })
        .collect()
}

/// Greedy solution for the Heisenberg group.
pub fn solve_heisenberg(ring: &ChainRing, k: usize) -> Result<FaithfulSolution> {
    let name = format!("Hei_{}({})", 2 * k + 1, ring);
    solve_pgroup(&name, ring.p(), ring.f() * ring.xi(), &heisenberg_pool(ring, k))
}

fn heisenberg_descriptor(ring: &ChainRing, k: usize, b: RingElem) -> IrrepDescriptor {
    let level = ring.valuation(&b);
    IrrepDescriptor {
        orbit_rep: OrbitRep { b_vec: vec![ring.zero(); k], b: b.clone() },
        lambda: vec![ring.zero(); k],
        dim: dimension_for_level(ring, k, level),
        central_char: psi_b(ring, b),
        level,
    }
}

/// Lemma 4.8: summands with central characters `psi_{w_i u^j}`, `i < f`, `j < xi`.
/// Matrices are built and the kernel checked when `|H| <= cap`.
pub fn construct_faithful_heisenberg(h: &Heisenberg, cap: usize) -> Result<(FaithfulSolution, Option<DirectSum>)> {
    let ring = h.ring();
    let k = h.k();
    let mut summands = Vec::new();
    let mut rows = Vec::new();
    for j in 0..ring.xi() {
        for i in 0..ring.f() {
            let b = ring.omega_ideal(i, j);
            let d = heisenberg_descriptor(ring, k, b.clone());
            let central = restrict_to_omega1(ring, &d.central_char);
            rows.push(central.clone());
            summands.push(Summand {
                label: format!("theta(b={b})"),
                dim: d.dim,
                level: Some(d.level),
                central: Some(central),
                descriptor: Some(d),
            });
        }
    }
    let dim = ring.f() * ring.xi();
    let certificate = Certificate::DualBasis { p: ring.p(), dim, rank: rank(ring.p(), &rows), rows };
    let mut sol = FaithfulSolution::new(h.name(), summands, certificate);
    let mut reps = None;
    if h.order() <= cap {
        let one = ring.one();
        let built = sol
            .summands
            .iter()
            .map(|s| mackey_rep(h, s.descriptor.as_ref().expect("descriptor"), &one))
            .collect::<Result<Vec<MonomialRep>>>()?;
        let sum = direct_sum(built);
        sol.faithful_checked = Some(sum.is_faithful(h));
        reps = Some(sum);
    }
    Ok((sol, reps))
}

/// Values of a homomorphism into `Z/e`, defined on a subgroup.
type PartialChar = Vec<Option<u64>>;

/// All ways to extend `chi` along `gens`. With `first_only` a single extension.
fn extend(g: &dyn FiniteGroup, chi: PartialChar, gens: &[usize], e: u64, first_only: bool) -> Vec<PartialChar> {
    let Some(pos) = gens.iter().position(|&x| chi[x].is_none()) else {
        return vec![chi];
    };
    let x = gens[pos];
    let mut t = 1u64;
    let mut y = x;
    while chi[y].is_none() {
        y = g.mul(y, x);
        t += 1;
    }
    let a = chi[y].expect("defined");
    debug_assert_eq!(a % t, 0, "value on x^t is divisible by t");
    let base = a / t;
    let choices = if first_only { 1 } else { t };
    let inside: Vec<usize> = (0..chi.len()).filter(|&s| chi[s].is_some()).collect();
    let mut out = Vec::new();
    for j in 0..choices {
        let v = (base + j * (e / t)) % e;
        let mut next = chi.clone();
        let mut xj = g.identity();
        let mut vj = 0;
        for _ in 1..t {
            xj = g.mul(xj, x);
            vj = (vj + v) % e;
            for &s in &inside {
                next[g.mul(s, xj)] = Some((chi[s].unwrap() + vj) % e);
            }
        }
        out.extend(extend(g, next, gens, e, first_only));
        if first_only {
            break;
        }
    }
    out
}

fn trivial_on_identity(g: &dyn FiniteGroup) -> PartialChar {
    let mut chi = vec![None; g.order()];
    chi[g.identity()] = Some(0);
    chi
}

fn omega1_coords(s: &Structure, chi: &PartialChar, e: u64) -> DualVector {
    let p = s.prime.expect("p-group");
    DualVector { coords: s.omega1_basis.iter().map(|&z| chi[z].expect("on Z") / (e / p)).collect() }
}

/// Corollary 3.9: `Ind_A^G(chi_1~) + chi_2~ + ... + chi_r~` with `chi_1`
/// faithful on `[G, G]` and `chi_2..chi_r` trivial on it (Lemma 3.8).
pub fn construct_faithful_two_step(g: &dyn FiniteGroup, s: &Structure) -> Result<(FaithfulSolution, DirectSum)> {
    check_two_step(s)?;
    let e = s.exponent;
    let p = s.prime.expect("p-group");
    let r = s.center_rank();
    let z_gens = generators_of(g, s.center.elements());
    let chars = extend(g, trivial_on_identity(g), &z_gens, e, false);

    let b_gen = s
        .commutator
        .elements()
        .iter()
        .copied()
        .find(|&c| g.element_order(c) as usize == s.commutator.order())
        .expect("cyclic commutator has a generator");
    let b_ord = s.commutator.order() as u64;
    let chi1 = chars
        .iter()
        .find(|c| if b_ord == 1 { !omega1_coords(s, c, e).is_zero() } else { e / gcd(c[b_gen].unwrap(), e) == b_ord })
        .expect("Lemma 3.8: the restriction to B is surjective")
        .clone();
    let mut rows = vec![omega1_coords(s, &chi1, e)];
    let mut picked = vec![chi1.clone()];
    for c in &chars {
        if rank(p, &rows) == r {
            break;
        }
        if c[b_gen] != Some(0) {
            continue;
        }
        let v = omega1_coords(s, c, e);
        let mut trial = rows.clone();
        trial.push(v.clone());
        if rank(p, &trial) > rank(p, &rows) {
            rows = trial;
            picked.push(c.clone());
        }
    }
    if rank(p, &rows) < r {
        return Err(Error::PoolDoesNotSpan);
    }

    let a = &s.maximal_abelian;
    let a_gens = generators_of(g, a.elements());
    let chi1_a = extend(g, chi1, &a_gens, e, true).pop().expect("extension exists");
    let lin = LinearChar::new(g, a, e as u32, |x| chi1_a[x].expect("on A"))?;
    let mut reps = vec![induce_character(g, a, &lin)?];
    let whole = SubgroupHandle::from_elements(SubgroupLabel::Custom, g.order(), (0..g.order()).collect());
    for c in &picked[1..] {
        let full = extend(g, c.clone(), &s.generators, e, true).pop().expect("extension exists");
        let lin = LinearChar::new(g, &whole, e as u32, |x| full[x].expect("on G"))?;
        reps.push(induce_character(g, &whole, &lin)?);
    }

    let summands: Vec<Summand> = reps
        .iter()
        .zip(&rows)
        .enumerate()
        .map(|(i, (rep, row))| Summand {
            label: if i == 0 { "Ind_A^G(chi_1)".to_string() } else { format!("chi_{}", i + 1) },
            dim: rep.degree() as u64,
            level: None,
            central: Some(row.clone()),
            descriptor: None,
        })
        .collect();
    let certificate = Certificate::DualBasis { p, dim: r, rank: rank(p, &rows), rows };
    let mut sol = FaithfulSolution::new(g.name(), summands, certificate);
    let sum = direct_sum(reps);
    sol.faithful_checked = Some(sum.is_faithful(g));
    Ok((sol, sum))
}

/// Theorem 1.5: `Ind` of the primitive character from the translation subgroup.
/// Matrices are built and the kernel checked when `|Aff| <= cap`.
pub fn construct_faithful_affine(aff: &Affine, cap: usize) -> Result<(FaithfulSolution, Option<DirectSum>)> {
    let ring = aff.ring();
    let dim = aff.unit_count() as u64;
    let summand = Summand { label: "Ind_R^Aff(psi)".into(), dim, level: Some(0), central: None, descriptor: None };
    let mut sol = FaithfulSolution::new(aff.name(), vec![summand], Certificate::Formula);
    if aff.order() > cap {
        return Ok((sol, None));
    }
    let t = aff.translations();
    let n_root = ring.additive_exponent() as u32;
    let chi = LinearChar::new(aff, &t, n_root, |x| ring.psi_exponent_idx(aff.decode(x).0))?;
    let rep = induce_character(aff, &t, &chi)?;
    let sum = direct_sum(vec![rep]);
    let kernel = sum.kernel(aff);
    sol.faithful_checked = Some(kernel == [aff.identity()]);
    sol.certificate = Certificate::Kernel { kernel_order: kernel.len() };
    Ok((sol, Some(sum)))
}

/// Lemma 4.1 harness: `alpha` must satisfy the basis constraints
/// `alpha_i + ... + alpha_{xi-1} <= (xi - i) f` and sum to `f xi`; returns
/// whether `sum alpha_i q^(k(n-i)) >= sum f q^(k(n-i))`.
pub fn levels_lower_bound_audit(alpha: &[u64], f: u64, q: u64, k: u32, n: u32) -> Result<bool> {
    let xi = alpha.len();
    if xi == 0 || xi > n as usize {
        return Err(Error::InvalidParameter("need 1 <= xi <= n".into()));
    }
    if alpha.iter().sum::<u64>() != f * xi as u64 {
        return Err(Error::ConstraintViolation(format!("sum of {alpha:?} is not f xi = {}", f * xi as u64)));
    }
    let mut suffix = 0;
    for i in (0..xi).rev() {
        suffix += alpha[i];
        if suffix > (xi - i) as u64 * f {
            return Err(Error::ConstraintViolation(format!(
                "alpha_{i} + ... + alpha_{} = {suffix} exceeds {}",
                xi - 1,
                (xi - i) as u64 * f
            )));
        }
    }
    let weight = |i: usize| (q as u128).pow(k * (n - i as u32));
    let lhs: u128 = alpha.iter().enumerate().map(|(i, &a)| a as u128 * weight(i)).sum();
    let rhs: u128 = (0..xi).map(|i| f as u128 * weight(i)).sum();
    Ok(lhs >= rhs)
}

#[cfg(test)]
mod tests;
