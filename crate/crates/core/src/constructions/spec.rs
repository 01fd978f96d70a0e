//! A single description type for every construction, used by the CLI.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::local::{delta, gamma_power, Transversal};
use super::phi::{build_phi, phi_power, PhiVariant};
use super::pi::{pi, AbelianHom};
use super::sigma::{gamma_k, sigma};
use super::tower::{build_tower, TowerKind};
use super::wreath::wreath_local;
use crate::ball::{BallAut, BallGroup};
use crate::compat::{find_involutive_cocycles_with_limit, Cocycle};
use crate::permcore::named;
use crate::permcore::{Perm, PermGroup};
use crate::{Error, Result};

/// Parses a permutation in cycle notation, e.g. `(0 1)(2 3 4)` or `()`.
pub fn parse_perm(degree: usize, s: &str) -> Result<Perm> {
    let bad = || Error::Precondition(alloc::format!("cannot parse permutation {s:?}"));
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let end = body.find(')').ok_or_else(bad)?;
        let cycle = body[..end]
            .split(|c: char| c == ' ' || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        cycles.push(cycle);
        rest = body[end + 1..].trim_start();
    }
    let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
    Perm::from_cycles(degree, &refs)
}

fn parse_number(s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Precondition(alloc::format!("expected a number, found {s:?}")))
}

/// Parses a group name.
///
/// Accepted: `S<n>`, `A<n>`, `C<n>`, `D<n>` (the `n`-gon), `1_<n>` (trivial
/// on `n` points), `SL23`, `PSL2_<p>`, `PGL2_<p>`, `AGL1_8`, `AGammaL1_8`,
/// `AGL3_2`, `<F> wr <P>`, and explicit generators
/// `<n>:(0 1)(2 3);(0 2)`.
pub fn parse_group(s: &str) -> Result<PermGroup> {
    let s = s.trim();
    if let Some((f, p)) = s.split_once(" wr ") {
        return Ok(named::wreath(&parse_group(f)?, &parse_group(p)?));
    }
    if let Some((n, gens)) = s.split_once(':') {
        let n = parse_number(n.trim())?;
        let gens = gens.split(';').filter(|g| !g.trim().is_empty()).map(|g| parse_perm(n, g)).collect::<Result<Vec<_>>>()?;
        return PermGroup::closure(n, &gens);
    }
    match s {
        "SL23" => return Ok(named::sl23_on_vectors()),
        "AGL1_8" => return Ok(named::agl1_8()),
        "AGammaL1_8" => return Ok(named::agammal1_8()),
        "AGL3_2" => return Ok(named::agl3_2()),
        _ => {}
    }
    if let Some(p) = s.strip_prefix("PSL2_") {
        return Ok(named::psl2_prime(parse_number(p)?));
    }
    if let Some(p) = s.strip_prefix("PGL2_") {
        return Ok(named::pgl2_prime(parse_number(p)?));
    }
    if let Some(n) = s.strip_prefix("1_") {
        return Ok(PermGroup::trivial(parse_number(n)?));
    }
    let (head, n) = s.split_at(s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len()));
    let n = parse_number(n)?;
    if n == 0 {
        return Err(Error::Precondition("degree must be positive".into()));
    }
    match head {
        "S" => Ok(named::symmetric(n)),
        "A" => Ok(named::alternating(n)),
        "C" => Ok(named::cyclic(n)),
        "D" => Ok(named::dihedral(n)),
        _ => Err(Error::Precondition(alloc::format!("unknown group {s:?}"))),
    }
}

/// Parameters of one construction.
#[derive(Clone, Debug)]
pub enum ConstructionSpec {
    /// `Γ^k(F)`; `k = 2` is `Γ(F)`.
    Gamma { f: PermGroup, k: usize },
    /// `Γ_k(F)`; without a cocycle the first one found is used.
    GammaK { f: BallGroup, cocycle: Option<Cocycle> },
    Delta { f: PermGroup, c: Option<PermGroup>, transversal: Transversal },
    Phi { f: BallGroup, variant: PhiVariant },
    /// `Φ^k(F)`.
    PhiK { f: PermGroup, k: usize },
    Pi { f: PermGroup, rho: AbelianHom, radii: Vec<usize>, k: usize },
    Sigma { f: BallGroup, cocycle: Option<Cocycle>, kernel: Vec<BallAut> },
    Tower { f: PermGroup, kind: TowerKind, steps: usize },
    Wreath { f: PermGroup, p: PermGroup },
}

/// Result of a construction: the group (or tower levels) and, where the
/// construction carries one, a cocycle.
#[derive(Clone, Debug)]
pub struct ConstructionOutput {
    pub groups: Vec<BallGroup>,
    pub cocycle: Option<Cocycle>,
    pub description: String,
}

fn first_cocycle(f: &BallGroup, given: &Option<Cocycle>) -> Result<Cocycle> {
    match given {
        Some(z) => Ok(z.clone()),
        None => find_involutive_cocycles_with_limit(f, 1)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Precondition("F admits no involutive compatibility cocycle".into())),
    }
}

impl ConstructionSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ConstructionSpec::Gamma { .. } => "gamma",
            ConstructionSpec::GammaK { .. } => "gammak",
            ConstructionSpec::Delta { .. } => "delta",
            ConstructionSpec::Phi { .. } => "phi",
            ConstructionSpec::PhiK { .. } => "phik",
            ConstructionSpec::Pi { .. } => "pi",
            ConstructionSpec::Sigma { .. } => "sigma",
            ConstructionSpec::Tower { .. } => "tower",
            ConstructionSpec::Wreath { .. } => "wreath",
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ConstructionSpec::Gamma { f, k } => alloc::format!("Γ^{k}(F), |F| = {}", f.order()),
            ConstructionSpec::GammaK { f, .. } => alloc::format!("Γ_{}(F), |F| = {}", f.radius(), f.order()),
            ConstructionSpec::Delta { f, c: Some(c), .. } => alloc::format!("Δ(F, C), |F| = {}, |C| = {}", f.order(), c.order()),
            ConstructionSpec::Delta { f, c: None, .. } => alloc::format!("Δ(F), |F| = {}", f.order()),
            ConstructionSpec::Phi { f, variant } => {
                let v = match variant {
                    PhiVariant::Full => String::new(),
                    PhiVariant::Normal(n) => alloc::format!(", N of order {}", n.order()),
                    PhiVariant::Partition(p) => alloc::format!(", 𝒫 with {} blocks", p.blocks().len()),
                };
                alloc::format!("Φ_{}(F{v}), |F| = {}", f.radius(), f.order())
            }
            ConstructionSpec::PhiK { f, k } => alloc::format!("Φ^{k}(F), |F| = {}", f.order()),
            ConstructionSpec::Pi { f, radii, k, .. } => alloc::format!("Π^{k}(F, ρ, {radii:?}), |F| = {}", f.order()),
            ConstructionSpec::Sigma { f, kernel, .. } => {
                alloc::format!("Σ_{}(F, K), |F| = {}, {} generators for K", f.radius(), f.order(), kernel.len())
            }
            ConstructionSpec::Tower { kind, steps, .. } => {
                let name = match kind {
                    TowerKind::PinnedOrbit { .. } => "pinned-orbit",
                    TowerKind::Partition { .. } => "partition",
                    TowerKind::PinnedCenter { .. } => "pinned-center",
                };
                alloc::format!("{name} tower, {steps} levels")
            }
            ConstructionSpec::Wreath { f, p } => alloc::format!("W(F, P), |F| = {}, |P| = {}", f.order(), p.order()),
        }
    }

    pub fn build(&self) -> Result<ConstructionOutput> {
        let mut cocycle = None;
        let groups = match self {
            ConstructionSpec::Gamma { f, k } => alloc::vec![gamma_power(f, *k)?],
            ConstructionSpec::GammaK { f, cocycle: z } => {
                let z = first_cocycle(f, z)?;
                let g = gamma_k(f, &z)?;
                cocycle = Some(z);
                alloc::vec![g]
            }
            ConstructionSpec::Delta { f, c, transversal } => alloc::vec![delta(f, c.as_ref(), *transversal)?],
            ConstructionSpec::Phi { f, variant } => alloc::vec![build_phi(f, variant)?],
            ConstructionSpec::PhiK { f, k } => alloc::vec![phi_power(f, *k)?],
            ConstructionSpec::Pi { f, rho, radii, k } => alloc::vec![pi(f, rho, radii, *k)?],
            ConstructionSpec::Sigma { f, cocycle: z, kernel } => {
                let z = first_cocycle(f, z)?;
                let g = sigma(f, &z, kernel)?;
                cocycle = Some(z);
                alloc::vec![g]
            }
            ConstructionSpec::Tower { f, kind, steps } => build_tower(f, kind, *steps)?,
            ConstructionSpec::Wreath { f, p } => {
                let (w, z) = wreath_local(f, p)?;
                cocycle = Some(z);
                alloc::vec![w]
            }
        };
        Ok(ConstructionOutput { groups, cocycle, description: self.describe().to_string() })
    }
}
