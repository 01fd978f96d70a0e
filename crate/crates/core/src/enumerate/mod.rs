//! Conjugacy classes of subgroups of `Aut(B_{d,k})` satisfying (C), and their
//! (CD) lifts one level up.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::ball::{full_aut, full_aut_order, sphere_action, BallAut, BallGroup};
use crate::compat::{check_c, check_d, find_involutive_cocycles_with_limit, Cocycle};
use crate::constructions::{
    delta, diagonal_swap, gamma, gamma_k, phi, phi_k, pi, sigma, AbelianHom, Transversal,
};
use crate::permcore::lattice;
use crate::permcore::structure::{is_normal_subgroup, subnormal_subgroups};
use crate::permcore::PermGroup;
use crate::{Error, Result};

#[cfg(test)]
mod tests;

/// Largest `|Aut(B_{d,k})|` for which the exhaustive census is attempted.
pub const CENSUS_AMBIENT_CAP: usize = 1_000;
/// Largest ambient group used to fuse lifts up to conjugacy.
pub const LIFT_AMBIENT_CAP: usize = 50_000;
const SUBGROUP_CAP: usize = 500_000;
const COCYCLE_LIMIT: usize = 64;

#[derive(Clone, Debug)]
pub struct CensusRow {
    pub description: String,
    pub k: usize,
    /// Name of the projection: the level-1 group for base rows, the base row
    /// for lifted rows.
    pub projection: String,
    pub order: usize,
    pub has_c: bool,
    pub has_d: bool,
    pub has_icc: bool,
    /// Conjugate to `Γ_{k-1}` of a (CD) row one level down.
    pub gamma_image: bool,
    pub group: BallGroup,
}

#[derive(Clone, Debug)]
pub struct LiftReport {
    pub rows: Vec<CensusRow>,
    pub warnings: Vec<String>,
}

/// A name for a subgroup of `S_d`: `S<d>`, `A<d>`, `C<d>`, `D<d>`, `1_<d>`, or
/// `G<order>` otherwise.
pub fn local_name(g: &PermGroup) -> String {
    let d = g.degree();
    let n = g.order();
    let fact: usize = (1..=d).product();
    let max_elt = g.elements().iter().map(|p| p.order()).max().unwrap_or(1);
    if n == 1 {
        format!("1_{d}")
    } else if n == fact {
        format!("S{d}")
    } else if d >= 3 && 2 * n == fact && g.elements().iter().all(|p| p.sign() > 0) {
        format!("A{d}")
    } else if g.is_transitive() && n == d && max_elt == d {
        format!("C{d}")
    } else if d >= 3 && g.is_transitive() && n == 2 * d && max_elt == d && !g.is_abelian() {
        format!("D{d}")
    } else {
        format!("G{n}")
    }
}

/// Canonical form of `h ≤ ambient` under conjugation: the least sorted list of
/// ambient indices over all conjugates.
fn conjugacy_key(ambient: &BallGroup, h: &BallGroup) -> Vec<usize> {
    let hs: Vec<BallAut> = h.elements().collect();
    let mut best: Option<Vec<usize>> = None;
    for c in ambient.elements() {
        let ci = c.inverse();
        let mut v: Vec<usize> =
            hs.iter().map(|x| ambient.index_of(&c.compose(x).compose(&ci)).expect("closed under conjugation")).collect();
        v.sort_unstable();
        if best.as_ref().map_or(true, |b| v < *b) {
            best = Some(v);
        }
    }
    best.unwrap_or_default()
}

fn has_icc(f: &BallGroup) -> Result<bool> {
    if !check_c(f).holds {
        return Ok(false);
    }
    if f.radius() == 1 {
        // z(α, ω) = α is an involutive compatibility cocycle.
        return Ok(true);
    }
    Ok(!find_involutive_cocycles_with_limit(f, 1)?.is_empty())
}

/// Named radius-2 constructions over a local group, in naming priority.
fn named_candidates(f: &PermGroup) -> Vec<(String, BallGroup)> {
    let n = local_name(f);
    let mut out = Vec::new();
    let mut push = |name: String, g: Result<BallGroup>| {
        if let Ok(g) = g {
            out.push((name, g));
        }
    };
    push(format!("Φ({n})"), phi(f));
    push(format!("Γ({n})"), gamma(f));
    if f.degree() >= 3 {
        push(format!("Δ({n})"), delta(f, None, Transversal::LexLeast));
    }
    if f.elements().iter().any(|p| p.sign() < 0) {
        let sgn = AbelianHom::sign(f);
        push(format!("Π({n},sgn,{{0,1}})"), pi(f, &sgn, &[0, 1], 2));
        push(format!("Π({n},sgn,{{1}})"), pi(f, &sgn, &[1], 2));
    }
    out
}

/// Conjugacy classes of subgroups of `Aut(B_{d,k})` that satisfy (C) and
/// project onto a transitive subgroup of `S_d`.
///
/// Exhaustive; fails with [`Error::Capacity`] when `|Aut(B_{d,k})|` exceeds
/// [`CENSUS_AMBIENT_CAP`]. Larger cases need the lift-based search of
/// [`census_cd_lifts`].
pub fn census_c_classes(d: usize, k: usize) -> Result<Vec<CensusRow>> {
    if d < 2 || k == 0 {
        return Err(Error::Precondition("census needs d ≥ 2 and k ≥ 1".into()));
    }
    match full_aut_order(d, k) {
        Some(n) if n <= CENSUS_AMBIENT_CAP as u128 => {}
        _ => return Err(Error::Capacity { cap: CENSUS_AMBIENT_CAP }),
    }
    let amb = full_aut(d, k)?;
    let t = amb.table()?;
    // (C) depends on the labelling, so it is not invariant under conjugation.
    // A class qualifies when some member satisfies (C); that member with least
    // element list represents it.
    let mut classes: BTreeMap<Vec<usize>, BallGroup> = BTreeMap::new();
    for s in lattice::all_subgroups(&t, SUBGROUP_CAP)? {
        let g = amb.subgroup_from_indices(&s.elements());
        if !g.level1().is_transitive() || !check_c(&g).holds {
            continue;
        }
        classes.entry(conjugacy_key(&amb, &g)).or_insert(g);
    }

    let mut names: BTreeMap<Vec<usize>, String> = BTreeMap::new();
    let mut named_locals: Vec<PermGroup> = Vec::new();
    let mut rows = Vec::new();
    for (key, g) in classes {
        let local = g.level1();
        if k == 2 && !named_locals.contains(&local) {
            for (name, c) in named_candidates(&local) {
                names.entry(conjugacy_key(&amb, &c)).or_insert(name);
            }
            named_locals.push(local.clone());
        }
        let projection = local_name(&local);
        let description = if k == 1 {
            projection.clone()
        } else {
            names.get(&key).cloned().unwrap_or_else(|| format!("F{}[{projection}]", g.order()))
        };
        rows.push(CensusRow {
            description,
            k,
            projection,
            order: g.order(),
            has_c: true,
            has_d: check_d(&g).holds,
            has_icc: has_icc(&g)?,
            gamma_image: false,
            group: g,
        });
    }
    rows.sort_by(|a, b| {
        (a.group.level1().order(), a.order, a.has_icc, &a.description).cmp(&(
            b.group.level1().order(),
            b.order,
            b.has_icc,
            &b.description,
        ))
    });
    disambiguate(&mut rows);
    Ok(rows)
}

/// Appends `#2`, `#3`, … to repeated descriptions.
fn disambiguate(rows: &mut [CensusRow]) {
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for r in rows.iter_mut() {
        let c = seen.entry(r.description.clone()).or_insert(0);
        *c += 1;
        if *c > 1 {
            r.description = format!("{}#{}", r.description, c);
        }
    }
}

/// How lifted groups are told apart.
enum Fusion {
    Conjugacy(BallGroup),
    /// Ambient too large; only equal subgroups are identified.
    Equality,
}

impl Fusion {
    fn key(&self, h: &BallGroup) -> Vec<usize> {
        match self {
            Fusion::Conjugacy(amb) => conjugacy_key(amb, h),
            Fusion::Equality => {
                let mut v: Vec<usize> = Vec::new();
                for x in h.elements() {
                    v.extend(x.leaf_perm().images().iter().map(|&i| i as usize));
                }
                v
            }
        }
    }
}

/// (CD) subgroups `F̃ ≤ Φ_k(F')` with `π_k F̃ = F'`, for every base row `F'`
/// that satisfies (C) and admits an involutive compatibility cocycle.
///
/// Two searches run per base row: every subgroup of `Φ_k(F')` with full
/// projection, and the groups `Σ_k(F', K)` over all cocycles and admissible
/// kernels `K`. They must agree; a disagreement is reported as a warning.
/// Rows conjugate to `Γ_k` of a base (CD) row are flagged. Lifts of distinct
/// base rows are never conjugate, since their projections are not.
pub fn census_cd_lifts(base: &[CensusRow], base_complete: bool) -> Result<LiftReport> {
    let mut warnings = Vec::new();
    if !base_complete {
        warnings.push("base list is not known to be complete; the lift census may be missing classes".into());
    }
    let mut rows = Vec::new();
    let mut fusion: Option<(usize, usize, Fusion)> = None;
    for b in base.iter().filter(|b| b.has_c && b.has_icc) {
        let f = &b.group;
        let (d, k) = (f.degree(), f.radius());
        if fusion.as_ref().map_or(true, |(fd, fk, _)| (*fd, *fk) != (d, k)) {
            let fu = match full_aut_order(d, k + 1) {
                Some(n) if n <= LIFT_AMBIENT_CAP as u128 => Fusion::Conjugacy(full_aut(d, k + 1)?),
                _ => {
                    warnings.push(format!(
                        "Aut(B_{{{d},{}}}) is too large to fuse lifts up to conjugacy; rows are distinct subgroups",
                        k + 1
                    ));
                    Fusion::Equality
                }
            };
            fusion = Some((d, k, fu));
        }
        let fu = &fusion.as_ref().expect("set above").2;

        let big = phi_k(f)?;
        let t = big.table()?;
        let mut direct: BTreeMap<Vec<usize>, BallGroup> = BTreeMap::new();
        for s in lattice::all_subgroups(&t, SUBGROUP_CAP)? {
            if s.order() % f.order() != 0 {
                continue;
            }
            let g = big.subgroup_from_indices(&s.elements());
            if g.project(k)? != *f || !check_c(&g).holds || !check_d(&g).holds {
                continue;
            }
            direct.entry(fu.key(&g)).or_insert(g);
        }

        let cocycles: Vec<Cocycle> = find_involutive_cocycles_with_limit(f, COCYCLE_LIMIT)?;
        if cocycles.len() == COCYCLE_LIMIT {
            warnings.push(format!("{}: only the first {COCYCLE_LIMIT} cocycles were used", b.description));
        }
        let gamma_keys: BTreeSet<Vec<usize>> =
            cocycles.iter().map(|z| gamma_k(f, z).map(|g| fu.key(&g))).collect::<Result<_>>()?;
        let kernel = big.kernel_of_projection(k)?;
        let kt = kernel.table()?;
        let swap = if d == 3 { diagonal_swap(k + 1).ok() } else { None };
        let mut via_sigma: BTreeMap<Vec<usize>, String> = BTreeMap::new();
        for ks in lattice::all_subgroups(&kt, SUBGROUP_CAP)? {
            let kg = kernel.subgroup_from_indices(&ks.elements());
            let gens = kg.generators();
            let label = match &swap {
                Some(s) if kg.order() == 2 && kg.contains(s) => format!("K_{k}"),
                _ => format!("K{}", kg.order()),
            };
            for z in &cocycles {
                let Ok(g) = sigma(f, z, &gens) else { continue };
                if check_d(&g).holds {
                    via_sigma.entry(fu.key(&g)).or_insert_with(|| label.clone());
                }
            }
        }

        let direct_keys: BTreeSet<&Vec<usize>> = direct.keys().collect();
        let sigma_keys: BTreeSet<&Vec<usize>> = via_sigma.keys().collect();
        if direct_keys != sigma_keys {
            warnings.push(format!(
                "{}: subgroup search found {} classes, Σ-parameterization found {}",
                b.description,
                direct_keys.len(),
                sigma_keys.len()
            ));
        }

        let mut lifted = Vec::new();
        for (key, g) in direct {
            let is_gamma = gamma_keys.contains(&key);
            let description = if is_gamma {
                format!("Γ_{k}({})", b.description)
            } else if let Some(label) = via_sigma.get(&key) {
                format!("Σ_{k}({},{label})", b.description)
            } else {
                format!("L{}({})", g.order(), b.description)
            };
            lifted.push(CensusRow {
                description,
                k: k + 1,
                projection: b.description.clone(),
                order: g.order(),
                has_c: true,
                has_d: true,
                has_icc: has_icc(&g)?,
                gamma_image: is_gamma && b.has_d,
                group: g,
            });
        }
        lifted.sort_by(|a, c| (a.order, &a.description).cmp(&(c.order, &c.description)));
        rows.extend(lifted);
    }
    disambiguate(&mut rows);
    Ok(LiftReport { rows, warnings })
}

/// The degree-3 table: the (C)-classes at radius 2 followed by the (CD)
/// lifts at radius 3 that are not `Γ_2`-images of radius-2 (CD) rows.
pub fn s3_table() -> Result<Vec<CensusRow>> {
    let mut rows = census_c_classes(3, 2)?;
    let lifts = census_cd_lifts(&rows, true)?;
    if let Some(w) = lifts.warnings.first() {
        return Err(Error::Inconsistent(w.clone()));
    }
    rows.extend(lifts.rows.into_iter().filter(|r| !r.gamma_image));
    Ok(rows)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Fixed-column text rendering, one line per row after the header.
pub fn format_table(rows: &[CensusRow]) -> String {
    let header = ["Description of F", "k", "πF", "|F|", "(C)", "(D)", "i.c.c."];
    let cells: Vec<[String; 7]> = rows
        .iter()
        .map(|r| {
            [
                r.description.clone(),
                format!("{}", r.k),
                r.projection.clone(),
                format!("{}", r.order),
                yes_no(r.has_c).into(),
                yes_no(r.has_d).into(),
                yes_no(r.has_icc).into(),
            ]
        })
        .collect();
    let mut width = [0usize; 7];
    for (i, h) in header.iter().enumerate() {
        width[i] = h.chars().count();
    }
    for c in &cells {
        for i in 0..7 {
            width[i] = width[i].max(c[i].chars().count());
        }
    }
    let line = |c: &[&str]| -> String {
        let parts: Vec<String> = c
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let pad = width[i] - s.chars().count();
                let mut p = String::from(*s);
                p.extend(core::iter::repeat(' ').take(pad));
                p
            })
            .collect();
        let mut l = parts.join(" | ");
        while l.ends_with(' ') {
            l.pop();
        }
        l.push('\n');
        l
    };
    let mut out = line(&header);
    for c in &cells {
        let refs: Vec<&str> = c.iter().map(|s| s.as_str()).collect();
        out.push_str(&line(&refs));
    }
    out
}

/// Subgroups `F̃ ≤ Φ(F)` satisfying (C) with `πF̃ = F`, one per conjugacy
/// class in `Aut(B_{d,2})` when that group is small enough, otherwise one per
/// subgroup. Every radius-2 (C)-group projecting onto `F` lies in `Φ(F)`.
pub fn c_classes_over(f: &PermGroup) -> Result<Vec<BallGroup>> {
    let big = phi(f)?;
    let t = big.table()?;
    let fu = match full_aut_order(f.degree(), 2) {
        Some(n) if n <= LIFT_AMBIENT_CAP as u128 => Fusion::Conjugacy(full_aut(f.degree(), 2)?),
        _ => Fusion::Equality,
    };
    let mut out: BTreeMap<Vec<usize>, BallGroup> = BTreeMap::new();
    for s in lattice::all_subgroups(&t, SUBGROUP_CAP)? {
        if s.order() % f.order() != 0 {
            continue;
        }
        let g = big.subgroup_from_indices(&s.elements());
        if g.level1() == *f && check_c(&g).holds {
            out.entry(fu.key(&g)).or_insert(g);
        }
    }
    Ok(out.into_values().collect())
}

/// For radius 2: whether `π_ω(F̃_{b_ω} ∩ ker π)` is a normal subgroup of
/// `F_ω` for every `ω`, where `F = πF̃`.
pub fn kernel_projections_normal(f: &BallGroup) -> Result<bool> {
    if f.radius() != 2 {
        return Err(Error::Unsupported("kernel projections are checked at radius 2".into()));
    }
    let local = f.level1();
    let ker = f.kernel_of_projection(1)?;
    for w in 0..f.degree() {
        let images: Vec<_> = ker.elements().map(|x| x.split().1[w].leaf_perm().clone()).collect();
        let l = PermGroup::from_elements(f.degree(), dedup(images))?;
        let stab = local.stabilizer(w);
        if !l.is_subgroup_of(&stab) || !is_normal_subgroup(&stab, &l)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn dedup<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v.dedup();
    v
}

/// For a radius-2 group with (C) but not (D) whose projection `F` is
/// transitive and whose point stabilizer has only transitive nontrivial
/// subnormal subgroups (on the remaining points): whether the group is
/// transitive on the sphere of radius 2. `None` when the hypotheses fail.
pub fn sphere_transitivity_probe(f: &BallGroup) -> Result<Option<bool>> {
    if f.radius() != 2 || !check_c(f).holds || check_d(f).holds {
        return Ok(None);
    }
    let local = f.level1();
    if !local.is_transitive() {
        return Ok(None);
    }
    let stab = local.stabilizer(0);
    let rest: Vec<usize> = (1..local.degree()).collect();
    for s in subnormal_subgroups(&stab)? {
        if s.is_trivial() {
            continue;
        }
        if dedup(s.orbit(1)) != rest {
            return Ok(None);
        }
    }
    Ok(Some(sphere_action(f).is_transitive()))
}
