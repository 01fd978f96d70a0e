use alloc::vec::Vec;

use super::lift::{generate_expected, lift_generators, BlockRule};
use crate::ball::{sphere_size, word_at, BallAut, BallGroup};
use crate::compat::CompatIndex;
use crate::permcore::{classify_action, PartitionOfPoints, Perm, PermGroup};
use crate::{Error, Result};

/// The three tower recipes over a permutation group `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerKind {
    /// Choices constant on `F`-orbits, with `α_ω = α` on the orbit of `ω_0`.
    PinnedOrbit { omega0: usize },
    /// Choices constant on the blocks of `𝒫`. With `τ` the semiprimitive
    /// variant, without it the variant with abelian `F^+`.
    Partition { partition: PartitionOfPoints, tau: Option<Perm> },
    /// As `PinnedOrbit`, for a central `τ` moving `ω_0`.
    PinnedCenter { omega0: usize, tau: Perm },
}

impl TowerKind {
    pub fn tau(&self) -> Option<&Perm> {
        match self {
            TowerKind::PinnedOrbit { .. } => None,
            TowerKind::Partition { tau, .. } => tau.as_ref(),
            TowerKind::PinnedCenter { tau, .. } => Some(tau),
        }
    }
}

fn fail(clause: &str) -> Error {
    Error::Precondition(alloc::format!("tower hypothesis fails: {clause}"))
}

/// `F^+ = ⟨F_ω | ω ∈ Ω⟩`.
pub fn plus_subgroup(f: &PermGroup) -> Result<PermGroup> {
    let gens: Vec<Perm> = (0..f.degree()).flat_map(|w| f.stabilizer(w).generators().to_vec()).collect();
    PermGroup::closure(f.degree(), &gens)
}

fn check_central(f: &PermGroup, tau: &Perm) -> Result<()> {
    if !f.contains(tau) {
        return Err(fail("τ must lie in F"));
    }
    if tau.is_identity() {
        return Err(fail("τ must be non-trivial"));
    }
    if f.generators().iter().any(|g| g.compose(tau) != tau.compose(g)) {
        return Err(fail("τ must be central in F"));
    }
    Ok(())
}

/// The blocks of the tower together with the index of the pinned block.
fn blocks(f: &PermGroup, kind: &TowerKind) -> (Vec<Vec<usize>>, Option<usize>) {
    match kind {
        TowerKind::PinnedOrbit { omega0 } | TowerKind::PinnedCenter { omega0, .. } => {
            let orbits = f.orbits();
            let pinned = orbits.iter().position(|o| o.contains(omega0));
            (orbits, pinned)
        }
        TowerKind::Partition { partition, .. } => (partition.blocks().to_vec(), None),
    }
}

/// Checks the hypotheses of the chosen recipe, naming the failing clause.
pub fn check_tower_hypotheses(f: &PermGroup, kind: &TowerKind) -> Result<()> {
    let d = f.degree();
    match kind {
        TowerKind::PinnedOrbit { omega0 } | TowerKind::PinnedCenter { omega0, .. } => {
            if *omega0 >= d {
                return Err(fail("ω_0 must be a point"));
            }
            let (orbits, pinned) = blocks(f, kind);
            let pinned = pinned.expect("orbits cover");
            if orbits.len() < 3 {
                return Err(fail("F needs at least three orbits"));
            }
            if orbits[pinned].len() < 2 {
                return Err(fail("the orbit of ω_0 needs at least two points"));
            }
            if let TowerKind::PinnedCenter { tau, .. } = kind {
                check_central(f, tau)?;
                if tau.apply(*omega0) == *omega0 {
                    return Err(fail("τ must move ω_0"));
                }
            }
            let strict = matches!(kind, TowerKind::PinnedOrbit { .. });
            for (i, o) in orbits.iter().enumerate() {
                if (strict || i != pinned) && f.pointwise_stabilizer(o).is_trivial() {
                    return Err(fail("the pointwise stabilizer of every orbit must be non-trivial"));
                }
            }
        }
        TowerKind::Partition { partition, tau } => {
            if partition.degree() != d {
                return Err(Error::DegreeMismatch { expected: d, found: partition.degree() });
            }
            if partition.is_trivial() {
                return Err(fail("𝒫 must be non-trivial"));
            }
            if f.generators().iter().any(|g| !partition.is_preserved_by(g)) {
                return Err(fail("F must preserve 𝒫"));
            }
            if partition.blocks().iter().any(|b| f.pointwise_stabilizer(b).is_trivial()) {
                return Err(fail("the pointwise stabilizer of every block must be non-trivial"));
            }
            match tau {
                None => {
                    if !f.is_transitive() {
                        return Err(fail("F must be transitive"));
                    }
                    let plus = plus_subgroup(f)?;
                    if !plus.is_abelian() {
                        return Err(fail("F^+ must be abelian"));
                    }
                    if plus.generators().iter().any(|g| !partition.is_fixed_blockwise_by(g)) {
                        return Err(fail("F^+ must preserve every block of 𝒫"));
                    }
                }
                Some(tau) => {
                    if !classify_action(f)?.semiprimitive {
                        return Err(fail("F must be semiprimitive"));
                    }
                    check_central(f, tau)?;
                    if !partition.is_fixed_blockwise_by(tau) {
                        return Err(fail("τ must preserve every block of 𝒫"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn rule(f: &PermGroup, kind: &TowerKind) -> BlockRule {
    let (blocks, pinned) = blocks(f, kind);
    let pinned = (0..blocks.len()).map(|i| Some(i) == pinned).collect();
    BlockRule { blocks, pinned }
}

/// Generators of `F^{(k+1)}` and its order, computed from `F^{(k)}` without
/// enumerating `F^{(k+1)}`.
pub fn tower_step_generators(f: &PermGroup, kind: &TowerKind, level: &BallGroup) -> Result<(Vec<BallAut>, u128)> {
    check_tower_hypotheses(f, kind)?;
    lift_generators(level, &CompatIndex::new(level), &rule(f, kind))
}

/// `F^{(1)} = F, …, F^{(steps)}`.
pub fn build_tower(f: &PermGroup, kind: &TowerKind, steps: usize) -> Result<Vec<BallGroup>> {
    if steps == 0 {
        return Err(Error::Precondition("a tower needs at least one level".into()));
    }
    check_tower_hypotheses(f, kind)?;
    let rule = rule(f, kind);
    let mut levels = alloc::vec![BallGroup::from_local(f)?];
    while levels.len() < steps {
        let top = levels.last().expect("non-empty");
        let (gens, order) = lift_generators(top, &CompatIndex::new(top), &rule)?;
        let next = generate_expected(f.degree(), top.radius() + 1, &gens, order)?;
        levels.push(next);
    }
    Ok(levels)
}

fn claim(text: &str, k: usize) -> Error {
    Error::Inconsistent(alloc::format!("tower claim fails at level {k}: {text}"))
}

/// `F^{(k)} ∩ Φ^k(F^+)`: the elements whose 1-local actions below the
/// leaves all lie in `F^+`.
pub fn plus_part(level: &BallGroup, plus: &PermGroup) -> BallGroup {
    let (d, k) = (level.degree(), level.radius());
    let vertices: Vec<Vec<u8>> = (0..k).flat_map(|r| (0..sphere_size(d, r)).map(move |i| word_at(d, r, i))).collect();
    let keep: Vec<usize> = (0..level.order())
        .filter(|&i| {
            let a = level.element(i);
            vertices.iter().all(|v| plus.contains(a.local_action_bytes(v, 1).leaf_perm()))
        })
        .collect();
    level.subgroup_from_indices(&keep)
}

/// Asserts the finite claims of the recipe for one enumerated level:
/// self-compatibility on the pinned block, non-empty block-wise
/// compatibility sets, non-trivial `C(id, Ω_i)`, and the centrality or
/// abelianness clause of the variant.
pub fn check_tower_level(f: &PermGroup, kind: &TowerKind, level: &BallGroup) -> Result<()> {
    check_tower_hypotheses(f, kind)?;
    let k = level.radius();
    let idx = CompatIndex::new(level);
    let (blocks, pinned) = blocks(f, kind);
    for a in 0..level.order() {
        for (i, b) in blocks.iter().enumerate() {
            let c = idx.compat_all(a, b);
            if c.is_empty() {
                return Err(claim("a block-wise compatibility set is empty", k));
            }
            if Some(i) == pinned && c.binary_search(&(a as u32)).is_err() {
                return Err(claim("an element is not self-compatible on the pinned orbit", k));
            }
        }
    }
    for (i, b) in blocks.iter().enumerate() {
        if Some(i) != pinned && idx.compat_all(level.identity_index(), b).len() < 2 {
            return Err(claim("C(id, Ω_i) is trivial", k));
        }
    }
    if let Some(tau) = kind.tau() {
        let t = BallAut::constant(tau, k)?;
        if !level.contains(&t) {
            return Err(claim("γ_k(τ) does not lie in the level", k));
        }
        if !commutes_with_all(&t, &level.generators()) {
            return Err(claim("γ_k(τ) is not central", k));
        }
    }
    if let TowerKind::Partition { tau: None, .. } = kind {
        let part = plus_part(level, &plus_subgroup(f)?);
        if !part.leaf_group().is_abelian() {
            return Err(claim("F^(k) ∩ Φ^k(F^+) is not abelian", k));
        }
    }
    Ok(())
}

/// Whether `t` commutes with every element of `gens`.
pub fn commutes_with_all(t: &BallAut, gens: &[BallAut]) -> bool {
    gens.iter().all(|g| g.compose(t) == t.compose(g))
}
