use alloc::vec::Vec;

use crate::ball::{BallAut, BallGroup};
use crate::compat::CompatIndex;
use crate::{Error, Result};

/// Largest group a construction will enumerate.
pub const CONSTRUCTION_CAP: usize = 1 << 21;

/// A partition of the directions together with a choice rule per block.
///
/// Unpinned blocks take a common element of `C_F(α, Ω_i)`; pinned blocks
/// take `α` itself, which needs `α` to be self-compatible there.
pub(crate) struct BlockRule {
    pub blocks: Vec<Vec<usize>>,
    pub pinned: Vec<bool>,
}

impl BlockRule {
    pub fn singletons(d: usize) -> Self {
        BlockRule { blocks: (0..d).map(|w| alloc::vec![w]).collect(), pinned: alloc::vec![false; d] }
    }
}

/// Smallest-first generating set of the subgroup of `f` with the given
/// element indices.
pub(crate) fn generating_subset(f: &BallGroup, members: &[u32]) -> Result<Vec<BallAut>> {
    let mut chosen: Vec<BallAut> = Vec::new();
    let mut span = BallGroup::trivial(f.degree(), f.radius())?;
    for &m in members {
        let x = f.element(m as usize);
        if !span.contains(&x) {
            chosen.push(x);
            span = BallGroup::generate(f.degree(), f.radius(), &chosen)?;
        }
    }
    Ok(chosen)
}

/// Generators of `{(α,(α_ω)_ω) | α ∈ F, α_ω chosen by the rule}` together
/// with its expected order.
pub(crate) fn lift_generators(f: &BallGroup, idx: &CompatIndex, rule: &BlockRule) -> Result<(Vec<BallAut>, u128)> {
    let d = f.degree();
    let mut block_of = alloc::vec![usize::MAX; d];
    for (i, b) in rule.blocks.iter().enumerate() {
        for &w in b {
            block_of[w] = i;
        }
    }
    let mut gens = Vec::new();
    for g in f.generators() {
        let gi = f.index_of(&g).expect("generator");
        let l1 = g.level1();
        let mut children = alloc::vec![g.clone(); d];
        for (i, b) in rule.blocks.iter().enumerate() {
            let target = block_of[l1.apply(b[0])];
            if b.iter().any(|&w| block_of[l1.apply(w)] != target) || (rule.pinned[i] && target != i) {
                return Err(Error::Precondition(alloc::format!("generator {g} does not preserve the partition")));
            }
            let options = idx.compat_all(gi, b);
            let child = if rule.pinned[i] {
                if options.binary_search(&(gi as u32)).is_err() {
                    return Err(Error::Precondition(alloc::format!("generator {g} is not self-compatible on block {i}")));
                }
                g.clone()
            } else {
                let first = *options
                    .first()
                    .ok_or_else(|| Error::Precondition(alloc::format!("generator {g} has no compatible element on block {i}")))?;
                f.element(first as usize)
            };
            for &w in b {
                children[w] = child.clone();
            }
        }
        gens.push(BallAut::assemble(&g, &children)?);
    }
    let id = BallAut::identity(d, f.radius())?;
    let mut order = f.order() as u128;
    for (i, b) in rule.blocks.iter().enumerate() {
        if rule.pinned[i] {
            continue;
        }
        let kernel = idx.compat_all(f.identity_index(), b);
        order *= kernel.len() as u128;
        for c in generating_subset(f, &kernel)? {
            let mut children = alloc::vec![id.clone(); d];
            for &w in b {
                children[w] = c.clone();
            }
            gens.push(BallAut::assemble(&id, &children)?);
        }
    }
    Ok((gens, order))
}

/// Generates a group whose order is known in advance, failing early when it
/// exceeds the cap and reporting a mismatch as inconsistent input.
pub(crate) fn generate_expected(d: usize, k: usize, gens: &[BallAut], order: u128) -> Result<BallGroup> {
    if order > CONSTRUCTION_CAP as u128 {
        return Err(Error::Capacity { cap: CONSTRUCTION_CAP });
    }
    let g = match BallGroup::generate_with_cap(d, k, gens, order as usize) {
        Err(Error::Capacity { .. }) => None,
        other => Some(other?),
    };
    let found = g.as_ref().map(BallGroup::order);
    if found != Some(order as usize) {
        return Err(Error::Inconsistent(alloc::format!("expected a group of order {order}, generated {found:?}")));
    }
    Ok(g.expect("order checked"))
}

pub(crate) fn lift(f: &BallGroup, rule: &BlockRule) -> Result<BallGroup> {
    let idx = CompatIndex::new(f);
    let (gens, order) = lift_generators(f, &idx, rule)?;
    generate_expected(f.degree(), f.radius() + 1, &gens, order)
}
