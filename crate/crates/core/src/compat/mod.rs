//! Compatibility sets, conditions (C) and (D), the maximal (C)-subgroup and
//! involutive compatibility cocycles.
//!
//! For `k ≥ 2`, `β ∈ C_F(α, ω)` exactly when `π_{k-1} β = pr_ω α` and
//! `pr_ω β = π_{k-1} α`. For `k = 1` the condition is `β(ω) = α(ω)`.

mod cocycle;

use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::ball::{BallAut, BallGroup};
use crate::permcore::Perm;
use crate::{Error, Result};

pub use cocycle::{find_involutive_cocycles, find_involutive_cocycles_with_limit, Cocycle, CocycleViolation};

const NONE: u32 = u32::MAX;

/// Compatibility data of every element of a group in every direction.
///
/// Elements are grouped into classes per direction by the pair
/// `(π_{k-1} β, pr_ω β)`; the compatibility set of `α` in direction `ω` is
/// the class with pair `(pr_ω α, π_{k-1} α)`.
pub struct CompatIndex {
    d: usize,
    k: usize,
    order: usize,
    act: Vec<u8>,
    class_of: Vec<Vec<u32>>,
    want: Vec<Vec<u32>>,
    members: Vec<Vec<Vec<u32>>>,
}

struct Interner(HashMap<Perm, u32>);

impl Interner {
    fn id(&mut self, p: Perm) -> u32 {
        let n = self.0.len() as u32;
        *self.0.entry(p).or_insert(n)
    }
}

impl CompatIndex {
    pub fn new(f: &BallGroup) -> Self {
        let (d, k, n) = (f.degree(), f.radius(), f.order());
        let mut act = Vec::with_capacity(n * d);
        let mut keys: Vec<Vec<(u32, u32)>> = alloc::vec![Vec::with_capacity(n); d];
        let mut wants: Vec<Vec<(u32, u32)>> = alloc::vec![Vec::with_capacity(n); d];
        let mut interner = Interner(HashMap::new());
        for i in 0..n {
            let a = f.element(i);
            let l1 = a.level1();
            act.extend((0..d).map(|w| l1.apply(w) as u8));
            if k == 1 {
                for w in 0..d {
                    let x = l1.apply(w) as u32;
                    keys[w].push((x, 0));
                    wants[w].push((x, 0));
                }
            } else {
                let (root, children) = a.split();
                let r = interner.id(root.into_leaf_perm());
                for (w, c) in children.into_iter().enumerate() {
                    let c = interner.id(c.into_leaf_perm());
                    keys[w].push((r, c));
                    wants[w].push((c, r));
                }
            }
        }
        let mut class_of = Vec::with_capacity(d);
        let mut want = Vec::with_capacity(d);
        let mut members = Vec::with_capacity(d);
        for w in 0..d {
            let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
            let mut cls = Vec::with_capacity(n);
            let mut mem: Vec<Vec<u32>> = Vec::new();
            for (i, key) in keys[w].iter().enumerate() {
                let next = ids.len() as u32;
                let c = *ids.entry(*key).or_insert(next);
                if c as usize == mem.len() {
                    mem.push(Vec::new());
                }
                mem[c as usize].push(i as u32);
                cls.push(c);
            }
            want.push(wants[w].iter().map(|key| ids.get(key).copied().unwrap_or(NONE)).collect());
            class_of.push(cls);
            members.push(mem);
        }
        CompatIndex { d, k, order: n, act, class_of, want, members }
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn radius(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `a(ω)` for the element with index `a`.
    #[inline]
    pub fn act(&self, a: usize, w: usize) -> usize {
        self.act[a * self.d + w] as usize
    }

    /// Indices of `C_F(a, ω)`, sorted.
    pub fn compat(&self, a: usize, w: usize) -> &[u32] {
        match self.want[w][a] {
            NONE => &[],
            c => &self.members[w][c as usize],
        }
    }

    /// Indices of `C_F(a, S) = ⋂_{ω∈S} C_F(a, ω)`, sorted.
    pub fn compat_all(&self, a: usize, dirs: &[usize]) -> Vec<u32> {
        let Some((&first, rest)) = dirs.split_first() else {
            return (0..self.order as u32).collect();
        };
        let mut out: Vec<u32> = self.compat(a, first).to_vec();
        for &w in rest {
            let c = self.want[w][a];
            out.retain(|&b| c != NONE && self.class_of[w][b as usize] == c);
        }
        out
    }

    pub fn is_compatible(&self, a: usize, w: usize, b: usize) -> bool {
        let c = self.want[w][a];
        c != NONE && self.class_of[w][b] == c
    }
}

/// Outcome of a condition check; the witness is a failing
/// `(element index, direction)` pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConditionCheck {
    pub holds: bool,
    pub witness: Option<(usize, usize)>,
}

impl ConditionCheck {
    fn from_witness(witness: Option<(usize, usize)>) -> Self {
        ConditionCheck { holds: witness.is_none(), witness }
    }
}

/// `C_F(α, ω)`.
pub fn compat_set(f: &BallGroup, a: &BallAut, w: usize) -> Result<Vec<BallAut>> {
    let i = f.index_of(a).ok_or_else(|| Error::Membership("element not in the group".into()))?;
    if w >= f.degree() {
        return Err(Error::Precondition(alloc::format!("direction {w} out of range")));
    }
    let idx = CompatIndex::new(f);
    Ok(idx.compat(i, w).iter().map(|&b| f.element(b as usize)).collect())
}

fn generator_indices(f: &BallGroup) -> Vec<usize> {
    let mut gens: Vec<usize> = f.generators().iter().map(|g| f.index_of(g).expect("generator")).collect();
    gens.sort_unstable();
    gens
}

/// Condition (C), checked on a generating set.
pub fn check_c(f: &BallGroup) -> ConditionCheck {
    check_c_with(f, &CompatIndex::new(f))
}

pub fn check_c_with(f: &BallGroup, idx: &CompatIndex) -> ConditionCheck {
    let witness = generator_indices(f)
        .into_iter()
        .find_map(|g| (0..f.degree()).find(|&w| idx.compat(g, w).is_empty()).map(|w| (g, w)));
    ConditionCheck::from_witness(witness)
}

/// Condition (C), checked on every element.
pub fn check_c_elements(f: &BallGroup) -> ConditionCheck {
    let idx = CompatIndex::new(f);
    let witness = (0..f.order()).find_map(|a| (0..f.degree()).find(|&w| idx.compat(a, w).is_empty()).map(|w| (a, w)));
    ConditionCheck::from_witness(witness)
}

/// Condition (D): `C_F(id, ω) = {id}` for every `ω`. The witness names a
/// nontrivial element of some `C_F(id, ω)`.
pub fn check_d(f: &BallGroup) -> ConditionCheck {
    check_d_with(f, &CompatIndex::new(f))
}

pub fn check_d_with(f: &BallGroup, idx: &CompatIndex) -> ConditionCheck {
    let id = f.identity_index();
    let witness = (0..f.degree()).find_map(|w| idx.compat(id, w).iter().find(|&&b| b as usize != id).map(|&b| (b as usize, w)));
    ConditionCheck::from_witness(witness)
}

/// The unique maximal subgroup `C(F)` satisfying (C).
///
/// Elements without a compatible partner inside the current candidate set
/// are removed until nothing changes.
pub fn c_core(f: &BallGroup) -> Result<BallGroup> {
    let idx = CompatIndex::new(f);
    let (n, d) = (f.order(), f.degree());
    let mut alive = alloc::vec![true; n];
    let mut count: Vec<Vec<u32>> = idx.members.iter().map(|m| m.iter().map(|c| c.len() as u32).collect()).collect();
    let mut wanters: Vec<Vec<Vec<u32>>> = idx.members.iter().map(|m| alloc::vec![Vec::new(); m.len()]).collect();
    for w in 0..d {
        for a in 0..n {
            let c = idx.want[w][a];
            if c != NONE {
                wanters[w][c as usize].push(a as u32);
            }
        }
    }
    let mut queue: Vec<usize> = (0..n).filter(|&a| (0..d).any(|w| idx.want[w][a] == NONE)).collect();
    while let Some(a) = queue.pop() {
        if !alive[a] {
            continue;
        }
        alive[a] = false;
        for w in 0..d {
            let c = idx.class_of[w][a] as usize;
            count[w][c] -= 1;
            if count[w][c] == 0 {
                queue.extend(wanters[w][c].iter().map(|&b| b as usize).filter(|&b| alive[b]));
            }
        }
    }
    let keep: Vec<BallAut> = (0..n).filter(|&a| alive[a]).map(|a| f.element(a)).collect();
    BallGroup::from_elements(f.degree(), f.radius(), keep)
        .map_err(|_| Error::Inconsistent("compatibility refinement did not produce a subgroup".into()))
}
