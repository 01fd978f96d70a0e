//! Subgroup lattices of groups given by index arithmetic.

use alloc::vec::Vec;

use hashbrown::HashSet;

use super::table::IndexGroup;
use crate::{Error, Result};

/// A set of element indices stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    words: Vec<u64>,
    len: usize,
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        Subset { words: alloc::vec![0; n.div_ceil(64)], len: 0 }
    }

    pub fn from_indices(n: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Subset::empty(n);
        for i in idx {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Returns true if `i` was not yet present.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let w = &mut self.words[i / 64];
        let bit = 1u64 << (i % 64);
        if *w & bit == 0 {
            *w |= bit;
            self.len += 1;
            true
        } else {
            false
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + t)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let words: Vec<u64> = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        Subset { words, len }
    }
}

/// A subgroup together with a generating set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub set: Subset,
    pub gens: Vec<usize>,
}

impl core::fmt::Debug for Subset {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.set.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.set.contains(i)
    }

    pub fn elements(&self) -> Vec<usize> {
        self.set.to_vec()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.set == other.set
    }
}

impl Eq for Subgroup {}

pub fn trivial<G: IndexGroup>(g: &G) -> Subgroup {
    Subgroup { set: Subset::from_indices(g.order(), [g.identity()]), gens: Vec::new() }
}

pub fn whole<G: IndexGroup>(g: &G) -> Subgroup {
    let set = Subset::from_indices(g.order(), 0..g.order());
    let gens = generating_set(g, &set);
    Subgroup { set, gens }
}

/// The subgroup generated by `gens`.
pub fn closure<G: IndexGroup>(g: &G, gens: &[usize]) -> Subgroup {
    extend(g, &trivial(g), gens)
}

/// The subgroup generated by `base` and `extra`.
pub fn extend<G: IndexGroup>(g: &G, base: &Subgroup, extra: &[usize]) -> Subgroup {
    let mut set = base.set.clone();
    let mut gens = base.gens.clone();
    let mut elems: Option<Vec<usize>> = None;
    for &s in extra {
        if set.contains(s) {
            continue;
        }
        let list = elems.get_or_insert_with(|| set.to_vec());
        gens.push(s);
        let old = list.len();
        for i in 0..old {
            let y = g.mul(list[i], s);
            if set.insert(y) {
                list.push(y);
            }
        }
        let mut i = old;
        while i < list.len() {
            let x = list[i];
            for &t in &gens {
                let y = g.mul(x, t);
                if set.insert(y) {
                    list.push(y);
                }
            }
            i += 1;
        }
    }
    Subgroup { set, gens }
}

/// A generating set of a subgroup given only by its element set.
pub fn generating_set<G: IndexGroup>(g: &G, set: &Subset) -> Vec<usize> {
    let mut span = trivial(g);
    let mut elems: Vec<usize> = set.to_vec();
    elems.sort_by_key(|&x| core::cmp::Reverse(g.element_order(x)));
    for x in elems {
        if span.order() == set.len() {
            break;
        }
        if !span.contains(x) {
            span = extend(g, &span, &[x]);
        }
    }
    span.gens
}

/// Checks that a set of indices is a subgroup and returns it with generators.
pub fn as_subgroup<G: IndexGroup>(g: &G, set: &Subset) -> Result<Subgroup> {
    if !set.contains(g.identity()) {
        return Err(Error::NotSubgroup("identity missing".into()));
    }
    let gens = generating_set(g, set);
    let span = closure(g, &gens);
    if span.set != *set {
        return Err(Error::NotSubgroup("set not closed under products".into()));
    }
    Ok(span)
}

/// All subgroups, found by adjoining one element at a time to known subgroups.
pub fn all_subgroups<G: IndexGroup>(g: &G, cap: usize) -> Result<Vec<Subgroup>> {
    invariant_subgroups(g, &[], cap)
}

/// All subgroups invariant under the given automorphisms (index permutations).
pub fn invariant_subgroups<G: IndexGroup>(g: &G, autos: &[Vec<usize>], cap: usize) -> Result<Vec<Subgroup>> {
    let n = g.order();
    let mut found: Vec<Subgroup> = alloc::vec![trivial(g)];
    let mut seen: HashSet<Subset> = HashSet::new();
    seen.insert(found[0].set.clone());
    let mut qi = 0;
    while qi < found.len() {
        let h = found[qi].clone();
        let mut covered = h.set.clone();
        for x in 0..n {
            if covered.contains(x) {
                continue;
            }
            for y in h.set.iter() {
                covered.insert(g.mul(y, x));
            }
            let orbit = auto_orbit(x, autos);
            let k = extend(g, &h, &orbit);
            if seen.insert(k.set.clone()) {
                if found.len() >= cap {
                    return Err(Error::Capacity { cap });
                }
                found.push(k);
            }
        }
        qi += 1;
    }
    found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(&b.elements())));
    Ok(found)
}

fn auto_orbit(x: usize, autos: &[Vec<usize>]) -> Vec<usize> {
    let mut orbit = alloc::vec![x];
    let mut i = 0;
    while i < orbit.len() {
        for a in autos {
            let y = a[orbit[i]];
            if !orbit.contains(&y) {
                orbit.push(y);
            }
        }
        i += 1;
    }
    orbit
}

/// Conjugation permutations `x ↦ g x g⁻¹` for each given `g`.
pub fn conjugation_autos<G: IndexGroup>(g: &G, by: &[usize]) -> Vec<Vec<usize>> {
    by.iter().map(|&c| (0..g.order()).map(|x| g.conj(c, x)).collect()).collect()
}

/// Normal subgroups of the whole group.
pub fn normal_subgroups<G: IndexGroup>(g: &G, cap: usize) -> Result<Vec<Subgroup>> {
    let w = whole(g);
    invariant_subgroups(g, &conjugation_autos(g, &w.gens), cap)
}

pub fn conjugate_set<G: IndexGroup>(g: &G, c: usize, s: &Subset) -> Subset {
    Subset::from_indices(g.order(), s.iter().map(|x| g.conj(c, x)))
}

/// Smallest sorted element list among the conjugates of `h` under `ambient`.
pub fn canonical_conjugate<G: IndexGroup>(g: &G, ambient: &[usize], h: &Subset) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for &c in ambient {
        let v = conjugate_set(g, c, h).to_vec();
        if best.as_ref().map_or(true, |b| v < *b) {
            best = Some(v);
        }
    }
    best.unwrap_or_else(|| h.to_vec())
}

/// Fuses subgroups into classes under conjugation by `ambient` elements.
/// Each class is represented by its member with least sorted element list.
pub fn conjugacy_class_reps<G: IndexGroup>(g: &G, ambient: &[usize], subgroups: &[Subgroup]) -> Vec<Subgroup> {
    let mut done: HashSet<Subset> = HashSet::new();
    let mut reps: Vec<Subgroup> = Vec::new();
    for h in subgroups {
        if done.contains(&h.set) {
            continue;
        }
        let mut best = h.set.to_vec();
        for &c in ambient {
            let conj = conjugate_set(g, c, &h.set);
            let v = conj.to_vec();
            if v < best {
                best = v;
            }
            done.insert(conj);
        }
        let set = Subset::from_indices(g.order(), best.iter().copied());
        let gens = generating_set(g, &set);
        reps.push(Subgroup { set, gens });
    }
    reps.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(&b.elements())));
    reps
}

pub fn is_normal_in<G: IndexGroup>(g: &G, h: &Subgroup, k: &Subgroup) -> bool {
    h.set.is_subset(&k.set) && k.gens.iter().all(|&c| h.gens.iter().all(|&x| h.contains(g.conj(c, x))))
}

/// Normal closure of `h` inside `k`.
pub fn normal_closure<G: IndexGroup>(g: &G, h: &Subgroup, k: &Subgroup) -> Subgroup {
    let mut cur = h.clone();
    loop {
        let mut extra = Vec::new();
        for &c in &k.gens {
            for &x in &cur.gens {
                let y = g.conj(c, x);
                if !cur.contains(y) {
                    extra.push(y);
                }
            }
        }
        if extra.is_empty() {
            return cur;
        }
        cur = extend(g, &cur, &extra);
    }
}

/// Commutator subgroup `[a, b]`, normal closure taken in `⟨a, b⟩`.
pub fn commutator<G: IndexGroup>(g: &G, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut comms = Vec::new();
    for &x in &a.gens {
        for &y in &b.gens {
            let c = g.mul(g.mul(x, y), g.inv(g.mul(y, x)));
            comms.push(c);
        }
    }
    let base = closure(g, &comms);
    let mut gens = a.gens.clone();
    gens.extend(b.gens.iter().copied());
    let ab = closure(g, &gens);
    normal_closure(g, &base, &ab)
}

pub fn derived_subgroup<G: IndexGroup>(g: &G, h: &Subgroup) -> Subgroup {
    commutator(g, h, h)
}

pub fn is_solvable<G: IndexGroup>(g: &G, h: &Subgroup) -> bool {
    let mut cur = h.clone();
    loop {
        if cur.order() == 1 {
            return true;
        }
        let next = derived_subgroup(g, &cur);
        if next.order() == cur.order() {
            return false;
        }
        cur = next;
    }
}

pub fn is_nilpotent<G: IndexGroup>(g: &G, h: &Subgroup) -> bool {
    let mut cur = h.clone();
    loop {
        if cur.order() == 1 {
            return true;
        }
        let next = commutator(g, &cur, h);
        if next.order() == cur.order() {
            return false;
        }
        cur = next;
    }
}

pub fn is_abelian<G: IndexGroup>(g: &G, h: &Subgroup) -> bool {
    h.gens.iter().all(|&x| h.gens.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
}

pub fn join<G: IndexGroup>(g: &G, a: &Subgroup, b: &Subgroup) -> Subgroup {
    extend(g, a, &b.gens)
}

/// Depth of `h` as a subnormal subgroup of `k`, or `None` if not subnormal.
pub fn subnormal_depth<G: IndexGroup>(g: &G, h: &Subgroup, k: &Subgroup) -> Option<usize> {
    if !h.set.is_subset(&k.set) {
        return None;
    }
    let mut cur = k.clone();
    let mut depth = 0;
    loop {
        if cur.order() == h.order() {
            return Some(depth);
        }
        let next = normal_closure(g, h, &cur);
        if next.order() == cur.order() {
            return None;
        }
        cur = next;
        depth += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::{Perm, PermGroup};

    fn group(d: usize, gens: &[&[&[usize]]]) -> PermGroup {
        let gens: Vec<Perm> = gens.iter().map(|c| Perm::from_cycles(d, c).unwrap()).collect();
        PermGroup::closure(d, &gens).unwrap()
    }

    #[test]
    fn subgroup_counts() {
        let s3 = group(3, &[&[&[0, 1, 2]], &[&[0, 1]]]);
        let t = s3.table().unwrap();
        assert_eq!(all_subgroups(&t, 1000).unwrap().len(), 6);
        assert_eq!(normal_subgroups(&t, 1000).unwrap().len(), 3);
        let c4 = group(4, &[&[&[0, 1, 2, 3]]]);
        assert_eq!(all_subgroups(&c4.table().unwrap(), 1000).unwrap().len(), 3);
        let s4 = group(4, &[&[&[0, 1, 2, 3]], &[&[0, 1]]]);
        let t4 = s4.table().unwrap();
        assert_eq!(all_subgroups(&t4, 1000).unwrap().len(), 30);
        assert_eq!(normal_subgroups(&t4, 1000).unwrap().len(), 4);
        let all: Vec<usize> = (0..t4.order()).collect();
        let subs = all_subgroups(&t4, 1000).unwrap();
        assert_eq!(conjugacy_class_reps(&t4, &all, &subs).len(), 11);
    }

    #[test]
    fn solvability_and_subnormality() {
        let a5 = group(5, &[&[&[0, 1, 2, 3, 4]], &[&[0, 1, 2]]]);
        let t = a5.table().unwrap();
        assert!(!is_solvable(&t, &whole(&t)));
        let s4 = group(4, &[&[&[0, 1, 2, 3]], &[&[0, 1]]]);
        let t4 = s4.table().unwrap();
        assert!(is_solvable(&t4, &whole(&t4)));
        assert!(!is_nilpotent(&t4, &whole(&t4)));
        let v = s4.index_of(&Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap()).unwrap();
        let h = closure(&t4, &[v]);
        assert_eq!(subnormal_depth(&t4, &h, &whole(&t4)), Some(2));
        let tr = s4.index_of(&Perm::from_cycles(4, &[&[0, 1]]).unwrap()).unwrap();
        assert_eq!(subnormal_depth(&t4, &closure(&t4, &[tr]), &whole(&t4)), None);
    }
}
