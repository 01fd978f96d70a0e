use alloc::collections::VecDeque;
use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};

use super::perm::Perm;
use super::table::GroupTable;
use crate::{Error, Result};

/// Default bound on the number of elements a closure may produce.
pub const DEFAULT_CAP: usize = 10_000_000;

/// A finite permutation group held as generators plus its full element list.
///
/// Elements are sorted lexicographically by image table, so element indices
/// are canonical.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        Self::from_sorted(degree, Vec::new(), alloc::vec![Perm::identity(degree)])
    }

    pub fn closure(degree: usize, gens: &[Perm]) -> Result<Self> {
        Self::closure_with_cap(degree, gens, DEFAULT_CAP)
    }

    pub fn closure_with_cap(degree: usize, gens: &[Perm], cap: usize) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut seen: HashSet<Perm> = HashSet::new();
        let mut elements = Vec::new();
        let id = Perm::identity(degree);
        seen.insert(id.clone());
        elements.push(id);
        let mut i = 0;
        while i < elements.len() {
            for g in &gens {
                let y = g.compose(&elements[i]);
                if !seen.contains(&y) {
                    if elements.len() >= cap {
                        return Err(Error::Capacity { cap });
                    }
                    seen.insert(y.clone());
                    elements.push(y);
                }
            }
            i += 1;
        }
        elements.sort_unstable();
        Ok(Self::from_sorted(degree, gens, elements))
    }

    /// Builds a group from a complete element list, verifying closure.
    pub fn from_elements(degree: usize, mut elements: Vec<Perm>) -> Result<Self> {
        for e in &elements {
            if e.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: e.degree() });
            }
        }
        elements.sort_unstable();
        elements.dedup();
        let candidate = Self::from_sorted(degree, Vec::new(), elements);
        let gens = candidate.greedy_generators();
        let closed = Self::closure_with_cap(degree, &gens, candidate.order() + 1)
            .map_err(|_| Error::NotSubgroup("element list is not closed".into()))?;
        if closed.order() != candidate.order() {
            return Err(Error::NotSubgroup("element list is not closed".into()));
        }
        Ok(Self::from_sorted(degree, gens, candidate.elements))
    }

    /// Assumes `elements` is a sorted, duplicate-free subgroup.
    pub(crate) fn from_sorted(degree: usize, generators: Vec<Perm>, elements: Vec<Perm>) -> Self {
        let index = elements.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        PermGroup { degree, generators, elements, index }
    }

    /// Subgroup spanned by the given element indices (assumed closed).
    pub(crate) fn subgroup_from_indices(&self, idx: &[usize]) -> PermGroup {
        let mut idx = idx.to_vec();
        idx.sort_unstable();
        let elements: Vec<Perm> = idx.iter().map(|&i| self.elements[i].clone()).collect();
        let mut g = Self::from_sorted(self.degree, Vec::new(), elements);
        g.generators = g.greedy_generators();
        g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|e| other.contains(e))
    }

    /// Canonical multiplication table; limited to 65535 elements.
    pub fn table(&self) -> Result<GroupTable> {
        GroupTable::from_group(self)
    }

    /// A small generating set: elements of largest order first, skipping
    /// those already generated.
    pub fn greedy_generators(&self) -> Vec<Perm> {
        if self.order() == 1 {
            return Vec::new();
        }
        let mut order: Vec<(usize, usize)> =
            self.elements.iter().enumerate().map(|(i, e)| (e.order(), i)).collect();
        order.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut gens: Vec<Perm> = Vec::new();
        let mut span: HashSet<Perm> = HashSet::new();
        span.insert(Perm::identity(self.degree));
        for (_, i) in order {
            if span.len() == self.order() {
                break;
            }
            let e = &self.elements[i];
            if span.contains(e) {
                continue;
            }
            gens.push(e.clone());
            let mut list: Vec<Perm> = span.iter().cloned().collect();
            let mut j = 0;
            while j < list.len() {
                for g in &gens {
                    let y = g.compose(&list[j]);
                    if span.insert(y.clone()) {
                        list.push(y);
                    }
                }
                j += 1;
            }
        }
        gens
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let gens = self.generators_or_elements();
        let mut seen = alloc::vec![false; self.degree];
        let mut out = alloc::vec![x];
        seen[x] = true;
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for g in gens {
                let z = g.apply(y);
                if !seen[z] {
                    seen[z] = true;
                    out.push(z);
                    queue.push_back(z);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Orbits sorted by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = alloc::vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !seen[x] {
                let o = self.orbit(x);
                for &y in &o {
                    seen[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    pub fn stabilizer(&self, x: usize) -> PermGroup {
        self.filter(|p| p.apply(x) == x)
    }

    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        self.filter(|p| points.iter().all(|&x| p.apply(x) == x))
    }

    pub fn setwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        let mut member = alloc::vec![false; self.degree];
        for &x in points {
            member[x] = true;
        }
        self.filter(|p| points.iter().all(|&x| member[p.apply(x)]))
    }

    /// Subgroup of elements satisfying a predicate closed under products.
    pub(crate) fn filter(&self, keep: impl Fn(&Perm) -> bool) -> PermGroup {
        let idx: Vec<usize> = (0..self.order()).filter(|&i| keep(&self.elements[i])).collect();
        self.subgroup_from_indices(&idx)
    }

    /// The subgroup generated by some elements of this group.
    pub fn subgroup(&self, gens: &[Perm]) -> Result<PermGroup> {
        for g in gens {
            if !self.contains(g) {
                return Err(Error::Membership("generator not in group".into()));
            }
        }
        PermGroup::closure(self.degree, gens)
    }

    pub fn conjugate_by(&self, g: &Perm) -> PermGroup {
        let gi = g.inverse();
        let mut elements: Vec<Perm> = self.elements.iter().map(|e| g.compose(e).compose(&gi)).collect();
        elements.sort_unstable();
        let generators = self.generators.iter().map(|e| g.compose(e).compose(&gi)).collect();
        Self::from_sorted(self.degree, generators, elements)
    }

    pub fn is_normalized_by(&self, g: &Perm) -> bool {
        let gi = g.inverse();
        self.generators_or_elements().iter().all(|e| self.contains(&g.compose(e).compose(&gi)))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators_or_elements();
        gens.iter().all(|a| gens.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    pub fn center(&self) -> PermGroup {
        let gens = self.generators_or_elements().to_vec();
        self.filter(|p| gens.iter().all(|g| g.compose(p) == p.compose(g)))
    }

    /// Generators if recorded, otherwise all elements.
    pub(crate) fn generators_or_elements(&self) -> &[Perm] {
        if self.generators.is_empty() && self.order() > 1 {
            &self.elements
        } else {
            &self.generators
        }
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl core::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "PermGroup(degree {}, order {}, generators {:?})", self.degree, self.order(), self.generators)
    }
}
