use alloc::vec::Vec;

use super::group::PermGroup;
use super::lattice;
use super::perm::Perm;
use crate::{Error, Result};

/// A partition of `{0, ..., d-1}`; blocks are sorted and ordered by least point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionOfPoints {
    blocks: Vec<Vec<usize>>,
}

impl PartitionOfPoints {
    pub fn new(degree: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = alloc::vec![false; degree];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::Precondition("empty block".into()));
            }
            for &x in b {
                if x >= degree || seen[x] {
                    return Err(Error::Precondition("blocks must be disjoint and within range".into()));
                }
                seen[x] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Precondition("blocks must cover every point".into()));
        }
        Ok(Self::normalized(blocks))
    }

    fn normalized(mut blocks: Vec<Vec<usize>>) -> Self {
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        PartitionOfPoints { blocks }
    }

    pub fn singletons(degree: usize) -> Self {
        PartitionOfPoints { blocks: (0..degree).map(|x| alloc::vec![x]).collect() }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn degree(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Block index of each point.
    pub fn block_of(&self) -> Vec<usize> {
        let mut out = alloc::vec![0; self.degree()];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                out[x] = i;
            }
        }
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == 1 || self.blocks.iter().all(|b| b.len() == 1)
    }

    /// Whether `g` maps blocks to blocks.
    pub fn is_preserved_by(&self, g: &Perm) -> bool {
        let of = self.block_of();
        self.blocks.iter().all(|b| b.iter().all(|&x| of[g.apply(x)] == of[g.apply(b[0])]))
    }

    /// Whether `g` maps every block to itself.
    pub fn is_fixed_blockwise_by(&self, g: &Perm) -> bool {
        let of = self.block_of();
        (0..self.degree()).all(|x| of[g.apply(x)] == of[x])
    }
}

/// Classification of a permutation action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionReport {
    pub transitive: bool,
    pub semiregular: bool,
    pub regular: bool,
    pub primitive: bool,
    pub quasiprimitive: bool,
    pub semiprimitive: bool,
    /// Number of orbits on ordered pairs.
    pub rank: usize,
    pub orbits: PartitionOfPoints,
    pub minimal_blocks: Vec<PartitionOfPoints>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

/// The finest block system in which `a` and `b` share a block.
pub fn block_system_containing(g: &PermGroup, a: usize, b: usize) -> PartitionOfPoints {
    let d = g.degree();
    let gens = g.generators_or_elements();
    let mut uf = UnionFind::new(d);
    let mut pending = alloc::vec![(a, b)];
    uf.union(a, b);
    while let Some((x, y)) = pending.pop() {
        for s in gens {
            let (u, v) = (s.apply(x), s.apply(y));
            if uf.union(u, v) {
                pending.push((u, v));
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut slot = alloc::vec![usize::MAX; d];
    for x in 0..d {
        let r = uf.find(x);
        if slot[r] == usize::MAX {
            slot[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[slot[r]].push(x);
    }
    PartitionOfPoints::normalized(blocks)
}

/// Nontrivial block systems whose blocks are minimal, for a transitive group.
pub fn minimal_block_systems(g: &PermGroup) -> Vec<PartitionOfPoints> {
    if !g.is_transitive() || g.degree() < 2 {
        return Vec::new();
    }
    let mut systems: Vec<PartitionOfPoints> = Vec::new();
    for x in 1..g.degree() {
        let p = block_system_containing(g, 0, x);
        if p.blocks.len() > 1 && !systems.contains(&p) {
            systems.push(p);
        }
    }
    let block0 = |p: &PartitionOfPoints| p.blocks[0].clone();
    let mut minimal: Vec<PartitionOfPoints> = systems
        .iter()
        .filter(|p| {
            let b = block0(p);
            !systems.iter().any(|q| {
                let c = block0(q);
                c.len() < b.len() && c.iter().all(|x| b.contains(x))
            })
        })
        .cloned()
        .collect();
    minimal.sort();
    minimal
}

/// Number of orbits on ordered pairs of points.
pub fn orbital_count(g: &PermGroup) -> usize {
    let d = g.degree();
    let mut uf = UnionFind::new(d * d);
    for s in g.generators_or_elements() {
        for x in 0..d {
            for y in 0..d {
                uf.union(x * d + y, s.apply(x) * d + s.apply(y));
            }
        }
    }
    (0..d * d).filter(|&i| uf.find(i) == i).count()
}

/// Number of orbits of the stabilizer of 0.
pub fn stabilizer_orbit_count(g: &PermGroup) -> usize {
    g.stabilizer(0).orbits().len()
}

pub fn classify_action(g: &PermGroup) -> Result<ActionReport> {
    let d = g.degree();
    if d < 2 {
        return Err(Error::Precondition("classification needs degree at least 2".into()));
    }
    let transitive = g.is_transitive();
    let semiregular = (0..d).all(|x| g.stabilizer(x).is_trivial());
    let regular = transitive && semiregular;
    let minimal_blocks = minimal_block_systems(g);
    let primitive = transitive && minimal_blocks.is_empty();
    let (mut quasiprimitive, mut semiprimitive) = (false, false);
    if transitive {
        let t = g.table()?;
        let normals = lattice::normal_subgroups(&t, 100_000)?;
        quasiprimitive = true;
        semiprimitive = true;
        for n in &normals {
            if n.order() == 1 {
                continue;
            }
            let sub = g.subgroup_from_indices(&n.elements());
            let tr = sub.is_transitive();
            let semi = (0..d).all(|x| sub.stabilizer(x).is_trivial());
            if !tr {
                quasiprimitive = false;
                if !semi {
                    semiprimitive = false;
                }
            }
        }
    }
    let orbits = PartitionOfPoints::normalized(g.orbits());
    Ok(ActionReport {
        transitive,
        semiregular,
        regular,
        primitive,
        quasiprimitive,
        semiprimitive,
        rank: orbital_count(g),
        orbits,
        minimal_blocks,
    })
}
