use alloc::vec::Vec;

use super::{check_c_with, CompatIndex};
use crate::ball::{BallAut, BallGroup};
use crate::permcore::{GroupTable, IndexGroup};
use crate::{Error, Result};

const UNSET: u32 = u32::MAX;

/// A map `z: F × Ω → F` stored by element index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cocycle {
    d: usize,
    table: Vec<u32>,
}

/// First axiom failure found by [`Cocycle::verify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleViolation {
    NotCompatible { element: usize, direction: usize },
    CocycleLaw { a: usize, b: usize, direction: usize },
    NotInvolutive { element: usize, direction: usize },
}

impl Cocycle {
    /// Wraps a table listing `z(a, ω)` at position `a·d + ω`.
    pub fn from_values(d: usize, values: Vec<usize>) -> Result<Cocycle> {
        if d == 0 || values.len() % d != 0 || values.iter().any(|&v| v >= values.len() / d) {
            return Err(Error::Dimension("cocycle table shape".into()));
        }
        Ok(Cocycle { d, table: values.into_iter().map(|v| v as u32).collect() })
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> usize {
        self.table.len() / self.d
    }

    /// Index of `z(a, ω)`.
    #[inline]
    pub fn value(&self, a: usize, w: usize) -> usize {
        self.table[a * self.d + w] as usize
    }

    pub fn value_of(&self, f: &BallGroup, a: &BallAut, w: usize) -> Option<BallAut> {
        f.index_of(a).map(|i| f.element(self.value(i, w)))
    }

    /// Builds the cocycle determined by its values on generators through
    /// `z(g·y, ω) = z(g, yω) z(y, ω)`. Returns `None` when the values are
    /// inconsistent or the generators do not generate `F`.
    pub fn extend_from_generators(t: &GroupTable, idx: &CompatIndex, gens: &[(usize, Vec<usize>)]) -> Option<Cocycle> {
        let d = idx.degree();
        let mut table = alloc::vec![UNSET; t.order() * d];
        let mut known = alloc::vec![t.identity()];
        for w in 0..d {
            table[t.identity() * d + w] = t.identity() as u32;
        }
        let gens: Vec<(usize, Vec<u32>)> = gens.iter().map(|(g, v)| (*g, v.iter().map(|&x| x as u32).collect())).collect();
        if !close(t, idx, &mut table, &mut known, &gens, 0) || known.len() != t.order() {
            return None;
        }
        Some(Cocycle { d, table })
    }

    /// Checks compatibility, the cocycle law and involutivity on all
    /// elements and pairs.
    pub fn verify(&self, t: &GroupTable, idx: &CompatIndex) -> core::result::Result<(), CocycleViolation> {
        let (n, d) = (t.order(), self.d);
        for a in 0..n {
            for w in 0..d {
                if !idx.is_compatible(a, w, self.value(a, w)) {
                    return Err(CocycleViolation::NotCompatible { element: a, direction: w });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = t.mul(a, b);
                for w in 0..d {
                    if self.value(ab, w) != t.mul(self.value(a, idx.act(b, w)), self.value(b, w)) {
                        return Err(CocycleViolation::CocycleLaw { a, b, direction: w });
                    }
                }
            }
        }
        for a in 0..n {
            for w in 0..d {
                if self.value(self.value(a, w), w) != a {
                    return Err(CocycleViolation::NotInvolutive { element: a, direction: w });
                }
            }
        }
        Ok(())
    }
}

/// Extends the table over the group generated by `known` and `gens`, where
/// `gens[first..]` are new. Returns false on a conflict with the cocycle law
/// or with involutivity.
fn close(t: &GroupTable, idx: &CompatIndex, table: &mut [u32], known: &mut Vec<usize>, gens: &[(usize, Vec<u32>)], first: usize) -> bool {
    let d = idx.degree();
    let mut zy = alloc::vec![0u32; d];
    let old = known.len();
    let mut i = 0;
    while i < known.len() {
        let x = known[i];
        let from = if i < old { first } else { 0 };
        for (g, zg) in &gens[from..] {
            let y = t.mul(*g, x);
            for w in 0..d {
                let xw = idx.act(x, w);
                zy[w] = t.mul(zg[xw] as usize, table[x * d + w] as usize) as u32;
            }
            if table[y * d] == UNSET {
                table[y * d..y * d + d].copy_from_slice(&zy);
                known.push(y);
            } else if table[y * d..y * d + d] != zy[..] {
                return false;
            }
        }
        i += 1;
    }
    for &a in known.iter() {
        for w in 0..d {
            let b = table[a * d + w] as usize;
            let back = table[b * d + w];
            if back != UNSET && back as usize != a {
                return false;
            }
        }
    }
    true
}

/// All involutive compatibility cocycles of `F`, sorted.
pub fn find_involutive_cocycles(f: &BallGroup) -> Result<Vec<Cocycle>> {
    find_involutive_cocycles_with_limit(f, usize::MAX)
}

/// As [`find_involutive_cocycles`], stopping after `limit` results.
pub fn find_involutive_cocycles_with_limit(f: &BallGroup, limit: usize) -> Result<Vec<Cocycle>> {
    let idx = CompatIndex::new(f);
    if let Some((g, w)) = check_c_with(f, &idx).witness {
        return Err(Error::Precondition(alloc::format!("condition (C) fails at element {g}, direction {w}")));
    }
    let t = f.table()?;
    let d = f.degree();
    let mut gens: Vec<usize> = f.generators().iter().map(|g| f.index_of(g).expect("generator")).collect();
    gens.sort_unstable();
    let mut table = alloc::vec![UNSET; f.order() * d];
    for w in 0..d {
        table[t.identity() * d + w] = t.identity() as u32;
    }
    let mut search = Search { t: &t, idx: &idx, gens: &gens, found: Vec::new(), limit };
    search.run(0, table, alloc::vec![t.identity()], Vec::new());
    let mut found = search.found;
    found.sort();
    Ok(found)
}

struct Search<'a> {
    t: &'a GroupTable,
    idx: &'a CompatIndex,
    gens: &'a [usize],
    found: Vec<Cocycle>,
    limit: usize,
}

impl Search<'_> {
    fn run(&mut self, i: usize, table: Vec<u32>, known: Vec<usize>, chosen: Vec<(usize, Vec<u32>)>) {
        if self.found.len() >= self.limit {
            return;
        }
        let d = self.idx.degree();
        if i == self.gens.len() {
            if known.len() == self.t.order() {
                self.found.push(Cocycle { d, table });
            }
            return;
        }
        let g = self.gens[i];
        if table[g * d] != UNSET {
            self.run(i + 1, table, known, chosen);
            return;
        }
        let options: Vec<&[u32]> = (0..d).map(|w| self.idx.compat(g, w)).collect();
        let mut pick = alloc::vec![0usize; d];
        loop {
            let zg: Vec<u32> = (0..d).map(|w| options[w][pick[w]]).collect();
            let mut tab = table.clone();
            let mut kn = known.clone();
            let mut ch = chosen.clone();
            ch.push((g, zg));
            let first = ch.len() - 1;
            if close(self.t, self.idx, &mut tab, &mut kn, &ch, first) {
                self.run(i + 1, tab, kn, ch);
            }
            let mut w = d;
            loop {
                if w == 0 {
                    return;
                }
                w -= 1;
                pick[w] += 1;
                if pick[w] < options[w].len() {
                    break;
                }
                pick[w] = 0;
            }
        }
    }
}
