use alloc::vec::Vec;

use super::group::PermGroup;
use crate::{Error, Result};

/// A finite group whose elements are the indices `0..order()`.
pub trait IndexGroup {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;

    /// `g a g⁻¹`.
    fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    fn element_order(&self, a: usize) -> usize {
        let id = self.identity();
        let mut x = a;
        let mut n = 1;
        while x != id {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }
}

/// Cayley table of a permutation group over its canonical element indices.
#[derive(Clone)]
pub struct GroupTable {
    n: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    identity: usize,
}

pub const TABLE_CAP: usize = u16::MAX as usize;

impl GroupTable {
    pub fn from_group(g: &PermGroup) -> Result<Self> {
        let n = g.order();
        if n > TABLE_CAP {
            return Err(Error::Capacity { cap: TABLE_CAP });
        }
        let mut mul = alloc::vec![0u16; n * n];
        let mut inv = alloc::vec![0u16; n];
        for i in 0..n {
            let a = g.element(i);
            for j in 0..n {
                let c = a.compose(g.element(j));
                mul[i * n + j] = g.index_of(&c).expect("group is closed") as u16;
            }
            inv[i] = g.index_of(&a.inverse()).expect("group is closed") as u16;
        }
        Ok(GroupTable { n, mul, inv, identity: g.identity_index() })
    }

    /// Table from an arbitrary multiplication rule on `0..n`.
    pub fn from_fn(n: usize, identity: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if n > TABLE_CAP {
            return Err(Error::Capacity { cap: TABLE_CAP });
        }
        let mut tab = alloc::vec![0u16; n * n];
        let mut inv = alloc::vec![0u16; n];
        for i in 0..n {
            for j in 0..n {
                let c = mul(i, j);
                tab[i * n + j] = c as u16;
                if c == identity {
                    inv[i] = j as u16;
                }
            }
        }
        Ok(GroupTable { n, mul: tab, inv, identity })
    }
}

impl IndexGroup for GroupTable {
    fn order(&self) -> usize {
        self.n
    }
    fn identity(&self) -> usize {
        self.identity
    }
    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }
    #[inline]
    fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }
}

/// The direct power `H^count`, indexed in mixed radix with coordinate 0
/// most significant. Products are computed coordinate-wise on the fly.
pub struct PowerGroup<'a> {
    base: &'a GroupTable,
    count: usize,
    order: usize,
}

impl<'a> PowerGroup<'a> {
    pub fn new(base: &'a GroupTable, count: usize, cap: usize) -> Result<Self> {
        let mut order: usize = 1;
        for _ in 0..count {
            order = order.checked_mul(base.order()).filter(|&o| o <= cap).ok_or(Error::Capacity { cap })?;
        }
        Ok(PowerGroup { base, count, order })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn decode(&self, mut x: usize) -> Vec<usize> {
        let h = self.base.order();
        let mut out = alloc::vec![0; self.count];
        for slot in out.iter_mut().rev() {
            *slot = x % h;
            x /= h;
        }
        out
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords.iter().fold(0, |acc, &c| acc * self.base.order() + c)
    }
}

impl IndexGroup for PowerGroup<'_> {
    fn order(&self) -> usize {
        self.order
    }
    fn identity(&self) -> usize {
        self.encode(&alloc::vec![self.base.identity(); self.count])
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let h = self.base.order();
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.count {
            out += self.base.mul(a % h, b % h) * scale;
            a /= h;
            b /= h;
            scale *= h;
        }
        out
    }
    fn inv(&self, a: usize) -> usize {
        let h = self.base.order();
        let mut a = a;
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.count {
            out += self.base.inv(a % h) * scale;
            a /= h;
            scale *= h;
        }
        out
    }
}
