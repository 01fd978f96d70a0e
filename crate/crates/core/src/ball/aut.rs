use alloc::vec::Vec;
use core::fmt;

use super::words::{path_labels, sphere_size, step, word_at, word_index, VertexWord};
use crate::permcore::Perm;
use crate::{Error, Result};

/// Largest supported number of leaves.
pub const LEAF_CAP: usize = u16::MAX as usize;

/// Checks that `B_{d,k}` is a supported ball shape.
pub fn check_shape(d: usize, k: usize) -> Result<()> {
    if d < 3 {
        return Err(Error::Precondition(alloc::format!("degree must be at least 3, got {d}")));
    }
    if k == 0 {
        return Err(Error::RadiusOutOfRange { radius: 0, max: usize::MAX });
    }
    let mut leaves: usize = d;
    for _ in 1..k {
        leaves = leaves.checked_mul(d - 1).filter(|&n| n <= LEAF_CAP).ok_or(Error::Capacity { cap: LEAF_CAP })?;
    }
    if leaves > LEAF_CAP {
        return Err(Error::Capacity { cap: LEAF_CAP });
    }
    Ok(())
}

/// An automorphism of the labelled ball `B_{d,k}`.
///
/// Stored as the permutation it induces on the leaves, which are numbered in
/// lexicographic order of their words. The recursive form
/// `(σ_{k-1}(α,b), (σ_{k-1}(α,b_ω))_ω)` is available through [`BallAut::split`]
/// and [`BallAut::assemble`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BallAut {
    d: u16,
    k: u16,
    leaves: Perm,
}

impl BallAut {
    pub fn identity(d: usize, k: usize) -> Result<Self> {
        check_shape(d, k)?;
        Ok(BallAut { d: d as u16, k: k as u16, leaves: Perm::identity(sphere_size(d, k)) })
    }

    /// Radius-1 automorphism acting as `a` on the neighbours of the center.
    pub fn from_local(a: &Perm) -> Result<Self> {
        check_shape(a.degree(), 1)?;
        Ok(BallAut { d: a.degree() as u16, k: 1, leaves: a.clone() })
    }

    /// The automorphism applying `a` to every letter, so that its 1-local
    /// action is `a` at every vertex.
    pub fn constant(a: &Perm, k: usize) -> Result<Self> {
        let d = a.degree();
        check_shape(d, k)?;
        let images: Vec<usize> = (0..sphere_size(d, k))
            .map(|i| {
                let w: Vec<u8> = word_at(d, k, i).iter().map(|&x| a.apply(x as usize) as u8).collect();
                word_index(d, &w)
            })
            .collect();
        Ok(BallAut { d: d as u16, k: k as u16, leaves: Perm::from_images(&images)? })
    }

    /// Validates a permutation of the leaves.
    pub fn from_leaf_perm(d: usize, k: usize, leaves: Perm) -> Result<Self> {
        check_shape(d, k)?;
        let n = sphere_size(d, k);
        if leaves.degree() != n {
            return Err(Error::Dimension(alloc::format!("expected {n} leaves, found {}", leaves.degree())));
        }
        for j in 1..k {
            let q = (d - 1).pow((k - j) as u32);
            for l in 0..n {
                if leaves.apply(l) / q != leaves.apply(l / q * q) / q {
                    return Err(Error::Inconsistent("leaf map does not preserve prefixes".into()));
                }
            }
        }
        Ok(BallAut { d: d as u16, k: k as u16, leaves })
    }

    pub(crate) fn from_leaf_perm_unchecked(d: usize, k: usize, leaves: Perm) -> Self {
        BallAut { d: d as u16, k: k as u16, leaves }
    }

    /// Builds an automorphism from images of all leaf words.
    pub fn from_word_map(d: usize, k: usize, pairs: &[(VertexWord, VertexWord)]) -> Result<Self> {
        check_shape(d, k)?;
        let n = sphere_size(d, k);
        let mut images = alloc::vec![usize::MAX; n];
        for (a, b) in pairs {
            if a.len() != k || b.len() != k {
                return Err(Error::Dimension(alloc::format!("words must have length {k}")));
            }
            if a.bytes().iter().chain(b.bytes()).any(|&x| x as usize >= d) {
                return Err(Error::Dimension(alloc::format!("letters must be below {d}")));
            }
            let i = a.index(d);
            if images[i] != usize::MAX {
                return Err(Error::InvalidPermutation(alloc::format!("word {a} listed twice")));
            }
            images[i] = b.index(d);
        }
        if images.contains(&usize::MAX) {
            return Err(Error::InvalidPermutation("not every leaf word is mapped".into()));
        }
        Self::from_leaf_perm(d, k, Perm::from_images(&images)?)
    }

    pub fn degree(&self) -> usize {
        self.d as usize
    }

    pub fn radius(&self) -> usize {
        self.k as usize
    }

    pub fn leaf_perm(&self) -> &Perm {
        &self.leaves
    }

    pub fn into_leaf_perm(self) -> Perm {
        self.leaves
    }

    pub fn is_identity(&self) -> bool {
        self.leaves.is_identity()
    }

    fn same_shape(&self, other: &BallAut) -> Result<()> {
        if self.d != other.d || self.k != other.k {
            return Err(Error::Dimension(alloc::format!(
                "B_({},{}) against B_({},{})",
                self.d,
                self.k,
                other.d,
                other.k
            )));
        }
        Ok(())
    }

    /// `self ∘ other` computed on leaves.
    pub fn compose(&self, other: &BallAut) -> BallAut {
        BallAut { d: self.d, k: self.k, leaves: self.leaves.compose(&other.leaves) }
    }

    /// `self ∘ other` computed through the recursive product rule
    /// `(α,(α_ω))(β,(β_ω)) = (αβ,(α_{βω}β_ω))`.
    pub fn multiply(&self, other: &BallAut) -> Result<BallAut> {
        self.same_shape(other)?;
        if self.k == 1 {
            return Ok(self.compose(other));
        }
        let (ra, ca) = self.split();
        let (rb, cb) = other.split();
        let root = ra.multiply(&rb)?;
        let b1 = other.level1();
        let children = (0..self.degree()).map(|w| ca[b1.apply(w)].multiply(&cb[w])).collect::<Result<Vec<_>>>()?;
        BallAut::assemble(&root, &children)
    }

    pub fn inverse(&self) -> BallAut {
        BallAut { d: self.d, k: self.k, leaves: self.leaves.inverse() }
    }

    /// Action on the neighbours of the center.
    pub fn level1(&self) -> Perm {
        let q = (self.degree() - 1).pow(self.k as u32 - 1);
        let images: Vec<usize> = (0..self.degree()).map(|w| self.leaves.apply(w * q) / q).collect();
        Perm::from_images(&images).expect("level action of an automorphism")
    }

    /// Image of a vertex word of length at most `k`.
    pub fn apply_word(&self, w: &VertexWord) -> Result<VertexWord> {
        if w.len() > self.radius() || w.bytes().iter().any(|&x| x as usize >= self.degree()) {
            return Err(Error::RadiusOutOfRange { radius: w.len(), max: self.radius() });
        }
        Ok(VertexWord::from_bytes(self.image_bytes(w.bytes())))
    }

    pub(crate) fn image_bytes(&self, w: &[u8]) -> Vec<u8> {
        let d = self.degree();
        let j = w.len();
        if j == 0 {
            return Vec::new();
        }
        let q = (d - 1).pow((self.k as usize - j) as u32);
        word_at(d, j, self.leaves.apply(word_index(d, w) * q) / q)
    }

    /// `π_m(α) = σ_m(α, b)`.
    pub fn project(&self, m: usize) -> Result<BallAut> {
        if m == 0 || m > self.radius() {
            return Err(Error::RadiusOutOfRange { radius: m, max: self.radius() });
        }
        let d = self.degree();
        let q = (d - 1).pow((self.radius() - m) as u32);
        let images: Vec<usize> = (0..sphere_size(d, m)).map(|i| self.leaves.apply(i * q) / q).collect();
        Ok(BallAut { d: self.d, k: m as u16, leaves: Perm::from_images(&images).expect("projection") })
    }

    /// `σ_m(α, b_v)`: the `m`-local action at the vertex `v`, read through the
    /// labellings at `v` and at its image.
    pub fn local_action(&self, v: &VertexWord, m: usize) -> Result<BallAut> {
        if v.bytes().iter().any(|&x| x as usize >= self.degree()) || m == 0 || v.len() + m > self.radius() {
            return Err(Error::RadiusOutOfRange { radius: v.len() + m, max: self.radius() });
        }
        Ok(self.local_action_bytes(v.bytes(), m))
    }

    pub(crate) fn local_action_bytes(&self, v: &[u8], m: usize) -> BallAut {
        if v.is_empty() {
            return self.project(m).expect("radius checked");
        }
        let d = self.degree();
        let av = self.image_bytes(v);
        let mut images = Vec::with_capacity(sphere_size(d, m));
        let mut y: Vec<u8> = Vec::with_capacity(v.len() + m);
        for i in 0..sphere_size(d, m) {
            let u = word_at(d, m, i);
            y.clear();
            y.extend_from_slice(v);
            for &x in &u {
                step(&mut y, x);
            }
            let img = path_labels(&av, &self.image_bytes(&y));
            images.push(word_index(d, &img));
        }
        BallAut { d: self.d, k: m as u16, leaves: Perm::from_images(&images).expect("local action") }
    }

    /// `pr_ω(α) = σ_{k-1}(α, b_ω)`.
    pub fn pr(&self, w: usize) -> Result<BallAut> {
        if self.k < 2 || w >= self.degree() {
            return Err(Error::RadiusOutOfRange { radius: self.radius(), max: 1 });
        }
        Ok(self.local_action_bytes(&[w as u8], self.radius() - 1))
    }

    /// Recursive form `(π_{k-1} α, (pr_ω α)_ω)`; requires `k ≥ 2`.
    pub fn split(&self) -> (BallAut, Vec<BallAut>) {
        assert!(self.k >= 2, "split needs radius at least 2");
        let root = self.project(self.radius() - 1).expect("radius");
        let children = (0..self.degree()).map(|w| self.local_action_bytes(&[w as u8], self.radius() - 1)).collect();
        (root, children)
    }

    /// Inverse of [`BallAut::split`]. Rejects data that is not the recursive
    /// form of an automorphism, in particular when `a_ω ω ≠ a ω`.
    pub fn assemble(root: &BallAut, children: &[BallAut]) -> Result<BallAut> {
        let d = root.degree();
        let k1 = root.radius();
        if children.len() != d {
            return Err(Error::Dimension(alloc::format!("expected {d} children, found {}", children.len())));
        }
        for c in children {
            root.same_shape(c)?;
        }
        let k = k1 + 1;
        check_shape(d, k)?;
        let r1 = root.level1();
        for (w, c) in children.iter().enumerate() {
            if c.level1().apply(w) != r1.apply(w) {
                return Err(Error::Inconsistent(alloc::format!("child {w} moves {w} differently from the root")));
            }
        }
        let n = sphere_size(d, k);
        let mut images = Vec::with_capacity(n);
        let mut img: Vec<u8> = Vec::with_capacity(k);
        for i in 0..n {
            let w = word_at(d, k, i);
            img.clear();
            img.push(r1.apply(w[0] as usize) as u8);
            img.extend(children[w[0] as usize].image_bytes(&w[1..]));
            images.push(word_index(d, &img));
        }
        let out = BallAut { d: d as u16, k: k as u16, leaves: Perm::from_images(&images)? };
        if k >= 3 {
            let (r, c) = out.split();
            if r != *root || c != children {
                return Err(Error::Inconsistent("children disagree with the root on overlaps".into()));
            }
        }
        Ok(out)
    }

    /// Images of all leaf words, in lexicographic order of the source word.
    pub fn word_map(&self) -> Vec<(VertexWord, VertexWord)> {
        let d = self.degree();
        let k = self.radius();
        (0..sphere_size(d, k))
            .map(|i| (VertexWord::from_bytes(word_at(d, k, i)), VertexWord::from_bytes(word_at(d, k, self.leaves.apply(i)))))
            .collect()
    }
}

impl fmt::Debug for BallAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BallAut(d={}, k={}, {})", self.d, self.k, self.leaves)
    }
}

impl fmt::Display for BallAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            return write!(f, "{}", self.leaves);
        }
        let (r, c) = self.split();
        write!(f, "({r}, (")?;
        for (i, x) in c.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "))")
    }
}
