use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::ball::{path_labels, sphere_size, step, word_at, word_index, BallAut, BallGroup};
use crate::permcore::Perm;
use crate::{Error, Result};

/// A partial map on the vertices of the labelled tree `T_d`, vertices given
/// as non-backtracking words read from the origin `x`.
///
/// Restrictions of automorphisms to `B(x, n)` are the main instances; the
/// image of a ball need not be centered at `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAut {
    d: usize,
    map: BTreeMap<Vec<u8>, Vec<u8>>,
}

fn walk(from: &[u8], path: &[u8]) -> Vec<u8> {
    let mut y = from.to_vec();
    for &x in path {
        step(&mut y, x);
    }
    y
}

/// All words of length at most `n`, shortest first.
pub(crate) fn ball_words(d: usize, n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..=n).flat_map(move |j| (0..sphere_size(d, j)).map(move |i| word_at(d, j, i)))
}

impl PartialAut {
    /// The automorphism of `B(x, k)` fixing `x` described by `a`.
    pub fn from_ball_aut(a: &BallAut) -> Self {
        let map = ball_words(a.degree(), a.radius()).map(|w| {
            let img = a.image_bytes(&w);
            (w, img)
        });
        PartialAut { d: a.degree(), map: map.collect() }
    }

    /// The restriction to `B(x, n)` of the label-respecting automorphism
    /// mapping `x` to `target`. For a one-letter target this is an
    /// inversion; for targets whose first and last letters differ it is a
    /// translation of length `|target|`.
    pub fn label_respecting(d: usize, n: usize, target: &[usize]) -> Result<Self> {
        crate::ball::check_shape(d, n.max(1))?;
        if target.iter().any(|&x| x >= d) || target.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::Precondition("target must be a non-backtracking word".into()));
        }
        let t: Vec<u8> = target.iter().map(|&x| x as u8).collect();
        let map = ball_words(d, n).map(|w| {
            let img = walk(&t, &w);
            (w, img)
        });
        Ok(PartialAut { d, map: map.collect() })
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    /// Largest `r` with `B(x, r)` inside the domain.
    pub fn radius(&self) -> Option<usize> {
        let mut r = None;
        for j in 0.. {
            if (0..sphere_size(self.d, j)).all(|i| self.map.contains_key(&word_at(self.d, j, i))) {
                r = Some(j);
            } else {
                return r;
            }
        }
        r
    }

    pub fn apply(&self, v: &[usize]) -> Option<Vec<usize>> {
        let v: Vec<u8> = v.iter().map(|&x| x as u8).collect();
        self.map.get(&v).map(|w| w.iter().map(|&x| x as usize).collect())
    }

    /// `self ∘ other` on the vertices where both steps are defined.
    pub fn compose(&self, other: &PartialAut) -> PartialAut {
        let map = other.map.iter().filter_map(|(v, w)| self.map.get(w).map(|u| (v.clone(), u.clone()))).collect();
        PartialAut { d: self.d, map }
    }

    /// Restriction to `B(x, m)`.
    pub fn restrict(&self, m: usize) -> PartialAut {
        let map = self.map.iter().filter(|(v, _)| v.len() <= m).map(|(v, w)| (v.clone(), w.clone())).collect();
        PartialAut { d: self.d, map }
    }

    /// `σ_k(g, v)`, if `B(v, k)` lies in the domain and is mapped onto a
    /// ball.
    pub fn local_action(&self, v: &[usize], k: usize) -> Option<BallAut> {
        let v: Vec<u8> = v.iter().map(|&x| x as u8).collect();
        self.local_action_bytes(&v, k)
    }

    pub(crate) fn local_action_bytes(&self, v: &[u8], k: usize) -> Option<BallAut> {
        let d = self.d;
        let gv = self.map.get(v)?;
        let mut images = Vec::with_capacity(sphere_size(d, k));
        for i in 0..sphere_size(d, k) {
            let u = walk(v, &word_at(d, k, i));
            let labels = path_labels(gv, self.map.get(&u)?);
            if labels.len() != k {
                return None;
            }
            images.push(word_index(d, &labels));
        }
        BallAut::from_leaf_perm(d, k, Perm::from_images(&images).ok()?).ok()
    }

    /// Whether `σ_k(g, v) ∈ F` at every vertex `v` whose `k`-ball lies in
    /// the domain.
    pub fn is_consistent_with(&self, f: &BallGroup) -> bool {
        let k = f.radius();
        self.map.keys().all(|v| match self.local_action_bytes(v, k) {
            Some(a) => f.contains(&a),
            None => true,
        })
    }

    /// The restriction as an element of `Aut(B_{d,n})`, when it fixes `x`
    /// and is defined on `B(x, n)`.
    pub fn to_ball_aut(&self, n: usize) -> Option<BallAut> {
        if self.map.get(&Vec::new())? != &Vec::<u8>::new() {
            return None;
        }
        self.local_action_bytes(&[], n)
    }
}
