use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::ControlFlow;

use hashbrown::HashMap;

use crate::ball::{path_labels, sphere_size, step, word_at, word_index, BallAut, BallGroup};
use crate::compat::{check_c, CompatIndex};
use crate::permcore::Perm;
use crate::{Error, Result};

/// How `extend_to_ball` picks among the admissible local actions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chooser {
    /// The first admissible element of `F` at every vertex.
    Deterministic,
    /// Every extension, each exactly once.
    Exhaustive,
}

/// Extends elements of `U_k(F)_x|_{B(x,m)}` to `B(x, m+1)`, one vertex at
/// depth `m+1-k` at a time.
pub(crate) struct Extender<'a> {
    f: &'a BallGroup,
    by_projection: HashMap<Perm, Vec<usize>>,
}

impl<'a> Extender<'a> {
    pub fn new(f: &'a BallGroup) -> Result<Self> {
        if let Some((g, w)) = check_c(f).witness {
            return Err(Error::Precondition(alloc::format!("condition (C) fails at element {g}, direction {w}")));
        }
        let k = f.radius();
        let mut by_projection: HashMap<Perm, Vec<usize>> = HashMap::new();
        for i in 0..f.order() {
            let key = if k == 1 { Perm::identity(1) } else { f.element(i).project(k - 1)?.into_leaf_perm() };
            by_projection.entry(key).or_default().push(i);
        }
        Ok(Extender { f, by_projection })
    }

    /// Elements `β ∈ F` that can serve as `σ_k(g', v)` for an extension `g'`
    /// of `g` (radius `m`) to radius `m+1`, where `|v| = m+1-k`.
    fn candidates(&self, g: &BallAut, v: &[u8]) -> Vec<usize> {
        let (d, k) = (self.f.degree(), self.f.radius());
        let key = if k == 1 { Perm::identity(1) } else { g.local_action_bytes(v, k - 1).into_leaf_perm() };
        let Some(bucket) = self.by_projection.get(&key) else { return Vec::new() };
        let gv = g.image_bytes(v);
        let back: Vec<(Vec<u8>, Vec<u8>)> = match v.last() {
            None => Vec::new(),
            Some(&b) => (0..sphere_size(d, k))
                .map(|i| word_at(d, k, i))
                .filter(|w| w[0] == b)
                .map(|w| {
                    let mut u = v.to_vec();
                    for &x in &w {
                        step(&mut u, x);
                    }
                    let img = path_labels(&gv, &g.image_bytes(&u));
                    (w, img)
                })
                .collect(),
        };
        bucket
            .iter()
            .copied()
            .filter(|&i| {
                let beta = self.f.element(i);
                back.iter().all(|(w, img)| beta.image_bytes(w) == *img)
            })
            .collect()
    }

    /// Vertices at depth `m+1-k` and their candidate lists.
    pub fn choices(&self, g: &BallAut) -> (Vec<Vec<u8>>, Vec<Vec<usize>>) {
        let d = self.f.degree();
        let j = g.radius() + 1 - self.f.radius();
        let vertices: Vec<Vec<u8>> = (0..sphere_size(d, j)).map(|i| word_at(d, j, i)).collect();
        let lists = vertices.iter().map(|v| self.candidates(g, v)).collect();
        (vertices, lists)
    }

    /// The extension of `g` whose local action at `vertices[i]` is
    /// `F[picked[i]]`.
    pub fn assemble(&self, g: &BallAut, vertices: &[Vec<u8>], picked: &[usize]) -> BallAut {
        let d = self.f.degree();
        let m = g.radius() + 1;
        let j = m - self.f.radius();
        let per_vertex = sphere_size(d, m) / vertices.len();
        let betas: Vec<BallAut> = picked.iter().map(|&i| self.f.element(i)).collect();
        let images: Vec<usize> = (0..sphere_size(d, m))
            .map(|i| {
                let u = word_at(d, m, i);
                let mut img = g.image_bytes(&u[..j]);
                img.extend(betas[i / per_vertex].image_bytes(&u[j..]));
                word_index(d, &img)
            })
            .collect();
        BallAut::from_leaf_perm_unchecked(d, m, Perm::from_images(&images).expect("extension is a bijection"))
    }

    fn dfs(&self, g: &BallAut, n: usize, visit: &mut dyn FnMut(&BallAut) -> ControlFlow<()>) -> ControlFlow<()> {
        if g.radius() == n {
            return visit(g);
        }
        let (vertices, lists) = self.choices(g);
        if lists.iter().any(Vec::is_empty) {
            return ControlFlow::Continue(());
        }
        let mut pos = alloc::vec![0usize; lists.len()];
        loop {
            let picked: Vec<usize> = pos.iter().zip(&lists).map(|(&p, l)| l[p]).collect();
            self.dfs(&self.assemble(g, &vertices, &picked), n, visit)?;
            let mut i = 0;
            loop {
                if i == pos.len() {
                    return ControlFlow::Continue(());
                }
                pos[i] += 1;
                if pos[i] < lists[i].len() {
                    break;
                }
                pos[i] = 0;
                i += 1;
            }
        }
    }
}

fn check_seed(f: &BallGroup, seed: &BallAut, n: usize) -> Result<()> {
    if !f.contains(seed) {
        return Err(Error::Membership("seed must lie in F".into()));
    }
    if n < f.radius() {
        return Err(Error::RadiusOutOfRange { radius: n, max: usize::MAX });
    }
    crate::ball::check_shape(f.degree(), n)
}

/// Calls `visit` on every `g ∈ U_k(F)_x|_{B(x,n)}` restricting to `seed` on
/// `B(x,k)`, each exactly once, in a fixed order. Stops early when `visit`
/// breaks.
pub fn for_each_extension(
    f: &BallGroup,
    seed: &BallAut,
    n: usize,
    mut visit: impl FnMut(&BallAut) -> ControlFlow<()>,
) -> Result<()> {
    check_seed(f, seed, n)?;
    let e = Extender::new(f)?;
    let _ = e.dfs(seed, n, &mut visit);
    Ok(())
}

/// One extension of `seed` to `B(x, n)`, choosing the admissible element
/// with index `pick(count)` among `count` options at every vertex.
pub fn extend_with(f: &BallGroup, seed: &BallAut, n: usize, mut pick: impl FnMut(usize) -> usize) -> Result<BallAut> {
    check_seed(f, seed, n)?;
    let e = Extender::new(f)?;
    let mut g = seed.clone();
    while g.radius() < n {
        let (vertices, lists) = e.choices(&g);
        let mut picked = Vec::with_capacity(lists.len());
        for l in &lists {
            if l.is_empty() {
                return Err(Error::Inconsistent("no admissible local action; (C) should prevent this".into()));
            }
            picked.push(l[pick(l.len()) % l.len()]);
        }
        g = e.assemble(&g, &vertices, &picked);
    }
    Ok(g)
}

/// Extensions of `seed ∈ F` to elements of `U_k(F)_x|_{B(x,n)}`: a single
/// one or all of them. Exhaustive mode fails once more than `cap` are found.
pub fn extend_to_ball(f: &BallGroup, seed: &BallAut, n: usize, chooser: Chooser, cap: usize) -> Result<Vec<BallAut>> {
    match chooser {
        Chooser::Deterministic => Ok(alloc::vec![extend_with(f, seed, n, |_| 0)?]),
        Chooser::Exhaustive => {
            let mut out = Vec::new();
            let mut over = false;
            for_each_extension(f, seed, n, |g| {
                if out.len() == cap {
                    over = true;
                    return ControlFlow::Break(());
                }
                out.push(g.clone());
                ControlFlow::Continue(())
            })?;
            if over {
                return Err(Error::Capacity { cap });
            }
            Ok(out)
        }
    }
}

/// An exact count held as a prime factorization.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RestrictionCount {
    primes: BTreeMap<u64, u64>,
}

impl RestrictionCount {
    fn one() -> Self {
        RestrictionCount::default()
    }

    fn multiply(&mut self, mut x: u64, times: u64) {
        assert!(x > 0, "factors are group orders");
        let mut p = 2;
        while p * p <= x {
            while x % p == 0 {
                *self.primes.entry(p).or_default() += times;
                x /= p;
            }
            p += 1;
        }
        if x > 1 {
            *self.primes.entry(x).or_default() += times;
        }
    }

    /// Prime factorization as `(prime, exponent)` pairs.
    pub fn factors(&self) -> Vec<(u64, u64)> {
        self.primes.iter().map(|(&p, &e)| (p, e)).collect()
    }

    /// The value, when it is below `2^63`.
    pub fn value(&self) -> Option<u64> {
        let mut v: u64 = 1;
        for (&p, &e) in &self.primes {
            for _ in 0..e {
                v = v.checked_mul(p).filter(|&v| v < 1 << 63)?;
            }
        }
        Some(v)
    }
}

impl fmt::Display for RestrictionCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.value() {
            return write!(f, "{v}");
        }
        let parts: Vec<alloc::string::String> = self
            .primes
            .iter()
            .map(|(p, e)| if *e == 1 { alloc::format!("{p}") } else { alloc::format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" · "))
    }
}

/// Number of restrictions to `B(x, n)` of elements of `U_k(F)_x`.
///
/// With (C) the restrictions to `B(x, k)` are exactly `F`, and each step
/// from radius `m` to `m+1` multiplies by `|C_F(id, ω)|` for every vertex at
/// depth `m+1-k` whose last letter is `ω`. Only the stabilizer count is
/// supported.
pub fn count_restrictions(f: &BallGroup, n: usize, stabilizer_only: bool) -> Result<RestrictionCount> {
    if !stabilizer_only {
        return Err(Error::Unsupported("only restrictions of the vertex stabilizer are counted".into()));
    }
    if let Some((g, w)) = check_c(f).witness {
        return Err(Error::Precondition(alloc::format!("condition (C) fails at element {g}, direction {w}")));
    }
    let (d, k) = (f.degree(), f.radius());
    if n < k {
        return Err(Error::RadiusOutOfRange { radius: n, max: usize::MAX });
    }
    let idx = CompatIndex::new(f);
    let fibers: Vec<u64> = (0..d).map(|w| idx.compat(f.identity_index(), w).len() as u64).collect();
    let mut count = RestrictionCount::one();
    count.multiply(f.order() as u64, 1);
    for m in k..n {
        let j = m + 1 - k;
        for &c in &fibers {
            if j == 0 {
                continue;
            }
            count.multiply(c, (sphere_size(d, j) / d) as u64);
        }
    }
    Ok(count)
}

/// The same count obtained by listing every extension of every `α ∈ F`.
/// Fails once more than `cap` restrictions are found.
pub fn count_restrictions_exhaustive(f: &BallGroup, n: usize, cap: u64) -> Result<u64> {
    let mut total: u64 = 0;
    for seed in f.elements() {
        let mut over = false;
        for_each_extension(f, &seed, n, |_| {
            total += 1;
            if total > cap {
                over = true;
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        })?;
        if over {
            return Err(Error::Capacity { cap: cap as usize });
        }
    }
    Ok(total)
}
