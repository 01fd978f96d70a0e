use alloc::vec::Vec;

use super::phi::phi_power;
use crate::ball::{sphere_size, word_at, BallGroup};
use crate::permcore::{Perm, PermGroup};
use crate::{Error, Result};

/// A homomorphism `ρ: F → A` into a finite abelian group
/// `A = ℤ/m_1 × ⋯ × ℤ/m_r`, tabulated on all of `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianHom {
    f: PermGroup,
    moduli: Vec<u32>,
    values: Vec<Vec<u32>>,
}

impl AbelianHom {
    /// Extends prescribed values on generators of `F`; fails if they do not
    /// define a homomorphism or do not cover a generating set.
    pub fn from_generators(f: &PermGroup, moduli: Vec<u32>, images: &[(Perm, Vec<u32>)]) -> Result<Self> {
        if moduli.contains(&0) {
            return Err(Error::Precondition("moduli must be positive".into()));
        }
        for (g, v) in images {
            if !f.contains(g) || v.len() != moduli.len() {
                return Err(Error::Precondition(alloc::format!("bad image for {g}")));
            }
        }
        let n = f.order();
        let zero = alloc::vec![0u32; moduli.len()];
        let mut values: Vec<Option<Vec<u32>>> = alloc::vec![None; n];
        let id = f.identity_index();
        values[id] = Some(zero);
        let mut queue = alloc::vec![id];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            let vx = values[x].clone().expect("visited");
            for (g, vg) in images {
                let y = f.index_of(&g.compose(f.element(x))).expect("closed");
                let vy: Vec<u32> = vg.iter().zip(&vx).zip(&moduli).map(|((a, b), m)| (a % m + b) % m).collect();
                match &values[y] {
                    None => {
                        values[y] = Some(vy);
                        queue.push(y);
                    }
                    Some(old) if *old != vy => {
                        return Err(Error::Precondition("the prescribed values do not define a homomorphism".into()))
                    }
                    _ => {}
                }
            }
            i += 1;
        }
        if queue.len() != n {
            return Err(Error::Precondition("ρ must be given on a generating set".into()));
        }
        Ok(AbelianHom { f: f.clone(), moduli, values: values.into_iter().map(|v| v.expect("all visited")).collect() })
    }

    /// The sign character into `ℤ/2`.
    pub fn sign(f: &PermGroup) -> Self {
        let images: Vec<(Perm, Vec<u32>)> =
            f.generators().iter().map(|g| (g.clone(), alloc::vec![if g.sign() < 0 { 1 } else { 0 }])).collect();
        Self::from_generators(f, alloc::vec![2], &images).expect("sign is a homomorphism")
    }

    /// The trivial homomorphism.
    pub fn trivial(f: &PermGroup) -> Self {
        AbelianHom { f: f.clone(), moduli: Vec::new(), values: alloc::vec![Vec::new(); f.order()] }
    }

    pub fn group(&self) -> &PermGroup {
        &self.f
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn value(&self, a: &Perm) -> Option<&[u32]> {
        self.f.index_of(a).map(|i| &self.values[i][..])
    }

    /// Whether `ρ(F_ω) = ρ(F)` for every point `ω`.
    pub fn stabilizers_cover_image(&self) -> bool {
        let image = |g: &PermGroup| -> Vec<Vec<u32>> {
            let mut v: Vec<Vec<u32>> = g.elements().iter().map(|a| self.value(a).expect("subgroup").to_vec()).collect();
            v.sort();
            v.dedup();
            v
        };
        let full = image(&self.f);
        (0..self.f.degree()).all(|w| image(&self.f.stabilizer(w)) == full)
    }

    fn add(&self, acc: &mut [u32], a: &Perm) {
        let v = self.value(a).expect("local action lies in F");
        for ((x, y), m) in acc.iter_mut().zip(v).zip(&self.moduli) {
            *x = (*x + y) % m;
        }
    }
}

/// `Π^k(F, ρ, X) = {α ∈ Φ^k(F) | ∏_{r∈X} ∏_{x∈S(b,r)} ρ(σ_1(α, x)) = 1}`.
///
/// Requires `k ≥ 2` and `X ⊆ {0, …, k-1}` with `k-1 ∈ X`.
pub fn pi(f: &PermGroup, rho: &AbelianHom, radii: &[usize], k: usize) -> Result<BallGroup> {
    if rho.group() != f {
        return Err(Error::Precondition("ρ is defined on a different group".into()));
    }
    if k < 2 {
        return Err(Error::Precondition("Π^k needs k ≥ 2".into()));
    }
    if radii.iter().any(|&r| r >= k) || !radii.contains(&(k - 1)) {
        return Err(Error::Precondition(alloc::format!("radius set {radii:?} must lie in 0..{k} and contain {}", k - 1)));
    }
    let mut radii = radii.to_vec();
    radii.sort_unstable();
    radii.dedup();
    let big = phi_power(f, k)?;
    let d = f.degree();
    let vertices: Vec<Vec<u8>> = radii
        .iter()
        .flat_map(|&r| (0..sphere_size(d, r)).map(move |i| word_at(d, r, i)))
        .collect();
    let keep: Vec<usize> = (0..big.order())
        .filter(|&i| {
            let a = big.element(i);
            let mut acc = alloc::vec![0u32; rho.moduli().len()];
            for v in &vertices {
                rho.add(&mut acc, a.local_action_bytes(v, 1).leaf_perm());
            }
            acc.iter().all(|&x| x == 0)
        })
        .collect();
    Ok(big.subgroup_from_indices(&keep))
}
