//! Standard permutation groups used as local actions.

use alloc::vec::Vec;

use super::group::PermGroup;
use super::perm::Perm;

fn gen_group(d: usize, gens: Vec<Vec<usize>>) -> PermGroup {
    let gens: Vec<Perm> = gens.iter().map(|g| Perm::from_images(g).expect("valid generator")).collect();
    PermGroup::closure(d, &gens).expect("small group")
}

pub fn symmetric(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(n.max(1));
    }
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    gen_group(n, alloc::vec![cycle, swap])
}

pub fn alternating(n: usize) -> PermGroup {
    if n < 3 {
        return PermGroup::trivial(n.max(1));
    }
    let gens = (0..n - 2)
        .map(|i| {
            let mut g: Vec<usize> = (0..n).collect();
            g[i] = i + 1;
            g[i + 1] = i + 2;
            g[i + 2] = i;
            g
        })
        .collect();
    gen_group(n, gens)
}

/// The cyclic shift group on `n` points.
pub fn cyclic(n: usize) -> PermGroup {
    gen_group(n, alloc::vec![(0..n).map(|i| (i + 1) % n).collect()])
}

/// Symmetries of the `n`-gon with vertices `0, ..., n-1` in cyclic order.
pub fn dihedral(n: usize) -> PermGroup {
    let rot = (0..n).map(|i| (i + 1) % n).collect();
    let refl = (0..n).map(|i| (n - i) % n).collect();
    gen_group(n, alloc::vec![rot, refl])
}

/// Nonzero vectors of `F_3^2` in lexicographic order of coordinates.
pub fn f3_plane_points() -> Vec<(usize, usize)> {
    (0..9).map(|i| (i / 3, i % 3)).filter(|&(a, b)| a != 0 || b != 0).collect()
}

fn linear_action_f3(m: [[usize; 2]; 2]) -> Vec<usize> {
    let pts = f3_plane_points();
    pts.iter()
        .map(|&(a, b)| {
            let img = ((m[0][0] * a + m[0][1] * b) % 3, (m[1][0] * a + m[1][1] * b) % 3);
            pts.iter().position(|&p| p == img).expect("nonzero image")
        })
        .collect()
}

/// `SL(2,3)` acting on the 8 nonzero vectors of `F_3^2`.
pub fn sl23_on_vectors() -> PermGroup {
    gen_group(8, alloc::vec![linear_action_f3([[1, 1], [0, 1]]), linear_action_f3([[0, 2], [1, 0]])])
}

/// `-Id` as a permutation of the nonzero vectors of `F_3^2`.
pub fn minus_identity_f3() -> Perm {
    Perm::from_images(&linear_action_f3([[2, 0], [0, 2]])).expect("valid")
}

/// Blocks `{v, -v}` of the nonzero vectors of `F_3^2`.
pub fn f3_sign_blocks() -> Vec<Vec<usize>> {
    let neg = minus_identity_f3();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in 0..8 {
        let y = neg.apply(x);
        if x < y {
            blocks.push(alloc::vec![x, y]);
        }
    }
    blocks
}

fn inv_mod(a: usize, p: usize) -> usize {
    (1..p).find(|&x| a * x % p == 1).expect("invertible")
}

fn primitive_root(p: usize) -> usize {
    (2..p).find(|&g| (1..p - 1).all(|e| pow_mod(g, e, p) != 1)).unwrap_or(1)
}

fn pow_mod(b: usize, e: usize, p: usize) -> usize {
    (0..e).fold(1, |acc, _| acc * b % p)
}

/// Möbius map `x ↦ (ax + b) / (cx + d)` on the projective line over `F_p`;
/// point `p` stands for infinity.
fn mobius(p: usize, a: usize, b: usize, c: usize, d: usize) -> Vec<usize> {
    (0..=p)
        .map(|x| {
            if x == p {
                if c == 0 {
                    p
                } else {
                    a * inv_mod(c, p) % p
                }
            } else {
                let num = (a * x + b) % p;
                let den = (c * x + d) % p;
                if den == 0 {
                    p
                } else {
                    num * inv_mod(den, p) % p
                }
            }
        })
        .collect()
}

/// `PSL(2,p)` on the `p+1` points of the projective line, `p` an odd prime.
pub fn psl2_prime(p: usize) -> PermGroup {
    let g = primitive_root(p);
    gen_group(p + 1, alloc::vec![mobius(p, 1, 1, 0, 1), mobius(p, g * g % p, 0, 0, 1), mobius(p, 0, p - 1, 1, 0)])
}

/// `PGL(2,p)` on the `p+1` points of the projective line.
pub fn pgl2_prime(p: usize) -> PermGroup {
    let g = primitive_root(p);
    gen_group(p + 1, alloc::vec![mobius(p, 1, 1, 0, 1), mobius(p, g, 0, 0, 1), mobius(p, 0, p - 1, 1, 0)])
}

/// Multiplication in `F_8 = F_2[x]/(x^3 + x + 1)`, elements as bit masks.
fn f8_mul(a: usize, b: usize) -> usize {
    let mut r = 0;
    for i in 0..3 {
        if b >> i & 1 == 1 {
            r ^= a << i;
        }
    }
    for bit in (3..5).rev() {
        if r >> bit & 1 == 1 {
            r ^= 0b1011 << (bit - 3);
        }
    }
    r
}

/// `AGL(1,8)` on the field `F_8`.
pub fn agl1_8() -> PermGroup {
    gen_group(8, alloc::vec![(0..8).map(|x| x ^ 1).collect(), (0..8).map(|x| f8_mul(x, 2)).collect()])
}

/// `AΓL(1,8)`: adds the Frobenius map to `AGL(1,8)`.
pub fn agammal1_8() -> PermGroup {
    gen_group(
        8,
        alloc::vec![
            (0..8).map(|x| x ^ 1).collect(),
            (0..8).map(|x| f8_mul(x, 2)).collect(),
            (0..8).map(|x| f8_mul(x, x)).collect(),
        ],
    )
}

/// `AGL(3,2)` on `F_2^3`.
pub fn agl3_2() -> PermGroup {
    let transvection: Vec<usize> = (0..8).map(|x| x ^ ((x >> 1 & 1) * 1)).collect();
    gen_group(
        8,
        alloc::vec![(0..8).map(|x| x ^ 1).collect(), (0..8).map(|x| f8_mul(x, 2)).collect(), transvection],
    )
}

/// Imprimitive wreath product `F ≀ P` on `Ω × Λ`, point `(ω, λ)` numbered
/// `λ·|Ω| + ω`.
pub fn wreath(f: &PermGroup, p: &PermGroup) -> PermGroup {
    let (m, l) = (f.degree(), p.degree());
    let mut gens: Vec<Vec<usize>> = Vec::new();
    for lambda in 0..l {
        for a in f.generators_or_elements() {
            gens.push(block_embedding(m, l, lambda, a));
        }
    }
    for r in p.generators_or_elements() {
        gens.push(top_embedding(m, l, r));
    }
    gen_group(m * l, gens)
}

/// `ι_λ(a)`: acts as `a` on block `λ` and trivially elsewhere.
pub fn block_embedding(m: usize, l: usize, lambda: usize, a: &Perm) -> Vec<usize> {
    (0..m * l).map(|x| if x / m == lambda { lambda * m + a.apply(x % m) } else { x }).collect()
}

/// `ι(ρ)`: permutes the blocks.
pub fn top_embedding(m: usize, l: usize, r: &Perm) -> Vec<usize> {
    let _ = l;
    (0..m * r.degree()).map(|x| r.apply(x / m) * m + x % m).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(symmetric(5).order(), 120);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(cyclic(7).order(), 7);
        assert_eq!(dihedral(5).order(), 10);
        assert_eq!(sl23_on_vectors().order(), 24);
        assert_eq!(psl2_prime(5).order(), 60);
        assert_eq!(pgl2_prime(5).order(), 120);
        assert_eq!(psl2_prime(7).order(), 168);
        assert_eq!(pgl2_prime(7).order(), 336);
        assert_eq!(agl1_8().order(), 56);
        assert_eq!(agammal1_8().order(), 168);
        assert_eq!(agl3_2().order(), 1344);
        assert_eq!(wreath(&cyclic(2), &cyclic(2)).order(), 8);
    }

    #[test]
    fn minus_identity_is_central() {
        let g = sl23_on_vectors();
        let t = minus_identity_f3();
        assert!(g.contains(&t));
        assert!(g.generators().iter().all(|a| a.compose(&t) == t.compose(a)));
        assert_eq!(f3_sign_blocks().len(), 4);
    }
}
