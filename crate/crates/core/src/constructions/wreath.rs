use alloc::vec::Vec;

use super::lift::generate_expected;
use super::local::gamma_element;
use crate::ball::{BallAut, BallGroup};
use crate::compat::{Cocycle, CompatIndex};
use crate::permcore::named::{block_embedding, top_embedding};
use crate::permcore::{Perm, PermGroup};
use crate::{Error, Result};

/// `W(F, P) ≤ Aut(B_{|Ω×Λ|,2})` with its involutive compatibility cocycle.
///
/// The point `(ω, λ)` is numbered `λ·|Ω| + ω`. The group is generated by
/// `γ_λ(a) = (ι_λ a, (ι_λ a on block λ, id elsewhere))`,
/// `γ^{(2)}_λ(a) = (id, (id on block λ, ι_λ a elsewhere))` and the constant
/// lifts `γ(ι ρ)`. The cocycle swaps `γ_λ(a)` and `γ^{(2)}_λ(a)` in
/// directions outside block `λ` and fixes everything else on generators.
pub fn wreath_local(f: &PermGroup, p: &PermGroup) -> Result<(BallGroup, Cocycle)> {
    let (m, l) = (f.degree(), p.degree());
    if m < 2 || l < 2 {
        return Err(Error::Precondition("both factors need at least two points".into()));
    }
    if !f.is_transitive() || !p.is_transitive() {
        return Err(Error::Precondition("both factors must be transitive".into()));
    }
    let d = m * l;
    let id = BallAut::identity(d, 1)?;
    let local = |images: Vec<usize>| -> Result<BallAut> { BallAut::from_local(&Perm::from_images(&images)?) };
    // (generator, value in directions of its own block, value elsewhere, block)
    let mut pairs: Vec<(BallAut, BallAut, usize)> = Vec::new();
    for lambda in 0..l {
        for a in f.generators() {
            let ia = local(block_embedding(m, l, lambda, a))?;
            let own: Vec<BallAut> = (0..d).map(|w| if w / m == lambda { ia.clone() } else { id.clone() }).collect();
            let other: Vec<BallAut> = (0..d).map(|w| if w / m == lambda { id.clone() } else { ia.clone() }).collect();
            let g1 = BallAut::assemble(&ia, &own)?;
            let g2 = BallAut::assemble(&id, &other)?;
            pairs.push((g1, g2, lambda));
        }
    }
    let tops: Vec<BallAut> =
        p.generators().iter().map(|r| gamma_element(&Perm::from_images(&top_embedding(m, l, r))?, 2)).collect::<Result<_>>()?;
    let mut gens: Vec<BallAut> = pairs.iter().flat_map(|(a, b, _)| [a.clone(), b.clone()]).collect();
    gens.extend(tops.iter().cloned());
    let order = (f.order() as u128).pow(2 * l as u32) * p.order() as u128;
    let w = generate_expected(d, 2, &gens, order)?;
    let t = w.table()?;
    let idx = CompatIndex::new(&w);
    let at = |x: &BallAut| w.index_of(x).expect("generator");
    let mut values: Vec<(usize, Vec<usize>)> = Vec::new();
    for (g1, g2, lambda) in &pairs {
        let (i1, i2) = (at(g1), at(g2));
        values.push((i1, (0..d).map(|x| if x / m == *lambda { i1 } else { i2 }).collect()));
        values.push((i2, (0..d).map(|x| if x / m == *lambda { i2 } else { i1 }).collect()));
    }
    for g in &tops {
        let i = at(g);
        values.push((i, alloc::vec![i; d]));
    }
    let z = Cocycle::extend_from_generators(&t, &idx, &values)
        .ok_or_else(|| Error::Inconsistent("the prescribed cocycle values do not extend".into()))?;
    z.verify(&t, &idx).map_err(|v| Error::Inconsistent(alloc::format!("wreath cocycle fails an axiom: {v:?}")))?;
    Ok((w, z))
}
