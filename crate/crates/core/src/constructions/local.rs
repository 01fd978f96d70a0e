//! Constructions on top of a permutation group `F ≤ Sym(Ω)`, landing in
//! `Aut(B_{d,2})`.

use alloc::vec::Vec;

use super::lift::generate_expected;
use crate::ball::{BallAut, BallGroup};
use crate::permcore::{Perm, PermGroup, ProductSubgroup};
use crate::{Error, Result};

/// Choice of the elements `f_ω` with `f_ω(ω_0) = ω`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Transversal {
    #[default]
    LexLeast,
    LexGreatest,
}

/// `γ(a) = (a, (a, …, a))`, or its radius-`k` analogue whose 1-local action
/// is `a` at every vertex.
pub fn gamma_element(a: &Perm, k: usize) -> Result<BallAut> {
    BallAut::constant(a, k)
}

/// `Γ(F) ≤ Aut(B_{d,2})`.
pub fn gamma(f: &PermGroup) -> Result<BallGroup> {
    gamma_power(f, 2)
}

/// `Γ^k(F) ≤ Aut(B_{d,k})`, the constant lifts of `F`.
pub fn gamma_power(f: &PermGroup, k: usize) -> Result<BallGroup> {
    let gens = f.generators().iter().map(|a| gamma_element(a, k)).collect::<Result<Vec<_>>>()?;
    BallGroup::generate(f.degree(), k, &gens)
}

/// `f_ω` for every `ω`, with `ω_0 = 0`.
pub fn transversal(f: &PermGroup, choice: Transversal) -> Result<Vec<Perm>> {
    if !f.is_transitive() {
        return Err(Error::Precondition("F must be transitive".into()));
    }
    let d = f.degree();
    let mut out: Vec<Option<Perm>> = alloc::vec![None; d];
    let mut pick = |a: &Perm| {
        let w = a.apply(0);
        if out[w].is_none() || choice == Transversal::LexGreatest {
            out[w] = Some(a.clone());
        }
    };
    for a in f.elements() {
        pick(a);
    }
    Ok(out.into_iter().map(|a| a.expect("transitive")).collect())
}

fn constant_lifts(f: &PermGroup) -> Result<Vec<BallAut>> {
    f.generators().iter().map(|a| gamma_element(a, 2)).collect()
}

fn check_transitive_degree(f: &PermGroup) -> Result<()> {
    if f.degree() < 3 {
        return Err(Error::Precondition("degree must be at least 3".into()));
    }
    if !f.is_transitive() {
        return Err(Error::Precondition("F must be transitive".into()));
    }
    Ok(())
}

/// `Δ(F, C) = {(a, (a f_ω c f_ω⁻¹)_ω) | a ∈ F, c ∈ C}` for `C ≤ Z(F_{ω_0})`,
/// or `Δ(F) = {(a, (f_{aω} a_0 f_ω⁻¹)_ω) | a ∈ F, a_0 ∈ F_{ω_0}}` when `C`
/// is absent.
pub fn delta(f: &PermGroup, c: Option<&PermGroup>, choice: Transversal) -> Result<BallGroup> {
    check_transitive_degree(f)?;
    let d = f.degree();
    let t = transversal(f, choice)?;
    let stab = f.stabilizer(0);
    let id = Perm::identity(d);
    let conj_all = |c: &Perm| -> Vec<Perm> { t.iter().map(|fw| fw.compose(c).compose(&fw.inverse())).collect() };
    let mut gens = Vec::new();
    let order = match c {
        Some(c) => {
            if !c.is_subgroup_of(&stab) {
                return Err(Error::Precondition("C must lie in the stabilizer of 0".into()));
            }
            for x in c.generators() {
                if stab.generators().iter().any(|s| s.compose(x) != x.compose(s)) {
                    return Err(Error::Precondition("C must be central in the stabilizer of 0".into()));
                }
            }
            gens.extend(constant_lifts(f)?);
            for x in c.generators() {
                gens.push(assemble_local(&id, &conj_all(x))?);
            }
            f.order() * c.order()
        }
        None => {
            for a in f.generators() {
                let children: Vec<Perm> = (0..d).map(|w| t[a.apply(w)].compose(&t[w].inverse())).collect();
                gens.push(assemble_local(a, &children)?);
            }
            for x in stab.generators() {
                gens.push(assemble_local(&id, &conj_all(x))?);
            }
            f.order() * stab.order()
        }
    };
    generate_expected(d, 2, &gens, order as u128)
}

/// `Φ(F, N) = {(a, (a f_ω n_ω f_ω⁻¹)_ω) | a ∈ F, n_ω ∈ N}` for `N ⊴ F_{ω_0}`.
pub fn phi_normal(f: &PermGroup, n: &PermGroup) -> Result<BallGroup> {
    check_transitive_degree(f)?;
    let d = f.degree();
    let stab = f.stabilizer(0);
    if !n.is_subgroup_of(&stab) {
        return Err(Error::Precondition("N must lie in the stabilizer of 0".into()));
    }
    if stab.generators().iter().any(|s| !n.is_normalized_by(s)) {
        return Err(Error::Precondition("N must be normal in the stabilizer of 0".into()));
    }
    let t = transversal(f, Transversal::LexLeast)?;
    let id = Perm::identity(d);
    let mut gens = constant_lifts(f)?;
    for w in 0..d {
        for x in n.generators() {
            let mut children = alloc::vec![id.clone(); d];
            children[w] = t[w].compose(x).compose(&t[w].inverse());
            gens.push(assemble_local(&id, &children)?);
        }
    }
    let order = (f.order() as u128) * (n.order() as u128).pow(d as u32);
    generate_expected(d, 2, &gens, order)
}

/// `(a, (a_ω)_ω)` as an element of `Aut(B_{d,2})`.
pub fn assemble_local(a: &Perm, children: &[Perm]) -> Result<BallAut> {
    let root = BallAut::from_local(a)?;
    let children = children.iter().map(BallAut::from_local).collect::<Result<Vec<_>>>()?;
    BallAut::assemble(&root, &children)
}

/// The group `{(a, (a a_ω)_ω) | a ∈ F, (a_ω)_ω ∈ K}` for `K ≤ ∏_ω F_ω`.
///
/// This is a group exactly when `K` is invariant under
/// `a·(a_ω)_ω = (a a_{a⁻¹ω} a⁻¹)_ω`; otherwise the element set is rejected.
pub fn split_extension(f: &PermGroup, k: &ProductSubgroup) -> Result<BallGroup> {
    let d = f.degree();
    for t in &k.elements {
        if t.len() != d || t.iter().enumerate().any(|(w, x)| x.degree() != d || x.apply(w) != w) {
            return Err(Error::Precondition("K must lie in the product of the point stabilizers".into()));
        }
    }
    let mut elements = Vec::with_capacity(f.order() * k.order());
    for a in f.elements() {
        for t in &k.elements {
            let children: Vec<Perm> = t.iter().map(|x| a.compose(x)).collect();
            elements.push(assemble_local(a, &children)?);
        }
    }
    BallGroup::from_elements(d, 2, elements)
        .map_err(|_| Error::NotSubgroup("K is not invariant under the action of F".into()))
}
