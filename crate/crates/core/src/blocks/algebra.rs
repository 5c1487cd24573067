//! Dense elements of F_q G indexed by group elements, the Brauer
//! homomorphism and defect groups.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gf::{GaloisField, GfElem};
use crate::perm::{p_subgroups_up_to_conjugacy, Group, Subgroup};

use super::BlockSystem;

pub fn is_zero(f: &GaloisField, a: &[GfElem]) -> bool {
    a.iter().all(|x| f.is_zero(x))
}

pub fn mul(f: &GaloisField, g: &Group, a: &[GfElem], b: &[GfElem]) -> Vec<GfElem> {
    let sa: Vec<usize> = (0..a.len()).filter(|&i| !f.is_zero(&a[i])).collect();
    let sb: Vec<usize> = (0..b.len()).filter(|&i| !f.is_zero(&b[i])).collect();
    let mut out = vec![f.zero(); g.order()];
    for &x in &sa {
        for &y in &sb {
            let z = g.mul(x, y);
            out[z] = f.add(&out[z], &f.mul(&a[x], &b[y]));
        }
    }
    out
}

pub fn add(f: &GaloisField, a: &[GfElem], b: &[GfElem]) -> Vec<GfElem> {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

/// x a x^-1.
pub fn conjugate(g: &Group, a: &[GfElem], x: usize) -> Vec<GfElem> {
    let mut out = a.to_vec();
    for (h, v) in a.iter().enumerate() {
        out[g.conj(x, h)] = v.clone();
    }
    out
}

pub fn is_fixed_by(g: &Group, a: &[GfElem], q: &Subgroup) -> bool {
    let gens: &[usize] = if q.generators.is_empty() {
        &q.elements
    } else {
        &q.generators
    };
    gens.iter()
        .all(|&x| (0..g.order()).all(|h| a[g.conj(x, h)] == a[h]))
}

/// Br_Q: truncation of a Q-fixed element to C_G(Q).
pub fn brauer_hom(f: &GaloisField, g: &Group, a: &[GfElem], q: &Subgroup) -> Result<Vec<GfElem>> {
    if !is_fixed_by(g, a, q) {
        return Err(Error::NotFixed);
    }
    let c = g.centralizer_of(q);
    let mut out = vec![f.zero(); g.order()];
    for &h in &c.elements {
        out[h] = a[h].clone();
    }
    Ok(out)
}

/// Residue field image of sigma: coefficientwise p-th power.
pub fn frobenius(f: &GaloisField, a: &[GfElem]) -> Vec<GfElem> {
    use crate::field::FiniteField;
    a.iter().map(|x| f.frobenius(x)).collect()
}

/// The p-subgroup class representatives Q with Br_Q(b) != 0 of maximal
/// order. Verified to form a single class of order p^defect.
pub fn defect_groups(sys: &BlockSystem, b: usize, sylow_cap: u64) -> Result<Vec<Subgroup>> {
    let g = sys.table.group();
    let f = &sys.field;
    let dense = sys.residue_dense(b);
    let reps = p_subgroups_up_to_conjugacy(g, sys.p, sylow_cap)?;
    let mut best: Vec<Subgroup> = Vec::new();
    for q in reps {
        if is_zero(f, &brauer_hom(f, g, &dense, &q)?) {
            continue;
        }
        if best.first().is_some_and(|x| x.order() < q.order()) {
            best.clear();
        }
        if best.first().is_none_or(|x| x.order() == q.order()) {
            best.push(q);
        }
    }
    let expected = (sys.p as usize).pow(sys.blocks[b].defect);
    if best.len() != 1 || best[0].order() != expected {
        return Err(Error::internal(format!(
            "block {b}: maximal Brauer subgroups {:?} disagree with defect {}",
            best.iter().map(|s| s.order()).collect::<Vec<_>>(),
            sys.blocks[b].defect
        )));
    }
    Ok(best)
}
