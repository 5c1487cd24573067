//! Brauer pairs below a maximal pair, and the fusion category they define.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::algebra;
use crate::error::{Error, Result};
use crate::perm::{cyclic_subgroups_with_generators, subgroups_of, Subgroup};
use crate::session::Session;

/// (Q, e) with e a block of k C_G(Q), by index into the centralizer's
/// block system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerPair {
    pub q: Subgroup,
    pub block: usize,
}

/// How e_Q is reached from the maximal pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chain {
    /// Q, N_P(Q), N_P(N_P(Q)), ..., P.
    Normalizer,
    /// Steps of index p: Q < <Q, x> with x the least element of N_P(Q) \ Q
    /// whose p-th power lies in Q.
    IndexP,
}

/// The pairs (Q, e_Q) contained in a maximal b-Brauer pair (P, e_P).
#[derive(Clone, Debug)]
pub struct SubpairFamily {
    /// Block of G.
    pub block: usize,
    pub p_group: Subgroup,
    pub members: BTreeMap<Vec<usize>, BrauerPair>,
}

impl SubpairFamily {
    pub fn maximal(&self) -> &BrauerPair {
        &self.members[&self.p_group.elements]
    }

    pub fn get(&self, q: &Subgroup) -> Option<&BrauerPair> {
        self.members.get(&q.elements)
    }

    /// Replaces one member; used to build corrupted fixtures.
    pub fn set_member(&mut self, q: &Subgroup, block: usize) {
        self.members.insert(
            q.elements.clone(),
            BrauerPair {
                q: q.clone(),
                block,
            },
        );
    }
}

/// Blocks e of k C_G(P) with Br_P(b) e = e.
pub fn eligible_maximal_blocks(s: &Session, b: usize, p_group: &Subgroup) -> Result<Vec<usize>> {
    let g = &s.group;
    let f = s.local.field();
    let br = algebra::brauer_hom(f, g, &s.block_dense(b), p_group)?;
    let c = s.centralizer(p_group)?;
    Ok((0..c.system.len())
        .filter(|&e| algebra::mul(f, g, &br, &c.dense[e]) == c.dense[e])
        .collect())
}

/// The deterministic maximal pair: first defect group, first eligible e_P.
pub fn maximal_pair(s: &Session, b: usize) -> Result<BrauerPair> {
    let p_group = s.defect_groups(b)?.remove(0);
    let block = *eligible_maximal_blocks(s, b, &p_group)?
        .first()
        .ok_or_else(|| Error::internal(format!("block {b} has no maximal Brauer pair")))?;
    Ok(BrauerPair { q: p_group, block })
}

/// e_Q from (R, e_R) with Q normal in R: the unique R-stable block f of
/// k C_G(Q) with Br_R(f) e_R = e_R, uniqueness checked over all blocks.
pub fn descend(s: &Session, upper: &BrauerPair, q: &Subgroup) -> Result<usize> {
    let g = &s.group;
    let f = s.local.field();
    if !g.is_normal_in(q, &upper.q) {
        return Err(Error::internal("descent step requires a normal subgroup"));
    }
    let cq = s.centralizer(q)?;
    let cr = s.centralizer(&upper.q)?;
    let target = &cr.dense[upper.block];
    let mut found = Vec::new();
    for (e, dense) in cq.dense.iter().enumerate() {
        if !algebra::is_fixed_by(g, dense, &upper.q) {
            continue;
        }
        let br = algebra::brauer_hom(f, g, dense, &upper.q)?;
        if &algebra::mul(f, g, &br, target) == target {
            found.push(e);
        }
    }
    match found.as_slice() {
        [e] => Ok(*e),
        _ => Err(Error::internal(format!(
            "{} candidate blocks below a Brauer pair at |Q| = {}",
            found.len(),
            q.order()
        ))),
    }
}

fn next_step(s: &Session, p_group: &Subgroup, q: &Subgroup, chain: Chain) -> Subgroup {
    let g = &s.group;
    let n = {
        let elements: Vec<usize> = p_group
            .elements
            .iter()
            .copied()
            .filter(|&x| q.elements.iter().all(|&y| q.contains(g.conj(x, y))))
            .collect();
        elements
    };
    match chain {
        Chain::Normalizer => g.generate(&n),
        Chain::IndexP => {
            let x = n
                .iter()
                .copied()
                .find(|&x| !q.contains(x) && q.contains(g.pow(x, s.p as i64)))
                .expect("a proper subgroup of a p-group grows inside its normalizer");
            let mut gens = q.generators.clone();
            gens.push(x);
            g.generate(&gens)
        }
    }
}

fn member(
    s: &Session,
    top: &BrauerPair,
    q: &Subgroup,
    chain: Chain,
    memo: &mut BTreeMap<Vec<usize>, BrauerPair>,
) -> Result<BrauerPair> {
    if let Some(m) = memo.get(&q.elements) {
        return Ok(m.clone());
    }
    if q.elements == top.q.elements {
        return Ok(top.clone());
    }
    let r = next_step(s, &top.q, q, chain);
    let upper = member(s, top, &r, chain, memo)?;
    let pair = BrauerPair {
        q: q.clone(),
        block: descend(s, &upper, q)?,
    };
    memo.insert(q.elements.clone(), pair.clone());
    Ok(pair)
}

/// The family below `top` evaluated at the given subgroups of P.
pub fn family_from(
    s: &Session,
    block: usize,
    top: &BrauerPair,
    subgroups: &[Subgroup],
    chain: Chain,
) -> Result<SubpairFamily> {
    let mut memo = BTreeMap::new();
    memo.insert(top.q.elements.clone(), top.clone());
    for q in subgroups {
        member(s, top, q, chain, &mut memo)?;
    }
    Ok(SubpairFamily {
        block,
        p_group: top.q.clone(),
        members: memo,
    })
}

/// Subgroups of P at which families are evaluated: all of them when
/// |P| is within the fusion cap, otherwise the cyclic ones.
pub fn family_domain(s: &Session, p_group: &Subgroup) -> Vec<Subgroup> {
    if p_group.order() as u64 <= s.limits().fusion_cap {
        subgroups_of(&s.group, p_group)
    } else {
        cyclic_subgroups_with_generators(&s.group, p_group)
            .into_iter()
            .map(|(q, _)| q)
            .collect()
    }
}

/// Family of block b below its deterministic maximal pair.
pub fn subpair_family(s: &Session, b: usize) -> Result<SubpairFamily> {
    let top = maximal_pair(s, b)?;
    let domain = family_domain(s, &top.q);
    family_from(s, b, &top, &domain, Chain::Normalizer)
}

/// Morphism sets Hom(Q, R) for subgroups Q, R of P; a morphism is the image
/// list of Q's sorted elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionData {
    pub p_order: usize,
    pub homs: BTreeMap<(Vec<usize>, Vec<usize>), BTreeSet<Vec<usize>>>,
}

impl FusionData {
    pub fn morphism_count(&self) -> usize {
        self.homs.values().map(|s| s.len()).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionWitness {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub morphism: Vec<usize>,
    /// True if the morphism lies in the first category only.
    pub only_in_first: bool,
}

/// Conjugation maps c_g: Q -> R with (gQ, g e_Q g^-1) <= (R, e_R). The
/// condition is read with gQ (not gP) as the source of the inclusion.
pub fn fusion_category(s: &Session, family: &SubpairFamily) -> Result<FusionData> {
    let p_order = family.p_group.order();
    if p_order as u64 > s.limits().fusion_cap {
        return Err(Error::CapExceeded(format!(
            "|P| = {p_order} exceeds fusion cap {}",
            s.limits().fusion_cap
        )));
    }
    let g = &s.group;
    let subgroups: Vec<Subgroup> = family.members.values().map(|m| m.q.clone()).collect();
    let mut homs: BTreeMap<(Vec<usize>, Vec<usize>), BTreeSet<Vec<usize>>> = BTreeMap::new();
    for q in &subgroups {
        for r in &subgroups {
            homs.insert((q.elements.clone(), r.elements.clone()), BTreeSet::new());
        }
    }
    for q in &subgroups {
        let cq = s.centralizer(q)?;
        let eq = &cq.dense[family.members[&q.elements].block];
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for x in 0..g.order() {
            let images: Vec<usize> = q.elements.iter().map(|&y| g.conj(x, y)).collect();
            if !seen.insert(images.clone()) {
                continue;
            }
            let mut gq = images.clone();
            gq.sort_unstable();
            let Some(target) = family.members.get(&gq) else {
                continue;
            };
            let ct = s.centralizer(&target.q)?;
            if algebra::conjugate(g, eq, x) != ct.dense[target.block] {
                continue;
            }
            for r in &subgroups {
                if target.q.is_subgroup_of(r) {
                    homs.get_mut(&(q.elements.clone(), r.elements.clone()))
                        .expect("all pairs present")
                        .insert(images.clone());
                }
            }
        }
    }
    Ok(FusionData { p_order, homs })
}

/// Equality of morphism sets over every (Q, R), with a witness on failure.
pub fn fusion_equal(a: &FusionData, b: &FusionData) -> (bool, Option<FusionWitness>) {
    let keys: BTreeSet<&(Vec<usize>, Vec<usize>)> = a.homs.keys().chain(b.homs.keys()).collect();
    let empty = BTreeSet::new();
    for key in keys {
        let sa = a.homs.get(key).unwrap_or(&empty);
        let sb = b.homs.get(key).unwrap_or(&empty);
        if let Some(m) = sa.difference(sb).next() {
            return (false, Some(witness(key, m, true)));
        }
        if let Some(m) = sb.difference(sa).next() {
            return (false, Some(witness(key, m, false)));
        }
    }
    (true, None)
}

fn witness(key: &(Vec<usize>, Vec<usize>), m: &[usize], only_in_first: bool) -> FusionWitness {
    FusionWitness {
        source: key.0.clone(),
        target: key.1.clone(),
        morphism: m.to_vec(),
        only_in_first,
    }
}
