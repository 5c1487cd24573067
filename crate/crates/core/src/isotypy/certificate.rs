//! Assembling and replaying isotypy certificates.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{
    build_isometry, gen_decomp, verify_perfect_isometry, CheckStatus, Isometry, MuFunction,
    PairRecord,
};
use crate::blocks::subpairs::{self, BrauerPair, Chain, FusionWitness, SubpairFamily};
use crate::blocks::algebra;
use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::perm::{cyclic_subgroups_with_generators, Subgroup};
use crate::session::{CentralizerData, Session};
use crate::Cyclotomic;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default)]
pub struct IsotypyOptions {
    /// Also require v(mu(x, y)) >= e v_p|C_H(y)|.
    pub strict: bool,
    /// Repeat the check for every eligible maximal pair (P, e_P).
    pub all_maximal_pairs: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl From<CheckStatus> for Verdict {
    fn from(s: CheckStatus) -> Self {
        match s {
            CheckStatus::Pass => Verdict::Pass,
            CheckStatus::Fail => Verdict::Fail,
            CheckStatus::Inconclusive => Verdict::Inconclusive,
        }
    }
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

/// Data for one cyclic Q <= P; every field may be altered to build
/// negative controls before calling [`verify`].
#[derive(Clone, Debug)]
pub struct QInputs {
    pub q: Subgroup,
    pub generators: Vec<usize>,
    pub centralizer: Arc<CentralizerData>,
    pub e_q: usize,
    pub f_q: usize,
    /// Exact coefficients of e_Q and f_Q on the classes of C_G(Q).
    pub e_coeffs: Vec<Cyclotomic>,
    pub f_coeffs: Vec<Cyclotomic>,
    /// I^Q: tau -> sigma^n(tau) from e_Q to f_Q.
    pub isometry: Isometry,
    pub mu: MuFunction,
}

#[derive(Clone, Debug)]
pub struct IsotypyInputs {
    pub block: usize,
    pub power: u64,
    pub target_block: usize,
    pub strict: bool,
    /// I^{1} on G.
    pub global: Isometry,
    pub family: SubpairFamily,
    pub target_family: SubpairFamily,
    pub cyclic: Vec<QInputs>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FusionRecord {
    /// "equal", "different" or "skipped".
    pub status: String,
    pub p_order: usize,
    pub morphisms: Option<usize>,
    pub witness: Option<FusionWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyRecord {
    /// Subgroup (as G-element indices) and the block of its centralizer.
    pub members: Vec<(Vec<usize>, usize)>,
    /// Target family equals Q -> sigma^n(e_Q) at every member.
    pub galois_compatible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SquareRecord {
    pub generator: String,
    pub character: usize,
    /// Class index in C_G(Q).
    pub class: usize,
    pub lhs: Cyclotomic,
    pub rhs: Cyclotomic,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CyclicRecord {
    pub generators: Vec<String>,
    pub order: usize,
    pub centralizer_order: usize,
    pub e_q: usize,
    pub f_q: usize,
    pub isometry: Isometry,
    pub mu_consistent: bool,
    pub perfect_isometry: Vec<PairRecord>,
    pub squares: Vec<SquareRecord>,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Witness {
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IsotypyCertificate {
    pub schema_version: u32,
    pub group: String,
    pub group_hash: String,
    pub prime: u64,
    pub conductor: u64,
    pub residue_modulus: Vec<u64>,
    pub block: usize,
    pub power: u64,
    pub target_block: usize,
    pub strict: bool,
    /// Reading of the fusion morphism condition.
    pub morphism_condition: String,
    pub defect_group: Vec<String>,
    pub maximal_pair_block: usize,
    pub global_isometry: Isometry,
    pub signs_positive: bool,
    pub family: FamilyRecord,
    pub fusion: FusionRecord,
    pub cyclic: Vec<CyclicRecord>,
    pub alternative_maximal_pairs: Vec<(usize, Verdict)>,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

fn coeffs_of(c: &CentralizerData, b: usize) -> Vec<Cyclotomic> {
    c.system.blocks[b].coeffs.clone()
}

fn prepare_with(
    s: &Session,
    b: usize,
    n: u64,
    strict: bool,
    top: BrauerPair,
) -> Result<IsotypyInputs> {
    let global = build_isometry(&s.system, b, n)?;
    let target = global.target_block;
    let domain = subpairs::family_domain(s, &top.q);
    let family = subpairs::family_from(s, b, &top, &domain, Chain::Normalizer)?;
    let cp = s.centralizer(&top.q)?;
    let target_top = BrauerPair {
        q: top.q.clone(),
        block: cp.system.sigma_power(top.block, n),
    };
    let target_family = subpairs::family_from(s, target, &target_top, &domain, Chain::Normalizer)?;
    let mut cyclic = Vec::new();
    for (q, generators) in cyclic_subgroups_with_generators(&s.group, &top.q) {
        let c = s.centralizer(&q)?;
        let e_q = family.get(&q).expect("cyclic subgroups are in the domain").block;
        let f_q = target_family.get(&q).expect("cyclic subgroups are in the domain").block;
        let isometry = build_isometry(&c.system, e_q, n)?;
        let mu = MuFunction::compute(&c.system.table, &c.system.table, &isometry);
        cyclic.push(QInputs {
            e_coeffs: coeffs_of(&c, e_q),
            f_coeffs: coeffs_of(&c, f_q),
            q,
            generators,
            centralizer: c,
            e_q,
            f_q,
            isometry,
            mu,
        });
    }
    Ok(IsotypyInputs {
        block: b,
        power: n,
        target_block: target,
        strict,
        global,
        family,
        target_family,
        cyclic,
    })
}

/// Builds every object the isotypy check consumes, for the deterministic
/// maximal pair.
pub fn prepare(s: &Session, b: usize, n: u64, strict: bool) -> Result<IsotypyInputs> {
    if b >= s.system.len() {
        return Err(Error::Parse(format!(
            "block index {b} out of range (0..{})",
            s.system.len()
        )));
    }
    let top = subpairs::maximal_pair(s, b)?;
    prepare_with(s, b, n, strict, top)
}

fn family_record(s: &Session, inputs: &IsotypyInputs) -> Result<FamilyRecord> {
    let mut ok = inputs.target_family.p_group == inputs.family.p_group;
    for (k, m) in &inputs.family.members {
        let c = s.centralizer(&m.q)?;
        let expect = c.system.sigma_power(m.block, inputs.power);
        ok &= inputs.target_family.members.get(k).map(|t| t.block) == Some(expect);
    }
    // (P, sigma^n e_P) must be a maximal Brauer pair of the target block.
    let top = inputs.target_family.maximal();
    let eligible = subpairs::eligible_maximal_blocks(s, inputs.target_block, &top.q)?;
    ok &= eligible.contains(&top.block);
    ok &= top.q.order()
        == (s.p as usize).pow(s.system.blocks[inputs.target_block].defect);
    Ok(FamilyRecord {
        members: inputs
            .family
            .members
            .iter()
            .map(|(k, m)| (k.clone(), m.block))
            .collect(),
        galois_compatible: ok,
    })
}

fn fusion_record(s: &Session, inputs: &IsotypyInputs) -> Result<FusionRecord> {
    let p_order = inputs.family.p_group.order();
    if p_order as u64 > s.limits().fusion_cap {
        return Ok(FusionRecord {
            status: "skipped".into(),
            p_order,
            morphisms: None,
            witness: None,
        });
    }
    let a = subpairs::fusion_category(s, &inputs.family)?;
    let b = subpairs::fusion_category(s, &inputs.target_family)?;
    let (equal, witness) = subpairs::fusion_equal(&a, &b);
    Ok(FusionRecord {
        status: if equal { "equal" } else { "different" }.into(),
        p_order,
        morphisms: Some(a.morphism_count()),
        witness,
    })
}

fn cyclic_record(
    s: &Session,
    inputs: &IsotypyInputs,
    qi: &QInputs,
) -> Result<(CyclicRecord, Option<Witness>)> {
    let g = &s.group;
    let p = s.p;
    let c = &qi.centralizer;
    let h_table: &Arc<CharacterTable> = &c.system.table;
    let h = &c.embedded;
    let mut witness = None;
    let mut status = CheckStatus::Pass;

    let expected_iso = build_isometry(&c.system, qi.e_q, inputs.power)?;
    let iso_ok = qi.isometry.map == expected_iso.map
        && qi.isometry.target_block == qi.f_q
        && qi.isometry.all_signs_positive();
    if !iso_ok {
        status = CheckStatus::Fail;
        witness.get_or_insert(Witness {
            check: "isometry".into(),
            detail: format!(
                "I^Q on |Q| = {} is not tau -> sigma^{}(tau) with positive signs: {:?}",
                qi.q.order(),
                inputs.power,
                qi.isometry.signs
            ),
        });
    }
    let recomputed = MuFunction::compute(h_table, h_table, &qi.isometry);
    let mu_consistent = recomputed == qi.mu;
    if !mu_consistent {
        status = CheckStatus::Fail;
        let (x, y) = first_difference(&recomputed, &qi.mu);
        witness.get_or_insert(Witness {
            check: "mu".into(),
            detail: format!(
                "mu({x}, {y}) = {} but sum chi(x) I(chi)(y) = {}",
                qi.mu.values[x][y], recomputed.values[x][y]
            ),
        });
    }
    let pairs = verify_perfect_isometry(&s.local, h_table, h_table, &qi.mu, inputs.strict);
    for r in &pairs {
        status = status.combine(r.status);
        if r.status == CheckStatus::Fail {
            witness.get_or_insert(Witness {
                check: "perfect isometry".into(),
                detail: format!(
                    "classes ({}, {}) of C_G(Q), |Q| = {}: mu = {}, valuation {:?}, required {}",
                    r.x,
                    r.y,
                    qi.q.order(),
                    r.mu,
                    r.valuation,
                    r.required
                ),
            });
        }
    }

    let mut squares = Vec::new();
    let gt = &s.table;
    let gi = &inputs.global;
    let n = inputs.power;
    let pn = (p as i64).pow(n as u32);
    for &x in &qi.generators {
        for (&(chi, image), &sign) in gi.map.iter().zip(&gi.signs) {
            let lhs_fn = gen_decomp(gt.row(chi), gt, x, h, h_table, Some(&qi.e_coeffs), p)?;
            let rhs_fn = gen_decomp(gt.row(image), gt, x, h, h_table, Some(&qi.f_coeffs), p)?;
            for (k, cls) in h.group.classes().iter().enumerate() {
                if !cls.is_p_regular(p) {
                    continue;
                }
                let lhs = lhs_fn.values[h_table.power_class(k, pn)].clone();
                let rhs = if sign < 0 {
                    -rhs_fn.values[k].clone()
                } else {
                    rhs_fn.values[k].clone()
                };
                let equal = lhs == rhs;
                if !equal {
                    status = CheckStatus::Fail;
                    witness.get_or_insert(Witness {
                        check: "commuting square".into(),
                        detail: format!(
                            "x = {}, chi = {chi}, class {k} of C_G(Q): {lhs} != {rhs}",
                            g.element(x)
                        ),
                    });
                }
                squares.push(SquareRecord {
                    generator: g.element(x).to_string(),
                    character: chi,
                    class: k,
                    lhs,
                    rhs,
                    equal,
                });
            }
        }
    }
    let record = CyclicRecord {
        generators: qi.generators.iter().map(|&x| g.element(x).to_string()).collect(),
        order: qi.q.order(),
        centralizer_order: c.centralizer.order(),
        e_q: qi.e_q,
        f_q: qi.f_q,
        isometry: qi.isometry.clone(),
        mu_consistent,
        perfect_isometry: pairs,
        squares,
        status,
    };
    Ok((record, witness))
}

fn first_difference(a: &MuFunction, b: &MuFunction) -> (usize, usize) {
    for (x, row) in a.values.iter().enumerate() {
        for (y, v) in row.iter().enumerate() {
            if b.values.get(x).and_then(|r| r.get(y)) != Some(v) {
                return (x, y);
            }
        }
    }
    (0, 0)
}

/// Runs every check on prepared inputs.
pub fn verify(s: &Session, inputs: &IsotypyInputs) -> Result<IsotypyCertificate> {
    let g = &s.group;
    let mut status = CheckStatus::Pass;
    let mut witness = None;

    let expected_global = build_isometry(&s.system, inputs.block, inputs.power)?;
    let signs_positive = inputs.global.all_signs_positive();
    if inputs.global.map != expected_global.map || !signs_positive {
        status = CheckStatus::Fail;
        witness = Some(Witness {
            check: "global isometry".into(),
            detail: format!(
                "I^{{1}} differs from chi -> sigma^{}(chi) with positive signs: signs {:?}",
                inputs.power, inputs.global.signs
            ),
        });
    }
    let family = family_record(s, inputs)?;
    if !family.galois_compatible {
        status = CheckStatus::Fail;
        witness.get_or_insert(Witness {
            check: "subpair family".into(),
            detail: "target family is not Q -> sigma^n(e_Q)".into(),
        });
    }
    let fusion = fusion_record(s, inputs)?;
    if fusion.status == "different" {
        status = CheckStatus::Fail;
        witness.get_or_insert(Witness {
            check: "fusion".into(),
            detail: format!("{:?}", fusion.witness),
        });
    }
    let mut cyclic = Vec::new();
    for qi in &inputs.cyclic {
        let (rec, w) = cyclic_record(s, inputs, qi)?;
        status = status.combine(rec.status);
        if let Some(w) = w {
            witness.get_or_insert(w);
        }
        cyclic.push(rec);
    }
    let top = inputs.family.maximal();
    Ok(IsotypyCertificate {
        schema_version: SCHEMA_VERSION,
        group: g.name().to_string(),
        group_hash: g.hash().to_string(),
        prime: s.p,
        conductor: s.conductor(),
        residue_modulus: s.local.residue_field().modulus().to_vec(),
        block: inputs.block,
        power: inputs.power,
        target_block: inputs.target_block,
        strict: inputs.strict,
        morphism_condition: "(gQ, g e_Q g^-1) <= (R, e_R)".into(),
        defect_group: top.q.elements.iter().map(|&x| g.element(x).to_string()).collect(),
        maximal_pair_block: top.block,
        global_isometry: inputs.global.clone(),
        signs_positive,
        family,
        fusion,
        cyclic,
        alternative_maximal_pairs: Vec::new(),
        verdict: status.into(),
        witness,
    })
}

/// Full isotypy check between b and sigma^n(b).
pub fn verify_isotypy(
    s: &Session,
    b: usize,
    n: u64,
    options: IsotypyOptions,
) -> Result<IsotypyCertificate> {
    let inputs = prepare(s, b, n, options.strict)?;
    let mut cert = verify(s, &inputs)?;
    if options.all_maximal_pairs {
        let p_group = inputs.family.p_group.clone();
        for e in subpairs::eligible_maximal_blocks(s, b, &p_group)? {
            if e == cert.maximal_pair_block {
                continue;
            }
            let top = BrauerPair {
                q: p_group.clone(),
                block: e,
            };
            let alt = verify(s, &prepare_with(s, b, n, options.strict, top)?)?;
            if alt.verdict != Verdict::Pass && cert.verdict == Verdict::Pass {
                cert.verdict = alt.verdict;
                cert.witness = alt.witness.clone();
            }
            cert.alternative_maximal_pairs.push((e, alt.verdict));
        }
    }
    Ok(cert)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RecheckReport {
    pub verdict: Verdict,
    pub stored_verdict: Verdict,
    pub mismatches: Vec<String>,
}

/// Replays a certificate: every stored record is recomputed and compared,
/// and the stored perfect-isometry records are re-judged on their own.
pub fn recheck(s: &Session, cert: &IsotypyCertificate) -> Result<RecheckReport> {
    let mut mismatches = Vec::new();
    if cert.group_hash != s.group.hash() || cert.prime != s.p {
        mismatches.push("group or prime differs from the certificate".into());
        return Ok(RecheckReport {
            verdict: Verdict::Fail,
            stored_verdict: cert.verdict,
            mismatches,
        });
    }
    for (qi, rec) in cert.cyclic.iter().enumerate() {
        for r in &rec.perfect_isometry {
            let ok = match s.local.valuation_of(&r.mu) {
                Ok(None) => true,
                Ok(Some(v)) => v >= r.required && Some(v) == r.valuation,
                Err(_) => r.status == CheckStatus::Inconclusive,
            };
            if !ok && r.status == CheckStatus::Pass {
                mismatches.push(format!(
                    "cyclic[{qi}] pair ({}, {}): stored pass is not supported by mu = {}",
                    r.x, r.y, r.mu
                ));
            }
        }
        for sq in &rec.squares {
            if sq.equal != (sq.lhs == sq.rhs) {
                mismatches.push(format!(
                    "cyclic[{qi}] square chi = {} class {}: stored equality flag is wrong",
                    sq.character, sq.class
                ));
            }
        }
    }
    let options = IsotypyOptions {
        strict: cert.strict,
        all_maximal_pairs: !cert.alternative_maximal_pairs.is_empty(),
    };
    let fresh = verify_isotypy(s, cert.block, cert.power, options)?;
    let a = serde_json::to_value(&fresh)?;
    let b = serde_json::to_value(cert)?;
    diff_json("", &a, &b, &mut mismatches);
    let verdict = if !mismatches.is_empty() {
        Verdict::Fail
    } else {
        fresh.verdict
    };
    Ok(RecheckReport {
        verdict,
        stored_verdict: cert.verdict,
        mismatches,
    })
}

fn diff_json(path: &str, a: &serde_json::Value, b: &serde_json::Value, out: &mut Vec<String>) {
    use serde_json::Value;
    if out.len() >= 20 {
        return;
    }
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            for (k, v) in x {
                match y.get(k) {
                    Some(w) => diff_json(&format!("{path}/{k}"), v, w, out),
                    None => out.push(format!("{path}/{k}: missing from certificate")),
                }
            }
            for k in y.keys().filter(|k| !x.contains_key(*k)) {
                out.push(format!("{path}/{k}: unexpected field"));
            }
        }
        (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
            for (i, (v, w)) in x.iter().zip(y).enumerate() {
                diff_json(&format!("{path}/{i}"), v, w, out);
            }
        }
        _ if a == b => {}
        _ => out.push(format!("{path}: recomputed {a} but certificate has {b}")),
    }
}

/// Checks the residue-level idempotents of a family (used in tests).
pub fn family_blocks_are_brauer_pairs(s: &Session, family: &SubpairFamily) -> Result<bool> {
    let f = s.local.field();
    let br = algebra::brauer_hom(f, &s.group, &s.block_dense(family.block), &family.p_group)?;
    let top = family.maximal();
    let c = s.centralizer(&top.q)?;
    Ok(algebra::mul(f, &s.group, &br, &c.dense[top.block]) == c.dense[top.block])
}
