//! The isometries I^H, perfect-isometry checks, generalized decomposition
//! maps and the isotypy between a block and its Galois conjugate.

pub mod certificate;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::blocks::BlockSystem;
use crate::chartab::{CharacterTable, ClassFunction, Support};
use crate::error::{Error, Result};
use crate::localfield::LocalContext;
use crate::perm::EmbeddedGroup;
use crate::{arith, Cyclotomic, Rational};

pub use certificate::{
    prepare, recheck, verify, verify_isotypy, IsotypyCertificate, IsotypyInputs, IsotypyOptions,
    QInputs, RecheckReport, Verdict,
};

/// I^H(phi)(x) = phi(x_p x_p'^p). On p-regular support this is
/// y -> phi(y^p).
pub fn apply_ih(phi: &ClassFunction, p: u64) -> ClassFunction {
    let t = &phi.table;
    let values = (0..t.len())
        .map(|k| match phi.support {
            Support::PRegular(_) if !t.group().classes()[k].is_p_regular(p) => {
                Cyclotomic::zero(t.conductor())
            }
            _ => phi.values[t.ih_class(k, p)].clone(),
        })
        .collect();
    ClassFunction {
        table: t.clone(),
        values,
        support: phi.support,
    }
}

/// A signed bijection between the characters of two blocks of one table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Isometry {
    pub source_block: usize,
    pub target_block: usize,
    pub power: u64,
    /// (chi, I(chi)) as row indices, sorted by chi.
    pub map: Vec<(usize, usize)>,
    pub signs: Vec<i8>,
}

impl Isometry {
    pub fn all_signs_positive(&self) -> bool {
        self.signs.iter().all(|&s| s == 1)
    }
}

/// chi -> sigma^n(chi) on the characters of block b, all signs +1, with
/// the image checked to be exactly the characters of sigma^n(b).
pub fn build_isometry(sys: &BlockSystem, b: usize, n: u64) -> Result<Isometry> {
    let perm = sys.table.sigma_permutation(sys.p, n)?;
    let target = sys.galois_image(b, n)?;
    let irr = &sys.blocks[b].irr;
    let map: Vec<(usize, usize)> = irr.iter().map(|&chi| (chi, perm[chi])).collect();
    let mut images: Vec<usize> = map.iter().map(|&(_, i)| i).collect();
    images.sort_unstable();
    if images != sys.blocks[target].irr {
        return Err(Error::internal(format!(
            "sigma^{n} does not map the characters of block {b} onto block {target}"
        )));
    }
    Ok(Isometry {
        source_block: b,
        target_block: target,
        power: n,
        signs: vec![1; map.len()],
        map,
    })
}

/// mu(x, y) = sum_chi chi(x) I(chi)(y) on class pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuFunction {
    pub values: Vec<Vec<Cyclotomic>>,
}

impl MuFunction {
    pub fn compute(source: &CharacterTable, target: &CharacterTable, iso: &Isometry) -> Self {
        let n = num_integer::lcm(source.conductor(), target.conductor());
        let values = (0..source.len())
            .map(|x| {
                (0..target.len())
                    .map(|y| {
                        iso.map.iter().zip(&iso.signs).fold(
                            Cyclotomic::zero(n),
                            |acc, (&(chi, psi), &sign)| {
                                let term = source.value(chi, x) * target.value(psi, y);
                                if sign < 0 {
                                    acc - term
                                } else {
                                    acc + term
                                }
                            },
                        )
                    })
                    .collect()
            })
            .collect();
        MuFunction { values }
    }
}

/// Outcome of one class-pair check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PairRecord {
    pub x: usize,
    pub y: usize,
    pub mu: Cyclotomic,
    /// `None` for mu = 0; "inconclusive" is recorded in `status`.
    pub valuation: Option<i64>,
    pub required: i64,
    pub status: CheckStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

impl CheckStatus {
    pub fn combine(self, other: CheckStatus) -> CheckStatus {
        use CheckStatus::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }
}

/// Conditions (a) and (b) over every class pair: v(mu) >= e v_p|C_G(x)|
/// (and e v_p|C_H(y)| when strict), and mu = 0 when exactly one of x, y
/// is p-singular.
pub fn verify_perfect_isometry(
    local: &LocalContext,
    source: &CharacterTable,
    target: &CharacterTable,
    mu: &MuFunction,
    strict: bool,
) -> Vec<PairRecord> {
    let p = local.p();
    let gs = source.group();
    let hs = target.group();
    let mut out = Vec::new();
    for (x, cx) in gs.classes().iter().enumerate() {
        let cent_x = (gs.order() / cx.size) as u64;
        for (y, cy) in hs.classes().iter().enumerate() {
            let cent_y = (hs.order() / cy.size) as u64;
            let value = &mu.values[x][y];
            let mut required = local.scaled_vp(cent_x);
            if strict {
                required = required.max(local.scaled_vp(cent_y));
            }
            let mixed = cx.is_p_regular(p) != cy.is_p_regular(p);
            let (valuation, mut status) = match local.valuation_of(value) {
                Ok(None) => (None, CheckStatus::Pass),
                Ok(Some(v)) if v >= required => (Some(v), CheckStatus::Pass),
                Ok(Some(v)) => (Some(v), CheckStatus::Fail),
                Err(_) => (None, CheckStatus::Inconclusive),
            };
            if mixed && !value.is_zero() {
                status = CheckStatus::Fail;
            }
            out.push(PairRecord {
                x,
                y,
                mu: value.clone(),
                valuation,
                required,
                status,
            });
        }
    }
    out
}

/// d^(x,e)(chi)(y) = sum_{h in supp e} alpha_h chi(x h y) for y in the
/// p-regular classes of H = C_G(x); `e = None` means e = 1.
///
/// `chi` is a class function of G; `e` gives coefficients on H's classes.
pub fn gen_decomp(
    chi: &[Cyclotomic],
    g_table: &CharacterTable,
    x: usize,
    h: &EmbeddedGroup,
    h_table: &Arc<CharacterTable>,
    e: Option<&[Cyclotomic]>,
    p: u64,
) -> Result<ClassFunction> {
    let g = g_table.group();
    if !g.is_p_element(x, p) {
        return Err(Error::NotPElement);
    }
    if h.into_parent.len() != g.centralizer(x)?.order()
        || h.into_parent.iter().any(|&c| g.mul(c, x) != g.mul(x, c))
    {
        return Err(Error::internal("H is not the centralizer of x"));
    }
    let hg = &h.group;
    let n = num_integer::lcm(g_table.conductor(), h_table.conductor());
    let r_g = g_table.len();
    let mut values = Vec::with_capacity(hg.class_count());
    for c in hg.classes() {
        if !c.is_p_regular(p) {
            values.push(Cyclotomic::zero(n));
            continue;
        }
        let y = h.into_parent[c.representative];
        let value = match e {
            None => chi[g.class_of(g.mul(x, y))].clone(),
            Some(coeffs) => {
                // counts[k][c] = #{h in class k of H : x h y in G-class c}
                let mut counts = vec![vec![0i64; r_g]; hg.class_count()];
                for (hi, &hp) in h.into_parent.iter().enumerate() {
                    let k = hg.class_of(hi);
                    if coeffs[k].is_zero() {
                        continue;
                    }
                    counts[k][g.class_of(g.mul(g.mul(x, hp), y))] += 1;
                }
                let mut acc = Cyclotomic::zero(n);
                for (k, row) in counts.iter().enumerate() {
                    if coeffs[k].is_zero() {
                        continue;
                    }
                    let mut inner = Cyclotomic::zero(n);
                    for (cls, &cnt) in row.iter().enumerate() {
                        if cnt != 0 {
                            inner = inner + chi[cls].scale(&Rational::from_integer(cnt.into()));
                        }
                    }
                    acc = acc + &coeffs[k] * &inner;
                }
                acc
            }
        };
        values.push(value);
    }
    Ok(ClassFunction {
        table: h_table.clone(),
        values,
        support: Support::PRegular(p),
    })
}

/// Order of sigma on characters divides the order of p mod exp(G)_p'.
pub fn ih_period(table: &CharacterTable, p: u64) -> u64 {
    let npp = arith::split_p(table.group().exponent(), p).1;
    arith::mult_order(p % npp.max(1), npp).max(1)
}
