//! p-blocks: the central-character partition, block idempotents and their
//! reductions, the Galois action, defect groups and Brauer pairs.

pub mod algebra;
pub mod subpairs;

use std::sync::Arc;

use crate::chartab::CharacterTable;
use crate::cyclo::sigma_k0;
use crate::error::{Error, Result};
use crate::field::{Field, FiniteField};
use crate::gf::{GaloisField, GfElem};
use crate::localfield::LocalContext;
use crate::{arith, Cyclotomic, Rational};

pub use subpairs::{
    fusion_category, fusion_equal, BrauerPair, FusionData, FusionWitness, SubpairFamily,
};

/// A block of the group algebra: its characters, the exact idempotent and
/// its reduction, both as functions on classes.
#[derive(Clone, Debug)]
pub struct BlockIdempotent {
    pub index: usize,
    pub irr: Vec<usize>,
    pub coeffs: Vec<Cyclotomic>,
    pub residue: Vec<GfElem>,
    pub defect: u32,
}

/// All p-blocks of one group with the action of sigma_K0 on them.
#[derive(Debug)]
pub struct BlockSystem {
    pub table: Arc<CharacterTable>,
    pub p: u64,
    pub field: GaloisField,
    pub blocks: Vec<BlockIdempotent>,
    /// Block index of each character row.
    pub block_of: Vec<usize>,
    /// sigma_K0 as a permutation of block indices.
    pub sigma: Vec<usize>,
}

/// Rows grouped by equal residues of their central characters, in order of
/// least row index.
pub fn block_partition(table: &CharacterTable, local: &LocalContext) -> Result<Vec<Vec<usize>>> {
    let r = table.len();
    let mut keys: Vec<Vec<GfElem>> = Vec::with_capacity(r);
    for chi in 0..r {
        let key = (0..r)
            .map(|k| {
                local
                    .reduce_p_integral(&table.central_character(chi, k))
                    .map_err(|e| match e {
                        Error::NotIntegral => Error::internal(format!(
                            "central character of row {chi} is not integral at class {k}"
                        )),
                        other => other,
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        keys.push(key);
    }
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut part_keys: Vec<&Vec<GfElem>> = Vec::new();
    for (chi, key) in keys.iter().enumerate() {
        match part_keys.iter().position(|k| *k == key) {
            Some(i) => parts[i].push(chi),
            None => {
                part_keys.push(key);
                parts.push(vec![chi]);
            }
        }
    }
    Ok(parts)
}

/// alpha_k = sum_{chi in B} chi(1) chi(g_k^-1) / |G|.
pub fn block_idempotent_coeffs(table: &CharacterTable, irr: &[usize]) -> Vec<Cyclotomic> {
    let order = table.group().order() as i64;
    let inv = table.inverse_map();
    (0..table.len())
        .map(|k| {
            let mut s = Cyclotomic::zero(table.conductor());
            for &chi in irr {
                s = s + table
                    .value(chi, inv[k])
                    .scale(&Rational::from_integer((table.degree(chi) as i64).into()));
            }
            s.scale(&Rational::new(1.into(), order.into()))
        })
        .collect()
}

/// d = v_p(|G|) - min over the block of v_p(chi(1)).
pub fn defect(table: &CharacterTable, irr: &[usize], p: u64) -> u32 {
    let top = arith::vp(table.group().order() as u64, p);
    let low = irr
        .iter()
        .map(|&chi| arith::vp(table.degree(chi), p))
        .min()
        .unwrap_or(0);
    top - low
}

/// Product of two class functions viewed as central elements sum a_k C_k,
/// via class multiplication coefficients.
pub fn central_product(table: &CharacterTable, a: &[Cyclotomic], b: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let consts = table.class_constants();
    let r = table.len();
    let mut out = vec![Cyclotomic::zero(table.conductor()); r];
    for j in 0..r {
        if a[j].is_zero() {
            continue;
        }
        for i in 0..r {
            if b[i].is_zero() {
                continue;
            }
            let ab = &a[j] * &b[i];
            for (k, slot) in out.iter_mut().enumerate() {
                let c = consts[j][i][k];
                if c != 0 {
                    *slot = &*slot + &ab.scale(&Rational::from_integer(c.into()));
                }
            }
        }
    }
    out
}

impl BlockSystem {
    /// Partitions, builds and verifies every block idempotent: b^2 = b,
    /// support on p-regular classes, coefficients in Q(zeta_N') and
    /// p-integral, sum of all blocks = 1, and the sigma action with its
    /// residue compatibility.
    pub fn compute(table: Arc<CharacterTable>, local: &LocalContext) -> Result<Self> {
        let p = local.p();
        let g = table.group().clone();
        let n = table.conductor();
        let npp = arith::split_p(n, p).1;
        let parts = block_partition(&table, local)?;
        let mut block_of = vec![0; table.len()];
        let mut blocks = Vec::with_capacity(parts.len());
        for (index, irr) in parts.into_iter().enumerate() {
            for &chi in &irr {
                block_of[chi] = index;
            }
            let coeffs = block_idempotent_coeffs(&table, &irr);
            for (k, c) in coeffs.iter().enumerate() {
                if !g.classes()[k].is_p_regular(p) && !c.is_zero() {
                    return Err(Error::internal(format!(
                        "block {index} has a nonzero coefficient on p-singular class {k}"
                    )));
                }
                if !c.lies_in_subfield(npp) {
                    return Err(Error::internal(format!(
                        "block {index} coefficient at class {k} is not in Q(zeta_{npp})"
                    )));
                }
            }
            let residue = coeffs
                .iter()
                .map(|c| {
                    local.reduce_p_integral(c).map_err(|e| match e {
                        Error::NotIntegral => {
                            Error::internal(format!("block {index} coefficient is not p-integral"))
                        }
                        other => other,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if central_product(&table, &coeffs, &coeffs) != coeffs {
                return Err(Error::internal(format!("block {index} is not idempotent")));
            }
            let d = defect(&table, &irr, p);
            blocks.push(BlockIdempotent {
                index,
                irr,
                coeffs,
                residue,
                defect: d,
            });
        }
        let mut total = vec![Cyclotomic::zero(n); table.len()];
        for b in &blocks {
            for (t, c) in total.iter_mut().zip(&b.coeffs) {
                *t = &*t + c;
            }
        }
        let mut one = vec![Cyclotomic::zero(n); table.len()];
        one[0] = Cyclotomic::one(n);
        if total != one {
            return Err(Error::internal("block idempotents do not sum to 1"));
        }
        let mut sys = BlockSystem {
            table,
            p,
            field: local.field().clone(),
            blocks,
            block_of,
            sigma: Vec::new(),
        };
        sys.sigma = (0..sys.blocks.len())
            .map(|b| sys.galois_image(b, 1))
            .collect::<Result<_>>()?;
        Ok(sys)
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block(&self, i: usize) -> &BlockIdempotent {
        &self.blocks[i]
    }

    /// Index of sigma^n(b), found by exact coefficient comparison and checked
    /// at residue level against the coefficientwise p^n-th power.
    pub fn galois_image(&self, b: usize, n: u64) -> Result<usize> {
        let sigma = sigma_k0(self.p, self.table.conductor()).pow(n);
        let image: Vec<Cyclotomic> = self.blocks[b].coeffs.iter().map(|c| sigma.apply(c)).collect();
        let target = self
            .blocks
            .iter()
            .position(|c| c.coeffs == image)
            .ok_or_else(|| Error::internal(format!("sigma^{n} of block {b} is not a block")))?;
        let powered = self.frobenius_residue(&self.blocks[b].residue, n);
        if powered != self.blocks[target].residue {
            return Err(Error::internal(format!(
                "residue of sigma^{n}(b{b}) is not the p^{n}-power of the residue"
            )));
        }
        Ok(target)
    }

    /// Coefficientwise x -> x^(p^n).
    pub fn frobenius_residue(&self, v: &[GfElem], n: u64) -> Vec<GfElem> {
        v.iter()
            .map(|x| {
                let mut y = x.clone();
                for _ in 0..n % self.field.prime_degree() as u64 {
                    y = self.field.frobenius(&y);
                }
                y
            })
            .collect()
    }

    /// sigma^n as a permutation of blocks.
    pub fn sigma_power(&self, b: usize, n: u64) -> usize {
        (0..n).fold(b, |x, _| self.sigma[x])
    }

    /// Orbits of sigma on blocks, each sorted, ordered by least member.
    pub fn galois_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.blocks.len()];
        let mut orbits = Vec::new();
        for b in 0..self.blocks.len() {
            if seen[b] {
                continue;
            }
            let mut orbit = vec![b];
            seen[b] = true;
            let mut x = self.sigma[b];
            while x != b {
                seen[x] = true;
                orbit.push(x);
                x = self.sigma[x];
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    pub fn orbit_length(&self, b: usize) -> usize {
        let mut len = 1;
        let mut x = self.sigma[b];
        while x != b {
            len += 1;
            x = self.sigma[x];
        }
        len
    }

    /// Residue of block b as a dense vector on the elements of its group.
    pub fn residue_dense(&self, b: usize) -> Vec<GfElem> {
        let g = self.table.group();
        (0..g.order())
            .map(|x| self.blocks[b].residue[g.class_of(x)].clone())
            .collect()
    }

    /// Exact coefficient of block b at an element.
    pub fn coeff_at(&self, b: usize, x: usize) -> &Cyclotomic {
        &self.blocks[b].coeffs[self.table.group().class_of(x)]
    }

    /// Zero vector of the residue field, sized to the group.
    pub fn zero_dense(&self) -> Vec<GfElem> {
        vec![self.field.zero(); self.table.group().order()]
    }
}
