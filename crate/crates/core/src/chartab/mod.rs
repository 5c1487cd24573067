//! Exact ordinary character tables, class functions and the Galois action
//! on characters.

pub mod cache;
pub mod dixon;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::cyclo::{sigma_k0, GaloisAutomorphism};
use crate::error::{Error, Result};
use crate::perm::{EmbeddedGroup, Group};
use crate::{arith, Cyclotomic, Rational};

/// The irreducible characters of a group, values in Q(zeta_N).
///
/// Rows are sorted by (degree, trivial first, coefficient vectors); columns
/// follow the group's class order.
#[derive(Debug)]
pub struct CharacterTable {
    group: Arc<Group>,
    conductor: u64,
    values: Vec<Vec<Cyclotomic>>,
    power_maps: BTreeMap<u64, Vec<usize>>,
    inverse_map: Vec<usize>,
    degrees: Vec<u64>,
    constants: OnceLock<Vec<Vec<Vec<u32>>>>,
}

/// Which classes a class function is defined on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Support {
    All,
    /// Only the p-regular classes; entries on p-singular classes are zero.
    PRegular(u64),
}

/// A class function, one value per class of its table's group.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    pub table: Arc<CharacterTable>,
    pub values: Vec<Cyclotomic>,
    pub support: Support,
}

impl ClassFunction {
    pub fn new(table: Arc<CharacterTable>, values: Vec<Cyclotomic>) -> Self {
        ClassFunction {
            table,
            values,
            support: Support::All,
        }
    }

    /// Restriction to p-regular classes.
    pub fn truncate_p_regular(&self, p: u64) -> ClassFunction {
        let g = self.table.group();
        let values = self
            .values
            .iter()
            .zip(g.classes())
            .map(|(v, c)| {
                if c.is_p_regular(p) {
                    v.clone()
                } else {
                    Cyclotomic::zero(self.table.conductor())
                }
            })
            .collect();
        ClassFunction {
            table: self.table.clone(),
            values,
            support: Support::PRegular(p),
        }
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction {
            table: self.table.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
            support: self.support,
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> ClassFunction {
        ClassFunction {
            table: self.table.clone(),
            values: self.values.iter().map(|a| a * c).collect(),
            support: self.support,
        }
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.table.group().hash() == other.table.group().hash()
            && self.support == other.support
            && self.values == other.values
    }
}

impl CharacterTable {
    /// Computes the table by Dixon–Schneider and verifies it.
    pub fn compute(group: Arc<Group>) -> Result<Self> {
        let consts = dixon::class_constants(&group);
        let values = dixon::compute_values(&group, &consts)?;
        let table = Self::assemble(group, values)?;
        let _ = table.constants.set(consts);
        table.verify_orthogonality()?;
        Ok(table)
    }

    /// Builds a table from unsorted rows without verification.
    pub(crate) fn assemble(group: Arc<Group>, mut values: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let conductor = group.exponent();
        let r = group.class_count();
        if values.len() != r || values.iter().any(|row| row.len() != r) {
            return Err(Error::TableVerification(format!(
                "table is not square of size {r}"
            )));
        }
        for row in values.iter_mut() {
            for v in row.iter_mut() {
                if conductor % v.conductor() != 0 {
                    return Err(Error::TableVerification(format!(
                        "value conductor {} does not divide the exponent {conductor}",
                        v.conductor()
                    )));
                }
                *v = v.lift(conductor);
            }
        }
        let mut degrees = Vec::with_capacity(r);
        for row in &values {
            let d = row[0]
                .to_scalar()
                .filter(|d| d.is_integer() && d > &Rational::from_integer(0.into()))
                .and_then(|d| num_traits::ToPrimitive::to_u64(d.numer()))
                .ok_or_else(|| Error::TableVerification("degree is not a positive integer".into()))?;
            if group.order() as u64 % d != 0 {
                return Err(Error::TableVerification(format!(
                    "degree {d} does not divide the group order"
                )));
            }
            degrees.push(d);
        }
        let mut order: Vec<usize> = (0..r).collect();
        let is_trivial = |row: &[Cyclotomic]| row.iter().all(|v| v.to_scalar() == Some(Rational::from_integer(1.into())));
        order.sort_by(|&a, &b| {
            degrees[a]
                .cmp(&degrees[b])
                .then_with(|| is_trivial(&values[b]).cmp(&is_trivial(&values[a])))
                .then_with(|| {
                    let ka = values[a].iter().map(|v| v.coeffs());
                    let kb = values[b].iter().map(|v| v.coeffs());
                    ka.cmp(kb)
                })
        });
        let values: Vec<Vec<Cyclotomic>> = order.iter().map(|&i| values[i].clone()).collect();
        let degrees: Vec<u64> = order.iter().map(|&i| degrees[i]).collect();
        let power_maps = arith::divisors(conductor)
            .into_iter()
            .map(|t| {
                let map = group
                    .classes()
                    .iter()
                    .map(|c| group.class_of(group.pow(c.representative, t as i64)))
                    .collect();
                (t, map)
            })
            .collect();
        let inverse_map = group
            .classes()
            .iter()
            .map(|c| group.class_of(group.inv(c.representative)))
            .collect();
        Ok(CharacterTable {
            group,
            conductor,
            values,
            power_maps,
            inverse_map,
            degrees,
            constants: OnceLock::new(),
        })
    }

    /// The same table with values lifted to a multiple of the conductor.
    pub fn with_conductor(&self, n: u64) -> Result<Self> {
        if n % self.group.exponent() != 0 {
            return Err(Error::Parse(format!(
                "conductor {n} is not a multiple of the exponent {}",
                self.group.exponent()
            )));
        }
        let values = self
            .values
            .iter()
            .map(|row| row.iter().map(|v| v.lift(n)).collect())
            .collect();
        let constants = OnceLock::new();
        if let Some(c) = self.constants.get() {
            let _ = constants.set(c.clone());
        }
        Ok(CharacterTable {
            group: self.group.clone(),
            conductor: n,
            values,
            power_maps: self.power_maps.clone(),
            inverse_map: self.inverse_map.clone(),
            degrees: self.degrees.clone(),
            constants,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Vec<Cyclotomic>] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.values[i]
    }

    pub fn value(&self, i: usize, class: usize) -> &Cyclotomic {
        &self.values[i][class]
    }

    /// chi_i evaluated at a group element index.
    pub fn value_at(&self, i: usize, g: usize) -> &Cyclotomic {
        &self.values[i][self.group.class_of(g)]
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.degrees[i]
    }

    pub fn power_maps(&self) -> &BTreeMap<u64, Vec<usize>> {
        &self.power_maps
    }

    /// Class of g^t for g in class `k`, any integer t.
    pub fn power_class(&self, k: usize, t: i64) -> usize {
        let rep = self.group.classes()[k].representative;
        self.group.class_of(self.group.pow(rep, t))
    }

    pub fn inverse_map(&self) -> &[usize] {
        &self.inverse_map
    }

    pub fn class_sizes(&self) -> Vec<u64> {
        self.group.classes().iter().map(|c| c.size as u64).collect()
    }

    /// Class multiplication coefficients a[j][i][k].
    pub fn class_constants(&self) -> &[Vec<Vec<u32>>] {
        self.constants
            .get_or_init(|| dixon::class_constants(&self.group))
    }

    pub fn character(self: &Arc<Self>, i: usize) -> ClassFunction {
        ClassFunction::new(self.clone(), self.values[i].clone())
    }

    /// Row index of an exact value vector.
    pub fn find_row(&self, values: &[Cyclotomic]) -> Option<usize> {
        self.values.iter().position(|row| row.as_slice() == values)
    }

    /// The trivial character's row (always 0).
    pub fn trivial_row(&self) -> usize {
        0
    }

    /// omega_chi(C) = |C| chi(g_C) / chi(1).
    pub fn central_character(&self, i: usize, class: usize) -> Cyclotomic {
        let size = self.group.classes()[class].size as i64;
        self.values[i][class].scale(&Rational::new(size.into(), (self.degrees[i] as i64).into()))
    }

    /// Exact row and column orthogonality.
    pub fn verify_orthogonality(&self) -> Result<()> {
        let r = self.len();
        let n = self.conductor;
        let sizes = self.class_sizes();
        let order = self.group.order() as i64;
        let conj: Vec<Vec<Cyclotomic>> = self
            .values
            .iter()
            .map(|row| (0..r).map(|k| row[self.inverse_map[k]].clone()).collect())
            .collect();
        for a in 0..r {
            for b in a..r {
                let mut s = Cyclotomic::zero(n);
                for k in 0..r {
                    s = s + (&self.values[a][k] * &conj[b][k]).scale(&Rational::from_integer(sizes[k].into()));
                }
                let expect = if a == b { order } else { 0 };
                if s != Cyclotomic::from_int(n, expect) {
                    return Err(Error::TableVerification(format!(
                        "row orthogonality fails for characters {a}, {b}"
                    )));
                }
            }
        }
        for k in 0..r {
            for l in k..r {
                let mut s = Cyclotomic::zero(n);
                for row in &self.values {
                    s = s + &row[k] * &row[self.inverse_map[l]];
                }
                let expect = if k == l { order / sizes[k] as i64 } else { 0 };
                if s != Cyclotomic::from_int(n, expect) {
                    return Err(Error::TableVerification(format!(
                        "column orthogonality fails for classes {k}, {l}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// omega(C_j) omega(C_i) = sum_k a_jik omega(C_k) for every row. Together
    /// with orthogonality this pins down the irreducible characters.
    pub fn verify_central_characters(&self) -> Result<()> {
        let a = self.class_constants();
        let r = self.len();
        for chi in 0..r {
            let omega: Vec<Cyclotomic> = (0..r).map(|k| self.central_character(chi, k)).collect();
            if omega[0] != Cyclotomic::one(self.conductor) {
                return Err(Error::TableVerification("omega(1) != 1".into()));
            }
            for j in 0..r {
                for i in j..r {
                    let mut rhs = Cyclotomic::zero(self.conductor);
                    for k in 0..r {
                        if a[j][i][k] != 0 {
                            rhs = rhs + omega[k].scale(&Rational::from_integer(a[j][i][k].into()));
                        }
                    }
                    if &omega[j] * &omega[i] != rhs {
                        return Err(Error::TableVerification(format!(
                            "row {chi} is not a central character at classes {j}, {i}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Class of x_p x_p'^p for the representative of class `k`.
    pub fn ih_class(&self, k: usize, p: u64) -> usize {
        let g = &self.group;
        let x = g.classes()[k].representative;
        let (xp, xpp) = g.p_decompose(x, p);
        g.class_of(g.mul(xp, g.pow(xpp, p as i64)))
    }

    /// Row of sigma_K0(chi), checked against chi(g_p g_p'^p).
    pub fn sigma_character(&self, i: usize, p: u64) -> Result<usize> {
        let sigma = sigma_k0(p, self.conductor);
        self.galois_character(i, p, &sigma)
    }

    fn galois_character(&self, i: usize, p: u64, sigma: &GaloisAutomorphism) -> Result<usize> {
        let valuewise: Vec<Cyclotomic> = self.values[i].iter().map(|v| sigma.apply(v)).collect();
        let via_powers: Vec<Cyclotomic> = (0..self.len())
            .map(|k| self.values[i][self.ih_class(k, p)].clone())
            .collect();
        if valuewise != via_powers {
            return Err(Error::internal(format!(
                "sigma_K0 and I^H disagree on character {i}"
            )));
        }
        self.find_row(&valuewise)
            .ok_or_else(|| Error::internal(format!("sigma image of character {i} is not a row")))
    }

    /// The permutation chi -> sigma^n(chi) of rows.
    pub fn sigma_permutation(&self, p: u64, n: u64) -> Result<Vec<usize>> {
        let one: Vec<usize> = (0..self.len())
            .map(|i| self.sigma_character(i, p))
            .collect::<Result<_>>()?;
        let mut perm: Vec<usize> = (0..self.len()).collect();
        for _ in 0..n {
            perm = perm.iter().map(|&i| one[i]).collect();
        }
        Ok(perm)
    }

    /// tau(x) / tau(1) for x central in the group.
    pub fn central_scalar(&self, tau: usize, x: usize) -> Result<Cyclotomic> {
        let g = &self.group;
        if g.classes()[g.class_of(x)].size != 1 {
            return Err(Error::NotCentral);
        }
        Ok(self
            .value_at(tau, x)
            .scale(&Rational::new(1.into(), (self.degrees[tau] as i64).into())))
    }
}

/// (1/|G|) sum_C |C| phi(C) psi(C^-1).
pub fn inner_product(phi: &ClassFunction, psi: &ClassFunction) -> Result<Cyclotomic> {
    if phi.support != Support::All
        || psi.support != Support::All
        || phi.table.group().hash() != psi.table.group().hash()
    {
        return Err(Error::SupportMismatch);
    }
    let t = &phi.table;
    let n = num_integer::lcm(t.conductor(), psi.table.conductor());
    let mut s = Cyclotomic::zero(n);
    for (k, c) in t.group().classes().iter().enumerate() {
        let term = &phi.values[k] * &psi.values[t.inverse_map()[k]];
        s = s + term.scale(&Rational::from_integer((c.size as i64).into()));
    }
    Ok(s.scale(&Rational::new(1.into(), (t.group().order() as i64).into())))
}

/// Restriction of a class function on G to a subgroup H with its own table.
pub fn restrict(
    chi: &ClassFunction,
    h: &EmbeddedGroup,
    h_table: &Arc<CharacterTable>,
) -> ClassFunction {
    let g = chi.table.group();
    let values = h
        .group
        .classes()
        .iter()
        .map(|c| chi.values[g.class_of(h.into_parent[c.representative])].clone())
        .collect();
    ClassFunction::new(h_table.clone(), values)
}

/// Multiplicities <chi, tau> of the irreducibles of the table in phi.
pub fn decompose(phi: &ClassFunction) -> Result<Vec<Cyclotomic>> {
    (0..phi.table.len())
        .map(|i| inner_product(phi, &phi.table.character(i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{GroupDef, Limits};

    fn table(gens: &[&[usize]], degree: usize) -> Arc<CharacterTable> {
        let def = GroupDef {
            name: "t".into(),
            degree,
            generators: gens.iter().map(|g| g.to_vec()).collect(),
        };
        let g = Arc::new(def.build(&Limits::default()).unwrap());
        Arc::new(CharacterTable::compute(g).unwrap())
    }

    #[test]
    fn s3_table() {
        let t = table(&[&[2, 1, 3], &[2, 3, 1]], 3);
        assert_eq!((0..3).map(|i| t.degree(i)).collect::<Vec<_>>(), vec![1, 1, 2]);
        let g = t.group();
        let three = g.classes().iter().position(|c| c.rep_order == 3).unwrap();
        let two = g.classes().iter().position(|c| c.rep_order == 2).unwrap();
        assert_eq!(t.value(2, three), &Cyclotomic::from_int(1, -1));
        assert!(t.value(2, two).is_zero());
        assert_eq!(t.central_character(2, three), Cyclotomic::from_int(1, -1));
        t.verify_central_characters().unwrap();
    }

    #[test]
    fn cyclic_and_trivial() {
        let c6 = table(&[&[2, 3, 4, 5, 6, 1]], 6);
        assert_eq!(c6.len(), 6);
        assert!((0..6).all(|i| c6.degree(i) == 1));
        let triv = table(&[&[1]], 1);
        assert_eq!(triv.len(), 1);
        assert_eq!(triv.value(0, 0), &Cyclotomic::one(1));
    }

    #[test]
    fn sigma_on_c6() {
        let t = table(&[&[2, 3, 4, 5, 6, 1]], 6);
        let g = t.group();
        let gen = g.index_of(&crate::perm::Permutation::from_one_based(&[2, 3, 4, 5, 6, 1]).unwrap()).unwrap();
        let faithful = (0..6)
            .find(|&i| t.value_at(i, gen) == &Cyclotomic::zeta(6, 1))
            .unwrap();
        let image = t.sigma_character(faithful, 2).unwrap();
        assert_eq!(t.value_at(image, gen), &Cyclotomic::zeta(6, 5));
        for i in 0..6 {
            t.sigma_character(i, 3).unwrap();
        }
    }

    #[test]
    fn inner_products_and_restriction() {
        let t = table(&[&[2, 1, 3], &[2, 3, 1]], 3);
        let n = t.conductor();
        let chi = t.character(2);
        assert_eq!(inner_product(&chi, &chi).unwrap(), Cyclotomic::one(n));
        assert!(inner_product(&chi, &t.character(1)).unwrap().is_zero());
        let g = t.group();
        let c3 = g.generate(&[g.classes().iter().find(|c| c.rep_order == 3).unwrap().representative]);
        let emb = g.embed(&c3);
        let ht = Arc::new(CharacterTable::compute(emb.group.clone()).unwrap());
        let res = restrict(&chi, &emb, &ht);
        let mult = decompose(&res).unwrap();
        let ones: Vec<bool> = mult.iter().map(|m| m == &Cyclotomic::one(m.conductor())).collect();
        assert_eq!(ones, vec![false, true, true]);
    }
}
