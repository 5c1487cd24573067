//! Finite permutation groups at desk scale: full element lists, a
//! multiplication table, conjugacy classes and p-subgroups.

mod group;
mod subgroups;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use group::{ConjugacyClass, EmbeddedGroup, Group, Subgroup};
pub use subgroups::{
    cyclic_subgroups_with_generators, p_subgroups_up_to_conjugacy, subgroups_of, sylow_subgroup,
};

/// Size caps for the brute-force algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_order: u64,
    pub max_degree: usize,
    pub sylow_cap: u64,
    pub fusion_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 2000,
            max_degree: 50,
            sylow_cap: 256,
            fusion_cap: 16,
        }
    }
}

/// A permutation of {0, .., n-1}; I/O uses 1-based image lists.
///
/// Products compose right to left: `(a * b)(i) = a(b(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &i in images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[i - 1] = true;
            out.push((i - 1) as u32);
        }
        Ok(Permutation { images: out })
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let n = self.order() as i64;
        let mut e = k.rem_euclid(n);
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Cycle lengths, including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] as usize;
                len += 1;
            }
            out.push(len);
        }
        out
    }

    /// Least n >= 1 with g^n = 1: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, l| num_integer::lcm(acc, l as u64))
    }

    /// Splits g into commuting powers (g_p, g_p') of p-power and p'-order.
    pub fn p_decompose(&self, p: u64) -> (Permutation, Permutation) {
        let (pp, pprime) = p_split_exponents(self.order(), p);
        (self.pow(pp), self.pow(pprime))
    }
}

/// For an element of order n = p^a m, exponents (s, t) with g_p = g^s and
/// g_p' = g^t, where s = v m and t = u p^a for u p^a + v m = 1.
pub(crate) fn p_split_exponents(order: u64, p: u64) -> (i64, i64) {
    let (pa, m) = crate::arith::split_p(order, p);
    if m == 1 {
        return (1, 0);
    }
    if pa == 1 {
        return (0, 1);
    }
    let u = crate::arith::mod_inv(pa as i64, m as i64).expect("coprime parts");
    // u p^a = 1 mod m and = 0 mod p^a, so g^(u p^a) is the p'-part.
    let t = (u * pa as i64).rem_euclid(order as i64);
    let s = (1 - t).rem_euclid(order as i64);
    (s, t)
}

/// The order of a permutation.
pub fn element_order(g: &Permutation) -> u64 {
    g.order()
}

/// The p-part and p'-part of a permutation.
pub fn p_decompose(g: &Permutation, p: u64) -> (Permutation, Permutation) {
    g.p_decompose(p)
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_one_based())
    }
}

impl fmt::Display for Permutation {
    /// Disjoint cycle notation on 1-based points.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut wrote = false;
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.images[i] as usize;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// The on-disk group definition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDef {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl GroupDef {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn build(&self, limits: &Limits) -> Result<Group> {
        if self.degree > limits.max_degree {
            return Err(Error::GroupTooLarge {
                what: "degree",
                value: self.degree as u64,
                cap: limits.max_degree as u64,
            });
        }
        let gens = self
            .generators
            .iter()
            .map(|g| {
                if g.len() != self.degree {
                    return Err(Error::InvalidPermutation(format!(
                        "generator {g:?} has length {} but degree is {}",
                        g.len(),
                        self.degree
                    )));
                }
                Permutation::from_one_based(g)
            })
            .collect::<Result<Vec<_>>>()?;
        Group::from_generators(&self.name, self.degree, gens, limits)
    }
}
