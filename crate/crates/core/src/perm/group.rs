use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use sha2::{Digest, Sha256};

use super::{p_split_exponents, Limits, Permutation};
use crate::error::{Error, Result};

/// A conjugacy class, identified by element indices of its group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// The member with the least index (lexicographically least permutation).
    pub representative: usize,
    pub size: usize,
    /// Sorted member indices.
    pub members: Vec<usize>,
    pub rep_order: u64,
}

impl ConjugacyClass {
    pub fn is_p_regular(&self, p: u64) -> bool {
        self.rep_order % p != 0
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }
}

/// A subgroup of some parent [`Group`], as sorted parent element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    pub elements: Vec<usize>,
    pub generators: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    /// Ordering key used by every enumeration: (order, element list).
    pub fn sort_key(&self) -> (usize, &[usize]) {
        (self.elements.len(), &self.elements)
    }
}

/// A subgroup realised as a group in its own right, with the map back
/// into the parent's element indices.
#[derive(Clone, Debug)]
pub struct EmbeddedGroup {
    pub group: Arc<Group>,
    pub into_parent: Vec<usize>,
}

impl EmbeddedGroup {
    pub fn from_parent(parent: &Group, h: &Subgroup) -> Self {
        let elems: Vec<Permutation> = h.elements.iter().map(|&i| parent.element(i).clone()).collect();
        let name = format!("{}<{}>", parent.name(), h.order());
        let group = Group::from_elements(&name, parent.degree(), elems);
        let into_parent = (0..group.order())
            .map(|i| parent.index_of(group.element(i)).expect("subgroup element"))
            .collect();
        EmbeddedGroup {
            group: Arc::new(group),
            into_parent,
        }
    }

    /// Index in the subgroup of a parent element index, if present.
    pub fn from_parent_index(&self, parent_idx: usize) -> Option<usize> {
        self.into_parent.binary_search(&parent_idx).ok()
    }
}

/// A finite permutation group with all elements listed in lexicographic order.
#[derive(Debug)]
pub struct Group {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    table: Vec<u32>,
    inverses: Vec<usize>,
    orders: Vec<u64>,
    exponent: u64,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    hash: String,
}

impl Group {
    pub fn from_generators(
        name: &str,
        degree: usize,
        generators: Vec<Permutation>,
        limits: &Limits,
    ) -> Result<Self> {
        let id = Permutation::identity(degree);
        let mut seen: BTreeSet<Permutation> = BTreeSet::new();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                for g in &generators {
                    let y = g.compose(x);
                    if seen.insert(y.clone()) {
                        if seen.len() as u64 > limits.max_order {
                            return Err(Error::GroupTooLarge {
                                what: "order",
                                value: seen.len() as u64,
                                cap: limits.max_order,
                            });
                        }
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        let mut g = Self::build(name, degree, seen.into_iter().collect());
        g.generators = generators;
        Ok(g)
    }

    /// Builds a group from a complete, closed element list.
    pub fn from_elements(name: &str, degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        elements.dedup();
        let mut g = Self::build(name, degree, elements);
        g.generators = small_generating_set(&g);
        g
    }

    fn build(name: &str, degree: usize, elements: Vec<Permutation>) -> Self {
        let n = elements.len();
        let index: HashMap<Permutation, usize> =
            elements.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut table = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                table[i * n + j] = index[&a.compose(b)] as u32;
            }
        }
        let inverses = elements.iter().map(|a| index[&a.inverse()]).collect();
        let orders: Vec<u64> = elements.iter().map(|a| a.order()).collect();
        let exponent = orders.iter().fold(1, |acc, &o| num_integer::lcm(acc, o));
        let mut hasher = Sha256::new();
        hasher.update(format!("{degree};").as_bytes());
        for e in &elements {
            let s: Vec<String> = e.to_one_based().iter().map(|x| x.to_string()).collect();
            hasher.update(s.join(",").as_bytes());
            hasher.update(b";");
        }
        let hash = hex::encode(hasher.finalize());
        let mut g = Group {
            name: name.to_string(),
            degree,
            generators: Vec::new(),
            elements,
            index,
            table,
            inverses,
            orders,
            exponent,
            classes: Vec::new(),
            class_of: Vec::new(),
            hash,
        };
        g.compute_classes();
        g
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|g| self.conj(g, x)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = raw.len();
            }
            raw.push(members);
        }
        let mut classes: Vec<ConjugacyClass> = raw
            .into_iter()
            .map(|members| ConjugacyClass {
                representative: members[0],
                size: members.len(),
                rep_order: self.orders[members[0]],
                members,
            })
            .collect();
        classes.sort_by_key(|c| (c.rep_order, c.size, c.representative));
        for (ci, c) in classes.iter().enumerate() {
            for &m in &c.members {
                class_of[m] = ci;
            }
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// g x g^-1
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverses[g])
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.orders[a] as i64;
        let mut e = k.rem_euclid(o);
        let mut acc = self.identity();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.orders[a]
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Hex SHA-256 of the sorted element list.
    pub fn hash(&self) -> &str {
        &self.hash
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// (g_p, g_p') as element indices.
    pub fn p_decompose(&self, a: usize, p: u64) -> (usize, usize) {
        let (s, t) = p_split_exponents(self.orders[a], p);
        (self.pow(a, s), self.pow(a, t))
    }

    pub fn is_p_element(&self, a: usize, p: u64) -> bool {
        crate::arith::split_p(self.orders[a], p).1 == 1
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.order()).collect(),
            generators: self.generators.iter().filter_map(|g| self.index_of(g)).collect(),
        }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup {
            elements: vec![self.identity()],
            generators: Vec::new(),
        }
    }

    /// The subgroup generated by the given elements.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut inside = vec![false; self.order()];
        inside[self.identity()] = true;
        let mut elements = vec![self.identity()];
        let mut k = 0;
        while k < elements.len() {
            let x = elements[k];
            for &g in gens {
                let y = self.mul(g, x);
                if !inside[y] {
                    inside[y] = true;
                    elements.push(y);
                }
            }
            k += 1;
        }
        elements.sort_unstable();
        let mut generators = gens.to_vec();
        generators.sort_unstable();
        generators.dedup();
        generators.retain(|&g| g != self.identity());
        Subgroup {
            elements,
            generators,
        }
    }

    pub fn centralizer(&self, x: usize) -> Result<Subgroup> {
        if x >= self.order() {
            return Err(Error::NotInGroup);
        }
        let elements: Vec<usize> = (0..self.order())
            .filter(|&g| self.mul(g, x) == self.mul(x, g))
            .collect();
        Ok(self.with_generators(elements))
    }

    pub fn centralizer_of(&self, h: &Subgroup) -> Subgroup {
        let gens: &[usize] = if h.generators.is_empty() {
            &h.elements
        } else {
            &h.generators
        };
        let elements: Vec<usize> = (0..self.order())
            .filter(|&g| gens.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        self.with_generators(elements)
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let elements: Vec<usize> = (0..self.order())
            .filter(|&g| h.elements.iter().all(|&x| h.contains(self.conj(g, x))))
            .collect();
        self.with_generators(elements)
    }

    /// g H g^-1
    pub fn conjugate(&self, h: &Subgroup, g: usize) -> Subgroup {
        let mut elements: Vec<usize> = h.elements.iter().map(|&x| self.conj(g, x)).collect();
        elements.sort_unstable();
        let mut generators: Vec<usize> = h.generators.iter().map(|&x| self.conj(g, x)).collect();
        generators.sort_unstable();
        Subgroup {
            elements,
            generators,
        }
    }

    pub fn is_normal_in(&self, h: &Subgroup, k: &Subgroup) -> bool {
        h.is_subgroup_of(k)
            && k.elements
                .iter()
                .all(|&g| h.elements.iter().all(|&x| h.contains(self.conj(g, x))))
    }

    /// Attaches a deterministic generating set to a sorted closed element list.
    pub(crate) fn with_generators(&self, elements: Vec<usize>) -> Subgroup {
        let mut gens = Vec::new();
        let mut span = self.generate(&[]);
        for &x in &elements {
            if !span.contains(x) {
                gens.push(x);
                span = self.generate(&gens);
            }
            if span.order() == elements.len() {
                break;
            }
        }
        Subgroup {
            elements,
            generators: gens,
        }
    }

    pub fn embed(&self, h: &Subgroup) -> EmbeddedGroup {
        EmbeddedGroup::from_parent(self, h)
    }
}

fn small_generating_set(g: &Group) -> Vec<Permutation> {
    let all: Vec<usize> = (0..g.order()).collect();
    g.with_generators(all)
        .generators
        .into_iter()
        .map(|i| g.element(i).clone())
        .collect()
}
