use std::collections::{BTreeMap, BTreeSet};

use super::{Group, Subgroup};
use crate::error::{Error, Result};

/// A Sylow p-subgroup grown from the trivial group by normalizer steps:
/// at each step adjoin the first p-element of N_G(P) outside P.
pub fn sylow_subgroup(g: &Group, p: u64) -> Subgroup {
    let target = crate::arith::split_p(g.order() as u64, p).0 as usize;
    let mut sylow = g.trivial();
    while sylow.order() < target {
        let n = g.normalizer(&sylow);
        let x = n
            .elements
            .iter()
            .copied()
            .find(|&x| !sylow.contains(x) && g.is_p_element(x, p))
            .expect("N_G(P)/P has a p-element while P is not Sylow");
        let mut gens = sylow.generators.clone();
        gens.push(x);
        sylow = g.generate(&gens);
    }
    sylow
}

/// Every subgroup of `h`, sorted by (order, elements).
pub fn subgroups_of(g: &Group, h: &Subgroup) -> Vec<Subgroup> {
    let mut cyclic: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut cyc_list: Vec<Subgroup> = Vec::new();
    for &x in &h.elements {
        let c = g.generate(&[x]);
        if cyclic.insert(c.elements.clone()) {
            cyc_list.push(c);
        }
    }
    let mut found: BTreeMap<Vec<usize>, Subgroup> = BTreeMap::new();
    let mut queue: Vec<Subgroup> = cyc_list.clone();
    for c in &cyc_list {
        found.insert(c.elements.clone(), c.clone());
    }
    while let Some(s) = queue.pop() {
        for c in &cyc_list {
            if c.is_subgroup_of(&s) {
                continue;
            }
            let mut gens = s.generators.clone();
            gens.extend(c.generators.iter().copied());
            let j = g.generate(&gens);
            if !found.contains_key(&j.elements) {
                let j = g.with_generators(j.elements);
                found.insert(j.elements.clone(), j.clone());
                queue.push(j);
            }
        }
    }
    let mut out: Vec<Subgroup> = found.into_values().collect();
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    out
}

/// The least conjugate of `h` under element-list order; a class invariant.
pub(crate) fn conjugacy_key(g: &Group, h: &Subgroup) -> Vec<usize> {
    (0..g.order())
        .map(|x| g.conjugate(h, x).elements)
        .min()
        .expect("group is nonempty")
}

/// One representative per G-class of p-subgroups, sorted by (order, elements).
pub fn p_subgroups_up_to_conjugacy(g: &Group, p: u64, sylow_cap: u64) -> Result<Vec<Subgroup>> {
    let sylow_order = crate::arith::split_p(g.order() as u64, p).0;
    if sylow_order > sylow_cap {
        return Err(Error::GroupTooLarge {
            what: "Sylow subgroup order",
            value: sylow_order,
            cap: sylow_cap,
        });
    }
    let sylow = sylow_subgroup(g, p);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut reps = Vec::new();
    for s in subgroups_of(g, &sylow) {
        if seen.insert(conjugacy_key(g, &s)) {
            reps.push(s);
        }
    }
    Ok(reps)
}

/// Each cyclic subgroup of `h` once, paired with all of its generators.
pub fn cyclic_subgroups_with_generators(g: &Group, h: &Subgroup) -> Vec<(Subgroup, Vec<usize>)> {
    let mut by_elems: BTreeMap<Vec<usize>, (Subgroup, Vec<usize>)> = BTreeMap::new();
    for &x in &h.elements {
        let c = g.generate(&[x]);
        by_elems
            .entry(c.elements.clone())
            .or_insert_with(|| (c, Vec::new()))
            .1
            .push(x);
    }
    let mut out: Vec<(Subgroup, Vec<usize>)> = by_elems.into_values().collect();
    out.sort_by(|a, b| a.0.sort_key().cmp(&b.0.sort_key()));
    for (_, gens) in out.iter_mut() {
        gens.sort_unstable();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{Limits, Permutation};

    fn group(gens: &[&[usize]]) -> Group {
        let degree = gens[0].len();
        let gens = gens
            .iter()
            .map(|g| Permutation::from_one_based(g).unwrap())
            .collect();
        Group::from_generators("t", degree, gens, &Limits::default()).unwrap()
    }

    #[test]
    fn coprime_prime_gives_trivial_only() {
        let g = group(&[&[2, 3, 1], &[2, 1, 3]]);
        let reps = p_subgroups_up_to_conjugacy(&g, 5, 256).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].order(), 1);
    }

    #[test]
    fn cyclic_six_two_subgroups() {
        let g = group(&[&[2, 3, 4, 5, 6, 1]]);
        let reps = p_subgroups_up_to_conjugacy(&g, 2, 256).unwrap();
        let orders: Vec<usize> = reps.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2]);
    }

    #[test]
    fn cyclic_subgroups_of_c4() {
        let g = group(&[&[2, 3, 4, 1]]);
        let list = cyclic_subgroups_with_generators(&g, &g.whole());
        let shape: Vec<(usize, usize)> = list.iter().map(|(s, gs)| (s.order(), gs.len())).collect();
        assert_eq!(shape, vec![(1, 1), (2, 1), (4, 2)]);
        let triv = cyclic_subgroups_with_generators(&g, &g.trivial());
        assert_eq!(triv, vec![(g.trivial(), vec![g.identity()])]);
    }

    #[test]
    fn sylow_order_and_cap() {
        let s4 = group(&[&[2, 3, 4, 1], &[2, 1, 3, 4]]);
        assert_eq!(sylow_subgroup(&s4, 2).order(), 8);
        assert_eq!(sylow_subgroup(&s4, 3).order(), 3);
        assert!(p_subgroups_up_to_conjugacy(&s4, 2, 4).is_err());
    }
}
