//! Finite fields F_{p^m} as F_p[y]/(h) and towers over them.

use num_bigint::BigUint;

use crate::field::{Field, FiniteField, PrimeField};
use crate::poly;

/// F_p[y]/(h) for a monic irreducible `h` of degree m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisField {
    base: PrimeField,
    modulus: Vec<u64>,
}

/// Element of a [`GaloisField`]: m coefficients mod p, low degree first.
pub type GfElem = Vec<u64>;

impl GaloisField {
    /// Builds the field from a monic modulus; irreducibility is checked.
    pub fn new(p: u64, modulus: Vec<u64>) -> Option<Self> {
        let base = PrimeField::new(p);
        let mut m: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        poly::trim(&base, &mut m);
        if m.last() != Some(&1) || !poly::is_irreducible(&base, &m, &BigUint::from(p)) {
            return None;
        }
        Some(GaloisField { base, modulus: m })
    }

    pub fn prime(p: u64) -> Self {
        GaloisField {
            base: PrimeField::new(p),
            modulus: vec![0, 1],
        }
    }

    /// The lexicographically least monic irreducible of degree `m`, reading
    /// lower coefficients as base-p digits of a counter.
    pub fn find(p: u64, m: usize) -> Self {
        if m == 1 {
            return Self::prime(p);
        }
        let base = PrimeField::new(p);
        let q = BigUint::from(p);
        let mut idx: u64 = 0;
        loop {
            let mut g = vec![0u64; m + 1];
            let mut t = idx;
            for c in g.iter_mut().take(m) {
                *c = t % p;
                t /= p;
            }
            g[m] = 1;
            if g[0] != 0 && poly::is_irreducible(&base, &g, &q) {
                return GaloisField { base, modulus: g };
            }
            idx += 1;
        }
    }

    pub fn p(&self) -> u64 {
        self.base.p()
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The class of y.
    pub fn generator(&self) -> GfElem {
        self.from_poly(&[0, 1])
    }

    pub fn from_poly(&self, a: &[u64]) -> GfElem {
        let r = poly::rem(&self.base, a, &self.modulus);
        self.pad(r)
    }

    pub fn embed_prime(&self, a: u64) -> GfElem {
        self.from_poly(&[a % self.p()])
    }

    fn pad(&self, mut r: Vec<u64>) -> GfElem {
        r.resize(self.degree(), 0);
        r
    }

    fn trimmed(&self, a: &GfElem) -> Vec<u64> {
        let mut v = a.clone();
        poly::trim(&self.base, &mut v);
        v
    }

    pub fn size(&self) -> BigUint {
        BigUint::from(self.p()).pow(self.degree() as u32)
    }
}

impl Field for GaloisField {
    type Elem = GfElem;

    fn zero(&self) -> GfElem {
        vec![0; self.degree()]
    }
    fn one(&self) -> GfElem {
        self.embed_prime(1)
    }
    fn from_int(&self, n: i64) -> GfElem {
        self.embed_prime(self.base.reduce(n))
    }
    fn add(&self, a: &GfElem, b: &GfElem) -> GfElem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &GfElem, b: &GfElem) -> GfElem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn mul(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let prod = poly::mul(&self.base, &self.trimmed(a), &self.trimmed(b));
        self.from_poly(&prod)
    }
    fn neg(&self, a: &GfElem) -> GfElem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn inv(&self, a: &GfElem) -> Option<GfElem> {
        if self.is_zero(a) {
            return None;
        }
        poly::inverse_mod(&self.base, &self.trimmed(a), &self.modulus).map(|r| self.pad(r))
    }
    fn is_zero(&self, a: &GfElem) -> bool {
        a.iter().all(|&x| x == 0)
    }
}

impl FiniteField for GaloisField {
    fn characteristic(&self) -> u64 {
        self.p()
    }
    fn prime_degree(&self) -> usize {
        self.degree()
    }
    fn prime_coords(&self, a: &GfElem) -> Vec<u64> {
        a.clone()
    }
    fn from_prime_coords(&self, c: &[u64]) -> GfElem {
        c.iter().map(|x| x % self.p()).collect()
    }
}

/// A simple extension base[w]/(g) of a finite field by a monic irreducible g.
#[derive(Clone, Debug)]
pub struct ExtensionField<F: FiniteField> {
    base: F,
    modulus: Vec<F::Elem>,
}

impl<F: FiniteField> ExtensionField<F> {
    /// The degree-1 extension, isomorphic to the base itself.
    pub fn trivial(base: F) -> Self {
        let modulus = vec![base.zero(), base.one()];
        ExtensionField { base, modulus }
    }

    /// Finds the first monic irreducible of degree `j` over `base` in a fixed
    /// enumeration order.
    pub fn find(base: F, j: usize) -> Self {
        if j == 1 {
            return Self::trivial(base);
        }
        let q = base.order();
        let qu = q.to_u64_digits().first().copied().unwrap_or(0);
        let mut counter: u64 = 0;
        loop {
            let mut g: Vec<F::Elem> = Vec::with_capacity(j + 1);
            let mut t = counter;
            for _ in 0..j {
                let (digit, rest) = if q.bits() <= 63 {
                    (t % qu, t / qu)
                } else {
                    (t, 0)
                };
                g.push(base.element_from_index(digit));
                t = rest;
            }
            g.push(base.one());
            if !base.is_zero(&g[0]) && poly::is_irreducible(&base, &g, &q) {
                return ExtensionField { base, modulus: g };
            }
            counter += 1;
        }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn embed(&self, a: &F::Elem) -> Vec<F::Elem> {
        let mut v = vec![self.base.zero(); self.degree()];
        v[0] = a.clone();
        v
    }

    fn reduce(&self, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
        poly::trim(&self.base, &mut a);
        let mut r = poly::rem(&self.base, &a, &self.modulus);
        r.resize(self.degree(), self.base.zero());
        r
    }
}

impl<F: FiniteField> Field for ExtensionField<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.degree()]
    }
    fn one(&self) -> Self::Elem {
        self.embed(&self.base.one())
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.embed(&self.base.from_int(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce(poly::mul(&self.base, a, b))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return None;
        }
        let mut t = a.clone();
        poly::trim(&self.base, &mut t);
        poly::inverse_mod(&self.base, &t, &self.modulus).map(|r| self.reduce(r))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }
}

impl<F: FiniteField> FiniteField for ExtensionField<F> {
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn prime_degree(&self) -> usize {
        self.base.prime_degree() * self.degree()
    }
    fn prime_coords(&self, a: &Self::Elem) -> Vec<u64> {
        a.iter().flat_map(|x| self.base.prime_coords(x)).collect()
    }
    fn from_prime_coords(&self, c: &[u64]) -> Self::Elem {
        c.chunks(self.base.prime_degree())
            .map(|ch| self.base.from_prime_coords(ch))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_arithmetic() {
        let f = GaloisField::find(2, 2);
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let u = f.generator();
        assert_eq!(f.pow(&u, 3), f.one());
        assert_eq!(f.add(&f.add(&f.one(), &u), &f.mul(&u, &u)), f.zero());
        let ui = f.inv(&u).unwrap();
        assert_eq!(f.mul(&u, &ui), f.one());
        assert!(!f.is_prime_field_elem(&u));
    }

    #[test]
    fn tower_over_f4() {
        let f4 = GaloisField::find(2, 2);
        let f16 = ExtensionField::find(f4, 2);
        assert_eq!(f16.prime_degree(), 4);
        assert_eq!(f16.order(), BigUint::from(16u32));
        let mut seen = 0;
        for i in 1..16u64 {
            let a = f16.element_from_index(i);
            assert_eq!(f16.pow(&a, 15), f16.one());
            let ai = f16.inv(&a).unwrap();
            assert_eq!(f16.mul(&a, &ai), f16.one());
            if f16.is_prime_field_elem(&a) {
                seen += 1;
            }
        }
        assert_eq!(seen, 1);
    }
}
