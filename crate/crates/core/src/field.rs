//! Field contexts.
//!
//! The linear algebra in this crate is written once against [`Field`], a
//! context object that owns whatever the elements need (a modulus, a
//! defining polynomial, a conductor). Elements are plain values.

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn pow_big(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }
}

/// A finite field, viewed also as a vector space over its prime field.
pub trait FiniteField: Field {
    fn characteristic(&self) -> u64;
    /// Dimension over the prime field.
    fn prime_degree(&self) -> usize;
    fn order(&self) -> BigUint {
        BigUint::from(self.characteristic()).pow(self.prime_degree() as u32)
    }
    /// The absolute Frobenius x -> x^p.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.characteristic())
    }
    fn prime_coords(&self, a: &Self::Elem) -> Vec<u64>;
    fn from_prime_coords(&self, c: &[u64]) -> Self::Elem;

    /// Enumerates elements by reading `idx` in base p as prime coordinates.
    fn element_from_index(&self, mut idx: u64) -> Self::Elem {
        let p = self.characteristic();
        let mut c = vec![0u64; self.prime_degree()];
        for slot in c.iter_mut() {
            *slot = idx % p;
            idx /= p;
        }
        self.from_prime_coords(&c)
    }

    /// True when the element lies in the prime field.
    fn is_prime_field_elem(&self, a: &Self::Elem) -> bool {
        self.frobenius(a) == *a
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(crate::arith::is_prime(p));
        PrimeField { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_int(&self, n: i64) -> u64 {
        self.reduce(n)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a % self.p == 0 {
            None
        } else {
            Some(crate::arith::mod_pow(*a, self.p - 2, self.p))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a % self.p == 0
    }
}

impl FiniteField for PrimeField {
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn prime_degree(&self) -> usize {
        1
    }
    fn frobenius(&self, a: &u64) -> u64 {
        *a
    }
    fn prime_coords(&self, a: &u64) -> Vec<u64> {
        vec![*a]
    }
    fn from_prime_coords(&self, c: &[u64]) -> u64 {
        c[0] % self.p
    }
}

/// The rationals with arbitrary-precision numerators and denominators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = PrimeField::new(7);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.neg(&0), 0);
        assert_eq!(f.pow(&3, 6), 1);
        assert_eq!(f.element_from_index(9), 2);
    }
}
