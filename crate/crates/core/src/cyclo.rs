//! Exact arithmetic in Q(zeta_N), dense in the power basis
//! 1, z, .., z^(phi(N)-1) reduced modulo the N-th cyclotomic polynomial.
//!
//! [`CyclotomicNumber`] is generic over its coefficient scalar; the crate
//! works with [`crate::Cyclotomic`] (arbitrary-precision rationals).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::Field;

/// Coefficient scalars: an exact field of characteristic zero.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Num + FromPrimitive + Send + Sync {}
impl<T> Scalar for T where T: Clone + PartialEq + fmt::Debug + Num + FromPrimitive + Send + Sync {}

/// Reduction data for one conductor.
#[derive(Debug)]
pub struct CyclotomicBasis {
    conductor: u64,
    phi: usize,
    /// powers[k] = z^k mod Phi_N for 0 <= k < N.
    powers: Vec<Vec<i64>>,
}

/// Integer coefficients of the n-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in arith::divisors(n) {
        if d == n {
            continue;
        }
        num = exact_div(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    debug_assert_eq!(b[db], 1);
    let mut r = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

impl CyclotomicBasis {
    fn new(n: u64) -> Self {
        let phi_poly = cyclotomic_polynomial(n);
        let phi = phi_poly.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by z and reduce the overflow term with Phi_N monic
            let top = cur[phi - 1];
            for j in (1..phi).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..phi {
                    cur[j] -= top * phi_poly[j];
                }
            }
        }
        CyclotomicBasis {
            conductor: n,
            phi,
            powers,
        }
    }

    pub fn get(n: u64) -> Arc<CyclotomicBasis> {
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicBasis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("basis cache poisoned");
        guard
            .entry(n)
            .or_insert_with(|| Arc::new(CyclotomicBasis::new(n)))
            .clone()
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn phi(&self) -> usize {
        self.phi
    }

    /// z^k reduced, for any integer k.
    pub fn power(&self, k: i64) -> &[i64] {
        &self.powers[k.rem_euclid(self.conductor as i64) as usize]
    }
}

#[derive(Clone)]
pub struct CyclotomicNumber<T> {
    basis: Arc<CyclotomicBasis>,
    coeffs: Vec<T>,
}

impl<T: Scalar> CyclotomicNumber<T> {
    pub fn zero(n: u64) -> Self {
        let basis = CyclotomicBasis::get(n);
        let coeffs = vec![T::zero(); basis.phi];
        CyclotomicNumber { basis, coeffs }
    }

    pub fn from_scalar(n: u64, c: T) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = c;
        z
    }

    pub fn from_int(n: u64, c: i64) -> Self {
        Self::from_scalar(n, T::from_i64(c).expect("integer fits scalar"))
    }

    pub fn one(n: u64) -> Self {
        Self::from_int(n, 1)
    }

    /// zeta_N^k.
    pub fn zeta(n: u64, k: i64) -> Self {
        let basis = CyclotomicBasis::get(n);
        let coeffs = basis.power(k).iter().map(|&c| int::<T>(c)).collect();
        CyclotomicNumber { basis, coeffs }
    }

    /// Builds sum_k c_k zeta_N^k from an arbitrary-length coefficient list.
    pub fn from_powers(n: u64, terms: &[(i64, T)]) -> Self {
        let basis = CyclotomicBasis::get(n);
        let mut coeffs = vec![T::zero(); basis.phi];
        for (k, c) in terms {
            if c.is_zero() {
                continue;
            }
            for (slot, &b) in coeffs.iter_mut().zip(basis.power(*k)) {
                if b != 0 {
                    *slot = slot.clone() + c.clone() * int::<T>(b);
                }
            }
        }
        CyclotomicNumber { basis, coeffs }
    }

    /// From coefficients in the power basis (length phi(N)).
    pub fn from_coeffs(n: u64, coeffs: Vec<T>) -> Result<Self> {
        let basis = CyclotomicBasis::get(n);
        if coeffs.len() != basis.phi {
            return Err(Error::Parse(format!(
                "conductor {n} needs {} coefficients, got {}",
                basis.phi,
                coeffs.len()
            )));
        }
        Ok(CyclotomicNumber { basis, coeffs })
    }

    pub fn conductor(&self) -> u64 {
        self.basis.conductor
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_scalar(&self) -> Option<T> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Re-expresses the value in Q(zeta_M) for a multiple M of the conductor.
    pub fn lift(&self, m: u64) -> Self {
        let n = self.conductor();
        assert!(m % n == 0, "conductor {m} is not a multiple of {n}");
        if m == n {
            return self.clone();
        }
        let step = (m / n) as i64;
        let terms: Vec<(i64, T)> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (i as i64 * step, c.clone()))
            .collect();
        Self::from_powers(m, &terms)
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let m = a.conductor().lcm(&b.conductor());
        (a.lift(m), b.lift(m))
    }

    pub fn scale(&self, s: &T) -> Self {
        CyclotomicNumber {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    /// The automorphism zeta_N -> zeta_N^t (gcd(t, N) = 1).
    pub fn galois(&self, t: i64) -> Self {
        let n = self.conductor() as i64;
        debug_assert_eq!(t.gcd(&n), 1);
        let terms: Vec<(i64, T)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| ((i as i64 * t).rem_euclid(n), c.clone()))
            .collect();
        Self::from_powers(n as u64, &terms)
    }

    pub fn complex_conjugate(&self) -> Self {
        self.galois(-1)
    }

    /// True when the value lies in Q(zeta_M) for M dividing the conductor:
    /// it is fixed by every automorphism that is trivial on zeta_M.
    pub fn lies_in_subfield(&self, m: u64) -> bool {
        let n = self.conductor();
        if n % m != 0 {
            return false;
        }
        (1..n as i64)
            .filter(|&t| t.gcd(&(n as i64)) == 1 && t as u64 % m == 1 % m)
            .all(|t| self.galois(t) == *self)
    }

    fn mul_same(&self, other: &Self) -> Self {
        let phi = self.basis.phi;
        let mut prod = vec![T::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] = prod[i + j].clone() + a.clone() * b.clone();
            }
        }
        let mut coeffs = prod[..phi].to_vec();
        for (k, c) in prod.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (slot, &b) in coeffs.iter_mut().zip(self.basis.power(k as i64)) {
                if b != 0 {
                    *slot = slot.clone() + c.clone() * int::<T>(b);
                }
            }
        }
        CyclotomicNumber {
            basis: self.basis.clone(),
            coeffs,
        }
    }

    /// Multiplicative inverse, by solving (multiplication by self) x = 1.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(s) = self.to_scalar() {
            return Some(Self::from_scalar(self.conductor(), T::one() / s));
        }
        let n = self.conductor();
        let phi = self.basis.phi;
        // column j holds self * z^j
        let cols: Vec<Vec<T>> = (0..phi)
            .map(|j| self.mul_same(&Self::zeta(n, j as i64)).coeffs)
            .collect();
        let mut aug: Vec<Vec<T>> = (0..phi)
            .map(|i| {
                let mut row: Vec<T> = cols.iter().map(|c| c[i].clone()).collect();
                row.push(if i == 0 { T::one() } else { T::zero() });
                row
            })
            .collect();
        for c in 0..phi {
            let pr = (c..phi).find(|&r| !aug[r][c].is_zero())?;
            aug.swap(c, pr);
            let piv = aug[c][c].clone();
            for x in aug[c].iter_mut() {
                *x = x.clone() / piv.clone();
            }
            let prow = aug[c].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r == c || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        let coeffs = aug.into_iter().map(|r| r[phi].clone()).collect();
        Some(CyclotomicNumber {
            basis: self.basis.clone(),
            coeffs,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let inv = other.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.conductor());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn int<T: Scalar>(c: i64) -> T {
    T::from_i64(c).expect("integer fits scalar")
}

impl<T: Scalar> PartialEq for CyclotomicNumber<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor() == other.conductor() {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Self::aligned(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl<T: Scalar> Eq for CyclotomicNumber<T> {}

impl<'a, T: Scalar> Add<&'a CyclotomicNumber<T>> for &'a CyclotomicNumber<T> {
    type Output = CyclotomicNumber<T>;
    fn add(self, rhs: &CyclotomicNumber<T>) -> CyclotomicNumber<T> {
        if self.conductor() != rhs.conductor() {
            let (a, b) = CyclotomicNumber::aligned(self, rhs);
            return &a + &b;
        }
        CyclotomicNumber {
            basis: self.basis.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(x, y)| x.clone() + y.clone())
                .collect(),
        }
    }
}

impl<'a, T: Scalar> Sub<&'a CyclotomicNumber<T>> for &'a CyclotomicNumber<T> {
    type Output = CyclotomicNumber<T>;
    fn sub(self, rhs: &CyclotomicNumber<T>) -> CyclotomicNumber<T> {
        if self.conductor() != rhs.conductor() {
            let (a, b) = CyclotomicNumber::aligned(self, rhs);
            return &a - &b;
        }
        CyclotomicNumber {
            basis: self.basis.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(x, y)| x.clone() - y.clone())
                .collect(),
        }
    }
}

impl<'a, T: Scalar> Mul<&'a CyclotomicNumber<T>> for &'a CyclotomicNumber<T> {
    type Output = CyclotomicNumber<T>;
    fn mul(self, rhs: &CyclotomicNumber<T>) -> CyclotomicNumber<T> {
        if self.conductor() != rhs.conductor() {
            let (a, b) = CyclotomicNumber::aligned(self, rhs);
            return a.mul_same(&b);
        }
        self.mul_same(rhs)
    }
}

impl<T: Scalar> Neg for &CyclotomicNumber<T> {
    type Output = CyclotomicNumber<T>;
    fn neg(self) -> CyclotomicNumber<T> {
        CyclotomicNumber {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|x| T::zero() - x.clone()).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for CyclotomicNumber<T> {
            type Output = CyclotomicNumber<T>;
            fn $m(self, rhs: Self) -> Self {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<T: Scalar> Neg for CyclotomicNumber<T> {
    type Output = CyclotomicNumber<T>;
    fn neg(self) -> Self {
        -&self
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for CyclotomicNumber<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.conductor();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*E({n})")?,
                _ => write!(f, "({c})*E({n})^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for CyclotomicNumber<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({}; {:?})", self.conductor(), self.coeffs)
    }
}

/// A Galois automorphism zeta_N -> zeta_N^t of Q(zeta_N).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisAutomorphism {
    pub conductor: u64,
    pub exponent: u64,
}

impl GaloisAutomorphism {
    pub fn new(conductor: u64, exponent: i64) -> Result<Self> {
        let t = exponent.rem_euclid(conductor as i64) as u64;
        if t.gcd(&conductor) != 1 {
            return Err(Error::Parse(format!(
                "exponent {exponent} is not a unit modulo {conductor}"
            )));
        }
        Ok(GaloisAutomorphism {
            conductor,
            exponent: t % conductor.max(1),
        })
    }

    pub fn complex_conjugation(conductor: u64) -> Self {
        Self::new(conductor, -1).expect("-1 is a unit")
    }

    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.conductor, other.conductor);
        GaloisAutomorphism {
            conductor: self.conductor,
            exponent: self.exponent * other.exponent % self.conductor,
        }
    }

    pub fn pow(&self, n: u64) -> Self {
        GaloisAutomorphism {
            conductor: self.conductor,
            exponent: arith::mod_pow(self.exponent, n, self.conductor),
        }
    }

    pub fn apply<T: Scalar>(&self, a: &CyclotomicNumber<T>) -> CyclotomicNumber<T> {
        let a = a.lift(num_integer::lcm(a.conductor(), self.conductor));
        if a.conductor() != self.conductor {
            // Lifted to a larger field: extend t by CRT-compatible representative.
            let m = a.conductor();
            let t = (0..m)
                .find(|&t| t % self.conductor == self.exponent && t.gcd(&m) == 1)
                .expect("unit lift exists");
            return a.galois(t as i64);
        }
        a.galois(self.exponent as i64)
    }
}

/// The automorphism raising p'-roots of unity to the p-th power and fixing
/// p-power roots of unity: t = p mod N_p', t = 1 mod N_p.
pub fn sigma_k0(p: u64, conductor: u64) -> GaloisAutomorphism {
    let (np, npp) = arith::split_p(conductor, p);
    let t = arith::crt(p % npp.max(1), npp, 1 % np, np);
    let t = if conductor == 1 { 0 } else { t };
    GaloisAutomorphism {
        conductor,
        exponent: t,
    }
}

/// Exact rationals over arbitrary-precision integers.
pub type Rational = BigRational;

impl CyclotomicNumber<BigRational> {
    pub fn from_ratio(n: u64, num: i64, den: i64) -> Self {
        Self::from_scalar(n, BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Lowest common denominator of the coefficients.
    pub fn denominator(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn is_integral_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicJson {
    #[serde(rename = "N")]
    n: u64,
    coeffs: Vec<[String; 2]>,
}

impl Serialize for CyclotomicNumber<BigRational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicJson {
            n: self.conductor(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| [c.numer().to_string(), c.denom().to_string()])
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber<BigRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CyclotomicJson::deserialize(d)?;
        if raw.n == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|[a, b]| {
                let num: BigInt = a.parse().map_err(D::Error::custom)?;
                let den: BigInt = b.parse().map_err(D::Error::custom)?;
                if den.is_zero() {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(BigRational::new(num, den))
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        let v = CyclotomicNumber::from_coeffs(raw.n, coeffs).map_err(D::Error::custom)?;
        // Canonical form means lowest terms with positive denominators.
        for ([a, b], c) in raw.coeffs.iter().zip(&v.coeffs) {
            if *a != c.numer().to_string() || *b != c.denom().to_string() {
                return Err(D::Error::custom("coefficients not in lowest terms"));
            }
        }
        Ok(v)
    }
}

/// Q(zeta_N) as a [`Field`] for the generic linear algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    pub conductor: u64,
}

impl Field for CyclotomicField {
    type Elem = CyclotomicNumber<Rational>;

    fn zero(&self) -> Self::Elem {
        CyclotomicNumber::zero(self.conductor)
    }
    fn one(&self) -> Self::Elem {
        CyclotomicNumber::one(self.conductor)
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        CyclotomicNumber::from_int(self.conductor, n)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a + b
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a - b
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a * b
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        -a
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        a.inv()
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Cyclotomic;
    use num_rational::Ratio;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn small_identities() {
        let z3 = Cyclotomic::zeta(3, 1);
        assert_eq!(&z3 + &Cyclotomic::zeta(3, 2), Cyclotomic::from_int(3, -1));
        let i = Cyclotomic::zeta(4, 1);
        assert_eq!(&i * &i, Cyclotomic::from_int(4, -1));
        let one = Cyclotomic::one(3);
        let a = &one - &z3;
        let b = &one - &Cyclotomic::zeta(3, 2);
        assert_eq!(&a * &b, Cyclotomic::from_int(3, 3));
    }

    #[test]
    fn division() {
        let a = &Cyclotomic::one(5) + &Cyclotomic::zeta(5, 2);
        let q = a.checked_div(&a).unwrap();
        assert_eq!(q, Cyclotomic::one(5));
        assert!(matches!(
            a.checked_div(&Cyclotomic::zero(5)),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn mixed_conductors_normalize() {
        let z3 = Cyclotomic::zeta(3, 1);
        let z6sq = Cyclotomic::zeta(6, 2);
        assert_eq!(z3, z6sq);
        let z4 = Cyclotomic::zeta(4, 1);
        let s = &z3 + &z4;
        assert_eq!(s.conductor(), 12);
        assert_eq!(s, &Cyclotomic::zeta(12, 4) + &Cyclotomic::zeta(12, 3));
    }

    #[test]
    fn sigma_k0_values() {
        assert_eq!(sigma_k0(2, 3).exponent, 2);
        assert_eq!(sigma_k0(2, 4).exponent, 1);
        assert_eq!(sigma_k0(2, 12).exponent, 5);
        let s = sigma_k0(2, 3);
        let z3 = Cyclotomic::zeta(3, 1);
        assert_eq!(s.apply(&z3), Cyclotomic::zeta(3, 2));
        assert_eq!(s.apply(&s.apply(&z3)), z3);
        let q = Cyclotomic::from_ratio(3, 5, 7);
        assert_eq!(s.apply(&q), q);
    }

    #[test]
    fn small_integer_scalars_also_work() {
        type C64 = CyclotomicNumber<Ratio<i64>>;
        let z = C64::zeta(7, 1);
        let inv = z.inv().unwrap();
        assert_eq!(&z * &inv, C64::one(7));
        assert_eq!(z.pow(7), C64::one(7));
    }

    #[test]
    fn json_round_trip() {
        let a = &Cyclotomic::from_ratio(12, -3, 4) + &Cyclotomic::zeta(12, 5);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"N":12,"coeffs":[["-3","4"],["-1","1"],["0","1"],["1","1"]]}"#);
        let back: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
        assert!(serde_json::from_str::<Cyclotomic>(r#"{"N":3,"coeffs":[["2","4"],["0","1"]]}"#).is_err());
    }
}
