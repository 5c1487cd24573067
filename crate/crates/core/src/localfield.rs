//! The completion of Q(zeta_N) at a fixed prime P above p.
//!
//! With N = p^s N' (p not dividing N'), the completion is W(F_q)[z] where
//! z is a root of the p^s-th cyclotomic polynomial, totally ramified of
//! degree e = phi(p^s), uniformizer pi = 1 - z and v(p) = e. The unramified
//! ring W(F_q) is truncated to (Z/p^M)[y]/(h) with h the chosen irreducible
//! factor of the N'-th cyclotomic polynomial mod p, lifted with digits in
//! [0, p). zeta_N' embeds as the Teichmueller lift of y.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{Field, FiniteField};
use crate::gf::{GaloisField, GfElem};
use crate::Cyclotomic;

/// The residue field F_q, q = p^m, m the order of p modulo N'.
#[derive(Clone, Debug)]
pub struct ResidueField {
    pub p: u64,
    pub m: usize,
    pub n_pprime: u64,
    field: GaloisField,
    /// Number of irreducible factors of Phi_N' mod p (choices of P).
    pub factor_count: usize,
    pub factor_index: usize,
}

impl ResidueField {
    /// Picks the irreducible factor of Phi_N' mod p at position
    /// `seed mod (#factors)` in lexicographic order (highest degree first).
    pub fn new(p: u64, n_pprime: u64, seed: u64) -> Self {
        let m = arith::mult_order(p % n_pprime.max(1), n_pprime).max(1) as usize;
        let factors = cyclotomic_factors_mod_p(p, n_pprime, m);
        let factor_index = (seed % factors.len() as u64) as usize;
        let field = GaloisField::new(p, factors[factor_index].clone())
            .expect("factor of a cyclotomic polynomial is irreducible");
        ResidueField {
            p,
            m,
            n_pprime,
            field,
            factor_count: factors.len(),
            factor_index,
        }
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    /// The modulus h, low degree first.
    pub fn modulus(&self) -> &[u64] {
        self.field.modulus()
    }

    /// The distinguished primitive N'-th root of unity (the class of y).
    pub fn u(&self) -> GfElem {
        self.field.generator()
    }

    /// Reduction of sum_i c_i zeta_M^i for M dividing N' directly through h,
    /// bypassing the local ring. Coefficients must be p-integral.
    pub fn direct_reduce(&self, a: &Cyclotomic) -> Option<GfElem> {
        let m = a.conductor();
        if self.n_pprime % m != 0 {
            return None;
        }
        let f = &self.field;
        let step = self.n_pprime / m;
        let u = self.u();
        let mut acc = f.zero();
        for (i, c) in a.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = reduce_rational_mod_p(c, self.p)?;
            let term = f.mul(&f.embed_prime(r), &f.pow(&u, i as u64 * step));
            acc = f.add(&acc, &term);
        }
        Some(acc)
    }
}

fn reduce_rational_mod_p(c: &crate::Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = c.denom().mod_floor(&pb).to_u64().unwrap();
    if den == 0 {
        return None;
    }
    let num = c.numer().mod_floor(&pb).to_u64().unwrap();
    let inv = arith::mod_inv(den as i64, p as i64).unwrap() as u64;
    Some(num * inv % p)
}

/// The monic irreducible factors of Phi_n mod p (all of degree m), sorted.
pub fn cyclotomic_factors_mod_p(p: u64, n: u64, m: usize) -> Vec<Vec<u64>> {
    if n == 1 {
        return vec![vec![p - 1, 1]];
    }
    let ambient = GaloisField::find(p, m);
    let q = ambient.size().to_u64().expect("residue field fits u64");
    let primes = arith::prime_divisors(n);
    let root = (1..q)
        .map(|i| ambient.pow(&ambient.element_from_index(i), (q - 1) / n))
        .find(|x| {
            primes
                .iter()
                .all(|&l| !ambient.is_one(&ambient.pow(x, n / l)))
        })
        .expect("F_q contains a primitive n-th root of unity");
    let mut covered = vec![false; n as usize];
    let mut factors = Vec::new();
    for k in 1..n {
        if k.gcd(&n) != 1 || covered[k as usize] {
            continue;
        }
        let mut poly_coeffs = vec![ambient.one()];
        let mut j = k;
        loop {
            covered[j as usize] = true;
            let r = ambient.pow(&root, j);
            poly_coeffs = crate::poly::mul(&ambient, &poly_coeffs, &[ambient.neg(&r), ambient.one()]);
            j = j * p % n;
            if j == k {
                break;
            }
        }
        let h: Vec<u64> = poly_coeffs
            .iter()
            .map(|c| {
                let coords = ambient.prime_coords(c);
                debug_assert!(coords[1..].iter().all(|&x| x == 0));
                coords[0]
            })
            .collect();
        factors.push(h);
    }
    factors.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    factors
}

/// Result of a valuation computation at finite precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Inconclusive,
}

/// Truncated element of the completion: (sum_i a_i z^i) / p^shift with
/// a_i in (Z/p^precision)[y]/(h).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFieldElement {
    pub precision: usize,
    pub p_shift: u32,
    coeffs: Vec<Vec<BigInt>>,
}

impl LocalFieldElement {
    pub fn coeffs(&self) -> &[Vec<BigInt>] {
        &self.coeffs
    }
}

/// Arithmetic in (Z/p^M)[y]/(h).
struct WRing<'a> {
    modulus: BigInt,
    h: &'a [u64],
}

impl WRing<'_> {
    fn m(&self) -> usize {
        self.h.len() - 1
    }

    fn reduce_coeff(&self, x: BigInt) -> BigInt {
        x.mod_floor(&self.modulus)
    }

    fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.reduce_coeff(x + y))
            .collect()
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.reduce_coeff(x - y))
            .collect()
    }

    fn scale(&self, a: &[BigInt], s: &BigInt) -> Vec<BigInt> {
        a.iter().map(|x| self.reduce_coeff(x * s)).collect()
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let m = self.m();
        let mut prod = vec![BigInt::zero(); 2 * m - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        for k in (m..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (j, &hj) in self.h.iter().enumerate().take(m) {
                if hj != 0 {
                    prod[k - m + j] -= &c * BigInt::from(hj);
                }
            }
        }
        prod.truncate(m);
        prod.into_iter().map(|x| self.reduce_coeff(x)).collect()
    }

    fn one(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.m()];
        v[0] = BigInt::one();
        v
    }

    fn pow(&self, a: &[BigInt], mut e: u64) -> Vec<BigInt> {
        let mut acc = self.one();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The local ring W_M[z]/(Phi_{p^s}(z)).
struct ORing<'a> {
    w: WRing<'a>,
    e: usize,
    /// Phi_{p^s}, monic, low degree first.
    phi: Vec<i64>,
}

impl ORing<'_> {
    fn zero(&self) -> Vec<Vec<BigInt>> {
        vec![vec![BigInt::zero(); self.w.m()]; self.e]
    }

    fn mul(&self, a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let e = self.e;
        let m = self.w.m();
        let mut prod = vec![vec![BigInt::zero(); m]; 2 * e - 1];
        for (i, x) in a.iter().enumerate() {
            if x.iter().all(|c| c.is_zero()) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = self.w.mul(x, y);
                prod[i + j] = self.w.add(&prod[i + j], &t);
            }
        }
        for k in (e..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.iter().all(|x| x.is_zero()) {
                continue;
            }
            for (j, &pj) in self.phi.iter().enumerate().take(e) {
                if pj != 0 {
                    let t = self.w.scale(&c, &BigInt::from(pj));
                    prod[k - e + j] = self.w.sub(&prod[k - e + j], &t);
                }
            }
        }
        prod.truncate(e);
        prod
    }

    fn pow(&self, a: &[Vec<BigInt>], mut k: u64) -> Vec<Vec<BigInt>> {
        let mut acc = self.zero();
        acc[0] = self.w.one();
        let mut base = a.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }
}

/// Images of the power basis of Q(zeta_N) at one precision.
struct EmbeddingTable {
    powers: Vec<Vec<Vec<BigInt>>>,
}

/// Fixed choice of (p, N, P) with the precision policy.
pub struct LocalContext {
    p: u64,
    conductor: u64,
    np: u64,
    e: usize,
    residue: ResidueField,
    default_precision: usize,
    max_precision: usize,
    tables: Mutex<HashMap<usize, Arc<EmbeddingTable>>>,
}

impl std::fmt::Debug for LocalContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LocalContext")
            .field("p", &self.p)
            .field("conductor", &self.conductor)
            .field("e", &self.e)
            .field("modulus", &self.residue.modulus())
            .field("default_precision", &self.default_precision)
            .finish()
    }
}

impl LocalContext {
    /// `group_order` sets the default precision e (v_p(|G|) + 4); a
    /// `precision` override replaces it.
    pub fn new(
        p: u64,
        conductor: u64,
        group_order: u64,
        seed: u64,
        precision: Option<usize>,
    ) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let (np, npp) = arith::split_p(conductor, p);
        let e = arith::euler_phi(np) as usize;
        let residue = ResidueField::new(p, npp, seed);
        let default_precision =
            precision.unwrap_or(e * (arith::vp(group_order.max(1), p) as usize + 4));
        Ok(LocalContext {
            p,
            conductor,
            np,
            e,
            residue,
            default_precision: default_precision.max(1),
            max_precision: (1usize << 10) * e,
            tables: Mutex::new(HashMap::new()),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Ramification index e = phi(N_p).
    pub fn e(&self) -> usize {
        self.e
    }

    pub fn residue_field(&self) -> &ResidueField {
        &self.residue
    }

    pub fn field(&self) -> &GaloisField {
        self.residue.field()
    }

    pub fn default_precision(&self) -> usize {
        self.default_precision
    }

    fn oring(&self, precision: usize) -> ORing<'_> {
        ORing {
            w: WRing {
                modulus: BigInt::from(self.p).pow(precision as u32),
                h: self.residue.modulus(),
            },
            e: self.e,
            phi: crate::cyclo::cyclotomic_polynomial(self.np),
        }
    }

    /// Teichmueller lift of y: the fixed point of x -> x^q.
    fn teichmuller(&self, w: &WRing<'_>) -> Vec<BigInt> {
        let q = self.p.pow(self.residue.m as u32);
        let mut x = vec![BigInt::zero(); w.m()];
        if w.m() == 1 {
            // h = x - a with a the root; y is the constant a.
            x[0] = w.reduce_coeff(-BigInt::from(self.residue.modulus()[0]));
        } else {
            x[1] = BigInt::one();
        }
        loop {
            let next = w.pow(&x, q);
            if next == x {
                return x;
            }
            x = next;
        }
    }

    fn table(&self, precision: usize) -> Arc<EmbeddingTable> {
        let mut guard = self.tables.lock().expect("embedding cache poisoned");
        if let Some(t) = guard.get(&precision) {
            return t.clone();
        }
        let o = self.oring(precision);
        let omega = self.teichmuller(&o.w);
        let npp = self.conductor / self.np;
        // 1 = c1 N' + c2 p^s, zeta_N = z^c1 * omega^c2
        let c1 = if self.np == 1 {
            0
        } else {
            arith::mod_inv(npp as i64, self.np as i64).unwrap() as u64
        };
        let c2 = if npp == 1 {
            0
        } else {
            arith::mod_inv(self.np as i64, npp as i64).unwrap() as u64
        };
        let mut z = o.zero();
        if self.e == 1 {
            // z is the rational root of Phi_{p^s}: 1 or -1.
            z[0][0] = o.w.reduce_coeff(BigInt::from(-self.phi_const()));
        } else {
            z[1] = o.w.one();
        }
        let zc1 = o.pow(&z, c1);
        let mut om = o.zero();
        om[0] = o.w.pow(&omega, c2);
        let image = o.mul(&zc1, &om);
        let phi_n = crate::cyclo::CyclotomicBasis::get(self.conductor).phi();
        let mut powers = Vec::with_capacity(phi_n);
        let mut cur = o.zero();
        cur[0] = o.w.one();
        for _ in 0..phi_n {
            powers.push(cur.clone());
            cur = o.mul(&cur, &image);
        }
        let t = Arc::new(EmbeddingTable { powers });
        guard.insert(precision, t.clone());
        t
    }

    fn phi_const(&self) -> i64 {
        crate::cyclo::cyclotomic_polynomial(self.np)[0]
    }

    /// Ring embedding Q(zeta_N) -> completion, tracking the power of p
    /// cleared from denominators.
    pub fn embed(&self, a: &Cyclotomic, precision: usize) -> Result<LocalFieldElement> {
        if self.conductor % a.conductor() != 0 {
            return Err(Error::Parse(format!(
                "conductor {} does not divide {}",
                a.conductor(),
                self.conductor
            )));
        }
        let a = a.lift(self.conductor);
        let pb = BigInt::from(self.p);
        let den = a.denominator();
        let shift = {
            let mut d = den.clone();
            let mut k = 0u32;
            while (&d % &pb).is_zero() {
                d /= &pb;
                k += 1;
            }
            k
        };
        if precision == 0 {
            return Err(Error::InsufficientPrecision("precision must be positive".into()));
        }
        let o = self.oring(precision);
        let table = self.table(precision);
        let scale = pb.pow(shift);
        let mut acc = o.zero();
        for (i, c) in a.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scaled = c * crate::Rational::from_integer(scale.clone());
            let num = scaled.numer().mod_floor(&o.w.modulus);
            let d = scaled.denom().mod_floor(&o.w.modulus);
            let dinv = modinv_big(&d, &o.w.modulus).ok_or_else(|| {
                Error::internal("denominator not invertible after clearing p")
            })?;
            let coef = o.w.reduce_coeff(num * dinv);
            for (slot, t) in acc.iter_mut().zip(&table.powers[i]) {
                let term = o.w.scale(t, &coef);
                *slot = o.w.add(slot, &term);
            }
        }
        Ok(LocalFieldElement {
            precision,
            p_shift: shift,
            coeffs: acc,
        })
    }

    /// P-adic valuation, normalized so v(1 - zeta_{p^s}) = 1 and v(p) = e.
    pub fn valuation(&self, a: &LocalFieldElement) -> Valuation {
        let pb = BigInt::from(self.p);
        let mut prec = a.precision;
        let mut cur = a.coeffs.clone();
        let mut v: i64 = 0;
        let phi = crate::cyclo::cyclotomic_polynomial(self.np);
        loop {
            if prec == 0 {
                return Valuation::Inconclusive;
            }
            let modulus = pb.pow(prec as u32);
            for c in cur.iter_mut().flatten() {
                *c = c.mod_floor(&modulus);
            }
            if cur.iter().flatten().all(|c| c.is_zero()) {
                return Valuation::Inconclusive;
            }
            if cur.iter().flatten().all(|c| (c % &pb).is_zero()) {
                for c in cur.iter_mut().flatten() {
                    *c /= &pb;
                }
                v += self.e as i64;
                prec -= 1;
                continue;
            }
            // A(1) = sum of z-coefficients; its reduction is the residue.
            let m = self.residue.m;
            let mut a1 = vec![BigInt::zero(); m];
            for zc in &cur {
                for (s, c) in a1.iter_mut().zip(zc) {
                    *s += c;
                }
            }
            if a1.iter().any(|c| !(c % &pb).is_zero()) {
                return Valuation::Finite(v - (a.p_shift as i64) * self.e as i64);
            }
            // alpha / pi = c * D(z) - B(z), with A(z) = (z - 1) B(z) + A(1),
            // A(1) = p c and D(z) = (Phi(z) - p) / (z - 1).
            let e = self.e;
            let c: Vec<BigInt> = a1.iter().map(|x| x / &pb).collect();
            let mut b = vec![vec![BigInt::zero(); m]; e.saturating_sub(1).max(1)];
            {
                // synthetic division by (z - 1), from the top
                let mut carry = vec![BigInt::zero(); m];
                for i in (1..e).rev() {
                    for (k, cc) in carry.iter_mut().enumerate() {
                        *cc += &cur[i][k];
                    }
                    b[i - 1] = carry.clone();
                }
            }
            let mut d = vec![0i64; e];
            {
                let mut shifted = phi.clone();
                shifted[0] -= self.p as i64;
                let mut carry = 0i64;
                for i in (1..shifted.len()).rev() {
                    carry += shifted[i];
                    d[i - 1] = carry;
                }
            }
            let mut next = vec![vec![BigInt::zero(); m]; e];
            for i in 0..e {
                for k in 0..m {
                    next[i][k] = &c[k] * BigInt::from(d[i]);
                    if i + 1 < e {
                        next[i][k] -= &b[i][k];
                    }
                }
            }
            cur = next;
            v += 1;
            prec -= 1;
        }
    }

    /// Image in F_q; requires nonnegative valuation.
    pub fn residue(&self, a: &LocalFieldElement) -> Result<GfElem> {
        let pb = BigInt::from(self.p);
        if a.precision <= a.p_shift as usize {
            return Err(Error::InsufficientPrecision(format!(
                "precision {} does not exceed p-shift {}",
                a.precision, a.p_shift
            )));
        }
        let div = pb.pow(a.p_shift);
        let modulus = pb.pow(a.precision as u32);
        let m = self.residue.m;
        let mut sum = vec![BigInt::zero(); m];
        for zc in &a.coeffs {
            for (k, c) in zc.iter().enumerate() {
                let c = c.mod_floor(&modulus);
                if !(&c % &div).is_zero() {
                    return Err(Error::NotIntegral);
                }
                sum[k] += c / &div;
            }
        }
        let coords: Vec<u64> = sum
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect();
        Ok(self.field().from_prime_coords(&coords))
    }

    /// Exact valuation of a cyclotomic number with precision escalation;
    /// `None` for zero.
    pub fn valuation_of(&self, a: &Cyclotomic) -> Result<Option<i64>> {
        if a.is_zero() {
            return Ok(None);
        }
        let mut prec = self.default_precision;
        loop {
            let el = self.embed(a, prec)?;
            match self.valuation(&el) {
                Valuation::Finite(v) => return Ok(Some(v)),
                Valuation::Inconclusive => {
                    if prec >= self.max_precision {
                        return Err(Error::Inconclusive(prec));
                    }
                    prec = (prec * 2).min(self.max_precision);
                }
            }
        }
    }

    /// Residue of a P-integral cyclotomic number.
    pub fn reduce_p_integral(&self, a: &Cyclotomic) -> Result<GfElem> {
        let Some(v) = self.valuation_of(a)? else {
            return Ok(self.field().zero());
        };
        if v < 0 {
            return Err(Error::NotIntegral);
        }
        let shift = {
            let den = a.denominator();
            let pb = BigInt::from(self.p);
            let mut d = den;
            let mut k = 0usize;
            while (&d % &pb).is_zero() {
                d /= &pb;
                k += 1;
            }
            k
        };
        let prec = self.default_precision.max(shift + 1);
        self.residue(&self.embed(a, prec)?)
    }

    /// The integer bound e * v_p(n) used by integrality checks.
    pub fn scaled_vp(&self, n: u64) -> i64 {
        self.e as i64 * arith::vp(n, self.p) as i64
    }
}

fn modinv_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.abs().is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}
