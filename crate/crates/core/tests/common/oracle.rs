//! Primitive idempotents of Z(F_q G) by random-element splitting, using
//! only the group multiplication.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use blockcert::field::{Field, FiniteField};
use blockcert::gf::{GaloisField, GfElem};
use blockcert::perm::Group;

pub struct CenterOracle<'a> {
    g: &'a Group,
    f: &'a GaloisField,
    /// p^K >= dim Z(F_q G), enough to kill any nilpotent.
    big_power: u64,
}

impl<'a> CenterOracle<'a> {
    pub fn new(g: &'a Group, f: &'a GaloisField) -> Self {
        let r = g.classes().len() as u64;
        let mut big_power = f.p();
        while big_power < r {
            big_power *= f.p();
        }
        CenterOracle { g, f, big_power }
    }

    fn r(&self) -> usize {
        self.g.classes().len()
    }

    /// Product of class-coordinate vectors through dense convolution.
    pub fn mul(&self, u: &[GfElem], v: &[GfElem]) -> Vec<GfElem> {
        let f = self.f;
        let g = self.g;
        let dense = |c: &[GfElem]| -> Vec<GfElem> {
            (0..g.order()).map(|x| c[g.class_of(x)].clone()).collect()
        };
        let (du, dv) = (dense(u), dense(v));
        g.classes()
            .iter()
            .map(|cls| {
                let t = cls.representative;
                (0..g.order()).fold(f.zero(), |acc, x| {
                    if f.is_zero(&du[x]) {
                        return acc;
                    }
                    let y = g.mul(g.inv(x), t);
                    f.add(&acc, &f.mul(&du[x], &dv[y]))
                })
            })
            .collect()
    }

    fn pow(&self, a: &[GfElem], mut e: u64) -> Vec<GfElem> {
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

    pub fn one(&self) -> Vec<GfElem> {
        let mut v = vec![self.f.zero(); self.r()];
        v[self.g.class_of(0)] = self.f.one();
        v
    }

    fn is_zero(&self, a: &[GfElem]) -> bool {
        a.iter().all(|x| self.f.is_zero(x))
    }

    fn scaled(&self, a: &[GfElem], c: &GfElem) -> Vec<GfElem> {
        a.iter().map(|x| self.f.mul(x, c)).collect()
    }

    fn sub(&self, a: &[GfElem], b: &[GfElem]) -> Vec<GfElem> {
        a.iter().zip(b).map(|(x, y)| self.f.sub(x, y)).collect()
    }

    /// e A is local: y^{p^K} is a multiple of e for every y in e A.
    fn is_primitive(&self, e: &[GfElem]) -> bool {
        (0..self.r()).all(|j| {
            let mut c = vec![self.f.zero(); self.r()];
            c[j] = self.f.one();
            let y = self.mul(e, &c);
            let z = self.pow(&y, self.big_power);
            let k = e.iter().position(|x| !self.f.is_zero(x)).unwrap();
            let lambda = self.f.div(&z[k], &e[k]).unwrap();
            z == self.scaled(e, &lambda)
        })
    }

    /// Splits e along the eigenvalues of a modulo the radical.
    fn split(&self, e: &[GfElem], a: &[GfElem]) -> Vec<Vec<GfElem>> {
        let f = self.f;
        let q = f.order().to_u64_digits()[0];
        let one = self.one();
        let ea = self.mul(e, a);
        let mut parts = Vec::new();
        for idx in 0..q {
            let lambda = f.element_from_index(idx);
            let shifted = self.sub(&ea, &self.scaled(e, &lambda));
            let ind = self.sub(&one, &self.pow(&shifted, q - 1));
            let part = self.mul(e, &self.pow(&ind, self.big_power));
            if !self.is_zero(&part) {
                parts.push(part);
            }
        }
        parts
    }

    /// All primitive idempotents, deterministically seeded from `seed`.
    pub fn primitive_idempotents(&self, seed: u64) -> Vec<Vec<GfElem>> {
        let f = self.f;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = f.order().to_u64_digits()[0];
        let mut done = Vec::new();
        let mut todo = vec![self.one()];
        let mut rounds = 0;
        while let Some(e) = todo.pop() {
            if self.is_primitive(&e) {
                done.push(e);
                continue;
            }
            rounds += 1;
            assert!(rounds < 10_000, "splitting did not terminate");
            let a: Vec<GfElem> = (0..self.r())
                .map(|_| f.element_from_index(rng.gen_range(0..q)))
                .collect();
            let parts = self.split(&e, &a);
            if parts.len() == 1 {
                todo.push(e);
            } else {
                todo.extend(parts);
            }
        }
        done.sort();
        done
    }
}

pub fn seed_from_hash(hash: &str) -> u64 {
    u64::from_str_radix(&hash[..16], 16).unwrap()
}
