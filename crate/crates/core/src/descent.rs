//! Centers of block algebras over the residue field, the central
//! isomorphism induced by the Galois isometry, descent to an F_p-form and
//! the Brauer-Feit bound.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::blocks::{central_product, BlockSystem};
use crate::cyclo::CyclotomicField;
use crate::error::{Error, Result};
use crate::field::{Field, FiniteField, PrimeField};
use crate::gf::{ExtensionField, GaloisField, GfElem};
use crate::isotypy::build_isometry;
use crate::linalg::{self, Mat};
use crate::localfield::LocalContext;
use crate::Cyclotomic;

/// Cap on the degree j of the scalar extension F_{q^j} used for descent.
pub const MAX_EXTENSION: usize = 64;

/// Product of two central elements given by class coordinates.
pub fn class_mul<F: Field>(f: &F, consts: &[Vec<Vec<u32>>], u: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
    let r = u.len();
    let mut out = vec![f.zero(); r];
    for j in 0..r {
        if f.is_zero(&u[j]) {
            continue;
        }
        for i in 0..r {
            if f.is_zero(&v[i]) {
                continue;
            }
            let uv = f.mul(&u[j], &v[i]);
            for (k, slot) in out.iter_mut().enumerate() {
                let c = consts[j][i][k];
                if c != 0 {
                    *slot = f.add(slot, &f.mul(&uv, &f.from_int(c as i64)));
                }
            }
        }
    }
    out
}

/// Z(kGb) inside the class-sum coordinates of Z(kG).
#[derive(Clone, Debug)]
pub struct CenterAlgebra {
    pub block: usize,
    /// Classes j whose products b Ĉ_j form the basis.
    pub classes: Vec<usize>,
    pub basis: Vec<Vec<GfElem>>,
    /// structure[a][b][c]: coefficient of basis c in basis a * basis b.
    pub structure: Vec<Vec<Vec<GfElem>>>,
    /// Coordinates of the block idempotent.
    pub unit: Vec<GfElem>,
}

impl CenterAlgebra {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a class-coordinate vector in this basis.
    pub fn coordinates(&self, f: &GaloisField, v: &[GfElem]) -> Option<Vec<GfElem>> {
        linalg::coordinates(f, &self.basis, v)
    }

    /// Product of two elements given in basis coordinates, over any field
    /// containing F_q.
    pub fn mul_in<E: Field>(&self, e: &E, lift: impl Fn(&GfElem) -> E::Elem, x: &[E::Elem], y: &[E::Elem]) -> Vec<E::Elem> {
        let n = self.dimension();
        let mut out = vec![e.zero(); n];
        for a in 0..n {
            if e.is_zero(&x[a]) {
                continue;
            }
            for b in 0..n {
                if e.is_zero(&y[b]) {
                    continue;
                }
                let xy = e.mul(&x[a], &y[b]);
                for (c, slot) in out.iter_mut().enumerate() {
                    let s = &self.structure[a][b][c];
                    if s.iter().any(|&t| t != 0) {
                        *slot = e.add(slot, &e.mul(&xy, &lift(s)));
                    }
                }
            }
        }
        out
    }

    /// The same algebra on the basis t'_a = sum_x change[x][a] t_x.
    pub fn rebased(&self, f: &GaloisField, consts: &[Vec<Vec<u32>>], change: &[Vec<GfElem>]) -> Result<Self> {
        let n = self.dimension();
        let basis: Vec<Vec<GfElem>> = (0..n)
            .map(|a| {
                let mut v = vec![f.zero(); self.basis[0].len()];
                for x in 0..n {
                    for (slot, t) in v.iter_mut().zip(&self.basis[x]) {
                        *slot = f.add(slot, &f.mul(&change[x][a], t));
                    }
                }
                v
            })
            .collect();
        let unit_class = self
            .basis
            .iter()
            .zip(&self.unit)
            .fold(vec![f.zero(); self.basis[0].len()], |acc, (t, c)| {
                acc.iter().zip(t).map(|(x, y)| f.add(x, &f.mul(c, y))).collect()
            });
        finish_center(f, consts, self.block, self.classes.clone(), basis, &unit_class)
    }
}

fn finish_center(
    f: &GaloisField,
    consts: &[Vec<Vec<u32>>],
    block: usize,
    classes: Vec<usize>,
    basis: Vec<Vec<GfElem>>,
    idempotent: &[GfElem],
) -> Result<CenterAlgebra> {
    let n = basis.len();
    let mut structure = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let prod = class_mul(f, consts, &basis[a], &basis[b]);
            structure[a][b] = linalg::coordinates(f, &basis, &prod)
                .ok_or_else(|| Error::internal(format!("block {block}: center is not closed")))?;
        }
    }
    let unit = linalg::coordinates(f, &basis, idempotent)
        .ok_or_else(|| Error::internal(format!("block {block}: idempotent outside its center")))?;
    Ok(CenterAlgebra {
        block,
        classes,
        basis,
        structure,
        unit,
    })
}

/// Basis of Z(kGb) from a greedy independent subset of {b Ĉ_j}.
pub fn center_of_block(sys: &BlockSystem, b: usize) -> Result<CenterAlgebra> {
    let f = &sys.field;
    let consts = sys.table.class_constants();
    let r = sys.table.len();
    let idem = &sys.blocks[b].residue;
    let mut classes = Vec::new();
    let mut basis: Vec<Vec<GfElem>> = Vec::new();
    for j in 0..r {
        let mut cj = vec![f.zero(); r];
        cj[j] = f.one();
        let v = class_mul(f, consts, idem, &cj);
        let mut trial = basis.clone();
        trial.push(v.clone());
        if linalg::rank(f, &trial) == trial.len() {
            basis = trial;
            classes.push(j);
        }
    }
    let n = sys.blocks[b].irr.len();
    if basis.len() != n {
        return Err(Error::internal(format!(
            "block {b}: center has dimension {} but the block has {n} characters",
            basis.len()
        )));
    }
    finish_center(f, consts, b, classes, basis, idem)
}

/// The reduction f̄: Z(kG σⁿ(b)) -> Z(kGb) of the central isomorphism
/// with ω_χ(f(z)) = ω_{σⁿχ}(z).
#[derive(Clone, Debug)]
pub struct CentralIso {
    pub source_block: usize,
    pub target_block: usize,
    pub power: u64,
    /// Column j: coordinates of f̄(target basis j) in the source basis.
    pub matrix: Mat<GfElem>,
    /// Smallest valuation among the exact solution coefficients (None if
    /// all vanish).
    pub min_valuation: Option<i64>,
}

pub fn broue_central_iso(
    sys: &BlockSystem,
    local: &LocalContext,
    b: usize,
    n: u64,
    source: &CenterAlgebra,
    target: &CenterAlgebra,
) -> Result<CentralIso> {
    let table = &sys.table;
    let f = &sys.field;
    let iso = build_isometry(sys, b, n)?;
    if target.block != iso.target_block || source.block != b {
        return Err(Error::internal("centers do not match the isometry"));
    }
    let k = CyclotomicField {
        conductor: table.conductor(),
    };
    let a: Mat<Cyclotomic> = iso
        .map
        .iter()
        .map(|&(chi, _)| source.classes.iter().map(|&j| table.central_character(chi, j)).collect())
        .collect();
    let ainv = linalg::inverse(&k, &a)
        .ok_or_else(|| Error::internal(format!("block {b}: central character matrix is singular")))?;
    let dim = source.dimension();
    let mut matrix = vec![vec![f.zero(); target.dimension()]; dim];
    let mut min_valuation: Option<i64> = None;
    for (col, &jt) in target.classes.iter().enumerate() {
        let rhs: Vec<Cyclotomic> = iso
            .map
            .iter()
            .map(|&(_, image)| table.central_character(image, jt))
            .collect();
        let c = linalg::mat_vec(&k, &ainv, &rhs);
        // w = sum_j c_j b Ĉ_j with exact class coefficients
        let mut w = vec![Cyclotomic::zero(table.conductor()); table.len()];
        for (cj, &j) in c.iter().zip(&source.classes) {
            let mut e = vec![Cyclotomic::zero(table.conductor()); table.len()];
            e[j] = cj.clone();
            let bc = central_product(table, &sys.blocks[b].coeffs, &e);
            for (slot, x) in w.iter_mut().zip(&bc) {
                *slot = &*slot + x;
            }
        }
        for (chi, image) in &iso.map {
            let lhs = table.values()[*chi]
                .iter()
                .zip(table.class_sizes())
                .zip(&w)
                .fold(Cyclotomic::zero(table.conductor()), |acc, ((x, s), wk)| {
                    &acc + &(x * wk).scale(&BigRational::from_integer(BigInt::from(s)))
                });
            let lhs = lhs.scale(&BigRational::new(BigInt::from(1), BigInt::from(table.degree(*chi))));
            if lhs != table.central_character(*image, jt) {
                return Err(Error::internal(format!(
                    "block {b}: solution does not satisfy the central character system"
                )));
            }
        }
        for (label, x) in c.iter().map(|x| ("coordinate", x)).chain(w.iter().map(|x| ("coefficient", x))) {
            match local.valuation_of(x)? {
                None => {}
                Some(v) if v < 0 => {
                    return Err(Error::Counterexample(format!(
                        "block {b}, power {n}: f(σⁿ(b) Ĉ_{jt}) has {label} {x} of valuation {v}"
                    )))
                }
                Some(v) => min_valuation = Some(min_valuation.map_or(v, |m| m.min(v))),
            }
        }
        let cbar = c.iter().map(|x| local.reduce_p_integral(x)).collect::<Result<Vec<_>>>()?;
        let wbar = w.iter().map(|x| local.reduce_p_integral(x)).collect::<Result<Vec<_>>>()?;
        if source.coordinates(f, &wbar).as_ref() != Some(&cbar) {
            return Err(Error::internal(format!("block {b}: reduction of f is inconsistent")));
        }
        for (row, x) in matrix.iter_mut().zip(cbar) {
            row[col] = x;
        }
    }
    let out = CentralIso {
        source_block: b,
        target_block: iso.target_block,
        power: n,
        matrix,
        min_valuation,
    };
    verify_algebra_iso(f, &out.matrix, target, source)
        .map_err(|m| Error::internal(format!("block {b}, power {n}: f̄ {m}")))?;
    Ok(out)
}

fn column(m: &[Vec<GfElem>], j: usize) -> Vec<GfElem> {
    m.iter().map(|r| r[j].clone()).collect()
}

/// Checks that `m` (columns = images of `from` basis in `to` coordinates)
/// is a unital algebra isomorphism.
fn verify_algebra_iso(
    f: &GaloisField,
    m: &[Vec<GfElem>],
    from: &CenterAlgebra,
    to: &CenterAlgebra,
) -> std::result::Result<(), String> {
    if linalg::inverse(f, m).is_none() {
        return Err("is not bijective".into());
    }
    if linalg::mat_vec(f, m, &from.unit) != to.unit {
        return Err("does not preserve the unit".into());
    }
    let n = from.dimension();
    let id = |x: &GfElem| x.clone();
    for a in 0..n {
        for b in 0..n {
            let lhs = linalg::mat_vec(f, m, &from.structure[a][b]);
            let rhs = to.mul_in(f, id, &column(m, a), &column(m, b));
            if lhs != rhs {
                return Err(format!("is not multiplicative on basis pair ({a}, {b})"));
            }
        }
    }
    Ok(())
}

/// v -> M v^(p) on coordinates of a center.
#[derive(Clone, Debug)]
pub struct SemilinearMap {
    pub block: usize,
    pub matrix: Mat<GfElem>,
    pub twist: u64,
}

impl SemilinearMap {
    pub fn apply<E: FiniteField>(&self, e: &E, lift: impl Fn(&GfElem) -> E::Elem, v: &[E::Elem]) -> Vec<E::Elem> {
        let vp: Vec<E::Elem> = v.iter().map(|x| e.frobenius(x)).collect();
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&vp)
                    .fold(e.zero(), |acc, (m, x)| e.add(&acc, &e.mul(&lift(m), x)))
            })
            .collect()
    }

    /// The map in coordinates v = change v'.
    pub fn rebased(&self, f: &GaloisField, change: &[Vec<GfElem>]) -> Option<Self> {
        let inv = linalg::inverse(f, change)?;
        let twisted: Mat<GfElem> = change
            .iter()
            .map(|r| r.iter().map(|x| f.frobenius(x)).collect())
            .collect();
        let matrix = linalg::mat_mul(f, &linalg::mat_mul(f, &inv, &self.matrix), &twisted);
        Some(SemilinearMap {
            block: self.block,
            matrix,
            twist: self.twist,
        })
    }
}

/// θ = (coefficientwise Frobenius) ∘ f̄ on Z(kG σ(b)), with f̄ from
/// [`broue_central_iso`] at power 1.
pub fn semilinear_theta(
    sys: &BlockSystem,
    iso: &CentralIso,
    source: &CenterAlgebra,
    target: &CenterAlgebra,
) -> Result<SemilinearMap> {
    let f = &sys.field;
    let p = sys.p;
    // S: Frobenius images of the source basis in target coordinates
    let s_cols: Vec<Vec<GfElem>> = source
        .basis
        .iter()
        .map(|v| {
            let fv: Vec<GfElem> = v.iter().map(|x| f.frobenius(x)).collect();
            target.coordinates(f, &fv)
        })
        .collect::<Option<_>>()
        .ok_or_else(|| Error::internal("Frobenius does not map the source center to the target"))?;
    let s = linalg::transpose(&s_cols);
    let fp: Mat<GfElem> = iso
        .matrix
        .iter()
        .map(|r| r.iter().map(|x| f.frobenius(x)).collect())
        .collect();
    let theta = SemilinearMap {
        block: target.block,
        matrix: linalg::mat_mul(f, &s, &fp),
        twist: p,
    };
    verify_theta(f, &theta, iso, source, target)?;
    Ok(theta)
}

fn verify_theta(
    f: &GaloisField,
    theta: &SemilinearMap,
    iso: &CentralIso,
    source: &CenterAlgebra,
    target: &CenterAlgebra,
) -> Result<()> {
    let id = |x: &GfElem| x.clone();
    let n = target.dimension();
    let fail = |m: &str| Err(Error::internal(format!("θ on block {}: {m}", target.block)));
    if linalg::inverse(f, &theta.matrix).is_none() {
        return fail("not bijective");
    }
    if theta.apply(f, id, &target.unit) != target.unit {
        return fail("does not fix the unit");
    }
    let u = f.generator();
    let lu: Vec<GfElem> = target.unit.iter().map(|x| f.mul(&u, x)).collect();
    let up = f.frobenius(&u);
    let expect: Vec<GfElem> = target.unit.iter().map(|x| f.mul(&up, x)).collect();
    if theta.apply(f, id, &lu) != expect {
        return fail("not p-semilinear on the unit line");
    }
    let basis: Vec<Vec<GfElem>> = (0..n)
        .map(|a| {
            let mut v = vec![f.zero(); n];
            v[a] = f.one();
            v
        })
        .collect();
    for a in 0..n {
        // direct route: class coordinates of f̄(t_a), raised to the p-th power
        let fa = source.basis.iter().zip(column(&iso.matrix, a)).fold(
            vec![f.zero(); source.basis[0].len()],
            |acc, (t, c)| acc.iter().zip(t).map(|(x, y)| f.add(x, &f.mul(&c, y))).collect(),
        );
        let direct: Vec<GfElem> = fa.iter().map(|x| f.frobenius(x)).collect();
        if target.coordinates(f, &direct) != Some(theta.apply(f, id, &basis[a])) {
            return fail("matrix differs from Frobenius after f̄");
        }
        for b in 0..n {
            let lhs = theta.apply(f, id, &target.structure[a][b]);
            let rhs = target.mul_in(
                f,
                id,
                &theta.apply(f, id, &basis[a]),
                &theta.apply(f, id, &basis[b]),
            );
            if lhs != rhs {
                return fail(&format!("not multiplicative on ({a}, {b})"));
            }
        }
    }
    Ok(())
}

/// A θ-fixed F_p-form of a center.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FpForm {
    pub block: usize,
    pub dimension: usize,
    /// Degree j of the extension F_{q^j} in which the fixed points live.
    pub extension_degree: usize,
    /// Order of the F_q-linear map θ^m, which determines j.
    pub theta_power_order: usize,
    /// Fixed basis vectors as F_p-coordinates of their center coordinates.
    pub basis: Vec<Vec<u64>>,
    /// structure[a][b][c] in F_p.
    pub structure: Vec<Vec<Vec<u64>>>,
    pub unit: Vec<u64>,
    /// Rank over F_{q^j} of the fixed basis; equals the center dimension.
    pub span_rank: usize,
}

fn mat_frobenius(f: &GaloisField, m: &[Vec<GfElem>], times: usize) -> Mat<GfElem> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| (0..times).fold(x.clone(), |y, _| f.frobenius(&y)))
                .collect()
        })
        .collect()
}

/// Order of N = M M^(p) ... M^(p^{m-1}); θ^{mj} = N^j on F_{q^j}.
fn theta_power_order(f: &GaloisField, theta: &SemilinearMap) -> Option<usize> {
    let m = f.degree();
    let n = theta.matrix.len();
    let mut big = linalg::identity(f, n);
    for i in 0..m {
        big = linalg::mat_mul(f, &big, &mat_frobenius(f, &theta.matrix, i));
    }
    let id = linalg::identity(f, n);
    let mut acc = big.clone();
    for j in 1..=MAX_EXTENSION {
        if acc == id {
            return Some(j);
        }
        acc = linalg::mat_mul(f, &acc, &big);
    }
    None
}

/// Fixed points of θ on F_{q^j}^n with j the least level where θ^{mj} = 1,
/// followed by closure and F_p-rationality checks on the structure
/// constants.
pub fn fixed_points(f: &GaloisField, theta: &SemilinearMap, center: &CenterAlgebra) -> Result<FpForm> {
    let (form, _) = fixed_points_with_vectors(f, theta, center)?;
    Ok(form)
}

type Ext = ExtensionField<GaloisField>;

fn fixed_points_with_vectors(
    f: &GaloisField,
    theta: &SemilinearMap,
    center: &CenterAlgebra,
) -> Result<(FpForm, Vec<Vec<Vec<GfElem>>>)> {
    let n = center.dimension();
    let order = theta_power_order(f, theta).ok_or_else(|| {
        Error::CapExceeded(format!("θ^m has order above {MAX_EXTENSION} on block {}", center.block))
    })?;
    let j = order;
    let e = Ext::find(f.clone(), j);
    let lift = |x: &GfElem| e.embed(x);
    let fp = PrimeField::new(f.p());
    let d = e.prime_degree();
    let total = n * d;
    // columns of θ - id on the F_p-basis of F_{q^j}^n
    let mut cols: Vec<Vec<u64>> = Vec::with_capacity(total);
    for i in 0..n {
        for t in 0..d {
            let mut unit = vec![0u64; d];
            unit[t] = 1;
            let mut v = vec![e.zero(); n];
            v[i] = e.from_prime_coords(&unit);
            let tv = theta.apply(&e, lift, &v);
            let diff: Vec<u64> = tv
                .iter()
                .zip(&v)
                .flat_map(|(x, y)| e.prime_coords(&e.sub(x, y)))
                .collect();
            cols.push(diff);
        }
    }
    let kernel = linalg::nullspace(&fp, &linalg::transpose(&cols), total);
    if kernel.len() != n {
        return Err(Error::internal(format!(
            "block {}: fixed points have F_p-dimension {} at level {j}, expected {n}",
            center.block,
            kernel.len()
        )));
    }
    let vectors: Vec<Vec<Vec<GfElem>>> = kernel
        .iter()
        .map(|k| k.chunks(d).map(|c| e.from_prime_coords(c)).collect())
        .collect();
    for v in &vectors {
        if theta.apply(&e, lift, v) != *v {
            return Err(Error::internal("kernel vector is not fixed by θ"));
        }
    }
    let span_rank = linalg::rank(&e, &vectors);
    if span_rank != n {
        return Err(Error::internal(format!(
            "block {}: fixed points span rank {span_rank} of {n}",
            center.block
        )));
    }
    let to_fp = |c: &[Vec<GfElem>], what: &str| -> Result<Vec<u64>> {
        c.iter()
            .map(|x| {
                if e.is_prime_field_elem(x) {
                    Ok(e.prime_coords(x)[0])
                } else {
                    Err(Error::Counterexample(format!(
                        "block {}: {what} has a coefficient outside F_p",
                        center.block
                    )))
                }
            })
            .collect()
    };
    let mut structure = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let prod = center.mul_in(&e, lift, &vectors[a], &vectors[b]);
            let c = linalg::coordinates(&e, &vectors, &prod).ok_or_else(|| {
                Error::Counterexample(format!(
                    "block {}: fixed points are not closed under multiplication",
                    center.block
                ))
            })?;
            structure[a][b] = to_fp(&c, &format!("product ({a}, {b})"))?;
        }
    }
    let unit_e: Vec<Vec<GfElem>> = center.unit.iter().map(lift).collect();
    let unit_c = linalg::coordinates(&e, &vectors, &unit_e)
        .ok_or_else(|| Error::internal("unit outside the fixed span"))?;
    let unit = to_fp(&unit_c, "the unit")?;
    let form = FpForm {
        block: center.block,
        dimension: n,
        extension_degree: j,
        theta_power_order: order,
        basis: kernel,
        structure,
        unit,
        span_rank,
    };
    Ok((form, vectors))
}

/// Reruns the descent after the change of basis `change` (a unipotent
/// matrix when `None`) and checks that the fixed F_p-span is the same
/// subspace of the center.
pub fn basis_independence(
    f: &GaloisField,
    consts: &[Vec<Vec<u32>>],
    theta: &SemilinearMap,
    center: &CenterAlgebra,
    change: Option<&[Vec<GfElem>]>,
) -> Result<bool> {
    let n = center.dimension();
    let default: Mat<GfElem>;
    let change = match change {
        Some(c) => c,
        None => {
            let u = f.generator();
            default = (0..n)
                .map(|i| (0..n).map(|k| if i == k { f.one() } else if k > i { u.clone() } else { f.zero() }).collect())
                .collect();
            &default
        }
    };
    let theta2 = theta
        .rebased(f, change)
        .ok_or_else(|| Error::internal("change of basis is singular"))?;
    let center2 = center.rebased(f, consts, change)?;
    let (form1, v1) = fixed_points_with_vectors(f, theta, center)?;
    let (form2, v2) = fixed_points_with_vectors(f, &theta2, &center2)?;
    if form1.extension_degree != form2.extension_degree {
        return Ok(false);
    }
    let e = Ext::find(f.clone(), form1.extension_degree);
    let lifted: Mat<Vec<GfElem>> = change.iter().map(|r| r.iter().map(|x| e.embed(x)).collect()).collect();
    let back: Vec<Vec<u64>> = v2
        .iter()
        .map(|v| {
            linalg::mat_vec(&e, &lifted, v)
                .iter()
                .flat_map(|x| e.prime_coords(x))
                .collect()
        })
        .collect();
    let orig: Vec<Vec<u64>> = v1
        .iter()
        .map(|v| v.iter().flat_map(|x| e.prime_coords(x)).collect())
        .collect();
    let fp = PrimeField::new(f.p());
    let mut both = orig.clone();
    both.extend(back.iter().cloned());
    Ok(linalg::rank(&fp, &orig) == n && linalg::rank(&fp, &back) == n && linalg::rank(&fp, &both) == n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BrauerFeitReport {
    pub prime: u64,
    pub defect: u32,
    pub characters: usize,
    /// m = p^{2d}/4 + 1 as an exact reduced fraction.
    pub m: String,
    pub m_floor: u64,
    /// The number of F_p-algebras of dimension at most m is below p^e with
    /// e = floor(m)^3.
    pub count_exponent: String,
    pub count_bound: String,
    pub holds: bool,
}

/// |Irr(G,b)| <= p^{2d}/4 + 1.
pub fn brauer_feit_check(p: u64, defect: u32, characters: usize) -> Result<BrauerFeitReport> {
    let p2d = BigUint::from(p).pow(2 * defect);
    let m = BigRational::new(BigInt::from(p2d.clone()) + 4, BigInt::from(4));
    let m_floor_big = (p2d + 4u32) / 4u32;
    let m_floor = m_floor_big.to_u64().ok_or_else(|| Error::CapExceeded("defect too large".into()))?;
    let exponent = BigUint::from(m_floor).pow(3);
    let exp_u32 = exponent
        .to_u32()
        .ok_or_else(|| Error::CapExceeded(format!("count bound exponent {exponent}")))?;
    let count = BigUint::from(p).pow(exp_u32);
    let holds = (characters as u64) <= m_floor;
    if !holds {
        return Err(Error::Counterexample(format!(
            "{characters} characters in a block of defect {defect} exceed m = {m}"
        )));
    }
    Ok(BrauerFeitReport {
        prime: p,
        defect,
        characters,
        m: m.to_string(),
        m_floor,
        count_exponent: exponent.to_string(),
        count_bound: count.to_string(),
        holds,
    })
}

/// Everything the descent produces for one block.
#[derive(Clone, Debug)]
pub struct DescentResult {
    pub center: CenterAlgebra,
    pub image: CenterAlgebra,
    pub iso: CentralIso,
    pub theta: SemilinearMap,
    pub form: FpForm,
    pub basis_independent: bool,
    pub brauer_feit: BrauerFeitReport,
}

/// Center of b, f̄ between σ(b) and b, θ on Z(kGσ(b)), its F_p-form and
/// the Brauer-Feit report for b.
pub fn descend(sys: &BlockSystem, local: &LocalContext, b: usize) -> Result<DescentResult> {
    let f = &sys.field;
    let center = center_of_block(sys, b)?;
    let target = sys.sigma_power(b, 1);
    let image = if target == b {
        center.clone()
    } else {
        center_of_block(sys, target)?
    };
    let iso = broue_central_iso(sys, local, b, 1, &center, &image)?;
    let theta = semilinear_theta(sys, &iso, &center, &image)?;
    let form = fixed_points(f, &theta, &image)?;
    let basis_independent = basis_independence(f, sys.table.class_constants(), &theta, &image, None)?;
    let blk = &sys.blocks[b];
    let brauer_feit = brauer_feit_check(sys.p, blk.defect, blk.irr.len())?;
    Ok(DescentResult {
        center,
        image,
        iso,
        theta,
        form,
        basis_independent,
        brauer_feit,
    })
}
