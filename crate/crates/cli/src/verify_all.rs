//! The corpus runner: every block, every Galois power, every corollary.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use blockcert::descent::{self, BrauerFeitReport};
use blockcert::isotypy::{self, IsotypyCertificate, IsotypyOptions, Verdict};
use blockcert::perm::Group;
use blockcert::session::Session;
use blockcert::Error;

use crate::report::GroupInfo;
use crate::Common;

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

impl Counts {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Inconclusive => self.inconclusive += 1,
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckRecord {
    pub check: String,
    pub block: Option<usize>,
    pub verdict: Verdict,
    pub detail: Option<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DescentSummary {
    pub block: usize,
    pub characters: usize,
    pub center_dimension: usize,
    pub fp_dimension: usize,
    pub extension_degree: usize,
    pub span_rank: usize,
    pub basis_independent: bool,
    pub central_iso_min_valuation: Option<i64>,
    pub structure_constants: Vec<Vec<Vec<u64>>>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Entry {
    pub group: GroupInfo,
    pub prime: u64,
    pub prime_divides_order: bool,
    pub blocks: usize,
    pub orbits: Vec<Vec<usize>>,
    pub nontrivial_orbits: usize,
    pub checks: Vec<CheckRecord>,
    pub isotypy: Vec<IsotypyCertificate>,
    pub descent: Vec<DescentSummary>,
    pub brauer_feit: Vec<BrauerFeitReport>,
    pub verdict: Verdict,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyAllReport {
    pub strict: bool,
    pub entries: Vec<Entry>,
    pub totals: BTreeMap<String, Counts>,
    pub verdict: Verdict,
}

fn worst(a: Verdict, b: Verdict) -> Verdict {
    match (a, b) {
        (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
        (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
        _ => Verdict::Pass,
    }
}

/// Failed and inconclusive computations become records; input errors
/// propagate.
fn record<T>(
    checks: &mut Vec<CheckRecord>,
    check: &str,
    block: Option<usize>,
    r: blockcert::Result<T>,
) -> blockcert::Result<Option<T>> {
    match r {
        Ok(v) => {
            checks.push(CheckRecord {
                check: check.into(),
                block,
                verdict: Verdict::Pass,
                detail: None,
            });
            Ok(Some(v))
        }
        Err(e) => {
            let verdict = match e.exit_code() {
                1 => Verdict::Fail,
                2 => Verdict::Inconclusive,
                _ => return Err(e),
            };
            checks.push(CheckRecord {
                check: check.into(),
                block,
                verdict,
                detail: Some(e.to_string()),
            });
            Ok(None)
        }
    }
}

fn check_dual_path(s: &Session) -> blockcert::Result<usize> {
    let mut tables = vec![s.table.clone()];
    tables.extend(s.subgroup_tables());
    let mut n = 0;
    for t in tables {
        for i in 0..t.len() {
            t.sigma_character(i, s.p)?;
            n += 1;
        }
    }
    Ok(n)
}

fn run_entry(g: Arc<Group>, p: u64, strict: bool, common: &Common) -> blockcert::Result<Entry> {
    let s = Session::new(g.clone(), p, common.options())?;
    let mut checks = Vec::new();
    record(&mut checks, "characterTable", None, s.table.verify_orthogonality())?;
    record(&mut checks, "centralCharacters", None, s.table.verify_central_characters())?;
    // BlockSystem::compute has already verified support, subfield,
    // integrality, idempotency and the residue Frobenius relation.
    checks.push(CheckRecord {
        check: "blockIdempotents".into(),
        block: None,
        verdict: Verdict::Pass,
        detail: None,
    });
    let sys = &s.system;
    let opts = IsotypyOptions {
        strict,
        all_maximal_pairs: false,
    };
    let mut certs = Vec::new();
    for b in 0..sys.len() {
        for n in 1..=sys.orbit_length(b) as u64 {
            let r = isotypy::verify_isotypy(&s, b, n, opts);
            if let Some(c) = record(&mut checks, "isotypyComputation", Some(b), r)? {
                checks.pop();
                checks.push(CheckRecord {
                    check: "isotypy".into(),
                    block: Some(b),
                    verdict: c.verdict,
                    detail: c.witness.as_ref().map(|w| format!("[{}] {}", w.check, w.detail)),
                });
                certs.push(c);
            }
        }
    }
    let mut descents = Vec::new();
    let mut bf = Vec::new();
    for b in 0..sys.len() {
        let blk = &sys.blocks[b];
        if let Some(r) = record(
            &mut checks,
            "brauerFeit",
            Some(b),
            descent::brauer_feit_check(p, blk.defect, blk.irr.len()),
        )? {
            bf.push(r);
        }
        if let Some(r) = record(&mut checks, "fpForm", Some(b), descent::descend(sys, &s.local, b))? {
            if !r.basis_independent {
                checks.push(CheckRecord {
                    check: "fpFormBasisIndependence".into(),
                    block: Some(b),
                    verdict: Verdict::Fail,
                    detail: None,
                });
            }
            descents.push(DescentSummary {
                block: b,
                characters: blk.irr.len(),
                center_dimension: r.center.dimension(),
                fp_dimension: r.form.dimension,
                extension_degree: r.form.extension_degree,
                span_rank: r.form.span_rank,
                basis_independent: r.basis_independent,
                central_iso_min_valuation: r.iso.min_valuation,
                structure_constants: r.form.structure,
            });
        }
    }
    // last, so that every centralizer table built above is included
    record(&mut checks, "dualPathSigma", None, check_dual_path(&s))?;
    let verdict = checks.iter().fold(Verdict::Pass, |v, c| worst(v, c.verdict));
    let orbits = sys.galois_orbits();
    Ok(Entry {
        group: GroupInfo::of(&g),
        prime: p,
        prime_divides_order: g.order() as u64 % p == 0,
        blocks: sys.len(),
        nontrivial_orbits: orbits.iter().filter(|o| o.len() > 1).count(),
        orbits,
        checks,
        isotypy: certs,
        descent: descents,
        brauer_feit: bf,
        verdict,
    })
}

pub fn run(
    paths: &[PathBuf],
    prime: Option<u64>,
    strict: bool,
    jobs: usize,
    common: &Common,
) -> blockcert::Result<VerifyAllReport> {
    let limits = common.options().limits;
    let mut work = Vec::new();
    for path in paths {
        let g = crate::load_group(path, &limits)?;
        let primes = match prime {
            Some(p) => {
                if !blockcert::arith::is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                if g.order() as u64 % p != 0 {
                    eprintln!(
                        "warning: {p} does not divide |{}| = {}; every block has defect 0",
                        g.name(),
                        g.order()
                    );
                }
                vec![p]
            }
            None => blockcert::arith::prime_divisors(g.order() as u64),
        };
        for p in primes {
            work.push((g.clone(), p));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let entries: Vec<Entry> = pool.install(|| {
        work.into_par_iter()
            .map(|(g, p)| run_entry(g, p, strict, common))
            .collect::<blockcert::Result<_>>()
    })?;
    let mut totals: BTreeMap<String, Counts> = BTreeMap::new();
    for e in &entries {
        for c in &e.checks {
            totals.entry(c.check.clone()).or_default().add(c.verdict);
        }
    }
    let verdict = entries.iter().fold(Verdict::Pass, |v, e| worst(v, e.verdict));
    Ok(VerifyAllReport {
        strict,
        entries,
        totals,
        verdict,
    })
}

pub fn summary(r: &VerifyAllReport) -> String {
    let mut lines = vec![format!("verify-all: {:?} over {} group/prime entries", r.verdict, r.entries.len())];
    for (name, c) in &r.totals {
        lines.push(format!(
            "  {name}: {} pass, {} fail, {} inconclusive",
            c.pass, c.fail, c.inconclusive
        ));
    }
    lines.join("\n")
}
