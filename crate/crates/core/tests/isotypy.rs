mod common;

use blockcert::isotypy::{
    self, prepare, recheck, verify, verify_isotypy, IsotypyOptions, Verdict,
};
use blockcert::session::{Session, SessionOptions};
use blockcert::Cyclotomic;

fn session(name: &str, p: u64) -> Session {
    Session::new(common::load(name), p, SessionOptions::default()).unwrap()
}

fn primes(n: usize) -> Vec<u64> {
    (2..=n as u64)
        .filter(|&p| n as u64 % p == 0 && (2..p).all(|d| p % d != 0))
        .collect()
}

fn omega_block(s: &Session) -> usize {
    let t = &s.table;
    let g = &s.group;
    let x = (0..g.order()).find(|&x| g.element_order(x) == 3).unwrap();
    let chi = (0..t.len())
        .find(|&i| t.value_at(i, x) == &Cyclotomic::zeta(3, 1))
        .unwrap();
    s.system.block_of[chi]
}

#[test]
fn c6_omega_block_at_two() {
    let s = session("C6", 2);
    let b = omega_block(&s);
    let cert = verify_isotypy(&s, b, 1, IsotypyOptions::default()).unwrap();
    assert_eq!(cert.verdict, Verdict::Pass, "{:?}", cert.witness);
    assert_ne!(cert.target_block, b);
    assert_eq!(cert.defect_group.len(), 2);
    assert!(cert.signs_positive);
    assert!(cert.cyclic.iter().all(|c| c.isometry.all_signs_positive()));
    assert_eq!(cert.fusion.status, "equal");
    assert!(cert.cyclic.iter().any(|c| !c.squares.is_empty()));
}

#[test]
fn ih_period_divides_orbit() {
    let s = session("C6", 2);
    assert_eq!(isotypy::ih_period(&s.table, 2), 2);
    let s = session("C7xC3", 3);
    assert_eq!(isotypy::ih_period(&s.table, 3) % 3, 0);
}

#[test]
fn corpus_blocks_are_isotypic_to_conjugates() {
    for name in common::CORPUS {
        let g = common::load(name);
        for p in primes(g.order()) {
            let s = Session::new(g.clone(), p, SessionOptions::default()).unwrap();
            for b in 0..s.system.len() {
                let len = s.system.orbit_length(b) as u64;
                for n in 1..=len {
                    for strict in [false, true] {
                        let opts = IsotypyOptions { strict, all_maximal_pairs: false };
                        let cert = verify_isotypy(&s, b, n, opts).unwrap();
                        assert_eq!(
                            cert.verdict,
                            Verdict::Pass,
                            "{name} p={p} b={b} n={n} strict={strict}: {:?}",
                            cert.witness
                        );
                        assert!(cert.signs_positive);
                    }
                }
            }
        }
    }
}

#[test]
fn every_maximal_pair_gives_the_same_answer() {
    for (name, p) in [("S4", 2), ("A4", 2), ("SL23", 2), ("C5xC4", 2)] {
        let s = session(name, p);
        for b in 0..s.system.len() {
            let opts = IsotypyOptions { strict: false, all_maximal_pairs: true };
            let cert = verify_isotypy(&s, b, 1, opts).unwrap();
            assert_eq!(cert.verdict, Verdict::Pass, "{name} b={b}");
            assert!(cert.alternative_maximal_pairs.iter().all(|(_, v)| *v == Verdict::Pass));
        }
    }
}

#[test]
fn perturbed_e_q_coefficient_fails() {
    let s = session("C6", 2);
    let b = omega_block(&s);
    let mut inputs = prepare(&s, b, 1, false).unwrap();
    let qi = inputs.cyclic.iter_mut().find(|q| q.q.order() == 2).unwrap();
    let k = qi.e_coeffs.iter().position(|c| !c.is_zero()).unwrap();
    qi.e_coeffs[k] = &qi.e_coeffs[k] + &Cyclotomic::one(1);
    let cert = verify(&s, &inputs).unwrap();
    assert_eq!(cert.verdict, Verdict::Fail);
    assert_eq!(cert.verdict.exit_code(), 1);
    assert_eq!(cert.witness.unwrap().check, "commuting square");
}

#[test]
fn flipped_sign_fails() {
    let s = session("C6", 2);
    let b = omega_block(&s);
    let mut inputs = prepare(&s, b, 1, false).unwrap();
    inputs.global.signs[0] = -1;
    let cert = verify(&s, &inputs).unwrap();
    assert_eq!(cert.verdict, Verdict::Fail);
    assert_eq!(cert.witness.unwrap().check, "global isometry");

    let mut inputs = prepare(&s, b, 1, false).unwrap();
    let qi = inputs.cyclic.iter_mut().find(|q| q.q.order() == 2).unwrap();
    qi.isometry.signs[0] = -1;
    let cert = verify(&s, &inputs).unwrap();
    assert_eq!(cert.verdict, Verdict::Fail);
    assert_eq!(cert.witness.unwrap().check, "isometry");
}

#[test]
fn altered_mu_fails() {
    let s = session("S3", 3);
    let mut inputs = prepare(&s, 0, 1, false).unwrap();
    let qi = inputs.cyclic.iter_mut().find(|q| q.q.order() == 3).unwrap();
    qi.mu.values[0][0] = &qi.mu.values[0][0] + &Cyclotomic::one(1);
    let cert = verify(&s, &inputs).unwrap();
    assert_eq!(cert.verdict, Verdict::Fail);
    let w = cert.witness.unwrap();
    assert_eq!(w.check, "mu");
    assert!(w.detail.contains("mu(0, 0)"));
}

#[test]
fn recheck_round_trip() {
    let s = session("D10", 5);
    let cert = verify_isotypy(&s, 0, 1, IsotypyOptions::default()).unwrap();
    let json = serde_json::to_string(&cert).unwrap();
    let back: isotypy::IsotypyCertificate = serde_json::from_str(&json).unwrap();
    let report = recheck(&s, &back).unwrap();
    assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.mismatches);

    let mut forged = back.clone();
    let c = forged.cyclic.iter_mut().find(|c| !c.perfect_isometry.is_empty()).unwrap();
    c.perfect_isometry[0].mu = &c.perfect_isometry[0].mu + &Cyclotomic::one(1);
    let report = recheck(&s, &forged).unwrap();
    assert_eq!(report.verdict, Verdict::Fail);
    assert!(!report.mismatches.is_empty());
}
