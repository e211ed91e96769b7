use thinloop::ffield::Field;
use thinloop::grading::params_from_mu3;
use thinloop::reproduce::{eps_zero, finite, mixed, sigma_zero, Reproduction};
use thinloop::thinloop::*;

fn finite_run(p: u32, n2: u32, which: usize) -> Reproduction {
    let f = Field::new(p, 2, None).unwrap();
    let mu3 = f.elements().filter(|&a| !f.in_prime_field(a)).nth(which).unwrap();
    finite(&f, n2, &params_from_mu3(&f, mu3).unwrap()).unwrap()
}

#[test]
fn mixed_runs_match_prediction() {
    for (p, n1, n2) in [(3, 1, 1), (5, 1, 1), (3, 1, 2)] {
        let r = mixed(p, n1, n2).unwrap();
        let rep = r.run(r.default_depth()).unwrap();
        assert!(r.compare(&rep).is_empty(), "{}: {:?}", r.title, r.compare(&rep));
        assert!(rep.covering.passed() && rep.coincidence);
        // at least two periods of the grading
        assert!(rep.covering.checked >= 2 * r.degmap.modulus as usize);
        let q = r.q;
        for rec in &rep.scan.records {
            assert_eq!((rec.degree - 1) % (q - 1), 0);
        }
    }
}

#[test]
fn mixed_dims_p3() {
    let r = mixed(3, 1, 1).unwrap();
    let rep = r.run(18).unwrap();
    let dims: Vec<usize> = rep.dims;
    assert_eq!(dims, (1..=18).map(|d| if d % 2 == 1 { 2 } else { 1 }).collect::<Vec<_>>());
}

#[test]
fn finite_runs_certificate_and_chains() {
    for (p, n2) in [(5u32, 1u32), (3, 2), (7, 1)] {
        let r = finite_run(p, n2, 0);
        let rep = r.run(r.default_depth()).unwrap();
        assert!(r.compare(&rep).is_empty(), "{}", r.title);
        let c = &rep.generators.certificate;
        assert!(c.vxx.is_zero() && c.vyy.is_zero());
        assert!(!c.vxy.is_zero() && !c.vyx.is_zero());
        assert_eq!(rep.chains.first, ChainStatus::Pass);
        if p == 7 {
            assert_eq!(rep.chains.second, ChainStatus::Pass);
        }
        let k = rep.k.as_ref().unwrap();
        assert_eq!((k.k, k.dim_at_k), (r.q, 2));
    }
}

#[test]
fn second_diamond_is_at_q() {
    let r = finite_run(5, 1, 3);
    let rep = r.run(r.default_depth()).unwrap();
    let second = rep.record(2).unwrap();
    assert_eq!(second.degree, 5);
    assert!(matches!(second.kind, DiamondKind::Genuine(Some(_))));
}

#[test]
fn characteristic_two_k() {
    let r = mixed(2, 1, 2).unwrap();
    let rep = r.run(r.default_depth()).unwrap();
    let k = rep.k.unwrap();
    assert_eq!((k.k, k.dim_at_k), (4, 1));
    assert!(rep.notes.iter().any(|n| n.contains("characteristic 2")));
}

#[test]
fn q_three_needs_declared_generators() {
    let r = mixed(3, 1, 1).unwrap();
    let exp = loop_expand(&r.table, &r.degmap, 12).unwrap();
    assert!(matches!(choose_generators(&exp, 3, None), Err(ThinError::NoAnnihilator(_))));
    let g = choose_generators(&exp, 3, Some(&r.hint)).unwrap();
    assert!(matches!(g.certificate.y_source, YSource::Declared));
}

#[test]
fn expansion_errors() {
    let r = mixed(3, 1, 1).unwrap();
    assert!(matches!(loop_expand(&r.table, &r.degmap, 1), Err(ThinError::InsufficientDepth(2))));
    let mut short = r.degmap.clone();
    short.degrees.pop();
    assert!(matches!(loop_expand(&r.table, &short, 10), Err(ThinError::DegreeMapMismatch)));
    let exp = loop_expand(&r.table, &r.degmap, 3).unwrap();
    assert!(matches!(choose_generators(&exp, 3, Some(&r.hint)), Err(ThinError::InsufficientDepth(4))));
    let mut bad = r.hint.clone();
    bad.y = bad.x.clone();
    let exp = loop_expand(&r.table, &r.degmap, 12).unwrap();
    assert!(matches!(choose_generators(&exp, 3, Some(&bad)), Err(ThinError::BadHint)));
}

#[test]
fn sigma_zero_is_constant() {
    for p in [3, 5] {
        let r = sigma_zero(p, 1).unwrap();
        let rep = r.run(r.default_depth()).unwrap();
        assert!(r.compare(&rep).is_empty());
        let f = r.field();
        for rec in rep.scan.records.iter().skip(1) {
            assert_eq!(rec.kind, DiamondKind::Genuine(Some(DiamondType::Finite(f.int(-1)))));
        }
    }
}

#[test]
fn eps_zero_fakes_where_progression_vanishes() {
    for p in [3u32, 5] {
        for ratio in 1..p as i64 - 1 {
            let e = eps_zero(p, 1, ratio).unwrap();
            assert_eq!(e.center.dim(), 1);
            let r = &e.reproduction;
            let rep = r.run(r.default_depth()).unwrap();
            assert!(r.compare(&rep).is_empty(), "{}: {:?}", r.title, r.compare(&rep));
            let f = r.field();
            for rec in rep.scan.records.iter().skip(1) {
                let mu = f.add(f.int(-1), f.mul(f.int(rec.ordinal as i64 - 2), f.int(ratio)));
                let fake = matches!(rec.kind, DiamondKind::Fake0 | DiamondKind::Fake1);
                assert_eq!(fake, mu.is_zero() || mu == f.one(), "{} ordinal {}", r.title, rec.ordinal);
            }
        }
    }
}

#[test]
fn report_json_schema() {
    let r = finite_run(3, 1, 0);
    let rep = r.run(12).unwrap();
    let j = rep.to_json(r.field());
    for key in ["dims", "diamonds", "k", "covering", "chains", "generators", "coincidence"] {
        assert!(j.get(key).is_some(), "missing {key}");
    }
    let d = &j["diamonds"][1];
    assert_eq!(d["degree"], 3);
    assert_eq!(d["ordinal"], 2);
    assert_eq!(d["kind"], "genuine");
}
