use gt_core::json::{from_str, to_pretty};
use gt_core::kv::{kv_solve, KvMode, KvProblem, KvReport, KvStatus};
use gt_core::loops::{sigma_hat_gr, turaev_cobracket_gr};
use gt_core::parse::{parse_cyclic, parse_series};
use gt_core::random::{random_cyclic, rng};
use gt_core::{BiCyclic, CyclicSeries, FramingData, Series, Signature, TAut, TDer, TriCyclic, Q};

#[test]
fn series_document_layout() {
    let sig = Signature::new(1, 0).unwrap();
    let s = parse_series(sig, 6, "1/2 x1 y1").unwrap();
    let v: serde_json::Value = serde_json::to_value(&s).unwrap();
    let expect = serde_json::json!({
        "signature": {"g": 1, "n": 0},
        "valid_degree": 6,
        "terms": [{"word": ["x1", "y1"], "coeff": "1/2"}]
    });
    assert_eq!(v, expect);
    assert_eq!(from_str::<Series>(&expect.to_string()).unwrap(), s);
}

#[test]
fn cyclic_and_tensor_documents_round_trip() {
    let sig = Signature::new(1, 2).unwrap();
    let f = FramingData::new(sig, vec![0, 2], vec![1], vec![-1]).unwrap();
    let mut r = rng(9);
    for _ in 0..5 {
        let p = random_cyclic(sig, 6, 1..=5, 4, &mut r);
        let text = to_pretty(&p);
        assert_eq!(from_str::<CyclicSeries>(&text).unwrap(), p);
        assert_eq!(to_pretty(&from_str::<CyclicSeries>(&text).unwrap()), text);
        let d = turaev_cobracket_gr(&p, &f).unwrap();
        assert_eq!(from_str::<BiCyclic>(&to_pretty(&d)).unwrap(), d);
    }
    let t = p3(sig);
    assert_eq!(from_str::<TriCyclic>(&to_pretty(&t)).unwrap(), t);
}

fn p3(sig: Signature) -> TriCyclic {
    let a = parse_cyclic(sig, 4, "|x1| + 2|z1 z2|").unwrap();
    let b = parse_cyclic(sig, 4, "|y1 x1|").unwrap();
    let ab = a.tensor(&b);
    let mut t = TriCyclic::zero(sig, 4);
    for ((u, v), c) in ab.iter() {
        t.add_term((u.clone(), v.clone(), gt_core::CyclicWord::unit()), c.clone());
    }
    t
}

#[test]
fn rejects_inconsistent_documents() {
    let bad = [
        r#"{"signature":{"g":0,"n":0},"valid_degree":2,"terms":[]}"#,
        r#"{"signature":{"g":1,"n":0},"valid_degree":2,"terms":[{"word":["x2"],"coeff":"1"}]}"#,
        r#"{"signature":{"g":1,"n":0},"valid_degree":1,"terms":[{"word":["x1","y1"],"coeff":"1"}]}"#,
        r#"{"signature":{"g":1,"n":0},"valid_degree":2,"terms":[{"word":["x1"],"coeff":"1/0"}]}"#,
        r#"{"signature":{"g":1,"n":0},"valid_degree":2,"terms":[{"word":["x1"]}]}"#,
    ];
    for b in bad {
        assert!(from_str::<Series>(b).is_err(), "{b}");
    }
}

#[test]
fn derivation_and_automorphism_tables_round_trip() {
    let sig = Signature::new(1, 2).unwrap();
    let p = parse_cyclic(sig, 6, "|x1 y1 z1| - 1/3|z2 x1 x1|").unwrap();
    let u: TDer = sigma_hat_gr(&p).unwrap();
    let text = to_pretty(&u);
    let back: TDer = from_str(&text).unwrap();
    assert_eq!(back.sym, u.sym);
    assert_eq!(back.tangential, u.tangential);
    let f = gt_core::tangential::exp(&u).unwrap();
    let back: TAut = from_str(&to_pretty(&f)).unwrap();
    assert_eq!(back, f);
    // a table with a missing generator is refused
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["images"].as_array_mut().unwrap().pop();
    assert!(from_str::<TDer>(&v.to_string()).is_err());
}

#[test]
fn kv_reports_round_trip() {
    let sig = Signature::new(0, 2).unwrap();
    let problem = KvProblem::new(sig, FramingData::adapted(sig), 4).unwrap();
    let report = kv_solve(&problem, KvMode::Full, None).unwrap();
    let text = to_pretty(&report);
    let back: KvReport = from_str(&text).unwrap();
    assert_eq!(to_pretty(&back), text);
    assert_eq!(back.twist, report.twist);
    let KvStatus::Solved { duflo: Some(d) } = back.status else { panic!() };
    assert_eq!(d.h[2], Q::new(-1, 48));

    let sig = Signature::new(1, 0).unwrap();
    let framing = FramingData::new(sig, vec![], vec![1], vec![0]).unwrap();
    let problem = KvProblem::new(sig, framing, 3).unwrap();
    let report = kv_solve(&problem, KvMode::Full, None).unwrap();
    let text = to_pretty(&report);
    assert!(text.contains("\"status\": \"obstructed\""));
    let back: KvReport = from_str(&text).unwrap();
    assert_eq!(to_pretty(&back), text);
}
