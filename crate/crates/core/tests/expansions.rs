use gt_core::cyclic::trace;
use gt_core::expansions::{theta_exp_eval, weight, Expansion, FreeGroupWord, GroupRingElement};
use gt_core::kv::{kv_solve, KvMode, KvProblem};
use gt_core::loops::{cyclic_words_of_degree, turaev_cobracket_gr};
use gt_core::random::{random_cyclic, rng};
use gt_core::{CyclicSeries, CyclicWord, FramingData, GtError, Signature, Word, Q};

fn special(sig: Signature, framing: &FramingData, degree: usize, mode: KvMode, seed: Option<u64>) -> Expansion {
    let problem = KvProblem::new(sig, framing.clone(), degree).unwrap();
    let report = kv_solve(&problem, mode, seed).unwrap();
    Expansion::new(report.twist.unwrap())
}

fn word(sig: Signature, s: &str) -> FreeGroupWord {
    FreeGroupWord::parse(&sig, s).unwrap()
}

#[test]
fn exponential_expansion_is_multiplicative() {
    let sig = Signature::new(1, 2).unwrap();
    let a = word(sig, "a1 c1 B1");
    let b = word(sig, "C2 b1 b1");
    let lhs = theta_exp_eval(sig, &a.mul(&b), 6);
    let rhs = theta_exp_eval(sig, &a, 6).mul(&theta_exp_eval(sig, &b, 6)).truncated(6);
    assert_eq!(lhs, rhs);
    let inv = theta_exp_eval(sig, &a.inverse(), 6);
    assert!((&theta_exp_eval(sig, &a, 6).mul(&inv).truncated(6) - &gt_core::Series::one(sig, 6)).is_zero());
}

#[test]
fn group_words_format_round_trip() {
    let sig = Signature::new(2, 1).unwrap();
    for s in ["a1 b2 A2", "c1 C1", "B1 B1 a2 c1"] {
        let w = word(sig, s);
        assert_eq!(word(sig, &w.format(&sig)), w);
    }
    assert!(word(sig, "c1 C1").is_identity());
    assert_eq!(word(sig, "a1").pow(-2), word(sig, "A1 A1"));
}

#[test]
fn weight_filtration_on_group_ring() {
    let sig = Signature::new(1, 1).unwrap();
    let one = GroupRingElement::one();
    let a = GroupRingElement::from(word(sig, "a1")).sub(&one);
    let b = GroupRingElement::from(word(sig, "b1")).sub(&one);
    let c = GroupRingElement::from(word(sig, "c1")).sub(&one);
    assert_eq!(weight(sig, &a.mul(&b)), Ok(2));
    assert_eq!(weight(sig, &c.mul(&c)), Ok(4));
    // a commutator minus one lies one step deeper than the product of its letters suggests
    let comm = GroupRingElement::from(word(sig, "a1 b1 A1 B1")).sub(&one);
    assert_eq!(weight(sig, &comm), Ok(2));
    assert_eq!(weight(sig, &one.sub(&one)), Err(GtError::ZeroElement));
}

#[test]
fn exponential_expansion_is_not_special_in_general() {
    let sig = Signature::new(1, 1).unwrap();
    let e = Expansion::exponential(sig, 6);
    assert!(e.is_special(2));
    assert!(!e.is_special(4));
    let p = CyclicSeries::cyclic(sig, 6, &[0, 1]);
    assert_eq!(e.twisted_cobracket(&p, &FramingData::adapted(sig)), Err(GtError::NotSpecial(6)));
}

#[test]
fn twisted_cobracket_matches_its_shortcut_form() {
    let sig = Signature::new(1, 1).unwrap();
    let framing = FramingData::new(sig, vec![2], vec![1], vec![-1]).unwrap();
    let e = special(sig, &framing, 4, KvMode::KviOnly, Some(5));
    let mut r = rng(40);
    for _ in 0..4 {
        let p = random_cyclic(sig, 6, 2..=4, 3, &mut r);
        let direct = e.twisted_cobracket(&p, &framing).unwrap();
        let shortcut = e.twisted_cobracket_shortcut(&p, &framing).unwrap();
        assert_eq!(direct, shortcut.truncated(direct.valid_degree()));
    }
}

#[test]
fn kv_solutions_recover_the_graded_cobracket() {
    let sig = Signature::new(0, 3).unwrap();
    let framing = FramingData::adapted(sig);
    let a = special(sig, &framing, 4, KvMode::Full, Some(1));
    let b = special(sig, &framing, 4, KvMode::Full, Some(2));
    assert_ne!(a.twist, b.twist);
    for d in [2, 4] {
        for w in cyclic_words_of_degree(&sig, d) {
            let p = CyclicSeries::from_terms(sig, 6, [(w, Q::one())]);
            let x = a.twisted_cobracket(&p, &framing).unwrap();
            let y = b.twisted_cobracket(&p, &framing).unwrap();
            assert_eq!(x, y);
            assert_eq!(x, turaev_cobracket_gr(&p, &framing).unwrap().truncated(x.valid_degree()));
        }
    }
}

#[test]
fn powers_of_a_boundary_loop() {
    let sig = Signature::new(0, 2).unwrap();
    for rot in [-1, 0, 2] {
        let framing = FramingData::new(sig, vec![rot, 0], vec![], vec![]).unwrap();
        let e = special(sig, &framing, 6, KvMode::Full, None);
        for m in 1..=3 {
            let got = e.loop_cobracket(&word(sig, "c1").pow(m), &framing, 6).unwrap();
            let mut ez = CyclicSeries::unit(sig, 6);
            let mut c = Q::one();
            for k in 1..=3 {
                c = &c * &Q::new(m, k);
                ez.add_term(CyclicWord::new(&vec![sig.z(1); k as usize]), c.clone());
            }
            let expect = CyclicSeries::unit(sig, 6).wedge(&ez).scale(&Q::from_int(m * rot));
            assert_eq!(got, expect.truncated(6), "rot {rot} m {m}");
        }
    }
}

#[test]
fn loop_bracket_sees_intersections() {
    let sig = Signature::new(1, 1).unwrap();
    let e = special(sig, &FramingData::adapted(sig), 5, KvMode::KviOnly, Some(3));
    // α and β meet once
    let br = e.loop_bracket(&word(sig, "a1"), &word(sig, "b1"), 5).unwrap();
    assert_eq!(br, trace(&e.eval(&word(sig, "a1 b1"), 5)));
    // boundary-parallel loops can be pushed off everything
    let w = word(sig, "a1 b1 b1 A1");
    assert!(e.loop_bracket(&word(sig, "c1"), &w, 5).unwrap().is_zero());
    assert!(e.loop_bracket(&FreeGroupWord::gamma0(sig), &w, 5).unwrap().is_zero());
}

#[test]
fn loop_log_of_a_boundary_loop_is_the_generator() {
    let sig = Signature::new(0, 3).unwrap();
    let e = special(sig, &FramingData::adapted(sig), 4, KvMode::Full, None);
    let l = e.loop_log(&word(sig, "c2"), 6);
    assert_eq!(l, CyclicSeries::cyclic(sig, 6, &[sig.z(2)]));
    let empty: Word = Word::new();
    assert_eq!(e.eval(&FreeGroupWord::identity(), 6).coeff(&empty), Q::one());
}
