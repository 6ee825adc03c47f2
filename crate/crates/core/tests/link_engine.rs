use proptest::prelude::*;
use qtau::laurent::{qint, LaurentHalf};
use qtau::lie::{weight, Limits, RootSystem, Weight};
use qtau::link::*;
use qtau::weyl_sums::quantum_dim;

fn q(e: i64) -> LaurentHalf {
    LaurentHalf::q_pow(2, e)
}

fn poly(terms: &[(i64, i64)]) -> LaurentHalf {
    terms.iter().fold(LaurentHalf::zero(2), |acc, &(e, c)| &acc + &q(e).scale(c))
}

fn braid(strands: usize, word: &[i32], framings: &[i64]) -> BraidLink {
    BraidLink::from_word(strands, word.to_vec(), framings.to_vec()).unwrap()
}

#[test]
fn closed_form_examples() {
    for c in [Chirality::Left, Chirality::Right] {
        assert!(jones_trefoil(1, c).is_one());
    }
    assert!(jones_fig8(1).is_one());
    // Standard Jones polynomials of the trefoil and the figure-eight, times [2].
    let trefoil = &qint(2, 2) * &poly(&[(-1, 1), (-3, 1), (-4, -1)]);
    assert_eq!(jones_trefoil(2, Chirality::Right), trefoil);
    let fig8 = &qint(2, 2) * &poly(&[(2, 1), (1, -1), (0, 1), (-1, -1), (-2, 1)]);
    assert_eq!(jones_fig8(2), fig8);
    for n in 1..=8 {
        assert_eq!(jones_trefoil(n, Chirality::Left), jones_trefoil(n, Chirality::Right).invert_q());
        assert_eq!(jones_fig8(n).invert_q(), jones_fig8(n));
    }
    assert_ne!(jones_trefoil(2, Chirality::Right).invert_q(), jones_trefoil(2, Chirality::Right));
}

#[test]
fn braid_engine_against_closed_forms() {
    let lim = Limits::default();
    let tre = braid(2, &[1, 1, 1], &[0]);
    let mirror = braid(2, &[-1, -1, -1], &[0]);
    let fig8 = braid(3, &[1, -2, 1, -2], &[0]);
    for n in 1..=6 {
        assert_eq!(braid_jones_sl2(&tre, &[n], &lim).unwrap(), jones_trefoil(n, Chirality::Right));
        assert_eq!(braid_jones_sl2(&mirror, &[n], &lim).unwrap(), jones_trefoil(n, Chirality::Left));
        assert_eq!(braid_jones_sl2(&fig8, &[n], &lim).unwrap(), jones_fig8(n));
    }
    let unlink = braid(2, &[], &[0, 0]);
    for (n, m) in [(1, 1), (2, 3), (4, 2)] {
        assert_eq!(braid_jones_sl2(&unlink, &[n, m], &lim).unwrap(), &qint(2, n as i64) * &qint(2, m as i64));
    }
}

#[test]
fn braid_hopf_matches_weyl_sum() {
    let rs = RootSystem::from_label("A1").unwrap();
    let lim = Limits::default();
    let hopf = braid(2, &[1, 1], &[0, 0]);
    for (n, m) in [(1, 2), (2, 2), (3, 2), (2, 4)] {
        let j = braid_jones_sl2(&hopf, &[n, m], &lim).unwrap();
        let dims = &qint(2, n as i64) * &qint(2, m as i64);
        let expect = qint(2, (n * m) as i64);
        assert_eq!(j, expect);
        let q_val = link_q(&rs, &FramedLink::Braid(hopf.clone()), &[weight(&[n as i64]), weight(&[m as i64])]).unwrap();
        assert_eq!(q_val, &expect * &dims);
    }
}

#[test]
fn reversing_orientation() {
    let lim = Limits::default();
    for (s, w, f) in [
        (2usize, vec![1, 1, 1], vec![0]),
        (3, vec![1, -2, 1, -2], vec![0]),
        (2, vec![1, 1], vec![0, 0]),
        (2, vec![1, 1, 1, 1], vec![0, 0]),
        (3, vec![1, 2, 2, 1, -2], vec![-1, 0]),
    ] {
        let b = braid(s, &w, &f);
        let rev: Vec<i32> = w.iter().rev().copied().collect();
        let rb = BraidLink::from_word(s, rev, f.clone()).unwrap();
        let colors: Vec<u32> = (0..f.len()).map(|i| 2 + i as u32).collect();
        let mut rcolors = colors.clone();
        if f.len() == 2 && rb.component_map != b.component_map {
            rcolors.reverse();
        }
        assert_eq!(braid_jones_sl2(&b, &colors, &lim).unwrap(), braid_jones_sl2(&rb, &rcolors, &lim).unwrap());
    }
}

#[test]
fn braid_resource_bound() {
    let lim = Limits { max_braid: 100, ..Limits::default() };
    let b = braid(3, &[1, -2, 1, -2], &[0]);
    assert!(matches!(braid_jones_sl2(&b, &[8], &lim), Err(qtau::Error::Resource(_))));
}

#[test]
fn q_normalization() {
    let a1 = RootSystem::from_label("A1").unwrap();
    let a2 = RootSystem::from_label("A2").unwrap();
    for rs in [&a1, &a2] {
        let mu = &rs.rho + &rs.fundamental(0);
        let ju = quantum_dim(rs, &mu);
        assert_eq!(link_q(rs, &FramedLink::unknot(0), std::slice::from_ref(&mu)).unwrap(), &ju * &ju);
        for wall in [Weight::zero(rs.rank), rs.fundamental(0).scale(rs.rank as i64 - 1)] {
            assert!(link_q(rs, &FramedLink::hopf(0, 0), &[wall, mu.clone()]).unwrap().is_zero());
        }
        let nu = &rs.rho + &rs.fundamental(rs.rank - 1).scale(2);
        let base = link_q(rs, &FramedLink::hopf(0, 0), &[mu.clone(), nu.clone()]).unwrap();
        for w in rs.weyl().unwrap() {
            let moved = link_q(rs, &FramedLink::hopf(0, 0), &[w.apply(&mu), nu.clone()]).unwrap();
            assert_eq!(moved, base);
        }
    }
    let tre = link_q(&a1, &FramedLink::trefoil(0, Chirality::Right), &[weight(&[3])]).unwrap();
    assert_eq!(tre, &jones_trefoil(3, Chirality::Right) * &qint(2, 3));
    assert_eq!(q_normalize(&a1, &[weight(&[3])], &jones_fig8(3)), &jones_fig8(3) * &qint(2, 3));
}

#[test]
fn framing_shifts() {
    let a1 = RootSystem::from_label("A1").unwrap();
    let v = &qint(2, 2) * &qint(2, 3);
    let mu = weight(&[2]);
    assert_eq!(framing_shift(&a1, &v, &mu, 0), v);
    assert_eq!(framing_shift(&a1, &LaurentHalf::one(2), &mu, 1), LaurentHalf::mono(2, 3, 1));
    for (d1, d2) in [(1, 2), (-3, 1), (2, -2)] {
        let two = framing_shift(&a1, &framing_shift(&a1, &v, &mu, d1), &mu, d2);
        assert_eq!(two, framing_shift(&a1, &v, &mu, d1 + d2));
    }
}

#[test]
fn linking_matrices() {
    assert_eq!(FramedLink::unknot(3).linking_matrix(), vec![vec![3]]);
    assert_eq!(FramedLink::hopf(2, -1).linking_matrix(), vec![vec![2, 1], vec![1, -1]]);
    assert_eq!(FramedLink::trefoil(-1, Chirality::Left).linking_matrix(), vec![vec![-1]]);
    let t24 = FramedLink::Braid(braid(2, &[1, 1, 1, 1], &[1, -2]));
    assert_eq!(t24.linking_matrix(), vec![vec![1, 2], vec![2, -2]]);
    let whitehead = FramedLink::Braid(braid(3, &[1, 1, -2, 1, -2], &[0, 0]));
    let lk = whitehead.linking_matrix();
    assert_eq!(lk[0][1], lk[1][0]);
}

#[test]
fn integrality_theorem_for_braids() {
    let a1 = RootSystem::from_label("A1").unwrap();
    let links = [
        braid(2, &[1, 1, 1], &[0]),
        braid(3, &[1, -2, 1, -2], &[0]),
        braid(2, &[1, 1], &[1, -1]),
        braid(2, &[1, 1, 1, 1], &[0, 2]),
        braid(3, &[1, 2, 2, 1, -2], &[-1, 0]),
        braid(3, &[1, 2, 1, 2], &[1]),
    ];
    for b in &links {
        let link = FramedLink::Braid(b.clone());
        let lk = link.linking_matrix();
        let m = link.components();
        for base in 1..=3i64 {
            let colors: Vec<Weight> = (0..m).map(|i| weight(&[base + i as i64])).collect();
            let value = link_q(&a1, &link, &colors).unwrap();
            let p = integrality_exponent_scaled(&a1, &lk, &colors);
            assert!(has_integrality_exponent(&a1, &value, p), "{b:?} {colors:?}");
            if colors.iter().all(|c| a1.in_rho_plus_y(c)) {
                assert!(value.exponents_divisible_by(2 * a1.big_d), "{b:?} {colors:?}");
            }
        }
    }
}

#[test]
fn braid_input_forms() {
    let record = "strands: 3\nword: 1 -2 1 -2\nframings: 0\ncomponent_map: 0 0 0\n";
    let b = BraidLink::parse_record(record).unwrap();
    assert_eq!(b.to_record(), record);
    let without_map = BraidLink::parse_record("strands: 2\nword: 1 1\nframings: 1 -1\n").unwrap();
    assert_eq!(without_map.component_map, vec![0, 1]);
    let from_json: FramedLink = serde_json::from_str(r#"{"braid": "strands: 2\nword: 1 1 1\nframings: -1"}"#).unwrap();
    assert_eq!(from_json, FramedLink::Braid(braid(2, &[1, 1, 1], &[-1])));
    let obj: FramedLink = serde_json::from_str(r#"{"braid": {"strands": 2, "word": [1, 1], "framings": [2, 2]}}"#).unwrap();
    assert_eq!(obj.linking_matrix(), vec![vec![2, 1], vec![1, 2]]);
    let text = serde_json::to_string(&obj).unwrap();
    assert_eq!(serde_json::from_str::<FramedLink>(&text).unwrap(), obj);
    let special: FramedLink = serde_json::from_str(r#"{"special": {"trefoil": {"framing": -1, "chirality": "left"}}}"#).unwrap();
    assert_eq!(special, FramedLink::trefoil(-1, Chirality::Left));
    for bad in [
        "strands: 2\nword: 3\nframings: 0",
        "strands: 2\nword: 1\nframings: 0 0",
        "strands: 2\nword: 1 1\nframings: 0 0\ncomponent_map: 0 0",
        "word: 1\nframings: 0",
        "strands: 2\nword: x\nframings: 0",
    ] {
        assert!(BraidLink::parse_record(bad).is_err(), "{bad}");
    }
    assert!(serde_json::from_str::<FramedLink>(r#"{"braid": {"strands": 2, "word": [1], "framings": [0, 0]}}"#).is_err());
}

fn braid_strategy() -> impl Strategy<Value = BraidLink> {
    (1usize..=4)
        .prop_flat_map(|s| {
            let gen = if s == 1 { Just(vec![]).boxed() } else {
                prop::collection::vec((1..s as i32).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]), 0..8).boxed()
            };
            (Just(s), gen, prop::collection::vec(-3i64..=3, 4))
        })
        .prop_map(|(s, word, fr)| {
            let probe = BraidLink::from_word(s, word.clone(), vec![0; s]).or_else(|_| {
                (1..=s).find_map(|m| BraidLink::from_word(s, word.clone(), vec![0; m]).ok()).ok_or(())
            });
            let m = probe.map(|b| b.components()).unwrap_or(1);
            BraidLink::from_word(s, word, fr[..m].to_vec()).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn braid_record_round_trip(b in braid_strategy()) {
        let text = b.to_record();
        prop_assert_eq!(BraidLink::parse_record(&text).unwrap(), b.clone());
        prop_assert_eq!(BraidLink::parse_record(&text).unwrap().to_record(), text);
        let json = serde_json::to_string(&FramedLink::Braid(b.clone())).unwrap();
        prop_assert_eq!(serde_json::from_str::<FramedLink>(&json).unwrap(), FramedLink::Braid(b.clone()));
        let lk = FramedLink::Braid(b).linking_matrix();
        for i in 0..lk.len() {
            for j in 0..lk.len() {
                prop_assert_eq!(lk[i][j], lk[j][i]);
            }
        }
    }
}
