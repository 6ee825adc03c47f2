use num_bigint::BigInt;
use proptest::prelude::*;
use qtau::cyclo::{integrality_witness, valuation_at_xi_minus_1, CycNum};
use qtau::lie::{DomainKind, LatticeDomain, RootSystem, Weight};
use qtau::link::{units_mod, Chirality, FramedLink};
use qtau::manifold::*;
use qtau::perturbative::{prime_expand, prime_expand_poly};

fn rs(label: &str) -> RootSystem {
    RootSystem::from_label(label).unwrap()
}

fn knot_for(kind: u8, b: i64) -> FramedLink {
    match kind {
        0 => FramedLink::unknot(b),
        1 => FramedLink::trefoil(b.signum(), Chirality::Left),
        2 => FramedLink::trefoil(b.signum(), Chirality::Right),
        _ => FramedLink::figure_eight(b.signum()),
    }
}

fn spec_strategy() -> impl Strategy<Value = (u8, ManifoldSpec)> {
    let b = prop_oneof![Just(-3i64), Just(-2), Just(-1), Just(1), Just(2), Just(3)];
    let piece = (0u8..4, b.clone(), b.clone(), b, any::<bool>()).prop_map(|(kind, b1, b2, b3, hopf)| {
        if hopf {
            (0u8, FramedLink::hopf(b1, b2 + b3))
        } else {
            (kind, knot_for(kind, b1))
        }
    });
    prop::collection::vec(piece, 1..=2).prop_map(|parts| {
        let needs_sl2 = parts.iter().any(|(k, _)| *k > 0) as u8;
        let mut spec = ManifoldSpec::surgery("random", vec![parts[0].1.clone()]);
        for (_, l) in &parts[1..] {
            spec.connected_sum.push(ManifoldSpec::surgery("piece", vec![l.clone()]));
        }
        (needs_sl2, spec)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn projective_tau_is_integral((needs_sl2, spec) in spec_strategy(), pick in 0usize..6) {
        let grid: &[(&str, i64)] = if needs_sl2 == 1 {
            &[("A1", 5), ("A1", 7), ("A1", 11), ("A1", 5), ("A1", 7), ("A1", 11)]
        } else {
            &[("A1", 5), ("A1", 7), ("A2", 5), ("A2", 7), ("B2", 7), ("G2", 13)]
        };
        let (label, r) = grid[pick];
        let g = rs(label);
        let res = tau(&spec, &g, r, 1, Flavor::Projective).unwrap();
        prop_assert!(res.defined);
        prop_assert!(integrality_witness(&res.value).integral, "{} r={} {:?}", label, r, spec);
    }

    #[test]
    fn signature_is_a_congruence_invariant(
        entries in prop::collection::vec(-4i64..=4, 6),
        ops in prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..6),
    ) {
        let m = 3;
        let mut a = vec![vec![0i64; m]; m];
        let mut k = 0;
        for i in 0..m {
            for j in i..m {
                a[i][j] = entries[k];
                a[j][i] = entries[k];
                k += 1;
            }
        }
        let base = signature(&a);
        prop_assert_eq!(base.sigma_plus + base.sigma_minus + base.sigma_zero, m);
        let mut b = a.clone();
        for (i, j, c) in ops {
            if i == j {
                continue;
            }
            // row_i += c row_j, then col_i += c col_j
            for t in 0..m {
                b[i][t] += c * b[j][t];
            }
            for t in 0..m {
                b[t][i] += c * b[t][j];
            }
        }
        prop_assert_eq!(signature(&b), base);
        prop_assert_eq!(det(&b), det(&a));
        let neg: Vec<Vec<i64>> = a.iter().map(|row| row.iter().map(|x| -x).collect()).collect();
        let s = signature(&neg);
        prop_assert_eq!((s.sigma_plus, s.sigma_minus, s.sigma_zero), (base.sigma_minus, base.sigma_plus, base.sigma_zero));
    }

    #[test]
    fn prime_expansion_ignores_representative(
        r in prop_oneof![Just(5u64), Just(7), Just(11)],
        f in prop::collection::vec(-5i64..=5, 1..12),
        shift in -3i64..=3,
        lift in 0usize..3,
    ) {
        let order = (r - 2) as usize;
        let f_big: Vec<BigInt> = f.iter().map(|&c| BigInt::from(c)).collect();
        let base = prime_expand_poly(&f_big, r, order).unwrap();
        let mut g = f_big.clone();
        g.resize(g.len().max(r as usize * (lift + 1)), BigInt::from(0));
        for k in 0..r as usize {
            g[k + lift * r as usize] += BigInt::from(shift);
        }
        prop_assert_eq!(&prime_expand_poly(&g, r, order).unwrap().coeffs_mod_r, &base.coeffs_mod_r);
        let mut h = f_big;
        h.resize(h.len() + r as usize + 1, BigInt::from(0));
        h[0] -= BigInt::from(shift);
        h[r as usize] += BigInt::from(shift);
        prop_assert_eq!(&prime_expand_poly(&h, r, order).unwrap().coeffs_mod_r, &base.coeffs_mod_r);
    }
}

#[test]
fn prime_expansion_is_galois_consistent() {
    let a1 = rs("A1");
    let a2 = rs("A2");
    let specs = [
        (&a1, ManifoldSpec::surgery("poincare", vec![FramedLink::trefoil(-1, Chirality::Left)])),
        (&a1, ManifoldSpec::surgery("L(2,1)", vec![FramedLink::unknot(2)])),
        (&a2, ManifoldSpec::surgery("L(3,1)", vec![FramedLink::unknot(3)])),
    ];
    for (g, spec) in specs {
        for r in [7i64, 11] {
            let base = prime_expand(&tau(&spec, g, r, 1, Flavor::Projective).unwrap().value, 4).unwrap();
            for a in units_mod(r) {
                let v = tau(&spec, g, r, a, Flavor::Projective).unwrap().value;
                assert_eq!(prime_expand(&v, 4).unwrap().coeffs_mod_r, base.coeffs_mod_r, "{} r={r} a={a}", spec.name);
            }
        }
    }
}

fn monomial_sum(g: &RootSystem, r: i64, m: usize, exps: &[u32]) -> BigInt {
    let pts = LatticeDomain::new(g, r).unwrap().enumerate(DomainKind::RhoPrY).unwrap();
    let mut tuples: Vec<Vec<Weight>> = vec![vec![]];
    for _ in 0..m {
        tuples = tuples
            .into_iter()
            .flat_map(|t| pts.iter().map(move |p| { let mut u = t.clone(); u.push(p.clone()); u }))
            .collect();
    }
    let mut acc = BigInt::from(0);
    for t in tuples {
        let coords: Vec<i64> = t.iter().flat_map(|w| w.coords().to_vec()).collect();
        let mut v = BigInt::from(1);
        for (c, e) in coords.iter().zip(exps) {
            v *= BigInt::from(*c).pow(*e);
        }
        acc += v;
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn monomial_sums_are_divisible(pick in 0usize..4, m in 1usize..=2, exps in prop::collection::vec(0u32..=5, 4)) {
        let (label, r) = [("A1", 5i64), ("A1", 7), ("A2", 5), ("B2", 5)][pick];
        let g = rs(label);
        let l = g.rank;
        let exps = &exps[..l * m];
        let x = monomial_sum(&g, r, m, exps);
        let deg: i64 = exps.iter().map(|&e| e as i64).sum();
        let need = (l * m) as i64 * (r - 1) / 2 - deg / 2;
        let field = projective_field(r, 1).unwrap();
        match valuation_at_xi_minus_1(&CycNum::from_rational(&field, x.clone().into())).unwrap() {
            None => {}
            Some(v) => prop_assert!(v as i64 >= need, "{} m={} exps={:?} x={} v={} need={}", label, m, exps, x, v, need),
        }
    }
}

#[test]
fn unknot_normalizations_vanish_as_predicted() {
    let plus = FramedLink::unknot(1);
    let minus = FramedLink::unknot(-1);
    for (label, r, zero) in [
        ("C2", 7, true),
        ("C2", 9, true),
        ("C3", 9, true),
        ("B2", 7, true),
        ("C2", 6, false),
        ("C2", 8, false),
        ("B2", 8, false),
        ("C3", 8, false),
        ("G2", 12, false),
        ("G2", 13, false),
        ("A2", 5, false),
        ("B3", 11, false),
    ] {
        let g = rs(label);
        let units = units_mod(2 * g.big_d * r);
        for a in [units[0], *units.last().unwrap()] {
            for u in [&plus, &minus] {
                let v = f_sum(&g, r, a, u, Flavor::Full).unwrap();
                assert_eq!(v.is_zero(), zero, "{label} r={r} a={a}");
            }
        }
    }
}

#[test]
fn projective_normalizations_never_vanish() {
    for (label, rs_list) in [("A1", vec![5i64, 7, 9, 11]), ("A2", vec![4, 5, 7, 8]), ("B2", vec![7, 9]), ("G2", vec![12, 13])] {
        let g = rs(label);
        for r in rs_list {
            if num_integer::Integer::gcd(&r, &g.det_cartan) != 1 {
                continue;
            }
            for b in [1i64, -1] {
                let v = f_sum(&g, r, 1, &FramedLink::unknot(b), Flavor::Projective).unwrap();
                assert!(!v.is_zero(), "{label} r={r} b={b}");
            }
        }
    }
}
