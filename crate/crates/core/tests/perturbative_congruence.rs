use qtau::lie::RootSystem;
use qtau::link::{Chirality, FramedLink};
use qtau::manifold::ManifoldSpec;
use qtau::perturbative::*;

fn a1() -> RootSystem {
    RootSystem::from_label("A1").unwrap()
}

#[test]
fn lens_series_congruences() {
    let rs = a1();
    for b in [2, 3, -2] {
        let spec = ManifoldSpec::surgery("L", vec![FramedLink::unknot(b)]);
        let s = ohtsuki_lens(&rs, b, 4).unwrap();
        for r in [7, 11, 13] {
            let rep = congruence_report(&s, &spec, &rs, r, 4).unwrap();
            assert!(rep.pass, "b={b} r={r} {rep:?}");
        }
    }
}

#[test]
fn knot_series_congruences() {
    let rs = a1();
    for ch in [Chirality::Left, Chirality::Right] {
        let k = FramedLink::trefoil(-1, ch);
        let spec = ManifoldSpec::surgery("K", vec![k.clone()]);
        let s = ohtsuki_knot_sl2(&k, -1, 4).unwrap();
        assert_eq!(s.coeffs()[0], num_rational::BigRational::from_integer(1.into()));
        for r in [7, 11, 13] {
            let rep = congruence_report(&s, &spec, &rs, r, 4).unwrap();
            assert!(rep.pass, "{ch:?} r={r} {rep:?}");
        }
    }
}

fn big(n: i64) -> num_bigint::BigInt {
    n.into()
}

fn q(n: i64, d: i64) -> num_rational::BigRational {
    num_rational::BigRational::new(big(n), big(d))
}

#[test]
fn general_substitution_matches_sl2_rule() {
    let rs = a1();
    for (k, b) in [
        (FramedLink::trefoil(-1, Chirality::Left), -1),
        (FramedLink::trefoil(1, Chirality::Right), 1),
        (FramedLink::figure_eight(1), 1),
        (FramedLink::figure_eight(-1), -1),
    ] {
        let direct = ohtsuki_knot_sl2(&k, b, 3).unwrap();
        let exp = knot_expansion_sl2(&k, 6).unwrap();
        let general = ohtsuki_knot_general(&rs, &exp, b, 3).unwrap();
        assert_eq!(direct.series, general.series, "{k:?}");
    }
}

#[test]
fn unknot_oracle_reproduces_lens_series() {
    for label in ["A1", "A2", "B2"] {
        let rs = RootSystem::from_label(label).unwrap();
        let exp = unknot_expansion(&rs, 6);
        for b in [1, -1] {
            let s = ohtsuki_knot_general(&rs, &exp, b, 3).unwrap();
            assert_eq!(s.series, HSeries::one(3), "{label} b={b}");
        }
        for b in [2, -2, 3] {
            let s = ohtsuki_diag_link(&rs, &exp, &[b], 3).unwrap();
            assert_eq!(s.series, ohtsuki_lens(&rs, b, 3).unwrap().series, "{label} b={b}");
        }
    }
}

#[test]
fn zero_oracle_gives_zero() {
    let rs = a1();
    let exp = LinkExpansion::zero(1, 1, 6);
    assert_eq!(ohtsuki_knot_general(&rs, &exp, 1, 3).unwrap().series, HSeries::zero(3));
}

#[test]
fn split_union_of_unknots_factorizes() {
    let rs = a1();
    let u = unknot_expansion(&rs, 6);
    let both = LinkExpansion::split_union(&[u.clone(), u]).unwrap();
    let s = ohtsuki_diag_link(&rs, &both, &[2, -3], 3).unwrap();
    let prod = ohtsuki_lens(&rs, 2, 3).unwrap().series.mul(&ohtsuki_lens(&rs, -3, 3).unwrap().series);
    assert_eq!(s.series, prod);
    let spec = ManifoldSpec::surgery("L2uL-3", vec![FramedLink::unknot(2), FramedLink::unknot(-3)]);
    for r in [7, 11] {
        assert!(congruence_check(&s, &spec, &rs, r, 3).unwrap(), "r={r}");
    }
}

#[test]
fn composition_recovers_factor() {
    let rs = a1();
    let k = FramedLink::trefoil(-1, Chirality::Left);
    let t_m = ohtsuki_knot_sl2(&k, -1, 4).unwrap();
    let lens = ohtsuki_lens(&rs, 2, 4).unwrap();
    let m_prime = OhtsukiSeries { series: t_m.series.mul(&lens.series), provenance: SeriesProvenance::Composition };
    assert_eq!(compose_series(&m_prime, std::slice::from_ref(&lens)).unwrap().series, t_m.series);
    assert_eq!(compose_series(&t_m, &[]).unwrap().series, t_m.series);
    assert_eq!(compose_series(&lens, std::slice::from_ref(&lens)).unwrap().series, HSeries::one(4));
}

#[test]
fn lens_b1_is_sphere_and_b2_first_coefficient() {
    let rs = a1();
    assert_eq!(ohtsuki_lens(&rs, 1, 5).unwrap().series, HSeries::one(5));
    // q^(-1/4) (1 - q^(-1/2)) / (1 - q^(-1)) at q = e^hbar, expanded by hand: 1/2 - hbar^2/64 + ...
    let s = ohtsuki_lens(&rs, 2, 3).unwrap();
    assert_eq!(s.coeffs()[..3], [q(1, 2), q(0, 1), q(-1, 64)]);
}

#[test]
fn knot_expansions_obey_degree_bounds() {
    for k in [FramedLink::trefoil(0, Chirality::Right), FramedLink::figure_eight(0)] {
        let exp = knot_expansion_sl2(&k, 6).unwrap();
        for (n, p) in exp.terms.iter().enumerate() {
            for e in p.keys() {
                assert!(e[0] as usize <= n + 2 && e[0] % 2 == 0, "{k:?} n={n} N^{}", e[0]);
            }
        }
    }
}

#[test]
fn prime_expand_examples() {
    let r = 5u64;
    let field = qtau::cyclo::CycField::new(r, 1).unwrap();
    let one = prime_expand(&qtau::cyclo::CycNum::one(&field), 3).unwrap();
    assert_eq!(one.coeffs_mod_r, vec![1, 0, 0, 0]);
    let xi = prime_expand(&qtau::cyclo::CycNum::zeta_pow(&field, 1), 3).unwrap();
    // 1/n! mod 5 for n = 0..3: 1, 1, 3, 1
    assert_eq!(xi.coeffs_mod_r, vec![1, 1, 3, 1]);
    let f = vec![big(3), big(-1), big(4), big(0), big(2)];
    let g: Vec<_> = f.iter().map(|c| c + big(7)).collect();
    assert_eq!(
        prime_expand_poly(&f, r, 3).unwrap().coeffs_mod_r,
        prime_expand_poly(&g, r, 3).unwrap().coeffs_mod_r
    );
}
