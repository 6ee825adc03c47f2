//! The verify suites and their default grids.

use qtau::cyclo::integrality_witness;
use qtau::lie::{DomainKind, LatticeDomain, LieType, RootSystem, Weight};
use qtau::link::{symmetry1_check, symmetry2_check, units_mod, BraidLink, Chirality, FramedLink};
use qtau::manifold::*;
use qtau::perturbative::{congruence_report, series_for_spec};
use qtau::weyl_sums::gauss_full;
use qtau::{Error, Result};

use crate::record::CaseOutcome;
use crate::{JobConfig, Suite};

const SYMMETRY_SAMPLES: usize = 20;

fn case(name: impl Into<String>, res: Result<bool>) -> Result<CaseOutcome> {
    let case = name.into();
    match res {
        Ok(pass) => Ok(CaseOutcome { case, pass, detail: None }),
        Err(e @ (Error::BadInput(_) | Error::Resource(_))) => Err(e),
        Err(e) => Ok(CaseOutcome { case, pass: false, detail: Some(e.to_string()) }),
    }
}

fn lens(b: i64) -> ManifoldSpec {
    ManifoldSpec::surgery(&format!("U{b}"), vec![FramedLink::unknot(b)])
}

fn hopf(b1: i64, b2: i64) -> ManifoldSpec {
    ManifoldSpec::surgery(&format!("Hopf({b1},{b2})"), vec![FramedLink::hopf(b1, b2)])
}

/// Default manifold grid; knots other than the unknot only for sl2.
fn spec_grid(rs: &RootSystem) -> Vec<ManifoldSpec> {
    let mut sum = lens(2);
    sum.connected_sum.push(lens(-3));
    sum.name = "U2 # U-3".into();
    let mut grid = vec![ManifoldSpec::sphere(), lens(3), lens(-2), hopf(2, 2), hopf(1, -3), sum];
    if rs.rank == 1 {
        grid.push(ManifoldSpec::surgery("Poincare sphere", vec![FramedLink::trefoil(-1, Chirality::Left)]));
        grid.push(ManifoldSpec::surgery("FigureEight(1)", vec![FramedLink::figure_eight(1)]));
    }
    grid
}

fn specs(cfg: &JobConfig) -> Vec<ManifoldSpec> {
    match &cfg.spec {
        Some(s) => vec![s.clone()],
        None => spec_grid(&cfg.rs),
    }
}

fn exponents(cfg: &JobConfig, r: i64) -> Vec<u64> {
    match cfg.zeta_exponent {
        Some(a) => vec![a],
        None => units_mod(2 * cfg.rs.big_d * r),
    }
}

fn symmetry_links(cfg: &JobConfig) -> Vec<(String, FramedLink)> {
    if let Some(s) = &cfg.spec {
        return s.links().into_iter().enumerate().map(|(i, l)| (format!("{} link {i}", s.name), l.clone())).collect();
    }
    let mut out = vec![("Hopf(1,-2)".to_string(), FramedLink::hopf(1, -2))];
    if cfg.rs.rank == 1 {
        out.push(("Trefoil(right,0)".into(), FramedLink::trefoil(0, Chirality::Right)));
        out.push(("Trefoil(left,-1)".into(), FramedLink::trefoil(-1, Chirality::Left)));
    }
    out
}

fn tuples<T: Clone>(pool: &[T], m: usize) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|t| {
                pool.iter().map(move |p| {
                    let mut u = t.clone();
                    u.push(p.clone());
                    u
                })
            })
            .collect();
    }
    out
}

fn symmetry(cfg: &JobConfig, second: bool) -> Result<Vec<CaseOutcome>> {
    let r = cfg.need_r()?;
    let rs = &cfg.rs;
    let pts: Vec<Weight> = LatticeDomain::new(rs, r)?.enumerate(DomainKind::ClosedAlcoveX)?;
    let mut out = vec![];
    for (name, link) in symmetry_links(cfg) {
        let all = tuples(&pts, link.components());
        if all.len() as u64 > cfg.limits.max_enumeration {
            return Err(Error::Resource(format!("{} colorings exceed max_enumeration", all.len())));
        }
        let mut res = Ok(true);
        for (k, colors) in all.iter().enumerate() {
            let step = if second {
                tuples(&rs.center, colors.len())
                    .iter()
                    .try_fold(true, |acc, gs| Ok(acc && symmetry2_check(rs, r, &link, colors, gs)?))
            } else {
                symmetry1_check(rs, r, &link, colors, SYMMETRY_SAMPLES, k as u64)
            };
            res = res.and_then(|acc| step.map(|ok| acc && ok));
            if !matches!(res, Ok(true)) {
                break;
            }
        }
        out.push(case(format!("{name}, {} colorings", all.len()), res)?);
    }
    Ok(out)
}

fn gauss_vanishing_expected(rs: &RootSystem, r: i64) -> bool {
    r % 2 == 1 && (rs.lie_type == LieType::C || (rs.lie_type == LieType::B && rs.rank.is_multiple_of(2)))
}

pub fn run_suite(suite: Suite, cfg: &JobConfig) -> Result<Vec<CaseOutcome>> {
    let rs = &cfg.rs;
    match suite {
        Suite::Symmetry1 => symmetry(cfg, false),
        Suite::Symmetry2 => symmetry(cfg, true),
        Suite::Splitting => {
            let r = cfg.need_r()?;
            let mut out = vec![];
            for spec in specs(cfg) {
                for a in exponents(cfg, r) {
                    out.push(case(format!("{} a={a}", spec.name), splitting_check(&spec, rs, r, a))?);
                }
            }
            Ok(out)
        }
        Suite::Integrality => {
            let r = cfg.need_r()?;
            let a = cfg.zeta_exponent.unwrap_or(1);
            let mut out = vec![];
            for spec in specs(cfg) {
                for &f in &cfg.flavors {
                    let res = tau(&spec, rs, r, a, f).map(|t| integrality_witness(&t.value).integral);
                    out.push(case(format!("{} {f}", spec.name), res)?);
                }
            }
            Ok(out)
        }
        Suite::Smatrix => {
            let r = cfg.need_r()?;
            Ok(vec![case(format!("{} r={r}", rs.label()), s_matrix_check(rs, r))?])
        }
        Suite::Kirby => {
            let r = cfg.need_r()?;
            let flavors = if cfg.flavor_given { cfg.flavors.clone() } else { vec![Flavor::Full, Flavor::Projective, Flavor::Center] };
            let mut out = vec![];
            let pairs = {
                let mut p = vec![(hopf(2, 2), lens(-3)), (hopf(1, -2), lens(-3))];
                if rs.rank == 1 {
                    for (framing, chir, sign) in [(1, Chirality::Right, 1), (-1, Chirality::Left, -1), (-1, Chirality::Right, 1)] {
                        let special = ManifoldSpec::surgery(&format!("Trefoil({chir:?},{framing})"), vec![FramedLink::trefoil(framing, chir)]);
                        let braid = BraidLink::from_word(2, vec![sign; 3], vec![framing])?;
                        p.push((special, ManifoldSpec::surgery("braid", vec![FramedLink::Braid(braid)])));
                    }
                }
                p
            };
            for (x, y) in &pairs {
                for &f in &flavors {
                    for a in exponents(cfg, r).into_iter().take(2) {
                        out.push(case(format!("{} vs {} {f} a={a}", x.name, y.name), kirby_equivalence_check(x, y, rs, r, a, f))?);
                    }
                }
            }
            Ok(out)
        }
        Suite::GaussVanish => {
            let r = cfg.need_r()?;
            let a = cfg.zeta_exponent.unwrap_or(1);
            let expected = gauss_vanishing_expected(rs, r);
            let value = gauss_full(rs, r, &full_field(rs, r, a)?)?.value;
            let word = |z: bool| if z { "vanishes" } else { "nonzero" };
            Ok(vec![CaseOutcome {
                case: format!("{} r={r}", rs.label()),
                pass: value.is_zero() == expected,
                detail: Some(format!("expected {}, computed {}", word(expected), word(value.is_zero()))),
            }])
        }
        Suite::Congruence => {
            let spec = cfg.need_spec()?;
            let order = cfg.order.unwrap_or(4);
            let primes = if cfg.primes.is_empty() { vec![7, 11, 13] } else { cfg.primes.clone() };
            let series = series_for_spec(rs, spec, order)?;
            let mut out = vec![];
            for p in primes {
                let res = congruence_report(&series, spec, rs, p, order).map(|rep| rep.pass);
                out.push(case(format!("{} r={p} n<={order}", spec.name), res)?);
            }
            Ok(out)
        }
    }
}
