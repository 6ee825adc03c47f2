//! Quantum dimensions, psi, Hopf-link entries and quadratic Gauss sums.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclo::{mod_inverse, CycField, CycNum, PowerSum};
use crate::error::{Error, Result};
use crate::laurent::LaurentHalf;
use crate::lie::{DomainKind, LatticeDomain, RootSystem, Weight};

/// Exponent (in 1/(2D) units) of q^((mu|nu)).
pub fn q_inner_exp(rs: &RootSystem, mu: &Weight, nu: &Weight) -> i64 {
    2 * rs.inner_scaled(mu, nu)
}

/// Product of (q^(x/2) - q^(-x/2)) over positive roots, with x = (mu|alpha).
pub fn weyl_denominator_at(rs: &RootSystem, mu: &Weight) -> LaurentHalf {
    let d = rs.big_d;
    let mut acc = LaurentHalf::one(d);
    for a in &rs.positive_roots {
        let x = rs.pair_root(mu, a);
        let f = &LaurentHalf::mono(d, d * x, 1) - &LaurentHalf::mono(d, -d * x, 1);
        acc = &acc * &f;
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// psi as the product over positive roots.
pub fn psi(rs: &RootSystem) -> LaurentHalf {
    weyl_denominator_at(rs, &rs.rho)
}

/// psi as the alternating sum over W.
pub fn psi_weyl(rs: &RootSystem) -> Result<LaurentHalf> {
    weyl_numerator(rs, &rs.rho, &rs.rho)
}

/// psi as q^(-|rho|^2) times the product of (q^((alpha|rho)) - 1).
pub fn psi_shifted(rs: &RootSystem) -> LaurentHalf {
    let d = rs.big_d;
    let mut acc = LaurentHalf::mono(d, -2 * rs.norm_scaled(&rs.rho), 1);
    for a in &rs.positive_roots {
        let x = rs.pair_root(&rs.rho, a);
        acc = &acc * &(&LaurentHalf::mono(d, 2 * d * x, 1) - &LaurentHalf::one(d));
    }
    acc
}

/// Sum over w of sn(w) q^((mu|w(lambda))).
pub fn weyl_numerator(rs: &RootSystem, mu: &Weight, lambda: &Weight) -> Result<LaurentHalf> {
    let d = rs.big_d;
    let mut terms: Vec<(i64, i64)> = rs
        .weyl()?
        .iter()
        .map(|w| (q_inner_exp(rs, mu, &w.apply(lambda)), w.sign as i64))
        .collect();
    terms.sort_unstable();
    let mut merged: Vec<(i64, i64)> = Vec::new();
    for (e, c) in terms {
        match merged.last_mut() {
            Some((le, lc)) if *le == e => *lc += c,
            _ => merged.push((e, c)),
        }
    }
    let lo = merged.first().map(|t| t.0).unwrap_or(0);
    let hi = merged.last().map(|t| t.0).unwrap_or(0);
    let mut dense = vec![0i64; (hi - lo + 1) as usize];
    for (e, c) in merged {
        dense[(e - lo) as usize] = c;
    }
    let mut acc = LaurentHalf::zero(d);
    for (k, &c) in dense.iter().enumerate() {
        if c != 0 {
            acc = &acc + &LaurentHalf::mono(d, lo + k as i64, c);
        }
    }
    Ok(acc)
}

/// Quantum dimension J_U(mu) from the product formula.
pub fn quantum_dim(rs: &RootSystem, mu: &Weight) -> LaurentHalf {
    weyl_denominator_at(rs, mu)
        .div_exact(&psi(rs))
        .expect("quantum dimension is a Laurent polynomial")
}

/// Quantum dimension from the alternating Weyl sum.
pub fn quantum_dim_weyl(rs: &RootSystem, mu: &Weight) -> Result<LaurentHalf> {
    let num = weyl_numerator(rs, mu, &rs.rho)?;
    num.div_exact(&psi(rs))
        .ok_or_else(|| Error::check("Weyl numerator not divisible by psi"))
}

/// Hopf-link entry J_H(mu, lambda).
pub fn hopf_entry(rs: &RootSystem, mu: &Weight, lambda: &Weight) -> Result<LaurentHalf> {
    let num = weyl_numerator(rs, mu, lambda)?;
    num.div_exact(&psi(rs))
        .ok_or_else(|| Error::check(format!("Hopf numerator for {mu},{lambda} not divisible by psi")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GaussKind {
    Full,
    Projective,
    Twisted,
    Center,
}

#[derive(Debug, Clone)]
pub struct GaussData {
    pub kind: GaussKind,
    pub value: CycNum,
    pub r: i64,
    pub b: i64,
}

fn check_field(field: &Arc<CycField>, m: i64) -> Result<()> {
    if field.m as i64 != m {
        return Err(Error::bad(format!("expected a field of order {m}, got {}", field.m)));
    }
    Ok(())
}

/// Full Gauss sum over P_r in X, in Q(zeta_2Dr).
pub fn gauss_full(rs: &RootSystem, r: i64, field: &Arc<CycField>) -> Result<GaussData> {
    let m = 2 * rs.big_d * r;
    check_field(field, m)?;
    let dom = LatticeDomain::new(rs, r)?;
    let nr = rs.norm_scaled(&rs.rho);
    let mut ps = PowerSum::zero(m as usize);
    for mu in dom.enumerate(DomainKind::PrX)? {
        ps.add_mono(rs.norm_scaled(&mu) - nr, 1);
    }
    Ok(GaussData { kind: GaussKind::Full, value: ps.to_cyc(field), r, b: 1 })
}

/// Exponent of xi in xi^(b(|mu|^2 - |rho|^2)/2), for mu in rho + Y.
fn proj_exponent(rs: &RootSystem, mu: &Weight, b: i64) -> i64 {
    let diff = rs.norm_scaled(mu) - rs.norm_scaled(&rs.rho);
    let two_d = 2 * rs.big_d;
    debug_assert_eq!(diff % two_d, 0);
    b * (diff / two_d)
}

/// Twisted projective Gauss sum over rho + (P_r in Y), in Q(xi_r).
pub fn gauss_proj(rs: &RootSystem, r: i64, b: i64, field: &Arc<CycField>) -> Result<GaussData> {
    check_field(field, r)?;
    let dom = LatticeDomain::new(rs, r)?;
    let mut ps = PowerSum::zero(r as usize);
    for mu in dom.enumerate(DomainKind::RhoPrY)? {
        ps.add_mono(proj_exponent(rs, &mu, b), 1);
    }
    let kind = if b == 1 { GaussKind::Projective } else { GaussKind::Twisted };
    Ok(GaussData { kind, value: ps.to_cyc(field), r, b })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompletionLattice {
    X,
    Y,
}

/// Verify the completing-the-square identity by evaluating both sides.
pub fn completion_identity_check(
    rs: &RootSystem,
    r: i64,
    beta: &Weight,
    b: i64,
    lattice: CompletionLattice,
    a: u64,
) -> Result<bool> {
    let dom = LatticeDomain::new(rs, r)?;
    let d = rs.big_d;
    match lattice {
        CompletionLattice::X => {
            if b != 1 && b != -1 {
                return Err(Error::bad("the X-version needs b = +1 or -1"));
            }
            let m = 2 * d * r;
            let field = CycField::new(m as u64, a)?;
            let nr = rs.norm_scaled(&rs.rho);
            let mut lhs = PowerSum::zero(m as usize);
            for mu in dom.enumerate(DomainKind::PrX)? {
                lhs.add_mono(b * (rs.norm_scaled(&mu) - nr) + 2 * rs.inner_scaled(beta, &mu), 1);
            }
            let gamma = if b == 1 {
                gauss_full(rs, r, &field)?.value
            } else {
                let mut g = PowerSum::zero(m as usize);
                for mu in dom.enumerate(DomainKind::PrX)? {
                    g.add_mono(nr - rs.norm_scaled(&mu), 1);
                }
                g.to_cyc(&field)
            };
            let rhs = &gamma * &CycNum::zeta_pow(&field, -b * rs.norm_scaled(beta));
            Ok(lhs.to_cyc(&field) == rhs)
        }
        CompletionLattice::Y => {
            if !rs.in_root_lattice(beta) {
                return Err(Error::bad(format!("{beta} is not in the root lattice")));
            }
            let bstar = mod_inverse(b, r).ok_or_else(|| Error::bad(format!("gcd({b},{r}) != 1")))?;
            let field = CycField::new(r as u64, a)?;
            let mut lhs = PowerSum::zero(r as usize);
            for mu in dom.enumerate(DomainKind::RhoPrY)? {
                let lin = rs.inner_scaled(beta, &mu);
                debug_assert_eq!(lin % d, 0);
                lhs.add_mono(proj_exponent(rs, &mu, b) + lin / d, 1);
            }
            let nb = rs.norm_scaled(beta);
            debug_assert_eq!(nb % (2 * d), 0);
            let gamma = gauss_proj(rs, r, b, &field)?.value;
            let rhs = &gamma * &CycNum::zeta_pow(&field, -bstar * (nb / (2 * d)));
            Ok(lhs.to_cyc(&field) == rhs)
        }
    }
}

/// Center Gauss sum: sum over g in G of xi^(+-r(r-h)(g|g)/2), in Q(zeta_2Dr).
pub fn gauss_center(rs: &RootSystem, r: i64, sign: i64, field: &Arc<CycField>) -> Result<GaussData> {
    let m = 2 * rs.big_d * r;
    check_field(field, m)?;
    let mut ps = PowerSum::zero(m as usize);
    for g in &rs.center {
        ps.add_mono(sign.signum() * r * (r - rs.h) * rs.norm_scaled(&g.lift), 1);
    }
    Ok(GaussData { kind: GaussKind::Center, value: ps.to_cyc(field), r, b: sign.signum() })
}

/// Evaluate the Hopf-entry sum against Gauss data: returns (lhs, rhs) of
/// sum_{mu in P_r cap X} q^((|mu|^2-|rho|^2)/2) J_U(mu) J_H(lambda,mu)
///   = (-1)^s |W| gamma q^(-(|rho|^2+|lambda|^2)/2) J_U(lambda) / psi
/// at q^(1/2D) = zeta.
pub fn smatrix_sum_sides(rs: &RootSystem, r: i64, lambda: &Weight, a: u64) -> Result<(CycNum, CycNum)> {
    let d = rs.big_d;
    let m = 2 * d * r;
    let field = CycField::new(m as u64, a)?;
    let dom = LatticeDomain::new(rs, r)?;
    let nr = rs.norm_scaled(&rs.rho);
    let mut lhs = PowerSum::zero(m as usize);
    for mu in dom.enumerate(DomainKind::PrX)? {
        let ju = quantum_dim(rs, &mu);
        if ju.is_zero() {
            continue;
        }
        let jh = hopf_entry(rs, lambda, &mu)?;
        let t = (&ju * &jh).to_powersum(m as usize).shift(rs.norm_scaled(&mu) - nr);
        lhs.add_assign(&t);
    }
    let gamma = gauss_full(rs, r, &field)?.value;
    let sign = if rs.s.is_multiple_of(2) { 1 } else { -1 };
    let w = rs.weyl_len()?;
    let psi_v = psi(rs).evaluate(&field);
    let ju = quantum_dim(rs, lambda).evaluate(&field);
    let pre = CycNum::zeta_pow(&field, -(nr + rs.norm_scaled(lambda)));
    let rhs = (&(&gamma * &pre) * &ju).div(&psi_v)?.scale(&num_rational::BigRational::from_integer(
        num_bigint::BigInt::from(sign * w),
    ));
    Ok((lhs.to_cyc(&field), rhs))
}
