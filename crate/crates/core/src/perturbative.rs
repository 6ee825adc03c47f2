//! Perturbative expansion of the projective invariant: per-prime coefficients,
//! Ohtsuki series from closed forms and Gaussian substitution, and the
//! Legendre-twisted congruences between them.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::{is_prime, mod_inverse, CycNum};
use crate::error::{Error, Result};
use crate::laurent::LaurentHalf;
use crate::lie::{RootSystem, Weight};
use crate::link::{link_j0, FramedLink, SpecialLink};
use crate::manifold::{legendre, signature, tau, Flavor, ManifoldSpec};
use crate::weyl_sums::quantum_dim;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

fn double_factorial_odd(j: u64) -> BigInt {
    // (2j-1)!!
    (1..=j).fold(BigInt::one(), |a, k| a * BigInt::from(2 * k - 1))
}

/// Truncated power series in hbar with rational coefficients c_0..c_N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HSeries {
    pub coeffs: Vec<BigRational>,
}

impl HSeries {
    pub fn zero(order: usize) -> Self {
        HSeries { coeffs: vec![BigRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// exp(t hbar).
    pub fn exp_linear(t: &BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        let mut term = BigRational::one();
        for (n, c) in s.coeffs.iter_mut().enumerate() {
            if n > 0 {
                term = term * t / rat(n as i64);
            }
            *c = term.clone();
        }
        s
    }

    /// (1 - exp(t hbar)) / hbar.
    pub fn one_minus_exp_over_h(t: &BigRational, order: usize) -> Self {
        let e = Self::exp_linear(t, order + 1);
        HSeries { coeffs: e.coeffs[1..].iter().map(|c| -c).collect() }
    }

    /// Expansion of a Laurent polynomial in q^(1/2D) at q = e^hbar.
    pub fn from_laurent(p: &LaurentHalf, order: usize) -> Self {
        HSeries { coeffs: p.hbar_expansion(order) }
    }

    pub fn add(&self, o: &HSeries) -> HSeries {
        HSeries { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, k: &BigRational) -> HSeries {
        HSeries { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn mul(&self, o: &HSeries) -> HSeries {
        let n = self.order().min(o.order());
        let mut out = Self::zero(n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                out.coeffs[i + j] += &self.coeffs[i] * &o.coeffs[j];
            }
        }
        out
    }

    pub fn inv(&self) -> Result<HSeries> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::bad("series with zero constant term is not invertible"));
        }
        let n = self.order();
        let mut out = Self::zero(n);
        out.coeffs[0] = c0.recip();
        for k in 1..=n {
            let mut s = BigRational::zero();
            for i in 1..=k {
                s += &self.coeffs[i] * &out.coeffs[k - i];
            }
            out.coeffs[k] = -s / c0;
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesProvenance {
    LensClosedForm,
    Sl2Knot,
    GeneralKnot,
    DiagonalLink,
    Composition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OhtsukiSeries {
    pub series: HSeries,
    pub provenance: SeriesProvenance,
}

impl OhtsukiSeries {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.series.coeffs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeExpansion {
    pub r: u64,
    pub coeffs_mod_r: Vec<u64>,
    pub representative_degree: usize,
}

fn rational_mod(c: &BigRational, r: u64) -> Result<u64> {
    let rb = BigInt::from(r);
    let den = c.denom().mod_floor(&rb);
    if den.is_zero() {
        return Err(Error::check(format!("denominator of {c} is divisible by {r}")));
    }
    let inv = mod_inverse(den.to_i64().unwrap(), r as i64).expect("unit modulo a prime");
    let num = c.numer().mod_floor(&rb).to_i64().unwrap();
    Ok(((num as i128 * inv as i128).rem_euclid(r as i128)) as u64)
}

/// Residues of the hbar-coefficients of f(e^hbar) modulo r, for f in Z[q].
pub fn prime_expand_poly(f: &[BigInt], r: u64, order: usize) -> Result<PrimeExpansion> {
    if !is_prime(r) || r < 3 {
        return Err(Error::bad(format!("r={r} must be an odd prime")));
    }
    if order as u64 + 1 >= r {
        return Err(Error::bad(format!("truncation {order} must be below r-1={}", r - 1)));
    }
    let mut out = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut s = BigInt::zero();
        for (k, c) in f.iter().enumerate() {
            if !c.is_zero() {
                s += c * BigInt::from(k).pow(n as u32);
            }
        }
        out.push(rational_mod(&BigRational::new(s, factorial(n as u64)), r)?);
    }
    let deg = f.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    Ok(PrimeExpansion { r, coeffs_mod_r: out, representative_degree: deg })
}

/// c_{r,n} mod r for an element of Z[xi], xi a primitive r-th root.
pub fn prime_expand(value: &CycNum, order: usize) -> Result<PrimeExpansion> {
    let r = value.field.m;
    let coeffs = value
        .integer_coeffs()
        .ok_or_else(|| Error::bad("prime expansion needs an element of Z[xi]"))?;
    // the power basis is in x with xi = x^a, so x = xi^(a*)
    let astar = mod_inverse(value.field.a as i64, r as i64).expect("a is a unit") as usize;
    let mut f = vec![BigInt::zero(); r as usize];
    for (k, c) in coeffs.into_iter().enumerate() {
        f[(k * astar) % r as usize] += c;
    }
    prime_expand_poly(&f, r, order)
}

// ---------------------------------------------------------------------------
// Multivariate polynomials in the coordinates y = ((alpha_i|mu_j)).

pub type MPoly = BTreeMap<Vec<u32>, BigRational>;

fn mpoly_add_term(p: &mut MPoly, e: Vec<u32>, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let slot = p.entry(e.clone()).or_insert_with(BigRational::zero);
    *slot += c;
    if slot.is_zero() {
        p.remove(&e);
    }
}

fn mpoly_mul(a: &MPoly, b: &MPoly) -> MPoly {
    let mut out = MPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_insert_with(BigRational::zero);
            *slot += ca * cb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Q_{L^0}(mu_1..mu_m) at q = e^hbar: terms[n] is the hbar^n coefficient as a
/// polynomial in the m*rank variables y_(j*rank+i) = (alpha_i|mu_j).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkExpansion {
    pub rank: usize,
    pub components: usize,
    pub terms: Vec<MPoly>,
}

impl LinkExpansion {
    pub fn order(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    fn nvars(&self) -> usize {
        self.rank * self.components
    }

    pub fn zero(rank: usize, components: usize, order: usize) -> Self {
        LinkExpansion { rank, components, terms: vec![MPoly::new(); order + 1] }
    }

    /// Series-with-polynomial-coefficients product of expansions in disjoint variables.
    pub fn split_union(parts: &[LinkExpansion]) -> Result<LinkExpansion> {
        let rank = parts.first().map(|p| p.rank).unwrap_or(1);
        if parts.iter().any(|p| p.rank != rank) {
            return Err(Error::bad("mixed ranks in a split union"));
        }
        let comps: usize = parts.iter().map(|p| p.components).sum();
        let order = parts.iter().map(|p| p.order()).min().unwrap_or(0);
        let total = rank * comps;
        let mut acc = LinkExpansion::zero(rank, comps, order);
        acc.terms[0].insert(vec![0; total], BigRational::one());
        let mut off = 0;
        for p in parts {
            let lifted: Vec<MPoly> = p.terms[..=order]
                .iter()
                .map(|t| {
                    t.iter()
                        .map(|(e, c)| {
                            let mut full = vec![0; total];
                            full[off..off + e.len()].copy_from_slice(e);
                            (full, c.clone())
                        })
                        .collect()
                })
                .collect();
            let mut next = LinkExpansion::zero(rank, comps, order);
            for i in 0..=order {
                for j in 0..=order - i {
                    for (e, c) in mpoly_mul(&acc.terms[i], &lifted[j]) {
                        mpoly_add_term(&mut next.terms[i + j], e, c);
                    }
                }
            }
            acc = next;
            off += p.nvars();
        }
        Ok(acc)
    }
}

/// (alpha_i|alpha_k) as rationals.
fn simple_gram(rs: &RootSystem) -> Vec<Vec<BigRational>> {
    (0..rs.rank)
        .map(|i| {
            (0..rs.rank)
                .map(|k| BigRational::new(BigInt::from(rs.root_form[i][k]), BigInt::one()))
                .collect()
        })
        .collect()
}

/// Expansion of Q_{U^0}(mu) = J_U(mu)^2 to the given hbar order.
pub fn unknot_expansion(rs: &RootSystem, order: usize) -> LinkExpansion {
    let l = rs.rank;
    let mut acc = LinkExpansion::zero(l, 1, order);
    acc.terms[0].insert(vec![0; l], BigRational::one());
    for al in &rs.positive_roots {
        // sinh(x hbar/2) / sinh(c hbar/2) with x = (alpha|mu) = sum_i coeff_i y_i, c = (alpha|rho)
        let c = rat(rs.pair_root(&rs.rho, al));
        // numerator series in x: sum_k (x/2)^(2k+1) hbar^(2k) / (2k+1)!, divided by c/2 times the same in c
        let mut den = HSeries::zero(order);
        for k in 0..=order / 2 {
            let half = &c / rat(2);
            den.coeffs[2 * k] = num_traits::pow(half.clone(), 2 * k) / BigRational::from_integer(factorial(2 * k as u64 + 1));
        }
        let den_inv = den.inv().expect("constant term 1");
        let two_over_c = rat(2) / &c;
        let mut factor = LinkExpansion::zero(l, 1, order);
        for k in 0..=order / 2 {
            // (x/2)^(2k+1) * (2/c) / (2k+1)!
            let mut xp: MPoly = MPoly::new();
            xp.insert(vec![0; l], BigRational::one());
            let mut lin = MPoly::new();
            for i in 0..l {
                if al.coeffs[i] != 0 {
                    let mut e = vec![0; l];
                    e[i] = 1;
                    lin.insert(e, BigRational::new(BigInt::from(al.coeffs[i]), BigInt::from(2)));
                }
            }
            for _ in 0..2 * k + 1 {
                xp = mpoly_mul(&xp, &lin);
            }
            let scale = &two_over_c / BigRational::from_integer(factorial(2 * k as u64 + 1));
            factor.terms[2 * k] = xp.into_iter().map(|(e, v)| (e, v * &scale)).collect();
        }
        // divide by the c-series
        let mut divided = LinkExpansion::zero(l, 1, order);
        for i in 0..=order {
            for j in 0..=order - i {
                if den_inv.coeffs[j].is_zero() {
                    continue;
                }
                for (e, v) in &factor.terms[i] {
                    mpoly_add_term(&mut divided.terms[i + j], e.clone(), v * &den_inv.coeffs[j]);
                }
            }
        }
        // squared
        for _ in 0..2 {
            let mut next = LinkExpansion::zero(l, 1, order);
            for i in 0..=order {
                for j in 0..=order - i {
                    for (e, v) in mpoly_mul(&acc.terms[i], &divided.terms[j]) {
                        mpoly_add_term(&mut next.terms[i + j], e, v);
                    }
                }
            }
            acc = next;
        }
    }
    acc
}

fn solve_vandermonde(xs: &[i64], ys: &[BigRational]) -> Vec<BigRational> {
    // Newton divided differences, then expand to monomial coefficients
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / rat(xs[i] - xs[i - j]);
        }
    }
    let mut poly = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        // poly = poly * (x - xs[k]) + dd[k]
        let mut next = vec![BigRational::zero(); n];
        for d in (0..n).rev() {
            if poly[d].is_zero() {
                continue;
            }
            if d + 1 < n {
                next[d + 1] += &poly[d];
            }
            next[d] -= &poly[d] * rat(xs[k]);
        }
        next[0] += &dd[k];
        poly = next;
    }
    poly
}

/// Q_{K^0}(N) of an sl2 knot at q = e^hbar, interpolated in N for each hbar order.
pub fn knot_expansion_sl2(knot: &FramedLink, order: usize) -> Result<LinkExpansion> {
    if knot.components() != 1 {
        return Err(Error::bad("a knot presentation is required"));
    }
    let rs = RootSystem::from_label("A1")?;
    let zero_framed = knot.with_framings(&[0])?;
    let top = 2 * order + 2;
    // degree <= 2n + 2 needs 2n + 3 points; one extra point audits the bound
    let ns: Vec<i64> = (2..=(top as i64 + 3)).collect();
    let mut values: Vec<Vec<BigRational>> = Vec::with_capacity(ns.len());
    for &n in &ns {
        let mu = Weight(vec![n]);
        let q = &link_j0(&rs, &zero_framed, std::slice::from_ref(&mu))? * &quantum_dim(&rs, &mu);
        values.push(q.hbar_expansion(order));
    }
    let mut out = LinkExpansion::zero(1, 1, order);
    for n in 0..=order {
        let deg = 2 * n + 2;
        let pts = deg + 1;
        let ys: Vec<BigRational> = values[..pts].iter().map(|v| v[n].clone()).collect();
        let poly = solve_vandermonde(&ns[..pts], &ys);
        // audit with the spare point
        let x = ns[pts];
        let mut val = BigRational::zero();
        for c in poly.iter().rev() {
            val = val * rat(x) + c;
        }
        if val != values[pts][n] {
            return Err(Error::check(format!("hbar^{n} coefficient exceeds N-degree {deg}")));
        }
        for (j, c) in poly.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j % 2 == 1 {
                return Err(Error::check(format!("odd power N^{j} at hbar^{n}")));
            }
            if j > n + 2 {
                return Err(Error::check(format!("N^{j} at hbar^{n} violates the framing-0 bound")));
            }
            out.terms[n].insert(vec![j as u32], c);
        }
    }
    Ok(out)
}

/// z_b = (1/|W|) q^(|rho|^2 (sn b - b)/2) prod (1 - q^(sn b (alpha|rho))) at q = e^hbar,
/// returned as hbar^s times the series (the product vanishes to order s).
fn z_b(rs: &RootSystem, b: i64, order: usize) -> Result<HSeries> {
    let sn = b.signum();
    let rho2 = rs.inner(&rs.rho, &rs.rho);
    let rho2 = BigRational::new(BigInt::from(*rho2.numer()), BigInt::from(*rho2.denom()));
    let mut acc = HSeries::exp_linear(&(rho2 * rat(sn - b) / rat(2)), order);
    for al in &rs.positive_roots {
        let x = rat(sn * rs.pair_root(&rs.rho, al));
        acc = acc.mul(&HSeries::one_minus_exp_over_h(&x, order));
    }
    let w = rs.weyl_order;
    Ok(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(w))))
}

/// Gaussian moments E[y^e] with covariance `cov` (before the hbar^-1 factors).
struct Wick {
    cov: Vec<Vec<BigRational>>,
    memo: HashMap<Vec<u32>, BigRational>,
}

impl Wick {
    fn moment(&mut self, e: &[u32]) -> BigRational {
        let total: u32 = e.iter().sum();
        if total % 2 == 1 {
            return BigRational::zero();
        }
        if total == 0 {
            return BigRational::one();
        }
        if let Some(v) = self.memo.get(e) {
            return v.clone();
        }
        let a = e.iter().position(|&x| x > 0).unwrap();
        let mut rest = e.to_vec();
        rest[a] -= 1;
        let mut acc = BigRational::zero();
        for b in 0..e.len() {
            if rest[b] == 0 || self.cov[a][b].is_zero() {
                continue;
            }
            let mut f = rest.clone();
            f[b] -= 1;
            let m = self.moment(&f);
            acc += &self.cov[a][b] * rat(rest[b] as i64) * m;
        }
        self.memo.insert(e.to_vec(), acc.clone());
        acc
    }
}

/// Replace polynomial parts by Gaussian moments for diagonal framings b_j, multiply by the z_b.
fn gaussian_substitute(
    rs: &RootSystem,
    exp: &LinkExpansion,
    framings: &[i64],
    order: usize,
) -> Result<HSeries> {
    let l = rs.rank;
    let m = exp.components;
    if framings.len() != m || exp.rank != l {
        return Err(Error::bad("expansion and framings do not match"));
    }
    if framings.contains(&0) {
        return Err(Error::bad("framings must be nonzero"));
    }
    let s = rs.s;
    if exp.order() < 2 * order {
        return Err(Error::bad(format!("expansion to hbar^{} is needed", 2 * order)));
    }
    let gram = simple_gram(rs);
    let n = l * m;
    let mut cov = vec![vec![BigRational::zero(); n]; n];
    for (j, &b) in framings.iter().enumerate() {
        for i in 0..l {
            for k in 0..l {
                cov[j * l + i][j * l + k] = -&gram[i][k] / rat(b);
            }
        }
    }
    let mut wick = Wick { cov, memo: HashMap::new() };
    // Laurent series in hbar, lowest power -s*m
    let low = (s * m) as i64;
    let mut lau: BTreeMap<i64, BigRational> = BTreeMap::new();
    for (nn, poly) in exp.terms.iter().enumerate().take(2 * order + 1) {
        for (e, c) in poly {
            let deg: u32 = e.iter().sum();
            if deg as usize > nn + 2 * s * m {
                return Err(Error::check(format!("degree {deg} at hbar^{nn} exceeds the bound")));
            }
            if deg % 2 == 1 {
                continue;
            }
            let pw = nn as i64 - (deg / 2) as i64;
            if pw > order as i64 - low {
                continue;
            }
            let mom = wick.moment(e);
            if mom.is_zero() {
                continue;
            }
            *lau.entry(pw).or_insert_with(BigRational::zero) += c * mom;
        }
    }
    let mut z = HSeries::one(order + low as usize);
    for &b in framings {
        z = z.mul(&z_b(rs, b, order + low as usize)?);
    }
    times_z(&lau, &z, low, order)
}

/// Multiply a Laurent series in hbar by hbar^low * z; negative powers must cancel.
fn times_z(lau: &BTreeMap<i64, BigRational>, z: &HSeries, low: i64, order: usize) -> Result<HSeries> {
    let mut full: BTreeMap<i64, BigRational> = BTreeMap::new();
    for (&pw, c) in lau {
        if c.is_zero() {
            continue;
        }
        for (k, zc) in z.coeffs.iter().enumerate() {
            let t = pw + low + k as i64;
            if t <= order as i64 && !zc.is_zero() {
                *full.entry(t).or_insert_with(BigRational::zero) += c * zc;
            }
        }
    }
    let mut out = HSeries::zero(order);
    for (t, c) in full {
        if t < 0 {
            if !c.is_zero() {
                return Err(Error::check(format!("residual hbar^{t} term")));
            }
        } else {
            out.coeffs[t as usize] = c;
        }
    }
    Ok(out)
}

/// Series of the lens space from surgery on U_b.
pub fn ohtsuki_lens(rs: &RootSystem, b: i64, order: usize) -> Result<OhtsukiSeries> {
    if b == 0 {
        return Err(Error::bad("framing must be nonzero"));
    }
    let sn = b.signum();
    let rho2 = rs.inner(&rs.rho, &rs.rho);
    let rho2 = BigRational::new(BigInt::from(*rho2.numer()), BigInt::from(*rho2.denom()));
    let mut acc = HSeries::exp_linear(&(rho2 * rat(sn - b) / rat(2)), order);
    for al in &rs.positive_roots {
        let x = rat(rs.pair_root(&rs.rho, al));
        let num = HSeries::one_minus_exp_over_h(&(-&x / rat(b)), order);
        let den = HSeries::one_minus_exp_over_h(&(-&x * rat(sn)), order);
        acc = acc.mul(&num).mul(&den.inv()?);
    }
    Ok(OhtsukiSeries { series: acc, provenance: SeriesProvenance::LensClosedForm })
}

fn check_unit_framing(b: i64) -> Result<()> {
    if b != 1 && b != -1 {
        return Err(Error::bad(format!("knot surgery needs framing +1 or -1, got {b}")));
    }
    Ok(())
}

/// sl2 knot surgery: N^(2j) -> z_b b^-j (2j-1)!! (-2)^j hbar^-j.
pub fn ohtsuki_knot_sl2(knot: &FramedLink, framing: i64, order: usize) -> Result<OhtsukiSeries> {
    check_unit_framing(framing)?;
    let exp = knot_expansion_sl2(knot, 2 * order)?;
    let rs = RootSystem::from_label("A1")?;
    let mut lau: BTreeMap<i64, BigRational> = BTreeMap::new();
    for (n, poly) in exp.terms.iter().enumerate() {
        for (e, c) in poly {
            let two_j = e[0] as u64;
            let j = two_j / 2;
            let sub = BigRational::from_integer(double_factorial_odd(j) * BigInt::from(-2).pow(j as u32))
                / rat(framing.pow(j as u32));
            *lau.entry(n as i64 - j as i64).or_insert_with(BigRational::zero) += c * sub;
        }
    }
    let z = z_b(&rs, framing, order + 1)?;
    let out = times_z(&lau, &z, 1, order)?;
    Ok(OhtsukiSeries { series: out, provenance: SeriesProvenance::Sl2Knot })
}

/// General knot surgery from a supplied expansion of Q_{K^0}.
pub fn ohtsuki_knot_general(rs: &RootSystem, exp: &LinkExpansion, framing: i64, order: usize) -> Result<OhtsukiSeries> {
    check_unit_framing(framing)?;
    if exp.components != 1 {
        return Err(Error::bad("a knot expansion is required"));
    }
    let series = gaussian_substitute(rs, exp, &[framing], order)?;
    Ok(OhtsukiSeries { series, provenance: SeriesProvenance::GeneralKnot })
}

/// Surgery on a link with diagonal linking matrix diag(b_1..b_m).
pub fn ohtsuki_diag_link(rs: &RootSystem, exp: &LinkExpansion, framings: &[i64], order: usize) -> Result<OhtsukiSeries> {
    let series = gaussian_substitute(rs, exp, framings, order)?;
    Ok(OhtsukiSeries { series, provenance: SeriesProvenance::DiagonalLink })
}

/// t_M = t_{M'} * prod t_{M_i}^-1.
pub fn compose_series(m_prime: &OhtsukiSeries, lens: &[OhtsukiSeries]) -> Result<OhtsukiSeries> {
    let mut acc = m_prime.series.clone();
    for l in lens {
        acc = acc.mul(&l.series.inv()?);
    }
    Ok(OhtsukiSeries { series: acc, provenance: SeriesProvenance::Composition })
}

/// Ohtsuki series of a supported rational homology sphere presentation.
pub fn series_for_spec(rs: &RootSystem, spec: &ManifoldSpec, order: usize) -> Result<OhtsukiSeries> {
    if signature(&spec.linking_matrix()).sigma_zero > 0 {
        return Err(Error::bad("not a rational homology sphere"));
    }
    let mut acc = HSeries::one(order);
    for l in spec.links() {
        let s = match l {
            FramedLink::Special(SpecialLink::Unknot { framing }) => ohtsuki_lens(rs, *framing, order)?,
            FramedLink::Special(SpecialLink::Hopf { .. }) => {
                return Err(Error::Unsupported("Hopf surgery has a non-diagonal linking matrix".into()))
            }
            knot => {
                if rs.rank != 1 {
                    return Err(Error::Unsupported("knot series beyond the unknot need sl2".into()));
                }
                if knot.components() != 1 {
                    return Err(Error::Unsupported("only knots and unknots are supported".into()));
                }
                ohtsuki_knot_sl2(knot, knot.framings()[0], order)?
            }
        };
        acc = acc.mul(&s.series);
    }
    Ok(OhtsukiSeries { series: acc, provenance: SeriesProvenance::Composition })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub r: u64,
    pub legendre: i64,
    pub residues: Vec<u64>,
    pub expected: Vec<u64>,
    pub pass: bool,
}

/// Compare c_{r,n} with (|H_1|/r)^rank c_n modulo r for n <= n_max.
pub fn congruence_report(
    series: &OhtsukiSeries,
    spec: &ManifoldSpec,
    rs: &RootSystem,
    r: i64,
    n_max: usize,
) -> Result<CongruenceReport> {
    let h1 = spec
        .homology_order()
        .ok_or_else(|| Error::bad("not a rational homology sphere"))?;
    let h1 = h1.to_i64().ok_or_else(|| Error::bad("|H_1| too large"))?;
    if !(r > h1 && r > (rs.dim_g - rs.rank) as i64) {
        return Err(Error::bad(format!("r={r} must exceed |H_1|={h1} and dim g - rank")));
    }
    if n_max > series.series.order() {
        return Err(Error::bad("series is shorter than the requested order"));
    }
    let t = tau(spec, rs, r, 1, Flavor::Projective)?;
    let pe = prime_expand(&t.value, n_max)?;
    let leg = legendre(h1, r).pow(rs.rank as u32);
    let mut expected = Vec::with_capacity(n_max + 1);
    for c in &series.series.coeffs[..=n_max] {
        expected.push(rational_mod(&(c * rat(leg)), r as u64)?);
    }
    let pass = expected == pe.coeffs_mod_r;
    Ok(CongruenceReport { r: r as u64, legendre: leg, residues: pe.coeffs_mod_r, expected, pass })
}

pub fn congruence_check(series: &OhtsukiSeries, spec: &ManifoldSpec, rs: &RootSystem, r: i64, n_max: usize) -> Result<bool> {
    Ok(congruence_report(series, spec, rs, r, n_max)?.pass)
}
