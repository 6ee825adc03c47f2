//! Exact arithmetic in Q(zeta_m) = Q[x]/Phi_m(x), a group-ring accumulator
//! over Z[Z/m], and (xi - 1)-adic valuations at prime levels.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The field Q(zeta_m) with zeta = x^a.
#[derive(Debug)]
pub struct CycField {
    pub m: u64,
    pub a: u64,
    /// Coefficients of Phi_m, lowest degree first.
    pub phi: Vec<i64>,
    /// table[e] = x^e mod Phi_m for 0 <= e < m.
    table: Arc<Vec<Vec<i64>>>,
}

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.a == other.a
    }
}

impl Eq for CycField {}

type PhiCache = Mutex<HashMap<u64, (Vec<i64>, Arc<Vec<Vec<i64>>>)>>;

fn phi_cache() -> &'static PhiCache {
    static CACHE: OnceLock<PhiCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Integer coefficients of the m-th cyclotomic polynomial.
pub fn cyclotomic_poly(m: u64) -> Vec<i64> {
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let den = cyclotomic_poly(d);
        num = int_poly_div_exact(&num, &den);
    }
    num
}

fn int_poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    // b is monic
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let da = a.len() - 1;
    let mut q = vec![0i64; da - db + 1];
    for k in (0..=da - db).rev() {
        let c = rem[k + db];
        q[k] = c;
        for j in 0..=db {
            rem[k + j] -= c * b[j];
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

fn reduction_table(m: u64, phi: &[i64]) -> Vec<Vec<i64>> {
    let n = phi.len() - 1;
    let mut out = Vec::with_capacity(m as usize);
    let mut cur = vec![0i64; n];
    cur[0] = 1;
    if n == 0 {
        return vec![vec![]; m as usize];
    }
    for _ in 0..m {
        out.push(cur.clone());
        // multiply by x
        let top = cur[n - 1];
        for k in (1..n).rev() {
            cur[k] = cur[k - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for k in 0..n {
                cur[k] -= top * phi[k];
            }
        }
    }
    out
}

impl CycField {
    pub fn new(m: u64, a: u64) -> Result<Arc<CycField>> {
        if m == 0 {
            return Err(Error::bad("cyclotomic order must be positive"));
        }
        let a = a % m;
        if m > 1 && a.gcd(&m) != 1 || (m == 1 && a != 0) {
            return Err(Error::bad(format!("zeta exponent {a} is not coprime to {m}")));
        }
        let (phi, table) = {
            let mut cache = phi_cache().lock().unwrap();
            cache
                .entry(m)
                .or_insert_with(|| {
                    let phi = cyclotomic_poly(m);
                    let table = Arc::new(reduction_table(m, &phi));
                    (phi, table)
                })
                .clone()
        };
        Ok(Arc::new(CycField { m, a, phi, table }))
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// x^e mod Phi_m as an integer vector.
    pub fn x_power_row(&self, e: i64) -> &[i64] {
        &self.table[e.rem_euclid(self.m as i64) as usize]
    }

    /// Exponent of x representing zeta^e.
    pub fn zeta_to_x(&self, e: i64) -> i64 {
        (e.rem_euclid(self.m as i64) * self.a as i64).rem_euclid(self.m as i64)
    }
}

/// An element of Q(zeta_m) in the power basis of x.
#[derive(Clone)]
pub struct CycNum {
    pub field: Arc<CycField>,
    pub coeffs: Vec<BigRational>,
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.coeffs == other.coeffs
    }
}

impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum(m={}, a={}, {})", self.field.m, self.field.a, self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => format!("{c}"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{k}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Division with remainder in Q[x]; `b` must be nonzero after trimming.
fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lead;
        if !c.is_zero() {
            for j in 0..=db {
                let t = &c * &b[j];
                r[k + j] -= t;
            }
        }
        q[k] = c;
    }
    trim(&mut r);
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(k).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

impl CycNum {
    pub fn zero(field: &Arc<CycField>) -> Self {
        CycNum { field: field.clone(), coeffs: vec![BigRational::zero(); field.degree()] }
    }

    pub fn one(field: &Arc<CycField>) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &Arc<CycField>, n: i64) -> Self {
        Self::from_rational(field, rat(n))
    }

    pub fn from_rational(field: &Arc<CycField>, q: BigRational) -> Self {
        let mut z = Self::zero(field);
        if field.degree() == 0 {
            return z;
        }
        z.coeffs[0] = q;
        z
    }

    /// x^e in the power basis.
    pub fn x_pow(field: &Arc<CycField>, e: i64) -> Self {
        let row = field.x_power_row(e);
        CycNum { field: field.clone(), coeffs: row.iter().map(|&v| rat(v)).collect() }
    }

    /// zeta^e where zeta = x^a.
    pub fn zeta_pow(field: &Arc<CycField>, e: i64) -> Self {
        Self::x_pow(field, field.zeta_to_x(e))
    }

    /// Reduce an arbitrary-length polynomial in x.
    pub fn from_poly(field: &Arc<CycField>, p: &[BigRational]) -> Self {
        let n = field.degree();
        let mut out = vec![BigRational::zero(); n];
        for (e, c) in p.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e < n {
                out[e] += c;
            } else {
                for (k, &v) in field.x_power_row(e as i64).iter().enumerate() {
                    if v != 0 {
                        out[k] += c * rat(v);
                    }
                }
            }
        }
        CycNum { field: field.clone(), coeffs: out }
    }

    pub fn from_int_coeffs(field: &Arc<CycField>, p: &[i64]) -> Self {
        let v: Vec<BigRational> = p.iter().map(|&x| rat(x)).collect();
        Self::from_poly(field, &v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(&self.field)
    }

    fn same_field(&self, other: &CycNum) {
        assert!(
            *self.field == *other.field,
            "mixed cyclotomic fields: (m={}, a={}) vs (m={}, a={})",
            self.field.m,
            self.field.a,
            other.field.m,
            other.field.a
        );
    }

    pub fn scale(&self, k: &BigRational) -> CycNum {
        CycNum { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn pow(&self, n: i64) -> Result<CycNum> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = CycNum::one(&self.field);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi: Vec<BigRational> = self.field.phi.iter().map(|&v| rat(v)).collect();
        let mut f = self.coeffs.clone();
        trim(&mut f);
        // Extended Euclid: track s with s*f = r (mod phi).
        let (mut r0, mut r1) = (phi, f);
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (vec![], vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            if r1.is_empty() {
                return Err(Error::DivisionByZero);
            }
        }
        let c = r1[0].clone();
        let s: Vec<BigRational> = s1.iter().map(|x| x / &c).collect();
        Ok(CycNum::from_poly(&self.field, &s))
    }

    pub fn div(&self, other: &CycNum) -> Result<CycNum> {
        Ok(self * &other.inv()?)
    }

    /// Complex conjugation x -> x^{-1}.
    pub fn conj(&self) -> CycNum {
        let m = self.field.m as i64;
        let mut p = vec![BigRational::zero(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                p[((m - k as i64) % m) as usize] += c;
            }
        }
        CycNum::from_poly(&self.field, &p)
    }

    /// Galois action x -> x^t.
    pub fn galois(&self, t: i64) -> CycNum {
        let m = self.field.m as i64;
        let mut p = vec![BigRational::zero(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                p[(k as i64 * t).rem_euclid(m) as usize] += c;
            }
        }
        CycNum::from_poly(&self.field, &p)
    }

    /// Numerical value with x = exp(2 pi i / m).
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.field.m as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * k as f64 / m;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    /// Integer coefficients when every coefficient is integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| if c.is_integer() { Some(c.to_integer()) } else { None })
            .collect()
    }

    /// Embed into Q(zeta_M) for M a multiple of m, via x_m -> x_M^(M/m).
    pub fn embed(&self, target: &Arc<CycField>) -> Result<CycNum> {
        let (m, big) = (self.field.m, target.m);
        if big % m != 0 {
            return Err(Error::bad(format!("cannot embed Q(zeta_{m}) into Q(zeta_{big})")));
        }
        let step = (big / m) as usize;
        let mut p = vec![BigRational::zero(); big as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                p[(k * step) % big as usize] += c;
            }
        }
        Ok(CycNum::from_poly(target, &p))
    }

    pub fn to_string_coeffs(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, o: &CycNum) -> CycNum {
        self.same_field(o);
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, o: &CycNum) -> CycNum {
        self.same_field(o);
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, o: &CycNum) -> CycNum {
        self.same_field(o);
        let p = poly_mul(&self.coeffs, &o.coeffs);
        CycNum::from_poly(&self.field, &p)
    }
}

/// xi^(num/den) materialized as zeta^e in Q(zeta_m), m = 2Dr, xi = zeta^(2D).
pub fn root_power(field: &Arc<CycField>, two_d: i64, num: i64, den: i64) -> Result<CycNum> {
    if den == 0 {
        return Err(Error::DivisionByZero);
    }
    let top = two_d * num;
    if top % den != 0 {
        return Err(Error::bad(format!(
            "xi^({num}/{den}) is not an integer power of zeta with 2D = {two_d}"
        )));
    }
    Ok(CycNum::zeta_pow(field, top / den))
}

/// Element of the group ring Z[Z/m], indexed by exponents of zeta.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSum {
    pub m: usize,
    pub c: Vec<i128>,
}

impl PowerSum {
    pub fn zero(m: usize) -> Self {
        PowerSum { m, c: vec![0; m] }
    }

    pub fn one(m: usize) -> Self {
        Self::mono(m, 0, 1)
    }

    pub fn mono(m: usize, e: i64, coeff: i128) -> Self {
        let mut p = Self::zero(m);
        p.add_mono(e, coeff);
        p
    }

    pub fn add_mono(&mut self, e: i64, coeff: i128) {
        let k = e.rem_euclid(self.m as i64) as usize;
        self.c[k] = self.c[k].checked_add(coeff).expect("group-ring coefficient overflow");
    }

    pub fn add_assign(&mut self, o: &PowerSum) {
        assert_eq!(self.m, o.m);
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a = a.checked_add(*b).expect("group-ring coefficient overflow");
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, k: i128) -> PowerSum {
        PowerSum {
            m: self.m,
            c: self.c.iter().map(|x| x.checked_mul(k).expect("group-ring coefficient overflow")).collect(),
        }
    }

    /// Multiply by zeta^e.
    pub fn shift(&self, e: i64) -> PowerSum {
        let mut out = Self::zero(self.m);
        let m = self.m as i64;
        for (k, &v) in self.c.iter().enumerate() {
            if v != 0 {
                out.c[(k as i64 + e).rem_euclid(m) as usize] = v;
            }
        }
        out
    }

    pub fn mul(&self, o: &PowerSum) -> PowerSum {
        assert_eq!(self.m, o.m);
        let m = self.m;
        let mut out = vec![0i128; m];
        let nz: Vec<(usize, i128)> = o.c.iter().copied().enumerate().filter(|&(_, v)| v != 0).collect();
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for &(j, b) in &nz {
                let k = if i + j >= m { i + j - m } else { i + j };
                let t = a.checked_mul(b).expect("group-ring coefficient overflow");
                out[k] = out[k].checked_add(t).expect("group-ring coefficient overflow");
            }
        }
        PowerSum { m, c: out }
    }

    /// Exponents are all multiples of `f`: rewrite over Z[Z/(m/f)].
    pub fn descend(&self, f: usize) -> Option<PowerSum> {
        if f == 0 || !self.m.is_multiple_of(f) {
            return None;
        }
        let mut out = Self::zero(self.m / f);
        for (k, &v) in self.c.iter().enumerate() {
            if v == 0 {
                continue;
            }
            if k % f != 0 {
                return None;
            }
            out.c[k / f] = v;
        }
        Some(out)
    }

    /// Evaluate at zeta = x^a of the given field (which must have order m).
    pub fn to_cyc(&self, field: &Arc<CycField>) -> CycNum {
        assert_eq!(self.m as u64, field.m, "group ring order must match the field");
        let n = field.degree();
        let mut acc = vec![0i128; n];
        for (k, &v) in self.c.iter().enumerate() {
            if v == 0 {
                continue;
            }
            let row = field.x_power_row(field.zeta_to_x(k as i64));
            for (t, &r) in row.iter().enumerate() {
                if r != 0 {
                    acc[t] = acc[t]
                        .checked_add(v.checked_mul(r as i128).expect("overflow"))
                        .expect("overflow");
                }
            }
        }
        CycNum {
            field: field.clone(),
            coeffs: acc.into_iter().map(|v| BigRational::from_integer(BigInt::from(v))).collect(),
        }
    }
}

/// The (xi - 1)-adic valuation of an integral element of Q(zeta_r), r prime.
/// Returns None for zero.
pub fn valuation_at_xi_minus_1(x: &CycNum) -> Result<Option<u32>> {
    let r = x.field.m;
    if !is_prime(r) {
        return Err(Error::bad(format!("valuation needs a prime order field, got {r}")));
    }
    let coeffs = x
        .integer_coeffs()
        .ok_or_else(|| Error::bad("valuation needs an element of Z[xi]"))?;
    if coeffs.iter().all(|c| c.is_zero()) {
        return Ok(None);
    }
    let rb = BigInt::from(r);
    let mut f = coeffs;
    let mut v = 0u32;
    loop {
        let s: BigInt = f.iter().sum();
        if !(&s % &rb).is_zero() {
            return Ok(Some(v));
        }
        let t = &s / &rb;
        // f - t * (1 + x + ... + x^(r-1)) vanishes at x = 1
        let mut g: Vec<BigInt> = (0..r as usize)
            .map(|k| f.get(k).cloned().unwrap_or_else(BigInt::zero) - &t)
            .collect();
        // synthetic division by (x - 1)
        let n = g.len();
        let mut q = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for k in (1..n).rev() {
            carry += &g[k];
            q[k - 1] = carry.clone();
        }
        carry += &g[0];
        debug_assert!(carry.is_zero());
        g.clear();
        f = q;
        v += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralityWitness {
    pub integral: bool,
    pub coeffs: Vec<BigInt>,
}

pub fn integrality_witness(x: &CycNum) -> IntegralityWitness {
    match x.integer_coeffs() {
        Some(c) => IntegralityWitness { integral: true, coeffs: c },
        None => IntegralityWitness { integral: false, coeffs: vec![] },
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Modular inverse of b modulo r, if it exists.
pub fn mod_inverse(b: i64, r: i64) -> Option<i64> {
    let e = b.extended_gcd(&r);
    if e.gcd.abs() != 1 {
        return None;
    }
    Some((e.x * e.gcd.signum()).rem_euclid(r.abs()))
}

pub fn bigrat_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_bigrat(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|_| Error::bad(format!("bad rational '{s}'")));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(parse(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse(s)?)),
    }
}
