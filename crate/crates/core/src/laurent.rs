//! Laurent polynomials in q^(1/2D) with integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cyclo::{CycField, CycNum, PowerSum};
use crate::error::{Error, Result};

/// Sum of c_e q^(e/(2D)). Coefficients are dense from `lo`, trimmed at both ends.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentHalf {
    pub d: i64,
    lo: i64,
    c: Vec<i64>,
}

#[inline]
fn cadd(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("Laurent coefficient overflow")
}

#[inline]
fn cmul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("Laurent coefficient overflow")
}

impl LaurentHalf {
    pub fn zero(d: i64) -> Self {
        LaurentHalf { d, lo: 0, c: vec![] }
    }

    pub fn one(d: i64) -> Self {
        Self::mono(d, 0, 1)
    }

    /// c q^(e/(2D)).
    pub fn mono(d: i64, e: i64, c: i64) -> Self {
        let mut p = LaurentHalf { d, lo: e, c: vec![c] };
        p.normalize();
        p
    }

    /// q^k for integral k.
    pub fn q_pow(d: i64, k: i64) -> Self {
        Self::mono(d, 2 * d * k, 1)
    }

    pub fn from_terms(d: i64, terms: &[(i64, i64)]) -> Self {
        let mut acc = Self::zero(d);
        for &(e, c) in terms {
            acc = &acc + &Self::mono(d, e, c);
        }
        acc
    }

    fn normalize(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|&&x| x == 0).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.lo += lead as i64;
        }
        if self.c.is_empty() {
            self.lo = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.c == [1]
    }

    pub fn low_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lo)
    }

    pub fn high_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lo + self.c.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> i64 {
        let k = e - self.lo;
        if k < 0 || k >= self.c.len() as i64 {
            0
        } else {
            self.c[k as usize]
        }
    }

    /// Nonzero terms (exponent in 1/(2D) units, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(move |(k, &v)| (self.lo + k as i64, v))
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut p = LaurentHalf { d: self.d, lo: self.lo, c: self.c.iter().map(|&x| cmul(x, k)).collect() };
        p.normalize();
        p
    }

    /// Multiply by q^(e/(2D)).
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentHalf { d: self.d, lo: self.lo + e, c: self.c.clone() }
    }

    /// Substitute q -> q^(-1).
    pub fn invert_q(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.c.clone();
        c.reverse();
        LaurentHalf { d: self.d, lo: -self.high_exp().unwrap(), c }
    }

    /// Rewrite with a larger denominator scale.
    pub fn rescale(&self, new_d: i64) -> Result<Self> {
        if new_d % self.d != 0 {
            return Err(Error::bad(format!("cannot rescale D={} to D={new_d}", self.d)));
        }
        let f = new_d / self.d;
        let mut out = Self::zero(new_d);
        for (e, v) in self.terms() {
            out = &out + &Self::mono(new_d, e * f, v);
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.d);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient, or None when `den` does not divide `self`.
    pub fn div_exact(&self, den: &LaurentHalf) -> Option<LaurentHalf> {
        assert_eq!(self.d, den.d, "mixed Laurent scales");
        if den.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let lead = *den.c.last().unwrap();
        let dl = den.c.len();
        let mut rem = self.c.clone();
        if rem.len() < dl {
            return None;
        }
        let qn = rem.len() - dl + 1;
        let mut q = vec![0i64; qn];
        for k in (0..qn).rev() {
            let top = rem[k + dl - 1];
            if top == 0 {
                continue;
            }
            if top % lead != 0 {
                return None;
            }
            let t = top / lead;
            q[k] = t;
            for j in 0..dl {
                rem[k + j] = cadd(rem[k + j], -cmul(t, den.c[j]));
            }
        }
        if rem.iter().any(|&x| x != 0) {
            return None;
        }
        let mut out = LaurentHalf { d: self.d, lo: self.lo - den.lo, c: q };
        out.normalize();
        Some(out)
    }

    /// Substitute q^(1/2D) = zeta, where zeta = x^a generates the field.
    pub fn evaluate(&self, field: &Arc<CycField>) -> CycNum {
        self.to_powersum(field.m as usize).to_cyc(field)
    }

    /// Substitute q = xi for a polynomial in integral powers of q; xi = x^a.
    pub fn evaluate_integral(&self, field: &Arc<CycField>) -> Result<CycNum> {
        let two_d = 2 * self.d;
        let mut ps = PowerSum::zero(field.m as usize);
        for (e, v) in self.terms() {
            if e % two_d != 0 {
                return Err(Error::bad("fractional power of q in an integral evaluation"));
            }
            ps.add_mono(e / two_d, v as i128);
        }
        Ok(ps.to_cyc(field))
    }

    /// Substitute q = xi, reading q^(e/2D) as xi^(e (2D)^-1 mod m); needs gcd(2D, m) = 1.
    pub fn evaluate_reduced(&self, field: &Arc<CycField>) -> Result<CycNum> {
        let m = field.m as i64;
        let inv = crate::cyclo::mod_inverse(2 * self.d, m)
            .ok_or_else(|| Error::bad(format!("2D={} is not invertible modulo {m}", 2 * self.d)))?;
        let mut ps = PowerSum::zero(m as usize);
        for (e, v) in self.terms() {
            ps.add_mono((e.rem_euclid(m) * inv).rem_euclid(m), v as i128);
        }
        Ok(ps.to_cyc(field))
    }

    /// Reduce exponents modulo m into the group ring.
    pub fn to_powersum(&self, m: usize) -> PowerSum {
        let mut ps = PowerSum::zero(m);
        for (e, v) in self.terms() {
            ps.add_mono(e, v as i128);
        }
        ps
    }

    /// Coefficients of hbar^0..hbar^n_max after q = exp(hbar).
    pub fn hbar_expansion(&self, n_max: usize) -> Vec<BigRational> {
        let two_d = BigInt::from(2 * self.d);
        let mut out = vec![BigRational::zero(); n_max + 1];
        for (e, v) in self.terms() {
            let x = BigRational::new(BigInt::from(e), two_d.clone());
            let mut term = BigRational::from_integer(BigInt::from(v));
            for (n, slot) in out.iter_mut().enumerate() {
                if n > 0 {
                    term = term * &x / BigRational::from_integer(BigInt::from(n as i64));
                }
                *slot += &term;
            }
        }
        out
    }

    /// Value at q = 1.
    pub fn at_one(&self) -> i64 {
        self.c.iter().fold(0, |a, &b| cadd(a, b))
    }

    /// True when every exponent is a multiple of `k` units.
    pub fn exponents_divisible_by(&self, k: i64) -> bool {
        self.terms().all(|(e, _)| e % k == 0)
    }
}

impl fmt::Debug for LaurentHalf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentHalf[D={}]({})", self.d, self)
    }
}

impl fmt::Display for LaurentHalf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let two_d = 2 * self.d;
        let parts: Vec<String> = self
            .terms()
            .map(|(e, v)| {
                let g = num_integer::gcd(e, two_d);
                let (n, dd) = (e / g.max(1), two_d / g.max(1));
                let exp = if e == 0 {
                    String::new()
                } else if dd == 1 {
                    format!("q^{n}")
                } else {
                    format!("q^({n}/{dd})")
                };
                match (v, exp.is_empty()) {
                    (_, true) => v.to_string(),
                    (1, false) => exp,
                    (-1, false) => format!("-{exp}"),
                    _ => format!("{v}*{exp}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &LaurentHalf {
    type Output = LaurentHalf;
    fn add(self, o: &LaurentHalf) -> LaurentHalf {
        assert_eq!(self.d, o.d, "mixed Laurent scales");
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(o.lo);
        let hi = self.high_exp().unwrap().max(o.high_exp().unwrap());
        let mut c = vec![0i64; (hi - lo + 1) as usize];
        for (k, &v) in self.c.iter().enumerate() {
            let i = (self.lo - lo) as usize + k;
            c[i] = cadd(c[i], v);
        }
        for (k, &v) in o.c.iter().enumerate() {
            let i = (o.lo - lo) as usize + k;
            c[i] = cadd(c[i], v);
        }
        let mut p = LaurentHalf { d: self.d, lo, c };
        p.normalize();
        p
    }
}

impl Neg for &LaurentHalf {
    type Output = LaurentHalf;
    fn neg(self) -> LaurentHalf {
        LaurentHalf { d: self.d, lo: self.lo, c: self.c.iter().map(|&x| -x).collect() }
    }
}

impl Sub for &LaurentHalf {
    type Output = LaurentHalf;
    fn sub(self, o: &LaurentHalf) -> LaurentHalf {
        self + &(-o)
    }
}

impl Mul for &LaurentHalf {
    type Output = LaurentHalf;
    fn mul(self, o: &LaurentHalf) -> LaurentHalf {
        assert_eq!(self.d, o.d, "mixed Laurent scales");
        if self.is_zero() || o.is_zero() {
            return LaurentHalf::zero(self.d);
        }
        let mut c = vec![0i64; self.c.len() + o.c.len() - 1];
        let nz: Vec<(usize, i64)> = o.c.iter().copied().enumerate().filter(|&(_, v)| v != 0).collect();
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for &(j, b) in &nz {
                c[i + j] = cadd(c[i + j], cmul(a, b));
            }
        }
        let mut p = LaurentHalf { d: self.d, lo: self.lo + o.lo, c };
        p.normalize();
        p
    }
}

/// Symmetric quantum integer [n] = (q^(n/2) - q^(-n/2)) / (q^(1/2) - q^(-1/2)).
pub fn qint(d: i64, n: i64) -> LaurentHalf {
    if n == 0 {
        return LaurentHalf::zero(d);
    }
    let sign = n.signum();
    let n = n.abs();
    // q^((n-1)/2) + q^((n-3)/2) + ... + q^(-(n-1)/2)
    let mut acc = LaurentHalf::zero(d);
    for k in 0..n {
        let e = (n - 1 - 2 * k) * d;
        acc = &acc + &LaurentHalf::mono(d, e, 1);
    }
    acc.scale(sign)
}
