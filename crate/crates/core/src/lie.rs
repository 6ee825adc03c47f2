//! Root systems, weight lattices, Weyl groups and alcove geometry.
//!
//! Weights are integer vectors in the fundamental-weight basis. Roots keep both
//! their simple-root coefficients and their weight coordinates.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(LieType::A),
            "B" => Ok(LieType::B),
            "C" => Ok(LieType::C),
            "D" => Ok(LieType::D),
            "E" => Ok(LieType::E),
            "F" => Ok(LieType::F),
            "G" => Ok(LieType::G),
            other => Err(Error::bad(format!("unknown Lie type '{other}'"))),
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Parse labels such as `A1`, `g2`, `E8`.
pub fn parse_algebra(label: &str) -> Result<(LieType, usize)> {
    let label = label.trim();
    if label.is_empty() {
        return Err(Error::bad("empty algebra label"));
    }
    let (head, tail) = label.split_at(1);
    let t: LieType = head.parse()?;
    let rank = tail
        .parse::<usize>()
        .map_err(|_| Error::bad(format!("bad rank in algebra label '{label}'")))?;
    Ok((t, rank))
}

/// Resource bounds shared by all enumeration-heavy operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_weyl: u64,
    pub max_enumeration: u64,
    /// Bound on (number of strands) x (tensor dimension) for the braid engine.
    pub max_braid: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_weyl: 1_000_000,
            max_enumeration: 5_000_000,
            max_braid: 4_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|x| x * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

/// Weyl group element acting on fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    /// Row-major rank x rank integer matrix.
    pub matrix: Vec<i64>,
    pub sign: i8,
}

impl WeylElement {
    pub fn apply(&self, mu: &Weight) -> Weight {
        let l = mu.rank();
        Weight(
            (0..l)
                .map(|i| (0..l).map(|j| self.matrix[i * l + j] * mu.0[j]).sum())
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Coefficients in the simple-root basis.
    pub coeffs: Vec<i64>,
    /// Coordinates in the fundamental-weight basis.
    pub weight: Weight,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

/// An element of G = X/Y, represented by a lift with root coordinates in [0,1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterElement {
    pub lift: Weight,
    pub key: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub lie_type: LieType,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// (alpha_i|alpha_j).
    pub root_form: Vec<Vec<i64>>,
    pub d_list: Vec<i64>,
    pub d: i64,
    pub big_d: i64,
    /// big_d * (lambda_i|lambda_j), an integer matrix.
    pub gram_scaled: Vec<Vec<i64>>,
    pub det_cartan: i64,
    /// det * A^{-1}.
    adj: Vec<Vec<i64>>,
    pub positive_roots: Vec<Root>,
    pub rho: Weight,
    pub s: usize,
    pub dim_g: usize,
    pub h: i64,
    pub h_dual: i64,
    /// Index of the short highest root in `positive_roots`.
    pub alpha0: usize,
    /// (lambda_i|alpha0).
    pub marks: Vec<i64>,
    pub weyl_order: u128,
    weyl: Option<Vec<WeylElement>>,
    pub limits: Limits,
    pub center: Vec<CenterElement>,
    pub invariant_factors: Vec<i64>,
}

fn symmetric_form(t: LieType, l: usize) -> Result<Vec<Vec<i64>>> {
    let ok = match t {
        LieType::A => l >= 1,
        LieType::B | LieType::C => l >= 2,
        LieType::D => l >= 4,
        LieType::E => (6..=8).contains(&l),
        LieType::F => l == 4,
        LieType::G => l == 2,
    };
    if !ok {
        return Err(Error::bad(format!("no simple Lie algebra of type {t}{l}")));
    }
    let mut b = vec![vec![0i64; l]; l];
    let edge = |i: usize, j: usize, v: i64, b: &mut Vec<Vec<i64>>| {
        b[i][j] = v;
        b[j][i] = v;
    };
    match t {
        LieType::A => {
            for i in 0..l {
                b[i][i] = 2;
            }
            for i in 0..l.saturating_sub(1) {
                edge(i, i + 1, -1, &mut b);
            }
        }
        LieType::B => {
            for i in 0..l {
                b[i][i] = if i + 1 < l { 4 } else { 2 };
            }
            for i in 0..l - 1 {
                edge(i, i + 1, -2, &mut b);
            }
        }
        LieType::C => {
            for i in 0..l {
                b[i][i] = if i + 1 < l { 2 } else { 4 };
            }
            for i in 0..l - 1 {
                edge(i, i + 1, if i + 2 == l { -2 } else { -1 }, &mut b);
            }
        }
        LieType::D => {
            for i in 0..l {
                b[i][i] = 2;
            }
            for i in 0..l - 2 {
                edge(i, i + 1, -1, &mut b);
            }
            edge(l - 3, l - 1, -1, &mut b);
        }
        LieType::E => {
            for i in 0..l {
                b[i][i] = 2;
            }
            let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
            for &(i, j) in edges.iter() {
                if i < l && j < l {
                    edge(i, j, -1, &mut b);
                }
            }
        }
        LieType::F => {
            b[0][0] = 4;
            b[1][1] = 4;
            b[2][2] = 2;
            b[3][3] = 2;
            edge(0, 1, -2, &mut b);
            edge(1, 2, -2, &mut b);
            edge(2, 3, -1, &mut b);
        }
        LieType::G => {
            b[0][0] = 2;
            b[1][1] = 6;
            edge(0, 1, -3, &mut b);
        }
    }
    Ok(b)
}

/// Classical Weyl group orders.
pub fn classical_weyl_order(t: LieType, l: usize) -> u128 {
    let fact = |n: usize| (1..=n as u128).product::<u128>();
    match t {
        LieType::A => fact(l + 1),
        LieType::B | LieType::C => (1u128 << l) * fact(l),
        LieType::D => (1u128 << (l - 1)) * fact(l),
        LieType::E => match l {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        LieType::F => 1152,
        LieType::G => 12,
    }
}

fn rational_inverse(a: &[Vec<i64>]) -> Vec<Vec<Rational64>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational64> = row.iter().map(|&x| Rational64::from_integer(x)).collect();
            r.extend((0..n).map(|j| if i == j { Rational64::one() } else { Rational64::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero()).expect("Cartan matrix is invertible");
        m.swap(c, p);
        let piv = m[c][c];
        for x in m[c].iter_mut() {
            *x /= piv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c];
                for k in 0..2 * n {
                    let v = m[c][k];
                    m[r][k] -= f * v;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

fn integer_det(a: &[Vec<i64>]) -> i64 {
    // Bareiss fraction-free elimination.
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    (sign * m[n - 1][n - 1]) as i64
}

/// Diagonal of the Smith normal form (entries > 1 only).
pub fn smith_invariant_factors(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    let mut m: Vec<Vec<i64>> = a.to_vec();
    let mut diag = Vec::new();
    for t in 0..n {
        // Bring a nonzero entry of least absolute value to (t,t), then clear its row and column.
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return diag;
            };
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..n {
                let q = Integer::div_floor(&m[i][t], &p);
                for j in t..n {
                    m[i][j] -= q * m[t][j];
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = Integer::div_floor(&m[t][j], &p);
                for i in t..n {
                    m[i][j] -= q * m[i][t];
                }
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility condition for the remaining block.
            let bad = (t + 1..n).flat_map(|i| (t + 1..n).map(move |j| (i, j))).find(|&(i, j)| m[i][j] % p != 0);
            if let Some((i, _)) = bad {
                for j in t..n {
                    m[t][j] += m[i][j];
                }
                continue;
            }
            diag.push(p.abs());
            break;
        }
    }
    diag.retain(|&x| x > 1);
    diag
}

impl RootSystem {
    pub fn new(t: LieType, rank: usize) -> Result<Self> {
        Self::with_limits(t, rank, Limits::default())
    }

    pub fn from_label(label: &str) -> Result<Self> {
        let (t, l) = parse_algebra(label)?;
        Self::new(t, l)
    }

    pub fn with_limits(t: LieType, l: usize, limits: Limits) -> Result<Self> {
        let b = symmetric_form(t, l)?;
        let d_list: Vec<i64> = (0..l).map(|i| b[i][i] / 2).collect();
        let cartan: Vec<Vec<i64>> = (0..l)
            .map(|i| (0..l).map(|j| b[i][j] / d_list[i]).collect())
            .collect();
        let d = *d_list.iter().max().unwrap();
        let inv = rational_inverse(&cartan);
        let det_cartan = integer_det(&cartan);
        let adj: Vec<Vec<i64>> = inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let v = *x * Rational64::from_integer(det_cartan);
                        assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        let gram: Vec<Vec<Rational64>> = (0..l)
            .map(|i| (0..l).map(|j| inv[i][j] * Rational64::from_integer(d_list[i])).collect())
            .collect();
        let big_d = gram
            .iter()
            .flatten()
            .fold(1i64, |acc, x| acc.lcm(x.denom()));
        let gram_scaled: Vec<Vec<i64>> = gram
            .iter()
            .map(|row| row.iter().map(|x| (*x * Rational64::from_integer(big_d)).to_integer()).collect())
            .collect();

        let positive_roots = Self::grow_roots(&cartan);
        let s = positive_roots.len();
        let norm2 = |c: &[i64]| -> i64 {
            (0..l).map(|i| (0..l).map(|j| c[i] * b[i][j] * c[j]).sum::<i64>()).sum()
        };
        let alpha0 = (0..s)
            .filter(|&k| norm2(&positive_roots[k].coeffs) == 2)
            .max_by_key(|&k| positive_roots[k].height())
            .unwrap();
        let pair_rho = |c: &[i64]| -> i64 { c.iter().zip(&d_list).map(|(x, y)| x * y).sum() };
        let h = 1 + pair_rho(&positive_roots[alpha0].coeffs);
        let h_dual = 1 + positive_roots.iter().map(|r| pair_rho(&r.coeffs)).max().unwrap() / d;
        let marks: Vec<i64> = positive_roots[alpha0]
            .coeffs
            .iter()
            .zip(&d_list)
            .map(|(c, di)| c * di)
            .collect();

        let weyl_order = classical_weyl_order(t, l);
        let mut rs = RootSystem {
            lie_type: t,
            rank: l,
            cartan,
            root_form: b,
            d_list,
            d,
            big_d,
            gram_scaled,
            det_cartan,
            adj,
            positive_roots,
            rho: Weight(vec![1; l]),
            s,
            dim_g: 2 * s + l,
            h,
            h_dual,
            alpha0,
            marks,
            weyl_order,
            weyl: None,
            limits,
            center: Vec::new(),
            invariant_factors: Vec::new(),
        };
        if weyl_order <= limits.max_weyl as u128 {
            let w = rs.enumerate_weyl();
            assert_eq!(w.len() as u128, weyl_order, "Weyl closure size mismatch");
            rs.weyl = Some(w);
        }
        rs.center = rs.enumerate_center();
        rs.invariant_factors = smith_invariant_factors(&rs.cartan);
        Ok(rs)
    }

    fn grow_roots(cartan: &[Vec<i64>]) -> Vec<Root> {
        let l = cartan.len();
        let to_weight = |c: &[i64]| -> Weight {
            Weight((0..l).map(|i| (0..l).map(|j| cartan[i][j] * c[j]).sum()).collect())
        };
        let mut roots: Vec<Vec<i64>> = Vec::new();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..l {
            let mut c = vec![0; l];
            c[i] = 1;
            seen.insert(c.clone());
            queue.push_back(c);
        }
        while let Some(beta) = queue.pop_front() {
            let wt = to_weight(&beta);
            for i in 0..l {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if seen.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - wt.0[i];
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if seen.insert(up.clone()) {
                        queue.push_back(up);
                    }
                }
            }
            roots.push(beta);
        }
        roots.sort_by_key(|c| (c.iter().sum::<i64>(), std::cmp::Reverse(c.clone())));
        roots
            .into_iter()
            .map(|c| Root { weight: to_weight(&c), coeffs: c })
            .collect()
    }

    fn simple_reflection_matrix(&self, i: usize) -> Vec<i64> {
        let l = self.rank;
        let mut m = vec![0; l * l];
        for r in 0..l {
            m[r * l + r] = 1;
            m[r * l + i] -= self.cartan[r][i];
        }
        m
    }

    fn enumerate_weyl(&self) -> Vec<WeylElement> {
        let l = self.rank;
        let gens: Vec<Vec<i64>> = (0..l).map(|i| self.simple_reflection_matrix(i)).collect();
        let mut id = vec![0; l * l];
        for i in 0..l {
            id[i * l + i] = 1;
        }
        let mut out = vec![WeylElement { matrix: id, sign: 1 }];
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        seen.insert(self.rho.0.clone());
        let mut head = 0;
        while head < out.len() {
            let cur = out[head].clone();
            head += 1;
            for g in &gens {
                let mut m = vec![0; l * l];
                for r in 0..l {
                    for c in 0..l {
                        m[r * l + c] = (0..l).map(|k| g[r * l + k] * cur.matrix[k * l + c]).sum();
                    }
                }
                let e = WeylElement { matrix: m, sign: -cur.sign };
                let key = e.apply(&self.rho).0;
                if seen.insert(key) {
                    out.push(e);
                }
            }
        }
        out
    }

    fn enumerate_center(&self) -> Vec<CenterElement> {
        let l = self.rank;
        let mut out = vec![self.center_rep(&Weight::zero(l))];
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        seen.insert(out[0].key.clone());
        let mut head = 0;
        while head < out.len() {
            let cur = out[head].lift.clone();
            head += 1;
            for i in 0..l {
                let e = self.center_rep(&(&cur + &Weight::unit(l, i)));
                if seen.insert(e.key.clone()) {
                    out.push(e);
                }
            }
        }
        out
    }

    /// Canonical representative of the class of `mu` in X/Y.
    pub fn center_rep(&self, mu: &Weight) -> CenterElement {
        let det = self.det_cartan;
        let num = self.adj_apply(mu);
        let key: Vec<i64> = num.iter().map(|x| x.rem_euclid(det)).collect();
        let c: Vec<i64> = num.iter().map(|x| x.div_floor(&det)).collect();
        let lift = mu - &self.from_root_coords(&c);
        CenterElement { lift, key }
    }

    fn adj_apply(&self, mu: &Weight) -> Vec<i64> {
        self.adj
            .iter()
            .map(|row| row.iter().zip(&mu.0).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.lie_type, self.rank)
    }

    /// The enumerated Weyl group, or a resource error if it was too large to build.
    pub fn weyl(&self) -> Result<&[WeylElement]> {
        self.weyl.as_deref().ok_or_else(|| {
            Error::Resource(format!(
                "Weyl group of {} has {} elements, above the limit {}",
                self.label(),
                self.weyl_order,
                self.limits.max_weyl
            ))
        })
    }

    pub fn weyl_len(&self) -> Result<i64> {
        Ok(self.weyl()?.len() as i64)
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank).map(|r| self.cartan[r][i]).collect())
    }

    pub fn fundamental(&self, i: usize) -> Weight {
        Weight::unit(self.rank, i)
    }

    pub fn from_root_coords(&self, c: &[i64]) -> Weight {
        let l = self.rank;
        Weight((0..l).map(|i| (0..l).map(|j| self.cartan[i][j] * c[j]).sum()).collect())
    }

    pub fn root_coords(&self, mu: &Weight) -> Vec<Rational64> {
        self.adj_apply(mu)
            .into_iter()
            .map(|x| Rational64::new(x, self.det_cartan))
            .collect()
    }

    pub fn alpha0_root(&self) -> &Root {
        &self.positive_roots[self.alpha0]
    }

    /// big_d * (mu|nu).
    pub fn inner_scaled(&self, mu: &Weight, nu: &Weight) -> i64 {
        let l = self.rank;
        let mut acc = 0i64;
        for i in 0..l {
            if mu.0[i] == 0 {
                continue;
            }
            let row: i64 = (0..l).map(|j| self.gram_scaled[i][j] * nu.0[j]).sum();
            acc += mu.0[i] * row;
        }
        acc
    }

    pub fn inner(&self, mu: &Weight, nu: &Weight) -> Rational64 {
        Rational64::new(self.inner_scaled(mu, nu), self.big_d)
    }

    pub fn norm_scaled(&self, mu: &Weight) -> i64 {
        self.inner_scaled(mu, mu)
    }

    /// (mu|alpha) for a root, always an integer.
    pub fn pair_root(&self, mu: &Weight, root: &Root) -> i64 {
        root.coeffs
            .iter()
            .zip(&self.d_list)
            .zip(&mu.0)
            .map(|((c, d), m)| c * d * m)
            .sum()
    }

    pub fn pair_alpha0(&self, mu: &Weight) -> i64 {
        self.marks.iter().zip(&mu.0).map(|(a, b)| a * b).sum()
    }

    pub fn in_root_lattice(&self, mu: &Weight) -> bool {
        self.adj_apply(mu).iter().all(|x| x % self.det_cartan == 0)
    }

    pub fn in_rho_plus_y(&self, mu: &Weight) -> bool {
        self.in_root_lattice(&(mu - &self.rho))
    }

    pub fn is_dominant(&self, mu: &Weight) -> bool {
        mu.0.iter().all(|&x| x >= 0)
    }

    pub fn is_regular_dominant(&self, mu: &Weight) -> bool {
        mu.0.iter().all(|&x| x >= 1)
    }

    pub fn reflect_simple(&self, mu: &Weight, i: usize) -> Weight {
        let k = mu.0[i];
        Weight((0..self.rank).map(|r| mu.0[r] - k * self.cartan[r][i]).collect())
    }

    /// Reflection in the hyperplane (x|alpha) = 0 for a positive root.
    pub fn reflect_root(&self, mu: &Weight, root: &Root) -> Weight {
        let n2: i64 = {
            let c = &root.coeffs;
            let l = self.rank;
            (0..l).map(|i| (0..l).map(|j| c[i] * self.root_form[i][j] * c[j]).sum::<i64>()).sum()
        };
        let k = 2 * self.pair_root(mu, root) / n2;
        &root.weight.scale(-k) + mu
    }

    /// Finite Weyl reduction to the dominant chamber. Returns the dominant weight,
    /// the parity of the number of reflections, and whether it is on a wall.
    pub fn dominant_reduce(&self, mu: &Weight) -> (Weight, i8, bool) {
        let mut cur = mu.clone();
        let mut sign = 1i8;
        while let Some(i) = cur.0.iter().position(|&x| x < 0) {
            cur = self.reflect_simple(&cur, i);
            sign = -sign;
        }
        let wall = cur.0.contains(&0);
        (cur, sign, wall)
    }

    /// Weighted sum over Weyl group signs, sanity helper.
    pub fn weyl_sign_sum(&self) -> Result<i64> {
        Ok(self.weyl()?.iter().map(|w| w.sign as i64).sum())
    }

    pub fn center_form(&self, g1: &CenterElement, g2: &CenterElement) -> Rational64 {
        let v = self.inner(&g1.lift, &g2.lift);
        v - Rational64::from_integer(v.floor().to_integer())
    }

    pub fn center_order(&self) -> usize {
        self.center.len()
    }

    /// Sum of the positive roots, as a weight.
    pub fn two_rho_from_roots(&self) -> Weight {
        let mut acc = Weight::zero(self.rank);
        for r in &self.positive_roots {
            acc = &acc + &r.weight;
        }
        acc
    }

    /// For each Weyl element, w(mu). Requires the Weyl group.
    pub fn weyl_orbit(&self, mu: &Weight) -> Result<Vec<(Weight, i8)>> {
        Ok(self.weyl()?.iter().map(|w| (w.apply(mu), w.sign)).collect())
    }
}

/// Outcome of reducing a weight under the affine Weyl group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineReduction {
    pub rep: Weight,
    pub on_boundary: bool,
    /// Parity of the number of reflections used (+1 even, -1 odd).
    pub parity: i8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DomainKind {
    /// P_r intersected with X.
    PrX,
    /// P_r intersected with Y.
    PrY,
    /// rho + (P_r intersected with Y).
    RhoPrY,
    ClosedAlcoveX,
    ClosedAlcoveRhoY,
    InteriorX,
    InteriorRhoY,
}

/// Alcove geometry at shifted level r.
#[derive(Debug, Clone, Copy)]
pub struct LatticeDomain<'a> {
    pub rs: &'a RootSystem,
    pub r: i64,
}

impl<'a> LatticeDomain<'a> {
    pub fn new(rs: &'a RootSystem, r: i64) -> Result<Self> {
        if r < 1 {
            return Err(Error::bad(format!("shifted level must be positive, got {r}")));
        }
        Ok(LatticeDomain { rs, r })
    }

    /// The level k = r - h.
    pub fn k(&self) -> i64 {
        self.r - self.rs.h
    }

    fn guard(&self, n: u128) -> Result<()> {
        if n > self.rs.limits.max_enumeration as u128 {
            return Err(Error::Resource(format!(
                "enumeration of {n} points exceeds the limit {}",
                self.rs.limits.max_enumeration
            )));
        }
        Ok(())
    }

    fn box_points(&self, offset: &Weight) -> Vec<Weight> {
        let l = self.rs.rank;
        let mut c = vec![0i64; l];
        let mut out = Vec::new();
        loop {
            out.push(offset + &self.rs.from_root_coords(&c));
            let mut i = 0;
            loop {
                if i == l {
                    return out;
                }
                c[i] += 1;
                if c[i] < self.r {
                    break;
                }
                c[i] = 0;
                i += 1;
            }
        }
    }

    fn alcove_points(&self, min: i64, strict: bool) -> Vec<Weight> {
        let l = self.rs.rank;
        let marks = &self.rs.marks;
        let bound = if strict { self.r - 1 } else { self.r };
        let mut out = Vec::new();
        let mut cur = vec![0i64; l];
        fn rec(i: usize, budget: i64, min: i64, marks: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
            if i == cur.len() {
                out.push(Weight(cur.clone()));
                return;
            }
            let mut v = min;
            while marks[i] * v <= budget {
                let rest_min: i64 = marks[i + 1..].iter().map(|m| m * min).sum();
                if marks[i] * v + rest_min > budget {
                    break;
                }
                cur[i] = v;
                rec(i + 1, budget - marks[i] * v, min, marks, cur, out);
                v += 1;
            }
        }
        rec(0, bound, min, marks, &mut cur, &mut out);
        out
    }

    pub fn enumerate(&self, which: DomainKind) -> Result<Vec<Weight>> {
        let rs = self.rs;
        let l = rs.rank;
        let box_size = (self.r as u128).pow(l as u32);
        match which {
            DomainKind::PrY => {
                self.guard(box_size)?;
                Ok(self.box_points(&Weight::zero(l)))
            }
            DomainKind::RhoPrY => {
                self.guard(box_size)?;
                Ok(self.box_points(&rs.rho))
            }
            DomainKind::PrX => {
                self.guard(box_size * rs.center.len() as u128)?;
                let mut out = Vec::new();
                for g in &rs.center {
                    out.extend(self.box_points(&g.lift));
                }
                Ok(out)
            }
            DomainKind::ClosedAlcoveX
            | DomainKind::ClosedAlcoveRhoY
            | DomainKind::InteriorX
            | DomainKind::InteriorRhoY => {
                self.guard(box_size)?;
                let interior = matches!(which, DomainKind::InteriorX | DomainKind::InteriorRhoY);
                let pts = if interior {
                    self.alcove_points(1, true)
                } else {
                    self.alcove_points(0, false)
                };
                let need_y = matches!(which, DomainKind::ClosedAlcoveRhoY | DomainKind::InteriorRhoY);
                Ok(pts.into_iter().filter(|p| !need_y || rs.in_rho_plus_y(p)).collect())
            }
        }
    }

    pub fn in_closed_alcove(&self, mu: &Weight) -> bool {
        self.rs.is_dominant(mu) && self.rs.pair_alpha0(mu) <= self.r
    }

    pub fn in_interior(&self, mu: &Weight) -> bool {
        self.rs.is_regular_dominant(mu) && self.rs.pair_alpha0(mu) < self.r
    }

    /// Reflection in the affine wall (x|alpha0) = r.
    pub fn reflect_affine(&self, mu: &Weight) -> Weight {
        let k = self.rs.pair_alpha0(mu) - self.r;
        mu - &self.rs.alpha0_root().weight.scale(k)
    }

    pub fn affine_reduce(&self, mu: &Weight) -> AffineReduction {
        let rs = self.rs;
        let mut cur = mu.clone();
        let mut parity = 1i8;
        loop {
            if let Some(i) = cur.0.iter().position(|&x| x < 0) {
                cur = rs.reflect_simple(&cur, i);
            } else if rs.pair_alpha0(&cur) > self.r {
                cur = self.reflect_affine(&cur);
            } else {
                break;
            }
            parity = -parity;
        }
        let on_boundary = cur.0.contains(&0) || rs.pair_alpha0(&cur) == self.r;
        AffineReduction { rep: cur, on_boundary, parity }
    }

    pub fn center_action(&self, g: &CenterElement, mu: &Weight) -> Weight {
        self.affine_reduce(&(mu + &g.lift.scale(self.r))).rep
    }

    /// Apply one generator of W_r: indices below rank are simple reflections,
    /// `rank` is the affine wall reflection, `rank + 1 + i` translates by +r alpha_i.
    pub fn apply_generator(&self, mu: &Weight, gen: usize) -> Weight {
        let l = self.rs.rank;
        if gen < l {
            self.rs.reflect_simple(mu, gen)
        } else if gen == l {
            self.reflect_affine(mu)
        } else {
            mu + &self.rs.simple_root(gen - l - 1).scale(self.r)
        }
    }

    pub fn generator_count(&self) -> usize {
        2 * self.rs.rank + 1
    }
}

pub fn weight(coords: &[i64]) -> Weight {
    Weight(coords.to_vec())
}

impl RootSystem {
    pub fn root_index(&self) -> HashMap<Vec<i64>, usize> {
        self.positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coeffs.clone(), i))
            .collect()
    }

    pub fn rho_norm_scaled(&self) -> i64 {
        self.norm_scaled(&self.rho)
    }

    pub fn positive_pairings_with(&self, mu: &Weight) -> Vec<i64> {
        self.positive_roots.iter().map(|a| self.pair_root(mu, a)).collect()
    }
}
