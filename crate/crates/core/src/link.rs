//! Colored link invariants at generic q: closed forms for the distinguished
//! knots, an sl2 braid-closure engine, Q-normalization, framing and the two
//! symmetry-principle checks.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cyclo::{CycField, PowerSum};
use crate::error::{Error, Result};
use crate::laurent::{qint, LaurentHalf};
use crate::lie::{CenterElement, LatticeDomain, LieType, Limits, RootSystem, Weight};
use crate::weyl_sums::{hopf_entry, quantum_dim};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialLink {
    Unknot { framing: i64 },
    /// Linking number +1 between the two components.
    Hopf { framings: [i64; 2] },
    Trefoil { framing: i64, chirality: Chirality },
    FigureEight { framing: i64 },
}

/// A closed braid with per-component framings.
///
/// Deserializes from either an object (with `component_map` optional) or a
/// braid record string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BraidInput")]
pub struct BraidLink {
    pub strands: usize,
    /// Generator sigma_i written as +i, its inverse as -i (1-based).
    pub word: Vec<i32>,
    pub framings: Vec<i64>,
    /// Component index of each strand position at the top of the braid.
    pub component_map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FramedLink {
    Special(SpecialLink),
    Braid(BraidLink),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum BraidInput {
    Record(String),
    Fields {
        strands: usize,
        word: Vec<i32>,
        framings: Vec<i64>,
        #[serde(default)]
        component_map: Option<Vec<usize>>,
    },
}

impl TryFrom<BraidInput> for BraidLink {
    type Error = Error;

    fn try_from(input: BraidInput) -> Result<Self> {
        match input {
            BraidInput::Record(text) => BraidLink::parse_record(&text),
            BraidInput::Fields { strands, word, framings, component_map: Some(map) } => {
                BraidLink::new(strands, word, framings, map)
            }
            BraidInput::Fields { strands, word, framings, component_map: None } => {
                BraidLink::from_word(strands, word, framings)
            }
        }
    }
}

impl BraidLink {
    pub fn new(strands: usize, word: Vec<i32>, framings: Vec<i64>, component_map: Vec<usize>) -> Result<Self> {
        let b = BraidLink { strands, word, framings, component_map };
        b.validate()?;
        Ok(b)
    }

    /// Build a braid whose component labels follow the closure cycles.
    pub fn from_word(strands: usize, word: Vec<i32>, framings: Vec<i64>) -> Result<Self> {
        let perm = permutation(strands, &word)?;
        let mut map = vec![usize::MAX; strands];
        let mut next = 0;
        for s in 0..strands {
            if map[s] != usize::MAX {
                continue;
            }
            let mut k = s;
            while map[k] == usize::MAX {
                map[k] = next;
                k = perm[k];
            }
            next += 1;
        }
        Self::new(strands, word, framings, map)
    }

    pub fn components(&self) -> usize {
        self.framings.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.strands == 0 {
            return Err(Error::bad("a braid needs at least one strand"));
        }
        if self.component_map.len() != self.strands {
            return Err(Error::bad("component_map must list one component per strand"));
        }
        let perm = permutation(self.strands, &self.word)?;
        let m = self.framings.len();
        let mut seen = vec![false; m];
        let mut visited = vec![false; self.strands];
        for s in 0..self.strands {
            if visited[s] {
                continue;
            }
            let c = self.component_map[s];
            if c >= m {
                return Err(Error::bad(format!("component index {c} has no framing")));
            }
            if seen[c] {
                return Err(Error::bad(format!("component {c} is split over several closure cycles")));
            }
            seen[c] = true;
            let mut k = s;
            while !visited[k] {
                visited[k] = true;
                if self.component_map[k] != c {
                    return Err(Error::bad("component_map disagrees with the closure cycles"));
                }
                k = perm[k];
            }
        }
        if seen.iter().any(|x| !x) {
            return Err(Error::bad("some framed component does not occur in the braid"));
        }
        Ok(())
    }

    /// (self-writhe per component, linking matrix off the diagonal).
    pub fn crossing_data(&self) -> (Vec<i64>, Vec<Vec<i64>>) {
        let m = self.components();
        let mut writhe = vec![0i64; m];
        let mut twice_lk = vec![vec![0i64; m]; m];
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &g in &self.word {
            let i = g.unsigned_abs() as usize - 1;
            let sign = g.signum() as i64;
            let (c1, c2) = (self.component_map[at[i]], self.component_map[at[i + 1]]);
            if c1 == c2 {
                writhe[c1] += sign;
            } else {
                twice_lk[c1][c2] += sign;
                twice_lk[c2][c1] += sign;
            }
            at.swap(i, i + 1);
        }
        (writhe, twice_lk.into_iter().map(|row| row.into_iter().map(|x| x / 2).collect()).collect())
    }

    pub fn to_record(&self) -> String {
        let join = |v: Vec<String>| if v.is_empty() { String::new() } else { format!(" {}", v.join(" ")) };
        format!(
            "strands: {}\nword:{}\nframings:{}\ncomponent_map:{}\n",
            self.strands,
            join(self.word.iter().map(|x| x.to_string()).collect()),
            join(self.framings.iter().map(|x| x.to_string()).collect()),
            join(self.component_map.iter().map(|x| x.to_string()).collect()),
        )
    }

    pub fn parse_record(text: &str) -> Result<Self> {
        let mut fields: HashMap<&str, &str> = HashMap::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once(':')
                .ok_or_else(|| Error::bad(format!("braid record line without ':' : '{line}'")))?;
            if fields.insert(k.trim(), v.trim()).is_some() {
                return Err(Error::bad(format!("duplicate braid record field '{}'", k.trim())));
            }
        }
        fn nums<T: FromStr>(s: Option<&&str>, name: &str) -> Result<Vec<T>> {
            let s = s.ok_or_else(|| Error::bad(format!("braid record lacks '{name}'")))?;
            s.split_whitespace()
                .map(|t| t.parse::<T>().map_err(|_| Error::bad(format!("bad value '{t}' in '{name}'"))))
                .collect()
        }
        let strands: Vec<usize> = nums(fields.get("strands"), "strands")?;
        if strands.len() != 1 {
            return Err(Error::bad("'strands' must be a single integer"));
        }
        let word = nums(fields.get("word"), "word")?;
        let framings = nums(fields.get("framings"), "framings")?;
        match fields.get("component_map") {
            Some(_) => Self::new(strands[0], word, framings, nums(fields.get("component_map"), "component_map")?),
            None => Self::from_word(strands[0], word, framings),
        }
    }
}

impl fmt::Display for BraidLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_record())
    }
}

/// Closure permutation: strand at top position k ends at bottom position perm[k].
fn permutation(strands: usize, word: &[i32]) -> Result<Vec<usize>> {
    let mut at: Vec<usize> = (0..strands).collect();
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if g == 0 || i >= strands {
            return Err(Error::bad(format!("generator {g} is invalid on {strands} strands")));
        }
        at.swap(i - 1, i);
    }
    let mut perm = vec![0; strands];
    for (pos, &s) in at.iter().enumerate() {
        perm[s] = pos;
    }
    Ok(perm)
}

impl FramedLink {
    pub fn unknot(framing: i64) -> Self {
        FramedLink::Special(SpecialLink::Unknot { framing })
    }

    pub fn hopf(b1: i64, b2: i64) -> Self {
        FramedLink::Special(SpecialLink::Hopf { framings: [b1, b2] })
    }

    pub fn trefoil(framing: i64, chirality: Chirality) -> Self {
        FramedLink::Special(SpecialLink::Trefoil { framing, chirality })
    }

    pub fn figure_eight(framing: i64) -> Self {
        FramedLink::Special(SpecialLink::FigureEight { framing })
    }

    pub fn components(&self) -> usize {
        match self {
            FramedLink::Special(SpecialLink::Hopf { .. }) => 2,
            FramedLink::Special(_) => 1,
            FramedLink::Braid(b) => b.components(),
        }
    }

    pub fn framings(&self) -> Vec<i64> {
        match self {
            FramedLink::Special(SpecialLink::Unknot { framing })
            | FramedLink::Special(SpecialLink::Trefoil { framing, .. })
            | FramedLink::Special(SpecialLink::FigureEight { framing }) => vec![*framing],
            FramedLink::Special(SpecialLink::Hopf { framings }) => framings.to_vec(),
            FramedLink::Braid(b) => b.framings.clone(),
        }
    }

    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let f = self.framings();
        match self {
            FramedLink::Special(SpecialLink::Hopf { .. }) => vec![vec![f[0], 1], vec![1, f[1]]],
            FramedLink::Special(_) => vec![vec![f[0]]],
            FramedLink::Braid(b) => {
                let (_, mut lk) = b.crossing_data();
                for (i, row) in lk.iter_mut().enumerate() {
                    row[i] = f[i];
                }
                lk
            }
        }
    }

    pub fn with_framings(&self, framings: &[i64]) -> Result<FramedLink> {
        if framings.len() != self.components() {
            return Err(Error::bad("framing count does not match the components"));
        }
        Ok(match self {
            FramedLink::Special(SpecialLink::Unknot { .. }) => FramedLink::unknot(framings[0]),
            FramedLink::Special(SpecialLink::Hopf { .. }) => FramedLink::hopf(framings[0], framings[1]),
            FramedLink::Special(SpecialLink::Trefoil { chirality, .. }) => FramedLink::trefoil(framings[0], *chirality),
            FramedLink::Special(SpecialLink::FigureEight { .. }) => FramedLink::figure_eight(framings[0]),
            FramedLink::Braid(b) => {
                FramedLink::Braid(BraidLink::new(b.strands, b.word.clone(), framings.to_vec(), b.component_map.clone())?)
            }
        })
    }

    /// True when only sl2 colorings can be evaluated.
    pub fn sl2_only(&self) -> bool {
        matches!(
            self,
            FramedLink::Braid(_)
                | FramedLink::Special(SpecialLink::Trefoil { .. })
                | FramedLink::Special(SpecialLink::FigureEight { .. })
        )
    }
}

// ---------------------------------------------------------------------------
// Closed forms (D = 2, exponents in units of q^(1/4)).

const SL2_D: i64 = 2;

fn q(k: i64) -> LaurentHalf {
    LaurentHalf::q_pow(SL2_D, k)
}

fn one_minus_q(k: i64) -> LaurentHalf {
    &LaurentHalf::one(SL2_D) - &q(k)
}

/// Colored Jones polynomial of the 0-framed trefoil.
pub fn jones_trefoil(n: u32, chirality: Chirality) -> LaurentHalf {
    let n = n as i64;
    let mut sum = LaurentHalf::zero(SL2_D);
    let mut prod = LaurentHalf::one(SL2_D);
    for k in 0..n {
        if k > 0 {
            prod = &prod * &one_minus_q(k - n);
        }
        sum = &sum + &(&q(-k * n) * &prod);
    }
    let right = &(&qint(SL2_D, n) * &q(1 - n)) * &sum;
    match chirality {
        Chirality::Right => right,
        Chirality::Left => right.invert_q(),
    }
}

/// Colored Jones polynomial of the 0-framed figure-eight knot.
pub fn jones_fig8(n: u32) -> LaurentHalf {
    let n = n as i64;
    let mut sum = LaurentHalf::zero(SL2_D);
    let mut prod = LaurentHalf::one(SL2_D);
    for k in 0..n {
        if k > 0 {
            prod = &(&prod * &one_minus_q(n - k)) * &one_minus_q(n + k);
        }
        sum = &sum + &(&q(-k * n) * &prod);
    }
    &qint(SL2_D, n) * &sum
}

// ---------------------------------------------------------------------------
// sl2 braid engine.

/// Coefficient rings usable by the braid engine.
pub trait BraidCoeff: Clone {
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, o: &Self);
    fn mul(&self, o: &Self) -> Self;
}

impl BraidCoeff for LaurentHalf {
    fn is_zero(&self) -> bool {
        LaurentHalf::is_zero(self)
    }
    fn add_assign(&mut self, o: &Self) {
        *self = &*self + o;
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

impl BraidCoeff for PowerSum {
    fn is_zero(&self) -> bool {
        PowerSum::is_zero(self)
    }
    fn add_assign(&mut self, o: &Self) {
        PowerSum::add_assign(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        PowerSum::mul(self, o)
    }
}

fn v(k: i64) -> LaurentHalf {
    // v = q^(1/2)
    LaurentHalf::mono(SL2_D, 2 * k, 1)
}

fn qfactorial(n: i64) -> LaurentHalf {
    (1..=n).fold(LaurentHalf::one(SL2_D), |acc, k| &acc * &qint(SL2_D, k))
}

fn weight_of(dim: usize, i: usize) -> i64 {
    dim as i64 - 1 - 2 * i as i64
}

/// Matrix of the braiding V_p (x) V_q -> V_q (x) V_p (sign +1) or of the inverse
/// braiding V_p (x) V_q -> V_q (x) V_p (sign -1). Entry index i*q + j lists
/// (left index, right index, coefficient).
pub fn braiding_table(p: usize, qd: usize, sign: i32) -> Vec<Vec<(usize, usize, LaurentHalf)>> {
    let mut out = vec![Vec::new(); p * qd];
    let vm = &v(1) - &v(-1);
    for i in 0..p {
        for j in 0..qd {
            let mut list = Vec::new();
            for n in 0..p.max(qd) {
                let nn = n as i64;
                let (li, lj) = if sign > 0 {
                    if n > i || j + n >= qd {
                        break;
                    }
                    (j + n, i - n)
                } else {
                    if n > j || i + n >= p {
                        break;
                    }
                    (j - n, i + n)
                };
                let mut c = LaurentHalf::one(SL2_D);
                let (e_dim, e_idx, f_idx) = if sign > 0 { (p, i, j) } else { (qd, j, i) };
                for t in 0..nn {
                    c = &c * &qint(SL2_D, e_dim as i64 - e_idx as i64 + t);
                }
                for t in 1..=nn {
                    c = &c * &qint(SL2_D, f_idx as i64 + t);
                }
                c = c.div_exact(&qfactorial(nn)).expect("q-binomial is integral");
                c = &c * &vm.pow(n as u32);
                if sign > 0 {
                    let lam = weight_of(p, i - n) * weight_of(qd, j + n);
                    c = c.shift(nn * (nn - 1) + lam);
                } else {
                    let lam = weight_of(p, i) * weight_of(qd, j);
                    c = c.shift(-nn * (nn - 1) - lam);
                    if n % 2 == 1 {
                        c = c.scale(-1);
                    }
                }
                if !c.is_zero() {
                    list.push((li, lj, c));
                }
            }
            out[i * qd + j] = list;
        }
    }
    out
}

/// Pivotal weight on basis vector i of V_dim, as a power of q^(1/4).
fn pivot_exp(dim: usize, i: usize) -> i64 {
    2 * PIVOT_SIGN * weight_of(dim, i)
}

/// The pivotal element acts by v^(PIVOT_SIGN * weight).
const PIVOT_SIGN: i64 = 1;

/// Twist on V_N as a power of q^(1/4) for a positive kink.
pub fn twist_exp(n: usize) -> i64 {
    let n = n as i64;
    n * n - 1
}

struct Engine<T> {
    tables: HashMap<(usize, usize, i32), Vec<Vec<(usize, usize, T)>>>,
}

impl<T: BraidCoeff> Engine<T> {
    fn table(&mut self, p: usize, qd: usize, sign: i32, lift: &dyn Fn(&LaurentHalf) -> T) -> &Vec<Vec<(usize, usize, T)>> {
        self.tables.entry((p, qd, sign)).or_insert_with(|| {
            braiding_table(p, qd, sign)
                .into_iter()
                .map(|row| row.into_iter().map(|(a, b, c)| (a, b, lift(&c))).collect())
                .collect()
        })
    }
}

/// Quantum trace of the braid closure with blackboard framing.
pub fn braid_closure_trace<T: BraidCoeff>(
    braid: &BraidLink,
    colors: &[u32],
    lift: &dyn Fn(&LaurentHalf) -> T,
    limits: &Limits,
) -> Result<T> {
    braid.validate()?;
    if colors.len() != braid.components() {
        return Err(Error::bad("one color per component is required"));
    }
    if colors.contains(&0) {
        return Err(Error::bad("sl2 colors must be positive dimensions"));
    }
    let n = braid.strands;
    let top: Vec<usize> = braid.component_map.iter().map(|&c| colors[c] as usize).collect();
    let total: u128 = top.iter().map(|&c| c as u128).product();
    if total.saturating_mul(n as u128) > limits.max_braid as u128 {
        return Err(Error::Resource(format!(
            "braid tensor of dimension {total} on {n} strands exceeds the limit {}",
            limits.max_braid
        )));
    }
    let mut engine: Engine<T> = Engine { tables: HashMap::new() };
    // colors along the word are the same for every basis state
    let mut col_seq = Vec::with_capacity(braid.word.len());
    let mut col = top.clone();
    for &g in &braid.word {
        let i = g.unsigned_abs() as usize - 1;
        col_seq.push((col[i], col[i + 1]));
        col.swap(i, i + 1);
    }
    debug_assert_eq!(col, top);
    for (&g, &(p, qd)) in braid.word.iter().zip(&col_seq) {
        engine.table(p, qd, g.signum(), lift);
    }

    let mut acc: Option<T> = None;
    let mut start = vec![0u8; n];
    loop {
        let mut state: HashMap<Vec<u8>, T> = HashMap::new();
        state.insert(start.clone(), lift(&LaurentHalf::one(SL2_D)));
        for (&g, &(p, qd)) in braid.word.iter().zip(&col_seq) {
            let i = g.unsigned_abs() as usize - 1;
            let table = &engine.tables[&(p, qd, g.signum())];
            let mut next: HashMap<Vec<u8>, T> = HashMap::with_capacity(state.len() * 2);
            for (s, val) in state {
                for (a, b, c) in &table[s[i] as usize * qd + s[i + 1] as usize] {
                    let mut t = s.clone();
                    t[i] = *a as u8;
                    t[i + 1] = *b as u8;
                    let x = val.mul(c);
                    match next.get_mut(&t) {
                        Some(y) => y.add_assign(&x),
                        None => {
                            next.insert(t, x);
                        }
                    }
                }
            }
            next.retain(|_, y| !y.is_zero());
            state = next;
        }
        if let Some(val) = state.get(&start) {
            let e: i64 = start.iter().zip(&top).map(|(&s, &d)| pivot_exp(d, s as usize)).sum();
            let term = val.mul(&lift(&LaurentHalf::mono(SL2_D, e, 1)));
            match acc.as_mut() {
                Some(a) => a.add_assign(&term),
                None => acc = Some(term),
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == n {
                return Ok(acc.unwrap_or_else(|| lift(&LaurentHalf::zero(SL2_D))));
            }
            start[k] += 1;
            if (start[k] as usize) < top[k] {
                break;
            }
            start[k] = 0;
            k += 1;
        }
    }
}

fn zero_framing_correction(braid: &BraidLink, colors: &[u32]) -> i64 {
    let (writhe, _) = braid.crossing_data();
    writhe
        .iter()
        .zip(colors)
        .map(|(w, &c)| -w * twist_exp(c as usize))
        .sum()
}

/// J of the 0-framed closure, as a Laurent polynomial in q^(1/4).
pub fn braid_jones_sl2(braid: &BraidLink, colors: &[u32], limits: &Limits) -> Result<LaurentHalf> {
    let tr = braid_closure_trace(braid, colors, &|x: &LaurentHalf| x.clone(), limits)?;
    Ok(tr.shift(zero_framing_correction(braid, colors)))
}

/// J of the 0-framed closure evaluated in Z[Z/m] with q^(1/4) = zeta_m.
pub fn braid_jones_sl2_powersum(braid: &BraidLink, colors: &[u32], m: usize, limits: &Limits) -> Result<PowerSum> {
    let tr = braid_closure_trace(braid, colors, &|x: &LaurentHalf| x.to_powersum(m), limits)?;
    Ok(tr.shift(zero_framing_correction(braid, colors)))
}

// ---------------------------------------------------------------------------
// Q-normalization.

fn require_sl2(rs: &RootSystem) -> Result<()> {
    if rs.lie_type == LieType::A && rs.rank == 1 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "this presentation is only evaluated for sl2, not {}",
            rs.label()
        )))
    }
}

/// Multiply J-values by the product of quantum dimensions.
pub fn q_normalize(rs: &RootSystem, colors: &[Weight], j_value: &LaurentHalf) -> LaurentHalf {
    colors.iter().fold(j_value.clone(), |acc, mu| &acc * &quantum_dim(rs, mu))
}

/// Multiply by q^(delta (|mu|^2 - |rho|^2)/2).
pub fn framing_shift(rs: &RootSystem, value: &LaurentHalf, mu: &Weight, delta: i64) -> LaurentHalf {
    value.shift(delta * (rs.norm_scaled(mu) - rs.norm_scaled(&rs.rho)))
}

/// J-value of the 0-framed link at dominant regular colors.
pub fn link_j0(rs: &RootSystem, link: &FramedLink, colors: &[Weight]) -> Result<LaurentHalf> {
    if colors.len() != link.components() {
        return Err(Error::bad(format!(
            "expected {} colors, got {}",
            link.components(),
            colors.len()
        )));
    }
    match link {
        FramedLink::Special(SpecialLink::Unknot { .. }) => Ok(quantum_dim(rs, &colors[0])),
        FramedLink::Special(SpecialLink::Hopf { .. }) => hopf_entry(rs, &colors[0], &colors[1]),
        FramedLink::Special(SpecialLink::Trefoil { chirality, .. }) => {
            require_sl2(rs)?;
            Ok(jones_trefoil(colors[0].0[0] as u32, *chirality))
        }
        FramedLink::Special(SpecialLink::FigureEight { .. }) => {
            require_sl2(rs)?;
            Ok(jones_fig8(colors[0].0[0] as u32))
        }
        FramedLink::Braid(b) => {
            require_sl2(rs)?;
            let n: Vec<u32> = colors.iter().map(|c| c.0[0] as u32).collect();
            braid_jones_sl2(b, &n, &rs.limits)
        }
    }
}

/// Framed Q_L at arbitrary colors in X, extended by W-invariance and zero on walls.
pub fn link_q(rs: &RootSystem, link: &FramedLink, colors: &[Weight]) -> Result<LaurentHalf> {
    let mut dom = Vec::with_capacity(colors.len());
    for mu in colors {
        let (w, _, wall) = rs.dominant_reduce(mu);
        if wall {
            return Ok(LaurentHalf::zero(rs.big_d));
        }
        dom.push(w);
    }
    let j0 = link_j0(rs, link, &dom)?;
    let mut q = q_normalize(rs, &dom, &j0);
    for (mu, b) in dom.iter().zip(link.framings()) {
        q = framing_shift(rs, &q, mu, b);
    }
    Ok(q)
}

/// Integrality exponent p (times big_d) for shifted colors mu_j, using nu_j = mu_j - rho.
pub fn integrality_exponent_scaled(rs: &RootSystem, linking: &[Vec<i64>], colors: &[Weight]) -> i64 {
    let nus: Vec<Weight> = colors.iter().map(|m| m - &rs.rho).collect();
    let two_rho = rs.rho.scale(2);
    let mut p = 0;
    for i in 0..nus.len() {
        for j in 0..nus.len() {
            p += linking[i][j] * rs.inner_scaled(&nus[i], &nus[j]);
        }
        p += linking[i][i] * rs.inner_scaled(&two_rho, &nus[i]);
    }
    p
}

/// True when q^(-p/2) * value has only integral powers of q.
pub fn has_integrality_exponent(rs: &RootSystem, value: &LaurentHalf, p_scaled: i64) -> bool {
    // q^(p/2) is p_scaled units of q^(1/2D)
    let two_d = 2 * rs.big_d;
    value.terms().all(|(e, _)| (e - p_scaled).rem_euclid(two_d) == 0)
}

/// All primitive exponents a modulo m.
pub fn units_mod(m: i64) -> Vec<u64> {
    (1..m).filter(|a| a.gcd(&m) == 1).map(|a| a as u64).collect()
}

fn equal_at_all_roots(a: &LaurentHalf, b: &LaurentHalf, m: i64) -> Result<bool> {
    let diff = (a - b).to_powersum(m as usize);
    for u in units_mod(m) {
        let f = CycField::new(m as u64, u)?;
        if !diff.to_cyc(&f).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_colors_sl2(rs: &RootSystem, link: &FramedLink) -> Result<()> {
    if link.sl2_only() {
        require_sl2(rs)?;
    }
    Ok(())
}

/// First symmetry principle on `samples` random affine images of the colors.
pub fn symmetry1_check(
    rs: &RootSystem,
    r: i64,
    link: &FramedLink,
    colors: &[Weight],
    samples: usize,
    seed: u64,
) -> Result<bool> {
    check_colors_sl2(rs, link)?;
    let dom = LatticeDomain::new(rs, r)?;
    let m = 2 * rs.big_d * r;
    let lk = link.linking_matrix();
    let base = link_q(rs, link, colors)?;
    let base_reduced: Vec<_> = colors.iter().map(|c| dom.affine_reduce(c)).collect();
    let base_wall = base_reduced.iter().any(|a| a.on_boundary);
    if base_wall && !equal_at_all_roots(&base, &LaurentHalf::zero(rs.big_d), m)? {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let images: Vec<Weight> = colors
            .iter()
            .map(|c| {
                let mut w = c.clone();
                let len = rng.gen_range(1..=6);
                for _ in 0..len {
                    w = dom.apply_generator(&w, rng.gen_range(0..dom.generator_count()));
                }
                w
            })
            .collect();
        let val = link_q(rs, link, &images)?;
        if !equal_at_all_roots(&val, &base, m)? {
            return Ok(false);
        }
        // integrality exponent of the dominant representatives
        let reps: Vec<Weight> = images.iter().map(|w| rs.dominant_reduce(w).0).collect();
        if !val.is_zero() && !has_integrality_exponent(rs, &val, integrality_exponent_scaled(rs, &lk, &reps)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Second symmetry principle for colors in the closed alcove and chosen center elements.
pub fn symmetry2_check(
    rs: &RootSystem,
    r: i64,
    link: &FramedLink,
    colors: &[Weight],
    gs: &[CenterElement],
) -> Result<bool> {
    check_colors_sl2(rs, link)?;
    let dom = LatticeDomain::new(rs, r)?;
    if gs.len() != colors.len() {
        return Err(Error::bad("one center element per component is required"));
    }
    if colors.iter().any(|c| !dom.in_closed_alcove(c)) {
        return Err(Error::bad("colors must lie in the closed alcove"));
    }
    let m = 2 * rs.big_d * r;
    let lk = link.linking_matrix();
    let moved: Vec<Weight> = colors.iter().zip(gs).map(|(c, g)| dom.center_action(g, c)).collect();
    let lhs = link_q(rs, link, &moved)?;
    let mut t_scaled = 0i64;
    for i in 0..colors.len() {
        for j in 0..colors.len() {
            t_scaled += (r - rs.h) * lk[i][j] * rs.inner_scaled(&gs[i].lift, &gs[j].lift);
            t_scaled += 2 * lk[i][j] * rs.inner_scaled(&gs[i].lift, &(&colors[j] - &rs.rho));
        }
    }
    // q^(rt/2) = q^(1/2D)^(D r t)
    let rhs = link_q(rs, link, colors)?.shift(r * t_scaled);
    equal_at_all_roots(&lhs, &rhs, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::weight;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn braiding_inverse_is_identity() {
        for (p, qd) in [(2, 2), (2, 3), (3, 4)] {
            let pos = braiding_table(p, qd, 1);
            let neg = braiding_table(qd, p, -1);
            for i in 0..p {
                for j in 0..qd {
                    let mut out: HashMap<(usize, usize), LaurentHalf> = HashMap::new();
                    for (a, b, c) in &pos[i * qd + j] {
                        for (x, y, d) in &neg[a * p + b] {
                            let e = out.entry((*x, *y)).or_insert_with(|| LaurentHalf::zero(SL2_D));
                            *e = &*e + &(c * d);
                        }
                    }
                    for ((x, y), v) in out {
                        let expect = if (x, y) == (i, j) { LaurentHalf::one(SL2_D) } else { LaurentHalf::zero(SL2_D) };
                        assert_eq!(v, expect, "p={p} q={qd} ({i},{j})->({x},{y})");
                    }
                }
            }
        }
    }

    #[test]
    fn unknot_closures() {
        for n in 1..5u32 {
            let b0 = BraidLink::from_word(1, vec![], vec![0]).unwrap();
            assert_eq!(braid_jones_sl2(&b0, &[n], &lim()).unwrap(), qint(SL2_D, n as i64));
            for w in [vec![1], vec![-1]] {
                let b = BraidLink::from_word(2, w, vec![0]).unwrap();
                assert_eq!(braid_jones_sl2(&b, &[n], &lim()).unwrap(), qint(SL2_D, n as i64));
            }
        }
    }

    #[test]
    fn trefoil_and_figure_eight_closures() {
        for n in 1..5u32 {
            let t = BraidLink::from_word(2, vec![1, 1, 1], vec![0]).unwrap();
            assert_eq!(braid_jones_sl2(&t, &[n], &lim()).unwrap(), jones_trefoil(n, Chirality::Right), "N={n}");
            let f = BraidLink::from_word(3, vec![1, -2, 1, -2], vec![0]).unwrap();
            assert_eq!(braid_jones_sl2(&f, &[n], &lim()).unwrap(), jones_fig8(n), "N={n}");
        }
    }

    #[test]
    fn hopf_closure_matches_weyl_sum() {
        let rs = RootSystem::from_label("A1").unwrap();
        let b = BraidLink::from_word(2, vec![1, 1], vec![0, 0]).unwrap();
        for n1 in 1..4u32 {
            for n2 in 1..4u32 {
                let got = braid_jones_sl2(&b, &[n1, n2], &lim()).unwrap();
                let want = hopf_entry(&rs, &weight(&[n1 as i64]), &weight(&[n2 as i64])).unwrap();
                assert_eq!(got, want);
            }
        }
    }
}
