//! JSON shapes emitted by the command-line driver.

use num_rational::BigRational;
use qtau::cyclo::{integrality_witness, CycField, CycNum};
use qtau::lie::Limits;
use qtau::manifold::{InvariantResult, SignatureData};
use qtau::perturbative::CongruenceReport;
use qtau::{Error, Result};
use serde::{Deserialize, Serialize};

/// An element of Q(x) / Phi_m(x), with zeta = x^a, coefficients lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactValue {
    pub m: u64,
    pub a: u64,
    pub coeffs: Vec<String>,
}

impl ExactValue {
    pub fn from_cyc(x: &CycNum) -> Self {
        ExactValue { m: x.field.m, a: x.field.a, coeffs: x.to_string_coeffs() }
    }

    pub fn to_cyc(&self) -> Result<CycNum> {
        let field = CycField::new(self.m, self.a)?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(|_| Error::bad(format!("bad rational '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycNum::from_poly(&field, &coeffs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Approx {
    pub re: String,
    pub im: String,
}

impl Approx {
    pub fn of(x: &CycNum, digits: usize) -> Self {
        let (re, im) = x.to_complex();
        Approx { re: fixed(re, digits), im: fixed(im, digits) }
    }
}

fn fixed(v: f64, digits: usize) -> String {
    let s = format!("{v:.digits$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rational {
    pub num: String,
    pub den: String,
}

impl Rational {
    pub fn of(q: &BigRational) -> Self {
        Rational { num: q.numer().to_string(), den: q.denom().to_string() }
    }
}

/// Echo of the validated job configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Job {
    pub algebra: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta_exponent: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flavors: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub primes: Vec<i64>,
    pub limits: Limits,
    pub digits: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Signature {
    pub sigma_plus: usize,
    pub sigma_minus: usize,
    pub sigma_zero: usize,
}

impl From<&SignatureData> for Signature {
    fn from(s: &SignatureData) -> Self {
        Signature { sigma_plus: s.sigma_plus, sigma_minus: s.sigma_minus, sigma_zero: s.sigma_zero }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InvariantEntry {
    pub flavor: String,
    pub defined: bool,
    pub admissible: bool,
    pub integral: bool,
    pub value: ExactValue,
    pub approx: Approx,
    pub signature: Signature,
}

impl InvariantEntry {
    pub fn new(res: &InvariantResult, digits: usize) -> Self {
        InvariantEntry {
            flavor: res.flavor.to_string(),
            defined: res.defined,
            admissible: res.admissible,
            integral: integrality_witness(&res.value).integral,
            value: ExactValue::from_cyc(&res.value),
            approx: Approx::of(&res.value, digits),
            signature: (&res.signature).into(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub case: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Residues {
    pub r: u64,
    pub legendre: i64,
    pub residues: Vec<u64>,
    pub expected: Vec<u64>,
    pub pass: bool,
}

impl From<CongruenceReport> for Residues {
    fn from(c: CongruenceReport) -> Self {
        Residues { r: c.r, legendre: c.legendre, residues: c.residues, expected: c.expected, pass: c.pass }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesResult {
    pub provenance: String,
    pub coeffs: Vec<Rational>,
    pub residues: Vec<Residues>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Payload {
    Invariant { invariants: Vec<InvariantEntry> },
    Verify { suite: String, cases: Vec<CaseOutcome>, passed: usize, failed: usize },
    Series { series: SeriesResult },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub class: String,
    pub message: String,
}

/// Top-level record written once per run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultRecord {
    pub command: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub job: Option<Job>,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub payload: Option<Payload>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}
