//! Formal Picard monomials, Ikari data, monodromy of the coefficient system
//! and Sym-power bookkeeping for the semiorthogonal pieces.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::skeleton::{Chamber, Flag};
use crate::zlin::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PicError {
    #[error("generator count mismatch: {0} vs {1}")]
    Arity(usize, usize),
    #[error("cannot parse monomial {0:?}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// `L1^e1 L2^e2 ...` as an exponent vector; the unit is the zero vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PicMonomial {
    pub exponents: Vec<i64>,
}

impl PicMonomial {
    pub fn unit(n: usize) -> Self {
        PicMonomial { exponents: vec![0; n] }
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        PicMonomial { exponents: e }
    }

    pub fn new(exponents: Vec<i64>) -> Self {
        PicMonomial { exponents }
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_unit(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn pow(&self, k: i64) -> Self {
        PicMonomial { exponents: self.exponents.iter().map(|e| e * k).collect() }
    }

    /// Parses `"1"`, `"L1"`, `"L1^-1 L2^3"`; generators not mentioned get
    /// exponent 0. Repeated generators multiply.
    pub fn parse(s: &str, n: usize) -> Result<Self, PicError> {
        let mut e = vec![0i64; n];
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(PicMonomial { exponents: e });
        }
        for tok in s.split_whitespace() {
            let bad = || PicError::Parse(s.to_string());
            let body = tok.strip_prefix('L').ok_or_else(bad)?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, x)) => (i, x.parse::<i64>().map_err(|_| bad())?),
                None => (body, 1),
            };
            let i: usize = idx.parse().map_err(|_| bad())?;
            if i == 0 || i > n {
                return Err(bad());
            }
            e[i - 1] += exp;
        }
        Ok(PicMonomial { exponents: e })
    }

    /// Display with custom generator names, e.g. `["L", "M"]`.
    pub fn render(&self, names: &[&str]) -> String {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| if e == 1 { names[i].to_string() } else { format!("{}^{}", names[i], e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Display for PicMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.n()).map(|i| format!("L{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.render(&refs))
    }
}

/// Lossless form used in JSON: `{"n": 2, "monomial": "L1^-1 L2"}`.
#[derive(Serialize, Deserialize)]
struct PicRepr {
    n: usize,
    monomial: String,
}

impl Serialize for PicMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PicRepr { n: self.n(), monomial: self.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PicMonomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = PicRepr::deserialize(d)?;
        PicMonomial::parse(&r.monomial, r.n).map_err(serde::de::Error::custom)
    }
}

impl FromStr for PicMonomial {
    type Err = PicError;
    /// Infers the generator count from the largest index mentioned.
    fn from_str(s: &str) -> Result<Self, PicError> {
        let n = s
            .split_whitespace()
            .filter_map(|t| t.strip_prefix('L'))
            .filter_map(|b| b.split('^').next()?.parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        PicMonomial::parse(s, n)
    }
}

pub fn pic_mul(a: &PicMonomial, b: &PicMonomial) -> Result<PicMonomial, PicError> {
    if a.n() != b.n() {
        return Err(PicError::Arity(a.n(), b.n()));
    }
    Ok(PicMonomial { exponents: a.exponents.iter().zip(&b.exponents).map(|(x, y)| x + y).collect() })
}

pub fn pic_inv(a: &PicMonomial) -> PicMonomial {
    a.pow(-1)
}

/// Product of `gens[i]^t[i]`.
pub fn pic_power_product(gens: &[PicMonomial], t: &[i64], n: usize) -> PicMonomial {
    let mut out = PicMonomial::unit(n);
    for (g, &k) in gens.iter().zip(t) {
        out = pic_mul(&out, &g.pow(k)).expect("generator arity");
    }
    out
}

/// `E: L^vee = Z^l -> Pic = Z^g`, columns are the line bundles attached to
/// the dual basis of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ikari {
    pub matrix: IntMatrix,
}

impl Ikari {
    pub fn from_bundles(bundles: &[PicMonomial], g: usize) -> Self {
        let cols: Vec<Vec<BigInt>> = bundles.iter().map(|b| b.exponents.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Ikari { matrix: IntMatrix::from_columns(&cols, g) }
    }
}

/// The composite `M -> L^vee -> Pic` as a `g x r` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyData {
    pub matrix: IntMatrix,
}

impl MonodromyData {
    /// Image of the `i`-th basis loop of `M`.
    pub fn loop_image(&self, i: usize) -> PicMonomial {
        PicMonomial { exponents: self.matrix.column(i).iter().map(|x| x.to_i64().expect("exponent")).collect() }
    }

    pub fn loop_images(&self) -> Vec<PicMonomial> {
        (0..self.matrix.cols()).map(|i| self.loop_image(i)).collect()
    }

    pub fn generator_count(&self) -> usize {
        self.matrix.rows()
    }
}

/// `-E ∘ beta^vee`, where `beta` is `r x l` (so `beta^vee` is `l x r`).
pub fn monodromy(beta: &IntMatrix, ikari: &Ikari) -> Result<MonodromyData, PicError> {
    if ikari.matrix.cols() != beta.cols() {
        return Err(PicError::Shape(format!(
            "ikari has {} columns but beta has source rank {}",
            ikari.matrix.cols(),
            beta.cols()
        )));
    }
    Ok(MonodromyData { matrix: ikari.matrix.mul(&beta.transpose()).neg() })
}

/// Monomials `L1^a1 ... Ln^an` with `sum a_i <= k`, in graded lex order.
pub fn sym_expand(k: usize, n: usize) -> Vec<PicMonomial> {
    let mut out = Vec::new();
    for total in 0..=k {
        let mut cur = vec![0i64; n];
        compositions(total as i64, 0, &mut cur, &mut out);
    }
    out
}

fn compositions(rest: i64, i: usize, cur: &mut Vec<i64>, out: &mut Vec<PicMonomial>) {
    if i == cur.len() {
        if rest == 0 {
            out.push(PicMonomial { exponents: cur.clone() });
        }
        return;
    }
    for a in (0..=rest).rev() {
        cur[i] = a;
        compositions(rest - a, i + 1, cur, out);
    }
    cur[i] = 0;
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k || n < 0 {
        return BigInt::from(0);
    }
    let mut r = BigInt::from(1);
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Generalized binomial `C(m, k)` for any integer `m` and `k >= 0`.
pub fn binomial_signed(m: i64, k: i64) -> BigInt {
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..k {
        num *= BigInt::from(m - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// `a_k ⊗ prefix ⊗ Sym^power E`, or zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SodLabel {
    Zero,
    Bundle { component: usize, prefix: PicMonomial, sym_power: usize },
}

impl SodLabel {
    /// Rank over a point, with `E` of rank `n + 1`.
    pub fn rank(&self, n: usize) -> usize {
        match self {
            SodLabel::Zero => 0,
            SodLabel::Bundle { sym_power, .. } => {
                binomial((n + sym_power) as i64, n as i64).to_usize().expect("rank")
            }
        }
    }
}

impl fmt::Display for SodLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SodLabel::Zero => write!(f, "0"),
            SodLabel::Bundle { component, prefix, sym_power } => {
                write!(f, "a{component}")?;
                if !prefix.is_unit() {
                    write!(f, "·{prefix}")?;
                }
                if *sym_power > 0 {
                    write!(f, "·Sym^{sym_power}E")?;
                }
                Ok(())
            }
        }
    }
}

/// Entry of the `k`-th component table: a chamber of step `i < k` with
/// small coordinates `S = {m_1..m_j}` carries `a_k L_{m_1}..L_{m_j}
/// Sym^{k-i-1} E`; chambers of step `>= k` carry zero.
pub fn sod_label(n: usize, k: usize, chamber: &Chamber) -> SodLabel {
    assert!(k >= 1 && k <= n + 1, "component index out of range");
    let i = chamber.step();
    if i >= k {
        return SodLabel::Zero;
    }
    let exps: Vec<i64> = chamber.flags.iter().map(|f| i64::from(*f == Flag::S)).collect();
    SodLabel::Bundle { component: k, prefix: PicMonomial::new(exps), sym_power: k - i - 1 }
}
