//! Degree sequences, quasi-polynomial fits, Jones slopes, the Sign Condition
//! and Condition δ, and closed-form degree predictors.
//!
//! `δ_K(n)` is the maximum degree of the unnormalized `J_{K,n}` and
//! `δ'_K(n)` that of `J'_{K,n}`; they are related by `δ'(n) = δ(n+1) − n/2`.
//! Thresholds found by fitting are empirical: they describe the sampled range.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knots::{Engine, KnotError, KnotExpr};
use crate::laurent::Q;

/// Points per residue class that must lie on the fitted quadratic.
pub const MIN_TAIL: usize = 5;

#[derive(Debug, Error)]
pub enum DegreeError {
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error("no quasi-polynomial of period 1 or 2 fits the tail; residuals (n, value - fit): {}", fmt_residuals(.residuals))]
    NoFit { residuals: Vec<(u32, Q)> },
    #[error("need at least {need} points per residue class, got {got}")]
    TooShort { need: usize, got: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("empty color range")]
    EmptyRange,
}

fn fmt_residuals(r: &[(u32, Q)]) -> String {
    r.iter().map(|(n, v)| format!("({n}, {v})")).collect::<Vec<_>>().join(" ")
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

fn half() -> Q {
    q(1, 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extreme {
    Max,
    Min,
}

/// `a(n) n² + b(n) n + c(n)` with coefficients depending on `n mod period`,
/// valid for `n ≥ threshold`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPoly {
    coeffs: Vec<[Q; 3]>,
    threshold: u32,
}

impl QuasiPoly {
    /// `coeffs[r]` applies to `n ≡ r (mod coeffs.len())`. Identical classes
    /// collapse to period 1.
    pub fn new(mut coeffs: Vec<[Q; 3]>, threshold: u32) -> QuasiPoly {
        assert!(matches!(coeffs.len(), 1 | 2), "period must be 1 or 2");
        if coeffs.len() == 2 && coeffs[0] == coeffs[1] {
            coeffs.pop();
        }
        QuasiPoly { coeffs, threshold }
    }

    pub fn poly(a: Q, b: Q, c: Q) -> QuasiPoly {
        QuasiPoly::new(vec![[a, b, c]], 0)
    }

    pub fn with_threshold(mut self, threshold: u32) -> QuasiPoly {
        self.threshold = threshold;
        self
    }

    pub fn period(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn coeffs(&self) -> &[[Q; 3]] {
        &self.coeffs
    }

    pub fn threshold(&self) -> u32 {
        self.threshold
    }

    pub fn at(&self, n: u32) -> &[Q; 3] {
        &self.coeffs[(n % self.period()) as usize]
    }

    pub fn eval(&self, n: u32) -> Q {
        let [a, b, c] = self.at(n);
        let x = Q::from_integer(n as i64);
        a * x * x + b * x + c
    }

    /// `(a, b)` when neither depends on the parity of `n`.
    pub fn uniform_ab(&self) -> Option<(Q, Q)> {
        let [a, b, _] = self.coeffs[0];
        self.coeffs.iter().all(|c| c[0] == a && c[1] == b).then_some((a, b))
    }
}

impl fmt::Display for QuasiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, [a, b, c]) in self.coeffs.iter().enumerate() {
            if r > 0 {
                write!(f, "; ")?;
            }
            if self.period() == 2 {
                write!(f, "[n≡{r}] ")?;
            }
            write!(f, "({a})n^2 + ({b})n + ({c})")?;
        }
        write!(f, " for n >= {}", self.threshold)
    }
}

/// Extreme degrees of `J'_{K,n}` (normalized) or `J_{K,n}` over `ns`, in order.
pub fn degree_sequence(
    engine: &Engine,
    k: &KnotExpr,
    ns: RangeInclusive<u32>,
    which: Extreme,
    normalized: bool,
) -> Result<Vec<Q>, KnotError> {
    let ns: Vec<u32> = ns.collect();
    ns.par_iter()
        .map(|&n| {
            let p = if normalized { (*engine.cj_prime(k, n)?).clone() } else { engine.cj_unnormalized(k, n)? };
            let d = match which {
                Extreme::Max => p.d_plus(),
                Extreme::Min => p.d_minus(),
            };
            Ok(d.expect("colored Jones polynomials are nonzero"))
        })
        .collect()
}

/// Quadratic through three points with distinct abscissae.
fn interpolate(pts: &[(u32, Q)]) -> [Q; 3] {
    let x = |i: usize| Q::from_integer(pts[i].0 as i64);
    let (v0, v1, v2) = (pts[0].1, pts[1].1, pts[2].1);
    let d1 = (v1 - v0) / (x(1) - x(0));
    let d2 = (v2 - v1) / (x(2) - x(1));
    let a = (d2 - d1) / (x(2) - x(0));
    let b = d1 - a * (x(0) + x(1));
    let c = v0 - a * x(0) * x(0) - b * x(0);
    [a, b, c]
}

/// Fits `seq[i]` (the value at `n = n_offset + i`) by a quasi-polynomial of
/// minimal period, then minimal threshold.
pub fn fit_quasipoly(seq: &[Q], n_offset: u32) -> Result<QuasiPoly, DegreeError> {
    let pts: Vec<(u32, Q)> = seq.iter().enumerate().map(|(i, v)| (n_offset + i as u32, *v)).collect();
    let mut residuals = Vec::new();
    for p in [1u32, 2] {
        let classes: Vec<Vec<(u32, Q)>> =
            (0..p).map(|r| pts.iter().copied().filter(|(n, _)| n % p == r).collect()).collect();
        if let Some(short) = classes.iter().map(Vec::len).find(|&l| l < MIN_TAIL) {
            return Err(DegreeError::TooShort { need: MIN_TAIL, got: short });
        }
        let mut coeffs = Vec::new();
        let mut threshold = n_offset;
        let mut tail_ok = true;
        residuals.clear();
        for class in &classes {
            let c = interpolate(&class[class.len() - 3..]);
            let qp = QuasiPoly::poly(c[0], c[1], c[2]);
            for &(n, v) in &class[class.len() - MIN_TAIL..] {
                let r = v - qp.eval(n);
                if !r.is_zero() {
                    tail_ok = false;
                }
                residuals.push((n, r));
            }
            if let Some(&(n, _)) = class.iter().rev().find(|(n, v)| *v != qp.eval(*n)) {
                threshold = threshold.max(n + 1);
            }
            coeffs.push(c);
        }
        if tail_ok {
            return Ok(QuasiPoly::new(coeffs, threshold));
        }
    }
    residuals.sort_by_key(|r| r.0);
    Err(DegreeError::NoFit { residuals })
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SlopeData {
    pub js: BTreeSet<Q>,
    pub jx: BTreeSet<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionDelta {
    Pass,
    Fail(String),
}

impl fmt::Display for ConditionDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionDelta::Pass => write!(f, "pass"),
            ConditionDelta::Fail(r) => write!(f, "fail: {r}"),
        }
    }
}

/// `js = {4a}`, `jx = {2b}`, and Condition δ: `a`, `b` independent of the
/// parity of `n`, `b ≤ 0`, `4a ∈ ℤ`, and `b = 0 ⟹ a ≠ 0`.
pub fn slopes_and_conditions(qp: &QuasiPoly) -> (SlopeData, ConditionDelta) {
    let mut sd = SlopeData::default();
    for [a, b, _] in qp.coeffs() {
        sd.js.insert(a * Q::from_integer(4));
        sd.jx.insert(b * Q::from_integer(2));
    }
    let cond = match qp.uniform_ab() {
        None => ConditionDelta::Fail("quadratic or linear coefficient depends on the parity of n".into()),
        Some((_, b)) if b.is_positive() => ConditionDelta::Fail(format!("b = {b} > 0")),
        Some((a, _)) if !(a * Q::from_integer(4)).is_integer() => {
            ConditionDelta::Fail(format!("4a = {} is not an integer", a * Q::from_integer(4)))
        }
        Some((a, b)) if b.is_zero() && a.is_zero() => ConditionDelta::Fail("a = b = 0".into()),
        Some(_) => ConditionDelta::Pass,
    };
    (sd, cond)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignVerdict {
    Satisfied,
    /// `m ≡ n (mod 2)` with `ε_m ≠ ε_n`.
    Violated { m: u32, n: u32 },
}

/// Signs of the leading coefficients of `J_{K,n}` over a sampled range.
/// A `Satisfied` verdict covers only the sampled colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignRecord {
    pub signs: Vec<(u32, i8)>,
    pub verdict: SignVerdict,
}

pub fn sign_record_from_signs(signs: Vec<(u32, i8)>) -> SignRecord {
    let mut first: [Option<(u32, i8)>; 2] = [None, None];
    let mut verdict = SignVerdict::Satisfied;
    for &(n, s) in &signs {
        match first[(n % 2) as usize] {
            None => first[(n % 2) as usize] = Some((n, s)),
            Some((m, t)) if t != s => {
                verdict = SignVerdict::Violated { m, n };
                break;
            }
            Some(_) => {}
        }
    }
    SignRecord { signs, verdict }
}

pub fn sign_condition_check(engine: &Engine, k: &KnotExpr, ns: RangeInclusive<u32>) -> Result<SignRecord, DegreeError> {
    if ns.is_empty() {
        return Err(DegreeError::EmptyRange);
    }
    let ns: Vec<u32> = ns.collect();
    let signs = ns
        .par_iter()
        .map(|&n| {
            let j = engine.cj_unnormalized(k, n.max(1))?;
            let (_, c) = j.lead().expect("colored Jones polynomials are nonzero");
            Ok((n, if c.is_negative() { -1 } else { 1 }))
        })
        .collect::<Result<Vec<_>, KnotError>>()?;
    Ok(sign_record_from_signs(signs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `δ → δ'` with `δ'(n) = δ(n+1) − n/2`.
    ToNormalized,
    /// `δ' → δ` with `δ(n) = δ'(n−1) + n/2 − 1/2`.
    ToUnnormalized,
}

/// Moves a quasi-polynomial between the `J` and `J'` conventions. The
/// threshold moves by one; `ToNormalized` clamps it at zero, so a round trip
/// starting from threshold 0 returns threshold 1.
pub fn normalize_transform(qp: &QuasiPoly, dir: Direction) -> QuasiPoly {
    let p = qp.period();
    let coeffs = (0..p)
        .map(|rho| match dir {
            Direction::ToNormalized => {
                let [a, b, c] = *qp.at(rho + 1);
                [a, a * 2 + b - half(), a + b + c]
            }
            Direction::ToUnnormalized => {
                let [al, be, ga] = *qp.at(rho + p - 1);
                [al, be - al * 2 + half(), al - be + ga - half()]
            }
        })
        .collect();
    let threshold = match dir {
        Direction::ToNormalized => qp.threshold().saturating_sub(1),
        Direction::ToUnnormalized => qp.threshold() + 1,
    };
    QuasiPoly::new(coeffs, threshold)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `a₁` above the threshold `τ/4` (ω > 0) or `τ/4 + 1/8` (ω < 0).
    Above,
    Below,
    /// `a₁` equal to the threshold with `b₁ ≠ 0`.
    AtThreshold,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhiteheadPrediction {
    pub delta: QuasiPoly,
    pub branch: Branch,
    /// True when the formula is claimed for every `n ≥ 1`; otherwise it holds
    /// for suitably large `n` only.
    pub valid_for_all_n: bool,
}

pub fn a1_threshold(omega: i64, tau: i64) -> Q {
    let t = q(tau, 4);
    if omega > 0 {
        t
    } else {
        t + q(1, 8)
    }
}

/// `δ_{W_ω^τ(K)}` from `(a₁, b₁, c₁)`, the coefficients of `δ_K` on odd `n`.
///
/// The sub-threshold constant for ω > 0 is `a₁ + b₁ + c₁` (the normalized
/// constant `γ₀` carried back), or `C₊(K, τ)` when supplied.
pub fn predict_whitehead_delta(
    a1: Q,
    b1: Q,
    c1: Q,
    omega: i64,
    tau: i64,
    c_plus: Option<Q>,
) -> Result<WhiteheadPrediction, DegreeError> {
    if omega == 0 {
        return Err(DegreeError::HypothesisViolated("omega must be nonzero".into()));
    }
    if b1.is_positive() {
        return Err(DegreeError::HypothesisViolated(format!("b1 = {b1} > 0")));
    }
    let t = a1_threshold(omega, tau);
    if b1.is_zero() && a1 == t {
        return Err(DegreeError::HypothesisViolated(format!("b1 = 0 and a1 = {t} lies on the branch threshold")));
    }
    if c_plus.is_some() && omega < 0 {
        return Err(DegreeError::HypothesisViolated("the sign-condition constant applies to omega > 0 only".into()));
    }
    let branch = if a1 > t {
        Branch::Above
    } else if a1 < t {
        Branch::Below
    } else {
        Branch::AtThreshold
    };
    let (w, ta) = (Q::from_integer(omega), Q::from_integer(tau));
    let four = Q::from_integer(4);
    let coeffs = match (omega > 0, branch) {
        (true, Branch::Above) => [a1 * four - ta, -a1 * four + b1 * 2 + ta - half(), a1 - b1 + c1 + half()],
        (true, _) => [Q::zero(), -half(), c_plus.unwrap_or(a1 + b1 + c1) + half()],
        (false, Branch::Above) => {
            [a1 * four - ta - w - half(), -a1 * four + b1 * 2 + w + ta + Q::one(), a1 - b1 + c1 - half()]
        }
        (false, _) => [-w, w + half(), a1 + b1 + c1 - half()],
    };
    Ok(WhiteheadPrediction {
        delta: QuasiPoly::new(vec![coeffs], 1),
        branch,
        valid_for_all_n: branch != Branch::Above && c_plus.is_none(),
    })
}

/// Smallest maximizer `k₀` of `−τk² − (τ−1)k + degs[k]` and the maximum,
/// where `degs[k] = d₊[J'_{K,2k}]`.
pub fn c_plus_from_table(tau: i64, degs: &[Q]) -> (Q, u32) {
    let mut best: Option<(Q, u32)> = None;
    for (k, d) in degs.iter().enumerate() {
        let kk = k as i64;
        let v = Q::from_integer(-tau * kk * kk - (tau - 1) * kk) + d;
        if best.is_none_or(|(b, _)| v > b) {
            best = Some((v, k as u32));
        }
    }
    best.expect("degree table is nonempty")
}

pub fn compute_c_plus(engine: &Engine, k: &KnotExpr, tau: i64, n_prime: u32) -> Result<(Q, u32), KnotError> {
    let degs = (0..=n_prime)
        .map(|kk| Ok(engine.cj_prime(k, 2 * kk)?.d_plus().expect("nonzero")))
        .collect::<Result<Vec<_>, KnotError>>()?;
    Ok(c_plus_from_table(tau, &degs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `T(p, q)`; a negative product means the mirror of `T(|p|, |q|)`.
    Torus { p: i64, q: i64 },
    /// The `(p, q)`-cable of a knot with degree quasi-polynomial `inner`.
    Cable { p: i64, q: i64, inner: QuasiPoly },
    Sum(QuasiPoly, QuasiPoly),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyPrediction {
    pub delta: QuasiPoly,
    /// The constant term omits an undetermined parity-dependent constant.
    pub constant_unknown: bool,
}

pub fn predict_family_delta(family: &Family) -> Result<FamilyPrediction, DegreeError> {
    let known = |delta| Ok(FamilyPrediction { delta, constant_unknown: false });
    match family {
        Family::Torus { p, q: qq } => {
            let (pa, qa) = (p.abs(), qq.abs());
            if pa < 2 || qa < 2 || num_integer::gcd(pa, qa) != 1 {
                return Err(DegreeError::HypothesisViolated(format!("torus({p},{qq}) is not a nontrivial torus knot")));
            }
            if (*p < 0) != (*qq < 0) {
                let e = q(pa * qa - pa - qa, 2);
                return known(QuasiPoly::new(vec![[Q::zero(), -e, e]], 1));
            }
            let pq = q(pa * qa, 4);
            let even = [pq, Q::zero(), -pq - q((pa - 2) * (qa - 2), 4)];
            let odd = [pq, Q::zero(), -pq];
            known(QuasiPoly::new(vec![even, odd], 1))
        }
        Family::Cable { p, q: qq, inner } => {
            if *qq <= 1 {
                return Err(DegreeError::HypothesisViolated(format!("cable needs q > 1, got {qq}")));
            }
            let Some((a, b)) = inner.uniform_ab() else {
                return Err(DegreeError::HypothesisViolated("inner a, b depend on the parity of n".into()));
            };
            let (pp, qf) = (Q::from_integer(*p), Q::from_integer(*qq));
            if pp / qf < a * 4 {
                let aa = qf * qf * a;
                let bb = qf * b + (qf - 1) * (pp - qf * a * 4) / 2;
                let coeffs = (0..2u32)
                    .map(|r| {
                        let i = ((*qq as u32 % 2) * ((r + 1) % 2) + 1) % 2;
                        let c = a * (qf - 1) * (qf - 1) - (b + pp / 2) * (qf - 1) + inner.at(i)[2];
                        [aa, bb, c]
                    })
                    .collect();
                known(QuasiPoly::new(coeffs, inner.threshold()))
            } else {
                let pq = pp * qf / 4;
                Ok(FamilyPrediction { delta: QuasiPoly::poly(pq, Q::zero(), -pq), constant_unknown: true })
            }
        }
        Family::Sum(x, y) => {
            let p = x.period().max(y.period());
            let coeffs = (0..p)
                .map(|r| {
                    let (u, v) = (x.at(r), y.at(r));
                    [u[0] + v[0], u[1] + v[1] - half(), u[2] + v[2] + half()]
                })
                .collect();
            known(QuasiPoly::new(coeffs, x.threshold().max(y.threshold())))
        }
    }
}

/// Machine-readable fit summary. Rationals are reduced `num/den` strings
/// (integers print without a denominator).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitReport {
    pub period: u32,
    pub coeffs: Vec<[String; 3]>,
    pub threshold: u32,
    pub js: Vec<String>,
    pub jx: Vec<String>,
    pub condition_delta: String,
    pub sign_condition: Option<String>,
}

impl FitReport {
    pub fn new(qp: &QuasiPoly, sign: Option<&SignRecord>) -> FitReport {
        let (sd, cond) = slopes_and_conditions(qp);
        FitReport {
            period: qp.period(),
            coeffs: qp.coeffs().iter().map(|c| c.map(|x| x.to_string())).collect(),
            threshold: qp.threshold(),
            js: sd.js.iter().map(Q::to_string).collect(),
            jx: sd.jx.iter().map(Q::to_string).collect(),
            condition_delta: cond.to_string(),
            sign_condition: sign.map(|s| match s.verdict {
                SignVerdict::Satisfied => "satisfied".to_string(),
                SignVerdict::Violated { m, n } => format!("violated at ({m}, {n})"),
            }),
        }
    }
}
