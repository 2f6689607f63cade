//! Essential-surface data for the two-bridge links `[2, 2ω, −2]`, whose
//! components are the companion solid torus core `k₁` and the pattern knot
//! `k₂`, and the glued surfaces realizing Jones slopes of Whitehead doubles.
//!
//! Slopes are in canonical framing. Coordinate 1 refers to `k₁` (the torus
//! `T_K`) and coordinate 2 to `k₂` (the torus `T_W`).

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::degrees::{a1_threshold, predict_whitehead_delta, DegreeError};
use crate::laurent::Q;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("family {family} does not match omega = {omega}")]
    InvalidFamilySign { family: PathFamily, omega: i64 },
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("family {0} does not occur for |omega| = 1")]
    ExcludedFamily(PathFamily),
    #[error("pattern contains B blocks but alpha - beta = {0} is odd")]
    ParityViolation(i64),
    #[error("invalid branch pattern character {0:?}")]
    InvalidPattern(char),
    #[error("slope {0} has no reciprocal")]
    UndefinedReciprocal(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("invalid path family {0:?}; expected g1..g6 followed by + or -")]
    ParseFamily(String),
}

impl From<DegreeError> for SurfaceError {
    fn from(e: DegreeError) -> Self {
        SurfaceError::HypothesisViolated(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn unit(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// `γ±ᵢ`: sign `+` goes with ω > 0, sign `−` with ω < 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathFamily {
    pub id: u8,
    pub sign: Sign,
}

impl PathFamily {
    pub fn new(id: u8, sign: Sign) -> Result<PathFamily, SurfaceError> {
        if !(1..=6).contains(&id) {
            return Err(SurfaceError::ParseFamily(format!("g{id}")));
        }
        Ok(PathFamily { id, sign })
    }

    pub fn all(sign: Sign) -> impl Iterator<Item = PathFamily> {
        (1..=6).map(move |id| PathFamily { id, sign })
    }

    /// Branch pattern word over `{A, B, C, D}` for `k = |ω|`.
    pub fn branch_pattern(self, k: u32) -> String {
        let reps = 2 * k as usize - 1;
        match self.id {
            1..=4 => "ADAADA".to_string(),
            5 => format!("AD{}DA", "C".repeat(reps)),
            _ => format!("AB{}BA", "BCB".repeat(reps)),
        }
    }
}

impl fmt::Display for PathFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}{}", self.id, if self.sign == Sign::Plus { '+' } else { '-' })
    }
}

impl FromStr for PathFamily {
    type Err = SurfaceError;
    fn from_str(s: &str) -> Result<Self, SurfaceError> {
        let bad = || SurfaceError::ParseFamily(s.to_string());
        let body = s.trim().strip_prefix('g').ok_or_else(bad)?;
        let (num, sign) = match body.char_indices().last() {
            Some((i, '+')) => (&body[..i], Sign::Plus),
            Some((i, '-')) => (&body[..i], Sign::Minus),
            _ => return Err(bad()),
        };
        PathFamily::new(num.parse().map_err(|_| bad())?, sign).map_err(|_| bad())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Weights {
    pub alpha: i64,
    pub beta: i64,
    /// Block parameter distinguishing isotopy classes; never enters χ or slopes.
    pub aux_n: Option<i64>,
}

impl Weights {
    pub fn new(alpha: i64, beta: i64) -> Weights {
        Weights { alpha, beta, aux_n: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientability {
    Guaranteed,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceRecord {
    pub family: PathFamily,
    pub omega: i64,
    pub weights: Weights,
    pub chi: i64,
    pub slope1: Option<Q>,
    pub slope2: Option<Q>,
    pub count1: u64,
    pub count2: u64,
    pub orientable: Orientability,
    /// Set once `slope1` has been moved to the solid-torus boundary with `τ` twists.
    pub twist: Option<i64>,
}

fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

/// Table values for `α ≥ β`.
fn table(omega: i64, family: PathFamily, alpha: i64, beta: i64) -> (i64, Q, Option<Q>, u64, u64) {
    let k = omega.abs();
    let s = family.sign.unit();
    let (a, b) = (qi(alpha), qi(beta));
    let ratio2 = |num: Q| (beta > 0).then(|| num * a / b);
    let gcds = (alpha.gcd(&(2 * beta)) as u64, if beta > 0 { (2 * alpha).gcd(&beta) as u64 } else { 0 });
    let plain = (alpha as u64, beta as u64);
    match family.id {
        1 => (-alpha - beta, qi(2 * s) * b / a, ratio2(qi(2 * s)), gcds.0, gcds.1),
        2 | 3 => (-alpha - beta, Q::zero(), (beta > 0).then(Q::zero), plain.0, plain.1),
        4 => (-alpha - beta, qi(-2 * s) * b / a, ratio2(qi(-2 * s)), gcds.0, gcds.1),
        5 => {
            let s2 = ratio2(qi(-2 * s)).map(|x| x + qi(2 * s - 4 * s * k));
            (-alpha + 2 * (1 - k) * beta, qi(-2 * s) * b / a, s2, gcds.0, gcds.1)
        }
        _ => ((1 - 2 * k) * alpha, qi(-4 * s * k), (beta > 0).then(|| qi(-2 * s)), plain.0, plain.1),
    }
}

/// Surface data for `family` on the link of `omega` with the given weights.
/// Weights with `α < β` use the component exchange: the record for `(β, α)`
/// with the two coordinates swapped.
pub fn catalog(omega: i64, family: PathFamily, weights: Weights) -> Result<SurfaceRecord, SurfaceError> {
    if omega == 0 || (omega > 0) != (family.sign == Sign::Plus) {
        return Err(SurfaceError::InvalidFamilySign { family, omega });
    }
    if family.id == 4 && family.sign == Sign::Plus && omega == 1 {
        return Err(SurfaceError::ExcludedFamily(family));
    }
    let Weights { alpha, beta, .. } = weights;
    if alpha < 0 || beta < 0 || alpha + beta == 0 {
        return Err(SurfaceError::InvalidWeights(format!("(alpha, beta) = ({alpha}, {beta})")));
    }
    let (chi, slope1, slope2, count1, count2) = if alpha >= beta {
        let (c, s1, s2, n1, n2) = table(omega, family, alpha, beta);
        (c, Some(s1), s2, n1, n2)
    } else {
        let (c, s1, s2, n1, n2) = table(omega, family, beta, alpha);
        (c, s2, Some(s1), n2, n1)
    };
    Ok(SurfaceRecord {
        family,
        omega,
        weights,
        chi,
        slope1,
        slope2,
        count1,
        count2,
        orientable: Orientability::Unknown,
        twist: None,
    })
}

/// `χ = (α + β) − Σ saddles` with saddles `β, (α−β)/2, β, α−β` for blocks
/// `A, B, C, D`.
pub fn chi_from_branch_pattern(pattern: &str, alpha: i64, beta: i64) -> Result<i64, SurfaceError> {
    if beta < 0 || alpha < beta {
        return Err(SurfaceError::InvalidWeights(format!("need alpha >= beta >= 0, got ({alpha}, {beta})")));
    }
    let mut saddles = 0;
    for ch in pattern.chars() {
        saddles += match ch {
            'A' | 'C' => beta,
            'B' if (alpha - beta) % 2 != 0 => return Err(SurfaceError::ParityViolation(alpha - beta)),
            'B' => (alpha - beta) / 2,
            'D' => alpha - beta,
            c => return Err(SurfaceError::InvalidPattern(c)),
        };
    }
    Ok(alpha + beta - saddles)
}

/// Replaces `slope1` by the slope on the solid-torus boundary after `τ`
/// twists: `1/slope1 + τ`.
pub fn twist_and_reframe(record: &SurfaceRecord, tau: i64) -> Result<SurfaceRecord, SurfaceError> {
    let s = match record.slope1 {
        Some(s) if !s.is_zero() => s,
        other => {
            return Err(SurfaceError::UndefinedReciprocal(other.map_or("absent".to_string(), |s| s.to_string())))
        }
    };
    if record.twist.is_some() {
        return Err(SurfaceError::InvalidWeights("record is already reframed".into()));
    }
    Ok(SurfaceRecord { slope1: Some(s.recip() + qi(tau)), twist: Some(tau), ..record.clone() })
}

/// The frontier of a neighborhood: weights `(2α, 2β)`, orientable.
pub fn orientable_double(record: &SurfaceRecord) -> Result<SurfaceRecord, SurfaceError> {
    let w = record.weights;
    let doubled = Weights { alpha: 2 * w.alpha, beta: 2 * w.beta, aux_n: w.aux_n };
    let mut r = catalog(record.omega, record.family, doubled)?;
    if let Some(t) = record.twist {
        r = twist_and_reframe(&r, t)?;
    }
    r.orientable = Orientability::Guaranteed;
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlueCase {
    /// ω > 0, `a₁ > τ/4`: `m S_K ∪ n F_{γ⁺₁}`.
    Case11,
    /// ω > 0, `a₁ ≤ τ/4`: a once punctured torus.
    Case12,
    /// ω < 0, `a₁ > τ/4 + 1/8`: `m S_K ∪ n F_{γ⁻₅}`.
    Case21,
    /// ω < 0, `a₁ ≤ τ/4 + 1/8`: `F_{γ⁻₆}` with weights `(2, 0)`.
    Case22,
}

impl fmt::Display for GlueCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GlueCase::Case11 => "1-1",
            GlueCase::Case12 => "1-2",
            GlueCase::Case21 => "2-1",
            GlueCase::Case22 => "2-2",
        })
    }
}

/// Essential surface of the companion exterior: Euler characteristic and
/// number of boundary components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompanionSurface {
    pub chi: i64,
    pub boundary: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluedSurface {
    pub case: GlueCase,
    /// Copies of the companion surface; zero when it is not used.
    pub m: u64,
    pub n: u64,
    pub chi_total: i64,
    pub boundary_count: u64,
    pub slope: Q,
    pub q_den: i64,
    pub ss_ratio: Q,
    /// The pattern piece, when it comes from the catalog.
    pub pattern: Option<SurfaceRecord>,
    /// Slope of the pattern piece on the companion torus after twisting.
    pub companion_slope: Option<Q>,
}

fn finish(case: GlueCase, m: u64, n: u64, chi_total: i64, boundary_count: u64, slope: Q) -> GluedSurface {
    let q_den = *slope.denom();
    GluedSurface {
        case,
        m,
        n,
        chi_total,
        boundary_count,
        slope,
        q_den,
        ss_ratio: Q::new(chi_total, boundary_count as i64 * q_den),
        pattern: None,
        companion_slope: None,
    }
}

pub fn glue_case(a1: Q, b1: Q, omega: i64, tau: i64) -> Result<GlueCase, SurfaceError> {
    if omega == 0 {
        return Err(SurfaceError::HypothesisViolated("omega must be nonzero".into()));
    }
    if b1.is_positive() {
        return Err(SurfaceError::HypothesisViolated(format!("b1 = {b1} > 0")));
    }
    let t = a1_threshold(omega, tau);
    if b1.is_zero() && a1 == t {
        return Err(SurfaceError::HypothesisViolated(format!("b1 = 0 and a1 = {t} lies on the branch threshold")));
    }
    Ok(match (omega > 0, a1 > t) {
        (true, true) => GlueCase::Case11,
        (true, false) => GlueCase::Case12,
        (false, true) => GlueCase::Case21,
        (false, false) => GlueCase::Case22,
    })
}

/// Surface in the exterior of `W_ω^τ(K)` whose slope and Euler data realize
/// the Jones slope, given `a₁ = r/s`, `b₁` and, above the threshold, the
/// companion surface.
pub fn build_jones_surface(
    a1: Q,
    b1: Q,
    companion: Option<CompanionSurface>,
    omega: i64,
    tau: i64,
) -> Result<GluedSurface, SurfaceError> {
    let case = glue_case(a1, b1, omega, tau)?;
    match case {
        GlueCase::Case12 => Ok(finish(case, 0, 1, -1, 1, Q::zero())),
        GlueCase::Case22 => {
            // disjoint from the companion torus; the exchange puts its boundary on T_W
            let rec = catalog(omega, PathFamily { id: 6, sign: Sign::Minus }, Weights::new(2, 0))?;
            let slope = rec.slope1.expect("alpha > 0");
            let mut g = finish(case, 0, 1, rec.chi, rec.count1, slope);
            g.pattern = Some(rec);
            Ok(g)
        }
        GlueCase::Case11 | GlueCase::Case21 => {
            let comp = companion.ok_or_else(|| {
                SurfaceError::HypothesisViolated("above the threshold the companion surface is required".into())
            })?;
            if comp.boundary == 0 {
                return Err(SurfaceError::HypothesisViolated("companion surface has no boundary".into()));
            }
            let (r, s) = (*a1.numer(), *a1.denom());
            let weights = Weights::new(2 * (8 * r - 2 * tau * s), 2 * s);
            let family = PathFamily { id: if case == GlueCase::Case11 { 1 } else { 5 }, sign: if omega > 0 { Sign::Plus } else { Sign::Minus } };
            let rec = catalog(omega, family, weights)?;
            let l = comp.boundary.lcm(&rec.count1);
            let (m, n) = (l / comp.boundary, l / rec.count1);
            let chi_total = m as i64 * comp.chi + n as i64 * rec.chi;
            let slope = rec.slope2.expect("beta > 0");
            let mut g = finish(case, m, n, chi_total, n * rec.count2, slope);
            g.companion_slope = twist_and_reframe(&rec, tau)?.slope1;
            g.pattern = Some(rec);
            Ok(g)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongSlopeReport {
    pub a_w: Q,
    pub b_w: Q,
    pub surface: GluedSurface,
    pub slope_ok: bool,
    pub ratio_ok: bool,
}

impl StrongSlopeReport {
    pub fn passed(&self) -> bool {
        self.slope_ok && self.ratio_ok
    }
}

/// Compares the glued surface against the degree prediction:
/// `slope = 4 a_W` and `χ/(|∂| q) = 2 b_W`.
pub fn verify_strong_slope(
    a1: Q,
    b1: Q,
    c1: Q,
    companion: Option<CompanionSurface>,
    omega: i64,
    tau: i64,
) -> Result<StrongSlopeReport, SurfaceError> {
    let pred = predict_whitehead_delta(a1, b1, c1, omega, tau, None)?;
    let [a_w, b_w, _] = pred.delta.coeffs()[0];
    let surface = build_jones_surface(a1, b1, companion, omega, tau)?;
    Ok(StrongSlopeReport {
        a_w,
        b_w,
        slope_ok: surface.slope == a_w * 4,
        ratio_ok: surface.ss_ratio == b_w * 2,
        surface,
    })
}

pub const CSV_HEADER: &str = "path,omega,k,alpha,beta,pattern,chi,slope1,slope2,count1,count2,orientable";

pub fn csv_row(r: &SurfaceRecord) -> String {
    let opt = |s: Option<Q>| s.map_or(String::new(), |s| s.to_string());
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        r.family,
        r.omega,
        r.omega.abs(),
        r.weights.alpha,
        r.weights.beta,
        r.family.branch_pattern(r.omega.unsigned_abs() as u32),
        r.chi,
        opt(r.slope1),
        opt(r.slope2),
        r.count1,
        r.count2,
        if r.orientable == Orientability::Guaranteed { "guaranteed" } else { "unknown" }
    )
}

pub fn csv_table(records: &[SurfaceRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&csv_row(r));
        out.push('\n');
    }
    out
}
