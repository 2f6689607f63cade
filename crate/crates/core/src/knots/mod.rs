//! Colored Jones polynomials of knot expressions.
//!
//! `J'_{K,n}` is the normalized invariant (`J'_{unknot,n} = 1`) and
//! `J_{K,n+1} = (−1)^n ⟨n⟩ J'_{K,n}` the unnormalized one. Torus knots use
//! Morton's formula, mirrors substitute `q → q⁻¹`, connected sums multiply,
//! and Whitehead doubles use the satellite double sum over `(j, k)`.

pub mod cache;
pub mod expr;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use thiserror::Error;

use crate::laurent::{Exponent, IntLaurent, LaurentError};
use crate::quantum::{qbinom, qbracket, qfact, qfact_ratio, qint, triple_coeff, tet_symbol};
use crate::quantum::{AdmissibleTriple, IntRational, TetLabels};

pub use cache::{CacheKey, JonesCache};
pub use expr::{parse_knot_expr, KnotExpr, ParseError};

#[derive(Debug, Error)]
pub enum KnotError {
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("result for {0} is not an integral Laurent polynomial in q")]
    NonIntegral(String),
    #[error("invalid torus parameters ({0}, {1})")]
    InvalidTorus(u32, u32),
    #[error("cache I/O error at {path}: {source}")]
    Cache { path: String, source: std::io::Error },
    #[error("color index must be at least 1 for the unnormalized invariant")]
    ZeroColor,
}

/// Colored Jones engine with an in-process memo and an optional disk cache.
#[derive(Default)]
pub struct Engine {
    disk: Option<JonesCache>,
    memo: RwLock<HashMap<(String, u32), Arc<IntLaurent>>>,
}

impl Engine {
    pub fn new(disk: Option<JonesCache>) -> Engine {
        Engine { disk, memo: RwLock::new(HashMap::new()) }
    }

    pub fn disk(&self) -> Option<&JonesCache> {
        self.disk.as_ref()
    }

    /// `J'_{K,n}`, asserted to lie in `ℤ[q^{±1}]`.
    pub fn cj_prime(&self, k: &KnotExpr, n: u32) -> Result<Arc<IntLaurent>, KnotError> {
        let canon = k.canonical();
        if let Some(v) = self.memo.read().unwrap().get(&(canon.clone(), n)) {
            return Ok(v.clone());
        }
        let key = CacheKey { knot: canon.clone(), n, normalized: true };
        let stored = match &self.disk {
            Some(d) => d.get(&key).map_err(|e| cache_err(d, e))?,
            None => None,
        };
        let v = match stored {
            Some(v) => v,
            None => {
                let v = self.compute(k, n)?;
                if !v.has_integral_exponents() {
                    return Err(KnotError::NonIntegral(format!("{canon} at n={n}")));
                }
                if let Some(d) = &self.disk {
                    d.put(&key, &v).map_err(|e| cache_err(d, e))?;
                }
                v
            }
        };
        let v = Arc::new(v);
        self.memo.write().unwrap().insert((canon, n), v.clone());
        Ok(v)
    }

    fn compute(&self, k: &KnotExpr, n: u32) -> Result<IntLaurent, KnotError> {
        match k {
            KnotExpr::Unknot => Ok(IntLaurent::one()),
            KnotExpr::Torus(a, b) => cj_torus_morton(*a, *b, n),
            KnotExpr::Mirror(inner) => Ok(self.cj_prime(inner, n)?.substitute_q_inverse()),
            KnotExpr::Sum(parts) => {
                let mut acc = IntLaurent::one();
                for p in parts {
                    acc = &acc * &*self.cj_prime(p, n)?;
                }
                Ok(acc)
            }
            KnotExpr::Whitehead { omega, tau, companion } => cj_whitehead(self, *omega, *tau, companion, n),
        }
    }

    /// `J_{K,n}` for `n ≥ 1`: `J_{K,1} = 1` and `J_{K,n} = [n] J'_{K,n−1}`.
    pub fn cj_unnormalized(&self, k: &KnotExpr, n: u32) -> Result<IntLaurent, KnotError> {
        if n == 0 {
            return Err(KnotError::ZeroColor);
        }
        let p = self.cj_prime(k, n - 1)?;
        let b = qbracket(n - 1);
        Ok(if (n - 1) % 2 == 1 { -(&b * &p) } else { &b * &p })
    }
}

fn cache_err(d: &JonesCache, source: std::io::Error) -> KnotError {
    KnotError::Cache { path: d.root().display().to_string(), source }
}

/// Morton's formula for `J'_{T(a,b),n}` with `a, b ≥ 2` coprime.
pub fn cj_torus_morton(a: u32, b: u32, n: u32) -> Result<IntLaurent, KnotError> {
    if a < 2 || b < 2 || num_integer::gcd(a, b) != 1 {
        return Err(KnotError::InvalidTorus(a, b));
    }
    let (a, b, n) = (a as i64, b as i64, n as i64);
    // Exponents in eighths, with m = 2k running over −n, −n+2, …, n.
    let mut terms = Vec::with_capacity(2 * n as usize + 2);
    for i in 0..=n {
        let m = 2 * i - n;
        let quad = -2 * a * b * m * m;
        terms.push((Exponent(quad + 4 * (a - b) * m + 4), BigInt::one()));
        terms.push((Exponent(quad + 4 * (a + b) * m - 4), -BigInt::one()));
    }
    let sum = IntLaurent::from_terms(terms).shift(Exponent(2 * a * b * n * (n + 2)));
    let den = IntLaurent::from_terms([
        (Exponent(4 * (n + 1)), BigInt::one()),
        (Exponent(-4 * (n + 1)), -BigInt::one()),
    ]);
    let r = sum.exact_div(&den)?;
    Ok(r)
}

fn s_memo() -> &'static RwLock<HashMap<(u32, u32, u32), Arc<IntLaurent>>> {
    static M: OnceLock<RwLock<HashMap<(u32, u32, u32), Arc<IntLaurent>>>> = OnceLock::new();
    M.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `s`-sum of the `(n,n,2j;n,n,2k)` tetrahedron after the prefactor and the
/// triple-coefficient ratios are distributed into quantum binomials:
/// `Σ_s (−1)^s [j; s−n−k]² [n−j; s−n−j] [s+1; n+j+1]`.
pub fn whitehead_inner_sum(n: u32, j: u32, k: u32) -> Arc<IntLaurent> {
    if let Some(v) = s_memo().read().unwrap().get(&(n, j, k)) {
        return v.clone();
    }
    let mut sum = IntLaurent::zero();
    for s in (n + j.max(k))..=(n + j + k).min(2 * n) {
        let b1 = qbinom(j, s - n - k);
        let term = &(&*b1 * &*b1) * &(&*qbinom(n - j, s - n - j) * &*qbinom(s + 1, n + j + 1));
        sum = if s % 2 == 1 { &sum - &term } else { &sum + &term };
    }
    let v = Arc::new(sum);
    s_memo().write().unwrap().insert((n, j, k), v.clone());
    v
}

/// `J'_{W_ω^τ(K),n}`.
///
/// Each summand `f(j,k)` equals
/// `(−1)^{j+k} [2j+1][2k+1] · [k]!²[n−k]!/[n+k+1]! · S(j,k) · q^{−ωj(j+1)−τk(k+1)} J'_{K,2k}`
/// with `S` from [`whitehead_inner_sum`]. Multiplying by `[2n+1]!` clears every
/// denominator, so the total is one polynomial divided exactly by `[2n+1]!⟨n⟩`.
pub fn cj_whitehead(engine: &Engine, omega: i64, tau: i64, companion: &KnotExpr, n: u32) -> Result<IntLaurent, KnotError> {
    let comp: Vec<Arc<IntLaurent>> =
        (0..=n).into_par_iter().map(|k| engine.cj_prime(companion, 2 * k)).collect::<Result<_, _>>()?;
    let pairs: Vec<(u32, u32)> = (0..=n).flat_map(|j| (0..=n).map(move |k| (j, k))).collect();
    let inner: Vec<Arc<IntLaurent>> = pairs.par_iter().map(|&(j, k)| whitehead_inner_sum(n, j, k)).collect();
    let per_k: Vec<IntLaurent> = (0..=n)
        .into_par_iter()
        .map(|k| {
            let mut g = IntLaurent::zero();
            for j in 0..=n {
                let e = Exponent(-8 * omega * (j as i64) * (j as i64 + 1));
                let t = (&qint(2 * j + 1) * &inner[(j * (n + 1) + k) as usize]).shift(e);
                g = if j % 2 == 1 { &g - &t } else { &g + &t };
            }
            let fk = qfact(k);
            let w = &(&(&*fk * &*fk) * &*qfact(n - k)) * &qfact_ratio(2 * n + 1, n + k + 1);
            let e = Exponent(-8 * tau * (k as i64) * (k as i64 + 1));
            let t = (&(&(&qint(2 * k + 1) * &w) * &*comp[k as usize]) * &g).shift(e);
            if k % 2 == 1 {
                -t
            } else {
                t
            }
        })
        .collect();
    let mut total = IntLaurent::zero();
    for t in &per_k {
        total = &total + t;
    }
    let den = &*qfact(2 * n + 1) * &qbracket(n);
    Ok(total.exact_div(&den)?)
}

/// `f(j,k)` assembled literally from `⟨2j⟩⟨2k⟩`, the tetrahedral coefficient and
/// the triple coefficients, as an unsimplified quotient.
pub fn whitehead_summand_generic(n: u32, j: u32, k: u32, omega: i64, tau: i64, comp_2k: &IntLaurent) -> IntRational {
    let tet = tet_symbol(TetLabels::whitehead(n, j, k).expect("admissible"));
    let tj = triple_coeff(AdmissibleTriple::new(n, n, 2 * j).expect("admissible"));
    let tk = triple_coeff(AdmissibleTriple::new(n, n, 2 * k).expect("admissible"));
    let e = Exponent(-8 * (omega * (j as i64) * (j as i64 + 1) + tau * (k as i64) * (k as i64 + 1)));
    let mono = IntLaurent::signed_q_pow(1, e);
    let front = &(&qbracket(2 * j) * &qbracket(2 * k)) * &(&mono * comp_2k);
    let num = IntRational::from_poly(front).mul(&tet);
    num.div(&tj).and_then(|x| x.div(&tk)).expect("nonzero triple coefficients")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::Q;

    fn z(terms: &[(i64, i64)]) -> IntLaurent {
        IntLaurent::from_terms(terms.iter().map(|&(e, c)| (Exponent(8 * e), BigInt::from(c))))
    }

    fn k(s: &str) -> KnotExpr {
        parse_knot_expr(s).unwrap()
    }

    #[test]
    fn morton_trefoil() {
        assert_eq!(cj_torus_morton(3, 2, 1).unwrap(), z(&[(1, 1), (3, 1), (4, -1)]));
        assert_eq!(cj_torus_morton(2, 3, 1).unwrap(), z(&[(1, 1), (3, 1), (4, -1)]));
        assert!(cj_torus_morton(3, 2, 0).unwrap().is_one());
        assert_eq!(cj_torus_morton(3, 2, 2).unwrap().d_plus().unwrap(), Q::from(11));
        assert!(cj_torus_morton(2, 4, 1).is_err());
    }

    #[test]
    fn morton_even_degree_law() {
        for (a, b) in [(2, 3), (2, 5), (3, 4), (3, 5), (2, 7)] {
            for n in (0..=10).step_by(2) {
                let d = cj_torus_morton(a, b, n).unwrap().d_plus().unwrap();
                let (ab, n) = ((a * b) as i64, n as i64);
                assert_eq!(d, Q::new(ab * n * n, 4) + Q::new((ab - 1) * n, 2));
            }
        }
    }

    #[test]
    fn dispatch() {
        let e = Engine::default();
        for n in 0..5 {
            assert!(e.cj_prime(&KnotExpr::Unknot, n).unwrap().is_one());
        }
        let m = e.cj_prime(&k("mirror(torus(3,2))"), 1).unwrap();
        assert_eq!(*m, z(&[(-1, 1), (-3, 1), (-4, -1)]));
        let s = e.cj_prime(&k("sum(torus(2,3),torus(2,5))"), 2).unwrap();
        let prod = &*e.cj_prime(&k("torus(2,3)"), 2).unwrap() * &*e.cj_prime(&k("torus(2,5)"), 2).unwrap();
        assert_eq!(*s, prod);
    }

    #[test]
    fn unnormalized() {
        let e = Engine::default();
        let t = k("torus(3,2)");
        assert!(e.cj_unnormalized(&t, 1).unwrap().is_one());
        for n in 1..6 {
            assert_eq!(e.cj_unnormalized(&KnotExpr::Unknot, n + 1).unwrap(), qint(n + 1));
        }
        assert_eq!(e.cj_unnormalized(&t, 2).unwrap().d_plus().unwrap(), Q::new(9, 2));
        assert!(e.cj_unnormalized(&t, 0).is_err());
    }

    #[test]
    fn unknot_doubles_are_trivial() {
        let e = Engine::default();
        for omega in [1, 2, -1, -2] {
            for n in 0..=4 {
                let w = KnotExpr::whitehead(omega, 0, KnotExpr::Unknot).unwrap();
                assert!(e.cj_prime(&w, n).unwrap().is_one(), "omega={omega} n={n}");
            }
        }
    }

    #[test]
    fn factored_summands_match_literal_assembly() {
        let e = Engine::default();
        for (omega, tau, comp) in [(1, 0, "torus(2,3)"), (-2, 3, "mirror(torus(2,3))"), (1, 6, "torus(3,2)")] {
            let comp = k(comp);
            for n in 0..=3u32 {
                let clear = qfact(2 * n + 1);
                for j in 0..=n {
                    for kk in 0..=n {
                        let jp = e.cj_prime(&comp, 2 * kk).unwrap();
                        let generic = whitehead_summand_generic(n, j, kk, omega, tau, &jp);
                        let fk = qfact(kk);
                        let w = &(&(&*fk * &*fk) * &*qfact(n - kk)) * &qfact_ratio(2 * n + 1, n + kk + 1);
                        let ex = Exponent(-8 * (omega * (j as i64) * (j as i64 + 1) + tau * (kk as i64) * (kk as i64 + 1)));
                        let mut fast = (&(&(&qint(2 * j + 1) * &qint(2 * kk + 1)) * &w)
                            * &(&*whitehead_inner_sum(n, j, kk) * &jp))
                            .shift(ex);
                        if (j + kk) % 2 == 1 {
                            fast = -fast;
                        }
                        let fast = IntRational { num: fast, den: (*clear).clone() };
                        assert!(generic.equals(&fast), "n={n} j={j} k={kk}");
                    }
                }
            }
        }
    }

    #[test]
    fn literal_double_sum_agrees_for_small_colors() {
        let e = Engine::default();
        let comp = k("torus(2,3)");
        for (omega, tau) in [(1, 0), (-1, 2)] {
            for n in 0..=2u32 {
                let mut acc: Option<IntRational> = None;
                for j in 0..=n {
                    for kk in 0..=n {
                        let jp = e.cj_prime(&comp, 2 * kk).unwrap();
                        let f = whitehead_summand_generic(n, j, kk, omega, tau, &jp);
                        acc = Some(match acc {
                            None => f,
                            Some(a) => a.add(&f),
                        });
                    }
                }
                let total = acc.unwrap();
                let literal = total.num.exact_div(&(&total.den * &qbracket(n))).unwrap();
                let w = KnotExpr::whitehead(omega, tau, comp.clone()).unwrap();
                assert_eq!(literal, *e.cj_prime(&w, n).unwrap(), "omega={omega} tau={tau} n={n}");
            }
        }
    }

    #[test]
    fn first_row_terms() {
        // f(0,k) = [2k+1] q^{−τk(k+1)} J'_{K,2k} / ⟨n⟩, and the row has no leading-term cancellation.
        let e = Engine::default();
        let comp = k("torus(2,3)");
        let n = 3;
        let tau = 0;
        let mut degs = Vec::new();
        for kk in 0..=n {
            let jp = e.cj_prime(&comp, 2 * kk).unwrap();
            let f = whitehead_summand_generic(n, 0, kk, 1, tau, &jp);
            let hand = (&qint(2 * kk + 1) * &jp).shift(Exponent(-8 * tau * (kk as i64) * (kk as i64 + 1)));
            assert!(f.equals(&IntRational { num: hand.clone(), den: qbracket(n) }));
            degs.push(hand.degree_data().unwrap());
        }
        let partial = (0..=n).fold(IntLaurent::zero(), |acc, kk| {
            let jp = e.cj_prime(&comp, 2 * kk).unwrap();
            &acc + &(&qint(2 * kk + 1) * &jp)
        });
        let top = degs.iter().map(|d| d.d_plus).max().unwrap();
        assert_eq!(partial.d_plus().unwrap(), top);
    }

    #[test]
    fn disk_cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let e1 = Engine::new(Some(JonesCache::new(dir.path())));
        let w = k("wh(1,0,torus(2,3))");
        let v1 = e1.cj_prime(&w, 2).unwrap();
        let e2 = Engine::new(Some(JonesCache::new(dir.path())));
        let key = CacheKey { knot: w.canonical(), n: 2, normalized: true };
        assert_eq!(e2.disk().unwrap().get(&key).unwrap().as_ref(), Some(&*v1));
        assert_eq!(e2.cj_prime(&w, 2).unwrap(), v1);
    }
}
