//! Quantum integers, factorials, triple and tetrahedral coefficients, and
//! their closed-form maximum degrees.
//!
//! Every quantity is an integer Laurent polynomial in `q^{1/2}` or a quotient
//! of two such. Triple and tetrahedral coefficients are quotients in general
//! (for instance `⟨2,2,2⟩ = −[3][4]/[2]²`), so they are returned as
//! [`RationalLaurent`] values with an unsimplified numerator and denominator.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::laurent::{Exponent, IntLaurent, LaurentError, RationalLaurent, Q};

pub type IntRational = RationalLaurent<BigInt>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantumError {
    #[error("colors ({0}, {1}, {2}) are not admissible")]
    NotAdmissible(u32, u32, u32),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// Colors `(s, t, u)` with `s+t+u` even and `|s−t| ≤ u ≤ s+t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AdmissibleTriple {
    pub s: u32,
    pub t: u32,
    pub u: u32,
}

impl AdmissibleTriple {
    pub fn new(s: u32, t: u32, u: u32) -> Result<Self, QuantumError> {
        let ok = (s + t + u) % 2 == 0 && s.abs_diff(t) <= u && u <= s + t;
        ok.then_some(AdmissibleTriple { s, t, u }).ok_or(QuantumError::NotAdmissible(s, t, u))
    }

    /// The internal colors `(i, j, k)`.
    pub fn ijk(&self) -> (u32, u32, u32) {
        let (s, t, u) = (self.s, self.t, self.u);
        ((t + u - s) / 2, (u + s - t) / 2, (s + t - u) / 2)
    }
}

/// Labels of the tetrahedron `⟨A B E; D C F⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TetLabels {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub e: u32,
    pub f: u32,
}

impl TetLabels {
    /// Labels in the matrix layout `[[A, B, E], [D, C, F]]`.
    pub fn new(a: u32, b: u32, e: u32, d: u32, c: u32, f: u32) -> Result<Self, QuantumError> {
        for (x, y, z) in [(a, b, e), (b, d, f), (c, d, e), (a, c, f)] {
            AdmissibleTriple::new(x, y, z)?;
        }
        Ok(TetLabels { a, b, c, d, e, f })
    }

    /// `(n, n, 2j; n, n, 2k)`, the shape used by the Whitehead double formula.
    pub fn whitehead(n: u32, j: u32, k: u32) -> Result<Self, QuantumError> {
        Self::new(n, n, 2 * j, n, n, 2 * k)
    }

    pub fn sigma(&self) -> u32 {
        self.a + self.b + self.c + self.d + self.e + self.f
    }

    pub fn a_j(&self) -> [u32; 4] {
        let l = self;
        [(l.a + l.b + l.e) / 2, (l.b + l.d + l.f) / 2, (l.c + l.d + l.e) / 2, (l.a + l.c + l.f) / 2]
    }

    pub fn b_i(&self) -> [u32; 3] {
        let (l, s) = (self, self.sigma());
        [(s - l.a - l.d) / 2, (s - l.e - l.f) / 2, (s - l.b - l.c) / 2]
    }
}

/// `[s] = Σ_{i<s} q^{(s−1)/2 − i}`.
pub fn qint(s: u32) -> IntLaurent {
    IntLaurent::from_terms((0..s as i64).map(|i| (Exponent(4 * (s as i64 - 1) - 8 * i), BigInt::one())))
}

struct Tables {
    fact: RwLock<Vec<Arc<IntLaurent>>>,
    binom: RwLock<HashMap<(u32, u32), Arc<IntLaurent>>>,
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| Tables {
        fact: RwLock::new(vec![Arc::new(IntLaurent::one())]),
        binom: RwLock::new(HashMap::new()),
    })
}

/// `[s]! = ∏_{t=1}^{s} [t]`, memoized.
pub fn qfact(s: u32) -> Arc<IntLaurent> {
    let t = tables();
    if let Some(f) = t.fact.read().unwrap().get(s as usize) {
        return f.clone();
    }
    let mut w = t.fact.write().unwrap();
    while w.len() <= s as usize {
        let next = &**w.last().unwrap() * &qint(w.len() as u32);
        w.push(Arc::new(next));
    }
    w[s as usize].clone()
}

/// The symmetric quantum binomial `[m]!/([r]![m−r]!)`, memoized.
pub fn qbinom(m: u32, r: u32) -> Arc<IntLaurent> {
    assert!(r <= m, "qbinom({m}, {r})");
    let t = tables();
    let key = (m, r.min(m - r));
    if let Some(b) = t.binom.read().unwrap().get(&key) {
        return b.clone();
    }
    let den = &*qfact(r) * &*qfact(m - r);
    let b = Arc::new(qfact(m).exact_div(&den).expect("quantum binomials are polynomials"));
    t.binom.write().unwrap().insert(key, b.clone());
    b
}

/// `[hi]!/[lo]! = ∏_{t=lo+1}^{hi} [t]`.
pub fn qfact_ratio(hi: u32, lo: u32) -> IntLaurent {
    assert!(lo <= hi);
    (lo + 1..=hi).fold(IntLaurent::one(), |acc, t| &acc * &qint(t))
}

/// `⟨s⟩ = (−1)^s [s+1]`.
pub fn qbracket(s: u32) -> IntLaurent {
    let p = qint(s + 1);
    if s % 2 == 1 {
        -p
    } else {
        p
    }
}

fn sign_poly(p: IntLaurent, odd: bool) -> IntLaurent {
    if odd {
        -p
    } else {
        p
    }
}

/// `⟨s,t,u⟩ = (−1)^{i+j+k} [i+j+k+1]![i]![j]![k]! / ([s]![t]![u]!)`.
pub fn triple_coeff(t: AdmissibleTriple) -> IntRational {
    let (i, j, k) = t.ijk();
    let num = &(&*qfact(i + j + k + 1) * &*qfact(i)) * &(&*qfact(j) * &*qfact(k));
    let den = &(&*qfact(t.s) * &*qfact(t.t)) * &*qfact(t.u);
    IntRational { num: sign_poly(num, (i + j + k) % 2 == 1), den }
}

/// `δ(u; s, t)^{sign}`, a signed monomial.
pub fn twist_coeff(u: u32, s: u32, t: u32, sign: i32) -> Result<IntLaurent, QuantumError> {
    AdmissibleTriple::new(s, t, u)?;
    let (u, s, t) = (u as i64, s as i64, t as i64);
    let e = -(u * u - s * s - t * t + 2 * u - 2 * s - 2 * t);
    let parity = ((s + t + u) / 2) % 2 == 1;
    let e = if sign < 0 { -e } else { e };
    Ok(IntLaurent::signed_q_pow(if parity { -1 } else { 1 }, Exponent(e)))
}

/// The tetrahedral coefficient as numerator over `[A]![B]![C]![D]![E]![F]!`.
///
/// The prefactor `∏[b_i − a_j]!` is distributed over the summands: pairing
/// `[b_i − a_i]!` with `[b_i − s]![s − a_i]!` for `i ≤ 3` gives quantum
/// binomials and `[s+1]!/[s − a_4]!` is a product of quantum integers, so
/// each summand is a polynomial.
pub fn tet_symbol(l: TetLabels) -> IntRational {
    let a = l.a_j();
    let b = l.b_i();
    let lo = *a.iter().max().unwrap();
    let hi = *b.iter().min().unwrap();
    let mut sum = IntLaurent::zero();
    for s in lo..=hi {
        let mut term = qfact_ratio(s + 1, s - a[3]);
        for i in 0..3 {
            term = &term * &*qbinom(b[i] - a[i], s - a[i]);
        }
        sum = if s % 2 == 1 { &sum - &term } else { &sum + &term };
    }
    let mut num = sum;
    for (i, bi) in b.iter().enumerate() {
        for (j, aj) in a.iter().enumerate() {
            if i != j {
                num = &num * &*qfact(bi - aj);
            }
        }
    }
    let den = [l.a, l.b, l.c, l.d, l.e, l.f].iter().fold(IntLaurent::one(), |acc, &x| &acc * &*qfact(x));
    IntRational { num, den }
}

pub fn deg_bracket(n: u32) -> Q {
    Q::new(n as i64, 2)
}

pub fn deg_triple(t: AdmissibleTriple) -> Q {
    Q::new((t.s + t.t + t.u) as i64, 4)
}

pub fn deg_tet(l: TetLabels) -> Q {
    let sig = l.sigma() as i64;
    let sq: i64 = [l.a, l.b, l.c, l.d, l.e, l.f].iter().map(|&x| (x as i64).pow(2)).sum();
    let b = l.b_i().map(|x| x as i64);
    let a = l.a_j().map(|x| x as i64);
    let m = *b.iter().min().unwrap();
    let sb: i64 = b.iter().map(|x| x * (x - 1)).sum();
    let sa: i64 = a.iter().map(|x| x * (x + 1)).sum();
    let inner = Q::from(-sig * sig) - Q::new(sq - sig, 2) + Q::new(3 * sb, 2) + Q::from(sa)
        - Q::from(3 * m * m)
        + Q::from(m * (1 + 2 * sig));
    inner / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn z(terms: &[(i64, i64)]) -> IntLaurent {
        IntLaurent::from_terms(terms.iter().map(|&(e, c)| (Exponent(e), BigInt::from(c))))
    }

    #[test]
    fn small_values() {
        assert!(qint(0).is_zero());
        assert!(qfact(0).is_one());
        assert!(qbracket(0).is_one());
        assert_eq!(qint(2), z(&[(4, 1), (-4, 1)]));
        assert_eq!(qbracket(1), z(&[(4, -1), (-4, -1)]));
        for s in 0..10 {
            assert_eq!(qint(s).substitute_q_inverse(), qint(s));
        }
    }

    #[test]
    fn quantum_integer_is_a_quotient() {
        let den = z(&[(4, 1), (-4, -1)]);
        for s in 1..9i64 {
            let num = z(&[(4 * s, 1), (-4 * s, -1)]);
            assert_eq!(num.exact_div(&den).unwrap(), qint(s as u32));
        }
    }

    #[test]
    fn bracket_degree() {
        for n in 0..=12 {
            assert_eq!(qbracket(n).d_plus().unwrap(), deg_bracket(n));
        }
    }

    #[test]
    fn binomials_satisfy_pascal() {
        // [m, r] = q^{(m−r)/2}[m−1, r−1] + q^{−r/2}[m−1, r]
        for m in 1..12u32 {
            for r in 1..m {
                let lhs = &*qbinom(m, r);
                let a = qbinom(m - 1, r - 1).shift(Exponent(4 * (m - r) as i64));
                let b = qbinom(m - 1, r).shift(Exponent(-4 * r as i64));
                assert_eq!(lhs, &(&a + &b));
            }
        }
    }

    #[test]
    fn triple_examples() {
        let one = triple_coeff(AdmissibleTriple::new(0, 0, 0).unwrap()).reduce().unwrap();
        assert!(one.is_one());
        let t = triple_coeff(AdmissibleTriple::new(1, 1, 0).unwrap()).reduce().unwrap();
        assert_eq!(t, z(&[(4, -1), (-4, -1)]));
        for n in 0..=8 {
            let t = triple_coeff(AdmissibleTriple::new(n, n, 0).unwrap());
            assert_eq!(t.reduce().unwrap(), qbracket(n));
        }
        assert!(AdmissibleTriple::new(1, 1, 1).is_err());
        assert!(AdmissibleTriple::new(1, 4, 1).is_err());
    }

    #[test]
    fn triple_is_not_always_a_polynomial() {
        let t = triple_coeff(AdmissibleTriple::new(2, 2, 2).unwrap());
        assert_eq!(t.reduce(), Err(LaurentError::NotDivisible));
        // −[3][4]/[2]² by hand.
        let hand = IntRational {
            num: -(&qint(3) * &qint(4)),
            den: &qint(2) * &qint(2),
        };
        assert!(t.equals(&hand));
    }

    #[test]
    fn triple_degrees_and_symmetry() {
        for s in 0..=8 {
            for t in 0..=8 {
                for u in 0..=8 {
                    let Ok(tr) = AdmissibleTriple::new(s, t, u) else { continue };
                    let c = triple_coeff(tr);
                    assert_eq!(c.d_plus().unwrap(), deg_triple(tr), "({s},{t},{u})");
                    let p = triple_coeff(AdmissibleTriple::new(u, s, t).unwrap());
                    assert!(c.equals(&p));
                    if s == t {
                        assert_eq!(c.d_plus().unwrap() + c.d_minus().unwrap(), Q::zero());
                    }
                }
            }
        }
    }

    #[test]
    fn twist_examples() {
        assert_eq!(twist_coeff(0, 1, 1, 1).unwrap(), z(&[(6, -1)]));
        assert!(twist_coeff(0, 0, 0, 1).unwrap().is_one());
        for (u, s, t) in [(0, 1, 1), (2, 1, 1), (4, 3, 5), (2, 2, 2)] {
            let p = &twist_coeff(u, s, t, 1).unwrap() * &twist_coeff(u, s, t, -1).unwrap();
            assert!(p.is_one());
        }
        assert!(twist_coeff(1, 1, 1, 1).is_err());
    }

    #[test]
    fn tet_trivial_and_reduction_to_triple() {
        assert!(tet_symbol(TetLabels::new(0, 0, 0, 0, 0, 0).unwrap()).reduce().unwrap().is_one());
        for n in 0..=6 {
            for k in 0..=n {
                let tet = tet_symbol(TetLabels::whitehead(n, 0, k).unwrap());
                let tri = triple_coeff(AdmissibleTriple::new(n, n, 2 * k).unwrap());
                assert!(tet.equals(&tri), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn tet_hand_value() {
        // ⟨1 1 2; 1 1 2⟩ = [3]/[2] from the defining sum with a single s = 2.
        let t = tet_symbol(TetLabels::new(1, 1, 2, 1, 1, 2).unwrap());
        assert!(t.equals(&IntRational { num: qint(3), den: qint(2) }));
    }

    #[test]
    fn tet_degrees_match_closed_form() {
        for n in 0..=6 {
            for j in 0..=n {
                for k in 0..=n {
                    let l = TetLabels::whitehead(n, j, k).unwrap();
                    assert_eq!(tet_symbol(l).d_plus().unwrap(), deg_tet(l), "n={n} j={j} k={k}");
                    let (j, k, n) = (j as i64, k as i64, n as i64);
                    let special = if j + k <= n {
                        Q::new(j + k + n, 2)
                    } else {
                        Q::new(-j * j - 2 * j * k - k * k + 2 * n + 2 * j * n + 2 * k * n - n * n, 2)
                    };
                    assert_eq!(deg_tet(l), special);
                }
            }
        }
    }

    #[test]
    fn tet_column_symmetry() {
        // (A,B,E;D,C,F) -> (D,C,E;A,B,F) permutes the triangles and fixes the a_j multiset.
        for (a, b, e, d, c, f) in [(1, 1, 2, 1, 1, 2), (2, 3, 1, 3, 2, 3), (2, 2, 2, 2, 2, 2), (3, 1, 2, 2, 2, 3)] {
            let Ok(l) = TetLabels::new(a, b, e, d, c, f) else { continue };
            let m = TetLabels::new(d, c, e, a, b, f).unwrap();
            let (mut x, mut y) = (l.a_j(), m.a_j());
            x.sort();
            y.sort();
            assert_eq!(x, y);
            assert!(tet_symbol(l).equals(&tet_symbol(m)));
        }
    }
}
