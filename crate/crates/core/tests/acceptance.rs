//! One PASS/FAIL line per acceptance criterion.

use std::io::Write;
use std::process::Command;

use num_integer::Integer;
use slopelab::adequacy::{
    adequacy_verdict, inadequacy_tests, turaev_if_adequate, untwisted_whitehead_diagram, whitehead_diagram,
    Conclusion, PDDiagram,
};
use slopelab::degrees::{degree_sequence, fit_quasipoly, sign_condition_check, Extreme, QuasiPoly, SignVerdict};
use slopelab::knots::{parse_knot_expr, Engine, KnotExpr};
use slopelab::laurent::Q;
use slopelab::quantum::{deg_tet, tet_symbol, TetLabels};
use slopelab::surfaces::{
    catalog, chi_from_branch_pattern, verify_strong_slope, CompanionSurface, PathFamily, Sign, SurfaceError, Weights,
};

const TREFOIL_PD: &str = "X[4,2,5,1],X[6,4,1,3],X[2,6,3,5]";

fn k(s: &str) -> KnotExpr {
    parse_knot_expr(s).unwrap()
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

struct Outcome {
    pass: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome { pass: true, notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.notes.push(format!("failed: {}", what.into()));
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }
}

fn unnormalized_degrees(e: &Engine, expr: &str, ns: std::ops::RangeInclusive<u32>, which: Extreme) -> Vec<Q> {
    degree_sequence(e, &k(expr), ns, which, false).unwrap()
}

fn c1_unknot_doubles() -> Outcome {
    let mut o = Outcome::new();
    let e = Engine::default();
    for omega in 1..=3 {
        let w = KnotExpr::whitehead(omega, 0, KnotExpr::Unknot).unwrap();
        for n in 1..=6 {
            let t = std::time::Instant::now();
            let j = e.cj_prime(&w, n).unwrap();
            o.check(j.is_one(), format!("wh({omega},0,unknot) n={n}"));
            o.check(t.elapsed().as_secs() < 120, format!("wh({omega},0,unknot) n={n} over budget"));
        }
    }
    o
}

fn c2_torus_degrees() -> Outcome {
    let mut o = Outcome::new();
    let e = Engine::default();
    for (p, qq) in [(2i64, 3i64), (2, 5), (3, 4)] {
        let expr = format!("torus({p},{qq})");
        let degs = unnormalized_degrees(&e, &expr, 1..=14, Extreme::Max);
        for (i, d) in degs.iter().enumerate() {
            let n = i as i64 + 1;
            let parity = if n % 2 == 0 { 2 } else { 0 };
            let want = q(p * qq, 4) * n * n - q(p * qq, 4) - q(parity * (p - 2) * (qq - 2), 8);
            o.check(*d == want, format!("{expr} n={n}: {d} vs {want}"));
        }
        for n in (2..=14).step_by(2) {
            let d = e.cj_prime(&k(&expr), n).unwrap().d_plus().unwrap();
            let nn = n as i64;
            let want = q(p * qq, 4) * nn * nn + q(p * qq - 1, 2) * nn;
            o.check(d == want, format!("J' {expr} n={n}: {d} vs {want}"));
        }
    }
    o
}

fn c3_twisted_double() -> Outcome {
    let mut o = Outcome::new();
    let e = Engine::default();
    let degs = unnormalized_degrees(&e, "wh(1,6,torus(3,2))", 1..=7, Extreme::Max);
    for (i, d) in degs.iter().enumerate() {
        let n = i as i64 + 1;
        o.check(*d == q(-n, 2) + q(1, 2), format!("n={n}: {d}"));
    }
    o
}

fn c4_whitehead_predictor() -> Outcome {
    let mut o = Outcome::new();
    let e = Engine::default();
    let degs = unnormalized_degrees(&e, "wh(1,0,torus(2,3))", 1..=9, Extreme::Max);
    let fit = fit_quasipoly(&degs, 1).unwrap();
    o.check(fit == QuasiPoly::poly(qi(6), q(-13, 2), q(1, 2)).with_threshold(1), format!("top branch fit {fit}"));
    let (a1, b1, c1) = (q(3, 2), qi(0), q(-3, 2));
    let degs = unnormalized_degrees(&e, "wh(1,7,torus(2,3))", 1..=9, Extreme::Max);
    let literal = degs.iter().enumerate().all(|(i, d)| *d == q(-(i as i64 + 1), 2) + c1 + q(1, 2));
    let corrected = degs.iter().enumerate().all(|(i, d)| *d == q(-(i as i64 + 1), 2) + a1 + b1 + c1 + q(1, 2));
    o.check(literal, format!("below threshold, -n/2 + c1 + 1/2 with c1 = {c1}; computed d+ = {}", join(&degs)));
    o.note(format!("below threshold with constant a1 + b1 + c1 for all n in 1..=9: {}", if corrected { "holds" } else { "fails" }));
    o
}

fn join(v: &[Q]) -> String {
    v.iter().map(Q::to_string).collect::<Vec<_>>().join(" ")
}

fn c5_mirror_min_degree() -> Outcome {
    let mut o = Outcome::new();
    let e = Engine::default();
    let w = k("wh(1,0,torus(2,-5))");
    // min degree of W_-(T(2,-5)) through the mirror: d_-[J_K] = -d_+[J_{mirror K}]
    let mirror = w.clone().mirror();
    let via_mirror: Vec<Q> = degree_sequence(&e, &mirror, 1..=6, Extreme::Max, false).unwrap().iter().map(|d| -d).collect();
    let direct = degree_sequence(&e, &w, 1..=6, Extreme::Min, false).unwrap();
    o.check(via_mirror == direct, "mirror and direct min degrees differ");
    for (i, d) in via_mirror.iter().enumerate() {
        let n = i as i64 + 1;
        let want = q(-21, 2) * n * n + qi(10 * n) + q(1, 2);
        o.check(*d == want, format!("delta* n={n}: {d} vs {want}"));
    }
    let delta = fit_quasipoly(&degree_sequence(&e, &w, 1..=6, Extreme::Max, false).unwrap(), 1).unwrap();
    let star = fit_quasipoly(&direct, 1).unwrap();
    let t = turaev_if_adequate(&delta, &star).unwrap();
    o.check((t.c, t.g_t) == (qi(21), qi(1)), format!("(c, g_T) = ({}, {})", t.c, t.g_t));
    let r = inadequacy_tests(&w, &delta, &star);
    o.check(r.conclusion == Conclusion::NotAdequate, format!("verdict {}", r.conclusion));
    o
}

fn c6_tables() -> Outcome {
    let mut o = Outcome::new();
    let mut checked = 0;
    for plus in [true, false] {
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        for kk in 1..=4i64 {
            let omega = if plus { kk } else { -kk };
            for fam in PathFamily::all(sign) {
                for alpha in 0..=12i64 {
                    for beta in 0..=alpha {
                        let pattern = fam.branch_pattern(kk as u32);
                        let from_pattern = match chi_from_branch_pattern(&pattern, alpha, beta) {
                            Err(SurfaceError::ParityViolation(_)) => continue,
                            r => r,
                        };
                        let rec = match catalog(omega, fam, Weights::new(alpha, beta)) {
                            Ok(r) => r,
                            Err(SurfaceError::ExcludedFamily(_) | SurfaceError::InvalidWeights(_)) => continue,
                            Err(e) => {
                                o.check(false, format!("{fam} k={kk} ({alpha},{beta}): {e}"));
                                continue;
                            }
                        };
                        checked += 1;
                        o.check(from_pattern.as_ref().ok() == Some(&rec.chi), format!("{fam} k={kk} ({alpha},{beta})"));
                    }
                }
            }
        }
    }
    o.note(format!("{checked} (family, k, alpha, beta) cells"));
    for alpha in 1..=12i64 {
        for beta in 0..alpha {
            let (a, b) = (qi(alpha), qi(beta));
            let s2 = |x: Q| (beta > 0).then_some(x);
            let g = (alpha.gcd(&(2 * beta)) as u64, if beta > 0 { (2 * alpha).gcd(&beta) as u64 } else { 0 });
            let rows: [(u8, i64, Q, Option<Q>, u64, u64); 5] = [
                (1, -alpha - beta, qi(2) * b / a, s2(if beta > 0 { qi(2) * a / b } else { qi(0) }), g.0, g.1),
                (2, -alpha - beta, qi(0), s2(qi(0)), alpha as u64, beta as u64),
                (3, -alpha - beta, qi(0), s2(qi(0)), alpha as u64, beta as u64),
                (5, -alpha, qi(-2) * b / a, s2(if beta > 0 { qi(-2) * a / b - 2 } else { qi(0) }), g.0, g.1),
                (6, -alpha, qi(-4), s2(qi(-2)), alpha as u64, beta as u64),
            ];
            for (id, chi, sl1, sl2, c1, c2) in rows {
                let r = catalog(1, PathFamily::new(id, Sign::Plus).unwrap(), Weights::new(alpha, beta)).unwrap();
                o.check(
                    (r.chi, r.slope1, r.slope2, r.count1, r.count2) == (chi, Some(sl1), sl2, c1, c2),
                    format!("table row g{id}+ ({alpha},{beta})"),
                );
            }
        }
    }
    o
}

fn c7_strong_slope() -> Outcome {
    let mut o = Outcome::new();
    let annulus = Some(CompanionSurface { chi: 0, boundary: 2 });
    let mut case = |label: &str, a1: Q, b1: Q, c1: Q, comp, omega, tau, ratio: Q| {
        match verify_strong_slope(a1, b1, c1, comp, omega, tau) {
            Ok(r) => {
                o.check(r.passed(), format!("{label}: slope {} vs 4a_W {}", r.surface.slope, r.a_w * 4));
                o.check(r.surface.ss_ratio == ratio, format!("{label}: ratio {} vs {ratio}", r.surface.ss_ratio));
            }
            Err(e) => o.check(false, format!("{label}: {e}")),
        }
    };
    case("case 1-1 trefoil", q(3, 2), qi(0), q(-3, 2), annulus, 1, 0, qi(-13));
    case("case 1-2", q(3, 2), qi(0), q(-3, 2), None, 1, 7, qi(-1));
    case("case 2-1 (5,2)", q(5, 2), qi(0), q(-5, 2), annulus, -1, 0, qi(-20));
    for omega in [-1i64, -2, -3] {
        case(&format!("case 2-2 omega={omega}"), q(3, 2), qi(0), q(-3, 2), None, omega, 7, qi(2 * omega + 1));
    }
    o
}

fn c8_sign_condition() -> Outcome {
    let mut o = Outcome::new();
    let e = Engine::default();
    for expr in ["torus(2,3)", "torus(2,5)", "wh(1,0,torus(2,3))"] {
        let r = sign_condition_check(&e, &k(expr), 1..=7).unwrap();
        o.check(r.verdict == SignVerdict::Satisfied, format!("{expr}: {:?}", r.verdict));
    }
    o
}

fn c9_example_sum() -> Outcome {
    let mut o = Outcome::new();
    let e = Engine::default();
    let s = k("sum(torus(3,5),torus(3,-7))");
    let hi = fit_quasipoly(&degree_sequence(&e, &s, 0..=10, Extreme::Max, true).unwrap(), 0).unwrap();
    let lo = fit_quasipoly(&degree_sequence(&e, &s, 0..=10, Extreme::Min, true).unwrap(), 0).unwrap();
    o.check(hi.coeffs().iter().all(|c| c[0] == q(15, 4)), format!("max fit {hi}"));
    o.check(lo.coeffs().iter().all(|c| c[0] == q(-21, 4)), format!("min fit {lo}"));
    let r = inadequacy_tests(&s, &hi, &lo);
    o.check(r.conclusion == Conclusion::Inadequate, format!("verdict {}", r.conclusion));
    o
}

fn c10_adequacy_engine() -> Outcome {
    let mut o = Outcome::new();
    let d: PDDiagram = TREFOIL_PD.parse().unwrap();
    let v = adequacy_verdict(&d).unwrap();
    o.check(v.a_adequate && v.b_adequate, "trefoil diagram adequate");
    o.check(d.writhe() == 3, format!("trefoil writhe {}", d.writhe()));
    for (label, w) in [("untwisted", untwisted_whitehead_diagram(&d).unwrap()), ("blackboard", whitehead_diagram(&d).unwrap())] {
        o.check(adequacy_verdict(&w).unwrap().b_adequate, format!("{label} Whitehead diagram B-adequate"));
    }
    for positive in [true, false] {
        let kinked = d.with_kink(1, positive).unwrap();
        let v = adequacy_verdict(&kinked).unwrap();
        o.check(!(v.a_adequate && v.b_adequate), format!("kink (positive={positive}) keeps both flags"));
    }
    o
}

fn c11_internal_consistency() -> Outcome {
    let mut o = Outcome::new();
    for n in 0..=6u32 {
        for j in 0..=n {
            for kk in 0..=n {
                let l = TetLabels::whitehead(n, j, kk).unwrap();
                let t = tet_symbol(l);
                o.check(t.d_plus() == Some(deg_tet(l)), format!("tet ({n},{n},{};{n},{n},{})", 2 * j, 2 * kk));
            }
        }
    }
    let e = Engine::default();
    for expr in ["wh(1,0,torus(2,3))", "wh(-1,0,torus(2,3))", "wh(2,1,torus(2,3))", "wh(-2,3,torus(2,-5))"] {
        for n in 0..=5 {
            // the assembly output is J', computed with an exact final division
            match e.cj_prime(&k(expr), n) {
                Ok(p) => o.check(p.has_integral_exponents(), format!("{expr} n={n} exponents")),
                Err(err) => o.check(false, format!("{expr} n={n}: {err}")),
            }
        }
    }
    o
}

fn cli(args: &[&str], threads: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_slopelab"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads)
        .env_remove("SLOPELAB_CACHE")
        .output()
        .unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn c12_determinism() -> Outcome {
    let mut o = Outcome::new();
    let seq = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| unnormalized_degrees(&Engine::default(), "wh(1,0,torus(2,3))", 1..=8, Extreme::Max))
    };
    o.check(seq(1) == seq(4), "degree sequence depends on worker count");
    let commands: [&[&str]; 5] = [
        &["jones", "--knot", "wh(1,0,torus(2,3))", "--n", "4", "--format", "json"],
        &["degrees", "--knot", "wh(1,0,torus(2,3))", "--n-max", "9", "--format", "json"],
        &["slopes", "--knot", "torus(2,3)", "--omega", "1", "--tau", "0", "--n-max", "8", "--format", "json"],
        &["surfaces", "--omega", "-2", "--alpha", "6", "--beta", "2", "--format", "csv"],
        &["adequacy", "--pd", TREFOIL_PD, "--double", "untwisted", "--format", "json"],
    ];
    for args in commands {
        let first = cli(args, "1");
        o.check(first == cli(args, "4") && first == cli(args, "1"), format!("{}", args[0]));
    }
    o
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("unknot-double identity", c1_unknot_doubles),
        ("torus degree law", c2_torus_degrees),
        ("twisted trefoil double degrees", c3_twisted_double),
        ("Whitehead degree predictor", c4_whitehead_predictor),
        ("mirror/min-degree and Turaev pipeline", c5_mirror_min_degree),
        ("table suite", c6_tables),
        ("strong-slope identities", c7_strong_slope),
        ("sign condition", c8_sign_condition),
        ("connected-sum half-integrality", c9_example_sum),
        ("adequacy engine", c10_adequacy_engine),
        ("internal consistency", c11_internal_consistency),
        ("determinism", c12_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        // written past the test harness capture so the lines always show
        let mut text = format!("{} criterion {:2}: {name}\n", if o.pass { "PASS" } else { "FAIL" }, i + 1);
        for n in &o.notes {
            text.push_str(&format!("    {n}\n"));
        }
        std::io::stdout().write_all(text.as_bytes()).unwrap();
        if !o.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
