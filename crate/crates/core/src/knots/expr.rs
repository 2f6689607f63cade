//! Knot expressions and their text grammar.
//!
//! ```text
//! expr := "unknot" | "torus(" int "," int ")" | "mirror(" expr ")"
//!       | "sum(" expr ("," expr)+ ")" | "wh(" int "," int "," expr ")"
//! ```
//!
//! Whitespace is ignored between tokens. The canonical form has no whitespace,
//! stores torus parameters as positive integers (a negative parameter becomes
//! a mirror) and collapses double mirrors.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KnotExpr {
    Unknot,
    /// `T(a, b)` with `a, b ≥ 2` coprime.
    Torus(u32, u32),
    Mirror(Box<KnotExpr>),
    Sum(Vec<KnotExpr>),
    /// `W_ω^τ(K)` with `ω ≠ 0`.
    Whitehead { omega: i64, tau: i64, companion: Box<KnotExpr> },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at byte {offset}: {message} (expected {})", expected.join(" or "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub message: String,
}

impl KnotExpr {
    /// Validated torus knot; a single negative parameter yields the mirror image.
    pub fn torus(a: i64, b: i64) -> Result<KnotExpr, String> {
        let (ua, ub) = (a.unsigned_abs(), b.unsigned_abs());
        if ua < 2 || ub < 2 {
            return Err(format!("torus({a},{b}): parameters must satisfy |a|,|b| >= 2"));
        }
        if ua.gcd(&ub) != 1 {
            return Err(format!("torus({a},{b}): parameters must be coprime"));
        }
        let t = KnotExpr::Torus(ua as u32, ub as u32);
        Ok(if (a < 0) != (b < 0) { t.mirror() } else { t })
    }

    pub fn whitehead(omega: i64, tau: i64, companion: KnotExpr) -> Result<KnotExpr, String> {
        if omega == 0 {
            return Err("wh: omega must be nonzero".to_string());
        }
        Ok(KnotExpr::Whitehead { omega, tau, companion: Box::new(companion) })
    }

    pub fn mirror(self) -> KnotExpr {
        match self {
            KnotExpr::Unknot => KnotExpr::Unknot,
            KnotExpr::Mirror(k) => *k,
            k => KnotExpr::Mirror(Box::new(k)),
        }
    }

    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Unknot => write!(f, "unknot"),
            KnotExpr::Torus(a, b) => write!(f, "torus({a},{b})"),
            KnotExpr::Mirror(k) => write!(f, "mirror({k})"),
            KnotExpr::Sum(parts) => {
                write!(f, "sum(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            KnotExpr::Whitehead { omega, tau, companion } => write!(f, "wh({omega},{tau},{companion})"),
        }
    }
}

impl std::str::FromStr for KnotExpr {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_knot_expr(s)
    }
}

pub fn parse_knot_expr(text: &str) -> Result<KnotExpr, ParseError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err(&["end of input"], "trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, expected: &[&str], message: &str) -> ParseError {
        ParseError {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            message: message.to_string(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        self.ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            let tok = format!("'{}'", c as char);
            Err(self.err(&[&tok], "unexpected input"))
        }
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("")
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.ws();
        let start = self.pos;
        if matches!(self.s.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let tok = std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("");
        tok.parse().map_err(|_| {
            let mut e = self.err(&["integer"], "expected an integer");
            e.offset = start;
            e
        })
    }

    fn semantic(&self, start: usize, r: Result<KnotExpr, String>) -> Result<KnotExpr, ParseError> {
        r.map_err(|m| ParseError { offset: start, expected: vec!["valid parameters".into()], message: m })
    }

    fn expr(&mut self) -> Result<KnotExpr, ParseError> {
        self.ws();
        let start = self.pos;
        let name = self.ident().to_string();
        const HEADS: [&str; 5] = ["unknot", "torus", "mirror", "sum", "wh"];
        match name.as_str() {
            "unknot" => Ok(KnotExpr::Unknot),
            "torus" => {
                self.expect(b'(')?;
                let a = self.int()?;
                self.expect(b',')?;
                let b = self.int()?;
                self.expect(b')')?;
                self.semantic(start, KnotExpr::torus(a, b))
            }
            "mirror" => {
                self.expect(b'(')?;
                let k = self.expr()?;
                self.expect(b')')?;
                Ok(k.mirror())
            }
            "sum" => {
                self.expect(b'(')?;
                let mut parts = vec![self.expr()?];
                loop {
                    self.ws();
                    match self.s.get(self.pos) {
                        Some(b',') => {
                            self.pos += 1;
                            parts.push(self.expr()?);
                        }
                        Some(b')') if parts.len() >= 2 => {
                            self.pos += 1;
                            break;
                        }
                        Some(b')') => return Err(self.err(&["','"], "sum needs at least two parts")),
                        _ => return Err(self.err(&["','", "')'"], "unexpected input")),
                    }
                }
                Ok(KnotExpr::Sum(parts))
            }
            "wh" => {
                self.expect(b'(')?;
                let omega = self.int()?;
                self.expect(b',')?;
                let tau = self.int()?;
                self.expect(b',')?;
                let k = self.expr()?;
                self.expect(b')')?;
                self.semantic(start, KnotExpr::whitehead(omega, tau, k))
            }
            _ => {
                self.pos = start;
                Err(self.err(&HEADS, "unknown constructor"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let k = parse_knot_expr("wh(1, 0, torus(2,3))").unwrap();
        assert_eq!(k, KnotExpr::whitehead(1, 0, KnotExpr::Torus(2, 3)).unwrap());
        assert_eq!(k.canonical(), "wh(1,0,torus(2,3))");
        let e = parse_knot_expr("wh(0,1,unknot)").unwrap_err();
        assert!(e.message.contains("nonzero"));
        assert_eq!(e.offset, 0);
        let e = parse_knot_expr("torus(2,4)").unwrap_err();
        assert!(e.message.contains("coprime"));
    }

    #[test]
    fn normalization() {
        assert_eq!(parse_knot_expr("torus(2,-5)").unwrap().canonical(), "mirror(torus(2,5))");
        assert_eq!(parse_knot_expr("torus(-2,-5)").unwrap().canonical(), "torus(2,5)");
        assert_eq!(parse_knot_expr("mirror(mirror(torus(3,2)))").unwrap().canonical(), "torus(3,2)");
        assert_eq!(parse_knot_expr("mirror(unknot)").unwrap().canonical(), "unknot");
        assert_eq!(
            parse_knot_expr(" sum( torus(3,5) ,\ttorus(3,-7) ) ").unwrap().canonical(),
            "sum(torus(3,5),mirror(torus(3,7)))"
        );
    }

    #[test]
    fn error_offsets() {
        let e = parse_knot_expr("sum(unknot)").unwrap_err();
        assert_eq!(e.offset, 10);
        let e = parse_knot_expr("wh(1,0,knot)").unwrap_err();
        assert_eq!(e.offset, 7);
        assert!(e.expected.contains(&"torus".to_string()));
        let e = parse_knot_expr("torus(2,x)").unwrap_err();
        assert_eq!((e.offset, e.expected.clone()), (8, vec!["integer".to_string()]));
        let e = parse_knot_expr("unknot)").unwrap_err();
        assert_eq!(e.offset, 6);
        assert!(parse_knot_expr("torus(1,3)").is_err());
        assert!(parse_knot_expr("").is_err());
    }

    fn arb_expr() -> impl Strategy<Value = KnotExpr> {
        let leaf = prop_oneof![
            Just(KnotExpr::Unknot),
            (2i64..6, 2i64..8, any::<bool>()).prop_filter_map("coprime", |(a, b, neg)| {
                KnotExpr::torus(a, if neg { -b } else { b }).ok()
            }),
        ];
        leaf.prop_recursive(3, 12, 3, |inner| {
            prop_oneof![
                inner.clone().prop_map(KnotExpr::mirror),
                prop::collection::vec(inner.clone(), 2..4).prop_map(KnotExpr::Sum),
                (prop_oneof![-3i64..0, 1i64..4], -4i64..5, inner)
                    .prop_map(|(w, t, k)| KnotExpr::whitehead(w, t, k).unwrap()),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_identity(k in arb_expr()) {
            let s = k.canonical();
            let back = parse_knot_expr(&s).unwrap();
            prop_assert_eq!(&back, &k);
            prop_assert_eq!(back.canonical(), s);
        }

        #[test]
        fn whitespace_insensitive(k in arb_expr()) {
            let spaced = k.canonical().replace(',', " , ").replace('(', " ( ");
            prop_assert_eq!(parse_knot_expr(&spaced).unwrap(), k);
        }
    }
}
