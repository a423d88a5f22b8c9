//! Text and TeX serialization of polynomials, plus the parser.
//!
//! The plain grammar is `coef*sym^e*...` terms joined by `+`/`-`, e.g.
//! `1/2*r^4 + 3*r - 41`. The TeX emitter writes `\frac{1}{2} r^{4} + ...`.
//! Both forms round-trip through [`parse_poly`].

use super::{Expo, Poly, Rat, Sym};
use crate::error::Error;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

fn rat_body(c: &Rat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn mono_body(e: &Expo) -> String {
    let mut parts = Vec::new();
    for s in Sym::ALL {
        let k = e.exp(s);
        if k == 1 {
            parts.push(s.name().to_string());
        } else if k > 1 {
            parts.push(format!("{}^{}", s.name(), k));
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.iter_terms().rev() {
            let mag = super::rat_abs(c);
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mono = mono_body(e);
            if mono.is_empty() {
                f.write_str(&rat_body(&mag))?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", rat_body(&mag), mono)?;
            }
        }
        Ok(())
    }
}

impl Poly {
    /// TeX rendering, parseable back by [`parse_poly`].
    pub fn to_tex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (e, c) in self.iter_terms().rev() {
            let mag = super::rat_abs(c);
            if first {
                if c.is_negative() {
                    out.push('-');
                }
                first = false;
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coef = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
            };
            let mut factors = Vec::new();
            for s in Sym::ALL {
                let k = e.exp(s);
                if k == 1 {
                    factors.push(s.tex_name().to_string());
                } else if k > 1 {
                    factors.push(format!("{}^{{{}}}", s.tex_name(), k));
                }
            }
            if factors.is_empty() {
                out.push_str(&coef);
            } else {
                if !mag.is_one() {
                    out.push_str(&coef);
                    out.push(' ');
                }
                out.push_str(&factors.join(" "));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LBrace,
    RBrace,
    Frac,
    Num(BigInt),
    Name(String),
}

fn lex(src: &str) -> Result<Vec<Tok>, Error> {
    let mut toks = Vec::new();
    let bytes: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '/' => {
                toks.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1;
            }
            '{' => {
                toks.push(Tok::LBrace);
                i += 1;
            }
            '}' => {
                toks.push(Tok::RBrace);
                i += 1;
            }
            '\\' => {
                let rest: String = bytes[i + 1..]
                    .iter()
                    .take_while(|c| c.is_ascii_alphabetic())
                    .collect();
                if rest == "frac" {
                    toks.push(Tok::Frac);
                    i += 1 + rest.len();
                } else {
                    return Err(Error::Parse(format!("unknown TeX command \\{rest}")));
                }
            }
            '0'..='9' => {
                let digits: String = bytes[i..]
                    .iter()
                    .take_while(|c| c.is_ascii_digit())
                    .collect();
                i += digits.len();
                toks.push(Tok::Num(digits.parse().unwrap()));
            }
            c if c.is_ascii_alphabetic() => {
                // Symbol names: a single letter optionally followed by
                // digits (`S1`) or an underscored digit in TeX (`S_1`).
                let mut name = String::new();
                name.push(c);
                i += 1;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == '_') {
                    if bytes[i] == '_' {
                        i += 1;
                        continue;
                    }
                    name.push(bytes[i]);
                    i += 1;
                }
                toks.push(Tok::Name(name));
            }
            other => return Err(Error::Parse(format!("unexpected character '{other}'"))),
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), Error> {
        match self.bump() {
            Some(t) if t == want => Ok(()),
            other => Err(Error::Parse(format!("expected {want:?}, found {other:?}"))),
        }
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(n),
            other => Err(Error::Parse(format!("expected integer, found {other:?}"))),
        }
    }

    /// exponent := NUM | '{' NUM '}'
    fn exponent(&mut self) -> Result<u16, Error> {
        let braced = matches!(self.peek(), Some(Tok::LBrace));
        if braced {
            self.bump();
        }
        let n = self.integer()?;
        if braced {
            self.expect(Tok::RBrace)?;
        }
        u16::try_from(&n).map_err(|_| Error::Parse(format!("exponent {n} out of range")))
    }

    /// factor := NUM ['/' NUM] | '\frac' '{' NUM '}' '{' NUM '}' | NAME ['^' exponent]
    fn factor(&mut self) -> Result<Poly, Error> {
        match self.bump() {
            Some(Tok::Num(n)) => {
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    Ok(Poly::constant(Rat::new(n, d)))
                } else {
                    Ok(Poly::constant(Rat::from_integer(n)))
                }
            }
            Some(Tok::Frac) => {
                self.expect(Tok::LBrace)?;
                let n = self.integer()?;
                self.expect(Tok::RBrace)?;
                self.expect(Tok::LBrace)?;
                let d = self.integer()?;
                self.expect(Tok::RBrace)?;
                if d.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok(Poly::constant(Rat::new(n, d)))
            }
            Some(Tok::Name(name)) => {
                let sym = Sym::from_name(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown symbol '{name}'")))?;
                let mut e = 1u16;
                if matches!(self.peek(), Some(Tok::Caret)) {
                    self.bump();
                    e = self.exponent()?;
                }
                Ok(Poly::term(Rat::one(), Expo::of(sym, e)))
            }
            other => Err(Error::Parse(format!("expected factor, found {other:?}"))),
        }
    }

    /// term := factor (('*' | juxtaposition) factor)*
    fn term(&mut self) -> Result<Poly, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(Tok::Num(_)) | Some(Tok::Name(_)) | Some(Tok::Frac) => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    /// sum := ['-'] term (('+' | '-') term)*
    fn sum(&mut self) -> Result<Poly, Error> {
        let mut acc = Poly::zero();
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                false
            }
            Some(Tok::Plus) => {
                self.bump();
                true
            }
            _ => true,
        };
        loop {
            let t = self.term()?;
            if sign {
                acc += &t;
            } else {
                acc -= &t;
            }
            match self.bump() {
                None => break,
                Some(Tok::Plus) => sign = true,
                Some(Tok::Minus) => sign = false,
                Some(other) => {
                    return Err(Error::Parse(format!("expected + or -, found {other:?}")))
                }
            }
        }
        Ok(acc)
    }
}

/// Parses the plain grammar as well as the TeX emitter's output.
pub fn parse_poly(src: &str) -> Result<Poly, Error> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    p.sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_basic_forms() {
        let f = parse_poly("1369*g^2 - 3034*g + 1681").unwrap();
        assert_eq!(f.to_string(), "1369*g^2 - 3034*g + 1681");
        assert_eq!(parse_poly("0").unwrap().to_string(), "0");
        assert_eq!(parse_poly("-1/2*r").unwrap().to_string(), "-1/2*r");
        assert_eq!(parse_poly("g").unwrap().to_string(), "g");
    }

    #[test]
    fn tex_round_trips() {
        let f = parse_poly("1/2*r^4 + 3*r*S1 - S2^2 + 7").unwrap();
        let tex = f.to_tex();
        assert_eq!(parse_poly(&tex).unwrap(), f);
        assert!(tex.contains("\\frac{1}{2}"));
        assert!(tex.contains("S_1"));
    }

    #[test]
    fn parses_juxtaposed_tex_products() {
        let f = parse_poly("\\frac{3}{2} g^{2} d").unwrap();
        let g = parse_poly("3/2*g^2*d").unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("").is_err());
        assert!(parse_poly("q + 1").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("g ^").is_err());
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        let term = (
            -20i64..=20,
            1i64..=6,
            prop::sample::select(vec![Sym::R, Sym::G, Sym::D, Sym::S1, Sym::S2]),
            0u16..4,
            prop::sample::select(vec![Sym::N, Sym::A, Sym::T]),
            0u16..3,
        );
        prop::collection::vec(term, 0..6).prop_map(|ts| {
            let mut acc = Poly::zero();
            for (num, den, s1, e1, s2, e2) in ts {
                let c = Rat::new(num.into(), den.into());
                let mono = &Poly::sym(s1).pow(u32::from(e1)) * &Poly::sym(s2).pow(u32::from(e2));
                acc += &mono.scale(&c);
            }
            acc
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(f in arb_poly()) {
            let s = f.to_string();
            prop_assert_eq!(parse_poly(&s).unwrap(), f.clone());
            let tex = f.to_tex();
            prop_assert_eq!(parse_poly(&tex).unwrap(), f);
        }

        #[test]
        fn ring_axioms_spotcheck(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            // associativity and distributivity
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&f * &g, &g * &f);
        }

        #[test]
        fn subst_is_ring_homomorphism(f in arb_poly(), g in arb_poly()) {
            use std::collections::BTreeMap;
            let mut b = BTreeMap::new();
            // bind S1 and S2 to small polynomials in g
            b.insert(Sym::S1, parse_poly("g + 1").unwrap());
            b.insert(Sym::S2, parse_poly("2*g - 3").unwrap());
            let lhs = (&f * &g).subst(&b);
            let rhs = &f.subst(&b) * &g.subst(&b);
            prop_assert_eq!(lhs, rhs);
            let lhs = (&f + &g).subst(&b);
            let rhs = &f.subst(&b) + &g.subst(&b);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
