//! Text form of multivectors.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary ('*' unary)*
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' digits)?
//! atom    := number | 'i' | blade | '(' sum ')'
//! number  := digits ('/' digits)? 'i'?
//! blade   := 'e' digits? | 'e[' index (',' index)* ']'
//! ```
//!
//! Products need an explicit `*`: `e1e2` is an error, `e1*e2` is `e12`.
//! The digit form `e13` is read one index per digit and only allowed when
//! `n ≤ 9`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Blade, Multivector, Scalar, Signature};

/// Byte offset into the input plus a message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}: {}", self.pos, self.message)
    }
}

impl core::error::Error for ParseError {}

type PResult<T> = core::result::Result<T, ParseError>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    sig: Signature,
}

pub fn parse(text: &str, sig: Signature) -> PResult<Multivector> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        sig,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty expression"));
    }
    let v = p.sum()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err(format!("unexpected {:?}", p.peek_char())));
    }
    Ok(v)
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn err_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            pos,
            message: message.into(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        core::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
            .unwrap_or('?')
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    /// Skips whitespace, then consumes `c` if it is next.
    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn sum(&mut self) -> PResult<Multivector> {
        let mut acc = self.product()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.product()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> PResult<Multivector> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<Multivector> {
        if self.eat(b'-') {
            Ok(-&self.unary()?)
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> PResult<Multivector> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let at = self.pos;
        let k = self
            .digits()
            .ok_or_else(|| self.err("expected a nonnegative integer exponent"))?
            .parse::<u32>()
            .map_err(|_| self.err_at(at, "exponent too large"))?;
        Ok(base.pow(k))
    }

    fn atom(&mut self) -> PResult<Multivector> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(b'i') => {
                self.pos += 1;
                self.imaginary(start, Scalar::one())
            }
            Some(b'e') => {
                self.pos += 1;
                let b = self.blade(start)?;
                self.reject_juxtaposition()?;
                Ok(Multivector::blade(self.sig, b).expect("indices checked"))
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().expect("digit").parse().expect("digits");
                let mut value = BigRational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    let den: BigInt = self
                        .digits()
                        .ok_or_else(|| self.err("expected a denominator"))?
                        .parse()
                        .expect("digits");
                    if den.is_zero() {
                        return Err(self.err_at(at, "zero denominator"));
                    }
                    value /= BigRational::from_integer(den);
                }
                if self.peek() == Some(b'i') {
                    self.pos += 1;
                    return self.imaginary(start, Scalar::real(value));
                }
                self.reject_juxtaposition()?;
                Ok(Multivector::scalar(self.sig, Scalar::real(value)))
            }
            Some(_) => Err(self.err(format!("unexpected {:?}", self.peek_char()))),
        }
    }

    fn imaginary(&mut self, start: usize, factor: Scalar) -> PResult<Multivector> {
        if !self.sig.is_complex() {
            return Err(self.err_at(start, "imaginary literal in real mode"));
        }
        self.reject_juxtaposition()?;
        Ok(Multivector::scalar(self.sig, factor * Scalar::i()))
    }

    /// `2e1`, `e1e2` and the like: an implicit product is not allowed.
    fn reject_juxtaposition(&self) -> PResult<()> {
        match self.peek() {
            Some(c) if c.is_ascii_alphanumeric() || c == b'(' || c == b'[' => {
                Err(self.err("implicit product; write '*' between factors"))
            }
            _ => Ok(()),
        }
    }

    /// Blade name after the leading `e`.
    fn blade(&mut self, start: usize) -> PResult<Blade> {
        let n = self.sig.n();
        let mut idx: Vec<(usize, usize)> = Vec::new();
        if self.peek() == Some(b'[') {
            self.pos += 1;
            loop {
                self.skip_ws();
                let at = self.pos;
                let a = self
                    .digits()
                    .ok_or_else(|| self.err("expected an index"))?
                    .parse::<usize>()
                    .map_err(|_| self.err_at(at, "index too large"))?;
                idx.push((at, a));
                if self.eat(b',') {
                    continue;
                }
                if self.eat(b']') {
                    break;
                }
                return Err(self.err("expected ',' or ']'"));
            }
        } else {
            let at = self.pos;
            if let Some(ds) = self.digits() {
                if n > 9 {
                    return Err(self.err_at(at, format!("digit-form blade name needs n <= 9 (n = {n}); use e[..]")));
                }
                idx.extend(ds.bytes().enumerate().map(|(k, d)| (at + k, usize::from(d - b'0'))));
            }
        }
        for (k, &(at, a)) in idx.iter().enumerate() {
            if a == 0 || a > n {
                return Err(self.err_at(at, format!("index {a} out of range 1..={n}")));
            }
            if k > 0 && idx[k - 1].1 >= a {
                return Err(self.err_at(start, "blade indices must be strictly ascending"));
            }
        }
        let list: Vec<usize> = idx.into_iter().map(|(_, a)| a).collect();
        Blade::from_indices(&list).map_err(|e| self.err_at(start, e.to_string()))
    }
}

fn blade_name(b: Blade, n: usize) -> String {
    let idx = b.index_vec();
    if idx.is_empty() {
        return "e".into();
    }
    let parts: Vec<String> = idx.iter().map(|a| a.to_string()).collect();
    if n > 9 {
        format!("e[{}]", parts.join(","))
    } else {
        format!("e{}", parts.concat())
    }
}

fn rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Canonical text: ascending blade order, `*` between coefficient and blade,
/// unit coefficients dropped except on the identity `e`.
pub fn print(u: &Multivector) -> String {
    let n = u.signature().n();
    let mut out = String::new();
    for (b, c) in u.terms() {
        // (negative, coefficient text without sign, or None for magnitude 1)
        let (neg, coeff) = if c.im().is_zero() {
            let m = c.re().abs();
            (c.re().is_negative(), (!m.is_one()).then(|| rational(&m)))
        } else if c.re().is_zero() {
            let m = c.im().abs();
            let text = if m.is_one() { "i".to_string() } else { format!("{}i", rational(&m)) };
            (c.im().is_negative(), Some(text))
        } else {
            let sign = if c.im().is_negative() { "-" } else { "+" };
            let m = c.im().abs();
            let im = if m.is_one() { String::new() } else { rational(&m) };
            (false, Some(format!("({}{sign}{im}i)", rational(c.re()))))
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let name = blade_name(b, n);
        match coeff {
            Some(text) => {
                out.push_str(&text);
                out.push('*');
                out.push_str(&name);
            }
            None => out.push_str(&name),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: usize, q: usize, r: usize) -> Signature {
        Signature::new(p, q, r).unwrap()
    }

    #[test]
    fn parses_sums_and_products() {
        let g = sig(2, 0, 0);
        let u = parse("1 + 2*e1 - 3*e12", g).unwrap();
        assert_eq!(u.coeff(Blade::IDENTITY), Scalar::from_int(1));
        assert_eq!(u.coeff(Blade::from_mask(1)), Scalar::from_int(2));
        assert_eq!(u.coeff(Blade::from_mask(3)), Scalar::from_int(-3));
        assert_eq!(print(&u), "e + 2*e1 - 3*e12");
        assert_eq!(parse("e1*e2", g).unwrap(), parse("e12", g).unwrap());
        assert_eq!(parse("e2*e1", g).unwrap(), parse("-e12", g).unwrap());
    }

    #[test]
    fn grassmann_examples() {
        let g = sig(0, 0, 3);
        assert_eq!(print(&parse("(e + e1)*(e - e1)", g).unwrap()), "e");
        assert_eq!(print(&parse("(e+e1)*e2*(e-e1)", g).unwrap()), "e2 + 2*e12");
        assert_eq!(print(&parse("(e+e1)*e23*(e-e1)", g).unwrap()), "e23");
    }

    #[test]
    fn precedence() {
        let g = sig(1, 0, 0);
        // -e1^2 is -(e1^2) = -1, while (-e1)^2 = 1.
        assert_eq!(print(&parse("-e1^2", g).unwrap()), "-e");
        assert_eq!(print(&parse("(-e1)^2", g).unwrap()), "e");
        assert_eq!(print(&parse("2*e1 + 3*e1", g).unwrap()), "5*e1");
        assert_eq!(print(&parse("e1^0", g).unwrap()), "e");
        assert_eq!(print(&parse("1/2 - 1/2", g).unwrap()), "0");
    }

    #[test]
    fn printer_formats() {
        let g = sig(2, 0, 0);
        assert_eq!(print(&Multivector::zero(g)), "0");
        assert_eq!(print(&Multivector::scalar(g, Scalar::from_ratio(3, 2))), "3/2*e");
        assert_eq!(print(&parse("-e1 - 1/3*e2", g).unwrap()), "-e1 - 1/3*e2");
    }

    #[test]
    fn errors_have_positions() {
        let g = sig(0, 0, 3);
        let e = parse("e21", g).unwrap_err();
        assert!(e.message.contains("ascending"), "{e}");
        assert_eq!(parse("e + e4", g).unwrap_err().pos, 5);
        assert!(parse("2e1", g).is_err());
        assert!(parse("e1e2", g).is_err());
        assert!(parse("e + ", g).is_err());
        assert!(parse("(e", g).is_err());
        assert!(parse("i", g).unwrap_err().message.contains("imaginary"));
        assert!(parse("1/0", g).is_err());
        assert!(parse("e0", g).is_err());
        assert!(parse("", g).is_err());
        assert!(parse("e1 $", g).is_err());
    }

    #[test]
    fn large_n_uses_brackets() {
        let g = sig(10, 0, 0);
        assert!(parse("e12", g).unwrap_err().message.contains("n <= 9"));
        let u = parse("e[1, 10] + e[3]", g).unwrap();
        assert_eq!(print(&u), "e3 + e[1,10]".replace("e3", "e[3]"));
        assert_eq!(parse(&print(&u), g).unwrap(), u);
        assert!(parse("e[10,1]", g).is_err());
    }

    #[test]
    fn complex_literals() {
        let g = Signature::complex(1, 0, 0).unwrap();
        let u = parse("(1 + 2/3i)*e1 - i + 2i*e", g).unwrap();
        assert_eq!(u.coeff(Blade::IDENTITY), Scalar::i());
        assert_eq!(print(&u), "i*e + (1+2/3i)*e1");
        assert_eq!(parse(&print(&u), g).unwrap(), u);
        let v = parse("-i*e1 + (2-i)", g).unwrap();
        assert_eq!(print(&v), "(2-i)*e - i*e1");
        assert_eq!(parse(&print(&v), g).unwrap(), v);
    }
}
