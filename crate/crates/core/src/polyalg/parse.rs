//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := primary ('^' uint)*
//! primary:= number | 'x' uint | '(' expr ')' | '-' factor
//! ```
//! Variables are 1-based: `x1 .. x{dim}`.

use super::{PolyError, Polynomial};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64, bool),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'*' => out.push((Tok::Star, start)),
            b'^' => out.push((Tok::Caret, start)),
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b'x' => {
                i += 1;
                let s = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if s == i {
                    return Err(PolyError::Syntax { position: start, message: "expected variable index after 'x'".into() });
                }
                let idx: usize = text[s..i]
                    .parse()
                    .map_err(|_| PolyError::Syntax { position: start, message: "variable index too large".into() })?;
                out.push((Tok::Var(idx), start));
                continue;
            }
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                // optional exponent part, e.g. 1e-3
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let s = &text[start..i];
                let v: f64 = s
                    .parse()
                    .map_err(|_| PolyError::Syntax { position: start, message: format!("malformed number '{s}'") })?;
                let integral = s.bytes().all(|b| b.is_ascii_digit());
                out.push((Tok::Num(v, integral), start));
                continue;
            }
            _ => {
                return Err(PolyError::Syntax { position: start, message: format!("unexpected character '{}'", c as char) })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    dim: usize,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, o)| *o).unwrap_or(self.len)
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        let mut base = self.primary()?;
        while let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let at = self.offset();
            match self.toks.get(self.pos) {
                Some((Tok::Num(v, true), _)) if *v <= u32::MAX as f64 => {
                    let k = *v as u32;
                    self.pos += 1;
                    base = base.pow(k);
                }
                _ => return Err(PolyError::BadExponent { position: at }),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Polynomial, PolyError> {
        let at = self.offset();
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Num(v, _)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.dim, v))
            }
            Some(Tok::Var(idx)) => {
                if idx == 0 || idx > self.dim {
                    return Err(PolyError::VariableOutOfRange { index: idx, dim: self.dim, position: at });
                }
                self.pos += 1;
                Ok(Polynomial::variable(self.dim, idx - 1))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(PolyError::Syntax { position: self.offset(), message: "expected ')'".into() }),
                }
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(_) => Err(PolyError::Syntax { position: at, message: "expected a number, variable or '('".into() }),
            None => Err(PolyError::Syntax { position: at, message: "unexpected end of input".into() }),
        }
    }
}

/// Parse `text` as a polynomial in `dim` variables.
pub fn parse_poly(text: &str, dim: usize) -> Result<Polynomial, PolyError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks: &toks, pos: 0, dim, len: text.len() };
    let poly = p.expr()?;
    if p.pos != toks.len() {
        return Err(PolyError::Syntax { position: p.offset(), message: "trailing input".into() });
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_twoballs_polynomial() {
        let p = parse_poly("8*x1^2 + 8*(x2^2-1)^2 - 1", 2).unwrap();
        let want = Polynomial::from_terms(
            2,
            [(vec![2, 0], 8.0), (vec![0, 4], 8.0), (vec![0, 2], -16.0), (vec![0, 0], 7.0)],
        );
        assert_eq!(p, want);
    }

    #[test]
    fn annulus_polynomial_at_origin() {
        let p = parse_poly("4*(x1^2+x2^2-1)^2-1", 2).unwrap();
        assert_eq!(p.eval(&[0.0, 0.0]).unwrap(), 3.0);
    }

    #[test]
    fn rejects_out_of_range_variable() {
        assert!(matches!(parse_poly("x3", 2), Err(PolyError::VariableOutOfRange { index: 3, .. })));
        assert!(matches!(parse_poly("x0", 2), Err(PolyError::VariableOutOfRange { index: 0, .. })));
    }

    #[test]
    fn rejects_bad_exponents() {
        assert!(matches!(parse_poly("x1^-1", 2), Err(PolyError::BadExponent { position: 3 })));
        assert!(matches!(parse_poly("x1^1.5", 2), Err(PolyError::BadExponent { .. })));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_poly("x1 + * x2", 2) {
            Err(PolyError::Syntax { position, .. }) => assert_eq!(position, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_poly("(x1", 2), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_poly("x1 x2", 2), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_poly("", 2), Err(PolyError::Syntax { .. })));
    }

    #[test]
    fn unary_minus_and_scientific_numbers() {
        let p = parse_poly("-x1 + 2.5e-1*x2", 2).unwrap();
        assert_eq!(p.eval(&[1.0, 4.0]).unwrap(), 0.0);
    }

    #[test]
    fn print_round_trips() {
        let p = parse_poly("8*x1^2 + 8*(x2^2-1)^2 - 1 - x1*x2/1", 2);
        assert!(p.is_err());
        let p = parse_poly("0.1*x1^3*x2 - 7*x2 + 1/3", 2);
        assert!(p.is_err());
        let p = parse_poly("0.1*x1^3*x2 - 7*x2 + 0.3333333333333333 - x1", 2).unwrap();
        let q = parse_poly(&p.to_string(), 2).unwrap();
        assert_eq!(p, q);
    }
}
