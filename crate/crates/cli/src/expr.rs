//! A small expression grammar for rational-function literals such as
//! "1/(1-2t)" or "(1-t)/(1-6t)".
//!
//! Grammar (integer coefficients, one indeterminate — t, x and z are
//! interchangeable):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/')? unary)*      -- juxtaposition multiplies
//! unary := '-' unary | power
//! power := atom ('^' uint)?
//! atom  := uint | var | '(' expr ')'
//! ```

use num_bigint::BigInt;
use wittkit::poly::Poly;
use wittkit::ratfunc::RatFunc;
use wittkit::scalar::{Ring, Scalar};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Var,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Token>, String> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Int(digits.parse().map_err(|e| format!("{}", e))?));
            }
            't' | 'x' | 'z' | 'T' | 'X' | 'Z' => {
                chars.next();
                tokens.push(Token::Var);
            }
            '+' => {
                chars.next();
                tokens.push(Token::Plus);
            }
            '-' | '−' => {
                chars.next();
                tokens.push(Token::Minus);
            }
            '*' => {
                chars.next();
                tokens.push(Token::Star);
            }
            '/' => {
                chars.next();
                tokens.push(Token::Slash);
            }
            '^' => {
                chars.next();
                tokens.push(Token::Caret);
            }
            '(' => {
                chars.next();
                tokens.push(Token::LParen);
            }
            ')' => {
                chars.next();
                tokens.push(Token::RParen);
            }
            other => return Err(format!("unexpected character {:?}", other)),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<RatFunc, String> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek() {
            match op {
                Token::Plus => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = (&acc + &rhs).map_err(|e| e.to_string())?;
                }
                Token::Minus => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = (&acc - &rhs).map_err(|e| e.to_string())?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, String> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = (&acc * &rhs).map_err(|e| e.to_string())?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = (&acc / &rhs).map_err(|e| e.to_string())?;
                }
                // Juxtaposition: "2t", "3(1-t)", "t(1+t)".
                Some(Token::Int(_)) | Some(Token::Var) | Some(Token::LParen) => {
                    let rhs = self.unary()?;
                    acc = (&acc * &rhs).map_err(|e| e.to_string())?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc, String> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(-&inner);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, String> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            let negative = if self.peek() == Some(&Token::Minus) {
                self.pos += 1;
                true
            } else {
                false
            };
            match self.next() {
                Some(Token::Int(n)) => {
                    let exp: i64 = n.try_into().map_err(|_| "exponent too large".to_string())?;
                    let exp = if negative { -exp } else { exp };
                    return base.pow(exp).map_err(|e| e.to_string());
                }
                _ => return Err("expected integer exponent after '^'".into()),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc, String> {
        match self.next() {
            Some(Token::Int(n)) => Ok(RatFunc::from_poly(Poly::constant(Scalar::from_int(n)))),
            Some(Token::Var) => Ok(RatFunc::from_poly(Poly::monomial(Scalar::one(Ring::Z), 1))),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err("missing closing parenthesis".into()),
                }
            }
            other => Err(format!("unexpected token {:?}", other)),
        }
    }
}

/// Parse an expression into an exact rational function.
pub fn parse_ratfunc(text: &str) -> Result<RatFunc, String> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err("empty expression".into());
    }
    let mut parser = Parser { tokens, pos: 0 };
    let rf = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(format!("trailing input after position {}", parser.pos));
    }
    Ok(rf)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_witt_literals() {
        let rf = parse_ratfunc("1/(1-2t)").unwrap();
        assert_eq!(rf, RatFunc::new(Poly::from_ints(&[1]), Poly::from_ints(&[1, -2])).unwrap());
        let rf = parse_ratfunc("(1-t)/(1-6t)").unwrap();
        assert_eq!(
            rf,
            RatFunc::new(Poly::from_ints(&[1, -1]), Poly::from_ints(&[1, -6])).unwrap()
        );
    }

    #[test]
    fn parses_powers_and_juxtaposition() {
        let rf = parse_ratfunc("t/(1-t)^2").unwrap();
        assert_eq!(
            rf,
            RatFunc::new(Poly::from_ints(&[0, 1]), Poly::from_ints(&[1, -2, 1])).unwrap()
        );
        let rf = parse_ratfunc("2t + 3t^2").unwrap();
        assert_eq!(rf, RatFunc::from_poly(Poly::from_ints(&[0, 2, 3])));
    }

    #[test]
    fn variable_names_are_interchangeable() {
        assert_eq!(parse_ratfunc("1/(1-2t)").unwrap(), parse_ratfunc("1/(1-2z)").unwrap());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_ratfunc("").is_err());
        assert!(parse_ratfunc("1 +").is_err());
        assert!(parse_ratfunc("(1-t").is_err());
        assert!(parse_ratfunc("1/0").is_err());
        assert!(parse_ratfunc("y").is_err());
    }

    #[test]
    fn negative_exponents() {
        let rf = parse_ratfunc("(1-2t)^-1").unwrap();
        assert_eq!(rf, parse_ratfunc("1/(1-2t)").unwrap());
    }
}
