//! The `.sul` model-file format.
//!
//! ```text
//! # the S² model
//! gen x 2
//! gen y 3
//! d y = x^2
//! ```
//!
//! `gen <name> <degree>` declares generators in order, `d <name> = <poly>`
//! sets a differential (undefined differentials are zero). Polynomials use
//! rational coefficients, `*`, `^`, `+` and `-`; products are taken in the
//! written order with Koszul signs, so `b*a = -a*b` for odd `a`, `b`. The
//! directive `option non-simply-connected` allows degree-1 generators.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{FreeAlgebra, Generator, Polynomial};
use crate::linalg::Rational;
use crate::model::{ModelError, SullivanModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{at}: syntax error: {message}")]
    Syntax { at: Location, message: String },
    #[error("{at}: unknown generator `{name}`")]
    UnknownGenerator { at: Location, name: String },
    #[error("{at}: generator `{name}` declared twice")]
    DuplicateGenerator { at: Location, name: String },
    #[error("{at}: differential of `{name}` defined twice")]
    DuplicateDifferential { at: Location, name: String },
    #[error("{at}: d {name} must have degree {expected}, but the right-hand side has degree {found}")]
    DegreeMismatch {
        at: Location,
        name: String,
        expected: u32,
        found: String,
    },
    #[error("{at}: d {name} refers to `{reference}`, which is not declared before `{name}`")]
    NotTriangular {
        at: Location,
        name: String,
        reference: String,
    },
    #[error("{0}")]
    Invalid(#[from] ModelError),
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    Number(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Equals,
}

fn tokenize(line: &str, line_no: usize) -> Result<Vec<(Token, Location)>, ParseError> {
    let chars: Vec<(usize, char)> = line.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (_, c) = chars[i];
        let at = Location {
            line: line_no,
            column: i + 1,
        };
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '^' => Some(Token::Caret),
            '/' => Some(Token::Slash),
            '=' => Some(Token::Equals),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((t, at));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((Token::Number(text.parse().expect("digits")), at));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_' || chars[i].1 == '\'') {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((Token::Ident(text), at));
        } else {
            return Err(ParseError::Syntax {
                at,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    tokens: &'a [(Token, Location)],
    pos: usize,
    end: Location,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> Location {
        self.tokens.get(self.pos).map_or(self.end, |(_, at)| *at)
    }

    fn next(&mut self) -> Option<(&'a Token, Location)> {
        let t = self.tokens.get(self.pos).map(|(t, at)| (t, *at));
        self.pos += 1;
        t
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            at: self.here(),
            message: message.into(),
        })
    }

    fn number(&mut self) -> Result<BigInt, ParseError> {
        match self.next() {
            Some((Token::Number(n), _)) => Ok(n.clone()),
            _ => {
                self.pos -= 1;
                self.syntax("expected a number")
            }
        }
    }
}

/// Where each polynomial term came from, for error messages.
struct ParsedPolynomial {
    poly: Polynomial,
    references: Vec<(usize, Location)>,
}

fn parse_polynomial(cursor: &mut Cursor<'_>, algebra: &FreeAlgebra) -> Result<ParsedPolynomial, ParseError> {
    let mut poly = Polynomial::zero();
    let mut references = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match cursor.peek() {
            Some(Token::Plus) if !first => {
                cursor.next();
            }
            Some(Token::Minus) => {
                cursor.next();
                negative = true;
            }
            None if first => return cursor.syntax("expected a polynomial"),
            None => break,
            _ if first => {}
            _ => return cursor.syntax("expected `+` or `-`"),
        }
        first = false;
        let mut term = algebra.one();
        let mut expect_factor = true;
        while expect_factor {
            let at = cursor.here();
            match cursor.next() {
                Some((Token::Number(n), _)) => {
                    let mut value = Rational::from_integer(n.clone());
                    if cursor.peek() == Some(&Token::Slash) {
                        cursor.next();
                        let denom = cursor.number()?;
                        if denom == BigInt::from(0) {
                            return Err(ParseError::Syntax {
                                at,
                                message: "zero denominator".into(),
                            });
                        }
                        value /= Rational::from_integer(denom);
                    }
                    if cursor.peek() == Some(&Token::Caret) {
                        return cursor.syntax("powers of numbers are not supported");
                    }
                    term = term.scaled(&value);
                }
                Some((Token::Ident(name), _)) => {
                    let index = algebra
                        .index_of(name)
                        .ok_or_else(|| ParseError::UnknownGenerator {
                            at,
                            name: name.clone(),
                        })?;
                    references.push((index, at));
                    let mut exp = 1u32;
                    if cursor.peek() == Some(&Token::Caret) {
                        cursor.next();
                        let e = cursor.number()?;
                        exp = u32::try_from(e).or_else(|_| cursor.syntax("exponent too large"))?;
                    }
                    let factor = algebra.power(&algebra.gen(index), exp);
                    term = algebra.multiply(&term, &factor);
                }
                _ => {
                    cursor.pos -= 1;
                    return cursor.syntax("expected a number or generator name");
                }
            }
            expect_factor = match cursor.peek() {
                Some(Token::Star) => {
                    cursor.next();
                    true
                }
                Some(Token::Ident(_) | Token::Number(_)) => true,
                _ => false,
            };
        }
        if negative {
            term = term.neg();
        }
        poly.add_assign(&term);
    }
    Ok(ParsedPolynomial { poly, references })
}

/// Parses a model description and validates it.
pub fn parse_model(text: &str) -> Result<SullivanModel, ParseError> {
    Ok(parse_model_unvalidated(text)?.validate()?)
}

/// A `d` line waiting for all declarations: generator index, tokens of the
/// right-hand side, location of the line and the generator name.
type PendingDifferential = (usize, Vec<(Token, Location)>, Location, String);

/// Parses a model description; checks locations and degrees but leaves the
/// algebraic checks (d² = 0, decomposability) to [`SullivanModel::validate`].
pub fn parse_model_unvalidated(text: &str) -> Result<SullivanModel, ParseError> {
    let mut generators: Vec<Generator> = Vec::new();
    let mut differentials: Vec<Option<Polynomial>> = Vec::new();
    let mut simply_connected = true;
    // Differentials are parsed after all declarations, so a forward
    // reference is reported as non-triangular rather than unknown.
    let mut pending: Vec<PendingDifferential> = Vec::new();

    for (line_idx, line) in text.lines().enumerate() {
        let line_no = line_idx + 1;
        let content = line.split('#').next().unwrap_or("");
        if let Some(rest) = content.trim_start().strip_prefix("option") {
            match rest.trim() {
                "non-simply-connected" => {
                    simply_connected = false;
                    continue;
                }
                other => {
                    return Err(ParseError::Syntax {
                        at: Location {
                            line: line_no,
                            column: line.find("option").unwrap_or(0) + 1,
                        },
                        message: format!("unknown option `{other}` (expected `non-simply-connected`)"),
                    })
                }
            }
        }
        let tokens = tokenize(line, line_no)?;
        let end = Location {
            line: line_no,
            column: line.chars().count() + 1,
        };
        let mut cursor = Cursor {
            tokens: &tokens,
            pos: 0,
            end,
        };
        let Some((head, head_at)) = cursor.next() else {
            continue;
        };
        match head {
            Token::Ident(kw) if kw == "gen" => {
                let name_at = cursor.here();
                let name = match cursor.next() {
                    Some((Token::Ident(n), _)) => n.clone(),
                    _ => {
                        cursor.pos -= 1;
                        return cursor.syntax("expected a generator name after `gen`");
                    }
                };
                let degree = cursor.number()?;
                let degree = u32::try_from(degree).or_else(|_| cursor.syntax("degree out of range"))?;
                if cursor.peek().is_some() {
                    return cursor.syntax("unexpected text after generator declaration");
                }
                if generators.iter().any(|g| g.name == name) {
                    return Err(ParseError::DuplicateGenerator { at: name_at, name });
                }
                generators.push(Generator::new(name, degree));
                differentials.push(None);
            }
            Token::Ident(kw) if kw == "d" => {
                let name_at = cursor.here();
                let name = match cursor.next() {
                    Some((Token::Ident(n), _)) => n.clone(),
                    _ => {
                        cursor.pos -= 1;
                        return cursor.syntax("expected a generator name after `d`");
                    }
                };
                if !matches!(cursor.next(), Some((Token::Equals, _))) {
                    cursor.pos -= 1;
                    return cursor.syntax("expected `=`");
                }
                let rest = tokens[cursor.pos..].to_vec();
                pending.push((line_no, rest, name_at, name));
            }
            _ => {
                return Err(ParseError::Syntax {
                    at: head_at,
                    message: "expected `gen`, `d` or `option`".into(),
                })
            }
        }
    }

    let algebra = FreeAlgebra::new(generators.clone());
    for (line_no, tokens, name_at, name) in pending {
        let index = algebra.index_of(&name).ok_or_else(|| ParseError::UnknownGenerator {
            at: name_at,
            name: name.clone(),
        })?;
        if differentials[index].is_some() {
            return Err(ParseError::DuplicateDifferential { at: name_at, name });
        }
        let end = tokens.last().map_or(name_at, |(_, at)| Location {
            line: line_no,
            column: at.column + 1,
        });
        let mut cursor = Cursor {
            tokens: &tokens,
            pos: 0,
            end,
        };
        let parsed = parse_polynomial(&mut cursor, &algebra)?;
        if let Some((bad, at)) = parsed.references.iter().find(|(r, _)| *r >= index) {
            return Err(ParseError::NotTriangular {
                at: *at,
                name,
                reference: generators[*bad].name.clone(),
            });
        }
        let expected = generators[index].degree + 1;
        if !parsed.poly.is_zero() {
            let mut degrees: Vec<u32> = parsed.poly.terms().map(|(m, _)| algebra.degree(m)).collect();
            degrees.sort_unstable();
            degrees.dedup();
            if degrees != [expected] {
                let found = degrees.iter().map(u32::to_string).collect::<Vec<_>>().join(", ");
                return Err(ParseError::DegreeMismatch {
                    at: name_at,
                    name,
                    expected,
                    found,
                });
            }
        }
        differentials[index] = Some(parsed.poly);
    }

    let differential = differentials
        .into_iter()
        .map(Option::unwrap_or_default)
        .collect();
    Ok(SullivanModel::unchecked(generators, differential, simply_connected))
}

/// Prints a model in the `.sul` format; `parse_model(&print_model(m)) == m`.
pub fn print_model(model: &SullivanModel) -> String {
    let mut out = String::new();
    if !model.simply_connected() {
        out.push_str("option non-simply-connected\n");
    }
    for g in model.generators() {
        out.push_str(&format!("gen {} {}\n", g.name, g.degree));
    }
    for (g, dv) in model.generators().iter().zip(&model.differential().values) {
        if !dv.is_zero() {
            out.push_str(&format!("d {} = {}\n", g.name, model.algebra().display(dv)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    #[test]
    fn parses_sphere() {
        let m = parse_model("gen x 2 \n gen y 3 \n d y = x^2").unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.d_generator(1), &m.algebra().power(&m.gen(0), 2));
    }

    #[test]
    fn parses_five_generator_example() {
        let text = "gen x1 2\ngen x2 2\ngen y1 3\ngen y2 3\ngen y3 3\n\
                    d y1 = x1^2\nd y2 = x1*x2\nd y3 = x2^2\n";
        let m = parse_model(text).unwrap();
        assert!(m.is_validated());
        assert_eq!(m.len(), 5);
    }

    #[test]
    fn degree_mismatch_is_located() {
        let err = parse_model("gen x 2\ngen y 3\nd y = x").unwrap_err();
        match err {
            ParseError::DegreeMismatch { at, expected, .. } => {
                assert_eq!(at.line, 3);
                assert_eq!(expected, 4);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_model("gen x 2\ngen y 3\nd y = z^2").unwrap_err();
        assert!(matches!(err, ParseError::UnknownGenerator { at: Location { line: 3, column: 7 }, .. }));
        let err = parse_model("gen x 2\ngen y 3 4").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { at: Location { line: 2, column: 9 }, .. }));
        let err = parse_model("gen x 2\n$").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { at: Location { line: 2, column: 1 }, .. }));
    }

    #[test]
    fn forward_reference_is_not_triangular() {
        let err = parse_model("gen y 3\ngen x 2\nd y = x^2").unwrap_err();
        assert!(matches!(err, ParseError::NotTriangular { .. }), "{err:?}");
    }

    #[test]
    fn coefficients_and_signs() {
        let m = parse_model_unvalidated(
            "option non-simply-connected\ngen a 1\ngen b 1\ngen c 1\nd c = -3/2 b*a",
        )
        .unwrap();
        let ab = m.multiply(&m.gen(0), &m.gen(1));
        assert_eq!(m.d_generator(2), &ab.scaled(&ratio(3, 2)));
    }

    #[test]
    fn print_then_parse() {
        let text = "gen x 2\ngen y 7\nd y = x^4\n";
        let m = parse_model(text).unwrap();
        assert_eq!(print_model(&m), text);
        assert_eq!(parse_model(&print_model(&m)).unwrap(), m);
    }
}
