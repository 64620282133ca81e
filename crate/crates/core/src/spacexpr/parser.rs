use std::fmt;
use std::sync::Arc;

use super::{GroupRef, GroupSource, SpaceExpr};
use crate::catalog::{canonical_name, resolve_name, CatalogError, GroupDescription};
use crate::limits::Limits;

/// 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {position}: expected one of {}, found {found}", expected.join(", "))]
    SyntaxError {
        position: Position,
        expected: Vec<String>,
        found: String,
    },
    #[error("unknown name `{name}` at {position}")]
    UnknownName { position: Position, name: String },
    #[error("B^{d} at {position} needs an abelian group, but {group} is not abelian")]
    NonAbelianHigherB { position: Position, d: u32, group: String },
    #[error("invalid group at {position}: {source}")]
    InvalidGroup {
        position: Position,
        #[source]
        source: CatalogError,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    LParen,
    RParen,
    Caret,
    Plus,
    Times,
    Nat(u64),
    Word(String),
    Inline(String),
    Eof,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::LParen => write!(f, "'('"),
            Token::RParen => write!(f, "')'"),
            Token::Caret => write!(f, "'^'"),
            Token::Plus => write!(f, "'+'"),
            Token::Times => write!(f, "'x'"),
            Token::Nat(n) => write!(f, "number {n}"),
            Token::Word(w) => write!(f, "'{w}'"),
            Token::Inline(_) => write!(f, "inline group"),
            Token::Eof => write!(f, "end of input"),
        }
    }
}

fn lex(source: &str) -> Result<Vec<(Token, Position)>, ParseError> {
    let chars: Vec<char> = source.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    macro_rules! advance {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }
    while i < chars.len() {
        let c = chars[i];
        let pos = Position { line, column: col };
        if c.is_whitespace() {
            advance!();
            continue;
        }
        let single = match c {
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            '^' => Some(Token::Caret),
            '+' => Some(Token::Plus),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, pos));
            advance!();
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance!();
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse().map_err(|_| ParseError::SyntaxError {
                position: pos,
                expected: vec!["a number that fits in 64 bits".into()],
                found: text.clone(),
            })?;
            out.push((Token::Nat(n), pos));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                advance!();
            }
            let digits_follow = |j: usize| j < chars.len() && chars[j].is_ascii_digit();
            if i < chars.len() && (digits_follow(i) || (chars[i] == '_' && digits_follow(i + 1))) {
                if chars[i] == '_' {
                    advance!();
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    advance!();
                }
            }
            let word: String = chars[start..i].iter().collect();
            // "xB" in "B(C2)xB(C3)": a leading x is the product operator
            if word.len() > 1 && word.starts_with('x') {
                out.push((Token::Times, pos));
                let rest = Position {
                    line: pos.line,
                    column: pos.column + 1,
                };
                let tail = &word[1..];
                if tail.bytes().all(|b| b.is_ascii_digit()) {
                    out.push((Token::Nat(tail.parse().unwrap_or(u64::MAX)), rest));
                } else {
                    out.push((Token::Word(tail.to_string()), rest));
                }
            } else if word == "x" {
                out.push((Token::Times, pos));
            } else {
                out.push((Token::Word(word), pos));
            }
        } else if c == '@' {
            advance!();
            if i >= chars.len() || chars[i] != '\'' {
                return Err(ParseError::SyntaxError {
                    position: Position { line, column: col },
                    expected: vec!["\"'\"".into()],
                    found: chars.get(i).map_or("end of input".into(), |c| format!("'{c}'")),
                });
            }
            advance!();
            let start = i;
            while i < chars.len() && chars[i] != '\'' {
                advance!();
            }
            if i >= chars.len() {
                return Err(ParseError::SyntaxError {
                    position: Position { line, column: col },
                    expected: vec!["closing \"'\"".into()],
                    found: "end of input".into(),
                });
            }
            let json: String = chars[start..i].iter().collect();
            advance!();
            out.push((Token::Inline(json), pos));
        } else {
            return Err(ParseError::SyntaxError {
                position: pos,
                expected: vec!["an expression".into()],
                found: format!("'{c}'"),
            });
        }
    }
    out.push((Token::Eof, Position { line, column: col }));
    Ok(out)
}

struct Parser<'l> {
    tokens: Vec<(Token, Position)>,
    at: usize,
    limits: &'l Limits,
}

const TERM_STARTS: [&str; 7] = ["'pt'", "'L'", "'B'", "'Discrete'", "'stable'", "'('", "group name"];

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.at].0
    }

    fn pos(&self) -> Position {
        self.tokens[self.at].1
    }

    fn bump(&mut self) -> (Token, Position) {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError::SyntaxError {
            position: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        })
    }

    fn expect(&mut self, tok: Token) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(&[&tok.to_string()])
        }
    }

    fn expr(&mut self) -> Result<SpaceExpr, ParseError> {
        let mut lhs = self.prod()?;
        while *self.peek() == Token::Plus {
            self.bump();
            let rhs = self.prod()?;
            lhs = lhs.plus(rhs);
        }
        Ok(lhs)
    }

    fn prod(&mut self) -> Result<SpaceExpr, ParseError> {
        let mut lhs = self.term()?;
        while *self.peek() == Token::Times {
            self.bump();
            let rhs = self.term()?;
            lhs = lhs.times(rhs);
        }
        Ok(lhs)
    }

    fn parenthesized_expr(&mut self) -> Result<SpaceExpr, ParseError> {
        self.expect(Token::LParen)?;
        let e = self.expr()?;
        if *self.peek() != Token::RParen {
            return self.fail(&["'x'", "'+'", "')'"]);
        }
        self.bump();
        Ok(e)
    }

    fn term(&mut self) -> Result<SpaceExpr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Token::LParen => self.parenthesized_expr(),
            Token::Word(w) => match w.as_str() {
                "pt" => {
                    self.bump();
                    Ok(SpaceExpr::Point)
                }
                "L" => {
                    self.bump();
                    Ok(self.parenthesized_expr()?.loop_of())
                }
                "stable" => {
                    self.bump();
                    Ok(SpaceExpr::Stable(Box::new(self.parenthesized_expr()?)))
                }
                "Discrete" => {
                    self.bump();
                    self.expect(Token::LParen)?;
                    let m = match self.peek() {
                        Token::Nat(m) if *m >= 1 => *m,
                        _ => return self.fail(&["a positive number"]),
                    };
                    self.bump();
                    self.expect(Token::RParen)?;
                    Ok(SpaceExpr::Discrete(m))
                }
                "B" => {
                    self.bump();
                    let d = if *self.peek() == Token::Caret {
                        self.bump();
                        match self.peek() {
                            Token::Nat(d) if *d <= u64::from(u32::MAX) => {
                                let d = *d as u32;
                                self.bump();
                                d
                            }
                            _ => return self.fail(&["a degree"]),
                        }
                    } else {
                        1
                    };
                    self.expect(Token::LParen)?;
                    let group = self.group_ref()?;
                    if *self.peek() != Token::RParen {
                        return self.fail(&["'x'", "')'"]);
                    }
                    self.bump();
                    match d {
                        1 => Ok(SpaceExpr::B(group)),
                        0 => Ok(SpaceExpr::EM { d, group }),
                        _ if group.group.is_abelian() => Ok(SpaceExpr::EM { d, group }),
                        _ => Err(ParseError::NonAbelianHigherB {
                            position: pos,
                            d,
                            group: group.to_string(),
                        }),
                    }
                }
                _ => Ok(SpaceExpr::Named(self.group_name()?)),
            },
            _ => self.fail(&TERM_STARTS),
        }
    }

    fn group_name(&mut self) -> Result<GroupRef, ParseError> {
        let (tok, position) = self.bump();
        let Token::Word(name) = tok else {
            unreachable!("caller checked for a word");
        };
        let Some(canonical) = canonical_name(&name) else {
            return Err(ParseError::UnknownName { position, name });
        };
        let group = resolve_name(&canonical, self.limits).map_err(|source| ParseError::InvalidGroup { position, source })?;
        Ok(GroupRef {
            source: GroupSource::Name(canonical),
            group: Arc::new(group),
        })
    }

    fn group_ref(&mut self) -> Result<GroupRef, ParseError> {
        let mut lhs = self.group_atom()?;
        while *self.peek() == Token::Times {
            let position = self.pos();
            self.bump();
            let rhs = self.group_atom()?;
            let group = lhs
                .group
                .direct_product(&rhs.group, self.limits)
                .map_err(|e| ParseError::InvalidGroup {
                    position,
                    source: e.into(),
                })?;
            lhs = GroupRef {
                source: GroupSource::Product(Box::new(lhs.source), Box::new(rhs.source)),
                group: Arc::new(group),
            };
        }
        Ok(lhs)
    }

    fn group_atom(&mut self) -> Result<GroupRef, ParseError> {
        let position = self.pos();
        match self.peek().clone() {
            Token::Word(_) => self.group_name(),
            Token::Inline(json) => {
                self.bump();
                let group = GroupDescription::from_json(&json)
                    .and_then(|d| d.resolve(self.limits))
                    .map_err(|source| ParseError::InvalidGroup { position, source })?;
                Ok(GroupRef {
                    source: GroupSource::Inline(json),
                    group: Arc::new(group),
                })
            }
            Token::LParen => {
                self.bump();
                let g = self.group_ref()?;
                if *self.peek() != Token::RParen {
                    return self.fail(&["'x'", "')'"]);
                }
                self.bump();
                Ok(g)
            }
            _ => self.fail(&["group name", "inline group", "'('"]),
        }
    }
}

/// Parses with default limits.
pub fn parse(source: &str) -> Result<SpaceExpr, ParseError> {
    parse_with(source, &Limits::default())
}

pub fn parse_with(source: &str, limits: &Limits) -> Result<SpaceExpr, ParseError> {
    let tokens = lex(source)?;
    let mut p = Parser { tokens, at: 0, limits };
    let e = p.expr()?;
    if *p.peek() != Token::Eof {
        return p.fail(&["'x'", "'+'", "end of input"]);
    }
    Ok(e)
}
