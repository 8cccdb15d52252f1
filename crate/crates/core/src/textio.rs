//! Concrete syntax for programs, profiles, flocks and closed sets.
//!
//! ```text
//! program := stmt*
//! stmt    := (body "->")? literal "."
//! body    := literal ("," literal)*
//! literal := "-"? atom
//! atom    := [a-zA-Z_][a-zA-Z0-9_]*
//! ```
//!
//! `%` starts a comment running to the end of the line and whitespace is
//! insignificant. A profile file holds several programs separated by lines
//! consisting solely of `---`.

use std::fmt;

use crate::closure::ClosedSet;
use crate::error::Error;
use crate::merging::Profile;
use crate::revision::Flock;
use crate::syntax::{Atom, Literal, Program, Rule};

/// A syntax error at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct SourceError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Minus,
    Comma,
    Arrow,
    Dot,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) => write!(f, "`{s}`"),
            Token::Minus => f.write_str("`-`"),
            Token::Comma => f.write_str("`,`"),
            Token::Arrow => f.write_str("`->`"),
            Token::Dot => f.write_str("`.`"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn error(self, message: impl Into<String>) -> SourceError {
        SourceError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

struct Spanned {
    token: Token,
    start: Pos,
    // position of the token's last character
    end: Pos,
}

fn tokenize(text: &str, first_line: usize) -> Result<Vec<Spanned>, SourceError> {
    let mut tokens = Vec::new();
    for (offset, line) in text.lines().enumerate() {
        let line_no = first_line + offset;
        let chars: Vec<char> = line.chars().collect();
        let pos = |i: usize| Pos {
            line: line_no,
            column: i + 1,
        };
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let start = i;
            let token = match c {
                '%' => break,
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                ',' => Token::Comma,
                '.' => Token::Dot,
                '-' if chars.get(i + 1) == Some(&'>') => {
                    i += 1;
                    Token::Arrow
                }
                '-' => Token::Minus,
                c if c.is_ascii_alphabetic() || c == '_' => {
                    while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                        i += 1;
                    }
                    Token::Ident(chars[start..=i].iter().collect())
                }
                c => return Err(pos(i).error(format!("unknown token `{c}`"))),
            };
            tokens.push(Spanned {
                token,
                start: pos(start),
                end: pos(i),
            });
            i += 1;
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Spanned>,
    next: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.tokens.get(self.next)
    }

    fn bump(&mut self) -> Option<&Spanned> {
        let t = self.tokens.get(self.next);
        self.next += 1;
        t
    }

    fn eof_error(&self, what: &str) -> SourceError {
        // Point at the last character of the input rather than past it.
        let end = self.tokens.last().map(|t| t.end).unwrap_or(Pos { line: 1, column: 1 });
        end.error(format!("unexpected end of input, expected {what}"))
    }

    fn literal(&mut self) -> Result<Literal, SourceError> {
        let negative = matches!(self.peek().map(|t| &t.token), Some(Token::Minus));
        if negative {
            self.bump();
        }
        let eof = self.eof_error("an atom");
        match self.bump() {
            Some(Spanned {
                token: Token::Ident(name),
                start,
                ..
            }) => {
                let atom = Atom::new(name).map_err(|e| start.error(e.to_string()))?;
                Ok(if negative {
                    Literal::negative(atom)
                } else {
                    Literal::positive(atom)
                })
            }
            Some(t) => Err(t.start.error(format!("expected an atom, found {}", t.token))),
            None => Err(eof),
        }
    }

    fn statement(&mut self) -> Result<Rule, SourceError> {
        let mut literals = vec![self.literal()?];
        loop {
            let eof = self.eof_error("`.`");
            let t = self.bump().ok_or(eof)?;
            match t.token {
                Token::Comma => literals.push(self.literal()?),
                Token::Arrow => {
                    let head = self.literal()?;
                    let eof = self.eof_error("`.`");
                    return match self.bump() {
                        Some(Spanned { token: Token::Dot, .. }) => Ok(Rule::new(literals, head)),
                        Some(t) => Err(t
                            .start
                            .error(format!("expected `.` after rule head, found {}", t.token))),
                        None => Err(eof),
                    };
                }
                Token::Dot if literals.len() == 1 => {
                    return Ok(Rule::fact(literals.pop().unwrap()));
                }
                Token::Dot => {
                    return Err(t.start.error("a body must be followed by `->` and a head"));
                }
                _ => return Err(t.start.error(format!("expected `,`, `->` or `.`, found {}", t.token))),
            }
        }
    }
}

fn parse_program_at(text: &str, first_line: usize) -> Result<Program, SourceError> {
    let mut parser = Parser {
        tokens: tokenize(text, first_line)?,
        next: 0,
    };
    let mut program = Program::new();
    while parser.peek().is_some() {
        program.insert(parser.statement()?);
    }
    Ok(program)
}

/// Parses a program. Empty input is the empty program; duplicate rules
/// collapse.
pub fn parse_program(text: &str) -> Result<Program, SourceError> {
    parse_program_at(text, 1)
}

/// Splits `text` at `---` lines and parses every segment as a program.
/// Segments holding no statement are dropped.
pub fn parse_programs(text: &str) -> Result<Vec<Program>, SourceError> {
    let mut programs = Vec::new();
    let mut segment = String::new();
    let mut segment_start = 1;
    let mut flush = |segment: &mut String, start: usize| -> Result<(), SourceError> {
        let program = parse_program_at(segment, start)?;
        if !program.is_empty() {
            programs.push(program);
        }
        segment.clear();
        Ok(())
    };
    for (i, line) in text.lines().enumerate() {
        if line.trim() == "---" {
            flush(&mut segment, segment_start)?;
            segment_start = i + 2;
        } else {
            segment.push_str(line);
            segment.push('\n');
        }
    }
    flush(&mut segment, segment_start)?;
    Ok(programs)
}

/// Parses a profile; member order follows the file.
pub fn parse_profile(text: &str) -> Result<Profile, Error> {
    Profile::new(parse_programs(text)?)
}

/// Parses a rendered closed set: `#bottom`, or literals separated by commas.
pub fn parse_closed_set(text: &str) -> Result<ClosedSet, Error> {
    let text = text.trim();
    if text == "#bottom" {
        return Ok(ClosedSet::Bottom);
    }
    let literals = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<Result<Vec<Literal>, _>>()?;
    Ok(ClosedSet::from_literals(literals))
}

/// Anything with a canonical text form.
pub trait Render {
    fn render(&self) -> String;
}

impl Render for Program {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Render for ClosedSet {
    fn render(&self) -> String {
        self.to_string()
    }
}

fn render_sequence<'a>(programs: impl Iterator<Item = &'a Program>) -> String {
    programs.map(Program::to_string).collect::<Vec<_>>().join("\n---\n")
}

impl Render for Profile {
    fn render(&self) -> String {
        render_sequence(self.members().iter())
    }
}

impl Render for Flock {
    fn render(&self) -> String {
        render_sequence(self.members().iter())
    }
}

pub fn render<T: Render + ?Sized>(value: &T) -> String {
    value.render()
}
