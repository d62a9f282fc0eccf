//! Compact textual monomial grammar: `y1^2, y1*y2, y2^2`.
//!
//! Monomials are separated by commas. Inside a monomial, factors are
//! separated by `*` or by whitespace, and each factor is `y<index>` or
//! `x<index>` with an optional `^<power>`. A lone `1` is the unit monomial.
//! Whitespace is otherwise ignored. One input uses one variable prefix.

use dqp_core::{Monomial, MonomialIdeal};

use crate::error::CliError;

/// One parsed monomial as `(variable index, power)` factors, indices zero-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawMonomial {
    pub factors: Vec<(usize, u32)>,
}

impl RawMonomial {
    pub fn max_index(&self) -> Option<usize> {
        self.factors.iter().map(|(i, _)| *i).max()
    }

    pub fn to_monomial(&self, variable_count: usize) -> Monomial {
        let mut exps = vec![0u32; variable_count];
        for &(i, e) in &self.factors {
            exps[i] += e;
        }
        Monomial::new(exps)
    }
}

#[derive(Debug, Default)]
pub struct Parser {
    prefix: Option<char>,
}

impl Parser {
    pub fn new() -> Self {
        Parser::default()
    }

    /// The variable letter seen so far (`y` when nothing has been parsed).
    pub fn prefix(&self) -> char {
        self.prefix.unwrap_or('y')
    }

    pub fn parse_list(&mut self, text: &str) -> Result<Vec<RawMonomial>, CliError> {
        let items: Vec<&str> = text.split(',').collect();
        if items.iter().all(|s| s.trim().is_empty()) {
            return Err(CliError::Validation("empty monomial list".into()));
        }
        items.into_iter().map(|s| self.parse_monomial(s)).collect()
    }

    pub fn parse_monomial(&mut self, text: &str) -> Result<RawMonomial, CliError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(CliError::Validation(format!("empty monomial in {text:?}")));
        }
        if compact == "1" {
            return Ok(RawMonomial { factors: vec![] });
        }
        let tokens = tokenize(text)?;
        let mut factors = Vec::new();
        let mut pos = 0;
        let mut expect_factor = true;
        while pos < tokens.len() {
            match &tokens[pos] {
                Token::Star if !expect_factor => {
                    expect_factor = true;
                    pos += 1;
                }
                Token::Var(letter, index) => {
                    let mut power = 1;
                    if let Some(Token::Caret) = tokens.get(pos + 1) {
                        match tokens.get(pos + 2) {
                            Some(Token::Int(e)) => {
                                power = *e;
                                pos += 2;
                            }
                            _ => return Err(invalid(text, "'^' must be followed by a power")),
                        }
                    }
                    factors.push(self.factor(*letter, *index, text)?);
                    factors.last_mut().expect("just pushed").1 = power;
                    expect_factor = false;
                    pos += 1;
                }
                _ => return Err(invalid(text, "expected a variable such as y1 or x2")),
            }
        }
        if expect_factor {
            return Err(invalid(text, "dangling '*'"));
        }
        Ok(RawMonomial { factors })
    }

    fn factor(&mut self, letter: char, index: u32, whole: &str) -> Result<(usize, u32), CliError> {
        match self.prefix {
            Some(p) if p != letter => return Err(invalid(whole, "mixed x and y variables")),
            _ => self.prefix = Some(letter),
        }
        if index == 0 {
            return Err(invalid(whole, "variable indices start at 1"));
        }
        Ok((index as usize - 1, 1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Var(char, u32),
    Int(u32),
    Caret,
    Star,
}

fn invalid(text: &str, why: &str) -> CliError {
    CliError::Validation(format!("cannot parse monomial {text:?}: {why}"))
}

fn tokenize(text: &str) -> Result<Vec<Token>, CliError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    let read_int = |i: &mut usize| -> Option<u32> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>().parse().ok()
    };
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            'x' | 'y' => {
                i += 1;
                let index =
                    read_int(&mut i).ok_or_else(|| invalid(text, "missing variable index"))?;
                tokens.push(Token::Var(c, index));
            }
            d if d.is_ascii_digit() => {
                let v = read_int(&mut i).ok_or_else(|| invalid(text, "number out of range"))?;
                tokens.push(Token::Int(v));
            }
            other => {
                return Err(invalid(
                    text,
                    &format!("unexpected character {other:?}; variables are y1..yN or x1..xN"),
                ))
            }
        }
    }
    Ok(tokens)
}

/// Number of variables needed for all parsed monomials, at least `minimum`.
pub fn variable_count(lists: &[&[RawMonomial]], minimum: usize) -> usize {
    lists
        .iter()
        .flat_map(|l| l.iter())
        .filter_map(RawMonomial::max_index)
        .map(|i| i + 1)
        .max()
        .unwrap_or(1)
        .max(minimum)
        .max(1)
}

pub fn build_ideal(raw: &[RawMonomial], variable_count: usize) -> Result<MonomialIdeal, CliError> {
    MonomialIdeal::new(
        variable_count,
        raw.iter().map(|m| m.to_monomial(variable_count)).collect(),
    )
    .map_err(CliError::from)
}
