//! Line-oriented reaction grammar:
//!
//! ```text
//! line     := [id ':'] side arrow side
//! arrow    := '->' | '<->' | '-[' name ']->'
//! side     := term ('+' term)*
//! term     := [integer] name          # leading integer = stoichiometric
//! name     := (letter|digit|'_'|'('|')'|','|'-')+   coefficient, discarded
//! ```
//!
//! `#` starts a comment, blank lines are skipped, and whitespace never
//! matters. A `-` belongs to a name unless the next character makes it an
//! arrow (`->`) or a catalyst bracket (`-[`), so hyphenated substance names
//! parse unquoted. Stoichiometric coefficients and duplicated names within
//! a side are tolerated but dropped, each with a warning.

use crate::error::{Error, Result};

/// One parsed reaction line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReactionRecord {
    pub id: Option<String>,
    pub educts: Vec<String>,
    pub products: Vec<String>,
    /// Catalyst name from a `-[name]->` arrow. A catalyst annotates the
    /// reaction; it is not a member of either side.
    pub catalyst: Option<String>,
    /// True for `<->`. Orientation metadata only: the hypergraph model is
    /// unordered, so reversible and plain arrows build the same edge.
    pub reversible: bool,
    /// 1-based line number in the source text.
    pub source_line: u32,
}

/// Parsed records plus non-fatal notes (each prefixed `line N:`).
#[derive(Clone, Debug, Default)]
pub struct ParseOutcome {
    pub records: Vec<ReactionRecord>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Name(String),
    Plus,
    Colon,
    /// `->`
    Arrow,
    /// `<->`
    ReversibleArrow,
    /// `-[`
    CatalystOpen,
    /// `]->`
    CatalystClose,
}

struct Spanned {
    token: Token,
    column: u32,
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '(' | ')' | ',' | '-')
}

fn lex_line(line: &str, line_no: u32) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = line.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0usize;
    let err = |column: usize, message: String| Error::Parse {
        line: line_no as usize,
        column: column + 1,
        message,
    };
    while i < chars.len() {
        let c = chars[i];
        let column = (i + 1) as u32;
        match c {
            '#' => break,
            _ if c.is_whitespace() => {
                i += 1;
            }
            '+' => {
                tokens.push(Spanned {
                    token: Token::Plus,
                    column,
                });
                i += 1;
            }
            ':' => {
                tokens.push(Spanned {
                    token: Token::Colon,
                    column,
                });
                i += 1;
            }
            '<' => {
                if chars[i..].starts_with(&['<', '-', '>']) {
                    tokens.push(Spanned {
                        token: Token::ReversibleArrow,
                        column,
                    });
                    i += 3;
                } else {
                    return Err(err(i, "expected '<->'".into()));
                }
            }
            ']' => {
                if chars[i..].starts_with(&[']', '-', '>']) {
                    tokens.push(Spanned {
                        token: Token::CatalystClose,
                        column,
                    });
                    i += 3;
                } else {
                    return Err(err(i, "expected ']->' to close the catalyst".into()));
                }
            }
            '-' if matches!(chars.get(i + 1), Some('>')) => {
                tokens.push(Spanned {
                    token: Token::Arrow,
                    column,
                });
                i += 2;
            }
            '-' if matches!(chars.get(i + 1), Some('[')) => {
                tokens.push(Spanned {
                    token: Token::CatalystOpen,
                    column,
                });
                i += 2;
            }
            _ if is_name_char(c) => {
                let start = i;
                while i < chars.len() && is_name_char(chars[i]) {
                    // A '-' that begins an arrow or catalyst bracket ends
                    // the name instead of joining it.
                    if chars[i] == '-' && matches!(chars.get(i + 1), Some('>') | Some('[')) {
                        break;
                    }
                    i += 1;
                }
                if i == start {
                    // Lone '-' directly followed by '>' or '[' was consumed
                    // above; reaching here means a stray operator char.
                    return Err(err(i, format!("unexpected character '{c}'")));
                }
                tokens.push(Spanned {
                    token: Token::Name(chars[start..i].iter().collect()),
                    column,
                });
            }
            _ => return Err(err(i, format!("unexpected character '{c}'"))),
        }
    }
    Ok(tokens)
}

struct LineParser<'a> {
    tokens: &'a [Spanned],
    pos: usize,
    line: u32,
    end_column: u32,
}

impl<'a> LineParser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|s| &s.token)
    }

    fn column(&self) -> u32 {
        self.tokens
            .get(self.pos)
            .map(|s| s.column)
            .unwrap_or(self.end_column)
    }

    fn bump(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos).map(|s| &s.token);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line as usize,
            column: self.column() as usize,
            message: message.into(),
        }
    }

    fn expect_name(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Token::Name(_)) => match self.bump() {
                Some(Token::Name(n)) => Ok(n.clone()),
                _ => unreachable!("peeked a name"),
            },
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    /// side := term ('+' term)*, where a term may carry a discarded leading
    /// integer coefficient. Duplicate names collapse with a warning.
    fn parse_side(&mut self, what: &str, warnings: &mut Vec<String>) -> Result<Vec<String>> {
        let mut names: Vec<String> = Vec::new();
        loop {
            let mut name = self.expect_name(&format!("a substance name in the {what}"))?;
            // "2 H2O": an all-digit token immediately followed by another
            // name is a stoichiometric coefficient.
            if name.chars().all(|c| c.is_ascii_digit())
                && matches!(self.peek(), Some(Token::Name(_)))
            {
                warnings.push(format!(
                    "line {}: stoichiometric coefficient {name} discarded",
                    self.line
                ));
                name = self.expect_name("a substance name after the coefficient")?;
            }
            if names.contains(&name) {
                warnings.push(format!(
                    "line {}: duplicate {what} substance '{name}' collapsed",
                    self.line
                ));
            } else {
                names.push(name);
            }
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                }
                _ => return Ok(names),
            }
        }
    }

    fn parse_arrow(&mut self) -> Result<(bool, Option<String>)> {
        match self.peek() {
            Some(Token::Arrow) => {
                self.bump();
                Ok((false, None))
            }
            Some(Token::ReversibleArrow) => {
                self.bump();
                Ok((true, None))
            }
            Some(Token::CatalystOpen) => {
                self.bump();
                let catalyst = self.expect_name("a catalyst name inside '-[ ]->'")?;
                match self.peek() {
                    Some(Token::CatalystClose) => {
                        self.bump();
                        Ok((false, Some(catalyst)))
                    }
                    _ => Err(self.error("expected ']->' to close the catalyst")),
                }
            }
            _ => Err(self.error("expected '->', '<->', or '-[name]->'")),
        }
    }
}

/// Parses a full reaction text into records, tolerating comments, blank
/// lines, coefficients, and duplicate names (the latter two with warnings).
pub fn parse_reactions(text: &str) -> Result<ParseOutcome> {
    let mut outcome = ParseOutcome::default();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = (idx + 1) as u32;
        let tokens = lex_line(raw_line, line_no)?;
        if tokens.is_empty() {
            continue;
        }
        let mut p = LineParser {
            tokens: &tokens,
            pos: 0,
            line: line_no,
            end_column: raw_line.chars().count() as u32 + 1,
        };

        let id = if matches!(tokens.first().map(|s| &s.token), Some(Token::Name(_)))
            && matches!(tokens.get(1).map(|s| &s.token), Some(Token::Colon))
        {
            let id = p.expect_name("an id")?;
            p.bump(); // ':'
            Some(id)
        } else {
            None
        };

        let educts = p.parse_side("educt", &mut outcome.warnings)?;
        let (reversible, catalyst) = p.parse_arrow()?;
        let products = p.parse_side("product", &mut outcome.warnings)?;
        if p.peek().is_some() {
            return Err(p.error("unexpected trailing input after the product side"));
        }

        outcome.records.push(ReactionRecord {
            id,
            educts,
            products,
            catalyst,
            reversible,
            source_line: line_no,
        });
    }
    Ok(outcome)
}

/// Canonical textual form, one reaction per line; `parse_reactions` maps it
/// back to the same records (with `source_line` equal to the line position).
pub fn print_reactions(records: &[ReactionRecord]) -> String {
    let mut out = String::new();
    for r in records {
        if let Some(id) = &r.id {
            out.push_str(id);
            out.push_str(": ");
        }
        out.push_str(&r.educts.join(" + "));
        match (&r.catalyst, r.reversible) {
            (Some(c), _) => {
                out.push_str(" -[");
                out.push_str(c);
                out.push_str("]-> ");
            }
            (None, true) => out.push_str(" <-> "),
            (None, false) => out.push_str(" -> "),
        }
        out.push_str(&r.products.join(" + "));
        out.push('\n');
    }
    out
}
