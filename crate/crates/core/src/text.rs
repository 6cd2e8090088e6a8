//! Plain-text documents for alphabets and phrases.
//!
//! ```text
//! alpha: a b c
//! tau: (a b)
//! letters: A->a B->b C->c
//! phrase: A B | B A C C
//! ```
//!
//! `letters` is optional; without it the phrase is written in base symbols.
//! Blank lines and lines starting with `#` are ignored. An alphabet file
//! (`.alpha`) has only the first two lines.

use std::sync::Arc;

use crate::alphabet::InvolutiveAlphabet;
use crate::error::{Error, Result};
use crate::phrase::{AlphaAlphabet, EtalePhrase, Nanophrase};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok<'a> {
    Name(&'a str),
    Bar,
    Open,
    Close,
    Arrow,
}

#[derive(Debug, Clone)]
struct Token<'a> {
    tok: Tok<'a>,
    col: usize,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

/// Splits `body` (starting at 1-based column `offset + 1`) into tokens.
fn lex(body: &str, line: usize, offset: usize) -> Result<Vec<Token<'_>>> {
    let mut out = Vec::new();
    let bytes = body.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let col = offset + i + 1;
        let single = |tok| Token { tok, col };
        match c {
            b' ' | b'\t' | b'\r' => i += 1,
            b'|' => {
                out.push(single(Tok::Bar));
                i += 1;
            }
            b'(' => {
                out.push(single(Tok::Open));
                i += 1;
            }
            b')' => {
                out.push(single(Tok::Close));
                i += 1;
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                out.push(single(Tok::Arrow));
                i += 2;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Name(&body[start..i]),
                    col,
                });
            }
            _ => {
                let ch = body[i..].chars().next().unwrap_or('?');
                return Err(syntax(line, col, format!("unexpected character `{ch}`")));
            }
        }
    }
    Ok(out)
}

struct Line<'a> {
    number: usize,
    key: &'a str,
    tokens: Vec<Token<'a>>,
    /// Column just past the line's end, for errors about missing tokens.
    end: usize,
}

fn lines(text: &str) -> Result<Vec<Line<'_>>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = raw.len() - trimmed.len();
        let Some(colon) = trimmed.find(':') else {
            return Err(syntax(number, indent + 1, "expected `key:`"));
        };
        let key = trimmed[..colon].trim_end();
        let body = &trimmed[colon + 1..];
        out.push(Line {
            number,
            key,
            tokens: lex(body, number, indent + colon + 1)?,
            end: raw.chars().count() + 1,
        });
    }
    Ok(out)
}

fn names<'a>(line: &Line<'a>) -> Result<Vec<&'a str>> {
    line.tokens
        .iter()
        .map(|t| match t.tok {
            Tok::Name(n) => Ok(n),
            _ => Err(syntax(line.number, t.col, "expected a symbol name")),
        })
        .collect()
}

fn tau_pairs<'a>(line: &Line<'a>) -> Result<Vec<(&'a str, &'a str)>> {
    let mut out = Vec::new();
    let mut it = line.tokens.iter();
    while let Some(t) = it.next() {
        if t.tok != Tok::Open {
            return Err(syntax(line.number, t.col, "expected `(`"));
        }
        let mut pair = Vec::new();
        loop {
            match it.next() {
                Some(Token {
                    tok: Tok::Name(n), ..
                }) => pair.push(*n),
                Some(Token {
                    tok: Tok::Close,
                    col,
                }) => {
                    if pair.len() != 2 {
                        return Err(syntax(line.number, *col, "a pair needs two symbols"));
                    }
                    break;
                }
                Some(other) => {
                    return Err(syntax(line.number, other.col, "expected a symbol or `)`"))
                }
                None => return Err(syntax(line.number, line.end, "unclosed `(`")),
            }
        }
        out.push((pair[0], pair[1]));
    }
    Ok(out)
}

fn letter_table<'a>(line: &Line<'a>, out: &mut Vec<(&'a str, &'a str)>) -> Result<()> {
    let t = &line.tokens;
    let mut i = 0;
    while i < t.len() {
        match (
            &t[i].tok,
            t.get(i + 1).map(|x| &x.tok),
            t.get(i + 2).map(|x| &x.tok),
        ) {
            (Tok::Name(l), Some(Tok::Arrow), Some(Tok::Name(s))) => {
                out.push((l, s));
                i += 3;
            }
            (Tok::Name(_), _, _) => {
                let col = t.get(i + 1).map_or(line.end, |x| x.col);
                return Err(syntax(line.number, col, "expected `->` and a symbol"));
            }
            _ => return Err(syntax(line.number, t[i].col, "expected a letter name")),
        }
    }
    Ok(())
}

fn words<'a>(line: &Line<'a>) -> Result<Vec<Vec<&'a str>>> {
    let mut out = vec![Vec::new()];
    for t in &line.tokens {
        match t.tok {
            Tok::Name(n) => out.last_mut().expect("nonempty").push(n),
            Tok::Bar => out.push(Vec::new()),
            _ => return Err(syntax(line.number, t.col, "expected a letter or `|`")),
        }
    }
    Ok(out)
}

fn expect_key<'a, 'b>(
    it: &mut std::iter::Peekable<impl Iterator<Item = &'b Line<'a>>>,
    key: &str,
    last: usize,
) -> Result<&'b Line<'a>>
where
    'a: 'b,
{
    match it.next() {
        Some(l) if l.key == key => Ok(l),
        Some(l) => Err(syntax(
            l.number,
            1,
            format!("expected `{key}:`, found `{}:`", l.key),
        )),
        None => Err(syntax(last + 1, 1, format!("missing `{key}:` line"))),
    }
}

fn alphabet_from(alpha: &Line<'_>, tau: &Line<'_>) -> Result<InvolutiveAlphabet> {
    InvolutiveAlphabet::new(&names(alpha)?, &tau_pairs(tau)?)
}

/// Parses an alphabet file: an `alpha:` line and a `tau:` line.
pub fn parse_alphabet(text: &str) -> Result<InvolutiveAlphabet> {
    let ls = lines(text)?;
    let last = text.lines().count();
    let mut it = ls.iter().peekable();
    let alpha = expect_key(&mut it, "alpha", last)?;
    let tau = expect_key(&mut it, "tau", last)?;
    if let Some(extra) = it.next() {
        return Err(syntax(
            extra.number,
            1,
            format!("unexpected `{}:` line", extra.key),
        ));
    }
    alphabet_from(alpha, tau)
}

/// Parses a phrase document.
pub fn parse_document(text: &str) -> Result<EtalePhrase> {
    let ls = lines(text)?;
    let last = text.lines().count();
    let mut it = ls.iter().peekable();
    let alpha_line = expect_key(&mut it, "alpha", last)?;
    let tau_line = expect_key(&mut it, "tau", last)?;
    let alphabet = Arc::new(alphabet_from(alpha_line, tau_line)?);
    let mut table = Vec::new();
    let mut has_table = false;
    while let Some(l) = it.peek() {
        if l.key != "letters" {
            break;
        }
        letter_table(l, &mut table)?;
        has_table = true;
        it.next();
    }
    let phrase_line = expect_key(&mut it, "phrase", last)?;
    if let Some(extra) = it.next() {
        return Err(syntax(
            extra.number,
            1,
            format!("unexpected `{}:` line", extra.key),
        ));
    }
    let ws = words(phrase_line)?;
    if has_table {
        let letters = AlphaAlphabet::new(&alphabet, &table)?;
        EtalePhrase::new(alphabet, letters, &ws)
    } else {
        EtalePhrase::on_alphabet(alphabet, &ws)
    }
}

/// Canonical document text; [`parse_document`] reads it back unchanged.
pub fn serialize_document(p: &EtalePhrase) -> String {
    let mut out = p.alphabet().to_text();
    if !p.letters().is_identity_on(p.alphabet()) {
        out.push_str("letters:");
        for id in 0..p.letters().len() {
            let sym = p.letters().projection(id);
            out.push_str(&format!(
                " {}->{}",
                p.letters().name(id),
                p.alphabet().name(sym)
            ));
        }
        out.push('\n');
    }
    out.push_str("phrase:");
    let w = p.words_text();
    if !w.is_empty() {
        out.push(' ');
        out.push_str(&w);
    }
    out.push('\n');
    out
}

/// Document text of a nanophrase, with its letter table.
pub fn serialize_nanophrase(n: &Nanophrase) -> String {
    serialize_document(&n.to_etale())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    /// `key: value` lines in report order.
    #[default]
    Text,
    /// `key=value` lines sorted by key.
    Structured,
}

pub fn render_report(entries: &[(String, String)], format: ReportFormat) -> String {
    let mut out = String::new();
    match format {
        ReportFormat::Text => {
            for (k, v) in entries {
                out.push_str(&format!("{k}: {v}\n"));
            }
        }
        ReportFormat::Structured => {
            let mut sorted: Vec<&(String, String)> = entries.iter().collect();
            sorted.sort_by(|a, b| a.0.cmp(&b.0));
            for (k, v) in sorted {
                out.push_str(&format!("{k}={v}\n"));
            }
        }
    }
    out
}
