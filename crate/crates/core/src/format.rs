//! The `.jdg` text format.
//!
//! ```text
//! jdg 1
//! # comment
//! curve a : P Q R
//! curve b : P R Q
//! sister a b
//! sign P +
//! sign Q -
//! sign R +
//! genus 0
//! ```
//!
//! Tokens are separated by whitespace and names match `[A-Za-z0-9_*]+`.
//! Crossing signs refer to the frame (first textual occurrence, second
//! textual occurrence).

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::diagram::{Crossing, Curve, Diagram, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseCode {
    MissingHeader,
    BadVersion,
    BadName,
    UnknownDirective,
    ExpectedColon,
    ArgumentCount,
    DuplicateCurve,
    DuplicateSister,
    UnknownCurve,
    UnknownCrossing,
    BadSign,
    DuplicateSign,
    MissingSign,
    BadGenus,
    DuplicateGenus,
}

impl ParseCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ParseCode::MissingHeader => "missing-header",
            ParseCode::BadVersion => "bad-version",
            ParseCode::BadName => "bad-name",
            ParseCode::UnknownDirective => "unknown-directive",
            ParseCode::ExpectedColon => "expected-colon",
            ParseCode::ArgumentCount => "argument-count",
            ParseCode::DuplicateCurve => "duplicate-curve",
            ParseCode::DuplicateSister => "duplicate-sister",
            ParseCode::UnknownCurve => "unknown-curve",
            ParseCode::UnknownCrossing => "unknown-crossing",
            ParseCode::BadSign => "bad-sign",
            ParseCode::DuplicateSign => "duplicate-sign",
            ParseCode::MissingSign => "missing-sign",
            ParseCode::BadGenus => "bad-genus",
            ParseCode::DuplicateGenus => "duplicate-genus",
        }
    }
}

impl fmt::Display for ParseCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{code} at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub code: ParseCode,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let content = match line.find('#') {
        Some(k) => &line[..k],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (k, ch) in content.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &content[s..k],
                    column: content[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(k);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &content[s..],
            column: content[..s].chars().count() + 1,
        });
    }
    out
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '*')
}

pub fn parse(text: &str) -> Result<Diagram, ParseError> {
    let err = |code, line, column, message: String| ParseError {
        code,
        line,
        column,
        message,
    };
    let mut header_seen = false;
    let mut curves: Vec<Curve> = Vec::new();
    let mut curve_ix: HashMap<String, usize> = HashMap::new();
    let mut crossing_ix: HashMap<String, usize> = HashMap::new();
    let mut crossing_names: Vec<String> = Vec::new();
    let mut sister_decl: Vec<(usize, usize, usize, usize, usize)> = Vec::new();
    let mut signs: HashMap<String, (Sign, usize, usize)> = HashMap::new();
    let mut genus: Option<u32> = None;
    let mut last_line = 1;

    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        last_line = line;
        let toks = tokenize(raw);
        if toks.is_empty() {
            continue;
        }
        if !header_seen {
            if toks[0].text != "jdg" {
                return Err(err(
                    ParseCode::MissingHeader,
                    line,
                    toks[0].column,
                    "expected header `jdg 1`".into(),
                ));
            }
            if toks.len() != 2 || toks[1].text != "1" {
                let col = toks.get(1).map_or(toks[0].column, |t| t.column);
                return Err(err(ParseCode::BadVersion, line, col, "only version 1 is supported".into()));
            }
            header_seen = true;
            continue;
        }
        let check_name = |t: &Token| {
            if is_name(t.text) {
                Ok(())
            } else {
                Err(err(ParseCode::BadName, line, t.column, format!("invalid name `{}`", t.text)))
            }
        };
        match toks[0].text {
            "curve" => {
                if toks.len() < 3 {
                    return Err(err(
                        ParseCode::ArgumentCount,
                        line,
                        toks[0].column,
                        "expected `curve NAME : CROSSINGS...`".into(),
                    ));
                }
                check_name(&toks[1])?;
                if toks[2].text != ":" {
                    return Err(err(ParseCode::ExpectedColon, line, toks[2].column, "expected `:`".into()));
                }
                if curve_ix.contains_key(toks[1].text) {
                    return Err(err(
                        ParseCode::DuplicateCurve,
                        line,
                        toks[1].column,
                        format!("curve `{}` declared twice", toks[1].text),
                    ));
                }
                let mut visits = Vec::new();
                for t in &toks[3..] {
                    check_name(t)?;
                    let next = crossing_names.len();
                    let x = *crossing_ix.entry(t.text.to_string()).or_insert(next);
                    if x == next {
                        crossing_names.push(t.text.to_string());
                    }
                    visits.push(x);
                }
                curve_ix.insert(toks[1].text.to_string(), curves.len());
                curves.push(Curve {
                    name: toks[1].text.to_string(),
                    visits,
                });
            }
            "sister" => {
                if toks.len() != 3 {
                    return Err(err(
                        ParseCode::ArgumentCount,
                        line,
                        toks[0].column,
                        "expected `sister NAME NAME`".into(),
                    ));
                }
                check_name(&toks[1])?;
                check_name(&toks[2])?;
                let mut ids = [0; 2];
                for k in 0..2 {
                    ids[k] = *curve_ix.get(toks[k + 1].text).ok_or_else(|| {
                        err(
                            ParseCode::UnknownCurve,
                            line,
                            toks[k + 1].column,
                            format!("unknown curve `{}`", toks[k + 1].text),
                        )
                    })?;
                }
                sister_decl.push((ids[0], ids[1], line, toks[1].column, toks[2].column));
            }
            "sign" => {
                if toks.len() != 3 {
                    return Err(err(
                        ParseCode::ArgumentCount,
                        line,
                        toks[0].column,
                        "expected `sign NAME +|-`".into(),
                    ));
                }
                check_name(&toks[1])?;
                let sign = match toks[2].text {
                    "+" => Sign::Pos,
                    "-" => Sign::Neg,
                    other => {
                        return Err(err(
                            ParseCode::BadSign,
                            line,
                            toks[2].column,
                            format!("sign must be `+` or `-`, found `{other}`"),
                        ))
                    }
                };
                if signs.contains_key(toks[1].text) {
                    return Err(err(
                        ParseCode::DuplicateSign,
                        line,
                        toks[1].column,
                        format!("sign of `{}` declared twice", toks[1].text),
                    ));
                }
                signs.insert(toks[1].text.to_string(), (sign, line, toks[1].column));
            }
            "genus" => {
                if toks.len() != 2 {
                    return Err(err(ParseCode::ArgumentCount, line, toks[0].column, "expected `genus N`".into()));
                }
                if genus.is_some() {
                    return Err(err(ParseCode::DuplicateGenus, line, toks[0].column, "genus declared twice".into()));
                }
                let g = toks[1]
                    .text
                    .parse::<u32>()
                    .ok()
                    .filter(|_| toks[1].text.chars().all(|c| c.is_ascii_digit()))
                    .ok_or_else(|| {
                        err(
                            ParseCode::BadGenus,
                            line,
                            toks[1].column,
                            format!("genus must be a non-negative integer, found `{}`", toks[1].text),
                        )
                    })?;
                genus = Some(g);
            }
            other => {
                return Err(err(
                    ParseCode::UnknownDirective,
                    line,
                    toks[0].column,
                    format!("unknown directive `{other}`"),
                ))
            }
        }
    }
    if !header_seen {
        return Err(err(ParseCode::MissingHeader, last_line, 1, "expected header `jdg 1`".into()));
    }

    let mut sister = vec![None; curves.len()];
    for &(a, b, line, ca, cb) in &sister_decl {
        for (c, col) in [(a, ca), (b, cb)] {
            if sister[c].is_some() {
                return Err(err(
                    ParseCode::DuplicateSister,
                    line,
                    col,
                    format!("curve `{}` already has a sister", curves[c].name),
                ));
            }
        }
        sister[a] = Some(b);
        if a != b {
            sister[b] = Some(a);
        }
    }

    // Sign lines are checked in file order so that errors are stable.
    let mut sign_lines: Vec<(&String, &(Sign, usize, usize))> = signs.iter().collect();
    sign_lines.sort_by_key(|(_, v)| (v.1, v.2));
    for (name, &(_, line, col)) in sign_lines {
        if !crossing_ix.contains_key(name) {
            return Err(err(
                ParseCode::UnknownCrossing,
                line,
                col,
                format!("crossing `{name}` does not occur on any curve"),
            ));
        }
    }
    let mut crossings = Vec::with_capacity(crossing_names.len());
    for name in crossing_names {
        let sign = match signs.get(&name) {
            Some(&(s, _, _)) => s,
            None => {
                return Err(err(
                    ParseCode::MissingSign,
                    last_line,
                    1,
                    format!("crossing `{name}` has no sign declaration"),
                ))
            }
        };
        crossings.push(Crossing { name, sign });
    }
    Ok(Diagram::from_parts(curves, sister, crossings, genus))
}

/// Writes a diagram exactly as stored: curve order, basepoints and names
/// are kept. Signs are listed sorted by crossing name.
pub fn render(d: &Diagram) -> String {
    let mut out = String::from("jdg 1\n");
    for c in d.curves() {
        out.push_str("curve ");
        out.push_str(&c.name);
        out.push_str(" :");
        for &x in &c.visits {
            out.push(' ');
            out.push_str(&d.crossings()[x].name);
        }
        out.push('\n');
    }
    for c in 0..d.curve_count() {
        if let Some(s) = d.sister_of(c) {
            if c < s {
                out.push_str(&format!("sister {} {}\n", d.curves()[c].name, d.curves()[s].name));
            }
        }
    }
    let mut signs: Vec<&Crossing> = d.crossings().iter().collect();
    signs.sort_by(|a, b| a.name.cmp(&b.name));
    for x in signs {
        out.push_str(&format!("sign {} {}\n", x.name, x.sign.symbol()));
    }
    if let Some(g) = d.declared_genus() {
        out.push_str(&format!("genus {g}\n"));
    }
    out
}

/// Canonical file of a diagram: canonical labels, basepoints and curve
/// order, so that equivalent diagrams serialize identically.
pub fn serialize(d: &Diagram) -> String {
    render(&crate::moves::canonical::canonical_diagram(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "jdg 1\n# two curves\ncurve a : P Q R\ncurve b : P R Q\nsister a b\nsign P +\nsign Q -\nsign R +\n";

    #[test]
    fn parses_sample() {
        let d = parse(SAMPLE).unwrap();
        assert_eq!(d.curve_count(), 2);
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.sister(0), 1);
        assert_eq!(d.sign(1), Sign::Neg);
    }

    #[test]
    fn render_round_trip() {
        let d = parse(SAMPLE).unwrap();
        let again = parse(&render(&d)).unwrap();
        assert_eq!(d, again);
    }

    #[test]
    fn missing_sign() {
        let text = SAMPLE.replace("sign Q -\n", "");
        assert_eq!(parse(&text).unwrap_err().code, ParseCode::MissingSign);
    }

    #[test]
    fn positions_are_reported() {
        let e = parse("jdg 1\ncurve a : P Q\nsign P x\n").unwrap_err();
        assert_eq!((e.code, e.line, e.column), (ParseCode::BadSign, 3, 8));
        let e = parse("jdg 1\n  curve a$ : P\n").unwrap_err();
        assert_eq!((e.code, e.line, e.column), (ParseCode::BadName, 2, 9));
    }

    #[test]
    fn header_required() {
        assert_eq!(parse("").unwrap_err().code, ParseCode::MissingHeader);
        assert_eq!(parse("jdg 2\n").unwrap_err().code, ParseCode::BadVersion);
        assert_eq!(parse("curve a : P\n").unwrap_err().code, ParseCode::MissingHeader);
    }

    #[test]
    fn sister_declared_once() {
        let text = format!("{SAMPLE}sister a b\n");
        assert_eq!(parse(&text).unwrap_err().code, ParseCode::DuplicateSister);
    }
}
