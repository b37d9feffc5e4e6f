//! The `.tgl` text format for tangle words.
//!
//! ```text
//! # a circle
//! left: []
//! slices: B(0)@1 ; D@1
//! ```
//!
//! Whitespace is ignored and `#` starts a comment. Positions are 1-based.

use flagtangle_core::flags::GradedSet;
use flagtangle_core::tangle::{Slice, TangleWord};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: expected `{expected}:`")]
    Expected { line: usize, expected: &'static str },
    #[error("line {line}: bad degree list `{text}`")]
    Degrees { line: usize, text: String },
    #[error("line {line}: bad slice `{text}`")]
    Slice { line: usize, text: String },
    #[error("line {line}: unexpected content after the slices line")]
    Trailing { line: usize },
    #[error("missing `{0}:` line")]
    Missing(&'static str),
}

impl ParseError {
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::Expected { line, .. }
            | ParseError::Degrees { line, .. }
            | ParseError::Slice { line, .. }
            | ParseError::Trailing { line } => Some(*line),
            ParseError::Missing(_) => None,
        }
    }
}

fn parse_degrees(line: usize, text: &str) -> Result<GradedSet, ParseError> {
    let bad = || ParseError::Degrees { line, text: text.to_string() };
    let inner = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
    if inner.is_empty() {
        return Ok(GradedSet::empty());
    }
    let degs = inner.split(',').map(|d| d.parse::<i32>().map_err(|_| bad())).collect::<Result<Vec<_>, _>>()?;
    Ok(GradedSet::new(degs))
}

fn parse_pos(s: &str) -> Option<usize> {
    s.parse::<usize>().ok().filter(|&p| p >= 1)
}

fn parse_slice(line: usize, tok: &str) -> Result<Slice, ParseError> {
    let bad = || ParseError::Slice { line, text: tok.to_string() };
    let (head, pos) = tok.rsplit_once('@').ok_or_else(bad)?;
    let pos = parse_pos(pos).ok_or_else(bad)?;
    match head {
        "D" => Ok(Slice::Death { pos }),
        "X" => Ok(Slice::Cross { pos }),
        _ => {
            let deg = head
                .strip_prefix("B(")
                .and_then(|t| t.strip_suffix(')'))
                .and_then(|t| t.parse::<i32>().ok())
                .ok_or_else(bad)?;
            Ok(Slice::Birth { deg, pos })
        }
    }
}

/// Parses a word. Grading is not checked here.
pub fn parse_word(src: &str) -> Result<TangleWord, ParseError> {
    let mut left = None;
    let mut slices = None;
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let text: String = body.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            continue;
        }
        if left.is_none() {
            let rest = text.strip_prefix("left:").ok_or(ParseError::Expected { line, expected: "left" })?;
            left = Some(parse_degrees(line, rest)?);
        } else if slices.is_none() {
            let rest = text.strip_prefix("slices:").ok_or(ParseError::Expected { line, expected: "slices" })?;
            let list = rest
                .split(';')
                .filter(|t| !t.is_empty())
                .map(|t| parse_slice(line, t))
                .collect::<Result<Vec<_>, _>>()?;
            slices = Some(list);
        } else {
            return Err(ParseError::Trailing { line });
        }
    }
    let left = left.ok_or(ParseError::Missing("left"))?;
    let slices = slices.ok_or(ParseError::Missing("slices"))?;
    Ok(TangleWord::new(left, slices))
}

/// The text form read back by [`parse_word`], with a trailing newline.
pub fn format_word(w: &TangleWord) -> String {
    format!("{}\n", w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_spaces() {
        let w = parse_word("# circle\n  left : [ ]\nslices: B( 0 )@1 ; D @ 1 # done\n").unwrap();
        assert_eq!(w.left, GradedSet::empty());
        assert_eq!(w.slices, vec![Slice::Birth { deg: 0, pos: 1 }, Slice::Death { pos: 1 }]);
    }

    #[test]
    fn empty_slice_list_and_negative_degrees() {
        let w = parse_word("left: [-1,2]\nslices:\n").unwrap();
        assert_eq!(w.left.degrees(), &[-1, 2]);
        assert!(w.slices.is_empty());
        let w = parse_word("left: []\nslices: B(-2)@1;\n").unwrap();
        assert_eq!(w.slices, vec![Slice::Birth { deg: -2, pos: 1 }]);
    }

    #[test]
    fn errors_carry_lines() {
        assert_eq!(parse_word("slices: X@1"), Err(ParseError::Expected { line: 1, expected: "left" }));
        assert_eq!(parse_word("left: [1,0\nslices:").unwrap_err().line(), Some(1));
        assert_eq!(parse_word("\n\nleft: []\nslices: B(0)@0").unwrap_err().line(), Some(4));
        assert_eq!(parse_word("left: []\nslices: Q@1").unwrap_err().line(), Some(2));
        assert_eq!(parse_word("left: []\nslices:\nleft: []").unwrap_err().line(), Some(3));
        assert_eq!(parse_word("left: []"), Err(ParseError::Missing("slices")));
    }
}
