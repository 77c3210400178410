//! Shorthand names for forbidden and counted patterns.
//!
//! ```text
//! Kl_s(a1,...,al)   complete l-partite blowup of K_l^{(s)}: K_l^{(s)}(a1,...,al)
//! Kl_s              K_l^{(s)} itself (all class sizes 1)
//! file:PATH         a hypergraph in the text format
//! ```

use std::fmt;
use std::path::PathBuf;

use super::hypergraph::UniformHypergraph;
use super::ops::blowup;
use super::partition::BlowupSpec;
use super::text;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternSpec {
    Partite { l: usize, s: usize, sizes: Vec<usize> },
    File(PathBuf),
}

fn err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column,
        message: message.into(),
    }
}

/// Reads a decimal number at byte `pos`; returns it and the next position.
fn number(src: &str, pos: usize) -> Result<(usize, usize)> {
    let digits = src[pos..].bytes().take_while(u8::is_ascii_digit).count();
    if digits == 0 {
        return Err(err(pos + 1, format!("expected a number in `{src}`")));
    }
    let v = src[pos..pos + digits]
        .parse()
        .map_err(|_| err(pos + 1, "number too large"))?;
    Ok((v, pos + digits))
}

impl PatternSpec {
    pub fn parse(src: &str) -> Result<PatternSpec> {
        if let Some(path) = src.strip_prefix("file:") {
            if path.is_empty() {
                return Err(err(6, "empty path after `file:`"));
            }
            return Ok(PatternSpec::File(PathBuf::from(path)));
        }
        if !src.starts_with('K') {
            return Err(err(1, format!("pattern must start with `K` or `file:`, found `{src}`")));
        }
        let (l, pos) = number(src, 1)?;
        if src.as_bytes().get(pos) != Some(&b'_') {
            return Err(err(pos + 1, "expected `_` between the order and the uniformity"));
        }
        let (s, mut pos) = number(src, pos + 1)?;
        if s == 0 || l < s {
            return Err(err(1, format!("need 1 <= s <= l, got l = {l}, s = {s}")));
        }
        let mut sizes = vec![1; l];
        if pos < src.len() {
            if src.as_bytes()[pos] != b'(' {
                return Err(err(pos + 1, "expected `(` or end of pattern"));
            }
            sizes.clear();
            pos += 1;
            loop {
                while src.as_bytes().get(pos) == Some(&b' ') {
                    pos += 1;
                }
                let (a, next) = number(src, pos)?;
                if a == 0 {
                    return Err(err(pos + 1, "class sizes must be positive"));
                }
                sizes.push(a);
                pos = next;
                match src.as_bytes().get(pos) {
                    Some(b',') => pos += 1,
                    Some(b')') => {
                        pos += 1;
                        break;
                    }
                    _ => return Err(err(pos + 1, "expected `,` or `)`")),
                }
            }
            if pos != src.len() {
                return Err(err(pos + 1, "trailing characters after `)`"));
            }
            if sizes.len() != l {
                return Err(err(1, format!("K{l}_{s} needs {l} class sizes, got {}", sizes.len())));
            }
        }
        Ok(PatternSpec::Partite { l, s, sizes })
    }

    /// The blowup description, for partite patterns.
    pub fn blowup_spec(&self) -> Result<Option<BlowupSpec>> {
        match self {
            PatternSpec::Partite { l, s, sizes } => Ok(Some(BlowupSpec::new(
                UniformHypergraph::complete(*l, *s)?,
                sizes.clone(),
            )?)),
            PatternSpec::File(_) => Ok(None),
        }
    }

    /// Materializes the pattern.
    pub fn build(&self) -> Result<UniformHypergraph> {
        match self {
            PatternSpec::Partite { .. } => {
                let spec = self.blowup_spec()?.expect("partite pattern");
                Ok(blowup(&spec)?.0)
            }
            PatternSpec::File(path) => Ok(text::read_file(path)?.hypergraph),
        }
    }

    pub fn uniformity(&self) -> Option<usize> {
        match self {
            PatternSpec::Partite { s, .. } => Some(*s),
            PatternSpec::File(_) => None,
        }
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternSpec::Partite { l, s, sizes } => {
                write!(f, "K{l}_{s}")?;
                if sizes.iter().any(|&a| a != 1) {
                    let list: Vec<String> = sizes.iter().map(|a| a.to_string()).collect();
                    write!(f, "({})", list.join(","))?;
                }
                Ok(())
            }
            PatternSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl std::str::FromStr for PatternSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<PatternSpec> {
        PatternSpec::parse(s)
    }
}

/// Shorthand for `K_l^{(s)}(sizes)`.
pub fn partite_name(s: usize, sizes: &[usize]) -> String {
    PatternSpec::Partite {
        l: sizes.len(),
        s,
        sizes: sizes.to_vec(),
    }
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_shorthands() {
        let p = PatternSpec::parse("K3_2(1,1,2)").unwrap();
        assert_eq!(p, PatternSpec::Partite { l: 3, s: 2, sizes: vec![1, 1, 2] });
        assert_eq!(p.build().unwrap().edge_count(), 5);
        assert_eq!(p.to_string(), "K3_2(1,1,2)");
        let k4 = PatternSpec::parse("K4_3").unwrap();
        assert_eq!(k4.build().unwrap().edge_count(), 4);
        assert_eq!(PatternSpec::parse("K3_2(1, 1, 1)").unwrap().to_string(), "K3_2");
        assert_eq!(
            PatternSpec::parse("file:x.hg").unwrap(),
            PatternSpec::File(PathBuf::from("x.hg"))
        );
    }

    #[test]
    fn errors_report_columns() {
        let col = |s: &str| match PatternSpec::parse(s) {
            Err(Error::Parse { column, .. }) => column,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(col("X3_2"), 1);
        assert_eq!(col("K3-2"), 3);
        assert_eq!(col("K3_2(1,1,"), 10);
        assert_eq!(col("K3_2(1,1,2"), 11);
        assert_eq!(col("K3_2(1,0,2)"), 8);
        assert_eq!(col("K3_2(1,1,2)x"), 12);
        assert_eq!(col("K3_2(1,1)"), 1);
        assert_eq!(col("K2_3"), 1);
    }
}
