//! The plain-text hypergraph format.
//!
//! ```text
//! # optional comment lines
//! s n m
//! v1 v2 ... vs      (m lines, sorted within the line, lines sorted)
//! ```

use std::fmt::Write as _;
use std::path::Path;

use super::hypergraph::UniformHypergraph;
use crate::error::{Error, Result};

/// Serializes `h` in canonical form (edges sorted lexicographically).
pub fn to_text(h: &UniformHypergraph) -> String {
    let mut out = String::with_capacity(16 + h.edge_count() * 3 * h.uniformity());
    writeln!(out, "{} {} {}", h.uniformity(), h.n(), h.edge_count()).unwrap();
    for e in h.edges() {
        writeln!(out, "{e}").unwrap();
    }
    out
}

/// Serializes `h` preceded by `# ` comment lines.
pub fn to_text_with_comments(h: &UniformHypergraph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            writeln!(out, "# {line}").unwrap();
        }
    }
    out.push_str(&to_text(h));
    out
}

/// A parsed document: the hypergraph and the text of its comment lines
/// (without the leading `#` and one following space).
#[derive(Clone, Debug)]
pub struct TextDocument {
    pub hypergraph: UniformHypergraph,
    pub comments: Vec<String>,
}

pub fn from_text(text: &str) -> Result<UniformHypergraph> {
    parse_document(text).map(|d| d.hypergraph)
}

pub fn parse_document(text: &str) -> Result<TextDocument> {
    let mut comments = Vec::new();
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let trimmed = raw.trim();
        if let Some(c) = trimmed.strip_prefix('#') {
            comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        let nums = parse_numbers(raw, line)?;
        match header {
            None => {
                if nums.len() != 3 {
                    return Err(Error::Parse {
                        line,
                        column: 1,
                        message: format!("header needs `s n m`, found {} fields", nums.len()),
                    });
                }
                header = Some((nums[0], nums[1], nums[2]));
            }
            Some((s, _, m)) => {
                if edges.len() == m {
                    return Err(Error::Parse {
                        line,
                        column: 1,
                        message: format!("more than the declared {m} edges"),
                    });
                }
                if nums.len() != s {
                    return Err(Error::Parse {
                        line,
                        column: 1,
                        message: format!("edge has {} vertices, uniformity is {s}", nums.len()),
                    });
                }
                edges.push(nums);
            }
        }
    }
    let (s, n, m) = header.ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "missing `s n m` header".into(),
    })?;
    if edges.len() != m {
        return Err(Error::Parse {
            line: text.lines().count(),
            column: 1,
            message: format!("declared {m} edges, found {}", edges.len()),
        });
    }
    let hypergraph = UniformHypergraph::new(n, s, &edges)?;
    if hypergraph.edge_count() != m {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "duplicate edges".into(),
        });
    }
    Ok(TextDocument {
        hypergraph,
        comments,
    })
}

fn parse_numbers(raw: &str, line: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut col = 0;
    for tok in raw.split(' ') {
        if !tok.is_empty() {
            let v = tok.trim().parse::<usize>().map_err(|_| Error::Parse {
                line,
                column: col + 1,
                message: format!("expected a non-negative integer, found `{tok}`"),
            })?;
            out.push(v);
        }
        col += tok.len() + 1;
    }
    Ok(out)
}

/// Hex SHA-256 of the canonical text form; stable identity for certificates.
pub fn digest(h: &UniformHypergraph) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(to_text(h).as_bytes()))
}

pub fn read_file(path: impl AsRef<Path>) -> Result<TextDocument> {
    let text = std::fs::read_to_string(path)?;
    parse_document(&text)
}

pub fn write_file(path: impl AsRef<Path>, h: &UniformHypergraph, comments: &[String]) -> Result<()> {
    std::fs::write(path, to_text_with_comments(h, comments))?;
    Ok(())
}
