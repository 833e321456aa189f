//! The `.bases` text format.
//!
//! ```text
//! # optional comment lines before the header
//! n r
//! 1 2
//! 1 3
//! ```
//!
//! One basis per line as strictly increasing 1-based labels separated by single
//! spaces, lines in lexicographic order, LF endings, no trailing whitespace. A
//! rank-0 matroid has a single empty basis line.

use std::collections::HashSet;

use thiserror::Error;

use crate::matroid::{Matroid, MatroidError};
use crate::subset::{Subset, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing `n r` header")]
    MissingHeader,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: basis {basis} is listed twice")]
    Duplicate { line: usize, basis: Subset },
    #[error("line {line}: basis has {found} elements, expected {expected}")]
    Cardinality { line: usize, found: usize, expected: usize },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// Writes `m` in `.bases` form, optionally preceded by `# ` comment lines.
pub fn write_bases(m: &Matroid, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("{} {}\n", m.len(), m.rank()));
    let mut rows: Vec<Vec<usize>> = m.bases().iter().map(|b| b.labels()).collect();
    rows.sort();
    for row in rows {
        let line: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_bases(text: &str) -> Result<Matroid, ParseError> {
    let mut lines = text.split('\n').enumerate().map(|(i, l)| (i + 1, l)).peekable();
    while matches!(lines.peek(), Some((_, l)) if l.starts_with('#')) {
        lines.next();
    }
    let (header_line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let syntax = |line: usize, message: &str| ParseError::Syntax { line, message: message.to_string() };
    let fields: Vec<&str> = header.split(' ').collect();
    if fields.len() != 2 {
        return Err(if header.trim().is_empty() {
            ParseError::MissingHeader
        } else {
            syntax(header_line, "header must be `n r`")
        });
    }
    let n: usize = fields[0].parse().map_err(|_| syntax(header_line, "bad ground set size"))?;
    let r: usize = fields[1].parse().map_err(|_| syntax(header_line, "bad rank"))?;
    if n > MAX_GROUND {
        return Err(MatroidError::GroundTooLarge(n).into());
    }

    let body: Vec<(usize, &str)> = lines.collect();
    // A trailing LF leaves one empty final piece.
    let body = match body.split_last() {
        Some(((_, ""), rest)) => rest,
        _ => &body[..],
    };
    let mut seen = HashSet::new();
    let mut bases = Vec::with_capacity(body.len());
    for &(line, raw) in body {
        if raw.ends_with('\r') || raw.ends_with(' ') || raw.starts_with(' ') {
            return Err(syntax(line, "stray whitespace"));
        }
        let mut basis = Subset::EMPTY;
        let mut last = 0;
        let mut count = 0;
        if !raw.is_empty() {
            for tok in raw.split(' ') {
                let label: usize = tok.parse().map_err(|_| syntax(line, "expected an element label"))?;
                if label == 0 || label > n {
                    return Err(syntax(line, "element label out of range"));
                }
                if label <= last {
                    return Err(syntax(line, "labels must be strictly increasing"));
                }
                last = label;
                count += 1;
                basis = basis.with(label - 1);
            }
        }
        if count != r {
            return Err(ParseError::Cardinality { line, found: count, expected: r });
        }
        if !seen.insert(basis) {
            return Err(ParseError::Duplicate { line, basis });
        }
        bases.push(basis);
    }
    Ok(Matroid::new(n, r, bases)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;

    #[test]
    fn writes_canonical_text() {
        let m = catalog("U(2,3)").unwrap();
        assert_eq!(write_bases(&m, &[]), "3 2\n1 2\n1 3\n2 3\n");
        let z = catalog("U(0,2)").unwrap();
        assert_eq!(write_bases(&z, &["rank zero".into()]), "# rank zero\n2 0\n\n");
    }

    #[test]
    fn round_trips_catalog() {
        for name in ["V8", "MK(5)", "U(0,2)", "W3"] {
            let m = catalog(name).unwrap();
            assert_eq!(parse_bases(&write_bases(&m, &["x".into()])).unwrap(), m);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_bases("3 2\n1 2\n1 2\n"), Err(ParseError::Duplicate { line: 3, .. })));
        assert!(matches!(parse_bases("3 2\n1 2 3\n"), Err(ParseError::Cardinality { line: 2, .. })));
        assert!(matches!(parse_bases("3 2\n2 1\n"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_bases("3 2\n1 2 \n"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_bases(""), Err(ParseError::MissingHeader)));
        assert!(matches!(
            parse_bases("4 2\n1 2\n3 4\n"),
            Err(ParseError::Matroid(MatroidError::ExchangeViolation { .. }))
        ));
    }
}
