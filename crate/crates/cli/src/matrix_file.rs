//! Plain-text exchange matrices.
//!
//! ```text
//! # comment
//! 2 3        n m
//! 0 3
//! -3 0
//! 1 -2       frozen row
//! d: 1 1     optional symmetrizer
//! ```

use mutfin_core::{Error as CoreError, ExchangeMatrix};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing header line \"n m\"")]
    MissingHeader,
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("invalid matrix: {}: {0}", .0.name())]
    Invalid(CoreError),
}

pub fn parse(text: &str) -> Result<ExchangeMatrix, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut d: Option<Vec<i64>> = None;
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |message: String| ParseError::Syntax { line: no + 1, message };
        let ints = |s: &str| -> Result<Vec<i64>, ParseError> {
            s.split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|_| syntax(format!("not an integer: {t:?}"))))
                .collect()
        };
        if let Some(rest) = line.strip_prefix("d:") {
            if d.is_some() {
                return Err(syntax("second symmetrizer line".into()));
            }
            d = Some(ints(rest)?);
            continue;
        }
        let values = ints(line)?;
        match header {
            None => {
                let [n, m] = values[..] else {
                    return Err(syntax("header must be \"n m\"".into()));
                };
                if n < 1 || m < n {
                    return Err(syntax(format!("need 1 <= n <= m, got n = {n}, m = {m}")));
                }
                header = Some((n as usize, m as usize));
            }
            Some((n, m)) => {
                if d.is_some() {
                    return Err(syntax("rows after the symmetrizer line".into()));
                }
                if rows.len() == m {
                    return Err(syntax(format!("more than {m} rows")));
                }
                if values.len() != n {
                    return Err(syntax(format!("expected {n} entries, found {}", values.len())));
                }
                rows.push(values);
            }
        }
    }
    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    if rows.len() != m {
        return Err(ParseError::RowCount { expected: m, found: rows.len() });
    }
    if let Some(d) = &d {
        if d.len() != n {
            return Err(ParseError::Invalid(CoreError::DimensionMismatch(format!(
                "symmetrizer of length {} for {n} vertices",
                d.len()
            ))));
        }
    }
    ExchangeMatrix::new(rows, d).map_err(ParseError::Invalid)
}

/// Prints `m` in the format read by [`parse`]. The symmetrizer line is
/// written only when some entry differs from 1.
pub fn print(m: &ExchangeMatrix) -> String {
    let mut out = format!("{} {}\n", m.n(), m.m());
    for row in m.rows() {
        out.push_str(&join(row));
        out.push('\n');
    }
    if m.symmetrizer().iter().any(|&x| x != 1) {
        out.push_str("d: ");
        out.push_str(&join(m.symmetrizer()));
        out.push('\n');
    }
    out
}

fn join(xs: &[i64]) -> String {
    xs.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_comments_and_symmetrizer() {
        let m = parse("# B2\n2 2\n0 1 # first row\n-2 0\nd: 1 2\n").unwrap();
        assert_eq!(m.entries(), [0, 1, -2, 0]);
        assert_eq!(m.symmetrizer(), [1, 2]);
        assert_eq!(parse(&print(&m)).unwrap(), m);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse("2 2\n0 1\n-1 x\n").unwrap_err();
        assert_eq!(err, ParseError::Syntax { line: 3, message: "not an integer: \"x\"".into() });
        assert!(matches!(parse("2 3\n0 1\n-1 0\n"), Err(ParseError::RowCount { expected: 3, found: 2 })));
        assert!(matches!(parse("# nothing\n"), Err(ParseError::MissingHeader)));
        assert!(matches!(parse("2 2\n0 1\n1 0\n"), Err(ParseError::Invalid(_))));
    }
}
