//! Plain-text code files.
//!
//! A file is a header of `#` lines followed by one codeword per line, each
//! codeword written as its canonical generator rows joined by ';', each row
//! a digit string (so the alphabet is limited to orders up to 10):
//!
//! ```text
//! # subspace-code format=1
//! # q=2
//! # n=6
//! # k=3
//! # d=4
//! 100000;010000;001000
//! ```
//!
//! `k=mixed` marks codes without a constant dimension, `d=unknown` a code
//! with no claimed distance. Unrecognized `#` lines survive parsing
//! verbatim as comments, so `parse(emit(code))` re-emits byte-identically.

use std::fmt;

use thiserror::Error;

use crate::field::{Field, FieldError};
use crate::matrix::GFMatrix;
use crate::multilevel::SubspaceCode;
use crate::subspace::Subspace;

pub const FORMAT_LINE: &str = "# subspace-code format=1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeFileError {
    #[error("missing format line '{FORMAT_LINE}'")]
    MissingFormatLine,
    #[error("unsupported format declaration '{0}'")]
    UnsupportedFormat(String),
    #[error("missing required header '{0}'")]
    MissingHeader(&'static str),
    #[error("line {line}: header '{key}' appears twice")]
    DuplicateHeader { key: &'static str, line: usize },
    #[error("line {line}: bad value for header '{key}'")]
    BadHeaderValue { key: &'static str, line: usize },
    #[error("order {order} is not a prime power")]
    BadOrder { order: u32 },
    #[error("order {order} does not fit the single-digit alphabet (q <= 10)")]
    UnsupportedOrder { order: u32 },
    #[error("line {line}: character '{ch}' is not a digit below {order}")]
    BadDigit { line: usize, ch: char, order: u32 },
    #[error("line {line}: row has {got} digits, expected {expected}")]
    RowLength {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: codeword has dimension {got}, but the header claims k={expected}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("zero-dimensional codewords cannot be written")]
    ZeroDimensionalWord,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Recoverable oddities found while parsing; the returned code is already
/// repaired.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeFileWarning {
    /// The line's rows were not a canonical generator; they were
    /// re-reduced.
    NonCanonicalRows { line: usize },
    /// The line repeats an earlier codeword; it was dropped.
    DuplicateCodeword { line: usize },
}

impl fmt::Display for CodeFileWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeFileWarning::NonCanonicalRows { line } => {
                write!(
                    f,
                    "line {line}: rows were not canonical and were re-reduced"
                )
            }
            CodeFileWarning::DuplicateCodeword { line } => {
                write!(f, "line {line}: duplicate codeword dropped")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ParseOutcome {
    pub code: SubspaceCode,
    pub warnings: Vec<CodeFileWarning>,
}

/// Serializes a code. Fails for orders above 10 (no single-digit alphabet)
/// and for codes containing the zero subspace (no line could express it).
pub fn emit(code: &SubspaceCode) -> Result<String, CodeFileError> {
    let q = code.field().order();
    if q > 10 {
        return Err(CodeFileError::UnsupportedOrder { order: q });
    }
    let mut out = String::new();
    out.push_str(FORMAT_LINE);
    out.push('\n');
    out.push_str(&format!("# q={q}\n"));
    out.push_str(&format!("# n={}\n", code.ambient()));
    match code.constant_dimension() {
        Some(k) => out.push_str(&format!("# k={k}\n")),
        None => out.push_str("# k=mixed\n"),
    }
    match code.claimed_distance() {
        Some(d) => out.push_str(&format!("# d={d}\n")),
        None => out.push_str("# d=unknown\n"),
    }
    if let Some(fibers) = code.fibers() {
        for f in fibers {
            out.push_str(&format!(
                "# fiber v={} dim={} bound={} attained={} size={}\n",
                f.vector,
                f.dimension,
                f.bound,
                if f.attains_bound { "yes" } else { "no" },
                f.size
            ));
        }
    }
    for c in code.comments() {
        out.push_str(c);
        out.push('\n');
    }
    for w in code.words() {
        if w.dim() == 0 {
            return Err(CodeFileError::ZeroDimensionalWord);
        }
        let rows: Vec<String> = (0..w.dim())
            .map(|r| {
                w.generator()
                    .row(r)
                    .iter()
                    .map(|&d| char::from_digit(d, 10).expect("digits below 10"))
                    .collect()
            })
            .collect();
        out.push_str(&rows.join(";"));
        out.push('\n');
    }
    Ok(out)
}

fn field_of_order(order: u32) -> Result<Field, CodeFileError> {
    if order < 2 {
        return Err(CodeFileError::BadOrder { order });
    }
    if order > 10 {
        return Err(CodeFileError::UnsupportedOrder { order });
    }
    let p = (2..=order)
        .find(|d| order.is_multiple_of(*d))
        .expect("order >= 2");
    let mut e = 0;
    let mut rest = order;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(CodeFileError::BadOrder { order });
    }
    Ok(Field::new(p, e)?)
}

struct HeaderSlot<T> {
    key: &'static str,
    value: Option<T>,
}

impl<T> HeaderSlot<T> {
    fn new(key: &'static str) -> Self {
        HeaderSlot { key, value: None }
    }

    fn fill(&mut self, value: T, line: usize) -> Result<(), CodeFileError> {
        if self.value.is_some() {
            return Err(CodeFileError::DuplicateHeader {
                key: self.key,
                line,
            });
        }
        self.value = Some(value);
        Ok(())
    }
}

/// Parses a code file. Header problems and malformed digits are errors;
/// non-canonical rows and duplicate codewords are repaired and reported as
/// warnings.
pub fn parse(text: &str) -> Result<ParseOutcome, CodeFileError> {
    let mut q = HeaderSlot::<u32>::new("q");
    let mut n = HeaderSlot::<usize>::new("n");
    let mut k = HeaderSlot::<Option<usize>>::new("k");
    let mut d = HeaderSlot::<Option<usize>>::new("d");
    let mut comments: Vec<String> = Vec::new();
    let mut body: Vec<(usize, &str)> = Vec::new();
    let mut format_seen = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        if let Some(rest) = line.trim_start().strip_prefix('#') {
            let content = rest.trim();
            if content.starts_with("subspace-code") {
                if format_seen {
                    comments.push(line.to_string());
                } else if line.trim() == FORMAT_LINE.trim() || content == "subspace-code format=1" {
                    format_seen = true;
                } else {
                    return Err(CodeFileError::UnsupportedFormat(content.to_string()));
                }
                continue;
            }
            match content.split_once('=') {
                Some(("q", value)) => q.fill(
                    value
                        .trim()
                        .parse()
                        .map_err(|_| CodeFileError::BadHeaderValue {
                            key: "q",
                            line: line_no,
                        })?,
                    line_no,
                )?,
                Some(("n", value)) => n.fill(
                    value
                        .trim()
                        .parse()
                        .map_err(|_| CodeFileError::BadHeaderValue {
                            key: "n",
                            line: line_no,
                        })?,
                    line_no,
                )?,
                Some(("k", value)) => {
                    let value = value.trim();
                    let parsed = if value == "mixed" {
                        None
                    } else {
                        Some(value.parse().map_err(|_| CodeFileError::BadHeaderValue {
                            key: "k",
                            line: line_no,
                        })?)
                    };
                    k.fill(parsed, line_no)?
                }
                Some(("d", value)) => {
                    let value = value.trim();
                    let parsed = if value == "unknown" {
                        None
                    } else {
                        Some(value.parse().map_err(|_| CodeFileError::BadHeaderValue {
                            key: "d",
                            line: line_no,
                        })?)
                    };
                    d.fill(parsed, line_no)?
                }
                _ => comments.push(line.to_string()),
            }
            continue;
        }
        body.push((line_no, line.trim()));
    }

    if !format_seen {
        return Err(CodeFileError::MissingFormatLine);
    }
    let order = q.value.ok_or(CodeFileError::MissingHeader("q"))?;
    let ambient = n.value.ok_or(CodeFileError::MissingHeader("n"))?;
    if ambient == 0 {
        return Err(CodeFileError::BadHeaderValue { key: "n", line: 0 });
    }
    let constant_k = k.value.flatten();
    let claimed = d.value.flatten();
    let field = field_of_order(order)?;

    let mut warnings = Vec::new();
    let mut words: Vec<Subspace> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (line_no, line) in body {
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for row_text in line.split(';') {
            let mut row = Vec::with_capacity(ambient);
            for ch in row_text.chars() {
                let digit =
                    ch.to_digit(10)
                        .filter(|&v| v < order)
                        .ok_or(CodeFileError::BadDigit {
                            line: line_no,
                            ch,
                            order,
                        })?;
                row.push(digit);
            }
            if row.len() != ambient {
                return Err(CodeFileError::RowLength {
                    line: line_no,
                    expected: ambient,
                    got: row.len(),
                });
            }
            rows.push(row);
        }
        let raw = GFMatrix::from_rows(&field, ambient, &rows);
        let (reduced, _) = raw.rref();
        let canonical = reduced == raw;
        if !canonical {
            warnings.push(CodeFileWarning::NonCanonicalRows { line: line_no });
        }
        let word = Subspace::from_generator(&raw);
        if let Some(expected) = constant_k {
            if word.dim() != expected {
                return Err(CodeFileError::DimensionMismatch {
                    line: line_no,
                    expected,
                    got: word.dim(),
                });
            }
        }
        if !seen.insert(word.clone()) {
            warnings.push(CodeFileWarning::DuplicateCodeword { line: line_no });
            continue;
        }
        words.push(word);
    }

    let mut code = SubspaceCode::new(&field, ambient, claimed, words);
    code.comments = comments;
    Ok(ParseOutcome { code, warnings })
}
