//! Line-oriented input documents.
//!
//! ```text
//! # GHZ on three qubits
//! d=2 n=3 mode=stabilizer
//! g1: X X X
//! g2: Z Z I
//! g3: I Z Z
//! ```
//!
//! The header carries `d=<prime>`, `n=<sites>` and an optional
//! `mode=group|stabilizer`. Each generator line is `g<idx>:` followed by an
//! optional global phase `w^<j>` (or `i^<p>`, `p < 4`, when `d = 2`) and
//! exactly `n` site tokens drawn from `I`, `X`, `Z`, `X^<a>`, `Z^<b>`,
//! `X^<a>Z^<b>` (the exponent `1` may be omitted). Exponents must lie in
//! `[0, d)`. `#` starts a comment.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::gf::Modulus;
use crate::pauli::PauliOperator;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: exponent {value} outside [0, {d})")]
    ExponentOutOfRange {
        line: usize,
        column: usize,
        value: u64,
        d: u32,
    },
    #[error("line {line}: {message}")]
    DimensionMismatch { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Group,
    Stabilizer,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Group => "group",
            Mode::Stabilizer => "stabilizer",
        }
    }
}

impl FromStr for Mode {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "group" => Ok(Mode::Group),
            "stabilizer" => Ok(Mode::Stabilizer),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDocument {
    pub d: Modulus,
    pub n_sites: usize,
    /// Generator labels as written, e.g. `g1`.
    pub labels: Vec<String>,
    pub generators: Vec<PauliOperator>,
    pub mode: Option<Mode>,
}

impl InputDocument {
    /// Canonical text form; parsing it gives back the same document.
    pub fn to_text(&self) -> String {
        let mut out = format!("d={} n={}", self.d, self.n_sites);
        if let Some(mode) = self.mode {
            out.push_str(" mode=");
            out.push_str(mode.as_str());
        }
        out.push('\n');
        for (label, g) in self.labels.iter().zip(&self.generators) {
            out.push_str(&format!("{label}: {}\n", g.to_grammar_string()));
        }
        out
    }
}

impl fmt::Display for InputDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
}

impl Cursor<'_> {
    fn error(&self, offset: usize, message: impl Into<String>) -> DocumentError {
        DocumentError::Parse {
            line: self.line,
            column: self.text[..offset.min(self.text.len())].chars().count() + 1,
            message: message.into(),
        }
    }
}

/// Whitespace-separated tokens with their byte offsets.
fn tokens(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.split_ascii_whitespace()
        .map(move |t| (t.as_ptr() as usize - s.as_ptr() as usize, t))
}

pub fn parse_document(text: &str) -> Result<InputDocument, DocumentError> {
    let mut header: Option<(Modulus, usize, Option<Mode>)> = None;
    let mut labels = Vec::new();
    let mut generators = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.split('\n').enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let cur = Cursor {
            line: line_no,
            text: raw,
        };
        match header {
            None => header = Some(parse_header(&cur, body)?),
            Some((d, n, _)) => {
                let (label, op) = parse_generator(&cur, body, d, n)?;
                if labels.contains(&label) {
                    return Err(cur.error(0, format!("duplicate generator label {label}")));
                }
                labels.push(label);
                generators.push(op);
            }
        }
    }

    let Some((d, n_sites, mode)) = header else {
        return Err(DocumentError::Parse {
            line: last_line.max(1),
            column: 1,
            message: "missing header `d=<int> n=<int>`".into(),
        });
    };
    if generators.is_empty() {
        return Err(DocumentError::Parse {
            line: last_line.max(1),
            column: 1,
            message: "at least one generator line is required".into(),
        });
    }
    Ok(InputDocument {
        d,
        n_sites,
        labels,
        generators,
        mode,
    })
}

fn parse_header(
    cur: &Cursor<'_>,
    body: &str,
) -> Result<(Modulus, usize, Option<Mode>), DocumentError> {
    let mut d = None;
    let mut n = None;
    let mut mode = None;
    for (off, tok) in tokens(body) {
        let Some((key, value)) = tok.split_once('=') else {
            return Err(cur.error(off, format!("expected key=value, found {tok:?}")));
        };
        let voff = off + key.len() + 1;
        match key {
            "d" => {
                let v: u64 = value
                    .parse()
                    .map_err(|_| cur.error(voff, format!("bad integer {value:?}")))?;
                d = Some(Modulus::new(v).map_err(|e| cur.error(voff, e.to_string()))?);
            }
            "n" => {
                let v: usize = value
                    .parse()
                    .map_err(|_| cur.error(voff, format!("bad integer {value:?}")))?;
                if v == 0 {
                    return Err(cur.error(voff, "n must be positive"));
                }
                n = Some(v);
            }
            "mode" => {
                mode = Some(value.parse::<Mode>().map_err(|_| {
                    cur.error(
                        voff,
                        format!("mode must be group or stabilizer, found {value:?}"),
                    )
                })?);
            }
            _ => return Err(cur.error(off, format!("unknown header key {key:?}"))),
        }
    }
    match (d, n) {
        (Some(d), Some(n)) => Ok((d, n, mode)),
        _ => Err(cur.error(0, "header needs both d=<int> and n=<int>")),
    }
}

fn parse_generator(
    cur: &Cursor<'_>,
    body: &str,
    d: Modulus,
    n: usize,
) -> Result<(String, PauliOperator), DocumentError> {
    let Some((label, rest)) = body.split_once(':') else {
        return Err(cur.error(0, "expected `g<idx>: <site tokens>`"));
    };
    let label = label.trim();
    let label_off = body.find(label).unwrap_or(0);
    let valid_label = label
        .strip_prefix('g')
        .is_some_and(|idx| !idx.is_empty() && idx.bytes().all(|b| b.is_ascii_digit()));
    if !valid_label {
        return Err(cur.error(label_off, format!("bad generator label {label:?}")));
    }
    let base = label_off + body[label_off..].find(':').unwrap_or(0) + 1;

    let mut phase = 0i64;
    // qubit phases in units of i, written `i^p`
    let mut i_phase = None;
    let mut x = Vec::with_capacity(n);
    let mut z = Vec::with_capacity(n);
    for (k, (off, tok)) in tokens(rest).enumerate() {
        let off = base + off;
        if k == 0 {
            if let Some(j) = tok.strip_prefix("w^") {
                phase = exponent(cur, off + 2, j, d.get())? as i64;
                continue;
            }
            if let (Some(p), 2) = (tok.strip_prefix("i^"), d.get()) {
                i_phase = Some(exponent(cur, off + 2, p, 4)? as i64);
                continue;
            }
        }
        let (a, b) = site_token(cur, off, tok, d)?;
        x.push(a);
        z.push(b);
    }
    if x.len() != n {
        return Err(DocumentError::DimensionMismatch {
            line: cur.line,
            message: format!("{label} has {} site tokens, header says n={n}", x.len()),
        });
    }
    let mut op = PauliOperator::new(d, &x, &z, phase).expect("matching lengths");
    if let Some(p) = i_phase {
        op = op.with_phase_exp(p);
    }
    Ok((label.to_owned(), op))
}

/// Decimal exponent in `[0, bound)`.
fn exponent(cur: &Cursor<'_>, off: usize, s: &str, bound: u32) -> Result<u32, DocumentError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(cur.error(off, format!("bad exponent {s:?}")));
    }
    let v: u64 = s
        .parse()
        .map_err(|_| cur.error(off, format!("bad exponent {s:?}")))?;
    if v >= bound as u64 {
        return Err(DocumentError::ExponentOutOfRange {
            line: cur.line,
            column: cur.text[..off.min(cur.text.len())].chars().count() + 1,
            value: v,
            d: bound,
        });
    }
    Ok(v as u32)
}

fn site_token(
    cur: &Cursor<'_>,
    off: usize,
    tok: &str,
    d: Modulus,
) -> Result<(i64, i64), DocumentError> {
    if tok == "I" {
        return Ok((0, 0));
    }
    let mut a = 0;
    let mut b = 0;
    let mut rest = tok;
    let mut pos = off;
    for (letter, slot) in [('X', &mut a), ('Z', &mut b)] {
        let Some(after) = rest.strip_prefix(letter) else {
            continue;
        };
        pos += 1;
        if let Some(exp) = after.strip_prefix('^') {
            let digits = exp.bytes().take_while(u8::is_ascii_digit).count();
            *slot = exponent(cur, pos + 1, &exp[..digits], d.get())? as i64;
            rest = &exp[digits..];
            pos += 1 + digits;
        } else {
            *slot = 1 % d.get() as i64;
            rest = after;
        }
    }
    if !rest.is_empty() || rest.len() == tok.len() {
        return Err(cur.error(pos, format!("bad site token {tok:?}")));
    }
    Ok((a, b))
}
