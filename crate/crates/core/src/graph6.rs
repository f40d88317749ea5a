//! graph6 encoding (as produced by nauty's `geng`) and newline-delimited
//! corpus streaming.
//!
//! A record is the vertex count followed by the upper triangle of the
//! adjacency matrix read column by column, `(0,1), (0,2), (1,2), (0,3), ...`,
//! packed six bits per byte (most significant first) and offset by 63.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const OFFSET: u8 = 63;
const LONG_FORM: u8 = 126;
const HEADER: &[u8] = b">>graph6<<";

/// How the decoder treats nonzero bits in the final byte's padding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Padding {
    #[default]
    Strict,
    Lenient,
}

/// What a corpus stream does after a malformed line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OnError {
    #[default]
    Abort,
    Skip,
}

/// Number of bytes in the record for an `n`-vertex graph.
pub fn encoded_len(n: usize) -> usize {
    let header = if n <= 62 { 1 } else { 4 };
    header + (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(encoded_len(n));
    if n <= 62 {
        out.push(OFFSET + n as u8);
    } else {
        out.push(LONG_FORM);
        for shift in [12, 6, 0] {
            out.push(OFFSET + ((n >> shift) & 0x3f) as u8);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(OFFSET + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(OFFSET + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

pub fn decode(bytes: &[u8]) -> Result<Graph> {
    decode_with(bytes, Padding::Strict)
}

pub fn decode_with(bytes: &[u8], padding: Padding) -> Result<Graph> {
    let err = |offset: usize, message: String| Error::Graph6 { offset, message };
    if let Some(pos) = bytes.iter().position(|&b| !(OFFSET..=126).contains(&b)) {
        return Err(err(
            pos,
            format!("byte 0x{:02x} is not printable graph6", bytes[pos]),
        ));
    }
    let (n, body_start) = match bytes.first() {
        None => return Err(err(0, "empty record".into())),
        Some(&LONG_FORM) => {
            if bytes.get(1) == Some(&LONG_FORM) {
                return Err(err(1, "36-bit size form is unsupported".into()));
            }
            if bytes.len() < 4 {
                return Err(err(bytes.len(), "truncated size field".into()));
            }
            let n = bytes[1..4]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - OFFSET) as usize);
            (n, 4)
        }
        Some(&b) => ((b - OFFSET) as usize, 1),
    };
    if n > MAX_VERTICES {
        return Err(err(
            0,
            format!("{n} vertices exceeds the cap of {MAX_VERTICES}"),
        ));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = body_start + bits.div_ceil(6);
    if bytes.len() < expected {
        return Err(err(
            bytes.len(),
            format!("truncated bit field: expected {expected} bytes"),
        ));
    }
    if bytes.len() > expected {
        return Err(err(
            expected,
            format!("trailing data after {expected} bytes"),
        ));
    }
    let body = &bytes[body_start..];
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - OFFSET;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if padding == Padding::Strict && bits % 6 != 0 {
        let last = body[body.len() - 1] - OFFSET;
        let pad_mask = (1u8 << (6 - bits % 6)) - 1;
        if last & pad_mask != 0 {
            return Err(err(expected - 1, "nonzero padding bits".into()));
        }
    }
    Ok(g)
}

/// Lazily decodes newline-delimited graph6 records. Blank lines and a
/// leading `>>graph6<<` header are ignored; errors carry 1-based line numbers.
pub struct Graph6Reader<R> {
    lines: std::io::Split<R>,
    line: usize,
    padding: Padding,
    on_error: OnError,
    done: bool,
}

impl<R: BufRead> Graph6Reader<R> {
    pub fn new(source: R) -> Self {
        Self {
            lines: source.split(b'\n'),
            line: 0,
            padding: Padding::Strict,
            on_error: OnError::Abort,
            done: false,
        }
    }

    pub fn padding(mut self, padding: Padding) -> Self {
        self.padding = padding;
        self
    }

    pub fn on_error(mut self, on_error: OnError) -> Self {
        self.on_error = on_error;
        self
    }
}

impl<R: BufRead> Iterator for Graph6Reader<R> {
    type Item = Result<Graph>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        loop {
            let raw = match self.lines.next()? {
                Ok(raw) => raw,
                Err(e) => {
                    self.done = true;
                    return Some(Err(e.into()));
                }
            };
            self.line += 1;
            let mut rec: &[u8] = &raw;
            if let Some(stripped) = rec.strip_suffix(b"\r") {
                rec = stripped;
            }
            if self.line == 1 {
                rec = rec.strip_prefix(HEADER).unwrap_or(rec);
            }
            if rec.is_empty() {
                continue;
            }
            let item = decode_with(rec, self.padding).map_err(|e| Error::Corpus {
                line: self.line,
                source: Box::new(e),
            });
            if item.is_err() && self.on_error == OnError::Abort {
                self.done = true;
            }
            return Some(item);
        }
    }
}

pub fn stream<R: BufRead>(source: R) -> Graph6Reader<R> {
    Graph6Reader::new(source)
}

/// Reads a whole corpus file. With [`OnError::Skip`] malformed lines are
/// returned as diagnostics; with [`OnError::Abort`] the first one is an error.
pub fn read_corpus(path: impl AsRef<Path>, on_error: OnError) -> Result<(Vec<Graph>, Vec<Error>)> {
    let file = File::open(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    let mut graphs = Vec::new();
    let mut diagnostics = Vec::new();
    for item in Graph6Reader::new(BufReader::new(file)).on_error(on_error) {
        match item {
            Ok(g) => graphs.push(g),
            Err(e) if on_error == OnError::Skip => diagnostics.push(e),
            Err(e) => return Err(e),
        }
    }
    Ok((graphs, diagnostics))
}
