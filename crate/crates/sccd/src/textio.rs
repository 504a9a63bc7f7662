//! The plain-text design file format.
//!
//! ```text
//! sccd <linear|circular> v=<int> k=<int> b=<int>
//! # optional comment lines
//! <k space-separated labels>   (exactly b such lines)
//! ```
//!
//! One line per block, in sequence order; element order within a line is
//! preserved verbatim (design tables are column-ordered, and round-tripping
//! must not disturb them). Serialization uses single spaces, no comments,
//! and a trailing newline, so `parse(serialize(d)) == d` and serialization
//! of a parsed file is canonical.

use thiserror::Error;

use crate::design::{Design, DesignError, Kind, Label};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {detail}")]
    Invariant { line: usize, detail: String },
}

pub fn parse(text: &str) -> Result<Design, ParseError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(ParseError::Syntax {
        line: 1,
        msg: "empty input, expected header".into(),
    })?;
    let (kind, v, k, b) = parse_header(header)?;

    let mut blocks: Vec<Vec<Label>> = Vec::with_capacity(b);
    let mut block_lines: Vec<usize> = Vec::with_capacity(b);
    let mut last_line = 1;
    for (idx, line) in lines {
        let lineno = idx + 1;
        last_line = lineno;
        let trimmed = line.trim();
        if trimmed.starts_with('#') || trimmed.is_empty() {
            continue;
        }
        if blocks.len() == b {
            return Err(ParseError::Syntax {
                line: lineno,
                msg: format!("more than the b={b} block lines announced in the header"),
            });
        }
        let mut block = Vec::with_capacity(k);
        for tok in trimmed.split_whitespace() {
            let label: Label = tok.parse().map_err(|_| ParseError::Syntax {
                line: lineno,
                msg: format!("expected a non-negative integer label, got {tok:?}"),
            })?;
            block.push(label);
        }
        if block.len() != k {
            return Err(ParseError::Invariant {
                line: lineno,
                detail: format!("block {} has {} labels, expected k={k}", blocks.len() + 1, block.len()),
            });
        }
        blocks.push(block);
        block_lines.push(lineno);
    }
    if blocks.len() != b {
        return Err(ParseError::Syntax {
            line: last_line,
            msg: format!("header announced b={b} blocks but found {}", blocks.len()),
        });
    }

    let design = Design::new(kind, blocks).map_err(|e| design_error_to_parse(e, &block_lines))?;
    if design.v() != v {
        return Err(ParseError::Invariant {
            line: 1,
            detail: format!("header says v={v} but the blocks use {} distinct labels", design.v()),
        });
    }
    Ok(design)
}

fn parse_header(header: &str) -> Result<(Kind, usize, usize, usize), ParseError> {
    let syntax = |msg: String| ParseError::Syntax { line: 1, msg };
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 5 || toks[0] != "sccd" {
        return Err(syntax(format!(
            "expected header `sccd <kind> v=<int> k=<int> b=<int>`, got {header:?}"
        )));
    }
    let kind = match toks[1] {
        "linear" => Kind::Linear,
        "circular" => Kind::Circular,
        other => return Err(syntax(format!("unknown kind {other:?}"))),
    };
    let mut nums = [0usize; 3];
    for (slot, (tok, key)) in toks[2..].iter().zip(["v", "k", "b"]).enumerate() {
        let value = tok
            .strip_prefix(key)
            .and_then(|rest| rest.strip_prefix('='))
            .and_then(|val| val.parse().ok())
            .ok_or_else(|| syntax(format!("expected {key}=<int>, got {tok:?}")))?;
        nums[slot] = value;
    }
    Ok((kind, nums[0], nums[1], nums[2]))
}

fn design_error_to_parse(e: DesignError, block_lines: &[usize]) -> ParseError {
    let line_of = |block_1based: usize| block_lines.get(block_1based - 1).copied().unwrap_or(1);
    match e {
        DesignError::SingleChange { left, right, got, want } => ParseError::Invariant {
            line: line_of(right.max(left)),
            detail: format!("blocks {left} and {right} share {got} elements, expected {want}"),
        },
        DesignError::DuplicateLabel { index, label } => ParseError::Invariant {
            line: line_of(index),
            detail: format!("block {index} repeats label {label}"),
        },
        DesignError::WrongBlockSize { index, got, k } => ParseError::Invariant {
            line: line_of(index),
            detail: format!("block {index} has {got} labels, expected k={k}"),
        },
        other => ParseError::Invariant {
            line: 1,
            detail: other.to_string(),
        },
    }
}

pub fn serialize(d: &Design) -> String {
    let mut out = format!(
        "sccd {} v={} k={} b={}\n",
        d.kind(),
        d.v(),
        d.k(),
        d.b()
    );
    for block in d.blocks() {
        let line: Vec<String> = block.iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
