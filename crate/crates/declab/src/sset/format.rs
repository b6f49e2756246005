//! Text file format for cell presentations (`SSET v1`).
//!
//! One record per nondegenerate cell:
//!
//! ```text
//! SSET v1
//! cell <id> dim <n>
//! face <i> = (<v0,v1,...>) <target-id>
//! ```
//!
//! The degeneracy values are the value list of the face's surjection. The
//! printer emits cells in presentation order, so `parse(print(x))` is
//! structurally equal to `x`.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::ordinal::{Ordinal, OrdinalMap};
use crate::sset::{CellId, SSet, Simplex};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    At { line: usize, msg: String },
    #[error("invalid simplicial set: {0}")]
    Invalid(#[from] crate::sset::SSetError),
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::At { line, msg: msg.into() })
}

/// Prints a cell presentation in the `SSET v1` format.
pub fn print_sset(x: &SSet) -> String {
    let mut out = String::from("SSET v1\n");
    for (dim, names) in x.names().iter().enumerate() {
        for (idx, name) in names.iter().enumerate() {
            writeln!(out, "cell {name} dim {dim}").unwrap();
            if dim >= 1 {
                for (i, f) in x.face_table()[dim][idx].iter().enumerate() {
                    let vals = f
                        .deg
                        .values()
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(",");
                    writeln!(out, "face {i} = ({vals}) {}", x.cell_name(f.cell)).unwrap();
                }
            }
        }
    }
    out
}

/// Parses the `SSET v1` format and validates the result.
pub fn parse_sset(text: &str) -> Result<SSet, ParseError> {
    struct PendingCell {
        name: String,
        dim: usize,
        faces: Vec<Option<(Vec<i32>, String)>>,
        line: usize,
    }
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, l)) if l.trim() == "SSET v1" => {}
        Some((i, l)) => return err(i + 1, format!("expected header 'SSET v1', found {l:?}")),
        None => return err(1, "empty input"),
    }
    let mut cells: Vec<PendingCell> = Vec::new();
    for (i, raw) in lines {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "cell" => {
                if tokens.len() != 4 || tokens[2] != "dim" {
                    return err(line_no, "expected 'cell <id> dim <n>'");
                }
                let dim: usize = tokens[3]
                    .parse()
                    .map_err(|_| ParseError::At { line: line_no, msg: "bad dimension".into() })?;
                cells.push(PendingCell {
                    name: tokens[1].to_string(),
                    dim,
                    faces: vec![None; if dim == 0 { 0 } else { dim + 1 }],
                    line: line_no,
                });
            }
            "face" => {
                let cell = match cells.last_mut() {
                    Some(c) => c,
                    None => return err(line_no, "face line before any cell"),
                };
                if tokens.len() != 5 || tokens[2] != "=" {
                    return err(line_no, "expected 'face <i> = (<values>) <target-id>'");
                }
                let i: usize = tokens[1]
                    .parse()
                    .map_err(|_| ParseError::At { line: line_no, msg: "bad face index".into() })?;
                if cell.dim == 0 || i > cell.dim {
                    return err(line_no, format!("face index {i} out of range for dim {}", cell.dim));
                }
                let inner = tokens[3]
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or(ParseError::At {
                        line: line_no,
                        msg: "degeneracy values must be parenthesized".into(),
                    })?;
                let mut values = Vec::new();
                if !inner.is_empty() {
                    for piece in inner.split(',') {
                        let v: i32 = piece.trim().parse().map_err(|_| ParseError::At {
                            line: line_no,
                            msg: format!("bad degeneracy value {piece:?}"),
                        })?;
                        values.push(v);
                    }
                }
                if values.len() != cell.dim {
                    return err(
                        line_no,
                        format!("expected {} degeneracy values, found {}", cell.dim, values.len()),
                    );
                }
                if cell.faces[i].is_some() {
                    return err(line_no, format!("duplicate face {i}"));
                }
                cell.faces[i] = Some((values, tokens[4].to_string()));
            }
            other => return err(line_no, format!("unexpected token {other:?}")),
        }
    }
    let top = cells.iter().map(|c| c.dim).max().map_or(0, |d| d + 1);
    let mut names: Vec<Vec<String>> = vec![Vec::new(); top];
    let mut by_name: HashMap<String, CellId> = HashMap::new();
    for c in &cells {
        let id = CellId { dim: c.dim, idx: names[c.dim].len() };
        if by_name.insert(c.name.clone(), id).is_some() {
            return err(c.line, format!("duplicate cell name {}", c.name));
        }
        names[c.dim].push(c.name.clone());
    }
    let mut faces: Vec<Vec<Vec<Simplex>>> = vec![Vec::new(); top];
    let mut counters = vec![0usize; top];
    for c in &cells {
        counters[c.dim] += 1;
        if c.dim == 0 {
            continue;
        }
        let mut cell_faces = Vec::with_capacity(c.dim + 1);
        for (i, slot) in c.faces.iter().enumerate() {
            let (values, target) = match slot {
                Some(p) => p,
                None => return err(c.line, format!("cell {} is missing face {i}", c.name)),
            };
            let target_id = match by_name.get(target) {
                Some(&t) => t,
                None => return err(c.line, format!("face target {target:?} not declared")),
            };
            let deg = OrdinalMap::new(
                Ordinal(c.dim as i32 - 1),
                Ordinal(target_id.dim as i32),
                values.clone(),
            )
            .map_err(|e| ParseError::At { line: c.line, msg: e.to_string() })?;
            cell_faces.push(Simplex { deg, cell: target_id });
        }
        faces[c.dim].push(cell_faces);
    }
    Ok(SSet::new(names, faces)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::build::{boundary, horn, product, quotient, simplex};

    #[test]
    fn round_trip_corpus() {
        let spaces = vec![
            simplex(0),
            simplex(2),
            boundary(3),
            horn(2, 1),
            quotient(&simplex(1), &boundary(1)).unwrap(),
            product(&simplex(1), &simplex(1)),
        ];
        for x in &spaces {
            let text = print_sset(x);
            let back = parse_sset(&text).unwrap();
            assert_eq!(&back, x);
            // printing is deterministic
            assert_eq!(print_sset(&back), text);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_sset("").is_err());
        assert!(parse_sset("SSET v2\n").is_err());
        assert!(parse_sset("SSET v1\nface 0 = (0) v\n").is_err());
        assert!(parse_sset("SSET v1\ncell e dim 1\nface 0 = (0) missing\nface 1 = (0) missing\n")
            .is_err());
        // missing face
        assert!(parse_sset("SSET v1\ncell v dim 0\ncell e dim 1\nface 0 = (0) v\n").is_err());
    }

    #[test]
    fn parse_detects_identity_violation() {
        // a 2-cell whose faces do not satisfy d_0 d_1 = d_0 d_0
        let text = "SSET v1\n\
                    cell a dim 0\n\
                    cell b dim 0\n\
                    cell e dim 1\nface 0 = (0) a\nface 1 = (0) b\n\
                    cell f dim 1\nface 0 = (0) b\nface 1 = (0) a\n\
                    cell t dim 2\nface 0 = (0,1) e\nface 1 = (0,1) f\nface 2 = (0,1) e\n";
        assert!(parse_sset(text).is_err());
    }
}
