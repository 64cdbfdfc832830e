// SPDX-License-Identifier: Apache-2.0

//! Text formats for networks and reference trajectories.
//!
//! Network file:
//!
//! ```text
//! # comment
//! N 6
//! M 2
//! P 2
//! L: 2 2 4 5 5 5 4 3 1 2 6 5
//! H: 1 1 2 1 2 1
//! ```
//!
//! `L:` lists the N·M 1-based column indices of L (blocks L_1 … L_M
//! concatenated) and `H:` the N column indices of H. Values may continue on
//! following lines that contain only integers.
//!
//! Trajectory file:
//!
//! ```text
//! periodic
//! T 3
//! y: 1 1 2
//! ```
//!
//! The `periodic` line is optional.

use std::fmt::Write as _;

use thiserror::Error;

use crate::model::Bcn;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// Whitespace-separated tokens of one line with their 1-based columns, with
/// any `#` comment stripped.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in content.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &content[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &content[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (content[..byte].chars().count() + 1, tok))
        .collect()
}

fn parse_int(line: usize, (column, tok): (usize, &str), field: &str) -> Result<usize, ParseError> {
    tok.parse::<usize>().map_err(|_| {
        ParseError::new(
            line,
            column,
            format!("field {field}: expected a non-negative integer, found `{tok}`"),
        )
    })
}

struct Field {
    line: usize,
    column: usize,
    values: Vec<usize>,
    positions: Vec<(usize, usize)>,
}

/// Scalar `KEY <int>` and list `KEY: <ints…>` fields of a document.
struct Fields {
    scalars: Vec<(String, Field)>,
    lists: Vec<(String, Field)>,
    flags: Vec<(String, usize)>,
}

impl Fields {
    fn parse(src: &str, scalar_keys: &[&str], list_keys: &[&str], flag_keys: &[&str]) -> Result<Self, ParseError> {
        let mut fields = Fields {
            scalars: Vec::new(),
            lists: Vec::new(),
            flags: Vec::new(),
        };
        let mut open_list: Option<usize> = None;
        for (idx, raw) in src.lines().enumerate() {
            let line = idx + 1;
            let toks = tokens(raw);
            let Some(&(column, head)) = toks.first() else {
                continue;
            };
            if let Some(key) = head.strip_suffix(':') {
                if !list_keys.contains(&key) {
                    return Err(ParseError::new(line, column, format!("unknown field `{key}:`")));
                }
                if fields.lists.iter().any(|(k, _)| k == key) {
                    return Err(ParseError::new(line, column, format!("field {key} given twice")));
                }
                let values = toks[1..]
                    .iter()
                    .map(|&t| parse_int(line, t, key))
                    .collect::<Result<Vec<_>, _>>()?;
                let positions = toks[1..].iter().map(|&(c, _)| (line, c)).collect();
                fields.lists.push((
                    key.to_string(),
                    Field {
                        line,
                        column,
                        values,
                        positions,
                    },
                ));
                open_list = Some(fields.lists.len() - 1);
            } else if scalar_keys.contains(&head) {
                if toks.len() != 2 {
                    return Err(ParseError::new(
                        line,
                        column,
                        format!("field {head}: expected exactly one integer"),
                    ));
                }
                if fields.scalars.iter().any(|(k, _)| k == head) {
                    return Err(ParseError::new(line, column, format!("field {head} given twice")));
                }
                let v = parse_int(line, toks[1], head)?;
                let positions = vec![(line, toks[1].0)];
                fields.scalars.push((
                    head.to_string(),
                    Field {
                        line,
                        column,
                        values: vec![v],
                        positions,
                    },
                ));
                open_list = None;
            } else if flag_keys.contains(&head) {
                if toks.len() != 1 {
                    return Err(ParseError::new(
                        line,
                        toks[1].0,
                        format!("unexpected token after `{head}`"),
                    ));
                }
                fields.flags.push((head.to_string(), line));
                open_list = None;
            } else if let (Some(open), true) = (open_list, head.bytes().all(|b| b.is_ascii_digit())) {
                let key = fields.lists[open].0.clone();
                let more = toks
                    .iter()
                    .map(|&t| parse_int(line, t, &key))
                    .collect::<Result<Vec<_>, _>>()?;
                fields.lists[open].1.values.extend(more);
                fields.lists[open]
                    .1
                    .positions
                    .extend(toks.iter().map(|&(c, _)| (line, c)));
            } else {
                return Err(ParseError::new(line, column, format!("unexpected token `{head}`")));
            }
        }
        Ok(fields)
    }

    fn scalar(&self, key: &str) -> Option<&Field> {
        self.scalars.iter().find(|(k, _)| k == key).map(|(_, f)| f)
    }

    fn list(&self, key: &str) -> Option<&Field> {
        self.lists.iter().find(|(k, _)| k == key).map(|(_, f)| f)
    }

    fn has_flag(&self, key: &str) -> bool {
        self.flags.iter().any(|(k, _)| k == key)
    }
}

fn required<'a>(field: Option<&'a Field>, key: &str, last_line: usize) -> Result<&'a Field, ParseError> {
    field.ok_or_else(|| ParseError::new(last_line, 1, format!("missing field {key}")))
}

fn positive(f: &Field, key: &str) -> Result<usize, ParseError> {
    match f.values[0] {
        0 => Err(ParseError::new(
            f.line,
            f.column,
            format!("field {key} must be positive"),
        )),
        v => Ok(v),
    }
}

fn check_list(f: &Field, key: &str, expected: usize, bound: usize) -> Result<(), ParseError> {
    if f.values.len() != expected {
        return Err(ParseError::new(
            f.line,
            f.column,
            format!("field {key}: expected {expected} entries, found {}", f.values.len()),
        ));
    }
    if let Some((pos, v)) = f.values.iter().enumerate().find(|(_, &v)| v == 0 || v > bound) {
        let (line, column) = f.positions[pos];
        return Err(ParseError::new(
            line,
            column,
            format!("field {key}: entry {} is {v}, outside [1, {bound}]", pos + 1),
        ));
    }
    Ok(())
}

pub fn parse_network(src: &str) -> Result<Bcn, ParseError> {
    let fields = Fields::parse(src, &["N", "M", "P"], &["L", "H"], &[])?;
    let last = src.lines().count().max(1);
    let n = positive(required(fields.scalar("N"), "N", last)?, "N")?;
    let m = positive(required(fields.scalar("M"), "M", last)?, "M")?;
    let p = positive(required(fields.scalar("P"), "P", last)?, "P")?;
    let l = required(fields.list("L"), "L", last)?;
    let h = required(fields.list("H"), "H", last)?;
    check_list(l, "L", n * m, n)?;
    check_list(h, "H", n, p)?;
    let bcn = Bcn::from_indices(n, m, p, l.values.clone(), h.values.clone())
        .map_err(|e| ParseError::new(l.line, l.column, e.to_string()))?;
    for w in dimension_warnings(&bcn) {
        log::warn!("{w}");
    }
    Ok(bcn)
}

/// Notes on dimensions that are not powers of two (a network of n Boolean
/// variables always has 2^n states).
pub fn dimension_warnings(bcn: &Bcn) -> Vec<String> {
    [("N", bcn.n_states()), ("M", bcn.n_inputs()), ("P", bcn.n_outputs())]
        .into_iter()
        .filter(|(_, v)| !v.is_power_of_two())
        .map(|(k, v)| format!("{k} = {v} is not a power of two"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryFile {
    pub periodic: bool,
    pub outputs: Vec<usize>,
}

pub fn parse_trajectory(src: &str) -> Result<TrajectoryFile, ParseError> {
    let fields = Fields::parse(src, &["T"], &["y"], &["periodic"])?;
    let last = src.lines().count().max(1);
    let t_field = required(fields.scalar("T"), "T", last)?;
    let t = t_field.values[0];
    if t == 0 {
        return Err(ParseError::new(
            t_field.line,
            t_field.column,
            "field T must be at least 1",
        ));
    }
    let y = required(fields.list("y"), "y", last)?;
    check_list(y, "y", t, usize::MAX)?;
    Ok(TrajectoryFile {
        periodic: fields.has_flag("periodic"),
        outputs: y.values.clone(),
    })
}

fn join(values: &[usize]) -> String {
    values.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

pub fn format_network(bcn: &Bcn) -> String {
    let mut s = String::new();
    writeln!(s, "N {}", bcn.n_states()).unwrap();
    writeln!(s, "M {}", bcn.n_inputs()).unwrap();
    writeln!(s, "P {}", bcn.n_outputs()).unwrap();
    writeln!(s, "L: {}", join(bcn.l().col_index())).unwrap();
    writeln!(s, "H: {}", join(bcn.h().col_index())).unwrap();
    s
}

pub fn format_trajectory(traj: &TrajectoryFile) -> String {
    let mut s = String::new();
    if traj.periodic {
        s.push_str("periodic\n");
    }
    writeln!(s, "T {}", traj.outputs.len()).unwrap();
    writeln!(s, "y: {}", join(&traj.outputs)).unwrap();
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EXAMPLE: &str = "\
# six-state example
N 6
M 2
P 2
L: 2 2 4 5 5 5   # first block
   4 3 1 2 6 5
H: 1 1 2 1 2 1
";

    #[test]
    fn parses_example_network() {
        let bcn = parse_network(EXAMPLE).unwrap();
        assert_eq!(bcn, crate::model::tests::example());
        assert_eq!(
            dimension_warnings(&bcn),
            vec!["N = 6 is not a power of two".to_string()]
        );
    }

    #[test]
    fn wrong_l_count_names_the_field() {
        let src = "N 6\nM 2\nP 2\nL: 2 2 4 5 5 5 4 3 1 2 6\nH: 1 1 2 1 2 1\n";
        let err = parse_network(src).unwrap_err();
        assert_eq!(err.line, 4);
        assert_eq!(err.column, 1);
        assert!(err.message.contains("field L"), "{err}");
        assert!(err.message.contains("expected 12 entries, found 11"), "{err}");
    }

    #[test]
    fn reports_bad_tokens_with_position() {
        let err = parse_network("N 6\nM x\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        let err = parse_network("N 2\nM 1\nP 1\nL: 1 3\nH: 1 1\n").unwrap_err();
        assert!(err.message.contains("outside [1, 2]"), "{err}");
        let err = parse_network("N 2\nM 1\nP 1\nL: 1 2\n").unwrap_err();
        assert!(err.message.contains("missing field H"), "{err}");
        let err = parse_network("N 2\nN 2\n").unwrap_err();
        assert!(err.message.contains("given twice"), "{err}");
        let err = parse_network("Q 2\n").unwrap_err();
        assert!(err.message.contains("unexpected token"), "{err}");
        let err = parse_network("N 0\nM 1\nP 1\nL: 1\nH: 1\n").unwrap_err();
        assert!(err.message.contains("must be positive"), "{err}");
    }

    #[test]
    fn parses_trajectories() {
        let t = parse_trajectory("periodic\nT 3\ny: 1 1 2\n").unwrap();
        assert!(t.periodic);
        assert_eq!(t.outputs, vec![1, 1, 2]);
        let t = parse_trajectory("T 2\ny: 2 1\n").unwrap();
        assert!(!t.periodic);
        let err = parse_trajectory("T 0\ny:\n").unwrap_err();
        assert!(err.message.contains("at least 1"), "{err}");
        let err = parse_trajectory("T 3\ny: 1 2\n").unwrap_err();
        assert!(err.message.contains("field y"), "{err}");
    }

    #[test]
    fn column_counts_characters() {
        let toks = tokens("δδ 12 # x");
        assert_eq!(toks, vec![(1, "δδ"), (4, "12")]);
    }

    proptest! {
        #[test]
        fn network_text_round_trips(bcn in crate::model::tests::bcn_strategy(10, 3, 4)) {
            let text = format_network(&bcn);
            prop_assert_eq!(parse_network(&text).unwrap(), bcn);
        }

        #[test]
        fn trajectory_text_round_trips(periodic: bool, outputs in proptest::collection::vec(1usize..9, 1..8)) {
            let t = TrajectoryFile { periodic, outputs };
            prop_assert_eq!(parse_trajectory(&format_trajectory(&t)).unwrap(), t);
        }
    }
}
