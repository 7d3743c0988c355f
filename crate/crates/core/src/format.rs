//! Plain-text matrix and synthesis files.
//!
//! Matrix: first line `n`, then `n` lines of `n` characters from `{0,1}`.
//! Synthesis: first line `n`, then one `control target` pair per line,
//! 1-indexed. In both, lines starting with `#` and blank lines are skipped.

use crate::error::{Error, Result};
use crate::gf2::{BinMatrix, CnotGate, Synthesis, MAX_QUBITS};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty())
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<usize> {
    let (line, text) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let n: usize = text
        .trim()
        .parse()
        .map_err(|_| parse_err(line, format!("expected dimension, found {text:?}")))?;
    if n == 0 || n > MAX_QUBITS {
        return Err(parse_err(
            line,
            format!("dimension {n} out of range 1..={MAX_QUBITS}"),
        ));
    }
    Ok(n)
}

/// Parses a matrix file. Singular matrices are accepted; callers that need
/// invertibility check it themselves.
pub fn parse_matrix(text: &str) -> Result<BinMatrix> {
    let mut lines = content_lines(text);
    let n = parse_header(&mut lines)?;
    let mut rows = Vec::with_capacity(n);
    let mut last_line = 1;
    for (line, row) in lines {
        last_line = line;
        if rows.len() == n {
            return Err(parse_err(line, "more rows than the declared dimension"));
        }
        let row = row.trim_end();
        if row.len() != n {
            return Err(parse_err(
                line,
                format!("expected {n} columns, found {}", row.len()),
            ));
        }
        let mut bits = 0u32;
        for (j, ch) in row.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << j,
                other => return Err(parse_err(line, format!("invalid character {other:?}"))),
            }
        }
        rows.push(bits);
    }
    if rows.len() != n {
        return Err(parse_err(
            last_line,
            format!("expected {n} rows, found {}", rows.len()),
        ));
    }
    BinMatrix::from_raw_rows(n, &rows)
}

pub fn write_matrix(m: &BinMatrix) -> String {
    format!("{}\n{}", m.n(), m)
}

pub fn parse_synthesis(text: &str) -> Result<Synthesis> {
    let mut lines = content_lines(text);
    let n = parse_header(&mut lines)?;
    let mut gates = Vec::new();
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(
                line,
                format!("expected \"control target\", found {text:?}"),
            ));
        }
        let mut labels = [0usize; 2];
        for (slot, field) in labels.iter_mut().zip(&fields) {
            *slot = field
                .parse()
                .map_err(|_| parse_err(line, format!("invalid qubit label {field:?}")))?;
            if *slot == 0 || *slot > n {
                return Err(parse_err(
                    line,
                    format!("qubit label {slot} out of range 1..={n}"),
                ));
            }
        }
        if labels[0] == labels[1] {
            return Err(parse_err(
                line,
                format!("control equals target ({})", labels[0]),
            ));
        }
        gates
            .push(CnotGate::new(labels[0], labels[1]).map_err(|e| parse_err(line, e.to_string()))?);
    }
    Synthesis::new(n, gates)
}

pub fn write_synthesis(s: &Synthesis) -> String {
    let mut out = format!("{}\n", s.n());
    for g in s.gates() {
        out.push_str(&format!("{} {}\n", g.control(), g.target()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_with_comments() {
        let text = "# three-cycle\n3\n010\n# middle\n001\n100";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m, BinMatrix::from_strs(&["010", "001", "100"]).unwrap());
        assert_eq!(write_matrix(&m), "3\n010\n001\n100\n");
    }

    #[test]
    fn matrix_errors_carry_line_numbers() {
        assert!(matches!(
            parse_matrix(""),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_matrix("# only\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_matrix("2\n10\n0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_matrix("2\n10\n02\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(parse_matrix("2\n10\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_matrix("2\n10\n01\n11\n"),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(matches!(
            parse_matrix("x\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_matrix("40\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn synthesis_round_trip() {
        let s = Synthesis::from_pairs(3, &[(1, 2), (3, 1)]).unwrap();
        let text = write_synthesis(&s);
        assert_eq!(text, "3\n1 2\n3 1\n");
        assert_eq!(parse_synthesis(&text).unwrap(), s);
        assert_eq!(parse_synthesis("2\n").unwrap().len(), 0);
    }

    #[test]
    fn synthesis_errors() {
        assert!(matches!(
            parse_synthesis("3\n1 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_synthesis("3\n1 4\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_synthesis("3\n1 2\n0 2\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_synthesis("3\n1 2 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_synthesis(""), Err(Error::Parse { .. })));
    }
}
