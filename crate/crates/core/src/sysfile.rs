//! Text formats for systems and telescoper/certificate pairs.
//!
//! A file is a list of `key: value` sections. Lines starting with
//! whitespace continue the previous section, `#` starts a comment. Matrix
//! rows are separated by `;` and entries by `,`.
//!
//! ```text
//! field: k
//! algebra: x: derivation, y: forward_difference
//! n: 2
//! u: x^2
//! U: 0, x^2; y^2 - x^2, -x
//! v: x^2*(y+2)^k ...
//! ```

use std::fmt::Write as _;

use crate::arith::{FieldSpec, Poly, RatFunc};
use crate::expr::{format_operator, format_ratfunc, parse_operator, parse_poly, parse_ratfunc};
use crate::ore::{Action, OreKind, OreOperator, OreSpec, VarAlgebra};
use crate::system::{DFiniteSystem, SystemError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FileError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error(transparent)]
    System(#[from] SystemError),
}

/// A section value with the source position of each of its characters.
#[derive(Debug, Clone)]
struct Section {
    key: String,
    key_pos: (usize, usize),
    text: String,
    pos: Vec<(usize, usize)>,
}

impl Section {
    fn pos_at(&self, offset: usize) -> (usize, usize) {
        self.pos
            .get(offset)
            .or(self.pos.last())
            .copied()
            .unwrap_or((self.key_pos.0, self.key_pos.1 + self.key.len() + 1))
    }

    fn err(&self, offset: usize, msg: impl Into<String>) -> FileError {
        let (line, col) = self.pos_at(offset);
        FileError::Syntax { line, col, msg: msg.into() }
    }

    /// Splits on `sep`, returning trimmed pieces with their start offsets.
    fn split(&self, range: (usize, usize), sep: char) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut start = range.0;
        for (i, ch) in self.text[range.0..range.1].char_indices() {
            if ch == sep {
                out.push(self.trim((start, range.0 + i)));
                start = range.0 + i + ch.len_utf8();
            }
        }
        out.push(self.trim((start, range.1)));
        out
    }

    fn trim(&self, (a, b): (usize, usize)) -> (usize, usize) {
        let s = &self.text[a..b];
        let lead = s.len() - s.trim_start().len();
        let trail = s.len() - s.trim_end().len();
        (a + lead, (b - trail).max(a + lead))
    }

    fn slice(&self, r: (usize, usize)) -> &str {
        &self.text[r.0..r.1]
    }

    fn full(&self) -> (usize, usize) {
        self.trim((0, self.text.len()))
    }
}

fn sections(src: &str) -> Result<Vec<Section>, FileError> {
    let mut out: Vec<Section> = Vec::new();
    for (ln, raw) in src.lines().enumerate() {
        let line = ln + 1;
        let body = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        if body.trim().is_empty() {
            continue;
        }
        if body.starts_with(char::is_whitespace) {
            let Some(sec) = out.last_mut() else {
                return Err(FileError::Syntax { line, col: 1, msg: "continuation line before any section".into() });
            };
            sec.text.push(' ');
            sec.pos.push((line, 1));
            for (i, ch) in body.char_indices() {
                sec.text.push(ch);
                for _ in 0..ch.len_utf8() {
                    sec.pos.push((line, i + 1));
                }
            }
            continue;
        }
        let Some(colon) = body.find(':') else {
            return Err(FileError::Syntax { line, col: 1, msg: "expected `key: value`".into() });
        };
        let key = body[..colon].trim().to_string();
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(FileError::Syntax { line, col: 1, msg: format!("invalid section name `{key}`") });
        }
        if out.iter().any(|s| s.key == key) {
            return Err(FileError::Syntax { line, col: 1, msg: format!("duplicate section `{key}`") });
        }
        let mut sec = Section { key, key_pos: (line, 1), text: String::new(), pos: Vec::new() };
        for (i, ch) in body[colon + 1..].char_indices() {
            sec.text.push(ch);
            for _ in 0..ch.len_utf8() {
                sec.pos.push((line, colon + 2 + i));
            }
        }
        out.push(sec);
    }
    Ok(out)
}

fn take<'a>(secs: &'a [Section], key: &str, src_lines: usize) -> Result<&'a Section, FileError> {
    secs.iter().find(|s| s.key == key).ok_or_else(|| FileError::Syntax {
        line: src_lines.max(1),
        col: 1,
        msg: format!("missing section `{key}`"),
    })
}

fn check_known(secs: &[Section], known: &[&str]) -> Result<(), FileError> {
    for s in secs {
        if !known.contains(&s.key.as_str()) {
            return Err(FileError::Syntax {
                line: s.key_pos.0,
                col: 1,
                msg: format!("unknown section `{}`", s.key),
            });
        }
    }
    Ok(())
}

fn parse_field(sec: Option<&Section>) -> Result<FieldSpec, FileError> {
    let Some(sec) = sec else {
        return Ok(FieldSpec::rational());
    };
    let full = sec.full();
    if full.0 == full.1 {
        return Ok(FieldSpec::rational());
    }
    let names: Vec<String> = sec.split(full, ',').iter().map(|r| sec.slice(*r).to_string()).collect();
    FieldSpec::new(names).map_err(|e| sec.err(full.0, e.to_string()))
}

fn parse_algebra(sec: &Section, field: &FieldSpec) -> Result<OreSpec, FileError> {
    let mut x = None;
    let mut y = None;
    for r in sec.split(sec.full(), ',') {
        let item = sec.slice(r);
        let Some(colon) = item.find(':') else {
            return Err(sec.err(r.0, "expected `x: kind` or `y: kind`"));
        };
        let var = item[..colon].trim();
        let rhs = item[colon + 1..].trim();
        let (kind_s, action_s) = match rhs.split_once('@') {
            Some((k, a)) => (k.trim(), Some(a.trim())),
            None => (rhs, None),
        };
        let kind = OreKind::parse(kind_s).ok_or_else(|| sec.err(r.0, format!("unknown Ore kind `{kind_s}`")))?;
        let action = match action_s {
            None => kind.default_action(),
            Some("sigma") => Action::Sigma,
            Some("delta") => Action::Delta,
            Some(a) => return Err(sec.err(r.0, format!("unknown action `{a}`"))),
        };
        let alg = VarAlgebra { kind, action };
        match var {
            "x" if x.is_none() => x = Some(alg),
            "y" if y.is_none() => y = Some(alg),
            _ => return Err(sec.err(r.0, format!("unexpected algebra entry `{var}`"))),
        }
    }
    let (Some(x), Some(y)) = (x, y) else {
        return Err(sec.err(0, "algebra must name both x and y"));
    };
    OreSpec::new(x, y, field.lookup("q")).map_err(|e| sec.err(0, e.to_string()))
}

fn parse_poly_at(sec: &Section, r: (usize, usize), field: &FieldSpec) -> Result<Poly, FileError> {
    if r.0 == r.1 {
        return Err(sec.err(r.0, "empty expression"));
    }
    parse_poly(sec.slice(r), field).map_err(|e| sec.err(r.0 + e.offset, e.msg))
}

fn parse_rat_at(sec: &Section, r: (usize, usize), field: &FieldSpec) -> Result<RatFunc, FileError> {
    if r.0 == r.1 {
        return Err(sec.err(r.0, "empty expression"));
    }
    parse_ratfunc(sec.slice(r), field).map_err(|e| sec.err(r.0 + e.offset, e.msg))
}

fn parse_op_at(
    sec: &Section,
    r: (usize, usize),
    field: &FieldSpec,
    spec: &OreSpec,
) -> Result<OreOperator, FileError> {
    if r.0 == r.1 {
        return Err(sec.err(r.0, "empty expression"));
    }
    parse_operator(sec.slice(r), field, spec).map_err(|e| sec.err(r.0 + e.offset, e.msg))
}

fn parse_matrix(sec: &Section, n: usize, field: &FieldSpec) -> Result<Vec<Vec<Poly>>, FileError> {
    let rows = sec.split(sec.full(), ';');
    if rows.len() != n {
        return Err(sec.err(0, format!("expected {n} rows, found {}", rows.len())));
    }
    rows.into_iter()
        .map(|row| {
            let cells = sec.split(row, ',');
            if cells.len() != n {
                return Err(sec.err(row.0, format!("expected {n} entries, found {}", cells.len())));
            }
            cells.into_iter().map(|c| parse_poly_at(sec, c, field)).collect()
        })
        .collect()
}

/// Parses and validates a system description.
pub fn parse_system(src: &str) -> Result<DFiniteSystem, FileError> {
    let secs = sections(src)?;
    let last = src.lines().count();
    check_known(&secs, &["field", "algebra", "n", "u", "U", "v", "V", "e", "lifts"])?;
    let field = parse_field(secs.iter().find(|s| s.key == "field"))?;
    let spec = parse_algebra(take(&secs, "algebra", last)?, &field)?;
    let nsec = take(&secs, "n", last)?;
    let n: usize = nsec
        .slice(nsec.full())
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| nsec.err(nsec.full().0, "n must be a positive integer"))?;
    let usec = take(&secs, "u", last)?;
    let u = parse_poly_at(usec, usec.full(), &field)?;
    let big_u = parse_matrix(take(&secs, "U", last)?, n, &field)?;
    let vsec = take(&secs, "v", last)?;
    let v = parse_poly_at(vsec, vsec.full(), &field)?;
    let big_v = parse_matrix(take(&secs, "V", last)?, n, &field)?;
    let esec = take(&secs, "e", last)?;
    let cells = esec.split(esec.full(), ',');
    if cells.len() != n {
        return Err(esec.err(0, format!("expected {n} entries, found {}", cells.len())));
    }
    let e = cells.into_iter().map(|c| parse_rat_at(esec, c, &field)).collect::<Result<Vec<_>, _>>()?;
    let lifts = match secs.iter().find(|s| s.key == "lifts") {
        None => None,
        Some(ls) => {
            let cells = ls.split(ls.full(), ',');
            if cells.len() != n {
                return Err(ls.err(0, format!("expected {n} lifts, found {}", cells.len())));
            }
            Some(cells.into_iter().map(|c| parse_op_at(ls, c, &field, &spec)).collect::<Result<Vec<_>, _>>()?)
        }
    };
    Ok(DFiniteSystem::new(field, spec, u, big_u, v, big_v, e, lifts)?)
}

pub fn read_system(path: &std::path::Path) -> Result<DFiniteSystem, ReadError> {
    let src = std::fs::read_to_string(path).map_err(|e| ReadError::Io(path.display().to_string(), e.to_string()))?;
    parse_system(&src).map_err(ReadError::File)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReadError {
    #[error("cannot read {0}: {1}")]
    Io(String, String),
    #[error(transparent)]
    File(FileError),
}

/// Telescoper and certificate as stored on disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairFile {
    pub telescoper: OreOperator,
    pub certificate: Vec<RatFunc>,
    pub certificate_operator: Option<OreOperator>,
}

pub fn parse_pair(src: &str, sys: &DFiniteSystem) -> Result<PairFile, FileError> {
    let secs = sections(src)?;
    let last = src.lines().count();
    check_known(&secs, &["telescoper", "certificate", "certificate_operator"])?;
    let ts = take(&secs, "telescoper", last)?;
    let telescoper = parse_op_at(ts, ts.full(), &sys.field, &sys.spec)?;
    if !telescoper.is_x_only() {
        return Err(ts.err(0, "telescoper must not involve Dy"));
    }
    let cs = take(&secs, "certificate", last)?;
    let certificate = cs
        .split(cs.full(), ',')
        .into_iter()
        .map(|r| parse_rat_at(cs, r, &sys.field))
        .collect::<Result<Vec<_>, _>>()?;
    if certificate.len() != sys.n {
        return Err(cs.err(0, format!("expected {} certificate entries, found {}", sys.n, certificate.len())));
    }
    let certificate_operator = match secs.iter().find(|s| s.key == "certificate_operator") {
        Some(s) => Some(parse_op_at(s, s.full(), &sys.field, &sys.spec)?),
        None => None,
    };
    Ok(PairFile { telescoper, certificate, certificate_operator })
}

pub fn format_pair(pair: &PairFile, field: &FieldSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "telescoper: {}", format_operator(&pair.telescoper, field));
    let cert: Vec<String> = pair.certificate.iter().map(|c| format_ratfunc(c, field)).collect();
    let _ = writeln!(out, "certificate: {}", cert.join(", "));
    if let Some(op) = &pair.certificate_operator {
        let _ = writeln!(out, "certificate_operator: {}", format_operator(op, field));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::X;

    const GAMMA: &str = "\
# 1/Gamma(x+y)
algebra: x: shift, y: forward_difference
n: 1
u: x + y
U: 1
v: x + y
V: 1 - x
   - y
e: 1
";

    #[test]
    fn parses_with_continuation_and_comments() {
        let sys = parse_system(GAMMA).unwrap();
        assert_eq!(sys.n, 1);
        assert_eq!(sys.big_v[0][0], &(&Poly::one() - &Poly::var(X)) - &Poly::var(crate::arith::Y));
        assert_eq!(sys.spec.x.action, Action::Sigma);
    }

    #[test]
    fn reports_positions() {
        let bad = GAMMA.replace("u: x + y", "u: x + * y");
        match parse_system(&bad) {
            Err(FileError::Syntax { line, col, .. }) => assert_eq!((line, col), (4, 8)),
            other => panic!("unexpected {other:?}"),
        }
        let truncated: String = GAMMA.lines().take(4).collect::<Vec<_>>().join("\n");
        assert!(matches!(parse_system(&truncated), Err(FileError::Syntax { .. })));
        let nonpoly = GAMMA.replace("e: 1", "e: 1/x");
        assert!(matches!(
            parse_system(&nonpoly),
            Err(FileError::System(SystemError::Validation { check: "admissibility", .. }))
        ));
    }

    #[test]
    fn pair_roundtrip() {
        let sys = parse_system(GAMMA).unwrap();
        let pair = parse_pair("telescoper: Dx - 1\ncertificate: 1\n", &sys).unwrap();
        let text = format_pair(&pair, &sys.field);
        assert_eq!(text, "telescoper: Dx - 1\ncertificate: 1\n");
        assert_eq!(parse_pair(&text, &sys).unwrap(), pair);
        assert!(parse_pair("telescoper: Dy\ncertificate: 1\n", &sys).is_err());
    }
}
