//! The plain-text group file format.
//!
//! One group per file. Blank lines and everything after `#` are ignored.
//! The first meaningful line other than `name` selects one of three layouts:
//!
//! ```text
//! semidirect
//! abelian C8xC8            # the normal abelian factor A
//! complement C6            # one of C1..C6, V4, S3
//! matrix                   # one block per generator of the complement;
//! 0 7                      # row j is the image of the j-th generator of A
//! 1 7
//! end
//! ```
//!
//! ```text
//! perm 7
//! gen (1,2,3)
//! gen (1,2,3,4,5,6,7)
//! ```
//!
//! ```text
//! family B4_1(1,C2xC2)     # any builder expression
//! ```
//!
//! Each layout may carry a `name <text>` line anywhere. Complement generators are
//! listed under [`builtin_complement`]. Errors report the 1-based line and
//! column of the offending token.

use std::fmt::Write as _;

use crate::abelian::{AbHom, AbelianGroup};
use crate::constructions::{builtin_complement, GroupSpec, SemidirectForm};
use crate::error::{Error, Result};
use crate::group::{cycle_string, parse_cycles, FiniteGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupBody {
    Semidirect(SemidirectForm),
    /// Degree and 0-based generator images.
    Perm { degree: usize, gens: Vec<Vec<u8>> },
    Family(GroupSpec),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFile {
    pub name: Option<String>,
    pub body: GroupBody,
}

/// A meaningful line: number, indentation column and trimmed content.
struct Line<'a> {
    number: usize,
    column: usize,
    text: &'a str,
}

impl Line<'_> {
    fn err(&self, offset: usize, msg: impl Into<String>) -> Error {
        Error::parse(self.number, self.column + offset, msg)
    }

    /// Splits `keyword rest`, returning `rest` and its column offset.
    fn keyword(&self) -> (&str, &str, usize) {
        match self.text.find(char::is_whitespace) {
            Some(i) => {
                let rest = self.text[i..].trim_start();
                (&self.text[..i], rest, self.text.len() - rest.len())
            }
            None => (self.text, "", self.text.len()),
        }
    }
}

fn meaningful_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim();
            if trimmed.is_empty() {
                return None;
            }
            let column = content.len() - content.trim_start().len() + 1;
            Some(Line {
                number: i + 1,
                column,
                text: trimmed,
            })
        })
        .collect()
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<GroupFile> {
        let lines = meaningful_lines(text);
        let mut name = None;
        let mut rest: Vec<&Line> = Vec::new();
        for line in &lines {
            let (kw, arg, _) = line.keyword();
            if kw == "name" {
                name = Some(arg.to_string());
            } else {
                rest.push(line);
            }
        }
        if rest.is_empty() {
            return Err(Error::parse(1, 1, "empty group file"));
        }
        let first = rest.remove(0);
        let (kw, arg, off) = first.keyword();
        let body = match kw {
            "semidirect" => {
                if !arg.is_empty() {
                    return Err(first.err(off, "`semidirect` takes no argument"));
                }
                GroupBody::Semidirect(parse_semidirect(first, &rest)?)
            }
            "perm" => {
                let degree: usize = arg
                    .parse()
                    .ok()
                    .filter(|d| (1..=255).contains(d))
                    .ok_or_else(|| first.err(off, "expected a degree in 1..=255"))?;
                let mut gens = Vec::new();
                for line in rest {
                    let (kw, arg, off) = line.keyword();
                    if kw != "gen" {
                        return Err(line.err(0, format!("expected `gen`, found `{kw}`")));
                    }
                    let perm = parse_cycles(arg, degree).map_err(|e| line.err(off, e.to_string()))?;
                    gens.push(perm);
                }
                GroupBody::Perm { degree, gens }
            }
            "family" => {
                if let Some(line) = rest.first() {
                    return Err(line.err(0, "unexpected line after `family`"));
                }
                let spec = GroupSpec::parse(arg).map_err(|e| first.err(off, e.to_string()))?;
                GroupBody::Family(spec)
            }
            other => {
                return Err(first.err(
                    0,
                    format!("expected `semidirect`, `perm` or `family`, found `{other}`"),
                ))
            }
        };
        Ok(GroupFile { name, body })
    }

    /// The file form of a builder expression: `semidirect` or `perm` when the
    /// group has that shape, `family` otherwise.
    pub fn from_spec(spec: &GroupSpec) -> Result<GroupFile> {
        let body = if let Some(form) = spec.semidirect_form()? {
            GroupBody::Semidirect(form)
        } else if let Some((degree, gens)) = spec.permutation_form()? {
            GroupBody::Perm { degree, gens }
        } else {
            GroupBody::Family(spec.clone())
        };
        Ok(GroupFile {
            name: Some(spec.to_string()),
            body,
        })
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        let default = match &self.body {
            GroupBody::Semidirect(f) => format!("{} : {}", f.a, f.complement),
            GroupBody::Perm { degree, .. } => format!("perm{degree}"),
            GroupBody::Family(spec) => spec.to_string(),
        };
        let name = self.name.clone().unwrap_or(default);
        let mut g = match &self.body {
            GroupBody::Semidirect(form) => form.build(&name)?,
            GroupBody::Perm { degree, gens } => FiniteGroup::from_permutations(*degree, gens, &name)?,
            GroupBody::Family(spec) => spec.build()?,
        };
        g.set_name(name);
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.body {
            GroupBody::Semidirect(form) => {
                out.push_str("semidirect\n");
                if let Some(n) = &self.name {
                    let _ = writeln!(out, "name {n}");
                }
                let _ = writeln!(out, "abelian {}", form.a);
                let _ = writeln!(out, "complement {}", form.complement);
                for hom in &form.action {
                    out.push_str("matrix\n");
                    for image in hom.images() {
                        let row: Vec<String> = image.coords.iter().map(|c| c.to_string()).collect();
                        let _ = writeln!(out, "{}", row.join(" "));
                    }
                    out.push_str("end\n");
                }
            }
            GroupBody::Perm { degree, gens } => {
                let _ = writeln!(out, "perm {degree}");
                if let Some(n) = &self.name {
                    let _ = writeln!(out, "name {n}");
                }
                for g in gens {
                    let _ = writeln!(out, "gen {}", cycle_string(g));
                }
            }
            GroupBody::Family(spec) => {
                let _ = writeln!(out, "family {spec}");
                if let Some(n) = &self.name {
                    let _ = writeln!(out, "name {n}");
                }
            }
        }
        out
    }
}

fn parse_semidirect(header: &Line, lines: &[&Line]) -> Result<SemidirectForm> {
    let mut a: Option<AbelianGroup> = None;
    let mut complement: Option<(String, usize)> = None;
    let mut matrices: Vec<(usize, Vec<Vec<i64>>)> = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let line = lines[i];
        let (kw, arg, off) = line.keyword();
        match kw {
            "abelian" => {
                a = Some(AbelianGroup::parse(arg).map_err(|e| line.err(off, e.to_string()))?);
            }
            "complement" => {
                let h = builtin_complement(arg).map_err(|e| line.err(off, e.to_string()))?;
                complement = Some((arg.to_ascii_uppercase(), h.generators().len()));
            }
            "matrix" => {
                let Some(group) = &a else {
                    return Err(line.err(0, "`matrix` before `abelian`"));
                };
                let mut rows = Vec::new();
                i += 1;
                loop {
                    let Some(row_line) = lines.get(i) else {
                        return Err(line.err(0, "`matrix` block without `end`"));
                    };
                    if row_line.text == "end" {
                        break;
                    }
                    let mut row = Vec::new();
                    let mut col = 0;
                    for tok in row_line.text.split_whitespace() {
                        let at = row_line.text[col..].find(tok).unwrap() + col;
                        col = at + tok.len();
                        row.push(
                            tok.parse::<i64>()
                                .map_err(|_| row_line.err(at, format!("expected an integer, found `{tok}`")))?,
                        );
                    }
                    if row.len() != group.num_factors() {
                        return Err(row_line.err(
                            0,
                            format!("row has {} entries, A has {} generators", row.len(), group.num_factors()),
                        ));
                    }
                    rows.push(row);
                    i += 1;
                }
                if rows.len() != group.num_factors() {
                    return Err(line.err(
                        0,
                        format!("matrix has {} rows, A has {} generators", rows.len(), group.num_factors()),
                    ));
                }
                matrices.push((line.number, rows));
            }
            other => return Err(line.err(0, format!("unexpected `{other}` in a semidirect file"))),
        }
        i += 1;
    }
    let a = a.ok_or_else(|| header.err(0, "missing `abelian` line"))?;
    let (complement, ngens) = complement.ok_or_else(|| header.err(0, "missing `complement` line"))?;
    if matrices.len() != ngens {
        return Err(header.err(
            0,
            format!("{complement} has {ngens} generators but {} matrices were given", matrices.len()),
        ));
    }
    let action = matrices
        .iter()
        .map(|(number, rows)| {
            let hom = AbHom::from_matrix(&a, rows).map_err(|e| Error::parse(*number, 1, e.to_string()))?;
            if !hom.is_automorphism() {
                return Err(Error::parse(*number, 1, "matrix is not an automorphism of A"));
            }
            Ok(hom)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SemidirectForm { a, complement, action })
}

#[cfg(test)]
mod tests {
    use super::*;

    const S4: &str = "\
# S4 as V4 : S3
semidirect
abelian C2xC2
complement S3
matrix
1 1
1 0
end
matrix
0 1
1 0
end
";

    #[test]
    fn parses_semidirect() {
        let f = GroupFile::parse(S4).unwrap();
        let g = f.build().unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.classes().len(), 5);
    }

    #[test]
    fn parses_perm_and_family() {
        let g = GroupFile::parse("perm 4\ngen (1,2,3,4)\ngen (1,2)\n").unwrap().build().unwrap();
        assert_eq!(g.order(), 24);
        let g = GroupFile::parse("family A(3)\nname A\n").unwrap().build().unwrap();
        assert_eq!(g.order(), 21);
        assert_eq!(g.name(), "A");
    }

    #[test]
    fn error_positions() {
        let bad = "semidirect\nabelian C2xC2\ncomplement S3\nmatrix\n1 x\n";
        match GroupFile::parse(bad) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (5, 3)),
            other => panic!("{other:?}"),
        }
        match GroupFile::parse("\n  perm 0\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 8)),
            other => panic!("{other:?}"),
        }
        match GroupFile::parse("perm 3\ngen (1,4)\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(GroupFile::parse(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(GroupFile::parse("cayley"), Err(Error::Parse { line: 1, column: 1, .. })));
    }

    #[test]
    fn round_trip_through_text() {
        for tag in ["B2(C2)", "B4_1(1,1)", "ALT(5)", "PGROUP(q8)", "M5", "SEMI(C3xC3,[[0,1],[2,2]])"] {
            let spec = GroupSpec::parse(tag).unwrap();
            let file = GroupFile::from_spec(&spec).unwrap();
            let text = file.to_text();
            let back = GroupFile::parse(&text).unwrap();
            assert_eq!(back, file, "{tag}");
            if spec.semidirect_form().unwrap().is_some() || spec.permutation_form().unwrap().is_some() {
                assert!(!text.starts_with("family"), "{tag}");
            }
        }
    }
}
