use std::fs;
use std::path::Path;

use super::{GroupError, Permutation};

/// Generators of a permutation group, all of one degree.
///
/// Text format: the first non-comment line is `degree N`; every following
/// nonempty line is one permutation in 1-based cycle notation. Everything after
/// a `#` is a comment.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    degree: usize,
    generators: Vec<Permutation>,
    source_label: String,
}

impl GeneratorSet {
    pub fn new(
        generators: Vec<Permutation>,
        source_label: impl Into<String>,
    ) -> Result<Self, GroupError> {
        let degree = generators
            .first()
            .ok_or(GroupError::NoGenerators)?
            .degree();
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch(degree, bad.degree()));
        }
        Ok(GeneratorSet {
            degree,
            generators,
            source_label: source_label.into(),
        })
    }

    pub fn parse(text: &str, source_label: impl Into<String>) -> Result<Self, GroupError> {
        let mut degree = None;
        let mut generators = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at_line = |e: GroupError| GroupError::AtLine {
                line: lineno + 1,
                source: Box::new(e),
            };
            match degree {
                None => {
                    let n = line
                        .strip_prefix("degree")
                        .map(str::trim)
                        .and_then(|s| s.parse::<usize>().ok())
                        .filter(|&n| n > 0)
                        .ok_or_else(|| {
                            at_line(GroupError::Malformed(format!(
                                "expected `degree N`, found {line:?}"
                            )))
                        })?;
                    degree = Some(n);
                }
                Some(n) => generators.push(Permutation::parse_cycles(line, n).map_err(at_line)?),
            }
        }
        if degree.is_none() {
            return Err(GroupError::Malformed("missing `degree N` header".into()));
        }
        Self::new(generators, source_label)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, GroupError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| GroupError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        Self::parse(&text, path.display().to_string())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("degree {}\n", self.degree);
        for g in &self.generators {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn source_label(&self) -> &str {
        &self.source_label
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let text = "# S4\ndegree 4\n(1,2)  # transposition\n\n(1,2,3,4)\n";
        let gens = GeneratorSet::parse(text, "s4").unwrap();
        assert_eq!(gens.degree(), 4);
        assert_eq!(gens.generators().len(), 2);
        assert_eq!(gens.generators()[1].images(), &[1, 2, 3, 0]);
        let again = GeneratorSet::parse(&gens.to_text(), "again").unwrap();
        assert_eq!(again.generators(), gens.generators());
    }

    #[test]
    fn reports_offending_line() {
        let text = "degree 4\n(1,2)\n(1,2,3)(3,4)\n";
        match GeneratorSet::parse(text, "bad") {
            Err(GroupError::AtLine { line, source }) => {
                assert_eq!(line, 3);
                assert!(matches!(*source, GroupError::RepeatedPoint(3)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_missing_header_and_empty() {
        assert!(GeneratorSet::parse("(1,2)\n", "x").is_err());
        assert!(matches!(
            GeneratorSet::parse("degree 3\n", "x"),
            Err(GroupError::NoGenerators)
        ));
    }

    #[test]
    fn vendored_file_loads() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/g2_4_2_deg416.gens");
        let gens = GeneratorSet::load(path).unwrap();
        assert_eq!(gens.degree(), 416);
        assert_eq!(gens.generators().len(), 2);
    }
}
