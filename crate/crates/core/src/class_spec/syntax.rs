//! Text syntax for class specifications.
//!
//! ```text
//! spec := "degree<" INT
//!       | "growth:a=" INT ",b=" INT
//!       | "list:" PATH
//!       | "union(" spec ("," spec)* ")"
//! ```
//!
//! Whitespace between tokens is ignored. A `list:` path runs to the next
//! `,` or `)` and is resolved by the caller.

use thiserror::Error;

use super::{ClassSpec, ListedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("spec syntax error at column {column}: {message}")]
pub struct SpecSyntaxError {
    pub column: usize,
    pub message: String,
}

/// Parses a spec. `load` turns a `list:` path into graphs.
pub fn parse_spec(
    text: &str,
    load: &mut dyn FnMut(&str) -> Result<Vec<ListedGraph>, String>,
) -> Result<ClassSpec, SpecSyntaxError> {
    let mut p = Parser { text, pos: 0, load };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("trailing input"));
    }
    Ok(spec)
}

struct Parser<'a, 'l> {
    text: &'a str,
    pos: usize,
    load: &'l mut dyn FnMut(&str) -> Result<Vec<ListedGraph>, String>,
}

impl Parser<'_, '_> {
    fn error(&self, message: impl Into<String>) -> SpecSyntaxError {
        SpecSyntaxError {
            column: self.text[..self.pos].chars().count() + 1,
            message: message.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), SpecSyntaxError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected {token:?}")))
        }
    }

    fn integer(&mut self) -> Result<u64, SpecSyntaxError> {
        self.skip_ws();
        let digits = self.rest().len()
            - self
                .rest()
                .trim_start_matches(|c: char| c.is_ascii_digit())
                .len();
        if digits == 0 {
            return Err(self.error("expected an integer"));
        }
        let value = self.rest()[..digits]
            .parse()
            .map_err(|_| self.error("integer too large"))?;
        self.pos += digits;
        Ok(value)
    }

    fn spec(&mut self) -> Result<ClassSpec, SpecSyntaxError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let at_start = |p: &Self, message: String| SpecSyntaxError {
            column: p.text[..start].chars().count() + 1,
            message,
        };
        if self.eat("degree<") {
            let d = self.integer()?;
            let d = usize::try_from(d).map_err(|_| self.error("degree bound too large"))?;
            ClassSpec::degree_bounded(d).map_err(|e| at_start(self, e.to_string()))
        } else if self.eat("growth:") {
            self.expect("a=")?;
            let a = self.integer()?;
            self.expect(",")?;
            self.expect("b=")?;
            let b = self.integer()?;
            let b = u32::try_from(b).map_err(|_| self.error("exponent too large"))?;
            ClassSpec::growth_bounded(a, b).map_err(|e| at_start(self, e.to_string()))
        } else if self.eat("list:") {
            self.skip_ws();
            let len = self.rest().find([',', ')']).unwrap_or(self.rest().len());
            let path = self.rest()[..len].trim_end().to_string();
            if path.is_empty() {
                return Err(self.error("expected a path"));
            }
            let graphs = (self.load)(&path).map_err(|e| self.error(e))?;
            self.pos += len;
            ClassSpec::explicit_list(graphs).map_err(|e| at_start(self, e.to_string()))
        } else if self.eat("union(") {
            let mut members = vec![self.spec()?];
            while self.eat(",") {
                members.push(self.spec()?);
            }
            self.expect(")")?;
            ClassSpec::union(members).map_err(|e| at_start(self, e.to_string()))
        } else {
            Err(self.error("expected degree<, growth:, list: or union("))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rooted_graph::Graph;

    fn no_lists(_: &str) -> Result<Vec<ListedGraph>, String> {
        Err("no lists here".into())
    }

    fn parse(text: &str) -> Result<ClassSpec, SpecSyntaxError> {
        parse_spec(text, &mut no_lists)
    }

    #[test]
    fn atoms() {
        assert_eq!(parse("degree<4").unwrap(), ClassSpec::DegreeBounded(4));
        assert_eq!(
            parse(" growth:a=3, b=2 ").unwrap(),
            ClassSpec::GrowthBounded { a: 3, b: 2 }
        );
    }

    #[test]
    fn unions_nest() {
        let spec = parse("union(degree<3, union(growth:a=2,b=1, degree<5))").unwrap();
        assert_eq!(
            spec.to_string(),
            "union(degree<3, union(growth:a=2,b=1, degree<5))"
        );
    }

    #[test]
    fn lists_use_the_loader() {
        let mut seen = Vec::new();
        let spec = parse_spec("union(list:some/file.txt, degree<3)", &mut |path| {
            seen.push(path.to_string());
            Ok(vec![ListedGraph::Unrooted(Graph::cycle(4))])
        })
        .unwrap();
        assert_eq!(seen, vec!["some/file.txt"]);
        assert!(matches!(spec, ClassSpec::Union(ref m) if m.len() == 2));
    }

    #[test]
    fn errors_carry_columns() {
        assert_eq!(parse("degree<1").unwrap_err().column, 1);
        assert_eq!(parse("degree<x").unwrap_err().column, 8);
        assert_eq!(parse("union(degree<3").unwrap_err().column, 15);
        assert_eq!(parse("degree<3 junk").unwrap_err().column, 10);
        assert_eq!(parse("list:a").unwrap_err().message, "no lists here");
        assert!(parse("").is_err());
    }
}
