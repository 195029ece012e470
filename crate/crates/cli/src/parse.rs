use dagiso::{ModelError, Statement, Universe, VarSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: unknown variable `{name}`")]
    UnknownVariable {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("line {line}: a variable appears on more than one side")]
    OverlappingSets { line: usize },
    #[error("line {line}: {source}")]
    Universe { line: usize, source: ModelError },
}

/// A parsed statement file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Input {
    pub universe: Universe,
    /// Canonical statements in file order, duplicates kept.
    pub statements: Vec<Statement>,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn column(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn error(&self, message: impl Into<String>) -> InputError {
        InputError::Parse {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), InputError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    /// Identifiers up to the next character in `stops`, separated by
    /// commas and/or whitespace. Returns each name with its column.
    fn names(&mut self, stops: &[char]) -> Result<Vec<(&'a str, usize)>, InputError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let rest = &self.text[self.pos..];
            let Some(c) = rest.chars().next() else {
                return Ok(out);
            };
            if stops.contains(&c) {
                return Ok(out);
            }
            if c == ',' {
                if out.is_empty() {
                    return Err(self.error("unexpected `,`"));
                }
                self.pos += 1;
                continue;
            }
            let len = rest
                .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                .unwrap_or(rest.len());
            if len == 0 {
                return Err(self.error(format!("unexpected `{c}`")));
            }
            out.push((&rest[..len], self.column()));
            self.pos += len;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }
}

/// Parses a statement file: one `vars:` line followed by `I(A ; B | C)`
/// lines. `#` starts a comment; blank lines are ignored.
pub fn parse_input(text: &str) -> Result<Input, InputError> {
    let mut universe: Option<Universe> = None;
    let mut statements = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor {
            text: body,
            pos: 0,
            line,
        };
        if cur.at_end() {
            continue;
        }
        if cur.text[cur.pos..].starts_with("vars:") {
            if universe.is_some() {
                return Err(cur.error("variables are already declared"));
            }
            cur.pos += "vars:".len();
            let names = cur.names(&[])?;
            universe = Some(
                Universe::new(names.iter().map(|(n, _)| *n))
                    .map_err(|source| InputError::Universe { line, source })?,
            );
            continue;
        }
        let Some(u) = &universe else {
            return Err(cur.error("statement before the `vars:` line"));
        };
        statements.push(parse_statement(&mut cur, u)?);
    }
    let universe = universe.ok_or(InputError::Parse {
        line: text.lines().count().max(1),
        column: 1,
        message: "missing `vars:` line".into(),
    })?;
    Ok(Input {
        universe,
        statements,
    })
}

fn parse_statement(cur: &mut Cursor<'_>, u: &Universe) -> Result<Statement, InputError> {
    cur.expect('I')?;
    cur.expect('(')?;
    let lhs = resolve(cur, u, &[';'])?;
    cur.expect(';')?;
    let rhs = resolve(cur, u, &['|'])?;
    cur.expect('|')?;
    let cond = resolve(cur, u, &[')'])?;
    cur.expect(')')?;
    if !cur.at_end() {
        return Err(cur.error("trailing input after statement"));
    }
    Statement::new(lhs, rhs, cond).map_err(|e| match e {
        ModelError::OverlappingSets => InputError::OverlappingSets { line: cur.line },
        _ => InputError::Parse {
            line: cur.line,
            column: 1,
            message: e.to_string(),
        },
    })
}

fn resolve(cur: &mut Cursor<'_>, u: &Universe, stops: &[char]) -> Result<VarSet, InputError> {
    let mut set = VarSet::EMPTY;
    for (name, column) in cur.names(stops)? {
        let v = u.lookup(name).ok_or_else(|| InputError::UnknownVariable {
            line: cur.line,
            column,
            name: name.to_string(),
        })?;
        if set.contains(v) {
            return Err(InputError::OverlappingSets { line: cur.line });
        }
        set.insert(v);
    }
    Ok(set)
}

/// Renders a file that [`parse_input`] reads back to the same input.
pub fn emit_text(input: &Input) -> String {
    let mut out = format!("vars: {}\n", input.universe.names().join(" "));
    for s in &input.statements {
        out.push_str(&s.display(&input.universe).to_string());
        out.push('\n');
    }
    out
}
