use std::collections::HashMap;

use super::{Arrow, QuiverMult, Vertex};
use crate::error::{Error, ParseErrorKind, Position, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    LBrace,
    RBrace,
    Colon,
    Arrow,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Arrow => "`->`".into(),
        }
    }
}

fn syntax(pos: Position, msg: impl Into<String>) -> Error {
    Error::Parse { pos, kind: ParseErrorKind::Syntax(msg.into()) }
}

fn lex(text: &str) -> Result<(Vec<(Tok, Position)>, Position)> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&ch) = chars.peek() {
        let pos = Position { line, col };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match ch {
            c if c.is_whitespace() => {
                bump(&mut chars);
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
            }
            '{' | '}' | ':' => {
                bump(&mut chars);
                let t = match ch {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    _ => Tok::Colon,
                };
                toks.push((t, pos));
            }
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    toks.push((Tok::Arrow, pos));
                } else if chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    return Err(syntax(pos, "multiplicity must be a positive integer"));
                } else {
                    return Err(syntax(pos, "expected `->`"));
                }
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    s.push(bump(&mut chars).unwrap());
                }
                if chars.peek().is_some_and(|c| c.is_ascii_alphabetic() || *c == '_') {
                    return Err(syntax(pos, format!("identifier cannot start with a digit: `{s}...`")));
                }
                let n = s.parse().map_err(|_| syntax(pos, format!("integer `{s}` out of range")))?;
                toks.push((Tok::Int(n), pos));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while chars.peek().is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
                    s.push(bump(&mut chars).unwrap());
                }
                toks.push((Tok::Ident(s), pos));
            }
            other => return Err(syntax(pos, format!("unexpected character `{other}`"))),
        }
    }
    Ok((toks, Position { line, col }))
}

struct Parser {
    toks: Vec<(Tok, Position)>,
    at: usize,
    eof: Position,
}

impl Parser {
    fn next(&mut self, what: &str) -> Result<(Tok, Position)> {
        let t = self.toks.get(self.at).cloned().ok_or_else(|| syntax(self.eof, format!("expected {what}, found end of input")))?;
        self.at += 1;
        Ok(t)
    }

    fn expect(&mut self, want: Tok) -> Result<Position> {
        let (t, pos) = self.next(&want.describe())?;
        if t != want {
            return Err(syntax(pos, format!("expected {}, found {}", want.describe(), t.describe())));
        }
        Ok(pos)
    }

    fn keyword(&mut self, kw: &str) -> Result<Position> {
        self.expect(Tok::Ident(kw.into()))
    }

    fn ident(&mut self) -> Result<(String, Position)> {
        match self.next("an identifier")? {
            (Tok::Ident(s), pos) => Ok((s, pos)),
            (t, pos) => Err(syntax(pos, format!("expected an identifier, found {}", t.describe()))),
        }
    }
}

/// Parses the quiver DSL:
///
/// ```text
/// quiver {
///   vertex a mult 2     # comment
///   arrow x : a -> b
/// }
/// ```
///
/// Arrows may refer to vertices declared later in the file.
pub fn parse_quiver(text: &str) -> Result<QuiverMult> {
    let (toks, eof) = lex(text)?;
    let mut p = Parser { toks, at: 0, eof };
    p.keyword("quiver")?;
    p.expect(Tok::LBrace)?;

    let mut vertices: Vec<Vertex> = Vec::new();
    let mut vertex_ix: HashMap<String, usize> = HashMap::new();
    let mut arrow_names: HashMap<String, Position> = HashMap::new();
    let mut raw_arrows = Vec::new();
    loop {
        let (t, pos) = p.next("`vertex`, `arrow` or `}`")?;
        match t {
            Tok::RBrace => break,
            Tok::Ident(kw) if kw == "vertex" => {
                let (name, npos) = p.ident()?;
                p.keyword("mult")?;
                let mult = match p.next("a multiplicity")? {
                    (Tok::Int(n), mpos) => {
                        if n == 0 {
                            return Err(syntax(mpos, "multiplicity must be positive"));
                        }
                        usize::try_from(n).map_err(|_| syntax(mpos, "multiplicity too large"))?
                    }
                    (t, mpos) => return Err(syntax(mpos, format!("expected a multiplicity, found {}", t.describe()))),
                };
                if vertex_ix.contains_key(&name) {
                    return Err(Error::Parse { pos: npos, kind: ParseErrorKind::DuplicateName(name) });
                }
                vertex_ix.insert(name.clone(), vertices.len());
                vertices.push(Vertex { name, mult });
            }
            Tok::Ident(kw) if kw == "arrow" => {
                let (name, npos) = p.ident()?;
                p.expect(Tok::Colon)?;
                let src = p.ident()?;
                p.expect(Tok::Arrow)?;
                let dst = p.ident()?;
                if arrow_names.contains_key(&name) {
                    return Err(Error::Parse { pos: npos, kind: ParseErrorKind::DuplicateName(name) });
                }
                arrow_names.insert(name.clone(), npos);
                raw_arrows.push((name, npos, src, dst));
            }
            t => return Err(syntax(pos, format!("expected `vertex`, `arrow` or `}}`, found {}", t.describe()))),
        }
    }
    if let Some((t, pos)) = p.toks.get(p.at) {
        return Err(syntax(*pos, format!("unexpected {} after closing `}}`", t.describe())));
    }

    let mut arrows = Vec::with_capacity(raw_arrows.len());
    for (name, npos, (s, spos), (t, tpos)) in raw_arrows {
        let resolve = |v: &str, pos: Position| {
            vertex_ix
                .get(v)
                .copied()
                .ok_or_else(|| Error::Parse { pos, kind: ParseErrorKind::UnknownVertex(v.to_string()) })
        };
        let src = resolve(&s, spos)?;
        let dst = resolve(&t, tpos)?;
        if src == dst {
            return Err(Error::Parse { pos: npos, kind: ParseErrorKind::EdgeLoopForbidden(name) });
        }
        arrows.push(Arrow { name, src, dst });
    }
    QuiverMult::new(vertices, arrows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err_at(text: &str) -> (Position, ParseErrorKind) {
        match parse_quiver(text) {
            Err(Error::Parse { pos, kind }) => (pos, kind),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn single_vertex() {
        let q = parse_quiver("quiver { vertex a mult 1 }").unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert!(q.arrows().is_empty());
    }

    #[test]
    fn chain_with_comments() {
        let q = parse_quiver(
            "# chain\nquiver {\n  vertex j mult 2\n  vertex i mult 1 # centre\n  vertex k mult 1\n  arrow a : j -> i\n  arrow b : i -> k\n}\n",
        )
        .unwrap();
        assert_eq!(q.vertex_count(), 3);
        assert_eq!(q.arrows().len(), 2);
        assert_eq!(q.mult(0), 2);
    }

    #[test]
    fn forward_reference() {
        let q = parse_quiver("quiver { arrow x : a -> b vertex a mult 1 vertex b mult 3 }").unwrap();
        assert_eq!(q.arrows()[0].dst, 1);
    }

    #[test]
    fn errors_are_positioned() {
        let (pos, kind) = err_at("quiver {\n vertex a mult 1\n arrow x : a -> a\n}");
        assert_eq!(pos, Position { line: 3, col: 8 });
        assert_eq!(kind, ParseErrorKind::EdgeLoopForbidden("x".into()));

        let (pos, kind) = err_at("quiver { vertex a mult 1 vertex a mult 2 }");
        assert_eq!(pos, Position { line: 1, col: 33 });
        assert_eq!(kind, ParseErrorKind::DuplicateName("a".into()));

        let (pos, kind) = err_at("quiver { vertex a mult 1 arrow x : a -> zz }");
        assert_eq!(pos, Position { line: 1, col: 41 });
        assert_eq!(kind, ParseErrorKind::UnknownVertex("zz".into()));

        let (pos, _) = err_at("quiver { vertex a mult 0 }");
        assert_eq!(pos, Position { line: 1, col: 24 });
        let (pos, _) = err_at("quiver { vertex a mult 1");
        assert_eq!(pos, Position { line: 1, col: 25 });
        let (pos, _) = err_at("quiver { vertex a mult 1 } extra");
        assert_eq!(pos, Position { line: 1, col: 28 });
        let (pos, _) = err_at("quiver { arrow x : a - b }");
        assert_eq!(pos, Position { line: 1, col: 22 });
    }

    #[test]
    fn duplicate_arrow() {
        let (_, kind) = err_at("quiver { vertex a mult 1 vertex b mult 1 arrow x : a -> b arrow x : b -> a }");
        assert_eq!(kind, ParseErrorKind::DuplicateName("x".into()));
    }
}
