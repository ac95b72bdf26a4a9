use crate::error::{Error, Result};
use crate::word::{Presentation, Word};

use super::ActionSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Colon,
    Comma,
    Caret,
    Minus,
    Plus,
    FatArrow,
    Arrow,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Plus => "`+`".into(),
            Tok::FatArrow => "`=>`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let mut push = |tok: Tok, len: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned {
                tok,
                line: l0,
                column: c0,
            });
            *i += len;
            *col += len;
        };
        let next = chars.get(i + 1).copied();
        match c {
            '{' => push(Tok::LBrace, 1, &mut i, &mut col),
            '}' => push(Tok::RBrace, 1, &mut i, &mut col),
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            ';' => push(Tok::Semi, 1, &mut i, &mut col),
            ':' => push(Tok::Colon, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            '^' => push(Tok::Caret, 1, &mut i, &mut col),
            '+' => push(Tok::Plus, 1, &mut i, &mut col),
            '-' if next == Some('>') => push(Tok::Arrow, 2, &mut i, &mut col),
            '-' => push(Tok::Minus, 1, &mut i, &mut col),
            '=' if next == Some('>') => push(Tok::FatArrow, 2, &mut i, &mut col),
            c if c.is_ascii_alphabetic() => {
                let start = i;
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let s: String = chars[start..j].iter().collect();
                push(Tok::Ident(s), j - start, &mut i, &mut col);
            }
            c if c.is_ascii_digit() => {
                let start = i;
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let s: String = chars[start..j].iter().collect();
                let n: i64 = s.parse().map_err(|_| Error::Syntax {
                    line: l0,
                    column: c0,
                    message: format!("integer `{s}` out of range"),
                })?;
                push(Tok::Int(n), j - start, &mut i, &mut col);
            }
            other => {
                return Err(Error::Syntax {
                    line: l0,
                    column: c0,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

/// A parsed `action` block whose generator names are not yet resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawAction {
    pub name: String,
    pub from: String,
    pub to: String,
    /// `(actor generator, [(target generator, image)])`, with positions.
    entries: Vec<RawEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct RawEntry {
    actor_gen: String,
    line: usize,
    column: usize,
    images: Vec<(String, RawWord, usize, usize)>,
}

/// Word whose generators are still names.
#[derive(Debug, Clone, PartialEq, Eq)]
enum RawWord {
    Gen(String, usize, usize),
    Concat(Vec<RawWord>),
    Pow(Box<RawWord>, i64),
}

impl RawWord {
    fn resolve(&self, gens: &[String]) -> Result<Word> {
        match self {
            RawWord::Gen(name, line, column) => match gens.iter().position(|g| g == name) {
                Some(i) => Ok(Word::gen(i)),
                None => Err(Error::UnknownGenerator {
                    name: name.clone(),
                    line: *line,
                    column: *column,
                }),
            },
            RawWord::Concat(parts) => {
                let mut w = Word::identity();
                for p in parts {
                    w = w.mul(&p.resolve(gens)?);
                }
                Ok(w)
            }
            RawWord::Pow(base, k) => Ok(base.resolve(gens)?.pow(*k)),
        }
    }
}

/// Contents of a file: group and action blocks in source order.
#[derive(Debug, Clone, Default)]
pub struct ParsedFile {
    pub groups: Vec<Presentation>,
    pub actions: Vec<RawAction>,
}

impl ParsedFile {
    pub fn group(&self, name: &str) -> Option<&Presentation> {
        self.groups.iter().find(|g| g.name == name)
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        let t = self.peek();
        Err(Error::Syntax {
            line: t.line,
            column: t.column,
            message: format!("expected {expected}, found {}", t.tok.describe()),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<Spanned> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            self.error(&tok.describe())
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize)> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => {
                let t = self.bump();
                Ok((s, t.line, t.column))
            }
            _ => self.error("identifier"),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => self.error(&format!("`{kw}`")),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn file(&mut self) -> Result<ParsedFile> {
        let mut out = ParsedFile::default();
        loop {
            if self.at_keyword("group") {
                out.groups.push(self.group()?);
            } else if self.at_keyword("action") {
                out.actions.push(self.action()?);
            } else if self.peek().tok == Tok::Eof && !(out.groups.is_empty() && out.actions.is_empty()) {
                return Ok(out);
            } else {
                return self.error("`group` or `action`");
            }
        }
    }

    fn group(&mut self) -> Result<Presentation> {
        self.keyword("group")?;
        let (name, _, _) = self.ident()?;
        self.expect(Tok::LBrace)?;
        self.keyword("gens")?;
        self.expect(Tok::Colon)?;
        let mut gens = Vec::new();
        while let Tok::Ident(_) = self.peek().tok {
            let (g, _, _) = self.ident()?;
            if gens.contains(&g) {
                return Err(Error::DuplicateGenerator(g));
            }
            gens.push(g);
        }
        if gens.is_empty() {
            return self.error("generator name");
        }
        self.expect(Tok::Semi)?;
        let mut rels = Vec::new();
        if self.at_keyword("rels") {
            self.bump();
            self.expect(Tok::Colon)?;
            loop {
                rels.push(self.word()?.resolve(&gens)?);
                if self.peek().tok == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
            self.expect(Tok::Semi)?;
        }
        self.expect(Tok::RBrace)?;
        Presentation::new(name, gens, rels)
    }

    fn action(&mut self) -> Result<RawAction> {
        self.keyword("action")?;
        let (name, _, _) = self.ident()?;
        self.expect(Tok::LBrace)?;
        self.keyword("from")?;
        self.expect(Tok::Colon)?;
        let (from, _, _) = self.ident()?;
        self.expect(Tok::Semi)?;
        self.keyword("to")?;
        self.expect(Tok::Colon)?;
        let (to, _, _) = self.ident()?;
        self.expect(Tok::Semi)?;
        let mut entries = Vec::new();
        loop {
            let (actor_gen, line, column) = self.ident()?;
            self.expect(Tok::FatArrow)?;
            self.expect(Tok::LParen)?;
            let mut images = Vec::new();
            loop {
                let (t, l, c) = self.ident()?;
                self.expect(Tok::Arrow)?;
                images.push((t, self.word()?, l, c));
                if self.peek().tok == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
            self.expect(Tok::RParen)?;
            self.expect(Tok::Semi)?;
            entries.push(RawEntry {
                actor_gen,
                line,
                column,
                images,
            });
            if self.peek().tok == Tok::RBrace {
                break;
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(RawAction {
            name,
            from,
            to,
            entries,
        })
    }

    fn word(&mut self) -> Result<RawWord> {
        let mut parts = Vec::new();
        loop {
            let base = match self.peek().tok.clone() {
                Tok::Ident(s) => {
                    let t = self.bump();
                    RawWord::Gen(s, t.line, t.column)
                }
                Tok::LParen => {
                    self.bump();
                    let inner = self.word()?;
                    self.expect(Tok::RParen)?;
                    inner
                }
                _ if parts.is_empty() => return self.error("generator or `(`"),
                _ => break,
            };
            let factor = if self.peek().tok == Tok::Caret {
                self.bump();
                RawWord::Pow(Box::new(base), self.signed_int()?)
            } else {
                base
            };
            parts.push(factor);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            RawWord::Concat(parts)
        })
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = match self.peek().tok {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        match self.peek().tok {
            Tok::Int(n) => {
                self.bump();
                Ok(if neg { -n } else { n })
            }
            _ => self.error("integer exponent"),
        }
    }
}

/// Parses a file holding one or more `group` and `action` blocks.
pub fn parse_file(text: &str) -> Result<ParsedFile> {
    Parser::new(text)?.file()
}

/// Parses a single `group` block.
pub fn parse_group(text: &str) -> Result<Presentation> {
    let mut p = Parser::new(text)?;
    let g = p.group()?;
    p.expect(Tok::Eof)?;
    Ok(g)
}

/// Parses a single `action` block and resolves it against the acting and
/// acted-upon presentations.
pub fn parse_action(text: &str, source: &Presentation, target: &Presentation) -> Result<ActionSpec> {
    let mut p = Parser::new(text)?;
    let raw = p.action()?;
    p.expect(Tok::Eof)?;
    resolve_action(&raw, source, target)
}

/// Parses comma-separated words over the given generator names.
pub fn parse_word_list(text: &str, gens: &[String]) -> Result<Vec<Word>> {
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    if p.peek().tok == Tok::Eof {
        return Ok(out);
    }
    loop {
        out.push(p.word()?.resolve(gens)?);
        if p.peek().tok == Tok::Comma {
            p.bump();
        } else {
            break;
        }
    }
    p.expect(Tok::Eof)?;
    Ok(out)
}

/// Checks a raw action against presentations and orders its images.
pub fn resolve_action(
    raw: &RawAction,
    source: &Presentation,
    target: &Presentation,
) -> Result<ActionSpec> {
    let mut map: Vec<Option<Vec<Option<Word>>>> = vec![None; source.rank()];
    for e in &raw.entries {
        let s = source
            .generator_index(&e.actor_gen)
            .ok_or_else(|| Error::UnknownGenerator {
                name: e.actor_gen.clone(),
                line: e.line,
                column: e.column,
            })?;
        if map[s].is_some() {
            return Err(Error::Syntax {
                line: e.line,
                column: e.column,
                message: format!("generator `{}` mapped twice", e.actor_gen),
            });
        }
        let mut images: Vec<Option<Word>> = vec![None; target.rank()];
        for (t, w, line, column) in &e.images {
            let ti = target
                .generator_index(t)
                .ok_or_else(|| Error::UnknownGenerator {
                    name: t.clone(),
                    line: *line,
                    column: *column,
                })?;
            if images[ti].is_some() {
                return Err(Error::Syntax {
                    line: *line,
                    column: *column,
                    message: format!("image of `{t}` given twice"),
                });
            }
            images[ti] = Some(w.resolve(&target.generators)?);
        }
        map[s] = Some(images);
    }
    let mut generator_map = Vec::with_capacity(source.rank());
    for (s, entry) in map.into_iter().enumerate() {
        let sname = &source.generators[s];
        let images = entry.ok_or_else(|| Error::IncompleteMap {
            action: raw.name.clone(),
            missing: format!("generator {sname}"),
        })?;
        let mut row = Vec::with_capacity(images.len());
        for (t, w) in images.into_iter().enumerate() {
            row.push(w.ok_or_else(|| Error::IncompleteMap {
                action: raw.name.clone(),
                missing: format!("image of {} under {sname}", target.generators[t]),
            })?);
        }
        generator_map.push(row);
    }
    Ok(ActionSpec {
        name: raw.name.clone(),
        actor: source.name.clone(),
        target: target.name.clone(),
        generator_map,
    })
}

/// Prints an action block that [`parse_action`] reads back.
pub fn format_action(spec: &ActionSpec, source: &Presentation, target: &Presentation) -> String {
    let mut out = format!(
        "action {} {{ from: {}; to: {};",
        spec.name, spec.actor, spec.target
    );
    for (s, row) in spec.generator_map.iter().enumerate() {
        let images: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(t, w)| format!("{} -> {}", target.generators[t], w.display(&target.generators)))
            .collect();
        out.push_str(&format!(" {} => ({});", source.generators[s], images.join(", ")));
    }
    out.push_str(" }");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_block() {
        let p = parse_group("group C4 { gens: a; rels: a^4; }").unwrap();
        assert_eq!(p.rank(), 1);
        assert_eq!(p.relators, vec![Word::power_of(0, 4)]);
    }

    #[test]
    fn parenthesized_powers() {
        let p = parse_group("group S3 { gens: a b; rels: a^3, b^2, (a b)^2; }").unwrap();
        assert_eq!(p.relators.len(), 3);
        assert_eq!(p.relators[2].len(), 4);
    }

    #[test]
    fn unknown_generator_position() {
        let err = parse_group("group X { gens: a; rels: b^2; }").unwrap_err();
        match err {
            Error::UnknownGenerator { name, line, column } => {
                assert_eq!((name.as_str(), line, column), ("b", 1, 26));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_error_position() {
        let err = parse_group("group X {\n  gens: a;\n  rels: a^;\n}").unwrap_err();
        match err {
            Error::Syntax { line, column, .. } => assert_eq!((line, column), (3, 11)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn comments_and_negative_powers() {
        let p = parse_group("# header\ngroup Q { gens: a b; # two\n rels: a^4, a^2 b^-2, b^-1 a b a; }")
            .unwrap();
        assert_eq!(p.relators[1], Word::power_of(0, 2).mul(&Word::power_of(1, -2)));
    }

    #[test]
    fn missing_rels_allowed() {
        let p = parse_group("group Z { gens: a; }").unwrap();
        assert!(p.relators.is_empty());
    }

    #[test]
    fn inversion_action() {
        let c2 = parse_group("group C2 { gens: a; rels: a^2; }").unwrap();
        let c4 = parse_group("group C4 { gens: b; rels: b^4; }").unwrap();
        let a = parse_action("action inv { from: C2; to: C4; a => (b -> b^-1); }", &c2, &c4).unwrap();
        assert_eq!(a.generator_map, vec![vec![Word::power_of(0, -1)]]);
        assert_eq!(parse_action(&format_action(&a, &c2, &c4), &c2, &c4).unwrap(), a);
    }

    #[test]
    fn incomplete_map() {
        let g = parse_group("group G { gens: a c; rels: a^2, c^2; }").unwrap();
        let h = parse_group("group H { gens: b d; rels: b^5, d; }").unwrap();
        let r = parse_action("action x { from: G; to: H; a => (b -> b, d -> d); }", &g, &h);
        assert!(matches!(r, Err(Error::IncompleteMap { .. })));
        let r = parse_action(
            "action x { from: G; to: H; a => (b -> b); c => (b -> b, d -> d); }",
            &g,
            &h,
        );
        assert!(matches!(r, Err(Error::IncompleteMap { .. })));
    }

    #[test]
    fn squaring_spec_is_syntax_only() {
        let c5 = parse_group("group C5 { gens: b; rels: b^5; }").unwrap();
        let g = parse_group("group G { gens: a; rels: a^5; }").unwrap();
        let a = parse_action("action sq { from: G; to: C5; a => (b -> b^2); }", &g, &c5).unwrap();
        assert_eq!(a.generator_map[0][0], Word::power_of(0, 2));
    }

    #[test]
    fn word_lists() {
        let gens = vec!["a".to_string(), "b".to_string()];
        let ws = parse_word_list("a^3, b a b^-1", &gens).unwrap();
        assert_eq!(ws.len(), 2);
        assert_eq!(ws[0], Word::power_of(0, 3));
        assert!(parse_word_list("", &gens).unwrap().is_empty());
        assert!(matches!(parse_word_list("c", &gens), Err(Error::UnknownGenerator { .. })));
    }

    #[test]
    fn file_with_groups_and_actions() {
        let f = parse_file(
            "group A { gens: x; rels: x^2; }\ngroup B { gens: y; rels: y^3; }\n\
             action t { from: A; to: B; x => (y -> y); }",
        )
        .unwrap();
        assert_eq!(f.groups.len(), 2);
        assert_eq!(f.actions[0].from, "A");
        assert!(f.group("B").is_some());
        assert!(parse_file("").is_err());
    }
}
