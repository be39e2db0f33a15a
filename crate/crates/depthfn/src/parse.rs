//! Text input: ideals, graphs, simplicial complexes and prime collections.
//!
//! A document is a sequence of lines. `#` starts a comment. Recognized
//! headers are `vars:`, `ideal:`, `graph:`, `complex:`, `primes:` and
//! `collection:`; any other nonblank line continues the current ideal.

use std::sync::Arc;

use depthfn_core::forest::SimplicialComplex;
use depthfn_core::graph::Graph;
use depthfn_core::{FieldSpec, Monomial, MonomialIdeal, PolyContext};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

pub type ParseResult<T> = std::result::Result<T, ParseError>;

/// A piece of input text with the position of its first character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Located {
    pub text: String,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub vars: Option<Located>,
    pub ideals: Vec<Located>,
    pub graph: Vec<Located>,
    pub complex: Vec<Located>,
    pub primes: Option<Located>,
    pub collection: Option<Located>,
}

impl Document {
    pub fn parse(input: &str) -> ParseResult<Self> {
        let mut doc = Document::default();
        let mut continuing = false;
        for (idx, raw) in input.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            let header = body.find(':').map(|pos| (body[..pos].trim(), pos));
            let Some((key, pos)) = header.filter(|(k, _)| is_header(k)) else {
                let piece = Located { text: body.to_string(), line, column: 1 };
                if continuing {
                    let last = doc.ideals.last_mut().expect("continuing an ideal");
                    last.text.push('\n');
                    last.text.push_str(&piece.text);
                } else {
                    doc.ideals.push(piece);
                    continuing = true;
                }
                continue;
            };
            let rest = Located { text: body[pos + 1..].to_string(), line, column: pos + 2 };
            continuing = false;
            match key {
                "vars" => {
                    if doc.vars.is_some() {
                        return Err(ParseError::at(line, 1, "repeated vars header"));
                    }
                    doc.vars = Some(rest);
                }
                "ideal" => {
                    doc.ideals.push(rest);
                    continuing = true;
                }
                "graph" => doc.graph.push(rest),
                "complex" => doc.complex.push(rest),
                "primes" => doc.primes = Some(rest),
                "collection" => doc.collection = Some(rest),
                _ => unreachable!(),
            }
        }
        Ok(doc)
    }

    /// The variable context: from the `vars:` header, or else the
    /// identifiers occurring in the ideals and primes, in natural order.
    pub fn context(&self, field: FieldSpec) -> ParseResult<Arc<PolyContext>> {
        let names = match &self.vars {
            Some(v) => parse_names(v)?,
            None => {
                let mut names: Vec<String> = Vec::new();
                for piece in self.ideals.iter().chain(self.primes.iter()) {
                    for (name, _, _) in identifiers(piece) {
                        if !names.contains(&name) {
                            names.push(name);
                        }
                    }
                }
                names.sort_by_cached_key(|a| natural_key(a));
                names
            }
        };
        let at = self.vars.as_ref().map_or((1, 1), |v| (v.line, v.column));
        PolyContext::new(names, field).map(Arc::new).map_err(|e| ParseError::at(at.0, at.1, e.to_string()))
    }

    pub fn ideal(&self, ctx: &Arc<PolyContext>, index: usize) -> ParseResult<MonomialIdeal> {
        let piece = self
            .ideals
            .get(index)
            .ok_or_else(|| ParseError::at(1, 1, format!("expected at least {} ideal(s)", index + 1)))?;
        parse_ideal(ctx, piece)
    }

    pub fn graph(&self) -> ParseResult<Graph> {
        if self.graph.is_empty() {
            return Err(ParseError::at(1, 1, "no graph: line"));
        }
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for piece in &self.graph {
            for (item, line, column) in split_located(piece, ',') {
                let trimmed = item.trim();
                if trimmed.is_empty() {
                    continue;
                }
                match trimmed.split_once('-') {
                    Some((a, b)) => {
                        let a = parse_label(a, line, column)?;
                        let b = parse_label(b, line, column)?;
                        if a == b {
                            return Err(ParseError::at(line, column, format!("loop at vertex {a}")));
                        }
                        edges.push((a, b));
                    }
                    None => vertices.push(parse_label(trimmed, line, column)?),
                }
            }
        }
        vertices.extend(edges.iter().flat_map(|&(a, b)| [a, b]));
        let first = &self.graph[0];
        Graph::new(vertices, edges).map_err(|e| ParseError::at(first.line, first.column, e.to_string()))
    }

    pub fn complex(&self) -> ParseResult<SimplicialComplex> {
        if self.complex.is_empty() {
            return Err(ParseError::at(1, 1, "no complex: line"));
        }
        let mut facets = Vec::new();
        for piece in &self.complex {
            for (item, line, column) in split_located(piece, ';') {
                if item.trim().is_empty() {
                    continue;
                }
                let mut facet = Vec::new();
                for (tok, l, c) in tokens(&item, line, column) {
                    facet.push(parse_label(&tok, l, c)?);
                }
                facets.push(facet);
            }
        }
        let first = &self.complex[0];
        SimplicialComplex::new(facets).map_err(|e| ParseError::at(first.line, first.column, e.to_string()))
    }

    /// Prime variable sets from the `primes:` line, as variable indices.
    pub fn primes(&self, ctx: &PolyContext) -> ParseResult<Vec<Vec<usize>>> {
        let piece = self.primes.as_ref().ok_or_else(|| ParseError::at(1, 1, "no primes: line"))?;
        braces(piece)?
            .into_iter()
            .map(|group| {
                group
                    .into_iter()
                    .map(|(tok, l, c)| {
                        ctx.index_of(&tok).ok_or_else(|| ParseError::at(l, c, format!("unknown variable {tok}")))
                    })
                    .collect()
            })
            .collect()
    }

    /// Members of the `collection:` line as 1-based prime labels.
    pub fn collection(&self) -> ParseResult<Vec<Vec<usize>>> {
        let piece = self.collection.as_ref().ok_or_else(|| ParseError::at(1, 1, "no collection: line"))?;
        braces(piece)?
            .into_iter()
            .map(|group| group.into_iter().map(|(tok, l, c)| parse_label(&tok, l, c)).collect())
            .collect()
    }
}

fn is_header(key: &str) -> bool {
    matches!(key, "vars" | "ideal" | "graph" | "complex" | "primes" | "collection")
}

/// Sort key placing `x2` before `x10`.
fn natural_key(name: &str) -> (String, u64, String) {
    let digits = name.len() - name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (stem, num) = name.split_at(name.len() - digits);
    (stem.to_string(), num.parse().unwrap_or(0), name.to_string())
}

fn parse_names(piece: &Located) -> ParseResult<Vec<String>> {
    let names: Vec<String> = tokens(&piece.text, piece.line, piece.column).into_iter().map(|t| t.0).collect();
    if names.is_empty() {
        return Err(ParseError::at(piece.line, piece.column, "empty vars header"));
    }
    Ok(names)
}

fn parse_label(text: &str, line: usize, column: usize) -> ParseResult<usize> {
    let t = text.trim();
    t.parse::<usize>().map_err(|_| ParseError::at(line, column, format!("expected a vertex number, found {t:?}")))
}

/// Tokens separated by whitespace or commas, with their positions.
fn tokens(text: &str, line: usize, column: usize) -> Vec<(String, usize, usize)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in text.char_indices().chain(std::iter::once((text.len(), ' '))) {
        if ch.is_whitespace() || ch == ',' {
            if let Some(s) = start.take() {
                out.push((text[s..i].to_string(), line, column + s));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    out
}

/// Splits a single-line piece on `sep`, tracking columns.
fn split_located(piece: &Located, sep: char) -> Vec<(String, usize, usize)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in piece.text.split(sep) {
        out.push((part.to_string(), piece.line, piece.column + offset));
        offset += part.len() + 1;
    }
    out
}

/// `{a b} {c}` groups of tokens; commas may also separate groups and tokens.
fn braces(piece: &Located) -> ParseResult<Vec<Vec<(String, usize, usize)>>> {
    let mut groups = Vec::new();
    let mut current: Option<(usize, Vec<(String, usize, usize)>)> = None;
    let text = &piece.text;
    for (i, ch) in text.char_indices() {
        let column = piece.column + i;
        match ch {
            '{' => {
                if current.is_some() {
                    return Err(ParseError::at(piece.line, column, "nested '{'"));
                }
                current = Some((i + 1, Vec::new()));
            }
            '}' => {
                let (start, _) = current.take().ok_or_else(|| ParseError::at(piece.line, column, "unmatched '}'"))?;
                let group = tokens(&text[start..i], piece.line, piece.column + start);
                if group.is_empty() {
                    return Err(ParseError::at(piece.line, column, "empty group"));
                }
                groups.push(group);
            }
            c if current.is_none() && !c.is_whitespace() && c != ',' => {
                return Err(ParseError::at(piece.line, column, format!("unexpected {c:?} outside braces")));
            }
            _ => {}
        }
    }
    if current.is_some() {
        return Err(ParseError::at(piece.line, piece.column + text.len(), "unclosed '{'"));
    }
    Ok(groups)
}

/// Identifiers in an ideal or primes text with positions (line, column).
fn identifiers(piece: &Located) -> Vec<(String, usize, usize)> {
    let mut out = Vec::new();
    for (l, c, text) in piece_lines(piece) {
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i].is_ascii_alphabetic() {
                let s = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((text[s..i].to_string(), l, c + s));
            } else {
                i += 1;
            }
        }
    }
    out
}

/// The lines of a (possibly continued) piece with their starting positions.
fn piece_lines(piece: &Located) -> Vec<(usize, usize, &str)> {
    piece
        .text
        .split('\n')
        .enumerate()
        .map(|(k, t)| (piece.line + k, if k == 0 { piece.column } else { 1 }, t))
        .collect()
}

/// Parses `x1*x2^2, x3` (generators separated by commas, possibly across
/// lines). `0` denotes the zero ideal and `1` the unit ideal.
pub fn parse_ideal(ctx: &Arc<PolyContext>, piece: &Located) -> ParseResult<MonomialIdeal> {
    let mut lexer = Lexer::new(piece);
    let mut gens = Vec::new();
    let mut zero = false;
    loop {
        lexer.skip_ws();
        if lexer.peek().is_none() {
            if gens.is_empty() && !zero {
                let (l, c) = lexer.pos();
                return Err(ParseError::at(l, c, "expected a generator"));
            }
            break;
        }
        match parse_monomial(ctx, &mut lexer)? {
            Some(m) => gens.push(m),
            None => zero = true,
        }
        lexer.skip_ws();
        match lexer.peek() {
            None => break,
            Some(',') => {
                lexer.bump();
            }
            Some(ch) => {
                let (l, c) = lexer.pos();
                return Err(ParseError::at(l, c, format!("expected ',' or '*', found {ch:?}")));
            }
        }
    }
    let (l, c) = (piece.line, piece.column);
    MonomialIdeal::new(ctx.clone(), gens).map_err(|e| ParseError::at(l, c, e.to_string()))
}

/// One product of powers; `Ok(None)` for the literal `0`.
fn parse_monomial(ctx: &Arc<PolyContext>, lx: &mut Lexer) -> ParseResult<Option<Monomial>> {
    let n = ctx.num_vars();
    let mut exps = vec![0u32; n];
    let mut factors = 0;
    loop {
        lx.skip_ws();
        let (l, c) = lx.pos();
        match lx.peek() {
            Some(ch) if ch.is_ascii_alphabetic() => {
                let name = lx.take_while(|ch| ch.is_ascii_alphanumeric() || ch == '_');
                let v = ctx.index_of(&name).ok_or_else(|| ParseError::at(l, c, format!("unknown variable {name}")))?;
                lx.skip_ws();
                let e = if lx.peek() == Some('^') {
                    lx.bump();
                    lx.skip_ws();
                    let (l2, c2) = lx.pos();
                    let digits = lx.take_while(|ch| ch.is_ascii_digit());
                    digits.parse::<u32>().map_err(|_| ParseError::at(l2, c2, "expected an exponent"))?
                } else {
                    1
                };
                exps[v] = exps[v].checked_add(e).ok_or_else(|| ParseError::at(l, c, "exponent overflow"))?;
            }
            Some(ch) if ch.is_ascii_digit() => {
                let digits = lx.take_while(|ch| ch.is_ascii_digit());
                match digits.as_str() {
                    "1" => {}
                    "0" if factors == 0 => {
                        lx.skip_ws();
                        if matches!(lx.peek(), None | Some(',')) {
                            return Ok(None);
                        }
                        return Err(ParseError::at(l, c, "0 cannot be a factor"));
                    }
                    _ => return Err(ParseError::at(l, c, format!("coefficient {digits} is not allowed"))),
                }
            }
            Some(ch) => return Err(ParseError::at(l, c, format!("expected a variable, found {ch:?}"))),
            None => return Err(ParseError::at(l, c, "expected a variable")),
        }
        factors += 1;
        lx.skip_ws();
        if lx.peek() == Some('*') {
            lx.bump();
        } else {
            return Ok(Some(Monomial::new(exps)));
        }
    }
}

struct Lexer {
    chars: Vec<(char, usize, usize)>,
    at: usize,
    end: (usize, usize),
}

impl Lexer {
    fn new(piece: &Located) -> Self {
        let mut chars = Vec::new();
        let mut end = (piece.line, piece.column);
        for (l, c, text) in piece_lines(piece) {
            for (i, ch) in text.char_indices() {
                chars.push((ch, l, c + i));
            }
            chars.push(('\n', l, c + text.len()));
            end = (l, c + text.len());
        }
        Lexer { chars, at: 0, end }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|t| t.0)
    }

    fn pos(&self) -> (usize, usize) {
        self.chars.get(self.at).map_or(self.end, |t| (t.1, t.2))
    }

    fn bump(&mut self) {
        self.at += 1;
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.at += 1;
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(ch) = self.peek().filter(|&c| f(c)) {
            s.push(ch);
            self.at += 1;
        }
        s
    }
}

/// Parses an ideal written without a header, inferring its variables.
pub fn ideal_from_str(text: &str, field: FieldSpec) -> ParseResult<MonomialIdeal> {
    let doc = Document { ideals: vec![Located { text: text.to_string(), line: 1, column: 1 }], ..Default::default() };
    let ctx = doc.context(field)?;
    doc.ideal(&ctx, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_with_header() {
        let doc = Document::parse("vars: x1 x2 x3 x4 x5 x6\nx1*x2*x3, x3*x4*x5,\n  x1*x5*x6\n").unwrap();
        let ctx = doc.context(FieldSpec::Rationals).unwrap();
        let i = doc.ideal(&ctx, 0).unwrap();
        assert_eq!(i.num_vars(), 6);
        assert_eq!(i.render(), "x1*x2*x3, x1*x5*x6, x3*x4*x5");
    }

    #[test]
    fn powers_and_units() {
        let i = ideal_from_str("x^2*y, y ^ 3, x*x", FieldSpec::Rationals).unwrap();
        assert_eq!(i.render(), "x^2, y^3");
        assert!(ideal_from_str("0", FieldSpec::Rationals).is_err());
        let ctx = Arc::new(PolyContext::standard(2).unwrap());
        let piece = Located { text: "0".into(), line: 1, column: 1 };
        assert!(parse_ideal(&ctx, &piece).unwrap().is_zero());
        let piece = Located { text: "1, x1".into(), line: 1, column: 1 };
        assert!(parse_ideal(&ctx, &piece).unwrap().is_unit());
    }

    #[test]
    fn inferred_variables_use_natural_order() {
        let i = ideal_from_str("x10*x2, x1", FieldSpec::Rationals).unwrap();
        assert_eq!(i.ctx().names(), ["x1", "x2", "x10"]);
    }

    #[test]
    fn errors_carry_positions() {
        let doc = Document::parse("vars: x1 x2\nx1*x2, x1*x7\n").unwrap();
        let ctx = doc.context(FieldSpec::Rationals).unwrap();
        let e = doc.ideal(&ctx, 0).unwrap_err();
        assert_eq!((e.line, e.column), (2, 11));
        assert!(e.message.contains("x7"));

        let doc = Document::parse("vars: x1 x2\nx1 x2\n").unwrap();
        let e = doc.ideal(&ctx, 0).unwrap_err();
        assert_eq!((e.line, e.column), (2, 4));

        let doc = Document::parse("vars: x1\nideal: x1^\n").unwrap();
        let ctx = doc.context(FieldSpec::Rationals).unwrap();
        let e = doc.ideal(&ctx, 0).unwrap_err();
        assert_eq!(e.line, 2);

        let doc = Document::parse("graph: 1-2, 2-x\n").unwrap();
        let e = doc.graph().unwrap_err();
        assert_eq!((e.line, e.column), (1, 12));
    }

    #[test]
    fn graphs_and_complexes() {
        let doc = Document::parse("graph: 1-2, 2-3\ngraph: 1-3, 7\n").unwrap();
        let g = doc.graph().unwrap();
        assert_eq!(g.num_edges(), 3);
        assert_eq!(g.isolated(), [7]);
        let doc = Document::parse("complex: 1 2 3; 1 5; 3 4  # Example\n").unwrap();
        assert_eq!(doc.complex().unwrap().to_string(), "1 2 3; 1 5; 3 4");
        assert!(Document::parse("graph: 1-1\n").unwrap().graph().is_err());
    }

    #[test]
    fn primes_and_collections() {
        let doc = Document::parse("vars: x1 x2 x3 x4 x5\nprimes: {x1 x2} {x3} {x4 x5}\ncollection: {1 2} {3}\n").unwrap();
        let ctx = doc.context(FieldSpec::Rationals).unwrap();
        assert_eq!(doc.primes(&ctx).unwrap(), [vec![0, 1], vec![2], vec![3, 4]]);
        assert_eq!(doc.collection().unwrap(), [vec![1, 2], vec![3]]);
        let bad = Document::parse("collection: {1 2 {3}\n").unwrap();
        assert_eq!(bad.collection().unwrap_err().column, 18);
    }

    #[test]
    fn two_ideals() {
        let doc = Document::parse("vars: a b c d\nideal: a, b\nideal: c*d\n").unwrap();
        let ctx = doc.context(FieldSpec::Rationals).unwrap();
        assert_eq!(doc.ideal(&ctx, 1).unwrap().render(), "c*d");
    }
}
