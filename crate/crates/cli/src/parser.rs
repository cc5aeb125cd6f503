//! Syntax of the workspace DSL.
//!
//! ```text
//! category C { objects: a b; morphism f: a -> b; compose g . f = h; }
//! functor F: C -> D { object a => x; morphism f => u; }
//! category P = C * D
//! het H: C ~> D { elems (a,x): e1 e2; post u . e1 = e2; pre e1 . f = e3; }
//! ```
//!
//! `elems a, x: ...` is the same as `elems (a,x): ...` and also accepts
//! quoted object names.
//!
//! Items end at `;`, at the end of their line, or at the closing brace.
//! `g . f` always means "`f` then `g`".

use std::collections::VecDeque;

use crate::diag::{Diagnostic, Location};
use crate::lexer::{Lexer, Tok, Token};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub loc: Location,
}

/// `left . right = result`.
#[derive(Debug, Clone)]
pub struct Equation {
    pub left: Name,
    pub right: Name,
    pub result: Name,
}

#[derive(Debug, Clone)]
pub struct MorphismDecl {
    pub name: Name,
    pub dom: Name,
    pub cod: Name,
}

#[derive(Debug, Clone)]
pub struct CategoryBlock {
    pub name: Name,
    pub objects: Vec<Name>,
    pub morphisms: Vec<MorphismDecl>,
    pub compose: Vec<Equation>,
}

/// `category P = C * D`, the product category.
#[derive(Debug, Clone)]
pub struct ProductBlock {
    pub name: Name,
    pub left: Name,
    pub right: Name,
}

#[derive(Debug, Clone)]
pub struct FunctorBlock {
    pub name: Name,
    pub source: Name,
    pub target: Name,
    pub objects: Vec<(Name, Name)>,
    pub morphisms: Vec<(Name, Name)>,
}

#[derive(Debug, Clone)]
pub struct ElemsDecl {
    pub source: Name,
    pub target: Name,
    pub elems: Vec<Name>,
}

#[derive(Debug, Clone)]
pub struct HetBlock {
    pub name: Name,
    pub source: Name,
    pub target: Name,
    pub elems: Vec<ElemsDecl>,
    pub post: Vec<Equation>,
    pub pre: Vec<Equation>,
}

#[derive(Debug, Clone)]
pub enum Block {
    Category(CategoryBlock),
    Product(ProductBlock),
    Functor(FunctorBlock),
    Het(HetBlock),
}

impl Block {
    pub fn name(&self) -> &Name {
        match self {
            Block::Category(b) => &b.name,
            Block::Product(b) => &b.name,
            Block::Functor(b) => &b.name,
            Block::Het(b) => &b.name,
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    /// Lookahead not yet consumed.
    buf: VecDeque<Token>,
    /// Tokens consumed so far.
    pos: usize,
    eof: Location,
    lex_error: Option<Diagnostic>,
    errors: Vec<Diagnostic>,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser<'_> {
    fn peek_nth(&mut self, n: usize) -> Option<&Token> {
        while self.buf.len() <= n && self.lex_error.is_none() {
            match self.lexer.next() {
                Some(Ok(t)) => self.buf.push_back(t),
                Some(Err(d)) => self.lex_error = Some(d),
                None => break,
            }
        }
        self.buf.get(n)
    }

    fn peek(&mut self) -> Option<&Token> {
        self.peek_nth(0)
    }

    fn bump(&mut self) {
        if self.peek().is_some() {
            self.buf.pop_front();
            self.pos += 1;
        }
    }

    fn here(&mut self) -> Location {
        let eof = self.eof.clone();
        self.peek().map_or(eof, |t| t.loc.clone())
    }

    fn describe(&mut self) -> String {
        self.peek().map_or_else(|| "end of input".to_string(), |t| t.tok.to_string())
    }

    fn at(&mut self, tok: &Tok) -> bool {
        self.peek().is_some_and(|t| &t.tok == tok)
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if self.at(&tok) {
            self.bump();
            Ok(())
        } else {
            Err(Diagnostic::at(self.here(), format!("expected {tok}, found {}", self.describe())))
        }
    }

    fn name(&mut self, what: &str) -> PResult<Name> {
        match self.peek() {
            Some(Token {
                tok: Tok::Name(n),
                loc,
                ..
            }) => {
                let name = Name {
                    text: n.clone(),
                    loc: loc.clone(),
                };
                self.bump();
                Ok(name)
            }
            _ => Err(Diagnostic::at(self.here(), format!("expected {what}, found {}", self.describe()))),
        }
    }

    fn keyword(&mut self) -> Option<(String, Location)> {
        match self.peek() {
            Some(Token {
                tok: Tok::Name(n),
                loc,
                ..
            }) => {
                let out = (n.clone(), loc.clone());
                self.bump();
                Some(out)
            }
            _ => None,
        }
    }

    /// Whether the current item has ended: `;` (consumed), `}` or a new line.
    fn item_end(&mut self) -> bool {
        match self.peek() {
            None => true,
            Some(t) if t.tok == Tok::Semi => {
                self.bump();
                true
            }
            Some(t) => t.tok == Tok::RBrace || t.line_start,
        }
    }

    fn finish_item(&mut self) -> PResult<()> {
        if self.item_end() {
            Ok(())
        } else {
            Err(Diagnostic::at(self.here(), format!("expected `;` or end of line, found {}", self.describe())))
        }
    }

    /// Skips to the start of the next item after an error.
    fn recover(&mut self, start: usize) {
        if self.pos == start {
            self.bump();
        }
        while let Some(t) = self.peek() {
            if t.tok == Tok::RBrace || t.line_start {
                break;
            }
            let semi = t.tok == Tok::Semi;
            self.bump();
            if semi {
                break;
            }
        }
    }

    /// Names up to the end of the item.
    fn name_list(&mut self, what: &str) -> PResult<Vec<Name>> {
        let mut out = Vec::new();
        loop {
            if self.item_end() {
                return Ok(out);
            }
            out.push(self.name(what)?);
            if self.at(&Tok::Comma) {
                self.bump();
            }
        }
    }

    fn equation(&mut self) -> PResult<Equation> {
        let left = self.name("a name")?;
        self.expect(Tok::Dot)?;
        let right = self.name("a name")?;
        self.expect(Tok::Eq)?;
        let result = self.name("a name")?;
        self.finish_item()?;
        Ok(Equation { left, right, result })
    }

    fn body(&mut self, mut item: impl FnMut(&mut Parser, &str, Location) -> PResult<()>) -> PResult<()> {
        self.expect(Tok::LBrace)?;
        loop {
            if self.at(&Tok::RBrace) {
                self.bump();
                return Ok(());
            }
            if self.at(&Tok::Semi) {
                self.bump();
                continue;
            }
            let start = self.pos;
            let result = match self.keyword() {
                Some((kw, loc)) => item(self, &kw, loc),
                None if self.peek().is_none() => {
                    return Err(Diagnostic::at(self.eof.clone(), "unclosed block: expected `}`"));
                }
                None => Err(Diagnostic::at(self.here(), format!("expected an item, found {}", self.describe()))),
            };
            if let Err(e) = result {
                self.errors.push(e);
                self.recover(start);
            }
        }
    }

    fn category(&mut self) -> PResult<CategoryBlock> {
        let name = self.name("a category name")?;
        let mut b = CategoryBlock {
            name,
            objects: Vec::new(),
            morphisms: Vec::new(),
            compose: Vec::new(),
        };
        self.body(|p, kw, loc| match kw {
            "objects" => {
                p.expect(Tok::Colon)?;
                b.objects.extend(p.name_list("an object name")?);
                Ok(())
            }
            "morphism" | "morphisms" => {
                let mut names = vec![p.name("a morphism name")?];
                while p.at(&Tok::Comma) {
                    p.bump();
                    names.push(p.name("a morphism name")?);
                }
                p.expect(Tok::Colon)?;
                let dom = p.name("a domain object")?;
                p.expect(Tok::Arrow)?;
                let cod = p.name("a codomain object")?;
                p.finish_item()?;
                b.morphisms.extend(names.into_iter().map(|name| MorphismDecl {
                    name,
                    dom: dom.clone(),
                    cod: cod.clone(),
                }));
                Ok(())
            }
            "compose" => {
                b.compose.push(p.equation()?);
                Ok(())
            }
            _ => Err(Diagnostic::at(loc, format!("unknown category item `{kw}`"))),
        })?;
        Ok(b)
    }

    fn product(&mut self) -> PResult<ProductBlock> {
        let name = self.name("a category name")?;
        self.expect(Tok::Eq)?;
        let left = self.name("a category name")?;
        self.expect(Tok::Star)?;
        let right = self.name("a category name")?;
        self.finish_item()?;
        Ok(ProductBlock { name, left, right })
    }

    fn header(&mut self, what: &str, arrow: Tok) -> PResult<(Name, Name, Name)> {
        let name = self.name(what)?;
        self.expect(Tok::Colon)?;
        let source = self.name("a source category")?;
        self.expect(arrow)?;
        let target = self.name("a target category")?;
        Ok((name, source, target))
    }

    fn functor(&mut self) -> PResult<FunctorBlock> {
        let (name, source, target) = self.header("a functor name", Tok::Arrow)?;
        let mut b = FunctorBlock {
            name,
            source,
            target,
            objects: Vec::new(),
            morphisms: Vec::new(),
        };
        self.body(|p, kw, loc| {
            let list = match kw {
                "object" => &mut b.objects,
                "morphism" => &mut b.morphisms,
                _ => return Err(Diagnostic::at(loc, format!("unknown functor item `{kw}`"))),
            };
            let from = p.name("a name")?;
            p.expect(Tok::MapsTo)?;
            let to = p.name("a name")?;
            p.finish_item()?;
            list.push((from, to));
            Ok(())
        })?;
        Ok(b)
    }

    fn het(&mut self) -> PResult<HetBlock> {
        let (name, source, target) = self.header("a het bifunctor name", Tok::HetArrow)?;
        let mut b = HetBlock {
            name,
            source,
            target,
            elems: Vec::new(),
            post: Vec::new(),
            pre: Vec::new(),
        };
        self.body(|p, kw, loc| match kw {
            "elems" => {
                let first = p.name("an object pair `(x,a)`")?;
                let (source, target) = if p.peek().is_some_and(|t| t.tok == Tok::Comma) {
                    p.bump();
                    (first, p.name("a target object name")?)
                } else {
                    split_pair(&first)?
                };
                p.expect(Tok::Colon)?;
                let elems = p.name_list("a het element name")?;
                b.elems.push(ElemsDecl { source, target, elems });
                Ok(())
            }
            "post" => {
                b.post.push(p.equation()?);
                Ok(())
            }
            "pre" => {
                b.pre.push(p.equation()?);
                Ok(())
            }
            _ => Err(Diagnostic::at(loc, format!("unknown het item `{kw}`"))),
        })?;
        Ok(b)
    }

    fn block(&mut self) -> PResult<Block> {
        let Some((kw, loc)) = self.keyword() else {
            return Err(Diagnostic::at(self.here(), format!("expected a block, found {}", self.describe())));
        };
        match kw.as_str() {
            "category" => {
                if self.peek_nth(1).is_some_and(|t| t.tok == Tok::Eq) {
                    self.product().map(Block::Product)
                } else {
                    self.category().map(Block::Category)
                }
            }
            "functor" => self.functor().map(Block::Functor),
            "het" => self.het().map(Block::Het),
            _ => Err(Diagnostic::at(
                loc,
                format!("expected `category`, `functor` or `het`, found `{kw}`"),
            )),
        }
    }
}

/// `(x,a)` split at its top-level comma.
fn split_pair(pair: &Name) -> PResult<(Name, Name)> {
    let bad = || Diagnostic::at(pair.loc.clone(), format!("expected an object pair `(x,a)`, found `{}`", pair.text));
    let inner = pair.text.strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
    let mut depth = 0i32;
    let mut split = None;
    for (i, c) in inner.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                if split.is_some() {
                    return Err(bad());
                }
                split = Some(i);
            }
            _ => {}
        }
    }
    let i = split.ok_or_else(bad)?;
    let (x, a) = (inner[..i].trim(), inner[i + 1..].trim());
    if x.is_empty() || a.is_empty() {
        return Err(bad());
    }
    let part = |text: &str| Name {
        text: text.to_string(),
        loc: pair.loc.clone(),
    };
    Ok((part(x), part(a)))
}

/// Parses one file into blocks, collecting every syntax error found.
pub fn parse_blocks(text: &str, file: &str) -> Result<Vec<Block>, Vec<Diagnostic>> {
    let lexer = Lexer::new(text, file);
    let mut p = Parser {
        eof: lexer.end_location(),
        lexer,
        buf: VecDeque::new(),
        pos: 0,
        lex_error: None,
        errors: Vec::new(),
    };
    let mut blocks = Vec::new();
    while p.peek().is_some() {
        let start = p.pos;
        match p.block() {
            Ok(b) => blocks.push(b),
            Err(e) => {
                p.errors.push(e);
                // resynchronise at the next block keyword
                if p.pos == start {
                    p.bump();
                }
                while let Some(t) = p.peek() {
                    if matches!(&t.tok, Tok::Name(n) if t.line_start && matches!(n.as_str(), "category" | "functor" | "het"))
                    {
                        break;
                    }
                    p.bump();
                }
            }
        }
    }
    if let Some(lex_error) = p.lex_error {
        // the token stream stops at a lexical error; later complaints are noise
        let mut errors: Vec<Diagnostic> = p.errors.into_iter().filter(|e| e.location < lex_error.location).collect();
        errors.push(lex_error);
        return Err(errors);
    }
    if p.errors.is_empty() {
        Ok(blocks)
    } else {
        Err(p.errors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_three_blocks() {
        let src = "
            # two objects
            category C {
                objects: a b
                morphism f, g: a -> b
            }
            functor F: C -> C { object a => a; object b => b; morphism f => g; morphism g => f }
            het H: C ~> C {
                elems ((a),b): e1 e2
                post id_b . e1 = e1
                pre e1 . id_a = e1
            }";
        let blocks = parse_blocks(src, "t.hc").unwrap();
        assert_eq!(blocks.len(), 3);
        let Block::Category(c) = &blocks[0] else { panic!() };
        assert_eq!(c.objects.len(), 2);
        assert_eq!(c.morphisms.len(), 2);
        assert_eq!(c.morphisms[1].name.text, "g");
        let Block::Het(h) = &blocks[2] else { panic!() };
        assert_eq!(h.elems[0].source.text, "(a)");
        assert_eq!(h.elems[0].elems.len(), 2);
        assert_eq!(h.post[0].result.text, "e1");
    }

    #[test]
    fn reports_every_syntax_error_with_location() {
        let src = "category C {\n objects: a\n morphism f a -> a\n compose f . = f\n}\nbogus";
        let errs = parse_blocks(src, "t.hc").unwrap_err();
        assert_eq!(errs.len(), 3);
        assert_eq!(errs[0].location.as_ref().unwrap().line, 3);
        assert!(errs[0].message.contains("expected `:`"));
        assert_eq!(errs[1].location.as_ref().unwrap().line, 4);
        assert_eq!(errs[2].location.as_ref().unwrap().line, 6);
    }

    #[test]
    fn pair_split_respects_nesting() {
        let n = Name {
            text: "((1,2),[a,b])".into(),
            loc: Location {
                file: "t".into(),
                line: 1,
                col: 1,
            },
        };
        let (x, a) = split_pair(&n).unwrap();
        assert_eq!((x.text.as_str(), a.text.as_str()), ("(1,2)", "[a,b]"));
    }
}
