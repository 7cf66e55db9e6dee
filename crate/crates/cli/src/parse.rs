//! Recursive-descent parsers for the DSL file formats: theories, formulas,
//! models, homs, categories, functors, proofs and suite configs. Every
//! construct keeps its source span so later resolution errors can point at
//! the offending text.

use gatlab_core::kernel::raw::{RawDecl, RawTerm, RawType};

use crate::diag::Span;
use crate::lex::{lex, Token, TokenKind};

pub type ParseResult<T> = Result<T, (Span, String)>;

pub struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    pub fn new(source: &str) -> ParseResult<Parser> {
        Ok(Parser { tokens: lex(source)?, pos: 0 })
    }

    fn peek(&self) -> &TokenKind {
        &self.tokens[self.pos].kind
    }

    fn peek2(&self) -> &TokenKind {
        &self.tokens[(self.pos + 1).min(self.tokens.len() - 1)].kind
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].span
    }

    fn prev_span(&self) -> Span {
        self.tokens[self.pos.saturating_sub(1)].span
    }

    fn bump(&mut self) -> TokenKind {
        let kind = self.tokens[self.pos].kind.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        kind
    }

    fn fail<T>(&self, message: impl Into<String>) -> ParseResult<T> {
        Err((self.span(), message.into()))
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> ParseResult<()> {
        if *self.peek() == kind {
            self.bump();
            Ok(())
        } else {
            self.fail(format!("expected {what}"))
        }
    }

    fn eat(&mut self, kind: TokenKind) -> bool {
        if *self.peek() == kind {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> ParseResult<String> {
        match self.peek().clone() {
            TokenKind::Ident(name) => {
                self.bump();
                Ok(name)
            }
            _ => self.fail(format!("expected {what}")),
        }
    }

    fn keyword(&mut self, word: &str) -> ParseResult<()> {
        match self.peek() {
            TokenKind::Ident(name) if name == word => {
                self.bump();
                Ok(())
            }
            _ => self.fail(format!("expected keyword `{word}`")),
        }
    }

    fn at_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), TokenKind::Ident(name) if name == word)
    }

    fn number(&mut self, what: &str) -> ParseResult<usize> {
        match *self.peek() {
            TokenKind::Number(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.fail(format!("expected {what}")),
        }
    }

    fn string(&mut self, what: &str) -> ParseResult<String> {
        match self.peek().clone() {
            TokenKind::Str(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.fail(format!("expected {what}")),
        }
    }

    fn finish(&mut self) -> ParseResult<()> {
        if *self.peek() == TokenKind::Eof {
            Ok(())
        } else {
            self.fail("expected end of file")
        }
    }
}

// ---------------------------------------------------------------- theories

#[derive(Clone, Debug)]
pub struct TheoryFile {
    pub name: String,
    pub decls: Vec<RawDecl>,
    /// One span per declaration, for elaboration diagnostics.
    pub decl_spans: Vec<Span>,
}

pub fn parse_theory(source: &str) -> ParseResult<TheoryFile> {
    let mut p = Parser::new(source)?;
    p.keyword("theory")?;
    let name = p.ident("theory name")?;
    p.expect(TokenKind::LBrace, "`{`")?;
    let mut decls = Vec::new();
    let mut decl_spans = Vec::new();
    while !p.eat(TokenKind::RBrace) {
        let start = p.span();
        let decl = parse_decl(&mut p)?;
        p.expect(TokenKind::Semi, "`;` after declaration")?;
        decls.push(decl);
        decl_spans.push(start.join(p.prev_span()));
    }
    p.finish()?;
    if decls.is_empty() {
        return Err((Span::new(0, source.len()), "theory has no declarations".to_owned()));
    }
    Ok(TheoryFile { name, decls, decl_spans })
}

fn parse_decl(p: &mut Parser) -> ParseResult<RawDecl> {
    if p.at_keyword("sort") {
        p.bump();
        let name = p.ident("sort name")?;
        let telescope = parse_telescope(p)?;
        Ok(RawDecl::Sort { name, telescope })
    } else if p.at_keyword("op") {
        p.bump();
        let name = p.ident("operation name")?;
        let telescope = parse_telescope(p)?;
        p.expect(TokenKind::Colon, "`:` before the result type")?;
        let result = parse_type(p)?;
        Ok(RawDecl::Op { name, telescope, result })
    } else if p.at_keyword("eq") {
        p.bump();
        let telescope = parse_telescope(p)?;
        p.expect(TokenKind::Colon, "`:` before the equation")?;
        let lhs = parse_term(p)?;
        p.expect(TokenKind::EqEq, "`==`")?;
        let rhs = parse_term(p)?;
        p.expect(TokenKind::Colon, "`:` before the equation's type")?;
        let at = parse_type(p)?;
        Ok(RawDecl::TermEq { telescope, lhs, rhs, at })
    } else if p.at_keyword("typeq") {
        p.bump();
        let telescope = parse_telescope(p)?;
        p.expect(TokenKind::Colon, "`:` before the type equation")?;
        let lhs = parse_type(p)?;
        p.expect(TokenKind::EqEq, "`==`")?;
        let rhs = parse_type(p)?;
        Ok(RawDecl::TypeEq { telescope, lhs, rhs })
    } else if p.at_keyword("pragma") {
        p.bump();
        p.keyword("confluent")?;
        Ok(RawDecl::PragmaConfluent)
    } else {
        p.fail("expected `sort`, `op`, `eq`, `typeq` or `pragma`")
    }
}

fn parse_telescope(p: &mut Parser) -> ParseResult<Vec<(String, RawType)>> {
    p.expect(TokenKind::LParen, "`(`")?;
    let mut entries = Vec::new();
    if p.eat(TokenKind::RParen) {
        return Ok(entries);
    }
    loop {
        let var = p.ident("variable name")?;
        let mut vars = vec![var];
        while p.eat(TokenKind::Comma) {
            // lookahead: `x, y: T` groups variables of the same type
            if matches!(p.peek(), TokenKind::Ident(_))
                && matches!(p.peek2(), TokenKind::Comma | TokenKind::Colon)
            {
                vars.push(p.ident("variable name")?);
                continue;
            }
            return p.fail("expected a variable name");
        }
        p.expect(TokenKind::Colon, "`:` after variable names")?;
        let ty = parse_type(p)?;
        for var in vars {
            entries.push((var, ty.clone()));
        }
        if p.eat(TokenKind::RParen) {
            break;
        }
        p.expect(TokenKind::Comma, "`,` or `)` in telescope")?;
    }
    Ok(entries)
}

fn parse_type(p: &mut Parser) -> ParseResult<RawType> {
    let sort = p.ident("sort name")?;
    let mut args = Vec::new();
    if p.eat(TokenKind::LParen) && !p.eat(TokenKind::RParen) {
        loop {
            args.push(parse_term(p)?);
            if p.eat(TokenKind::RParen) {
                break;
            }
            p.expect(TokenKind::Comma, "`,` or `)` in type arguments")?;
        }
    }
    Ok(RawType { sort, args })
}

fn parse_term(p: &mut Parser) -> ParseResult<RawTerm> {
    let head = p.ident("term")?;
    if p.eat(TokenKind::LParen) {
        let mut args = Vec::new();
        if !p.eat(TokenKind::RParen) {
            loop {
                args.push(parse_term(p)?);
                if p.eat(TokenKind::RParen) {
                    break;
                }
                p.expect(TokenKind::Comma, "`,` or `)` in arguments")?;
            }
        }
        Ok(RawTerm::App(head, args))
    } else {
        Ok(RawTerm::Ident(head))
    }
}

// ---------------------------------------------------------------- formulas

/// Name-based formula AST, resolved against a theory later.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawFormula {
    Top,
    Bot,
    Not(Box<RawFormula>),
    And(Vec<RawFormula>),
    Or(Vec<RawFormula>),
    Exists { ext: Vec<(String, RawType)>, body: Box<RawFormula> },
    Forall { ext: Vec<(String, RawType)>, body: Box<RawFormula> },
}

#[derive(Clone, Debug)]
pub struct FormulaFile {
    pub name: String,
    pub context: Vec<(String, RawType)>,
    pub body: RawFormula,
}

pub const NO_EQUALITY_HINT: &str = "the formula language has no equality atoms; \
equality must go through a declared equality sort, e.g. `exists (e: Eq(x, y, f, g)). true`";

pub fn parse_formula_file(source: &str) -> ParseResult<FormulaFile> {
    let mut p = Parser::new(source)?;
    p.keyword("formula")?;
    let name = p.ident("formula name")?;
    p.keyword("in")?;
    let context = parse_telescope(&mut p)?;
    p.expect(TokenKind::ColonEq, "`:=`")?;
    let body = parse_formula(&mut p)?;
    p.finish()?;
    Ok(FormulaFile { name, context, body })
}

pub fn parse_formula(p: &mut Parser) -> ParseResult<RawFormula> {
    let formula = parse_formula_inner(p)?;
    // a trailing `=`/`==` means someone tried to write an equality atom
    if matches!(p.peek(), TokenKind::Eq | TokenKind::EqEq) {
        return p.fail(NO_EQUALITY_HINT);
    }
    Ok(formula)
}

fn parse_formula_inner(p: &mut Parser) -> ParseResult<RawFormula> {
    if p.at_keyword("true") {
        p.bump();
        return Ok(RawFormula::Top);
    }
    if p.at_keyword("false") {
        p.bump();
        return Ok(RawFormula::Bot);
    }
    if p.at_keyword("not") {
        p.bump();
        p.expect(TokenKind::LParen, "`(` after `not`")?;
        let body = parse_formula(p)?;
        p.expect(TokenKind::RParen, "`)`")?;
        return Ok(RawFormula::Not(Box::new(body)));
    }
    if p.at_keyword("and") || p.at_keyword("or") {
        let is_and = p.at_keyword("and");
        p.bump();
        p.expect(TokenKind::LParen, "`(`")?;
        let mut parts = Vec::new();
        if !p.eat(TokenKind::RParen) {
            loop {
                parts.push(parse_formula(p)?);
                if p.eat(TokenKind::RParen) {
                    break;
                }
                p.expect(TokenKind::Comma, "`,` or `)` between subformulas")?;
            }
        }
        return Ok(if is_and { RawFormula::And(parts) } else { RawFormula::Or(parts) });
    }
    if p.at_keyword("forall") || p.at_keyword("exists") {
        let is_forall = p.at_keyword("forall");
        p.bump();
        let ext = parse_telescope(p)?;
        if ext.is_empty() {
            return p.fail("quantifier telescopes must bind at least one variable");
        }
        p.expect(TokenKind::Dot, "`.` after the quantifier telescope")?;
        let body = Box::new(parse_formula(p)?);
        return Ok(if is_forall {
            RawFormula::Forall { ext, body }
        } else {
            RawFormula::Exists { ext, body }
        });
    }
    if p.eat(TokenKind::LParen) {
        let inner = parse_formula(p)?;
        p.expect(TokenKind::RParen, "`)`")?;
        return Ok(inner);
    }
    if let TokenKind::Ident(_) = p.peek() {
        // an identifier here is either a misplaced term or the start of an
        // equality atom; both are outside the language
        if matches!(p.peek2(), TokenKind::Eq | TokenKind::EqEq) {
            return p.fail(NO_EQUALITY_HINT);
        }
    }
    p.fail("expected a formula: true, false, not(..), and(..), or(..), forall (..). or exists (..).")
}

// ---------------------------------------------------------------- models

#[derive(Clone, Debug)]
pub struct ModelFile {
    pub name: String,
    pub theory: String,
    pub sort_rows: Vec<SortRow>,
    pub op_rows: Vec<OpRow>,
}

#[derive(Clone, Debug)]
pub struct SortRow {
    pub sort: String,
    pub args: Vec<String>,
    pub elements: Vec<String>,
    pub span: Span,
}

#[derive(Clone, Debug)]
pub struct OpRow {
    pub op: String,
    pub args: Vec<String>,
    pub value: String,
    pub span: Span,
}

pub fn parse_model(source: &str) -> ParseResult<ModelFile> {
    let mut p = Parser::new(source)?;
    p.keyword("model")?;
    let name = p.ident("model name")?;
    p.keyword("of")?;
    let theory = p.ident("theory name")?;
    p.expect(TokenKind::LBrace, "`{`")?;
    let mut sort_rows = Vec::new();
    let mut op_rows = Vec::new();
    while !p.eat(TokenKind::RBrace) {
        let start = p.span();
        if p.at_keyword("sort") {
            p.bump();
            let sort = p.ident("sort name")?;
            let args = parse_name_list_brackets(&mut p)?;
            p.expect(TokenKind::Eq, "`=`")?;
            p.expect(TokenKind::LBrace, "`{`")?;
            let mut elements = Vec::new();
            if !p.eat(TokenKind::RBrace) {
                loop {
                    elements.push(p.ident("element name")?);
                    if p.eat(TokenKind::RBrace) {
                        break;
                    }
                    p.expect(TokenKind::Comma, "`,` or `}` in carrier")?;
                }
            }
            p.expect(TokenKind::Semi, "`;`")?;
            sort_rows.push(SortRow { sort, args, elements, span: start.join(p.prev_span()) });
        } else if p.at_keyword("op") {
            p.bump();
            let op = p.ident("operation name")?;
            let args = parse_name_list_brackets(&mut p)?;
            p.expect(TokenKind::Eq, "`=`")?;
            let value = p.ident("element name")?;
            p.expect(TokenKind::Semi, "`;`")?;
            op_rows.push(OpRow { op, args, value, span: start.join(p.prev_span()) });
        } else {
            return p.fail("expected `sort` or `op` row");
        }
    }
    p.finish()?;
    Ok(ModelFile { name, theory, sort_rows, op_rows })
}

fn parse_name_list_brackets(p: &mut Parser) -> ParseResult<Vec<String>> {
    p.expect(TokenKind::LBracket, "`[`")?;
    let mut names = Vec::new();
    if p.eat(TokenKind::RBracket) {
        return Ok(names);
    }
    loop {
        names.push(p.ident("element name")?);
        if p.eat(TokenKind::RBracket) {
            break;
        }
        p.expect(TokenKind::Comma, "`,` or `]`")?;
    }
    Ok(names)
}

// ---------------------------------------------------------------- homs

#[derive(Clone, Debug)]
pub struct HomFile {
    pub name: String,
    pub theory: String,
    pub source_path: String,
    pub target_path: String,
    pub rows: Vec<MapRow>,
}

#[derive(Clone, Debug)]
pub struct MapRow {
    pub sort: String,
    pub args: Vec<String>,
    pub entries: Vec<(String, String)>,
    pub span: Span,
}

pub fn parse_hom(source: &str) -> ParseResult<HomFile> {
    let mut p = Parser::new(source)?;
    p.keyword("hom")?;
    let name = p.ident("hom name")?;
    p.keyword("of")?;
    let theory = p.ident("theory name")?;
    p.expect(TokenKind::LBrace, "`{`")?;
    p.keyword("source")?;
    let source_path = p.string("source model path")?;
    p.expect(TokenKind::Semi, "`;`")?;
    p.keyword("target")?;
    let target_path = p.string("target model path")?;
    p.expect(TokenKind::Semi, "`;`")?;
    let mut rows = Vec::new();
    while !p.eat(TokenKind::RBrace) {
        let start = p.span();
        p.keyword("map")?;
        let sort = p.ident("sort name")?;
        let args = parse_name_list_brackets(&mut p)?;
        p.expect(TokenKind::Colon, "`:`")?;
        let mut entries = Vec::new();
        if !p.eat(TokenKind::Semi) {
            loop {
                let from = p.ident("source element")?;
                p.expect(TokenKind::Arrow, "`->`")?;
                let to = p.ident("target element")?;
                entries.push((from, to));
                if p.eat(TokenKind::Semi) {
                    break;
                }
                p.expect(TokenKind::Comma, "`,` or `;`")?;
            }
        }
        rows.push(MapRow { sort, args, entries, span: start.join(p.prev_span()) });
    }
    p.finish()?;
    Ok(HomFile { name, theory, source_path, target_path, rows })
}

// ---------------------------------------------------------------- categories

#[derive(Clone, Debug)]
pub struct CategoryFile {
    pub name: String,
    pub objects: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    pub ids: Vec<(String, String)>,
    pub comps: Vec<(String, String, String)>,
}

pub fn parse_category(source: &str) -> ParseResult<CategoryFile> {
    let mut p = Parser::new(source)?;
    p.keyword("category")?;
    let name = p.ident("category name")?;
    p.expect(TokenKind::LBrace, "`{`")?;
    let mut objects = Vec::new();
    let mut arrows = Vec::new();
    let mut ids = Vec::new();
    let mut comps = Vec::new();
    while !p.eat(TokenKind::RBrace) {
        if p.at_keyword("objects") {
            p.bump();
            if !p.eat(TokenKind::Semi) {
                loop {
                    objects.push(p.ident("object name")?);
                    if p.eat(TokenKind::Semi) {
                        break;
                    }
                    p.expect(TokenKind::Comma, "`,` or `;`")?;
                }
            }
        } else if p.at_keyword("arrow") {
            p.bump();
            let arrow = p.ident("arrow name")?;
            p.expect(TokenKind::Colon, "`:`")?;
            let src = p.ident("source object")?;
            p.expect(TokenKind::Arrow, "`->`")?;
            let tgt = p.ident("target object")?;
            p.expect(TokenKind::Semi, "`;`")?;
            arrows.push((arrow, src, tgt));
        } else if p.at_keyword("id") {
            p.bump();
            let obj = p.ident("object name")?;
            p.expect(TokenKind::Eq, "`=`")?;
            let arrow = p.ident("arrow name")?;
            p.expect(TokenKind::Semi, "`;`")?;
            ids.push((obj, arrow));
        } else if p.at_keyword("comp") {
            p.bump();
            let f = p.ident("arrow name")?;
            let g = p.ident("arrow name")?;
            p.expect(TokenKind::Eq, "`=`")?;
            let fg = p.ident("arrow name")?;
            p.expect(TokenKind::Semi, "`;`")?;
            comps.push((f, g, fg));
        } else {
            return p.fail("expected `objects`, `arrow`, `id` or `comp`");
        }
    }
    p.finish()?;
    Ok(CategoryFile { name, objects, arrows, ids, comps })
}

// ---------------------------------------------------------------- functors

#[derive(Clone, Debug)]
pub struct FunctorFile {
    pub name: String,
    pub source_path: String,
    pub target_path: String,
    pub ob_map: Vec<(String, String)>,
    pub arrow_map: Vec<(String, String)>,
}

pub fn parse_functor(source: &str) -> ParseResult<FunctorFile> {
    let mut p = Parser::new(source)?;
    p.keyword("functor")?;
    let name = p.ident("functor name")?;
    p.expect(TokenKind::LBrace, "`{`")?;
    p.keyword("source")?;
    let source_path = p.string("source category path")?;
    p.expect(TokenKind::Semi, "`;`")?;
    p.keyword("target")?;
    let target_path = p.string("target category path")?;
    p.expect(TokenKind::Semi, "`;`")?;
    let mut ob_map = Vec::new();
    let mut arrow_map = Vec::new();
    while !p.eat(TokenKind::RBrace) {
        if p.at_keyword("ob") {
            p.bump();
            let from = p.ident("object name")?;
            p.expect(TokenKind::Arrow, "`->`")?;
            let to = p.ident("object name")?;
            p.expect(TokenKind::Semi, "`;`")?;
            ob_map.push((from, to));
        } else if p.at_keyword("arrow") {
            p.bump();
            let from = p.ident("arrow name")?;
            p.expect(TokenKind::Arrow, "`->`")?;
            let to = p.ident("arrow name")?;
            p.expect(TokenKind::Semi, "`;`")?;
            arrow_map.push((from, to));
        } else {
            return p.fail("expected `ob` or `arrow`");
        }
    }
    p.finish()?;
    Ok(FunctorFile { name, source_path, target_path, ob_map, arrow_map })
}

// ---------------------------------------------------------------- proofs

#[derive(Clone, Debug)]
pub struct ProofFile {
    pub name: String,
    pub theory: String,
    pub root: RawProofNode,
}

#[derive(Clone, Debug)]
pub struct RawProofNode {
    pub rule: String,
    pub ctx: Vec<(String, RawType)>,
    pub lhs: RawFormula,
    pub rhs: RawFormula,
    pub index: Option<usize>,
    pub middle: Option<RawFormula>,
    pub children: Vec<RawProofNode>,
    pub span: Span,
}

pub fn parse_proof(source: &str) -> ParseResult<ProofFile> {
    let mut p = Parser::new(source)?;
    p.keyword("proof")?;
    let name = p.ident("proof name")?;
    p.keyword("of")?;
    let theory = p.ident("theory name")?;
    let root = parse_proof_node(&mut p)?;
    p.finish()?;
    Ok(ProofFile { name, theory, root })
}

fn parse_proof_node(p: &mut Parser) -> ParseResult<RawProofNode> {
    let start = p.span();
    p.expect(TokenKind::LParen, "`(` starting a proof node")?;
    let rule = p.ident("rule tag")?;
    // (seq (ctx (x T) ...) LHS RHS)
    p.expect(TokenKind::LParen, "`(` starting the sequent")?;
    p.keyword("seq")?;
    let ctx = parse_sexp_ctx(p)?;
    let lhs = parse_sexp_formula(p)?;
    let rhs = parse_sexp_formula(p)?;
    p.expect(TokenKind::RParen, "`)` closing the sequent")?;
    let mut index = None;
    let mut middle = None;
    match rule.as_str() {
        "or-proj" | "and-proj" => index = Some(p.number("projection index")?),
        "exists-coadj" | "forall-coadj" => index = Some(p.number("extension length")?),
        "trans" => middle = Some(parse_sexp_formula(p)?),
        _ => {}
    }
    let mut children = Vec::new();
    while *p.peek() == TokenKind::LParen {
        children.push(parse_proof_node(p)?);
    }
    p.expect(TokenKind::RParen, "`)` closing the proof node")?;
    Ok(RawProofNode {
        rule,
        ctx,
        lhs,
        rhs,
        index,
        middle,
        children,
        span: start.join(p.prev_span()),
    })
}

fn parse_sexp_ctx(p: &mut Parser) -> ParseResult<Vec<(String, RawType)>> {
    p.expect(TokenKind::LParen, "`(` starting the context")?;
    p.keyword("ctx")?;
    let mut entries = Vec::new();
    while p.eat(TokenKind::LParen) {
        let var = p.ident("variable name")?;
        let ty = parse_sexp_type(p)?;
        p.expect(TokenKind::RParen, "`)`")?;
        entries.push((var, ty));
    }
    p.expect(TokenKind::RParen, "`)` closing the context")?;
    Ok(entries)
}

fn parse_sexp_type(p: &mut Parser) -> ParseResult<RawType> {
    if p.eat(TokenKind::LParen) {
        let sort = p.ident("sort name")?;
        let mut args = Vec::new();
        while *p.peek() != TokenKind::RParen {
            args.push(parse_sexp_term(p)?);
        }
        p.bump();
        Ok(RawType { sort, args })
    } else {
        let sort = p.ident("sort name")?;
        Ok(RawType { sort, args: vec![] })
    }
}

fn parse_sexp_term(p: &mut Parser) -> ParseResult<RawTerm> {
    if p.eat(TokenKind::LParen) {
        let head = p.ident("operation name")?;
        let mut args = Vec::new();
        while *p.peek() != TokenKind::RParen {
            args.push(parse_sexp_term(p)?);
        }
        p.bump();
        Ok(RawTerm::App(head, args))
    } else {
        Ok(RawTerm::Ident(p.ident("term")?))
    }
}

fn parse_sexp_formula(p: &mut Parser) -> ParseResult<RawFormula> {
    if p.at_keyword("true") {
        p.bump();
        return Ok(RawFormula::Top);
    }
    if p.at_keyword("false") {
        p.bump();
        return Ok(RawFormula::Bot);
    }
    p.expect(TokenKind::LParen, "`(` starting a formula")?;
    let head = p.ident("connective")?;
    let out = match head.as_str() {
        "not" => RawFormula::Not(Box::new(parse_sexp_formula(p)?)),
        "and" | "or" => {
            let mut parts = Vec::new();
            while *p.peek() != TokenKind::RParen {
                parts.push(parse_sexp_formula(p)?);
            }
            if head == "and" {
                RawFormula::And(parts)
            } else {
                RawFormula::Or(parts)
            }
        }
        "exists" | "forall" => {
            p.expect(TokenKind::LParen, "`(` starting the telescope")?;
            let mut ext = Vec::new();
            while p.eat(TokenKind::LParen) {
                let var = p.ident("variable name")?;
                let ty = parse_sexp_type(p)?;
                p.expect(TokenKind::RParen, "`)`")?;
                ext.push((var, ty));
            }
            p.expect(TokenKind::RParen, "`)` closing the telescope")?;
            if ext.is_empty() {
                return p.fail("quantifier telescopes must bind at least one variable");
            }
            let body = Box::new(parse_sexp_formula(p)?);
            if head == "exists" {
                RawFormula::Exists { ext, body }
            } else {
                RawFormula::Forall { ext, body }
            }
        }
        other => return p.fail(format!("unknown connective `{other}`")),
    };
    p.expect(TokenKind::RParen, "`)` closing the formula")?;
    Ok(out)
}

// ---------------------------------------------------------------- suite config

#[derive(Clone, Debug, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_true")]
    pub exhaustive: bool,
    #[serde(default = "default_sample_cap")]
    pub sample_cap: usize,
    /// Formula names to include; empty means the full builtin corpus.
    #[serde(default)]
    pub formulas: Vec<String>,
}

fn default_true() -> bool {
    true
}

fn default_sample_cap() -> usize {
    10_000
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            exhaustive: true,
            sample_cap: default_sample_cap(),
            formulas: Vec::new(),
        }
    }
}
