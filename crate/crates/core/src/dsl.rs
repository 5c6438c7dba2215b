//! The `.cqg` text format.
//!
//! ```text
//! name su_q_2
//! [generators]
//! gen a star a* weight 2      # one generator per line, with its star partner
//! gen x, y star self          # self-adjoint generators may share a line
//! [relations]
//! g a -> q^-1 * a g           # oriented: every rhs monomial below the lhs
//! [comultiplication]
//! a |-> a (x) a - q * g* (x) g
//! [counit]
//! a |-> 1
//! [antipode]
//! a |-> a*
//! [coreps]
//! corep u 2                   # followed by one line per row, entries split by `,`
//! a, -q * g*
//! g, a*
//! ```
//!
//! Scalars use the syntax of [`Scalar`]'s `FromStr`; `q` and `i` are reserved. A name
//! followed directly by `*` is the star of that generator. Δ and ε may be given for one
//! generator of each star pair; κ must be given for every generator.

use crate::corep::Corep;
use crate::error::{CqgError, ParseErrorKind, Pos, Result};
use crate::hopf::{CqgAlgebra, HopfTables};
use crate::ncalg::{Generator, Legs, Letter, NcPoly, Presentation, Rule, TensorPoly, Word};
use crate::scalar::{Scalar, ScalarParser};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write;

/// A parsed document, before the algebra-level checks.
#[derive(Clone, Debug)]
pub struct CqgDocument {
    pub name: String,
    pub generators: Vec<Generator>,
    pub rules: Vec<Rule>,
    pub tables: HopfTables,
    pub coreps: Vec<(String, Vec<Vec<NcPoly>>)>,
}

fn perr(kind: ParseErrorKind, line: usize, col: usize, msg: impl Into<String>) -> CqgError {
    CqgError::Parse { kind, pos: Pos { line, col }, msg: msg.into() }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    /// Identifier with a directly attached postfix `*`.
    Ident(String, bool),
    Num,
    Op(u8),
    Tensor,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    start: usize,
    end: usize,
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_'
}

fn lex(s: &str, line: usize, col0: usize) -> Result<Vec<Token>> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < b.len() {
        let c = b[k];
        if c.is_ascii_whitespace() {
            k += 1;
        } else if s[k..].starts_with("(x)") {
            out.push(Token { tok: Tok::Tensor, start: k, end: k + 3 });
            k += 3;
        } else if is_ident_start(c) {
            let start = k;
            while k < b.len() && is_ident(b[k]) {
                k += 1;
            }
            let name = &s[start..k];
            let starred = name != "q" && name != "i" && b.get(k) == Some(&b'*');
            if starred {
                k += 1;
            }
            out.push(Token { tok: Tok::Ident(name.to_string(), starred), start, end: k });
        } else if c.is_ascii_digit() {
            let start = k;
            while k < b.len() && b[k].is_ascii_digit() {
                k += 1;
            }
            out.push(Token { tok: Tok::Num, start, end: k });
        } else if b"+-*/^()".contains(&c) {
            out.push(Token { tok: Tok::Op(c), start: k, end: k + 1 });
            k += 1;
        } else {
            return Err(perr(ParseErrorKind::Syntax, line, col0 + k, format!("unexpected `{}`", &s[k..].chars().next().unwrap())));
        }
    }
    Ok(out)
}

/// Parsing context for polynomial text on one line.
struct Line<'a> {
    src: &'a str,
    line: usize,
    col0: usize,
    gens: &'a BTreeMap<String, Letter>,
    stars: &'a [Letter],
}

impl<'a> Line<'a> {
    fn err(&self, kind: ParseErrorKind, at: usize, msg: impl Into<String>) -> CqgError {
        perr(kind, self.line, self.col0 + at, msg)
    }

    fn letter(&self, t: &Token) -> Result<Option<Letter>> {
        match &t.tok {
            Tok::Ident(n, star) if n != "q" && n != "i" => {
                let direct = if *star { self.gens.get(&format!("{}*", n)).copied() } else { None };
                if let Some(l) = direct {
                    return Ok(Some(l));
                }
                match self.gens.get(n) {
                    Some(&l) => Ok(Some(if *star { self.stars[l as usize] } else { l })),
                    None => Err(self.err(ParseErrorKind::UndeclaredGenerator, t.start, format!("undeclared generator `{}`", n))),
                }
            }
            _ => Ok(None),
        }
    }

    fn scalar(&self, toks: &[Token]) -> Result<Scalar> {
        match (toks.first(), toks.last()) {
            (Some(a), Some(b)) => ScalarParser::new(&self.src[a.start..b.end], self.line, self.col0 + a.start).parse_all(),
            _ => Ok(Scalar::one()),
        }
    }

    /// Split at top-level `+`/`-` (not after `^`, `*` or `/`), keeping the sign of each term.
    fn terms<'t>(&self, toks: &'t [Token]) -> Result<Vec<(bool, &'t [Token])>> {
        if toks.is_empty() {
            return Err(self.err(ParseErrorKind::Syntax, self.src.len(), "expected a polynomial"));
        }
        let mut out = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        let mut neg = false;
        for (k, t) in toks.iter().enumerate() {
            match t.tok {
                Tok::Op(b'(') => depth += 1,
                Tok::Op(b')') => depth -= 1,
                Tok::Op(c @ (b'+' | b'-')) if depth == 0 => {
                    let prev = if k == 0 { None } else { Some(&toks[k - 1].tok) };
                    if matches!(prev, Some(Tok::Op(b'^' | b'*' | b'/'))) {
                        continue;
                    }
                    if k > start {
                        out.push((neg, &toks[start..k]));
                    } else if k > 0 {
                        return Err(self.err(ParseErrorKind::Syntax, t.start, "missing term"));
                    }
                    neg = c == b'-';
                    start = k + 1;
                }
                _ => {}
            }
        }
        if start >= toks.len() {
            return Err(self.err(ParseErrorKind::Syntax, self.src.len(), "missing term"));
        }
        out.push((neg, &toks[start..]));
        Ok(out)
    }

    /// Coefficient tokens and the trailing word of generator names.
    fn split_word<'t>(&self, toks: &'t [Token]) -> Result<(&'t [Token], Word)> {
        let mut cut = toks.len();
        let mut letters = Vec::new();
        while cut > 0 {
            match self.letter(&toks[cut - 1])? {
                Some(l) => {
                    letters.push(l);
                    cut -= 1;
                }
                None => break,
            }
        }
        letters.reverse();
        for t in &toks[..cut] {
            if self.letter(t)?.is_some() {
                return Err(self.err(ParseErrorKind::Syntax, t.start, "coefficient must precede the word"));
            }
        }
        let mut coef = &toks[..cut];
        if !letters.is_empty() {
            if let Some(Token { tok: Tok::Op(b'*'), .. }) = coef.last() {
                coef = &coef[..coef.len() - 1];
            }
        }
        Ok((coef, Word::from_letters(&letters)))
    }

    fn poly(&self) -> Result<NcPoly> {
        let toks = lex(self.src, self.line, self.col0)?;
        let mut p = NcPoly::zero();
        for (neg, t) in self.terms(&toks)? {
            let (coef, w) = self.split_word(t)?;
            let c = self.scalar(coef)?;
            p.add_term(w, if neg { -c } else { c });
        }
        Ok(p)
    }

    fn tensor(&self) -> Result<TensorPoly> {
        let toks = lex(self.src, self.line, self.col0)?;
        let mut out: Option<TensorPoly> = None;
        for (neg, t) in self.terms(&toks)? {
            let pieces: Vec<&[Token]> = t.split(|x| x.tok == Tok::Tensor).collect();
            let (coef, first) = self.split_word(pieces[0])?;
            let mut c = self.scalar(coef)?;
            let mut legs: Legs = Legs::new();
            let leg = |w: Word, rest: &[Token]| -> Result<Word> {
                match rest {
                    [] => Ok(w),
                    [one] if one.tok == Tok::Num && &self.src[one.start..one.end] == "1" && w.is_empty() => Ok(w),
                    [x, ..] => Err(self.err(ParseErrorKind::Syntax, x.start, "tensor legs must be words or 1")),
                }
            };
            if first.is_empty() && !coef.is_empty() && pieces.len() > 1 {
                // `1 (x) a` or `2 * 1 (x) a`: the last coefficient token may be the leg `1`.
                let last = coef.last().unwrap();
                if last.tok == Tok::Num && &self.src[last.start..last.end] == "1" {
                    let mut rest = &coef[..coef.len() - 1];
                    if let Some(Token { tok: Tok::Op(b'*'), .. }) = rest.last() {
                        rest = &rest[..rest.len() - 1];
                    }
                    c = self.scalar(rest)?;
                }
            }
            legs.push(first);
            for piece in &pieces[1..] {
                let (pre, w) = self.split_word(piece)?;
                legs.push(leg(w, pre)?);
            }
            let t = out.get_or_insert_with(|| TensorPoly::zero(legs.len()));
            if t.arity() != legs.len() {
                return Err(self.err(ParseErrorKind::Syntax, 0, "terms have different numbers of legs"));
            }
            t.add_term(legs, if neg { -c } else { c });
        }
        Ok(out.unwrap())
    }
}

fn strip_comment(s: &str) -> &str {
    s.split('#').next().unwrap_or("")
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Generators,
    Relations,
    Comult,
    Counit,
    Antipode,
    Coreps,
}

/// Parse a document; generator references, tables and rule orientation are checked here.
pub fn parse(text: &str) -> Result<CqgDocument> {
    let mut doc = CqgDocument {
        name: "unnamed".into(),
        generators: Vec::new(),
        rules: Vec::new(),
        tables: HopfTables::default(),
        coreps: Vec::new(),
    };
    let mut section = Section::None;
    // Generator declarations with the line of each star reference.
    let mut star_names: Vec<(String, usize, usize)> = Vec::new();
    let mut gens: BTreeMap<String, Letter> = BTreeMap::new();
    let mut stars: Vec<Letter> = Vec::new();
    let mut bare: Option<Presentation> = None;
    let mut pending_corep: Option<(String, usize, Vec<Vec<NcPoly>>, usize)> = None;
    let mut last_line = 0;

    let lines: Vec<&str> = text.lines().collect();
    for (ln, raw) in lines.iter().enumerate() {
        let line = ln + 1;
        last_line = line;
        let body = strip_comment(raw);
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = body.len() - body.trim_start().len();
        let col = indent + 1;
        if trimmed.starts_with('[') {
            if let Some((name, dim, rows, l)) = &pending_corep {
                if rows.len() < *dim {
                    return Err(perr(ParseErrorKind::IncompleteTable, *l, 1, format!("corep {} has {} of {} rows", name, rows.len(), dim)));
                }
            }
            let s = match trimmed {
                "[generators]" => Section::Generators,
                "[relations]" => Section::Relations,
                "[comultiplication]" => Section::Comult,
                "[counit]" => Section::Counit,
                "[antipode]" => Section::Antipode,
                "[coreps]" => Section::Coreps,
                _ => return Err(perr(ParseErrorKind::Syntax, line, col, format!("unknown section {}", trimmed))),
            };
            if section == Section::Generators || (section == Section::None && s != Section::Generators) {
                finish_generators(&mut doc, &mut star_names, &mut gens, &mut stars)?;
            }
            section = s;
            if bare.is_none() && s != Section::Generators {
                bare = Some(Presentation::new(doc.generators.clone(), vec![])?);
            }
            continue;
        }
        match section {
            Section::None => {
                if let Some(n) = trimmed.strip_prefix("name ") {
                    doc.name = n.trim().to_string();
                } else if trimmed.starts_with("param ") {
                    let p = trimmed["param ".len()..].trim();
                    if p != "q" {
                        return Err(perr(ParseErrorKind::Syntax, line, col + 6, "only the parameter q is supported"));
                    }
                } else {
                    return Err(perr(ParseErrorKind::Syntax, line, col, "expected `name`, `param` or a section header"));
                }
            }
            Section::Generators => parse_gen_line(trimmed, line, col, &mut doc, &mut star_names)?,
            Section::Relations => {
                let (lhs, rhs, at) = split_arrow(body, "->", line)?;
                let ctx = Line { src: lhs, line, col0: 1, gens: &gens, stars: &stars };
                let lp = ctx.poly()?;
                let w = match lp.terms().next() {
                    Some((w, c)) if lp.len() == 1 && c.is_one() && !w.is_empty() => w.clone(),
                    _ => return Err(perr(ParseErrorKind::Syntax, line, col, "left-hand side must be a single word")),
                };
                let rctx = Line { src: rhs, line, col0: at, gens: &gens, stars: &stars };
                let rp = rctx.poly()?;
                let p = bare.as_ref().unwrap();
                for (m, _) in rp.terms() {
                    if p.cmp_monomial(m, &w) != Ordering::Less {
                        return Err(perr(
                            ParseErrorKind::RelationOrientationViolation,
                            line,
                            col,
                            format!("{} is not below {} in the monomial order", p.fmt_word(m), p.fmt_word(&w)),
                        ));
                    }
                }
                if doc.rules.iter().any(|r| r.lhs == w) {
                    return Err(perr(ParseErrorKind::Syntax, line, col, format!("second rule for {}", p.fmt_word(&w))));
                }
                doc.rules.push(Rule { lhs: w, rhs: rp });
            }
            Section::Comult | Section::Counit | Section::Antipode => {
                let (lhs, rhs, at) = split_arrow(body, "|->", line)?;
                let name = lhs.trim();
                let l = lookup(&gens, &stars, name, line, col)?;
                let ctx = Line { src: rhs, line, col0: at, gens: &gens, stars: &stars };
                let dup = match section {
                    Section::Comult => {
                        let t = ctx.tensor()?;
                        if t.arity() != 2 {
                            return Err(perr(ParseErrorKind::Syntax, line, at, "comultiplication needs two legs"));
                        }
                        doc.tables.delta.insert(l, t).is_some()
                    }
                    Section::Counit => {
                        let p = ctx.poly()?;
                        if !p.is_scalar() {
                            return Err(perr(ParseErrorKind::Syntax, line, at, "counit values are scalars"));
                        }
                        doc.tables.eps.insert(l, p.constant()).is_some()
                    }
                    _ => doc.tables.kappa.insert(l, ctx.poly()?).is_some(),
                };
                if dup {
                    return Err(perr(ParseErrorKind::Syntax, line, col, format!("second entry for {}", name)));
                }
            }
            Section::Coreps => {
                if let Some(rest) = trimmed.strip_prefix("corep ") {
                    if let Some((name, dim, rows, l)) = pending_corep.take() {
                        if rows.len() < dim {
                            return Err(perr(ParseErrorKind::IncompleteTable, l, 1, format!("corep {} has {} of {} rows", name, rows.len(), dim)));
                        }
                        doc.coreps.push((name, rows));
                    }
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    let dim = match parts.as_slice() {
                        [_, d] => d.parse::<usize>().ok().filter(|&d| d > 0),
                        _ => None,
                    }
                    .ok_or_else(|| perr(ParseErrorKind::Syntax, line, col, "expected `corep NAME DIM`"))?;
                    pending_corep = Some((parts[0].to_string(), dim, Vec::new(), line));
                } else {
                    let (name, dim, rows, _) = pending_corep
                        .as_mut()
                        .ok_or_else(|| perr(ParseErrorKind::Syntax, line, col, "matrix row outside a corep"))?;
                    if rows.len() == *dim {
                        return Err(perr(ParseErrorKind::Syntax, line, col, format!("corep {} has too many rows", name)));
                    }
                    let mut row = Vec::new();
                    let mut offset = 0;
                    for cell in body.split(',') {
                        let ctx = Line { src: cell, line, col0: offset + 1, gens: &gens, stars: &stars };
                        row.push(ctx.poly()?);
                        offset += cell.len() + 1;
                    }
                    if row.len() != *dim {
                        return Err(perr(ParseErrorKind::Syntax, line, col, format!("row has {} entries, expected {}", row.len(), dim)));
                    }
                    rows.push(row);
                }
            }
        }
    }
    if section == Section::Generators || section == Section::None {
        finish_generators(&mut doc, &mut star_names, &mut gens, &mut stars)?;
    }
    if let Some((name, dim, rows, l)) = pending_corep.take() {
        if rows.len() < dim {
            return Err(perr(ParseErrorKind::IncompleteTable, l, 1, format!("corep {} has {} of {} rows", name, rows.len(), dim)));
        }
        doc.coreps.push((name, rows));
    }
    // Completeness: Δ and ε for one of each star pair, κ for every generator.
    let end = last_line.max(1);
    for (k, g) in doc.generators.iter().enumerate() {
        let (l, s) = (k as Letter, g.star);
        let missing = if !doc.tables.delta.contains_key(&l) && !doc.tables.delta.contains_key(&s) {
            Some("comultiplication")
        } else if !doc.tables.eps.contains_key(&l) && !doc.tables.eps.contains_key(&s) {
            Some("counit")
        } else if !doc.tables.kappa.contains_key(&l) {
            Some("antipode")
        } else {
            None
        };
        if let Some(what) = missing {
            return Err(perr(ParseErrorKind::IncompleteTable, end, 1, format!("no {} entry for {}", what, g.name)));
        }
    }
    Ok(doc)
}

fn lookup(gens: &BTreeMap<String, Letter>, stars: &[Letter], name: &str, line: usize, col: usize) -> Result<Letter> {
    if let Some(&l) = gens.get(name) {
        return Ok(l);
    }
    if let Some(&l) = name.strip_suffix('*').and_then(|n| gens.get(n)) {
        return Ok(stars[l as usize]);
    }
    Err(perr(ParseErrorKind::UndeclaredGenerator, line, col, format!("undeclared generator `{}`", name)))
}

/// `(lhs, rhs, 1-based column of rhs)`.
fn split_arrow<'s>(body: &'s str, arrow: &str, line: usize) -> Result<(&'s str, &'s str, usize)> {
    let k = body.find(arrow).ok_or_else(|| perr(ParseErrorKind::Syntax, line, 1, format!("expected `{}`", arrow)))?;
    Ok((&body[..k], &body[k + arrow.len()..], k + arrow.len() + 1))
}

fn parse_gen_line(t: &str, line: usize, col: usize, doc: &mut CqgDocument, stars: &mut Vec<(String, usize, usize)>) -> Result<()> {
    let rest = t
        .strip_prefix("gen ")
        .ok_or_else(|| perr(ParseErrorKind::Syntax, line, col, "expected `gen NAME star NAME`"))?;
    let (names, tail) = rest
        .split_once(" star ")
        .ok_or_else(|| perr(ParseErrorKind::Syntax, line, col, "expected `star`"))?;
    let mut tail = tail.split_whitespace();
    let partner = tail.next().ok_or_else(|| perr(ParseErrorKind::Syntax, line, col, "missing star partner"))?;
    let weight = match (tail.next(), tail.next()) {
        (None, _) => 1,
        (Some("weight"), Some(w)) => w.parse().map_err(|_| perr(ParseErrorKind::Syntax, line, col, "weight must be an integer"))?,
        _ => return Err(perr(ParseErrorKind::Syntax, line, col, "expected `weight N`")),
    };
    let names: Vec<&str> = names.split(',').map(str::trim).collect();
    if names.len() > 1 && partner != "self" {
        return Err(perr(ParseErrorKind::Syntax, line, col, "a list of generators must be declared `star self`"));
    }
    for n in names {
        let valid = n.bytes().next().is_some_and(is_ident_start)
            && n.trim_end_matches('*').bytes().all(is_ident)
            && n.matches('*').count() <= 1;
        if !valid || n == "q" || n == "i" {
            return Err(perr(ParseErrorKind::Syntax, line, col, format!("invalid generator name `{}`", n)));
        }
        let p = if partner == "self" { n } else { partner };
        doc.generators.push(Generator { name: n.to_string(), star: 0, weight });
        stars.push((p.to_string(), line, col));
    }
    Ok(())
}

fn finish_generators(
    doc: &mut CqgDocument,
    star_names: &mut Vec<(String, usize, usize)>,
    gens: &mut BTreeMap<String, Letter>,
    stars: &mut Vec<Letter>,
) -> Result<()> {
    if !gens.is_empty() || star_names.is_empty() {
        return Ok(());
    }
    for (k, g) in doc.generators.iter().enumerate() {
        if gens.insert(g.name.clone(), k as Letter).is_some() {
            let (_, l, c) = &star_names[k];
            return Err(perr(ParseErrorKind::Syntax, *l, *c, format!("duplicate generator {}", g.name)));
        }
    }
    for (k, (p, l, c)) in star_names.iter().enumerate() {
        let s = *gens
            .get(p)
            .ok_or_else(|| perr(ParseErrorKind::UndeclaredGenerator, *l, *c, format!("undeclared star partner `{}`", p)))?;
        doc.generators[k].star = s;
        stars.push(s);
    }
    for (k, g) in doc.generators.iter().enumerate() {
        let s = g.star as usize;
        if doc.generators[s].star as usize != k || doc.generators[s].weight != g.weight {
            let (_, l, c) = &star_names[k];
            return Err(perr(ParseErrorKind::Syntax, *l, *c, format!("star pairing of {} is inconsistent", g.name)));
        }
    }
    Ok(())
}

impl CqgDocument {
    /// Build the algebra and run the Hopf-level load checks and the corep checks.
    pub fn into_algebra(self) -> Result<CqgAlgebra> {
        let pres = Presentation::new(self.generators, self.rules)?;
        let alg = CqgAlgebra::new(self.name, pres, self.tables)?;
        let mut fs = Vec::new();
        for (name, rows) in self.coreps {
            fs.push(Corep::new(&alg, rows)?.with_name(name));
        }
        alg.with_fundamentals(fs)
    }
}

/// Parse a polynomial over the generators of `p` (not normalized).
pub fn parse_poly(p: &Presentation, text: &str) -> Result<NcPoly> {
    let gens: BTreeMap<String, Letter> = p.generators().iter().enumerate().map(|(k, g)| (g.name.clone(), k as Letter)).collect();
    let stars: Vec<Letter> = p.generators().iter().map(|g| g.star).collect();
    Line { src: text, line: 1, col0: 1, gens: &gens, stars: &stars }.poly()
}

/// Parse and build.
pub fn load(text: &str) -> Result<CqgAlgebra> {
    parse(text)?.into_algebra()
}

/// Canonical text: generators in letter order, rules in presentation order, tables by
/// letter (Δ and ε for the first generator of each star pair).
pub fn serialize(alg: &CqgAlgebra) -> String {
    let p = alg.presentation();
    let mut out = String::new();
    let _ = writeln!(out, "name {}", alg.name());
    out.push_str("\n[generators]\n");
    for g in p.generators() {
        let partner = &p.generators()[g.star as usize].name;
        if g.weight == 1 {
            let _ = writeln!(out, "gen {} star {}", g.name, partner);
        } else {
            let _ = writeln!(out, "gen {} star {} weight {}", g.name, partner, g.weight);
        }
    }
    out.push_str("\n[relations]\n");
    for r in p.rules() {
        let _ = writeln!(out, "{} -> {}", p.fmt_word(&r.lhs), p.fmt_poly(&r.rhs));
    }
    let primary = |l: usize| p.generators()[l].star as usize >= l;
    out.push_str("\n[comultiplication]\n");
    for (l, d) in alg.delta_table().iter().enumerate().filter(|(l, _)| primary(*l)) {
        let _ = writeln!(out, "{} |-> {}", p.name(l as Letter), p.fmt_tensor(d));
    }
    out.push_str("\n[counit]\n");
    for (l, e) in alg.eps_table().iter().enumerate().filter(|(l, _)| primary(*l)) {
        let _ = writeln!(out, "{} |-> {}", p.name(l as Letter), p.fmt_poly(&NcPoly::scalar(e.clone())));
    }
    out.push_str("\n[antipode]\n");
    for (l, k) in alg.kappa_table().iter().enumerate() {
        let _ = writeln!(out, "{} |-> {}", p.name(l as Letter), p.fmt_poly(k));
    }
    if !alg.fundamentals().is_empty() {
        out.push_str("\n[coreps]\n");
        for (k, f) in alg.fundamentals().iter().enumerate() {
            let name = f.name().map(str::to_string).unwrap_or_else(|| format!("u{}", k + 1));
            let _ = writeln!(out, "corep {} {}", name, f.dim());
            for row in f.fmt_rows(p) {
                let _ = writeln!(out, "{}", row.join(", "));
            }
        }
    }
    out
}

/// Presentation, tables and fundamentals agree.
pub fn structurally_equal(a: &CqgAlgebra, b: &CqgAlgebra) -> bool {
    a.name() == b.name()
        && a.presentation() == b.presentation()
        && a.delta_table() == b.delta_table()
        && a.eps_table() == b.eps_table()
        && a.kappa_table() == b.kappa_table()
        && a.fundamentals().len() == b.fundamentals().len()
        && a.fundamentals().iter().zip(b.fundamentals()).all(|(x, y)| x.entries() == y.entries() && x.name() == y.name())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{by_name, su_q_2};

    const SU_Q_2: &str = include_str!("../data/su_q_2.cqg");

    fn kind(e: CqgError) -> (ParseErrorKind, usize, usize) {
        match e {
            CqgError::Parse { kind, pos, .. } => (kind, pos.line, pos.col),
            other => panic!("not a parse error: {:?}", other),
        }
    }

    #[test]
    fn shipped_file_matches_preset() {
        let alg = load(SU_Q_2).unwrap();
        assert!(structurally_equal(&alg, &su_q_2()));
        assert_eq!(serialize(&alg), SU_Q_2);
    }

    #[test]
    fn round_trips() {
        for name in ["su_q_2", "su_q_3", "a_u_i2", "c_z2", "c_s3", "cg_z4", "cg_q8"] {
            let alg = by_name(name).unwrap();
            let text = serialize(&alg);
            let back = load(&text).unwrap_or_else(|e| panic!("{}: {}\n{}", name, e, text));
            assert!(structurally_equal(&alg, &back), "{}", name);
            assert_eq!(serialize(&back), text);
        }
    }

    #[test]
    fn error_classes_with_positions() {
        let e = parse("[generators]\n[relations]\na -> 1\n").unwrap_err();
        assert_eq!(kind(e), (ParseErrorKind::UndeclaredGenerator, 3, 1));
        let e = parse("[generators]\ngen a star a*\ngen a* star a\n[relations]\na -> a* a\n").unwrap_err();
        assert_eq!(kind(e).0, ParseErrorKind::RelationOrientationViolation);
        let e = parse("[generators]\ngen a star a\n[relations]\na a -> 2 * + a\n").unwrap_err();
        assert_eq!(kind(e).0, ParseErrorKind::Syntax);
        let e = parse("[generators]\ngen a star a\n[comultiplication]\na |-> a (x) a\n[antipode]\na |-> a\n").unwrap_err();
        assert_eq!(kind(e).0, ParseErrorKind::IncompleteTable);
        let e = parse("[generators]\ngen a star a\n[relations]\na a -> 1 + (2 q\n").unwrap_err();
        let (k, l, c) = kind(e);
        assert_eq!((k, l), (ParseErrorKind::Syntax, 4));
        assert!(c > 8, "{}", c);
        let e = parse("[generators]\ngen a star b\n").unwrap_err();
        assert_eq!(kind(e).0, ParseErrorKind::UndeclaredGenerator);
    }

    #[test]
    fn expressions() {
        let alg = su_q_2();
        let p = alg.presentation();
        let x = parse_poly(p, "g a").unwrap();
        assert_eq!(p.fmt_poly(&p.normal_form(&x).unwrap()), "q^-1 * a g");
        let y = parse_poly(p, "a* a + q^2 * g* g").unwrap();
        assert_eq!(p.fmt_poly(&p.normal_form(&y).unwrap()), "1 + (-1 + q^2) * g g*");
        let e = parse_poly(p, "a b").unwrap_err();
        assert_eq!(kind(e), (ParseErrorKind::UndeclaredGenerator, 1, 3));
    }

    #[test]
    fn minimal_document() {
        let alg = load("name trivial\n").unwrap();
        assert_eq!(alg.presentation().ngens(), 0);
        assert_eq!(serialize(&alg), "name trivial\n\n[generators]\n\n[relations]\n\n[comultiplication]\n\n[counit]\n\n[antipode]\n");
        assert!(structurally_equal(&load(&serialize(&alg)).unwrap(), &alg));
    }

    #[test]
    fn load_checks_run() {
        let broken = SU_Q_2.replace("a |-> a (x) a - q * g* (x) g", "a |-> a (x) a");
        assert!(matches!(load(&broken), Err(CqgError::RelationNotPreserved(_)) | Err(CqgError::NotCorep(_))));
    }
}
