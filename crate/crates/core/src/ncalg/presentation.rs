use super::poly::{Legs, Letter, NcPoly, TensorPoly, Word};
use crate::error::{CqgError, Result};
use crate::scalar::{Echelon, Scalar};
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, RwLock};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// Letter of the star partner (itself for self-adjoint generators).
    pub star: Letter,
    /// Tie-break weight in the monomial order; equal on star pairs.
    pub weight: u32,
}

/// Oriented rewrite rule `lhs -> rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: NcPoly,
}

#[derive(Clone, Debug, Default)]
struct Certificate {
    bound: usize,
    complete: bool,
    failure: Option<(usize, String)>,
}

/// One unresolved ambiguity found by [`Presentation::check_confluence`].
#[derive(Clone, Debug, Serialize)]
pub struct Ambiguity {
    pub word: String,
    pub length: usize,
    pub via_first: String,
    pub via_second: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfluenceReport {
    pub bound: usize,
    pub ambiguities_checked: usize,
    pub failures: Vec<Ambiguity>,
    /// Rules whose star image does not reduce to zero.
    pub star_failures: Vec<String>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.failures.is_empty() && self.star_failures.is_empty()
    }
}

/// Generators with star pairing, monomial order, and oriented rewrite rules.
///
/// The monomial order compares length, then total weight, then letters lexicographically
/// in declaration order. With all weights equal it is plain degree-lex.
#[derive(Debug)]
pub struct Presentation {
    gens: Vec<Generator>,
    rules: Vec<Rule>,
    lhs_index: HashMap<Word, usize>,
    lhs_lengths: Vec<usize>,
    basis: Option<String>,
    cache: RwLock<HashMap<Word, Arc<NcPoly>>>,
    cert: RwLock<Certificate>,
}

impl Clone for Presentation {
    fn clone(&self) -> Self {
        Presentation {
            gens: self.gens.clone(),
            rules: self.rules.clone(),
            lhs_index: self.lhs_index.clone(),
            lhs_lengths: self.lhs_lengths.clone(),
            basis: self.basis.clone(),
            cache: RwLock::new(HashMap::new()),
            cert: RwLock::new(self.cert.read().unwrap().clone()),
        }
    }
}

impl PartialEq for Presentation {
    fn eq(&self, o: &Self) -> bool {
        self.gens == o.gens && self.rules == o.rules
    }
}

impl Presentation {
    /// Validate and build. Every rule must strictly decrease the monomial order.
    pub fn new(gens: Vec<Generator>, rules: Vec<Rule>) -> Result<Self> {
        let n = gens.len();
        if n > Letter::MAX as usize {
            return Err(CqgError::Presentation("too many generators".into()));
        }
        let mut names = HashSet::new();
        for (k, g) in gens.iter().enumerate() {
            if !names.insert(g.name.clone()) {
                return Err(CqgError::Presentation(format!("duplicate generator {}", g.name)));
            }
            let s = g.star as usize;
            if s >= n || gens[s].star as usize != k {
                return Err(CqgError::Presentation(format!("star pairing of {} is not an involution", g.name)));
            }
            if gens[s].weight != g.weight {
                return Err(CqgError::Presentation(format!("weight of {} differs from its star", g.name)));
            }
        }
        let mut p = Presentation {
            gens,
            rules: Vec::new(),
            lhs_index: HashMap::new(),
            lhs_lengths: Vec::new(),
            basis: None,
            cache: RwLock::new(HashMap::new()),
            cert: RwLock::new(Certificate::default()),
        };
        for r in rules {
            p.add_rule(r)?;
        }
        Ok(p)
    }

    fn add_rule(&mut self, r: Rule) -> Result<()> {
        self.check_letters(&r.lhs)?;
        if r.lhs.is_empty() {
            return Err(CqgError::Presentation("rule with empty left-hand side".into()));
        }
        for (w, _) in r.rhs.terms() {
            self.check_letters(w)?;
            if self.cmp_monomial(w, &r.lhs) != Ordering::Less {
                return Err(CqgError::Presentation(format!(
                    "rule {} -> {} does not decrease the monomial order",
                    self.fmt_word(&r.lhs),
                    self.fmt_poly(&r.rhs)
                )));
            }
        }
        if self.lhs_index.contains_key(&r.lhs) {
            return Err(CqgError::Presentation(format!("duplicate rule for {}", self.fmt_word(&r.lhs))));
        }
        self.cache.write().unwrap().clear();
        self.lhs_index.insert(r.lhs.clone(), self.rules.len());
        if !self.lhs_lengths.contains(&r.lhs.len()) {
            self.lhs_lengths.push(r.lhs.len());
            self.lhs_lengths.sort_unstable();
        }
        self.rules.push(r);
        Ok(())
    }

    /// Orient a list of relations `p = 0` by linear interreduction.
    ///
    /// Relations are processed by increasing degree. At each degree they are first
    /// normalized by the rules found so far, then reduced against each other so that
    /// leading monomials are distinct; each leading monomial becomes a rule's left-hand
    /// side. This is not a completion procedure: confluence is checked separately.
    pub fn from_relations(gens: Vec<Generator>, relations: &[NcPoly]) -> Result<Self> {
        let mut p = Presentation::new(gens, Vec::new())?;
        let mut degrees: Vec<usize> = relations.iter().map(|r| r.degree()).collect();
        degrees.sort_unstable();
        degrees.dedup();
        for d in degrees {
            let batch: Vec<NcPoly> = relations
                .iter()
                .filter(|r| r.degree() == d)
                .map(|r| p.normal_form(r))
                .collect::<Result<_>>()?;
            let mut monos: Vec<Word> = batch
                .iter()
                .flat_map(|r| r.terms().map(|(w, _)| w.clone()))
                .collect::<HashSet<_>>()
                .into_iter()
                .collect();
            // Column 0 is the largest monomial.
            monos.sort_by(|a, b| p.cmp_monomial(b, a));
            let col: HashMap<Word, usize> = monos.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
            let mut ech = Echelon::new(monos.len());
            for r in &batch {
                let mut row: Vec<(usize, Scalar)> = r.terms().map(|(w, s)| (col[w], s.clone())).collect();
                row.sort_by_key(|x| x.0);
                ech.insert(row);
            }
            ech.rref();
            let cols: Vec<usize> = ech.pivot_columns().collect();
            for c in cols {
                let row = ech.pivot_row(c).unwrap();
                let lhs = monos[c].clone();
                if lhs.is_empty() {
                    return Err(CqgError::Presentation("relations collapse the algebra (1 = 0)".into()));
                }
                let rhs: NcPoly = row.iter().skip(1).map(|(j, s)| (monos[*j].clone(), -s)).collect();
                p.add_rule(Rule { lhs, rhs })?;
            }
        }
        Ok(p)
    }

    pub fn with_basis_description(mut self, d: impl Into<String>) -> Self {
        self.basis = Some(d.into());
        self
    }

    pub fn basis_description(&self) -> Option<&str> {
        self.basis.as_deref()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.gens[l as usize].name
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.gens.iter().position(|g| g.name == name).map(|k| k as Letter)
    }

    pub fn star_letter(&self, l: Letter) -> Letter {
        self.gens[l as usize].star
    }

    fn check_letters(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|&&l| l as usize >= self.gens.len()) {
            Some(l) => Err(CqgError::UnknownGenerator(format!("#{}", l))),
            None => Ok(()),
        }
    }

    pub fn weight(&self, w: &Word) -> u64 {
        w.letters().iter().map(|&l| self.gens[l as usize].weight as u64).sum()
    }

    pub fn cmp_monomial(&self, a: &Word, b: &Word) -> Ordering {
        a.len()
            .cmp(&b.len())
            .then_with(|| self.weight(a).cmp(&self.weight(b)))
            .then_with(|| a.letters().cmp(b.letters()))
    }

    pub fn star_word(&self, w: &Word) -> Word {
        Word(w.letters().iter().rev().map(|&l| self.gens[l as usize].star).collect())
    }

    /// Leftmost-innermost redex: smallest start, then shortest left-hand side.
    fn find_redex(&self, w: &Word, from: usize) -> Option<(usize, usize)> {
        let l = w.letters();
        for i in from..l.len() {
            for &len in &self.lhs_lengths {
                if i + len > l.len() {
                    break;
                }
                if let Some(&r) = self.lhs_index.get(&Word::from_letters(&l[i..i + len])) {
                    return Some((i, r));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_redex(w, 0).is_none()
    }

    fn splice(w: &Word, at: usize, len: usize, mid: &Word) -> Word {
        let l = w.letters();
        let mut v = smallvec::SmallVec::with_capacity(l.len() - len + mid.len());
        v.extend_from_slice(&l[..at]);
        v.extend_from_slice(mid.letters());
        v.extend_from_slice(&l[at + len..]);
        Word(v)
    }

    fn rewrite_at(&self, w: &Word, at: usize, rule: usize) -> NcPoly {
        let r = &self.rules[rule];
        let mut acc = NcPoly::zero();
        for (t, c) in r.rhs.terms() {
            let nw = Self::splice(w, at, r.lhs.len(), t);
            acc.add_scaled(&self.nf_word(&nw), c);
        }
        acc
    }

    /// Normal form of a single word (memoized).
    pub fn nf_word(&self, w: &Word) -> Arc<NcPoly> {
        if let Some(r) = self.cache.read().unwrap().get(w) {
            return r.clone();
        }
        let res = match self.find_redex(w, 0) {
            None => NcPoly::word(w.clone()),
            Some((at, r)) => self.rewrite_at(w, at, r),
        };
        let res = Arc::new(res);
        self.cache.write().unwrap().insert(w.clone(), res.clone());
        res
    }

    /// Normal form of an arbitrary combination of words.
    pub fn normal_form(&self, p: &NcPoly) -> Result<NcPoly> {
        let mut acc = NcPoly::zero();
        for (w, c) in p.terms() {
            self.check_letters(w)?;
            acc.add_scaled(&self.nf_word(w), c);
        }
        Ok(acc)
    }

    fn nf_unchecked(&self, p: &NcPoly) -> NcPoly {
        let mut acc = NcPoly::zero();
        for (w, c) in p.terms() {
            acc.add_scaled(&self.nf_word(w), c);
        }
        acc
    }

    pub fn mul_words(&self, a: &Word, b: &Word) -> Arc<NcPoly> {
        if a.is_empty() {
            return self.nf_word(b);
        }
        if b.is_empty() {
            return self.nf_word(a);
        }
        self.nf_word(&a.concat(b))
    }

    pub fn mul(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        let mut acc = NcPoly::zero();
        for (wa, ca) in a.terms() {
            for (wb, cb) in b.terms() {
                acc.add_scaled(&self.mul_words(wa, wb), &(ca * cb));
            }
        }
        acc
    }

    pub fn mul_all(&self, fs: &[&NcPoly]) -> NcPoly {
        let mut acc = NcPoly::one();
        for f in fs {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn star(&self, a: &NcPoly) -> NcPoly {
        let mut acc = NcPoly::zero();
        for (w, c) in a.terms() {
            acc.add_scaled(&self.nf_word(&self.star_word(w)), &c.conj());
        }
        acc
    }

    /// Normal-form words of length at most `d`, in storage order.
    pub fn normal_monomials(&self, d: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..d {
            let mut next = Vec::new();
            for w in &layer {
                for l in 0..self.gens.len() as Letter {
                    let mut nw = w.clone();
                    nw.0.push(l);
                    let start = nw.len().saturating_sub(self.lhs_lengths.last().copied().unwrap_or(0));
                    if self.find_redex(&nw, start).is_none() {
                        next.push(nw);
                    }
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Resolve every overlap and inclusion ambiguity of total length at most `bound`.
    pub fn check_confluence(&self, bound: usize) -> ConfluenceReport {
        let mut checked = 0;
        let mut failures = Vec::new();
        for (i, r1) in self.rules.iter().enumerate() {
            let a = r1.lhs.letters();
            for (j, r2) in self.rules.iter().enumerate() {
                let b = r2.lhs.letters();
                for k in 1..a.len().min(b.len()) {
                    if a.len() + b.len() - k > bound || a[a.len() - k..] != b[..k] {
                        continue;
                    }
                    checked += 1;
                    let suffix = Word::from_letters(&b[k..]);
                    let prefix = Word::from_letters(&a[..a.len() - k]);
                    let left = self.mul(&r1.rhs, &NcPoly::word(suffix));
                    let right = self.mul(&NcPoly::word(prefix), &r2.rhs);
                    if left != right {
                        failures.push(Ambiguity {
                            word: self.fmt_word(&r1.lhs.concat(&Word::from_letters(&b[k..]))),
                            length: a.len() + b.len() - k,
                            via_first: self.fmt_poly(&left),
                            via_second: self.fmt_poly(&right),
                        });
                    }
                }
                if i != j && b.len() < a.len() && a.len() <= bound {
                    for p in 0..=a.len() - b.len() {
                        if a[p..p + b.len()] != *b {
                            continue;
                        }
                        checked += 1;
                        let left = self.nf_unchecked(&r1.rhs);
                        let right = self.rewrite_at(&r1.lhs, p, j);
                        if left != right {
                            failures.push(Ambiguity {
                                word: self.fmt_word(&r1.lhs),
                                length: a.len(),
                                via_first: self.fmt_poly(&left),
                                via_second: self.fmt_poly(&right),
                            });
                        }
                    }
                }
            }
        }
        let mut star_failures = Vec::new();
        for r in &self.rules {
            let diff = self.star(&NcPoly::word(r.lhs.clone())).sub(&self.star(&r.rhs));
            if !diff.is_zero() {
                star_failures.push(format!(
                    "({} -> {})* leaves {}",
                    self.fmt_word(&r.lhs),
                    self.fmt_poly(&r.rhs),
                    self.fmt_poly(&diff)
                ));
            }
        }
        ConfluenceReport { bound, ambiguities_checked: checked, failures, star_failures }
    }

    /// Length beyond which no new ambiguities exist.
    pub fn max_ambiguity_length(&self) -> usize {
        (2 * self.lhs_lengths.last().copied().unwrap_or(1)).saturating_sub(1)
    }

    /// Certify confluence up to degree `d`, re-running the check when needed.
    ///
    /// Once every ambiguity resolves the certificate is complete (diamond lemma) and no
    /// further checks run.
    pub fn ensure_certified(&self, d: usize) -> Result<()> {
        {
            let c = self.cert.read().unwrap();
            if c.complete || d <= c.bound {
                return Ok(());
            }
            if let Some((f, msg)) = &c.failure {
                if d >= *f {
                    return Err(CqgError::DegreeExceedsCertificate { needed: d, reason: msg.clone() });
                }
            }
        }
        let bound = d.max(self.max_ambiguity_length());
        let rep = self.check_confluence(bound);
        let mut c = self.cert.write().unwrap();
        if rep.is_confluent() {
            c.bound = bound;
            c.complete = true;
            return Ok(());
        }
        // Find the smallest failing length and certify just below it.
        let fail_len = rep
            .failures
            .iter()
            .map(|a| a.length)
            .min()
            .unwrap_or(1);
        let msg = match rep.failures.first() {
            Some(a) => format!("ambiguity on `{}` does not resolve", a.word),
            None => rep.star_failures[0].clone(),
        };
        c.bound = c.bound.max(fail_len.saturating_sub(1));
        c.failure = Some((fail_len, msg.clone()));
        if d < fail_len {
            Ok(())
        } else {
            Err(CqgError::DegreeExceedsCertificate { needed: d, reason: msg })
        }
    }

    /// Certified degree, `None` when complete.
    pub fn certified_bound(&self) -> Option<usize> {
        let c = self.cert.read().unwrap();
        (!c.complete).then_some(c.bound)
    }

    pub fn t_normal(&self, t: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero(t.arity());
        for (legs, c) in t.terms() {
            let parts: Vec<Arc<NcPoly>> = legs.iter().map(|w| self.nf_word(w)).collect();
            let refs: Vec<&NcPoly> = parts.iter().map(|p| p.as_ref()).collect();
            out.add_scaled(&TensorPoly::simple(&refs), c);
        }
        out
    }

    pub fn t_mul(&self, a: &TensorPoly, b: &TensorPoly) -> TensorPoly {
        assert_eq!(a.arity(), b.arity(), "tensor arity mismatch");
        let mut out = TensorPoly::zero(a.arity());
        for (la, ca) in a.terms() {
            for (lb, cb) in b.terms() {
                let parts: Vec<Arc<NcPoly>> = la.iter().zip(lb.iter()).map(|(x, y)| self.mul_words(x, y)).collect();
                let refs: Vec<&NcPoly> = parts.iter().map(|p| p.as_ref()).collect();
                out.add_scaled(&TensorPoly::simple(&refs), &(ca * cb));
            }
        }
        out
    }

    pub fn t_star(&self, a: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero(a.arity());
        for (legs, c) in a.terms() {
            let parts: Vec<Arc<NcPoly>> = legs.iter().map(|w| self.nf_word(&self.star_word(w))).collect();
            let refs: Vec<&NcPoly> = parts.iter().map(|p| p.as_ref()).collect();
            out.add_scaled(&TensorPoly::simple(&refs), &c.conj());
        }
        out
    }

    pub fn fmt_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters().iter().map(|&l| self.name(l)).collect::<Vec<_>>().join(" ")
    }

    pub fn fmt_poly(&self, p: &NcPoly) -> String {
        fmt_terms(p.terms().map(|(w, s)| (if w.is_empty() { None } else { Some(self.fmt_word(w)) }, s)))
    }

    pub fn fmt_tensor(&self, t: &TensorPoly) -> String {
        fmt_terms(t.terms().map(|(legs, s)| {
            let body = legs.iter().map(|w| self.fmt_word(w)).collect::<Vec<_>>().join(" (x) ");
            (Some(body), s)
        }))
    }

    /// Tensor whose legs are given polynomials, each assumed normal.
    pub fn tensor(&self, legs: &[&NcPoly]) -> TensorPoly {
        TensorPoly::simple(legs)
    }

    /// Collapse legs by multiplication: `a ⊗ b ↦ ab`.
    pub fn t_multiply_legs(&self, t: &TensorPoly) -> NcPoly {
        let mut acc = NcPoly::zero();
        for (legs, c) in t.terms() {
            let mut p = NcPoly::one();
            for w in legs.iter() {
                p = self.mul(&p, &NcPoly::word(w.clone()));
            }
            acc.add_scaled(&p, c);
        }
        acc
    }

    /// Group a tensor by its leg `k`, returning, for each word in leg `k`, the remaining legs.
    pub fn t_split(&self, t: &TensorPoly, k: usize) -> BTreeMap<Word, TensorPoly> {
        let mut out: BTreeMap<Word, TensorPoly> = BTreeMap::new();
        for (legs, c) in t.terms() {
            let mut rest: Legs = legs.clone();
            let w = rest.remove(k);
            out.entry(w).or_insert_with(|| TensorPoly::zero(t.arity() - 1)).add_term(rest, c.clone());
        }
        out
    }
}

fn top_level_sign(s: &str) -> bool {
    let mut depth = 0i32;
    let b = s.as_bytes();
    for (k, &ch) in b.iter().enumerate() {
        match ch {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && k > 0 && b[k - 1] == b' ' => return true,
            _ => {}
        }
    }
    false
}

/// Shared term formatter: `coef * body` joined with signs.
pub(crate) fn fmt_terms<'a>(terms: impl Iterator<Item = (Option<String>, &'a Scalar)>) -> String {
    let mut out = String::new();
    let mut first = true;
    for (body, s) in terms {
        let text = s.to_string();
        let (neg, mag) = if let Some(rest) = text.strip_prefix('-') {
            if top_level_sign(rest) {
                (false, format!("({})", text))
            } else {
                (true, rest.to_string())
            }
        } else if top_level_sign(&text) {
            (false, format!("({})", text))
        } else {
            (false, text)
        };
        let piece = match body {
            None => mag,
            Some(b) if mag == "1" => b,
            Some(b) => format!("{} * {}", mag, b),
        };
        if first {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&piece);
        first = false;
    }
    if first {
        "0".to_string()
    } else {
        out
    }
}
