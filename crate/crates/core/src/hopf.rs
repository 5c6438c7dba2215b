//! Comultiplication, counit and antipode on a presented *-algebra, with exhaustive
//! bounded verification of the Hopf *-algebra axioms.

use crate::corep::Corep;
use crate::error::{CqgError, Result};
use crate::ncalg::{Legs, Letter, NcPoly, Presentation, TensorPoly, Word};
use crate::scalar::{Echelon, Scalar};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

/// A presented *-algebra with Δ, ε and κ given on generators.
#[derive(Debug)]
pub struct CqgAlgebra {
    name: String,
    pres: Arc<Presentation>,
    delta: Vec<TensorPoly>,
    eps: Vec<Scalar>,
    kappa: Vec<NcPoly>,
    fundamentals: Vec<Corep>,
    delta_cache: RwLock<HashMap<Word, Arc<TensorPoly>>>,
    kappa_cache: RwLock<HashMap<Word, Arc<NcPoly>>>,
}

impl Clone for CqgAlgebra {
    fn clone(&self) -> Self {
        CqgAlgebra {
            name: self.name.clone(),
            pres: self.pres.clone(),
            delta: self.delta.clone(),
            eps: self.eps.clone(),
            kappa: self.kappa.clone(),
            fundamentals: self.fundamentals.clone(),
            delta_cache: RwLock::new(HashMap::new()),
            kappa_cache: RwLock::new(HashMap::new()),
        }
    }
}

impl PartialEq for CqgAlgebra {
    fn eq(&self, o: &Self) -> bool {
        *self.pres == *o.pres && self.delta == o.delta && self.eps == o.eps && self.kappa == o.kappa
    }
}

/// Generator tables. Entries for a star partner may be omitted from `delta` and `eps`;
/// they are then derived as `t_star(Δ(g))` and `conj(ε(g))`. `kappa` must be complete.
#[derive(Clone, Debug, Default)]
pub struct HopfTables {
    pub delta: BTreeMap<Letter, TensorPoly>,
    pub eps: BTreeMap<Letter, Scalar>,
    pub kappa: BTreeMap<Letter, NcPoly>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AxiomFailure {
    pub axiom: String,
    pub monomial: String,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfReport {
    pub bound: usize,
    pub monomials_checked: usize,
    pub failures: Vec<AxiomFailure>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GaloisWitness {
    pub corep: usize,
    pub p: usize,
    pub q: usize,
    pub t1_ok: bool,
    pub t2_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GaloisReport {
    pub bound: usize,
    pub domain_dim: usize,
    pub t1_rank: usize,
    pub t2_rank: usize,
    pub witnesses: Vec<GaloisWitness>,
    /// Generators not in the span of 1 and the fundamental matrix coefficients.
    pub uncovered_generators: Vec<String>,
}

impl GaloisReport {
    pub fn passed(&self) -> bool {
        self.t1_rank == self.domain_dim
            && self.t2_rank == self.domain_dim
            && self.witnesses.iter().all(|w| w.t1_ok && w.t2_ok)
            && self.uncovered_generators.is_empty()
    }
}

impl CqgAlgebra {
    /// Assemble and check the tables: star compatibility of Δ and ε, completeness of κ,
    /// and that Δ and ε annihilate every rewrite rule.
    pub fn new(name: impl Into<String>, pres: Presentation, tables: HopfTables) -> Result<Self> {
        let n = pres.ngens();
        let mut delta: Vec<Option<TensorPoly>> = vec![None; n];
        let mut eps: Vec<Option<Scalar>> = vec![None; n];
        for (l, t) in &tables.delta {
            check_letter(&pres, *l)?;
            if t.arity() != 2 {
                return Err(CqgError::Presentation("comultiplication image must have arity 2".into()));
            }
            delta[*l as usize] = Some(pres.t_normal(t));
        }
        for (l, s) in &tables.eps {
            check_letter(&pres, *l)?;
            eps[*l as usize] = Some(s.clone());
        }
        for l in 0..n {
            let s = pres.star_letter(l as Letter) as usize;
            match (&delta[l], &delta[s]) {
                (Some(d), Some(ds)) => {
                    if pres.t_star(d) != *ds {
                        return Err(CqgError::Presentation(format!(
                            "comultiplication of {} is not the star of that of {}",
                            pres.name(s as Letter),
                            pres.name(l as Letter)
                        )));
                    }
                }
                (Some(d), None) => delta[s] = Some(pres.t_star(d)),
                (None, Some(_)) => {}
                (None, None) => {
                    return Err(CqgError::Presentation(format!(
                        "no comultiplication for {}",
                        pres.name(l as Letter)
                    )))
                }
            }
            match (&eps[l], &eps[s]) {
                (Some(e), Some(es)) => {
                    if e.conj() != *es {
                        return Err(CqgError::Presentation(format!(
                            "counit is not star-compatible on {}",
                            pres.name(l as Letter)
                        )));
                    }
                }
                (Some(e), None) => eps[s] = Some(e.conj()),
                (None, Some(_)) => {}
                (None, None) => {
                    return Err(CqgError::Presentation(format!("no counit for {}", pres.name(l as Letter))))
                }
            }
        }
        let mut kappa = Vec::with_capacity(n);
        for l in 0..n as Letter {
            match tables.kappa.get(&l) {
                Some(k) => kappa.push(pres.normal_form(k)?),
                None => return Err(CqgError::Presentation(format!("no antipode for {}", pres.name(l)))),
            }
        }
        let alg = CqgAlgebra {
            name: name.into(),
            pres: Arc::new(pres),
            delta: delta.into_iter().map(Option::unwrap).collect(),
            eps: eps.into_iter().map(Option::unwrap).collect(),
            kappa,
            fundamentals: Vec::new(),
            delta_cache: RwLock::new(HashMap::new()),
            kappa_cache: RwLock::new(HashMap::new()),
        };
        alg.check_relations()?;
        Ok(alg)
    }

    fn check_relations(&self) -> Result<()> {
        let p = &*self.pres;
        for r in p.rules() {
            let lhs = self.delta_free_word(&r.lhs);
            let mut rhs = TensorPoly::zero(2);
            for (w, c) in r.rhs.terms() {
                rhs.add_scaled(&self.delta_free_word(w), c);
            }
            let diff = lhs.sub(&rhs);
            if !diff.is_zero() {
                return Err(CqgError::RelationNotPreserved(format!(
                    "{} -> {}: residual {}",
                    p.fmt_word(&r.lhs),
                    p.fmt_poly(&r.rhs),
                    p.fmt_tensor(&diff)
                )));
            }
            let e = self.eps_word(&r.lhs) - self.counit_unchecked(&r.rhs);
            if !e.is_zero() {
                return Err(CqgError::RelationNotPreserved(format!(
                    "counit on {} -> {}: residual {}",
                    p.fmt_word(&r.lhs),
                    p.fmt_poly(&r.rhs),
                    e
                )));
            }
        }
        Ok(())
    }

    /// Attach the fundamental corepresentations; each must pass the corep check.
    pub fn with_fundamentals(mut self, fs: Vec<Corep>) -> Result<Self> {
        for f in &fs {
            if let Err((p, q, r)) = f.corep_witness(&self) {
                return Err(CqgError::NotCorep(format!(
                    "fundamental {} fails at ({}, {}): {}",
                    f.name().unwrap_or("?"),
                    p + 1,
                    q + 1,
                    r
                )));
            }
        }
        self.fundamentals = fs.into_iter().map(|f| f.mark_verified(&self)).collect();
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn presentation_arc(&self) -> Arc<Presentation> {
        self.pres.clone()
    }

    pub fn fundamentals(&self) -> &[Corep] {
        &self.fundamentals
    }

    pub fn delta_table(&self) -> &[TensorPoly] {
        &self.delta
    }

    pub fn eps_table(&self) -> &[Scalar] {
        &self.eps
    }

    pub fn kappa_table(&self) -> &[NcPoly] {
        &self.kappa
    }

    /// Replace one antipode entry without any checks (used to build corrupted fixtures).
    pub fn with_kappa_entry_unchecked(&self, l: Letter, k: NcPoly) -> CqgAlgebra {
        let mut a = self.clone();
        a.kappa[l as usize] = k;
        a
    }

    /// Shorthand: parse a generator name.
    pub fn gen(&self, name: &str) -> Result<NcPoly> {
        self.pres
            .letter(name)
            .map(NcPoly::letter)
            .ok_or_else(|| CqgError::UnknownGenerator(name.to_string()))
    }

    fn eps_word(&self, w: &Word) -> Scalar {
        let mut acc = Scalar::one();
        for &l in w.letters() {
            acc = &acc * &self.eps[l as usize];
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// Δ of an arbitrary (not necessarily normal) word, legs normalized.
    fn delta_free_word(&self, w: &Word) -> TensorPoly {
        let mut acc = TensorPoly::one(2);
        for &l in w.letters() {
            acc = self.pres.t_mul(&acc, &self.delta[l as usize]);
        }
        acc
    }

    /// Δ of a normal word, memoized on prefixes.
    pub fn delta_word(&self, w: &Word) -> Arc<TensorPoly> {
        if let Some(t) = self.delta_cache.read().unwrap().get(w) {
            return t.clone();
        }
        let res = match w.len() {
            0 => TensorPoly::one(2),
            1 => self.delta[w.letters()[0] as usize].clone(),
            n => {
                let head = Word::from_letters(&w.letters()[..n - 1]);
                let left = self.delta_word(&head);
                self.pres.t_mul(&left, &self.delta[w.letters()[n - 1] as usize])
            }
        };
        let res = Arc::new(res);
        self.delta_cache.write().unwrap().insert(w.clone(), res.clone());
        res
    }

    fn kappa_word(&self, w: &Word) -> Arc<NcPoly> {
        if let Some(t) = self.kappa_cache.read().unwrap().get(w) {
            return t.clone();
        }
        let res = match w.len() {
            0 => NcPoly::one(),
            1 => self.kappa[w.letters()[0] as usize].clone(),
            n => {
                let head = Word::from_letters(&w.letters()[..n - 1]);
                let k = self.kappa_word(&head);
                self.pres.mul(&self.kappa[w.letters()[n - 1] as usize], &k)
            }
        };
        let res = Arc::new(res);
        self.kappa_cache.write().unwrap().insert(w.clone(), res.clone());
        res
    }

    fn kappa_degree(&self) -> usize {
        self.kappa.iter().map(|k| k.degree()).max().unwrap_or(1).max(1)
    }

    /// Multiplicative extension of the Δ table.
    pub fn comultiply(&self, x: &NcPoly) -> Result<TensorPoly> {
        self.pres.ensure_certified(x.degree())?;
        let x = self.pres.normal_form(x)?;
        let mut acc = TensorPoly::zero(2);
        for (w, c) in x.terms() {
            acc.add_scaled(&self.delta_word(w), c);
        }
        Ok(acc)
    }

    pub fn counit(&self, x: &NcPoly) -> Result<Scalar> {
        self.pres.ensure_certified(x.degree())?;
        let x = self.pres.normal_form(x)?;
        Ok(self.counit_unchecked(&x))
    }

    fn counit_unchecked(&self, x: &NcPoly) -> Scalar {
        let mut acc = Scalar::zero();
        for (w, c) in x.terms() {
            acc += &(c * &self.eps_word(w));
        }
        acc
    }

    /// Linear, anti-multiplicative extension of the κ table.
    pub fn antipode(&self, x: &NcPoly) -> Result<NcPoly> {
        self.pres.ensure_certified(x.degree() * self.kappa_degree())?;
        let x = self.pres.normal_form(x)?;
        Ok(self.antipode_unchecked(&x))
    }

    fn antipode_unchecked(&self, x: &NcPoly) -> NcPoly {
        let mut acc = NcPoly::zero();
        for (w, c) in x.terms() {
            acc.add_scaled(&self.kappa_word(w), c);
        }
        acc
    }

    /// Apply Δ to leg `k` of a tensor, raising its arity by one.
    pub fn comultiply_leg(&self, t: &TensorPoly, k: usize) -> TensorPoly {
        let mut out = TensorPoly::zero(t.arity() + 1);
        for (legs, c) in t.terms() {
            let d = self.delta_word(&legs[k]);
            for (dl, dc) in d.terms() {
                let mut nl: Legs = Legs::new();
                for (i, w) in legs.iter().enumerate() {
                    if i == k {
                        nl.push(dl[0].clone());
                        nl.push(dl[1].clone());
                    } else {
                        nl.push(w.clone());
                    }
                }
                out.add_term(nl, c * dc);
            }
        }
        out
    }

    /// `m(f ⊗ g)` on an arity-2 tensor, where `f`, `g` act on words.
    fn contract(&self, t: &TensorPoly, f: impl Fn(&Word) -> NcPoly, g: impl Fn(&Word) -> NcPoly) -> NcPoly {
        let mut acc = NcPoly::zero();
        for (legs, c) in t.terms() {
            acc.add_scaled(&self.pres.mul(&f(&legs[0]), &g(&legs[1])), c);
        }
        acc
    }

    /// Exhaustive check of coassociativity, counit and antipode identities, and of
    /// `κ(κ(a*)*) = a`, on every normal monomial of degree at most `bound`.
    pub fn verify_hopf(&self, bound: usize) -> HopfReport {
        let p = &*self.pres;
        let mut failures = Vec::new();
        if let Err(e) = p.ensure_certified(2 * bound) {
            failures.push(AxiomFailure {
                axiom: "confluence".into(),
                monomial: "-".into(),
                residual: e.to_string(),
            });
            return HopfReport { bound, monomials_checked: 0, failures };
        }
        let monos = p.normal_monomials(bound);
        let word = |w: &Word| NcPoly::word(w.clone());
        for m in &monos {
            let a = NcPoly::word(m.clone());
            let mut fail = |axiom: &str, residual: String| {
                failures.push(AxiomFailure { axiom: axiom.into(), monomial: p.fmt_word(m), residual })
            };
            let d = self.delta_word(m);
            let lhs = self.comultiply_leg(&d, 0);
            let rhs = self.comultiply_leg(&d, 1);
            let diff = lhs.sub(&rhs);
            if !diff.is_zero() {
                fail("coassociativity", p.fmt_tensor(&diff));
            }
            let ea = self.eps_word(m);
            let left = self.contract(&d, |w| NcPoly::scalar(self.eps_word(w)), word).sub(&a);
            if !left.is_zero() {
                fail("counit_left", p.fmt_poly(&left));
            }
            let right = self.contract(&d, word, |w| NcPoly::scalar(self.eps_word(w))).sub(&a);
            if !right.is_zero() {
                fail("counit_right", p.fmt_poly(&right));
            }
            let unit = NcPoly::scalar(ea);
            let kl = self.contract(&d, |w| (*self.kappa_word(w)).clone(), word).sub(&unit);
            if !kl.is_zero() {
                fail("antipode_left", p.fmt_poly(&kl));
            }
            let kr = self.contract(&d, word, |w| (*self.kappa_word(w)).clone()).sub(&unit);
            if !kr.is_zero() {
                fail("antipode_right", p.fmt_poly(&kr));
            }
            let inv = self
                .antipode_unchecked(&p.star(&self.antipode_unchecked(&p.star(&a))))
                .sub(&a);
            if !inv.is_zero() {
                fail("antipode_star_involution", p.fmt_poly(&inv));
            }
        }
        HopfReport { bound, monomials_checked: monos.len(), failures }
    }

    /// Injectivity of `T1: x⊗y ↦ Δ(x)(1⊗y)` and `T2: x⊗y ↦ (x⊗1)Δ(y)` on pairs of normal
    /// monomials of degree at most `bound`, plus the explicit preimages of `v_pq ⊗ 1`
    /// and `1 ⊗ v_pq` for every fundamental corepresentation `v`.
    pub fn galois_maps(&self, bound: usize) -> Result<GaloisReport> {
        let p = &*self.pres;
        p.ensure_certified(2 * bound)?;
        let monos = p.normal_monomials(bound);
        let mut index: HashMap<Legs, usize> = HashMap::new();
        let mut e1 = Echelon::new(0);
        let mut e2 = Echelon::new(0);
        let mut cols1 = Vec::new();
        let mut cols2 = Vec::new();
        for x in &monos {
            for y in &monos {
                let one_y = TensorPoly::simple(&[&NcPoly::one(), &NcPoly::word(y.clone())]);
                let x_one = TensorPoly::simple(&[&NcPoly::word(x.clone()), &NcPoly::one()]);
                cols1.push(p.t_mul(&self.delta_word(x), &one_y));
                cols2.push(p.t_mul(&x_one, &self.delta_word(y)));
            }
        }
        for t in cols1.iter().chain(cols2.iter()) {
            for (legs, _) in t.terms() {
                let n = index.len();
                index.entry(legs.clone()).or_insert(n);
            }
        }
        let ncols = index.len();
        e1 = Echelon::new(ncols.max(e1.ncols()));
        e2 = Echelon::new(ncols.max(e2.ncols()));
        let to_row = |t: &TensorPoly| {
            let mut row: Vec<(usize, Scalar)> = t.terms().map(|(l, c)| (index[l], c.clone())).collect();
            row.sort_by_key(|x| x.0);
            row
        };
        for t in &cols1 {
            e1.insert(to_row(t));
        }
        for t in &cols2 {
            e2.insert(to_row(t));
        }
        let mut witnesses = Vec::new();
        for (ci, v) in self.fundamentals.iter().enumerate() {
            let n = v.dim();
            for a in 0..n {
                for b in 0..n {
                    let mut t1 = TensorPoly::zero(2);
                    let mut t2 = TensorPoly::zero(2);
                    for k in 0..n {
                        let kk = self.antipode_unchecked(v.entry(k, b));
                        let one_k = TensorPoly::simple(&[&NcPoly::one(), &kk]);
                        t1.add_scaled(&p.t_mul(&self.comultiply(v.entry(a, k))?, &one_k), &Scalar::one());
                        let kp = self.antipode_unchecked(v.entry(a, k));
                        let k_one = TensorPoly::simple(&[&kp, &NcPoly::one()]);
                        t2.add_scaled(&p.t_mul(&k_one, &self.comultiply(v.entry(k, b))?), &Scalar::one());
                    }
                    let t1_ok = t1 == TensorPoly::simple(&[v.entry(a, b), &NcPoly::one()]);
                    let t2_ok = t2 == TensorPoly::simple(&[&NcPoly::one(), v.entry(a, b)]);
                    witnesses.push(GaloisWitness { corep: ci, p: a, q: b, t1_ok, t2_ok });
                }
            }
        }
        let uncovered = self.uncovered_generators();
        Ok(GaloisReport {
            bound,
            domain_dim: monos.len() * monos.len(),
            t1_rank: e1.rank(),
            t2_rank: e2.rank(),
            witnesses,
            uncovered_generators: uncovered,
        })
    }

    fn uncovered_generators(&self) -> Vec<String> {
        let p = &*self.pres;
        let mut span: Vec<NcPoly> = vec![NcPoly::one()];
        for v in &self.fundamentals {
            span.extend(v.entries().iter().cloned());
        }
        let mut index: HashMap<Word, usize> = HashMap::new();
        let mut rows = Vec::new();
        for s in &span {
            let mut row = Vec::new();
            for (w, c) in s.terms() {
                let n = index.len();
                let k = *index.entry(w.clone()).or_insert(n);
                row.push((k, c.clone()));
            }
            rows.push(row);
        }
        let mut out = Vec::new();
        for l in 0..p.ngens() as Letter {
            let g = p.nf_word(&Word::letter(l));
            let mut idx = index.clone();
            let mut row_g = Vec::new();
            for (w, c) in g.terms() {
                let n = idx.len();
                let k = *idx.entry(w.clone()).or_insert(n);
                row_g.push((k, c.clone()));
            }
            let mut e = Echelon::new(idx.len());
            for r in &rows {
                let mut r = r.clone();
                r.sort_by_key(|x| x.0);
                e.insert(r);
            }
            row_g.sort_by_key(|x| x.0);
            if !e.reduce(row_g).is_empty() {
                out.push(p.name(l).to_string());
            }
        }
        out
    }
}

fn check_letter(p: &Presentation, l: Letter) -> Result<()> {
    if (l as usize) < p.ngens() {
        Ok(())
    } else {
        Err(CqgError::UnknownGenerator(format!("#{}", l)))
    }
}
