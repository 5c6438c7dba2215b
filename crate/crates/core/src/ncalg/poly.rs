use crate::scalar::Scalar;
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Index of a generator in its presentation.
pub type Letter = u16;

/// A word in the generators. Ordered by length, then lexicographically by letter index;
/// this is the storage order, not necessarily the presentation's monomial order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub SmallVec<[Letter; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_letters(l: &[Letter]) -> Self {
        Word(SmallVec::from_slice(l))
    }

    pub fn letter(l: Letter) -> Self {
        Word::from_letters(&[l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.len().cmp(&o.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Finite linear combination of words with nonzero coefficients.
///
/// Whether the words are normal forms depends on how the value was produced; the
/// arithmetic in [`crate::ncalg::Presentation`] always returns normal forms.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        NcPoly::scalar(Scalar::one())
    }

    pub fn scalar(s: Scalar) -> Self {
        NcPoly::term(Word::empty(), s)
    }

    pub fn word(w: Word) -> Self {
        NcPoly::term(w, Scalar::one())
    }

    pub fn letter(l: Letter) -> Self {
        NcPoly::word(Word::letter(l))
    }

    pub fn term(w: Word, s: Scalar) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, s);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Constant term.
    pub fn constant(&self) -> Scalar {
        self.coeff(&Word::empty())
    }

    /// Is this a scalar multiple of 1 (including 0)?
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|w| w.is_empty())
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(s);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &s;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// `self += f * o`.
    pub fn add_scaled(&mut self, o: &NcPoly, f: &Scalar) {
        if f.is_zero() {
            return;
        }
        for (w, s) in o.terms() {
            self.add_term(w.clone(), if f.is_one() { s.clone() } else { s * f });
        }
    }

    pub fn add(&self, o: &NcPoly) -> NcPoly {
        let mut r = self.clone();
        r.add_scaled(o, &Scalar::one());
        r
    }

    pub fn sub(&self, o: &NcPoly) -> NcPoly {
        let mut r = self.clone();
        r.add_scaled(o, &-Scalar::one());
        r
    }

    pub fn scale(&self, f: &Scalar) -> NcPoly {
        if f.is_zero() {
            return NcPoly::zero();
        }
        NcPoly { terms: self.terms.iter().map(|(w, s)| (w.clone(), s * f)).collect() }
    }

    pub fn neg(&self) -> NcPoly {
        self.scale(&-Scalar::one())
    }

    /// Apply `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> NcPoly {
        let mut r = NcPoly::zero();
        for (w, s) in self.terms() {
            r.add_term(w.clone(), f(s));
        }
        r
    }
}

impl FromIterator<(Word, Scalar)> for NcPoly {
    fn from_iter<I: IntoIterator<Item = (Word, Scalar)>>(it: I) -> Self {
        let mut p = NcPoly::zero();
        for (w, s) in it {
            p.add_term(w, s);
        }
        p
    }
}

/// Tensor legs of one term.
pub type Legs = SmallVec<[Word; 3]>;

/// Element of A⊗A (arity 2) or A⊗A⊗A (arity 3).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorPoly {
    arity: usize,
    terms: BTreeMap<Legs, Scalar>,
}

impl TensorPoly {
    pub fn zero(arity: usize) -> Self {
        TensorPoly { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        let mut t = TensorPoly::zero(arity);
        t.add_term((0..arity).map(|_| Word::empty()).collect(), Scalar::one());
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Legs, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, legs: &[Word]) -> Scalar {
        self.terms.get(&legs.iter().cloned().collect::<Legs>()).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, legs: Legs, s: Scalar) {
        assert_eq!(legs.len(), self.arity, "tensor arity mismatch");
        if s.is_zero() {
            return;
        }
        match self.terms.entry(legs) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(s);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &s;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, o: &TensorPoly, f: &Scalar) {
        assert_eq!(self.arity, o.arity, "tensor arity mismatch");
        for (l, s) in o.terms() {
            self.add_term(l.clone(), s * f);
        }
    }

    pub fn sub(&self, o: &TensorPoly) -> TensorPoly {
        let mut r = self.clone();
        r.add_scaled(o, &-Scalar::one());
        r
    }

    /// Simple tensor `p_1 ⊗ ... ⊗ p_k` of polynomials (no normalization).
    pub fn simple(legs: &[&NcPoly]) -> TensorPoly {
        let mut acc: Vec<(Legs, Scalar)> = vec![(Legs::new(), Scalar::one())];
        for p in legs {
            let mut next = Vec::new();
            for (l, s) in &acc {
                for (w, c) in p.terms() {
                    let mut l2 = l.clone();
                    l2.push(w.clone());
                    next.push((l2, s * c));
                }
            }
            acc = next;
        }
        let mut t = TensorPoly::zero(legs.len());
        for (l, s) in acc {
            t.add_term(l, s);
        }
        t
    }
}
