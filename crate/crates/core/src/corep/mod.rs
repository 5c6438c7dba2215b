//! Finite-dimensional corepresentations: verification, tensor products, direct sums,
//! adjoints, intertwiner spaces, unitarization and decomposition into irreducibles.

mod decompose;
mod unitarize;

pub use decompose::{
    fusion_json, Component, Decomposition, FusionEntry, FusionSummand, IrrepEntry, IrrepRegistry, Label,
};
pub use unitarize::{averaged_intertwiner, unitarize, unitarizing_form, NumericCorep, NumericPoly};

use crate::error::{CqgError, Result};
use crate::hopf::CqgAlgebra;
use crate::ncalg::{NcPoly, Presentation, TensorPoly, Word};
use crate::scalar::{Echelon, Matrix, Scalar};
use serde::Serialize;
use std::collections::BTreeMap;

/// Square matrix over the algebra with verification flags.
#[derive(Clone, Debug)]
pub struct Corep {
    dim: usize,
    entries: Vec<NcPoly>,
    name: Option<String>,
    verified_corep: bool,
    verified_unitary: bool,
}

impl PartialEq for Corep {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.entries == o.entries
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryFailure {
    pub p: usize,
    pub q: usize,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Wor1Report {
    pub dim: usize,
    /// Failures of `Σ_k κ(v_pk) v_kq = δ_pq`.
    pub left: Vec<EntryFailure>,
    /// Failures of `Σ_k v_pk κ(v_kq) = δ_pq`.
    pub right: Vec<EntryFailure>,
}

impl Wor1Report {
    pub fn passed(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }
}

impl Corep {
    /// Build from rows, normalizing entries. No verification.
    pub fn new(alg: &CqgAlgebra, rows: Vec<Vec<NcPoly>>) -> Result<Corep> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(CqgError::Dimension("corepresentation matrix must be square".into()));
        }
        let p = alg.presentation();
        let entries = rows.into_iter().flatten().map(|e| p.normal_form(&e)).collect::<Result<Vec<_>>>()?;
        Ok(Corep::from_entries(n, entries))
    }

    /// Row-major entries, assumed to be in normal form.
    pub fn from_entries(dim: usize, entries: Vec<NcPoly>) -> Corep {
        assert_eq!(entries.len(), dim * dim, "entry count must be dim^2");
        Corep { dim, entries, name: None, verified_corep: false, verified_unitary: false }
    }

    /// The 1×1 corepresentation (1).
    pub fn trivial() -> Corep {
        Corep {
            dim: 1,
            entries: vec![NcPoly::one()],
            name: Some("1".into()),
            verified_corep: true,
            verified_unitary: true,
        }
    }

    pub fn with_name(mut self, n: impl Into<String>) -> Corep {
        self.name = Some(n.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, p: usize, q: usize) -> &NcPoly {
        &self.entries[p * self.dim + q]
    }

    pub fn entries(&self) -> &[NcPoly] {
        &self.entries
    }

    pub fn is_verified_corep(&self) -> bool {
        self.verified_corep
    }

    pub fn is_verified_unitary(&self) -> bool {
        self.verified_unitary
    }

    /// Largest degree among the entries.
    pub fn degree(&self) -> usize {
        self.entries.iter().map(NcPoly::degree).max().unwrap_or(0)
    }

    /// Run both checks and record the results in the flags.
    pub fn mark_verified(mut self, alg: &CqgAlgebra) -> Corep {
        self.verified_corep = self.corep_witness(alg).is_ok();
        self.verified_unitary = self.verified_corep && self.unitary_witness(alg).is_ok();
        self
    }

    /// Check and flag; error when the comultiplication identity fails.
    pub fn verified(self, alg: &CqgAlgebra) -> Result<Corep> {
        if let Err((p, q, r)) = self.corep_witness(alg) {
            return Err(CqgError::NotCorep(format!("entry ({}, {}): residual {}", p + 1, q + 1, r)));
        }
        Ok(self.mark_verified(alg))
    }

    /// First `(p, q)` with `Δ(v_pq) ≠ Σ_k v_pk ⊗ v_kq`, with the residual.
    pub fn corep_witness(&self, alg: &CqgAlgebra) -> std::result::Result<(), (usize, usize, String)> {
        let pres = alg.presentation();
        let n = self.dim;
        for p in 0..n {
            for q in 0..n {
                let lhs = alg.comultiply(self.entry(p, q)).map_err(|e| (p, q, e.to_string()))?;
                let mut rhs = TensorPoly::zero(2);
                for k in 0..n {
                    rhs.add_scaled(&pres.tensor(&[self.entry(p, k), self.entry(k, q)]), &Scalar::one());
                }
                let d = lhs.sub(&rhs);
                if !d.is_zero() {
                    return Err((p, q, pres.fmt_tensor(&d)));
                }
            }
        }
        Ok(())
    }

    pub fn is_corep(&self, alg: &CqgAlgebra) -> bool {
        self.corep_witness(alg).is_ok()
    }

    /// First `(p, q)` where `v*v` or `vv*` differs from the identity.
    pub fn unitary_witness(&self, alg: &CqgAlgebra) -> std::result::Result<(), (usize, usize, String)> {
        let pres = alg.presentation();
        pres.ensure_certified(2 * self.degree()).map_err(|e| (0, 0, e.to_string()))?;
        let vs = self.star_matrix(pres);
        for (a, b) in [(&vs, self), (self, &vs)] {
            let prod = a.mul(b, pres);
            for p in 0..self.dim {
                for q in 0..self.dim {
                    let mut d = prod.entry(p, q).clone();
                    if p == q {
                        d = d.sub(&NcPoly::one());
                    }
                    if !d.is_zero() {
                        return Err((p, q, pres.fmt_poly(&d)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_unitary(&self, alg: &CqgAlgebra) -> bool {
        self.unitary_witness(alg).is_ok()
    }

    /// `v*`: transpose with entrywise star (not itself a corepresentation in general).
    pub fn star_matrix(&self, pres: &Presentation) -> Corep {
        let n = self.dim;
        let mut e = Vec::with_capacity(n * n);
        for p in 0..n {
            for q in 0..n {
                e.push(pres.star(self.entry(q, p)));
            }
        }
        Corep::from_entries(n, e)
    }

    /// Matrix product over the algebra.
    pub fn mul(&self, o: &Corep, pres: &Presentation) -> Corep {
        let n = self.dim;
        assert_eq!(n, o.dim, "dimension mismatch");
        let mut e = Vec::with_capacity(n * n);
        for p in 0..n {
            for q in 0..n {
                let mut acc = NcPoly::zero();
                for k in 0..n {
                    acc = acc.add(&pres.mul(self.entry(p, k), o.entry(k, q)));
                }
                e.push(acc);
            }
        }
        Corep::from_entries(n, e)
    }

    /// `v ⊤ w` with entry `((p,q),(r,s)) = v_pr w_qs`.
    pub fn tensor(&self, w: &Corep, alg: &CqgAlgebra) -> Corep {
        let pres = alg.presentation();
        let (n, m) = (self.dim, w.dim);
        let mut e = Vec::with_capacity(n * n * m * m);
        for p in 0..n {
            for q in 0..m {
                for r in 0..n {
                    for s in 0..m {
                        e.push(pres.mul(self.entry(p, r), w.entry(q, s)));
                    }
                }
            }
        }
        let mut t = Corep::from_entries(n * m, e);
        t.verified_corep = self.verified_corep && w.verified_corep;
        t.verified_unitary = self.verified_unitary && w.verified_unitary;
        t
    }

    pub fn direct_sum(&self, w: &Corep) -> Corep {
        let (n, m) = (self.dim, w.dim);
        let d = n + m;
        let mut e = vec![NcPoly::zero(); d * d];
        for p in 0..n {
            for q in 0..n {
                e[p * d + q] = self.entry(p, q).clone();
            }
        }
        for p in 0..m {
            for q in 0..m {
                e[(n + p) * d + n + q] = w.entry(p, q).clone();
            }
        }
        let mut s = Corep::from_entries(d, e);
        s.verified_corep = self.verified_corep && w.verified_corep;
        s.verified_unitary = self.verified_unitary && w.verified_unitary;
        s
    }

    /// `v̄` with entry `(p, q) = v_pq*`.
    pub fn adjoint(&self, alg: &CqgAlgebra) -> Corep {
        let pres = alg.presentation();
        let mut a = Corep::from_entries(self.dim, self.entries.iter().map(|x| pres.star(x)).collect());
        a.verified_corep = self.verified_corep;
        a
    }

    /// `L v R` for scalar matrices `L` (k×n) and `R` (n×k).
    pub fn sandwich(&self, l: &Matrix, r: &Matrix) -> Corep {
        let n = self.dim;
        let k = l.nrows();
        assert!(l.ncols() == n && r.nrows() == n && r.ncols() == k, "sandwich shape mismatch");
        let mut e = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let mut acc = NcPoly::zero();
                for a in 0..n {
                    if l.get(i, a).is_zero() {
                        continue;
                    }
                    for b in 0..n {
                        if r.get(b, j).is_zero() {
                            continue;
                        }
                        acc.add_scaled(self.entry(a, b), &(l.get(i, a) * r.get(b, j)));
                    }
                }
                e.push(acc);
            }
        }
        Corep::from_entries(k, e)
    }

    /// Evaluate `Σ_k κ(v_pk) v_kq` and `Σ_k v_pk κ(v_kq)` against `δ_pq`.
    pub fn verify_wor1_axiom3(&self, alg: &CqgAlgebra) -> Result<Wor1Report> {
        let pres = alg.presentation();
        let n = self.dim;
        let kappa = self.entries.iter().map(|x| alg.antipode(x)).collect::<Result<Vec<_>>>()?;
        let k = |p: usize, q: usize| &kappa[p * n + q];
        pres.ensure_certified(self.degree() + kappa.iter().map(NcPoly::degree).max().unwrap_or(0))?;
        let mut left = Vec::new();
        let mut right = Vec::new();
        for p in 0..n {
            for q in 0..n {
                let delta = if p == q { NcPoly::one() } else { NcPoly::zero() };
                let mut l = delta.neg();
                let mut r = delta.neg();
                for j in 0..n {
                    l = l.add(&pres.mul(k(p, j), self.entry(j, q)));
                    r = r.add(&pres.mul(self.entry(p, j), k(j, q)));
                }
                if !l.is_zero() {
                    left.push(EntryFailure { p, q, residual: pres.fmt_poly(&l) });
                }
                if !r.is_zero() {
                    right.push(EntryFailure { p, q, residual: pres.fmt_poly(&r) });
                }
            }
        }
        Ok(Wor1Report { dim: n, left, right })
    }

    /// Entries evaluated as text, row by row.
    pub fn fmt_rows(&self, pres: &Presentation) -> Vec<Vec<String>> {
        (0..self.dim).map(|p| (0..self.dim).map(|q| pres.fmt_poly(self.entry(p, q))).collect()).collect()
    }
}

/// Collects linear equations whose coefficients come from polynomial identities:
/// one equation per (index, monomial).
#[derive(Default)]
pub(crate) struct EquationCollector {
    rows: BTreeMap<(usize, Word), BTreeMap<usize, Scalar>>,
}

impl EquationCollector {
    /// Add `f · poly · x_var` to equation family `eq`.
    pub fn add(&mut self, eq: usize, poly: &NcPoly, var: usize, f: &Scalar) {
        for (w, c) in poly.terms() {
            let e = self.rows.entry((eq, w.clone())).or_default().entry(var).or_insert_with(Scalar::zero);
            *e += &(c * f);
        }
    }

    pub fn null_space(self, nvars: usize) -> Vec<Vec<Scalar>> {
        let mut e = Echelon::new(nvars);
        let mut seen = std::collections::HashSet::new();
        for (_, row) in self.rows {
            let row: Vec<(usize, Scalar)> = row.into_iter().filter(|(_, s)| !s.is_zero()).collect();
            if row.is_empty() || !seen.insert(row.clone()) {
                continue;
            }
            e.insert(row);
        }
        e.rref();
        e.null_space(nvars)
    }
}

/// Basis of `Mor(v, w) = {X : (X⊗1)v = w(X⊗1)}` as `dim w × dim v` scalar matrices.
pub fn intertwiners(v: &Corep, w: &Corep, alg: &CqgAlgebra) -> Result<Vec<Matrix>> {
    let pres = alg.presentation();
    pres.ensure_certified(v.degree().max(w.degree()))?;
    let (n, m) = (v.dim, w.dim);
    let mut eqs = EquationCollector::default();
    let one = Scalar::one();
    let minus = -Scalar::one();
    for i in 0..m {
        for j in 0..n {
            let eq = i * n + j;
            for k in 0..n {
                eqs.add(eq, v.entry(k, j), i * n + k, &one);
            }
            for k in 0..m {
                eqs.add(eq, w.entry(i, k), k * n + j, &minus);
            }
        }
    }
    let basis = eqs.null_space(m * n);
    Ok(basis.into_iter().map(|x| Matrix::from_fn(m, n, |i, j| x[i * n + j].clone())).collect())
}

/// `dim Mor(v, w)`.
pub fn mor_dim(v: &Corep, w: &Corep, alg: &CqgAlgebra) -> Result<usize> {
    Ok(intertwiners(v, w, alg)?.len())
}

/// Does `(X⊗1)v = w(X⊗1)` hold exactly?
pub fn is_intertwiner(x: &Matrix, v: &Corep, w: &Corep) -> bool {
    let (n, m) = (v.dim, w.dim);
    if x.nrows() != m || x.ncols() != n {
        return false;
    }
    for i in 0..m {
        for j in 0..n {
            let mut acc = NcPoly::zero();
            for k in 0..n {
                acc.add_scaled(v.entry(k, j), x.get(i, k));
            }
            for k in 0..m {
                acc.add_scaled(w.entry(i, k), &-x.get(k, j));
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn fundamental_is_unitary_corep() {
        let alg = presets::su_q_2();
        let u = &alg.fundamentals()[0];
        assert!(u.is_corep(&alg));
        assert!(u.is_unitary(&alg));
        assert!(Corep::trivial().is_corep(&alg));
        assert!(Corep::trivial().is_unitary(&alg));
    }

    #[test]
    fn diag_a_one_fails_at_first_entry() {
        let alg = presets::su_q_2();
        let a = alg.gen("a").unwrap();
        let v = Corep::new(&alg, vec![vec![a, NcPoly::zero()], vec![NcPoly::zero(), NcPoly::one()]]).unwrap();
        assert_eq!(v.corep_witness(&alg).unwrap_err().0, 0);
        assert_eq!(v.corep_witness(&alg).unwrap_err().1, 0);
    }

    #[test]
    fn adjoint_entries_and_involution() {
        let alg = presets::su_q_2();
        let u = &alg.fundamentals()[0];
        let ub = u.adjoint(&alg);
        let p = alg.presentation();
        assert_eq!(p.fmt_poly(ub.entry(0, 0)), "a*");
        assert_eq!(p.fmt_poly(ub.entry(1, 0)), "g*");
        assert_eq!(ub.adjoint(&alg), *u);
        assert!(ub.is_corep(&alg));
    }

    #[test]
    fn tensor_and_sum_are_coreps() {
        let alg = presets::su_q_2();
        let u = &alg.fundamentals()[0];
        let uu = u.tensor(u, &alg);
        assert_eq!(uu.dim(), 4);
        assert!(uu.is_corep(&alg));
        assert!(u.direct_sum(&Corep::trivial()).is_corep(&alg));
        assert_eq!(Corep::trivial().tensor(u, &alg), *u);
    }

    #[test]
    fn schur_counts() {
        let alg = presets::su_q_2();
        let u = &alg.fundamentals()[0];
        let end = intertwiners(u, u, &alg).unwrap();
        assert_eq!(end.len(), 1);
        assert!(end[0].is_scalar_multiple_of_identity());
        assert_eq!(mor_dim(u, &Corep::trivial(), &alg).unwrap(), 0);
        let uu = u.tensor(u, &alg);
        assert_eq!(mor_dim(&uu, &uu, &alg).unwrap(), 2);
    }

    #[test]
    fn wor1_fundamental_and_trivial() {
        let alg = presets::su_q_2();
        assert!(alg.fundamentals()[0].verify_wor1_axiom3(&alg).unwrap().passed());
        assert!(Corep::trivial().verify_wor1_axiom3(&alg).unwrap().passed());
    }
}
