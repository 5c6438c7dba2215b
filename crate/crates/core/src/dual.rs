//! The dual discrete quantum group `B₀ = ⊕_α M_{n(α)}` over a registry snapshot.
//!
//! A dual element is a finitely supported family of blocks `X^α`, acting on matrix
//! coefficients by `ω(u^α_ij) = X^α_ij` and vanishing on the other blocks. Each basis
//! functional `ω^α_pq` is represented as `x ↦ h(a x)` by an element `a ∈ A₀`.
//!
//! Registry irreps need not be unitary. For `v` with invariant form `Y`
//! (`v*(Y⊗1)v = Y⊗1`) the orthogonality relations read `h(v_ip* v_jq) = Y_pq F_ij`,
//! which for unitary `v` (`Y = I`) is the usual `δ_pq F_ij`.

use crate::corep::{IrrepEntry, IrrepRegistry, Label};
use crate::error::{CqgError, Result};
use crate::haar::HaarTable;
use crate::hopf::CqgAlgebra;
use crate::ncalg::NcPoly;
use crate::scalar::{Matrix, Scalar};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

/// Finitely supported block matrix.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct DualElement {
    blocks: BTreeMap<Label, Matrix>,
}

impl DualElement {
    pub fn zero() -> Self {
        DualElement::default()
    }

    /// Single block; zero blocks are dropped.
    pub fn block(label: Label, x: Matrix) -> Self {
        let mut d = DualElement::zero();
        d.set(label, x);
        d
    }

    pub fn set(&mut self, label: Label, x: Matrix) {
        if x.is_zero() {
            self.blocks.remove(&label);
        } else {
            self.blocks.insert(label, x);
        }
    }

    pub fn get(&self, label: Label) -> Option<&Matrix> {
        self.blocks.get(&label)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&Label, &Matrix)> {
        self.blocks.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn support(&self) -> Vec<Label> {
        self.blocks.keys().copied().collect()
    }

    pub fn add(&self, o: &DualElement) -> DualElement {
        let mut out = self.clone();
        for (l, x) in &o.blocks {
            let sum = match out.blocks.get(l) {
                Some(y) => y.add(x),
                None => x.clone(),
            };
            out.set(*l, sum);
        }
        out
    }

    pub fn scale(&self, f: &Scalar) -> DualElement {
        let mut out = DualElement::zero();
        for (l, x) in &self.blocks {
            out.set(*l, x.scale(f));
        }
        out
    }
}

/// Per-block data: invariant form, orthogonality matrix and representing elements.
#[derive(Clone, Debug)]
pub struct DualBlock {
    pub label: Label,
    pub dim: usize,
    pub form: Matrix,
    pub form_inv: Matrix,
    /// `F` with `h(v_ip* v_jq) = Y_pq F_ij`.
    pub f: Matrix,
    /// `a^α_pq = Σ_kl (F⁻¹)_pk (Y⁻¹)_ql v_kl*`, indexed by `p*n + q`.
    pub reps: Vec<NcPoly>,
    pub conjugate: Label,
}

/// `F` with `h(v_ip* v_jq) = Y_pq F_ij`, checked for every index.
pub fn block_f_matrix(e: &IrrepEntry, alg: &CqgAlgebra, t: &HaarTable) -> Result<Matrix> {
    let (v, y) = (&e.corep, &e.form);
    let n = v.dim();
    let pres = alg.presentation();
    let vs = v.star_matrix(pres);
    let p0 = (0..n).find(|&p| !y.get(p, p).is_zero()).ok_or_else(|| {
        CqgError::InconsistentOrthogonality(format!("{}: invariant form has zero diagonal", e.label))
    })?;
    let y0 = y.get(p0, p0).inv()?;
    let mut f = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            f.set(i, j, &t.eval(&pres.mul(vs.entry(p0, i), v.entry(j, p0)))? * &y0);
        }
    }
    for i in 0..n {
        for j in 0..n {
            for p in 0..n {
                for q in 0..n {
                    let got = t.eval(&pres.mul(vs.entry(p, i), v.entry(j, q)))?;
                    if got != y.get(p, q) * f.get(i, j) {
                        return Err(CqgError::InconsistentOrthogonality(format!(
                            "{}: h(v_{}{}* v_{}{}) = {}, expected {}",
                            e.label,
                            i + 1,
                            p + 1,
                            j + 1,
                            q + 1,
                            got,
                            y.get(p, q) * f.get(i, j)
                        )));
                    }
                }
            }
        }
    }
    Ok(f)
}

/// `B₀` over a fixed registry snapshot and Haar table.
#[derive(Clone, Debug)]
pub struct DualContext {
    alg: CqgAlgebra,
    table: HaarTable,
    entries: Vec<IrrepEntry>,
    blocks: Vec<DualBlock>,
}

impl DualContext {
    /// Compute every block and run the pairing check `ω^α_pq(u^β_rs) = δ_αβ δ_pr δ_qs`.
    pub fn new(reg: &IrrepRegistry, alg: &CqgAlgebra, t: &HaarTable) -> Result<Self> {
        let pres = alg.presentation();
        let mut blocks = Vec::new();
        for e in reg.entries() {
            let n = e.corep.dim();
            let f = block_f_matrix(e, alg, t)?;
            let f_inv = f.inverse()?;
            let form_inv = e.form.inverse()?;
            let vs = e.corep.star_matrix(pres);
            let mut reps = Vec::with_capacity(n * n);
            for p in 0..n {
                for q in 0..n {
                    let mut a = NcPoly::zero();
                    for k in 0..n {
                        for l in 0..n {
                            let c = f_inv.get(p, k) * form_inv.get(q, l);
                            if !c.is_zero() {
                                a.add_scaled(vs.entry(l, k), &c);
                            }
                        }
                    }
                    reps.push(a);
                }
            }
            let conjugate = conjugate_label(e.label, reg, alg)?;
            blocks.push(DualBlock { label: e.label, dim: n, form: e.form.clone(), form_inv, f, reps, conjugate });
        }
        let ctx = DualContext { alg: alg.clone(), table: t.clone(), entries: reg.entries().to_vec(), blocks };
        if let Some(f) = ctx.pairing_failures()?.into_iter().next() {
            return Err(CqgError::InconsistentOrthogonality(f));
        }
        Ok(ctx)
    }

    pub fn algebra(&self) -> &CqgAlgebra {
        &self.alg
    }

    pub fn blocks(&self) -> &[DualBlock] {
        &self.blocks
    }

    pub fn labels(&self) -> Vec<Label> {
        self.blocks.iter().map(|b| b.label).collect()
    }

    fn index(&self, l: Label) -> Result<usize> {
        self.blocks.iter().position(|b| b.label == l).ok_or_else(|| CqgError::RegistryMismatch(l.to_string()))
    }

    pub fn block_of(&self, l: Label) -> Result<&DualBlock> {
        Ok(&self.blocks[self.index(l)?])
    }

    pub fn corep(&self, l: Label) -> Result<&crate::corep::Corep> {
        Ok(&self.entries[self.index(l)?].corep)
    }

    /// `ω^α_pq` (0-based indices).
    pub fn basis(&self, l: Label, p: usize, q: usize) -> Result<DualElement> {
        let n = self.block_of(l)?.dim;
        if p >= n || q >= n {
            return Err(CqgError::Dimension(format!("index ({}, {}) outside block {}", p, q, l)));
        }
        Ok(DualElement::block(l, Matrix::from_fn(n, n, |i, j| if i == p && j == q { Scalar::one() } else { Scalar::zero() })))
    }

    fn check(&self, w: &DualElement) -> Result<()> {
        for (l, x) in w.blocks() {
            let n = self.block_of(*l)?.dim;
            if x.nrows() != n || x.ncols() != n {
                return Err(CqgError::RegistryMismatch(format!("block {} has size {}×{}", l, x.nrows(), x.ncols())));
            }
        }
        Ok(())
    }

    /// Element of `A₀` representing `ω` through `x ↦ h(a x)`.
    pub fn representing(&self, w: &DualElement) -> Result<NcPoly> {
        self.check(w)?;
        let mut a = NcPoly::zero();
        for (l, x) in w.blocks() {
            let b = self.block_of(*l)?;
            for p in 0..b.dim {
                for q in 0..b.dim {
                    if !x.get(p, q).is_zero() {
                        a.add_scaled(&b.reps[p * b.dim + q], x.get(p, q));
                    }
                }
            }
        }
        Ok(a)
    }

    /// `ω(x) = h(a x)`.
    pub fn pair(&self, w: &DualElement, x: &NcPoly) -> Result<Scalar> {
        if x.is_zero() || w.is_zero() {
            self.check(w)?;
            return Ok(Scalar::zero());
        }
        let a = self.representing(w)?;
        self.table.eval(&self.alg.presentation().mul(&a, x))
    }

    /// Pairing of every basis functional with every matrix coefficient; failures listed.
    pub fn pairing_failures(&self) -> Result<Vec<String>> {
        let pres = self.alg.presentation();
        let mut out = Vec::new();
        for (bi, b) in self.blocks.iter().enumerate() {
            for pq in 0..b.dim * b.dim {
                for (ei, e) in self.entries.iter().enumerate() {
                    let m = e.corep.dim();
                    for rs in 0..m * m {
                        let got = self.table.eval(&pres.mul(&b.reps[pq], &e.corep.entries()[rs]))?;
                        let want = bi == ei && pq == rs;
                        if (want && !got.is_one()) || (!want && !got.is_zero()) {
                            out.push(format!(
                                "ω^{}_{}{}(u^{}_{}{}) = {}",
                                b.label,
                                pq / b.dim + 1,
                                pq % b.dim + 1,
                                e.label,
                                rs / m + 1,
                                rs % m + 1,
                                got
                            ));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Blockwise matrix product.
    pub fn convolve(&self, w: &DualElement, z: &DualElement) -> Result<DualElement> {
        self.check(w)?;
        self.check(z)?;
        let mut out = DualElement::zero();
        for (l, x) in w.blocks() {
            if let Some(y) = z.get(*l) {
                out.set(*l, x.mul(y));
            }
        }
        Ok(out)
    }

    /// `(ω⊗ψ)Δ(x)` by expanding `Δ(x)` and pairing each leg.
    pub fn convolve_eval(&self, w: &DualElement, z: &DualElement, x: &NcPoly) -> Result<Scalar> {
        let t = self.alg.comultiply(x)?;
        let mut acc = Scalar::zero();
        for (legs, c) in t.terms() {
            let l = self.pair(w, &NcPoly::word(legs[0].clone()))?;
            if l.is_zero() {
                continue;
            }
            acc += &(&(c * &l) * &self.pair(z, &NcPoly::word(legs[1].clone()))?);
        }
        Ok(acc)
    }

    /// `ω*`: blockwise `Y⁻¹ X† Y`, the conjugate transpose in the basis where `Y = I`.
    pub fn star(&self, w: &DualElement) -> Result<DualElement> {
        self.check(w)?;
        let mut out = DualElement::zero();
        for (l, x) in w.blocks() {
            let b = self.block_of(*l)?;
            out.set(*l, b.form_inv.mul(&x.adjoint()).mul(&b.form));
        }
        Ok(out)
    }

    /// `ω*(x) = conj(ω(κ(x)*))`.
    pub fn star_eval(&self, w: &DualElement, x: &NcPoly) -> Result<Scalar> {
        let k = self.alg.antipode(x)?;
        Ok(self.pair(w, &self.alg.presentation().star(&k))?.conj())
    }

    /// `Δ̂(ω)(a⊗b) = ω(ab)`.
    pub fn dual_comult_eval(&self, w: &DualElement, a: &NcPoly, b: &NcPoly) -> Result<Scalar> {
        self.pair(w, &self.alg.presentation().mul(a, b))
    }

    /// `Δ̂(ωψ)(a⊗b) = Σ Δ̂(ω)(a₁⊗b₁) Δ̂(ψ)(a₂⊗b₂)` on all pairs `a = u^β_ij`, `b = u^γ_kl`.
    pub fn dual_comult_multiplicative(&self, w: &DualElement, z: &DualElement, beta: Label, gamma: Label) -> Result<bool> {
        let vb = self.corep(beta)?;
        let vg = self.corep(gamma)?;
        let wz = self.convolve(w, z)?;
        let (nb, ng) = (vb.dim(), vg.dim());
        for i in 0..nb {
            for j in 0..nb {
                for k in 0..ng {
                    for l in 0..ng {
                        let lhs = self.dual_comult_eval(&wz, vb.entry(i, j), vg.entry(k, l))?;
                        let mut rhs = Scalar::zero();
                        for m in 0..nb {
                            for r in 0..ng {
                                let x = self.dual_comult_eval(w, vb.entry(i, m), vg.entry(k, r))?;
                                if x.is_zero() {
                                    continue;
                                }
                                rhs += &(&x * &self.dual_comult_eval(z, vb.entry(m, j), vg.entry(r, l))?);
                            }
                        }
                        if lhs != rhs {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// Does `ω` agree with the counit `ε(u^α_ij) = δ_ij` on every block of the snapshot?
    pub fn reproduces_counit(&self, w: &DualElement) -> Result<bool> {
        self.check(w)?;
        for b in &self.blocks {
            let id = Matrix::identity(b.dim);
            if w.get(b.label) != Some(&id) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `κ̂(ω) = ω∘κ`, computed through the pairing on every block.
    pub fn antipode(&self, w: &DualElement) -> Result<DualElement> {
        let mut out = DualElement::zero();
        for b in &self.blocks {
            let v = self.corep(b.label)?;
            let mut x = Matrix::zeros(b.dim, b.dim);
            for i in 0..b.dim {
                for j in 0..b.dim {
                    x.set(i, j, self.pair(w, &self.alg.antipode(v.entry(i, j))?)?);
                }
            }
            out.set(b.label, x);
        }
        Ok(out)
    }

    /// `K_α`: the element of block `ᾱ` with `⟨K_α, u^ᾱ_pq⟩ = F^ᾱ_qp`, together with the
    /// check `κ̂²(ω) = K⁻¹ωK` on every basis functional of block `ᾱ`. For a block with
    /// invariant form `Y` this is `Fᵀ Y`, the same element written in the basis of `v`.
    pub fn k_matrix(&self, l: Label) -> Result<KReport> {
        let conj = self.block_of(l)?.conjugate;
        let b = self.block_of(conj)?;
        let k = b.f.transpose().mul(&b.form);
        let k_inv = k.inverse()?;
        let mut failures = Vec::new();
        for p in 0..b.dim {
            for q in 0..b.dim {
                let w = self.basis(conj, p, q)?;
                let twice = self.antipode(&self.antipode(&w)?)?;
                let want = DualElement::block(conj, k_inv.mul(w.get(conj).unwrap()).mul(&k));
                if twice != want {
                    failures.push((p, q));
                }
            }
        }
        Ok(KReport { label: l, conjugate: conj, matrix: k, failures })
    }

    /// JSON: per block its dimension, form, F and conjugate; `K` matrices; conjugation map.
    pub fn to_json(&self) -> Result<Value> {
        let mut blocks = Map::new();
        let mut ks = Map::new();
        let mut conj = Map::new();
        for b in &self.blocks {
            blocks.insert(
                b.label.to_string(),
                json!({ "dim": b.dim, "form": matrix_json(&b.form), "f": matrix_json(&b.f), "unitary": b.form.is_identity() }),
            );
            let k = self.k_matrix(b.label)?;
            ks.insert(b.label.to_string(), json!({ "block": k.conjugate.to_string(), "matrix": matrix_json(&k.matrix), "kappa_sq_holds": k.passed() }));
            conj.insert(b.label.to_string(), Value::String(b.conjugate.to_string()));
        }
        Ok(json!({ "blocks": blocks, "k_matrices": ks, "conjugation_map": conj }))
    }
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.nrows()).map(|i| Value::Array((0..m.ncols()).map(|j| Value::String(m.get(i, j).to_string())).collect())).collect(),
    )
}

#[derive(Clone, Debug)]
pub struct KReport {
    pub label: Label,
    pub conjugate: Label,
    pub matrix: Matrix,
    /// Basis functionals `ω^ᾱ_pq` where `κ̂²(ω) ≠ K⁻¹ωK`.
    pub failures: Vec<(usize, usize)>,
}

impl KReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Register the conjugate class of every entry that lacks one.
pub fn close_under_conjugation(reg: &mut IrrepRegistry, alg: &CqgAlgebra) -> Result<()> {
    let mut k = 0;
    while k < reg.len() {
        let e = &reg.entries()[k];
        let (v, level) = (e.corep.adjoint(alg), e.level);
        if reg.identify(&v, alg)?.is_none() {
            reg.decompose(&v, level, alg)?;
        }
        k += 1;
    }
    Ok(())
}

/// `ᾱ` with `ū^α` equivalent to `u^ᾱ`, by intertwiner search in the registry.
pub fn conjugate_label(l: Label, reg: &IrrepRegistry, alg: &CqgAlgebra) -> Result<Label> {
    let v = &reg.get(l)?.corep;
    reg.identify(&v.adjoint(alg), alg)?
        .ok_or_else(|| CqgError::NotInRegistry(format!("conjugate of {} (extend the registry)", l)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::haar::compute_haar;
    use crate::presets::{c_of_group, cayley, su_q_2};

    fn su2_context(depth: usize) -> (CqgAlgebra, DualContext) {
        let alg = su_q_2();
        let mut reg = IrrepRegistry::new(&alg).unwrap();
        reg.fusion_table(&alg, depth).unwrap();
        let top = reg.entries().iter().map(|e| e.corep.degree()).max().unwrap();
        let t = compute_haar(&alg, 2 * top).unwrap();
        let ctx = DualContext::new(&reg, &alg, &t).unwrap();
        (alg, ctx)
    }

    fn all_basis(ctx: &DualContext) -> Vec<(Label, usize, usize, DualElement)> {
        let mut out = Vec::new();
        for b in ctx.blocks() {
            for p in 0..b.dim {
                for q in 0..b.dim {
                    out.push((b.label, p, q, ctx.basis(b.label, p, q).unwrap()));
                }
            }
        }
        out
    }

    #[test]
    fn su_q_2_blocks() {
        let (_, ctx) = su2_context(2);
        assert_eq!(ctx.labels().len(), 3);
        let u = ctx.blocks()[1].clone();
        let q2 = Scalar::q().pow(2).unwrap();
        let d = &q2 + &Scalar::one();
        assert_eq!(u.f, Matrix::diagonal(&[q2.checked_div(&d).unwrap(), d.inv().unwrap()]));
        assert_eq!(u.conjugate, u.label);
        // Unitary-block formula: a = Σ_k (F⁻¹)_pk (u_kq)*.
        let alg = ctx.algebra();
        let v = ctx.corep(u.label).unwrap();
        let f_inv = u.f.inverse().unwrap();
        for p in 0..2 {
            for q in 0..2 {
                let mut a = NcPoly::zero();
                for k in 0..2 {
                    a.add_scaled(&alg.presentation().star(v.entry(k, q)), f_inv.get(p, k));
                }
                assert_eq!(a, u.reps[p * 2 + q]);
            }
        }
        assert!(ctx.blocks().iter().any(|b| !b.form.is_identity()));
    }

    #[test]
    fn pairing_linearity_and_trivial_block() {
        let (_, ctx) = su2_context(1);
        let t = ctx.labels()[0];
        assert!(ctx.pair(&ctx.basis(t, 0, 0).unwrap(), &NcPoly::one()).unwrap().is_one());
        let u = ctx.labels()[1];
        let w = ctx.basis(u, 0, 1).unwrap();
        let x = ctx.corep(u).unwrap().entry(0, 1).clone();
        assert!(ctx.pair(&w, &x).unwrap().is_one());
        assert_eq!(ctx.pair(&w, &x.add(&x)).unwrap(), Scalar::from_int(2));
        assert!(ctx.pair(&w, &NcPoly::zero()).unwrap().is_zero());
    }

    #[test]
    fn convolution_star_and_comultiplication() {
        let (_, ctx) = su2_context(2);
        let basis = all_basis(&ctx);
        for (_, _, _, w) in &basis {
            let s = ctx.star(w).unwrap();
            assert_eq!(&ctx.star(&s).unwrap(), w);
            for b in ctx.blocks() {
                let v = ctx.corep(b.label).unwrap();
                for i in 0..b.dim {
                    for j in 0..b.dim {
                        let by_def = ctx.star_eval(w, v.entry(i, j)).unwrap();
                        assert_eq!(s.get(b.label).map(|m| m.get(i, j).clone()).unwrap_or_else(Scalar::zero), by_def);
                    }
                }
            }
        }
        for (la, p, q, w) in &basis {
            for (lb, r, s, z) in &basis {
                let prod = ctx.convolve(w, z).unwrap();
                if la == lb && q == r {
                    assert_eq!(prod, ctx.basis(*la, *p, *s).unwrap());
                } else {
                    assert!(prod.is_zero());
                }
                // The block law agrees with (ω⊗ψ)Δ on every matrix coefficient.
                for b in ctx.blocks() {
                    let v = ctx.corep(b.label).unwrap();
                    for i in 0..b.dim {
                        for j in 0..b.dim {
                            let got = prod.get(b.label).map(|m| m.get(i, j).clone()).unwrap_or_else(Scalar::zero);
                            assert_eq!(ctx.convolve_eval(w, z, v.entry(i, j)).unwrap(), got);
                        }
                    }
                }
                // The star reverses products.
                let lhs = ctx.star(&prod).unwrap();
                let rhs = ctx.convolve(&ctx.star(z).unwrap(), &ctx.star(w).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        let u = ctx.labels()[1];
        let w = ctx.basis(u, 0, 1).unwrap();
        let v = ctx.corep(u).unwrap();
        // u⊗u does not contain u, so ω^u vanishes on products of two entries of u.
        for k in 0..4 {
            for l in 0..4 {
                let x = v.entries()[k].clone();
                assert!(ctx.dual_comult_eval(&w, &x, &v.entries()[l]).unwrap().is_zero());
            }
        }
        assert!(ctx.dual_comult_eval(&w, v.entry(0, 1), &NcPoly::one()).unwrap().is_one());
        let one = NcPoly::one();
        let t = ctx.basis(ctx.labels()[0], 0, 0).unwrap();
        assert!(ctx.dual_comult_eval(&t, &one, &one).unwrap().is_one());
        let z = ctx.basis(u, 1, 1).unwrap();
        assert!(ctx.dual_comult_multiplicative(&w, &z, u, u).unwrap());
    }

    #[test]
    fn k_matrices_implement_kappa_squared() {
        let (_, ctx) = su2_context(2);
        for l in ctx.labels() {
            let k = ctx.k_matrix(l).unwrap();
            assert!(k.passed(), "{} {:?}", l, k.failures);
        }
        assert_eq!(ctx.k_matrix(ctx.labels()[0]).unwrap().matrix, Matrix::identity(1));
    }

    #[test]
    fn counit_is_not_finitely_supported() {
        let (_, small) = su2_context(1);
        let mut eps = DualElement::zero();
        for b in small.blocks() {
            eps.set(b.label, Matrix::identity(b.dim));
        }
        assert!(small.reproduces_counit(&eps).unwrap());
        // A larger snapshot has a block outside the support.
        let (_, big) = su2_context(2);
        assert!(!big.reproduces_counit(&eps).unwrap());
    }

    #[test]
    fn conjugation_closure() {
        let fa = c_of_group(&cayley("z4").unwrap()).unwrap();
        let alg = fa.hopf().unwrap();
        let mut reg = IrrepRegistry::new(alg).unwrap();
        assert_eq!(reg.len(), 2);
        assert!(conjugate_label(reg.entries()[1].label, &reg, alg).is_err());
        close_under_conjugation(&mut reg, alg).unwrap();
        assert_eq!(reg.len(), 3);
        for e in reg.entries() {
            conjugate_label(e.label, &reg, alg).unwrap();
        }
    }

    #[test]
    fn finite_groups() {
        for name in ["z4", "s3"] {
            let fa = c_of_group(&cayley(name).unwrap()).unwrap();
            let alg = fa.hopf().unwrap();
            let mut reg = IrrepRegistry::new(alg).unwrap();
            reg.close_finite(alg, fa.dim(), 4).unwrap();
            let t = compute_haar(alg, 2).unwrap();
            let ctx = DualContext::new(&reg, alg, &t).unwrap();
            for l in ctx.labels() {
                let k = ctx.k_matrix(l).unwrap();
                assert!(k.passed());
                assert!(k.matrix.is_scalar_multiple_of_identity());
            }
        }
        let fa = c_of_group(&cayley("z4").unwrap()).unwrap();
        let alg = fa.hopf().unwrap();
        let mut reg = IrrepRegistry::new(alg).unwrap();
        reg.close_finite(alg, 4, 4).unwrap();
        let chi = reg.find("u").unwrap().label;
        let conj = conjugate_label(chi, &reg, alg).unwrap();
        let chi3 = chi_power(&reg, alg, chi, 3);
        assert_eq!(conj, chi3);
    }

    fn chi_power(reg: &IrrepRegistry, alg: &CqgAlgebra, chi: Label, k: usize) -> Label {
        let v = &reg.get(chi).unwrap().corep;
        let mut w = v.clone();
        for _ in 1..k {
            w = w.tensor(v, alg);
        }
        reg.identify(&w, alg).unwrap().unwrap()
    }
}
