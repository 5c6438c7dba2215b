//! Finite quantum groups: structure tensors, the GNS space of the Haar state and the
//! regular representation as a multiplicative unitary.

use crate::corep::{intertwiners, Corep, IrrepRegistry};
use crate::error::{CqgError, Result};
use crate::haar::{min_hermitian_eigenvalue, POSITIVITY_TOL};
use crate::hopf::CqgAlgebra;
use crate::ncalg::{NcPoly, Word};
use crate::scalar::{Matrix, Scalar};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Sparse vector as (index, coefficient) pairs with nonzero coefficients.
pub type SparseVec = Vec<(usize, Scalar)>;

fn sparsify(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(k, s)| (k, s.clone())).collect()
}

fn add_into(acc: &mut [Scalar], v: &SparseVec, f: &Scalar) {
    for (k, s) in v {
        acc[*k] += &(s * f);
    }
}

/// Dense structure tensors, in the basis `b_0 … b_{N-1}`.
///
/// `mult[(a*N + b)*N + c]` is the coefficient of `b_c` in `b_a b_b`,
/// `delta[a*N*N + x*N + y]` that of `b_x ⊗ b_y` in `Δ(b_a)`,
/// `star[a*N + c]` and `antipode[a*N + c]` those of `b_c` in `b_a*` and `κ(b_a)`.
#[derive(Clone, Debug)]
pub struct FiniteAlgebraData {
    pub name: String,
    pub basis: Vec<String>,
    pub mult: Vec<Scalar>,
    pub star: Vec<Scalar>,
    pub delta: Vec<Scalar>,
    pub unit: Vec<Scalar>,
    pub counit: Vec<Scalar>,
    pub antipode: Vec<Scalar>,
}

/// The same algebra as a presented Hopf *-algebra, with basis elements as polynomials.
#[derive(Clone, Debug)]
struct View {
    alg: CqgAlgebra,
    polys: Vec<NcPoly>,
    monomials: Vec<Word>,
    /// Basis coordinates from monomial coordinates.
    to_basis: Matrix,
}

/// A finite quantum group with its exact Haar functional.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    name: String,
    basis: Vec<String>,
    mult: Vec<SparseVec>,
    star: Vec<SparseVec>,
    delta: Vec<SparseVec>,
    unit: Vec<Scalar>,
    counit: Vec<Scalar>,
    antipode: Vec<SparseVec>,
    haar: Vec<Scalar>,
    view: Option<View>,
}

impl FiniteAlgebra {
    /// Check associativity, the unit, the star, coassociativity, multiplicativity and
    /// star compatibility of Δ, the counit and antipode identities; then solve for the
    /// Haar functional and check it is unique and faithful.
    pub fn new(d: FiniteAlgebraData) -> Result<Self> {
        let n = d.basis.len();
        let sizes = [
            ("multiplication", d.mult.len(), n * n * n),
            ("star", d.star.len(), n * n),
            ("comultiplication", d.delta.len(), n * n * n),
            ("unit", d.unit.len(), n),
            ("counit", d.counit.len(), n),
            ("antipode", d.antipode.len(), n * n),
        ];
        for (what, got, want) in sizes {
            if got != want {
                return Err(CqgError::Dimension(format!("{} tensor has {} entries, expected {}", what, got, want)));
            }
        }
        let mut fa = FiniteAlgebra {
            name: d.name,
            basis: d.basis,
            mult: d.mult.chunks(n.max(1)).map(sparsify).collect(),
            star: d.star.chunks(n.max(1)).map(sparsify).collect(),
            delta: d.delta.chunks((n * n).max(1)).map(sparsify).collect(),
            unit: d.unit,
            counit: d.counit,
            antipode: d.antipode.chunks(n.max(1)).map(sparsify).collect(),
            haar: Vec::new(),
            view: None,
        };
        if n == 0 {
            return Err(CqgError::Dimension("empty basis".into()));
        }
        if let Some(f) = fa.load_failures().into_iter().next() {
            return Err(CqgError::Presentation(format!("{}: {}", fa.name, f)));
        }
        fa.haar = fa.solve_haar()?;
        let g = fa.gram();
        if g.rank() != n {
            return Err(CqgError::Haar("haar-not-faithful: Gram matrix is singular".into()));
        }
        let min = g.eval(Complex64::new(0.5, 0.0)).ok().and_then(|m| min_hermitian_eigenvalue(&m));
        if !min.is_some_and(|e| e > POSITIVITY_TOL) {
            return Err(CqgError::Haar("haar-not-faithful: Gram matrix is not positive definite".into()));
        }
        Ok(fa)
    }

    /// Structure tensors read off a presented algebra whose normal monomials are finite
    /// in number, in the normal-monomial basis.
    pub fn from_cqg(alg: &CqgAlgebra) -> Result<Self> {
        let monomials = finite_monomials(alg)?;
        let polys: Vec<NcPoly> = monomials.iter().map(|w| NcPoly::word(w.clone())).collect();
        let names = monomials.iter().map(|w| alg.presentation().fmt_word(w)).collect();
        Self::from_view(alg.name(), alg.clone(), polys, names)
    }

    /// Structure tensors of `alg` in the basis `polys`, which must span the algebra.
    pub fn from_view(name: &str, alg: CqgAlgebra, polys: Vec<NcPoly>, names: Vec<String>) -> Result<Self> {
        let view = View::new(alg, polys)?;
        let n = view.polys.len();
        let pres = view.alg.presentation();
        let mut mult = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                mult.extend(view.coords(&pres.mul(&view.polys[a], &view.polys[b]))?);
            }
        }
        let mut star = Vec::with_capacity(n * n);
        let mut antipode = Vec::with_capacity(n * n);
        let mut delta = Vec::with_capacity(n * n * n);
        let mut counit = Vec::with_capacity(n);
        for p in &view.polys {
            star.extend(view.coords(&pres.star(p))?);
            antipode.extend(view.coords(&view.alg.antipode(p)?)?);
            counit.push(view.alg.counit(p)?);
            let t = view.alg.comultiply(p)?;
            let mut d = vec![Scalar::zero(); n * n];
            for (legs, c) in t.terms() {
                let x = view.word_coords(&legs[0])?;
                let y = view.word_coords(&legs[1])?;
                for (i, xi) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                    for (j, yj) in y.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                        d[i * n + j] += &(&(xi * yj) * c);
                    }
                }
            }
            delta.extend(d);
        }
        let unit = view.coords(&NcPoly::one())?;
        let data =
            FiniteAlgebraData { name: name.to_string(), basis: names, mult, star, delta, unit, counit, antipode };
        let mut fa = FiniteAlgebra::new(data)?;
        fa.view = Some(view);
        Ok(fa)
    }

    /// Attach a presented view; its structure constants must agree with the tensors.
    pub fn with_view(mut self, alg: CqgAlgebra, polys: Vec<NcPoly>) -> Result<Self> {
        let other = FiniteAlgebra::from_view(&self.name, alg, polys, self.basis.clone())?;
        if let Some(f) = self.compare(&other).into_iter().next() {
            return Err(CqgError::Presentation(format!("{}: view disagrees with tensors: {}", self.name, f)));
        }
        self.view = other.view;
        Ok(self)
    }

    /// Differences between the structure tensors of two algebras on the same basis.
    pub fn compare(&self, o: &FiniteAlgebra) -> Vec<String> {
        let mut out = Vec::new();
        if self.dim() != o.dim() {
            return vec![format!("dimension {} vs {}", self.dim(), o.dim())];
        }
        let tables: [(&str, &Vec<SparseVec>, &Vec<SparseVec>); 4] = [
            ("multiplication", &self.mult, &o.mult),
            ("star", &self.star, &o.star),
            ("comultiplication", &self.delta, &o.delta),
            ("antipode", &self.antipode, &o.antipode),
        ];
        for (what, a, b) in tables {
            if let Some(k) = (0..a.len()).find(|&k| a[k] != b[k]) {
                out.push(format!("{} differs at entry {}", what, k));
            }
        }
        if self.unit != o.unit {
            out.push("unit differs".into());
        }
        if self.counit != o.counit {
            out.push("counit differs".into());
        }
        if self.haar != o.haar {
            out.push("Haar functional differs".into());
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn counit_vector(&self) -> &[Scalar] {
        &self.counit
    }

    /// `h(b_a)` for each basis element.
    pub fn haar(&self) -> &[Scalar] {
        &self.haar
    }

    /// `b_a b_b` in sparse basis coordinates.
    pub fn product_of(&self, a: usize, b: usize) -> &SparseVec {
        &self.mult[a * self.dim() + b]
    }

    /// `Δ(b_a)` over the index `x*N + y`.
    pub fn delta_of(&self, a: usize) -> &SparseVec {
        &self.delta[a]
    }

    pub fn star_of(&self, a: usize) -> &SparseVec {
        &self.star[a]
    }

    pub fn antipode_of(&self, a: usize) -> &SparseVec {
        &self.antipode[a]
    }

    pub fn basis_vector(&self, a: usize) -> Vec<Scalar> {
        (0..self.dim()).map(|k| if k == a { Scalar::one() } else { Scalar::zero() }).collect()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (a, xa) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                add_into(&mut out, self.product_of(a, b), &(xa * yb));
            }
        }
        out
    }

    /// Antilinear star.
    pub fn star(&self, x: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            add_into(&mut out, &self.star[a], &xa.conj());
        }
        out
    }

    /// `Δ(x)` as a dense vector over `x*N + y`.
    pub fn comultiply(&self, x: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n * n];
        for (a, xa) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            add_into(&mut out, &self.delta[a], xa);
        }
        out
    }

    pub fn counit(&self, x: &[Scalar]) -> Scalar {
        dot(&self.counit, x)
    }

    pub fn antipode(&self, x: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            add_into(&mut out, &self.antipode[a], xa);
        }
        out
    }

    pub fn haar_of(&self, x: &[Scalar]) -> Scalar {
        dot(&self.haar, x)
    }

    /// `G_ab = h(b_a* b_b)`.
    pub fn gram(&self) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |a, b| self.haar_of(&self.mul(&self.star(&self.basis_vector(a)), &self.basis_vector(b))))
    }

    /// Product in `A⊗A` of dense vectors over `x*N + y`.
    fn tensor_mul(&self, s: &[Scalar], t: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n * n];
        for (i, si) in s.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, tj) in t.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let f = si * tj;
                for (x, cx) in self.product_of(i / n, j / n) {
                    for (y, cy) in self.product_of(i % n, j % n) {
                        out[x * n + y] += &(&(cx * cy) * &f);
                    }
                }
            }
        }
        out
    }

    fn load_failures(&self) -> Vec<String> {
        let n = self.dim();
        let mut out = Vec::new();
        let e: Vec<Vec<Scalar>> = (0..n).map(|a| self.basis_vector(a)).collect();
        for a in 0..n {
            if self.mul(&self.unit, &e[a]) != e[a] || self.mul(&e[a], &self.unit) != e[a] {
                out.push(format!("unit fails on {}", self.basis[a]));
            }
            if self.star(&self.star(&e[a])) != e[a] {
                out.push(format!("star is not involutive on {}", self.basis[a]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(&e[a], &e[b]);
                if self.star(&ab) != self.mul(&self.star(&e[b]), &self.star(&e[a])) {
                    out.push(format!("star is not antimultiplicative on {} {}", self.basis[a], self.basis[b]));
                }
                for c in 0..n {
                    if self.mul(&ab, &e[c]) != self.mul(&e[a], &self.mul(&e[b], &e[c])) {
                        out.push(format!(
                            "associativity fails on {} {} {}",
                            self.basis[a], self.basis[b], self.basis[c]
                        ));
                    }
                }
                let lhs = self.comultiply(&ab);
                if lhs != self.tensor_mul(&self.comultiply(&e[a]), &self.comultiply(&e[b])) {
                    out.push(format!("comultiplication is not multiplicative on {} {}", self.basis[a], self.basis[b]));
                }
                if self.counit(&ab) != &self.counit[a] * &self.counit[b] {
                    out.push(format!("counit is not multiplicative on {} {}", self.basis[a], self.basis[b]));
                }
            }
        }
        let one_one: Vec<Scalar> = (0..n * n).map(|k| &self.unit[k / n] * &self.unit[k % n]).collect();
        if self.comultiply(&self.unit) != one_one {
            out.push("Δ(1) ≠ 1⊗1".into());
        }
        for a in 0..n {
            // (Δ⊗ι)Δ and (ι⊗Δ)Δ as vectors over x*N² + y*N + z.
            let mut left = vec![Scalar::zero(); n * n * n];
            let mut right = vec![Scalar::zero(); n * n * n];
            let mut star_d = vec![Scalar::zero(); n * n];
            let mut eps_l = vec![Scalar::zero(); n];
            let mut eps_r = vec![Scalar::zero(); n];
            let mut s_l = vec![Scalar::zero(); n];
            let mut s_r = vec![Scalar::zero(); n];
            for (k, c) in self.delta_of(a) {
                let (x, y) = (k / n, k % n);
                for (xy, c2) in self.delta_of(x) {
                    left[xy * n + y] += &(c * c2);
                }
                for (yz, c2) in self.delta_of(y) {
                    right[x * n * n + yz] += &(c * c2);
                }
                for (x2, sx) in &self.star[x] {
                    for (y2, sy) in &self.star[y] {
                        star_d[x2 * n + y2] += &(&c.conj() * &(sx * sy));
                    }
                }
                add_into(&mut eps_l, &vec![(y, Scalar::one())], &(c * &self.counit[x]));
                add_into(&mut eps_r, &vec![(x, Scalar::one())], &(c * &self.counit[y]));
                let sx = self.antipode(&e[x]);
                let sy = self.antipode(&e[y]);
                add_into(&mut s_l, &sparsify(&self.mul(&sx, &e[y])), c);
                add_into(&mut s_r, &sparsify(&self.mul(&e[x], &sy)), c);
            }
            if left != right {
                out.push(format!("coassociativity fails on {}", self.basis[a]));
            }
            if star_d != self.comultiply(&self.star(&e[a])) {
                out.push(format!("Δ is not a *-map on {}", self.basis[a]));
            }
            if eps_l != e[a] || eps_r != e[a] {
                out.push(format!("counit identity fails on {}", self.basis[a]));
            }
            let target: Vec<Scalar> = self.unit.iter().map(|u| u * &self.counit[a]).collect();
            if s_l != target || s_r != target {
                out.push(format!("antipode identity fails on {}", self.basis[a]));
            }
        }
        out
    }

    fn solve_haar(&self) -> Result<Vec<Scalar>> {
        let n = self.dim();
        // Rows: (ι⊗h)Δ(b_a) - h(b_a)1 and (h⊗ι)Δ(b_a) - h(b_a)1, coordinate by coordinate.
        let mut rows = Vec::new();
        for a in 0..n {
            for x in 0..n {
                let mut left = vec![Scalar::zero(); n];
                let mut right = vec![Scalar::zero(); n];
                for (k, c) in self.delta_of(a) {
                    if k / n == x {
                        left[k % n] += c;
                    }
                    if k % n == x {
                        right[k / n] += c;
                    }
                }
                left[a] -= &self.unit[x];
                right[a] -= &self.unit[x];
                rows.push(left);
                rows.push(right);
            }
        }
        let null = Matrix::from_rows(rows)?.kernel();
        if null.len() != 1 {
            return Err(CqgError::Haar(format!("non-unique solution: invariant functionals span {}", null.len())));
        }
        let h1 = dot(&null[0], &self.unit);
        let inv = h1.inv().map_err(|_| CqgError::Haar("invariant functional vanishes on 1".into()))?;
        Ok(null[0].iter().map(|s| s * &inv).collect())
    }

    /// The presented Hopf *-algebra, when one is attached.
    pub fn hopf(&self) -> Option<&CqgAlgebra> {
        self.view.as_ref().map(|v| &v.alg)
    }

    pub fn into_hopf(self) -> Result<CqgAlgebra> {
        self.view
            .map(|v| v.alg)
            .ok_or_else(|| CqgError::Presentation(format!("{} has no presented view", self.name)))
    }

    /// Basis element `a` as a polynomial in the view.
    pub fn basis_poly(&self, a: usize) -> Option<&NcPoly> {
        self.view.as_ref().map(|v| &v.polys[a])
    }

    pub fn to_poly(&self, x: &[Scalar]) -> Option<NcPoly> {
        let v = self.view.as_ref()?;
        let mut p = NcPoly::zero();
        for (a, c) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            p.add_scaled(&v.polys[a], c);
        }
        Some(p)
    }

    pub fn from_poly(&self, p: &NcPoly) -> Result<Vec<Scalar>> {
        let v = self.view.as_ref().ok_or_else(|| CqgError::Presentation(format!("{} has no presented view", self.name)))?;
        v.coords(p)
    }
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// All normal monomials, when there are finitely many (of length at most 16).
fn finite_monomials(alg: &CqgAlgebra) -> Result<Vec<Word>> {
    let pres = alg.presentation();
    for d in 1..=16 {
        pres.ensure_certified(2 * d + 2)?;
        let all = pres.normal_monomials(d + 1);
        if all.iter().all(|w| w.len() <= d) {
            return Ok(all);
        }
    }
    Err(CqgError::Dimension(format!("{} has normal monomials beyond length 16", alg.name())))
}

impl View {
    fn new(alg: CqgAlgebra, polys: Vec<NcPoly>) -> Result<View> {
        let monomials = finite_monomials(&alg)?;
        let n = monomials.len();
        if polys.len() != n {
            return Err(CqgError::Dimension(format!("{} basis elements for a {}-dimensional algebra", polys.len(), n)));
        }
        let index: BTreeMap<&Word, usize> = monomials.iter().enumerate().map(|(k, w)| (w, k)).collect();
        let mut m = Matrix::zeros(n, n);
        for (a, p) in polys.iter().enumerate() {
            let p = alg.presentation().normal_form(p)?;
            for (w, c) in p.terms() {
                m.set(index[w], a, c.clone());
            }
        }
        let to_basis = m.inverse().map_err(|_| CqgError::Singular("basis elements are linearly dependent".into()))?;
        Ok(View { alg, polys, monomials, to_basis })
    }

    fn coords(&self, p: &NcPoly) -> Result<Vec<Scalar>> {
        let p = self.alg.presentation().normal_form(p)?;
        let n = self.monomials.len();
        let mut mono = vec![Scalar::zero(); n];
        for (w, c) in p.terms() {
            let k = self
                .monomials
                .iter()
                .position(|m| m == w)
                .ok_or_else(|| CqgError::Dimension(format!("monomial outside the basis: {:?}", w)))?;
            mono[k] = c.clone();
        }
        Ok((0..n).map(|a| dot(&self.to_basis.row(a), &mono)).collect())
    }

    fn word_coords(&self, w: &Word) -> Result<Vec<Scalar>> {
        self.coords(&NcPoly::word(w.clone()))
    }
}

/// Sparse square matrix over `Scalar`.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    n: usize,
    rows: Vec<BTreeMap<usize, Scalar>>,
}

impl SparseMatrix {
    pub fn zeros(n: usize) -> Self {
        SparseMatrix { n, rows: vec![BTreeMap::new(); n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.rows[i].insert(i, Scalar::one());
        }
        m
    }

    pub fn from_dense(m: &Matrix) -> Self {
        let mut s = Self::zeros(m.nrows());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                if !m.get(i, j).is_zero() {
                    s.rows[i].insert(j, m.get(i, j).clone());
                }
            }
        }
        s
    }

    pub fn to_dense(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.rows[i].get(&j).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_at(&mut self, i: usize, j: usize, s: &Scalar) {
        let e = self.rows[i].entry(j).or_insert_with(Scalar::zero);
        *e += s;
        if e.is_zero() {
            self.rows[i].remove(&j);
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn mul(&self, o: &SparseMatrix) -> SparseMatrix {
        let mut out = Self::zeros(self.n);
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &o.rows[*k] {
                    *acc.entry(*j).or_insert_with(Scalar::zero) += &(a * b);
                }
            }
            acc.retain(|_, s| !s.is_zero());
            out.rows[i] = acc;
        }
        out
    }

    pub fn adjoint(&self) -> SparseMatrix {
        let mut out = Self::zeros(self.n);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, a) in row {
                out.rows[*j].insert(i, a.conj());
            }
        }
        out
    }

    pub fn kron(&self, o: &SparseMatrix) -> SparseMatrix {
        let m = o.n;
        let mut out = Self::zeros(self.n * m);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, a) in row {
                for (k, orow) in o.rows.iter().enumerate() {
                    for (l, b) in orow {
                        out.rows[i * m + k].insert(j * m + l, a * b);
                    }
                }
            }
        }
        out
    }

    /// Permute tensor legs: `P(e_i ⊗ e_j ⊗ e_k) = e_i ⊗ e_k ⊗ e_j` on `(ℂ^d)^{⊗3}`.
    pub fn swap23(d: usize) -> SparseMatrix {
        let mut out = Self::zeros(d * d * d);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    out.rows[i * d * d + k * d + j].insert(i * d * d + j * d + k, Scalar::one());
                }
            }
        }
        out
    }
}

/// The GNS space of the Haar state: `H = A` with `⟨x, y⟩ = h(x* y)`.
#[derive(Clone, Debug)]
pub struct Gns {
    pub gram: Matrix,
    /// `L_a` with `(L_a)_{cb}` the coefficient of `b_c` in `b_a b_b`.
    pub left_mult: Vec<Matrix>,
    /// Coordinates of the cyclic vector, the class of 1.
    pub xi0: Vec<Scalar>,
}

pub fn gns(fa: &FiniteAlgebra) -> Result<Gns> {
    let n = fa.dim();
    let gram = fa.gram();
    if gram.rank() != n {
        return Err(CqgError::Haar("haar-not-faithful: Gram matrix is singular".into()));
    }
    let left_mult = (0..n)
        .map(|a| {
            let mut m = Matrix::zeros(n, n);
            for b in 0..n {
                for (c, s) in fa.product_of(a, b) {
                    m.set(*c, b, s.clone());
                }
            }
            m
        })
        .collect();
    Ok(Gns { gram, left_mult, xi0: fa.unit().to_vec() })
}

/// `u(aξ₀ ⊗ η) = Δ(a)(ξ₀ ⊗ η)` on `H⊗H`, indexed by `(x, z)` for `b_x ⊗ b_z`.
/// With `opposite` set, `Δ` is replaced by its flip, giving `v*` for the left regular
/// representation `v`.
#[derive(Clone, Debug)]
pub struct RegularUnitary {
    pub n: usize,
    pub opposite: bool,
    pub matrix: SparseMatrix,
    /// `G⊗G`, the inner product on `H⊗H`.
    pub gram: SparseMatrix,
    pub gram_inv: SparseMatrix,
    /// `u^† Ĝ u = Ĝ` and `u Ĝ⁻¹ u^† = Ĝ⁻¹` exactly.
    pub unitary: bool,
}

impl RegularUnitary {
    /// Adjoint with respect to the Gram inner product.
    pub fn star(&self, x: &SparseMatrix) -> SparseMatrix {
        self.gram_inv.mul(&x.adjoint()).mul(&self.gram)
    }

    pub fn to_json(&self) -> Value {
        let d = self.matrix.to_dense();
        let rows: Vec<Vec<String>> =
            (0..d.nrows()).map(|i| (0..d.ncols()).map(|j| d.get(i, j).to_string()).collect()).collect();
        json!({ "dim": self.n, "opposite": self.opposite, "unitary": self.unitary, "matrix": rows })
    }
}

fn delta_entries(fa: &FiniteAlgebra, a: usize, opposite: bool) -> impl Iterator<Item = (usize, usize, &Scalar)> {
    let n = fa.dim();
    fa.delta_of(a).iter().map(move |(k, c)| if opposite { (k % n, k / n, c) } else { (k / n, k % n, c) })
}

pub fn regular_unitary(fa: &FiniteAlgebra, opposite: bool) -> Result<RegularUnitary> {
    let n = fa.dim();
    let g = gns(fa)?;
    let mut u = SparseMatrix::zeros(n * n);
    for a in 0..n {
        for (x, y, c) in delta_entries(fa, a, opposite) {
            for cc in 0..n {
                for (z, m) in fa.product_of(y, cc) {
                    u.add_at(x * n + z, a * n + cc, &(c * m));
                }
            }
        }
    }
    let gs = SparseMatrix::from_dense(&g.gram);
    let gi = SparseMatrix::from_dense(&g.gram.inverse()?);
    let gram = gs.kron(&gs);
    let gram_inv = gi.kron(&gi);
    let unitary =
        u.adjoint().mul(&gram).mul(&u) == gram && u.mul(&gram_inv).mul(&u.adjoint()) == gram_inv;
    Ok(RegularUnitary { n, opposite, matrix: u, gram, gram_inv, unitary })
}

#[derive(Clone, Debug, Serialize)]
pub struct PentagonReport {
    pub size: usize,
    pub holds: bool,
}

/// `u₂₃u₁₂ = u₁₂u₁₃u₂₃` on `H⊗H⊗H`.
pub fn check_pentagon(u: &RegularUnitary) -> PentagonReport {
    let n = u.n;
    let id = SparseMatrix::identity(n);
    let u12 = u.matrix.kron(&id);
    let u23 = id.kron(&u.matrix);
    let p = SparseMatrix::swap23(n);
    let u13 = p.mul(&u12).mul(&p);
    let holds = u23.mul(&u12) == u12.mul(&u13).mul(&u23);
    PentagonReport { size: n * n * n, holds }
}

#[derive(Clone, Debug, Serialize)]
pub struct ImplementsReport {
    pub dim: usize,
    /// Basis elements `b_a` with `Δ(b_a) ≠ u(b_a⊗1)u*`.
    pub failures: Vec<String>,
    /// Rank of the slices `(ω⊗ι)(u)ξ₀` over matrix-unit functionals `ω`.
    pub slice_rank: usize,
    /// Every slice acts on `H` as left multiplication by its value on `ξ₀`.
    pub slices_in_algebra: bool,
}

impl ImplementsReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.slice_rank == self.dim && self.slices_in_algebra
    }
}

/// Matrix of `Δ(b_a)` (or its flip) acting on `H⊗H` by left multiplication.
fn delta_operator(fa: &FiniteAlgebra, a: usize, opposite: bool) -> SparseMatrix {
    let n = fa.dim();
    let mut out = SparseMatrix::zeros(n * n);
    for (x, y, c) in delta_entries(fa, a, opposite) {
        for b in 0..n {
            for d in 0..n {
                for (p, s) in fa.product_of(x, b) {
                    for (r, t) in fa.product_of(y, d) {
                        out.add_at(p * n + r, b * n + d, &(&(s * t) * c));
                    }
                }
            }
        }
    }
    out
}

/// `Φ(a) = u(a⊗1)u*` for every basis element, and the slice span.
pub fn check_implements(u: &RegularUnitary, fa: &FiniteAlgebra) -> Result<ImplementsReport> {
    let n = fa.dim();
    let g = gns(fa)?;
    let ustar = u.star(&u.matrix);
    let id = SparseMatrix::identity(n);
    let mut failures = Vec::new();
    for a in 0..n {
        let la = SparseMatrix::from_dense(&g.left_mult[a]);
        let lhs = u.matrix.mul(&la.kron(&id)).mul(&ustar);
        if lhs != delta_operator(fa, a, u.opposite) {
            failures.push(fa.basis_names()[a].clone());
        }
    }
    let slices = slice_elements(u, fa);
    let rank = Matrix::from_rows(slices.clone())?.rank();
    let mut slices_in_algebra = true;
    for x in 0..n {
        for a in 0..n {
            let elem = &slices[x * n + a];
            for z in 0..n {
                for c in 0..n {
                    let expect = fa.mul(elem, &fa.basis_vector(c));
                    if u.matrix.get(x * n + z, a * n + c) != expect[z] {
                        slices_in_algebra = false;
                    }
                }
            }
        }
    }
    Ok(ImplementsReport { dim: n, failures, slice_rank: rank, slices_in_algebra })
}

/// `(ω_{xa}⊗ι)(u)ξ₀` for all matrix units, indexed by `x*N + a`.
fn slice_elements(u: &RegularUnitary, fa: &FiniteAlgebra) -> Vec<Vec<Scalar>> {
    let n = fa.dim();
    let mut out = Vec::with_capacity(n * n);
    for x in 0..n {
        for a in 0..n {
            let v: Vec<Scalar> = (0..n)
                .map(|z| {
                    let mut acc = Scalar::zero();
                    for (c, e) in fa.unit().iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                        acc += &(&u.matrix.get(x * n + z, a * n + c) * e);
                    }
                    acc
                })
                .collect();
            out.push(v);
        }
    }
    out
}

/// The slices of `u` as an `N`-dimensional corepresentation of the presented view:
/// `v_xa = (ω_x⊗ι)Δ(b_a)`.
pub fn regular_corep(u: &RegularUnitary, fa: &FiniteAlgebra) -> Result<Corep> {
    let alg = fa.hopf().ok_or_else(|| CqgError::Presentation(format!("{} has no presented view", fa.name())))?;
    let n = fa.dim();
    let entries = slice_elements(u, fa)
        .iter()
        .map(|x| fa.to_poly(x).map(|p| alg.presentation().normal_form(&p)).unwrap_or_else(|| Ok(NcPoly::zero())))
        .collect::<Result<Vec<_>>>()?;
    let v = Corep::from_entries(n, entries).with_name("regular");
    v.verified(alg)
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingEntry {
    pub label: String,
    pub name: String,
    pub dim: usize,
    /// `dim Mor(u^α, v)` for the regular corepresentation `v`.
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    pub entries: Vec<EmbeddingEntry>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        !self.entries.is_empty() && self.entries.iter().all(|e| e.multiplicity >= 1)
    }
}

/// Intertwiner search from every registry irrep into the regular corepresentation.
pub fn regular_embedding(fa: &FiniteAlgebra, registry: &IrrepRegistry) -> Result<EmbeddingReport> {
    let alg = fa.hopf().ok_or_else(|| CqgError::Presentation(format!("{} has no presented view", fa.name())))?;
    let v = regular_corep(&regular_unitary(fa, false)?, fa)?;
    let mut entries = Vec::new();
    for e in registry.entries() {
        let m = intertwiners(&e.corep, &v, alg)?.len();
        entries.push(EmbeddingEntry { label: e.label.to_string(), name: e.name.clone(), dim: e.corep.dim(), multiplicity: m });
    }
    Ok(EmbeddingReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{c_of_group, cayley, group_algebra};

    fn trivial() -> FiniteAlgebra {
        let one = || vec![Scalar::one()];
        FiniteAlgebra::new(FiniteAlgebraData {
            name: "trivial".into(),
            basis: vec!["1".into()],
            mult: one(),
            star: one(),
            delta: one(),
            unit: one(),
            counit: one(),
            antipode: one(),
        })
        .unwrap()
    }

    fn scaled_identity(n: usize, k: i64) -> Matrix {
        Matrix::identity(n).scale(&Scalar::from_ratio(1, k))
    }

    #[test]
    fn gram_matrices() {
        assert_eq!(gns(&trivial()).unwrap().gram, Matrix::identity(1));
        let z2 = c_of_group(&cayley("z2").unwrap()).unwrap();
        assert_eq!(gns(&z2).unwrap().gram, scaled_identity(2, 2));
        let s3 = c_of_group(&cayley("s3").unwrap()).unwrap();
        assert_eq!(gns(&s3).unwrap().gram, scaled_identity(6, 6));
        assert_eq!(gns(&s3).unwrap().xi0, vec![Scalar::one(); 6]);
    }

    #[test]
    fn bad_tensors_are_rejected() {
        let mut d = FiniteAlgebraData {
            name: "bad".into(),
            basis: vec!["a".into(), "b".into()],
            mult: vec![Scalar::zero(); 8],
            star: vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one()],
            delta: vec![Scalar::zero(); 8],
            unit: vec![Scalar::one(), Scalar::zero()],
            counit: vec![Scalar::one(), Scalar::zero()],
            antipode: vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one()],
        };
        assert!(FiniteAlgebra::new(d.clone()).is_err());
        d.mult.pop();
        assert!(matches!(FiniteAlgebra::new(d), Err(CqgError::Dimension(_))));
    }

    #[test]
    fn regular_unitary_of_z2() {
        let z2 = c_of_group(&cayley("z2").unwrap()).unwrap();
        let u = regular_unitary(&z2, false).unwrap();
        assert!(u.unitary);
        // u(δ_a⊗δ_b) = δ_{ab⁻¹}⊗δ_b.
        for a in 0..2 {
            for b in 0..2 {
                for x in 0..2 {
                    for z in 0..2 {
                        let want = x == (a + b) % 2 && z == b;
                        assert_eq!(u.matrix.get(x * 2 + z, a * 2 + b).is_one(), want);
                    }
                }
            }
        }
        assert!(check_pentagon(&u).holds);
        assert_eq!(check_pentagon(&u).size, 8);
        let t = regular_unitary(&trivial(), false).unwrap();
        assert_eq!(t.matrix, SparseMatrix::identity(1));
        assert!(check_pentagon(&t).holds);
        assert!(check_implements(&t, &trivial()).unwrap().passed());
    }

    #[test]
    fn group_algebra_unitary() {
        let cg = group_algebra(&cayley("z2").unwrap()).unwrap();
        let u = regular_unitary(&cg, false).unwrap();
        // u(g⊗h) = g⊗gh.
        assert!(u.matrix.get(3, 2).is_one());
        assert!(u.matrix.get(2, 3).is_one());
        assert!(u.matrix.get(0, 0).is_one() && u.matrix.get(1, 1).is_one());
        assert!(u.unitary);
    }

    #[test]
    fn multiplicative_unitaries_of_finite_presets() {
        for name in ["z2", "z4", "s3"] {
            let g = cayley(name).unwrap();
            for fa in [c_of_group(&g).unwrap(), group_algebra(&g).unwrap()] {
                for opposite in [false, true] {
                    let u = regular_unitary(&fa, opposite).unwrap();
                    assert!(u.unitary, "{}", fa.name());
                    assert!(check_pentagon(&u).holds, "{} {}", fa.name(), opposite);
                    let r = check_implements(&u, &fa).unwrap();
                    assert!(r.passed(), "{} {:?}", fa.name(), r);
                    assert_eq!(r.slice_rank, g.order());
                }
            }
        }
    }

    #[test]
    fn non_regular_matrix_breaks_pentagon() {
        let z4 = c_of_group(&cayley("z4").unwrap()).unwrap();
        let mut u = regular_unitary(&z4, false).unwrap();
        u.matrix = u.matrix.adjoint().mul(&u.matrix.adjoint());
        assert!(!check_pentagon(&u).holds);
    }

    #[test]
    fn irreps_embed_in_regular_corep() {
        let fa = c_of_group(&cayley("s3").unwrap()).unwrap();
        let alg = fa.hopf().unwrap();
        let mut reg = IrrepRegistry::new(alg).unwrap();
        reg.close_finite(alg, 6, 3).unwrap();
        let rep = regular_embedding(&fa, &reg).unwrap();
        assert!(rep.passed());
        // Each irrep occurs with multiplicity equal to its dimension.
        for e in &rep.entries {
            assert_eq!(e.multiplicity, e.dim, "{}", e.label);
        }
        let u = regular_unitary(&fa, false).unwrap();
        assert_eq!(u.to_json()["matrix"].as_array().unwrap().len(), 36);
    }

    #[test]
    fn from_cqg_matches_direct_tensors() {
        let fa = c_of_group(&cayley("z4").unwrap()).unwrap();
        let mono = FiniteAlgebra::from_cqg(fa.hopf().unwrap()).unwrap();
        assert_eq!(mono.dim(), 4);
        // Same Haar values on the shared elements 1 and d_1.
        let one = mono.from_poly(&NcPoly::one()).unwrap();
        assert!(mono.haar_of(&one).is_one());
        let d1 = fa.basis_poly(1).unwrap();
        assert_eq!(mono.haar_of(&mono.from_poly(d1).unwrap()), Scalar::from_ratio(1, 4));
    }
}
