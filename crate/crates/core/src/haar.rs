//! The Haar state: exact solution of the invariance equations, orthogonality
//! relations, F-matrices and numeric positivity checks.

use crate::corep::Corep;
use crate::error::{CqgError, Result};
use crate::hopf::CqgAlgebra;
use crate::ncalg::{NcPoly, Presentation, Word};
use crate::regrep::FiniteAlgebra;
use crate::scalar::{Echelon, Matrix, Scalar};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

/// Sample points for numeric positivity checks.
pub const Q_SAMPLES: [f64; 3] = [1.0 / 3.0, 0.5, 0.9];

/// Eigenvalue tolerance for positivity.
pub const POSITIVITY_TOL: f64 = 1e-9;

/// Values of the Haar state on every normal monomial of degree at most `degree`.
#[derive(Clone, Debug)]
pub struct HaarTable {
    degree: usize,
    values: BTreeMap<Word, Scalar>,
    solution_dim: Option<usize>,
    pres: Arc<Presentation>,
}

impl PartialEq for HaarTable {
    fn eq(&self, o: &Self) -> bool {
        self.degree == o.degree && self.values == o.values
    }
}

/// Solve the left and right invariance equations on monomials of degree `≤ d`.
pub fn compute_haar(alg: &CqgAlgebra, d: usize) -> Result<HaarTable> {
    let pres = alg.presentation();
    pres.ensure_certified(d)?;
    let monos = pres.normal_monomials(d);
    let index: HashMap<&Word, usize> = monos.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let n = monos.len();
    let one = index[&Word::empty()];

    let mut rows: Vec<Vec<(usize, Scalar)>> = Vec::new();
    let mut seen = HashSet::new();
    for (mi, m) in monos.iter().enumerate() {
        let delta = alg.delta_word(m);
        let mut left: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
        let mut right: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
        for (legs, c) in delta.terms() {
            let mut ix = [0usize; 2];
            for k in 0..2 {
                ix[k] = *index.get(&legs[k]).ok_or_else(|| {
                    CqgError::Haar(format!(
                        "degree-closure violated: Δ({}) has leg {} of degree {} > {}",
                        pres.fmt_word(m),
                        pres.fmt_word(&legs[k]),
                        legs[k].len(),
                        d
                    ))
                })?;
            }
            *left.entry(ix[0]).or_default().entry(ix[1]).or_insert_with(Scalar::zero) += c;
            *right.entry(ix[1]).or_default().entry(ix[0]).or_insert_with(Scalar::zero) += c;
        }
        for side in [left, right] {
            let mut has_unit = false;
            for (leg, mut row) in side {
                if leg == one {
                    *row.entry(mi).or_insert_with(Scalar::zero) -= &Scalar::one();
                    has_unit = true;
                }
                push_row(&mut rows, &mut seen, row);
            }
            if !has_unit {
                push_row(&mut rows, &mut seen, BTreeMap::from([(mi, -Scalar::one())]));
            }
        }
    }

    // Reduce until the null space is one-dimensional, then check the rest by substitution.
    let mut e = Echelon::new(n);
    let mut rest = rows.len();
    for (k, r) in rows.iter().enumerate() {
        e.insert(r.clone());
        if e.rank() + 1 >= n {
            rest = k + 1;
            break;
        }
    }
    e.rref();
    let null = e.null_space(n);
    if null.len() > 1 {
        return Err(CqgError::Haar(format!(
            "non-unique solution: invariance solution space has dimension {} at degree {}",
            null.len(),
            d
        )));
    }
    let h = null.into_iter().next().ok_or_else(|| CqgError::Haar("no invariant functional".into()))?;
    let scale = h[one].inv().map_err(|_| CqgError::Haar("invariant functional vanishes at 1".into()))?;
    let h: Vec<Scalar> = h.iter().map(|s| s * &scale).collect();
    for r in &rows[rest..] {
        let mut acc = Scalar::zero();
        for (j, c) in r {
            acc += &(c * &h[*j]);
        }
        if !acc.is_zero() {
            return Err(CqgError::Haar(format!("no invariant functional at degree {}", d)));
        }
    }
    let values = monos.into_iter().zip(h).collect();
    Ok(HaarTable { degree: d, values, solution_dim: Some(1), pres: alg.presentation_arc() })
}

fn push_row(rows: &mut Vec<Vec<(usize, Scalar)>>, seen: &mut HashSet<Vec<(usize, Scalar)>>, row: BTreeMap<usize, Scalar>) {
    let row: Vec<(usize, Scalar)> = row.into_iter().filter(|(_, s)| !s.is_zero()).collect();
    if !row.is_empty() && seen.insert(row.clone()) {
        rows.push(row);
    }
}

/// Linear extension of the table; `deg x` must not exceed the table degree.
pub fn haar_eval(x: &NcPoly, t: &HaarTable) -> Result<Scalar> {
    t.eval(x)
}

impl HaarTable {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Dimension of the invariance solution space, when computed rather than imported.
    pub fn solution_dim(&self) -> Option<usize> {
        self.solution_dim
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn values(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.values.iter()
    }

    pub fn value(&self, w: &Word) -> Option<&Scalar> {
        self.values.get(w)
    }

    pub fn eval(&self, x: &NcPoly) -> Result<Scalar> {
        if x.degree() > self.degree {
            return Err(CqgError::DegreeExceedsTable { needed: x.degree(), have: self.degree });
        }
        let x = self.pres.normal_form(x)?;
        let mut acc = Scalar::zero();
        for (w, c) in x.terms() {
            let v = self
                .values
                .get(w)
                .ok_or(CqgError::DegreeExceedsTable { needed: w.len(), have: self.degree })?;
            acc += &(c * v);
        }
        Ok(acc)
    }

    /// Exact left and right invariance residuals, recomputed from Δ. Returns the
    /// monomials whose residual is nonzero.
    pub fn invariance_failures(&self, alg: &CqgAlgebra) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        for (m, hm) in &self.values {
            let delta = alg.delta_word(m);
            let mut left = NcPoly::zero();
            let mut right = NcPoly::zero();
            for (legs, c) in delta.terms() {
                left.add_scaled(&NcPoly::word(legs[0].clone()), &(c * &self.values[&legs[1]]));
                right.add_scaled(&NcPoly::word(legs[1].clone()), &(c * &self.values[&legs[0]]));
            }
            let unit = NcPoly::scalar(hm.clone());
            if !left.sub(&unit).is_zero() {
                bad.push(format!("left {}", self.pres.fmt_word(m)));
            }
            if !right.sub(&unit).is_zero() {
                bad.push(format!("right {}", self.pres.fmt_word(m)));
            }
        }
        Ok(bad)
    }

    /// `{monomial: value}` with every value printed as a scalar expression.
    pub fn to_json(&self) -> serde_json::Value {
        let map = self
            .values
            .iter()
            .map(|(w, s)| (self.pres.fmt_word(w), serde_json::Value::String(s.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }

    /// Read a table written by [`HaarTable::to_json`]. The result carries no
    /// uniqueness certificate.
    pub fn from_json(alg: &CqgAlgebra, json: &str) -> Result<HaarTable> {
        let v: BTreeMap<String, String> = serde_json::from_str(json).map_err(|e| CqgError::Io(e.to_string()))?;
        let pres = alg.presentation_arc();
        let mut values = BTreeMap::new();
        for (k, s) in v {
            let w = parse_word(&pres, &k)?;
            if !pres.is_normal(&w) {
                return Err(CqgError::Io(format!("`{}` is not a normal monomial", k)));
            }
            values.insert(w, s.parse::<Scalar>()?);
        }
        let degree = values.keys().map(|w| w.len()).max().unwrap_or(0);
        let expected = pres.normal_monomials(degree).len();
        if values.len() != expected {
            return Err(CqgError::Io(format!("table has {} of {} monomials of degree ≤ {}", values.len(), expected, degree)));
        }
        Ok(HaarTable { degree, values, solution_dim: None, pres })
    }
}

/// Word from space-separated generator names; `1` is the empty word.
pub fn parse_word(p: &Presentation, s: &str) -> Result<Word> {
    if s.trim() == "1" {
        return Ok(Word::empty());
    }
    let letters = s
        .split_whitespace()
        .map(|n| p.letter(n).ok_or_else(|| CqgError::UnknownGenerator(n.to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Word::from_letters(&letters))
}

fn is_trivial(v: &Corep) -> bool {
    v.dim() == 1 && v.entry(0, 0).is_scalar() && v.entry(0, 0).constant().is_one()
}

#[derive(Clone, Debug, Serialize)]
pub struct PeterWeylEntry {
    pub label: String,
    pub p: usize,
    pub q: usize,
    pub value: String,
    pub expected: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeterWeylReport {
    pub checked: usize,
    pub skipped: Vec<String>,
    pub failures: Vec<PeterWeylEntry>,
}

impl PeterWeylReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `h(u^α_pq)` must be `δ_pq` for the trivial class and `0` otherwise. Entries beyond
/// the table degree are listed as skipped.
pub fn peter_weyl_check(entries: &[(String, &Corep)], t: &HaarTable) -> PeterWeylReport {
    let mut rep = PeterWeylReport { checked: 0, skipped: Vec::new(), failures: Vec::new() };
    for (label, v) in entries {
        if v.degree() > t.degree {
            rep.skipped.push(label.clone());
            continue;
        }
        let triv = is_trivial(v);
        for p in 0..v.dim() {
            for q in 0..v.dim() {
                let value = t.eval(v.entry(p, q)).expect("entry within table degree");
                let expected = if triv && p == q { Scalar::one() } else { Scalar::zero() };
                rep.checked += 1;
                if value != expected {
                    rep.failures.push(PeterWeylEntry {
                        label: label.clone(),
                        p,
                        q,
                        value: value.to_string(),
                        expected: expected.to_string(),
                    });
                }
            }
        }
    }
    rep
}

/// `h((w_ip)* v_jq)` for all indices, as a map `(i, p, j, q) → value`.
fn cross_values(w: &Corep, v: &Corep, t: &HaarTable) -> Result<Vec<((usize, usize, usize, usize), Scalar)>> {
    let needed = w.degree() + v.degree();
    if needed > t.degree {
        return Err(CqgError::DegreeExceedsTable { needed, have: t.degree });
    }
    let p = &*t.pres;
    let mut out = Vec::new();
    for i in 0..w.dim() {
        for pp in 0..w.dim() {
            let ws = p.star(w.entry(i, pp));
            for j in 0..v.dim() {
                for qq in 0..v.dim() {
                    out.push(((i, pp, j, qq), t.eval(&p.mul(&ws, v.entry(j, qq)))?));
                }
            }
        }
    }
    Ok(out)
}

/// Orthogonality between inequivalent irreducibles: every `h((w_ip)* v_jq)` must vanish.
/// Returns the offending index tuples.
pub fn cross_orthogonality(v: &Corep, w: &Corep, t: &HaarTable) -> Result<Vec<(usize, usize, usize, usize)>> {
    Ok(cross_values(w, v, t)?.into_iter().filter(|(_, s)| !s.is_zero()).map(|(k, _)| k).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct FSample {
    pub q0: f64,
    pub min_eigenvalue: Option<f64>,
    pub positive: bool,
}

/// The operator `F^α` with `F_ij δ_pq = h((u_ip)* u_jq)`.
#[derive(Clone, Debug)]
pub struct FMatrix {
    pub label: String,
    pub matrix: Matrix,
    pub samples: Vec<FSample>,
}

impl FMatrix {
    pub fn positive(&self) -> bool {
        self.samples.iter().all(|s| s.positive)
    }
}

/// Compute `F^α` from the defining relation and check it: consistency across `(p, q)`,
/// the trace identity `Σ_k h((u_ik)* u_jk) = n F_ij`, the intertwining identity
/// `ū (F⊗1) u^t = F⊗1`, invertibility, and positivity at [`Q_SAMPLES`].
pub fn f_matrix(label: &str, v: &Corep, alg: &CqgAlgebra, t: &HaarTable) -> Result<FMatrix> {
    let n = v.dim();
    let vals = cross_values(v, v, t)?;
    let mut f = Matrix::zeros(n, n);
    for ((i, p, j, q), s) in &vals {
        if *p == 0 && *q == 0 {
            f.set(*i, *j, s.clone());
        }
    }
    for ((i, p, j, q), s) in &vals {
        let expected = if p == q { f.get(*i, *j).clone() } else { Scalar::zero() };
        if *s != expected {
            return Err(CqgError::InconsistentOrthogonality(format!(
                "{}: h((u_{}{})* u_{}{}) = {}, expected {}",
                label,
                i + 1,
                p + 1,
                j + 1,
                q + 1,
                s,
                expected
            )));
        }
    }
    let nn = Scalar::from_int(n as i64);
    for i in 0..n {
        for j in 0..n {
            let mut tr = Scalar::zero();
            for k in 0..n {
                tr += &vals[((i * n + k) * n + j) * n + k].1;
            }
            if tr != &nn * f.get(i, j) {
                return Err(CqgError::InconsistentOrthogonality(format!("{}: trace identity fails at ({}, {})", label, i + 1, j + 1)));
            }
        }
    }
    let pres = alg.presentation();
    for i in 0..n {
        for j in 0..n {
            let mut acc = NcPoly::scalar(-f.get(i, j));
            for k in 0..n {
                let uk = pres.star(v.entry(i, k));
                for l in 0..n {
                    let c = f.get(k, l);
                    if !c.is_zero() {
                        acc.add_scaled(&pres.mul(&uk, v.entry(j, l)), c);
                    }
                }
            }
            if !pres.normal_form(&acc)?.is_zero() {
                return Err(CqgError::InconsistentOrthogonality(format!("{}: F does not intertwine at ({}, {})", label, i + 1, j + 1)));
            }
        }
    }
    f.inverse().map_err(|_| CqgError::InconsistentOrthogonality(format!("{}: F is singular", label)))?;
    let samples = Q_SAMPLES.iter().map(|&q0| positivity_sample(&f, q0)).collect();
    Ok(FMatrix { label: label.to_string(), matrix: f, samples })
}

/// Positive definiteness of `m` evaluated at each real sample `q0`.
pub fn positivity_samples(m: &Matrix, q_samples: &[f64]) -> Vec<FSample> {
    q_samples.iter().map(|&q0| positivity_sample(m, q0)).collect()
}

fn positivity_sample(m: &Matrix, q0: f64) -> FSample {
    let min = m.eval(Complex64::new(q0, 0.0)).ok().and_then(|x| min_hermitian_eigenvalue(&x));
    FSample { q0, min_eigenvalue: min, positive: min.is_some_and(|e| e > POSITIVITY_TOL) }
}

/// Smallest eigenvalue of a numerically Hermitian matrix, `None` if it is not Hermitian.
pub fn min_hermitian_eigenvalue(m: &DMatrix<Complex64>) -> Option<f64> {
    if m.nrows() == 0 {
        return Some(f64::INFINITY);
    }
    let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if (m - m.adjoint()).iter().any(|z| z.norm() > 1e-9 * scale) {
        return None;
    }
    let e = m.clone().symmetric_eigen();
    Some(e.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min))
}

#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    pub degree: usize,
    pub size: usize,
    pub samples: Vec<FSample>,
}

impl GramReport {
    pub fn passed(&self) -> bool {
        self.samples.iter().all(|s| s.positive)
    }
}

/// The exact Gram matrix `G_mn = h(m* n)` over normal monomials of degree `≤ d`.
pub fn gram_matrix(t: &HaarTable, d: usize) -> Result<Matrix> {
    if 2 * d > t.degree {
        return Err(CqgError::DegreeExceedsTable { needed: 2 * d, have: t.degree });
    }
    let p = &*t.pres;
    let monos = p.normal_monomials(d);
    let stars: Vec<Word> = monos.iter().map(|m| p.star_word(m)).collect();
    let mut g = Matrix::zeros(monos.len(), monos.len());
    for (i, ms) in stars.iter().enumerate() {
        for (j, n) in monos.iter().enumerate() {
            let prod = p.normal_form(&NcPoly::word(ms.concat(n)))?;
            g.set(i, j, t.eval(&prod)?);
        }
    }
    Ok(g)
}

/// Positive definiteness of the Gram matrix at each real sample `q0`.
pub fn gram_positivity(t: &HaarTable, d: usize, q_samples: &[f64]) -> Result<GramReport> {
    let g = gram_matrix(t, d)?;
    Ok(GramReport { degree: d, size: g.nrows(), samples: q_samples.iter().map(|&q0| positivity_sample(&g, q0)).collect() })
}

/// One logged step of the Cesàro iteration.
#[derive(Clone, Debug, Serialize)]
pub struct CesaroStep {
    pub n: usize,
    /// `‖ω_n ω − ω_n‖₁`.
    pub defect: f64,
    /// `‖ω_n − h‖₁`.
    pub distance: f64,
    /// `‖2ω_{2m} − ω_m − h‖₁` with `2m = n`, when `n` is even.
    pub accelerated_distance: Option<f64>,
}

impl CesaroStep {
    pub fn within_bound(&self) -> bool {
        self.defect <= 2.0 / self.n as f64 + 1e-12
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CesaroResult {
    pub steps: usize,
    pub omega_n: Vec<f64>,
    /// `2ω_n − ω_{n/2}`.
    pub accelerated: Vec<f64>,
    pub log: Vec<CesaroStep>,
    pub distance: f64,
    pub accelerated_distance: f64,
}

fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

fn constant(s: &Scalar) -> Result<f64> {
    let z = s.eval(Complex64::new(1.0, 0.0))?;
    if z.im.abs() > 1e-15 {
        return Err(CqgError::NotAState("structure constants must be real".into()));
    }
    Ok(z.re)
}

/// Cesàro means `ω_n = (1/n)(ω + ω² + … + ωⁿ)` of a state on a finite algebra, with
/// convolution `(ω₁ω₂)(b) = (ω₁⊗ω₂)Δ(b)`. Functionals are vectors of values on the
/// basis and `‖·‖₁` is the ℓ¹ norm of those values (the functional norm for `C(G)` in
/// the delta basis). Steps `n = 1, 2, 4, …` and the last one are logged.
pub fn cesaro_haar(fa: &FiniteAlgebra, omega: &[f64], steps: usize) -> Result<CesaroResult> {
    let n = fa.dim();
    if omega.len() != n {
        return Err(CqgError::Dimension(format!("state has {} values for a {}-dimensional algebra", omega.len(), n)));
    }
    if steps == 0 {
        return Err(CqgError::Dimension("at least one step is needed".into()));
    }
    let unit = fa.unit().iter().map(constant).collect::<Result<Vec<_>>>()?;
    let at_one: f64 = unit.iter().zip(omega).map(|(u, w)| u * w).sum();
    if (at_one - 1.0).abs() > POSITIVITY_TOL {
        return Err(CqgError::NotAState(format!("ω(1) = {}", at_one)));
    }
    // ω(b_a* b_b) must be positive semidefinite.
    let mut m = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for a in 0..n {
        let sa = fa.star(&fa.basis_vector(a));
        for b in 0..n {
            let prod = fa.mul(&sa, &fa.basis_vector(b));
            for (c, s) in prod.iter().enumerate() {
                m[(a, b)] += s.eval(Complex64::new(1.0, 0.0))? * omega[c];
            }
        }
    }
    if !min_hermitian_eigenvalue(&m).is_some_and(|e| e >= -POSITIVITY_TOL) {
        return Err(CqgError::NotAState("ω is not positive".into()));
    }
    let delta: Vec<Vec<(usize, usize, f64)>> = (0..n)
        .map(|a| fa.delta_of(a).iter().map(|(k, c)| Ok((k / n, k % n, constant(c)?))).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let conv = |w1: &[f64], w2: &[f64]| -> Vec<f64> {
        delta.iter().map(|d| d.iter().map(|(x, y, c)| c * w1[*x] * w2[*y]).sum()).collect()
    };
    let h = fa.haar().iter().map(constant).collect::<Result<Vec<_>>>()?;
    let mut power = omega.to_vec();
    let mut sum = omega.to_vec();
    let mut means: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    let mut log = Vec::new();
    let mut next_log = 1;
    for k in 1..=steps {
        if k > 1 {
            power = conv(&power, omega);
            for (s, p) in sum.iter_mut().zip(&power) {
                *s += p;
            }
        }
        if k == next_log || k == steps {
            let mean: Vec<f64> = sum.iter().map(|s| s / k as f64).collect();
            let defect = l1(&conv(&mean, omega), &mean);
            let accelerated_distance = means.get(&(k / 2)).filter(|_| k % 2 == 0).map(|half| {
                let acc: Vec<f64> = mean.iter().zip(half).map(|(a, b)| 2.0 * a - b).collect();
                l1(&acc, &h)
            });
            log.push(CesaroStep { n: k, defect, distance: l1(&mean, &h), accelerated_distance });
            means.insert(k, mean);
            if k == next_log {
                next_log *= 2;
            }
        }
    }
    let omega_n = means[&steps].clone();
    let accelerated = match means.get(&(steps / 2)).filter(|_| steps % 2 == 0) {
        Some(half) => omega_n.iter().zip(half).map(|(a, b)| 2.0 * a - b).collect(),
        None => omega_n.clone(),
    };
    Ok(CesaroResult {
        steps,
        distance: l1(&omega_n, &h),
        accelerated_distance: l1(&accelerated, &h),
        omega_n,
        accelerated,
        log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::su_q_2;

    fn q() -> Scalar {
        Scalar::q()
    }

    #[test]
    fn su_q_2_degree_two_values() {
        let alg = su_q_2();
        let t = compute_haar(&alg, 2).unwrap();
        assert_eq!(t.solution_dim(), Some(1));
        let h = |s: &str| t.eval(&NcPoly::word(parse_word(alg.presentation(), s).unwrap())).unwrap();
        assert!(h("1").is_one());
        assert!(h("a").is_zero());
        assert!(h("g").is_zero());
        assert_eq!(h("g g*").to_string(), "1/(1 + q^2)");
        let x = alg.gen("g*").unwrap();
        let gsg = alg.presentation().mul(&x, &alg.gen("g").unwrap());
        let one_plus = NcPoly::one().add(&gsg);
        assert_eq!(haar_eval(&one_plus, &t).unwrap(), &Scalar::one() + &h("g g*"));
        assert!(haar_eval(&NcPoly::zero(), &t).unwrap().is_zero());
        assert!(t.invariance_failures(&alg).unwrap().is_empty());
    }

    #[test]
    fn su_q_2_powers_of_g_g_star() {
        // Independent closed form: h((γγ*)^k) = (1 - q²)/(1 - q^{2k+2}).
        let alg = su_q_2();
        let t = compute_haar(&alg, 6).unwrap();
        let p = alg.presentation();
        for k in 0..=3 {
            let w = parse_word(p, &vec!["g g*"; k].join(" ")).unwrap();
            let num = &Scalar::one() - &q().pow(2).unwrap();
            let den = &Scalar::one() - &q().pow(2 * k as i32 + 2).unwrap();
            assert_eq!(t.eval(&NcPoly::word(w)).unwrap(), num.checked_div(&den).unwrap(), "k = {}", k);
        }
    }

    #[test]
    fn degree_beyond_table() {
        let alg = su_q_2();
        let t = compute_haar(&alg, 1).unwrap();
        let x = NcPoly::word(parse_word(alg.presentation(), "g g*").unwrap());
        assert_eq!(t.eval(&x), Err(CqgError::DegreeExceedsTable { needed: 2, have: 1 }));
    }

    #[test]
    fn f_matrix_fundamental() {
        let alg = su_q_2();
        let t = compute_haar(&alg, 2).unwrap();
        let f = f_matrix("u", &alg.fundamentals()[0], &alg, &t).unwrap();
        let den = &Scalar::one() + &q().pow(2).unwrap();
        let expected = Matrix::diagonal(&[q().pow(2).unwrap().checked_div(&den).unwrap(), Scalar::one().checked_div(&den).unwrap()]);
        assert_eq!(f.matrix, expected);
        assert!(f.positive());
        let triv = f_matrix("1", &Corep::trivial(), &alg, &t).unwrap();
        assert!(triv.matrix.is_identity());
    }

    #[test]
    fn peter_weyl_and_gram() {
        let alg = su_q_2();
        let t = compute_haar(&alg, 4).unwrap();
        let u = &alg.fundamentals()[0];
        let triv = Corep::trivial();
        let rep = peter_weyl_check(&[("u".into(), u), ("1".into(), &triv)], &t);
        assert!(rep.passed());
        assert_eq!(rep.checked, 5);
        assert!(cross_orthogonality(u, &triv, &t).unwrap().is_empty());
        let g = gram_positivity(&t, 2, &Q_SAMPLES).unwrap();
        assert!(g.passed(), "{:?}", g);
        assert_eq!(g.size, 14);
        let g0 = gram_matrix(&t, 0).unwrap();
        assert!(g0.is_identity());
    }

    #[test]
    fn json_round_trip() {
        let alg = su_q_2();
        let t = compute_haar(&alg, 3).unwrap();
        let s = t.to_json().to_string();
        let back = HaarTable::from_json(&alg, &s).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.solution_dim(), None);
    }
    #[test]
    fn cesaro_on_c_z2() {
        use crate::presets::{c_of_group, cayley};
        let fa = c_of_group(&cayley("z2").unwrap()).unwrap();
        let r = cesaro_haar(&fa, &[0.9, 0.1], 256).unwrap();
        // Oracle: ω^k(δ_1) = (1 - 0.8^k)/2.
        let mean1: f64 = (1..=256).map(|k| (1.0 - 0.8f64.powi(k)) / 2.0).sum::<f64>() / 256.0;
        assert!((r.omega_n[1] - mean1).abs() < 1e-12);
        assert!((r.omega_n[0] + r.omega_n[1] - 1.0).abs() < 1e-12);
        assert!(r.log.iter().all(CesaroStep::within_bound));
        assert!(r.accelerated_distance < 1e-6, "{}", r.accelerated_distance);
        let fixed = cesaro_haar(&fa, &[0.5, 0.5], 8).unwrap();
        assert!(fixed.log.iter().all(|s| s.distance < 1e-15 && s.defect < 1e-15));
        assert!(matches!(cesaro_haar(&fa, &[1.5, -0.5], 4), Err(CqgError::NotAState(_))));
        assert!(matches!(cesaro_haar(&fa, &[0.6, 0.6], 4), Err(CqgError::NotAState(_))));
    }
}
