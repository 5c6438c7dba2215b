use super::{is_intertwiner, Corep, EquationCollector};
use crate::error::{CqgError, Result};
use crate::haar::{min_hermitian_eigenvalue, HaarTable, POSITIVITY_TOL, Q_SAMPLES};
use crate::hopf::CqgAlgebra;
use crate::ncalg::{NcPoly, Presentation, Word};
use crate::scalar::{Matrix, Scalar};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::collections::BTreeMap;

/// `y = (ι⊗h)(w*(x⊗1)v)`, checked to lie in `Mor(v, w)`.
pub fn averaged_intertwiner(v: &Corep, w: &Corep, x: &Matrix, alg: &CqgAlgebra, h: &HaarTable) -> Result<Matrix> {
    let (n, m) = (v.dim(), w.dim());
    if x.nrows() != m || x.ncols() != n {
        return Err(CqgError::Dimension(format!("expected a {}×{} matrix", m, n)));
    }
    let pres = alg.presentation();
    let wstar = w.star_matrix(pres);
    let mut y = Matrix::zeros(m, n);
    for i in 0..m {
        for j in 0..n {
            let mut acc = NcPoly::zero();
            for k in 0..m {
                for l in 0..n {
                    let c = x.get(k, l);
                    if !c.is_zero() {
                        acc.add_scaled(&pres.mul(wstar.entry(i, k), v.entry(l, j)), c);
                    }
                }
            }
            y.set(i, j, h.eval(&acc)?);
        }
    }
    if !is_intertwiner(&y, v, w) {
        return Err(CqgError::NotCorep("averaged element is not an intertwiner".into()));
    }
    Ok(y)
}

/// `Σ_kl (v_ki)* Y_kl v_lj` as a matrix of polynomials.
fn form_image(v: &Corep, y: &Matrix, pres: &Presentation) -> Vec<NcPoly> {
    let n = v.dim();
    let vs = v.star_matrix(pres);
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = NcPoly::zero();
            for k in 0..n {
                for l in 0..n {
                    let c = y.get(k, l);
                    if !c.is_zero() {
                        acc.add_scaled(&pres.mul(vs.entry(i, k), v.entry(l, j)), c);
                    }
                }
            }
            out.push(acc);
        }
    }
    out
}

/// The Hermitian matrix `Y` with `v*(Y⊗1)v = Y⊗1`, normalized by its first nonzero
/// diagonal entry. For irreducible `v` it is unique up to scale and positive definite;
/// `v` is unitary exactly when `Y` is a multiple of `I`.
pub fn unitarizing_form(v: &Corep, alg: &CqgAlgebra) -> Result<Matrix> {
    let n = v.dim();
    if v.is_unitary(alg) {
        return Ok(Matrix::identity(n));
    }
    let pres = alg.presentation();
    pres.ensure_certified(2 * v.degree())?;
    let vs = v.star_matrix(pres);
    let mut eqs = EquationCollector::default();
    let one = Scalar::one();
    let products: Vec<NcPoly> = (0..n * n)
        .flat_map(|ik| (0..n * n).map(move |lj| (ik, lj)))
        .map(|(ik, lj)| pres.mul(vs.entry(ik / n, ik % n), v.entry(lj / n, lj % n)))
        .collect();
    for i in 0..n {
        for j in 0..n {
            let eq = i * n + j;
            for k in 0..n {
                for l in 0..n {
                    eqs.add(eq, &products[(i * n + k) * n * n + l * n + j], k * n + l, &one);
                }
            }
            eqs.add(eq, &NcPoly::one(), i * n + j, &-Scalar::one());
        }
    }
    let null = eqs.null_space(n * n);
    if null.len() != 1 {
        return Err(CqgError::NotPositive(format!("invariant form space has dimension {}", null.len())));
    }
    let y = Matrix::from_fn(n, n, |i, j| null[0][i * n + j].clone());
    let d = (0..n)
        .map(|i| y.get(i, i).clone())
        .find(|s| !s.is_zero())
        .ok_or_else(|| CqgError::NotPositive("invariant form has zero diagonal".into()))?;
    let y = y.scale(&d.inv()?);
    if y != y.adjoint() {
        return Err(CqgError::NotPositive("invariant form is not Hermitian".into()));
    }
    for q0 in Q_SAMPLES {
        let e = y.eval(Complex64::new(q0, 0.0)).ok().and_then(|m| min_hermitian_eigenvalue(&m));
        if !e.is_some_and(|e| e > POSITIVITY_TOL) {
            return Err(CqgError::NotPositive(format!("invariant form is not positive definite at q = {}", q0)));
        }
    }
    Ok(y)
}

/// Polynomial with complex coefficients, for corepresentations evaluated at a point.
pub type NumericPoly = BTreeMap<Word, Complex64>;

/// `w = y^{1/2} v y^{-1/2}` at a real value of `q`.
#[derive(Clone, Debug)]
pub struct NumericCorep {
    pub q0: f64,
    pub dim: usize,
    /// Exact `y = (ι⊗h)(v*v)`.
    pub y: Matrix,
    pub sqrt_y: DMatrix<Complex64>,
    pub entries: Vec<NumericPoly>,
    /// Largest coefficient of `w*w - I` and `ww* - I`.
    pub unitarity_residual: f64,
}

impl NumericCorep {
    pub fn entry(&self, p: usize, q: usize) -> &NumericPoly {
        &self.entries[p * self.dim + q]
    }
}

fn eval_poly(p: &NcPoly, q0: Complex64) -> Result<NumericPoly> {
    p.terms().map(|(w, c)| Ok((w.clone(), c.eval(q0)?))).collect()
}

/// Conjugate a matrix of evaluated polynomials by numeric matrices: `L X R`.
fn conjugate(x: &[NumericPoly], n: usize, l: &DMatrix<Complex64>, r: &DMatrix<Complex64>) -> Vec<NumericPoly> {
    let mut out = vec![NumericPoly::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            let o = &mut out[i * n + j];
            for a in 0..n {
                for b in 0..n {
                    let f = l[(i, a)] * r[(b, j)];
                    if f.norm() == 0.0 {
                        continue;
                    }
                    for (w, c) in &x[a * n + b] {
                        *o.entry(w.clone()).or_insert(Complex64::new(0.0, 0.0)) += f * c;
                    }
                }
            }
        }
    }
    out
}

fn identity_residual(x: &[NumericPoly], n: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for (w, c) in &x[i * n + j] {
                let target = if i == j && w.is_empty() { 1.0 } else { 0.0 };
                worst = worst.max((c - target).norm());
            }
            if i == j && !x[i * n + j].contains_key(&Word::empty()) {
                worst = worst.max(1.0);
            }
        }
    }
    worst
}

/// Unitarize `v` at `q0`: `y = (ι⊗h)(v*v)` exactly, then the positive square root
/// numerically. The returned residual measures unitarity of the result.
pub fn unitarize(v: &Corep, alg: &CqgAlgebra, h: &HaarTable, q0: f64) -> Result<NumericCorep> {
    let n = v.dim();
    let pres = alg.presentation();
    let vs = v.star_matrix(pres);
    let mut y = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = NcPoly::zero();
            for k in 0..n {
                acc = acc.add(&pres.mul(vs.entry(i, k), v.entry(k, j)));
            }
            y.set(i, j, h.eval(&acc)?);
        }
    }
    let z = Complex64::new(q0, 0.0);
    let yn = y.eval(z)?;
    let min = min_hermitian_eigenvalue(&yn);
    if !min.is_some_and(|e| e > POSITIVITY_TOL) {
        return Err(CqgError::NotPositive(format!("(ι⊗h)(v*v) is not positive definite at q = {}", q0)));
    }
    let eig = yn.clone().symmetric_eigen();
    let sq = DMatrix::from_diagonal(&eig.eigenvalues.map(|e| Complex64::new(e.sqrt(), 0.0)));
    let isq = DMatrix::from_diagonal(&eig.eigenvalues.map(|e| Complex64::new(1.0 / e.sqrt(), 0.0)));
    let s = &eig.eigenvectors * sq * eig.eigenvectors.adjoint();
    let s_inv = &eig.eigenvectors * isq * eig.eigenvectors.adjoint();
    let ve = v.entries().iter().map(|x| eval_poly(x, z)).collect::<Result<Vec<_>>>()?;
    let entries = conjugate(&ve, n, &s, &s_inv);
    // w*w = S⁻¹ (v* y v) S⁻¹ and ww* = S (v y⁻¹ v*) S.
    let left = form_image(v, &y, pres).iter().map(|x| eval_poly(x, z)).collect::<Result<Vec<_>>>()?;
    let y_inv = y.inverse()?;
    let right = form_image(&vs, &y_inv, pres);
    let right = right.iter().map(|x| eval_poly(x, z)).collect::<Result<Vec<_>>>()?;
    let res_l = identity_residual(&conjugate(&left, n, &s_inv, &s_inv), n);
    let res_r = identity_residual(&conjugate(&right, n, &s, &s), n);
    Ok(NumericCorep { q0, dim: n, y, sqrt_y: s, entries, unitarity_residual: res_l.max(res_r) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corep::mor_dim;
    use crate::haar::compute_haar;
    use crate::presets::su_q_2;

    #[test]
    fn averaged_intertwiners() {
        let alg = su_q_2();
        let h = compute_haar(&alg, 2).unwrap();
        let u = &alg.fundamentals()[0];
        let e11 = Matrix::from_fn(2, 2, |i, j| if i == 0 && j == 0 { Scalar::one() } else { Scalar::zero() });
        let y = averaged_intertwiner(u, u, &e11, &alg, &h).unwrap();
        assert!(y.is_scalar_multiple_of_identity());
        assert!(!y.is_zero());
        let triv = Corep::trivial();
        let y = averaged_intertwiner(u, &triv, &Matrix::from_fn(1, 2, |_, _| Scalar::one()), &alg, &h).unwrap();
        assert!(y.is_zero());
        let y = averaged_intertwiner(&triv, &triv, &Matrix::identity(1), &alg, &h).unwrap();
        assert!(y.is_identity());
    }

    #[test]
    fn unitary_input_is_unchanged() {
        let alg = su_q_2();
        let h = compute_haar(&alg, 2).unwrap();
        let u = &alg.fundamentals()[0];
        let w = unitarize(u, &alg, &h, 0.5).unwrap();
        assert!(w.y.is_identity());
        assert!(w.unitarity_residual < 1e-12);
        assert_eq!(unitarizing_form(u, &alg).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn conjugated_fundamental() {
        let alg = su_q_2();
        let h = compute_haar(&alg, 2).unwrap();
        let u = &alg.fundamentals()[0];
        let s = Matrix::from_rows(vec![
            vec![Scalar::from_int(2), Scalar::one()],
            vec![Scalar::from_ratio(1, 3), Scalar::i()],
        ])
        .unwrap();
        let v = u.sandwich(&s, &s.inverse().unwrap());
        assert!(v.is_corep(&alg));
        assert!(!v.is_unitary(&alg));
        let w = unitarize(&v, &alg, &h, 0.5).unwrap();
        assert!(w.unitarity_residual < 1e-9, "{}", w.unitarity_residual);
        assert_eq!(mor_dim(&v, u, &alg).unwrap(), 1);
        let y = unitarizing_form(&v, &alg).unwrap();
        // (ι⊗h)(v*v) is an invariant form, so it is proportional to Y.
        let c = w.y.get(0, 0).checked_div(y.get(0, 0)).unwrap();
        assert_eq!(y.scale(&c), w.y);
    }
}
