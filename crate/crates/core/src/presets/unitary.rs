use super::{mono, su_q_2};
use crate::corep::Corep;
use crate::error::{CqgError, Result};
use crate::hopf::{CqgAlgebra, HopfTables};
use crate::ncalg::{Generator, Letter, NcPoly, Presentation, TensorPoly, Word};
use crate::scalar::{Matrix, Scalar};
use serde::Serialize;

fn uname(n: usize, p: usize, q: usize) -> String {
    if n < 10 {
        format!("u{}{}", p + 1, q + 1)
    } else {
        format!("u{}_{}", p + 1, q + 1)
    }
}

/// `u_pq` then `u_pq*`, each block row-major.
fn matrix_generators(n: usize) -> Vec<Generator> {
    let mut g = Vec::with_capacity(2 * n * n);
    for star in [false, true] {
        for p in 0..n {
            for q in 0..n {
                let base = uname(n, p, q);
                let k = (p * n + q) as Letter;
                let partner = if star { k } else { k + (n * n) as Letter };
                g.push(Generator { name: if star { format!("{}*", base) } else { base }, star: partner, weight: 1 });
            }
        }
    }
    g
}

struct MatrixLetters {
    n: usize,
}

impl MatrixLetters {
    fn u(&self, p: usize, q: usize) -> Word {
        Word::letter((p * self.n + q) as Letter)
    }

    fn us(&self, p: usize, q: usize) -> Word {
        Word::letter((self.n * self.n + p * self.n + q) as Letter)
    }
}

fn delta_ij(i: usize, j: usize) -> NcPoly {
    if i == j {
        NcPoly::one()
    } else {
        NcPoly::zero()
    }
}

/// Unitarity of `u` and `u^t Q ū Q⁻¹ = I = Q ū Q⁻¹ u^t`.
fn unitary_relations(n: usize, qm: &Matrix, qi: &Matrix) -> Vec<NcPoly> {
    let l = MatrixLetters { n };
    let mut rels = Vec::new();
    for p in 0..n {
        for q in 0..n {
            let mut r1 = delta_ij(p, q).neg();
            let mut r2 = delta_ij(p, q).neg();
            for k in 0..n {
                r1.add_term(l.u(p, k).concat(&l.us(q, k)), Scalar::one());
                r2.add_term(l.us(k, p).concat(&l.u(k, q)), Scalar::one());
            }
            rels.push(r1);
            rels.push(r2);
        }
    }
    for k in 0..n {
        for lq in 0..n {
            let mut r3 = delta_ij(k, lq).neg();
            let mut r4 = delta_ij(k, lq).neg();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let f3 = qm.get(a, b) * qi.get(c, lq);
                        if !f3.is_zero() {
                            r3.add_term(l.u(a, k).concat(&l.us(b, c)), f3);
                        }
                        let f4 = qm.get(k, a) * qi.get(b, c);
                        if !f4.is_zero() {
                            r4.add_term(l.us(a, b).concat(&l.u(lq, c)), f4);
                        }
                    }
                }
            }
            rels.push(r3);
            rels.push(r4);
        }
    }
    rels
}

fn inversions(k: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..k.len() {
        for j in i + 1..k.len() {
            if k[i] > k[j] {
                c += 1;
            }
        }
    }
    c
}

/// `E(k_1, …, k_n) = (−q)^{inversions}` for a permutation, zero when an index repeats.
/// Indices are 0-based.
pub fn determinant_sign(k: &[usize]) -> Scalar {
    let mut seen = vec![false; k.len()];
    for &x in k {
        if x >= k.len() || seen[x] {
            return Scalar::zero();
        }
        seen[x] = true;
    }
    (-Scalar::q()).pow(inversions(k) as i32).expect("nonnegative power")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out.sort();
    out
}

/// `Σ_k E(k) u_{l_1 k_1} ⋯ u_{l_n k_n} − E(l)` for every `l ∈ [n]^n`.
fn determinant_relations(n: usize) -> Vec<NcPoly> {
    let l = MatrixLetters { n };
    let perms = permutations(n);
    let signs: Vec<Scalar> = perms.iter().map(|k| determinant_sign(k)).collect();
    let mut rels = Vec::new();
    let total = n.pow(n as u32);
    for idx in 0..total {
        let mut tuple = vec![0; n];
        let mut x = idx;
        for t in tuple.iter_mut().rev() {
            *t = x % n;
            x /= n;
        }
        let mut r = NcPoly::scalar(-determinant_sign(&tuple));
        for (k, s) in perms.iter().zip(&signs) {
            let mut w = Word::empty();
            for (a, b) in tuple.iter().zip(k) {
                w = w.concat(&l.u(*a, *b));
            }
            r.add_term(w, s.clone());
        }
        rels.push(r);
    }
    rels
}

fn matrix_algebra(name: &str, n: usize, qm: &Matrix, extra: Vec<NcPoly>, basis: &str) -> Result<CqgAlgebra> {
    let qi = qm.inverse().map_err(|_| CqgError::Singular("Q is not invertible".into()))?;
    let mut rels = unitary_relations(n, qm, &qi);
    rels.extend(extra);
    let pres = Presentation::from_relations(matrix_generators(n), &rels)?.with_basis_description(basis);
    let l = MatrixLetters { n };
    let mut tables = HopfTables::default();
    for p in 0..n {
        for q in 0..n {
            let up = (p * n + q) as Letter;
            let mut d = TensorPoly::zero(2);
            for k in 0..n {
                d.add_term([l.u(p, k), l.u(k, q)].into_iter().collect(), Scalar::one());
            }
            tables.delta.insert(up, d);
            tables.eps.insert(up, if p == q { Scalar::one() } else { Scalar::zero() });
            tables.kappa.insert(up, NcPoly::word(l.us(q, p)));
            // κ(u*_pq) = (Q⁻¹ u^t Q)_pq
            let mut ks = NcPoly::zero();
            for a in 0..n {
                for b in 0..n {
                    let f = qi.get(p, a) * qm.get(b, q);
                    if !f.is_zero() {
                        ks.add_term(l.u(b, a), f);
                    }
                }
            }
            tables.kappa.insert(up + (n * n) as Letter, ks);
        }
    }
    let alg = CqgAlgebra::new(name, pres, tables)?;
    let rows = (0..n).map(|p| (0..n).map(|q| NcPoly::word(l.u(p, q))).collect()).collect();
    let u = Corep::new(&alg, rows)?.with_name("u");
    alg.with_fundamentals(vec![u])
}

/// `D = diag(1, q², …, q^{2(n−1)})`, the matrix for which SU_q(n) satisfies the A_u(D) relations.
fn su_q_n_weights(n: usize) -> Matrix {
    Matrix::diagonal(&(0..n).map(|k| Scalar::q_pow(2 * k as i32)).collect::<Vec<_>>())
}

/// SU_q(n) on generators `u_pq`, `u_pq*`: unitarity, all determinant relations, and the
/// relations `u^t D ū D⁻¹ = I = D ū D⁻¹ u^t` with `D = diag(q^{2(k−1)})`.
pub fn su_q_n(n: usize) -> CqgAlgebra {
    assert!(n >= 2, "SU_q(n) needs n >= 2");
    let d = su_q_n_weights(n);
    matrix_algebra(&format!("su_q_n:{}", n), n, &d, determinant_relations(n), "interreduced relations")
        .expect("SU_q(n) tables respect the relations")
}

/// A_u(Q) for an invertible constant matrix `Q`.
pub fn a_u(qm: &Matrix) -> Result<CqgAlgebra> {
    if !qm.is_square() {
        return Err(CqgError::Dimension("Q must be square".into()));
    }
    for i in 0..qm.nrows() {
        for j in 0..qm.ncols() {
            if !qm.get(i, j).is_constant() {
                return Err(CqgError::Presentation("Q must have entries in Q(i)".into()));
            }
        }
    }
    matrix_algebra("a_u", qm.nrows(), qm, vec![], "interreduced relations")
}

/// `u^t` is invertible with inverse `Q ū Q⁻¹`, checked exactly on both sides.
pub fn transpose_inverse_witness(alg: &CqgAlgebra, qm: &Matrix) -> Result<bool> {
    let pres = alg.presentation();
    let u = &alg.fundamentals()[0];
    let n = u.dim();
    let qi = qm.inverse()?;
    let ut = Corep::from_entries(n, (0..n * n).map(|k| u.entry(k % n, k / n).clone()).collect());
    let ub = u.adjoint(alg);
    let mut inv = vec![NcPoly::zero(); n * n];
    for p in 0..n {
        for q in 0..n {
            for a in 0..n {
                for b in 0..n {
                    inv[p * n + q].add_scaled(ub.entry(a, b), &(qm.get(p, a) * qi.get(b, q)));
                }
            }
        }
    }
    let inv = Corep::from_entries(n, inv);
    let id = |c: &Corep| {
        (0..n).all(|p| (0..n).all(|q| *c.entry(p, q) == if p == q { NcPoly::one() } else { NcPoly::zero() }))
    };
    Ok(id(&ut.mul(&inv, pres)) && id(&inv.mul(&ut, pres)))
}

#[derive(Clone, Debug, Serialize)]
pub struct HomomorphismReport {
    pub relations_checked: usize,
    pub relation_failures: Vec<String>,
    pub comultiplication_failures: Vec<String>,
    pub surjective: bool,
}

impl HomomorphismReport {
    pub fn passed(&self) -> bool {
        self.relation_failures.is_empty() && self.comultiplication_failures.is_empty() && self.surjective
    }
}

fn apply_hom(images: &[NcPoly], x: &NcPoly, dst: &Presentation) -> NcPoly {
    let mut acc = NcPoly::zero();
    for (w, c) in x.terms() {
        let factors: Vec<&NcPoly> = w.letters().iter().map(|&l| &images[l as usize]).collect();
        acc.add_scaled(&dst.mul_all(&factors), c);
    }
    acc
}

/// The map `su_q_n(2) → su_q_2` with `u11 ↦ a`, `u12 ↦ −q g*`, `u21 ↦ g`, `u22 ↦ a*`:
/// checks that every rule maps to zero, that the map intertwines the comultiplications on
/// generators, and that every generator of `su_q_2` is in the image.
pub fn su_q_n_to_su_q_2() -> (CqgAlgebra, CqgAlgebra, HomomorphismReport) {
    let src = su_q_n(2);
    let dst = su_q_2();
    let (sp, dp) = (src.presentation(), dst.presentation());
    let q = Scalar::q();
    let base = [mono(dp, Scalar::one(), "a"), mono(dp, -&q, "g*"), mono(dp, Scalar::one(), "g"), mono(dp, Scalar::one(), "a*")];
    let mut images: Vec<NcPoly> = base.to_vec();
    images.extend(base.iter().map(|x| dp.star(x)));
    let mut relation_failures = Vec::new();
    for r in sp.rules() {
        let diff = apply_hom(&images, &NcPoly::word(r.lhs.clone()), dp).sub(&apply_hom(&images, &r.rhs, dp));
        if !diff.is_zero() {
            relation_failures.push(format!("{} -> {}: {}", sp.fmt_word(&r.lhs), sp.fmt_poly(&r.rhs), dp.fmt_poly(&diff)));
        }
    }
    let mut comultiplication_failures = Vec::new();
    for l in 0..sp.ngens() as Letter {
        let ds = src.comultiply(&NcPoly::letter(l)).expect("certified");
        let mut mapped = TensorPoly::zero(2);
        for (legs, c) in ds.terms() {
            let a = apply_hom(&images, &NcPoly::word(legs[0].clone()), dp);
            let b = apply_hom(&images, &NcPoly::word(legs[1].clone()), dp);
            mapped.add_scaled(&TensorPoly::simple(&[&a, &b]), c);
        }
        let direct = dst.comultiply(&images[l as usize]).expect("certified");
        if mapped != direct {
            comultiplication_failures.push(sp.name(l).to_string());
        }
    }
    let targets = ["a", "a*", "g", "g*"];
    let surjective = targets.iter().all(|t| {
        let x = mono(dp, Scalar::one(), t);
        images.iter().any(|im| {
            im.len() == 1 && im.terms().next().map(|(w, _)| w.clone()) == x.terms().next().map(|(w, _)| w.clone())
        })
    });
    let report = HomomorphismReport {
        relations_checked: sp.rules().len(),
        relation_failures,
        comultiplication_failures,
        surjective,
    };
    (src, dst, report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_signs() {
        assert!(determinant_sign(&[0, 1, 2]).is_one());
        assert_eq!(determinant_sign(&[1, 0]), -Scalar::q());
        assert!(determinant_sign(&[0, 0]).is_zero());
        assert_eq!(determinant_sign(&[2, 1, 0]), (-Scalar::q()).pow(3).unwrap());
    }

    #[test]
    fn n2_determinant_relation() {
        let rels = determinant_relations(2);
        let p = Presentation::new(matrix_generators(2), vec![]).unwrap();
        // l = (1, 2): u11 u22 - q u12 u21 - 1
        assert_eq!(p.fmt_poly(&rels[1]), "-1 + u11 u22 - q * u12 u21");
    }

    #[test]
    fn su_q_n_2_maps_onto_su_q_2() {
        let (_, _, rep) = su_q_n_to_su_q_2();
        assert!(rep.passed(), "{:?}", rep);
    }

    #[test]
    fn su_q_3_wor1() {
        let alg = su_q_n(3);
        assert!(alg.fundamentals()[0].verify_wor1_axiom3(&alg).unwrap().passed());
        assert!(alg.fundamentals()[0].is_corep(&alg));
    }

    #[test]
    fn a_u_identity() {
        let alg = a_u(&Matrix::identity(2)).unwrap();
        let u = &alg.fundamentals()[0];
        assert!(u.is_corep(&alg));
        assert!(u.verify_wor1_axiom3(&alg).unwrap().passed());
        assert!(transpose_inverse_witness(&alg, &Matrix::identity(2)).unwrap());
    }

    #[test]
    fn a_u_singular_q() {
        let z = Matrix::zeros(2, 2);
        assert!(a_u(&z).is_err());
    }
}
