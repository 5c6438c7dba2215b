use super::{intertwiners, is_intertwiner, unitarizing_form, Corep};
use crate::error::{CqgError, Result};
use crate::hopf::CqgAlgebra;
use crate::scalar::{solve_exact, Echelon, GaussQ, LinearSystem, Matrix, Scalar, Solution, sparse};
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;

/// Eigenvalue clustering tolerance for the numeric splitting fallback.
pub const CLUSTER_TOL: f64 = 1e-9;

/// Irrep label: dimension and discovery index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub dim: usize,
    pub index: usize,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}#{}", self.dim, self.index)
    }
}

impl std::str::FromStr for Label {
    type Err = CqgError;

    fn from_str(s: &str) -> Result<Label> {
        let bad = || CqgError::NotInRegistry(format!("`{}` is not a label of the form d<dim>#<index>", s));
        let (d, i) = s.strip_prefix('d').and_then(|r| r.split_once('#')).ok_or_else(bad)?;
        Ok(Label { dim: d.parse().map_err(|_| bad())?, index: i.parse().map_err(|_| bad())? })
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A registered irreducible corepresentation.
#[derive(Clone, Debug)]
pub struct IrrepEntry {
    pub label: Label,
    pub name: String,
    pub corep: Corep,
    /// Tensor level at which the class was first found: 0 for the trivial corep,
    /// 1 for constituents of the fundamentals.
    pub level: usize,
    /// Positive form `Y` with `v*(Y⊗1)v = Y⊗1`; the identity for unitary entries.
    pub form: Matrix,
}

impl IrrepEntry {
    pub fn is_unitary(&self) -> bool {
        self.form.is_identity()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Component {
    /// `None` for a summand only resolved numerically.
    pub label: Option<Label>,
    pub dim: usize,
    pub multiplicity: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub dim: usize,
    pub end_dim: usize,
    pub components: Vec<Component>,
    /// Invertible `T` whose column blocks intertwine each summand into `v`.
    #[serde(skip)]
    pub witness: Option<Matrix>,
    pub witness_verified: bool,
}

impl Decomposition {
    /// `Σ multiplicity · dim = dim v`.
    pub fn is_complete(&self) -> bool {
        self.components.iter().map(|c| c.dim * c.multiplicity).sum::<usize>() == self.dim
    }

    pub fn is_exact(&self) -> bool {
        self.components.iter().all(|c| c.exact)
    }

    /// `dim End(v) = Σ multiplicity²` for a semisimple decomposition.
    pub fn end_dim_consistent(&self) -> bool {
        !self.is_exact() || self.components.iter().map(|c| c.multiplicity * c.multiplicity).sum::<usize>() == self.end_dim
    }

    pub fn summands(&self) -> Vec<(Label, usize)> {
        self.components.iter().filter_map(|c| c.label.map(|l| (l, c.multiplicity))).collect()
    }

    pub fn multiplicity(&self, l: Label) -> usize {
        self.components.iter().filter(|c| c.label == Some(l)).map(|c| c.multiplicity).sum()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FusionSummand {
    pub label: Label,
    pub multiplicity: usize,
}

/// One row of a fusion table: `left ⊗ right = ⊕ summands`.
#[derive(Clone, Debug, Serialize)]
pub struct FusionEntry {
    pub left: Label,
    pub right: Label,
    pub summands: Vec<FusionSummand>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub numeric_dims: Vec<usize>,
}

/// Inequivalent irreducible corepresentations, discovered from the trivial corep, the
/// fundamentals, and tensor products of registered classes.
#[derive(Clone, Debug)]
pub struct IrrepRegistry {
    entries: Vec<IrrepEntry>,
    fusion: Vec<FusionEntry>,
    done: BTreeSet<(usize, usize)>,
    q0: f64,
}

struct Piece {
    corep: Corep,
    basis: Matrix,
}

impl IrrepRegistry {
    /// Trivial corep plus the irreducible constituents of every fundamental.
    pub fn new(alg: &CqgAlgebra) -> Result<IrrepRegistry> {
        IrrepRegistry::with_q0(alg, 0.5)
    }

    /// As [`IrrepRegistry::new`], with the evaluation point for numeric splitting.
    pub fn with_q0(alg: &CqgAlgebra, q0: f64) -> Result<IrrepRegistry> {
        let mut r = IrrepRegistry {
            entries: vec![IrrepEntry {
                label: Label { dim: 1, index: 0 },
                name: "1".into(),
                corep: Corep::trivial(),
                level: 0,
                form: Matrix::identity(1),
            }],
            fusion: Vec::new(),
            done: BTreeSet::new(),
            q0,
        };
        for f in alg.fundamentals() {
            let before = r.entries.len();
            let d = r.decompose(f, 1, alg)?;
            // An irreducible fundamental keeps its own name.
            if d.components.len() == 1 && d.components[0].multiplicity == 1 && r.entries.len() == before + 1 {
                if let Some(n) = f.name() {
                    r.entries[before].name = n.to_string();
                }
            }
        }
        Ok(r)
    }

    pub fn entries(&self) -> &[IrrepEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn labels(&self) -> Vec<Label> {
        self.entries.iter().map(|e| e.label).collect()
    }

    pub fn get(&self, l: Label) -> Result<&IrrepEntry> {
        self.entries.iter().find(|e| e.label == l).ok_or_else(|| CqgError::NotInRegistry(l.to_string()))
    }

    /// Entry by label or by name.
    pub fn find(&self, s: &str) -> Result<&IrrepEntry> {
        if let Some(e) = self.entries.iter().find(|e| e.name == s) {
            return Ok(e);
        }
        self.get(s.parse()?)
    }

    pub fn trivial(&self) -> Label {
        self.entries[0].label
    }

    /// Fusion rows computed so far.
    pub fn fusion(&self) -> &[FusionEntry] {
        &self.fusion
    }

    /// Label of a registered class equivalent to the irreducible `v`.
    pub fn identify(&self, v: &Corep, alg: &CqgAlgebra) -> Result<Option<Label>> {
        for e in &self.entries {
            if e.label.dim == v.dim() && !intertwiners(v, &e.corep, alg)?.is_empty() {
                return Ok(Some(e.label));
            }
        }
        Ok(None)
    }

    fn register(&mut self, v: Corep, level: usize, alg: &CqgAlgebra) -> Result<Label> {
        if let Some(l) = self.identify(&v, alg)? {
            return Ok(l);
        }
        let form = unitarizing_form(&v, alg)?;
        let label = Label { dim: v.dim(), index: self.entries.len() };
        let corep = v.with_name(label.to_string()).verified(alg)?;
        self.entries.push(IrrepEntry { label, name: label.to_string(), corep, level, form });
        Ok(label)
    }

    /// Split `v` into irreducibles. Known classes are removed through their intertwiner
    /// spaces; the remaining invariant subspace is split by eigenspaces of elements of
    /// its commutant, and new classes are registered at `level`.
    pub fn decompose(&mut self, v: &Corep, level: usize, alg: &CqgAlgebra) -> Result<Decomposition> {
        if let Err((p, q, r)) = v.corep_witness(alg) {
            return Err(CqgError::NotCorep(format!("entry ({}, {}): residual {}", p + 1, q + 1, r)));
        }
        let n = v.dim();
        let end_dim = intertwiners(v, v, alg)?.len();
        let mut components: Vec<Component> = Vec::new();
        let mut blocks: Vec<(Matrix, Corep)> = Vec::new();
        let mut kernel_rows: Vec<Vec<Scalar>> = Vec::new();
        for e in &self.entries {
            if e.label.dim > n {
                continue;
            }
            let into = intertwiners(&e.corep, v, alg)?;
            if into.is_empty() {
                continue;
            }
            for s in intertwiners(v, &e.corep, alg)? {
                kernel_rows.extend((0..s.nrows()).map(|i| s.row(i)));
            }
            components.push(Component { label: Some(e.label), dim: e.label.dim, multiplicity: into.len(), exact: true });
            for t in into {
                blocks.push((t, e.corep.clone()));
            }
        }
        let residual = if kernel_rows.is_empty() {
            Matrix::identity(n)
        } else {
            let k = Matrix::from_rows(kernel_rows)?.kernel();
            Matrix::from_columns(&k, n)
        };
        let mut pieces = Vec::new();
        let mut numeric = Vec::new();
        if residual.ncols() > 0 {
            let c = left_inverse(&residual)?;
            let sub = v.sandwich(&c, &residual);
            self.split(sub, residual, alg, &mut pieces, &mut numeric)?;
        }
        for p in pieces {
            let label = self.register(p.corep.clone(), level, alg)?;
            match components.iter_mut().find(|c| c.label == Some(label)) {
                Some(c) => c.multiplicity += 1,
                None => components.push(Component { label: Some(label), dim: label.dim, multiplicity: 1, exact: true }),
            }
            let registered = self.get(label)?.corep.clone();
            // Re-express the piece through the registered representative.
            let t = intertwiners(&registered, &p.corep, alg)?
                .into_iter()
                .next()
                .ok_or_else(|| CqgError::RegistryMismatch(label.to_string()))?;
            blocks.push((p.basis.mul(&t), registered));
        }
        for d in numeric {
            components.push(Component { label: None, dim: d, multiplicity: 1, exact: false });
        }
        components.sort_by_key(|c| (c.label.map(|l| l.index).unwrap_or(usize::MAX), c.dim));
        let (witness, witness_verified) = if components.iter().all(|c| c.exact) {
            let cols: Vec<Vec<Scalar>> = blocks.iter().flat_map(|(t, _)| (0..t.ncols()).map(|j| t.column(j))).collect();
            let w = Matrix::from_columns(&cols, n);
            let ok = w.is_square() && w.rank() == n && blocks.iter().all(|(t, r)| is_intertwiner(t, r, v));
            (Some(w), ok)
        } else {
            (None, false)
        };
        Ok(Decomposition { dim: n, end_dim, components, witness, witness_verified })
    }

    fn split(&self, x: Corep, basis: Matrix, alg: &CqgAlgebra, out: &mut Vec<Piece>, numeric: &mut Vec<usize>) -> Result<()> {
        let end = intertwiners(&x, &x, alg)?;
        if end.len() <= 1 {
            out.push(Piece { corep: x, basis });
            return Ok(());
        }
        match exact_eigenspaces(&end)? {
            Some(spaces) => {
                for e in spaces {
                    let c = left_inverse(&e)?;
                    let sub = x.sandwich(&c, &e);
                    self.split(sub, basis.mul(&e), alg, out, numeric)?;
                }
            }
            None => numeric.extend(numeric_split(&end, self.q0)?),
        }
        Ok(())
    }

    /// Decompose every tensor product of registered classes whose levels sum to at most
    /// `depth`, registering new classes on the way. Rows are appended in a fixed order.
    pub fn fusion_table(&mut self, alg: &CqgAlgebra, depth: usize) -> Result<Vec<FusionEntry>> {
        loop {
            let next = (0..self.entries.len())
                .flat_map(|a| (0..self.entries.len()).map(move |b| (a, b)))
                .filter(|&(a, b)| !self.done.contains(&(a, b)))
                .filter(|&(a, b)| self.entries[a].level + self.entries[b].level <= depth)
                .min_by_key(|&(a, b)| (self.entries[a].level + self.entries[b].level, a, b));
            let Some((a, b)) = next else { break };
            self.done.insert((a, b));
            let level = self.entries[a].level + self.entries[b].level;
            let t = self.entries[a].corep.tensor(&self.entries[b].corep, alg);
            let d = self.decompose(&t, level, alg)?;
            self.fusion.push(FusionEntry {
                left: self.entries[a].label,
                right: self.entries[b].label,
                summands: d.summands().into_iter().map(|(label, multiplicity)| FusionSummand { label, multiplicity }).collect(),
                numeric_dims: d.components.iter().filter(|c| !c.exact).map(|c| c.dim).collect(),
            });
        }
        let mut rows: Vec<FusionEntry> = self
            .fusion
            .iter()
            .filter(|f| self.get(f.left).unwrap().level + self.get(f.right).unwrap().level <= depth)
            .cloned()
            .collect();
        rows.sort_by_key(|f| (f.left.index, f.right.index));
        Ok(rows)
    }

    /// Explore until `Σ dim² = total` (the dimension of a finite quantum group) or
    /// `max_depth` is reached.
    pub fn close_finite(&mut self, alg: &CqgAlgebra, total: usize, max_depth: usize) -> Result<bool> {
        for depth in 1..=max_depth {
            self.fusion_table(alg, depth)?;
            if self.entries.iter().map(|e| e.label.dim * e.label.dim).sum::<usize>() == total {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Fusion rows as `[{left, right, summands: [{label, multiplicity}]}]`.
pub fn fusion_json(rows: &[FusionEntry]) -> serde_json::Value {
    serde_json::to_value(rows).expect("fusion rows serialize")
}

/// `C` with `C B = I`, supported on a set of rows of `B` that form an invertible block.
fn left_inverse(b: &Matrix) -> Result<Matrix> {
    let (n, k) = (b.nrows(), b.ncols());
    let mut e = Echelon::new(k);
    let mut rows = Vec::new();
    for i in 0..n {
        if e.insert(sparse(&b.row(i))).is_some() {
            rows.push(i);
        }
        if rows.len() == k {
            break;
        }
    }
    let sub = Matrix::from_fn(k, k, |i, j| b.get(rows[i], j).clone());
    let inv = sub.inverse()?;
    let mut c = Matrix::zeros(k, n);
    for (j, &r) in rows.iter().enumerate() {
        for i in 0..k {
            c.set(i, r, inv.get(i, j).clone());
        }
    }
    Ok(c)
}

/// Monic minimal polynomial of `a` as coefficients `c_0, …, c_{m-1}, 1`.
pub(crate) fn minimal_polynomial(a: &Matrix) -> Result<Vec<Scalar>> {
    let k = a.nrows();
    let flat = |m: &Matrix| -> Vec<Scalar> { (0..k).flat_map(|i| m.row(i)).collect() };
    let mut powers = vec![Matrix::identity(k)];
    let mut e = Echelon::new(k * k);
    e.insert(sparse(&flat(&powers[0])));
    loop {
        let next = powers.last().unwrap().mul(a);
        let v = flat(&next);
        if e.insert(sparse(&v)).is_none() {
            let cols: Vec<Vec<Scalar>> = powers.iter().map(&flat).collect();
            let m = cols.len();
            let rows: Vec<Vec<Scalar>> = (0..k * k).map(|r| (0..m).map(|c| cols[c][r].clone()).collect()).collect();
            let sys = LinearSystem::from_dense(&rows, &v)?;
            return match solve_exact(&sys) {
                Solution::Affine { particular, .. } => {
                    let mut out: Vec<Scalar> = particular.iter().map(|s| -s).collect();
                    out.push(Scalar::one());
                    Ok(out)
                }
                Solution::Inconsistent => Err(CqgError::SplittingFailed("minimal polynomial".into())),
            };
        }
        powers.push(next);
    }
}

fn poly_eval(c: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for a in c.iter().rev() {
        acc = &(&acc * x) + a;
    }
    acc
}

/// Best rational approximation within `1e-9`, by continued fractions.
fn approximate(x: f64) -> Option<BigRational> {
    use num_bigint::BigInt;
    let (mut h0, mut h1) = (BigInt::from(0), BigInt::from(1));
    let (mut k0, mut k1) = (BigInt::from(1), BigInt::from(0));
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let approx = BigRational::new(h1.clone(), k1.clone());
        let f: f64 = num_traits::ToPrimitive::to_f64(&approx).unwrap_or(f64::NAN);
        if (f - x).abs() < 1e-9 {
            return Some(approx);
        }
        let frac = r - a;
        if frac.abs() < 1e-15 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

/// Exact roots of a monic polynomial over Q(i)(q): degree ≤ 2 by formula, and any
/// degree for constant coefficients by numeric roots reconstructed as Gaussian
/// rationals and checked exactly.
pub(crate) fn exact_roots(c: &[Scalar]) -> Option<Vec<Scalar>> {
    let m = c.len() - 1;
    match m {
        0 => Some(vec![]),
        1 => Some(vec![-&c[0]]),
        2 => {
            let disc = &(&c[1] * &c[1]) - &(&Scalar::from_int(4) * &c[0]);
            let s = disc.sqrt()?;
            let half = Scalar::from_ratio(1, 2);
            let r1 = &(&(-&c[1]) + &s) * &half;
            let r2 = &(&(-&c[1]) - &s) * &half;
            if r1 == r2 {
                Some(vec![r1])
            } else {
                Some(vec![r1, r2])
            }
        }
        _ => {
            if !c.iter().all(Scalar::is_constant) {
                return None;
            }
            let mut comp = DMatrix::<Complex64>::zeros(m, m);
            for i in 1..m {
                comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
            }
            for i in 0..m {
                comp[(i, m - 1)] = -c[i].eval(Complex64::new(0.5, 0.0)).ok()?;
            }
            let eig = comp.schur().eigenvalues()?;
            let mut roots: Vec<Scalar> = Vec::new();
            for z in eig.iter() {
                let r = Scalar::from_gauss(GaussQ::new(approximate(z.re)?, approximate(z.im)?));
                if poly_eval(c, &r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
            Some(roots)
        }
    }
}

/// Eigenspaces of the first commutant element whose spectrum is exactly computable
/// and splits the space.
fn exact_eigenspaces(end: &[Matrix]) -> Result<Option<Vec<Matrix>>> {
    let k = end[0].nrows();
    let mut candidates: Vec<Matrix> = end.iter().filter(|a| !a.is_scalar_multiple_of_identity()).cloned().collect();
    for i in 0..end.len() {
        for j in i + 1..end.len() {
            candidates.push(end[i].add(&end[j].scale(&Scalar::from_int(j as i64 + 1))));
        }
    }
    for a in candidates {
        if a.is_scalar_multiple_of_identity() {
            continue;
        }
        let mp = minimal_polynomial(&a)?;
        let Some(roots) = exact_roots(&mp) else { continue };
        if roots.len() < 2 {
            continue;
        }
        let spaces: Vec<Matrix> = roots
            .iter()
            .map(|r| {
                let k_basis = a.sub(&Matrix::identity(k).scale(r)).kernel();
                Matrix::from_columns(&k_basis, k)
            })
            .collect();
        if spaces.iter().map(Matrix::ncols).sum::<usize>() == k && spaces.iter().all(|s| s.ncols() > 0) {
            return Ok(Some(spaces));
        }
    }
    Ok(None)
}

/// Eigenvalue multiplicities of a non-scalar commutant element at `q0`.
fn numeric_split(end: &[Matrix], q0: f64) -> Result<Vec<usize>> {
    let a = end
        .iter()
        .find(|a| !a.is_scalar_multiple_of_identity())
        .ok_or_else(|| CqgError::SplittingFailed("commutant has no non-scalar element".into()))?;
    let m = a.eval(Complex64::new(q0, 0.0))?;
    let eig = m.schur().eigenvalues().ok_or_else(|| CqgError::SplittingFailed("no Schur form".into()))?;
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for z in eig.iter() {
        match clusters.iter_mut().find(|(c, _)| (c - z).norm() < CLUSTER_TOL) {
            Some(c) => c.1 += 1,
            None => clusters.push((*z, 1)),
        }
    }
    if clusters.len() < 2 {
        return Err(CqgError::SplittingFailed(format!("eigenvalues of a non-scalar commutant element collide at q = {}", q0)));
    }
    Ok(clusters.into_iter().map(|(_, k)| k).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::su_q_2;

    #[test]
    fn quadratic_and_constant_roots() {
        let q = Scalar::q();
        // (x - q)(x + q^-1)
        let c = vec![-Scalar::one(), &q.inv().unwrap() - &q, Scalar::one()];
        let mut r = exact_roots(&c).unwrap();
        r.sort_by_key(|s| s.to_string());
        assert_eq!(r, vec![-q.inv().unwrap(), q.clone()]);
        // x^2 - 2 has no root in the field.
        assert!(exact_roots(&[Scalar::from_int(-2), Scalar::zero(), Scalar::one()]).is_none());
        // (x - 1)(x - i)(x + 1/2)
        let roots = [Scalar::one(), Scalar::i(), Scalar::from_ratio(-1, 2)];
        let mut c = vec![Scalar::one()];
        for r in &roots {
            let mut next = vec![Scalar::zero(); c.len() + 1];
            for (k, a) in c.iter().enumerate() {
                next[k + 1] = &next[k + 1] + a;
                next[k] = &next[k] - &(a * r);
            }
            c = next;
        }
        assert_eq!(exact_roots(&c).unwrap().len(), 3);
    }

    #[test]
    fn label_round_trip() {
        let l = Label { dim: 3, index: 2 };
        assert_eq!(l.to_string(), "d3#2");
        assert_eq!("d3#2".parse::<Label>().unwrap(), l);
        assert!("x3".parse::<Label>().is_err());
    }

    #[test]
    fn su_q_2_u_tensor_u() {
        let alg = su_q_2();
        let mut reg = IrrepRegistry::new(&alg).unwrap();
        assert_eq!(reg.len(), 2);
        assert_eq!(reg.entries()[1].name, "u");
        let u = alg.fundamentals()[0].clone();
        let d = reg.decompose(&u.tensor(&u, &alg), 2, &alg).unwrap();
        assert!(d.is_complete() && d.witness_verified && d.end_dim_consistent());
        let dims: Vec<(usize, usize)> = d.components.iter().map(|c| (c.dim, c.multiplicity)).collect();
        assert_eq!(dims, vec![(1, 1), (3, 1)]);
        assert_eq!(d.end_dim, 2);
        let w3 = reg.get(Label { dim: 3, index: 2 }).unwrap();
        assert!(!w3.is_unitary());
        assert_eq!(intertwiners(&w3.corep, &w3.corep, &alg).unwrap().len(), 1);
    }

    #[test]
    fn direct_sum_has_multiplicity_two() {
        let alg = su_q_2();
        let mut reg = IrrepRegistry::new(&alg).unwrap();
        let u = alg.fundamentals()[0].clone();
        let d = reg.decompose(&u.direct_sum(&u), 1, &alg).unwrap();
        assert_eq!(d.summands(), vec![(Label { dim: 2, index: 1 }, 2)]);
        assert!(d.witness_verified);
        let d = reg.decompose(&Corep::trivial(), 0, &alg).unwrap();
        assert_eq!(d.summands(), vec![(reg.trivial(), 1)]);
    }

    #[test]
    fn direct_sum_splits_without_known_class() {
        // Without u registered the commutant is M_2 and must be split by eigenspaces.
        let alg = su_q_2().with_fundamentals(vec![]).unwrap();
        let mut reg = IrrepRegistry::new(&alg).unwrap();
        let u = su_q_2().fundamentals()[0].clone();
        let d = reg.decompose(&u.direct_sum(&u), 1, &alg).unwrap();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].multiplicity, 2);
        assert!(d.witness_verified);
    }

    #[test]
    fn fusion_depth_three_matches_clebsch_gordan() {
        let alg = su_q_2();
        let mut reg = IrrepRegistry::new(&alg).unwrap();
        let rows = reg.fusion_table(&alg, 3).unwrap();
        let dims: Vec<usize> = reg.entries().iter().map(|e| e.label.dim).collect();
        assert_eq!(dims, vec![1, 2, 3, 4]);
        // Classical oracle: spin j1 ⊗ j2 = ⊕_{|j1-j2|}^{j1+j2}, with dim = 2j + 1.
        for r in &rows {
            let (a, b) = (r.left.dim, r.right.dim);
            let mut expected: Vec<usize> = (0..a.min(b)).map(|k| a + b - 1 - 2 * k).collect();
            expected.sort();
            let mut got: Vec<usize> = r.summands.iter().flat_map(|s| vec![s.label.dim; s.multiplicity]).collect();
            got.sort();
            assert_eq!(got, expected, "{} ⊗ {}", r.left, r.right);
        }
        let json = fusion_json(&rows);
        assert_eq!(json[0]["left"], "d1#0");
    }
}
