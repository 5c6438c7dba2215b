use super::Scalar;
use crate::error::{CqgError, Result};
use std::collections::BTreeMap;

/// Sparse row: strictly increasing column indices with nonzero entries.
pub type SparseRow = Vec<(usize, Scalar)>;

/// `A x = b` over Q(i)(q) with named unknowns.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    pub rows: Vec<SparseRow>,
    pub rhs: Vec<Scalar>,
    pub labels: Vec<String>,
}

impl LinearSystem {
    pub fn new(labels: Vec<String>) -> Self {
        LinearSystem { rows: Vec::new(), rhs: Vec::new(), labels }
    }

    pub fn nvars(&self) -> usize {
        self.labels.len()
    }

    pub fn from_dense(a: &[Vec<Scalar>], b: &[Scalar]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(CqgError::Dimension("row count differs from right-hand side".into()));
        }
        let n = a.first().map_or(0, |r| r.len());
        let mut sys = LinearSystem::new((0..n).map(|k| format!("x{}", k)).collect());
        for (row, rhs) in a.iter().zip(b) {
            if row.len() != n {
                return Err(CqgError::Dimension("ragged coefficient matrix".into()));
            }
            let sparse = row
                .iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .map(|(j, s)| (j, s.clone()))
                .collect();
            sys.push(sparse, rhs.clone())?;
        }
        Ok(sys)
    }

    /// Append a row given as (column, coefficient) pairs in any order; duplicates are summed.
    pub fn push(&mut self, entries: Vec<(usize, Scalar)>, rhs: Scalar) -> Result<()> {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (j, s) in entries {
            if j >= self.nvars() {
                return Err(CqgError::Dimension(format!("column {} out of range", j)));
            }
            let e = acc.entry(j).or_insert_with(Scalar::zero);
            *e += &s;
        }
        let row: SparseRow = acc.into_iter().filter(|(_, s)| !s.is_zero()).collect();
        self.rows.push(row);
        self.rhs.push(rhs);
        Ok(())
    }
}

/// Affine solution space, or the inconsistency marker.
#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Affine { particular: Vec<Scalar>, null_space: Vec<Vec<Scalar>> },
    Inconsistent,
}

impl Solution {
    pub fn null_dim(&self) -> Option<usize> {
        match self {
            Solution::Affine { null_space, .. } => Some(null_space.len()),
            Solution::Inconsistent => None,
        }
    }
}

fn axpy(row: &SparseRow, f: &Scalar, piv: &SparseRow) -> SparseRow {
    // row - f * piv, merged by column.
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        let ci = row.get(i).map(|x| x.0);
        let cj = piv.get(j).map(|x| x.0);
        match (ci, cj) {
            (Some(a), Some(b)) if a == b => {
                let v = &row[i].1 - &(f * &piv[j].1);
                if !v.is_zero() {
                    out.push((a, v));
                }
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a < b => {
                out.push(row[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(row[i].clone());
                i += 1;
            }
            (_, Some(b)) => {
                out.push((b, -&(f * &piv[j].1)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Incremental row echelon form over Q(i)(q).
///
/// Rows are reduced as they arrive; the pivot of a row is its first nonzero column
/// after reduction, so the pivot order is fixed by the order rows are inserted.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduce `row` against the current pivots; returns the residual.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut i = 0;
        while i < row.len() {
            match self.pivots.get(&row[i].0) {
                Some(p) => {
                    let f = row[i].1.clone();
                    row = axpy(&row, &f, p);
                }
                None => i += 1,
            }
        }
        row
    }

    /// Insert a row; returns the new pivot column, or `None` if it was dependent.
    pub fn insert(&mut self, row: SparseRow) -> Option<usize> {
        let mut row = row;
        loop {
            let (c, f) = row.first()?.clone();
            match self.pivots.get(&c) {
                Some(p) => row = axpy(&row, &f, p),
                None => {
                    let inv = f.inv().expect("nonzero pivot");
                    let row: SparseRow = row.into_iter().map(|(j, s)| (j, &s * &inv)).collect();
                    self.pivots.insert(c, row);
                    return Some(c);
                }
            }
        }
    }

    /// Reduced row echelon form: every pivot column is cleared from the other pivot rows.
    pub fn rref(&mut self) {
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &c in &cols {
            let piv = self.pivots[&c].clone();
            let others: Vec<usize> = self.pivots.range(..c).map(|(k, _)| *k).collect();
            for k in others {
                let row = &self.pivots[&k];
                if let Ok(idx) = row.binary_search_by_key(&c, |(j, _)| *j) {
                    let f = row[idx].1.clone();
                    let new = axpy(row, &f, &piv);
                    self.pivots.insert(k, new);
                }
            }
        }
    }

    pub fn pivot_row(&self, c: usize) -> Option<&SparseRow> {
        self.pivots.get(&c)
    }

    /// Basis of the null space of the (homogeneous) rows over the first `nvars` columns.
    /// Requires [`Echelon::rref`] to have been applied.
    pub fn null_space(&self, nvars: usize) -> Vec<Vec<Scalar>> {
        let free: Vec<usize> = (0..nvars).filter(|c| !self.pivots.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); nvars];
                v[f] = Scalar::one();
                for (&c, row) in &self.pivots {
                    if c >= nvars {
                        continue;
                    }
                    if let Ok(idx) = row.binary_search_by_key(&f, |(j, _)| *j) {
                        v[c] = -&row[idx].1;
                    }
                }
                v
            })
            .collect()
    }
}

/// Exact Gaussian elimination over Q(i)(q).
///
/// Pivots are taken in row-major scan order (rows in insertion order, first nonzero column).
/// The null-space basis has a 1 in each free column and zeros in the other free columns.
pub fn solve_exact(sys: &LinearSystem) -> Solution {
    let n = sys.nvars();
    let mut ech = Echelon::new(n + 1);
    for (row, rhs) in sys.rows.iter().zip(&sys.rhs) {
        let mut r = row.clone();
        if !rhs.is_zero() {
            r.push((n, rhs.clone()));
        }
        if ech.insert(r) == Some(n) {
            return Solution::Inconsistent;
        }
    }
    ech.rref();
    let mut particular = vec![Scalar::zero(); n];
    for (&c, row) in &ech.pivots {
        if let Some((j, s)) = row.last() {
            if *j == n {
                particular[c] = s.clone();
            }
        }
    }
    Solution::Affine { particular, null_space: ech.null_space(n) }
}

/// Residual `A x - b` for a candidate solution.
pub fn residual(sys: &LinearSystem, x: &[Scalar]) -> Vec<Scalar> {
    sys.rows
        .iter()
        .zip(&sys.rhs)
        .map(|(row, b)| {
            let mut acc = -b;
            for (j, s) in row {
                acc += &(s * &x[*j]);
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn identity_system() {
        let a = Scalar::q();
        let b = Scalar::from_int(7);
        let sys = LinearSystem::from_dense(&[vec![s(1), s(0)], vec![s(0), s(1)]], &[a.clone(), b.clone()]).unwrap();
        match solve_exact(&sys) {
            Solution::Affine { particular, null_space } => {
                assert_eq!(particular, vec![a, b]);
                assert!(null_space.is_empty());
            }
            _ => panic!("inconsistent"),
        }
    }

    #[test]
    fn zero_equation_one_unknown() {
        let sys = LinearSystem::from_dense(&[vec![s(0)]], &[s(0)]).unwrap();
        match solve_exact(&sys) {
            Solution::Affine { particular, null_space } => {
                assert!(particular[0].is_zero());
                assert_eq!(null_space.len(), 1);
            }
            _ => panic!("inconsistent"),
        }
    }

    #[test]
    fn rank_one_q_system() {
        let q = Scalar::q();
        let q2 = &q * &q;
        let sys = LinearSystem::from_dense(&[vec![s(1), q.clone()], vec![q.clone(), q2]], &[s(0), s(0)]).unwrap();
        match solve_exact(&sys) {
            Solution::Affine { null_space, .. } => assert_eq!(null_space, vec![vec![-&q, s(1)]]),
            _ => panic!("inconsistent"),
        }
    }

    #[test]
    fn inconsistent_is_reported() {
        let sys = LinearSystem::from_dense(&[vec![s(1)], vec![s(1)]], &[s(0), s(1)]).unwrap();
        assert_eq!(solve_exact(&sys), Solution::Inconsistent);
    }
}
