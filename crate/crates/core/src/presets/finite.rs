//! Function algebras `C(G)` and group algebras `ℂ[G]` of finite groups.

use crate::corep::Corep;
use crate::error::{CqgError, Result};
use crate::hopf::{CqgAlgebra, HopfTables};
use crate::ncalg::{Generator, Letter, NcPoly, Presentation, Rule, TensorPoly, Word};
use crate::regrep::{FiniteAlgebra, FiniteAlgebraData};
use crate::scalar::{Matrix, Scalar};
use std::collections::{BTreeMap, VecDeque};

/// Shipped groups: all irreducible matrix entries they need lie in ℚ(i).
pub const FINITE_GROUPS: [&str; 5] = ["z2", "z4", "s3", "d4", "q8"];

/// A finite group by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    pub name: String,
    pub names: Vec<String>,
    /// `table[g][h]` is the index of `gh`.
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverse: Vec<usize>,
}

impl CayleyTable {
    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn from_table(name: &str, names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    if table[table[g][h]][k] != table[g][table[h][k]] {
                        return Err(CqgError::NotAGroup(format!(
                            "associativity fails on ({}, {}, {})",
                            names[g], names[h], names[k]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| CqgError::NotAGroup("no identity element".into()))?;
        let inverse = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| table[g][h] == identity && table[h][g] == identity)
                    .ok_or_else(|| CqgError::NotAGroup(format!("{} has no inverse", names[g])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CayleyTable { name: name.to_string(), names, table, identity, inverse })
    }
}

/// Parse a table whose header row lists the elements after an empty corner cell and whose
/// row `g`, column `h` holds the name of `gh`.
pub fn parse_cayley_csv(name: &str, src: &str) -> Result<CayleyTable> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(src.as_bytes());
    let header = rdr.headers().map_err(|e| CqgError::Io(e.to_string()))?.clone();
    let names: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    if names.is_empty() {
        return Err(CqgError::NotAGroup("empty table".into()));
    }
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(k, n)| (n.as_str(), k)).collect();
    if index.len() != names.len() {
        return Err(CqgError::NotAGroup("duplicate element names".into()));
    }
    let mut rows: Vec<Option<Vec<usize>>> = vec![None; names.len()];
    for rec in rdr.records() {
        let rec = rec.map_err(|e| CqgError::Io(e.to_string()))?;
        let g = rec.get(0).and_then(|s| index.get(s)).ok_or_else(|| {
            CqgError::NotAGroup(format!("row label {:?} is not an element", rec.get(0).unwrap_or("")))
        })?;
        if rec.len() != names.len() + 1 {
            return Err(CqgError::NotAGroup(format!("row {} has {} entries", names[*g], rec.len() - 1)));
        }
        let row = rec
            .iter()
            .skip(1)
            .map(|s| index.get(s).copied().ok_or_else(|| CqgError::NotAGroup(format!("product {:?} is not an element", s))))
            .collect::<Result<Vec<_>>>()?;
        if rows[*g].replace(row).is_some() {
            return Err(CqgError::NotAGroup(format!("duplicate row {}", names[*g])));
        }
    }
    let table = rows
        .into_iter()
        .enumerate()
        .map(|(g, r)| r.ok_or_else(|| CqgError::NotAGroup(format!("missing row {}", names[g]))))
        .collect::<Result<Vec<_>>>()?;
    CayleyTable::from_table(name, names, table)
}

/// A shipped group's table.
pub fn cayley(name: &str) -> Result<CayleyTable> {
    let src = match name {
        "z2" => include_str!("../../data/z2.csv"),
        "z4" => include_str!("../../data/z4.csv"),
        "s3" => include_str!("../../data/s3.csv"),
        "d4" => include_str!("../../data/d4.csv"),
        "q8" => include_str!("../../data/q8.csv"),
        _ => return Err(CqgError::UnknownPreset(name.to_string())),
    };
    parse_cayley_csv(name, src)
}

fn int(k: i64) -> Scalar {
    Scalar::from_int(k)
}

/// Images of generating elements under the faithful representation used as fundamental.
fn generator_images(group: &str) -> Option<Vec<(&'static str, Matrix)>> {
    let m = |rows: Vec<Vec<Scalar>>| Matrix::from_rows(rows).expect("rectangular");
    let perm = |p: [usize; 3]| Matrix::from_fn(3, 3, |i, j| if p[j] == i { Scalar::one() } else { Scalar::zero() });
    Some(match group {
        "z2" => vec![("1", m(vec![vec![int(-1)]]))],
        "z4" => vec![("1", m(vec![vec![Scalar::i()]]))],
        "s3" => vec![("r", perm([1, 2, 0])), ("s", perm([1, 0, 2]))],
        "d4" => vec![
            ("r", m(vec![vec![int(0), int(-1)], vec![int(1), int(0)]])),
            ("s", m(vec![vec![int(1), int(0)], vec![int(0), int(-1)]])),
        ],
        "q8" => vec![
            ("i", m(vec![vec![Scalar::i(), int(0)], vec![int(0), -Scalar::i()]])),
            ("j", m(vec![vec![int(0), int(1)], vec![int(-1), int(0)]])),
        ],
        _ => return None,
    })
}

/// Extend generator images along the table and check the result is a homomorphism.
fn representation(g: &CayleyTable, gens: &[(&str, Matrix)]) -> Result<Vec<Matrix>> {
    let d = gens.first().map_or(1, |(_, m)| m.nrows());
    let mut images: Vec<Option<Matrix>> = vec![None; g.order()];
    images[g.identity] = Some(Matrix::identity(d));
    let gen_idx = gens
        .iter()
        .map(|(n, m)| g.index(n).map(|k| (k, m.clone())).ok_or_else(|| CqgError::NotAGroup(format!("no element {}", n))))
        .collect::<Result<Vec<_>>>()?;
    let mut queue = VecDeque::from([g.identity]);
    while let Some(x) = queue.pop_front() {
        for (s, ms) in &gen_idx {
            let y = g.mul(x, *s);
            if images[y].is_none() {
                images[y] = Some(images[x].as_ref().unwrap().mul(ms));
                queue.push_back(y);
            }
        }
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(k, m)| m.ok_or_else(|| CqgError::NotAGroup(format!("{} is not generated", g.names[k]))))
        .collect::<Result<Vec<_>>>()?;
    for x in 0..g.order() {
        for y in 0..g.order() {
            if images[x].mul(&images[y]) != images[g.mul(x, y)] {
                return Err(CqgError::NotAGroup(format!(
                    "representation is not multiplicative on ({}, {})",
                    g.names[x], g.names[y]
                )));
            }
        }
    }
    Ok(images)
}

fn self_adjoint_gens(names: &[String]) -> Vec<Generator> {
    names.iter().enumerate().map(|(k, n)| Generator { name: n.clone(), star: k as Letter, weight: 1 }).collect()
}

fn tensor(a: Word, b: Word) -> TensorPoly {
    let mut t = TensorPoly::zero(2);
    t.add_term([a, b].into_iter().collect(), Scalar::one());
    t
}

/// `C(G)` in the delta basis: `δ_g δ_h = [g = h] δ_g`, `Δ(δ_g) = Σ_{xy=g} δ_x⊗δ_y`,
/// `ε(δ_g) = [g = e]`, `κ(δ_g) = δ_{g⁻¹}`.
///
/// The presented view has self-adjoint generators `d_g` with `d_e` last and eliminated by
/// `d_e → 1 - Σ_{g≠e} d_g`. Shipped groups carry their faithful representation
/// `u = Σ_g π(g) ⊗ δ_g` as fundamental.
pub fn c_of_group(g: &CayleyTable) -> Result<FiniteAlgebra> {
    let n = g.order();
    let e = g.identity;
    let delta_ind = |a: usize, b: usize| if a == b { Scalar::one() } else { Scalar::zero() };
    let mut mult = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                mult.push(if a == b && b == c { Scalar::one() } else { Scalar::zero() });
            }
        }
    }
    let mut delta = vec![Scalar::zero(); n * n * n];
    for x in 0..n {
        for y in 0..n {
            delta[g.mul(x, y) * n * n + x * n + y] = Scalar::one();
        }
    }
    let data = FiniteAlgebraData {
        name: format!("c_{}", g.name),
        basis: g.names.iter().map(|s| format!("δ_{}", s)).collect(),
        mult,
        star: (0..n * n).map(|k| delta_ind(k / n, k % n)).collect(),
        delta,
        unit: vec![Scalar::one(); n],
        counit: (0..n).map(|a| delta_ind(a, e)).collect(),
        antipode: (0..n * n).map(|k| delta_ind(g.inverse[k / n], k % n)).collect(),
    };
    let fa = FiniteAlgebra::new(data)?;

    // Letters: non-identity elements in table order, then the identity.
    let order: Vec<usize> = (0..n).filter(|&x| x != e).chain([e]).collect();
    let letter_of: Vec<Letter> = {
        let mut l = vec![0; n];
        for (k, &x) in order.iter().enumerate() {
            l[x] = k as Letter;
        }
        l
    };
    let gens = self_adjoint_gens(&order.iter().map(|&x| format!("d_{}", g.names[x])).collect::<Vec<_>>());
    let w = |x: usize| Word::letter(letter_of[x]);
    let mut rules = Vec::new();
    let mut rest = NcPoly::one();
    for &x in &order[..n - 1] {
        rest.add_term(w(x), -Scalar::one());
        for &y in &order[..n - 1] {
            let rhs = if x == y { NcPoly::word(w(x)) } else { NcPoly::zero() };
            rules.push(Rule { lhs: w(x).concat(&w(y)), rhs });
        }
    }
    rules.push(Rule { lhs: w(e), rhs: rest });
    let pres = Presentation::new(gens, rules)?;
    let mut tables = HopfTables::default();
    for x in 0..n {
        let mut d = TensorPoly::zero(2);
        for a in 0..n {
            for b in 0..n {
                if g.mul(a, b) == x {
                    d.add_scaled(&tensor(w(a), w(b)), &Scalar::one());
                }
            }
        }
        tables.delta.insert(letter_of[x], d);
        tables.eps.insert(letter_of[x], delta_ind(x, e));
        tables.kappa.insert(letter_of[x], NcPoly::word(w(g.inverse[x])));
    }
    let alg = CqgAlgebra::new(format!("c_{}", g.name), pres, tables)?;
    let polys: Vec<NcPoly> = (0..n).map(|x| NcPoly::word(w(x))).collect();
    let alg = match generator_images(&g.name) {
        Some(gens) => {
            let pi = representation(g, &gens)?;
            let d = pi[0].nrows();
            let mut entries = vec![NcPoly::zero(); d * d];
            for (x, m) in pi.iter().enumerate() {
                for (k, entry) in entries.iter_mut().enumerate() {
                    entry.add_scaled(&polys[x], m.get(k / d, k % d));
                }
            }
            let entries = entries.iter().map(|p| alg.presentation().normal_form(p)).collect::<Result<Vec<_>>>()?;
            let u = Corep::from_entries(d, entries).with_name("u");
            alg.with_fundamentals(vec![u])?
        }
        None => alg,
    };
    fa.with_view(alg, polys)
}

/// `ℂ[G]` with `Δ(g) = g⊗g`, `ε(g) = 1`, `κ(g) = g⁻¹ = g*`. The view has generators
/// `g_x` for `x ≠ e`; every group element is a one-dimensional fundamental.
pub fn group_algebra(g: &CayleyTable) -> Result<FiniteAlgebra> {
    let n = g.order();
    let e = g.identity;
    let ind = |a: usize, b: usize| if a == b { Scalar::one() } else { Scalar::zero() };
    let mut mult = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            mult.extend((0..n).map(|c| ind(g.mul(a, b), c)));
        }
    }
    let mut delta = vec![Scalar::zero(); n * n * n];
    for a in 0..n {
        delta[a * n * n + a * n + a] = Scalar::one();
    }
    let data = FiniteAlgebraData {
        name: format!("cg_{}", g.name),
        basis: g.names.clone(),
        mult,
        star: (0..n * n).map(|k| ind(g.inverse[k / n], k % n)).collect(),
        delta,
        unit: (0..n).map(|a| ind(a, e)).collect(),
        counit: vec![Scalar::one(); n],
        antipode: (0..n * n).map(|k| ind(g.inverse[k / n], k % n)).collect(),
    };
    let fa = FiniteAlgebra::new(data)?;

    let others: Vec<usize> = (0..n).filter(|&x| x != e).collect();
    let letter = |x: usize| others.iter().position(|&y| y == x).map(|k| k as Letter);
    let gens: Vec<Generator> = others
        .iter()
        .map(|&x| Generator {
            name: format!("g_{}", g.names[x]),
            star: letter(g.inverse[x]).expect("inverse of a non-identity element"),
            weight: 1,
        })
        .collect();
    let elem = |x: usize| match letter(x) {
        Some(l) => NcPoly::letter(l),
        None => NcPoly::one(),
    };
    let mut rules = Vec::new();
    for &x in &others {
        for &y in &others {
            rules.push(Rule { lhs: Word::from_letters(&[letter(x).unwrap(), letter(y).unwrap()]), rhs: elem(g.mul(x, y)) });
        }
    }
    let pres = Presentation::new(gens, rules)?;
    let mut tables = HopfTables::default();
    for &x in &others {
        let l = letter(x).unwrap();
        tables.delta.insert(l, tensor(Word::letter(l), Word::letter(l)));
        tables.eps.insert(l, Scalar::one());
        tables.kappa.insert(l, elem(g.inverse[x]));
    }
    let alg = CqgAlgebra::new(format!("cg_{}", g.name), pres, tables)?;
    let fundamentals = others
        .iter()
        .map(|&x| Corep::from_entries(1, vec![elem(x)]).with_name(g.names[x].clone()))
        .collect();
    let alg = alg.with_fundamentals(fundamentals)?;
    fa.with_view(alg, (0..n).map(elem).collect())
}
