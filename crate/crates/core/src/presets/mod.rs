//! Built-in quantum groups.

mod finite;
mod unitary;

pub use finite::{
    c_of_group, cayley, group_algebra, parse_cayley_csv, CayleyTable, FINITE_GROUPS,
};
pub use unitary::{a_u, determinant_sign, su_q_n, su_q_n_to_su_q_2, transpose_inverse_witness, HomomorphismReport};

use crate::corep::Corep;
use crate::error::{CqgError, Result};
use crate::hopf::{CqgAlgebra, HopfTables};
use crate::ncalg::{generators, NcPoly, Presentation, Rule, TensorPoly, Word};
use crate::scalar::Scalar;

/// Word from space-separated generator names.
pub(crate) fn word(p: &Presentation, names: &str) -> Word {
    Word::from_letters(
        &names
            .split_whitespace()
            .map(|n| p.letter(n).unwrap_or_else(|| panic!("unknown generator {}", n)))
            .collect::<Vec<_>>(),
    )
}

pub(crate) fn mono(p: &Presentation, c: Scalar, names: &str) -> NcPoly {
    NcPoly::term(word(p, names), c)
}

/// SU_q(2): generators `a`, `g` (for α, γ) and their stars.
pub fn su_q_2() -> CqgAlgebra {
    let q = Scalar::q;
    let one = Scalar::one;
    let gens = generators(&[("a", "a*", 2), ("a*", "a", 2), ("g", "g*", 1), ("g*", "g", 1)]);
    let bare = Presentation::new(gens.clone(), vec![]).expect("generators");
    let m = |c: Scalar, s: &str| mono(&bare, c, s);
    let rule = |lhs: &str, rhs: NcPoly| Rule { lhs: word(&bare, lhs), rhs };
    let rules = vec![
        rule("a* a", NcPoly::one().sub(&m(one(), "g g*"))),
        rule("a a*", NcPoly::one().sub(&m(q().pow(2).unwrap(), "g g*"))),
        rule("g a", m(q().inv().unwrap(), "a g")),
        rule("g* a", m(q().inv().unwrap(), "a g*")),
        rule("g a*", m(q(), "a* g")),
        rule("g* a*", m(q(), "a* g*")),
        rule("g* g", m(one(), "g g*")),
    ];
    let pres = Presentation::new(gens, rules)
        .expect("SU_q(2) rules are oriented")
        .with_basis_description("a^k g^m g*^n, a*^k g^m g*^n");
    let p = &pres;
    let l = |n: &str| p.letter(n).unwrap();
    let t = |c: Scalar, x: &str, y: &str| {
        let mut t = TensorPoly::zero(2);
        t.add_term([word(p, x), word(p, y)].into_iter().collect(), c);
        t
    };
    let mut delta_a = t(one(), "a", "a");
    delta_a.add_scaled(&t(-q(), "g*", "g"), &one());
    let mut delta_g = t(one(), "g", "a");
    delta_g.add_scaled(&t(one(), "a*", "g"), &one());
    let mut tables = HopfTables::default();
    tables.delta.insert(l("a"), delta_a);
    tables.delta.insert(l("g"), delta_g);
    tables.eps.insert(l("a"), one());
    tables.eps.insert(l("g"), Scalar::zero());
    tables.kappa.insert(l("a"), m(one(), "a*"));
    tables.kappa.insert(l("a*"), m(one(), "a"));
    tables.kappa.insert(l("g"), m(-q(), "g"));
    tables.kappa.insert(l("g*"), m(-q().inv().unwrap(), "g*"));
    let alg = CqgAlgebra::new("su_q_2", pres, tables).expect("SU_q(2) tables respect the relations");
    let u = Corep::new(
        &alg,
        vec![vec![m(one(), "a"), m(-q(), "g*")], vec![m(one(), "g"), m(one(), "a*")]],
    )
    .expect("square")
    .with_name("u");
    alg.with_fundamentals(vec![u]).expect("fundamental corepresentation")
}

/// Names accepted by [`by_name`].
pub fn preset_names() -> Vec<String> {
    let mut v = vec!["su_q_2".to_string(), "su_q_3".into(), "su_q_n:<n>".into(), "a_u_i2".into()];
    for g in FINITE_GROUPS {
        v.push(format!("c_{}", g));
        v.push(format!("cg_{}", g));
    }
    v
}

/// The finite-dimensional form of a `c_<g>` or `cg_<g>` preset.
pub fn finite_by_name(name: &str) -> Result<crate::regrep::FiniteAlgebra> {
    if let Some(g) = name.strip_prefix("cg_").filter(|g| FINITE_GROUPS.contains(g)) {
        return group_algebra(&cayley(g)?);
    }
    if let Some(g) = name.strip_prefix("c_").filter(|g| FINITE_GROUPS.contains(g)) {
        return c_of_group(&cayley(g)?);
    }
    Err(CqgError::UnknownPreset(name.to_string()))
}

/// Look up a preset by name; finite-group presets return their Hopf-algebra view.
pub fn by_name(name: &str) -> Result<CqgAlgebra> {
    if name == "su_q_2" {
        return Ok(su_q_2());
    }
    if name == "a_u_i2" {
        return a_u(&crate::scalar::Matrix::identity(2));
    }
    let n_str = name.strip_prefix("su_q_n:").or_else(|| name.strip_prefix("su_q_"));
    if let Some(n) = n_str.and_then(|s| s.parse::<usize>().ok()) {
        if n >= 2 {
            return Ok(su_q_n(n));
        }
    }
    if let Some(g) = name.strip_prefix("cg_") {
        if FINITE_GROUPS.contains(&g) {
            return Ok(group_algebra(&cayley(g)?)?.into_hopf()?);
        }
    }
    if let Some(g) = name.strip_prefix("c_") {
        if FINITE_GROUPS.contains(&g) {
            return Ok(c_of_group(&cayley(g)?)?.into_hopf()?);
        }
    }
    Err(CqgError::UnknownPreset(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su_q_2_hopf_axioms_bound_4() {
        let alg = su_q_2();
        let rep = alg.verify_hopf(4);
        assert!(rep.passed(), "{:?}", rep.failures);
        assert_eq!(rep.monomials_checked, 1 + 4 + 9 + 16 + 25);
    }

    #[test]
    fn su_q_2_normal_forms() {
        let alg = su_q_2();
        let p = alg.presentation();
        let ga = p.normal_form(&NcPoly::word(word(p, "g a"))).unwrap();
        assert_eq!(p.fmt_poly(&ga), "q^-1 * a g");
        let asa = p.normal_form(&NcPoly::word(word(p, "a* a"))).unwrap();
        assert_eq!(p.fmt_poly(&asa), "1 - g g*");
        let ggs = p.normal_form(&NcPoly::word(word(p, "g g*"))).unwrap();
        assert_eq!(p.fmt_poly(&ggs), "g g*");
        assert!(p.check_confluence(6).is_confluent());
    }

    #[test]
    fn su_q_2_counit_and_kappa() {
        let alg = su_q_2();
        assert!(alg.counit(&alg.gen("g*").unwrap()).unwrap().is_zero());
        assert!(alg.counit(&alg.gen("a*").unwrap()).unwrap().is_one());
    }

    #[test]
    fn corrupted_kappa_fails_on_g() {
        let alg = su_q_2();
        let p = alg.presentation();
        let g = p.letter("g").unwrap();
        let bad = alg.with_kappa_entry_unchecked(g, mono(p, Scalar::q(), "g"));
        let rep = bad.verify_hopf(1);
        assert!(!rep.passed());
        assert!(rep.failures.iter().any(|f| f.monomial == "g" && f.axiom.starts_with("antipode")));
    }

    #[test]
    fn su_q_2_galois_maps() {
        let alg = su_q_2();
        let rep = alg.galois_maps(1).unwrap();
        assert!(rep.passed(), "{:?}", rep);
        assert_eq!(rep.domain_dim, 25);
    }

    #[test]
    fn monomial_counts() {
        let alg = su_q_2();
        let p = alg.presentation();
        for d in 0..6 {
            let exact = p.normal_monomials(d).iter().filter(|w| w.len() == d).count();
            assert_eq!(exact, (d + 1) * (d + 2) / 2 + d * (d + 1) / 2);
        }
    }
}
