//! Free *-algebras modulo oriented rewrite rules: normal forms, products, star,
//! bounded confluence certificates, and tensor powers.

mod poly;
mod presentation;

pub use poly::{Legs, Letter, NcPoly, TensorPoly, Word};
pub use presentation::{Ambiguity, ConfluenceReport, Generator, Presentation, Rule};
#[allow(unused_imports)]
pub(crate) use presentation::fmt_terms;

/// Generators from `(name, star partner name, weight)` triples.
pub fn generators(decl: &[(&str, &str, u32)]) -> Vec<Generator> {
    let pos = |n: &str| decl.iter().position(|g| g.0 == n).expect("star partner declared") as Letter;
    decl.iter()
        .map(|(n, s, w)| Generator { name: n.to_string(), star: pos(s), weight: *w })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn w(l: &[Letter]) -> Word {
        Word::from_letters(l)
    }

    fn pair() -> Vec<Generator> {
        generators(&[("x", "y", 1), ("y", "x", 1)])
    }

    #[test]
    fn single_rule_is_confluent() {
        let p = Presentation::new(pair(), vec![Rule { lhs: w(&[0, 1]), rhs: NcPoly::one() }]).unwrap();
        let rep = p.check_confluence(6);
        assert!(rep.is_confluent(), "{:?}", rep);
        assert_eq!(rep.ambiguities_checked, 0);
    }

    #[test]
    fn conflicting_rules_fail_on_xyx() {
        let rules = vec![
            Rule { lhs: w(&[0, 1]), rhs: NcPoly::one() },
            Rule { lhs: w(&[1, 0]), rhs: NcPoly::scalar(Scalar::q()) },
        ];
        let p = Presentation::new(pair(), rules).unwrap();
        let rep = p.check_confluence(4);
        assert!(rep.failures.iter().any(|a| a.word == "x y x"));
        assert!(p.ensure_certified(2).is_ok());
        assert!(p.ensure_certified(3).is_err());
    }

    #[test]
    fn orientation_is_enforced() {
        let g = generators(&[("a", "a*", 1), ("a*", "a", 1)]);
        let bad = Rule { lhs: w(&[0]), rhs: NcPoly::word(w(&[1, 0])) };
        assert!(Presentation::new(g, vec![bad]).is_err());
    }

    #[test]
    fn empty_word_is_one() {
        let p = Presentation::new(pair(), vec![]).unwrap();
        assert_eq!(*p.nf_word(&Word::empty()), NcPoly::one());
        assert_eq!(p.fmt_poly(&NcPoly::one()), "1");
    }

    #[test]
    fn star_is_antimultiplicative_involution() {
        let g = generators(&[("a", "a*", 1), ("a*", "a", 1), ("c", "c*", 1), ("c*", "c", 1)]);
        let p = Presentation::new(g, vec![]).unwrap();
        let ac = NcPoly::word(w(&[0, 2]));
        assert_eq!(p.star(&ac), NcPoly::word(w(&[3, 1])));
        let x = NcPoly::letter(0).add(&NcPoly::letter(2).scale(&Scalar::i()));
        assert_eq!(p.star(&p.star(&x)), x);
        assert_eq!(p.fmt_poly(&p.star(&x)), "a* - i * c*");
    }

    #[test]
    fn interreduction_orients_relations() {
        let g = generators(&[("x", "x", 1), ("y", "y", 1)]);
        // yx - xy = 0 and yx + xy - 2 = 0  =>  yx -> 1, xy -> 1
        let yx = NcPoly::word(w(&[1, 0]));
        let xy = NcPoly::word(w(&[0, 1]));
        let r1 = yx.sub(&xy);
        let r2 = yx.add(&xy).sub(&NcPoly::scalar(Scalar::from_int(2)));
        let p = Presentation::from_relations(g, &[r1, r2]).unwrap();
        assert_eq!(p.rules().len(), 2);
        assert_eq!(*p.nf_word(&w(&[1, 0])), NcPoly::one());
        assert_eq!(*p.nf_word(&w(&[0, 1])), NcPoly::one());
    }
}
