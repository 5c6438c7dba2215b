//! The coefficient field Q(i)(q): rational functions in the deformation
//! parameter `q` with Gaussian-rational coefficients, kept in canonical form.

mod gauss;
mod linsys;
mod matrix;
mod parse;
pub(crate) use parse::ScalarParser;
mod poly;

pub use gauss::GaussQ;
pub use linsys::{residual, solve_exact, Echelon, LinearSystem, Solution};
pub use matrix::{sparse, Matrix};
pub use poly::Poly;

use crate::error::{CqgError, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// An element of Q(i)(q) with monic denominator and coprime numerator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_gauss(GaussQ::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_gauss(GaussQ::from_ratio(n, d))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::from_gauss(GaussQ::from_rational(r))
    }

    pub fn from_gauss(g: GaussQ) -> Self {
        Scalar { num: Poly::constant(g), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar { num: p, den: Poly::one() }
    }

    pub fn i() -> Self {
        Scalar::from_gauss(GaussQ::i())
    }

    pub fn q() -> Self {
        Scalar::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i32) -> Self {
        let m = Poly::monomial(GaussQ::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Scalar { num: m, den: Poly::one() }
        } else {
            Scalar { num: Poly::one(), den: m }
        }
    }

    /// Build `num/den` and bring it to canonical form.
    pub fn ratio(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(CqgError::DivisionByZero);
        }
        Ok(Scalar::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
            }
        };
        let lc = den.lead().unwrap();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.inv().unwrap();
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value does not depend on `q`.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The Q(i) value of a constant scalar.
    pub fn as_constant(&self) -> Option<GaussQ> {
        if !self.is_constant() {
            return None;
        }
        Some(self.num.coeffs().first().cloned().unwrap_or_default())
    }

    pub fn conj(&self) -> Self {
        Scalar { num: self.num.conj(), den: self.den.conj() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(CqgError::DivisionByZero);
        }
        Ok(Scalar::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Floating evaluation at `q0`; reports a pole when the denominator vanishes there.
    pub fn eval(&self, q0: Complex64) -> Result<Complex64> {
        let d = self.den.eval(q0);
        let scale = self.den.magnitude_at(q0.norm()).max(1.0);
        if d.norm() <= 1e-13 * scale {
            return Err(CqgError::Pole(format!("{} at q = {}", self, q0)));
        }
        Ok(self.num.eval(q0) / d)
    }

    /// Exact substitution `q := q0`.
    pub fn eval_exact(&self, q0: &GaussQ) -> Result<GaussQ> {
        let d = self.den.eval_exact(q0);
        let Some(dinv) = d.inv() else {
            return Err(CqgError::Pole(format!("{} at q = {}", self, q0)));
        };
        Ok(&self.num.eval_exact(q0) * &dinv)
    }

    /// Exact substitution at a rational point, then conversion to floating point.
    pub fn eval_rational(&self, q0: &BigRational) -> Result<Complex64> {
        Ok(self.eval_exact(&GaussQ::from_rational(q0.clone()))?.to_complex())
    }

    /// Exact square root in Q(i)(q), if one exists.
    pub fn sqrt(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        // den is monic, so a square numerator and denominator is necessary and sufficient.
        let n = self.num.sqrt()?;
        let d = self.den.sqrt()?;
        Some(Scalar::canonical(n, d))
    }

    /// Integer-coefficient numerator and denominator with positive leading denominator
    /// coefficient and no common integer content.
    fn integer_form(&self) -> (Vec<(BigInt, BigInt)>, Vec<(BigInt, BigInt)>) {
        let mut l = BigInt::one();
        for c in self.num.coeffs().iter().chain(self.den.coeffs()) {
            l = l.lcm(&c.denom_lcm());
        }
        let conv = |p: &Poly| -> Vec<(BigInt, BigInt)> {
            p.coeffs()
                .iter()
                .map(|c| {
                    let re = &c.re * BigRational::from_integer(l.clone());
                    let im = &c.im * BigRational::from_integer(l.clone());
                    (re.to_integer(), im.to_integer())
                })
                .collect()
        };
        let mut n = conv(&self.num);
        let mut d = conv(&self.den);
        let mut g = BigInt::zero();
        for (a, b) in n.iter().chain(d.iter()) {
            g = g.gcd(a).gcd(b);
        }
        if !g.is_zero() && !g.is_one() {
            for (a, b) in n.iter_mut().chain(d.iter_mut()) {
                *a = &*a / &g;
                *b = &*b / &g;
            }
        }
        (n, d)
    }
}

fn fmt_gauss_int(re: &BigInt, im: &BigInt) -> (bool, String, bool) {
    // Returns (negative, magnitude text, compound).
    match (re.is_zero(), im.is_zero()) {
        (_, true) => (re.is_negative(), re.abs().to_string(), false),
        (true, false) => {
            let m = im.abs();
            let s = if m.is_one() { "i".to_string() } else { format!("{} i", m) };
            (im.is_negative(), s, false)
        }
        (false, false) => {
            let s = if im.is_negative() {
                let m = im.abs();
                if m.is_one() { format!("({} - i)", re) } else { format!("({} - {} i)", re, m) }
            } else if im.is_one() {
                format!("({} + i)", re)
            } else {
                format!("({} + {} i)", re, im)
            };
            (false, s, true)
        }
    }
}

fn q_power(k: i64) -> String {
    match k {
        0 => String::new(),
        1 => "q".to_string(),
        _ => format!("q^{}", k),
    }
}

/// Formats `Σ c_k q^k` with integer Gaussian coefficients, lowest degree first.
fn fmt_int_poly(c: &[(BigInt, BigInt)]) -> (String, usize) {
    let mut out = String::new();
    let mut terms = 0;
    for (k, (re, im)) in c.iter().enumerate() {
        if re.is_zero() && im.is_zero() {
            continue;
        }
        let (neg, mag, _) = fmt_gauss_int(re, im);
        let qp = q_power(k as i64);
        let body = if qp.is_empty() {
            mag
        } else if mag == "1" {
            qp
        } else {
            format!("{} {}", mag, qp)
        };
        if terms == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
        terms += 1;
    }
    (out, terms)
}

fn fmt_rational_coeff(g: &GaussQ) -> (bool, String) {
    if g.im.is_zero() {
        return (g.re.is_negative(), g.re.abs().to_string());
    }
    if g.re.is_zero() {
        let m = g.im.abs();
        let s = if m.is_one() { "i".to_string() } else { format!("{} i", m) };
        return (g.im.is_negative(), s);
    }
    (false, format!("{}", g))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.num.is_monomial() && self.den.is_monomial() {
            let e = self.num.ord().unwrap() as i64 - self.den.ord().unwrap() as i64;
            let g = self.num.lead().unwrap();
            let (neg, mag) = fmt_rational_coeff(g);
            let qp = q_power(e);
            let body = match (mag.as_str(), qp.is_empty()) {
                (_, true) => mag.clone(),
                ("1", false) => qp,
                _ => format!("{} {}", mag, qp),
            };
            return write!(f, "{}{}", if neg { "-" } else { "" }, body);
        }
        let (n, d) = self.integer_form();
        let (ns, nterms) = fmt_int_poly(&n);
        let (ds, dterms) = fmt_int_poly(&d);
        if ds == "1" {
            return write!(f, "{}", ns);
        }
        let nwrap = if nterms > 1 { format!("({})", ns) } else { ns };
        let dwrap = if dterms > 1 || ds.contains(' ') { format!("({})", ds) } else { ds };
        write!(f, "{}/{}", nwrap, dwrap)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return Scalar { num: self.num.add(&o.num), den: Poly::one() };
            }
            return Scalar::canonical(self.num.add(&o.num), self.den.clone());
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Scalar::canonical(num, self.den.mul(&o.den))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.mul(&o.num), den: Poly::one() };
        }
        // Cross-cancel before multiplying to keep degrees small.
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), o.den.clone())
        } else {
            (self.num.div_exact(&g1).unwrap(), o.den.div_exact(&g1).unwrap())
        };
        let (c, b) = if g2.is_one() {
            (o.num.clone(), self.den.clone())
        } else {
            (o.num.div_exact(&g2).unwrap(), self.den.div_exact(&g2).unwrap())
        };
        let num = a.mul(&c);
        let den = b.mul(&d);
        let lc = den.lead().unwrap();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.inv().unwrap();
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] for a fallible version.
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &'a Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&x| GaussQ::from_int(x)).collect())
    }

    #[test]
    fn gcd_reduces_fraction() {
        let a = Scalar::from_poly(poly(&[1, 0, -1]));
        let b = Scalar::from_poly(poly(&[1, 0, 0, 0, -1]));
        let r = &a / &b;
        assert_eq!(r, Scalar::ratio(Poly::one(), poly(&[1, 0, 1])).unwrap());
        assert_eq!(r.to_string(), "1/(1 + q^2)");
    }

    #[test]
    fn conj_fixes_q() {
        let iq = &Scalar::i() * &Scalar::q();
        assert_eq!(iq.conj(), -&iq);
    }

    #[test]
    fn common_denominator() {
        let d = Scalar::from_poly(poly(&[1, 1]));
        let s = &(&Scalar::q() / &d) + &(&Scalar::one() / &d);
        assert!(s.is_one());
    }

    #[test]
    fn division_by_zero_errors() {
        assert!(matches!(Scalar::one().checked_div(&Scalar::zero()), Err(CqgError::DivisionByZero)));
    }

    #[test]
    fn evaluation_and_pole() {
        let s = Scalar::ratio(Poly::one(), poly(&[1, 0, 1])).unwrap();
        let v = s.eval(Complex64::new(0.5, 0.0)).unwrap();
        assert!((v.re - 0.8).abs() < 1e-15 && v.im.abs() < 1e-15);
        let v = Scalar::q().eval(Complex64::new(0.3, 0.0)).unwrap();
        assert!((v.re - 0.3).abs() < 1e-15);
        let p = Scalar::ratio(Poly::one(), poly(&[1, -1])).unwrap();
        assert!(matches!(p.eval(Complex64::new(1.0, 0.0)), Err(CqgError::Pole(_))));
        assert!(p.eval_exact(&GaussQ::one()).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::q_pow(-1).to_string(), "q^-1");
        assert_eq!((-Scalar::q_pow(-2)).to_string(), "-q^-2");
        assert_eq!(Scalar::from_ratio(1, 2).to_string(), "1/2");
        assert_eq!((&Scalar::q() * &Scalar::from_ratio(-3, 2)).to_string(), "-3/2 q");
        let f = &Scalar::q_pow(2) / &Scalar::from_poly(poly(&[1, 0, 1]));
        assert_eq!(f.to_string(), "q^2/(1 + q^2)");
        let g = &Scalar::from_poly(poly(&[1, 0, -1])) / &Scalar::from_int(2);
        assert_eq!(g.to_string(), "(1 - q^2)/2");
        let h = &Scalar::from_poly(poly(&[1, 1])) / &Scalar::q();
        assert_eq!(h.to_string(), "(1 + q)/q");
        assert_eq!((&Scalar::i() * &Scalar::from_int(-2)).to_string(), "-2 i");
    }

    #[test]
    fn sqrt_of_rational_function() {
        let a = &Scalar::from_poly(poly(&[1, 0, 1])) / &Scalar::from_poly(poly(&[0, 0, 4]));
        let s = (&a * &a).sqrt().unwrap();
        assert!(s == a || s == -&a);
        assert!(Scalar::q().sqrt().is_none());
    }
}
