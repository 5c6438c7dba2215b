use super::gauss::GaussQ;
use num_complex::Complex64;

/// Dense univariate polynomial in `q` over Q(i), lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    c: Vec<GaussQ>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(GaussQ::one())
    }

    pub fn constant(g: GaussQ) -> Self {
        Poly::from_coeffs(vec![g])
    }

    /// `g·q^k`.
    pub fn monomial(g: GaussQ, k: usize) -> Self {
        if g.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![GaussQ::zero(); k + 1];
        c[k] = g;
        Poly { c }
    }

    pub fn from_coeffs(mut c: Vec<GaussQ>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn coeffs(&self) -> &[GaussQ] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&GaussQ> {
        self.c.last()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn ord(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn is_monomial(&self) -> bool {
        match (self.ord(), self.degree()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            match (self.c.get(k), o.c.get(k)) {
                (Some(a), Some(b)) => c.push(a + b),
                (Some(a), None) => c.push(a.clone()),
                (None, Some(b)) => c.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn neg(&self) -> Poly {
        Poly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let mut c = vec![GaussQ::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = a * b;
                c[i + j] = &c[i + j] + &t;
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn scale(&self, g: &GaussQ) -> Poly {
        if g.is_zero() {
            return Poly::zero();
        }
        if g.is_one() {
            return self.clone();
        }
        Poly::from_coeffs(self.c.iter().map(|x| x * g).collect())
    }

    /// Divide by `q^k`; caller guarantees `k <= ord`.
    pub fn shift_down(&self, k: usize) -> Poly {
        Poly { c: self.c[k..].to_vec() }
    }

    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![GaussQ::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn conj(&self) -> Poly {
        Poly { c: self.c.iter().map(|x| x.conj()).collect() }
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        if self.degree().map_or(true, |n| n < dd) {
            return (Poly::zero(), self.clone());
        }
        let inv = d.lead().unwrap().inv().unwrap();
        let mut r = self.c.clone();
        let mut quo = vec![GaussQ::zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let f = top * &inv;
            for (j, b) in d.c.iter().enumerate() {
                if !b.is_zero() {
                    let t = &f * b;
                    r[k + j] = &r[k + j] - &t;
                }
            }
            quo[k] = f;
        }
        r.truncate(dd);
        (Poly::from_coeffs(quo), Poly::from_coeffs(r))
    }

    /// Exact quotient; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (quo, r) = self.divrem(d);
        r.is_zero().then_some(quo)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        if self.is_constant() || o.is_constant() {
            return Poly::one();
        }
        // Pure powers of q are common; their gcd is a power of q.
        if self.is_monomial() || o.is_monomial() {
            let k = self.ord().unwrap().min(o.ord().unwrap());
            let (m, other) = if self.is_monomial() { (self, o) } else { (o, self) };
            let k = k.min(m.degree().unwrap()).min(other.ord().unwrap());
            return Poly::monomial(GaussQ::one(), k);
        }
        let k = self.ord().unwrap().min(o.ord().unwrap());
        let mut a = self.shift_down(self.ord().unwrap()).monic();
        let mut b = o.shift_down(o.ord().unwrap()).monic();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic().shift_up(k)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.c.iter().rev() {
            acc = acc * x + c.to_complex();
        }
        acc
    }

    pub fn eval_exact(&self, x: &GaussQ) -> GaussQ {
        let mut acc = GaussQ::zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Sum of coefficient magnitudes weighted by `|x|^k`; a scale for pole detection.
    pub fn magnitude_at(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.c.iter().rev() {
            acc = acc * x.abs() + c.to_complex().norm();
        }
        acc
    }

    /// Exact square root, if `self` is a square in Q(i)[q].
    pub fn sqrt(&self) -> Option<Poly> {
        let Some(d) = self.degree() else {
            return Some(Poly::zero());
        };
        let o = self.ord().unwrap();
        if d % 2 == 1 || o % 2 == 1 {
            return None;
        }
        let p = self.shift_down(o);
        let m = p.degree().unwrap() / 2;
        let lead = p.lead().unwrap().sqrt()?;
        let two_lead_inv = (&lead + &lead).inv().unwrap();
        let mut s = vec![GaussQ::zero(); m + 1];
        s[m] = lead;
        // Coefficients from the top down: match degree m + k of p for k = m-1 .. 0.
        for k in (0..m).rev() {
            let deg = m + k;
            let mut acc = p.c[deg].clone();
            for j in (k + 1)..=m {
                let i = deg as isize - j as isize;
                if i > k as isize && (i as usize) <= m {
                    acc = &acc - &(&s[j] * &s[i as usize]);
                }
            }
            s[k] = &acc * &two_lead_inv;
        }
        let root = Poly::from_coeffs(s);
        if root.mul(&root) == p {
            Some(root.shift_up(o / 2))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&x| GaussQ::from_int(x)).collect())
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        let a = p(&[1, 0, -1]);
        let b = p(&[1, 0, 0, 0, -1]);
        assert_eq!(a.gcd(&b), p(&[-1, 0, 1]).monic());
    }

    #[test]
    fn gcd_with_power_of_q() {
        assert_eq!(p(&[0, 0, 1]).gcd(&p(&[0, 3, 1])), p(&[0, 1]));
        assert_eq!(p(&[0, 2, 0, 4]).gcd(&p(&[0, 0, 6, 2])), p(&[0, 1]));
    }

    #[test]
    fn divrem_roundtrip() {
        let a = p(&[3, 1, 4, 1, 5]);
        let b = p(&[2, 7, 1]);
        let (quo, r) = a.divrem(&b);
        assert_eq!(quo.mul(&b).add(&r), a);
    }

    #[test]
    fn sqrt_of_square() {
        let a = p(&[1, 2, 0, 3]);
        let s = a.mul(&a).shift_up(2).sqrt().unwrap();
        assert_eq!(s.mul(&s), a.mul(&a).shift_up(2));
        assert!(p(&[1, 0, 1]).sqrt().is_none());
    }
}
