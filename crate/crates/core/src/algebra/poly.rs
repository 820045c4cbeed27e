use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::gaussian::GaussianRational;

/// Ring variables. `S` is the square root of `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    S = 0,
    W = 1,
    X = 2,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::S, Var::W, Var::X];

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

/// Exponent vector `(e_s, e_w, e_x)`.
///
/// Ordered lexicographically on `(e_x, e_w, e_s)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn var(v: Var, e: u32) -> Self {
        let mut m = [0; 3];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }

    pub fn divides(&self, rhs: &Monomial) -> bool {
        (0..3).all(|k| self.0[k] <= rhs.0[k])
    }

    /// `rhs / self`, assuming `self | rhs`.
    pub fn quotient_of(&self, rhs: &Monomial) -> Monomial {
        Monomial([rhs.0[0] - self.0[0], rhs.0[1] - self.0[1], rhs.0[2] - self.0[2]])
    }

    pub fn meet(&self, rhs: &Monomial) -> Monomial {
        Monomial([
            self.0[0].min(rhs.0[0]),
            self.0[1].min(rhs.0[1]),
            self.0[2].min(rhs.0[2]),
        ])
    }

    pub fn with_exp(&self, v: Var, e: u32) -> Monomial {
        let mut m = *self;
        m.0[v.index()] = e;
        m
    }

    fn key(&self) -> (u32, u32, u32) {
        (self.0[2], self.0[1], self.0[0])
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `s, w, x` over Q(i). Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn term(c: GaussianRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::term(GaussianRational::one(), Monomial::var(v, 1))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussianRational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add_ref(&c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (*m, a.mul_ref(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    /// Coefficient of `v^k`, as a polynomial free of `v`.
    pub fn coeff_in(&self, v: Var, k: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(v) == k)
                .map(|(m, c)| (m.with_exp(v, 0), c.clone()))
                .collect(),
        }
    }

    /// All nonzero coefficients with respect to `v`.
    pub fn coeffs_in(&self, v: Var) -> Vec<Polynomial> {
        let mut by_exp: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_exp
                .entry(m.exp(v))
                .or_default()
                .add_term(m.with_exp(v, 0), c.clone());
        }
        by_exp.into_values().collect()
    }

    /// Greatest common monomial divisor of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::ONE,
            Some(first) => it.fold(*first, |acc, m| acc.meet(m)),
        }
    }

    /// Exact division by a monomial that divides every term.
    pub fn div_monomial(&self, mono: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (mono.quotient_of(m), c.clone()))
                .collect(),
        }
    }

    /// Multivariate division in the fixed monomial order. Returns the quotient when
    /// the remainder vanishes.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading()?;
        let lc_inv = lc.inv()?;
        if divisor.is_monomial() {
            let mono = *lm;
            if !self.terms.keys().all(|m| mono.divides(m)) {
                return None;
            }
            return Some(self.div_monomial(&mono).scale(&lc_inv));
        }
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = c.mul_ref(&lc_inv);
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -(dc.mul_ref(&qc)));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Maps every coefficient and monomial through the given functions.
    pub fn map_terms<F>(&self, mut f: F) -> Polynomial
    where
        F: FnMut(&Monomial, &GaussianRational) -> (Monomial, GaussianRational),
    {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let (m2, c2) = f(m, c);
            out.add_term(m2, c2);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s() -> Polynomial {
        Polynomial::var(Var::S)
    }
    fn w() -> Polynomial {
        Polynomial::var(Var::W)
    }
    fn c(n: i64) -> Polynomial {
        Polynomial::constant(GaussianRational::from_int(n))
    }

    #[test]
    fn order_is_lex_on_x_then_w_then_s() {
        let sx = Monomial([5, 0, 0]);
        let w1 = Monomial([0, 1, 0]);
        let x1 = Monomial([0, 0, 1]);
        assert!(sx < w1);
        assert!(w1 < x1);
        assert!(Monomial([1, 1, 0]) > Monomial([9, 0, 0]));
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = s().add(&c(1)).sub(&s());
        assert_eq!(p, c(1));
        assert!(s().sub(&s()).is_zero());
    }

    #[test]
    fn exact_division() {
        // (s^2 - 1) / (s - 1) = s + 1
        let num = s().mul(&s()).sub(&c(1));
        let q = num.div_exact(&s().sub(&c(1))).unwrap();
        assert_eq!(q, s().add(&c(1)));
        assert!(num.div_exact(&w().add(&c(1))).is_none());
    }

    #[test]
    fn coefficients_by_variable() {
        // w*s^2 + 3*s^2 + w
        let p = w().mul(&s()).mul(&s()).add(&c(3).mul(&s()).mul(&s())).add(&w());
        assert_eq!(p.degree_in(Var::S), 2);
        assert_eq!(p.coeff_in(Var::S, 2), w().add(&c(3)));
        assert_eq!(p.coeff_in(Var::S, 0), w());
        assert_eq!(p.coeffs_in(Var::S).len(), 2);
    }
}
