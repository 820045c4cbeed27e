use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::gaussian::GaussianRational;
use super::gcd::gcd;
use super::poly::{Monomial, Polynomial, Var};
use crate::error::{Error, Result};

/// Element of Q(i)(s, w, x), kept reduced with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if lc.is_one() {
            Self { num, den }
        } else {
            let inv = lc.inv().expect("nonzero");
            Self {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        Self {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Polynomial::var(v))
    }

    pub fn s() -> Self {
        Self::var(Var::S)
    }

    pub fn w() -> Self {
        Self::var(Var::W)
    }

    pub fn x() -> Self {
        Self::var(Var::X)
    }

    /// `t = s^2`.
    pub fn t() -> Self {
        Self::from_poly(Polynomial::term(GaussianRational::one(), Monomial::var(Var::S, 2)))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::normalized(self.num.add(&rhs.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(Self::normalized(base.num.pow(k), base.den.pow(k)))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.mul(&Self::constant(c.clone()))
    }

    /// Cross-multiplication equality; never relies on normalization.
    pub fn rf_equals(&self, rhs: &Self) -> bool {
        self.num.mul(&rhs.den) == rhs.num.mul(&self.den)
    }

    /// Ring homomorphism image under `v -> map(v)`, fixing Q(i).
    pub fn substitute<F>(&self, mut map: F) -> Result<Self>
    where
        F: FnMut(Var) -> RationalFunction,
    {
        let images: Vec<RationalFunction> = Var::ALL.iter().map(|&v| map(v)).collect();
        let num = eval_poly(&self.num, &images)?;
        let den = eval_poly(&self.den, &images)?;
        num.div(&den)
    }

    /// Applies a coefficient map and `s -> sign*s` to both halves.
    fn twist(&self, flip_s: bool, conjugate: bool) -> (Polynomial, Polynomial) {
        let f = |m: &Monomial, c: &GaussianRational| {
            let mut c = if conjugate { c.conj() } else { c.clone() };
            if flip_s && m.exp(Var::S) % 2 == 1 {
                c = -c;
            }
            (*m, c)
        };
        (self.num.map_terms(f), self.den.map_terms(f))
    }

    /// True when the value lies in Q(t, w, x): fixed by `s -> -s` and by complex conjugation.
    pub fn is_t_expressible(&self) -> bool {
        [(true, false), (false, true)].iter().all(|&(flip, conj)| {
            let (n, d) = self.twist(flip, conj);
            self.num.mul(&d) == n.mul(&self.den)
        })
    }
}

fn eval_poly(p: &Polynomial, images: &[RationalFunction]) -> Result<RationalFunction> {
    let mut acc = RationalFunction::zero();
    let mut pow_cache: Vec<Vec<RationalFunction>> = images.iter().map(|img| alloc::vec![RationalFunction::one(), img.clone()]).collect();
    for (m, c) in p.terms() {
        let mut term = RationalFunction::constant(c.clone());
        for v in Var::ALL {
            let e = m.exp(v) as usize;
            if e == 0 {
                continue;
            }
            let cache = &mut pow_cache[v.index()];
            while cache.len() <= e {
                let next = cache.last().expect("seeded").mul(&images[v.index()]);
                cache.push(next);
            }
            term = term.mul(&cache[e]);
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

/// Printing names for the three variable slots.
#[derive(Clone, Copy, Debug)]
pub struct VarNames {
    pub s: &'static str,
    pub w: &'static str,
    pub x: &'static str,
    /// Print even powers of the first variable as powers of `t`.
    pub fold_t: bool,
}

impl VarNames {
    pub const STANDARD: VarNames = VarNames { s: "s", w: "w", x: "x", fold_t: true };
}

fn push_pow(out: &mut Vec<String>, name: &str, e: u32) {
    use alloc::format;
    match e {
        0 => {}
        1 => out.push(String::from(name)),
        _ => out.push(format!("{name}^{e}")),
    }
}

fn monomial_str(m: &Monomial, names: &VarNames) -> String {
    let mut parts = Vec::new();
    let es = m.exp(Var::S);
    if names.fold_t && es.is_multiple_of(2) {
        push_pow(&mut parts, "t", es / 2);
    } else {
        push_pow(&mut parts, names.s, es);
    }
    push_pow(&mut parts, names.w, m.exp(Var::W));
    push_pow(&mut parts, names.x, m.exp(Var::X));
    parts.join("*")
}

/// Polynomial in descending monomial order with ` + ` / ` - ` separators.
pub fn poly_string(p: &Polynomial, names: &VarNames) -> String {
    use alloc::format;
    use alloc::string::ToString;
    if p.is_zero() {
        return String::from("0");
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative_simple();
        let mag = if negative { -c.clone() } else { c.clone() };
        let mono = monomial_str(m, names);
        let body = if mono.is_empty() {
            if mag.is_simple() { mag.to_string() } else { format!("({mag})") }
        } else if mag.is_one() {
            mono
        } else if mag.is_simple() {
            format!("{mag}*{mono}")
        } else {
            format!("({mag})*{mono}")
        };
        match (idx, negative) {
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (0, false) => out.push_str(&body),
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
        }
    }
    out
}

fn needs_parens(s: &str) -> bool {
    s.contains(' ') || s.contains('*') || s.contains('/')
}

impl RationalFunction {
    pub fn to_string_with(&self, names: &VarNames) -> String {
        use alloc::format;
        let num = poly_string(&self.num, names);
        if self.den.is_one() {
            return num;
        }
        let den = poly_string(&self.den, names);
        let num = if num.contains(' ') {
            format!("({num})")
        } else {
            num
        };
        let den = if needs_parens(&den) { format!("({den})") } else { den };
        format!("{num}/{den}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&VarNames::STANDARD))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn int(n: i64) -> RationalFunction {
        RationalFunction::from_int(n)
    }

    #[test]
    fn gaussian_product() {
        let a = int(1).add(&RationalFunction::i());
        let b = int(1).sub(&RationalFunction::i());
        assert!(a.mul(&b).rf_equals(&int(2)));
    }

    #[test]
    fn cancellation() {
        let s = RationalFunction::s();
        let a = s.mul(&s).sub(&int(1)).div(&s.sub(&int(1))).unwrap();
        assert_eq!(a, s.add(&int(1)));
        assert!(a.den().is_one());
    }

    #[test]
    fn sign_matters() {
        let w = RationalFunction::w();
        let t = RationalFunction::t();
        let a = w.div(&int(1).sub(&t)).unwrap();
        let b = w.div(&t.sub(&int(1))).unwrap();
        assert!(!a.rf_equals(&b));
        assert!(a.rf_equals(&b.neg()));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(int(1).div(&RationalFunction::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn printing() {
        let w = RationalFunction::w();
        let x = RationalFunction::x();
        let v = w.mul(&x).inv().unwrap();
        assert_eq!(v.to_string(), "1/(w*x)");
        assert_eq!(int(0).to_string(), "0");
        assert_eq!(RationalFunction::t().to_string(), "t");
        assert_eq!(RationalFunction::s().pow(3).unwrap().to_string(), "s^3");
        assert_eq!(w.inv().unwrap().neg().to_string(), "-1/w");
    }

    #[test]
    fn t_expressible() {
        let s = RationalFunction::s();
        let w = RationalFunction::w();
        let t = RationalFunction::t();
        let delta = t.mul(&w).mul(&w).sub(&int(1)).div(&w.mul(&int(1).sub(&t))).unwrap();
        assert!(delta.is_t_expressible());
        let m = RationalFunction::i().mul(&int(1).sub(&t)).div(&s).unwrap();
        assert!(!m.is_t_expressible());
        assert!(!RationalFunction::i().is_t_expressible());
        assert!(!s.is_t_expressible());
    }

    #[test]
    fn substitution() {
        let w = RationalFunction::w();
        let x = RationalFunction::x();
        let v = w.mul(&x).inv().unwrap();
        let out = v
            .substitute(|var| if var == Var::X { int(1) } else { RationalFunction::var(var) })
            .unwrap();
        assert!(out.rf_equals(&w.inv().unwrap()));
        let same = v.substitute(RationalFunction::var).unwrap();
        assert_eq!(same, v);
        let bad = v.substitute(|var| if var == Var::X { int(0) } else { RationalFunction::var(var) });
        assert_eq!(bad, Err(Error::DivisionByZero));
    }
}
