//! Multivariate GCD over Q(i).
//!
//! One variable: Euclid over the coefficient field. Several: evaluate one
//! variable at integer points, recurse, and interpolate the images back
//! (dense Brown-style), checking the result by trial division. A modular image
//! settles the common coprime case before any of that.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::gaussian::GaussianRational;
use super::poly::{Monomial, Polynomial, Var};

/// Monic greatest common divisor. `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    if a == b {
        return a.monic();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mono = ma.meet(&mb);
    let a = a.div_monomial(&ma);
    let b = b.div_monomial(&mb);
    gcd_no_monomial(&a, &b).mul_monomial(&mono).monic()
}

fn used_vars(a: &Polynomial, b: &Polynomial) -> Vec<Var> {
    Var::ALL.into_iter().filter(|&v| a.involves(v) || b.involves(v)).collect()
}

fn gcd_no_monomial(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_constant() || b.is_constant() || a.is_monomial() || b.is_monomial() {
        return Polynomial::one();
    }
    let vars = used_vars(a, b);
    if let [v] = vars.as_slice() {
        return euclid(a.clone(), b.clone(), *v);
    }
    // a variable missing from one side only enters through the other's content
    for &v in &vars {
        if !a.involves(v) {
            return gcd(a, &content_in(b, v));
        }
        if !b.involves(v) {
            return gcd(&content_in(a, v), b);
        }
    }
    let v = *vars
        .iter()
        .min_by_key(|&&v| a.degree_in(v).min(b.degree_in(v)))
        .expect("two or more variables");
    match image_degree_bound(a, b, v) {
        Some(0) => return gcd(&content_in(a, v), &content_in(b, v)),
        Some(d) if d == b.degree_in(v) && a.div_exact(b).is_some() => return b.monic(),
        Some(d) if d == a.degree_in(v) && b.div_exact(a).is_some() => return a.monic(),
        _ => {}
    }
    let y = *vars
        .iter()
        .min_by_key(|&&y| a.degree_in(y).max(b.degree_in(y)))
        .expect("two or more variables");
    interpolated(a, b, y).unwrap_or_else(|| subresultant(a, b, v))
}

/// GCD of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in(p: &Polynomial, v: Var) -> Polynomial {
    let mut acc = Polynomial::zero();
    for c in p.coeffs_in(v) {
        acc = gcd(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// Euclid over the coefficient field for polynomials in `v` alone.
fn euclid(mut a: Polynomial, mut b: Polynomial, v: Var) -> Polynomial {
    if a.degree_in(v) < b.degree_in(v) {
        core::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let b_monic = b.monic();
        let db = b_monic.degree_in(v);
        let mut r = a;
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lc = r.leading().map(|(_, c)| c.clone()).expect("nonzero");
            r = r.sub(&b_monic.mul_monomial(&Monomial::var(v, dr - db)).scale(&lc));
        }
        a = b_monic;
        b = r;
    }
    a.monic()
}

/// Splits `p` into coefficients in `y` keyed by the rest of the monomial.
fn split(p: &Polynomial, y: Var) -> Vec<(Monomial, Polynomial)> {
    let mut out: Vec<(Monomial, Polynomial)> = Vec::new();
    for (m, c) in p.terms() {
        let rest = m.with_exp(y, 0);
        let term = Polynomial::term(c.clone(), Monomial::var(y, m.exp(y)));
        match out.iter_mut().find(|(r, _)| *r == rest) {
            Some((_, acc)) => *acc = acc.add(&term),
            None => out.push((rest, term)),
        }
    }
    out
}

fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    a.0.cmp(&b.0)
}

/// Lex-leading monomial (with `y` removed) and its coefficient in `K[y]`.
fn lex_leading(p: &Polynomial, y: Var) -> (Monomial, Polynomial) {
    split(p, y).into_iter().max_by(|a, b| lex(&a.0, &b.0)).expect("nonzero")
}

fn eval_at(p: &Polynomial, y: Var, c: &GaussianRational) -> Polynomial {
    let mut pows: Vec<GaussianRational> = vec![GaussianRational::one()];
    Polynomial::from_terms(p.terms().map(|(m, k)| {
        let e = m.exp(y) as usize;
        while pows.len() <= e {
            let next = pows.last().expect("nonempty").mul_ref(c);
            pows.push(next);
        }
        (m.with_exp(y, 0), k.mul_ref(&pows[e]))
    }))
}

/// Newton interpolation through `(points[i], values[i])`, as a polynomial in `y`.
fn newton(points: &[GaussianRational], values: &[GaussianRational], y: Var) -> Polynomial {
    let n = points.len();
    let mut coef = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = coef[i].sub_ref(&coef[i - 1]);
            let den = points[i].sub_ref(&points[i - j]);
            coef[i] = num.mul_ref(&den.inv().expect("distinct points"));
        }
    }
    let yv = Polynomial::var(y);
    let mut acc = Polynomial::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        let shift = yv.sub(&Polynomial::constant(points[i].clone()));
        acc = acc.mul(&shift).add(&Polynomial::constant(coef[i].clone()));
    }
    acc
}

/// Content of `p` over `K[y]`: the GCD of its coefficients keyed by the other variables.
fn content_over(p: &Polynomial, y: Var) -> Polynomial {
    let mut acc = Polynomial::zero();
    for (_, c) in split(p, y) {
        acc = if acc.is_zero() { c.monic() } else { euclid(acc, c, y) };
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// Brown-style GCD by evaluating `y`. `None` if too many points were unlucky.
fn interpolated(a: &Polynomial, b: &Polynomial, y: Var) -> Option<Polynomial> {
    let ca = content_over(a, y);
    let cb = content_over(b, y);
    let c = euclid(ca.clone(), cb.clone(), y);
    let a = a.div_exact(&ca)?;
    let b = b.div_exact(&cb)?;
    let (_, la) = lex_leading(&a, y);
    let (_, lb) = lex_leading(&b, y);
    let gamma = euclid(la.clone(), lb.clone(), y);
    let needed = (gamma.degree_in(y) + a.degree_in(y).min(b.degree_in(y)) + 1) as usize;
    let mut best: Option<Monomial> = None;
    let mut points: Vec<GaussianRational> = Vec::new();
    let mut images: Vec<Polynomial> = Vec::new();
    for k in 1..=(4 * needed as i64 + 16) {
        let at = GaussianRational::from_int(k);
        if eval_at(&la, y, &at).is_zero() || eval_at(&lb, y, &at).is_zero() {
            continue;
        }
        let h = gcd(&eval_at(&a, y, &at), &eval_at(&b, y, &at));
        if h.is_constant() {
            return Some(c);
        }
        let (lm, lc) = lex_leading(&h, y);
        match best.map(|m| lex(&lm, &m)) {
            Some(Ordering::Greater) => continue,
            Some(Ordering::Less) | None => {
                best = Some(lm);
                points.clear();
                images.clear();
            }
            Some(Ordering::Equal) => {}
        }
        let lc = lc.leading().map(|(_, k)| k.clone()).expect("constant after evaluation");
        let scale = eval_at(&gamma, y, &at).leading().map(|(_, k)| k.clone()).expect("gamma survives");
        images.push(h.scale(&scale.mul_ref(&lc.inv().expect("nonzero"))));
        points.push(at);
        if points.len() >= needed {
            let candidate = interpolate_images(&points, &images, y);
            let candidate = candidate.div_exact(&content_over(&candidate, y))?;
            if a.div_exact(&candidate).is_some() && b.div_exact(&candidate).is_some() {
                return Some(c.mul(&candidate).monic());
            }
        }
    }
    None
}

fn interpolate_images(points: &[GaussianRational], images: &[Polynomial], y: Var) -> Polynomial {
    let mut monomials: Vec<Monomial> = images.iter().flat_map(|h| h.terms().map(|(m, _)| *m)).collect();
    monomials.sort();
    monomials.dedup();
    let mut out = Polynomial::zero();
    for m in monomials {
        let values: Vec<GaussianRational> = images.iter().map(|h| h.coeff(&m)).collect();
        out = out.add(&newton(points, &values, y).mul_monomial(&m));
    }
    out
}

/// Subresultant remainder sequence on `v`, for the rare case interpolation gives up.
fn subresultant(a: &Polynomial, b: &Polynomial, v: Var) -> Polynomial {
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let (mut a, mut b) = (a.div_exact(&ca).expect("content divides"), b.div_exact(&cb).expect("content divides"));
    if a.degree_in(v) < b.degree_in(v) {
        core::mem::swap(&mut a, &mut b);
    }
    let mut g = Polynomial::one();
    let mut h = Polynomial::one();
    let prim = loop {
        let delta = a.degree_in(v) - b.degree_in(v);
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            break b.div_exact(&content_in(&b, v)).expect("content divides");
        }
        if r.degree_in(v) == 0 {
            break Polynomial::one();
        }
        let divisor = g.mul(&h.pow(delta));
        a = b;
        b = r.div_exact(&divisor).expect("subresultant division is exact");
        g = a.coeff_in(v, a.degree_in(v));
        if delta > 0 {
            h = g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant division is exact");
        }
    };
    c.mul(&prim).monic()
}

/// `lc(b)^(deg a - deg b + 1) * a mod b` in the variable `v`.
fn pseudo_remainder(a: &Polynomial, b: &Polynomial, v: Var) -> Polynomial {
    let da = a.degree_in(v);
    let db = b.degree_in(v);
    let lcb = b.coeff_in(v, db);
    let mut r = a.clone();
    let mut steps = 0;
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lcr = r.coeff_in(v, dr);
        r = r.mul(&lcb).sub(&b.mul(&lcr).mul_monomial(&Monomial::var(v, dr - db)));
        steps += 1;
    }
    if da >= db && steps <= da - db {
        r = r.mul(&lcb.pow(da - db + 1 - steps));
    }
    r
}

/// NTT-friendly prime with `P = 1 (mod 4)`, so `-1` has a square root.
const P: u64 = 998_244_353;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, P - 2)
}

fn residue(x: &BigInt) -> u64 {
    let r = (x % BigInt::from(P)).to_i64().expect("below the modulus");
    r.rem_euclid(P as i64) as u64
}

/// `q mod P`, or `None` when the denominator vanishes.
fn rational_mod(q: &BigRational) -> Option<u64> {
    let d = residue(q.denom());
    (d != 0).then(|| residue(q.numer()) * inv_mod(d) % P)
}

/// Image of `p` modulo `P` with every variable except `v` fixed, as dense
/// coefficients in `v`. Up to a unit this is the image of the integral
/// multiple of `p`, so GCD degrees are unaffected.
fn image(p: &Polynomial, v: Var, point: &[u64; 3], i: u64) -> Option<Vec<u64>> {
    let mut out = vec![0; p.degree_in(v) as usize + 1];
    for (m, c) in p.terms() {
        let mut val = (rational_mod(c.re())? + rational_mod(c.im())? * i) % P;
        for u in Var::ALL {
            if u != v {
                val = val * pow_mod(point[u.index()], m.exp(u) as u64) % P;
            }
        }
        let e = m.exp(v) as usize;
        out[e] = (out[e] + val) % P;
    }
    Some(out)
}

fn trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Degree of the univariate GCD over Z/P, by the Euclidean algorithm.
fn univariate_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        core::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let inv = inv_mod(*b.last().expect("nonempty"));
        while a.len() >= b.len() {
            let q = a.last().expect("nonempty") * inv % P;
            let shift = a.len() - b.len();
            for (k, c) in b.iter().enumerate() {
                a[shift + k] = (a[shift + k] + P - q * c % P) % P;
            }
            a.pop();
            trim(&mut a);
        }
        core::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Upper bound on the degree in `v` of `gcd(a, b)`.
///
/// Where both leading coefficients in `v` survive the evaluation, the image of
/// the true GCD divides the GCD of the images and keeps its degree.
fn image_degree_bound(a: &Polynomial, b: &Polynomial, v: Var) -> Option<u32> {
    let (da, db) = (a.degree_in(v) as usize, b.degree_in(v) as usize);
    let i = pow_mod(3, (P - 1) / 4);
    let mut best: Option<u32> = None;
    let mut tried = 0;
    for k in 0..8u64 {
        let point = [1_000 + 17 * k, 2_003 + 31 * k, 3_011 + 43 * k];
        let (Some(ia), Some(ib)) = (image(a, v, &point, i), image(b, v, &point, i)) else {
            return None;
        };
        if ia[da] == 0 || ib[db] == 0 {
            continue;
        }
        let d = univariate_gcd_degree(ia, ib) as u32;
        best = Some(best.map_or(d, |b| b.min(d)));
        tried += 1;
        if d == 0 || tried == 2 {
            break;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::GaussianRational;

    fn v(x: Var) -> Polynomial {
        Polynomial::var(x)
    }
    fn c(n: i64) -> Polynomial {
        Polynomial::constant(GaussianRational::from_int(n))
    }

    #[test]
    fn univariate() {
        // gcd((s-1)(s+2), (s-1)(s+3)) = s-1
        let s = v(Var::S);
        let a = s.sub(&c(1)).mul(&s.add(&c(2)));
        let b = s.sub(&c(1)).mul(&s.add(&c(3)));
        assert_eq!(gcd(&a, &b), s.sub(&c(1)));
    }

    #[test]
    fn multivariate_common_factor() {
        let s = v(Var::S);
        let w = v(Var::W);
        let x = v(Var::X);
        let f = w.mul(&s).sub(&c(1)); // ws - 1
        let a = f.mul(&x.add(&s)).mul(&w);
        let b = f.mul(&f).mul(&w.mul(&w).add(&c(1)));
        assert_eq!(gcd(&a, &b), f.monic());
    }

    #[test]
    fn three_variable_factor_by_interpolation() {
        let (s, w, x) = (v(Var::S), v(Var::W), v(Var::X));
        let i = Polynomial::constant(GaussianRational::i());
        let f = s.mul(&w).mul(&x).add(&w.mul(&w)).add(&i.mul(&x)).add(&c(2));
        let p = x.pow(3).add(&s.mul(&w).mul(&c(3))).sub(&w.pow(2).mul(&x)).add(&c(1));
        let q = w.pow(3).mul(&x).add(&s.pow(2).mul(&i)).sub(&x.mul(&s)).add(&c(5));
        let g = gcd(&f.mul(&f).mul(&p), &f.mul(&q).mul(&p.add(&c(1))));
        assert_eq!(g, f.monic());
    }

    #[test]
    fn coprime() {
        let s = v(Var::S);
        let w = v(Var::W);
        assert!(gcd(&s.add(&c(1)), &w.sub(&c(1))).is_one());
        assert!(gcd(&s, &w).is_one());
    }

    #[test]
    fn gaussian_factor() {
        // (s + i) divides s^2 + 1
        let s = v(Var::S);
        let i = Polynomial::constant(GaussianRational::i());
        let a = s.mul(&s).add(&c(1));
        let b = s.add(&i).mul(&v(Var::W));
        assert_eq!(gcd(&a, &b), s.add(&i));
    }
}
