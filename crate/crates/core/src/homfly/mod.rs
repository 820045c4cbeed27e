//! HOMFLY-PT polynomial in `l`, `m` with `l P+ + l^-1 P- + m P0 = 0`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;

use crate::algebra::{GaussianRational, RationalFunction, Var, VarNames};
use crate::diagram::canon::{canonical_form, CanonKey};
use crate::diagram::{ColoredDiagram, Diagram, NodeKind};
use crate::error::{Error, Result};
use crate::skein::{first_bad_crossing, skein_recursive, state_sum};

const NAMES: VarNames = VarNames { s: "l", w: "m", x: "x", fold_t: false };

/// A rational function in `l` and `m`.
///
/// Stored in the `s` and `w` slots of [`RationalFunction`]; the two never mix
/// except through [`HomflyValue::specialize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomflyValue(RationalFunction);

impl HomflyValue {
    pub fn one() -> Self {
        HomflyValue(RationalFunction::one())
    }

    pub fn l() -> Self {
        HomflyValue(RationalFunction::var(Var::S))
    }

    pub fn m() -> Self {
        HomflyValue(RationalFunction::var(Var::W))
    }

    pub fn raw(&self) -> &RationalFunction {
        &self.0
    }

    pub fn add(&self, o: &Self) -> Self {
        HomflyValue(self.0.add(&o.0))
    }

    pub fn sub(&self, o: &Self) -> Self {
        HomflyValue(self.0.sub(&o.0))
    }

    pub fn mul(&self, o: &Self) -> Self {
        HomflyValue(self.0.mul(&o.0))
    }

    pub fn neg(&self) -> Self {
        HomflyValue(self.0.neg())
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        Ok(HomflyValue(self.0.pow(e)?))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(HomflyValue(self.0.div(&o.0)?))
    }

    pub fn rf_equals(&self, o: &Self) -> bool {
        self.0.rf_equals(&o.0)
    }

    /// Denominator is a single monomial.
    pub fn is_laurent(&self) -> bool {
        self.0.den().terms().count() == 1
    }

    /// `l -> i/(w s)`, `m -> i (1 - s^2)/s`.
    pub fn specialize(&self) -> Result<RationalFunction> {
        let i = RationalFunction::constant(GaussianRational::i());
        let s = RationalFunction::s();
        let l = i.div(&RationalFunction::w().mul(&s))?;
        let m = i.mul(&RationalFunction::one().sub(&s.mul(&s))).div(&s)?;
        self.0.substitute(|v| match v {
            Var::S => l.clone(),
            Var::W => m.clone(),
            Var::X => RationalFunction::x(),
        })
    }

    /// `(-(l + l^-1)/m)^(n-1)`.
    pub fn unlink(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyUnlink);
        }
        let l = Self::l();
        let d = l.add(&l.pow(-1)?).neg().div(&Self::m())?;
        d.pow(n as i32 - 1)
    }
}

impl fmt::Display for HomflyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.to_string_with(&NAMES))
    }
}

impl From<HomflyValue> for String {
    fn from(v: HomflyValue) -> String {
        alloc::format!("{v}")
    }
}

/// Descending recursion, same basepoints and tie-breaking as the invariant's.
#[derive(Debug, Default)]
pub struct HomflyRecursion {
    memo: BTreeMap<CanonKey, HomflyValue>,
}

impl HomflyRecursion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn evaluate(&mut self, d: &Diagram) -> Result<HomflyValue> {
        if let Some(n) = d.nodes().iter().position(|n| n.kind == NodeKind::Singular) {
            return Err(Error::SingularNode(n));
        }
        self.eval(&ColoredDiagram::uniform(d.clone()))
    }

    fn eval(&mut self, cd: &ColoredDiagram) -> Result<HomflyValue> {
        let d = cd.diagram();
        if d.nodes().is_empty() {
            return HomflyValue::unlink(d.component_count());
        }
        let key = canonical_form(cd);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let value = match first_bad_crossing(cd) {
            None => HomflyValue::unlink(d.component_count())?,
            Some(n) => {
                let l = HomflyValue::l();
                let m = HomflyValue::m();
                let switched = self.eval(&cd.switch_crossing(n)?)?;
                let smooth = self.eval(&cd.oriented_smoothing(n)?.0)?;
                match d.nodes()[n].kind {
                    // P+ = -l^-2 P- - l^-1 m P0
                    NodeKind::Positive => {
                        let li = l.pow(-1)?;
                        li.mul(&li).mul(&switched).add(&li.mul(&m).mul(&smooth)).neg()
                    }
                    // P- = -l^2 P+ - l m P0
                    _ => l.mul(&l).mul(&switched).add(&l.mul(&m).mul(&smooth)).neg(),
                }
            }
        };
        self.memo.insert(key, value.clone());
        Ok(value)
    }
}

pub fn homfly_polynomial(d: &Diagram) -> Result<HomflyValue> {
    HomflyRecursion::new().evaluate(d)
}

/// Compares the specialized polynomial with the one-color invariant.
pub fn substitution_check(cd: &ColoredDiagram) -> Result<bool> {
    if cd.class_sizes().len() > 1 {
        return Err(Error::MultiColored);
    }
    let p = homfly_polynomial(cd.diagram())?.specialize()?;
    Ok(p.rf_equals(&state_sum(cd)?) && p.rf_equals(&skein_recursive(cd)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::NamedConstant;
    use crate::diagram::tests::{hopf_pos, trefoil};
    use crate::diagram::Coloration;
    use alloc::vec;

    fn hv(f: impl Fn(&HomflyValue, &HomflyValue) -> Result<HomflyValue>) -> HomflyValue {
        f(&HomflyValue::l(), &HomflyValue::m()).unwrap()
    }

    #[test]
    fn unknot_is_one() {
        assert!(homfly_polynomial(&Diagram::unknot()).unwrap().rf_equals(&HomflyValue::one()));
    }

    #[test]
    fn hopf_and_trefoil() {
        let hopf = hv(|l, m| {
            let a = l.pow(-1)?.add(&l.pow(-3)?).div(m)?;
            Ok(a.sub(&l.pow(-1)?.mul(m)))
        });
        assert!(homfly_polynomial(&hopf_pos()).unwrap().rf_equals(&hopf));
        let tre = hv(|l, m| {
            let two = HomflyValue(RationalFunction::from_int(2));
            Ok(two.mul(&l.pow(-2)?).add(&l.pow(-4)?).neg().add(&l.pow(-2)?.mul(m).mul(m)))
        });
        let p = homfly_polynomial(&trefoil()).unwrap();
        assert!(p.rf_equals(&tre), "{p}");
        assert!(p.is_laurent());
        assert_eq!(alloc::format!("{p}"), "(l^2*m^2 - 2*l^2 - 1)/l^4");
    }

    #[test]
    fn two_unlink_specializes_to_delta_same() {
        let u = HomflyValue::unlink(2).unwrap().specialize().unwrap();
        assert!(u.rf_equals(&NamedConstant::DeltaSame.value()));
    }

    #[test]
    fn substitution_on_small_links() {
        for d in [Diagram::unknot(), hopf_pos(), trefoil()] {
            assert!(substitution_check(&ColoredDiagram::uniform(d)).unwrap());
        }
        let two = ColoredDiagram::new(hopf_pos(), &Coloration(vec![0, 1])).unwrap();
        assert_eq!(substitution_check(&two), Err(Error::MultiColored));
    }
}
