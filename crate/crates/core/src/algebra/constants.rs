use core::fmt;
use core::str::FromStr;

use super::rational::RationalFunction;
use crate::error::Error;

/// Coefficients that appear in the relations of the calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedConstant {
    /// Fresh-colored circle: `1/(wx)`.
    DeltaDiff,
    /// Same-colored circle: `(tw^2-1)/(w(1-t))`.
    DeltaSame,
    /// Vertex curl removal.
    CLoop,
    /// Antiparallel bigon, turnback term.
    CBigonAntipar,
    /// Cyclic triangle correction.
    CTriangleDown,
    /// `-w/(t+1)`: positive crossing, smoothing and merged vertex terms.
    PosMerged,
    /// `w`: positive crossing, vertex with colors kept.
    PosKept,
    /// `-t/(w(t+1))`: negative crossing, smoothing and merged vertex terms.
    NegMerged,
    /// `1/w`: negative crossing, vertex with colors kept.
    NegKept,
}

impl NamedConstant {
    pub const ALL: [NamedConstant; 9] = [
        NamedConstant::DeltaDiff,
        NamedConstant::DeltaSame,
        NamedConstant::CLoop,
        NamedConstant::CBigonAntipar,
        NamedConstant::CTriangleDown,
        NamedConstant::PosMerged,
        NamedConstant::PosKept,
        NamedConstant::NegMerged,
        NamedConstant::NegKept,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedConstant::DeltaDiff => "DELTA_DIFF",
            NamedConstant::DeltaSame => "DELTA_SAME",
            NamedConstant::CLoop => "C_LOOP",
            NamedConstant::CBigonAntipar => "C_BIGON_ANTIPAR",
            NamedConstant::CTriangleDown => "C_TRIANGLE_DOWN",
            NamedConstant::PosMerged => "POS_MERGED",
            NamedConstant::PosKept => "POS_KEPT",
            NamedConstant::NegMerged => "NEG_MERGED",
            NamedConstant::NegKept => "NEG_KEPT",
        }
    }

    pub fn value(self) -> RationalFunction {
        let t = RationalFunction::t();
        let w = RationalFunction::w();
        let one = RationalFunction::one();
        let t_inv = t.inv().expect("t");
        let w_inv = w.inv().expect("w");
        // w^a t^b / (1 - t) + w^-a t^-b / (1 - 1/t)
        let pair = |up: RationalFunction, down: RationalFunction| {
            up.div(&one.sub(&t))
                .expect("1-t")
                .add(&down.div(&one.sub(&t_inv)).expect("1-1/t"))
        };
        match self {
            NamedConstant::DeltaDiff => w.mul(&RationalFunction::x()).inv().expect("wx"),
            NamedConstant::DeltaSame => pair(t.mul(&w), t_inv.mul(&w_inv)),
            NamedConstant::CLoop => pair(w.clone(), w_inv),
            NamedConstant::CBigonAntipar => pair(w.mul(&t_inv), w_inv.mul(&t)),
            NamedConstant::CTriangleDown => pair(w.mul(&t_inv).mul(&t_inv), w_inv.mul(&t).mul(&t)),
            NamedConstant::PosMerged => w.neg().div(&t.add(&one)).expect("t+1"),
            NamedConstant::PosKept => w,
            NamedConstant::NegMerged => t.neg().div(&w.mul(&t.add(&one))).expect("w(t+1)"),
            NamedConstant::NegKept => w_inv,
        }
    }
}

impl fmt::Display for NamedConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedConstant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        NamedConstant::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownConstant(s.into()))
    }
}

pub fn named_constant(name: &str) -> Result<RationalFunction, Error> {
    Ok(name.parse::<NamedConstant>()?.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_rational;

    fn p(s: &str) -> RationalFunction {
        parse_rational(s).unwrap()
    }

    #[test]
    fn closed_forms() {
        assert!(named_constant("C_LOOP").unwrap().rf_equals(&p("(w^2 - s^2)/(w*(1 - s^2))")));
        assert!(named_constant("DELTA_SAME").unwrap().rf_equals(&p("(s^2*w^2 - 1)/(w*(1 - s^2))")));
        assert!(named_constant("DELTA_DIFF").unwrap().rf_equals(&p("1/(w*x)")));
        assert!(named_constant("C_BIGON_ANTIPAR").unwrap().rf_equals(&p("(w^2 - t^3)/(t*w*(1 - t))")));
    }

    #[test]
    fn loop_coefficient_two_ways() {
        let a = p("w/(1-s^2) + w^-1*(-s^2/(1-s^2))");
        assert!(a.rf_equals(&NamedConstant::CLoop.value()));
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(named_constant("C_NOPE"), Err(Error::UnknownConstant(_))));
    }
}
