//! Built-in curves with their known invariants.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cli::parse::parse_poly;
use crate::exactla::ArithmeticMode;
use crate::jacobian::{validate_with, CurveError, CurveInput, ValidateOptions};
use crate::polyring::HomogeneousPoly;
use crate::syzygy::Classification;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog identifier '{0}' (try `catalog list`)")]
    UnknownIdentifier(String),
    #[error("bad parameters for '{id}': {reason}")]
    BadParams { id: String, reason: String },
    #[error(transparent)]
    Curve(#[from] CurveError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveId {
    /// `(x^m-y^m)(x^m-z^m)(y^m-z^m)`, `m >= 2`.
    MonomialArrangement,
    Hessian,
    /// `(y^m z^m - x^{2m})^2 y^m - x^{5m}`, `m >= 1`.
    C5m,
    E14Sextic,
    NineCuspSextic,
    ZariskiSextic,
    Torus34,
    /// `x^d + y^d + z^d`, `d >= 3`.
    Fermat,
}

/// Identifier, accepted aliases, parameter name, description.
#[allow(clippy::type_complexity)]
const ENTRIES: &[(CurveId, &str, &[&str], Option<&str>, &str)] = &[
    (CurveId::MonomialArrangement, "a-m-m-3", &["A", "a", "A(m,m,3)"], Some("m"), "monomial line arrangement of 3m lines"),
    (CurveId::Hessian, "hessian", &[], None, "Hessian arrangement of 12 lines"),
    (CurveId::C5m, "c5m", &["C5m", "C_5m"], Some("m"), "free curves of degree 5m"),
    (CurveId::E14Sextic, "e14-sextic", &["e14"], None, "rational cuspidal sextic with E6 and E14 points"),
    (CurveId::NineCuspSextic, "nine-cusp-sextic", &["nine-cusp"], None, "sextic with nine cusps (dual of a smooth cubic)"),
    (CurveId::ZariskiSextic, "zariski-sextic", &["zariski"], None, "sextic with six cusps on a conic"),
    (CurveId::Torus34, "torus-3-4", &["torus"], None, "(3,4)-torus type curve of degree 12"),
    (CurveId::Fermat, "fermat", &[], Some("d"), "smooth Fermat curve of degree d"),
];

impl CurveId {
    pub fn all() -> impl Iterator<Item = CurveId> {
        ENTRIES.iter().map(|e| e.0)
    }

    pub fn parse(s: &str) -> Result<Self, CatalogError> {
        ENTRIES.iter().find(|e| e.1 == s || e.2.contains(&s)).map(|e| e.0).ok_or_else(|| CatalogError::UnknownIdentifier(s.to_string()))
    }

    fn entry(self) -> &'static (CurveId, &'static str, &'static [&'static str], Option<&'static str>, &'static str) {
        ENTRIES.iter().find(|e| e.0 == self).expect("every id has an entry")
    }

    pub fn name(self) -> &'static str {
        self.entry().1
    }

    pub fn parameter(self) -> Option<&'static str> {
        self.entry().3
    }

    pub fn description(self) -> &'static str {
        self.entry().4
    }
}

/// A catalog curve with its parameter resolved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub id: CurveId,
    pub param: Option<u32>,
    pub expression: String,
    pub degree: u32,
    pub components: u32,
}

impl CurveSpec {
    pub fn new(id: CurveId, param: Option<u32>) -> Result<Self, CatalogError> {
        let bad = |reason: &str| CatalogError::BadParams { id: id.name().to_string(), reason: reason.to_string() };
        let param = match (id.parameter(), param) {
            (None, None) => None,
            (None, Some(_)) => return Err(bad("takes no parameter")),
            (Some(p), None) => return Err(bad(&format!("needs --{p}"))),
            (Some(_), Some(v)) => Some(v),
        };
        let (expression, degree, components) = match (id, param) {
            (CurveId::MonomialArrangement, Some(m)) => {
                if m < 2 {
                    return Err(bad("m must be at least 2"));
                }
                (format!("(x^{m}-y^{m})*(x^{m}-z^{m})*(y^{m}-z^{m})"), 3 * m, 3 * m)
            }
            (CurveId::Hessian, _) => ("x*y*z*((x^3+y^3+z^3)^3-27*x^3*y^3*z^3)".to_string(), 12, 12),
            (CurveId::C5m, Some(m)) => {
                if m < 1 {
                    return Err(bad("m must be at least 1"));
                }
                let r = if m % 2 == 0 { 2 } else { 1 };
                (format!("(y^{m}*z^{m}-x^{})^2*y^{m}-x^{}", 2 * m, 5 * m), 5 * m, r)
            }
            (CurveId::E14Sextic, _) => ("(x*z-y^2)^3-x^2*y^4".to_string(), 6, 1),
            (CurveId::NineCuspSextic, _) => ("x^6+y^6+z^6-2*(x^3*y^3+x^3*z^3+y^3*z^3)".to_string(), 6, 1),
            (CurveId::ZariskiSextic, _) => ("(x^2+y^2)^3+(y^3+z^3)^2".to_string(), 6, 1),
            (CurveId::Torus34, _) => ("(x^3+y^3)^4+(y^4+z^4)^3".to_string(), 12, 1),
            (CurveId::Fermat, Some(d)) => {
                if d < 3 {
                    return Err(bad("d must be at least 3"));
                }
                (format!("x^{d}+y^{d}+z^{d}"), d, 1)
            }
            _ => unreachable!("parameter presence checked above"),
        };
        Ok(CurveSpec { id, param, expression, degree, components })
    }

    pub fn label(&self) -> String {
        match (self.id.parameter(), self.param) {
            (Some(p), Some(v)) => format!("{}[{p}={v}]", self.id.name()),
            _ => self.id.name().to_string(),
        }
    }

    pub fn polynomial(&self) -> HomogeneousPoly {
        let p = parse_poly(&self.expression).expect("catalog expressions parse");
        assert_eq!(p.degree(), self.degree, "catalog degree for {}", self.label());
        p
    }

    pub fn build(&self) -> Result<CurveInput, CatalogError> {
        self.build_with(ArithmeticMode::Exact)
    }

    pub fn build_with(&self, mode: ArithmeticMode) -> Result<CurveInput, CatalogError> {
        let opts = ValidateOptions { mode, ..Default::default() };
        Ok(validate_with(self.polynomial(), Some(self.components), opts)?)
    }

    pub fn expected_facts(&self) -> Vec<ExpectedFact> {
        expected_facts_for(self)
    }
}

/// Builds and validates a catalog curve.
pub fn build(id: &str, param: Option<u32>) -> Result<CurveInput, CatalogError> {
    CurveSpec::new(CurveId::parse(id)?, param)?.build()
}

pub fn expected_facts(id: &str, param: Option<u32>) -> Result<Vec<ExpectedFact>, CatalogError> {
    Ok(CurveSpec::new(CurveId::parse(id)?, param)?.expected_facts())
}

/// A syzygy form given by its three coefficients, as expressions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormSpec {
    pub a: String,
    pub b: String,
    pub c: String,
}

impl FormSpec {
    fn new(a: impl Into<String>, b: impl Into<String>, c: impl Into<String>) -> Self {
        FormSpec { a: a.into(), b: b.into(), c: c.into() }
    }

    /// Zero entries are placed in the degree of the nonzero ones.
    pub fn parse(&self) -> [HomogeneousPoly; 3] {
        let polys = [&self.a, &self.b, &self.c].map(|s| parse_poly(s).expect("catalog forms parse"));
        let degree = polys.iter().find(|p| !p.is_zero()).map_or(0, HomogeneousPoly::degree);
        polys.map(|p| if p.is_zero() { HomogeneousPoly::zero(degree) } else { p })
    }
}

/// A machine-checkable statement about a catalog curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "fact", rename_all = "snake_case")]
pub enum Fact {
    Classification {
        classification: Classification,
    },
    /// Minimal generator degrees of `AR(f)` found up to degree `jmax`.
    GeneratorDegrees {
        jmax: u32,
        degrees: Vec<u32>,
    },
    /// `ε_q` for `q` in `[qmin, qmax]`: the listed values, zero elsewhere.
    EpsilonRange {
        qmin: u32,
        qmax: u32,
        nonzero: Vec<(u32, usize)>,
    },
    Delta1 {
        polynomial: String,
    },
    Tjurina {
        value: usize,
    },
    H2f {
        q: u32,
        value: usize,
    },
    AlexanderBound {
        k: u32,
        lower: usize,
        upper: usize,
        exact: bool,
    },
    /// The form lies in the closed syzygy space at degree `q`.
    ClosedForm {
        q: u32,
        form: FormSpec,
    },
    /// `δ_q` is injective for `q - 2` in `[d1, d2)`.
    InjectiveRange {
        d1: u32,
        d2: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedFact {
    #[serde(flatten)]
    pub fact: Fact,
    pub anchor: String,
}

fn fact(fact: Fact, anchor: &str) -> ExpectedFact {
    ExpectedFact { fact, anchor: anchor.to_string() }
}

fn cyclotomic_power(base: &str, e: u32) -> String {
    if e == 1 {
        format!("({base})")
    } else {
        format!("({base})^{e}")
    }
}

fn expected_facts_for(spec: &CurveSpec) -> Vec<ExpectedFact> {
    use Fact::*;
    let d = spec.degree;
    match (spec.id, spec.param) {
        (CurveId::ZariskiSextic, _) => vec![
            fact(GeneratorDegrees { jmax: 6, degrees: vec![3, 5, 5, 5] }, "one generator of degree 3, three of degree 5"),
            fact(EpsilonRange { qmin: 1, qmax: 6, nonzero: vec![(5, 1)] }, "first row of E2 is nonzero only at k = 5"),
            fact(Delta1 { polynomial: "t^2-t+1".into() }, "six cusps on a conic"),
            fact(ClosedForm { q: 5, form: FormSpec::new("y*z^2", "-x*z^2", "x*y^2") }, "degree 3 generator is closed"),
            fact(ClosedForm { q: 7, form: FormSpec::new("y^3*z^2+z^5", "0", "-x^5-2*x^3*y^2-x*y^4") }, "a closed degree 5 generator"),
            fact(Tjurina { value: 12 }, "six ordinary cusps, local Tjurina number 2 each"),
        ],
        (CurveId::NineCuspSextic, _) => vec![
            fact(
                Classification { classification: crate::syzygy::Classification::NearlyFree { d1: 3, d2: 3 } },
                "nearly free sextic with nine cusps",
            ),
            fact(GeneratorDegrees { jmax: 6, degrees: vec![3, 3, 3] }, "three generators of degree 3"),
            fact(EpsilonRange { qmin: 1, qmax: 12, nonzero: vec![(5, 3), (7, 3)] }, "only the cells (0,5) and (1,1) survive"),
            fact(Delta1 { polynomial: "(t^2-t+1)^3".into() }, "nine cusps, dual of a smooth cubic"),
            fact(Tjurina { value: 18 }, "nine ordinary cusps, local Tjurina number 2 each"),
        ],
        (CurveId::E14Sextic, _) => vec![
            fact(Classification { classification: crate::syzygy::Classification::Free { d1: 2, d2: 3 } }, "free rational cuspidal sextic"),
            fact(
                EpsilonRange { qmin: 1, qmax: 12, nonzero: vec![(5, 1), (7, 1), (10, 1), (11, 1), (12, 1)] },
                "first row nonzero only at k = 5; second row at k = 1, 4, 5, 6",
            ),
            fact(
                EpsilonRange { qmin: 13, qmax: 18, nonzero: (13..=18).map(|q| (q, 1)).collect() },
                "every later cell equals mu(E14) - tau(E14) = 1",
            ),
            fact(Delta1 { polynomial: "t^2-t+1".into() }, "complement group Z/2 * Z/3"),
            fact(Tjurina { value: 19 }, "E6 point (tau 6) and E14 point (tau 13)"),
            fact(
                ClosedForm { q: 5, form: FormSpec::new("2*x^2*y", "-x*y^2", "-2*y^3-2*x*y*z") },
                "y times the degree 2 generator is closed",
            ),
        ],
        (CurveId::Torus34, _) => vec![
            // rho = (y^2 z^3, -x^2 z^3, x^2 y^3) has coefficient degree 5
            fact(GeneratorDegrees { jmax: 10, degrees: vec![5] }, "one generator rho below degree 11"),
            fact(EpsilonRange { qmin: 1, qmax: 12, nonzero: vec![(7, 1), (10, 1), (11, 1)] }, "first row nonzero exactly at k = 7, 10, 11"),
            fact(Delta1 { polynomial: "t^6-t^5+t^3-t+1".into() }, "Phi_6 * Phi_12 for twelve E6 points"),
            fact(Tjurina { value: 72 }, "twelve E6 points, local Tjurina number 6 each"),
            fact(ClosedForm { q: 7, form: FormSpec::new("y^2*z^3", "-x^2*z^3", "x^2*y^3") }, "rho is closed"),
            fact(
                ClosedForm { q: 10, form: FormSpec::new("(x^3+y^3)*y^2*z^3", "-(x^3+y^3)*x^2*z^3", "(x^3+y^3)*x^2*y^3") },
                "(x^3+y^3) rho is closed",
            ),
            fact(
                ClosedForm { q: 11, form: FormSpec::new("(y^4+z^4)*y^2*z^3", "-(y^4+z^4)*x^2*z^3", "(y^4+z^4)*x^2*y^3") },
                "(y^4+z^4) rho is closed",
            ),
        ],
        (CurveId::MonomialArrangement, Some(m)) => {
            let mut facts = vec![fact(
                Classification {
                    classification: crate::syzygy::Classification::Free { d1: (m + 1).min(2 * m - 2), d2: (m + 1).max(2 * m - 2) },
                },
                "free arrangement with exponents (m+1, 2m-2)",
            )];
            facts.push(fact(
                ClosedForm {
                    q: 2 * m,
                    form: FormSpec::new(format!("y^{0}*z^{0}", m - 1), format!("x^{0}*z^{0}", m - 1), format!("x^{0}*y^{0}", m - 1)),
                },
                "the degree 2m-2 generator is closed",
            ));
            if m >= 4 {
                let e = if m % 3 == 0 { 2 } else { 1 };
                facts.push(fact(
                    EpsilonRange { qmin: 1, qmax: 6 * m, nonzero: vec![(2 * m, e), (3 * m, 3 * m as usize - 1), (4 * m, e)] },
                    "epsilon vanishes except at q = 2m, 3m, 4m (m >= 4)",
                ));
                facts.push(fact(
                    Delta1 { polynomial: format!("{}*{}", cyclotomic_power("t-1", 3 * m - 1), cyclotomic_power("t^2+t+1", e as u32)) },
                    "only cube roots of unity besides 1 (m >= 4)",
                ));
                facts.push(fact(InjectiveRange { d1: m + 1, d2: 2 * m - 2 }, "divergence map injective between the exponents"));
            }
            facts
        }
        (CurveId::Hessian, _) => vec![
            fact(
                Classification { classification: crate::syzygy::Classification::Free { d1: 4, d2: 7 } },
                "free arrangement with exponents (4,7)",
            ),
            fact(H2f { q: 18, value: 2 }, "dim H^2_f = 2 for coefficient degree 16, i.e. the (1,6) cell"),
            fact(AlexanderBound { k: 6, lower: 1, upper: 2, exact: false }, "lower bound is strict at -1 (actual multiplicity 2)"),
            fact(ClosedForm { q: 6, form: FormSpec::new("-x*(y^3-z^3)", "y*(x^3-z^3)", "z*(y^3-x^3)") }, "omega_1 = dc_1 ^ dc_2"),
            fact(
                ClosedForm {
                    q: 9,
                    form: FormSpec::new("-(x^3+y^3+z^3)*x*(y^3-z^3)", "(x^3+y^3+z^3)*y*(x^3-z^3)", "(x^3+y^3+z^3)*z*(y^3-x^3)"),
                },
                "c_1 omega_1",
            ),
            fact(ClosedForm { q: 9, form: FormSpec::new("-x*y*z*x*(y^3-z^3)", "x*y*z*y*(x^3-z^3)", "x*y*z*z*(y^3-x^3)") }, "c_2 omega_1"),
        ],
        (CurveId::C5m, Some(m)) => {
            let mut facts = vec![fact(
                Classification { classification: crate::syzygy::Classification::Free { d1: 2 * m, d2: 3 * m - 1 } },
                "free with exponents (2m, 3m-1)",
            )];
            let (nonzero, delta) =
                if m % 2 == 0 { ((d / 2 + 1..=d).map(|k| (k, 1)).collect(), format!("t^{d}-1")) } else { (Vec::new(), "1".to_string()) };
            facts.push(fact(EpsilonRange { qmin: 1, qmax: d, nonzero }, "first row: 1 on (d/2, d] for even m, zero for odd m"));
            facts.push(fact(Delta1 { polynomial: delta }, "t^(5m)-1 for even m, trivial for odd m"));
            if m >= 2 {
                facts.push(fact(Tjurina { value: (19 * m * m - 8 * m + 1) as usize }, "tau = 19m^2 - 8m + 1"));
            }
            facts
        }
        (CurveId::Fermat, Some(_)) => vec![
            fact(
                Classification { classification: crate::syzygy::Classification::Other { degrees: vec![d - 1; 3] } },
                "smooth: only Koszul syzygies",
            ),
            fact(EpsilonRange { qmin: 1, qmax: 2 * d, nonzero: Vec::new() }, "smooth: the spectral sequence is trivial"),
            fact(Delta1 { polynomial: "1".into() }, "smooth curves have trivial Alexander polynomial"),
            fact(Tjurina { value: 0 }, "smooth"),
        ],
        _ => Vec::new(),
    }
}
