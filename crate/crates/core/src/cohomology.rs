//! Explicit Borel presentations of flag-manifold cohomology: relation
//! families, quotient dimensions and top-class certificates.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::chern::{chern_classes, Integrator};
use crate::error::{Error, Result};
use crate::flagmodel::{FlagManifold, InvariantACS, ManifoldSpec};
use crate::groebner::{borel_ideal, buchberger, GroebnerBasis, MonomialOrder, OrderKind};
use crate::polyring::{exact_divide, Monomial, Polynomial, Rational};
use crate::rootsys::{Family, RootSystem};

/// The presentations checked by this module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseId {
    /// `SU(n+1)/T`.
    AFull(usize),
    /// `Spin(2n+1)/T`.
    BFull(usize),
    /// `Sp(n)/T`.
    CFull(usize),
    /// `SO(6)/U(1)xU(2)` inside `SO(6)/T`, with the basis of `<s1, s2, e3>`.
    So6Groebner,
    /// `F(n+2;n,1,1)` as the projectivized tangent bundle of `CP^(n+1)`.
    ProjTangent(usize),
}

impl FromStr for CaseId {
    type Err = Error;
    fn from_str(s: &str) -> Result<CaseId> {
        let bad = || Error::Unknown { kind: "presentation case", name: s.to_string() };
        if s == "so6-groebner" || s == "fd-3-1-2" {
            return Ok(CaseId::So6Groebner);
        }
        let (head, n) = s.split_once(':').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        let case = match head {
            "a-full" => CaseId::AFull(n),
            "b-full" => CaseId::BFull(n),
            "c-full" => CaseId::CFull(n),
            "proj-tangent" => CaseId::ProjTangent(n),
            _ => return Err(bad()),
        };
        let ok = match case {
            CaseId::AFull(n) => (1..=6).contains(&n),
            CaseId::BFull(n) | CaseId::CFull(n) => (2..=5).contains(&n),
            CaseId::ProjTangent(n) => (1..=6).contains(&n),
            CaseId::So6Groebner => true,
        };
        if !ok {
            return Err(Error::OutOfRange { index: n, max: 6 });
        }
        Ok(case)
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseId::AFull(n) => write!(f, "a-full:{n}"),
            CaseId::BFull(n) => write!(f, "b-full:{n}"),
            CaseId::CFull(n) => write!(f, "c-full:{n}"),
            CaseId::So6Groebner => f.write_str("so6-groebner"),
            CaseId::ProjTangent(n) => write!(f, "proj-tangent:{n}"),
        }
    }
}

/// A presentation `Q[vars] / ideal` together with what is claimed about it.
#[derive(Clone, Debug)]
pub struct PresentationCase {
    pub id: CaseId,
    pub names: Vec<String>,
    pub ideal: Vec<Polynomial>,
    /// Polynomials claimed to vanish in the quotient.
    pub relations: Vec<Polynomial>,
    /// Claimed nonzero top class, before multiplication by `fiber`.
    pub top_class: Polynomial,
    /// Multiplier taking classes of `G/K` to the top degree of `G/T`; `1` otherwise.
    pub fiber: Polynomial,
    /// Expected quotient dimension.
    pub dimension: usize,
    /// Real dimension over two of the manifold the top class lives on.
    pub top_degree: u32,
    /// Manifold used for the Weyl-integration cross-check.
    pub manifold: String,
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn monomial(nvars: usize, exps: &[(usize, u32)]) -> Polynomial {
    let mut e = vec![0u32; nvars];
    for &(i, k) in exps {
        e[i] = k;
    }
    Polynomial::from_int_terms(nvars, BigInt::one(), [(Monomial::from_exponents(&e).unwrap(), BigInt::one())])
}

/// Complete homogeneous symmetric polynomial of degree `k` in `vars^power`.
pub fn complete_homogeneous(nvars: usize, vars: &[usize], k: u32, power: u32) -> Polynomial {
    let mut terms = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn rec(vars: &[usize], left: u32, power: u32, exps: &mut Vec<u32>, out: &mut Vec<(Monomial, BigInt)>) {
        match vars.split_first() {
            None => {
                if left == 0 {
                    out.push((Monomial::from_exponents(exps).unwrap(), BigInt::one()));
                }
            }
            Some((&v, rest)) => {
                for a in 0..=left {
                    exps[v] = a * power;
                    rec(rest, left - a, power, exps, out);
                }
                exps[v] = 0;
            }
        }
    }
    rec(vars, k, power, &mut exps, &mut terms);
    Polynomial::from_int_terms(nvars, BigInt::one(), terms)
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `F(n+2;n,1,1)`: `x^(n+2) = 0` and `((x+y)^(n+2) - x^(n+2)) / y = 0`.
pub fn projectivized_tangent_presentation(n: usize) -> Result<PresentationCase> {
    if n == 0 {
        return Err(Error::OutOfRange { index: 0, max: 0 });
    }
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let m = (n + 2) as u32;
    let xm = x.pow(m);
    let second = exact_divide(&(&(&x + &y).pow(m) - &xm), &y)?;
    Ok(PresentationCase {
        id: CaseId::ProjTangent(n),
        names: vec!["x".into(), "y".into()],
        ideal: vec![xm.clone(), second.clone()],
        relations: vec![xm, second],
        top_class: monomial(2, &[(0, m - 1), (1, m - 2)]),
        fiber: Polynomial::one(2),
        dimension: (n + 2) * (n + 1),
        top_degree: 2 * n as u32 + 1,
        manifold: format!("F({};{n},1,1)", n + 2),
    })
}

/// `y^(n+1) + c1 y^n + ... + c_(n+1)` with `c_i = C(n+2, i) x^i`, the pulled back
/// Chern classes of `CP^(n+1)`.
pub fn projective_chern_form(n: usize) -> Polynomial {
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let mut acc = Polynomial::zero(2);
    for i in 0..=n + 1 {
        let c = x.pow(i as u32).scale(&Rational::from_integer(binomial(n as u64 + 2, i as u64)));
        acc = &acc + &(&c * &y.pow((n + 1 - i) as u32));
    }
    acc
}

impl PresentationCase {
    pub fn build(id: CaseId) -> Result<PresentationCase> {
        match id {
            CaseId::AFull(n) => {
                let rs = RootSystem::build(Family::A, n)?;
                let v = n + 1;
                // Variables x_i = y_(i+1); relation p is
                // h_(n-p+2)(x_(n-p+1), ..., x_n).
                let relations = (1..=n)
                    .map(|p| {
                        let vars: Vec<usize> = (n - p + 1..=n).collect();
                        complete_homogeneous(v, &vars, (n - p + 2) as u32, 1)
                    })
                    .collect();
                let top: Vec<(usize, u32)> = (1..=n).map(|i| (i, i as u32)).collect();
                Ok(PresentationCase {
                    id,
                    names: names("y", v),
                    ideal: borel_ideal(&rs),
                    relations,
                    top_class: monomial(v, &top),
                    fiber: Polynomial::one(v),
                    dimension: (1..=v).product(),
                    top_degree: (n * (n + 1) / 2) as u32,
                    manifold: format!("F({v})"),
                })
            }
            CaseId::BFull(n) | CaseId::CFull(n) => {
                let family = if matches!(id, CaseId::BFull(_)) { Family::B } else { Family::C };
                let rs = RootSystem::build(family, n)?;
                let relations = (1..=n)
                    .map(|p| {
                        let vars: Vec<usize> = (n - p..n).collect();
                        complete_homogeneous(n, &vars, (n - p + 1) as u32, 2)
                    })
                    .collect();
                let top: Vec<(usize, u32)> = (0..n).map(|i| (i, 2 * i as u32 + 1)).collect();
                let head = if family == Family::B { "FB" } else { "FC" };
                Ok(PresentationCase {
                    id,
                    names: names("x", n),
                    ideal: borel_ideal(&rs),
                    relations,
                    top_class: monomial(n, &top),
                    fiber: Polynomial::one(n),
                    dimension: (1..=n).product::<usize>() << n,
                    top_degree: (n * n) as u32,
                    manifold: format!("{head}({n};{})", vec!["1"; n].join(",")),
                })
            }
            CaseId::So6Groebner => {
                let nm: Vec<String> = vec!["x".into(), "y".into(), "z".into()];
                let p = |s: &str| Polynomial::parse(s, &nm);
                let flag = ManifoldSpec::parse("FD(3;1,2)")?.build()?;
                Ok(PresentationCase {
                    id,
                    ideal: vec![p("x^2+y^2+z^2")?, p("x^4+y^4+z^4")?, p("x*y*z")?],
                    relations: vec![
                        p("x^2+y^2+z^2")?,
                        p("x*y*z")?,
                        p("y^4+y^2*z^2+z^4")?,
                        p("y^3*z+y*z^3")?,
                        p("z^5")?,
                    ],
                    top_class: p("y^2*z^3-y*z^4")?,
                    fiber: flag.k_denominator(),
                    names: nm,
                    dimension: 24,
                    top_degree: 5,
                    manifold: "FD(3;1,2)".into(),
                })
            }
            CaseId::ProjTangent(n) => projectivized_tangent_presentation(n),
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn basis(&self, order: OrderKind) -> Result<GroebnerBasis> {
        buchberger(&self.ideal, &MonomialOrder::new(order, self.nvars()))
    }
}

/// Every claimed relation has normal form zero.
pub fn verify_relations(case: &PresentationCase, gb: &GroebnerBasis) -> Result<bool> {
    for r in &case.relations {
        if !gb.normal_form(r)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The unique standard monomial of largest degree, if there is one.
pub fn top_standard_monomial(gb: &GroebnerBasis) -> Option<Monomial> {
    let std = gb.standard_monomials()?;
    let top = std.iter().map(Monomial::degree).max()?;
    let mut it = std.into_iter().filter(|m| m.degree() == top);
    let first = it.next()?;
    it.next().is_none().then_some(first)
}

/// `λ` with `nf(top_class * fiber) = λ · (top standard monomial)`.
pub fn top_class_certificate(case: &PresentationCase, gb: &GroebnerBasis) -> Result<Rational> {
    let top = top_standard_monomial(gb)
        .ok_or_else(|| Error::Invariant(format!("{}: no unique top standard monomial", case.id)))?;
    let nf = gb.normal_form(&(&case.top_class * &case.fiber))?;
    let lambda = nf.coeff(&top);
    if Polynomial::from_terms(case.nvars(), [(top, lambda.clone())]) != nf {
        return Err(Error::Invariant(format!("{}: normal form of the top class is not a top monomial", case.id)));
    }
    if lambda.is_zero() {
        return Err(Error::Invariant(format!("{}: top class certificate vanishes", case.id)));
    }
    Ok(lambda)
}

#[derive(Clone, Debug)]
pub struct CaseReport {
    pub id: CaseId,
    pub order: OrderKind,
    pub quotient_dimension: Option<usize>,
    pub expected_dimension: usize,
    pub relations_hold: bool,
    pub certificate: Option<Rational>,
    /// `∫ top_class` by Weyl localization on the case manifold.
    pub integral: Option<Rational>,
    pub checks: Vec<(String, bool)>,
    pub error: Option<String>,
}

impl CaseReport {
    pub fn ok(&self) -> bool {
        self.error.is_none()
            && self.relations_hold
            && self.quotient_dimension == Some(self.expected_dimension)
            && self.certificate.as_ref().is_some_and(|c| !c.is_zero())
            && self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} {} ({}): dimension {} (expected {}), relations {}, certificate {}",
            if self.ok() { "PASS" } else { "FAIL" },
            self.id,
            self.order,
            self.quotient_dimension.map_or("infinite".to_string(), |d| d.to_string()),
            self.expected_dimension,
            if self.relations_hold { "hold" } else { "fail" },
            self.certificate.as_ref().map_or("none".to_string(), |c| c.to_string()),
        );
        if let Some(i) = &self.integral {
            s.push_str(&format!(", integral {i}"));
        }
        for (name, ok) in &self.checks {
            s.push_str(&format!("\n  [{}] {name}", if *ok { "ok" } else { "FAILED" }));
        }
        if let Some(e) = &self.error {
            s.push_str(&format!("\n  error: {e}"));
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "case": self.id.to_string(),
            "order": self.order.to_string(),
            "ok": self.ok(),
            "quotient_dimension": self.quotient_dimension,
            "expected_dimension": self.expected_dimension,
            "relations_hold": self.relations_hold,
            "certificate": self.certificate.as_ref().map(|c| c.to_string()),
            "integral": self.integral.as_ref().map(|c| c.to_string()),
            "checks": self.checks.iter().map(|(n, ok)| json!({"check": n, "ok": ok})).collect::<Vec<_>>(),
            "error": self.error,
        })
    }
}

fn integral_of(flag: &FlagManifold, case: &PresentationCase) -> Result<Option<Rational>> {
    if case.fiber.degree() != Some(0) || flag.nvars() != case.nvars() {
        return Ok(None);
    }
    Integrator::new(flag).integrate(&case.top_class).map(Some)
}

/// Runs every check for one case under one monomial order.
pub fn verify_case(id: CaseId, order: OrderKind) -> Result<CaseReport> {
    let case = PresentationCase::build(id)?;
    let gb = case.basis(order)?;
    let mut report = CaseReport {
        id,
        order,
        quotient_dimension: gb.quotient_dimension(),
        expected_dimension: case.dimension,
        relations_hold: verify_relations(&case, &gb)?,
        certificate: None,
        integral: None,
        checks: Vec::new(),
        error: None,
    };
    match top_class_certificate(&case, &gb) {
        Ok(l) => report.certificate = Some(l),
        Err(e) => report.error = Some(e.to_string()),
    }
    let top_ok = case.top_class.is_homogeneous() && case.top_class.degree() == Some(case.top_degree);
    report.checks.push((format!("top class has degree {}", case.top_degree), top_ok));

    let flag = ManifoldSpec::parse(&case.manifold)?.build()?;
    // A nonconstant fiber means the ring is that of the full flag above the case manifold.
    let full = match case.fiber.degree() {
        Some(0) => case.manifold.clone(),
        _ => format!("F{}({};{})", flag.root_system().family(), flag.root_system().rank(), vec!["1"; flag.root_system().rank()].join(",")),
    };
    let chi = ManifoldSpec::parse(&full)?.build()?.euler_characteristic();
    report.checks.push((format!("quotient dimension equals the Euler characteristic of {full}"), chi as usize == case.dimension));
    report.integral = integral_of(&flag, &case)?;
    if let Some(i) = &report.integral {
        report.checks.push(("Weyl integral of the top class is nonzero".into(), !i.is_zero()));
    }
    match id {
        CaseId::ProjTangent(n) => {
            let same = projective_chern_form(n) == case.relations[1];
            report.checks.push((format!("relation equals y^{} + c1 y^{} + ... with c_i = C({},i) x^i", n + 1, n, n + 2), same));
        }
        CaseId::So6Groebner => {
            let top_chern = chern_classes(&flag, &InvariantACS::all_plus(flag.num_summands()))?[5].clone();
            let lhs = gb.normal_form(&(&top_chern * &case.fiber))?;
            let rhs = gb.normal_form(&(&case.top_class * &case.fiber))?;
            let ratio = top_standard_monomial(&gb).map(|m| lhs.coeff(&m) / rhs.coeff(&m));
            let prop = ratio.as_ref().is_some_and(|r| lhs == rhs.scale(r) && !r.is_zero());
            let r = ratio.map_or("-".into(), |r| r.to_string());
            report.checks.push((format!("c5 of the canonical structure is {r} times the top class"), prop));
        }
        _ => {}
    }
    Ok(report)
}

/// The cases exercised by `verify all`.
pub fn default_cases() -> Vec<CaseId> {
    let mut v: Vec<CaseId> = (1..=5).map(CaseId::AFull).collect();
    v.extend((2..=3).map(CaseId::BFull));
    v.extend((2..=3).map(CaseId::CFull));
    v.push(CaseId::So6Groebner);
    v.extend((1..=4).map(CaseId::ProjTangent));
    v
}
