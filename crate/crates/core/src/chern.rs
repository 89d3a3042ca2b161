//! Chern classes of invariant almost complex structures, Chern numbers
//! by Weyl localization and by Gröbner normal forms, and the Todd genus.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::flagmodel::{is_integrable, FlagManifold, InvariantACS};
use crate::groebner::{borel_ideal, buchberger, GroebnerBasis, MonomialOrder, OrderKind, QuotientRing};
use crate::polyring::{antisymmetrize_product, elementary_symmetric_all, Monomial, Polynomial, Rational};
use crate::rootsys::{act, WeylElement, WeylGroup};

/// Largest degree accepted by [`todd_polynomial`].
pub const MAX_TODD_DEGREE: usize = 14;

/// A monomial `c1^a1 c2^a2 ...` in Chern classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChernMonomial {
    exps: Vec<u32>,
}

impl ChernMonomial {
    /// `exps[i]` is the power of `c_{i+1}`.
    pub fn new(exps: Vec<u32>) -> ChernMonomial {
        let mut exps = exps;
        while exps.last() == Some(&0) {
            exps.pop();
        }
        ChernMonomial { exps }
    }

    pub fn one() -> ChernMonomial {
        ChernMonomial { exps: Vec::new() }
    }

    /// The single class `c_k`.
    pub fn class(k: usize) -> ChernMonomial {
        assert!(k >= 1, "Chern classes are indexed from 1");
        let mut e = vec![0; k];
        e[k - 1] = 1;
        ChernMonomial { exps: e }
    }

    /// `c1^e`.
    pub fn c1_power(e: u32) -> ChernMonomial {
        ChernMonomial::new(vec![e])
    }

    /// Power of `c_k`.
    pub fn exponent(&self, k: usize) -> u32 {
        if k == 0 {
            return 0;
        }
        self.exps.get(k - 1).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Weighted degree `Σ k·a_k`.
    pub fn weight(&self) -> usize {
        self.exps.iter().enumerate().map(|(i, &e)| (i + 1) * e as usize).sum()
    }

    pub fn times(&self, other: &ChernMonomial) -> ChernMonomial {
        let n = self.exps.len().max(other.exps.len());
        ChernMonomial::new((0..n).map(|i| self.exponent(i + 1) + other.exponent(i + 1)).collect())
    }

    /// Drops one factor of the highest class present.
    fn split_last(&self) -> Option<(ChernMonomial, usize)> {
        let k = self.exps.len();
        if k == 0 {
            return None;
        }
        let mut e = self.exps.clone();
        e[k - 1] -= 1;
        Some((ChernMonomial::new(e), k))
    }

    /// Parts of the partition, largest first.
    pub fn parts(&self) -> Vec<usize> {
        let mut v = Vec::new();
        for k in (1..=self.exps.len()).rev() {
            for _ in 0..self.exponent(k) {
                v.push(k);
            }
        }
        v
    }

    pub fn from_parts(parts: &[usize]) -> ChernMonomial {
        let n = parts.iter().copied().max().unwrap_or(0);
        let mut e = vec![0; n];
        for &p in parts {
            if p > 0 {
                e[p - 1] += 1;
            }
        }
        ChernMonomial::new(e)
    }

    /// Every Chern monomial of weight `n`, starting with `c_n` and ending with `c1^n`.
    pub fn partitions(n: usize) -> Vec<ChernMonomial> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<ChernMonomial>) {
            if rest == 0 {
                out.push(ChernMonomial::from_parts(cur));
                return;
            }
            for p in (1..=max.min(rest)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for ChernMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => write!(f, "c{}", i + 1)?,
                _ => write!(f, "c{}^{}", i + 1, e)?,
            }
        }
        Ok(())
    }
}

impl FromStr for ChernMonomial {
    type Err = Error;

    /// Accepts `c1^2c3`, `c1^2*c3`, `c_1^2 c_3` and `1`.
    fn from_str(s: &str) -> Result<ChernMonomial> {
        let err = || Error::Parse(format!("bad Chern monomial '{s}'"));
        let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*' && *c != '_').collect();
        if t == "1" {
            return Ok(ChernMonomial::one());
        }
        let b = t.as_bytes();
        let mut i = 0;
        let mut exps: Vec<u32> = Vec::new();
        let number = |i: &mut usize| -> Option<u32> {
            let start = *i;
            while *i < b.len() && b[*i].is_ascii_digit() {
                *i += 1;
            }
            t[start..*i].parse().ok()
        };
        if b.is_empty() {
            return Err(err());
        }
        while i < b.len() {
            if b[i] != b'c' {
                return Err(err());
            }
            i += 1;
            let k = number(&mut i).filter(|&k| k >= 1).ok_or_else(err)? as usize;
            let e = if i < b.len() && b[i] == b'^' {
                i += 1;
                number(&mut i).ok_or_else(err)?
            } else {
                1
            };
            if exps.len() < k {
                exps.resize(k, 0);
            }
            exps[k - 1] += e;
        }
        Ok(ChernMonomial::new(exps))
    }
}

/// Parses a comma separated list of Chern monomials.
pub fn parse_monomial_list(s: &str) -> Result<Vec<ChernMonomial>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(|t| t.trim().parse()).collect()
}

/// The tangent weights `ε_α·α` over the positive complementary roots.
pub fn chern_forms(flag: &FlagManifold, acs: &InvariantACS) -> Result<Vec<Polynomial>> {
    if acs.len() != flag.num_summands() {
        return Err(Error::SignLength { expected: flag.num_summands(), found: acs.len() });
    }
    let rs = flag.root_system();
    Ok(flag
        .complementary_positive()
        .iter()
        .map(|&i| {
            let f = rs.linear_form(i);
            if flag.root_sign(acs, i) == Some(-1) {
                -f
            } else {
                f
            }
        })
        .collect())
}

/// `∏ ε_α` over the positive complementary roots: `+1` when the structure's
/// own orientation agrees with the all-plus one.
pub fn orientation_sign(flag: &FlagManifold, acs: &InvariantACS) -> i8 {
    flag.complementary_positive()
        .iter()
        .map(|&i| flag.root_sign(acs, i).unwrap_or(1))
        .product()
}

/// `[c_0, c_1, ..., c_N]` as polynomials in the ambient coordinates.
pub fn chern_classes(flag: &FlagManifold, acs: &InvariantACS) -> Result<Vec<Polynomial>> {
    elementary_symmetric_all(&chern_forms(flag, acs)?, flag.nvars())
}

/// Normal forms of `e_0, ..., e_n` of the forms, reducing after every step.
fn reduced_elementary(ring: &mut QuotientRing, forms: &[Polynomial]) -> Vec<Polynomial> {
    let nvars = ring.basis().nvars();
    let mut e = vec![Polynomial::one(nvars)];
    for f in forms {
        let f = ring.reduce(f);
        e.push(Polynomial::zero(nvars));
        for j in (1..e.len()).rev() {
            let t = ring.mul(&e[j - 1], &f);
            e[j] = &e[j] + &t;
        }
    }
    e
}

/// Which integration method to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Oracle {
    Weyl,
    Groebner,
    /// Both, failing unless they agree.
    Both,
}

impl FromStr for Oracle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Oracle> {
        match s {
            "weyl" => Ok(Oracle::Weyl),
            "groebner" => Ok(Oracle::Groebner),
            "both" => Ok(Oracle::Both),
            _ => Err(Error::Unknown { kind: "oracle", name: s.to_string() }),
        }
    }
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Oracle::Weyl => "weyl",
            Oracle::Groebner => "groebner",
            Oracle::Both => "both",
        })
    }
}

/// Localization over the Weyl group.
pub struct Integrator {
    weyl: Arc<WeylGroup>,
    delta: Polynomial,
    delta_lead: (Monomial, Rational),
    k_product: Polynomial,
    k_reflections: Vec<WeylElement>,
    weyl_k_order: u64,
    degree: u32,
    jobs: usize,
}

impl Integrator {
    pub fn new(flag: &FlagManifold) -> Integrator {
        let rs = flag.root_system();
        let delta = rs.weyl_denominator();
        let delta_lead = delta.sorted_terms().into_iter().next().expect("Weyl denominator is nonzero");
        Integrator {
            weyl: flag.weyl(),
            delta,
            delta_lead,
            k_product: flag.k_denominator(),
            k_reflections: flag.theta().iter().map(|&i| rs.reflection(rs.simple_roots()[i])).collect(),
            weyl_k_order: flag.weyl_k_order(),
            degree: flag.complex_dim() as u32,
            jobs: 1,
        }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Integrator {
        self.jobs = jobs.max(1);
        self
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    fn check(&self, p: &Polynomial) -> Result<()> {
        if p.is_zero() {
            return Ok(());
        }
        if !p.is_homogeneous() || p.degree() != Some(self.degree) {
            return Err(Error::DegreeMismatch { expected: self.degree, found: p.degree() });
        }
        for (k, s) in self.k_reflections.iter().enumerate() {
            if &act(s, p)? != p {
                return Err(Error::NotInvariant(k));
            }
        }
        Ok(())
    }

    /// `∫ p` over the flag manifold, oriented by the all-plus structure.
    pub fn integrate(&self, p: &Polynomial) -> Result<Rational> {
        self.check(p)?;
        if p.is_zero() {
            return Ok(Rational::zero());
        }
        let anti = antisymmetrize_product(p, &self.k_product, &self.weyl, self.jobs)?;
        let (m0, d0) = &self.delta_lead;
        let ratio = anti.coeff(m0) / d0;
        if anti != self.delta.scale(&ratio) {
            return Err(Error::NotDivisible(Box::new(anti)));
        }
        Ok(ratio / Rational::from_integer(BigInt::from(self.weyl_k_order)))
    }
}

/// The reduced lex Gröbner basis of the Borel ideal of the full flag, cached per root system.
pub fn borel_basis(flag: &FlagManifold) -> Result<Arc<GroebnerBasis>> {
    static CACHE: OnceLock<Mutex<FxHashMap<String, Arc<GroebnerBasis>>>> = OnceLock::new();
    let rs = flag.root_system();
    let key = format!("{}{}", rs.family(), rs.rank());
    let cache = CACHE.get_or_init(|| Mutex::new(FxHashMap::default()));
    if let Some(gb) = cache.lock().expect("cache poisoned").get(&key) {
        return Ok(Arc::clone(gb));
    }
    let order = MonomialOrder::new(OrderKind::Lex, rs.ambient_dim());
    let gb = Arc::new(buchberger(&borel_ideal(rs), &order)?);
    cache.lock().expect("cache poisoned").insert(key, Arc::clone(&gb));
    Ok(gb)
}

/// Integration through normal forms in the Borel presentation.
pub struct NfIntegrator {
    ring: QuotientRing,
    k_factors: Vec<Polynomial>,
    top: Monomial,
    mu: Rational,
    scale: Rational,
    degree: u32,
}

impl NfIntegrator {
    pub fn new(flag: &FlagManifold) -> Result<NfIntegrator> {
        NfIntegrator::with_basis(flag, borel_basis(flag)?)
    }

    /// `gb` must be a Gröbner basis of the Borel ideal of the full flag.
    pub fn with_basis(flag: &FlagManifold, gb: Arc<GroebnerBasis>) -> Result<NfIntegrator> {
        let rs = flag.root_system();
        if gb.nvars() != rs.ambient_dim() {
            return Err(Error::RingMismatch(rs.ambient_dim(), gb.nvars()));
        }
        let mut ring = QuotientRing::new(gb);
        let forms: Vec<Polynomial> = (0..rs.num_positive()).map(|i| rs.linear_form(i)).collect();
        let reference = ring.product(&forms);
        let terms = reference.sorted_terms();
        let (top, mu) = match terms.as_slice() {
            [(m, c)] => (*m, c.clone()),
            [] => return Err(Error::Invariant("the Weyl denominator vanishes in the quotient".into())),
            _ => return Err(Error::Invariant("the top degree of the quotient is not one-dimensional".into())),
        };
        let k_factors = flag.k_positive().iter().map(|&i| ring.reduce(&rs.linear_form(i))).collect();
        let scale = Rational::new(BigInt::from(flag.weyl_order()), BigInt::from(flag.weyl_k_order()));
        Ok(NfIntegrator { ring, k_factors, top, mu, scale, degree: flag.complex_dim() as u32 })
    }

    pub fn ring(&mut self) -> &mut QuotientRing {
        &mut self.ring
    }

    /// The top standard monomial and the coefficient of the Weyl denominator on it.
    pub fn reference(&self) -> (Monomial, &Rational) {
        (self.top, &self.mu)
    }

    pub fn integrate(&mut self, p: &Polynomial) -> Result<Rational> {
        if p.is_zero() {
            return Ok(Rational::zero());
        }
        if !p.is_homogeneous() || p.degree() != Some(self.degree) {
            return Err(Error::DegreeMismatch { expected: self.degree, found: p.degree() });
        }
        let r = self.ring.reduce(p);
        self.integrate_reduced(&r)
    }

    /// Like [`NfIntegrator::integrate`] for an integrand already in normal form.
    pub fn integrate_reduced(&mut self, r: &Polynomial) -> Result<Rational> {
        let mut acc = r.clone();
        for f in &self.k_factors {
            if acc.is_zero() {
                break;
            }
            acc = self.ring.mul(&acc, f);
        }
        let lambda = acc.coeff(&self.top);
        if acc.len() > 1 || (acc.len() == 1 && lambda.is_zero()) {
            return Err(Error::Invariant("normal form of a top-degree class is not a multiple of the top monomial".into()));
        }
        Ok(lambda / &self.mu * &self.scale)
    }
}

/// `∫ p` by Weyl localization.
pub fn integrate(flag: &FlagManifold, p: &Polynomial) -> Result<Rational> {
    Integrator::new(flag).integrate(p)
}

/// `∫ p` through normal forms modulo `gb`.
pub fn integrate_nf(flag: &FlagManifold, p: &Polynomial, gb: Arc<GroebnerBasis>) -> Result<Rational> {
    NfIntegrator::with_basis(flag, gb)?.integrate(p)
}

fn to_integer(q: Rational, what: &dyn fmt::Display) -> Result<BigInt> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::Invariant(format!("{what} evaluated to the non-integer {q}")))
    }
}

/// Chern numbers of one structure, with products memoized across monomials.
pub struct ChernEngine<'a> {
    flag: &'a FlagManifold,
    acs: InvariantACS,
    oracle: Oracle,
    classes: Vec<Polynomial>,
    weyl: Option<Integrator>,
    nf: Option<NfIntegrator>,
    nf_classes: Vec<Polynomial>,
    raw_memo: FxHashMap<ChernMonomial, Polynomial>,
    nf_memo: FxHashMap<ChernMonomial, Polynomial>,
}

impl<'a> ChernEngine<'a> {
    pub fn new(flag: &'a FlagManifold, acs: &InvariantACS, oracle: Oracle, jobs: usize) -> Result<ChernEngine<'a>> {
        let classes = chern_classes(flag, acs)?;
        let weyl = match oracle {
            Oracle::Groebner => None,
            _ => Some(Integrator::new(flag).with_jobs(jobs)),
        };
        let (nf, nf_classes) = match oracle {
            Oracle::Weyl => (None, Vec::new()),
            _ => {
                let mut nf = NfIntegrator::new(flag)?;
                let reduced = reduced_elementary(nf.ring(), &chern_forms(flag, acs)?);
                (Some(nf), reduced)
            }
        };
        Ok(ChernEngine {
            flag,
            acs: acs.clone(),
            oracle,
            classes,
            weyl,
            nf,
            nf_classes,
            raw_memo: FxHashMap::default(),
            nf_memo: FxHashMap::default(),
        })
    }

    pub fn flag(&self) -> &FlagManifold {
        self.flag
    }

    pub fn acs(&self) -> &InvariantACS {
        &self.acs
    }

    pub fn oracle(&self) -> Oracle {
        self.oracle
    }

    /// `[c_0, ..., c_N]`.
    pub fn classes(&self) -> &[Polynomial] {
        &self.classes
    }

    /// Normal forms of the classes, when the Gröbner oracle is in use.
    pub fn reduced_classes(&self) -> Option<&[Polynomial]> {
        self.nf.as_ref().map(|_| self.nf_classes.as_slice())
    }

    /// Drops memoized products.
    pub fn clear_memo(&mut self) {
        self.raw_memo.clear();
        self.nf_memo.clear();
    }

    fn raw_product(&mut self, m: &ChernMonomial) -> Polynomial {
        if let Some(p) = self.raw_memo.get(m) {
            return p.clone();
        }
        let p = match m.split_last() {
            None => Polynomial::one(self.flag.nvars()),
            Some((rest, k)) => &self.raw_product(&rest) * &self.classes[k],
        };
        if m.weight() < self.flag.complex_dim() {
            self.raw_memo.insert(m.clone(), p.clone());
        }
        p
    }

    fn nf_product(&mut self, m: &ChernMonomial) -> Polynomial {
        if let Some(p) = self.nf_memo.get(m) {
            return p.clone();
        }
        let p = match m.split_last() {
            None => Polynomial::one(self.flag.nvars()),
            Some((rest, k)) => {
                let prev = self.nf_product(&rest);
                let c = self.nf_classes[k].clone();
                self.nf.as_mut().expect("normal-form oracle").ring().mul(&prev, &c)
            }
        };
        if m.weight() < self.flag.complex_dim() {
            self.nf_memo.insert(m.clone(), p.clone());
        }
        p
    }

    /// The class `c^m` as a polynomial.
    pub fn product(&mut self, m: &ChernMonomial) -> Polynomial {
        self.raw_product(m)
    }

    /// `∫ c^m` by each requested oracle.
    pub fn number_by(&mut self, m: &ChernMonomial) -> Result<(Option<BigInt>, Option<BigInt>)> {
        let n = self.flag.complex_dim();
        if m.weight() != n {
            return Err(Error::DegreeMismatch { expected: n as u32, found: Some(m.weight() as u32) });
        }
        if m.exps.len() > n {
            return Ok((self.weyl.as_ref().map(|_| BigInt::zero()), self.nf.as_ref().map(|_| BigInt::zero())));
        }
        let weyl = match self.weyl.is_some() {
            true => {
                let p = self.raw_product(m);
                Some(to_integer(self.weyl.as_ref().unwrap().integrate(&p)?, m)?)
            }
            false => None,
        };
        let nf = match self.nf.is_some() {
            true => {
                let r = self.nf_product(m);
                Some(to_integer(self.nf.as_mut().unwrap().integrate_reduced(&r)?, m)?)
            }
            false => None,
        };
        Ok((weyl, nf))
    }

    /// `∫ c^m`; with [`Oracle::Both`] the two methods must agree.
    pub fn number(&mut self, m: &ChernMonomial) -> Result<BigInt> {
        match self.number_by(m)? {
            (Some(a), Some(b)) if a != b => Err(Error::Invariant(format!(
                "oracles disagree on {m} for {} {}: weyl {a}, groebner {b}",
                self.flag.name(),
                self.acs
            ))),
            (Some(a), _) | (None, Some(a)) => Ok(a),
            (None, None) => unreachable!("an oracle is always configured"),
        }
    }

    /// The Todd genus `∫ td_N`, over the orientation of the structure itself.
    pub fn todd_genus(&mut self) -> Result<Rational> {
        let td = todd_polynomial(self.flag.complex_dim())?;
        let mut sum = Rational::zero();
        for (m, c) in td.coefficients() {
            let v = self.number(m)?;
            sum += c * Rational::from_integer(v);
        }
        if orientation_sign(self.flag, &self.acs) < 0 {
            sum = -sum;
        }
        Ok(sum)
    }
}

/// One number per monomial, by the chosen oracle.
pub fn chern_number(flag: &FlagManifold, acs: &InvariantACS, m: &ChernMonomial, oracle: Oracle) -> Result<BigInt> {
    ChernEngine::new(flag, acs, oracle, 1)?.number(m)
}

pub fn todd_genus(flag: &FlagManifold, acs: &InvariantACS, oracle: Oracle) -> Result<Rational> {
    ChernEngine::new(flag, acs, oracle, 1)?.todd_genus()
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        let mut s = Rational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            s += bk * Rational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

type CPoly = BTreeMap<ChernMonomial, Rational>;

fn cpoly_mul(a: &CPoly, b: &CPoly, max_weight: usize) -> CPoly {
    let mut out = CPoly::new();
    for (ma, ca) in a {
        let wa = ma.weight();
        for (mb, cb) in b {
            if wa + mb.weight() > max_weight {
                continue;
            }
            let e = out.entry(ma.times(mb)).or_insert_with(Rational::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn cpoly_add_scaled(acc: &mut CPoly, p: &CPoly, s: &Rational) {
    for (m, c) in p {
        *acc.entry(m.clone()).or_insert_with(Rational::zero) += c * s;
    }
    acc.retain(|_, c| !c.is_zero());
}

/// The degree-`n` part of a multiplicative sequence, as a polynomial in Chern classes.
#[derive(Clone, Debug, PartialEq)]
pub struct ToddExpansion {
    degree: usize,
    coefficients: Vec<(ChernMonomial, Rational)>,
}

impl ToddExpansion {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Nonzero coefficients, ordered as [`ChernMonomial::partitions`].
    pub fn coefficients(&self) -> &[(ChernMonomial, Rational)] {
        &self.coefficients
    }

    pub fn coefficient(&self, m: &ChernMonomial) -> Rational {
        self.coefficients.iter().find(|(k, _)| k == m).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    /// Least common denominator of the coefficients.
    pub fn common_denominator(&self) -> BigInt {
        self.coefficients.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
    }

    /// Integer numerators over `den`.
    pub fn numerators(&self, den: &BigInt) -> Vec<(ChernMonomial, BigInt)> {
        self.coefficients
            .iter()
            .map(|(m, c)| (m.clone(), (c * Rational::from_integer(den.clone())).to_integer()))
            .collect()
    }

    pub fn to_text(&self) -> String {
        let den = self.common_denominator();
        let mut s = format!("(1/{den})(");
        for (i, (m, c)) in self.numerators(&den).into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            let a = c.abs();
            if i > 0 {
                s.push(' ');
            }
            s.push_str(sign);
            if i > 0 {
                s.push(' ');
            }
            if a != BigInt::one() {
                s.push_str(&a.to_string());
            }
            s.push_str(&m.to_string());
        }
        s.push(')');
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "coefficients": self.coefficients.iter().map(|(m, c)| json!([m.to_string(), c.to_string()])).collect::<Vec<_>>(),
        })
    }
}

/// The universal Todd polynomial `td_n(c_1, ..., c_n)`.
pub fn todd_polynomial(n: usize) -> Result<ToddExpansion> {
    static CACHE: OnceLock<Mutex<FxHashMap<usize, ToddExpansion>>> = OnceLock::new();
    if n > MAX_TODD_DEGREE {
        return Err(Error::OutOfRange { index: n, max: MAX_TODD_DEGREE });
    }
    let cache = CACHE.get_or_init(|| Mutex::new(FxHashMap::default()));
    if let Some(t) = cache.lock().expect("cache poisoned").get(&n) {
        return Ok(t.clone());
    }
    let t = compute_todd(n);
    cache.lock().expect("cache poisoned").insert(n, t.clone());
    Ok(t)
}

fn compute_todd(n: usize) -> ToddExpansion {
    // td(x) = Σ (-1)^k B_k x^k / k!, then log td(x) = Σ g_k x^k.
    let b = bernoulli_numbers(n);
    let mut fact = BigInt::one();
    let mut t = vec![Rational::one()];
    for (k, bk) in b.iter().enumerate().skip(1) {
        fact *= BigInt::from(k);
        let s = if k % 2 == 1 { -bk.clone() } else { bk.clone() };
        t.push(s / Rational::from_integer(fact.clone()));
    }
    let mut g = vec![Rational::zero(); n + 1];
    for k in 1..=n {
        let mut s = Rational::zero();
        for j in 1..k {
            s += Rational::from_integer(BigInt::from(j)) * &g[j] * &t[k - j];
        }
        g[k] = &t[k] - s / Rational::from_integer(BigInt::from(k));
    }
    // Newton: p_k = Σ_{i<k} (-1)^{i-1} c_i p_{k-i} + (-1)^{k-1} k c_k.
    let mut p: Vec<CPoly> = vec![CPoly::new()];
    for k in 1..=n {
        let mut pk = CPoly::new();
        for i in 1..k {
            let ci: CPoly = [(ChernMonomial::class(i), Rational::one())].into();
            let sign = if i % 2 == 1 { Rational::one() } else { -Rational::one() };
            cpoly_add_scaled(&mut pk, &cpoly_mul(&ci, &p[k - i], n), &sign);
        }
        let last = Rational::from_integer(BigInt::from(if k % 2 == 1 { k as i64 } else { -(k as i64) }));
        cpoly_add_scaled(&mut pk, &[(ChernMonomial::class(k), Rational::one())].into(), &last);
        p.push(pk);
    }
    let mut log = CPoly::new();
    for k in 1..=n {
        cpoly_add_scaled(&mut log, &p[k], &g[k]);
    }
    // exp(log) truncated at weight n.
    let mut total: CPoly = [(ChernMonomial::one(), Rational::one())].into();
    let mut power = total.clone();
    for j in 1..=n {
        power = cpoly_mul(&power, &log, n);
        let inv = Rational::new(BigInt::one(), (1..=j).fold(BigInt::one(), |a, i| a * BigInt::from(i)));
        cpoly_add_scaled(&mut total, &power, &inv);
    }
    let coefficients = ChernMonomial::partitions(n)
        .into_iter()
        .filter_map(|m| total.get(&m).map(|c| (m, c.clone())))
        .collect();
    ToddExpansion { degree: n, coefficients }
}

/// Everything computed about one structure on one manifold.
#[derive(Clone, Debug)]
pub struct ChernReport {
    pub flag: String,
    pub acs: InvariantACS,
    pub integrable: bool,
    pub classes: Vec<Polynomial>,
    pub reduced_classes: Option<Vec<Polynomial>>,
    pub numbers: Vec<(ChernMonomial, BigInt)>,
    pub todd_genus: Option<Rational>,
    pub hrr_residual: Option<Rational>,
}

impl ChernReport {
    /// Computes `monomials` (all partitions when `None`) and, if asked, the Todd genus.
    pub fn compute(
        flag: &FlagManifold,
        acs: &InvariantACS,
        monomials: Option<&[ChernMonomial]>,
        with_todd: bool,
        oracle: Oracle,
        jobs: usize,
    ) -> Result<ChernReport> {
        let mut engine = ChernEngine::new(flag, acs, oracle, jobs)?;
        let all;
        let list = match monomials {
            Some(l) => l,
            None => {
                all = ChernMonomial::partitions(flag.complex_dim());
                &all
            }
        };
        let mut numbers = Vec::with_capacity(list.len());
        for m in list {
            numbers.push((m.clone(), engine.number(m)?));
        }
        let integrable = is_integrable(flag, acs)?;
        let todd = if with_todd { Some(engine.todd_genus()?) } else { None };
        let hrr_residual = match (&todd, integrable) {
            (Some(t), true) => Some(t - Rational::one()),
            _ => None,
        };
        Ok(ChernReport {
            flag: flag.name().to_string(),
            acs: acs.clone(),
            integrable,
            classes: engine.classes()[1..].to_vec(),
            reduced_classes: engine.reduced_classes().map(|c| c[1..].to_vec()),
            numbers,
            todd_genus: todd,
            hrr_residual,
        })
    }

    pub fn number(&self, m: &ChernMonomial) -> Option<&BigInt> {
        self.numbers.iter().find(|(k, _)| k == m).map(|(_, v)| v)
    }

    pub fn to_json(&self, names: &[String]) -> Value {
        let classes = |v: &[Polynomial]| v.iter().map(|p| p.to_text(names)).collect::<Vec<_>>();
        let mut numbers = serde_json::Map::new();
        for (m, v) in &self.numbers {
            numbers.insert(m.to_string(), Value::String(v.to_string()));
        }
        json!({
            "flag": self.flag,
            "acs": self.acs.to_string(),
            "integrable": self.integrable,
            "classes": classes(&self.classes),
            "reduced_classes": self.reduced_classes.as_deref().map(classes),
            "numbers": numbers,
            "todd_genus": self.todd_genus.as_ref().map(|t| t.to_string()),
            "hrr_residual": self.hrr_residual.as_ref().map(|t| t.to_string()),
        })
    }
}
