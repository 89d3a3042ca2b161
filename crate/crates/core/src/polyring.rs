//! Exact multivariate polynomials over the rationals.
//!
//! A polynomial keeps integer coefficients over one common positive
//! denominator, normalized so that no prime divides the denominator and every
//! coefficient at once. Integer polynomials (the common case for Chern
//! classes) therefore never pay for a gcd.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::rootsys::{SignedPerm, WeylGroup};

pub type Rational = BigRational;

/// Largest number of ambient coordinates a polynomial may use.
pub const MAX_VARS: usize = 10;

/// Exponent vector of a monomial. Unused trailing slots are zero.
///
/// The `Ord` implementation is graded lexicographic with `x1 > x2 > ...`;
/// it fixes the canonical printing order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u16; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn var(i: usize) -> Monomial {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Monomial> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables(exps.len()));
        }
        let mut e = [0u16; MAX_VARS];
        for (slot, &x) in e.iter_mut().zip(exps) {
            *slot = u16::try_from(x).map_err(|_| Error::Parse(format!("exponent {x} too large")))?;
        }
        Ok(Monomial(e))
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.0
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut [u16; MAX_VARS] {
        &mut self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / divisor`, if `divisor` divides `self`.
    pub fn quotient(&self, divisor: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(divisor.0) {
            *a = a.checked_sub(b)?;
        }
        Some(Monomial(e))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a = (*a).max(b);
        }
        Monomial(e)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "x^{:?}", &self.0[..last])
    }
}

/// A polynomial in a fixed number of variables with rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    den: BigInt,
    terms: FxHashMap<Monomial, BigInt>,
}

impl Polynomial {
    /// # Panics
    /// If `nvars` exceeds [`MAX_VARS`].
    pub fn zero(nvars: usize) -> Polynomial {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        Polynomial { nvars, den: BigInt::one(), terms: FxHashMap::default() }
    }

    pub fn one(nvars: usize) -> Polynomial {
        Polynomial::constant(nvars, &Rational::one())
    }

    pub fn constant(nvars: usize, c: &Rational) -> Polynomial {
        Polynomial::from_terms(nvars, [(Monomial::ONE, c.clone())])
    }

    pub fn var(nvars: usize, i: usize) -> Polynomial {
        assert!(i < nvars, "variable index {i} out of range");
        Polynomial::from_int_terms(nvars, BigInt::one(), [(Monomial::var(i), BigInt::one())])
    }

    /// The linear form `sum c_i x_i`.
    pub fn linear(coeffs: &[Rational]) -> Polynomial {
        Polynomial::from_terms(
            coeffs.len(),
            coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(i), c.clone())),
        )
    }

    /// The linear form `(sum c_i x_i) / den` with integer data.
    pub fn linear_int(coeffs: &[i64], den: i64) -> Polynomial {
        assert!(den != 0);
        let (coeffs, den): (Vec<i64>, i64) =
            if den < 0 { (coeffs.iter().map(|c| -c).collect(), -den) } else { (coeffs.to_vec(), den) };
        Polynomial::from_int_terms(
            coeffs.len(),
            BigInt::from(den),
            coeffs.iter().enumerate().map(|(i, &c)| (Monomial::var(i), BigInt::from(c))),
        )
    }

    /// Builds `(sum c_m x^m) / den`. Repeated monomials are summed.
    pub fn from_int_terms(
        nvars: usize,
        den: BigInt,
        terms: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Polynomial {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        assert!(den.is_positive(), "denominator must be positive");
        let mut map: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        for (m, c) in terms {
            debug_assert!(m.0[nvars..].iter().all(|&e| e == 0));
            *map.entry(m).or_default() += c;
        }
        Polynomial { nvars, den, terms: map }.normalized()
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Polynomial {
        let terms: Vec<(Monomial, Rational)> = terms.into_iter().collect();
        let den = terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let ints: Vec<(Monomial, BigInt)> =
            terms.into_iter().map(|(m, c)| (m, c.numer() * (&den / c.denom()))).collect();
        Polynomial::from_int_terms(nvars, den, ints)
    }

    fn normalized(mut self) -> Polynomial {
        self.terms.retain(|_, c| !c.is_zero());
        if self.terms.is_empty() {
            self.den = BigInt::one();
            return self;
        }
        if !self.den.is_one() {
            let mut g = self.den.clone();
            for c in self.terms.values() {
                g = g.gcd(c);
                if g.is_one() {
                    return self;
                }
            }
            for c in self.terms.values_mut() {
                *c /= &g;
            }
            self.den /= &g;
        }
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Integer numerators; the true coefficient is numerator / [`Self::denominator`].
    pub fn int_terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        match self.terms.get(m) {
            Some(c) => Rational::new(c.clone(), self.den.clone()),
            None => Rational::zero(),
        }
    }

    /// Terms in unspecified order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, Rational)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, Rational::new(c.clone(), self.den.clone())))
    }

    /// Terms in canonical order: graded lexicographic, largest first.
    pub fn sorted_terms(&self) -> Vec<(Monomial, Rational)> {
        let mut v: Vec<(Monomial, Rational)> = self.terms().collect();
        v.sort_by_key(|t| std::cmp::Reverse(t.0));
        v
    }

    /// Largest total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn homogeneous_component(&self, degree: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            den: self.den.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == degree).map(|(m, c)| (*m, c.clone())).collect(),
        }
        .normalized()
    }

    /// The constant term, if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).map(|c| Rational::new(c.clone(), self.den.clone())),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let num = c.numer();
        let mut den = &self.den * c.denom();
        let mut terms: FxHashMap<Monomial, BigInt> =
            self.terms.iter().map(|(m, x)| (*m, x * num)).collect();
        if den.is_negative() {
            den = -den;
            terms.values_mut().for_each(|x| *x = -&*x);
        }
        Polynomial { nvars: self.nvars, den, terms }.normalized()
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Product with every term of total degree above `max_degree` dropped.
    pub fn mul_truncated(&self, other: &Polynomial, max_degree: u32) -> Polynomial {
        mul_impl(self, other, Some(max_degree))
    }

    /// `self += other`.
    pub fn add_assign(&mut self, other: &Polynomial) {
        assert_eq!(self.nvars, other.nvars, "ring mismatch");
        if self.den == other.den {
            for (m, c) in &other.terms {
                *self.terms.entry(*m).or_default() += c;
            }
            let p = std::mem::replace(self, Polynomial::zero(other.nvars));
            *self = p.normalized();
        } else {
            *self = &*self + other;
        }
    }

    /// Applies a monomial bijection that may flip signs: each term `c x^m`
    /// becomes `(+/-) c x^{f(m)}`, where `f` returns the image and whether to negate.
    pub fn map_monomials_signed(&self, f: impl Fn(&Monomial) -> (Monomial, bool)) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let (image, negate) = f(m);
                (image, if negate { -c } else { c.clone() })
            })
            .collect::<Vec<_>>();
        Polynomial::from_int_terms(self.nvars, self.den.clone(), terms)
    }

    /// Substitutes `x_i -> images[i]`; all images share one ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::RingMismatch(self.nvars, images.len()));
        }
        let target = images.first().map_or(self.nvars, Polynomial::nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::RingMismatch(target, bad.nvars));
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(target)]; self.nvars];
        let mut out = Polynomial::zero(target);
        for (m, c) in self.sorted_terms() {
            let mut t = Polynomial::constant(target, &c);
            for (i, img) in images.iter().enumerate() {
                let e = m.exponent(i) as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * img;
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e];
                }
            }
            out.add_assign(&t);
        }
        Ok(out)
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }

    /// Canonical text form using the given variable names.
    pub fn to_text(&self, names: &[String]) -> String {
        assert!(names.len() >= self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, name) in names.iter().enumerate().take(self.nvars) {
                match m.exponent(i) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                s.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    s.push_str(&a.to_string());
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }

    /// JSON form: `[[exponents], "numerator", "denominator"]` triples in canonical order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.sorted_terms()
                .into_iter()
                .map(|(m, c)| {
                    let exps: Vec<Value> = (0..self.nvars).map(|i| Value::from(m.exponent(i))).collect();
                    Value::Array(vec![
                        Value::Array(exps),
                        Value::String(c.numer().to_string()),
                        Value::String(c.denom().to_string()),
                    ])
                })
                .collect(),
        )
    }

    pub fn from_json(nvars: usize, v: &Value) -> Result<Polynomial> {
        if nvars > MAX_VARS {
            return Err(Error::TooManyVariables(nvars));
        }
        let bad = || Error::Parse("malformed polynomial JSON".to_string());
        let mut terms = Vec::new();
        for t in v.as_array().ok_or_else(bad)? {
            let t = t.as_array().ok_or_else(bad)?;
            if t.len() != 3 {
                return Err(bad());
            }
            let exps: Vec<u32> = t[0]
                .as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|e| e.as_u64().and_then(|e| u32::try_from(e).ok()).ok_or_else(bad))
                .collect::<Result<_>>()?;
            if exps.len() != nvars {
                return Err(Error::RingMismatch(nvars, exps.len()));
            }
            let num: BigInt = t[1].as_str().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let den: BigInt = t[2].as_str().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            terms.push((Monomial::from_exponents(&exps)?, Rational::new(num, den)));
        }
        Ok(Polynomial::from_terms(nvars, terms))
    }

    /// Parses expressions such as `3*x^2*y - (x+y)^3/2`.
    pub fn parse(text: &str, names: &[String]) -> Result<Polynomial> {
        let mut p = Parser { chars: text.chars().collect(), pos: 0, names };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(Error::Parse(format!("unexpected '{}' at offset {}", p.chars[p.pos], p.pos)));
        }
        Ok(out)
    }

    pub(crate) fn raw_terms(&self) -> &FxHashMap<Monomial, BigInt> {
        &self.terms
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&Polynomial::default_names(self.nvars)))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&Polynomial::default_names(self.nvars)))
    }
}

fn mul_impl(a: &Polynomial, b: &Polynomial, max_degree: Option<u32>) -> Polynomial {
    assert_eq!(a.nvars, b.nvars, "ring mismatch");
    let (small, big) = if a.terms.len() <= b.terms.len() { (a, b) } else { (b, a) };
    let mut out: FxHashMap<Monomial, BigInt> = FxHashMap::default();
    out.reserve(big.terms.len());
    for (ms, cs) in &small.terms {
        for (mb, cb) in &big.terms {
            let m = ms.times(mb);
            if max_degree.is_some_and(|d| m.degree() > d) {
                continue;
            }
            let prod = cs * cb;
            match out.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += prod,
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(prod);
                }
            }
        }
    }
    Polynomial { nvars: a.nvars, den: &a.den * &b.den, terms: out }.normalized()
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "ring mismatch");
        let den = self.den.lcm(&other.den);
        let fa = &den / &self.den;
        let fb = &den / &other.den;
        let mut terms: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        terms.reserve(self.terms.len() + other.terms.len());
        for (m, c) in &self.terms {
            terms.insert(*m, if fa.is_one() { c.clone() } else { c * &fa });
        }
        for (m, c) in &other.terms {
            let v = if fb.is_one() { c.clone() } else { c * &fb };
            *terms.entry(*m).or_default() += v;
        }
        Polynomial { nvars: self.nvars, den, terms }.normalized()
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            den: self.den.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, other: &Polynomial) -> Polynomial {
        self + &(-other)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, other: &Polynomial) -> Polynomial {
        mul_impl(self, other, None)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, other: Polynomial) -> Polynomial {
                (&self).$f(&other)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, other: &Polynomial) -> Polynomial {
                (&self).$f(other)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

/// Elementary symmetric polynomials `e_0, ..., e_N` of the given forms.
pub fn elementary_symmetric_all(forms: &[Polynomial], nvars: usize) -> Result<Vec<Polynomial>> {
    if let Some(f) = forms.iter().find(|f| f.nvars() != nvars) {
        return Err(Error::RingMismatch(nvars, f.nvars()));
    }
    let mut e = vec![Polynomial::one(nvars)];
    for f in forms {
        e.push(Polynomial::zero(nvars));
        for k in (1..e.len()).rev() {
            let step = &e[k - 1] * f;
            e[k].add_assign(&step);
        }
    }
    Ok(e)
}

/// The degree-`k` elementary symmetric polynomial in `forms`; `e_0 = 1`.
pub fn elementary_symmetric_in(forms: &[Polynomial], k: usize, nvars: usize) -> Result<Polynomial> {
    if k > forms.len() {
        return Err(Error::OutOfRange { index: k, max: forms.len() });
    }
    let mut all = elementary_symmetric_all(forms, nvars)?;
    Ok(all.swap_remove(k))
}

/// Exact quotient `p / q`, or the division remainder as an error.
pub fn exact_divide(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    if p.nvars != q.nvars {
        return Err(Error::RingMismatch(p.nvars, q.nvars));
    }
    if q.is_zero() {
        return Err(Error::NotDivisible(Box::new(p.clone())));
    }
    let q_terms = q.sorted_terms();
    let (lead_m, lead_c) = q_terms[0].clone();
    let mut rest: BTreeMap<Monomial, Rational> = p.terms().collect();
    let mut quotient = Vec::new();
    let mut remainder = Vec::new();
    while let Some((m, c)) = rest.pop_last() {
        match m.quotient(&lead_m) {
            Some(u) => {
                let f = &c / &lead_c;
                for (mq, cq) in &q_terms[1..] {
                    let key = mq.times(&u);
                    let slot = rest.entry(key).or_insert_with(Rational::zero);
                    *slot -= &f * cq;
                    if slot.is_zero() {
                        rest.remove(&key);
                    }
                }
                quotient.push((u, f));
            }
            None => remainder.push((m, c)),
        }
    }
    if remainder.is_empty() {
        Ok(Polynomial::from_terms(p.nvars, quotient))
    } else {
        Err(Error::NotDivisible(Box::new(Polynomial::from_terms(p.nvars, remainder))))
    }
}

/// `sum_w sign(w) act(w, p)` over the group.
pub fn antisymmetrize(p: &Polynomial, group: &WeylGroup) -> Result<Polynomial> {
    antisymmetrize_product(p, &Polynomial::one(p.nvars()), group, 1)
}

/// Antisymmetrization of the product `a * b`, split over `jobs` workers.
///
/// For groups of signed permutations the product is never formed in full:
/// a monomial fixed by a reflection has a vanishing orbit sum, so only the
/// remaining products are kept, and those are collapsed to one
/// representative per orbit before the group sum is taken. Any split into
/// chunks gives the same exact result.
pub fn antisymmetrize_product(a: &Polynomial, b: &Polynomial, group: &WeylGroup, jobs: usize) -> Result<Polynomial> {
    let n = group.dim();
    if a.nvars() != n || b.nvars() != n {
        return Err(Error::RingMismatch(n, if a.nvars() != n { a.nvars() } else { b.nvars() }));
    }
    let jobs = jobs.max(1);
    let perms: Option<Vec<(SignedPerm, i32)>> = group
        .elements()
        .iter()
        .map(|w| w.as_signed_perm().map(|p| (*p, w.sign())))
        .collect();
    let reflections: Option<Vec<SignedPerm>> =
        group.reflections().iter().map(|w| w.as_signed_perm().copied()).collect();
    match (perms, reflections) {
        (Some(perms), Some(reflections)) => Ok(antisymmetrize_signed(a, b, &perms, &reflections, jobs)),
        _ => {
            let f = a * b;
            let chunks = split(group.elements().len(), jobs);
            let partial = |range: std::ops::Range<usize>| -> Result<Polynomial> {
                let mut acc = Polynomial::zero(n);
                for w in &group.elements()[range] {
                    let img = crate::rootsys::act(w, &f)?;
                    acc.add_assign(&if w.sign() < 0 { -img } else { img });
                }
                Ok(acc)
            };
            let parts: Vec<Result<Polynomial>> = if jobs == 1 {
                chunks.into_iter().map(partial).collect()
            } else {
                std::thread::scope(|s| {
                    let handles: Vec<_> = chunks.into_iter().map(|r| s.spawn(move || partial(r))).collect();
                    handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
                })
            };
            let mut out = Polynomial::zero(n);
            for p in parts {
                out.add_assign(&p?);
            }
            Ok(out)
        }
    }
}

fn split(len: usize, parts: usize) -> Vec<std::ops::Range<usize>> {
    let parts = parts.clamp(1, len.max(1));
    let step = len.div_ceil(parts);
    (0..parts).map(|k| (k * step).min(len)..((k + 1) * step).min(len)).filter(|r| !r.is_empty()).collect()
}

struct Support {
    perm: SignedPerm,
    moved: Vec<usize>,
}

impl Support {
    fn new(perm: SignedPerm) -> Support {
        let moved = (0..perm.dim()).filter(|&i| perm.target(i) != i || perm.negates(i)).collect();
        Support { perm, moved }
    }

    /// Whether `x^m` is sent to itself with coefficient +1.
    #[inline]
    fn fixes(&self, m: &Monomial) -> bool {
        let e = m.exponents();
        let mut odd = false;
        for &i in &self.moved {
            if e[self.perm.target(i)] != e[i] {
                return false;
            }
            odd ^= self.perm.negates(i) && e[i] & 1 == 1;
        }
        !odd
    }
}

fn antisymmetrize_signed(
    a: &Polynomial,
    b: &Polynomial,
    perms: &[(SignedPerm, i32)],
    reflections: &[SignedPerm],
    jobs: usize,
) -> Polynomial {
    let n = a.nvars();
    let supports: Vec<Support> = reflections.iter().map(|r| Support::new(*r)).collect();
    let (outer, inner) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let outer_terms: Vec<(&Monomial, &BigInt)> = outer.raw_terms().iter().collect();
    let inner_terms: Vec<(&Monomial, &BigInt)> = inner.raw_terms().iter().collect();
    let survivors_of = |range: std::ops::Range<usize>| -> FxHashMap<Monomial, BigInt> {
        let mut out: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        for (mo, co) in &outer_terms[range] {
            for (mi, ci) in &inner_terms {
                let m = mo.times(mi);
                if supports.iter().any(|s| s.fixes(&m)) {
                    continue;
                }
                *out.entry(m).or_default() += *co * *ci;
            }
        }
        out
    };
    let chunks = split(outer_terms.len(), jobs);
    let parts: Vec<FxHashMap<Monomial, BigInt>> = if jobs == 1 {
        chunks.into_iter().map(survivors_of).collect()
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = chunks.into_iter().map(|r| s.spawn(|| survivors_of(r))).collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        })
    };
    let mut survivors: FxHashMap<Monomial, BigInt> = FxHashMap::default();
    for part in parts {
        for (m, c) in part {
            *survivors.entry(m).or_default() += c;
        }
    }
    let mut sorted: Vec<(Monomial, BigInt)> = survivors.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    sorted.sort_by_key(|t| std::cmp::Reverse(t.0));

    // antisym(x^{m'}) = factor * antisym(x^m) whenever w x^m = +/- x^{m'}.
    struct Orbit {
        rep: Monomial,
        coeff: BigInt,
        vanishes: bool,
    }
    let mut orbits: Vec<Orbit> = Vec::new();
    let mut assigned: FxHashMap<Monomial, (usize, i32)> = FxHashMap::default();
    for (m, c) in sorted {
        if let Some(&(k, f)) = assigned.get(&m) {
            if f > 0 {
                orbits[k].coeff += c;
            } else {
                orbits[k].coeff -= c;
            }
            continue;
        }
        let k = orbits.len();
        let mut vanishes = false;
        for (p, sign) in perms {
            let (img, odd) = p.act_monomial(&m);
            let f = if odd { -sign } else { *sign };
            match assigned.get(&img) {
                Some(&(_, g)) if g != f => vanishes = true,
                Some(_) => {}
                None => {
                    assigned.insert(img, (k, f));
                }
            }
        }
        orbits.push(Orbit { rep: m, coeff: c, vanishes });
    }
    let mut out: FxHashMap<Monomial, BigInt> = FxHashMap::default();
    for o in orbits.iter().filter(|o| !o.vanishes && !o.coeff.is_zero()) {
        for (p, sign) in perms {
            let (img, odd) = p.act_monomial(&o.rep);
            let neg = odd ^ (*sign < 0);
            let slot = out.entry(img).or_default();
            if neg {
                *slot -= &o.coeff;
            } else {
                *slot += &o.coeff;
            }
        }
    }
    Polynomial::from_int_terms(n, a.denominator() * b.denominator(), out)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(Error::Parse("division by zero".to_string()));
                    }
                    acc = acc.scale(&Rational::new(BigInt::one(), d));
                }
                Some(c) if c.is_alphabetic() || c == '(' => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| Error::Parse("bad exponent".to_string()))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected an integer at offset {start}")));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::Parse(format!("bad integer '{s}'")))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse(format!("expected ')' at offset {}", self.pos)));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Polynomial::constant(self.nvars(), &Rational::from_integer(n)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.names.iter().position(|n| *n == name) {
                    Some(i) => Ok(Polynomial::var(self.nvars(), i)),
                    None => Err(Error::Parse(format!("unknown variable '{name}'"))),
                }
            }
            Some(c) => Err(Error::Parse(format!("unexpected '{c}' at offset {}", self.pos))),
            None => Err(Error::Parse("unexpected end of input".to_string())),
        }
    }
}
