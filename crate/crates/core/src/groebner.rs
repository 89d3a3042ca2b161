//! Buchberger's algorithm, normal forms, and quotient rings over ℚ.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::polyring::{Monomial, Polynomial, Rational, MAX_VARS};
use crate::rootsys::{Family, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    GrLex,
    GrevLex,
}

impl FromStr for OrderKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<OrderKind> {
        match s {
            "lex" => Ok(OrderKind::Lex),
            "grlex" => Ok(OrderKind::GrLex),
            "grevlex" => Ok(OrderKind::GrevLex),
            _ => Err(Error::Unknown { kind: "monomial order", name: s.to_string() }),
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Lex => "lex",
            OrderKind::GrLex => "grlex",
            OrderKind::GrevLex => "grevlex",
        })
    }
}

/// A monomial order; `priority[0]` is the largest variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct OrderKey([i32; MAX_VARS + 1]);

impl MonomialOrder {
    /// `x1 > x2 > ... > xn`.
    pub fn new(kind: OrderKind, nvars: usize) -> MonomialOrder {
        MonomialOrder { kind, priority: (0..nvars).collect() }
    }

    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Result<MonomialOrder> {
        let mut check = priority.clone();
        check.sort_unstable();
        if check != (0..priority.len()).collect::<Vec<_>>() {
            return Err(Error::Parse(format!("{priority:?} is not a permutation")));
        }
        Ok(MonomialOrder { kind, priority })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    fn key(&self, m: &Monomial) -> OrderKey {
        let mut k = [0i32; MAX_VARS + 1];
        let e = |i: usize| m.exponent(self.priority[i]) as i32;
        let n = self.priority.len();
        match self.kind {
            OrderKind::Lex => (0..n).for_each(|i| k[i] = e(i)),
            OrderKind::GrLex => {
                k[0] = m.degree() as i32;
                (0..n).for_each(|i| k[i + 1] = e(i));
            }
            OrderKind::GrevLex => {
                k[0] = m.degree() as i32;
                (0..n).for_each(|i| k[i + 1] = -e(n - 1 - i));
            }
        }
        OrderKey(k)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    /// Leading term of a nonzero polynomial.
    pub fn leading_term(&self, p: &Polynomial) -> Option<(Monomial, Rational)> {
        p.terms().max_by(|a, b| self.cmp(&a.0, &b.0))
    }
}

/// Monic generator split into leading monomial and tail.
#[derive(Clone, Debug)]
struct Generator {
    lead: Monomial,
    tail: Vec<(Monomial, Rational)>,
}

type Work = BTreeMap<OrderKey, (Monomial, Rational)>;

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    gens: Vec<Generator>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Generators, sorted by leading monomial, largest first.
    pub fn generators(&self) -> Vec<Polynomial> {
        self.gens
            .iter()
            .map(|g| {
                let terms = std::iter::once((g.lead, Rational::one())).chain(g.tail.iter().cloned());
                Polynomial::from_terms(self.nvars, terms)
            })
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens.iter().map(|g| g.lead).collect()
    }

    fn work_from(&self, p: &Polynomial) -> Work {
        p.terms().map(|(m, c)| (self.order.key(&m), (m, c))).collect()
    }

    fn divisor_of(&self, m: &Monomial) -> Option<(usize, Monomial)> {
        self.gens.iter().enumerate().find_map(|(i, g)| m.quotient(&g.lead).map(|u| (i, u)))
    }

    fn reduce_work(&self, mut work: Work) -> Vec<(Monomial, Rational)> {
        let mut rem = Vec::new();
        while let Some((_, (m, c))) = work.pop_last() {
            match self.divisor_of(&m) {
                Some((i, u)) => {
                    for (t, tc) in &self.gens[i].tail {
                        let mt = t.times(&u);
                        let key = self.order.key(&mt);
                        let entry = work.entry(key).or_insert_with(|| (mt, Rational::zero()));
                        entry.1 -= &c * tc;
                        if entry.1.is_zero() {
                            work.remove(&key);
                        }
                    }
                }
                None => rem.push((m, c)),
            }
        }
        rem
    }

    /// Fully reduced remainder of `p`.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.nvars() != self.nvars {
            return Err(Error::RingMismatch(self.nvars, p.nvars()));
        }
        Ok(Polynomial::from_terms(self.nvars, self.reduce_work(self.work_from(p))))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    fn is_standard(&self, m: &Monomial) -> bool {
        self.gens.iter().all(|g| !g.lead.divides(m))
    }

    /// Monomials outside the leading-term ideal, if there are finitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        for v in 0..self.nvars {
            let pure = self.gens.iter().any(|g| {
                (0..self.nvars).all(|i| (i == v) == (g.lead.exponent(i) > 0))
            });
            if !pure {
                return None;
            }
        }
        let mut seen: HashSet<Monomial> = HashSet::new();
        let mut frontier = vec![Monomial::ONE];
        seen.insert(Monomial::ONE);
        let mut out = Vec::new();
        while let Some(m) = frontier.pop() {
            out.push(m);
            for v in 0..self.nvars {
                let next = m.times(&Monomial::var(v));
                if self.is_standard(&next) && seen.insert(next) {
                    frontier.push(next);
                }
            }
        }
        out.sort_by(|a, b| self.order.cmp(b, a));
        Some(out)
    }

    /// Dimension of the quotient ring as a vector space, if finite.
    pub fn quotient_dimension(&self) -> Option<usize> {
        self.standard_monomials().map(|v| v.len())
    }
}

fn to_generator(order: &MonomialOrder, terms: Vec<(Monomial, Rational)>) -> Option<Generator> {
    let mut terms = terms;
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    let (lead, lc) = terms.first().cloned()?;
    let tail = terms[1..].iter().map(|(m, c)| (*m, c / &lc)).collect();
    Some(Generator { lead, tail })
}

/// Reduced Gröbner basis of the ideal generated by `generators`.
pub fn buchberger(generators: &[Polynomial], order: &MonomialOrder) -> Result<GroebnerBasis> {
    let nvars = order.priority.len();
    if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
        return Err(Error::RingMismatch(nvars, g.nvars()));
    }
    let mut gb = GroebnerBasis { nvars, order: order.clone(), gens: Vec::new(), reduced: false };
    let mut pairs: BTreeSet<(OrderKey, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut inputs: Vec<Polynomial> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    inputs.sort_by(|a, b| {
        let la = order.leading_term(a).unwrap().0;
        let lb = order.leading_term(b).unwrap().0;
        order.cmp(&la, &lb)
    });
    let add = |gb: &mut GroebnerBasis,
               pairs: &mut BTreeSet<(OrderKey, usize, usize)>,
               pending: &mut HashSet<(usize, usize)>,
               g: Generator| {
        let j = gb.gens.len();
        for i in 0..j {
            let l = gb.gens[i].lead.lcm(&g.lead);
            pairs.insert((order.key(&l), i, j));
            pending.insert((i, j));
        }
        gb.gens.push(g);
    };
    for p in inputs {
        let rem = gb.reduce_work(gb.work_from(&p));
        if let Some(g) = to_generator(order, rem) {
            add(&mut gb, &mut pairs, &mut pending, g);
        }
    }
    while let Some((key, i, j)) = pairs.pop_first() {
        pending.remove(&(i, j));
        let (gi, gj) = (&gb.gens[i], &gb.gens[j]);
        if gi.lead.is_coprime(&gj.lead) {
            continue;
        }
        let l = gi.lead.lcm(&gj.lead);
        let chain = (0..gb.gens.len()).any(|k| {
            k != i
                && k != j
                && gb.gens[k].lead.divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let ui = l.quotient(&gi.lead).unwrap();
        let uj = l.quotient(&gj.lead).unwrap();
        let mut work: Work = BTreeMap::new();
        for (t, c) in &gi.tail {
            let m = t.times(&ui);
            let e = work.entry(order.key(&m)).or_insert_with(|| (m, Rational::zero()));
            e.1 += c;
        }
        for (t, c) in &gj.tail {
            let m = t.times(&uj);
            let e = work.entry(order.key(&m)).or_insert_with(|| (m, Rational::zero()));
            e.1 -= c;
        }
        work.retain(|_, v| !v.1.is_zero());
        let _ = key;
        let rem = gb.reduce_work(work);
        if let Some(g) = to_generator(order, rem) {
            add(&mut gb, &mut pairs, &mut pending, g);
        }
    }
    Ok(reduce_basis(gb))
}

fn reduce_basis(gb: GroebnerBasis) -> GroebnerBasis {
    let order = gb.order.clone();
    let mut gens = gb.gens;
    gens.sort_by(|a, b| order.cmp(&a.lead, &b.lead));
    let mut minimal: Vec<Generator> = Vec::new();
    for g in gens {
        if !minimal.iter().any(|h| h.lead.divides(&g.lead)) {
            minimal.push(g);
        }
    }
    let mut out = GroebnerBasis { nvars: gb.nvars, order: order.clone(), gens: Vec::new(), reduced: true };
    for k in 0..minimal.len() {
        let others = GroebnerBasis {
            nvars: gb.nvars,
            order: order.clone(),
            gens: minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, g)| g.clone()).collect(),
            reduced: false,
        };
        let work: Work = minimal[k].tail.iter().map(|(m, c)| (order.key(m), (*m, c.clone()))).collect();
        let mut tail = others.reduce_work(work);
        tail.sort_by(|a, b| order.cmp(&b.0, &a.0));
        out.gens.push(Generator { lead: minimal[k].lead, tail });
    }
    out.gens.sort_by(|a, b| order.cmp(&b.lead, &a.lead));
    out
}

/// Generators of the Borel ideal of the full flag manifold of `rs`:
/// the invariant polynomials of the Weyl group of positive degree.
pub fn borel_ideal(rs: &RootSystem) -> Vec<Polynomial> {
    let n = rs.ambient_dim();
    let power_sum = |k: u32| -> Polynomial {
        Polynomial::from_int_terms(
            n,
            1.into(),
            (0..n).map(|i| {
                let mut e = vec![0u32; n];
                e[i] = k;
                (Monomial::from_exponents(&e).unwrap(), 1.into())
            }),
        )
    };
    match rs.family() {
        Family::A => (1..=n as u32).map(power_sum).collect(),
        Family::B | Family::C => (1..=n as u32).map(|k| power_sum(2 * k)).collect(),
        Family::D => {
            let mut v: Vec<Polynomial> = (1..n as u32).map(|k| power_sum(2 * k)).collect();
            let all = Monomial::from_exponents(&vec![1; n]).unwrap();
            v.push(Polynomial::from_int_terms(n, 1.into(), [(all, 1.into())]));
            v
        }
        Family::G2 => vec![power_sum(1), power_sum(2), power_sum(6)],
    }
}

/// Memoized arithmetic in `ℚ[x] / I` for a frozen basis.
///
/// Normal forms of monomials are cached, which makes repeated
/// multiplication by low-degree elements cheap. Not shared across threads.
pub struct QuotientRing {
    gb: Arc<GroebnerBasis>,
    cache: FxHashMap<Monomial, Rc<Vec<(Monomial, Rational)>>>,
}

impl QuotientRing {
    pub fn new(gb: Arc<GroebnerBasis>) -> QuotientRing {
        QuotientRing { gb, cache: FxHashMap::default() }
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// Number of monomials whose normal form is cached.
    pub fn cached(&self) -> usize {
        self.cache.len()
    }

    /// Normal form of a single monomial.
    pub fn monomial_nf(&mut self, m: Monomial) -> Rc<Vec<(Monomial, Rational)>> {
        if let Some(v) = self.cache.get(&m) {
            return Rc::clone(v);
        }
        let mut stack = vec![m];
        while let Some(&top) = stack.last() {
            if self.cache.contains_key(&top) {
                stack.pop();
                continue;
            }
            match self.gb.divisor_of(&top) {
                None => {
                    self.cache.insert(top, Rc::new(vec![(top, Rational::one())]));
                    stack.pop();
                }
                Some((i, u)) => {
                    let deps: Vec<(Monomial, &Rational)> =
                        self.gb.gens[i].tail.iter().map(|(t, c)| (t.times(&u), c)).collect();
                    let missing: Vec<Monomial> =
                        deps.iter().map(|d| d.0).filter(|d| !self.cache.contains_key(d)).collect();
                    if missing.is_empty() {
                        let mut acc: FxHashMap<Monomial, Rational> = FxHashMap::default();
                        for (d, c) in deps {
                            for (s, sc) in self.cache[&d].iter() {
                                *acc.entry(*s).or_insert_with(Rational::zero) -= c * sc;
                            }
                        }
                        let v: Vec<(Monomial, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                        self.cache.insert(top, Rc::new(v));
                        stack.pop();
                    } else {
                        stack.extend(missing);
                    }
                }
            }
        }
        Rc::clone(&self.cache[&m])
    }

    fn reduce_terms(&mut self, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Polynomial {
        let mut acc: FxHashMap<Monomial, Rational> = FxHashMap::default();
        for (m, c) in terms {
            let nf = self.monomial_nf(m);
            for (s, sc) in nf.iter() {
                *acc.entry(*s).or_insert_with(Rational::zero) += &c * sc;
            }
        }
        Polynomial::from_terms(self.gb.nvars, acc)
    }

    pub fn reduce(&mut self, p: &Polynomial) -> Polynomial {
        self.reduce_terms(p.terms().collect::<Vec<_>>())
    }

    /// Normal form of `a * b`.
    pub fn mul(&mut self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        let prod = a * b;
        self.reduce(&prod)
    }

    /// Normal form of the product of all factors, reducing after each step.
    pub fn product(&mut self, factors: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::one(self.gb.nvars);
        for f in factors {
            let nf = self.reduce(f);
            acc = self.mul(&acc, &nf);
        }
        acc
    }
}
