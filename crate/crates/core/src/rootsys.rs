//! Root systems of types A, B, C, D and G2 in explicit ambient coordinates,
//! and their Weyl groups as exact linear maps.
//!
//! A-type roots live in `n + 1` coordinates, B/C/D roots in `n`. G2 lives in
//! the trace-zero plane of three coordinates: the short roots are the
//! projections of `e_i` and the long roots are `e_i - e_j`. Root coordinates
//! are stored as integers over a system-wide denominator (`scale`), which is
//! 1 except for G2 where it is 3.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;
use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::polyring::{Monomial, Polynomial, Rational, MAX_VARS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G2 => "G",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "G" | "G2" => Ok(Family::G2),
            _ => Err(Error::Unknown { kind: "root system family", name: s.to_string() }),
        }
    }
}

/// A root as an integer vector; the true vector is `coords / scale` of its system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub coords: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    ambient_dim: usize,
    scale: i64,
    /// Positive roots first, then their negatives in the same order.
    roots: Vec<Root>,
    n_positive: usize,
    simple: Vec<usize>,
    coefficients: Vec<Vec<i64>>,
    index: FxHashMap<Vec<i64>, usize>,
}

fn unit(d: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; d];
    v[i] = c;
    v
}

fn combo(d: usize, i: usize, a: i64, j: usize, b: i64) -> Vec<i64> {
    let mut v = vec![0; d];
    v[i] += a;
    v[j] += b;
    v
}

impl RootSystem {
    pub fn build(family: Family, rank: usize) -> Result<RootSystem> {
        let unsupported = || Error::UnsupportedRootSystem { family: family.to_string(), rank };
        let (d, scale, positives, simple_vectors): (usize, i64, Vec<Vec<i64>>, Vec<Vec<i64>>) = match family {
            Family::A => {
                if rank == 0 || rank + 1 > MAX_VARS {
                    return Err(unsupported());
                }
                let d = rank + 1;
                let mut pos = Vec::new();
                for i in 0..d {
                    for j in i + 1..d {
                        pos.push(combo(d, i, 1, j, -1));
                    }
                }
                let simple = (0..rank).map(|i| combo(d, i, 1, i + 1, -1)).collect();
                (d, 1, pos, simple)
            }
            Family::B | Family::C => {
                if !(2..=MAX_VARS).contains(&rank) {
                    return Err(unsupported());
                }
                let d = rank;
                let short = if family == Family::B { 1 } else { 2 };
                let mut pos: Vec<Vec<i64>> = (0..d).map(|i| unit(d, i, short)).collect();
                for i in 0..d {
                    for j in i + 1..d {
                        pos.push(combo(d, i, 1, j, -1));
                    }
                }
                for i in 0..d {
                    for j in i + 1..d {
                        pos.push(combo(d, i, 1, j, 1));
                    }
                }
                let mut simple: Vec<Vec<i64>> = (0..d - 1).map(|i| combo(d, i, 1, i + 1, -1)).collect();
                simple.push(unit(d, d - 1, short));
                (d, 1, pos, simple)
            }
            Family::D => {
                if !(3..=MAX_VARS).contains(&rank) {
                    return Err(unsupported());
                }
                let d = rank;
                let mut pos = Vec::new();
                for i in 0..d {
                    for j in i + 1..d {
                        pos.push(combo(d, i, 1, j, 1));
                    }
                }
                for i in 0..d {
                    for j in i + 1..d {
                        pos.push(combo(d, i, 1, j, -1));
                    }
                }
                let mut simple: Vec<Vec<i64>> = (0..d - 1).map(|i| combo(d, i, 1, i + 1, -1)).collect();
                simple.push(combo(d, d - 2, 1, d - 1, 1));
                (d, 1, pos, simple)
            }
            Family::G2 => {
                if rank != 2 {
                    return Err(unsupported());
                }
                let a1 = vec![3, -3, 0];
                let a2 = vec![-1, 2, -1];
                let lin = |p: i64, q: i64| -> Vec<i64> { (0..3).map(|k| p * a1[k] + q * a2[k]).collect() };
                let pos = vec![lin(1, 0), lin(0, 1), lin(1, 1), lin(1, 2), lin(1, 3), lin(2, 3)];
                (3, 3, pos, vec![a1.clone(), a2.clone()])
            }
        };
        let mut roots: Vec<Root> = positives.iter().map(|c| Root { coords: c.clone() }).collect();
        roots.extend(positives.iter().map(|c| Root { coords: c.iter().map(|x| -x).collect() }));
        let n_positive = positives.len();
        let mut index = FxHashMap::default();
        for (i, r) in roots.iter().enumerate() {
            if index.insert(r.coords.clone(), i).is_some() {
                return Err(Error::Invariant(format!("duplicate root {:?}", r.coords)));
            }
        }
        let simple: Vec<usize> = simple_vectors
            .iter()
            .map(|v| index.get(v).copied().ok_or_else(|| Error::Invariant("simple root missing".into())))
            .collect::<Result<_>>()?;
        let mut rs = RootSystem {
            family,
            rank,
            ambient_dim: d,
            scale,
            roots,
            n_positive,
            simple,
            coefficients: Vec::new(),
            index,
        };
        rs.coefficients = rs.solve_coefficients()?;
        rs.check_invariants()?;
        Ok(rs)
    }

    fn solve_coefficients(&self) -> Result<Vec<Vec<i64>>> {
        let r = self.rank;
        let d = self.ambient_dim;
        // Gram system: G c = (<beta, alpha_j>)_j determines c uniquely.
        let gram: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| self.inner(self.simple[i], self.simple[j])).collect())
            .collect();
        let mut out = Vec::with_capacity(self.roots.len());
        for b in 0..self.roots.len() {
            let rhs: Vec<i64> = (0..r).map(|j| self.inner(b, self.simple[j])).collect();
            let c = solve_rational(&gram, &rhs).ok_or_else(|| Error::Invariant("singular Gram matrix".into()))?;
            let mut ints = Vec::with_capacity(r);
            for x in c {
                if !x.is_integer() {
                    return Err(Error::Invariant(format!("root {b} has non-integral simple coefficients")));
                }
                ints.push(i64::try_from(x.to_integer()).map_err(|_| Error::Invariant("coefficient overflow".into()))?);
            }
            let back: Vec<i64> = (0..d)
                .map(|k| (0..r).map(|i| ints[i] * self.roots[self.simple[i]].coords[k]).sum())
                .collect();
            if back != self.roots[b].coords {
                return Err(Error::Invariant(format!("root {b} is not in the span of the simple roots")));
            }
            out.push(ints);
        }
        Ok(out)
    }

    fn check_invariants(&self) -> Result<()> {
        for i in 0..self.roots.len() {
            let c = &self.coefficients[i];
            let ok = if i < self.n_positive { c.iter().all(|&x| x >= 0) } else { c.iter().all(|&x| x <= 0) };
            if !ok {
                return Err(Error::Invariant(format!("root {i} has mixed-sign simple coefficients")));
            }
        }
        for &s in &self.simple {
            for b in 0..self.roots.len() {
                if self.reflect(s, b).is_none() {
                    return Err(Error::Invariant("root set not closed under simple reflections".into()));
                }
            }
        }
        Ok(())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Common denominator of all root coordinates.
    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn num_positive(&self) -> usize {
        self.n_positive
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.n_positive
    }

    pub fn negative_of(&self, i: usize) -> usize {
        if i < self.n_positive {
            i + self.n_positive
        } else {
            i - self.n_positive
        }
    }

    /// Indices of the simple roots, in Dynkin order.
    pub fn simple_roots(&self) -> &[usize] {
        &self.simple
    }

    /// Coefficients of root `i` on the simple roots.
    pub fn coefficients(&self, i: usize) -> &[i64] {
        &self.coefficients[i]
    }

    pub fn find(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// Standard inner product of the stored integer vectors.
    pub fn inner(&self, i: usize, j: usize) -> i64 {
        dot(&self.roots[i].coords, &self.roots[j].coords)
    }

    pub fn sum(&self, i: usize, j: usize) -> Option<usize> {
        let v: Vec<i64> = self.roots[i].coords.iter().zip(&self.roots[j].coords).map(|(a, b)| a + b).collect();
        self.find(&v)
    }

    /// Index of `s_a(b)`.
    pub fn reflect(&self, a: usize, b: usize) -> Option<usize> {
        let num = 2 * self.inner(a, b);
        let den = self.inner(a, a);
        if num % den != 0 {
            return None;
        }
        let k = num / den;
        let v: Vec<i64> = self.roots[b].coords.iter().zip(&self.roots[a].coords).map(|(x, y)| x - k * y).collect();
        self.find(&v)
    }

    /// The root as a linear form in the ambient coordinates.
    pub fn linear_form(&self, i: usize) -> Polynomial {
        Polynomial::linear_int(&self.roots[i].coords, self.scale)
    }

    /// Product of the linear forms of all positive roots.
    pub fn weyl_denominator(&self) -> Polynomial {
        let mut p = Polynomial::one(self.ambient_dim);
        for i in 0..self.n_positive {
            p = &p * &self.linear_form(i);
        }
        p
    }

    pub fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::G2 => 12,
        }
    }

    /// The reflection in root `i` as a linear map.
    pub fn reflection(&self, i: usize) -> WeylElement {
        let a = &self.roots[i].coords;
        let d = self.ambient_dim;
        let aa = dot(a, a);
        let mut num = vec![0i64; d * d];
        for r in 0..d {
            for c in 0..d {
                num[r * d + c] = if r == c { aa } else { 0 } - 2 * a[r] * a[c];
            }
        }
        WeylElement::from_dense(d, num, aa, 1)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family.to_string(),
            "rank": self.rank,
            "ambient_dim": self.ambient_dim,
            "denominator": self.scale,
            "roots": self.roots.iter().map(|r| r.coords.clone()).collect::<Vec<_>>(),
            "positives": (0..self.n_positive).collect::<Vec<_>>(),
            "simples": self.simple.clone(),
        })
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn solve_rational(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| Rational::from_integer(x.into())).collect();
            r.push(Rational::from_integer(rhs.into()));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot = m[col].clone();
                for (x, y) in m[r][col..].iter_mut().zip(&pivot[col..]) {
                    *x -= y * &f;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// A signed permutation: `w e_i = (-1)^{negate[i]} e_{target[i]}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    n: u8,
    target: [u8; MAX_VARS],
    negate: [bool; MAX_VARS],
}

impl SignedPerm {
    pub fn dim(&self) -> usize {
        self.n as usize
    }

    pub fn target(&self, i: usize) -> usize {
        self.target[i] as usize
    }

    pub fn negates(&self, i: usize) -> bool {
        self.negate[i]
    }

    /// Image of `x^m` under `p(x) -> p(w^T x)`: the new monomial and whether the sign flips.
    #[inline]
    pub fn act_monomial(&self, m: &Monomial) -> (Monomial, bool) {
        let mut out = Monomial::ONE;
        let mut odd = false;
        let e = m.exponents();
        let o = out.exponents_mut();
        for i in 0..self.n as usize {
            o[self.target[i] as usize] = e[i];
            odd ^= self.negate[i] && e[i] & 1 == 1;
        }
        (out, odd)
    }

    fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let mut out = *self;
        for i in 0..self.n as usize {
            let j = other.target[i] as usize;
            out.target[i] = self.target[j];
            out.negate[i] = other.negate[i] ^ self.negate[j];
        }
        out
    }

    fn entry(&self, r: usize, c: usize) -> i64 {
        if self.target[c] as usize == r {
            if self.negate[c] {
                -1
            } else {
                1
            }
        } else {
            0
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Action {
    Perm(SignedPerm),
    /// Row-major integer matrix over a positive common denominator.
    Dense { num: Vec<i64>, den: i64 },
}

#[derive(Clone, Debug)]
pub struct WeylElement {
    dim: usize,
    action: Action,
    length: u32,
}

impl WeylElement {
    fn identity(dim: usize) -> WeylElement {
        let mut p = SignedPerm { n: dim as u8, target: [0; MAX_VARS], negate: [false; MAX_VARS] };
        for i in 0..dim {
            p.target[i] = i as u8;
        }
        WeylElement { dim, action: Action::Perm(p), length: 0 }
    }

    fn from_dense(dim: usize, mut num: Vec<i64>, mut den: i64, length: u32) -> WeylElement {
        let g = num.iter().fold(den, |g, &x| g.gcd(&x));
        if g > 1 {
            num.iter_mut().for_each(|x| *x /= g);
            den /= g;
        }
        if den == 1 {
            let mut p = SignedPerm { n: dim as u8, target: [0; MAX_VARS], negate: [false; MAX_VARS] };
            let mut is_perm = true;
            for c in 0..dim {
                let nz: Vec<usize> = (0..dim).filter(|&r| num[r * dim + c] != 0).collect();
                if nz.len() != 1 || num[nz[0] * dim + c].abs() != 1 {
                    is_perm = false;
                    break;
                }
                p.target[c] = nz[0] as u8;
                p.negate[c] = num[nz[0] * dim + c] < 0;
            }
            if is_perm {
                return WeylElement { dim, action: Action::Perm(p), length };
            }
        }
        WeylElement { dim, action: Action::Dense { num, den }, length }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Word length in the simple reflections that generated the group.
    pub fn length(&self) -> u32 {
        self.length
    }

    /// `(-1)^length`, the determinant of the map.
    pub fn sign(&self) -> i32 {
        if self.length.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn as_signed_perm(&self) -> Option<&SignedPerm> {
        match &self.action {
            Action::Perm(p) => Some(p),
            Action::Dense { .. } => None,
        }
    }

    /// Matrix entry `(r, c)` as numerator and denominator.
    pub fn entry(&self, r: usize, c: usize) -> (i64, i64) {
        match &self.action {
            Action::Perm(p) => (p.entry(r, c), 1),
            Action::Dense { num, den } => (num[r * self.dim + c], *den),
        }
    }

    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        (0..self.dim)
            .map(|r| {
                (0..self.dim)
                    .map(|c| {
                        let (n, d) = self.entry(r, c);
                        Rational::new(n.into(), d.into())
                    })
                    .collect()
            })
            .collect()
    }

    /// `w v` for an integer vector, if the result is integral.
    pub fn apply(&self, v: &[i64]) -> Option<Vec<i64>> {
        match &self.action {
            Action::Perm(p) => {
                let mut out = vec![0; self.dim];
                for i in 0..self.dim {
                    out[p.target[i] as usize] = if p.negate[i] { -v[i] } else { v[i] };
                }
                Some(out)
            }
            Action::Dense { num, den } => {
                let mut out = Vec::with_capacity(self.dim);
                for r in 0..self.dim {
                    let s: i64 = (0..self.dim).map(|c| num[r * self.dim + c] * v[c]).sum();
                    if s % den != 0 {
                        return None;
                    }
                    out.push(s / den);
                }
                Some(out)
            }
        }
    }

    /// `self * other` as linear maps.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let length = self.length + other.length;
        if let (Action::Perm(a), Action::Perm(b)) = (&self.action, &other.action) {
            return WeylElement { dim: self.dim, action: Action::Perm(a.compose(b)), length };
        }
        let d = self.dim;
        let mut num = vec![0i64; d * d];
        let mut den = 1;
        let (_, da) = self.entry(0, 0);
        let (_, db) = other.entry(0, 0);
        den *= da * db;
        for r in 0..d {
            for c in 0..d {
                num[r * d + c] = (0..d).map(|k| self.entry(r, k).0 * other.entry(k, c).0).sum();
            }
        }
        WeylElement::from_dense(d, num, den, length)
    }

    fn cmp_entries(&self, other: &WeylElement) -> Ordering {
        for r in 0..self.dim {
            for c in 0..self.dim {
                let (a, da) = self.entry(r, c);
                let (b, db) = other.entry(r, c);
                let ord = (a as i128 * db as i128).cmp(&(b as i128 * da as i128));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
        }
        Ordering::Equal
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversions(&self, rs: &RootSystem) -> usize {
        (0..rs.num_positive())
            .filter(|&i| {
                let img = self.apply(&rs.root(i).coords).and_then(|v| rs.find(&v));
                img.is_some_and(|j| !rs.is_positive(j))
            })
            .count()
    }

    /// Index of `w(root i)`.
    pub fn apply_root(&self, rs: &RootSystem, i: usize) -> Option<usize> {
        self.apply(&rs.root(i).coords).and_then(|v| rs.find(&v))
    }
}

/// The action `p(x) -> p(w^T x)`, under which the linear form of a root `a`
/// is sent to the linear form of `w a`.
pub fn act(w: &WeylElement, p: &Polynomial) -> Result<Polynomial> {
    if p.nvars() != w.dim {
        return Err(Error::RingMismatch(w.dim, p.nvars()));
    }
    match &w.action {
        Action::Perm(sp) => Ok(p.map_monomials_signed(|m| sp.act_monomial(m))),
        Action::Dense { .. } => {
            let images: Vec<Polynomial> = (0..w.dim)
                .map(|i| Polynomial::linear(&(0..w.dim).map(|j| {
                    let (n, d) = w.entry(j, i);
                    Rational::new(n.into(), d.into())
                }).collect::<Vec<_>>()))
                .collect();
            p.substitute(&images)
        }
    }
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    dim: usize,
    elements: Vec<WeylElement>,
    reflections: Vec<WeylElement>,
}

impl WeylGroup {
    /// The full Weyl group of `rs`.
    pub fn new(rs: &RootSystem) -> WeylGroup {
        let all: Vec<usize> = (0..rs.rank()).collect();
        WeylGroup::generated_by(rs, &all)
    }

    /// The subgroup generated by the reflections in the listed simple roots
    /// (positions in Dynkin order).
    pub fn generated_by(rs: &RootSystem, simple_positions: &[usize]) -> WeylGroup {
        let dim = rs.ambient_dim();
        let gens: Vec<WeylElement> =
            simple_positions.iter().map(|&k| rs.reflection(rs.simple_roots()[k])).collect();
        let mut elements = vec![WeylElement::identity(dim)];
        let mut seen: HashSet<Action> = HashSet::new();
        seen.insert(elements[0].action.clone());
        let mut level_start = 0;
        loop {
            let level_end = elements.len();
            let mut next: Vec<WeylElement> = Vec::new();
            for w in &elements[level_start..level_end] {
                for s in &gens {
                    let sw = s.compose(w);
                    if seen.insert(sw.action.clone()) {
                        next.push(sw);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_by(|a, b| a.cmp_entries(b));
            level_start = level_end;
            elements.extend(next);
        }
        let reflections = (0..rs.num_positive())
            .filter(|&i| {
                rs.coefficients(i)
                    .iter()
                    .enumerate()
                    .all(|(k, &c)| c == 0 || simple_positions.contains(&k))
            })
            .map(|i| rs.reflection(i))
            .collect();
        WeylGroup { dim, elements, reflections }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    /// The reflections contained in the group.
    pub fn reflections(&self) -> &[WeylElement] {
        &self.reflections
    }

    pub fn all_signed_perms(&self) -> bool {
        self.elements.iter().all(|w| w.as_signed_perm().is_some())
    }
}
