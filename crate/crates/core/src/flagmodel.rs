//! Generalized flag manifolds `G/K` built from a root system and a subset
//! `Θ` of simple roots.
//!
//! The roots spanned by `Θ` are the roots of `K`; the remaining
//! (complementary) roots index the tangent space. Complementary roots with
//! the same restriction to the centre of `K` (the same T-root) span one
//! irreducible isotropy summand, and an invariant almost complex structure
//! is a choice of sign for every positive T-root.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::polyring::{Polynomial, Rational};
use crate::rootsys::{Family, RootSystem, WeylGroup};

/// Largest number of positive T-roots for which structures are enumerated.
pub const MAX_SUMMANDS: usize = 20;

#[derive(Clone, Debug)]
pub struct IsotropySummand {
    /// Coefficients of the T-root on the simple roots outside `Θ`.
    pub label: Vec<i64>,
    /// The T-root: projection of the summand's roots orthogonally to `Θ`.
    pub t_root: Vec<Rational>,
    /// Positive complementary roots in the summand.
    pub roots: Vec<usize>,
}

impl IsotropySummand {
    pub fn dim_complex(&self) -> usize {
        self.roots.len()
    }
}

#[derive(Debug)]
pub struct FlagManifold {
    name: String,
    rs: Arc<RootSystem>,
    theta: Vec<usize>,
    k_roots: Vec<usize>,
    k_positive: Vec<usize>,
    complementary_pos: Vec<usize>,
    summands: Vec<IsotropySummand>,
    /// For every root: its summand and +1/-1 for the positive/negative T-root.
    summand_of: Vec<Option<(usize, i8)>>,
    weyl: OnceLock<Arc<WeylGroup>>,
    weyl_k: OnceLock<Arc<WeylGroup>>,
}

impl FlagManifold {
    /// `theta` lists positions of simple roots (0-based, Dynkin order) kept in `K`.
    pub fn new(rs: Arc<RootSystem>, theta: &[usize]) -> Result<FlagManifold> {
        let mut sorted: Vec<usize> = theta.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != theta.len() {
            return Err(Error::InvalidTheta(format!("{theta:?} has repeated entries")));
        }
        if let Some(&bad) = sorted.iter().find(|&&k| k >= rs.rank()) {
            return Err(Error::InvalidTheta(format!("simple root {} does not exist in rank {}", bad + 1, rs.rank())));
        }
        let outside: Vec<usize> = (0..rs.rank()).filter(|k| !sorted.contains(k)).collect();
        let n_roots = rs.roots().len();
        let label_of = |i: usize| -> Vec<i64> { outside.iter().map(|&k| rs.coefficients(i)[k]).collect() };

        let k_roots: Vec<usize> = (0..n_roots).filter(|&i| label_of(i).iter().all(|&c| c == 0)).collect();
        let k_positive: Vec<usize> = k_roots.iter().copied().filter(|&i| rs.is_positive(i)).collect();
        let complementary_pos: Vec<usize> =
            (0..rs.num_positive()).filter(|&i| label_of(i).iter().any(|&c| c != 0)).collect();

        let mut summands: Vec<IsotropySummand> = Vec::new();
        for &i in &complementary_pos {
            let label = label_of(i);
            match summands.iter_mut().find(|s| s.label == label) {
                Some(s) => s.roots.push(i),
                None => summands.push(IsotropySummand { label, t_root: Vec::new(), roots: vec![i] }),
            }
        }
        let mut summand_of = vec![None; n_roots];
        for (k, s) in summands.iter().enumerate() {
            for &i in &s.roots {
                summand_of[i] = Some((k, 1));
                summand_of[rs.negative_of(i)] = Some((k, -1));
            }
        }
        let mut flag = FlagManifold {
            name: String::new(),
            rs,
            theta: sorted,
            k_roots,
            k_positive,
            complementary_pos,
            summands,
            summand_of,
            weyl: OnceLock::new(),
            weyl_k: OnceLock::new(),
        };
        for k in 0..flag.summands.len() {
            let t = flag.project(flag.summands[k].roots[0]);
            for &i in &flag.summands[k].roots {
                if flag.project(i) != t {
                    return Err(Error::Invariant("summand roots have different T-roots".into()));
                }
            }
            flag.summands[k].t_root = t;
        }
        flag.name = flag.default_name();
        Ok(flag)
    }

    fn default_name(&self) -> String {
        let keep: Vec<String> = self.theta.iter().map(|k| (k + 1).to_string()).collect();
        format!("{}{}[keep={}]", self.rs.family(), self.rs.rank(), keep.join(","))
    }

    /// Orthogonal projection of root `i` onto the complement of `span(Θ)`,
    /// in true (not denominator-cleared) coordinates.
    fn project(&self, i: usize) -> Vec<Rational> {
        let rs = &self.rs;
        let scale = Rational::from_integer(rs.scale().into());
        let th: Vec<usize> = self.theta.iter().map(|&k| rs.simple_roots()[k]).collect();
        let m = th.len();
        let mut v: Vec<Rational> =
            rs.root(i).coords.iter().map(|&c| Rational::from_integer(c.into()) / &scale).collect();
        if m == 0 {
            return v;
        }
        // Solve G c = (<alpha, theta_j>) by Gaussian elimination.
        let mut a: Vec<Vec<Rational>> = (0..m)
            .map(|r| {
                let mut row: Vec<Rational> =
                    (0..m).map(|c| Rational::from_integer(rs.inner(th[r], th[c]).into())).collect();
                row.push(Rational::from_integer(rs.inner(i, th[r]).into()));
                row
            })
            .collect();
        for col in 0..m {
            let piv = (col..m).find(|&r| !a[r][col].is_zero()).expect("simple roots are independent");
            a.swap(col, piv);
            let p = a[col][col].clone();
            for x in a[col].iter_mut() {
                *x = &*x / &p;
            }
            for r in 0..m {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let pivot = a[col].clone();
                    for (x, y) in a[r][col..].iter_mut().zip(&pivot[col..]) {
                        *x -= y * &f;
                    }
                }
            }
        }
        for (j, row) in a.iter().enumerate() {
            let c = &row[m];
            for (x, &t) in v.iter_mut().zip(&rs.root(th[j]).coords) {
                *x -= c * Rational::from_integer(t.into()) / &scale;
            }
        }
        v
    }

    pub fn with_name(mut self, name: impl Into<String>) -> FlagManifold {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> Arc<RootSystem> {
        Arc::clone(&self.rs)
    }

    pub fn nvars(&self) -> usize {
        self.rs.ambient_dim()
    }

    /// Positions of the simple roots in `Θ`.
    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    pub fn k_roots(&self) -> &[usize] {
        &self.k_roots
    }

    pub fn k_positive(&self) -> &[usize] {
        &self.k_positive
    }

    pub fn complementary_positive(&self) -> &[usize] {
        &self.complementary_pos
    }

    pub fn complex_dim(&self) -> usize {
        self.complementary_pos.len()
    }

    pub fn summands(&self) -> &[IsotropySummand] {
        &self.summands
    }

    pub fn num_summands(&self) -> usize {
        self.summands.len()
    }

    /// Summand of root `i` with +1 or -1 for the positive or negative T-root;
    /// `None` for roots of `K`.
    pub fn summand_of(&self, i: usize) -> Option<(usize, i8)> {
        self.summand_of[i]
    }

    pub fn weyl(&self) -> Arc<WeylGroup> {
        Arc::clone(self.weyl.get_or_init(|| Arc::new(WeylGroup::new(&self.rs))))
    }

    pub fn weyl_k(&self) -> Arc<WeylGroup> {
        Arc::clone(self.weyl_k.get_or_init(|| Arc::new(WeylGroup::generated_by(&self.rs, &self.theta))))
    }

    pub fn weyl_order(&self) -> u64 {
        self.rs.weyl_order()
    }

    pub fn weyl_k_order(&self) -> u64 {
        self.weyl_k().len() as u64
    }

    /// `|W| / |W_K|`.
    pub fn euler_characteristic(&self) -> u64 {
        self.weyl_order() / self.weyl_k_order()
    }

    /// Product of the linear forms of the positive roots of `K`.
    pub fn k_denominator(&self) -> Polynomial {
        let mut p = Polynomial::one(self.nvars());
        for &i in &self.k_positive {
            p = &p * &self.rs.linear_form(i);
        }
        p
    }

    /// Sign `ε_α` of root `i` under `acs`; `None` for roots of `K`.
    pub fn root_sign(&self, acs: &InvariantACS, i: usize) -> Option<i8> {
        self.summand_of[i].map(|(k, s)| s * acs.signs[k])
    }

    fn check_acs(&self, acs: &InvariantACS) -> Result<()> {
        if acs.signs.len() != self.summands.len() {
            return Err(Error::SignLength { expected: self.summands.len(), found: acs.signs.len() });
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let rs = &self.rs;
        json!({
            "name": self.name,
            "family": rs.family().to_string(),
            "rank": rs.rank(),
            "theta": self.theta.iter().map(|k| k + 1).collect::<Vec<_>>(),
            "complex_dim": self.complex_dim(),
            "euler_characteristic": self.euler_characteristic(),
            "summands": self.summands.iter().map(|s| json!({
                "label": s.label,
                "t_root": s.t_root.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "dim_complex": s.dim_complex(),
                "roots": s.roots.iter().map(|&i| rs.linear_form(i).to_string()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Signs on the positive T-roots, in summand order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantACS {
    signs: Vec<i8>,
}

impl InvariantACS {
    pub fn new(signs: Vec<i8>) -> Result<InvariantACS> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Parse("signs must be +1 or -1".into()));
        }
        Ok(InvariantACS { signs })
    }

    pub fn all_plus(s: usize) -> InvariantACS {
        InvariantACS { signs: vec![1; s] }
    }

    /// Bit `k` of `mask` set means summand `k` carries `-`.
    pub fn from_mask(s: usize, mask: u64) -> InvariantACS {
        InvariantACS { signs: (0..s).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).collect() }
    }

    pub fn mask(&self) -> u64 {
        self.signs.iter().enumerate().filter(|(_, &s)| s < 0).map(|(k, _)| 1u64 << k).sum()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn conjugate(&self) -> InvariantACS {
        InvariantACS { signs: self.signs.iter().map(|s| -s).collect() }
    }
}

impl fmt::Display for InvariantACS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self.signs.iter().map(|&x| if x > 0 { "+" } else { "-" }).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for InvariantACS {
    type Err = Error;
    /// Accepts `+,+,-`, `(+,+,-)` or `++-`.
    fn from_str(s: &str) -> Result<InvariantACS> {
        let signs = s
            .chars()
            .filter(|c| !matches!(c, '(' | ')' | ',' | ' '))
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(Error::Parse(format!("bad sign '{c}' in '{s}'"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        if signs.is_empty() {
            return Err(Error::Parse("empty sign vector".into()));
        }
        Ok(InvariantACS { signs })
    }
}

/// All sign vectors; with `up_to_conjugation`, only those whose first sign is `+`.
pub fn enumerate_acs(flag: &FlagManifold, up_to_conjugation: bool) -> Result<Vec<InvariantACS>> {
    let s = flag.num_summands();
    if s > MAX_SUMMANDS {
        return Err(Error::TooManySummands(s));
    }
    let step = if up_to_conjugation { 2 } else { 1 };
    Ok((0..1u64 << s).step_by(step).map(|m| InvariantACS::from_mask(s, m)).collect())
}

/// Whether `⟨Θ⟩` together with the roots of sign `+` is closed under addition.
pub fn is_integrable(flag: &FlagManifold, acs: &InvariantACS) -> Result<bool> {
    flag.check_acs(acs)?;
    let rs = flag.root_system();
    let n = rs.roots().len();
    let in_set: Vec<bool> = (0..n).map(|i| flag.root_sign(acs, i).is_none_or(|s| s > 0)).collect();
    for a in 0..n {
        if !in_set[a] {
            continue;
        }
        for b in 0..n {
            if in_set[b] {
                if let Some(c) = rs.sum(a, b) {
                    if !in_set[c] {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Whether some Weyl chamber makes every root of sign `+` positive.
pub fn admits_positive_order(flag: &FlagManifold, acs: &InvariantACS) -> Result<bool> {
    flag.check_acs(acs)?;
    let rs = flag.root_system();
    let plus: Vec<usize> = (0..rs.roots().len()).filter(|&i| flag.root_sign(acs, i) == Some(1)).collect();
    let w = flag.weyl();
    Ok(w.elements().iter().any(|e| {
        plus.iter().all(|&i| e.apply_root(rs, i).is_some_and(|j| rs.is_positive(j)))
    }))
}

#[derive(Clone, Debug)]
pub struct AcsClass {
    pub representative: InvariantACS,
    /// Members whose first sign is `+`, in increasing mask order.
    pub members: Vec<InvariantACS>,
    pub integrable: bool,
}

impl AcsClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Signed permutations of the summands induced by Weyl group elements that
/// map the roots of `K` onto themselves.
pub fn summand_symmetries(flag: &FlagManifold) -> Vec<Vec<(usize, i8)>> {
    let rs = flag.root_system();
    let theta_roots: Vec<usize> = flag.theta().iter().map(|&k| rs.simple_roots()[k]).collect();
    let w = flag.weyl();
    let mut seen: BTreeSet<Vec<(usize, i8)>> = BTreeSet::new();
    for e in w.elements() {
        let stabilizes = theta_roots
            .iter()
            .all(|&t| e.apply_root(rs, t).is_some_and(|j| flag.summand_of(j).is_none()));
        if !stabilizes {
            continue;
        }
        let induced: Option<Vec<(usize, i8)>> = flag
            .summands()
            .iter()
            .map(|s| e.apply_root(rs, s.roots[0]).and_then(|j| flag.summand_of(j)))
            .collect();
        if let Some(map) = induced {
            seen.insert(map);
        }
    }
    seen.into_iter().collect()
}

/// Orbits of the sign vectors under [`summand_symmetries`], restricted to
/// representatives with first sign `+`; ordered by representative mask.
pub fn classify_acs(flag: &FlagManifold) -> Result<Vec<AcsClass>> {
    let s = flag.num_summands();
    if s > MAX_SUMMANDS {
        return Err(Error::TooManySummands(s));
    }
    let maps = summand_symmetries(flag);
    let image = |map: &[(usize, i8)], mask: u64| -> u64 {
        let mut out = 0u64;
        for (i, &(j, sigma)) in map.iter().enumerate() {
            let neg = (mask >> i & 1 == 1) != (sigma < 0);
            if neg {
                out |= 1 << j;
            }
        }
        out
    };
    let total = 1u64 << s;
    let mut visited = vec![false; total as usize];
    let mut classes = Vec::new();
    for start in 0..total {
        if visited[start as usize] {
            continue;
        }
        let mut orbit = vec![start];
        visited[start as usize] = true;
        let mut k = 0;
        while k < orbit.len() {
            let m = orbit[k];
            for map in &maps {
                let t = image(map, m);
                if !visited[t as usize] {
                    visited[t as usize] = true;
                    orbit.push(t);
                }
            }
            k += 1;
        }
        let mut reps: Vec<u64> = orbit.into_iter().filter(|m| m & 1 == 0).collect();
        if reps.is_empty() {
            continue;
        }
        reps.sort_unstable();
        let members: Vec<InvariantACS> = reps.iter().map(|&m| InvariantACS::from_mask(s, m)).collect();
        let representative = members[0].clone();
        let integrable = is_integrable(flag, &representative)?;
        classes.push(AcsClass { representative, members, integrable });
    }
    classes.sort_by_key(|c| c.representative.mask());
    Ok(classes)
}

/// A manifold given by name: `F(n;n1,...,nk)`, `F(n)`, `FB(..)`, `FC(..)`,
/// `FD(..)`, `CP(n)`, `G2/T`, `G2-long`, `G2-short`, or a few classical
/// aliases such as `SO(8)/U(4)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldSpec {
    pub name: String,
    pub family: Family,
    pub rank: usize,
    pub theta: Vec<usize>,
}

const ALIASES: &[(&str, &str)] = &[
    ("SO(5)/T", "FB(2;1,1)"),
    ("Sp(2)/T", "FC(2;1,1)"),
    ("Sp(3)/T", "FC(3;1,1,1)"),
    ("SO(7)/U(3)", "FB(3;3)"),
    ("SO(6)/U(1)xU(2)", "FD(3;1,2)"),
    ("SO(8)/U(1)xU(3)", "FD(4;1,3)"),
    ("SO(8)/U(4)", "FD(4;4)"),
    ("G2/U(2)", "G2-long"),
];

impl ManifoldSpec {
    pub fn parse(text: &str) -> Result<ManifoldSpec> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Unknown { kind: "manifold", name: text.to_string() };
        if let Some((_, target)) = ALIASES.iter().find(|(a, _)| a.eq_ignore_ascii_case(&t)) {
            let mut spec = ManifoldSpec::parse(target)?;
            spec.name = t;
            return Ok(spec);
        }
        match t.as_str() {
            "G2/T" => return Ok(ManifoldSpec { name: t, family: Family::G2, rank: 2, theta: vec![] }),
            "G2-long" => return Ok(ManifoldSpec { name: t, family: Family::G2, rank: 2, theta: vec![0] }),
            "G2-short" => return Ok(ManifoldSpec { name: t, family: Family::G2, rank: 2, theta: vec![1] }),
            _ => {}
        }
        let open = t.find('(').ok_or_else(bad)?;
        if !t.ends_with(')') {
            return Err(bad());
        }
        let head = &t[..open];
        let args = &t[open + 1..t.len() - 1];
        let (n_str, blocks_str) = match args.split_once(';') {
            Some((a, b)) => (a, Some(b)),
            None => (args, None),
        };
        let n: usize = n_str.parse().map_err(|_| bad())?;
        if head == "CP" {
            if blocks_str.is_some() || n == 0 {
                return Err(bad());
            }
            return Ok(ManifoldSpec { name: t.clone(), family: Family::A, rank: n, theta: (1..n).collect() });
        }
        let blocks: Vec<usize> = match blocks_str {
            Some(b) => b.split(',').map(|x| x.parse::<usize>().map_err(|_| bad())).collect::<Result<_>>()?,
            None => vec![1; n],
        };
        if blocks.contains(&0) || blocks.iter().sum::<usize>() != n {
            return Err(Error::InvalidTheta(format!("block sizes {blocks:?} do not sum to {n}")));
        }
        let mut boundaries = HashSet::new();
        let mut acc = 0;
        for b in &blocks[..blocks.len() - 1] {
            acc += b;
            boundaries.insert(acc);
        }
        let (family, rank, chain) = match head {
            "F" => (Family::A, n.checked_sub(1).filter(|&r| r > 0).ok_or_else(bad)?, n - 1),
            "FB" => (Family::B, n, n - 1),
            "FC" => (Family::C, n, n - 1),
            "FD" => (Family::D, n, n - 1),
            _ => return Err(bad()),
        };
        // Simple root e_i - e_{i+1} sits at position i-1 and stays in Θ
        // unless a block ends at coordinate i.
        let theta = (1..=chain).filter(|i| !boundaries.contains(i)).map(|i| i - 1).collect();
        Ok(ManifoldSpec { name: t.clone(), family, rank, theta })
    }

    /// Spec from explicit data; `theta` holds 0-based simple root positions.
    pub fn from_parts(family: Family, rank: usize, theta: Vec<usize>) -> ManifoldSpec {
        let keep: Vec<String> = theta.iter().map(|k| (k + 1).to_string()).collect();
        ManifoldSpec { name: format!("{family}{rank}[keep={}]", keep.join(",")), family, rank, theta }
    }

    pub fn build(&self) -> Result<FlagManifold> {
        let rs = Arc::new(RootSystem::build(self.family, self.rank)?);
        Ok(FlagManifold::new(rs, &self.theta)?.with_name(self.name.clone()))
    }
}
