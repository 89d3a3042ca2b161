//! Published Chern-number tables and their comparison against computed values.
//!
//! Printed values ship in `data/tables.json`. Every printed column is matched
//! against a computed structure (its own label first, then the other labels
//! and the equivalence-class representatives, each with either sign). Cells
//! that still disagree are discrepancies unless the data file annotates them,
//! and each annotation carries a machine-checked piece of evidence.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rustc_hash::FxHashMap;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::chern::{todd_polynomial, ChernEngine, ChernMonomial, Oracle};
use crate::error::{Error, Result};
use crate::flagmodel::{classify_acs, FlagManifold, InvariantACS, ManifoldSpec};
use crate::polyring::Rational;

const DATA: &str = include_str!("../data/tables.json");

#[derive(Debug, Deserialize)]
struct TableFile {
    provenance: String,
    aliases: BTreeMap<String, String>,
    tables: Vec<TableSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Policy {
    /// Printed values must equal the computed ones for the labeled structure.
    Exact,
    /// Each column may differ from the computed one by a global sign.
    ColumnSign,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ColumnSpec {
    pub label: String,
    pub acs: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct RowSpec {
    pub monomial: String,
    pub printed: Vec<String>,
    /// The monomial as printed, when it differs from the intended one.
    #[serde(default)]
    pub printed_label: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct SectionSpec {
    pub manifold: String,
    #[serde(default)]
    pub slow: bool,
    pub rows: Vec<RowSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnnotationKind {
    /// A single printed cell believed wrong; must carry evidence.
    SuspectedTypo,
    /// A single printed cell that disagrees for no identified reason.
    Unexplained,
    /// The printed column belongs to another structure (`maps_to`, `sign`).
    ColumnMap,
    /// Disagreeing cells of the column are `factor` times the computed ones.
    ColumnScale,
    /// The printed column repeats the printed column `of`.
    DuplicateColumn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evidence {
    /// One digit inserted or deleted.
    DigitSlip,
    /// Printed value is the negative of the computed one.
    Sign,
    /// Printed value is `factor` times the computed one.
    Scale,
    /// With the printed value the Todd genus stops being an integer.
    Hrr,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Annotation {
    #[serde(default)]
    pub section: usize,
    pub column: String,
    #[serde(default)]
    pub row: Option<String>,
    pub kind: AnnotationKind,
    #[serde(default)]
    pub evidence: Vec<Evidence>,
    #[serde(default)]
    pub maps_to: Option<String>,
    #[serde(default)]
    pub sign: Option<i8>,
    #[serde(default)]
    pub factor: Option<String>,
    #[serde(default)]
    pub of: Option<String>,
    #[serde(default)]
    pub note: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct TableSpec {
    pub id: String,
    pub caption: String,
    pub policy: Policy,
    pub columns: Vec<ColumnSpec>,
    pub sections: Vec<SectionSpec>,
    /// Columns that must match with no sign change and no flagged cells.
    #[serde(default)]
    pub require_exact: Vec<String>,
    #[serde(default)]
    pub annotations: Vec<Annotation>,
}

impl TableSpec {
    fn column_index(&self, label: &str) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| c.label == label)
            .ok_or_else(|| Error::Unknown { kind: "column", name: format!("{label} in {}", self.id) })
    }

    fn cell_annotation(&self, section: usize, row: &str, column: &str) -> Option<&Annotation> {
        self.annotations.iter().find(|a| {
            a.section == section && a.column == column && a.row.as_deref() == Some(row)
        })
    }

    fn column_annotations(&self, section: usize, column: &str) -> impl Iterator<Item = &Annotation> {
        let column = column.to_string();
        self.annotations
            .iter()
            .filter(move |a| a.section == section && a.column == column && a.row.is_none())
    }
}

fn file() -> &'static TableFile {
    static FILE: OnceLock<TableFile> = OnceLock::new();
    FILE.get_or_init(|| serde_json::from_str(DATA).expect("embedded table data parses"))
}

/// All embedded tables, in file order.
pub fn tables() -> &'static [TableSpec] {
    &file().tables
}

/// Table ids followed by aliases.
pub fn table_ids() -> Vec<String> {
    let f = file();
    f.tables.iter().map(|t| t.id.clone()).chain(f.aliases.keys().cloned()).collect()
}

pub fn table(id: &str) -> Result<&'static TableSpec> {
    let f = file();
    let id = f.aliases.get(id).map(String::as_str).unwrap_or(id);
    f.tables
        .iter()
        .find(|t| t.id == id)
        .ok_or_else(|| Error::Unknown { kind: "table", name: id.to_string() })
}

/// Default provenance tag of printed cells.
pub fn provenance() -> &'static str {
    &file().provenance
}

fn parse_int(s: &str) -> Result<BigInt> {
    BigInt::from_str(s).map_err(|_| Error::Parse(format!("bad integer '{s}' in table data")))
}

fn parse_factor(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad factor '{s}'"));
    match s.split_once('/') {
        Some((a, b)) => Ok(Rational::new(parse_int(a).map_err(|_| bad())?, parse_int(b).map_err(|_| bad())?)),
        None => Ok(Rational::from_integer(parse_int(s).map_err(|_| bad())?)),
    }
}

/// True when `b` is `a` with exactly one digit inserted or removed.
pub fn is_digit_slip(a: &BigInt, b: &BigInt) -> bool {
    if a.is_negative() != b.is_negative() {
        return false;
    }
    let (x, y) = (a.abs().to_string(), b.abs().to_string());
    let (long, short) = if x.len() > y.len() { (x, y) } else { (y, x) };
    if long.len() != short.len() + 1 {
        return false;
    }
    (0..long.len()).any(|i| {
        let mut s = long.clone();
        s.remove(i);
        s == short
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReproduceOptions {
    pub oracle: Oracle,
    pub jobs: usize,
    /// Include sections marked slow.
    pub slow: bool,
}

impl Default for ReproduceOptions {
    fn default() -> Self {
        ReproduceOptions { oracle: Oracle::Both, jobs: 1, slow: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellStatus {
    Match,
    /// A suspected printed typo, covered by an annotation.
    Flagged,
    /// Printed value is a column-wide multiple of the computed one.
    Scaled,
    /// Reported disagreement (unexplained annotation, or no annotation).
    Discrepancy,
}

impl CellStatus {
    pub fn tag(&self) -> &'static str {
        match self {
            CellStatus::Match => "printed",
            CellStatus::Flagged => "suspected-typo",
            CellStatus::Scaled => "column-scale",
            CellStatus::Discrepancy => "discrepancy",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CellReport {
    pub printed: BigInt,
    /// Computed for the column's own labeled structure.
    pub computed: BigInt,
    /// Computed for the matched structure, times the matched sign.
    pub expected: BigInt,
    pub status: CellStatus,
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct ColumnMatch {
    pub label: String,
    pub acs: InvariantACS,
    /// Structure whose values reproduce the printed column.
    pub matched: InvariantACS,
    /// Where the matched structure came from: a column label or `class`.
    pub via: String,
    pub sign: i8,
    pub mismatches: usize,
}

impl ColumnMatch {
    pub fn is_identity(&self) -> bool {
        self.matched == self.acs && self.sign == 1
    }

    pub fn describe(&self) -> String {
        let sign = if self.sign < 0 { "-" } else { "+" };
        format!("{} printed {} <- computed {}{} ({})", self.label, self.acs, sign, self.matched, self.via)
    }
}

#[derive(Clone, Debug)]
pub struct SectionReport {
    pub manifold: String,
    pub skipped: bool,
    pub monomials: Vec<String>,
    pub printed_labels: Vec<Option<String>>,
    pub columns: Vec<ColumnMatch>,
    /// `cells[row][column]`.
    pub cells: Vec<Vec<CellReport>>,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub section: usize,
    pub column: String,
    pub row: Option<String>,
    pub kind: AnnotationKind,
    pub description: String,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct TableReport {
    pub id: String,
    pub caption: String,
    pub policy: Policy,
    pub sections: Vec<SectionReport>,
    pub checks: Vec<CheckReport>,
    /// Reasons the table does not reproduce; empty means it does.
    pub failures: Vec<String>,
}

struct Evaluator<'a> {
    flag: FlagManifold,
    rows: Vec<ChernMonomial>,
    opts: &'a ReproduceOptions,
    cache: FxHashMap<InvariantACS, Vec<BigInt>>,
}

impl Evaluator<'_> {
    fn values(&mut self, acs: &InvariantACS) -> Result<Vec<BigInt>> {
        if let Some(v) = self.cache.get(acs) {
            return Ok(v.clone());
        }
        let mut engine = ChernEngine::new(&self.flag, acs, self.opts.oracle, self.opts.jobs)?;
        let v = self.rows.iter().map(|m| engine.number(m)).collect::<Result<Vec<_>>>()?;
        self.cache.insert(acs.clone(), v.clone());
        Ok(v)
    }
}

fn scaled(v: &BigInt, factor: &Rational) -> Rational {
    factor * Rational::from_integer(v.clone())
}

/// Todd genus of a full partition table, if every partition is present.
fn todd_sum(rows: &[ChernMonomial], values: &[BigInt], n: usize) -> Result<Option<Rational>> {
    let td = todd_polynomial(n)?;
    let mut sum = Rational::zero();
    for (m, c) in td.coefficients() {
        match rows.iter().position(|r| r == m) {
            Some(i) => sum += c * Rational::from_integer(values[i].clone()),
            None => return Ok(None),
        }
    }
    Ok(Some(sum))
}

/// Recomputes a table and compares it with the printed values.
pub fn reproduce(id: &str, opts: &ReproduceOptions) -> Result<TableReport> {
    let spec = table(id)?;
    let mut report = TableReport {
        id: spec.id.clone(),
        caption: spec.caption.clone(),
        policy: spec.policy,
        sections: Vec::new(),
        checks: Vec::new(),
        failures: Vec::new(),
    };
    for (si, section) in spec.sections.iter().enumerate() {
        let sr = reproduce_section(spec, si, section, opts, &mut report)?;
        report.sections.push(sr);
    }
    Ok(report)
}

fn reproduce_section(
    spec: &TableSpec,
    si: usize,
    section: &SectionSpec,
    opts: &ReproduceOptions,
    report: &mut TableReport,
) -> Result<SectionReport> {
    let flag = ManifoldSpec::parse(&section.manifold)?.build()?;
    let rows = section
        .rows
        .iter()
        .map(|r| ChernMonomial::from_str(&r.monomial))
        .collect::<Result<Vec<_>>>()?;
    let labeled = spec
        .columns
        .iter()
        .map(|c| InvariantACS::from_str(&c.acs))
        .collect::<Result<Vec<_>>>()?;
    let mut out = SectionReport {
        manifold: section.manifold.clone(),
        skipped: false,
        monomials: section.rows.iter().map(|r| r.monomial.clone()).collect(),
        printed_labels: section.rows.iter().map(|r| r.printed_label.clone()).collect(),
        columns: Vec::new(),
        cells: Vec::new(),
    };
    if section.slow && !opts.slow {
        out.skipped = true;
        return Ok(out);
    }
    let printed: Vec<Vec<BigInt>> = section
        .rows
        .iter()
        .map(|r| {
            if r.printed.len() != spec.columns.len() {
                return Err(Error::Parse(format!("row {} of {} has {} cells", r.monomial, spec.id, r.printed.len())));
            }
            r.printed.iter().map(|s| parse_int(s)).collect()
        })
        .collect::<Result<_>>()?;
    let mut eval = Evaluator { flag, rows: rows.clone(), opts, cache: FxHashMap::default() };
    let mut reps: Option<Vec<InvariantACS>> = None;

    let mut expected_cols = Vec::new();
    for (ci, col) in spec.columns.iter().enumerate() {
        let target: Vec<&BigInt> = printed.iter().map(|r| &r[ci]).collect();
        let cell_excused: Vec<bool> = section
            .rows
            .iter()
            .map(|r| spec.cell_annotation(si, &r.monomial, &col.label).is_some())
            .collect();
        let mut scale = None;
        let mut hinted = None;
        for a in spec.column_annotations(si, &col.label) {
            if a.kind == AnnotationKind::ColumnScale {
                scale = Some(parse_factor(a.factor.as_deref().unwrap_or("1"))?);
            }
            if a.kind == AnnotationKind::ColumnMap {
                if let Some(m) = &a.maps_to {
                    hinted = Some(resolve_acs(spec, m)?);
                }
            }
        }
        let score = |vals: &[BigInt], sign: i8| -> usize {
            (0..vals.len())
                .filter(|&i| !cell_excused[i])
                .filter(|&i| {
                    let e = if sign < 0 { -&vals[i] } else { vals[i].clone() };
                    if &e == target[i] {
                        return false;
                    }
                    match &scale {
                        Some(f) => scaled(&e, f) != Rational::from_integer(target[i].clone()),
                        None => true,
                    }
                })
                .count()
        };

        let mut candidates: Vec<(InvariantACS, String)> = vec![(labeled[ci].clone(), col.label.clone())];
        if let Some(h) = hinted {
            candidates.push((h, "annotation".into()));
        }
        for (cj, other) in spec.columns.iter().enumerate() {
            if cj != ci {
                candidates.push((labeled[cj].clone(), other.label.clone()));
            }
        }
        let mut best: Option<(usize, InvariantACS, String, i8)> = None;
        let mut k = 0;
        loop {
            if k == candidates.len() {
                if reps.is_none() {
                    let r = classify_acs(&eval.flag)?.into_iter().map(|c| c.representative).collect::<Vec<_>>();
                    reps = Some(r);
                    for r in reps.as_ref().unwrap() {
                        candidates.push((r.clone(), "class".into()));
                    }
                    if k == candidates.len() {
                        break;
                    }
                } else {
                    break;
                }
            }
            let (acs, via) = candidates[k].clone();
            k += 1;
            let vals = eval.values(&acs)?;
            for sign in [1i8, -1] {
                let s = score(&vals, sign);
                if best.as_ref().is_none_or(|b| s < b.0) {
                    best = Some((s, acs.clone(), via.clone(), sign));
                }
            }
            if best.as_ref().is_some_and(|b| b.0 == 0) {
                break;
            }
        }
        let (mismatches, matched, via, sign) = best.expect("at least one candidate");
        let vals = eval.values(&matched)?;
        expected_cols.push(vals.iter().map(|v| if sign < 0 { -v } else { v.clone() }).collect::<Vec<_>>());
        out.columns.push(ColumnMatch { label: col.label.clone(), acs: labeled[ci].clone(), matched, via, sign, mismatches });
    }

    let own: Vec<Vec<BigInt>> = labeled.iter().map(|a| eval.values(a)).collect::<Result<_>>()?;
    for (ri, row) in section.rows.iter().enumerate() {
        let mut cells = Vec::new();
        for (ci, col) in spec.columns.iter().enumerate() {
            let p = printed[ri][ci].clone();
            let e = expected_cols[ci][ri].clone();
            let (status, note) = if p == e {
                (CellStatus::Match, None)
            } else if let Some(a) = spec.cell_annotation(si, &row.monomial, &col.label) {
                let st = match a.kind {
                    AnnotationKind::SuspectedTypo => CellStatus::Flagged,
                    _ => CellStatus::Discrepancy,
                };
                (st, Some(a.note.clone()))
            } else if let Some(a) = spec
                .column_annotations(si, &col.label)
                .find(|a| a.kind == AnnotationKind::ColumnScale)
            {
                let f = parse_factor(a.factor.as_deref().unwrap_or("1"))?;
                if scaled(&e, &f) == Rational::from_integer(p.clone()) {
                    (CellStatus::Scaled, Some(format!("printed is {f} times computed")))
                } else {
                    (CellStatus::Discrepancy, None)
                }
            } else {
                (CellStatus::Discrepancy, None)
            };
            cells.push(CellReport { printed: p, computed: own[ci][ri].clone(), expected: e, status, note });
        }
        out.cells.push(cells);
    }

    check_annotations(spec, si, &mut eval, &rows, &printed, &expected_cols, &own, &mut out, report)?;

    for (ci, col) in out.columns.iter().enumerate() {
        let column_mapped = spec
            .column_annotations(si, &col.label)
            .any(|a| matches!(a.kind, AnnotationKind::ColumnMap | AnnotationKind::DuplicateColumn));
        let exact_required = spec.require_exact.contains(&col.label);
        let identity_needed = spec.policy == Policy::Exact || exact_required;
        if identity_needed && !col.is_identity() && !column_mapped {
            report.failures.push(format!("{}: column {} needs {}", section.manifold, col.label, col.describe()));
        }
        for (ri, cells) in out.cells.iter().enumerate() {
            let c = &cells[ci];
            let m = &out.monomials[ri];
            match c.status {
                CellStatus::Discrepancy => {
                    let unexplained = spec
                        .cell_annotation(si, m, &col.label)
                        .is_some_and(|a| a.kind == AnnotationKind::Unexplained);
                    if spec.policy == Policy::Exact || exact_required || !unexplained {
                        report.failures.push(format!(
                            "{}: {m} under {} printed {} computed {}",
                            section.manifold, col.label, c.printed, c.expected
                        ));
                    }
                }
                CellStatus::Flagged | CellStatus::Scaled if exact_required => {
                    report.failures.push(format!("{}: {m} under {} is flagged in a column required exact", section.manifold, col.label));
                }
                _ => {}
            }
        }
        if exact_required && col.sign != 1 {
            report.failures.push(format!("{}: column {} requires sign +", section.manifold, col.label));
        }
    }
    Ok(out)
}

fn resolve_acs(spec: &TableSpec, key: &str) -> Result<InvariantACS> {
    match spec.columns.iter().find(|c| c.label == key) {
        Some(c) => InvariantACS::from_str(&c.acs),
        None => InvariantACS::from_str(key),
    }
}

#[allow(clippy::too_many_arguments)]
fn check_annotations(
    spec: &TableSpec,
    si: usize,
    eval: &mut Evaluator,
    rows: &[ChernMonomial],
    printed: &[Vec<BigInt>],
    expected: &[Vec<BigInt>],
    own: &[Vec<BigInt>],
    out: &mut SectionReport,
    report: &mut TableReport,
) -> Result<()> {
    let n = eval.flag.complex_dim();
    for a in spec.annotations.iter().filter(|a| a.section == si) {
        let ci = spec.column_index(&a.column)?;
        let mut push = |description: String, ok: bool| {
            report.checks.push(CheckReport {
                section: si,
                column: a.column.clone(),
                row: a.row.clone(),
                kind: a.kind,
                description,
                ok,
            });
        };
        match a.kind {
            AnnotationKind::SuspectedTypo | AnnotationKind::Unexplained => {
                let row = a.row.as_deref().unwrap_or_default();
                let ri = out.monomials.iter().position(|m| m == row).ok_or_else(|| Error::Unknown {
                    kind: "row",
                    name: format!("{row} in {}", spec.id),
                })?;
                let (p, e) = (&printed[ri][ci], &expected[ci][ri]);
                if p == e {
                    push(format!("{row} under {}: printed {p} now matches; annotation is stale", a.column), false);
                    continue;
                }
                if a.kind == AnnotationKind::Unexplained {
                    push(format!("{row} under {}: printed {p}, computed {e}", a.column), true);
                    continue;
                }
                if a.evidence.is_empty() {
                    push(format!("{row} under {}: no evidence given", a.column), false);
                }
                for ev in &a.evidence {
                    let (desc, ok) = match ev {
                        Evidence::DigitSlip => (
                            format!("{row} under {}: printed {p} is computed {e} with one digit slipped", a.column),
                            is_digit_slip(e, p),
                        ),
                        Evidence::Sign => {
                            (format!("{row} under {}: printed {p} is minus computed {e}", a.column), p == &-e)
                        }
                        Evidence::Scale => {
                            let f = parse_factor(a.factor.as_deref().unwrap_or("1"))?;
                            (
                                format!("{row} under {}: printed {p} is {f} times computed {e}", a.column),
                                scaled(e, &f) == Rational::from_integer(p.clone()),
                            )
                        }
                        Evidence::Hrr => {
                            let good = todd_sum(rows, &expected[ci], n)?;
                            let mut swapped = expected[ci].clone();
                            swapped[ri] = p.clone();
                            let bad = todd_sum(rows, &swapped, n)?;
                            match (good, bad) {
                                (Some(g), Some(b)) => (
                                    format!(
                                        "{row} under {}: Todd sum {g} with computed {e}, {b} with printed {p}",
                                        a.column
                                    ),
                                    g.is_integer() && !b.is_integer(),
                                ),
                                _ => (format!("{row} under {}: table lacks a full partition set", a.column), false),
                            }
                        }
                    };
                    push(desc, ok);
                }
            }
            AnnotationKind::ColumnMap => {
                let col = &out.columns[ci];
                let want = match &a.maps_to {
                    Some(m) => resolve_acs(spec, m)?,
                    None => col.acs.clone(),
                };
                let sign = a.sign.unwrap_or(1);
                let vals = eval.values(&want)?;
                let same = vals
                    .iter()
                    .zip(&expected[ci])
                    .all(|(v, e)| &(if sign < 0 { -v } else { v.clone() }) == e);
                let ok = same && col.mismatches == 0;
                let s = if sign < 0 { "-" } else { "+" };
                push(format!("column {} reproduced by {s}{want} ({})", a.column, a.note), ok);
            }
            AnnotationKind::ColumnScale => {
                let f = parse_factor(a.factor.as_deref().unwrap_or("1"))?;
                let scaled_cells = out.cells.iter().filter(|r| r[ci].status == CellStatus::Scaled).count();
                let col = &out.columns[ci];
                push(
                    format!("column {}: {scaled_cells} cells are {f} times computed ({})", a.column, a.note),
                    col.mismatches == 0 && scaled_cells > 0,
                );
            }
            AnnotationKind::DuplicateColumn => {
                let of = a.of.as_deref().unwrap_or_default();
                let cj = spec.column_index(of)?;
                let repeated = printed.iter().all(|r| r[ci] == r[cj]);
                let differs = own[ci].iter().zip(&own[cj]).any(|(x, y)| x != y && x != &-y);
                push(
                    format!(
                        "column {} repeats printed column {of}; computed {} and {} differ ({})",
                        a.column, out.columns[ci].acs, out.columns[cj].acs, a.note
                    ),
                    repeated && differs,
                );
            }
        }
    }
    for c in report.checks.iter().filter(|c| c.section == si && !c.ok) {
        report.failures.push(format!("{}: annotation check failed: {}", out.manifold, c.description));
    }
    Ok(())
}

impl TableReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn flagged(&self) -> usize {
        self.count(CellStatus::Flagged)
    }

    pub fn scaled(&self) -> usize {
        self.count(CellStatus::Scaled)
    }

    pub fn discrepancies(&self) -> usize {
        self.count(CellStatus::Discrepancy)
    }

    fn count(&self, st: CellStatus) -> usize {
        self.sections.iter().flat_map(|s| s.cells.iter().flatten()).filter(|c| c.status == st).count()
    }

    pub fn cells(&self) -> usize {
        self.sections.iter().map(|s| s.cells.iter().map(Vec::len).sum::<usize>()).sum()
    }

    pub fn skipped_sections(&self) -> Vec<&str> {
        self.sections.iter().filter(|s| s.skipped).map(|s| s.manifold.as_str()).collect()
    }

    pub fn mapping_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for s in self.sections.iter().filter(|s| !s.skipped) {
            for c in &s.columns {
                out.push(format!("{}: {}", s.manifold, c.describe()));
            }
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}: {} cells, {} flagged, {} scaled, {} discrepancies",
            self.id,
            self.cells(),
            self.flagged(),
            self.scaled(),
            self.discrepancies()
        );
        let skipped = self.skipped_sections();
        if !skipped.is_empty() {
            let _ = write!(s, ", skipped {}", skipped.join(", "));
        }
        s
    }

    fn header(&self, s: &SectionReport) -> Vec<String> {
        let mut h = vec!["monomial".to_string()];
        h.extend(s.columns.iter().map(|c| format!("{} {}", c.label, c.acs)));
        h
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("## {} ({})\n", self.id, self.caption);
        for s in &self.sections {
            let _ = writeln!(out, "\n### {}\n", s.manifold);
            if s.skipped {
                out.push_str("skipped (slow; pass --slow)\n");
                continue;
            }
            let h = self.header(s);
            let _ = writeln!(out, "| {} |", h.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(h.len()));
            for (ri, row) in s.cells.iter().enumerate() {
                let mut line = format!("| {}", s.monomials[ri]);
                for c in row {
                    match c.status {
                        CellStatus::Match => {
                            let _ = write!(line, " | {}", c.printed);
                        }
                        _ => {
                            let _ = write!(line, " | {} (printed {}, {})", c.expected, c.printed, c.status.tag());
                        }
                    }
                }
                line.push_str(" |");
                let _ = writeln!(out, "{line}");
            }
            out.push_str("\nColumn mapping:\n");
            for c in &s.columns {
                let _ = writeln!(out, "- {}", c.describe());
            }
        }
        if !self.checks.is_empty() {
            out.push_str("\nAnnotations:\n");
            for c in &self.checks {
                let _ = writeln!(out, "- [{}] {}", if c.ok { "ok" } else { "FAILED" }, c.description);
            }
        }
        let _ = writeln!(out, "\n{}: {}", if self.ok() { "PASS" } else { "FAIL" }, self.summary());
        for f in &self.failures {
            let _ = writeln!(out, "- {f}");
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("manifold,monomial,column,structure,printed,computed,expected,status\n");
        for s in self.sections.iter().filter(|s| !s.skipped) {
            for (ri, row) in s.cells.iter().enumerate() {
                for (ci, c) in row.iter().enumerate() {
                    let col = &s.columns[ci];
                    let _ = writeln!(
                        out,
                        "\"{}\",{},\"{}\",\"{}\",{},{},{},{}",
                        s.manifold,
                        s.monomials[ri],
                        col.label,
                        col.acs,
                        c.printed,
                        c.computed,
                        c.expected,
                        c.status.tag()
                    );
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let sections: Vec<Value> = self
            .sections
            .iter()
            .map(|s| {
                let rows: Vec<Value> = s
                    .cells
                    .iter()
                    .enumerate()
                    .map(|(ri, row)| {
                        let cells: Vec<Value> = row
                            .iter()
                            .map(|c| {
                                json!({
                                    "printed": c.printed.to_string(),
                                    "computed": c.computed.to_string(),
                                    "expected": c.expected.to_string(),
                                    "provenance": c.status.tag(),
                                    "note": c.note,
                                })
                            })
                            .collect();
                        json!({
                            "monomial": s.monomials[ri],
                            "printed_label": s.printed_labels[ri],
                            "cells": cells,
                        })
                    })
                    .collect();
                let columns: Vec<Value> = s
                    .columns
                    .iter()
                    .map(|c| {
                        json!({
                            "label": c.label,
                            "structure": c.acs.to_string(),
                            "matched": c.matched.to_string(),
                            "via": c.via,
                            "sign": c.sign,
                        })
                    })
                    .collect();
                json!({
                    "manifold": s.manifold,
                    "skipped": s.skipped,
                    "columns": columns,
                    "rows": rows,
                })
            })
            .collect();
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({ "column": c.column, "row": c.row, "description": c.description, "ok": c.ok }))
            .collect();
        json!({
            "id": self.id,
            "caption": self.caption,
            "policy": match self.policy { Policy::Exact => "exact", Policy::ColumnSign => "column-sign" },
            "ok": self.ok(),
            "sections": sections,
            "annotations": checks,
            "failures": self.failures,
        })
    }
}
