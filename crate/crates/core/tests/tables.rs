use flagchern::chern::Oracle;
use flagchern::tables::*;
use num_bigint::BigInt;

fn opts(oracle: Oracle) -> ReproduceOptions {
    ReproduceOptions { oracle, jobs: 2, slow: false }
}

fn cell<'a>(r: &'a TableReport, row: &str, column: &str) -> &'a CellReport {
    let s = &r.sections[0];
    let i = s.monomials.iter().position(|m| m == row).unwrap();
    let j = s.columns.iter().position(|c| c.label == column).unwrap();
    &s.cells[i][j]
}

#[test]
fn tab_dif_is_exact() {
    let r = reproduce("tab-dif", &opts(Oracle::Both)).unwrap();
    assert!(r.ok(), "{:?}", r.failures);
    let want = ["4169710642825728", "3967580897280000", "5340215200320000", "68881612800"];
    for (label, w) in ["J1", "J2", "J3", "J4"].iter().zip(want) {
        let c = cell(&r, "c1^14", label);
        assert_eq!(c.computed, w.parse::<BigInt>().unwrap());
        assert_eq!(c.status, CellStatus::Match);
    }
}

#[test]
fn tab5_flags_one_cell() {
    let r = reproduce("tab5", &opts(Oracle::Both)).unwrap();
    assert!(r.ok());
    assert_eq!(r.cells(), 44);
    assert_eq!(r.flagged(), 1);
    let c = cell(&r, "c1c5", "I2");
    assert_eq!(c.status, CellStatus::Flagged);
    assert_eq!(c.computed, BigInt::from(-48));
    assert_eq!(cell(&r, "c1^6", "J").computed, BigInt::from(46080));
    assert_eq!(cell(&r, "c6", "I2").computed, BigInt::from(-24));
}

#[test]
fn f5_typo_cell_has_hrr_evidence() {
    let r = reproduce("f5-all", &opts(Oracle::Weyl)).unwrap();
    assert!(r.ok(), "{:?}", r.failures);
    let c = cell(&r, "c2^3c4", "I1");
    assert_eq!(c.status, CellStatus::Flagged);
    assert_eq!(c.computed, BigInt::from(725760));
    assert_eq!(c.printed, BigInt::from(7257760));
    let checks: Vec<&CheckReport> =
        r.checks.iter().filter(|k| k.column == "I1" && k.row.as_deref() == Some("c2^3c4")).collect();
    assert!(!checks.is_empty() && checks.iter().all(|k| k.ok));
    assert!(checks.iter().any(|k| k.description.contains("Todd sum 0")));
}

#[test]
fn sign_tables_report_their_mapping() {
    let r = reproduce("so5t", &opts(Oracle::Both)).unwrap();
    assert!(r.ok());
    let col = &r.sections[0].columns[0];
    assert_eq!(col.sign, -1);
    assert_eq!(r.mapping_lines().len(), 1);
    let g = reproduce("g2t", &opts(Oracle::Both)).unwrap();
    assert!(g.ok());
    assert!(g.sections[0].columns[0].is_identity());
    assert_eq!(cell(&g, "c6", "J").computed, BigInt::from(12));
}

#[test]
fn unexplained_cells_are_reported() {
    let r = reproduce("tabg22", &opts(Oracle::Weyl)).unwrap();
    assert!(r.ok());
    assert_eq!(r.discrepancies(), 1);
    assert_eq!(cell(&r, "c2c3", "(+,-)").status, CellStatus::Discrepancy);
}

#[test]
fn slow_sections_are_skipped_by_default() {
    let r = reproduce("tab2", &opts(Oracle::Weyl)).unwrap();
    assert_eq!(r.skipped_sections(), vec!["F(8;1,2,5)", "F(8;1,3,4)"]);
    assert!(r.summary().contains("skipped"));
}

#[test]
fn renderings_are_deterministic() {
    let a = reproduce("tabso1", &opts(Oracle::Weyl)).unwrap();
    let b = reproduce("tabso1", &ReproduceOptions { oracle: Oracle::Weyl, jobs: 1, slow: false }).unwrap();
    assert_eq!(a.to_markdown(), b.to_markdown());
    assert_eq!(a.to_csv(), b.to_csv());
    let json = a.to_json();
    let text = serde_json::to_string(&json).unwrap();
    let back: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&back).unwrap(), text);
    assert!(a.to_markdown().trim_end().ends_with("PASS: tabso1: 28 cells, 0 flagged, 0 scaled, 0 discrepancies"));
}

#[test]
fn every_fast_table_reproduces() {
    for id in table_ids() {
        let r = reproduce(&id, &opts(Oracle::Weyl)).unwrap();
        assert!(r.ok(), "{id}: {:?}", r.failures);
        assert!(r.checks.iter().all(|c| c.ok), "{id}");
    }
}
