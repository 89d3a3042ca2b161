use std::str::FromStr;

use flagchern::chern::ChernMonomial;
use flagchern::tables::*;
use num_bigint::BigInt;

#[test]
fn data_parses() {
    assert!(tables().len() >= 16);
    assert_eq!(table("sp3t").unwrap().id, "tabsp31");
    assert!(table("nope").is_err());
    for t in tables() {
        for s in &t.sections {
            for r in &s.rows {
                assert_eq!(r.printed.len(), t.columns.len(), "{} {}", t.id, r.monomial);
                ChernMonomial::from_str(&r.monomial).unwrap();
            }
        }
    }
}

#[test]
fn digit_slips() {
    let b = |s: &str| BigInt::from_str(s).unwrap();
    assert!(is_digit_slip(&b("725760"), &b("7257760")));
    assert!(is_digit_slip(&b("12507495000000000"), &b("1250749500000000")));
    assert!(!is_digit_slip(&b("-48"), &b("-96")));
    assert!(!is_digit_slip(&b("10"), &b("-10")));
}

#[test]
fn provenance_and_aliases() {
    assert_eq!(provenance(), "printed");
    assert_eq!(table("tabso2").unwrap().id, "tabso21");
    let ids = table_ids();
    for id in ["tab-dif", "tab2", "tab3", "tab5", "tabf51", "tabf54", "tabso1", "tabso21", "tabsp31", "tabg21", "tabg22"] {
        assert!(ids.iter().any(|i| i == id), "{id}");
    }
}

#[test]
fn annotations_point_at_real_cells() {
    for t in tables() {
        for a in &t.annotations {
            assert!(a.section < t.sections.len(), "{} {:?}", t.id, a);
            assert!(t.columns.iter().any(|c| c.label == a.column), "{} {}", t.id, a.column);
            if let Some(row) = &a.row {
                assert!(t.sections[a.section].rows.iter().any(|r| &r.monomial == row), "{} {row}", t.id);
            }
            if let Some(m) = &a.maps_to {
                assert!(!m.is_empty());
            }
            assert!(!a.note.is_empty(), "{} {:?}", t.id, a);
        }
    }
}

#[test]
fn canonical_tables_require_exactness() {
    for id in ["so8u4", "g2t"] {
        assert_eq!(table(id).unwrap().require_exact, vec!["J".to_string()]);
    }
}
