use std::fmt::Write as _;
use std::str::FromStr;

use flagchern::chern::{parse_monomial_list, todd_polynomial, ChernReport};
use flagchern::cohomology::{default_cases, verify_case, CaseId};
use flagchern::flagmodel::{classify_acs, enumerate_acs, is_integrable, FlagManifold, InvariantACS, ManifoldSpec};
use flagchern::groebner::{borel_ideal, buchberger, MonomialOrder};
use flagchern::polyring::Polynomial;
use flagchern::rootsys::{Family, RootSystem};
use flagchern::suite::{self, SuiteOptions};
use flagchern::tables::{self, ReproduceOptions};
use flagchern::Error;
use serde_json::{json, Value};

use crate::output::{csv, json, markdown, Format, Out};
use crate::{AcsAction, Cli, CohomologyAction, Command, TableAction, VerifyAction};

type Result<T> = flagchern::Result<T>;

/// 1 for bad input, 3 for internal failures.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::Unknown { .. }
        | Error::InvalidTheta(_)
        | Error::SignLength { .. }
        | Error::UnsupportedRootSystem { .. }
        | Error::OutOfRange { .. }
        | Error::TooManySummands(_)
        | Error::TooManyVariables(_)
        | Error::NoPresentation(_)
        | Error::DegreeMismatch { .. }
        | Error::Json(_) => 1,
        _ => 3,
    }
}

pub fn run(cli: &Cli) -> Result<Out> {
    let g = &cli.global;
    let f = g.format;
    match &cli.command {
        Command::Roots { family, rank } => roots(f, family, *rank),
        Command::Decompose { manifold, family, rank, theta } => {
            let flag = match (manifold, family, rank) {
                (Some(m), _, _) => build(m)?,
                (None, Some(fam), Some(r)) => {
                    let theta = parse_theta(theta.as_deref().unwrap_or(""))?;
                    ManifoldSpec::from_parts(Family::from_str(fam)?, *r, theta).build()?
                }
                _ => return Err(Error::Parse("give a manifold name or --family and --rank".into())),
            };
            Ok(Out::ok(decompose(f, &flag)))
        }
        Command::Acs { action } => match action {
            AcsAction::Enumerate { manifold, all } => acs_enumerate(f, &build(manifold)?, !*all),
            AcsAction::Classify { manifold } => acs_classify(f, &build(manifold)?),
        },
        Command::Chern { manifold, acs, numbers, all_partitions: _, todd } => {
            let flag = build(manifold)?;
            let acs = match acs {
                Some(a) => InvariantACS::from_str(a)?,
                None => InvariantACS::all_plus(flag.num_summands()),
            };
            let list = numbers.as_deref().map(parse_monomial_list).transpose()?;
            let report = ChernReport::compute(&flag, &acs, list.as_deref(), *todd, g.oracle, g.jobs)?;
            Ok(Out::ok(chern(f, &flag, &report)))
        }
        Command::Table { action } => match action {
            TableAction::List => Ok(Out::ok(table_list(f))),
            TableAction::Reproduce { id } => {
                let opts = ReproduceOptions { oracle: g.oracle, jobs: g.jobs, slow: g.slow };
                table_reproduce(f, id, &opts)
            }
        },
        Command::Groebner { ideal, order, vars } => groebner(f, ideal, *order, vars),
        Command::Cohomology { action: CohomologyAction::Verify { case, order } } => cohomology(f, case, *order),
        Command::Verify { action: VerifyAction::All { criterion, verbose } } => {
            let opts = SuiteOptions { oracle: g.oracle, jobs: g.jobs, slow: g.slow };
            let report = suite::run(&opts, criterion);
            let text = match f {
                Format::Md => report.to_text(*verbose),
                Format::Json => json(&report.to_json()),
                Format::Csv => csv(
                    &["criterion", "passed", "summary"],
                    &report
                        .results
                        .iter()
                        .map(|r| vec![r.number.to_string(), r.passed.to_string(), r.summary.clone()])
                        .collect::<Vec<_>>(),
                ),
            };
            Ok(Out::verdict(text, report.passed()))
        }
        Command::Todd { degree } => {
            let td = todd_polynomial(*degree)?;
            let text = match f {
                Format::Md => format!("td_{degree} = {}\n", td.to_text()),
                Format::Json => json(&td.to_json()),
                Format::Csv => csv(
                    &["monomial", "coefficient"],
                    &td.coefficients().iter().map(|(m, c)| vec![m.to_string(), c.to_string()]).collect::<Vec<_>>(),
                ),
            };
            Ok(Out::ok(text))
        }
    }
}

fn build(name: &str) -> Result<FlagManifold> {
    ManifoldSpec::parse(name)?.build()
}

/// `keep=1,3` or `1,3` to 0-based simple root positions.
fn parse_theta(s: &str) -> Result<Vec<usize>> {
    let body = s.strip_prefix("keep=").unwrap_or(s);
    body.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| match t.trim().parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(Error::Parse(format!("bad simple root index '{t}'"))),
        })
        .collect()
}

fn roots(f: Format, family: &str, rank: usize) -> Result<Out> {
    let rs = RootSystem::build(Family::from_str(family)?, rank)?;
    let names = Polynomial::default_names(rs.ambient_dim());
    let rows: Vec<Vec<String>> = (0..rs.roots().len())
        .map(|i| {
            let simple = rs.simple_roots().iter().position(|&s| s == i);
            vec![
                i.to_string(),
                rs.linear_form(i).to_text(&names),
                rs.is_positive(i).to_string(),
                simple.map(|k| (k + 1).to_string()).unwrap_or_default(),
            ]
        })
        .collect();
    let header = ["index", "root", "positive", "simple"];
    let text = match f {
        Format::Md => format!(
            "{}{} with {} positive roots in {} coordinates\n\n{}",
            rs.family(),
            rs.rank(),
            rs.num_positive(),
            rs.ambient_dim(),
            markdown(&header, &rows)
        ),
        Format::Csv => csv(&header, &rows),
        Format::Json => json(&rs.to_json()),
    };
    Ok(Out::ok(text))
}

fn decompose(f: Format, flag: &FlagManifold) -> String {
    let names = Polynomial::default_names(flag.nvars());
    let rows: Vec<Vec<String>> = flag
        .summands()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let roots: Vec<String> =
                s.roots.iter().map(|&r| flag.root_system().linear_form(r).to_text(&names)).collect();
            vec![(i + 1).to_string(), s.dim_complex().to_string(), roots.join("; ")]
        })
        .collect();
    let header = ["summand", "complex dim", "roots"];
    match f {
        Format::Md => format!(
            "{}: complex dimension {}, Euler characteristic {}, {} summands\n\n{}",
            flag.name(),
            flag.complex_dim(),
            flag.euler_characteristic(),
            flag.num_summands(),
            markdown(&header, &rows)
        ),
        Format::Csv => csv(&header, &rows),
        Format::Json => json(&flag.to_json()),
    }
}

fn acs_enumerate(f: Format, flag: &FlagManifold, up_to_conjugation: bool) -> Result<Out> {
    let list = enumerate_acs(flag, up_to_conjugation)?;
    let mut rows = Vec::with_capacity(list.len());
    for a in &list {
        rows.push(vec![a.to_string(), is_integrable(flag, a)?.to_string()]);
    }
    let header = ["acs", "integrable"];
    let text = match f {
        Format::Md => format!(
            "{}: {} structures{}\n\n{}",
            flag.name(),
            list.len(),
            if up_to_conjugation { " up to conjugation" } else { "" },
            markdown(&header, &rows)
        ),
        Format::Csv => csv(&header, &rows),
        Format::Json => json(&json!({
            "manifold": flag.name(),
            "up_to_conjugation": up_to_conjugation,
            "structures": rows.iter().map(|r| json!({"acs": r[0], "integrable": r[1] == "true"})).collect::<Vec<_>>(),
        })),
    };
    Ok(Out::ok(text))
}

fn acs_classify(f: Format, flag: &FlagManifold) -> Result<Out> {
    let classes = classify_acs(flag)?;
    let rows: Vec<Vec<String>> = classes
        .iter()
        .map(|c| {
            vec![
                c.representative.to_string(),
                c.size().to_string(),
                c.integrable.to_string(),
                c.members.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
            ]
        })
        .collect();
    let header = ["representative", "size", "integrable", "members"];
    let text = match f {
        Format::Md => format!("{}: {} classes\n\n{}", flag.name(), classes.len(), markdown(&header, &rows)),
        Format::Csv => csv(&header, &rows),
        Format::Json => json(&json!({
            "manifold": flag.name(),
            "classes": classes.iter().map(|c| json!({
                "representative": c.representative.to_string(),
                "size": c.size(),
                "integrable": c.integrable,
                "members": c.members.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
    };
    Ok(Out::ok(text))
}

fn chern(f: Format, flag: &FlagManifold, r: &ChernReport) -> String {
    let rows: Vec<Vec<String>> = r.numbers.iter().map(|(m, v)| vec![m.to_string(), v.to_string()]).collect();
    let header = ["monomial", "value"];
    match f {
        Format::Md => {
            let mut s = format!(
                "{} {} ({}integrable)\n\n{}",
                flag.name(),
                r.acs,
                if r.integrable { "" } else { "non-" },
                markdown(&header, &rows)
            );
            if let Some(t) = &r.todd_genus {
                let _ = writeln!(s, "\nTodd genus {t}");
            }
            s
        }
        Format::Csv => {
            let mut rows = rows;
            if let Some(t) = &r.todd_genus {
                rows.push(vec!["todd".into(), t.to_string()]);
            }
            csv(&header, &rows)
        }
        Format::Json => json(&r.to_json(&Polynomial::default_names(flag.nvars()))),
    }
}

fn table_list(f: Format) -> String {
    let rows: Vec<Vec<String>> = tables::tables()
        .iter()
        .map(|t| {
            let manifolds: Vec<&str> = t.sections.iter().map(|s| s.manifold.as_str()).collect();
            vec![t.id.clone(), manifolds.join(" "), t.caption.clone()]
        })
        .collect();
    let header = ["id", "manifolds", "caption"];
    match f {
        Format::Md => markdown(&header, &rows),
        Format::Csv => csv(&header, &rows),
        Format::Json => json(&json!({
            "provenance": tables::provenance(),
            "tables": rows.iter().map(|r| json!({"id": r[0], "manifolds": r[1], "caption": r[2]})).collect::<Vec<_>>(),
        })),
    }
}

fn table_reproduce(f: Format, id: &str, opts: &ReproduceOptions) -> Result<Out> {
    let ids: Vec<String> = if id == "all" { tables::table_ids() } else { vec![id.to_string()] };
    let mut reports = Vec::new();
    for id in &ids {
        reports.push(tables::reproduce(id, opts)?);
    }
    let passed = reports.iter().all(|r| r.ok());
    let text = match f {
        Format::Md => reports.iter().map(|r| r.to_markdown()).collect::<Vec<_>>().join("\n"),
        Format::Csv => reports.iter().map(|r| r.to_csv()).collect::<String>(),
        Format::Json if reports.len() == 1 => json(&reports[0].to_json()),
        Format::Json => json(&Value::Array(reports.iter().map(|r| r.to_json()).collect())),
    };
    Ok(Out::verdict(text, passed))
}

fn groebner(f: Format, ideal: &str, order: flagchern::groebner::OrderKind, vars: &str) -> Result<Out> {
    let (names, gens): (Vec<String>, Vec<Polynomial>) = match ideal {
        "so6" => {
            let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
            let gens = ["x^2+y^2+z^2", "x^4+y^4+z^4", "x*y*z"]
                .iter()
                .map(|s| Polynomial::parse(s, &names))
                .collect::<Result<_>>()?;
            (names, gens)
        }
        _ if ideal.starts_with("borel:") => {
            let spec = &ideal["borel:".len()..];
            let bad = || Error::Parse(format!("bad preset '{ideal}'"));
            let (fam, rank) = if spec.eq_ignore_ascii_case("G2") {
                ("G2", 2)
            } else {
                let (fam, rank) = spec.split_at(spec.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
                (fam, rank.parse::<usize>().map_err(|_| bad())?)
            };
            let rs = RootSystem::build(Family::from_str(fam)?, rank)?;
            (Polynomial::default_names(rs.ambient_dim()), borel_ideal(&rs))
        }
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            let names: Vec<String> = vars.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
            let gens = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| Polynomial::parse(l, &names))
                .collect::<Result<_>>()?;
            (names, gens)
        }
    };
    let gb = buchberger(&gens, &MonomialOrder::new(order, names.len()))?;
    let basis: Vec<String> = gb.generators().iter().map(|p| p.to_text(&names)).collect();
    let dim = gb.quotient_dimension();
    let text = match f {
        Format::Md => {
            let mut s = format!("reduced Groebner basis ({order}), {} elements\n\n", basis.len());
            for b in &basis {
                let _ = writeln!(s, "- {b}");
            }
            let _ = writeln!(s, "\nquotient dimension {}", dim.map(|d| d.to_string()).unwrap_or_else(|| "infinite".into()));
            s
        }
        Format::Csv => csv(&["element"], &basis.iter().map(|b| vec![b.clone()]).collect::<Vec<_>>()),
        Format::Json => json(&json!({
            "order": order.to_string(),
            "variables": names,
            "basis": basis,
            "quotient_dimension": dim,
        })),
    };
    Ok(Out::ok(text))
}

fn cohomology(f: Format, cases: &[String], order: flagchern::groebner::OrderKind) -> Result<Out> {
    let mut ids = Vec::new();
    for c in cases {
        if c == "all" {
            ids.extend(default_cases());
        } else {
            ids.push(CaseId::from_str(c)?);
        }
    }
    let mut reports = Vec::new();
    for id in ids {
        reports.push(verify_case(id, order)?);
    }
    let passed = reports.iter().all(|r| r.ok());
    let text = match f {
        Format::Md => reports.iter().map(|r| r.to_text() + "\n").collect::<String>(),
        Format::Json => json(&Value::Array(reports.iter().map(|r| r.to_json()).collect())),
        Format::Csv => csv(
            &["case", "order", "passed", "dimension", "certificate"],
            &reports
                .iter()
                .map(|r| {
                    vec![
                        r.id.to_string(),
                        r.order.to_string(),
                        r.ok().to_string(),
                        r.quotient_dimension.map(|d| d.to_string()).unwrap_or_default(),
                        r.certificate.as_ref().map(|c| c.to_string()).unwrap_or_default(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    };
    Ok(Out::verdict(text, passed))
}
