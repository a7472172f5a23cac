//! The acceptance battery: one line per criterion, exact equality throughout.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use hallforge::derived::{self, TiltFile};
use hallforge::qgroup;
use hallforge::quiver::Config;
use hallforge::suites::{self, SuiteInput, SuiteName, SuiteOptions, SuiteReport};
use hallforge::table::Table;
use hallforge_cli::eval::eval_expr;
use hallforge_cli::expr::{parse_expr, Target};
use hallforge_cli::REPORT_SCHEMA;

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn from_reports(reports: &[SuiteReport]) -> Self {
        let checks: usize = reports.iter().map(|r| r.summary.total).sum();
        let failed: usize = reports.iter().map(|r| r.summary.failed).sum();
        let skipped: usize = reports.iter().map(|r| r.summary.skipped).sum();
        let mut detail = format!("{checks} checks, {failed} failed, {skipped} skipped");
        if let Some(f) = reports.iter().flat_map(|r| r.failures()).next() {
            detail += &format!("; first failure {} {}: {:?} vs {:?}", f.check, f.instance, f.lhs, f.rhs);
        }
        Verdict {
            pass: failed == 0 && checks > 0,
            detail,
        }
    }
}

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn table(n: usize, q: u32, bound: &[usize]) -> Table {
    Table::from_config(&Config::linear_a(n, q, bound.to_vec()), 1 << 20).unwrap()
}

fn reversed_a2(q: u32) -> Table {
    let mut cfg = Config::load(&configs().join("a2-reversed.json")).unwrap();
    cfg.q = q;
    Table::from_config(&cfg, 1 << 20).unwrap()
}

/// A₂ at q = 2, 3 with bound (2,2), and A₃ at q = 2 with bound (1,1,1).
fn reference_tables() -> Vec<Table> {
    vec![table(2, 2, &[2, 2]), table(2, 3, &[2, 2]), table(3, 2, &[1, 1, 1])]
}

fn opts(window: (i64, i64), max_total: Option<usize>) -> SuiteOptions {
    SuiteOptions {
        window,
        budget: 1 << 20,
        max_total,
    }
}

fn run_on(tables: &[Table], suite: SuiteName, o: &SuiteOptions) -> Vec<SuiteReport> {
    tables
        .iter()
        .map(|t| suites::run(suite, &SuiteInput::new(t, o.clone())).unwrap())
        .collect()
}

fn criterion_1() -> Verdict {
    Verdict::from_reports(&run_on(&reference_tables(), SuiteName::Assoc, &SuiteOptions::default()))
}

fn criterion_2() -> Verdict {
    Verdict::from_reports(&run_on(&reference_tables(), SuiteName::Hopf, &SuiteOptions::default()))
}

fn criterion_3() -> Verdict {
    Verdict::from_reports(&run_on(
        &reference_tables(),
        SuiteName::Pairing,
        &SuiteOptions::default(),
    ))
}

fn criterion_4() -> Verdict {
    Verdict::from_reports(&run_on(&reference_tables(), SuiteName::Heis, &SuiteOptions::default()))
}

fn criterion_5() -> Verdict {
    let mut checks = 0;
    let mut bad = Vec::new();
    for t in [
        table(2, 2, &[2, 2]),
        table(2, 3, &[2, 2]),
        table(3, 2, &[1, 1, 1]),
        table(3, 3, &[1, 1, 1]),
    ] {
        for c in qgroup::adjacent_commutator_check(&t, (-2, 2)).unwrap() {
            checks += 1;
            if !c.pass {
                bad.push(format!("{}: {} vs {}", c.instance, c.lhs, c.rhs));
            }
        }
    }
    Verdict {
        pass: bad.is_empty() && checks > 0,
        detail: format!("{checks} commutators, {} failed {:?}", bad.len(), bad.first()),
    }
}

fn criterion_6() -> Verdict {
    let o = opts((-2, 2), Some(2));
    let tables = reference_tables();
    let mut reports = run_on(&tables, SuiteName::LatticeConfluence, &o);
    reports.extend(run_on(&tables, SuiteName::Splice, &o));
    Verdict::from_reports(&reports)
}

fn criterion_7() -> Verdict {
    let o = opts((-1, 1), None);
    let tables = vec![
        table(2, 2, &[2, 2]),
        table(2, 3, &[2, 2]),
        table(3, 2, &[2, 2, 2]),
        table(3, 3, &[2, 2, 2]),
    ];
    let reports = run_on(&tables, SuiteName::Serre, &o);
    let mut v = Verdict::from_reports(&reports);
    let serre_records = |r: &SuiteReport| r.records.iter().filter(|x| x.check == "serre").count();
    let per_site: Vec<usize> = reports.iter().map(|r| serre_records(r) / 3).collect();
    let skipped: usize = reports.iter().map(|r| r.summary.skipped).sum();
    v.pass &= per_site.iter().all(|&n| n >= 2) && skipped == 0;
    v.detail += &format!("; Serre sums per site {per_site:?}");
    v
}

fn criterion_8() -> Verdict {
    let (src, tgt) = (table(2, 2, &[2, 2]), reversed_a2(2));
    let found = derived::discover_tilt(&src, &tgt, &[0, 1]);
    let Some(f) = found.first() else {
        return Verdict {
            pass: false,
            detail: "no tilting table found".into(),
        };
    };
    let o = opts((-2, 2), Some(2));
    let good = suites::run(
        SuiteName::Tilt,
        &SuiteInput {
            table: &src,
            target: Some(&tgt),
            tilt: Some(f),
            options: o.clone(),
        },
    )
    .unwrap();
    let bad_table = f.corrupted();
    let bad = suites::run(
        SuiteName::Tilt,
        &SuiteInput {
            table: &src,
            target: Some(&tgt),
            tilt: Some(&bad_table),
            options: o,
        },
    )
    .unwrap();
    let mut v = Verdict::from_reports(std::slice::from_ref(&good));
    let heis = good.records.iter().filter(|r| r.check == "heis-image").count();
    let lat = good.records.iter().filter(|r| r.check == "lattice-image").count();
    v.pass &= heis > 0 && lat > 0 && bad.summary.failed > 0;
    v.detail = format!(
        "{} tables found; {}; {heis} Heisenberg and {lat} lattice pairs; corrupted table fails {} checks",
        found.len(),
        v.detail,
        bad.summary.failed
    );
    v
}

fn criterion_9() -> Verdict {
    let t = table(2, 2, &[3, 3]);
    let o = opts((0, 3), Some(3));
    let r = suites::run(SuiteName::Falgebra, &SuiteInput::new(&t, o)).unwrap();
    let count = |name: &str| r.records.iter().filter(|x| x.check == name).count();
    let mut v = Verdict::from_reports(std::slice::from_ref(&r));
    v.pass &= count("structure-constants") > 0 && count("differential-expansion") > 0;
    v.detail += &format!(
        "; {} structure-constant pairs, {} differential expansions",
        count("structure-constants"),
        count("differential-expansion")
    );
    v
}

fn criterion_10() -> Verdict {
    Verdict::from_reports(&run_on(
        &reference_tables(),
        SuiteName::Oracle,
        &SuiteOptions::default(),
    ))
}

const CORPUS: [(Target, &str); 20] = [
    (Target::Lattice, "Z{0}[S1] * Z{0}[S2]"),
    (Target::Lattice, "Z{1}[S1]*Z{0}[S1] - Z{0}[S1]*Z{1}[S1]"),
    (Target::Lattice, "K[(1,0)]^-1 * Z{-2}[P] * K[(1,0)]"),
    (Target::Lattice, "(Z{0}[S1] + Z{1}[S2])^2"),
    (Target::Lattice, "-Z{2}[S1^2] + 3/2*K[(0,1)]"),
    (Target::Lattice, "v^-2 * (q - 1) * Z{-1}[S1+S2]"),
    (Target::Lattice, "K[1,-1]^0"),
    (Target::Heis, "K[(1,0)]^-1 * (Zp[S1] + 2*Zm[P])"),
    (Target::Heis, "Zp[S1]*Zm[S1]"),
    (Target::Heis, "Zm[S2] * Zp[S1] - v*Zp[S1] * Zm[S2]"),
    (Target::Heis, "Km[(0,1)] * K[(1,1)]^2"),
    (Target::Heis, "((Zp[S2]))"),
    (Target::B, "Zp[S1] * Zp[S2] - Zp[S2] * Zp[S1]"),
    (Target::B, "K[(0,1)] * Zp[P]^1"),
    (Target::B, "1/3 + v + q"),
    (Target::B, "-(-Zp[S1])"),
    (Target::F, "X{1}[S1] * X{0}[S1]"),
    (Target::F, "X{0}[S2] - -X{2}[S1]"),
    (Target::F, "(X{0}[S1] + X{0}[S2]) * 5"),
    (Target::F, "2^3 * X{-1}[P]"),
];

fn hallforge(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hallforge"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn criterion_11() -> Verdict {
    let mut problems = Vec::new();
    let t = Table::from_config(&Config::load(&configs().join("a2.json")).unwrap(), 1 << 20).unwrap();
    for (target, src) in CORPUS {
        let ast = match parse_expr(src, target) {
            Ok(a) => a,
            Err(e) => {
                problems.push(format!("{src}: {e}"));
                continue;
            }
        };
        match parse_expr(&ast.to_string(), target) {
            Ok(again) if again == ast => {}
            other => problems.push(format!("{src} renders as {ast}, reparsed as {other:?}")),
        }
        if let Err(e) = eval_expr(&t, target, &ast) {
            problems.push(format!("{src}: {e}"));
        }
    }

    let cfg = configs();
    let a2 = cfg.join("a2.json");
    let rev = cfg.join("a2-reversed.json");
    let good = cfg.join("tilt-a2.json");
    let corrupted = cfg.join("tilt-a2-corrupted.json");
    let s = |p: &PathBuf| p.to_str().unwrap().to_string();
    let (a2, rev, good, corrupted) = (s(&a2), s(&rev), s(&good), s(&corrupted));
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["verify", "--config", &a2, "--suite", "serre", "--window=-1:1"], 0),
        (vec!["verify", "--config", &a2, "--suite", "hopf", "--bound", "0,0"], 0),
        (
            vec![
                "verify", "--config", &a2, "--suite", "tilt", "--target", &rev, "--tilt", &good,
            ],
            0,
        ),
        (
            vec![
                "verify", "--config", &a2, "--suite", "tilt", "--target", &rev, "--tilt", &corrupted,
            ],
            1,
        ),
        (vec!["verify", "--config", "/nonexistent/a2.json", "--suite", "hopf"], 2),
        (vec!["verify", "--config", &a2, "--suite", "no-such-suite"], 2),
        (vec!["verify", "--config", &a2, "--suite", "tilt"], 2),
        (
            vec!["verify", "--config", &a2, "--suite", "hopf", "--bound", "2,2,2"],
            2,
        ),
    ];
    for (args, want) in &cases {
        let (code, _) = hallforge(args);
        if code != *want {
            problems.push(format!("{} exited {code}, expected {want}", args.join(" ")));
        }
    }

    let schema: serde_json::Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    let validator = jsonschema::JSONSchema::compile(&schema).unwrap();
    let reports = [
        vec!["verify", "--json", "--config", &a2, "--suite", "serre", "--window=-1:1"],
        vec![
            "verify", "--json", "--config", &a2, "--suite", "tilt", "--target", &rev, "--tilt", &corrupted,
        ],
        vec!["verify", "--json", "--config", &a2, "--suite", "splice"],
    ];
    for args in &reports {
        let (_, out) = hallforge(args);
        match serde_json::from_str::<serde_json::Value>(&out) {
            Ok(v) => {
                if let Err(errs) = validator.validate(&v) {
                    let msgs: Vec<String> = errs.map(|e| e.to_string()).collect();
                    problems.push(format!("{}: {}", args.join(" "), msgs.join("; ")));
                }
            }
            Err(e) => problems.push(format!("{}: not JSON ({e})", args.join(" "))),
        }
    }
    if let Ok(file) = TiltFile::load(std::path::Path::new(&corrupted)) {
        let src = table(2, 2, &[2, 2]);
        if derived::TiltTable::from_file(&src, &reversed_a2(2), &file).is_ok() {
            problems.push("corrupted tilt file validates".into());
        }
    }
    for p in &problems {
        println!("    {p}");
    }
    Verdict {
        pass: problems.is_empty(),
        detail: format!(
            "{} expressions, {} exit-code cases, {} schema validations; {} problems {:?}",
            CORPUS.len(),
            cases.len(),
            reports.len(),
            problems.len(),
            problems.first()
        ),
    }
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Verdict); 11] = [
        ("Hall and Ringel products are associative", criterion_1),
        ("Hopf axioms of B(A)", criterion_2),
        ("Hopf pairing conditions", criterion_3),
        ("Heisenberg double consistency and associativity", criterion_4),
        ("adjacent lattice commutators", criterion_5),
        ("lattice confluence, associativity and splice identity", criterion_6),
        ("quantum Serre, K and distant relations", criterion_7),
        ("tilting invariance with a corrupted control", criterion_8),
        ("F(A) structure constants and differential expansion", criterion_9),
        ("closed formulas against enumeration", criterion_10),
        ("CLI exit codes, expression round trip, report schema", criterion_11),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = check();
        println!(
            "criterion {:>2} {}: {} ({}; {:.1}s)",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            name,
            v.detail,
            start.elapsed().as_secs_f64()
        );
        if !v.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
