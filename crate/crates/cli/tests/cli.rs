use std::io::Write;
use std::process::{Command, Output, Stdio};

use gallai::{from_witness_json, ColoredComplete, TargetGraph};
use gallai_cli::suites::{has_rainbow_path, GOLDEN_TABLE};
use gallai_cli::Report;

fn gallai(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gallai"))
        .args(args)
        .output()
        .unwrap()
}

fn gallai_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gallai"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report(o: &Output) -> Report {
    let text = stdout(o);
    let r = Report::from_json(text.trim()).unwrap_or_else(|e| panic!("{e}: {text}"));
    assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    r
}

#[test]
fn eval_prints_the_documented_json() {
    let o = gallai(&["eval", "--H", "S4^1", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"kind\":\"Exact\",\"value\":17,\"provenance\":[\"th3-6\",\"le3-3\"]}\n"
    );
}

#[test]
fn eval_table_matches_the_golden_file() {
    let queries = concat!(env!("CARGO_MANIFEST_DIR"), "/data/eval_sweep.queries");
    let o = gallai(&["eval", "--queries", queries, "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), GOLDEN_TABLE);
}

#[test]
fn eval_accepts_ranges_and_lists() {
    let o = gallai(&["eval", "--H", "S6^1", "--k", "4..6", "--k", "7,21"]);
    let values: Vec<u64> = stdout(&o)
        .lines()
        .map(|l| {
            serde_json::from_str::<gallai::GrResult>(l)
                .unwrap()
                .exact()
                .unwrap()
        })
        .collect();
    assert_eq!(values, [7, 7, 7, 5, 7]);
}

#[test]
fn witness_for_pa65_has_order_23() {
    let o = gallai(&["witness", "--H", "PA6,5", "--k", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r.status, "certified");
    assert_eq!(r.witness.as_ref().unwrap().n(), 23);
    assert_eq!(r.detail.as_ref().unwrap()["construction"], "F12");
    let named = gallai(&["witness", "--H", "K5", "--construction", "G4(a=5,t=5,k=5)"]);
    assert_eq!(report(&named).counts["order"], 16);
    let wrong = gallai(&["witness", "--H", "K4", "--construction", "G4(a=5,t=5,k=5)"]);
    assert_eq!(wrong.status.code(), Some(1));
    assert_eq!(report(&wrong).status, "failed");
}

#[test]
fn check_reports_and_exit_codes() {
    let good = gallai(&["check", "--H", "S4^1", "--k", "4", "--n", "6"]);
    assert_eq!(good.status.code(), Some(0));
    assert_eq!(report(&good).status, "all-good");

    let bad = gallai(&["check", "--H", "S4^1", "--k", "4", "--n", "5"]);
    assert_eq!(bad.status.code(), Some(1));
    let r = report(&bad);
    assert_eq!(r.status, "bad");
    let w = r.witness.unwrap();
    assert!(gallai::verify_witness(&w, &"S4^1".parse().unwrap()).is_ok());

    let none = gallai(&["check", "--H", "K3", "--k", "11", "--n", "5"]);
    assert_eq!(none.status.code(), Some(0));
    assert_eq!(report(&none).status, "no-exact-colorings");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["eval", "--H", "Q7", "--k", "3"][..],
        &["eval", "--k", "3"],
        &["check", "--H", "K4", "--k", "3", "--n", "5"],
        &["check", "--H", "K4", "--k", "4", "--n", "12"],
        &["witness", "--H", "K4", "--construction", "Z9"],
        &["frobnicate"],
    ] {
        let o = gallai(args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    let o = gallai_stdin(
        &["classify"],
        "{\"n\":3,\"k\":1,\"edges\":[[0,1,1],[0,1,1],[1,2,1]]}",
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn search_reports_a_verified_window() {
    let o = gallai(&["search", "--H", "S4^1", "--k", "5", "--n-max", "8"]);
    let r = report(&o);
    assert_eq!(r.status, "found");
    let detail = r.detail.unwrap();
    assert_eq!(
        (
            detail["value"].as_u64(),
            detail["verified_through"].as_u64()
        ),
        (Some(5), Some(8))
    );
}

#[test]
fn verify_and_classify_read_witness_json() {
    let mono = gallai::to_witness_json(&ColoredComplete::monochromatic(6, 1, 1).unwrap());
    let o = gallai_stdin(&["verify", "--H", "K5", "-"], &mono);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(report(&o).status, "failed");

    let f3 = gallai::to_witness_json(&gallai::construct::Construction::F3.build().unwrap());
    let o = gallai_stdin(&["verify", "--H", "S4^1"], &f3);
    assert_eq!(o.status.code(), Some(0));

    let o = gallai_stdin(&["classify"], &f3);
    let r = report(&o);
    assert_eq!(r.status, "p5-free");
    assert!(!r.detail.unwrap()["cases"].as_str().unwrap().is_empty());
}

#[test]
fn enumerate_streams_loadable_witnesses() {
    let o = gallai(&["enumerate", "--n", "5", "--k", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<ColoredComplete> = stdout(&o)
        .lines()
        .map(|l| from_witness_json(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 8);
    assert!(lines
        .iter()
        .all(|c| c.is_exact() && !has_rainbow_path(c, 4)));
}

#[test]
fn thread_count_comes_from_flag_or_environment() {
    let one = gallai(&["--threads", "1", "enumerate", "--n", "6", "--k", "4"]);
    let env = Command::new(env!("CARGO_BIN_EXE_gallai"))
        .args(["enumerate", "--n", "6", "--k", "4"])
        .env("GALLAI_THREADS", "3")
        .output()
        .unwrap();
    let default = gallai(&["enumerate", "--n", "6", "--k", "4"]);
    assert_eq!(one.stdout, default.stdout);
    assert_eq!(env.stdout, default.stdout);
}

#[test]
fn selftest_passes() {
    let o = gallai(&["selftest", "--samples", "300"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(report(&o).counts["failed"], 0);
}

/// Monochromatic copy of `S5^2` (a vertex joined to two disjoint edges) by
/// trying every center and every pair of disjoint neighbor edges.
fn has_mono_bowtie(c: &ColoredComplete) -> bool {
    let n = c.n();
    (0..n).any(|x| {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| u != x && v != x)
            .collect();
        edges.iter().any(|&(u, v)| {
            edges.iter().any(|&(p, q)| {
                let disjoint = [p, q].iter().all(|w| *w != u && *w != v);
                let col = c.color(x, u);
                disjoint
                    && [(x, v), (u, v), (x, p), (x, q), (p, q)]
                        .iter()
                        .all(|&(i, j)| c.color(i, j) == col)
            })
        })
    })
}

#[test]
fn literal_reading_of_the_small_star_row_fails_for_r2() {
    let target: TargetGraph = "S5^2".parse().unwrap();
    assert!(has_mono_bowtie(
        &ColoredComplete::monochromatic(5, 1, 1).unwrap()
    ));
    assert!(!has_mono_bowtie(
        &ColoredComplete::monochromatic(4, 1, 1).unwrap()
    ));
    let o = gallai(&["search", "--H", "S5^2", "--k", "4", "--n-max", "8"]);
    let r = report(&o);
    let w = r.witness.expect("a witness below the value");
    assert_eq!((w.n(), w.k()), (6, 4));
    assert!(w.is_exact() && !has_rainbow_path(&w, 4) && !has_mono_bowtie(&w));
    assert_eq!(r.detail.unwrap()["value"].as_u64(), Some(7));
    assert_eq!(
        gallai::evaluate(&target, 4).unwrap().kind,
        gallai::GrKind::Unknown
    );
}
