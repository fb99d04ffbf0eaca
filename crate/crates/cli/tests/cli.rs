use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motdisc"))
        .args(args.split_whitespace())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &str) -> Value {
    let o = run(&format!("{args} --json"));
    assert!(o.status.success(), "{args}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn smooth_density_on_projective_line_over_f2() {
    let o = run("hyper --s 0 --X P1 --d 1 --cutoff 8 --spec count:q=2");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("value: 3/8"), "{text}");
    assert!(text.contains("0.375"), "{text}");
}

#[test]
fn two_double_points_on_the_line_over_f2() {
    let v = json("series kbar --nu 2,2 --X counts:q=2 --trunc 8");
    let coeffs: Vec<String> = v["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["coefficient"].as_str().unwrap().to_string())
        .collect();
    let expected: Vec<String> = (2..=10).map(|k| (1u64 << k).to_string()).collect();
    assert_eq!(coeffs, expected);
    assert_eq!(v["params"]["nu"], "[2,2]");
}

#[test]
fn json_echoes_resolved_parameters() {
    let v = json("limit kbar --nu 2 --X A1 --cutoff 4");
    assert_eq!(v["command"], "limit kbar");
    assert_eq!(v["params"]["spec"], "motivic-L");
    assert_eq!(v["params"]["normalization"], "Sym^(j+2)");
    assert_eq!(v["result"]["value"], "1*L^-1");
}

#[test]
fn oracle_fraction_and_timing() {
    let v = json("oracle hyper --q 2 --j 4 --s 0");
    assert_eq!(v["result"]["fraction"], "3/8");
    assert_eq!(v["result"]["count"], "12");
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn oracle_agrees_with_series() {
    // Monic squarefree polynomials of degree 5 over F_3 against the s = 0 series.
    let o = json("oracle symsing --q 3 --j 5 --s 0 --X A1");
    let s = json("series symsing --s 0 --X A1 --spec count:q=3 --trunc 5");
    assert_eq!(o["result"]["exact_count"], "162");
    assert_eq!(s["result"]["rows"][5]["coefficient"], "162");
}

#[test]
fn csv_is_a_plain_table() {
    let o = run("oracle symsing --q 2 --j 2..3 --X A1 --csv");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "j,s,count\n2,0,2\n2,1,2\n3,0,4\n3,1,4\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run("series bogus").status.code(), Some(2));
    assert_eq!(run("series kbar --nu x").status.code(), Some(2));
    assert_eq!(run("series symsing").status.code(), Some(2));
    assert_eq!(run("series zetainv --s 1 --trunc 13").status.code(), Some(3));
    assert_eq!(run("oracle w --q 2 --nu 1,1 --guard 20000000").status.code(), Some(3));
    assert_eq!(run("oracle w --q 2 --nu 1,1 --guard 200000000 --force").status.code(), Some(3));
    assert_eq!(run("oracle w --q 2 --nu 1,1 --guard 20000000 --force").status.code(), Some(0));
    assert_eq!(run("limit distinct --nu 2,2").status.code(), Some(2));
}

#[test]
fn verify_suite_passes() {
    let o = run("verify --suite identities");
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));
    assert_eq!(run("verify --suite nonsense").status.code(), Some(2));
}
