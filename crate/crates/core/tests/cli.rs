use std::process::Command;
use std::str::FromStr;

use fibcube::poly::{parse_rational, PolyJson};
use fibcube::{
    build_cube, coverage_ratio, derive_poly, fib, p_value, q_value, RationalPoly, SubcubePattern,
    Vertex,
};
use num_bigint::BigUint;
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn fibcube(args: &str) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_fibcube"))
        .args(args.split_whitespace())
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(args: &str) -> Value {
    let run = fibcube(&format!("{args} --format json"));
    serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("{e}: {}", run.stdout))
}

fn big(v: &Value) -> BigUint {
    v.as_str().expect("integers are strings").parse().unwrap()
}

#[test]
fn envelope_echoes_command_and_params() {
    let doc = json("seq q --k 3 --n-max 4");
    assert_eq!(doc["command"], "seq");
    assert_eq!(doc["params"]["kind"], "q");
    assert_eq!(doc["params"]["k"], 3);
    assert_eq!(doc["params"]["n_max"], 4);
    assert!(doc["result"]["rows"].is_array());
}

#[test]
fn sequence_json_round_trips() {
    for kind in ["p", "q"] {
        let doc = json(&format!("seq {kind} --k 3 --n-max 60"));
        let rows = doc["result"]["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 61);
        for row in rows {
            let n: u32 = row["n"].as_str().unwrap().parse().unwrap();
            let expected = if kind == "p" { p_value(3, n) } else { q_value(3, n) };
            assert_eq!(big(&row["value"]), expected.unwrap());
        }
    }
}

#[test]
fn fib_json_beyond_native_numbers() {
    let doc = json("fib --n 150");
    assert_eq!(big(&doc["result"]["rows"][0]["F_n"]), fib(150));
}

#[test]
fn ratio_json_round_trips() {
    let doc = json("ratio --k 4 --n-max 60");
    let rows = doc["result"]["rows"].as_array().unwrap();
    for row in rows {
        let n: u32 = row["n"].as_str().unwrap().parse().unwrap();
        let (uncovered, covered) = coverage_ratio(4, n).unwrap();
        assert_eq!(parse_rational(row["uncovered_ratio"].as_str().unwrap()).unwrap(), uncovered);
        assert_eq!(parse_rational(row["covered_ratio"].as_str().unwrap()).unwrap(), covered);
    }
    let last = rows.last().unwrap()["covered_decimal"].as_str().unwrap();
    assert!(last.starts_with("0.99999999"), "{last}");
}

#[test]
fn poly_json_round_trips() {
    let doc = json("poly --k 5");
    for row in doc["result"]["rows"].as_array().unwrap() {
        let r: u32 = row["r"].as_str().unwrap().parse().unwrap();
        let coeffs = row["coeffs"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c.as_str().unwrap().to_string())
            .collect();
        let poly = RationalPoly::from_json(&PolyJson { k: 5, r, coeffs }).unwrap();
        assert_eq!(poly, derive_poly(5, r).unwrap());
        assert_eq!(row["polynomial"], poly.to_string());
    }
}

#[test]
fn pack_witness_round_trips() {
    let doc = json("pack --n 9 --k 2 --witness");
    let result = &doc["result"];
    assert_eq!(result["optimal"], true);
    let patterns: Vec<SubcubePattern> = result["witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| SubcubePattern::from_str(p.as_str().unwrap()).unwrap())
        .collect();
    assert_eq!(BigUint::from(patterns.len()), big(&result["q"]));
    let cube = build_cube(9).unwrap();
    let mut covered = vec![false; cube.len()];
    for p in &patterns {
        for v in fibcube::pattern_vertices(p).unwrap() {
            let i = cube.index_of(v).unwrap();
            assert!(!covered[i], "overlap at {v}");
            covered[i] = true;
        }
    }
    let uncovered = covered.iter().filter(|c| !**c).count();
    assert_eq!(BigUint::from(uncovered), big(&result["uncovered"]));
}

#[test]
fn vertices_listing() {
    let doc = json("vertices --n 6");
    let rows = doc["result"]["rows"].as_array().unwrap();
    assert_eq!(BigUint::from(rows.len()), fib(8));
    for row in rows {
        Vertex::from_str(row["vertex"].as_str().unwrap()).unwrap();
    }
}

#[test]
fn csv_has_header_and_no_quoting() {
    let run = fibcube("ratio --k 2 --n-max 10 --format csv");
    assert_eq!(run.code, 0);
    let lines: Vec<&str> = run.stdout.lines().collect();
    assert_eq!(lines[0], "n,uncovered_ratio,covered_ratio,uncovered_decimal,covered_decimal");
    assert_eq!(lines.len(), 12);
    assert!(lines.iter().all(|l| l.split(',').count() == 5 && !l.contains('"')));
    let run = fibcube("pack --n 6 --k 2 --witness --format csv");
    let lines: Vec<&str> = run.stdout.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0].split(',').count(), lines[1].split(',').count());
}

#[test]
fn table_output_is_aligned() {
    let run = fibcube("seq p --k 2 --n-max 12");
    let lines: Vec<&str> = run.stdout.lines().collect();
    assert_eq!(lines[0].split_whitespace().collect::<Vec<_>>(), ["n", "value"]);
    let column = lines[0].find("value").unwrap();
    assert!(lines[1..].iter().all(|l| l.len() > column && &l[column - 1..column] == " "));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        "seq p --k 0 --n-max 5",
        "seq x --k 1 --n-max 5",
        "poly --k 0",
        "pack --n 3",
        "pack --n 30 --k 2",
        "pack --n 5 --k 2 --time-limit -1",
        "ratio --k 2 --n-max 5 --format xml",
        "frobnicate",
    ] {
        let run = fibcube(args);
        assert_eq!(run.code, 2, "{args}: {}", run.stderr);
        assert!(run.stdout.is_empty());
        assert!(!run.stderr.is_empty());
    }
}

#[test]
fn pack_reports_disagreement_with_exit_one() {
    let run = fibcube("pack --n 7 --k 2 --witness");
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("q=8\n") && run.stdout.contains("INCONSISTENT"));
}

#[test]
fn pack_limits_exit_three() {
    let run = fibcube("pack --n 14 --k 3 --node-limit 10");
    assert_eq!(run.code, 3);
    assert!(run.stdout.contains("status=PARTIAL") && run.stdout.contains("optimal=false"));
    let run = fibcube("pack --n 20 --k 2 --time-limit 0.05");
    assert_eq!(run.code, 3);
}

#[test]
fn quick_selftest_passes() {
    let run = fibcube("selftest --quick");
    assert_eq!(run.code, 0, "{}", run.stdout);
    assert_eq!(run.stdout.matches("PASS").count(), 9);
}

#[test]
fn full_selftest_names_failing_cells() {
    let doc = json("selftest");
    let rows = doc["result"]["rows"].as_array().unwrap();
    let failed: Vec<&Value> = rows.iter().filter(|r| r["status"] == "FAIL").collect();
    let mut cells: Vec<String> = Vec::new();
    for row in &failed {
        for f in row["failures"].as_array().unwrap() {
            cells.push(f.as_str().unwrap().split(')').next().unwrap().to_string() + ")");
        }
    }
    // Cells where the exact optimum beats the recursion.
    let expected = [
        "(k=2 n=7 search)",
        "(k=2 n=8 search)",
        "(k=2 n=10 search)",
        "(k=2 n=11 search)",
        "(k=3 n=9 search)",
        "(k=3 n=10 search)",
    ];
    assert_eq!(cells, expected);
    assert_eq!(fibcube("selftest").code, 1);
}
