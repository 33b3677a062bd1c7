use std::process::{Command, Output};

fn lmov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lmov"))
        .args(args)
        .output()
        .expect("lmov runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn disc_csv_example() {
    let o = lmov(&["disc", "--tau", "-2", "--max-m", "12", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,l,tau,value,integral");
    // m = 1..12 with 0 <= l <= m
    assert_eq!(lines.len() - 1, 90);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true")));
    assert!(!text.contains('\r'));
}

#[test]
fn gwdt_check_example() {
    let o = lmov(&["gwdt-check", "--tau", "-1", "--order", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "PASS\n");
    let o = lmov(&["gwdt-check", "--tau", "-5..-1", "--order", "8"]);
    assert_eq!(stdout(&o), "PASS\n");
}

#[test]
fn verify_all_quick_exits_zero() {
    let o = lmov(&["verify-all", "--quick"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 13);
    assert!(text.lines().all(|l| l.starts_with("PASS")), "{text}");
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["frobnicate"],
        vec!["disc", "--tau", "3..1"],
        vec!["disc", "--tau", "x"],
        vec!["disc", "--tau", "1", "--max-m", "0"],
        vec!["gwdt-check", "--tau", "2"],
        vec!["twist", "--p", "0..1"],
        vec!["onehole", "--tau", "1", "--mu", "2,0"],
        vec!["disc", "--tau", "1", "--format", "xml"],
    ] {
        let o = lmov(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn output_file_and_json_shapes() {
    let dir = std::env::temp_dir().join(format!("lmov-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("onehole.json");
    let o = lmov(&["onehole", "--tau", "2", "--max-m", "2", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v[0]["m"], 1);
    assert_eq!(v[0]["tau"], 2);
    assert_eq!(v[0]["entries"][0]["g"], 0);
    assert!(v[0]["entries"][0]["two_q"].is_i64());

    let o = lmov(&["onehole", "--tau", "2", "--max-m", "1", "--half-q"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["entries"][1]["Q"], "1/2");

    let o = lmov(&["dt", "--loops", "3", "--order", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["loops"], 3);

    let o = lmov(&["twist", "--p", "-1", "--max-r", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "p,r,b_minus,b_plus\n-1,1,-1,1\n-1,2,-1,1\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn thread_count_from_environment() {
    let a = Command::new(env!("CARGO_BIN_EXE_lmov"))
        .args(["annulus", "--tau", "-1..1", "--max-m", "6"])
        .env("LMOV_THREADS", "2")
        .output()
        .unwrap();
    let b = lmov(&["annulus", "--tau", "-1..1", "--max-m", "6", "--threads", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
